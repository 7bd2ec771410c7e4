//! Sampled disk-supported fields, square-window Fourier coefficients and
//! windowed transforms.
//!
//! A [`DiskFunction`] lives on a symmetric grid over `[-a, a]^2` with
//! spacing `h = 2a / G`. Cell-centred grids carry `G` samples per axis at
//! `x_j = (j - (G - 1)/2) h`; vertex grids carry `G + 1` samples and include
//! the origin. Row index is the `y` index, column index is the `x` index.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::ComplexNeumaier;

/// Smallest accepted grid size.
pub const MIN_GRID: usize = 16;

/// Relative slack applied to the mask radius so that vertex samples lying
/// exactly on the support circle are kept.
const MASK_SLACK: f64 = 1e-12;

/// Mass fraction outside a claimed support radius that is tolerated.
pub const SUPPORT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct DiskFunction {
    radius: f64,
    support: f64,
    cells: usize,
    n: usize,
    values: Vec<Complex64>,
}

impl DiskFunction {
    /// Wraps samples on a grid of `cells` cells over `[-radius, radius]^2`.
    /// `n` must be `cells` (cell-centred) or `cells + 1` (vertex). Samples
    /// outside `support` are zeroed.
    pub fn from_samples(
        radius: f64,
        support: f64,
        cells: usize,
        n: usize,
        values: Vec<Complex64>,
    ) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::invalid("a", format!("radius must be positive, got {radius}")));
        }
        if !(support.is_finite() && support > 0.0 && support <= radius * (1.0 + MASK_SLACK)) {
            return Err(Error::invalid(
                "b",
                format!("support radius {support} must lie in (0, {radius}]"),
            ));
        }
        if cells < MIN_GRID {
            return Err(Error::invalid("G", format!("grid size {cells} is below {MIN_GRID}")));
        }
        if n != cells && n != cells + 1 {
            return Err(Error::Shape(format!(
                "{n} samples per axis do not fit a grid of {cells} cells"
            )));
        }
        if values.len() != n * n {
            return Err(Error::Shape(format!(
                "expected {} samples, got {}",
                n * n,
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::invalid(
                "values",
                format!("non-finite sample at row {}, column {}", i / n, i % n),
            ));
        }
        let mut f = DiskFunction {
            radius,
            support,
            cells,
            n,
            values,
        };
        f.apply_mask();
        Ok(f)
    }

    /// Samples `f(x, y)` at cell centres of a `G x G` grid over
    /// `[-a, a]^2` and zero-pads outside radius `b`.
    pub fn restrict_and_pad(
        f: impl Fn(f64, f64) -> Complex64,
        a: f64,
        b: f64,
        grid: usize,
    ) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::invalid("a", format!("radius must be positive, got {a}")));
        }
        if grid < MIN_GRID {
            return Err(Error::invalid("G", format!("grid size {grid} is below {MIN_GRID}")));
        }
        let h = 2.0 * a / grid as f64;
        let limit = b * b * (1.0 + MASK_SLACK);
        let mut values = vec![Complex64::new(0.0, 0.0); grid * grid];
        for iy in 0..grid {
            let y = centered(iy, grid) * h;
            for ix in 0..grid {
                let x = centered(ix, grid) * h;
                if x * x + y * y <= limit {
                    values[iy * grid + ix] = f(x, y);
                }
            }
        }
        Self::from_samples(a, b, grid, grid, values)
    }

    /// Real-valued convenience wrapper around [`DiskFunction::restrict_and_pad`].
    pub fn restrict_and_pad_real(
        f: impl Fn(f64, f64) -> f64,
        a: f64,
        b: f64,
        grid: usize,
    ) -> Result<Self> {
        Self::restrict_and_pad(|x, y| Complex64::new(f(x, y), 0.0), a, b, grid)
    }

    /// Nearest-cell resampling of a raster onto a `G x G` cell-centred grid.
    /// Raster row `r` covers grid rows `[r G / rows, (r + 1) G / rows)`.
    pub fn from_raster(raster: &Raster, a: f64, b: f64, grid: usize) -> Result<Self> {
        let (rows, cols) = (raster.rows(), raster.cols());
        if rows == 0 || cols == 0 {
            return Err(Error::invalid("raster", "raster is empty"));
        }
        let mut values = Vec::with_capacity(grid * grid);
        for iy in 0..grid {
            let r = iy * rows / grid;
            for ix in 0..grid {
                let c = ix * cols / grid;
                values.push(Complex64::new(raster.get(r, c), 0.0));
            }
        }
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::invalid("a", format!("radius must be positive, got {a}")));
        }
        Self::from_samples(a, b, grid, grid, values)
    }

    fn apply_mask(&mut self) {
        let limit = self.support * self.support * (1.0 + MASK_SLACK);
        let h = self.spacing();
        for iy in 0..self.n {
            let y = self.index_coord(iy) * h;
            for ix in 0..self.n {
                let x = self.index_coord(ix) * h;
                if x * x + y * y > limit {
                    self.values[iy * self.n + ix] = Complex64::new(0.0, 0.0);
                }
            }
        }
    }

    /// Window half-width `a`.
    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Radius of the disk mask.
    pub fn support(&self) -> f64 {
        self.support
    }

    /// Grid size `G`; the spacing is `2a / G`.
    pub fn cells(&self) -> usize {
        self.cells
    }

    /// Samples per axis.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn is_cell_centred(&self) -> bool {
        self.n == self.cells
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.radius / self.cells as f64
    }

    /// Coordinate of sample `j` in units of the spacing.
    #[inline]
    fn index_coord(&self, j: usize) -> f64 {
        centered(j, self.n)
    }

    pub fn coord(&self, j: usize) -> f64 {
        self.index_coord(j) * self.spacing()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Sample at column `ix` (x index), row `iy` (y index).
    pub fn get(&self, ix: usize, iy: usize) -> Complex64 {
        self.values[iy * self.n + ix]
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.im == 0.0)
    }

    /// `h^2 sum |f|`.
    pub fn norm_l1(&self) -> f64 {
        let h = self.spacing();
        let mut acc = crate::quadrature::NeumaierSum::default();
        for v in &self.values {
            acc.add(v.norm());
        }
        h * h * acc.value()
    }

    /// `(h^2 sum |f|^2)^{1/2}`.
    pub fn norm_l2(&self) -> f64 {
        self.norm_l2_squared().sqrt()
    }

    pub fn norm_l2_squared(&self) -> f64 {
        let h = self.spacing();
        let mut acc = crate::quadrature::NeumaierSum::default();
        for v in &self.values {
            acc.add(v.norm_sqr());
        }
        h * h * acc.value()
    }

    /// `h^2 sum |f|^2` over samples farther than `radius` from the origin.
    pub fn energy_outside(&self, radius: f64) -> f64 {
        let h = self.spacing();
        let limit = radius * radius * (1.0 + MASK_SLACK);
        let mut acc = crate::quadrature::NeumaierSum::default();
        for iy in 0..self.n {
            let y = self.coord(iy);
            for ix in 0..self.n {
                let x = self.coord(ix);
                if x * x + y * y > limit {
                    acc.add(self.values[iy * self.n + ix].norm_sqr());
                }
            }
        }
        h * h * acc.value()
    }

    /// Bilinear interpolation; zero outside the sampled square.
    pub fn bilinear(&self, x: f64, y: f64) -> Complex64 {
        let h = self.spacing();
        let half = (self.n as f64 - 1.0) / 2.0;
        let u = x / h + half;
        let v = y / h + half;
        let iu = u.floor();
        let iv = v.floor();
        let fu = u - iu;
        let fv = v - iv;
        let sample = |i: f64, j: f64| -> Complex64 {
            if i < 0.0 || j < 0.0 || i >= self.n as f64 || j >= self.n as f64 {
                Complex64::new(0.0, 0.0)
            } else {
                self.values[j as usize * self.n + i as usize]
            }
        };
        sample(iu, iv) * ((1.0 - fu) * (1.0 - fv))
            + sample(iu + 1.0, iv) * (fu * (1.0 - fv))
            + sample(iu, iv + 1.0) * ((1.0 - fu) * fv)
            + sample(iu + 1.0, iv + 1.0) * (fu * fv)
    }

    /// `f*(x) = conj(f(-x))`; exact index reflection on the symmetric grid.
    pub fn reflect_conj(&self) -> Self {
        let n = self.n;
        let mut values = vec![Complex64::new(0.0, 0.0); n * n];
        for iy in 0..n {
            for ix in 0..n {
                values[(n - 1 - iy) * n + (n - 1 - ix)] = self.values[iy * n + ix].conj();
            }
        }
        DiskFunction {
            values,
            ..self.clone()
        }
    }

    /// `g(x) = f(R_{-alpha} x)` by bilinear resampling, so that
    /// `g(r, theta) = f(r, theta - alpha)`.
    pub fn rotated(&self, alpha: f64) -> Self {
        let (s, c) = alpha.sin_cos();
        let n = self.n;
        let mut values = vec![Complex64::new(0.0, 0.0); n * n];
        for iy in 0..n {
            let y = self.coord(iy);
            for ix in 0..n {
                let x = self.coord(ix);
                values[iy * n + ix] = self.bilinear(c * x + s * y, -s * x + c * y);
            }
        }
        let mut out = DiskFunction {
            values,
            ..self.clone()
        };
        out.apply_mask();
        out
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        DiskFunction {
            values: self.values.iter().map(|v| v * factor).collect(),
            ..self.clone()
        }
    }

    /// Same samples with a smaller support mask.
    pub fn restricted(&self, support: f64) -> Result<Self> {
        Self::from_samples(self.radius, support, self.cells, self.n, self.values.clone())
    }

    /// Real parts as a row-major raster.
    pub fn to_raster(&self) -> Raster {
        Raster::new(self.n, self.n, self.values.iter().map(|v| v.re).collect())
            .expect("square grid")
    }
}

/// Position of sample `j` on an `n`-point symmetric grid, in spacings.
#[inline]
fn centered(j: usize, n: usize) -> f64 {
    j as f64 - (n as f64 - 1.0) / 2.0
}

/// Row-major real matrix read from or written to image files.
#[derive(Debug, Clone, PartialEq)]
pub struct Raster {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Raster {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "raster of {rows}x{cols} needs {} values, got {}",
                rows * cols,
                data.len()
            )));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("raster", "non-finite value"));
        }
        Ok(Raster { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }
}

/// Square-window Fourier coefficients on `[-K, K]^2`, stored row-major
/// with `k1` outer.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierTable {
    cutoff: u32,
    radius: f64,
    grid: Option<usize>,
    entries: Vec<Complex64>,
}

impl FourierTable {
    pub fn from_entries(
        cutoff: u32,
        radius: f64,
        grid: Option<usize>,
        entries: Vec<Complex64>,
    ) -> Result<Self> {
        let side = 2 * cutoff as usize + 1;
        if cutoff == 0 {
            return Err(Error::invalid("K", "must be at least 1"));
        }
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::invalid("a", "radius must be positive"));
        }
        if entries.len() != side * side {
            return Err(Error::Shape(format!(
                "cutoff {cutoff} needs {} entries, got {}",
                side * side,
                entries.len()
            )));
        }
        Ok(FourierTable {
            cutoff,
            radius,
            grid,
            entries,
        })
    }

    /// Evaluates `f(k1, k2)` over the window in storage order.
    pub fn from_fn(
        cutoff: u32,
        radius: f64,
        f: impl FnMut(i64, i64) -> Result<Complex64>,
    ) -> Result<Self> {
        let k = cutoff as i64;
        let mut f = f;
        let mut entries = Vec::with_capacity((2 * cutoff as usize + 1).pow(2));
        for k1 in -k..=k {
            for k2 in -k..=k {
                entries.push(f(k1, k2)?);
            }
        }
        Self::from_entries(cutoff, radius, None, entries)
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    /// Window radius `a` in the exponent `e^{-pi i k.x / a}`.
    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Grid size of the sampled source, when there is one.
    pub fn grid(&self) -> Option<usize> {
        self.grid
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    #[inline]
    fn index(&self, k1: i64, k2: i64) -> usize {
        let k = self.cutoff as i64;
        let side = 2 * k + 1;
        ((k1 + k) * side + (k2 + k)) as usize
    }

    /// Entry at `(k1, k2)`; `None` outside the window.
    pub fn get(&self, k1: i64, k2: i64) -> Option<Complex64> {
        let k = self.cutoff as i64;
        if k1.abs() > k || k2.abs() > k {
            None
        } else {
            Some(self.entries[self.index(k1, k2)])
        }
    }

    /// Iterates `((k1, k2), value)` in storage order.
    pub fn iter(&self) -> impl Iterator<Item = ((i64, i64), Complex64)> + '_ {
        let k = self.cutoff as i64;
        let side = 2 * k + 1;
        self.entries.iter().enumerate().map(move |(i, v)| {
            let i = i as i64;
            ((i / side - k, i % side - k), *v)
        })
    }

    /// Pointwise product, the transform of a zero-padded convolution.
    pub fn product(&self, other: &FourierTable) -> Result<FourierTable> {
        if self.cutoff != other.cutoff {
            return Err(Error::Config(format!(
                "cutoff mismatch: {} vs {}",
                self.cutoff, other.cutoff
            )));
        }
        if (self.radius - other.radius).abs() > 1e-12 * self.radius {
            return Err(Error::Config(format!(
                "window radius mismatch: {} vs {}",
                self.radius, other.radius
            )));
        }
        let grid = if self.grid == other.grid { self.grid } else { None };
        Ok(FourierTable {
            cutoff: self.cutoff,
            radius: self.radius,
            grid,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }

    pub fn scaled(&self, factor: Complex64) -> FourierTable {
        FourierTable {
            entries: self.entries.iter().map(|v| v * factor).collect(),
            ..self.clone()
        }
    }
}

/// `e^{-pi i k x_j / a}` for `k in 0..=K` and every grid coordinate; rows
/// for negative `k` are the conjugates.
fn phase_rows(f: &DiskFunction, cutoff: u32) -> Vec<Vec<Complex64>> {
    let scale = PI / f.radius;
    (0..=cutoff)
        .map(|k| {
            (0..f.n)
                .map(|j| Complex64::from_polar(1.0, -scale * k as f64 * f.coord(j)))
                .collect()
        })
        .collect()
}

#[inline]
fn phase(rows: &[Vec<Complex64>], k: i64, j: usize) -> Complex64 {
    let p = rows[k.unsigned_abs() as usize][j];
    if k < 0 {
        p.conj()
    } else {
        p
    }
}

/// `xi^{k} ~ int int xi(x) e^{-pi i k.x / a} dx` over `[-K, K]^2` by the
/// masked Cartesian Riemann sum, with `a` the window radius of `xi`.
///
/// The sum is separable: each row is transformed along `x`, then the rows
/// are combined along `y`. For real input the table is exactly
/// conjugate-symmetric.
pub fn square_fourier_coeff(xi: &DiskFunction, cutoff: u32) -> Result<FourierTable> {
    if cutoff == 0 {
        return Err(Error::invalid("K", "must be at least 1"));
    }
    if 2 * cutoff as usize >= xi.cells {
        return Err(Error::Aliasing {
            cutoff,
            grid: xi.cells,
        });
    }
    let n = xi.n;
    let k = cutoff as i64;
    let side = 2 * cutoff as usize + 1;
    let rows_phase = phase_rows(xi, cutoff);
    // partial[iy][k1 + K] = sum_x f(x, y) e^{-pi i k1 x / a}
    let mut partial = vec![Complex64::new(0.0, 0.0); n * side];
    let mut live = vec![false; n];
    for iy in 0..n {
        let row = &xi.values[iy * n..(iy + 1) * n];
        if row.iter().all(|v| v.re == 0.0 && v.im == 0.0) {
            continue;
        }
        live[iy] = true;
        for k1 in -k..=k {
            let mut acc = ComplexNeumaier::default();
            for (ix, v) in row.iter().enumerate() {
                if v.re != 0.0 || v.im != 0.0 {
                    acc.add(v * phase(&rows_phase, k1, ix));
                }
            }
            partial[iy * side + (k1 + k) as usize] = acc.value();
        }
    }
    let h = xi.spacing();
    let area = h * h;
    let mut entries = Vec::with_capacity(side * side);
    for k1 in -k..=k {
        for k2 in -k..=k {
            let mut acc = ComplexNeumaier::default();
            for iy in (0..n).filter(|&iy| live[iy]) {
                acc.add(partial[iy * side + (k1 + k) as usize] * phase(&rows_phase, k2, iy));
            }
            entries.push(acc.value() * area);
        }
    }
    FourierTable::from_entries(cutoff, xi.radius, Some(xi.cells), entries)
}

/// `f^[omega; b] = int_{|x| <= b} f(x) e^{-pi i omega.x} dx` by the same
/// Riemann sum. Fails when `f` carries energy outside radius `b`.
pub fn windowed_ft(f: &DiskFunction, omega: [f64; 2], b: f64) -> Result<Complex64> {
    if !(b.is_finite() && b > 0.0) {
        return Err(Error::invalid("b", "radius must be positive"));
    }
    if !(omega[0].is_finite() && omega[1].is_finite()) {
        return Err(Error::invalid("omega", "frequency must be finite"));
    }
    if f.support > b * (1.0 + MASK_SLACK) {
        let total = f.norm_l2_squared();
        let outside = f.energy_outside(b);
        if total > 0.0 && outside > SUPPORT_TOL * total {
            return Err(Error::Support {
                radius: b,
                fraction: outside / total,
            });
        }
    }
    let n = f.n;
    let px: Vec<Complex64> = (0..n)
        .map(|j| Complex64::from_polar(1.0, -PI * omega[0] * f.coord(j)))
        .collect();
    let py: Vec<Complex64> = (0..n)
        .map(|j| Complex64::from_polar(1.0, -PI * omega[1] * f.coord(j)))
        .collect();
    let mut acc = ComplexNeumaier::default();
    for iy in 0..n {
        let mut row = ComplexNeumaier::default();
        for ix in 0..n {
            let v = f.values[iy * n + ix];
            if v.re != 0.0 || v.im != 0.0 {
                row.add(v * px[ix]);
            }
        }
        acc.add(row.value() * py[iy]);
    }
    let h = f.spacing();
    Ok(acc.value() * (h * h))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(_: f64, _: f64) -> f64 {
        1.0
    }

    #[test]
    fn mask_matches_disk_indicator() {
        let f = DiskFunction::restrict_and_pad_real(one, 1.0, 1.0, 32).unwrap();
        for iy in 0..32 {
            for ix in 0..32 {
                let (x, y) = (f.coord(ix), f.coord(iy));
                let inside = x * x + y * y <= 1.0;
                assert_eq!(f.get(ix, iy).re, if inside { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn half_support_mask() {
        let f = DiskFunction::restrict_and_pad_real(one, 1.0, 0.5, 64).unwrap();
        for iy in 0..64 {
            for ix in 0..64 {
                let (x, y) = (f.coord(ix), f.coord(iy));
                if f.get(ix, iy).re != 0.0 {
                    assert!(x.hypot(y) <= 0.5);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(DiskFunction::restrict_and_pad_real(one, 1.0, 0.5, 8).is_err());
        assert!(DiskFunction::restrict_and_pad_real(|_, _| f64::NAN, 1.0, 0.5, 32).is_err());
        assert!(DiskFunction::restrict_and_pad_real(one, 1.0, 1.5, 32).is_err());
    }

    #[test]
    fn disk_area_at_origin() {
        let f = DiskFunction::restrict_and_pad_real(one, 1.0, 1.0, 256).unwrap();
        let t = square_fourier_coeff(&f, 4).unwrap();
        let v = t.get(0, 0).unwrap();
        assert!((v.re - PI).abs() / PI < 2e-3);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn real_input_gives_conjugate_symmetric_table() {
        let f = DiskFunction::restrict_and_pad_real(
            |x, y| (-(x - 0.2).powi(2) * 8.0 - (y + 0.1).powi(2) * 5.0).exp() + 0.3 * x,
            1.0,
            0.9,
            64,
        )
        .unwrap();
        let t = square_fourier_coeff(&f, 10).unwrap();
        for ((k1, k2), v) in t.iter() {
            assert_eq!(t.get(-k1, -k2).unwrap(), v.conj());
        }
    }

    #[test]
    fn aliasing_guard() {
        let f = DiskFunction::restrict_and_pad_real(one, 1.0, 1.0, 32).unwrap();
        assert!(matches!(
            square_fourier_coeff(&f, 16),
            Err(Error::Aliasing { cutoff: 16, grid: 32 })
        ));
        assert!(square_fourier_coeff(&f, 15).is_ok());
    }

    #[test]
    fn windowed_transform_agrees_with_table() {
        let f = DiskFunction::restrict_and_pad_real(|x, y| 1.0 + x * y - y, 1.0, 0.5, 64).unwrap();
        let t = square_fourier_coeff(&f, 6).unwrap();
        for &(k1, k2) in &[(0, 0), (1, 0), (-3, 2), (6, -6)] {
            let w = windowed_ft(&f, [k1 as f64, k2 as f64], 0.5).unwrap();
            assert!((w - t.get(k1, k2).unwrap()).norm() < 1e-10);
        }
    }

    #[test]
    fn windowed_transform_support_guard() {
        let f = DiskFunction::restrict_and_pad_real(one, 1.0, 0.8, 64).unwrap();
        assert!(matches!(
            windowed_ft(&f, [0.0, 0.0], 0.5),
            Err(Error::Support { .. })
        ));
    }

    #[test]
    fn reflection_is_an_involution() {
        let f = DiskFunction::restrict_and_pad(
            |x, y| Complex64::new(x + 2.0 * y, x * y),
            1.0,
            1.0,
            32,
        )
        .unwrap();
        let g = f.reflect_conj();
        assert_eq!(g.reflect_conj(), f);
        assert_eq!(g.get(0, 5), f.get(31, 26).conj());
    }

    #[test]
    fn quarter_turn_is_a_permutation() {
        let f = DiskFunction::restrict_and_pad_real(|x, y| x + 0.5 * y * y, 1.0, 1.0, 32).unwrap();
        let g = f.rotated(PI / 2.0);
        for iy in 0..32 {
            for ix in 0..32 {
                // g(x, y) = f(y, -x)
                let want = f.get(iy, 31 - ix);
                assert!((g.get(ix, iy) - want).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn raster_nearest_cell() {
        let r = Raster::new(2, 2, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let f = DiskFunction::from_raster(&r, 1.0, 1.0, 16).unwrap();
        assert_eq!(f.get(7, 7).re, 1.0);
        assert_eq!(f.get(8, 7).re, 2.0);
        assert_eq!(f.get(7, 8).re, 3.0);
        assert_eq!(f.get(8, 8).re, 4.0);
    }
}
