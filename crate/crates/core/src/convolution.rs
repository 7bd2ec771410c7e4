//! Zero-padded convolution of disk-supported functions, drum transforms,
//! basis-pair kernels and the Plancherel identity.
//!
//! Inputs live on a window of radius `a` with support radius `b = a / 2`,
//! so the convolution is supported in the same window.

use std::f64::consts::PI;
use std::fmt;
use std::io::{BufRead, Write};
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::basis::{Basis, BasisSpec};
use crate::bessel::{self, BoundaryCondition};
use crate::error::{Error, GuardSite, LatticePoint, Result};
use crate::sampling::{self, DiskFunction, FourierTable};
use crate::spectra::{self, CoefficientMatrix, LatticeShells};

/// Largest imaginary residue tolerated by [`plancherel_norm`], relative to
/// `max(1, |real part|)`.
pub const PLANCHEREL_IMAG_TOL: f64 = 1e-8;

/// How a convolution was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Direct,
    Spectral,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Direct => "direct",
            Method::Spectral => "spectral",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Method::Direct),
            "spectral" => Ok(Method::Spectral),
            other => Err(Error::invalid(
                "method",
                format!("expected `direct` or `spectral`, got `{other}`"),
            )),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ConvolutionResult {
    /// Sampled convolution on the vertex grid; only the direct path has one.
    pub spatial: Option<DiskFunction>,
    pub coefficients: CoefficientMatrix,
    pub provenance: Method,
}

fn check_pair(f1: &DiskFunction, f2: &DiskFunction) -> Result<()> {
    if f1.len() != f2.len()
        || f1.cells() != f2.cells()
        || (f1.radius() - f2.radius()).abs() > 1e-12 * f1.radius()
    {
        return Err(Error::Shape(format!(
            "grids differ: {}x{} over radius {} vs {}x{} over radius {}",
            f1.len(),
            f1.len(),
            f1.radius(),
            f2.len(),
            f2.len(),
            f2.radius()
        )));
    }
    if !f1.is_cell_centred() {
        return Err(Error::Shape("convolution inputs must be cell-centred".into()));
    }
    let half = 0.5 * f1.radius() * (1.0 + 1e-12);
    for f in [f1, f2] {
        if f.support() > half {
            return Err(Error::Config(format!(
                "support radius {} exceeds half the window radius {}",
                f.support(),
                f1.radius()
            )));
        }
    }
    Ok(())
}

fn fft2(data: &mut [Complex64], size: usize, inverse: bool) {
    let mut planner = FftPlanner::new();
    let fft = if inverse {
        planner.plan_fft_inverse(size)
    } else {
        planner.plan_fft_forward(size)
    };
    for row in data.chunks_exact_mut(size) {
        fft.process(row);
    }
    let mut column = vec![Complex64::new(0.0, 0.0); size];
    for c in 0..size {
        for r in 0..size {
            column[r] = data[r * size + c];
        }
        fft.process(&mut column);
        for r in 0..size {
            data[r * size + c] = column[r];
        }
    }
}

/// Full linear convolution `h^2 sum f1[i] f2[p - i]` on the `(2G - 1)`-point
/// grid `x_p = (p - (G - 1)) h`, computed with a `2G`-point zero-padded FFT
/// so nothing wraps around.
pub fn convolve_linear(f1: &DiskFunction, f2: &DiskFunction) -> Result<(usize, Vec<Complex64>)> {
    check_pair(f1, f2)?;
    let n = f1.len();
    let size = 2 * n;
    let mut a = vec![Complex64::new(0.0, 0.0); size * size];
    let mut b = vec![Complex64::new(0.0, 0.0); size * size];
    for iy in 0..n {
        for ix in 0..n {
            a[iy * size + ix] = f1.get(ix, iy);
            b[iy * size + ix] = f2.get(ix, iy);
        }
    }
    fft2(&mut a, size, false);
    fft2(&mut b, size, false);
    for (x, y) in a.iter_mut().zip(&b) {
        *x *= y;
    }
    fft2(&mut a, size, true);
    let h = f1.spacing();
    let scale = h * h / (size * size) as f64;
    let full = 2 * n - 1;
    let mut out = Vec::with_capacity(full * full);
    for p in 0..full {
        for q in 0..full {
            out.push(a[p * size + q] * scale);
        }
    }
    Ok((full, out))
}

/// `f1 (*) f2` sampled on the vertex grid of the window, `G + 1` points per
/// axis with one sample at the origin.
///
/// Fails with a consistency error if the raw linear convolution carries
/// more than `1e-12` of its energy outside radius `2b`.
pub fn convolve_direct(f1: &DiskFunction, f2: &DiskFunction) -> Result<DiskFunction> {
    let (full, raw) = convolve_linear(f1, f2)?;
    let n = f1.len();
    let h = f1.spacing();
    let reach = f1.support() + f2.support();
    let limit = reach * reach * (1.0 + 1e-12);
    let mut inside = 0.0;
    let mut outside = 0.0;
    for p in 0..full {
        let y = (p as f64 - (n as f64 - 1.0)) * h;
        for q in 0..full {
            let x = (q as f64 - (n as f64 - 1.0)) * h;
            let e = raw[p * full + q].norm_sqr();
            if x * x + y * y > limit {
                outside += e;
            } else {
                inside += e;
            }
        }
    }
    if inside + outside > 0.0 && outside > 1e-12 * (inside + outside) {
        return Err(Error::Consistency(format!(
            "convolution leaks {:.3e} of its energy outside radius {reach}",
            outside / (inside + outside)
        )));
    }
    // |x| <= a keeps offsets -G/2..=G/2 around the centre index n - 1
    let half = n / 2;
    let m = 2 * half + 1;
    let mut values = Vec::with_capacity(m * m);
    for p in (n - 1 - half)..=(n - 1 + half) {
        for q in (n - 1 - half)..=(n - 1 + half) {
            values.push(raw[p * full + q]);
        }
    }
    let radius = f1.radius();
    DiskFunction::from_samples(radius, radius.min(reach), n, m, values)
}

/// Coefficients of `f1 (*) f2` from the two square-window tables:
/// `C_{n,m} = sum_k c_a(k; n, m) t1(k) t2(k)`.
pub fn convolve_spectral(
    t1: &FourierTable,
    t2: &FourierTable,
    basis: &Basis,
) -> Result<CoefficientMatrix> {
    spectra::analyze_spectral(&t1.product(t2)?, basis)
}

/// [`convolve_spectral`] regrouped over lattice shells.
pub fn convolve_polar(
    t1: &FourierTable,
    t2: &FourierTable,
    shells: &LatticeShells,
    basis: &Basis,
) -> Result<CoefficientMatrix> {
    spectra::analyze_polar(&t1.product(t2)?, shells, basis)
}

/// Convolves two sampled functions and analyses the result in `basis`.
pub fn convolve(
    f1: &DiskFunction,
    f2: &DiskFunction,
    basis: &Basis,
    method: Method,
) -> Result<ConvolutionResult> {
    match method {
        Method::Direct => {
            let spatial = convolve_direct(f1, f2)?;
            let coefficients = spectra::analyze_direct(&spatial, basis)?;
            Ok(ConvolutionResult {
                spatial: Some(spatial),
                coefficients,
                provenance: method,
            })
        }
        Method::Spectral => {
            check_pair(f1, f2)?;
            let k = basis.spec().cutoff;
            let t1 = sampling::square_fourier_coeff(f1, k)?;
            let t2 = sampling::square_fourier_coeff(f2, k)?;
            Ok(ConvolutionResult {
                spatial: None,
                coefficients: convolve_spectral(&t1, &t2, basis)?,
                provenance: method,
            })
        }
    }
}

/// Lommel factor of the drum transform:
/// `int_0^b J_|m|(pi |omega| r) J_|m|(z r / b) r dr`.
fn drum_radial(
    condition: BoundaryCondition,
    order: u32,
    z: f64,
    w: f64,
    b: f64,
) -> std::result::Result<f64, f64> {
    let x = PI * w * b;
    if z == 0.0 {
        // constant mode of the derivative condition
        return Ok(if w == 0.0 {
            0.5 * b * b
        } else {
            b * bessel::eval_j(1, x).expect("order 1") / (PI * w)
        });
    }
    if w == 0.0 && order != 0 {
        return Ok(0.0);
    }
    let gap = x * x - z * z;
    if gap.abs() < spectra::RESONANCE_GUARD {
        return Err(gap);
    }
    let m = order as i32;
    let v = match condition {
        BoundaryCondition::ZeroValue => {
            let jx = bessel::eval_j(m, x).expect("order validated");
            let jpz = bessel::eval_j_prime(m, z).expect("order validated");
            z * jx * jpz
        }
        BoundaryCondition::Derivative => {
            let jz = bessel::eval_j(m, z).expect("order validated");
            let jpx = bessel::eval_j_prime(m, x).expect("order validated");
            -b * PI * w * jz * jpx
        }
    };
    Ok(v * b * b / gap)
}

/// Windowed transform of the zero-padded basis element `Psi_{nm}^b`:
/// `int_{|x| <= b} Psi_{nm}^b(x) e^{-pi i omega.x} dx`.
pub fn drum_hat_with(basis: &Basis, n: u32, m: i32, omega: [f64; 2]) -> Result<Complex64> {
    drum_hat_at(basis, n, m, omega, None)
}

fn drum_hat_at(
    basis: &Basis,
    n: u32,
    m: i32,
    omega: [f64; 2],
    k: Option<LatticePoint>,
) -> Result<Complex64> {
    basis.spec().check_index(n, m)?;
    if !(omega[0].is_finite() && omega[1].is_finite()) {
        return Err(Error::invalid("omega", "frequency must be finite"));
    }
    let b = basis.spec().radius;
    let w = omega[0].hypot(omega[1]);
    let z = basis.zero(n, m);
    let radial = drum_radial(basis.spec().condition, m.unsigned_abs(), z, w, b).map_err(|gap| {
        Error::NearSingular {
            site: GuardSite { n, m, k },
            gap,
        }
    })?;
    let phi = if w == 0.0 { 0.0 } else { omega[1].atan2(omega[0]) };
    // i^{-m} e^{i m Phi}
    let phase = Complex64::from_polar(1.0, m as f64 * (phi - 0.5 * PI));
    Ok(phase * ((2.0 * PI / basis.norm(n, m)).sqrt() * radial))
}

/// [`drum_hat_with`] for a one-off evaluation on a disk of radius `b`.
pub fn drum_hat(
    n: u32,
    m: i32,
    omega: [f64; 2],
    b: f64,
    condition: BoundaryCondition,
) -> Result<Complex64> {
    let spec = BasisSpec::new(b, condition, m.unsigned_abs(), n, 1)?;
    drum_hat_with(&Basis::new(spec)?, n, m, omega)
}

/// Drum transforms at the lattice frequencies `k / a` for `|k|_inf <= K`.
pub fn drum_table(basis_b: &Basis, n: u32, m: i32, a: f64, cutoff: u32) -> Result<FourierTable> {
    FourierTable::from_fn(cutoff, a, |k1, k2| {
        drum_hat_at(basis_b, n, m, [k1 as f64 / a, k2 as f64 / a], Some((k1, k2)))
    })
}

/// Coefficients of `Psi_{nm}^b (*) Psi_{n'm'}^b` in the radius-`a` basis,
/// `b = a / 2`.
pub fn basis_pair_coeffs(
    first: (u32, i32),
    second: (u32, i32),
    basis_b: &Basis,
    basis_a: &Basis,
) -> Result<CoefficientMatrix> {
    let a = basis_a.spec().radius;
    check_half(basis_b, basis_a)?;
    let k = basis_a.spec().cutoff;
    let t1 = drum_table(basis_b, first.0, first.1, a, k)?;
    let t2 = drum_table(basis_b, second.0, second.1, a, k)?;
    convolve_spectral(&t1, &t2, basis_a)
}

fn check_half(basis_b: &Basis, basis_a: &Basis) -> Result<()> {
    let (sb, sa) = (basis_b.spec(), basis_a.spec());
    if (2.0 * sb.radius - sa.radius).abs() > 1e-12 * sa.radius {
        return Err(Error::Config(format!(
            "kernel radius {} must be half the output radius {}",
            sb.radius, sa.radius
        )));
    }
    if sb.condition != sa.condition {
        return Err(Error::Config("kernel and output bases use different conditions".into()));
    }
    Ok(())
}

/// Identifies a kernel cache: output spec, grid size and kernel order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelKey {
    pub condition: BoundaryCondition,
    pub radius: f64,
    pub max_radial: u32,
    pub max_angular: u32,
    pub cutoff: u32,
    pub grid: usize,
    /// Kernel indices run over `n <= kernel_radial`, `|m| <= kernel_angular`.
    pub kernel_radial: u32,
    pub kernel_angular: u32,
}

impl KernelKey {
    fn header(&self) -> String {
        format!(
            "#bc={},a={:.16e},N={},M={},K={},G={},kn={},km={}",
            self.condition,
            self.radius,
            self.max_radial,
            self.max_angular,
            self.cutoff,
            self.grid,
            self.kernel_radial,
            self.kernel_angular
        )
    }

    fn file_name(&self) -> String {
        format!(
            "kernels_{}_N{}_M{}_K{}_G{}_kn{}_km{}.csv",
            self.condition,
            self.max_radial,
            self.max_angular,
            self.cutoff,
            self.grid,
            self.kernel_radial,
            self.kernel_angular
        )
    }

    fn output_spec(&self) -> Result<BasisSpec> {
        BasisSpec::new(
            self.radius,
            self.condition,
            self.max_angular,
            self.max_radial,
            self.cutoff,
        )
    }
}

/// Index pair `((n, m), (n', m'))` and its kernel coefficients.
type KernelEntry = ((u32, i32), (u32, i32), CoefficientMatrix);

/// Precomputed basis-pair kernels for every index pair within the kernel order.
#[derive(Debug, Clone)]
pub struct KernelCache {
    key: KernelKey,
    pairs: Vec<KernelEntry>,
}

impl KernelCache {
    fn kernel_indices(key: &KernelKey) -> Vec<(u32, i32)> {
        let km = key.kernel_angular as i32;
        (1..=key.kernel_radial)
            .flat_map(|n| (-km..=km).map(move |m| (n, m)))
            .collect()
    }

    pub fn build(key: KernelKey) -> Result<Self> {
        if key.kernel_radial == 0 {
            return Err(Error::invalid("kn", "kernel order must be at least 1"));
        }
        let spec_a = key.output_spec()?;
        let basis_a = Basis::new(spec_a)?;
        let spec_b = BasisSpec::new(
            0.5 * key.radius,
            key.condition,
            key.kernel_angular,
            key.kernel_radial,
            key.cutoff,
        )?;
        let basis_b = Basis::new(spec_b)?;
        let indices = Self::kernel_indices(&key);
        let tables = indices
            .iter()
            .map(|&(n, m)| drum_table(&basis_b, n, m, key.radius, key.cutoff))
            .collect::<Result<Vec<_>>>()?;
        let mut pairs = Vec::new();
        for (i, &p) in indices.iter().enumerate() {
            for (j, &q) in indices.iter().enumerate() {
                let c = convolve_spectral(&tables[i], &tables[j], &basis_a)?;
                pairs.push((p, q, c));
            }
        }
        Ok(KernelCache { key, pairs })
    }

    pub fn key(&self) -> &KernelKey {
        &self.key
    }

    pub fn get(&self, first: (u32, i32), second: (u32, i32)) -> Option<&CoefficientMatrix> {
        self.pairs
            .iter()
            .find(|(p, q, _)| *p == first && *q == second)
            .map(|(_, _, c)| c)
    }

    /// Rows `k,l,n,m,n',m',re,im` below a header echoing the key.
    pub fn write<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{}", self.key.header())?;
        writeln!(w, "k,l,n,m,n',m',re,im")?;
        for ((n, m), (n2, m2), c) in &self.pairs {
            for (k, l, v) in c.iter() {
                writeln!(
                    w,
                    "{k},{l},{n},{m},{n2},{m2},{:.16e},{:.16e}",
                    v.re, v.im
                )?;
            }
        }
        Ok(())
    }

    /// Reads a cache written by [`KernelCache::write`]; the header must match `key`.
    pub fn read<R: BufRead>(r: R, key: KernelKey) -> Result<Self> {
        let mut lines = r.lines();
        let header = lines
            .next()
            .transpose()
            .map_err(|e| Error::parse("kernel cache", e.to_string()))?
            .unwrap_or_default();
        if header.trim() != key.header() {
            return Err(Error::Config(format!(
                "kernel cache header `{}` does not match `{}`",
                header.trim(),
                key.header()
            )));
        }
        let spec = key.output_spec()?;
        let indices = Self::kernel_indices(&key);
        let mut pairs: Vec<KernelEntry> = Vec::new();
        for &p in &indices {
            for &q in &indices {
                pairs.push((p, q, CoefficientMatrix::zeros(spec).with_grid(Some(key.grid))));
            }
        }
        let mut seen = 0usize;
        for (lineno, line) in lines.enumerate() {
            let line = line.map_err(|e| Error::parse("kernel cache", e.to_string()))?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('k') {
                continue;
            }
            let ctx = || format!("kernel cache line {}", lineno + 2);
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 8 {
                return Err(Error::parse(ctx(), "expected 8 fields"));
            }
            let int = |s: &str, name: &str| -> Result<i64> {
                s.trim()
                    .parse()
                    .map_err(|_| Error::parse(ctx(), format!("field `{name}` is not an integer")))
            };
            let real = |s: &str, name: &str| -> Result<f64> {
                s.trim()
                    .parse()
                    .map_err(|_| Error::parse(ctx(), format!("field `{name}` is not a number")))
            };
            let (k, l) = (int(f[0], "k")? as u32, int(f[1], "l")? as i32);
            let first = (int(f[2], "n")? as u32, int(f[3], "m")? as i32);
            let second = (int(f[4], "n'")? as u32, int(f[5], "m'")? as i32);
            let v = Complex64::new(real(f[6], "re")?, real(f[7], "im")?);
            let slot = pairs
                .iter_mut()
                .find(|(p, q, _)| *p == first && *q == second)
                .ok_or_else(|| Error::parse(ctx(), "kernel index outside the cache key"))?;
            if !spec.contains(k, l) {
                return Err(Error::parse(ctx(), "coefficient index outside the spec"));
            }
            slot.2.set(k, l, v);
            seen += 1;
        }
        if seen != pairs.len() * spec.len() {
            return Err(Error::parse("kernel cache", format!("expected {} rows, got {seen}", pairs.len() * spec.len())));
        }
        Ok(KernelCache { key, pairs })
    }

    /// Loads the cache for `key` from `dir`, building and storing it on a miss.
    /// Writes go through a temporary file and a rename.
    pub fn load_or_build(dir: &Path, key: KernelKey) -> Result<Self> {
        let path = dir.join(key.file_name());
        if let Ok(file) = std::fs::File::open(&path) {
            if let Ok(cache) = Self::read(std::io::BufReader::new(file), key) {
                return Ok(cache);
            }
        }
        let cache = Self::build(key)?;
        let io_err = |source| Error::Io {
            path: path.display().to_string(),
            source,
        };
        std::fs::create_dir_all(dir).map_err(io_err)?;
        let tmp = dir.join(format!(".{}.{}.tmp", key.file_name(), std::process::id()));
        {
            let file = std::fs::File::create(&tmp).map_err(io_err)?;
            let mut w = std::io::BufWriter::new(file);
            cache.write(&mut w).map_err(io_err)?;
            w.flush().map_err(io_err)?;
        }
        std::fs::rename(&tmp, &path).map_err(io_err)?;
        Ok(cache)
    }
}

/// `||f||^2 = sum_n C_{n,0} Psi_{n0}(0)` for the coefficients of `f (*) f*`,
/// with `Psi_{n0}(0) = N_n^{(0)}(a)^{-1/2} / sqrt(2 pi)`.
pub fn plancherel_norm(c: &CoefficientMatrix, basis: &Basis) -> Result<f64> {
    let spec = basis.spec();
    if c.spec().condition != spec.condition
        || c.spec().max_radial != spec.max_radial
        || (c.spec().radius - spec.radius).abs() > 1e-12 * spec.radius
    {
        return Err(Error::Config("coefficients and basis disagree on the spec".into()));
    }
    let mut acc = crate::quadrature::ComplexNeumaier::default();
    for n in 1..=spec.max_radial {
        acc.add(c.get(n, 0) / basis.norm(n, 0).sqrt());
    }
    let total = acc.value() / (2.0 * PI).sqrt();
    if total.im.abs() > PLANCHEREL_IMAG_TOL * total.re.abs().max(1.0) {
        return Err(Error::Consistency(format!(
            "imaginary residue {:.3e} in the Plancherel sum; input is not an autocorrelation",
            total.im
        )));
    }
    Ok(total.re)
}

/// Squared norm of `f` through the Plancherel identity on the spectral path.
pub fn plancherel_spectral(f: &DiskFunction, basis: &Basis) -> Result<f64> {
    let k = basis.spec().cutoff;
    let t = sampling::square_fourier_coeff(f, k)?;
    let ts = sampling::square_fourier_coeff(&f.reflect_conj(), k)?;
    plancherel_norm(&convolve_spectral(&t, &ts, basis)?, basis)
}

/// [`plancherel_spectral`] with the shell-regrouped sum.
pub fn plancherel_polar(f: &DiskFunction, shells: &LatticeShells, basis: &Basis) -> Result<f64> {
    let k = basis.spec().cutoff;
    let t = sampling::square_fourier_coeff(f, k)?;
    let ts = sampling::square_fourier_coeff(&f.reflect_conj(), k)?;
    plancherel_norm(&convolve_polar(&t, &ts, shells, basis)?, basis)
}

/// `|C_{n,m}|` in storage order (`n` outer, `m` ascending).
pub fn rotation_descriptors(c: &CoefficientMatrix) -> Vec<f64> {
    c.entries().iter().map(|v| v.norm()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn indicator(b: f64, grid: usize) -> DiskFunction {
        DiskFunction::restrict_and_pad_real(|_, _| 1.0, 2.0 * b, b, grid).unwrap()
    }

    #[test]
    fn indicator_self_convolution() {
        let b = 0.5;
        let f = indicator(b, 128);
        let g = convolve_direct(&f, &f).unwrap();
        assert_eq!(g.len(), 129);
        let centre = g.get(64, 64).re;
        assert!((centre - PI * b * b).abs() / (PI * b * b) < 1e-2);
        assert!(g.get(128, 64).re.abs() < 1e-12);
        let lens = b * b * (2.0 * PI / 3.0 - 3f64.sqrt() / 2.0);
        assert!((g.get(96, 64).re - lens).abs() / lens < 1e-2);
    }

    #[test]
    fn convolution_rejects_wide_support() {
        let f = DiskFunction::restrict_and_pad_real(|_, _| 1.0, 1.0, 0.8, 32).unwrap();
        assert!(matches!(convolve_direct(&f, &f), Err(Error::Config(_))));
        let g = DiskFunction::restrict_and_pad_real(|_, _| 1.0, 1.0, 0.5, 64).unwrap();
        let h = DiskFunction::restrict_and_pad_real(|_, _| 1.0, 1.0, 0.5, 32).unwrap();
        assert!(matches!(convolve_direct(&g, &h), Err(Error::Shape(_))));
    }

    #[test]
    fn drum_hat_special_cases() {
        for bc in BoundaryCondition::ALL {
            assert_eq!(drum_hat(2, 3, [0.0, 0.0], 0.5, bc).unwrap(), Complex64::new(0.0, 0.0));
        }
        // constant mode: sqrt(2 pi / (b^2/2)) * b^2/2 = b sqrt(pi)
        let v = drum_hat(1, 0, [0.0, 0.0], 0.5, BoundaryCondition::Derivative).unwrap();
        assert!((v.re - 0.5 * PI.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn drum_hat_conjugates_to_weight() {
        for bc in BoundaryCondition::ALL {
            let basis = Basis::new(BasisSpec::new(1.0, bc, 3, 3, 8).unwrap()).unwrap();
            for &(n, m, k) in &[(1, 0, (2, 1)), (2, -3, (0, 4)), (3, 2, (-1, -5))] {
                let d = drum_hat_with(&basis, n, m, [k.0 as f64, k.1 as f64]).unwrap();
                let w = spectra::spectral_weight(k, n, m, &basis).unwrap();
                assert!((d.conj() / 4.0 - w).norm() < 1e-13, "{bc} {n} {m}");
            }
        }
    }

    #[test]
    fn plancherel_of_zero() {
        let basis = Basis::new(
            BasisSpec::new(1.0, BoundaryCondition::ZeroValue, 0, 4, 8).unwrap(),
        )
        .unwrap();
        let f = DiskFunction::restrict_and_pad_real(|_, _| 0.0, 1.0, 0.5, 32).unwrap();
        assert_eq!(plancherel_spectral(&f, &basis).unwrap(), 0.0);
    }

    #[test]
    fn kernel_cache_round_trip() {
        let key = KernelKey {
            condition: BoundaryCondition::Derivative,
            radius: 1.0,
            max_radial: 2,
            max_angular: 2,
            cutoff: 8,
            grid: 64,
            kernel_radial: 1,
            kernel_angular: 1,
        };
        let dir = tempfile::tempdir().unwrap();
        let built = KernelCache::load_or_build(dir.path(), key).unwrap();
        let loaded = KernelCache::load_or_build(dir.path(), key).unwrap();
        for (p, q, c) in &built.pairs {
            assert_eq!(loaded.get(*p, *q).unwrap().entries(), c.entries());
        }
        let other = KernelKey { grid: 32, ..key };
        let mut buf = Vec::new();
        built.write(&mut buf).unwrap();
        assert!(KernelCache::read(buf.as_slice(), other).is_err());
    }
}
