//! Spectral weights, Fourier-Bessel analysis and synthesis, lattice shells
//! and rotations of coefficient matrices.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::basis::{Basis, BasisSpec};
use crate::bessel::{self, BoundaryCondition};
use crate::error::{Error, GuardSite, LatticePoint, Result};
use crate::quadrature::{self, ComplexNeumaier, GaussLegendre};
use crate::sampling::{DiskFunction, FourierTable};

/// Fitted weight constant for the zero-value condition.
pub const WEIGHT_CONSTANT_ZERO: f64 = 0.886_226_925_452_758;
/// Fitted weight constant for the derivative condition.
pub const WEIGHT_CONSTANT_DERIVATIVE: f64 = -2.784_163_998_415_854;

/// Spectral sums reject weights with `|pi^2 |k|^2 - z^2|` below this.
pub const RESONANCE_GUARD: f64 = 1e-9;

/// Smallest lattice cutoff accepted by the spectral analysis paths.
pub const MIN_SPECTRAL_CUTOFF: u32 = 8;

pub fn weight_constant(condition: BoundaryCondition) -> f64 {
    match condition {
        BoundaryCondition::ZeroValue => WEIGHT_CONSTANT_ZERO,
        BoundaryCondition::Derivative => WEIGHT_CONSTANT_DERIVATIVE,
    }
}

/// Fourier-Bessel coefficients `C_{n,m}` for `n in 1..=N`, `m in -M..=M`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientMatrix {
    spec: BasisSpec,
    grid: Option<usize>,
    entries: Vec<Complex64>,
}

impl CoefficientMatrix {
    pub fn zeros(spec: BasisSpec) -> Self {
        CoefficientMatrix {
            spec,
            grid: None,
            entries: vec![Complex64::new(0.0, 0.0); spec.len()],
        }
    }

    pub fn from_entries(spec: BasisSpec, grid: Option<usize>, entries: Vec<Complex64>) -> Result<Self> {
        spec.validate()?;
        if entries.len() != spec.len() {
            return Err(Error::Shape(format!(
                "spec needs {} coefficients, got {}",
                spec.len(),
                entries.len()
            )));
        }
        Ok(CoefficientMatrix {
            spec,
            grid,
            entries,
        })
    }

    pub fn spec(&self) -> &BasisSpec {
        &self.spec
    }

    /// Grid size of the sampled source, when known.
    pub fn grid(&self) -> Option<usize> {
        self.grid
    }

    pub fn with_grid(mut self, grid: Option<usize>) -> Self {
        self.grid = grid;
        self
    }

    #[inline]
    fn index(&self, n: u32, m: i32) -> usize {
        (n as usize - 1) * self.spec.width() + (m + self.spec.max_angular as i32) as usize
    }

    /// `C_{n,m}`; panics outside the index set.
    pub fn get(&self, n: u32, m: i32) -> Complex64 {
        assert!(self.spec.contains(n, m), "index (n={n}, m={m}) out of range");
        self.entries[self.index(n, m)]
    }

    pub fn set(&mut self, n: u32, m: i32, value: Complex64) {
        assert!(self.spec.contains(n, m), "index (n={n}, m={m}) out of range");
        let i = self.index(n, m);
        self.entries[i] = value;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Iterates `(n, m, C_{n,m})` with `n` outer.
    pub fn iter(&self) -> impl Iterator<Item = (u32, i32, Complex64)> + '_ {
        let width = self.spec.width();
        let mm = self.spec.max_angular as i32;
        self.entries
            .iter()
            .enumerate()
            .map(move |(i, v)| ((i / width) as u32 + 1, (i % width) as i32 - mm, *v))
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        CoefficientMatrix {
            entries: self.entries.iter().map(|v| v * factor).collect(),
            ..self.clone()
        }
    }

    /// Largest entrywise modulus of the difference.
    pub fn max_abs_diff(&self, other: &CoefficientMatrix) -> Result<f64> {
        if self.entries.len() != other.entries.len()
            || self.spec.max_angular != other.spec.max_angular
        {
            return Err(Error::Shape("coefficient matrices have different index sets".into()));
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// `sum |C_{n,m}|^2`.
    pub fn energy(&self) -> f64 {
        self.entries.iter().map(|v| v.norm_sqr()).sum()
    }
}

/// `e^{-i m Phi(k)}` times `i^m` for `m in 0..=M`; `Phi(0) := 0`.
fn phase_powers(k: LatticePoint, max_angular: u32, out: &mut Vec<Complex64>) {
    out.clear();
    let (k1, k2) = (k.0 as f64, k.1 as f64);
    let len = k1.hypot(k2);
    let u = if len == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::new(k1 / len, k2 / len)
    };
    // i * conj(u) = (k2 + i k1) / |k|
    let step = Complex64::new(u.im, u.re);
    let mut p = Complex64::new(1.0, 0.0);
    out.push(p);
    for _ in 0..max_angular {
        p *= step;
        out.push(p);
    }
}

/// `i^m e^{-i m Phi}` for signed `m` from the table of non-negative powers.
#[inline]
fn signed_phase(powers: &[Complex64], m: i32) -> Complex64 {
    let p = powers[m.unsigned_abs() as usize];
    if m < 0 {
        p.conj()
    } else {
        p
    }
}

/// Real radial factor of the weight at `|k|^2 = s`, before the phase
/// `i^m e^{-i m Phi}` and the constant. `bessel_row` holds `J_0..=J_{M+1}`
/// at `pi sqrt(s)`.
fn radial_shape(
    basis: &Basis,
    n: u32,
    order: u32,
    s: u64,
    bessel_row: &[f64],
) -> std::result::Result<f64, f64> {
    let a = basis.spec().radius;
    let z = basis.zero(n, order as i32);
    let q = PI * PI * s as f64;
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    match basis.spec().condition {
        BoundaryCondition::ZeroValue => {
            let gap = q - z * z;
            if gap.abs() < RESONANCE_GUARD {
                return Err(gap);
            }
            Ok(sign * (z / a) * bessel_row[order as usize] / gap)
        }
        BoundaryCondition::Derivative => {
            let g = if order == 0 {
                1.0 / a
            } else {
                (z / a) / (z * z - (order * order) as f64).sqrt()
            };
            if s == 0 {
                // only the constant mode survives at k = 0
                return Ok(if order == 0 && z == 0.0 {
                    sign * g / (2.0 * PI)
                } else {
                    0.0
                });
            }
            let gap = z * z - q;
            if gap.abs() < RESONANCE_GUARD {
                return Err(gap);
            }
            let jp = if order == 0 {
                -bessel_row[1]
            } else {
                0.5 * (bessel_row[order as usize - 1] - bessel_row[order as usize + 1])
            };
            Ok(sign * (s as f64).sqrt() * g * jp / gap)
        }
    }
}

/// Radial factors of every `(n, |m|)` weight for one `|k|^2`, constant included.
fn shell_factors(basis: &Basis, s: u64, at: LatticePoint) -> Result<Vec<f64>> {
    let spec = basis.spec();
    let nn = spec.max_radial as usize;
    let row = bessel::eval_j_orders(spec.max_angular + 1, PI * (s as f64).sqrt())?;
    let c = weight_constant(spec.condition);
    let mut out = vec![0.0; (spec.max_angular as usize + 1) * nn];
    for order in 0..=spec.max_angular {
        for n in 1..=spec.max_radial {
            let v = radial_shape(basis, n, order, s, &row).map_err(|gap| Error::NearSingular {
                site: GuardSite {
                    n,
                    m: order as i32,
                    k: Some(at),
                },
                gap,
            })?;
            out[order as usize * nn + n as usize - 1] = c * v;
        }
    }
    Ok(out)
}

/// `c_a(k; n, m)` such that `C_{n,m} = sum_k c_a(k; n, m) xi^{k}`.
pub fn spectral_weight(k: LatticePoint, n: u32, m: i32, basis: &Basis) -> Result<Complex64> {
    basis.spec().check_index(n, m)?;
    let s = (k.0 * k.0 + k.1 * k.1) as u64;
    let row = bessel::eval_j_orders(m.unsigned_abs() + 1, PI * (s as f64).sqrt())?;
    let shape = radial_shape(basis, n, m.unsigned_abs(), s, &row).map_err(|gap| {
        Error::NearSingular {
            site: GuardSite { n, m, k: Some(k) },
            gap,
        }
    })?;
    let mut powers = Vec::new();
    phase_powers(k, m.unsigned_abs(), &mut powers);
    Ok(signed_phase(&powers, m) * (weight_constant(basis.spec().condition) * shape))
}

/// Radial weight factors shared by all lattice points of equal `|k|^2`.
#[derive(Debug, Clone)]
pub struct WeightBank {
    spec: BasisSpec,
    factors: HashMap<u64, Vec<f64>>,
}

impl WeightBank {
    /// Factors for every shell of the window `[-K, K]^2`, `K = spec.cutoff`.
    pub fn new(basis: &Basis) -> Result<Self> {
        let k = basis.spec().cutoff as i64;
        let mut factors = HashMap::new();
        for k1 in -k..=k {
            for k2 in -k..=k {
                let s = (k1 * k1 + k2 * k2) as u64;
                if let std::collections::hash_map::Entry::Vacant(e) = factors.entry(s) {
                    e.insert(shell_factors(basis, s, (k1, k2))?);
                }
            }
        }
        Ok(WeightBank {
            spec: *basis.spec(),
            factors,
        })
    }

    fn shell(&self, s: u64) -> &[f64] {
        &self.factors[&s]
    }
}

fn check_table(table: &FourierTable, spec: &BasisSpec) -> Result<()> {
    if spec.cutoff < MIN_SPECTRAL_CUTOFF {
        return Err(Error::invalid(
            "K",
            format!("spectral analysis needs K >= {MIN_SPECTRAL_CUTOFF}, got {}", spec.cutoff),
        ));
    }
    if table.cutoff() < spec.cutoff {
        return Err(Error::Config(format!(
            "table cutoff {} is below the spec cutoff {}",
            table.cutoff(),
            spec.cutoff
        )));
    }
    if (table.radius() - spec.radius).abs() > 1e-12 * spec.radius {
        return Err(Error::Config(format!(
            "table window radius {} differs from basis radius {}",
            table.radius(),
            spec.radius
        )));
    }
    Ok(())
}

/// `C_{n,m} = sum_{|k|_inf <= K} c_a(k; n, m) xi^{k}`, summed in row-major
/// order over the window with compensated accumulation.
pub fn analyze_spectral(table: &FourierTable, basis: &Basis) -> Result<CoefficientMatrix> {
    let bank = WeightBank::new(basis)?;
    analyze_spectral_with(table, basis, &bank)
}

pub fn analyze_spectral_with(
    table: &FourierTable,
    basis: &Basis,
    bank: &WeightBank,
) -> Result<CoefficientMatrix> {
    let spec = *basis.spec();
    check_table(table, &spec)?;
    if bank.spec != spec {
        return Err(Error::Config("weight bank was built for another spec".into()));
    }
    let nn = spec.max_radial as usize;
    let mm = spec.max_angular as i32;
    let width = spec.width();
    let mut acc = vec![ComplexNeumaier::default(); spec.len()];
    let mut powers = Vec::new();
    let k = spec.cutoff as i64;
    for k1 in -k..=k {
        for k2 in -k..=k {
            let xi = table.get(k1, k2).expect("cutoff checked");
            let s = (k1 * k1 + k2 * k2) as u64;
            let factors = bank.shell(s);
            phase_powers((k1, k2), spec.max_angular, &mut powers);
            for m in -mm..=mm {
                let ph = signed_phase(&powers, m) * xi;
                let row = m.unsigned_abs() as usize * nn;
                for n in 0..nn {
                    let f = factors[row + n];
                    if f != 0.0 {
                        acc[n * width + (m + mm) as usize].add(ph * f);
                    }
                }
            }
        }
    }
    CoefficientMatrix::from_entries(spec, table.grid(), acc.iter().map(|a| a.value()).collect())
}

/// Lattice window `[-K, K]^2` grouped by exact `|k|^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeShells {
    cutoff: u32,
    shells: BTreeMap<u64, Vec<LatticePoint>>,
}

impl LatticeShells {
    pub fn new(cutoff: u32) -> Result<Self> {
        if cutoff == 0 {
            return Err(Error::invalid("K", "must be at least 1"));
        }
        let k = cutoff as i64;
        let mut shells: BTreeMap<u64, Vec<LatticePoint>> = BTreeMap::new();
        for k1 in -k..=k {
            for k2 in -k..=k {
                shells
                    .entry((k1 * k1 + k2 * k2) as u64)
                    .or_default()
                    .push((k1, k2));
            }
        }
        Ok(LatticeShells { cutoff, shells })
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn len(&self) -> usize {
        self.shells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shells.is_empty()
    }

    /// Shell radii `tau = sqrt(|k|^2)` in ascending order.
    pub fn radii(&self) -> Vec<f64> {
        self.shells.keys().map(|&s| (s as f64).sqrt()).collect()
    }

    /// `(|k|^2, points)` in ascending radius.
    pub fn iter(&self) -> impl Iterator<Item = (u64, &[LatticePoint])> + '_ {
        self.shells.iter().map(|(s, p)| (*s, p.as_slice()))
    }

    /// Points on the shell `|k|^2 = s`.
    pub fn shell(&self, s: u64) -> Option<&[LatticePoint]> {
        self.shells.get(&s).map(Vec::as_slice)
    }

    /// Angles of the points on shell `s`, by `atan2`.
    pub fn angles(&self, s: u64) -> Vec<f64> {
        self.shell(s)
            .unwrap_or(&[])
            .iter()
            .map(|&(k1, k2)| (k2 as f64).atan2(k1 as f64))
            .collect()
    }
}

/// Same sum as [`analyze_spectral`], regrouped shell by shell: the radial
/// factor is applied once per shell to the phase-weighted shell sum.
pub fn analyze_polar(
    table: &FourierTable,
    shells: &LatticeShells,
    basis: &Basis,
) -> Result<CoefficientMatrix> {
    let spec = *basis.spec();
    check_table(table, &spec)?;
    if shells.cutoff() != spec.cutoff {
        return Err(Error::Config(format!(
            "shell cutoff {} differs from spec cutoff {}",
            shells.cutoff(),
            spec.cutoff
        )));
    }
    let nn = spec.max_radial as usize;
    let mm = spec.max_angular as i32;
    let width = spec.width();
    let mut acc = vec![ComplexNeumaier::default(); spec.len()];
    let mut powers = Vec::new();
    let mut sums = vec![ComplexNeumaier::default(); width];
    for (s, points) in shells.iter() {
        let factors = shell_factors(basis, s, points[0])?;
        sums.iter_mut().for_each(|v| *v = ComplexNeumaier::default());
        for &k in points {
            let xi = table.get(k.0, k.1).expect("cutoff checked");
            phase_powers(k, spec.max_angular, &mut powers);
            for m in -mm..=mm {
                sums[(m + mm) as usize].add(signed_phase(&powers, m) * xi);
            }
        }
        for m in -mm..=mm {
            let shell_sum = sums[(m + mm) as usize].value();
            let row = m.unsigned_abs() as usize * nn;
            for n in 0..nn {
                let f = factors[row + n];
                if f != 0.0 {
                    acc[n * width + (m + mm) as usize].add(shell_sum * f);
                }
            }
        }
    }
    CoefficientMatrix::from_entries(spec, table.grid(), acc.iter().map(|a| a.value()).collect())
}

/// Polar quadrature used by [`analyze_direct`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DirectQuadrature {
    pub radial_nodes: usize,
    pub angular_nodes: usize,
}

impl Default for DirectQuadrature {
    fn default() -> Self {
        DirectQuadrature {
            radial_nodes: 128,
            angular_nodes: 256,
        }
    }
}

/// `C_{n,m} = int int xi conj(Psi_{nm}) r dr dtheta` by Gauss-Legendre in
/// `r` and the trapezoid rule in `theta`, sampling `xi` bilinearly.
pub fn analyze_direct(xi: &DiskFunction, basis: &Basis) -> Result<CoefficientMatrix> {
    analyze_direct_with(xi, basis, DirectQuadrature::default())
}

pub fn analyze_direct_with(
    xi: &DiskFunction,
    basis: &Basis,
    quad: DirectQuadrature,
) -> Result<CoefficientMatrix> {
    let spec = *basis.spec();
    if (xi.radius() - spec.radius).abs() > 1e-12 * spec.radius {
        return Err(Error::Config(format!(
            "function window radius {} differs from basis radius {}",
            xi.radius(),
            spec.radius
        )));
    }
    if quad.radial_nodes == 0 || quad.angular_nodes <= 2 * spec.max_angular as usize {
        return Err(Error::invalid(
            "quadrature",
            "angular nodes must exceed 2M and radial nodes must be positive",
        ));
    }
    let nn = spec.max_radial as usize;
    let mm = spec.max_angular as i32;
    let width = spec.width();
    let nt = quad.angular_nodes;
    let dtheta = 2.0 * PI / nt as f64;
    let trig: Vec<(f64, f64)> = (0..nt).map(|j| (j as f64 * dtheta).sin_cos()).collect();
    // e^{-i m theta_j} for m in 0..=M
    let expo: Vec<Vec<Complex64>> = (0..=spec.max_angular)
        .map(|m| {
            (0..nt)
                .map(|j| Complex64::from_polar(1.0, -(m as f64) * j as f64 * dtheta))
                .collect()
        })
        .collect();
    let rule = GaussLegendre::new(quad.radial_nodes);
    let norm = 1.0 / (2.0 * PI).sqrt();
    let mut acc = vec![ComplexNeumaier::default(); spec.len()];
    let mut samples = vec![Complex64::new(0.0, 0.0); nt];
    for (r, w) in rule.on_interval(0.0, spec.radius) {
        for (j, &(s, c)) in trig.iter().enumerate() {
            samples[j] = xi.bilinear(r * c, r * s);
        }
        let profile = basis.radial_profile(r);
        for m in -mm..=mm {
            let e = &expo[m.unsigned_abs() as usize];
            let mut ang = ComplexNeumaier::default();
            for j in 0..nt {
                let p = if m < 0 { e[j].conj() } else { e[j] };
                ang.add(samples[j] * p);
            }
            let ang = ang.value() * (dtheta * norm * w * r);
            let row = m.unsigned_abs() as usize * nn;
            let sign = if m < 0 && m % 2 != 0 { -1.0 } else { 1.0 };
            for n in 0..nn {
                acc[n * width + (m + mm) as usize].add(ang * (sign * profile[row + n]));
            }
        }
    }
    CoefficientMatrix::from_entries(
        spec,
        Some(xi.cells()),
        acc.iter().map(|a| a.value()).collect(),
    )
}

fn check_basis(c: &CoefficientMatrix, basis: &Basis) -> Result<()> {
    let (a, b) = (c.spec(), basis.spec());
    if a.condition != b.condition
        || a.max_angular != b.max_angular
        || a.max_radial != b.max_radial
        || (a.radius - b.radius).abs() > 1e-12 * b.radius
    {
        return Err(Error::Config("coefficients and basis disagree on the spec".into()));
    }
    Ok(())
}

fn synthesize_from_profile(
    c: &CoefficientMatrix,
    profile: &[f64],
    unit: Complex64,
) -> Complex64 {
    let spec = c.spec();
    let nn = spec.max_radial as usize;
    let mm = spec.max_angular as i32;
    // e^{i m theta} for m in 0..=M
    let mut powers = Vec::with_capacity(mm as usize + 1);
    let mut p = Complex64::new(1.0, 0.0);
    powers.push(p);
    for _ in 0..mm {
        p *= unit;
        powers.push(p);
    }
    let mut acc = ComplexNeumaier::default();
    for m in -mm..=mm {
        let e = if m < 0 {
            powers[m.unsigned_abs() as usize].conj()
        } else {
            powers[m as usize]
        };
        let sign = if m < 0 && m % 2 != 0 { -1.0 } else { 1.0 };
        let row = m.unsigned_abs() as usize * nn;
        let mut radial = ComplexNeumaier::default();
        for n in 1..=nn {
            radial.add(c.get(n as u32, m) * (sign * profile[row + n - 1]));
        }
        acc.add(radial.value() * e);
    }
    acc.value() / (2.0 * PI).sqrt()
}

/// `sum_{n,m} C_{n,m} Psi_{nm}(r, theta)` over the stored indices.
pub fn synthesize(c: &CoefficientMatrix, basis: &Basis, r: f64, theta: f64) -> Result<Complex64> {
    check_basis(c, basis)?;
    let a = basis.spec().radius;
    if !(r.is_finite() && (0.0..=a * (1.0 + 1e-12)).contains(&r)) {
        return Err(Error::Domain {
            what: "r",
            value: r,
            lo: 0.0,
            hi: a,
        });
    }
    if !theta.is_finite() {
        return Err(Error::invalid("theta", "angle must be finite"));
    }
    let profile = basis.radial_profile(r);
    Ok(synthesize_from_profile(c, &profile, Complex64::from_polar(1.0, theta)))
}

/// Synthesis at the cell centres of a `G x G` grid over `[-a, a]^2`.
/// Radial profiles are shared between cells of equal radius.
pub fn synthesize_grid(c: &CoefficientMatrix, basis: &Basis, grid: usize) -> Result<DiskFunction> {
    check_basis(c, basis)?;
    let a = basis.spec().radius;
    if grid < crate::sampling::MIN_GRID {
        return Err(Error::invalid("G", format!("grid size {grid} is too small")));
    }
    let h = 2.0 * a / grid as f64;
    let mut cache: HashMap<u64, Vec<f64>> = HashMap::new();
    let mut values = vec![Complex64::new(0.0, 0.0); grid * grid];
    let g = grid as i64;
    for iy in 0..grid {
        let ty = 2 * iy as i64 - g + 1;
        for ix in 0..grid {
            let tx = 2 * ix as i64 - g + 1;
            // r^2 = (h/2)^2 (tx^2 + ty^2); the integer key is exact
            let key = (tx * tx + ty * ty) as u64;
            let r = 0.5 * h * (key as f64).sqrt();
            if r > a {
                continue;
            }
            let profile = cache.entry(key).or_insert_with(|| basis.radial_profile(r));
            let len = (key as f64).sqrt();
            let unit = Complex64::new(tx as f64 / len, ty as f64 / len);
            values[iy * grid + ix] = synthesize_from_profile(c, profile, unit);
        }
    }
    DiskFunction::from_samples(a, a, grid, grid, values)
}

/// `C'_{n,m} = e^{-i m alpha} C_{n,m}`, the coefficients of `f` rotated by `alpha`.
pub fn rotate_coefficients(c: &CoefficientMatrix, alpha: f64) -> CoefficientMatrix {
    let mut out = c.clone();
    for (i, (_, m, v)) in c.iter().enumerate() {
        out.entries[i] = v * Complex64::from_polar(1.0, -(m as f64) * alpha);
    }
    out
}

/// Outcome of fitting one weight constant against the quadrature oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct Calibration {
    pub condition: BoundaryCondition,
    /// Mean of the oracle-to-shape ratios.
    pub constant: f64,
    /// Largest relative deviation of a single ratio from the mean.
    pub residual: f64,
    /// Probes with a usable (non-vanishing) shape.
    pub probes: usize,
}

/// Radial indices probed by [`calibrate`].
pub const PROBE_RADIAL: [u32; 5] = [1, 2, 3, 4, 5];
/// Angular orders probed by [`calibrate`].
pub const PROBE_ANGULAR: [i32; 5] = [-2, -1, 0, 1, 3];
/// Lattice points probed by [`calibrate`].
pub const PROBE_LATTICE: [LatticePoint; 9] = [
    (1, 0),
    (0, 1),
    (1, 1),
    (2, -1),
    (-3, 1),
    (2, 3),
    (-4, -2),
    (5, 0),
    (1, -6),
];

/// `(1 / 4a^2) int_0^a int_0^{2 pi} e^{pi i s u.k / a} conj(Psi_{nm}) s ds dtheta`,
/// adaptive in `s`, trapezoid in `theta`.
pub fn oracle_weight(k: LatticePoint, n: u32, m: i32, basis: &Basis) -> Result<Complex64> {
    basis.spec().check_index(n, m)?;
    let a = basis.spec().radius;
    let nt = 512;
    let dtheta = 2.0 * PI / nt as f64;
    let kk = (k.0 as f64, k.1 as f64);
    let proj: Vec<f64> = (0..nt)
        .map(|j| {
            let (s, c) = (j as f64 * dtheta).sin_cos();
            kk.0 * c + kk.1 * s
        })
        .collect();
    let harmonics: Vec<Complex64> = (0..nt)
        .map(|j| Complex64::from_polar(1.0, -(m as f64) * j as f64 * dtheta))
        .collect();
    let integrand = |s: f64| -> Complex64 {
        let mut ang = ComplexNeumaier::default();
        for j in 0..nt {
            ang.add(Complex64::from_polar(1.0, PI * s * proj[j] / a) * harmonics[j]);
        }
        let radial = basis.radial(n, m, s.min(a)).unwrap_or(0.0);
        ang.value() * (dtheta * radial * s / (2.0 * PI).sqrt())
    };
    let w = quadrature::adaptive_complex(integrand, 0.0, a, 1e-15, 1e-13);
    Ok(w / (4.0 * a * a))
}

/// Fits the weight constant over the probe set and reports its spread.
pub fn calibrate(condition: BoundaryCondition, radius: f64) -> Result<Calibration> {
    let spec = BasisSpec::new(radius, condition, 3, 5, 8)?;
    let basis = Basis::new(spec)?;
    let mut ratios = Vec::new();
    for &n in &PROBE_RADIAL {
        for &m in &PROBE_ANGULAR {
            for &k in &PROBE_LATTICE {
                let s = (k.0 * k.0 + k.1 * k.1) as u64;
                let row = bessel::eval_j_orders(m.unsigned_abs() + 1, PI * (s as f64).sqrt())?;
                let shape = radial_shape(&basis, n, m.unsigned_abs(), s, &row).map_err(|gap| {
                    Error::NearSingular {
                        site: GuardSite { n, m, k: Some(k) },
                        gap,
                    }
                })?;
                let mut powers = Vec::new();
                phase_powers(k, m.unsigned_abs(), &mut powers);
                let shape = signed_phase(&powers, m) * shape;
                let oracle = oracle_weight(k, n, m, &basis)?;
                // near-zero shapes carry no information about the constant
                if shape.norm() < 1e-6 {
                    continue;
                }
                ratios.push(oracle / shape);
            }
        }
    }
    if ratios.is_empty() {
        return Err(Error::Consistency("no usable calibration probes".into()));
    }
    let mean = ratios.iter().map(|r| r.re).sum::<f64>() / ratios.len() as f64;
    let residual = ratios
        .iter()
        .map(|r| (r - mean).norm() / mean.abs())
        .fold(0.0, f64::max);
    Ok(Calibration {
        condition,
        constant: mean,
        residual,
        probes: ratios.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis(bc: BoundaryCondition, cutoff: u32) -> Basis {
        Basis::new(BasisSpec::new(1.0, bc, 4, 4, cutoff).unwrap()).unwrap()
    }

    #[test]
    fn weights_vanish_at_origin_for_nonzero_order() {
        for bc in BoundaryCondition::ALL {
            let b = basis(bc, 8);
            for m in [-3, -1, 1, 4] {
                assert_eq!(spectral_weight((0, 0), 2, m, &b).unwrap(), Complex64::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn weight_at_origin_for_zero_value() {
        let b = basis(BoundaryCondition::ZeroValue, 8);
        for n in 1..=4 {
            let z = b.zero(n, 0);
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            let want = WEIGHT_CONSTANT_ZERO * sign * z / (z * z);
            let got = spectral_weight((0, 0), n, 0, &b).unwrap();
            assert!((got.re - want).abs() < 1e-15 && got.im == 0.0);
        }
    }

    #[test]
    fn weight_reflection_identity() {
        for bc in BoundaryCondition::ALL {
            let b = basis(bc, 8);
            for m in -4..=4 {
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                let w = spectral_weight((3, -2), 2, m, &b).unwrap();
                let v = spectral_weight((-3, 2), 2, m, &b).unwrap();
                assert!((v - w * sign).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn frozen_constants_match_fit() {
        for bc in BoundaryCondition::ALL {
            let cal = calibrate(bc, 1.0).unwrap();
            assert!(cal.residual < 1e-6, "{bc}: {cal:?}");
            assert!((cal.constant - weight_constant(bc)).abs() < 1e-9 * cal.constant.abs());
        }
    }

    #[test]
    fn oracle_agrees_with_closed_weight_for_other_radius() {
        let b = Basis::new(BasisSpec::new(2.5, BoundaryCondition::Derivative, 2, 3, 8).unwrap())
            .unwrap();
        for &(n, m, k) in &[(1, 0, (1, 2)), (2, -2, (3, 0)), (3, 1, (-1, -1))] {
            let w = spectral_weight(k, n, m, &b).unwrap();
            let o = oracle_weight(k, n, m, &b).unwrap();
            assert!((w - o).norm() < 1e-10 * o.norm().max(1e-3), "{n} {m} {k:?}");
        }
    }

    #[test]
    fn shells_partition_the_window() {
        let shells = LatticeShells::new(1).unwrap();
        assert_eq!(shells.radii(), vec![0.0, 1.0, 2f64.sqrt()]);
        assert_eq!(shells.shell(1).unwrap().len(), 4);
        let big = LatticeShells::new(6).unwrap();
        assert_eq!(big.shell(25).unwrap().len(), 12);
        let total: usize = big.iter().map(|(_, p)| p.len()).sum();
        assert_eq!(total, 13 * 13);
    }

    #[test]
    fn rotation_by_full_turn() {
        let spec = BasisSpec::new(1.0, BoundaryCondition::ZeroValue, 3, 2, 8).unwrap();
        let mut c = CoefficientMatrix::zeros(spec);
        c.set(1, 2, Complex64::new(0.3, -1.0));
        c.set(2, -3, Complex64::new(2.0, 0.5));
        assert_eq!(rotate_coefficients(&c, 0.0), c);
        let full = rotate_coefficients(&c, 2.0 * PI);
        assert!(full.max_abs_diff(&c).unwrap() < 1e-12);
    }

    #[test]
    fn unit_coefficient_synthesizes_basis_element() {
        let b = basis(BoundaryCondition::Derivative, 8);
        let mut c = CoefficientMatrix::zeros(*b.spec());
        c.set(2, -1, Complex64::new(1.0, 0.0));
        for &(r, t) in &[(0.0, 0.0), (0.4, 1.0), (1.0, -2.0)] {
            let got = synthesize(&c, &b, r, t).unwrap();
            let want = b.eval(2, -1, r, t).unwrap();
            assert!((got - want).norm() < 1e-14);
        }
        assert!(synthesize(&c, &b, 1.5, 0.0).is_err());
    }
}
