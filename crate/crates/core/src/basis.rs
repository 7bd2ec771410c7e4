//! Eigenvalues, normalisation constants, radial functions and polar
//! harmonics on a disk of radius `a`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::bessel::{self, BoundaryCondition, ZeroTable};
use crate::error::{Error, Result};

/// Switch to the confluent Lommel form when `|alpha - beta| * a` drops below this.
pub const LOMMEL_CONFLUENT: f64 = 1e-6;

/// Radius, boundary condition and truncation of a Fourier-Bessel basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisSpec {
    pub radius: f64,
    pub condition: BoundaryCondition,
    /// Largest angular order `M`; indices run over `m in -M..=M`.
    pub max_angular: u32,
    /// Largest radial index `N`; indices run over `n in 1..=N`.
    pub max_radial: u32,
    /// Lattice cutoff `K` for spectral sums over `[-K, K]^2`.
    pub cutoff: u32,
}

impl BasisSpec {
    pub fn new(
        radius: f64,
        condition: BoundaryCondition,
        max_angular: u32,
        max_radial: u32,
        cutoff: u32,
    ) -> Result<Self> {
        let spec = BasisSpec {
            radius,
            condition,
            max_angular,
            max_radial,
            cutoff,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return Err(Error::invalid("a", format!("radius must be positive, got {}", self.radius)));
        }
        if self.max_radial == 0 {
            return Err(Error::invalid("N", "must be at least 1"));
        }
        if self.cutoff == 0 {
            return Err(Error::invalid("K", "must be at least 1"));
        }
        // derivative evaluation needs one order of headroom
        if self.max_angular >= bessel::MAX_ORDER {
            return Err(Error::UnsupportedOrder {
                order: self.max_angular as i64,
                max: bessel::MAX_ORDER - 1,
            });
        }
        Ok(())
    }

    /// Same spec at another radius.
    pub fn with_radius(&self, radius: f64) -> Self {
        BasisSpec { radius, ..*self }
    }

    pub fn contains(&self, n: u32, m: i32) -> bool {
        n >= 1 && n <= self.max_radial && m.unsigned_abs() <= self.max_angular
    }

    /// Number of `(n, m)` pairs.
    pub fn len(&self) -> usize {
        self.max_radial as usize * self.width()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of angular orders, `2M + 1`.
    pub fn width(&self) -> usize {
        2 * self.max_angular as usize + 1
    }

    pub(crate) fn check_index(&self, n: u32, m: i32) -> Result<()> {
        if self.contains(n, m) {
            Ok(())
        } else {
            Err(Error::invalid(
                "index",
                format!(
                    "(n={n}, m={m}) outside 1..={} x -{}..={}",
                    self.max_radial, self.max_angular, self.max_angular
                ),
            ))
        }
    }
}

/// `N_n^{(m)}(a)` for `n in 1..=N`, `|m| <= M`, stored as the `a = 1`
/// values `D_n^{(m)}` together with the radius.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizationTable {
    radius: f64,
    max_angular: u32,
    max_radial: u32,
    unit: Vec<f64>,
}

impl NormalizationTable {
    /// `D_n^{(m)} = N_n^{(m)}(1)`.
    pub fn unit(&self, n: u32, m: i32) -> f64 {
        let row = m.unsigned_abs() as usize;
        self.unit[row * self.max_radial as usize + (n as usize - 1)]
    }

    /// `N_n^{(m)}(a) = a^2 D_n^{(m)}`.
    pub fn get(&self, n: u32, m: i32) -> f64 {
        self.radius * self.radius * self.unit(n, m)
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }
}

/// `D_n^{(m)}` from the zero `z = z_{mn}`.
fn unit_normalization(condition: BoundaryCondition, m: u32, n: u32, z: f64) -> Result<f64> {
    match condition {
        BoundaryCondition::ZeroValue => {
            let j = bessel::eval_j(m as i32 + 1, z)?;
            Ok(0.5 * j * j)
        }
        BoundaryCondition::Derivative => {
            if m == 0 && n == 1 {
                return Ok(0.5);
            }
            if z == 0.0 {
                return Err(Error::Consistency(format!(
                    "derivative eigenvalue z=0 at (n={n}, m={m})"
                )));
            }
            let j = bessel::eval_j(m as i32, z)?;
            let ratio = m as f64 / z;
            Ok(0.5 * (1.0 - ratio * ratio) * j * j)
        }
    }
}

/// `N_n^{(m)}(a)` computed from scratch.
pub fn normalization(m: i32, n: u32, spec: &BasisSpec) -> Result<f64> {
    spec.validate()?;
    spec.check_index(n, m)?;
    let order = m.unsigned_abs();
    let table = bessel::find_zeros(order as i32, n as usize, spec.condition)?;
    let z = table.zeros()[n as usize - 1];
    Ok(spec.radius * spec.radius * unit_normalization(spec.condition, order, n, z)?)
}

/// Zero tables and normalisation constants for one [`BasisSpec`].
#[derive(Debug, Clone)]
pub struct Basis {
    spec: BasisSpec,
    zeros: Vec<ZeroTable>,
    norms: NormalizationTable,
}

impl Basis {
    pub fn new(spec: BasisSpec) -> Result<Self> {
        spec.validate()?;
        let count = spec.max_radial as usize;
        let zeros = (0..=spec.max_angular)
            .map(|m| bessel::find_zeros(m as i32, count, spec.condition))
            .collect::<Result<Vec<_>>>()?;
        Self::from_tables(spec, zeros)
    }

    /// Builds from precomputed tables for orders `0..=M` (e.g. a cache).
    pub fn from_tables(spec: BasisSpec, zeros: Vec<ZeroTable>) -> Result<Self> {
        spec.validate()?;
        if zeros.len() != spec.max_angular as usize + 1 {
            return Err(Error::Shape(format!(
                "expected {} zero tables, got {}",
                spec.max_angular + 1,
                zeros.len()
            )));
        }
        let mut unit = Vec::with_capacity(spec.len());
        for (m, table) in zeros.iter().enumerate() {
            if table.order() != m as i32
                || table.condition() != spec.condition
                || table.len() < spec.max_radial as usize
            {
                return Err(Error::Shape(format!("zero table for m={m} does not match the spec")));
            }
            for n in 1..=spec.max_radial {
                let z = table.zeros()[n as usize - 1];
                unit.push(unit_normalization(spec.condition, m as u32, n, z)?);
            }
        }
        let norms = NormalizationTable {
            radius: spec.radius,
            max_angular: spec.max_angular,
            max_radial: spec.max_radial,
            unit,
        };
        Ok(Basis { spec, zeros, norms })
    }

    pub fn spec(&self) -> &BasisSpec {
        &self.spec
    }

    pub fn normalizations(&self) -> &NormalizationTable {
        &self.norms
    }

    pub fn zero_table(&self, m: i32) -> &ZeroTable {
        &self.zeros[m.unsigned_abs() as usize]
    }

    /// `z_{mn}`; negative orders share the table of `|m|`.
    pub fn zero(&self, n: u32, m: i32) -> f64 {
        self.zeros[m.unsigned_abs() as usize].zeros()[n as usize - 1]
    }

    /// `rho_{nm} = z_{mn} / a`.
    pub fn rho(&self, n: u32, m: i32) -> f64 {
        self.zero(n, m) / self.spec.radius
    }

    pub fn norm(&self, n: u32, m: i32) -> f64 {
        self.norms.get(n, m)
    }

    fn check_r(&self, r: f64) -> Result<()> {
        let a = self.spec.radius;
        if r.is_finite() && (0.0..=a * (1.0 + 1e-12)).contains(&r) {
            Ok(())
        } else {
            Err(Error::Domain {
                what: "r",
                value: r,
                lo: 0.0,
                hi: a,
            })
        }
    }

    /// `N^{-1/2} J_m(rho_{nm} r)` with the signed `J_m`.
    pub fn radial(&self, n: u32, m: i32, r: f64) -> Result<f64> {
        self.spec.check_index(n, m)?;
        self.check_r(r)?;
        Ok(bessel::eval_j(m, self.rho(n, m) * r)? / self.norm(n, m).sqrt())
    }

    /// `Psi_{nm}(r, theta) = radial(n, m, r) e^{i m theta} / sqrt(2 pi)`.
    pub fn eval(&self, n: u32, m: i32, r: f64, theta: f64) -> Result<Complex64> {
        let radial = self.radial(n, m, r)?;
        Ok(Complex64::from_polar(radial / (2.0 * PI).sqrt(), m as f64 * theta))
    }

    /// Radial values for every `(n, m)` at one radius, laid out `[|m|][n-1]`
    /// for `|m| in 0..=M`. Negative orders pick up `(-1)^m`.
    pub(crate) fn radial_profile(&self, r: f64) -> Vec<f64> {
        let nn = self.spec.max_radial as usize;
        let mm = self.spec.max_angular as usize;
        let mut out = vec![0.0; (mm + 1) * nn];
        for n in 1..=nn {
            for m in 0..=mm {
                let x = self.rho(n as u32, m as i32) * r;
                let j = bessel::eval_j(m as i32, x).expect("order validated by spec");
                out[m * nn + n - 1] = j / self.norm(n as u32, m as i32).sqrt();
            }
        }
        out
    }
}

/// `radial(n, m, r)` without a prebuilt [`Basis`].
pub fn eval_radial(m: i32, n: u32, r: f64, spec: &BasisSpec) -> Result<f64> {
    single(m, n, spec)?.radial(n, m, r)
}

/// `Psi_{nm}(r, theta)` without a prebuilt [`Basis`].
pub fn eval_basis(m: i32, n: u32, r: f64, theta: f64, spec: &BasisSpec) -> Result<Complex64> {
    single(m, n, spec)?.eval(n, m, r, theta)
}

fn single(m: i32, n: u32, spec: &BasisSpec) -> Result<Basis> {
    spec.check_index(n, m)?;
    let narrow = BasisSpec {
        max_angular: m.unsigned_abs(),
        max_radial: n,
        ..*spec
    };
    let zeros = (0..=narrow.max_angular)
        .map(|k| bessel::find_zeros(k as i32, n as usize, spec.condition))
        .collect::<Result<Vec<_>>>()?;
    Basis::from_tables(narrow, zeros)
}

/// `int_0^a J_m(alpha r) J_m(beta r) r dr` in closed form.
pub fn lommel_integral(m: i32, alpha: f64, beta: f64, a: f64) -> Result<f64> {
    for (what, v) in [("alpha", alpha), ("beta", beta)] {
        if !(v.is_finite() && v >= 0.0) {
            return Err(Error::Domain {
                what,
                value: v,
                lo: 0.0,
                hi: f64::INFINITY,
            });
        }
    }
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::invalid("a", "radius must be positive"));
    }
    if (alpha - beta).abs() * a < LOMMEL_CONFLUENT {
        let gamma = 0.5 * (alpha + beta);
        let x = gamma * a;
        if x == 0.0 {
            return Ok(if m == 0 { 0.5 * a * a } else { 0.0 });
        }
        let j = bessel::eval_j(m, x)?;
        let jp = bessel::eval_j_prime(m, x)?;
        let ratio = m as f64 / x;
        return Ok(0.5 * a * a * (jp * jp + (1.0 - ratio * ratio) * j * j));
    }
    let ja = bessel::eval_j(m, alpha * a)?;
    let jb = bessel::eval_j(m, beta * a)?;
    let dja = bessel::eval_j_prime(m, alpha * a)?;
    let djb = bessel::eval_j_prime(m, beta * a)?;
    Ok(a * (beta * ja * djb - alpha * jb * dja) / (alpha * alpha - beta * beta))
}
