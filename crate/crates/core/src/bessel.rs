//! Bessel functions of the first kind, integer order, real argument, and
//! certified zero tables for the two boundary conditions.

use std::fmt;
use std::io::{BufRead, Write};
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported |order|.
pub const MAX_ORDER: u32 = 128;

/// Scan step for bracketing roots.
pub const SCAN_STEP: f64 = 1e-3;
/// Left end of the root scan; keeps `x = 0` out of the sign test.
pub const SCAN_START: f64 = 1e-9;
/// Absolute tolerance recorded with every zero table.
pub const ROOT_TOL: f64 = 1e-12;

/// Which eigenvalue condition selects the radial spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundaryCondition {
    /// `J_m(z) = 0`: basis vanishes on the rim.
    ZeroValue,
    /// `J_m'(z) = 0`: basis has zero normal derivative on the rim.
    Derivative,
}

impl BoundaryCondition {
    pub const ALL: [BoundaryCondition; 2] =
        [BoundaryCondition::ZeroValue, BoundaryCondition::Derivative];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundaryCondition::ZeroValue => "zero",
            BoundaryCondition::Derivative => "derivative",
        }
    }
}

impl fmt::Display for BoundaryCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundaryCondition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "zero" | "zbc" | "zero-value" | "dirichlet" => Ok(BoundaryCondition::ZeroValue),
            "derivative" | "dbc" | "neumann" => Ok(BoundaryCondition::Derivative),
            other => Err(Error::invalid(
                "bc",
                format!("expected `zero` or `derivative`, got `{other}`"),
            )),
        }
    }
}

fn check_order(m: i64) -> Result<u32> {
    let abs = m.unsigned_abs();
    if abs > MAX_ORDER as u64 {
        return Err(Error::UnsupportedOrder {
            order: m,
            max: MAX_ORDER,
        });
    }
    Ok(abs as u32)
}

fn check_arg(x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "x",
            value: x,
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
        })
    }
}

#[inline]
fn parity(m: u32) -> f64 {
    if m.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// True when the ascending series has no growing terms: `(x/2)^2 <= m + 1`.
#[inline]
fn series_is_stable(m: u32, x: f64) -> bool {
    0.25 * x * x <= m as f64 + 1.0
}

fn series(m: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if m == 0 { 1.0 } else { 0.0 };
    }
    let half = 0.5 * x;
    // (x/2)^m / m!, built multiplicatively so tiny leading terms stay finite
    let mut lead = 1.0;
    for k in 1..=m {
        lead *= half / k as f64;
    }
    let q = -half * half;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200u32 {
        term *= q / (k as f64 * (k + m) as f64);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    lead * sum
}

/// Miller backward recurrence, normalised by `J_0 + 2 sum J_{2k} = 1`.
/// Returns `J_0(x) ..= J_top(x)` for `x > 0`.
fn miller(top: u32, x: f64) -> Vec<f64> {
    debug_assert!(x > 0.0);
    let scale_ref = (top as f64).max(x);
    let mut start = (scale_ref + 25.0 + 5.0 * scale_ref.sqrt()).ceil() as u32;
    start += start % 2;
    let mut out = vec![0.0; top as usize + 1];
    let mut next = 0.0; // v_{k+1}
    let mut cur = 1e-300; // v_k
    let mut norm = 0.0;
    let two_over_x = 2.0 / x;
    let mut k = start;
    loop {
        if k <= top {
            out[k as usize] = cur;
        }
        if k.is_multiple_of(2) {
            norm += if k == 0 { cur } else { 2.0 * cur };
        }
        if k == 0 {
            break;
        }
        let prev = k as f64 * two_over_x * cur - next;
        next = cur;
        cur = prev;
        k -= 1;
        if cur.abs() > 1e250 {
            let s = 1e-250;
            cur *= s;
            next *= s;
            norm *= s;
            for v in out.iter_mut().skip(k as usize + 1) {
                *v *= s;
            }
        }
    }
    for v in &mut out {
        *v /= norm;
    }
    out
}

fn j_nonneg(m: u32, x: f64) -> f64 {
    if series_is_stable(m, x) {
        series(m, x)
    } else {
        miller(m, x)[m as usize]
    }
}

/// `J_m(x)` for integer `m` and finite real `x`.
///
/// Uses the ascending series while its terms do not grow and Miller's
/// backward recurrence otherwise. Negative orders and arguments follow
/// `J_{-m}(x) = (-1)^m J_m(x)` and `J_m(-x) = (-1)^m J_m(x)`.
pub fn eval_j(m: i32, x: f64) -> Result<f64> {
    let order = check_order(m as i64)?;
    check_arg(x)?;
    let mut v = j_nonneg(order, x.abs());
    if m < 0 {
        v *= parity(order);
    }
    if x < 0.0 {
        v *= parity(order);
    }
    Ok(v)
}

/// `J_m'(x)` via `J_0' = -J_1` and `J_m' = (J_{m-1} - J_{m+1}) / 2`.
pub fn eval_j_prime(m: i32, x: f64) -> Result<f64> {
    let order = check_order(m as i64)?;
    check_order(order as i64 + 1)?;
    check_arg(x)?;
    let ax = x.abs();
    let d = if order == 0 {
        -j_nonneg(1, ax)
    } else if series_is_stable(order - 1, ax) {
        0.5 * (series(order - 1, ax) - series(order + 1, ax))
    } else {
        let js = miller(order + 1, ax);
        0.5 * (js[order as usize - 1] - js[order as usize + 1])
    };
    // J_m' has parity opposite to J_m in x
    let mut v = d;
    if m < 0 {
        v *= parity(order);
    }
    if x < 0.0 {
        v *= -parity(order);
    }
    Ok(v)
}

/// `J_0(x), ..., J_top(x)` for `x >= 0` in a single recurrence sweep.
pub fn eval_j_orders(top: u32, x: f64) -> Result<Vec<f64>> {
    check_order(top as i64)?;
    check_arg(x)?;
    if x < 0.0 {
        return Err(Error::Domain {
            what: "x",
            value: x,
            lo: 0.0,
            hi: f64::INFINITY,
        });
    }
    if x == 0.0 || series_is_stable(0, x) {
        return Ok((0..=top).map(|m| series(m, x)).collect());
    }
    // orders past the stability threshold of the series come from Miller
    let mut out = miller(top, x);
    for (m, v) in out.iter_mut().enumerate() {
        if series_is_stable(m as u32, x) {
            *v = series(m as u32, x);
        }
    }
    Ok(out)
}

/// Ascending zeros of `J_m` or `J_m'` for one order.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTable {
    order: i32,
    condition: BoundaryCondition,
    zeros: Vec<f64>,
    tol: f64,
}

impl ZeroTable {
    pub fn order(&self) -> i32 {
        self.order
    }

    pub fn condition(&self) -> BoundaryCondition {
        self.condition
    }

    pub fn zeros(&self) -> &[f64] {
        &self.zeros
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    /// `z_{mn}` with 1-based `n`.
    pub fn get(&self, n: u32) -> Option<f64> {
        (n as usize).checked_sub(1).and_then(|i| self.zeros.get(i).copied())
    }
}

fn boundary_fn(order: u32, condition: BoundaryCondition, x: f64) -> f64 {
    match condition {
        BoundaryCondition::ZeroValue => j_nonneg(order, x),
        BoundaryCondition::Derivative => {
            if order == 0 {
                -j_nonneg(1, x)
            } else if series_is_stable(order - 1, x) {
                0.5 * (series(order - 1, x) - series(order + 1, x))
            } else {
                let js = miller(order + 1, x);
                0.5 * (js[order as usize - 1] - js[order as usize + 1])
            }
        }
    }
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, mut flo: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= 1e-15 * hi.max(1.0) {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// First `count` admissible zeros of `J_m` (zero-value) or `J_m'` (derivative).
///
/// Roots are bracketed on a uniform `SCAN_STEP` grid starting at
/// `SCAN_START` and refined by bisection. For the derivative condition with
/// `m = 0` the constant mode `z = 0` is the first entry; for `m >= 1` the
/// origin is never counted.
pub fn find_zeros(m: i32, count: usize, condition: BoundaryCondition) -> Result<ZeroTable> {
    if count == 0 {
        return Err(Error::invalid("count", "must be at least 1"));
    }
    let order = check_order(m as i64)?;
    if condition == BoundaryCondition::Derivative {
        check_order(order as i64 + 1)?;
    }
    let f = |x: f64| boundary_fn(order, condition, x);
    let mut zeros = Vec::with_capacity(count);
    if condition == BoundaryCondition::Derivative && order == 0 {
        zeros.push(0.0);
    }
    let first_window = order as f64 + 4.0 * (order as f64 + 1.0).cbrt() + 3.0 * std::f64::consts::PI;
    let spacing_window = 3.0 * std::f64::consts::PI;

    let mut step_index: u64 = 0;
    let mut x_prev = SCAN_START;
    let mut f_prev = f(x_prev);
    while zeros.len() < count {
        let anchor = zeros.last().copied().filter(|&z| z > 0.0);
        let limit = match anchor {
            Some(z) => z + spacing_window,
            None => first_window,
        };
        step_index += 1;
        let x = SCAN_START + step_index as f64 * SCAN_STEP;
        if x > limit {
            return Err(Error::RootScan { order: m, limit });
        }
        let fx = f(x);
        if fx == 0.0 {
            zeros.push(x);
            // restart the sign tracking just past the exact hit
            step_index += 1;
            x_prev = SCAN_START + step_index as f64 * SCAN_STEP;
            f_prev = f(x_prev);
            continue;
        }
        if (fx < 0.0) != (f_prev < 0.0) {
            zeros.push(bisect(f, x_prev, x, f_prev));
        }
        x_prev = x;
        f_prev = fx;
    }
    Ok(ZeroTable {
        order: m,
        condition,
        zeros,
        tol: ROOT_TOL,
    })
}

/// Writes tables as CSV rows `m,condition,n,z` (17 significant digits).
pub fn write_zero_csv<W: Write>(mut w: W, tables: &[ZeroTable]) -> std::io::Result<()> {
    writeln!(w, "m,condition,n,z")?;
    for t in tables {
        for (i, z) in t.zeros.iter().enumerate() {
            writeln!(w, "{},{},{},{:.16e}", t.order, t.condition, i + 1, z)?;
        }
    }
    Ok(())
}

/// Reads the CSV produced by [`write_zero_csv`], grouping rows by `(m, condition)`.
pub fn read_zero_csv<R: BufRead>(r: R) -> Result<Vec<ZeroTable>> {
    let mut tables: Vec<ZeroTable> = Vec::new();
    for (lineno, line) in r.lines().enumerate() {
        let line = line.map_err(|e| Error::parse("zero table", e.to_string()))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || (lineno == 0 && line.starts_with('m')) {
            continue;
        }
        let ctx = || format!("zero table line {}", lineno + 1);
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(Error::parse(ctx(), "expected 4 fields `m,condition,n,z`"));
        }
        let m: i32 = fields[0]
            .parse()
            .map_err(|_| Error::parse(ctx(), "field `m` is not an integer"))?;
        let condition: BoundaryCondition = fields[1]
            .parse()
            .map_err(|_| Error::parse(ctx(), "field `condition` is not a boundary condition"))?;
        let n: usize = fields[2]
            .parse()
            .map_err(|_| Error::parse(ctx(), "field `n` is not an integer"))?;
        let z: f64 = fields[3]
            .parse()
            .map_err(|_| Error::parse(ctx(), "field `z` is not a number"))?;
        let pos = tables
            .iter()
            .position(|t| t.order == m && t.condition == condition);
        let table = match pos {
            Some(p) => &mut tables[p],
            None => {
                tables.push(ZeroTable {
                    order: m,
                    condition,
                    zeros: Vec::new(),
                    tol: ROOT_TOL,
                });
                tables.last_mut().expect("just pushed")
            }
        };
        if n != table.zeros.len() + 1 {
            return Err(Error::parse(ctx(), "field `n` out of sequence"));
        }
        if table.zeros.last().is_some_and(|&last| z <= last) || z < 0.0 {
            return Err(Error::parse(ctx(), "field `z` breaks the ascending order"));
        }
        table.zeros.push(z);
    }
    Ok(tables)
}

/// Looks up a table in `dir`, computing and storing it when the cached copy
/// is missing or too short.
pub fn cached_zeros(
    dir: &Path,
    m: i32,
    count: usize,
    condition: BoundaryCondition,
) -> Result<ZeroTable> {
    let path = dir.join(format!("zeros_{}_m{}.csv", condition, m));
    if let Ok(file) = std::fs::File::open(&path) {
        if let Ok(tables) = read_zero_csv(std::io::BufReader::new(file)) {
            if let Some(t) = tables
                .into_iter()
                .find(|t| t.order == m && t.condition == condition && t.len() >= count)
            {
                let mut t = t;
                t.zeros.truncate(count);
                return Ok(t);
            }
        }
    }
    let table = find_zeros(m, count, condition)?;
    let io_err = |source| Error::Io {
        path: path.display().to_string(),
        source,
    };
    std::fs::create_dir_all(dir).map_err(io_err)?;
    let tmp = dir.join(format!(".zeros_{}_m{}.{}.tmp", condition, m, std::process::id()));
    {
        let file = std::fs::File::create(&tmp).map_err(io_err)?;
        write_zero_csv(std::io::BufWriter::new(file), std::slice::from_ref(&table))
            .map_err(io_err)?;
    }
    std::fs::rename(&tmp, &path).map_err(io_err)?;
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    // reference values at 30 digits
    const REFERENCE: [(i32, f64, f64); 20] = [
        (0, 0.5, 0.938_469_807_240_812_9),
        (0, 10.0, -0.245_935_764_451_348_34),
        (1, 3.0, 0.339_058_958_525_936_46),
        (2, 0.1, 0.001_248_958_658_799_919),
        (3, 25.0, 0.108_343_081_061_508_9),
        (5, 7.5, 0.283_473_905_162_550_46),
        (8, 40.0, -0.086_308_315_245_317_33),
        (12, 12.0, 0.195_280_182_738_832_24),
        (20, 5.0, 2.770_330_052_128_941_7e-11),
        (20, 60.0, 0.102_660_205_578_763_29),
        (30, 31.0, 0.183_087_226_192_138),
        (40, 150.0, -0.053_178_029_743_433_99),
        (64, 70.0, 0.099_019_233_739_506_27),
        (64, 200.0, -0.034_059_764_963_014_58),
        (100, 120.0, 0.075_737_179_130_010_7),
        (128, 199.0, -0.040_879_151_951_842_46),
        (1, 199.5, -0.040_371_312_360_519_67),
        (0, 180.25, -0.054_895_897_533_535_15),
        (7, 0.001, 1.550_099_157_908_607e-27),
        (50, 10.0, 1.784_513_607_871_595_3e-30),
    ];

    #[test]
    fn matches_reference_values() {
        for &(m, x, want) in &REFERENCE {
            let got = eval_j(m, x).unwrap();
            let rel = (got - want).abs() / want.abs();
            assert!(rel <= 1e-12, "J_{m}({x}) = {got}, want {want}, rel {rel:e}");
        }
    }

    #[test]
    fn values_at_origin() {
        assert_eq!(eval_j(0, 0.0).unwrap(), 1.0);
        assert_eq!(eval_j(1, 0.0).unwrap(), 0.0);
        assert_eq!(eval_j(-3, 0.0).unwrap(), 0.0);
        assert_eq!(eval_j_prime(0, 0.0).unwrap(), 0.0);
        assert_eq!(eval_j_prime(1, 0.0).unwrap(), 0.5);
        assert_eq!(eval_j_prime(2, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn first_zero_of_j0() {
        let v = eval_j(0, 2.404_825_557_695_773).unwrap();
        assert!(v.abs() < 1e-12, "{v}");
    }

    #[test]
    fn negative_order_reflection() {
        for m in 1..10 {
            for &x in &[0.3, 4.0, 17.5, 80.0] {
                let pos = eval_j(m, x).unwrap();
                let neg = eval_j(-m, x).unwrap();
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                assert_eq!(neg, sign * pos);
            }
        }
    }

    #[test]
    fn order_limit_is_enforced() {
        assert!(matches!(
            eval_j(MAX_ORDER as i32 + 1, 1.0),
            Err(Error::UnsupportedOrder { .. })
        ));
        assert!(eval_j(64, 10.0).is_ok());
        assert!(eval_j(0, f64::NAN).is_err());
    }

    #[test]
    fn all_orders_sweep_matches_single_evaluation() {
        for &x in &[0.5, 3.0, 11.0, 45.0, 140.0] {
            let all = eval_j_orders(20, x).unwrap();
            for (m, v) in all.iter().enumerate() {
                let single = eval_j(m as i32, x).unwrap();
                assert!((v - single).abs() <= 1e-14 * (1.0 + single.abs()), "m={m} x={x}");
            }
        }
    }

    #[test]
    fn derivative_zero_table_for_order_zero_starts_at_origin() {
        let t = find_zeros(0, 2, BoundaryCondition::Derivative).unwrap();
        assert_eq!(t.zeros()[0], 0.0);
        assert!((t.zeros()[1] - 3.831_705_970_207_512).abs() < 1e-12);
    }

    #[test]
    fn zero_count_must_be_positive() {
        assert!(find_zeros(0, 0, BoundaryCondition::ZeroValue).is_err());
    }

    #[test]
    fn derivative_tables_skip_origin_for_positive_order() {
        let t = find_zeros(2, 3, BoundaryCondition::Derivative).unwrap();
        assert!(t.zeros()[0] > 3.0);
        assert!((t.zeros()[0] - 3.054_236_928_227_140).abs() < 1e-12);
    }

    #[test]
    fn csv_round_trip() {
        let tables = vec![
            find_zeros(0, 4, BoundaryCondition::ZeroValue).unwrap(),
            find_zeros(1, 3, BoundaryCondition::Derivative).unwrap(),
        ];
        let mut buf = Vec::new();
        write_zero_csv(&mut buf, &tables).unwrap();
        let back = read_zero_csv(buf.as_slice()).unwrap();
        assert_eq!(back, tables);
    }

    #[test]
    fn csv_rejects_descending_rows() {
        let text = "m,condition,n,z\n0,zero,1,5.0\n0,zero,2,2.0\n";
        assert!(read_zero_csv(text.as_bytes()).is_err());
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let a = cached_zeros(dir.path(), 3, 5, BoundaryCondition::ZeroValue).unwrap();
        let b = cached_zeros(dir.path(), 3, 4, BoundaryCondition::ZeroValue).unwrap();
        assert_eq!(&a.zeros()[..4], b.zeros());
    }
}
