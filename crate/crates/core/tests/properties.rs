//! Property tests for the invariants of each layer.

mod common;

use std::f64::consts::PI;
use std::sync::OnceLock;

use disk_harmonics::basis::{lommel_integral, Basis, BasisSpec};
use disk_harmonics::bessel::{self, BoundaryCondition};
use disk_harmonics::convolution;
use disk_harmonics::sampling::{square_fourier_coeff, DiskFunction, FourierTable};
use disk_harmonics::spectra::{self, CoefficientMatrix, LatticeShells};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::Bumps;

const GRID: usize = 64;
const CUTOFF: u32 = 16;

fn bases() -> &'static [Basis; 2] {
    static CELL: OnceLock<[Basis; 2]> = OnceLock::new();
    CELL.get_or_init(|| {
        BoundaryCondition::ALL.map(|bc| Basis::new(BasisSpec::new(1.0, bc, 4, 4, CUTOFF).unwrap()).unwrap())
    })
}

fn basis(bc: BoundaryCondition) -> &'static Basis {
    &bases()[bc as usize]
}

fn bc_strategy() -> impl Strategy<Value = BoundaryCondition> {
    prop_oneof![Just(BoundaryCondition::ZeroValue), Just(BoundaryCondition::Derivative)]
}

fn bumps(seed: u64, radius: f64) -> Bumps {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Bumps::random(&mut rng, radius, 2)
}

fn table(f: &DiskFunction) -> FourierTable {
    square_fourier_coeff(f, CUTOFF).unwrap()
}

fn close(a: &CoefficientMatrix, b: &CoefficientMatrix, tol: f64) -> bool {
    let scale = a.entries().iter().map(|v| v.norm()).fold(1e-300, f64::max);
    a.max_abs_diff(b).unwrap() <= tol * scale
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn three_term_recurrence(m in 1i32..40, x in 0.01f64..100.0) {
        let up = bessel::eval_j(m + 1, x).unwrap();
        let mid = 2.0 * m as f64 / x * bessel::eval_j(m, x).unwrap();
        let down = bessel::eval_j(m - 1, x).unwrap();
        let scale = up.abs().max(mid.abs()).max(down.abs());
        prop_assert!((up - mid + down).abs() <= 1e-12 * scale);
    }

    #[test]
    fn negative_orders_reflect(m in 0i32..30, x in 0.0f64..60.0) {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert_eq!(bessel::eval_j(-m, x).unwrap(), sign * bessel::eval_j(m, x).unwrap());
    }

    #[test]
    fn derivative_matches_neighbours(m in 0i32..30, x in 0.01f64..60.0) {
        let d = bessel::eval_j_prime(m, x).unwrap();
        let want = 0.5 * (bessel::eval_j(m - 1, x).unwrap() - bessel::eval_j(m + 1, x).unwrap());
        prop_assert!((d - want).abs() <= 1e-13);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn zeros_interlace(m in 0i32..20) {
        let bc = BoundaryCondition::ZeroValue;
        let lo = bessel::find_zeros(m, 8, bc).unwrap();
        let hi = bessel::find_zeros(m + 1, 8, bc).unwrap();
        for i in 0..7 {
            prop_assert!(lo.zeros()[i] < hi.zeros()[i]);
            prop_assert!(hi.zeros()[i] < lo.zeros()[i + 1]);
        }
    }

    #[test]
    fn zero_tables_are_prefix_stable(m in 0i32..20, bc in bc_strategy()) {
        let short = bessel::find_zeros(m, 4, bc).unwrap();
        let long = bessel::find_zeros(m, 9, bc).unwrap();
        prop_assert_eq!(short.zeros(), &long.zeros()[..4]);
        let again = bessel::find_zeros(m, 9, bc).unwrap();
        prop_assert_eq!(long.zeros(), again.zeros());
        prop_assert!(long.zeros().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn zero_csv_round_trip(m in 0i32..20, bc in bc_strategy()) {
        let t = bessel::find_zeros(m, 6, bc).unwrap();
        let mut buf = Vec::new();
        bessel::write_zero_csv(&mut buf, std::slice::from_ref(&t)).unwrap();
        let back = bessel::read_zero_csv(buf.as_slice()).unwrap();
        prop_assert_eq!(back.len(), 1);
        prop_assert_eq!(back[0].zeros(), t.zeros());
    }

    #[test]
    fn lommel_symmetric_and_continuous(m in 0i32..10, alpha in 0.1f64..25.0, beta in 0.1f64..25.0, a in 0.5f64..2.0) {
        let ab = lommel_integral(m, alpha, beta, a).unwrap();
        let ba = lommel_integral(m, beta, alpha, a).unwrap();
        prop_assert!((ab - ba).abs() <= 1e-13);
        let at = lommel_integral(m, alpha, alpha, a).unwrap();
        let near = lommel_integral(m, alpha, alpha * (1.0 + 1e-5), a).unwrap();
        prop_assert!((at - near).abs() <= 1e-4 * at.abs().max(1e-3));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn real_input_conjugate_symmetry(seed in any::<u64>(), bc in bc_strategy()) {
        let basis = basis(bc);
        let f = bumps(seed, 1.0).sample(1.0, GRID);
        let c = spectra::analyze_spectral(&table(&f), basis).unwrap();
        for n in 1..=4 {
            for m in 1..=4 {
                let s = (basis.radial(n, -m, 0.5).unwrap() / basis.radial(n, m, 0.5).unwrap()).signum();
                let diff = (c.get(n, -m) - c.get(n, m).conj() * s).norm();
                prop_assert!(diff <= 1e-12, "n={} m={} diff={}", n, m, diff);
            }
        }
    }

    #[test]
    fn rotation_composes(seed in any::<u64>(), alpha in -7.0f64..7.0, beta in -7.0f64..7.0) {
        let basis = basis(BoundaryCondition::ZeroValue);
        let f = bumps(seed, 1.0).sample(1.0, GRID);
        let c = spectra::analyze_spectral(&table(&f), basis).unwrap();
        let twice = spectra::rotate_coefficients(&spectra::rotate_coefficients(&c, alpha), beta);
        let once = spectra::rotate_coefficients(&c, alpha + beta);
        prop_assert!(close(&twice, &once, 1e-12));
        let d = convolution::rotation_descriptors(&c);
        let r = convolution::rotation_descriptors(&once);
        for (x, y) in d.iter().zip(&r) {
            prop_assert!((x - y).abs() <= 1e-14 * x.max(1e-300));
        }
    }

    #[test]
    fn quarter_turn_matches_coefficient_rotation(seed in any::<u64>(), bc in bc_strategy()) {
        let basis = basis(bc);
        let f = bumps(seed, 1.0).sample(1.0, GRID);
        let n = f.len();
        let mut values = Vec::with_capacity(n * n);
        for iy in 0..n {
            for ix in 0..n {
                values.push(f.get(iy, n - 1 - ix));
            }
        }
        let g = DiskFunction::from_samples(1.0, 1.0, f.cells(), n, values).unwrap();
        let cf = spectra::analyze_spectral(&table(&f), basis).unwrap();
        let cg = spectra::analyze_spectral(&table(&g), basis).unwrap();
        prop_assert!(close(&spectra::rotate_coefficients(&cf, PI / 2.0), &cg, 1e-10));
    }

    #[test]
    fn convolution_commutes(s1 in any::<u64>(), s2 in any::<u64>(), bc in bc_strategy()) {
        let basis = basis(bc);
        let f1 = bumps(s1, 0.5).sample(1.0, GRID);
        let f2 = bumps(s2, 0.5).sample(1.0, GRID);
        let (t1, t2) = (table(&f1), table(&f2));
        let ab = convolution::convolve_spectral(&t1, &t2, basis).unwrap();
        let ba = convolution::convolve_spectral(&t2, &t1, basis).unwrap();
        prop_assert!(close(&ab, &ba, 1e-14));
        let g12 = convolution::convolve_direct(&f1, &f2).unwrap();
        let g21 = convolution::convolve_direct(&f2, &f1).unwrap();
        let scale = common::max_abs(g12.values());
        for (x, y) in g12.values().iter().zip(g21.values()) {
            prop_assert!((x - y).norm() <= 1e-12 * scale);
        }
    }

    #[test]
    fn convolution_is_bilinear(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>(), re in -2.0f64..2.0, im in -2.0f64..2.0) {
        let basis = basis(BoundaryCondition::Derivative);
        let lambda = Complex64::new(re, im);
        let f1 = bumps(s1, 0.5).sample(1.0, GRID);
        let f2 = bumps(s2, 0.5).sample(1.0, GRID);
        let f3 = bumps(s3, 0.5).sample(1.0, GRID);
        let mixed: Vec<Complex64> = f1.values().iter().zip(f3.values()).map(|(a, b)| lambda * a + b).collect();
        let mix = DiskFunction::from_samples(1.0, 0.5, f1.cells(), f1.len(), mixed).unwrap();
        let t2 = table(&f2);
        let lhs = convolution::convolve_spectral(&table(&mix), &t2, basis).unwrap();
        let c1 = convolution::convolve_spectral(&table(&f1), &t2, basis).unwrap();
        let c3 = convolution::convolve_spectral(&table(&f3), &t2, basis).unwrap();
        let rhs: Vec<Complex64> = c1.entries().iter().zip(c3.entries()).map(|(a, b)| lambda * a + b).collect();
        let rhs = CoefficientMatrix::from_entries(*c1.spec(), c1.grid(), rhs).unwrap();
        prop_assert!(close(&lhs, &rhs, 1e-12));
    }

    #[test]
    fn autocorrelation_energy_is_positive(seed in any::<u64>(), bc in bc_strategy()) {
        let basis = basis(bc);
        let f = bumps(seed, 0.5).sample(1.0, GRID);
        let e = convolution::plancherel_spectral(&f, basis).unwrap();
        prop_assert!(e > 0.0);
        let shells = LatticeShells::new(CUTOFF).unwrap();
        let p = convolution::plancherel_polar(&f, &shells, basis).unwrap();
        prop_assert!((e - p).abs() <= 1e-12 * e);
    }

    #[test]
    fn polar_regrouping_matches(seed in any::<u64>(), bc in bc_strategy()) {
        let basis = basis(bc);
        let f = bumps(seed, 1.0).sample(1.0, GRID);
        let t = table(&f);
        let shells = LatticeShells::new(CUTOFF).unwrap();
        let s = spectra::analyze_spectral(&t, basis).unwrap();
        let p = spectra::analyze_polar(&t, &shells, basis).unwrap();
        prop_assert!(close(&s, &p, 1e-12));
    }
}
