use std::ffi::CStr;
use std::ptr;

use disk_harmonics_ffi::*;

fn ok(status: DhStatus) {
    if status != DhStatus::Ok {
        let msg = unsafe { CStr::from_ptr(dh_last_error()) };
        panic!("{status:?}: {}", msg.to_string_lossy());
    }
}

/// Smooth real bump supported in radius `b`, cell-centred on `[-a, a]^2`.
fn bump(a: f64, b: f64, grid: usize, cx: f64) -> Vec<f64> {
    let h = 2.0 * a / grid as f64;
    let mut v = Vec::with_capacity(grid * grid);
    for iy in 0..grid {
        for ix in 0..grid {
            let x = (ix as f64 - (grid - 1) as f64 / 2.0) * h;
            let y = (iy as f64 - (grid - 1) as f64 / 2.0) * h;
            let t = 1.0 - (x * x + y * y) / (b * b);
            let taper = if t > 0.0 { t * t } else { 0.0 };
            v.push(taper * (-((x - cx).powi(2) + y * y) / 0.08).exp());
        }
    }
    v
}

struct Handles {
    basis: *mut DhBasis,
    f: *mut DhDiskFunction,
}

impl Handles {
    fn new(bc: DhBoundary, support: f64) -> Self {
        let mut basis = ptr::null_mut();
        let mut f = ptr::null_mut();
        unsafe {
            ok(dh_basis_new(1.0, bc, 4, 6, 16, &mut basis));
            let samples = bump(1.0, support, 64, 0.1);
            ok(dh_disk_function_new(1.0, support, 64, samples.as_ptr(), ptr::null(), &mut f));
        }
        Handles { basis, f }
    }
}

impl Drop for Handles {
    fn drop(&mut self) {
        unsafe {
            dh_disk_function_free(self.f);
            dh_basis_free(self.basis);
        }
    }
}

#[test]
fn bessel_and_zeros() {
    let mut j = 0.0;
    unsafe { ok(dh_bessel_j(0, 2.404825557695773, &mut j)) };
    assert!(j.abs() < 1e-14);
    let mut zeros = [0.0; 3];
    unsafe { ok(dh_find_zeros(0, 3, DH_BC_DERIVATIVE, zeros.as_mut_ptr())) };
    assert_eq!(zeros[0], 0.0);
    assert!((zeros[1] - 3.8317059702075125).abs() < 1e-12);
}

#[test]
fn errors_are_reported() {
    let mut j = 0.0;
    let status = unsafe { dh_bessel_j(500, 1.0, &mut j) };
    assert_eq!(status, DhStatus::Invalid);
    let msg = unsafe { CStr::from_ptr(dh_last_error()) }.to_string_lossy().into_owned();
    assert!(msg.contains("500"), "{msg}");
    assert_eq!(unsafe { dh_bessel_j(0, 1.0, ptr::null_mut()) }, DhStatus::NullPointer);
    let mut basis = ptr::null_mut();
    assert_eq!(unsafe { dh_basis_new(1.0, 7, 2, 2, 8, &mut basis) }, DhStatus::Invalid);
    assert!(basis.is_null());
    ok(unsafe { dh_bessel_j(0, 1.0, &mut j) });
    assert_eq!(unsafe { CStr::from_ptr(dh_last_error()) }.to_bytes().len(), 0);
}

#[test]
fn analysis_paths_agree() {
    let h = Handles::new(DH_BC_ZERO, 1.0);
    let (mut direct, mut spectral) = (ptr::null_mut(), ptr::null_mut());
    unsafe {
        ok(dh_analyze_direct(h.basis, h.f, &mut direct));
        ok(dh_analyze_spectral(h.basis, h.f, &mut spectral));
        let mut len = 0;
        ok(dh_coefficients_len(direct, &mut len));
        assert_eq!(len, 6 * 9);
        for n in 1..=6 {
            for m in -4..=4 {
                let (mut a, mut b, mut c, mut d) = (0.0, 0.0, 0.0, 0.0);
                ok(dh_coefficients_get(direct, n, m, &mut a, &mut b));
                ok(dh_coefficients_get(spectral, n, m, &mut c, &mut d));
                assert!((a - c).abs() < 2e-2 && (b - d).abs() < 2e-2);
            }
        }
        let (mut re, mut im) = (0.0, 0.0);
        assert_eq!(dh_coefficients_get(direct, 7, 0, &mut re, &mut im), DhStatus::Invalid);
        ok(dh_synthesize(h.basis, direct, 0.3, 0.0, &mut re, &mut im));
        let want = (-0.04f64 / 0.08).exp() * (1.0 - 0.09f64).powi(2);
        assert!((re - want).abs() < 5e-2, "{re} vs {want}");
        dh_coefficients_free(direct);
        dh_coefficients_free(spectral);
    }
}

#[test]
fn rotation_keeps_descriptors() {
    let h = Handles::new(DH_BC_DERIVATIVE, 1.0);
    unsafe {
        let (mut c, mut r) = (ptr::null_mut(), ptr::null_mut());
        ok(dh_analyze_spectral(h.basis, h.f, &mut c));
        ok(dh_rotate(c, 0.7, &mut r));
        let mut d0 = vec![0.0; 54];
        let mut d1 = vec![0.0; 54];
        ok(dh_descriptors(c, d0.as_mut_ptr(), d0.len()));
        ok(dh_descriptors(r, d1.as_mut_ptr(), d1.len()));
        for (x, y) in d0.iter().zip(&d1) {
            assert!((x - y).abs() <= 1e-14 * x.max(1e-300));
        }
        assert_eq!(dh_descriptors(c, d0.as_mut_ptr(), 3), DhStatus::BufferTooSmall);
        dh_coefficients_free(c);
        dh_coefficients_free(r);
    }
}

#[test]
fn convolution_and_plancherel() {
    let h = Handles::new(DH_BC_ZERO, 0.5);
    unsafe {
        let mut c = ptr::null_mut();
        ok(dh_convolve_spectral(h.basis, h.f, h.f, &mut c));
        dh_coefficients_free(c);
        let mut energy = 0.0;
        ok(dh_plancherel(h.basis, h.f, &mut energy));
        assert!(energy > 0.0);
    }
    let wide = Handles::new(DH_BC_ZERO, 1.0);
    let mut c = ptr::null_mut();
    let status = unsafe { dh_convolve_spectral(wide.basis, wide.f, wide.f, &mut c) };
    assert_eq!(status, DhStatus::Invalid);
    assert!(c.is_null());
}

#[test]
fn header_lists_entry_points() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/disk_harmonics.h")).unwrap();
    for name in ["dh_basis_new", "dh_analyze_spectral", "dh_last_error", "DH_STATUS_NUMERICAL", "DhCoefficients"] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
