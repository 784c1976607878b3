use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stieltjes_core::precision::{bose_kernel, omega_kernel, sum_series, Acceleration, XReal};

const P: u32 = 256;

fn omega_direct(y: &XReal) -> XReal {
    let w = y.with_prec(4 * P);
    (&(XReal::one(4 * P) - &w).recip() + &w.ln().recip()).with_prec(P)
}

#[test]
fn omega_matches_quadruple_precision_direct_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let bound = XReal::pow2(10 - P as i32, 64);
    for _ in 0..1000 {
        let y = XReal::from_f64(rng.gen_range(1e-6..1.0 - 1e-6), P);
        let d = (&omega_kernel(&y).unwrap() - &omega_direct(&y)).abs();
        assert!(d <= bound, "y = {y}: {}", d.to_sci(3));
    }
}

#[test]
fn omega_near_one_uses_series_accurately() {
    let bound = XReal::pow2(10 - P as i32, 64);
    for k in [40, 85, 90, 120, 200] {
        let y = XReal::one(P) - XReal::pow2(-k, P);
        let d = (&omega_kernel(&y).unwrap() - &omega_direct(&y)).abs();
        assert!(d <= bound, "1 - 2^-{k}: {}", d.to_sci(3));
    }
}

#[test]
fn omega_is_strictly_decreasing() {
    let n = 10_000;
    let mut prev = omega_kernel(&XReal::ratio(1, n + 1, P)).unwrap();
    for i in 2..=n {
        let cur = omega_kernel(&XReal::ratio(i, n + 1, P)).unwrap();
        assert!(cur < prev, "at {i}/{}", n + 1);
        prev = cur;
    }
}

#[test]
fn bose_kernel_small_argument_expansion() {
    for e in [-12, -20, -40, -70, -100] {
        let x = XReal::pow2(e, P);
        let b = bose_kernel(&x).unwrap();
        let w = x.with_prec(4 * P);
        let direct = (w.exp_m1().recip() - w.recip()).with_prec(P);
        assert!((&b - &direct).abs() <= XReal::pow2(8 - P as i32, 64), "2^{e}");
        // b + 1/2 - x/12 = -x^3/720 + ..., down to working precision
        let rest = &(&b + &XReal::ratio(1, 2, P)) - &x.div_i64(12);
        let floor = XReal::pow2(8 - P as i32, 64);
        let bound = x.powi(3).div_i64(100);
        assert!(rest.abs() <= if bound > floor { bound } else { floor }, "2^{e}");
    }
    let x = XReal::from_f64(5e-4, P);
    let rest = &(&bose_kernel(&x).unwrap() + &XReal::ratio(1, 2, P)) - &x.div_i64(12);
    assert!(rest.abs() <= x.powi(3).div_i64(100));
}

#[test]
fn richardson_sums_basel_series_quickly() {
    let tol = XReal::from_f64(1e-12, 64).with_prec(P);
    let r = sum_series(
        |n| XReal::from_i64((n * n) as i64, P).recip(),
        1,
        &tol,
        Acceleration::Richardson { depth: 4 },
    )
    .unwrap();
    let pi2_6 = XReal::pi(P).square().div_i64(6);
    assert!((&r.value - &pi2_6).abs().to_f64() <= 1e-12);
    assert!(r.terms_used <= 10_000, "{}", r.terms_used);
}
