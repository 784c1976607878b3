use proptest::prelude::*;
use stieltjes_core::constants::constants;
use stieltjes_core::hasse::{digamma_hasse, HasseConfig};
use stieltjes_core::quad::{integrate_halfline, QuadOptions};
use stieltjes_core::zeta::{digamma, gamma, gamma_derivative, gamma_derivative_at_one, hurwitz_zeta, ln_gamma};
use stieltjes_core::XReal;

const P: u32 = 256;

fn close(a: &XReal, b: &XReal, tol: f64) -> bool {
    (a - b).abs().to_f64() <= tol
}

#[test]
fn gamma_derivatives_at_one_alternate_in_sign() {
    for m in 0..=10 {
        let v = gamma_derivative_at_one(m, P);
        assert_eq!(v.is_negative(), m % 2 == 1, "m = {m}: {}", v.to_sci(8));
    }
}

#[test]
fn gamma_derivatives_match_log_moments_of_exp() {
    let opts = QuadOptions::new(P, 1e-14);
    for m in 0..=6 {
        let q = integrate_halfline(|t| Ok(&(-t).exp() * &t.ln().powi(m as i32)), &opts).unwrap();
        let v = gamma_derivative_at_one(m, P);
        assert!(
            close(&q.value, &v, 1e-10),
            "m = {m}: {} vs {}",
            q.value.to_sci(12),
            v.to_sci(12)
        );
    }
}

#[test]
fn low_order_closed_forms() {
    let c = constants(P);
    let (g, z2, z3) = (c.euler_gamma(), c.zeta(2), c.zeta(3));
    assert!(close(&gamma_derivative_at_one(1, P), &-g.clone(), 1e-70));
    assert!(close(&gamma_derivative_at_one(2, P), &(&z2 + &g.square()), 1e-70));
    let third = -(z3.mul_i64(2) + (&g * &z2).mul_i64(3) + g.powi(3));
    assert!(close(&gamma_derivative_at_one(3, P), &third, 1e-70));
}

#[test]
fn bell_route_matches_generic_derivative_at_one() {
    for m in 1..=6 {
        let a = gamma_derivative_at_one(m, P);
        let b = gamma_derivative(m, &XReal::one(P)).unwrap();
        assert!(close(&a, &b, 1e-60), "m = {m}");
    }
}

#[test]
fn elementary_inequality_on_grid() {
    // 2t ln t - t^2 + 1 >= 0 on (0, 1]
    for i in 1..=10_000 {
        let t = XReal::ratio(i, 10_000, 128);
        let v = &(&(&t * &t.ln()).mul_i64(2) - &t.square()) + &XReal::one(128);
        assert!(!v.is_negative(), "t = {i}/10000");
    }
}

#[test]
fn digamma_agrees_with_hasse_series() {
    let cfg = HasseConfig {
        n_max: 512,
        ..HasseConfig::default()
    };
    for (a, b) in [(1, 1), (1, 2), (3, 2), (5, 1)] {
        let u = XReal::ratio(a, b, P);
        let h = digamma_hasse(&u, &cfg).unwrap();
        let d = digamma(&u).unwrap();
        assert!(close(&h.value, &d, 1e-6), "u = {a}/{b}");
    }
}

#[test]
fn known_values() {
    let half = XReal::ratio(1, 2, P);
    let sqrt_pi = XReal::pi(P).sqrt();
    assert!(close(&gamma(&half).unwrap(), &sqrt_pi, 1e-70));
    assert!(close(
        &ln_gamma(&XReal::from_i64(11, P)).unwrap(),
        &XReal::from_i64(3_628_800, P).ln(),
        1e-70
    ));
    let ln4 = XReal::from_i64(4, P).ln();
    let expect = -(constants(P).euler_gamma() + ln4);
    assert!(close(&digamma(&half).unwrap(), &expect, 1e-70));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn hurwitz_shift(x in 0.05f64..20.0, s in 2u32..=4) {
        let x = XReal::from_f64(x, P);
        let lhs = hurwitz_zeta(s, &x).unwrap() - hurwitz_zeta(s, &(&x + &XReal::one(P))).unwrap();
        let rhs = x.powi(-(s as i32));
        prop_assert!((&lhs - &rhs).abs() <= &rhs.abs() * &XReal::pow2(-240, 64));
    }

    #[test]
    fn gamma_reflection(x in 0.01f64..0.99) {
        let x = XReal::from_f64(x, P);
        let one = XReal::one(P);
        let lhs = &gamma(&x).unwrap() * &gamma(&(&one - &x)).unwrap();
        let pi = XReal::pi(P);
        let rhs = &pi / &(&pi * &x).sin();
        prop_assert!((&lhs - &rhs).abs() <= &rhs * &XReal::pow2(-240, 64));
    }

    #[test]
    fn digamma_recurrence(x in 0.01f64..50.0) {
        let x = XReal::from_f64(x, P);
        let lhs = digamma(&(&x + &XReal::one(P))).unwrap() - digamma(&x).unwrap();
        prop_assert!(close(&lhs, &x.recip(), 1e-65));
    }
}
