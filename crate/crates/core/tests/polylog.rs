use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stieltjes_core::polylog::{dilog, li_nielsen};
use stieltjes_core::precision::UnitPoint;
use stieltjes_core::quad::{integrate_unit, QuadOptions};
use stieltjes_core::XReal;

const P: u32 = 256;

#[test]
fn dilog_reflection() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let tol = 10f64.powf(-(P as f64) * 0.28);
    let z2 = XReal::pi(P).square().div_i64(6);
    for _ in 0..100 {
        let x = XReal::from_f64(rng.gen_range(1e-9..1.0 - 1e-9), P);
        let c = &XReal::one(P) - &x;
        let r = &(&(&z2 - &(&x.ln() * &c.ln())) - &dilog(&x).unwrap()) - &dilog(&c).unwrap();
        assert!(r.abs().to_f64() <= tol, "x = {}: {}", x.to_sci(8), r.to_sci(3));
    }
}

#[test]
fn dilog_increases_on_unit_interval() {
    let mut prev = dilog(&XReal::zero(P)).unwrap();
    for i in 1..=500 {
        let cur = dilog(&XReal::ratio(i, 500, P)).unwrap();
        assert!(cur > prev, "at {i}/500");
        prev = cur;
    }
}

#[test]
fn li_differences_match_quadrature() {
    // li(x) - li(a) = int_a^x dt / ln t, substituting t = a + (x - a) s
    let a = XReal::ratio(1, 10, P);
    let li_a = li_nielsen(&a).unwrap();
    let opts = QuadOptions::new(P, 1e-15);
    for (num, den) in [(1, 5), (1, 2), (3, 4), (9, 10), (99, 100)] {
        let x = XReal::ratio(num, den, P);
        let width = &x - &a;
        let q = integrate_unit(|pt: &UnitPoint| Ok(&width / &(&a + &(&width * &pt.y)).ln()), &opts).unwrap();
        let d = &(&li_nielsen(&x).unwrap() - &li_a) - &q.value;
        assert!(d.abs().to_f64() < 1e-10, "x = {num}/{den}: {}", d.to_sci(3));
    }
}
