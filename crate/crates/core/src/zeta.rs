//! Riemann and Hurwitz zeta at integer arguments, `zeta'(2)`, `zeta'(-1)`,
//! digamma, polygamma, the gamma function and its derivatives.
//!
//! Everything is computed from Euler–Maclaurin summation and asymptotic
//! expansions driven by exact Bernoulli numbers; no constant is hard-coded.

use rug::Rational;

use crate::bell::{bell_complete, bell_eval};
use crate::constants::constants;
use crate::error::{Error, Result};
use crate::precision::{bernoulli, factorial, XReal};

/// Extra bits carried through every evaluation in this module.
const GUARD: u32 = 32;

fn working(prec: u32) -> u32 {
    prec + GUARD
}

fn bernoulli_ratio(j: usize, wp: u32) -> XReal {
    // B_{2j} / (2j)!
    let r = bernoulli(2 * j) / Rational::from(factorial(2 * j as u32));
    XReal::from_rational(&r, wp)
}

/// Number of terms summed directly before the Euler–Maclaurin tail.
fn direct_terms(prec: u32) -> u64 {
    64.max(prec as u64 / 4)
}

/// Tail `sum_{k>=0} (a + k)^-s` by Euler–Maclaurin, or `None` when the
/// asymptotic corrections stop decreasing before reaching `2^-wp`.
fn hurwitz_tail(s: u32, a: &XReal, wp: u32) -> Option<XReal> {
    let eps = XReal::pow2(-(wp as i32), 64);
    let a_pow = a.powi(-(s as i32));
    let mut sum = &(a * &a_pow).div_i64(s as i64 - 1) + &a_pow.div_i64(2);
    let inv_a2 = a.square().recip();
    // rising factorial (s)_{2j-1} and a^{1-s-2j}
    let mut rising = XReal::from_i64(s as i64, wp);
    let mut pow = &a_pow / a;
    let mut last = None::<XReal>;
    for j in 1..=4096usize {
        let term = &(&bernoulli_ratio(j, wp) * &rising) * &pow;
        let mag = term.abs();
        if let Some(prev) = last.as_ref() {
            if mag > *prev {
                return None;
            }
        }
        sum = sum + &term;
        if mag < eps {
            return Some(sum);
        }
        last = Some(mag);
        let k = 2 * j as i64 - 1;
        rising = rising.mul_i64((s as i64 + k) * (s as i64 + k + 1));
        pow = &pow * &inv_a2;
    }
    None
}

/// Hurwitz zeta `zeta(s, x) = sum_{k>=0} (x + k)^-s` for integer `s >= 2`
/// and real `x > 0`, at the precision of `x`.
pub fn hurwitz_zeta(s: u32, x: &XReal) -> Result<XReal> {
    if s < 2 {
        return Err(Error::domain("hurwitz_zeta", format!("s = {s} < 2")));
    }
    if !x.is_positive() {
        return Err(Error::domain("hurwitz_zeta", format!("x = {} <= 0", x.to_sci(6))));
    }
    let prec = x.prec();
    let wp = working(prec);
    let x = x.with_prec(wp);
    let mut n = direct_terms(prec);
    loop {
        let mut sum = XReal::zero(wp);
        for k in 0..n {
            sum = sum + (&x + &XReal::from_i64(k as i64, wp)).powi(-(s as i32));
        }
        let a = &x + &XReal::from_i64(n as i64, wp);
        if let Some(tail) = hurwitz_tail(s, &a, wp) {
            return Ok((sum + tail).with_prec(prec));
        }
        n *= 2;
    }
}

/// Riemann zeta `zeta(s)` for integer `s >= 2`.
pub fn riemann_zeta(s: u32, prec: u32) -> Result<XReal> {
    if s < 2 {
        return Err(Error::domain("riemann_zeta", format!("s = {s} < 2")));
    }
    hurwitz_zeta(s, &XReal::one(prec))
}

/// `zeta'(s) = -sum_{k>=1} ln k / k^s` for integer `s >= 2`, by Euler–Maclaurin
/// applied to `f(t) = ln t * t^-s`.
pub(crate) fn zeta_prime_int(s: u32, prec: u32) -> XReal {
    let wp = working(prec);
    let eps = XReal::pow2(-(wp as i32), 64);
    let si = s as i64;
    let mut n = direct_terms(prec);
    'outer: loop {
        let mut sum = XReal::zero(wp);
        for k in 2..n {
            let kk = XReal::from_i64(k as i64, wp);
            sum = sum + &kk.ln() * &kk.powi(-(s as i32));
        }
        let a = XReal::from_i64(n as i64, wp);
        let ln_a = a.ln();
        let a_pow = a.powi(-(s as i32));
        // integral from a to infinity of ln t t^-s
        let sm1 = XReal::from_i64(si - 1, wp);
        let integral = &(&a * &a_pow) * &(&ln_a / &sm1 + sm1.square().recip());
        sum = sum + integral + (&ln_a * &a_pow).div_i64(2);
        // f^(m)(t) = t^(-s-m) (c_m ln t + d_m)
        let (mut c, mut d) = (XReal::one(wp), XReal::zero(wp));
        let mut m = 0i64;
        let inv_a = a.recip();
        let mut pow = a_pow.clone();
        let mut last = None::<XReal>;
        for j in 1..=4096usize {
            while m < 2 * j as i64 - 1 {
                let f = -(si + m);
                let nc = c.mul_i64(f);
                d = d.mul_i64(f) + &c;
                c = nc;
                m += 1;
                pow = &pow * &inv_a;
            }
            let deriv = &pow * &(&c * &ln_a + &d);
            let term = &bernoulli_ratio(j, wp) * &deriv;
            let mag = term.abs();
            if last.as_ref().is_some_and(|p| mag > *p) {
                n *= 2;
                continue 'outer;
            }
            sum = sum - &term;
            if mag < eps {
                return (-sum).with_prec(prec);
            }
            last = Some(mag);
        }
        n *= 2;
    }
}

/// `zeta'(2)`.
pub fn zeta_prime_2(prec: u32) -> XReal {
    zeta_prime_int(2, prec)
}

/// `zeta'(-1)` from the derivative of the functional equation at `s = -1`:
/// `zeta'(-1) = [zeta'(2) - zeta(2)(ln 2pi - 1 + gamma)] / (2 pi^2)`.
pub fn zeta_prime_minus_one(prec: u32) -> XReal {
    let c = constants(working(prec));
    let pi = c.pi();
    let bracket = c.ln_2pi() - XReal::one(c.prec()) + c.euler_gamma();
    let num = c.zeta_prime_2() - &(c.zeta(2) * &bracket);
    (&num / &pi.square().mul_i64(2)).with_prec(prec)
}

/// Shift below which asymptotic expansions in `1/x` are not trusted at `wp` bits.
fn asymptotic_threshold(wp: u32) -> i64 {
    10.max(wp as i64 / 8 + 4)
}

fn shift_count(x: &XReal, wp: u32) -> i64 {
    let need = asymptotic_threshold(wp) as f64 - x.to_f64();
    if need > 0.0 {
        need.ceil() as i64
    } else {
        0
    }
}

/// `psi(x) ~ ln x - 1/(2x) - sum_j B_2j / (2j x^2j)` for large `x`.
fn digamma_asymptotic(x: &XReal, wp: u32) -> XReal {
    let eps = XReal::pow2(-(wp as i32), 64);
    let inv2 = x.square().recip();
    let mut sum = x.ln() - x.recip().div_i64(2);
    let mut pow = inv2.clone();
    for j in 1..=4096usize {
        let b = XReal::from_rational(&bernoulli(2 * j), wp).div_i64(2 * j as i64);
        let term = &b * &pow;
        sum = sum - &term;
        if term.abs() < eps {
            break;
        }
        pow = &pow * &inv2;
    }
    sum
}

/// Digamma `psi(x)` for `x > 0`.
pub fn digamma(x: &XReal) -> Result<XReal> {
    if !x.is_positive() {
        return Err(Error::domain("digamma", format!("x = {} <= 0", x.to_sci(6))));
    }
    let prec = x.prec();
    let wp = working(prec);
    let x = x.with_prec(wp);
    let m = shift_count(&x, wp);
    let mut correction = XReal::zero(wp);
    for k in 0..m {
        correction = correction + (&x + &XReal::from_i64(k, wp)).recip();
    }
    let shifted = &x + &XReal::from_i64(m, wp);
    Ok((digamma_asymptotic(&shifted, wp) - correction).with_prec(prec))
}

/// Euler's constant as `-psi(1)`.
pub fn euler_gamma(prec: u32) -> XReal {
    match digamma(&XReal::one(prec)) {
        Ok(v) => -v,
        Err(_) => unreachable!("digamma is defined at 1"),
    }
}

/// Polygamma `psi^(p)(x) = (-1)^(p+1) p! zeta(p+1, x)` for `p >= 1`.
pub fn polygamma(p: u32, x: &XReal) -> Result<XReal> {
    if p == 0 {
        return Err(Error::domain("polygamma", "order must be >= 1; use digamma"));
    }
    let z = hurwitz_zeta(p + 1, x)?;
    let v = z.mul_integer(&factorial(p));
    Ok(if p % 2 == 1 { v } else { -v })
}

/// `ln Gamma(x)` for `x > 0`, via upward recurrence and Stirling's series.
pub fn ln_gamma(x: &XReal) -> Result<XReal> {
    if !x.is_positive() {
        return Err(Error::domain("ln_gamma", format!("x = {} <= 0", x.to_sci(6))));
    }
    let prec = x.prec();
    let wp = working(prec);
    let x = x.with_prec(wp);
    let m = shift_count(&x, wp);
    let mut log_prod = XReal::zero(wp);
    for k in 0..m {
        log_prod = log_prod + (&x + &XReal::from_i64(k, wp)).ln();
    }
    let z = &x + &XReal::from_i64(m, wp);
    Ok((stirling(&z, wp) - log_prod).with_prec(prec))
}

/// `ln Gamma(z) ~ (z - 1/2) ln z - z + ln(2pi)/2 + sum_j B_2j / (2j(2j-1) z^(2j-1))`.
fn stirling(z: &XReal, wp: u32) -> XReal {
    let eps = XReal::pow2(-(wp as i32), 64);
    let half = XReal::ratio(1, 2, wp);
    let ln_2pi = XReal::pi(wp).mul_i64(2).ln();
    let mut sum = &(z - &half) * &z.ln() - z + ln_2pi.div_i64(2);
    let inv2 = z.square().recip();
    let mut pow = z.recip();
    for j in 1..=4096i64 {
        let b = XReal::from_rational(&bernoulli(2 * j as usize), wp).div_i64(2 * j * (2 * j - 1));
        let term = &b * &pow;
        sum = sum + &term;
        if term.abs() < eps {
            break;
        }
        pow = &pow * &inv2;
    }
    sum
}

/// Gamma function for `x > 0`.
pub fn gamma(x: &XReal) -> Result<XReal> {
    let prec = x.prec();
    let wp = working(prec);
    Ok(ln_gamma(&x.with_prec(wp))?.exp().with_prec(prec))
}

/// `ln Gamma(1 + t) = ln(t!)` for a positive integer `t`.
pub fn log_gamma_integer(t: u32, prec: u32) -> Result<XReal> {
    if t == 0 {
        return Err(Error::domain("log_gamma_integer", "t must be >= 1"));
    }
    Ok(XReal::from_integer(&factorial(t), working(prec)).ln().with_prec(prec))
}

/// `Gamma^(m)(x) = Gamma(x) Y_m(psi(x), psi'(x), ..., psi^(m-1)(x))`.
pub fn gamma_derivative(m: u32, x: &XReal) -> Result<XReal> {
    if !x.is_positive() {
        return Err(Error::domain("gamma_derivative", format!("x = {} <= 0", x.to_sci(6))));
    }
    let prec = x.prec();
    let wp = working(prec);
    let xw = x.with_prec(wp);
    let g = gamma(&xw)?;
    if m == 0 {
        return Ok(g.with_prec(prec));
    }
    let mut args = Vec::with_capacity(m as usize);
    args.push(digamma(&xw)?);
    for p in 1..m {
        args.push(polygamma(p, &xw)?);
    }
    let y = bell_eval(&bell_complete(m), &args)?;
    Ok((&g * &y).with_prec(prec))
}

/// `Gamma^(m)(1) = Y_m(-gamma, x_1, ..., x_{m-1})` with
/// `x_p = (-1)^(p+1) p! zeta(p+1)`, using the shared constant pool.
pub fn gamma_derivative_at_one(m: u32, prec: u32) -> XReal {
    constants(prec).gamma_derivative_at_one(m)
}

pub(crate) fn gamma_derivative_at_one_uncached(m: u32, prec: u32) -> XReal {
    if m == 0 {
        return XReal::one(prec);
    }
    let c = constants(prec);
    let mut args = Vec::with_capacity(m as usize);
    args.push(-c.euler_gamma());
    for p in 1..m {
        let v = c.zeta(p + 1).mul_integer(&factorial(p));
        args.push(if p % 2 == 1 { v } else { -v });
    }
    match bell_eval(&bell_complete(m), &args) {
        Ok(v) => v.with_prec(prec),
        Err(_) => unreachable!("argument count matches degree"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diff(a: &XReal, b: &XReal) -> f64 {
        (a - b).abs().to_f64()
    }

    #[test]
    fn zeta_two_is_basel() {
        let z = riemann_zeta(2, 256).unwrap();
        let basel = XReal::pi(256).square().div_i64(6);
        assert!(diff(&z, &basel) < 1e-72);
    }

    #[test]
    fn zeta_domain() {
        assert!(riemann_zeta(1, 128).is_err());
        assert!(hurwitz_zeta(2, &XReal::zero(128)).is_err());
        assert!(digamma(&XReal::from_i64(-1, 128)).is_err());
        assert!(polygamma(0, &XReal::one(128)).is_err());
    }

    #[test]
    fn hurwitz_shift_and_half() {
        let one = XReal::one(256);
        let z22 = hurwitz_zeta(2, &XReal::from_i64(2, 256)).unwrap();
        assert!(diff(&z22, &(riemann_zeta(2, 256).unwrap() - one)) < 1e-72);
        let zh = hurwitz_zeta(2, &XReal::ratio(1, 2, 256)).unwrap();
        assert!(diff(&zh, &riemann_zeta(2, 256).unwrap().mul_i64(3)) < 1e-72);
    }

    #[test]
    fn digamma_values() {
        let g = euler_gamma(256);
        assert!((g.to_f64() - 0.577_215_664_901_532_9).abs() < 1e-16);
        let psi2 = digamma(&XReal::from_i64(2, 256)).unwrap();
        assert!(diff(&psi2, &(XReal::one(256) - &g)) < 1e-72);
        // psi(6) = -gamma + H_5, H_5 = 137/60
        let psi6 = digamma(&XReal::from_i64(6, 256)).unwrap();
        assert!(diff(&psi6, &(XReal::ratio(137, 60, 256) - &g)) < 1e-72);
    }

    #[test]
    fn polygamma_values() {
        let z2 = riemann_zeta(2, 256).unwrap();
        let z3 = riemann_zeta(3, 256).unwrap();
        let one = XReal::one(256);
        assert!(diff(&polygamma(1, &one).unwrap(), &z2) < 1e-72);
        assert!(diff(&polygamma(2, &one).unwrap(), &(-z3.mul_i64(2))) < 1e-72);
        assert!(diff(&polygamma(1, &XReal::from_i64(2, 256)).unwrap(), &(&z2 - &one)) < 1e-72);
    }

    #[test]
    fn zeta_prime_two_sign_and_value() {
        let z = zeta_prime_2(256);
        assert!(z.is_negative());
        assert!((z.to_f64() + 0.937_548_254_315_843_8).abs() < 1e-15);
    }

    #[test]
    fn zeta_prime_minus_one_value() {
        let z = zeta_prime_minus_one(256);
        assert!(z.is_negative());
        assert!((z.to_f64() + 0.165_421_143_700_451_1).abs() < 1e-15);
    }

    #[test]
    fn gamma_function_values() {
        let g5 = gamma(&XReal::from_i64(5, 256)).unwrap();
        assert!(diff(&g5, &XReal::from_i64(24, 256)) < 1e-68);
        let gh = gamma(&XReal::ratio(1, 2, 256)).unwrap();
        assert!(diff(&gh, &XReal::pi(256).sqrt()) < 1e-72);
        assert!(log_gamma_integer(1, 128).unwrap().is_zero());
        let l3 = log_gamma_integer(3, 256).unwrap();
        assert!(diff(&l3, &XReal::from_i64(6, 256).ln()) < 1e-72);
    }

    #[test]
    fn gamma_derivatives_at_one_closed_forms() {
        let p = 256;
        let g = euler_gamma(p);
        let z2 = riemann_zeta(2, p).unwrap();
        let z3 = riemann_zeta(3, p).unwrap();
        let d1 = gamma_derivative_at_one(1, p);
        let d2 = gamma_derivative_at_one(2, p);
        let d3 = gamma_derivative_at_one(3, p);
        assert!(diff(&d1, &(-&g)) < 1e-70);
        assert!(diff(&d2, &(&z2 + &g.square())) < 1e-70);
        let e3 = -(z3.mul_i64(2) + (&g * &z2).mul_i64(3) + g.powi(3));
        assert!(diff(&d3, &e3) < 1e-70);
        let general = gamma_derivative(3, &XReal::one(p)).unwrap();
        assert!(diff(&general, &e3) < 1e-68);
    }
}
