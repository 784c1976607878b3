//! Stable evaluation of the singular kernels that recur in the unit-interval
//! and half-line integrands.

use crate::error::{Error, Result};
use crate::precision::exact::{bernoulli, factorial, gregory};
use crate::precision::xreal::XReal;

/// A point of the open unit interval carried together with its complement,
/// so that quantities such as `ln y` stay accurate when `y` is close to 1.
#[derive(Debug, Clone)]
pub struct UnitPoint {
    pub y: XReal,
    /// `1 - y`, held independently of `y`.
    pub c: XReal,
}

impl UnitPoint {
    pub fn new(y: XReal) -> Result<Self> {
        if !(y.is_positive() && y < XReal::one(y.prec())) {
            return Err(Error::domain("UnitPoint", format!("y = {} not in (0,1)", y.to_sci(6))));
        }
        let c = &XReal::one(y.prec()) - &y;
        Ok(UnitPoint { y, c })
    }

    pub fn from_complement(c: XReal) -> Result<Self> {
        let y = &XReal::one(c.prec()) - &c;
        if !(c.is_positive() && y.is_positive()) {
            return Err(Error::domain(
                "UnitPoint",
                format!("1 - y = {} not in (0,1)", c.to_sci(6)),
            ));
        }
        Ok(UnitPoint { y, c })
    }

    pub fn prec(&self) -> u32 {
        self.y.prec().max(self.c.prec())
    }

    /// `ln y`, computed from the complement when `y > 1/2`.
    pub fn ln(&self) -> XReal {
        if self.c < XReal::ratio(1, 2, 64) {
            (-&self.c).ln_1p()
        } else {
            self.y.ln()
        }
    }

    /// `ln |ln y|`.
    pub fn ln_abs_ln(&self) -> XReal {
        (-self.ln()).ln()
    }
}

/// Omega kernel `1/(1-y) + 1/ln y` on `(0, 1)`.
///
/// Decreasing from 1 at `y -> 0+` to 1/2 at `y -> 1-`.
pub fn omega_kernel(y: &XReal) -> Result<XReal> {
    let pt = UnitPoint::new(y.clone())
        .map_err(|_| Error::domain("omega_kernel", format!("y = {} not in (0,1)", y.to_sci(6))))?;
    Ok(omega_at(&pt))
}

/// Omega kernel at a point whose complement is known.
pub fn omega_at(pt: &UnitPoint) -> XReal {
    let p = pt.prec();
    let switch = XReal::pow2(-((p / 3) as i32), 64);
    if pt.c < switch {
        return omega_series(&pt.c, p);
    }
    // Direct form loses at most p/3 bits to cancellation.
    let wp = p + p / 3 + 16;
    let c = pt.c.with_prec(wp);
    let ln_y = if pt.c < XReal::ratio(1, 2, 64) {
        (-&c).ln_1p()
    } else {
        pt.y.with_prec(wp).ln()
    };
    (c.recip() + ln_y.recip()).with_prec(p)
}

/// `Omega(1 - e) = sum_{m>=1} |G_m| e^(m-1)` with Gregory coefficients `G_m`.
fn omega_series(e: &XReal, p: u32) -> XReal {
    let eps = XReal::pow2(-(p as i32) - 8, 64);
    let e = e.with_prec(p + 8);
    let mut sum = XReal::zero(p + 8);
    let mut pow = XReal::one(p + 8);
    for m in 1.. {
        let g = gregory(m);
        let term = &XReal::from_rational(&g, p + 8).abs() * &pow;
        sum = sum + &term;
        if term.abs() < eps || term.is_zero() {
            break;
        }
        pow = &pow * &e;
    }
    sum.with_prec(p)
}

/// Bose kernel `1/(e^x - 1) - 1/x` for `x > 0`.
///
/// Tends to -1/2 at `x -> 0+` and to 0 from below as `x -> inf`.
pub fn bose_kernel(x: &XReal) -> Result<XReal> {
    if !x.is_positive() {
        return Err(Error::domain("bose_kernel", format!("x = {} <= 0", x.to_sci(6))));
    }
    let p = x.prec();
    let switch = XReal::pow2(-((p / 4) as i32), 64);
    if x < &switch {
        return Ok(bose_series(x, p));
    }
    let wp = p + p / 4 + 16;
    let xw = x.with_prec(wp);
    Ok((xw.exp_m1().recip() - xw.recip()).with_prec(p))
}

/// `sum_{k>=1} B_k x^(k-1) / k!`, the Laurent tail of `1/(e^x - 1)`.
fn bose_series(x: &XReal, p: u32) -> XReal {
    let wp = p + 8;
    let eps = XReal::pow2(-(p as i32) - 8, 64);
    let x = x.with_prec(wp);
    let x2 = x.square();
    let mut sum = XReal::ratio(-1, 2, wp);
    let mut pow = x.clone();
    for k in (2..).step_by(2) {
        let coef = bernoulli(k) / rug::Rational::from(factorial(k as u32));
        let term = &XReal::from_rational(&coef, wp) * &pow;
        sum = sum + &term;
        if term.abs() < eps || term.is_zero() {
            break;
        }
        pow = &pow * &x2;
    }
    sum.with_prec(p)
}

/// `(ln(-ln y))^n` on `(0, 1)`; exactly 1 for `n = 0`.
pub fn loglog_power_kernel(y: &XReal, n: u32) -> Result<XReal> {
    let pt = UnitPoint::new(y.clone())
        .map_err(|_| Error::domain("loglog_power_kernel", format!("y = {} not in (0,1)", y.to_sci(6))))?;
    Ok(loglog_power_at(&pt, n))
}

pub fn loglog_power_at(pt: &UnitPoint, n: u32) -> XReal {
    if n == 0 {
        return XReal::one(pt.prec());
    }
    pt.ln_abs_ln().powi(n as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &XReal, b: &XReal, tol: f64) -> bool {
        (a - b).abs().to_f64() <= tol
    }

    #[test]
    fn omega_limits() {
        let tiny = XReal::pow2(-400, 256);
        let near0 = omega_kernel(&tiny).unwrap();
        // 1/(1-y) + 1/ln y with |ln y| ~ 277
        assert!(close(&near0, &XReal::one(256), 4e-3));
        let near1 = omega_at(&UnitPoint::from_complement(tiny.clone()).unwrap());
        assert!(close(&near1, &XReal::ratio(1, 2, 256), 1e-100));
    }

    #[test]
    fn omega_at_half() {
        let half = XReal::ratio(1, 2, 256);
        let v = omega_kernel(&half).unwrap();
        let oracle = XReal::from_i64(2, 256) - XReal::from_i64(2, 256).ln().recip();
        assert!(close(&v, &oracle, 1e-70));
        assert!((v.to_f64() - 0.557_305_0).abs() < 1e-7);
    }

    #[test]
    fn omega_domain() {
        assert!(omega_kernel(&XReal::zero(128)).is_err());
        assert!(omega_kernel(&XReal::one(128)).is_err());
        assert!(omega_kernel(&XReal::from_f64(-0.5, 128)).is_err());
    }

    #[test]
    fn omega_series_branch_matches_high_precision_direct() {
        let p = 256;
        let c = XReal::pow2(-90, p);
        let series = omega_at(&UnitPoint::from_complement(c.clone()).unwrap());
        let hp = c.with_prec(4 * p);
        let direct = hp.recip() + (-&hp).ln_1p().recip();
        let rel = ((&series - &direct) / &direct).abs();
        assert!(rel < XReal::pow2(-(p as i32) + 8, 64), "rel {rel:?}");
    }

    #[test]
    fn bose_values() {
        let one = XReal::one(256);
        let v = bose_kernel(&one).unwrap();
        let e = one.exp();
        let oracle = (&e - &one).recip() - &one;
        assert!(close(&v, &oracle, 1e-70));
        assert!((v.to_f64() + 0.418_023_3).abs() < 1e-7);

        let small = bose_kernel(&XReal::pow2(-200, 256)).unwrap();
        assert!(close(&small, &XReal::ratio(-1, 2, 256), 1e-60));

        let big = bose_kernel(&XReal::from_i64(1_000_000, 256)).unwrap();
        assert!(big.is_negative());
        assert!(close(&big, &XReal::from_f64(-1e-6, 256), 1e-20));
        assert!(bose_kernel(&XReal::zero(256)).is_err());
    }

    #[test]
    fn loglog_values() {
        let inv_e = XReal::from_i64(-1, 256).exp();
        assert!(loglog_power_kernel(&inv_e, 3).unwrap().abs().to_f64() < 1e-70);
        let y = (-XReal::one(256).exp()).exp();
        let v = loglog_power_kernel(&y, 2).unwrap();
        assert!(close(&v, &XReal::one(256), 1e-70));
        let q = XReal::ratio(1, 7, 256);
        assert_eq!(loglog_power_kernel(&q, 0).unwrap(), XReal::one(256));
        assert!(loglog_power_kernel(&XReal::one(256), 0).is_err());
        assert!(loglog_power_kernel(&XReal::zero(256), 2).is_err());
    }
}
