//! Dilogarithm on `[0, 1]` and the logarithmic integral on `(0, 1)`.

use crate::constants::constants;
use crate::error::{Error, Result};
use crate::precision::{UnitPoint, XReal};

/// `sum_{n>=1} x^n / n^2` for `0 <= x <= 1/2`.
fn dilog_series(x: &XReal, wp: u32) -> XReal {
    let eps = XReal::pow2(-(wp as i32) - 8, 64);
    let x = x.with_prec(wp);
    let mut pow = x.clone();
    let mut sum = XReal::zero(wp);
    for n in 1i64.. {
        let term = pow.div_i64(n * n);
        sum = sum + &term;
        if term.abs() < eps {
            break;
        }
        pow = &pow * &x;
    }
    sum
}

fn zeta2(wp: u32) -> XReal {
    XReal::pi(wp).square().div_i64(6)
}

/// `Li_2(x)` for `0 <= x <= 1`.
pub fn dilog(x: &XReal) -> Result<XReal> {
    let prec = x.prec();
    let one = XReal::one(prec);
    if x.is_negative() || *x > one {
        return Err(Error::domain("dilog", format!("x = {} not in [0,1]", x.to_sci(6))));
    }
    if x.is_zero() {
        return Ok(XReal::zero(prec));
    }
    if *x == one {
        return Ok(zeta2(prec));
    }
    let pt = UnitPoint::new(x.clone())?;
    Ok(dilog_at(&pt))
}

/// `Li_2(y)` at a point of `(0, 1)` whose complement is known, using
/// `Li_2(y) = zeta(2) - ln y ln(1-y) - Li_2(1-y)` above 1/2.
pub fn dilog_at(pt: &UnitPoint) -> XReal {
    let prec = pt.prec();
    let wp = prec + 16;
    if pt.y <= XReal::ratio(1, 2, 64) {
        return dilog_series(&pt.y, wp).with_prec(prec);
    }
    let ln_y = pt.ln().with_prec(wp);
    let ln_c = pt.c.with_prec(wp).ln();
    (zeta2(wp) - &ln_y * &ln_c - dilog_series(&pt.c, wp)).with_prec(prec)
}

/// Logarithmic integral `li(x) = gamma + ln(-ln x) + sum_{n>=1} ln^n x / (n! n)`
/// for `0 < x < 1`.
pub fn li_nielsen(x: &XReal) -> Result<XReal> {
    let pt = UnitPoint::new(x.clone())
        .map_err(|_| Error::domain("li_nielsen", format!("x = {} not in (0,1)", x.to_sci(6))))?;
    Ok(li_at(&pt))
}

/// `li` at a point of `(0, 1)` with known complement.
pub fn li_at(pt: &UnitPoint) -> XReal {
    let prec = pt.prec();
    let ln_x = pt.ln();
    // terms peak near e^{|ln x|}, which costs about 1.45 |ln x| bits
    let extra = (ln_x.abs().to_f64() * 1.45).ceil() as u32;
    let wp = prec + 16 + extra;
    let l = ln_x.with_prec(wp);
    let eps = XReal::pow2(-(wp as i32) - 8, 64);
    let mut sum = XReal::zero(wp);
    let mut pow = XReal::one(wp);
    for n in 1i64.. {
        pow = (&pow * &l).div_i64(n);
        let term = pow.div_i64(n);
        sum = sum + &term;
        if term.abs() < eps && n > 2 {
            break;
        }
    }
    let gamma = constants(wp).euler_gamma();
    (gamma + (-&l).ln() + sum).with_prec(prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dilog_special_values() {
        let p = 256;
        assert!(dilog(&XReal::zero(p)).unwrap().is_zero());
        let at1 = dilog(&XReal::one(p)).unwrap();
        assert_eq!(at1, XReal::pi(p).square().div_i64(6));
        let half = dilog(&XReal::ratio(1, 2, p)).unwrap();
        let ln2 = XReal::from_i64(2, p).ln();
        let expect = XReal::pi(p).square().div_i64(12) - ln2.square().div_i64(2);
        assert!((&half - &expect).abs().to_f64() < 1e-72);
        assert!((half.to_f64() - 0.582_240_526_5).abs() < 1e-9);
        assert!(dilog(&XReal::from_f64(1.5, p)).is_err());
        assert!(dilog(&XReal::from_f64(-0.1, p)).is_err());
    }

    #[test]
    fn dilog_above_half_matches_series() {
        // the defining series still converges at 0.7, just slowly
        let p = 128;
        let x = XReal::ratio(7, 10, p);
        let direct = dilog_series(&x, p + 16);
        assert!((&dilog(&x).unwrap() - &direct).abs().to_f64() < 1e-34);
    }

    #[test]
    fn li_at_inverse_e() {
        let p = 256;
        let x = XReal::from_i64(-1, p).exp();
        let v = li_nielsen(&x).unwrap();
        assert!((v.to_f64() + 0.219_383_934_395_520_3).abs() < 1e-15);
    }

    #[test]
    fn li_tends_to_zero_from_below() {
        let p = 192;
        let vals: Vec<f64> = ["1e-2", "1e-4", "1e-6"]
            .iter()
            .map(|s| li_nielsen(&XReal::parse(s, p).unwrap()).unwrap().to_f64())
            .collect();
        assert!(vals.iter().all(|v| *v < 0.0));
        assert!(vals[0].abs() > vals[1].abs() && vals[1].abs() > vals[2].abs());
        assert!(li_nielsen(&XReal::zero(p)).is_err());
        assert!(li_nielsen(&XReal::one(p)).is_err());
    }
}
