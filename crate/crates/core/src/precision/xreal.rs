use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

/// Smallest precision any [`XReal`] may carry.
pub const MIN_PRECISION: u32 = 64;

/// Working precision used when the caller does not choose one.
pub const DEFAULT_PRECISION: u32 = 256;

pub(crate) fn clamp_prec(prec: u32) -> u32 {
    prec.max(MIN_PRECISION)
}

/// Arbitrary-precision real number with an explicit precision in bits.
///
/// Binary operations between values of different precision are evaluated,
/// with a single correct rounding, at the larger of the two precisions.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct XReal(Float);

impl XReal {
    pub fn from_float(f: Float) -> Self {
        if f.prec() < MIN_PRECISION {
            XReal(Float::with_val(MIN_PRECISION, f))
        } else {
            XReal(f)
        }
    }

    pub fn from_f64(v: f64, prec: u32) -> Self {
        XReal(Float::with_val(clamp_prec(prec), v))
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        XReal(Float::with_val(clamp_prec(prec), v))
    }

    pub fn from_integer(v: &Integer, prec: u32) -> Self {
        XReal(Float::with_val(clamp_prec(prec), v))
    }

    pub fn from_rational(v: &Rational, prec: u32) -> Self {
        XReal(Float::with_val(clamp_prec(prec), v))
    }

    /// `num / den` rounded once.
    pub fn ratio(num: i64, den: i64, prec: u32) -> Self {
        XReal::from_rational(&Rational::from((num, den)), prec)
    }

    /// Parses a decimal literal such as `"0.5"` or `"-1.25e-3"`.
    pub fn parse(s: &str, prec: u32) -> Option<Self> {
        let parsed = Float::parse(s).ok()?;
        Some(XReal(Float::with_val(clamp_prec(prec), parsed)))
    }

    pub fn zero(prec: u32) -> Self {
        XReal(Float::new(clamp_prec(prec)))
    }

    pub fn one(prec: u32) -> Self {
        XReal::from_i64(1, prec)
    }

    pub fn pi(prec: u32) -> Self {
        XReal(Float::with_val(clamp_prec(prec), Constant::Pi))
    }

    /// `2^exp` exactly.
    pub fn pow2(exp: i32, prec: u32) -> Self {
        let mut f = Float::with_val(clamp_prec(prec), 1);
        f <<= exp;
        XReal(f)
    }

    /// Overwrites `self` with `a - b`, rounded to the precision `self` already has.
    pub fn assign_sub(&mut self, a: &XReal, b: &XReal) {
        use rug::Assign;
        self.0.assign(&a.0 - &b.0);
    }

    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    /// Copy rounded (or zero-extended) to `prec` bits.
    pub fn with_prec(&self, prec: u32) -> Self {
        XReal(Float::with_val(clamp_prec(prec), &self.0))
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    pub fn into_float(self) -> Float {
        self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.cmp0() == Some(Ordering::Greater)
    }

    pub fn is_negative(&self) -> bool {
        self.0.cmp0() == Some(Ordering::Less)
    }

    /// Sign as -1, 0 or 1; `None` for NaN.
    pub fn signum_i(&self) -> Option<i32> {
        self.0.cmp0().map(|o| o as i32)
    }

    /// Binary exponent `e` with `2^(e-1) <= |x| < 2^e`; `None` for zero and non-finite values.
    pub fn exponent(&self) -> Option<i32> {
        self.0.get_exp()
    }

    pub fn abs(&self) -> Self {
        XReal(self.0.clone().abs())
    }

    pub fn recip(&self) -> Self {
        XReal(self.0.clone().recip())
    }

    pub fn square(&self) -> Self {
        XReal(self.0.clone().square())
    }

    pub fn sqrt(&self) -> Self {
        XReal(self.0.clone().sqrt())
    }

    pub fn ln(&self) -> Self {
        XReal(self.0.clone().ln())
    }

    /// `ln(1 + x)` without cancellation for small `x`.
    pub fn ln_1p(&self) -> Self {
        XReal(self.0.clone().ln_1p())
    }

    pub fn exp(&self) -> Self {
        XReal(self.0.clone().exp())
    }

    /// `exp(x) - 1` without cancellation for small `x`.
    pub fn exp_m1(&self) -> Self {
        XReal(self.0.clone().exp_m1())
    }

    pub fn sin(&self) -> Self {
        XReal(self.0.clone().sin())
    }

    pub fn cos(&self) -> Self {
        XReal(self.0.clone().cos())
    }

    pub fn sinh(&self) -> Self {
        XReal(self.0.clone().sinh())
    }

    pub fn cosh(&self) -> Self {
        XReal(self.0.clone().cosh())
    }

    pub fn powi(&self, n: i32) -> Self {
        XReal(self.0.clone().pow(n))
    }

    pub fn pow(&self, e: &XReal) -> Self {
        let p = self.prec().max(e.prec());
        XReal(Float::with_val(p, (&self.0).pow(&e.0)))
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        XReal(Float::with_val(self.prec(), &self.0 * k))
    }

    pub fn div_i64(&self, k: i64) -> Self {
        XReal(Float::with_val(self.prec(), &self.0 / k))
    }

    pub fn mul_integer(&self, k: &Integer) -> Self {
        XReal(Float::with_val(self.prec(), &self.0 * k))
    }

    pub fn min_ref<'a>(&'a self, other: &'a XReal) -> &'a XReal {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max_ref<'a>(&'a self, other: &'a XReal) -> &'a XReal {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Decimal rendering with `digits` significant digits, positional notation
    /// for moderate exponents and `d.ddde±X` otherwise.
    ///
    /// Rounding is to nearest, so equal values always render identically.
    pub fn to_decimal(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.0.is_nan() {
            return "NaN".into();
        }
        if self.0.is_infinite() {
            return if self.0.is_sign_negative() { "-inf" } else { "inf" }.into();
        }
        if self.0.is_zero() {
            return "0".into();
        }
        let (neg, mantissa, exp) = self.0.to_sign_string_exp(10, Some(digits));
        let exp = exp.unwrap_or(0);
        let mantissa = mantissa.trim_end_matches('0');
        let mantissa = if mantissa.is_empty() { "0" } else { mantissa };
        let mut out = String::with_capacity(digits + 8);
        if neg {
            out.push('-');
        }
        // value = 0.mantissa * 10^exp
        let len = mantissa.len() as i32;
        if (-20..=0).contains(&exp) {
            out.push_str("0.");
            for _ in 0..(-exp) {
                out.push('0');
            }
            out.push_str(mantissa);
        } else if exp > 0 && exp <= 40 {
            if exp >= len {
                out.push_str(mantissa);
                for _ in 0..(exp - len) {
                    out.push('0');
                }
            } else {
                out.push_str(&mantissa[..exp as usize]);
                out.push('.');
                out.push_str(&mantissa[exp as usize..]);
            }
        } else {
            out.push_str(&mantissa[..1]);
            if len > 1 {
                out.push('.');
                out.push_str(&mantissa[1..]);
            }
            out.push_str(&format!("e{}", exp - 1));
        }
        out
    }

    /// Short scientific rendering, used for residuals.
    pub fn to_sci(&self, digits: usize) -> String {
        if self.0.is_zero() {
            return "0".into();
        }
        if !self.0.is_finite() {
            return self.to_decimal(digits);
        }
        let (neg, mantissa, exp) = self.0.to_sign_string_exp(10, Some(digits.max(1)));
        let exp = exp.unwrap_or(0);
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push_str(&mantissa[..1]);
        if mantissa.len() > 1 {
            out.push('.');
            out.push_str(&mantissa[1..]);
        }
        out.push_str(&format!("e{}", exp - 1));
        out
    }

    /// Number of decimal digits that `prec` bits can faithfully represent,
    /// keeping a few bits in reserve.
    pub fn decimal_digits_for(prec: u32) -> usize {
        (((prec.saturating_sub(8)) as f64) * std::f64::consts::LOG10_2).floor() as usize
    }
}

impl fmt::Debug for XReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "XReal({}; {} bits)", self.to_decimal(24), self.prec())
    }
}

impl fmt::Display for XReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or_else(|| XReal::decimal_digits_for(self.prec()));
        f.write_str(&self.to_decimal(digits))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr<&XReal> for &XReal {
            type Output = XReal;
            fn $m(self, rhs: &XReal) -> XReal {
                let p = self.prec().max(rhs.prec());
                XReal(Float::with_val(p, &self.0 $op &rhs.0))
            }
        }
        impl $tr<XReal> for &XReal {
            type Output = XReal;
            fn $m(self, rhs: XReal) -> XReal {
                self $op &rhs
            }
        }
        impl $tr<&XReal> for XReal {
            type Output = XReal;
            fn $m(self, rhs: &XReal) -> XReal {
                &self $op rhs
            }
        }
        impl $tr<XReal> for XReal {
            type Output = XReal;
            fn $m(self, rhs: XReal) -> XReal {
                &self $op &rhs
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);
binop!(Div, div, /);

impl Neg for XReal {
    type Output = XReal;
    fn neg(self) -> XReal {
        XReal(-self.0)
    }
}

impl Neg for &XReal {
    type Output = XReal;
    fn neg(self) -> XReal {
        XReal(Float::with_val(self.prec(), -&self.0))
    }
}

impl std::iter::Sum for XReal {
    /// Left-to-right sum; an empty iterator yields a zero at [`MIN_PRECISION`].
    fn sum<I: Iterator<Item = XReal>>(iter: I) -> XReal {
        iter.fold(XReal::zero(MIN_PRECISION), |acc, x| acc + x)
    }
}
