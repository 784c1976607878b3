//! Monic polynomials `p_n` with `x^n = int_0^inf p_n(x - ln z) e^-z dz`, and
//! the unit-interval representation of Stieltjes constants built on them.

use crate::constants::constants;
use crate::error::Result;
use crate::precision::{binomial_row, omega_at, UnitPoint, XReal};
use crate::quad::{integrate_halfline, integrate_unit, QuadOptions, QuadResult};

#[derive(Debug, Clone)]
pub struct CoppoPoly {
    /// `a_0..a_n` in the monomial basis; `a_n = 1`.
    coeffs: Vec<XReal>,
}

impl CoppoPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[XReal] {
        &self.coeffs
    }

    /// Horner evaluation at the precision of the coefficients.
    pub fn eval(&self, z: &XReal) -> XReal {
        let mut acc = XReal::zero(self.coeffs[0].prec());
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * z) + a;
        }
        acc
    }
}

/// Solves `sum_{l=0}^{n-k} (-1)^l C(k+l, l) Gamma^(l)(1) a_{k+l} = [k = n]`
/// by back-substitution from `a_n = 1`.
pub fn coppo_polynomial(n: usize, prec: u32) -> CoppoPoly {
    let c = constants(prec + 16);
    let g: Vec<XReal> = (0..=n as u32).map(|l| c.gamma_derivative_at_one(l)).collect();
    let rows: Vec<_> = (0..=n as u32).map(binomial_row).collect();
    let mut a = vec![XReal::zero(prec + 16); n + 1];
    a[n] = XReal::one(prec + 16);
    for k in (0..n).rev() {
        let mut acc = XReal::zero(prec + 16);
        for l in 1..=n - k {
            let t = (&g[l] * &a[k + l]).mul_integer(&rows[k + l][l]);
            acc = if l % 2 == 0 { acc + t } else { acc - t };
        }
        a[k] = -acc;
    }
    CoppoPoly {
        coeffs: a.into_iter().map(|v| v.with_prec(prec)).collect(),
    }
}

/// Quadrature of `int_0^inf p_n(x - ln z) e^-z dz`, which should equal `x^n`.
pub fn coppo_moment_check(n: usize, x: &XReal, opts: &QuadOptions) -> Result<QuadResult> {
    let poly = coppo_polynomial(n, opts.prec);
    let x = x.with_prec(opts.prec);
    integrate_halfline(|z| Ok(&poly.eval(&(&x - &z.ln())) * &(-z).exp()), opts)
}

/// `gamma_n = int_0^1 p_n(-ln ln(1/t)) [1/ln t - 1/(t-1)] dt`.
///
/// The bracket is the Omega kernel `1/(1-t) + 1/ln t`.
pub fn stieltjes_via_coppo(n: usize, opts: &QuadOptions) -> Result<QuadResult> {
    let poly = coppo_polynomial(n, opts.prec);
    integrate_unit(
        |pt: &UnitPoint| Ok(&poly.eval(&(-pt.ln_abs_ln())) * &omega_at(pt)),
        opts,
    )
}
