//! Summation of slowly convergent series with optional Richardson
//! extrapolation on a geometric ladder of partial sums.

use crate::error::{Error, Result};
use crate::precision::xreal::XReal;

/// Default term budget for [`sum_series`].
pub const DEFAULT_MAX_TERMS: u64 = 1 << 22;

/// Raw terms that must fall below `tolerance / 16` in a row before plain
/// summation stops.
const QUIET_RUN: usize = 8;

/// First rung of the Richardson ladder (number of terms).
const LADDER_BASE: u64 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Acceleration {
    None,
    /// Polynomial extrapolation in `1/N` of degree `depth` over partial sums
    /// at `N = 16, 32, 64, ...` terms.
    Richardson {
        depth: usize,
    },
}

impl Default for Acceleration {
    fn default() -> Self {
        Acceleration::Richardson { depth: 4 }
    }
}

#[derive(Debug, Clone)]
pub struct SeriesResult {
    pub value: XReal,
    pub terms_used: u64,
    pub error_estimate: XReal,
    pub converged: bool,
}

/// Sums `term(first) + term(first + 1) + ...` to `tolerance`.
pub fn sum_series<F>(term: F, first: u64, tolerance: &XReal, acceleration: Acceleration) -> Result<SeriesResult>
where
    F: FnMut(u64) -> XReal,
{
    sum_series_with_budget(term, first, tolerance, acceleration, DEFAULT_MAX_TERMS)
}

pub fn sum_series_with_budget<F>(
    term: F,
    first: u64,
    tolerance: &XReal,
    acceleration: Acceleration,
    max_terms: u64,
) -> Result<SeriesResult>
where
    F: FnMut(u64) -> XReal,
{
    if !tolerance.is_positive() {
        return Err(Error::domain("sum_series", "tolerance must be positive"));
    }
    match acceleration {
        Acceleration::None => sum_plain(term, first, tolerance, max_terms),
        Acceleration::Richardson { depth } => sum_richardson(term, first, tolerance, depth.max(1), max_terms),
    }
}

fn sum_plain<F>(mut term: F, first: u64, tolerance: &XReal, max_terms: u64) -> Result<SeriesResult>
where
    F: FnMut(u64) -> XReal,
{
    let quiet = tolerance.div_i64(16);
    let mut sum = XReal::zero(tolerance.prec());
    let mut run = 0usize;
    let mut prev_abs: Option<XReal> = None;
    let mut last_abs = XReal::zero(64);
    for used in 1..=max_terms {
        let t = term(first + used - 1);
        let a = t.abs();
        sum = sum + &t;
        if a < quiet {
            run += 1;
        } else {
            run = 0;
        }
        if run >= QUIET_RUN {
            // geometric tail when the terms contract, otherwise an n * |t_n| guess
            let est = match prev_abs.as_ref() {
                _ if a.is_zero() => XReal::zero(64),
                Some(pa) if !pa.is_zero() => {
                    let rho = &a / pa;
                    if rho < XReal::from_f64(0.95, 64) {
                        &(&a * &rho) / &(XReal::one(64) - &rho)
                    } else {
                        a.mul_i64(used as i64)
                    }
                }
                _ => a.mul_i64(used as i64),
            };
            let converged = est <= *tolerance;
            return Ok(SeriesResult {
                value: sum,
                terms_used: used,
                error_estimate: est,
                converged,
            });
        }
        prev_abs = Some(std::mem::replace(&mut last_abs, a));
    }
    Err(Error::NonConvergence {
        op: "sum_series",
        work: max_terms,
        estimate: last_abs.to_f64(),
    })
}

fn sum_richardson<F>(mut term: F, first: u64, tolerance: &XReal, depth: usize, max_terms: u64) -> Result<SeriesResult>
where
    F: FnMut(u64) -> XReal,
{
    let prec = tolerance.prec();
    let mut sum = XReal::zero(prec);
    let mut used = 0u64;
    let mut rung = LADDER_BASE;
    let mut ladder: Vec<(u64, XReal)> = Vec::new();
    let mut previous: Option<XReal> = None;
    while rung <= max_terms {
        while used < rung {
            sum = sum + term(first + used);
            used += 1;
        }
        ladder.push((rung, sum.clone()));
        if ladder.len() > depth {
            let tail = &ladder[ladder.len() - depth - 1..];
            let extrap = richardson_extrapolate(tail);
            if let Some(prev) = previous.as_ref() {
                let est = (&extrap - prev).abs();
                if est <= *tolerance {
                    return Ok(SeriesResult {
                        value: extrap,
                        terms_used: used,
                        error_estimate: est,
                        converged: true,
                    });
                }
            }
            previous = Some(extrap);
        }
        rung *= 2;
    }
    let estimate = match (previous, ladder.last()) {
        (Some(p), Some((_, s))) => (&p - s).abs().to_f64(),
        _ => f64::INFINITY,
    };
    Err(Error::NonConvergence {
        op: "sum_series",
        work: used,
        estimate,
    })
}

/// Neville evaluation at `h = 0` of the polynomial in `h = 1/N` through the
/// given `(N, S(N))` points.
pub fn richardson_extrapolate(points: &[(u64, XReal)]) -> XReal {
    let prec = points.iter().map(|(_, s)| s.prec()).max().unwrap_or(64);
    let h: Vec<XReal> = points
        .iter()
        .map(|(n, _)| XReal::one(prec).div_i64(*n as i64))
        .collect();
    let mut p: Vec<XReal> = points.iter().map(|(_, s)| s.clone()).collect();
    let m = p.len();
    for k in 1..m {
        for i in 0..m - k {
            // P_{i..i+k}(0) = (h_{i+k} P_{i..i+k-1} - h_i P_{i+1..i+k}) / (h_{i+k} - h_i)
            let num = &(&h[i + k] * &p[i]) - &(&h[i] * &p[i + 1]);
            p[i] = &num / &(&h[i + k] - &h[i]);
        }
    }
    p.swap_remove(0)
}
