//! Hasse-type double series `sum_n 1/(n+1) sum_j C(n,j) (-1)^j f(u+j)` for
//! Stieltjes constants, digamma and zeta, plus the finite Bernoulli form.
//!
//! Inner sums are taken as iterated forward differences of a precomputed
//! table of `f(u + j)`, at a precision raised by `guard_bits` to absorb the
//! `~2^n` cancellation of the alternating binomial sums.

use rug::Rational;

use crate::error::{Error, Result};
use crate::par::{for_each_mut, map_range, Exec};
use crate::precision::{binomial_row, factorial, richardson_extrapolate, XReal};

#[derive(Debug, Clone)]
pub struct HasseConfig {
    /// Outer truncation of the double series.
    pub n_max: usize,
    /// Extra bits for the inner sums; `None` means `n_max + 128`.
    pub guard_bits: Option<u32>,
    pub richardson_depth: usize,
    /// The series is evaluated at `u + M` with the smallest integer `M >= 0`
    /// making `u + M >= min_argument`, and the `M` leading terms of
    /// `zeta(s, u)` are added back exactly. Set to 0 to sum the series at
    /// `u` itself.
    pub min_argument: u32,
    /// Largest acceptable error estimate.
    pub tolerance: f64,
    pub exec: Exec,
}

impl Default for HasseConfig {
    fn default() -> Self {
        HasseConfig {
            n_max: 2048,
            guard_bits: None,
            richardson_depth: 4,
            min_argument: 24,
            tolerance: 1e-6,
            exec: Exec::default(),
        }
    }
}

impl HasseConfig {
    pub fn guard(&self) -> u32 {
        self.guard_bits.unwrap_or(self.n_max as u32 + 128)
    }

    fn check(&self, op: &'static str) -> Result<()> {
        if self.n_max < 16 {
            return Err(Error::domain(op, format!("n_max = {} < 16", self.n_max)));
        }
        if self.guard() < self.n_max as u32 {
            return Err(Error::PrecisionTooLow {
                op,
                have: self.guard(),
                need: self.n_max as u32,
            });
        }
        Ok(())
    }
}

/// A value obtained from a Hasse-type series.
#[derive(Debug, Clone)]
pub struct HasseValue {
    pub value: XReal,
    pub error_estimate: XReal,
    /// Outer terms summed.
    pub terms: usize,
    /// Integer shift applied to the argument before summing.
    pub shift: u32,
}

#[derive(Debug, Clone)]
pub struct StieltjesValue {
    pub p: u32,
    pub u: XReal,
    pub value: XReal,
    pub error_estimate: XReal,
}

/// `d_n = sum_{j<=n} C(n,j) (-1)^j F_j` for every `n < F.len()`, by repeated
/// differencing `F_j <- F_j - F_{j+1}`. Values keep the precision of `f`.
pub fn alternating_binomial_sums(f: &[XReal], exec: Exec) -> Vec<XReal> {
    if f.is_empty() {
        return Vec::new();
    }
    let mut cur = f.to_vec();
    let mut next = f.to_vec();
    let mut out = Vec::with_capacity(f.len());
    out.push(cur[0].clone());
    for len in (1..f.len()).rev() {
        {
            let src = &cur;
            for_each_mut(&mut next[..len], exec, |j, slot| slot.assign_sub(&src[j], &src[j + 1]));
        }
        std::mem::swap(&mut cur, &mut next);
        out.push(cur[0].clone());
    }
    out
}

/// Inner sum `sum_{j=0}^n C(n,j) (-1)^j (u+j)^(r-1) ln^p(u+j)` computed
/// directly with `n + 64` guard bits; the result has the precision of `u`.
pub fn inner_alt_sum(n: u32, u: &XReal, p: u32, r: i32) -> Result<XReal> {
    if !u.is_positive() {
        return Err(Error::domain("inner_alt_sum", format!("u = {} <= 0", u.to_sci(6))));
    }
    let prec = u.prec();
    let wp = prec + n + 64;
    let uw = u.with_prec(wp);
    let row = binomial_row(n);
    let mut sum = XReal::zero(wp);
    for (j, c) in row.iter().enumerate() {
        let x = &uw + &XReal::from_i64(j as i64, wp);
        let t = (&x.powi(r - 1) * &log_power(&x, p)).mul_integer(c);
        sum = if j % 2 == 0 { sum + t } else { sum - t };
    }
    Ok(sum.with_prec(prec))
}

fn log_power(x: &XReal, p: u32) -> XReal {
    if p == 0 {
        XReal::one(x.prec())
    } else {
        x.ln().powi(p as i32)
    }
}

fn shift_for(u: &XReal, cfg: &HasseConfig) -> u32 {
    let gap = cfg.min_argument as f64 - u.to_f64();
    if gap > 0.0 {
        gap.ceil() as u32
    } else {
        0
    }
}

/// Outer terms `T_n = 1/(n+1) sum_j C(n,j)(-1)^j ln^q(v+j)` for several
/// powers `q` at once, sharing the logarithm table.
fn outer_terms(v: &XReal, powers: &[u32], n_max: usize, guard: u32, exec: Exec) -> Vec<Vec<XReal>> {
    let wp = v.prec() + guard;
    let vw = v.with_prec(wp);
    let logs = map_range(n_max + 1, exec, |j| (&vw + &XReal::from_i64(j as i64, wp)).ln());
    powers
        .iter()
        .map(|&q| {
            let f: Vec<XReal> = map_range(logs.len(), exec, |j| logs[j].powi(q as i32));
            alternating_binomial_sums(&f, exec)
                .into_iter()
                .enumerate()
                .map(|(n, d)| d.div_i64(n as i64 + 1).with_prec(v.prec() + 64))
                .collect()
        })
        .collect()
}

/// Unshifted outer terms of the Stieltjes series at `u`,
/// `T_n = 1/(n+1) sum_j C(n,j) (-1)^j ln^(p+1)(u+j)` for `n <= n_max`.
pub fn hasse_outer_terms(p: u32, u: &XReal, n_max: usize, exec: Exec) -> Result<Vec<XReal>> {
    if !u.is_positive() {
        return Err(Error::domain("hasse_outer_terms", format!("u = {} <= 0", u.to_sci(6))));
    }
    let mut t = outer_terms(u, &[p + 1], n_max, n_max as u32 + 128, exec);
    Ok(t.swap_remove(0))
}

/// Extrapolated sum of outer terms from a ladder of partial sums at
/// `n_max / 2^k`, with the spread between the two finest extrapolants as
/// error estimate.
fn ladder_sum(terms: &[XReal], depth: usize, prec: u32) -> (XReal, XReal) {
    let mut partial = Vec::with_capacity(terms.len());
    let mut acc = XReal::zero(prec + 64);
    for t in terms {
        acc = acc + t;
        partial.push(acc.clone());
    }
    let n_max = terms.len() - 1;
    let mut rungs: Vec<usize> = Vec::new();
    let mut n = n_max + 1;
    while n >= 2 && rungs.len() < depth + 2 {
        rungs.push(n);
        n /= 2;
    }
    rungs.reverse();
    let point = |n: usize| (n as u64, partial[n - 1].clone());
    let fine: Vec<_> = rungs[rungs.len().saturating_sub(depth + 1)..]
        .iter()
        .map(|&n| point(n))
        .collect();
    let coarse: Vec<_> = rungs[..rungs.len() - 1]
        .iter()
        .rev()
        .take(depth + 1)
        .rev()
        .map(|&n| point(n))
        .collect();
    let best = richardson_extrapolate(&fine);
    let prev = richardson_extrapolate(&coarse);
    let floor = XReal::pow2(8 - prec as i32, 64);
    let err = (&best - &prev).abs().max_ref(&floor).clone();
    (best.with_prec(prec), err)
}

fn finish(op: &'static str, value: XReal, err: XReal, cfg: &HasseConfig) -> Result<(XReal, XReal)> {
    if err.to_f64() > cfg.tolerance {
        return Err(Error::NonConvergence {
            op,
            work: cfg.n_max as u64,
            estimate: err.to_f64(),
        });
    }
    Ok((value, err))
}

/// `gamma_p(u)` for `p = 0..=p_max` from
/// `gamma_p(u) = -1/(p+1) sum_n 1/(n+1) sum_j C(n,j)(-1)^j ln^(p+1)(u+j)`.
pub fn stieltjes_gammas(p_max: u32, u: &XReal, cfg: &HasseConfig) -> Result<Vec<StieltjesValue>> {
    cfg.check("stieltjes_gamma")?;
    if !u.is_positive() {
        return Err(Error::domain("stieltjes_gamma", format!("u = {} <= 0", u.to_sci(6))));
    }
    let prec = u.prec();
    let shift = shift_for(u, cfg);
    let v = u + &XReal::from_i64(shift as i64, prec);
    let powers: Vec<u32> = (1..=p_max + 1).collect();
    let tables = outer_terms(&v, &powers, cfg.n_max, cfg.guard(), cfg.exec);
    let wp = prec + 32;
    let mut out = Vec::with_capacity(tables.len());
    for (p, terms) in (0..=p_max).zip(tables) {
        let (sum, err) = ladder_sum(&terms, cfg.richardson_depth, wp);
        let scale = XReal::from_i64(p as i64 + 1, wp);
        let mut value = -(&sum / &scale);
        // gamma_p(u) = gamma_p(u + M) + sum_{k<M} ln^p(u+k) / (u+k)
        for k in 0..shift {
            let x = &u.with_prec(wp) + &XReal::from_i64(k as i64, wp);
            value = value + &log_power(&x, p) / &x;
        }
        let err = &err / &scale;
        let (value, err) = finish("stieltjes_gamma", value.with_prec(prec), err, cfg)?;
        out.push(StieltjesValue {
            p,
            u: u.clone(),
            value,
            error_estimate: err,
        });
    }
    Ok(out)
}

/// `gamma_p(u)`.
pub fn stieltjes_gamma(p: u32, u: &XReal, cfg: &HasseConfig) -> Result<StieltjesValue> {
    let mut all = stieltjes_gammas(p, u, cfg)?;
    Ok(all.swap_remove(p as usize))
}

/// Digamma from `psi(u) = sum_n 1/(n+1) sum_j C(n,j) (-1)^j ln(u+j)`.
pub fn digamma_hasse(u: &XReal, cfg: &HasseConfig) -> Result<HasseValue> {
    cfg.check("digamma_hasse")?;
    if !u.is_positive() {
        return Err(Error::domain("digamma_hasse", format!("u = {} <= 0", u.to_sci(6))));
    }
    let prec = u.prec();
    let shift = shift_for(u, cfg);
    let v = u + &XReal::from_i64(shift as i64, prec);
    let terms = outer_terms(&v, &[1], cfg.n_max, cfg.guard(), cfg.exec).swap_remove(0);
    let wp = prec + 32;
    let (sum, err) = ladder_sum(&terms, cfg.richardson_depth, wp);
    // psi(u) = psi(u + M) - sum_{k<M} 1/(u+k)
    let mut value = sum;
    for k in 0..shift {
        value = value - (&u.with_prec(wp) + &XReal::from_i64(k as i64, wp)).recip();
    }
    let (value, err) = finish("digamma_hasse", value.with_prec(prec), err, cfg)?;
    Ok(HasseValue {
        value,
        error_estimate: err,
        terms: cfg.n_max + 1,
        shift,
    })
}

/// `eta_0..eta_K` from `gamma_0..gamma_K` by the recurrence
/// `eta_n = (-1)^(n+1) [ (n+1)/n! gamma_n + sum_{k<n} (-1)^(k+1) / (n-k-1)! gamma_{n-k-1} eta_k ]`.
pub fn eta_sequence(gammas: &[XReal]) -> Vec<XReal> {
    let mut eta: Vec<XReal> = Vec::with_capacity(gammas.len());
    for n in 0..gammas.len() {
        let prec = gammas[n].prec();
        let fact = |m: usize| XReal::from_integer(&factorial(m as u32), prec);
        let mut acc = &gammas[n].mul_i64(n as i64 + 1) / &fact(n);
        for (k, ek) in eta.iter().enumerate() {
            let t = &(&gammas[n - k - 1] * ek) / &fact(n - k - 1);
            acc = if k % 2 == 0 { acc - t } else { acc + t };
        }
        eta.push(if n % 2 == 0 { -acc } else { acc });
    }
    eta
}

/// Partial sum up to `n = N` of
/// `S(r,u,p) = sum_{n>=1} 1/(n+1) sum_j C(n,j)(-1)^j (u+j)^(r-1) ln^p(u+j)`,
/// or of `S_0` (the same sum from `n = 0`) when `include_n0` is set.
pub fn s_partial(r: i32, u: &XReal, p: u32, n: usize, include_n0: bool) -> Result<XReal> {
    if !u.is_positive() {
        return Err(Error::domain("s_partial", format!("u = {} <= 0", u.to_sci(6))));
    }
    if n == 0 {
        return Err(Error::domain("s_partial", "N must be >= 1"));
    }
    let prec = u.prec();
    let wp = prec + n as u32 + 64;
    let uw = u.with_prec(wp);
    let f: Vec<XReal> = (0..=n)
        .map(|j| {
            let x = &uw + &XReal::from_i64(j as i64, wp);
            &x.powi(r - 1) * &log_power(&x, p)
        })
        .collect();
    let d = alternating_binomial_sums(&f, Exec::Sequential);
    let start = if include_n0 { 0 } else { 1 };
    let mut sum = XReal::zero(wp);
    for (k, dk) in d.iter().enumerate().skip(start) {
        sum = sum + dk.div_i64(k as i64 + 1);
    }
    Ok(sum.with_prec(prec))
}

/// `B_k(a) = sum_{n=0}^k 1/(n+1) sum_j C(n,j)(-1)^j (a+j)^k`; the outer sum
/// stops at `n = k` because higher differences of a degree-`k` polynomial vanish.
pub fn bernoulli_hasse(k: u32, a: &XReal) -> XReal {
    let prec = a.prec();
    let wp = prec + k + 64;
    let aw = a.with_prec(wp);
    let f: Vec<XReal> = (0..=k)
        .map(|j| (&aw + &XReal::from_i64(j as i64, wp)).powi(k as i32))
        .collect();
    let d = alternating_binomial_sums(&f, Exec::Sequential);
    let mut sum = XReal::zero(wp);
    for (n, dn) in d.iter().enumerate() {
        sum = sum + dn.div_i64(n as i64 + 1);
    }
    sum.with_prec(prec)
}

/// Partial sums `S_0..S_N` of `sum_n 1/(n+1) sum_j C(n,j)(-1)^j (u+j)^(1-s)`,
/// whose limit is `(s-1) zeta(s, u)`.
pub fn hasse_zeta_partial_sums(s: u32, u: &XReal, n: usize) -> Result<Vec<XReal>> {
    if s < 2 {
        return Err(Error::domain("hasse_zeta_check", format!("s = {s} < 2")));
    }
    if !u.is_positive() {
        return Err(Error::domain("hasse_zeta_check", format!("u = {} <= 0", u.to_sci(6))));
    }
    let prec = u.prec();
    let wp = prec + n as u32 + 64;
    let uw = u.with_prec(wp);
    let f: Vec<XReal> = (0..=n)
        .map(|j| (&uw + &XReal::from_i64(j as i64, wp)).powi(1 - s as i32))
        .collect();
    let mut acc = XReal::zero(wp);
    Ok(alternating_binomial_sums(&f, Exec::default())
        .into_iter()
        .enumerate()
        .map(|(k, d)| {
            acc = &acc + &d.div_i64(k as i64 + 1);
            acc.with_prec(prec)
        })
        .collect())
}

/// Partial sum to `n = N` of the Hasse series for `(s-1) zeta(s, u)`.
pub fn hasse_zeta_check(s: u32, u: &XReal, n: usize) -> Result<XReal> {
    let mut sums = hasse_zeta_partial_sums(s, u, n)?;
    Ok(sums.swap_remove(n))
}

/// Harmonic number `H_n` as an exact rational.
pub fn harmonic(n: u64) -> Rational {
    let mut h = Rational::new();
    for k in 1..=n {
        h += Rational::from((1, k));
    }
    h
}
