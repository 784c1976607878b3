//! Exact integer and rational sequences shared by the numerical modules.

use std::sync::{Mutex, OnceLock};

use rug::{Integer, Rational};

use crate::error::{Error, Result};

/// Exact binomial coefficient `C(n, k)`.
pub fn binomial_exact(n: u64, k: u64) -> Result<Integer> {
    if k > n {
        return Err(Error::domain("binomial_exact", format!("k = {k} > n = {n}")));
    }
    let n = u32::try_from(n).map_err(|_| Error::domain("binomial_exact", "n exceeds u32"))?;
    Ok(Integer::from(Integer::binomial_u(n, k as u32)))
}

pub fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

/// Row `n` of Pascal's triangle, `C(n, 0..=n)`.
pub fn binomial_row(n: u32) -> Vec<Integer> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = Integer::from(1);
    row.push(c.clone());
    for k in 0..n {
        c *= n - k;
        c /= k + 1;
        row.push(c.clone());
    }
    row
}

fn bernoulli_cache() -> &'static Mutex<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![Rational::from(1), Rational::from((-1, 2))]))
}

/// Bernoulli number `B_n` with the convention `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> Rational {
    let mut cache = bernoulli_cache().lock().unwrap_or_else(|e| e.into_inner());
    while cache.len() <= n {
        let m = cache.len();
        if m % 2 == 1 {
            cache.push(Rational::new());
            continue;
        }
        // sum_{k=0}^{m} C(m+1, k) B_k = 0
        let row = binomial_row(m as u32 + 1);
        let mut acc = Rational::new();
        for (k, b) in cache.iter().enumerate() {
            if b.cmp0().is_ne() {
                acc += Rational::from(&row[k] * b);
            }
        }
        let bm = -acc / Rational::from(m as u64 + 1);
        cache.push(bm);
    }
    cache[n].clone()
}

fn gregory_cache() -> &'static Mutex<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![Rational::from(1)]))
}

/// Coefficient `c_m` of `x / ln(1 + x) = sum_m c_m x^m` (Gregory coefficients,
/// `c_1 = 1/2`, `c_2 = -1/12`, ...).
pub fn gregory(m: usize) -> Rational {
    let mut cache = gregory_cache().lock().unwrap_or_else(|e| e.into_inner());
    while cache.len() <= m {
        let j = cache.len();
        // ln(1+x)/x = sum_k (-1)^k x^k / (k+1); reciprocal series.
        let mut acc = Rational::new();
        for k in 1..=j {
            let a_k = Rational::from((if k % 2 == 0 { 1 } else { -1 }, k as i64 + 1));
            acc += a_k * &cache[j - k];
        }
        cache.push(-acc);
    }
    cache[m].clone()
}
