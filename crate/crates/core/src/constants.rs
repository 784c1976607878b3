//! Per-precision pool of the constants shared by many evaluators: pi,
//! `ln 2pi`, Euler's gamma, `zeta(n)`, `zeta'(2)`, `zeta'(-1)` and
//! `Gamma^(m)(1)`. Each entry is computed once and then only read.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::precision::XReal;
use crate::zeta;

/// Largest `n` for which `zeta(n)` and `Gamma^(n)(1)` are memoized.
pub const MEMO_LIMIT: u32 = 64;

#[derive(Debug)]
pub struct Constants {
    prec: u32,
    pi: OnceLock<XReal>,
    ln_2pi: OnceLock<XReal>,
    gamma: OnceLock<XReal>,
    zeta: Vec<OnceLock<XReal>>,
    zeta_prime_2: OnceLock<XReal>,
    zeta_prime_minus_one: OnceLock<XReal>,
    gamma_deriv: Vec<OnceLock<XReal>>,
}

/// Shared constants at `prec` bits.
pub fn constants(prec: u32) -> Arc<Constants> {
    static POOL: OnceLock<Mutex<HashMap<u32, Arc<Constants>>>> = OnceLock::new();
    let pool = POOL.get_or_init(Default::default);
    let mut map = pool.lock().unwrap_or_else(|e| e.into_inner());
    map.entry(prec)
        .or_insert_with(|| Arc::new(Constants::new(prec)))
        .clone()
}

impl Constants {
    fn new(prec: u32) -> Self {
        let slots = || (0..=MEMO_LIMIT).map(|_| OnceLock::new()).collect();
        Constants {
            prec,
            pi: OnceLock::new(),
            ln_2pi: OnceLock::new(),
            gamma: OnceLock::new(),
            zeta: slots(),
            zeta_prime_2: OnceLock::new(),
            zeta_prime_minus_one: OnceLock::new(),
            gamma_deriv: slots(),
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn pi(&self) -> XReal {
        self.pi.get_or_init(|| XReal::pi(self.prec)).clone()
    }

    pub fn ln_2pi(&self) -> XReal {
        self.ln_2pi
            .get_or_init(|| XReal::pi(self.prec + 16).mul_i64(2).ln().with_prec(self.prec))
            .clone()
    }

    pub fn euler_gamma(&self) -> XReal {
        self.gamma.get_or_init(|| zeta::euler_gamma(self.prec)).clone()
    }

    /// `zeta(n)` for `n >= 2`.
    pub fn zeta(&self, n: u32) -> XReal {
        let compute = || match zeta::riemann_zeta(n, self.prec) {
            Ok(v) => v,
            Err(_) => panic!("zeta({n}) requested from the constant pool"),
        };
        match self.zeta.get(n as usize) {
            Some(slot) => slot.get_or_init(compute).clone(),
            None => compute(),
        }
    }

    pub fn zeta_prime_2(&self) -> XReal {
        self.zeta_prime_2.get_or_init(|| zeta::zeta_prime_2(self.prec)).clone()
    }

    pub fn zeta_prime_minus_one(&self) -> XReal {
        self.zeta_prime_minus_one
            .get_or_init(|| zeta::zeta_prime_minus_one(self.prec))
            .clone()
    }

    /// `Gamma^(m)(1)`.
    pub fn gamma_derivative_at_one(&self, m: u32) -> XReal {
        let compute = || zeta::gamma_derivative_at_one_uncached(m, self.prec);
        match self.gamma_deriv.get(m as usize) {
            Some(slot) => slot.get_or_init(compute).clone(),
            None => compute(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pool_is_shared_per_precision() {
        let a = constants(192);
        let b = constants(192);
        assert!(Arc::ptr_eq(&a, &b));
        assert!(!Arc::ptr_eq(&a, &constants(200)));
        assert_eq!(a.euler_gamma(), b.euler_gamma());
        assert_eq!(a.zeta(3).prec(), 192);
    }

    #[test]
    fn concurrent_readers_agree() {
        let vals: Vec<XReal> = std::thread::scope(|s| {
            let hs: Vec<_> = (0..4).map(|_| s.spawn(|| constants(160).zeta(5))).collect();
            hs.into_iter().map(|h| h.join().unwrap()).collect()
        });
        assert!(vals.windows(2).all(|w| w[0] == w[1]));
    }
}
