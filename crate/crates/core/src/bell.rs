//! Integer partitions and exact complete Bell polynomials `Y_n`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::precision::{factorial, XReal};

/// A partition of `n` by multiplicities: `k_i` parts equal to `i`, with
/// `sum_i i * k_i = n`. Only non-zero multiplicities are stored, by
/// increasing part size.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    n: u32,
    parts: Vec<(u32, u32)>,
}

impl Partition {
    pub fn n(&self) -> u32 {
        self.n
    }

    /// `(part, multiplicity)` pairs with non-zero multiplicity.
    pub fn parts(&self) -> &[(u32, u32)] {
        &self.parts
    }

    /// `k_i`, the number of parts equal to `i`.
    pub fn multiplicity(&self, i: u32) -> u32 {
        self.parts.iter().find(|(p, _)| *p == i).map_or(0, |(_, k)| *k)
    }

    /// Dense `[k_1, ..., k_n]`.
    pub fn dense(&self) -> Vec<u32> {
        let mut v = vec![0; self.n as usize];
        for &(p, k) in &self.parts {
            v[p as usize - 1] = k;
        }
        v
    }

    fn monomial(&self) -> Monomial {
        Monomial(self.parts.clone())
    }
}

/// All partitions of `n`, ordered as in the classical `k_1, k_2, ..., k_n`
/// table: lexicographically descending in `(k_1, ..., k_n)`.
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    fn go(i: u32, n: u32, remaining: u32, current: &mut Vec<(u32, u32)>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            let mut parts = current.clone();
            parts.sort_unstable();
            out.push(Partition { n, parts });
            return;
        }
        if i > n {
            return;
        }
        for k in (0..=remaining / i).rev() {
            if k > 0 {
                current.push((i, k));
            }
            go(i + 1, n, remaining - i * k, current, out);
            if k > 0 {
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(1, n, n, &mut Vec::new(), &mut out);
    out
}

/// Exponent vector of a monomial `x_{i1}^{e1} x_{i2}^{e2} ...`, sparse and
/// sorted by variable index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    pub fn exponents(&self) -> &[(u32, u32)] {
        &self.0
    }

    fn exponent(&self, var: u32) -> u32 {
        self.0.iter().find(|(v, _)| *v == var).map_or(0, |(_, e)| *e)
    }

    fn weight(&self) -> u64 {
        self.0.iter().map(|&(v, e)| v as u64 * e as u64).sum()
    }

    fn max_var(&self) -> u32 {
        self.0.last().map_or(0, |(v, _)| *v)
    }

    fn bump(&self, var: u32, delta: i32) -> Monomial {
        let mut out: Vec<(u32, u32)> = Vec::with_capacity(self.0.len() + 1);
        let mut placed = false;
        for &(v, e) in &self.0 {
            if v == var {
                placed = true;
                let ne = e as i32 + delta;
                if ne > 0 {
                    out.push((v, ne as u32));
                }
            } else {
                if v > var && !placed {
                    placed = true;
                    if delta > 0 {
                        out.push((var, delta as u32));
                    }
                }
                out.push((v, e));
            }
        }
        if !placed && delta > 0 {
            out.push((var, delta as u32));
        }
        Monomial(out)
    }
}

impl Ord for Monomial {
    /// Descending in the dense exponent vector `(e_1, e_2, ...)`, so that
    /// `x1^4` sorts before `x1^2 x2` which sorts before `x4`.
    fn cmp(&self, other: &Self) -> Ordering {
        let top = self.max_var().max(other.max_var());
        for v in 1..=top {
            match other.exponent(v).cmp(&self.exponent(v)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact complete Bell polynomial of a fixed degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BellPoly {
    degree: u32,
    terms: BTreeMap<Monomial, Integer>,
}

/// `n! / prod_i (k_i! (i!)^{k_i})`.
pub fn partition_coefficient(p: &Partition) -> Integer {
    let mut den = Integer::from(1);
    for &(i, k) in p.parts() {
        den *= factorial(k);
        den *= factorial(i).pow(k);
    }
    factorial(p.n()) / den
}

/// `Y_n` built term by term from the partition formula.
pub fn bell_complete(n: u32) -> BellPoly {
    let terms = enumerate_partitions(n)
        .iter()
        .map(|p| (p.monomial(), partition_coefficient(p)))
        .collect();
    BellPoly { degree: n, terms }
}

/// `Y_{m+1} = x_1 Y_m + D Y_m`, where the derivation `D` sends `x_i` to `x_{i+1}`.
pub fn bell_next_by_recurrence(ym: &BellPoly) -> Result<BellPoly> {
    ym.validate()?;
    let mut next: BTreeMap<Monomial, Integer> = BTreeMap::new();
    for (mono, coef) in &ym.terms {
        *next.entry(mono.bump(1, 1)).or_default() += coef;
        for &(v, e) in mono.exponents() {
            let derived = mono.bump(v, -1).bump(v + 1, 1);
            *next.entry(derived).or_default() += Integer::from(coef * e);
        }
    }
    Ok(BellPoly {
        degree: ym.degree + 1,
        terms: next,
    })
}

impl BellPoly {
    /// Builds a polynomial from explicit terms; every monomial must have
    /// weight `degree` and every coefficient must be positive.
    pub fn from_terms(degree: u32, terms: impl IntoIterator<Item = (Vec<(u32, u32)>, Integer)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (mut exps, c) in terms {
            exps.retain(|&(_, e)| e > 0);
            exps.sort_unstable();
            if exps.iter().any(|&(v, _)| v == 0) {
                return Err(Error::MalformedPolynomial("variable index 0".into()));
            }
            if exps.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(Error::MalformedPolynomial("repeated variable in monomial".into()));
            }
            let m = Monomial(exps);
            if m.weight() != degree as u64 {
                return Err(Error::MalformedPolynomial(format!(
                    "monomial {m} has weight {} but degree is {degree}",
                    m.weight()
                )));
            }
            if c <= 0 {
                return Err(Error::MalformedPolynomial(format!("non-positive coefficient {c}")));
            }
            if map.insert(m, c).is_some() {
                return Err(Error::MalformedPolynomial("duplicate monomial".into()));
            }
        }
        Ok(BellPoly { degree, terms: map })
    }

    /// Checks that this is exactly `Y_degree`: one term per partition with
    /// the partition-formula coefficient.
    pub fn validate(&self) -> Result<()> {
        let parts = enumerate_partitions(self.degree);
        if parts.len() != self.terms.len() {
            return Err(Error::MalformedPolynomial(format!(
                "{} terms, expected {} for degree {}",
                self.terms.len(),
                parts.len(),
                self.degree
            )));
        }
        for p in &parts {
            match self.terms.get(&p.monomial()) {
                Some(c) if *c == partition_coefficient(p) => {}
                Some(c) => {
                    return Err(Error::MalformedPolynomial(format!(
                        "coefficient {c} of {} differs from the partition formula",
                        p.monomial()
                    )))
                }
                None => return Err(Error::MalformedPolynomial(format!("missing monomial {}", p.monomial()))),
            }
        }
        Ok(())
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Integer)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[(u32, u32)]) -> Option<&Integer> {
        let mut e = exps.to_vec();
        e.retain(|&(_, k)| k > 0);
        e.sort_unstable();
        self.terms.get(&Monomial(e))
    }

    pub fn coefficient_sum(&self) -> Integer {
        self.terms.values().sum()
    }

    /// Numeric value at `args = (x_1, x_2, ...)`.
    pub fn eval(&self, args: &[XReal]) -> Result<XReal> {
        bell_eval(self, args)
    }

    /// Exact value at rational arguments.
    pub fn eval_exact(&self, args: &[Rational]) -> Result<Rational> {
        if args.len() < self.degree as usize {
            return Err(Error::InsufficientArguments {
                degree: self.degree as usize,
                got: args.len(),
            });
        }
        let mut total = Rational::new();
        for (mono, c) in &self.terms {
            let mut t = Rational::from(c);
            for &(v, e) in mono.exponents() {
                t *= args[v as usize - 1].clone().pow(e as i32);
            }
            total += t;
        }
        Ok(total)
    }
}

/// Numeric value of `Y` at `args`; the result precision is the largest
/// argument precision.
pub fn bell_eval(y: &BellPoly, args: &[XReal]) -> Result<XReal> {
    if args.len() < y.degree as usize {
        return Err(Error::InsufficientArguments {
            degree: y.degree as usize,
            got: args.len(),
        });
    }
    let prec = args.iter().map(XReal::prec).max().unwrap_or(64);
    let mut total = XReal::zero(prec);
    for (mono, c) in &y.terms {
        let mut t = XReal::from_integer(c, prec);
        for &(v, e) in mono.exponents() {
            t = &t * &args[v as usize - 1].powi(e as i32);
        }
        total = total + t;
    }
    Ok(total)
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &(v, e) in &self.0 {
            if e == 1 {
                write!(f, "x{v}")?;
            } else {
                write!(f, "x{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for BellPoly {
    /// Renders like `x1^4 + 6x1^2x2 + 4x1x3 + 3x2^2 + x4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 0 {
            return f.write_str("1");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if *c != 1 {
                write!(f, "{c}")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_of_four_match_classical_table() {
        let dense: Vec<Vec<u32>> = enumerate_partitions(4).iter().map(Partition::dense).collect();
        assert_eq!(
            dense,
            vec![
                vec![4, 0, 0, 0],
                vec![2, 1, 0, 0],
                vec![1, 0, 1, 0],
                vec![0, 2, 0, 0],
                vec![0, 0, 0, 1],
            ]
        );
    }

    #[test]
    fn partition_counts() {
        let empty = enumerate_partitions(0);
        assert_eq!(empty.len(), 1);
        assert!(empty[0].parts().is_empty());
        assert_eq!(enumerate_partitions(22).len(), 1002);
        for p in enumerate_partitions(9) {
            let w: u32 = p.parts().iter().map(|(i, k)| i * k).sum();
            assert_eq!(w, 9);
        }
    }

    #[test]
    fn low_degree_polynomials() {
        assert_eq!(bell_complete(0).to_string(), "1");
        assert_eq!(bell_complete(1).to_string(), "x1");
        assert_eq!(bell_complete(2).to_string(), "x1^2 + x2");
        assert_eq!(bell_complete(3).to_string(), "x1^3 + 3x1x2 + x3");
        assert_eq!(bell_complete(4).to_string(), "x1^4 + 6x1^2x2 + 4x1x3 + 3x2^2 + x4");
        assert_eq!(
            bell_complete(5).to_string(),
            "x1^5 + 10x1^3x2 + 10x1^2x3 + 15x1x2^2 + 5x1x4 + 10x2x3 + x5"
        );
    }

    #[test]
    fn degree_six_from_partition_formula() {
        // n! / prod(k_i! (i!)^k_i), evaluated independently per partition of 6
        let expected: &[(&[(u32, u32)], u64)] = &[
            (&[(1, 6)], 1),
            (&[(1, 4), (2, 1)], 15),
            (&[(1, 3), (3, 1)], 20),
            (&[(1, 2), (2, 2)], 45),
            (&[(1, 2), (4, 1)], 15),
            (&[(1, 1), (2, 1), (3, 1)], 60),
            (&[(1, 1), (5, 1)], 6),
            (&[(2, 3)], 15),
            (&[(2, 1), (4, 1)], 15),
            (&[(3, 2)], 10),
            (&[(6, 1)], 1),
        ];
        let y6 = bell_complete(6);
        assert_eq!(y6.len(), 11);
        for (exps, c) in expected {
            assert_eq!(y6.coefficient(exps).unwrap(), c, "{exps:?}");
        }
        assert_eq!(y6.coefficient_sum(), 203);
    }

    #[test]
    fn recurrence_steps() {
        let y0 = bell_complete(0);
        assert_eq!(bell_next_by_recurrence(&y0).unwrap(), bell_complete(1));
        let y1 = bell_complete(1);
        assert_eq!(bell_next_by_recurrence(&y1).unwrap().to_string(), "x1^2 + x2");
        let y2 = bell_complete(2);
        assert_eq!(bell_next_by_recurrence(&y2).unwrap().to_string(), "x1^3 + 3x1x2 + x3");
    }

    #[test]
    fn recurrence_rejects_malformed_input() {
        let bad =
            BellPoly::from_terms(2, [(vec![(1, 2)], Integer::from(1)), (vec![(2, 1)], Integer::from(2))]).unwrap();
        assert!(matches!(
            bell_next_by_recurrence(&bad),
            Err(Error::MalformedPolynomial(_))
        ));
        let missing = BellPoly::from_terms(2, [(vec![(1, 2)], Integer::from(1))]).unwrap();
        assert!(bell_next_by_recurrence(&missing).is_err());
        assert!(BellPoly::from_terms(3, [(vec![(1, 2)], Integer::from(1))]).is_err());
        assert!(BellPoly::from_terms(2, [(vec![(2, 1)], Integer::from(0))]).is_err());
    }

    #[test]
    fn evaluation() {
        let one = XReal::one(128);
        let y3 = bell_complete(3);
        assert_eq!(
            y3.eval(&[one.clone(), one.clone(), one.clone()]).unwrap(),
            XReal::from_i64(5, 128)
        );
        let a = XReal::ratio(-7, 3, 128);
        let z = XReal::zero(128);
        let v = bell_complete(5)
            .eval(&[a.clone(), z.clone(), z.clone(), z.clone(), z])
            .unwrap();
        assert!((&v - &a.powi(5)).abs() < XReal::pow2(-110, 64));
        assert!(matches!(
            y3.eval(&[one.clone(), one]),
            Err(Error::InsufficientArguments { degree: 3, got: 2 })
        ));
    }
}
