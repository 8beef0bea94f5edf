//! Sparse multivariate polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{self, ExactScalar};

/// Exponent vector ordered by graded lexicographic order (total degree
/// first, then lexicographic with `x1 > x2 > …`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponent(pub Vec<u32>);

impl Exponent {
    pub fn zero(n: usize) -> Self {
        Exponent(vec![0; n])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn divides(&self, other: &Exponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree of a polynomial; the zero polynomial has its own sentinel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    n: usize,
    terms: BTreeMap<Exponent, ExactScalar>,
}

impl MultiPoly {
    pub fn zero(n: usize) -> Self {
        MultiPoly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: ExactScalar) -> Self {
        let mut p = MultiPoly::zero(n);
        p.add_term(Exponent::zero(n), c);
        p
    }

    pub fn one(n: usize) -> Self {
        MultiPoly::constant(n, ExactScalar::one())
    }

    /// The variable `x_i` (1-based).
    pub fn var(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= n, "variable index out of range");
        let mut e = vec![0; n];
        e[i - 1] = 1;
        MultiPoly::monomial(e, ExactScalar::one())
    }

    pub fn monomial(exponent: Vec<u32>, c: ExactScalar) -> Self {
        let mut p = MultiPoly::zero(exponent.len());
        p.add_term(Exponent(exponent), c);
        p
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Vec<u32>, ExactScalar)>) -> Result<Self> {
        let mut p = MultiPoly::zero(n);
        for (e, c) in terms {
            if e.len() != n {
                return Err(Error::LengthMismatch { expected: n, got: e.len() });
            }
            p.add_term(Exponent(e), c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exponent: &[u32]) -> ExactScalar {
        self.terms
            .get(&Exponent(exponent.to_vec()))
            .cloned()
            .unwrap_or_else(ExactScalar::zero)
    }

    /// Terms in canonical order: descending graded lex.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &ExactScalar)> {
        self.terms.iter().rev().map(|(e, c)| (e.0.as_slice(), c))
    }

    pub fn add_term(&mut self, e: Exponent, c: ExactScalar) {
        debug_assert_eq!(e.0.len(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .map(Exponent::degree)
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    pub fn leading_term(&self) -> Option<(&Exponent, &ExactScalar)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &ExactScalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.n);
        }
        MultiPoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.n);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn evaluate(&self, point: &[ExactScalar]) -> Result<ExactScalar> {
        if point.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, got: point.len() });
        }
        let mut acc = ExactScalar::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(&e.0) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn homogeneous_part(&self, d: u32) -> MultiPoly {
        MultiPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.degree() == d)
    }

    /// `p(x_{π(1)}, …, x_{π(n)})` for a permutation given as 0-based images.
    pub fn permute(&self, perm: &[usize]) -> MultiPoly {
        let mut out = MultiPoly::zero(self.n);
        for (e, c) in &self.terms {
            let mut f = vec![0; self.n];
            for (i, &k) in e.0.iter().enumerate() {
                f[perm[i]] = k;
            }
            out.add_term(Exponent(f), c.clone());
        }
        out
    }

    /// `p(−x_1, …, −x_n)`.
    pub fn negate_variables(&self) -> MultiPoly {
        MultiPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), if e.degree() % 2 == 1 { -c } else { c.clone() }))
                .collect(),
        }
    }

    /// Sets the last variable to zero and drops it.
    pub fn drop_last_variable(&self) -> MultiPoly {
        assert!(self.n >= 1);
        let mut out = MultiPoly::zero(self.n - 1);
        for (e, c) in &self.terms {
            if e.0[self.n - 1] == 0 {
                out.add_term(Exponent(e.0[..self.n - 1].to_vec()), c.clone());
            }
        }
        out
    }

    /// Symmetric under all permutations (checked on adjacent transpositions)
    /// and `p(t, −t, x_3, …)` is independent of `t`.
    pub fn is_q_symmetric(&self) -> bool {
        for i in 0..self.n.saturating_sub(1) {
            let mut perm: Vec<usize> = (0..self.n).collect();
            perm.swap(i, i + 1);
            if self.permute(&perm) != *self {
                return false;
            }
        }
        if self.n < 2 {
            return true;
        }
        // Substitute x1 = t, x2 = -t; keep t as a variable in slot 0.
        let mut sub: BTreeMap<Vec<u32>, ExactScalar> = BTreeMap::new();
        for (e, c) in &self.terms {
            let t_deg = e.0[0] + e.0[1];
            let mut key = Vec::with_capacity(self.n - 1);
            key.push(t_deg);
            key.extend_from_slice(&e.0[2..]);
            let v = if e.0[1] % 2 == 1 { -c } else { c.clone() };
            *sub.entry(key).or_insert_with(ExactScalar::zero) += v;
        }
        sub.iter().all(|(k, c)| k[0] == 0 || c.is_zero())
    }

    /// Returns `r` with `self = divisor · r`, by leading-term elimination in
    /// graded lex order.
    pub fn exact_divide(&self, divisor: &MultiPoly) -> Result<MultiPoly> {
        if self.n != divisor.n {
            return Err(Error::VariableMismatch(self.n, divisor.n));
        }
        let (lead_e, lead_c) = divisor.leading_term().ok_or(Error::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quotient = MultiPoly::zero(self.n);
        while let Some((e, c)) = rem.leading_term() {
            if !lead_e.divides(e) {
                return Err(Error::NotDivisible);
            }
            let qe: Vec<u32> = e.0.iter().zip(&lead_e.0).map(|(a, b)| a - b).collect();
            let qc = c / lead_c;
            for (de, dc) in &divisor.terms {
                let te = qe.iter().zip(&de.0).map(|(a, b)| a + b).collect();
                rem.add_term(Exponent(te), -(&qc * dc));
            }
            quotient.add_term(Exponent(qe), qc);
        }
        Ok(quotient)
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            n: self.n,
            terms: self
                .terms()
                .map(|(e, c)| TermJson { e: e.to_vec(), c: scalar::format(c) })
                .collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<MultiPoly> {
        let mut p = MultiPoly::zero(j.n);
        for t in &j.terms {
            if t.e.len() != j.n {
                return Err(Error::Json(format!("exponent {:?} does not have {} entries", t.e, j.n)));
            }
            p.add_term(Exponent(t.e.clone()), scalar::parse(&t.c)?);
        }
        Ok(p)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("polynomial JSON serialization")
    }

    pub fn from_json_str(s: &str) -> Result<MultiPoly> {
        let j: PolyJson = serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))?;
        MultiPoly::from_json(&j)
    }
}

/// `{"n": …, "terms": [{"e": […], "c": "a/b"}, …]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub n: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub e: Vec<u32>,
    pub c: String,
}

impl fmt::Display for MultiPoly {
    /// `2*x1^2 - 2*x1`, terms in canonical order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms().enumerate() {
            let negative = c < &ExactScalar::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if idx == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, k) })
                .collect();
            if vars.is_empty() {
                f.write_str(&scalar::format(&abs))?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", scalar::format(&abs))?;
                }
                f.write_str(&vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n, rhs.n, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n, rhs.n, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-ExactScalar::one())
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n, rhs.n, "variable count mismatch");
        let mut acc: std::collections::HashMap<Vec<u32>, ExactScalar> = std::collections::HashMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.0.iter().zip(&eb.0).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(ExactScalar::zero) += ca * cb;
            }
        }
        let mut out = MultiPoly::zero(self.n);
        for (e, c) in acc {
            out.add_term(Exponent(e), c);
        }
        out
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for MultiPoly {
    fn sum<I: Iterator<Item = MultiPoly>>(mut iter: I) -> MultiPoly {
        let first = iter.next().expect("sum of an empty polynomial iterator");
        iter.fold(first, |acc, p| &acc + &p)
    }
}

/// The Vandermonde product `∏_{i<j} (x_i − x_j)`.
pub fn vandermonde(n: usize) -> MultiPoly {
    let mut acc = MultiPoly::one(n);
    for i in 1..=n {
        for j in i + 1..=n {
            acc = &acc * &(&MultiPoly::var(n, i) - &MultiPoly::var(n, j));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    fn c(n: usize, v: i64) -> MultiPoly {
        MultiPoly::constant(n, int(v))
    }

    #[test]
    fn evaluate_examples() {
        let p = &c(2, 2) * &(&x(2, 1) + &x(2, 2));
        assert_eq!(p.evaluate(&[int(1), int(0)]).unwrap(), int(2));
        assert_eq!(c(3, 1).evaluate(&[int(4), frac(1, 2), int(-3)]).unwrap(), int(1));
        let q = &(&c(1, 2) * &x(1, 1)) * &(&x(1, 1) - &c(1, 1));
        assert_eq!(q.evaluate(&[int(2)]).unwrap(), int(4));
        assert!(matches!(p.evaluate(&[int(1)]), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn homogeneous_part_examples() {
        let p = MultiPoly::from_terms(1, [(vec![2], int(2)), (vec![1], int(-2))]).unwrap();
        assert_eq!(p.homogeneous_part(2), MultiPoly::monomial(vec![2], int(2)));
        assert_eq!(p.homogeneous_part(1), MultiPoly::monomial(vec![1], int(-2)));
        assert!(MultiPoly::zero(3).homogeneous_part(4).is_zero());
    }

    #[test]
    fn q_symmetry_examples() {
        assert!((&x(2, 1) + &x(2, 2)).is_q_symmetric());
        assert!(!(&x(2, 1) * &x(2, 2)).is_q_symmetric());
        assert!(!(&x(2, 1).pow(2) + &x(2, 2).pow(2)).is_q_symmetric());
        assert!(!x(2, 1).is_q_symmetric());
        assert!(x(1, 1).pow(2).is_q_symmetric());
        let p3 = &(&x(3, 1).pow(3) + &x(3, 2).pow(3)) + &x(3, 3).pow(3);
        assert!(p3.is_q_symmetric());
    }

    #[test]
    fn exact_divide_examples() {
        let p = &x(2, 1).pow(2) - &x(2, 2).pow(2);
        let q = &x(2, 1) - &x(2, 2);
        assert_eq!(p.exact_divide(&q).unwrap(), &x(2, 1) + &x(2, 2));
        assert!(MultiPoly::zero(2).exact_divide(&q).unwrap().is_zero());
        let e = &(&x(2, 1) * &x(2, 2)) * &(&x(2, 1) + &x(2, 2));
        assert_eq!((&e * &q).exact_divide(&q).unwrap(), e);
        assert_eq!(x(2, 1).exact_divide(&q), Err(Error::NotDivisible));
        assert_eq!(p.exact_divide(&MultiPoly::zero(2)), Err(Error::DivisionByZero));
    }

    #[test]
    fn degree_sentinel() {
        assert_eq!(MultiPoly::zero(2).degree(), Degree::NegInfinity);
        assert_eq!(c(2, 3).degree(), Degree::Finite(0));
        assert!(Degree::NegInfinity < Degree::Finite(0));
    }

    #[test]
    fn rendering() {
        let p = &c(2, 2) * &(&x(2, 1) + &x(2, 2));
        assert_eq!(p.to_string(), "2*x1 + 2*x2");
        let q = MultiPoly::from_terms(1, [(vec![2], int(2)), (vec![1], int(-2))]).unwrap();
        assert_eq!(q.to_string(), "2*x1^2 - 2*x1");
        let r = MultiPoly::from_terms(2, [(vec![0, 0], frac(-1, 2)), (vec![1, 1], int(-1))]).unwrap();
        assert_eq!(r.to_string(), "-x1*x2 - 1/2");
        assert_eq!(MultiPoly::zero(1).to_string(), "0");
    }

    #[test]
    fn json_format() {
        let q = MultiPoly::from_terms(2, [(vec![1, 0], frac(3, 2)), (vec![0, 2], int(-5))]).unwrap();
        assert_eq!(
            q.to_json_string(),
            r#"{"n":2,"terms":[{"e":[0,2],"c":"-5"},{"e":[1,0],"c":"3/2"}]}"#
        );
        assert_eq!(MultiPoly::from_json_str(&q.to_json_string()).unwrap(), q);
        assert!(MultiPoly::from_json_str(r#"{"n":2,"terms":[{"e":[1],"c":"1"}]}"#).is_err());
    }

    #[test]
    fn vandermonde_small() {
        assert_eq!(vandermonde(2), &x(2, 1) - &x(2, 2));
        assert_eq!(vandermonde(1), MultiPoly::one(1));
        assert_eq!(vandermonde(3).degree(), Degree::Finite(3));
    }
}
