//! Super-polynomials in `n²` even generators `u^{pq}` and `n²` odd generators
//! `ξ^{pq}`.
//!
//! Generators are indexed row-major, `g = (p − 1)·n + (q − 1)`. A monomial is
//! stored in the canonical form `u^E ξ_{j_1} ⋯ ξ_{j_t}` with `j_1 < ⋯ < j_t`;
//! every operation that reorders odd generators tracks the Koszul sign.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::scalar::ExactScalar;

/// `Z/2` grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_odd(odd: bool) -> Self {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// Parity of a product.
    pub fn combine(self, other: Parity) -> Parity {
        Parity::from_odd(self.is_odd() != other.is_odd())
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

/// A single generator: `u^{g}` or `ξ^{g}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    U(usize),
    Xi(usize),
}

impl Generator {
    pub fn u(n: usize, p: usize, q: usize) -> Self {
        Generator::U(gen_index(n, p, q))
    }

    pub fn xi(n: usize, p: usize, q: usize) -> Self {
        Generator::Xi(gen_index(n, p, q))
    }

    pub fn parity(self) -> Parity {
        match self {
            Generator::U(_) => Parity::Even,
            Generator::Xi(_) => Parity::Odd,
        }
    }
}

/// Row-major index of the generator in row `p`, column `q` (1-based).
pub fn gen_index(n: usize, p: usize, q: usize) -> usize {
    assert!((1..=n).contains(&p) && (1..=n).contains(&q), "generator index out of range");
    (p - 1) * n + (q - 1)
}

fn bits_below(mask: u64, g: usize) -> u32 {
    (mask & ((1u64 << g) - 1)).count_ones()
}

/// A canonical monomial `u^E ξ_S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SuperMonomial {
    even: Vec<u32>,
    odd: u64,
}

impl SuperMonomial {
    pub fn one(n: usize) -> Self {
        assert!(n * n <= 64, "at most 64 odd generators are supported");
        SuperMonomial { even: vec![0; n * n], odd: 0 }
    }

    pub fn from_parts(even: Vec<u32>, odd: u64) -> Self {
        assert!(even.len() <= 64);
        SuperMonomial { even, odd }
    }

    pub fn generator(n: usize, g: Generator) -> Self {
        let mut m = SuperMonomial::one(n);
        match g {
            Generator::U(i) => m.even[i] = 1,
            Generator::Xi(i) => m.odd = 1 << i,
        }
        m
    }

    pub fn n(&self) -> usize {
        let len = self.even.len();
        (0..=len).find(|k| k * k >= len).unwrap_or(0)
    }

    pub fn even(&self) -> &[u32] {
        &self.even
    }

    pub fn odd_mask(&self) -> u64 {
        self.odd
    }

    pub fn odd_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.even.len()).filter(move |&g| self.odd >> g & 1 == 1)
    }

    pub fn odd_count(&self) -> u32 {
        self.odd.count_ones()
    }

    pub fn degree(&self) -> u32 {
        self.even.iter().sum::<u32>() + self.odd_count()
    }

    pub fn parity(&self) -> Parity {
        Parity::from_odd(self.odd_count() % 2 == 1)
    }

    /// Degree in the generators of each row `p`.
    pub fn row_degrees(&self) -> Vec<u32> {
        let n = self.n();
        (0..n)
            .map(|p| (0..n).map(|q| self.even[p * n + q] + (self.odd >> (p * n + q) & 1) as u32).sum())
            .collect()
    }

    /// Degree in the generators of each column `q`.
    pub fn col_degrees(&self) -> Vec<u32> {
        let n = self.n();
        (0..n)
            .map(|q| (0..n).map(|p| self.even[p * n + q] + (self.odd >> (p * n + q) & 1) as u32).sum())
            .collect()
    }

    /// `self · other` in canonical form, with `true` for a negative sign;
    /// `None` if an odd generator repeats.
    pub fn mul(&self, other: &SuperMonomial) -> Option<(bool, SuperMonomial)> {
        if self.odd & other.odd != 0 {
            return None;
        }
        // Each pair (s in self, t in other) with s > t needs one transposition.
        let swaps: u32 = other
            .odd_indices()
            .map(|t| self.odd.checked_shr(t as u32 + 1).unwrap_or(0).count_ones())
            .sum();
        let even = self.even.iter().zip(&other.even).map(|(a, b)| a + b).collect();
        Some((swaps % 2 == 1, SuperMonomial { even, odd: self.odd | other.odd }))
    }

    /// Left multiplication by a generator.
    pub fn left_mul(&self, g: Generator) -> Option<(bool, SuperMonomial)> {
        match g {
            Generator::U(i) => {
                let mut m = self.clone();
                m.even[i] += 1;
                Some((false, m))
            }
            Generator::Xi(i) => {
                if self.odd >> i & 1 == 1 {
                    return None;
                }
                let mut m = self.clone();
                m.odd |= 1 << i;
                Some((bits_below(self.odd, i) % 2 == 1, m))
            }
        }
    }

    /// Left derivative `∂/∂g`: the multiplicity (even case) or Koszul sign
    /// (odd case) together with the resulting monomial.
    pub fn derivative(&self, g: Generator) -> Option<(ExactScalar, SuperMonomial)> {
        match g {
            Generator::U(i) => {
                if self.even[i] == 0 {
                    return None;
                }
                let mut m = self.clone();
                m.even[i] -= 1;
                Some((ExactScalar::from_integer(self.even[i].into()), m))
            }
            Generator::Xi(i) => {
                if self.odd >> i & 1 == 0 {
                    return None;
                }
                let mut m = self.clone();
                m.odd &= !(1 << i);
                let s = if bits_below(self.odd, i) % 2 == 1 { -ExactScalar::one() } else { ExactScalar::one() };
                Some((s, m))
            }
        }
    }

    /// Applies the constant-coefficient operator `∂_r = ∂_u^E ∂_{ξ_{i_1}} ⋯
    /// ∂_{ξ_{i_s}}` (rightmost factor first) for `r = u^E ξ_{i_1} ⋯ ξ_{i_s}`.
    pub fn apply_partial_of(&self, r: &SuperMonomial) -> Option<(ExactScalar, SuperMonomial)> {
        if r.odd & !self.odd != 0 || r.even.iter().zip(&self.even).any(|(a, b)| a > b) {
            return None;
        }
        let mut coeff = ExactScalar::one();
        let mut odd = self.odd;
        for g in r.odd_indices().collect::<Vec<_>>().into_iter().rev() {
            if bits_below(odd, g) % 2 == 1 {
                coeff = -coeff;
            }
            odd &= !(1 << g);
        }
        let mut even = self.even.clone();
        for (e, &d) in even.iter_mut().zip(&r.even) {
            for j in 0..d {
                coeff *= ExactScalar::from_integer((*e - j).into());
            }
            *e -= d;
        }
        Some((coeff, SuperMonomial { even, odd }))
    }

    /// The constant `∂_r r`.
    pub fn self_pairing(&self) -> ExactScalar {
        self.apply_partial_of(self).expect("a monomial divides itself").0
    }

    /// Value at the base point `u^{pq} = δ_{pq}`, `ξ = 0`.
    pub fn at_identity(&self) -> ExactScalar {
        let n = self.n();
        let off_diagonal = (0..n * n).any(|g| g / n != g % n && self.even[g] > 0);
        if self.odd != 0 || off_diagonal {
            ExactScalar::zero()
        } else {
            ExactScalar::one()
        }
    }

    /// All monomials `r` of degree `k` with `∂_r self ≠ 0`.
    pub fn submonomials(&self, k: u32) -> Vec<SuperMonomial> {
        let mut out = Vec::new();
        let odd: Vec<usize> = self.odd_indices().collect();
        let total_even: u32 = self.even.iter().sum();
        for j in 0..=odd.len().min(k as usize) {
            let need_even = k - j as u32;
            if need_even > total_even {
                continue;
            }
            let mut evens = Vec::new();
            sub_exponents(&self.even, 0, need_even, &mut vec![0; self.even.len()], &mut evens);
            for_each_subset(&odd, j, |mask| {
                for e in &evens {
                    out.push(SuperMonomial { even: e.clone(), odd: mask });
                }
            });
        }
        out
    }
}

fn sub_exponents(bound: &[u32], pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if pos == bound.len() {
        if left == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let rest: u32 = bound[pos + 1..].iter().sum();
    let lo = left.saturating_sub(rest);
    for v in lo..=bound[pos].min(left) {
        cur[pos] = v;
        sub_exponents(bound, pos + 1, left - v, cur, out);
    }
    cur[pos] = 0;
}

pub(crate) fn for_each_subset(items: &[usize], size: usize, mut f: impl FnMut(u64)) {
    fn go(items: &[usize], start: usize, size: usize, mask: u64, f: &mut dyn FnMut(u64)) {
        if size == 0 {
            f(mask);
            return;
        }
        for i in start..items.len() {
            if items.len() - i < size {
                break;
            }
            go(items, i + 1, size - 1, mask | 1 << items[i], f);
        }
    }
    go(items, 0, size, 0, &mut f);
}

impl Ord for SuperMonomial {
    /// Fewer odd generators first, then even exponents in descending lex
    /// order, then the odd support.
    fn cmp(&self, other: &Self) -> Ordering {
        self.odd_count()
            .cmp(&other.odd_count())
            .then_with(|| other.even.cmp(&self.even))
            .then_with(|| self.odd.reverse_bits().cmp(&other.odd.reverse_bits()).reverse())
    }
}

impl PartialOrd for SuperMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SuperMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        let mut factors = Vec::new();
        for (g, &e) in self.even.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(format!("u{}{}", g / n + 1, g % n + 1)),
                _ => factors.push(format!("u{}{}^{}", g / n + 1, g % n + 1, e)),
            }
        }
        for g in self.odd_indices() {
            factors.push(format!("xi{}{}", g / n + 1, g % n + 1));
        }
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join("*"))
        }
    }
}

/// A finite linear combination of super-monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperPoly {
    n: usize,
    terms: BTreeMap<SuperMonomial, ExactScalar>,
}

impl SuperPoly {
    pub fn zero(n: usize) -> Self {
        SuperPoly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        SuperPoly::from_monomial(SuperMonomial::one(n), ExactScalar::one())
    }

    pub fn from_monomial(m: SuperMonomial, c: ExactScalar) -> Self {
        let mut p = SuperPoly::zero(m.n());
        p.add_term(m, c);
        p
    }

    pub fn generator(n: usize, g: Generator) -> Self {
        SuperPoly::from_monomial(SuperMonomial::generator(n, g), ExactScalar::one())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SuperMonomial, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &SuperMonomial) -> ExactScalar {
        self.terms.get(m).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn add_term(&mut self, m: SuperMonomial, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &SuperPoly, c: &ExactScalar) {
        for (m, v) in &other.terms {
            self.add_term(m.clone(), c * v);
        }
    }

    pub fn scale(&self, c: &ExactScalar) -> SuperPoly {
        let mut out = SuperPoly::zero(self.n);
        out.add_scaled(self, c);
        out
    }

    pub fn mul(&self, other: &SuperPoly) -> SuperPoly {
        let mut out = SuperPoly::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((neg, m)) = a.mul(b) {
                    let c = ca * cb;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        out
    }

    /// Parity if the polynomial is homogeneous in it.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(SuperMonomial::parity);
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    pub fn at_identity(&self) -> ExactScalar {
        self.terms.iter().filter(|(m, _)| m.odd == 0).map(|(m, c)| m.at_identity() * c).sum()
    }

    /// Applies the left derivative `∂/∂g`.
    pub fn derivative(&self, g: Generator) -> SuperPoly {
        let mut out = SuperPoly::zero(self.n);
        for (m, c) in &self.terms {
            if let Some((s, dm)) = m.derivative(g) {
                out.add_term(dm, s * c);
            }
        }
        out
    }
}

impl fmt::Display for SuperPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if c.is_one() {
                    m.to_string()
                } else {
                    format!("{}*{}", crate::scalar::format(c), m)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
