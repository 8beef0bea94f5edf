//! Graded components `𝒫^k(V)` with their canonical monomial bases.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::repsim::superpoly::{for_each_subset, Parity, SuperMonomial, SuperPoly};

/// Default bound on `dim 𝒫^k(V)` accepted by the expensive routines.
pub const DEFAULT_SIZE_GUARD: u128 = 20_000;

/// Environment variable overriding [`DEFAULT_SIZE_GUARD`].
pub const SIZE_GUARD_ENV: &str = "QCAP_SIZE_GUARD";

/// The active size guard: `QCAP_SIZE_GUARD` if set to an integer, else the
/// default.
pub fn size_guard() -> u128 {
    std::env::var(SIZE_GUARD_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_SIZE_GUARD)
}

fn binom(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}

/// `dim 𝒫^k(V) = Σ_j C(n², j)·C(n² + k − j − 1, k − j)`.
pub fn component_dimension(n: usize, k: u32) -> u128 {
    let m = (n * n) as u64;
    let k = k as u64;
    let total: BigUint = (0..=k.min(m))
        .map(|j| {
            let even = if k - j == 0 { BigUint::from(1u32) } else { binom(m + k - j - 1, k - j) };
            binom(m, j) * even
        })
        .sum();
    total.to_u128().unwrap_or(u128::MAX)
}

/// Refuses `(n, k)` whose component exceeds `guard`.
pub fn check_size(n: usize, k: u32, guard: u128) -> Result<()> {
    let dimension = component_dimension(n, k);
    if dimension > guard {
        return Err(Error::SizeGuard { n, degree: k, dimension, guard });
    }
    Ok(())
}

fn even_exponents(slots: usize, total: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if cur.len() == slots - 1 {
        cur.push(total);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    for v in (0..=total).rev() {
        cur.push(v);
        even_exponents(slots, total - v, cur, out);
        cur.pop();
    }
}

/// All monomials of total degree `k`, in canonical order.
pub fn graded_basis(n: usize, k: u32) -> Vec<SuperMonomial> {
    assert!(n >= 1);
    let slots = n * n;
    let odd_slots: Vec<usize> = (0..slots).collect();
    let mut out = Vec::new();
    for j in 0..=(k as usize).min(slots) {
        let mut evens = Vec::new();
        even_exponents(slots, k - j as u32, &mut Vec::new(), &mut evens);
        for_each_subset(&odd_slots, j, |mask| {
            for e in &evens {
                out.push(SuperMonomial::from_parts(e.clone(), mask));
            }
        });
    }
    out.sort();
    out
}

/// Weight block of a monomial: row degrees, column degrees and parity. All
/// action operators map blocks to blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockKey {
    pub rows: Vec<u32>,
    pub cols: Vec<u32>,
    pub parity: Parity,
}

impl BlockKey {
    pub fn of(m: &SuperMonomial) -> Self {
        BlockKey { rows: m.row_degrees(), cols: m.col_degrees(), parity: m.parity() }
    }
}

/// `𝒫^k(V)` with its monomial basis and index.
#[derive(Debug)]
pub struct GradedComponent {
    n: usize,
    degree: u32,
    monomials: Vec<SuperMonomial>,
    index: HashMap<SuperMonomial, usize>,
    blocks: HashMap<BlockKey, Vec<usize>>,
}

type ComponentCache = Lazy<RwLock<HashMap<(usize, u32), Arc<GradedComponent>>>>;

static COMPONENTS: ComponentCache = Lazy::new(|| RwLock::new(HashMap::new()));

impl GradedComponent {
    /// The (cached) component of degree `k`. No size guard is applied here.
    pub fn get(n: usize, k: u32) -> Arc<GradedComponent> {
        if let Some(c) = COMPONENTS.read().expect("cache lock poisoned").get(&(n, k)) {
            return c.clone();
        }
        let built = Arc::new(GradedComponent::build(n, k));
        COMPONENTS.write().expect("cache lock poisoned").entry((n, k)).or_insert(built).clone()
    }

    fn build(n: usize, k: u32) -> Self {
        let monomials = graded_basis(n, k);
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let mut blocks: HashMap<BlockKey, Vec<usize>> = HashMap::new();
        for (i, m) in monomials.iter().enumerate() {
            blocks.entry(BlockKey::of(m)).or_default().push(i);
        }
        GradedComponent { n, degree: k, monomials, index, blocks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[SuperMonomial] {
        &self.monomials
    }

    pub fn monomial(&self, i: usize) -> &SuperMonomial {
        &self.monomials[i]
    }

    pub fn index_of(&self, m: &SuperMonomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn blocks(&self) -> &HashMap<BlockKey, Vec<usize>> {
        &self.blocks
    }

    pub fn block_of(&self, i: usize) -> BlockKey {
        BlockKey::of(&self.monomials[i])
    }

    /// Coordinates of a homogeneous degree-`k` polynomial.
    pub fn to_vec(&self, p: &SuperPoly) -> SparseVec {
        p.terms()
            .map(|(m, c)| {
                let i = self.index_of(m).expect("polynomial lies in this graded component");
                (i, c.clone())
            })
            .collect()
    }

    pub fn to_poly(&self, v: &SparseVec) -> SuperPoly {
        let mut p = SuperPoly::zero(self.n);
        for (&i, c) in v {
            p.add_term(self.monomials[i].clone(), c.clone());
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bases() {
        let b = graded_basis(1, 2);
        assert_eq!(b.len(), 2);
        assert_eq!(b[0].to_string(), "u11^2");
        assert_eq!(b[1].to_string(), "u11*xi11");
        assert_eq!(graded_basis(1, 0).len(), 1);
        let b = graded_basis(2, 1);
        let names: Vec<String> = b.iter().map(|m| m.to_string()).collect();
        assert_eq!(names, ["u11", "u12", "u21", "u22", "xi11", "xi12", "xi21", "xi22"]);
    }

    #[test]
    fn dimensions_match_enumeration() {
        for n in 1..=3 {
            for k in 0..=4 {
                assert_eq!(graded_basis(n, k).len() as u128, component_dimension(n, k));
            }
        }
        assert_eq!(component_dimension(2, 4), 192);
        assert_eq!(component_dimension(2, 6), 608);
        assert_eq!(component_dimension(3, 3), 978);
        assert_eq!(component_dimension(3, 5), 16722);
        assert_eq!(component_dimension(3, 6), 53154);
    }

    #[test]
    fn size_guard_refuses() {
        assert!(check_size(3, 5, DEFAULT_SIZE_GUARD).is_ok());
        assert!(matches!(check_size(3, 6, DEFAULT_SIZE_GUARD), Err(Error::SizeGuard { dimension: 53154, .. })));
    }

    #[test]
    fn round_trip_coordinates() {
        let c = GradedComponent::get(2, 2);
        for i in 0..c.dim() {
            let v: SparseVec = [(i, crate::scalar::int(3))].into_iter().collect();
            assert_eq!(c.to_vec(&c.to_poly(&v)), v);
        }
        let total: usize = c.blocks().values().map(Vec::len).sum();
        assert_eq!(total, c.dim());
    }
}
