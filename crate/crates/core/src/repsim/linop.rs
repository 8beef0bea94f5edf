//! Exact operators between graded components, stored column-sparse in the
//! canonical monomial bases.

use num_traits::{One, Zero};

use crate::linalg::{axpy, SparseVec};
use crate::repsim::basis::GradedComponent;
use crate::repsim::superpoly::{Parity, SuperMonomial, SuperPoly};
use crate::scalar::{int, ExactScalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearOperator {
    n: usize,
    domain_degree: u32,
    codomain_degree: u32,
    rows: usize,
    parity: Parity,
    /// Column `j` is the image of the `j`-th domain monomial.
    cols: Vec<SparseVec>,
}

impl LinearOperator {
    /// Builds the matrix of `f` on the monomial basis of `domain`.
    pub fn from_fn(
        domain: &GradedComponent,
        codomain: &GradedComponent,
        parity: Parity,
        mut f: impl FnMut(&SuperMonomial) -> SuperPoly,
    ) -> Self {
        let cols = domain.monomials().iter().map(|m| codomain.to_vec(&f(m))).collect();
        LinearOperator {
            n: domain.n(),
            domain_degree: domain.degree(),
            codomain_degree: codomain.degree(),
            rows: codomain.dim(),
            parity,
            cols,
        }
    }

    pub fn identity(c: &GradedComponent) -> Self {
        LinearOperator::from_fn(c, c, Parity::Even, |m| SuperPoly::from_monomial(m.clone(), ExactScalar::one()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn domain_degree(&self) -> u32 {
        self.domain_degree
    }

    pub fn codomain_degree(&self) -> u32 {
        self.codomain_degree
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn entry(&self, i: usize, j: usize) -> ExactScalar {
        self.cols[j].get(&i).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_empty)
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&j, c) in v {
            axpy(&mut out, c, &self.cols[j]);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearOperator) -> LinearOperator {
        assert_eq!(other.codomain_degree, self.domain_degree, "degree bookkeeping");
        assert_eq!(other.rows, self.cols.len());
        LinearOperator {
            n: self.n,
            domain_degree: other.domain_degree,
            codomain_degree: self.codomain_degree,
            rows: self.rows,
            parity: self.parity.combine(other.parity),
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: &ExactScalar, other: &LinearOperator, b: &ExactScalar) -> LinearOperator {
        assert_eq!((self.rows, self.cols.len()), (other.rows, other.cols.len()));
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(x, y)| {
                let mut out = SparseVec::new();
                axpy(&mut out, a, x);
                axpy(&mut out, b, y);
                out
            })
            .collect();
        LinearOperator { cols, ..*self }
    }

    pub fn scale(&self, c: &ExactScalar) -> LinearOperator {
        let cols = self
            .cols
            .iter()
            .map(|col| {
                let mut out = SparseVec::new();
                axpy(&mut out, c, col);
                out
            })
            .collect();
        LinearOperator { cols, ..*self }
    }

    /// `[X, Y] = XY − (−1)^{|X||Y|} YX` on an endomorphism pair.
    pub fn supercommutator(&self, other: &LinearOperator) -> LinearOperator {
        let sign = if self.parity.is_odd() && other.parity.is_odd() { 1 } else { -1 };
        let xy = self.compose(other);
        let yx = other.compose(self);
        xy.combine(&ExactScalar::one(), &yx, &int(sign))
    }

    /// Equality of matrices, ignoring the recorded parity.
    pub fn same_matrix(&self, other: &LinearOperator) -> bool {
        self.rows == other.rows && self.cols == other.cols
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repsim::superpoly::Generator;
    use crate::scalar::int;

    #[test]
    fn identity_and_composition() {
        let c = GradedComponent::get(1, 2);
        let id = LinearOperator::identity(&c);
        let d = LinearOperator::from_fn(&c, &c, Parity::Even, |m| {
            SuperPoly::from_monomial(m.clone(), ExactScalar::one()).scale(&int(m.odd_count() as i64 + 1))
        });
        assert!(id.compose(&d).same_matrix(&d));
        assert!(d.supercommutator(&id).is_zero());
        assert_eq!(d.entry(1, 1), int(2));
        assert!(d.combine(&int(1), &d, &int(-1)).is_zero());
    }

    #[test]
    fn odd_operators_anticommute_in_brackets() {
        // ξ·∂_u and u·∂_ξ on n = 1; their bracket is the Euler operator.
        let c = GradedComponent::get(1, 2);
        let (u, xi) = (Generator::U(0), Generator::Xi(0));
        let x = LinearOperator::from_fn(&c, &c, Parity::Odd, |m| {
            let p = SuperPoly::from_monomial(m.clone(), ExactScalar::one()).derivative(u);
            SuperPoly::generator(1, xi).mul(&p)
        });
        let y = LinearOperator::from_fn(&c, &c, Parity::Odd, |m| {
            let p = SuperPoly::from_monomial(m.clone(), ExactScalar::one()).derivative(xi);
            SuperPoly::generator(1, u).mul(&p)
        });
        let euler = LinearOperator::identity(&c).scale(&int(2));
        let bracket = x.supercommutator(&y);
        // [ξ∂_u, u∂_ξ] = ξ∂_ξ + u∂_u, which is degree·id.
        assert!(bracket.same_matrix(&euler));
    }
}
