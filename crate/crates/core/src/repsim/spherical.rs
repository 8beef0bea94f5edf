//! `𝔪`-invariant functionals on the summands `V_λ` and the spherical
//! polynomials they restrict to on the diagonal.
//!
//! The base point `e` is `u^{pq} ↦ δ_{pq}, ξ^{pq} ↦ 0`. For a diagonal point
//! `μ`, write `μ̃ = Σ_i μ_i u^{ii}`; the spherical polynomial at `μ` is
//! `(−1)^k · (D_λ μ̃^k)(e)`, with `k = |λ|`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::partitions::StrictPartition;
use crate::polyring::MultiPoly;
use crate::repsim::action::m_generators;
use crate::repsim::basis::size_guard;
use crate::repsim::capelli_op::CapelliOperator;
use crate::repsim::decompose::decompose_with_guard;
use crate::repsim::superpoly::{Generator, Parity, SuperPoly};
use crate::scalar::{int, sign, ExactScalar};

/// Dimensions of the even and odd parts of `((V_λ)^*)^𝔪`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MInvariants {
    pub even: usize,
    pub odd: usize,
}

impl MInvariants {
    pub fn dimension(&self) -> usize {
        self.even + self.odd
    }

    /// The parity of the invariants when they are all of one parity.
    pub fn parity(&self) -> Option<Parity> {
        match (self.even, self.odd) {
            (_, 0) => Some(Parity::Even),
            (0, _) => Some(Parity::Odd),
            _ => None,
        }
    }
}

/// Computes the `𝔪`-invariant functionals `φ = Σ_j c_j D_j` on `V_λ`:
/// `φ(X·p_i) = 0` for every generator `X` of `𝔪` and every basis vector
/// `p_i`. The kernel is graded, so each parity is solved separately.
pub fn m_invariant_dimension(lambda: &StrictPartition, n: usize) -> Result<MInvariants> {
    Ok(m_invariant_functionals(lambda, n)?.1)
}

/// The invariant functionals as coefficient vectors along the dual basis of
/// `V_λ`, together with the dimension count.
pub fn m_invariant_functionals(lambda: &StrictPartition, n: usize) -> Result<(Vec<Vec<ExactScalar>>, MInvariants)> {
    lambda.check_fits(n)?;
    let d = decompose_with_guard(n, lambda.weight(), size_guard())?;
    let idx = d.part_index(lambda).ok_or_else(|| Error::Decomposition(format!("no summand for λ = ({lambda})")))?;
    let part = &d.parts()[idx];
    let comp = d.component();
    // a[(X, i)][j]: coordinate j of X·p_i inside V_λ.
    let mut rows = Vec::new();
    for x in m_generators(n) {
        for p in &part.basis {
            let image = comp.to_vec(&x.apply(p));
            rows.push(d.coordinates_in(idx, &image)?);
        }
    }
    let mut functionals = Vec::new();
    let mut counts = MInvariants { even: 0, odd: 0 };
    for parity in [Parity::Even, Parity::Odd] {
        let cols: Vec<usize> = (0..part.dim()).filter(|&j| part.parities()[j] == parity).collect();
        if cols.is_empty() {
            continue;
        }
        let m = Matrix::from_rows(rows.iter().map(|r| cols.iter().map(|&j| r[j].clone()).collect()).collect());
        let null = m.nullspace();
        match parity {
            Parity::Even => counts.even = null.len(),
            Parity::Odd => counts.odd = null.len(),
        }
        for v in null {
            let mut full = vec![ExactScalar::zero(); part.dim()];
            for (&j, c) in cols.iter().zip(v) {
                full[j] = c;
            }
            functionals.push(full);
        }
    }
    Ok((functionals, counts))
}

/// `(−1)^k (D_λ μ̃^k)(e)` at a rational diagonal point `μ`.
pub fn spherical_value(lambda: &StrictPartition, n: usize, mu: &[ExactScalar]) -> Result<ExactScalar> {
    if mu.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: mu.len() });
    }
    let k = lambda.weight();
    let op = CapelliOperator::get(lambda, n)?;
    let mut tilde = SuperPoly::zero(n);
    for (i, m) in mu.iter().enumerate() {
        tilde.add_scaled(&SuperPoly::generator(n, Generator::u(n, i + 1, i + 1)), m);
    }
    let power = (0..k).fold(SuperPoly::one(n), |acc, _| acc.mul(&tilde));
    Ok(sign(k % 2 == 1) * op.apply(&power)?.at_identity())
}

fn lattice_points(n: usize, max: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur.push(v);
            rec(n, left - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max, &mut Vec::new(), &mut out);
    out
}

/// The spherical polynomial of `λ` as an `n`-variable polynomial.
///
/// Values are sampled on the lattice simplex `{a ∈ ℕ^n : |a| ≤ k}`, which is
/// unisolvent for polynomials of degree `≤ k`; the interpolant is then
/// checked against a second layer of points with `|a| = k + 1`.
pub fn spherical_restriction(lambda: &StrictPartition, n: usize) -> Result<MultiPoly> {
    if n == 0 {
        return Err(Error::ZeroVariables);
    }
    lambda.check_fits(n)?;
    let k = lambda.weight();
    let exponents = lattice_points(n, k);
    let to_point = |a: &[u32]| a.iter().map(|&v| int(v as i64)).collect::<Vec<_>>();
    let mut m = Matrix::zeros(exponents.len(), exponents.len());
    let mut rhs = Vec::with_capacity(exponents.len());
    for (i, a) in exponents.iter().enumerate() {
        let pt = to_point(a);
        for (j, e) in exponents.iter().enumerate() {
            m[(i, j)] = MultiPoly::monomial(e.clone(), ExactScalar::one()).evaluate(&pt)?;
        }
        rhs.push(spherical_value(lambda, n, &pt)?);
    }
    let coeffs = m.solve(&rhs)?;
    let poly = MultiPoly::from_terms(n, exponents.into_iter().zip(coeffs))?;
    for a in lattice_points(n, k + 1).into_iter().filter(|a| a.iter().sum::<u32>() == k + 1) {
        let pt = to_point(&a);
        let (expected, got) = (spherical_value(lambda, n, &pt)?, poly.evaluate(&pt)?);
        if expected != got {
            return Err(Error::Interpolation(format!("at {a:?}: sampled {expected}, interpolant {got}")));
        }
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfunctions::schur_q;

    fn sp(parts: &[u32]) -> StrictPartition {
        StrictPartition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn unique_even_invariant() {
        for (lambda, n) in [(sp(&[]), 1), (sp(&[1]), 1), (sp(&[3]), 1), (sp(&[2, 1]), 2), (sp(&[2]), 2)] {
            assert_eq!(m_invariant_dimension(&lambda, n).unwrap(), MInvariants { even: 1, odd: 0 }, "{lambda}");
        }
    }

    #[test]
    fn evaluation_at_base_point_is_invariant() {
        // `p ↦ p(e)` is fixed by 𝔪, so its coefficients along the dual
        // basis span the invariant line.
        for (lambda, n) in [(sp(&[2]), 2), (sp(&[2, 1]), 2)] {
            let d = decompose_with_guard(n, lambda.weight(), size_guard()).unwrap();
            let part = d.part(&lambda).unwrap();
            let at_e: Vec<ExactScalar> = part.basis.iter().map(SuperPoly::at_identity).collect();
            let (functionals, _) = m_invariant_functionals(&lambda, n).unwrap();
            let stacked = Matrix::from_rows(vec![functionals[0].clone(), at_e]);
            assert_eq!(stacked.rank(), 1);
        }
    }

    #[test]
    fn one_variable_restriction() {
        for k in 1..=4u32 {
            let p = spherical_restriction(&sp(&[k]), 1).unwrap();
            let expected = MultiPoly::monomial(vec![k], sign(k % 2 == 1));
            assert_eq!(p, expected);
        }
        assert_eq!(spherical_restriction(&sp(&[]), 2).unwrap(), MultiPoly::one(2));
    }

    #[test]
    fn restriction_is_proportional_to_q() {
        for (lambda, n) in [(sp(&[2, 1]), 2), (sp(&[2]), 2), (sp(&[3]), 2)] {
            let p = spherical_restriction(&lambda, n).unwrap();
            assert!(p.is_homogeneous_of_degree(lambda.weight()));
            let q = schur_q(&lambda, n).unwrap();
            let (e, c) = q.leading_term().unwrap();
            let ratio = p.coefficient(&e.0) / c;
            assert!(!ratio.is_zero());
            assert_eq!(p, q.scale(&ratio));
        }
    }
}
