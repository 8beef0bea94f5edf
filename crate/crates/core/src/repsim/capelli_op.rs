//! The Capelli operators `D_λ = Σ_j p_j D_j` and their measured spectra.
//!
//! With `(p_j)` a basis of `V_λ` and `(D_j)` its dual basis in `D^k(V)`,
//! `D_λ f = Σ_r π_λ(r) · ∂_r f / (∂_r r)`, where `r` runs over the degree-`k`
//! monomials and `π_λ` is the projection onto `V_λ` along the other
//! summands. The projections are evaluated lazily, one weight block at a
//! time.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};
use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::partitions::StrictPartition;
use crate::repsim::basis::{check_size, size_guard, GradedComponent};
use crate::repsim::decompose::{decompose_with_guard, Decomposition};
use crate::repsim::linop::LinearOperator;
use crate::repsim::superpoly::{Parity, SuperPoly};
use crate::scalar::ExactScalar;

/// `D_λ = Σ_j p_j D_j`, evaluated through the decomposition of `𝒫^k(V)`.
#[derive(Debug)]
pub struct CapelliOperator {
    lambda: StrictPartition,
    n: usize,
    k: u32,
    decomposition: Arc<Decomposition>,
    part: usize,
}

type OperatorCache = Lazy<RwLock<HashMap<(StrictPartition, usize), Arc<CapelliOperator>>>>;

static OPERATORS: OperatorCache = Lazy::new(|| RwLock::new(HashMap::new()));

impl CapelliOperator {
    /// Builds (or fetches) `D_λ` under the active size guard.
    pub fn get(lambda: &StrictPartition, n: usize) -> Result<Arc<CapelliOperator>> {
        CapelliOperator::get_with_guard(lambda, n, size_guard())
    }

    pub fn get_with_guard(lambda: &StrictPartition, n: usize, guard: u128) -> Result<Arc<CapelliOperator>> {
        lambda.check_fits(n)?;
        let key = (lambda.clone(), n);
        if let Some(op) = OPERATORS.read().expect("cache lock poisoned").get(&key) {
            return Ok(op.clone());
        }
        let k = lambda.weight();
        let decomposition = decompose_with_guard(n, k, guard)?;
        let part = decomposition
            .part_index(lambda)
            .ok_or_else(|| Error::Decomposition(format!("no summand for λ = ({lambda})")))?;
        let op = Arc::new(CapelliOperator { lambda: lambda.clone(), n, k, decomposition, part });
        Ok(OPERATORS.write().expect("cache lock poisoned").entry(key).or_insert(op).clone())
    }

    pub fn lambda(&self) -> &StrictPartition {
        &self.lambda
    }

    pub fn order(&self) -> u32 {
        self.k
    }

    pub fn apply(&self, f: &SuperPoly) -> Result<SuperPoly> {
        self.decomposition.capelli_apply(self.part, f)
    }

    /// Matrix on `𝒫^m(V)`.
    pub fn matrix(&self, m: u32) -> Result<LinearOperator> {
        let c = GradedComponent::get(self.n, m);
        let mut images = HashMap::new();
        for mono in c.monomials() {
            images.insert(mono.clone(), self.apply(&SuperPoly::from_monomial(mono.clone(), ExactScalar::one()))?);
        }
        Ok(LinearOperator::from_fn(&c, &c, Parity::Even, |mono| images.remove(mono).expect("every monomial imaged")))
    }
}

/// Matrix of `D_λ` on `𝒫^m(V)`.
pub fn capelli_operator(lambda: &StrictPartition, n: usize, m: u32) -> Result<LinearOperator> {
    check_size(n, m, size_guard())?;
    CapelliOperator::get(lambda, n)?.matrix(m)
}

/// Applies `D_λ` to every basis vector of `V_μ` and returns the common
/// scalar, failing if the action is not scalar. The basis is visited weight
/// block by weight block, which keeps the Gram cache small.
pub fn measured_eigenvalue(lambda: &StrictPartition, mu: &StrictPartition, n: usize) -> Result<ExactScalar> {
    measured_eigenvalue_with_guard(lambda, mu, n, size_guard())
}

pub fn measured_eigenvalue_with_guard(
    lambda: &StrictPartition,
    mu: &StrictPartition,
    n: usize,
    guard: u128,
) -> Result<ExactScalar> {
    lambda.check_fits(n)?;
    mu.check_fits(n)?;
    let d = decompose_with_guard(n, mu.weight(), guard)?;
    let part = d.part(mu).ok_or_else(|| Error::Decomposition(format!("no summand for μ = ({mu})")))?;
    let op = CapelliOperator::get_with_guard(lambda, n, guard)?;
    let comp = d.component();
    let mut order: Vec<usize> = (0..part.dim()).collect();
    order.sort_by_cached_key(|&i| comp.block_of(*part.vectors()[i].keys().next().expect("nonzero vector")));
    let mut scalar: Option<ExactScalar> = None;
    for p in order.into_iter().map(|i| &part.basis[i]) {
        let image = op.apply(p)?;
        let (m, c) = p.terms().next().expect("basis vectors are nonzero");
        let ratio = image.coefficient(m) / c;
        if image != p.scale(&ratio) {
            return Err(Error::NonScalar(format!("D_({lambda}) on V_({mu})")));
        }
        match &scalar {
            None => scalar = Some(ratio),
            Some(s) if *s != ratio => {
                return Err(Error::NonScalar(format!("D_({lambda}) on V_({mu}): {s} vs {ratio}")));
            }
            Some(_) => {}
        }
    }
    Ok(scalar.unwrap_or_else(ExactScalar::zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::capelli::capelli_eigenvalue;
    use crate::partitions::enumerate_strict;
    use crate::repsim::action::QElement;
    use crate::scalar::int;

    fn sp(parts: &[u32]) -> StrictPartition {
        StrictPartition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn trivial_and_euler() {
        for m in 0..=3 {
            let c = GradedComponent::get(2, m);
            let id = LinearOperator::identity(&c);
            assert!(capelli_operator(&sp(&[]), 2, m).unwrap().same_matrix(&id));
            assert!(capelli_operator(&sp(&[1]), 2, m).unwrap().same_matrix(&id.scale(&int(m as i64))));
        }
    }

    #[test]
    fn examples() {
        assert_eq!(measured_eigenvalue(&sp(&[1]), &sp(&[2]), 1).unwrap(), int(2));
        assert_eq!(measured_eigenvalue(&sp(&[2]), &sp(&[3]), 1).unwrap(), int(3));
        assert_eq!(measured_eigenvalue(&sp(&[2, 1]), &sp(&[2, 1]), 2).unwrap(), int(1));
    }

    #[test]
    fn spectrum_matches_closed_form_small() {
        for lambda in enumerate_strict(2, 3) {
            for mu in enumerate_strict(2, 3) {
                if lambda.weight() <= mu.weight() {
                    assert_eq!(
                        measured_eigenvalue(&lambda, &mu, 2).unwrap(),
                        capelli_eigenvalue(&lambda, &mu, 2).unwrap(),
                        "λ = {lambda}, μ = {mu}"
                    );
                }
            }
        }
    }

    #[test]
    fn commutes_with_the_action() {
        for lambda in enumerate_strict(2, 2) {
            let d = capelli_operator(&lambda, 2, 2).unwrap();
            for x in QElement::basis(2) {
                for f in [x.right_field(2), x.left_field(2)] {
                    assert!(d.supercommutator(&f.matrix(2)).is_zero());
                }
            }
        }
    }
}
