//! The action of `𝔩 = q(n) × q(n)` on `𝒫(V)` by first-order operators.
//!
//! The second factor acts on column indices and the first factor on row
//! indices of the generators:
//!
//! - `b^{kl}`:  `Σ_p u^{pk} ∂/∂u^{pl} + ξ^{pk} ∂/∂ξ^{pl}`
//! - `β^{kl}`:  `Σ_p ξ^{pk} ∂/∂u^{pl} + u^{pk} ∂/∂ξ^{pl}`
//! - `a^{kl}`:  `Σ_p u^{lp} ∂/∂u^{kp} + ξ^{lp} ∂/∂ξ^{kp}`
//! - `α^{kl}`:  `Σ_p −ξ^{lp} ∂/∂u^{kp} + u^{lp} ∂/∂ξ^{kp}`
//!
//! The `b, β` operators represent `q(n)`; the `a, α` operators satisfy the
//! opposite bracket (`[X, Y] ↦ −[A_X, A_Y]`), and the two families
//! supercommute.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::Result;
use crate::repsim::basis::{check_size, size_guard, GradedComponent};
use crate::repsim::linop::LinearOperator;
use crate::repsim::superpoly::{Generator, Parity, SuperMonomial, SuperPoly};
use crate::scalar::{int, ExactScalar};

/// Which family of action operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ActionKind {
    A,
    Alpha,
    B,
    Beta,
}

impl ActionKind {
    pub fn parity(self) -> Parity {
        match self {
            ActionKind::A | ActionKind::B => Parity::Even,
            ActionKind::Alpha | ActionKind::Beta => Parity::Odd,
        }
    }

    pub fn all() -> [ActionKind; 4] {
        [ActionKind::A, ActionKind::Alpha, ActionKind::B, ActionKind::Beta]
    }
}

/// A first-order operator `Σ c · g_target · ∂/∂g_source`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    n: usize,
    parity: Parity,
    terms: Vec<(ExactScalar, Generator, Generator)>,
}

impl VectorField {
    pub fn new(n: usize, parity: Parity) -> Self {
        VectorField { n, parity, terms: Vec::new() }
    }

    pub fn push(&mut self, c: ExactScalar, target: Generator, source: Generator) {
        debug_assert_eq!(target.parity().combine(source.parity()), self.parity);
        self.terms.push((c, target, source));
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn terms(&self) -> &[(ExactScalar, Generator, Generator)] {
        &self.terms
    }

    /// `self + c · other`.
    pub fn plus(&self, c: &ExactScalar, other: &VectorField) -> VectorField {
        assert_eq!(self.parity, other.parity);
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().map(|(d, t, s)| (c * d, *t, *s)));
        out
    }

    pub fn apply_monomial(&self, m: &SuperMonomial) -> SuperPoly {
        let mut out = SuperPoly::zero(self.n);
        for (c, target, source) in &self.terms {
            let Some((d, m1)) = m.derivative(*source) else { continue };
            let Some((neg, m2)) = m1.left_mul(*target) else { continue };
            let v = c * d;
            out.add_term(m2, if neg { -v } else { v });
        }
        out
    }

    pub fn apply(&self, p: &SuperPoly) -> SuperPoly {
        let mut out = SuperPoly::zero(self.n);
        for (m, c) in p.terms() {
            out.add_scaled(&self.apply_monomial(m), c);
        }
        out
    }

    /// Matrix on `𝒫^d(V)`.
    pub fn matrix(&self, d: u32) -> LinearOperator {
        let c = GradedComponent::get(self.n, d);
        LinearOperator::from_fn(&c, &c, self.parity, |m| self.apply_monomial(m))
    }

    /// The coefficient field evaluated at the base point `u = 1, ξ = 0`,
    /// as a map from source generators to scalars (zero entries dropped).
    pub fn at_identity(&self) -> Vec<(Generator, ExactScalar)> {
        let mut out: Vec<(Generator, ExactScalar)> = Vec::new();
        for (c, target, source) in &self.terms {
            let v = SuperMonomial::generator(self.n, *target).at_identity() * c;
            match out.iter_mut().find(|(g, _)| g == source) {
                Some((_, acc)) => *acc += v,
                None => out.push((*source, v)),
            }
        }
        out.retain(|(_, v)| !v.is_zero());
        out
    }
}

/// The action operator of the given family for indices `k, l` (1-based).
pub fn action_field(kind: ActionKind, k: usize, l: usize, n: usize) -> VectorField {
    let one = ExactScalar::one();
    let mut f = VectorField::new(n, kind.parity());
    for p in 1..=n {
        match kind {
            ActionKind::B => {
                f.push(one.clone(), Generator::u(n, p, k), Generator::u(n, p, l));
                f.push(one.clone(), Generator::xi(n, p, k), Generator::xi(n, p, l));
            }
            ActionKind::Beta => {
                f.push(one.clone(), Generator::xi(n, p, k), Generator::u(n, p, l));
                f.push(one.clone(), Generator::u(n, p, k), Generator::xi(n, p, l));
            }
            ActionKind::A => {
                f.push(one.clone(), Generator::u(n, l, p), Generator::u(n, k, p));
                f.push(one.clone(), Generator::xi(n, l, p), Generator::xi(n, k, p));
            }
            ActionKind::Alpha => {
                f.push(-one.clone(), Generator::xi(n, l, p), Generator::u(n, k, p));
                f.push(one.clone(), Generator::u(n, l, p), Generator::xi(n, k, p));
            }
        }
    }
    f
}

/// Matrix of an action operator on `𝒫^d(V)`, subject to the size guard.
pub fn action_matrix(kind: ActionKind, k: usize, l: usize, n: usize, d: u32) -> Result<LinearOperator> {
    check_size(n, d, size_guard())?;
    Ok(action_field(kind, k, l, n).matrix(d))
}

/// Basis element of `q(n)`: `u_{kl}` (even) or `ξ_{kl}` (odd), 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QElement {
    U(usize, usize),
    Xi(usize, usize),
}

impl QElement {
    pub fn parity(self) -> Parity {
        match self {
            QElement::U(..) => Parity::Even,
            QElement::Xi(..) => Parity::Odd,
        }
    }

    pub fn basis(n: usize) -> Vec<QElement> {
        let mut out = Vec::new();
        for k in 1..=n {
            for l in 1..=n {
                out.push(QElement::U(k, l));
                out.push(QElement::Xi(k, l));
            }
        }
        out
    }

    /// Operator of this element in the second (column) factor.
    pub fn right_field(self, n: usize) -> VectorField {
        match self {
            QElement::U(k, l) => action_field(ActionKind::B, k, l, n),
            QElement::Xi(k, l) => action_field(ActionKind::Beta, k, l, n),
        }
    }

    /// Operator of this element in the first (row) factor.
    pub fn left_field(self, n: usize) -> VectorField {
        match self {
            QElement::U(k, l) => action_field(ActionKind::A, k, l, n),
            QElement::Xi(k, l) => action_field(ActionKind::Alpha, k, l, n),
        }
    }
}

impl fmt::Display for QElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QElement::U(k, l) => write!(f, "u{k}{l}"),
            QElement::Xi(k, l) => write!(f, "xi{k}{l}"),
        }
    }
}

/// Structure constants of `q(n)`:
/// `[u_kl, u_mn] = δ_lm u_kn − δ_nk u_ml`, the same with one `ξ` for mixed
/// brackets, and `[ξ_kl, ξ_mn] = δ_lm u_kn + δ_nk u_ml`.
pub fn bracket(x: QElement, y: QElement) -> Vec<(QElement, i64)> {
    let (k, l, m, nn) = match (x, y) {
        (QElement::U(k, l) | QElement::Xi(k, l), QElement::U(m, n) | QElement::Xi(m, n)) => (k, l, m, n),
    };
    let mut out = Vec::new();
    match (x, y) {
        (QElement::U(..), QElement::U(..)) => {
            if l == m {
                out.push((QElement::U(k, nn), 1));
            }
            if nn == k {
                out.push((QElement::U(m, l), -1));
            }
        }
        (QElement::U(..), QElement::Xi(..)) | (QElement::Xi(..), QElement::U(..)) => {
            if l == m {
                out.push((QElement::Xi(k, nn), 1));
            }
            if nn == k {
                out.push((QElement::Xi(m, l), -1));
            }
        }
        (QElement::Xi(..), QElement::Xi(..)) => {
            if l == m {
                out.push((QElement::U(k, nn), 1));
            }
            if nn == k {
                out.push((QElement::U(m, l), 1));
            }
        }
    }
    out
}

/// Generators of the diagonal subalgebra `𝔪 ≅ q(n)` that fixes the base
/// point: `b^{ij} − a^{ij}` (even) and `α^{ij} − β^{ij}` (odd).
pub fn m_generators(n: usize) -> Vec<VectorField> {
    let minus = -ExactScalar::one();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            out.push(action_field(ActionKind::B, i, j, n).plus(&minus, &action_field(ActionKind::A, i, j, n)));
            out.push(action_field(ActionKind::Alpha, i, j, n).plus(&minus, &action_field(ActionKind::Beta, i, j, n)));
        }
    }
    out
}

/// Checks the bracket relations of `q(n) × q(n)` on `𝒫^d(V)`: the column
/// factor is a representation, the row factor an anti-representation, and
/// the two supercommute. Returns the first failing pair, if any.
pub fn check_bracket_relations(n: usize, d: u32) -> Option<String> {
    let basis = QElement::basis(n);
    let right: Vec<LinearOperator> = basis.iter().map(|x| x.right_field(n).matrix(d)).collect();
    let left: Vec<LinearOperator> = basis.iter().map(|x| x.left_field(n).matrix(d)).collect();
    let index = |e: QElement| basis.iter().position(|b| *b == e).expect("basis element");
    let c = GradedComponent::get(n, d);
    let zero = LinearOperator::identity(&c).scale(&ExactScalar::zero());
    for (i, &x) in basis.iter().enumerate() {
        for (j, &y) in basis.iter().enumerate() {
            let structure = bracket(x, y);
            for (ops, sign, side) in [(&right, 1i64, "right"), (&left, -1, "left")] {
                let expected = structure.iter().fold(zero.clone(), |acc, (e, c)| {
                    acc.combine(&ExactScalar::one(), &ops[index(*e)], &int(c * sign))
                });
                if !ops[i].supercommutator(&ops[j]).same_matrix(&expected) {
                    return Some(format!("{side} [{x}, {y}] on degree {d}"));
                }
            }
            if !right[i].supercommutator(&left[j]).is_zero() {
                return Some(format!("cross [{x}, {y}] on degree {d}"));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn degree_one_examples() {
        let b = action_matrix(ActionKind::B, 1, 1, 1, 1).unwrap();
        let c = GradedComponent::get(1, 1);
        assert!(b.same_matrix(&LinearOperator::identity(&c)));
        let beta = action_matrix(ActionKind::Beta, 1, 1, 1, 1).unwrap();
        // u ↦ ξ and ξ ↦ u.
        assert_eq!((beta.entry(1, 0), beta.entry(0, 1)), (int(1), int(1)));
        assert_eq!((beta.entry(0, 0), beta.entry(1, 1)), (int(0), int(0)));
        for kind in ActionKind::all() {
            assert!(action_matrix(kind, 1, 2, 2, 0).unwrap().is_zero());
        }
    }

    #[test]
    fn bracket_relations_small() {
        for n in 1..=2 {
            for d in 0..=2 {
                assert_eq!(check_bracket_relations(n, d), None);
            }
        }
    }

    #[test]
    fn m_generators_vanish_at_base_point() {
        for n in 1..=3 {
            for g in m_generators(n) {
                assert!(g.at_identity().is_empty());
            }
        }
        // The single factors do not.
        assert!(!action_field(ActionKind::B, 1, 1, 2).at_identity().is_empty());
    }
}
