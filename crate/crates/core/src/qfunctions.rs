//! Schur Q-functions `Q_λ`, factorial Schur Q-functions `Q*_λ` and the
//! general family `Q_λ(x | a)`, with evaluation, an interpolation route and
//! expansion in either basis.
//!
//! `Q_λ(x | a)` is the symmetrization over `S_n` of
//! `∏_{i ≤ ℓ} (x_i | a)^{λ_i} ∏_{i ≤ ℓ, i < j ≤ n} (x_i + x_j)/(x_i − x_j)`
//! scaled by `2^ℓ/(n − ℓ)!`. Each summand only depends on which variables fill
//! the first `ℓ` slots (in order), so we sum over ordered injections
//! `[ℓ] → [n]` instead and drop the `(n − ℓ)!`. Every summand is multiplied by
//! the Vandermonde `∏_{a<b}(x_a − x_b)`, which clears all denominators; the
//! total is then divided by the Vandermonde exactly.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::partitions::{enumerate_strict, h_lambda, HVariant, StrictPartition};
use crate::polyring::{vandermonde, Degree, MultiPoly};
use crate::scalar::{int, pow2, ExactScalar};

/// The parameter sequence `a = (a_1, a_2, …)` of a generalized power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamSequence {
    /// `a_i = 0` for all `i`.
    Zeros,
    /// `a_i = i − 1`, i.e. `(0, 1, 2, …)`.
    Shifted,
    /// The given values, extended by zeros.
    Custom(Vec<ExactScalar>),
}

impl ParamSequence {
    /// `a_i` for `i ≥ 1`.
    pub fn value(&self, i: usize) -> ExactScalar {
        assert!(i >= 1, "parameter sequences are 1-based");
        match self {
            ParamSequence::Zeros => ExactScalar::zero(),
            ParamSequence::Shifted => int(i as i64 - 1),
            ParamSequence::Custom(v) => v.get(i - 1).cloned().unwrap_or_else(ExactScalar::zero),
        }
    }

    fn cache_tag(&self) -> Option<u8> {
        match self {
            ParamSequence::Zeros => Some(0),
            ParamSequence::Shifted => Some(1),
            ParamSequence::Custom(_) => None,
        }
    }
}

/// `(x_i | a)^k = ∏_{j=1}^{k} (x_i − a_j)` as a polynomial in `n` variables.
pub fn generalized_power(n: usize, i: usize, a: &ParamSequence, k: u32) -> MultiPoly {
    let x = MultiPoly::var(n, i);
    (1..=k as usize).fold(MultiPoly::one(n), |acc, j| {
        &acc * &(&x - &MultiPoly::constant(n, a.value(j)))
    })
}

type CacheKey = (StrictPartition, usize, u8);

static EXPANSIONS: Lazy<RwLock<HashMap<CacheKey, Arc<MultiPoly>>>> = Lazy::new(|| RwLock::new(HashMap::new()));

/// All ordered injections `[len] → [n]` (0-based images).
pub(crate) fn injections(n: usize, len: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, len: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(n, len, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(n, len, &mut Vec::with_capacity(len), &mut vec![false; n], &mut out);
    out
}

/// Vandermonde-cleared summand for one injection `slots`.
fn cleared_term(lambda: &StrictPartition, n: usize, a: &ParamSequence, slots: &[usize]) -> MultiPoly {
    let x = |i: usize| MultiPoly::var(n, i + 1);
    let mut in_slots = vec![None; n];
    for (pos, &v) in slots.iter().enumerate() {
        in_slots[v] = Some(pos);
    }
    let mut acc = MultiPoly::one(n);
    for (pos, &v) in slots.iter().enumerate() {
        acc = &acc * &generalized_power(n, v + 1, a, lambda.part(pos));
    }
    let mut negative = false;
    for p in 0..n {
        for q in p + 1..n {
            match (in_slots[p], in_slots[q]) {
                (None, None) => acc = &acc * &(&x(p) - &x(q)),
                (sp, sq) => {
                    // The slot that comes first in the symmetrized order
                    // carries the numerator sign of the denominator.
                    let p_first = match (sp, sq) {
                        (Some(i), Some(j)) => i < j,
                        (Some(_), None) => true,
                        (None, Some(_)) => false,
                        (None, None) => unreachable!(),
                    };
                    if !p_first {
                        negative = !negative;
                    }
                    acc = &acc * &(&x(p) + &x(q));
                }
            }
        }
    }
    let scale = pow2(lambda.len());
    acc.scale(&if negative { -scale } else { scale })
}

/// `Q_λ(x_1, …, x_n | a)`, fully expanded.
pub fn q_lambda_general(lambda: &StrictPartition, n: usize, a: &ParamSequence) -> Result<MultiPoly> {
    if n == 0 {
        return Err(Error::ZeroVariables);
    }
    lambda.check_fits(n)?;
    let key = a.cache_tag().map(|t| (lambda.clone(), n, t));
    if let Some(k) = &key {
        if let Some(p) = EXPANSIONS.read().expect("cache lock poisoned").get(k) {
            return Ok((**p).clone());
        }
    }
    let numerator = injections(n, lambda.len())
        .par_iter()
        .map(|s| cleared_term(lambda, n, a, s))
        .reduce(|| MultiPoly::zero(n), |x, y| &x + &y);
    let result = numerator.exact_divide(&vandermonde(n))?;
    if let Some(k) = key {
        EXPANSIONS.write().expect("cache lock poisoned").insert(k, Arc::new(result.clone()));
    }
    Ok(result)
}

/// The Schur Q-function `Q_λ(x_1, …, x_n)`.
pub fn schur_q(lambda: &StrictPartition, n: usize) -> Result<MultiPoly> {
    q_lambda_general(lambda, n, &ParamSequence::Zeros)
}

/// The factorial Schur Q-function `Q*_λ(x_1, …, x_n)`.
pub fn factorial_schur_q(lambda: &StrictPartition, n: usize) -> Result<MultiPoly> {
    q_lambda_general(lambda, n, &ParamSequence::Shifted)
}

/// `Q*_λ(μ)` for a point with `n` coordinates.
pub fn eval_qstar(lambda: &StrictPartition, point: &[ExactScalar], n: usize) -> Result<ExactScalar> {
    if point.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: point.len() });
    }
    factorial_schur_q(lambda, n)?.evaluate(point)
}

/// `Q*_λ(μ)` at a strict partition, zero-padded to `n` coordinates.
pub fn eval_qstar_at(lambda: &StrictPartition, mu: &StrictPartition, n: usize) -> Result<ExactScalar> {
    mu.check_fits(n)?;
    eval_qstar(lambda, &mu.as_point(n), n)
}

/// Evaluates `Q_λ(point | a)` straight from the symmetrized rational
/// expression. Requires pairwise distinct coordinates.
pub fn eval_symmetrized(lambda: &StrictPartition, a: &ParamSequence, point: &[ExactScalar]) -> Result<ExactScalar> {
    let n = point.len();
    if n == 0 {
        return Err(Error::ZeroVariables);
    }
    lambda.check_fits(n)?;
    for i in 0..n {
        for j in i + 1..n {
            if point[i] == point[j] {
                return Err(Error::Singular(format!("coordinates {} and {} coincide", i + 1, j + 1)));
            }
        }
    }
    let gp = |x: &ExactScalar, k: u32| -> ExactScalar {
        (1..=k as usize).fold(ExactScalar::one(), |acc, j| acc * (x - a.value(j)))
    };
    let ell = lambda.len();
    let mut total = ExactScalar::zero();
    for slots in injections(n, ell) {
        let mut used = vec![false; n];
        let mut t = ExactScalar::one();
        for (pos, &v) in slots.iter().enumerate() {
            used[v] = true;
            t *= gp(&point[v], lambda.part(pos));
        }
        let rest: Vec<usize> = (0..n).filter(|v| !used[*v]).collect();
        let order: Vec<usize> = slots.iter().copied().chain(rest).collect();
        for i in 0..ell {
            for j in i + 1..n {
                let (xi, xj) = (&point[order[i]], &point[order[j]]);
                t *= (xi + xj) / (xi - xj);
            }
        }
        total += t;
    }
    Ok(total * pow2(ell))
}

/// Which family to expand in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    Q,
    QStar,
}

fn basis_element(basis: Basis, nu: &StrictPartition, n: usize) -> Result<MultiPoly> {
    match basis {
        Basis::Q => schur_q(nu, n),
        Basis::QStar => factorial_schur_q(nu, n),
    }
}

/// Coefficients `c_ν` with `p = Σ c_ν · B_ν` for `B = Q` or `Q*`.
///
/// Both families have leading monomial `2^{ℓ(ν)} x^ν` in graded lex order, so
/// the expansion is found by repeatedly cancelling the leading term.
pub fn expand_in_basis(p: &MultiPoly, basis: Basis, n: usize) -> Result<BTreeMap<StrictPartition, ExactScalar>> {
    if p.nvars() != n {
        return Err(Error::VariableMismatch(p.nvars(), n));
    }
    if !p.is_q_symmetric() {
        return Err(Error::NotQSymmetric);
    }
    let mut rem = p.clone();
    let mut out = BTreeMap::new();
    while let Some((e, c)) = rem.leading_term() {
        let e = e.0.clone();
        let nonzero: Vec<u32> = e.iter().copied().take_while(|&v| v > 0).collect();
        if nonzero.len() != e.iter().filter(|&&v| v > 0).count() {
            return Err(Error::NotInSpan(e));
        }
        let nu = StrictPartition::new(nonzero).map_err(|_| Error::NotInSpan(e.clone()))?;
        let coeff = c / pow2(nu.len());
        let b = basis_element(basis, &nu, n)?;
        rem = &rem - &b.scale(&coeff);
        out.insert(nu, coeff);
    }
    Ok(out)
}

/// The evaluation matrix `(Q*_ν(μ))` with rows `μ` and columns `ν` running
/// over the strict partitions of length `≤ n` and weight `≤ k`, both in
/// `precedes` order.
pub fn evaluation_matrix(n: usize, k: u32) -> Result<(Vec<StrictPartition>, Matrix)> {
    let parts = enumerate_strict(n, k);
    let mut m = Matrix::zeros(parts.len(), parts.len());
    for (j, nu) in parts.iter().enumerate() {
        let q = factorial_schur_q(nu, n)?;
        for (i, mu) in parts.iter().enumerate() {
            m[(i, j)] = q.evaluate(&mu.as_point(n))?;
        }
    }
    Ok((parts, m))
}

/// True iff the matrix is lower triangular with nonzero diagonal.
pub fn is_lower_triangular_invertible(m: &Matrix) -> bool {
    m.rows() == m.cols()
        && (0..m.rows()).all(|i| !m[(i, i)].is_zero() && (i + 1..m.cols()).all(|j| m[(i, j)].is_zero()))
}

/// Reconstructs `Q*_λ` as the unique element of degree `≤ |λ|` in the span
/// of `{Q_ν}` that vanishes at every other strict partition of weight
/// `≤ |λ|` and takes the value `H(λ)` at `λ`.
pub fn qstar_by_interpolation(lambda: &StrictPartition, n: usize) -> Result<MultiPoly> {
    if n == 0 {
        return Err(Error::ZeroVariables);
    }
    lambda.check_fits(n)?;
    let parts = enumerate_strict(n, lambda.weight());
    let basis: Vec<MultiPoly> = parts.iter().map(|nu| schur_q(nu, n)).collect::<Result<_>>()?;
    let mut m = Matrix::zeros(parts.len(), parts.len());
    for (i, mu) in parts.iter().enumerate() {
        let pt = mu.as_point(n);
        for (j, b) in basis.iter().enumerate() {
            m[(i, j)] = b.evaluate(&pt)?;
        }
    }
    let target = h_lambda(lambda, HVariant::Doubled);
    let rhs: Vec<ExactScalar> = parts
        .iter()
        .map(|mu| if mu == lambda { target.clone() } else { ExactScalar::zero() })
        .collect();
    let coeffs = m.solve(&rhs)?;
    Ok(basis
        .iter()
        .zip(&coeffs)
        .filter(|(_, c)| !c.is_zero())
        .fold(MultiPoly::zero(n), |acc, (b, c)| &acc + &b.scale(c)))
}

/// `deg p ≤ d`, with the zero polynomial counting as `−∞`.
pub fn degree_at_most(p: &MultiPoly, d: u32) -> bool {
    p.degree() <= Degree::Finite(d)
}
