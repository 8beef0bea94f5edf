//! Decomposition of `𝒫^k(V)` into the simple summands `V_λ`, and the dual
//! bases `(D_j) ⊂ D^k(V)` of constant-coefficient operators.
//!
//! For each strict `λ` with `|λ| = k`, the joint highest-weight vectors are
//! the vectors of weight `(λ, λ)` (row and column degrees both equal to `λ`)
//! killed by the raising operators `b^{kl}, β^{kl}` (`k < l`) and
//! `a^{kl}, α^{kl}` (`k > l`). The summand `V_λ` is their closure under the
//! lowering operators `b^{k+1,k}, a^{k,k+1}` and the odd Cartan operators
//! `β^{kk}, α^{kk}`. Every summand is a sum of weight blocks, and distinct
//! summands are orthogonal for the Fischer form, so projections and dual
//! bases come from per-block Gram matrices of each summand. Those Gram
//! systems are solved modulo word-sized primes and lifted back to the
//! rationals, and each solution is checked exactly (see [`crate::modular`]).

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::linalg::{axpy, Matrix, SparseVec};
use crate::modular::{field, ModularEchelon, ModularSolver};
use crate::partitions::{strict_of_weight, StrictPartition};
use crate::repsim::action::{action_field, ActionKind, VectorField};
use crate::repsim::basis::{check_size, size_guard, BlockKey, GradedComponent};
use crate::repsim::linop::LinearOperator;
use crate::repsim::superpoly::{Parity, SuperMonomial, SuperPoly};
use crate::scalar::{add_product, ExactScalar};

/// A constant-coefficient operator `Σ c_r ∂_r` of order `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstCoeffOperator {
    n: usize,
    degree: u32,
    terms: Vec<(SuperMonomial, ExactScalar)>,
}

impl ConstCoeffOperator {
    pub fn new(n: usize, degree: u32, terms: Vec<(SuperMonomial, ExactScalar)>) -> Self {
        debug_assert!(terms.iter().all(|(r, _)| r.degree() == degree));
        ConstCoeffOperator { n, degree, terms }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &[(SuperMonomial, ExactScalar)] {
        &self.terms
    }

    pub fn apply(&self, f: &SuperPoly) -> SuperPoly {
        let mut out = SuperPoly::zero(self.n);
        for (r, c) in &self.terms {
            for (m, fc) in f.terms() {
                if let Some((d, rest)) = m.apply_partial_of(r) {
                    out.add_term(rest, c * fc * d);
                }
            }
        }
        out
    }

    /// `D(p)` for `p` of the same degree, which is a constant.
    pub fn pair(&self, p: &SuperPoly) -> ExactScalar {
        self.apply(p).terms().map(|(_, c)| c.clone()).sum()
    }
}

/// One simple summand `V_λ ⊂ 𝒫^k(V)` with a basis.
#[derive(Clone, Debug)]
pub struct IsotypicComponent {
    pub lambda: StrictPartition,
    pub n: usize,
    pub k: u32,
    pub basis: Vec<SuperPoly>,
    vectors: Vec<SparseVec>,
    parities: Vec<Parity>,
}

impl IsotypicComponent {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of the basis vectors in the monomial basis of `𝒫^k(V)`.
    pub fn vectors(&self) -> &[SparseVec] {
        &self.vectors
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    /// `(dim of the even part, dim of the odd part)`.
    pub fn superdimension(&self) -> (usize, usize) {
        let odd = self.parities.iter().filter(|p| p.is_odd()).count();
        (self.parities.len() - odd, odd)
    }
}

/// Gram data of one summand on one weight block: the positions of its basis
/// vectors there, for each monomial `r` the entries `(j, v_j[r])` and the
/// Fischer weight `w_r = |∂_r r|`,
/// and a solver for the Gram matrix of the Fischer form, built on first use.
#[derive(Debug)]
struct BlockGram {
    positions: Vec<usize>,
    column: HashMap<usize, Vec<(usize, ExactScalar)>>,
    weights: HashMap<usize, ExactScalar>,
    solver: OnceLock<ModularSolver>,
}

impl BlockGram {
    fn solver(&self) -> &ModularSolver {
        self.solver.get_or_init(|| {
            let g = self.integer_gram().unwrap_or_else(|| self.rational_gram());
            ModularSolver::new(g).expect("Gram matrices are square")
        })
    }

    /// `G_ab = Σ_r v_a[r]·v_b[r]·w_r`, filling the upper
    /// triangle through `add` and mirroring it.
    fn assemble<T: Clone>(
        &self,
        zero: T,
        of: impl Fn(&ExactScalar) -> Option<T>,
        add: impl Fn(&T, &T, &T, &T) -> Option<T>,
        lift: impl Fn(&T) -> ExactScalar,
    ) -> Option<Matrix> {
        let m = self.positions.len();
        let mut g = vec![zero; m * m];
        for (r, entries) in &self.column {
            let w = of(&self.weights[r])?;
            let xs: Vec<(usize, T)> = entries.iter().map(|(j, x)| Some((*j, of(x)?))).collect::<Option<_>>()?;
            for (a, x) in &xs {
                for (b, y) in xs.iter().filter(|(b, _)| a <= b) {
                    g[a * m + b] = add(&g[a * m + b], x, y, &w)?;
                }
            }
        }
        let mut out = Matrix::zeros(m, m);
        for a in 0..m {
            for b in a..m {
                let v = lift(&g[a * m + b]);
                out[(b, a)] = v.clone();
                out[(a, b)] = v;
            }
        }
        Some(out)
    }

    /// The Gram matrix in machine integers, when every entry involved is an
    /// integer and nothing overflows.
    fn integer_gram(&self) -> Option<Matrix> {
        self.assemble(
            0i128,
            |x| if x.is_integer() { x.numer().to_i128() } else { None },
            |acc, x, y, w| acc.checked_add(x.checked_mul(*y)?.checked_mul(*w)?),
            |v| ExactScalar::from_integer(BigInt::from(*v)),
        )
    }

    fn rational_gram(&self) -> Matrix {
        self.assemble(ExactScalar::zero(), |x| Some(x.clone()), |acc, x, y, w| Some(acc + x * y * w), Clone::clone)
            .expect("rational assembly cannot fail")
    }

    /// `G⁻¹ h`.
    fn solve(&self, h: &[ExactScalar]) -> Result<Vec<ExactScalar>> {
        self.solver()
            .solve(h)
            .map_err(|e| Error::Decomposition(format!("summand vectors are not independent: {e}")))
    }
}

/// Upper bound on the number of cached Gram entries.
const GRAM_CACHE_LIMIT: usize = 1 << 21;

#[derive(Debug, Default)]
struct GramCache {
    entries: HashMap<(usize, BlockKey), Arc<BlockGram>>,
    size: usize,
    orthogonal: HashSet<BlockKey>,
}

/// `𝒫^k(V) = ⊕_λ V_λ`. Coordinates along the summands are computed block by
/// block on demand: distinct summands are orthogonal for the positive
/// Fischer form `⟨r, s⟩ = δ_rs·|∂_r r|`, so a monomial's coordinates in
/// `V_λ` only need the Gram matrix of `V_λ` on the monomial's weight block.
#[derive(Debug)]
pub struct Decomposition {
    component: Arc<GradedComponent>,
    parts: Vec<IsotypicComponent>,
    /// For each weight block, its summand vectors `(part, position)`.
    members: HashMap<BlockKey, Vec<(usize, usize)>>,
    grams: Mutex<GramCache>,
}

impl Decomposition {
    pub fn component(&self) -> &GradedComponent {
        &self.component
    }

    pub fn parts(&self) -> &[IsotypicComponent] {
        &self.parts
    }

    pub fn part_index(&self, lambda: &StrictPartition) -> Option<usize> {
        self.parts.iter().position(|p| &p.lambda == lambda)
    }

    pub fn part(&self, lambda: &StrictPartition) -> Option<&IsotypicComponent> {
        self.parts.iter().find(|p| &p.lambda == lambda)
    }

    fn block_gram(&self, part: usize, key: &BlockKey) -> Result<Arc<BlockGram>> {
        let cache_key = (part, key.clone());
        if let Some(g) = self.grams.lock().expect("cache lock poisoned").entries.get(&cache_key) {
            return Ok(g.clone());
        }
        let comp = &self.component;
        let members = self.members.get(key).map(Vec::as_slice).unwrap_or(&[]);
        let weight: HashMap<usize, ExactScalar> =
            comp.blocks()[key].iter().map(|&i| (i, comp.monomial(i).self_pairing().abs())).collect();
        let checked = self.grams.lock().expect("cache lock poisoned").orthogonal.contains(key);
        if !checked {
            check_orthogonal(&self.parts, members, &weight)?;
            self.grams.lock().expect("cache lock poisoned").orthogonal.insert(key.clone());
        }
        let positions: Vec<usize> = members.iter().filter(|(p, _)| *p == part).map(|(_, pos)| *pos).collect();
        let mut column: HashMap<usize, Vec<(usize, ExactScalar)>> = HashMap::new();
        for (j, &pos) in positions.iter().enumerate() {
            for (r, c) in &self.parts[part].vectors[pos] {
                column.entry(*r).or_default().push((j, c.clone()));
            }
        }
        let g = Arc::new(BlockGram { positions, column, weights: weight, solver: OnceLock::new() });
        let mut cache = self.grams.lock().expect("cache lock poisoned");
        let m = g.positions.len();
        if cache.size + m * m > GRAM_CACHE_LIMIT {
            cache.entries.clear();
            cache.size = 0;
        }
        cache.size += m * m;
        Ok(cache.entries.entry(cache_key).or_insert(g).clone())
    }

    fn by_block<T>(&self, items: impl IntoIterator<Item = (usize, T)>) -> BTreeMap<BlockKey, Vec<(usize, T)>> {
        let mut out: BTreeMap<BlockKey, Vec<(usize, T)>> = BTreeMap::new();
        for (i, t) in items {
            out.entry(self.component.block_of(i)).or_default().push((i, t));
        }
        out
    }

    /// Coordinates of `v` along the basis of part `part`.
    pub fn coordinates_in(&self, part: usize, v: &SparseVec) -> Result<Vec<ExactScalar>> {
        let mut out = vec![ExactScalar::zero(); self.parts[part].dim()];
        for (key, entries) in self.by_block(v.iter().map(|(i, c)| (*i, c))) {
            let g = self.block_gram(part, &key)?;
            let mut h = vec![ExactScalar::zero(); g.positions.len()];
            for (r, c) in entries {
                let Some(column) = g.column.get(&r) else { continue };
                let cw = c * &g.weights[&r];
                for (j, v) in column {
                    add_product(&mut h[*j], &cw, v);
                }
            }
            if h.iter().all(Zero::is_zero) {
                continue;
            }
            for (a, x) in g.solve(&h)?.into_iter().enumerate() {
                out[g.positions[a]] += x;
            }
        }
        Ok(out)
    }

    /// Projection of the monomial with index `i` onto part `part` along the
    /// other summands.
    pub fn project_monomial(&self, part: usize, i: usize) -> Result<SparseVec> {
        let coords = self.coordinates_in(part, &SparseVec::from([(i, ExactScalar::one())]))?;
        let mut out = SparseVec::new();
        for (pos, x) in coords.iter().enumerate() {
            if !x.is_zero() {
                axpy(&mut out, x, &self.parts[part].vectors[pos]);
            }
        }
        Ok(out)
    }

    /// The dual basis `(D_j) ⊂ D^k(V)` of part `part`:
    /// `D_j = Σ_r x_j(r) / (∂_r r) · ∂_r`, where `x_j(r)` is the `j`-th
    /// coordinate of the monomial `r`, so that `D_j p_i = δ_ij`.
    pub fn dual_basis(&self, part: usize) -> Result<Vec<ConstCoeffOperator>> {
        let comp = &self.component;
        let mut terms: Vec<Vec<(SuperMonomial, ExactScalar)>> = vec![Vec::new(); self.parts[part].dim()];
        let mut keys: Vec<&BlockKey> = self.members.keys().collect();
        keys.sort();
        for key in keys {
            if !self.members[key].iter().any(|(p, _)| *p == part) {
                continue;
            }
            let g = self.block_gram(part, key)?;
            let mut rows: Vec<usize> = g.column.keys().copied().collect();
            rows.sort_unstable();
            for r in rows {
                let mut h = vec![ExactScalar::zero(); g.positions.len()];
                for (j, v) in &g.column[&r] {
                    h[*j] = v * &g.weights[&r];
                }
                let monomial = comp.monomial(r);
                let diag = monomial.self_pairing();
                for (a, x) in g.solve(&h)?.into_iter().enumerate() {
                    if !x.is_zero() {
                        terms[g.positions[a]].push((monomial.clone(), x / &diag));
                    }
                }
            }
        }
        Ok(terms.into_iter().map(|t| ConstCoeffOperator::new(comp.n(), comp.degree(), t)).collect())
    }

    /// `D_λ f = Σ_j p_j·D_j f` for the part `part`, evaluated block by block
    /// as `Σ_r π_λ(r)·∂_r f / (∂_r r)` with `π_λ(r) = Σ_a x_a(r) v_a`.
    pub fn capelli_apply(&self, part: usize, f: &SuperPoly) -> Result<SuperPoly> {
        let comp = &self.component;
        let k = comp.degree();
        let mut pieces: Vec<(usize, (SuperMonomial, ExactScalar))> = Vec::new();
        for (s, c) in f.terms() {
            if s.degree() < k {
                continue;
            }
            for r in s.submonomials(k) {
                let (d, rest) = s.apply_partial_of(&r).expect("r divides s");
                let i = comp.index_of(&r).expect("submonomial of the right degree");
                // w_r / ∂_r r is the sign of ∂_r r.
                let c = if r.self_pairing().is_negative() { -(c * d) } else { c * d };
                pieces.push((i, (rest, c)));
            }
        }
        let mut out = SuperPoly::zero(comp.n());
        for (key, entries) in self.by_block(pieces) {
            if !self.members[&key].iter().any(|(p, _)| *p == part) {
                continue;
            }
            let g = self.block_gram(part, &key)?;
            // h_j = Σ_r v_j[r] w_r (∂_r f / ∂_r r), split by cofactor monomial
            // so that every solve is over scalars.
            let mut h: HashMap<SuperMonomial, Vec<ExactScalar>> = HashMap::new();
            for (r, (rest, c)) in &entries {
                let Some(column) = g.column.get(r) else { continue };
                let hr = h.entry(rest.clone()).or_insert_with(|| vec![ExactScalar::zero(); g.positions.len()]);
                for (j, v) in column {
                    add_product(&mut hr[*j], c, v);
                }
            }
            let mut z = vec![SuperPoly::zero(comp.n()); g.positions.len()];
            for (rest, hr) in h {
                if hr.iter().all(Zero::is_zero) {
                    continue;
                }
                for (a, x) in g.solve(&hr)?.into_iter().enumerate() {
                    if !x.is_zero() {
                        z[a].add_term(rest.clone(), x);
                    }
                }
            }
            for (a, za) in z.iter().enumerate() {
                if !za.is_zero() {
                    let va = &self.parts[part].basis[g.positions[a]];
                    for (m, v) in va.mul(za).terms() {
                        out.add_term(m.clone(), v.clone());
                    }
                }
            }
        }
        Ok(out)
    }
}

type DecompositionCache = Lazy<RwLock<HashMap<(usize, u32), Arc<Decomposition>>>>;

static DECOMPOSITIONS: DecompositionCache = Lazy::new(|| RwLock::new(HashMap::new()));

/// Decomposes `𝒫^k(V)` under the active size guard.
pub fn decompose(n: usize, k: u32) -> Result<Arc<Decomposition>> {
    decompose_with_guard(n, k, size_guard())
}

/// Decomposes `𝒫^k(V)`, refusing components larger than `guard`. Results
/// are cached per `(n, k)`.
pub fn decompose_with_guard(n: usize, k: u32, guard: u128) -> Result<Arc<Decomposition>> {
    if n == 0 {
        return Err(Error::ZeroVariables);
    }
    check_size(n, k, guard)?;
    if let Some(d) = DECOMPOSITIONS.read().expect("cache lock poisoned").get(&(n, k)) {
        return Ok(d.clone());
    }
    let built = Arc::new(build(n, k)?);
    Ok(DECOMPOSITIONS.write().expect("cache lock poisoned").entry((n, k)).or_insert(built).clone())
}

fn raising_fields(n: usize) -> Vec<VectorField> {
    let mut out = Vec::new();
    for k in 1..=n {
        for l in 1..=n {
            if k < l {
                out.push(action_field(ActionKind::B, k, l, n));
                out.push(action_field(ActionKind::Beta, k, l, n));
            }
            if k > l {
                out.push(action_field(ActionKind::A, k, l, n));
                out.push(action_field(ActionKind::Alpha, k, l, n));
            }
        }
    }
    out
}

fn lowering_fields(n: usize) -> Vec<VectorField> {
    let mut out = Vec::new();
    for k in 1..=n {
        out.push(action_field(ActionKind::Beta, k, k, n));
        out.push(action_field(ActionKind::Alpha, k, k, n));
        if k < n {
            out.push(action_field(ActionKind::B, k + 1, k, n));
            out.push(action_field(ActionKind::A, k, k + 1, n));
        }
    }
    out
}

/// Joint highest-weight vectors of weight `(λ, λ)`.
fn highest_weight_vectors(comp: &GradedComponent, lambda: &StrictPartition, raising: &[VectorField]) -> Vec<SparseVec> {
    let w = lambda.padded(comp.n());
    let mut out = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        let key = BlockKey { rows: w.clone(), cols: w.clone(), parity };
        let Some(idxs) = comp.blocks().get(&key) else { continue };
        // One row per (raising operator, image monomial).
        let mut row_of: HashMap<(usize, usize), usize> = HashMap::new();
        let mut entries = Vec::new();
        for (col, &i) in idxs.iter().enumerate() {
            for (f, field) in raising.iter().enumerate() {
                for (m, c) in field.apply_monomial(comp.monomial(i)).terms() {
                    let target = comp.index_of(m).expect("action preserves the degree");
                    let next = row_of.len();
                    let row = *row_of.entry((f, target)).or_insert(next);
                    entries.push((row, col, c.clone()));
                }
            }
        }
        let mut m = Matrix::zeros(row_of.len(), idxs.len());
        for (r, c, v) in entries {
            m[(r, c)] += v;
        }
        for null in m.nullspace() {
            let v: SparseVec = idxs.iter().zip(null).filter(|(_, c)| !c.is_zero()).map(|(&i, c)| (i, c)).collect();
            out.push(primitive(v));
        }
    }
    out
}

/// Rescales `v` to a primitive integer vector. The lowering operators have
/// integer matrices, so the whole closure stays integral.
fn primitive(v: SparseVec) -> SparseVec {
    let den = v.values().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<(usize, BigInt)> = v.into_iter().map(|(i, c)| (i, c.numer() * (&den / c.denom()))).collect();
    let content = ints.iter().fold(BigInt::zero(), |g, (_, c)| g.gcd(c));
    ints.into_iter().map(|(i, c)| (i, ExactScalar::from_integer(c / &content))).collect()
}

fn block_key_of(comp: &GradedComponent, v: &SparseVec) -> BlockKey {
    comp.block_of(*v.keys().next().expect("nonzero vector"))
}

fn close_under(comp: &GradedComponent, seeds: Vec<SparseVec>, lowering: &[LinearOperator]) -> Result<Vec<SparseVec>> {
    // Independence is tested modulo a prime; the exact vectors are kept
    // as generated. A vector wrongly rejected would show up as a dimension
    // deficit or a singular block in `build`.
    let mut spans: HashMap<BlockKey, ModularEchelon> = HashMap::new();
    let mut basis = Vec::new();
    let mut queue: VecDeque<SparseVec> = seeds.into();
    while let Some(v) = queue.pop_front() {
        if v.is_empty() {
            continue;
        }
        let key = block_key_of(comp, &v);
        if !spans.entry(key).or_default().insert(&v)? {
            continue;
        }
        for op in lowering {
            let w = op.apply(&v);
            if !w.is_empty() {
                queue.push_back(w);
            }
        }
        basis.push(v);
    }
    Ok(basis)
}

fn build(n: usize, k: u32) -> Result<Decomposition> {
    let comp = GradedComponent::get(n, k);
    let raising = raising_fields(n);
    let lowering: Vec<LinearOperator> = lowering_fields(n).iter().map(|f| f.matrix(k)).collect();
    let lambdas = strict_of_weight(n, k);

    let mut parts = Vec::with_capacity(lambdas.len());
    for lambda in &lambdas {
        let seeds = highest_weight_vectors(&comp, lambda, &raising);
        if seeds.is_empty() {
            return Err(Error::Decomposition(format!("no highest-weight vector for λ = ({lambda}) in degree {k}")));
        }
        let vectors = close_under(&comp, seeds, &lowering)?;
        let parities = vectors.iter().map(|v| block_key_of(&comp, v).parity).collect();
        let basis = vectors.iter().map(|v| comp.to_poly(v)).collect();
        parts.push(IsotypicComponent {
            lambda: lambda.clone(),
            n,
            k,
            basis,
            vectors,
            parities,
        });
    }
    let total: usize = parts.iter().map(IsotypicComponent::dim).sum();
    if total != comp.dim() {
        return Err(Error::Decomposition(format!(
            "summand dimensions add up to {total}, but dim P^{k}(V) = {} for n = {n}",
            comp.dim()
        )));
    }

    let mut members: HashMap<BlockKey, Vec<(usize, usize)>> = HashMap::new();
    for (p, part) in parts.iter().enumerate() {
        for (pos, v) in part.vectors.iter().enumerate() {
            members.entry(block_key_of(&comp, v)).or_default().push((p, pos));
        }
    }
    for (key, idxs) in comp.blocks() {
        let found = members.get(key).map_or(0, Vec::len);
        if found != idxs.len() {
            return Err(Error::Decomposition(format!(
                "weight block of size {} carries {found} summand vectors",
                idxs.len()
            )));
        }
    }
    Ok(Decomposition { component: comp, parts, members, grams: Mutex::new(GramCache::default()) })
}

/// Checks that different summands on one weight block are orthogonal, by
/// pairing seeded random combinations of each summand's vectors modulo a
/// prime.
fn check_orthogonal(
    parts: &[IsotypicComponent],
    members: &[(usize, usize)],
    weight: &HashMap<usize, ExactScalar>,
) -> Result<()> {
    let f = field(0);
    let residue = |x: &ExactScalar| f.of(x).ok_or_else(|| Error::Singular("denominator vanishes modulo p".into()));
    let mut rng = ChaCha8Rng::seed_from_u64(members.len() as u64);
    let mut sums: BTreeMap<usize, HashMap<usize, u64>> = BTreeMap::new();
    for &(part, pos) in members {
        let t = rng.gen_range(1..f.modulus());
        let s = sums.entry(part).or_default();
        for (r, c) in &parts[part].vectors[pos] {
            let e = s.entry(*r).or_insert(0);
            *e = f.add(*e, f.mul(t, residue(c)?));
        }
    }
    let sums: Vec<(usize, HashMap<usize, u64>)> = sums.into_iter().collect();
    for (a, (pa, sa)) in sums.iter().enumerate() {
        for (pb, sb) in &sums[a + 1..] {
            let mut x = 0;
            for (r, c) in sa {
                if let Some(d) = sb.get(r) {
                    x = f.add(x, f.mul(f.mul(*c, *d), residue(&weight[r])?));
                }
            }
            if x != 0 {
                return Err(Error::Decomposition(format!(
                    "summands for ({}) and ({}) are not orthogonal",
                    parts[*pa].lambda, parts[*pb].lambda
                )));
            }
        }
    }
    Ok(())
}

/// The dual basis of `(V_λ)^* ⊂ D^k(V)` attached to a summand.
pub fn dual_component(c: &IsotypicComponent) -> Result<Vec<ConstCoeffOperator>> {
    // The component exists, so its decomposition already passed a guard.
    let d = decompose_with_guard(c.n, c.k, u128::MAX)?;
    let part = d
        .part_index(&c.lambda)
        .ok_or_else(|| Error::Decomposition(format!("no summand for λ = ({})", c.lambda)))?;
    d.dual_basis(part)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repsim::action::QElement;
    use crate::scalar::int;

    fn sp(parts: &[u32]) -> StrictPartition {
        StrictPartition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn one_variable_summands() {
        for m in 1..=5 {
            let d = decompose(1, m).unwrap();
            assert_eq!(d.parts().len(), 1);
            assert_eq!(d.parts()[0].lambda, sp(&[m]));
            assert_eq!(d.parts()[0].dim(), 2);
        }
        let d = decompose(3, 0).unwrap();
        assert_eq!(d.parts().len(), 1);
        assert_eq!(d.parts()[0].basis, vec![SuperPoly::one(3)]);
    }

    #[test]
    fn two_variable_degree_three() {
        let d = decompose(2, 3).unwrap();
        let lambdas: Vec<_> = d.parts().iter().map(|p| p.lambda.clone()).collect();
        assert_eq!(lambdas, vec![sp(&[2, 1]), sp(&[3])]);
        let dims: usize = d.parts().iter().map(IsotypicComponent::dim).sum();
        assert_eq!(dims as u128, crate::repsim::basis::component_dimension(2, 3));
    }

    #[test]
    fn duals_pair_to_identity() {
        for (n, k) in [(1, 1), (1, 3), (2, 2), (2, 3)] {
            let d = decompose(n, k).unwrap();
            for a in d.parts() {
                for b in d.parts() {
                    for (j, dj) in dual_component(a).unwrap().iter().enumerate() {
                        for (i, pi) in b.basis.iter().enumerate() {
                            let expected = if a.lambda == b.lambda && i == j { int(1) } else { int(0) };
                            assert_eq!(dj.pair(pi), expected);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn degree_one_duals() {
        let d = decompose(1, 1).unwrap();
        let part = &d.parts()[0];
        let names: Vec<String> = part.basis.iter().map(|p| p.to_string()).collect();
        assert_eq!(names, ["u11", "xi11"]);
        for (dj, pj) in d.dual_basis(0).unwrap().iter().zip(&part.basis) {
            assert_eq!(dj.terms().len(), 1);
            assert_eq!(dj.pair(pj), int(1));
        }
    }

    #[test]
    fn summands_are_stable_under_all_operators() {
        for (n, k) in [(2, 2), (2, 3)] {
            let d = decompose(n, k).unwrap();
            let ops: Vec<VectorField> =
                QElement::basis(n).into_iter().flat_map(|x| [x.right_field(n), x.left_field(n)]).collect();
            for (idx, part) in d.parts().iter().enumerate() {
                for v in part.vectors() {
                    for op in &ops {
                        let image = d.component().to_vec(&op.apply(&d.component().to_poly(v)));
                        // The image has no coordinates outside this summand.
                        for (other, _) in d.parts().iter().enumerate().filter(|(o, _)| *o != idx) {
                            assert!(d.coordinates_in(other, &image).unwrap().iter().all(Zero::is_zero));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn factored_capelli_matches_dual_basis_formula() {
        // Σ_j p_j·D_j f, term by term, against the block-wise evaluation.
        for (n, k, m) in [(1, 2, 3), (2, 1, 2), (2, 2, 3)] {
            let d = decompose(n, k).unwrap();
            let target = GradedComponent::get(n, m);
            for (idx, part) in d.parts().iter().enumerate() {
                let duals = d.dual_basis(idx).unwrap();
                for f in target.monomials().iter().take(40) {
                    let f = SuperPoly::from_monomial(f.clone(), int(1));
                    let mut expected = SuperPoly::zero(n);
                    for (p, dj) in part.basis.iter().zip(&duals) {
                        for (mono, c) in p.mul(&dj.apply(&f)).terms() {
                            expected.add_term(mono.clone(), c.clone());
                        }
                    }
                    assert_eq!(d.capelli_apply(idx, &f).unwrap(), expected);
                }
            }
        }
    }
}
