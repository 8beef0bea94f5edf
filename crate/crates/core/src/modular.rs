//! Arithmetic modulo word-sized primes: rank tests for large sparse spans
//! and exact solutions of rational linear systems by Chinese remaindering
//! and rational reconstruction, each certified by an exact residual check.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, SparseVec};
use crate::scalar::{add_product, ExactScalar};

/// The prime field `ℤ/p` for a pseudo-Mersenne prime `p = 2^61 − c`, which
/// allows reduction of 122-bit products by shifts and small multiplications.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    c: u64,
}

const SHIFT: u32 = 61;
const MASK: u128 = (1 << SHIFT) - 1;

impl PrimeField {
    fn new(c: u64) -> Self {
        PrimeField { p: (1 << SHIFT) - c, c }
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    fn reduce(self, x: u128) -> u64 {
        let x = (x >> SHIFT) * self.c as u128 + (x & MASK);
        let x = (x >> SHIFT) * self.c as u128 + (x & MASK);
        let mut x = x as u64;
        while x >= self.p {
            x -= self.p;
        }
        x
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        self.reduce(a as u128 * b as u128)
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element.
    pub fn inv(self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }

    pub fn of_int(self, v: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        v.mod_floor(&p).to_u64().expect("residue fits in u64")
    }

    /// Image of `x`, or `None` when `p` divides the denominator.
    pub fn of(self, x: &ExactScalar) -> Option<u64> {
        if x.is_integer() {
            return Some(self.of_int(x.numer()));
        }
        let den = self.of_int(x.denom());
        (den != 0).then(|| self.mul(self.of_int(x.numer()), self.inv(den)))
    }
}

/// Deterministic Miller–Rabin for 64-bit integers.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        acc
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    BASES.iter().all(|&a| {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            return true;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                return true;
            }
        }
        false
    })
}

/// The primes `2^61 − c` for the smallest odd `c`, in increasing `c`.
static FIELDS: Lazy<Vec<PrimeField>> =
    Lazy::new(|| (1..1 << 20).step_by(2).filter(|c| is_prime((1 << SHIFT) - c)).take(64).map(PrimeField::new).collect());

/// The `i`-th prime field (`i < 64`); field 0 is `ℤ/(2^61 − 1)`.
pub fn field(i: usize) -> PrimeField {
    FIELDS[i]
}

/// An echelon basis over `ℤ/p` used to select linearly independent vectors
/// without exact elimination. Vectors independent modulo `p` are
/// independent over `ℚ`; the converse can fail only for special vectors, so
/// callers must confirm completeness by a dimension count.
#[derive(Clone, Debug)]
pub struct ModularEchelon {
    field: PrimeField,
    rows: HashMap<usize, BTreeMap<usize, u64>>,
}

impl Default for ModularEchelon {
    fn default() -> Self {
        ModularEchelon { field: field(0), rows: HashMap::new() }
    }
}

impl ModularEchelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` if it is independent modulo `p` of the stored vectors and
    /// reports whether it was added.
    pub fn insert(&mut self, v: &SparseVec) -> Result<bool> {
        let f = self.field;
        let mut r = BTreeMap::new();
        for (&k, c) in v {
            let c = f.of(c).ok_or_else(|| Error::Singular("denominator vanishes modulo p".into()))?;
            if c != 0 {
                r.insert(k, c);
            }
        }
        let mut cursor = 0usize;
        loop {
            let next = r.range(cursor..).find(|(k, _)| self.rows.contains_key(k)).map(|(k, c)| (*k, *c));
            let Some((k, c)) = next else { break };
            for (&j, &x) in &self.rows[&k] {
                let e = r.entry(j).or_insert(0);
                *e = f.sub(*e, f.mul(c, x));
                if *e == 0 {
                    r.remove(&j);
                }
            }
            cursor = k + 1;
        }
        let Some((&pivot, &lead)) = r.iter().next() else { return Ok(false) };
        let inv = f.inv(lead);
        for c in r.values_mut() {
            *c = f.mul(*c, inv);
        }
        self.rows.insert(pivot, r);
        Ok(true)
    }
}

/// Inverse of an integer matrix modulo `p`, or `None` if it is singular
/// there. Rows are stored flat, row-major.
fn inverse_mod(a: &[u64], n: usize, f: PrimeField) -> Option<Vec<u64>> {
    let w = 2 * n;
    let mut m = vec![0u64; n * w];
    for i in 0..n {
        m[i * w..i * w + n].copy_from_slice(&a[i * n..(i + 1) * n]);
        m[i * w + n + i] = 1;
    }
    for k in 0..n {
        let p = (k..n).find(|&i| m[i * w + k] != 0)?;
        if p != k {
            for j in 0..w {
                m.swap(k * w + j, p * w + j);
            }
        }
        let inv = f.inv(m[k * w + k]);
        for j in 0..w {
            m[k * w + j] = f.mul(m[k * w + j], inv);
        }
        let pivot: Vec<u64> = m[k * w..(k + 1) * w].to_vec();
        for i in (0..n).filter(|&i| i != k) {
            let factor = m[i * w + k];
            if factor == 0 {
                continue;
            }
            for (x, &y) in m[i * w..(i + 1) * w].iter_mut().zip(&pivot) {
                if y != 0 {
                    *x = f.sub(*x, f.mul(factor, y));
                }
            }
        }
    }
    Some((0..n).flat_map(|i| m[i * w + n..(i + 1) * w].to_vec()).collect())
}

/// The fraction `a/b` with `|a|, b ≤ bound` congruent to `u` modulo `m`, if
/// one exists.
fn rational_reconstruction(u: &BigInt, m: &BigInt, bound: &BigInt) -> Option<ExactScalar> {
    if u.is_zero() {
        return Some(ExactScalar::zero());
    }
    let (mut r0, mut r1) = (m.clone(), u.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1, t0, t1) = (r1, r2, t1, t2);
    }
    if t1.is_zero() || t1.abs() > *bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(ExactScalar::new(r1, t1))
}

/// Solver for `A x = b` with a fixed square rational matrix `A`. The inverse
/// of `A` is computed lazily modulo as many primes as needed; a solution is
/// lifted by Chinese remaindering and rational reconstruction and returned
/// only once `A x = b` holds exactly. If the modular route does not settle,
/// the system is solved by rational elimination.
#[derive(Debug)]
pub struct ModularSolver {
    matrix: Matrix,
    /// Nonzero entries of each column of `A`, for the residual check.
    columns: Vec<Vec<(usize, ExactScalar)>>,
    inverses: Vec<OnceLock<Option<Vec<u64>>>>,
}

/// Primes at which a nonsingular matrix may still reduce to a singular one
/// before the modular route is abandoned.
const SINGULAR_PRIMES: usize = 3;

impl ModularSolver {
    pub fn new(matrix: Matrix) -> Result<Self> {
        let n = matrix.rows();
        if n != matrix.cols() {
            return Err(Error::Singular("non-square matrix".into()));
        }
        let mut columns = vec![Vec::new(); n];
        for i in 0..n {
            for (j, x) in matrix.row(i).iter().enumerate() {
                if !x.is_zero() {
                    columns[j].push((i, x.clone()));
                }
            }
        }
        Ok(ModularSolver { matrix, columns, inverses: (0..FIELDS.len()).map(|_| OnceLock::new()).collect() })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// `A⁻¹ mod p` for the `i`-th field, flat row-major, or `None` if `A`
    /// has no image there or its image is singular.
    fn inverse_mod(&self, i: usize) -> Option<&[u64]> {
        self.inverses[i]
            .get_or_init(|| {
                let f = field(i);
                let n = self.dim();
                let flat: Option<Vec<u64>> =
                    (0..n).flat_map(|r| self.matrix.row(r).iter()).map(|x| f.of(x)).collect();
                inverse_mod(&flat?, n, f)
            })
            .as_deref()
    }

    fn is_solution(&self, x: &[ExactScalar], b: &[ExactScalar]) -> bool {
        let mut ax = vec![ExactScalar::zero(); self.dim()];
        for (column, xj) in self.columns.iter().zip(x).filter(|(_, xj)| !xj.is_zero()) {
            for (i, a) in column {
                add_product(&mut ax[*i], a, xj);
            }
        }
        ax == b
    }

    pub fn solve(&self, b: &[ExactScalar]) -> Result<Vec<ExactScalar>> {
        let n = self.dim();
        if b.len() != n {
            return Err(Error::Singular(format!("{n}x{n} system with {} right-hand entries", b.len())));
        }
        if b.iter().all(Zero::is_zero) {
            return Ok(vec![ExactScalar::zero(); n]);
        }
        let mut residues: Vec<BigInt> = vec![BigInt::zero(); n];
        let mut modulus = BigInt::one();
        let mut singular = 0;
        for idx in 0..FIELDS.len() {
            let f = field(idx);
            let image: Option<Vec<u64>> = b.iter().map(|x| f.of(x)).collect();
            let (Some(image), Some(inverse)) = (image, self.inverse_mod(idx)) else {
                singular += 1;
                if singular > SINGULAR_PRIMES {
                    break;
                }
                continue;
            };
            let x_mod = inverse.chunks(n).map(|row| {
                row.iter().zip(&image).filter(|(_, &y)| y != 0).fold(0, |acc, (&a, &y)| f.add(acc, f.mul(a, y)))
            });
            // Garner step: x ≡ residue (mod M) and x ≡ x_mod (mod p).
            let p = BigInt::from(f.modulus());
            let m_inv = BigInt::from(f.inv(f.of_int(&modulus)));
            for (x, r) in residues.iter_mut().zip(x_mod) {
                let t = ((BigInt::from(r) - &*x) * &m_inv).mod_floor(&p);
                *x += &modulus * t;
            }
            modulus *= &p;
            let bound: BigInt = (&modulus / 2u32).sqrt();
            let candidate: Option<Vec<ExactScalar>> =
                residues.iter().map(|u| rational_reconstruction(u, &modulus, &bound)).collect();
            if let Some(x) = candidate.filter(|x| self.is_solution(x, b)) {
                return Ok(x);
            }
        }
        self.matrix.solve(b)
    }
}
