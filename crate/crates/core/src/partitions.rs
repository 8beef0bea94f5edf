//! Strict partitions: containment, the total order `precedes`, enumeration,
//! and shifted standard tableaux.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{self, ExactScalar};

/// A strictly decreasing sequence of positive integers. Trailing zeros are
/// never stored; the empty sequence is the empty partition.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct StrictPartition(Vec<u32>);

/// Which closed form of `H(λ)` to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HVariant {
    /// `λ! ∏_{i<j} (λ_i+λ_j)/(λ_i−λ_j)`
    AsPrinted,
    /// `2^{ℓ(λ)}` times the printed value.
    Doubled,
}

impl HVariant {
    pub fn name(self) -> &'static str {
        match self {
            HVariant::AsPrinted => "as-printed",
            HVariant::Doubled => "doubled",
        }
    }
}

impl StrictPartition {
    pub fn empty() -> Self {
        StrictPartition(Vec::new())
    }

    /// Accepts trailing zeros and strips them.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        let strict = parts.windows(2).all(|w| w[0] > w[1]) && parts.iter().all(|&p| p > 0);
        if !strict {
            return Err(Error::InvalidPartition(
                parts.iter().map(u32::to_string).collect::<Vec<_>>().join(","),
            ));
        }
        Ok(StrictPartition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn delta(&self) -> u32 {
        (self.0.len() % 2) as u32
    }

    /// The parts padded with zeros to `n` coordinates.
    pub fn padded(&self, n: usize) -> Vec<u32> {
        (0..n).map(|i| self.part(i)).collect()
    }

    pub fn as_point(&self, n: usize) -> Vec<ExactScalar> {
        self.padded(n).into_iter().map(|p| scalar::int(p as i64)).collect()
    }

    pub fn check_fits(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::ZeroVariables);
        }
        if self.len() > n {
            return Err(Error::TooLong {
                partition: self.to_string(),
                length: self.len(),
                n,
            });
        }
        Ok(())
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for StrictPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(StrictPartition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidPartition(s.to_string()))?;
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(s.to_string()));
        }
        StrictPartition::new(parts).map_err(|_| Error::InvalidPartition(s.to_string()))
    }
}

impl Serialize for StrictPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for StrictPartition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn delta(lambda: &StrictPartition) -> u32 {
    lambda.delta()
}

/// `μ ⊆ ν` iff `μ_j ≤ ν_j` for every `j` (zero-padded).
pub fn contains(mu: &StrictPartition, nu: &StrictPartition) -> bool {
    mu.len() <= nu.len() && mu.0.iter().zip(&nu.0).all(|(a, b)| a <= b)
}

/// Total order: smaller weight first; at equal weight, lexicographic on the
/// part sequences. Distinct partitions of equal weight are never contained
/// in one another, so this satisfies `ν ⊄ μ ⇒ μ ≺ ν` at equal weight.
pub fn compare(mu: &StrictPartition, nu: &StrictPartition) -> Ordering {
    mu.weight().cmp(&nu.weight()).then_with(|| mu.0.cmp(&nu.0))
}

/// Strict precedence `μ ≺ ν`.
pub fn precedes(mu: &StrictPartition, nu: &StrictPartition) -> bool {
    compare(mu, nu) == Ordering::Less
}

impl PartialOrd for StrictPartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for StrictPartition {
    fn cmp(&self, other: &Self) -> Ordering {
        compare(self, other)
    }
}

/// All strict partitions with at most `n` parts and weight at most `k`,
/// sorted by [`precedes`]. Always contains the empty partition.
pub fn enumerate_strict(n: usize, k: u32) -> Vec<StrictPartition> {
    fn go(max_part: u32, remaining: u32, slots: usize, prefix: &mut Vec<u32>, out: &mut Vec<StrictPartition>) {
        out.push(StrictPartition(prefix.clone()));
        if slots == 0 {
            return;
        }
        for p in (1..=max_part.min(remaining)).rev() {
            prefix.push(p);
            go(p - 1, remaining - p, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(k, k, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Strict partitions of exactly weight `k` with at most `n` parts.
pub fn strict_of_weight(n: usize, k: u32) -> Vec<StrictPartition> {
    enumerate_strict(n, k).into_iter().filter(|p| p.weight() == k).collect()
}

/// Counts standard fillings of the shifted diagram of `λ` by enumerating
/// them: row `i` occupies columns `i..i+λ_i−1`, entries increase along rows
/// and down columns.
pub fn count_shifted_tableaux(lambda: &StrictPartition) -> u64 {
    // filled[i] = number of cells already filled in row i; cells are filled
    // with 1, 2, ... in order, so a cell is addable iff the cell to its left
    // and the cell above it are filled.
    fn go(parts: &[u32], filled: &mut Vec<u32>, remaining: u32) -> u64 {
        if remaining == 0 {
            return 1;
        }
        let mut total = 0;
        for i in 0..parts.len() {
            if filled[i] == parts[i] {
                continue;
            }
            // next cell of row i sits in column i + filled[i]
            let col = i as u32 + filled[i];
            let above_ok = i == 0 || {
                let above_filled_to = (i as u32 - 1) + filled[i - 1];
                above_filled_to > col
            };
            if above_ok {
                filled[i] += 1;
                total += go(parts, filled, remaining - 1);
                filled[i] -= 1;
            }
        }
        total
    }
    let mut filled = vec![0; lambda.len()];
    go(&lambda.0, &mut filled, lambda.weight())
}

/// `n_λ = |λ|!/(λ_1!⋯λ_ℓ!) ∏_{i<j} (λ_i−λ_j)/(λ_i+λ_j)`.
pub fn n_lambda(lambda: &StrictPartition) -> ExactScalar {
    let mut acc = ExactScalar::from_integer(scalar::factorial(lambda.weight()));
    for &p in lambda.parts() {
        acc /= ExactScalar::from_integer(scalar::factorial(p));
    }
    for (i, &a) in lambda.parts().iter().enumerate() {
        for &b in &lambda.parts()[i + 1..] {
            acc *= scalar::frac((a - b) as i64, (a + b) as i64);
        }
    }
    acc
}

/// `H(λ)` in the requested variant.
pub fn h_lambda(lambda: &StrictPartition, variant: HVariant) -> ExactScalar {
    let mut acc = ExactScalar::one();
    for &p in lambda.parts() {
        acc *= ExactScalar::from_integer(scalar::factorial(p));
    }
    for (i, &a) in lambda.parts().iter().enumerate() {
        for &b in &lambda.parts()[i + 1..] {
            acc *= scalar::frac((a + b) as i64, (a - b) as i64);
        }
    }
    match variant {
        HVariant::AsPrinted => acc,
        HVariant::Doubled => acc * scalar::pow2(lambda.len()),
    }
}

/// `λ! = λ_1!⋯λ_ℓ!` as an integer.
pub fn part_factorial(lambda: &StrictPartition) -> BigInt {
    lambda.parts().iter().map(|&p| scalar::factorial(p)).product()
}
