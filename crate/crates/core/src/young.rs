//! Partitions, colored Young diagrams and the congruence description of
//! maximal elements in `B(Λ₀) ⊗ B(Λ₀)`.
//!
//! A partition is stored as its multiplicity pairs `(λ₁^{f₁}, …, λ_j^{f_j})`
//! with `λ₁ > λ₂ > … > λ_j > 0` and every `f_k ≥ 1`. Cell `(row, col)`
//! (both 1-based, rows counted from the top, columns from the left) of a
//! diagram of charge `c` carries the color `(col − row + c) mod n`.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition in multiplicity form. The empty pair list is the null partition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<(u32, u32)>", into = "Vec<(u32, u32)>")]
pub struct Partition {
    pairs: Vec<(u32, u32)>,
}

impl Partition {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a partition from `(part, multiplicity)` pairs, which must already
    /// be strictly decreasing in the part with positive multiplicities.
    pub fn from_pairs(pairs: Vec<(u32, u32)>) -> Result<Self> {
        for (idx, &(part, mult)) in pairs.iter().enumerate() {
            if part == 0 || mult == 0 {
                return Err(Error::InvalidPartition(format!(
                    "pair {idx} = ({part}, {mult}) has a zero entry"
                )));
            }
            if idx > 0 && pairs[idx - 1].0 <= part {
                return Err(Error::InvalidPartition(format!(
                    "parts must strictly decrease, found {} then {part}",
                    pairs[idx - 1].0
                )));
            }
        }
        Ok(Self { pairs })
    }

    /// Builds a partition from a flat list of parts in any order; zeros are dropped.
    pub fn from_parts(parts: &[u32]) -> Self {
        let mut sorted: Vec<u32> = parts.iter().copied().filter(|&p| p > 0).collect();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        for part in sorted {
            match pairs.last_mut() {
                Some((last, mult)) if *last == part => *mult += 1,
                _ => pairs.push((part, 1)),
            }
        }
        Self { pairs }
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Number of distinct parts.
    pub fn distinct_parts(&self) -> usize {
        self.pairs.len()
    }

    /// Total number of boxes `Σ λ_k f_k`.
    pub fn boxes(&self) -> u64 {
        self.pairs.iter().map(|&(p, f)| p as u64 * f as u64).sum()
    }

    /// Number of rows `Σ f_k`.
    pub fn rows(&self) -> u64 {
        self.pairs.iter().map(|&(_, f)| f as u64).sum()
    }

    /// Partial sums `s_1, …, s_j` of the multiplicities (`s_0 = 0` omitted).
    pub fn partial_sums(&self) -> Vec<u64> {
        self.pairs
            .iter()
            .scan(0u64, |acc, &(_, f)| {
                *acc += f as u64;
                Some(*acc)
            })
            .collect()
    }

    /// Row lengths from top to bottom.
    pub fn parts(&self) -> impl Iterator<Item = u32> + '_ {
        self.pairs
            .iter()
            .flat_map(|&(p, f)| std::iter::repeat(p).take(f as usize))
    }

    pub fn to_parts(&self) -> Vec<u32> {
        self.parts().collect()
    }
}

/// Lexicographic order on the flattened part list.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.parts().cmp(other.parts())
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<Vec<(u32, u32)>> for Partition {
    type Error = Error;

    fn try_from(pairs: Vec<(u32, u32)>) -> Result<Self> {
        Self::from_pairs(pairs)
    }
}

impl From<Partition> for Vec<(u32, u32)> {
    fn from(p: Partition) -> Self {
        p.pairs
    }
}

/// Exponent notation, e.g. `(7,1^2)`; the null partition prints as `()`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (idx, &(part, mult)) in self.pairs.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            if mult == 1 {
                write!(f, "{part}")?;
            } else {
                write!(f, "{part}^{mult}")?;
            }
        }
        f.write_str(")")
    }
}

/// A partition together with a charge and a modulus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredDiagram {
    shape: Partition,
    charge: u32,
    n: u32,
}

impl ColoredDiagram {
    pub fn new(shape: Partition, charge: u32, n: u32) -> Result<Self> {
        crate::check_modulus(n)?;
        if charge >= n {
            return Err(Error::ResidueOutOfRange { residue: charge, n });
        }
        Ok(Self { shape, charge, n })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn charge(&self) -> u32 {
        self.charge
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn color(&self, row: u32, col: u32) -> u32 {
        color_of(row, col, self.charge, self.n)
    }

    /// Number of cells of each color; entry `t` counts the `t`-colored cells.
    pub fn color_counts(&self) -> Vec<u64> {
        color_counts(&self.shape, self.charge, self.n)
    }
}

/// Color of the cell in `row`, `col` (1-based) of a diagram with the given charge.
pub fn color_of(row: u32, col: u32, charge: u32, n: u32) -> u32 {
    debug_assert!(row >= 1 && col >= 1 && charge < n);
    (col as i64 - row as i64 + charge as i64).rem_euclid(n as i64) as u32
}

/// At most `n − 1` rows of each length.
pub fn is_n_regular(p: &Partition, n: u32) -> bool {
    p.pairs.iter().all(|&(_, f)| f < n)
}

/// Tallies cell colors row by row. Along a row of length `λ` starting at color
/// `c` every color appears `⌊λ/n⌋` times and the first `λ mod n` colors once more.
pub fn color_counts(p: &Partition, charge: u32, n: u32) -> Vec<u64> {
    let n64 = n as u64;
    let mut counts = vec![0u64; n as usize];
    for (row_idx, len) in p.parts().enumerate() {
        let row = row_idx as u32 + 1;
        let start = color_of(row, 1, charge, n) as u64;
        let len = len as u64;
        let full = len / n64;
        if full > 0 {
            counts.iter_mut().for_each(|c| *c += full);
        }
        for step in 0..len % n64 {
            counts[((start + step) % n64) as usize] += 1;
        }
    }
    counts
}

/// Membership in the set of maximal-element shapes: all `f_k < n`,
/// `f₁ ≡ λ₁ (mod n)` and `f_k + f_{k+1} + λ_k − λ_{k+1} ≡ 0 (mod n)`.
pub fn in_c_n(p: &Partition, n: u32) -> bool {
    let n = n as i64;
    let pairs = &p.pairs;
    let Some(&(first_part, first_mult)) = pairs.first() else {
        return true;
    };
    if pairs.iter().any(|&(_, f)| f as i64 >= n) {
        return false;
    }
    if (first_mult as i64 - first_part as i64).rem_euclid(n) != 0 {
        return false;
    }
    pairs.windows(2).all(|w| {
        let (lk, fk) = (w[0].0 as i64, w[0].1 as i64);
        let (lk1, fk1) = (w[1].0 as i64, w[1].1 as i64);
        (fk + fk1 + lk - lk1).rem_euclid(n) == 0
    })
}

/// All members of `𝒞_n` with exactly `boxes` boxes, in descending
/// lexicographic order of their part lists.
///
/// Depth-first over pairs: once `(λ_k, f_k)` and the next multiplicity are
/// fixed, the next part is determined modulo `n`, so only every `n`-th value
/// below `λ_k` is tried. Each prefix of a member is itself a member, so the
/// search never enters a dead subtree other than through the box budget.
pub fn enumerate_c_n(n: u32, boxes: u64) -> Vec<Partition> {
    assert!(n >= 2, "modulus must be at least 2");
    if boxes == 0 {
        return vec![Partition::empty()];
    }
    let mut firsts = Vec::new();
    for f in 1..n {
        let mut lambda = f as u64;
        while lambda * f as u64 <= boxes {
            firsts.push((lambda as u32, f));
            lambda += n as u64;
        }
    }
    let mut out: Vec<Partition> = firsts
        .into_par_iter()
        .flat_map_iter(|(lambda, f)| {
            let mut found = Vec::new();
            let mut stack = vec![(lambda, f)];
            extend_chain(n, boxes - lambda as u64 * f as u64, &mut stack, &mut found);
            found
        })
        .collect();
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn extend_chain(n: u32, remaining: u64, stack: &mut Vec<(u32, u32)>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            pairs: stack.clone(),
        });
        return;
    }
    let (last_part, last_mult) = *stack.last().expect("chain starts non-empty");
    for f in 1..n {
        let residue = (last_part + last_mult + f) % n;
        let mut lambda = if residue == 0 { n } else { residue };
        while lambda < last_part && lambda as u64 * f as u64 <= remaining {
            stack.push((lambda, f));
            extend_chain(n, remaining - lambda as u64 * f as u64, stack, out);
            stack.pop();
            lambda += n;
        }
    }
}
