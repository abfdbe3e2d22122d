//! Outer multiplicities `b_ik` of `V(Λ_i + Λ_{n−i} − kδ)` in `V(Λ₀)^{⊗2}` and
//! their generating functions `B_i(q) = Σ_{k≥i} b_ik q^{k−i}`.
//!
//! Two independent routes are provided:
//!
//! - combinatorial: enumerate (or count) maximal-element shapes and bucket
//!   them by `(i, k)`;
//! - analytic: split `φ(qⁿ) = Σ_i q^{i²} g(q^{2i+1}, q^{n+1−2i}) B_i(qⁿ)` by
//!   residues of exponents mod `n` into a linear system `A·B = (φ, 0, …, 0)ᵀ`
//!   with theta-series entries and solve it by Cramer's rule.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::max_class;
use crate::qseries::{det, euler_phi, minor, shifted_theta, NormalizedTheta, QSeries, ThetaKind};
use crate::weightlat::{classify_maximal, ComponentLabel};
use crate::young::{enumerate_c_n, Partition};

/// One `(i, k)` cell of a multiplicity table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub i: u32,
    pub k: u32,
    pub b: u64,
    pub witnesses: Vec<Partition>,
    /// Witnesses dropped by a cap; `b = witnesses.len() + omitted`.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub omitted: u64,
}

fn is_zero(x: &u64) -> bool {
    *x == 0
}

/// `b_ik` for `0 ≤ i ≤ ⌊n/2⌋`, `i ≤ k ≤ max_k`, ordered by `(i, k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityTable {
    pub n: u32,
    pub max_k: u32,
    pub entries: Vec<TableEntry>,
}

impl MultiplicityTable {
    pub fn get(&self, i: u32, k: u32) -> Option<&TableEntry> {
        self.entries.iter().find(|e| e.i == i && e.k == k)
    }

    /// `b_{i,i}, b_{i,i+1}, …, b_{i,max_k}`.
    pub fn column(&self, i: u32) -> Vec<u64> {
        self.entries
            .iter()
            .filter(|e| e.i == i)
            .map(|e| e.b)
            .collect()
    }
}

/// Box count of a maximal element labelled `(i, k)`: `i² + (k − i)n`.
pub fn boxes_for(i: u32, k: u32, n: u32) -> u64 {
    debug_assert!(k >= i);
    (i as u64).pow(2) + (k - i) as u64 * n as u64
}

/// Enumerates and classifies every maximal element with `k ≤ max_k`.
/// `witness_cap` limits the stored witnesses per entry (`None` keeps all).
pub fn b_table(n: u32, max_k: u32, witness_cap: Option<usize>) -> Result<MultiplicityTable> {
    crate::check_modulus(n)?;
    let box_counts: BTreeSet<u64> = (0..=max_class(n))
        .flat_map(|i| (i..=max_k).map(move |k| boxes_for(i, k, n)))
        .collect();
    let classified: Vec<(ComponentLabel, Partition)> = box_counts
        .into_par_iter()
        .map(|boxes| {
            enumerate_c_n(n, boxes)
                .into_iter()
                .map(|p| classify_maximal(&p, n).map(|label| (label, p)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let mut buckets: BTreeMap<(u32, u32), Vec<Partition>> = (0..=max_class(n))
        .flat_map(|i| (i..=max_k).map(move |k| ((i, k), Vec::new())))
        .collect();
    for (label, p) in classified {
        if let Some(bucket) = buckets.get_mut(&(label.i, label.k)) {
            bucket.push(p);
        }
    }
    let entries = buckets
        .into_iter()
        .map(|((i, k), mut witnesses)| {
            witnesses.sort_unstable_by(|a, b| b.cmp(a));
            let b = witnesses.len() as u64;
            let keep = witness_cap.unwrap_or(usize::MAX).min(witnesses.len());
            witnesses.truncate(keep);
            TableEntry {
                i,
                k,
                b,
                omitted: b - keep as u64,
                witnesses,
            }
        })
        .collect();
    Ok(MultiplicityTable { n, max_k, entries })
}

/// Counts maximal-element shapes by box count and class without building them.
/// Returns `counts[boxes][i]` for `boxes ≤ max_boxes`.
///
/// A shape is a chain of pairs `(λ, f)`; the admissible successors of a pair
/// depend only on `λ`, `f` and `λ mod n`, and the class of a finished chain
/// only on the last pair and the running row count mod `n`. Processing `λ` in
/// increasing order, `tails[ρ][f][s]` accumulates, over every pair with part
/// `λ' < λ`, `λ' ≡ ρ`, multiplicity `f` and running row count `≡ s`, the
/// generating polynomial of all chains starting at that pair.
pub fn count_by_class(n: u32, max_boxes: u64) -> Vec<Vec<u64>> {
    assert!(n >= 2, "modulus must be at least 2");
    let nn = n as usize;
    let classes = max_class(n) as usize + 1;
    let len = max_boxes as usize + 1;
    let idx = |rho: usize, f: usize, s: usize| (rho * nn + f) * nn + s;
    let mut tails: Vec<Vec<u64>> = vec![vec![0; len * classes]; nn * nn * nn];
    let mut total = vec![0u64; len * classes];
    total[0] = 1;

    let class_of_stop = |lambda: usize, f: usize, s: usize| -> usize {
        let prev = (s + nn - f % nn) % nn;
        let a = (lambda % nn + nn - prev) % nn;
        let b = (nn - s) % nn;
        a.min(b)
    };

    for lambda in 1..len {
        let mut fresh: Vec<(usize, Vec<u64>)> = Vec::new();
        for f in 1..nn {
            let weight = lambda * f;
            if weight >= len {
                continue;
            }
            for s in 0..nn {
                // Chains starting at (λ, f) with running count s, without the
                // λf boxes of the pair itself.
                let mut poly = vec![0u64; len * classes];
                poly[class_of_stop(lambda, f, s)] += 1;
                for f_next in 1..nn {
                    let rho = (lambda + f + f_next) % nn;
                    let tail = &tails[idx(rho, f_next, (s + f_next) % nn)];
                    for (slot, &val) in poly.iter_mut().zip(tail).take((len - weight) * classes) {
                        *slot += val;
                    }
                }
                // Shift by the pair's own boxes.
                let mut shifted = vec![0u64; len * classes];
                shifted[weight * classes..].copy_from_slice(&poly[..(len - weight) * classes]);
                if lambda % nn == f % nn && s == f % nn {
                    for (slot, &val) in total.iter_mut().zip(&shifted) {
                        *slot += val;
                    }
                }
                fresh.push((idx(lambda % nn, f, s), shifted));
            }
        }
        for (key, poly) in fresh {
            for (slot, val) in tails[key].iter_mut().zip(poly) {
                *slot += val;
            }
        }
    }
    total.chunks(classes).map(<[u64]>::to_vec).collect()
}

/// `B_i(q)` from the combinatorial side, exact below `order`.
pub fn b_comb(i: u32, n: u32, order: i64) -> Result<QSeries> {
    crate::check_modulus(n)?;
    assert!(i <= max_class(n), "class {i} out of range for n = {n}");
    if order <= 0 {
        return Ok(QSeries::zero(order));
    }
    let counts = count_by_class(n, boxes_for(i, i + order as u32 - 1, n));
    let coeffs = (0..order as u32)
        .map(|d| counts[boxes_for(i, i + d, n) as usize][i as usize].into())
        .collect();
    Ok(QSeries::from_coeffs(0, coeffs, order))
}

/// All `B_0, …, B_{⌊n/2⌋}` from the combinatorial side.
pub fn b_comb_all(n: u32, order: i64) -> Result<Vec<QSeries>> {
    (0..=max_class(n)).map(|i| b_comb(i, n, order)).collect()
}

/// `Φ_in(q) = q^{i²} g(q^{2i+1}, q^{n+1−2i})`.
pub fn phi_in(i: u32, n: u32, order: i64) -> Result<QSeries> {
    let (i, n) = (i as i64, n as i64);
    shifted_theta(ThetaKind::G, 1, i * i, 2 * i + 1, n + 1 - 2 * i, order)
}

/// The theta kind and arguments `(r, s)` of `Ψ_ijn = h(q^r, q^s)`, with
/// `h = f` for even `n` and `h = g` for odd `n`.
pub fn psi_args(i: u32, j: u32, n: u32) -> (ThetaKind, i64, i64) {
    let (i, j, n) = (i as i64, j as i64, n as i64);
    let kind = if n % 2 == 0 {
        ThetaKind::F
    } else {
        ThetaKind::G
    };
    let r = n * (n + 3) / 2 - 2 * i - (n + 2) * j;
    let s = n * (n + 1) / 2 + 2 * i + (n + 2) * j;
    (kind, r, s)
}

/// `Ψ_ijn(q)`, brought to nonnegative theta arguments by the transformation law.
pub fn psi(i: u32, j: u32, n: u32, order: i64) -> Result<QSeries> {
    let (kind, r, s) = psi_args(i, j, n);
    NormalizedTheta::new(kind, r, s)?.series(order)
}

/// Which proven family `n` belongs to, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// `n = p` an odd prime.
    OddPrime,
    /// `n = 2p` with `p = 1` or an odd prime.
    TwoP,
    /// Any other `n`; the Cramer formula is only conjectured there.
    Conjectural,
}

impl Branch {
    pub fn of(n: u32) -> Branch {
        if n % 2 == 1 && is_prime(n) {
            Branch::OddPrime
        } else if n == 2 || (n % 2 == 0 && n / 2 % 2 == 1 && is_prime(n / 2)) {
            Branch::TwoP
        } else {
            Branch::Conjectural
        }
    }

    pub fn is_proven(self) -> bool {
        self != Branch::Conjectural
    }
}

fn is_prime(m: u32) -> bool {
    m >= 2 && (2..).take_while(|d| d * d <= m).all(|d| m % d != 0)
}

/// Offsets `j` whose terms of `Φ_in` fall in the residue class of row `t`:
/// those with `i + j ≡ ±t (mod n)`.
fn row_offsets(t: u32, i: u32, n: u32) -> Vec<u32> {
    let (t, i, n) = (t as i64, i as i64, n as i64);
    let mut js = vec![(t - i).rem_euclid(n) as u32, (-t - i).rem_euclid(n) as u32];
    js.sort_unstable();
    js.dedup();
    js
}

fn alternating(j: u32) -> i64 {
    if j % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The coefficient matrix of the Cramer system together with its branch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaMatrix {
    pub n: u32,
    pub branch: Branch,
    pub entries: Vec<Vec<QSeries>>,
}

impl ThetaMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn order(&self) -> i64 {
        self.entries[0][0].order()
    }

    pub fn det(&self) -> Result<QSeries> {
        det(&self.entries)
    }
}

/// Entry `a_{t,i} = Σ_j (−1)^j q^{j(j−1)/2 + Q((j+i)²)} Ψ_{i,j,n}(q)` over the
/// offsets `j` of row `t`, where `Q(x) = ⌊x/n⌋`.
fn matrix_entry(t: u32, i: u32, n: u32, order: i64) -> Result<QSeries> {
    let mut acc = QSeries::zero(order);
    for j in row_offsets(t, i, n) {
        let (kind, r, s) = psi_args(i, j, n);
        let psi = NormalizedTheta::new(kind, r, s)?;
        let prefactor = (j as i64) * (j as i64 - 1) / 2 + ((j + i) as i64).pow(2) / n as i64;
        let term = shifted_theta(
            kind,
            alternating(j) * psi.sign,
            prefactor + psi.shift,
            psi.r,
            psi.s,
            order,
        )?;
        acc = &acc + &term;
    }
    Ok(acc)
}

/// Builds the `(⌊n/2⌋ + 1)`-square coefficient matrix with entries exact
/// below `order`. Outside the proven branches this needs `allow_conjecture`.
pub fn build_a(n: u32, order: i64, allow_conjecture: bool) -> Result<ThetaMatrix> {
    crate::check_modulus(n)?;
    let branch = Branch::of(n);
    if !branch.is_proven() && !allow_conjecture {
        return Err(Error::UnsupportedModulus(n));
    }
    let size = max_class(n) + 1;
    let entries = (0..size)
        .map(|t| {
            (0..size)
                .map(|i| {
                    let entry = matrix_entry(t, i, n, order)?;
                    match entry.valuation() {
                        Some(v) if v < 0 => Err(Error::NegativeValuation {
                            row: t as usize,
                            col: i as usize,
                            valuation: v,
                        }),
                        _ => Ok(entry),
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ThetaMatrix { n, branch, entries })
}

/// Row `t`, column `i` of the system obtained directly from the residue
/// split: collect the terms of `Φ_in(q)` written as
/// `Σ_j (−1)^j q^{nj(j−1)/2+(i+j)²} Ψ_ijn(qⁿ)` whose offsets belong to row
/// `t`, strip the common factor `q^{t² mod n}` and substitute `q ↦ q^{1/n}`.
/// The substitution fails if any exponent left is not a multiple of `n`.
pub fn residue_separated_entry(t: u32, i: u32, n: u32, order: i64) -> Result<QSeries> {
    let residue = ((t as i64).pow(2)).rem_euclid(n as i64);
    let wide = order * n as i64 + residue;
    let mut acc = QSeries::zero(wide);
    for j in row_offsets(t, i, n) {
        acc = &acc + &phi_term(i, j, n, wide)?;
    }
    acc.shift(-residue).contract(n as i64)
}

/// `(−1)^j q^{nj(j−1)/2+(i+j)²} Ψ_ijn(qⁿ)` summed directly (no normalisation).
fn phi_term(i: u32, j: u32, n: u32, order: i64) -> Result<QSeries> {
    let (kind, r, s) = psi_args(i, j, n);
    let nn = n as i64;
    let (ji, ii) = (j as i64, i as i64);
    let shift = nn * ji * (ji - 1) / 2 + (ii + ji).pow(2);
    shifted_theta(kind, alternating(j), shift, nn * r, nn * s, order)
}

/// `Σ_{j=0}^{n−1} (−1)^j q^{nj(j−1)/2+(i+j)²} Ψ_ijn(qⁿ)`, which equals `Φ_in(q)`.
pub fn phi_decomposition(i: u32, n: u32, order: i64) -> Result<QSeries> {
    let mut acc = QSeries::zero(order);
    for j in 0..n {
        acc = &acc + &phi_term(i, j, n, order)?;
    }
    Ok(acc)
}

/// All `B_i(q) = (−1)^i φ(q) det(Ã_{0i}) / det(A)`, exact below `order`.
///
/// `det(A)` may carry a factor `q^v` (rows whose prefactors share a power of
/// `q`), so the matrix is rebuilt `v` orders deeper and the quotient taken
/// as a Laurent division.
pub fn b_theta_all(n: u32, order: i64, allow_conjecture: bool) -> Result<Vec<QSeries>> {
    let mut a = build_a(n, order, allow_conjecture)?;
    let mut d = a.det()?;
    let v = d.valuation().ok_or_else(|| Error::NonUnit(d.to_string()))?;
    if v > 0 {
        a = build_a(n, order + v, allow_conjecture)?;
        d = a.det()?;
    }
    let work = a.order();
    let phi = euler_phi(work, 1);
    (0..a.size())
        .map(|i| {
            let cofactor = det(&minor(&a.entries, 0, i))?;
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let numerator = (&phi * &cofactor).scale_i64(sign);
            numerator.checked_div(&d)?.truncate(order)
        })
        .collect()
}

pub fn b_theta(i: u32, n: u32, order: i64, allow_conjecture: bool) -> Result<QSeries> {
    let all = b_theta_all(n, order, allow_conjecture)?;
    all.into_iter()
        .nth(i as usize)
        .ok_or(Error::ResidueOutOfRange { residue: i, n })
}

/// Both sides of `φ(qⁿ) = Σ_i q^{i²} g(q^{2i+1}, q^{n+1−2i}) B_i(qⁿ)` below
/// `order`. Each `B_i` must be known below `⌈order / n⌉`.
pub fn master_sides(n: u32, order: i64, b: &[QSeries]) -> Result<(QSeries, QSeries)> {
    let lhs = euler_phi(order, n as i64);
    let mut rhs = QSeries::zero(order);
    for (i, series) in b.iter().enumerate() {
        let i = i as u32;
        let dilated = series.dilate(n as i64).truncate(order)?;
        rhs = &rhs + &(&phi_in(i, n, order)? * &dilated);
    }
    Ok((lhs, rhs))
}

pub fn verify_master(n: u32, order: i64, b: &[QSeries]) -> Result<bool> {
    let (lhs, rhs) = master_sides(n, order, b)?;
    Ok(lhs == rhs)
}
