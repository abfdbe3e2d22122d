//! Weights in the basis `(Λ₀, …, Λ_{n−1}, δ)` and the labels `(i, k)` of the
//! summands `V(Λ_i + Λ_{n−i} − kδ)`.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::young::{color_counts, in_c_n, ColoredDiagram, Partition};

/// An element of the affine weight lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector {
    lambda: Vec<i64>,
    delta: i64,
}

impl WeightVector {
    pub fn zero(n: u32) -> Self {
        Self {
            lambda: vec![0; n as usize],
            delta: 0,
        }
    }

    pub fn new(lambda: Vec<i64>, delta: i64) -> Self {
        Self { lambda, delta }
    }

    /// The fundamental weight `Λ_t` (index taken mod `n`).
    pub fn fundamental(t: i64, n: u32) -> Self {
        let mut w = Self::zero(n);
        w.lambda[t.rem_euclid(n as i64) as usize] = 1;
        w
    }

    /// The null root `δ`.
    pub fn null_root(n: u32) -> Self {
        Self {
            lambda: vec![0; n as usize],
            delta: 1,
        }
    }

    pub fn n(&self) -> u32 {
        self.lambda.len() as u32
    }

    /// Coefficients of `Λ₀, …, Λ_{n−1}`; entry `t` is also `⟨wt, h_t⟩`.
    pub fn lambda_coeffs(&self) -> &[i64] {
        &self.lambda
    }

    pub fn delta_coeff(&self) -> i64 {
        self.delta
    }

    pub fn level(&self) -> i64 {
        self.lambda.iter().sum()
    }

    fn zip_with(&self, other: &Self, op: impl Fn(i64, i64) -> i64) -> Self {
        assert_eq!(self.n(), other.n(), "weights over different n");
        Self {
            lambda: self
                .lambda
                .iter()
                .zip(&other.lambda)
                .map(|(&a, &b)| op(a, b))
                .collect(),
            delta: op(self.delta, other.delta),
        }
    }
}

impl Add for &WeightVector {
    type Output = WeightVector;
    fn add(self, rhs: &WeightVector) -> WeightVector {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &WeightVector {
    type Output = WeightVector;
    fn sub(self, rhs: &WeightVector) -> WeightVector {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &WeightVector {
    type Output = WeightVector;
    fn neg(self) -> WeightVector {
        WeightVector {
            lambda: self.lambda.iter().map(|a| -a).collect(),
            delta: -self.delta,
        }
    }
}

impl Mul<&WeightVector> for i64 {
    type Output = WeightVector;
    fn mul(self, rhs: &WeightVector) -> WeightVector {
        WeightVector {
            lambda: rhs.lambda.iter().map(|a| self * a).collect(),
            delta: self * rhs.delta,
        }
    }
}

/// `α_i = 2Λ_i − Λ_{i−1} − Λ_{i+1} + δ_{i0} δ`, indices mod `n`.
pub fn simple_root(i: u32, n: u32) -> WeightVector {
    assert!(n >= 2 && i < n);
    let i = i as i64;
    let mut w = WeightVector::zero(n);
    w.lambda[i as usize] += 2;
    w.lambda[(i - 1).rem_euclid(n as i64) as usize] -= 1;
    w.lambda[(i + 1).rem_euclid(n as i64) as usize] -= 1;
    if i == 0 {
        w.delta = 1;
    }
    w
}

/// `Λ₀ − Σ_t c_t α_t` where `c_t` counts the `t`-colored cells (charge 0).
pub fn weight_of(d: &ColoredDiagram) -> WeightVector {
    let n = d.n();
    subtract_roots(
        WeightVector::fundamental(0, n),
        &color_counts(d.shape(), 0, n),
    )
}

fn subtract_roots(mut w: WeightVector, counts: &[u64]) -> WeightVector {
    let n = w.n();
    for (t, &c) in counts.iter().enumerate() {
        if c > 0 {
            w = &w - &(c as i64 * &simple_root(t as u32, n));
        }
    }
    w
}

/// Labels the summand `V(Λ_i + Λ_{n−i} − kδ)`; always `k ≥ i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ComponentLabel {
    pub i: u32,
    pub k: u32,
}

impl ComponentLabel {
    pub fn weight(&self, n: u32) -> WeightVector {
        let sum = &WeightVector::fundamental(self.i as i64, n)
            + &WeightVector::fundamental(n as i64 - self.i as i64, n);
        &sum - &(self.k as i64 * &WeightVector::null_root(n))
    }
}

/// Finds `(i, k)` with `2Λ₀ − Σ_t c_t α_t = Λ_i + Λ_{n−i} − kδ` from the color
/// counts of `p`, and checks `|p| = i² + (k − i)n`.
pub fn classify_maximal(p: &Partition, n: u32) -> Result<ComponentLabel> {
    crate::check_modulus(n)?;
    if !in_c_n(p, n) {
        return Err(Error::NotMaximal {
            partition: p.to_string(),
            n,
        });
    }
    let fail = |reason: String| Error::Classification {
        partition: p.to_string(),
        reason,
    };

    let counts = color_counts(p, 0, n);
    let weight = subtract_roots(2 * &WeightVector::fundamental(0, n), &counts);
    let support: Vec<(usize, i64)> = weight
        .lambda
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(t, &c)| (t, c))
        .collect();
    let i = match support.as_slice() {
        [(t, 2)] if 2 * t == 0 || 2 * t == n as usize => *t as u32,
        [(a, 1), (b, 1)] if a + b == n as usize => *a as u32,
        _ => {
            return Err(fail(format!(
                "weight {:?} is not Λ_i + Λ_(n-i) - kδ",
                weight.lambda
            )))
        }
    };
    let k = -weight.delta;
    if k != counts[0] as i64 {
        return Err(fail(format!(
            "δ coefficient {k} differs from 0-colored count {}",
            counts[0]
        )));
    }
    if k < i as i64 {
        return Err(fail(format!("k = {k} < i = {i}")));
    }
    let expected = (i as i64) * (i as i64) + (k - i as i64) * n as i64;
    if p.boxes() as i64 != expected {
        return Err(fail(format!(
            "{} boxes, expected i² + (k − i)n = {expected}",
            p.boxes()
        )));
    }
    Ok(ComponentLabel { i, k: k as u32 })
}

/// The pair `(min, max)` of `(λ_l − s_{l−1}) mod n` and `(−s_l) mod n`, where
/// `l` is the number of distinct parts. The minimum is the class `i` and the
/// two sum to `0 (mod n)`. The empty partition gives `(0, 0)`.
pub fn closed_form_pair(p: &Partition, n: u32) -> Result<(u32, u32)> {
    crate::check_modulus(n)?;
    if !in_c_n(p, n) {
        return Err(Error::NotMaximal {
            partition: p.to_string(),
            n,
        });
    }
    if p.is_empty() {
        return Ok((0, 0));
    }
    let sums = p.partial_sums();
    let l = sums.len();
    let s_prev = if l >= 2 { sums[l - 2] as i64 } else { 0 };
    let s_last = sums[l - 1] as i64;
    let last_part = p.pairs()[l - 1].0 as i64;
    let a = (last_part - s_prev).rem_euclid(n as i64) as u32;
    let b = (-s_last).rem_euclid(n as i64) as u32;
    Ok((a.min(b), a.max(b)))
}

pub fn closed_form_i(p: &Partition, n: u32) -> Result<u32> {
    closed_form_pair(p, n).map(|(i, _)| i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::young::enumerate_c_n;

    fn p(parts: &[u32]) -> Partition {
        Partition::from_parts(parts)
    }

    #[test]
    fn simple_root_examples() {
        assert_eq!(simple_root(0, 3), WeightVector::new(vec![2, -1, -1], 1));
        assert_eq!(simple_root(1, 3), WeightVector::new(vec![-1, 2, -1], 0));
        assert_eq!(simple_root(0, 2), WeightVector::new(vec![2, -2], 1));
        for n in 2..=8 {
            let mut total = WeightVector::zero(n);
            for i in 0..n {
                assert_eq!(simple_root(i, n).level(), 0);
                total = &total + &simple_root(i, n);
            }
            assert_eq!(total, WeightVector::null_root(n));
        }
    }

    #[test]
    fn weight_examples() {
        let diag = |parts: &[u32]| ColoredDiagram::new(p(parts), 0, 3).unwrap();
        assert_eq!(weight_of(&diag(&[])), WeightVector::fundamental(0, 3));
        assert_eq!(
            weight_of(&diag(&[1])),
            WeightVector::new(vec![-1, 1, 1], -1)
        );
        let expected = &(&(&WeightVector::fundamental(0, 3) - &(2 * &simple_root(0, 3)))
            - &(2 * &simple_root(1, 3)))
            - &(2 * &simple_root(2, 3));
        assert_eq!(weight_of(&diag(&[4, 1, 1])), expected);
    }

    #[test]
    fn classification_examples() {
        assert_eq!(
            classify_maximal(&Partition::empty(), 4).unwrap(),
            ComponentLabel { i: 0, k: 0 }
        );
        assert_eq!(
            classify_maximal(&p(&[4, 1, 1]), 3).unwrap(),
            ComponentLabel { i: 0, k: 2 }
        );
        assert_eq!(
            classify_maximal(&p(&[2, 2]), 6).unwrap(),
            ComponentLabel { i: 2, k: 2 }
        );
        assert!(matches!(
            classify_maximal(&p(&[2]), 3),
            Err(Error::NotMaximal { .. })
        ));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form_i(&p(&[4]), 3).unwrap(), 1);
        assert_eq!(classify_maximal(&p(&[4]), 3).unwrap().i, 1);
        assert_eq!(closed_form_i(&p(&[2, 2]), 6).unwrap(), 2);
        assert_eq!(closed_form_i(&p(&[4, 1, 1]), 3).unwrap(), 0);
        assert_eq!(closed_form_i(&Partition::empty(), 3).unwrap(), 0);
        assert!(closed_form_i(&p(&[2]), 3).is_err());
    }

    #[test]
    fn component_weight_matches_classification() {
        for n in 2..=6 {
            for boxes in 0..=14 {
                for q in enumerate_c_n(n, boxes) {
                    let label = classify_maximal(&q, n).unwrap();
                    let direct = subtract_roots(
                        2 * &WeightVector::fundamental(0, n),
                        &color_counts(&q, 0, n),
                    );
                    assert_eq!(label.weight(n), direct);
                    assert_eq!(direct.level(), 2);
                }
            }
        }
    }
}
