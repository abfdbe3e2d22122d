//! The bilateral theta series
//!
//! ```text
//! f(u, v) = Σ_j u^{j(j−1)/2} v^{j(j+1)/2},   g(u, v) = Σ_j (−1)^j u^{j(j−1)/2} v^{j(j+1)/2}
//! ```
//!
//! specialised to `u = q^r`, `v = q^s`, together with their product forms
//! and the Euler function.

use num_bigint::BigInt;
use num_traits::Zero;

use super::QSeries;
use crate::error::{Error, Result};

/// Which of the two theta series: `F` has all signs `+`, `G` alternates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ThetaKind {
    F,
    G,
}

impl ThetaKind {
    /// The sign picked up by one application of `h(q^r, q^s) = ± q^r h(q^{2r+s}, q^{−r})`.
    pub fn transform_sign(self) -> i64 {
        match self {
            ThetaKind::F => 1,
            ThetaKind::G => -1,
        }
    }
}

/// Exponent `r·j(j−1)/2 + s·j(j+1)/2` of the `j`-th term.
fn term_exponent(r: i64, s: i64, j: i64) -> i64 {
    r * (j * (j - 1) / 2) + s * (j * (j + 1) / 2)
}

/// Sum form of `f` or `g` at `(q^r, q^s)`, exact below `order`. Terms are
/// collected for every `j` whose exponent is below `order`; `r + s > 0`
/// makes that set finite. `r` or `s` may be negative.
pub fn theta(kind: ThetaKind, r: i64, s: i64, order: i64) -> Result<QSeries> {
    if r + s <= 0 {
        return Err(Error::DivergentTheta { r, s });
    }
    // The exponent is a convex quadratic in j with its minimum near (r − s) / (2(r + s)).
    let vertex = (r - s).div_euclid(2 * (r + s));
    let mut terms: Vec<(i64, BigInt)> = Vec::new();
    let mut push = |j: i64| {
        let e = term_exponent(r, s, j);
        if e < order {
            let sign = if kind == ThetaKind::G && j.rem_euclid(2) == 1 {
                -1
            } else {
                1
            };
            terms.push((e, BigInt::from(sign)));
        }
        e
    };
    let mut j = vertex;
    while push(j) < order || j <= vertex + 1 {
        j += 1;
    }
    let mut j = vertex - 1;
    while push(j) < order || j >= vertex - 1 {
        j -= 1;
    }
    Ok(QSeries::from_terms(terms, order))
}

pub fn theta_f(r: i64, s: i64, order: i64) -> Result<QSeries> {
    theta(ThetaKind::F, r, s, order)
}

pub fn theta_g(r: i64, s: i64, order: i64) -> Result<QSeries> {
    theta(ThetaKind::G, r, s, order)
}

/// Rewrites `h(q^r, q^s)` as `sign · q^shift · h(q^{r'}, q^{s'})` with
/// `r', s' ≥ 0`, using argument symmetry and the transformation law.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormalizedTheta {
    pub kind: ThetaKind,
    pub sign: i64,
    pub shift: i64,
    pub r: i64,
    pub s: i64,
}

impl NormalizedTheta {
    pub fn new(kind: ThetaKind, r: i64, s: i64) -> Result<Self> {
        if r + s <= 0 {
            return Err(Error::DivergentTheta { r, s });
        }
        let (mut r, mut s, mut sign, mut shift) = (r, s, 1, 0);
        loop {
            if s < 0 {
                std::mem::swap(&mut r, &mut s);
            }
            if r >= 0 {
                break;
            }
            // h(q^r, q^s) = ± q^r h(q^{2r+s}, q^{−r}); each step raises the
            // smaller argument by r + s.
            shift += r;
            sign *= kind.transform_sign();
            (r, s) = (2 * r + s, -r);
        }
        Ok(Self {
            kind,
            sign,
            shift,
            r,
            s,
        })
    }

    /// The series, exact below `order`.
    pub fn series(&self, order: i64) -> Result<QSeries> {
        shifted_theta(self.kind, self.sign, self.shift, self.r, self.s, order)
    }
}

/// `sign · q^shift · h(q^r, q^s)` computed exactly below `order`.
pub fn shifted_theta(
    kind: ThetaKind,
    sign: i64,
    shift: i64,
    r: i64,
    s: i64,
    order: i64,
) -> Result<QSeries> {
    Ok(theta(kind, r, s, order - shift)?.scale_shift(sign, shift))
}

/// Checks `f(q^r, q^s) = q^r f(q^{2r+s}, q^{−r})` and
/// `g(q^r, q^s) = −q^r g(q^{2r+s}, q^{−r})` below `order`.
pub fn transform_check(r: i64, s: i64, order: i64) -> Result<bool> {
    for kind in [ThetaKind::F, ThetaKind::G] {
        let lhs = theta(kind, r, s, order)?;
        let rhs = shifted_theta(kind, kind.transform_sign(), r, 2 * r + s, -r, order)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Dense coefficient buffer for power series arithmetic on `[0, order)`.
struct Dense(Vec<BigInt>);

impl Dense {
    fn one(order: i64) -> Self {
        let mut v = vec![BigInt::zero(); order.max(0) as usize];
        if let Some(c) = v.first_mut() {
            *c = BigInt::from(1);
        }
        Dense(v)
    }

    /// Multiplies by `1 + sign·q^e` in place.
    fn mul_binomial(&mut self, sign: i64, e: usize) {
        if e == 0 {
            let factor = BigInt::from(1 + sign);
            self.0.iter_mut().for_each(|c| *c *= &factor);
            return;
        }
        for idx in (e..self.0.len()).rev() {
            let (lo, hi) = self.0.split_at_mut(idx);
            if sign > 0 {
                hi[0] += &lo[idx - e];
            } else {
                hi[0] -= &lo[idx - e];
            }
        }
    }

    /// Multiplies by `1/(1 − q^e)` in place, `e ≥ 1`.
    fn div_one_minus(&mut self, e: usize) {
        for idx in e..self.0.len() {
            let (lo, hi) = self.0.split_at_mut(idx);
            hi[0] += &lo[idx - e];
        }
    }

    fn into_series(self, order: i64) -> QSeries {
        QSeries::from_coeffs(0, self.0, order)
    }
}

fn triple_product(kind: ThetaKind, r: i64, s: i64, order: i64) -> Result<QSeries> {
    if r < 0 || s < 0 {
        return Err(Error::NegativeProductArgs { r, s });
    }
    if r + s == 0 {
        return Err(Error::DivergentTheta { r, s });
    }
    let sign = kind.transform_sign();
    let mut acc = Dense::one(order);
    for j in 1.. {
        let full = (r + s) * j;
        let left = r * (j - 1) + s * j;
        let right = r * j + s * (j - 1);
        if full >= order && left >= order && right >= order {
            break;
        }
        for (factor_sign, e) in [(-1, full), (sign, left), (sign, right)] {
            if e < order {
                acc.mul_binomial(factor_sign, e as usize);
            }
        }
    }
    Ok(acc.into_series(order))
}

/// `∏_{j≥1} (1 − u^j v^j)(1 + u^{j−1} v^j)(1 + u^j v^{j−1})` at `u = q^r`, `v = q^s`.
pub fn triple_product_f(r: i64, s: i64, order: i64) -> Result<QSeries> {
    triple_product(ThetaKind::F, r, s, order)
}

/// `∏_{j≥1} (1 − u^j v^j)(1 − u^{j−1} v^j)(1 − u^j v^{j−1})` at `u = q^r`, `v = q^s`.
pub fn triple_product_g(r: i64, s: i64, order: i64) -> Result<QSeries> {
    triple_product(ThetaKind::G, r, s, order)
}

/// `φ(q^stride) = ∏_{j≥1} (1 − q^{stride·j})` as a product expansion.
pub fn euler_phi(order: i64, stride: i64) -> QSeries {
    assert!(stride >= 1, "stride must be positive");
    let mut acc = Dense::one(order);
    let mut e = stride;
    while e < order {
        acc.mul_binomial(-1, e as usize);
        e += stride;
    }
    acc.into_series(order)
}

/// `∏ (1 − q^j)^{−1}` over `j ≥ 1` with `j mod modulus` not in `excluded`.
pub fn restricted_partition_gf(excluded: &[u32], modulus: u32, order: i64) -> QSeries {
    assert!(modulus >= 1, "modulus must be positive");
    let mut acc = Dense::one(order);
    for j in 1..order.max(1) {
        if !excluded.contains(&((j % modulus as i64) as u32)) {
            acc.div_one_minus(j as usize);
        }
    }
    acc.into_series(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Naive product of explicit binomials, independent of the dense helpers.
    fn naive_phi(order: i64) -> QSeries {
        let mut acc = QSeries::one(order);
        for j in 1..order {
            let factor = &QSeries::one(order) - &QSeries::monomial(1, j, order);
            acc = &acc * &factor;
        }
        acc
    }

    #[test]
    fn euler_phi_pentagonal_terms() {
        let phi = euler_phi(13, 1);
        assert_eq!(
            phi,
            QSeries::from_i64s(0, &[1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1], 13)
        );
        assert_eq!(phi, naive_phi(13));
        assert_eq!(theta_g(1, 2, 13).unwrap(), phi);
        assert_eq!(euler_phi(1, 1), QSeries::one(1));
    }

    #[test]
    fn euler_phi_stride_support() {
        let phi5 = euler_phi(80, 5);
        assert!(phi5.terms().all(|(e, _)| e % 5 == 0));
        assert_eq!(phi5, euler_phi(16, 1).dilate(5));
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta_g(1, 2, 200).unwrap(), euler_phi(200, 1));
        assert!(theta_g(0, 15, 200).unwrap().is_zero());
        assert_eq!(theta_f(5, 3, 200).unwrap(), theta_f(3, 5, 200).unwrap());
        assert_eq!(theta_f(0, 0, 10), Err(Error::DivergentTheta { r: 0, s: 0 }));
    }

    #[test]
    fn theta_matches_bruteforce_enumeration() {
        for (r, s) in [(1, 1), (-1, 9), (-3, 18), (4, 11), (0, 3), (-10, 40)] {
            let order = 60;
            let mut terms = Vec::new();
            for j in -400i64..=400 {
                let e = r * j * (j - 1) / 2 + s * j * (j + 1) / 2;
                if e < order {
                    terms.push((e, BigInt::from(if j % 2 == 0 { 1 } else { -1 })));
                }
            }
            let expected = QSeries::from_terms(terms, order);
            assert_eq!(theta_g(r, s, order).unwrap(), expected, "g({r},{s})");
        }
    }

    #[test]
    fn transform_examples() {
        assert!(transform_check(-1, 9, 200).unwrap());
        assert!(transform_check(-3, 18, 200).unwrap());
        assert!(transform_check(1, 1, 200).unwrap());
        let direct = theta_g(-3, 18, 100).unwrap();
        let normalized = shifted_theta(ThetaKind::G, -1, -3, 12, 3, 100).unwrap();
        assert_eq!(direct, normalized);
        let f = theta_f(-1, 9, 100).unwrap();
        assert_eq!(f, theta_f(7, 1, 101).unwrap().shift(-1));
    }

    #[test]
    fn normalization_reaches_nonnegative_arguments() {
        for kind in [ThetaKind::F, ThetaKind::G] {
            for r in -30..=10 {
                for s in -30..=40 {
                    if r + s <= 0 {
                        continue;
                    }
                    let norm = NormalizedTheta::new(kind, r, s).unwrap();
                    assert!(norm.r >= 0 && norm.s >= 0);
                    assert_eq!(norm.series(80).unwrap(), theta(kind, r, s, 80).unwrap());
                }
            }
        }
    }

    #[test]
    fn triple_product_examples() {
        for (r, s) in [(1, 1), (1, 2), (3, 5), (5, 3), (1, 7)] {
            assert_eq!(
                triple_product_f(r, s, 200).unwrap(),
                theta_f(r, s, 200).unwrap()
            );
        }
        assert_eq!(triple_product_g(1, 2, 200).unwrap(), euler_phi(200, 1));
        assert_eq!(
            triple_product_g(1, 1, 50).unwrap().coeff(0),
            BigInt::from(1)
        );
        assert!(triple_product_f(-1, 3, 10).is_err());
    }

    #[test]
    fn restricted_partition_examples() {
        let gf = restricted_partition_gf(&[0, 7, 8], 15, 20);
        assert_eq!(gf.coeff(0), BigInt::from(1));
        let all: Vec<u32> = (0..15).collect();
        assert_eq!(restricted_partition_gf(&all, 15, 20), QSeries::one(20));
        let p = restricted_partition_gf(&[], 15, 20);
        assert_eq!(p.coeff(5), BigInt::from(7));
        assert_eq!(p, euler_phi(20, 1).invert().unwrap());
    }
}
