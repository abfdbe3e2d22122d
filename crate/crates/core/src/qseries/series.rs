use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A truncated Laurent series `Σ_{e < order} c_e q^e` with big-integer coefficients.
///
/// Coefficients are stored from the valuation up to the last nonzero term;
/// everything below `order` that is not stored is zero, everything at or
/// above `order` is unknown. The zero series has no coefficients and
/// `lowest = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QSeries {
    lowest: i64,
    coeffs: Vec<BigInt>,
    order: i64,
}

impl QSeries {
    pub fn zero(order: i64) -> Self {
        Self {
            lowest: 0,
            coeffs: Vec::new(),
            order,
        }
    }

    pub fn one(order: i64) -> Self {
        Self::monomial(1, 0, order)
    }

    /// `c·q^exp`, or zero when `exp ≥ order`.
    pub fn monomial(coeff: impl Into<BigInt>, exp: i64, order: i64) -> Self {
        Self::from_coeffs(exp, vec![coeff.into()], order)
    }

    /// Series whose coefficient at `lowest + idx` is `coeffs[idx]`; entries at
    /// or beyond `order` are discarded.
    pub fn from_coeffs(lowest: i64, mut coeffs: Vec<BigInt>, order: i64) -> Self {
        let keep = (order - lowest).clamp(0, coeffs.len() as i64) as usize;
        coeffs.truncate(keep);
        let mut s = Self {
            lowest,
            coeffs,
            order,
        };
        s.normalize();
        s
    }

    pub fn from_i64s(lowest: i64, coeffs: &[i64], order: i64) -> Self {
        Self::from_coeffs(
            lowest,
            coeffs.iter().map(|&c| BigInt::from(c)).collect(),
            order,
        )
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.lowest = 0;
        } else if lead > 0 {
            self.coeffs.drain(..lead);
            self.lowest += lead as i64;
        }
    }

    /// Exclusive truncation bound.
    pub fn order(&self) -> i64 {
        self.order
    }

    /// Exponent of the lowest stored coefficient (0 for the zero series).
    pub fn lowest(&self) -> i64 {
        self.lowest
    }

    /// Exponent of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.lowest)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `q^exp`. Panics if `exp ≥ order`, where it is unknown.
    pub fn coeff(&self, exp: i64) -> BigInt {
        assert!(
            exp < self.order,
            "coefficient of q^{exp} requested beyond order {}",
            self.order
        );
        self.coeff_or_zero(exp)
    }

    fn coeff_or_zero(&self, exp: i64) -> BigInt {
        let idx = exp - self.lowest;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Coefficients of `q^from, …, q^{to−1}`; `to` must not exceed the order.
    pub fn coeffs_range(&self, from: i64, to: i64) -> Vec<BigInt> {
        assert!(
            to <= self.order,
            "range end {to} beyond order {}",
            self.order
        );
        (from..to).map(|e| self.coeff_or_zero(e)).collect()
    }

    /// Nonzero terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(idx, c)| (self.lowest + idx as i64, c))
    }

    fn require_same_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    fn combine(&self, other: &Self, negate_other: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate_other { -other } else { other.clone() };
        }
        let lowest = self.lowest.min(other.lowest);
        let top =
            (self.lowest + self.coeffs.len() as i64).max(other.lowest + other.coeffs.len() as i64);
        let mut coeffs = vec![BigInt::zero(); (top - lowest) as usize];
        for (idx, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.lowest - lowest) as usize + idx] += c;
        }
        for (idx, c) in other.coeffs.iter().enumerate() {
            let slot = &mut coeffs[(other.lowest - lowest) as usize + idx];
            if negate_other {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
        Self::from_coeffs(lowest, coeffs, self.order)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.require_same_order(other)?;
        Ok(self.combine(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.require_same_order(other)?;
        Ok(self.combine(other, true))
    }

    /// Product of two series of the same order `N`. The result is exact below
    /// `N + min(val(a), val(b), 0)`, which is `N` for power series.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.require_same_order(other)?;
        let (Some(va), Some(vb)) = (self.valuation(), other.valuation()) else {
            let shift = self.valuation().or(other.valuation()).unwrap_or(0).min(0);
            return Ok(Self::zero(self.order + shift));
        };
        let order = self.order + va.min(vb).min(0);
        let lowest = va + vb;
        let len = order - lowest;
        if len <= 0 {
            return Ok(Self::zero(order));
        }
        let mut coeffs = vec![BigInt::zero(); len as usize];
        for (x, ca) in self.coeffs.iter().enumerate() {
            if x as i64 >= len {
                break;
            }
            if ca.is_zero() {
                continue;
            }
            let room = (len as usize - x).min(other.coeffs.len());
            for (y, cb) in other.coeffs[..room].iter().enumerate() {
                if !cb.is_zero() {
                    coeffs[x + y] += ca * cb;
                }
            }
        }
        Ok(Self::from_coeffs(lowest, coeffs, order))
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        Self::from_coeffs(
            self.lowest,
            self.coeffs.iter().map(|c| c * factor).collect(),
            self.order,
        )
    }

    pub fn scale_i64(&self, factor: i64) -> Self {
        self.scale(&BigInt::from(factor))
    }

    /// Multiplication by `q^m`. The order moves with the series.
    pub fn shift(&self, m: i64) -> Self {
        if self.is_zero() {
            return Self::zero(self.order + m);
        }
        Self {
            lowest: self.lowest + m,
            coeffs: self.coeffs.clone(),
            order: self.order + m,
        }
    }

    /// Multiplication by `sign·q^m`, `sign = ±1`.
    pub fn scale_shift(&self, sign: i64, m: i64) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        let shifted = self.shift(m);
        if sign < 0 {
            -&shifted
        } else {
            shifted
        }
    }

    /// Forgets every coefficient at or beyond `order`.
    pub fn truncate(&self, order: i64) -> Result<Self> {
        if order > self.order {
            return Err(Error::OrderIncrease {
                from: self.order,
                to: order,
            });
        }
        Ok(Self::from_coeffs(self.lowest, self.coeffs.clone(), order))
    }

    /// Multiplicative inverse of a series with valuation 0 and constant term ±1.
    pub fn invert(&self) -> Result<Self> {
        let unit = self.valuation() == Some(0) && self.coeffs[0].abs().is_one();
        if !unit {
            return Err(Error::NonUnit(self.to_string()));
        }
        let order = self.order;
        if order <= 0 {
            return Ok(Self::zero(order));
        }
        let c0 = self.coeffs[0].clone();
        let mut out: Vec<BigInt> = Vec::with_capacity(order as usize);
        out.push(c0.clone());
        for m in 1..order as usize {
            let mut acc = BigInt::zero();
            for k in 1..=m.min(self.coeffs.len() - 1) {
                let a = &self.coeffs[k];
                if !a.is_zero() {
                    acc += a * &out[m - k];
                }
            }
            out.push(-(acc * &c0));
        }
        Ok(Self::from_coeffs(0, out, order))
    }

    /// Laurent quotient. The denominator must be `±q^v·(1 + …)`; both operands
    /// share an order `N` and the result is exact below `N − v` (less if the
    /// numerator has negative valuation).
    pub fn checked_div(&self, den: &Self) -> Result<Self> {
        self.require_same_order(den)?;
        let v = den.valuation().ok_or_else(|| Error::NonUnit("0".into()))?;
        let unit = den.shift(-v).invert()?;
        self.shift(-v).checked_mul(&unit)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.order);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `q ↦ q^m` for `m ≥ 1`.
    pub fn dilate(&self, m: i64) -> Self {
        assert!(m >= 1, "dilation factor must be positive");
        if self.is_zero() {
            return Self::zero(self.order * m);
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * m as usize + 1];
        for (idx, c) in self.coeffs.iter().enumerate() {
            coeffs[idx * m as usize] = c.clone();
        }
        Self {
            lowest: self.lowest * m,
            coeffs,
            order: self.order * m,
        }
    }

    /// Substitutes `q ↦ q^{1/p}`. Every exponent carrying a nonzero
    /// coefficient must be divisible by `p`.
    pub fn contract(&self, p: i64) -> Result<Self> {
        assert!(p >= 1, "contraction factor must be positive");
        let order = Integer::div_ceil(&self.order, &p);
        let mut terms = Vec::new();
        for (e, c) in self.terms() {
            let (q, r) = e.div_mod_floor(&p);
            if r != 0 {
                return Err(Error::NotDivisible {
                    exponent: e,
                    divisor: p,
                });
            }
            terms.push((q, c.clone()));
        }
        Ok(Self::from_terms(terms, order))
    }

    /// Keeps only the terms with exponent `≡ residue (mod modulus)`.
    pub fn extract_residue(&self, residue: i64, modulus: i64) -> Self {
        let terms = self
            .terms()
            .filter(|(e, _)| e.rem_euclid(modulus) == residue.rem_euclid(modulus))
            .map(|(e, c)| (e, c.clone()))
            .collect();
        Self::from_terms(terms, self.order)
    }

    pub(crate) fn from_terms(terms: Vec<(i64, BigInt)>, order: i64) -> Self {
        let Some(lowest) = terms.iter().map(|(e, _)| *e).min() else {
            return Self::zero(order);
        };
        let top = terms.iter().map(|(e, _)| *e).max().unwrap_or(lowest);
        let mut coeffs = vec![BigInt::zero(); (top - lowest + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lowest) as usize] += c;
        }
        Self::from_coeffs(lowest, coeffs, order)
    }

    /// First exponent where the two series differ, with both coefficients,
    /// compared on `[min lowest, min order)`.
    pub fn first_discrepancy(&self, other: &Self) -> Option<(i64, BigInt, BigInt)> {
        let start = self.lowest.min(other.lowest);
        let end = self.order.min(other.order);
        (start..end).find_map(|e| {
            let (a, b) = (self.coeff_or_zero(e), other.coeff_or_zero(e));
            (a != b).then_some((e, a, b))
        })
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries {
            lowest: self.lowest,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            order: self.order,
        }
    }
}

impl Neg for QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        -&self
    }
}

macro_rules! panicking_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        /// Panics when the truncation orders differ; use the `checked_` form to
        /// handle that case.
        impl $trait<&QSeries> for &QSeries {
            type Output = QSeries;
            fn $method(self, rhs: &QSeries) -> QSeries {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl $trait<QSeries> for QSeries {
            type Output = QSeries;
            fn $method(self, rhs: QSeries) -> QSeries {
                (&self).$method(&rhs)
            }
        }
    };
}

panicking_binop!(Add, add, checked_add);
panicking_binop!(Sub, sub, checked_sub);
panicking_binop!(Mul, mul, checked_mul);

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = !magnitude.is_one() || e == 0;
            if show_coeff {
                write!(f, "{magnitude}")?;
            }
            match e {
                0 => {}
                1 => f.write_str(if show_coeff { "*q" } else { "q" })?,
                _ => write!(f, "{}q^{e}", if show_coeff { "*" } else { "" })?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.order)
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSeries({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(lowest: i64, coeffs: &[i64], order: i64) -> QSeries {
        QSeries::from_i64s(lowest, coeffs, order)
    }

    #[test]
    fn geometric_inverse() {
        let one_minus_q = s(0, &[1, -1], 20);
        let geometric = s(0, &[1; 20], 20);
        assert_eq!(&one_minus_q * &geometric, QSeries::one(20));
        assert_eq!(one_minus_q.invert().unwrap(), geometric);
        assert_eq!(QSeries::one(7).invert().unwrap(), QSeries::one(7));
    }

    #[test]
    fn additive_inverse_is_zero() {
        let a = s(-2, &[3, 0, -1, 5], 10);
        assert_eq!(&a + &(-&a), QSeries::zero(10));
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn normalization() {
        let a = s(0, &[0, 0, 4, 0, 0], 10);
        assert_eq!(a.lowest(), 2);
        assert_eq!(a.valuation(), Some(2));
        let z = s(5, &[0, 0], 10);
        assert_eq!(z, QSeries::zero(10));
        assert_eq!(z.lowest(), 0);
        assert_eq!(s(0, &[1, 2, 3, 4], 2), s(0, &[1, 2], 2));
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let a = QSeries::one(5);
        let b = QSeries::one(6);
        assert_eq!(
            a.checked_add(&b),
            Err(Error::OrderMismatch { left: 5, right: 6 })
        );
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn laurent_product_precision() {
        // (q^-1 + 1)(1 + q) known below 10 each: product known below 9.
        let a = s(-1, &[1, 1], 10);
        let b = s(0, &[1, 1], 10);
        let p = &a * &b;
        assert_eq!(p.order(), 9);
        assert_eq!(p, s(-1, &[1, 2, 1], 9));
    }

    #[test]
    fn non_unit_rejected() {
        assert!(s(0, &[2, 1], 10).invert().is_err());
        assert!(s(1, &[1], 10).invert().is_err());
        assert!(QSeries::zero(10).invert().is_err());
    }

    #[test]
    fn laurent_division() {
        let num = s(1, &[1, 3], 12);
        let den = s(1, &[-1, 1], 12);
        let quot = num.checked_div(&den).unwrap();
        assert_eq!(quot.order(), 11);
        assert_eq!(&quot * &s(0, &[-1, 1], 11), s(0, &[1, 3], 11));
    }

    #[test]
    fn dilate_and_contract() {
        let a = s(0, &[1, -1, 2], 5);
        let d = a.dilate(3);
        assert_eq!(d, s(0, &[1, 0, 0, -1, 0, 0, 2], 15));
        assert_eq!(d.contract(3).unwrap(), a);
        assert_eq!(
            s(0, &[1, 1], 10).contract(2),
            Err(Error::NotDivisible {
                exponent: 1,
                divisor: 2
            })
        );
        assert_eq!(
            s(0, &[1, 2, 3, 4, 5, 6], 10).extract_residue(1, 3),
            s(1, &[2, 0, 0, 5], 10)
        );
    }

    #[test]
    fn discrepancy_and_display() {
        let a = s(0, &[1, -1, -1], 5);
        let b = s(0, &[1, -1, 1], 5);
        assert_eq!(
            a.first_discrepancy(&b),
            Some((2, BigInt::from(-1), BigInt::from(1)))
        );
        assert_eq!(a.first_discrepancy(&a), None);
        assert_eq!(a.to_string(), "1 - q - q^2 + O(q^5)");
        assert_eq!(s(-1, &[2], 3).to_string(), "2*q^-1 + O(q^3)");
        assert_eq!(QSeries::zero(4).to_string(), "0 + O(q^4)");
    }
}
