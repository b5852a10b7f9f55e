use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::SeriesError;
use crate::rational::{self, int, Rational};

/// `a_0 + a_1 z + ... + a_N z^N + O(z^{N+1})` with exact coefficients.
///
/// Binary operations truncate to the smaller of the two orders, so a
/// result never claims more precision than its inputs carry.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Builds a series of order `coeffs.len() - 1`. Panics on an empty vector.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs order >= 0");
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![Rational::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c z^k`, which is zero when `k` exceeds the order.
    pub fn monomial(c: Rational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// The coordinate `z`.
    pub fn variable(order: usize) -> Self {
        Self::monomial(Rational::one(), 1, order)
    }

    /// Builds a series from a coefficient rule `n -> a_n`.
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        Self::new((0..=order).map(f).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `z^n`. Panics past the truncation order.
    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn get(&self, n: usize) -> Option<&Rational> {
        self.coeffs.get(n)
    }

    pub fn set_coeff(&mut self, n: usize, c: Rational) {
        self.coeffs[n] = c;
    }

    pub fn constant_term(&self) -> &Rational {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(rational::is_integer)
    }

    /// Lowers the order to `min(order, self.order())`.
    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `z^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        Self::from_fn(self.order(), |n| if n >= k { self.coeffs[n - k].clone() } else { Rational::zero() })
    }

    /// Divides by `z^k`, assuming the first `k` coefficients vanish. The
    /// order drops by `k`.
    pub fn unshift(&self, k: usize) -> Option<Self> {
        if k > self.order() || self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(self.coeffs[k..].to_vec()))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        let n = self.order().min(other.order());
        Self::from_fn(n, |i| f(&self.coeffs[i], &other.coeffs[i]))
    }

    /// The Euler operator `θ = z d/dz`, coefficientwise `a_n -> n a_n`.
    pub fn theta(&self) -> Self {
        Self::from_fn(self.order(), |n| &self.coeffs[n] * int(n as i64))
    }

    /// Ordinary derivative; the order drops by one (order 0 gives zero).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self::from_fn(self.order() - 1, |n| &self.coeffs[n + 1] * int(n as i64 + 1))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(SeriesError::NotInvertible);
        }
        let inv0 = a0.recip();
        let mut b = vec![inv0.clone()];
        for n in 1..=self.order() {
            let s: Rational = (1..=n).map(|k| &self.coeffs[k] * &b[n - k]).sum();
            b.push(-s * &inv0);
        }
        Ok(Self::new(b))
    }

    /// `exp(f)` through `n b_n = Σ_{k=1}^n k a_k b_{n-k}`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm);
        }
        let mut b = vec![Rational::one()];
        for n in 1..=self.order() {
            let s: Rational = (1..=n).map(|k| &self.coeffs[k] * &b[n - k] * int(k as i64)).sum();
            b.push(s / int(n as i64));
        }
        Ok(Self::new(b))
    }

    /// `log(f)` for `f(0) = 1`, inverting the exp recurrence.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::ConstantTermNotOne);
        }
        let mut c = vec![Rational::zero()];
        for n in 1..=self.order() {
            let s: Rational = (1..n).map(|k| &c[k] * &self.coeffs[n - k] * int(k as i64)).sum();
            c.push((&self.coeffs[n] * int(n as i64) - s) / int(n as i64));
        }
        Ok(Self::new(c))
    }

    /// `self(inner(z))`, truncated to the smaller order. Horner in `inner`.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::InnerConstantTerm);
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = Self::zero(n);
        for a in self.coeffs[..=n].iter().rev() {
            acc = &acc * &inner;
            acc.coeffs[0] += a;
        }
        Ok(acc)
    }

    /// Compositional inverse by Lagrange inversion,
    /// `[w^n] g = (1/n) [z^{n-1}] (z/f)^n`.
    pub fn reversion(&self) -> Result<Self, SeriesError> {
        let n = self.order();
        if n == 0 || !self.coeffs[0].is_zero() || self.coeffs[1].is_zero() {
            return Err(SeriesError::NotReversible);
        }
        let h = self.unshift(1).expect("constant term checked").inverse().expect("linear term checked");
        let mut out = vec![Rational::zero(); n + 1];
        let mut hp = Self::one(h.order());
        for (k, slot) in out.iter_mut().enumerate().skip(1) {
            hp = &hp * &h;
            *slot = hp.coeff(k - 1) / int(k as i64);
        }
        Ok(Self::new(out))
    }

    /// Numerators and denominators, for overflow-free integrality reports.
    pub fn numerators(&self) -> impl Iterator<Item = &BigInt> {
        self.coeffs.iter().map(|c| c.numer())
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries{self}")
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(rational::to_canonical).collect();
        write!(f, "[{}] + O(z^{})", parts.join(", "), self.order() + 1)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries::new(self.coeffs.iter().map(|a| -a).collect())
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncatedSeries::new(out)
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $m(self, rhs: Self) -> TruncatedSeries {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        rational::serde_rational_vec::serialize(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let coeffs = rational::serde_rational_vec::deserialize(d)?;
        if coeffs.is_empty() {
            return Err(serde::de::Error::custom("empty series"));
        }
        Ok(Self::new(coeffs))
    }
}
