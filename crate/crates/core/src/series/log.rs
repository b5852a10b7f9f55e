use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{SeriesError, TruncatedSeries};
use crate::rational::{self, int, Rational};

/// Highest power of `L = log z` a [`LogSeries`] may carry.
pub const MAX_LOG_DEGREE: usize = 3;

/// `Σ_k f_k(z) L^k` with `L = log z` and `k <= MAX_LOG_DEGREE`.
///
/// All parts share one truncation order. Trailing zero parts are dropped,
/// so `log_degree` is the true degree in `L` (zero for the zero series).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogSeries {
    parts: Vec<TruncatedSeries>,
}

impl LogSeries {
    /// Truncates all parts to their common minimum order.
    pub fn new(parts: Vec<TruncatedSeries>) -> Result<Self, SeriesError> {
        let order = parts.iter().map(TruncatedSeries::order).min().ok_or(SeriesError::NoParts)?;
        let mut parts: Vec<_> = parts.iter().map(|p| p.truncate(order)).collect();
        while parts.len() > 1 && parts.last().is_some_and(TruncatedSeries::is_zero) {
            parts.pop();
        }
        if parts.len() > MAX_LOG_DEGREE + 1 {
            return Err(SeriesError::LogDegreeExceeded(parts.len() - 1));
        }
        Ok(Self { parts })
    }

    pub fn from_series(s: TruncatedSeries) -> Self {
        Self { parts: vec![s] }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_series(TruncatedSeries::zero(order))
    }

    /// `L^k` itself.
    pub fn log_power(k: usize, order: usize) -> Result<Self, SeriesError> {
        let mut parts = vec![TruncatedSeries::zero(order); k + 1];
        parts[k] = TruncatedSeries::one(order);
        Self::new(parts)
    }

    pub fn order(&self) -> usize {
        self.parts[0].order()
    }

    pub fn log_degree(&self) -> usize {
        self.parts.len() - 1
    }

    pub fn parts(&self) -> &[TruncatedSeries] {
        &self.parts
    }

    /// Coefficient of `L^k`; zero above the log degree.
    pub fn part(&self, k: usize) -> TruncatedSeries {
        self.parts.get(k).cloned().unwrap_or_else(|| TruncatedSeries::zero(self.order()))
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(TruncatedSeries::is_zero)
    }

    /// The log-free part, if every `L^k` coefficient with `k >= 1` vanishes.
    pub fn as_series(&self) -> Option<&TruncatedSeries> {
        (self.parts.len() == 1).then(|| &self.parts[0])
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.parts.iter().map(|p| p.truncate(order)).collect()).expect("degree preserved")
    }

    fn combine(&self, other: &Self, f: impl Fn(&TruncatedSeries, &TruncatedSeries) -> TruncatedSeries) -> Self {
        let order = self.order().min(other.order());
        let len = self.parts.len().max(other.parts.len());
        let parts = (0..len).map(|k| f(&self.part(k).truncate(order), &other.part(k).truncate(order))).collect();
        Self::new(parts).expect("degree bounded by inputs")
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        Self { parts: self.parts.iter().map(|p| -p).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.parts.iter().map(|p| p.scale(c)).collect()).expect("degree preserved")
    }

    pub fn mul_series(&self, s: &TruncatedSeries) -> Self {
        Self::new(self.parts.iter().map(|p| p * s).collect()).expect("degree preserved")
    }

    /// Product; fails when the degrees add up past [`MAX_LOG_DEGREE`].
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        let order = self.order().min(other.order());
        let deg = self.log_degree() + other.log_degree();
        let mut parts = vec![TruncatedSeries::zero(order); deg + 1];
        for (i, a) in self.parts.iter().enumerate() {
            for (j, b) in other.parts.iter().enumerate() {
                parts[i + j] = &parts[i + j] + &(a * b);
            }
        }
        Self::new(parts)
    }

    /// `θ = z d/dz` acting as a derivation with `θ L = 1`:
    /// `θ(f L^k) = (θf) L^k + k f L^{k-1}`.
    pub fn theta(&self) -> Self {
        let parts = (0..self.parts.len())
            .map(|k| {
                let mut p = self.parts[k].theta();
                if let Some(next) = self.parts.get(k + 1) {
                    p = &p + &next.scale(&int(k as i64 + 1));
                }
                p
            })
            .collect();
        Self::new(parts).expect("degree does not grow")
    }

    /// Substitutes `L -> L + shift(z)`, expanding each `(L + shift)^k`
    /// binomially.
    pub fn shift_log(&self, shift: &TruncatedSeries) -> Self {
        let order = self.order().min(shift.order());
        let mut parts = vec![TruncatedSeries::zero(order); self.parts.len()];
        for (k, f) in self.parts.iter().enumerate() {
            // f * (L + s)^k = Σ_j C(k, j) f s^{k-j} L^j
            let mut s_pow = TruncatedSeries::one(order);
            for j in (0..=k).rev() {
                let c = crate::rational::big(crate::rational::binomial(k as u64, j as u64));
                parts[j] = &parts[j] + &(f * &s_pow).scale(&c);
                s_pow = &s_pow * shift;
            }
        }
        Self::new(parts).expect("degree does not grow")
    }

    /// Composes every part with `inner`, which must have zero constant term.
    /// The `L` symbol itself is left untouched.
    pub fn compose_parts(&self, inner: &TruncatedSeries) -> Result<Self, SeriesError> {
        let parts = self.parts.iter().map(|p| p.compose(inner)).collect::<Result<Vec<_>, _>>()?;
        Self::new(parts)
    }

    /// Coefficient of `z^n L^k`.
    pub fn coeff(&self, k: usize, n: usize) -> Rational {
        self.parts.get(k).map_or_else(Rational::zero, |p| p.coeff(n).clone())
    }

    /// Log-free constant `c`, as a log series of the given order.
    pub fn constant(c: Rational, order: usize) -> Self {
        Self::from_series(TruncatedSeries::constant(c, order))
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }
}

impl Serialize for LogSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LogSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let parts = Vec::<TruncatedSeries>::deserialize(d)?;
        Self::new(parts).map_err(serde::de::Error::custom)
    }
}

impl std::fmt::Display for LogSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let coeffs: Vec<String> = p.coeffs().iter().map(rational::to_canonical).collect();
            write!(f, "L^{k}·[{}]", coeffs.join(", "))?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}
