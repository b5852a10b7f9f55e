//! Linear ODEs in `θ = z d/dz` and their Frobenius solutions at `z = 0`.
//!
//! A solution family is produced by the ε-method: the formal series
//! `Σ_n a_n(ε) z^{n+ε}` solves the operator up to the indicial term, and
//! expanding `z^ε = Σ_k ε^k L^k / k!` in powers of ε yields one solution per
//! ε-power, with `L = log z`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{self, int, Rational};
use crate::series::{LogSeries, SeriesError, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PicardFuchsError {
    #[error("indicial polynomial is not a multiple of θ^4")]
    NotMaximallyUnipotent,
    #[error("indicial polynomial has roots the Frobenius builder cannot handle: {0}")]
    UnsupportedIndicial(String),
    #[error("recursion breaks down at n = {0}: leading coefficient vanishes")]
    RecursionBreakdown(usize),
    #[error("operator needs a term with z_power = 0")]
    MissingIndicialPart,
    #[error("truncation order must be at least 1")]
    OrderTooSmall,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// `c_0 + c_1 θ + ... + c_m θ^m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ThetaPolynomial(#[serde(with = "rational::serde_rational_vec")] Vec<Rational>);

impl ThetaPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Rational::zero());
        }
        Self(coeffs)
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `a θ + b`.
    pub fn linear(a: Rational, b: Rational) -> Self {
        Self::new(vec![b, a])
    }

    pub fn theta_power(k: usize) -> Self {
        let mut c = vec![Rational::zero(); k + 1];
        c[k] = Rational::one();
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let get = |v: &[Rational], i: usize| v.get(i).cloned().unwrap_or_else(Rational::zero);
        Self::new((0..n).map(|i| get(&self.0, i) + get(&other.0, i)).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.0.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `P(x + ε)` as an ε-polynomial truncated at `ε^depth`.
    pub fn eval_shifted(&self, x: &Rational, depth: usize) -> EpsPoly {
        let shift = EpsPoly::linear(x.clone(), depth);
        let mut acc = EpsPoly::zero(depth);
        for c in self.0.iter().rev() {
            acc = acc.mul(&shift);
            acc.coeffs[0] += c;
        }
        acc
    }

    /// Multiplicity of `θ = 0` as a root.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.0.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn apply(&self, s: &LogSeries) -> LogSeries {
        let mut acc = LogSeries::zero(s.order());
        for c in self.0.iter().rev() {
            acc = acc.theta().add(&s.scale(c));
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaTerm {
    pub z_power: usize,
    pub theta_poly: ThetaPolynomial,
}

/// `Σ_t z^{p_t} P_t(θ)`. Terms with equal `z_power` are merged.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThetaOperator {
    terms: Vec<ThetaTerm>,
}

impl ThetaOperator {
    pub fn new(terms: Vec<ThetaTerm>) -> Result<Self, PicardFuchsError> {
        let mut merged: std::collections::BTreeMap<usize, ThetaPolynomial> = Default::default();
        for t in terms {
            let slot = merged.entry(t.z_power).or_insert_with(|| ThetaPolynomial::constant(Rational::zero()));
            *slot = slot.add(&t.theta_poly);
        }
        let terms: Vec<ThetaTerm> = merged
            .into_iter()
            .filter(|(_, p)| !p.is_zero())
            .map(|(z_power, theta_poly)| ThetaTerm { z_power, theta_poly })
            .collect();
        if terms.first().map(|t| t.z_power) != Some(0) {
            return Err(PicardFuchsError::MissingIndicialPart);
        }
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[ThetaTerm] {
        &self.terms
    }

    pub fn indicial_polynomial(&self) -> &ThetaPolynomial {
        &self.terms[0].theta_poly
    }

    /// `P_p(θ)`, the coefficient of `z^p`; zero if absent.
    pub fn coefficient(&self, p: usize) -> ThetaPolynomial {
        self.terms
            .iter()
            .find(|t| t.z_power == p)
            .map_or_else(|| ThetaPolynomial::constant(Rational::zero()), |t| t.theta_poly.clone())
    }

    pub fn max_z_power(&self) -> usize {
        self.terms.last().map_or(0, |t| t.z_power)
    }

    pub fn apply(&self, s: &LogSeries) -> LogSeries {
        self.terms.iter().fold(LogSeries::zero(s.order()), |acc, t| {
            let applied = t.theta_poly.apply(s);
            let shifted =
                LogSeries::new(applied.parts().iter().map(|p| p.shift(t.z_power)).collect()).expect("degree preserved");
            acc.add(&shifted)
        })
    }
}

impl<'de> Deserialize<'de> for ThetaOperator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            terms: Vec<ThetaTerm>,
        }
        let raw = Raw::deserialize(d)?;
        Self::new(raw.terms).map_err(serde::de::Error::custom)
    }
}

/// `θ^4 − 5z(5θ+1)(5θ+2)(5θ+3)(5θ+4)`, expanded.
pub fn quintic_operator() -> ThetaOperator {
    let p1 =
        (1..=4).fold(ThetaPolynomial::constant(int(-5)), |acc, k| acc.mul(&ThetaPolynomial::linear(int(5), int(k))));
    ThetaOperator::new(vec![
        ThetaTerm { z_power: 0, theta_poly: ThetaPolynomial::theta_power(4) },
        ThetaTerm { z_power: 1, theta_poly: p1 },
    ])
    .expect("indicial part present")
}

/// The operator `d/dz((1−z)/z · θ³)` rewritten in θ-form.
///
/// With `d/dz = θ/z` and `θ z^{-1} = z^{-1}(θ − 1)`, multiplying by `z^2`
/// gives `(θ − 1)θ³ − zθ⁴`. Its solutions are exactly those of the factored
/// form: `1`, `log z`, `½ log² z` and `Li₃(z)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AmOperator {
    pub operator: ThetaOperator,
    /// Marks that `operator` came from the factored form `d/dz((1−z)/z θ³)`.
    pub factored_origin: bool,
}

pub fn am_operator() -> AmOperator {
    let theta3 = ThetaPolynomial::theta_power(3);
    let indicial = theta3.mul(&ThetaPolynomial::linear(int(1), int(-1)));
    let operator = ThetaOperator::new(vec![
        ThetaTerm { z_power: 0, theta_poly: indicial },
        ThetaTerm { z_power: 1, theta_poly: ThetaPolynomial::theta_power(4).scale(&int(-1)) },
    ])
    .expect("indicial part present");
    AmOperator { operator, factored_origin: true }
}

/// Polynomial in ε truncated at `ε^depth` (so `coeffs.len() == depth`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct EpsPoly {
    #[serde(with = "rational::serde_rational_vec")]
    coeffs: Vec<Rational>,
}

impl EpsPoly {
    pub fn zero(depth: usize) -> Self {
        Self { coeffs: vec![Rational::zero(); depth] }
    }

    pub fn one(depth: usize) -> Self {
        let mut e = Self::zero(depth);
        e.coeffs[0] = Rational::one();
        e
    }

    /// `x + ε`.
    pub fn linear(x: Rational, depth: usize) -> Self {
        let mut e = Self::zero(depth);
        e.coeffs[0] = x;
        if depth > 1 {
            e.coeffs[1] = Rational::one();
        }
        e
    }

    pub fn depth(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &Rational {
        &self.coeffs[j]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let depth = self.depth().min(other.depth());
        let mut out = Self::zero(depth);
        for i in 0..depth {
            for j in 0..depth - i {
                out.coeffs[i + j] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let depth = self.depth().min(other.depth());
        Self { coeffs: (0..depth).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Index of the lowest nonzero coefficient, or `depth` for zero.
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn inverse(&self) -> Option<Self> {
        let series = TruncatedSeries::new(self.coeffs.clone());
        series.inverse().ok().map(|s| Self { coeffs: s.into_coeffs() })
    }

    /// Divides by `ε^k`; the top `k` coefficients become unknown and are
    /// filled with zero. The caller accounts for the lost precision.
    fn unshift(&self, k: usize) -> Self {
        let depth = self.depth();
        Self { coeffs: (0..depth).map(|i| self.coeffs.get(i + k).cloned().unwrap_or_else(Rational::zero)).collect() }
    }

    fn truncate(&self, depth: usize) -> Self {
        Self { coeffs: self.coeffs[..depth].to_vec() }
    }
}

/// Frobenius solutions at `z = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrobeniusFamily {
    /// `a_n(ε)` for `n = 0..=order`, truncated at `ε^m` where `m` is the
    /// multiplicity of the root `θ = 0`.
    pub a_coeffs: Vec<EpsPoly>,
    /// `ψ_0, ψ_1, ...`: first the `m` log-graded solutions from the
    /// ε-expansion, then one solution `z^r(1 + ...)` per simple positive
    /// integer root `r` of the indicial polynomial.
    pub psi: Vec<LogSeries>,
}

impl FrobeniusFamily {
    pub fn order(&self) -> usize {
        self.a_coeffs.len() - 1
    }
}

/// ε-method family for an operator whose indicial polynomial is `c θ^4`.
pub fn frobenius_family(op: &ThetaOperator, order: usize) -> Result<FrobeniusFamily, PicardFuchsError> {
    let ind = op.indicial_polynomial();
    if ind.degree() != 4 || ind.zero_root_multiplicity() != 4 {
        return Err(PicardFuchsError::NotMaximallyUnipotent);
    }
    frobenius_basis(op, order)
}

/// Frobenius basis for an indicial polynomial `θ^m Q(θ)` whose other roots
/// are simple positive integers.
///
/// Integer roots of `Q` make `P_0(n + ε)` divisible by ε at those `n`. The
/// ε-recursion then runs with one extra order of ε per such resonance and
/// divides exactly, failing with `RecursionBreakdown` when the numerator
/// is not divisible (a genuine logarithmic resonance).
pub fn frobenius_basis(op: &ThetaOperator, order: usize) -> Result<FrobeniusFamily, PicardFuchsError> {
    if order < 1 {
        return Err(PicardFuchsError::OrderTooSmall);
    }
    let ind = op.indicial_polynomial().clone();
    let m = ind.zero_root_multiplicity();
    if m == 0 || m > crate::series::MAX_LOG_DEGREE + 1 {
        return Err(PicardFuchsError::UnsupportedIndicial(format!("θ = 0 has multiplicity {m}")));
    }
    let extra_roots = positive_integer_roots(&ind, m)?;

    let probe_depth = ind.degree() + 1;
    let resonance: Vec<usize> = (0..=order)
        .map(|n| if n == 0 { 0 } else { ind.eval_shifted(&int(n as i64), probe_depth).valuation() })
        .collect();
    let depth = m + resonance.iter().sum::<usize>();

    let shifted_coeffs = |n: usize, r: usize, depth: usize| -> Vec<(usize, EpsPoly)> {
        (1..=op.max_z_power().min(n))
            .map(|p| (p, op.coefficient(p).eval_shifted(&int((n - p + r) as i64), depth)))
            .collect()
    };

    let mut a: Vec<EpsPoly> = vec![EpsPoly::one(depth)];
    for n in 1..=order {
        let mut num = EpsPoly::zero(depth);
        for (p, pp) in shifted_coeffs(n, 0, depth) {
            num = num.add(&pp.mul(&a[n - p]).neg());
        }
        let den = ind.eval_shifted(&int(n as i64), depth);
        let v = resonance[n];
        if num.valuation() < v {
            return Err(PicardFuchsError::RecursionBreakdown(n));
        }
        let unit = den.unshift(v).truncate(depth - v);
        let inv = unit.inverse().ok_or(PicardFuchsError::RecursionBreakdown(n))?;
        let q = num.unshift(v).truncate(depth - v).mul(&inv);
        let mut full = EpsPoly::zero(depth);
        full.coeffs[..depth - v].clone_from_slice(&q.coeffs);
        a.push(full);
    }
    let a: Vec<EpsPoly> = a.iter().map(|e| e.truncate(m)).collect();

    let eps_parts: Vec<TruncatedSeries> =
        (0..m).map(|j| TruncatedSeries::from_fn(order, |n| a[n].coeffs[j].clone())).collect();
    let mut psi = Vec::with_capacity(m + extra_roots.len());
    for i in 0..m {
        let parts = (0..=i)
            .map(|k| {
                let inv_fact = Rational::new(1.into(), rational::factorial(k as u64));
                eps_parts[i - k].scale(&inv_fact)
            })
            .collect();
        psi.push(LogSeries::new(parts)?);
    }

    for r in extra_roots {
        let mut b = vec![Rational::one()];
        for n in 1..=order.saturating_sub(r) {
            let mut num = Rational::zero();
            for (p, pp) in shifted_coeffs(n, r, 1) {
                num -= &pp.coeffs[0] * &b[n - p];
            }
            let den = ind.eval(&int((n + r) as i64));
            if den.is_zero() {
                return Err(PicardFuchsError::RecursionBreakdown(n + r));
            }
            b.push(num / den);
        }
        let s = TruncatedSeries::from_fn(order, |k| if k >= r { b[k - r].clone() } else { Rational::zero() });
        psi.push(LogSeries::from_series(s));
    }

    Ok(FrobeniusFamily { a_coeffs: a, psi })
}

/// Roots of `P(θ)/θ^m`: all must be simple positive integers.
fn positive_integer_roots(ind: &ThetaPolynomial, m: usize) -> Result<Vec<usize>, PicardFuchsError> {
    let q = ThetaPolynomial::new(ind.coeffs()[m..].to_vec());
    let deg = q.degree();
    if deg == 0 {
        return Ok(Vec::new());
    }
    // Rational roots of an integer-scaled polynomial are bounded by the
    // Cauchy bound; positive integer candidates are scanned directly.
    let lead = q.coeffs()[deg].clone();
    let bound: Rational = q.coeffs()[..deg]
        .iter()
        .map(|c| num_traits::Signed::abs(&(c / &lead)))
        .fold(Rational::zero(), |acc, c| if c > acc { c } else { acc })
        + Rational::one();
    let limit = num_traits::ToPrimitive::to_i64(&bound.ceil().to_integer()).unwrap_or(i64::MAX).min(1 << 20);
    let mut roots = Vec::new();
    let mut remaining = q.clone();
    for r in 1..=limit {
        if remaining.eval(&int(r)).is_zero() {
            remaining = divide_linear(&remaining, &int(r));
            if remaining.eval(&int(r)).is_zero() {
                return Err(PicardFuchsError::UnsupportedIndicial(format!("repeated root {r}")));
            }
            roots.push(r as usize);
        }
    }
    if remaining.degree() > 0 {
        return Err(PicardFuchsError::UnsupportedIndicial("roots other than 0 and positive integers".into()));
    }
    Ok(roots)
}

/// Synthetic division by `θ − r`, assuming `r` is a root.
fn divide_linear(p: &ThetaPolynomial, r: &Rational) -> ThetaPolynomial {
    let c = p.coeffs();
    let n = c.len() - 1;
    let mut out = vec![Rational::zero(); n];
    let mut carry = Rational::zero();
    for i in (0..n).rev() {
        carry = &c[i + 1] + carry * r;
        out[i] = carry.clone();
    }
    ThetaPolynomial::new(out)
}

/// `op(s)`; zero to the valid order exactly when `s` is a solution.
pub fn verify_annihilation(op: &ThetaOperator, s: &LogSeries) -> LogSeries {
    op.apply(s)
}
