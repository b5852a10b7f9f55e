//! Mirror map and instanton numbers of the quintic threefold.
//!
//! Pipeline: Frobenius periods `ψ_0..ψ_3` → mirror coordinate
//! `q = z exp(σ/ψ_0)` → the combination `G = (5/2)(ψ_1ψ_2 − ψ_0ψ_3)/ψ_0²`
//! rewritten in `q`, with `log z = log q − σ/ψ_0` → `K = (q d/dq)^3 G`, which
//! must be free of `log q` and equals `5 + Σ d³ N_d^virt q^d`.

use num_traits::{One, Signed};
use serde::Serialize;

use crate::picard_fuchs::{self, FrobeniusFamily, PicardFuchsError};
use crate::rational::{self, int, rat, Rational};
use crate::series::{LogSeries, SeriesError, TruncatedSeries};

/// Extra orders computed beyond the requested degree.
pub const GUARD_ORDERS: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MirrorError {
    #[error("family does not have the shape ψ_0 = 1 + O(z), ψ_1 = L ψ_0 + σ")]
    UnexpectedFamily,
    #[error("log q terms survive the triple derivative at degree {0}")]
    LogTermsSurvive(usize),
    #[error("requested degree {dmax} exceeds the valid order {order}")]
    OrderTooSmall { dmax: usize, order: usize },
    #[error("coefficient of degree {0} changed when guard orders were added")]
    GuardInstability(usize),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    PicardFuchs(#[from] PicardFuchsError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MirrorMap {
    /// `q/z`, a unit series.
    pub q_of_z: TruncatedSeries,
    /// `z(q)`, the compositional inverse of `q(z)`.
    pub z_of_q: TruncatedSeries,
    /// `λ = σ/ψ_0`, so that `log q = log z + λ`.
    #[serde(skip)]
    pub log_shift: TruncatedSeries,
}

impl MirrorMap {
    /// `q(z) = z · q_of_z`.
    pub fn q_series(&self) -> TruncatedSeries {
        self.q_of_z.shift(1)
    }

    /// Degrees `d <= dmax` whose coefficient `[z^d] q(z)` is not an integer.
    pub fn non_integral_degrees(&self, dmax: usize) -> Vec<usize> {
        let q = self.q_series();
        (0..=dmax.min(q.order())).filter(|&d| !rational::is_integer(q.coeff(d))).collect()
    }
}

/// Splits `ψ_1 = L ψ_0 + σ` and returns `(ψ_0, σ)`.
fn periods(family: &FrobeniusFamily) -> Result<(TruncatedSeries, TruncatedSeries), MirrorError> {
    let psi0 = family.psi.first().and_then(LogSeries::as_series).ok_or(MirrorError::UnexpectedFamily)?.clone();
    let psi1 = family.psi.get(1).ok_or(MirrorError::UnexpectedFamily)?;
    if !psi0.constant_term().is_one() || psi1.log_degree() != 1 || psi1.part(1) != psi0 {
        return Err(MirrorError::UnexpectedFamily);
    }
    Ok((psi0, psi1.part(0)))
}

pub fn mirror_map(family: &FrobeniusFamily) -> Result<MirrorMap, MirrorError> {
    let (psi0, sigma) = periods(family)?;
    let log_shift = &sigma * &psi0.inverse()?;
    let q_of_z = log_shift.exp()?;
    let z_of_q = q_of_z.shift(1).reversion()?;
    Ok(MirrorMap { q_of_z, z_of_q, log_shift })
}

/// `K(q) = (q d/dq)^3 G` with `G = (5/2)(ψ_1ψ_2 − ψ_0ψ_3)/ψ_0²` rewritten in
/// `q`. The result is returned as a log series so callers can inspect any
/// surviving `log q` parts.
pub fn yukawa_series(family: &FrobeniusFamily, map: &MirrorMap) -> Result<LogSeries, MirrorError> {
    let psi = &family.psi;
    if psi.len() < 4 {
        return Err(MirrorError::UnexpectedFamily);
    }
    let (psi0, _) = periods(family)?;
    let numer = psi[1].mul(&psi[2])?.sub(&psi[0].mul(&psi[3])?);
    let g = numer.mul_series(&(&psi0 * &psi0).inverse()?).scale(&rat(5, 2));
    let g_q = g.shift_log(&-&map.log_shift).compose_parts(&map.z_of_q)?;
    Ok(g_q.theta().theta().theta())
}

/// `N_d^virt = [q^d] K / d³` for `d = 1..=dmax`.
pub fn yukawa_extraction(family: &FrobeniusFamily, map: &MirrorMap, dmax: usize) -> Result<Vec<Rational>, MirrorError> {
    let k = yukawa_series(family, map)?;
    if dmax > k.order() {
        return Err(MirrorError::OrderTooSmall { dmax, order: k.order() });
    }
    if let Some(part) = (1..k.parts().len()).find(|&j| !k.parts()[j].is_zero()) {
        return Err(MirrorError::LogTermsSurvive(part));
    }
    let k = k.part(0);
    Ok((1..=dmax).map(|d| k.coeff(d) / int((d * d * d) as i64)).collect())
}

/// `N_d = N_d^virt − Σ_{k | d, k > 1} N_{d/k} / k³`.
pub fn am_inversion(n_virt: &[Rational]) -> Vec<Rational> {
    let mut n: Vec<Rational> = Vec::with_capacity(n_virt.len());
    for d in 1..=n_virt.len() {
        let mut v = n_virt[d - 1].clone();
        for k in 2..=d {
            if d % k == 0 {
                v -= &n[d / k - 1] / int((k * k * k) as i64);
            }
        }
        n.push(v);
    }
    n
}

/// `N_d^virt = Σ_{k | d} N_{d/k} / k³`.
pub fn am_forward(n: &[Rational]) -> Vec<Rational> {
    (1..=n.len())
        .map(|d| (1..=d).filter(|k| d % k == 0).map(|k| &n[d / k - 1] / int((k * k * k) as i64)).sum())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstantonNumbers {
    #[serde(with = "rational::serde_rational_vec")]
    pub n_virt: Vec<Rational>,
    #[serde(with = "rational::serde_rational_vec")]
    pub n_int: Vec<Rational>,
}

impl InstantonNumbers {
    pub fn from_virtual(n_virt: Vec<Rational>) -> Self {
        let n_int = am_inversion(&n_virt);
        Self { n_virt, n_int }
    }

    pub fn all_positive_integers(&self) -> bool {
        self.n_int.iter().all(|n| rational::is_integer(n) && n.is_positive())
    }
}

/// Full quintic run to degree `dmax`, cross-checked against a run with
/// [`GUARD_ORDERS`] extra orders.
pub fn quintic_instantons(dmax: usize) -> Result<InstantonNumbers, MirrorError> {
    let run = |order: usize| -> Result<Vec<Rational>, MirrorError> {
        let family = picard_fuchs::frobenius_family(&picard_fuchs::quintic_operator(), order)?;
        let map = mirror_map(&family)?;
        yukawa_extraction(&family, &map, dmax)
    };
    let base = run(dmax.max(1))?;
    let guarded = run(dmax.max(1) + GUARD_ORDERS)?;
    if let Some(d) = (0..dmax).find(|&i| base[i] != guarded[i]) {
        return Err(MirrorError::GuardInstability(d + 1));
    }
    Ok(InstantonNumbers::from_virtual(guarded))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ToyModelReport {
    pub order: usize,
    /// `Σ_d q^d / d³` with `q = exp(ψ_1/ψ_0)`, expanded in `z`.
    pub predicted: TruncatedSeries,
    /// `ψ_3 / ψ_0`.
    pub expected: TruncatedSeries,
    pub mismatches: Vec<usize>,
}

impl ToyModelReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Checks `F(ψ_1/ψ_0) = ψ_3/ψ_0` for `F(t) = Σ_d e^{dt}/d³` on any family of
/// the trilogarithm shape.
pub fn toy_model_report(family: &FrobeniusFamily) -> Result<ToyModelReport, MirrorError> {
    let map = mirror_map(family)?;
    let (psi0, _) = periods(family)?;
    let psi3 = family.psi.get(3).and_then(LogSeries::as_series).ok_or(MirrorError::UnexpectedFamily)?;
    let order = family.order();
    let expected = psi3 * &psi0.inverse()?;
    let q = map.q_series();
    let mut predicted = TruncatedSeries::zero(order);
    let mut q_pow = TruncatedSeries::one(order);
    for d in 1..=order {
        q_pow = &q_pow * &q;
        predicted = &predicted + &q_pow.scale(&rat(1, (d * d * d) as i64));
    }
    let mismatches = (0..=order).filter(|&n| predicted.coeff(n) != expected.coeff(n)).collect();
    Ok(ToyModelReport { order, predicted, expected, mismatches })
}

pub fn am_toy_model(order: usize) -> Result<ToyModelReport, MirrorError> {
    let family = picard_fuchs::frobenius_basis(&picard_fuchs::am_operator().operator, order)?;
    toy_model_report(&family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::picard_fuchs::{frobenius_family, quintic_operator};

    #[test]
    fn mirror_map_low_order() {
        let fam = frobenius_family(&quintic_operator(), 6).unwrap();
        let map = mirror_map(&fam).unwrap();
        let q = map.q_series();
        assert_eq!(q.coeffs()[..4], [int(0), int(1), int(770), int(1014275)]);
        assert!(map.non_integral_degrees(6).is_empty());
        let round = q.compose(&map.z_of_q).unwrap();
        assert_eq!(round, TruncatedSeries::variable(6));
    }

    #[test]
    fn first_instantons() {
        let inst = quintic_instantons(3).unwrap();
        assert_eq!(inst.n_int, vec![int(2875), int(609250), int(317206375)]);
        assert_eq!(inst.n_virt[1], rat(4876875, 8));
    }

    #[test]
    fn am_inversion_examples() {
        let v: Vec<Rational> = (1..=6).map(|d| rat(1, d * d * d)).collect();
        assert_eq!(am_inversion(&v), vec![int(1), int(0), int(0), int(0), int(0), int(0)]);
        let w = vec![int(0), int(1), int(0), rat(1, 8)];
        assert_eq!(am_inversion(&w), vec![int(0), int(1), int(0), int(0)]);
    }

    #[test]
    fn toy_model_and_injection() {
        let report = am_toy_model(12).unwrap();
        assert!(report.passed());
        assert_eq!(report.expected.coeff(8), &rat(1, 512));

        let mut fam = picard_fuchs::frobenius_basis(&picard_fuchs::am_operator().operator, 12).unwrap();
        let mut li3 = fam.psi[3].part(0);
        li3.set_coeff(5, li3.coeff(5) + Rational::one());
        fam.psi[3] = LogSeries::from_series(li3);
        assert_eq!(toy_model_report(&fam).unwrap().mismatches, vec![5]);
    }

    #[test]
    fn non_mirror_family_rejected() {
        let fam = FrobeniusFamily { a_coeffs: vec![], psi: vec![LogSeries::zero(3)] };
        assert_eq!(mirror_map(&fam).unwrap_err(), MirrorError::UnexpectedFamily);
    }
}
