use std::collections::BTreeMap;

use num_traits::Zero;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::eisenstein::eisenstein;
use super::HurwitzSeries;
use crate::linalg::{Matrix, Solution};
use crate::rational::{self, Rational};
use crate::series::TruncatedSeries;

/// Held-out coefficients a fit must reproduce before it is accepted.
pub const MIN_VALIDATION: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FitError {
    #[error("series is not a combination of weight-{weight} monomials (first mismatch at q^{degree})")]
    NoSolution { weight: u32, degree: usize },
    #[error("{available} coefficients do not pin down {unknowns} unknowns with {min} left to validate", min = MIN_VALIDATION)]
    UnderDetermined { unknowns: usize, available: usize },
    #[error("weight {0} must be even and non-negative")]
    OddWeight(u32),
}

/// `Σ c_{abc} E_2^a E_4^b E_6^c` with `2a + 4b + 6c = weight`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiModularForm {
    pub weight: u32,
    pub coeffs: BTreeMap<[u32; 3], Rational>,
}

impl QuasiModularForm {
    pub fn q_expansion(&self, order: usize) -> TruncatedSeries {
        let mut acc = TruncatedSeries::zero(order);
        for (m, c) in &self.coeffs {
            acc = &acc + &monomial_expansion(*m, order).scale(c);
        }
        acc
    }

    pub fn monomial_name(m: [u32; 3]) -> String {
        let mut parts = Vec::new();
        for (k, e) in [2, 4, 6].iter().zip(m) {
            match e {
                0 => {}
                1 => parts.push(format!("E{k}")),
                _ => parts.push(format!("E{k}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl Serialize for QuasiModularForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.coeffs.len()))?;
        for (m, c) in self.coeffs.iter().rev() {
            map.serialize_entry(&Self::monomial_name(*m), &rational::to_canonical(c))?;
        }
        map.end()
    }
}

/// Exponents `(a, b, c)` of weight `w`, with higher powers of `E_2` first.
pub fn monomial_basis(weight: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in (0..=weight / 2).rev() {
        for b in (0..=(weight - 2 * a) / 4).rev() {
            let rest = weight - 2 * a - 4 * b;
            if rest.is_multiple_of(6) {
                out.push([a, b, rest / 6]);
            }
        }
    }
    out
}

fn monomial_expansion(m: [u32; 3], order: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::one(order);
    for (k, e) in [2, 4, 6].into_iter().zip(m) {
        acc = &acc * &eisenstein(k, order).expect("supported weight").pow(e);
    }
    acc
}

/// Fits `target` (coefficients of `q^0..q^N`) in the weight-`w` basis.
///
/// The unknowns are determined from the shortest prefix `q^0..q^K` whose
/// rows have full column rank; the remaining coefficients `q^{K+1}..q^N` are
/// then required to match exactly.
pub fn fit_weight(weight: u32, target: &[Rational]) -> Result<QuasiModularForm, FitError> {
    if weight % 2 == 1 {
        return Err(FitError::OddWeight(weight));
    }
    let basis = monomial_basis(weight);
    let order = target.len().saturating_sub(1);
    let expansions: Vec<TruncatedSeries> = basis.iter().map(|&m| monomial_expansion(m, order)).collect();
    let row = |n: usize| -> Vec<Rational> { expansions.iter().map(|e| e.coeff(n).clone()).collect() };
    let under = FitError::UnderDetermined { unknowns: basis.len(), available: target.len() };

    let mut rows = Vec::new();
    let mut prefix = None;
    for n in 0..target.len() {
        rows.push(row(n));
        if Matrix::from_rows(rows.clone()).rank() == basis.len() {
            prefix = Some(n);
            break;
        }
    }
    let k = prefix.ok_or(under.clone())?;
    if target.len() - (k + 1) < MIN_VALIDATION {
        return Err(under);
    }
    let a = Matrix::from_rows(rows);
    let solution = match a.solve(&target[..=k]) {
        Solution::Unique(x) => x,
        Solution::Inconsistent => return Err(FitError::NoSolution { weight, degree: k }),
        Solution::Underdetermined(_) => unreachable!("prefix has full column rank"),
    };
    for (n, t) in target.iter().enumerate().skip(k + 1) {
        let predicted: Rational = row(n).iter().zip(&solution).map(|(a, b)| a * b).sum();
        if &predicted != t {
            return Err(FitError::NoSolution { weight, degree: n });
        }
    }
    let coeffs = basis.into_iter().zip(solution).filter(|(_, c)| !c.is_zero()).collect();
    Ok(QuasiModularForm { weight, coeffs })
}

/// Fits `F_g` in weight `6g − 6`, with the constant term forced to zero.
pub fn quasimodular_fit(f: &HurwitzSeries) -> Result<QuasiModularForm, FitError> {
    let mut target = vec![Rational::zero()];
    target.extend(f.coeffs.iter().cloned());
    fit_weight(f.weight(), &target)
}
