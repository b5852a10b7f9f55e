//! Simple branched covers of an elliptic curve.
//!
//! For a degree-`d` cover with `b` simple branch points the monodromy is a
//! tuple `(α, β, τ_1, ..., τ_b)` in `S_d` with `[α, β] τ_1 ⋯ τ_b = 1`, each
//! `τ_i` a transposition. Counting tuples and dividing by `d!` weights each
//! cover by `1/|Aut|`; by Burnside this equals `Σ_{|λ|=d} f_2(λ)^b`, where
//! `f_2` is the central character of the class of transpositions. Connected
//! covers come from the logarithm of the generating function, and their
//! genus-`g` generating series `F_g` (with `b = 2g − 2`) is compared against
//! polynomials in the Eisenstein series `E_2, E_4, E_6`.

mod bruteforce;
mod eisenstein;
mod partition;
mod quasimodular;

pub use bruteforce::{covers_bruteforce, tuple_count, Connectivity, BRUTEFORCE_BUDGET};
pub use eisenstein::{eisenstein, EisensteinError};
pub use partition::{central_character_f2, partitions, Partition};
pub use quasimodular::{fit_weight, quasimodular_fit, FitError, QuasiModularForm};

use num_traits::Zero;
use serde::Serialize;

use crate::rational::{self, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HurwitzError {
    #[error("enumeration of {tuples} tuples exceeds the budget of {budget}")]
    BudgetExceeded { tuples: u128, budget: u128 },
    #[error("degree must be at least 1")]
    DegreeZero,
    #[error("genus must be at least 2, got {0}")]
    GenusTooSmall(u32),
}

/// `Σ_{|λ|=d} f_2(λ)^b`, the possibly disconnected count.
pub fn covers_disconnected_weighted(d: u32, b: u32) -> Rational {
    partitions(d)
        .iter()
        .map(|p| {
            let f = central_character_f2(p);
            (0..b).fold(Rational::from_integer(1.into()), |acc, _| acc * &f)
        })
        .sum()
}

/// `F_g = Σ_{d≥1} (connected count) q^d` for `d = 1..=dmax`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HurwitzSeries {
    pub genus: u32,
    /// `coeffs[d - 1]` multiplies `q^d`.
    #[serde(with = "rational::serde_rational_vec")]
    pub coeffs: Vec<Rational>,
}

impl HurwitzSeries {
    pub fn dmax(&self) -> usize {
        self.coeffs.len()
    }

    pub fn weight(&self) -> u32 {
        6 * self.genus - 6
    }
}

/// Polynomials in `u` truncated above `u^b`.
type UPoly = Vec<Rational>;

fn upoly_mul(a: &UPoly, b: &UPoly) -> UPoly {
    let n = a.len().min(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Connected counts with `b` labelled branch points for `d = 1..=dmax`:
/// `b!` times the `u^b` coefficient of `log Σ_λ q^{|λ|} e^{u f_2(λ)}`.
pub fn connected_counts(b: u32, dmax: u32) -> Vec<Rational> {
    let len = b as usize + 1;
    let factorials: Vec<Rational> = (0..len).map(|j| rational::big(rational::factorial(j as u64))).collect();
    let z: Vec<UPoly> = (0..=dmax)
        .map(|n| {
            let mut p = vec![Rational::zero(); len];
            for part in partitions(n) {
                let f = central_character_f2(&part);
                let mut pow = Rational::from_integer(1.into());
                for (j, slot) in p.iter_mut().enumerate() {
                    *slot += &pow / &factorials[j];
                    pow *= &f;
                }
            }
            p
        })
        .collect();
    // n c_n = n Z_n − Σ_{k=1}^{n−1} k c_k Z_{n−k}
    let mut c: Vec<UPoly> = vec![vec![Rational::zero(); len]];
    for n in 1..=dmax as usize {
        let mut acc: UPoly = z[n].iter().map(|x| x * int(n as i64)).collect();
        for k in 1..n {
            let prod = upoly_mul(&c[k], &z[n - k]);
            for (a, p) in acc.iter_mut().zip(prod) {
                *a -= p * int(k as i64);
            }
        }
        c.push(acc.into_iter().map(|x| x / int(n as i64)).collect());
    }
    c[1..].iter().map(|p| &p[b as usize] * &factorials[b as usize]).collect()
}

pub fn connected_series(g: u32, dmax: u32) -> Result<HurwitzSeries, HurwitzError> {
    if g < 2 {
        return Err(HurwitzError::GenusTooSmall(g));
    }
    Ok(HurwitzSeries { genus: g, coeffs: connected_counts(2 * g - 2, dmax) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn character_formula_small() {
        assert_eq!(covers_disconnected_weighted(1, 3), int(0));
        assert_eq!(covers_disconnected_weighted(2, 2), int(2));
        assert_eq!(covers_disconnected_weighted(1, 0), int(1));
        // p(d) covers when there are no branch points.
        assert_eq!(covers_disconnected_weighted(5, 0), int(7));
    }

    #[test]
    fn genus_two_series() {
        let f2 = connected_series(2, 8).unwrap();
        let expected = [0, 2, 16, 60, 160, 360, 672, 1240];
        assert_eq!(f2.coeffs, expected.iter().map(|&x| int(x)).collect::<Vec<_>>());
        assert_eq!(connected_series(1, 3).unwrap_err(), HurwitzError::GenusTooSmall(1));
    }
}
