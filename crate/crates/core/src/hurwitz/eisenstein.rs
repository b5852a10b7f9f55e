use num_bigint::BigInt;

use crate::rational::{big, rat, Rational};
use crate::series::TruncatedSeries;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EisensteinError {
    #[error("weight {0} is not one of 2, 4, 6")]
    UnsupportedWeight(u32),
}

fn bernoulli(k: u32) -> Option<Rational> {
    match k {
        2 => Some(rat(1, 6)),
        4 => Some(rat(-1, 30)),
        6 => Some(rat(1, 42)),
        _ => None,
    }
}

fn divisor_power_sum(n: u64, power: u32) -> BigInt {
    (1..=n).filter(|a| n.is_multiple_of(*a)).map(|a| BigInt::from(a).pow(power)).sum()
}

/// `E_k = 1 − (2k/B_k) Σ_{n≥1} σ_{k−1}(n) q^n`.
pub fn eisenstein(k: u32, order: usize) -> Result<TruncatedSeries, EisensteinError> {
    let b = bernoulli(k).ok_or(EisensteinError::UnsupportedWeight(k))?;
    let factor = Rational::from_integer((2 * k).into()) / b;
    Ok(TruncatedSeries::from_fn(order, |n| {
        if n == 0 {
            Rational::from_integer(1.into())
        } else {
            -(&factor * big(divisor_power_sum(n as u64, k - 1)))
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_coefficients() {
        assert_eq!(eisenstein(2, 2).unwrap(), TruncatedSeries::from_ints(&[1, -24, -72]));
        assert_eq!(eisenstein(4, 2).unwrap(), TruncatedSeries::from_ints(&[1, 240, 2160]));
        assert_eq!(eisenstein(6, 1).unwrap(), TruncatedSeries::from_ints(&[1, -504]));
        assert_eq!(eisenstein(8, 1), Err(EisensteinError::UnsupportedWeight(8)));
    }

    #[test]
    fn e4_squared_is_e8() {
        // dim M_8 = 1, so E_4² = 1 + 480 Σ σ_7(n) q^n.
        let e4 = eisenstein(4, 6).unwrap();
        let sq = &e4 * &e4;
        for n in 1..=6u64 {
            assert_eq!(sq.coeff(n as usize), &big(divisor_power_sum(n, 7) * 480));
        }
    }
}
