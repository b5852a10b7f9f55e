//! `Σ_{n∈Z} exp(−(an + b)²)` with a certified truncation bound.

use std::f64::consts::PI;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThetaSum {
    pub a: f64,
    pub b: f64,
}

impl ThetaSum {
    /// `a` must be nonzero; the sign of `a` is irrelevant.
    pub fn new(a: f64, b: f64) -> Self {
        assert!(a.is_finite() && a != 0.0 && b.is_finite(), "theta sum needs finite a ≠ 0 and b");
        Self { a: a.abs(), b }
    }

    /// `b` reduced into `[−a/2, a/2]`; the sum only depends on this.
    pub fn reduced_offset(&self) -> f64 {
        let r = self.b.rem_euclid(self.a);
        if r > self.a / 2.0 {
            r - self.a
        } else {
            r
        }
    }
}

/// Value with an absolute error bound covering truncation and rounding.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThetaValue {
    pub value: f64,
    pub bound: f64,
    pub terms: usize,
}

/// Terms beyond which the Gaussian tail is summed by the geometric bound
/// `2 e^{−x²} / (1 − e^{−2 step x})`, `x` the first omitted distance.
fn tail(step: f64, first: f64) -> f64 {
    2.0 * (-first * first).exp() / (1.0 - (-2.0 * step * first).exp())
}

/// Uses the direct sum for `a ≥ √π` and the Poisson dual
/// `(√π/a) Σ_k exp(−π²k²/a²) cos(2πkb/a)` below, so the number of terms
/// stays `O(√log(1/tol))` for every `a`.
pub fn theta_sum(t: ThetaSum, tol: f64) -> ThetaValue {
    assert!(tol > 0.0, "tolerance must be positive");
    let b = t.reduced_offset();
    let (value, truncation, terms) = if t.a >= PI.sqrt() { direct(t.a, b, tol) } else { dual(t.a, b, tol) };
    let rounding = 4.0 * f64::EPSILON * terms as f64 * value.abs().max(1.0);
    ThetaValue { value, bound: truncation + rounding, terms }
}

fn direct(a: f64, b: f64, tol: f64) -> (f64, f64, usize) {
    let mut n = 0u64;
    while tail(a, a * (n as f64 + 0.5)) >= tol {
        n += 1;
    }
    let bound = tail(a, a * (n as f64 + 0.5));
    let mut sum = 0.0;
    for k in (1..=n).rev() {
        let k = k as f64;
        sum += (-(a * k + b).powi(2)).exp() + (-(-a * k + b).powi(2)).exp();
    }
    sum += (-b * b).exp();
    (sum, bound, 2 * n as usize + 1)
}

fn dual(a: f64, b: f64, tol: f64) -> (f64, f64, usize) {
    let c = PI / a;
    let scale = PI.sqrt() / a;
    let mut k = 0u64;
    while scale * tail(c, c * (k as f64 + 1.0)) >= tol {
        k += 1;
    }
    let bound = scale * tail(c, c * (k as f64 + 1.0));
    let mut sum = 0.0;
    for j in (1..=k).rev() {
        let j = j as f64;
        sum += 2.0 * (-(c * j).powi(2)).exp() * (2.0 * PI * j * b / a).cos();
    }
    sum += 1.0;
    (scale * sum, bound, 2 * k as usize + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(a: f64, b: f64) -> f64 {
        (-400..=400).map(|n| (-(a * n as f64 + b).powi(2)).exp()).sum()
    }

    #[test]
    fn matches_long_sum() {
        for &(a, b) in &[(0.3, 0.1), (1.0, 0.0), (1.7, 0.4), (2.5, -3.1), (0.05, 0.7)] {
            let v = theta_sum(ThetaSum::new(a, b), 1e-13);
            assert!((v.value - brute(a, b)).abs() <= v.bound + 1e-12, "{a} {b}");
        }
    }

    #[test]
    fn invariances() {
        for &(a, b) in &[(0.4, 0.13), (1.3, 0.2), (3.0, 1.1)] {
            let base = theta_sum(ThetaSum::new(a, b), 1e-12);
            for other in [ThetaSum::new(a, b + a), ThetaSum::new(a, -b), ThetaSum::new(-a, b)] {
                let v = theta_sum(other, 1e-12);
                assert!((v.value - base.value).abs() <= v.bound + base.bound);
            }
            assert!(theta_sum(ThetaSum::new(a, 0.0), 1e-12).value >= 1.0);
        }
    }

    #[test]
    fn bound_is_honest() {
        for &(a, b) in &[(0.2, 0.05), (1.0, 0.3), (2.0, 0.9)] {
            let coarse = theta_sum(ThetaSum::new(a, b), 1e-6);
            let fine = theta_sum(ThetaSum::new(a, b), 1e-7);
            assert!((coarse.value - fine.value).abs() <= coarse.bound);
        }
    }

    #[test]
    #[should_panic]
    fn zero_step_rejected() {
        ThetaSum::new(0.0, 1.0);
    }
}
