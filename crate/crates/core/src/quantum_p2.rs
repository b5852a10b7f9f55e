//! Quantum cohomology of the projective plane and the WDVV equation.
//!
//! Coordinates `x_0, x_1, x_2` are dual to the classes `1, H, H²`. The
//! genus-zero potential is
//!
//! `Φ = ½(x_0² x_2 + x_0 x_1²) + Σ_{d≥1} N_d q_1^d x_2^{3d−1}/(3d−1)!`
//!
//! with `q_1 = e^{x_1}` kept as a formal variable truncated at a maximal
//! degree. The exponent `3d − 1` is a dimension count: degree-`d` rational
//! curves with `n` marked points move in a family of dimension `3d − 1 + n`,
//! and passing through `n` points imposes `2n` conditions, so only `n = 3d − 1`
//! contributes a number.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::rational::{self, big, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuantumError {
    #[error("requested q-degree {requested} exceeds the potential's truncation {available}")]
    TruncationExceeded { requested: u32, available: u32 },
    #[error("associativity does not determine N_{0}")]
    NotDetermined(u32),
    #[error("associativity residual is nonzero at degree {0} for every choice of N_{0}")]
    Inconsistent(u32),
}

/// `x_0^a x_1^b x_2^c q_1^d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Monomial {
    pub x: [u32; 3],
    pub q: u32,
}

/// Finite sums of [`Monomial`]s with exact coefficients, truncated above
/// `q_1^{max_q}`. Differentiation in `x_1` sees `q_1 = e^{x_1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpPoly {
    terms: BTreeMap<Monomial, Rational>,
    max_q: u32,
}

impl ExpPoly {
    pub fn zero(max_q: u32) -> Self {
        Self { terms: BTreeMap::new(), max_q }
    }

    pub fn monomial(m: Monomial, c: Rational, max_q: u32) -> Self {
        let mut p = Self::zero(max_q);
        p.add_term(m, c);
        p
    }

    pub fn constant(c: Rational, max_q: u32) -> Self {
        Self::monomial(Monomial { x: [0; 3], q: 0 }, c, max_q)
    }

    pub fn max_q(&self) -> u32 {
        self.max_q
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if m.q > self.max_q || c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Self { terms: self.terms.clone(), max_q: self.max_q.min(other.max_q) };
        out.terms.retain(|m, _| m.q <= out.max_q);
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.max_q);
        for (m, a) in &self.terms {
            out.add_term(*m, a * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.max_q.min(other.max_q));
        for (ma, a) in &self.terms {
            for (mb, b) in &other.terms {
                let m = Monomial { x: [ma.x[0] + mb.x[0], ma.x[1] + mb.x[1], ma.x[2] + mb.x[2]], q: ma.q + mb.q };
                out.add_term(m, a * b);
            }
        }
        out
    }

    /// `∂/∂x_var`.
    pub fn partial(&self, var: usize) -> Self {
        let mut out = Self::zero(self.max_q);
        for (m, c) in &self.terms {
            if m.x[var] > 0 {
                let mut n = *m;
                n.x[var] -= 1;
                out.add_term(n, c * int(m.x[var] as i64));
            }
            if var == 1 && m.q > 0 {
                out.add_term(*m, c * int(m.q as i64));
            }
        }
        out
    }

    /// Part of exact `q_1`-degree `d`.
    pub fn q_part(&self, d: u32) -> Self {
        Self {
            terms: self.terms.iter().filter(|(m, _)| m.q == d).map(|(m, c)| (*m, c.clone())).collect(),
            max_q: self.max_q,
        }
    }

    /// Substitutes rational values for `x_0, x_1, x_2`, keeping `q_1` formal;
    /// returns the coefficients of `q_1^0..q_1^{max_q}`.
    pub fn at(&self, point: &[Rational; 3]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.max_q as usize + 1];
        for (m, c) in &self.terms {
            let v = (0..3).fold(c.clone(), |acc, i| acc * pow(&point[i], m.x[i]));
            out[m.q as usize] += v;
        }
        out
    }
}

fn pow(x: &Rational, e: u32) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * x)
}

impl std::fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("{}*x0^{}*x1^{}*x2^{}*q1^{}", rational::to_canonical(c), m.x[0], m.x[1], m.x[2], m.q))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Poincaré pairing in the basis `1, H, H²`: `g_{ij} = 1` iff `i + j = 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingMatrix {
    pub g: [[Rational; 3]; 3],
    pub g_inv: [[Rational; 3]; 3],
}

impl PairingMatrix {
    pub fn plane() -> Self {
        let g: [[Rational; 3]; 3] = std::array::from_fn(|i| {
            std::array::from_fn(|j| if i + j == 2 { Rational::one() } else { Rational::zero() })
        });
        Self { g_inv: g.clone(), g }
    }
}

/// Classical cubic plus the quantum corrections `N_1..N_D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanePotential {
    /// `counts[d - 1] = N_d`.
    pub counts: Vec<Rational>,
}

impl PlanePotential {
    pub fn new(counts: Vec<Rational>) -> Self {
        Self { counts }
    }

    pub fn classical(truncation: usize) -> Self {
        Self { counts: vec![Rational::zero(); truncation] }
    }

    pub fn truncation(&self) -> u32 {
        self.counts.len() as u32
    }

    pub fn to_exp_poly(&self) -> ExpPoly {
        let max_q = self.truncation();
        let half = rational::rat(1, 2);
        let mut phi = ExpPoly::monomial(Monomial { x: [2, 0, 1], q: 0 }, half.clone(), max_q);
        phi = phi.add(&ExpPoly::monomial(Monomial { x: [1, 2, 0], q: 0 }, half, max_q));
        for (i, n) in self.counts.iter().enumerate() {
            let d = i as u32 + 1;
            let e = 3 * d - 1;
            let c = n / big(rational::factorial(e as u64));
            phi = phi.add(&ExpPoly::monomial(Monomial { x: [0, 0, e], q: d }, c, max_q));
        }
        phi
    }

    /// All third partials `Φ_{abc}`, indexed symmetrically.
    pub fn third_derivatives(&self) -> [[[ExpPoly; 3]; 3]; 3] {
        let phi = self.to_exp_poly();
        let first: [ExpPoly; 3] = std::array::from_fn(|a| phi.partial(a));
        std::array::from_fn(|a| std::array::from_fn(|b| std::array::from_fn(|c| first[a].partial(b).partial(c))))
    }
}

/// `A_{ij}^k = Σ_{k'} g^{kk'} Φ_{ijk'}`, the quantum product
/// `x_i ∘ x_j = Σ_k A_{ij}^k x_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    pub a: [[[ExpPoly; 3]; 3]; 3],
}

impl StructureConstants {
    /// Values at a point, `q_1` kept formal.
    pub fn at(&self, point: &[Rational; 3]) -> [[[Vec<Rational>; 3]; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|j| std::array::from_fn(|k| self.a[i][j][k].at(point))))
    }
}

pub fn structure_constants(pot: &PlanePotential, degree: u32) -> Result<StructureConstants, QuantumError> {
    if degree > pot.truncation() {
        return Err(QuantumError::TruncationExceeded { requested: degree, available: pot.truncation() });
    }
    let pot = PlanePotential::new(pot.counts[..degree as usize].to_vec());
    let phi3 = pot.third_derivatives();
    let g = PairingMatrix::plane();
    let a = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            std::array::from_fn(|k| {
                (0..3).fold(ExpPoly::zero(degree), |acc, kk| acc.add(&phi3[i][j][kk].scale(&g.g_inv[k][kk])))
            })
        })
    });
    Ok(StructureConstants { a })
}

/// `Σ Φ_{ijm} g^{mm'} Φ_{m'kl} − Σ Φ_{jkm} g^{mm'} Φ_{m'il}`, i.e.
/// `(x_i∘x_j)∘x_k` against `x_i∘(x_j∘x_k)` paired with `x_l`.
pub fn wdvv_residual(pot: &PlanePotential, i: usize, j: usize, k: usize, l: usize) -> ExpPoly {
    residual_from(&pot.third_derivatives(), i, j, k, l)
}

fn residual_from(phi3: &[[[ExpPoly; 3]; 3]; 3], i: usize, j: usize, k: usize, l: usize) -> ExpPoly {
    let g = PairingMatrix::plane();
    let max_q = phi3[0][0][0].max_q();
    let mut out = ExpPoly::zero(max_q);
    for m in 0..3 {
        for mm in 0..3 {
            let gm = &g.g_inv[m][mm];
            if gm.is_zero() {
                continue;
            }
            let lhs = phi3[i][j][m].mul(&phi3[mm][k][l]);
            let rhs = phi3[j][k][m].mul(&phi3[mm][i][l]);
            out = out.add(&lhs.sub(&rhs).scale(gm));
        }
    }
    out
}

/// Residuals for all 81 index choices, keyed by `(i, j, k, l)`; only nonzero
/// entries are kept.
pub fn all_wdvv_residuals(pot: &PlanePotential) -> BTreeMap<[usize; 4], ExpPoly> {
    let phi3 = pot.third_derivatives();
    let mut out = BTreeMap::new();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    let r = residual_from(&phi3, i, j, k, l);
                    if !r.is_zero() {
                        out.insert([i, j, k, l], r);
                    }
                }
            }
        }
    }
    out
}

/// `N_d` for `d = 1..=dmax` from the closed recursion
/// `N_d = Σ_{d_1+d_2=d} N_{d_1} N_{d_2} [d_1²d_2² C(3d−4, 3d_1−2) − d_1³d_2 C(3d−4, 3d_1−1)]`.
pub fn plane_curve_recursion(dmax: usize) -> Vec<BigInt> {
    let mut n: Vec<BigInt> = Vec::with_capacity(dmax);
    for d in 1..=dmax as u64 {
        if d == 1 {
            n.push(BigInt::one());
            continue;
        }
        let mut acc = BigInt::zero();
        for d1 in 1..d {
            let d2 = d - d1;
            let term = BigInt::from(d1 * d1 * d2 * d2) * rational::binomial(3 * d - 4, 3 * d1 - 2)
                - BigInt::from(d1 * d1 * d1 * d2) * rational::binomial(3 * d - 4, 3 * d1 - 1);
            acc += &n[d1 as usize - 1] * &n[d2 as usize - 1] * term;
        }
        n.push(acc);
    }
    n
}

/// Determines `N_2..N_dmax` from `N_1 = 1` by requiring every WDVV residual
/// to vanish degree by degree, without using the closed recursion. At each
/// degree the residual is affine in the new unknown.
pub fn counts_from_associativity(dmax: usize) -> Result<Vec<Rational>, QuantumError> {
    let mut counts = vec![Rational::one()];
    for d in 2..=dmax as u32 {
        let mut trial = counts.clone();
        trial.push(Rational::zero());
        let r0 = degree_residuals(&trial, d);
        trial[d as usize - 1] = Rational::one();
        let r1 = degree_residuals(&trial, d);
        let mut solution: Option<Rational> = None;
        for (key, poly0) in &r0 {
            let poly1 = &r1[key];
            let monomials: std::collections::BTreeSet<Monomial> =
                poly0.terms().chain(poly1.terms()).map(|(m, _)| *m).collect();
            for m in &monomials {
                let a = poly0.coeff(m);
                let slope = poly1.coeff(m) - &a;
                if !slope.is_zero() {
                    solution = Some(-a / slope);
                    break;
                }
            }
            if solution.is_some() {
                break;
            }
        }
        let n_d = solution.ok_or(QuantumError::NotDetermined(d))?;
        trial[d as usize - 1] = n_d.clone();
        if degree_residuals(&trial, d).values().any(|p| !p.is_zero()) {
            return Err(QuantumError::Inconsistent(d));
        }
        counts.push(n_d);
    }
    counts.truncate(dmax);
    Ok(counts)
}

/// Degree-`d` parts of all 81 residuals.
fn degree_residuals(counts: &[Rational], d: u32) -> BTreeMap<[usize; 4], ExpPoly> {
    let pot = PlanePotential::new(counts.to_vec());
    let phi3 = pot.third_derivatives();
    let mut out = BTreeMap::new();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    out.insert([i, j, k, l], residual_from(&phi3, i, j, k, l).q_part(d));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn recursion_values() {
        let n: Vec<i64> = plane_curve_recursion(6).iter().map(|b| b.try_into().unwrap()).collect();
        assert_eq!(n, vec![1, 1, 12, 620, 87304, 26312976]);
    }

    #[test]
    fn classical_product() {
        let sc = structure_constants(&PlanePotential::classical(2), 2).unwrap();
        // x_1 ∘ x_1 = x_2
        assert!(sc.a[1][1][2].add(&ExpPoly::constant(int(-1), 2)).is_zero());
        for j in 0..3 {
            for k in 0..3 {
                let expected = if j == k { 1 } else { 0 };
                assert!(sc.a[0][j][k].sub(&ExpPoly::constant(int(expected), 2)).is_zero());
            }
        }
    }

    #[test]
    fn line_correction() {
        let sc = structure_constants(&PlanePotential::new(ints(&[1])), 1).unwrap();
        let origin_x2 = [int(0), int(0), int(1)];
        // Φ_{122} picks up N_1 q_1 x_2²/2 differentiated three times.
        let vals = sc.at(&origin_x2);
        assert_eq!(vals[1][2][0][1], int(1));
    }

    #[test]
    fn residual_examples() {
        assert!(all_wdvv_residuals(&PlanePotential::classical(3)).is_empty());
        assert!(wdvv_residual(&PlanePotential::new(ints(&[1, 1, 12])), 1, 1, 2, 2).is_zero());
        let bad = wdvv_residual(&PlanePotential::new(ints(&[1, 1, 13])), 1, 1, 2, 2);
        assert!(!bad.q_part(3).is_zero());
        assert!(bad.q_part(2).is_zero());
    }

    #[test]
    fn associativity_determines_counts() {
        assert_eq!(counts_from_associativity(4).unwrap(), ints(&[1, 1, 12, 620]));
    }

    #[test]
    fn truncation_guard() {
        let err = structure_constants(&PlanePotential::classical(2), 3).unwrap_err();
        assert_eq!(err, QuantumError::TruncationExceeded { requested: 3, available: 2 });
    }
}
