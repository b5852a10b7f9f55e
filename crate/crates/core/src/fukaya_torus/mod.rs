//! Products of intersection points of straight lines on the flat torus
//! `R²/Z²`.
//!
//! A geodesic with primitive direction `w = (p, q)` and offset `c` is the
//! image of the lines `ℓ(x) = p·x₂ − q·x₁ ∈ c + Z`. For three geodesics the
//! triangles with sides on lifts are cut out by `ℓ_i = s_i`; their area is
//! `Δ² / (2|D₁₂D₂₃D₃₁|)` with `Δ = s₁D₂₃ + s₂D₃₁ + s₃D₁₂` and
//! `D_ij = det(w_i, w_j)`. With the first corner pinned to a fixed lift the
//! admissible lifts of the third line form an arithmetic progression, so each
//! structure constant of `m₂` is a Gaussian theta sum.

mod theta;

pub use theta::{theta_sum, ThetaSum, ThetaValue};

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::rational::{self, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FukayaError {
    #[error("slope ({0}, {1}) is not a primitive vector")]
    InvalidSlope(i64, i64),
    #[error("geodesics {0} and {1} have parallel slopes")]
    NotTransverse(usize, usize),
    #[error("area scale must be positive and finite")]
    InvalidArea,
    #[error("tolerance must be positive")]
    InvalidTolerance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Geodesic {
    slope: (i64, i64),
    #[serde(with = "rational::serde_rational")]
    offset: Rational,
    lift_index: i64,
}

impl Geodesic {
    /// The offset is reduced into `[0, 1)`.
    pub fn new(slope: (i64, i64), offset: Rational, lift_index: i64) -> Result<Self, FukayaError> {
        let (p, q) = slope;
        if p.gcd(&q) != 1 {
            return Err(FukayaError::InvalidSlope(p, q));
        }
        let offset = &offset - offset.floor();
        Ok(Self { slope, offset, lift_index })
    }

    pub fn slope(&self) -> (i64, i64) {
        self.slope
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn lift_index(&self) -> i64 {
        self.lift_index
    }

    /// `ℓ(x) = p·x₂ − q·x₁`.
    fn level(&self, x: &Point) -> Rational {
        int(self.slope.0) * &x[1] - int(self.slope.1) * &x[0]
    }

    /// Graded lift of the direction: its angle in units of `π`.
    pub fn phase(&self) -> f64 {
        (self.slope.1 as f64).atan2(self.slope.0 as f64) / PI + self.lift_index as f64
    }
}

impl fmt::Display for Geodesic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}) + {}", self.slope.0, self.slope.1, rational::to_canonical(&self.offset))
    }
}

pub type Point = [Rational; 2];

fn det(a: (i64, i64), b: (i64, i64)) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

/// Maslov index of every point of `L₁ ∩ L₂`; all points share it because
/// the angle between the lines is constant. `μ(L₁, L₂) + μ(L₂, L₁) = 1`.
pub fn maslov_index(l1: &Geodesic, l2: &Geodesic) -> i64 {
    (l2.phase() - l1.phase()).floor() as i64 + 1
}

/// Basis of `Hom(L₁, L₂)`: intersection points with coordinates in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HomBasis {
    #[serde(serialize_with = "serialize_points")]
    pub points: Vec<Point>,
    pub gradings: Vec<i64>,
    /// Rank of a local system at each point; `None` means trivial rank one.
    pub multiplicities: Option<Vec<u32>>,
}

fn serialize_points<S: serde::Serializer>(points: &[Point], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(points.len()))?;
    for p in points {
        seq.serialize_element(&[rational::to_canonical(&p[0]), rational::to_canonical(&p[1])])?;
    }
    seq.end()
}

impl HomBasis {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn reduce(x: &Point) -> Point {
    [&x[0] - x[0].floor(), &x[1] - x[1].floor()]
}

/// Solves `ℓ₁(x) = s₁`, `ℓ₂(x) = s₂`.
fn meet(l1: &Geodesic, s1: &Rational, l2: &Geodesic, s2: &Rational) -> Point {
    let (p1, q1) = l1.slope;
    let (p2, q2) = l2.slope;
    // Rows (−q_i, p_i); determinant D₁₂.
    let d = int(det(l1.slope, l2.slope));
    let x0 = (int(p2) * s1 - int(p1) * s2) / &d;
    let x1 = (int(q2) * s1 - int(q1) * s2) / &d;
    [x0, x1]
}

pub fn intersection_basis(l1: &Geodesic, l2: &Geodesic) -> Result<HomBasis, FukayaError> {
    let d = det(l1.slope, l2.slope);
    if d == 0 {
        return Err(FukayaError::NotTransverse(1, 2));
    }
    let n = d.abs();
    let mut points: Vec<Point> = Vec::with_capacity(n as usize);
    for k1 in 0..n {
        for k2 in 0..n {
            let x = reduce(&meet(l1, &(&l1.offset + int(k1)), l2, &(&l2.offset + int(k2))));
            if !points.contains(&x) {
                points.push(x);
            }
        }
    }
    points.sort();
    let grading = maslov_index(l1, l2);
    Ok(HomBasis { gradings: vec![grading; points.len()], points, multiplicities: None })
}

/// Sign attached to the triangles with corners `L₁∩L₂ → L₂∩L₃ → L₁∩L₃`.
///
/// All such triangles are related by translations and point reflections, so
/// they share one orientation. They count, with sign `+1`, when the boundary
/// runs counterclockwise and not at all otherwise.
pub fn triangle_sign(l1: &Geodesic, l2: &Geodesic, l3: &Geodesic) -> Option<f64> {
    let zero = Rational::zero();
    let one = int(1);
    let v23 = meet(l2, &zero, l3, &one);
    let v13 = meet(l1, &zero, l3, &one);
    let cross = &v23[0] * &v13[1] - &v23[1] * &v13[0];
    cross.is_positive().then_some(1.0)
}

/// One structure constant: the theta sum and its value, or nothing when no
/// triangle connects the three points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct M2Entry {
    pub theta: ThetaSum,
    pub sign: f64,
    pub value: ThetaValue,
}

impl M2Entry {
    pub fn coefficient(&self) -> f64 {
        self.sign * self.value.value
    }

    pub fn bound(&self) -> f64 {
        self.value.bound
    }
}

/// `m₂: Hom(L₁, L₂) ⊗ Hom(L₂, L₃) → Hom(L₁, L₃)`; `entries[(i, j, k)]` is the
/// coefficient of output point `k` in `m₂(x_i, y_j)`. Missing keys are zero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct M2Tensor {
    pub hom12: HomBasis,
    pub hom23: HomBasis,
    pub hom13: HomBasis,
    #[serde(serialize_with = "serialize_entries")]
    pub entries: BTreeMap<(usize, usize, usize), M2Entry>,
}

fn serialize_entries<S: serde::Serializer>(
    entries: &BTreeMap<(usize, usize, usize), M2Entry>,
    s: S,
) -> Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Row<'a> {
        input: [usize; 2],
        output: usize,
        #[serde(flatten)]
        entry: &'a M2Entry,
    }
    s.collect_seq(entries.iter().map(|(&(i, j, k), entry)| Row { input: [i, j], output: k, entry }))
}

impl M2Tensor {
    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> f64 {
        self.entries.get(&(i, j, k)).map_or(0.0, M2Entry::coefficient)
    }

    pub fn bound(&self, i: usize, j: usize, k: usize) -> f64 {
        self.entries.get(&(i, j, k)).map_or(0.0, M2Entry::bound)
    }
}

fn check_transverse(ls: &[&Geodesic]) -> Result<(), FukayaError> {
    for i in 0..ls.len() {
        for j in i + 1..ls.len() {
            if det(ls[i].slope, ls[j].slope) == 0 {
                return Err(FukayaError::NotTransverse(i + 1, j + 1));
            }
        }
    }
    Ok(())
}

/// Position of `x` along the line through `base` with direction `w`, when
/// `x − base` is parallel to `w`.
fn along(x: &Point, base: &Point, w: (i64, i64)) -> Rational {
    if w.0 != 0 {
        (&x[0] - &base[0]) / int(w.0)
    } else {
        (&x[1] - &base[1]) / int(w.1)
    }
}

/// `n mod m` for rationals known to be integers.
fn residue(x: &Rational, m: i64) -> i64 {
    assert!(x.is_integer(), "intersection bookkeeping produced a non-integer step");
    let v: i64 = x.to_integer().try_into().expect("small");
    v.rem_euclid(m)
}

/// Solves `n ≡ r₁ (mod m₁)`, `n ≡ r₂ (mod m₂)`; returns `(n₀, lcm)`.
fn crt(r1: i64, m1: i64, r2: i64, m2: i64) -> Option<(i64, i64)> {
    let g = m1.gcd(&m2);
    if (r2 - r1).rem_euclid(g) != 0 {
        return None;
    }
    let l = m1.lcm(&m2);
    (0..m2 / g).map(|t| r1 + m1 * t).find(|n| (n - r2).rem_euclid(m2) == 0).map(|n| (n.rem_euclid(l), l))
}

pub fn m2_constants(
    l1: &Geodesic,
    l2: &Geodesic,
    l3: &Geodesic,
    area_scale: f64,
    tol: f64,
) -> Result<M2Tensor, FukayaError> {
    check_transverse(&[l1, l2, l3])?;
    if !(area_scale.is_finite() && area_scale > 0.0) {
        return Err(FukayaError::InvalidArea);
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(FukayaError::InvalidTolerance);
    }
    let hom12 = intersection_basis(l1, l2)?;
    let hom23 = intersection_basis(l2, l3)?;
    let hom13 = intersection_basis(l1, l3)?;
    let mut entries = BTreeMap::new();
    let Some(sign) = triangle_sign(l1, l2, l3) else {
        return Ok(M2Tensor { hom12, hom23, hom13, entries });
    };
    let (d12, d23, d31) = (det(l1.slope, l2.slope), det(l2.slope, l3.slope), det(l3.slope, l1.slope));
    let kappa = (area_scale / (2.0 * (d12 * d23 * d31).abs() as f64)).sqrt();

    for (i, x) in hom12.points.iter().enumerate() {
        let s1 = l1.level(x);
        let s2 = l2.level(x);
        // Lifts of L₃ are ℓ₃ = s₃⁰ + n.
        let s30 = &l3.offset + (l3.level(x) - &l3.offset).ceil();
        let v23 = meet(l2, &s2, l3, &s30);
        let v13 = meet(l1, &s1, l3, &s30);
        // Moving to ℓ₃ = s₃⁰ + n shifts v23 by −n·w₂/D₂₃ and v13 by n·w₁/D₃₁.
        for (j, y) in hom23.points.iter().enumerate() {
            // Lifts of y on the line ℓ₂ = s₂ differ from v23 along w₂.
            let y_lift = lift_onto(y, l2, &s2);
            let t2 = along(&v23, &y_lift, l2.slope);
            let r2 = residue(&(t2 * int(d23)), d23.abs());
            for (k, z) in hom13.points.iter().enumerate() {
                let z_lift = lift_onto(z, l1, &s1);
                let t1 = along(&v13, &z_lift, l1.slope);
                let r1 = residue(&(-t1 * int(d31)), d31.abs());
                let Some((n0, period)) = crt(r2, d23.abs(), r1, d31.abs()) else { continue };
                let delta = &s1 * int(d23) + &s2 * int(d31) + (&s30 + int(n0)) * int(d12);
                let theta = ThetaSum::new(
                    (period * d12).abs() as f64 * kappa,
                    rational::to_f64(&delta) * d12.signum() as f64 * kappa,
                );
                entries.insert((i, j, k), M2Entry { theta, sign, value: theta_sum(theta, tol) });
            }
        }
    }
    Ok(M2Tensor { hom12, hom23, hom13, entries })
}

/// A lift of the torus point `x` lying on the line `ℓ = s`.
fn lift_onto(x: &Point, l: &Geodesic, s: &Rational) -> Point {
    let gap = s - l.level(x);
    assert!(gap.is_integer(), "point is not on the geodesic");
    let (p, q) = l.slope;
    // p·e.x − q·e.y = 1, so k = (e.y, e.x) has ℓ(k) = 1.
    let e = i64::extended_gcd(&p, &(-q));
    let unit = [int(e.y), int(e.x)];
    [&x[0] + &gap * &unit[0], &x[1] + &gap * &unit[1]]
}

/// Residual of `m₂(m₂(x, y), z) = m₂(x, m₂(y, z))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AssociativityReport {
    pub max_residual: f64,
    /// Error bound on the residual from the truncated theta sums.
    pub bound: f64,
    /// Largest absolute value of either side.
    pub magnitude: f64,
}

impl AssociativityReport {
    /// Both sides vanish identically: the ordering admits no triangles.
    pub fn is_trivial(&self) -> bool {
        self.magnitude == 0.0
    }
}

pub fn associativity_residual(
    ls: [&Geodesic; 4],
    area_scale: f64,
    tol: f64,
) -> Result<AssociativityReport, FukayaError> {
    check_transverse(&ls)?;
    let [l1, l2, l3, l4] = ls;
    let t123 = m2_constants(l1, l2, l3, area_scale, tol)?;
    let t134 = m2_constants(l1, l3, l4, area_scale, tol)?;
    let t234 = m2_constants(l2, l3, l4, area_scale, tol)?;
    let t124 = m2_constants(l1, l2, l4, area_scale, tol)?;
    let mut report = AssociativityReport { max_residual: 0.0, bound: 0.0, magnitude: 0.0 };
    for x in 0..t123.hom12.len() {
        for y in 0..t123.hom23.len() {
            for z in 0..t134.hom23.len() {
                for w in 0..t134.hom13.len() {
                    let (mut left, mut left_err) = (0.0, 0.0);
                    for q in 0..t123.hom13.len() {
                        let (a, ea) = (t123.coefficient(x, y, q), t123.bound(x, y, q));
                        let (b, eb) = (t134.coefficient(q, z, w), t134.bound(q, z, w));
                        left += a * b;
                        left_err += a.abs() * eb + b.abs() * ea + ea * eb;
                    }
                    let (mut right, mut right_err) = (0.0, 0.0);
                    for q in 0..t234.hom13.len() {
                        let (a, ea) = (t234.coefficient(y, z, q), t234.bound(y, z, q));
                        let (b, eb) = (t124.coefficient(x, q, w), t124.bound(x, q, w));
                        right += a * b;
                        right_err += a.abs() * eb + b.abs() * ea + ea * eb;
                    }
                    let rounding = 8.0 * f64::EPSILON * (left.abs() + right.abs());
                    report.max_residual = report.max_residual.max((left - right).abs());
                    report.bound = report.bound.max(left_err + right_err + rounding);
                    report.magnitude = report.magnitude.max(left.abs()).max(right.abs());
                }
            }
        }
    }
    Ok(report)
}
