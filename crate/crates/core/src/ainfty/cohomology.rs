//! The cohomology category `H⁰`: degree-zero cohomology of each hom complex
//! with the composition induced by `m2`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::Serialize;

use super::stasheff::residual_at;
use super::{AInftyCategory, AInftyError, Vector};
use crate::linalg::{Matrix, Solution};
use crate::rational::Rational;

/// `H⁰(Hom(source, target))` with chosen cocycle representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomCohomology {
    pub source: usize,
    pub target: usize,
    /// Degree-zero generators, the coordinates used below.
    pub cochains: Vec<usize>,
    pub representatives: Vec<Vector>,
    /// Columns: a basis of the coboundaries followed by the representatives.
    frame: Matrix,
    boundary_rank: usize,
}

impl HomCohomology {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Coordinates of the class of a cocycle in the representative basis.
    pub fn classify(&self, v: &Vector) -> Option<Vec<Rational>> {
        let b = coords(&self.cochains, v)?;
        match self.frame.solve(&b) {
            Solution::Unique(x) => Some(x[self.boundary_rank..].to_vec()),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum LawViolation {
    Associativity { objects: [usize; 4], classes: [usize; 3] },
    LeftIdentity { objects: [usize; 2], class: usize },
    RightIdentity { objects: [usize; 2], class: usize },
    IdentityNotClosed { object: usize },
}

/// `table[a][b]` holds the coordinates of `[a]·[b]`.
pub type CompositionTable = Vec<Vec<Vec<Rational>>>;

/// Objects, hom spaces and structure constants of `H⁰`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyCategory {
    pub objects: Vec<String>,
    pub homs: BTreeMap<(usize, usize), HomCohomology>,
    /// `composition[(x, y, z)][a][b]` is the class of `[a]·[b]` for
    /// `a: x → y`, `b: y → z`.
    pub composition: BTreeMap<(usize, usize, usize), CompositionTable>,
    /// Class of each closed identity.
    pub identities: BTreeMap<usize, Vec<Rational>>,
    /// Objects with a declared unit; the rest are exempt from identity laws.
    pub unital: BTreeSet<usize>,
}

impl CohomologyCategory {
    pub fn hom_dim(&self, x: usize, y: usize) -> usize {
        self.homs[&(x, y)].dim()
    }

    fn compose(&self, x: usize, y: usize, z: usize, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let table = &self.composition[&(x, y, z)];
        let mut out = vec![Rational::zero(); self.hom_dim(x, z)];
        for (i, ai) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, bj) in b.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                for (o, c) in out.iter_mut().zip(&table[i][j]) {
                    *o += ai * bj * c;
                }
            }
        }
        out
    }

    /// Failures of associativity and of the identity laws on basis classes.
    pub fn law_violations(&self) -> Vec<LawViolation> {
        let n = self.objects.len();
        let basis = |dim: usize, k: usize| -> Vec<Rational> {
            (0..dim).map(|i| if i == k { Rational::one() } else { Rational::zero() }).collect()
        };
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for w in 0..n {
                        let (dxy, dyz, dzw) = (self.hom_dim(x, y), self.hom_dim(y, z), self.hom_dim(z, w));
                        for a in 0..dxy {
                            for b in 0..dyz {
                                for c in 0..dzw {
                                    let (ea, eb, ec) = (basis(dxy, a), basis(dyz, b), basis(dzw, c));
                                    let left = self.compose(x, z, w, &self.compose(x, y, z, &ea, &eb), &ec);
                                    let right = self.compose(x, y, w, &ea, &self.compose(y, z, w, &eb, &ec));
                                    if left != right {
                                        out.push(LawViolation::Associativity {
                                            objects: [x, y, z, w],
                                            classes: [a, b, c],
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        for &x in &self.unital {
            let Some(id) = self.identities.get(&x) else {
                out.push(LawViolation::IdentityNotClosed { object: x });
                continue;
            };
            for y in 0..n {
                for k in 0..self.hom_dim(x, y) {
                    let e = basis(self.hom_dim(x, y), k);
                    if self.compose(x, x, y, id, &e) != e {
                        out.push(LawViolation::LeftIdentity { objects: [x, y], class: k });
                    }
                }
                if let Some(idy) = self.identities.get(&y) {
                    for k in 0..self.hom_dim(x, y) {
                        let e = basis(self.hom_dim(x, y), k);
                        if self.compose(x, y, y, &e, idy) != e {
                            out.push(LawViolation::RightIdentity { objects: [x, y], class: k });
                        }
                    }
                }
            }
        }
        out
    }
}

fn coords(basis: &[usize], v: &Vector) -> Option<Vec<Rational>> {
    let mut out = vec![Rational::zero(); basis.len()];
    for (g, c) in v {
        let pos = basis.iter().position(|b| b == g)?;
        out[pos] = c.clone();
    }
    Some(out)
}

fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Matrix {
    let mut m = Matrix::zeros(rows, columns.len());
    for (j, col) in columns.iter().enumerate() {
        for (i, c) in col.iter().enumerate() {
            m[(i, j)] = c.clone();
        }
    }
    m
}

fn unit(g: usize) -> Vector {
    Vector::from([(g, Rational::one())])
}

fn hom_cohomology(cat: &AInftyCategory, x: usize, y: usize) -> Result<HomCohomology, AInftyError> {
    let c0 = cat.hom_basis(x, y, 0);
    let c1 = cat.hom_basis(x, y, 1);
    let cm1 = cat.hom_basis(x, y, -1);
    let d0_cols = c0
        .iter()
        .map(|&g| coords(&c1, &cat.apply(&[&unit(g)])).ok_or(AInftyError::InducedCompositionUndefined))
        .collect::<Result<Vec<_>, _>>()?;
    let cocycles = from_columns(c1.len(), &d0_cols).nullspace();

    let mut boundaries: Vec<Vec<Rational>> = Vec::new();
    for &h in &cm1 {
        let v = coords(&c0, &cat.apply(&[&unit(h)])).ok_or(AInftyError::InducedCompositionUndefined)?;
        boundaries.push(v);
        if from_columns(c0.len(), &boundaries).rank() < boundaries.len() {
            boundaries.pop();
        }
    }
    let boundary_rank = boundaries.len();
    let mut frame_cols = boundaries;
    let mut representatives = Vec::new();
    for z in cocycles {
        frame_cols.push(z.clone());
        if from_columns(c0.len(), &frame_cols).rank() < frame_cols.len() {
            frame_cols.pop();
        } else {
            representatives
                .push(c0.iter().zip(z).filter(|(_, c)| !c.is_zero()).map(|(&g, c)| (g, c)).collect::<Vector>());
        }
    }
    Ok(HomCohomology {
        source: x,
        target: y,
        cochains: c0.clone(),
        representatives,
        frame: from_columns(c0.len(), &frame_cols),
        boundary_rank,
    })
}

/// Builds `H⁰(cat)`. Fails when `m1` does not square to zero or when a
/// product of cocycles is not a cocycle.
pub fn cohomology_category(cat: &AInftyCategory) -> Result<CohomologyCategory, AInftyError> {
    for g in 0..cat.generators().len() {
        if !residual_at(cat, &[g]).is_empty() {
            return Err(AInftyError::DifferentialNotSquareZero);
        }
    }
    let n = cat.objects().len();
    let mut homs = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            homs.insert((x, y), hom_cohomology(cat, x, y)?);
        }
    }
    let mut composition = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (hxy, hyz, hxz) = (&homs[&(x, y)], &homs[&(y, z)], &homs[&(x, z)]);
                let mut table = Vec::with_capacity(hxy.dim());
                for a in &hxy.representatives {
                    let mut row = Vec::with_capacity(hyz.dim());
                    for b in &hyz.representatives {
                        let p = cat.apply(&[a, b]);
                        if !cat.apply(&[&p]).is_empty() {
                            return Err(AInftyError::InducedCompositionUndefined);
                        }
                        row.push(hxz.classify(&p).ok_or(AInftyError::InducedCompositionUndefined)?);
                    }
                    table.push(row);
                }
                composition.insert((x, y, z), table);
            }
        }
    }
    let mut identities = BTreeMap::new();
    for (&x, id) in cat.identities() {
        if cat.apply(&[id]).is_empty() {
            if let Some(c) = homs[&(x, x)].classify(id) {
                identities.insert(x, c);
            }
        }
    }
    let unital = cat.identities().keys().copied().collect();
    Ok(CohomologyCategory { objects: cat.objects().to_vec(), homs, composition, identities, unital })
}
