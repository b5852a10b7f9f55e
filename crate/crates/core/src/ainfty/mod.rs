//! Finite-dimensional A∞-algebras and A∞-categories over the rationals.
//!
//! Conventions. Compositions are written in diagrammatic order: for
//! `a_j ∈ Hom(X_{j−1}, X_j)` the value `m_k(a_1, ..., a_k)` lies in
//! `Hom(X_0, X_k)` and has degree `Σ|a_j| + 2 − k`. The identities checked
//! are
//!
//! `Σ_{r+s+t=n} (−1)^{r+st} m_{r+1+t}(1^r ⊗ m_s ⊗ 1^t) = 0`
//!
//! with the Koszul rule `(1^r ⊗ m_s ⊗ 1^t)(a) = (−1)^{s Σ_{i≤r}|a_i|} ...`.
//! They are equivalent to `D² = 0` for the coderivation `D` on the tensor
//! coalgebra of the suspension, built from `b_k(sa) = (−1)^{Σ_i (k−i)|a_i|} s m_k(a)`;
//! see [`coderivation_square`].
//!
//! Units are strict: `m_2(1, a) = a = m_2(a, 1)` and the identity vanishes in
//! every other `m_k`.

mod bar;
mod cohomology;
pub mod fixtures;
mod json;
mod stasheff;
mod twisted;

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

pub use bar::{coderivation_square, CoderivationReport, Tensor};
pub use cohomology::{cohomology_category, CohomologyCategory, CompositionTable, HomCohomology, LawViolation};
pub use json::{AInftyDocument, GeneratorDoc, OperationDoc, TwistedComplexDoc};
pub use stasheff::{stasheff_check, unit_violations, StasheffResidual, UnitViolation};
pub use twisted::{mc_check, twisted_complex_category, TwistedComplex};

use crate::linalg::Matrix;
use crate::rational::Rational;

/// Default largest arity for identity checks.
pub const DEFAULT_ARITY: usize = 6;

/// Sparse linear combination of generators.
pub type Vector = BTreeMap<usize, Rational>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AInftyError {
    #[error("duplicate name {0:?}")]
    DuplicateName(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("unknown object {0:?}")]
    UnknownObject(String),
    #[error("operation needs at least one input")]
    EmptyInputs,
    #[error("inputs {0:?} are not composable")]
    NotComposable(Vec<String>),
    #[error("m({inputs:?}) has output {output:?} in the wrong hom space")]
    EndpointMismatch { inputs: Vec<String>, output: String },
    #[error("m({inputs:?}) -> {output:?}: degree {found}, expected {expected}")]
    DegreeMismatch { inputs: Vec<String>, output: String, expected: i64, found: i64 },
    #[error("identity of {0:?} must be a degree-0 endomorphism")]
    BadIdentity(String),
    #[error("twisted complex {complex:?}: {reason}")]
    InvalidTwistedComplex { complex: String, reason: String },
    #[error("twisted complex {complex:?} violates Maurer–Cartan at ({from}, {to})")]
    MaurerCartanViolated { complex: String, from: i64, to: i64 },
    #[error("m_1 does not square to zero")]
    DifferentialNotSquareZero,
    #[error("m_2 of two cocycles is not a cocycle; composition on cohomology is undefined")]
    InducedCompositionUndefined,
    #[error("bad coefficient {0:?}")]
    BadCoefficient(String),
}

/// A basis morphism `source -> target` of a fixed degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub degree: i64,
}

/// Objects, a graded basis of each hom space, and structure constants of
/// the `m_k` on basis tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AInftyCategory {
    objects: Vec<String>,
    generators: Vec<Generator>,
    ops: BTreeMap<Vec<usize>, Vector>,
    identities: BTreeMap<usize, Vector>,
    outgoing: Vec<Vec<usize>>,
}

impl AInftyCategory {
    /// Validates composability, degrees and endpoints of every structure
    /// constant. Zero coefficients are dropped.
    pub fn new(
        objects: Vec<String>,
        generators: Vec<Generator>,
        ops: impl IntoIterator<Item = (Vec<usize>, Vector)>,
        identities: BTreeMap<usize, Vector>,
    ) -> Result<Self, AInftyError> {
        check_unique(objects.iter())?;
        check_unique(generators.iter().map(|g| &g.name))?;
        for g in &generators {
            if g.source >= objects.len() || g.target >= objects.len() {
                return Err(AInftyError::UnknownObject(g.name.clone()));
            }
        }
        let mut outgoing = vec![Vec::new(); objects.len()];
        for (i, g) in generators.iter().enumerate() {
            outgoing[g.source].push(i);
        }
        let mut cat = Self { objects, generators, ops: BTreeMap::new(), identities: BTreeMap::new(), outgoing };
        for (inputs, output) in ops {
            cat.insert_op(inputs, output)?;
        }
        for (obj, v) in identities {
            let name = cat.objects.get(obj).cloned().unwrap_or_default();
            let ok = obj < cat.objects.len()
                && v.keys().all(|&g| {
                    let gen = &cat.generators[g];
                    gen.source == obj && gen.target == obj && gen.degree == 0
                });
            if !ok {
                return Err(AInftyError::BadIdentity(name));
            }
            let v: Vector = v.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            cat.identities.insert(obj, v);
        }
        Ok(cat)
    }

    fn insert_op(&mut self, inputs: Vec<usize>, output: Vector) -> Result<(), AInftyError> {
        if inputs.is_empty() {
            return Err(AInftyError::EmptyInputs);
        }
        if inputs.iter().chain(output.keys()).any(|&g| g >= self.generators.len()) {
            return Err(AInftyError::UnknownGenerator(format!("{inputs:?}")));
        }
        let names = self.names(&inputs);
        if !self.is_composable(&inputs) {
            return Err(AInftyError::NotComposable(names));
        }
        let (src, tgt) = self.endpoints(&inputs);
        let expected = self.expected_degree(&inputs);
        let slot = self.ops.entry(inputs.clone()).or_default();
        for (g, c) in output {
            let gen = &self.generators[g];
            if gen.source != src || gen.target != tgt {
                return Err(AInftyError::EndpointMismatch { inputs: names, output: gen.name.clone() });
            }
            if gen.degree != expected {
                return Err(AInftyError::DegreeMismatch {
                    inputs: names,
                    output: gen.name.clone(),
                    expected,
                    found: gen.degree,
                });
            }
            add_to(slot, g, &c);
        }
        if slot.is_empty() {
            self.ops.remove(&inputs);
        }
        Ok(())
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &Generator {
        &self.generators[i]
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn identity(&self, obj: usize) -> Option<&Vector> {
        self.identities.get(&obj)
    }

    pub fn identities(&self) -> &BTreeMap<usize, Vector> {
        &self.identities
    }

    pub fn operations(&self) -> impl Iterator<Item = (&Vec<usize>, &Vector)> {
        self.ops.iter()
    }

    /// `m_k` on a basis tuple; `None` when zero.
    pub fn op(&self, inputs: &[usize]) -> Option<&Vector> {
        self.ops.get(inputs)
    }

    /// Largest `k` with `m_k ≠ 0` (zero for the trivial structure).
    pub fn max_arity(&self) -> usize {
        self.ops.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn names(&self, inputs: &[usize]) -> Vec<String> {
        inputs.iter().map(|&g| self.generators[g].name.clone()).collect()
    }

    pub fn is_composable(&self, inputs: &[usize]) -> bool {
        inputs.windows(2).all(|w| self.generators[w[0]].target == self.generators[w[1]].source)
    }

    fn endpoints(&self, inputs: &[usize]) -> (usize, usize) {
        let first = &self.generators[inputs[0]];
        let last = &self.generators[inputs[inputs.len() - 1]];
        (first.source, last.target)
    }

    fn expected_degree(&self, inputs: &[usize]) -> i64 {
        inputs.iter().map(|&g| self.generators[g].degree).sum::<i64>() + 2 - inputs.len() as i64
    }

    /// Generators of `Hom(source, target)` in the given degree.
    pub fn hom_basis(&self, source: usize, target: usize, degree: i64) -> Vec<usize> {
        (0..self.generators.len())
            .filter(|&g| {
                let gen = &self.generators[g];
                gen.source == source && gen.target == target && gen.degree == degree
            })
            .collect()
    }

    /// All composable basis tuples of length `n`.
    pub fn composable_tuples(&self, n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        for g in 0..self.generators.len() {
            cur.push(g);
            self.extend_tuples(n, &mut cur, &mut out);
            cur.pop();
        }
        out
    }

    fn extend_tuples(&self, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let last = self.generators[*cur.last().expect("nonempty")].target;
        for &g in &self.outgoing[last] {
            cur.push(g);
            self.extend_tuples(n, cur, out);
            cur.pop();
        }
    }

    /// Multilinear extension of `m_k` to vectors.
    pub fn apply(&self, args: &[&Vector]) -> Vector {
        let mut out = Vector::new();
        for_each_basis_tuple(args, |tuple, coeff| {
            if let Some(v) = self.ops.get(tuple) {
                for (g, c) in v {
                    add_to(&mut out, *g, &(c * coeff));
                }
            }
        });
        out
    }

    /// Same structure in a new basis: `m'(x) = P^{-1} m(P x)` where column
    /// `j` of `p` expresses new generator `j` in the old basis. `p` must be
    /// invertible and must not mix generators of different degree or hom
    /// space.
    pub fn change_basis(&self, p: &Matrix) -> Option<Self> {
        let n = self.generators.len();
        if p.rows() != n || p.cols() != n {
            return None;
        }
        for i in 0..n {
            for j in 0..n {
                if !p[(i, j)].is_zero() {
                    let (a, b) = (&self.generators[i], &self.generators[j]);
                    if (a.source, a.target, a.degree) != (b.source, b.target, b.degree) {
                        return None;
                    }
                }
            }
        }
        let p_inv = p.inverse()?;
        let column = |m: &Matrix, j: usize| -> Vector {
            (0..n).filter(|&i| !m[(i, j)].is_zero()).map(|i| (i, m[(i, j)].clone())).collect()
        };
        let to_new = |v: &Vector| -> Vector {
            let mut out = Vector::new();
            for (g, c) in v {
                for (h, d) in column(&p_inv, *g) {
                    add_to(&mut out, h, &(c * d));
                }
            }
            out
        };
        let cols: Vec<Vector> = (0..n).map(|j| column(p, j)).collect();
        let max = self.max_arity();
        let mut ops = Vec::new();
        for k in 1..=max {
            for tuple in self.composable_tuples(k) {
                let args: Vec<&Vector> = tuple.iter().map(|&g| &cols[g]).collect();
                let v = to_new(&self.apply(&args));
                if !v.is_empty() {
                    ops.push((tuple, v));
                }
            }
        }
        let identities = self.identities.iter().map(|(o, v)| (*o, to_new(v))).collect();
        Self::new(self.objects.clone(), self.generators.clone(), ops, identities).ok()
    }

    /// Adds `delta · output` to one structure constant.
    pub fn perturbed(&self, inputs: &[usize], output: usize, delta: &Rational) -> Result<Self, AInftyError> {
        let mut ops: Vec<(Vec<usize>, Vector)> = self.ops.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        ops.push((inputs.to_vec(), Vector::from([(output, delta.clone())])));
        Self::new(self.objects.clone(), self.generators.clone(), ops, self.identities.clone())
    }
}

/// An A∞-algebra: a category with a single object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AInftyStructure(AInftyCategory);

/// Named basis with degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSpace {
    pub basis: Vec<(String, i64)>,
}

impl GradedSpace {
    pub fn new(basis: Vec<(String, i64)>) -> Self {
        Self { basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Degree in the suspension, `A[1]^k = A^{k+1}`.
    pub fn shifted_degree(&self, i: usize) -> i64 {
        self.basis[i].1 - 1
    }
}

impl AInftyStructure {
    /// `ops` are given by basis names; `unit` optionally names a strict unit.
    pub fn new(
        space: GradedSpace,
        ops: impl IntoIterator<Item = (Vec<usize>, Vector)>,
        unit: Option<Vector>,
    ) -> Result<Self, AInftyError> {
        let generators = space
            .basis
            .iter()
            .map(|(name, degree)| Generator { name: name.clone(), source: 0, target: 0, degree: *degree })
            .collect();
        let identities = unit.map(|u| BTreeMap::from([(0, u)])).unwrap_or_default();
        AInftyCategory::new(vec!["*".into()], generators, ops, identities).map(Self)
    }

    pub fn from_category(cat: AInftyCategory) -> Option<Self> {
        (cat.objects.len() == 1).then_some(Self(cat))
    }

    pub fn space(&self) -> GradedSpace {
        GradedSpace::new(self.0.generators.iter().map(|g| (g.name.clone(), g.degree)).collect())
    }

    pub fn category(&self) -> &AInftyCategory {
        &self.0
    }

    pub fn into_category(self) -> AInftyCategory {
        self.0
    }
}

fn check_unique<'a>(names: impl Iterator<Item = &'a String>) -> Result<(), AInftyError> {
    let mut seen: HashMap<&str, ()> = HashMap::new();
    for n in names {
        if seen.insert(n, ()).is_some() {
            return Err(AInftyError::DuplicateName(n.clone()));
        }
    }
    Ok(())
}

pub(crate) fn add_to(v: &mut Vector, g: usize, c: &Rational) {
    if c.is_zero() {
        return;
    }
    let slot = v.entry(g).or_insert_with(Rational::zero);
    *slot += c;
    if slot.is_zero() {
        v.remove(&g);
    }
}

/// Calls `f(tuple, coefficient)` for every basis tuple in the support of
/// `args[0] ⊗ ... ⊗ args[k−1]`.
pub(crate) fn for_each_basis_tuple(args: &[&Vector], mut f: impl FnMut(&[usize], &Rational)) {
    fn go(args: &[&Vector], tuple: &mut Vec<usize>, coeff: Rational, f: &mut dyn FnMut(&[usize], &Rational)) {
        let Some((first, rest)) = args.split_first() else {
            f(tuple, &coeff);
            return;
        };
        for (g, c) in first.iter() {
            tuple.push(*g);
            go(rest, tuple, &coeff * c, f);
            tuple.pop();
        }
    }
    go(args, &mut Vec::with_capacity(args.len()), Rational::one(), &mut f);
}

/// `(−1)^p` as a rational.
pub(crate) fn sign(p: i64) -> Rational {
    if p.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `Σ_i (k − i)|a_i|`, the parity relating `m_k` and its bar form.
pub(crate) fn bar_parity(degrees: impl ExactSizeIterator<Item = i64>) -> i64 {
    let k = degrees.len() as i64;
    degrees.enumerate().map(|(i, d)| (k - 1 - i as i64) * d).sum()
}
