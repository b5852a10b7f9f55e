use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{add_to, sign, AInftyCategory, Vector};
use crate::rational::Rational;

/// Nonzero left-hand side of the arity-`n` identity on one basis tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StasheffResidual {
    pub inputs: Vec<usize>,
    pub value: Vector,
}

impl StasheffResidual {
    pub fn arity(&self) -> usize {
        self.inputs.len()
    }
}

/// Largest arity at which some identity has a nonzero term: a term
/// `m_u(.., m_s, ..)` has arity `u + s − 1`.
pub(crate) fn last_nontrivial_arity(cat: &AInftyCategory) -> usize {
    (2 * cat.max_arity()).saturating_sub(1)
}

/// Left-hand side of the arity-`inputs.len()` identity.
pub(crate) fn residual_at(cat: &AInftyCategory, a: &[usize]) -> Vector {
    let n = a.len();
    let degrees: Vec<i64> = a.iter().map(|&g| cat.generator(g).degree).collect();
    let mut out = Vector::new();
    let mut key = Vec::with_capacity(n);
    for s in 1..=n {
        for r in 0..=n - s {
            let t = n - r - s;
            let Some(inner) = cat.op(&a[r..r + s]) else { continue };
            let prefix_degree: i64 = degrees[..r].iter().sum();
            let sgn = sign(r as i64 + (s * t) as i64 + s as i64 * prefix_degree);
            for (e, c) in inner {
                key.clear();
                key.extend_from_slice(&a[..r]);
                key.push(*e);
                key.extend_from_slice(&a[r + s..]);
                if let Some(outer) = cat.op(&key) {
                    let f = &sgn * c;
                    for (g, d) in outer {
                        add_to(&mut out, *g, &(&f * d));
                    }
                }
            }
        }
    }
    out
}

/// Evaluates every identity of arity `1..=up_to_arity` on every composable
/// basis tuple and returns the nonzero residuals, ordered by arity.
///
/// Only tuples obtained by substituting the inputs of one operation into an
/// input slot of another can have a nonzero residual, so only those are
/// evaluated.
pub fn stasheff_check(cat: &AInftyCategory, up_to_arity: usize) -> Vec<StasheffResidual> {
    let top = up_to_arity.min(last_nontrivial_arity(cat));
    let mut producers: BTreeMap<usize, Vec<&[usize]>> = BTreeMap::new();
    for (inputs, output) in cat.operations() {
        for g in output.keys() {
            producers.entry(*g).or_default().push(inputs);
        }
    }
    let mut candidates: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
    for (outer, _) in cat.operations() {
        for (slot, g) in outer.iter().enumerate() {
            for inner in producers.get(g).into_iter().flatten() {
                let n = outer.len() + inner.len() - 1;
                if n > top {
                    continue;
                }
                let mut tuple = Vec::with_capacity(n);
                tuple.extend_from_slice(&outer[..slot]);
                tuple.extend_from_slice(inner);
                tuple.extend_from_slice(&outer[slot + 1..]);
                candidates.insert((n, tuple));
            }
        }
    }
    candidates
        .into_iter()
        .filter_map(|(_, inputs)| {
            let value = residual_at(cat, &inputs);
            (!value.is_empty()).then_some(StasheffResidual { inputs, value })
        })
        .collect()
}

/// A failure of strict unitality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitViolation {
    pub object: String,
    pub arity: usize,
    /// Slot of the identity among the inputs.
    pub position: usize,
    pub others: Vec<String>,
}

/// Checks `m_1(1) = 0`, `m_2(1, f) = f = m_2(f, 1)` and that the identity
/// kills every `m_k` with `3 <= k <= up_to_arity` (arities above the
/// largest nonzero `m_k` are skipped).
pub fn unit_violations(cat: &AInftyCategory, up_to_arity: usize) -> Vec<UnitViolation> {
    let mut out = Vec::new();
    for (&obj, unit) in cat.identities() {
        let name = cat.objects()[obj].clone();
        if !cat.apply(&[unit]).is_empty() {
            out.push(UnitViolation { object: name.clone(), arity: 1, position: 0, others: vec![] });
        }
        for k in 2..=up_to_arity.min(cat.max_arity()).max(2) {
            let tuples = cat.composable_tuples(k - 1);
            for others in &tuples {
                for pos in 0..k {
                    let before = pos.checked_sub(1).map(|i| cat.generator(others[i]).target);
                    let after = others.get(pos).map(|&g| cat.generator(g).source);
                    if before.is_some_and(|o| o != obj) || after.is_some_and(|o| o != obj) {
                        continue;
                    }
                    let basis: Vec<Vector> =
                        others.iter().map(|&g| Vector::from([(g, Rational::from_integer(1.into()))])).collect();
                    let mut args: Vec<&Vector> = basis.iter().collect();
                    args.insert(pos, unit);
                    let value = cat.apply(&args);
                    let expected = if k == 2 { basis[0].clone() } else { Vector::new() };
                    if value != expected {
                        out.push(UnitViolation {
                            object: name.clone(),
                            arity: k,
                            position: pos,
                            others: cat.names(others),
                        });
                    }
                }
            }
        }
    }
    out
}
