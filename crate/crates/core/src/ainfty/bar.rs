//! The coderivation formulation on the tensor coalgebra of the suspension.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::stasheff::last_nontrivial_arity;
use super::{bar_parity, sign, AInftyCategory};
use crate::rational::Rational;

/// Element of the tensor coalgebra: basis words with coefficients.
pub type Tensor = BTreeMap<Vec<usize>, Rational>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoderivationReport {
    /// Largest word length examined.
    pub length: usize,
    /// Words `x` with `D²(x) ≠ 0`.
    pub full_support: Vec<Vec<usize>>,
    /// Words `x` whose length-one component of `D²(x)` is nonzero.
    pub corestricted_support: Vec<Vec<usize>>,
}

impl CoderivationReport {
    pub fn is_zero(&self) -> bool {
        self.full_support.is_empty()
    }
}

fn add(t: &mut Tensor, word: Vec<usize>, c: Rational) {
    if c.is_zero() {
        return;
    }
    let slot = t.entry(word.clone()).or_insert_with(Rational::zero);
    *slot += c;
    if slot.is_zero() {
        t.remove(&word);
    }
}

/// `D = Σ 1^r ⊗ b_s ⊗ 1^t`, with `b_s` the bar form of `m_s` and Koszul sign
/// `(−1)^{Σ_{i≤r} (|x_i| − 1)}` for moving the degree-one `b_s` past the
/// suspended prefix.
fn apply_d(cat: &AInftyCategory, t: &Tensor) -> Tensor {
    let mut out = Tensor::new();
    for (word, c) in t {
        let n = word.len();
        let shifted: Vec<i64> = word.iter().map(|&g| cat.generator(g).degree - 1).collect();
        let mut prefix = 0i64;
        for r in 0..n {
            for s in 1..=n - r {
                let block = &word[r..r + s];
                let Some(v) = cat.op(block) else { continue };
                let eps = bar_parity(block.iter().map(|&g| cat.generator(g).degree));
                let f = sign(prefix + eps) * c;
                for (e, d) in v {
                    let mut w = Vec::with_capacity(n - s + 1);
                    w.extend_from_slice(&word[..r]);
                    w.push(*e);
                    w.extend_from_slice(&word[r + s..]);
                    add(&mut out, w, &f * d);
                }
            }
            prefix += shifted[r];
        }
    }
    out
}

/// Evaluates `D²` on every composable word of length `1..=up_to_length`.
///
/// Words longer than `2 · max_arity − 1` are skipped: there `D²` is built
/// from identities on shorter subwords, which are already covered.
pub fn coderivation_square(cat: &AInftyCategory, up_to_length: usize) -> CoderivationReport {
    let top = up_to_length.min(last_nontrivial_arity(cat));
    let mut full_support = Vec::new();
    let mut corestricted_support = Vec::new();
    for n in 1..=top {
        for word in cat.composable_tuples(n) {
            let d2 = apply_d(cat, &apply_d(cat, &Tensor::from([(word.clone(), Rational::from_integer(1.into()))])));
            if d2.keys().any(|w| w.len() == 1) {
                corestricted_support.push(word.clone());
            }
            if !d2.is_empty() {
                full_support.push(word);
            }
        }
    }
    CoderivationReport { length: top, full_support, corestricted_support }
}
