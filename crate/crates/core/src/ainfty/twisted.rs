//! One-sided twisted complexes.
//!
//! A twisted complex is a family `X^(i)`, placed as `⊕ X^(i)[−i]`, with
//! components `d_ij ∈ Hom(X^(i), X^(j))` for `i < j` of degree `1 + i − j`,
//! so that the total differential has degree one after the shifts.
//!
//! Signs are handled in bar form. For shifted objects `X_l[a_l]` the bar
//! operations satisfy `b_k(f_1, ..., f_k) = (−1)^{a_0} b_k^C(f_1, ..., f_k)`
//! where `a_0` is the shift of the source of `f_1`; with this choice every
//! identity keeps the signs it has in `C`. The twisted operations are then
//! `b^Tw_k(x_1..x_k) = Σ b(δ, .., δ, x_1, δ, .., δ, x_k, δ, .., δ)` with no
//! further signs, because `δ` has bar degree zero. In these conventions the
//! identity of `X[−i]` is `(−1)^i id_X`.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::{add_to, bar_parity, for_each_basis_tuple, sign, AInftyCategory, AInftyError, Generator, Vector};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedComplex {
    name: String,
    family: BTreeMap<i64, usize>,
    differentials: BTreeMap<(i64, i64), Vector>,
}

impl TwistedComplex {
    pub fn new(
        name: String,
        family: BTreeMap<i64, usize>,
        differentials: BTreeMap<(i64, i64), Vector>,
        cat: &AInftyCategory,
    ) -> Result<Self, AInftyError> {
        let invalid = |reason: String| AInftyError::InvalidTwistedComplex { complex: name.clone(), reason };
        if family.is_empty() {
            return Err(invalid("empty family".into()));
        }
        let mut diffs = BTreeMap::new();
        for ((i, j), v) in differentials {
            if i >= j {
                return Err(invalid(format!("component ({i}, {j}) is not strictly upper triangular")));
            }
            let (Some(&x), Some(&y)) = (family.get(&i), family.get(&j)) else {
                return Err(invalid(format!("component ({i}, {j}) leaves the family")));
            };
            for g in v.keys() {
                let gen = cat.generator(*g);
                if gen.source != x || gen.target != y || gen.degree != 1 + i - j {
                    return Err(invalid(format!("{} cannot sit at ({i}, {j}); need degree {}", gen.name, 1 + i - j)));
                }
            }
            let v: Vector = v.into_iter().filter(|(_, c)| !num_traits::Zero::is_zero(c)).collect();
            if !v.is_empty() {
                diffs.insert((i, j), v);
            }
        }
        Ok(Self { name, family, differentials: diffs })
    }

    /// A single object at index 0 with no differential.
    pub fn concentrated(name: String, object: usize) -> Self {
        Self { name, family: BTreeMap::from([(0, object)]), differentials: BTreeMap::new() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn family(&self) -> &BTreeMap<i64, usize> {
        &self.family
    }

    pub fn differential(&self, i: i64, j: i64) -> Option<&Vector> {
        self.differentials.get(&(i, j))
    }

    pub fn differentials(&self) -> &BTreeMap<(i64, i64), Vector> {
        &self.differentials
    }

    /// Increasing chains `from = c_0 < c_1 < ... < c_m = to` of nonzero
    /// components, at most `max_len` steps.
    fn chains_between(&self, from: i64, to: i64, max_len: usize) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let mut cur = vec![from];
        self.walk(&mut cur, max_len, &mut |c| {
            if *c.last().expect("nonempty") == to {
                out.push(c.to_vec());
            }
        });
        out
    }

    fn walk(&self, cur: &mut Vec<i64>, max_len: usize, visit: &mut dyn FnMut(&[i64])) {
        visit(cur);
        if cur.len() > max_len {
            return;
        }
        let last = *cur.last().expect("nonempty");
        for &(i, j) in self.differentials.keys() {
            if i == last {
                cur.push(j);
                self.walk(cur, max_len, visit);
                cur.pop();
            }
        }
    }

    fn chain_args(&self, chain: &[i64]) -> Vec<&Vector> {
        chain.windows(2).map(|w| &self.differentials[&(w[0], w[1])]).collect()
    }
}

/// `Σ_chains (−1)^{a_0} b^C(d_{i_0 i_1}, ..., d_{i_{k−1} i_k})` for each
/// `i < j`; nonzero entries only.
pub fn mc_check(t: &TwistedComplex, cat: &AInftyCategory) -> BTreeMap<(i64, i64), Vector> {
    let max = cat.max_arity();
    let mut out = BTreeMap::new();
    for &i in t.family.keys() {
        for &j in t.family.keys().filter(|&&j| j > i) {
            let mut acc = Vector::new();
            for chain in t.chains_between(i, j, max) {
                if chain.len() < 2 {
                    continue;
                }
                accumulate_bar(cat, &t.chain_args(&chain), i, &Rational::from_integer(1.into()), &mut acc);
            }
            if !acc.is_empty() {
                out.insert((i, j), acc);
            }
        }
    }
    out
}

/// Adds `scale · (−1)^{source_index} b^C(args)` to `acc`.
fn accumulate_bar(cat: &AInftyCategory, args: &[&Vector], source_index: i64, scale: &Rational, acc: &mut Vector) {
    for_each_basis_tuple(args, |tuple, coeff| {
        if let Some(v) = cat.op(tuple) {
            let eps = bar_parity(tuple.iter().map(|&g| cat.generator(g).degree));
            let f = sign(source_index + eps) * coeff * scale;
            for (g, c) in v {
                add_to(acc, *g, &(&f * c));
            }
        }
    });
}

/// Generator of the twisted category: `f ∈ Hom_C(X^(i), Y^(j))` viewed in
/// `Hom(S, T)` with degree `|f| + j − i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct TwLabel {
    source: usize,
    i: i64,
    target: usize,
    j: i64,
    base: usize,
}

/// The A∞-category whose objects are `complexes`. Generators are named
/// `S[i]>T[j]:f`. Operations are computed up to the largest arity of `cat`,
/// beyond which they vanish.
pub fn twisted_complex_category(
    cat: &AInftyCategory,
    complexes: &[TwistedComplex],
) -> Result<AInftyCategory, AInftyError> {
    for t in complexes {
        if let Some((&(from, to), _)) = mc_check(t, cat).iter().next() {
            return Err(AInftyError::MaurerCartanViolated { complex: t.name.clone(), from, to });
        }
    }
    let mut labels = Vec::new();
    for (s, src) in complexes.iter().enumerate() {
        for (t, tgt) in complexes.iter().enumerate() {
            for (&i, &x) in &src.family {
                for (&j, &y) in &tgt.family {
                    for (g, gen) in cat.generators().iter().enumerate() {
                        if gen.source == x && gen.target == y {
                            labels.push(TwLabel { source: s, i, target: t, j, base: g });
                        }
                    }
                }
            }
        }
    }
    let index: BTreeMap<TwLabel, usize> = labels.iter().enumerate().map(|(n, l)| (*l, n)).collect();
    let generators: Vec<Generator> = labels
        .iter()
        .map(|l| Generator {
            name: format!(
                "{}[{}]>{}[{}]:{}",
                complexes[l.source].name,
                l.i,
                complexes[l.target].name,
                l.j,
                cat.generator(l.base).name
            ),
            source: l.source,
            target: l.target,
            degree: cat.generator(l.base).degree + l.j - l.i,
        })
        .collect();
    let objects: Vec<String> = complexes.iter().map(|t| t.name.clone()).collect();
    let max = cat.max_arity();
    let patterns = base_patterns(cat, complexes);
    let mut outgoing = vec![Vec::new(); complexes.len()];
    for (n, l) in labels.iter().enumerate() {
        outgoing[l.source].push(n);
    }
    let mut ops = Vec::new();
    let mut visit = |tuple: &[usize]| {
        let xs: Vec<TwLabel> = tuple.iter().map(|&n| labels[n]).collect();
        let b = twisted_bar(cat, complexes, &xs, max, &index);
        if !b.is_empty() {
            let eps = bar_parity(tuple.iter().map(|&n| generators[n].degree));
            let m: Vector = b.into_iter().map(|(g, c)| (g, c * sign(eps))).collect();
            ops.push((tuple.to_vec(), m));
        }
    };
    for start in 0..complexes.len() {
        extend_tuples(&mut Vec::new(), start, &outgoing, &labels, &patterns, &mut visit);
    }

    let mut identities = BTreeMap::new();
    for (s, t) in complexes.iter().enumerate() {
        let mut id = Vector::new();
        let mut complete = true;
        for (&i, &x) in &t.family {
            match cat.identity(x) {
                Some(v) => {
                    for (g, c) in v {
                        let label = TwLabel { source: s, i, target: s, j: i, base: *g };
                        add_to(&mut id, index[&label], &(sign(i) * c));
                    }
                }
                None => complete = false,
            }
        }
        if complete {
            identities.insert(s, id);
        }
    }
    AInftyCategory::new(objects, generators, ops, identities)
}

/// Base words `(f_1, .., f_k)` that survive deleting differential components
/// from the input word of some operation of `cat`, with every prefix.
fn base_patterns(cat: &AInftyCategory, complexes: &[TwistedComplex]) -> HashSet<Vec<usize>> {
    let in_delta: BTreeSet<usize> =
        complexes.iter().flat_map(|t| t.differentials.values().flat_map(|v| v.keys().copied())).collect();
    let mut out = HashSet::new();
    for (inputs, _) in cat.operations() {
        let n = inputs.len();
        for mask in 1u32..(1 << n) {
            let gaps_ok = (0..n).all(|p| mask & (1 << p) != 0 || in_delta.contains(&inputs[p]));
            if !gaps_ok {
                continue;
            }
            let kept: Vec<usize> = (0..n).filter(|p| mask & (1 << p) != 0).map(|p| inputs[p]).collect();
            for len in 1..=kept.len() {
                out.insert(kept[..len].to_vec());
            }
        }
    }
    out
}

fn extend_tuples(
    cur: &mut Vec<usize>,
    object: usize,
    outgoing: &[Vec<usize>],
    labels: &[TwLabel],
    patterns: &HashSet<Vec<usize>>,
    visit: &mut dyn FnMut(&[usize]),
) {
    for &n in &outgoing[object] {
        cur.push(n);
        let bases: Vec<usize> = cur.iter().map(|&m| labels[m].base).collect();
        if patterns.contains(&bases) {
            visit(cur);
            extend_tuples(cur, labels[n].target, outgoing, labels, patterns, visit);
        }
        cur.pop();
    }
}

/// `b^Tw(x_1..x_k)` as a vector over twisted generators.
fn twisted_bar(
    cat: &AInftyCategory,
    complexes: &[TwistedComplex],
    xs: &[TwLabel],
    max: usize,
    index: &BTreeMap<TwLabel, usize>,
) -> Vector {
    let k = xs.len();
    let mut acc = Vector::new();
    let first = &complexes[xs[0].source];
    let last = &complexes[xs[k - 1].target];
    let budget = max.saturating_sub(k);

    // Middle segments are forced up to the choice of chain.
    let mut middles: Vec<Vec<Vec<i64>>> = Vec::with_capacity(k.saturating_sub(1));
    for l in 0..k - 1 {
        let t = &complexes[xs[l].target];
        let chains = t.chains_between(xs[l].j, xs[l + 1].i, budget);
        if chains.is_empty() {
            return acc;
        }
        middles.push(chains);
    }
    let prefixes: Vec<Vec<i64>> = first
        .family
        .keys()
        .filter(|&&p| p <= xs[0].i)
        .flat_map(|&p| first.chains_between(p, xs[0].i, budget))
        .collect();
    let suffixes: Vec<Vec<i64>> = last
        .family
        .keys()
        .filter(|&&e| e >= xs[k - 1].j)
        .flat_map(|&e| last.chains_between(xs[k - 1].j, e, budget))
        .collect();

    let unit_vectors: Vec<Vector> =
        xs.iter().map(|x| Vector::from([(x.base, Rational::from_integer(1.into()))])).collect();
    let mut choice = vec![0usize; middles.len()];
    loop {
        let middle_len: usize = (0..middles.len()).map(|l| middles[l][choice[l]].len() - 1).sum();
        for pre in &prefixes {
            for suf in &suffixes {
                let total = k + middle_len + pre.len() - 1 + suf.len() - 1;
                if total > max {
                    continue;
                }
                let mut args: Vec<&Vector> = first.chain_args(pre);
                for l in 0..k {
                    args.push(&unit_vectors[l]);
                    if l + 1 < k {
                        args.extend(complexes[xs[l].target].chain_args(&middles[l][choice[l]]));
                    }
                }
                args.extend(last.chain_args(suf));
                let p0 = pre[0];
                let e = *suf.last().expect("nonempty");
                let mut out = Vector::new();
                accumulate_bar(cat, &args, p0, &Rational::from_integer(1.into()), &mut out);
                for (g, c) in out {
                    let label = TwLabel { source: xs[0].source, i: p0, target: xs[k - 1].target, j: e, base: g };
                    add_to(&mut acc, index[&label], &c);
                }
            }
        }
        let mut pos = 0;
        while pos < choice.len() {
            choice[pos] += 1;
            if choice[pos] < middles[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
        if pos == choice.len() {
            break;
        }
    }
    acc
}
