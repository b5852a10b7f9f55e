//! Direct enumeration of monodromy tuples.

use std::thread;

use super::HurwitzError;
use crate::rational::{self, Rational};

/// Maximum number of `(α, β, τ_1, ..., τ_{b−1})` tuples visited.
///
/// Covers `d <= 6` with `b <= 2` and `d <= 5` with `b = 4`.
pub const BRUTEFORCE_BUDGET: u128 = 50_000_000;

const MAX_DEGREE: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Connectivity {
    All,
    /// Only tuples generating a transitive subgroup.
    Connected,
}

type Perm = [u8; MAX_DEGREE];

fn identity(d: usize) -> Perm {
    let mut p = [0u8; MAX_DEGREE];
    for (i, x) in p.iter_mut().enumerate().take(d) {
        *x = i as u8;
    }
    p
}

/// `(a ∘ b)(i) = a(b(i))`.
fn compose(a: &Perm, b: &Perm, d: usize) -> Perm {
    let mut out = [0u8; MAX_DEGREE];
    for i in 0..d {
        out[i] = a[b[i] as usize];
    }
    out
}

fn inverse(a: &Perm, d: usize) -> Perm {
    let mut out = [0u8; MAX_DEGREE];
    for i in 0..d {
        out[a[i] as usize] = i as u8;
    }
    out
}

fn all_perms(d: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur = identity(d);
    loop {
        out.push(cur);
        // next lexicographic permutation of cur[..d]
        let s = &mut cur[..d];
        let Some(i) = (1..d).rev().find(|&i| s[i - 1] < s[i]) else {
            break;
        };
        let j = (i..d).rev().find(|&j| s[j] > s[i - 1]).expect("successor exists");
        s.swap(i - 1, j);
        s[i..].reverse();
    }
    out
}

fn transpositions(d: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let mut t = identity(d);
            t.swap(i, j);
            out.push(t);
        }
    }
    out
}

fn is_transposition(p: &Perm, d: usize) -> bool {
    (0..d).filter(|&i| p[i] as usize != i).count() == 2
}

fn is_transitive(gens: &[&Perm], d: usize) -> bool {
    let mut parent: [u8; MAX_DEGREE] = identity(d);
    fn find(parent: &mut [u8; MAX_DEGREE], mut x: u8) -> u8 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    let mut components = d;
    for g in gens {
        for i in 0..d {
            let (a, b) = (find(&mut parent, i as u8), find(&mut parent, g[i]));
            if a != b {
                parent[a as usize] = b;
                components -= 1;
            }
        }
    }
    components == 1
}

/// Number of tuples the enumeration visits.
pub fn tuple_count(d: u32, b: u32) -> u128 {
    let fact = (1..=d as u128).product::<u128>();
    let pairs = (d as u128) * (d as u128).saturating_sub(1) / 2;
    fact * fact * pairs.pow(b.saturating_sub(1))
}

/// `#{(α, β, τ_1..τ_b) : [α,β] τ_1⋯τ_b = 1} / d!`, optionally restricted to
/// transitive tuples. The last transposition is forced, so only
/// `τ_1..τ_{b−1}` are enumerated. Work is split over `workers` threads by
/// the index of `α`; counts are summed as integers, so the result does not
/// depend on the split.
pub fn covers_bruteforce(d: u32, b: u32, connectivity: Connectivity, workers: usize) -> Result<Rational, HurwitzError> {
    if d == 0 {
        return Err(HurwitzError::DegreeZero);
    }
    let tuples = tuple_count(d, b);
    if d as usize > MAX_DEGREE || tuples > BRUTEFORCE_BUDGET {
        return Err(HurwitzError::BudgetExceeded { tuples, budget: BRUTEFORCE_BUDGET });
    }
    let du = d as usize;
    let perms = all_perms(du);
    let taus = transpositions(du);
    let workers = workers.max(1);
    let id = identity(du);

    let count_for = |alpha: &Perm| -> u64 {
        let alpha_inv = inverse(alpha, du);
        let mut count = 0u64;
        let mut chosen: Vec<usize> = vec![0; b.saturating_sub(1) as usize];
        for beta in &perms {
            let comm = compose(&compose(alpha, beta, du), &compose(&alpha_inv, &inverse(beta, du), du), du);
            if b == 0 {
                if comm == id && (connectivity == Connectivity::All || is_transitive(&[alpha, beta], du)) {
                    count += 1;
                }
                continue;
            }
            if taus.is_empty() {
                continue;
            }
            chosen.iter_mut().for_each(|c| *c = 0);
            loop {
                let mut x = comm;
                for &t in &chosen {
                    x = compose(&x, &taus[t], du);
                }
                if is_transposition(&x, du) {
                    let ok = match connectivity {
                        Connectivity::All => true,
                        Connectivity::Connected => {
                            let mut gens: Vec<&Perm> = vec![alpha, beta, &x];
                            gens.extend(chosen.iter().map(|&t| &taus[t]));
                            is_transitive(&gens, du)
                        }
                    };
                    if ok {
                        count += 1;
                    }
                }
                // odometer over τ_1..τ_{b−1}
                let mut pos = 0;
                loop {
                    if pos == chosen.len() {
                        break;
                    }
                    chosen[pos] += 1;
                    if chosen[pos] < taus.len() {
                        break;
                    }
                    chosen[pos] = 0;
                    pos += 1;
                }
                if pos == chosen.len() {
                    break;
                }
            }
        }
        count
    };

    let total: u64 = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let perms = &perms;
                let count_for = &count_for;
                scope.spawn(move || perms.iter().skip(w).step_by(workers).map(count_for).sum::<u64>())
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).sum()
    });
    Ok(Rational::new(total.into(), rational::factorial(d as u64)))
}
