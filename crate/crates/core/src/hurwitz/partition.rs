use serde::Serialize;

use crate::rational::{rat, Rational};

/// Weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// All partitions of `d`, in reverse lexicographic order.
pub fn partitions(d: u32) -> Vec<Partition> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, d, &mut Vec::new(), &mut out);
    out
}

/// `f_2(λ) = Σ_i λ_i (λ_i − 2i + 1) / 2` with rows numbered from 1.
pub fn central_character_f2(p: &Partition) -> Rational {
    let twice: i64 = p
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            let l = l as i64;
            l * (l - 2 * (i as i64 + 1) + 1)
        })
        .sum();
    rat(twice, 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn counts() {
        let sizes: Vec<usize> = (0..=8).map(|d| partitions(d).len()).collect();
        assert_eq!(sizes, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
        assert!(partitions(6).iter().all(|p| p.size() == 6));
    }

    #[test]
    fn f2_values() {
        assert_eq!(central_character_f2(&Partition::new(vec![2])), int(1));
        assert_eq!(central_character_f2(&Partition::new(vec![1, 1])), int(-1));
        assert_eq!(central_character_f2(&Partition::new(vec![1])), int(0));
        // Conjugate partitions have opposite f_2.
        assert_eq!(central_character_f2(&Partition::new(vec![3, 1])), int(2));
        assert_eq!(central_character_f2(&Partition::new(vec![2, 1, 1])), int(-2));
    }
}
