//! Bases of exterior and symmetric powers of free modules.

use std::collections::HashMap;

use crate::modcore::subsets;

/// Basis of `∧^k` of a rank-`n` free module: strictly increasing index
/// tuples in lexicographic order.
#[derive(Clone, Debug)]
pub struct ExtBasis {
    pub n: usize,
    pub k: usize,
    pub tuples: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl ExtBasis {
    pub fn new(n: usize, k: usize) -> Self {
        let tuples = if k > n { Vec::new() } else { subsets(n, k) };
        let index = tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        ExtBasis { n, k, tuples, index }
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn index_of(&self, t: &[usize]) -> usize {
        self.index[t]
    }

    /// Sum of `weights` over each tuple.
    pub fn weights(&self, weights: &[i64]) -> Vec<i64> {
        self.tuples
            .iter()
            .map(|t| t.iter().map(|&i| weights[i]).sum())
            .collect()
    }
}

/// `e_j ∧ e_I = sign * e_{I ∪ j}`; `None` when `j ∈ I`.
pub fn wedge_insert(j: usize, tuple: &[usize]) -> Option<(i64, Vec<usize>)> {
    if tuple.contains(&j) {
        return None;
    }
    let before = tuple.iter().filter(|&&x| x < j).count();
    let mut out = tuple.to_vec();
    out.insert(before, j);
    Some((if before % 2 == 0 { 1 } else { -1 }, out))
}

/// Sign of the permutation sorting the concatenation of disjoint tuples;
/// `0` if they overlap.
pub fn concat_sign(parts: &[&[usize]]) -> i64 {
    let all: Vec<usize> = parts.iter().flat_map(|p| p.iter().copied()).collect();
    let mut inversions = 0usize;
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            if all[i] == all[j] {
                return 0;
            }
            if all[i] > all[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Basis of `S^q` of a rank-`m` free module: exponent vectors of total
/// degree `q` in descending lexicographic order.
#[derive(Clone, Debug)]
pub struct SymBasis {
    pub m: usize,
    pub q: usize,
    pub exps: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl SymBasis {
    pub fn new(m: usize, q: usize) -> Self {
        let mut exps = Vec::new();
        let mut cur = vec![0u32; m];
        fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if pos + 1 == cur.len() {
                cur[pos] = left;
                out.push(cur.clone());
                return;
            }
            for e in (0..=left).rev() {
                cur[pos] = e;
                rec(pos + 1, left - e, cur, out);
            }
        }
        if m > 0 {
            rec(0, q as u32, &mut cur, &mut exps);
        } else if q == 0 {
            exps.push(Vec::new());
        }
        let index = exps.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        SymBasis { m, q, exps, index }
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn index_of(&self, e: &[u32]) -> usize {
        self.index[e]
    }

    pub fn weights(&self, weights: &[i64]) -> Vec<i64> {
        self.exps
            .iter()
            .map(|e| e.iter().zip(weights).map(|(&x, &w)| x as i64 * w).sum())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bases_and_signs() {
        let e = ExtBasis::new(4, 2);
        assert_eq!(e.len(), 6);
        assert_eq!(e.tuples[0], vec![0, 1]);
        assert_eq!(e.index_of(&[2, 3]), 5);
        assert_eq!(wedge_insert(0, &[1, 2]), Some((1, vec![0, 1, 2])));
        assert_eq!(wedge_insert(2, &[0, 1]), Some((1, vec![0, 1, 2])));
        assert_eq!(wedge_insert(1, &[0, 2]), Some((-1, vec![0, 1, 2])));
        assert_eq!(wedge_insert(1, &[1]), None);
        assert_eq!(concat_sign(&[&[1], &[0]]), -1);
        assert_eq!(concat_sign(&[&[0, 2], &[1], &[3]]), -1);
        assert_eq!(concat_sign(&[&[0], &[0]]), 0);
        let s = SymBasis::new(2, 2);
        assert_eq!(s.exps, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(SymBasis::new(3, 2).len(), 6);
        assert_eq!(SymBasis::new(0, 0).len(), 1);
        assert_eq!(ExtBasis::new(2, 3).len(), 0);
        assert_eq!(ExtBasis::new(3, 0).len(), 1);
    }
}
