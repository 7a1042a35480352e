//! Exact linear algebra over a prime field.
//!
//! The degreewise oracle only ever needs ranks, so the sparse side is an
//! incremental row-echelon structure: vectors are inserted one by one and
//! reduced against the pivots found so far.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::polyring::GroundField;

/// Sparse vector as `(index, nonzero value)` pairs sorted by index.
pub type SparseVec = Vec<(u32, u32)>;

/// Incremental echelon form of a set of sparse vectors in `k^dim`.
pub struct Echelon {
    field: GroundField,
    pivots: Vec<Option<SparseVec>>,
    rank: usize,
    dense: Vec<u32>,
    touched: Vec<u32>,
    heap: BinaryHeap<Reverse<u32>>,
}

impl Echelon {
    pub fn new(field: GroundField, dim: usize) -> Self {
        Echelon {
            field,
            pivots: vec![None; dim],
            rank: 0,
            dense: vec![0; dim],
            touched: Vec::new(),
            heap: BinaryHeap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Inserts `v`; returns `true` iff it was independent of the vectors
    /// inserted before.
    pub fn insert(&mut self, v: &[(u32, u32)]) -> bool {
        let k = self.field;
        for &(i, x) in v {
            if self.dense[i as usize] == 0 {
                self.touched.push(i);
                self.heap.push(Reverse(i));
            }
            self.dense[i as usize] = k.add(self.dense[i as usize], x);
        }
        let mut new_pivot = None;
        while let Some(Reverse(i)) = self.heap.pop() {
            let c = self.dense[i as usize];
            if c == 0 {
                continue;
            }
            match &self.pivots[i as usize] {
                Some(piv) => {
                    let neg = k.neg(c);
                    for &(j, y) in piv {
                        let slot = &mut self.dense[j as usize];
                        if *slot == 0 {
                            self.touched.push(j);
                            self.heap.push(Reverse(j));
                        }
                        *slot = k.add(*slot, k.mul(neg, y));
                    }
                    debug_assert_eq!(self.dense[i as usize], 0);
                }
                None => {
                    new_pivot = Some((i, c));
                    break;
                }
            }
        }
        let independent = if let Some((lead, c)) = new_pivot {
            let inv = k.inv(c);
            let mut row: SparseVec = self
                .touched
                .iter()
                .filter(|&&j| self.dense[j as usize] != 0)
                .map(|&j| (j, k.mul(inv, self.dense[j as usize])))
                .collect();
            row.sort_unstable_by_key(|t| t.0);
            row.dedup_by_key(|t| t.0);
            debug_assert_eq!(row[0].0, lead);
            self.pivots[lead as usize] = Some(row);
            self.rank += 1;
            true
        } else {
            false
        };
        for &j in &self.touched {
            self.dense[j as usize] = 0;
        }
        self.touched.clear();
        self.heap.clear();
        independent
    }
}

/// Rank of a family of sparse vectors in `k^dim`.
pub fn sparse_rank(field: GroundField, dim: usize, vecs: &[SparseVec]) -> usize {
    let mut order: Vec<usize> = (0..vecs.len()).collect();
    order.sort_by_key(|&i| (vecs[i].len(), vecs[i].first().map(|t| t.0)));
    let mut ech = Echelon::new(field, dim);
    for i in order {
        if !vecs[i].is_empty() {
            ech.insert(&vecs[i]);
        }
        if ech.rank() == dim {
            break;
        }
    }
    ech.rank()
}

/// Rank of a dense row-major matrix by Gaussian elimination.
pub fn dense_rank(field: GroundField, mut rows: Vec<Vec<u32>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = field.inv(rows[rank][col]);
        for x in rows[rank].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let c = field.neg(row[col]);
            for (x, &p) in row.iter_mut().zip(&pivot_row) {
                if p != 0 {
                    *x = field.add(*x, field.mul(c, p));
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn to_sparse(row: &[u32]) -> SparseVec {
        row.iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| (i as u32, x))
            .collect()
    }

    #[test]
    fn small_ranks() {
        let k = GroundField::new(7).unwrap();
        let rows = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(dense_rank(k, rows.clone()), 2);
        let sp: Vec<_> = rows.iter().map(|r| to_sparse(r)).collect();
        assert_eq!(sparse_rank(k, 3, &sp), 2);
        assert_eq!(sparse_rank(k, 3, &[]), 0);
    }

    proptest! {
        #[test]
        fn sparse_agrees_with_dense(rows in prop::collection::vec(prop::collection::vec(0u32..5, 6), 0..9)) {
            let k = GroundField::new(5).unwrap();
            let sp: Vec<_> = rows.iter().map(|r| to_sparse(r)).collect();
            prop_assert_eq!(sparse_rank(k, 6, &sp), dense_rank(k, rows.clone()));
        }
    }
}
