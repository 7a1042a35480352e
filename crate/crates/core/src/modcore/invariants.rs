use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{GradedFreeModule, GroebnerBasis, PolyMatrix};
use crate::linalg::dense_rank;
use crate::polyring::{PolyRing, Polynomial};

use super::Subquotient;

/// Hilbert function, Krull dimension and (for cyclic modules) grade.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertData {
    pub hilbert: Vec<usize>,
    /// `None` for the zero module.
    pub krull_dim: Option<usize>,
    /// Grade of `I` for `R/I`; `None` when `I` is the unit ideal.
    pub grade: Option<usize>,
}

/// Hilbert function on `0..=degree_bound`, Krull dimension, and the grade of
/// `I` when `m` is a cyclic module `R/I`.
pub fn hilbert_dim_grade(m: &Subquotient, degree_bound: i64, want_grade: bool) -> Result<HilbertData> {
    let hilbert = m.hilbert_vector(0, degree_bound);
    let krull_dim = if m.is_zero() {
        None
    } else {
        m.annihilator().quotient_krull_dim()
    };
    let grade = if want_grade {
        let unit = m.ambient().rank() == 1 && m.gens_gb().is_everything();
        if !unit {
            return Err(Error::InvalidArgument(
                "grade is only defined for cyclic modules R/I".into(),
            ));
        }
        m.rels_gb()
            .quotient_krull_dim()
            .map(|d| m.ring().nvars() - d)
    } else {
        None
    };
    Ok(HilbertData {
        hilbert,
        krull_dim,
        grade,
    })
}

/// Grade of the ideal generated by `polys` (its height, as `R` is
/// Cohen–Macaulay). `None` for the unit ideal.
pub fn ideal_grade(ring: &Arc<PolyRing>, polys: &[Polynomial]) -> Result<Option<usize>> {
    let cols: Vec<Vec<Polynomial>> = polys.iter().map(|p| vec![p.clone()]).collect();
    let a = PolyMatrix::from_columns_inferred(ring, GradedFreeModule::free(1), cols, 0)?;
    let gb = GroebnerBasis::compute(&a);
    Ok(gb.quotient_krull_dim().map(|d| ring.nvars() - d))
}

/// Determinant of the submatrix on `rows` x `cols` by Laplace expansion
/// along the first row.
pub fn minor(a: &PolyMatrix, rows: &[usize], cols: &[usize]) -> Polynomial {
    let ring = a.ring();
    match rows.len() {
        0 => Polynomial::one(ring),
        1 => a.entry(rows[0], cols[0]).clone(),
        _ => {
            let mut acc = Polynomial::zero(ring);
            for (k, &c) in cols.iter().enumerate() {
                let e = a.entry(rows[0], c);
                if e.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let sub = &minor(a, &rows[1..], &rest) * e;
                acc = if k % 2 == 0 { &acc + &sub } else { &acc - &sub };
            }
            acc
        }
    }
}

/// Increasing `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Generators of the ideal of `size`-minors of `a` (nonzero, deduplicated,
/// in the order rows-then-columns of the index tuples).
pub fn fitting_ideal(a: &PolyMatrix, size: usize) -> Result<Vec<Polynomial>> {
    if size > a.nrows().min(a.ncols()) {
        return Err(Error::InvalidArgument(format!(
            "no {size}-minors in a {}x{} matrix",
            a.nrows(),
            a.ncols()
        )));
    }
    let mut out: Vec<Polynomial> = Vec::new();
    for r in subsets(a.nrows(), size) {
        for c in subsets(a.ncols(), size) {
            let m = minor(a, &r, &c);
            if !m.is_zero() && !out.contains(&m) {
                out.push(m);
            }
        }
    }
    Ok(out)
}

fn rank_at(m: &PolyMatrix, point: &[u32], field: crate::polyring::GroundField) -> Result<usize> {
    if m.ncols() == 0 || m.nrows() == 0 {
        return Ok(0);
    }
    Ok(dense_rank(field, m.eval_at(point)?))
}

/// Generic rank of a polynomial matrix: the largest size of a nonzero minor.
fn generic_rank_by_minors(a: &PolyMatrix) -> usize {
    let top = a.nrows().min(a.ncols());
    for k in (1..=top).rev() {
        for r in subsets(a.nrows(), k) {
            for c in subsets(a.ncols(), k) {
                if !minor(a, &r, &c).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

/// Rank over the fraction field: `rank(gens) - rank(rels)` evaluated at
/// random points. Three points are drawn per round; a unanimous value is
/// returned, otherwise up to three rounds are retried before falling back
/// to exact minors (ambient rank at most 6).
pub fn module_rank(m: &Subquotient, seed: u64) -> Result<usize> {
    let ring = m.ring();
    let field = ring.field();
    let p = field.characteristic();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..3 {
        let mut values = Vec::with_capacity(3);
        for _ in 0..3 {
            let point: Vec<u32> = (0..ring.nvars()).map(|_| rng.gen_range(0..p)).collect();
            let g = rank_at(m.generators(), &point, field)?;
            let r = rank_at(m.relations(), &point, field)?;
            values.push(g.saturating_sub(r));
        }
        if values.iter().all(|&v| v == values[0]) {
            return Ok(values[0]);
        }
    }
    if m.ambient().rank() <= 6 {
        return Ok(generic_rank_by_minors(m.generators()) - generic_rank_by_minors(m.relations()));
    }
    Err(Error::RankDisagreement(
        "random evaluations disagree; use a smaller ambient module for the exact fallback".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_polynomial, GroundField, MonomialOrder};

    fn ring(names: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(
            GroundField::default(),
            names.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::Grevlex,
        )
        .unwrap()
    }

    #[test]
    fn grades_and_dimensions() {
        let r = ring(&["X", "Y"]);
        let p = |s| parse_polynomial(&r, s).unwrap();
        let m = Subquotient::cyclic(&r, &[p("X"), p("Y")]).unwrap();
        let h = hilbert_dim_grade(&m, 3, true).unwrap();
        assert_eq!(h.hilbert, vec![1, 0, 0, 0]);
        assert_eq!(h.krull_dim, Some(0));
        assert_eq!(h.grade, Some(2));
        assert_eq!(ideal_grade(&r, &[p("X"), p("X")]).unwrap(), Some(1));
        assert_eq!(ideal_grade(&r, &[p("1")]).unwrap(), None);
        let free = Subquotient::free(&r, &GradedFreeModule::new(vec![0, 0]));
        assert!(hilbert_dim_grade(&free, 2, true).is_err());
        assert_eq!(module_rank(&free, 1).unwrap(), 2);
    }

    #[test]
    fn minors_of_generic_matrix() {
        let names = ["x1", "x2", "x3", "x4", "y1", "y2", "y3", "y4"];
        let r = ring(&names);
        let v = |i| Polynomial::var(&r, i);
        let rows = vec![(0..4).map(v).collect(), (4..8).map(v).collect()];
        let a = PolyMatrix::with_inferred_twists(&r, rows).unwrap();
        let f = fitting_ideal(&a, 2).unwrap();
        assert_eq!(f.len(), 6);
        assert_eq!(f[0].to_string(), "-x2*y1+x1*y2");
        assert_eq!(ideal_grade(&r, &f).unwrap(), Some(3));
        let id = PolyMatrix::identity(&r, &GradedFreeModule::free(2));
        let d = fitting_ideal(&id, 2).unwrap();
        assert_eq!(d.len(), 1);
        assert!(d[0].is_constant());
        assert!(fitting_ideal(&id, 3).is_err());
    }
}
