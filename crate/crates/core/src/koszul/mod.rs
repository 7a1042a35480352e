//! Exterior and symmetric powers, the Koszul bicomplex of `(ψ, φ)` and the
//! complexes built from it.
//!
//! Notation: `ψ: G -> F` with `rank F = m`, `rank G = n`, `r = n - m`;
//! `χ: G* -> R` is a linear form with `χ ψ* = 0` and `φ = χ*: R -> G`.
//! Every construction lives on explicit bases: exterior powers on increasing
//! index tuples, symmetric powers on exponent vectors (see [`basis`]).

pub mod basis;
mod bicomplex;
mod complexes;

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{GradedFreeModule, PolyMatrix};
use crate::modcore::{fitting_ideal, minor, subsets};
use crate::polyring::{PolyRing, Polynomial};

pub use basis::{ExtBasis, SymBasis};
pub use bicomplex::{build_bicomplex, koszul_blocks, Bicomplex, BicomplexCell};
pub use complexes::{
    buchsbaum_rim_head, explicit_chi, exterior_power_presentation_of_m, n_complex, n_module, nu_map, nu_mu_maps,
    remark2_cell_via_tensor, remark2_complex, self_duality_maps, sym_power_of_cokernel, truncated_koszul_chi,
    BuchsbaumRimHead, CommutingSquare, SelfDuality,
};

/// The data `(ψ, χ)` together with the grading bookkeeping shared by all
/// constructions.
///
/// `a`, `b` are the twists of `F`, `G`. `c = b_j + deg χ_j` is the common
/// degree of `φ(1)`. Cells of the bicomplex carry the extra global shift
/// `s = r c + Σa - Σb`, which makes the comparison maps `ν_p` homogeneous of
/// degree zero.
#[derive(Clone, Debug)]
pub struct KoszulSetup {
    pub ring: Arc<PolyRing>,
    pub psi: PolyMatrix,
    pub chi: PolyMatrix,
    pub phi: PolyMatrix,
    pub m: usize,
    pub n: usize,
    pub r: usize,
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub c: i64,
    pub s: i64,
}

impl KoszulSetup {
    /// Validates homogeneity of `χ` against the twists of `ψ` and certifies
    /// `χ ψ* = 0`.
    pub fn new(psi: &PolyMatrix, chi: &[Polynomial]) -> Result<Self> {
        let ring = psi.ring().clone();
        let (m, n) = (psi.nrows(), psi.ncols());
        if chi.len() != n {
            return Err(Error::Structural(format!("chi has {} entries, expected {n}", chi.len())));
        }
        if n <= m {
            return Err(Error::InvalidArgument(format!("need n > m, got m = {m}, n = {n}")));
        }
        let a = psi.target().twists().to_vec();
        let b = psi.source().twists().to_vec();
        let mut c = None;
        for (j, p) in chi.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if !p.is_homogeneous() {
                return Err(Error::NotHomogeneous {
                    row: 0,
                    col: j,
                    detail: format!("chi entry {p} is not homogeneous"),
                });
            }
            let cj = b[j] + p.degree().expect("nonzero") as i64;
            match c {
                None => c = Some(cj),
                Some(c0) if c0 != cj => {
                    return Err(Error::NotHomogeneous {
                        row: 0,
                        col: j,
                        detail: format!("chi entry has total degree {cj}, expected {c0}"),
                    })
                }
                _ => {}
            }
        }
        let c = c.unwrap_or(0);
        let chi_m = PolyMatrix::new(
            &ring,
            psi.source().dual(),
            GradedFreeModule::new(vec![-c]),
            vec![chi.to_vec()],
        )?;
        let phi = chi_m.transpose();
        if !psi.mul(&phi)?.is_zero() {
            return Err(Error::InvalidArgument("chi does not vanish on the image of psi*".into()));
        }
        let r = n - m;
        let s = r as i64 * c + a.iter().sum::<i64>() - b.iter().sum::<i64>();
        Ok(KoszulSetup {
            ring,
            psi: psi.clone(),
            chi: chi_m,
            phi,
            m,
            n,
            r,
            a,
            b,
            c,
            s,
        })
    }

    /// `ψ*: F* -> G*`.
    pub fn psi_star(&self) -> PolyMatrix {
        self.psi.transpose()
    }

    /// Entries of `χ` as polynomials.
    pub fn chi_entries(&self) -> Vec<Polynomial> {
        self.chi.row(0)
    }

    /// Generators of `I_M`, the ideal of maximal minors of `ψ`.
    pub fn minor_ideal(&self) -> Vec<Polynomial> {
        fitting_ideal(&self.psi, self.m).expect("m <= n")
    }

    /// Twists of the cell `M^{p,q} = ∧^{p-q}G ⊗ S^qF` in basis order.
    pub fn cell_module(&self, p: usize, q: usize) -> GradedFreeModule {
        cell_module(&self.a, &self.b, self.c, self.s, p, q)
    }

    /// Twists of `∧^p G*` as the ambient module of `∧^p M`.
    pub fn ext_dual_module(&self, p: usize) -> GradedFreeModule {
        let e = ExtBasis::new(self.n, p);
        GradedFreeModule::new(
            e.weights(&self.b)
                .into_iter()
                .map(|w| -w + p as i64 * self.c)
                .collect(),
        )
    }

    /// The maximal minors `w_K` of `ψ` keyed by column tuple `K`, i.e. the
    /// coordinates of `ψ*(e_1) ∧ ... ∧ ψ*(e_m)`.
    pub fn top_wedge(&self) -> HashMap<Vec<usize>, Polynomial> {
        let rows: Vec<usize> = (0..self.m).collect();
        subsets(self.n, self.m)
            .into_iter()
            .map(|k| {
                let w = minor(&self.psi, &rows, &k);
                (k, w)
            })
            .collect()
    }
}

pub(crate) fn cell_module(a: &[i64], b: &[i64], c: i64, s: i64, p: usize, q: usize) -> GradedFreeModule {
    if q > p || p - q > b.len() {
        return GradedFreeModule::zero();
    }
    let e = ExtBasis::new(b.len(), p - q);
    let sy = SymBasis::new(a.len(), q);
    let ew = e.weights(b);
    let sw = sy.weights(a);
    let mut t = Vec::with_capacity(ew.len() * sw.len());
    for x in &ew {
        for y in &sw {
            t.push(x + y - p as i64 * c + s);
        }
    }
    GradedFreeModule::new(t)
}

/// `∧^k A` on increasing-tuple bases: entry `(I, J)` is the minor of `A` on
/// rows `I` and columns `J`.
pub fn wedge_power_map(a: &PolyMatrix, k: usize) -> PolyMatrix {
    let ring = a.ring();
    let rows_b = ExtBasis::new(a.nrows(), k);
    let cols_b = ExtBasis::new(a.ncols(), k);
    let source = GradedFreeModule::new(cols_b.weights(a.source().twists()));
    let target = GradedFreeModule::new(rows_b.weights(a.target().twists()));
    let rows = rows_b
        .tuples
        .iter()
        .map(|i| cols_b.tuples.iter().map(|j| minor(a, i, j)).collect())
        .collect();
    PolyMatrix::new(ring, source, target, rows).expect("minors of a homogeneous matrix are homogeneous")
}

pub(crate) fn signed(p: &Polynomial, sign: i64) -> Polynomial {
    if sign >= 0 {
        p.clone()
    } else {
        -p
    }
}

pub(crate) fn zero_rows(ring: &Arc<PolyRing>, nrows: usize, ncols: usize) -> Vec<Vec<Polynomial>> {
    vec![vec![Polynomial::zero(ring); ncols]; nrows]
}

pub(crate) fn accumulate(rows: &mut [Vec<Polynomial>], i: usize, j: usize, p: &Polynomial, sign: i64) {
    if p.is_zero() || sign == 0 {
        return;
    }
    let cur = &rows[i][j];
    rows[i][j] = if sign > 0 { cur + p } else { cur - p };
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{GroundField, MonomialOrder};

    fn ring(names: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(
            GroundField::default(),
            names.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::Grevlex,
        )
        .unwrap()
    }

    #[test]
    fn wedge_powers() {
        let r = ring(&["x1", "x2", "x3", "x4", "y1", "y2", "y3", "y4"]);
        let v = |i| Polynomial::var(&r, i);
        let a = PolyMatrix::with_inferred_twists(&r, vec![(0..4).map(v).collect(), (4..8).map(v).collect()])
            .unwrap();
        let w = wedge_power_map(&a, 2);
        assert_eq!((w.nrows(), w.ncols()), (1, 6));
        assert_eq!(w.row(0), fitting_ideal(&a, 2).unwrap());
        let id = PolyMatrix::identity(&r, &GradedFreeModule::new(vec![0, 1, 2]));
        assert_eq!(wedge_power_map(&id, 2), PolyMatrix::identity(&r, &GradedFreeModule::new(vec![1, 2, 3])));
        let sq = a.select_columns(&[0, 1]);
        let d = wedge_power_map(&sq, 2);
        assert_eq!(d.entry(0, 0), &minor(&sq, &[0, 1], &[0, 1]));
    }

    #[test]
    fn setup_grading() {
        let r = ring(&["X", "Y"]);
        let (x, y) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1));
        let psi = PolyMatrix::with_inferred_twists(&r, vec![vec![x.clone(), y.clone()]]).unwrap();
        let k = KoszulSetup::new(&psi, &[-&y, x.clone()]).unwrap();
        assert_eq!((k.m, k.n, k.r), (1, 2, 1));
        assert_eq!(k.c, k.b[0] + 1);
        assert!(KoszulSetup::new(&psi, &[y.clone(), x.clone()]).is_err());
        assert!(KoszulSetup::new(&psi, &[x.clone(), &x * &x]).is_err());
    }
}
