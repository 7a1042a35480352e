use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{GradedFreeModule, PolyMatrix};
use crate::modcore::{ChainComplex, ModuleMap, Subquotient};

use super::basis::{wedge_insert, ExtBasis, SymBasis};
use super::{accumulate, cell_module, zero_rows, KoszulSetup};

/// One cell `M^{p,q}` with its outgoing maps: `east = d_φ` to `M^{p+1,q}`
/// and `south = ∂_ψ` to `M^{p,q+1}`.
#[derive(Clone, Debug)]
pub struct BicomplexCell {
    pub p: usize,
    pub q: usize,
    pub module: GradedFreeModule,
    pub east: PolyMatrix,
    pub south: PolyMatrix,
}

/// Cells `0 <= q <= p <= p_max` of the Koszul bicomplex, certified.
#[derive(Clone, Debug)]
pub struct Bicomplex {
    pub p_max: usize,
    pub cells: BTreeMap<(usize, usize), BicomplexCell>,
    ring: Arc<crate::polyring::PolyRing>,
}

/// `d_φ` and `∂_ψ` out of `M^{p,q}` with cell twists shifted by `shift`.
fn blocks(
    psi: &PolyMatrix,
    phi: &PolyMatrix,
    c: i64,
    shift: i64,
    p: usize,
    q: usize,
) -> Result<(PolyMatrix, PolyMatrix)> {
    let ring = psi.ring();
    let (m, n) = (psi.nrows(), psi.ncols());
    let a = psi.target().twists();
    let b = psi.source().twists();
    if q > p || p - q > n {
        return Err(Error::InvalidArgument(format!("no cell M^({p},{q})")));
    }
    let k = p - q;
    let src = cell_module(a, b, c, shift, p, q);
    let e_src = ExtBasis::new(n, k);
    let s_src = SymBasis::new(m, q);

    let east_tgt = cell_module(a, b, c, shift, p + 1, q);
    let mut east = zero_rows(ring, east_tgt.rank(), src.rank());
    if k < n {
        let e_tgt = ExtBasis::new(n, k + 1);
        for (ii, tuple) in e_src.tuples.iter().enumerate() {
            for j in 0..n {
                let coef = phi.entry(j, 0);
                if let Some((sign, t)) = wedge_insert(j, tuple) {
                    let jj = e_tgt.index_of(&t);
                    for al in 0..s_src.len() {
                        accumulate(&mut east, jj * s_src.len() + al, ii * s_src.len() + al, coef, sign);
                    }
                }
            }
        }
    }

    let south_tgt = if k == 0 {
        GradedFreeModule::zero()
    } else {
        cell_module(a, b, c, shift, p, q + 1)
    };
    let mut south = zero_rows(ring, south_tgt.rank(), src.rank());
    if k > 0 {
        let e_tgt = ExtBasis::new(n, k - 1);
        let s_tgt = SymBasis::new(m, q + 1);
        for (ii, tuple) in e_src.tuples.iter().enumerate() {
            for (t, &j) in tuple.iter().enumerate() {
                let sign = if t % 2 == 0 { 1 } else { -1 };
                let mut rest = tuple.clone();
                rest.remove(t);
                let jj = e_tgt.index_of(&rest);
                for (al, alpha) in s_src.exps.iter().enumerate() {
                    for i in 0..m {
                        let mut beta = alpha.clone();
                        beta[i] += 1;
                        let bb = s_tgt.index_of(&beta);
                        accumulate(
                            &mut south,
                            jj * s_tgt.len() + bb,
                            ii * s_src.len() + al,
                            psi.entry(i, j),
                            sign,
                        );
                    }
                }
            }
        }
    }
    let east = PolyMatrix::new(ring, src.clone(), east_tgt, east)?;
    let south = PolyMatrix::new(ring, src, south_tgt, south)?;
    Ok((east, south))
}

/// `(d_φ, ∂_ψ)` out of the cell `M^{p,q} = ∧^{p-q}G ⊗ S^qF`, where `φ`
/// is a single column `R(-c) -> G`. Cell twists are
/// `Σ b_I + Σ α_i a_i - p c`.
pub fn koszul_blocks(psi: &PolyMatrix, phi: &PolyMatrix, p: usize, q: usize) -> Result<(PolyMatrix, PolyMatrix)> {
    if phi.ncols() != 1 || phi.target() != psi.source() {
        return Err(Error::Structural("phi must be a single column into the source of psi".into()));
    }
    blocks(psi, phi, phi.source().twist(0), 0, p, q)
}

/// Builds and certifies every cell with `q <= p <= p_max`: rows and columns
/// square to zero and the two differentials anticommute.
pub fn build_bicomplex(setup: &KoszulSetup, p_max: usize) -> Result<Bicomplex> {
    let mut cells = BTreeMap::new();
    for p in 0..=p_max {
        for q in 0..=p {
            if p - q > setup.n {
                continue;
            }
            let (east, south) = blocks(&setup.psi, &setup.phi, setup.c, setup.s, p, q)?;
            cells.insert(
                (p, q),
                BicomplexCell {
                    p,
                    q,
                    module: setup.cell_module(p, q),
                    east,
                    south,
                },
            );
        }
    }
    let bc = Bicomplex {
        p_max,
        cells,
        ring: setup.ring.clone(),
    };
    bc.certify()?;
    Ok(bc)
}

impl Bicomplex {
    fn certify(&self) -> Result<()> {
        let fail = |what: &str, p: usize, q: usize| Error::Invariant(format!("{what} fails at cell ({p}, {q})"));
        for (&(p, q), cell) in &self.cells {
            let next_e = self.cells.get(&(p + 1, q));
            let next_s = self.cells.get(&(p, q + 1));
            if let Some(e) = next_e {
                if !e.east.mul(&cell.east)?.is_zero() {
                    return Err(fail("d_phi squared", p, q));
                }
            }
            if let Some(s) = next_s {
                if !s.south.mul(&cell.south)?.is_zero() {
                    return Err(fail("d_psi squared", p, q));
                }
            }
            if let (Some(e), Some(s)) = (next_e, next_s) {
                let lhs = e.south.mul(&cell.east)?;
                let rhs = s.east.mul(&cell.south)?;
                if !lhs.add(&rhs)?.is_zero() {
                    return Err(fail("anticommutation", p, q));
                }
            }
        }
        Ok(())
    }

    /// Number of anticommuting squares checked at construction.
    pub fn square_count(&self) -> usize {
        self.cells
            .keys()
            .filter(|&&(p, q)| self.cells.contains_key(&(p + 1, q)) && self.cells.contains_key(&(p, q + 1)))
            .count()
    }

    pub fn ring(&self) -> &Arc<crate::polyring::PolyRing> {
        &self.ring
    }

    pub fn cell(&self, p: usize, q: usize) -> Option<&BicomplexCell> {
        self.cells.get(&(p, q))
    }

    fn free(&self, p: usize, q: usize) -> Arc<Subquotient> {
        let module = self
            .cells
            .get(&(p, q))
            .map(|c| c.module.clone())
            .unwrap_or_else(GradedFreeModule::zero);
        Arc::new(Subquotient::free(&self.ring, &module))
    }

    /// Column `p`: `M^{p,0} -> M^{p,1} -> ... -> M^{p,p}` under `∂_ψ`,
    /// labelled by `q`.
    pub fn column(&self, p: usize) -> Result<ChainComplex> {
        let qs: Vec<usize> = (0..=p).filter(|&q| self.cells.contains_key(&(p, q))).collect();
        let mut maps = Vec::new();
        let mut prev = self.free(p, qs[0]);
        for w in qs.windows(2) {
            let next = self.free(p, w[1]);
            let mat = self.cells[&(p, w[0])].south.clone();
            maps.push(ModuleMap::new(prev.clone(), next.clone(), mat)?);
            prev = next;
        }
        if maps.is_empty() {
            let mat = self.cells[&(p, qs[0])].south.clone();
            let zero = Arc::new(Subquotient::free(&self.ring, mat.target()));
            maps.push(ModuleMap::new(prev, zero, mat)?);
            return ChainComplex::new(maps, vec![qs[0] as i64, qs[0] as i64 + 1]);
        }
        ChainComplex::new(maps, qs.iter().map(|&q| q as i64).collect())
    }

    /// Row `q`: `M^{q,q} -> M^{q+1,q} -> ...` under `d_φ` up to `p_max`,
    /// labelled by `p`.
    pub fn row(&self, q: usize) -> Result<ChainComplex> {
        let ps: Vec<usize> = (q..=self.p_max).filter(|&p| self.cells.contains_key(&(p, q))).collect();
        if ps.len() < 2 {
            return Err(Error::InvalidArgument(format!("row {q} has fewer than two cells")));
        }
        let mut maps = Vec::new();
        for w in ps.windows(2) {
            let mat = self.cells[&(w[0], q)].east.clone();
            maps.push(ModuleMap::new(self.free(w[0], q), self.free(w[1], q), mat)?);
        }
        ChainComplex::new(maps, ps.iter().map(|&p| p as i64).collect())
    }
}
