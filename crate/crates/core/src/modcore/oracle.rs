//! Degreewise linear algebra: every module is cut down to its degree-`d`
//! piece, an explicit vector space with a monomial basis, and every
//! dimension is a rank over the prime field. Only polynomial arithmetic is
//! shared with the Gröbner code.

use std::collections::HashMap;

use crate::groebner::{GradedFreeModule, PolyMatrix};
use crate::linalg::{sparse_rank, SparseVec};
use crate::polyring::{monomials_of_degree, GroundField, Monomial};

use super::{ChainComplex, ModuleMap, Subquotient};

/// Monomial basis of the degree-`d` piece of a graded free module.
struct Slice {
    index: Vec<HashMap<Monomial, u32>>,
    dim: usize,
}

impl Slice {
    fn new(module: &GradedFreeModule, nvars: usize, d: i64) -> Slice {
        let mut index = Vec::with_capacity(module.rank());
        let mut dim = 0u32;
        for &t in module.twists() {
            let mut map = HashMap::new();
            if d >= t {
                for m in monomials_of_degree(nvars, (d - t) as u32) {
                    map.insert(m, dim);
                    dim += 1;
                }
            }
            index.push(map);
        }
        Slice {
            index,
            dim: dim as usize,
        }
    }
}

/// All degree-`d` multiples `mu * column_j` of the columns of `a`, as
/// sparse vectors in the slice of the target, shifted by `offset`. For a
/// matrix with source `F` these are the images of the monomial basis of
/// `F_d`, listed component by component.
fn expand(a: &PolyMatrix, d: i64, tgt: &Slice, offset: u32) -> Vec<SparseVec> {
    let nvars = a.ring().nvars();
    let mut out = Vec::new();
    for j in 0..a.ncols() {
        let t = a.source().twist(j);
        if d < t {
            continue;
        }
        let col = a.column(j);
        for mu in monomials_of_degree(nvars, (d - t) as u32) {
            let mut v: SparseVec = Vec::new();
            for (i, p) in col.iter().enumerate() {
                for &(c, m) in p.terms() {
                    v.push((tgt.index[i][&m.mul(&mu)] + offset, c));
                }
            }
            v.sort_unstable_by_key(|x| x.0);
            out.push(v);
        }
    }
    out
}

/// Concatenates two expansions indexed by the same source basis.
fn concat(a: Vec<SparseVec>, b: Vec<SparseVec>) -> Vec<SparseVec> {
    debug_assert_eq!(a.len(), b.len());
    a.into_iter()
        .zip(b)
        .map(|(mut x, y)| {
            x.extend(y);
            x
        })
        .collect()
}

fn rank(field: GroundField, dim: usize, vecs: &[SparseVec]) -> usize {
    sparse_rank(field, dim, vecs)
}

/// Degreewise oracle for a subquotient and maps out of it.
pub struct Oracle {
    field: GroundField,
    nvars: usize,
}

impl Oracle {
    pub fn new(field: GroundField, nvars: usize) -> Self {
        Oracle { field, nvars }
    }

    pub fn for_module(m: &Subquotient) -> Self {
        Oracle::new(m.ring().field(), m.ring().nvars())
    }

    /// `dim span(gens)_d`.
    pub fn generator_span_dim(&self, m: &Subquotient, d: i64) -> usize {
        let amb = Slice::new(m.ambient(), self.nvars, d);
        match m.kernel_descriptor() {
            Some(k) => {
                let tgt = Slice::new(k.target(), self.nvars, d);
                amb.dim - rank(self.field, tgt.dim, &expand(k, d, &tgt, 0))
            }
            None => rank(self.field, amb.dim, &expand(m.generators(), d, &amb, 0)),
        }
    }

    /// `dim span(rels)_d`.
    pub fn relation_span_dim(&self, m: &Subquotient, d: i64) -> usize {
        let amb = Slice::new(m.ambient(), self.nvars, d);
        rank(self.field, amb.dim, &expand(m.relations(), d, &amb, 0))
    }

    /// `dim M_d`.
    pub fn module_dim(&self, m: &Subquotient, d: i64) -> usize {
        self.generator_span_dim(m, d) - self.relation_span_dim(m, d)
    }

    /// `dim { x in span(gens(m))_d : phi x in span(t_rels)_d }`.
    pub fn preimage_dim(&self, m: &Subquotient, phi: &PolyMatrix, t_rels: &PolyMatrix, d: i64) -> usize {
        let tgt = Slice::new(phi.target(), self.nvars, d);
        let t_vecs = expand(t_rels, d, &tgt, 0);
        let rk_t = rank(self.field, tgt.dim, &t_vecs);
        match m.kernel_descriptor() {
            Some(k) => {
                // nullity of [[K, 0], [phi, T]] minus nullity of T
                let ks = Slice::new(k.target(), self.nvars, d);
                let off = ks.dim as u32;
                let mut cols = concat(expand(k, d, &ks, 0), expand(phi, d, &tgt, off));
                cols.extend(expand(t_rels, d, &tgt, off));
                let amb_dim = Slice::new(m.ambient(), self.nvars, d).dim;
                amb_dim + rk_t - rank(self.field, ks.dim + tgt.dim, &cols)
            }
            None => {
                let img = phi.mul(m.generators()).expect("composable");
                let mut cols = expand(&img, d, &tgt, 0);
                let s = self.generator_span_dim(m, d);
                cols.extend(t_vecs);
                s - (rank(self.field, tgt.dim, &cols) - rk_t)
            }
        }
    }

    /// `dim (ker f)_d` as a subquotient of the source.
    pub fn kernel_dim(&self, f: &ModuleMap, d: i64) -> usize {
        self.preimage_dim(f.source(), f.matrix(), f.target().relations(), d)
            - self.relation_span_dim(f.source(), d)
    }

    /// `dim (im f)_d`.
    pub fn image_dim(&self, f: &ModuleMap, d: i64) -> usize {
        self.generator_span_dim(f.source(), d)
            - self.preimage_dim(f.source(), f.matrix(), f.target().relations(), d)
    }

    /// Homology dimension at index `i` of a complex in degree `d`.
    pub fn homology_dim(&self, c: &ChainComplex, i: usize, d: i64) -> usize {
        let ker = match c.maps().get(i) {
            Some(out) => self.kernel_dim(out, d),
            None => self.module_dim(&c.modules()[i], d),
        };
        let im = match i.checked_sub(1) {
            Some(k) => self.image_dim(&c.maps()[k], d),
            None => 0,
        };
        ker - im
    }
}

/// Homology dimensions of `complex` at module index `position` for the
/// degrees `lo..=hi`.
pub fn degreewise_oracle(complex: &ChainComplex, position: usize, lo: i64, hi: i64) -> Vec<usize> {
    let o = Oracle::for_module(&complex.modules()[position]);
    (lo..=hi).map(|d| o.homology_dim(complex, position, d)).collect()
}

/// Hilbert function of a module on `lo..=hi` by degreewise ranks.
pub fn module_hilbert(m: &Subquotient, lo: i64, hi: i64) -> Vec<usize> {
    let o = Oracle::for_module(m);
    (lo..=hi).map(|d| o.module_dim(m, d)).collect()
}

/// Dimension in degree `d` of the kernel of the map `H(B) -> H(B')` induced
/// by `chain` on ambient modules. `inc_in`/`out_in` are the maps into and out
/// of `B`, `inc_to` the map into `B'`.
///
/// The kernel consists of cycles `x` of `B` with `chain(x)` a boundary of
/// `B'`; its dimension is `dim{x cycle : chain x in im + rels}` minus
/// `dim(im inc_in + rels)`.
#[allow(clippy::too_many_arguments)]
pub fn induced_kernel_dim(
    o: &Oracle,
    inc_in: Option<&ModuleMap>,
    out_in: Option<&ModuleMap>,
    chain: &PolyMatrix,
    inc_to: Option<&ModuleMap>,
    b: &Subquotient,
    b_to: &Subquotient,
    d: i64,
) -> usize {
    let ring = b.ring();
    // Z = cycles of B, as a subquotient with descriptor when available.
    let cycles_with_rels = |target_rels: &PolyMatrix, phi: &PolyMatrix| -> usize {
        match out_in {
            None => o.preimage_dim(b, phi, target_rels, d),
            Some(out) => {
                // x in S_B with out(x) in R_C and phi(x) in T: stack the two
                // conditions into one map to the direct sum.
                let stacked_phi =
                    PolyMatrix::vstack(ring, b.ambient(), &[out.matrix(), phi]).expect("common source");
                let c_rels = out.target().relations();
                let zero_tr = PolyMatrix::zero(ring, c_rels.source().clone(), phi.target().clone());
                let zero_ct = PolyMatrix::zero(ring, target_rels.source().clone(), c_rels.target().clone());
                let left = PolyMatrix::vstack(ring, c_rels.source(), &[c_rels, &zero_tr]).expect("blocks");
                let right = PolyMatrix::vstack(ring, target_rels.source(), &[&zero_ct, target_rels]).expect("blocks");
                let sum_target = c_rels.target().direct_sum(phi.target());
                let rels = PolyMatrix::hstack(ring, &sum_target, &[&left, &right]).expect("common target");
                o.preimage_dim(b, &stacked_phi, &rels, d)
            }
        }
    };
    let boundary_rels = match inc_to {
        Some(inc) => PolyMatrix::hstack(ring, b_to.ambient(), &[b_to.relations(), &inc.generator_images()])
            .expect("common target"),
        None => b_to.relations().clone(),
    };
    let good_cycles = cycles_with_rels(&boundary_rels, chain);
    let trivial = match inc_in {
        Some(inc) => {
            o.relation_span_dim(b, d) + o.generator_span_dim(inc.source(), d)
                - o.preimage_dim(inc.source(), inc.matrix(), b.relations(), d)
        }
        None => o.relation_span_dim(b, d),
    };
    good_cycles - trivial
}
