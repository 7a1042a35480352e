//! Finitely presented graded modules as subquotients of free modules.
//!
//! A [`Subquotient`] is `span(gens) / span(rels)` inside an ambient graded
//! free module. Maps between subquotients are given by matrices between the
//! ambient modules and are certified to be well defined.

mod complex;
mod fingerprint;
mod invariants;
pub mod oracle;

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::{
    minimal_generator_indices_modulo, syzygy_matrix, GradedFreeModule, GroebnerBasis, PolyMatrix,
};
use crate::polyring::{PolyRing, Polynomial};

pub use complex::{ChainComplex, ComplexJson, ModuleJson};
pub use fingerprint::{fingerprint, Fingerprint};
pub use invariants::{
    fitting_ideal, hilbert_dim_grade, ideal_grade, minor, module_rank, subsets, HilbertData,
};

/// `span(gens) / span(rels)` inside `ambient`.
pub struct Subquotient {
    ring: Arc<PolyRing>,
    ambient: GradedFreeModule,
    gens: PolyMatrix,
    rels: PolyMatrix,
    kernel_of: Option<PolyMatrix>,
    gens_gb: OnceLock<GroebnerBasis>,
    rels_gb: OnceLock<GroebnerBasis>,
}

impl Clone for Subquotient {
    fn clone(&self) -> Self {
        Subquotient {
            ring: self.ring.clone(),
            ambient: self.ambient.clone(),
            gens: self.gens.clone(),
            rels: self.rels.clone(),
            kernel_of: self.kernel_of.clone(),
            gens_gb: self.gens_gb.clone(),
            rels_gb: self.rels_gb.clone(),
        }
    }
}

impl std::fmt::Debug for Subquotient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Subquotient")
            .field("ambient", &self.ambient.twists())
            .field("gens", &self.gens)
            .field("rels", &self.rels)
            .finish()
    }
}

impl Subquotient {
    /// Builds `span(gens) / span(rels)`, certifying `span(rels) ⊆ span(gens)`.
    pub fn new(gens: PolyMatrix, rels: PolyMatrix) -> Result<Self> {
        if gens.target() != rels.target() {
            return Err(Error::Structural(
                "generators and relations live in different ambient modules".into(),
            ));
        }
        let sq = Subquotient {
            ring: gens.ring().clone(),
            ambient: gens.target().clone(),
            gens,
            rels,
            kernel_of: None,
            gens_gb: OnceLock::new(),
            rels_gb: OnceLock::new(),
        };
        let gb = sq.gens_gb();
        for j in 0..sq.rels.ncols() {
            if !gb.contains(&sq.rels.column(j))? {
                return Err(Error::RelationNotInSpan { column: j });
            }
        }
        Ok(sq)
    }

    /// The free module `F` itself.
    pub fn free(ring: &Arc<PolyRing>, module: &GradedFreeModule) -> Self {
        Self::cokernel(&PolyMatrix::zero(ring, GradedFreeModule::zero(), module.clone()))
    }

    /// `coker(a)` presented on the target of `a`.
    pub fn cokernel(a: &PolyMatrix) -> Self {
        let ring = a.ring();
        let gens = PolyMatrix::identity(ring, a.target());
        Subquotient {
            ring: ring.clone(),
            ambient: a.target().clone(),
            gens,
            rels: a.clone(),
            kernel_of: None,
            gens_gb: OnceLock::new(),
            rels_gb: OnceLock::new(),
        }
    }

    /// `ker(k)` as a submodule of `k.source()`; generators come from the
    /// syzygy engine and `k` is kept as a description of the generator span.
    pub fn kernel_module(k: &PolyMatrix) -> Self {
        let ring = k.ring();
        let gens = syzygy_matrix(k);
        let rels = PolyMatrix::zero(ring, GradedFreeModule::zero(), k.source().clone());
        Subquotient {
            ring: ring.clone(),
            ambient: k.source().clone(),
            gens,
            rels,
            kernel_of: Some(k.clone()),
            gens_gb: OnceLock::new(),
            rels_gb: OnceLock::new(),
        }
    }

    /// `ker(k) / span(rels)`, certifying the relations lie in the kernel.
    pub fn kernel_modulo(k: &PolyMatrix, rels: PolyMatrix) -> Result<Self> {
        if !k.mul(&rels)?.is_zero() {
            return Err(Error::RelationNotInSpan {
                column: (0..rels.ncols())
                    .find(|&j| k.mul(&rels.select_columns(&[j])).map(|m| !m.is_zero()).unwrap_or(true))
                    .unwrap_or(0),
            });
        }
        let mut sq = Subquotient::kernel_module(k);
        sq.rels = rels;
        Ok(sq)
    }

    /// `R / I` for the ideal generated by `polys`, with `R` in degree 0.
    pub fn cyclic(ring: &Arc<PolyRing>, polys: &[Polynomial]) -> Result<Self> {
        let cols: Vec<Vec<Polynomial>> = polys.iter().map(|p| vec![p.clone()]).collect();
        let a = PolyMatrix::from_columns_inferred(ring, GradedFreeModule::free(1), cols, 0)?;
        Ok(Subquotient::cokernel(&a))
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn ambient(&self) -> &GradedFreeModule {
        &self.ambient
    }

    pub fn generators(&self) -> &PolyMatrix {
        &self.gens
    }

    pub fn relations(&self) -> &PolyMatrix {
        &self.rels
    }

    /// When set, the generator span is exactly the kernel of this matrix.
    pub fn kernel_descriptor(&self) -> Option<&PolyMatrix> {
        self.kernel_of.as_ref()
    }

    pub fn gens_gb(&self) -> &GroebnerBasis {
        self.gens_gb.get_or_init(|| GroebnerBasis::compute(&self.gens))
    }

    pub fn rels_gb(&self) -> &GroebnerBasis {
        self.rels_gb.get_or_init(|| GroebnerBasis::compute(&self.rels))
    }

    /// The same module with relations `[rels | extra]`.
    pub fn with_relations(&self, extra: &PolyMatrix) -> Result<Self> {
        let rels = PolyMatrix::hstack(&self.ring, &self.ambient, &[&self.rels, extra])?;
        let gb = self.gens_gb();
        for j in 0..extra.ncols() {
            if !gb.contains(&extra.column(j))? {
                return Err(Error::RelationNotInSpan {
                    column: self.rels.ncols() + j,
                });
            }
        }
        Ok(Subquotient {
            rels,
            rels_gb: OnceLock::new(),
            ..self.clone()
        })
    }

    /// The module with every degree raised by `s` (i.e. `M(-s)`).
    pub fn shifted(&self, s: i64) -> Self {
        let ambient = self.ambient.shifted(s);
        let gens = self
            .gens
            .regraded(self.gens.source().shifted(s), ambient.clone())
            .expect("uniform shift keeps degrees");
        let rels = self
            .rels
            .regraded(self.rels.source().shifted(s), ambient.clone())
            .expect("uniform shift keeps degrees");
        let kernel_of = self.kernel_of.as_ref().map(|k| {
            k.regraded(ambient.clone(), k.target().shifted(s))
                .expect("uniform shift keeps degrees")
        });
        Subquotient {
            ring: self.ring.clone(),
            ambient,
            gens,
            rels,
            kernel_of,
            gens_gb: OnceLock::new(),
            rels_gb: OnceLock::new(),
        }
    }

    /// Whether the module is zero: every generator lies in the relation span.
    pub fn is_zero(&self) -> bool {
        let gb = self.rels_gb();
        (0..self.gens.ncols()).all(|j| gb.contains(&self.gens.column(j)).expect("same ambient"))
    }

    /// Whether `col` lies in the generator span.
    pub fn contains(&self, col: &[Polynomial]) -> Result<bool> {
        self.gens_gb().contains(col)
    }

    /// Dimension of the degree-`d` component.
    pub fn hilbert(&self, d: i64) -> usize {
        self.rels_gb().quotient_dim(d) - self.gens_gb().quotient_dim(d)
    }

    /// Hilbert function on `lo..=hi`.
    pub fn hilbert_vector(&self, lo: i64, hi: i64) -> Vec<usize> {
        (lo..=hi).map(|d| self.hilbert(d)).collect()
    }

    /// Generator columns forming a minimal generating set of the module.
    pub fn minimal_generators(&self) -> PolyMatrix {
        self.gens
            .select_columns(&minimal_generator_indices_modulo(&self.gens, &self.rels))
    }

    /// The same module presented by a minimal generating set.
    pub fn minimized(&self) -> Self {
        Subquotient {
            gens: self.minimal_generators(),
            gens_gb: OnceLock::new(),
            kernel_of: None,
            ..self.clone()
        }
    }

    /// A matrix whose cokernel is isomorphic to this module, on the minimal
    /// generators: the generator part of the syzygies of `[gens | rels]`.
    pub fn presentation(&self) -> PolyMatrix {
        let gens = self.minimal_generators();
        let stacked = PolyMatrix::hstack(&self.ring, &self.ambient, &[&gens, &self.rels])
            .expect("common ambient");
        let syz = syzygy_matrix(&stacked);
        let top: Vec<usize> = (0..gens.ncols()).collect();
        syz.select_rows(&top)
            .regraded(syz.source().clone(), gens.source().clone())
            .expect("top block maps into the generator module")
    }

    /// Smallest ambient twist; no nonzero element lives below it.
    pub fn min_ambient_degree(&self) -> i64 {
        self.ambient.twists().iter().copied().min().unwrap_or(0)
    }

    /// Annihilator ideal as a reduced Gröbner basis (rank-one ambient).
    pub fn annihilator(&self) -> GroebnerBasis {
        let ring = &self.ring;
        let gens = self.minimal_generators();
        let k = gens.ncols();
        let rank = self.ambient.rank();
        let one = GradedFreeModule::free(1);
        if k == 0 {
            let unit = PolyMatrix::identity(ring, &one);
            return GroebnerBasis::compute(&unit);
        }
        // Syzygies of [ (g_1; ...; g_k) | diag(R, ..., R) ]; the first
        // coordinate of each syzygy is an annihilating element.
        let mut target_twists = Vec::with_capacity(k * rank);
        let mut first_col = Vec::with_capacity(k * rank);
        for j in 0..k {
            let tj = gens.source().twist(j);
            for i in 0..rank {
                target_twists.push(self.ambient.twist(i) - tj);
                first_col.push(gens.entry(i, j).clone());
            }
        }
        let target = GradedFreeModule::new(target_twists);
        let nrel = self.rels.ncols();
        let mut src_twists = vec![0];
        let mut cols = vec![first_col];
        for j in 0..k {
            let tj = gens.source().twist(j);
            for c in 0..nrel {
                src_twists.push(self.rels.source().twist(c) - tj);
                let mut col = vec![Polynomial::zero(ring); k * rank];
                for i in 0..rank {
                    col[j * rank + i] = self.rels.entry(i, c).clone();
                }
                cols.push(col);
            }
        }
        let big = PolyMatrix::from_columns(ring, GradedFreeModule::new(src_twists), target, cols)
            .expect("stacked presentation is homogeneous");
        let syz = syzygy_matrix(&big);
        let firsts = syz.select_rows(&[0]);
        let ideal = firsts
            .regraded(syz.source().clone(), one)
            .expect("first row has degree zero target");
        GroebnerBasis::compute(&ideal)
    }
}

fn check_column_in(gb: &GroebnerBasis, m: &PolyMatrix, kind: &'static str) -> Result<()> {
    for j in 0..m.ncols() {
        if !gb.contains(&m.column(j))? {
            return Err(Error::MapNotWellDefined { kind, column: j });
        }
    }
    Ok(())
}

/// A homogeneous degree-zero map of subquotients induced by a matrix between
/// the ambient free modules.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    source: Arc<Subquotient>,
    target: Arc<Subquotient>,
    matrix: PolyMatrix,
}

impl ModuleMap {
    /// Certifies that `matrix` sends generators into the target generator
    /// span and relations into the target relation span.
    pub fn new(source: Arc<Subquotient>, target: Arc<Subquotient>, matrix: PolyMatrix) -> Result<Self> {
        if matrix.source() != source.ambient() || matrix.target() != target.ambient() {
            return Err(Error::Structural(
                "map matrix does not connect the ambient modules".into(),
            ));
        }
        let img_gens = matrix.mul(source.generators())?;
        check_column_in(target.gens_gb(), &img_gens, "generator")?;
        let img_rels = matrix.mul(source.relations())?;
        check_column_in(target.rels_gb(), &img_rels, "relation")?;
        Ok(ModuleMap {
            source,
            target,
            matrix,
        })
    }

    pub fn source(&self) -> &Arc<Subquotient> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Subquotient> {
        &self.target
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    /// `matrix * gens(source)`, the images of the source generators.
    pub fn generator_images(&self) -> PolyMatrix {
        self.matrix
            .mul(self.source.generators())
            .expect("certified at construction")
    }

    fn kernel_coefficients(&self) -> PolyMatrix {
        let ring = self.matrix.ring();
        let img = self.generator_images();
        let stacked = PolyMatrix::hstack(ring, self.target.ambient(), &[&img, self.target.relations()])
            .expect("common target");
        let syz = syzygy_matrix(&stacked);
        let top: Vec<usize> = (0..img.ncols()).collect();
        syz.select_rows(&top)
            .regraded(syz.source().clone(), self.source.generators().source().clone())
            .expect("top block maps into the generator module")
    }

    /// `{x : f(x) = 0}` as a subquotient of the source ambient.
    pub fn kernel(&self) -> Result<Subquotient> {
        let k = self.kernel_coefficients();
        let gens = self.source.generators().mul(&k)?;
        Subquotient::new(gens, self.source.relations().clone())
    }

    /// `f(source)` inside the target.
    pub fn image(&self) -> Result<Subquotient> {
        let ring = self.matrix.ring();
        let gens = PolyMatrix::hstack(
            ring,
            self.target.ambient(),
            &[&self.generator_images(), self.target.relations()],
        )?;
        Subquotient::new(gens, self.target.relations().clone())
    }

    /// `target / f(source)`.
    pub fn cokernel(&self) -> Result<Subquotient> {
        self.target.with_relations(&self.generator_images())
    }

    /// Kernel, image and cokernel in one call.
    pub fn kernel_image_cokernel(&self) -> Result<(Subquotient, Subquotient, Subquotient)> {
        Ok((self.kernel()?, self.image()?, self.cokernel()?))
    }

    pub fn is_zero(&self) -> bool {
        let gb = self.target.rels_gb();
        let img = self.generator_images();
        (0..img.ncols()).all(|j| gb.contains(&img.column(j)).expect("same ambient"))
    }

    /// Composite `self ∘ first`.
    pub fn compose(&self, first: &ModuleMap) -> Result<ModuleMap> {
        let m = self.matrix.mul(&first.matrix)?;
        ModuleMap::new(first.source.clone(), self.target.clone(), m)
    }
}

/// Structural equality of the presentations of two subquotients.
pub fn same_presentation(a: &Subquotient, b: &Subquotient) -> bool {
    a.ambient == b.ambient && a.gens == b.gens && a.rels == b.rels
}

/// Homology `ker(outgoing) / im(incoming)` at the common module.
pub fn homology_at(incoming: &ModuleMap, outgoing: &ModuleMap) -> Result<Subquotient> {
    if !same_presentation(incoming.target(), outgoing.source()) {
        return Err(Error::Structural("maps do not meet at a common module".into()));
    }
    let comp = outgoing.matrix().mul(&incoming.generator_images())?;
    for j in 0..comp.ncols() {
        if !outgoing.target().rels_gb().contains(&comp.column(j))? {
            return Err(Error::NotAComplex { position: j });
        }
    }
    let k = outgoing.kernel_coefficients();
    let gens = outgoing.source().generators().mul(&k)?;
    let ring = incoming.matrix().ring();
    let rels = PolyMatrix::hstack(
        ring,
        outgoing.source().ambient(),
        &[outgoing.source().relations(), &incoming.generator_images()],
    )?;
    Subquotient::new(gens, rels)
}

/// Homology of `A --f--> B` at `B` when nothing follows: `B / im f`.
pub fn homology_at_end(incoming: &ModuleMap) -> Result<Subquotient> {
    incoming.cokernel()
}

/// Homology of `A --f--> B` at `A` when nothing precedes: `ker f`.
pub fn homology_at_start(outgoing: &ModuleMap) -> Result<Subquotient> {
    outgoing.kernel()
}

/// `Hom(coker a, R) = ker(a^T)` with zero relations.
pub fn dual_of_fp(a: &PolyMatrix) -> Subquotient {
    Subquotient::kernel_module(&a.transpose())
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

    fn polys(r: &Arc<PolyRing>, s: &[&str]) -> Vec<Polynomial> {
        s.iter().map(|x| parse_polynomial(r, x).unwrap()).collect()
    }

    #[test]
    fn construction_certificates() {
        let r = ring(&["X", "Y"]);
        let m = Subquotient::cyclic(&r, &polys(&r, &["X", "Y"])).unwrap();
        assert_eq!(m.hilbert_vector(0, 3), vec![1, 0, 0, 0]);
        let gens = PolyMatrix::from_columns_inferred(&r, GradedFreeModule::free(1), vec![polys(&r, &["X"])], 0).unwrap();
        let rels = PolyMatrix::from_columns_inferred(&r, GradedFreeModule::free(1), vec![polys(&r, &["1"])], 0).unwrap();
        assert!(matches!(Subquotient::new(gens, rels), Err(Error::RelationNotInSpan { column: 0 })));
    }

    #[test]
    fn multiplication_by_x_is_zero_on_residue_field() {
        let r = ring(&["X", "Y"]);
        let m = Arc::new(Subquotient::cyclic(&r, &polys(&r, &["X", "Y"])).unwrap());
        let shifted = Arc::new(m.shifted(-1));
        let x = PolyMatrix::new(
            &r,
            m.ambient().clone(),
            shifted.ambient().clone(),
            vec![polys(&r, &["X"])],
        )
        .unwrap();
        let f = ModuleMap::new(m.clone(), shifted, x).unwrap();
        assert!(f.is_zero());
        let (k, i, c) = f.kernel_image_cokernel().unwrap();
        assert_eq!(k.hilbert(0), 1);
        assert!(i.is_zero());
        assert_eq!(c.hilbert(-1), 1);
    }

    #[test]
    fn chi_on_cokernel_of_psi_star() {
        let r = ring(&["X", "Y"]);
        // M = coker(psi*) with psi* = (X, Y)^T : R(-1) -> R^2, chi = (-Y, X).
        let psi_star = PolyMatrix::new(
            &r,
            GradedFreeModule::new(vec![1]),
            GradedFreeModule::new(vec![0, 0]),
            vec![polys(&r, &["X"]), polys(&r, &["Y"])],
        )
        .unwrap();
        let m = Arc::new(Subquotient::cokernel(&psi_star));
        let target = Arc::new(Subquotient::free(&r, &GradedFreeModule::new(vec![-1])));
        let chi = PolyMatrix::new(&r, m.ambient().clone(), target.ambient().clone(), vec![polys(&r, &["-Y", "X"])]).unwrap();
        let f = ModuleMap::new(m, target, chi).unwrap();
        let (k, _, c) = f.kernel_image_cokernel().unwrap();
        assert!(k.is_zero());
        assert_eq!(c.hilbert_vector(-1, 2), vec![1, 0, 0, 0]);
        let bad = PolyMatrix::new(&r, GradedFreeModule::new(vec![0, 0]), GradedFreeModule::new(vec![-1]), vec![polys(&r, &["Y", "X"])]).unwrap();
        let m2 = Arc::new(Subquotient::cokernel(&psi_star));
        let t2 = Arc::new(Subquotient::free(&r, &GradedFreeModule::new(vec![-1])));
        assert!(matches!(ModuleMap::new(m2, t2, bad), Err(Error::MapNotWellDefined { kind: "relation", .. })));
    }

    #[test]
    fn duals_and_annihilators() {
        let r = ring(&["X", "Y"]);
        let a = PolyMatrix::from_columns_inferred(&r, GradedFreeModule::free(1), vec![polys(&r, &["X"])], 0).unwrap();
        assert!(dual_of_fp(&a).is_zero());
        let free = PolyMatrix::zero(&r, GradedFreeModule::zero(), GradedFreeModule::new(vec![1, 2]));
        let d = dual_of_fp(&free);
        assert_eq!(d.ambient().twists(), &[-1, -2]);
        assert_eq!(d.hilbert(-2), 1);
        assert_eq!(d.hilbert(-1), 3);
        let m = Subquotient::cyclic(&r, &polys(&r, &["X^2", "X*Y"])).unwrap();
        let ann = m.annihilator();
        let mut got: Vec<String> = ann.elements().iter().map(|c| c[0].to_string()).collect();
        got.sort();
        assert_eq!(got, vec!["X*Y", "X^2"]);
    }
}
