//! Gröbner bases of graded submodules of free modules, syzygies and minimal
//! free resolutions.

mod engine;
mod freemod;
pub(crate) mod modvec;

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyring::{monomials_of_degree, Monomial, PolyRing, Polynomial};

use engine::{Engine, Input, Options, Role};
pub use freemod::{GradedFreeModule, PolyMatrix};
use modvec::{column_to_modvec, modvec_to_column, ModVec, ModuleOrder};

/// Reduced Gröbner basis of the column span of a matrix.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    ambient: GradedFreeModule,
    ord: ModuleOrder,
    elems: Vec<ModVec>,
    /// Expressions of the elements in the original generators, when tracked.
    cofs: Option<(GradedFreeModule, Vec<ModVec>)>,
}

fn inputs_of(m: &PolyMatrix, ord: &ModuleOrder, role: Role) -> Vec<Input> {
    (0..m.ncols())
        .map(|j| Input {
            vec: m.column_modvec(j, ord),
            deg: m.source().twist(j),
            role,
        })
        .collect()
}

impl GroebnerBasis {
    /// Gröbner basis of the submodule spanned by the columns of `m`.
    pub fn compute(m: &PolyMatrix) -> GroebnerBasis {
        Self::build(m, false)
    }

    /// Like [`GroebnerBasis::compute`], remembering how each element is
    /// expressed in the columns of `m` so that [`GroebnerBasis::lift`] works.
    pub fn compute_tracked(m: &PolyMatrix) -> GroebnerBasis {
        Self::build(m, true)
    }

    fn build(m: &PolyMatrix, track: bool) -> GroebnerBasis {
        let ring = m.ring().clone();
        let ord = m.module_order();
        let opts = Options {
            track,
            interreduce: true,
            ..Options::default()
        };
        let cof_twists = if track { m.source().twists().to_vec() } else { Vec::new() };
        let eng = Engine::new(ring.field(), ring.nvars(), &ord, cof_twists, opts);
        let out = eng.run(inputs_of(m, &ord, Role::Base));
        let (elems, cofs): (Vec<_>, Vec<_>) = out.basis.into_iter().map(|e| (e.vec, e.cof)).unzip();
        GroebnerBasis {
            ring,
            ambient: m.target().clone(),
            ord,
            elems,
            cofs: track.then(|| (m.source().clone(), cofs)),
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn ambient(&self) -> &GradedFreeModule {
        &self.ambient
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Elements as columns of polynomials.
    pub fn elements(&self) -> Vec<Vec<Polynomial>> {
        self.elems
            .iter()
            .map(|v| modvec_to_column(&self.ring, v, self.ambient.rank()))
            .collect()
    }

    /// Degrees of the elements.
    pub fn degrees(&self) -> Vec<i64> {
        self.elems
            .iter()
            .map(|v| self.ord.degree(&v[0].mon, v[0].comp))
            .collect()
    }

    /// The basis as a matrix into the ambient module.
    pub fn to_matrix(&self) -> PolyMatrix {
        PolyMatrix::from_columns(
            &self.ring,
            GradedFreeModule::new(self.degrees()),
            self.ambient.clone(),
            self.elements(),
        )
        .expect("basis elements are homogeneous")
    }

    /// Leading terms as `(component, monomial)`.
    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.elems
            .iter()
            .map(|v| (v[0].comp as usize, v[0].mon))
            .collect()
    }

    fn engine(&self) -> Engine<'_> {
        let basis: Vec<(ModVec, ModVec)> = match &self.cofs {
            Some((_, cofs)) => self.elems.iter().cloned().zip(cofs.iter().cloned()).collect(),
            None => self.elems.iter().map(|v| (v.clone(), Vec::new())).collect(),
        };
        let cof_twists = self
            .cofs
            .as_ref()
            .map_or(Vec::new(), |(src, _)| src.twists().to_vec());
        Engine::from_basis(self.ring.field(), self.ring.nvars(), &self.ord, cof_twists, &basis)
    }

    fn check_column(&self, col: &[Polynomial]) -> Result<()> {
        if col.len() != self.ambient.rank() {
            return Err(Error::Structural(format!(
                "column of length {} in a module of rank {}",
                col.len(),
                self.ambient.rank()
            )));
        }
        Ok(())
    }

    /// Normal form of `col` with respect to the basis.
    pub fn normal_form(&self, col: &[Polynomial]) -> Result<Vec<Polynomial>> {
        self.check_column(col)?;
        let v = column_to_modvec(col, &self.ord);
        let eng = self.engine();
        let (r, _) = eng.reduce(v, Vec::new(), true);
        Ok(modvec_to_column(&self.ring, &r, self.ambient.rank()))
    }

    /// Whether `col` lies in the submodule.
    pub fn contains(&self, col: &[Polynomial]) -> Result<bool> {
        self.check_column(col)?;
        let v = column_to_modvec(col, &self.ord);
        let (r, _) = self.engine().reduce(v, Vec::new(), true);
        Ok(r.is_empty())
    }

    /// Coefficients expressing `col` in the original generators, or `None` if
    /// `col` is not in the submodule. Requires a tracked basis.
    pub fn lift(&self, col: &[Polynomial]) -> Result<Option<Vec<Polynomial>>> {
        self.check_column(col)?;
        let Some((src, _)) = &self.cofs else {
            return Err(Error::InvalidArgument("lift needs a tracked basis".into()));
        };
        let v = column_to_modvec(col, &self.ord);
        let (r, cof) = self.engine().reduce(v, Vec::new(), true);
        if !r.is_empty() {
            return Ok(None);
        }
        let mut out = modvec_to_column(&self.ring, &cof, src.rank());
        for p in out.iter_mut() {
            *p = -&*p;
        }
        Ok(Some(out))
    }

    /// Whether the submodule contains a basis vector `e_i` of the ambient
    /// module for every `i` (equivalently it is everything).
    pub fn is_everything(&self) -> bool {
        let lt = self.leading_terms();
        (0..self.ambient.rank()).all(|i| lt.iter().any(|(c, m)| *c == i && m.is_one()))
    }

    /// Number of standard monomials of degree `d` in the ambient module,
    /// i.e. the dimension of the quotient in degree `d`.
    pub fn quotient_dim(&self, d: i64) -> usize {
        let n = self.ring.nvars();
        let lt = self.leading_terms();
        let mut total = 0;
        for (i, &t) in self.ambient.twists().iter().enumerate() {
            let e = d - t;
            if e < 0 {
                continue;
            }
            let leads: Vec<&Monomial> = lt.iter().filter(|(c, _)| *c == i).map(|(_, m)| m).collect();
            if leads.iter().any(|m| m.is_one()) {
                continue;
            }
            if leads.is_empty() {
                total += binomial(e as usize + n - 1, n - 1);
                continue;
            }
            total += monomials_of_degree(n, e as u32)
                .iter()
                .filter(|m| !leads.iter().any(|l| l.divides(m)))
                .count();
        }
        total
    }

    /// Krull dimension of the quotient `F / M`, or `None` when the quotient
    /// is zero.
    pub fn quotient_krull_dim(&self) -> Option<usize> {
        let n = self.ring.nvars();
        let lt = self.leading_terms();
        let mut best: Option<usize> = None;
        for i in 0..self.ambient.rank() {
            let masks: Vec<u32> = lt
                .iter()
                .filter(|(c, _)| *c == i)
                .map(|(_, m)| m.support_mask())
                .collect();
            if masks.contains(&0) {
                continue;
            }
            // Largest set of variables containing the support of no leading
            // monomial.
            let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
            let mut dim = 0;
            let mut s: u32 = full;
            loop {
                let size = s.count_ones() as usize;
                if size > dim && masks.iter().all(|&m| m & !s != 0) {
                    dim = size;
                }
                if s == 0 {
                    break;
                }
                s = (s - 1) & full;
            }
            best = Some(best.map_or(dim, |b: usize| b.max(dim)));
        }
        best
    }
}

fn binomial(n: usize, k: usize) -> usize {
    let k = k.min(n.saturating_sub(k));
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as usize
}

/// Indices of a minimal generating subset of the columns of `m`.
pub fn minimal_generator_indices(m: &PolyMatrix) -> Vec<usize> {
    let ring = m.ring();
    let ord = m.module_order();
    let eng = Engine::new(ring.field(), ring.nvars(), &ord, Vec::new(), Options::default());
    eng.run(inputs_of(m, &ord, Role::Candidate)).kept
}

/// Indices of columns of `gens` whose images minimally generate the module
/// `(span gens + span rels) / span rels`.
pub fn minimal_generator_indices_modulo(gens: &PolyMatrix, rels: &PolyMatrix) -> Vec<usize> {
    let ring = gens.ring();
    let ord = gens.module_order();
    let mut inputs = inputs_of(rels, &ord, Role::Base);
    let offset = inputs.len();
    inputs.extend(inputs_of(gens, &ord, Role::Candidate));
    let eng = Engine::new(ring.field(), ring.nvars(), &ord, Vec::new(), Options::default());
    eng.run(inputs).kept.into_iter().map(|k| k - offset).collect()
}

/// The columns of `m` forming a minimal generating set of its span.
pub fn minimal_generators(m: &PolyMatrix) -> PolyMatrix {
    m.select_columns(&minimal_generator_indices(m))
}

/// A matrix whose columns minimally generate the syzygies of the columns of
/// `m`. Its target is `m.source()`.
pub fn syzygy_matrix(m: &PolyMatrix) -> PolyMatrix {
    let ring = m.ring();
    let ord = m.module_order();
    let opts = Options {
        track: true,
        syzygies: true,
        ..Options::default()
    };
    let eng = Engine::new(ring.field(), ring.nvars(), &ord, m.source().twists().to_vec(), opts);
    let out = eng.run(inputs_of(m, &ord, Role::Base));
    let src_ord = ModuleOrder::new(ring.order(), m.source().twists().to_vec());
    let inputs: Vec<Input> = out
        .syzygies
        .into_iter()
        .map(|v| {
            let deg = src_ord.degree(&v[0].mon, v[0].comp);
            Input {
                vec: v,
                deg,
                role: Role::Candidate,
            }
        })
        .collect();
    let prune = Engine::new(ring.field(), ring.nvars(), &src_ord, Vec::new(), Options::default());
    let kept = prune.run(inputs.clone()).kept;
    let cols: Vec<Vec<Polynomial>> = kept
        .iter()
        .map(|&k| modvec_to_column(ring, &inputs[k].vec, m.ncols()))
        .collect();
    let twists: Vec<i64> = kept.iter().map(|&k| inputs[k].deg).collect();
    PolyMatrix::from_columns(ring, GradedFreeModule::new(twists), m.source().clone(), cols)
        .expect("syzygies are homogeneous")
}

/// Removes unit entries from a presentation matrix without changing its
/// cokernel, then keeps a minimal generating set of columns.
pub fn minimize_presentation(m: &PolyMatrix) -> PolyMatrix {
    let ring = m.ring().clone();
    let field = ring.field();
    let mut a = m.clone();
    loop {
        let mut found = None;
        'outer: for j in 0..a.ncols() {
            for i in 0..a.nrows() {
                let p = a.entry(i, j);
                if !p.is_zero() && p.is_constant() {
                    found = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((pi, pj)) = found else { break };
        let inv = field.inv(a.entry(pi, pj).terms()[0].0);
        let col = a.column(pj);
        let row = a.row(pi);
        let rows: Vec<usize> = (0..a.nrows()).filter(|&i| i != pi).collect();
        let cols: Vec<usize> = (0..a.ncols()).filter(|&j| j != pj).collect();
        let mut new_rows = Vec::with_capacity(rows.len());
        for &i in &rows {
            let f = col[i].scale(inv);
            let mut r = Vec::with_capacity(cols.len());
            for &j in &cols {
                let e = a.entry(i, j);
                r.push(if f.is_zero() || row[j].is_zero() { e.clone() } else { e - &(&f * &row[j]) });
            }
            new_rows.push(r);
        }
        let source = GradedFreeModule::new(cols.iter().map(|&j| a.source().twist(j)).collect());
        let target = GradedFreeModule::new(rows.iter().map(|&i| a.target().twist(i)).collect());
        a = PolyMatrix::new(&ring, source, target, new_rows).expect("elimination keeps degrees");
    }
    minimal_generators(&a)
}

/// A minimal graded free resolution `F_0 <- F_1 <- ... <- F_len` of the
/// cokernel of a matrix.
#[derive(Clone, Debug, Serialize)]
pub struct FreeResolution {
    #[serde(skip)]
    maps: Vec<PolyMatrix>,
    /// Set when the computation stopped at the length bound with a nonzero
    /// next syzygy module.
    pub truncated: bool,
    /// Twists of the free modules `F_0, F_1, ...`.
    pub modules: Vec<GradedFreeModule>,
}

impl FreeResolution {
    /// Maps `F_{i+1} -> F_i`.
    pub fn maps(&self) -> &[PolyMatrix] {
        &self.maps
    }

    /// Projective dimension when not truncated.
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(|m| m.rank()).collect()
    }
}

/// Minimal free resolution of `coker m`, computing at most `max_length` maps.
pub fn minimal_free_resolution(m: &PolyMatrix, max_length: usize) -> FreeResolution {
    let first = minimize_presentation(m);
    let mut modules = vec![first.target().clone()];
    let mut maps = Vec::new();
    let mut cur = first;
    let mut truncated = false;
    while cur.ncols() > 0 {
        if maps.len() == max_length {
            truncated = true;
            break;
        }
        modules.push(cur.source().clone());
        let next = syzygy_matrix(&cur);
        maps.push(cur);
        cur = next;
    }
    FreeResolution {
        maps,
        truncated,
        modules,
    }
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

    fn row(r: &Arc<PolyRing>, polys: &[&str]) -> PolyMatrix {
        let cols = polys.iter().map(|s| vec![parse_polynomial(r, s).unwrap()]).collect();
        PolyMatrix::from_columns_inferred(r, GradedFreeModule::free(1), cols, 0).unwrap()
    }

    #[test]
    fn small_ideal_basis() {
        let r = ring(&["X", "Y"]);
        let m = row(&r, &["X^2", "X*Y+Y^2"]);
        let gb = GroebnerBasis::compute(&m);
        let mut got: Vec<String> = gb.elements().iter().map(|c| c[0].to_string()).collect();
        got.sort();
        assert_eq!(got, vec!["X*Y+Y^2", "X^2", "Y^3"]);
        assert!(gb.contains(&[parse_polynomial(&r, "Y^3").unwrap()]).unwrap());
        assert!(!gb.contains(&[parse_polynomial(&r, "Y^2").unwrap()]).unwrap());
        assert_eq!(gb.quotient_dim(0), 1);
        assert_eq!(gb.quotient_dim(2), 1);
        assert_eq!(gb.quotient_dim(3), 0);
        assert_eq!(gb.quotient_krull_dim(), Some(0));
    }

    #[test]
    fn lift_recovers_coefficients() {
        let r = ring(&["X", "Y"]);
        let m = row(&r, &["X^2", "X*Y+Y^2"]);
        let gb = GroebnerBasis::compute_tracked(&m);
        let y3 = parse_polynomial(&r, "Y^3").unwrap();
        let c = gb.lift(std::slice::from_ref(&y3)).unwrap().unwrap();
        let back = &(&c[0] * m.entry(0, 0)) + &(&c[1] * m.entry(0, 1));
        assert_eq!(back, y3);
    }

    #[test]
    fn koszul_syzygies() {
        let r = ring(&["X", "Y"]);
        let m = row(&r, &["X", "Y"]);
        let s = syzygy_matrix(&m);
        assert_eq!(s.ncols(), 1);
        assert_eq!(s.source().twists(), &[2]);
        assert!(m.mul(&s).unwrap().is_zero());

        let r4 = ring(&["a", "b", "c", "d"]);
        let m4 = row(&r4, &["a", "b", "c", "d"]);
        let s4 = syzygy_matrix(&m4);
        assert_eq!(s4.ncols(), 6);
        let res = minimal_free_resolution(&m4, 10);
        assert_eq!(res.ranks(), vec![1, 4, 6, 4, 1]);
        assert_eq!(res.length(), 4);
        assert!(!res.truncated);
        for w in res.maps().windows(2) {
            assert!(w[0].mul(&w[1]).unwrap().is_zero());
        }
    }

    #[test]
    fn resolution_edge_cases() {
        let r = ring(&["X", "Y"]);
        let m = row(&r, &["X", "Y"]);
        assert_eq!(minimal_free_resolution(&m, 5).ranks(), vec![1, 2, 1]);
        let z = PolyMatrix::zero(&r, GradedFreeModule::free(2), GradedFreeModule::free(3));
        let res = minimal_free_resolution(&z, 5);
        assert_eq!(res.length(), 0);
        assert_eq!(res.ranks(), vec![3]);
        let unit = row(&r, &["1", "X"]);
        let res = minimal_free_resolution(&unit, 5);
        assert_eq!(res.ranks(), vec![0]);
        let t = minimal_free_resolution(&row(&r, &["X", "Y"]), 1);
        assert!(t.truncated);
    }

    #[test]
    fn krull_dimension() {
        let r = ring(&["a", "b", "c"]);
        let gb = GroebnerBasis::compute(&row(&r, &["a*b", "a*c"]));
        assert_eq!(gb.quotient_krull_dim(), Some(2));
        let gb = GroebnerBasis::compute(&row(&r, &["a", "b+c"]));
        assert_eq!(gb.quotient_krull_dim(), Some(1));
        let gb = GroebnerBasis::compute(&row(&r, &["1"]));
        assert_eq!(gb.quotient_krull_dim(), None);
        assert!(gb.is_everything());
    }
}
