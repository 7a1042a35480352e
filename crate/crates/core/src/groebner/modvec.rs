//! Sparse module vectors: terms `c * X^a * e_i` in term-over-position order.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::polyring::{GroundField, Monomial, MonomialOrder, PolyRing, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct ModTerm {
    pub coef: u32,
    pub mon: Monomial,
    pub comp: u32,
}

pub(crate) type ModVec = Vec<ModTerm>;

/// Term-over-position order refined by twists: compare `deg(X^a) + twist(i)`
/// first, then the monomial order, then position (`e_0 > e_1 > ...`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ModuleOrder {
    pub order: MonomialOrder,
    pub twists: Vec<i64>,
}

impl ModuleOrder {
    pub fn new(order: MonomialOrder, twists: Vec<i64>) -> Self {
        ModuleOrder { order, twists }
    }

    #[inline]
    pub fn degree(&self, mon: &Monomial, comp: u32) -> i64 {
        mon.degree() as i64 + self.twists[comp as usize]
    }

    #[inline]
    pub fn cmp(&self, am: &Monomial, ac: u32, bm: &Monomial, bc: u32) -> Ordering {
        let da = self.degree(am, ac);
        let db = self.degree(bm, bc);
        da.cmp(&db)
            .then_with(|| am.cmp_with(bm, self.order))
            .then_with(|| bc.cmp(&ac))
    }

    #[inline]
    pub fn cmp_terms(&self, a: &ModTerm, b: &ModTerm) -> Ordering {
        self.cmp(&a.mon, a.comp, &b.mon, b.comp)
    }
}

/// `v + c * mon * b`, dropping cancelled terms.
pub(crate) fn axpy(
    field: GroundField,
    ord: &ModuleOrder,
    v: &[ModTerm],
    c: u32,
    mon: &Monomial,
    b: &[ModTerm],
) -> ModVec {
    let mut out = Vec::with_capacity(v.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() && j < b.len() {
        let bm = b[j].mon.mul(mon);
        match ord.cmp(&v[i].mon, v[i].comp, &bm, b[j].comp) {
            Ordering::Greater => {
                out.push(v[i]);
                i += 1;
            }
            Ordering::Less => {
                out.push(ModTerm {
                    coef: field.mul(c, b[j].coef),
                    mon: bm,
                    comp: b[j].comp,
                });
                j += 1;
            }
            Ordering::Equal => {
                let s = field.add(v[i].coef, field.mul(c, b[j].coef));
                if s != 0 {
                    out.push(ModTerm {
                        coef: s,
                        mon: bm,
                        comp: b[j].comp,
                    });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&v[i..]);
    for t in &b[j..] {
        out.push(ModTerm {
            coef: field.mul(c, t.coef),
            mon: t.mon.mul(mon),
            comp: t.comp,
        });
    }
    if c == 0 {
        out.retain(|t| t.coef != 0);
    }
    out
}

pub(crate) fn scale(field: GroundField, v: &mut [ModTerm], c: u32) {
    for t in v.iter_mut() {
        t.coef = field.mul(t.coef, c);
    }
}

pub(crate) fn mul_monomial(v: &[ModTerm], mon: &Monomial) -> ModVec {
    v.iter()
        .map(|t| ModTerm {
            coef: t.coef,
            mon: t.mon.mul(mon),
            comp: t.comp,
        })
        .collect()
}

/// Product of a polynomial (given by the terms of a rank-one vector) with a
/// module vector.
pub(crate) fn poly_times(
    field: GroundField,
    ord: &ModuleOrder,
    poly: &[ModTerm],
    v: &[ModTerm],
) -> ModVec {
    let mut acc: ModVec = Vec::new();
    for t in poly {
        acc = axpy(field, ord, &acc, t.coef, &t.mon, v);
    }
    acc
}

pub(crate) fn column_to_modvec(col: &[Polynomial], ord: &ModuleOrder) -> ModVec {
    let mut terms: ModVec = Vec::new();
    for (i, p) in col.iter().enumerate() {
        for &(c, m) in p.terms() {
            terms.push(ModTerm {
                coef: c,
                mon: m,
                comp: i as u32,
            });
        }
    }
    terms.sort_by(|a, b| ord.cmp_terms(b, a));
    terms
}

pub(crate) fn modvec_to_column(ring: &Arc<PolyRing>, v: &[ModTerm], rank: usize) -> Vec<Polynomial> {
    let mut buckets: Vec<Vec<(u32, Monomial)>> = vec![Vec::new(); rank];
    for t in v {
        buckets[t.comp as usize].push((t.coef, t.mon));
    }
    buckets
        .into_iter()
        .map(|b| Polynomial::from_terms(ring, b))
        .collect()
}
