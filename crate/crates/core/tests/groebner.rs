use std::collections::HashMap;
use std::sync::Arc;

use koszulab::groebner::{minimal_free_resolution, syzygy_matrix, GradedFreeModule, GroebnerBasis, PolyMatrix};
use koszulab::linalg::sparse_rank;
use koszulab::polyring::{monomials_of_degree, GroundField, Monomial, MonomialOrder, PolyRing, Polynomial};
use proptest::prelude::*;

fn ring(n: usize) -> Arc<PolyRing> {
    PolyRing::with_vars(GroundField::new(101).unwrap(), n)
}

/// Homogeneous polynomial of degree `deg` from a coefficient seed list.
fn poly(r: &Arc<PolyRing>, deg: u32, coefs: &[u32]) -> Polynomial {
    let mons = monomials_of_degree(r.nvars(), deg);
    let terms = mons
        .into_iter()
        .zip(coefs.iter().cycle())
        .filter(|(_, &c)| c % 3 == 0)
        .map(|(m, &c)| (c % 101, m))
        .collect();
    Polynomial::from_terms(r, terms)
}

/// dim (R/I)_d by counting the rank of all multiples of the generators.
fn oracle_quotient_dim(r: &Arc<PolyRing>, gens: &[Polynomial], d: u32) -> usize {
    let basis = monomials_of_degree(r.nvars(), d);
    let index: HashMap<Monomial, u32> = basis.iter().enumerate().map(|(i, m)| (*m, i as u32)).collect();
    let mut rows = Vec::new();
    for g in gens {
        let Some(gd) = g.degree() else { continue };
        if gd > d {
            continue;
        }
        for m in monomials_of_degree(r.nvars(), d - gd) {
            let mut v: Vec<(u32, u32)> = g.terms().iter().map(|&(c, t)| (index[&t.mul(&m)], c)).collect();
            v.sort_unstable();
            rows.push(v);
        }
    }
    basis.len() - sparse_rank(r.field(), basis.len(), &rows)
}

fn ideal() -> impl Strategy<Value = Vec<(u32, Vec<u32>)>> {
    prop::collection::vec((1u32..4, prop::collection::vec(0u32..300, 1..12)), 1..5)
}

fn matrix(r: &Arc<PolyRing>, spec: &[(u32, Vec<u32>)]) -> PolyMatrix {
    let cols: Vec<Vec<Polynomial>> = spec.iter().map(|(d, c)| vec![poly(r, *d, c)]).collect();
    let twists = spec.iter().map(|(d, _)| *d as i64).collect();
    PolyMatrix::from_columns(r, GradedFreeModule::new(twists), GradedFreeModule::free(1), cols).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hilbert_function_matches_linear_algebra(spec in ideal()) {
        let r = ring(3);
        let m = matrix(&r, &spec);
        let gb = GroebnerBasis::compute(&m);
        let gens: Vec<Polynomial> = m.row(0);
        for d in 0..7 {
            prop_assert_eq!(gb.quotient_dim(d as i64), oracle_quotient_dim(&r, &gens, d));
        }
    }

    #[test]
    fn generators_reduce_to_zero_and_lift(spec in ideal()) {
        let r = ring(3);
        let m = matrix(&r, &spec);
        let gb = GroebnerBasis::compute_tracked(&m);
        for g in gb.elements() {
            let c = gb.lift(&g).unwrap().unwrap();
            let mut back = Polynomial::zero(&r);
            for (j, cj) in c.iter().enumerate() {
                back = &back + &(cj * m.entry(0, j));
            }
            prop_assert_eq!(back, g[0].clone());
        }
        for j in 0..m.ncols() {
            prop_assert!(gb.contains(&m.column(j)).unwrap());
        }
    }

    #[test]
    fn syzygies_compose_to_zero_and_resolution_is_exact_in_rank(spec in ideal()) {
        let r = ring(3);
        let m = matrix(&r, &spec);
        let s = syzygy_matrix(&m);
        prop_assert!(m.mul(&s).unwrap().is_zero());
        let res = minimal_free_resolution(&m, 6);
        prop_assert!(!res.truncated);
        prop_assert!(res.length() <= 3);
        // Alternating sum of ranks is the generic rank of the cokernel.
        let ranks = res.ranks();
        let alt: i64 = ranks.iter().enumerate().map(|(i, &k)| if i % 2 == 0 { k as i64 } else { -(k as i64) }).sum();
        let gb = GroebnerBasis::compute(&m);
        let expected = if gb.is_empty() { 1 } else { 0 };
        prop_assert_eq!(alt, expected);
        for w in res.maps().windows(2) {
            prop_assert!(w[0].mul(&w[1]).unwrap().is_zero());
            prop_assert!(!w[1].has_unit_entry());
        }
    }
}

#[test]
fn module_syzygies_of_a_two_by_three_matrix() {
    let r = PolyRing::new(
        GroundField::default(),
        ["x1", "x2", "x3", "y1", "y2", "y3"].iter().map(|s| s.to_string()).collect(),
        MonomialOrder::Grevlex,
    )
    .unwrap();
    let v = |i| Polynomial::var(&r, i);
    let rows = vec![vec![v(0), v(1), v(2)], vec![v(3), v(4), v(5)]];
    let m = PolyMatrix::with_inferred_twists(&r, rows).unwrap();
    let res = minimal_free_resolution(&m, 5);
    assert_eq!(res.ranks(), vec![2, 3, 1]);
    let s = &res.maps()[1];
    assert_eq!(s.source().twists(), &[2]);
}
