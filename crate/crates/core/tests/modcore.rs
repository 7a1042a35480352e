use std::sync::Arc;

use koszulab::groebner::{syzygy_matrix, GradedFreeModule, PolyMatrix};
use koszulab::modcore::oracle::{degreewise_oracle, module_hilbert, Oracle};
use koszulab::modcore::{fingerprint, ChainComplex, ModuleMap, Subquotient};
use koszulab::polyring::{GroundField, PolyRing, Polynomial};
use proptest::prelude::*;

const TOP: i64 = 4;

fn ring() -> Arc<PolyRing> {
    PolyRing::with_vars(GroundField::new(101).unwrap(), 3)
}

/// Linear forms from coefficient triples, arranged as a `rows × cols` matrix.
fn linear(r: &Arc<PolyRing>, rows: usize, coefs: &[[i64; 3]]) -> PolyMatrix {
    let cols = coefs.len() / rows;
    let entries: Vec<Vec<Polynomial>> = (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| {
                    let c = coefs[i * cols + j];
                    (0..3).fold(Polynomial::zero(r), |acc, v| {
                        &acc + &(&Polynomial::constant(r, c[v]) * &Polynomial::var(r, v))
                    })
                })
                .collect()
        })
        .collect();
    PolyMatrix::new(r, GradedFreeModule::new(vec![1; cols]), GradedFreeModule::new(vec![0; rows]), entries).unwrap()
}

fn coefs(n: usize) -> impl Strategy<Value = Vec<[i64; 3]>> {
    prop::collection::vec(prop::array::uniform3(-2i64..=2), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn cokernel_and_kernel_hilbert_match_oracle(c in coefs(6)) {
        let r = ring();
        let a = linear(&r, 2, &c);
        let coker = Subquotient::cokernel(&a);
        prop_assert_eq!(coker.hilbert_vector(0, TOP), module_hilbert(&coker, 0, TOP));
        let ker = Subquotient::kernel_module(&a);
        prop_assert_eq!(ker.hilbert_vector(1, TOP + 1), module_hilbert(&ker, 1, TOP + 1));
    }

    #[test]
    fn map_dimensions_satisfy_rank_nullity(c in coefs(6)) {
        let r = ring();
        let a = linear(&r, 2, &c);
        let src = Arc::new(Subquotient::free(&r, a.source()));
        let tgt = Arc::new(Subquotient::free(&r, a.target()));
        let f = ModuleMap::new(src.clone(), tgt.clone(), a).unwrap();
        let (ker, im, coker) = f.kernel_image_cokernel().unwrap();
        let o = Oracle::for_module(&tgt);
        for d in 0..=TOP {
            prop_assert_eq!(ker.hilbert(d), o.kernel_dim(&f, d));
            prop_assert_eq!(im.hilbert(d), o.image_dim(&f, d));
            prop_assert_eq!(ker.hilbert(d) + im.hilbert(d), src.hilbert(d));
            prop_assert_eq!(im.hilbert(d) + coker.hilbert(d), tgt.hilbert(d));
        }
    }

    #[test]
    fn syzygy_complex_is_exact_in_the_middle(c in coefs(6)) {
        let r = ring();
        let a = linear(&r, 2, &c);
        let s = syzygy_matrix(&a);
        prop_assume!(s.ncols() > 0);
        let free = |m: &GradedFreeModule| Arc::new(Subquotient::free(&r, m));
        let m0 = free(s.source());
        let m1 = free(a.source());
        let m2 = free(a.target());
        let cx = ChainComplex::new(
            vec![
                ModuleMap::new(m0, m1.clone(), s).unwrap(),
                ModuleMap::new(m1, m2, a.clone()).unwrap(),
            ],
            vec![0, 1, 2],
        )
        .unwrap();
        let mid = cx.homology(1).unwrap();
        prop_assert!(mid.is_zero());
        prop_assert!(degreewise_oracle(&cx, 1, 0, TOP).iter().all(|&x| x == 0));
        let end = cx.homology(2).unwrap();
        prop_assert_eq!(end.hilbert_vector(0, TOP), degreewise_oracle(&cx, 2, 0, TOP));
        prop_assert!(fingerprint(&end, TOP).matches(&fingerprint(&Subquotient::cokernel(&a), TOP)));
    }

    #[test]
    fn shift_moves_the_hilbert_function(c in coefs(3), s in -2i64..=2) {
        let r = ring();
        let a = linear(&r, 1, &c);
        let m = Subquotient::cokernel(&a);
        let shifted = m.shifted(s);
        for d in 0..=TOP {
            prop_assert_eq!(shifted.hilbert(d + s), m.hilbert(d));
        }
        prop_assert!(fingerprint(&m, TOP).matches(&fingerprint(&shifted, TOP)));
    }
}

#[test]
fn residue_field_of_three_variables() {
    let r = ring();
    let vars: Vec<Polynomial> = (0..3).map(|i| Polynomial::var(&r, i)).collect();
    let k = Subquotient::cyclic(&r, &vars).unwrap();
    assert_eq!(k.hilbert_vector(0, 3), vec![1, 0, 0, 0]);
    assert_eq!(module_hilbert(&k, 0, 3), vec![1, 0, 0, 0]);
    assert_eq!(k.minimal_generators().ncols(), 1);
}
