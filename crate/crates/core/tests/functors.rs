use std::sync::Arc;

use lrpkit::algebra::{Algebra, Automorphism};
use lrpkit::bimodule::{left_dual, right_dual, tensor, tensor_comparison, tensor_via_quotient, Bimodule};
use lrpkit::cohomology::{ext_dims, minimal_resolution};
use lrpkit::corpus::Corpus;
use lrpkit::hopf::{functor_f, functor_g};
use lrpkit::module::{is_homomorphism, is_isomorphic, Module};
use lrpkit::varieties::{bimodule_rank_variety, rank_variety};

fn algebras() -> Vec<Arc<Algebra>> {
    vec![
        Algebra::truncated(2, &[2]).unwrap(),
        Algebra::truncated(3, &[3]).unwrap(),
        Algebra::truncated(2, &[2, 2]).unwrap(),
        Algebra::group(3, &[3]).unwrap(),
    ]
}

#[test]
fn induced_bimodules_are_lrp_and_g_recovers_the_module() {
    for a in algebras() {
        let mut c = Corpus::new(5);
        for _ in 0..4 {
            let m = c.random_module(&a, 5).unwrap();
            let b = functor_f(&m).unwrap();
            assert!(b.is_lrp().unwrap());
            assert_eq!(b.dim(), m.dim() * a.dim());
            let g = functor_g(&b).module;
            assert!(is_isomorphic(&g, &m, 1).unwrap().is_yes());
        }
    }
}

#[test]
fn both_tensor_constructions_agree() {
    for a in algebras().into_iter().filter(|a| a.is_truncated()) {
        let mut c = Corpus::new(9);
        for _ in 0..4 {
            let x = Arc::new(c.random_lrp_bimodule(&a, 3 * a.dim()).unwrap());
            let y = Arc::new(c.random_lrp_bimodule(&a, 3 * a.dim()).unwrap());
            let (s, q) = (tensor(&x, &y).unwrap(), tensor_via_quotient(&x, &y).unwrap());
            let cmp = tensor_comparison(&s, &q).unwrap();
            assert!(cmp.is_square() && cmp.is_invertible());
            assert!(is_homomorphism(s.bimodule().inner(), q.bimodule().inner(), &cmp).unwrap());
        }
    }
}

#[test]
fn duals_of_lrp_bimodules_are_lrp_with_the_same_dimension() {
    for a in algebras().into_iter().filter(|a| a.is_truncated()) {
        let mut c = Corpus::new(13);
        for _ in 0..3 {
            let b = c.random_lrp_bimodule(&a, 4 * a.dim()).unwrap();
            for d in [left_dual(&b).unwrap(), right_dual(&b).unwrap()] {
                assert_eq!(d.dim(), b.dim());
                assert!(d.is_lrp().unwrap());
            }
        }
    }
}

#[test]
fn syzygies_keep_the_variety() {
    let a = Algebra::truncated(2, &[2, 2]).unwrap();
    let mut c = Corpus::new(17);
    for _ in 0..5 {
        let m = c.random_module(&a, 6).unwrap();
        assert_eq!(rank_variety(&m.syzygy().unwrap()).unwrap(), rank_variety(&m).unwrap());
    }
    let b = Bimodule::twisted(
        &Automorphism::scalar(&Algebra::truncated(3, &[3]).unwrap(), 2).unwrap(),
        &Automorphism::identity(Algebra::truncated(3, &[3]).unwrap()),
    )
    .unwrap();
    assert_eq!(
        bimodule_rank_variety(&b.syzygy().unwrap()).unwrap(),
        bimodule_rank_variety(&b).unwrap()
    );
}

#[test]
fn ext_of_a_projective_vanishes_above_degree_zero() {
    let a = Algebra::truncated(3, &[3, 3]).unwrap();
    let free = Module::free(a.clone(), 1);
    let k = Module::trivial(a.clone());
    assert_eq!(ext_dims(&free, &k, 3).unwrap().dims, vec![1, 0, 0, 0]);
    let r = minimal_resolution(&k, 3).unwrap();
    assert!(r.is_exact() && r.is_minimal());
    assert_eq!(r.ranks(), vec![1, 2, 3, 4]);
}
