use abelat::eutaxy::{build_certificate, classify_strong, extremality, weighted_outer_sum};
use abelat::group::presentations;
use abelat::lattice::{membership, product_translate};
use abelat::rational::frac;
use abelat::{AbelianGroup, GroupRingElement, Q};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn group_strategy() -> impl Strategy<Value = AbelianGroup> {
    prop::collection::vec(2u64..=6, 1..=3).prop_map(|f| AbelianGroup::new(f).unwrap())
}

fn with_elements(k: usize) -> impl Strategy<Value = (AbelianGroup, Vec<usize>)> {
    group_strategy().prop_flat_map(move |g| {
        let n = g.order();
        (Just(g), prop::collection::vec(0..n, k))
    })
}

fn with_ring_elements(k: usize) -> impl Strategy<Value = (AbelianGroup, Vec<Vec<i64>>)> {
    prop::collection::vec(2u64..=5, 1..=2)
        .prop_map(|f| AbelianGroup::new(f).unwrap())
        .prop_flat_map(move |g| {
            let n = g.order();
            (Just(g), prop::collection::vec(prop::collection::vec(-4i64..=4, n), k))
        })
}

fn el(g: &AbelianGroup, c: &[i64]) -> GroupRingElement {
    GroupRingElement::from_ints(g, c).unwrap()
}

proptest! {
    #[test]
    fn group_axioms((g, e) in with_elements(3)) {
        let (x, y, z) = (e[0], e[1], e[2]);
        prop_assert_eq!(g.mul_idx(g.mul_idx(x, y), z), g.mul_idx(x, g.mul_idx(y, z)));
        prop_assert_eq!(g.mul_idx(x, y), g.mul_idx(y, x));
        prop_assert_eq!(g.mul_idx(x, g.identity()), x);
        prop_assert_eq!(g.mul_idx(x, g.inv_idx(x)), g.identity());
        prop_assert_eq!(g.pow_idx(x, g.element_order(x) as i64), g.identity());
        prop_assert_eq!(g.index_of(&g.element(x)).unwrap(), x);
    }

    #[test]
    fn ring_axioms((g, v) in with_ring_elements(3)) {
        let (x, y, z) = (el(&g, &v[0]), el(&g, &v[1]), el(&g, &v[2]));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &GroupRingElement::one(&g), x.clone());
        prop_assert_eq!((&x * &y).involution(), &x.involution() * &y.involution());
        prop_assert_eq!((&x * &y).augmentation(), x.augmentation() * y.augmentation());
    }

    #[test]
    fn inner_product_is_trace((g, v) in with_ring_elements(2)) {
        let (x, y) = (el(&g, &v[0]), el(&g, &v[1]));
        prop_assert_eq!(x.inner(&y).unwrap(), (&x * &y.involution()).trace());
    }

    #[test]
    fn psi_is_a_homomorphism((g, v) in with_ring_elements(2)) {
        let (x, y) = (el(&g, &v[0]), el(&g, &v[1]));
        let sum = &x + &y;
        prop_assert_eq!(sum.psi_idx().unwrap(), g.mul_idx(x.psi_idx().unwrap(), y.psi_idx().unwrap()));
    }

    #[test]
    fn lattice_is_an_ideal((g, e) in with_elements(4)) {
        let m = GroupRingElement::m(&g, e[0], e[1]);
        prop_assert!(membership(&m));
        prop_assert!(membership(&m.translate(e[2])));
        let delta = GroupRingElement::delta(&g, e[3]);
        prop_assert!(membership(&(&m * &delta)));
        prop_assert_eq!(product_translate(&g, e[0], e[1], e[2]), m.translate(e[2]).to_ints().unwrap());
    }

    #[test]
    fn orbit_sum_is_left_multiplication((g, v) in with_ring_elements(1)) {
        let s = el(&g, &v[0]);
        let n = g.order();
        let translates: Vec<Vec<i64>> = (0..n).map(|h| s.translate(h).to_ints().unwrap()).collect();
        let sum = weighted_outer_sum(n, &translates, &vec![Q::one(); n]);
        prop_assert_eq!(sum, (&s * &s.involution()).left_mul_matrix());
    }

    #[test]
    fn replacement_identities((g, e) in with_elements(2)) {
        let (a, b) = (e[0], e[1]);
        let ga = GroupRingElement::basis(&g, a);
        let gb = GroupRingElement::basis(&g, b);
        let lhs = GroupRingElement::m(&g, a, a);
        let rhs = &(&GroupRingElement::delta(&g, a) * &(&ga - &gb)) + &GroupRingElement::m(&g, a, b);
        prop_assert_eq!(lhs, rhs);
        let a_inv = g.inv_idx(a);
        let lhs = GroupRingElement::m(&g, a, a_inv);
        let rhs = &GroupRingElement::m(&g, a_inv, g.mul_idx(a, b)) + &GroupRingElement::m(&g, a, b);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn product_rule((g, e) in with_elements(3)) {
        // (ab - 1) = (a-1)(b-1) + (a-1) + (b-1)
        let (a, b) = (e[0], e[1]);
        let lhs = GroupRingElement::delta(&g, g.mul_idx(a, b));
        let rhs = &(&GroupRingElement::m(&g, a, b) + &GroupRingElement::delta(&g, a)) + &GroupRingElement::delta(&g, b);
        prop_assert_eq!(lhs, rhs);
    }
}

fn small_groups() -> Vec<AbelianGroup> {
    ["C2", "C3", "C2xC2", "C5", "C6", "C7", "C8", "C4xC2", "C2xC2xC2", "C9", "C3xC3", "C10", "C12", "C6xC2"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

#[test]
fn verified_matrix_is_the_projection() {
    for g in small_groups() {
        let cert = build_certificate(&g).unwrap();
        let n = g.order();
        let m = weighted_outer_sum(n, &cert.vectors, &cert.lambda);
        for i in 0..n {
            let row_sum: Q = m[i].iter().sum();
            assert!(row_sum.is_zero(), "{g}");
            for j in 0..n {
                let sq: Q = (0..n).map(|k| &m[i][k] * &m[k][j]).sum();
                assert_eq!(sq, m[i][j], "{g}: M^2 != M at ({i}, {j})");
            }
        }
    }
}

#[test]
fn verdicts_do_not_depend_on_presentation() {
    for f in [vec![4u64, 2], vec![6], vec![6, 2], vec![12], vec![4, 4], vec![3, 3], vec![10]] {
        let reference = AbelianGroup::new(f.clone()).unwrap();
        let strong = classify_strong(&reference).unwrap();
        let ext = extremality(&reference).unwrap();
        for p in presentations(&f) {
            let g = AbelianGroup::new(p).unwrap();
            assert_eq!(classify_strong(&g).unwrap(), strong, "{g}");
            let e = extremality(&g).unwrap();
            assert_eq!((e.eutactic, e.perfection.rank, e.extreme), (ext.eutactic, ext.perfection.rank, ext.extreme), "{g}");
        }
    }
}

#[test]
fn strong_branches_have_constant_gamma() {
    for g in small_groups().into_iter().filter(|g| g.order() >= 4) {
        let cert = build_certificate(&g).unwrap();
        let first = &cert.gamma[0].value;
        let constant = cert.gamma.iter().all(|e| &e.value == first);
        assert_eq!(constant, classify_strong(&g).unwrap(), "{g}");
    }
    let c5 = build_certificate(&"C5".parse().unwrap()).unwrap();
    assert_eq!(c5.gamma[0].value, frac(1, 40));
    let k4 = build_certificate(&"C2xC2".parse().unwrap()).unwrap();
    assert!(k4.gamma.iter().all(|e| e.value == frac(1, 32)));
    assert!(k4.lambda.iter().all(|l| *l == frac(1, 8)));
    assert_eq!(k4.lambda.len(), 6);
}
