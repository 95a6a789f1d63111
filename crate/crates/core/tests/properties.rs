mod common;

use proptest::prelude::*;

use ftik_core::catalog::{self, closed_braid};
use ftik_core::fintype::{self, CASSON, CONSTANT_ONE, LAMBDA1};
use ftik_core::invariants;
use ftik_core::series::rat;
use ftik_core::skein;
use ftik_core::{LinkDiagram, SurgeryPresentation};

use common::{a2_from_jones, as_poly, int, naive_bracket, v_closed_form};

/// Closures of random braid words on 2 to 4 strands.
fn braid() -> impl Strategy<Value = LinkDiagram> {
    (2usize..=4).prop_flat_map(|s| {
        let gen = (1..s as i32).prop_flat_map(|g| prop_oneof![Just(g), Just(-g)]);
        prop::collection::vec(gen, 1..=8).prop_map(move |w| closed_braid("braid", s, &w, 0))
    })
}

/// Random braid closures that are knots.
fn braid_knot() -> impl Strategy<Value = LinkDiagram> {
    braid().prop_filter("a knot", |d| d.num_components() == 1)
}

fn catalog_presentation() -> impl Strategy<Value = SurgeryPresentation> {
    let small: Vec<SurgeryPresentation> =
        catalog::entries().into_iter().filter_map(|e| e.surgery().ok()).filter(|s| s.num_components() <= 3).collect();
    prop::sample::select(small)
}

fn catalog_asl() -> Vec<LinkDiagram> {
    catalog::entries()
        .into_iter()
        .map(|e| e.diagram)
        .filter(|d| !d.is_empty() && d.is_algebraically_split().unwrap())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mirror_negates_linking_numbers(d in braid()) {
        let lk = d.linking_matrix().unwrap();
        let m = d.mirror().linking_matrix().unwrap();
        for i in 0..lk.len() {
            for j in 0..lk.len() {
                if i != j {
                    prop_assert_eq!(m[i][j], -lk[i][j]);
                }
            }
        }
    }

    #[test]
    fn sublink_linking_matrix_is_principal_submatrix(d in braid(), mask in 1u64..16) {
        // Sublinks may reorder components, so tag each one with its own framing.
        let n = d.num_components();
        let d = d.with_framings((1..=n as i64).collect()).unwrap();
        let keep: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        prop_assume!(!keep.is_empty());
        let lk = d.linking_matrix().unwrap();
        let sub = d.sublink(&keep);
        let origin: Vec<usize> = sub.framings().iter().map(|&f| f as usize - 1).collect();
        let mut sorted = origin.clone();
        sorted.sort_unstable();
        prop_assert_eq!(&sorted, &keep);
        let m = sub.linking_matrix().unwrap();
        for (a, &i) in origin.iter().enumerate() {
            for (b, &j) in origin.iter().enumerate() {
                prop_assert_eq!(m[a][b], lk[i][j]);
            }
        }
    }

    #[test]
    fn bracket_matches_state_sum(d in braid()) {
        prop_assert_eq!(as_poly(skein::kauffman_bracket(&d).unwrap().terms()), naive_bracket(&d));
    }

    #[test]
    fn jones_derivatives_match_closed_form(d in braid(), i in 0usize..=4) {
        let v = invariants::v_i(&d, i, 12).unwrap();
        prop_assert_eq!(v, v_closed_form(&skein::jones(&d).unwrap(), i as u32));
    }

    #[test]
    fn conway_has_parity_of_component_count(d in braid()) {
        let parity = (d.num_components() as i64 + 1) % 2;
        let c = skein::conway(&d).unwrap();
        for (k, x) in c.terms() {
            prop_assert!(k.rem_euclid(2) == parity || *x == int(0), "z^{k} in {c}");
        }
    }

    #[test]
    fn knot_a2_agrees_with_jones_and_mirror(k in braid_knot()) {
        let a2 = skein::a2(&k).unwrap();
        prop_assert_eq!(&a2, &a2_from_jones(&skein::jones(&k).unwrap()));
        prop_assert_eq!(&a2, &skein::a2(&k.mirror()).unwrap());
    }

    #[test]
    fn murakami_identity_on_knots(k in braid_knot()) {
        prop_assert_eq!(invariants::phi_i(&k, 1, 12).unwrap(), skein::a2(&k).unwrap() * rat(6));
    }

    #[test]
    fn x_is_multiplicative_on_split_unions(a in braid(), b in braid()) {
        prop_assume!(a.num_components() + b.num_components() <= 5);
        let u = invariants::x_series(&a.disjoint_union(&b), 8).unwrap();
        let prod = invariants::x_series(&a, 8).unwrap().mul(&invariants::x_series(&b, 8).unwrap()).unwrap();
        prop_assert_eq!(u, prod);
    }

    #[test]
    fn lambda1_additive(a in catalog_presentation(), b in catalog_presentation()) {
        let u = invariants::lambda1(&a.disjoint_union(&b)).unwrap();
        prop_assert_eq!(u, invariants::lambda1(&a).unwrap() + invariants::lambda1(&b).unwrap());
    }

    #[test]
    fn difference_sum_ignores_component_order(a in catalog_presentation(), b in catalog_presentation()) {
        prop_assume!(a.num_components() + b.num_components() <= 5);
        for f in [CASSON, LAMBDA1] {
            let ab = fintype::difference_sum(&f, &a.disjoint_union(&b)).unwrap();
            let ba = fintype::difference_sum(&f, &b.disjoint_union(&a)).unwrap();
            prop_assert_eq!(ab, ba);
        }
    }

    #[test]
    fn constant_telescopes(a in catalog_presentation()) {
        prop_assume!(a.num_components() >= 1);
        prop_assert_eq!(fintype::difference_sum(&CONSTANT_ONE, &a).unwrap(), int(0));
    }

    #[test]
    fn surgery_on_knot_casson_is_signed_a2(k in braid_knot(), f in prop_oneof![Just(1i64), Just(-1i64)]) {
        let sp = SurgeryPresentation::new(k.clone().with_framings(vec![f]).unwrap()).unwrap();
        prop_assert_eq!(invariants::casson(&sp).unwrap(), skein::a2(&k).unwrap() * rat(f));
    }

    #[test]
    fn lambda2_of_knot_surgery_is_divisible_by_three(k in braid_knot(), f in prop_oneof![Just(1i64), Just(-1i64)]) {
        let sp = SurgeryPresentation::new(k.with_framings(vec![f]).unwrap()).unwrap();
        let l2 = invariants::lambda2(&sp).unwrap();
        prop_assert!(l2.is_integer() && l2.to_integer() % 3 == 0.into(), "lambda2 = {l2}");
    }
}

#[test]
fn parallels_of_catalog_asls_are_algebraically_split() {
    for d in catalog_asl().into_iter().filter(|d| d.num_components() <= 3) {
        for m in [2, 3] {
            let p = d.parallel(m).unwrap();
            let lk = p.diagram.linking_matrix().unwrap();
            for (i, row) in lk.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    assert!(i == j || *x == 0, "{} {m}-parallel: lk[{i}][{j}] = {x}", d.name());
                }
            }
        }
    }
}

#[test]
fn sublink_of_parallel_is_parallel_of_sublink() {
    for name in ["trefoil-right", "whitehead", "borromean", "borromean-trefoil"] {
        let d = catalog::diagram(name).unwrap();
        let n = d.num_components();
        let p = d.parallel(2).unwrap();
        for mask in 1..1u64 << n {
            let keep: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let tuple: Vec<usize> = (0..n).map(|i| if keep.contains(&i) { 2 } else { 0 }).collect();
            let a = p.diagram.sublink(&p.components_for_tuple(&tuple));
            let b = d.sublink(&keep).parallel(2).unwrap().diagram;
            assert_eq!(skein::jones(&a).unwrap(), skein::jones(&b).unwrap(), "{name} {keep:?}");
            if a.num_crossings() <= 12 {
                assert_eq!(skein::conway(&a).unwrap(), skein::conway(&b).unwrap(), "{name} {keep:?}");
            }
        }
    }
}

#[test]
fn casson_has_order_three_on_catalog() {
    let four: Vec<_> =
        catalog::entries().into_iter().filter_map(|e| e.surgery().ok()).filter(|s| s.num_components() >= 4).collect();
    assert!(!four.is_empty());
    for f in [CASSON, LAMBDA1] {
        assert!(fintype::order_check(&f, &four, 3).unwrap().passed());
    }
}
