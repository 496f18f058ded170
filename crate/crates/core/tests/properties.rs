use proptest::prelude::*;

use convgeom::dimension::{cdim, copoints, generating_orderings, geometry_from_points, RationalPointConfig};
use convgeom::exact::Rational;
use convgeom::geometry::{
    check_anti_exchange, check_axioms, geometry_from_orderings, isomorphic, ConvexGeometry, GroundSet,
    OrderingFamily,
};
use convgeom::Subset;

fn orderings(max_n: usize, max_m: usize) -> impl Strategy<Value = OrderingFamily> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(Just((0..n).collect::<Vec<usize>>()).prop_shuffle(), 1..=max_m)
            .prop_map(move |orders| OrderingFamily::new(GroundSet::alphabetic(n), orders).unwrap())
    })
}

fn image(phi: &[usize], x: Subset) -> Subset {
    Subset::from_indices(x.iter().map(|i| phi[i]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_families_are_convex_geometries(o in orderings(7, 4)) {
        let g = geometry_from_orderings(&o).unwrap();
        prop_assert!(check_axioms(g.family()).valid());
        prop_assert!(check_anti_exchange(&g).unwrap().valid());
    }

    #[test]
    fn closure_is_a_closure(o in orderings(6, 3)) {
        let g = geometry_from_orderings(&o).unwrap();
        for x in Subset::all(g.n()) {
            let cx = g.closure(x);
            prop_assert!(x.is_subset_of(cx));
            prop_assert_eq!(g.closure(cx), cx);
            for e in 0..g.n() {
                prop_assert!(cx.is_subset_of(g.closure(x.with(e))));
            }
        }
    }

    #[test]
    fn duplicating_orderings_changes_nothing(o in orderings(6, 3), s in 1usize..4) {
        prop_assert_eq!(geometry_from_orderings(&o.duplicated(s)).unwrap(), geometry_from_orderings(&o).unwrap());
    }

    #[test]
    fn relabelled_geometries_are_isomorphic(
        o in orderings(6, 3),
        perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let g = geometry_from_orderings(&o).unwrap();
        let perm: Vec<usize> = perm.into_iter().filter(|&p| p < g.n()).collect();
        let h = g.relabel(&perm);
        let phi = isomorphic(&g, &h).unwrap().expect("isomorphic");
        for x in Subset::all(g.n()) {
            prop_assert_eq!(g.is_convex(x), h.is_convex(image(&phi, x)));
        }
    }

    #[test]
    fn convex_dimension_is_at_most_the_number_of_orders(o in orderings(6, 3)) {
        let g = geometry_from_orderings(&o).unwrap();
        let d = cdim(&g);
        prop_assert!(d >= 1 && d <= o.deduplicated().m());
        let gen = generating_orderings(&g);
        prop_assert_eq!(gen.m(), d);
        prop_assert_eq!(geometry_from_orderings(&gen).unwrap(), g.clone());
        for c in copoints(&g).copoints {
            prop_assert!(g.is_convex(c.set) && !c.set.contains(c.attached));
        }
    }

    #[test]
    fn planar_point_sets_give_convex_geometries(
        coords in prop::collection::hash_set((-6i64..6, -6i64..6), 1..7),
    ) {
        let pts: Vec<Vec<Rational>> = coords
            .into_iter()
            .map(|(x, y)| vec![Rational::from_integer(x.into()), Rational::from_integer(y.into())])
            .collect();
        let labels = (0..pts.len()).map(|i| format!("p{i}")).collect();
        let g: ConvexGeometry = geometry_from_points(&RationalPointConfig::new(2, labels, pts).unwrap()).unwrap();
        prop_assert!(check_axioms(g.family()).valid());
        prop_assert!(check_anti_exchange(&g).unwrap().valid());
    }
}
