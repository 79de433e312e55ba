use std::collections::BTreeSet;

use fairfan_core::adversarial::{exhaustive_1d, oracle_1d, oracle_1d_closed_form};
use fairfan_core::arrangement::{build_poset, Variant, DEFAULT_CAP};
use fairfan_core::fan::build_fan;
use fairfan_core::geometry::{orientation, Orientation, Point};
use fairfan_core::hamsandwich::equipartition_2pow;
use fairfan_core::measures::{coverage_counts, evaluate_matrix, Atom, DiscreteMeasure, MeasureFamily};
use fairfan_core::pipelines::{pigeonhole_indices, pigeonhole_threshold};
use fairfan_core::rational::{frac, int};
use fairfan_core::Rational;
use proptest::prelude::*;

fn measure(points: &BTreeSet<(i64, i64)>, weights: &[i64]) -> DiscreteMeasure {
    let atoms = points
        .iter()
        .zip(weights.iter().cycle())
        .map(|(&(x, y), &w)| Atom::new(Point::from_ints(&[x, y]), int(w)))
        .collect();
    DiscreteMeasure::new("p", atoms, frac(1, 8)).unwrap()
}

fn planar_family(m: usize) -> impl Strategy<Value = MeasureFamily> {
    prop::collection::btree_set((-40i64..40, -40i64..40), m * 3).prop_map(move |pts| {
        let pts: Vec<_> = pts.into_iter().collect();
        let measures = pts
            .chunks(3)
            .take(m)
            .map(|c| {
                let set: BTreeSet<_> = c.iter().copied().collect();
                measure(&set, &[1, 2, 3])
            })
            .collect();
        MeasureFamily::new(measures).unwrap().with_default_radius().unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn orientation_flips_on_swap(pts in prop::collection::vec((-9i64..9, -9i64..9), 3)) {
        let p: Vec<Point> = pts.iter().map(|&(x, y)| Point::from_ints(&[x, y])).collect();
        let q = vec![p[1].clone(), p[0].clone(), p[2].clone()];
        let (a, b) = (orientation(&p).unwrap(), orientation(&q).unwrap());
        prop_assert_eq!(a.as_i8(), -b.as_i8());
        if a == Orientation::Degenerate {
            prop_assert_eq!(b, Orientation::Degenerate);
        }
    }

    #[test]
    fn pigeonhole_selects_values_at_least_eps(
        xs in prop::collection::vec(0u32..=100, 1..12),
        r_seed in 0usize..12,
        eps in 0u32..=100,
    ) {
        let xs: Vec<Rational> = xs.into_iter().map(|x| frac(x as i64, 100)).collect();
        let r = 1 + r_seed % xs.len();
        let eps = frac(eps as i64, 100);
        let sum: Rational = xs.iter().cloned().sum();
        match pigeonhole_indices(&xs, r, &eps).unwrap() {
            Some(idx) => {
                prop_assert!(sum >= pigeonhole_threshold(xs.len(), r, &eps));
                prop_assert_eq!(idx.len(), r);
                for i in idx {
                    prop_assert!(xs[i] >= eps);
                }
            }
            None => prop_assert!(sum < pigeonhole_threshold(xs.len(), r, &eps)),
        }
    }

    #[test]
    fn fans_cover_and_conserve(family in planar_family(5), n in 2usize..4) {
        // m = 5 ≥ n(c−2)+2 with c = 3 for n ≤ 3.
        let fan = build_fan(&family, n, 3).unwrap();
        let partition = fan.to_partition().unwrap();
        partition.validate().unwrap();
        for k in coverage_counts(&family, &partition, &int(0)) {
            prop_assert!(k >= 3);
        }
        prop_assert!(evaluate_matrix(&family, &partition).unwrap().rows_conserved());
    }

    #[test]
    fn ham_sandwich_is_exact(family in planar_family(2), k in 1u32..3) {
        let eq = equipartition_2pow(family.measure(0), family.measure(1), k).unwrap();
        eq.partition.validate().unwrap();
        for color in 0..2 {
            let share = family.measure(color).total() / int(1 << k);
            for i in 0..eq.partition.len() {
                prop_assert_eq!(eq.color_mass(i, color), share.clone());
            }
        }
    }

    #[test]
    fn interval_oracle_matches_enumeration(m in 1usize..7, n in 1usize..4, c in 1usize..5) {
        prop_assert_eq!(oracle_1d(m, n, c), exhaustive_1d(m, n) >= c);
        prop_assert_eq!(oracle_1d(m, n, c), oracle_1d_closed_form(m, n, c));
    }
}

#[test]
fn posets_are_column_equivariant() {
    for (m, n, c) in [(3, 3, 3), (4, 3, 3), (5, 3, 4), (4, 4, 4)] {
        for v in [Variant::A, Variant::ATilde] {
            let p = build_poset(m, n, c, v, DEFAULT_CAP).unwrap();
            assert!(p.is_equivariant(), "{m} {n} {c} {v:?}");
        }
    }
}
