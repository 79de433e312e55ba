//! Closed-form values checked against independent recomputation.

use fairfan_core::arrangement::{build_poset, Variant, DEFAULT_CAP};
use fairfan_core::pipelines::{epsilon_bound, pigeonhole_indices, plan_alpha_groups, plan_epsilon_groups};
use fairfan_core::rational::{frac, int};
use fairfan_core::Rational;

/// Every quota vector with entries in {⌊c/d⌋, ⌈c/d⌉} summing to c.
fn quota_vectors(c: usize, d: usize) -> Vec<Vec<usize>> {
    let (lo, hi) = (c / d, c.div_ceil(d));
    let mut out = Vec::new();
    for mask in 0u32..1 << d {
        let v: Vec<usize> = (0..d).map(|k| if mask >> k & 1 == 1 { hi } else { lo }).collect();
        if v.iter().sum::<usize>() == c && !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

#[test]
fn epsilon_plan_is_one_of_the_enumerated() {
    for n in 2..6 {
        for d in 2..4 {
            for c in d..d + 5 {
                let m = n * (c - d) + d;
                let plan = plan_epsilon_groups(m, n, c, d).unwrap();
                let options = quota_vectors(c, d);
                assert!(options.contains(&plan.quotas), "{n} {c} {d}");
                let sizes: Vec<usize> = plan.quotas.iter().map(|r| n * (r - 1) + 1).collect();
                assert_eq!(plan.sizes, sizes);
                assert_eq!(plan.total_size(), m);
                let eps = epsilon_bound(n, c, d).unwrap().epsilon;
                for f in &plan.fractions {
                    assert!(f >= &eps);
                }
            }
        }
    }
    let plan = plan_epsilon_groups(8, 2, 5, 2).unwrap();
    assert_eq!(plan.quotas, vec![3, 2]);
    assert_eq!(plan.sizes, vec![5, 3]);
}

#[test]
fn epsilon_by_substitution() {
    // 1 / (n((n−1)(⌈c/d⌉−1)+1)) written out by hand.
    assert_eq!(epsilon_bound(2, 4, 2).unwrap().epsilon, Rational::new(1.into(), (2 * (1 + 1)).into()));
    assert_eq!(epsilon_bound(3, 5, 2).unwrap().epsilon, Rational::new(1.into(), (3 * (2 * 2 + 1)).into()));
    for n in 2..9 {
        for d in 2..5 {
            for c in d..3 * d {
                let b = epsilon_bound(n, c, d).unwrap();
                assert!(b.epsilon >= b.floor, "{n} {c} {d}");
            }
            assert_eq!(epsilon_bound(n, d, d).unwrap().epsilon, frac(1, n as i64));
        }
    }
}

#[test]
fn alpha_plan_by_substitution() {
    let p = plan_alpha_groups(2, 4, 2, &frac(1, 5)).unwrap();
    assert_eq!(p.ratio, frac(4, 5) / frac(3, 10));
    assert_eq!(p.plan.quotas, vec![2, 2]);
    assert_eq!(p.plan.sizes, vec![3, 3]);
    assert_eq!(p.plan.total_size(), 6);
    for n in 2..7usize {
        for c in 4..9 {
            let p = plan_alpha_groups(n, c, 2, &frac(1, 2 * n as i64 - 1)).unwrap();
            assert_eq!(p.ratio, int(2 * n as i64));
            assert_eq!(p.integer_ratio_m, Some(2 * n * (c - 2)));
            assert!(p.plan.total_size() <= p.min_m());
        }
    }
}

#[test]
fn pigeonhole_by_sorting() {
    let xs = [frac(1, 1), frac(1, 1), frac(1, 2)];
    let mut sorted = xs.to_vec();
    sorted.sort();
    assert!(sorted[1] >= frac(1, 2));
    assert_eq!(pigeonhole_indices(&xs, 2, &frac(1, 2)).unwrap(), Some(vec![0, 1]));
}

/// All admissible zero patterns by scanning every bit matrix.
fn brute_count(m: usize, n: usize, c: usize, variant: Variant) -> usize {
    let rows = if variant == Variant::A { m - 1 } else { m };
    let s = m - c + 1;
    let cells = rows * n;
    (1u64..1 << cells)
        .filter(|&bits| {
            let z = |j: usize, k: usize| bits >> (j * n + k) & 1 == 1;
            let rows_ok = (0..rows).all(|j| (0..n).any(|k| !z(j, k)));
            let cols_ok = (0..n).all(|k| {
                let cnt = (0..rows).filter(|&j| z(j, k)).count();
                cnt == 0 || (cnt >= s && (variant == Variant::A || cnt < rows))
            });
            rows_ok && cols_ok
        })
        .count()
}

#[test]
fn poset_sizes_by_bit_scan() {
    for (m, n, c) in [(3, 2, 3), (4, 2, 3), (4, 3, 2), (5, 2, 4), (4, 3, 4), (5, 3, 3)] {
        for v in [Variant::A, Variant::ATilde] {
            let p = build_poset(m, n, c, v, DEFAULT_CAP).unwrap();
            assert_eq!(p.len(), brute_count(m, n, c, v), "{m} {n} {c} {v:?}");
        }
    }
}

#[test]
fn small_fiber_dims_by_chain_search() {
    // (3, 2, 3): fiber patterns are the two anti-diagonal 2×2 matrices, an
    // antichain, so the order complex is two points.
    let p = build_poset(3, 2, 3, Variant::A, DEFAULT_CAP).unwrap();
    let top = p.top_mask();
    assert_eq!(p.fiber(top).len(), 2);
    assert_eq!(p.fiber_dim(top), 0);
    let p = build_poset(4, 2, 3, Variant::A, DEFAULT_CAP).unwrap();
    assert!(p.fiber(p.top_mask()).is_empty());
}
