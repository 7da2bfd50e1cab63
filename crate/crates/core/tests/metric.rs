use std::collections::BTreeSet;

use gordian::{
    adjacent, delta_nabla_distance, okada_bound_and_parity, x_nabla_distance_bounds, Center, ConwayClass,
    FiniteUniverse, GeodesicPath, UniverseParams,
};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn universe(a: i64, b: i64, depth: u32, coeff: u32) -> FiniteUniverse {
    FiniteUniverse::build(UniverseParams::new(a, b, depth, coeff), 10_000).unwrap()
}

fn d(u: &ConwayClass, v: &ConwayClass) -> u64 {
    u64::try_from(delta_nabla_distance(u, v)).unwrap()
}

#[test]
fn metric_axioms_on_small_universes() {
    for u in [universe(-1, 1, 1, 0), universe(0, 2, 2, 1), universe(-2, 2, 2, 1), universe(0, 4, 2, 1)] {
        assert!(u.len() <= 15);
        let vs = u.vertices();
        for x in vs {
            for y in vs {
                assert_eq!(d(x, y) == 0, x == y);
                assert_eq!(d(x, y), d(y, x));
                for z in vs {
                    assert!(d(x, z) <= d(x, y) + d(y, z), "{x} {y} {z}");
                }
            }
        }
    }
}

#[test]
fn bfs_matches_formula_exhaustively() {
    for u in [universe(-3, 3, 3, 1), universe(0, 4, 3, 2)] {
        for x in u.vertices() {
            for y in u.vertices() {
                assert_eq!(u.bfs_distance(x, y).unwrap(), d(x, y), "{x} {y}");
            }
        }
    }
}

#[test]
fn bfs_matches_formula_on_a_large_universe() {
    let u = universe(-5, 5, 2, 20);
    assert_eq!(u.len(), 451);
    let mut r = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..300 {
        let x = u.vertex(r.random_range(0..u.len()));
        let y = u.vertex(r.random_range(0..u.len()));
        assert_eq!(u.bfs_distance(x, y).unwrap(), d(x, y), "{x} {y}");
    }
}

#[test]
fn level_lemma_on_several_universes() {
    for u in [universe(-2, 2, 2, 1), universe(-3, 3, 3, 1), universe(0, 5, 2, 2)] {
        let p = u.params();
        for v in u.vertices() {
            let n = i64::try_from(v.a2()).unwrap();
            if n == p.a2_min || n == p.a2_max {
                continue;
            }
            let ball: BTreeSet<_> = u.neighborhood(&Center::Vertex(v.clone()), 2).unwrap().into_iter().collect();
            for w in u.neighborhood(&Center::Level(n), 1).unwrap() {
                assert!(ball.contains(&w), "{w} near level {n} but far from {v}");
            }
        }
    }
}

#[test]
fn geodesic_counts() {
    let u = universe(0, 4, 2, 1);
    let w = u.width() as u64;
    for x in u.vertices() {
        for y in u.vertices() {
            let k = d(x, y);
            let got = u.enumerate_geodesics(x, y, 100_000).unwrap();
            assert!(!got.truncated);
            let gap = (x.a2() - y.a2()).magnitude().clone();
            let expected = if x == y {
                1
            } else if gap == 0u8.into() {
                let n = i64::try_from(x.a2()).unwrap();
                w * [n - 1, n + 1].iter().filter(|m| (0..=4).contains(*m)).count() as u64
            } else {
                w.pow(k as u32 - 1)
            };
            assert_eq!(got.paths.len() as u64, expected, "{x} to {y}");
            for p in &got.paths {
                assert_eq!(p.len() as u64, k);
                assert_eq!(p.start(), x);
                assert_eq!(p.end(), y);
                assert!(GeodesicPath::new(p.vertices().to_vec()).is_ok());
            }
        }
    }
}

#[test]
fn universe_file_round_trip() {
    let u = universe(-2, 2, 2, 1);
    let text = u.to_json();
    assert!(text.contains("\"schema_version\": 1"));
    let back = FiniteUniverse::from_json(&text).unwrap();
    assert_eq!(back, u);
    assert_eq!(back.edge_count(), u.edge_count());
    let tampered = text.replacen("\"edge_count\": 36", "\"edge_count\": 37", 1);
    assert_ne!(tampered, text);
    assert!(FiniteUniverse::from_json(&tampered).is_err());
}

#[test]
fn crossing_change_metric_bounds() {
    let unknot = ConwayClass::unknot();
    let trefoil = ConwayClass::twist(1);
    let fig8 = ConwayClass::twist(-1);
    assert_eq!(x_nabla_distance_bounds(&unknot, &unknot), BTreeSet::from([0]));
    assert_eq!(x_nabla_distance_bounds(&unknot, &trefoil), BTreeSet::from([1]));
    assert_eq!(x_nabla_distance_bounds(&trefoil, &fig8), BTreeSet::from([1, 2]));
}

fn class() -> impl Strategy<Value = ConwayClass> {
    prop::collection::vec(-4i64..=4, 0..=3).prop_map(ConwayClass::from_even)
}

proptest! {
    #[test]
    fn distance_properties(x in class(), y in class(), z in class()) {
        let dxy = delta_nabla_distance(&x, &y);
        prop_assert!(okada_bound_and_parity(&x, &y, &dxy));
        prop_assert_eq!(&dxy, &delta_nabla_distance(&y, &x));
        prop_assert!(delta_nabla_distance(&x, &z) <= &dxy + delta_nabla_distance(&y, &z));
        prop_assert_eq!(adjacent(&x, &y), dxy == BigUint::from(1u8));
    }

    #[test]
    fn level_structure(a in -4i64..=2, span in 1i64..=3, depth in 1u32..=3, coeff in 0u32..=2) {
        let u = universe(a, a + span, depth, coeff);
        let w = (2 * coeff as usize + 1).pow(depth - 1);
        prop_assert_eq!(u.width(), w);
        prop_assert_eq!(u.len(), w * (span as usize + 1));
        prop_assert_eq!(u.edge_count(), (span * (w * w) as i64) as u64);
        for i in 0..u.len() {
            prop_assert_eq!(BigUint::try_from(u.vertex(i).a2() - a).ok(), Some(BigUint::from((i / w) as u64)));
        }
    }
}
