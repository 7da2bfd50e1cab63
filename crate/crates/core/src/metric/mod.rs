//! The (∇, Δ)-Gordian graph: vertices are Conway classes, and two classes are
//! adjacent when their `a2` coefficients differ by exactly one.

mod geodesic;
mod universe;

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::conway::ConwayClass;

pub use geodesic::{GeodesicPath, Geodesics, DEFAULT_GEODESIC_CAP};
pub use universe::{Center, FiniteUniverse, UniverseFile, UniverseParams, DEFAULT_VERTEX_CAP, UNIVERSE_SCHEMA_VERSION};

fn a2_gap(u: &ConwayClass, v: &ConwayClass) -> BigUint {
    (u.a2() - v.a2()).magnitude().clone()
}

/// Exact distance in the (∇, Δ)-Gordian graph:
/// `0` if `u = v`, `2` if the classes differ but share `a2`, and
/// `|a2(u) - a2(v)|` otherwise.
pub fn delta_nabla_distance(u: &ConwayClass, v: &ConwayClass) -> BigUint {
    if u == v {
        return BigUint::zero();
    }
    let gap = a2_gap(u, v);
    if gap.is_zero() {
        BigUint::from(2u8)
    } else {
        gap
    }
}

/// Whether a claimed distance `d` clears the `|Δa2|` lower bound and has the
/// same parity as `|Δa2|`.
pub fn okada_bound_and_parity(u: &ConwayClass, v: &ConwayClass, d: &BigUint) -> bool {
    let gap = a2_gap(u, v);
    *d >= gap && d.is_even() == gap.is_even()
}

pub fn adjacent(u: &ConwayClass, v: &ConwayClass) -> bool {
    a2_gap(u, v).is_one()
}

/// Possible values of the crossing-change distance between two Conway
/// classes.
///
/// Every class contains a knot with unknotting number one, so the unknot
/// class is adjacent to all others and the diameter is at most two. Between
/// two nontrivial classes the exact value is not decided here. For the trefoil
/// and figure-eight classes (`1 + z^2` and `1 - z^2`) it is known to be 2.
pub fn x_nabla_distance_bounds(u: &ConwayClass, v: &ConwayClass) -> BTreeSet<u32> {
    if u == v {
        BTreeSet::from([0])
    } else if u.is_unknot() || v.is_unknot() {
        BTreeSet::from([1])
    } else {
        BTreeSet::from([1, 2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn c(even: &[i64]) -> ConwayClass {
        ConwayClass::from_even(even.iter().copied())
    }

    #[test]
    fn distance_cases() {
        let t = c(&[1]);
        assert_eq!(delta_nabla_distance(&t, &t), 0u8.into());
        assert_eq!(delta_nabla_distance(&t, &c(&[3, 1])), 2u8.into());
        assert_eq!(delta_nabla_distance(&t, &c(&[1, 1])), 2u8.into());
        for n in 1..20 {
            assert_eq!(delta_nabla_distance(&ConwayClass::unknot(), &c(&[n])), BigUint::from(n as u64));
        }
    }

    #[test]
    fn big_coefficients_do_not_overflow() {
        let huge: BigInt = BigInt::from(i64::MAX) * 4;
        let u = ConwayClass::from_even([huge.clone()]);
        let v = ConwayClass::from_even([-huge]);
        assert_eq!(delta_nabla_distance(&u, &v), BigUint::from(i64::MAX as u64) * 8u8);
    }

    #[test]
    fn okada_check() {
        let (u, v) = (c(&[0]), c(&[3]));
        assert!(okada_bound_and_parity(&u, &v, &3u8.into()));
        assert!(!okada_bound_and_parity(&u, &v, &1u8.into()));
        assert!(!okada_bound_and_parity(&c(&[0]), &c(&[1]), &2u8.into()));
        assert!(okada_bound_and_parity(&c(&[1]), &c(&[1, 1]), &2u8.into()));
    }

    #[test]
    fn adjacency() {
        assert!(adjacent(&ConwayClass::unknot(), &c(&[1])));
        assert!(!adjacent(&c(&[1]), &c(&[1, 1])));
        assert!(!adjacent(&c(&[1]), &c(&[1])));
    }

    #[test]
    fn crossing_change_bounds() {
        let (k1, km1) = (c(&[1]), c(&[-1]));
        assert_eq!(x_nabla_distance_bounds(&k1, &k1), BTreeSet::from([0]));
        assert_eq!(x_nabla_distance_bounds(&ConwayClass::unknot(), &km1), BTreeSet::from([1]));
        assert_eq!(x_nabla_distance_bounds(&k1, &km1), BTreeSet::from([1, 2]));
    }
}
