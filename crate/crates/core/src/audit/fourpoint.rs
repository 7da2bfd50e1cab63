use std::time::Instant;

use num_bigint::BigInt;
use rand::Rng;

use super::{
    elapsed_ms, list, rng, AuditConfig, AuditKind, AuditReport, Details, HalfInt, Mode, Sampling, Witness,
    REPORT_SCHEMA_VERSION,
};
use crate::conway::ConwayClass;
use crate::error::{Error, Resource, Result};
use crate::metric::{delta_nabla_distance, FiniteUniverse};

/// Gromov product `(u|v)_w = (d(u,w) + d(v,w) - d(u,v)) / 2`.
pub fn gromov_product(u: &ConwayClass, v: &ConwayClass, w: &ConwayClass) -> HalfInt {
    let d = |a, b| BigInt::from(delta_nabla_distance(a, b));
    HalfInt::from_twice(d(u, w) + d(v, w) - d(u, v))
}

/// Twice `min((x|y)_w, (y|z)_w) - (x|z)_w`.
fn twice_excess(u: &FiniteUniverse, [x, y, z, w]: [usize; 4]) -> i64 {
    let d = |a, b| u.dist(a, b) as i64;
    let xy = d(x, w) + d(y, w) - d(x, y);
    let yz = d(y, w) + d(z, w) - d(y, z);
    let xz = d(x, w) + d(z, w) - d(x, z);
    xy.min(yz) - xz
}

/// Four-point constant: the largest `min((x|y)_w, (y|z)_w) - (x|z)_w` over
/// ordered quadruples, clamped below at 0. Exhaustive when `n^4` fits in the
/// budget; otherwise sampled (or an error without fallback).
pub fn audit_four_point(u: &FiniteUniverse, config: &AuditConfig) -> Result<AuditReport> {
    let start = Instant::now();
    let n = u.len();
    let total = (n as u64).checked_pow(4).unwrap_or(u64::MAX);
    let mut mode = config.mode;
    if mode == Mode::Exhaustive && total > config.budget {
        if !config.sampling_fallback {
            return Err(Error::ResourceLimit { resource: Resource::Configurations, limit: config.budget, actual: total });
        }
        mode = Mode::Sampled;
    }

    let mut best: Option<(i64, [usize; 4])> = None;
    let mut seen = 0u64;
    let mut visit = |q: [usize; 4]| {
        seen += 1;
        let e = twice_excess(u, q);
        if best.is_none_or(|(b, _)| e > b) {
            best = Some((e, q));
        }
    };
    match mode {
        Mode::Exhaustive => {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        for w in 0..n {
                            visit([x, y, z, w]);
                        }
                    }
                }
            }
        }
        Mode::Sampled => {
            let mut r = rng(config.seed);
            for _ in 0..config.sample_size {
                visit([(); 4].map(|_| r.random_range(0..n)));
            }
        }
    }

    let measured = HalfInt::from_twice(best.map_or(0, |(e, _)| e.max(0)));
    let bound = HalfInt::from_int(2);
    let witness = best.map(|(e, q)| Witness::Quadruple {
        points: q.map(|i| list(u.vertex(i))),
        value: HalfInt::from_twice(e),
    });
    Ok(AuditReport {
        schema_version: REPORT_SCHEMA_VERSION,
        kind: AuditKind::FourPoint,
        universe: Some(u.params()),
        mode,
        sampling: (mode == Mode::Sampled).then(|| Sampling::new(config.seed, config.sample_size)),
        pass: measured <= bound,
        bound,
        measured,
        configurations: seen,
        witness,
        details: Details::FourPoint { quadruples: seen },
        duration_ms: elapsed_ms(start),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::UniverseParams;

    fn universe(a: i64, b: i64, d: u32, c: u32) -> FiniteUniverse {
        FiniteUniverse::build(UniverseParams::new(a, b, d, c), 10_000).unwrap()
    }

    #[test]
    fn products() {
        let k = ConwayClass::twist;
        assert_eq!(gromov_product(&k(1), &k(1), &k(4)), HalfInt::from_int(3));
        assert_eq!(gromov_product(&k(0), &k(2), &k(1)), HalfInt::from_int(0));
        let v = ConwayClass::from_even([1, 1]);
        assert_eq!(gromov_product(&k(1), &v, &k(0)), HalfInt::from_int(0));
        assert_eq!(gromov_product(&k(0), &k(1), &v), HalfInt::from_int(1));
        // Distances have the parity of the a2 gap, so products are integers here.
        assert!(gromov_product(&k(-3), &v, &k(2)).is_integer());
    }

    #[test]
    fn paths_are_zero_hyperbolic() {
        for u in [universe(-1, 1, 1, 0), universe(0, 5, 1, 0)] {
            let r = audit_four_point(&u, &AuditConfig::exhaustive()).unwrap();
            assert_eq!(r.measured, HalfInt::from_int(0));
            assert_eq!(r.configurations, (u.len() as u64).pow(4));
            assert!(r.pass);
        }
    }

    #[test]
    fn witness_attains_value() {
        let u = universe(-1, 1, 2, 1);
        let r = audit_four_point(&u, &AuditConfig::exhaustive()).unwrap();
        let Some(Witness::Quadruple { points, value }) = &r.witness else { panic!() };
        let p: Vec<ConwayClass> = points.iter().map(|s| s.parse().unwrap()).collect();
        let g = |a: usize, b: usize| gromov_product(&p[a], &p[b], &p[3]);
        let twice = g(0, 1).twice().min(g(1, 2).twice()) - g(0, 2).twice();
        assert_eq!(HalfInt::from_twice(twice), *value);
        assert_eq!(*value, r.measured);
    }

    #[test]
    fn budget_fallback() {
        let u = universe(-2, 2, 2, 1);
        let c = AuditConfig { budget: 10, sample_size: 50, ..AuditConfig::exhaustive() };
        let r = audit_four_point(&u, &c).unwrap();
        assert_eq!((r.mode, r.configurations), (Mode::Sampled, 50));
        let strict = AuditConfig { sampling_fallback: false, ..c };
        assert!(audit_four_point(&u, &strict).is_err());
    }
}
