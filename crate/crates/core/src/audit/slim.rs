use std::collections::HashMap;
use std::time::Instant;

use rand::Rng;

use super::{
    dist_u64, elapsed_ms, list, rng, AuditConfig, AuditKind, AuditReport, CaseSummary, Details, HalfInt, Mode,
    Sampling, Witness, REPORT_SCHEMA_VERSION,
};
use crate::conway::ConwayClass;
use crate::error::{Error, Resource, Result};
use crate::metric::{FiniteUniverse, GeodesicPath};

/// Geodesics between a corner pair, and whether the cap truncated them.
type PathSet = (Vec<Vec<usize>>, bool);

/// Three corners `x, y, z` joined by geodesic sides `s(x,y), s(y,z), s(z,x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeodesicTriangle {
    sides: [GeodesicPath; 3],
}

impl GeodesicTriangle {
    /// Sides must chain: each one starts where the previous one ends.
    pub fn new(sides: [GeodesicPath; 3]) -> Result<Self> {
        for k in 0..3 {
            let next = &sides[(k + 1) % 3];
            if sides[k].end() != next.start() {
                return Err(Error::NotGeodesic(format!(
                    "side {k} ends at {} but side {} starts at {}",
                    sides[k].end(),
                    (k + 1) % 3,
                    next.start()
                )));
            }
        }
        Ok(Self { sides })
    }

    pub fn corners(&self) -> [&ConwayClass; 3] {
        [self.sides[0].start(), self.sides[1].start(), self.sides[2].start()]
    }

    pub fn sides(&self) -> &[GeodesicPath; 3] {
        &self.sides
    }
}

/// Vertex-resolution slimness of a triangle, with the vertex attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slimness {
    pub delta: u64,
    /// Index of the side holding `vertex`.
    pub side: usize,
    pub vertex: ConwayClass,
}

/// The least `delta` such that every vertex of each side is within `delta`
/// of a vertex on one of the other two sides.
pub fn triangle_slimness(u: &FiniteUniverse, t: &GeodesicTriangle) -> Result<Slimness> {
    let mut sides: Vec<Vec<usize>> = Vec::with_capacity(3);
    for s in &t.sides {
        sides.push(s.vertices().iter().map(|v| u.index_of(v)).collect::<Result<_>>()?);
    }
    let (delta, side, pos) = slimness(u, [&sides[0], &sides[1], &sides[2]]);
    Ok(Slimness { delta, side, vertex: t.sides[side].vertices()[pos].clone() })
}

/// `(delta, side, position)` for sides given as index paths. The first
/// maximizing vertex in side order wins.
fn slimness(u: &FiniteUniverse, sides: [&[usize]; 3]) -> (u64, usize, usize) {
    let mut best = (0, 0, 0);
    for s in 0..3 {
        let others = [sides[(s + 1) % 3], sides[(s + 2) % 3]];
        for (pos, &p) in sides[s].iter().enumerate() {
            let d = others.iter().flat_map(|o| o.iter()).map(|&q| u.dist(p, q)).min().unwrap_or(0);
            if d > best.0 {
                best = (d, s, pos);
            }
        }
    }
    best
}

/// Case of a corner triple, from the sorted `a2` values `l <= m <= h`:
/// 1 when `m - l >= 1` and `h - m >= 1`, 2 when only `h - m >= 1`,
/// 3 when only `m - l >= 1`, 4 when all three share a level.
fn case_of(levels: [i64; 3]) -> u8 {
    let mut l = levels;
    l.sort_unstable();
    match (l[1] - l[0] >= 1, l[2] - l[1] >= 1) {
        (true, true) => 1,
        (false, true) => 2,
        (true, false) => 3,
        (false, false) => 4,
    }
}

struct Tally {
    cases: [(u64, Option<u64>); 4],
    best: Option<(u64, Witness)>,
    triangles: u64,
}

impl Tally {
    fn new() -> Self {
        Self { cases: [(0, None); 4], best: None, triangles: 0 }
    }

    fn record(&mut self, u: &FiniteUniverse, corners: [usize; 3], sides: [&[usize]; 3]) {
        let (delta, side, pos) = slimness(u, sides);
        self.triangles += 1;
        let case = case_of(corners.map(|c| u.level_of(c)));
        let slot = &mut self.cases[case as usize - 1];
        slot.0 += 1;
        slot.1 = Some(slot.1.map_or(delta, |m| m.max(delta)));
        if self.best.as_ref().is_none_or(|(b, _)| delta > *b) {
            let names = |s: &[usize]| s.iter().map(|&i| list(u.vertex(i))).collect::<Vec<_>>();
            let witness = Witness::Triangle {
                corners: corners.map(|c| list(u.vertex(c))),
                sides: sides.map(names),
                side,
                vertex: list(u.vertex(sides[side][pos])),
                delta,
            };
            self.best = Some((delta, witness));
        }
    }
}

/// Slimness of geodesic triangles with vertex corners.
///
/// Exhaustive mode visits every corner multiset `i <= j <= k` (slimness does
/// not depend on the order of the corners) and every combination of sides.
/// When a corner pair has more geodesics than `geodesic_cap`, that triple's
/// side combinations are sampled instead, and the report counts it under
/// `fallback_triples`. If the whole enumeration would exceed `budget`
/// triangles, the audit switches to sampled mode, or fails when
/// `sampling_fallback` is off.
///
/// The bound is 2 overall and 1 for triangles with all corners on one level.
pub fn audit_slimness(u: &FiniteUniverse, config: &AuditConfig) -> Result<AuditReport> {
    let start = Instant::now();
    let n = u.len();
    let mut tally = Tally::new();
    let mut fallback_triples = 0;
    let mut corner_triples = 0;
    let mut mode = config.mode;

    if mode == Mode::Exhaustive {
        let mut counts: HashMap<(usize, usize), u64> = HashMap::new();
        let mut count = |i: usize, j: usize| *counts.entry((i.min(j), i.max(j))).or_insert_with(|| u.geodesic_count(i, j));
        let cap = config.geodesic_cap as u64;
        let mut total: u64 = 0;
        'outer: for i in 0..n {
            for j in i..n {
                for k in j..n {
                    let (a, b, c) = (count(i, j), count(j, k), count(k, i));
                    let combos = if a > cap || b > cap || c > cap {
                        config.sample_size
                    } else {
                        a.saturating_mul(b).saturating_mul(c)
                    };
                    total = total.saturating_add(combos);
                    if total > config.budget {
                        break 'outer;
                    }
                }
            }
        }
        if total > config.budget {
            if !config.sampling_fallback {
                return Err(Error::ResourceLimit {
                    resource: Resource::Configurations,
                    limit: config.budget,
                    actual: total,
                });
            }
            mode = Mode::Sampled;
        }
    }

    match mode {
        Mode::Exhaustive => {
            let mut geodesics: HashMap<(usize, usize), PathSet> = HashMap::new();
            let mut r = rng(config.seed);
            for i in 0..n {
                for j in i..n {
                    for k in j..n {
                        corner_triples += 1;
                        for (a, b) in [(i, j), (j, k), (k, i)] {
                            geodesics.entry((a, b)).or_insert_with(|| u.geodesic_indices(a, b, config.geodesic_cap));
                        }
                        let (xy, t1) = &geodesics[&(i, j)];
                        let (yz, t2) = &geodesics[&(j, k)];
                        let (zx, t3) = &geodesics[&(k, i)];
                        if *t1 || *t2 || *t3 {
                            if !config.sampling_fallback {
                                return Err(Error::ResourceLimit {
                                    resource: Resource::Geodesics,
                                    limit: config.geodesic_cap as u64,
                                    actual: config.geodesic_cap as u64 + 1,
                                });
                            }
                            fallback_triples += 1;
                            for _ in 0..config.sample_size {
                                let sides = [
                                    u.random_geodesic(i, j, &mut r),
                                    u.random_geodesic(j, k, &mut r),
                                    u.random_geodesic(k, i, &mut r),
                                ];
                                tally.record(u, [i, j, k], [&sides[0], &sides[1], &sides[2]]);
                            }
                            continue;
                        }
                        for a in xy {
                            for b in yz {
                                for c in zx {
                                    tally.record(u, [i, j, k], [a, b, c]);
                                }
                            }
                        }
                    }
                }
            }
        }
        Mode::Sampled => {
            let mut r = rng(config.seed);
            for _ in 0..config.sample_size {
                let (i, j, k) = (r.random_range(0..n), r.random_range(0..n), r.random_range(0..n));
                corner_triples += 1;
                let sides = [u.random_geodesic(i, j, &mut r), u.random_geodesic(j, k, &mut r), u.random_geodesic(k, i, &mut r)];
                tally.record(u, [i, j, k], [&sides[0], &sides[1], &sides[2]]);
            }
        }
    }

    let max = tally.best.as_ref().map_or(0, |(d, _)| *d);
    let equal_level_max = tally.cases[3].1;
    let pass = max <= 2 && equal_level_max.is_none_or(|m| m <= 1);
    let cases = tally
        .cases
        .iter()
        .enumerate()
        .map(|(c, &(triangles, max_delta))| CaseSummary { case: c as u8 + 1, triangles, max_delta })
        .collect();
    Ok(AuditReport {
        schema_version: REPORT_SCHEMA_VERSION,
        kind: AuditKind::Slim,
        universe: Some(u.params()),
        mode,
        sampling: (mode == Mode::Sampled || fallback_triples > 0).then(|| Sampling::new(config.seed, config.sample_size)),
        bound: HalfInt::from_int(2),
        measured: HalfInt::from_int(max),
        pass,
        configurations: tally.triangles,
        witness: tally.best.map(|(_, w)| w),
        details: Details::Slim { corner_triples, fallback_triples, cases, equal_level_max, equal_level_bound: 1 },
        duration_ms: elapsed_ms(start),
    })
}

/// Recomputes a triangle witness from scratch with the closed-form distance:
/// the named vertex must be exactly `delta` away from the other two sides,
/// and no vertex of the triangle may be farther.
pub fn recheck_triangle_witness(w: &Witness) -> Result<bool> {
    let Witness::Triangle { sides, side, vertex, delta, .. } = w else {
        return Err(Error::InvalidAudit("not a triangle witness".into()));
    };
    let parse = |s: &String| s.parse::<ConwayClass>();
    let sides: Vec<Vec<ConwayClass>> =
        sides.iter().map(|s| s.iter().map(parse).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    let gap = |s: usize, v: &ConwayClass| {
        sides[(s + 1) % 3].iter().chain(&sides[(s + 2) % 3]).map(|q| dist_u64(v, q)).min().unwrap_or(0)
    };
    let vertex = parse(vertex)?;
    if *side >= 3 || !sides[*side].contains(&vertex) || gap(*side, &vertex) != *delta {
        return Ok(false);
    }
    Ok((0..3).all(|s| sides[s].iter().all(|v| gap(s, v) <= *delta)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::UniverseParams;

    fn universe(a: i64, b: i64, d: u32, c: u32) -> FiniteUniverse {
        FiniteUniverse::build(UniverseParams::new(a, b, d, c), 10_000).unwrap()
    }

    fn path(u: &FiniteUniverse, idx: &[usize]) -> GeodesicPath {
        GeodesicPath::new(idx.iter().map(|&i| u.vertex(i).clone()).collect()).unwrap()
    }

    #[test]
    fn cases() {
        assert_eq!(case_of([0, 1, 3]), 1);
        assert_eq!(case_of([2, 0, 0]), 2);
        assert_eq!(case_of([0, 2, 2]), 3);
        assert_eq!(case_of([5, 5, 5]), 4);
    }

    #[test]
    fn degenerate_and_path_triangles() {
        let u = universe(0, 4, 1, 0);
        let p = path(&u, &[2]);
        let t = GeodesicTriangle::new([p.clone(), p.clone(), p]).unwrap();
        assert_eq!(triangle_slimness(&u, &t).unwrap().delta, 0);
        let t = GeodesicTriangle::new([path(&u, &[0, 1, 2]), path(&u, &[2, 3, 4]), path(&u, &[4, 3, 2, 1, 0])]).unwrap();
        assert_eq!(triangle_slimness(&u, &t).unwrap().delta, 0);
    }

    #[test]
    fn sides_must_chain() {
        let u = universe(0, 4, 1, 0);
        assert!(GeodesicTriangle::new([path(&u, &[0, 1]), path(&u, &[2, 3]), path(&u, &[3, 2, 1, 0])]).is_err());
    }

    #[test]
    fn spread_triangle() {
        // (-2,2,2,1): width 3; corners on levels -2, 0, 2 with disjoint interiors.
        let u = universe(-2, 2, 2, 1);
        let t = GeodesicTriangle::new([
            path(&u, &[0, 3, 6]),
            path(&u, &[6, 9, 12]),
            path(&u, &[12, 10, 7, 4, 0]),
        ])
        .unwrap();
        // Every side vertex has a neighbor on the other two sides.
        let s = triangle_slimness(&u, &t).unwrap();
        assert_eq!(s.delta, 1);
        assert_eq!((s.side, &s.vertex), (0, u.vertex(3)));
    }

    #[test]
    fn exhaustive_small_universes() {
        let r = audit_slimness(&universe(0, 4, 1, 0), &AuditConfig::exhaustive()).unwrap();
        assert_eq!(r.measured, HalfInt::from_int(0));
        let Details::Slim { cases, .. } = &r.details else { panic!() };
        // one vertex per level: equal-level corners are all the same vertex
        assert_eq!(cases[3].max_delta, Some(0));
        let r = audit_slimness(&universe(0, 1, 2, 1), &AuditConfig::exhaustive()).unwrap();
        assert!(r.pass);
        let Details::Slim { cases, equal_level_max, .. } = &r.details else { panic!() };
        assert_eq!(cases[0].triangles, 0);
        assert_eq!(*equal_level_max, Some(1));
        assert!(recheck_triangle_witness(r.witness.as_ref().unwrap()).unwrap());
    }

    #[test]
    fn caps_force_sampling_or_fail() {
        let u = universe(-2, 2, 2, 1);
        let tight = AuditConfig { geodesic_cap: 2, sample_size: 5, ..AuditConfig::exhaustive() };
        let r = audit_slimness(&u, &tight).unwrap();
        let Details::Slim { fallback_triples, .. } = r.details else { panic!() };
        assert!(fallback_triples > 0);
        assert!(r.sampling.is_some());
        let strict = AuditConfig { sampling_fallback: false, ..tight };
        assert!(matches!(audit_slimness(&u, &strict), Err(Error::ResourceLimit { .. })));
        let small_budget = AuditConfig { budget: 100, ..AuditConfig::exhaustive() };
        assert_eq!(audit_slimness(&u, &small_budget).unwrap().mode, Mode::Sampled);
    }

    #[test]
    fn sampled_is_reproducible() {
        let u = universe(-3, 3, 2, 2);
        let c = AuditConfig::sampled(11, 300);
        let a = audit_slimness(&u, &c).unwrap();
        let b = audit_slimness(&u, &c).unwrap();
        assert_eq!(a.without_duration(), b.without_duration());
        assert_eq!(a.configurations, 300);
        assert!(a.pass);
    }
}
