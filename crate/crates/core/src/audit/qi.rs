use std::time::Instant;

use num_traits::ToPrimitive;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{
    elapsed_ms, list, rng, AuditConfig, AuditKind, AuditReport, Details, HalfInt, Mode, Sampling, Witness,
    REPORT_SCHEMA_VERSION,
};
use crate::conway::ConwayClass;
use crate::error::{Error, Resource, Result};
use crate::metric::FiniteUniverse;

/// Constants of a quasi-isometry `f`:
/// `A d(x,y) - B <= |f(x) - f(y)| <= C d(x,y) + D`, and every point of the
/// target lies within `E` of the image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QiConstants {
    pub a: HalfInt,
    pub b: HalfInt,
    pub c: HalfInt,
    pub d: HalfInt,
    pub e: HalfInt,
}

impl QiConstants {
    /// The constants checked for `g(v) = a2(v)`: `(1, 2, 1, 0, 1/2)`.
    pub fn level_map() -> Self {
        Self {
            a: HalfInt::from_int(1),
            b: HalfInt::from_int(2),
            c: HalfInt::from_int(1),
            d: HalfInt::from_int(0),
            e: HalfInt::from_twice(1),
        }
    }
}

const MAX_LISTED_VIOLATIONS: usize = 20;

/// Checks that `g(v) = a2(v)` is a quasi-isometry onto `[a2_min, a2_max]`:
/// `d - 2 <= |g(u) - g(v)| <= d` for every pair, and every integer level is
/// the image of the twist-knot class `1 + n z^2`.
///
/// `measured` is the largest additive gap `d - |g(u) - g(v)|`; the bound is 2.
pub fn audit_quasi_isometry(u: &FiniteUniverse) -> Result<AuditReport> {
    let start = Instant::now();
    let n = u.len();
    let levels: Vec<i64> = u.vertices().iter().map(level).collect::<Result<_>>()?;
    let mut worst: Option<(u64, usize, usize)> = None;
    let mut violations = Vec::new();
    let mut violation_count = 0u64;
    let mut pairs = 0u64;
    for i in 0..n {
        for j in i..n {
            pairs += 1;
            let d = u.dist(i, j);
            let gap = levels[i].abs_diff(levels[j]);
            let slack = d.saturating_sub(gap);
            if worst.is_none_or(|(w, _, _)| slack > w) {
                worst = Some((slack, i, j));
            }
            if d > gap + 2 || gap > d {
                violation_count += 1;
                if violations.len() < MAX_LISTED_VIOLATIONS {
                    violations.push(pair_witness(u, i, j, d, gap));
                }
            }
        }
    }
    let p = u.params();
    let levels_missing: Vec<i64> =
        (p.a2_min..=p.a2_max).filter(|&m| !u.contains(&ConwayClass::twist(m))).collect();
    let (slack, wi, wj) = worst.unwrap_or((0, 0, 0));
    let witness = match violations.first() {
        Some(v) => Some(v.clone()),
        None if n > 0 => {
            let gap = levels[wi].abs_diff(levels[wj]);
            Some(pair_witness(u, wi, wj, u.dist(wi, wj), gap))
        }
        None => None,
    };
    Ok(AuditReport {
        schema_version: REPORT_SCHEMA_VERSION,
        kind: AuditKind::Qi,
        universe: Some(p),
        mode: Mode::Exhaustive,
        sampling: None,
        bound: HalfInt::from_int(2),
        measured: HalfInt::from_int(slack),
        pass: violation_count == 0 && levels_missing.is_empty(),
        configurations: pairs,
        witness,
        details: Details::Qi { constants: QiConstants::level_map(), pairs, violation_count, violations, levels_missing },
        duration_ms: elapsed_ms(start),
    })
}

fn level(v: &ConwayClass) -> Result<i64> {
    v.a2().to_i64().ok_or_else(|| Error::InvalidAudit(format!("a2 of {v} does not fit in 64 bits")))
}

fn pair_witness(u: &FiniteUniverse, i: usize, j: usize, distance: u64, a2_gap: u64) -> Witness {
    Witness::Pair { u: list(u.vertex(i)), v: list(u.vertex(j)), distance, a2_gap }
}

/// Adjacency as bit rows, read off the `a2` coefficient of each class.
struct BitGraph {
    words: usize,
    rows: Vec<u64>,
}

impl BitGraph {
    fn new(u: &FiniteUniverse) -> Result<Self> {
        let n = u.len();
        let levels: Vec<i64> = u.vertices().iter().map(level).collect::<Result<_>>()?;
        let words = n.div_ceil(64);
        let mut rows = vec![0u64; n * words];
        for i in 0..n {
            for j in 0..n {
                if levels[i].abs_diff(levels[j]) == 1 {
                    rows[i * words + j / 64] |= 1 << (j % 64);
                }
            }
        }
        Ok(Self { words, rows })
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }

    fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i)
            .iter()
            .enumerate()
            .flat_map(|(w, &bits)| (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w * 64 + b))
    }

    /// Common neighbors of `i` and `j`, in increasing order.
    fn common(&self, i: usize, j: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i)
            .iter()
            .zip(self.row(j))
            .enumerate()
            .flat_map(|(w, (&a, &b))| {
                let bits = a & b;
                (0..64).filter(move |k| bits >> k & 1 == 1).map(move |k| w * 64 + k)
            })
    }
}

/// Searches for three pairwise adjacent vertices. Exhaustive mode checks the
/// common neighborhood of every edge; when `edges * n / 64` exceeds the
/// budget it samples edges instead.
///
/// `measured` is the number of triangles found; the bound is 0.
pub fn audit_triangle_free(u: &FiniteUniverse, config: &AuditConfig) -> Result<AuditReport> {
    let start = Instant::now();
    let n = u.len();
    let g = BitGraph::new(u)?;
    let degrees: Vec<u64> = (0..n).map(|i| g.row(i).iter().map(|w| u64::from(w.count_ones())).sum()).collect();
    let edges = degrees.iter().sum::<u64>() / 2;
    let cost = edges.saturating_mul(g.words as u64);
    let mut mode = config.mode;
    if mode == Mode::Exhaustive && cost > config.budget {
        if !config.sampling_fallback {
            return Err(Error::ResourceLimit { resource: Resource::Configurations, limit: config.budget, actual: cost });
        }
        mode = Mode::Sampled;
    }

    let mut triangles = 0u64;
    let mut examined = 0u64;
    let mut witness = None;
    let mut check = |i: usize, j: usize, exhaustive: bool| {
        examined += 1;
        for k in g.common(i, j) {
            // In exhaustive mode count each triangle once, from its two
            // smallest vertices.
            if exhaustive && k <= j {
                continue;
            }
            triangles += 1;
            if witness.is_none() {
                let mut c = [i, j, k];
                c.sort_unstable();
                witness = Some(Witness::Clique { vertices: c.map(|x| list(u.vertex(x))) });
            }
        }
    };
    match mode {
        Mode::Exhaustive => {
            for i in 0..n {
                for j in g.neighbors(i).filter(|&j| j > i) {
                    check(i, j, true);
                }
            }
        }
        Mode::Sampled => {
            let mut r = rng(config.seed);
            let with_edges: Vec<usize> = (0..n).filter(|&i| degrees[i] > 0).collect();
            if !with_edges.is_empty() {
                for _ in 0..config.sample_size {
                    let i = with_edges[r.random_range(0..with_edges.len())];
                    let j = g.neighbors(i).nth(r.random_range(0..degrees[i]) as usize).expect("degree counts bits");
                    check(i, j, false);
                }
            }
        }
    }

    Ok(AuditReport {
        schema_version: REPORT_SCHEMA_VERSION,
        kind: AuditKind::TriangleFree,
        universe: Some(u.params()),
        mode,
        sampling: (mode == Mode::Sampled).then(|| Sampling::new(config.seed, config.sample_size)),
        bound: HalfInt::from_int(0),
        measured: HalfInt::from_int(triangles),
        pass: triangles == 0,
        configurations: examined,
        witness,
        details: Details::TriangleFree { edges, triangles },
        duration_ms: elapsed_ms(start),
    })
}
