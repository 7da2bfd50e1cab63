use rand::Rng;

use super::universe::FiniteUniverse;
use crate::conway::ConwayClass;
use crate::error::{Error, Result};

pub const DEFAULT_GEODESIC_CAP: usize = 10_000;

/// A shortest path in the (∇, Δ)-Gordian graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeodesicPath {
    vertices: Vec<ConwayClass>,
}

impl GeodesicPath {
    /// Checks that consecutive vertices are adjacent and that the length
    /// equals the distance between the endpoints.
    pub fn new(vertices: Vec<ConwayClass>) -> Result<Self> {
        let (Some(first), Some(last)) = (vertices.first(), vertices.last()) else {
            return Err(Error::NotGeodesic("empty path".into()));
        };
        if let Some(w) = vertices.windows(2).find(|w| !super::adjacent(&w[0], &w[1])) {
            return Err(Error::NotGeodesic(format!("{} and {} are not adjacent", w[0], w[1])));
        }
        let steps = num_bigint::BigUint::from(vertices.len() - 1);
        if steps != super::delta_nabla_distance(first, last) {
            return Err(Error::NotGeodesic(format!("{} steps between {first} and {last} is not shortest", vertices.len() - 1)));
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[ConwayClass] {
        &self.vertices
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn start(&self) -> &ConwayClass {
        &self.vertices[0]
    }

    pub fn end(&self) -> &ConwayClass {
        self.vertices.last().expect("nonempty")
    }
}

/// Result of a capped geodesic enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Geodesics {
    pub paths: Vec<GeodesicPath>,
    /// Set when the cap stopped the enumeration early.
    pub truncated: bool,
}

impl FiniteUniverse {
    /// All geodesics from `u` to `v` inside the universe, at most `cap` of
    /// them, in lexicographic order of vertex indices.
    pub fn enumerate_geodesics(&self, u: &ConwayClass, v: &ConwayClass, cap: usize) -> Result<Geodesics> {
        let (i, j) = (self.index_of(u)?, self.index_of(v)?);
        let (paths, truncated) = self.geodesic_indices(i, j, cap);
        let paths = paths
            .into_iter()
            .map(|p| GeodesicPath { vertices: p.into_iter().map(|k| self.vertex(k).clone()).collect() })
            .collect();
        Ok(Geodesics { paths, truncated })
    }

    pub(crate) fn geodesic_indices(&self, i: usize, j: usize, cap: usize) -> (Vec<Vec<usize>>, bool) {
        let mut out = Vec::new();
        let mut path = vec![i];
        let truncated = self.extend_geodesics(j, cap, &mut path, &mut out);
        (out, truncated)
    }

    /// Depth-first extension of `path` towards `target`; true when the cap
    /// cut the search short.
    fn extend_geodesics(&self, target: usize, cap: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) -> bool {
        let cur = *path.last().unwrap();
        let remaining = self.dist(cur, target);
        if remaining == 0 {
            if out.len() == cap {
                return true;
            }
            out.push(path.clone());
            return false;
        }
        let next: Vec<usize> = self.neighbors(cur).filter(|&w| self.dist(w, target) + 1 == remaining).collect();
        for w in next {
            path.push(w);
            let stop = self.extend_geodesics(target, cap, path, out);
            path.pop();
            if stop {
                return true;
            }
        }
        false
    }

    /// A geodesic built by choosing each next vertex uniformly among those
    /// that stay on a shortest path.
    pub(crate) fn random_geodesic<R: Rng>(&self, i: usize, j: usize, rng: &mut R) -> Vec<usize> {
        let mut path = vec![i];
        let mut cur = i;
        while cur != j {
            let remaining = self.dist(cur, j);
            let next: Vec<usize> = self.neighbors(cur).filter(|&w| self.dist(w, j) + 1 == remaining).collect();
            cur = next[rng.random_range(0..next.len())];
            path.push(cur);
        }
        path
    }

    /// Number of geodesics from `i` to `j` inside the universe, by dynamic
    /// programming over distance layers. Saturates at `u64::MAX`.
    pub(crate) fn geodesic_count(&self, i: usize, j: usize) -> u64 {
        let d = self.dist(i, j);
        if d == 0 {
            return 1;
        }
        let mut ways = vec![0u64; self.len()];
        ways[i] = 1;
        let mut frontier = vec![i];
        for step in 1..=d {
            let mut next: Vec<usize> = Vec::new();
            for &x in &frontier {
                for y in self.neighbors(x) {
                    if self.dist(i, y) == step && self.dist(y, j) == d - step {
                        if ways[y] == 0 {
                            next.push(y);
                        }
                        ways[y] = ways[y].saturating_add(ways[x]);
                    }
                }
            }
            frontier = next;
        }
        ways[j]
    }
}
