use std::collections::HashMap;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::conway::ConwayClass;
use crate::error::{Error, Resource, Result};

pub const DEFAULT_VERTEX_CAP: u64 = 10_000;
pub const UNIVERSE_SCHEMA_VERSION: u32 = 1;

/// Truncation parameters: `a2` ranges over `[a2_min, a2_max]` and each of
/// `a4, ..., a_{2 depth}` over `[-coeff_bound, coeff_bound]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UniverseParams {
    pub a2_min: i64,
    pub a2_max: i64,
    pub depth: u32,
    pub coeff_bound: u32,
}

impl UniverseParams {
    pub fn new(a2_min: i64, a2_max: i64, depth: u32, coeff_bound: u32) -> Self {
        Self { a2_min, a2_max, depth, coeff_bound }
    }

    pub fn validate(&self) -> Result<()> {
        if self.a2_min >= self.a2_max {
            return Err(Error::InvalidUniverse(format!(
                "need a2_min < a2_max (at least two levels), got {}..{}",
                self.a2_min, self.a2_max
            )));
        }
        if self.depth == 0 {
            return Err(Error::InvalidUniverse("depth must be at least 1".into()));
        }
        Ok(())
    }

    pub fn level_count(&self) -> u64 {
        (i128::from(self.a2_max) - i128::from(self.a2_min) + 1).try_into().unwrap_or(u64::MAX)
    }

    /// Vertices per level, `(2c + 1)^(depth - 1)`; `None` on overflow.
    pub fn level_width(&self) -> Option<u64> {
        (2 * u64::from(self.coeff_bound) + 1).checked_pow(self.depth.saturating_sub(1))
    }

    /// `None` when the count does not fit in 64 bits.
    pub fn vertex_count(&self) -> Option<u64> {
        self.level_width()?.checked_mul(self.level_count())
    }
}

/// Center of a neighborhood: a single vertex or a whole level `V_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Center {
    Vertex(ConwayClass),
    Level(i64),
}

/// An explicit finite piece of the vertex set with its induced subgraph.
///
/// Vertices are ordered by `a2`, then lexicographically by `(a4, a6, ...)`,
/// so vertex `i` sits on level `a2_min + i / width`.
#[derive(Clone, Debug)]
pub struct FiniteUniverse {
    params: UniverseParams,
    width: usize,
    vertices: Vec<ConwayClass>,
    index: HashMap<ConwayClass, usize>,
}

impl PartialEq for FiniteUniverse {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params && self.vertices == other.vertices
    }
}

impl Eq for FiniteUniverse {}

impl FiniteUniverse {
    /// Builds the universe, refusing more than `cap` vertices.
    pub fn build(params: UniverseParams, cap: u64) -> Result<Self> {
        params.validate()?;
        let count = params.vertex_count().unwrap_or(u64::MAX);
        if count > cap {
            return Err(Error::ResourceLimit { resource: Resource::Vertices, limit: cap, actual: count });
        }
        let width = params.level_width().expect("bounded by the cap") as usize;
        let c = i64::from(params.coeff_bound);
        let tail_len = params.depth as usize - 1;
        let mut vertices = Vec::with_capacity(count as usize);
        for a2 in params.a2_min..=params.a2_max {
            let mut tail = vec![-c; tail_len];
            for _ in 0..width {
                vertices.push(ConwayClass::from_even(std::iter::once(a2).chain(tail.iter().copied())));
                // odometer increment, last coefficient fastest
                for slot in tail.iter_mut().rev() {
                    if *slot < c {
                        *slot += 1;
                        break;
                    }
                    *slot = -c;
                }
            }
        }
        let index = vertices.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        Ok(Self { params, width, vertices, index })
    }

    pub fn params(&self) -> UniverseParams {
        self.params
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[ConwayClass] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &ConwayClass {
        &self.vertices[i]
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn level_count(&self) -> usize {
        self.vertices.len() / self.width
    }

    pub fn contains(&self, v: &ConwayClass) -> bool {
        self.index.contains_key(v)
    }

    pub fn index_of(&self, v: &ConwayClass) -> Result<usize> {
        self.index.get(v).copied().ok_or_else(|| Error::NotInUniverse(v.poly().to_list_string()))
    }

    /// `a2` of vertex `i`.
    pub fn level_of(&self, i: usize) -> i64 {
        self.params.a2_min + (i / self.width) as i64
    }

    /// Indices of the vertices of `V_n`.
    pub fn level(&self, n: i64) -> Result<Range<usize>> {
        if n < self.params.a2_min || n > self.params.a2_max {
            return Err(Error::NotInUniverse(format!("level {n}")));
        }
        let start = (n - self.params.a2_min) as usize * self.width;
        Ok(start..start + self.width)
    }

    /// Edges of the induced subgraph: `width^2` between each pair of
    /// consecutive levels.
    pub fn edge_count(&self) -> u64 {
        let w = self.width as u64;
        (self.level_count() as u64 - 1) * w * w
    }

    /// Closed-form distance between vertices `i` and `j`.
    pub(crate) fn dist(&self, i: usize, j: usize) -> u64 {
        if i == j {
            0
        } else {
            match self.level_of(i).abs_diff(self.level_of(j)) {
                0 => 2,
                k => k,
            }
        }
    }

    /// Neighbors of vertex `i` in index order.
    pub(crate) fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.level_of(i);
        [n - 1, n + 1].into_iter().filter_map(|m| self.level(m).ok()).flatten()
    }

    /// Every vertex within distance `radius` of the center, in index order.
    pub fn neighborhood(&self, center: &Center, radius: u64) -> Result<Vec<ConwayClass>> {
        Ok(self.neighborhood_indices(center, radius)?.into_iter().map(|i| self.vertices[i].clone()).collect())
    }

    pub(crate) fn neighborhood_indices(&self, center: &Center, radius: u64) -> Result<Vec<usize>> {
        let sources: Vec<usize> = match center {
            Center::Vertex(v) => vec![self.index_of(v)?],
            Center::Level(n) => self.level(*n)?.collect(),
        };
        Ok((0..self.len()).filter(|&j| sources.iter().any(|&s| self.dist(s, j) <= radius)).collect())
    }

    /// Shortest-path length by breadth-first search in the induced subgraph.
    /// This ignores the closed form entirely and serves as its oracle.
    pub fn bfs_distance(&self, u: &ConwayClass, v: &ConwayClass) -> Result<u64> {
        let (i, j) = (self.index_of(u)?, self.index_of(v)?);
        Ok(self.bfs_from(i)[j].expect("universes with two or more levels are connected"))
    }

    pub(crate) fn bfs_from(&self, source: usize) -> Vec<Option<u64>> {
        let n = self.len();
        let mut dist = vec![None; n];
        dist[source] = Some(0);
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x].unwrap();
            for (y, slot) in dist.iter_mut().enumerate() {
                if slot.is_none() && crate::metric::adjacent(&self.vertices[x], &self.vertices[y]) {
                    *slot = Some(dx + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn to_file(&self) -> UniverseFile {
        UniverseFile {
            schema_version: UNIVERSE_SCHEMA_VERSION,
            a2_min: self.params.a2_min,
            a2_max: self.params.a2_max,
            depth: self.params.depth,
            coeff_bound: self.params.coeff_bound,
            vertex_count: self.len() as u64,
            edge_count: self.edge_count(),
            vertices: self.vertices.iter().map(|v| v.poly().to_list_string()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("universe serializes") + "\n"
    }

    /// Loads a universe file, checking that it matches the enumeration its
    /// parameters describe.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: UniverseFile =
            serde_json::from_str(text).map_err(|e| Error::CorruptUniverse(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn from_file(file: &UniverseFile) -> Result<Self> {
        if file.schema_version != UNIVERSE_SCHEMA_VERSION {
            return Err(Error::CorruptUniverse(format!(
                "unsupported schema_version {} (expected {UNIVERSE_SCHEMA_VERSION})",
                file.schema_version
            )));
        }
        let params = UniverseParams::new(file.a2_min, file.a2_max, file.depth, file.coeff_bound);
        params.validate().map_err(|e| Error::CorruptUniverse(e.to_string()))?;
        if params.vertex_count() != Some(file.vertex_count) || file.vertices.len() as u64 != file.vertex_count {
            return Err(Error::CorruptUniverse(format!(
                "vertex count mismatch: parameters give {}, header says {}, list has {}",
                params.vertex_count().map_or("overflow".into(), |c| c.to_string()),
                file.vertex_count,
                file.vertices.len()
            )));
        }
        let u = Self::build(params, file.vertex_count)?;
        if file.edge_count != u.edge_count() {
            return Err(Error::CorruptUniverse(format!(
                "edge count {} does not match {}",
                file.edge_count,
                u.edge_count()
            )));
        }
        for (i, (text, v)) in file.vertices.iter().zip(&u.vertices).enumerate() {
            let parsed: ConwayClass =
                text.parse().map_err(|e| Error::CorruptUniverse(format!("vertex {i}: {e}")))?;
            if parsed != *v {
                return Err(Error::CorruptUniverse(format!(
                    "vertex {i} is {text}, expected {}",
                    v.poly().to_list_string()
                )));
            }
        }
        Ok(u)
    }
}

/// On-disk form of a universe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UniverseFile {
    pub schema_version: u32,
    pub a2_min: i64,
    pub a2_max: i64,
    pub depth: u32,
    pub coeff_bound: u32,
    pub vertex_count: u64,
    pub edge_count: u64,
    /// Compact list form, `[1,0,a2,0,a4,...]`.
    pub vertices: Vec<String>,
}
