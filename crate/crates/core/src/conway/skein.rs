//! Skein-theoretic evaluation of the Conway polynomial.
//!
//! Each diagram is driven to a descending diagram by switching crossings in
//! traversal order, using `N(L+) - N(L-) = z N(L0)` at every switch. A
//! descending diagram is an unlink, which gives the base case. Reidemeister I
//! and II reductions are applied first, and again whenever a switch makes one
//! available. Every recursive call sees strictly fewer crossings, so the
//! recursion terminates; results are memoized on a canonical relabeling of
//! each diagram.

use std::collections::HashMap;

use crate::diagram::raw::RawDiagram;
use crate::diagram::LinkDiagram;
use crate::error::{Error, Resource, Result};
use crate::poly::ConwayPolynomial;

pub const DEFAULT_MAX_CROSSINGS: usize = 24;
pub const DEFAULT_MAX_NODES: u64 = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SkeinLimits {
    pub max_crossings: usize,
    /// Distinct diagrams evaluated per top-level call.
    pub max_nodes: u64,
}

impl Default for SkeinLimits {
    fn default() -> Self {
        Self { max_crossings: DEFAULT_MAX_CROSSINGS, max_nodes: DEFAULT_MAX_NODES }
    }
}

/// Skein evaluator with a memo table that persists across calls.
///
/// The table only ever maps a canonical diagram encoding to its polynomial, so
/// reuse across calls cannot change any result.
#[derive(Debug, Default)]
pub struct SkeinEngine {
    limits: SkeinLimits,
    memo: HashMap<Vec<u32>, ConwayPolynomial>,
    nodes: u64,
}

impl SkeinEngine {
    pub fn new(limits: SkeinLimits) -> Self {
        Self { limits, memo: HashMap::new(), nodes: 0 }
    }

    pub fn limits(&self) -> SkeinLimits {
        self.limits
    }

    pub fn cache_len(&self) -> usize {
        self.memo.len()
    }

    pub fn clear_cache(&mut self) {
        self.memo.clear();
    }

    pub fn conway(&mut self, d: &LinkDiagram) -> Result<ConwayPolynomial> {
        if d.crossing_count() > self.limits.max_crossings {
            return Err(Error::ResourceLimit {
                resource: Resource::Crossings,
                limit: self.limits.max_crossings as u64,
                actual: d.crossing_count() as u64,
            });
        }
        self.nodes = 0;
        self.eval(&d.to_raw())
    }

    fn eval(&mut self, d: &RawDiagram) -> Result<ConwayPolynomial> {
        let d = d.simplified();
        if d.xs.is_empty() {
            return Ok(if d.free_loops == 1 { ConwayPolynomial::one() } else { ConwayPolynomial::zero() });
        }
        if d.free_loops > 0 || d.pieces() > 1 {
            // split diagram
            return Ok(ConwayPolynomial::zero());
        }
        let (canon, key) = d.relabeled_consecutive(0).canonical();
        if let Some(p) = self.memo.get(&key) {
            return Ok(p.clone());
        }
        self.nodes += 1;
        if self.nodes > self.limits.max_nodes {
            return Err(Error::ResourceLimit {
                resource: Resource::SkeinNodes,
                limit: self.limits.max_nodes,
                actual: self.nodes,
            });
        }

        // Base points: the least label of each component, in label order.
        let bases: Vec<u32> = canon.arc_cycles().iter().map(|c| *c.iter().min().unwrap()).collect::<Vec<_>>();
        let mut bases = bases;
        bases.sort_unstable();

        let mut acc = ConwayPolynomial::zero();
        let mut cur = canon;
        loop {
            match first_ascending(&cur, &bases) {
                None => {
                    if bases.len() == 1 {
                        acc = &acc + &ConwayPolynomial::one();
                    }
                    break;
                }
                Some(c) => {
                    let smoothed = self.eval(&cur.smoothed(c))?.shift(1);
                    acc = if cur.positive[c] { &acc + &smoothed } else { &acc - &smoothed };
                    cur = cur.switched(c);
                    if !cur.is_simple() {
                        // The switch opened a Reidemeister move; the simplified
                        // diagram has fewer crossings, so recurse on it instead.
                        acc = &acc + &self.eval(&cur)?;
                        break;
                    }
                }
            }
        }
        self.memo.insert(key, acc.clone());
        Ok(acc)
    }
}

/// First crossing met from below when walking the components from their base
/// points in order. `None` means the diagram is descending.
fn first_ascending(d: &RawDiagram, bases: &[u32]) -> Option<usize> {
    let heads = d.heads();
    let mut seen = vec![false; d.xs.len()];
    for &b in bases {
        let mut e = b;
        loop {
            let (c, p) = heads[e as usize];
            if !seen[c] {
                seen[c] = true;
                if p == 0 {
                    return Some(c);
                }
            }
            e = d.xs[c][(p + 2) % 4];
            if e == b {
                break;
            }
        }
    }
    None
}

/// Conway polynomial of a diagram with default limits and a fresh memo.
pub fn conway_polynomial(d: &LinkDiagram) -> Result<ConwayPolynomial> {
    SkeinEngine::new(SkeinLimits::default()).conway(d)
}
