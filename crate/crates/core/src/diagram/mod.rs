//! Knot and link diagrams, braid words, and the local moves on them.
//!
//! A [`LinkDiagram`] is a list of PD crossings. Each crossing is the quadruple
//! of arc labels met counterclockwise starting from the incoming under-arc.
//! Crossing signs are not part of the input: they are derived once, at
//! construction, from the orientation that the under-strands impose.

mod braid;
mod pd;
pub(crate) mod raw;

use std::collections::HashMap;
use std::fmt;

pub use braid::{parse_braid, twist_knot, BraidWord, MoveSite};
pub use pd::parse_pd;

use crate::error::{Error, Result};
use raw::RawDiagram;

/// A PD crossing `X(a,b,c,d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Crossing {
    arcs: [u32; 4],
}

impl Crossing {
    pub fn new(arcs: [u32; 4]) -> Self {
        Self { arcs }
    }

    pub fn arcs(&self) -> [u32; 4] {
        self.arcs
    }
}

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.arcs;
        write!(f, "X({a},{b},{c},{d})")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// An oriented planar diagram of a knot or link.
///
/// Besides its crossings a diagram may carry crossingless components
/// ("free loops"). The empty crossing list denotes the zero-crossing unknot,
/// i.e. one free loop.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    signs: Vec<Sign>,
    free_loops: usize,
    components: usize,
}

impl LinkDiagram {
    /// The zero-crossing unknot.
    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    /// The crossingless diagram with `n` components (`n >= 1`).
    pub fn unlink(n: usize) -> Self {
        let n = n.max(1);
        Self { crossings: Vec::new(), signs: Vec::new(), free_loops: n, components: n }
    }

    /// Validates PD crossings and derives their signs. An empty list gives the
    /// unknot.
    pub fn from_crossings(crossings: Vec<Crossing>) -> Result<Self> {
        if crossings.is_empty() {
            return Ok(Self::unknot());
        }
        Self::from_parts(crossings, 0)
    }

    fn from_parts(crossings: Vec<Crossing>, free_loops: usize) -> Result<Self> {
        if crossings.is_empty() {
            return Ok(Self::unlink(free_loops));
        }
        let signs = derive_signs(&crossings)?;
        let mut d = Self { crossings, signs, free_loops, components: 0 };
        let raw = d.to_raw();
        if raw.face_count() != raw.crossing_count() + 2 * raw.pieces() {
            return Err(Error::InvalidDiagram("crossings do not form a planar diagram".into()));
        }
        d.components = raw.component_count();
        Ok(d)
    }

    pub(crate) fn from_raw(raw: &RawDiagram) -> Self {
        if raw.xs.is_empty() {
            return Self::unlink(raw.free_loops);
        }
        let r = raw.relabeled_consecutive(1);
        Self {
            crossings: r.xs.iter().map(|&x| Crossing::new(x)).collect(),
            signs: r.positive.iter().map(|&p| if p { Sign::Positive } else { Sign::Negative }).collect(),
            free_loops: r.free_loops,
            components: r.component_count(),
        }
    }

    /// Densely relabeled oriented form, labels from 0.
    pub(crate) fn to_raw(&self) -> RawDiagram {
        let mut labels: Vec<u32> = self.crossings.iter().flat_map(|c| c.arcs).collect();
        labels.sort_unstable();
        labels.dedup();
        let dense: HashMap<u32, u32> = labels.iter().enumerate().map(|(i, &l)| (l, i as u32)).collect();
        RawDiagram {
            xs: self.crossings.iter().map(|c| c.arcs.map(|l| dense[&l])).collect(),
            positive: self.signs.iter().map(|&s| s == Sign::Positive).collect(),
            free_loops: self.free_loops,
        }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    pub fn is_knot(&self) -> bool {
        self.components == 1
    }

    pub fn writhe(&self) -> i32 {
        self.signs.iter().map(|s| s.value()).sum()
    }

    /// Exchanges over and under strands at `index`. The quadruple is rotated
    /// by one position so that it again starts at the incoming under-arc; arc
    /// labels are kept, so the move is an involution.
    pub fn crossing_change(&self, index: usize) -> Result<Self> {
        self.check_index(index)?;
        let raw = self.to_raw();
        let [a, b, c, d] = self.crossings[index].arcs;
        let mut out = self.clone();
        out.crossings[index] = Crossing::new(if raw.positive[index] { [d, a, b, c] } else { [b, c, d, a] });
        out.signs[index] = self.signs[index].flip();
        Ok(out)
    }

    /// Oriented (Seifert) smoothing of crossing `index`, relabeled canonically.
    pub fn smoothing(&self, index: usize) -> Result<Self> {
        self.check_index(index)?;
        Ok(Self::from_raw(&self.to_raw().smoothed(index)))
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.crossings.len() {
            return Err(Error::IndexOutOfRange { index, len: self.crossings.len() });
        }
        Ok(())
    }

    /// Connected sum of two knot diagrams, cutting the first arc of each
    /// crossing list and splicing. Arc labels are renumbered.
    pub fn connected_sum(&self, other: &Self) -> Result<Self> {
        for d in [self, other] {
            if !d.is_knot() {
                return Err(Error::NotAKnot { components: d.components });
            }
        }
        if self.crossings.is_empty() {
            return Ok(Self::from_raw(&other.to_raw()));
        }
        if other.crossings.is_empty() {
            return Ok(Self::from_raw(&self.to_raw()));
        }
        let left = self.to_raw();
        let mut right = other.to_raw();
        let offset = left.xs.iter().flatten().max().map_or(0, |&m| m + 1);
        for x in &mut right.xs {
            *x = x.map(|l| l + offset);
        }
        // Cut arc x of the left and arc y of the right, then reconnect
        // tail(x) -> head(y) as x and tail(y) -> head(x) as y.
        let x = left.xs[0][0];
        let y = right.xs[0][0];
        let (hx, hy) = (left.heads()[x as usize], right.heads()[y as usize]);
        let mut xs = left.xs.clone();
        let mut rxs = right.xs.clone();
        xs[hx.0][hx.1] = y;
        rxs[hy.0][hy.1] = x;
        xs.extend(rxs);
        let mut positive = left.positive.clone();
        positive.extend(right.positive.iter().copied());
        let raw = RawDiagram { xs, positive, free_loops: 0 };
        Ok(Self::from_raw(&raw))
    }

    /// Whitespace-separated PD tokens, the inverse of [`parse_pd`].
    pub fn to_pd_string(&self) -> String {
        let mut s: String =
            self.crossings.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        let extra = if self.crossings.is_empty() { self.free_loops.saturating_sub(1) } else { self.free_loops };
        if extra > 0 {
            if !s.is_empty() {
                s.push(' ');
            }
            s.push_str(&format!("# plus {extra} crossingless component(s)"));
        }
        s
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd_string())
    }
}

/// Derives crossing signs from the orientation carried by the under-strands.
/// Rejects label multiplicities other than two and inconsistent orientations.
fn derive_signs(crossings: &[Crossing]) -> Result<Vec<Sign>> {
    let mut occ: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
    for (c, x) in crossings.iter().enumerate() {
        for (p, &l) in x.arcs.iter().enumerate() {
            if l == 0 {
                return Err(Error::InvalidDiagram("arc labels must be positive".into()));
            }
            occ.entry(l).or_default().push((c, p));
        }
    }
    let mut bad: Vec<(u32, usize)> =
        occ.iter().filter(|(_, v)| v.len() != 2).map(|(&l, v)| (l, v.len())).collect();
    if !bad.is_empty() {
        bad.sort_unstable();
        let (l, n) = bad[0];
        return Err(Error::InvalidDiagram(format!("arc label {l} appears {n} time(s), expected 2")));
    }
    let other_end = |l: u32, at: (usize, usize)| -> (usize, usize) {
        let v = &occ[&l];
        if v[0] == at {
            v[1]
        } else {
            v[0]
        }
    };

    // over_dir[c] = Some(true) when the over-strand enters at position 3.
    let mut over_dir: Vec<Option<bool>> = vec![None; crossings.len()];
    let mut visited: HashMap<(usize, usize), bool> = HashMap::new();
    let mut labels: Vec<u32> = occ.keys().copied().collect();
    labels.sort_unstable();
    for &start in &labels {
        let start_at = occ[&start][0];
        if visited.contains_key(&start_at) {
            continue;
        }
        // Walk the component: leave through `at`, travel the arc, enter the
        // next crossing, pass straight through.
        let mut passes: Vec<(usize, usize)> = Vec::new(); // (crossing, entry position)
        let mut arcs_seen: Vec<u32> = Vec::new();
        let mut at = start_at;
        loop {
            visited.insert(at, true);
            let l = crossings[at.0].arcs[at.1];
            arcs_seen.push(l);
            let entry = other_end(l, at);
            visited.insert(entry, true);
            passes.push(entry);
            at = (entry.0, (entry.1 + 2) % 4);
            if at == start_at {
                break;
            }
        }
        let forward_under = passes.iter().any(|&(_, p)| p == 0);
        let backward_under = passes.iter().any(|&(_, p)| p == 2);
        let forward = match (forward_under, backward_under) {
            (true, true) => {
                return Err(Error::InvalidDiagram(format!(
                    "inconsistent orientation on the component through arc {start}"
                )))
            }
            (true, false) => true,
            (false, true) => false,
            (false, false) => fallback_forward(&arcs_seen),
        };
        for &(c, p) in &passes {
            let entry = if forward { p } else { (p + 2) % 4 };
            if entry == 1 || entry == 3 {
                over_dir[c] = Some(entry == 3);
            }
        }
    }
    Ok(over_dir
        .into_iter()
        .map(|d| if d.expect("every crossing has an over pass") { Sign::Positive } else { Sign::Negative })
        .collect())
}

/// Orientation of a component that never passes under: labels increase along
/// it when they form a consecutive block, otherwise the walk direction wins.
fn fallback_forward(arcs: &[u32]) -> bool {
    if arcs.len() < 2 {
        return true;
    }
    let (lo, hi) = (*arcs.iter().min().unwrap(), *arcs.iter().max().unwrap());
    let next = |l: u32| if l == hi { lo } else { l + 1 };
    if (hi - lo) as usize + 1 != arcs.len() {
        return true;
    }
    next(arcs[0]) == arcs[1]
}
