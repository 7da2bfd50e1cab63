//! Oriented PD data with dense arc labels, shared by the public diagram type
//! and the skein engine.
//!
//! Conventions: position 0 of a crossing is the incoming under-arc, positions
//! run counterclockwise, so the under-strand runs 0 -> 2. The over-strand runs
//! 3 -> 1 at a positive crossing and 1 -> 3 at a negative one.

pub(crate) const NONE: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct RawDiagram {
    pub xs: Vec<[u32; 4]>,
    pub positive: Vec<bool>,
    /// Components that meet no crossing at all.
    pub free_loops: usize,
}

#[inline]
pub(crate) fn over_in(positive: bool) -> usize {
    if positive {
        3
    } else {
        1
    }
}

#[inline]
pub(crate) fn over_out(positive: bool) -> usize {
    if positive {
        1
    } else {
        3
    }
}

impl RawDiagram {
    pub fn crossing_count(&self) -> usize {
        self.xs.len()
    }

    fn label_bound(&self) -> usize {
        self.xs.iter().flatten().max().map_or(0, |&m| m as usize + 1)
    }

    /// `(crossing, position)` where each arc ends, indexed by label.
    pub fn heads(&self) -> Vec<(usize, usize)> {
        let mut h = vec![(NONE, 0); self.label_bound()];
        for (c, x) in self.xs.iter().enumerate() {
            h[x[0] as usize] = (c, 0);
            let p = over_in(self.positive[c]);
            h[x[p] as usize] = (c, p);
        }
        h
    }

    /// `(crossing, position)` where each arc starts, indexed by label.
    pub fn tails(&self) -> Vec<(usize, usize)> {
        let mut t = vec![(NONE, 0); self.label_bound()];
        for (c, x) in self.xs.iter().enumerate() {
            t[x[2] as usize] = (c, 2);
            let p = over_out(self.positive[c]);
            t[x[p] as usize] = (c, p);
        }
        t
    }

    /// Arc cycles in orientation order, one per component that meets a
    /// crossing. Components are discovered by scanning crossings in order and
    /// positions 0..4; each cycle starts at its discovering arc.
    pub fn arc_cycles(&self) -> Vec<Vec<u32>> {
        let heads = self.heads();
        let mut seen = vec![false; heads.len()];
        let mut cycles = Vec::new();
        for x in &self.xs {
            for &start in x {
                if seen[start as usize] {
                    continue;
                }
                let mut cycle = Vec::new();
                let mut e = start;
                loop {
                    seen[e as usize] = true;
                    cycle.push(e);
                    let (c, p) = heads[e as usize];
                    e = self.xs[c][(p + 2) % 4];
                    if e == start {
                        break;
                    }
                }
                cycles.push(cycle);
            }
        }
        cycles
    }

    pub fn component_count(&self) -> usize {
        self.arc_cycles().len() + self.free_loops
    }

    /// Number of connected pieces of the underlying 4-valent graph.
    pub fn pieces(&self) -> usize {
        let n = self.xs.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        let heads = self.heads();
        let tails = self.tails();
        for (h, t) in heads.iter().zip(&tails) {
            if h.0 == NONE || t.0 == NONE {
                continue;
            }
            let (a, b) = (find(&mut parent, h.0), find(&mut parent, t.0));
            if a != b {
                parent[a] = b;
            }
        }
        (0..n).filter(|&i| find(&mut parent, i) == i).count()
    }

    /// Exchanges over and under at crossing `c`; arc labels are untouched.
    pub fn switched(&self, c: usize) -> Self {
        let mut out = self.clone();
        let [a, b, cc, d] = self.xs[c];
        out.xs[c] = if self.positive[c] { [d, a, b, cc] } else { [b, cc, d, a] };
        out.positive[c] = !self.positive[c];
        out
    }

    /// Oriented smoothing at crossing `c`.
    pub fn smoothed(&self, c: usize) -> Self {
        let [a, b, cc, d] = self.xs[c];
        let pairs = if self.positive[c] { [(a, b), (d, cc)] } else { [(a, d), (b, cc)] };
        self.remove_crossings(&[c], &pairs)
    }

    /// Deletes the crossings in `cs`, gluing the arcs named in `pairs`. A glued
    /// class with no surviving endpoint becomes a free loop.
    fn remove_crossings(&self, cs: &[usize], pairs: &[(u32, u32)]) -> Self {
        let mut classes: Vec<Vec<u32>> = Vec::new();
        for &c in cs {
            for &l in &self.xs[c] {
                if !classes.iter().any(|k| k.contains(&l)) {
                    classes.push(vec![l]);
                }
            }
        }
        for &(x, y) in pairs {
            let ix = classes.iter().position(|k| k.contains(&x)).expect("label of crossing");
            let iy = classes.iter().position(|k| k.contains(&y)).expect("label of crossing");
            if ix != iy {
                let moved = classes.remove(ix.max(iy));
                classes[ix.min(iy)].extend(moved);
            }
        }
        let mut xs: Vec<[u32; 4]> = Vec::with_capacity(self.xs.len() - cs.len());
        let mut positive = Vec::with_capacity(self.xs.len() - cs.len());
        for (i, x) in self.xs.iter().enumerate() {
            if !cs.contains(&i) {
                xs.push(*x);
                positive.push(self.positive[i]);
            }
        }
        let mut free_loops = self.free_loops;
        for class in &classes {
            let rep = *class.iter().min().expect("nonempty class");
            let mut survives = false;
            for x in &mut xs {
                for l in x.iter_mut() {
                    if class.contains(l) {
                        *l = rep;
                        survives = true;
                    }
                }
            }
            if !survives {
                free_loops += 1;
            }
        }
        Self { xs, positive, free_loops }
    }

    /// Index of a crossing carrying a Reidemeister I kink, if any.
    pub fn find_kink(&self) -> Option<usize> {
        self.xs.iter().position(|x| (0..4).any(|p| x[p] == x[(p + 1) % 4]))
    }

    /// A bigon face whose two crossings can be cancelled by a Reidemeister II
    /// move: the same arc is over at both corners. Returns the two crossings.
    pub fn find_bigon(&self) -> Option<(usize, usize)> {
        let heads = self.heads();
        let tails = self.tails();
        let other_end = |c: usize, p: usize| {
            let l = self.xs[c][p] as usize;
            if heads[l] == (c, p) {
                tails[l]
            } else {
                heads[l]
            }
        };
        for c in 0..self.xs.len() {
            for p in 0..4 {
                let (c2, q) = other_end(c, p);
                if c2 == c || p % 2 != q % 2 {
                    continue;
                }
                let (c3, r) = other_end(c2, (q + 1) % 4);
                if c3 == c && (r + 1) % 4 == p {
                    return Some((c, c2));
                }
            }
        }
        None
    }

    /// Removes Reidemeister I kinks and Reidemeister II bigons until none
    /// remain.
    pub fn simplified(&self) -> Self {
        let mut d = self.clone();
        loop {
            if let Some(c) = d.find_kink() {
                let [a, b, cc, e] = d.xs[c];
                d = d.remove_crossings(&[c], &[(a, b), (b, cc), (cc, e)]);
            } else if let Some((c1, c2)) = d.find_bigon() {
                d = d.cancel_pair(c1, c2);
            } else {
                return d;
            }
        }
    }

    /// Reidemeister II: deletes two crossings joined by a bigon, joining the
    /// over-strand and the under-strand through them.
    fn cancel_pair(&self, c1: usize, c2: usize) -> Self {
        let [a, b, c, d] = self.xs[c1];
        let [e, f, g, h] = self.xs[c2];
        self.remove_crossings(&[c1, c2], &[(a, c), (b, d), (e, g), (f, h)])
    }

    pub fn is_simple(&self) -> bool {
        self.find_kink().is_none() && self.find_bigon().is_none()
    }

    /// Renumbers arcs consecutively along each component's orientation,
    /// starting from `first`. Components and their starting arcs follow
    /// [`RawDiagram::arc_cycles`].
    pub fn relabeled_consecutive(&self, first: u32) -> Self {
        let mut map = vec![0u32; self.label_bound()];
        let mut next = first;
        for cycle in self.arc_cycles() {
            for e in cycle {
                map[e as usize] = next;
                next += 1;
            }
        }
        Self {
            xs: self.xs.iter().map(|x| x.map(|l| map[l as usize])).collect(),
            positive: self.positive.clone(),
            free_loops: self.free_loops,
        }
    }

    /// Canonical relabeling: the lexicographically least encoding over all
    /// choices of starting arc. Returns the relabeled diagram (crossings
    /// sorted, labels from 0) and its encoding. Labels must be dense.
    pub fn canonical(&self) -> (Self, Vec<u32>) {
        let heads = self.heads();
        let arcs = heads.len();
        let mut best: Option<(Vec<u32>, Vec<[u32; 5]>)> = None;
        let mut map = vec![u32::MAX; arcs];
        let mut order: Vec<u32> = Vec::with_capacity(arcs);
        let mut rows: Vec<[u32; 5]> = Vec::with_capacity(self.xs.len());
        for start in 0..arcs as u32 {
            if heads[start as usize].0 == NONE {
                continue;
            }
            map.fill(u32::MAX);
            order.clear();
            let label_from = |s: u32, map: &mut Vec<u32>, order: &mut Vec<u32>| {
                let mut e = s;
                loop {
                    map[e as usize] = order.len() as u32;
                    order.push(e);
                    let (c, p) = heads[e as usize];
                    e = self.xs[c][(p + 2) % 4];
                    if e == s {
                        break;
                    }
                }
            };
            label_from(start, &mut map, &mut order);
            let mut k = 0;
            while k < order.len() {
                let (c, _) = heads[order[k] as usize];
                for &l in &self.xs[c] {
                    if map[l as usize] == u32::MAX {
                        label_from(l, &mut map, &mut order);
                    }
                }
                k += 1;
                if k == order.len() && order.len() < arcs {
                    // Disconnected remainder: continue from the least unlabeled arc.
                    if let Some(l) = (0..arcs)
                        .find(|&l| map[l] == u32::MAX && heads[l].0 != NONE)
                    {
                        label_from(l as u32, &mut map, &mut order);
                    }
                }
            }
            rows.clear();
            rows.extend(self.xs.iter().zip(&self.positive).map(|(x, &pos)| {
                let m = x.map(|l| map[l as usize]);
                [m[0], m[1], m[2], m[3], pos as u32]
            }));
            rows.sort_unstable();
            let key: Vec<u32> = rows.iter().flatten().copied().collect();
            if best.as_ref().is_none_or(|(b, _)| key < *b) {
                best = Some((key, rows.clone()));
            }
        }
        let (mut key, rows) = best.unwrap_or_default();
        key.insert(0, self.free_loops as u32);
        let canon = Self {
            xs: rows.iter().map(|r| [r[0], r[1], r[2], r[3]]).collect(),
            positive: rows.iter().map(|r| r[4] == 1).collect(),
            free_loops: self.free_loops,
        };
        (canon, key)
    }

    /// Number of faces when the diagram is read as a map on the sphere.
    pub fn face_count(&self) -> usize {
        let heads = self.heads();
        let tails = self.tails();
        let n = self.xs.len();
        let mut seen = vec![false; 4 * n];
        let mut faces = 0;
        for dart in 0..4 * n {
            if seen[dart] {
                continue;
            }
            faces += 1;
            let mut d = dart;
            while !seen[d] {
                seen[d] = true;
                let (c, p) = (d / 4, d % 4);
                let l = self.xs[c][p] as usize;
                let other = if heads[l] == (c, p) { tails[l] } else { heads[l] };
                d = other.0 * 4 + (other.1 + 1) % 4;
            }
        }
        faces
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> RawDiagram {
        // closure of s1^3, all positive
        RawDiagram {
            xs: vec![[1, 5, 2, 4], [5, 3, 6, 2], [3, 1, 4, 6]],
            positive: vec![true; 3],
            free_loops: 0,
        }
    }

    #[test]
    fn heads_and_tails_are_consistent() {
        let d = trefoil();
        let h = d.heads();
        let t = d.tails();
        for l in 1..=6 {
            assert_ne!(h[l].0, NONE);
            assert_ne!(t[l].0, NONE);
        }
        assert_eq!(d.arc_cycles().len(), 1);
    }

    #[test]
    fn switching_twice_is_identity() {
        let d = trefoil();
        assert_eq!(d.switched(1).switched(1), d);
        assert!(!d.switched(1).positive[1]);
    }

    #[test]
    fn smoothing_trefoil_crossing_gives_two_components() {
        let d = trefoil();
        let s = d.smoothed(0);
        assert_eq!(s.crossing_count(), 2);
        assert_eq!(s.component_count(), 2);
        assert_eq!(s.free_loops, 0);
    }

    #[test]
    fn kink_removal_to_free_loop() {
        let d = RawDiagram { xs: vec![[1, 1, 2, 2]], positive: vec![true], free_loops: 0 };
        let r = d.simplified();
        assert!(r.xs.is_empty());
        assert_eq!(r.free_loops, 1);
    }

    fn braid(n: u32, w: &[i32]) -> RawDiagram {
        crate::diagram::BraidWord::new(n, w.to_vec()).unwrap().closure().to_raw()
    }

    #[test]
    fn bigon_cancellation() {
        let r = braid(2, &[1, -1]).simplified();
        assert!(r.xs.is_empty());
        assert_eq!(r.free_loops, 2);
        let r = braid(3, &[1, 2, -2, 1, 1]).simplified();
        // Strand 3 only meets the cancelled pair and comes off as a free loop.
        assert_eq!(r.crossing_count(), 3);
        assert_eq!((r.component_count(), r.free_loops), (2, 1));
        assert_eq!(r.face_count(), 5);
        // Clasps are alternating bigons and must stay.
        assert!(braid(2, &[1, 1]).is_simple());
        assert!(braid(2, &[1, 1, 1]).is_simple());
        assert!(braid(3, &[1, -2, 1, -2]).is_simple());
    }

    #[test]
    fn planar_face_count() {
        let d = trefoil();
        assert_eq!(d.face_count(), d.crossing_count() + 2);
    }

    #[test]
    fn canonical_form_ignores_labels() {
        let d = trefoil();
        let shuffled = RawDiagram {
            xs: d.xs.iter().rev().map(|x| x.map(|l| l % 6)).collect(),
            positive: d.positive.clone(),
            free_loops: 0,
        };
        let dense = RawDiagram {
            xs: d.xs.iter().map(|x| x.map(|l| l - 1)).collect(),
            ..d.clone()
        };
        assert_eq!(dense.canonical().1, shuffled.canonical().1);
    }
}
