use std::fmt;

use super::raw::RawDiagram;
use super::{LinkDiagram, Sign};
use crate::error::{Error, ParseError, Result};

/// A word in the braid generators on `strands` strands. Letter `i` is
/// `sigma_i`, letter `-i` its inverse; `sigma_i` closes to a positive crossing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: u32,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: u32, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidBraid("strand count must be at least 1".into()));
        }
        for (i, &l) in letters.iter().enumerate() {
            if l == 0 {
                return Err(Error::InvalidBraid(format!("letter {i} is 0, which is not a generator")));
            }
            if l.unsigned_abs() >= strands {
                return Err(Error::InvalidBraid(format!(
                    "letter {l} needs at least {} strands, have {strands}",
                    l.unsigned_abs() + 1
                )));
            }
        }
        Ok(Self { strands, letters })
    }

    /// Word whose strand count is inferred as `max |letter| + 1`.
    pub fn inferred(letters: Vec<i32>) -> Result<Self> {
        let strands = letters.iter().map(|l| l.unsigned_abs()).max().unwrap_or(0) + 1;
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> u32 {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `perm[i]` is the top position reached by the strand starting at bottom
    /// position `i`.
    pub fn permutation(&self) -> Vec<usize> {
        // at[p] = starting strand currently at position p
        let mut at: Vec<usize> = (0..self.strands as usize).collect();
        for &l in &self.letters {
            let k = l.unsigned_abs() as usize;
            at.swap(k - 1, k);
        }
        let mut perm = vec![0; at.len()];
        for (pos, &strand) in at.iter().enumerate() {
            perm[strand] = pos;
        }
        perm
    }

    /// Number of components of the closure: the cycle count of the permutation.
    pub fn closure_components(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; perm.len()];
        let mut cycles = 0;
        for s in 0..perm.len() {
            if seen[s] {
                continue;
            }
            cycles += 1;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
            }
        }
        cycles
    }

    pub fn closes_to_knot(&self) -> bool {
        self.closure_components() == 1
    }

    /// PD diagram of the trace closure, one crossing per letter.
    pub fn closure(&self) -> LinkDiagram {
        let n = self.strands as usize;
        let mut pos: Vec<u32> = (0..n as u32).collect();
        let mut next = n as u32;
        let mut xs = Vec::with_capacity(self.letters.len());
        let mut positive = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            let k = l.unsigned_abs() as usize;
            let (l_in, r_in) = (pos[k - 1], pos[k]);
            let (l_out, r_out) = (next, next + 1);
            next += 2;
            if l > 0 {
                // left strand passes over, right strand enters under from SE
                xs.push([r_in, l_out, r_out, l_in]);
            } else {
                xs.push([l_in, r_in, l_out, r_out]);
            }
            positive.push(l > 0);
            pos[k - 1] = r_out;
            pos[k] = l_out;
        }
        // Close up: top arc at position i is the bottom arc at position i.
        let mut rename: Vec<u32> = (0..next).collect();
        let mut free_loops = 0;
        for (i, &top) in pos.iter().enumerate() {
            if top == i as u32 {
                free_loops += 1;
            } else {
                rename[top as usize] = i as u32;
            }
        }
        for x in &mut xs {
            *x = x.map(|l| rename[l as usize]);
        }
        LinkDiagram::from_raw(&RawDiagram { xs, positive, free_loops })
    }

    /// Inserts the pure braid `(s_i s_{i+1}^-1)^3` (or its inverse) at the
    /// site. This is a Delta-move on the closure.
    pub fn apply_delta_move(&self, site: &MoveSite) -> Result<Self> {
        let i = site.strand_index;
        if i < 1 || i + 2 > self.strands {
            return Err(Error::InvalidMoveSite(format!(
                "strand index {i} needs 1 <= i <= strands - 2 = {}",
                self.strands as i64 - 2
            )));
        }
        if site.position > self.letters.len() {
            return Err(Error::InvalidMoveSite(format!(
                "position {} beyond word length {}",
                site.position,
                self.letters.len()
            )));
        }
        if !self.closes_to_knot() {
            return Err(Error::NotAKnot { components: self.closure_components() });
        }
        let (a, b) = (i as i32, i as i32 + 1);
        let unit = match site.sign {
            Sign::Positive => [a, -b],
            Sign::Negative => [b, -a],
        };
        let mut letters = self.letters.clone();
        letters.splice(site.position..site.position, unit.iter().cycle().take(6).copied());
        let out = Self { strands: self.strands, letters };
        if !out.closes_to_knot() {
            return Err(Error::NotAKnot { components: out.closure_components() });
        }
        Ok(out)
    }

    /// Every admissible Delta-move site of this word (empty below 3 strands).
    pub fn delta_sites(&self) -> impl Iterator<Item = MoveSite> + '_ {
        let max_index = self.strands.saturating_sub(2);
        (0..=self.letters.len()).flat_map(move |position| {
            (1..=max_index).flat_map(move |strand_index| {
                [Sign::Positive, Sign::Negative].map(|sign| MoveSite { position, strand_index, sign })
            })
        })
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}:", self.strands)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

/// Where and how a Delta-move is inserted into a braid word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MoveSite {
    /// Insertion point, `0..=len`.
    pub position: usize,
    /// Leftmost of the three strands involved, `1..=strands-2`.
    pub strand_index: u32,
    pub sign: Sign,
}

/// Parses `[B<n>:] l1 l2 ...`. Without the header the strand count is
/// `max |letter| + 1`.
pub fn parse_braid(text: &str) -> Result<BraidWord> {
    let mut rest = text;
    let mut offset = 0;
    let mut declared = None;
    let lead = rest.len() - rest.trim_start().len();
    if rest.trim_start().starts_with('B') {
        let after_b = lead + 1;
        let colon = rest[after_b..]
            .find(':')
            .ok_or_else(|| ParseError::at(text, after_b, "expected `:` after strand count"))?;
        let digits = rest[after_b..after_b + colon].trim();
        let n = digits
            .parse::<u32>()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| ParseError::at(text, after_b, format!("invalid strand count `{digits}`")))?;
        declared = Some(n);
        offset = after_b + colon + 1;
        rest = &text[offset..];
    }
    let mut letters = Vec::new();
    let mut cursor = offset;
    for token in rest.split_whitespace() {
        let at = cursor + text[cursor..].find(token).expect("token from this slice");
        cursor = at + token.len();
        let value: i32 = token
            .parse()
            .map_err(|_| ParseError::at(text, at, format!("invalid braid letter `{token}`")))?;
        if value == 0 {
            return Err(ParseError::at(text, at, "0 is not a braid generator").into());
        }
        if let Some(n) = declared {
            if value.unsigned_abs() >= n {
                return Err(ParseError::at(
                    text,
                    at,
                    format!("letter {value} exceeds the declared {n} strands"),
                )
                .into());
            }
        }
        letters.push(value);
    }
    match declared {
        Some(n) => BraidWord::new(n, letters),
        None => BraidWord::inferred(letters),
    }
}

/// A braid word whose closure is the twist knot `K_m`, the knot with Conway
/// polynomial `1 + m z^2`: `K_0` is the unknot, `K_1` the trefoil and `K_-1`
/// the figure-eight.
///
/// For `m >= 1` the word is `s1^3 (s2 s1^-1 s2) (s3 s2^-1 s3) ...` on
/// `m + 1` strands; for `m <= -1` it is `s1 s2^-1 s1 s2^-1` followed by
/// `(s3^-1 s2 s3^-1) (s4^-1 s3 s4^-1) ...` on `|m| + 2` strands.
pub fn twist_knot(m: i32) -> BraidWord {
    let mut letters: Vec<i32> = Vec::new();
    let strands = match m {
        0 => 1,
        m if m > 0 => {
            letters.extend([1, 1, 1]);
            for j in 2..=m {
                letters.extend([j, -(j - 1), j]);
            }
            m as u32 + 1
        }
        m => {
            let k = -m;
            letters.extend([1, -2, 1, -2]);
            for j in 3..=k + 1 {
                letters.extend([-j, j - 1, -j]);
            }
            k as u32 + 2
        }
    };
    BraidWord { strands, letters }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_inference() {
        assert_eq!(parse_braid("1 1 1").unwrap(), BraidWord::new(2, vec![1, 1, 1]).unwrap());
        assert_eq!(parse_braid("1 -2 1 -2").unwrap().strands(), 3);
        assert_eq!(parse_braid("B5: 1 2").unwrap().strands(), 5);
        assert_eq!(parse_braid("").unwrap(), BraidWord::new(1, vec![]).unwrap());
        assert_eq!(parse_braid("B3:").unwrap(), BraidWord::new(3, vec![]).unwrap());
    }

    #[test]
    fn parse_errors() {
        let Error::Parse(e) = parse_braid("0 1").unwrap_err() else { panic!() };
        assert_eq!(e.column, 1);
        let Error::Parse(e) = parse_braid("B2: 1 2").unwrap_err() else { panic!() };
        assert_eq!(e.column, 7);
        assert!(parse_braid("1 x").is_err());
        assert!(parse_braid("B0: ").is_err());
        assert!(parse_braid("B3 1 2").is_err());
    }

    #[test]
    fn display_round_trips() {
        let w = BraidWord::new(4, vec![1, -3, 2]).unwrap();
        assert_eq!(w.to_string(), "B4: 1 -3 2");
        assert_eq!(parse_braid(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn closure_components() {
        let trefoil = BraidWord::new(2, vec![1, 1, 1]).unwrap();
        assert_eq!(trefoil.closure().component_count(), 1);
        assert_eq!(trefoil.closure().crossing_count(), 3);
        let unlink = BraidWord::new(3, vec![]).unwrap();
        assert_eq!(unlink.closure().component_count(), 3);
        let fig8 = BraidWord::new(3, vec![1, -2, 1, -2]).unwrap();
        assert_eq!(fig8.closure().component_count(), 1);
        let hopf = BraidWord::new(2, vec![1, 1]).unwrap();
        assert_eq!(hopf.closure().component_count(), 2);
        let split = BraidWord::new(4, vec![1, 1, 1]).unwrap();
        assert_eq!(split.closure().component_count(), 3);
        assert_eq!(split.closure().free_loops(), 2);
    }

    #[test]
    fn closure_signs_follow_letters() {
        let w = BraidWord::new(3, vec![1, -2, 1, -2]).unwrap();
        let signs: Vec<i32> = w.closure().signs().iter().map(|s| s.value()).collect();
        assert_eq!(signs, vec![1, -1, 1, -1]);
    }

    #[test]
    fn delta_move_site_validation() {
        let w = BraidWord::new(2, vec![1, 1, 1]).unwrap();
        let site = MoveSite { position: 0, strand_index: 1, sign: Sign::Positive };
        assert!(matches!(w.apply_delta_move(&site), Err(Error::InvalidMoveSite(_))));
        let w = BraidWord::new(3, vec![1, 2]).unwrap();
        let bad_pos = MoveSite { position: 3, ..site };
        assert!(matches!(w.apply_delta_move(&bad_pos), Err(Error::InvalidMoveSite(_))));
        let link = BraidWord::new(3, vec![1, 1]).unwrap();
        assert!(matches!(link.apply_delta_move(&site), Err(Error::NotAKnot { components: 3 })));
    }

    #[test]
    fn delta_move_inserts_six_letters() {
        let w = BraidWord::new(3, vec![1, 2]).unwrap();
        let end = MoveSite { position: 2, strand_index: 1, sign: Sign::Positive };
        let moved = w.apply_delta_move(&end).unwrap();
        assert_eq!(moved.letters(), &[1, 2, 1, -2, 1, -2, 1, -2]);
        let inv = MoveSite { sign: Sign::Negative, position: 0, ..end };
        assert_eq!(w.apply_delta_move(&inv).unwrap().letters(), &[2, -1, 2, -1, 2, -1, 1, 2]);
        assert_eq!(moved.permutation(), w.permutation());
        assert_eq!(w.delta_sites().count(), 3 * 2);
    }

    #[test]
    fn twist_knots_close_to_knots() {
        for m in -6..=6 {
            let w = twist_knot(m);
            assert!(w.closes_to_knot(), "m = {m}: {w}");
        }
        assert_eq!(twist_knot(1).letters(), &[1, 1, 1]);
        assert_eq!(twist_knot(-1).letters(), &[1, -2, 1, -2]);
    }
}
