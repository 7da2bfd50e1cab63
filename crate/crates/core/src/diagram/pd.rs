use super::{Crossing, LinkDiagram};
use crate::error::{ParseError, Result};

/// Parses whitespace-separated `X(a,b,c,d)` tokens. `#` starts a comment that
/// runs to the end of the line. Empty input is the zero-crossing unknot.
pub fn parse_pd(text: &str) -> Result<LinkDiagram> {
    let crossings = tokenize(text)?;
    LinkDiagram::from_crossings(crossings)
}

fn tokenize(text: &str) -> Result<Vec<Crossing>, ParseError> {
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < bytes.len() {
        let ch = bytes[i];
        if ch.is_ascii_whitespace() {
            i += 1;
        } else if ch == b'#' {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
        } else if ch == b'X' {
            let (crossing, next) = crossing_token(text, i)?;
            out.push(crossing);
            i = next;
        } else {
            return Err(ParseError::at(text, i, format!("unexpected character `{}`", ch as char)));
        }
    }
    Ok(out)
}

fn crossing_token(text: &str, start: usize) -> Result<(Crossing, usize), ParseError> {
    let bytes = text.as_bytes();
    let mut i = start + 1;
    if bytes.get(i) != Some(&b'(') {
        return Err(ParseError::at(text, i, "expected `(` after `X`"));
    }
    i += 1;
    let mut arcs = [0u32; 4];
    for (k, slot) in arcs.iter_mut().enumerate() {
        while bytes.get(i).is_some_and(|b| *b == b' ') {
            i += 1;
        }
        let begin = i;
        while bytes.get(i).is_some_and(u8::is_ascii_digit) {
            i += 1;
        }
        if begin == i {
            return Err(ParseError::at(text, begin, "expected a positive arc label"));
        }
        *slot = text[begin..i]
            .parse::<u32>()
            .ok()
            .filter(|&v| v > 0)
            .ok_or_else(|| ParseError::at(text, begin, "arc label must be a positive 32-bit integer"))?;
        while bytes.get(i).is_some_and(|b| *b == b' ') {
            i += 1;
        }
        let expected = if k == 3 { b')' } else { b',' };
        if bytes.get(i) != Some(&expected) {
            let what = if k == 3 { "`)` after the fourth label" } else { "`,` between labels" };
            return Err(ParseError::at(text, i, format!("expected {what}")));
        }
        i += 1;
    }
    Ok((Crossing::new(arcs), i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn empty_is_unknot() {
        let d = parse_pd("").unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.component_count(), 1);
        assert_eq!(parse_pd("  # nothing here\n").unwrap(), d);
    }

    #[test]
    fn trefoil() {
        let d = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.to_pd_string(), "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)");
    }

    #[test]
    fn comments_and_newlines() {
        let d = parse_pd("# trefoil\nX(1,4,2,5)\nX(3,6,4,1) # middle\nX(5,2,6,3)\n").unwrap();
        assert_eq!(d.crossing_count(), 3);
    }

    #[test]
    fn dangling_labels_are_semantic_errors() {
        let err = parse_pd("X(1,4,2,3) X(3,6,4,5)").unwrap_err();
        assert!(matches!(err, Error::InvalidDiagram(_)), "{err}");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let Error::Parse(e) = parse_pd("X(1,4,2,3)\n X(3,6;4,5)").unwrap_err() else { panic!() };
        assert_eq!((e.line, e.column), (2, 7));
        let Error::Parse(e) = parse_pd("X(1,0,2,3)").unwrap_err() else { panic!() };
        assert_eq!(e.column, 5);
        assert!(parse_pd("Y(1,2,3,4)").is_err());
        assert!(parse_pd("X(1,2,3)").is_err());
    }
}
