use std::fmt;

use thiserror::Error;

/// Syntax error in one of the text formats, located by 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    /// Builds an error pointing at byte `offset` of `source`.
    pub fn at(source: &str, offset: usize, message: impl Into<String>) -> Self {
        let offset = offset.min(source.len());
        let before = &source[..offset];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Self { line, column, message: message.into() }
    }
}

/// Which resource cap was hit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resource {
    Crossings,
    SkeinNodes,
    Vertices,
    Geodesics,
    Configurations,
    PlotVertices,
}

impl fmt::Display for Resource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Resource::Crossings => "crossing count",
            Resource::SkeinNodes => "skein node count",
            Resource::Vertices => "universe vertex count",
            Resource::Geodesics => "geodesic count",
            Resource::Configurations => "configuration count",
            Resource::PlotVertices => "plot vertex count",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),

    /// Well-formed text that does not describe a valid diagram or braid.
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("invalid braid: {0}")]
    InvalidBraid(String),

    #[error("index {index} out of range (len {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("expected a knot, found {components} components")]
    NotAKnot { components: usize },

    #[error("invalid Delta-move site: {0}")]
    InvalidMoveSite(String),

    #[error("{resource} limit exceeded: {actual} > {limit}")]
    ResourceLimit { resource: Resource, limit: u64, actual: u64 },

    /// Signals an internal inconsistency rather than bad input.
    #[error("normalization failure: {0}")]
    Normalization(String),

    #[error("not a knot polynomial: {0}")]
    NotKnotPolynomial(String),

    #[error("invalid universe parameters: {0}")]
    InvalidUniverse(String),

    #[error("vertex {0} is not in the universe")]
    NotInUniverse(String),

    #[error("corrupt universe file: {0}")]
    CorruptUniverse(String),

    #[error("not a geodesic: {0}")]
    NotGeodesic(String),

    #[error("invalid audit request: {0}")]
    InvalidAudit(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn locates_line_and_column() {
        let e = ParseError::at("X(1,2)\n  X(oops", 11, "bad");
        assert_eq!((e.line, e.column), (2, 5));
        assert_eq!(ParseError::at("abc", 0, "x").column, 1);
    }
}
