//! Conway polynomials of knot diagrams, the (Conway, Delta) Gordian graph,
//! and finite-scale audits of its coarse geometry.
//!
//! The guide in `book/` walks through each layer; its code blocks run as
//! doctests of this crate.

pub mod audit;
pub mod conway;
pub mod diagram;
pub mod error;
pub mod metric;
pub mod poly;

pub use audit::{
    audit_four_point, audit_okada_walk, audit_quasi_isometry, audit_slimness, audit_triangle_free, gromov_product,
    triangle_slimness, AuditConfig, AuditReport, GeodesicTriangle, HalfInt,
};
pub use conway::{a2, conway_class, conway_polynomial, conway_via_matrix, ConwayClass};
pub use diagram::{parse_braid, parse_pd, twist_knot, BraidWord, Crossing, LinkDiagram, MoveSite, Sign};
pub use metric::{
    adjacent, delta_nabla_distance, okada_bound_and_parity, x_nabla_distance_bounds, Center, FiniteUniverse, GeodesicPath,
    Geodesics, UniverseParams,
};
pub use error::{Error, ParseError, Result};
pub use poly::ConwayPolynomial;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/diagrams.md")]
    struct Diagrams;
    #[doc = include_str!("../../../book/src/conway.md")]
    struct Conway;
    #[doc = include_str!("../../../book/src/gordian-graph.md")]
    struct GordianGraph;
    #[doc = include_str!("../../../book/src/universes.md")]
    struct Universes;
    #[doc = include_str!("../../../book/src/audits.md")]
    struct Audits;
    #[doc = include_str!("../../../README.md")]
    struct Readme;
}
