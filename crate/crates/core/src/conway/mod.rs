//! The Conway polynomial, computed two independent ways, and Conway classes.

mod burau;
mod skein;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

pub use burau::conway_via_matrix;
pub use skein::{conway_polynomial, SkeinEngine, SkeinLimits, DEFAULT_MAX_CROSSINGS, DEFAULT_MAX_NODES};

use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::poly::ConwayPolynomial;

/// The `z^2` coefficient of a knot polynomial.
pub fn a2(p: &ConwayPolynomial) -> Result<BigInt> {
    check_knot_polynomial(p)?;
    Ok(p.coeff(2))
}

fn check_knot_polynomial(p: &ConwayPolynomial) -> Result<()> {
    if p.coeff(0) != BigInt::one() || !p.is_even() {
        return Err(Error::NotKnotPolynomial(p.to_string()));
    }
    Ok(())
}

/// The Conway class `[K]` of a knot: a vertex of the Gordian graph.
///
/// Two knots lie in the same class exactly when their Conway polynomials
/// agree, so a class is identified with its (knot) polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConwayClass {
    poly: ConwayPolynomial,
}

impl ConwayClass {
    pub fn new(poly: ConwayPolynomial) -> Result<Self> {
        check_knot_polynomial(&poly)?;
        Ok(Self { poly })
    }

    /// The class of the unknot, `1`.
    pub fn unknot() -> Self {
        Self { poly: ConwayPolynomial::one() }
    }

    /// Class with even coefficients `1, a2, a4, ...` given from `a2` upward.
    pub fn from_even<I, T>(higher: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut coeffs = vec![BigInt::one()];
        for c in higher {
            coeffs.push(BigInt::default());
            coeffs.push(c.into());
        }
        Self { poly: ConwayPolynomial::from_coeffs(coeffs) }
    }

    /// `1 + m z^2`, the class of the twist knot `K_m`.
    pub fn twist(m: i64) -> Self {
        Self::from_even([m])
    }

    pub fn poly(&self) -> &ConwayPolynomial {
        &self.poly
    }

    pub fn a2(&self) -> BigInt {
        self.poly.coeff(2)
    }

    /// Even coefficients `a2, a4, ..., a_{2depth}` (zero padded).
    pub fn even_coeffs(&self, depth: usize) -> Vec<BigInt> {
        (1..=depth).map(|j| self.poly.coeff(2 * j)).collect()
    }

    pub fn is_unknot(&self) -> bool {
        self.poly == ConwayPolynomial::one()
    }
}

impl fmt::Display for ConwayClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

impl FromStr for ConwayClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let poly = ConwayPolynomial::parse_list(s)?;
        Self::new(poly)
    }
}

impl TryFrom<ConwayPolynomial> for ConwayClass {
    type Error = Error;

    fn try_from(p: ConwayPolynomial) -> Result<Self> {
        Self::new(p)
    }
}

/// The Conway class of a knot diagram.
pub fn conway_class(d: &LinkDiagram) -> Result<ConwayClass> {
    if !d.is_knot() {
        return Err(Error::NotAKnot { components: d.component_count() });
    }
    ConwayClass::new(conway_polynomial(d)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::BraidWord;

    fn p(c: &[i64]) -> ConwayPolynomial {
        ConwayPolynomial::from_coeffs(c.iter().copied())
    }

    #[test]
    fn a2_reads_the_z2_coefficient() {
        assert_eq!(a2(&p(&[1])).unwrap(), 0.into());
        assert_eq!(a2(&p(&[1, 0, 1])).unwrap(), 1.into());
        assert_eq!(a2(&p(&[1, 0, 3, 0, -2])).unwrap(), 3.into());
        assert!(matches!(a2(&p(&[0, 1])), Err(Error::NotKnotPolynomial(_))));
        assert!(a2(&p(&[1, 1])).is_err());
    }

    #[test]
    fn classes() {
        assert_eq!(conway_class(&LinkDiagram::unknot()).unwrap(), ConwayClass::unknot());
        let trefoil = BraidWord::new(2, vec![1, 1, 1]).unwrap().closure();
        assert_eq!(conway_class(&trefoil).unwrap(), ConwayClass::twist(1));
        let hopf = BraidWord::new(2, vec![1, 1]).unwrap().closure();
        assert_eq!(conway_class(&hopf), Err(Error::NotAKnot { components: 2 }));
    }

    #[test]
    fn class_parsing() {
        let c: ConwayClass = "[1,0,3,0,1]".parse().unwrap();
        assert_eq!(c, ConwayClass::from_even([3, 1]));
        assert_eq!(c.a2(), 3.into());
        assert!("[2]".parse::<ConwayClass>().is_err());
        assert!("[1,1]".parse::<ConwayClass>().is_err());
        assert_eq!(ConwayClass::from_even([0, 0]), ConwayClass::unknot());
    }
}
