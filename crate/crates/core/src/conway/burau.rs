//! Conway polynomial of a braid closure through the reduced Burau
//! representation.
//!
//! For a braid `b` on `n` strands whose closure is a knot,
//! `(1 - t) det(I - B(b)) = (1 - t^n) D(t)` up to a unit `+-t^k`, where `B` is
//! the reduced Burau matrix and `D` the Alexander polynomial. Normalizing `D`
//! to be symmetric with `D(1) = 1` and substituting `t + 1/t = z^2 + 2` gives
//! the Conway polynomial. This route shares no code with the skein engine.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::diagram::BraidWord;
use crate::error::{Error, Result};
use crate::poly::{ConwayPolynomial, Laurent};

type Matrix = Vec<Vec<Laurent>>;

fn identity(m: usize) -> Matrix {
    (0..m)
        .map(|i| (0..m).map(|j| Laurent::constant(i64::from(i == j))).collect())
        .collect()
}

/// Reduced Burau image of a single letter, as an `(n-1) x (n-1)` matrix.
fn generator(n: usize, letter: i32) -> Matrix {
    let m = n - 1;
    let i = letter.unsigned_abs() as usize; // 1-based generator index
    let inverse = letter < 0;
    let mut g = identity(m);
    let t = |c: i64, e: i64| Laurent::monomial(c, e);
    // Row/column indices are 0-based; sigma_i acts on rows/cols i-2, i-1, i.
    let r = i - 1;
    let diag = if inverse { t(-1, -1) } else { t(-1, 1) };
    g[r][r] = diag;
    if r >= 1 {
        // superdiagonal entry in the row above
        g[r - 1][r] = if inverse { t(1, 0) } else { t(1, 1) };
    }
    if r + 1 < m {
        // subdiagonal entry in the row below
        g[r + 1][r] = if inverse { t(1, -1) } else { t(1, 0) };
    }
    g
}

fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let m = a.len();
    let mut out = vec![vec![Laurent::zero(); m]; m];
    for i in 0..m {
        for k in 0..m {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..m {
                if b[k][j].is_zero() {
                    continue;
                }
                out[i][j] = out[i][j].add(&a[i][k].mul(&b[k][j]));
            }
        }
    }
    out
}

/// Fraction-free (Bareiss) determinant over `Z[t, 1/t]`.
fn determinant(mut a: Matrix) -> Result<Laurent> {
    let m = a.len();
    if m == 0 {
        return Ok(Laurent::constant(1));
    }
    // Clear negative exponents so all divisions happen in Z[t].
    let low = a.iter().flatten().filter(|e| !e.is_zero()).map(Laurent::low).min().unwrap_or(0);
    if low < 0 {
        for e in a.iter_mut().flatten() {
            *e = e.shifted(-low);
        }
    }
    let mut sign = 1i64;
    let mut prev = Laurent::constant(1);
    for k in 0..m {
        if a[k][k].is_zero() {
            match (k + 1..m).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(Laurent::zero()),
            }
        }
        for i in k + 1..m {
            for j in k + 1..m {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num
                    .div_exact(&prev)
                    .ok_or_else(|| Error::Normalization("inexact Bareiss division".into()))?;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[m - 1][m - 1].clone();
    let det = if sign < 0 { det.neg() } else { det };
    Ok(det.shifted(low.min(0) * m as i64))
}

/// Alexander polynomial of the closure, normalized symmetric with `D(1) = 1`.
pub(crate) fn alexander(w: &BraidWord) -> Result<Laurent> {
    if !w.closes_to_knot() {
        return Err(Error::NotAKnot { components: w.closure_components() });
    }
    let n = w.strands() as usize;
    if n == 1 {
        return Ok(Laurent::constant(1));
    }
    let m = n - 1;
    let mut b = identity(m);
    for &l in w.letters() {
        b = mul(&b, &generator(n, l));
    }
    let mut i_minus_b = identity(m);
    for (i, row) in i_minus_b.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            *e = e.sub(&b[i][j]);
        }
    }
    let det = determinant(i_minus_b)?;
    let one_minus_t = Laurent::new(0, vec![BigInt::one(), -BigInt::one()]);
    let mut one_minus_tn = vec![BigInt::zero(); n + 1];
    one_minus_tn[0] = BigInt::one();
    one_minus_tn[n] = -BigInt::one();
    let raw = det
        .mul(&one_minus_t)
        .div_exact(&Laurent::new(0, one_minus_tn))
        .ok_or_else(|| Error::Normalization("(1 - t^n) does not divide (1 - t) det(I - B)".into()))?;
    if raw.is_zero() {
        return Err(Error::Normalization("vanishing Alexander polynomial for a knot".into()));
    }
    let span = raw.high() - raw.low();
    if span % 2 != 0 {
        return Err(Error::Normalization("odd span".into()));
    }
    let centered = raw.shifted(-(raw.low() + span / 2));
    let at_one = centered.eval_at_one();
    let normalized = if at_one == BigInt::one() {
        centered
    } else if at_one == -BigInt::one() {
        centered.neg()
    } else {
        return Err(Error::Normalization(format!("D(1) = {at_one}, expected +-1")));
    };
    let half = span / 2;
    for j in 1..=half {
        if normalized.coeff(j) != normalized.coeff(-j) {
            return Err(Error::Normalization("Alexander polynomial is not symmetric".into()));
        }
    }
    Ok(normalized)
}

/// Rewrites a symmetric Laurent polynomial in `t` as a polynomial in `z`
/// via `t^j + t^-j = S_j(z^2)`, `S_0 = 2`, `S_1 = z^2 + 2`,
/// `S_j = (z^2 + 2) S_{j-1} - S_{j-2}`.
fn symmetric_to_conway(d: &Laurent) -> ConwayPolynomial {
    let half = d.high().max(0);
    // Polynomials in x = z^2, as coefficient vectors.
    let x_plus_2 = ConwayPolynomial::from_coeffs([2, 1]);
    let mut prev = ConwayPolynomial::from_coeffs([2]);
    let mut cur = x_plus_2.clone();
    let mut acc = ConwayPolynomial::from_coeffs([d.coeff(0)]);
    for j in 1..=half {
        if j > 1 {
            let next = &(&x_plus_2 * &cur) - &prev;
            prev = std::mem::replace(&mut cur, next);
        }
        acc = &acc + &(&ConwayPolynomial::from_coeffs([d.coeff(j)]) * &cur);
    }
    // x = z^2: spread coefficients onto even powers.
    let mut coeffs = Vec::with_capacity(2 * acc.coeffs().len());
    for (i, c) in acc.coeffs().iter().enumerate() {
        if i > 0 {
            coeffs.push(BigInt::zero());
        }
        coeffs.push(c.clone());
    }
    ConwayPolynomial::from_coeffs(coeffs)
}

/// Conway polynomial of the closure of `w`, which must be a knot.
pub fn conway_via_matrix(w: &BraidWord) -> Result<ConwayPolynomial> {
    let d = alexander(w)?;
    let p = symmetric_to_conway(&d);
    if p.coeff(0) != BigInt::one() || !p.is_even() {
        return Err(Error::Normalization(format!("{p} is not a knot polynomial")));
    }
    Ok(p)
}
