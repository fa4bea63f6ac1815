//! Exact determinants and maximal minors of matrices with polynomial
//! entries.
//!
//! Small determinants expand by cofactors; larger ones use fraction-free
//! Bareiss elimination, whose intermediate divisions are exact over any
//! integral domain, so no rational-function arithmetic is ever needed.

use std::sync::Arc;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::PolyRing;

/// Determinant of a square matrix of polynomials over `ring`.
/// The empty matrix has determinant one.
pub fn determinant(ring: &Arc<PolyRing>, mat: &[Vec<Polynomial>]) -> Result<Polynomial> {
    let n = mat.len();
    for row in mat {
        if row.len() != n {
            return Err(Error::InvalidArgument(
                "determinant needs a square matrix".into(),
            ));
        }
        for p in row {
            if !PolyRing::same(p.ring(), ring) {
                return Err(Error::RingMismatch("matrix entry over a different ring".into()));
            }
        }
    }
    if n == 0 {
        return Ok(Polynomial::one(ring));
    }
    if n <= 4 {
        Ok(det_cofactor(ring, mat))
    } else {
        Ok(det_bareiss(ring, mat))
    }
}

fn det_cofactor(ring: &Arc<PolyRing>, mat: &[Vec<Polynomial>]) -> Polynomial {
    let n = mat.len();
    if n == 1 {
        return mat[0][0].clone();
    }
    let mut acc = Polynomial::zero(ring);
    for (j, entry) in mat[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = mat[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter_map(|(c, p)| (c != j).then(|| p.clone()))
                    .collect()
            })
            .collect();
        let contrib = entry.try_mul(&det_cofactor(ring, &minor)).expect("same ring");
        acc = if j % 2 == 0 {
            acc.try_add(&contrib).expect("same ring")
        } else {
            acc.try_sub(&contrib).expect("same ring")
        };
    }
    acc
}

/// Fraction-free elimination: every division by the previous pivot is
/// exact, and the final pivot is the determinant up to the swap sign.
fn det_bareiss(ring: &Arc<PolyRing>, mat: &[Vec<Polynomial>]) -> Polynomial {
    let n = mat.len();
    let mut m: Vec<Vec<Polynomial>> = mat.to_vec();
    let mut negate = false;
    let mut prev = Polynomial::one(ring);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&l| !m[l][k].is_zero()) {
                Some(l) => {
                    m.swap(k, l);
                    negate = !negate;
                }
                None => return Polynomial::zero(ring),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j]
                    .try_mul(&m[k][k])
                    .expect("same ring")
                    .try_sub(&m[i][k].try_mul(&m[k][j]).expect("same ring"))
                    .expect("same ring");
                m[i][j] = if num.is_zero() {
                    num
                } else {
                    num.div_exact(&prev).expect("Bareiss division is exact")
                };
            }
            m[i][k] = Polynomial::zero(ring);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

/// All maximal minors of an `r x d` matrix: the size-`r` minors over every
/// column subset when `d >= r`, in ascending column-subset order, zeros
/// included.  When `d < r` there are none, matching the convention that
/// the minors ideal is then zero.
pub fn maximal_minors(ring: &Arc<PolyRing>, mat: &[Vec<Polynomial>]) -> Result<Vec<Polynomial>> {
    let r = mat.len();
    if r == 0 {
        return Ok(Vec::new());
    }
    let d = mat[0].len();
    if mat.iter().any(|row| row.len() != d) {
        return Err(Error::InvalidArgument("ragged matrix".into()));
    }
    if d < r {
        return Ok(Vec::new());
    }
    let mut minors = Vec::new();
    for cols in (0..d).combinations(r) {
        let sub: Vec<Vec<Polynomial>> = mat
            .iter()
            .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
            .collect();
        minors.push(determinant(ring, &sub)?);
    }
    Ok(minors)
}
