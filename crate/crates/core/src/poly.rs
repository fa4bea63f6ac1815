//! Sparse multivariate polynomials in canonical form.
//!
//! A polynomial is a list of `(exponent, coefficient)` terms kept strictly
//! descending under the ring's monomial order with no zero coefficients, so
//! structural equality is mathematical equality and printing is canonical.

use std::fmt;
use std::sync::Arc;

use crate::coef::Coef;
use crate::error::{Error, Result};
use crate::ring::PolyRing;

/// An exponent vector; length always matches the ring's arity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponent(pub Vec<u32>);

impl Exponent {
    pub fn zero(arity: usize) -> Self {
        Exponent(vec![0; arity])
    }

    pub fn of_var(arity: usize, var: usize, e: u32) -> Self {
        let mut v = vec![0; arity];
        v[var] = e;
        Exponent(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    /// Componentwise divisibility: self | other.
    pub fn divides(&self, other: &Exponent) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        Exponent(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    /// Componentwise difference; caller guarantees `other` divides `self`.
    pub fn sub(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Exponent) -> Exponent {
        Exponent(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// Plain lexicographic comparison, used where an order independent of
    /// the ring's term order is wanted (basis listings, report sorting).
    pub fn cmp_lex(&self, other: &Exponent) -> std::cmp::Ordering {
        self.0.cmp(&other.0)
    }
}

/// Minimal elements of a family of exponent vectors under componentwise
/// divisibility, deduplicated and sorted lexicographically descending.
/// For monomial ideals this is the unique minimal generating set.
pub fn minimal_antichain(exps: Vec<Exponent>) -> Vec<Exponent> {
    let mut kept: Vec<Exponent> = Vec::new();
    for e in exps {
        if kept.iter().any(|k| k.divides(&e)) {
            continue;
        }
        kept.retain(|k| !e.divides(k));
        kept.push(e);
    }
    kept.sort_by(|a, b| b.cmp_lex(a));
    kept
}

/// A sparse polynomial over a shared ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    /// Strictly descending under `ring.order()`, no zero coefficients.
    terms: Vec<(Exponent, Coef)>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial { ring: Arc::clone(ring), terms: Vec::new() }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Polynomial::constant(ring, ring.coef().one())
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Coef) -> Self {
        Polynomial::from_terms(ring, vec![(Exponent::zero(ring.arity()), c)])
    }

    pub fn monomial(ring: &Arc<PolyRing>, exp: Exponent, c: Coef) -> Self {
        Polynomial::from_terms(ring, vec![(exp, c)])
    }

    pub fn variable(ring: &Arc<PolyRing>, var: usize) -> Self {
        Polynomial::monomial(
            ring,
            Exponent::of_var(ring.arity(), var, 1),
            ring.coef().one(),
        )
    }

    /// Builds the canonical form from arbitrary terms: sorts descending,
    /// merges equal exponents, drops zeros.  Panics on arity mismatch, which
    /// is an internal programming error, not an input error.
    pub fn from_terms(ring: &Arc<PolyRing>, mut terms: Vec<(Exponent, Coef)>) -> Self {
        let arity = ring.arity();
        for (e, _) in &terms {
            assert_eq!(e.len(), arity, "exponent arity mismatch");
        }
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp_exponents(&b.0 .0, &a.0 .0));
        let mut out: Vec<(Exponent, Coef)> = Vec::with_capacity(terms.len());
        for (exp, c) in terms {
            match out.last_mut() {
                Some((last, acc)) if *last == exp => {
                    *acc = ring.coef().add(acc, &c);
                }
                _ => out.push((exp, c)),
            }
            if let Some((_, acc)) = out.last() {
                if acc.is_zero() {
                    out.pop();
                }
            }
        }
        // A merge can re-expose a zero that was not last; sweep once.
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { ring: Arc::clone(ring), terms: out }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Exponent, Coef)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_zero())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.iter().map(|(e, _)| e.degree()).max()
    }

    pub fn leading_term(&self) -> Option<(&Exponent, &Coef)> {
        self.terms.first().map(|(e, c)| (e, c))
    }

    /// The coefficient of the constant monomial (zero if absent).
    pub fn constant_term(&self) -> Coef {
        self.terms
            .iter()
            .find(|(e, _)| e.is_zero())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.coef().zero())
    }

    pub fn coefficient_of(&self, exp: &Exponent) -> Coef {
        self.terms
            .iter()
            .find(|(e, _)| e == exp)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.coef().zero())
    }

    fn check_same_ring(&self, other: &Polynomial) -> Result<()> {
        if PolyRing::same(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch(
                "operands live in different rings".into(),
            ))
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().map(|(e, c)| (e.clone(), self.ring.coef().neg(c))));
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        let field = self.ring.coef();
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                terms.push((ea.add(eb), field.mul(ca, cb)));
            }
        }
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), self.ring.coef().neg(c)))
                .collect(),
        }
    }

    /// Multiplies by the single term `c * x^exp` without re-sorting (the
    /// order is translation-invariant, so term order is preserved).
    pub fn mul_term(&self, exp: &Exponent, c: &Coef) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.add(exp), self.ring.coef().mul(k, c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Coef) -> Polynomial {
        self.mul_term(&Exponent::zero(self.ring.arity()), c)
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..n {
            acc = acc.try_mul(self).expect("same ring");
        }
        acc
    }

    /// Divides by the leading coefficient so the leading term is 1.
    pub fn make_monic(&self) -> Polynomial {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = self.ring.coef().inv(c).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Exact division: `Some(q)` with `self = q * divisor`, else `None`.
    /// Runs the term-by-term quotient; for true multiples the leading term
    /// of the divisor divides the leading term of every partial remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let field = self.ring.coef();
        let (dexp, dcoef) = divisor.leading_term().unwrap();
        let dexp = dexp.clone();
        let dcoef = dcoef.clone();
        let mut rem = self.clone();
        let mut quot: Vec<(Exponent, Coef)> = Vec::new();
        while let Some((rexp, rcoef)) = rem.leading_term() {
            if !dexp.divides(rexp) {
                return None;
            }
            let qexp = rexp.sub(&dexp);
            let qcoef = field.div(rcoef, &dcoef).expect("nonzero divisor lead");
            rem = rem
                .try_sub(&divisor.mul_term(&qexp, &qcoef))
                .expect("same ring");
            quot.push((qexp, qcoef));
        }
        Some(Polynomial::from_terms(&self.ring, quot))
    }

    /// Reinterprets a polynomial over a ring whose base variables match and
    /// whose extension list may be larger, padding exponents with zeros.
    pub fn promote_to(&self, target: &Arc<PolyRing>) -> Result<Polynomial> {
        if self.ring.coef() != target.coef()
            || self.ring.base_names() != target.base_names()
            || self.ring.order() != target.order()
            || self.ring.ext_len() > target.ext_len()
            || self.ring.ext_names() != &target.ext_names()[..self.ring.ext_len()]
        {
            return Err(Error::RingMismatch(
                "target ring does not extend the source ring".into(),
            ));
        }
        let pad = target.arity() - self.ring.arity();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut v = e.0.clone();
                v.extend(std::iter::repeat(0).take(pad));
                (Exponent(v), c.clone())
            })
            .collect();
        Ok(Polynomial::from_terms(target, terms))
    }

    /// The reverse of [`promote_to`]: drops trailing extension directions,
    /// failing if any dropped direction carries a nonzero exponent.
    pub fn restrict_to(&self, target: &Arc<PolyRing>) -> Result<Polynomial> {
        if self.ring.coef() != target.coef()
            || self.ring.base_names() != target.base_names()
            || self.ring.order() != target.order()
            || target.ext_len() > self.ring.ext_len()
            || self.ring.ext_names()[..target.ext_len()] != *target.ext_names()
        {
            return Err(Error::RingMismatch(
                "target ring is not a restriction of the source ring".into(),
            ));
        }
        let keep = target.arity();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            if e.0[keep..].iter().any(|&x| x != 0) {
                return Err(Error::InvalidArgument(
                    "polynomial involves a variable outside the target ring".into(),
                ));
            }
            terms.push((Exponent(e.0[..keep].to_vec()), c.clone()));
        }
        Ok(Polynomial::from_terms(target, terms))
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("ring mismatch")
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("ring mismatch")
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("ring mismatch")
    }
}

impl fmt::Display for Polynomial {
    /// Canonical printing; the output re-parses to an equal polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.ring.coef();
        for (i, (exp, coef)) in self.terms.iter().enumerate() {
            let (neg, abs) = match coef {
                Coef::Rat(r) => {
                    use num::traits::Signed;
                    if r.is_negative() {
                        (true, field.neg(coef))
                    } else {
                        (false, coef.clone())
                    }
                }
                // Prime-field representatives are already canonical in 0..p.
                Coef::Mod(_) => (false, coef.clone()),
            };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (v, &e) in exp.0.iter().enumerate() {
                if e == 1 {
                    factors.push(self.ring.var_name(v).to_string());
                } else if e > 1 {
                    factors.push(format!("{}^{}", self.ring.var_name(v), e));
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, factors.join("*"))?;
            }
        }
        Ok(())
    }
}
