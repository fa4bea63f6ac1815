//! Integral closure of monomial ideals through Newton polyhedra, and
//! integral-dependence certificates with their graded lifting.
//!
//! The closure of a monomial ideal is again monomial: a monomial lies in
//! it exactly when its exponent vector lies in the convex hull of the
//! generator exponents plus the nonnegative orthant.  That membership is a
//! small rational feasibility question, decided exactly by
//! Fourier-Motzkin elimination.
//!
//! Certificates are explicit monic equations witnessing integral
//! dependence.  They are verified, never searched for; verified
//! certificates over a minors ideal can be lifted to the graded module
//! setting by multiplying through with a monomial in the module
//! variables.

use std::sync::Arc;

use num::{BigInt, BigRational, Signed, Zero};

use crate::binomial;
use crate::error::{Error, Result};
use crate::gb::Ideal;
use crate::modalg::LinearModule;
use crate::poly::{minimal_antichain, Exponent, Polynomial};
use crate::ring::PolyRing;
use crate::Guards;

/// A monomial ideal held as the minimal antichain of its generator
/// exponents; an empty antichain is the zero ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    ring: Arc<PolyRing>,
    exps: Vec<Exponent>,
}

impl MonomialIdeal {
    pub fn new(ring: &Arc<PolyRing>, exps: Vec<Exponent>) -> Self {
        for e in &exps {
            assert_eq!(e.len(), ring.arity(), "exponent arity mismatch");
        }
        MonomialIdeal { ring: Arc::clone(ring), exps: minimal_antichain(exps) }
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        MonomialIdeal { ring: Arc::clone(ring), exps: Vec::new() }
    }

    /// Reads a monomial ideal off generators that are single terms.
    /// Refuses multi-term generators rather than computing with them.
    pub fn from_ideal(ideal: &Ideal) -> Result<Self> {
        let exps = ideal
            .monomial_exponents()
            .ok_or_else(|| Error::Unsupported("non-monomial generators".into()))?;
        Ok(MonomialIdeal::new(ideal.ring(), exps))
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn exponents(&self) -> &[Exponent] {
        &self.exps
    }

    pub fn is_zero(&self) -> bool {
        self.exps.is_empty()
    }

    /// The generators as monic monomials.
    pub fn generators(&self) -> Vec<Polynomial> {
        self.exps
            .iter()
            .map(|e| Polynomial::monomial(&self.ring, e.clone(), self.ring.coef().one()))
            .collect()
    }

    pub fn to_ideal(&self) -> Ideal {
        Ideal::new(&self.ring, self.generators()).expect("monomials are valid generators")
    }

    /// Monomial membership: some generator divides the exponent.
    pub fn contains_exponent(&self, v: &Exponent) -> bool {
        self.exps.iter().any(|e| e.divides(v))
    }

    /// The m-th power, by exponent sums.
    pub fn power(&self, m: u32) -> Result<MonomialIdeal> {
        if m == 0 {
            return Err(Error::InvalidArgument("ideal power needs m >= 1".into()));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let mut sums: Vec<Exponent> = vec![Exponent::zero(self.ring.arity())];
        for _ in 0..m {
            let mut next = Vec::with_capacity(sums.len() * self.exps.len());
            for s in &sums {
                for e in &self.exps {
                    next.push(s.add(e));
                }
            }
            sums = minimal_antichain(next);
        }
        Ok(MonomialIdeal { ring: Arc::clone(&self.ring), exps: sums })
    }

    /// Membership of an exponent vector in the Newton polyhedron.
    pub fn newton_member(&self, v: &Exponent) -> Result<bool> {
        Ok(self.polyhedron()?.contains(v))
    }

    pub fn polyhedron(&self) -> Result<NewtonPolyhedron> {
        NewtonPolyhedron::of(self)
    }

    /// The integral closure: minimal generators of the ideal of all
    /// monomials whose exponents lie in the Newton polyhedron.  The
    /// minimal generators all live in the box spanned by the componentwise
    /// maximum of the current generators, so only that box is searched.
    pub fn newton_closure(&self, guards: &Guards) -> Result<MonomialIdeal> {
        if self.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let arity = self.ring.arity();
        let mut bounds = vec![0u32; arity];
        for e in &self.exps {
            for (c, &x) in e.0.iter().enumerate() {
                bounds[c] = bounds[c].max(x);
            }
        }
        let mut points: u64 = 1;
        for &b in &bounds {
            points = points.saturating_mul(u64::from(b) + 1);
        }
        if points > guards.max_lattice_points as u64 {
            return Err(Error::GuardExceeded(format!(
                "closure search box has {points} lattice points; cap is {}",
                guards.max_lattice_points
            )));
        }
        let np = self.polyhedron()?;
        let mut members = Vec::new();
        let mut cursor = vec![0u32; arity];
        loop {
            let v = Exponent(cursor.clone());
            if np.contains(&v) {
                members.push(v);
            }
            let mut c = 0;
            while c < arity {
                cursor[c] += 1;
                if cursor[c] <= bounds[c] {
                    break;
                }
                cursor[c] = 0;
                c += 1;
            }
            if c == arity {
                break;
            }
        }
        Ok(MonomialIdeal::new(&self.ring, members))
    }

    /// Equality of integral closures: each generator of one ideal lies in
    /// the Newton polyhedron of the other.
    pub fn closure_equal(&self, other: &MonomialIdeal) -> Result<bool> {
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let np_self = self.polyhedron()?;
        let np_other = other.polyhedron()?;
        Ok(self.exps.iter().all(|e| np_other.contains(e))
            && other.exps.iter().all(|e| np_self.contains(e)))
    }

    /// Literal equality of the minimal generator antichains.
    pub fn same_generators(&self, other: &MonomialIdeal) -> bool {
        self.exps == other.exps
    }
}

/// The Newton polyhedron of a nonzero monomial ideal: the convex hull of
/// the generator exponents plus the nonnegative orthant.
#[derive(Clone, Debug)]
pub struct NewtonPolyhedron {
    arity: usize,
    vertices: Vec<Exponent>,
}

impl NewtonPolyhedron {
    pub fn of(ideal: &MonomialIdeal) -> Result<Self> {
        if ideal.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        Ok(NewtonPolyhedron {
            arity: ideal.ring().arity(),
            vertices: ideal.exponents().to_vec(),
        })
    }

    pub fn vertices(&self) -> &[Exponent] {
        &self.vertices
    }

    /// Exact membership: is there a convex combination of the vertices
    /// lying componentwise below `v`?
    pub fn contains(&self, v: &Exponent) -> bool {
        assert_eq!(v.len(), self.arity, "exponent arity mismatch");
        // fast path: some vertex already divides v
        if self.vertices.iter().any(|e| e.divides(v)) {
            return true;
        }
        // necessary condition: total degree reaches the smallest vertex
        // degree
        let min_deg = self.vertices.iter().map(|e| e.degree()).min().unwrap();
        if v.degree() < min_deg {
            return false;
        }
        let g = self.vertices.len();
        if g == 1 {
            return false; // dominance already failed
        }
        // substitute the last weight out of the convex combination and ask
        // Fourier-Motzkin whether the rest can be chosen feasibly
        let nvars = g - 1;
        let rat = |x: u32| BigRational::from_integer(BigInt::from(x));
        let last = &self.vertices[g - 1];
        let mut constraints: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
        for i in 0..nvars {
            let mut row = vec![BigRational::zero(); nvars];
            row[i] = -BigRational::from_integer(BigInt::from(1));
            constraints.push((row, BigRational::zero()));
        }
        constraints.push((
            vec![BigRational::from_integer(BigInt::from(1)); nvars],
            BigRational::from_integer(BigInt::from(1)),
        ));
        for c in 0..self.arity {
            let row: Vec<BigRational> = (0..nvars)
                .map(|i| rat(self.vertices[i].0[c]) - rat(last.0[c]))
                .collect();
            let rhs = rat(v.0[c]) - rat(last.0[c]);
            constraints.push((row, rhs));
        }
        fourier_motzkin_feasible(constraints, nvars)
    }
}

/// Decides feasibility of a system of inequalities `coeffs . x <= rhs` by
/// eliminating variables one at a time.
fn fourier_motzkin_feasible(
    mut constraints: Vec<(Vec<BigRational>, BigRational)>,
    nvars: usize,
) -> bool {
    for var in 0..nvars {
        let mut kept: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
        let mut uppers: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
        let mut lowers: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
        for (row, rhs) in constraints {
            if row[var].is_zero() {
                kept.push((row, rhs));
            } else if row[var].is_positive() {
                uppers.push((row, rhs));
            } else {
                lowers.push((row, rhs));
            }
        }
        for (urow, urhs) in &uppers {
            for (lrow, lrhs) in &lowers {
                // positive combination cancelling the variable
                let a = -lrow[var].clone(); // > 0
                let b = urow[var].clone(); // > 0
                let row: Vec<BigRational> = urow
                    .iter()
                    .zip(lrow)
                    .map(|(u, l)| u * &a + l * &b)
                    .collect();
                let rhs = urhs * &a + lrhs * &b;
                kept.push((row, rhs));
            }
        }
        constraints = Vec::new();
        for (row, rhs) in kept {
            if row.iter().all(|c| c.is_zero()) {
                if rhs.is_negative() {
                    return false;
                }
                continue;
            }
            // normalize by the first nonzero coefficient's absolute value
            // so duplicates collapse
            let scale = row.iter().find(|c| !c.is_zero()).unwrap().abs();
            let norm_row: Vec<BigRational> = row.iter().map(|c| c / &scale).collect();
            let norm_rhs = &rhs / &scale;
            if !constraints
                .iter()
                .any(|(r, s)| *r == norm_row && *s == norm_rhs)
            {
                constraints.push((norm_row, norm_rhs));
            }
        }
    }
    constraints.iter().all(|(_, rhs)| !rhs.is_negative())
}

/// What a certificate's coefficients must belong to.
#[derive(Clone, Debug)]
pub enum CertificateTarget {
    /// Coefficient `a_j` must lie in the j-th power of the ideal.
    Ideal(Ideal),
    /// Coefficient `a_j` must lie in the degree-`j*degree` symmetric
    /// power of the module.
    SymPowers { module: LinearModule, degree: u32 },
}

/// A monic equation `x^p + a_1 x^{p-1} + ... + a_p = 0` witnessing
/// integral dependence of `x` on the target.
#[derive(Clone, Debug)]
pub struct IntegralCertificate {
    subject: Polynomial,
    coefficients: Vec<Polynomial>,
    target: CertificateTarget,
}

/// Itemized verification outcome of a certificate.
#[derive(Clone, Debug)]
pub struct CertificateCheck {
    /// The monic relation evaluates to the zero polynomial.
    pub relation_holds: bool,
    /// The subject lives in the expected ambient piece (always true for
    /// ideal targets checked at construction).
    pub subject_ok: bool,
    /// One verdict per coefficient membership.
    pub memberships: Vec<bool>,
    pub pass: bool,
}

impl IntegralCertificate {
    pub fn new(
        subject: Polynomial,
        coefficients: Vec<Polynomial>,
        target: CertificateTarget,
    ) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::InvalidCertificate(
                "certificate needs degree p >= 1".into(),
            ));
        }
        let expected_ring = match &target {
            CertificateTarget::Ideal(i) => Arc::clone(i.ring()),
            CertificateTarget::SymPowers { module, .. } => Arc::clone(module.full_ring()),
        };
        if !PolyRing::same(subject.ring(), &expected_ring) {
            return Err(Error::RingMismatch(
                "certificate subject over a different ring".into(),
            ));
        }
        for a in &coefficients {
            if !PolyRing::same(a.ring(), &expected_ring) {
                return Err(Error::RingMismatch(
                    "certificate coefficient over a different ring".into(),
                ));
            }
        }
        Ok(IntegralCertificate { subject, coefficients, target })
    }

    pub fn subject(&self) -> &Polynomial {
        &self.subject
    }

    pub fn coefficients(&self) -> &[Polynomial] {
        &self.coefficients
    }

    pub fn target(&self) -> &CertificateTarget {
        &self.target
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len()
    }

    /// Checks the monic relation and every membership obligation.
    pub fn verify(&self, guards: &Guards) -> Result<CertificateCheck> {
        let p = self.coefficients.len();
        let mut relation = self.subject.pow(p as u32);
        for (idx, a) in self.coefficients.iter().enumerate() {
            let j = idx + 1;
            let term = a.try_mul(&self.subject.pow((p - j) as u32))?;
            relation = relation.try_add(&term)?;
        }
        let relation_holds = relation.is_zero();

        let mut subject_ok = true;
        let mut memberships = Vec::with_capacity(p);
        match &self.target {
            CertificateTarget::Ideal(ideal) => {
                if ideal.is_zero_ideal() {
                    return Err(Error::ZeroIdeal);
                }
                let gens = ideal.generators().len() as u64;
                for (idx, a) in self.coefficients.iter().enumerate() {
                    let j = (idx + 1) as u64;
                    if a.is_zero() {
                        memberships.push(true);
                        continue;
                    }
                    let count = binomial(gens + j - 1, j).map_err(|_| {
                        Error::GuardExceeded("ideal power generator count overflows".into())
                    })?;
                    if count > guards.max_products as u64 {
                        return Err(Error::GuardExceeded(format!(
                            "power {j} of the target ideal needs {count} generators; cap is {}",
                            guards.max_products
                        )));
                    }
                    let power = ideal.power(j as usize)?;
                    memberships.push(power.contains_poly(a)?);
                }
            }
            CertificateTarget::SymPowers { module, degree } => {
                subject_ok = homogeneous_ext_degree(&self.subject) == Some(u64::from(*degree));
                for (idx, a) in self.coefficients.iter().enumerate() {
                    let j = (idx + 1) as u32;
                    if a.is_zero() {
                        memberships.push(true);
                        continue;
                    }
                    let want = u64::from(j) * u64::from(*degree);
                    if homogeneous_ext_degree(a) != Some(want) {
                        memberships.push(false);
                        continue;
                    }
                    let piece = module.sym_power(j * degree, guards)?;
                    memberships.push(piece.contains_form(a)?);
                }
            }
        }
        let pass = relation_holds && subject_ok && memberships.iter().all(|&m| m);
        Ok(CertificateCheck { relation_holds, subject_ok, memberships, pass })
    }

    /// Lifts a verified certificate over the degree-`n` minors ideal of
    /// `module` to a graded certificate: the subject and coefficients are
    /// multiplied through by powers of the monomial `z`.
    pub fn lift(
        &self,
        z: &Polynomial,
        module: &LinearModule,
        n: u32,
        guards: &Guards,
    ) -> Result<IntegralCertificate> {
        let CertificateTarget::Ideal(declared) = &self.target else {
            return Err(Error::InvalidCertificate(
                "only an ideal-target certificate can be lifted".into(),
            ));
        };
        let full_ring = module.full_ring();
        if !PolyRing::same(z.ring(), full_ring) {
            return Err(Error::RingMismatch("monomial over a different ring".into()));
        }
        let recomputed = module.sym_minors_ideal(n, guards)?;
        if !declared.same_ideal(&recomputed)? {
            return Err(Error::InvalidCertificate(
                "target ideal is not the degree-n minors ideal of the module".into(),
            ));
        }
        let check = self.verify(guards)?;
        if !check.pass {
            return Err(Error::InvalidCertificate(
                "input certificate does not verify".into(),
            ));
        }
        let monomial_ok = z.terms().len() == 1 && {
            let (e, c) = z.leading_term().unwrap();
            let base_len = full_ring.base_len();
            c.is_one()
                && e.0[..base_len].iter().all(|&x| x == 0)
                && e.0[base_len..].iter().map(|&x| u64::from(x)).sum::<u64>() == u64::from(n)
        };
        if !monomial_ok {
            return Err(Error::InvalidArgument(format!(
                "lift needs a monic degree-{n} monomial in the module variables"
            )));
        }
        let subject = self.subject.promote_to(full_ring)?.try_mul(z)?;
        let mut coefficients = Vec::with_capacity(self.coefficients.len());
        for (idx, a) in self.coefficients.iter().enumerate() {
            let j = (idx + 1) as u32;
            coefficients.push(a.promote_to(full_ring)?.try_mul(&z.pow(j))?);
        }
        IntegralCertificate::new(
            subject,
            coefficients,
            CertificateTarget::SymPowers { module: module.clone(), degree: n },
        )
    }
}

/// The common total degree of every term in the module variables, if the
/// polynomial is homogeneous there; `None` for zero or mixed degrees.
fn homogeneous_ext_degree(p: &Polynomial) -> Option<u64> {
    let base_len = p.ring().base_len();
    let mut deg = None;
    for (e, _) in p.terms() {
        let d: u64 = e.0[base_len..].iter().map(|&x| u64::from(x)).sum();
        match deg {
            None => deg = Some(d),
            Some(prev) if prev != d => return None,
            _ => {}
        }
    }
    deg
}
