//! Groebner bases for submodules of free modules over a polynomial ring.
//!
//! Elements of `R^N` are vectors of polynomials; a module term is a pair
//! `(position, monomial)`.  Buchberger's algorithm runs on S-vectors of
//! elements whose leading terms share a position.  The chain criterion is
//! applied throughout; the product (coprimality) criterion is applied only
//! in rank one, where it is sound — for genuine modules it can discard
//! pairs whose S-vector does not reduce to zero.
//!
//! Bases returned by [`Submodule::groebner`] are reduced: monic, no leading
//! term divides another, all tails in normal form.  Such a basis is unique
//! for the module and order, which keeps reports reproducible.

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use itertools::Itertools;

use crate::coef::Coef;
use crate::error::{Error, Result};
use crate::poly::{minimal_antichain, Exponent, Polynomial};
use crate::ring::PolyRing;

/// Order on module terms `(position, monomial)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ModuleOrder {
    /// Compare positions first (lower index greater), monomials second.
    #[default]
    PositionOverTerm,
    /// Compare monomials first, positions (lower index greater) second.
    TermOverPosition,
}

/// An element of a free module `R^N`, stored as one polynomial per
/// coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModuleElement {
    ring: Arc<PolyRing>,
    comps: Vec<Polynomial>,
}

impl FreeModuleElement {
    pub fn new(ring: &Arc<PolyRing>, comps: Vec<Polynomial>) -> Result<Self> {
        for p in &comps {
            if !PolyRing::same(p.ring(), ring) {
                return Err(Error::RingMismatch(
                    "component over a different ring".into(),
                ));
            }
        }
        Ok(FreeModuleElement { ring: Arc::clone(ring), comps })
    }

    pub fn zero(ring: &Arc<PolyRing>, rank: usize) -> Self {
        FreeModuleElement {
            ring: Arc::clone(ring),
            comps: vec![Polynomial::zero(ring); rank],
        }
    }

    /// The standard basis vector `e_pos` scaled by `p`.
    pub fn scaled_unit(ring: &Arc<PolyRing>, rank: usize, pos: usize, p: Polynomial) -> Self {
        let mut comps = vec![Polynomial::zero(ring); rank];
        comps[pos] = p;
        FreeModuleElement { ring: Arc::clone(ring), comps }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &Polynomial {
        &self.comps[i]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, other: &FreeModuleElement) -> Result<FreeModuleElement> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), got: other.rank() });
        }
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<_>>()?;
        Ok(FreeModuleElement { ring: Arc::clone(&self.ring), comps })
    }

    pub fn sub(&self, other: &FreeModuleElement) -> Result<FreeModuleElement> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), got: other.rank() });
        }
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a.try_sub(b))
            .collect::<Result<_>>()?;
        Ok(FreeModuleElement { ring: Arc::clone(&self.ring), comps })
    }

    /// Multiplies every coordinate by the term `c * x^exp`.
    pub fn mul_term(&self, exp: &Exponent, c: &Coef) -> FreeModuleElement {
        FreeModuleElement {
            ring: Arc::clone(&self.ring),
            comps: self.comps.iter().map(|p| p.mul_term(exp, c)).collect(),
        }
    }

    pub fn scale_poly(&self, p: &Polynomial) -> FreeModuleElement {
        FreeModuleElement {
            ring: Arc::clone(&self.ring),
            comps: self
                .comps
                .iter()
                .map(|q| q.try_mul(p).expect("same ring"))
                .collect(),
        }
    }

    /// The leading module term under `morder`, or `None` for zero.
    pub fn leading(&self, morder: ModuleOrder) -> Option<(usize, &Exponent, &Coef)> {
        match morder {
            ModuleOrder::PositionOverTerm => self
                .comps
                .iter()
                .enumerate()
                .find(|(_, p)| !p.is_zero())
                .map(|(i, p)| {
                    let (e, c) = p.leading_term().unwrap();
                    (i, e, c)
                }),
            ModuleOrder::TermOverPosition => {
                let order = self.ring.order();
                let mut best: Option<(usize, &Exponent, &Coef)> = None;
                for (i, p) in self.comps.iter().enumerate() {
                    if let Some((e, c)) = p.leading_term() {
                        let better = match &best {
                            None => true,
                            Some((_, be, _)) => {
                                order.cmp_exponents(&e.0, &be.0) == std::cmp::Ordering::Greater
                            }
                        };
                        if better {
                            best = Some((i, e, c));
                        }
                    }
                }
                best
            }
        }
    }

    pub fn make_monic(&self, morder: ModuleOrder) -> FreeModuleElement {
        match self.leading(morder) {
            None => self.clone(),
            Some((_, _, c)) => {
                let inv = self.ring.coef().inv(c).expect("nonzero lead");
                self.mul_term(&Exponent::zero(self.ring.arity()), &inv)
            }
        }
    }

    /// Full normal form against `basis`: the remainder contains no term
    /// divisible by any basis leading term.  For a Groebner basis the
    /// result is independent of reducer choice.
    pub fn normal_form(
        &self,
        basis: &[FreeModuleElement],
        morder: ModuleOrder,
    ) -> FreeModuleElement {
        let field = self.ring.coef().clone();
        let leads: Vec<(usize, Exponent, Coef)> = basis
            .iter()
            .filter_map(|b| {
                b.leading(morder)
                    .map(|(p, e, c)| (p, e.clone(), c.clone()))
            })
            .collect();
        let mut work = self.clone();
        let mut rem_terms: Vec<Vec<(Exponent, Coef)>> = vec![Vec::new(); self.rank()];
        'outer: while let Some((pos, exp, coef)) = work
            .leading(morder)
            .map(|(p, e, c)| (p, e.clone(), c.clone()))
        {
            for (k, (bpos, bexp, bcoef)) in leads.iter().enumerate() {
                if *bpos == pos && bexp.divides(&exp) {
                    let q = field.div(&coef, bcoef).expect("nonzero lead");
                    let shift = exp.sub(bexp);
                    work = work
                        .sub(&basis[k].mul_term(&shift, &q))
                        .expect("same rank");
                    continue 'outer;
                }
            }
            // irreducible leading term: move it into the remainder
            rem_terms[pos].push((exp.clone(), coef.clone()));
            let t = FreeModuleElement::scaled_unit(
                &self.ring,
                self.rank(),
                pos,
                Polynomial::monomial(&self.ring, exp, coef),
            );
            work = work.sub(&t).expect("same rank");
        }
        let comps = rem_terms
            .into_iter()
            .map(|ts| Polynomial::from_terms(&self.ring, ts))
            .collect();
        FreeModuleElement { ring: Arc::clone(&self.ring), comps }
    }
}

fn cmp_module_terms(
    morder: ModuleOrder,
    ring: &PolyRing,
    a: (usize, &Exponent),
    b: (usize, &Exponent),
) -> std::cmp::Ordering {
    let order = ring.order();
    match morder {
        ModuleOrder::PositionOverTerm => b
            .0
            .cmp(&a.0)
            .then_with(|| order.cmp_exponents(&a.1 .0, &b.1 .0)),
        ModuleOrder::TermOverPosition => order
            .cmp_exponents(&a.1 .0, &b.1 .0)
            .then_with(|| b.0.cmp(&a.0)),
    }
}

/// Buchberger's algorithm.  Generators are made monic up front; S-vectors
/// are formed only for leading terms in the same position.
fn buchberger(
    ring: &Arc<PolyRing>,
    rank: usize,
    gens: &[FreeModuleElement],
    morder: ModuleOrder,
) -> Vec<FreeModuleElement> {
    let mut basis: Vec<FreeModuleElement> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            let m = g.make_monic(morder);
            if !basis.contains(&m) {
                basis.push(m);
            }
        }
    }
    let lead_of = |f: &FreeModuleElement| -> (usize, Exponent) {
        let (p, e, _) = f.leading(morder).expect("basis elements are nonzero");
        (p, e.clone())
    };

    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            if lead_of(&basis[i]).0 == lead_of(&basis[j]).0 {
                pending.insert((i, j));
            }
        }
    }

    while !pending.is_empty() {
        // normal selection: smallest lcm degree, ties by lcm then indices
        let &(i, j) = pending
            .iter()
            .min_by(|&&(a, b), &&(c, d)| {
                let lab = lead_of(&basis[a]).1.lcm(&lead_of(&basis[b]).1);
                let lcd = lead_of(&basis[c]).1.lcm(&lead_of(&basis[d]).1);
                lab.degree()
                    .cmp(&lcd.degree())
                    .then_with(|| ring.order().cmp_exponents(&lab.0, &lcd.0))
                    .then_with(|| (a, b).cmp(&(c, d)))
            })
            .expect("nonempty");
        pending.remove(&(i, j));

        let (pos_i, exp_i) = lead_of(&basis[i]);
        let (_, exp_j) = lead_of(&basis[j]);
        let lcm = exp_i.lcm(&exp_j);

        // product criterion: only sound in rank one
        if rank == 1 && lcm == exp_i.add(&exp_j) {
            continue;
        }
        // chain criterion: some k divides the lcm and both mixed pairs are
        // already treated
        let chain = (0..basis.len()).any(|k| {
            if k == i || k == j {
                return false;
            }
            let (pos_k, exp_k) = lead_of(&basis[k]);
            pos_k == pos_i
                && exp_k.divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }

        let one = ring.coef().one();
        let s = basis[i]
            .mul_term(&lcm.sub(&exp_i), &one)
            .sub(&basis[j].mul_term(&lcm.sub(&exp_j), &one))
            .expect("same rank");
        let nf = s.normal_form(&basis, morder);
        if !nf.is_zero() {
            let new = nf.make_monic(morder);
            let new_pos = lead_of(&new).0;
            basis.push(new);
            let t = basis.len() - 1;
            for k in 0..t {
                if lead_of(&basis[k]).0 == new_pos {
                    pending.insert((k, t));
                }
            }
        }
    }
    reduce_basis(basis, morder)
}

/// Interreduction: drop redundant leading terms, reduce all tails, sort.
fn reduce_basis(
    mut basis: Vec<FreeModuleElement>,
    morder: ModuleOrder,
) -> Vec<FreeModuleElement> {
    basis.retain(|f| !f.is_zero());
    if basis.is_empty() {
        return basis;
    }
    let ring = Arc::clone(basis[0].ring());
    // minimal generating set of the leading-term module
    let leads: Vec<(usize, Exponent)> = basis
        .iter()
        .map(|f| {
            let (p, e, _) = f.leading(morder).unwrap();
            (p, e.clone())
        })
        .collect();
    let mut keep: Vec<bool> = vec![true; basis.len()];
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if i == j || !keep[i] || !keep[j] {
                continue;
            }
            if leads[j].0 == leads[i].0 && leads[j].1.divides(&leads[i].1) {
                // on equal leading terms, keep the earlier element
                if leads[j].1 != leads[i].1 || j < i {
                    keep[i] = false;
                }
            }
        }
    }
    let minimal: Vec<FreeModuleElement> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(f, k)| k.then_some(f))
        .collect();
    // tail reduction: leading terms are untouchable, so one pass suffices
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<FreeModuleElement> = minimal
            .iter()
            .enumerate()
            .filter_map(|(j, f)| (j != i).then(|| f.clone()))
            .collect();
        reduced.push(minimal[i].normal_form(&others, morder).make_monic(morder));
    }
    reduced.sort_by(|a, b| {
        let (pa, ea, _) = a.leading(morder).unwrap();
        let (pb, eb, _) = b.leading(morder).unwrap();
        cmp_module_terms(morder, &ring, (pb, eb), (pa, ea))
    });
    reduced
}

/// A finitely generated submodule of `R^rank` with a lazily computed
/// reduced Groebner basis.
#[derive(Clone, Debug)]
pub struct Submodule {
    ring: Arc<PolyRing>,
    rank: usize,
    gens: Vec<FreeModuleElement>,
    morder: ModuleOrder,
    gb: OnceLock<Vec<FreeModuleElement>>,
}

impl Submodule {
    pub fn new(ring: &Arc<PolyRing>, rank: usize, gens: Vec<FreeModuleElement>) -> Result<Self> {
        Submodule::with_order(ring, rank, gens, ModuleOrder::default())
    }

    pub fn with_order(
        ring: &Arc<PolyRing>,
        rank: usize,
        gens: Vec<FreeModuleElement>,
        morder: ModuleOrder,
    ) -> Result<Self> {
        let mut kept: Vec<FreeModuleElement> = Vec::new();
        for g in gens {
            if g.rank() != rank {
                return Err(Error::RankMismatch { expected: rank, got: g.rank() });
            }
            if !PolyRing::same(g.ring(), ring) {
                return Err(Error::RingMismatch(
                    "generator over a different ring".into(),
                ));
            }
            // zero and repeated generators add nothing
            if !g.is_zero() && !kept.contains(&g) {
                kept.push(g);
            }
        }
        Ok(Submodule {
            ring: Arc::clone(ring),
            rank,
            gens: kept,
            morder,
            gb: OnceLock::new(),
        })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[FreeModuleElement] {
        &self.gens
    }

    pub fn order(&self) -> ModuleOrder {
        self.morder
    }

    pub fn is_zero_module(&self) -> bool {
        self.gens.is_empty()
    }

    /// The reduced Groebner basis, computed once.
    pub fn groebner(&self) -> &[FreeModuleElement] {
        self.gb
            .get_or_init(|| buchberger(&self.ring, self.rank, &self.gens, self.morder))
    }

    pub fn contains(&self, e: &FreeModuleElement) -> Result<bool> {
        if e.rank() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, got: e.rank() });
        }
        if !PolyRing::same(e.ring(), &self.ring) {
            return Err(Error::RingMismatch("element over a different ring".into()));
        }
        Ok(e.normal_form(self.groebner(), self.morder).is_zero())
    }

    pub fn contains_all(&self, other: &Submodule) -> Result<bool> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_module(&self, other: &Submodule) -> Result<bool> {
        Ok(self.contains_all(other)? && other.contains_all(self)?)
    }

    /// Dimension of `R^rank / self` as a vector space, `None` if infinite.
    /// Counts standard module monomials position by position.
    pub fn quotient_dim(&self) -> Option<u64> {
        let arity = self.ring.arity();
        let gb = self.groebner();
        let mut total: u64 = 0;
        for pos in 0..self.rank {
            let lms: Vec<&Exponent> = gb
                .iter()
                .filter_map(|f| {
                    let (p, e, _) = f.leading(self.morder)?;
                    (p == pos).then_some(e)
                })
                .collect();
            // each variable needs a pure-power leading monomial at this
            // position, else the quotient already has infinite dimension
            let mut bounds = vec![0u32; arity];
            for v in 0..arity {
                let bound = lms
                    .iter()
                    .filter(|e| {
                        e.0.iter()
                            .enumerate()
                            .all(|(w, &x)| w == v || x == 0)
                    })
                    .map(|e| e.0[v])
                    .min()?;
                bounds[v] = bound;
            }
            // a zero bound means a constant leads at this position, so
            // nothing survives there
            if bounds.iter().any(|&b| b == 0) {
                continue;
            }
            // walk the finite box and keep exponents no leading monomial
            // divides
            let mut cursor = vec![0u32; arity];
            loop {
                let exp = Exponent(cursor.clone());
                if !lms.iter().any(|lm| lm.divides(&exp)) {
                    total += 1;
                }
                let mut v = 0;
                while v < arity {
                    cursor[v] += 1;
                    if cursor[v] < bounds[v] {
                        break;
                    }
                    cursor[v] = 0;
                    v += 1;
                }
                if v == arity {
                    break;
                }
            }
        }
        Some(total)
    }
}

/// Every exponent vector of total degree `d` over `arity` variables,
/// in a fixed deterministic order.
pub fn monomials_of_degree(arity: usize, d: u32) -> Vec<Exponent> {
    fn rec(arity: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        if prefix.len() + 1 == arity {
            prefix.push(d);
            out.push(Exponent(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(arity, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if arity == 0 {
        if d == 0 {
            out.push(Exponent(Vec::new()));
        }
        return out;
    }
    rec(arity, d, &mut Vec::new(), &mut out);
    out
}

/// Result of the m-primary test for an ideal in `k[x_1..x_s]`.
#[derive(Clone, Debug)]
pub struct MPrimaryReport {
    pub primary: bool,
    /// Least `t` with every degree-`t` monomial in the ideal, when primary.
    pub t: Option<u32>,
    /// Vector-space dimension of `R/I`, when finite.
    pub quotient_dim: Option<u64>,
}

/// An ideal, i.e. a rank-one submodule, with ideal-specific operations.
#[derive(Clone, Debug)]
pub struct Ideal(Submodule);

impl Ideal {
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Result<Self> {
        let elems = gens
            .into_iter()
            .map(|p| FreeModuleElement::new(ring, vec![p]))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal(Submodule::new(ring, 1, elems)?))
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Ideal(Submodule::new(ring, 1, Vec::new()).unwrap())
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Self {
        Ideal::new(ring, vec![Polynomial::one(ring)]).unwrap()
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.0.ring()
    }

    pub fn as_submodule(&self) -> &Submodule {
        &self.0
    }

    pub fn generators(&self) -> Vec<&Polynomial> {
        self.0.generators().iter().map(|g| g.component(0)).collect()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.0.is_zero_module()
    }

    /// True when the reduced basis is `{1}`.
    pub fn is_unit_ideal(&self) -> bool {
        let gb = self.0.groebner();
        gb.len() == 1 && gb[0].component(0).is_constant() && !gb[0].component(0).is_zero()
    }

    pub fn groebner_polys(&self) -> Vec<&Polynomial> {
        self.0.groebner().iter().map(|g| g.component(0)).collect()
    }

    pub fn contains_poly(&self, p: &Polynomial) -> Result<bool> {
        self.0
            .contains(&FreeModuleElement::new(self.ring(), vec![p.clone()])?)
    }

    pub fn same_ideal(&self, other: &Ideal) -> Result<bool> {
        self.0.same_module(&other.0)
    }

    /// Exponents of the generators when every generator is a single term;
    /// `None` as soon as one generator has two or more terms.
    pub fn monomial_exponents(&self) -> Option<Vec<Exponent>> {
        let mut exps = Vec::with_capacity(self.0.gens.len());
        for g in &self.0.gens {
            let p = g.component(0);
            if p.terms().len() != 1 {
                return None;
            }
            exps.push(p.terms()[0].0.clone());
        }
        Some(exps)
    }

    /// `I^m` generated by all m-fold products of generators.  When the
    /// ideal is monomial the generator list is minimalized.
    pub fn power(&self, m: usize) -> Result<Ideal> {
        if m == 0 {
            return Err(Error::InvalidArgument("ideal power needs m >= 1".into()));
        }
        if self.is_zero_ideal() {
            return Ok(Ideal::zero(self.ring()));
        }
        if let Some(exps) = self.monomial_exponents() {
            // exponent sums suffice; products of coefficients only rescale
            let mut sums: Vec<Exponent> = Vec::new();
            for combo in (0..exps.len()).combinations_with_replacement(m) {
                let mut acc = Exponent::zero(self.ring().arity());
                for idx in combo {
                    acc = acc.add(&exps[idx]);
                }
                sums.push(acc);
            }
            let minimal = minimal_antichain(sums);
            let polys = minimal
                .into_iter()
                .map(|e| Polynomial::monomial(self.ring(), e, self.ring().coef().one()))
                .collect();
            return Ideal::new(self.ring(), polys);
        }
        let gens: Vec<&Polynomial> = self.generators();
        let mut products = Vec::new();
        for combo in (0..gens.len()).combinations_with_replacement(m) {
            let mut acc = Polynomial::one(self.ring());
            for idx in combo {
                acc = acc.try_mul(gens[idx])?;
            }
            products.push(acc);
        }
        Ideal::new(self.ring(), products)
    }

    /// Decides whether the ideal is primary for the maximal ideal
    /// `(x_1..x_s)`, via the dimension of `R/I` and pure-power membership.
    /// Also reports the least `t` with `m^t` contained in the ideal.
    ///
    /// Preconditions: every generator has zero constant term (otherwise the
    /// ideal leaves the maximal ideal) and the ideal is proper.
    pub fn m_primary(&self) -> Result<MPrimaryReport> {
        for g in self.generators() {
            if !g.constant_term().is_zero() {
                return Err(Error::NotInMaximalIdeal);
            }
        }
        if self.is_unit_ideal() {
            return Err(Error::UnitIdeal);
        }
        let dim = match self.0.quotient_dim() {
            None => {
                return Ok(MPrimaryReport { primary: false, t: None, quotient_dim: None })
            }
            Some(d) => d,
        };
        let arity = self.ring().arity();
        for v in 0..arity {
            let pure = Polynomial::monomial(
                self.ring(),
                Exponent::of_var(arity, v, dim as u32),
                self.ring().coef().one(),
            );
            if !self.contains_poly(&pure)? {
                return Ok(MPrimaryReport {
                    primary: false,
                    t: None,
                    quotient_dim: Some(dim),
                });
            }
        }
        let mut t = None;
        for cand in 1..=dim as u32 {
            let all_in = monomials_of_degree(arity, cand).into_iter().try_fold(
                true,
                |acc, e| -> Result<bool> {
                    Ok(acc
                        && self.contains_poly(&Polynomial::monomial(
                            self.ring(),
                            e,
                            self.ring().coef().one(),
                        ))?)
                },
            )?;
            if all_in {
                t = Some(cand);
                break;
            }
        }
        debug_assert!(t.is_some(), "an m-primary ideal absorbs m^dim");
        Ok(MPrimaryReport { primary: true, t, quotient_dim: Some(dim) })
    }
}
