//! Submodules of free modules presented by linear forms, their symmetric
//! powers, maximal-minors ideals, and basis normalization.
//!
//! A module `M` inside `F = R^r` is given by generators that are linear
//! forms in the module variables `T_1..T_r` with coefficients in the base
//! ring, equivalently an `r x d` coefficient matrix.  Degree-`n` pieces of
//! the subalgebra generated by `M` live inside the free module on the
//! degree-`n` monomials in the `T`s; everything here moves between the
//! form picture and the coordinate picture.

use std::collections::BTreeMap;
use std::sync::Arc;

use itertools::Itertools;

use crate::binomial;
use crate::coef::{Coef, CoefField};
use crate::det::maximal_minors;
use crate::error::{Error, Result};
use crate::gb::{monomials_of_degree, FreeModuleElement, Ideal, Submodule};
use crate::poly::{Exponent, Polynomial};
use crate::ring::PolyRing;
use crate::Guards;

/// True when every term of `p` has total degree at least `j`, i.e. the
/// polynomial lies in the `j`-th power of the maximal ideal generated by
/// all the variables.
pub fn lies_in_max_ideal_power(p: &Polynomial, j: u32) -> bool {
    p.terms().iter().all(|(e, _)| e.degree() >= u64::from(j))
}

/// The monomial basis of the degree-`n` piece of a polynomial algebra in
/// `rank` variables, ordered lexicographically descending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPowerBasis {
    rank: usize,
    degree: u32,
    exps: Vec<Exponent>,
}

impl SymPowerBasis {
    pub fn new(rank: usize, degree: u32) -> Self {
        SymPowerBasis { rank, degree, exps: monomials_of_degree(rank, degree) }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponents(&self) -> &[Exponent] {
        &self.exps
    }

    pub fn index_of(&self, ext: &[u32]) -> Option<usize> {
        self.exps.iter().position(|e| e.0 == ext)
    }

    /// The basis monomial as a polynomial in the full ring.
    pub fn monomial(&self, full_ring: &Arc<PolyRing>, i: usize) -> Polynomial {
        let mut exp = vec![0u32; full_ring.arity()];
        let base_len = full_ring.base_len();
        for (v, &e) in self.exps[i].0.iter().enumerate() {
            exp[base_len + v] = e;
        }
        Polynomial::monomial(full_ring, Exponent(exp), full_ring.coef().one())
    }
}

/// Splits a full-ring polynomial into base-ring coefficients keyed by the
/// exponent of the module variables, in a deterministic key order.
fn split_by_ext(base_ring: &Arc<PolyRing>, p: &Polynomial) -> Vec<(Vec<u32>, Polynomial)> {
    let base_len = p.ring().base_len();
    let mut buckets: BTreeMap<Vec<u32>, Vec<(Exponent, Coef)>> = BTreeMap::new();
    for (e, c) in p.terms() {
        let ext: Vec<u32> = e.0[base_len..].to_vec();
        let base = Exponent(e.0[..base_len].to_vec());
        buckets.entry(ext).or_default().push((base, c.clone()));
    }
    buckets
        .into_iter()
        .map(|(ext, terms)| (ext, Polynomial::from_terms(base_ring, terms)))
        .collect()
}

/// Coordinates of a form that is homogeneous of the basis degree in the
/// module variables.  The zero polynomial maps to the zero vector.
pub fn form_coordinates(
    base_ring: &Arc<PolyRing>,
    basis: &SymPowerBasis,
    p: &Polynomial,
) -> Result<Vec<Polynomial>> {
    let mut coords = vec![Polynomial::zero(base_ring); basis.len()];
    for (ext, coeff) in split_by_ext(base_ring, p) {
        let idx = basis.index_of(&ext).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "form is not homogeneous of degree {} in the module variables",
                basis.degree()
            ))
        })?;
        coords[idx] = coords[idx].try_add(&coeff)?;
    }
    Ok(coords)
}

/// How a graded piece arose.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PieceKind {
    SymPower,
    GradedProduct,
}

/// A finitely generated submodule of the degree-`n` piece of the free
/// symmetric algebra, in coordinates over [`SymPowerBasis`].
#[derive(Clone, Debug)]
pub struct GradedPiece {
    full_ring: Arc<PolyRing>,
    base_ring: Arc<PolyRing>,
    degree: u32,
    kind: PieceKind,
    basis: SymPowerBasis,
    module: Submodule,
}

impl GradedPiece {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn kind(&self) -> PieceKind {
        self.kind
    }

    pub fn basis(&self) -> &SymPowerBasis {
        &self.basis
    }

    pub fn module(&self) -> &Submodule {
        &self.module
    }

    /// The generators reassembled as forms in the full ring.
    pub fn generator_forms(&self) -> Vec<Polynomial> {
        self.module
            .generators()
            .iter()
            .map(|g| self.element_to_form(g))
            .collect()
    }

    fn element_to_form(&self, e: &FreeModuleElement) -> Polynomial {
        let mut acc = Polynomial::zero(&self.full_ring);
        let base_len = self.full_ring.base_len();
        for (i, coord) in e.components().iter().enumerate() {
            if coord.is_zero() {
                continue;
            }
            let mut ext = vec![0u32; self.full_ring.arity()];
            for (v, &x) in self.basis.exponents()[i].0.iter().enumerate() {
                ext[base_len + v] = x;
            }
            let lifted = coord
                .promote_to(&self.full_ring)
                .expect("base embeds in full ring")
                .mul_term(&Exponent(ext), &self.full_ring.coef().one());
            acc = acc.try_add(&lifted).expect("same ring");
        }
        acc
    }

    /// Membership of a form given in the full ring.
    pub fn contains_form(&self, p: &Polynomial) -> Result<bool> {
        if !PolyRing::same(p.ring(), &self.full_ring) {
            return Err(Error::RingMismatch("form over a different ring".into()));
        }
        let coords = form_coordinates(&self.base_ring, &self.basis, p)?;
        let elem = FreeModuleElement::new(&self.base_ring, coords)?;
        self.module.contains(&elem)
    }
}

/// Verdicts for one minor-times-monomial membership in the det-adj check.
#[derive(Clone, Debug)]
pub struct DetAdjEntry {
    pub minor: Polynomial,
    pub monomial: Polynomial,
    pub holds: bool,
}

/// Outcome of the det-adj containment check in degree `n`.
#[derive(Clone, Debug)]
pub struct DetAdjReport {
    pub degree: u32,
    pub ideal_is_zero: bool,
    pub entries: Vec<DetAdjEntry>,
    pub pass: bool,
}

/// Outcome of basis normalization.
#[derive(Clone, Debug)]
pub struct BasisNormalization {
    /// Rows express the new basis vectors in the original coordinates.
    pub new_basis: Vec<Vec<Coef>>,
    /// The functional cutting out the surviving residue direction.
    pub functional: Vec<Coef>,
    /// Index of the original basis vector whose residue survives.
    pub residue_index: usize,
    /// The original generators rewritten in the new coordinates.
    pub transformed: LinearModule,
    /// The enlarged module, in the original coordinates, whose quotient is
    /// the residue field.
    pub enlarged: LinearModule,
    /// Verified: every first-row entry of the transformed matrix has zero
    /// constant term.
    pub first_row_in_max_ideal: bool,
    /// Verified: the enlarged module has a one-dimensional quotient.
    pub enlarged_residue_dim: u64,
}

/// Verdicts for the leading-coordinate membership check.
#[derive(Clone, Debug)]
pub struct CoefficientCheck {
    pub n: u32,
    pub k: u32,
    /// The extracted coefficient for each generator of the graded product.
    pub coefficients: Vec<Polynomial>,
    pub verdicts: Vec<bool>,
    pub pass: bool,
}

/// A submodule of `F = R^r` presented by linear forms in the module
/// variables.
#[derive(Clone, Debug)]
pub struct LinearModule {
    full_ring: Arc<PolyRing>,
    base_ring: Arc<PolyRing>,
    rank: usize,
    labels: Vec<String>,
    gens: Vec<Polynomial>,
    /// `rank x d`; entry `(i, j)` is the coefficient of the i-th module
    /// variable in generator `j`.
    matrix: Vec<Vec<Polynomial>>,
}

impl LinearModule {
    /// Builds the module from generators written in the full ring.  Each
    /// generator must be linear in the module variables; zero generators
    /// are dropped.
    pub fn from_generators(full_ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Result<Self> {
        let rank = full_ring.ext_len();
        if rank == 0 {
            return Err(Error::InvalidArgument(
                "ring has no module variables".into(),
            ));
        }
        let base_ring = full_ring.base_ring();
        let kept: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        if kept.is_empty() {
            return Err(Error::InvalidArgument(
                "module needs at least one nonzero generator".into(),
            ));
        }
        let mut matrix = vec![vec![Polynomial::zero(&base_ring); kept.len()]; rank];
        for (j, g) in kept.iter().enumerate() {
            if !PolyRing::same(g.ring(), full_ring) {
                return Err(Error::RingMismatch("generator over a different ring".into()));
            }
            for (ext, coeff) in split_by_ext(&base_ring, g) {
                let deg: u32 = ext.iter().sum();
                if deg != 1 {
                    return Err(Error::InvalidArgument(format!(
                        "generator is not linear in the module variables: {g}"
                    )));
                }
                let i = ext.iter().position(|&e| e == 1).expect("degree one");
                matrix[i][j] = coeff;
            }
        }
        let labels = (1..=kept.len()).map(|j| format!("L{j}")).collect();
        Ok(LinearModule {
            full_ring: Arc::clone(full_ring),
            base_ring,
            rank,
            labels,
            gens: kept,
            matrix,
        })
    }

    /// Builds the module from its coefficient matrix over the base ring.
    pub fn from_matrix(full_ring: &Arc<PolyRing>, matrix: Vec<Vec<Polynomial>>) -> Result<Self> {
        let rank = full_ring.ext_len();
        if rank == 0 || matrix.len() != rank {
            return Err(Error::RankMismatch { expected: rank, got: matrix.len() });
        }
        let base_ring = full_ring.base_ring();
        let d = matrix.first().map_or(0, |row| row.len());
        if d == 0 || matrix.iter().any(|row| row.len() != d) {
            return Err(Error::InvalidArgument(
                "matrix needs at least one column and equal row lengths".into(),
            ));
        }
        for row in &matrix {
            for p in row {
                if !PolyRing::same(p.ring(), &base_ring) {
                    return Err(Error::RingMismatch(
                        "matrix entry outside the base ring".into(),
                    ));
                }
            }
        }
        let base_len = full_ring.base_len();
        let one = full_ring.coef().one();
        let mut gens = Vec::with_capacity(d);
        for j in 0..d {
            let mut g = Polynomial::zero(full_ring);
            for i in 0..rank {
                if matrix[i][j].is_zero() {
                    continue;
                }
                let term = matrix[i][j]
                    .promote_to(full_ring)
                    .expect("base embeds in full ring")
                    .mul_term(&Exponent::of_var(full_ring.arity(), base_len + i, 1), &one);
                g = g.try_add(&term)?;
            }
            gens.push(g);
        }
        if gens.iter().any(|g| g.is_zero()) {
            return Err(Error::InvalidArgument("matrix has a zero column".into()));
        }
        let labels = (1..=d).map(|j| format!("L{j}")).collect();
        Ok(LinearModule {
            full_ring: Arc::clone(full_ring),
            base_ring,
            rank,
            labels,
            gens,
            matrix,
        })
    }

    pub fn full_ring(&self) -> &Arc<PolyRing> {
        &self.full_ring
    }

    pub fn base_ring(&self) -> &Arc<PolyRing> {
        &self.base_ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generator_count(&self) -> usize {
        self.gens.len()
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn matrix(&self) -> &[Vec<Polynomial>] {
        &self.matrix
    }

    /// Same ambient ring and identical coefficient matrix: the two
    /// values present the same module the same way.
    pub fn same_presentation(&self, other: &LinearModule) -> bool {
        PolyRing::same(&self.full_ring, &other.full_ring) && self.matrix == other.matrix
    }

    /// Raw coefficient columns of all degree-`n` generator products, one
    /// column per multiset, in multiset enumeration order; no
    /// deduplication.
    fn raw_product_columns(
        &self,
        n: u32,
        guards: &Guards,
    ) -> Result<(SymPowerBasis, Vec<Vec<Polynomial>>)> {
        let d = self.gens.len() as u64;
        let count = binomial(d + u64::from(n) - 1, u64::from(n))
            .map_err(|_| Error::GuardExceeded("generator product count overflows".into()))?;
        let rows = binomial(u64::from(n) + self.rank as u64 - 1, self.rank as u64 - 1)
            .map_err(|_| Error::GuardExceeded("basis size overflows".into()))?;
        if count > guards.max_products as u64 || rows > guards.max_products as u64 {
            return Err(Error::GuardExceeded(format!(
                "degree {n} needs {count} generator products over a basis of {rows}; cap is {}",
                guards.max_products
            )));
        }
        let basis = SymPowerBasis::new(self.rank, n);
        let mut cols = Vec::with_capacity(count as usize);
        for combo in (0..self.gens.len()).combinations_with_replacement(n as usize) {
            let mut prod = Polynomial::one(&self.full_ring);
            for idx in combo {
                prod = prod.try_mul(&self.gens[idx])?;
            }
            cols.push(form_coordinates(&self.base_ring, &basis, &prod)?);
        }
        Ok((basis, cols))
    }

    /// The degree-`n` symmetric power of the module, inside the degree-`n`
    /// piece of the free symmetric algebra.
    pub fn sym_power(&self, n: u32, guards: &Guards) -> Result<GradedPiece> {
        if n == 0 {
            return Err(Error::InvalidArgument("symmetric power needs n >= 1".into()));
        }
        let (basis, cols) = self.raw_product_columns(n, guards)?;
        self.piece_from_columns(basis, cols, PieceKind::SymPower)
    }

    /// The submodule generated by all products (degree-`a` generator
    /// product) x (degree-`b` monomial in the module variables).  With
    /// `a = 0` this is the whole degree-`b` piece of the free algebra.
    pub fn graded_product(&self, a: u32, b: u32, guards: &Guards) -> Result<GradedPiece> {
        if a + b == 0 {
            return Err(Error::InvalidArgument("graded product needs a + b >= 1".into()));
        }
        let d = self.gens.len() as u64;
        let prod_count = if a == 0 {
            1
        } else {
            binomial(d + u64::from(a) - 1, u64::from(a))
                .map_err(|_| Error::GuardExceeded("generator product count overflows".into()))?
        };
        let mono_count = binomial(u64::from(b) + self.rank as u64 - 1, self.rank as u64 - 1)
            .map_err(|_| Error::GuardExceeded("basis size overflows".into()))?;
        let total = prod_count.saturating_mul(mono_count);
        if total > guards.max_products as u64 {
            return Err(Error::GuardExceeded(format!(
                "graded product needs {total} generators; cap is {}",
                guards.max_products
            )));
        }
        let basis = SymPowerBasis::new(self.rank, a + b);
        let monomials = monomials_of_degree(self.rank, b);
        let mut products: Vec<Polynomial> = Vec::new();
        if a == 0 {
            products.push(Polynomial::one(&self.full_ring));
        } else {
            for combo in (0..self.gens.len()).combinations_with_replacement(a as usize) {
                let mut prod = Polynomial::one(&self.full_ring);
                for idx in combo {
                    prod = prod.try_mul(&self.gens[idx])?;
                }
                products.push(prod);
            }
        }
        let base_len = self.full_ring.base_len();
        let one = self.full_ring.coef().one();
        let mut cols = Vec::new();
        for prod in &products {
            for mono in &monomials {
                let mut ext = vec![0u32; self.full_ring.arity()];
                for (v, &e) in mono.0.iter().enumerate() {
                    ext[base_len + v] = e;
                }
                let form = prod.mul_term(&Exponent(ext), &one);
                cols.push(form_coordinates(&self.base_ring, &basis, &form)?);
            }
        }
        self.piece_from_columns(basis, cols, PieceKind::GradedProduct)
    }

    fn piece_from_columns(
        &self,
        basis: SymPowerBasis,
        cols: Vec<Vec<Polynomial>>,
        kind: PieceKind,
    ) -> Result<GradedPiece> {
        let deduped = dedup_scalar_columns(&self.base_ring, cols);
        let elems = deduped
            .into_iter()
            .map(|c| FreeModuleElement::new(&self.base_ring, c))
            .collect::<Result<Vec<_>>>()?;
        let module = Submodule::new(&self.base_ring, basis.len(), elems)?;
        Ok(GradedPiece {
            full_ring: Arc::clone(&self.full_ring),
            base_ring: Arc::clone(&self.base_ring),
            degree: basis.degree(),
            kind,
            basis,
            module,
        })
    }

    /// The ideal of maximal minors of the coefficient matrix: size-`r`
    /// minors when there are at least `r` generators, the zero ideal
    /// otherwise.
    pub fn minors_ideal(&self, guards: &Guards) -> Result<Ideal> {
        minors_of_matrix(&self.base_ring, &self.matrix, guards)
    }

    /// The ideal of maximal minors of the degree-`n` product matrix.
    pub fn sym_minors_ideal(&self, n: u32, guards: &Guards) -> Result<Ideal> {
        if n == 0 {
            return Err(Error::InvalidArgument("symmetric power needs n >= 1".into()));
        }
        let (basis, cols) = self.raw_product_columns(n, guards)?;
        let rows = basis.len();
        let mat: Vec<Vec<Polynomial>> = (0..rows)
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect();
        minors_of_matrix(&self.base_ring, &mat, guards)
    }

    /// Verifies that every generator of the degree-`n` minors ideal
    /// multiplies every degree-`n` basis monomial into the symmetric
    /// power.
    pub fn check_detadj(&self, n: u32, guards: &Guards) -> Result<DetAdjReport> {
        let ideal = self.sym_minors_ideal(n, guards)?;
        let piece = self.sym_power(n, guards)?;
        let mut entries = Vec::new();
        let mut pass = true;
        for minor in ideal.generators() {
            for z in 0..piece.basis.len() {
                let elem = FreeModuleElement::scaled_unit(
                    &self.base_ring,
                    piece.basis.len(),
                    z,
                    minor.clone(),
                );
                let holds = piece.module.contains(&elem)?;
                pass &= holds;
                entries.push(DetAdjEntry {
                    minor: minor.clone(),
                    monomial: piece.basis.monomial(&self.full_ring, z),
                    holds,
                });
            }
        }
        Ok(DetAdjReport {
            degree: n,
            ideal_is_zero: ideal.is_zero_ideal(),
            entries,
            pass,
        })
    }

    /// The module as a rank-`r` submodule in plain coordinates.
    pub fn as_submodule(&self) -> Result<Submodule> {
        let elems = (0..self.gens.len())
            .map(|j| {
                let comps = (0..self.rank).map(|i| self.matrix[i][j].clone()).collect();
                FreeModuleElement::new(&self.base_ring, comps)
            })
            .collect::<Result<Vec<_>>>()?;
        Submodule::new(&self.base_ring, self.rank, elems)
    }

    /// Changes basis so that the first-coordinate entry of every generator
    /// lies in the maximal ideal, after enlarging the module until its
    /// quotient is the residue field.
    ///
    /// Requires the quotient of the ambient free module by the module to
    /// have finite nonzero length, detected through the minors ideal.
    pub fn normalize_basis(&self, guards: &Guards) -> Result<BasisNormalization> {
        let field = self.base_ring.coef().clone();
        let r = self.rank;
        let minors = self.minors_ideal(guards)?;
        if minors.is_zero_ideal() {
            return Err(Error::NotFiniteLength);
        }
        if minors
            .generators()
            .iter()
            .any(|g| !g.constant_term().is_zero())
        {
            return Err(Error::ZeroQuotient);
        }
        let primary = minors.m_primary()?;
        if !primary.primary {
            return Err(Error::NotFiniteLength);
        }

        // residues of the coefficient matrix span the module modulo the
        // maximal ideal
        let mut span = RowSpace::new(field.clone(), r);
        for j in 0..self.gens.len() {
            let col: Vec<Coef> = (0..r).map(|i| self.matrix[i][j].constant_term()).collect();
            span.insert(col);
        }
        let module_residues = span.basis_rows().to_vec();
        let mut free_dirs = Vec::new();
        for i in 0..r {
            let e = unit_vector(&field, r, i);
            if !span.contains(&e) {
                free_dirs.push(i);
                span.insert(e);
            }
        }
        debug_assert!(!free_dirs.is_empty(), "full residue span was rejected above");
        let survivor = free_dirs[0];

        // the functional vanishes on the enlarged module's residues and is
        // one on the surviving direction
        let mut wall = module_residues;
        for &f in &free_dirs[1..] {
            wall.push(unit_vector(&field, r, f));
        }
        let mut functional =
            kernel_vector(&field, &wall, r).expect("hyperplane has a one-dimensional kernel");
        let scale = field
            .inv(&functional[survivor])
            .expect("functional is nonzero on the survivor");
        for c in &mut functional {
            *c = field.mul(c, &scale);
        }

        // inverse transform: first column is the functional, the rest are
        // the unit vectors away from the survivor
        let mut dmat = vec![vec![field.zero(); r]; r];
        for i in 0..r {
            dmat[i][0] = functional[i].clone();
        }
        for (col, i) in (0..r).filter(|&i| i != survivor).enumerate() {
            dmat[i][col + 1] = field.one();
        }
        let new_basis =
            invert_matrix(&field, &dmat).expect("constructed transform is invertible");

        // transformed matrix: row k of the new matrix is column k of the
        // inverse transform applied to the rows
        let d = self.gens.len();
        let mut aprime = vec![vec![Polynomial::zero(&self.base_ring); d]; r];
        for k in 0..r {
            for j in 0..d {
                let mut acc = Polynomial::zero(&self.base_ring);
                for i in 0..r {
                    if dmat[i][k].is_zero() {
                        continue;
                    }
                    acc = acc.try_add(&self.matrix[i][j].scale(&dmat[i][k]))?;
                }
                aprime[k][j] = acc;
            }
        }
        let first_row_ok = aprime[0].iter().all(|p| p.constant_term().is_zero());
        let transformed = LinearModule::from_matrix(&self.full_ring, aprime)?;

        // enlarged module in the original coordinates: original columns,
        // the dropped residue directions, and the maximal ideal times the
        // ambient module
        let mut cols: Vec<Vec<Polynomial>> = (0..d)
            .map(|j| (0..r).map(|i| self.matrix[i][j].clone()).collect())
            .collect();
        for &f in &free_dirs[1..] {
            let mut col = vec![Polynomial::zero(&self.base_ring); r];
            col[f] = Polynomial::one(&self.base_ring);
            cols.push(col);
        }
        for v in 0..self.base_ring.arity() {
            for i in 0..r {
                let mut col = vec![Polynomial::zero(&self.base_ring); r];
                col[i] = Polynomial::variable(&self.base_ring, v);
                cols.push(col);
            }
        }
        let mut enlarged_matrix = vec![Vec::with_capacity(cols.len()); r];
        for col in &cols {
            for (i, p) in col.iter().enumerate() {
                enlarged_matrix[i].push(p.clone());
            }
        }
        let enlarged = LinearModule::from_matrix(&self.full_ring, enlarged_matrix)?;
        let enlarged_residue_dim = enlarged
            .as_submodule()?
            .quotient_dim()
            .expect("enlarged module contains the maximal ideal times the ambient module");

        Ok(BasisNormalization {
            new_basis,
            functional,
            residue_index: survivor,
            transformed,
            enlarged,
            first_row_in_max_ideal: first_row_ok,
            enlarged_residue_dim,
        })
    }

    /// Extracts the pure-first-variable coordinate of every generator of
    /// the degree-`(n-k, k)` graded product and tests membership in the
    /// `(n-k)`-th power of the maximal ideal.
    pub fn t1_coefficient_check(&self, n: u32, k: u32, guards: &Guards) -> Result<CoefficientCheck> {
        if k > n {
            return Err(Error::InvalidArgument("need n >= k".into()));
        }
        let piece = self.graded_product(n - k, k, guards)?;
        // the basis is sorted descending, so index 0 is the pure power of
        // the first module variable
        debug_assert_eq!(piece.basis.exponents()[0].0[0], n);
        let mut coefficients = Vec::new();
        let mut verdicts = Vec::new();
        for g in piece.module.generators() {
            let c = g.component(0).clone();
            verdicts.push(lies_in_max_ideal_power(&c, n - k));
            coefficients.push(c);
        }
        let pass = verdicts.iter().all(|&v| v);
        Ok(CoefficientCheck { n, k, coefficients, verdicts, pass })
    }
}

fn minors_of_matrix(
    base_ring: &Arc<PolyRing>,
    mat: &[Vec<Polynomial>],
    guards: &Guards,
) -> Result<Ideal> {
    let rows = mat.len();
    let cols = mat.first().map_or(0, |r| r.len());
    if cols < rows {
        return Ok(Ideal::zero(base_ring));
    }
    if rows > guards.minor_size {
        return Err(Error::GuardExceeded(format!(
            "maximal minor size {rows} exceeds the bound {}; raise the bound to proceed",
            guards.minor_size
        )));
    }
    let count = binomial(cols as u64, rows as u64)
        .map_err(|_| Error::GuardExceeded("minor count overflows".into()))?;
    if count > guards.max_products as u64 {
        return Err(Error::GuardExceeded(format!(
            "needs {count} minors; cap is {}",
            guards.max_products
        )));
    }
    let minors = maximal_minors(base_ring, mat)?;
    Ideal::new(base_ring, minors)
}

/// Drops zero columns and scalar multiples of earlier columns, keeping
/// first occurrences in order.
fn dedup_scalar_columns(
    base_ring: &Arc<PolyRing>,
    cols: Vec<Vec<Polynomial>>,
) -> Vec<Vec<Polynomial>> {
    let field = base_ring.coef();
    let mut seen: Vec<Vec<Polynomial>> = Vec::new();
    let mut kept = Vec::new();
    for col in cols {
        let lead = col.iter().find_map(|p| p.leading_term().map(|(_, c)| c.clone()));
        let Some(lead) = lead else { continue };
        let inv = field.inv(&lead).expect("leading coefficient is nonzero");
        let key: Vec<Polynomial> = col.iter().map(|p| p.scale(&inv)).collect();
        if !seen.contains(&key) {
            seen.push(key);
            kept.push(col);
        }
    }
    kept
}

fn unit_vector(field: &CoefField, dim: usize, i: usize) -> Vec<Coef> {
    let mut v = vec![field.zero(); dim];
    v[i] = field.one();
    v
}

/// Row space in reduced echelon form over the coefficient field, for span
/// and membership queries.
struct RowSpace {
    field: CoefField,
    dim: usize,
    rows: Vec<Vec<Coef>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    fn new(field: CoefField, dim: usize) -> Self {
        RowSpace { field, dim, rows: Vec::new(), pivots: Vec::new() }
    }

    fn reduce(&self, mut v: Vec<Coef>) -> Vec<Coef> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            for j in 0..self.dim {
                let delta = self.field.mul(&factor, &row[j]);
                v[j] = self.field.sub(&v[j], &delta);
            }
        }
        v
    }

    fn contains(&self, v: &[Coef]) -> bool {
        self.reduce(v.to_vec()).iter().all(|c| c.is_zero())
    }

    /// Inserts a vector; returns whether the span grew.
    fn insert(&mut self, v: Vec<Coef>) -> bool {
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = self.field.inv(&w[p]).expect("nonzero pivot");
        for c in &mut w {
            *c = self.field.mul(c, &inv);
        }
        // keep earlier rows reduced against the new pivot
        for row in &mut self.rows {
            if row[p].is_zero() {
                continue;
            }
            let factor = row[p].clone();
            for j in 0..self.dim {
                let delta = self.field.mul(&factor, &w[j]);
                row[j] = self.field.sub(&row[j], &delta);
            }
        }
        let at = self.pivots.iter().position(|&q| q > p).unwrap_or(self.pivots.len());
        self.rows.insert(at, w);
        self.pivots.insert(at, p);
        true
    }

    fn basis_rows(&self) -> &[Vec<Coef>] {
        &self.rows
    }
}

/// A kernel vector of the system `row . x = 0` over all rows, from the
/// first free column of the reduced form; `None` when the kernel is zero.
fn kernel_vector(field: &CoefField, rows: &[Vec<Coef>], dim: usize) -> Option<Vec<Coef>> {
    let mut space = RowSpace::new(field.clone(), dim);
    for row in rows {
        space.insert(row.clone());
    }
    let free = (0..dim).find(|c| !space.pivots.contains(c))?;
    let mut v = vec![field.zero(); dim];
    v[free] = field.one();
    for (row, &p) in space.rows.iter().zip(&space.pivots) {
        v[p] = field.neg(&row[free]);
    }
    Some(v)
}

/// Gauss-Jordan inversion of a square matrix over the field.
fn invert_matrix(field: &CoefField, mat: &[Vec<Coef>]) -> Option<Vec<Vec<Coef>>> {
    let n = mat.len();
    let mut work: Vec<Vec<Coef>> = mat
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(unit_vector(field, n, i));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&i| !work[i][col].is_zero())?;
        work.swap(col, pivot);
        let inv = field.inv(&work[col][col])?;
        for j in 0..2 * n {
            work[col][j] = field.mul(&work[col][j], &inv);
        }
        for i in 0..n {
            if i == col || work[i][col].is_zero() {
                continue;
            }
            let factor = work[i][col].clone();
            for j in 0..2 * n {
                let delta = field.mul(&factor, &work[col][j]);
                work[i][j] = field.sub(&work[i][j], &delta);
            }
        }
    }
    Some(work.into_iter().map(|row| row[n..].to_vec()).collect())
}
