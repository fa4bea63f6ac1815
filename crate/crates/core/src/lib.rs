//! Exact commutative-algebra computations at desk scale: sparse polynomial
//! arithmetic over the rationals or a prime field, Groebner bases for ideals
//! and submodules of free modules, symmetric powers of column modules with
//! their maximal-minors ideals, integral closure of monomial ideals through
//! Newton polyhedra, integral-dependence certificates, and the graded
//! finite-generation checks built on top of them.

pub mod checks;
pub mod coef;
pub mod det;
pub mod error;
pub mod gb;
pub mod iclose;
pub mod modalg;
pub mod parse;
pub mod poly;
pub mod ring;

pub use checks::{
    fingen_window, minors_power_comparison, rees_gap, staircase, CertifiedElement, DegreeVerdict,
    GapReport, GapRow, GradedWindowReport, PowerComparisonReport,
};
pub use coef::{Coef, CoefField};
pub use error::{Error, Result};
pub use gb::{FreeModuleElement, Ideal, MPrimaryReport, ModuleOrder, Submodule};
pub use iclose::{
    CertificateCheck, CertificateTarget, IntegralCertificate, MonomialIdeal, NewtonPolyhedron,
};
pub use modalg::{
    BasisNormalization, CoefficientCheck, DetAdjReport, GradedPiece, LinearModule, PieceKind,
    SymPowerBasis,
};
pub use parse::parse_polynomial;
pub use poly::{Exponent, Polynomial};
pub use ring::{MonomialOrder, PolyRing};

/// Resource bounds for the operations that can blow up combinatorially.
/// Exceeding a guard is reported as [`Error::GuardExceeded`], never as a
/// silent truncation.
#[derive(Clone, Copy, Debug)]
pub struct Guards {
    /// Largest admissible minor size (row count of a symmetric-power
    /// coefficient matrix) in determinant computations.
    pub minor_size: usize,
    /// Cap on enumerated products (symmetric-power expansions, ideal
    /// powers, window products).
    pub max_products: usize,
    /// Cap on lattice points enumerated when closing a monomial ideal.
    pub max_lattice_points: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            minor_size: 6,
            max_products: 50_000,
            max_lattice_points: 200_000,
        }
    }
}

/// Binomial coefficient as unsigned 64-bit, erroring on overflow instead of
/// wrapping.
pub fn binomial(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return Err(Error::InvalidArgument(format!(
                "binomial({n}, {k}) overflows"
            )));
        }
    }
    Ok(acc as u64)
}
