//! Polynomial rings with a split variable list.
//!
//! A ring carries `base` variables (the coefficient directions, written
//! `x, y, ...`) and optional `ext` variables (the free-module directions,
//! written `T1, ..., Tr`).  Exponent vectors always have length
//! `base.len() + ext.len()`, base part first.  The monomial order applies to
//! the whole exponent vector; both available orders refine total degree.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::coef::CoefField;
use crate::error::{Error, Result};

/// A graded monomial order (total order refining total degree).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic: higher total degree wins; on ties the
    /// *last* nonzero entry of the difference decides, smaller exponent
    /// winning.
    #[default]
    GrevLex,
    /// Graded lexicographic: higher total degree wins; ties break by the
    /// first differing entry, larger exponent winning.
    GrLex,
}

impl MonomialOrder {
    pub fn cmp_exponents(&self, a: &[u32], b: &[u32]) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        let da: u64 = a.iter().map(|&e| e as u64).sum();
        let db: u64 = b.iter().map(|&e| e as u64).sum();
        match da.cmp(&db) {
            Ordering::Equal => {}
            other => return other,
        }
        match self {
            MonomialOrder::GrevLex => {
                for (x, y) in a.iter().zip(b.iter()).rev() {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        // last nonzero difference negative => greater
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::GrLex => {
                for (x, y) in a.iter().zip(b.iter()) {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        other => return other,
                    }
                }
                Ordering::Equal
            }
        }
    }
}

fn valid_ident(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A polynomial ring `k[base ; ext]` over a coefficient field.
#[derive(Debug, PartialEq, Eq)]
pub struct PolyRing {
    coef: CoefField,
    base: Vec<String>,
    ext: Vec<String>,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new(
        coef: CoefField,
        base: Vec<String>,
        ext: Vec<String>,
        order: MonomialOrder,
    ) -> Result<Arc<Self>> {
        if base.is_empty() {
            return Err(Error::InvalidArgument(
                "a ring needs at least one base variable".into(),
            ));
        }
        let mut seen: Vec<&str> = Vec::new();
        for name in base.iter().chain(ext.iter()) {
            if !valid_ident(name) {
                return Err(Error::InvalidArgument(format!(
                    "invalid variable name `{name}`"
                )));
            }
            if seen.contains(&name.as_str()) {
                return Err(Error::InvalidArgument(format!(
                    "duplicate variable name `{name}`"
                )));
            }
            seen.push(name);
        }
        Ok(Arc::new(PolyRing { coef, base, ext, order }))
    }

    /// Rationals, base variables only, grevlex.  The workhorse constructor
    /// in tests.
    pub fn rationals(base: &[&str]) -> Arc<Self> {
        PolyRing::new(
            CoefField::Rationals,
            base.iter().map(|s| s.to_string()).collect(),
            Vec::new(),
            MonomialOrder::GrevLex,
        )
        .expect("valid variable names")
    }

    /// Rationals with free-module directions, grevlex.
    pub fn rationals_with_ext(base: &[&str], ext: &[&str]) -> Arc<Self> {
        PolyRing::new(
            CoefField::Rationals,
            base.iter().map(|s| s.to_string()).collect(),
            ext.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::GrevLex,
        )
        .expect("valid variable names")
    }

    pub fn coef(&self) -> &CoefField {
        &self.coef
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn arity(&self) -> usize {
        self.base.len() + self.ext.len()
    }

    pub fn base_len(&self) -> usize {
        self.base.len()
    }

    pub fn ext_len(&self) -> usize {
        self.ext.len()
    }

    pub fn var_name(&self, i: usize) -> &str {
        if i < self.base.len() {
            &self.base[i]
        } else {
            &self.ext[i - self.base.len()]
        }
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.base
            .iter()
            .chain(self.ext.iter())
            .position(|v| v == name)
    }

    pub fn base_names(&self) -> &[String] {
        &self.base
    }

    pub fn ext_names(&self) -> &[String] {
        &self.ext
    }

    /// The same coefficients and order over the base variables alone.
    pub fn base_ring(&self) -> Arc<PolyRing> {
        Arc::new(PolyRing {
            coef: self.coef.clone(),
            base: self.base.clone(),
            ext: Vec::new(),
            order: self.order,
        })
    }

    /// Two ring handles denote the same ring (pointer or structural).
    pub fn same(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
        Arc::ptr_eq(a, b) || a == b
    }
}
