//! Instance files: a single JSON document holding the ring, the input
//! module or ideals, optional certificates and certified extras, and
//! default parameters.  Polynomial values are strings in the library's
//! expression grammar.

use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use sha2::{Digest, Sha256};

use reeskit::checks::CertifiedElement;
use reeskit::coef::CoefField;
use reeskit::gb::Ideal;
use reeskit::iclose::{CertificateTarget, IntegralCertificate, MonomialIdeal};
use reeskit::modalg::LinearModule;
use reeskit::parse::parse_polynomial;
use reeskit::poly::Polynomial;
use reeskit::ring::{MonomialOrder, PolyRing};
use reeskit::{Error, Result};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub ring: RingBlock,
    pub module: Option<ModuleBlock>,
    pub ideal: Option<IdealBlock>,
    pub ideal2: Option<IdealBlock>,
    pub certificate: Option<CertificateBlock>,
    pub extras: Option<Vec<ExtraBlock>>,
    pub params: Option<ParamsBlock>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingBlock {
    /// "rationals" or "fp"
    pub field: String,
    pub modulus: Option<u64>,
    pub variables: Vec<String>,
    #[serde(default)]
    pub module_variables: Vec<String>,
    /// "grevlex" (default) or "grlex"
    pub order: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleBlock {
    /// Cross-checked against the number of module variables when given.
    pub rank: Option<usize>,
    pub generators: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealBlock {
    pub generators: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateBlock {
    pub subject: String,
    pub coefficients: Vec<String>,
    /// "ideal" (the `ideal` block is the target) or "sym-powers" (the
    /// `module` block at `degree`).
    pub target: String,
    pub degree: Option<u32>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtraBlock {
    pub degree: u32,
    pub subject: String,
    pub coefficients: Vec<String>,
}

#[derive(Deserialize, Default, Clone)]
#[serde(deny_unknown_fields)]
pub struct ParamsBlock {
    pub n: Option<u32>,
    pub k: Option<u32>,
    #[serde(rename = "N")]
    pub n_max: Option<u32>,
    pub z: Option<String>,
    pub r: Option<u64>,
    pub sharp: Option<bool>,
    pub minor_bound: Option<usize>,
    pub max_products: Option<usize>,
    pub max_lattice_points: Option<usize>,
}

/// A parsed instance: the rings are built once and every block is turned
/// into library values on demand.
pub struct Instance {
    pub path: String,
    pub sha256: String,
    file: InstanceFile,
    base_ring: Arc<PolyRing>,
    full_ring: Option<Arc<PolyRing>>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

impl Instance {
    pub fn load(path: &Path) -> Result<Instance> {
        let bytes = std::fs::read(path)
            .map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
        let sha256 = format!("{:x}", Sha256::digest(&bytes));
        let file: InstanceFile = serde_json::from_slice(&bytes)
            .map_err(|e| invalid(format!("{}: {e}", path.display())))?;

        let coef = match (file.ring.field.as_str(), file.ring.modulus) {
            ("rationals", None) => CoefField::Rationals,
            ("rationals", Some(_)) => {
                return Err(invalid("the rationals take no modulus"));
            }
            ("fp", Some(p)) => CoefField::Prime(p),
            ("fp", None) => return Err(invalid("field \"fp\" needs a modulus")),
            (other, _) => {
                return Err(invalid(format!(
                    "unknown field {other:?}; use \"rationals\" or \"fp\""
                )));
            }
        };
        let order = match file.ring.order.as_deref() {
            None | Some("grevlex") => MonomialOrder::GrevLex,
            Some("grlex") => MonomialOrder::GrLex,
            Some(other) => {
                return Err(invalid(format!(
                    "unknown order {other:?}; use \"grevlex\" or \"grlex\""
                )));
            }
        };

        let base_ring = PolyRing::new(
            coef.clone(),
            file.ring.variables.clone(),
            Vec::new(),
            order,
        )?;
        let full_ring = if file.ring.module_variables.is_empty() {
            None
        } else {
            Some(PolyRing::new(
                coef,
                file.ring.variables.clone(),
                file.ring.module_variables.clone(),
                order,
            )?)
        };

        Ok(Instance {
            path: path.display().to_string(),
            sha256,
            file,
            base_ring,
            full_ring,
        })
    }

    pub fn params(&self) -> ParamsBlock {
        self.file.params.clone().unwrap_or_default()
    }

    pub fn full_ring(&self) -> Result<&Arc<PolyRing>> {
        self.full_ring
            .as_ref()
            .ok_or_else(|| invalid("the instance declares no module variables"))
    }

    /// The module block as a linear-form module over the full ring.
    pub fn module(&self) -> Result<LinearModule> {
        let block = self
            .file
            .module
            .as_ref()
            .ok_or_else(|| invalid("this subcommand needs a \"module\" block"))?;
        let ring = self.full_ring()?;
        if let Some(rank) = block.rank {
            if rank != ring.ext_len() {
                return Err(invalid(format!(
                    "module rank {rank} does not match the {} module variables",
                    ring.ext_len()
                )));
            }
        }
        let gens = block
            .generators
            .iter()
            .map(|s| parse_polynomial(ring, s))
            .collect::<Result<Vec<_>>>()?;
        LinearModule::from_generators(ring, gens)
    }

    fn ideal_from(&self, block: &IdealBlock) -> Result<Ideal> {
        let gens = block
            .generators
            .iter()
            .map(|s| parse_polynomial(&self.base_ring, s))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.base_ring, gens)
    }

    pub fn ideal(&self) -> Result<Ideal> {
        let block = self
            .file
            .ideal
            .as_ref()
            .ok_or_else(|| invalid("this subcommand needs an \"ideal\" block"))?;
        self.ideal_from(block)
    }

    pub fn second_ideal(&self) -> Result<Ideal> {
        let block = self
            .file
            .ideal2
            .as_ref()
            .ok_or_else(|| invalid("this subcommand needs an \"ideal2\" block"))?;
        self.ideal_from(block)
    }

    pub fn monomial_ideal(&self) -> Result<MonomialIdeal> {
        MonomialIdeal::from_ideal(&self.ideal()?)
    }

    pub fn second_monomial_ideal(&self) -> Result<MonomialIdeal> {
        MonomialIdeal::from_ideal(&self.second_ideal()?)
    }

    /// The certificate block against its declared target.  `degree_hint`
    /// fills in the graded degree when the block leaves it out.
    pub fn certificate(&self, degree_hint: Option<u32>) -> Result<IntegralCertificate> {
        let block = self
            .file
            .certificate
            .as_ref()
            .ok_or_else(|| invalid("this subcommand needs a \"certificate\" block"))?;
        match block.target.as_str() {
            "ideal" => {
                let target = CertificateTarget::Ideal(self.ideal()?);
                let subject = parse_polynomial(&self.base_ring, &block.subject)?;
                let coefficients = block
                    .coefficients
                    .iter()
                    .map(|s| parse_polynomial(&self.base_ring, s))
                    .collect::<Result<Vec<_>>>()?;
                IntegralCertificate::new(subject, coefficients, target)
            }
            "sym-powers" => {
                let degree = block
                    .degree
                    .or(degree_hint)
                    .ok_or_else(|| invalid("graded certificate needs a degree"))?;
                let module = self.module()?;
                let ring = self.full_ring()?;
                let subject = parse_polynomial(ring, &block.subject)?;
                let coefficients = block
                    .coefficients
                    .iter()
                    .map(|s| parse_polynomial(ring, s))
                    .collect::<Result<Vec<_>>>()?;
                IntegralCertificate::new(
                    subject,
                    coefficients,
                    CertificateTarget::SymPowers { module, degree },
                )
            }
            other => Err(invalid(format!(
                "unknown certificate target {other:?}; use \"ideal\" or \"sym-powers\""
            ))),
        }
    }

    /// The certified extras, each targeting the instance module at its
    /// own degree.
    pub fn extras(&self) -> Result<Vec<CertifiedElement>> {
        let Some(blocks) = self.file.extras.as_ref() else {
            return Ok(Vec::new());
        };
        let module = self.module()?;
        let ring = self.full_ring()?;
        blocks
            .iter()
            .map(|b| {
                let subject = parse_polynomial(ring, &b.subject)?;
                let coefficients = b
                    .coefficients
                    .iter()
                    .map(|s| parse_polynomial(ring, s))
                    .collect::<Result<Vec<_>>>()?;
                let certificate = IntegralCertificate::new(
                    subject,
                    coefficients,
                    CertificateTarget::SymPowers {
                        module: module.clone(),
                        degree: b.degree,
                    },
                )?;
                Ok(CertifiedElement { degree: b.degree, certificate })
            })
            .collect()
    }

    /// Parses a polynomial over the full ring when one is declared, else
    /// over the base ring.
    pub fn parse_widest(&self, text: &str) -> Result<Polynomial> {
        match &self.full_ring {
            Some(ring) => parse_polynomial(ring, text),
            None => parse_polynomial(&self.base_ring, text),
        }
    }
}
