//! Command-line front end: every subcommand loads one instance file, runs
//! one check or computation from the library, prints a human summary, and
//! can emit a machine-readable JSON report.  Exit status: 0 when the run
//! passed, 1 when a checked verdict failed or a domain precondition was
//! rejected, 2 on malformed input, 3 when a resource guard refused the
//! computation.

mod instance;
mod report;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use instance::Instance;
use report::Report;

use reeskit::checks::{fingen_window, minors_power_comparison, rees_gap};
use reeskit::coef::Coef;
use reeskit::iclose::CertificateTarget;
use reeskit::poly::Polynomial;
use reeskit::{Error, Guards, Result};

#[derive(Parser)]
#[command(
    name = "reeskit",
    version,
    about = "Exact checks for symmetric powers of modules, minors ideals, and monomial integral closure"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a symmetric power of the module and list its generators
    #[command(name = "sym-power")]
    SymPower(CommonArgs),
    /// Maximal minors of the module's coefficient matrix
    Minors(CommonArgs),
    /// Check that each minor multiplies the whole degree-n piece into the module
    Detadj(CommonArgs),
    /// Integral closure of a monomial ideal
    Closure(CommonArgs),
    /// Compare two monomial ideals up to integral closure
    #[command(name = "closure-equal")]
    ClosureEqual(CommonArgs),
    /// Verify an integral-dependence certificate
    #[command(name = "verify-cert")]
    VerifyCert(CommonArgs),
    /// Lift an ideal-level certificate to the graded pieces
    #[command(name = "lift-cert")]
    LiftCert(CommonArgs),
    /// Change basis so the first-row coefficients land in the maximal ideal
    Normalize(CommonArgs),
    /// Check first-block coefficients against powers of the maximal ideal
    #[command(name = "t1-check")]
    T1Check(CommonArgs),
    /// Degree-window finite-generation check with certified extras
    Fingen(CommonArgs),
    /// Compare minors of a symmetric power with a binomial power of the minors
    Bv(CommonArgs),
    /// Staircase table: closures of powers against powers
    Gap(CommonArgs),
    /// Decide whether the ideal is primary for the maximal ideal
    Primary(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Instance file (JSON)
    instance: PathBuf,
    /// Emit the machine-readable report on stdout (human text moves to stderr)
    #[arg(long)]
    json: bool,
    /// Degree parameter; overrides the instance
    #[arg(long)]
    n: Option<u32>,
    /// Offset parameter; overrides the instance
    #[arg(long)]
    k: Option<u32>,
    /// Window top; overrides the instance
    #[arg(long = "N")]
    n_max: Option<u32>,
    /// Monomial in the module variables for lift-cert; overrides the instance
    #[arg(long)]
    z: Option<String>,
    /// Rank context for the gap staircase; overrides the instance
    #[arg(long)]
    r: Option<u64>,
    /// Also compute the largest exponent that still contains the closure
    #[arg(long)]
    sharp: bool,
    /// Largest admissible minor size
    #[arg(long)]
    minor_bound: Option<usize>,
    /// Cap on enumerated products
    #[arg(long)]
    max_products: Option<usize>,
    /// Cap on lattice points walked during closure
    #[arg(long)]
    max_lattice_points: Option<usize>,
}

/// Flag values merged over the instance's params block over the defaults.
struct Resolved {
    n: Option<u32>,
    k: Option<u32>,
    n_max: Option<u32>,
    z: Option<String>,
    r: Option<u64>,
    sharp: bool,
    guards: Guards,
}

impl Resolved {
    fn new(args: &CommonArgs, inst: &Instance) -> Resolved {
        let params = inst.params();
        let defaults = Guards::default();
        Resolved {
            n: args.n.or(params.n),
            k: args.k.or(params.k),
            n_max: args.n_max.or(params.n_max),
            z: args.z.clone().or(params.z),
            r: args.r.or(params.r),
            sharp: args.sharp || params.sharp.unwrap_or(false),
            guards: Guards {
                minor_size: args
                    .minor_bound
                    .or(params.minor_bound)
                    .unwrap_or(defaults.minor_size),
                max_products: args
                    .max_products
                    .or(params.max_products)
                    .unwrap_or(defaults.max_products),
                max_lattice_points: args
                    .max_lattice_points
                    .or(params.max_lattice_points)
                    .unwrap_or(defaults.max_lattice_points),
            },
        }
    }

    fn need_n(&self) -> Result<u32> {
        self.n
            .ok_or_else(|| Error::InvalidArgument("this subcommand needs n (flag --n or params.n)".into()))
    }

    fn need_n_max(&self) -> Result<u32> {
        self.n_max.ok_or_else(|| {
            Error::InvalidArgument("this subcommand needs N (flag --N or params.N)".into())
        })
    }

    fn guard_params(&self) -> Value {
        json!({
            "minor_bound": self.guards.minor_size,
            "max_products": self.guards.max_products,
            "max_lattice_points": self.guards.max_lattice_points,
        })
    }
}

fn main() {
    let cli = Cli::parse();
    let started = Instant::now();
    let (args, name) = match &cli.command {
        Command::SymPower(a) => (a, "sym-power"),
        Command::Minors(a) => (a, "minors"),
        Command::Detadj(a) => (a, "detadj"),
        Command::Closure(a) => (a, "closure"),
        Command::ClosureEqual(a) => (a, "closure-equal"),
        Command::VerifyCert(a) => (a, "verify-cert"),
        Command::LiftCert(a) => (a, "lift-cert"),
        Command::Normalize(a) => (a, "normalize"),
        Command::T1Check(a) => (a, "t1-check"),
        Command::Fingen(a) => (a, "fingen"),
        Command::Bv(a) => (a, "bv"),
        Command::Gap(a) => (a, "gap"),
        Command::Primary(a) => (a, "primary"),
    };
    match run(name, args) {
        Ok(mut rep) => {
            rep.timing_ms = started.elapsed().as_millis();
            if args.json {
                println!("{}", rep.to_json());
                eprint!("{}", rep.human_text());
            } else {
                print!("{}", rep.human_text());
            }
            std::process::exit(if rep.pass { 0 } else { 1 });
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::UnknownVariable { .. }
        | Error::RingMismatch(_)
        | Error::RankMismatch { .. }
        | Error::InvalidArgument(_) => 2,
        Error::GuardExceeded(_) | Error::Unsupported(_) => 3,
        _ => 1,
    }
}

fn run(name: &str, args: &CommonArgs) -> Result<Report> {
    let inst = Instance::load(&args.instance)?;
    let resolved = Resolved::new(args, &inst);
    let (params, results, pass) = match name {
        "sym-power" => cmd_sym_power(&inst, &resolved)?,
        "minors" => cmd_minors(&inst, &resolved)?,
        "detadj" => cmd_detadj(&inst, &resolved)?,
        "closure" => cmd_closure(&inst, &resolved)?,
        "closure-equal" => cmd_closure_equal(&inst, &resolved)?,
        "verify-cert" => cmd_verify_cert(&inst, &resolved)?,
        "lift-cert" => cmd_lift_cert(&inst, &resolved)?,
        "normalize" => cmd_normalize(&inst, &resolved)?,
        "t1-check" => cmd_t1_check(&inst, &resolved)?,
        "fingen" => cmd_fingen(&inst, &resolved)?,
        "bv" => cmd_bv(&inst, &resolved)?,
        "gap" => cmd_gap(&inst, &resolved)?,
        "primary" => cmd_primary(&inst, &resolved)?,
        other => unreachable!("unrouted subcommand {other}"),
    };
    Ok(Report::new(name, &inst.path, &inst.sha256, params, results, pass))
}

fn strings<'a, I: IntoIterator<Item = &'a Polynomial>>(polys: I) -> Vec<String> {
    polys.into_iter().map(|p| p.to_string()).collect()
}

fn coef_strings(coefs: &[Coef]) -> Vec<String> {
    coefs.iter().map(|c| c.to_string()).collect()
}

fn cmd_sym_power(inst: &Instance, resolved: &Resolved) -> Result<(Value, Value, bool)> {
    let n = resolved.need_n()?;
    let module = inst.module()?;
    let piece = module.sym_power(n, &resolved.guards)?;
    let forms = piece.generator_forms();
    let ring = module.full_ring().clone();
    let basis: Vec<String> = (0..piece.basis().len())
        .map(|i| piece.basis().monomial(&ring, i).to_string())
        .collect();
    let params = json!({ "n": n, "guards": resolved.guard_params() });
    let results = json!({
        "basis": basis,
        "generators": strings(forms.iter()),
        "generator_count": forms.len(),
    });
    Ok((params, results, true))
}

fn cmd_minors(inst: &Instance, resolved: &Resolved) -> Result<(Value, Value, bool)> {
    let module = inst.module()?;
    let minors = module.minors_ideal(&resolved.guards)?;
    let params = json!({ "guards": resolved.guard_params() });
    let results = json!({
        "generators": strings(minors.generators()),
        "zero": minors.is_zero_ideal(),
    });
    Ok((params, results, true))
}

fn cmd_detadj(inst: &Instance, resolved: &Resolved) -> Result<(Value, Value, bool)> {
    let n = resolved.need_n()?;
    let module = inst.module()?;
    let rep = module.check_detadj(n, &resolved.guards)?;
    let entries: Vec<Value> = rep
        .entries
        .iter()
        .map(|e| {
            json!({
                "minor": e.minor.to_string(),
                "monomial": e.monomial.to_string(),
                "holds": e.holds,
            })
        })
        .collect();
    let params = json!({ "n": n, "guards": resolved.guard_params() });
    let results = json!({
        "ideal_is_zero": rep.ideal_is_zero,
        "entries": entries,
        "pass": rep.pass,
    });
    Ok((params, results, rep.pass))
}

fn cmd_closure(inst: &Instance, resolved: &Resolved) -> Result<(Value, Value, bool)> {
    let ideal = inst.monomial_ideal()?;
    let closed = ideal.newton_closure(&resolved.guards)?;
    let params = json!({ "guards": resolved.guard_params() });
    let results = json!({
        "generators": strings(&ideal.generators()),
        "closure": strings(&closed.generators()),
        "already_closed": ideal.same_generators(&closed),
    });
    Ok((params, results, true))
}

fn cmd_closure_equal(inst: &Instance, resolved: &Resolved) -> Result<(Value, Value, bool)> {
    let left = inst.monomial_ideal()?;
    let right = inst.second_monomial_ideal()?;
    let equal = left.closure_equal(&right)?;
    let params = json!({ "guards": resolved.guard_params() });
    let results = json!({
        "left_closure": strings(&left.newton_closure(&resolved.guards)?.generators()),
        "right_closure": strings(&right.newton_closure(&resolved.guards)?.generators()),
        "equal": equal,
    });
    Ok((params, results, equal))
}

fn certificate_check_value(check: &reeskit::iclose::CertificateCheck) -> Value {
    json!({
        "relation_holds": check.relation_holds,
        "subject_ok": check.subject_ok,
        "memberships": check.memberships,
        "pass": check.pass,
    })
}

fn cmd_verify_cert(inst: &Instance, resolved: &Resolved) -> Result<(Value, Value, bool)> {
    let cert = inst.certificate(resolved.n)?;
    let check = cert.verify(&resolved.guards)?;
    let params = json!({ "guards": resolved.guard_params() });
    let results = json!({
        "subject": cert.subject().to_string(),
        "coefficients": strings(cert.coefficients()),
        "check": certificate_check_value(&check),
    });
    Ok((params, results, check.pass))
}

fn cmd_lift_cert(inst: &Instance, resolved: &Resolved) -> Result<(Value, Value, bool)> {
    let n = resolved.need_n()?;
    let z_text = resolved
        .z
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("lift-cert needs z (flag --z or params.z)".into()))?;
    let module = inst.module()?;
    let z = inst.parse_widest(z_text)?;
    let cert = inst.certificate(Some(n))?;
    let lifted = cert.lift(&z, &module, n, &resolved.guards)?;
    let check = lifted.verify(&resolved.guards)?;
    let degree = match lifted.target() {
        CertificateTarget::SymPowers { degree, .. } => *degree,
        CertificateTarget::Ideal(_) => unreachable!("lift always targets graded pieces"),
    };
    let params = json!({ "n": n, "z": z_text, "guards": resolved.guard_params() });
    let results = json!({
        "subject": lifted.subject().to_string(),
        "coefficients": strings(lifted.coefficients()),
        "target_degree": degree,
        "check": certificate_check_value(&check),
    });
    Ok((params, results, check.pass))
}

fn cmd_normalize(inst: &Instance, resolved: &Resolved) -> Result<(Value, Value, bool)> {
    let module = inst.module()?;
    let norm = module.normalize_basis(&resolved.guards)?;
    let params = json!({ "guards": resolved.guard_params() });
    let results = json!({
        "functional": coef_strings(&norm.functional),
        "new_basis": norm.new_basis.iter().map(|row| coef_strings(row)).collect::<Vec<_>>(),
        "residue_index": norm.residue_index,
        "transformed": strings(norm.transformed.generators()),
        "enlarged": strings(norm.enlarged.generators()),
        "first_row_in_max_ideal": norm.first_row_in_max_ideal,
        "enlarged_residue_dim": norm.enlarged_residue_dim,
    });
    Ok((params, results, norm.first_row_in_max_ideal))
}

fn cmd_t1_check(inst: &Instance, resolved: &Resolved) -> Result<(Value, Value, bool)> {
    let n = resolved.need_n()?;
    let k = resolved.k.unwrap_or(0);
    let module = inst.module()?;
    let check = module.t1_coefficient_check(n, k, &resolved.guards)?;
    let params = json!({ "n": n, "k": k, "guards": resolved.guard_params() });
    let results = json!({
        "coefficients": strings(&check.coefficients),
        "verdicts": check.verdicts,
        "pass": check.pass,
    });
    Ok((params, results, check.pass))
}

fn cmd_fingen(inst: &Instance, resolved: &Resolved) -> Result<(Value, Value, bool)> {
    let k = resolved.k.unwrap_or(0);
    let n_max = resolved.need_n_max()?;
    let module = inst.module()?;
    let extras = inst.extras()?;
    let rep = fingen_window(&module, &extras, k, n_max, &resolved.guards)?;
    let degrees: Vec<Value> = rep
        .verdicts
        .iter()
        .map(|v| {
            json!({
                "degree": v.degree,
                "products": v.product_count,
                "contained": v.all_contained,
                "failing": strings(&v.failing),
            })
        })
        .collect();
    let truncated = rep
        .truncated_generators
        .as_ref()
        .map(|gens| Value::from(strings(gens)))
        .unwrap_or(Value::Null);
    let params = json!({ "k": k, "N": n_max, "extras": extras.len(), "guards": resolved.guard_params() });
    let results = json!({
        "degrees": degrees,
        "truncated_generators": truncated,
        "pass": rep.pass,
    });
    Ok((params, results, rep.pass))
}

fn cmd_bv(inst: &Instance, resolved: &Resolved) -> Result<(Value, Value, bool)> {
    let n = resolved.need_n()?;
    let module = inst.module()?;
    let rep = minors_power_comparison(&module, n, &resolved.guards)?;
    let params = json!({ "n": n, "guards": resolved.guard_params() });
    let results = json!({
        "exponent": rep.exponent,
        "sym_minors": strings(&rep.sym_minors.generators()),
        "power": strings(&rep.power.generators()),
        "closure_equal": rep.closure_equal,
        "literal_equal": rep.literal_equal,
    });
    Ok((params, results, rep.closure_equal))
}

fn cmd_gap(inst: &Instance, resolved: &Resolved) -> Result<(Value, Value, bool)> {
    let k = resolved.k.unwrap_or(0);
    let n_max = resolved.need_n_max()?;
    let ideal = inst.monomial_ideal()?;
    let r = match resolved.r {
        Some(r) => r,
        None => match inst.module() {
            Ok(m) => m.rank() as u64,
            Err(_) => 1,
        },
    };
    let rep = rees_gap(&ideal, k, n_max, r, resolved.sharp, &resolved.guards)?;
    let rows: Vec<Value> = rep
        .rows
        .iter()
        .map(|row| {
            json!({
                "n": row.n,
                "m": row.m,
                "holds": row.holds,
                "sharp": row.sharp,
            })
        })
        .collect();
    let params = json!({
        "k": k, "N": n_max, "r": r, "sharp": resolved.sharp,
        "guards": resolved.guard_params(),
    });
    let results = json!({ "t": rep.t, "rows": rows, "pass": rep.pass });
    Ok((params, results, rep.pass))
}

fn cmd_primary(inst: &Instance, resolved: &Resolved) -> Result<(Value, Value, bool)> {
    let ideal = inst.ideal()?;
    let rep = ideal.m_primary()?;
    let params = json!({ "guards": resolved.guard_params() });
    let results = json!({
        "primary": rep.primary,
        "t": rep.t,
        "quotient_dim": rep.quotient_dim,
    });
    Ok((params, results, rep.primary))
}
