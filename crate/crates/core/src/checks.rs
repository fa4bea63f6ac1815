//! High-level checks tying the layers together: degree-window finite
//! generation, the closure comparison between minors ideals and binomial
//! powers, and the gap staircase between closures of powers and plain
//! powers of an ideal.

use crate::binomial;
use crate::error::{Error, Result};
use crate::iclose::{CertificateTarget, IntegralCertificate, MonomialIdeal};
use crate::modalg::LinearModule;
use crate::poly::Polynomial;
use crate::Guards;

/// An element of a graded piece together with the certificate that makes
/// it a legitimate extra generator.
#[derive(Clone, Debug)]
pub struct CertifiedElement {
    pub degree: u32,
    pub certificate: IntegralCertificate,
}

impl CertifiedElement {
    pub fn form(&self) -> &Polynomial {
        self.certificate.subject()
    }
}

/// Containment verdict for one degree of the window.
#[derive(Clone, Debug)]
pub struct DegreeVerdict {
    pub degree: u32,
    pub product_count: usize,
    pub all_contained: bool,
    /// Products that fell outside the target piece.
    pub failing: Vec<Polynomial>,
}

/// Window report: for every degree `n` in `[k, n_max]`, whether all
/// degree-`n` products of the enlarged generator set land in the product
/// of the degree-`(n-k)` piece with the whole degree-`k` piece.
#[derive(Clone, Debug)]
pub struct GradedWindowReport {
    pub k: u32,
    pub n_max: u32,
    pub verdicts: Vec<DegreeVerdict>,
    pub pass: bool,
    /// When the whole window holds and every generator fits below the
    /// window top, a finite generator list for the truncated piece: the
    /// constant, the low-degree products, and the degree-`k` monomials.
    pub truncated_generators: Option<Vec<Polynomial>>,
}

/// Weighted multisets over the extras: which extras, with multiplicity,
/// sum to the requested degree.  Deterministic index order.
fn extra_multisets(degrees: &[u32], weight: u32) -> Vec<Vec<usize>> {
    fn rec(degrees: &[u32], i: usize, remaining: u32, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        if i == degrees.len() {
            return;
        }
        let deg = degrees[i];
        let max_copies = remaining / deg;
        for copies in 0..=max_copies {
            for _ in 0..copies {
                current.push(i);
            }
            rec(degrees, i + 1, remaining - copies * deg, current, out);
            for _ in 0..copies {
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(degrees, 0, weight, &mut Vec::new(), &mut out);
    out
}

/// All distinct (up to scalar) degree-`n` products of the module
/// generators and the extra forms.
fn window_products(
    module: &LinearModule,
    extras: &[CertifiedElement],
    n: u32,
    guards: &Guards,
) -> Result<Vec<Polynomial>> {
    let d = module.generator_count() as u64;
    let degrees: Vec<u32> = extras.iter().map(|e| e.degree).collect();
    // count before enumerating
    let mut count: u64 = 0;
    let mut splits = Vec::new();
    for a in (0..=n).rev() {
        let sets = extra_multisets(&degrees, n - a);
        if sets.is_empty() {
            continue;
        }
        let l_part = if a == 0 {
            1
        } else {
            binomial(d + u64::from(a) - 1, u64::from(a))
                .map_err(|_| Error::GuardExceeded("product count overflows".into()))?
        };
        count = count.saturating_add(l_part.saturating_mul(sets.len() as u64));
        splits.push((a, sets));
    }
    if count > guards.max_products as u64 {
        return Err(Error::GuardExceeded(format!(
            "degree {n} needs {count} products; cap is {}",
            guards.max_products
        )));
    }
    let full_ring = module.full_ring();
    let mut seen: Vec<Polynomial> = Vec::new();
    let mut kept = Vec::new();
    for (a, sets) in splits {
        let l_combos: Vec<Vec<usize>> = if a == 0 {
            vec![Vec::new()]
        } else {
            use itertools::Itertools;
            (0..module.generator_count())
                .combinations_with_replacement(a as usize)
                .collect()
        };
        for combo in &l_combos {
            let mut l_prod = Polynomial::one(full_ring);
            for &idx in combo {
                l_prod = l_prod.try_mul(&module.generators()[idx])?;
            }
            for set in &sets {
                let mut prod = l_prod.clone();
                for &e in set {
                    prod = prod.try_mul(extras[e].form())?;
                }
                if prod.is_zero() {
                    continue;
                }
                let key = prod.make_monic();
                if !seen.contains(&key) {
                    seen.push(key);
                    kept.push(prod);
                }
            }
        }
    }
    Ok(kept)
}

/// Checks, degree by degree on `[k, n_max]`, that every product of the
/// enlarged generator set (module generators plus certified extras) lies
/// in the product of the degree-`(n-k)` symmetric power with the full
/// degree-`k` piece.
pub fn fingen_window(
    module: &LinearModule,
    extras: &[CertifiedElement],
    k: u32,
    n_max: u32,
    guards: &Guards,
) -> Result<GradedWindowReport> {
    if k > n_max {
        return Err(Error::InvalidArgument("window needs k <= n_max".into()));
    }
    for extra in extras {
        if extra.degree == 0 {
            return Err(Error::InvalidCertificate(
                "extra element needs degree >= 1".into(),
            ));
        }
        let CertificateTarget::SymPowers { module: target_module, degree } =
            extra.certificate.target()
        else {
            return Err(Error::InvalidCertificate(
                "extra element needs a graded certificate".into(),
            ));
        };
        if *degree != extra.degree || !module.same_presentation(target_module) {
            return Err(Error::InvalidCertificate(
                "extra element's certificate targets a different graded piece".into(),
            ));
        }
        let check = extra.certificate.verify(guards)?;
        if !check.pass {
            return Err(Error::InvalidCertificate(format!(
                "extra element {} does not verify",
                extra.form()
            )));
        }
    }

    let mut verdicts = Vec::new();
    for n in k..=n_max {
        if n == 0 {
            verdicts.push(DegreeVerdict {
                degree: 0,
                product_count: 0,
                all_contained: true,
                failing: Vec::new(),
            });
            continue;
        }
        let products = window_products(module, extras, n, guards)?;
        let target = module.graded_product(n - k, k, guards)?;
        let mut failing = Vec::new();
        for p in &products {
            if !target.contains_form(p)? {
                failing.push(p.clone());
            }
        }
        verdicts.push(DegreeVerdict {
            degree: n,
            product_count: products.len(),
            all_contained: failing.is_empty(),
            failing,
        });
    }
    let pass = verdicts.iter().all(|v| v.all_contained);

    // a finite generator list is only claimed when every generator of the
    // enlarged algebra (module generators have degree 1) fits under the
    // window top
    let window_span = n_max - k;
    let generator_degrees_fit =
        window_span >= 1 && extras.iter().all(|e| e.degree <= window_span);
    let trivial_window = k == 0 && n_max == 0;
    let truncated_generators = if pass && (generator_degrees_fit || trivial_window) {
        let mut gens = vec![Polynomial::one(module.full_ring())];
        for j in 1..k {
            gens.extend(window_products(module, extras, j, guards)?);
        }
        if k >= 1 {
            let ambient = module.graded_product(0, k, guards)?;
            gens.extend(ambient.generator_forms());
        }
        Some(gens)
    } else {
        None
    };

    Ok(GradedWindowReport { k, n_max, verdicts, pass, truncated_generators })
}

/// Outcome of comparing the degree-`n` minors ideal against the binomial
/// power of the base minors ideal, up to integral closure.
#[derive(Clone, Debug)]
pub struct PowerComparisonReport {
    pub degree: u32,
    /// The binomial exponent on the base minors ideal.
    pub exponent: u64,
    pub sym_minors: MonomialIdeal,
    pub power: MonomialIdeal,
    pub closure_equal: bool,
    pub literal_equal: bool,
}

/// Compares the maximal-minors ideal of the degree-`n` product matrix
/// with the binomial power of the base minors ideal, up to integral
/// closure.  Both ideals must come out monomial.
pub fn minors_power_comparison(
    module: &LinearModule,
    n: u32,
    guards: &Guards,
) -> Result<PowerComparisonReport> {
    let base = MonomialIdeal::from_ideal(&module.minors_ideal(guards)?)?;
    let sym = MonomialIdeal::from_ideal(&module.sym_minors_ideal(n, guards)?)?;
    if base.is_zero() || sym.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let r = module.rank() as u64;
    let exponent = binomial(u64::from(n) + r - 1, r)
        .map_err(|_| Error::GuardExceeded("binomial exponent overflows".into()))?;
    if exponent > guards.max_products as u64 {
        return Err(Error::GuardExceeded(format!(
            "power exponent {exponent} exceeds the cap {}",
            guards.max_products
        )));
    }
    let power = base.power(exponent as u32)?;
    let closure_equal = sym.closure_equal(&power)?;
    let literal_equal = sym.same_generators(&power);
    Ok(PowerComparisonReport {
        degree: n,
        exponent,
        sym_minors: sym,
        power,
        closure_equal,
        literal_equal,
    })
}

/// One row of the gap table.
#[derive(Clone, Debug)]
pub struct GapRow {
    pub n: u32,
    /// The staircase exponent for this degree.
    pub m: u32,
    /// Whether the closure of the n-th power lies in the m-th power.
    pub holds: bool,
    /// Largest exponent for which the containment holds, when requested.
    pub sharp: Option<u32>,
}

/// The staircase table for one ideal.
#[derive(Clone, Debug)]
pub struct GapReport {
    /// Least exponent with the whole maximal-ideal power inside the
    /// ideal.
    pub t: u32,
    pub k: u32,
    /// Rank context for the binomial thresholds; 1 gives plain ideal
    /// semantics.
    pub r: u64,
    pub rows: Vec<GapRow>,
    pub pass: bool,
}

/// The staircase value: the largest `m >= 1` whose binomial threshold
/// `C(m*t + k + r - 1, r)` stays within `n`, or 0 when none does.
pub fn staircase(n: u32, t: u32, k: u32, r: u64) -> u32 {
    let mut best = 0;
    let mut m = 1u32;
    loop {
        let arg = u64::from(m) * u64::from(t) + u64::from(k) + r - 1;
        match binomial(arg, r) {
            Ok(thr) if thr <= u64::from(n) => {
                best = m;
                m += 1;
            }
            _ => return best,
        }
    }
}

/// Builds the gap table for an m-primary monomial ideal: for each
/// `n <= n_max`, the closure of the n-th power must land in the
/// staircase power.
pub fn rees_gap(
    ideal: &MonomialIdeal,
    k: u32,
    n_max: u32,
    r: u64,
    sharp: bool,
    guards: &Guards,
) -> Result<GapReport> {
    let primary = ideal.to_ideal().m_primary()?;
    if !primary.primary {
        return Err(Error::NotMPrimary);
    }
    let t = primary.t.expect("primary report carries t");
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let closure = ideal.power(n)?.newton_closure(guards)?;
        let m = staircase(n, t, k, r);
        let contained_in = |mm: u32| -> Result<bool> {
            if mm == 0 {
                return Ok(true);
            }
            let power = ideal.power(mm)?;
            Ok(closure
                .exponents()
                .iter()
                .all(|e| power.contains_exponent(e)))
        };
        let holds = contained_in(m)?;
        let sharp_value = if sharp {
            let mut best = 0;
            for cand in 1..=n {
                if contained_in(cand)? {
                    best = cand;
                } else {
                    break;
                }
            }
            Some(best)
        } else {
            None
        };
        rows.push(GapRow { n, m, holds, sharp: sharp_value });
    }
    let pass = rows.iter().all(|row| row.holds);
    Ok(GapReport { t, k, r, rows, pass })
}
