//! The acceptance suite: ten independent criteria covering the whole
//! pipeline, each checked against a derived oracle or a frozen closed
//! form and reported as a single PASS/FAIL line.

mod oracle;

use std::process::Command;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reeskit::{
    binomial, fingen_window, minors_power_comparison, parse_polynomial, rees_gap,
    CertificateTarget, CertifiedElement, Error, Exponent, Guards, Ideal, IntegralCertificate,
    LinearModule, MonomialIdeal, PolyRing, Polynomial,
};

fn guards() -> Guards {
    Guards::default()
}

fn poly(ring: &Arc<PolyRing>, text: &str) -> Polynomial {
    parse_polynomial(ring, text).expect("fixture polynomial parses")
}

fn module(ring: &Arc<PolyRing>, gens: &[&str]) -> LinearModule {
    LinearModule::from_generators(ring, gens.iter().map(|g| poly(ring, g)).collect())
        .expect("fixture module builds")
}

/// Print the criterion verdict and fail the test on any recorded problem.
fn conclude(name: &str, problems: Vec<String>) {
    if problems.is_empty() {
        println!("{name}: PASS");
    } else {
        println!("{name}: FAIL");
        for p in &problems {
            println!("  - {p}");
        }
    }
    assert!(problems.is_empty(), "{name}: {problems:?}");
}

fn mono_text(vars: &[&str], exps: &[u32]) -> String {
    let mut parts = Vec::new();
    for (v, &e) in vars.iter().zip(exps) {
        match e {
            0 => {}
            1 => parts.push((*v).to_string()),
            _ => parts.push(format!("{v}^{e}")),
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// The module fixtures exercised across the suite: the shipped example
/// instances plus the shapes from the contract tests.
fn fixture_modules() -> Vec<(&'static str, LinearModule)> {
    let qx = PolyRing::rationals_with_ext(&["x"], &["T1", "T2"]);
    let qxy = PolyRing::rationals_with_ext(&["x", "y"], &["T1", "T2"]);
    let line = PolyRing::rationals_with_ext(&["x", "y"], &["T1"]);
    vec![
        ("diagonal", module(&qx, &["x*T1", "x*T2"])),
        ("column", module(&qxy, &["x^2*T1", "y^2*T1", "x^2*T2", "y^2*T2"])),
        ("ideal-line", module(&line, &["x^2*T1", "y^2*T1"])),
        ("swap", module(&qx, &["T1 + x*T2", "x^2*T2"])),
        ("thin", module(&qxy, &["x*T1"])),
        ("pillar", module(&qxy, &["x*T1", "x*T2"])),
        ("free", module(&qx, &["T1", "T2"])),
    ]
}

// -------------------------------------------------------------------
// 1. The diagonal module has a closed-form minor ideal in every degree.
// -------------------------------------------------------------------

#[test]
fn criterion_01_diagonal_closed_form() {
    let mut problems = Vec::new();
    let g = guards();
    let ring = PolyRing::rationals_with_ext(&["x"], &["T1", "T2"]);
    let m = module(&ring, &["x*T1", "x*T2"]);
    for n in 1..=4u32 {
        match minors_power_comparison(&m, n, &g) {
            Ok(rep) => {
                let want = format!("x^{}", n * (n + 1));
                let got: Vec<String> =
                    rep.sym_minors.generators().iter().map(|p| p.to_string()).collect();
                if got != [want.clone()] {
                    problems.push(format!("degree {n}: minors {got:?}, expected [{want}]"));
                }
                let expected = binomial(u64::from(n) + 1, 2).expect("small binomial");
                if rep.exponent != expected {
                    problems.push(format!(
                        "degree {n}: exponent {} instead of {expected}",
                        rep.exponent
                    ));
                }
                if !(rep.closure_equal && rep.literal_equal) {
                    problems.push(format!("degree {n}: power comparison failed"));
                }
            }
            Err(e) => problems.push(format!("degree {n}: {e}")),
        }
    }
    conclude("criterion 01 diagonal closed form", problems);
}

// -------------------------------------------------------------------
// 2. Minor ideals of symmetric powers agree with binomial powers of the
//    base minor ideal, up to closure.
// -------------------------------------------------------------------

#[test]
fn criterion_02_power_comparison_up_to_closure() {
    let mut problems = Vec::new();
    let g = guards();
    let qxy = PolyRing::rationals_with_ext(&["x", "y"], &["T1", "T2"]);
    let column = module(&qxy, &["x^2*T1", "y^2*T1", "x^2*T2", "y^2*T2"]);
    for n in 1..=2u32 {
        match minors_power_comparison(&column, n, &g) {
            Ok(rep) if rep.closure_equal => {}
            Ok(_) => problems.push(format!("column module: unequal closures at degree {n}")),
            Err(e) => problems.push(format!("column module degree {n}: {e}")),
        }
    }
    let line = PolyRing::rationals_with_ext(&["x", "y"], &["T1"]);
    let ideals: [&[&str]; 5] = [
        &["x^2", "y^2"],
        &["x^2", "x*y", "y^2"],
        &["x", "y"],
        &["x^4", "x^2*y^2", "y^4"],
        &["x^3", "y^3"],
    ];
    for gens in ideals {
        let lifted: Vec<String> = gens.iter().map(|s| format!("{s}*T1")).collect();
        let refs: Vec<&str> = lifted.iter().map(|s| s.as_str()).collect();
        let m = module(&line, &refs);
        for n in 1..=4u32 {
            match minors_power_comparison(&m, n, &g) {
                Ok(rep) if rep.closure_equal => {}
                Ok(_) => {
                    problems.push(format!("ideal {gens:?}: unequal closures at degree {n}"))
                }
                Err(e) => problems.push(format!("ideal {gens:?} degree {n}: {e}")),
            }
        }
    }
    conclude("criterion 02 power comparison up to closure", problems);
}

// -------------------------------------------------------------------
// 3. The minor-multiplier containment holds on randomized presentations.
// -------------------------------------------------------------------

fn random_monomial(rng: &mut ChaCha8Rng, ring: &Arc<PolyRing>, max_deg: u32) -> Polynomial {
    let deg = rng.gen_range(0..=max_deg);
    let mut exps = vec![0u32; 3];
    for _ in 0..deg {
        exps[rng.gen_range(0..3)] += 1;
    }
    poly(ring, &mono_text(&["x", "y", "z"], &exps))
}

#[test]
fn criterion_03_minor_multiplier_containment() {
    let mut problems = Vec::new();
    let g = guards();
    let mut rng = ChaCha8Rng::seed_from_u64(2003);
    for case in 0..20 {
        let r = rng.gen_range(1..=3usize);
        let d = rng.gen_range(r..=5usize);
        let exts: Vec<String> = (1..=r).map(|i| format!("T{i}")).collect();
        let ext_refs: Vec<&str> = exts.iter().map(|s| s.as_str()).collect();
        let ring = PolyRing::rationals_with_ext(&["x", "y", "z"], &ext_refs);
        let base = ring.base_ring();
        // The first r columns are seeded diagonally so the minor ideal is
        // nonzero; later columns are random monomials of degree <= 2 with
        // one guaranteed nonzero entry each.
        let mut matrix: Vec<Vec<Polynomial>> = vec![Vec::with_capacity(d); r];
        for col in 0..d {
            let forced = if col < r { col } else { rng.gen_range(0..r) };
            for (row, matrix_row) in matrix.iter_mut().enumerate() {
                let entry = if row == forced {
                    let mut m = random_monomial(&mut rng, &base, 2);
                    if col < r && m.degree() == Some(0) {
                        m = random_monomial(&mut rng, &base, 1);
                    }
                    m
                } else if rng.gen_bool(0.5) {
                    random_monomial(&mut rng, &base, 2)
                } else {
                    poly(&base, "0")
                };
                matrix_row.push(entry);
            }
        }
        match LinearModule::from_matrix(&ring, matrix) {
            Ok(m) => match m.check_detadj(1, &g) {
                Ok(rep) if rep.pass => {}
                Ok(_) => problems.push(format!("case {case} (r={r}, d={d}): containment failed")),
                Err(e) => problems.push(format!("case {case}: {e}")),
            },
            Err(e) => problems.push(format!("case {case}: module rejected: {e}")),
        }
    }
    conclude("criterion 03 minor multiplier containment", problems);
}

// -------------------------------------------------------------------
// 4. Certificates over the minor ideal lift to graded certificates.
// -------------------------------------------------------------------

#[test]
fn criterion_04_certificate_lifting() {
    let mut problems = Vec::new();
    let g = guards();
    let base = PolyRing::rationals(&["x", "y"]);
    let full = PolyRing::rationals_with_ext(&["x", "y"], &["T1", "T2"]);
    let column = module(&full, &["x^2*T1", "y^2*T1", "x^2*T2", "y^2*T2"]);
    let target = Ideal::new(
        &base,
        vec![poly(&base, "x^4"), poly(&base, "x^2*y^2"), poly(&base, "y^4")],
    )
    .expect("target ideal builds");
    let z = poly(&full, "T1");

    // The worked example: subject x^3*y with its quadratic relation.
    let cert = IntegralCertificate::new(
        poly(&base, "x^3*y"),
        vec![poly(&base, "0"), poly(&base, "-x^6*y^2")],
        CertificateTarget::Ideal(target.clone()),
    )
    .expect("certificate builds");
    match cert.lift(&z, &column, 1, &g) {
        Ok(lifted) => match lifted.verify(&g) {
            Ok(check) if check.pass => {}
            Ok(_) => problems.push("lifted example certificate does not verify".to_string()),
            Err(e) => problems.push(format!("lifted example verification: {e}")),
        },
        Err(e) => problems.push(format!("example certificate does not lift: {e}")),
    }

    // A single mutated coefficient must be rejected on both routes.
    let mutated = IntegralCertificate::new(
        poly(&base, "x^3*y"),
        vec![poly(&base, "0"), poly(&base, "-x^6*y^3")],
        CertificateTarget::Ideal(target),
    )
    .expect("mutated certificate still well-formed");
    match mutated.verify(&g) {
        Ok(check) if !check.pass => {}
        Ok(_) => problems.push("mutated certificate verified".to_string()),
        Err(e) => problems.push(format!("mutated verification: {e}")),
    }
    if mutated.lift(&z, &column, 1, &g).is_ok() {
        problems.push("mutated certificate lifted".to_string());
    }

    // Ten seeded certificates built from midpoints of region vertices:
    // the subject is the midpoint of two generator exponents of the
    // degree-1 minor ideal, so its square equals their product.
    let mut rng = ChaCha8Rng::seed_from_u64(2004);
    for case in 0..10 {
        let a = rng.gen_range(1..=3u32);
        let b = rng.gen_range(1..=3u32);
        let gens = [
            format!("x^{}*T1", 2 * a),
            format!("y^{}*T1", 2 * b),
            format!("x^{}*T2", 2 * a),
            format!("y^{}*T2", 2 * b),
        ];
        let refs: Vec<&str> = gens.iter().map(|s| s.as_str()).collect();
        let m = module(&full, &refs);
        let minors = match m.sym_minors_ideal(1, &g) {
            Ok(i) => i,
            Err(e) => {
                problems.push(format!("case {case}: minors: {e}"));
                continue;
            }
        };
        let verts = [[4 * a, 0], [2 * a, 2 * b], [0, 4 * b]];
        let pairs = [(0usize, 1usize), (0, 2), (1, 2)];
        let (i, j) = pairs[rng.gen_range(0..3)];
        let mid = [(verts[i][0] + verts[j][0]) / 2, (verts[i][1] + verts[j][1]) / 2];
        let prod = [verts[i][0] + verts[j][0], verts[i][1] + verts[j][1]];
        let subject = poly(&base, &mono_text(&["x", "y"], &mid));
        let a2 = poly(&base, &format!("-{}", mono_text(&["x", "y"], &prod)));
        let cert = match IntegralCertificate::new(
            subject,
            vec![poly(&base, "0"), a2],
            CertificateTarget::Ideal(minors),
        ) {
            Ok(c) => c,
            Err(e) => {
                problems.push(format!("case {case}: certificate: {e}"));
                continue;
            }
        };
        match cert.verify(&g) {
            Ok(check) if check.pass => {}
            Ok(_) => {
                problems.push(format!("case {case}: base certificate fails"));
                continue;
            }
            Err(e) => {
                problems.push(format!("case {case}: base verification: {e}"));
                continue;
            }
        }
        match cert.lift(&z, &m, 1, &g) {
            Ok(lifted) => match lifted.verify(&g) {
                Ok(check) if check.pass => {}
                Ok(_) => problems.push(format!("case {case}: lifted certificate fails")),
                Err(e) => problems.push(format!("case {case}: lifted verification: {e}")),
            },
            Err(e) => problems.push(format!("case {case}: lift: {e}")),
        }
    }
    conclude("criterion 04 certificate lifting", problems);
}

// -------------------------------------------------------------------
// 5. The closure computation matches a brute-force lattice search.
// -------------------------------------------------------------------

#[test]
fn criterion_05_closure_matches_brute_force() {
    let mut problems = Vec::new();
    let g = guards();
    let rings = [
        PolyRing::rationals(&["x"]),
        PolyRing::rationals(&["x", "y"]),
        PolyRing::rationals(&["x", "y", "z"]),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(2005);
    for case in 0..100 {
        let vars = rng.gen_range(1..=3usize);
        let count = rng.gen_range(1..=5usize);
        let gens: Vec<Vec<u32>> = (0..count)
            .map(|_| (0..vars).map(|_| rng.gen_range(0..=6u32)).collect())
            .collect();
        let ideal = MonomialIdeal::new(
            &rings[vars - 1],
            gens.iter().map(|e| Exponent(e.clone())).collect(),
        );
        match ideal.newton_closure(&g) {
            Ok(closure) => {
                let mut got: Vec<Vec<u32>> =
                    closure.exponents().iter().map(|e| e.0.clone()).collect();
                got.sort();
                let want = oracle::box_closure(&gens);
                if got != want {
                    problems.push(format!(
                        "case {case} ({gens:?}): closure {got:?} differs from oracle {want:?}"
                    ));
                }
            }
            Err(e) => problems.push(format!("case {case}: {e}")),
        }
    }
    conclude("criterion 05 closure matches brute force", problems);
}

// -------------------------------------------------------------------
// 6. The staircase table for (x^2, y^2) has the derived sharp exponents.
// -------------------------------------------------------------------

#[test]
fn criterion_06_gap_staircase_for_squares() {
    let mut problems = Vec::new();
    let g = guards();
    let ring = PolyRing::rationals(&["x", "y"]);
    let ideal = MonomialIdeal::new(&ring, vec![Exponent(vec![2, 0]), Exponent(vec![0, 2])]);
    let rep = match rees_gap(&ideal, 0, 8, 1, true, &g) {
        Ok(rep) => rep,
        Err(e) => {
            conclude("criterion 06 gap staircase for squares", vec![format!("gap table: {e}")]);
            return;
        }
    };
    if rep.t != 3 {
        problems.push(format!("threshold t = {} instead of 3", rep.t));
    }
    for row in &rep.rows {
        let n = row.n;
        // Independent route: x^a y^b lies in the m-th power exactly when
        // a/2 + b/2 (integer division) reaches m, and the closure of the
        // n-th power is generated by all monomials of total degree 2n.
        let closure = match ideal.power(n).and_then(|p| p.newton_closure(&g)) {
            Ok(c) => c,
            Err(e) => {
                problems.push(format!("n = {n}: closure: {e}"));
                continue;
            }
        };
        let mut got: Vec<Vec<u32>> = closure.exponents().iter().map(|e| e.0.clone()).collect();
        got.sort();
        let mut want: Vec<Vec<u32>> = (0..=2 * n).map(|a| vec![a, 2 * n - a]).collect();
        want.sort();
        if got != want {
            problems.push(format!("n = {n}: closure generators differ from the degree rule"));
        }
        let rule_sharp = got.iter().map(|v| v[0] / 2 + v[1] / 2).min().expect("nonempty");
        if rule_sharp != n - 1 {
            problems.push(format!("n = {n}: rule sharp {rule_sharp}, expected {}", n - 1));
        }
        if row.m != n / 3 {
            problems.push(format!("n = {n}: staircase {} instead of {}", row.m, n / 3));
        }
        if !row.holds {
            problems.push(format!("n = {n}: containment failed"));
        }
        if row.holds != (row.m <= rule_sharp) {
            problems.push(format!("n = {n}: verdict disagrees with the floor rule"));
        }
        if row.sharp != Some(rule_sharp) {
            problems.push(format!("n = {n}: sharp {:?}, rule says {rule_sharp}", row.sharp));
        }
    }
    conclude("criterion 06 gap staircase for squares", problems);
}

// -------------------------------------------------------------------
// 7. Basis normalization establishes the leading-coordinate condition.
// -------------------------------------------------------------------

#[test]
fn criterion_07_basis_normalization() {
    let mut problems = Vec::new();
    let g = guards();
    let ring = PolyRing::rationals_with_ext(&["x", "y"], &["T1", "T2"]);
    let mut rng = ChaCha8Rng::seed_from_u64(2007);
    for case in 0..10 {
        let m = if case % 2 == 0 {
            // A finite-colength staircase, mixed by a unimodular integer
            // change of the two coordinates.
            let base = ring.base_ring();
            let coef = |v: i64| poly(&base, &v.to_string());
            let a = rng.gen_range(1..=3u32);
            let b = rng.gen_range(1..=3u32);
            let c = rng.gen_range(1..=3u32);
            let d = rng.gen_range(1..=3u32);
            let s = rng.gen_range(-1..=1i64);
            let t = rng.gen_range(-1..=1i64);
            let u = [[1, t], [s, s * t + 1]]; // determinant 1
            let rows = [
                [poly(&base, &format!("x^{a}")), poly(&base, &format!("y^{b}")), poly(&base, "0")],
                [poly(&base, "0"), poly(&base, &format!("x^{c}")), poly(&base, &format!("y^{d}"))],
            ];
            let mixed: Vec<Vec<Polynomial>> = (0..2)
                .map(|i| {
                    (0..3)
                        .map(|jcol| {
                            &(&coef(u[i][0]) * &rows[0][jcol]) + &(&coef(u[i][1]) * &rows[1][jcol])
                        })
                        .collect()
                })
                .collect();
            LinearModule::from_matrix(&ring, mixed).expect("mixed staircase builds")
        } else {
            // A generator with a unit leading coordinate forces an actual
            // change of basis.
            let e = rng.gen_range(1..=3u32);
            let p = rng.gen_range(1..=3u32);
            let q = rng.gen_range(1..=3u32);
            let gens = [
                format!("T1 + x^{e}*T2"),
                format!("x^{p}*T2"),
                format!("y^{q}*T2"),
            ];
            let refs: Vec<&str> = gens.iter().map(|s| s.as_str()).collect();
            module(&ring, &refs)
        };
        match m.normalize_basis(&g) {
            Ok(norm) => {
                if !norm.first_row_in_max_ideal {
                    problems.push(format!("case {case}: leading row escapes the maximal ideal"));
                }
                if norm.enlarged_residue_dim != 1 {
                    problems.push(format!(
                        "case {case}: residue dimension {}",
                        norm.enlarged_residue_dim
                    ));
                }
                for (n, k) in [(2u32, 0u32), (2, 1), (3, 1)] {
                    match norm.transformed.t1_coefficient_check(n, k, &g) {
                        Ok(check) if check.pass => {}
                        Ok(_) => problems
                            .push(format!("case {case}: coefficient check ({n},{k}) failed")),
                        Err(e) => {
                            problems.push(format!("case {case}: coefficient check ({n},{k}): {e}"))
                        }
                    }
                }
            }
            Err(e) => problems.push(format!("case {case}: normalization: {e}")),
        }
    }
    // The documented rejections.
    let free = module(&ring, &["T1", "T2"]);
    match free.normalize_basis(&g) {
        Err(Error::ZeroQuotient) => {}
        Err(e) => problems.push(format!("full module rejected with the wrong error: {e}")),
        Ok(_) => problems.push("full module was normalized".to_string()),
    }
    let pillar = module(&ring, &["x*T1", "x*T2"]);
    match pillar.normalize_basis(&g) {
        Err(Error::NotFiniteLength) => {}
        Err(e) => problems.push(format!("infinite quotient rejected with the wrong error: {e}")),
        Ok(_) => problems.push("infinite-length quotient was normalized".to_string()),
    }
    conclude("criterion 07 basis normalization", problems);
}

// -------------------------------------------------------------------
// 8. The graded generation window closes, with and without extras.
// -------------------------------------------------------------------

#[test]
fn criterion_08_generation_window() {
    let mut problems = Vec::new();
    let g = guards();
    for (name, m) in fixture_modules() {
        match fingen_window(&m, &[], 0, 3, &g) {
            Ok(rep) if rep.pass => {}
            Ok(_) => problems.push(format!("{name}: plain window failed")),
            Err(e) => problems.push(format!("{name}: {e}")),
        }
    }
    // The certified extra x*y*T1 over the column module: integral, so the
    // window closes with offset 1, but it is not a plain product, so the
    // offset-0 window must fail at degree 1 with exactly that witness.
    let full = PolyRing::rationals_with_ext(&["x", "y"], &["T1", "T2"]);
    let column = module(&full, &["x^2*T1", "y^2*T1", "x^2*T2", "y^2*T2"]);
    let extra = CertifiedElement {
        degree: 1,
        certificate: IntegralCertificate::new(
            poly(&full, "x*y*T1"),
            vec![poly(&full, "0"), poly(&full, "-x^2*y^2*T1^2")],
            CertificateTarget::SymPowers { module: column.clone(), degree: 1 },
        )
        .expect("extra certificate builds"),
    };
    match fingen_window(&column, &[extra.clone()], 1, 4, &g) {
        Ok(rep) if rep.pass => {}
        Ok(_) => problems.push("offset-1 window failed".to_string()),
        Err(e) => problems.push(format!("offset-1 window: {e}")),
    }
    match fingen_window(&column, &[extra], 0, 4, &g) {
        Ok(rep) if rep.pass => problems.push("offset-0 window unexpectedly passed".to_string()),
        Ok(rep) => {
            let first_bad = rep.verdicts.iter().find(|v| !v.all_contained);
            match first_bad {
                Some(v) if v.degree == 1
                    && v.failing.iter().any(|f| f.to_string() == "x*y*T1") => {}
                Some(v) => problems.push(format!(
                    "offset-0 window fails at degree {} with {:?}",
                    v.degree,
                    v.failing.iter().map(|f| f.to_string()).collect::<Vec<_>>()
                )),
                None => problems.push("offset-0 window has no failing degree".to_string()),
            }
        }
        Err(e) => problems.push(format!("offset-0 window: {e}")),
    }
    conclude("criterion 08 generation window", problems);
}

// -------------------------------------------------------------------
// 9. Basis-driven membership agrees with a dense linear-system oracle.
// -------------------------------------------------------------------

fn random_dense_poly(
    rng: &mut ChaCha8Rng,
    ring: &Arc<PolyRing>,
    min_deg: u32,
    max_deg: u32,
) -> Polynomial {
    let vars = ring.arity();
    let names: Vec<&str> = (0..vars).map(|i| ring.var_name(i)).collect();
    let terms = rng.gen_range(1..=3usize);
    let mut acc = poly(ring, "0");
    for _ in 0..terms {
        let deg = rng.gen_range(min_deg..=max_deg);
        let mut exps = vec![0u32; vars];
        for _ in 0..deg {
            exps[rng.gen_range(0..vars)] += 1;
        }
        let mut c = 0i64;
        while c == 0 {
            c = rng.gen_range(-4..=4i64);
        }
        acc = &acc + &(&poly(ring, &c.to_string()) * &poly(ring, &mono_text(&names, &exps)));
    }
    acc
}

#[test]
fn criterion_09_membership_matches_linear_oracle() {
    const P1: u64 = 32003;
    const P2: u64 = 65521;
    let mut problems = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(2009);
    let two = PolyRing::rationals(&["x", "y"]);
    let three = PolyRing::rationals(&["x", "y", "z"]);
    let mut checked = 0usize;
    for case in 0..50 {
        // Generators keep every term at positive degree: a unit ideal can
        // demand combination degrees far beyond any fixed truncation
        // margin, while proper ideals of this size stay within it.
        let (ring, gen_deg, probe_deg, margin) =
            if case < 40 { (&two, 4u32, 4u32, 6u64) } else { (&three, 2, 2, 4) };
        let ngens = rng.gen_range(2..=3usize);
        let gens: Vec<Polynomial> =
            (0..ngens).map(|_| random_dense_poly(&mut rng, ring, 1, gen_deg)).collect();
        let ideal = match Ideal::new(ring, gens.clone()) {
            Ok(i) => i,
            Err(e) => {
                problems.push(format!("case {case}: ideal: {e}"));
                continue;
            }
        };
        let mut probes = Vec::new();
        for _ in 0..2 {
            // A constructed member: small multiples of the generators,
            // capped so the combination degree stays within the corpus.
            let mut f = poly(ring, "0");
            for gp in &gens {
                let d = gp.degree().unwrap_or(0) as u32;
                if d > probe_deg {
                    continue;
                }
                let h = random_dense_poly(&mut rng, ring, 0, probe_deg - d);
                f = &f + &(&h * gp);
            }
            probes.push(f);
        }
        for _ in 0..2 {
            probes.push(random_dense_poly(&mut rng, ring, 0, probe_deg));
        }
        for f in probes {
            let member = match ideal.contains_poly(&f) {
                Ok(m) => m,
                Err(e) => {
                    problems.push(format!("case {case}: membership: {e}"));
                    continue;
                }
            };
            let max_deg = f.degree().unwrap_or(0) + margin;
            let solvable = oracle::combination_solvable(&f, &gens, max_deg, P1)
                && oracle::combination_solvable(&f, &gens, max_deg, P2);
            checked += 1;
            if member != solvable {
                problems.push(format!(
                    "case {case}: membership {member} but oracle {solvable} for {f}"
                ));
            }
        }
    }
    if checked != 200 {
        problems.push(format!("only {checked} of 200 probes ran"));
    }
    conclude("criterion 09 membership matches linear oracle", problems);
}

// -------------------------------------------------------------------
// 10. Reports are byte-identical across runs, timings aside.
// -------------------------------------------------------------------

fn without_timing(report: &str) -> String {
    report
        .lines()
        .filter(|line| !line.trim_start().starts_with("\"timing_ms\""))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn criterion_10_deterministic_reports() {
    let mut problems = Vec::new();
    let root = concat!(env!("CARGO_MANIFEST_DIR"), "/../..");
    let fixtures = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures");
    let cases: Vec<Vec<String>> = vec![
        vec!["bv".into(), "--n".into(), "2".into(), format!("{root}/instances/diag-x.json")],
        vec!["closure".into(), format!("{root}/instances/ideal-powers.json")],
        vec!["gap".into(), "--sharp".into(), format!("{root}/instances/ideal-powers.json")],
        vec!["fingen".into(), format!("{root}/instances/column-module.json")],
        vec!["normalize".into(), format!("{fixtures}/swap-module.json")],
    ];
    for args in cases {
        let mut full_args = args.clone();
        full_args.push("--json".into());
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_reeskit"))
                .args(&full_args)
                .output()
                .expect("binary runs")
        };
        let first = run();
        let second = run();
        if first.status.code() != second.status.code() {
            problems.push(format!("{args:?}: exit codes differ"));
            continue;
        }
        let out_a = String::from_utf8(first.stdout).expect("utf8");
        let out_b = String::from_utf8(second.stdout).expect("utf8");
        if without_timing(&out_a) != without_timing(&out_b) {
            problems.push(format!("{args:?}: reports differ between runs"));
        }
        if serde_json::from_str::<serde_json::Value>(&out_a).is_err() {
            problems.push(format!("{args:?}: stdout is not valid JSON"));
        }
    }
    conclude("criterion 10 deterministic reports", problems);
}
