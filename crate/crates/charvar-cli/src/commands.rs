use rayon::prelude::*;
use serde::Serialize;

use charvar::alexander::{bending_parameters, charpoly, twisted_alexander, BendingParameter, BendingValue, SignAssignment};
use charvar::census::{census_row, census_words, Alphabet, CensusRow, RowStatus, CENSUS_SCHEMA};
use charvar::families::{family_report_bounded, FamilyReport, FamilyTag};
use charvar::ideal_engine::{decompose_bounded, Component, ComponentDecomposition};
use charvar::monodromy::{axis_action, invariants, parse_word, word_matrix, AxisAction, MonodromyInvariants, TwistWord};
use charvar::numeric_verify::{
    binary_dihedral_characters, check_fiber_tol, klein_four_extensions, sample_fixed_points, BinaryDihedralCharacter,
    FiberCheckReport, FiberKind, KleinFourExtension, SampleOptions, Tolerances,
};
use charvar::trace_poly::{fixed_ideal, perp_ideals, SignClass};
use charvar::upoly::UPoly;
use charvar::{Error, Result};

use crate::output::{render, Section};
use crate::Common;

pub const ANALYZE_SCHEMA: &str = "charvar-analyze/1";
pub const FAMILY_SCHEMA: &str = "charvar-family/1";
pub const VERIFY_SCHEMA: &str = "charvar-verify/1";

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_BUDGET: u8 = 2;
pub const EXIT_MISMATCH: u8 = 3;

pub struct Outcome {
    pub text: String,
    pub warnings: Vec<String>,
    pub code: u8,
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Budget(_) => EXIT_BUDGET,
        Error::Numeric(_) => EXIT_MISMATCH,
        _ => EXIT_INPUT,
    }
}

fn fmt_complex(z: &num_complex::Complex64) -> String {
    let re = if z.re.abs() < 5e-13 { 0.0 } else { z.re };
    let im = if z.im.abs() < 5e-13 { 0.0 } else { z.im };
    if im == 0.0 {
        format!("{re:.6}")
    } else {
        format!("{re:.6}{im:+.6}i")
    }
}

fn fmt_point(p: &[num_complex::Complex64]) -> String {
    format!("({})", p.iter().map(fmt_complex).collect::<Vec<_>>().join(", "))
}

fn matrix_string(w: &TwistWord) -> String {
    let [a, b, c, d] = word_matrix(w).entries_i64();
    format!("[[{a}, {b}], [{c}, {d}]]")
}

fn invariant_pairs(inv: &MonodromyInvariants, matrix: String) -> Vec<(&'static str, String)> {
    vec![
        ("matrix", matrix),
        ("trace", inv.trace.to_string()),
        ("hyperbolic", inv.hyperbolic.to_string()),
        ("o_phi2", inv.mod2_order.to_string()),
        ("b1", inv.b1.to_string()),
        ("binary_dihedral_count", inv.binary_dihedral_count.map_or("-".into(), |c| c.to_string())),
    ]
}

// ---------------------------------------------------------------- analyze

#[derive(Serialize)]
struct AxisReport {
    action: AxisAction,
    square_action: AxisAction,
    fixed_axes: Vec<usize>,
    fixed_axes_of_square: Vec<usize>,
}

#[derive(Serialize)]
struct PerpReport {
    sign_class: SignClass,
    generators: Vec<String>,
    decomposition: ComponentDecomposition,
}

#[derive(Serialize)]
struct AnalyzeReport {
    schema: &'static str,
    word: String,
    matrix: String,
    invariants: MonodromyInvariants,
    warning: Option<String>,
    fixed_ideal: Vec<String>,
    decomposition: Option<ComponentDecomposition>,
    perp_ideals: Vec<PerpReport>,
    binary_dihedral_characters: Vec<BinaryDihedralCharacter>,
    axes: AxisReport,
    bending_parameters: Vec<BendingParameter>,
}

fn genus_cell(c: &Component) -> String {
    match &c.genus {
        Some(r) => match r.genus {
            Some(g) => g.to_string(),
            None => format!("<= {}", r.baker_bound),
        },
        None => "?".into(),
    }
}

fn component_rows(section: &mut Section, label: &str, d: &ComponentDecomposition) {
    for (i, c) in d.components.iter().enumerate() {
        let ideal = c.ideal.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ");
        section.push(vec![
            label.to_string(),
            (i + 1).to_string(),
            c.kind.to_string(),
            c.geometric_count.to_string(),
            genus_cell(c),
            format!("{:?}", c.absolutely_irreducible).to_lowercase(),
            ideal,
        ]);
    }
}

fn fixed_axes(a: &AxisAction) -> Vec<usize> {
    (0..3).filter(|&i| a.fixes_axis(i)).map(|i| i + 1).collect()
}

fn bending_cell(b: &BendingParameter) -> String {
    match &b.value {
        BendingValue::SquareRootOfRoots { polynomial, simple_roots } => {
            format!("m0^2 root of {polynomial} (simple roots: {simple_roots})")
        }
        BendingValue::PlusMinusOne => "m0 = +1 or -1".into(),
    }
}

pub fn analyze(text: &str, common: &Common) -> Result<Outcome> {
    let w = parse_word(text)?;
    let inv = invariants(&w);
    let act = axis_action(&w);
    let sq = act.power(2);
    let mut report = AnalyzeReport {
        schema: ANALYZE_SCHEMA,
        word: w.to_string(),
        matrix: matrix_string(&w),
        invariants: inv.clone(),
        warning: None,
        fixed_ideal: Vec::new(),
        decomposition: None,
        perp_ideals: Vec::new(),
        binary_dihedral_characters: Vec::new(),
        axes: AxisReport {
            action: act,
            square_action: sq,
            fixed_axes: fixed_axes(&act),
            fixed_axes_of_square: fixed_axes(&sq),
        },
        bending_parameters: Vec::new(),
    };
    let mut warnings = Vec::new();
    if inv.hyperbolic {
        let ci = fixed_ideal(&w, SignClass::Id)?;
        report.fixed_ideal = ci.generators.iter().map(|g| g.to_string()).collect();
        report.decomposition = Some(decompose_bounded(&ci, &w, common.budget)?);
        for p in perp_ideals(&w)? {
            let decomposition = decompose_bounded(&p, &w, common.budget)?;
            report.perp_ideals.push(PerpReport {
                sign_class: p.sign_class,
                generators: p.generators.iter().map(|g| g.to_string()).collect(),
                decomposition,
            });
        }
        report.binary_dihedral_characters = binary_dihedral_characters(&w)?;
        report.bending_parameters = bending_parameters(&w)?;
    } else {
        let msg = format!("{} is not hyperbolic (trace {}); only monodromy invariants are reported", report.word, inv.trace);
        warnings.push(msg.clone());
        report.warning = Some(msg);
    }

    let mut sections = vec![Section::key_value("Invariants", invariant_pairs(&inv, report.matrix.clone()))];
    if !report.fixed_ideal.is_empty() {
        let mut s = Section::new("Fixed ideal", &["generator"]);
        for g in &report.fixed_ideal {
            s.push(vec![g.clone()]);
        }
        sections.push(s);
    }
    let headers = ["ideal", "component", "kind", "geometric_count", "genus", "absolutely_irreducible", "generators"];
    let mut comps = Section::new("Components", &headers);
    if let Some(d) = &report.decomposition {
        component_rows(&mut comps, "id", d);
    }
    for p in &report.perp_ideals {
        component_rows(&mut comps, &p.sign_class.to_string(), &p.decomposition);
    }
    sections.push(comps);
    let mut bd = Section::new("Binary dihedral characters", &["theta_s", "theta_p", "character"]);
    for c in &report.binary_dihedral_characters {
        bd.push(vec![
            format!("{}/{}", c.theta_s.0, c.theta_s.1),
            format!("{}/{}", c.theta_p.0, c.theta_p.1),
            fmt_point(&c.character),
        ]);
    }
    sections.push(bd);
    let axis_str = |a: &AxisAction| format!("{:?} parities {:?}", a.permutation, a.sign_parities);
    sections.push(Section::key_value(
        "Axes",
        vec![
            ("action", axis_str(&act)),
            ("square_action", axis_str(&sq)),
            ("fixed_axes", format!("{:?}", report.axes.fixed_axes)),
            ("fixed_axes_of_square", format!("{:?}", report.axes.fixed_axes_of_square)),
        ],
    ));
    let mut bend = Section::new("Bending parameters", &["sign", "twisted_alexander", "value"]);
    for b in &report.bending_parameters {
        bend.push(vec![b.sign.to_string(), b.twisted_alexander.clone(), bending_cell(b)]);
    }
    sections.push(bend);
    let text = render(common.format, &format!("Analysis of {}", report.word), &report, &sections);
    Ok(Outcome { text, warnings, code: EXIT_OK })
}

// ---------------------------------------------------------------- census

#[derive(Serialize)]
struct CensusReport {
    schema: &'static str,
    alphabet: Option<Alphabet>,
    max_length: Option<u64>,
    dedup: bool,
    budget: u64,
    rows: Vec<CensusRow>,
}

fn parse_word_list(list: &str) -> Result<Vec<TwistWord>> {
    list.split(',').map(str::trim).filter(|s| !s.is_empty()).map(parse_word).collect()
}

pub fn census(max_length: u64, alphabet: &str, words: Option<&str>, no_dedup: bool, common: &Common) -> Result<Outcome> {
    let alphabet: Alphabet = alphabet.parse()?;
    let (list, alphabet, max_length) = match words {
        Some(l) => (parse_word_list(l)?, None, None),
        None => (census_words(max_length, alphabet, !no_dedup), Some(alphabet), Some(max_length)),
    };
    let rows: Vec<CensusRow> = list.par_iter().map(|w| census_row(w, common.budget)).collect::<Result<_>>()?;
    let mut warnings = Vec::new();
    let exceeded: Vec<&str> =
        rows.iter().filter(|r| r.status == RowStatus::BudgetExceeded).map(|r| r.word.as_str()).collect();
    if !exceeded.is_empty() {
        warnings.push(format!("budget exceeded for {}", exceeded.join(", ")));
    }
    let mut table =
        Section::new("Census", &["word", "trace", "o_phi2", "b1", "components", "genera", "binary_dihedral", "status"]);
    for r in &rows {
        table.push(vec![
            r.word.clone(),
            r.trace.to_string(),
            r.o_phi2.to_string(),
            r.b1.to_string(),
            r.components.to_string(),
            r.genera_string(),
            r.binary_dihedral_count.map_or("-".into(), |c| c.to_string()),
            match r.status {
                RowStatus::Certified => "certified",
                RowStatus::Undecided => "undecided",
                RowStatus::BudgetExceeded => "budget_exceeded",
            }
            .into(),
        ]);
    }
    let code = if exceeded.is_empty() { EXIT_OK } else { EXIT_BUDGET };
    let report = CensusReport { schema: CENSUS_SCHEMA, alphabet, max_length, dedup: !no_dedup, budget: common.budget, rows };
    let text = render(common.format, "Census", &report, &[table]);
    Ok(Outcome { text, warnings, code })
}

// ---------------------------------------------------------------- family

#[derive(Serialize)]
struct FamilyOutput {
    schema: &'static str,
    family: FamilyTag,
    reports: Vec<FamilyReport>,
}

fn parse_range(r: &str) -> Result<Vec<i64>> {
    let bad = || Error::Parse { pos: 0, msg: format!("range '{r}' is not of the form a..b") };
    let (a, b) = r.split_once("..").ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().parse().map_err(|_| bad())?;
    Ok((a..=b).filter(|n| n.rem_euclid(2) == 1).collect())
}

pub fn family(tag: &str, n: &[i64], range: Option<&str>, common: &Common) -> Result<Outcome> {
    let tag: FamilyTag = tag.parse()?;
    let mut values = n.to_vec();
    if let Some(r) = range {
        values.extend(parse_range(r)?);
    }
    if values.is_empty() {
        values = vec![3, 5, 7];
    }
    let reports: Vec<FamilyReport> =
        values.par_iter().map(|&n| family_report_bounded(tag, n, common.budget)).collect::<Result<_>>()?;
    let mut table = Section::new(
        "Family reports",
        &["family", "n", "k", "word", "trace", "components", "genera", "binary_dihedral", "passed", "failed_checks"],
    );
    let mut failures = Vec::new();
    for r in &reports {
        let failed: Vec<String> = r.checks.iter().filter(|c| !c.pass).map(|c| c.field.clone()).collect();
        if !failed.is_empty() {
            failures.push(format!("{}{}: {}", r.family, r.n, failed.join(", ")));
        }
        let genera = r.decomposition.genera().iter().map(|g| g.map_or("?".into(), |g| g.to_string())).collect::<Vec<_>>();
        table.push(vec![
            r.family.to_string(),
            r.n.to_string(),
            r.k.to_string(),
            r.word.clone(),
            r.trace.to_string(),
            r.decomposition.curve_count().to_string(),
            genera.join(","),
            r.binary_dihedral_count.map_or("-".into(), |c| c.to_string()),
            r.passed().to_string(),
            failed.join(" "),
        ]);
    }
    let code = if failures.is_empty() { EXIT_OK } else { EXIT_MISMATCH };
    let warnings = failures.into_iter().map(|f| format!("mismatch in {f}")).collect();
    let out = FamilyOutput { schema: FAMILY_SCHEMA, family: tag, reports };
    let text = render(common.format, &format!("Family {tag}"), &out, &[table]);
    Ok(Outcome { text, warnings, code })
}

// ---------------------------------------------------------------- verify

#[derive(Serialize)]
struct FiberSummary {
    pairs: usize,
    binary_dihedral: usize,
    abelian_family: usize,
    failures: Vec<String>,
    max_residual: f64,
    all_eps_related: bool,
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

#[derive(Serialize)]
struct TwistedEntry {
    sign: SignAssignment,
    polynomial: String,
}

#[derive(Serialize)]
struct VerifyReport {
    schema: &'static str,
    word: String,
    seed: u64,
    samples_requested: usize,
    samples_found: usize,
    tolerances: Tolerances,
    fibers: FiberSummary,
    binary_dihedral_characters: Vec<BinaryDihedralCharacter>,
    klein_four: Vec<KleinFourExtension>,
    charpoly: String,
    twisted_alexander: Vec<TwistedEntry>,
    checks: Vec<Check>,
}

fn summarize_fibers(results: &[Result<FiberCheckReport>], tol: f64) -> FiberSummary {
    let mut s = FiberSummary {
        pairs: 0,
        binary_dihedral: 0,
        abelian_family: 0,
        failures: Vec::new(),
        max_residual: 0.0,
        all_eps_related: true,
    };
    for r in results {
        match r {
            Ok(f) => {
                s.max_residual = s.max_residual.max(f.residual);
                match f.kind {
                    FiberKind::Pair => {
                        s.pairs += 1;
                        if f.extensions != 2 || !f.eps_related {
                            s.all_eps_related = false;
                            s.failures.push(format!("fiber over {} has {} extensions", fmt_point(&f.point), f.extensions));
                        }
                    }
                    FiberKind::BinaryDihedral => s.binary_dihedral += 1,
                    FiberKind::AbelianFamily => s.abelian_family += 1,
                }
                if f.residual >= tol {
                    s.failures.push(format!("residual {:.3e} over {}", f.residual, fmt_point(&f.point)));
                }
            }
            Err(e) => s.failures.push(e.to_string()),
        }
    }
    s
}

pub fn verify(text: &str, samples: usize, seed: u64, tol: f64, common: &Common) -> Result<Outcome> {
    if !(tol > 0.0) {
        return Err(Error::OutOfRange(format!("tolerance must be positive, got {tol}")));
    }
    let w = parse_word(text)?;
    let inv = invariants(&w);
    if !inv.hyperbolic {
        return Err(Error::NotHyperbolic { trace: inv.trace });
    }
    let tolerances = Tolerances { relation: tol, membership: tol, ..Tolerances::default() };
    let points = sample_fixed_points(&w, samples, &SampleOptions { seed, ..SampleOptions::default() })?;
    let results: Vec<Result<FiberCheckReport>> = points.par_iter().map(|p| check_fiber_tol(&w, *p, &tolerances)).collect();
    let fibers = summarize_fibers(&results, tol);
    let bd = binary_dihedral_characters(&w)?;
    let k4 = klein_four_extensions(&w)?;
    let cp = charpoly(&w);
    let m_minus_one = UPoly::from_ints(&[-1, 1]);

    let mut twisted = Vec::new();
    let mut ta_ok = true;
    for h in SignAssignment::all().into_iter().filter(|h| h.is_invariant(&w)) {
        let delta = twisted_alexander(&w, h)?;
        let expected = if h.is_trivial() { cp.clone() } else { m_minus_one.clone() };
        ta_ok &= delta == expected && delta.is_squarefree();
        twisted.push(TwistedEntry { sign: h, polynomial: delta.display("m") });
    }

    let formula = inv.binary_dihedral_count.unwrap_or(0);
    let k4_expected = 1usize << (inv.b1.saturating_sub(1));
    let checks = vec![
        Check {
            name: "samples",
            pass: points.len() == samples,
            detail: format!("{} of {} requested points found", points.len(), samples),
        },
        Check {
            name: "fiber_pairs",
            pass: fibers.failures.is_empty() && fibers.all_eps_related,
            detail: format!("{} pair fibers, max residual {:.3e}", fibers.pairs, fibers.max_residual),
        },
        Check {
            name: "binary_dihedral_count",
            pass: bd.len() as u64 == formula,
            detail: format!("enumerated {}, formula {}", bd.len(), formula),
        },
        Check {
            name: "klein_four_count",
            pass: k4.len() == k4_expected,
            detail: format!("found {}, expected {}", k4.len(), k4_expected),
        },
        Check {
            name: "twisted_alexander",
            pass: ta_ok,
            detail: format!("trivial sign matches {}, other invariant signs give m - 1", cp.display("m")),
        },
    ];
    let mut warnings = Vec::new();
    let mut code = EXIT_OK;
    for c in checks.iter().filter(|c| !c.pass) {
        warnings.push(format!("check {} failed: {}", c.name, c.detail));
        code = EXIT_MISMATCH;
    }

    let mut check_table = Section::new("Checks", &["check", "pass", "detail"]);
    for c in &checks {
        check_table.push(vec![c.name.to_string(), c.pass.to_string(), c.detail.clone()]);
    }
    let mut k4_table = Section::new("Klein four extensions", &["signs", "quadruple", "residual"]);
    for k in &k4 {
        k4_table.push(vec![
            format!("({:+}, {:+})", k.signs.0, k.signs.1),
            format!("{:?}", k.quadruple.map(|q| q.round() as i64)),
            format!("{:.3e}", k.residual),
        ]);
    }
    let mut ta_table = Section::new("Twisted Alexander polynomials", &["sign", "polynomial"]);
    for t in &twisted {
        ta_table.push(vec![t.sign.to_string(), t.polynomial.clone()]);
    }
    let report = VerifyReport {
        schema: VERIFY_SCHEMA,
        word: w.to_string(),
        seed,
        samples_requested: samples,
        samples_found: points.len(),
        tolerances,
        fibers,
        binary_dihedral_characters: bd,
        klein_four: k4,
        charpoly: cp.display("m"),
        twisted_alexander: twisted,
        checks,
    };
    let text = render(
        common.format,
        &format!("Verification of {}", report.word),
        &report,
        &[check_table, k4_table, ta_table],
    );
    Ok(Outcome { text, warnings, code })
}
