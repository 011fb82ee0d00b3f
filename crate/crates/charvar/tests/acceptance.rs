//! Acceptance harness: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use nalgebra::Matrix2;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use charvar::alexander::{twisted_alexander, SignAssignment};
use charvar::census::{census_row, CensusRow, GenusEntry};
use charvar::families::{family_report, p_collapse_check, w1_factorization, FamilyTag};
use charvar::ideal_engine::{decompose, ComponentKind, Verdict};
use charvar::monodromy::{axis_action, parse_word, TwistWord};
use charvar::newton_genus::GenusStatus;
use charvar::numeric_verify::{
    binary_dihedral_characters, bp_matrices, bp_regression, check_fiber, klein_four_extensions, sample_fixed_points,
    trace_identity_suite, FiberKind, SampleOptions,
};
use charvar::poly::Poly;
use charvar::trace_poly::{fixed_ideal, induced_automorphism, SignClass};
use charvar::upoly::UPoly;

type Mat2C = Matrix2<Complex64>;

/// (word, trace, order of φ mod 2, component count, genera largest first)
type TableRow = (&'static str, i64, u8, usize, &'static [u64]);

const TABLE_POSITIVE: &[TableRow] = &[
    ("A^2*B^3", -4, 2, 1, &[0]),
    ("A^3*B^2", -4, 2, 1, &[0]),
    ("A*B^5", -3, 3, 1, &[0]),
    ("A^2*B^4", -6, 1, 2, &[0, 0]),
    ("A^3*B^3", -7, 3, 3, &[0, 0, 0]),
    ("A^4*B^2", -6, 1, 2, &[0, 0]),
];

const TABLE_NEGATIVE: &[TableRow] = &[
    ("A*B^-1", 3, 3, 1, &[0]),
    ("A*B^-2", 4, 2, 1, &[0]),
    ("A^2*B^-1", 4, 2, 1, &[0]),
    ("A*B^-3", 5, 3, 1, &[0]),
    ("A^2*B^-2", 6, 1, 2, &[0, 0]),
    ("A^3*B^-1", 5, 3, 1, &[0]),
    ("A*B^-1*A*B^-1", 7, 3, 3, &[0, 0, 0]),
    ("A*B^-4", 6, 2, 2, &[0, 0]),
    ("A^2*B^-3", 8, 2, 1, &[1]),
    ("A^3*B^-2", 8, 2, 1, &[1]),
    ("A^4*B^-1", 6, 2, 2, &[0, 0]),
    ("A*B^-1*A*B^-2", 10, 2, 3, &[0, 0, 0]),
    ("A*B^-1*A^2*B^-1", 10, 2, 3, &[0, 0, 0]),
    ("A*B^-5", 7, 3, 1, &[0]),
    ("A^2*B^-4", 10, 1, 2, &[1, 0]),
    ("A^3*B^-3", 11, 3, 2, &[1, 0]),
    ("A^4*B^-2", 10, 1, 2, &[1, 0]),
    ("A^5*B^-1", 7, 3, 1, &[0]),
    ("A*B^-1*A*B^-3", 13, 3, 3, &[1, 0, 0]),
    ("A*B^-1*A^2*B^-2", 15, 3, 1, &[2]),
    ("A*B^-1*A^3*B^-1", 13, 3, 3, &[1, 0, 0]),
    ("A*B^-2*A*B^-2", 14, 1, 5, &[0, 0, 0, 0, 0]),
    ("A*B^-2*A^2*B^-1", 15, 3, 1, &[2]),
    ("A*B^-1*A*B^-1*A*B^-1", 18, 1, 7, &[0, 0, 0, 0, 0, 0, 0]),
];

fn table_rows() -> impl Iterator<Item = &'static TableRow> {
    TABLE_POSITIVE.iter().chain(TABLE_NEGATIVE)
}

fn census_word_list() -> Vec<TwistWord> {
    table_rows().map(|r| parse_word(r.0).expect("table words parse")).collect()
}

// ------------------------------------------------------------ integer oracles

type IMat = [[i64; 2]; 2];

fn imul(a: &IMat, b: &IMat) -> IMat {
    let mut m = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            m[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    m
}

/// Product of `A = [[1,1],[0,1]]`, `B = [[1,0],[-1,1]]` powers read from a
/// word such as `A^2*B^-1`.
fn word_matrix_oracle(word: &str) -> IMat {
    let a: IMat = [[1, 1], [0, 1]];
    let ai: IMat = [[1, -1], [0, 1]];
    let b: IMat = [[1, 0], [-1, 1]];
    let bi: IMat = [[1, 0], [1, 1]];
    let mut m: IMat = [[1, 0], [0, 1]];
    for syl in word.split('*') {
        let (g, e) = match syl.split_once('^') {
            Some((g, e)) => (g, e.parse::<i64>().unwrap()),
            None => (syl, 1),
        };
        let step = match (g, e > 0) {
            ("A", true) => a,
            ("A", false) => ai,
            ("B", true) => b,
            _ => bi,
        };
        for _ in 0..e.abs() {
            m = imul(&m, &step);
        }
    }
    m
}

/// `dim H₁(M_φ; Z/2) = 1 + dim ker(φ_* − I mod 2)`.
fn b1_oracle(m: &IMat) -> u32 {
    let r = [[(m[0][0] - 1).rem_euclid(2), m[0][1].rem_euclid(2)], [m[1][0].rem_euclid(2), (m[1][1] - 1).rem_euclid(2)]];
    let rank = if r == [[0, 0], [0, 0]] {
        0
    } else if (r[0][0] * r[1][1] - r[0][1] * r[1][0]).rem_euclid(2) == 1 {
        2
    } else {
        1
    };
    3 - rank
}

// ------------------------------------------------------------ reporting

struct Verdicts {
    lines: Vec<(u32, bool, String)>,
}

impl Verdicts {
    fn record(&mut self, n: u32, pass: bool, detail: String) {
        println!("criterion {n:>2}: {} ({detail})", if pass { "PASS" } else { "FAIL" });
        self.lines.push((n, pass, detail));
    }
}

fn secs(d: Duration) -> String {
    format!("{:.1}s", d.as_secs_f64())
}

fn parallel_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let threads = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(4).min(items.len().max(1));
    let next = std::sync::atomic::AtomicUsize::new(0);
    let mut slots: Vec<Option<R>> = (0..items.len()).map(|_| None).collect();
    let results = std::sync::Mutex::new(&mut slots);
    std::thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                if i >= items.len() {
                    break;
                }
                let r = f(&items[i]);
                results.lock().unwrap()[i] = Some(r);
            });
        }
    });
    slots.into_iter().map(|r| r.expect("every item computed")).collect()
}

// ------------------------------------------------------------ criteria

fn genus_matches(entry: &GenusEntry, printed: u64) -> (bool, bool) {
    match entry {
        GenusEntry::Certified(g) => (*g == printed, true),
        GenusEntry::Bounds { lower, upper } => (*lower <= printed && printed <= *upper, false),
    }
}

fn criterion_1(v: &mut Verdicts) {
    let start = Instant::now();
    let words: Vec<&TableRow> = table_rows().collect();
    let rows: Vec<charvar::Result<CensusRow>> =
        parallel_map(&words, |r| census_row(&parse_word(r.0).unwrap(), charvar::ideal_engine::DEFAULT_MAX_STEPS));
    let elapsed = start.elapsed();
    let mut mismatches = Vec::new();
    let mut uncertified = 0;
    for (t, row) in words.iter().zip(rows) {
        let row = match row {
            Ok(r) => r,
            Err(e) => {
                mismatches.push(format!("{}: {e}", t.0));
                continue;
            }
        };
        let mut certified = row.undecided == 0;
        let mut ok = row.trace == t.1 && row.o_phi2 == t.2 && row.components == t.3 && row.genera.len() == t.4.len();
        if ok {
            for (entry, printed) in row.genera.iter().zip(t.4) {
                let (fits, cert) = genus_matches(entry, *printed);
                ok &= fits;
                certified &= cert;
            }
        }
        if !certified {
            uncertified += 1;
        }
        if !ok {
            mismatches.push(format!("{}: got {} components, genera [{}]", t.0, row.components, row.genera_string()));
        }
    }
    let pass = mismatches.is_empty() && uncertified <= 2 && elapsed < Duration::from_secs(300);
    v.record(
        1,
        pass,
        format!(
            "{} rows, {} mismatches, {} uncertified, {}{}",
            words.len(),
            mismatches.len(),
            uncertified,
            secs(elapsed),
            if mismatches.is_empty() { String::new() } else { format!("; {}", mismatches.join("; ")) }
        ),
    );
}

fn criterion_2(v: &mut Verdicts) {
    let mut bad = Vec::new();
    for r in table_rows() {
        let m = word_matrix_oracle(r.0);
        let tr = m[0][0] + m[1][1];
        let b1 = b1_oracle(&m);
        let count = binary_dihedral_characters(&parse_word(r.0).unwrap()).map(|c| c.len() as i64).unwrap_or(-1);
        // count = |2 + tr| / 2 - 2^(b1 - 2), compared after multiplying by 4
        if 4 * count != 2 * (2 + tr).abs() - (1 << b1) {
            bad.push(format!("{}: {count}", r.0));
        }
    }
    let n = table_rows().count();
    v.record(2, bad.is_empty(), format!("{} of {n} words match the formula{}", n - bad.len(), join_failures(&bad)));
}

fn criterion_3(v: &mut Verdicts) {
    let start = Instant::now();
    let mut bad = Vec::new();
    for n in (3..=15).step_by(2) {
        let r = match family_report(FamilyTag::M, n) {
            Ok(r) => r,
            Err(e) => {
                bad.push(format!("M{n}: {e}"));
                continue;
            }
        };
        let comps: Vec<_> = r.decomposition.components.iter().filter(|c| c.is_curve()).collect();
        let irreducible = comps.len() == 1 && comps[0].geometric_count == 1 && comps[0].absolutely_irreducible == Verdict::Yes;
        let genus0 = r.decomposition.genera() == vec![Some(0)];
        let dihedral = r.binary_dihedral_count == Some(((n - 3) / 2) as u64);
        let lo = num_rational::BigRational::new((n - 7).into(), 4.into());
        let hi = num_rational::BigRational::new((n - 3).into(), 2.into());
        let bounds = r.genus_bounds == Some((lo.to_string(), hi.to_string()));
        if !(irreducible && genus0 && dihedral && bounds) {
            bad.push(format!(
                "M{n}: irreducible {irreducible} genus0 {genus0} dihedral {dihedral} bounds {:?}",
                r.genus_bounds
            ));
        }
    }
    let elapsed = start.elapsed();
    let pass = bad.is_empty() && elapsed < Duration::from_secs(30);
    v.record(3, pass, format!("n = 3..15 odd, {}{}", secs(elapsed), join_failures(&bad)));
}

fn join_failures(bad: &[String]) -> String {
    if bad.is_empty() {
        String::new()
    } else {
        format!("; {}", bad.join("; "))
    }
}

fn collinear(points: &[(i64, i64)]) -> bool {
    if points.len() <= 2 {
        return true;
    }
    let (x0, y0) = points[0];
    let (x1, y1) = points[1];
    points[2..].iter().all(|&(x, y)| (x1 - x0) * (y - y0) - (y1 - y0) * (x - x0) == 0)
}

fn criterion_4(v: &mut Verdicts) {
    let start = Instant::now();
    let mut bad = Vec::new();
    for k in 1..=5i64 {
        let n = 2 * k + 1;
        let r = match family_report(FamilyTag::N, n) {
            Ok(r) => r,
            Err(e) => {
                bad.push(format!("N{n}: {e}"));
                continue;
            }
        };
        let g = &r.curve_genus;
        let irr = charvar::ideal_engine::absolutely_irreducible(&r.curve.polynomial) == Verdict::Yes;
        let certified = g.status == GenusStatus::Certified && g.genus == Some(k as u64);
        let interior = g.polygon.interior_points();
        let hyper = interior.len() as i64 == k && collinear(&interior);
        let pipeline = r.decomposition.genera() == vec![Some(k as u64)];
        if !(irr && r.nondegenerate && r.smooth_off_axes && certified && hyper && pipeline) {
            bad.push(format!(
                "N{n}: irreducible {irr} nondegenerate {} smooth {} genus {:?} collinear {hyper} pipeline {:?}",
                r.nondegenerate,
                r.smooth_off_axes,
                g.genus,
                r.decomposition.genera()
            ));
        }
    }
    let elapsed = start.elapsed();
    let pass = bad.is_empty() && elapsed < Duration::from_secs(30);
    v.record(4, pass, format!("k = 1..5, {}{}", secs(elapsed), join_failures(&bad)));
}

fn same_up_to_sign(a: &Poly, b: &Poly) -> bool {
    a == b || *a == -b
}

fn criterion_5(v: &mut Verdicts) {
    let start = Instant::now();
    let mut bad = Vec::new();
    for k in 1..=5i64 {
        let n = 2 * k + 1;
        let r = match family_report(FamilyTag::L, n) {
            Ok(r) => r,
            Err(e) => {
                bad.push(format!("L{n}: {e}"));
                continue;
            }
        };
        let d = &r.decomposition;
        let count = d.curve_count() == (k + 2) as usize && d.undecided_count() == 0;
        let lines_rational = d
            .components
            .iter()
            .filter(|c| c.kind == ComponentKind::Line)
            .all(|c| c.genus.as_ref().and_then(|g| g.genus) == Some(0));
        let line_count: usize =
            d.components.iter().filter(|c| c.kind == ComponentKind::Line).map(|c| c.geometric_count).sum();
        let g = &r.curve_genus;
        let certified = g.status == GenusStatus::Certified && g.genus == Some(k as u64);
        let interior = g.polygon.interior_points();
        let hyper = interior.len() as i64 == k && collinear(&interior);
        let mut expected = vec![Some(k as u64)];
        expected.extend(std::iter::repeat_n(Some(0), (k + 1) as usize));
        let genera = d.genera() == expected;
        if !(count && lines_rational && line_count == (k + 1) as usize && certified && hyper && genera) {
            bad.push(format!(
                "L{n}: components {} lines {line_count} rational {lines_rational} genus {:?} collinear {hyper}",
                d.curve_count(),
                g.genus
            ));
        }
    }
    let w1 = match w1_factorization() {
        Ok(f) => {
            let want = [Poly::parse("y + 1").unwrap(), Poly::parse("x*y - x - 1").unwrap()];
            let factors: Vec<&Poly> = f.factors.iter().filter(|(_, m)| *m == 1).map(|(p, _)| p).collect();
            f.factors.len() == 2
                && factors.len() == 2
                && want.iter().all(|w| factors.iter().any(|p| same_up_to_sign(p, w)))
                && same_up_to_sign(&f.expand(), &(&want[0] * &want[1]))
        }
        Err(_) => false,
    };
    if !w1 {
        bad.push("W1 does not factor as (y+1)(xy-x-1)".into());
    }
    let elapsed = start.elapsed();
    v.record(5, bad.is_empty(), format!("k = 1..5 and W1, {}{}", secs(elapsed), join_failures(&bad)));
}

fn criterion_6(v: &mut Verdicts) {
    let bad: Vec<String> = (0..=9).filter(|&n| p_collapse_check(n) != Ok(true)).map(|n| format!("n={n}")).collect();
    v.record(6, bad.is_empty(), format!("n = 0..9{}", join_failures(&bad)));
}

fn random_hyperbolic_words(count: usize, max_len: i64, seed: u64) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = BTreeSet::new();
    while out.len() < count {
        let pairs = rng.gen_range(1..=2);
        let mut syllables = Vec::new();
        let mut length = 0;
        for _ in 0..pairs {
            for g in ["A", "B"] {
                let e: i64 = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
                length += e.abs();
                syllables.push(if e == 1 { g.to_string() } else { format!("{g}^{e}") });
            }
        }
        if length > max_len {
            continue;
        }
        let word = syllables.join("*");
        let m = word_matrix_oracle(&word);
        if (m[0][0] + m[1][1]).abs() > 2 {
            out.insert(word);
        }
    }
    out.into_iter().collect()
}

fn criterion_7(v: &mut Verdicts) {
    let words = random_hyperbolic_words(50, 8, 2024);
    let m_minus_one = UPoly::from_ints(&[-1, 1]);
    let mut bad = Vec::new();
    let mut nontrivial = 0;
    for word in &words {
        let w = parse_word(word).unwrap();
        let m = word_matrix_oracle(word);
        let tr = m[0][0] + m[1][1];
        let charpoly = UPoly::from_ints(&[1, -tr, 1]);
        let trivial = twisted_alexander(&w, SignAssignment::trivial());
        let simple = tr * tr - 4 != 0 && trivial.as_ref().map(|d| d.is_squarefree()).unwrap_or(false);
        if trivial.as_ref().map(|d| d.monic()) != Ok(charpoly) || !simple {
            bad.push(format!("{word}: trivial sign gives {:?}", trivial.map(|d| d.display("m"))));
        }
        for h in SignAssignment::all().into_iter().filter(|h| !h.is_trivial() && h.is_invariant(&w)) {
            nontrivial += 1;
            let d = twisted_alexander(&w, h);
            if d.as_ref().map(|d| d.monic()) != Ok(m_minus_one.clone()) {
                bad.push(format!("{word}: sign {h} gives {:?}", d.map(|d| d.display("m"))));
            }
        }
    }
    v.record(
        7,
        bad.is_empty(),
        format!("{} words, {nontrivial} nontrivial invariant signs{}", words.len(), join_failures(&bad)),
    );
}

fn criterion_8(v: &mut Verdicts) {
    let start = Instant::now();
    let ti = trace_identity_suite(1000, 11);
    let identities = ti.max_relative_error.iter().all(|e| *e < 1e-9);
    let words = census_word_list();
    let per_word = parallel_map(&words, |w| {
        let pts = match sample_fixed_points(w, 50, &SampleOptions::default()) {
            Ok(p) => p,
            Err(e) => return (0usize, 0.0f64, vec![format!("{w}: {e}")]),
        };
        let mut bad = Vec::new();
        let mut max_res = 0.0f64;
        if pts.len() < 50 {
            bad.push(format!("{w}: only {} samples", pts.len()));
        }
        for p in &pts {
            match check_fiber(w, *p) {
                Ok(f) => {
                    max_res = max_res.max(f.residual);
                    if f.kind != FiberKind::Pair || f.extensions != 2 || !f.eps_related || f.residual >= 1e-8 {
                        bad.push(format!("{w}: fiber {:?} with {} extensions", f.kind, f.extensions));
                    }
                }
                Err(e) => bad.push(format!("{w}: {e}")),
            }
        }
        (pts.len(), max_res, bad)
    });
    let samples: usize = per_word.iter().map(|r| r.0).sum();
    let max_res = per_word.iter().map(|r| r.1).fold(0.0, f64::max);
    let bad: Vec<String> = per_word.into_iter().flat_map(|r| r.2).take(5).collect();
    v.record(
        8,
        identities && bad.is_empty(),
        format!(
            "trace identity errors {:?}, {samples} fibers, max residual {max_res:.2e}, {}{}",
            ti.max_relative_error.map(|e| format!("{e:.1e}")),
            secs(start.elapsed()),
            join_failures(&bad)
        ),
    );
}

/// Element of `{a, b, ab}` fixed by `φ` modulo 2, as an index into the
/// quadruple `(tr T, tr AT, tr BT, tr ABT)`.
fn fixed_mod2_index(w: &TwistWord) -> Option<usize> {
    let (ia, ib) = w.free_images();
    let ea = ia.abelianization();
    let eb = ib.abelianization();
    let image = |v: (i64, i64)| ((v.0 * ea.0 + v.1 * eb.0).rem_euclid(2), (v.0 * ea.1 + v.1 * eb.1).rem_euclid(2));
    [((1, 0), 1), ((0, 1), 2), ((1, 1), 3)].into_iter().find(|(v, _)| image(*v) == *v).map(|(_, i)| i)
}

fn quadruple_key(q: &[f64; 4]) -> Vec<i64> {
    q.iter().map(|x| x.round() as i64).collect()
}

fn criterion_9(v: &mut Verdicts) {
    let mut bad = Vec::new();
    let mut checked = 0;
    for r in table_rows() {
        let m = word_matrix_oracle(r.0);
        let b1 = b1_oracle(&m);
        let w = parse_word(r.0).unwrap();
        let expected: BTreeSet<Vec<i64>> = match b1 {
            3 => (0..4).map(|i| (0..4).map(|j| if i == j { 4 } else { 0 }).collect()).collect(),
            2 => {
                let Some(g) = fixed_mod2_index(&w) else {
                    bad.push(format!("{}: no fixed element mod 2", r.0));
                    continue;
                };
                // (0,2,2,0) and (2,0,0,2) with ab replaced by the fixed element
                let first: Vec<i64> = (0..4).map(|i| if i == 0 || i == g { 2 } else { 0 }).collect();
                let second: Vec<i64> = first.iter().map(|x| 2 - x).collect();
                [first, second].into_iter().collect()
            }
            _ => continue,
        };
        checked += 1;
        let got = match klein_four_extensions(&w) {
            Ok(ext) => ext,
            Err(e) => {
                bad.push(format!("{}: {e}", r.0));
                continue;
            }
        };
        let exact = got.iter().all(|e| e.quadruple.iter().all(|x| (x - x.round()).abs() < 1e-9) && e.residual < 1e-8);
        let keys: BTreeSet<Vec<i64>> = got.iter().map(|e| quadruple_key(&e.quadruple)).collect();
        if keys != expected || got.len() != expected.len() || !exact {
            bad.push(format!("{}: {:?}", r.0, keys));
        }
    }
    v.record(9, bad.is_empty(), format!("{checked} words with b1 >= 2{}", join_failures(&bad)));
}

fn criterion_10(v: &mut Verdicts) {
    let w = parse_word("A^2*B^-2").unwrap();
    let mut notes = Vec::new();
    let d = decompose(&fixed_ideal(&w, SignClass::Id).unwrap(), &w).unwrap();
    let axis = d.components.iter().filter(|c| c.kind == ComponentKind::Line).collect::<Vec<_>>();
    let curves = d.components.iter().filter(|c| c.kind == ComponentKind::PlaneCurve).collect::<Vec<_>>();
    let l3 = [Poly::parse("x").unwrap(), Poly::parse("y").unwrap()];
    let decomposition = d.components.len() == 2
        && axis.len() == 1
        && axis[0].ideal.len() == 2
        && l3.iter().all(|g| axis[0].ideal.contains(g))
        && curves.len() == 1
        && curves[0].geometric_count == 1
        && curves[0].absolutely_irreducible == Verdict::Yes;
    if !decomposition {
        notes.push("decomposition differs from {V, L3}".to_string());
    }

    let bd = binary_dihedral_characters(&w).unwrap();
    let bd_on_l3 = !bd.is_empty() && bd.iter().all(|c| c.character[0].norm() < 1e-9 && c.character[1].norm() < 1e-9);
    if !bd_on_l3 {
        notes.push("binary dihedral characters off L3".into());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut max_trace = 0.0f64;
    let mut fibers_ok = true;
    for _ in 0..40 {
        let z = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        if (z * z - 4.0).norm() < 1e-2 {
            continue;
        }
        match check_fiber(&w, [Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), z]) {
            Ok(f) if f.kind == FiberKind::Pair => {
                for q in &f.quadruples {
                    max_trace = max_trace.max(q[0].norm());
                }
            }
            _ => fibers_ok = false,
        }
    }
    let trace_zero = fibers_ok && max_trace < 1e-8;
    if !trace_zero {
        notes.push(format!("tr T on L3 up to {max_trace:.2e}"));
    }

    let sq = w.power(2);
    let act = axis_action(&sq);
    let parities_even = act.sign_parities == [0, 0, 0] && act.permutation == [0, 1, 2];
    let phi2 = induced_automorphism(&sq);
    let mut axes_fixed = true;
    for i in 0..3 {
        for t in [0.7, -1.3, 2.9] {
            let mut p = [Complex64::new(0.0, 0.0); 3];
            p[i] = Complex64::new(t, 0.4);
            let image = phi2.eval_complex(&p);
            axes_fixed &= (0..3).all(|j| (image[j] - p[j]).norm() < 1e-9);
        }
    }
    if !(parities_even && axes_fixed) {
        notes.push(format!("square action {:?}, axes fixed {axes_fixed}", act));
    }
    let pass = decomposition && bd_on_l3 && trace_zero && parities_even && axes_fixed;
    v.record(10, pass, format!("max |tr T| on L3 {max_trace:.1e}{}", join_failures(&notes)));
}

fn bp_relation(n: i64, a: &Mat2C, b: &Mat2C) -> f64 {
    let binv = b.try_inverse().unwrap();
    let mut binv_n = Mat2C::identity();
    for _ in 0..n {
        binv_n *= binv;
    }
    (a * binv_n * a + b * a * a * b).norm()
}

fn criterion_11(v: &mut Verdicts) {
    let mut notes = Vec::new();
    let mut max_res = 0.0f64;
    let mut max_special = 0.0f64;
    for n in [2i64, 4] {
        let report = match bp_regression(n, 200, 17) {
            Ok(r) => r,
            Err(e) => {
                notes.push(format!("n={n}: {e}"));
                continue;
            }
        };
        max_res = max_res.max(report.max_relation_residual);
        if report.special_points.is_empty() {
            notes.push(format!("n={n}: no special points"));
        }
        for sp in &report.special_points {
            let (a, b) = bp_matrices(n, sp.x0, sp.y0);
            max_res = max_res.max(bp_relation(n, &a, &b));
            let sq = |m: Mat2C| m.trace() * m.trace();
            let h = sp.x0 + 1.0 / sp.x0;
            let expected = [Complex64::new(2.0, 0.0), h * h, h * h * 0.5];
            let got = [sq(a), sq(b), sq(a * b)];
            let err = got.iter().zip(&expected).map(|(g, e)| (g - e).norm()).fold(0.0, f64::max);
            max_special = max_special.max(err);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(99 + n as u64);
        for _ in 0..100 {
            let x = Complex64::from_polar(rng.gen_range(0.7..1.4), rng.gen_range(0.0..std::f64::consts::TAU));
            let xn = x.powi(n as i32);
            let den = xn * (1.0 - x * x) * (1.0 - xn);
            if den.norm() < 0.05 {
                continue;
            }
            let y = ((x * x + xn) / den).sqrt();
            let curve = x * x + xn - y * y * den;
            let (a, b) = bp_matrices(n, x, y);
            max_res = max_res.max(bp_relation(n, &a, &b)).max(curve.norm());
        }
    }
    let pass = notes.is_empty() && max_res < 1e-8 && max_special < 1e-8;
    v.record(
        11,
        pass,
        format!("n = 2, 4: relation residual {max_res:.1e}, special-point error {max_special:.1e}{}", join_failures(&notes)),
    );
}

fn main() -> ExitCode {
    let mut v = Verdicts { lines: Vec::new() };
    criterion_1(&mut v);
    criterion_2(&mut v);
    criterion_3(&mut v);
    criterion_4(&mut v);
    criterion_5(&mut v);
    criterion_6(&mut v);
    criterion_7(&mut v);
    criterion_8(&mut v);
    criterion_9(&mut v);
    criterion_10(&mut v);
    criterion_11(&mut v);
    let failed: Vec<u32> = v.lines.iter().filter(|l| !l.1).map(|l| l.0).collect();
    println!("acceptance: {} of {} criteria pass", v.lines.len() - failed.len(), v.lines.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
