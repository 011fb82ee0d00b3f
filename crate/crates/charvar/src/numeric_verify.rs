//! Floating-point checks at the level of representations: matrices realizing
//! a character, conjugators extending a fixed character to the mapping
//! torus, fibers of the restriction map, binary dihedral characters,
//! Klein-four extensions and the two-bridge regression of Baker–Petersen.

use nalgebra::{DMatrix, DVector, Matrix2};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::free_group::FreeWord;
use crate::monodromy::{invariants, word_matrix, TwistWord};
use crate::poly::{Poly, X, Y, Z};
use crate::trace_poly::{fixed_ideal, reducibility_value, SignClass};

pub type Mat2C = Matrix2<Complex64>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn mat(a: Complex64, b: Complex64, cc: Complex64, d: Complex64) -> Mat2C {
    Mat2C::new(a, b, cc, d)
}

/// Inverse of a unimodular matrix (the adjugate).
fn inv_sl2(m: &Mat2C) -> Mat2C {
    mat(m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)])
}

fn frob(m: &Mat2C) -> f64 {
    m.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

/// Image of a free word under `a ↦ a_mat`, `b ↦ b_mat` (both unimodular).
pub fn eval_word(w: &FreeWord, a_mat: &Mat2C, b_mat: &Mat2C) -> Mat2C {
    let (ai, bi) = (inv_sl2(a_mat), inv_sl2(b_mat));
    let mut m = Mat2C::identity();
    for &l in w.letters() {
        let g = match l {
            1 => a_mat,
            -1 => &ai,
            2 => b_mat,
            _ => &bi,
        };
        m *= g;
    }
    m
}

/// Tolerances of the numeric checks.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Tolerances {
    /// Largest accepted relation residual (Frobenius norm).
    pub relation: f64,
    /// Largest accepted generator value at a point of a variety.
    pub membership: f64,
    /// Relative singular value below which a direction counts as a null vector.
    pub null_space: f64,
    /// Threshold below which a trace counts as zero.
    pub zero: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { relation: 1e-8, membership: 1e-8, null_space: 1e-9, zero: 1e-6 }
    }
}

/// Which normal form `rep_from_character` produced.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RepShape {
    /// `A = [[s, 0], [1, 1/s]]`, `B = [[p, u], [0, 1/p]]`.
    Irreducible,
    /// `A = diag(s, 1/s)`, `B = diag(p, 1/p)`.
    Diagonal,
}

/// Representation of `F₂` with the branch choices that produced it.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct RepPoint {
    pub a: Mat2C,
    pub b: Mat2C,
    pub t: Option<Mat2C>,
    pub residual: f64,
    pub shape: RepShape,
    /// Chosen roots of `s² − xs + 1` and `p² − yp + 1`.
    pub s: Complex64,
    pub p: Complex64,
    pub u: Complex64,
}

impl RepPoint {
    pub fn character(&self) -> [Complex64; 3] {
        [self.a.trace(), self.b.trace(), (self.a * self.b).trace()]
    }

    pub fn eval(&self, w: &FreeWord) -> Mat2C {
        eval_word(w, &self.a, &self.b)
    }
}

/// Root of `r² − tr·r + 1` with nonnegative real part of the square root.
fn eigen_root(tr: Complex64) -> Complex64 {
    (tr + (tr * tr - 4.0).sqrt()) / 2.0
}

/// Matrices with the character `(x, y, z)`.
pub fn rep_from_character(x: Complex64, y: Complex64, z: Complex64) -> RepPoint {
    rep_from_character_tol(x, y, z, Tolerances::default().zero)
}

pub fn rep_from_character_tol(x: Complex64, y: Complex64, z: Complex64, zero_tol: f64) -> RepPoint {
    let s = eigen_root(x);
    let p = eigen_root(y);
    let one = c(1.0, 0.0);
    let zero = c(0.0, 0.0);
    let kappa = reducibility_value(&[x, y, z]);
    if kappa.norm() < zero_tol {
        let close = |q: Complex64| (s * q + one / (s * q) - z).norm();
        let p = if close(p) <= close(one / p) { p } else { one / p };
        let a = mat(s, zero, zero, one / s);
        let b = mat(p, zero, zero, one / p);
        return RepPoint { a, b, t: None, residual: 0.0, shape: RepShape::Diagonal, s, p, u: zero };
    }
    let u = z - s * p - one / (s * p);
    let a = mat(s, zero, one, one / s);
    let b = mat(p, u, zero, one / p);
    RepPoint { a, b, t: None, residual: 0.0, shape: RepShape::Irreducible, s, p, u }
}

/// Null space of `M ↦ (ρ(γ) M − ε_γ M ρ(φ(γ)))_{γ = a, b}` on 2×2 matrices.
struct ConjugatorSpace {
    /// Singular values, largest first.
    singular: Vec<f64>,
    /// Right singular vector of the smallest singular value, as a matrix.
    best: Mat2C,
}

fn conjugator_space(lhs: [&Mat2C; 2], rhs: [&Mat2C; 2], signs: [f64; 2]) -> ConjugatorSpace {
    let mut sys = DMatrix::<Complex64>::zeros(8, 4);
    for g in 0..2 {
        let (m, n, e) = (lhs[g], rhs[g], signs[g]);
        for i in 0..2 {
            for j in 0..2 {
                let row = 4 * g + 2 * i + j;
                for k in 0..2 {
                    sys[(row, 2 * k + j)] += m[(i, k)];
                    sys[(row, 2 * i + k)] -= n[(k, j)] * e;
                }
            }
        }
    }
    let svd = sys.svd(false, true);
    let vt = svd.v_t.expect("right singular vectors requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let singular = order.iter().map(|&i| svd.singular_values[i]).collect();
    let last = *order.last().unwrap();
    let v: Vec<Complex64> = (0..4).map(|k| vt[(last, k)].conj()).collect();
    ConjugatorSpace { singular, best: mat(v[0], v[1], v[2], v[3]) }
}

impl ConjugatorSpace {
    fn nullity(&self, tol: f64) -> usize {
        let top = self.singular[0].max(1e-300);
        self.singular.iter().filter(|&&s| s <= tol * top).count()
    }
}

fn normalize_det(m: &Mat2C) -> Option<Mat2C> {
    let d = m.determinant();
    if d.norm() < 1e-14 * frob(m).powi(2).max(1e-300) {
        return None;
    }
    Some(m / d.sqrt())
}

fn relation_residual(rep: &RepPoint, images: &(FreeWord, FreeWord), t: &Mat2C, signs: [f64; 2]) -> f64 {
    let ti = inv_sl2(t);
    let pa = rep.eval(&images.0) * c(signs[0], 0.0);
    let pb = rep.eval(&images.1) * c(signs[1], 0.0);
    frob(&(ti * rep.a * t - pa)).max(frob(&(ti * rep.b * t - pb)))
}

/// The traces `(tr T, tr AT, tr BT, tr ABT)`.
pub fn extension_quadruple(rep: &RepPoint, t: &Mat2C) -> [Complex64; 4] {
    [t.trace(), (rep.a * t).trace(), (rep.b * t).trace(), (rep.a * rep.b * t).trace()]
}

fn point_residual(w: &TwistWord, pt: &[Complex64; 3]) -> Result<f64> {
    let id = fixed_ideal(w, SignClass::Id)?;
    let p = [pt[0], pt[1], pt[2], c(0.0, 0.0)];
    Ok(id.generators.iter().map(|g| g.eval_complex(&p).norm()).fold(0.0, f64::max))
}

/// Unimodular `T` with `T⁻¹ ρ(γ) T = ρ(φ(γ))` for `γ = a, b`, stored in the
/// returned point together with its residual.
pub fn conjugator(rep: &RepPoint, w: &TwistWord) -> Result<RepPoint> {
    conjugator_tol(rep, w, &Tolerances::default())
}

pub fn conjugator_tol(rep: &RepPoint, w: &TwistWord, tol: &Tolerances) -> Result<RepPoint> {
    let chi = rep.character();
    let on = point_residual(w, &chi)?;
    if on > tol.membership {
        return Err(Error::Numeric(format!("character is not fixed by {w}: residual {on:.3e}")));
    }
    if rep.shape == RepShape::Diagonal || reducibility_value(&chi).norm() < tol.zero {
        return Err(Error::Precondition("reducible character: the conjugator system is degenerate".into()));
    }
    let images = w.free_images();
    let pa = rep.eval(&images.0);
    let pb = rep.eval(&images.1);
    let space = conjugator_space([&rep.a, &rep.b], [&pa, &pb], [1.0, 1.0]);
    if space.nullity(tol.null_space) != 1 {
        return Err(Error::Numeric(format!("conjugator space has dimension {}", space.nullity(tol.null_space))));
    }
    let t = normalize_det(&space.best).ok_or_else(|| Error::Numeric("singular conjugator".into()))?;
    let residual = relation_residual(rep, &images, &t, [1.0, 1.0]);
    if residual > tol.relation {
        return Err(Error::Numeric(format!("conjugator residual {residual:.3e}")));
    }
    if extension_quadruple(rep, &t).iter().all(|v| v.norm() < tol.zero) {
        return Err(Error::Numeric("all traces of the conjugator vanish".into()));
    }
    Ok(RepPoint { t: Some(t), residual, ..rep.clone() })
}

/// What the fiber of the restriction map over a fixed point looks like.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FiberKind {
    /// Two extensions `±T`.
    Pair,
    /// One extension with `u = v = w = q = 0`.
    BinaryDihedral,
    /// The conjugators `diag(m, 1/m)` form a one-parameter family.
    AbelianFamily,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct FiberCheckReport {
    pub point: [Complex64; 3],
    pub kind: FiberKind,
    pub extensions: usize,
    pub eps_related: bool,
    /// `(u, v, w, q)` for each extension.
    pub quadruples: Vec<[Complex64; 4]>,
    pub residual: f64,
}

/// Extensions of the fixed character `pt` to `π₁(M_φ)`.
pub fn check_fiber(w: &TwistWord, pt: [Complex64; 3]) -> Result<FiberCheckReport> {
    check_fiber_tol(w, pt, &Tolerances::default())
}

pub fn check_fiber_tol(w: &TwistWord, pt: [Complex64; 3], tol: &Tolerances) -> Result<FiberCheckReport> {
    let rep = rep_from_character_tol(pt[0], pt[1], pt[2], tol.zero);
    if rep.shape == RepShape::Diagonal {
        let on = point_residual(w, &pt)?;
        if on > tol.membership {
            return Err(Error::Numeric(format!("character is not fixed by {w}: residual {on:.3e}")));
        }
        let images = w.free_images();
        let (pa, pb) = (rep.eval(&images.0), rep.eval(&images.1));
        let near = |m: &Mat2C, target: Complex64| (m[(0, 0)] - target).norm() < tol.zero;
        if near(&pa, rep.s) && near(&pb, rep.p) {
            return Ok(FiberCheckReport {
                point: pt,
                kind: FiberKind::AbelianFamily,
                extensions: 0,
                eps_related: false,
                quadruples: Vec::new(),
                residual: 0.0,
            });
        }
        if near(&pa, 1.0 / rep.s) && near(&pb, 1.0 / rep.p) {
            let t = mat(c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0));
            let residual = relation_residual(&rep, &images, &t, [1.0, 1.0]);
            return Ok(FiberCheckReport {
                point: pt,
                kind: FiberKind::BinaryDihedral,
                extensions: 1,
                eps_related: true,
                quadruples: vec![extension_quadruple(&rep, &t)],
                residual,
            });
        }
        return Err(Error::Numeric("reducible fixed character without a diagonal extension".into()));
    }
    let ext = conjugator_tol(&rep, w, tol)?;
    let t = ext.t.expect("conjugator present");
    let plus = extension_quadruple(&rep, &t);
    let minus = extension_quadruple(&rep, &(-t));
    let eps_related = plus.iter().zip(&minus).all(|(p, m)| (p + m).norm() < tol.zero);
    let pair = plus.iter().any(|v| v.norm() >= tol.zero);
    let residual = ext.residual.max(relation_residual(&rep, &w.free_images(), &(-t), [1.0, 1.0]));
    Ok(FiberCheckReport {
        point: pt,
        kind: if pair { FiberKind::Pair } else { FiberKind::BinaryDihedral },
        extensions: if pair { 2 } else { 1 },
        eps_related,
        quadruples: if pair { vec![plus, minus] } else { vec![plus] },
        residual,
    })
}

/// A binary dihedral character: eigenvalues `s = e^{2πi·θ_s}`,
/// `p = e^{2πi·θ_p}` with `θ = num / den`.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct BinaryDihedralCharacter {
    pub theta_s: (i64, i64),
    pub theta_p: (i64, i64),
    pub character: [Complex64; 3],
}

fn gcd(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}

/// Characters `(s + 1/s, p + 1/p, sp + 1/(sp))` of the pairs `(s, p)` with
/// `ρ(φ(a)) = ρ(a)⁻¹`, `ρ(φ(b)) = ρ(b)⁻¹` on diagonal representations,
/// excluding the central ones `s, p ∈ {±1}`.
pub fn binary_dihedral_characters(w: &TwistWord) -> Result<Vec<BinaryDihedralCharacter>> {
    let inv = invariants(w);
    if !inv.hyperbolic {
        return Err(Error::NotHyperbolic { trace: inv.trace });
    }
    let [k1, k2, k3, k4] = word_matrix(w).entries_i64();
    // Exponent system s^{k1+1} p^{k3} = 1, s^{k2} p^{k4+1} = 1 on angles.
    let n = [[k1 + 1, k3], [k2, k4 + 1]];
    let det = n[0][0] * n[1][1] - n[0][1] * n[1][0];
    let d = det.abs();
    let adj = [[n[1][1], -n[0][1]], [-n[1][0], n[0][0]]];
    let mut angles: Vec<(i64, i64)> = Vec::new();
    for m1 in 0..d {
        for m2 in 0..d {
            let a = (adj[0][0] * m1 + adj[0][1] * m2) * det.signum();
            let b = (adj[1][0] * m1 + adj[1][1] * m2) * det.signum();
            let key = (a.rem_euclid(d), b.rem_euclid(d));
            if !angles.contains(&key) {
                angles.push(key);
            }
        }
    }
    angles.sort();
    let mut out: Vec<BinaryDihedralCharacter> = Vec::new();
    let mut seen: Vec<(i64, i64)> = Vec::new();
    for &(a, b) in &angles {
        if (2 * a) % d == 0 && (2 * b) % d == 0 {
            continue;
        }
        let inverse = ((d - a) % d, (d - b) % d);
        if seen.contains(&inverse) {
            continue;
        }
        seen.push((a, b));
        let s = Complex64::from_polar(1.0, 2.0 * PI * a as f64 / d as f64);
        let p = Complex64::from_polar(1.0, 2.0 * PI * b as f64 / d as f64);
        let reduce = |num: i64| {
            let g = gcd(num, d).max(1);
            (num / g, d / g)
        };
        out.push(BinaryDihedralCharacter {
            theta_s: reduce(a),
            theta_p: reduce(b),
            character: [s + 1.0 / s, p + 1.0 / p, s * p + 1.0 / (s * p)],
        });
    }
    Ok(out)
}

/// The Klein-four matrices `κ₁, κ₂, κ₃ = κ₁κ₂`.
pub fn klein_four_matrices() -> [Mat2C; 3] {
    let (o, i, e) = (c(0.0, 0.0), c(0.0, 1.0), c(1.0, 0.0));
    let k1 = mat(o, e, -e, o);
    let k2 = mat(o, i, i, o);
    [k1, k2, k1 * k2]
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct KleinFourExtension {
    /// Signs `ε_a, ε_b` with `T⁻¹ κ(γ) T = ε_γ κ(φ(γ))`.
    pub signs: (i8, i8),
    pub t: Mat2C,
    /// Squares of `tr T, tr κ₁T, tr κ₂T, tr κ₁κ₂T`.
    pub quadruple: [f64; 4],
    pub residual: f64,
}

/// Extensions of the Klein-four character `(0, 0, 0)` to PSL representations
/// of `π₁(M_φ)`, one per conjugacy class. Sign patterns whose conjugators
/// give the same quadruple are conjugate and reported once.
pub fn klein_four_extensions(w: &TwistWord) -> Result<Vec<KleinFourExtension>> {
    let inv = invariants(w);
    if !inv.hyperbolic {
        return Err(Error::NotHyperbolic { trace: inv.trace });
    }
    let tol = Tolerances::default();
    let [k1, k2, _] = klein_four_matrices();
    let zero = c(0.0, 0.0);
    let rep = RepPoint { a: k1, b: k2, t: None, residual: 0.0, shape: RepShape::Irreducible, s: zero, p: zero, u: zero };
    let images = w.free_images();
    let (pa, pb) = (rep.eval(&images.0), rep.eval(&images.1));
    let mut out = Vec::new();
    for (ea, eb) in [(1i8, 1i8), (1, -1), (-1, 1), (-1, -1)] {
        let signs = [ea as f64, eb as f64];
        let space = conjugator_space([&k1, &k2], [&pa, &pb], signs);
        if space.nullity(tol.null_space) == 0 {
            continue;
        }
        let Some(t) = normalize_det(&space.best) else { continue };
        let residual = relation_residual(&rep, &images, &t, signs);
        let q = extension_quadruple(&rep, &t).map(|v| (v * v).re);
        let known = out.iter().any(|e: &KleinFourExtension| e.quadruple.iter().zip(&q).all(|(a, b)| (a - b).abs() < tol.zero));
        if known {
            continue;
        }
        out.push(KleinFourExtension { signs: (ea, eb), t, quadruple: q, residual });
    }
    Ok(out)
}

/// One special point of the Baker–Petersen example.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct BpSpecialPoint {
    pub x0: Complex64,
    pub y0: Complex64,
    pub triple: [Complex64; 3],
    pub expected: [Complex64; 3],
    pub error: f64,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct BpReport {
    pub n: i64,
    pub samples: usize,
    pub max_relation_residual: f64,
    pub max_det_defect: f64,
    pub special_points: Vec<BpSpecialPoint>,
}

impl BpReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.max_relation_residual < tol
            && self.max_det_defect < tol
            && !self.special_points.is_empty()
            && self.special_points.iter().all(|s| s.error < tol)
    }
}

/// `(ρ̄(α), ρ̄(β))` at a point of `x² + xⁿ = y² xⁿ (1 − x²)(1 − xⁿ)`.
pub fn bp_matrices(n: i64, x: Complex64, y: Complex64) -> (Mat2C, Mat2C) {
    let one = c(1.0, 0.0);
    let xn = x.powi(n as i32);
    let lower = (one + x.powi(n as i32 + 2)) / ((one - x * x) * (one - xn));
    let a = mat(-y * xn, -one, lower, y);
    let b = mat(x, c(0.0, 0.0), c(0.0, 0.0), one / x);
    (a, b)
}

/// Frobenius norm of `ρ(α) ρ(β)^{−n} ρ(α) + ρ(β) ρ(α)² ρ(β)`.
pub fn bp_relation_residual(n: i64, a: &Mat2C, b: &Mat2C) -> f64 {
    let binv_n = if n >= 0 { inv_sl2(b).pow(n as u32) } else { b.pow((-n) as u32) };
    frob(&(a * binv_n * a + b * a * a * b))
}

pub fn bp_regression(n: i64, samples: usize, seed: u64) -> Result<BpReport> {
    if n % 2 != 0 || n.abs() < 2 {
        return Err(Error::OutOfRange(format!("the example needs even n with |n| >= 2, got {n}")));
    }
    let one = c(1.0, 0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_res = 0.0f64;
    let mut max_det = 0.0f64;
    let mut taken = 0;
    while taken < samples {
        let x = Complex64::from_polar(rng.gen_range(0.6..1.6), rng.gen_range(0.0..2.0 * PI));
        let xn = x.powi(n as i32);
        let den = xn * (one - x * x) * (one - xn);
        if den.norm() < 0.05 {
            continue;
        }
        let y = ((x * x + xn) / den).sqrt();
        let (a, b) = bp_matrices(n, x, y);
        max_res = max_res.max(bp_relation_residual(n, &a, &b));
        max_det = max_det.max((a.determinant() - one).norm());
        taken += 1;
    }
    let mut special_points = Vec::new();
    for j in 0..n.abs() {
        let x0 = Complex64::from_polar(1.0, PI * (2 * j + 1) as f64 / n as f64);
        if (one - x0 * x0).norm() < 1e-9 {
            continue;
        }
        for y0 in [c(0.5f64.sqrt(), 0.0), c(-(0.5f64.sqrt()), 0.0)] {
            let (a, b) = bp_matrices(n, x0, y0);
            let tr = |m: Mat2C| {
                let t = m.trace();
                t * t
            };
            let triple = [tr(a), tr(b), tr(a * b)];
            let h = x0 + one / x0;
            let expected = [c(2.0, 0.0), h * h, h * h / 2.0];
            let error = triple.iter().zip(&expected).map(|(u, v)| (u - v).norm()).fold(0.0, f64::max);
            max_res = max_res.max(bp_relation_residual(n, &a, &b));
            special_points.push(BpSpecialPoint { x0, y0, triple, expected, error });
        }
    }
    Ok(BpReport { n, samples, max_relation_residual: max_res, max_det_defect: max_det, special_points })
}

/// Largest relative defects of the four trace identities over random
/// unimodular triples.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct TraceIdentityReport {
    pub samples: usize,
    pub max_relative_error: [f64; 4],
}

fn random_sl2(rng: &mut ChaCha8Rng) -> Mat2C {
    loop {
        let mut e = || c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let m = mat(e(), e(), e(), e());
        if let Some(n) = normalize_det(&m) {
            if frob(&n) < 20.0 {
                return n;
            }
        }
    }
}

pub fn trace_identity_suite(samples: usize, seed: u64) -> TraceIdentityReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = [0.0f64; 4];
    let rel = |lhs: Complex64, rhs: Complex64, scale: f64| (lhs - rhs).norm() / scale.max(1.0);
    for _ in 0..samples {
        let (a, b, cc) = (random_sl2(&mut rng), random_sl2(&mut rng), random_sl2(&mut rng));
        let tr = |m: Mat2C| m.trace();
        let (ai, bi) = (inv_sl2(&a), inv_sl2(&b));
        let e1 = rel(tr(ai), tr(a), tr(a).norm());
        let e2 = rel(tr(bi * a * b), tr(a), tr(a).norm());
        let l3 = tr(a) * tr(b);
        let r3 = tr(a * b) + tr(a * bi);
        let e3 = rel(l3, r3, l3.norm().max(r3.norm()));
        let l4 = tr(a * b * cc);
        let terms = [
            tr(a) * tr(b * cc),
            tr(b) * tr(a * cc),
            tr(cc) * tr(a * b),
            -tr(a) * tr(b) * tr(cc),
            -tr(a * cc * b),
        ];
        let r4: Complex64 = terms.iter().sum();
        let scale = terms.iter().map(|t| t.norm()).fold(l4.norm(), f64::max);
        let e4 = rel(l4, r4, scale);
        for (w, e) in worst.iter_mut().zip([e1, e2, e3, e4]) {
            *w = w.max(e);
        }
    }
    TraceIdentityReport { samples, max_relative_error: worst }
}

/// Options for sampling points of a variety in `C³`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SampleOptions {
    pub seed: u64,
    /// Largest accepted coordinate modulus.
    pub max_modulus: f64,
    /// Generator values accepted at a sample.
    pub residual: f64,
    /// Newton starts per requested sample before giving up.
    pub attempts_per_sample: usize,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions { seed: 0, max_modulus: 4.0, residual: 1e-11, attempts_per_sample: 400 }
    }
}

struct System {
    gens: Vec<Poly>,
    grads: Vec<[Poly; 3]>,
}

impl System {
    fn new(gens: &[Poly]) -> System {
        let gens: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        let grads = gens.iter().map(|g| [g.derivative(X), g.derivative(Y), g.derivative(Z)]).collect();
        System { gens, grads }
    }

    fn residual(&self, v: &[Complex64; 3]) -> f64 {
        let p = [v[0], v[1], v[2], c(0.0, 0.0)];
        self.gens.iter().map(|g| g.eval_complex(&p).norm()).fold(0.0, f64::max)
    }

    /// Gauss–Newton on the generators plus the plane `normal · v = offset`.
    fn refine(&self, start: [Complex64; 3], normal: [Complex64; 3], offset: Complex64, max_mod: f64) -> Option<[Complex64; 3]> {
        let mut v = start;
        let rows = self.gens.len() + 1;
        for _ in 0..80 {
            let p = [v[0], v[1], v[2], c(0.0, 0.0)];
            let mut f = DVector::<Complex64>::zeros(rows);
            let mut j = DMatrix::<Complex64>::zeros(rows, 3);
            for (r, (g, gr)) in self.gens.iter().zip(&self.grads).enumerate() {
                f[r] = g.eval_complex(&p);
                for k in 0..3 {
                    j[(r, k)] = gr[k].eval_complex(&p);
                }
            }
            f[rows - 1] = normal[0] * v[0] + normal[1] * v[1] + normal[2] * v[2] - offset;
            for k in 0..3 {
                j[(rows - 1, k)] = normal[k];
            }
            let step = j.svd(true, true).solve(&f, 1e-13).ok()?;
            let mut size = 0.0f64;
            for k in 0..3 {
                v[k] -= step[k];
                size = size.max(step[k].norm());
            }
            if v.iter().any(|x| !x.is_finite() || x.norm() > 1e3) {
                return None;
            }
            if size < 1e-15 * (1.0 + v.iter().map(|x| x.norm()).fold(0.0, f64::max)) {
                break;
            }
        }
        (v.iter().all(|x| x.norm() <= max_mod)).then_some(v)
    }
}

/// Random points of the variety cut out by `gens`, found by intersecting
/// with random planes and refining random starts by Gauss–Newton.
pub fn sample_variety(gens: &[Poly], count: usize, opts: &SampleOptions) -> Vec<[Complex64; 3]> {
    let sys = System::new(gens);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut out: Vec<[Complex64; 3]> = Vec::new();
    let mut tries = 0;
    while out.len() < count && tries < count * opts.attempts_per_sample {
        tries += 1;
        let mut rc = |r: f64| c(rng.gen_range(-r..r), rng.gen_range(-r..r));
        let normal = [rc(1.0), rc(1.0), rc(1.0)];
        let offset = rc(2.0);
        let start = [rc(3.0), rc(3.0), rc(3.0)];
        let Some(v) = sys.refine(start, normal, offset, opts.max_modulus) else { continue };
        if sys.residual(&v) > opts.residual {
            continue;
        }
        let dup = out.iter().any(|o| (0..3).all(|k| (o[k] - v[k]).norm() < 1e-7));
        if !dup {
            out.push(v);
        }
    }
    out
}

/// Random irreducible points of `X_φ(S)`.
pub fn sample_fixed_points(w: &TwistWord, count: usize, opts: &SampleOptions) -> Result<Vec<[Complex64; 3]>> {
    let id = fixed_ideal(w, SignClass::Id)?;
    let mut out = Vec::new();
    let mut round = 0;
    while out.len() < count && round < 4 {
        let o = SampleOptions { seed: opts.seed.wrapping_add(round), ..*opts };
        for v in sample_variety(&id.generators, count, &o) {
            let dup = out.iter().any(|o: &[Complex64; 3]| (0..3).all(|k| (o[k] - v[k]).norm() < 1e-7));
            if !dup && reducibility_value(&v).norm() > 1e-3 && out.len() < count {
                out.push(v);
            }
        }
        round += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monodromy::parse_word;

    #[test]
    fn quaternionic_lift() {
        let r = rep_from_character(c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        let comm = r.a * r.b * inv_sl2(&r.a) * inv_sl2(&r.b);
        assert!((comm.trace() + 2.0).norm() < 1e-12);
        let ch = r.character();
        assert!(ch.iter().all(|v| v.norm() < 1e-12));
    }

    #[test]
    fn reducible_shape() {
        let r = rep_from_character(c(2.0, 0.0), c(2.0, 0.0), c(2.0, 0.0));
        assert_eq!(r.shape, RepShape::Diagonal);
        assert_eq!(r.u, c(0.0, 0.0));
    }

    #[test]
    fn figure_eight_dihedral_count() {
        let w = parse_word("A*B^-1").unwrap();
        assert_eq!(binary_dihedral_characters(&w).unwrap().len(), 2);
    }

    #[test]
    fn klein_four_commutator() {
        let [k1, k2, _] = klein_four_matrices();
        let comm = k1 * k2 * inv_sl2(&k1) * inv_sl2(&k2);
        assert!((comm.trace() + 2.0).norm() < 1e-12);
    }
}
