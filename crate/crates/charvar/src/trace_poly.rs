//! Trace polynomials of free-group words, the polynomial automorphisms of
//! `X(S) = C³` induced by monodromy words, and their (signed) fixed ideals.

use std::collections::HashMap;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::free_group::FreeWord;
use crate::monodromy::{invariants, sign_pullback, Twist, TwistWord};
use crate::poly::{Poly, X, Y, Z};

pub type TracePolynomial = Poly;

/// Memoized evaluation of trace polynomials, keyed on cyclic words.
#[derive(Default)]
pub struct TraceEngine {
    memo: HashMap<FreeWord, Poly>,
}

impl TraceEngine {
    pub fn new() -> Self {
        TraceEngine::default()
    }

    pub fn trace(&mut self, w: &FreeWord) -> Poly {
        let key = w.canonical_cyclic();
        if let Some(p) = self.memo.get(&key) {
            return p.clone();
        }
        let p = self.compute(&key);
        self.memo.insert(key, p.clone());
        p
    }

    fn compute(&mut self, w: &FreeWord) -> Poly {
        let l = w.letters();
        let n = l.len();
        if n == 0 {
            return Poly::int(2);
        }
        if n == 1 {
            return Poly::var(if l[0].abs() == 1 { X } else { Y });
        }
        if let Some(i) = l.iter().position(|&c| c < 0) {
            // w ~ X·g⁻¹ and tr(Xg⁻¹) = tr X · tr g − tr(Xg).
            let r = w.rotate(i + 1);
            let rl = r.letters();
            let g = -rl[rl.len() - 1];
            let xw = FreeWord::from_letters(&rl[..rl.len() - 1]);
            let gw = FreeWord::from_letters(&[g]);
            let t1 = self.trace(&xw) * self.trace(&gw);
            let t2 = self.trace(&xw.mul(&gw));
            return t1 - t2;
        }
        if n == 2 {
            return if l[0] == l[1] {
                let v = Poly::var(if l[0] == 1 { X } else { Y });
                &v * &v - Poly::int(2)
            } else {
                Poly::var(Z)
            };
        }
        // Positive word: w ~ gXgY and tr = tr(gX) tr(gY) − tr(XY⁻¹).
        let mut best: Option<(usize, usize)> = None;
        for i in 0..n {
            for j in i + 1..n {
                if l[i] == l[j] {
                    let score = (2 * (j - i)).abs_diff(n);
                    if best.map_or(true, |(bi, bj)| score < (2 * (bj - bi)).abs_diff(n)) {
                        best = Some((i, j));
                    }
                }
            }
        }
        let (i, j) = best.expect("a positive word of length at least 3 repeats a letter");
        let r = w.rotate(i);
        let rl = r.letters();
        let d = j - i;
        let u = FreeWord::from_letters(&rl[..d]);
        let v = FreeWord::from_letters(&rl[d..]);
        let xw = FreeWord::from_letters(&rl[1..d]);
        let yw = FreeWord::from_letters(&rl[d + 1..]);
        let t1 = self.trace(&u) * self.trace(&v);
        let t2 = self.trace(&xw.mul(&yw.inverse()));
        t1 - t2
    }
}

pub fn trace_polynomial(w: &FreeWord) -> TracePolynomial {
    TraceEngine::new().trace(w)
}

/// A polynomial self-map of `C³`, given by the images of `x, y, z`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PolyAutomorphism {
    pub images: [Poly; 3],
}

impl PolyAutomorphism {
    pub fn identity() -> Self {
        PolyAutomorphism { images: [Poly::var(X), Poly::var(Y), Poly::var(Z)] }
    }

    fn from_strs(s: [&str; 3]) -> Self {
        PolyAutomorphism { images: s.map(|t| Poly::parse(t).unwrap()) }
    }

    /// The map "first `self`, then `o`" as a map of points, i.e. the
    /// polynomials of `o` with those of `self` substituted.
    pub fn then(&self, o: &PolyAutomorphism) -> PolyAutomorphism {
        let subs = [self.images[0].clone(), self.images[1].clone(), self.images[2].clone(), Poly::var(3)];
        PolyAutomorphism { images: o.images.clone().map(|p| p.compose(&subs)) }
    }

    pub fn apply(&self, p: &Poly) -> Poly {
        let subs = [self.images[0].clone(), self.images[1].clone(), self.images[2].clone(), Poly::var(3)];
        p.compose(&subs)
    }

    pub fn eval_complex(&self, pt: &[Complex64; 3]) -> [Complex64; 3] {
        let p = [pt[0], pt[1], pt[2], Complex64::new(0.0, 0.0)];
        [self.images[0].eval_complex(&p), self.images[1].eval_complex(&p), self.images[2].eval_complex(&p)]
    }
}

fn generator_automorphism(g: Twist, positive: bool) -> PolyAutomorphism {
    match (g, positive) {
        (Twist::A, true) => PolyAutomorphism::from_strs(["x", "z", "x*z - y"]),
        (Twist::A, false) => PolyAutomorphism::from_strs(["x", "x*y - z", "y"]),
        (Twist::B, true) => PolyAutomorphism::from_strs(["x*y - z", "y", "x"]),
        (Twist::B, false) => PolyAutomorphism::from_strs(["z", "y", "y*z - x"]),
    }
}

/// `φ̄` with `φ̄(x, y, z) = (tr φ(a), tr φ(b), tr φ(ab))`; `ι` acts trivially.
pub fn induced_automorphism(w: &TwistWord) -> PolyAutomorphism {
    let mut acc = PolyAutomorphism::identity();
    for &(g, e) in w.letters() {
        let step = generator_automorphism(g, e > 0);
        for _ in 0..e.unsigned_abs() {
            acc = acc.then(&step);
        }
    }
    acc
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, PartialOrd, Ord)]
pub enum SignClass {
    Id,
    Sigma1,
    Sigma2,
    Sigma3,
}

impl SignClass {
    pub const ALL: [SignClass; 4] = [SignClass::Id, SignClass::Sigma1, SignClass::Sigma2, SignClass::Sigma3];

    pub fn signs(self) -> [i8; 3] {
        match self {
            SignClass::Id => [1, 1, 1],
            SignClass::Sigma1 => [1, -1, -1],
            SignClass::Sigma2 => [-1, 1, -1],
            SignClass::Sigma3 => [-1, -1, 1],
        }
    }

    pub fn from_signs(s: [i8; 3]) -> Option<SignClass> {
        SignClass::ALL.into_iter().find(|c| c.signs() == s)
    }

    /// The class of the twist by `h(a) = s`, `h(b) = p`.
    pub fn from_homomorphism(s: i8, p: i8) -> SignClass {
        SignClass::from_signs([s, p, s * p]).unwrap()
    }
}

impl fmt::Display for SignClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SignClass::Id => "id",
            SignClass::Sigma1 => "sigma1",
            SignClass::Sigma2 => "sigma2",
            SignClass::Sigma3 => "sigma3",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CurveIdeal {
    pub generators: Vec<Poly>,
    pub sign_class: SignClass,
}

/// Generators `φ̄(x) − ε₁x, φ̄(y) − ε₂y, φ̄(z) − ε₃z` without the
/// hyperbolicity check.
pub fn fixed_ideal_unchecked(w: &TwistWord, class: SignClass) -> CurveIdeal {
    let phi = induced_automorphism(w);
    let eps = class.signs();
    let vars = [X, Y, Z];
    let generators = (0..3)
        .map(|i| &phi.images[i] - &Poly::var(vars[i]).scale(&crate::poly::q(eps[i] as i64)))
        .collect();
    CurveIdeal { generators, sign_class: class }
}

pub fn fixed_ideal(w: &TwistWord, class: SignClass) -> Result<CurveIdeal> {
    let inv = invariants(w);
    if !inv.hyperbolic {
        return Err(Error::NotHyperbolic { trace: inv.trace });
    }
    Ok(fixed_ideal_unchecked(w, class))
}

/// Sign classes `h · (h∘φ)` reached from the identity class by twisting.
pub fn identity_orbit(w: &TwistWord) -> Vec<SignClass> {
    let mut out = Vec::new();
    for s in [1i8, -1] {
        for p in [1i8, -1] {
            let (hs, hp) = sign_pullback(w, s, p);
            let c = SignClass::from_homomorphism(s * hs, p * hp);
            if !out.contains(&c) {
                out.push(c);
            }
        }
    }
    out.sort();
    out
}

/// Signed ideals making up the part of the PSL fixed set that does not
/// come from `X_φ(S)`: one ideal per twist orbit avoiding the identity.
pub fn perp_ideals(w: &TwistWord) -> Result<Vec<CurveIdeal>> {
    let inv = invariants(w);
    if !inv.hyperbolic {
        return Err(Error::NotHyperbolic { trace: inv.trace });
    }
    let orbit = identity_orbit(w);
    let mut reps: Vec<SignClass> = Vec::new();
    let mut covered: Vec<SignClass> = orbit.clone();
    for c in [SignClass::Sigma1, SignClass::Sigma2, SignClass::Sigma3] {
        if covered.contains(&c) {
            continue;
        }
        reps.push(c);
        let cs = c.signs();
        for o in &orbit {
            let os = o.signs();
            let prod = [cs[0] * os[0], cs[1] * os[1], cs[2] * os[2]];
            covered.push(SignClass::from_signs(prod).unwrap());
        }
    }
    Ok(reps.into_iter().map(|c| fixed_ideal_unchecked(w, c)).collect())
}

pub fn reducibility_polynomial() -> Poly {
    Poly::parse("x^2 + y^2 + z^2 - x*y*z - 4").unwrap()
}

pub fn reducibility_value(p: &[Complex64; 3]) -> Complex64 {
    p[0] * p[0] + p[1] * p[1] + p[2] * p[2] - p[0] * p[1] * p[2] - 4.0
}

pub fn reducibility_value_exact(p: &[num_rational::BigRational; 3]) -> num_rational::BigRational {
    reducibility_polynomial().eval_rational(&[p[0].clone(), p[1].clone(), p[2].clone(), crate::poly::q(0)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monodromy::parse_word;

    #[test]
    fn basic_traces() {
        assert_eq!(trace_polynomial(&FreeWord::a()), Poly::var(X));
        assert_eq!(trace_polynomial(&FreeWord::parse("aB").unwrap()), Poly::parse("x*y - z").unwrap());
        assert_eq!(
            trace_polynomial(&FreeWord::parse("ABab").unwrap()),
            Poly::parse("x^2 + y^2 + z^2 - x*y*z - 2").unwrap()
        );
    }

    #[test]
    fn generators() {
        let a = induced_automorphism(&parse_word("A").unwrap());
        assert_eq!(a.images[2], Poly::parse("x*z - y").unwrap());
        let b = induced_automorphism(&parse_word("B^-1").unwrap());
        assert_eq!(b.images[0], Poly::parse("z").unwrap());
        assert_eq!(b.images[2], Poly::parse("y*z - x").unwrap());
        assert_eq!(induced_automorphism(&parse_word("A*A^-1").unwrap()), PolyAutomorphism::identity());
    }

    #[test]
    fn automorphism_matches_free_images() {
        for s in ["A*B^-1", "A^2*B^3", "A*B^-2*A^2*B^-1", "B^2*A^-1*B"] {
            let w = parse_word(s).unwrap();
            let phi = induced_automorphism(&w);
            let (ia, ib) = w.free_images();
            let mut eng = TraceEngine::new();
            assert_eq!(eng.trace(&ia), phi.images[0], "{s}");
            assert_eq!(eng.trace(&ib), phi.images[1], "{s}");
            assert_eq!(eng.trace(&ia.mul(&ib)), phi.images[2], "{s}");
        }
    }

    #[test]
    fn reducibility() {
        let two = Complex64::new(2.0, 0.0);
        assert_eq!(reducibility_value(&[two, two, two]), Complex64::new(0.0, 0.0));
        let zero = Complex64::new(0.0, 0.0);
        assert_eq!(reducibility_value(&[zero, zero, zero]), Complex64::new(-4.0, 0.0));
    }
}
