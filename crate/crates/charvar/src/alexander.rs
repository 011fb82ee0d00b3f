//! Fox free calculus on `F₂ = <a, b>` and twisted Alexander polynomials of
//! the mapping torus `M_φ` under sign characters.
//!
//! With `π₁(M_φ) = <a, b, t | t⁻¹ x t = φ(x)>` and the character
//! `a ↦ s`, `b ↦ p`, `t ↦ m`, the Fox matrix of the two relators is, after
//! multiplying each row by the unit `−m`,
//!
//! ```text
//! [ 1 − s   J_aa·m − 1   J_ab·m     ]
//! [ 1 − p   J_ba·m       J_bb·m − 1 ]
//! ```
//!
//! where `J_xy` is the sign evaluation of `∂φ(x)/∂y`. The polynomial `Δ`
//! is the greatest common divisor of its `2 × 2` minors.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::free_group::{FreeWord, GEN_A, GEN_B};
use crate::monodromy::{invariants, sign_pullback, TwistWord};
use crate::upoly::UPoly;

/// Finite integer combination of reduced words in `F₂`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GroupRingElement {
    terms: BTreeMap<FreeWord, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        GroupRingElement::default()
    }

    pub fn one() -> Self {
        GroupRingElement::word(FreeWord::identity())
    }

    pub fn word(w: FreeWord) -> Self {
        let mut e = GroupRingElement::zero();
        e.add_term(w, 1);
        e
    }

    pub fn add_term(&mut self, w: FreeWord, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(w.clone()).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FreeWord, &i64)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Image in the commutative Laurent ring `Z[a^±1, b^±1]`.
    pub fn abelianize(&self) -> LaurentBivariate {
        let mut out = LaurentBivariate::zero();
        for (w, c) in &self.terms {
            out.add_term(w.abelianization(), *c);
        }
        out
    }

    /// Image under the endomorphism `a ↦ image_a`, `b ↦ image_b`.
    pub fn substitute(&self, image_a: &FreeWord, image_b: &FreeWord) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (w, c) in &self.terms {
            out.add_term(w.substitute(image_a, image_b), *c);
        }
        out
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let body = match (w.is_empty(), c.abs()) {
                (true, k) => k.to_string(),
                (false, 1) => w.to_string(),
                (false, k) => format!("{k}*{w}"),
            };
            if i == 0 {
                write!(f, "{}{body}", if *c < 0 { "-" } else { "" })?;
            } else {
                write!(f, " {} {body}", if *c < 0 { "-" } else { "+" })?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a GroupRingElement> for &'a GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, o: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), *c);
        }
        out
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        GroupRingElement { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }
}

impl<'a> Sub<&'a GroupRingElement> for &'a GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, o: &GroupRingElement) -> GroupRingElement {
        self + &(-o)
    }
}

impl<'a> Mul<&'a GroupRingElement> for &'a GroupRingElement {
    type Output = GroupRingElement;
    fn mul(self, o: &GroupRingElement) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (u, c) in &self.terms {
            for (v, d) in &o.terms {
                out.add_term(u.mul(v), c * d);
            }
        }
        out
    }
}

/// Fox derivative `∂w/∂g` for `g` one of [`GEN_A`], [`GEN_B`].
pub fn fox_derivative(w: &FreeWord, g: i8) -> GroupRingElement {
    assert!(g == GEN_A || g == GEN_B, "generator must be GEN_A or GEN_B");
    let mut out = GroupRingElement::zero();
    let mut prefix = FreeWord::identity();
    for &l in w.letters() {
        let letter = FreeWord::from_letters(&[l]);
        if l == g {
            out.add_term(prefix.clone(), 1);
        } else if l == -g {
            out.add_term(prefix.mul(&letter), -1);
        }
        prefix = prefix.mul(&letter);
    }
    out
}

/// Finitely supported integer Laurent polynomial in commuting `a`, `b`.
#[derive(Clone, PartialEq, Eq, Debug, Default, Hash)]
pub struct LaurentBivariate {
    terms: BTreeMap<(i64, i64), i64>,
}

impl LaurentBivariate {
    pub fn zero() -> Self {
        LaurentBivariate::default()
    }

    pub fn constant(c: i64) -> Self {
        LaurentBivariate::monomial((0, 0), c)
    }

    pub fn monomial(e: (i64, i64), c: i64) -> Self {
        let mut p = LaurentBivariate::zero();
        p.add_term(e, c);
        p
    }

    pub fn add_term(&mut self, e: (i64, i64), c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(e).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &i64)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Value at `a = s`, `b = p` for signs `s, p ∈ {±1}`.
    pub fn eval_sign(&self, s: i8, p: i8) -> i64 {
        let sign = |base: i8, e: i64| if base < 0 && e.rem_euclid(2) == 1 { -1 } else { 1 };
        self.terms.iter().map(|(&(i, j), &c)| c * sign(s, i) * sign(p, j)).sum()
    }

    /// Image under the monomial map `a ↦ a^{ea.0} b^{ea.1}`,
    /// `b ↦ a^{eb.0} b^{eb.1}`.
    pub fn substitute(&self, ea: (i64, i64), eb: (i64, i64)) -> LaurentBivariate {
        let mut out = LaurentBivariate::zero();
        for (&(i, j), &c) in &self.terms {
            out.add_term((i * ea.0 + j * eb.0, i * ea.1 + j * eb.1), c);
        }
        out
    }
}

impl fmt::Display for LaurentBivariate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let power = |v: &str, e: i64| match e {
            0 => None,
            1 => Some(v.to_string()),
            _ => Some(format!("{v}^{e}")),
        };
        for (k, (&(i, j), &c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = [power("a", i), power("b", j)].into_iter().flatten().collect();
            let body = match (mono.is_empty(), c.abs()) {
                (true, k) => k.to_string(),
                (false, 1) => mono.join("*"),
                (false, k) => format!("{k}*{}", mono.join("*")),
            };
            if k == 0 {
                write!(f, "{}{body}", if c < 0 { "-" } else { "" })?;
            } else {
                write!(f, " {} {body}", if c < 0 { "-" } else { "+" })?;
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentBivariate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'a> Add<&'a LaurentBivariate> for &'a LaurentBivariate {
    type Output = LaurentBivariate;
    fn add(self, o: &LaurentBivariate) -> LaurentBivariate {
        let mut out = self.clone();
        for (&e, &c) in &o.terms {
            out.add_term(e, c);
        }
        out
    }
}

impl Neg for &LaurentBivariate {
    type Output = LaurentBivariate;
    fn neg(self) -> LaurentBivariate {
        LaurentBivariate { terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect() }
    }
}

impl<'a> Sub<&'a LaurentBivariate> for &'a LaurentBivariate {
    type Output = LaurentBivariate;
    fn sub(self, o: &LaurentBivariate) -> LaurentBivariate {
        self + &(-o)
    }
}

impl<'a> Mul<&'a LaurentBivariate> for &'a LaurentBivariate {
    type Output = LaurentBivariate;
    fn mul(self, o: &LaurentBivariate) -> LaurentBivariate {
        let mut out = LaurentBivariate::zero();
        for (&(i, j), &c) in &self.terms {
            for (&(k, l), &d) in &o.terms {
                out.add_term((i + k, j + l), c * d);
            }
        }
        out
    }
}

/// Abelianized Fox Jacobian; row `x`, column `y` holds `∂φ(x)/∂y`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Jacobian(pub [[LaurentBivariate; 2]; 2]);

impl Jacobian {
    pub fn identity() -> Self {
        let one = LaurentBivariate::constant(1);
        let zero = LaurentBivariate::zero();
        Jacobian([[one.clone(), zero.clone()], [zero, one]])
    }

    pub fn det(&self) -> LaurentBivariate {
        let m = &self.0;
        &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0])
    }

    pub fn mul(&self, o: &Jacobian) -> Jacobian {
        let (m, n) = (&self.0, &o.0);
        let entry = |i: usize, j: usize| &(&m[i][0] * &n[0][j]) + &(&m[i][1] * &n[1][j]);
        Jacobian([[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]])
    }

    /// Entrywise image under the abelianization of the automorphism of `w`.
    pub fn apply(&self, w: &TwistWord) -> Jacobian {
        let (ia, ib) = w.free_images();
        let (ea, eb) = (ia.abelianization(), ib.abelianization());
        Jacobian(self.0.clone().map(|row| row.map(|e| e.substitute(ea, eb))))
    }

    /// Integer matrix at `a = s`, `b = p`.
    pub fn eval_sign(&self, s: i8, p: i8) -> [[i64; 2]; 2] {
        self.0.clone().map(|row| row.map(|e| e.eval_sign(s, p)))
    }
}

pub fn jacobian_abelianized(w: &TwistWord) -> Jacobian {
    let (ia, ib) = w.free_images();
    let d = |u: &FreeWord, g: i8| fox_derivative(u, g).abelianize();
    Jacobian([[d(&ia, GEN_A), d(&ia, GEN_B)], [d(&ib, GEN_A), d(&ib, GEN_B)]])
}

/// Sign character `h(a) = s`, `h(b) = p` of `F₂`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct SignAssignment {
    pub s: i8,
    pub p: i8,
}

impl SignAssignment {
    pub fn new(s: i8, p: i8) -> Result<Self> {
        if s.abs() != 1 || p.abs() != 1 {
            return Err(Error::OutOfRange(format!("sign values must be +1 or -1, got ({s}, {p})")));
        }
        Ok(SignAssignment { s, p })
    }

    pub fn trivial() -> Self {
        SignAssignment { s: 1, p: 1 }
    }

    pub fn all() -> [SignAssignment; 4] {
        [(1, 1), (1, -1), (-1, 1), (-1, -1)].map(|(s, p)| SignAssignment { s, p })
    }

    pub fn is_trivial(&self) -> bool {
        self.s == 1 && self.p == 1
    }

    /// `h ∘ φ = h`.
    pub fn is_invariant(&self, w: &TwistWord) -> bool {
        sign_pullback(w, self.s, self.p) == (self.s, self.p)
    }
}

impl fmt::Display for SignAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sg = |v: i8| if v > 0 { "+1" } else { "-1" };
        write!(f, "({}, {})", sg(self.s), sg(self.p))
    }
}

fn hyperbolic_trace(w: &TwistWord) -> Result<i64> {
    let inv = invariants(w);
    if !inv.hyperbolic {
        return Err(Error::NotHyperbolic { trace: inv.trace });
    }
    Ok(inv.trace)
}

/// The `2 × 3` Fox matrix in the variable `m`, columns `t, a, b`.
pub fn alexander_matrix(w: &TwistWord, h: SignAssignment) -> Result<[[UPoly; 3]; 2]> {
    if !h.is_invariant(w) {
        return Err(Error::Precondition(format!("sign assignment {h} is not invariant under {w}")));
    }
    let j = jacobian_abelianized(w).eval_sign(h.s, h.p);
    let c = |v: i64| UPoly::from_ints(&[v]);
    let lin = |k: i64, d: i64| UPoly::from_ints(&[-d, k]);
    Ok([
        [c(1 - h.s as i64), lin(j[0][0], 1), lin(j[0][1], 0)],
        [c(1 - h.p as i64), lin(j[1][0], 0), lin(j[1][1], 1)],
    ])
}

/// Twisted Alexander polynomial `Δ(m)`, monic and free of factors of `m`.
pub fn twisted_alexander(w: &TwistWord, h: SignAssignment) -> Result<UPoly> {
    hyperbolic_trace(w)?;
    let mat = alexander_matrix(w, h)?;
    let minor = |i: usize, j: usize| &(&mat[0][i] * &mat[1][j]) - &(&mat[0][j] * &mat[1][i]);
    let mut g = UPoly::zero();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        g = g.gcd(&minor(i, j));
    }
    Ok(g.strip_monomial().monic())
}

/// Characteristic polynomial `m² − tr·m + 1` of the homology action.
pub fn charpoly(w: &TwistWord) -> UPoly {
    let tr = invariants(w).trace;
    UPoly::from_bigints(&[BigInt::from(1), BigInt::from(-tr), BigInt::from(1)])
}

/// Symbolic description of the bending parameter `m₀`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BendingValue {
    /// `m₀²` runs over the roots of the given polynomial in `m`.
    SquareRootOfRoots { polynomial: String, simple_roots: bool },
    /// `m₀ = ±1`.
    PlusMinusOne,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BendingParameter {
    pub sign: SignAssignment,
    pub twisted_alexander: String,
    pub value: BendingValue,
}

/// Bending parameters at the reducible characters with eigenvalues
/// `(s₀, p₀) ∈ {±1}²`, one entry per sign class fixed by `φ`.
pub fn bending_parameters(w: &TwistWord) -> Result<Vec<BendingParameter>> {
    hyperbolic_trace(w)?;
    let mut out = Vec::new();
    for h in SignAssignment::all() {
        if !h.is_invariant(w) {
            continue;
        }
        let delta = twisted_alexander(w, h)?;
        let value = if h.is_trivial() {
            let simple_roots = delta.is_squarefree();
            BendingValue::SquareRootOfRoots { polynomial: delta.display("m"), simple_roots }
        } else {
            BendingValue::PlusMinusOne
        };
        out.push(BendingParameter { sign: h, twisted_alexander: delta.display("m"), value });
    }
    Ok(out)
}
