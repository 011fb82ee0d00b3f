//! Words in the Dehn-twist generators of the mapping class group of the
//! once-punctured torus, their homology matrices and mod-2 invariants.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::free_group::FreeWord;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, PartialOrd, Ord)]
pub enum Twist {
    /// The twist `α` with `α(a) = a`, `α(b) = ba`; homology matrix `A`.
    A,
    /// The twist `β` with `β(a) = ab⁻¹`, `β(b) = b`; homology matrix `B`.
    B,
}

/// A normalized monodromy word. The elliptic involution `ι` is central, so
/// it is stored as a leading parity flag.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize)]
pub struct TwistWord {
    iota: bool,
    letters: Vec<(Twist, i64)>,
}

impl TwistWord {
    pub fn identity() -> Self {
        TwistWord::default()
    }

    pub fn new(iota: bool, letters: Vec<(Twist, i64)>) -> Self {
        let mut w = TwistWord { iota, letters: Vec::new() };
        for (g, e) in letters {
            w.push(g, e);
        }
        w
    }

    pub fn gen(g: Twist, e: i64) -> Self {
        TwistWord::new(false, vec![(g, e)])
    }

    fn push(&mut self, g: Twist, e: i64) {
        if e == 0 {
            return;
        }
        if let Some(last) = self.letters.last_mut() {
            if last.0 == g {
                last.1 += e;
                if last.1 == 0 {
                    self.letters.pop();
                }
                return;
            }
        }
        self.letters.push((g, e));
    }

    pub fn iota(&self) -> bool {
        self.iota
    }

    pub fn letters(&self) -> &[(Twist, i64)] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        !self.iota && self.letters.is_empty()
    }

    /// Total length counted with exponents.
    pub fn syllable_length(&self) -> u64 {
        self.letters.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    pub fn concat(&self, o: &TwistWord) -> TwistWord {
        let mut w = self.clone();
        w.iota ^= o.iota;
        for &(g, e) in &o.letters {
            w.push(g, e);
        }
        w
    }

    pub fn inverse(&self) -> TwistWord {
        let mut w = TwistWord { iota: self.iota, letters: Vec::new() };
        for &(g, e) in self.letters.iter().rev() {
            w.push(g, -e);
        }
        w
    }

    pub fn power(&self, k: u32) -> TwistWord {
        let mut w = TwistWord::identity();
        for _ in 0..k {
            w = w.concat(self);
        }
        w
    }

    /// The word with `ι` stripped; all trace-level data ignore `ι`.
    pub fn without_iota(&self) -> TwistWord {
        TwistWord { iota: false, letters: self.letters.clone() }
    }

    /// Images `(φ(a), φ(b))` of the free generators. The word `g₁⋯gₙ`
    /// denotes the composite `g₁ ∘ ⋯ ∘ gₙ`.
    pub fn free_images(&self) -> (FreeWord, FreeWord) {
        let a = FreeWord::a();
        let b = FreeWord::b();
        let mut img = (a.clone(), b.clone());
        let mut steps: Vec<(FreeWord, FreeWord)> = Vec::new();
        if self.iota {
            steps.push((
                FreeWord::from_letters(&[2, -1, -2]),
                FreeWord::from_letters(&[2, 1, -2, -1, -2]),
            ));
        }
        for &(g, e) in &self.letters {
            let gen = match (g, e > 0) {
                (Twist::A, true) => (a.clone(), FreeWord::from_letters(&[2, 1])),
                (Twist::A, false) => (a.clone(), FreeWord::from_letters(&[2, -1])),
                (Twist::B, true) => (FreeWord::from_letters(&[1, -2]), b.clone()),
                (Twist::B, false) => (FreeWord::from_letters(&[1, 2]), b.clone()),
            };
            for _ in 0..e.unsigned_abs() {
                steps.push(gen.clone());
            }
        }
        for (ga, gb) in &steps {
            img = (ga.substitute(&img.0, &img.1), gb.substitute(&img.0, &img.1));
        }
        img
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.iota {
            parts.push("I".to_string());
        }
        for &(g, e) in &self.letters {
            let base = match g {
                Twist::A => "A",
                Twist::B => "B",
            };
            if e == 1 {
                parts.push(base.to_string());
            } else {
                parts.push(format!("{base}^{e}"));
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Parse `word := term ("*" term)*`, `term := base ("^" signed_int)?`,
/// `base := "A" | "B" | "I"`; `alpha`, `beta`, `iota` are accepted too, and
/// `1` denotes the empty word.
pub fn parse_word(text: &str) -> Result<TwistWord> {
    let chars: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    if chars.is_empty() || (chars.len() == 1 && chars[0].1 == '1') {
        return Ok(TwistWord::identity());
    }
    let mut pos = 0;
    let mut iota = false;
    let mut letters = Vec::new();
    let at = |p: usize| chars.get(p).map(|c| c.0).unwrap_or(text.len());
    loop {
        let start = pos;
        while pos < chars.len() && chars[pos].1.is_alphabetic() {
            pos += 1;
        }
        if start == pos {
            return Err(Error::Parse { pos: at(pos), msg: "expected a generator".into() });
        }
        let sym: String = chars[start..pos].iter().map(|c| c.1).collect();
        let base = match sym.as_str() {
            "A" | "alpha" => Some(Twist::A),
            "B" | "beta" => Some(Twist::B),
            "I" | "iota" => None,
            _ => return Err(Error::UnknownGenerator { symbol: sym, pos: at(start) }),
        };
        let mut exp = 1i64;
        if pos < chars.len() && chars[pos].1 == '^' {
            pos += 1;
            let s = pos;
            if pos < chars.len() && (chars[pos].1 == '-' || chars[pos].1 == '+') {
                pos += 1;
            }
            let ds = pos;
            while pos < chars.len() && chars[pos].1.is_ascii_digit() {
                pos += 1;
            }
            if ds == pos {
                return Err(Error::Parse { pos: at(pos), msg: "expected an integer exponent".into() });
            }
            let t: String = chars[s..pos].iter().map(|c| c.1).collect();
            exp = t
                .parse()
                .map_err(|_| Error::Parse { pos: at(s), msg: "exponent out of range".into() })?;
        }
        match base {
            Some(g) => letters.push((g, exp)),
            None => iota ^= exp.rem_euclid(2) == 1,
        }
        if pos == chars.len() {
            break;
        }
        if chars[pos].1 != '*' {
            return Err(Error::Parse { pos: at(pos), msg: "expected '*'".into() });
        }
        pos += 1;
    }
    Ok(TwistWord::new(iota, letters))
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntMatrix2 {
    pub k: [BigInt; 4],
}

impl IntMatrix2 {
    pub fn new(k1: i64, k2: i64, k3: i64, k4: i64) -> Self {
        IntMatrix2 { k: [k1.into(), k2.into(), k3.into(), k4.into()] }
    }

    pub fn identity() -> Self {
        IntMatrix2::new(1, 0, 0, 1)
    }

    pub fn mul(&self, o: &IntMatrix2) -> IntMatrix2 {
        let [a, b, c, d] = &self.k;
        let [e, f, g, h] = &o.k;
        IntMatrix2 { k: [a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h] }
    }

    pub fn neg(&self) -> IntMatrix2 {
        IntMatrix2 { k: self.k.clone().map(|v| -v) }
    }

    pub fn trace(&self) -> BigInt {
        &self.k[0] + &self.k[3]
    }

    pub fn det(&self) -> BigInt {
        &self.k[0] * &self.k[3] - &self.k[1] * &self.k[2]
    }

    pub fn entries_i64(&self) -> [i64; 4] {
        self.k.clone().map(|v| v.to_i64().expect("matrix entry exceeds i64"))
    }

    pub fn mod2(&self) -> [u8; 4] {
        self.k.clone().map(|v| v.mod_floor(&BigInt::from(2)).to_u8().unwrap())
    }

    fn inv(&self) -> IntMatrix2 {
        let [a, b, c, d] = &self.k;
        IntMatrix2 { k: [d.clone(), -b.clone(), -c.clone(), a.clone()] }
    }
}

impl Serialize for IntMatrix2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let e: Vec<String> = self.k.iter().map(|v| v.to_string()).collect();
        e.serialize(s)
    }
}

/// Product of the homology matrices in word order; `ι` contributes `-I`.
pub fn word_matrix(w: &TwistWord) -> IntMatrix2 {
    let mut m = IntMatrix2::identity();
    for &(g, e) in &w.letters {
        let step = match g {
            Twist::A => IntMatrix2::new(1, e, 0, 1),
            Twist::B => IntMatrix2::new(1, 0, -e, 1),
        };
        m = m.mul(&step);
    }
    if w.iota {
        m = m.neg();
    }
    m
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct MonodromyInvariants {
    pub trace: i64,
    pub mod2_order: u8,
    pub b1: u8,
    pub hyperbolic: bool,
    pub binary_dihedral_count: Option<u64>,
    pub h_rank: u8,
}

pub fn mod2_order(m: &IntMatrix2) -> u8 {
    let r = m.mod2();
    if r == [1, 0, 0, 1] {
        1
    } else if (r[0] + r[3]) % 2 == 1 {
        3
    } else {
        2
    }
}

pub fn invariants(w: &TwistWord) -> MonodromyInvariants {
    let m = word_matrix(w);
    let trace = m.trace().to_i64().unwrap_or(i64::MAX);
    let o = mod2_order(&m);
    let b1 = 4 - o;
    let hyperbolic = trace.unsigned_abs() > 2;
    let binary_dihedral_count = hyperbolic.then(|| ((2 + trace).unsigned_abs() - (1u64 << (b1 - 1))) / 2);
    MonodromyInvariants { trace, mod2_order: o, b1, hyperbolic, binary_dihedral_count, h_rank: b1 - 1 }
}

/// Default step bound of the conjugacy search.
pub const DEFAULT_FORM_STEPS: usize = 10_000;

pub fn standard_positive_form(m: &IntMatrix2) -> Result<(i8, Vec<u64>)> {
    standard_positive_form_bounded(m, DEFAULT_FORM_STEPS)
}

/// `sign · A^{a₁}B^{-b₁}⋯A^{aₙ}B^{-bₙ}` conjugate to `m`, with the
/// exponent pairs rotated to their lexicographically least position.
pub fn standard_positive_form_bounded(m: &IntMatrix2, max_steps: usize) -> Result<(i8, Vec<u64>)> {
    let tr = m.trace();
    if tr.abs() <= BigInt::from(2) {
        return Err(Error::NotHyperbolic { trace: tr.to_i64().unwrap_or(0) });
    }
    let (sign, m0) = if tr.is_negative() { (-1, m.neg()) } else { (1, m.clone()) };
    let r = IntMatrix2::new(1, 1, 0, 1);
    let l = IntMatrix2::new(1, 0, 1, 1);
    let conj = [r.clone(), r.inv(), l.clone(), l.inv()];
    let nonneg = |q: &IntMatrix2| q.k.iter().all(|v| !v.is_negative());
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(m0.clone());
    queue.push_back(m0);
    let mut found = None;
    let mut steps = 0;
    while let Some(cur) = queue.pop_front() {
        if nonneg(&cur) {
            found = Some(cur);
            break;
        }
        steps += 1;
        if steps > max_steps {
            return Err(Error::Budget(format!("conjugacy search exceeded {max_steps} steps")));
        }
        for s in &conj {
            let next = s.inv().mul(&cur).mul(s);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut cur = found.ok_or_else(|| Error::Budget("conjugacy search exhausted".into()))?;
    let mut string = Vec::new();
    while cur != IntMatrix2::identity() {
        let [a, b, c, d] = &cur.k;
        if a >= c && b >= d {
            string.push(true);
            cur = IntMatrix2 { k: [a - c, b - d, c.clone(), d.clone()] };
        } else if c >= a && d >= b {
            string.push(false);
            cur = IntMatrix2 { k: [a.clone(), b.clone(), c - a, d - b] };
        } else {
            return Err(Error::Precondition("nonnegative matrix does not factor".into()));
        }
    }
    // Rotate so the cyclic string starts with an R after an L.
    let n = string.len();
    let start = (0..n)
        .find(|&i| string[i] && !string[(i + n - 1) % n])
        .ok_or_else(|| Error::Precondition("word uses a single letter".into()))?;
    let rot: Vec<bool> = (0..n).map(|i| string[(start + i) % n]).collect();
    let mut exps = Vec::new();
    let mut i = 0;
    while i < n {
        let j = (i..n).find(|&j| rot[j] != rot[i]).unwrap_or(n);
        exps.push((j - i) as u64);
        i = j;
    }
    let pairs = exps.len() / 2;
    let best = (0..pairs)
        .map(|p| {
            let mut v = exps[2 * p..].to_vec();
            v.extend_from_slice(&exps[..2 * p]);
            v
        })
        .min()
        .unwrap();
    Ok((sign, best))
}

/// Rebuild the word `A^{a₁}B^{-b₁}⋯` (with `ι` for a negative sign).
pub fn word_from_positive_form(sign: i8, exps: &[u64]) -> TwistWord {
    let letters = exps
        .chunks(2)
        .flat_map(|c| [(Twist::A, c[0] as i64), (Twist::B, -(c[1] as i64))])
        .collect();
    TwistWord::new(sign < 0, letters)
}

pub fn mutate(w: &TwistWord) -> TwistWord {
    TwistWord { iota: !w.iota, letters: w.letters.clone() }
}

/// Signed permutation of the three coordinate axes `L₁, L₂, L₃` induced on
/// `X(S)`: the point `e_i·s` maps to `(-1)^{sign_parities[i]} e_{permutation[i]}·s`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct AxisAction {
    pub permutation: [usize; 3],
    pub sign_parities: [u8; 3],
}

impl AxisAction {
    pub fn identity() -> Self {
        AxisAction { permutation: [0, 1, 2], sign_parities: [0; 3] }
    }

    /// First `self`, then `o`.
    pub fn then(&self, o: &AxisAction) -> AxisAction {
        let mut p = [0; 3];
        let mut s = [0; 3];
        for i in 0..3 {
            p[i] = o.permutation[self.permutation[i]];
            s[i] = (self.sign_parities[i] + o.sign_parities[self.permutation[i]]) % 2;
        }
        AxisAction { permutation: p, sign_parities: s }
    }

    pub fn power(&self, k: u32) -> AxisAction {
        (0..k).fold(AxisAction::identity(), |acc, _| acc.then(self))
    }

    /// `L_i` lies in the fixed-point set.
    pub fn fixes_axis(&self, i: usize) -> bool {
        self.permutation[i] == i && self.sign_parities[i] == 0
    }

    pub fn is_trivial(&self) -> bool {
        *self == AxisAction::identity()
    }
}

fn generator_axis_action(g: Twist, positive: bool) -> AxisAction {
    match (g, positive) {
        (Twist::A, true) => AxisAction { permutation: [0, 2, 1], sign_parities: [0, 1, 0] },
        (Twist::A, false) => AxisAction { permutation: [0, 2, 1], sign_parities: [0, 0, 1] },
        (Twist::B, true) => AxisAction { permutation: [2, 1, 0], sign_parities: [0, 0, 1] },
        (Twist::B, false) => AxisAction { permutation: [2, 1, 0], sign_parities: [1, 0, 0] },
    }
}

pub fn axis_action(w: &TwistWord) -> AxisAction {
    let mut act = AxisAction::identity();
    for &(g, e) in &w.letters {
        let step = generator_axis_action(g, e > 0);
        for _ in 0..e.unsigned_abs() {
            act = act.then(&step);
        }
    }
    act
}

/// Sign homomorphism `h` on `a, b` composed with `φ`: returns
/// `(h(φ(a)), h(φ(b)))` for `h(a) = s`, `h(b) = p`.
pub fn sign_pullback(w: &TwistWord, s: i8, p: i8) -> (i8, i8) {
    let m = word_matrix(w);
    let [k1, k2, k3, k4] = m.mod2();
    let ev = |e1: u8, e2: u8| -> i8 {
        let mut v = 1;
        if e1 == 1 {
            v *= s;
        }
        if e2 == 1 {
            v *= p;
        }
        v
    };
    (ev(k1, k3), ev(k2, k4))
}
