//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Every polynomial lives in the fixed ring `Q[x, y, z, t]`. The character
//! coordinates use `x, y, z`; the fourth variable is reserved for
//! saturation and radical-membership tricks inside the ideal engine.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const NVARS: usize = 4;
pub type Exp = [u32; NVARS];
pub const VAR_NAMES: [&str; NVARS] = ["x", "y", "z", "t"];

pub const X: usize = 0;
pub const Y: usize = 1;
pub const Z: usize = 2;
pub const T: usize = 3;

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn total(e: &Exp) -> u32 {
    e.iter().sum()
}

/// Graded lex comparison with `x > y > z > t`, the canonical printing order.
pub fn grlex_cmp(a: &Exp, b: &Exp) -> std::cmp::Ordering {
    total(a).cmp(&total(b)).then_with(|| a.cmp(b))
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Exp, BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::monomial([0; NVARS], c)
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(q(n))
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; NVARS];
        e[i] = 1;
        Poly::monomial(e, BigRational::one())
    }

    pub fn monomial(e: Exp, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Poly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Exp, BigRational)>>(it: I) -> Self {
        let mut p = Poly::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: Exp, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &Exp) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| total(e) == 0)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(&[0; NVARS])
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(total).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn mentions(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e[i] > 0)
    }

    pub fn variables(&self) -> Vec<usize> {
        (0..NVARS).filter(|&i| self.mentions(i)).collect()
    }

    /// Leading term under graded lex `x > y > z > t`.
    pub fn leading(&self) -> Option<(&Exp, &BigRational)> {
        self.terms.iter().max_by(|a, b| grlex_cmp(a.0, b.0))
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = *e;
                f[i] -= 1;
                out.add_term(f, c * q(e[i] as i64));
            }
        }
        out
    }

    /// Substitute `images[i]` for variable `i` simultaneously.
    pub fn compose(&self, images: &[Poly; NVARS]) -> Poly {
        let mut powers: Vec<Vec<Poly>> = (0..NVARS).map(|_| vec![Poly::one()]).collect();
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let mut m = Poly::constant(c.clone());
            for i in 0..NVARS {
                let k = e[i] as usize;
                while powers[i].len() <= k {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                if k > 0 {
                    m = &m * &powers[i][k];
                }
            }
            out = &out + &m;
        }
        out
    }

    /// Substitute a single variable.
    pub fn subs(&self, i: usize, p: &Poly) -> Poly {
        let mut images = [Poly::var(0), Poly::var(1), Poly::var(2), Poly::var(3)];
        images[i] = p.clone();
        self.compose(&images)
    }

    /// Swap two variables.
    pub fn swap_vars(&self, i: usize, j: usize) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut f = *e;
                    f.swap(i, j);
                    (f, c.clone())
                })
                .collect(),
        }
    }

    pub fn eval_rational(&self, pt: &[BigRational]) -> BigRational {
        let mut s = BigRational::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    m *= num_traits::pow(pt[i].clone(), k as usize);
                }
            }
            s += m;
        }
        s
    }

    pub fn eval_complex(&self, pt: &[Complex64]) -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut m = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    m *= pt[i].powu(k);
                }
            }
            s += m;
        }
        s
    }

    /// Integer coefficients with unit content and a positive leading
    /// coefficient (graded lex). The zero polynomial is returned unchanged.
    pub fn normalized(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .terms
            .values()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        let mut g = BigInt::zero();
        for v in &ints {
            g = g.gcd(v);
        }
        let lead = self.leading().unwrap().1;
        if lead.is_negative() {
            g = -g;
        }
        let factor = BigRational::new(den, g);
        self.scale(&factor)
    }

    /// Integer-valued coefficients, if all coefficients are integers.
    pub fn integer_terms(&self) -> Option<Vec<(Exp, BigInt)>> {
        self.terms
            .iter()
            .map(|(e, c)| if c.is_integer() { Some((*e, c.to_integer())) } else { None })
            .collect()
    }

    /// Treat the polynomial as univariate in variable `i` and return its
    /// coefficients, lowest degree first.
    pub fn coefficients_in(&self, i: usize) -> Vec<Poly> {
        let d = self.degree_in(i) as usize;
        let mut out = vec![Poly::zero(); d + 1];
        for (e, c) in &self.terms {
            let mut f = *e;
            let k = f[i] as usize;
            f[i] = 0;
            out[k].add_term(f, c.clone());
        }
        out
    }

    pub fn parse(s: &str) -> Result<Poly> {
        let tokens = tokenize(s)?;
        let mut p = Parser { toks: &tokens, pos: 0 };
        let out = p.expr()?;
        if p.pos != tokens.len() {
            return Err(Error::Parse {
                pos: tokens[p.pos].1,
                msg: "unexpected token".into(),
            });
        }
        Ok(out)
    }
}

impl From<i64> for Poly {
    fn from(n: i64) -> Self {
        Poly::int(n)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let mut e = *e1;
                for i in 0..NVARS {
                    e[i] += e2[i];
                }
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, o: &Poly) -> Poly {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<Poly> for &'a Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly {
                self.$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

fn fmt_coeff(c: &BigRational) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_mono(e: &Exp) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(VAR_NAMES[i].to_string()),
            _ => parts.push(format!("{}^{}", VAR_NAMES[i], k)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|a, b| grlex_cmp(b.0, a.0));
        let mut s = String::new();
        for (k, (e, c)) in ts.into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = fmt_mono(e);
            if mono.is_empty() {
                s.push_str(&fmt_coeff(&a));
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&fmt_coeff(&a));
                s.push('*');
                s.push_str(&mono);
            }
        }
        write!(f, "{s}")
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push((Tok::Num(text.parse().unwrap()), start));
        } else if let Some(v) = VAR_NAMES.iter().position(|n| n.starts_with(c)) {
            out.push((Tok::Var(v), i));
            i += 1;
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), i));
            i += 1;
        } else {
            return Err(Error::Parse {
                pos: i,
                msg: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(usize::MAX)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse {
            pos: self.here(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                -self.term()?
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Op('+')) => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(Tok::Op('-')) => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    acc = acc * self.power()?;
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let d = self.power()?;
                    if !d.is_constant() || d.is_zero() {
                        return self.err("division only by nonzero constants");
                    }
                    acc = acc.scale(&(BigRational::one() / d.constant_term()));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let k = n.to_u32().ok_or(Error::Parse {
                        pos: self.here(),
                        msg: "exponent too large".into(),
                    })?;
                    Ok(base.pow(k))
                }
                _ => self.err("expected exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Poly::constant(BigRational::from_integer(n)))
            }
            Some(Tok::Var(v)) => {
                self.pos += 1;
                Ok(Poly::var(v))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::Op(')')) {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            _ => self.err("expected a number, variable or '('"),
        }
    }
}
