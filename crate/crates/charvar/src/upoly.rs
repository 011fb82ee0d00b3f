//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::{Poly, NVARS};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    /// Coefficients, lowest degree first, no trailing zeros.
    c: Vec<BigRational>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly::default()
    }

    pub fn one() -> Self {
        UPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        UPoly::new(vec![c])
    }

    /// The variable `u`.
    pub fn x() -> Self {
        UPoly::from_ints(&[0, 1])
    }

    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(|v| v.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        UPoly::new(c.iter().map(|&v| BigRational::from_integer(v.into())).collect())
    }

    pub fn from_bigints(c: &[BigInt]) -> Self {
        UPoly::new(c.iter().map(|v| BigRational::from_integer(v.clone())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.c.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// Degree; the zero polynomial has degree `-1`.
    pub fn degree(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn lead(&self) -> BigRational {
        self.c.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, k: &BigRational) -> UPoly {
        UPoly::new(self.c.iter().map(|v| v * k).collect())
    }

    pub fn shift(&self, k: usize) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![BigRational::zero(); k];
        c.extend(self.c.iter().cloned());
        UPoly { c }
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        self.scale(&(BigRational::one() / self.lead()))
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, v)| v * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for v in self.c.iter().rev() {
            acc = acc * x + v;
        }
        acc
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for v in self.c.iter().rev() {
            acc = acc * x + v.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    pub fn compose(&self, g: &UPoly) -> UPoly {
        let mut acc = UPoly::zero();
        for v in self.c.iter().rev() {
            acc = &(&acc * g) + &UPoly::constant(v.clone());
        }
        acc
    }

    pub fn pow(&self, n: u32) -> UPoly {
        let mut acc = UPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.c.clone();
        let dd = d.c.len() - 1;
        if r.len() < d.c.len() {
            return (UPoly::zero(), self.clone());
        }
        let inv = BigRational::one() / d.lead();
        let mut qv = vec![BigRational::zero(); r.len() - dd];
        for i in (0..qv.len()).rev() {
            let k = &r[i + dd] * &inv;
            if !k.is_zero() {
                for j in 0..=dd {
                    r[i + j] -= &k * &d.c[j];
                }
            }
            qv[i] = k;
        }
        r.truncate(dd);
        (UPoly::new(qv), UPoly::new(r))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.div_rem(d).1
    }

    /// Exact quotient, if `d` divides `self`.
    pub fn exact_div(&self, d: &UPoly) -> Option<UPoly> {
        let (qv, r) = self.div_rem(d);
        r.is_zero().then_some(qv)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.primitive_rational();
        }
        a.monic()
    }

    /// Rescale so that coefficients are coprime integers (keeps the sign of
    /// the leading coefficient positive).
    pub fn primitive_rational(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let ints = self.integer_primitive();
        UPoly::from_bigints(&ints)
    }

    /// Integer coefficients with content one and positive leading coefficient.
    pub fn integer_primitive(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut den = BigInt::one();
        for v in &self.c {
            den = den.lcm(v.denom());
        }
        let ints: Vec<BigInt> = self.c.iter().map(|v| (v * BigRational::from_integer(den.clone())).to_integer()).collect();
        let mut g = BigInt::zero();
        for v in &ints {
            g = g.gcd(v);
        }
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        ints.into_iter().map(|v| v / &g).collect()
    }

    pub fn is_squarefree(&self) -> bool {
        self.degree() <= 0 || self.gcd(&self.derivative()).degree() == 0
    }

    /// Square-free decomposition `self = c · ∏ f_i^i` (Yun).
    pub fn squarefree_decomposition(&self) -> Vec<(UPoly, u32)> {
        if self.degree() <= 0 {
            return Vec::new();
        }
        let f = self.monic();
        let d = f.derivative();
        let mut a = f.gcd(&d);
        let mut b = f.exact_div(&a).unwrap();
        let mut c = d.exact_div(&a).unwrap();
        let mut out = Vec::new();
        let mut i = 1;
        loop {
            let bd = b.derivative();
            let e = &c - &bd;
            if e.is_zero() {
                if b.degree() > 0 {
                    out.push((b.clone(), i));
                }
                break;
            }
            a = b.gcd(&e);
            if a.degree() > 0 {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a).unwrap();
            c = e.exact_div(&a).unwrap();
            i += 1;
            if b.degree() <= 0 {
                break;
            }
        }
        out
    }

    /// Factorization over the rationals into primitive integer irreducible
    /// factors with multiplicities, plus the rational content.
    pub fn factor(&self) -> (BigRational, Vec<(UPoly, u32)>) {
        crate::ideal_engine::factor::factor_univariate(self)
    }

    /// The polynomial in variable `var` of the multivariate ring.
    pub fn to_poly(&self, var: usize) -> Poly {
        Poly::from_terms(self.c.iter().enumerate().map(|(i, v)| {
            let mut e = [0; NVARS];
            e[var] = i as u32;
            (e, v.clone())
        }))
    }

    /// Substitute a multivariate polynomial for the variable.
    pub fn eval_poly(&self, p: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.c.iter().rev() {
            acc = &(&acc * p) + &Poly::constant(c.clone());
        }
        acc
    }

    /// Read a multivariate polynomial that only mentions `var`.
    pub fn from_poly(p: &Poly, var: usize) -> Option<UPoly> {
        let mut c = vec![BigRational::zero(); p.degree_in(var) as usize + 1];
        for (e, v) in p.terms() {
            if (0..NVARS).any(|i| i != var && e[i] > 0) {
                return None;
            }
            c[e[var] as usize] = v.clone();
        }
        Some(UPoly::new(c))
    }

    pub fn display(&self, var: &str) -> String {
        let p = self.to_poly(0);
        p.to_string().replace('x', var)
    }

    /// Remove factors of the variable.
    pub fn strip_monomial(&self) -> UPoly {
        let k = self.c.iter().position(|v| !v.is_zero()).unwrap_or(0);
        UPoly::new(self.c[k..].to_vec())
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("u"))
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly({self})")
    }
}

impl<'a> Add<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn add(self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn sub(self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn mul(self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![BigRational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UPoly::new(c)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::new(self.c.iter().map(|v| -v.clone()).collect())
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<UPoly> for UPoly {
            type Output = UPoly;
            fn $m(self, o: UPoly) -> UPoly {
                (&self).$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_and_division() {
        let a = UPoly::from_ints(&[-1, 0, 1]);
        let b = UPoly::from_ints(&[1, 1]);
        assert_eq!(a.gcd(&b), b);
        assert_eq!(a.exact_div(&b).unwrap(), UPoly::from_ints(&[-1, 1]));
    }

    #[test]
    fn squarefree() {
        let f = UPoly::from_ints(&[1, 1]).pow(3) * UPoly::from_ints(&[-2, 0, 1]);
        let d = f.squarefree_decomposition();
        assert_eq!(d.len(), 2);
        assert_eq!(d[0], (UPoly::from_ints(&[-2, 0, 1]), 1));
        assert_eq!(d[1], (UPoly::from_ints(&[1, 1]), 3));
        assert!(!f.is_squarefree());
    }
}
