//! Absolute irreducibility of bivariate polynomials by Gao's linear
//! algebra criterion.
//!
//! For `f(u, w)` with `gcd(f, ∂f/∂u) = 1`, the number of absolutely
//! irreducible factors equals the dimension of the space of pairs `(g, h)`
//! with `deg g ≤ (m−1, n)`, `deg h ≤ (m, n−1)` solving
//! `∂/∂w (g/f) = ∂/∂u (h/f)`, where `(m, n)` is the bidegree of `f`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::poly::{Exp, Poly, NVARS};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Uncertain,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Uncertain => "uncertain",
        };
        write!(f, "{s}")
    }
}

/// Outcome of the absolute factor count.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct AbsoluteFactors {
    pub verdict: Verdict,
    /// Number of factors over the algebraic closure; exact unless the
    /// verdict is uncertain, in which case it is an upper bound.
    pub count: usize,
}

/// Largest number of unknowns for which exact rational elimination is run.
pub const EXACT_RANK_LIMIT: usize = 600;

const PRIMES: [u64; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];

fn mono(i: u32, j: u32, u: usize, w: usize) -> Exp {
    let mut e = [0; NVARS];
    e[u] = i;
    e[w] += j;
    e
}

/// Columns of the linear system, each a sparse vector over monomials.
fn system(f: &Poly, u: usize, w: usize) -> (Vec<Vec<(usize, BigInt)>>, usize) {
    let f = f.normalized();
    let m = f.degree_in(u);
    let n = f.degree_in(w);
    let fu = f.derivative(u);
    let fw = f.derivative(w);
    let mut rows: HashMap<Exp, usize> = HashMap::new();
    let mut cols = Vec::new();
    let mut push = |p: Poly, rows: &mut HashMap<Exp, usize>| {
        let mut col = Vec::new();
        for (e, c) in p.terms() {
            let len = rows.len();
            let r = *rows.entry(*e).or_insert(len);
            col.push((r, c.to_integer()));
        }
        cols.push(col);
    };
    for i in 0..m {
        for j in 0..=n {
            let mon = Poly::monomial(mono(i, j, u, w), crate::poly::q(1));
            let mut col = &Poly::zero() - &(&mon * &fw);
            if j > 0 {
                let d = Poly::monomial(mono(i, j - 1, u, w), crate::poly::q(j as i64));
                col = &col + &(&f * &d);
            }
            push(col, &mut rows);
        }
    }
    for i in 0..=m {
        for j in 0..n {
            let mon = Poly::monomial(mono(i, j, u, w), crate::poly::q(1));
            let mut col = &mon * &fu;
            if i > 0 {
                let d = Poly::monomial(mono(i - 1, j, u, w), crate::poly::q(i as i64));
                col = &col - &(&f * &d);
            }
            push(col, &mut rows);
        }
    }
    let nrows = rows.len();
    (cols, nrows)
}

fn rank_mod_p(cols: &[Vec<(usize, BigInt)>], nrows: usize, p: u64) -> usize {
    let pb = BigInt::from(p);
    let mut pivots: HashMap<usize, Vec<u64>> = HashMap::new();
    let mut rank = 0;
    for col in cols {
        let mut v = vec![0u64; nrows];
        for (r, c) in col {
            v[*r] = c.mod_floor(&pb).to_u64().unwrap();
        }
        for r in 0..nrows {
            if v[r] == 0 {
                continue;
            }
            match pivots.get(&r) {
                Some(piv) => {
                    let k = v[r];
                    for (x, y) in v.iter_mut().zip(piv).skip(r) {
                        *x = (*x + p - k * y % p) % p;
                    }
                }
                None => {
                    let inv = inv_mod(v[r], p);
                    for x in v.iter_mut().skip(r) {
                        *x = *x * inv % p;
                    }
                    pivots.insert(r, v);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn rank_exact(cols: &[Vec<(usize, BigInt)>], nrows: usize) -> usize {
    let mut pivots: HashMap<usize, Vec<BigInt>> = HashMap::new();
    let mut rank = 0;
    for col in cols {
        let mut v = vec![BigInt::zero(); nrows];
        for (r, c) in col {
            v[*r] = c.clone();
        }
        for r in 0..nrows {
            if v[r].is_zero() {
                continue;
            }
            match pivots.get(&r) {
                Some(piv) => {
                    let a = piv[r].clone();
                    let b = v[r].clone();
                    let mut g = BigInt::zero();
                    for (x, y) in v.iter_mut().zip(piv) {
                        *x = &*x * &a - &b * y;
                        g = g.gcd(x);
                    }
                    if !g.is_zero() && g.abs() != BigInt::from(1) {
                        for x in v.iter_mut() {
                            *x = &*x / &g;
                        }
                    }
                }
                None => {
                    pivots.insert(r, v);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// Number of absolutely irreducible factors of a rational-irreducible
/// polynomial in the two variables `u, w`.
pub fn absolute_factor_count(f: &Poly, u: usize, w: usize) -> AbsoluteFactors {
    let (u, w) = if f.mentions(u) { (u, w) } else { (w, u) };
    if f.total_degree() <= 1 {
        return AbsoluteFactors { verdict: Verdict::Yes, count: 1 };
    }
    let (cols, nrows) = system(f, u, w);
    let unknowns = cols.len();
    let bound = PRIMES.iter().map(|&p| unknowns - rank_mod_p(&cols, nrows, p)).min().unwrap();
    if bound == 1 {
        return AbsoluteFactors { verdict: Verdict::Yes, count: 1 };
    }
    if unknowns > EXACT_RANK_LIMIT {
        return AbsoluteFactors { verdict: Verdict::Uncertain, count: bound };
    }
    let count = unknowns - rank_exact(&cols, nrows);
    let verdict = if count == 1 { Verdict::Yes } else { Verdict::No };
    AbsoluteFactors { verdict, count }
}

/// Absolute irreducibility of a rational-irreducible polynomial in at most
/// two variables.
pub fn absolutely_irreducible(f: &Poly) -> Verdict {
    let vars = f.variables();
    match vars.len() {
        0 => Verdict::No,
        1 => absolute_factor_count(f, vars[0], (vars[0] + 1) % NVARS).verdict,
        _ => absolute_factor_count(f, vars[0], vars[1]).verdict,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn sum_of_squares_splits() {
        assert_eq!(absolutely_irreducible(&p("x^2 + y^2")), Verdict::No);
        assert_eq!(absolute_factor_count(&p("x^2 + y^2"), 0, 1).count, 2);
    }

    #[test]
    fn linear_in_one_variable() {
        assert_eq!(absolutely_irreducible(&p("x*y - x - 1")), Verdict::Yes);
        assert_eq!(absolutely_irreducible(&p("x^3 + y^2 - 1")), Verdict::Yes);
    }

    #[test]
    fn univariate_counts_roots() {
        assert_eq!(absolute_factor_count(&p("x^3 - 2"), 0, 1).count, 3);
        assert_eq!(absolute_factor_count(&p("x^2*y^2 - 2"), 0, 1).count, 2);
    }
}
