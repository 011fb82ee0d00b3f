//! Factorization of univariate and bivariate polynomials over the rationals.
//!
//! Univariate polynomials are factored by Berlekamp–Zassenhaus: distinct and
//! equal degree factorization modulo a prime, linear Hensel lifting, and
//! recombination of lifted factors by trial division. Bivariate polynomials
//! are factored by lifting a factorization of a univariate specialization in
//! `w`-adic precision and recombining in the same way.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::{Poly, NVARS};
use crate::upoly::UPoly;

// ---------------------------------------------------------------------------
// Arithmetic in F_p[u]; coefficients lowest degree first, trimmed.

type Fp = Vec<u64>;

fn fp_trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_inv(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn fp_add(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    fp_trim((0..n).map(|i| (a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)) % p).collect())
}

fn fp_sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    fp_trim((0..n).map(|i| (a.get(i).unwrap_or(&0) + p - b.get(i).unwrap_or(&0)) % p).collect())
}

fn fp_mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            c[i + j] = (c[i + j] + x * y) % p;
        }
    }
    fp_trim(c)
}

fn fp_scale(a: &Fp, k: u64, p: u64) -> Fp {
    fp_trim(a.iter().map(|&x| x * k % p).collect())
}

fn fp_divrem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    let mut r = a.clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let inv = fp_inv(*b.last().unwrap(), p);
    let mut qv = vec![0u64; r.len() - db];
    for i in (0..qv.len()).rev() {
        let k = r[i + db] * inv % p;
        if k != 0 {
            for j in 0..=db {
                r[i + j] = (r[i + j] + p - k * b[j] % p) % p;
            }
        }
        qv[i] = k;
    }
    r.truncate(db);
    (fp_trim(qv), fp_trim(r))
}

fn fp_monic(a: &Fp, p: u64) -> Fp {
    match a.last() {
        None => Vec::new(),
        Some(&l) => fp_scale(a, fp_inv(l, p), p),
    }
}

fn fp_gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = fp_divrem(&a, &b, p).1;
        a = b;
        b = r;
    }
    fp_monic(&a, p)
}

/// Returns `(s, t)` with `s a + t b = 1` for coprime `a, b`.
fn fp_bezout(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (qv, r) = fp_divrem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let s = fp_sub(&s0, &fp_mul(&qv, &s1, p), p);
        s0 = std::mem::replace(&mut s1, s);
        let t = fp_sub(&t0, &fp_mul(&qv, &t1, p), p);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = fp_inv(r0[0], p);
    (fp_scale(&s0, inv, p), fp_scale(&t0, inv, p))
}

fn fp_derivative(a: &Fp, p: u64) -> Fp {
    fp_trim(a.iter().enumerate().skip(1).map(|(i, &x)| (i as u64 % p) * x % p).collect())
}

fn fp_powmod(base: &Fp, e: &BigUint, m: &Fp, p: u64) -> Fp {
    let mut r: Fp = vec![1];
    let b = fp_divrem(base, m, p).1;
    for i in (0..e.bits()).rev() {
        r = fp_divrem(&fp_mul(&r, &r, p), m, p).1;
        if e.bit(i) {
            r = fp_divrem(&fp_mul(&r, &b, p), m, p).1;
        }
    }
    r
}

fn to_fp(f: &[BigInt], p: u64) -> Fp {
    let pb = BigInt::from(p);
    fp_trim(f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

/// Distinct degree factorization of a monic square-free polynomial.
fn ddf(f: &Fp, p: u64) -> Vec<(Fp, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let pb = BigUint::from(p);
    let mut d = 1;
    while f.len() - 1 >= 2 * d {
        h = fp_powmod(&h, &pb, &f, p);
        let g = fp_gcd(&fp_sub(&h, &x, p), &f, p);
        if g.len() > 1 {
            f = fp_divrem(&f, &g, p).0;
            h = fp_divrem(&h, &f, p).1;
            out.push((g, d));
        }
        d += 1;
    }
    if f.len() > 1 {
        let d = f.len() - 1;
        out.push((f, d));
    }
    out
}

/// Equal degree splitting (Cantor–Zassenhaus) for odd `p`.
fn edf(f: &Fp, d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<Fp> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.clone()];
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a: Fp = fp_trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let g = fp_gcd(&a, f, p);
        let split = if g.len() > 1 && g.len() < f.len() {
            g
        } else {
            let b = fp_sub(&fp_powmod(&a, &e, f, p), &vec![1], p);
            fp_gcd(&b, f, p)
        };
        if split.len() > 1 && split.len() < f.len() {
            let other = fp_monic(&fp_divrem(f, &split, p).0, p);
            let mut out = edf(&split, d, p, rng);
            out.extend(edf(&other, d, p, rng));
            return out;
        }
    }
}

fn factor_mod_p(f: &Fp, p: u64, rng: &mut ChaCha8Rng) -> Vec<Fp> {
    let m = fp_monic(f, p);
    let mut out = Vec::new();
    for (g, d) in ddf(&m, p) {
        out.extend(edf(&g, d, p, rng));
    }
    out
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|&n| (2..n).take_while(|k| k * k <= n).all(|k| n % k != 0))
}

// ---------------------------------------------------------------------------
// Integer polynomials.

fn zmul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    c
}

fn zmod(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut v: Vec<BigInt> = a.iter().map(|c| c.mod_floor(m)).collect();
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn symmetric(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m / 2;
    a.iter()
        .map(|c| {
            let c = c.mod_floor(m);
            if c > half {
                c - m
            } else {
                c
            }
        })
        .collect()
}

fn zprimitive(a: &[BigInt]) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
    }
    let mut v: Vec<BigInt> = a.iter().map(|c| c / &g).collect();
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    if v.last().is_some_and(|c| c.is_negative()) {
        v = v.into_iter().map(|c| -c).collect();
    }
    v
}

/// Exact quotient in `Z[u]`, or `None`.
fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    if b.len() > a.len() {
        return None;
    }
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    let mut qv = vec![BigInt::zero(); r.len() - db];
    for i in (0..qv.len()).rev() {
        let (k, rem) = r[i + db].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        if !k.is_zero() {
            for j in 0..=db {
                r[i + j] -= &k * &b[j];
            }
        }
        qv[i] = k;
    }
    r.iter().all(|c| c.is_zero()).then_some(qv)
}

fn fp_to_z(a: &Fp) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Two-factor Hensel lifting: `f ≡ g h (mod p^k)` with `g` monic, starting
/// from `f ≡ g0 h0 (mod p)`.
fn hensel2(f: &[BigInt], g0: &Fp, h0: &Fp, p: u64, k: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let (s, t) = fp_bezout(g0, h0, p);
    let pb = BigInt::from(p);
    let mut g = fp_to_z(g0);
    let mut h = fp_to_z(h0);
    let mut pj = pb.clone();
    for _ in 1..k {
        let next = &pj * &pb;
        let gh = zmul(&g, &h);
        let n = f.len().max(gh.len());
        let e: Vec<BigInt> = (0..n)
            .map(|i| {
                let d = f.get(i).cloned().unwrap_or_default() - gh.get(i).cloned().unwrap_or_default();
                (d.mod_floor(&next) / &pj).mod_floor(&pb)
            })
            .collect();
        let e = to_fp(&e, p);
        let te = fp_mul(&t, &e, p);
        let (qv, sigma) = fp_divrem(&te, g0, p);
        let tau = fp_add(&fp_mul(&s, &e, p), &fp_mul(&qv, h0, p), p);
        g = zadd_scaled(&g, &sigma, &pj, &next);
        h = zadd_scaled(&h, &tau, &pj, &next);
        pj = next;
    }
    (g, h)
}

fn zadd_scaled(a: &[BigInt], d: &Fp, scale: &BigInt, m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(d.len());
    let v: Vec<BigInt> = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() + scale * BigInt::from(*d.get(i).unwrap_or(&0)))
        .collect();
    zmod(&v, m)
}

fn lift_tree(f: &[BigInt], facs: &[Fp], p: u64, k: u32, m: &BigInt) -> Vec<Vec<BigInt>> {
    if facs.len() == 1 {
        let lc = f.last().unwrap().clone();
        let inv = lc.modinv(m).expect("leading coefficient is a unit");
        return vec![zmod(&f.iter().map(|c| c * &inv).collect::<Vec<_>>(), m)];
    }
    let mid = facs.len() / 2;
    let mut g0: Fp = vec![1];
    for a in &facs[..mid] {
        g0 = fp_mul(&g0, a, p);
    }
    let lc = f.last().unwrap().mod_floor(&BigInt::from(p)).to_u64().unwrap();
    let mut h0: Fp = vec![lc];
    for a in &facs[mid..] {
        h0 = fp_mul(&h0, a, p);
    }
    let (g, h) = hensel2(f, &g0, &h0, p, k);
    let mut out = lift_tree(&g, &facs[..mid], p, k, m);
    out.extend(lift_tree(&h, &facs[mid..], p, k, m));
    out
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Irreducible factors of a primitive square-free integer polynomial of
/// positive degree with positive leading coefficient.
fn zassenhaus(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let lc = f.last().unwrap().clone();
    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = to_fp(f, p);
        if fp.len() != f.len() || fp_gcd(&fp, &fp_derivative(&fp, p), p).len() != 1 {
            continue;
        }
        let facs = factor_mod_p(&fp, p, &mut rng);
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 6 || best.as_ref().unwrap().1.len() == 1 {
            break;
        }
    }
    let (p, facs) = best.expect("some prime is good");
    if facs.len() == 1 {
        return vec![f.to_vec()];
    }
    let norm: BigInt = f.iter().map(|c| c.abs()).sum();
    let bound = (BigInt::one() << (n + 1)) * norm * lc.abs();
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut m = pb.clone();
    while m <= bound {
        m *= &pb;
        k += 1;
    }
    let mut lifted = lift_tree(f, &facs, p, k, &m);
    let mut cur = f.to_vec();
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut comb: Vec<usize> = (0..s).collect();
        let mut found = None;
        loop {
            let lcur = cur.last().unwrap().clone();
            let mut g = vec![lcur];
            for &i in &comb {
                g = zmod(&zmul(&g, &lifted[i]), &m);
            }
            let cand = zprimitive(&symmetric(&g, &m));
            if let Some(qv) = zdiv_exact(&cur, &cand) {
                found = Some((cand, qv));
                break;
            }
            if !next_combination(&mut comb, lifted.len()) {
                break;
            }
        }
        match found {
            Some((cand, qv)) => {
                out.push(cand);
                cur = qv;
                for &i in comb.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => s += 1,
        }
    }
    if cur.len() > 1 {
        out.push(zprimitive(&cur));
    }
    out
}

fn sort_factors(v: &mut [(UPoly, u32)]) {
    v.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
            .then(a.1.cmp(&b.1))
    });
}

/// Factor `f` over the rationals: `f = content · ∏ g_i^{m_i}` with
/// primitive integer irreducible `g_i` of positive leading coefficient.
pub fn factor_univariate(f: &UPoly) -> (BigRational, Vec<(UPoly, u32)>) {
    if f.degree() <= 0 {
        return (f.lead(), Vec::new());
    }
    let mut out = Vec::new();
    for (g, mult) in f.squarefree_decomposition() {
        let ints = g.integer_primitive();
        for h in zassenhaus(&ints) {
            out.push((UPoly::from_bigints(&h), mult));
        }
    }
    sort_factors(&mut out);
    let mut lead = BigRational::one();
    for (g, m) in &out {
        lead *= g.lead().pow(*m as i32);
    }
    (f.lead() / lead, out)
}

// ---------------------------------------------------------------------------
// Bivariate polynomials in `Q[w][u]`.

/// Coefficients in the main variable `u`, each a polynomial in `w`.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct BiPoly {
    c: Vec<UPoly>,
}

impl BiPoly {
    fn new(mut c: Vec<UPoly>) -> BiPoly {
        while c.last().is_some_and(|p| p.is_zero()) {
            c.pop();
        }
        BiPoly { c }
    }

    pub(crate) fn from_poly(p: &Poly, u: usize, w: usize) -> BiPoly {
        let du = p.degree_in(u) as usize;
        let dw = p.degree_in(w) as usize;
        let mut c = vec![vec![BigRational::zero(); dw + 1]; du + 1];
        for (e, v) in p.terms() {
            c[e[u] as usize][e[w] as usize] += v;
        }
        BiPoly::new(c.into_iter().map(UPoly::new).collect())
    }

    pub(crate) fn to_poly(&self, u: usize, w: usize) -> Poly {
        let mut terms = Vec::new();
        for (i, cu) in self.c.iter().enumerate() {
            for (j, v) in cu.coeffs().iter().enumerate() {
                let mut e = [0u32; NVARS];
                e[u] = i as u32;
                e[w] += j as u32;
                terms.push((e, v.clone()));
            }
        }
        Poly::from_terms(terms)
    }

    fn deg_u(&self) -> isize {
        self.c.len() as isize - 1
    }

    fn deg_w(&self) -> isize {
        self.c.iter().map(|p| p.degree()).max().unwrap_or(-1)
    }

    fn lc(&self) -> UPoly {
        self.c.last().cloned().unwrap_or_default()
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn content(&self) -> UPoly {
        let mut g = UPoly::zero();
        for p in &self.c {
            g = g.gcd(p);
            if g.degree() == 0 {
                break;
            }
        }
        g
    }

    fn div_coeff(&self, d: &UPoly) -> BiPoly {
        BiPoly::new(self.c.iter().map(|p| p.exact_div(d).expect("exact coefficient division")).collect())
    }

    /// Divide by the content in `Q[w]` and scale to coprime integer
    /// coefficients with positive leading coefficient.
    fn primitive(&self) -> BiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let p = self.div_coeff(&self.content());
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in &p.c {
            for v in c.coeffs() {
                den = den.lcm(v.denom());
                num = num.gcd(v.numer());
            }
        }
        let mut scale = BigRational::new(den, num);
        if p.lc().lead().is_negative() {
            scale = -scale;
        }
        BiPoly::new(p.c.iter().map(|c| c.scale(&scale)).collect())
    }


    fn derivative_u(&self) -> BiPoly {
        BiPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, p)| p.scale(&BigRational::from_integer(BigInt::from(i))))
                .collect(),
        )
    }

    fn eval_w(&self, w0: &BigRational) -> UPoly {
        UPoly::new(self.c.iter().map(|p| p.eval(w0)).collect())
    }

    fn shift_w(&self, w0: &BigRational) -> BiPoly {
        let g = UPoly::new(vec![w0.clone(), BigRational::one()]);
        BiPoly::new(self.c.iter().map(|p| p.compose(&g)).collect())
    }

    /// Pseudo-remainder with respect to `u`.
    fn prem(&self, d: &BiPoly) -> BiPoly {
        let mut r = self.clone();
        let dd = d.deg_u();
        let ld = d.lc();
        while r.deg_u() >= dd && !r.is_zero() {
            let k = (r.deg_u() - dd) as usize;
            let lr = r.lc();
            let mut c: Vec<UPoly> = r.c.iter().map(|p| p * &ld).collect();
            for (j, dj) in d.c.iter().enumerate() {
                c[j + k] = &c[j + k] - &(dj * &lr);
            }
            c.pop();
            r = BiPoly::new(c);
        }
        r
    }

    /// Exact quotient in `Q[w][u]`, or `None`.
    fn exact_div(&self, d: &BiPoly) -> Option<BiPoly> {
        if d.deg_u() > self.deg_u() {
            return if self.is_zero() { Some(self.clone()) } else { None };
        }
        let mut r = self.c.clone();
        let dd = d.c.len() - 1;
        let ld = d.lc();
        let mut qv = vec![UPoly::zero(); r.len() - dd];
        for i in (0..qv.len()).rev() {
            let k = r[i + dd].exact_div(&ld)?;
            if !k.is_zero() {
                for j in 0..=dd {
                    r[i + j] = &r[i + j] - &(&k * &d.c[j]);
                }
            }
            qv[i] = k;
        }
        r.iter().all(|p| p.is_zero()).then(|| BiPoly::new(qv))
    }

    /// Greatest common divisor, primitive in `u` up to a content factor.
    fn gcd(&self, o: &BiPoly) -> BiPoly {
        if self.is_zero() {
            return o.primitive();
        }
        if o.is_zero() {
            return self.primitive();
        }
        let cont = self.content().gcd(&o.content());
        let (mut a, mut b) = (self.primitive(), o.primitive());
        if a.deg_u() < b.deg_u() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() && b.deg_u() > 0 {
            let r = a.prem(&b);
            a = b;
            b = if r.is_zero() { r } else { r.primitive() };
        }
        let g = if b.is_zero() { a } else { BiPoly::new(vec![UPoly::one()]) };
        BiPoly::new(g.c.iter().map(|p| p * &cont).collect())
    }
}

/// Truncated power series in `w` with coefficients in `Q[u]`.
type Series = Vec<UPoly>;

fn ser_mul(a: &Series, b: &Series, k: usize) -> Series {
    let mut c = vec![UPoly::zero(); k];
    for (i, x) in a.iter().enumerate().take(k) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(k - i) {
            c[i + j] = &c[i + j] + &(x * y);
        }
    }
    c
}

fn to_series(f: &BiPoly, k: usize) -> Series {
    (0..k)
        .map(|j| UPoly::new(f.c.iter().map(|p| p.coeff(j)).collect()))
        .collect()
}

fn from_series(s: &Series) -> BiPoly {
    let du = s.iter().map(|p| p.degree()).max().unwrap_or(-1);
    if du < 0 {
        return BiPoly::new(Vec::new());
    }
    BiPoly::new(
        (0..=du as usize)
            .map(|i| UPoly::new(s.iter().map(|p| p.coeff(i)).collect()))
            .collect(),
    )
}

/// Bezout coefficients `(s, t)` with `s a + t b = 1` for coprime `a, b`.
fn bezout(a: &UPoly, b: &UPoly) -> (UPoly, UPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (UPoly::one(), UPoly::zero());
    let (mut t0, mut t1) = (UPoly::zero(), UPoly::one());
    while !r1.is_zero() {
        let (qv, r) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let s = &s0 - &(&qv * &s1);
        s0 = std::mem::replace(&mut s1, s);
        let t = &t0 - &(&qv * &t1);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = BigRational::one() / r0.lead();
    (s0.scale(&inv), t0.scale(&inv))
}

fn ser_hensel2(f: &Series, g0: &UPoly, h0: &UPoly, k: usize) -> (Series, Series) {
    let (s, t) = bezout(g0, h0);
    let mut g = vec![UPoly::zero(); k];
    let mut h = vec![UPoly::zero(); k];
    g[0] = g0.clone();
    h[0] = h0.clone();
    for j in 1..k {
        let mut ghj = UPoly::zero();
        for i in 0..=j {
            ghj = &ghj + &(&g[i] * &h[j - i]);
        }
        let e = &f[j] - &ghj;
        if e.is_zero() {
            continue;
        }
        let te = &t * &e;
        let (qv, sigma) = te.div_rem(g0);
        let tau = &(&s * &e) + &(&qv * h0);
        g[j] = sigma;
        h[j] = tau;
    }
    (g, h)
}

fn ser_lift_tree(f: &Series, facs: &[UPoly], k: usize) -> Vec<Series> {
    if facs.len() == 1 {
        let inv = BigRational::one() / f[0].lead();
        // `f = lc(f) · g`; with a monic `g` the series lead is the unit
        // `lc_u(f)`, so divide by the `u`-leading series.
        let n = f[0].degree() as usize;
        let lead: Series = f.iter().map(|p| UPoly::constant(p.coeff(n))).collect();
        let mut inv_lead = vec![UPoly::zero(); k];
        inv_lead[0] = UPoly::constant(inv.clone());
        for j in 1..k {
            let mut acc = UPoly::zero();
            for i in 1..=j {
                acc = &acc + &(&lead[i] * &inv_lead[j - i]);
            }
            inv_lead[j] = (-&acc).scale(&inv);
        }
        return vec![ser_mul(f, &inv_lead, k)];
    }
    let mid = facs.len() / 2;
    let mut g0 = UPoly::one();
    for a in &facs[..mid] {
        g0 = &g0 * a;
    }
    let mut h0 = UPoly::constant(f[0].lead());
    for a in &facs[mid..] {
        h0 = &h0 * a;
    }
    let (g, h) = ser_hensel2(f, &g0, &h0, k);
    let mut out = ser_lift_tree(&g, &facs[..mid], k);
    out.extend(ser_lift_tree(&h, &facs[mid..], k));
    out
}

fn integer_points() -> impl Iterator<Item = i64> {
    (0i64..).flat_map(|n| if n == 0 { vec![0] } else { vec![n, -n] })
}

/// Irreducible factors of a square-free bivariate polynomial, primitive in
/// `u`, of positive `u`-degree.
fn factor_squarefree_bivariate(f: &BiPoly) -> Result<Vec<BiPoly>> {
    if f.deg_u() <= 1 {
        return Ok(vec![f.clone()]);
    }
    let lc = f.lc();
    let mut chosen = None;
    for w0 in integer_points().take(400) {
        let w0 = BigRational::from_integer(w0.into());
        if lc.eval(&w0).is_zero() {
            continue;
        }
        let f0 = f.eval_w(&w0);
        if f0.is_squarefree() {
            chosen = Some((w0, f0));
            break;
        }
    }
    let (w0, f0) = chosen.ok_or_else(|| Error::Numeric("no square-free specialization found".into()))?;
    let (_, uf) = factor_univariate(&f0);
    if uf.len() == 1 {
        return Ok(vec![f.clone()]);
    }
    let facs: Vec<UPoly> = uf.into_iter().map(|(g, _)| g.monic()).collect();
    let shifted = f.shift_w(&w0);
    let k = (f.deg_w() + lc.degree() + 1) as usize;
    let series = to_series(&shifted, k);
    let mut lifted = ser_lift_tree(&series, &facs, k);
    let mut cur = shifted;
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut comb: Vec<usize> = (0..s).collect();
        let mut found = None;
        loop {
            let lcur = cur.lc();
            let mut g: Series = (0..k).map(|j| UPoly::constant(lcur.coeff(j))).collect();
            for &i in &comb {
                g = ser_mul(&g, &lifted[i], k);
            }
            let cand = from_series(&g).primitive();
            if cand.deg_u() > 0 {
                if let Some(qv) = cur.exact_div(&cand) {
                    found = Some((cand, qv));
                    break;
                }
            }
            if !next_combination(&mut comb, lifted.len()) {
                break;
            }
        }
        match found {
            Some((cand, qv)) => {
                out.push(cand);
                cur = qv;
                for &i in comb.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => s += 1,
        }
    }
    if cur.deg_u() > 0 {
        out.push(cur.primitive());
    }
    let back = -w0;
    Ok(out.into_iter().map(|g| g.shift_w(&back).primitive()).collect())
}

/// A factorization `content · ∏ factor^multiplicity`.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub content: BigRational,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> Poly {
        let mut p = Poly::constant(self.content.clone());
        for (f, m) in &self.factors {
            p = &p * &f.pow(*m);
        }
        p
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

fn finish(p: &Poly, mut factors: Vec<(Poly, u32)>) -> Factorization {
    factors = factors.into_iter().map(|(f, m)| (f.normalized(), m)).collect();
    factors.sort_by(|a, b| {
        a.0.total_degree()
            .cmp(&b.0.total_degree())
            .then_with(|| a.0.to_string().cmp(&b.0.to_string()))
    });
    let mut prod = Poly::one();
    for (f, m) in &factors {
        prod = &prod * &f.pow(*m);
    }
    let content = match (p.leading(), prod.leading()) {
        (Some((_, a)), Some((_, b))) => a / b,
        _ => BigRational::zero(),
    };
    Factorization { content, factors }
}

/// Factor a polynomial in at most two variables over the rationals.
pub fn factor_bivariate(p: &Poly) -> Result<Factorization> {
    let vars = p.variables();
    match vars.len() {
        0 => Ok(Factorization {
            content: p.constant_term(),
            factors: Vec::new(),
        }),
        1 => {
            let v = vars[0];
            let (_, fs) = factor_univariate(&UPoly::from_poly(p, v).unwrap());
            Ok(finish(p, fs.into_iter().map(|(g, m)| (g.to_poly(v), m)).collect()))
        }
        2 => {
            let (u, w) = if p.degree_in(vars[0]) <= p.degree_in(vars[1]) {
                (vars[0], vars[1])
            } else {
                (vars[1], vars[0])
            };
            let f = BiPoly::from_poly(p, u, w);
            let mut factors: Vec<(Poly, u32)> = Vec::new();
            let cont = f.content();
            if cont.degree() > 0 {
                for (g, m) in factor_univariate(&cont).1 {
                    factors.push((g.to_poly(w), m));
                }
            }
            let prim = f.div_coeff(&cont);
            let g = prim.gcd(&prim.derivative_u());
            let sqf = prim.exact_div(&g).expect("square-free part").primitive();
            for h in factor_squarefree_bivariate(&sqf)? {
                let mut m = 0;
                let mut rest = prim.clone();
                while let Some(qv) = rest.exact_div(&h) {
                    rest = qv;
                    m += 1;
                }
                factors.push((h.to_poly(u, w), m));
            }
            Ok(finish(p, factors))
        }
        _ => Err(Error::Precondition(format!("factor_bivariate needs at most two variables, got {}", vars.len()))),
    }
}

/// Greatest common divisor of two polynomials in the same two variables
/// `(u, w)`, normalized to integer coefficients.
pub fn gcd_bivariate(a: &Poly, b: &Poly, u: usize, w: usize) -> Poly {
    let g = BiPoly::from_poly(a, u, w).gcd(&BiPoly::from_poly(b, u, w));
    g.to_poly(u, w).normalized()
}

/// Exact quotient of polynomials in the same two variables, or `None`.
pub fn div_bivariate(a: &Poly, b: &Poly, u: usize, w: usize) -> Option<Poly> {
    BiPoly::from_poly(a, u, w)
        .exact_div(&BiPoly::from_poly(b, u, w))
        .map(|q| q.to_poly(u, w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn univariate_swinnerton_dyer_like() {
        let f = UPoly::from_ints(&[1, 0, -10, 0, 1]);
        let (_, fs) = factor_univariate(&f);
        assert_eq!(fs.len(), 1);
        let g = UPoly::from_ints(&[-6, 11, -6, 1]) * UPoly::from_ints(&[2, 0, 1]).pow(2);
        let (c, fs) = factor_univariate(&g.scale(&BigRational::new(3.into(), 7.into())));
        assert_eq!(fs.len(), 4);
        assert_eq!(c, BigRational::new(3.into(), 7.into()));
    }

    #[test]
    fn univariate_many_factors() {
        let mut f = UPoly::one();
        for r in -4..=4 {
            f = f * UPoly::from_ints(&[r, 2]);
        }
        f = f * UPoly::from_ints(&[1, 1, 1]);
        let (_, fs) = factor_univariate(&f);
        assert_eq!(fs.len(), 10);
    }

    #[test]
    fn bivariate_simple() {
        let f = p("(y + 1)*(x*y - x - 1)");
        let fa = factor_bivariate(&f).unwrap();
        assert_eq!(fa.factors.len(), 2);
        assert_eq!(fa.expand(), f);
    }

    #[test]
    fn bivariate_with_content_and_powers() {
        let f = p("3*(x^2 + 1)*(x*y^2 - 2)^2*(y^3 - x^2*y + x)");
        let fa = factor_bivariate(&f).unwrap();
        assert_eq!(fa.factors.len(), 3);
        assert_eq!(fa.expand(), f);
        assert_eq!(fa.factors.iter().map(|(_, m)| *m).sum::<u32>(), 4);
    }

    #[test]
    fn bivariate_irreducible() {
        let f = p("x^2 + y^2 - 1");
        assert!(factor_bivariate(&f).unwrap().is_irreducible());
        let g = p("x^2 - 2*y^2");
        assert!(factor_bivariate(&g).unwrap().is_irreducible());
    }

    #[test]
    fn bivariate_gcd_and_division() {
        let a = p("(x - y)*(x + y + 1)");
        let b = p("(x - y)*(x^2 + y)");
        assert_eq!(gcd_bivariate(&a, &b, 0, 1), p("x - y"));
        assert_eq!(div_bivariate(&a, &p("x - y"), 0, 1).unwrap(), p("x + y + 1"));
        assert!(div_bivariate(&a, &p("x + 2"), 0, 1).is_none());
    }
}
