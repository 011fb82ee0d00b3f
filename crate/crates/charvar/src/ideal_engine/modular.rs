//! Multi-modular Gröbner bases.
//!
//! The reduced basis is computed over prime fields `F_p` for a sequence of
//! word-sized primes, the coefficients are combined by Chinese remaindering
//! and lifted to the rationals by rational reconstruction. A lift is
//! accepted once it agrees with the basis modulo a further prime and passes
//! an exact check over the integers: every input reduces to zero and every
//! S-polynomial of the lift reduces to zero.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::groebner::{
    coprime, divides, lcm_exp, select_pair, spoly, sub_exp, update, GPoly, GroebnerBasis, MonomialOrder, Pair, Reducer,
    Strategy,
};
use crate::error::{Error, Result};
use crate::poly::{total, Exp, Poly, NVARS};

/// Polynomial over `F_p`, terms sorted decreasingly, monic when nonzero.
#[derive(Clone, PartialEq, Eq, Debug)]
struct PPoly {
    t: Vec<(Exp, u64)>,
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes below `2³¹`, largest first.
fn primes() -> impl Iterator<Item = u64> {
    (1u64 << 20..(1u64 << 31)).rev().filter(|&n| n % 2 == 1 && is_prime(n))
}

impl PPoly {
    fn lm(&self) -> &Exp {
        &self.t[0].0
    }

    fn make_monic(&mut self, p: u64) {
        if let Some(&(_, c)) = self.t.first() {
            if c != 1 {
                let inv = inv_mod(c, p);
                for (_, v) in self.t.iter_mut() {
                    *v = mul_mod(*v, inv, p);
                }
            }
        }
    }

    /// Image of an integer polynomial, `None` when the leading coefficient
    /// vanishes modulo `p`.
    fn from_gpoly(g: &GPoly, p: u64) -> Option<PPoly> {
        let pb = BigInt::from(p);
        let t: Vec<(Exp, u64)> = g
            .t
            .iter()
            .map(|(e, c)| (*e, c.mod_floor(&pb).to_u64().expect("residue fits in u64")))
            .filter(|(_, c)| *c != 0)
            .collect();
        if t.first().map(|x| x.0) != g.t.first().map(|x| x.0) {
            return None;
        }
        let mut f = PPoly { t };
        f.make_monic(p);
        Some(f)
    }

    /// `self − c·m·g`, merged in order.
    fn sub_scaled(&self, c: u64, m: &Exp, g: &PPoly, ord: &MonomialOrder, p: u64) -> PPoly {
        let mut out = Vec::with_capacity(self.t.len() + g.t.len());
        let (mut i, mut j) = (0, 0);
        let shifted = |k: usize| -> Exp {
            let mut e = g.t[k].0;
            for v in 0..NVARS {
                e[v] += m[v];
            }
            e
        };
        while i < self.t.len() || j < g.t.len() {
            if j >= g.t.len() {
                out.push(self.t[i]);
                i += 1;
                continue;
            }
            let ej = shifted(j);
            let neg = (p - mul_mod(c, g.t[j].1, p)) % p;
            if i >= self.t.len() {
                out.push((ej, neg));
                j += 1;
                continue;
            }
            match ord.cmp(&self.t[i].0, &ej) {
                std::cmp::Ordering::Greater => {
                    out.push(self.t[i]);
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((ej, neg));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let v = (self.t[i].1 + neg) % p;
                    if v != 0 {
                        out.push((ej, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        PPoly { t: out }
    }
}

struct ModContext {
    ord: MonomialOrder,
    p: u64,
    work: u64,
    max_work: u64,
}

impl ModContext {
    fn charge(&mut self, units: u64) -> Result<()> {
        self.work += units;
        if self.work > self.max_work {
            return Err(Error::Budget(format!("modular Groebner basis exceeded {} work units", self.max_work)));
        }
        Ok(())
    }

    /// Full reduction modulo monic `basis`; the result is monic.
    fn reduce(&mut self, f: &PPoly, basis: &[&PPoly]) -> Result<PPoly> {
        let mut f = f.clone();
        let mut rem: Vec<(Exp, u64)> = Vec::new();
        let mut head = 0;
        while head < f.t.len() {
            let (lm, lc) = f.t[head];
            match basis.iter().find(|g| divides(g.lm(), &lm)) {
                Some(g) => {
                    self.charge(1 + (f.t.len() - head + g.t.len()) as u64 / 32)?;
                    let m = sub_exp(&lm, g.lm());
                    let rest = PPoly { t: f.t.split_off(head) };
                    f = rest.sub_scaled(lc, &m, g, &self.ord, self.p);
                    head = 0;
                }
                None => {
                    rem.push((lm, lc));
                    head += 1;
                    if head > 64 {
                        f.t.drain(..head);
                        head = 0;
                    }
                }
            }
        }
        rem.extend(f.t.drain(head..));
        let mut r = PPoly { t: rem };
        r.make_monic(self.p);
        Ok(r)
    }

    fn spoly(&self, f: &PPoly, g: &PPoly) -> PPoly {
        let l = lcm_exp(f.lm(), g.lm());
        let mf = sub_exp(&l, f.lm());
        let mg = sub_exp(&l, g.lm());
        let fs = PPoly {
            t: f.t
                .iter()
                .map(|(e, c)| {
                    let mut x = *e;
                    for v in 0..NVARS {
                        x[v] += mf[v];
                    }
                    (x, *c)
                })
                .collect(),
        };
        fs.sub_scaled(1, &mg, g, &self.ord, self.p)
    }

    /// Reduced monic basis sorted increasingly by leading monomial.
    fn buchberger(&mut self, inputs: &[PPoly], strategy: Strategy) -> Result<Vec<PPoly>> {
        let mut store: Vec<PPoly> = Vec::new();
        let mut lms: Vec<Exp> = Vec::new();
        let mut sugar: Vec<u32> = Vec::new();
        let mut g_idx: Vec<usize> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();
        let mut pending: std::collections::VecDeque<PPoly> = inputs.iter().cloned().collect();
        loop {
            let (cand, s) = if let Some(f) = pending.pop_front() {
                let s = f.t.iter().map(|t| total(&t.0)).max().unwrap_or(0);
                (f, s)
            } else if !pairs.is_empty() {
                let pr = select_pair(&mut pairs, &self.ord, strategy);
                (self.spoly(&store[pr.i], &store[pr.j]), pr.sugar)
            } else {
                break;
            };
            let basis: Vec<&PPoly> = g_idx.iter().map(|&i| &store[i]).collect();
            let h = self.reduce(&cand, &basis)?;
            if h.t.is_empty() {
                continue;
            }
            if total(h.lm()) == 0 {
                return Ok(vec![PPoly { t: vec![([0; NVARS], 1)] }]);
            }
            let hi = store.len();
            lms.push(*h.lm());
            store.push(h);
            sugar.push(s);
            update(&lms, &sugar, &mut g_idx, &mut pairs, hi);
        }
        let mut minimal: Vec<usize> = Vec::new();
        for &i in &g_idx {
            let redundant = g_idx.iter().any(|&j| j != i && divides(&lms[j], &lms[i]) && (lms[j] != lms[i] || j < i));
            if !redundant {
                minimal.push(i);
            }
        }
        let mut reduced = Vec::new();
        for (k, &i) in minimal.iter().enumerate() {
            let others: Vec<&PPoly> =
                minimal.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, &j)| &store[j]).collect();
            reduced.push(self.reduce(&store[i], &others)?);
        }
        reduced.sort_by(|a, b| self.ord.cmp(a.lm(), b.lm()));
        Ok(reduced)
    }
}

/// Chinese-remainder accumulation of bases sharing one leading-monomial
/// pattern.
struct Lift {
    lms: Vec<Exp>,
    /// Per element: monomial support and residues modulo `modulus`.
    elements: Vec<Vec<(Exp, BigInt)>>,
    modulus: BigInt,
    primes: usize,
}

impl Lift {
    fn new(g: &[PPoly], p: u64) -> Lift {
        Lift {
            lms: g.iter().map(|f| *f.lm()).collect(),
            elements: g.iter().map(|f| f.t.iter().map(|(e, c)| (*e, BigInt::from(*c))).collect()).collect(),
            modulus: BigInt::from(p),
            primes: 1,
        }
    }

    fn absorb(&mut self, g: &[PPoly], p: u64, ord: &MonomialOrder) {
        let pb = BigInt::from(p);
        let m_inv = BigInt::from(inv_mod((&self.modulus % &pb).to_u64().expect("residue fits"), p));
        for (el, f) in self.elements.iter_mut().zip(g) {
            let mut merged: Vec<(Exp, BigInt, u64)> = Vec::new();
            let (mut i, mut j) = (0, 0);
            while i < el.len() || j < f.t.len() {
                let take_old = j >= f.t.len() || (i < el.len() && ord.cmp(&el[i].0, &f.t[j].0) == std::cmp::Ordering::Greater);
                let take_new = i >= el.len() || (j < f.t.len() && ord.cmp(&el[i].0, &f.t[j].0) == std::cmp::Ordering::Less);
                if take_old {
                    merged.push((el[i].0, el[i].1.clone(), 0));
                    i += 1;
                } else if take_new {
                    merged.push((f.t[j].0, BigInt::zero(), f.t[j].1));
                    j += 1;
                } else {
                    merged.push((el[i].0, el[i].1.clone(), f.t[j].1));
                    i += 1;
                    j += 1;
                }
            }
            *el = merged
                .into_iter()
                .map(|(e, r, s)| {
                    let diff = (BigInt::from(s) - &r).mod_floor(&pb);
                    let k = (diff * &m_inv).mod_floor(&pb);
                    (e, r + &self.modulus * k)
                })
                .collect();
        }
        self.modulus *= &pb;
        self.primes += 1;
    }

    /// Rational lift as primitive integer polynomials, if every coefficient
    /// reconstructs.
    fn reconstruct(&self, ord: &MonomialOrder) -> Option<Vec<GPoly>> {
        let mut out = Vec::new();
        for el in &self.elements {
            let mut terms: Vec<(Exp, BigRational)> = Vec::new();
            for (e, r) in el {
                let q = rational_reconstruction(r, &self.modulus)?;
                if !q.is_zero() {
                    terms.push((*e, q));
                }
            }
            let poly = Poly::from_terms(terms);
            if poly.is_zero() {
                return None;
            }
            out.push(GPoly::from_poly(&poly, ord));
        }
        Some(out)
    }

    fn matches(&self, cand: &[GPoly], g: &[PPoly], p: u64) -> bool {
        cand.len() == g.len()
            && cand.iter().zip(g).all(|(c, f)| PPoly::from_gpoly(c, p).is_some_and(|cp| cp == *f))
    }
}

/// `n/d ≡ a (mod m)` with `|n|, |d| ≤ √(m/2)`.
fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() && !r1.is_zero() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Exact check that `cand` is a Gröbner basis containing every input.
fn verify(inputs: &[GPoly], cand: &[GPoly], ord: MonomialOrder, work: &mut u64, max_work: u64) -> Result<bool> {
    let basis: Vec<&GPoly> = cand.iter().collect();
    let mut red = Reducer { ord, steps: work, max_steps: max_work };
    for f in inputs {
        if !red.reduce(f, &basis)?.is_zero() {
            return Ok(false);
        }
    }
    for i in 0..cand.len() {
        for j in i + 1..cand.len() {
            if coprime(cand[i].lm(), cand[j].lm()) {
                continue;
            }
            let s = spoly(&cand[i], &cand[j], &ord);
            if !red.reduce(&s, &basis)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// First slice of work given to each strategy on the first prime.
const PROBE_SLICE: u64 = 50_000;

pub(super) fn modular_groebner(gens: &[Poly], order: MonomialOrder, max_work: u64) -> Result<GroebnerBasis> {
    let mut inputs: Vec<GPoly> = gens.iter().filter(|p| !p.is_zero()).map(|p| GPoly::from_poly(p, &order)).collect();
    inputs.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    inputs.dedup();
    let mut ctx = ModContext { ord: order, p: 0, work: 0, max_work };
    let mut strategy: Option<Strategy> = None;
    let mut lifts: Vec<Lift> = Vec::new();
    let mut candidate: Option<(usize, Vec<GPoly>)> = None;
    for p in primes() {
        let Some(images) = inputs.iter().map(|g| PPoly::from_gpoly(g, p)).collect::<Option<Vec<_>>>() else {
            continue;
        };
        ctx.p = p;
        let gp = match strategy {
            Some(s) => ctx.buchberger(&images, s)?,
            None => {
                let (s, g) = probe(&mut ctx, &images)?;
                strategy = Some(s);
                g
            }
        };
        let lms: Vec<Exp> = gp.iter().map(|f| *f.lm()).collect();
        if let Some((li, cand)) = candidate.take() {
            if lifts[li].lms == lms && lifts[li].matches(&cand, &gp, p) {
                let mut w = ctx.work;
                let ok = verify(&inputs, &cand, order, &mut w, max_work)?;
                ctx.work = w;
                if ok {
                    let mut internal = cand;
                    internal.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
                    let basis = internal.iter().map(|g| g.to_poly()).collect();
                    return Ok(GroebnerBasis { basis, order, internal });
                }
            }
        }
        let li = match lifts.iter().position(|l| l.lms == lms) {
            Some(i) => {
                lifts[i].absorb(&gp, p, &order);
                i
            }
            None => {
                lifts.push(Lift::new(&gp, p));
                lifts.len() - 1
            }
        };
        let most = lifts.iter().map(|l| l.primes).max().unwrap_or(0);
        if lifts[li].primes == most {
            candidate = lifts[li].reconstruct(&order).map(|c| (li, c));
        }
    }
    Err(Error::Budget("ran out of primes for the modular Groebner basis".into()))
}

/// Run both strategies on growing slices until one finishes; report which.
fn probe(ctx: &mut ModContext, images: &[PPoly]) -> Result<(Strategy, Vec<PPoly>)> {
    let max = ctx.max_work;
    let mut slice = PROBE_SLICE;
    loop {
        for s in [Strategy::Normal, Strategy::Sugar] {
            let remaining = max.saturating_sub(ctx.work);
            if remaining == 0 {
                return Err(Error::Budget(format!("modular Groebner basis exceeded {max} work units")));
            }
            let start = ctx.work;
            ctx.max_work = start + slice.min(remaining);
            let r = ctx.buchberger(images, s);
            ctx.max_work = max;
            match r {
                Ok(g) => return Ok((s, g)),
                Err(Error::Budget(_)) => {}
                Err(e) => return Err(e),
            }
        }
        slice = slice.saturating_mul(4);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal_engine::groebner::groebner;

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn reconstruction_inverts_reduction() {
        let m = BigInt::from(1_000_003i64) * BigInt::from(999_983i64);
        let q = BigRational::new(BigInt::from(-37), BigInt::from(91));
        let a = (BigInt::from(-37) * BigInt::from(91).modinv(&m).unwrap()).mod_floor(&m);
        assert_eq!(rational_reconstruction(&a, &m), Some(q));
    }

    #[test]
    fn agrees_with_exact_basis() {
        let gens = [p("2*x^2*y - 3*y^2 + 1"), p("x*y^2 - 7*x + 2"), p("z*x - y - 5")];
        for order in [MonomialOrder::GrevLex, MonomialOrder::lex_with_first(0), MonomialOrder::eliminating(&[2])] {
            let exact = groebner(&gens, order).unwrap();
            let modular = modular_groebner(&gens, order, u64::MAX).unwrap();
            assert_eq!(exact.basis, modular.basis);
        }
    }

    #[test]
    fn unit_ideal() {
        let g = modular_groebner(&[p("x*y - 1"), p("x")], MonomialOrder::GrevLex, u64::MAX).unwrap();
        assert!(g.is_unit());
    }
}
