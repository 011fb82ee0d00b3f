//! Buchberger's algorithm over the integers (fraction-free), with normal
//! and sugar pair selection and the Gebauer–Möller installation of
//! Buchberger's criteria. Larger inputs fall back to a multi-modular
//! computation.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{total, Exp, Poly, NVARS};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic with `x > y > z > t`.
    GrevLex,
    /// Lexicographic; `perm[0]` is the largest variable.
    Lex([usize; NVARS]),
    /// Elimination order: grevlex on the variables flagged in `first`,
    /// ties broken by grevlex on the rest.
    Block([bool; NVARS]),
}

fn grevlex_masked(a: &Exp, b: &Exp, mask: &[bool; NVARS], want: bool) -> Ordering {
    let da: u32 = (0..NVARS).filter(|&i| mask[i] == want).map(|i| a[i]).sum();
    let db: u32 = (0..NVARS).filter(|&i| mask[i] == want).map(|i| b[i]).sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..NVARS).rev() {
        if mask[i] == want && a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Exp, b: &Exp) -> Ordering {
        match self {
            MonomialOrder::GrevLex => {
                let (da, db) = (total(a), total(b));
                if da != db {
                    return da.cmp(&db);
                }
                for i in (0..NVARS).rev() {
                    if a[i] != b[i] {
                        return b[i].cmp(&a[i]);
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Lex(perm) => {
                for &i in perm {
                    if a[i] != b[i] {
                        return a[i].cmp(&b[i]);
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Block(first) => {
                grevlex_masked(a, b, first, true).then_with(|| grevlex_masked(a, b, first, false))
            }
        }
    }

    /// Lex order with `v` largest and the remaining variables in index order.
    pub fn lex_with_first(v: usize) -> MonomialOrder {
        let mut perm = [0; NVARS];
        perm[0] = v;
        let mut k = 1;
        for i in 0..NVARS {
            if i != v {
                perm[k] = i;
                k += 1;
            }
        }
        MonomialOrder::Lex(perm)
    }

    pub fn eliminating(vars: &[usize]) -> MonomialOrder {
        let mut mask = [false; NVARS];
        for &v in vars {
            mask[v] = true;
        }
        MonomialOrder::Block(mask)
    }
}

/// Polynomial with integer coefficients, terms sorted decreasingly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct GPoly {
    pub(crate) t: Vec<(Exp, BigInt)>,
}

pub(super) fn divides(a: &Exp, b: &Exp) -> bool {
    (0..NVARS).all(|i| a[i] <= b[i])
}

pub(super) fn lcm_exp(a: &Exp, b: &Exp) -> Exp {
    let mut e = [0; NVARS];
    for i in 0..NVARS {
        e[i] = a[i].max(b[i]);
    }
    e
}

pub(super) fn coprime(a: &Exp, b: &Exp) -> bool {
    (0..NVARS).all(|i| a[i] == 0 || b[i] == 0)
}

pub(super) fn sub_exp(a: &Exp, b: &Exp) -> Exp {
    let mut e = [0; NVARS];
    for i in 0..NVARS {
        e[i] = a[i] - b[i];
    }
    e
}

impl GPoly {
    pub(crate) fn from_poly(p: &Poly, ord: &MonomialOrder) -> GPoly {
        let n = p.normalized();
        let mut t: Vec<(Exp, BigInt)> = n.terms().map(|(e, c)| (*e, c.to_integer())).collect();
        t.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        let mut g = GPoly { t };
        g.make_primitive();
        g
    }

    pub(crate) fn to_poly(&self) -> Poly {
        Poly::from_terms(self.t.iter().map(|(e, c)| (*e, BigRational::from_integer(c.clone()))))
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.t.is_empty()
    }

    pub(crate) fn lm(&self) -> &Exp {
        &self.t[0].0
    }

    fn lc(&self) -> &BigInt {
        &self.t[0].1
    }

    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.t {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub(crate) fn make_primitive(&mut self) {
        if self.t.is_empty() {
            return;
        }
        let mut g = self.content();
        if self.t[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in self.t.iter_mut() {
                *c = &*c / &g;
            }
        }
    }

    /// `a·self − b·m·o`, merged in order.
    fn combine(&self, a: &BigInt, b: &BigInt, m: &Exp, o: &GPoly, ord: &MonomialOrder) -> GPoly {
        let mut out = Vec::with_capacity(self.t.len() + o.t.len());
        let mut i = 0;
        let mut j = 0;
        let shifted = |k: usize| -> Exp {
            let mut e = o.t[k].0;
            for v in 0..NVARS {
                e[v] += m[v];
            }
            e
        };
        while i < self.t.len() || j < o.t.len() {
            if j >= o.t.len() {
                out.push((self.t[i].0, a * &self.t[i].1));
                i += 1;
                continue;
            }
            let ej = shifted(j);
            if i >= self.t.len() {
                out.push((ej, -(b * &o.t[j].1)));
                j += 1;
                continue;
            }
            match ord.cmp(&self.t[i].0, &ej) {
                Ordering::Greater => {
                    out.push((self.t[i].0, a * &self.t[i].1));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((ej, -(b * &o.t[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a * &self.t[i].1 - b * &o.t[j].1;
                    if !c.is_zero() {
                        out.push((ej, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        GPoly { t: out }
    }
}

pub(crate) struct Reducer<'a> {
    pub(crate) ord: MonomialOrder,
    pub(crate) steps: &'a mut u64,
    pub(crate) max_steps: u64,
}

impl Reducer<'_> {
    /// Full reduction of `f` modulo the polynomials `basis`; the result is
    /// primitive.
    pub(crate) fn reduce(&mut self, f: &GPoly, basis: &[&GPoly]) -> Result<GPoly> {
        let zeros = vec![0; basis.len()];
        self.reduce_tracked(f, basis, &zeros, &mut 0)
    }

    /// Full reduction that also maintains the sugar degree of `f`, given
    /// the sugar degrees of the basis elements.
    pub(crate) fn reduce_tracked(&mut self, f: &GPoly, basis: &[&GPoly], sugars: &[u32], sugar: &mut u32) -> Result<GPoly> {
        let mut f = f.clone();
        let mut rem: Vec<(Exp, BigInt)> = Vec::new();
        let mut since_content = 0;
        while !f.t.is_empty() {
            let (lm, lc) = (f.t[0].0, f.t[0].1.clone());
            let div = basis.iter().position(|g| divides(g.lm(), &lm));
            match div {
                Some(gi) => {
                    let g = basis[gi];
                    let gl = g.lc();
                    let limbs = 1 + (lc.bits() + gl.bits()) / 64;
                    *self.steps += 1 + (f.t.len() + g.t.len()) as u64 * limbs / 32;
                    if *self.steps > self.max_steps {
                        return Err(Error::Budget(format!("Groebner reduction exceeded {} work units", self.max_steps)));
                    }
                    let d = lc.gcd(gl);
                    let a = gl / &d;
                    let b = &lc / &d;
                    let m = sub_exp(&lm, g.lm());
                    *sugar = (*sugar).max(sugars[gi] + total(&m));
                    let mut nf = f.combine(&a, &b, &m, g, &self.ord);
                    if !a.is_one() {
                        for (_, c) in rem.iter_mut() {
                            *c *= &a;
                        }
                    }
                    debug_assert!(nf.t.first().map_or(true, |t| t.0 != lm));
                    since_content += 1;
                    if since_content >= 8 {
                        since_content = 0;
                        let mut gc = nf.content();
                        for (_, c) in &rem {
                            gc = gc.gcd(c);
                        }
                        if !gc.is_one() && !gc.is_zero() {
                            for (_, c) in nf.t.iter_mut() {
                                *c = &*c / &gc;
                            }
                            for (_, c) in rem.iter_mut() {
                                *c = &*c / &gc;
                            }
                        }
                    }
                    f = std::mem::replace(&mut nf, GPoly { t: Vec::new() });
                }
                None => {
                    rem.push(f.t.remove(0));
                }
            }
        }
        let mut r = GPoly { t: rem };
        r.make_primitive();
        Ok(r)
    }
}

pub(super) fn spoly(f: &GPoly, g: &GPoly, ord: &MonomialOrder) -> GPoly {
    let l = lcm_exp(f.lm(), g.lm());
    let mf = sub_exp(&l, f.lm());
    let mg = sub_exp(&l, g.lm());
    let d = f.lc().gcd(g.lc());
    let a = g.lc() / &d;
    let b = f.lc() / &d;
    let fs = GPoly {
        t: f.t.iter()
            .map(|(e, c)| {
                let mut x = *e;
                for v in 0..NVARS {
                    x[v] += mf[v];
                }
                (x, c.clone())
            })
            .collect(),
    };
    fs.combine(&a, &b, &mg, g, ord)
}

pub const DEFAULT_MAX_STEPS: u64 = 20_000_000;

#[derive(Clone, Debug, Serialize)]
pub struct GroebnerBasis {
    pub basis: Vec<Poly>,
    pub order: MonomialOrder,
    #[serde(skip)]
    pub(crate) internal: Vec<GPoly>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, o: &Self) -> bool {
        self.order == o.order && self.basis == o.basis
    }
}

pub fn groebner(gens: &[Poly], order: MonomialOrder) -> Result<GroebnerBasis> {
    groebner_bounded(gens, order, DEFAULT_MAX_STEPS)
}

/// Pair selection rule of the Buchberger loop.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(super) enum Strategy {
    /// Smallest least common multiple in the monomial order.
    Normal,
    /// Smallest sugar degree, ties broken by the normal rule.
    Sugar,
}

/// Work granted to the first attempt of each strategy.
const FIRST_SLICE: u64 = 20_000;

/// Reduced Gröbner basis within a budget of `max_steps` work units. Both
/// selection strategies are first tried exactly on a small slice of the
/// budget; if neither finishes, the rest of the budget goes to the
/// multi-modular algorithm, whose result is verified exactly.
pub fn groebner_bounded(gens: &[Poly], order: MonomialOrder, max_steps: u64) -> Result<GroebnerBasis> {
    let mut used = 0u64;
    for strategy in [Strategy::Normal, Strategy::Sugar] {
        let grant = FIRST_SLICE.min(max_steps.saturating_sub(used));
        if grant == 0 {
            break;
        }
        match buchberger(gens, order, grant, strategy) {
            Err(Error::Budget(_)) => used += grant,
            other => return other,
        }
    }
    let rest = max_steps.saturating_sub(used);
    if rest == 0 {
        return Err(Error::Budget(format!("Groebner basis exceeded {max_steps} work units")));
    }
    super::modular::modular_groebner(gens, order, rest)
}

fn buchberger(gens: &[Poly], order: MonomialOrder, max_steps: u64, strategy: Strategy) -> Result<GroebnerBasis> {
    let mut steps = 0u64;
    let mut store: Vec<GPoly> = Vec::new();
    let mut g_idx: Vec<usize> = Vec::new();
    let mut sugar: Vec<u32> = Vec::new();
    let mut lms: Vec<Exp> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut inputs: Vec<GPoly> = gens
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| GPoly::from_poly(p, &order))
        .collect();
    inputs.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    inputs.dedup();

    let mut red = Reducer { ord: order, steps: &mut steps, max_steps };
    let mut pending: std::collections::VecDeque<GPoly> = inputs.into();
    loop {
        let basis: Vec<&GPoly> = g_idx.iter().map(|&i| &store[i]).collect();
        let sugars: Vec<u32> = g_idx.iter().map(|&i| sugar[i]).collect();
        let (h, hs) = if let Some(f) = pending.pop_front() {
            let mut s = f.t.iter().map(|t| total(&t.0)).max().unwrap_or(0);
            (red.reduce_tracked(&f, &basis, &sugars, &mut s)?, s)
        } else if !pairs.is_empty() {
            let pr = select_pair(&mut pairs, &order, strategy);
            let sp = spoly(&store[pr.i], &store[pr.j], &order);
            let mut s = pr.sugar;
            (red.reduce_tracked(&sp, &basis, &sugars, &mut s)?, s)
        } else {
            break;
        };
        drop(basis);
        if h.is_zero() {
            continue;
        }
        if total(h.lm()) == 0 {
            let one = GPoly { t: vec![([0; NVARS], BigInt::one())] };
            return Ok(GroebnerBasis { basis: vec![Poly::one()], order, internal: vec![one] });
        }
        let hi = store.len();
        lms.push(*h.lm());
        store.push(h);
        sugar.push(hs);
        update(&lms, &sugar, &mut g_idx, &mut pairs, hi);
    }

    // Minimal, then reduced basis.
    let mut minimal: Vec<usize> = Vec::new();
    for &i in &g_idx {
        let lm = store[i].lm();
        let redundant = g_idx.iter().any(|&j| {
            j != i && divides(store[j].lm(), lm) && (store[j].lm() != lm || j < i)
        });
        if !redundant {
            minimal.push(i);
        }
    }
    let mut reduced: Vec<GPoly> = Vec::new();
    for (k, &i) in minimal.iter().enumerate() {
        let others: Vec<&GPoly> = minimal.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, &j)| &store[j]).collect();
        let r = red.reduce(&store[i], &others)?;
        reduced.push(r);
    }
    reduced.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    let basis = reduced.iter().map(|g| g.to_poly()).collect();
    Ok(GroebnerBasis { basis, order, internal: reduced })
}

pub(super) struct Pair {
    pub(super) i: usize,
    pub(super) j: usize,
    pub(super) lcm: Exp,
    pub(super) sugar: u32,
}

/// Remove and return the next critical pair.
pub(super) fn select_pair(pairs: &mut Vec<Pair>, order: &MonomialOrder, strategy: Strategy) -> Pair {
    let k = (0..pairs.len())
        .min_by(|&i, &j| {
            let (a, b) = (&pairs[i], &pairs[j]);
            let normal = order.cmp(&a.lcm, &b.lcm).then(a.j.cmp(&b.j));
            match strategy {
                Strategy::Normal => normal,
                Strategy::Sugar => a.sugar.cmp(&b.sugar).then(normal),
            }
        })
        .expect("pair list is not empty");
    pairs.swap_remove(k)
}

pub(super) fn update(lms: &[Exp], sugar: &[u32], g_idx: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: usize) {
    let lh = lms[h];
    let mut c: Vec<(usize, Exp)> = g_idx.iter().map(|&g| (g, lcm_exp(&lh, &lms[g]))).collect();
    let mut d: Vec<(usize, Exp)> = Vec::new();
    while let Some((g1, l1)) = c.pop() {
        let cop = coprime(&lh, &lms[g1]);
        let dominated = c.iter().chain(d.iter()).any(|(_, l2)| divides(l2, &l1));
        if cop || !dominated {
            d.push((g1, l1));
        }
    }
    let e: Vec<(usize, Exp)> = d.into_iter().filter(|(g, _)| !coprime(&lh, &lms[*g])).collect();
    pairs.retain(|p| {
        !(divides(&lh, &p.lcm)
            && lcm_exp(&lms[p.i], &lh) != p.lcm
            && lcm_exp(&lms[p.j], &lh) != p.lcm)
    });
    for (g, l) in e {
        let s = (sugar[g] + total(&l) - total(&lms[g])).max(sugar[h] + total(&l) - total(&lh));
        pairs.push(Pair { i: g.min(h), j: g.max(h), lcm: l, sugar: s });
    }
    g_idx.retain(|&g| !divides(&lh, &lms[g]));
    g_idx.push(h);
}

impl GroebnerBasis {
    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    /// Normal form of `f` (primitive integer multiple).
    pub fn reduce(&self, f: &Poly) -> Poly {
        if f.is_zero() {
            return Poly::zero();
        }
        let mut steps = 0;
        let mut red = Reducer { ord: self.order, steps: &mut steps, max_steps: u64::MAX };
        let basis: Vec<&GPoly> = self.internal.iter().collect();
        red.reduce(&GPoly::from_poly(f, &self.order), &basis).unwrap().to_poly()
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.reduce(f).is_zero()
    }

    pub fn leading_monomials(&self) -> Vec<Exp> {
        self.internal.iter().map(|g| *g.lm()).collect()
    }

    /// Krull dimension of the ideal restricted to the variables `vars`,
    /// read off from the leading monomials (maximal independent set).
    pub fn dimension(&self, vars: &[usize]) -> i32 {
        if self.is_unit() {
            return -1;
        }
        let lms = self.leading_monomials();
        let n = vars.len();
        let mut best = 0;
        for mask in 0u32..(1 << n) {
            let set: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).map(|i| vars[i]).collect();
            let independent = lms.iter().all(|e| (0..NVARS).any(|v| e[v] > 0 && !set.contains(&v)));
            if independent {
                best = best.max(set.len() as i32);
            }
        }
        best
    }

    /// S-polynomials of all basis pairs reduce to zero.
    pub fn verify(&self) -> bool {
        let basis: Vec<&GPoly> = self.internal.iter().collect();
        let mut steps = 0;
        let mut red = Reducer { ord: self.order, steps: &mut steps, max_steps: u64::MAX };
        for i in 0..self.internal.len() {
            for j in i + 1..self.internal.len() {
                let s = spoly(&self.internal[i], &self.internal[j], &self.order);
                if !red.reduce(&s, &basis).unwrap().is_zero() {
                    return false;
                }
            }
        }
        true
    }
}
