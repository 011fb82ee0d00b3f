//! Exact commutative algebra over the rationals: Gröbner bases, elimination,
//! saturation, factorization, absolute irreducibility and the decomposition
//! of fixed-point curves into Zariski components.

pub mod absirr;
pub mod decompose;
pub mod factor;
pub mod groebner;
mod modular;

pub use absirr::{absolute_factor_count, absolutely_irreducible, Verdict};
pub use decompose::{decompose, decompose_bounded, decompose_ideal, Component, ComponentDecomposition, ComponentKind, PlaneModel};
pub use factor::{div_bivariate, factor_bivariate, gcd_bivariate, Factorization};
pub use groebner::{groebner, groebner_bounded, GroebnerBasis, MonomialOrder, DEFAULT_MAX_STEPS};

use crate::error::{Error, Result};
use crate::poly::{Poly, T, X, Y, Z};

/// A finitely generated ideal of `Q[x, y, z]`; the variable `t` is reserved
/// for Rabinowitsch and saturation tricks.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyIdeal {
    generators: Vec<Poly>,
    max_steps: u64,
}

impl PolyIdeal {
    pub fn new(gens: impl IntoIterator<Item = Poly>) -> PolyIdeal {
        let mut generators: Vec<Poly> = Vec::new();
        for g in gens {
            if g.is_zero() {
                continue;
            }
            let g = g.normalized();
            if !generators.contains(&g) {
                generators.push(g);
            }
        }
        PolyIdeal { generators, max_steps: DEFAULT_MAX_STEPS }
    }

    pub fn with_budget(mut self, max_steps: u64) -> PolyIdeal {
        self.max_steps = max_steps;
        self
    }

    pub fn budget(&self) -> u64 {
        self.max_steps
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    /// The ideal with `more` generators added.
    pub fn with(&self, more: &[Poly]) -> PolyIdeal {
        let mut p = PolyIdeal::new(self.generators.iter().chain(more).cloned());
        p.max_steps = self.max_steps;
        p
    }

    fn check_no_t(&self) -> Result<()> {
        if self.generators.iter().any(|g| g.mentions(T)) {
            return Err(Error::Precondition("generators must not involve the auxiliary variable t".into()));
        }
        Ok(())
    }

    pub fn groebner(&self, order: MonomialOrder) -> Result<GroebnerBasis> {
        groebner_bounded(&self.generators, order, self.max_steps)
    }

    /// Reduced graded-reverse-lex basis viewed as a new ideal.
    pub fn reduced(&self) -> Result<PolyIdeal> {
        let g = self.groebner(MonomialOrder::GrevLex)?;
        Ok(PolyIdeal { generators: g.basis, max_steps: self.max_steps })
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner(MonomialOrder::GrevLex)?.is_unit())
    }

    /// Krull dimension in `Q[x, y, z]`; `-1` for the unit ideal.
    pub fn dimension(&self) -> Result<i32> {
        Ok(self.groebner(MonomialOrder::GrevLex)?.dimension(&[X, Y, Z]))
    }

    /// `f` vanishes on the zero set of the ideal.
    pub fn radical_contains(&self, f: &Poly) -> Result<bool> {
        self.check_no_t()?;
        let rab = &Poly::one() - &(&Poly::var(T) * f);
        Ok(groebner_bounded(&self.with(&[rab]).generators, MonomialOrder::GrevLex, self.max_steps)?.is_unit())
    }

    /// `V(self) ⊆ V(other)`.
    pub fn variety_subset(&self, other: &PolyIdeal) -> Result<bool> {
        for g in &other.generators {
            if !self.radical_contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `V(self) = V(other)`.
    pub fn same_variety(&self, other: &PolyIdeal) -> Result<bool> {
        Ok(self.variety_subset(other)? && other.variety_subset(self)?)
    }

    /// Equality of ideals, compared through reduced bases.
    pub fn same_ideal(&self, other: &PolyIdeal) -> Result<bool> {
        Ok(self.groebner(MonomialOrder::GrevLex)? == other.groebner(MonomialOrder::GrevLex)?)
    }

    /// Saturation `I : f^∞`.
    pub fn saturate(&self, f: &Poly) -> Result<PolyIdeal> {
        self.check_no_t()?;
        let rab = &Poly::one() - &(&Poly::var(T) * f);
        let gb = groebner_bounded(&self.with(&[rab]).generators, MonomialOrder::eliminating(&[T]), self.max_steps)?;
        let kept: Vec<Poly> = gb.basis.into_iter().filter(|g| !g.mentions(T)).collect();
        PolyIdeal { generators: kept, max_steps: self.max_steps }.reduced()
    }

    /// Intersection with the subring generated by `keep`.
    pub fn eliminate(&self, keep: &[usize]) -> Result<PolyIdeal> {
        let drop: Vec<usize> = [X, Y, Z, T].into_iter().filter(|v| !keep.contains(v)).collect();
        if drop.is_empty() {
            return Ok(self.clone());
        }
        let gb = self.groebner(MonomialOrder::eliminating(&drop))?;
        let kept = gb.basis.into_iter().filter(|g| drop.iter().all(|&v| !g.mentions(v)));
        let mut p = PolyIdeal::new(kept);
        p.max_steps = self.max_steps;
        Ok(p)
    }

    /// Evaluate all generators at a point and return the largest modulus.
    pub fn residual(&self, pt: &[num_complex::Complex64; 3]) -> f64 {
        let p = [pt[0], pt[1], pt[2], num_complex::Complex64::new(0.0, 0.0)];
        self.generators.iter().map(|g| g.eval_complex(&p).norm()).fold(0.0, f64::max)
    }
}
