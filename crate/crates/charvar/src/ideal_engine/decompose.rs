//! Zariski components of a fixed-point curve in `C³`.
//!
//! Coordinate axes contained in the curve are split off first using the
//! signed permutation the monodromy induces on them. The rest is reduced to
//! plane curves: each component is recovered as the saturation of the ideal
//! by the leading coefficient of a generator that is linear in one
//! coordinate, so that the projection to the other two coordinates is
//! birational onto the plane model. Finitely many leftover points are shown
//! to lie on the curves found; whatever cannot be handled this way is
//! reported as undecided.

use serde::Serialize;

use super::absirr::{absolute_factor_count, Verdict};
use super::factor::{div_bivariate, factor_bivariate, gcd_bivariate};
use super::{MonomialOrder, PolyIdeal};
use crate::error::{Error, Result};
use crate::monodromy::{axis_action, TwistWord};
use crate::newton_genus::{genus_report, newton_polygon, GenusReport, NewtonPolygon};
use crate::poly::{q, Poly, VAR_NAMES, X, Y, Z};
use crate::trace_poly::{CurveIdeal, SignClass};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComponentKind {
    /// Each geometric component is a line (coordinate axes included).
    Line,
    PlaneCurve,
    Point,
    Undecided,
}

impl std::fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ComponentKind::Line => "line",
            ComponentKind::PlaneCurve => "plane-curve",
            ComponentKind::Point => "point",
            ComponentKind::Undecided => "undecided",
        };
        write!(f, "{s}")
    }
}

/// Birational plane model of a component.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct PlaneModel {
    /// Defining polynomial in the two kept coordinates.
    pub polynomial: Poly,
    pub coordinates: [usize; 2],
    /// Coordinate recovered from the plane model.
    pub eliminated: usize,
    /// Generator `a·v + c` expressing the eliminated coordinate `v`.
    pub lift: Option<Poly>,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct Component {
    pub kind: ComponentKind,
    /// Defining ideal (reduced graded-reverse-lex basis).
    pub ideal: Vec<Poly>,
    pub plane: Option<PlaneModel>,
    pub absolutely_irreducible: Verdict,
    /// Number of components over the algebraic closure this rational
    /// component splits into.
    pub geometric_count: usize,
    /// Index of the coordinate axis `L_{i+1}` when the component is one.
    pub axis: Option<usize>,
    /// Genus of each geometric component (conjugate components share it).
    pub genus: Option<GenusReport>,
}

impl Component {
    pub fn is_curve(&self) -> bool {
        matches!(self.kind, ComponentKind::Line | ComponentKind::PlaneCurve)
    }
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct ComponentDecomposition {
    pub components: Vec<Component>,
}

impl ComponentDecomposition {
    /// Number of one-dimensional components over the algebraic closure.
    pub fn curve_count(&self) -> usize {
        self.components.iter().filter(|c| c.is_curve()).map(|c| c.geometric_count).sum()
    }

    pub fn undecided_count(&self) -> usize {
        self.components.iter().filter(|c| c.kind == ComponentKind::Undecided).count()
    }

    pub fn point_count(&self) -> usize {
        self.components.iter().filter(|c| c.kind == ComponentKind::Point).count()
    }

    pub fn is_complete(&self) -> bool {
        self.undecided_count() == 0
    }

    /// Genus of every geometric curve component, largest first; `None` for
    /// uncertified ones.
    pub fn genera(&self) -> Vec<Option<u64>> {
        let mut out: Vec<Option<u64>> = Vec::new();
        for c in self.components.iter().filter(|c| c.is_curve()) {
            let g = c.genus.as_ref().and_then(|r| r.genus);
            out.extend(std::iter::repeat_n(g, c.geometric_count));
        }
        out.sort_by(|a, b| b.cmp(a));
        out
    }
}

/// The axis `L_{i+1}` lies in the fixed set of the sign class.
pub fn axis_in_fixed_set(w: &TwistWord, class: SignClass, i: usize) -> bool {
    let act = axis_action(w);
    let eps = class.signs()[i];
    act.permutation[i] == i && ((act.sign_parities[i] == 0) == (eps == 1))
}

/// Decompose the vanishing locus of a signed fixed-point ideal of `w`.
pub fn decompose(ci: &CurveIdeal, w: &TwistWord) -> Result<ComponentDecomposition> {
    decompose_bounded(ci, w, super::DEFAULT_MAX_STEPS)
}

pub fn decompose_bounded(ci: &CurveIdeal, w: &TwistWord, max_steps: u64) -> Result<ComponentDecomposition> {
    let axes: Vec<usize> = (0..3).filter(|&i| axis_in_fixed_set(w, ci.sign_class, i)).collect();
    decompose_ideal(&ci.generators, &axes, max_steps)
}

enum Piece {
    Curve { ideal: PolyIdeal, model: PlaneModel },
    Points(PolyIdeal),
    Undecided(PolyIdeal),
}

const COORDS: [usize; 3] = [X, Y, Z];

fn others(v: usize) -> [usize; 2] {
    let o: Vec<usize> = COORDS.into_iter().filter(|&u| u != v).collect();
    [o[0], o[1]]
}

fn budget_or(e: Error, ideal: &PolyIdeal, out: &mut Vec<Piece>) -> Result<()> {
    match e {
        Error::Budget(_) => {
            out.push(Piece::Undecided(ideal.clone()));
            Ok(())
        }
        e => Err(e),
    }
}

fn split(j: &PolyIdeal, out: &mut Vec<Piece>, depth: usize) -> Result<()> {
    match split_inner(j, out, depth) {
        Ok(()) => Ok(()),
        Err(e) => budget_or(e, j, out),
    }
}

fn split_inner(j: &PolyIdeal, out: &mut Vec<Piece>, depth: usize) -> Result<()> {
    let j = j.reduced()?;
    if j.generators().len() == 1 && j.generators()[0].is_constant() {
        return Ok(());
    }
    if depth > 24 {
        out.push(Piece::Undecided(j));
        return Ok(());
    }
    let dim = j.dimension()?;
    if dim <= 0 {
        out.push(Piece::Points(j));
        return Ok(());
    }
    if dim >= 2 {
        out.push(Piece::Undecided(j));
        return Ok(());
    }
    for g in j.generators() {
        if g.variables().len() <= 2 {
            let fa = factor_bivariate(g)?;
            if !fa.is_irreducible() && !fa.factors.is_empty() {
                for (f, _) in &fa.factors {
                    split(&j.with(&[f.clone()]), out, depth + 1)?;
                }
                return Ok(());
            }
        }
    }
    for v in COORDS {
        let [u, w] = others(v);
        let elim = j.eliminate(&[u, w])?;
        if elim.generators().is_empty() {
            continue;
        }
        let mut f = elim.generators()[0].clone();
        for g in &elim.generators()[1..] {
            f = gcd_bivariate(&f, g, u, w);
        }
        if f.is_constant() {
            continue;
        }
        let fa = factor_bivariate(&f)?;
        if !fa.is_irreducible() {
            for (h, _) in &fa.factors {
                split(&j.with(&[h.clone()]), out, depth + 1)?;
            }
            return Ok(());
        }
        let f = fa.factors[0].0.clone();
        let lex = j.groebner(MonomialOrder::lex_with_first(v))?;
        let mut linear: Vec<&Poly> = lex.basis.iter().filter(|g| g.degree_in(v) == 1).collect();
        linear.sort_by_key(|g| g.num_terms());
        for g in linear {
            let a = g.coefficients_in(v)[1].clone();
            let a_const = a.is_constant();
            if !a_const && div_bivariate(&a, &f, u, w).is_some() {
                continue;
            }
            let over = j.with(&[f.clone()]);
            let curve = if a_const { over.reduced()? } else { over.saturate(&a)? };
            out.push(Piece::Curve {
                ideal: curve,
                model: PlaneModel { polynomial: f.clone(), coordinates: [u, w], eliminated: v, lift: Some(g.clone()) },
            });
            if !a_const {
                split(&j.with(&[f.clone(), a.clone()]), out, depth + 1)?;
            }
            split(&j.saturate(&f)?, out, depth + 1)?;
            return Ok(());
        }
    }
    out.push(Piece::Undecided(j));
    Ok(())
}

/// Show that the points of `r` lie on the given curves, saturating them
/// away one curve at a time; returns what is left.
fn cover_points(r: &PolyIdeal, curves: &[PolyIdeal]) -> Result<PolyIdeal> {
    let mut r = r.clone();
    for k in curves {
        if r.is_unit()? {
            break;
        }
        if r.with(k.generators()).is_unit()? {
            continue;
        }
        for attempt in 0..4i64 {
            let mut ell = Poly::zero();
            for (idx, g) in k.generators().iter().enumerate() {
                let c = 1 + (idx as i64 * (2 * attempt + 3)) % 7;
                ell = &ell + &g.scale(&q(c));
            }
            if r.with(&[ell.clone()]).variety_subset(k)? {
                r = r.saturate(&ell)?;
                break;
            }
        }
    }
    Ok(r)
}

/// Parallel lines: the gradient directions are proportional by constants.
fn is_linear_form_polynomial(f: &Poly, u: usize, w: usize) -> bool {
    let (fu, fw) = (f.derivative(u), f.derivative(w));
    if fu.is_zero() || fw.is_zero() {
        return true;
    }
    let (eu, cu) = fu.leading().map(|(e, c)| (*e, c.clone())).unwrap();
    let cw = fw.coeff(&eu);
    (&fu.scale(&cw) - &fw.scale(&cu)).is_zero()
}

fn curve_component(ideal: PolyIdeal, model: PlaneModel) -> Result<Component> {
    let [u, w] = model.coordinates;
    let f = &model.polynomial;
    let deg = f.total_degree() as usize;
    let (verdict, count) = if is_linear_form_polynomial(f, u, w) {
        (if deg == 1 { Verdict::Yes } else { Verdict::No }, deg)
    } else {
        let a = absolute_factor_count(f, u, w);
        (a.verdict, a.count)
    };
    let factor_degree = if verdict == Verdict::Uncertain { deg } else { deg / count.max(1) };
    let lines = verdict != Verdict::Uncertain && factor_degree == 1;
    let genus = if verdict == Verdict::Yes && !lines {
        genus_report(f, u, w, verdict)?
    } else if verdict != Verdict::Uncertain && factor_degree <= 2 {
        GenusReport::rational(newton_polygon(f, u, w))
    } else {
        genus_report(f, u, w, Verdict::Uncertain)?
    };
    Ok(Component {
        kind: if lines { ComponentKind::Line } else { ComponentKind::PlaneCurve },
        ideal: ideal.generators().to_vec(),
        plane: Some(model),
        absolutely_irreducible: verdict,
        geometric_count: if verdict == Verdict::Uncertain { 1 } else { count },
        axis: None,
        genus: Some(genus),
    })
}

fn axis_ideal(i: usize) -> PolyIdeal {
    PolyIdeal::new(COORDS.into_iter().filter(|&v| v != COORDS[i]).map(Poly::var))
}

/// Decompose `V(gens)` given the axes known to lie on it.
pub fn decompose_ideal(gens: &[Poly], axes: &[usize], max_steps: u64) -> Result<ComponentDecomposition> {
    let ideal = PolyIdeal::new(gens.iter().cloned()).with_budget(max_steps);
    let mut components = Vec::new();
    let mut pieces = Vec::new();
    let mut main = ideal.clone();
    let mut axis_ideals = Vec::new();
    for &i in axes {
        let [a, b] = others(COORDS[i]);
        let zero = [a, b].map(|v| (v, Poly::zero()));
        let on_axis = ideal.generators().iter().all(|g| {
            let mut h = g.clone();
            for (v, z) in &zero {
                h = h.subs(*v, z);
            }
            h.is_zero()
        });
        if !on_axis {
            return Err(Error::Precondition(format!("axis L{} is not contained in the vanishing locus", i + 1)));
        }
        let ell = &Poly::var(a) + &Poly::var(b).scale(&q(2));
        main = main.saturate(&ell)?;
        let rest = ideal.with(&[ell.clone()]).saturate(&Poly::var(a))?;
        split(&rest, &mut pieces, 1)?;
        let ax = axis_ideal(i);
        components.push(Component {
            kind: ComponentKind::Line,
            ideal: ax.generators().to_vec(),
            plane: None,
            absolutely_irreducible: Verdict::Yes,
            geometric_count: 1,
            axis: Some(i),
            genus: Some(GenusReport::rational(NewtonPolygon::from_points(&[], [VAR_NAMES[a], VAR_NAMES[b]]))),
        });
        axis_ideals.push(ax);
    }
    split(&main, &mut pieces, 0)?;

    let mut curves: Vec<(PolyIdeal, PlaneModel)> = Vec::new();
    let mut points = Vec::new();
    let mut undecided = Vec::new();
    for piece in pieces {
        match piece {
            Piece::Curve { ideal: c, model } => {
                let mut dup = axis_ideals.iter().any(|a| c.same_variety(a).unwrap_or(false));
                for (k, _) in &curves {
                    if dup {
                        break;
                    }
                    dup = c.same_variety(k)?;
                }
                if !dup {
                    curves.push((c, model));
                }
            }
            Piece::Points(p) => points.push(p),
            Piece::Undecided(p) => undecided.push(p),
        }
    }
    let all_curves: Vec<PolyIdeal> = axis_ideals.iter().cloned().chain(curves.iter().map(|(c, _)| c.clone())).collect();
    for p in points {
        let rest = cover_points(&p, &all_curves)?;
        if rest.is_unit()? {
            continue;
        }
        let isolated = all_curves.iter().map(|k| rest.with(k.generators()).is_unit()).collect::<Result<Vec<_>>>()?;
        let kind = if isolated.iter().all(|&b| b) { ComponentKind::Point } else { ComponentKind::Undecided };
        components.push(Component {
            kind,
            ideal: rest.reduced()?.generators().to_vec(),
            plane: None,
            absolutely_irreducible: Verdict::Uncertain,
            geometric_count: 0,
            axis: None,
            genus: None,
        });
    }
    for (c, model) in curves {
        components.push(curve_component(c, model)?);
    }
    for u in undecided {
        components.push(Component {
            kind: ComponentKind::Undecided,
            ideal: u.generators().to_vec(),
            plane: None,
            absolutely_irreducible: Verdict::Uncertain,
            geometric_count: 0,
            axis: None,
            genus: None,
        });
    }
    components.sort_by_key(|c| match c.kind {
        ComponentKind::Line => 0,
        ComponentKind::PlaneCurve => 1,
        ComponentKind::Point => 2,
        ComponentKind::Undecided => 3,
    });
    Ok(ComponentDecomposition { components })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monodromy::parse_word;
    use crate::trace_poly::fixed_ideal;

    fn run(word: &str) -> ComponentDecomposition {
        let w = parse_word(word).unwrap();
        decompose(&fixed_ideal(&w, SignClass::Id).unwrap(), &w).unwrap()
    }

    #[test]
    fn a2b_minus2_has_axis() {
        let d = run("A^2*B^-2");
        assert!(d.is_complete());
        assert_eq!(d.curve_count(), 2);
        assert!(d.components.iter().any(|c| c.axis == Some(2)));
    }

    #[test]
    fn ab5_single_rational_curve() {
        let d = run("A*B^5");
        assert_eq!(d.curve_count(), 1);
        assert_eq!(d.genera(), vec![Some(0)]);
    }
}
