//! Newton polygons of bivariate polynomials and genus certificates.
//!
//! A curve `f = 0` that is nondegenerate with respect to its Newton polygon
//! and smooth in the torus has geometric genus equal to the number of
//! interior lattice points of the polygon; without the hypotheses that
//! number is an upper bound. When the plain model fails the hypotheses, the
//! certificate is searched among images of `f` under a few affine changes of
//! coordinates, which preserve the curve.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal_engine::{factor_bivariate, MonomialOrder, PolyIdeal, Verdict};
use crate::poly::{q, Poly, NVARS, T, VAR_NAMES};
use crate::upoly::UPoly;

pub type Point = (i64, i64);

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct NewtonPolygon {
    /// Extreme points, counterclockwise, starting from the lexicographically
    /// smallest vertex.
    pub vertices: Vec<Point>,
    /// Names of the coordinates `(first, second)`.
    pub coordinates: [String; 2],
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Edge {
    pub start: Point,
    pub end: Point,
    /// Primitive direction vector.
    pub direction: Point,
    /// Number of primitive steps.
    pub lattice_length: u64,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn cross(o: Point, a: Point, b: Point) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Convex hull (monotone chain) without collinear boundary points.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

impl NewtonPolygon {
    pub fn from_points(points: &[Point], coordinates: [&str; 2]) -> NewtonPolygon {
        NewtonPolygon {
            vertices: convex_hull(points),
            coordinates: [coordinates[0].to_string(), coordinates[1].to_string()],
        }
    }

    pub fn edges(&self) -> Vec<Edge> {
        let v = &self.vertices;
        let n = v.len();
        if n < 2 {
            return Vec::new();
        }
        let count = if n == 2 { 1 } else { n };
        (0..count)
            .map(|i| {
                let (a, b) = (v[i], v[(i + 1) % n]);
                let (dx, dy) = (b.0 - a.0, b.1 - a.1);
                let g = gcd(dx, dy);
                Edge { start: a, end: b, direction: (dx / g, dy / g), lattice_length: g as u64 }
            })
            .collect()
    }

    /// Twice the enclosed area.
    pub fn double_area(&self) -> i64 {
        let v = &self.vertices;
        let n = v.len();
        if n < 3 {
            return 0;
        }
        (0..n).map(|i| v[i].0 * v[(i + 1) % n].1 - v[(i + 1) % n].0 * v[i].1).sum::<i64>().abs()
    }

    pub fn boundary_lattice_count(&self) -> u64 {
        if self.vertices.len() < 3 {
            return self.edges().iter().map(|e| e.lattice_length).sum::<u64>() + 1;
        }
        self.edges().iter().map(|e| e.lattice_length).sum()
    }

    /// Strictly interior lattice points, by scanning the bounding box.
    pub fn interior_points(&self) -> Vec<Point> {
        let v = &self.vertices;
        let n = v.len();
        if n < 3 {
            return Vec::new();
        }
        let (x0, x1) = (v.iter().map(|p| p.0).min().unwrap(), v.iter().map(|p| p.0).max().unwrap());
        let (y0, y1) = (v.iter().map(|p| p.1).min().unwrap(), v.iter().map(|p| p.1).max().unwrap());
        let mut out = Vec::new();
        for x in x0 + 1..x1 {
            for y in y0 + 1..y1 {
                if (0..n).all(|i| cross(v[i], v[(i + 1) % n], (x, y)) > 0) {
                    out.push((x, y));
                }
            }
        }
        out
    }
}

/// Exponent vector of a monomial in the coordinates `(u, w)`.
fn exps(f: &Poly, u: usize, w: usize) -> Vec<(Point, BigRational)> {
    f.terms().map(|(e, c)| ((e[u] as i64, e[w] as i64), c.clone())).collect()
}

pub fn newton_polygon(f: &Poly, u: usize, w: usize) -> NewtonPolygon {
    let pts: Vec<Point> = exps(f, u, w).into_iter().map(|(p, _)| p).collect();
    NewtonPolygon::from_points(&pts, [VAR_NAMES[u], VAR_NAMES[w]])
}

pub fn interior_lattice_count(p: &NewtonPolygon) -> u64 {
    p.interior_points().len() as u64
}

/// Primitive boundary steps, counterclockwise from the first vertex, with
/// repetition counts.
pub fn boundary_vectors(p: &NewtonPolygon) -> Vec<(Point, u64)> {
    p.edges().into_iter().map(|e| (e.direction, e.lattice_length)).collect()
}

/// Sum of lattice lengths of the edges whose outward normal has a positive
/// coordinate: the Puiseux-slope count of branches at infinity.
pub fn ideal_point_count(p: &NewtonPolygon) -> u64 {
    if p.vertices.len() < 3 {
        return 0;
    }
    p.edges()
        .into_iter()
        .filter(|e| {
            let normal = (e.direction.1, -e.direction.0);
            normal.0 > 0 || normal.1 > 0
        })
        .map(|e| e.lattice_length)
        .sum()
}

/// Each edge polynomial is a monomial times a square-free univariate
/// polynomial in the edge parameter.
pub fn nondegenerate(f: &Poly, u: usize, w: usize) -> bool {
    let terms = exps(f, u, w);
    let poly = NewtonPolygon::from_points(&terms.iter().map(|t| t.0).collect::<Vec<_>>(), ["u", "w"]);
    for e in poly.edges() {
        let coeffs: Vec<BigRational> = (0..=e.lattice_length as i64)
            .map(|k| {
                let pt = (e.start.0 + k * e.direction.0, e.start.1 + k * e.direction.1);
                terms.iter().find(|t| t.0 == pt).map(|t| t.1.clone()).unwrap_or_else(BigRational::zero)
            })
            .collect();
        if !UPoly::new(coeffs).is_squarefree() {
            return false;
        }
    }
    true
}

/// Square-free over the rationals.
pub fn is_squarefree(f: &Poly) -> Result<bool> {
    Ok(factor_bivariate(f)?.factors.iter().all(|(_, m)| *m == 1))
}

/// No point with `u·w ≠ 0` where `f` and both partial derivatives vanish,
/// decided exactly by a Gröbner basis of `⟨f, f_u, f_w, 1 − t·u·w⟩`.
pub fn smooth_off_axes(f: &Poly, u: usize, w: usize) -> Result<bool> {
    if !is_squarefree(f)? {
        return Ok(false);
    }
    let guard = &Poly::one() - &(&Poly::var(T) * &(&Poly::var(u) * &Poly::var(w)));
    let ideal = PolyIdeal::new([f.clone(), f.derivative(u), f.derivative(w), guard]);
    Ok(crate::ideal_engine::groebner(ideal.generators(), MonomialOrder::GrevLex)?.is_unit())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GenusStatus {
    Certified,
    BoundOnly,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Hyperelliptic {
    Yes,
    No,
    NotApplicable,
}

impl std::fmt::Display for Hyperelliptic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Hyperelliptic::Yes => "yes",
            Hyperelliptic::No => "no",
            Hyperelliptic::NotApplicable => "n/a",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct GenusReport {
    pub status: GenusStatus,
    pub genus: Option<u64>,
    /// Interior lattice count of the polygon of the input polynomial.
    pub baker_bound: u64,
    pub hyperelliptic: Hyperelliptic,
    pub sl2_bounds: Option<(String, String)>,
    /// Polygon of the model used for the certificate (the input polygon
    /// when uncertified).
    pub polygon: NewtonPolygon,
    /// Change of coordinates applied before certification, if any.
    pub transform: Option<String>,
}

impl GenusReport {
    /// Genus of a rational curve known by construction (e.g. a line).
    pub fn rational(polygon: NewtonPolygon) -> GenusReport {
        GenusReport {
            status: GenusStatus::Certified,
            genus: Some(0),
            baker_bound: interior_lattice_count(&polygon),
            hyperelliptic: Hyperelliptic::NotApplicable,
            sl2_bounds: None,
            polygon,
            transform: None,
        }
    }
}

fn collinear(pts: &[Point]) -> bool {
    pts.len() <= 2 || pts.iter().skip(2).all(|&p| cross(pts[0], pts[1], p) == 0)
}

/// Candidate affine changes of coordinates, the identity first.
fn transforms(u: usize, w: usize) -> Vec<(String, [Poly; NVARS])> {
    let id: [Poly; NVARS] = std::array::from_fn(Poly::var);
    let name = |v: usize| VAR_NAMES[v];
    let mut out = vec![("identity".to_string(), id.clone())];
    for c in [1i64, -1, 2, -2] {
        for d in [0i64, 1, -1, 2, -2] {
            for (a, b) in [(u, w), (w, u)] {
                let mut img = id.clone();
                img[a] = &(&Poly::var(a) + &Poly::var(b).scale(&q(c))) + &Poly::int(d);
                out.push((format!("{} -> {}", name(a), img[a]), img));
            }
        }
    }
    for d in [-2i64, -1, 1, 2] {
        for a in [u, w] {
            let mut img = id.clone();
            img[a] = &Poly::var(a) + &Poly::int(d);
            out.push((format!("{} -> {}", name(a), img[a]), img));
        }
    }
    out
}

/// Genus certificate for the curve `f(u, w) = 0`.
pub fn genus_report(f: &Poly, u: usize, w: usize, absolutely_irreducible: Verdict) -> Result<GenusReport> {
    if !is_squarefree(f)? {
        return Err(Error::Precondition(format!("genus_report needs a square-free polynomial, got {f}")));
    }
    let base = newton_polygon(f, u, w);
    let baker_bound = interior_lattice_count(&base);
    let uncertified = GenusReport {
        status: GenusStatus::BoundOnly,
        genus: None,
        baker_bound,
        hyperelliptic: Hyperelliptic::NotApplicable,
        sl2_bounds: None,
        polygon: base.clone(),
        transform: None,
    };
    if absolutely_irreducible != Verdict::Yes {
        return Ok(uncertified);
    }
    for (label, img) in transforms(u, w) {
        let g = f.compose(&img);
        if nondegenerate(&g, u, w) && smooth_off_axes(&g, u, w)? {
            let polygon = newton_polygon(&g, u, w);
            let interior = polygon.interior_points();
            let genus = interior.len() as u64;
            let hyperelliptic = if genus >= 2 {
                if collinear(&interior) {
                    Hyperelliptic::Yes
                } else {
                    Hyperelliptic::No
                }
            } else {
                Hyperelliptic::NotApplicable
            };
            return Ok(GenusReport {
                status: GenusStatus::Certified,
                genus: Some(genus),
                baker_bound,
                hyperelliptic,
                sl2_bounds: None,
                polygon,
                transform: (label != "identity").then_some(label),
            });
        }
    }
    if baker_bound == 0 {
        return Ok(GenusReport {
            status: GenusStatus::Certified,
            genus: Some(0),
            transform: Some("no interior lattice points".into()),
            ..uncertified
        });
    }
    Ok(uncertified)
}

/// Lower and upper bound `2g₁ − 1 + e₁/2` and `2g₁ − 1 + e₁/2 + i_∞/2` for
/// the genus of a component of `X(M_φ)` covering a genus `g₁` component of
/// the fixed set.
pub fn genus_bounds(g1: u64, e1: u64, i_inf: u64) -> (BigRational, BigRational) {
    let two = BigRational::from_integer(BigInt::from(2));
    let lower = BigRational::from_integer(BigInt::from(2 * g1 as i64 - 1))
        + BigRational::from_integer(BigInt::from(e1)) / &two;
    let upper = &lower + BigRational::from_integer(BigInt::from(i_inf)) / &two;
    (lower, upper)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{X, Y};

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn triangle() {
        let np = newton_polygon(&p("x + y + 1"), X, Y);
        assert_eq!(np.vertices, vec![(0, 0), (1, 0), (0, 1)]);
        assert_eq!(interior_lattice_count(&np), 0);
    }

    #[test]
    fn unit_square_vectors() {
        let np = NewtonPolygon::from_points(&[(0, 0), (1, 0), (1, 1), (0, 1)], ["x", "y"]);
        assert_eq!(boundary_vectors(&np), vec![((1, 0), 1), ((0, 1), 1), ((-1, 0), 1), ((0, -1), 1)]);
    }

    #[test]
    fn nondegeneracy_examples() {
        assert!(nondegenerate(&p("x^2 + y^2 + 1"), X, Y));
        assert!(!nondegenerate(&p("(x + y)^2 + x^3"), X, Y));
    }

    #[test]
    fn smoothness() {
        assert!(smooth_off_axes(&p("x^2 + y^2 - 1"), X, Y).unwrap());
        assert!(!smooth_off_axes(&p("(x - y)^2"), X, Y).unwrap());
        assert!(!smooth_off_axes(&p("(y - 1)^2 - (x - 1)^3 - (x - 1)^2"), X, Y).unwrap());
    }

    #[test]
    fn elliptic_curve_genus() {
        let f = p("y^2 - x^3 - x - 1");
        let r = genus_report(&f, X, Y, Verdict::Yes).unwrap();
        assert_eq!(r.status, GenusStatus::Certified);
        assert_eq!(r.genus, Some(1));
    }

    #[test]
    fn bounds_formula() {
        let (l, u) = genus_bounds(1, 4, 0);
        assert_eq!((l.to_string(), u.to_string()), ("3".to_string(), "3".to_string()));
        let (l, u) = genus_bounds(0, 0, 0);
        assert_eq!((l.to_string(), u.to_string()), ("-1".to_string(), "-1".to_string()));
    }
}
