//! Lower convex envelopes of valued point sets.
//!
//! A Newton polygon is built from points `(j, y_j)` where `y_j` may be `∞`
//! (a vanishing coefficient). Infinite points are dropped before the hull is
//! taken. Sides carry their slope as `-h/e` in lowest terms together with the
//! number `d` of `e`-steps they span.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::arith::RatVal;
use crate::error::{Error, Result};

/// A point `(x, y)` of the plane; `y = ∞` marks an absent point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePoint {
    pub x: usize,
    pub y: RatVal,
}

impl LatticePoint {
    pub fn new(x: usize, y: RatVal) -> Self {
        LatticePoint { x, y }
    }

    pub fn int(x: usize, y: i64) -> Self {
        LatticePoint { x, y: RatVal::from_int(y) }
    }
}

/// A finite vertex of a polygon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub x: usize,
    pub y: BigRational,
}

/// One segment of a polygon, of slope `-h/e`.
///
/// `e > 0` and `gcd(h, e) = 1`; negative slopes have `h > 0`. The horizontal
/// length is `d·e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Side {
    pub start: Vertex,
    pub end: Vertex,
    pub h: i64,
    pub e: i64,
    pub d: usize,
}

impl Side {
    pub fn slope(&self) -> RatVal {
        RatVal::frac(-self.h, self.e)
    }

    pub fn is_negative(&self) -> bool {
        self.h > 0
    }

    /// Horizontal length.
    pub fn width(&self) -> usize {
        self.end.x - self.start.x
    }

    /// Ordinate at the origin of the line supporting this side.
    pub fn intercept(&self) -> BigRational {
        &self.start.y + BigRational::new(BigInt::from(self.h * self.start.x as i64), BigInt::from(self.e))
    }
}

/// The lower convex envelope: vertices with strictly increasing abscissae
/// and strictly increasing slopes between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    vertices: Vec<Vertex>,
}

impl NewtonPolygon {
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// All sides, left to right (hence by increasing slope).
    pub fn sides(&self) -> Vec<Side> {
        self.vertices.windows(2).map(|w| make_side(&w[0], &w[1])).collect()
    }

    /// Total horizontal extent.
    pub fn width(&self) -> usize {
        match (self.vertices.first(), self.vertices.last()) {
            (Some(a), Some(b)) => b.x - a.x,
            _ => 0,
        }
    }

    /// Ordinate of the envelope at abscissa `x`, if `x` lies in its range.
    pub fn value_at(&self, x: usize) -> Option<BigRational> {
        let first = self.vertices.first()?;
        if x == first.x {
            return Some(first.y.clone());
        }
        for w in self.vertices.windows(2) {
            if w[0].x <= x && x <= w[1].x {
                let t = BigRational::new(BigInt::from(x - w[0].x), BigInt::from(w[1].x - w[0].x));
                return Some(&w[0].y + (&w[1].y - &w[0].y) * t);
            }
        }
        None
    }

    /// Text dump: one line `x num/den` per vertex, then one line
    /// `slope=-h/e length=d` per side.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for v in &self.vertices {
            let _ = writeln!(s, "{} {}/{}", v.x, v.y.numer(), v.y.denom());
        }
        for side in self.sides() {
            let _ = writeln!(s, "slope={}/{} length={}", -side.h, side.e, side.d);
        }
        s
    }
}

fn make_side(a: &Vertex, b: &Vertex) -> Side {
    let dx = (b.x - a.x) as i64;
    let slope = (&b.y - &a.y) / BigRational::from_integer(BigInt::from(dx));
    let h = -slope.numer().to_i64().expect("slope numerator out of range");
    let e = slope.denom().to_i64().expect("slope denominator out of range");
    Side { start: a.clone(), end: b.clone(), h, e, d: (dx / e) as usize }
}

fn finite_points(points: &[LatticePoint]) -> Vec<Vertex> {
    let mut v: Vec<Vertex> =
        points.iter().filter_map(|p| p.y.finite().map(|y| Vertex { x: p.x, y: y.clone() })).collect();
    v.sort_by(|a, b| a.x.cmp(&b.x).then_with(|| a.y.cmp(&b.y)));
    v.dedup_by(|later, earlier| later.x == earlier.x);
    v
}

/// `(b - a) × (c - a)`; positive for a counter-clockwise turn.
fn cross(a: &Vertex, b: &Vertex, c: &Vertex) -> BigRational {
    let bx = BigRational::from_integer(BigInt::from(b.x as i64 - a.x as i64));
    let cx = BigRational::from_integer(BigInt::from(c.x as i64 - a.x as i64));
    bx * (&c.y - &a.y) - (&b.y - &a.y) * cx
}

/// Lower convex envelope of the finite points (monotone chain, collinear
/// interior points dropped).
pub fn lower_hull(points: &[LatticePoint]) -> Result<NewtonPolygon> {
    let pts = finite_points(points);
    if pts.is_empty() {
        return Err(Error::NoFinitePoint);
    }
    let mut hull: Vec<Vertex> = Vec::with_capacity(pts.len());
    for p in pts {
        while hull.len() >= 2 && !cross(&hull[hull.len() - 2], &hull[hull.len() - 1], &p).is_positive() {
            hull.pop();
        }
        hull.push(p);
    }
    Ok(NewtonPolygon { vertices: hull })
}

/// Sides of strictly negative slope, most negative first.
pub fn principal_part(n: &NewtonPolygon) -> Vec<Side> {
    n.sides().into_iter().filter(Side::is_negative).collect()
}

/// Lowest line of slope `λ` touching the points: its ordinate at the origin
/// and the abscissa range where it touches.
pub fn support_ordinate(points: &[LatticePoint], slope: &RatVal) -> Result<(RatVal, (usize, usize))> {
    let lam = slope.finite().ok_or_else(|| Error::OutOfRange("support line slope must be finite".into()))?;
    let pts = finite_points(points);
    if pts.is_empty() {
        return Err(Error::NoFinitePoint);
    }
    let mut best: Option<(BigRational, usize, usize)> = None;
    for p in &pts {
        let h = &p.y - lam * BigRational::from_integer(BigInt::from(p.x));
        best = match best {
            None => Some((h, p.x, p.x)),
            Some((b, lo, hi)) => match h.cmp(&b) {
                std::cmp::Ordering::Less => Some((h, p.x, p.x)),
                std::cmp::Ordering::Equal => Some((b, lo.min(p.x), hi.max(p.x))),
                std::cmp::Ordering::Greater => Some((b, lo, hi)),
            },
        };
    }
    let (h, lo, hi) = best.unwrap();
    Ok((RatVal::Finite(h), (lo, hi)))
}
