//! Exact rational points and segment contact classification.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Formats as `n/d`, or `n` when the denominator is one.
pub fn format_q(v: &Q) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub fn parse_q(s: &str) -> Result<Q> {
    let bad = || Error::Parse { line: 0, msg: format!("invalid rational `{s}`") };
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if !d.is_positive() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl Point {
    pub fn new(x: Q, y: Q) -> Self {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Point { x: qi(x), y: qi(y) }
    }

    pub fn sub(&self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn add(&self, o: &Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn scale(&self, k: &Q) -> Point {
        Point::new(&self.x * k, &self.y * k)
    }

    /// `self + t·(other − self)`
    pub fn lerp(&self, other: &Point, t: &Q) -> Point {
        self.add(&other.sub(self).scale(t))
    }

    /// Counter-clockwise quarter turn.
    pub fn perp(&self) -> Point {
        Point::new(-&self.y, self.x.clone())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_q(&self.x), format_q(&self.y))
    }
}

pub fn cross(u: &Point, v: &Point) -> Q {
    &u.x * &v.y - &u.y * &v.x
}

/// Sign of `(b − a) × (c − a)`.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Ordering {
    orient_with(a, b, c, approx(a), approx(b), approx(c))
}

type Approx = (f64, f64);

fn approx(p: &Point) -> Approx {
    (p.x.to_f64().unwrap_or(f64::NAN), p.y.to_f64().unwrap_or(f64::NAN))
}

/// Exact orientation, decided in floating point when the float determinant
/// clears a bound on its rounding error.
fn orient_with(a: &Point, b: &Point, c: &Point, fa: Approx, fb: Approx, fc: Approx) -> Ordering {
    let det = (fb.0 - fa.0) * (fc.1 - fa.1) - (fb.1 - fa.1) * (fc.0 - fa.0);
    let perm = (fa.0.abs() + fb.0.abs()) * (fa.1.abs() + fc.1.abs())
        + (fa.1.abs() + fb.1.abs()) * (fa.0.abs() + fc.0.abs());
    if det.is_finite() && perm.is_finite() && perm > 1e-250 {
        let bound = 1e-14 * perm;
        if det > bound {
            return Ordering::Greater;
        }
        if det < -bound {
            return Ordering::Less;
        }
    }
    cross(&b.sub(a), &c.sub(a)).cmp(&Q::zero())
}

/// Whether `p`, known to be collinear with `a b`, lies on the closed segment.
fn within(a: &Point, b: &Point, p: &Point) -> bool {
    let (lx, hx) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (ly, hy) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    lx <= &p.x && &p.x <= hx && ly <= &p.y && &p.y <= hy
}

/// Whether `p` lies on the closed segment `a b`.
pub fn on_segment(a: &Point, b: &Point, p: &Point) -> bool {
    orient(a, b, p) == Ordering::Equal && within(a, b, p)
}

/// How two closed segments meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Contact {
    None,
    /// Transversal crossing at a point interior to both segments; `sign` is
    /// the sign of `det(b − a, d − c)`.
    Cross { point: Point, sign: i8 },
    /// A single common point that is an endpoint of at least one segment.
    Touch(Point),
    /// Collinear with a common subsegment.
    Overlap,
}

fn boxes_disjoint(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let (min1, max1) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (min2, max2) = if c.x <= d.x { (&c.x, &d.x) } else { (&d.x, &c.x) };
    if max1 < min2 || max2 < min1 {
        return true;
    }
    let (min1, max1) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    let (min2, max2) = if c.y <= d.y { (&c.y, &d.y) } else { (&d.y, &c.y) };
    max1 < min2 || max2 < min1
}

/// Classifies the contact of segments `a b` and `c d` exactly.
pub fn contact(a: &Point, b: &Point, c: &Point, d: &Point) -> Contact {
    if boxes_disjoint(a, b, c, d) {
        return Contact::None;
    }
    let (fa, fb, fc, fd) = (approx(a), approx(b), approx(c), approx(d));
    let o1 = orient_with(a, b, c, fa, fb, fc);
    let o2 = orient_with(a, b, d, fa, fb, fd);
    let o3 = orient_with(c, d, a, fc, fd, fa);
    let o4 = orient_with(c, d, b, fc, fd, fb);
    use Ordering::Equal;
    if o1 == Equal && o2 == Equal {
        // Collinear: compare projections on the dominant axis.
        let key = |p: &Point| if a.x != b.x { p.x.clone() } else { p.y.clone() };
        let (s1, e1) = minmax(key(a), key(b));
        let (s2, e2) = minmax(key(c), key(d));
        let lo = if s1 > s2 { s1 } else { s2 };
        let hi = if e1 < e2 { e1 } else { e2 };
        return match lo.cmp(&hi) {
            Ordering::Greater => Contact::None,
            Ordering::Less => Contact::Overlap,
            Equal => {
                let p = [a, b, c, d].into_iter().find(|p| key(p) == lo).unwrap().clone();
                Contact::Touch(p)
            }
        };
    }
    if o1 != Equal && o2 != Equal && o3 != Equal && o4 != Equal {
        if o1 != o2 && o3 != o4 {
            let r = b.sub(a);
            let s = d.sub(c);
            let den = cross(&r, &s);
            let t = cross(&c.sub(a), &s) / &den;
            let sign = if den.is_positive() { 1 } else { -1 };
            return Contact::Cross { point: a.lerp(b, &t), sign };
        }
        return Contact::None;
    }
    if o1 == Equal && within(a, b, c) {
        return Contact::Touch(c.clone());
    }
    if o2 == Equal && within(a, b, d) {
        return Contact::Touch(d.clone());
    }
    if o3 == Equal && within(c, d, a) {
        return Contact::Touch(a.clone());
    }
    if o4 == Equal && within(c, d, b) {
        return Contact::Touch(b.clone());
    }
    Contact::None
}

fn minmax(a: Q, b: Q) -> (Q, Q) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Even-odd membership of `p` in the closed polygon `poly`.
/// Returns `None` when `p` lies on the boundary.
pub fn inside_polygon(poly: &[Point], p: &Point) -> Option<bool> {
    let n = poly.len();
    let mut inside = false;
    for i in 0..n {
        let a = &poly[i];
        let b = &poly[(i + 1) % n];
        if on_segment(a, b, p) {
            return None;
        }
        if (a.y > p.y) != (b.y > p.y) {
            // x of the edge at height p.y
            let x = &a.x + (&p.y - &a.y) * (&b.x - &a.x) / (&b.y - &a.y);
            if p.x < x {
                inside = !inside;
            }
        }
    }
    Some(inside)
}
