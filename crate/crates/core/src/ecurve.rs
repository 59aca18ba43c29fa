//! Long Weierstrass curves `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`
//! over a [`Field`], valid in every characteristic.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ffield::{frobenius_map, Embedding, Fe, Field};

/// A rational point. The derived order puts `Infinity` first, then affine
/// points by `(x, y)` under the field element order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Point {
    Infinity,
    Affine(Fe, Fe),
}

#[derive(Clone)]
pub struct Curve {
    field: Field,
    a: [Fe; 5],
}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.a.iter().map(|&e| self.field.fmt_elem(e)).collect();
        write!(f, "Curve[{}] over {:?}", c.join(","), self.field)
    }
}

pub fn make_curve(field: &Field, a: [Fe; 5]) -> Result<Curve> {
    Curve::new(field, a)
}

impl Curve {
    pub fn new(field: &Field, a: [Fe; 5]) -> Result<Curve> {
        if a.iter().any(|e| e.index() >= field.size() as usize) {
            return Err(Error::FieldMismatch("coefficient outside the field".into()));
        }
        let c = Curve { field: field.clone(), a };
        if field.is_zero(c.discriminant()) {
            return Err(Error::SingularCurve);
        }
        Ok(c)
    }

    /// Coefficients given as residues mod p (prime-field shorthand).
    pub fn from_ints(field: &Field, a: [i64; 5]) -> Result<Curve> {
        Curve::new(field, a.map(|n| field.from_int(n)))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> [Fe; 5] {
        self.a
    }

    pub fn discriminant(&self) -> Fe {
        let f = &self.field;
        let [a1, a2, a3, a4, a6] = self.a;
        let m = |x, y| f.mul(x, y);
        let ad = |x, y| f.add(x, y);
        let k = |n: i64, x| f.mul_int(x, n);
        let b2 = ad(m(a1, a1), k(4, a2));
        let b4 = ad(k(2, a4), m(a1, a3));
        let b6 = ad(m(a3, a3), k(4, a6));
        let b8 = {
            let t1 = m(m(a1, a1), a6);
            let t2 = k(4, m(a2, a6));
            let t3 = m(m(a1, a3), a4);
            let t4 = m(a2, m(a3, a3));
            let t5 = m(a4, a4);
            f.sub(f.sub(ad(ad(t1, t2), t4), t3), t5)
        };
        let d1 = f.neg(m(m(b2, b2), b8));
        let d2 = k(8, m(b4, m(b4, b4)));
        let d3 = k(27, m(b6, b6));
        let d4 = k(9, m(b2, m(b4, b6)));
        ad(f.sub(f.sub(d1, d2), d3), d4)
    }

    pub fn contains(&self, p: &Point) -> bool {
        match *p {
            Point::Infinity => true,
            Point::Affine(x, y) => {
                let f = &self.field;
                if x.index() >= f.size() as usize || y.index() >= f.size() as usize {
                    return false;
                }
                let [a1, a2, a3, a4, a6] = self.a;
                let lhs = f.add(f.mul(y, y), f.add(f.mul(f.mul(a1, x), y), f.mul(a3, y)));
                let x2 = f.mul(x, x);
                let rhs = f.add(f.add(f.mul(x2, x), f.mul(a2, x2)), f.add(f.mul(a4, x), a6));
                lhs == rhs
            }
        }
    }

    pub fn negate(&self, p: Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let f = &self.field;
                let [a1, _, a3, _, _] = self.a;
                Point::Affine(x, f.sub(f.neg(y), f.add(f.mul(a1, x), a3)))
            }
        }
    }

    /// Chord-tangent addition; both points must lie on the curve.
    pub fn add(&self, p: Point, q: Point) -> Result<Point> {
        if !self.contains(&p) || !self.contains(&q) {
            return Err(Error::PointNotOnCurve);
        }
        Ok(self.add_unchecked(p, q))
    }

    pub fn add_unchecked(&self, p: Point, q: Point) -> Point {
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return q,
            (_, Point::Infinity) => return p,
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let f = &self.field;
        let [a1, a2, a3, a4, a6] = self.a;
        if x1 == x2 && f.is_zero(f.add(f.add(y1, y2), f.add(f.mul(a1, x2), a3))) {
            return Point::Infinity;
        }
        let (lambda, nu) = if x1 != x2 {
            let dx = f.sub(x2, x1);
            let lambda = f.div(f.sub(y2, y1), dx);
            let nu = f.div(f.sub(f.mul(y1, x2), f.mul(y2, x1)), dx);
            (lambda, nu)
        } else {
            let den = f.add(f.add(f.mul_int(y1, 2), f.mul(a1, x1)), a3);
            let x1sq = f.mul(x1, x1);
            let num_l = f.sub(
                f.add(f.add(f.mul_int(x1sq, 3), f.mul(f.mul_int(a2, 2), x1)), a4),
                f.mul(a1, y1),
            );
            let num_n = f.sub(
                f.add(f.add(f.neg(f.mul(x1sq, x1)), f.mul(a4, x1)), f.mul_int(a6, 2)),
                f.mul(a3, y1),
            );
            (f.div(num_l, den), f.div(num_n, den))
        };
        let x3 = f.sub(f.sub(f.sub(f.add(f.mul(lambda, lambda), f.mul(a1, lambda)), a2), x1), x2);
        let y3 = f.sub(f.sub(f.neg(f.mul(f.add(lambda, a1), x3)), nu), a3);
        Point::Affine(x3, y3)
    }

    pub fn sub_unchecked(&self, p: Point, q: Point) -> Point {
        self.add_unchecked(p, self.negate(q))
    }

    /// `n * p` for any integer `n`.
    pub fn mul(&self, n: i64, p: Point) -> Point {
        let mut base = if n < 0 { self.negate(p) } else { p };
        let mut e = n.unsigned_abs();
        let mut acc = Point::Infinity;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add_unchecked(acc, base);
            }
            base = self.add_unchecked(base, base);
            e >>= 1;
        }
        acc
    }

    /// Same coefficients pushed through `emb`.
    pub fn base_change(&self, emb: &Embedding) -> Result<Curve> {
        if emb.src() != &self.field {
            return Err(Error::FieldMismatch("embedding source differs from the curve field".into()));
        }
        Curve::new(emb.dst(), self.a.map(|c| emb.map(c)))
    }

    /// Coordinatewise `q`-power Frobenius, `q = #base`; requires the curve to be defined over `base`.
    pub fn frobenius(&self, p: Point, base: &Field) -> Result<Point> {
        match p {
            Point::Infinity => Ok(Point::Infinity),
            Point::Affine(x, y) => Ok(Point::Affine(
                frobenius_map(&self.field, x, base)?,
                frobenius_map(&self.field, y, base)?,
            )),
        }
    }

    pub fn fmt_point(&self, p: &Point) -> String {
        match *p {
            Point::Infinity => "inf".to_string(),
            Point::Affine(x, y) => format!("({},{})", self.field.fmt_elem(x), self.field.fmt_elem(y)),
        }
    }
}

pub fn embed_point(emb: &Embedding, p: Point) -> Point {
    match p {
        Point::Infinity => Point::Infinity,
        Point::Affine(x, y) => Point::Affine(emb.map(x), emb.map(y)),
    }
}

/// All rational points in canonical order.
pub fn enumerate_points(c: &Curve) -> Vec<Point> {
    let f = c.field();
    let mut pts = vec![Point::Infinity];
    for x in f.elements() {
        for y in f.elements() {
            let p = Point::Affine(x, y);
            if c.contains(&p) {
                pts.push(p);
            }
        }
    }
    pts
}

/// The group of rational points with its invariant factors `n1 | n2`.
#[derive(Clone, Debug)]
pub struct PointGroup {
    pub points: Vec<Point>,
    pub n1: u64,
    pub n2: u64,
    pub generators: Vec<Point>,
    index: HashMap<Point, usize>,
}

impl PointGroup {
    pub fn of(c: &Curve) -> PointGroup {
        group_structure(enumerate_points(c), c)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.index.contains_key(p)
    }

    /// `(n1, n2)` with the convention that a cyclic group is `(1, n)`.
    pub fn invariants(&self) -> (u64, u64) {
        (self.n1, self.n2)
    }
}

pub fn point_order(c: &Curve, p: Point) -> u64 {
    let mut acc = p;
    let mut n = 1;
    while acc != Point::Infinity {
        acc = c.add_unchecked(acc, p);
        n += 1;
    }
    n
}

/// Fills in invariant factors and generators by exhaustive order computation.
pub fn group_structure(points: Vec<Point>, c: &Curve) -> PointGroup {
    let index: HashMap<Point, usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let n = points.len() as u64;
    let orders: Vec<u64> = points.iter().map(|&p| point_order(c, p)).collect();
    let n2 = *orders.iter().max().unwrap_or(&1);
    let n1 = n / n2;
    let gi = orders.iter().position(|&o| o == n2).unwrap_or(0);
    let g = points[gi];
    let mut generators = vec![g];
    if n1 > 1 {
        let cyclic: Vec<Point> = (0..n2).map(|i| c.mul(i as i64, g)).collect();
        let second = points.iter().copied().find(|&q| {
            if c.mul(n1 as i64, q) != Point::Infinity {
                return false;
            }
            let mut seen = std::collections::HashSet::new();
            for j in 0..n1 {
                let jq = c.mul(j as i64, q);
                for &a in &cyclic {
                    seen.insert(c.add_unchecked(a, jq));
                }
            }
            seen.len() as u64 == n
        });
        generators.push(second.expect("finite abelian group of rank <= 2 has a complement generator"));
    }
    PointGroup { points, n1, n2, generators, index }
}
