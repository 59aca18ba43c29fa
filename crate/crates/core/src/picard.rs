//! Divisor class bookkeeping for an elliptic curve `X` and its constant field
//! extension `X' = X (x) F_{q^2}`.
//!
//! The base point is `x0 = Infinity`, so `Cl^0 X` and `Cl^1 X` are both
//! identified with `X(F_q)`: a point `P` stands for `P - x0` in degree 0 and
//! for the place `P` in degree 1. Classes of arbitrary degree are pairs
//! `(n, P)` meaning `P + (n - 1) x0`, i.e. `n x0 + (P - x0)`.

use std::collections::{BTreeSet, HashMap};

use crate::ecurve::{embed_point, Curve, Point, PointGroup};
use crate::error::{Error, Result};
use crate::ffield::{embed_subfield, Embedding, Field};

/// A nonzero class of `Q = Cl^0 X' / Cl^0 X` up to sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TClass {
    /// Minimal `X'`-point over `D` and `-D` modulo `Cl^0 X`.
    pub rep: Point,
    /// `2D` lies in `Cl^0 X`.
    pub is_half: bool,
}

/// A coset of `Cl^1 X` modulo `2 Cl^0 X`, represented by its minimal point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SClass {
    pub rep: Point,
}

/// A character `Cl X -> {+1, -1}`, nontrivial on `Cl^0 X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadChar {
    /// `omega_0(P)` indexed like `ClassData::group0.points`.
    pub values: Vec<i8>,
    /// `omega(x0)`; fixes the extension from `Cl^0 X` to `Cl X`.
    pub sign_on_x0: i8,
}

impl QuadChar {
    /// `omega` on the class `(deg, P)`.
    pub fn eval(&self, cd: &ClassData, deg: i64, p: &Point) -> i8 {
        let s = if deg.rem_euclid(2) == 0 { 1 } else { self.sign_on_x0 };
        s * self.values[cd.group0.index_of(p).expect("point of X(F_q)")]
    }
}

#[derive(Clone, Debug)]
pub struct ClassData {
    pub curve: Curve,
    pub curve2: Curve,
    pub emb: Embedding,
    pub group0: PointGroup,
    pub group0p: PointGroup,
    pub two_cl0: BTreeSet<Point>,
    pub cl0_2tor: Vec<Point>,
    /// Minimal `X'`-point of each coset of `Q`; the first entry is the zero coset.
    pub q_reps: Vec<Point>,
    pub q_2tor: Vec<usize>,
    pub h: usize,
    pub h2: usize,
    pub hp: usize,
    pub h2p: usize,
    pub r: usize,
    pub rp: usize,
    /// Whether `h2' = h2` held for this curve.
    pub h2_matches: bool,
    q: u64,
    coset_of: HashMap<Point, usize>,
    sigma: HashMap<Point, Point>,
    embedded: HashMap<Point, Point>,
    t_classes: Vec<TClass>,
    t_of_coset: Vec<Option<usize>>,
    s_classes: Vec<SClass>,
    s_of_point: HashMap<Point, usize>,
}

pub fn build_class_data(curve: &Curve) -> Result<ClassData> {
    build_class_data_with_cap(curve, crate::ffield::DEFAULT_CAP)
}

/// As [`build_class_data`], with a cap on the size of `F_{q^2}`.
pub fn build_class_data_with_cap(curve: &Curve, cap: u64) -> Result<ClassData> {
    let f = curve.field();
    let f2 = Field::with_cap(f.p(), 2 * f.k(), cap)?;
    let emb = embed_subfield(f, &f2)?;
    let curve2 = curve.base_change(&emb)?;
    let group0 = PointGroup::of(curve);
    let group0p = PointGroup::of(&curve2);
    let q = f.size() as u64;

    let two_cl0: BTreeSet<Point> = group0.points.iter().map(|&p| curve.add_unchecked(p, p)).collect();
    let cl0_2tor: Vec<Point> = group0.points.iter().copied().filter(|&p| curve.add_unchecked(p, p) == Point::Infinity).collect();

    let embedded: HashMap<Point, Point> = group0.points.iter().map(|&p| (embed_point(&emb, p), p)).collect();
    let mut sigma = HashMap::with_capacity(group0p.len());
    for &p in &group0p.points {
        sigma.insert(p, curve2.frobenius(p, f)?);
    }
    for &img in embedded.keys() {
        if sigma[&img] != img {
            return Err(Error::Inconsistent("embedded point not fixed by Frobenius".into()));
        }
    }
    let fixed = sigma.iter().filter(|(a, b)| a == b).count();
    if fixed != embedded.len() {
        return Err(Error::Inconsistent("Frobenius-fixed points differ from X(F_q)".into()));
    }

    // Cosets of the embedded subgroup; scanning in point order makes the first
    // unassigned point the minimum of its coset.
    let mut coset_of: HashMap<Point, usize> = HashMap::with_capacity(group0p.len());
    let mut q_reps = Vec::new();
    for &p in &group0p.points {
        if coset_of.contains_key(&p) {
            continue;
        }
        let idx = q_reps.len();
        q_reps.push(p);
        for &e in embedded.keys() {
            coset_of.insert(curve2.add_unchecked(p, e), idx);
        }
    }
    let q_2tor: Vec<usize> = (0..q_reps.len())
        .filter(|&c| embedded.contains_key(&curve2.add_unchecked(q_reps[c], q_reps[c])))
        .collect();

    let h = group0.len();
    let h2 = cl0_2tor.len();
    let hp = q_reps.len();
    let h2p = q_2tor.len();
    if !(h + h2).is_multiple_of(2) || !(hp + h2p).is_multiple_of(2) {
        return Err(Error::Inconsistent(format!("odd h+h2 ({h}+{h2}) or h'+h2' ({hp}+{h2p})")));
    }
    if hp as i64 != 2 * (q as i64 + 1) - h as i64 {
        return Err(Error::Inconsistent(format!("h' = {hp} but 2(q+1)-h = {}", 2 * (q as i64 + 1) - h as i64)));
    }
    if h * hp != group0p.len() {
        return Err(Error::Inconsistent(format!("h*h' = {} but #X'(F_q2) = {}", h * hp, group0p.len())));
    }

    let neg_coset = |c: usize| coset_of[&curve2.negate(q_reps[c])];
    let mut t_classes: Vec<TClass> = Vec::new();
    for c in 1..q_reps.len() {
        let rep = q_reps[c].min(q_reps[neg_coset(c)]);
        let is_half = embedded.contains_key(&curve2.add_unchecked(rep, rep));
        let t = TClass { rep, is_half };
        if !t_classes.contains(&t) {
            t_classes.push(t);
        }
    }
    t_classes.sort();
    let mut t_of_coset = vec![None; q_reps.len()];
    for (c, slot) in t_of_coset.iter_mut().enumerate().skip(1) {
        let rep = q_reps[c].min(q_reps[neg_coset(c)]);
        *slot = t_classes.iter().position(|t| t.rep == rep);
    }

    let mut s_of_point = HashMap::new();
    let mut s_classes = Vec::new();
    for &y in &group0.points {
        if s_of_point.contains_key(&y) {
            continue;
        }
        let idx = s_classes.len();
        s_classes.push(SClass { rep: y });
        for &d in &two_cl0 {
            s_of_point.insert(curve.add_unchecked(y, d), idx);
        }
    }

    let rp = (hp + h2p) / 2 - 1;
    if t_classes.len() != rp || s_classes.len() != h2 {
        return Err(Error::Inconsistent("class counts disagree with r' or h2".into()));
    }
    Ok(ClassData {
        curve: curve.clone(),
        curve2,
        emb,
        group0,
        group0p,
        two_cl0,
        cl0_2tor,
        q_reps,
        q_2tor,
        h,
        h2,
        hp,
        h2p,
        r: (h + h2) / 2 - 1,
        rp,
        h2_matches: h2 == h2p,
        q,
        coset_of,
        sigma,
        embedded,
        t_classes,
        t_of_coset,
        s_classes,
        s_of_point,
    })
}

impl ClassData {
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn points(&self) -> &[Point] {
        &self.group0.points
    }

    pub fn add(&self, a: Point, b: Point) -> Point {
        self.curve.add_unchecked(a, b)
    }

    pub fn sub(&self, a: Point, b: Point) -> Point {
        self.curve.sub_unchecked(a, b)
    }

    pub fn neg(&self, a: Point) -> Point {
        self.curve.negate(a)
    }

    pub fn is_double(&self, p: &Point) -> bool {
        self.two_cl0.contains(p)
    }

    pub fn is_two_torsion(&self, p: Point) -> bool {
        self.add(p, p) == Point::Infinity
    }

    /// `a == b` modulo `2 Cl^0 X`.
    pub fn congruent_mod_doubles(&self, a: Point, b: Point) -> bool {
        self.is_double(&self.sub(a, b))
    }

    pub fn sigma(&self, p: &Point) -> Point {
        self.sigma[p]
    }

    pub fn is_embedded(&self, p: &Point) -> bool {
        self.embedded.contains_key(p)
    }

    pub fn embed(&self, p: Point) -> Point {
        embed_point(&self.emb, p)
    }

    /// Coset index in `Q` of an `X'`-point.
    pub fn coset(&self, p: &Point) -> usize {
        self.coset_of[p]
    }

    pub fn t_classes(&self) -> &[TClass] {
        &self.t_classes
    }

    /// Index of the `TClass` of an `X'`-point, `None` on the zero coset.
    pub fn t_class_of(&self, p: &Point) -> Option<usize> {
        self.t_of_coset[self.coset(p)]
    }

    pub fn s_classes(&self) -> &[SClass] {
        &self.s_classes
    }

    pub fn s_class_of(&self, y: &Point) -> Result<usize> {
        self.s_of_point.get(y).copied().ok_or(Error::PointNotOnCurve)
    }

    /// `P + sigma P` as a point of `X(F_q)`.
    pub fn trace_to_base(&self, p: &Point) -> Result<Point> {
        let s = self.sigma.get(p).ok_or(Error::PointNotOnCurve)?;
        let t = self.curve2.add_unchecked(*p, *s);
        self.embedded.get(&t).copied().ok_or(Error::NotSigmaFixed)
    }

    /// All characters `Cl X -> {+1,-1}` that are nontrivial on `Cl^0 X`,
    /// each with both signs at `x0`.
    pub fn quadratic_characters(&self) -> Vec<QuadChar> {
        let g = &self.group0;
        let gens: Vec<(Point, u64)> = match g.generators.as_slice() {
            [a] => vec![(*a, g.n2)],
            [a, b] => vec![(*a, g.n2), (*b, g.n1)],
            _ => vec![],
        };
        // Exponent vector of every point with respect to the generators.
        let mut coords: HashMap<Point, Vec<u64>> = HashMap::new();
        let mut frontier = vec![(Point::Infinity, vec![0u64; gens.len()])];
        while let Some((p, e)) = frontier.pop() {
            if coords.contains_key(&p) {
                continue;
            }
            coords.insert(p, e.clone());
            for (i, &(gp, n)) in gens.iter().enumerate() {
                let mut e2 = e.clone();
                e2[i] = (e2[i] + 1) % n;
                frontier.push((self.add(p, gp), e2));
            }
        }
        let choices: Vec<Vec<i8>> = gens.iter().map(|&(_, n)| if n % 2 == 0 { vec![1, -1] } else { vec![1] }).collect();
        let mut out = Vec::new();
        let mut eps = vec![0usize; gens.len()];
        loop {
            let signs: Vec<i8> = eps.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
            if signs.contains(&-1) {
                let values: Vec<i8> = g
                    .points
                    .iter()
                    .map(|p| coords[p].iter().zip(&signs).map(|(&e, &s)| if e % 2 == 1 { s } else { 1 }).product())
                    .collect();
                for sign_on_x0 in [1, -1] {
                    out.push(QuadChar { values: values.clone(), sign_on_x0 });
                }
            }
            let mut i = 0;
            loop {
                if i == eps.len() {
                    return out;
                }
                eps[i] += 1;
                if eps[i] < choices[i].len() {
                    break;
                }
                eps[i] = 0;
                i += 1;
            }
        }
    }
}

pub fn t_classes(cd: &ClassData) -> Vec<TClass> {
    cd.t_classes.clone()
}

pub fn s_class_of(cd: &ClassData, y: &Point) -> Result<SClass> {
    cd.s_class_of(y).map(|i| cd.s_classes[i])
}

pub fn trace_to_base(cd: &ClassData, p: &Point) -> Result<Point> {
    cd.trace_to_base(p)
}

pub fn quadratic_characters(cd: &ClassData) -> Vec<QuadChar> {
    cd.quadratic_characters()
}
