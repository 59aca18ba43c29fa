//! Graphs of the Hecke operator `Phi_x` for a degree-one place `x`, truncated
//! at cusp depth `N`.
//!
//! Vertices with `delta <= N - 1` carry their full neighbourhood. Vertices at
//! `delta = N` only carry the inward cusp edge, so equation rows should only
//! be written at interior vertices.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::ecurve::Point;
use crate::error::{Error, Result};
use crate::picard::ClassData;
use crate::report::Report;

/// A vertex of `G_x`. The derived order is the canonical vertex order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    /// `t_D`, indexing `ClassData::t_classes`.
    Tr(usize),
    /// `s_y`, indexing `ClassData::s_classes`.
    Si(usize),
    S0,
    /// `c_D` for the class `(n, P)`.
    Dec(u32, Point),
}

impl Vertex {
    pub fn delta(&self) -> i64 {
        match *self {
            Vertex::Tr(_) => -2,
            Vertex::Si(_) => -1,
            Vertex::S0 => 0,
            Vertex::Dec(n, _) => n as i64,
        }
    }

    /// `c_D` for `D = (n, p)`, in canonical form.
    pub fn dec(cd: &ClassData, n: u32, p: Point) -> Vertex {
        if n == 0 {
            Vertex::Dec(0, p.min(cd.neg(p)))
        } else {
            Vertex::Dec(n, p)
        }
    }

    pub fn canonical(self, cd: &ClassData) -> Vertex {
        match self {
            Vertex::Dec(n, p) => Vertex::dec(cd, n, p),
            v => v,
        }
    }

    pub fn label(&self, cd: &ClassData) -> String {
        match self {
            Vertex::Tr(i) => format!("t[{i}]"),
            Vertex::Si(j) => format!("s[{j}]"),
            Vertex::S0 => "s0".to_string(),
            Vertex::Dec(n, p) => format!("c[{n},{}]", cd.curve.fmt_point(p)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightedEdge {
    pub origin: Vertex,
    pub target: Vertex,
    pub m: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constants {
    pub h: usize,
    pub h2: usize,
    pub hp: usize,
    pub h2p: usize,
    pub r: usize,
    pub rp: usize,
}

impl Constants {
    pub fn of(cd: &ClassData) -> Constants {
        Constants { h: cd.h, h2: cd.h2, hp: cd.hp, h2p: cd.h2p, r: cd.r, rp: cd.rp }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeGraph {
    pub curve: String,
    pub q: u64,
    pub x: Point,
    pub depth: u32,
    pub constants: Constants,
    /// Sorted.
    pub vertices: Vec<Vertex>,
    /// Outgoing edges per vertex, sorted by target.
    pub edges: BTreeMap<Vertex, Vec<WeightedEdge>>,
}

impl HeckeGraph {
    pub fn out(&self, v: &Vertex) -> &[WeightedEdge] {
        self.edges.get(v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn is_interior(&self, v: &Vertex) -> bool {
        v.delta() < self.depth as i64
    }

    pub fn interior(&self) -> impl Iterator<Item = &Vertex> {
        self.vertices.iter().filter(|v| self.is_interior(v))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.values().map(Vec::len).sum()
    }
}

/// All canonical vertices with `delta <= depth`.
pub fn vertex_set(cd: &ClassData, depth: u32) -> Vec<Vertex> {
    let mut vs: BTreeSet<Vertex> = BTreeSet::new();
    vs.extend((0..cd.t_classes().len()).map(Vertex::Tr));
    vs.extend((0..cd.s_classes().len()).map(Vertex::Si));
    vs.insert(Vertex::S0);
    for &p in cd.points() {
        for n in 0..=depth {
            vs.insert(Vertex::dec(cd, n, p));
        }
    }
    vs.into_iter().collect()
}

/// Full outgoing neighbourhood `U_x(v)` as (target, multiplicity).
pub fn neighbours(cd: &ClassData, x: Point, v: Vertex) -> Result<Vec<(Vertex, u64)>> {
    let q = cd.q();
    let h2 = cd.h2 as u64;
    let half = || if h2.is_multiple_of(2) { Ok(h2 / 2) } else { Err(Error::NonIntegralWeight(cd.h2)) };
    let s_of = |y: Point| cd.s_class_of(&y).map(Vertex::Si);
    let mut out = Vec::new();
    match v {
        Vertex::Dec(0, Point::Infinity) => out.push((Vertex::dec(cd, 1, x), q + 1)),
        Vertex::Dec(1, p) if p == x => {
            out.push((Vertex::dec(cd, 2, cd.add(x, x)), 1));
            out.push((Vertex::dec(cd, 0, Point::Infinity), 1));
            if q > 1 {
                out.push((Vertex::S0, q - 1));
            }
        }
        Vertex::Dec(0, p) => {
            // c_{y-x} with y = x + p
            let y = cd.add(x, p);
            if cd.is_two_torsion(p) {
                out.push((Vertex::dec(cd, 1, y), 2));
            } else {
                out.push((Vertex::dec(cd, 1, y), 1));
                out.push((Vertex::dec(cd, 1, cd.sub(x, p)), 1));
            }
            out.push((s_of(y)?, q - 1));
        }
        Vertex::Dec(1, p) => {
            out.push((Vertex::dec(cd, 2, cd.add(p, x)), 1));
            out.push((Vertex::dec(cd, 0, cd.sub(p, x)), q));
        }
        Vertex::Dec(n, p) => {
            out.push((Vertex::dec(cd, n + 1, cd.add(p, x)), 1));
            out.push((Vertex::dec(cd, n - 1, cd.sub(p, x)), q));
        }
        Vertex::S0 => {
            out.push((Vertex::dec(cd, 1, x), 1));
            out.push((s_of(x)?, q));
        }
        Vertex::Tr(i) => {
            let d = cd.t_classes().get(i).ok_or_else(|| Error::Invalid(format!("no trace class {i}")))?;
            let tr = cd.trace_to_base(&d.rep)?;
            out.push((s_of(cd.add(x, tr))?, q + 1));
        }
        Vertex::Si(j) => {
            let y = cd.s_classes().get(j).ok_or_else(|| Error::Invalid(format!("no s-class {j}")))?.rep;
            if cd.congruent_mod_doubles(y, x) {
                out.push((Vertex::S0, h2));
            }
            let mut seen = BTreeSet::new();
            for &z in cd.points() {
                if z == x {
                    continue;
                }
                let c = Vertex::dec(cd, 0, cd.sub(z, x));
                if !cd.congruent_mod_doubles(z, y) || !seen.insert(c) {
                    continue;
                }
                let m = if cd.is_two_torsion(cd.sub(z, x)) { half()? } else { h2 };
                out.push((c, m));
            }
            for (i, d) in cd.t_classes().iter().enumerate() {
                let tr = cd.trace_to_base(&d.rep)?;
                if cd.congruent_mod_doubles(y, cd.add(x, tr)) {
                    out.push((Vertex::Tr(i), if d.is_half { half()? } else { h2 }));
                }
            }
        }
    }
    Ok(out)
}

/// Builds `G_x` truncated at `delta <= depth`.
pub fn build_graph(cd: &ClassData, x: Point, depth: u32) -> Result<HeckeGraph> {
    if depth < 2 {
        return Err(Error::DepthTooSmall { depth, min: 2 });
    }
    if !cd.group0.contains(&x) {
        return Err(Error::PointNotOnCurve);
    }
    let vertices = vertex_set(cd, depth);
    let mut edges = BTreeMap::new();
    for &v in &vertices {
        let targets: Vec<(Vertex, u64)> = if v.delta() < depth as i64 {
            neighbours(cd, x, v)?
        } else {
            let Vertex::Dec(n, p) = v else { unreachable!("only cusp vertices reach the truncation depth") };
            vec![(Vertex::dec(cd, n - 1, cd.sub(p, x)), cd.q())]
        };
        let mut merged: BTreeMap<Vertex, u64> = BTreeMap::new();
        for (t, m) in targets {
            *merged.entry(t).or_default() += m;
        }
        let list = merged.into_iter().map(|(target, m)| WeightedEdge { origin: v, target, m }).collect();
        edges.insert(v, list);
    }
    Ok(HeckeGraph {
        curve: curve_label(cd),
        q: cd.q(),
        x,
        depth,
        constants: Constants::of(cd),
        vertices,
        edges,
    })
}

pub fn curve_label(cd: &ClassData) -> String {
    let f = cd.curve.field();
    let a: Vec<String> = cd.curve.coeffs().iter().map(|&c| f.fmt_elem(c)).collect();
    format!("F{}:[{}]", f.size(), a.join(","))
}

fn components(vertices: &[Vertex], adj: &HashMap<Vertex, Vec<Vertex>>) -> usize {
    let mut seen = BTreeSet::new();
    let mut count = 0;
    for &v in vertices {
        if !seen.insert(v) {
            continue;
        }
        count += 1;
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            for w in adj.get(&u).into_iter().flatten() {
                if seen.insert(*w) {
                    stack.push(*w);
                }
            }
        }
    }
    count
}

/// Structural invariants of a built graph.
pub fn verify_graph(cd: &ClassData, g: &HeckeGraph) -> Report {
    let mut rep = Report::new();
    let q = g.q;
    let tag = |s: &str| format!("{s} (x={})", cd.curve.fmt_point(&g.x));

    let bad_sums: Vec<String> = g
        .interior()
        .filter_map(|v| {
            let s: u64 = g.out(v).iter().map(|e| e.m).sum();
            (s != q + 1).then(|| format!("{}:{s}", v.label(cd)))
        })
        .collect();
    rep.push(&tag("weight sums"), bad_sums.is_empty(), bad_sums.join(" "), format!("all {}", q + 1), None);

    let missing: Vec<String> = g
        .edges
        .values()
        .flatten()
        .filter(|e| g.is_interior(&e.target) && !g.out(&e.target).iter().any(|b| b.target == e.origin))
        .map(|e| format!("{}->{}", e.origin.label(cd), e.target.label(cd)))
        .collect();
    rep.push(&tag("inverse edges"), missing.is_empty(), missing.join(" "), "none missing".into(), None);

    let parity = g.edges.values().flatten().all(|e| (e.origin.delta() - e.target.delta()).abs() == 1);
    rep.push(&tag("delta parity"), parity, parity.to_string(), "true".into(), None);

    let allowed: BTreeSet<u64> = [1, 2, q - 1, q, q + 1, cd.h2 as u64, cd.h2 as u64 / 2].into_iter().collect();
    let stray: BTreeSet<u64> = g.edges.values().flatten().map(|e| e.m).filter(|m| !allowed.contains(m)).collect();
    rep.push(&tag("weight values"), stray.is_empty(), format!("{stray:?}"), format!("{allowed:?}"), None);

    let mut adj: HashMap<Vertex, Vec<Vertex>> = HashMap::new();
    for e in g.edges.values().flatten() {
        adj.entry(e.origin).or_default().push(e.target);
        adj.entry(e.target).or_default().push(e.origin);
    }
    rep.exact(&tag("components"), components(&g.vertices, &adj), cd.h2);

    let cusp_vs: Vec<Vertex> = g.vertices.iter().copied().filter(|v| v.delta() >= 1 && matches!(v, Vertex::Dec(..))).collect();
    let cusp_adj: HashMap<Vertex, Vec<Vertex>> = adj
        .iter()
        .filter(|(v, _)| v.delta() >= 1)
        .map(|(v, ws)| (*v, ws.iter().copied().filter(|w| w.delta() >= 1).collect()))
        .collect();
    rep.exact(&tag("cusps"), components(&cusp_vs, &cusp_adj), cd.h);

    let census = |pred: &dyn Fn(&Vertex) -> bool| g.vertices.iter().filter(|v| pred(v)).count();
    let got = [
        census(&|v| matches!(v, Vertex::Tr(_))),
        census(&|v| matches!(v, Vertex::Si(_))),
        census(&|v| *v == Vertex::S0),
        census(&|v| matches!(v, Vertex::Dec(0, _))),
        census(&|v| v.delta() >= 1),
    ];
    let want = [cd.rp, cd.h2, 1, cd.r + 1, cd.h * g.depth as usize];
    rep.exact(&tag("vertex census"), format!("{got:?}"), format!("{want:?}"));
    rep
}

/// An `X'` vertex `c'_D` with `D = (n, P)`, `P` a point of `X'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DecPrime(pub u32, pub Point);

impl DecPrime {
    pub fn new(cd: &ClassData, n: u32, p: Point) -> DecPrime {
        if n == 0 {
            DecPrime(0, p.min(cd.curve2.negate(p)))
        } else {
            DecPrime(n, p)
        }
    }
}

/// `p^*` on decomposable and trace vertices.
pub fn pullback_class(cd: &ClassData, v: Vertex) -> Result<DecPrime> {
    match v {
        Vertex::Dec(n, p) => Ok(DecPrime::new(cd, n, cd.embed(p))),
        Vertex::Tr(i) => {
            let d = cd.t_classes().get(i).ok_or_else(|| Error::Invalid(format!("no trace class {i}")))?.rep;
            Ok(DecPrime::new(cd, 0, cd.curve2.sub_unchecked(d, cd.sigma(&d))))
        }
        Vertex::Si(_) | Vertex::S0 => Err(Error::UnsupportedVariant),
    }
}

/// Neighbours of `c_0` under `Phi_y` for the degree-two place `y = {z, sigma z}`.
///
/// The candidate set comes from composing the `X'` graphs of `z` and
/// `sigma z`; the multiplicity of `c_y` is `q + 1` and the rest of the
/// `q^2 + 1` goes to the trace vertex.
pub fn deg2_c0_neighbors(cd: &ClassData, z: Point) -> Result<Vec<(Vertex, u64)>> {
    let sz = cd.sigma(&z);
    if sz == z {
        return Err(Error::SigmaFixedPoint);
    }
    let c2 = &cd.curve2;
    // G_z on X': c'_0 -> c'_z; G_{sigma z}: c'_z -> c'_{z + sigma z}, c'_{z - sigma z}
    let step1 = DecPrime::new(cd, 1, z);
    let candidates = [DecPrime::new(cd, 2, c2.add_unchecked(step1.1, sz)), DecPrime::new(cd, 0, c2.sub_unchecked(step1.1, sz))];

    let c_y = Vertex::dec(cd, 2, cd.trace_to_base(&z)?);
    let t_i = cd.t_class_of(&z).ok_or_else(|| Error::Inconsistent("non-rational point in the zero coset".into()))?;
    let t_z = Vertex::Tr(t_i);
    if pullback_class(cd, c_y)? != candidates[0] || pullback_class(cd, t_z)? != candidates[1] {
        return Err(Error::Inconsistent("composed X' neighbours do not pull back to c_y and t_z".into()));
    }
    let q = cd.q();
    Ok(vec![(c_y, q + 1), (t_z, q * q + 1 - (q + 1))])
}

/// Degree-two places as `(z, sigma z)` with `z` the smaller point of the orbit.
pub fn degree_two_places(cd: &ClassData) -> Vec<(Point, Point)> {
    cd.group0p
        .points
        .iter()
        .filter_map(|&z| {
            let s = cd.sigma(&z);
            (z < s).then_some((z, s))
        })
        .collect()
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
struct JsonVertex {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    n: Option<u32>,
    /// Index into the canonical point list of `X(F_q)`, or into the class lists.
    index: usize,
    label: String,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
struct JsonEdge {
    from: usize,
    to: usize,
    m: u64,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
struct JsonGraph {
    schema: String,
    curve: String,
    q: u64,
    x: usize,
    depth: u32,
    vertices: Vec<JsonVertex>,
    edges: Vec<JsonEdge>,
    constants: Constants,
}

pub const GRAPH_SCHEMA: &str = "hecke-graph/1";

pub fn export_json(cd: &ClassData, g: &HeckeGraph) -> String {
    let pos: HashMap<Vertex, usize> = g.vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let pidx = |p: &Point| cd.group0.index_of(p).expect("rational point");
    let vertices = g
        .vertices
        .iter()
        .map(|v| {
            let (kind, n, index) = match *v {
                Vertex::Tr(i) => ("t", None, i),
                Vertex::Si(j) => ("s", None, j),
                Vertex::S0 => ("s0", None, 0),
                Vertex::Dec(n, p) => ("c", Some(n), pidx(&p)),
            };
            JsonVertex { kind: kind.into(), n, index, label: v.label(cd) }
        })
        .collect();
    let edges = g.edges.values().flatten().map(|e| JsonEdge { from: pos[&e.origin], to: pos[&e.target], m: e.m }).collect();
    let j = JsonGraph {
        schema: GRAPH_SCHEMA.into(),
        curve: g.curve.clone(),
        q: g.q,
        x: pidx(&g.x),
        depth: g.depth,
        vertices,
        edges,
        constants: g.constants,
    };
    serde_json::to_string_pretty(&j).expect("graph serializes")
}

pub fn import_json(cd: &ClassData, text: &str) -> Result<HeckeGraph> {
    let j: JsonGraph = serde_json::from_str(text).map_err(|e| Error::Invalid(e.to_string()))?;
    if j.schema != GRAPH_SCHEMA {
        return Err(Error::Invalid(format!("unknown schema {}", j.schema)));
    }
    let pt = |i: usize| cd.points().get(i).copied().ok_or_else(|| Error::Invalid(format!("point index {i}")));
    let vertices = j
        .vertices
        .iter()
        .map(|v| match (v.kind.as_str(), v.n) {
            ("t", _) => Ok(Vertex::Tr(v.index)),
            ("s", _) => Ok(Vertex::Si(v.index)),
            ("s0", _) => Ok(Vertex::S0),
            ("c", Some(n)) => Ok(Vertex::Dec(n, pt(v.index)?)),
            _ => Err(Error::Invalid(format!("bad vertex {v:?}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    let mut edges: BTreeMap<Vertex, Vec<WeightedEdge>> = vertices.iter().map(|v| (*v, Vec::new())).collect();
    for e in &j.edges {
        let (o, t) = (vertices[e.from], vertices[e.to]);
        edges.get_mut(&o).expect("origin listed").push(WeightedEdge { origin: o, target: t, m: e.m });
    }
    Ok(HeckeGraph { curve: j.curve, q: j.q, x: pt(j.x)?, depth: j.depth, constants: j.constants, vertices, edges })
}

pub fn export_dot(cd: &ClassData, g: &HeckeGraph) -> String {
    let mut s = String::from("digraph G {\n");
    for v in &g.vertices {
        let _ = writeln!(s, "  \"{}\";", v.label(cd));
    }
    for e in g.edges.values().flatten() {
        let _ = writeln!(s, "  \"{}\" -> \"{}\" [label=\"{}\"];", e.origin.label(cd), e.target.label(cd), e.m);
    }
    s.push_str("}\n");
    s
}
