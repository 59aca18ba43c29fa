//! Automorphic forms as functions on graph vertices: Hecke matrices, the cusp
//! space, the cuspidal and toroidal functionals, and Eisenstein eigenvectors.

mod eisenstein;
pub mod exact;

pub use eisenstein::{eisenstein_derivative_solve, eisenstein_solve, normalized_t, EisensteinBasis};
pub use exact::exact_nullspace;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Zero};

use crate::ecurve::Point;
use crate::error::{Error, Result};
use crate::heckegraph::{build_graph, HeckeGraph, Vertex};
use crate::picard::{ClassData, QuadChar};
use crate::report::Report;

/// Values of a function on an ordered vertex list.
#[derive(Clone, Debug, PartialEq)]
pub struct FormVector<T> {
    pub domain: Vec<Vertex>,
    pub values: Vec<T>,
}

pub type ExactForm = FormVector<BigRational>;
pub type ComplexForm = FormVector<Complex64>;

impl<T: Clone + Zero> FormVector<T> {
    /// Requires a sorted domain.
    pub fn new(domain: Vec<Vertex>, values: Vec<T>) -> FormVector<T> {
        assert_eq!(domain.len(), values.len());
        debug_assert!(domain.windows(2).all(|w| w[0] < w[1]));
        FormVector { domain, values }
    }

    /// Value at `v`; zero off the domain.
    pub fn at(&self, v: &Vertex) -> T {
        self.domain.binary_search(v).map(|i| self.values[i].clone()).unwrap_or_else(|_| T::zero())
    }

    pub fn support(&self) -> Vec<Vertex> {
        self.domain.iter().zip(&self.values).filter(|(_, x)| !x.is_zero()).map(|(v, _)| *v).collect()
    }
}

impl ComplexForm {
    pub fn max_abs_where(&self, pred: impl Fn(&Vertex) -> bool) -> f64 {
        self.domain.iter().zip(&self.values).filter(|(v, _)| pred(v)).map(|(_, x)| x.norm()).fold(0.0, f64::max)
    }
}

/// The character `omega * ||.||^s`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterSpec {
    pub s: Complex64,
    pub omega: Option<QuadChar>,
}

impl CharacterSpec {
    pub fn principal(s: Complex64) -> CharacterSpec {
        CharacterSpec { s, omega: None }
    }

    pub fn twisted(s: Complex64, omega: QuadChar) -> CharacterSpec {
        CharacterSpec { s, omega: Some(omega) }
    }

    /// `chi` on the class `(deg, P)`.
    pub fn value(&self, cd: &ClassData, deg: i64, p: &Point) -> Complex64 {
        let w = self.omega.as_ref().map_or(1, |o| o.eval(cd, deg, p)) as f64;
        let q = cd.q() as f64;
        (-self.s * deg as f64 * q.ln()).exp() * w
    }

    /// Whether `chi^2` is trivial, i.e. `q^{-2s} = 1`.
    pub fn squares_to_one(&self, q: u64) -> bool {
        let t = (self.s * (q as f64).ln() / std::f64::consts::PI).im;
        self.s.re.abs() < 1e-12 && (t - t.round()).abs() < 1e-9
    }
}

/// `(lambda_x, lambda^-_x)` for a place of norm `qx` with `chi(x) = c`.
pub fn profile_from_value(qx: f64, c: Complex64) -> (Complex64, Complex64) {
    let r = qx.sqrt();
    (r * (c + c.inv()), r * (c.inv() - c))
}

/// `(lambda_x(chi), lambda^-_x(chi))` for a degree-one place `x`.
pub fn eigenvalue_profile(cd: &ClassData, chi: &CharacterSpec, x: &Point) -> (Complex64, Complex64) {
    profile_from_value(cd.q() as f64, chi.value(cd, 1, x))
}

/// Weighted adjacency restricted to interior rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeMatrix {
    pub rows: Vec<Vertex>,
    pub cols: Vec<Vertex>,
    /// Sparse rows as (column index, weight).
    pub entries: Vec<Vec<(usize, u64)>>,
}

impl HeckeMatrix {
    pub fn dense(&self) -> Vec<Vec<u64>> {
        self.entries
            .iter()
            .map(|row| {
                let mut d = vec![0; self.cols.len()];
                for &(j, m) in row {
                    d[j] += m;
                }
                d
            })
            .collect()
    }
}

pub fn hecke_matrix(g: &HeckeGraph) -> HeckeMatrix {
    let cols = g.vertices.clone();
    let rows: Vec<Vertex> = g.interior().copied().collect();
    let entries = rows
        .iter()
        .map(|v| g.out(v).iter().map(|e| (cols.binary_search(&e.target).expect("target in vertex set"), e.m)).collect())
        .collect();
    HeckeMatrix { rows, cols, entries }
}

fn c0() -> Vertex {
    Vertex::Dec(0, Point::Infinity)
}

/// `C(f) = f(c_0) + (q-1) f(s_0)` and `T(f) = f(c_0) + sum mult * f(t_D)`.
pub fn linear_functionals<T>(cd: &ClassData, f: &FormVector<T>) -> (T, T)
where
    T: Clone + Zero + Num + FromPrimitive,
{
    let q = T::from_u64(cd.q()).expect("small integer");
    let one = T::one();
    let c = f.at(&c0()) + (q - one) * f.at(&Vertex::S0);
    let mut t = f.at(&c0());
    for (i, d) in cd.t_classes().iter().enumerate() {
        let mult = T::from_u8(if d.is_half { 1 } else { 2 }).expect("small integer");
        t = t + mult * f.at(&Vertex::Tr(i));
    }
    (c, t)
}

#[derive(Clone, Debug)]
pub struct CuspSpace {
    pub dimension: usize,
    pub basis: Vec<ExactForm>,
    /// Unknowns of the linear system, sorted.
    pub unknowns: Vec<Vertex>,
}

/// Functions on `{c_D : deg D = 0} + {s_y} + {s_0} + {t_D}` annihilated by
/// every `Phi_x`, `x` of degree one, at every vertex with `delta <= 1`.
pub fn cusp_space(cd: &ClassData) -> Result<CuspSpace> {
    let g0 = build_graph(cd, Point::Infinity, 2)?;
    let unknowns: Vec<Vertex> = g0.vertices.iter().copied().filter(|v| v.delta() <= 0).collect();
    let rows = cusp_rows(cd, &unknowns)?;
    let basis_vecs = exact::exact_nullspace(&rows, unknowns.len());
    let basis: Vec<ExactForm> = basis_vecs.into_iter().map(|v| FormVector::new(unknowns.clone(), v)).collect();
    let expected = cd.rp as i64 + 1 - cd.h2 as i64;
    if basis.len() as i64 != expected {
        return Err(Error::DimensionMismatch { computed: basis.len(), expected });
    }
    Ok(CuspSpace { dimension: basis.len(), basis, unknowns })
}

/// Integer rows of the cusp system over the given unknowns.
pub fn cusp_rows(cd: &ClassData, unknowns: &[Vertex]) -> Result<Vec<Vec<BigInt>>> {
    let mut rows = Vec::new();
    for &x in cd.points() {
        let g = build_graph(cd, x, 2)?;
        for v in g.vertices.iter().filter(|v| v.delta() <= 1) {
            let mut row = vec![BigInt::zero(); unknowns.len()];
            for e in g.out(v) {
                if let Ok(j) = unknowns.binary_search(&e.target) {
                    row[j] += BigInt::from(e.m);
                }
            }
            if row.iter().any(|c| !c.is_zero()) {
                rows.push(row);
            }
        }
    }
    Ok(rows)
}

/// Checks that every cusp form killed by `T` vanishes at `c_0` and `s_0`.
pub fn toroidal_cusp_check(cd: &ClassData, space: &CuspSpace) -> Report {
    let mut rep = Report::new();
    let t_row: Vec<BigRational> = space.basis.iter().map(|b| linear_functionals(cd, b).1).collect();
    let coeffs = exact::exact_nullspace_rational(&[t_row], space.basis.len());
    let members: Vec<ExactForm> = coeffs
        .iter()
        .map(|a| {
            let mut vals = vec![BigRational::zero(); space.unknowns.len()];
            for (aj, b) in a.iter().zip(&space.basis) {
                for (v, bv) in vals.iter_mut().zip(&b.values) {
                    *v += aj * bv;
                }
            }
            FormVector::new(space.unknowns.clone(), vals)
        })
        .collect();
    rep.push("dim {f in V0 : T(f) = 0}", true, members.len().to_string(), format!("<= {}", space.dimension), None);
    let ok = members.iter().all(|f| f.at(&c0()).is_zero() && f.at(&Vertex::S0).is_zero());
    rep.push("T(f) = 0 forces f(c0) = f(s0) = 0", ok, ok.to_string(), "true".into(), None);
    rep
}
