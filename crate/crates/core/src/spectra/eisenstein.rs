//! Numeric eigenvectors of the Hecke operators on a truncated graph.
//!
//! Rows are `(Phi_x - lambda_x) f (v)` at every interior vertex for every
//! degree-one place, plus the `c_0` row of every degree-two place. The
//! latter separates Eisenstein series from cusp forms when all degree-one
//! eigenvalues vanish.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_traits::Zero;

use super::{eigenvalue_profile, linear_functionals, profile_from_value, CharacterSpec, ComplexForm, FormVector};
use crate::ecurve::Point;
use crate::error::{Error, Result};
use crate::heckegraph::{build_graph, deg2_c0_neighbors, degree_two_places, vertex_set, Vertex};
use crate::picard::ClassData;

/// Relative singular value threshold for the numeric rank.
pub const RANK_TOL: f64 = 1e-9;
/// Relative residual accepted for generalized eigenvectors.
pub const RESIDUAL_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct EisensteinBasis {
    pub dimension: usize,
    pub basis: Vec<ComplexForm>,
}

struct RowInfo {
    vertex: usize,
    lambda: Complex64,
    lambda_minus: Complex64,
    ln_qx: f64,
}

struct System {
    domain: Vec<Vertex>,
    matrix: DMatrix<Complex64>,
    info: Vec<RowInfo>,
}

fn assemble(cd: &ClassData, chi: &CharacterSpec, depth: u32) -> Result<System> {
    if depth < 4 {
        return Err(Error::DepthTooSmall { depth, min: 4 });
    }
    let domain = vertex_set(cd, depth);
    let col = |v: &Vertex| domain.binary_search(v).expect("vertex in domain");
    let mut rows: Vec<Vec<(usize, Complex64)>> = Vec::new();
    let mut info = Vec::new();
    let lnq = (cd.q() as f64).ln();
    for &x in cd.points() {
        let g = build_graph(cd, x, depth)?;
        let (lambda, lambda_minus) = eigenvalue_profile(cd, chi, &x);
        for v in g.interior() {
            let mut row: Vec<(usize, Complex64)> = g.out(v).iter().map(|e| (col(&e.target), Complex64::new(e.m as f64, 0.0))).collect();
            row.push((col(v), -lambda));
            rows.push(row);
            info.push(RowInfo { vertex: col(v), lambda, lambda_minus, ln_qx: lnq });
        }
    }
    let c0 = col(&Vertex::Dec(0, Point::Infinity));
    let qy = (cd.q() * cd.q()) as f64;
    for (z, _) in degree_two_places(cd) {
        let tr = cd.trace_to_base(&z)?;
        let (lambda, lambda_minus) = profile_from_value(qy, chi.value(cd, 2, &tr));
        let mut row: Vec<(usize, Complex64)> = deg2_c0_neighbors(cd, z)?.iter().map(|(v, m)| (col(v), Complex64::new(*m as f64, 0.0))).collect();
        row.push((c0, -lambda));
        rows.push(row);
        info.push(RowInfo { vertex: c0, lambda, lambda_minus, ln_qx: 2.0 * lnq });
    }
    let n = domain.len();
    let mut matrix = DMatrix::<Complex64>::zeros(rows.len().max(n), n);
    for (i, row) in rows.iter().enumerate() {
        for &(j, a) in row {
            matrix[(i, j)] += a;
        }
    }
    Ok(System { domain, matrix, info })
}

fn normalize(domain: &[Vertex], mut v: Vec<Complex64>) -> Vec<Complex64> {
    let c0 = domain.binary_search(&Vertex::Dec(0, Point::Infinity)).expect("c0 in domain");
    let scale = v.iter().map(|x| x.norm()).fold(0.0, f64::max);
    let pivot = if v[c0].norm() > 1e-10 * scale { v[c0] } else { *v.iter().find(|x| x.norm() > 1e-10 * scale).expect("nonzero vector") };
    for x in v.iter_mut() {
        *x /= pivot;
    }
    v
}

/// Joint eigenvectors of all `Phi_x` with eigenvalues `lambda_x(chi)`.
pub fn eisenstein_solve(cd: &ClassData, chi: &CharacterSpec, depth: u32) -> Result<EisensteinBasis> {
    let sys = assemble(cd, chi, depth)?;
    let n = sys.domain.len();
    let svd = sys.matrix.svd(false, true);
    let v_t = svd.v_t.as_ref().expect("requested V^T");
    let smax = svd.singular_values.max();
    let basis: Vec<ComplexForm> = (0..n)
        .filter(|&i| svd.singular_values[i] <= RANK_TOL * smax)
        .map(|i| {
            let v: Vec<Complex64> = (0..n).map(|j| v_t[(i, j)].conj()).collect();
            FormVector::new(sys.domain.clone(), normalize(&sys.domain, v))
        })
        .collect();
    if basis.is_empty() {
        return Err(Error::EmptySolutionSpace);
    }
    Ok(EisensteinBasis { dimension: basis.len(), basis })
}

/// Solves `(Phi_x - lambda_x) g = source_x` for the first (`order = 1`) or
/// second (`order = 2`) derivative in `s` of the Eisenstein family through `e`.
pub fn eisenstein_derivative_solve(cd: &ClassData, order: u8, chi: &CharacterSpec, e: &ComplexForm, depth: u32) -> Result<ComplexForm> {
    let sq = chi.squares_to_one(cd.q());
    if !matches!((order, sq), (1, false) | (2, true)) {
        return Err(Error::WrongOrderForCharacter { order, chi_squared_trivial: sq });
    }
    let sys = assemble(cd, chi, depth)?;
    if sys.domain != e.domain {
        return Err(Error::Invalid("eigenvector was computed on a different truncation".into()));
    }
    let rows = sys.matrix.nrows();
    let mut b = DVector::<Complex64>::zeros(rows);
    for (i, r) in sys.info.iter().enumerate() {
        let ev = e.values[r.vertex];
        b[i] = match order {
            1 => r.ln_qx * r.lambda_minus * ev,
            _ => r.ln_qx * r.ln_qx * r.lambda * ev,
        };
    }
    let svd = sys.matrix.clone().svd(true, true);
    let eps = RANK_TOL * svd.singular_values.max();
    let g = svd.solve(&b, eps).map_err(|m| Error::Invalid(m.to_string()))?;
    let resid = (&sys.matrix * &g - &b).norm();
    let scale = b.norm().max(f64::MIN_POSITIVE);
    if b.norm() > 0.0 && resid / scale > RESIDUAL_TOL {
        return Err(Error::InconsistentSystem(resid / scale));
    }
    let ev = DVector::from_vec(e.values.clone());
    let proj = ev.dotc(&g) / ev.dotc(&ev);
    let g = g - ev * proj;
    Ok(FormVector::new(e.domain.clone(), g.iter().copied().collect()))
}

/// `|T(f)|` relative to the largest value of `f` on the nucleus.
pub fn normalized_t(cd: &ClassData, f: &ComplexForm) -> f64 {
    let t = linear_functionals(cd, f).1;
    let m = f.max_abs_where(|v| v.delta() <= 1);
    if m.is_zero() {
        0.0
    } else {
        t.norm() / m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::named_curve;
    use crate::picard::build_class_data;

    fn cd(name: &str) -> ClassData {
        build_class_data(&named_curve(name).unwrap()).unwrap()
    }

    fn s(re: f64, im: f64) -> CharacterSpec {
        CharacterSpec::principal(Complex64::new(re, im))
    }

    #[test]
    fn generic_dimension_one() {
        for name in ["X2", "X5", "X6"] {
            let c = cd(name);
            let e = eisenstein_solve(&c, &s(0.3, 0.0), 6).unwrap();
            assert_eq!(e.dimension, 1, "{name}");
        }
    }

    #[test]
    fn depth_guard() {
        assert_eq!(eisenstein_solve(&cd("X2"), &s(0.3, 0.0), 3).unwrap_err(), Error::DepthTooSmall { depth: 3, min: 4 });
    }

    #[test]
    fn x2_zero_is_toroidal() {
        let c = cd("X2");
        // q^{-(s+1/2)} = (1+i)/2
        let t = Complex64::new(0.5, 0.5);
        let sz = -t.ln() / 2f64.ln() - 0.5;
        let e = eisenstein_solve(&c, &CharacterSpec::principal(sz), 6).unwrap();
        assert_eq!(e.dimension, 1);
        assert!(normalized_t(&c, &e.basis[0]) < 1e-8);
        let ctrl = eisenstein_solve(&c, &s(0.3, 0.0), 6).unwrap();
        assert!(normalized_t(&c, &ctrl.basis[0]) > 1e-3);
    }

    #[test]
    fn residual_series_is_omega_of_det() {
        let c = cd("X5");
        for w in c.quadratic_characters() {
            let chi = CharacterSpec::twisted(Complex64::new(0.5, 0.0), w.clone());
            let e = eisenstein_solve(&c, &chi, 6).unwrap();
            assert_eq!(e.dimension, 1);
            let r = &e.basis[0];
            for (v, x) in r.domain.iter().zip(&r.values) {
                if let Vertex::Dec(n, p) = v {
                    assert!((x - Complex64::new(w.eval(&c, *n as i64, p) as f64, 0.0)).norm() < 1e-8);
                }
            }
            assert!(normalized_t(&c, r) < 1e-8);
        }
    }

    #[test]
    fn derivative_order_guard() {
        let c = cd("X4");
        let e = eisenstein_solve(&c, &s(0.0, 0.0), 6).unwrap();
        let err = eisenstein_derivative_solve(&c, 1, &s(0.0, 0.0), &e.basis[0], 6).unwrap_err();
        assert_eq!(err, Error::WrongOrderForCharacter { order: 1, chi_squared_trivial: true });
        eisenstein_derivative_solve(&c, 2, &s(0.0, 0.0), &e.basis[0], 6).unwrap();
    }
}
