use hecke_core::corpus::{named_curve, CORPUS_NAMES};
use hecke_core::ecurve::{Curve, PointGroup};
use hecke_core::ffield::make_field;
use hecke_core::heckegraph::{build_graph, export_json, verify_graph, Vertex};
use hecke_core::lfun::{zeta_series, zeta_zeros};
use hecke_core::picard::{build_class_data, ClassData};
use hecke_core::spectra::{cusp_space, eigenvalue_profile, eisenstein_solve, normalized_t, CharacterSpec};
use num_complex::Complex64;
use proptest::prelude::*;

const FIELDS: [(u32, u32); 7] = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)];

fn curve_from(field_ix: usize, raw: [u16; 5]) -> Option<Curve> {
    let (p, k) = FIELDS[field_ix];
    let f = make_field(p, k).unwrap();
    let n = f.size() as u16;
    let a = raw.map(|r| f.elements().nth((r % n) as usize).unwrap());
    Curve::new(&f, a).ok()
}

fn class_data(field_ix: usize, raw: [u16; 5]) -> Option<ClassData> {
    curve_from(field_ix, raw).map(|c| build_class_data(&c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hasse_and_class_number_lemma(fi in 0usize..7, raw in any::<[u16; 5]>()) {
        if let Some(cd) = class_data(fi, raw) {
            let q = cd.q() as f64;
            prop_assert!((cd.h as f64 - q - 1.0).abs() <= 2.0 * q.sqrt());
            prop_assert_eq!(cd.hp as i64, 2 * (cd.q() as i64 + 1) - cd.h as i64);
            prop_assert_eq!(cd.h * cd.hp, cd.group0p.len());
            prop_assert_eq!(cd.h2p, cd.h2);
            prop_assert_eq!(cd.quadratic_characters().len(), 2 * cd.h2 - 2);
        }
    }

    #[test]
    fn group_structure_generates(fi in 0usize..7, raw in any::<[u16; 5]>()) {
        if let Some(c) = curve_from(fi, raw) {
            let g = PointGroup::of(&c);
            prop_assert_eq!(g.n1 * g.n2, g.len() as u64);
            prop_assert_eq!(g.n2 % g.n1, 0);
            for &p in &g.points {
                prop_assert_eq!(c.mul(g.n2 as i64, p), hecke_core::ecurve::Point::Infinity);
            }
        }
    }

    #[test]
    fn trace_of_embedding_doubles(fi in 0usize..7, raw in any::<[u16; 5]>()) {
        if let Some(cd) = class_data(fi, raw) {
            for &p in cd.points() {
                prop_assert_eq!(cd.trace_to_base(&cd.embed(p)).unwrap(), cd.add(p, p));
            }
        }
    }

    #[test]
    fn graph_invariants(fi in 0usize..7, raw in any::<[u16; 5]>(), xi in any::<usize>()) {
        if let Some(cd) = class_data(fi, raw) {
            let x = cd.points()[xi % cd.h];
            let g = build_graph(&cd, x, 4).unwrap();
            let r = verify_graph(&cd, &g);
            prop_assert!(r.passed(), "{}", r);
            for v in &g.vertices {
                prop_assert_eq!(v.canonical(&cd), *v);
            }
            // construction is deterministic
            prop_assert_eq!(export_json(&cd, &g), export_json(&cd, &build_graph(&cd, x, 4).unwrap()));
        }
    }

    #[test]
    fn cusp_dimension_formula(fi in 0usize..7, raw in any::<[u16; 5]>()) {
        if let Some(cd) = class_data(fi, raw) {
            let s = cusp_space(&cd).unwrap();
            prop_assert_eq!(s.dimension as i64, cd.rp as i64 + 1 - cd.h2 as i64);
        }
    }

    #[test]
    fn zeta_consistency(fi in 0usize..7, raw in any::<[u16; 5]>(), re in -2.0f64..3.0, im in -4.0f64..4.0) {
        if let Some(cd) = class_data(fi, raw) {
            let z = zeta_series(&cd);
            prop_assert_eq!(z.zeta_f.numerator.iter().sum::<i64>(), cd.h as i64);
            let s = Complex64::new(re, im);
            let a = z.zeta_f.eval_s(cd.q(), s);
            let b = z.zeta_f.eval_s(cd.q(), Complex64::new(1.0, 0.0) - s);
            prop_assert!((a - b).norm() <= 1e-10 * a.norm().max(1.0));
            let prod = z.zeta_f.eval_s(cd.q(), s) * z.l_chi.eval_s(cd.q(), s);
            prop_assert!((prod - z.zeta_fprime.eval_s(cd.q(), s)).norm() <= 1e-9 * prod.norm().max(1.0));
            for t in zeta_zeros(&cd).t_roots {
                prop_assert!((t.norm_sqr() - 1.0 / cd.q() as f64).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn eigenvalues_symmetric(re in -1.0f64..1.0, im in -3.0f64..3.0) {
        let cd = build_class_data(&named_curve("X6").unwrap()).unwrap();
        let s = Complex64::new(re, im);
        for x in cd.points() {
            let a = eigenvalue_profile(&cd, &CharacterSpec::principal(s), x).0;
            let b = eigenvalue_profile(&cd, &CharacterSpec::principal(-s), x).0;
            prop_assert!((a - b).norm() < 1e-9 * a.norm().max(1.0));
        }
    }
}

#[test]
fn eisenstein_generic_dimension_and_depth_stability() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for name in CORPUS_NAMES {
        let cd = build_class_data(&named_curve(name).unwrap()).unwrap();
        for _ in 0..20 {
            let s = Complex64::new(rng.random_range(0.05..0.45), rng.random_range(-2.0..2.0));
            let e6 = eisenstein_solve(&cd, &CharacterSpec::principal(s), 6).unwrap();
            assert_eq!(e6.dimension, 1, "{name} s={s}");
        }
        let s = Complex64::new(0.21, 0.37);
        let e6 = &eisenstein_solve(&cd, &CharacterSpec::principal(s), 6).unwrap().basis[0];
        let e8 = &eisenstein_solve(&cd, &CharacterSpec::principal(s), 8).unwrap().basis[0];
        let scale = e6.max_abs_where(|v| v.delta() <= 5);
        for v in e6.domain.iter().filter(|v| v.delta() <= 5) {
            assert!((e6.at(v) - e8.at(v)).norm() <= 1e-8 * scale, "{name} at {v:?}");
        }
        assert!(normalized_t(&cd, e6) > 1e-3);
    }
}

#[test]
fn cusp_forms_vanish_under_every_operator() {
    for name in CORPUS_NAMES {
        let cd = build_class_data(&named_curve(name).unwrap()).unwrap();
        let space = cusp_space(&cd).unwrap();
        for &x in cd.points() {
            let g = build_graph(&cd, x, 3).unwrap();
            for b in &space.basis {
                for v in g.vertices.iter().filter(|v| v.delta() <= 1) {
                    let s: num_rational::BigRational = g.out(v).iter().map(|e| b.at(&e.target) * num_rational::BigRational::from_integer(e.m.into())).sum();
                    assert!(num_traits::Zero::is_zero(&s), "{name}: Phi_x f({v:?}) = {s}");
                }
                assert!(b.support().iter().all(|v| matches!(v, Vertex::Tr(_) | Vertex::S0 | Vertex::Dec(0, hecke_core::ecurve::Point::Infinity))));
            }
        }
    }
}
