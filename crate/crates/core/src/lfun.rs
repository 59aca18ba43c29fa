//! Zeta and L-series of the function field of `X` and of its constant field
//! extension, as rational functions in `T = q^{-s}`, and the toroidal report.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::picard::ClassData;
use crate::report::Report;
use crate::spectra::{eisenstein_derivative_solve, eisenstein_solve, normalized_t, CharacterSpec};

/// Integer polynomials in `T`, coefficients low degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunc {
    pub numerator: Vec<i64>,
    pub denominator: Vec<i64>,
}

pub fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn poly_eval(p: &[i64], t: Complex64) -> Complex64 {
    p.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * t + c as f64)
}

impl RationalFunc {
    pub fn eval(&self, t: Complex64) -> Complex64 {
        poly_eval(&self.numerator, t) / poly_eval(&self.denominator, t)
    }

    /// Value at `s` where `T = q^{-s}`.
    pub fn eval_s(&self, q: u64, s: Complex64) -> Complex64 {
        self.eval((-s * (q as f64).ln()).exp())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaSeries {
    pub zeta_f: RationalFunc,
    pub l_chi: RationalFunc,
    pub zeta_fprime: RationalFunc,
}

pub fn zeta_series(cd: &ClassData) -> ZetaSeries {
    let q = cd.q() as i64;
    let a = cd.h as i64 - q - 1;
    let hh = (cd.h * cd.hp) as i64;
    ZetaSeries {
        zeta_f: RationalFunc { numerator: vec![1, a, q], denominator: poly_mul(&[1, -1], &[1, -q]) },
        l_chi: RationalFunc { numerator: vec![1, -a, q], denominator: poly_mul(&[1, 1], &[1, q]) },
        zeta_fprime: RationalFunc { numerator: vec![1, 0, hh - q * q - 1, 0, q * q], denominator: poly_mul(&[1, 0, -1], &[1, 0, -q * q]) },
    }
}

/// Zeros of `zeta_F`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroPair {
    pub t_roots: [Complex64; 2],
    /// `s` with `q^{-s} = T`, imaginary part in `(-pi/ln q, pi/ln q]`.
    pub s_reps: [Complex64; 2],
    /// The zero set of `zeta_F` is stable under `T -> -T`, so it coincides
    /// with the zero set of `L(chi_{F'}, s)`.
    pub order2_flag: bool,
    /// `|T|^2` from the discriminant, exactly.
    pub abs_sq: Ratio<i64>,
    pub double_root: bool,
}

pub fn principal_s(q: u64, t: Complex64) -> Complex64 {
    let lnq = (q as f64).ln();
    let mut s = -t.ln() / lnq;
    let period = 2.0 * PI / lnq;
    while s.im <= -period / 2.0 {
        s.im += period;
    }
    while s.im > period / 2.0 {
        s.im -= period;
    }
    s + Complex64::new(0.0, 0.0)
}

pub fn zeta_zeros(cd: &ClassData) -> ZeroPair {
    let q = cd.q() as i64;
    let a = cd.h as i64 - q - 1;
    let disc = a * a - 4 * q;
    let (qf, af) = (q as f64, a as f64);
    let sq = if disc <= 0 { Complex64::new(0.0, (-disc as f64).sqrt()) } else { Complex64::new((disc as f64).sqrt(), 0.0) };
    let t_roots = [(-af + sq) / (2.0 * qf), (-af - sq) / (2.0 * qf)];
    let abs_sq = if disc < 0 {
        // complex conjugate pair: |T|^2 is the product of the roots
        Ratio::new(1, q)
    } else if disc == 0 {
        Ratio::new(a * a, 4 * q * q)
    } else {
        // real distinct roots cannot occur under the Hasse bound
        Ratio::new(0, 1)
    };
    let same = |u: Complex64, v: Complex64| (u - v).norm() < 1e-12;
    let order2_flag = (same(t_roots[0], -t_roots[0]) && same(t_roots[1], -t_roots[1]))
        || (same(t_roots[0], -t_roots[1]) && same(t_roots[1], -t_roots[0]));
    ZeroPair {
        t_roots,
        s_reps: t_roots.map(|t| principal_s(cd.q(), t)),
        order2_flag,
        abs_sq,
        double_root: disc == 0,
    }
}

pub const FE_TOL: f64 = 1e-10;
pub const LEMMA_TOL: f64 = 1e-10;

pub fn check_identities(cd: &ClassData) -> Report {
    let mut rep = Report::new();
    let q = cd.q();
    let qi = q as i64;
    let h = cd.h as i64;
    let z = zeta_series(cd);
    rep.exact("h' = 2(q+1) - h", cd.hp as i64, 2 * (qi + 1) - h);
    rep.exact("h h' - q^2 - 1 = 2q - (h-q-1)^2", h * cd.hp as i64 - qi * qi - 1, 2 * qi - (h - qi - 1).pow(2));
    rep.exact(
        "zeta_F' = zeta_F L numerator",
        format!("{:?}", z.zeta_fprime.numerator),
        format!("{:?}", poly_mul(&z.zeta_f.numerator, &z.l_chi.numerator)),
    );
    rep.exact(
        "zeta_F' = zeta_F L denominator",
        format!("{:?}", z.zeta_fprime.denominator),
        format!("{:?}", poly_mul(&z.zeta_f.denominator, &z.l_chi.denominator)),
    );
    rep.exact("numerator(1) = h", z.zeta_f.numerator.iter().sum::<i64>(), h);

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let s = Complex64::new(rng.random_range(-2.0..3.0), rng.random_range(-4.0..4.0));
        let a = z.zeta_f.eval_s(q, s);
        let b = z.zeta_f.eval_s(q, Complex64::new(1.0, 0.0) - s);
        worst = worst.max((a - b).norm() / a.norm().max(1.0));
    }
    rep.approx("functional equation zeta_F(1-s) = zeta_F(s)", worst < FE_TOL, worst, 0.0, FE_TOL);

    let zz = zeta_zeros(cd);
    rep.exact("|T_root|^2 = 1/q", zz.abs_sq, Ratio::new(1, qi));
    let num_at_roots = zz.t_roots.iter().map(|&t| poly_eval(&z.zeta_f.numerator, t).norm()).fold(0.0, f64::max);
    rep.approx("roots annihilate the numerator", num_at_roots < 1e-12, num_at_roots, 0.0, 1e-12);

    let lnq = (q as f64).ln();
    let probe = z.zeta_f.eval_s(q, Complex64::new(0.5, PI / (2.0 * lnq))).norm();
    let vanishes = probe < LEMMA_TOL;
    let separated = vanishes || probe > 1e-3;
    let hq = cd.h as u64 == q + 1;
    rep.push(
        "order-2 pair <=> zero at 1/2 + pi i/(2 ln q) <=> h = q+1",
        zz.order2_flag == vanishes && vanishes == hq && separated,
        format!("flag={} |zeta|={probe:.3e}", zz.order2_flag),
        format!("h=q+1: {hq}"),
        Some(LEMMA_TOL),
    );
    rep
}

pub const T_TOL: f64 = 1e-8;
pub const CONTROL_MIN: f64 = 1e-3;

/// Control points away from every zero line and pole.
pub const CONTROL_S: [(f64, f64); 5] = [(0.3, 0.0), (0.15, 0.35), (0.2, 0.9), (0.25, -0.6), (0.4, 0.2)];

/// Generators of the `F'`-toroidal space and their numeric `T`-vanishing.
pub fn toroidal_report(cd: &ClassData, depth: u32) -> Report {
    let mut rep = Report::new();
    let q = cd.q();
    let lnq = (q as f64).ln();
    let zz = zeta_zeros(cd);
    let s_e = zz.s_reps[0] - 0.5;
    let hq = cd.h as u64 == q + 1;
    let mut generators = 0;

    let check_e = |rep: &mut Report, label: &str, chi: CharacterSpec| -> Option<crate::spectra::ComplexForm> {
        match eisenstein_solve(cd, &chi, depth) {
            Ok(b) => {
                rep.exact(&format!("{label} solution dimension"), b.dimension, 1);
                let t = normalized_t(cd, &b.basis[0]);
                rep.approx(&format!("{label} |T|"), t < T_TOL, t, 0.0, T_TOL);
                Some(b.basis[0].clone())
            }
            Err(e) => {
                rep.push(&format!("{label} solve"), false, e.to_string(), "solution".into(), None);
                None
            }
        }
    };

    let e0 = check_e(&mut rep, &format!("E(s={s_e:.4})"), CharacterSpec::principal(s_e));
    generators += 1;
    if hq {
        match e0.as_ref().map(|e| eisenstein_derivative_solve(cd, 1, &CharacterSpec::principal(s_e), e, depth)) {
            Some(Ok(e1)) => {
                let t = normalized_t(cd, &e1);
                rep.approx("E^(1) |T|", t < T_TOL, t, 0.0, T_TOL);
            }
            Some(Err(e)) => rep.push("E^(1) solve", false, e.to_string(), "solution".into(), None),
            None => rep.push("E^(1) solve", false, "no E".into(), "solution".into(), None),
        }
    } else {
        let shifted = s_e + Complex64::new(0.0, PI / lnq);
        check_e(&mut rep, &format!("E(s={shifted:.4})"), CharacterSpec::principal(shifted));
    }
    generators += 1;

    if zz.double_root {
        let chi = CharacterSpec::principal(s_e);
        let ok = e0.as_ref().map(|e| eisenstein_derivative_solve(cd, 2, &chi, e, depth));
        match ok {
            Some(Ok(_)) => rep.push("E^(2) solve at the double zero", true, "solved".into(), "solution".into(), None),
            Some(Err(e)) => rep.push("E^(2) solve at the double zero", false, e.to_string(), "solution".into(), None),
            None => rep.push("E^(2) solve at the double zero", false, "no E".into(), "solution".into(), None),
        }
    }

    for (i, w) in cd.quadratic_characters().into_iter().enumerate() {
        check_e(&mut rep, &format!("R(omega_{i})"), CharacterSpec::twisted(Complex64::new(0.5, 0.0), w));
        generators += 1;
    }
    rep.exact("toroidal generator count = 2 h2", generators, 2 * cd.h2);

    for (re, im) in CONTROL_S {
        let s = Complex64::new(re, im);
        match eisenstein_solve(cd, &CharacterSpec::principal(s), depth) {
            Ok(b) => {
                let t = normalized_t(cd, &b.basis[0]);
                rep.approx(&format!("control s={s} |T|"), t > CONTROL_MIN, t, CONTROL_MIN, CONTROL_MIN);
            }
            Err(e) => rep.push(&format!("control s={s}"), false, e.to_string(), "solution".into(), None),
        }
    }

    let char2 = cd.curve.field().p() == 2;
    if char2 && hq {
        rep.undecided("dim A_tor", "1 or 2".into(), "characteristic 2 with h = q+1".into());
    } else {
        rep.push("dim A_tor", true, "1".into(), "spanned by E".into(), None);
    }
    rep
}
