//! Per-curve verification suites and batch scans over Weierstrass curves.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::CurveSpec;
use crate::ecurve::Curve;
use crate::error::Result;
use crate::ffield::Field;
use crate::heckegraph::{build_graph, verify_graph};
use crate::lfun::check_identities;
use crate::picard::{build_class_data_with_cap, ClassData};
use crate::report::{Check, Report};
use crate::spectra::cusp_space;

pub const REPORT_SCHEMA: &str = "hecke-report/1";

/// Graph invariants at every rational place, the cusp dimension and the
/// `h2' = h2` check.
pub fn verify_curve(cd: &ClassData, depth: u32) -> Report {
    let mut rep = Report::new();
    for &x in cd.points() {
        match build_graph(cd, x, depth) {
            Ok(g) => rep.extend(verify_graph(cd, &g)),
            Err(e) => rep.push(&format!("build graph (x={})", cd.curve.fmt_point(&x)), false, e.to_string(), "graph".into(), None),
        }
    }
    match cusp_space(cd) {
        Ok(s) => {
            rep.exact("cusp dimension = r'+1-h2", s.dimension as i64, cd.rp as i64 + 1 - cd.h2 as i64);
        }
        Err(e) => rep.push("cusp dimension = r'+1-h2", false, e.to_string(), "r'+1-h2".into(), None),
    }
    rep.exact("h2' = h2", cd.h2p, cd.h2);
    rep
}

/// Coefficient vectors of a curve over its own field.
pub fn spec_of(curve: &Curve) -> CurveSpec {
    let f = curve.field();
    CurveSpec::new(None, f.p(), f.k(), curve.coeffs().map(|c| f.coeffs(c)))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveEntry {
    pub curve: CurveSpec,
    pub h: usize,
    pub h2: usize,
    pub hp: usize,
    pub h2p: usize,
    pub r: usize,
    pub rp: usize,
    pub structure: [u64; 2],
    pub passed: bool,
    pub failures: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub schema: String,
    pub p: u32,
    pub k: u32,
    pub mode: String,
    pub depth: u32,
    pub curves: usize,
    pub failed: usize,
    pub entries: Vec<CurveEntry>,
}

impl ScanReport {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

/// Every smooth curve over `f`, in coefficient order.
pub fn all_curves(f: &Field) -> Vec<Curve> {
    let n = f.size() as usize;
    let elems: Vec<_> = f.elements().collect();
    let mut out = Vec::new();
    for idx in 0..n.pow(5) {
        let mut r = idx;
        let mut a = [f.zero(); 5];
        for slot in a.iter_mut().rev() {
            *slot = elems[r % n];
            r /= n;
        }
        if let Ok(c) = Curve::new(f, a) {
            out.push(c);
        }
    }
    out
}

/// `count` smooth curves drawn with a seeded generator.
pub fn random_curves(f: &Field, count: usize, seed: u64) -> Vec<Curve> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let elems: Vec<_> = f.elements().collect();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let a = [(); 5].map(|_| elems[rng.random_range(0..elems.len())]);
        if let Ok(c) = Curve::new(f, a) {
            out.push(c);
        }
    }
    out
}

pub fn run_curve(curve: &Curve, depth: u32, cap: u64) -> Result<CurveEntry> {
    let cd = build_class_data_with_cap(curve, cap)?;
    let mut rep = verify_curve(&cd, depth);
    rep.extend(check_identities(&cd));
    Ok(CurveEntry {
        curve: spec_of(curve),
        h: cd.h,
        h2: cd.h2,
        hp: cd.hp,
        h2p: cd.h2p,
        r: cd.r,
        rp: cd.rp,
        structure: [cd.group0.n1, cd.group0.n2],
        passed: rep.passed(),
        failures: rep.failures().cloned().collect(),
    })
}

/// Runs [`run_curve`] over `curves` in parallel; entries keep input order.
pub fn scan(f: &Field, curves: &[Curve], mode: &str, depth: u32, cap: u64) -> Result<ScanReport> {
    let entries: Vec<CurveEntry> = curves.par_iter().map(|c| run_curve(c, depth, cap)).collect::<Result<_>>()?;
    let failed = entries.iter().filter(|e| !e.passed).count();
    Ok(ScanReport {
        schema: REPORT_SCHEMA.into(),
        p: f.p(),
        k: f.k(),
        mode: mode.into(),
        depth,
        curves: entries.len(),
        failed,
        entries,
    })
}
