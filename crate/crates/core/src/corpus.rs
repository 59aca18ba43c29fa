//! Named curves and the JSON-lines curve format.

use serde::{Deserialize, Serialize};

use crate::ecurve::Curve;
use crate::error::{Error, Result};
use crate::ffield::{Field, DEFAULT_CAP};

/// A curve given by its field and five coefficients, each a coefficient
/// vector over `F_p` (low degree first).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub p: u32,
    pub k: u32,
    pub coeffs: [Vec<u32>; 5],
}

impl CurveSpec {
    pub fn new(name: Option<&str>, p: u32, k: u32, coeffs: [Vec<u32>; 5]) -> CurveSpec {
        CurveSpec { name: name.map(str::to_string), p, k, coeffs }
    }

    /// Prime-field shorthand: every coefficient is a residue mod `p`.
    pub fn prime(name: &str, p: u32, a: [u32; 5]) -> CurveSpec {
        CurveSpec::new(Some(name), p, 1, a.map(|c| vec![c]))
    }

    pub fn to_curve(&self) -> Result<Curve> {
        self.to_curve_with_cap(DEFAULT_CAP)
    }

    pub fn to_curve_with_cap(&self, cap: u64) -> Result<Curve> {
        let f = Field::with_cap(self.p, self.k, cap)?;
        for c in &self.coeffs {
            if c.len() > self.k as usize || c.iter().any(|&x| x >= self.p) {
                return Err(Error::Invalid(format!("coefficient {c:?} is not a vector over F_{}", self.p)));
            }
        }
        Curve::new(&f, self.coeffs.clone().map(|c| f.from_coeffs(&c)))
    }
}

pub const CORPUS_NAMES: [&str; 6] = ["X2", "X3", "X4", "X5", "X6", "E23"];

pub fn builtin_corpus() -> Vec<CurveSpec> {
    vec![
        CurveSpec::prime("X2", 2, [0, 0, 1, 1, 1]),
        CurveSpec::prime("X3", 3, [0, 0, 0, 2, 2]),
        // a6 is the class of t in F_4 = F_2[t]/(t^2+t+1)
        CurveSpec::new(Some("X4"), 2, 2, [vec![0], vec![0], vec![1], vec![0], vec![0, 1]]),
        CurveSpec::prime("X5", 3, [0, 0, 0, 1, 2]),
        CurveSpec::prime("X6", 3, [0, 0, 0, 2, 0]),
        CurveSpec::prime("E23", 2, [0, 0, 1, 0, 0]),
    ]
}

pub fn named(name: &str) -> Option<CurveSpec> {
    builtin_corpus().into_iter().find(|c| c.name.as_deref() == Some(name))
}

pub fn named_curve(name: &str) -> Result<Curve> {
    named(name).ok_or_else(|| Error::Invalid(format!("unknown curve name {name}")))?.to_curve()
}

pub fn dump_corpus(specs: &[CurveSpec]) -> String {
    specs.iter().map(|s| serde_json::to_string(s).expect("curve specs serialize") + "\n").collect()
}

pub fn parse_corpus(text: &str) -> Result<Vec<CurveSpec>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).map_err(|e| Error::Invalid(e.to_string())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let c = builtin_corpus();
        assert_eq!(parse_corpus(&dump_corpus(&c)).unwrap(), c);
    }

    #[test]
    fn all_named_curves_are_smooth() {
        for n in CORPUS_NAMES {
            named_curve(n).unwrap();
        }
        assert!(named_curve("X7").is_err());
    }

    #[test]
    fn rejects_out_of_range_coefficients() {
        let s = CurveSpec::prime("bad", 3, [0, 0, 0, 5, 0]);
        assert!(matches!(s.to_curve(), Err(Error::Invalid(_))));
    }
}
