//! Graphs of unramified Hecke operators on P1-bundles over an elliptic curve
//! `X / F_q`, together with the automorphic-form computations they support.

pub mod corpus;
pub mod ecurve;
pub mod error;
pub mod ffield;
pub mod heckegraph;
pub mod lfun;
pub mod picard;
pub mod report;
pub mod scan;
pub mod spectra;

pub use error::{Error, Result};
