//! Exact-arithmetic construction and analysis of complete families of
//! pairing-friendly elliptic curves.
//!
//! A complete family packages the curve parameters of a whole sequence of
//! pairing-friendly curves as polynomials: a trace `t(x)`, a subgroup order
//! `r(x)`, a field size `q(x)`, and a CM element `y(x)`, tied together by
//! divisibility and norm identities at a chosen embedding degree `k` and CM
//! discriminant `D`. This crate builds such families with the Brezing-Weng
//! recipe, checks the five defining conditions with exact rational
//! arithmetic, measures the rho-value `deg q / deg r`, and instantiates
//! families at integer arguments into certified concrete parameters.
//!
//! Everything is exact: no floating point enters any verdict. See the `book/`
//! guide at the repository root for a narrative tour, and the `bwfamily`
//! binary for the command-line interface.

pub mod cyclo;
pub mod family;
pub mod instantiate;
pub mod integrality;
pub mod irred;
pub mod poly;
pub mod primality;
pub mod rational;
pub mod registry;
pub mod ring;
pub mod search;

pub use family::{bw_construct, validate, FamilyCandidate, FamilyDiagnosis};
pub use poly::QPoly;
pub use rational::Rational;
pub use ring::{ResidueElement, ResidueRing, ZetaImage};
