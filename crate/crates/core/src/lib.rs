//! Exact tools for nonnegative ternary forms: singularity invariants via
//! blow-ups, Newton-polytope non-SOS certificates, a small SDP engine for
//! sums of squares, and stubbornness certificates.

pub mod coeff;
pub mod poly;
pub mod upoly;
pub mod numroots;
pub mod realroots;
pub mod bivar;
pub mod blowup;
pub mod zeros;
pub mod fixtures;
pub mod newton;
pub mod sos;
pub mod stubborn;
