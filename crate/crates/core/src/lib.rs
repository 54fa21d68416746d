//! Exact and numerical tools for the hypergeometric zeta function
//! `ζ_{a,b}(s) = Σ z^{-s}` over the zeros of `Φ_{a,b}(z) = ₁F₁(a; a+b; z)`
//! and for the hypergeometric Bernoulli numbers `B_n^{(a,b)}` generated by
//! `1/Φ_{a,b}`.

pub mod bernoulli;
pub mod conjectures;
pub mod error;
pub mod exact;
pub mod float;
pub mod kummer;
pub mod poly;
pub mod report;
pub mod series;
pub mod verify;
pub mod zeros;
pub mod zeta;

pub use error::{Error, Result};
pub use exact::{parse_rat, Params, Rat};
pub use float::{Cf, FloatCfg};
pub use poly::Poly;
pub use report::CheckReport;
pub use series::Series;
pub use zeta::{Method, ZetaTable};
