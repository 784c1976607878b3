//! High-precision Stieltjes constants, complete Bell polynomials, gamma
//! function derivatives and a registry of integral/series identities that are
//! checked by evaluating both sides independently.

pub mod audit;
pub mod bell;
pub mod constants;
pub mod coppo;
pub mod error;
pub mod hasse;
pub mod par;
pub mod polylog;
pub mod precision;
pub mod quad;
pub mod zeta;

pub use error::{Error, Result};
pub use par::Exec;
pub use precision::XReal;
