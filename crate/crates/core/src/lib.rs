//! Frank-Wolfe style maximization of non-negative DR-submodular functions
//! over general convex sets in `[0,1]^n`, offline and online.

pub mod error;
pub mod experiments;
pub mod hardness;
pub mod ingest;
pub mod lp;
pub mod meta_fw;
pub mod nmfw;
pub mod numeric;
pub mod objectives;
pub mod reference;
pub mod rftl;
pub mod rng;
pub mod sets;

pub use error::{Error, Result};
