#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod dirac;
pub mod error;
pub mod limits;
pub mod params;
pub mod partialwave;
pub mod radial;
pub mod schrod;
pub mod specfun;

pub use error::{Error, Result};
pub use params::ExtParam;
