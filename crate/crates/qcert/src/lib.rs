//! Exact-arithmetic certification engine for the linear systems, Pohozaev
//! quadratic forms and non-compactness constants behind the compactness
//! thresholds of constant Q-curvature metrics of orders 4 and 6.

// Matrix code indexes rows and columns symmetrically; index loops read
// closer to the formulas than iterator chains.
#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod definiteness;
pub mod error;
pub mod exactnum;
pub mod expected;
pub mod linsys;
pub mod noncompact;
pub mod pohozaev4;
pub mod pohozaev6;
pub mod radial;
pub mod report;
pub mod scan;
pub mod suites;

pub use error::{Error, Result};
