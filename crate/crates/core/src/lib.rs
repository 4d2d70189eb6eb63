//! Contraction groups assembled from shift, linear and Heisenberg blocks,
//! with exact composition series, scale modules and structure checks.

pub mod batch;
pub mod error;
pub mod finitegroup;
pub mod groupmodel;
pub mod linalg;
pub mod padic;
pub mod random;
pub mod series;
pub mod theorems;
pub mod tiebreak;
