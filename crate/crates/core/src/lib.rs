pub mod aq;
pub mod classify;
pub mod dga;
pub mod error;
pub mod expr;
pub mod graded;
pub mod groebner;
pub mod linalg;
pub mod model;
pub mod poly;
pub mod resolution;
pub mod scalar;
