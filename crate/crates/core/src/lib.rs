//! Exact symbolic arithmetic for quantum wreath products whose base algebra is a
//! tensor power of the skew Laurent ring `C[C_m][x^{±1}; ψ]`, together with the
//! tensor-space modules, Gelfand-Graev comparisons and Schur algebra built on top.

pub mod basealg;
pub mod checks;
pub mod error;
pub mod lc;
pub mod modules;
pub mod params;
pub mod qwp;
pub mod scalar;
pub mod schur;
pub mod symgroup;

pub use error::{Error, Result};
pub use params::Params;
