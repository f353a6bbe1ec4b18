//! Generalized Cesaro operators `C_t` on Banach sequence spaces.
//!
//! `C_t x = ((sum_{k<=n} t^{n-k} x_k) / (n+1))_n` interpolates between the
//! diagonal operator `D` (`t = 0`) and the classical Cesaro operator
//! (`t = 1`). This crate evaluates these operators on finite prefixes,
//! computes the norms of the sequence spaces they act on (`l^p`, `ces_p`,
//! `d_p`, weighted `l^p` and `c_0`, `X_{p,q}`), and produces certificates
//! for their spectral and norm properties:
//!
//! - [`seq`]: prefixes and the named test sequences
//! - [`operators`]: `C_t`, `D`, shifts, resolvent partial sums, convolution
//! - [`spaces`]: norm functionals and the least decreasing majorant
//! - [`spectral`]: eigen-residuals, finite sections, norm sandwiches
//! - [`oracle`]: exact rational reference kernels
//! - [`report`] and [`suite`]: check reports and the verification suite

pub mod error;
pub mod operators;
pub mod oracle;
pub mod report;
pub mod seq;
pub mod spaces;
pub mod spectral;
pub mod suite;

pub use error::{Error, Result};
pub use operators::{LowerTriangularMatrix, OperatorSpec};
pub use report::{CheckReport, Format, Status};
pub use seq::{Seq, Weight};
pub use spaces::{Exactness, NormValue, SpaceSpec, WeightSpec};
pub use spectral::{EigenCertificate, NormBoundCertificate, SearchOptions, SectionSpectrum};
pub use suite::{run_suite, SuiteConfig, SuiteOutcome, Tolerances};
