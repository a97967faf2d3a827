//! Braid computations for T-links: standard braids, full-twist rewrites,
//! framing-corrected satellite braids and the counting obstruction that
//! certifies certain satellites are not T-knots.

pub mod braid;
pub mod error;
pub mod garside;
pub mod invariants;
pub mod laurent;
pub mod obstruction;
pub mod rewrite;
pub mod satellite;
pub mod tlink;

pub use braid::{BraidWord, Letter, Permutation};
pub use error::{Error, Result};
pub use garside::GarsideNormalForm;
pub use invariants::InvariantBundle;
pub use laurent::LaurentPolynomial;
pub use obstruction::NotTKnotCertificate;
pub use rewrite::RewriteCertificate;
pub use satellite::SatelliteSpec;
pub use tlink::TLinkSpec;
