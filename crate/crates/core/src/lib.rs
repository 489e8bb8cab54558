//! Jones polynomials of plat-closed braids, evaluated two independent ways —
//! an exact Kauffman-bracket state sum and the unitary path-model
//! representation — plus random-braid experiments probing approximate
//! unitary-design and anti-concentration behavior.

pub mod braid;
pub mod error;
pub mod experiments;
pub mod jones;
pub mod laurent;
pub mod path_model;
pub mod plat;
pub mod skein;

pub use braid::{design_length, format_braid_word, parse_braid_word, random_braid, BraidWord};
pub use error::{Error, Result};
pub use experiments::ExperimentConfig;
pub use jones::{cross_check, jones_via_path_model, plat_amplitude, JonesComparison};
pub use laurent::{evaluate_at, LaurentPolynomial, RootOfUnity};
pub use path_model::{catalan, PathBasis, PathRep, RepOperator, StateVector};
pub use plat::{plat_components, writhe, PlatDiagram};
pub use skein::{jones_polynomial, kauffman_bracket, skein_residual, SkeinCheck};
