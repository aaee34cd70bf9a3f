//! Ground fields, polynomials, factorization and residue-field extensions.

mod factor;
mod field;
mod poly;
mod residue_field;
mod scalar;

pub use factor::{factor, factor_over_fp, factor_over_q_limited, Factor, Factorization, DEFAULT_SEED};
pub use field::Field;
pub(crate) use poly::has_top_level_sum;
pub use poly::Polynomial;
pub use residue_field::{rf_norm, rf_trace, ResidueFieldElem, RESIDUE_VAR};
pub use scalar::{FieldDescriptor, FieldScalar};

pub type Poly = Polynomial<FieldScalar>;
