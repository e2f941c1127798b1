//! Finite fields GF(p^k), polynomials over them, factorization and roots in
//! extensions.

mod extension;
mod factor;
mod field;
mod poly;

pub use extension::{extend, Embedding};
pub use factor::{
    distinct_degree, equal_degree, factor, factor_seeded, poly_roots_in_extension, roots,
    squarefree_decomposition, ExtensionRoot, Factorization, DEFAULT_FACTOR_SEED,
};
pub use field::{is_prime, make_field, Elem, Field, FieldSpec, MAX_DEGREE};
pub use poly::{interpolate, Poly};
