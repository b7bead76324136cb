//! Exact integral cohomology of ordered configuration spaces and of the fibre
//! product of the Fadell-Neuwirth bundle `F(R^k, n+m) -> F(R^k, m)` for odd
//! `k`, with certificates for the parametrised topological complexity
//! `tc = 2n + m - 1`.
//!
//! ```
//! use ptc_core::{eval_str, verify_theorem, SpaceSpec};
//!
//! let spec = SpaceSpec::fibre_product(1, 2, 3).unwrap();
//! let x = eval_str("(w(1,3) - w'(1,3))^2 * (w(2,3) - w'(2,3))", &spec).unwrap();
//! assert!(!x.is_zero());
//! assert_eq!(verify_theorem(&spec).unwrap().tc_exact, Some(3));
//! ```

pub mod basis;
pub mod bounds;
pub mod cert;
pub mod diagonal;
pub mod error;
pub mod expr;
pub mod oracle;
pub mod ring;
pub mod space;

pub use basis::{enumerate_basis, poincare_polynomial, top_grade, PoincarePolynomial};
pub use bounds::{
    cup_length_lower_bound, exhaustive_zero_divisor_search, lemma_95_expand, product_inequality_combine,
    theorem_factors, theorem_product, upper_bound_dimension, verify_theorem, BoundKind, BoundRecord, CupLength,
    SearchOutcome,
};
pub use cert::TcCertificate;
pub use diagonal::{diagonal_apply, kernel_generators, kernel_pairs};
pub use error::{Error, Result};
pub use expr::{eval_str, evaluate, parse, Expr, SyntaxError};
pub use ring::{grade_of, make_generator, Element, Generator, Monomial, Part, Side};
pub use space::{Space, SpaceSpec, MAX_POINTS};
