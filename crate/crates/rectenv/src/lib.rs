//! rectenv: an exact-arithmetic engine for the universal associative
//! envelope of the Jordan triple system of p x q rational matrices (p != q,
//! p, q > 1; triple product {x,y,z} = x y^t z + z y^t x).
//!
//! The engine presents the envelope as a free algebra modulo a rewriting
//! system, completes the system so that normal forms are canonical, and then
//! machine-certifies the structure: the rewriting identities, the full
//! matrix-unit table (hence the isomorphism with the (p+q) x (p+q) matrix
//! algebra), the induced irreducible representation, and the
//! one-dimensional center.
//!
//! Everything is computed over the rationals with arbitrary precision; no
//! floating point is involved anywhere.
//!
//! ```
//! let ctx = rectenv::envelope::build(2, 3).unwrap();
//! assert_eq!(ctx.dimension(), 25);
//! let units = rectenv::envelope::matrix_units(&ctx).unwrap();
//! let iso = rectenv::representation::isomorphism_certificate(&ctx, &units);
//! assert!(iso.overall);
//! ```

pub mod envelope;
pub mod freealg;
pub mod jts;
pub mod linalg;
pub mod pipeline;
pub mod props;
pub mod report;
pub mod representation;
pub mod rewrite;

pub use freealg::{GenId, NcPoly, Scalar, Shape, Word};
pub use rewrite::{NormalWordBasis, RewriteSystem, Rule};
