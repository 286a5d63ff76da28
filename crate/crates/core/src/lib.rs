//! Closed-form polynomial-exponential solutions of the Klein-Gordon
//! equation `(d^2/dx0^2 - sum_j d^2/dxj^2 + mass) U = 0` in two, three and
//! four dimensions.
//!
//! The construction runs over a sequence of nilpotent algebras: solve the
//! characteristic system for a chain `k_0..k_R` ([`charsys`]), generate the
//! polynomial factors by recurrence, resolvent expansion or partition
//! enumeration ([`family`]), and certify each member symbolically and by
//! finite differences ([`verify`]). Exact rational and double-precision
//! arithmetic share one interface ([`scalar`]).
//!
//! ```
//! use kgexact::charsys::{Branch, Dim, DirectionRow, DirectionTable};
//! use kgexact::family::build_solutions;
//! use kgexact::verify::{apply_kg_operator, Signature};
//! use kgexact::Complex64;
//!
//! let mass = Complex64::new(-1.0, 0.0);
//! let c = |re, im| Complex64::new(re, im);
//! let table = DirectionTable::new(
//!     Dim::Four,
//!     vec![
//!         DirectionRow::new(c(0.3, 0.1), c(-0.2, 0.4), c(0.1, 0.0)),
//!         DirectionRow::new(c(0.5, -0.2), c(0.1, 0.3), c(-0.4, 0.1)),
//!         DirectionRow::new(c(-0.1, 0.2), c(0.3, -0.1), c(0.2, 0.2)),
//!     ],
//! );
//! let family = build_solutions(&mass, &table, Branch::Plus, 2).unwrap();
//! for member in &family {
//!     let residual = apply_kg_operator(member, &mass, Signature::new(Dim::Four)).unwrap();
//!     assert!(residual.max_abs() <= 1e-10 * member.poly.max_abs().max(1.0));
//! }
//! ```

pub mod charsys;
pub mod family;
pub mod golden;
pub mod nilalgebra;
pub mod polynomial;
pub mod render;
pub mod scalar;
pub mod schema;
pub mod verify;

pub use num_complex::Complex64;

#[cfg(test)]
mod tests {
    // values are immutable and operations pure, so everything is meant to
    // be shareable across threads
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn core_types_are_send_sync() {
        assert_send_sync::<crate::nilalgebra::NilElement<crate::Complex64>>();
        assert_send_sync::<crate::nilalgebra::NilElement<crate::scalar::RatComplex>>();
        assert_send_sync::<crate::polynomial::SparsePoly<crate::scalar::RatComplex>>();
        assert_send_sync::<crate::charsys::KChain<crate::Complex64>>();
        assert_send_sync::<crate::family::SolutionTerm<crate::scalar::RatComplex>>();
        assert_send_sync::<crate::family::AtildeFamily>();
        assert_send_sync::<crate::schema::ProblemSpec>();
    }
}
