//! Exact commutative algebra over `F_p` aimed at prime-characteristic
//! singularity questions: Gröbner bases and ideal operations, Frobenius
//! powers and roots, Frobenius and tight closure of parameter ideals,
//! filter regular sequences and F-nilpotence tests.
//!
//! Rings are modelled as `F_p[x_1..x_n]/A` with the maximal ideal
//! `m = (x_1..x_n)`; see [`RingSpec`].

pub mod cohomology;
pub mod dsl;
pub mod error;
pub mod field;
pub mod frobenius;
pub mod groebner;
pub mod ideal;
mod linalg;
pub mod monomial;
pub mod monomial_ideal;
pub mod oracle;
pub mod par;
pub mod poly;
pub mod quotient;
pub mod ring;

pub use error::{Error, Result};
pub use field::PrimeField;
pub use ideal::Ideal;
pub use monomial::{Monomial, MonomialOrder};
pub use poly::Poly;
pub use quotient::{RingSpec, Tri};
pub use ring::{PolyRing, RingRef};
