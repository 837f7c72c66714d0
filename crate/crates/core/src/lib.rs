//! Exact polynomial algebra over Q and F_p, Buchberger's algorithm, and
//! generation of verified `(F, G)` pairs with `<F> = <G>` by composing
//! elementary matrices over the polynomial ring.

pub mod density;
pub mod division;
pub mod error;
pub mod field;
pub mod forge;
pub mod groebner;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod polymat;
pub mod sampling;
pub mod shape;

pub use error::{Error, Result};
pub use field::{Coeff, FieldConfig};
pub use monomial::{Monomial, MonomialOrder, OrderKind};
pub use poly::{Polynomial, Ring};
