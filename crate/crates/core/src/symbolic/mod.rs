//! Exact symbolic arithmetic: variables, Laurent polynomials, factored
//! rational functions and their truncated expansions.

pub mod factored;
pub mod laurent;
pub mod monomial;
pub mod series;
pub mod text;
pub mod var;

pub use factored::{Binomial, FactoredRational};
pub use laurent::LaurentPoly;
pub use monomial::Monomial;
pub use series::{series_expand, series_expand_to, ExpansionDomain};
pub use text::{parse_poly, poly_from_json, poly_to_json};
pub use var::{Var, VarKind};
