//! Laurent polynomials, rational functions and truncated series over the
//! rationals, with cyclotomic polynomials and exact division.

mod cyclotomic;
pub mod division;
mod laurent;
mod rational_function;
mod series;

pub use cyclotomic::{cyclotomic, cyclotomic_arc, precompute_cyclotomics};
pub use division::{divrem, exact_div, poly_gcd};
pub use laurent::LaurentPoly;
pub use rational_function::RationalFunction;
pub use series::{infinite_pochhammer_series, series_of, TruncatedSeries};
