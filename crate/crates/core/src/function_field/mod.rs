//! Rational functions on the projective line, their places, valuations and
//! local expansions.

mod place;
mod rational;
mod series;

pub use place::{evaluate, joint_support, support, support_seeded, valuation, Place};
pub use rational::{RationalFunction, Rf};
pub use series::{local_expansion, series_residue_coeff, LaurentSeriesTrunc, Uniformizer};
