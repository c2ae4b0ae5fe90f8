//! Exact arithmetic substrate: rationals, exponent vectors, multinomial
//! coefficients, partition enumeration and Bernoulli numbers.

mod bernoulli;
mod combinatorics;
mod exponents;
mod rational;

pub use bernoulli::{bernoulli, bernoulli_table};
pub use combinatorics::{factorial, multinomial, partitions, Partitions};
pub use exponents::ExponentVector;
pub use rational::Rational;

pub use num_bigint::BigInt;
