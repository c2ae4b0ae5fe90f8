//! Exact tautological intersection numbers on moduli spaces of stable
//! pointed curves of genus at most two.
//!
//! - [`arith`]: exact rationals, multinomials, partitions, Bernoulli numbers
//! - [`psi`]: genus 0 and 1 ψ-integrals by string/dilaton recursion
//! - [`strata`]: decorated dual graphs and pullbacks of stratum classes
//! - [`theorems`]: the genus-2 pullback and `λ_2` formulas, each computed
//!   several independent ways, and a sweep that cross-checks them

pub mod arith;
pub mod error;
pub mod psi;
pub mod strata;
pub mod theorems;

pub use arith::{ExponentVector, Rational};
pub use error::{Error, Result};
pub use psi::{genus0_closed_form, psi_integral, BasePoint, ModuliIndex, PsiEngine};
