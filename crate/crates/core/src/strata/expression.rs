use super::eval::Evaluator;
use super::graph::{builtin_delta, builtin_delta0, builtin_gamma_psi, DualGraph};
use crate::arith::{ExponentVector, Rational};
use crate::error::Result;

/// Formal `Q`-linear combination of dual graphs. Terms with the same graph
/// are merged; terms whose coefficient cancels to zero are dropped.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StrataExpression {
    terms: Vec<(Rational, DualGraph)>,
}

impl StrataExpression {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, coefficient: Rational, graph: DualGraph) {
        if let Some(pos) = self.terms.iter().position(|(_, g)| *g == graph) {
            self.terms[pos].0 += coefficient;
            if self.terms[pos].0.is_zero() {
                self.terms.remove(pos);
            }
        } else if !coefficient.is_zero() {
            self.terms.push((coefficient, graph));
        }
    }

    pub fn with_term(mut self, coefficient: Rational, graph: DualGraph) -> Self {
        self.add_term(coefficient, graph);
        self
    }

    pub fn terms(&self) -> &[(Rational, DualGraph)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `λ_2 = (1/240) Γ_ψ + (1/1152) Δ_0`
    pub fn lambda2_psi_loop_form() -> Self {
        StrataExpression::new()
            .with_term(Rational::new(1, 240), builtin_gamma_psi())
            .with_term(Rational::new(1, 1152), builtin_delta0())
    }

    /// `λ_2 = (1/1152 + 1/(240·24)) Δ_0 + (1/240) Δ`, obtained from the
    /// ψ-loop form by expanding `ψ_1` on `M̄_{1,2}` in boundary classes.
    pub fn lambda2_boundary_form() -> Self {
        StrataExpression::new()
            .with_term(
                Rational::new(1, 1152) + Rational::new(1, 240 * 24),
                builtin_delta0(),
            )
            .with_term(Rational::new(1, 240), builtin_delta())
    }
}

impl Evaluator<'_> {
    pub fn expression(&self, expr: &StrataExpression, k: &ExponentVector) -> Result<Rational> {
        expr.terms
            .iter()
            .map(|(c, g)| self.pullback(g, k).map(|v| c * &v))
            .sum()
    }
}

/// `Σ c_i ∫_{π^*[Γ_i]} Ψ^K`
pub fn expression_integral(expr: &StrataExpression, k: &ExponentVector) -> Result<Rational> {
    Evaluator::default().expression(expr, k)
}
