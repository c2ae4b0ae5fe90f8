//! Genus-2 results as executable formulas, each with an independent route:
//!
//! - `∫_{π^*Δ} Ψ^K = (1/24) C(n+1; K)`: closed form, the pullback
//!   string/dilaton recursion, and the brute-force sum over strata.
//! - `∫_{M̄_{2,n}} λ_2 Ψ^K = (7/5760) C(n+1; K)`: closed form, the two
//!   boundary expressions for `λ_2`, and the general `λ_g` formula.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use parking_lot::RwLock;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{bernoulli, factorial, multinomial, partitions, ExponentVector, Rational};
use crate::error::{Error, Result};
use crate::strata::{builtin_delta, expression_integral, pullback_integral, StrataExpression};

// Inputs are n exponents summing to n + 1: the degree of Ψ^K on π^*Δ.
fn check_pullback_input(n: usize, k: &ExponentVector) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    if k.len() != n {
        return Err(Error::domain(format!(
            "expected {n} exponents, got {}",
            k.len()
        )));
    }
    if k.degree() != n as u64 + 1 {
        return Err(Error::domain(format!(
            "exponents {k} have degree {}, expected n + 1 = {}",
            k.degree(),
            n + 1
        )));
    }
    Ok(())
}

/// `(1/24) C(n+1; K)`
pub fn pullback_delta_closed(n: usize, k: &ExponentVector) -> Result<Rational> {
    check_pullback_input(n, k)?;
    Ok(Rational::new(multinomial(n as u64 + 1, k)?, 24))
}

fn delta_memo() -> &'static RwLock<HashMap<Vec<u32>, Rational>> {
    static MEMO: OnceLock<RwLock<HashMap<Vec<u32>, Rational>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// `∫_{π^*Δ} Ψ^K` by induction on `n` from `∫_{π^*Δ} ψ^2 = 1/24`.
///
/// A zero exponent is forgotten with the pullback string relation; otherwise
/// some exponent equals 1 and the pullback dilaton relation contributes a
/// factor `n + 1`.
pub fn pullback_delta_recursive(n: usize, k: &ExponentVector) -> Result<Rational> {
    check_pullback_input(n, k)?;
    Ok(delta_recursion(k.canonical()))
}

// `k` sorted descending with n entries summing to n + 1.
fn delta_recursion(k: Vec<u32>) -> Rational {
    if k == [2] {
        return Rational::new(1, 24);
    }
    if let Some(v) = delta_memo().read().get(&k) {
        return v.clone();
    }
    let value = if let Some(zero) = k.iter().rposition(|&x| x == 0) {
        let mut rest = k.clone();
        rest.remove(zero);
        (0..rest.len())
            .filter(|&j| rest[j] > 0)
            .map(|j| {
                let mut lowered = rest.clone();
                lowered[j] -= 1;
                lowered.sort_unstable_by(|a, b| b.cmp(a));
                delta_recursion(lowered)
            })
            .sum()
    } else {
        // n parts, none zero, summing to n + 1: some part is 1
        let one = k.iter().rposition(|&x| x == 1).expect("a part equal to 1");
        let mut rest = k.clone();
        rest.remove(one);
        Rational::from(k.len() + 1) * delta_recursion(rest)
    };
    delta_memo().write().insert(k, value.clone());
    value
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Lambda2Method {
    /// `(1/1152 + 1/5760) Δ_0 + (1/240) Δ`
    #[serde(rename = "pixton-eq5")]
    PixtonEq5,
    /// `(1/240) Γ_ψ + (1/1152) Δ_0`
    #[serde(rename = "pixton-eq3")]
    PixtonEq3,
}

impl Lambda2Method {
    pub const ALL: [Lambda2Method; 2] = [Lambda2Method::PixtonEq5, Lambda2Method::PixtonEq3];

    pub fn name(self) -> &'static str {
        match self {
            Lambda2Method::PixtonEq5 => "pixton-eq5",
            Lambda2Method::PixtonEq3 => "pixton-eq3",
        }
    }

    pub fn expression(self) -> StrataExpression {
        match self {
            Lambda2Method::PixtonEq5 => StrataExpression::lambda2_boundary_form(),
            Lambda2Method::PixtonEq3 => StrataExpression::lambda2_psi_loop_form(),
        }
    }
}

impl fmt::Display for Lambda2Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Lambda2Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Lambda2Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown lambda2 method {s:?}")))
    }
}

/// `∫_{M̄_{2,n}} λ_2 Ψ^K` from a boundary expression for `λ_2`.
pub fn lambda2_integral(n: usize, k: &ExponentVector, method: Lambda2Method) -> Result<Rational> {
    check_pullback_input(n, k)?;
    expression_integral(&method.expression(), k)
}

/// `(7/5760) C(n+1; K)`
pub fn lambda2_closed(n: usize, k: &ExponentVector) -> Result<Rational> {
    check_pullback_input(n, k)?;
    Ok(Rational::new(7, 5760) * Rational::from(multinomial(n as u64 + 1, k)?))
}

/// `∫_{M̄_{g,1}} ψ_1^{2g-2} λ_g = (2^{2g-1} - 1)/2^{2g-1} · |B_{2g}| / (2g)!`
pub fn lambda_g_initial(g: u32) -> Result<Rational> {
    if g == 0 {
        return Err(Error::domain("genus must be positive"));
    }
    let pow = Rational::from(1u64 << (2 * g - 1));
    let ratio = (&pow - &Rational::one()) / pow;
    let b = bernoulli(2 * g as usize).abs();
    Ok(ratio * b / Rational::from(factorial(2 * u64::from(g))))
}

/// Whether [`lambda_g_prediction`] at this genus has an independent check
/// in this crate. Only genus 2 does; other genera are formula-only.
pub fn prediction_verifiable(g: u32) -> bool {
    g == 2
}

/// `C(2g-3+n; K) · ∫_{M̄_{g,1}} ψ_1^{2g-2} λ_g`
pub fn lambda_g_prediction(g: u32, n: usize, k: &ExponentVector) -> Result<Rational> {
    if k.len() != n {
        return Err(Error::domain(format!(
            "expected {n} exponents, got {}",
            k.len()
        )));
    }
    let degree = 2 * i64::from(g) - 3 + n as i64;
    if degree < 0 || k.degree() as i64 != degree {
        return Err(Error::domain(format!(
            "exponents {k} have degree {}, expected 2g - 3 + n = {degree}",
            k.degree()
        )));
    }
    Ok(Rational::from(multinomial(degree as u64, k)?) * lambda_g_initial(g)?)
}

/// Methods compared by [`verify`]; the name doubles as a CSV column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    DeltaClosed,
    DeltaRecursive,
    DeltaBrute,
    Lambda2Closed,
    Lambda2Eq5,
    Lambda2Eq3,
    LambdaGPred,
}

/// Methods that compute the same number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodGroup {
    PullbackDelta,
    Lambda2,
}

impl Method {
    pub const ALL: [Method; 7] = [
        Method::DeltaClosed,
        Method::DeltaRecursive,
        Method::DeltaBrute,
        Method::Lambda2Closed,
        Method::Lambda2Eq5,
        Method::Lambda2Eq3,
        Method::LambdaGPred,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::DeltaClosed => "delta_closed",
            Method::DeltaRecursive => "delta_recursive",
            Method::DeltaBrute => "delta_brute",
            Method::Lambda2Closed => "lambda2_closed",
            Method::Lambda2Eq5 => "lambda2_eq5",
            Method::Lambda2Eq3 => "lambda2_eq3",
            Method::LambdaGPred => "lambda_g_pred",
        }
    }

    pub fn group(self) -> MethodGroup {
        match self {
            Method::DeltaClosed | Method::DeltaRecursive | Method::DeltaBrute => {
                MethodGroup::PullbackDelta
            }
            _ => MethodGroup::Lambda2,
        }
    }

    pub fn evaluate(self, n: usize, k: &ExponentVector) -> Result<Rational> {
        match self {
            Method::DeltaClosed => pullback_delta_closed(n, k),
            Method::DeltaRecursive => pullback_delta_recursive(n, k),
            Method::DeltaBrute => {
                check_pullback_input(n, k)?;
                pullback_integral(&builtin_delta(), k)
            }
            Method::Lambda2Closed => lambda2_closed(n, k),
            Method::Lambda2Eq5 => lambda2_integral(n, k, Lambda2Method::PixtonEq5),
            Method::Lambda2Eq3 => lambda2_integral(n, k, Lambda2Method::PixtonEq3),
            Method::LambdaGPred => lambda_g_prediction(2, n, k),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// All methods evaluated on one `(n, K)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub n: usize,
    pub partition: ExponentVector,
    /// In [`Method::ALL`] order; a method that failed is absent here and
    /// listed in `failures`.
    pub values: Vec<(Method, Rational)>,
    pub failures: Vec<(Method, String)>,
    /// Every group's values coincide and no method failed.
    pub agreed: bool,
}

impl VerificationReport {
    pub fn evaluate(n: usize, partition: ExponentVector) -> Self {
        let mut values = Vec::new();
        let mut failures = Vec::new();
        for m in Method::ALL {
            match m.evaluate(n, &partition) {
                Ok(v) => values.push((m, v)),
                Err(e) => failures.push((m, e.to_string())),
            }
        }
        let agreed = failures.is_empty() && groups_agree(&values);
        VerificationReport {
            n,
            partition,
            values,
            failures,
            agreed,
        }
    }

    /// Recomputes `agreed` from the stored values.
    pub fn recheck(&mut self) {
        self.agreed = self.failures.is_empty() && groups_agree(&self.values);
    }

    pub fn value(&self, method: Method) -> Option<&Rational> {
        self.values
            .iter()
            .find(|(m, _)| *m == method)
            .map(|(_, v)| v)
    }
}

fn groups_agree(values: &[(Method, Rational)]) -> bool {
    [MethodGroup::PullbackDelta, MethodGroup::Lambda2]
        .iter()
        .all(|&grp| {
            let mut vals = values
                .iter()
                .filter(|(m, _)| m.group() == grp)
                .map(|(_, v)| v);
            vals.next().is_none_or(|first| vals.all(|v| v == first))
        })
}

/// Every `(n, K)` with `1 ≤ n ≤ n_max` and `K` a partition of `n + 1` into
/// at most `n` parts, zero-padded, in order of `n` then reverse-lex `K`.
pub fn verification_inputs(n_max: usize) -> Vec<(usize, ExponentVector)> {
    (1..=n_max)
        .flat_map(|n| partitions(n as u32 + 1, n).map(move |k| (n, k)))
        .collect()
}

/// Cross-checks every method on [`verification_inputs`]. Reports come back
/// in input order regardless of how the work is scheduled.
pub fn verify(n_max: usize) -> Result<Vec<VerificationReport>> {
    if n_max == 0 {
        return Err(Error::domain("n_max must be at least 1"));
    }
    Ok(verification_inputs(n_max)
        .into_par_iter()
        .map(|(n, k)| VerificationReport::evaluate(n, k))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(
            pullback_delta_closed(1, &ev(&[2])).unwrap(),
            Rational::new(1, 24)
        );
        assert_eq!(
            pullback_delta_closed(2, &ev(&[2, 1])).unwrap(),
            Rational::new(1, 8)
        );
        assert_eq!(
            pullback_delta_closed(3, &ev(&[2, 1, 1])).unwrap(),
            Rational::new(1, 2)
        );
    }

    #[test]
    fn recursive_examples() {
        assert_eq!(
            pullback_delta_recursive(1, &ev(&[2])).unwrap(),
            Rational::new(1, 24)
        );
        assert_eq!(
            pullback_delta_recursive(2, &ev(&[3, 0])).unwrap(),
            Rational::new(1, 24)
        );
        assert_eq!(
            pullback_delta_recursive(2, &ev(&[2, 1])).unwrap(),
            Rational::new(1, 8)
        );
        assert_eq!(
            pullback_delta_recursive(2, &ev(&[1, 2])).unwrap(),
            Rational::new(1, 8)
        );
    }

    #[test]
    fn degree_mismatch_rejected() {
        for f in [
            pullback_delta_closed,
            pullback_delta_recursive,
            lambda2_closed,
        ] {
            assert!(matches!(f(2, &ev(&[1, 1])), Err(Error::Domain(_))));
            assert!(matches!(f(2, &ev(&[3])), Err(Error::Domain(_))));
            assert!(matches!(f(0, &ev(&[1])), Err(Error::Domain(_))));
        }
        assert!(lambda2_integral(1, &ev(&[1]), Lambda2Method::PixtonEq3).is_err());
        assert!(lambda_g_prediction(2, 1, &ev(&[3])).is_err());
        assert!(lambda_g_prediction(1, 2, &ev(&[0])).is_err());
    }

    #[test]
    fn lambda2_examples() {
        let k = ev(&[2]);
        assert_eq!(
            lambda2_integral(1, &k, Lambda2Method::PixtonEq5).unwrap(),
            Rational::new(7, 5760)
        );
        assert_eq!(
            lambda2_integral(1, &k, Lambda2Method::PixtonEq3).unwrap(),
            Rational::new(7, 5760)
        );
        assert_eq!(
            lambda2_integral(2, &ev(&[2, 1]), Lambda2Method::PixtonEq5).unwrap(),
            Rational::new(7, 1920)
        );
        assert_eq!(lambda2_closed(1, &k).unwrap(), Rational::new(7, 5760));
        assert_eq!(
            lambda2_closed(2, &ev(&[3, 0])).unwrap(),
            Rational::new(7, 5760)
        );
        assert_eq!(
            lambda2_closed(3, &ev(&[2, 2, 0])).unwrap(),
            Rational::new(7, 960)
        );
    }

    #[test]
    fn lambda_g_constants() {
        assert_eq!(lambda_g_initial(1).unwrap(), Rational::new(1, 24));
        assert_eq!(lambda_g_initial(2).unwrap(), Rational::new(7, 24 * 8 * 30));
        assert_eq!(lambda_g_initial(3).unwrap(), Rational::new(31, 967680));
        assert!(lambda_g_initial(0).is_err());
    }

    #[test]
    fn lambda_g_prediction_examples() {
        assert_eq!(
            lambda_g_prediction(2, 1, &ev(&[2])).unwrap(),
            Rational::new(7, 5760)
        );
        assert_eq!(
            lambda_g_prediction(2, 2, &ev(&[2, 1])).unwrap(),
            Rational::new(7, 1920)
        );
        assert_eq!(
            lambda_g_prediction(1, 1, &ev(&[0])).unwrap(),
            Rational::new(1, 24)
        );
        assert!(prediction_verifiable(2));
        assert!(!prediction_verifiable(3));
    }

    #[test]
    fn method_names_parse() {
        for m in Lambda2Method::ALL {
            assert_eq!(m.name().parse::<Lambda2Method>().unwrap(), m);
        }
        assert!("eq4".parse::<Lambda2Method>().is_err());
    }

    #[test]
    fn verify_small_runs() {
        let one = verify(1).unwrap();
        assert_eq!(one.len(), 1);
        assert!(one[0].agreed);
        assert_eq!(
            one[0].value(Method::DeltaBrute),
            Some(&Rational::new(1, 24))
        );
        assert_eq!(
            one[0].value(Method::LambdaGPred),
            Some(&Rational::new(7, 5760))
        );

        let two = verify(2).unwrap();
        let ks: Vec<_> = two.iter().map(|r| (r.n, r.partition.to_string())).collect();
        assert_eq!(
            ks,
            vec![(1, "2".into()), (2, "3,0".into()), (2, "2,1".into())]
        );
        assert!(two.iter().all(|r| r.agreed));

        let four = verify(4).unwrap();
        assert_eq!(four.len(), 1 + 2 + 4 + 6);
        assert!(four.iter().all(|r| r.agreed));
        assert!(verify(0).is_err());
    }

    #[test]
    fn disagreement_is_reported() {
        let mut r = VerificationReport::evaluate(2, ev(&[2, 1]));
        assert!(r.agreed);
        assert!(r.failures.is_empty());
        r.values[1].1 = Rational::zero();
        r.recheck();
        assert!(!r.agreed);

        // values differ across groups but agree within each
        let mut q = VerificationReport::evaluate(1, ev(&[2]));
        assert_ne!(q.value(Method::DeltaClosed), q.value(Method::Lambda2Closed));
        q.recheck();
        assert!(q.agreed);
    }
}
