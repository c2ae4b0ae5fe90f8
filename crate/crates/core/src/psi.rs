//! ψ-class intersection numbers `⟨ψ_1^{k_1} ⋯ ψ_n^{k_n}⟩_{g,n}` for `g ≤ 1`.
//!
//! Values are determined by the string and dilaton equations from the two
//! initial conditions `⟨1⟩_{0,3} = 1` and `⟨ψ_1⟩_{1,1} = 1/24`. Results are
//! memoized on `(g, exponents sorted descending)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use parking_lot::RwLock;
use serde::{Deserialize, Serialize};

use crate::arith::{multinomial, ExponentVector, Rational};
use crate::error::{Error, Result};

/// Highest genus the recursion can reach from its initial conditions.
pub const MAX_GENUS: u32 = 1;

/// Names the moduli space `M̄_{g,n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModuliIndex {
    pub genus: u32,
    pub marks: usize,
}

impl ModuliIndex {
    pub fn new(genus: u32, marks: usize) -> Self {
        ModuliIndex { genus, marks }
    }

    /// `2g - 2 + n > 0`
    pub fn is_stable(&self) -> bool {
        2 * i64::from(self.genus) - 2 + self.marks as i64 > 0
    }

    /// `3g - 3 + n`; only meaningful for stable indices.
    pub fn dimension(&self) -> i64 {
        3 * i64::from(self.genus) - 3 + self.marks as i64
    }
}

impl fmt::Display for ModuliIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({},{})", self.genus, self.marks)
    }
}

type MemoKey = (u32, Vec<u32>);
type PulledKey = (u32, Vec<u32>, Vec<BasePoint>);

/// A point that survives the forgetful map `M̄_{g,B∪N} → M̄_{g,B}`.
///
/// It carries an ordinary ψ-power and a power of `π^*ψ`, the ψ-class of
/// the same point pulled back from `M̄_{g,B}`.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
pub struct BasePoint {
    pub psi: u32,
    pub pulled_back: u32,
}

impl BasePoint {
    pub fn plain(psi: u32) -> Self {
        BasePoint {
            psi,
            pulled_back: 0,
        }
    }

    pub fn pulled_back(power: u32) -> Self {
        BasePoint {
            psi: 0,
            pulled_back: power,
        }
    }

    fn degree(&self) -> i64 {
        i64::from(self.psi) + i64::from(self.pulled_back)
    }
}

/// Memoizing evaluator for genus 0 and genus 1 ψ-integrals.
///
/// Safe to share across threads. Two threads may compute the same entry
/// concurrently; both store the same exact value.
#[derive(Debug, Default)]
pub struct PsiEngine {
    memo: Option<RwLock<HashMap<MemoKey, Rational>>>,
    pulled_memo: Option<RwLock<HashMap<PulledKey, Rational>>>,
}

impl PsiEngine {
    pub fn new() -> Self {
        PsiEngine {
            memo: Some(RwLock::new(HashMap::new())),
            pulled_memo: Some(RwLock::new(HashMap::new())),
        }
    }

    /// An engine that recomputes every value from the initial conditions.
    pub fn unmemoized() -> Self {
        PsiEngine {
            memo: None,
            pulled_memo: None,
        }
    }

    /// Process-wide memoized engine.
    pub fn global() -> &'static PsiEngine {
        static ENGINE: OnceLock<PsiEngine> = OnceLock::new();
        ENGINE.get_or_init(PsiEngine::new)
    }

    pub fn cached_entries(&self) -> usize {
        self.memo.as_ref().map_or(0, |m| m.read().len())
    }

    /// `⟨Ψ^K⟩_{g,n}`. Returns zero when `deg K ≠ 3g - 3 + n`.
    pub fn integral(&self, space: ModuliIndex, k: &ExponentVector) -> Result<Rational> {
        self.integral_slice(space, k.as_slice())
    }

    pub(crate) fn integral_slice(&self, space: ModuliIndex, k: &[u32]) -> Result<Rational> {
        if k.len() != space.marks {
            return Err(Error::domain(format!(
                "{space} needs {} exponents, got {}",
                space.marks,
                k.len()
            )));
        }
        if !space.is_stable() {
            return Err(Error::domain(format!(
                "{space} is unstable: 2g - 2 + n <= 0"
            )));
        }
        if space.genus > MAX_GENUS {
            return Err(Error::UnsupportedGenus {
                genus: space.genus,
                max: MAX_GENUS,
            });
        }
        let degree: i64 = k.iter().map(|&x| i64::from(x)).sum();
        if degree != space.dimension() {
            return Ok(Rational::zero());
        }
        let mut key = k.to_vec();
        key.sort_unstable_by(|a, b| b.cmp(a));
        Ok(self.eval(space.genus, key))
    }

    // `k` is sorted descending, stable, and of matching degree.
    fn eval(&self, genus: u32, k: Vec<u32>) -> Rational {
        match (genus, k.as_slice()) {
            (0, [0, 0, 0]) => return Rational::one(),
            (1, [1]) => return Rational::new(1, 24),
            _ => {}
        }
        if let Some(memo) = &self.memo {
            if let Some(v) = memo.read().get(&(genus, k.clone())) {
                return v.clone();
            }
        }

        let value = match k.last() {
            // string: forget a point with exponent 0
            Some(0) => {
                let mut rest = k.clone();
                rest.pop();
                (0..rest.len())
                    .filter(|&j| rest[j] > 0)
                    .map(|j| {
                        let mut lowered = rest.clone();
                        lowered[j] -= 1;
                        lowered.sort_unstable_by(|a, b| b.cmp(a));
                        self.eval(genus, lowered)
                    })
                    .sum()
            }
            // dilaton: forget a point with exponent 1; (2g - 2 + n) with n
            // the number of remaining points
            Some(1) => {
                let mut rest = k.clone();
                rest.pop();
                let factor = 2 * i64::from(genus) - 2 + rest.len() as i64;
                Rational::from(factor) * self.eval(genus, rest)
            }
            _ => unreachable!("degree 3g-3+n with g <= 1 forces a part equal to 0 or 1: {k:?}"),
        };

        if let Some(memo) = &self.memo {
            memo.write().insert((genus, k), value.clone());
        }
        value
    }
}

impl PsiEngine {
    /// `∫_{M̄_{g,B∪N}} Π_{i∈N} ψ_i^{k_i} · Π_{j∈B} ψ_j^{a_j} (π^*ψ_j)^{d_j}`
    /// where `π` forgets the points `N` and `free` holds the `k_i`.
    ///
    /// Zero when the total degree differs from `3g - 3 + |B| + |N|`.
    pub fn integral_with_pullbacks(
        &self,
        genus: u32,
        free: &[u32],
        base: &[BasePoint],
    ) -> Result<Rational> {
        let space = ModuliIndex::new(genus, free.len() + base.len());
        if !space.is_stable() {
            return Err(Error::domain(format!(
                "{space} is unstable: 2g - 2 + n <= 0"
            )));
        }
        if genus > MAX_GENUS {
            return Err(Error::UnsupportedGenus {
                genus,
                max: MAX_GENUS,
            });
        }
        let has_pullbacks = base.iter().any(|b| b.pulled_back > 0);
        if has_pullbacks && !ModuliIndex::new(genus, base.len()).is_stable() {
            return Err(Error::domain(format!(
                "pulled-back classes need a stable target M({genus},{})",
                base.len()
            )));
        }
        let degree: i64 = free.iter().map(|&k| i64::from(k)).sum::<i64>()
            + base.iter().map(BasePoint::degree).sum::<i64>();
        if degree != space.dimension() {
            return Ok(Rational::zero());
        }
        let mut free = free.to_vec();
        free.sort_unstable_by(|a, b| b.cmp(a));
        let mut base = base.to_vec();
        base.sort_unstable();
        Ok(self.eval_pulled(genus, free, base))
    }

    // Degree matches; `free` sorted descending, `base` sorted.
    fn eval_pulled(&self, genus: u32, free: Vec<u32>, base: Vec<BasePoint>) -> Rational {
        if free.is_empty() || base.iter().all(|b| b.pulled_back == 0) {
            // no forgetful map left, or nothing pulled back: ordinary ψ-powers
            let mut k = free;
            k.extend(base.iter().map(|b| b.psi + b.pulled_back));
            k.sort_unstable_by(|a, b| b.cmp(a));
            return self.eval(genus, k);
        }
        let key = (genus, free, base);
        if let Some(memo) = &self.pulled_memo {
            if let Some(v) = memo.read().get(&key) {
                return v.clone();
            }
        }
        let (genus, free, base) = key;

        let value = match free.last() {
            // string on a forgotten point: pulled-back classes pass through
            // the pushforward, only ordinary ψ-powers are lowered
            Some(0) => {
                let mut rest = free.clone();
                rest.pop();
                let lowered_free = (0..rest.len()).filter(|&i| rest[i] > 0).map(|i| {
                    let mut f = rest.clone();
                    f[i] -= 1;
                    f.sort_unstable_by(|a, b| b.cmp(a));
                    self.eval_pulled(genus, f, base.clone())
                });
                let lowered_base = (0..base.len()).filter(|&j| base[j].psi > 0).map(|j| {
                    let mut b = base.clone();
                    b[j].psi -= 1;
                    b.sort_unstable();
                    self.eval_pulled(genus, rest.clone(), b)
                });
                lowered_free.chain(lowered_base).sum()
            }
            Some(1) => {
                let mut rest = free.clone();
                rest.pop();
                let factor = 2 * i64::from(genus) - 2 + (rest.len() + base.len()) as i64;
                Rational::from(factor) * self.eval_pulled(genus, rest, base.clone())
            }
            // Every forgotten point has exponent >= 2. Writing
            // π^*ψ_j = ψ_j - Σ_S D_{j,S}, each D_{j,S} puts j and the marks S
            // on a rational tail M̄_{0,|S|+2} whose ψ-degree is at least 2|S|,
            // above its dimension |S| - 1, so one power of π^*ψ_j may be
            // traded for ψ_j.
            _ => {
                let j = base
                    .iter()
                    .position(|b| b.pulled_back > 0)
                    .expect("some pulled-back power");
                let mut b = base.clone();
                b[j].pulled_back -= 1;
                b[j].psi += 1;
                b.sort_unstable();
                self.eval_pulled(genus, free.clone(), b)
            }
        };

        if let Some(memo) = &self.pulled_memo {
            memo.write().insert((genus, free, base), value.clone());
        }
        value
    }
}

/// `⟨Ψ^K⟩_{g,n}` on the process-wide engine, with `n = K.len()`.
pub fn psi_integral(space: ModuliIndex, k: &ExponentVector) -> Result<Rational> {
    PsiEngine::global().integral(space, k)
}

/// Genus-0 closed form `⟨Ψ^K⟩_{0,n} = C(n - 3; K)`, zero off-dimension.
pub fn genus0_closed_form(k: &ExponentVector) -> Result<Rational> {
    let n = k.len();
    if n < 3 {
        return Err(Error::domain(format!(
            "genus 0 needs at least 3 marks, got {n}"
        )));
    }
    let dim = (n - 3) as u64;
    if k.degree() != dim {
        return Ok(Rational::zero());
    }
    multinomial(dim, k).map(Rational::from)
}
