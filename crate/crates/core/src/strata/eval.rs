use rayon::prelude::*;

use super::graph::{validate_graph, DualGraph};
use crate::arith::{ExponentVector, Rational};
use crate::error::{Error, Result};
use crate::psi::{BasePoint, ModuliIndex, PsiEngine, MAX_GENUS};

/// Total genus of every graph this evaluator accepts.
pub const TARGET_GENUS: u32 = 2;

/// Outcome of a pullback evaluation together with how many mark
/// assignments were visited and how many had nonzero contribution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PullbackTally {
    pub value: Rational,
    pub assignments: u64,
    pub contributing: u64,
}

/// The moduli space of one vertex in a stratum and the classes on it.
///
/// `free` are exponents of forgotten marks placed on this vertex; `base`
/// lists the legs (ordinary ψ-powers) followed by the node points, whose
/// decorations are ψ-classes pulled back from the vertex's own space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexFactor {
    pub space: ModuliIndex,
    pub free: Vec<u32>,
    pub base: Vec<BasePoint>,
    pub value: Rational,
}

/// One boundary stratum of `π^*[Γ]`: which vertex each forgotten mark
/// lands on, and the Fubini factors it contributes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratum {
    pub assignment: Vec<usize>,
    pub vertices: Vec<VertexFactor>,
    pub value: Rational,
}

struct Layout {
    genera: Vec<u32>,
    fixed: Vec<Vec<BasePoint>>,
    free: Vec<u32>,
}

impl Layout {
    fn new(graph: &DualGraph, k: &ExponentVector) -> Result<Layout> {
        if let Some(&genus) = graph.genera.iter().find(|&&g| g > MAX_GENUS) {
            return Err(Error::UnsupportedGenus {
                genus,
                max: MAX_GENUS,
            });
        }
        let report = validate_graph(graph);
        if !report.is_valid() {
            return Err(Error::InvalidGraph(report));
        }
        let genus = graph.total_genus();
        if genus != TARGET_GENUS {
            return Err(Error::domain(format!(
                "graph has total genus {genus}; only genus {TARGET_GENUS} strata are evaluated"
            )));
        }
        let legs = graph.legs.len();
        if k.len() < legs {
            return Err(Error::domain(format!(
                "graph has {legs} legs but only {} exponents were given",
                k.len()
            )));
        }
        let (leg_exps, free) = k.as_slice().split_at(legs);
        let mut fixed = vec![Vec::new(); graph.vertex_count()];
        for (leg, &e) in graph.legs.iter().zip(leg_exps) {
            fixed[leg.vertex].push(BasePoint::plain(e));
        }
        for (v, points) in fixed.iter_mut().enumerate() {
            points.extend(
                graph
                    .node_points(v)
                    .iter()
                    .map(|h| BasePoint::pulled_back(h.psi)),
            );
        }
        Ok(Layout {
            genera: graph.genera.clone(),
            fixed,
            free: free.to_vec(),
        })
    }

    fn assignment_count(&self) -> Result<u64> {
        let v = self.genera.len() as u64;
        u32::try_from(self.free.len())
            .ok()
            .and_then(|n| v.checked_pow(n))
            .ok_or_else(|| Error::domain("too many mark assignments to enumerate"))
    }

    fn decode(&self, mut index: u64) -> Vec<usize> {
        let v = self.genera.len() as u64;
        (0..self.free.len())
            .map(|_| {
                let d = index % v;
                index /= v;
                d as usize
            })
            .collect()
    }

    fn free_by_vertex(&self, assignment: &[usize]) -> Vec<Vec<u32>> {
        let mut free: Vec<Vec<u32>> = vec![Vec::new(); self.genera.len()];
        for (&v, &e) in assignment.iter().zip(&self.free) {
            free[v].push(e);
        }
        free
    }

    fn space(&self, v: usize, free: &[u32]) -> ModuliIndex {
        ModuliIndex::new(self.genera[v], free.len() + self.fixed[v].len())
    }

    fn on_dimension(&self, v: usize, free: &[u32]) -> bool {
        let degree: i64 = free.iter().map(|&x| i64::from(x)).sum::<i64>()
            + self.fixed[v]
                .iter()
                .map(|b| i64::from(b.psi + b.pulled_back))
                .sum::<i64>();
        degree == self.space(v, free).dimension()
    }
}

/// Evaluates pullbacks of strata along `M̄_{2,n} → M̄_2`, summing over every
/// assignment of the `n` marks to vertices and factoring each stratum as a
/// product of vertex ψ-integrals.
#[derive(Debug, Clone, Copy)]
pub struct Evaluator<'a> {
    engine: &'a PsiEngine,
}

impl Default for Evaluator<'static> {
    fn default() -> Self {
        Evaluator {
            engine: PsiEngine::global(),
        }
    }
}

impl<'a> Evaluator<'a> {
    pub fn new(engine: &'a PsiEngine) -> Self {
        Evaluator { engine }
    }

    pub fn engine(&self) -> &'a PsiEngine {
        self.engine
    }

    pub fn pullback(&self, graph: &DualGraph, k: &ExponentVector) -> Result<Rational> {
        self.pullback_tallied(graph, k).map(|t| t.value)
    }

    pub fn pullback_tallied(&self, graph: &DualGraph, k: &ExponentVector) -> Result<PullbackTally> {
        let layout = Layout::new(graph, k)?;
        let total = layout.assignment_count()?;
        let zero = || PullbackTally {
            value: Rational::zero(),
            assignments: 0,
            contributing: 0,
        };
        (0..total)
            .into_par_iter()
            .map(|index| {
                let free = layout.free_by_vertex(&layout.decode(index));
                let value = self.stratum_value(&layout, &free)?;
                let contributing = u64::from(!value.is_zero());
                Ok(PullbackTally {
                    value,
                    assignments: 1,
                    contributing,
                })
            })
            .try_reduce(zero, |a, b| {
                Ok(PullbackTally {
                    value: a.value + b.value,
                    assignments: a.assignments + b.assignments,
                    contributing: a.contributing + b.contributing,
                })
            })
    }

    /// Every stratum with its factors, in assignment order (mark 1 varies
    /// fastest).
    pub fn strata(&self, graph: &DualGraph, k: &ExponentVector) -> Result<Vec<Stratum>> {
        let layout = Layout::new(graph, k)?;
        (0..layout.assignment_count()?)
            .map(|index| {
                let assignment = layout.decode(index);
                let vertices = layout
                    .free_by_vertex(&assignment)
                    .into_iter()
                    .enumerate()
                    .map(|(v, free)| {
                        let base = layout.fixed[v].clone();
                        let value =
                            self.engine
                                .integral_with_pullbacks(layout.genera[v], &free, &base)?;
                        Ok(VertexFactor {
                            space: layout.space(v, &free),
                            free,
                            base,
                            value,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                let value = vertices.iter().map(|f| f.value.clone()).product();
                Ok(Stratum {
                    assignment,
                    vertices,
                    value,
                })
            })
            .collect()
    }

    fn stratum_value(&self, layout: &Layout, free: &[Vec<u32>]) -> Result<Rational> {
        // skip the recursion entirely when some vertex is off-dimension
        if !free
            .iter()
            .enumerate()
            .all(|(v, f)| layout.on_dimension(v, f))
        {
            return Ok(Rational::zero());
        }
        let mut product = Rational::one();
        for (v, f) in free.iter().enumerate() {
            product *=
                &self
                    .engine
                    .integral_with_pullbacks(layout.genera[v], f, &layout.fixed[v])?;
        }
        Ok(product)
    }
}

/// `∫_{π^*[Γ]} Ψ^K` on the process-wide ψ engine.
pub fn pullback_integral(graph: &DualGraph, k: &ExponentVector) -> Result<Rational> {
    Evaluator::default().pullback(graph, k)
}

/// The strata of `π^*[Γ]` with their individual contributions.
pub fn pullback_strata(graph: &DualGraph, k: &ExponentVector) -> Result<Vec<Stratum>> {
    Evaluator::default().strata(graph, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strata::{builtin_delta, builtin_delta0, builtin_gamma_psi};

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn worked_examples() {
        assert_eq!(
            pullback_integral(&builtin_delta(), &ev(&[2])).unwrap(),
            Rational::new(1, 24)
        );
        assert_eq!(
            pullback_integral(&builtin_delta(), &ev(&[2, 1])).unwrap(),
            Rational::new(1, 8)
        );
        assert_eq!(
            pullback_integral(&builtin_delta0(), &ev(&[2])).unwrap(),
            Rational::one()
        );
        assert_eq!(
            pullback_integral(&builtin_gamma_psi(), &ev(&[2])).unwrap(),
            Rational::new(1, 12)
        );
    }

    #[test]
    fn base_case_strata_breakdown() {
        let strata = pullback_strata(&builtin_delta(), &ev(&[2])).unwrap();
        assert_eq!(strata.len(), 2);
        let spaces = |s: &Stratum| s.vertices.iter().map(|f| f.space).collect::<Vec<_>>();
        let factors = |s: &Stratum| {
            s.vertices
                .iter()
                .map(|f| f.value.clone())
                .collect::<Vec<_>>()
        };
        // mark on the genus-1 vertex: <psi^2 * 1>_{1,2} <1>_{0,3}
        assert_eq!(
            spaces(&strata[0]),
            vec![ModuliIndex::new(1, 2), ModuliIndex::new(0, 3)]
        );
        assert_eq!(
            factors(&strata[0]),
            vec![Rational::new(1, 24), Rational::one()]
        );
        // mark on the genus-0 vertex: <1>_{1,1} <psi^2>_{0,4}
        assert_eq!(
            spaces(&strata[1]),
            vec![ModuliIndex::new(1, 1), ModuliIndex::new(0, 4)]
        );
        assert!(strata[1].value.is_zero());
    }

    #[test]
    fn tally_visits_every_assignment() {
        let t = Evaluator::default()
            .pullback_tallied(&builtin_delta(), &ev(&[3, 1, 1, 0]))
            .unwrap();
        assert_eq!(t.assignments, 16);
        assert!(t.contributing > 0 && t.contributing < 16);
    }

    #[test]
    fn empty_exponents_pull_back_along_identity() {
        // Δ has codimension 2 in a 3-dimensional space: degree 1 ≠ 0
        let t = Evaluator::default()
            .pullback_tallied(&builtin_delta(), &ExponentVector::empty())
            .unwrap();
        assert_eq!((t.value, t.assignments), (Rational::zero(), 1));
    }

    #[test]
    fn rejects_out_of_scope_graphs() {
        let genus2 = DualGraph::new(vec![2]);
        assert_eq!(
            pullback_integral(&genus2, &ev(&[4])).unwrap_err(),
            Error::UnsupportedGenus { genus: 2, max: 1 }
        );
        let reordered = DualGraph::new(vec![0, 1]).with_edge(0, 1).with_edge(0, 0);
        assert_eq!(
            pullback_integral(&reordered, &ev(&[2])).unwrap(),
            Rational::new(1, 24)
        );
        let bad = DualGraph::new(vec![0]).with_edge(0, 0);
        assert!(matches!(
            pullback_integral(&bad, &ev(&[1])),
            Err(Error::InvalidGraph(_))
        ));
        let genus1 = DualGraph::new(vec![1]).with_leg("1", 0);
        assert!(matches!(
            pullback_integral(&genus1, &ev(&[1])),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn legs_take_leading_exponents() {
        // Δ with a leg on the genus-1 vertex, pulled back along one more mark
        let g = builtin_delta().with_leg("1", 0);
        let with_leg = pullback_integral(&g, &ev(&[1, 2])).unwrap();
        // leg exponent 1 on genus-1 vertex; free mark (exp 2) goes to either vertex
        let by_hand = Rational::new(1, 12); // <psi^2 psi^1 psi^0>_{1,3} <1>_{0,3}
        assert_eq!(with_leg, by_hand);
    }
}
