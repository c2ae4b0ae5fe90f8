use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::psi::MAX_GENUS;

/// One end of an edge: a vertex, a per-vertex slot number, and the
/// exponent of the ψ-class decorating this half-edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfEdge {
    pub vertex: usize,
    pub slot: u32,
    pub psi: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub ends: [HalfEdge; 2],
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.ends[0].vertex == self.ends[1].vertex
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Leg {
    pub label: String,
    pub vertex: usize,
}

/// Dual graph of a nodal curve: genus-labelled vertices, edges (loops
/// allowed), labelled legs, and optional ψ-decorations on half-edges.
///
/// Equality is structural, not up to isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct DualGraph {
    pub genera: Vec<u32>,
    pub edges: Vec<Edge>,
    pub legs: Vec<Leg>,
}

impl DualGraph {
    pub fn new(genera: Vec<u32>) -> Self {
        DualGraph {
            genera,
            edges: Vec::new(),
            legs: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.genera.len()
    }

    fn next_slot(&self, vertex: usize) -> u32 {
        self.half_edges()
            .filter(|h| h.vertex == vertex)
            .map(|h| h.slot + 1)
            .max()
            .unwrap_or(0)
    }

    /// Adds an undecorated edge, numbering its half-edges after the
    /// existing ones at each endpoint.
    pub fn with_edge(self, a: usize, b: usize) -> Self {
        self.with_decorated_edge(a, b, 0, 0)
    }

    pub fn with_decorated_edge(mut self, a: usize, b: usize, psi_a: u32, psi_b: u32) -> Self {
        let slot_a = self.next_slot(a);
        let slot_b = if a == b {
            slot_a + 1
        } else {
            self.next_slot(b)
        };
        self.edges.push(Edge {
            ends: [
                HalfEdge {
                    vertex: a,
                    slot: slot_a,
                    psi: psi_a,
                },
                HalfEdge {
                    vertex: b,
                    slot: slot_b,
                    psi: psi_b,
                },
            ],
        });
        self
    }

    pub fn with_leg(mut self, label: impl Into<String>, vertex: usize) -> Self {
        self.legs.push(Leg {
            label: label.into(),
            vertex,
        });
        self
    }

    pub fn half_edges(&self) -> impl Iterator<Item = &HalfEdge> {
        self.edges.iter().flat_map(|e| e.ends.iter())
    }

    /// Legs plus edge-ends at `vertex`.
    pub fn valence(&self, vertex: usize) -> usize {
        self.half_edges().filter(|h| h.vertex == vertex).count()
            + self.legs.iter().filter(|l| l.vertex == vertex).count()
    }

    /// Edge-ends at `vertex` ordered by slot.
    pub fn node_points(&self, vertex: usize) -> Vec<HalfEdge> {
        let mut ends: Vec<HalfEdge> = self
            .half_edges()
            .filter(|h| h.vertex == vertex)
            .copied()
            .collect();
        ends.sort_by_key(|h| h.slot);
        ends
    }

    pub fn components(&self) -> usize {
        let n = self.genera.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut count = n;
        for e in &self.edges {
            let (a, b) = (e.ends[0].vertex, e.ends[1].vertex);
            if a >= n || b >= n {
                continue;
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                count -= 1;
            }
        }
        count
    }

    /// First Betti number `E - V + components`.
    pub fn betti_number(&self) -> usize {
        self.edges.len() + self.components() - self.genera.len()
    }

    /// `Σ g_v + b_1(Γ)`
    pub fn total_genus(&self) -> u32 {
        self.genera.iter().sum::<u32>() + self.betti_number() as u32
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NoVertices,
    VertexOutOfRange {
        what: String,
        vertex: usize,
    },
    DuplicateHalfEdge {
        vertex: usize,
        slot: u32,
    },
    DuplicateLegLabel(String),
    Disconnected {
        components: usize,
    },
    UnstableVertex {
        vertex: usize,
        genus: u32,
        valence: usize,
    },
    GenusTooHigh {
        vertex: usize,
        genus: u32,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoVertices => write!(f, "graph has no vertices"),
            Violation::VertexOutOfRange { what, vertex } => {
                write!(f, "{what} refers to missing vertex v{vertex}")
            }
            Violation::DuplicateHalfEdge { vertex, slot } => {
                write!(f, "half-edge v{vertex}.h{slot} used more than once")
            }
            Violation::DuplicateLegLabel(label) => write!(f, "leg label {label:?} repeated"),
            Violation::Disconnected { components } => {
                write!(f, "graph is disconnected ({components} components)")
            }
            Violation::UnstableVertex {
                vertex,
                genus,
                valence,
            } => write!(
                f,
                "vertex v{vertex} is unstable: 2*{genus} - 2 + {valence} = {} <= 0",
                2 * i64::from(*genus) - 2 + *valence as i64
            ),
            Violation::GenusTooHigh { vertex, genus } => {
                write!(f, "vertex v{vertex} has genus {genus} > {MAX_GENUS}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks connectedness, per-vertex stability, index ranges, and that every
/// vertex has genus at most one.
pub fn validate_graph(graph: &DualGraph) -> ValidationReport {
    let mut violations = Vec::new();
    let n = graph.vertex_count();
    if n == 0 {
        violations.push(Violation::NoVertices);
        return ValidationReport { violations };
    }

    let mut seen = BTreeSet::new();
    for (i, e) in graph.edges.iter().enumerate() {
        for h in &e.ends {
            if h.vertex >= n {
                violations.push(Violation::VertexOutOfRange {
                    what: format!("edge {i}"),
                    vertex: h.vertex,
                });
            } else if !seen.insert((h.vertex, h.slot)) {
                violations.push(Violation::DuplicateHalfEdge {
                    vertex: h.vertex,
                    slot: h.slot,
                });
            }
        }
    }
    let mut labels = BTreeSet::new();
    for leg in &graph.legs {
        if leg.vertex >= n {
            violations.push(Violation::VertexOutOfRange {
                what: format!("leg {:?}", leg.label),
                vertex: leg.vertex,
            });
        }
        if !labels.insert(leg.label.as_str()) {
            violations.push(Violation::DuplicateLegLabel(leg.label.clone()));
        }
    }

    let components = graph.components();
    if components > 1 {
        violations.push(Violation::Disconnected { components });
    }
    for (v, &genus) in graph.genera.iter().enumerate() {
        let valence = graph.valence(v);
        if 2 * i64::from(genus) - 2 + valence as i64 <= 0 {
            violations.push(Violation::UnstableVertex {
                vertex: v,
                genus,
                valence,
            });
        }
        if genus > MAX_GENUS {
            violations.push(Violation::GenusTooHigh { vertex: v, genus });
        }
    }
    ValidationReport { violations }
}

/// `Δ`: a genus-1 vertex joined by an edge to a genus-0 vertex carrying a
/// self-loop.
pub fn builtin_delta() -> DualGraph {
    DualGraph::new(vec![1, 0]).with_edge(0, 1).with_edge(1, 1)
}

/// `Δ_0`: one genus-0 vertex with two self-loops.
pub fn builtin_delta0() -> DualGraph {
    DualGraph::new(vec![0]).with_edge(0, 0).with_edge(0, 0)
}

/// `Γ_ψ`: one genus-1 vertex with a self-loop whose first half-edge
/// carries `ψ^1`.
pub fn builtin_gamma_psi() -> DualGraph {
    DualGraph::new(vec![1]).with_decorated_edge(0, 0, 1, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_are_valid_genus_two() {
        for g in [builtin_delta(), builtin_delta0(), builtin_gamma_psi()] {
            assert!(validate_graph(&g).is_valid(), "{g:?}");
            assert_eq!(g.total_genus(), 2);
        }
        assert_eq!(builtin_delta0().valence(0), 4);
        let gp = builtin_gamma_psi();
        assert_eq!((gp.genera[0], gp.valence(0)), (1, 2));
        let d = builtin_delta();
        assert_eq!((d.valence(0), d.valence(1)), (1, 3));
    }

    #[test]
    fn unstable_vertex_reported() {
        let g = DualGraph::new(vec![0]).with_leg("1", 0).with_leg("2", 0);
        let report = validate_graph(&g);
        assert_eq!(
            report.violations,
            vec![Violation::UnstableVertex {
                vertex: 0,
                genus: 0,
                valence: 2
            }]
        );
        assert!(report.to_string().contains("2*0 - 2 + 2 = 0"));
    }

    #[test]
    fn disconnected_reported() {
        let g = DualGraph::new(vec![1, 1]).with_leg("1", 0).with_leg("2", 1);
        let report = validate_graph(&g);
        assert!(report
            .violations
            .contains(&Violation::Disconnected { components: 2 }));
    }

    #[test]
    fn every_violation_listed() {
        let mut g = DualGraph::new(vec![2, 0]).with_edge(0, 3).with_leg("a", 1);
        g.legs.push(Leg {
            label: "a".into(),
            vertex: 1,
        });
        let report = validate_graph(&g);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::VertexOutOfRange { .. })));
        assert!(report
            .violations
            .contains(&Violation::DuplicateLegLabel("a".into())));
        assert!(report.violations.contains(&Violation::GenusTooHigh {
            vertex: 0,
            genus: 2
        }));
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Disconnected { .. })));
        assert!(validate_graph(&DualGraph::default()).violations == vec![Violation::NoVertices]);
    }

    #[test]
    fn duplicate_half_edge_reported() {
        let mut g = builtin_delta0();
        g.edges[1].ends[0].slot = 0;
        assert!(validate_graph(&g)
            .violations
            .contains(&Violation::DuplicateHalfEdge { vertex: 0, slot: 0 }));
    }
}
