//! Line-oriented text form of a [`DualGraph`]:
//!
//! ```text
//! # comment
//! v0 genus=1
//! v1 genus=0
//! e v0.h0 v1.h0
//! e v1.h1 v1.h2 psi=1@v1.h2
//! leg 1 v0
//! ```
//!
//! Vertices are declared in order `v0, v1, ...`. An edge joins two
//! half-edges `v<i>.h<a>`; an optional `psi=<k>` decorates its first end,
//! or the named end with `psi=<k>@v<i>.h<a>`. Legs take a label and a
//! vertex. Blank lines and text after `#` are ignored.

use std::fmt;
use std::str::FromStr;

use super::graph::{DualGraph, Edge, HalfEdge, Leg};
use crate::error::Error;

fn parse_vertex(tok: &str) -> Option<usize> {
    tok.strip_prefix('v')?.parse().ok()
}

fn parse_half_edge(tok: &str) -> Option<(usize, u32)> {
    let (v, h) = tok.split_once('.')?;
    Some((parse_vertex(v)?, h.strip_prefix('h')?.parse().ok()?))
}

impl FromStr for DualGraph {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self, Error> {
        let mut graph = DualGraph::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::Parse(format!("line {}: {msg}: {line:?}", lineno + 1));
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks.as_slice() {
                ["e", a, b, rest @ ..] => {
                    let (va, sa) = parse_half_edge(a).ok_or_else(|| err("bad half-edge"))?;
                    let (vb, sb) = parse_half_edge(b).ok_or_else(|| err("bad half-edge"))?;
                    let mut ends = [
                        HalfEdge {
                            vertex: va,
                            slot: sa,
                            psi: 0,
                        },
                        HalfEdge {
                            vertex: vb,
                            slot: sb,
                            psi: 0,
                        },
                    ];
                    match rest {
                        [] => {}
                        [deco] => {
                            let spec = deco
                                .strip_prefix("psi=")
                                .ok_or_else(|| err("expected psi=<k>"))?;
                            let (k, target) = match spec.split_once('@') {
                                Some((k, t)) => (k, Some(t)),
                                None => (spec, None),
                            };
                            let k: u32 = k.parse().map_err(|_| err("bad psi exponent"))?;
                            let idx = match target {
                                None => 0,
                                Some(t) => {
                                    let h =
                                        parse_half_edge(t).ok_or_else(|| err("bad psi target"))?;
                                    if h == (va, sa) {
                                        0
                                    } else if h == (vb, sb) {
                                        1
                                    } else {
                                        return Err(err("psi target is not an end of this edge"));
                                    }
                                }
                            };
                            ends[idx].psi = k;
                        }
                        _ => return Err(err("trailing tokens")),
                    }
                    graph.edges.push(Edge { ends });
                }
                ["leg", label, v] => {
                    let vertex = parse_vertex(v).ok_or_else(|| err("bad vertex"))?;
                    graph.legs.push(Leg {
                        label: (*label).to_string(),
                        vertex,
                    });
                }
                [v, genus] if v.starts_with('v') => {
                    let index = parse_vertex(v).ok_or_else(|| err("bad vertex"))?;
                    if index != graph.genera.len() {
                        return Err(err("vertices must be declared in order v0, v1, ..."));
                    }
                    let g = genus
                        .strip_prefix("genus=")
                        .and_then(|g| g.parse().ok())
                        .ok_or_else(|| err("expected genus=<g>"))?;
                    graph.genera.push(g);
                }
                _ => return Err(err("unrecognized line")),
            }
        }
        Ok(graph)
    }
}

impl fmt::Display for DualGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.genera.iter().enumerate() {
            writeln!(f, "v{i} genus={g}")?;
        }
        for e in &self.edges {
            let [a, b] = e.ends;
            write!(f, "e v{}.h{} v{}.h{}", a.vertex, a.slot, b.vertex, b.slot)?;
            // the format carries at most one decoration per edge
            if a.psi > 0 {
                write!(f, " psi={}", a.psi)?;
            } else if b.psi > 0 {
                write!(f, " psi={}@v{}.h{}", b.psi, b.vertex, b.slot)?;
            }
            writeln!(f)?;
        }
        for leg in &self.legs {
            writeln!(f, "leg {} v{}", leg.label, leg.vertex)?;
        }
        Ok(())
    }
}
