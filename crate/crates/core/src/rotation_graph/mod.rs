//! Rotation tailed graphs: a simple connected graph, a cyclic rotation at
//! every vertex and an optional tail slot inserted into that rotation.
//!
//! Convention: the rotation list at `u` is read in its forward cyclic order.
//! The facial successor of the arc `u -> v` is `v -> w` where `w` follows `u`
//! in the rotation at `v`. When the slot after `u` is the tail, the walk passes
//! a quay at `v` and continues with the slot after the tail.

mod dual;
mod faces;
mod parse;

pub use dual::{dual_graph, DualGraph};
pub use faces::{genus, trace_faces, FaceKind, FacialWalk, QuayVisit};
pub use parse::parse_rotation_graph;

use crate::error::{Error, Result};

/// One entry of a vertex rotation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slot {
    Vertex(usize),
    Tail,
}

/// A directed arc of the underlying graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GraphArc {
    pub from: usize,
    pub to: usize,
}

/// A validated rotation tailed graph.
///
/// Vertices are numbered in input order. Arcs are numbered in increasing
/// `(from, to)` order, which fixes every downstream indexing.
#[derive(Clone, Debug, PartialEq)]
pub struct RotationTailedGraph {
    labels: Vec<String>,
    rotation: Vec<Vec<Slot>>,
    arcs: Vec<GraphArc>,
    reverse: Vec<usize>,
    // position of `to` inside the rotation at `from`
    arc_position: Vec<usize>,
    tail_position: Vec<Option<usize>>,
    boundary: Vec<usize>,
    boundary_index: Vec<Option<usize>>,
}

impl RotationTailedGraph {
    /// Builds a graph from vertex labels and rotations, checking every invariant.
    pub fn new(labels: Vec<String>, rotation: Vec<Vec<Slot>>) -> Result<Self> {
        let n = labels.len();
        if n != rotation.len() {
            return Err(Error::Mismatch {
                what: "rotation lists",
                expected: n,
                got: rotation.len(),
            });
        }
        if n == 0 {
            return Err(Error::Validation("graph has no vertices".into()));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || l == "*" || l.contains(|c: char| c.is_whitespace() || c == ':' || c == '#') {
                return Err(Error::Validation(format!("bad vertex label {l:?}")));
            }
            if labels[..i].contains(l) {
                return Err(Error::Validation(format!("vertex {l} declared twice")));
            }
        }

        let mut adjacent = vec![vec![false; n]; n];
        let mut tail_position = vec![None; n];
        for (u, rot) in rotation.iter().enumerate() {
            for (p, slot) in rot.iter().enumerate() {
                match *slot {
                    Slot::Tail => {
                        if tail_position[u].is_some() {
                            return Err(Error::Validation(format!(
                                "vertex {} has more than one tail slot",
                                labels[u]
                            )));
                        }
                        tail_position[u] = Some(p);
                    }
                    Slot::Vertex(v) => {
                        if v >= n {
                            return Err(Error::Validation(format!(
                                "vertex {} refers to vertex index {v} out of range",
                                labels[u]
                            )));
                        }
                        if v == u {
                            return Err(Error::Validation(format!("self-loop at vertex {}", labels[u])));
                        }
                        if adjacent[u][v] {
                            return Err(Error::Validation(format!(
                                "vertex {} lists neighbor {} twice",
                                labels[u], labels[v]
                            )));
                        }
                        adjacent[u][v] = true;
                    }
                }
            }
        }
        for u in 0..n {
            for v in 0..n {
                if adjacent[u][v] && !adjacent[v][u] {
                    return Err(Error::Validation(format!(
                        "vertex {} lists {} but not the other way round",
                        labels[u], labels[v]
                    )));
                }
            }
        }

        let mut arcs = Vec::new();
        for (u, row) in adjacent.iter().enumerate() {
            for (v, &adj) in row.iter().enumerate() {
                if adj {
                    arcs.push(GraphArc { from: u, to: v });
                }
            }
        }
        if arcs.is_empty() {
            return Err(Error::Validation("graph has no edges".into()));
        }

        // connectivity
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for v in 0..n {
                if adjacent[u][v] && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        if let Some(u) = seen.iter().position(|s| !s) {
            return Err(Error::Validation(format!("graph is disconnected (vertex {} unreachable)", labels[u])));
        }

        let index = |u: usize, v: usize| arcs.binary_search(&GraphArc { from: u, to: v }).ok();
        let reverse = arcs
            .iter()
            .map(|a| index(a.to, a.from).expect("symmetry checked"))
            .collect();
        let arc_position = arcs
            .iter()
            .map(|a| {
                rotation[a.from]
                    .iter()
                    .position(|s| *s == Slot::Vertex(a.to))
                    .expect("arc built from rotation")
            })
            .collect();
        let boundary: Vec<usize> = (0..n).filter(|&u| tail_position[u].is_some()).collect();
        let mut boundary_index = vec![None; n];
        for (k, &u) in boundary.iter().enumerate() {
            boundary_index[u] = Some(k);
        }

        Ok(Self {
            labels,
            rotation,
            arcs,
            reverse,
            arc_position,
            tail_position,
            boundary,
            boundary_index,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.arcs.len() / 2
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn label(&self, u: usize) -> &str {
        &self.labels[u]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn rotation(&self, u: usize) -> &[Slot] {
        &self.rotation[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.rotation[u].len() - usize::from(self.tail_position[u].is_some())
    }

    pub fn arcs(&self) -> &[GraphArc] {
        &self.arcs
    }

    pub fn arc(&self, a: usize) -> GraphArc {
        self.arcs[a]
    }

    /// Index of the reversed arc.
    pub fn reverse(&self, a: usize) -> usize {
        self.reverse[a]
    }

    pub fn arc_index(&self, from: usize, to: usize) -> Option<usize> {
        self.arcs.binary_search(&GraphArc { from, to }).ok()
    }

    /// Position of `a.to` in the rotation at `a.from`.
    pub fn arc_position(&self, a: usize) -> usize {
        self.arc_position[a]
    }

    pub fn tail_position(&self, u: usize) -> Option<usize> {
        self.tail_position[u]
    }

    /// Boundary vertices in increasing vertex order.
    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    /// Index of `u` within [`Self::boundary`].
    pub fn boundary_index(&self, u: usize) -> Option<usize> {
        self.boundary_index[u]
    }

    /// The next arc along the facial walk, and whether a quay was crossed.
    pub fn successor(&self, a: usize) -> (usize, bool) {
        let GraphArc { from: u, to: v } = self.arcs[a];
        let rot = &self.rotation[v];
        let len = rot.len();
        let p = self.arc_position[self.reverse[a]];
        debug_assert_eq!(rot[p], Slot::Vertex(u));
        let (slot, quay) = match rot[(p + 1) % len] {
            Slot::Tail => (rot[(p + 2) % len], true),
            s => (s, false),
        };
        let Slot::Vertex(w) = slot else {
            unreachable!("at most one tail slot per vertex")
        };
        (self.arc_index(v, w).expect("rotation lists neighbors only"), quay)
    }

    /// The same graph with every tail slot removed.
    pub fn without_tails(&self) -> Self {
        let rotation = self
            .rotation
            .iter()
            .map(|r| r.iter().copied().filter(|s| *s != Slot::Tail).collect())
            .collect();
        Self::new(self.labels.clone(), rotation).expect("removing tails keeps a valid graph")
    }

    /// Renders the graph in the line format accepted by [`parse_rotation_graph`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (u, rot) in self.rotation.iter().enumerate() {
            out.push_str("vertex ");
            out.push_str(&self.labels[u]);
            out.push_str(" :");
            for s in rot {
                out.push(' ');
                match *s {
                    Slot::Tail => out.push('*'),
                    Slot::Vertex(v) => out.push_str(&self.labels[v]),
                }
            }
            out.push('\n');
        }
        out
    }
}

impl std::str::FromStr for RotationTailedGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_rotation_graph(s)
    }
}
