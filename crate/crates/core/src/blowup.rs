//! The blow-up digraph: each vertex becomes a directed island cycle that
//! follows its rotation, and every arc of the graph becomes a bridge between
//! islands. Tails are not materialized; only their attachment points are kept.
//!
//! Indexing: the blow-up vertex for slot `p` of vertex `u` has index
//! `offset(u) + p`, and island arc `k` leaves blow-up vertex `k`. Bridges keep
//! the arc index of the graph. State vectors list islands first, then bridges.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::rotation_graph::{FacialWalk, RotationTailedGraph, Slot};

/// An arc of the blow-up graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuArc {
    Island(usize),
    Bridge(usize),
}

/// A blow-up vertex: slot `position` of the rotation at `vertex`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuVertex {
    pub vertex: usize,
    pub position: usize,
}

/// The pair of island arcs flanking a tail attachment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuayPair {
    /// Boundary vertex of the graph.
    pub vertex: usize,
    /// Blow-up vertex where the tail attaches (the pier).
    pub pier: usize,
    /// Island arc ending at the pier.
    pub entering: usize,
    /// Island arc starting at the pier.
    pub leaving: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BlowUpGraph {
    graph: RotationTailedGraph,
    offset: Vec<usize>,
    vertices: Vec<BuVertex>,
    quays: Vec<QuayPair>,
}

pub fn blow_up(g: &RotationTailedGraph) -> BlowUpGraph {
    let mut offset = Vec::with_capacity(g.vertex_count() + 1);
    let mut vertices = Vec::new();
    offset.push(0);
    for u in 0..g.vertex_count() {
        for position in 0..g.rotation(u).len() {
            vertices.push(BuVertex { vertex: u, position });
        }
        offset.push(vertices.len());
    }
    let quays = g
        .boundary()
        .iter()
        .map(|&u| {
            let len = g.rotation(u).len();
            let p = g.tail_position(u).expect("boundary vertex has a tail");
            QuayPair {
                vertex: u,
                pier: offset[u] + p,
                entering: offset[u] + (p + len - 1) % len,
                leaving: offset[u] + p,
            }
        })
        .collect();
    BlowUpGraph {
        graph: g.clone(),
        offset,
        vertices,
        quays,
    }
}

impl BlowUpGraph {
    pub fn graph(&self) -> &RotationTailedGraph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, k: usize) -> BuVertex {
        self.vertices[k]
    }

    pub fn island_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn bridge_count(&self) -> usize {
        self.graph.arc_count()
    }

    /// Length of a state vector over the internal arcs.
    pub fn arc_count(&self) -> usize {
        self.island_count() + self.bridge_count()
    }

    /// Island arcs of vertex `u` as a range of island indices.
    pub fn island(&self, u: usize) -> std::ops::Range<usize> {
        self.offset[u]..self.offset[u + 1]
    }

    /// Island arc leaving slot `position` of vertex `u`.
    pub fn island_arc(&self, u: usize, position: usize) -> usize {
        let len = self.offset[u + 1] - self.offset[u];
        self.offset[u] + position % len
    }

    /// The island arc following island arc `k` around its cycle.
    pub fn next_island_arc(&self, k: usize) -> usize {
        let BuVertex { vertex, position } = self.vertices[k];
        self.island_arc(vertex, position + 1)
    }

    pub fn state_index(&self, arc: BuArc) -> usize {
        match arc {
            BuArc::Island(k) => k,
            BuArc::Bridge(a) => self.island_count() + a,
        }
    }

    pub fn arc_at(&self, index: usize) -> BuArc {
        if index < self.island_count() {
            BuArc::Island(index)
        } else {
            BuArc::Bridge(index - self.island_count())
        }
    }

    /// Blow-up vertices at the two ends of `arc`.
    pub fn endpoints(&self, arc: BuArc) -> (usize, usize) {
        match arc {
            BuArc::Island(k) => (k, self.next_island_arc(k)),
            BuArc::Bridge(a) => {
                let e = self.graph.arc(a);
                (
                    self.offset[e.from] + self.graph.arc_position(a),
                    self.offset[e.to] + self.graph.arc_position(self.graph.reverse(a)),
                )
            }
        }
    }

    /// The bridge leaving blow-up vertex `k`, if `k` is not a pier.
    pub fn bridge_at(&self, k: usize) -> Option<usize> {
        let BuVertex { vertex, position } = self.vertices[k];
        match self.graph.rotation(vertex)[position] {
            Slot::Vertex(v) => self.graph.arc_index(vertex, v),
            Slot::Tail => None,
        }
    }

    /// Island arc leaving the blow-up vertex where bridge `a` ends.
    pub fn island_after_bridge(&self, a: usize) -> usize {
        self.endpoints(BuArc::Bridge(a)).1
    }

    /// Island arc ending at the blow-up vertex where bridge `a` starts.
    pub fn island_before_bridge(&self, a: usize) -> usize {
        let start = self.endpoints(BuArc::Bridge(a)).0;
        let BuVertex { vertex, position } = self.vertices[start];
        let len = self.offset[vertex + 1] - self.offset[vertex];
        self.island_arc(vertex, position + len - 1)
    }

    /// Quay pairs in boundary order.
    pub fn quays(&self) -> &[QuayPair] {
        &self.quays
    }

    /// Closed walk of blow-up arcs traced by a facial walk of the graph.
    ///
    /// Each bridge is followed by the island arc after it; at a quay the
    /// island arc leaving the pier follows as well.
    pub fn face_arcs(&self, f: &FacialWalk) -> Result<Vec<BuArc>> {
        if !f.is_walk_of(&self.graph) {
            return Err(Error::Precondition(
                "facial walk does not belong to this graph".into(),
            ));
        }
        let mut out = Vec::with_capacity(f.len() * 2 + f.quays().len());
        let mut quays = f.quays().iter().peekable();
        for (j, &a) in f.arcs().iter().enumerate() {
            out.push(BuArc::Bridge(a));
            let island = self.island_after_bridge(a);
            out.push(BuArc::Island(island));
            if quays.peek().is_some_and(|q| q.after == j) {
                quays.next();
                out.push(BuArc::Island(self.next_island_arc(island)));
            }
        }
        Ok(out)
    }

    /// In- and out-degree of every blow-up vertex, counting tail attachments.
    pub fn degrees(&self) -> Vec<(usize, usize)> {
        let mut deg = vec![(0, 0); self.vertex_count()];
        for i in 0..self.arc_count() {
            let (from, to) = self.endpoints(self.arc_at(i));
            deg[from].1 += 1;
            deg[to].0 += 1;
        }
        for q in &self.quays {
            deg[q.pier].0 += 1;
            deg[q.pier].1 += 1;
        }
        deg
    }

    /// `(label,slot)`, with `*` for a pier.
    pub fn vertex_name(&self, k: usize) -> String {
        let BuVertex { vertex, position } = self.vertices[k];
        let slot = match self.graph.rotation(vertex)[position] {
            Slot::Vertex(v) => self.graph.label(v),
            Slot::Tail => "*",
        };
        format!("({},{})", self.graph.label(vertex), slot)
    }

    /// Line-oriented listing of every arc, quay and pier.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for i in 0..self.arc_count() {
            let arc = self.arc_at(i);
            let (from, to) = self.endpoints(arc);
            let (kind, index) = match arc {
                BuArc::Island(k) => ("island", k),
                BuArc::Bridge(a) => ("bridge", a),
            };
            let _ = writeln!(
                out,
                "{kind} {index} : {} -> {}",
                self.vertex_name(from),
                self.vertex_name(to)
            );
        }
        for (k, q) in self.quays.iter().enumerate() {
            let _ = writeln!(
                out,
                "quay {k} : {} entering island {} leaving island {}",
                self.graph.label(q.vertex),
                q.entering,
                q.leaving
            );
        }
        for (k, q) in self.quays.iter().enumerate() {
            let _ = writeln!(out, "pier {k} : {}", self.vertex_name(q.pier));
        }
        out
    }
}
