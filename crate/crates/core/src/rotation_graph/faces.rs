use super::RotationTailedGraph;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceKind {
    Internal,
    External,
}

/// A quay crossed by a facial walk: the walk passes the tail slot of
/// `vertex` right after its arc number `after`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuayVisit {
    pub after: usize,
    pub vertex: usize,
}

/// One orbit of the facial successor map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacialWalk {
    arcs: Vec<usize>,
    quays: Vec<QuayVisit>,
}

impl FacialWalk {
    /// Arc indices of the underlying graph in traversal order.
    pub fn arcs(&self) -> &[usize] {
        &self.arcs
    }

    /// Quays in traversal order.
    pub fn quays(&self) -> &[QuayVisit] {
        &self.quays
    }

    pub fn kind(&self) -> FaceKind {
        if self.quays.is_empty() {
            FaceKind::Internal
        } else {
            FaceKind::External
        }
    }

    pub fn is_external(&self) -> bool {
        !self.quays.is_empty()
    }

    /// Number of graph arcs on the walk.
    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Orbit size when each quay crossing is counted as one extra step.
    pub fn orbit_size(&self) -> usize {
        self.arcs.len() + self.quays.len()
    }

    /// Arc counts between consecutive quays, cyclically. Empty for internal walks.
    pub fn gaps(&self) -> Vec<usize> {
        let s = self.arcs.len();
        let k = self.quays.len();
        (0..k)
            .map(|i| {
                let here = self.quays[i].after;
                let next = self.quays[(i + 1) % k].after;
                (next + s - here - 1) % s + 1
            })
            .collect()
    }

    /// Checks that consecutive arcs follow the facial successor of `g`.
    pub fn is_walk_of(&self, g: &RotationTailedGraph) -> bool {
        if self.arcs.is_empty() || self.arcs.iter().any(|&a| a >= g.arc_count()) {
            return false;
        }
        let mut quays = Vec::new();
        for (j, &a) in self.arcs.iter().enumerate() {
            let (next, quay) = g.successor(a);
            if next != self.arcs[(j + 1) % self.arcs.len()] {
                return false;
            }
            if quay {
                quays.push(QuayVisit {
                    after: j,
                    vertex: g.arc(a).to,
                });
            }
        }
        quays == self.quays
    }
}

/// Decomposes the arcs of `g` into facial walks.
///
/// Each walk starts at its smallest arc index and walks are sorted by that arc.
pub fn trace_faces(g: &RotationTailedGraph) -> Vec<FacialWalk> {
    let mut seen = vec![false; g.arc_count()];
    let mut faces = Vec::new();
    for start in 0..g.arc_count() {
        if seen[start] {
            continue;
        }
        let mut arcs = Vec::new();
        let mut quays = Vec::new();
        let mut a = start;
        loop {
            seen[a] = true;
            arcs.push(a);
            let (next, quay) = g.successor(a);
            if quay {
                quays.push(QuayVisit {
                    after: arcs.len() - 1,
                    vertex: g.arc(a).to,
                });
            }
            a = next;
            if a == start {
                break;
            }
        }
        faces.push(FacialWalk { arcs, quays });
    }
    faces
}

/// Genus of the closed surface, computed on the tail-free rotation.
pub fn genus(g: &RotationTailedGraph) -> Result<usize> {
    let closed = g.without_tails();
    let r = trace_faces(&closed).len() as i64;
    let b1 = g.edge_count() as i64 - g.vertex_count() as i64 + 1;
    let twice = b1 - r + 1;
    if twice < 0 || twice % 2 != 0 {
        return Err(Error::Internal(format!(
            "Euler count b1 - r + 1 = {twice} is not a non-negative even number"
        )));
    }
    Ok((twice / 2) as usize)
}
