use super::{FacialWalk, RotationTailedGraph};

/// Faces of an embedding with their shared-edge multiplicities.
///
/// `multiplicity(f, g)` counts arcs `e` on `f` whose reverse lies on `g`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualGraph {
    faces: Vec<FacialWalk>,
    face_of_arc: Vec<usize>,
    multiplicity: Vec<Vec<usize>>,
}

pub fn dual_graph(g: &RotationTailedGraph, faces: &[FacialWalk]) -> DualGraph {
    let mut face_of_arc = vec![usize::MAX; g.arc_count()];
    for (i, f) in faces.iter().enumerate() {
        for &a in f.arcs() {
            face_of_arc[a] = i;
        }
    }
    let mut multiplicity = vec![vec![0; faces.len()]; faces.len()];
    for (i, f) in faces.iter().enumerate() {
        for &a in f.arcs() {
            multiplicity[i][face_of_arc[g.reverse(a)]] += 1;
        }
    }
    DualGraph {
        faces: faces.to_vec(),
        face_of_arc,
        multiplicity,
    }
}

impl DualGraph {
    pub fn faces(&self) -> &[FacialWalk] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn face_of_arc(&self, a: usize) -> usize {
        self.face_of_arc[a]
    }

    pub fn multiplicity(&self, f: usize, g: usize) -> usize {
        self.multiplicity[f][g]
    }

    /// Number of edges traversed by `f` in both directions.
    pub fn self_multiplicity(&self, f: usize) -> usize {
        self.multiplicity[f][f]
    }

    /// Degree of `f` in the dual graph, self-loops counted once per arc.
    pub fn degree(&self, f: usize) -> usize {
        self.multiplicity[f].iter().sum()
    }

    pub fn external_faces(&self) -> Vec<usize> {
        (0..self.faces.len()).filter(|&i| self.faces[i].is_external()).collect()
    }

    pub fn internal_faces(&self) -> Vec<usize> {
        (0..self.faces.len()).filter(|&i| !self.faces[i].is_external()).collect()
    }
}
