//! Inverse of the face Gram matrix through weighted spanning subgraphs of the
//! pointed dual, by exhaustive enumeration.
//!
//! The pointed dual has one vertex per face, the external face acting as the
//! sink. Faces sharing edges are joined by one ordinary edge of weight
//! `-2d m`, and every non-sink vertex carries a potential loop of weight
//! `2(1+d) deg`. The enumeration uses no linear algebra.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::blowup::BlowUpGraph;
use crate::coin::Coin;
use crate::error::{Error, Result};
use crate::linalg::inner;
use crate::rotation_graph::{dual_graph, DualGraph, FacialWalk};
use crate::scattering::scattering_matrix;
use crate::stationary::{external_facial_function, internal_facial_function, RESONANCE_TOL};

/// Largest edge count accepted by the brute-force enumeration.
pub const MAX_ENUMERATED_EDGES: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualEdgeKind {
    Ordinary,
    PotentialLoop,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DualEdge {
    pub ends: (usize, usize),
    pub multiplicity: usize,
    pub weight: f64,
    pub kind: DualEdgeKind,
}

/// Vertices `0..n-1` are the internal faces in face order; vertex `n-1` is the sink.
#[derive(Clone, Debug, PartialEq)]
pub struct PointedDual {
    faces: Vec<usize>,
    edges: Vec<DualEdge>,
}

impl PointedDual {
    pub fn vertex_count(&self) -> usize {
        self.faces.len()
    }

    pub fn sink(&self) -> usize {
        self.faces.len() - 1
    }

    /// Face index behind a vertex.
    pub fn face(&self, vertex: usize) -> usize {
        self.faces[vertex]
    }

    pub fn edges(&self) -> &[DualEdge] {
        &self.edges
    }
}

/// Builds the pointed dual of an embedding with exactly one external face at `omega = 1`.
pub fn pointed_dual(dual: &DualGraph, coin: &Coin) -> Result<PointedDual> {
    let external = dual.external_faces();
    if external.len() != 1 {
        return Err(Error::Precondition(format!(
            "the pointed dual needs exactly one external face, found {}",
            external.len()
        )));
    }
    if (coin.omega() - 1.0).norm() > RESONANCE_TOL {
        return Err(Error::Precondition("the pointed dual is defined for omega = 1".into()));
    }
    let d = coin.d_real();
    let mut faces = dual.internal_faces();
    faces.push(external[0]);
    let n = faces.len();

    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let m = dual.multiplicity(faces[i], faces[j]);
            if m > 0 {
                edges.push(DualEdge {
                    ends: (i, j),
                    multiplicity: m,
                    weight: -2.0 * d * m as f64,
                    kind: DualEdgeKind::Ordinary,
                });
            }
        }
    }
    for (i, &f) in faces.iter().enumerate().take(n - 1) {
        let deg = dual.degree(f);
        if deg != dual.faces()[f].len() {
            return Err(Error::Internal(format!(
                "dual degree {deg} differs from face length {}",
                dual.faces()[f].len()
            )));
        }
        edges.push(DualEdge {
            ends: (i, i),
            multiplicity: 1,
            weight: 2.0 * (1.0 + d) * deg as f64,
            kind: DualEdgeKind::PotentialLoop,
        });
    }
    Ok(PointedDual { faces, edges })
}

/// One member of a family: chosen edge indices and the product of their weights.
#[derive(Clone, Debug, PartialEq)]
pub struct Subgraph {
    pub edges: Vec<usize>,
    pub weight: f64,
    pub components: usize,
    pub loops: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Sink component a tree, every other component a potential tree.
    Rooted,
    /// Two trees, one with the sink and one holding both `f` and `g`;
    /// every other component a potential tree.
    Paired { f: usize, g: usize },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SubgraphFamilyWeight {
    pub family: Family,
    pub weight: f64,
    pub count: usize,
}

struct Layout {
    root: Vec<usize>,
    loops: Vec<usize>,
    components: usize,
    loop_total: usize,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Components of the edge subset `mask`, or `None` when its ordinary
/// edges close a cycle.
fn classify(pd: &PointedDual, mask: u64) -> Option<Layout> {
    let n = pd.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut loops_at = vec![0usize; n];
    for (k, e) in pd.edges.iter().enumerate() {
        if mask >> k & 1 == 0 {
            continue;
        }
        match e.kind {
            DualEdgeKind::PotentialLoop => loops_at[e.ends.0] += 1,
            DualEdgeKind::Ordinary => {
                let (a, b) = (find(&mut parent, e.ends.0), find(&mut parent, e.ends.1));
                if a == b {
                    return None;
                }
                parent[a] = b;
            }
        }
    }
    let root: Vec<usize> = (0..n).map(|v| find(&mut parent, v)).collect();
    let mut loops = vec![0usize; n];
    let mut loop_total = 0;
    for v in 0..n {
        loops[root[v]] += loops_at[v];
        loop_total += loops_at[v];
    }
    let components = (0..n).filter(|&v| root[v] == v).count();
    Some(Layout {
        root,
        loops,
        components,
        loop_total,
    })
}

/// Roots of the components without a loop, provided every other component
/// has exactly one.
fn loopless_roots(layout: &Layout) -> Option<Vec<usize>> {
    let mut free = Vec::new();
    for (v, &r) in layout.root.iter().enumerate() {
        if r != v {
            continue;
        }
        match layout.loops[v] {
            0 => free.push(v),
            1 => {}
            _ => return None,
        }
    }
    Some(free)
}

fn member(pd: &PointedDual, mask: u64, layout: &Layout) -> Subgraph {
    let edges: Vec<usize> = (0..pd.edges.len()).filter(|k| mask >> k & 1 == 1).collect();
    Subgraph {
        weight: edges.iter().map(|&k| pd.edges[k].weight).product(),
        edges,
        components: layout.components,
        loops: layout.loop_total,
    }
}

fn check_size(pd: &PointedDual) -> Result<()> {
    if pd.edges.len() > MAX_ENUMERATED_EDGES {
        return Err(Error::TooLarge {
            edges: pd.edges.len(),
            limit: MAX_ENUMERATED_EDGES,
        });
    }
    Ok(())
}

fn in_family(pd: &PointedDual, layout: &Layout, family: Family) -> bool {
    let Some(free) = loopless_roots(layout) else {
        return false;
    };
    let sink = layout.root[pd.sink()];
    match family {
        Family::Rooted => free == [sink],
        Family::Paired { f, g } => {
            let t = layout.root[f];
            t == layout.root[g] && t != sink && free.len() == 2 && free.contains(&t) && free.contains(&sink)
        }
    }
}

/// Every member of `family`, in increasing bitmask order of the edge subset.
pub fn enumerate_family(pd: &PointedDual, family: Family) -> Result<Vec<Subgraph>> {
    check_size(pd)?;
    if let Family::Paired { f, g } = family {
        for v in [f, g] {
            if v >= pd.sink() {
                return Err(Error::Precondition(format!(
                    "vertex {v} is not an internal face of the pointed dual"
                )));
            }
        }
    }
    let mut out = Vec::new();
    for mask in 0..1u64 << pd.edges.len() {
        if let Some(layout) = classify(pd, mask) {
            if in_family(pd, &layout, family) {
                out.push(member(pd, mask, &layout));
            }
        }
    }
    Ok(out)
}

pub fn enumerate_family_h1(pd: &PointedDual) -> Result<Vec<Subgraph>> {
    enumerate_family(pd, Family::Rooted)
}

pub fn enumerate_family_h2(pd: &PointedDual, f: usize, g: usize) -> Result<Vec<Subgraph>> {
    enumerate_family(pd, Family::Paired { f, g })
}

/// Total weight and size of a family.
pub fn iota(pd: &PointedDual, family: Family) -> Result<SubgraphFamilyWeight> {
    let members = enumerate_family(pd, family)?;
    Ok(SubgraphFamilyWeight {
        family,
        weight: members.iter().map(|m| m.weight).sum(),
        count: members.len(),
    })
}

/// Weights of the rooted family and of every paired family, gathered in one pass.
#[derive(Clone, Debug, PartialEq)]
pub struct IotaTable {
    pub rooted: f64,
    pub rooted_count: usize,
    /// Indexed by internal vertices of the pointed dual.
    pub paired: DMatrix<f64>,
    pub paired_count: DMatrix<usize>,
}

pub fn iota_table(pd: &PointedDual) -> Result<IotaTable> {
    check_size(pd)?;
    let k = pd.sink();
    let mut table = IotaTable {
        rooted: 0.0,
        rooted_count: 0,
        paired: DMatrix::zeros(k, k),
        paired_count: DMatrix::zeros(k, k),
    };
    for mask in 0..1u64 << pd.edges.len() {
        let Some(layout) = classify(pd, mask) else {
            continue;
        };
        let Some(free) = loopless_roots(&layout) else {
            continue;
        };
        let sink = layout.root[pd.sink()];
        let weight: f64 = (0..pd.edges.len())
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| pd.edges[b].weight)
            .product();
        if free == [sink] {
            table.rooted += weight;
            table.rooted_count += 1;
        } else if free.len() == 2 && free.contains(&sink) {
            let t = if free[0] == sink { free[1] } else { free[0] };
            let members: Vec<usize> = (0..k).filter(|&v| layout.root[v] == t).collect();
            for &f in &members {
                for &g in &members {
                    table.paired[(f, g)] += weight;
                    table.paired_count[(f, g)] += 1;
                }
            }
        }
    }
    Ok(table)
}

/// `paired(f, g) / rooted` for all internal vertex pairs.
pub fn gram_inverse_combinatorial(pd: &PointedDual) -> Result<DMatrix<f64>> {
    let t = iota_table(pd)?;
    if t.rooted == 0.0 || !t.rooted.is_finite() {
        return Err(Error::Domain(format!(
            "rooted family weight is {}; the ratio is undefined",
            t.rooted
        )));
    }
    Ok(t.paired / t.rooted)
}

/// Stationary state from the external function and the combinatorial
/// inverse Gram matrix: `psi = g_ex - sum_{l,m} Minv[l,m] <g_m, g_ex> g_l`.
pub fn stationary_via_forests(
    bu: &BlowUpGraph,
    faces: &[FacialWalk],
    coin: &Coin,
    alpha: &[Complex64],
) -> Result<Vec<Complex64>> {
    let g = bu.graph();
    let dual = dual_graph(g, faces);
    let pd = pointed_dual(&dual, coin)?;
    let minv = gram_inverse_combinatorial(&pd)?;
    let beta = scattering_matrix(bu, faces, coin)?.apply(alpha)?;
    let ext = external_facial_function(bu, &faces[pd.face(pd.sink())], coin, alpha, &beta)?;
    let parts = (0..pd.sink())
        .map(|v| internal_facial_function(bu, &faces[pd.face(v)], coin))
        .collect::<Result<Vec<_>>>()?;
    let rhs: Vec<Complex64> = parts.iter().map(|x| inner(&x.values, &ext.values)).collect();
    let mut psi = ext.values.clone();
    for (l, x) in parts.iter().enumerate() {
        let c: Complex64 = (0..parts.len()).map(|m| rhs[m] * minv[(l, m)]).sum();
        for (p, v) in psi.iter_mut().zip(&x.values) {
            *p -= c * v;
        }
    }
    Ok(psi)
}
