//! Shared generators and independent oracles for the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use fqw_core::rotation_graph::Slot;
use fqw_core::{Coin, Complex64, RotationTailedGraph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `d` uniform in (0.05, 0.95), `omega = exp(i pi p/q)` with `q <= 12`,
/// `phi` on multiples of `pi/8`.
pub fn random_coin(rng: &mut ChaCha8Rng) -> Coin {
    let d = rng.random_range(0.05..0.95);
    let q: i32 = rng.random_range(1..=12);
    let p: i32 = rng.random_range(0..2 * q);
    let omega = Complex64::from_polar(1.0, PI * p as f64 / q as f64);
    let phi = PI * rng.random_range(0..16) as f64 / 8.0;
    Coin::new(d, omega, phi).expect("admissible coin")
}

/// A coin with `omega = 1` and random `d` in (0.05, 0.95), random `phi`.
pub fn random_unit_coin(rng: &mut ChaCha8Rng) -> Coin {
    let d = rng.random_range(0.05..0.95);
    let phi = PI * rng.random_range(0..16) as f64 / 8.0;
    Coin::new(d, Complex64::new(1.0, 0.0), phi).expect("admissible coin")
}

/// Connected simple graph on `n` vertices with at most `max_edges` edges,
/// as neighbour lists in random cyclic order.
pub fn random_rotation(rng: &mut ChaCha8Rng, n: usize, max_edges: usize) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for k in 1..n {
        let u = order[k];
        let v = order[rng.random_range(0..k)];
        adj[u].push(v);
        adj[v].push(u);
    }
    let max_edges = max_edges.min(n * (n - 1) / 2);
    let target = rng.random_range(n - 1..=max_edges);
    let mut edges = n - 1;
    let mut attempts = 0;
    while edges < target && attempts < 200 {
        attempts += 1;
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u == v || adj[u].contains(&v) {
            continue;
        }
        adj[u].push(v);
        adj[v].push(u);
        edges += 1;
    }
    for a in &mut adj {
        a.shuffle(rng);
    }
    adj
}

fn build(adj: &[Vec<usize>], tails: &[Option<usize>]) -> RotationTailedGraph {
    let labels = (0..adj.len()).map(|u| u.to_string()).collect();
    let rotation = adj
        .iter()
        .zip(tails)
        .map(|(nbrs, tail)| {
            let mut slots: Vec<Slot> = nbrs.iter().map(|&v| Slot::Vertex(v)).collect();
            if let Some(p) = tail {
                slots.insert(*p, Slot::Tail);
            }
            slots
        })
        .collect();
    RotationTailedGraph::new(labels, rotation).expect("generated graph is valid")
}

/// Random graph with `2..=max_vertices` vertices and tails at random slots on a
/// random subset of vertices.
pub fn random_graph(seed: u64, max_vertices: usize, max_edges: usize) -> RotationTailedGraph {
    let mut rng = rng(seed);
    let n = rng.random_range(2..=max_vertices);
    let adj = random_rotation(&mut rng, n, max_edges);
    let tails: Vec<Option<usize>> = adj
        .iter()
        .map(|nbrs| rng.random_bool(0.4).then(|| rng.random_range(0..=nbrs.len())))
        .collect();
    build(&adj, &tails)
}

/// Facial successor on a tail-free rotation, computed from the neighbour lists.
fn next_arc(adj: &[Vec<usize>], (u, v): (usize, usize)) -> (usize, usize) {
    let rot = &adj[v];
    let p = rot.iter().position(|&x| x == u).expect("symmetric");
    (v, rot[(p + 1) % rot.len()])
}

/// Facial walks of a tail-free rotation as arc lists.
pub fn oracle_faces(adj: &[Vec<usize>]) -> Vec<Vec<(usize, usize)>> {
    let arcs: Vec<(usize, usize)> = adj
        .iter()
        .enumerate()
        .flat_map(|(u, nbrs)| nbrs.iter().map(move |&v| (u, v)))
        .collect();
    let mut seen = std::collections::HashSet::new();
    let mut faces = Vec::new();
    for &start in &arcs {
        if seen.contains(&start) {
            continue;
        }
        let mut walk = Vec::new();
        let mut a = start;
        while seen.insert(a) {
            walk.push(a);
            a = next_arc(adj, a);
        }
        faces.push(walk);
    }
    faces
}

/// Graph with tails only on one face of the tail-free rotation, so that it has
/// exactly one external face. Each chosen arc `u -> v` of that face gets a
/// tail at `v` right after `u`.
pub fn random_single_face_graph(seed: u64, max_vertices: usize, max_edges: usize) -> RotationTailedGraph {
    let mut rng = rng(seed);
    let n = rng.random_range(2..=max_vertices);
    let adj = random_rotation(&mut rng, n, max_edges);
    let faces = oracle_faces(&adj);
    let face = &faces[rng.random_range(0..faces.len())];
    let mut tails = vec![None; n];
    let mut chosen = false;
    for &(u, v) in face {
        if tails[v].is_none() && (!chosen || rng.random_bool(0.5)) {
            let p = adj[v].iter().position(|&x| x == u).unwrap();
            tails[v] = Some(p + 1);
            chosen = true;
        }
    }
    build(&adj, &tails)
}

/// Neighbour lists with tails removed.
pub fn adjacency(g: &RotationTailedGraph) -> Vec<Vec<usize>> {
    (0..g.vertex_count())
        .map(|u| {
            g.rotation(u)
                .iter()
                .filter_map(|s| match s {
                    Slot::Vertex(v) => Some(*v),
                    Slot::Tail => None,
                })
                .collect()
        })
        .collect()
}

/// Genus from Euler's formula with independently traced faces.
pub fn oracle_genus(g: &RotationTailedGraph) -> i64 {
    let adj = adjacency(g);
    let f = oracle_faces(&adj).len() as i64;
    let v = g.vertex_count() as i64;
    let e = g.edge_count() as i64;
    (2 - v + e - f) / 2
}

/// The three-cycle with a single tail.
pub const TRIANGLE_ONE_TAIL: &str = "vertex 0 : 1 * 2\nvertex 1 : 2 0\nvertex 2 : 0 1\n";
