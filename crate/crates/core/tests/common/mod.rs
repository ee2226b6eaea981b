#![allow(dead_code)]

pub mod brute_dfs;

use cgspan_core::graph::{GraphDatabase, Label, LabeledGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Shape of a random database.
#[derive(Debug, Clone, Copy)]
pub struct Shape {
    pub graphs: (usize, usize),
    pub max_vertices: usize,
    pub vertex_labels: u32,
    pub edge_labels: u32,
    /// Extra edges on top of a spanning tree, as a fraction of the vertices.
    pub density: f64,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            graphs: (5, 10),
            max_vertices: 8,
            vertex_labels: 3,
            edge_labels: 2,
            density: 0.5,
        }
    }
}

/// Connected random graphs: a random tree plus a few extra edges.
pub fn random_db(seed: u64, shape: Shape) -> GraphDatabase {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = rng.gen_range(shape.graphs.0..=shape.graphs.1);
    let graphs = (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=shape.max_vertices);
            let mut g = LabeledGraph::new(0);
            for _ in 0..n {
                g.add_vertex(Label(rng.gen_range(0..shape.vertex_labels)));
            }
            for v in 1..n as u32 {
                let u = rng.gen_range(0..v);
                g.add_edge(u, v, Label(rng.gen_range(0..shape.edge_labels))).unwrap();
            }
            let extra = (shape.density * n as f64).round() as usize;
            for _ in 0..extra {
                let u = rng.gen_range(0..n as u32);
                let v = rng.gen_range(0..n as u32);
                if u != v && g.edge_between(u, v).is_none() {
                    g.add_edge(u, v, Label(rng.gen_range(0..shape.edge_labels))).unwrap();
                }
            }
            g
        })
        .collect();
    GraphDatabase::new(graphs)
}

/// Molecule-like graphs: skewed labels, mostly trees, some six-rings.
pub fn molecule_db(seed: u64, count: usize, size: (usize, usize)) -> GraphDatabase {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pick = |rng: &mut ChaCha8Rng| -> u32 {
        let x: f64 = rng.gen();
        if x < 0.7 { 0 } else if x < 0.85 { 1 } else if x < 0.95 { 2 } else { 3 }
    };
    let graphs = (0..count)
        .map(|_| {
            let n = rng.gen_range(size.0..=size.1);
            let mut g = LabeledGraph::new(0);
            let ring = rng.gen_bool(0.6);
            if ring {
                for _ in 0..6 { g.add_vertex(Label(0)); }
                for i in 0..6u32 { g.add_edge(i, (i + 1) % 6, Label(if i % 2 == 0 { 1 } else { 0 })).unwrap(); }
            } else {
                g.add_vertex(Label(0));
            }
            while g.vertex_count() < n {
                let v = g.add_vertex(Label(pick(&mut rng)));
                loop {
                    let u = rng.gen_range(0..v);
                    if g.degree(u) < 3 {
                        let l = if rng.gen_bool(0.15) { 1 } else { 0 };
                        g.add_edge(u, v, Label(l)).unwrap();
                        break;
                    }
                }
            }
            g
        })
        .collect();
    GraphDatabase::new(graphs)
}
