//! Brute-force DFS codes: every discovery order, every DFS tree.

use std::collections::BTreeSet;

use cgspan_core::dfs::{DfsCode, EdgeTuple};
use cgspan_core::graph::{Label, LabeledGraph};

/// Every DFS code of `g`: all discovery orders and all DFS trees for them.
pub fn all_codes(g: &LabeledGraph) -> BTreeSet<DfsCode> {
    let n = g.vertex_count();
    let mut out = BTreeSet::new();
    let mut order = Vec::new();
    let mut parent = Vec::new();
    let mut used = vec![false; n];
    for root in 0..n as u32 {
        order.push(root);
        used[root as usize] = true;
        parent.push(usize::MAX);
        grow(g, &mut order, &mut parent, &mut used, &mut out);
        order.pop();
        parent.pop();
        used[root as usize] = false;
    }
    out
}

fn grow(
    g: &LabeledGraph,
    order: &mut Vec<u32>,
    parent: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut BTreeSet<DfsCode>,
) {
    let n = g.vertex_count();
    if order.len() == n {
        out.insert(code_for(g, order, parent));
        return;
    }
    // stack = path from the root to the last discovered vertex
    let mut stack = vec![order.len() - 1];
    while parent[*stack.last().unwrap()] != usize::MAX {
        stack.push(parent[*stack.last().unwrap()]);
    }
    // walk up the stack; a vertex can be popped only once it has no new neighbour
    for &p in &stack {
        let pv = order[p];
        let mut fresh = false;
        for inc in g.neighbors(pv) {
            if used[inc.to as usize] {
                continue;
            }
            fresh = true;
            order.push(inc.to);
            parent.push(p);
            used[inc.to as usize] = true;
            grow(g, order, parent, used, out);
            used[inc.to as usize] = false;
            parent.pop();
            order.pop();
        }
        if fresh {
            return;
        }
    }
}

fn code_for(g: &LabeledGraph, order: &[u32], parent: &[usize]) -> DfsCode {
    let id = |v: u32| order.iter().position(|&x| x == v).unwrap() as u32;
    let mut tuples: Vec<EdgeTuple> = g
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = (id(e.u), id(e.v));
            let (lo, hi) = (a.min(b), a.max(b));
            let tree = parent[hi as usize] == lo as usize;
            let (from, to) = if tree { (lo, hi) } else { (hi, lo) };
            EdgeTuple::new(from, to, g.vertex_label(order[from as usize]), e.label, g.vertex_label(order[to as usize]))
        })
        .collect();
    tuples.sort_by(gspan_cmp);
    DfsCode::from_tuples(tuples)
}

/// The textbook edge order, written out case by case.
fn gspan_cmp(a: &EdgeTuple, b: &EdgeTuple) -> std::cmp::Ordering {
    use std::cmp::Ordering::*;
    if gspan_less(a, b) {
        Less
    } else if gspan_less(b, a) {
        Greater
    } else {
        Equal
    }
}

pub fn gspan_less(a: &EdgeTuple, b: &EdgeTuple) -> bool {
    let la = (a.from_label, a.edge_label, a.to_label);
    let lb = (b.from_label, b.edge_label, b.to_label);
    match (a.from < a.to, b.from < b.to) {
        (true, true) => a.to < b.to || (a.to == b.to && (a.from > b.from || (a.from == b.from && la < lb))),
        (false, false) => a.from < b.from || (a.from == b.from && (a.to < b.to || (a.to == b.to && (a.edge_label, a.from_label, a.to_label) < (b.edge_label, b.from_label, b.to_label)))),
        (false, true) => a.from < b.to,
        (true, false) => a.to <= b.from,
    }
}

/// Connected edge sets with at most `max_edges` edges, one per unlabelled
/// isomorphism class.
pub fn shapes(max_edges: usize) -> Vec<(usize, Vec<(u32, u32)>)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for n in 2..=max_edges + 1 {
        let pairs: Vec<(u32, u32)> = (0..n as u32).flat_map(|a| (a + 1..n as u32).map(move |b| (a, b))).collect();
        for mask in 1u32..(1 << pairs.len()) {
            if mask.count_ones() as usize > max_edges {
                continue;
            }
            let edges: Vec<(u32, u32)> = (0..pairs.len()).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
            let g = build(n, &edges, 0, 0);
            if !g.is_connected() {
                continue;
            }
            let key = permutations(n)
                .map(|p| {
                    let mut e: Vec<(u32, u32)> = edges
                        .iter()
                        .map(|&(a, b)| {
                            let (x, y) = (p[a as usize], p[b as usize]);
                            (x.min(y), x.max(y))
                        })
                        .collect();
                    e.sort();
                    e
                })
                .min()
                .unwrap();
            if seen.insert((n, key)) {
                out.push((n, edges));
            }
        }
    }
    out
}

fn permutations(n: usize) -> impl Iterator<Item = Vec<u32>> {
    let mut all = vec![Vec::new()];
    for k in 0..n as u32 {
        all = all
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                (0..=p.len()).map(move |i| {
                    let mut q = p.clone();
                    q.insert(i, k);
                    q
                })
            })
            .collect();
    }
    all.into_iter()
}

pub fn build(n: usize, edges: &[(u32, u32)], vmask: u32, emask: u32) -> LabeledGraph {
    let mut g = LabeledGraph::new(0);
    for v in 0..n {
        g.add_vertex(Label(vmask >> v & 1));
    }
    for (i, &(a, b)) in edges.iter().enumerate() {
        g.add_edge(a, b, Label(emask >> i & 1)).unwrap();
    }
    g
}
