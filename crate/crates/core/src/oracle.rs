//! Brute-force reference for closedness, support and occurrence.
//!
//! Nothing here uses embedding lists or right-most growth: isomorphisms are
//! found by plain backtracking and extensions are tried from every vertex.

use std::collections::{BTreeSet, HashSet};

use crate::dfs::{min_dfs_code, DfsCode, DfsId};
use crate::error::ConfigError;
use crate::graph::{EdgeId, GraphDatabase, Label, LabeledGraph, VertexId};
use crate::gspan::mine_frequent;
use crate::miner::{mine, MinedPattern, MiningConfig, Mode};

/// Every subgraph isomorphism of `p` into `g` as a vertex map.
pub fn isomorphisms(p: &LabeledGraph, g: &LabeledGraph) -> Vec<Vec<VertexId>> {
    let n = p.vertex_count();
    if n == 0 {
        return Vec::new();
    }
    // visit pattern vertices so each one after the first has a mapped neighbor
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n as VertexId {
        if seen[s as usize] {
            continue;
        }
        seen[s as usize] = true;
        order.push(s);
        let mut i = order.len() - 1;
        while i < order.len() {
            for inc in p.neighbors(order[i]) {
                if !seen[inc.to as usize] {
                    seen[inc.to as usize] = true;
                    order.push(inc.to);
                }
            }
            i += 1;
        }
    }
    let mut out = Vec::new();
    let mut map = vec![VertexId::MAX; n];
    let mut used = vec![false; g.vertex_count()];
    extend(p, g, &order, 0, &mut map, &mut used, &mut out);
    out
}

fn extend(
    p: &LabeledGraph,
    g: &LabeledGraph,
    order: &[VertexId],
    k: usize,
    map: &mut Vec<VertexId>,
    used: &mut Vec<bool>,
    out: &mut Vec<Vec<VertexId>>,
) {
    if k == order.len() {
        out.push(map.clone());
        return;
    }
    let u = order[k];
    for c in 0..g.vertex_count() as VertexId {
        if used[c as usize] || g.vertex_label(c) != p.vertex_label(u) {
            continue;
        }
        let fits = p.neighbors(u).iter().all(|inc| {
            let w = map[inc.to as usize];
            w == VertexId::MAX
                || g.edge_between(c, w)
                    .is_some_and(|e| g.edge(e).label == p.edge(inc.edge).label)
        });
        if !fits {
            continue;
        }
        map[u as usize] = c;
        used[c as usize] = true;
        extend(p, g, order, k + 1, map, used, out);
        used[c as usize] = false;
        map[u as usize] = VertexId::MAX;
    }
}

/// `(graph id, isomorphism)` for every isomorphism of `p` into the database.
pub fn all_isomorphisms(p: &LabeledGraph, db: &GraphDatabase) -> Vec<(usize, Vec<VertexId>)> {
    db.graphs()
        .iter()
        .enumerate()
        .flat_map(|(gid, g)| isomorphisms(p, g).into_iter().map(move |m| (gid, m)))
        .collect()
}

/// Number of graphs containing the pattern.
pub fn brute_support(code: &DfsCode, db: &GraphDatabase) -> usize {
    let p = code.to_graph().expect("valid code");
    db.graphs().iter().filter(|g| !isomorphisms(&p, g).is_empty()).count()
}

/// Number of isomorphisms of the pattern into the database.
pub fn brute_occurrence(code: &DfsCode, db: &GraphDatabase) -> usize {
    let p = code.to_graph().expect("valid code");
    all_isomorphisms(&p, db).len()
}

type Image = (usize, Vec<EdgeId>);

fn image(p: &LabeledGraph, g: &LabeledGraph, gid: usize, m: &[VertexId]) -> Image {
    let mut edges: Vec<EdgeId> = p
        .edges()
        .iter()
        .map(|e| g.edge_between(m[e.u as usize], m[e.v as usize]).expect("isomorphism keeps edges"))
        .collect();
    edges.sort_unstable();
    (gid, edges)
}

fn images(code: &DfsCode, db: &GraphDatabase) -> BTreeSet<Image> {
    let p = code.to_graph().expect("valid code");
    all_isomorphisms(&p, db)
        .into_iter()
        .map(|(gid, m)| image(&p, db.graph(gid), gid, &m))
        .collect()
}

/// Whether every isomorphism of `parent` extends to one of `child`, where
/// `child` has exactly one more edge.
pub fn brute_equivalent_occurrence(parent: &DfsCode, child: &DfsCode, db: &GraphDatabase) -> bool {
    let child_images = images(child, db);
    let mut covered = HashSet::new();
    for (gid, edges) in &child_images {
        for k in 0..edges.len() {
            let mut rest = edges.clone();
            rest.remove(k);
            covered.insert((*gid, rest));
        }
    }
    images(parent, db).iter().all(|i| covered.contains(i))
}

/// Where a one-edge extension attaches to the pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Attachment {
    /// New edge between two pattern vertices.
    Closing { a: DfsId, b: DfsId, edge_label: Label },
    /// New vertex hanging off pattern vertex `at`.
    Pendant { at: DfsId, edge_label: Label, vertex_label: Label },
}

/// One kind of one-edge extension together with its isomorphisms.
#[derive(Debug, Clone)]
pub struct OracleExtension {
    pub attachment: Attachment,
    /// Minimum code of the extended pattern.
    pub child: DfsCode,
    /// Extended isomorphisms: pattern vertices in dfs order, then the new
    /// vertex for a pendant edge.
    pub embeddings: Vec<(usize, Vec<VertexId>)>,
}

/// Every one-edge extension of the pattern from any vertex, frequent or not.
pub fn all_extensions(code: &DfsCode, db: &GraphDatabase) -> Vec<OracleExtension> {
    let p = code.to_graph().expect("valid code");
    let mut found: std::collections::BTreeMap<Attachment, Vec<(usize, Vec<VertexId>)>> = Default::default();
    for (gid, m) in all_isomorphisms(&p, db) {
        let g = db.graph(gid);
        let inverse = |x: VertexId| m.iter().position(|&v| v == x);
        for a in 0..p.vertex_count() as VertexId {
            for inc in g.neighbors(m[a as usize]) {
                match inverse(inc.to) {
                    Some(b) => {
                        let b = b as VertexId;
                        if a < b && p.edge_between(a, b).is_none() {
                            found
                                .entry(Attachment::Closing {
                                    a,
                                    b,
                                    edge_label: g.edge(inc.edge).label,
                                })
                                .or_default()
                                .push((gid, m.clone()));
                        }
                    }
                    None => {
                        let mut ext = m.clone();
                        ext.push(inc.to);
                        found
                            .entry(Attachment::Pendant {
                                at: a,
                                edge_label: g.edge(inc.edge).label,
                                vertex_label: g.vertex_label(inc.to),
                            })
                            .or_default()
                            .push((gid, ext));
                    }
                }
            }
        }
    }
    found
        .into_iter()
        .map(|(attachment, embeddings)| {
            let mut q = p.clone();
            match attachment {
                Attachment::Closing { a, b, edge_label } => {
                    q.add_edge(a, b, edge_label).expect("new edge");
                }
                Attachment::Pendant {
                    at,
                    edge_label,
                    vertex_label,
                } => {
                    let v = q.add_vertex(vertex_label);
                    q.add_edge(at, v, edge_label).expect("new edge");
                }
            }
            OracleExtension {
                attachment,
                child: min_dfs_code(&q).expect("extension is connected"),
                embeddings,
            }
        })
        .collect()
}

/// Whether some one-edge supergraph occurs wherever `code` occurs.
pub fn is_closed(code: &DfsCode, db: &GraphDatabase) -> bool {
    let p = code.to_graph().expect("valid code");
    let mut common: Option<BTreeSet<DfsCode>> = None;
    let mut done = HashSet::new();
    for (gid, m) in all_isomorphisms(&p, db) {
        let g = db.graph(gid);
        let img = image(&p, g, gid, &m);
        if !done.insert(img.clone()) {
            continue;
        }
        let inside: HashSet<EdgeId> = img.1.iter().copied().collect();
        let mut here = BTreeSet::new();
        for &v in &m {
            for inc in g.neighbors(v) {
                if inside.contains(&inc.edge) {
                    continue;
                }
                let mut edges: Vec<EdgeId> = img.1.clone();
                edges.push(inc.edge);
                here.insert(canonical_of_edges(g, &edges));
            }
        }
        let next: BTreeSet<DfsCode> = match common {
            None => here,
            Some(c) => c.intersection(&here).cloned().collect(),
        };
        if next.is_empty() {
            return true;
        }
        common = Some(next);
    }
    common.is_none_or(|c| c.is_empty())
}

/// Minimum code of the subgraph of `g` formed by `edges`.
fn canonical_of_edges(g: &LabeledGraph, edges: &[EdgeId]) -> DfsCode {
    let mut ids: Vec<VertexId> = Vec::new();
    let local = |v: VertexId, ids: &mut Vec<VertexId>| match ids.iter().position(|&x| x == v) {
        Some(i) => i as VertexId,
        None => {
            ids.push(v);
            (ids.len() - 1) as VertexId
        }
    };
    let mut triples = Vec::with_capacity(edges.len());
    for &e in edges {
        let ed = g.edge(e);
        let a = local(ed.u, &mut ids);
        let b = local(ed.v, &mut ids);
        triples.push((a, b, ed.label));
    }
    let labels = ids.iter().map(|&v| g.vertex_label(v)).collect();
    let sub = LabeledGraph::from_parts(0, labels, triples).expect("subgraph of a simple graph");
    min_dfs_code(&sub).expect("connected subgraph")
}

/// Codes of the closed patterns among `frequent`.
pub fn filter_closed(frequent: &[MinedPattern], db: &GraphDatabase) -> BTreeSet<DfsCode> {
    frequent
        .iter()
        .filter(|p| is_closed(&p.code, db))
        .map(|p| p.code.clone())
        .collect()
}

/// Difference between a closed-mining run and the brute-force closed set.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyReport {
    /// Closed patterns the miner did not report.
    pub missing: Vec<DfsCode>,
    /// Reported patterns that are not closed.
    pub extra: Vec<DfsCode>,
    pub mined: usize,
    pub expected: usize,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

/// Mines with `cfg` (a closed mode) and compares against the oracle.
pub fn verify_run(db: &GraphDatabase, cfg: &MiningConfig) -> Result<VerifyReport, ConfigError> {
    if cfg.mode == Mode::Frequent {
        return Err(ConfigError::NotClosedMode(cfg.mode));
    }
    let mined: BTreeSet<DfsCode> = mine(db, cfg)?.patterns.into_iter().map(|p| p.code).collect();
    let freq_cfg = MiningConfig {
        mode: Mode::Frequent,
        ..cfg.clone()
    };
    let expected = filter_closed(&mine_frequent(db, &freq_cfg)?, db);
    Ok(VerifyReport {
        missing: expected.difference(&mined).cloned().collect(),
        extra: mined.difference(&expected).cloned().collect(),
        mined: mined.len(),
        expected: expected.len(),
    })
}
