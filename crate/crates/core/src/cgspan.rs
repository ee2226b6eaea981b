//! Closed subgraph mining: the closed-graphs hash table, early termination,
//! and early termination failure detection through a trie of DFS codes.

use std::cell::OnceCell;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::dfs::{min_dfs_code, DfsCode, DfsId, EdgeTuple};
use crate::embedding::{
    equivalent_occurrence, frequent_single_edges, has_equivalent_extension, frequent_triples, rightmost_extensions, support, EmbeddingList,
    FrequentTriples,
};
use crate::error::ConfigError;
use crate::graph::{EdgeEnumeration, EdgeIndex, GraphDatabase, LabeledGraph, VertexId};
use crate::gspan::pattern;
use crate::miner::{finish, MinedPattern, MiningConfig, MiningResult, MiningStats, Mode};

/// Sorted set of database edges that one pattern edge maps to.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeKey(Vec<EdgeIndex>);

impl EdgeKey {
    pub fn new(mut edges: Vec<EdgeIndex>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        EdgeKey(edges)
    }

    pub fn edges(&self) -> &[EdgeIndex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for EdgeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Key of the pattern edge joining dfs vertices `a` and `b`.
///
/// Panics if the edge is not part of `code`.
pub fn create_edge_hash_key(
    ee: &EdgeEnumeration,
    code: &DfsCode,
    list: &EmbeddingList,
    edge: (DfsId, DfsId),
) -> EdgeKey {
    let k = code
        .edge_index(edge.0, edge.1)
        .unwrap_or_else(|| panic!("({},{}) is not an edge of {code}", edge.0, edge.1));
    let skip = code.len() - 1 - k;
    let edges = (0..list.len())
        .map(|i| {
            let e = list.chain(i).nth(skip).expect("chain shorter than code");
            ee.index(e.graph as usize, e.edge)
        })
        .collect();
    EdgeKey::new(edges)
}

/// Keys of every edge of `code`, in code order.
fn all_edge_keys(ee: &EdgeEnumeration, code: &DfsCode, list: &EmbeddingList) -> Vec<EdgeKey> {
    let n = code.len();
    let mut keys: Vec<Vec<EdgeIndex>> = vec![Vec::with_capacity(list.len()); n];
    for i in 0..list.len() {
        for (k, e) in list.chain(i).enumerate() {
            keys[n - 1 - k].push(ee.index(e.graph as usize, e.edge));
        }
    }
    keys.into_iter().map(EdgeKey::new).collect()
}

/// A closed graph stored in the hash table.
#[derive(Debug)]
pub struct ClosedGraphRecord {
    pub code: DfsCode,
    pub embeddings: Arc<EmbeddingList>,
    pub discovery_index: usize,
    graph: OnceCell<LabeledGraph>,
    maps: OnceCell<Vec<(u32, Vec<VertexId>)>>,
}

impl ClosedGraphRecord {
    pub fn new(code: DfsCode, embeddings: Arc<EmbeddingList>, discovery_index: usize) -> Self {
        ClosedGraphRecord {
            code,
            embeddings,
            discovery_index,
            graph: OnceCell::new(),
            maps: OnceCell::new(),
        }
    }

    pub fn graph(&self) -> &LabeledGraph {
        self.graph
            .get_or_init(|| self.code.to_graph().expect("stored codes are valid"))
    }

    /// `(graph id, vertex map)` of every isomorphism, materialized once.
    pub fn vertex_maps(&self) -> &[(u32, Vec<VertexId>)] {
        self.maps.get_or_init(|| {
            (0..self.embeddings.len())
                .map(|i| {
                    (
                        self.embeddings.entries()[i].graph,
                        self.embeddings.vertex_map(&self.code, i),
                    )
                })
                .collect()
        })
    }
}

/// Closed graphs indexed by the edge keys of their edges.
#[derive(Debug, Default)]
pub struct ClosedGraphHashTable {
    buckets: HashMap<EdgeKey, Vec<usize>>,
    records: Vec<ClosedGraphRecord>,
}

impl ClosedGraphHashTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of distinct keys.
    pub fn key_count(&self) -> usize {
        self.buckets.len()
    }

    pub fn records(&self) -> &[ClosedGraphRecord] {
        &self.records
    }

    pub fn record(&self, i: usize) -> &ClosedGraphRecord {
        &self.records[i]
    }

    /// Record indices stored under `key`, in insertion order.
    pub fn get(&self, key: &EdgeKey) -> &[usize] {
        self.buckets.get(key).map_or(&[], |v| v.as_slice())
    }

    pub fn keys(&self) -> impl Iterator<Item = &EdgeKey> {
        self.buckets.keys()
    }

    /// Adds one entry per edge of the record's pattern; returns its index.
    pub fn add_closed_graph(&mut self, ee: &EdgeEnumeration, record: ClosedGraphRecord) -> usize {
        let id = self.records.len();
        for key in all_edge_keys(ee, &record.code, &record.embeddings) {
            let bucket = self.buckets.entry(key).or_default();
            // two pattern edges can share a key under automorphisms
            if bucket.last() != Some(&id) {
                bucket.push(id);
            }
        }
        self.records.push(record);
        id
    }
}

/// Prefix tree of DFS codes. A code is a member when its tuples spell a path
/// from the root.
#[derive(Debug, Clone)]
pub struct DfsCodeTrie {
    nodes: Vec<TrieNode>,
    codes: usize,
}

#[derive(Debug, Clone)]
struct TrieNode {
    tuple: Option<EdgeTuple>,
    /// Sorted by tuple.
    children: Vec<usize>,
    terminal: bool,
}

impl Default for DfsCodeTrie {
    fn default() -> Self {
        DfsCodeTrie {
            nodes: vec![TrieNode {
                tuple: None,
                children: Vec::new(),
                terminal: false,
            }],
            codes: 0,
        }
    }
}

impl DfsCodeTrie {
    pub fn new() -> Self {
        Self::default()
    }

    fn child(&self, node: usize, t: &EdgeTuple) -> Result<usize, usize> {
        let kids = &self.nodes[node].children;
        kids.binary_search_by(|&c| self.nodes[c].tuple.as_ref().unwrap().cmp(t))
            .map(|pos| kids[pos])
    }

    /// Inserts a code; returns false if it was already registered.
    pub fn insert(&mut self, code: &[EdgeTuple]) -> bool {
        let mut node = 0;
        for t in code {
            node = match self.child(node, t) {
                Ok(c) => c,
                Err(pos) => {
                    let id = self.nodes.len();
                    self.nodes.push(TrieNode {
                        tuple: Some(*t),
                        children: Vec::new(),
                        terminal: false,
                    });
                    self.nodes[node].children.insert(pos, id);
                    id
                }
            };
        }
        if self.nodes[node].terminal {
            return false;
        }
        self.nodes[node].terminal = true;
        self.codes += 1;
        true
    }

    /// Whether `code` spells a root path.
    pub fn contains(&self, code: &[EdgeTuple]) -> bool {
        let mut node = 0;
        for t in code {
            match self.child(node, t) {
                Ok(c) => node = c,
                Err(_) => return false,
            }
        }
        true
    }

    /// Whether `code` itself was inserted.
    pub fn contains_exact(&self, code: &[EdgeTuple]) -> bool {
        let mut node = 0;
        for t in code {
            match self.child(node, t) {
                Ok(c) => node = c,
                Err(_) => return false,
            }
        }
        self.nodes[node].terminal
    }

    /// Number of inserted codes.
    pub fn len(&self) -> usize {
        self.codes
    }

    pub fn is_empty(&self) -> bool {
        self.codes == 0
    }

    /// Number of nodes, root excluded.
    pub fn node_count(&self) -> usize {
        self.nodes.len() - 1
    }
}

/// A successful early termination test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Termination {
    /// Index of the closed graph in the table.
    pub record: usize,
    /// `rho[v]` is the dfs id in the closed graph's code of pattern vertex `v`.
    pub rho: Vec<DfsId>,
}

/// Looks for an already found closed graph `g'` and one placement `rho` of
/// `code` inside it such that every isomorphism `f` of `code` is `f' . rho`
/// for some isomorphism `f'` of `g'`.
pub fn early_termination(
    code: &DfsCode,
    list: &EmbeddingList,
    cght: &ClosedGraphHashTable,
    ee: &EdgeEnumeration,
) -> Option<Termination> {
    if cght.records.is_empty() {
        return None;
    }
    let key = EdgeKey::new(
        list.entries()
            .iter()
            .map(|e| ee.index(e.graph as usize, e.edge))
            .collect(),
    );
    let bucket = cght.get(&key);
    if bucket.is_empty() {
        return None;
    }
    let maps: Vec<(u32, Vec<VertexId>)> = (0..list.len())
        .map(|i| (list.entries()[i].graph, list.vertex_map(code, i)))
        .collect();
    for &r in bucket {
        let rec = cght.record(r);
        if rec.code.vertex_count() < code.vertex_count() {
            continue;
        }
        let gmaps = rec.vertex_maps();
        let (gi, fprime) = &gmaps[0];
        let inverse: HashMap<VertexId, DfsId> = fprime
            .iter()
            .enumerate()
            .map(|(d, &v)| (v, d as DfsId))
            .collect();
        let target = rec.graph();
        let mut candidates: Vec<Vec<DfsId>> = Vec::new();
        for (_, f) in maps.iter().filter(|(g, _)| g == gi) {
            let Some(rho) = f.iter().map(|v| inverse.get(v).copied()).collect::<Option<Vec<_>>>() else {
                continue;
            };
            let embeds = code.tuples().iter().all(|t| {
                target
                    .edge_between(rho[t.from as usize], rho[t.to as usize])
                    .is_some_and(|e| target.edge(e).label == t.edge_label)
            });
            if embeds && !candidates.contains(&rho) {
                candidates.push(rho);
            }
        }
        for rho in candidates {
            let composed: HashSet<(u32, Vec<VertexId>)> = gmaps
                .iter()
                .map(|(g, fp)| (*g, rho.iter().map(|&d| fp[d as usize]).collect()))
                .collect();
            if maps.iter().all(|m| composed.contains(m)) {
                return Some(Termination { record: r, rho });
            }
        }
    }
    None
}

/// Whether the trie holds a prefix of the closed graph's code that covers
/// the image of `s` under `rho`.
pub fn reject_early_termination(s: &DfsCode, g_prime: &DfsCode, rho: &[DfsId], trie: &DfsCodeTrie) -> bool {
    if trie.is_empty() {
        return false;
    }
    let n = s
        .tuples()
        .iter()
        .map(|t| {
            g_prime
                .edge_index(rho[t.from as usize], rho[t.to as usize])
                .expect("rho maps edges to edges")
        })
        .max()
        .expect("s has at least one edge");
    (n..g_prime.len()).any(|k| trie.contains(&g_prime.tuples()[..=k]))
}

/// How early termination failure sources are recognised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EtfRule {
    /// Register a code when deleting one of its interior vertices leaves a
    /// part containing the right-most vertex whose minimum code comes later
    /// in the search.
    #[default]
    InteriorVertexDeletion,
}

/// Registers `alpha` in `trie` when it can be the source of an early
/// termination failure. Returns whether it was registered.
pub fn detect_etf(alpha: &DfsCode, trie: &mut DfsCodeTrie, rule: EtfRule) -> bool {
    if alpha.len() < 2 {
        return false;
    }
    let hit = match rule {
        EtfRule::InteriorVertexDeletion => interior_deletion_witness(alpha),
    };
    hit && trie.insert(alpha.tuples())
}

/// Whether a descendant of `s` could reuse a vertex that only the closed
/// graph's isomorphisms cover. For some isomorphism `f` of `s`, every `f'`
/// with `f = f' . rho` has one of its vertices outside `rho(s)` reachable
/// from the right-most path of `f(s)` without entering `f(s)` again.
///
/// Without such an `f`, every pattern grown from `s` keeps an equivalent
/// one-edge extension taken from the closed graph, so pruning is safe.
pub fn descendants_may_collide(
    s: &DfsCode,
    list: &EmbeddingList,
    record: &ClosedGraphRecord,
    rho: &[DfsId],
    db: &GraphDatabase,
) -> bool {
    let mut in_rho = vec![false; record.code.vertex_count()];
    for &d in rho {
        in_rho[d as usize] = true;
    }
    let mut by_restriction: HashMap<(u32, Vec<VertexId>), Vec<usize>> = HashMap::new();
    for (j, (g, fp)) in record.vertex_maps().iter().enumerate() {
        let key = (*g, rho.iter().map(|&d| fp[d as usize]).collect());
        by_restriction.entry(key).or_default().push(j);
    }
    let rmpath = s.rightmost_path().vertices;
    let mut map = Vec::new();
    let mut done: HashSet<(u32, Vec<VertexId>)> = HashSet::new();
    for i in 0..list.len() {
        let gid = list.entries()[i].graph;
        list.fill_vertex_map(s, i, &mut map);
        let key = (gid, map.clone());
        if !done.insert(key.clone()) {
            continue;
        }
        let g = db.graph(gid as usize);
        let mut blocked = vec![false; g.vertex_count()];
        for &v in &map {
            blocked[v as usize] = true;
        }
        let mut reached = vec![false; g.vertex_count()];
        let mut stack: Vec<VertexId> = rmpath.iter().map(|&r| map[r as usize]).collect();
        while let Some(v) = stack.pop() {
            for inc in g.neighbors(v) {
                let w = inc.to as usize;
                if !blocked[w] && !reached[w] {
                    reached[w] = true;
                    stack.push(inc.to);
                }
            }
        }
        let extensions = by_restriction.get(&key).map_or(&[][..], |v| v.as_slice());
        let collides = |j: &usize| {
            let fp = &record.vertex_maps()[*j].1;
            fp.iter()
                .enumerate()
                .any(|(d, &v)| !in_rho[d] && reached[v as usize])
        };
        if extensions.iter().all(collides) {
            return true;
        }
    }
    false
}

fn interior_deletion_witness(alpha: &DfsCode) -> bool {
    let g = alpha.to_graph().expect("visited codes are valid");
    let rmv = alpha.rightmost_path().rightmost_vertex();
    for w in 0..g.vertex_count() as VertexId {
        if w == rmv || g.degree(w) < 2 {
            continue;
        }
        if let Some(beta) = component_without(&g, w, rmv) {
            if beta.edge_count() > 0 && min_dfs_code(&beta).is_ok_and(|b| *alpha < b) {
                return true;
            }
        }
    }
    false
}

/// The subgraph induced by the component of `keep` after deleting `w`.
fn component_without(g: &LabeledGraph, w: VertexId, keep: VertexId) -> Option<LabeledGraph> {
    let n = g.vertex_count();
    let mut id = vec![u32::MAX; n];
    let mut order = vec![keep];
    id[keep as usize] = 0;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        for inc in g.neighbors(v) {
            if inc.to != w && id[inc.to as usize] == u32::MAX {
                id[inc.to as usize] = order.len() as u32;
                order.push(inc.to);
            }
        }
        i += 1;
    }
    let labels = order.iter().map(|&v| g.vertex_label(v)).collect();
    let edges = g
        .edges()
        .iter()
        .filter(|e| id[e.u as usize] != u32::MAX && id[e.v as usize] != u32::MAX)
        .map(|e| (id[e.u as usize], id[e.v as usize], e.label));
    LabeledGraph::from_parts(0, labels, edges).ok()
}

/// Closed patterns in pre-order.
pub fn mine_closed(db: &GraphDatabase, cfg: &MiningConfig) -> Result<Vec<MinedPattern>, ConfigError> {
    Ok(run(db, cfg)?.patterns)
}

pub(crate) fn run(db: &GraphDatabase, cfg: &MiningConfig) -> Result<MiningResult, ConfigError> {
    ClosedMiner::new(db, cfg)?.run()
}

/// A closed-mining run with its hash table and trie exposed for inspection.
pub struct ClosedMiner<'a> {
    db: &'a GraphDatabase,
    cfg: MiningConfig,
    rule: EtfRule,
    min_sup: usize,
    ee: EdgeEnumeration,
    triples: FrequentTriples,
    cght: ClosedGraphHashTable,
    trie: DfsCodeTrie,
    out: Vec<MinedPattern>,
    stats: MiningStats,
    collision_guard: bool,
    pruning: bool,
}

impl<'a> ClosedMiner<'a> {
    pub fn new(db: &'a GraphDatabase, cfg: &MiningConfig) -> Result<Self, ConfigError> {
        if cfg.mode == Mode::Frequent {
            return Err(ConfigError::NotClosedMode(cfg.mode));
        }
        let min_sup = cfg.min_support.threshold(db.len())?;
        Ok(ClosedMiner {
            db,
            cfg: cfg.clone(),
            rule: EtfRule::default(),
            min_sup,
            ee: EdgeEnumeration::new(db),
            triples: frequent_triples(db, min_sup),
            cght: ClosedGraphHashTable::new(),
            trie: DfsCodeTrie::new(),
            out: Vec::new(),
            collision_guard: true,
            pruning: true,
            stats: MiningStats {
                min_support: min_sup,
                ..Default::default()
            },
        })
    }

    pub fn with_rule(mut self, rule: EtfRule) -> Self {
        self.rule = rule;
        self
    }

    /// Turns the collision check on rejected terminations on or off. With
    /// it off, only the trie decides.
    pub fn with_collision_guard(mut self, on: bool) -> Self {
        self.collision_guard = on;
        self
    }

    /// With `false` no branch is ever cut by early termination; closedness
    /// is then decided for every visited code.
    pub fn with_early_termination(mut self, on: bool) -> Self {
        self.pruning = on;
        self
    }

    pub fn cght(&self) -> &ClosedGraphHashTable {
        &self.cght
    }

    pub fn trie(&self) -> &DfsCodeTrie {
        &self.trie
    }

    /// Mines and keeps the table and trie; see [`ClosedMiner::into_result`].
    pub fn mine(&mut self) {
        for (code, list) in frequent_single_edges(self.db, self.min_sup) {
            self.visit(code, Arc::new(list));
        }
        self.stats.trie_codes = self.trie.len();
        self.stats.trie_nodes = self.trie.node_count();
        self.stats.cght_keys = self.cght.key_count();
    }

    pub fn into_result(self) -> MiningResult {
        finish(self.out, self.stats)
    }

    pub fn run(mut self) -> Result<MiningResult, ConfigError> {
        self.mine();
        Ok(self.into_result())
    }

    fn visit(&mut self, code: DfsCode, list: Arc<EmbeddingList>) {
        if !code.is_min() {
            self.stats.non_minimal += 1;
            return;
        }
        self.stats.visited_nodes += 1;
        let index = self.stats.visited_nodes;

        // A rejected termination still proves `code` is not closed.
        let mut terminated = false;
        let found = if self.pruning {
            early_termination(&code, &list, &self.cght, &self.ee)
        } else {
            None
        };
        if let Some(t) = found {
            let rec = self.cght.record(t.record);
            let reject = self.cfg.mode == Mode::Closed
                && (reject_early_termination(&code, &rec.code, &t.rho, &self.trie)
                    || (self.collision_guard && {
                        let hit = descendants_may_collide(&code, &list, rec, &t.rho, self.db);
                        self.stats.collision_rejections += usize::from(hit);
                        hit
                    }));
            if !reject {
                self.stats.early_terminations_applied += 1;
                return;
            }
            self.stats.early_terminations_rejected += 1;
            terminated = true;
        }
        if self.cfg.mode == Mode::Closed {
            detect_etf(&code, &mut self.trie, self.rule);
        }

        let mut equivalent = false;
        let capped = self.cfg.max_pattern_edges.is_some_and(|m| code.len() >= m);
        for (t, child) in rightmost_extensions(&code, &list, self.db, Some(&self.triples)) {
            if support(&child) < self.min_sup {
                continue;
            }
            equivalent = equivalent || equivalent_occurrence(&list, &child);
            if !capped {
                self.visit(code.extended(t), Arc::new(child));
            }
        }
        if !equivalent && !terminated {
            equivalent = has_equivalent_extension(&code, &list, self.db);
        }
        if equivalent || terminated {
            return;
        }
        self.out.push(pattern(&code, &list, index, self.cfg.emit_embeddings));
        self.cght
            .add_closed_graph(&self.ee, ClosedGraphRecord::new(code, list, index));
    }
}
