//! Projection lists: every isomorphism of a pattern into the database, kept
//! as chains of edge images linked to the prefix pattern's list.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use crate::dfs::{min_dfs_code, DfsCode, DfsId, EdgeTuple};
use crate::graph::{EdgeId, GraphDatabase, Label, VertexId};

/// Image of the last code tuple under one isomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Embedding {
    pub graph: u32,
    pub edge: EdgeId,
    /// Image of the tuple's `from` vertex.
    pub from: VertexId,
    /// Image of the tuple's `to` vertex.
    pub to: VertexId,
    /// Index into the parent list; unused for 1-edge patterns.
    pub parent: u32,
}

/// All embeddings of one pattern, grouped by ascending graph id.
#[derive(Debug, Clone, Default)]
pub struct EmbeddingList {
    parent: Option<Arc<EmbeddingList>>,
    entries: Vec<Embedding>,
}

/// Sorted edge ids of an embedding image together with its graph.
pub type ImageKey = (u32, Vec<EdgeId>);

impl EmbeddingList {
    pub fn new(parent: Option<Arc<EmbeddingList>>, entries: Vec<Embedding>) -> Self {
        EmbeddingList { parent, entries }
    }

    pub fn entries(&self) -> &[Embedding] {
        &self.entries
    }

    pub fn parent(&self) -> Option<&Arc<EmbeddingList>> {
        self.parent.as_ref()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of chain levels, i.e. the pattern's edge count.
    pub fn depth(&self) -> usize {
        let mut d = 1;
        let mut p = self.parent.as_deref();
        while let Some(l) = p {
            d += 1;
            p = l.parent.as_deref();
        }
        d
    }

    /// Walks the chain of entry `i` from the last tuple back to the first.
    pub fn chain(&self, i: usize) -> impl Iterator<Item = &Embedding> + '_ {
        let mut level = Some(self);
        let mut idx = i;
        std::iter::from_fn(move || {
            let l = level?;
            let e = &l.entries[idx];
            idx = e.parent as usize;
            level = l.parent.as_deref();
            Some(e)
        })
    }

    /// Vertex map of entry `i`: `map[dfs id] = graph vertex`.
    pub fn vertex_map(&self, code: &DfsCode, i: usize) -> Vec<VertexId> {
        let mut map = vec![VertexId::MAX; code.vertex_count()];
        self.fill_vertex_map(code, i, &mut map);
        map
    }

    pub(crate) fn fill_vertex_map(&self, code: &DfsCode, i: usize, map: &mut Vec<VertexId>) {
        map.clear();
        map.resize(code.vertex_count(), VertexId::MAX);
        let n = code.len();
        for (k, e) in self.chain(i).enumerate() {
            let t = &code[n - 1 - k];
            map[t.from as usize] = e.from;
            map[t.to as usize] = e.to;
        }
    }

    /// Edge images of entry `i` in code order.
    pub fn edge_images(&self, i: usize) -> Vec<EdgeId> {
        let mut v: Vec<EdgeId> = self.chain(i).map(|e| e.edge).collect();
        v.reverse();
        v
    }

    /// Image of entry `i` as a graph id and sorted edge set.
    pub fn image_key(&self, i: usize) -> ImageKey {
        let mut v = self.edge_images(i);
        v.sort_unstable();
        (self.entries[i].graph, v)
    }

    /// Distinct graph ids, ascending.
    pub fn graph_ids(&self) -> Vec<u32> {
        let mut out: Vec<u32> = Vec::new();
        for e in &self.entries {
            if out.last() != Some(&e.graph) {
                out.push(e.graph);
            }
        }
        out
    }
}

/// Number of distinct graphs containing the pattern.
pub fn support(list: &EmbeddingList) -> usize {
    let mut n = 0;
    let mut last = None;
    for e in list.entries() {
        if last != Some(e.graph) {
            n += 1;
            last = Some(e.graph);
        }
    }
    n
}

/// Number of isomorphisms of the pattern into the database.
pub fn occurrence(list: &EmbeddingList) -> usize {
    list.len()
}

/// Set of `(from label, edge label, to label)` triples, stored with
/// `from <= to`, that are frequent as 1-edge patterns.
#[derive(Debug, Clone, Default)]
pub struct FrequentTriples(HashSet<(Label, Label, Label)>);

impl FrequentTriples {
    pub fn contains(&self, a: Label, e: Label, b: Label) -> bool {
        let key = if a <= b { (a, e, b) } else { (b, e, a) };
        self.0.contains(&key)
    }
}

/// Frequent 1-edge patterns and their embeddings, ascending by code.
pub fn frequent_single_edges(db: &GraphDatabase, min_freq: usize) -> Vec<(DfsCode, EmbeddingList)> {
    let mut buckets: BTreeMap<EdgeTuple, Vec<Embedding>> = BTreeMap::new();
    for (gid, g) in db.graphs().iter().enumerate() {
        for (eid, e) in g.edges().iter().enumerate() {
            for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                let (la, lb) = (g.vertex_label(a), g.vertex_label(b));
                if la > lb {
                    continue;
                }
                buckets
                    .entry(EdgeTuple::new(0, 1, la, e.label, lb))
                    .or_default()
                    .push(Embedding {
                        graph: gid as u32,
                        edge: eid as EdgeId,
                        from: a,
                        to: b,
                        parent: 0,
                    });
            }
        }
    }
    buckets
        .into_iter()
        .map(|(t, v)| (DfsCode::from_tuples(vec![t]), EmbeddingList::new(None, v)))
        .filter(|(_, l)| support(l) >= min_freq.max(1))
        .collect()
}

/// The frequent label triples of a database at `min_freq`.
pub fn frequent_triples(db: &GraphDatabase, min_freq: usize) -> FrequentTriples {
    FrequentTriples(
        frequent_single_edges(db, min_freq)
            .into_iter()
            .map(|(c, _)| {
                let t = c[0];
                (t.from_label, t.edge_label, t.to_label)
            })
            .collect(),
    )
}

/// Every right-most extension of `code`, keyed by the appended tuple in
/// ascending order. Extensions whose label triple is not in `allowed` are
/// skipped.
pub fn rightmost_extensions(
    code: &DfsCode,
    list: &Arc<EmbeddingList>,
    db: &GraphDatabase,
    allowed: Option<&FrequentTriples>,
) -> BTreeMap<EdgeTuple, EmbeddingList> {
    let rm = code.rightmost_path();
    let rmv = rm.rightmost_vertex();
    let next_id = code.vertex_count() as DfsId;
    let labels = code.vertex_labels();
    let ok = |a: Label, e: Label, b: Label| allowed.is_none_or(|t| t.contains(a, e, b));

    let mut out: BTreeMap<EdgeTuple, Vec<Embedding>> = BTreeMap::new();
    let mut map = Vec::new();
    let mut used_vertex: Vec<bool> = Vec::new();
    let mut used_edge: Vec<bool> = Vec::new();
    for (i, emb) in list.entries().iter().enumerate() {
        let g = db.graph(emb.graph as usize);
        list.fill_vertex_map(code, i, &mut map);
        used_vertex.clear();
        used_vertex.resize(g.vertex_count(), false);
        used_edge.clear();
        used_edge.resize(g.edge_count(), false);
        for &v in &map {
            used_vertex[v as usize] = true;
        }
        for e in list.chain(i) {
            used_edge[e.edge as usize] = true;
        }
        let mut push = |t: EdgeTuple, edge: EdgeId, from: VertexId, to: VertexId| {
            out.entry(t).or_default().push(Embedding {
                graph: emb.graph,
                edge,
                from,
                to,
                parent: i as u32,
            });
        };

        let grmv = map[rmv as usize];
        // backward
        for &j in &rm.vertices[..rm.vertices.len() - 1] {
            let gj = map[j as usize];
            if let Some(e) = g.edge_between(grmv, gj) {
                let le = g.edge(e).label;
                if !used_edge[e as usize] && ok(labels[rmv as usize], le, labels[j as usize]) {
                    push(
                        EdgeTuple::new(rmv, j, labels[rmv as usize], le, labels[j as usize]),
                        e,
                        grmv,
                        gj,
                    );
                }
            }
        }
        // forward
        for &j in &rm.vertices {
            let gj = map[j as usize];
            for inc in g.neighbors(gj) {
                if used_vertex[inc.to as usize] {
                    continue;
                }
                let le = g.edge(inc.edge).label;
                let lt = g.vertex_label(inc.to);
                if ok(labels[j as usize], le, lt) {
                    push(EdgeTuple::new(j, next_id, labels[j as usize], le, lt), inc.edge, gj, inc.to);
                }
            }
        }
    }
    out.into_iter()
        .map(|(t, v)| (t, EmbeddingList::new(Some(Arc::clone(list)), v)))
        .collect()
}

/// Distinct images of a pattern.
pub fn images(list: &EmbeddingList) -> HashSet<ImageKey> {
    (0..list.len()).map(|i| list.image_key(i)).collect()
}

/// Whether every image of the parent pattern becomes an image of the child
/// pattern after adding one edge, i.e. the child has equivalent occurrence
/// with its parent.
///
/// `child` must have been produced by extending `parent`.
pub fn equivalent_occurrence(parent: &EmbeddingList, child: &EmbeddingList) -> bool {
    debug_assert!(child
        .parent()
        .is_some_and(|p| std::ptr::eq(Arc::as_ptr(p), parent)));
    let mut covered = vec![false; parent.len()];
    for e in child.entries() {
        covered[e.parent as usize] = true;
    }
    if covered.iter().all(|&c| c) {
        return true;
    }
    if support(child) < support(parent) {
        return false;
    }
    // Automorphic images: an uncovered isomorphism may share its image with
    // a covered one, or be reached by removing a different child edge.
    let mut pending: HashSet<ImageKey> = HashSet::new();
    let covered_images: HashSet<ImageKey> = (0..parent.len())
        .filter(|&i| covered[i])
        .map(|i| parent.image_key(i))
        .collect();
    for i in (0..parent.len()).filter(|&i| !covered[i]) {
        let key = parent.image_key(i);
        if !covered_images.contains(&key) {
            pending.insert(key);
        }
    }
    if pending.is_empty() {
        return true;
    }
    let graphs: HashSet<u32> = pending.iter().map(|k| k.0).collect();
    for i in 0..child.len() {
        let gid = child.entries()[i].graph;
        if !graphs.contains(&gid) {
            continue;
        }
        let mut edges = child.edge_images(i);
        edges.sort_unstable();
        for k in 0..edges.len() {
            let mut rest = edges.clone();
            rest.remove(k);
            pending.remove(&(gid, rest));
        }
        if pending.is_empty() {
            return true;
        }
    }
    pending.is_empty()
}

/// A one-edge extension from any pattern vertex, named by where it attaches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Attach {
    Closing(DfsId, DfsId, Label),
    Pendant(DfsId, Label, Label),
}

/// Whether some one-edge extension of `code`, attached at any vertex, has
/// equivalent occurrence with it: every image of `code` is the image of that
/// extension minus one edge.
pub fn has_equivalent_extension(code: &DfsCode, list: &EmbeddingList, db: &GraphDatabase) -> bool {
    let pattern = code.to_graph().expect("mined codes are valid");
    let mut child_of: HashMap<Attach, DfsCode> = HashMap::new();
    let mut per_image: HashMap<ImageKey, HashSet<DfsCode>> = HashMap::new();
    let mut map = Vec::new();
    for i in 0..list.len() {
        let gid = list.entries()[i].graph;
        let g = db.graph(gid as usize);
        list.fill_vertex_map(code, i, &mut map);
        let key = list.image_key(i);
        let inside: HashSet<EdgeId> = key.1.iter().copied().collect();
        let found = per_image.entry(key).or_default();
        for (a, &v) in map.iter().enumerate() {
            let a = a as DfsId;
            for inc in g.neighbors(v) {
                if inside.contains(&inc.edge) {
                    continue;
                }
                let label = g.edge(inc.edge).label;
                let attach = match map.iter().position(|&x| x == inc.to) {
                    Some(b) if (b as DfsId) < a => continue,
                    Some(b) => Attach::Closing(a, b as DfsId, label),
                    None => Attach::Pendant(a, label, g.vertex_label(inc.to)),
                };
                let child = child_of.entry(attach).or_insert_with(|| {
                    let mut q = pattern.clone();
                    match attach {
                        Attach::Closing(a, b, l) => {
                            q.add_edge(a, b, l).expect("new edge");
                        }
                        Attach::Pendant(a, l, vl) => {
                            let w = q.add_vertex(vl);
                            q.add_edge(a, w, l).expect("new edge");
                        }
                    }
                    min_dfs_code(&q).expect("connected")
                });
                found.insert(child.clone());
            }
        }
    }
    let mut images = per_image.into_values();
    let Some(mut common) = images.next() else {
        return false;
    };
    for here in images {
        common.retain(|c| here.contains(c));
        if common.is_empty() {
            return false;
        }
    }
    !common.is_empty()
}
