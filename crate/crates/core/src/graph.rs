//! Labeled undirected graphs, the transactional graph database and the
//! global edge enumeration used to build closed-graph hash keys.

use std::fmt;

use crate::error::GraphError;

/// Vertex or edge label. Ordered by its integer value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Label(pub u32);

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for Label {
    fn from(v: u32) -> Self {
        Label(v)
    }
}

pub type VertexId = u32;
pub type EdgeId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub label: Label,
}

impl Edge {
    /// The endpoint opposite to `x`.
    #[inline]
    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// Adjacency entry: neighbor vertex and the id of the connecting edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Incidence {
    pub to: VertexId,
    pub edge: EdgeId,
}

/// An undirected, simple, vertex- and edge-labeled graph with dense ids.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LabeledGraph {
    id: usize,
    vertex_labels: Vec<Label>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<Incidence>>,
}

impl LabeledGraph {
    pub fn new(id: usize) -> Self {
        LabeledGraph {
            id,
            ..Default::default()
        }
    }

    /// Builds a graph from vertex labels and `(u, v, label)` edges, checking
    /// the simple-graph invariants.
    pub fn from_parts(
        id: usize,
        vertex_labels: Vec<Label>,
        edges: impl IntoIterator<Item = (VertexId, VertexId, Label)>,
    ) -> Result<Self, GraphError> {
        let mut g = LabeledGraph::new(id);
        for l in vertex_labels {
            g.add_vertex(l);
        }
        for (u, v, l) in edges {
            g.add_edge(u, v, l)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, label: Label) -> VertexId {
        self.vertex_labels.push(label);
        self.adjacency.push(Vec::new());
        (self.vertex_labels.len() - 1) as VertexId
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId, label: Label) -> Result<EdgeId, GraphError> {
        let n = self.vertex_labels.len() as VertexId;
        if u >= n || v >= n {
            return Err(GraphError::DanglingEndpoint {
                vertex: u.max(v),
            });
        }
        if u == v {
            return Err(GraphError::SelfLoop { vertex: u });
        }
        if self.edge_between(u, v).is_some() {
            return Err(GraphError::DuplicateEdge { u, v });
        }
        let id = self.edges.len() as EdgeId;
        self.edges.push(Edge { u, v, label });
        self.adjacency[u as usize].push(Incidence { to: v, edge: id });
        self.adjacency[v as usize].push(Incidence { to: u, edge: id });
        Ok(id)
    }

    #[inline]
    pub fn id(&self) -> usize {
        self.id
    }

    pub(crate) fn set_id(&mut self, id: usize) {
        self.id = id;
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.vertex_labels.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn vertex_label(&self, v: VertexId) -> Label {
        self.vertex_labels[v as usize]
    }

    pub fn vertex_labels(&self) -> &[Label] {
        &self.vertex_labels
    }

    #[inline]
    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e as usize]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: VertexId) -> &[Incidence] {
        &self.adjacency[v as usize]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        let (a, b) = if self.adjacency[u as usize].len() <= self.adjacency[v as usize].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adjacency[a as usize]
            .iter()
            .find(|inc| inc.to == b)
            .map(|inc| inc.edge)
    }

    /// True when every vertex is reachable from vertex 0. The empty graph is
    /// not considered connected.
    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for inc in self.neighbors(v) {
                if !seen[inc.to as usize] {
                    seen[inc.to as usize] = true;
                    count += 1;
                    stack.push(inc.to);
                }
            }
        }
        count == n
    }

    /// Returns a copy with vertices renumbered by `perm` (`perm[old] = new`).
    pub fn permuted(&self, perm: &[VertexId]) -> LabeledGraph {
        assert_eq!(perm.len(), self.vertex_count());
        let mut labels = vec![Label(0); self.vertex_count()];
        for (old, &new) in perm.iter().enumerate() {
            labels[new as usize] = self.vertex_labels[old];
        }
        let mut g = LabeledGraph::new(self.id);
        for l in labels {
            g.add_vertex(l);
        }
        for e in &self.edges {
            g.add_edge(perm[e.u as usize], perm[e.v as usize], e.label)
                .expect("permutation preserves simplicity");
        }
        g
    }
}

/// One raw graph as read from a file, before id densification.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RawGraph {
    pub file_id: i64,
    /// Line number of the `t` record (1-based, 0 when not from a file).
    pub line: usize,
    /// `(vertex id as written, label, line)`.
    pub vertices: Vec<(i64, Label, usize)>,
    /// `(u, v, label, line)` with ids as written.
    pub edges: Vec<(i64, i64, Label, usize)>,
}

/// A transactional database of labeled graphs with dense 0-based ids.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GraphDatabase {
    graphs: Vec<LabeledGraph>,
    file_ids: Vec<i64>,
    vertex_label_counts: Vec<(Label, usize)>,
    edge_label_counts: Vec<(Label, usize)>,
    label_names: Option<Vec<String>>,
}

impl GraphDatabase {
    pub fn new(graphs: Vec<LabeledGraph>) -> Self {
        let file_ids = (0..graphs.len() as i64).collect();
        Self::with_file_ids(graphs, file_ids)
    }

    fn with_file_ids(mut graphs: Vec<LabeledGraph>, file_ids: Vec<i64>) -> Self {
        for (i, g) in graphs.iter_mut().enumerate() {
            g.set_id(i);
        }
        let mut db = GraphDatabase {
            graphs,
            file_ids,
            ..Default::default()
        };
        db.count_labels();
        db
    }

    /// Densifies vertex ids per graph and graph ids across the database.
    pub fn load(raw: Vec<RawGraph>) -> Result<Self, GraphError> {
        let mut graphs = Vec::with_capacity(raw.len());
        let mut file_ids = Vec::with_capacity(raw.len());
        for (gid, r) in raw.into_iter().enumerate() {
            let mut g = LabeledGraph::new(gid);
            let mut index = std::collections::HashMap::with_capacity(r.vertices.len());
            for &(vid, label, line) in &r.vertices {
                if index.insert(vid, g.add_vertex(label)).is_some() {
                    return Err(GraphError::at(
                        r.file_id,
                        line,
                        GraphError::DuplicateVertex { vertex: vid },
                    ));
                }
            }
            for &(u, v, label, line) in &r.edges {
                let (Some(&du), Some(&dv)) = (index.get(&u), index.get(&v)) else {
                    let missing = if index.contains_key(&u) { v } else { u };
                    return Err(GraphError::at(
                        r.file_id,
                        line,
                        GraphError::UnknownVertex { vertex: missing },
                    ));
                };
                g.add_edge(du, dv, label)
                    .map_err(|e| GraphError::at(r.file_id, line, e))?;
            }
            graphs.push(g);
            file_ids.push(r.file_id);
        }
        Ok(Self::with_file_ids(graphs, file_ids))
    }

    fn count_labels(&mut self) {
        use std::collections::{BTreeMap, BTreeSet};
        let mut vcount: BTreeMap<Label, usize> = BTreeMap::new();
        let mut ecount: BTreeMap<Label, usize> = BTreeMap::new();
        for g in &self.graphs {
            let vs: BTreeSet<Label> = g.vertex_labels.iter().copied().collect();
            for l in vs {
                *vcount.entry(l).or_default() += 1;
            }
            let es: BTreeSet<Label> = g.edges.iter().map(|e| e.label).collect();
            for l in es {
                *ecount.entry(l).or_default() += 1;
            }
        }
        self.vertex_label_counts = vcount.into_iter().collect();
        self.edge_label_counts = ecount.into_iter().collect();
    }

    pub fn graphs(&self) -> &[LabeledGraph] {
        &self.graphs
    }

    #[inline]
    pub fn graph(&self, gid: usize) -> &LabeledGraph {
        &self.graphs[gid]
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    /// Graph id as it appeared in the source file.
    pub fn file_id(&self, gid: usize) -> i64 {
        self.file_ids[gid]
    }

    /// `(label, number of graphs containing a vertex with it)`, sorted by label.
    pub fn vertex_label_counts(&self) -> &[(Label, usize)] {
        &self.vertex_label_counts
    }

    /// `(label, number of graphs containing an edge with it)`, sorted by label.
    pub fn edge_label_counts(&self) -> &[(Label, usize)] {
        &self.edge_label_counts
    }

    pub fn total_edges(&self) -> usize {
        self.graphs.iter().map(|g| g.edge_count()).sum()
    }

    /// Names of interned labels, present when the file used string tokens.
    pub fn label_names(&self) -> Option<&[String]> {
        self.label_names.as_deref()
    }

    pub(crate) fn set_label_names(&mut self, names: Vec<String>) {
        self.label_names = Some(names);
    }

    pub fn label_name(&self, l: Label) -> String {
        match &self.label_names {
            Some(names) => names
                .get(l.0 as usize)
                .cloned()
                .unwrap_or_else(|| l.0.to_string()),
            None => l.0.to_string(),
        }
    }
}

/// Double index `(graph, edge)` of a database edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeIndex {
    pub graph: u32,
    pub edge: u32,
}

impl fmt::Display for EdgeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.graph, self.edge)
    }
}

/// Injective enumeration of every edge in a database.
///
/// Edges are numbered by `(graph index, edge index)`, both 0-based and in
/// input order, so the enumeration is fully determined by the database.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeEnumeration {
    edge_counts: Vec<u32>,
}

impl EdgeEnumeration {
    pub fn new(db: &GraphDatabase) -> Self {
        EdgeEnumeration {
            edge_counts: db.graphs().iter().map(|g| g.edge_count() as u32).collect(),
        }
    }

    /// Index of edge `edge` of graph `graph`.
    #[inline]
    pub fn index(&self, graph: usize, edge: EdgeId) -> EdgeIndex {
        debug_assert!(edge < self.edge_counts[graph]);
        EdgeIndex {
            graph: graph as u32,
            edge,
        }
    }

    /// Index of the edge joining `u` and `v` in `graph`, if any.
    pub fn index_of_pair(&self, db: &GraphDatabase, graph: usize, u: VertexId, v: VertexId) -> Option<EdgeIndex> {
        db.graph(graph).edge_between(u, v).map(|e| self.index(graph, e))
    }

    pub fn len(&self) -> usize {
        self.edge_counts.iter().map(|&c| c as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeIndex> + '_ {
        self.edge_counts
            .iter()
            .enumerate()
            .flat_map(|(g, &c)| (0..c).map(move |e| EdgeIndex { graph: g as u32, edge: e }))
    }
}
