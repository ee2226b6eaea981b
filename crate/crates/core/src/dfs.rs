//! DFS codes: the 5-tuple edge sequences used as canonical labels, their
//! lexicographic order, minimality checking and right-most paths.

use std::cmp::{Ordering, Reverse};
use std::fmt;

use crate::error::CodeError;
use crate::graph::{EdgeId, Label, LabeledGraph, VertexId};

/// Id of a vertex inside a DFS code (its discovery index).
pub type DfsId = u32;

/// One edge of a DFS code: `(from, to, from_label, edge_label, to_label)`.
///
/// Forward edges have `from < to` and introduce `to`; backward edges have
/// `from > to` and close a cycle from the right-most vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeTuple {
    pub from: DfsId,
    pub to: DfsId,
    pub from_label: Label,
    pub edge_label: Label,
    pub to_label: Label,
}

impl EdgeTuple {
    pub fn new(from: DfsId, to: DfsId, from_label: Label, edge_label: Label, to_label: Label) -> Self {
        EdgeTuple {
            from,
            to,
            from_label,
            edge_label,
            to_label,
        }
    }

    #[inline]
    pub fn is_forward(&self) -> bool {
        self.from < self.to
    }

    #[inline]
    pub fn is_backward(&self) -> bool {
        self.from > self.to
    }

    // Forward (i, j) sorts at position j, larger i first; backward (i, j)
    // sorts right after the forward edge that introduced i.
    #[inline]
    fn order_key(&self) -> (DfsId, u8, Reverse<DfsId>, DfsId, [Label; 3]) {
        if self.is_forward() {
            (
                self.to,
                0,
                Reverse(self.from),
                0,
                [self.from_label, self.edge_label, self.to_label],
            )
        } else {
            (
                self.from,
                1,
                Reverse(0),
                self.to,
                [self.edge_label, self.from_label, self.to_label],
            )
        }
    }
}

impl Ord for EdgeTuple {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl PartialOrd for EdgeTuple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for EdgeTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{},{})",
            self.from, self.to, self.from_label, self.edge_label, self.to_label
        )
    }
}

/// Strict order on edge tuples.
pub fn tuple_less(a: &EdgeTuple, b: &EdgeTuple) -> bool {
    a < b
}

/// Strict DFS lexicographic order on codes; a proper prefix is smaller.
pub fn code_less(a: &DfsCode, b: &DfsCode) -> bool {
    a < b
}

/// A DFS code. Ordering is lexicographic over tuples with prefixes first.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DfsCode(Vec<EdgeTuple>);

impl DfsCode {
    pub fn new() -> Self {
        DfsCode(Vec::new())
    }

    pub fn from_tuples(tuples: Vec<EdgeTuple>) -> Self {
        DfsCode(tuples)
    }

    pub fn tuples(&self) -> &[EdgeTuple] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, t: EdgeTuple) {
        self.0.push(t);
    }

    pub fn pop(&mut self) -> Option<EdgeTuple> {
        self.0.pop()
    }

    pub fn last(&self) -> Option<&EdgeTuple> {
        self.0.last()
    }

    pub fn prefix(&self, len: usize) -> DfsCode {
        DfsCode(self.0[..len].to_vec())
    }

    /// A copy with `t` appended.
    pub fn extended(&self, t: EdgeTuple) -> DfsCode {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(t);
        DfsCode(v)
    }

    pub fn vertex_count(&self) -> usize {
        self.0
            .iter()
            .map(|t| t.from.max(t.to) as usize + 1)
            .max()
            .unwrap_or(0)
    }

    /// Label of every dfs vertex, indexed by dfs id.
    pub fn vertex_labels(&self) -> Vec<Label> {
        let mut labels = vec![Label(0); self.vertex_count()];
        for t in &self.0 {
            labels[t.from as usize] = t.from_label;
            labels[t.to as usize] = t.to_label;
        }
        labels
    }

    /// Index of the tuple joining dfs vertices `a` and `b`.
    pub fn edge_index(&self, a: DfsId, b: DfsId) -> Option<usize> {
        self.0
            .iter()
            .position(|t| (t.from == a && t.to == b) || (t.from == b && t.to == a))
    }

    /// Checks the structural invariants of a DFS code.
    pub fn validate(&self) -> Result<(), CodeError> {
        if self.0.is_empty() {
            return Err(CodeError::Empty);
        }
        let bad = |index: usize, message: &str| CodeError::Invalid {
            index,
            message: message.to_string(),
        };
        let mut labels: Vec<Label> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for (i, t) in self.0.iter().enumerate() {
            if i == 0 {
                if t.from != 0 || t.to != 1 {
                    return Err(bad(0, "first tuple must be (0,1)"));
                }
                labels.push(t.from_label);
                labels.push(t.to_label);
            } else if t.is_forward() {
                if t.to as usize != labels.len() {
                    return Err(bad(i, "forward edge must introduce the next vertex id"));
                }
                if t.from as usize >= labels.len() {
                    return Err(bad(i, "forward edge starts at an unknown vertex"));
                }
                if labels[t.from as usize] != t.from_label {
                    return Err(bad(i, "inconsistent vertex label"));
                }
                labels.push(t.to_label);
            } else if t.is_backward() {
                if t.from as usize >= labels.len() {
                    return Err(bad(i, "backward edge from an unknown vertex"));
                }
                if labels[t.from as usize] != t.from_label || labels[t.to as usize] != t.to_label {
                    return Err(bad(i, "inconsistent vertex label"));
                }
            } else {
                return Err(bad(i, "self-loop"));
            }
            if !seen.insert((t.from.min(t.to), t.from.max(t.to))) {
                return Err(bad(i, "duplicate edge"));
            }
        }
        Ok(())
    }

    /// Right-most path from the root to the right-most vertex.
    pub fn rightmost_path(&self) -> RightmostPath {
        let mut edges = Vec::new();
        let mut expect: Option<DfsId> = None;
        for (i, t) in self.0.iter().enumerate().rev() {
            if t.is_forward() && expect.is_none_or(|v| t.to == v) {
                edges.push(i);
                expect = Some(t.from);
            }
        }
        edges.reverse();
        let mut vertices: Vec<DfsId> = edges.iter().map(|&i| self.0[i].from).collect();
        if let Some(&i) = edges.last() {
            vertices.push(self.0[i].to);
        }
        RightmostPath { vertices, edges }
    }

    /// Rebuilds the graph encoded by this code; vertex ids equal dfs ids.
    pub fn to_graph(&self) -> Result<LabeledGraph, CodeError> {
        self.validate()?;
        let mut g = LabeledGraph::new(0);
        for l in self.vertex_labels() {
            g.add_vertex(l);
        }
        for (i, t) in self.0.iter().enumerate() {
            g.add_edge(t.from, t.to, t.edge_label).map_err(|e| CodeError::Invalid {
                index: i,
                message: e.to_string(),
            })?;
        }
        Ok(g)
    }

    /// True iff this code is the minimum DFS code of the graph it encodes.
    pub fn is_min(&self) -> bool {
        if self.0.len() <= 1 {
            return self.0.first().is_none_or(|t| t.from_label <= t.to_label);
        }
        let Ok(g) = self.to_graph() else {
            return false;
        };
        let mut i = 0;
        
        canonical_walk(&g, |t| {
            let ord = t.cmp(&self.0[i]);
            i += 1;
            ord == Ordering::Equal
        })
    }
}

impl fmt::Display for DfsCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<usize> for DfsCode {
    type Output = EdgeTuple;
    fn index(&self, i: usize) -> &EdgeTuple {
        &self.0[i]
    }
}

impl<'a> IntoIterator for &'a DfsCode {
    type Item = &'a EdgeTuple;
    type IntoIter = std::slice::Iter<'a, EdgeTuple>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl FromIterator<EdgeTuple> for DfsCode {
    fn from_iter<I: IntoIterator<Item = EdgeTuple>>(iter: I) -> Self {
        DfsCode(iter.into_iter().collect())
    }
}

/// Right-most path of a DFS code.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RightmostPath {
    /// Dfs ids from the root to the right-most vertex.
    pub vertices: Vec<DfsId>,
    /// Indices of the forward tuples along the path, root side first.
    pub edges: Vec<usize>,
}

impl RightmostPath {
    pub fn rightmost_vertex(&self) -> DfsId {
        *self.vertices.last().unwrap_or(&0)
    }
}

/// Minimum DFS code of a connected graph with at least one edge.
pub fn min_dfs_code(g: &LabeledGraph) -> Result<DfsCode, CodeError> {
    if g.edge_count() == 0 {
        return Err(CodeError::Empty);
    }
    if !g.is_connected() {
        return Err(CodeError::Disconnected);
    }
    let mut code = DfsCode::new();
    canonical_walk(g, |t| {
        code.push(*t);
        true
    });
    Ok(code)
}

#[derive(Clone, Copy)]
struct Step {
    parent: usize,
    edge: EdgeId,
    from: VertexId,
    to: VertexId,
}

/// Builds the minimum DFS code of `g` one tuple at a time, handing each tuple
/// to `accept`. Stops early when `accept` returns false; returns whether the
/// walk covered every edge.
fn canonical_walk(g: &LabeledGraph, mut accept: impl FnMut(&EdgeTuple) -> bool) -> bool {
    let n = g.vertex_count();
    let m = g.edge_count();

    let mut best: Option<EdgeTuple> = None;
    let mut level: Vec<Step> = Vec::new();
    for e in g.edges() {
        for (a, b) in [(e.u, e.v), (e.v, e.u)] {
            let t = EdgeTuple::new(0, 1, g.vertex_label(a), e.label, g.vertex_label(b));
            let id = g.edge_between(a, b).unwrap();
            match best.map(|x| t.cmp(&x)) {
                None | Some(Ordering::Less) => {
                    best = Some(t);
                    level.clear();
                    level.push(Step { parent: usize::MAX, edge: id, from: a, to: b });
                }
                Some(Ordering::Equal) => level.push(Step { parent: usize::MAX, edge: id, from: a, to: b }),
                Some(Ordering::Greater) => {}
            }
        }
    }
    let Some(first) = best else {
        return true;
    };
    if !accept(&first) {
        return false;
    }
    let mut code = vec![first];
    let mut levels: Vec<Vec<Step>> = vec![level];

    let mut map = vec![u32::MAX; 0];
    let mut used_edge = vec![false; m];
    let mut used_vertex = vec![false; n];
    while code.len() < m {
        let dcode = DfsCode(code.clone());
        let rm = dcode.rightmost_path();
        let rmv = rm.rightmost_vertex();
        let next_id = dcode.vertex_count() as DfsId;
        let current = levels.last().unwrap();
        let mut best: Option<EdgeTuple> = None;
        let mut next: Vec<Step> = Vec::new();
        for (pi, _) in current.iter().enumerate() {
            // materialize the vertex map of this projection
            map.clear();
            map.resize(next_id as usize, u32::MAX);
            used_edge.iter_mut().for_each(|x| *x = false);
            used_vertex.iter_mut().for_each(|x| *x = false);
            let mut depth = levels.len() - 1;
            let mut idx = pi;
            loop {
                let s = levels[depth][idx];
                let t = &code[depth];
                map[t.from as usize] = s.from;
                map[t.to as usize] = s.to;
                used_edge[s.edge as usize] = true;
                used_vertex[s.from as usize] = true;
                used_vertex[s.to as usize] = true;
                if depth == 0 {
                    break;
                }
                idx = s.parent;
                depth -= 1;
            }
            let offer = |t: EdgeTuple, step: Step, best: &mut Option<EdgeTuple>, next: &mut Vec<Step>| {
                match best.map(|x| t.cmp(&x)) {
                    None | Some(Ordering::Less) => {
                        *best = Some(t);
                        next.clear();
                        next.push(step);
                    }
                    Some(Ordering::Equal) => next.push(step),
                    Some(Ordering::Greater) => {}
                }
            };
            let grmv = map[rmv as usize];
            // backward edges from the right-most vertex
            for &j in &rm.vertices[..rm.vertices.len() - 1] {
                let gj = map[j as usize];
                if let Some(e) = g.edge_between(grmv, gj) {
                    if !used_edge[e as usize] {
                        let t = EdgeTuple::new(rmv, j, g.vertex_label(grmv), g.edge(e).label, g.vertex_label(gj));
                        offer(t, Step { parent: pi, edge: e, from: grmv, to: gj }, &mut best, &mut next);
                    }
                }
            }
            // forward edges from every right-most path vertex
            for &j in rm.vertices.iter().rev() {
                let gj = map[j as usize];
                for inc in g.neighbors(gj) {
                    if used_vertex[inc.to as usize] {
                        continue;
                    }
                    let t = EdgeTuple::new(
                        j,
                        next_id,
                        g.vertex_label(gj),
                        g.edge(inc.edge).label,
                        g.vertex_label(inc.to),
                    );
                    offer(t, Step { parent: pi, edge: inc.edge, from: gj, to: inc.to }, &mut best, &mut next);
                }
            }
        }
        let Some(t) = best else {
            // disconnected remainder
            return false;
        };
        if !accept(&t) {
            return false;
        }
        code.push(t);
        levels.push(next);
    }
    true
}
