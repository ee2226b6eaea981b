//! Small hand-built databases and a compact notation for DFS codes.
//!
//! Labels are written as single letters. `A`..`Z` map to 0..25 and `a`..`z`
//! to 26..51, which is also the order a sorted string interner assigns.

use crate::dfs::{DfsCode, EdgeTuple};
use crate::graph::{GraphDatabase, Label, LabeledGraph};

/// Label id of a one-letter name.
pub fn label(name: &str) -> Label {
    let mut chars = name.chars();
    let c = chars.next().expect("empty label name");
    assert!(chars.next().is_none(), "label names are single letters: {name}");
    match c {
        'A'..='Z' => Label(c as u32 - 'A' as u32),
        'a'..='z' => Label(26 + c as u32 - 'a' as u32),
        _ => panic!("label names are letters: {name}"),
    }
}

/// Letter names for every label id produced by [`label`].
pub fn letter_names() -> Vec<String> {
    ('A'..='Z').chain('a'..='z').map(|c| c.to_string()).collect()
}

/// Parses `"(0,1,W,a,X) (1,2,X,b,Y)"` into a DFS code.
pub fn code(text: &str) -> DfsCode {
    text.split(')')
        .map(|t| t.trim().trim_start_matches('('))
        .filter(|t| !t.is_empty())
        .map(|t| {
            let f: Vec<&str> = t.split(',').map(str::trim).collect();
            assert_eq!(f.len(), 5, "bad tuple {t}");
            EdgeTuple::new(
                f[0].parse().unwrap(),
                f[1].parse().unwrap(),
                label(f[2]),
                label(f[3]),
                label(f[4]),
            )
        })
        .collect()
}

/// Builds a graph from letter labels and `(u, v, edge letter)` triples.
pub fn graph(vertices: &str, edges: &[(u32, u32, &str)]) -> LabeledGraph {
    let labels = vertices.split_whitespace().map(label).collect();
    LabeledGraph::from_parts(0, labels, edges.iter().map(|&(u, v, l)| (u, v, label(l))))
        .expect("fixture graphs are simple")
}

fn database(graphs: Vec<LabeledGraph>) -> GraphDatabase {
    let mut db = GraphDatabase::new(graphs);
    db.set_label_names(letter_names());
    db
}

/// The two-graph database with closed patterns g1' and g2'.
///
/// Vertex `k` here is `v(k+1)` in the usual drawing; edges are listed in the
/// order of the edge enumeration table.
pub fn figure1() -> GraphDatabase {
    let g1 = graph(
        "W X X Y S Z",
        &[(0, 1, "a"), (0, 2, "a"), (2, 3, "b"), (2, 4, "c"), (2, 5, "d"), (0, 5, "f")],
    );
    let g2 = graph(
        "W X Y T Z",
        &[(0, 1, "a"), (1, 2, "b"), (1, 3, "e"), (1, 4, "d"), (0, 4, "f")],
    );
    database(vec![g1, g2])
}

/// The two-graph database where early termination misses CG2.
pub fn figure3() -> GraphDatabase {
    // X1 Y X2 Z
    let g1 = graph("X Y X Z", &[(0, 1, "a"), (1, 2, "b"), (2, 3, "d"), (0, 3, "c")]);
    // X1 Y X2 Z X3
    let g2 = graph("X Y X Z X", &[(0, 1, "a"), (1, 2, "b"), (0, 3, "c"), (3, 4, "d")]);
    database(vec![g1, g2])
}

/// Min code of g1' (W-a-X, X-b-Y, X-d-Z, W-f-Z).
pub fn g1_prime() -> DfsCode {
    code("(0,1,W,a,X) (1,2,X,b,Y) (1,3,X,d,Z) (3,0,Z,f,W)")
}

/// Min code of g2' (X-a-W-f-Z).
pub fn g2_prime() -> DfsCode {
    code("(0,1,W,a,X) (0,2,W,f,Z)")
}

/// Min code of CG1 (X-a-Y-b-X with X-c-Z on the first X).
pub fn cg1() -> DfsCode {
    code("(0,1,X,a,Y) (1,2,Y,b,X) (0,3,X,c,Z)")
}

/// Min code of CG2 (Y-a-X-c-Z-d-X).
pub fn cg2() -> DfsCode {
    code("(0,1,X,a,Y) (0,2,X,c,Z) (2,3,Z,d,X)")
}
