//! Reading and writing the line-oriented graph and pattern formats.
//!
//! Datasets: `t # <id>` opens a graph, `v <id> <label>` adds a vertex and
//! `e <u> <v> <label>` an undirected edge. `t # -1` or the end of input
//! closes the file. Pattern files list `t # <index> * <support>`, the pattern
//! as `v`/`e` lines numbered by dfs id, and `x` followed by the ids of the
//! graphs containing it.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use crate::error::ParseError;
use crate::graph::{GraphDatabase, Label, RawGraph};
use crate::miner::MinedPattern;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Accept arbitrary label tokens. Labels are numbered in sorted order
    /// (numeric tokens first, by value) and the names kept for output.
    pub intern_labels: bool,
}

enum Token {
    Num(u32),
    Name(String),
}

struct RawLabels {
    graphs: Vec<(i64, usize, Vec<(i64, Token, usize)>, Vec<(i64, i64, Token, usize)>)>,
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

/// Parses a dataset from a reader.
pub fn parse_dataset<R: BufRead>(reader: R, opts: ParseOptions) -> Result<GraphDatabase, ParseError> {
    let mut raw = RawLabels { graphs: Vec::new() };
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let no = i + 1;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        let int = |s: &str, what: &str| -> Result<i64, ParseError> {
            s.parse::<i64>()
                .map_err(|_| syntax(no, format!("expected integer {what}, found '{s}'")))
        };
        let label = |s: &str| -> Result<Token, ParseError> {
            match s.parse::<u32>() {
                Ok(v) => Ok(Token::Num(v)),
                Err(_) if opts.intern_labels => Ok(Token::Name(s.to_string())),
                Err(_) => Err(syntax(
                    no,
                    format!("label '{s}' is not a non-negative integer (enable label interning for names)"),
                )),
            }
        };
        match fields[0] {
            "t" => {
                if fields.len() != 3 || fields[1] != "#" {
                    return Err(syntax(no, "expected 't # <id>'"));
                }
                let id = int(fields[2], "graph id")?;
                if id == -1 {
                    break;
                }
                raw.graphs.push((id, no, Vec::new(), Vec::new()));
            }
            "v" => {
                if fields.len() != 3 {
                    return Err(syntax(no, "expected 'v <id> <label>'"));
                }
                let g = raw
                    .graphs
                    .last_mut()
                    .ok_or_else(|| syntax(no, "vertex before any 't' line"))?;
                g.2.push((int(fields[1], "vertex id")?, label(fields[2])?, no));
            }
            "e" => {
                if fields.len() != 4 {
                    return Err(syntax(no, "expected 'e <u> <v> <label>'"));
                }
                let g = raw
                    .graphs
                    .last_mut()
                    .ok_or_else(|| syntax(no, "edge before any 't' line"))?;
                g.3.push((int(fields[1], "vertex id")?, int(fields[2], "vertex id")?, label(fields[3])?, no));
            }
            other => return Err(syntax(no, format!("unknown record '{other}'"))),
        }
    }
    resolve(raw, opts)
}

/// Parses a dataset held in a string.
pub fn parse_dataset_str(text: &str, opts: ParseOptions) -> Result<GraphDatabase, ParseError> {
    parse_dataset(text.as_bytes(), opts)
}

fn resolve(raw: RawLabels, opts: ParseOptions) -> Result<GraphDatabase, ParseError> {
    let mut names: Option<Vec<String>> = None;
    let mut ids: BTreeMap<(bool, u64, String), u32> = BTreeMap::new();
    if opts.intern_labels {
        let key = |t: &Token| match t {
            Token::Num(v) => (false, *v as u64, String::new()),
            Token::Name(s) => (true, 0, s.clone()),
        };
        for g in &raw.graphs {
            for v in &g.2 {
                ids.insert(key(&v.1), 0);
            }
            for e in &g.3 {
                ids.insert(key(&e.2), 0);
            }
        }
        let mut list = Vec::with_capacity(ids.len());
        for (i, (k, id)) in ids.iter_mut().enumerate() {
            *id = i as u32;
            list.push(if k.0 { k.2.clone() } else { k.1.to_string() });
        }
        names = Some(list);
    }
    let lookup = |t: &Token| -> Label {
        match t {
            Token::Num(v) if !opts.intern_labels => Label(*v),
            Token::Num(v) => Label(ids[&(false, *v as u64, String::new())]),
            Token::Name(s) => Label(ids[&(true, 0, s.clone())]),
        }
    };
    let graphs = raw
        .graphs
        .iter()
        .map(|(id, line, vs, es)| RawGraph {
            file_id: *id,
            line: *line,
            vertices: vs.iter().map(|(v, l, no)| (*v, lookup(l), *no)).collect(),
            edges: es.iter().map(|(u, v, l, no)| (*u, *v, lookup(l), *no)).collect(),
        })
        .collect();
    let mut db = GraphDatabase::load(graphs)?;
    if let Some(n) = names {
        db.set_label_names(n);
    }
    Ok(db)
}

/// Writes the database with dense graph and vertex ids.
pub fn write_dataset<W: Write>(db: &GraphDatabase, mut out: W) -> std::io::Result<()> {
    for (gid, g) in db.graphs().iter().enumerate() {
        writeln!(out, "t # {gid}")?;
        for v in 0..g.vertex_count() as u32 {
            writeln!(out, "v {v} {}", db.label_name(g.vertex_label(v)))?;
        }
        for e in g.edges() {
            writeln!(out, "e {} {} {}", e.u, e.v, db.label_name(e.label))?;
        }
    }
    Ok(())
}

/// Writes patterns in the order given. `db` supplies label names.
pub fn write_patterns<W: Write>(patterns: &[MinedPattern], db: &GraphDatabase, mut out: W) -> std::io::Result<()> {
    for p in patterns {
        writeln!(out, "t # {} * {}", p.discovery_index, p.support)?;
        for (v, l) in p.code.vertex_labels().into_iter().enumerate() {
            writeln!(out, "v {v} {}", db.label_name(l))?;
        }
        for t in &p.code {
            writeln!(out, "e {} {} {}", t.from, t.to, db.label_name(t.edge_label))?;
        }
        write!(out, "x")?;
        for g in &p.graphs {
            write!(out, " {g}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}
