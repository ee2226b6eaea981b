//! Frequent subgraph mining by DFS code tree traversal.

use std::sync::Arc;

use crate::dfs::DfsCode;
use crate::embedding::{frequent_single_edges, frequent_triples, occurrence, rightmost_extensions, support, EmbeddingList, FrequentTriples};
use crate::error::ConfigError;
use crate::graph::GraphDatabase;
use crate::miner::{finish, MinedPattern, MiningConfig, MiningResult, MiningStats, Mode};

/// All frequent connected patterns with at least one edge, in pre-order.
pub fn mine_frequent(db: &GraphDatabase, cfg: &MiningConfig) -> Result<Vec<MinedPattern>, ConfigError> {
    let cfg = MiningConfig {
        mode: Mode::Frequent,
        ..cfg.clone()
    };
    Ok(run(db, &cfg)?.patterns)
}

pub(crate) fn run(db: &GraphDatabase, cfg: &MiningConfig) -> Result<MiningResult, ConfigError> {
    let min_sup = cfg.min_support.threshold(db.len())?;
    let mut m = Gspan {
        db,
        cfg,
        min_sup,
        triples: frequent_triples(db, min_sup),
        out: Vec::new(),
        stats: MiningStats {
            min_support: min_sup,
            ..Default::default()
        },
    };
    for (code, list) in frequent_single_edges(db, min_sup) {
        m.visit(code, Arc::new(list));
    }
    Ok(finish(m.out, m.stats))
}

struct Gspan<'a> {
    db: &'a GraphDatabase,
    cfg: &'a MiningConfig,
    min_sup: usize,
    triples: FrequentTriples,
    out: Vec<MinedPattern>,
    stats: MiningStats,
}

impl Gspan<'_> {
    fn visit(&mut self, code: DfsCode, list: Arc<EmbeddingList>) {
        if !code.is_min() {
            self.stats.non_minimal += 1;
            return;
        }
        self.stats.visited_nodes += 1;
        self.out.push(pattern(&code, &list, self.stats.visited_nodes, self.cfg.emit_embeddings));
        if self.cfg.max_pattern_edges.is_some_and(|m| code.len() >= m) {
            return;
        }
        for (t, child) in rightmost_extensions(&code, &list, self.db, Some(&self.triples)) {
            if support(&child) >= self.min_sup {
                self.visit(code.extended(t), Arc::new(child));
            }
        }
    }
}

pub(crate) fn pattern(code: &DfsCode, list: &Arc<EmbeddingList>, index: usize, keep: bool) -> MinedPattern {
    MinedPattern {
        code: code.clone(),
        support: support(list),
        occurrence: occurrence(list),
        graphs: list.graph_ids(),
        discovery_index: index,
        embeddings: keep.then(|| Arc::clone(list)),
    }
}
