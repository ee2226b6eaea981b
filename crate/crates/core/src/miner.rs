//! Mining configuration, results and the shared entry point.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::dfs::DfsCode;
use crate::embedding::EmbeddingList;
use crate::error::ConfigError;
use crate::graph::GraphDatabase;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// All frequent connected patterns.
    Frequent,
    /// Closed patterns with early termination and failure handling.
    Closed,
    /// Closed patterns with early termination but no failure handling.
    ClosedNoEtf,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Frequent => "frequent",
            Mode::Closed => "closed",
            Mode::ClosedNoEtf => "closed-no-etf",
        })
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "frequent" => Ok(Mode::Frequent),
            "closed" => Ok(Mode::Closed),
            "closed-no-etf" | "closed_no_etf" => Ok(Mode::ClosedNoEtf),
            _ => Err(format!("unknown mode '{s}'")),
        }
    }
}

/// Minimum support as a fraction of the database or an absolute count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MinSupport {
    Fraction(f64),
    Absolute(usize),
}

impl MinSupport {
    /// Absolute threshold for a database of `n` graphs.
    pub fn threshold(&self, n: usize) -> Result<usize, ConfigError> {
        match *self {
            MinSupport::Absolute(0) => Err(ConfigError::NonPositiveSupport(0.0)),
            MinSupport::Absolute(k) => Ok(k),
            MinSupport::Fraction(f) if !(f > 0.0) => Err(ConfigError::NonPositiveSupport(f)),
            MinSupport::Fraction(f) if f > 1.0 => Err(ConfigError::FractionOutOfRange(f)),
            MinSupport::Fraction(f) => {
                // guard against 0.1 * 340 = 34.00000000000001
                let raw = f * n as f64;
                let rounded = raw.round();
                let t = if (raw - rounded).abs() < 1e-9 { rounded } else { raw.ceil() };
                Ok((t as usize).max(1))
            }
        }
    }
}

impl FromStr for MinSupport {
    type Err = ConfigError;

    /// Values in (0, 1] are fractions and larger integers are counts, so `1`
    /// means every graph.
    fn from_str(s: &str) -> Result<Self, ConfigError> {
        let s = s.trim();
        let v: f64 = s
            .parse()
            .map_err(|_| ConfigError::InvalidSupport(s.to_string()))?;
        if !(v > 0.0) {
            return Err(ConfigError::NonPositiveSupport(v));
        }
        if v <= 1.0 {
            return Ok(MinSupport::Fraction(v));
        }
        if v.fract() != 0.0 {
            return Err(ConfigError::FractionOutOfRange(v));
        }
        Ok(MinSupport::Absolute(v as usize))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MiningConfig {
    pub min_support: MinSupport,
    pub mode: Mode,
    /// Keep each pattern's embedding list in the output.
    pub emit_embeddings: bool,
    /// Stop growing patterns at this many edges.
    pub max_pattern_edges: Option<usize>,
}

impl MiningConfig {
    pub fn new(min_support: MinSupport, mode: Mode) -> Self {
        MiningConfig {
            min_support,
            mode,
            emit_embeddings: false,
            max_pattern_edges: None,
        }
    }

    pub fn absolute(count: usize, mode: Mode) -> Self {
        Self::new(MinSupport::Absolute(count), mode)
    }
}

/// One mined pattern.
#[derive(Debug, Clone)]
pub struct MinedPattern {
    /// Minimum DFS code.
    pub code: DfsCode,
    pub support: usize,
    /// Number of isomorphisms into the database.
    pub occurrence: usize,
    /// Sorted ids of the graphs containing the pattern.
    pub graphs: Vec<u32>,
    /// Rank in the pre-order traversal among emitted patterns.
    pub discovery_index: usize,
    pub embeddings: Option<Arc<EmbeddingList>>,
}

impl PartialEq for MinedPattern {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code
            && self.support == other.support
            && self.occurrence == other.occurrence
            && self.graphs == other.graphs
            && self.discovery_index == other.discovery_index
    }
}

/// Counters collected during one run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MiningStats {
    pub min_support: usize,
    pub pattern_count: usize,
    /// Minimal codes visited in the search tree.
    pub visited_nodes: usize,
    /// Codes discarded as non-minimal.
    pub non_minimal: usize,
    pub early_terminations_applied: usize,
    pub early_terminations_rejected: usize,
    /// Rejections decided by the collision check rather than the trie.
    pub collision_rejections: usize,
    /// Codes registered as early termination failure sources.
    pub trie_codes: usize,
    pub trie_nodes: usize,
    pub cght_keys: usize,
}

#[derive(Debug, Clone, Default)]
pub struct MiningResult {
    /// Sorted by discovery index.
    pub patterns: Vec<MinedPattern>,
    pub stats: MiningStats,
}

/// Runs the miner selected by `cfg.mode`.
pub fn mine(db: &GraphDatabase, cfg: &MiningConfig) -> Result<MiningResult, ConfigError> {
    match cfg.mode {
        Mode::Frequent => crate::gspan::run(db, cfg),
        Mode::Closed | Mode::ClosedNoEtf => crate::cgspan::run(db, cfg),
    }
}

/// Collects output in visit order and renumbers discovery indices densely.
pub(crate) fn finish(mut patterns: Vec<MinedPattern>, mut stats: MiningStats) -> MiningResult {
    patterns.sort_by_key(|p| p.discovery_index);
    for (i, p) in patterns.iter_mut().enumerate() {
        p.discovery_index = i;
    }
    stats.pattern_count = patterns.len();
    MiningResult { patterns, stats }
}
