//! Frequent and closed connected subgraph mining over a database of small
//! labeled undirected graphs.
//!
//! [`mine`] runs either a plain gSpan search or the closed-pattern search
//! with early termination. The [`oracle`] module holds slow brute-force
//! counterparts used for validation.

pub mod cgspan;
pub mod dfs;
pub mod embedding;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod gspan;
pub mod io;
pub mod miner;
pub mod oracle;

pub use cgspan::{mine_closed, ClosedMiner, EtfRule};
pub use dfs::{min_dfs_code, DfsCode, EdgeTuple};
pub use error::{CodeError, ConfigError, GraphError, ParseError};
pub use graph::{GraphDatabase, Label, LabeledGraph};
pub use gspan::mine_frequent;
pub use io::{parse_dataset, write_dataset, write_patterns, ParseOptions};
pub use miner::{mine, MinSupport, MinedPattern, MiningConfig, MiningResult, MiningStats, Mode};
