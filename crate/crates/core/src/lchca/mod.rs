//! Linear cellular automata over `F_p`: rules, stepping, classification,
//! cycle structure and uniformity statistics.

mod automaton;
mod config;
mod cycles;
mod rule;
pub mod specfile;
mod stats;

pub use automaton::{classify, Classification, CycleClass, CycleLength, Lchca, Structure};
pub use config::Configuration;
pub use cycles::{enumerate_cycles, is_bijection_at, Cycle, MAX_ENUMERATION};
pub use rule::{build_matrix, find_hybrid_rule, RuleSpec};
pub use specfile::CaSpecFile;
pub use stats::{uniformity_report, uniformity_report_parallel, UniformityReport};

#[cfg(test)]
mod proptests;
