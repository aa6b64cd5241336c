//! Criterion benchmarks for the `ginlab` engines live in `benches/`.
//!
//! The workloads are shared here so they can be smoke-tested without criterion.

use ginlab::{gin_staircase, HilbertEngine, MonomialStaircase, PointConfig, Result};

/// Eight general points at the first multiplicity of their divisibility period.
pub fn eight_point_staircase() -> Result<MonomialStaircase> {
    gin_staircase(PointConfig::general(8)?, 102)
}

/// `H(t)` for every `t` from 0 to `top`.
pub fn h0_scan(engine: &HilbertEngine, m: u64, top: u64) -> Result<u64> {
    (0..=top).try_fold(0, |acc, t| Ok(acc + engine.value(m, t)?))
}
