//! Inputs shared by the benchmarks.

use brauer_core::exact_math::{cyclotomic, IntMatrix};

/// Companion matrices of `Φ_d` for the given indices, as one block sum.
pub fn cyclotomic_block(ds: &[u64]) -> IntMatrix {
    let blocks: Vec<IntMatrix> = ds.iter().map(|&d| IntMatrix::companion(&cyclotomic(d)).expect("monic")).collect();
    IntMatrix::block_diagonal(&blocks)
}
