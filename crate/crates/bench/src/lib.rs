//! Criterion benchmarks for crlab-core; see `benches/engine.rs`.
