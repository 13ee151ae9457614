//! Criterion benchmarks for `soinv-core`; see `benches/`.
