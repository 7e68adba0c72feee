//! Criterion benchmarks for the wall engine live in `benches/`.
