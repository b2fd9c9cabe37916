//! Criterion benchmarks for frobsplit; see `benches/`.
