//! Benchmarks for `fident-core` live in `benches/`.
