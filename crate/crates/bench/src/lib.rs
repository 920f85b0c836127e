//! Benchmarks for the census engine live in `benches/`.
