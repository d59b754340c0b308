//! Benchmarks for altlink-core live in `benches/`.
