//! Criterion benchmarks for `rapoly-core`; see `benches/`.
