//! Criterion benchmarks for `unimoments`; see `benches/`.
