//! Criterion benchmarks for `sglab`; see `benches/`.
