//! Criterion benchmarks for the ordering, prover, model finder and checker live in `benches/`.
