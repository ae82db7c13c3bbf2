//! Criterion benchmarks for the `noisy-grover` engines; see `benches/engines.rs`.
