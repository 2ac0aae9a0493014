//! Criterion benchmarks for `quadperiod`; see `benches/sums.rs`.
