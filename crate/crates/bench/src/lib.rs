//! Benchmarks for the formula and oracle paths live in `benches/`.
