//! Benchmarks for the heckeprod engine live in `benches/`.
