//! Benchmarks for the engine live in `benches/engine.rs`.
