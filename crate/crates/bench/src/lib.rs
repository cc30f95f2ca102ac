//! Benchmark-only crate; see `benches/stability.rs`.
