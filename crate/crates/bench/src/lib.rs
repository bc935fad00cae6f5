//! Benchmark-only crate; see `benches/maps.rs`.
