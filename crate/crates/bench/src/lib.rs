//! Criterion benchmarks for the determinant kernels; see `benches/`.
