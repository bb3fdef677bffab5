//! Benchmarks for the scan and the Jacobi-sum tables; run with `cargo bench -p ceresa-bench`.
