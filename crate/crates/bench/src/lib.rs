//! Criterion benchmarks for `parkhull`; run with `cargo bench -p parkhull-bench`.
