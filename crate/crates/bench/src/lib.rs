//! Workload sizes shared by the benchmarks in `benches/`.

/// `(n, boxes)` pairs for the enumerator.
pub const ENUMERATION: &[(u32, u64)] = &[(3, 36), (5, 40), (6, 36)];

/// `(n, order)` pairs for the two B-series pipelines.
pub const SERIES: &[(u32, i64)] = &[(3, 100), (5, 40), (7, 20)];

/// Truncation orders for the theta kernels.
pub const THETA_ORDERS: &[i64] = &[300, 1000];
