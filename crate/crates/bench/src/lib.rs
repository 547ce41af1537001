//! Shared inputs for the benchmarks.

use specmult::Form;

/// Reduced forms across the small discriminants used throughout the test suite.
pub fn sample_forms() -> Vec<Form> {
    [-3i64, -4, -7, -8, -11, -15, -20, -23]
        .into_iter()
        .flat_map(|d| specmult::qform::class_group(d).expect("valid discriminant"))
        .collect()
}
