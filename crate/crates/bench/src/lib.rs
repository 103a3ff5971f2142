//! Fixtures shared by the benchmarks.

use mcda_core::dataset::{default_criteria, generate_dataset};
use mcda_core::DecisionDataset;

/// The bundled dataset.
pub fn bundled() -> DecisionDataset {
    mcda_core::bundled_dataset().expect("bundled dataset is valid")
}

/// A generated dataset with the default criteria catalogue.
pub fn generated(seed: u64, dms: usize, suppliers: usize) -> DecisionDataset {
    generate_dataset(seed, dms, suppliers, &default_criteria()).expect("generator output is valid")
}
