//! Benchmark harness for `fastselect`: seeded dataset generation, a matrix
//! runner over algorithms, distributions, sizes and target ratios, and
//! CSV/TSV reporting with median-of-trials speedup tables.

pub mod datagen;
pub mod experiment;
pub mod report;

pub use datagen::{generate, DatasetSpec, Distribution};
pub use experiment::{run_experiment, Algo, BenchError, BenchRecord, Config, Mode, Verify};
pub use report::{aggregate, read_records, write_records, write_summary, Format, SummaryRow};
