//! CSV/TSV emission, parsing and trial aggregation.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::experiment::{Algo, BenchRecord};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Tsv,
}

impl Format {
    fn delimiter(self) -> u8 {
        match self {
            Format::Csv => b',',
            Format::Tsv => b'\t',
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("bad field: {0}")]
    Field(String),
    #[error("no adaptive run for cell {0}")]
    MissingAdaptive(String),
}

#[derive(Serialize, Deserialize)]
struct Row {
    algo: String,
    dist: String,
    n: usize,
    k_ratio: f64,
    trial: usize,
    seed: u64,
    wall_nanos: u64,
    comparisons: Option<u64>,
    swaps: Option<u64>,
}

pub const RECORD_HEADER: [&str; 9] =
    ["algo", "dist", "n", "k_ratio", "trial", "seed", "wall_nanos", "comparisons", "swaps"];
pub const SUMMARY_HEADER: [&str; 6] = ["algo", "dist", "n", "k_ratio", "median_nanos", "speedup_vs_adaptive"];

fn writer<W: Write>(w: W, format: Format) -> csv::Writer<W> {
    csv::WriterBuilder::new().delimiter(format.delimiter()).has_headers(false).from_writer(w)
}

pub fn write_records<W: Write>(w: W, records: &[BenchRecord], format: Format) -> Result<(), ReportError> {
    let mut out = writer(w, format);
    out.write_record(RECORD_HEADER)?;
    for r in records {
        out.serialize(Row {
            algo: r.algo.to_string(),
            dist: r.dist.to_string(),
            n: r.n,
            k_ratio: r.k_ratio,
            trial: r.trial,
            seed: r.seed,
            wall_nanos: r.wall_nanos,
            comparisons: r.comparisons,
            swaps: r.swaps,
        })?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn read_records<R: Read>(r: R, format: Format) -> Result<Vec<BenchRecord>, ReportError> {
    let mut rdr = csv::ReaderBuilder::new().delimiter(format.delimiter()).from_reader(r);
    let mut out = Vec::new();
    for row in rdr.deserialize::<Row>() {
        let row = row?;
        out.push(BenchRecord {
            algo: row.algo.parse().map_err(|e| ReportError::Field(format!("{e}")))?,
            dist: row.dist.parse().map_err(|e| ReportError::Field(format!("{e}")))?,
            n: row.n,
            k_ratio: row.k_ratio,
            trial: row.trial,
            seed: row.seed,
            wall_nanos: row.wall_nanos,
            comparisons: row.comparisons,
            swaps: row.swaps,
        });
    }
    Ok(out)
}

/// Per-cell median time and its ratio to the adaptive driver's.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SummaryRow {
    pub algo: String,
    pub dist: String,
    pub n: usize,
    pub k_ratio: f64,
    pub median_nanos: f64,
    pub speedup_vs_adaptive: f64,
}

/// Median; the mean of the middle two for even counts.
pub fn median(values: &[f64]) -> f64 {
    assert!(!values.is_empty());
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        (v[m - 1] + v[m]) / 2.0
    }
}

/// Groups records by cell and reports each algorithm's median time against
/// the adaptive driver's median on the same cell.
pub fn aggregate(records: &[BenchRecord]) -> Result<Vec<SummaryRow>, ReportError> {
    type Key = (String, String, usize, u64);
    let mut cells: BTreeMap<(String, usize, u64), BTreeMap<String, Vec<f64>>> = BTreeMap::new();
    let mut ratios: BTreeMap<u64, f64> = BTreeMap::new();
    for r in records {
        let bits = r.k_ratio.to_bits();
        ratios.insert(bits, r.k_ratio);
        cells
            .entry((r.dist.to_string(), r.n, bits))
            .or_default()
            .entry(r.algo.to_string())
            .or_default()
            .push(r.wall_nanos as f64);
    }
    let adaptive = Algo::Adaptive.to_string();
    let mut rows: Vec<(Key, SummaryRow)> = Vec::new();
    for ((dist, n, bits), algos) in cells {
        let k_ratio = ratios[&bits];
        let base = algos
            .get(&adaptive)
            .map(|t| median(t))
            .ok_or_else(|| ReportError::MissingAdaptive(format!("{dist} n={n} k_ratio={k_ratio}")))?;
        for (algo, times) in algos {
            let m = median(&times);
            rows.push((
                (algo.clone(), dist.clone(), n, bits),
                SummaryRow { algo, dist: dist.clone(), n, k_ratio, median_nanos: m, speedup_vs_adaptive: m / base },
            ));
        }
    }
    rows.sort_by(|a, b| {
        (&a.0 .0, &a.0 .1, a.0 .2)
            .cmp(&(&b.0 .0, &b.0 .1, b.0 .2))
            .then(a.1.k_ratio.total_cmp(&b.1.k_ratio))
    });
    Ok(rows.into_iter().map(|(_, r)| r).collect())
}

pub fn write_summary<W: Write>(w: W, rows: &[SummaryRow], format: Format) -> Result<(), ReportError> {
    let mut out = writer(w, format);
    out.write_record(SUMMARY_HEADER)?;
    for r in rows {
        out.serialize(r)?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}
