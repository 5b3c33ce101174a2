//! Seeded input generators.
//!
//! Every dataset is a pure function of its [`DatasetSpec`]. Randomness comes
//! from ChaCha8 keyed by the seed, and floating-point values are built with
//! the pure-Rust `libm` routines, so the same spec produces the same bytes
//! on every platform.

use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub const UNIFORM_LO: f64 = -5_000_000.0;
pub const UNIFORM_HI: f64 = 5_000_000.0;
pub const GAUSSIAN_SIGMA: f64 = 3_333_333.0;
pub const ALL_EQUAL_VALUE: f64 = 1.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Distribution {
    Uniform,
    Sorted,
    Gaussian,
    ReverseSorted,
    OrganPipe,
    AllEqual,
    /// Integers drawn uniformly from `0..m`.
    FewDistinct(u32),
}

impl Distribution {
    /// One of each kind, with 16 distinct values for `FewDistinct`.
    pub const ALL: [Distribution; 7] = [
        Distribution::Uniform,
        Distribution::Sorted,
        Distribution::Gaussian,
        Distribution::ReverseSorted,
        Distribution::OrganPipe,
        Distribution::AllEqual,
        Distribution::FewDistinct(16),
    ];
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distribution::Uniform => f.write_str("uniform"),
            Distribution::Sorted => f.write_str("sorted"),
            Distribution::Gaussian => f.write_str("gaussian"),
            Distribution::ReverseSorted => f.write_str("reverse"),
            Distribution::OrganPipe => f.write_str("organ-pipe"),
            Distribution::AllEqual => f.write_str("all-equal"),
            Distribution::FewDistinct(m) => write!(f, "few-distinct:{m}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown distribution `{0}`")]
pub struct UnknownDistribution(pub String);

impl FromStr for Distribution {
    type Err = UnknownDistribution;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || UnknownDistribution(s.to_owned());
        Ok(match s {
            "uniform" => Distribution::Uniform,
            "sorted" => Distribution::Sorted,
            "gaussian" => Distribution::Gaussian,
            "reverse" => Distribution::ReverseSorted,
            "organ-pipe" => Distribution::OrganPipe,
            "all-equal" => Distribution::AllEqual,
            "few-distinct" => Distribution::FewDistinct(16),
            _ => {
                let m = s.strip_prefix("few-distinct:").ok_or_else(bad)?;
                match m.parse::<u32>() {
                    Ok(m) if m > 0 => Distribution::FewDistinct(m),
                    _ => return Err(bad()),
                }
            }
        })
    }
}

impl Serialize for Distribution {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Distribution {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetSpec {
    pub distribution: Distribution,
    pub n: usize,
    pub seed: u64,
}

impl DatasetSpec {
    pub fn new(distribution: Distribution, n: usize, seed: u64) -> Self {
        DatasetSpec { distribution, n, seed }
    }
}

/// Generator for sub-stream `stream` of `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Independent child seed: first word of sub-stream `stream + 1` of `seed`.
/// Stream 0 is what [`generate`] itself draws from.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    stream_rng(seed, stream.wrapping_add(1)).next_u64()
}

/// Uniform on the closed interval `[0, 1]`, 53 bits.
fn unit_closed(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 / ((1u64 << 53) - 1) as f64
}

/// Uniform on `(0, 1]`.
fn unit_open_low(rng: &mut ChaCha8Rng) -> f64 {
    ((rng.next_u64() >> 11) + 1) as f64 / (1u64 << 53) as f64
}

fn uniform(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    (0..n).map(|_| UNIFORM_LO + (UNIFORM_HI - UNIFORM_LO) * unit_closed(rng)).collect()
}

/// Box-Muller, both outputs of each pair used.
fn gaussian(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    while out.len() < n {
        let r = libm::sqrt(-2.0 * libm::log(unit_open_low(rng)));
        let theta = 2.0 * std::f64::consts::PI * unit_closed(rng);
        out.push(GAUSSIAN_SIGMA * r * libm::cos(theta));
        out.push(GAUSSIAN_SIGMA * r * libm::sin(theta));
    }
    out.truncate(n);
    out
}

/// Generates the dataset as 64-bit floats.
pub fn generate(spec: &DatasetSpec) -> Vec<f64> {
    let n = spec.n;
    let mut rng = stream_rng(spec.seed, 0);
    match spec.distribution {
        Distribution::Uniform => uniform(n, &mut rng),
        Distribution::Sorted => {
            let mut v = uniform(n, &mut rng);
            v.sort_by(f64::total_cmp);
            v
        }
        Distribution::Gaussian => gaussian(n, &mut rng),
        Distribution::ReverseSorted => (0..n).map(|i| (n - 1 - i) as f64).collect(),
        Distribution::OrganPipe => (0..n).map(|i| i.min(n - 1 - i) as f64).collect(),
        Distribution::AllEqual => vec![ALL_EQUAL_VALUE; n],
        Distribution::FewDistinct(m) => (0..n)
            .map(|_| ((rng.next_u64() as u128 * m as u128) >> 64) as f64)
            .collect(),
    }
}

/// The same dataset truncated toward zero into 64-bit integers.
pub fn generate_i64(spec: &DatasetSpec) -> Vec<i64> {
    generate(spec).into_iter().map(|x| x as i64).collect()
}

/// The same dataset truncated toward zero into 32-bit integers (saturating).
pub fn generate_i32(spec: &DatasetSpec) -> Vec<i32> {
    generate(spec).into_iter().map(|x| x as i32).collect()
}

fn sidecar(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

/// Writes `data` as raw little-endian `f64` to `path` and the spec as a
/// one-line JSON document to `path.json`.
pub fn dump(path: &Path, spec: &DatasetSpec, data: &[f64]) -> io::Result<()> {
    let bytes: Vec<u8> = data.iter().flat_map(|x| x.to_le_bytes()).collect();
    fs::write(path, bytes)?;
    let mut json = serde_json::to_string(spec).map_err(io::Error::other)?;
    json.push('\n');
    fs::write(sidecar(path), json)
}

/// Reads a dataset written by [`dump`].
pub fn load(path: &Path) -> io::Result<(DatasetSpec, Vec<f64>)> {
    let spec: DatasetSpec =
        serde_json::from_str(&fs::read_to_string(sidecar(path))?).map_err(io::Error::other)?;
    let bytes = fs::read(path)?;
    if bytes.len() != spec.n * 8 {
        return Err(io::Error::new(
            io::ErrorKind::InvalidData,
            format!("expected {} bytes for n = {}, found {}", spec.n * 8, spec.n, bytes.len()),
        ));
    }
    let data = bytes.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().unwrap())).collect();
    Ok((spec, data))
}
