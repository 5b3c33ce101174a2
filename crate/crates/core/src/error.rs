use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum SelectError {
    #[error("cannot select from an empty slice")]
    Empty,
    #[error("index {k} out of range for slice of length {len}")]
    OutOfRange { k: usize, len: usize },
}
