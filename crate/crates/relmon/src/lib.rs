//! File formats, parallel drivers and the command-line front end for
//! [`relmon_core`].

pub mod cli;
pub mod gram_dump;
pub mod parallel;
pub mod report;
pub mod selftest;
pub mod text;

/// Class counts by size for `e = 0..=8`.
pub const CLASS_COUNTS: [usize; 9] = [1, 1, 2, 5, 16, 63, 318, 2045, 16999];

/// Labeled partial orders on `e = 0..=5` elements.
pub const LABELED_COUNTS: [u64; 6] = [1, 1, 3, 19, 219, 4231];

/// Published radical dimensions for `n = 0..=8`.
pub const PUBLISHED_RADICAL: [&str; 9] = [
    "0",
    "0",
    "0",
    "42",
    "32616",
    "29446050",
    "67860904320",
    "562649705679642",
    "18446568932288588616",
];
