//! Binary dump of a Gram matrix: row-major `u32` little-endian data plus a
//! JSON header next to it.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use relmon_core::oracle::GramMatrix;
use serde::{Deserialize, Serialize};

pub const ENCODING: &str = "u32-le-row-major";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramHeader {
    pub n: usize,
    pub m: usize,
    pub encoding: String,
}

/// Header path for a data file: `<data>.json`.
pub fn header_path(data: &Path) -> PathBuf {
    let mut s = data.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

pub fn encode(g: &GramMatrix) -> Vec<u8> {
    g.entries.iter().flat_map(|v| v.to_le_bytes()).collect()
}

/// Writes the data file and its header, returning the header.
pub fn write(g: &GramMatrix, data: &Path) -> io::Result<GramHeader> {
    let header = GramHeader { n: g.n, m: g.m, encoding: ENCODING.to_string() };
    fs::File::create(data)?.write_all(&encode(g))?;
    let mut json = serde_json::to_string_pretty(&header).map_err(io::Error::other)?;
    json.push('\n');
    fs::write(header_path(data), json)?;
    Ok(header)
}

/// Reads a dump back as `(header, entries)`.
pub fn read(data: &Path) -> io::Result<(GramHeader, Vec<u32>)> {
    let header: GramHeader =
        serde_json::from_slice(&fs::read(header_path(data))?).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?;
    if header.encoding != ENCODING {
        return Err(io::Error::new(io::ErrorKind::InvalidData, "unknown encoding"));
    }
    let bytes = fs::read(data)?;
    if bytes.len() != header.m * header.m * 4 {
        return Err(io::Error::new(io::ErrorKind::InvalidData, "data length does not match header"));
    }
    let entries = bytes.chunks_exact(4).map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]])).collect();
    Ok((header, entries))
}
