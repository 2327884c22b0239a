//! Binary index file.
//!
//! ```text
//! "GKS2" | version: u32 | nodes: u32 | d_max: f64
//! per node: count: u32, then count × (hub: u32, dist: f64, parent: u32)
//! ```
//! All integers and reals little-endian.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::TwoHopIndex;
use crate::error::IndexError;
use crate::graph::NodeId;

pub const MAGIC: [u8; 4] = *b"GKS2";
pub const FORMAT_VERSION: u32 = 1;

const HEADER_LEN: usize = 4 + 4 + 4 + 8;
const ENTRY_LEN: usize = 4 + 8 + 4;

pub(super) fn encoded_len(nodes: usize, entries: usize) -> usize {
    HEADER_LEN + 4 * nodes + ENTRY_LEN * entries
}

impl TwoHopIndex {
    pub fn write_to<W: Write>(&self, mut out: W) -> io::Result<()> {
        out.write_all(&MAGIC)?;
        out.write_all(&FORMAT_VERSION.to_le_bytes())?;
        out.write_all(&(self.node_count() as u32).to_le_bytes())?;
        out.write_all(&self.d_max.to_le_bytes())?;
        for v in 0..self.node_count() {
            let range = self.offsets[v]..self.offsets[v + 1];
            out.write_all(&(range.len() as u32).to_le_bytes())?;
            for i in range {
                out.write_all(&self.hubs[i].0.to_le_bytes())?;
                out.write_all(&self.dists[i].to_le_bytes())?;
                out.write_all(&self.parents[i].0.to_le_bytes())?;
            }
        }
        out.flush()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut buf = Vec::with_capacity(self.stats().bytes);
        self.write_to(&mut buf).expect("writing to a Vec cannot fail");
        buf
    }

    pub fn read_from<R: Read>(mut input: R) -> Result<Self, IndexError> {
        let mut magic = [0u8; 4];
        read_exact(&mut input, &mut magic)?;
        if magic != MAGIC {
            return Err(IndexError::BadMagic);
        }
        let version = read_u32(&mut input)?;
        if version != FORMAT_VERSION {
            return Err(IndexError::Version(version));
        }
        let n = read_u32(&mut input)? as usize;
        let d_max = read_f64(&mut input)?;
        if d_max.is_nan() || d_max <= 0.0 {
            return Err(IndexError::Corrupt(format!("d_max {d_max}")));
        }

        let mut offsets = Vec::with_capacity(n + 1);
        let (mut hubs, mut dists, mut parents) = (Vec::new(), Vec::new(), Vec::new());
        offsets.push(0);
        for v in 0..n {
            let count = read_u32(&mut input)? as usize;
            for k in 0..count {
                let hub = read_u32(&mut input)?;
                let dist = read_f64(&mut input)?;
                let parent = read_u32(&mut input)?;
                if hub as usize >= n || parent as usize >= n {
                    return Err(IndexError::Corrupt(format!("node {v}: id out of range")));
                }
                if k > 0 && hubs.last().is_some_and(|&NodeId(prev)| prev >= hub) {
                    return Err(IndexError::Corrupt(format!("node {v}: hubs not ascending")));
                }
                if dist.is_nan() || dist < 0.0 {
                    return Err(IndexError::Corrupt(format!("node {v}: distance {dist}")));
                }
                hubs.push(NodeId(hub));
                dists.push(dist);
                parents.push(NodeId(parent));
            }
            offsets.push(hubs.len());
        }
        let mut rest = [0u8; 1];
        if input.read(&mut rest)? != 0 {
            return Err(IndexError::Corrupt("trailing bytes".into()));
        }
        Ok(TwoHopIndex { d_max, offsets, hubs, dists, parents })
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, IndexError> {
        Self::read_from(bytes)
    }

    pub fn save(&self, path: &Path) -> Result<(), IndexError> {
        self.write_to(BufWriter::new(File::create(path)?))?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, IndexError> {
        Self::read_from(BufReader::new(File::open(path)?))
    }
}

fn read_exact<R: Read>(input: &mut R, buf: &mut [u8]) -> Result<(), IndexError> {
    input.read_exact(buf).map_err(|e| match e.kind() {
        io::ErrorKind::UnexpectedEof => IndexError::Truncated,
        _ => IndexError::Io(e),
    })
}

fn read_u32<R: Read>(input: &mut R) -> Result<u32, IndexError> {
    let mut b = [0u8; 4];
    read_exact(input, &mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_f64<R: Read>(input: &mut R) -> Result<f64, IndexError> {
    let mut b = [0u8; 8];
    read_exact(input, &mut b)?;
    Ok(f64::from_le_bytes(b))
}
