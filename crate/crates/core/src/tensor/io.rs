//! The `MYT1` tensor dump: magic `b"MYT1"`, a `u8` rank, `rank` little-endian
//! `u32` dimensions, then the row-major little-endian `f32` payload.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::Tensor;
use crate::error::{Error, Result};

pub const MYT_MAGIC: &[u8; 4] = b"MYT1";

pub fn write_myt<W: Write>(mut w: W, tensor: &Tensor) -> Result<()> {
    let rank = u8::try_from(tensor.rank())
        .map_err(|_| Error::invalid("write_myt", format!("rank {} exceeds 255", tensor.rank())))?;
    w.write_all(MYT_MAGIC)?;
    w.write_all(&[rank])?;
    for &d in tensor.shape() {
        let d = u32::try_from(d)
            .map_err(|_| Error::invalid("write_myt", format!("dimension {d} exceeds u32")))?;
        w.write_all(&d.to_le_bytes())?;
    }
    let mut payload = Vec::with_capacity(tensor.numel() * 4);
    for v in tensor.data() {
        payload.extend_from_slice(&v.to_le_bytes());
    }
    w.write_all(&payload)?;
    Ok(())
}

pub fn read_myt<R: Read>(mut r: R) -> Result<Tensor> {
    let fmt = |msg: String| Error::Format { what: "MYT1 dump", msg };
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic).map_err(|e| fmt(format!("header: {e}")))?;
    if &magic != MYT_MAGIC {
        return Err(fmt(format!("bad magic {magic:?}")));
    }
    let mut rank = [0u8; 1];
    r.read_exact(&mut rank).map_err(|e| fmt(format!("rank: {e}")))?;
    let mut shape = Vec::with_capacity(rank[0] as usize);
    for _ in 0..rank[0] {
        let mut d = [0u8; 4];
        r.read_exact(&mut d).map_err(|e| fmt(format!("dims: {e}")))?;
        shape.push(u32::from_le_bytes(d) as usize);
    }
    let numel = shape.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d));
    let numel = numel.ok_or_else(|| fmt("element count overflows".into()))?;
    let mut payload = Vec::new();
    r.read_to_end(&mut payload)?;
    if payload.len() != numel * 4 {
        return Err(fmt(format!(
            "payload has {} bytes, shape {shape:?} needs {}",
            payload.len(),
            numel * 4
        )));
    }
    let data = payload
        .chunks_exact(4)
        .map(|b| f32::from_le_bytes([b[0], b[1], b[2], b[3]]))
        .collect();
    Tensor::new(&shape, data)
}

pub fn write_myt_file(path: impl AsRef<Path>, tensor: &Tensor) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_myt(&mut w, tensor)?;
    w.flush()?;
    Ok(())
}

pub fn read_myt_file(path: impl AsRef<Path>) -> Result<Tensor> {
    read_myt(BufReader::new(File::open(path)?))
}
