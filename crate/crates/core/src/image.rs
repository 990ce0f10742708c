//! Binary PPM (`P6`) images as `3×H×W` tensors scaled to `[0, 1]`.

use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::tensor::Tensor;

fn bad(msg: impl Into<String>) -> Error {
    Error::Format {
        what: "PPM image",
        msg: msg.into(),
    }
}

pub fn decode_ppm(bytes: &[u8]) -> Result<Tensor> {
    let mut pos = 0;
    let mut fields = Vec::with_capacity(4);
    while fields.len() < 4 {
        while pos < bytes.len() && (bytes[pos].is_ascii_whitespace() || bytes[pos] == b'#') {
            if bytes[pos] == b'#' {
                while pos < bytes.len() && bytes[pos] != b'\n' {
                    pos += 1;
                }
            } else {
                pos += 1;
            }
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() && bytes[pos] != b'#' {
            pos += 1;
        }
        if start == pos {
            return Err(bad("truncated header"));
        }
        fields.push(std::str::from_utf8(&bytes[start..pos]).map_err(|_| bad("non-ASCII header"))?);
    }
    if fields[0] != "P6" {
        return Err(bad(format!("magic {:?}, only binary P6 is supported", fields[0])));
    }
    let num = |s: &str, what: &str| s.parse::<usize>().map_err(|_| bad(format!("bad {what} {s:?}")));
    let (w, h, maxval) = (num(fields[1], "width")?, num(fields[2], "height")?, num(fields[3], "maxval")?);
    if w == 0 || h == 0 {
        return Err(bad("zero-sized image"));
    }
    if maxval == 0 || maxval > 255 {
        return Err(bad(format!("maxval {maxval}; only 8-bit images are supported")));
    }
    // exactly one whitespace byte separates the header from the raster
    pos += 1;
    let raster = bytes.get(pos..pos + 3 * w * h).ok_or_else(|| bad("raster shorter than header declares"))?;
    let plane = w * h;
    let maxval = maxval as f32;
    let data = (0..3 * plane)
        .map(|i| {
            let (c, p) = (i / plane, i % plane);
            raster[p * 3 + c] as f32 / maxval
        })
        .collect();
    Tensor::new(&[3, h, w], data)
}

pub fn read_ppm(path: impl AsRef<Path>) -> Result<Tensor> {
    let mut bytes = Vec::new();
    std::fs::File::open(path)?.read_to_end(&mut bytes)?;
    decode_ppm(&bytes)
}

/// Encodes a `3×H×W` tensor, clamping to `[0, 1]` and rounding to 8 bits.
pub fn encode_ppm(img: &Tensor) -> Result<Vec<u8>> {
    let (c, h, w) = img.dims3("encode_ppm")?;
    if c != 3 {
        return Err(Error::shape("encode_ppm", "channels", 3, c));
    }
    let mut out = format!("P6\n{w} {h}\n255\n").into_bytes();
    let plane = h * w;
    for p in 0..plane {
        for ch in 0..3 {
            out.push((img.data()[ch * plane + p].clamp(0.0, 1.0) * 255.0).round() as u8);
        }
    }
    Ok(out)
}

pub fn write_ppm(path: impl AsRef<Path>, img: &Tensor) -> Result<()> {
    std::fs::File::create(path)?.write_all(&encode_ppm(img)?)?;
    Ok(())
}

/// Deterministic colour test pattern of the given size.
pub fn test_pattern(h: usize, w: usize) -> Tensor {
    let plane = h * w;
    Tensor::from_fn(&[3, h, w], |i| {
        let (c, p) = (i / plane, i % plane);
        let (y, x) = ((p / w) as f32, (p % w) as f32);
        let v = match c {
            0 => (x * 0.11).sin() * (y * 0.07).cos(),
            1 => ((x + y) * 0.05).cos(),
            _ => (x * y * 0.001).sin(),
        };
        ((v * 0.5 + 0.5) * 255.0).round() / 255.0
    })
}
