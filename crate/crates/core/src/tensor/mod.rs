//! Dense row-major `f32` tensors and the handful of kernels the network is
//! assembled from.
//!
//! Feature maps are always `C×H×W` (no batch axis). Reductions accumulate in
//! `f64` and visit their terms in a fixed lexicographic order, so a kernel
//! returns the same bits whether it runs on one thread or many.

mod io;
mod ops;

pub use io::{read_myt, read_myt_file, write_myt, write_myt_file, MYT_MAGIC};
pub use ops::{
    activate, batch_norm_infer, conv2d, elementwise, gelu, layer_norm, silu, ActivationKind,
    BatchNorm, ConvLayer, ConvSpec, ElementwiseOp, LayerNorm,
};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Tensor {
    shape: Vec<usize>,
    data: Vec<f32>,
}

impl Tensor {
    pub fn new(shape: &[usize], data: Vec<f32>) -> Result<Self> {
        check_shape(shape)?;
        let numel: usize = shape.iter().product();
        if numel != data.len() {
            return Err(Error::shape("Tensor::new", "element count", numel, data.len()));
        }
        Ok(Self {
            shape: shape.to_vec(),
            data,
        })
    }

    /// Panics on an invalid shape; meant for shapes known statically.
    pub fn zeros(shape: &[usize]) -> Self {
        Self::full(shape, 0.0)
    }

    pub fn full(shape: &[usize], value: f32) -> Self {
        check_shape(shape).expect("invalid tensor shape");
        let numel = shape.iter().product();
        Self {
            shape: shape.to_vec(),
            data: vec![value; numel],
        }
    }

    pub fn from_fn(shape: &[usize], f: impl FnMut(usize) -> f32) -> Self {
        check_shape(shape).expect("invalid tensor shape");
        let numel = shape.iter().product();
        Self {
            shape: shape.to_vec(),
            data: (0..numel).map(f).collect(),
        }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn rank(&self) -> usize {
        self.shape.len()
    }

    pub fn numel(&self) -> usize {
        self.data.len()
    }

    pub fn data(&self) -> &[f32] {
        &self.data
    }

    pub fn into_data(self) -> Vec<f32> {
        self.data
    }

    /// Interprets the tensor as `C×H×W`.
    pub fn dims3(&self, op: &'static str) -> Result<(usize, usize, usize)> {
        match self.shape[..] {
            [c, h, w] => Ok((c, h, w)),
            _ => Err(Error::shape(op, "rank", 3, self.rank())),
        }
    }

    pub fn at3(&self, c: usize, h: usize, w: usize) -> f32 {
        let (_, hh, ww) = (self.shape[0], self.shape[1], self.shape[2]);
        self.data[(c * hh + h) * ww + w]
    }

    pub fn reshape(&self, shape: &[usize]) -> Result<Self> {
        Self::new(shape, self.data.clone())
    }

    pub fn map(&self, f: impl Fn(f32) -> f32) -> Self {
        Self {
            shape: self.shape.clone(),
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn scale(&self, s: f32) -> Self {
        self.map(|v| v * s)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// Largest elementwise absolute difference; `f32::INFINITY` on shape mismatch.
    pub fn max_abs_diff(&self, other: &Tensor) -> f32 {
        if self.shape != other.shape {
            return f32::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f32::max)
    }

    /// Bitwise equality, distinguishing `-0.0` from `0.0`.
    pub fn bit_eq(&self, other: &Tensor) -> bool {
        self.shape == other.shape
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| a.to_bits() == b.to_bits())
    }

    /// Concatenates `C_i×H×W` maps along channels.
    pub fn concat_channels(parts: &[&Tensor]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::invalid("concat_channels", "no inputs"))?;
        let (_, h, w) = first.dims3("concat_channels")?;
        let mut channels = 0;
        let mut data = Vec::new();
        for part in parts {
            let (c, ph, pw) = part.dims3("concat_channels")?;
            if ph != h {
                return Err(Error::shape("concat_channels", "height", h, ph));
            }
            if pw != w {
                return Err(Error::shape("concat_channels", "width", w, pw));
            }
            channels += c;
            data.extend_from_slice(&part.data);
        }
        Self::new(&[channels, h, w], data)
    }

    /// Splits a `C×H×W` map into channels `[0, at)` and `[at, C)`.
    pub fn split_channels(&self, at: usize) -> Result<(Self, Self)> {
        let (c, h, w) = self.dims3("split_channels")?;
        if at == 0 || at >= c {
            return Err(Error::invalid(
                "split_channels",
                format!("split point {at} outside (0, {c})"),
            ));
        }
        let (lo, hi) = self.data.split_at(at * h * w);
        Ok((
            Self::new(&[at, h, w], lo.to_vec())?,
            Self::new(&[c - at, h, w], hi.to_vec())?,
        ))
    }

    /// Swaps the H and W axes of a `C×H×W` map.
    pub fn transpose_hw(&self) -> Result<Self> {
        let (c, h, w) = self.dims3("transpose_hw")?;
        let mut data = vec![0.0; self.numel()];
        for ch in 0..c {
            for y in 0..h {
                for x in 0..w {
                    data[(ch * w + x) * h + y] = self.data[(ch * h + y) * w + x];
                }
            }
        }
        Self::new(&[c, w, h], data)
    }

    /// 2× nearest-neighbour upsampling of a `C×H×W` map.
    pub fn upsample_nearest2x(&self) -> Result<Self> {
        let (c, h, w) = self.dims3("upsample_nearest2x")?;
        let (oh, ow) = (2 * h, 2 * w);
        let mut data = Vec::with_capacity(c * oh * ow);
        for ch in 0..c {
            for y in 0..oh {
                let row = &self.data[(ch * h + y / 2) * w..][..w];
                data.extend((0..ow).map(|x| row[x / 2]));
            }
        }
        Self::new(&[c, oh, ow], data)
    }

    /// Zero-pads H and W at the bottom/right up to the next multiple of `m`.
    pub fn pad_hw_to_multiple(&self, m: usize) -> Result<Self> {
        let (c, h, w) = self.dims3("pad_hw_to_multiple")?;
        if m == 0 {
            return Err(Error::invalid("pad_hw_to_multiple", "multiple must be positive"));
        }
        let (ph, pw) = (h.div_ceil(m) * m, w.div_ceil(m) * m);
        if (ph, pw) == (h, w) {
            return Ok(self.clone());
        }
        let mut data = vec![0.0; c * ph * pw];
        for ch in 0..c {
            for y in 0..h {
                let src = &self.data[(ch * h + y) * w..][..w];
                data[(ch * ph + y) * pw..][..w].copy_from_slice(src);
            }
        }
        Self::new(&[c, ph, pw], data)
    }
}

fn check_shape(shape: &[usize]) -> Result<()> {
    if shape.is_empty() {
        return Err(Error::invalid("tensor", "rank must be at least 1"));
    }
    if let Some(axis) = shape.iter().position(|&d| d == 0) {
        return Err(Error::invalid("tensor", format!("axis {axis} has size 0")));
    }
    Ok(())
}
