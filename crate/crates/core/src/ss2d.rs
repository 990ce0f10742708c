//! Two-dimensional selective scan.
//!
//! A `C×H×W` map is unrolled into four 1-D sequences (row-major,
//! column-major and their reversals), each sequence runs through its own
//! selective scan, and the four results are inverse-permuted and summed.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::init::{join, Initializer, Parameters};
use crate::ssm_scan::{selective_scan, softplus, SequenceBatch};
use crate::tensor::{activate, elementwise, ActivationKind, ConvLayer, ConvSpec, ElementwiseOp, LayerNorm, Tensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScanDirection {
    RowMajor,
    RowMajorReversed,
    ColMajor,
    ColMajorReversed,
}

impl ScanDirection {
    /// Also the fixed summation order of [`cross_scan_merge`].
    pub const ALL: [ScanDirection; 4] = [
        ScanDirection::RowMajor,
        ScanDirection::RowMajorReversed,
        ScanDirection::ColMajor,
        ScanDirection::ColMajorReversed,
    ];

    /// `(row, col)` visited at sequence position `t`.
    pub fn position(self, t: usize, h: usize, w: usize) -> (usize, usize) {
        let last = h * w - 1;
        match self {
            ScanDirection::RowMajor => (t / w, t % w),
            ScanDirection::RowMajorReversed => ((last - t) / w, (last - t) % w),
            ScanDirection::ColMajor => (t % h, t / h),
            ScanDirection::ColMajorReversed => ((last - t) % h, (last - t) / h),
        }
    }

    /// Sequence position of `(row, col)`; inverse of [`ScanDirection::position`].
    pub fn index(self, row: usize, col: usize, h: usize, w: usize) -> usize {
        let last = h * w - 1;
        match self {
            ScanDirection::RowMajor => row * w + col,
            ScanDirection::RowMajorReversed => last - (row * w + col),
            ScanDirection::ColMajor => col * h + row,
            ScanDirection::ColMajorReversed => last - (col * h + row),
        }
    }

    /// The direction that visits a transposed map in the same order.
    pub fn transposed(self) -> Self {
        match self {
            ScanDirection::RowMajor => ScanDirection::ColMajor,
            ScanDirection::RowMajorReversed => ScanDirection::ColMajorReversed,
            ScanDirection::ColMajor => ScanDirection::RowMajor,
            ScanDirection::ColMajorReversed => ScanDirection::RowMajorReversed,
        }
    }

    pub fn slot(self) -> usize {
        self as usize
    }
}

/// Four `C×(H·W)` sequences, indexed by [`ScanDirection::slot`].
#[derive(Clone, Debug, PartialEq)]
pub struct DirectionalSequences {
    pub height: usize,
    pub width: usize,
    pub seqs: [Tensor; 4],
}

impl DirectionalSequences {
    pub fn get(&self, dir: ScanDirection) -> &Tensor {
        &self.seqs[dir.slot()]
    }
}

pub fn cross_scan_expand(fm: &Tensor) -> Result<DirectionalSequences> {
    let (c, h, w) = fm.dims3("cross_scan_expand")?;
    let l = h * w;
    let src = fm.data();
    let seqs = ScanDirection::ALL.map(|dir| {
        let mut data = Vec::with_capacity(c * l);
        for ch in 0..c {
            let plane = &src[ch * l..][..l];
            data.extend((0..l).map(|t| {
                let (row, col) = dir.position(t, h, w);
                plane[row * w + col]
            }));
        }
        Tensor::new(&[c, l], data).expect("sequence shape")
    });
    Ok(DirectionalSequences {
        height: h,
        width: w,
        seqs,
    })
}

/// `out[c,h,w] = Σ_dir seq[dir][c, dir.index(h,w)]`, summed in [`ScanDirection::ALL`] order.
pub fn cross_scan_merge(seqs: &DirectionalSequences) -> Result<Tensor> {
    const OP: &str = "cross_scan_merge";
    let (h, w) = (seqs.height, seqs.width);
    let l = h * w;
    let c = seqs.seqs[0].shape()[0];
    for s in &seqs.seqs {
        if s.rank() != 2 {
            return Err(Error::shape(OP, "sequence rank", 2, s.rank()));
        }
        if s.shape()[0] != c {
            return Err(Error::shape(OP, "sequence channels", c, s.shape()[0]));
        }
        if s.shape()[1] != l {
            return Err(Error::shape(OP, "sequence length (H·W)", l, s.shape()[1]));
        }
    }
    let mut out = vec![0.0f32; c * l];
    for ch in 0..c {
        for row in 0..h {
            for col in 0..w {
                let mut acc = 0.0f32;
                for dir in ScanDirection::ALL {
                    acc += seqs.get(dir).data()[ch * l + dir.index(row, col, h, w)];
                }
                out[(ch * h + row) * w + col] = acc;
            }
        }
    }
    Tensor::new(&[c, h, w], out)
}

/// Per-direction projections producing `Δ`, `B`, `C` from the sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectionParams {
    /// `d_inner → dt_rank + 2·d_state`, bias-free.
    pub x_proj: ConvLayer,
    /// `dt_rank → d_inner`, with the softplus bias.
    pub dt_proj: ConvLayer,
    /// `d_inner × d_state`; the transition is `A = −exp(a_log)`.
    pub a_log: Tensor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ss2dDims {
    pub channels: usize,
    pub d_inner: usize,
    pub d_state: usize,
    pub dt_rank: usize,
}

impl Ss2dDims {
    pub fn in_proj(&self) -> ConvSpec {
        ConvSpec::pointwise(self.channels, 2 * self.d_inner)
    }
    pub fn conv(&self) -> ConvSpec {
        ConvSpec::depthwise(self.d_inner, 3).with_bias(true)
    }
    pub fn x_proj(&self) -> ConvSpec {
        ConvSpec::pointwise(self.d_inner, self.dt_rank + 2 * self.d_state)
    }
    pub fn dt_proj(&self) -> ConvSpec {
        ConvSpec::pointwise(self.dt_rank, self.d_inner).with_bias(true)
    }
    pub fn out_proj(&self) -> ConvSpec {
        ConvSpec::pointwise(self.d_inner, self.channels)
    }
}

/// In-projection with gate branch, depthwise conv, four directional scans,
/// LayerNorm, SiLU gate, out-projection.
#[derive(Clone, Debug, PartialEq)]
pub struct Ss2dWeights {
    pub dims: Ss2dDims,
    pub in_proj: ConvLayer,
    pub conv: ConvLayer,
    pub directions: [DirectionParams; 4],
    pub norm: LayerNorm,
    pub out_proj: ConvLayer,
}

impl Ss2dWeights {
    pub fn init(init: &Initializer, path: &str, dims: Ss2dDims) -> Self {
        let directions = ScanDirection::ALL.map(|dir| {
            let p = join(path, &format!("dir{}", dir.slot()));
            let mut dt_proj = init.conv(&join(&p, "dt_proj"), dims.dt_proj());
            dt_proj.bias = Some(init.dt_bias(&join(&p, "dt_proj.bias"), dims.d_inner));
            DirectionParams {
                x_proj: init.conv(&join(&p, "x_proj"), dims.x_proj()),
                dt_proj,
                a_log: init.a_log(dims.d_inner, dims.d_state),
            }
        });
        Self {
            dims,
            in_proj: init.conv(&join(path, "in_proj"), dims.in_proj()),
            conv: init.conv(&join(path, "conv"), dims.conv()),
            directions,
            norm: LayerNorm::identity(dims.d_inner),
            out_proj: init.conv(&join(path, "out_proj"), dims.out_proj()),
        }
    }

    /// All projections, biases and `a_log` zero; LayerNorm identity.
    pub fn zeros(dims: Ss2dDims) -> Self {
        Self {
            dims,
            in_proj: ConvLayer::zeros(dims.in_proj()),
            conv: ConvLayer::zeros(dims.conv()),
            directions: ScanDirection::ALL.map(|_| DirectionParams {
                x_proj: ConvLayer::zeros(dims.x_proj()),
                dt_proj: ConvLayer::zeros(dims.dt_proj()),
                a_log: Tensor::zeros(&[dims.d_inner, dims.d_state]),
            }),
            norm: LayerNorm::identity(dims.d_inner),
            out_proj: ConvLayer::zeros(dims.out_proj()),
        }
    }

    /// Weights for the input `transpose_hw`'d: depthwise taps transposed and
    /// row/column direction parameters swapped.
    pub fn transposed(&self) -> Result<Self> {
        let mut t = self.clone();
        let (c, k) = (self.dims.d_inner, self.conv.spec.kernel_size);
        let kernels = self.conv.weight.reshape(&[c, k, k])?.transpose_hw()?;
        t.conv.weight = kernels.reshape(&self.conv.spec.weight_shape())?;
        for dir in ScanDirection::ALL {
            t.directions[dir.transposed().slot()] = self.directions[dir.slot()].clone();
        }
        Ok(t)
    }
}

impl Parameters for Ss2dWeights {
    fn visit_params(&self, prefix: &str, f: &mut dyn FnMut(&str, &[f32])) {
        self.in_proj.visit_params(&join(prefix, "in_proj"), f);
        self.conv.visit_params(&join(prefix, "conv"), f);
        for (i, d) in self.directions.iter().enumerate() {
            let p = join(prefix, &format!("dir{i}"));
            d.x_proj.visit_params(&join(&p, "x_proj"), f);
            d.dt_proj.visit_params(&join(&p, "dt_proj"), f);
            f(&join(&p, "a_log"), d.a_log.data());
        }
        self.norm.visit_params(&join(prefix, "norm"), f);
        self.out_proj.visit_params(&join(prefix, "out_proj"), f);
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ScanMode {
    #[default]
    Selective,
    /// Every directional scan returns its input unchanged.
    Identity,
}

/// Runs one direction's selective scan over a `d_inner×L` sequence.
pub fn scan_direction(seq: &Tensor, params: &DirectionParams) -> Result<Tensor> {
    const OP: &str = "scan_direction";
    if seq.rank() != 2 {
        return Err(Error::shape(OP, "sequence rank", 2, seq.rank()));
    }
    let (d_inner, l) = (seq.shape()[0], seq.shape()[1]);
    let x = seq.reshape(&[d_inner, 1, l])?;
    let proj = params.x_proj.forward(&x)?;
    let rank = params.dt_proj.spec.in_channels;
    let state = (params.x_proj.spec.out_channels - rank) / 2;
    if params.a_log.shape() != [d_inner, state] {
        return Err(Error::invalid(
            OP,
            format!("a_log shape {:?}, expected [{d_inner}, {state}]", params.a_log.shape()),
        ));
    }
    let rows = proj.data();
    let dt_low = Tensor::new(&[rank, 1, l], rows[..rank * l].to_vec())?;
    let b = rows[rank * l..(rank + state) * l].to_vec();
    let c = rows[(rank + state) * l..].to_vec();
    let delta = params
        .dt_proj
        .forward(&dt_low)?
        .into_data()
        .into_iter()
        .map(|v| softplus(v as f64) as f32)
        .collect();
    let a: Vec<f32> = params.a_log.data().iter().map(|v| -v.exp()).collect();
    let batch = SequenceBatch::new(d_inner, state, l, seq.data().to_vec(), delta, b, c)?;
    Tensor::new(&[d_inner, l], selective_scan(&batch, &a)?)
}

/// Expand, scan each direction, merge. Input and output are `d_inner×H×W`.
pub fn cross_selective_scan(x: &Tensor, directions: &[DirectionParams; 4], mode: ScanMode) -> Result<Tensor> {
    let seqs = cross_scan_expand(x)?;
    let scanned = match mode {
        ScanMode::Identity => seqs,
        ScanMode::Selective => {
            let results: Vec<Result<Tensor>> = ScanDirection::ALL
                .par_iter()
                .map(|&dir| scan_direction(seqs.get(dir), &directions[dir.slot()]))
                .collect();
            let mut out = Vec::with_capacity(4);
            for r in results {
                out.push(r?);
            }
            DirectionalSequences {
                height: seqs.height,
                width: seqs.width,
                seqs: out.try_into().expect("four directions"),
            }
        }
    };
    cross_scan_merge(&scanned)
}

pub fn ss2d_apply(fm: &Tensor, w: &Ss2dWeights) -> Result<Tensor> {
    ss2d_apply_with(fm, w, ScanMode::Selective)
}

pub fn ss2d_apply_with(fm: &Tensor, w: &Ss2dWeights, mode: ScanMode) -> Result<Tensor> {
    let (c, _, _) = fm.dims3("ss2d_apply")?;
    if c != w.dims.channels {
        return Err(Error::shape("ss2d_apply", "input channels", w.dims.channels, c));
    }
    let (x, z) = w.in_proj.forward(fm)?.split_channels(w.dims.d_inner)?;
    let x = activate(&w.conv.forward(&x)?, ActivationKind::Silu);
    let y = cross_selective_scan(&x, &w.directions, mode)?;
    let y = w.norm.forward(&y)?;
    let y = elementwise(&y, &activate(&z, ActivationKind::Silu), ElementwiseOp::Mul)?;
    w.out_proj.forward(&y)
}
