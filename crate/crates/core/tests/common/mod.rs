//! Straight-line f64 reference implementations, written from the layer
//! definitions without calling into the library's compute paths.

#![allow(dead_code)]

use myolo::backbone::ModelWeights;
use myolo::blocks::{LsWeights, OdssWeights, RgWeights};
use myolo::ss2d::Ss2dWeights;
use myolo::tensor::{BatchNorm, ConvLayer, LayerNorm};
use myolo::Tensor;

/// `C×H×W` buffer in f64.
#[derive(Clone, Debug)]
pub struct Map {
    pub c: usize,
    pub h: usize,
    pub w: usize,
    pub v: Vec<f64>,
}

impl Map {
    pub fn from_tensor(t: &Tensor) -> Self {
        let s = t.shape();
        Self { c: s[0], h: s[1], w: s[2], v: t.data().iter().map(|&x| x as f64).collect() }
    }

    pub fn at(&self, c: usize, y: usize, x: usize) -> f64 {
        self.v[(c * self.h + y) * self.w + x]
    }

    pub fn zip(&self, o: &Map, f: impl Fn(f64, f64) -> f64) -> Map {
        assert_eq!((self.c, self.h, self.w), (o.c, o.h, o.w));
        Map { v: self.v.iter().zip(&o.v).map(|(a, b)| f(*a, *b)).collect(), ..self.clone() }
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Map {
        Map { v: self.v.iter().map(|&a| f(a)).collect(), ..self.clone() }
    }

    pub fn cat(&self, o: &Map) -> Map {
        assert_eq!((self.h, self.w), (o.h, o.w));
        let mut v = self.v.clone();
        v.extend_from_slice(&o.v);
        Map { c: self.c + o.c, v, ..self.clone() }
    }

    pub fn split(&self, at: usize) -> (Map, Map) {
        let n = at * self.h * self.w;
        (
            Map { c: at, v: self.v[..n].to_vec(), ..self.clone() },
            Map { c: self.c - at, v: self.v[n..].to_vec(), ..self.clone() },
        )
    }
}

/// Max `|a − b| / max(1, |b|)` between a tensor and a reference map.
pub fn max_rel(t: &Tensor, r: &Map) -> f64 {
    assert_eq!(t.shape(), &[r.c, r.h, r.w]);
    t.data()
        .iter()
        .zip(&r.v)
        .map(|(&a, &b)| (a as f64 - b).abs() / b.abs().max(1.0))
        .fold(0.0, f64::max)
}

pub fn conv(x: &Map, layer: &ConvLayer) -> Map {
    let s = layer.spec;
    let (k, st, pad, g) = (s.kernel_size, s.stride, s.padding as isize, s.groups);
    let cin_g = s.in_channels / g;
    let cout_g = s.out_channels / g;
    let oh = (x.h + 2 * s.padding - k) / st + 1;
    let ow = (x.w + 2 * s.padding - k) / st + 1;
    let wt = layer.weight.data();
    let mut v = vec![0.0; s.out_channels * oh * ow];
    for o in 0..s.out_channels {
        let grp = o / cout_g;
        for oy in 0..oh {
            for ox in 0..ow {
                let mut acc = layer.bias.as_ref().map_or(0.0, |b| b.data()[o] as f64);
                for ci in 0..cin_g {
                    for ky in 0..k {
                        for kx in 0..k {
                            let iy = (oy * st + ky) as isize - pad;
                            let ix = (ox * st + kx) as isize - pad;
                            if iy < 0 || ix < 0 || iy >= x.h as isize || ix >= x.w as isize {
                                continue;
                            }
                            let wv = wt[((o * cin_g + ci) * k + ky) * k + kx] as f64;
                            acc += wv * x.at(grp * cin_g + ci, iy as usize, ix as usize);
                        }
                    }
                }
                v[(o * oh + oy) * ow + ox] = acc;
            }
        }
    }
    Map { c: s.out_channels, h: oh, w: ow, v }
}

pub fn batch_norm(x: &Map, bn: &BatchNorm) -> Map {
    let mut out = x.clone();
    for c in 0..x.c {
        let scale = bn.gamma[c] as f64 / (bn.var[c] as f64 + bn.eps as f64).sqrt();
        for p in 0..x.h * x.w {
            let i = c * x.h * x.w + p;
            out.v[i] = (x.v[i] - bn.mean[c] as f64) * scale + bn.beta[c] as f64;
        }
    }
    out
}

pub fn layer_norm(x: &Map, ln: &LayerNorm) -> Map {
    let mut out = x.clone();
    let hw = x.h * x.w;
    for p in 0..hw {
        let vals: Vec<f64> = (0..x.c).map(|c| x.v[c * hw + p]).collect();
        let mean = vals.iter().sum::<f64>() / x.c as f64;
        let var = vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / x.c as f64;
        for c in 0..x.c {
            out.v[c * hw + p] = (vals[c] - mean) / (var + ln.eps as f64).sqrt() * ln.gamma[c] as f64 + ln.beta[c] as f64;
        }
    }
    out
}

pub fn silu(x: f64) -> f64 {
    x / (1.0 + (-x).exp())
}

pub fn gelu(x: f64) -> f64 {
    0.5 * x * (1.0 + ((2.0 / std::f64::consts::PI).sqrt() * (x + 0.044715 * x * x * x)).tanh())
}

fn softplus(x: f64) -> f64 {
    if x > 20.0 {
        x
    } else {
        x.exp().ln_1p()
    }
}

/// `(row, col)` visited at step `t` for direction `d` in the order
/// row-major, reversed row-major, column-major, reversed column-major.
pub fn visit(d: usize, t: usize, h: usize, w: usize) -> (usize, usize) {
    let r = h * w - 1 - t;
    match d {
        0 => (t / w, t % w),
        1 => (r / w, r % w),
        2 => (t % h, t / h),
        _ => (r % h, r / h),
    }
}

/// Cross-scan with per-direction selective scans on a `d_inner×H×W` map.
pub fn cross_scan(u: &Map, w: &Ss2dWeights) -> Map {
    let (di, h, wd) = (u.c, u.h, u.w);
    let l = h * wd;
    let mut out = vec![0.0; di * l];
    for (d, p) in w.directions.iter().enumerate() {
        let rank = p.dt_proj.spec.in_channels;
        let n = p.a_log.shape()[1];
        let xw = p.x_proj.weight.data();
        let dtw = p.dt_proj.weight.data();
        let dtb = p.dt_proj.bias.as_ref().unwrap().data();
        let mut hstate = vec![0.0f64; di * n];
        for t in 0..l {
            let (row, col) = visit(d, t, h, wd);
            let x: Vec<f64> = (0..di).map(|c| u.at(c, row, col)).collect();
            let proj: Vec<f64> = (0..rank + 2 * n)
                .map(|o| (0..di).map(|c| xw[o * di + c] as f64 * x[c]).sum())
                .collect();
            for c in 0..di {
                let dt_raw = dtb[c] as f64 + (0..rank).map(|r| dtw[c * rank + r] as f64 * proj[r]).sum::<f64>();
                let delta = softplus(dt_raw);
                let mut y = 0.0;
                for s in 0..n {
                    let a = -(p.a_log.data()[c * n + s] as f64).exp();
                    let bm = proj[rank + s];
                    let cm = proj[rank + n + s];
                    let a_bar = (delta * a).exp();
                    let b_bar = (delta * a).exp_m1() / a * bm;
                    let hs = &mut hstate[c * n + s];
                    *hs = a_bar * *hs + b_bar * x[c];
                    y += cm * *hs;
                }
                out[(c * h + row) * wd + col] += y;
            }
        }
    }
    Map { c: di, h, w: wd, v: out }
}

pub fn ss2d(x: &Map, w: &Ss2dWeights) -> Map {
    let (u, z) = conv(x, &w.in_proj).split(w.dims.d_inner);
    let u = conv(&u, &w.conv).map(silu);
    let y = layer_norm(&cross_scan(&u, w), &w.norm);
    conv(&y.zip(&z, |a, b| a * silu(b)), &w.out_proj)
}

pub fn ls(x: &Map, w: &LsWeights) -> Map {
    let f = batch_norm(&conv(x, &w.dw), &w.bn);
    conv(&conv(&f, &w.fc1).map(gelu), &w.fc2).zip(x, |a, b| a + b)
}

/// The gated branch alone, without its skip connection.
pub fn rg_branch(x: &Map, w: &RgWeights) -> Map {
    let x1 = conv(x, &w.fc1a);
    let x2 = conv(x, &w.fc1b);
    let gate = conv(&x2, &w.dw).zip(&x2, |a, b| gelu(a + b));
    conv(&x1.zip(&gate, |a, b| a * b), &w.fc2)
}

pub fn rg(x: &Map, w: &RgWeights) -> Map {
    rg_branch(x, w).zip(x, |a, b| a + b)
}

pub fn odss(x: &Map, w: &OdssWeights) -> Map {
    let z0 = batch_norm(&conv(x, &w.input.conv), &w.input.bn).map(silu);
    let z1 = ss2d(&layer_norm(&ls(&z0, &w.ls), &w.norm1), &w.ss2d).zip(&z0, |a, b| a + b);
    rg_branch(&layer_norm(&z1, &w.norm2), &w.rg).zip(&z1, |a, b| a + b)
}

pub fn upsample(x: &Map) -> Map {
    let (h, w) = (2 * x.h, 2 * x.w);
    let mut v = Vec::with_capacity(x.c * h * w);
    for c in 0..x.c {
        for y in 0..h {
            for xx in 0..w {
                v.push(x.at(c, y / 2, xx / 2));
            }
        }
    }
    Map { c: x.c, h, w, v }
}

pub fn phases(x: &Map) -> Map {
    let (h, w) = (x.h / 2, x.w / 2);
    let mut v = Vec::new();
    for (dy, dx) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        for c in 0..x.c {
            for y in 0..h {
                for xx in 0..w {
                    v.push(x.at(c, 2 * y + dy, 2 * xx + dx));
                }
            }
        }
    }
    Map { c: 4 * x.c, h, w, v }
}

fn cba(x: &Map, c: &myolo::blocks::ConvBnAct) -> Map {
    batch_norm(&conv(x, &c.conv), &c.bn).map(silu)
}

fn chain(x: Map, ws: &[OdssWeights]) -> Map {
    ws.iter().fold(x, |x, w| odss(&x, w))
}

/// Backbone plus neck; returns `[P3', P4', P5']`.
pub fn model(img: &Map, w: &ModelWeights) -> [Map; 3] {
    let b = &w.backbone;
    let mut x = cba(&cba(img, &b.stem[0]), &b.stem[1]);
    let mut outs = Vec::new();
    for (i, st) in b.stages.iter().enumerate() {
        if i > 0 {
            x = conv(&phases(&x), &b.merges[i - 1]);
        }
        x = chain(x, st);
        outs.push(x.clone());
    }
    let (p3, p4, p5) = (&outs[1], &outs[2], &outs[3]);
    let n = &w.neck;
    let n4 = chain(upsample(p5).cat(p4), &n.td4);
    let o3 = chain(upsample(&n4).cat(p3), &n.td3);
    let o4 = chain(cba(&o3, &n.down3).cat(&n4), &n.bu4);
    let o5 = chain(cba(&o4, &n.down4).cat(p5), &n.bu5);
    [o3, o4, o5]
}
