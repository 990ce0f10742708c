//! Recurrent-versus-convolutional scan agreement over random LTI instances.

use crate::error::Result;
use crate::rng::KeyedStream;
use crate::ssm_scan::{build_kernel, scan_convolutional, scan_recurrent, zoh_discretize, Real, SsmParams};

#[derive(Clone, Debug, PartialEq)]
pub struct EquivReport {
    pub instances: usize,
    pub max_dev_f32: f64,
    pub max_dev_f64: f64,
}

/// One random instance: `A ∈ [−2, −0.05]`, `Δ ∈ [0.01, 0.5]`, `B, C, x ∈ [−1, 1]`.
#[derive(Clone, Debug)]
pub struct LtiInstance {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
    pub delta: f64,
    pub x: Vec<f64>,
}

impl LtiInstance {
    pub fn random(n: usize, l: usize, s: &mut KeyedStream) -> Self {
        Self {
            a: s.uniform_vec(n, -2.0, -0.05),
            b: s.uniform_vec(n, -1.0, 1.0),
            c: s.uniform_vec(n, -1.0, 1.0),
            delta: s.uniform(0.01, 0.5),
            x: s.uniform_vec(l, -1.0, 1.0),
        }
    }

    /// Largest `|recurrent − convolutional|` with every input cast to `F`.
    pub fn deviation<F: Real>(&self) -> Result<f64> {
        let cast = |v: &[f64]| v.iter().map(|&x| F::from_f64(x).unwrap()).collect::<Vec<F>>();
        let params = SsmParams::new(cast(&self.a), cast(&self.b), cast(&self.c), F::from_f64(self.delta).unwrap())?;
        let disc = zoh_discretize(&params)?;
        let x = cast(&self.x);
        let rec = scan_recurrent(&disc, &params.c, &x, None)?;
        let conv = scan_convolutional(&build_kernel(&disc, &params.c, x.len())?, &x)?;
        Ok(rec
            .iter()
            .zip(&conv)
            .map(|(r, c)| (*r - *c).abs().to_f64().unwrap())
            .fold(0.0, f64::max))
    }
}

/// `trials` instances with `N ∈ [1, n]` and `L ∈ [1, l]`; the first uses `N = n, L = l`.
pub fn scan_equivalence(n: usize, l: usize, trials: usize, seed: u64) -> Result<EquivReport> {
    let root = KeyedStream::new(seed, "scan-equiv");
    let mut report = EquivReport { instances: trials, max_dev_f32: 0.0, max_dev_f64: 0.0 };
    for t in 0..trials {
        let mut s = root.split(&t.to_string());
        let (tn, tl) = if t == 0 {
            (n, l)
        } else {
            (s.range_inclusive(1, n), s.range_inclusive(1, l))
        };
        let inst = LtiInstance::random(tn, tl, &mut s);
        report.max_dev_f32 = report.max_dev_f32.max(inst.deviation::<f32>()?);
        report.max_dev_f64 = report.max_dev_f64.max(inst.deviation::<f64>()?);
    }
    Ok(report)
}
