//! Central-difference gradient checking.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rng::KeyedStream;
use crate::ssm_scan::{selective_scan, selective_scan_backward, SequenceBatch};

/// A scalar function of a flat parameter vector with an analytic gradient.
pub trait GradTarget: Sync {
    fn dim(&self) -> usize;
    fn value(&self, x: &[f64]) -> Result<f64>;
    fn gradient(&self, x: &[f64]) -> Result<Vec<f64>>;
    /// Name of coordinate `i`, used in diagnostics.
    fn coordinate(&self, i: usize) -> String {
        format!("x[{i}]")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GradReport {
    pub coordinates: usize,
    pub max_rel_err: f64,
    pub worst: Option<String>,
    pub tol: f64,
}

impl GradReport {
    pub fn passed(&self) -> bool {
        self.max_rel_err <= self.tol
    }
}

pub const DEFAULT_STEP: f64 = 1e-5;

/// `|a − n| / max(|a|, |n|, 1e-8)` against `(f(x+ε) − f(x−ε)) / 2ε`.
pub fn grad_check(target: &dyn GradTarget, x0: &[f64], step: f64, tol: f64) -> Result<GradReport> {
    const OP: &str = "grad_check";
    if x0.len() != target.dim() {
        return Err(Error::shape(OP, "point length", target.dim(), x0.len()));
    }
    if !(step > 0.0) {
        return Err(Error::invalid(OP, format!("step {step} must be positive")));
    }
    let analytic = target.gradient(x0)?;
    if analytic.len() != x0.len() {
        return Err(Error::shape(OP, "gradient length", x0.len(), analytic.len()));
    }
    let errs: Vec<f64> = (0..x0.len())
        .into_par_iter()
        .map(|i| {
            let mut x = x0.to_vec();
            x[i] = x0[i] + step;
            let up = target.value(&x)?;
            x[i] = x0[i] - step;
            let down = target.value(&x)?;
            let numeric = (up - down) / (2.0 * step);
            let a = analytic[i];
            if !numeric.is_finite() || !a.is_finite() {
                return Err(Error::invalid(
                    OP,
                    format!("non-finite value at {}: analytic {a}, numeric {numeric}", target.coordinate(i)),
                ));
            }
            Ok((a - numeric).abs() / a.abs().max(numeric.abs()).max(1e-8))
        })
        .collect::<Vec<Result<f64>>>()
        .into_iter()
        .collect::<Result<_>>()?;
    let worst = errs
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, &e)| (i, e));
    Ok(GradReport {
        coordinates: x0.len(),
        max_rel_err: worst.map_or(0.0, |w| w.1),
        worst: worst.map(|(i, _)| target.coordinate(i)),
        tol,
    })
}

/// Which analytic gradient block a [`SelectiveScanTarget`] negates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    FlipDelta,
    FlipA,
}

/// `loss = Σ upstream ⊙ selective_scan(x, Δ, B, C; A)` over the flat vector
/// `[x | Δ | B | C | A]`.
#[derive(Clone, Debug)]
pub struct SelectiveScanTarget {
    pub channels: usize,
    pub state: usize,
    pub len: usize,
    pub upstream: Vec<f64>,
    pub mutation: Option<Mutation>,
}

impl SelectiveScanTarget {
    fn sizes(&self) -> [usize; 5] {
        let (d, n, l) = (self.channels, self.state, self.len);
        [d * l, d * l, n * l, n * l, d * n]
    }

    fn split(&self, x: &[f64]) -> Result<(SequenceBatch<f64>, Vec<f64>)> {
        let [sx, sd, sb, sc, _] = self.sizes();
        let (xs, rest) = x.split_at(sx);
        let (delta, rest) = rest.split_at(sd);
        let (b, rest) = rest.split_at(sb);
        let (c, a) = rest.split_at(sc);
        let batch = SequenceBatch::new(
            self.channels,
            self.state,
            self.len,
            xs.to_vec(),
            delta.to_vec(),
            b.to_vec(),
            c.to_vec(),
        )?;
        Ok((batch, a.to_vec()))
    }

    /// Random instance with `A ∈ [−2, −0.05]`, `Δ ∈ [0.05, 1]`, other inputs
    /// and upstream weights in `[−1, 1]`; returns the target and its point.
    pub fn random(channels: usize, state: usize, len: usize, stream: &mut KeyedStream) -> (Self, Vec<f64>) {
        let (d, n, l) = (channels, state, len);
        let mut point = stream.uniform_vec(d * l, -1.0, 1.0);
        point.extend(stream.uniform_vec(d * l, 0.05, 1.0));
        point.extend(stream.uniform_vec(2 * n * l, -1.0, 1.0));
        point.extend(stream.uniform_vec(d * n, -2.0, -0.05));
        let upstream = stream.uniform_vec(d * l, -1.0, 1.0);
        (Self { channels, state, len, upstream, mutation: None }, point)
    }
}

impl GradTarget for SelectiveScanTarget {
    fn dim(&self) -> usize {
        self.sizes().iter().sum()
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        let (batch, a) = self.split(x)?;
        let y = selective_scan(&batch, &a)?;
        Ok(y.iter().zip(&self.upstream).map(|(y, u)| y * u).sum())
    }

    fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        let (batch, a) = self.split(x)?;
        let mut g = selective_scan_backward(&batch, &a, &self.upstream)?;
        match self.mutation {
            Some(Mutation::FlipDelta) => g.delta.iter_mut().for_each(|v| *v = -*v),
            Some(Mutation::FlipA) => g.a.iter_mut().for_each(|v| *v = -*v),
            None => {}
        }
        let mut out = g.x;
        out.extend(g.delta);
        out.extend(g.b);
        out.extend(g.c);
        out.extend(g.a);
        Ok(out)
    }

    fn coordinate(&self, i: usize) -> String {
        let names = ["x", "delta", "B", "C", "A"];
        let cols = [self.len, self.len, self.len, self.len, self.state];
        let mut i = i;
        for ((name, size), col) in names.iter().zip(self.sizes()).zip(cols) {
            if i < size {
                return format!("{name}[{}, {}]", i / col, i % col);
            }
            i -= size;
        }
        format!("out-of-range[{i}]")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GradSuiteReport {
    pub instances: usize,
    pub max_rel_err: f64,
    pub worst: String,
    /// Whether the sign-flip mutation was reported as a failure.
    pub mutation_detected: bool,
}

/// Gradient checks over `trials` random instances with `D ≤ 2, N ≤ 4, L ≤ 8`
/// plus a mutated backward that must fail.
pub fn selective_scan_grad_suite(seed: u64, trials: usize, tol: f64) -> Result<GradSuiteReport> {
    let root = KeyedStream::new(seed, "gradcheck");
    let mut max = 0.0f64;
    let mut worst = String::new();
    for t in 0..trials {
        let mut s = root.split(&t.to_string());
        let (d, n, l) = (s.range_inclusive(1, 2), s.range_inclusive(1, 4), s.range_inclusive(1, 8));
        let (target, x0) = SelectiveScanTarget::random(d, n, l, &mut s);
        let r = grad_check(&target, &x0, DEFAULT_STEP, tol)?;
        if r.max_rel_err >= max {
            max = r.max_rel_err;
            worst = format!("trial {t} (D={d}, N={n}, L={l}) {}", r.worst.unwrap_or_default());
        }
    }
    let mut s = root.split("mutation");
    let (mut target, x0) = SelectiveScanTarget::random(2, 3, 6, &mut s);
    target.mutation = Some(Mutation::FlipDelta);
    let mutated = grad_check(&target, &x0, DEFAULT_STEP, tol)?;
    Ok(GradSuiteReport {
        instances: trials,
        max_rel_err: max,
        worst,
        mutation_detected: !mutated.passed(),
    })
}
