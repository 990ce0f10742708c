//! One-dimensional diagonal state-space machinery.
//!
//! The continuous system `h' = A h + B x, y = C h` with diagonal `A` is
//! discretized by zero-order hold and evaluated either as a linear recurrence
//! or, for time-invariant parameters, as a causal convolution with the
//! kernel `K[j] = C·(Ā^j ⊙ B̄)`. The selective (input-dependent) scan always
//! uses the recurrence.
//!
//! Everything here is generic over [`Real`] so the same code runs in `f32`
//! for inference and in `f64` for gradient checking.

use std::fmt::Debug;

use num_traits::{Float, FromPrimitive};
use rayon::prelude::*;

use crate::error::{Error, Result};

pub trait Real: Float + FromPrimitive + Debug + Send + Sync + 'static {}
impl<T: Float + FromPrimitive + Debug + Send + Sync + 'static> Real for T {}

fn cst<F: Real>(v: f64) -> F {
    F::from_f64(v).expect("constant representable")
}

/// Below this `|Δ·A|` the input gain switches to its Taylor series.
pub const SERIES_THRESHOLD: f64 = 1e-8;

/// `(e^z − 1)/z`, the ZOH input gain per unit `Δ·B`; `1 + z/2` for `|z| < 1e-8`.
pub fn zoh_gain<F: Real>(z: F) -> F {
    if z.abs() < cst(SERIES_THRESHOLD) {
        F::one() + z * cst(0.5)
    } else {
        z.exp_m1() / z
    }
}

/// Derivative of [`zoh_gain`]: `(z·e^z − (e^z − 1))/z²`.
pub fn zoh_gain_derivative<F: Real>(z: F) -> F {
    if z.abs() < cst(1e-2) {
        // sum_k z^k (k+1)/(k+2)!
        const COEFFS: [f64; 7] = [
            1.0 / 2.0,
            2.0 / 6.0,
            3.0 / 24.0,
            4.0 / 120.0,
            5.0 / 720.0,
            6.0 / 5040.0,
            7.0 / 40320.0,
        ];
        COEFFS.iter().rev().fold(F::zero(), |acc, &c| acc * z + cst(c))
    } else {
        (z * z.exp() - z.exp_m1()) / (z * z)
    }
}

/// `(Ā, B̄)` for one diagonal entry.
pub fn zoh_entry<F: Real>(delta: F, a: F, b: F) -> (F, F) {
    let z = delta * a;
    (z.exp(), delta * b * zoh_gain(z))
}

pub fn softplus<F: Real>(x: F) -> F {
    if x > cst(20.0) {
        x
    } else {
        x.exp().ln_1p()
    }
}

/// Inverse of [`softplus`] for `y > 0`: `y + ln(1 − e^{−y})`.
pub fn softplus_inverse(y: f64) -> f64 {
    y + (-(-y).exp_m1()).ln()
}

/// Continuous parameters of a diagonal SSM with a single timestep `Δ`.
#[derive(Clone, Debug, PartialEq)]
pub struct SsmParams<F> {
    pub a: Vec<F>,
    pub b: Vec<F>,
    pub c: Vec<F>,
    pub delta: F,
}

impl<F: Real> SsmParams<F> {
    pub fn new(a: Vec<F>, b: Vec<F>, c: Vec<F>, delta: F) -> Result<Self> {
        const OP: &str = "SsmParams";
        if a.is_empty() {
            return Err(Error::invalid(OP, "state dimension must be at least 1"));
        }
        if b.len() != a.len() {
            return Err(Error::shape(OP, "B length", a.len(), b.len()));
        }
        if c.len() != a.len() {
            return Err(Error::shape(OP, "C length", a.len(), c.len()));
        }
        if !(delta > F::zero()) {
            return Err(Error::invalid(OP, format!("delta must be positive, got {delta:?}")));
        }
        let params = Self { a, b, c, delta };
        if !params.is_stable() {
            log::warn!("SSM has positive diagonal entries in A; the recurrence may diverge");
        }
        Ok(params)
    }

    pub fn state_dim(&self) -> usize {
        self.a.len()
    }

    pub fn is_stable(&self) -> bool {
        self.a.iter().all(|&v| v <= F::zero())
    }
}

/// Discretized diagonal transition `Ā` and input vector `B̄`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteSsm<F> {
    pub a_bar: Vec<F>,
    pub b_bar: Vec<F>,
}

impl<F: Real> DiscreteSsm<F> {
    pub fn state_dim(&self) -> usize {
        self.a_bar.len()
    }
}

pub fn zoh_discretize<F: Real>(params: &SsmParams<F>) -> Result<DiscreteSsm<F>> {
    if !(params.delta > F::zero()) {
        return Err(Error::invalid("zoh_discretize", "delta must be positive"));
    }
    let (a_bar, b_bar) = params
        .a
        .iter()
        .zip(&params.b)
        .map(|(&a, &b)| zoh_entry(params.delta, a, b))
        .unzip();
    Ok(DiscreteSsm { a_bar, b_bar })
}

/// `h_t = Ā ⊙ h_{t−1} + B̄·x_t`, `y_t = c·h_t`. `h0` defaults to zeros.
pub fn scan_recurrent<F: Real>(disc: &DiscreteSsm<F>, c: &[F], x: &[F], h0: Option<&[F]>) -> Result<Vec<F>> {
    const OP: &str = "scan_recurrent";
    let n = disc.state_dim();
    if disc.b_bar.len() != n {
        return Err(Error::shape(OP, "b_bar length", n, disc.b_bar.len()));
    }
    if c.len() != n {
        return Err(Error::shape(OP, "C length", n, c.len()));
    }
    let mut h = match h0 {
        Some(h0) if h0.len() != n => return Err(Error::shape(OP, "h0 length", n, h0.len())),
        Some(h0) => h0.to_vec(),
        None => vec![F::zero(); n],
    };
    let mut y = Vec::with_capacity(x.len());
    for &xt in x {
        let mut acc = F::zero();
        for i in 0..n {
            h[i] = disc.a_bar[i] * h[i] + disc.b_bar[i] * xt;
            acc = acc + c[i] * h[i];
        }
        y.push(acc);
    }
    Ok(y)
}

/// The structured convolution kernel of a time-invariant scan.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanKernel<F> {
    pub k_bar: Vec<F>,
}

impl<F> ScanKernel<F> {
    pub fn len(&self) -> usize {
        self.k_bar.len()
    }

    pub fn is_empty(&self) -> bool {
        self.k_bar.is_empty()
    }
}

/// `K[j] = c·(Ā^j ⊙ B̄)` for `j = 0..len`.
pub fn build_kernel<F: Real>(disc: &DiscreteSsm<F>, c: &[F], len: usize) -> Result<ScanKernel<F>> {
    const OP: &str = "build_kernel";
    if len == 0 {
        return Err(Error::invalid(OP, "kernel length must be at least 1"));
    }
    let n = disc.state_dim();
    if c.len() != n {
        return Err(Error::shape(OP, "C length", n, c.len()));
    }
    let mut powers = disc.b_bar.clone();
    let mut k_bar = Vec::with_capacity(len);
    for _ in 0..len {
        k_bar.push(
            powers
                .iter()
                .zip(c)
                .fold(F::zero(), |acc, (&p, &ci)| acc + ci * p),
        );
        for (p, &a) in powers.iter_mut().zip(&disc.a_bar) {
            *p = *p * a;
        }
    }
    Ok(ScanKernel { k_bar })
}

/// Causal convolution `y_t = Σ_{j≤t} K[j]·x_{t−j}` (zero initial state).
pub fn scan_convolutional<F: Real>(kernel: &ScanKernel<F>, x: &[F]) -> Result<Vec<F>> {
    if kernel.len() != x.len() {
        return Err(Error::shape("scan_convolutional", "sequence length", kernel.len(), x.len()));
    }
    Ok((0..x.len())
        .map(|t| {
            (0..=t).fold(F::zero(), |acc, j| acc + kernel.k_bar[j] * x[t - j])
        })
        .collect())
}

/// Inputs of a selective scan: `D` independent channels of length `L` sharing
/// per-step `B_t`, `C_t` (each `N×L`) and carrying their own `Δ_t` (`D×L`).
///
/// All buffers are row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct SequenceBatch<F> {
    pub channels: usize,
    pub state: usize,
    pub len: usize,
    pub x: Vec<F>,
    pub delta: Vec<F>,
    pub b: Vec<F>,
    pub c: Vec<F>,
}

impl<F: Real> SequenceBatch<F> {
    pub fn new(
        channels: usize,
        state: usize,
        len: usize,
        x: Vec<F>,
        delta: Vec<F>,
        b: Vec<F>,
        c: Vec<F>,
    ) -> Result<Self> {
        let batch = Self {
            channels,
            state,
            len,
            x,
            delta,
            b,
            c,
        };
        batch.validate()?;
        Ok(batch)
    }

    fn validate(&self) -> Result<()> {
        const OP: &str = "SequenceBatch";
        if self.channels == 0 || self.state == 0 || self.len == 0 {
            return Err(Error::invalid(OP, "channels, state and length must all be positive"));
        }
        let dl = self.channels * self.len;
        let nl = self.state * self.len;
        for (name, got, want) in [
            ("x", self.x.len(), dl),
            ("delta", self.delta.len(), dl),
            ("B", self.b.len(), nl),
            ("C", self.c.len(), nl),
        ] {
            if got != want {
                return Err(Error::shape(OP, format!("{name} length"), want, got));
            }
        }
        Ok(())
    }

    fn check_scan_inputs(&self, op: &'static str, a: &[F]) -> Result<()> {
        self.validate()?;
        if a.len() != self.channels * self.state {
            return Err(Error::shape(op, "A length (D×N)", self.channels * self.state, a.len()));
        }
        if let Some(i) = self.delta.iter().position(|&d| !(d > F::zero())) {
            return Err(Error::invalid(
                op,
                format!(
                    "delta[{}, {}] = {:?} is not positive (softplus bypassed?)",
                    i / self.len,
                    i % self.len,
                    self.delta[i]
                ),
            ));
        }
        Ok(())
    }
}

/// Selective scan: per channel `d` and step `t`, discretize `(A[d], B_t)` with
/// `Δ[d, t]`, advance the state, and emit `y[d, t] = C_t·h`. Returns `D×L`.
pub fn selective_scan<F: Real>(batch: &SequenceBatch<F>, a: &[F]) -> Result<Vec<F>> {
    batch.check_scan_inputs("selective_scan", a)?;
    let (n, l) = (batch.state, batch.len);
    let mut y = vec![F::zero(); batch.channels * l];
    y.par_chunks_mut(l).enumerate().for_each(|(d, out)| {
        scan_channel(batch, &a[d * n..][..n], d, |t, h| {
            out[t] = (0..n).fold(F::zero(), |acc, i| acc + batch.c[i * l + t] * h[i]);
        });
    });
    Ok(y)
}

/// Runs channel `d`'s recurrence, handing the post-update state at each step to `visit`.
fn scan_channel<F: Real>(batch: &SequenceBatch<F>, a: &[F], d: usize, mut visit: impl FnMut(usize, &[F])) {
    let (n, l) = (batch.state, batch.len);
    let mut h = vec![F::zero(); n];
    for t in 0..l {
        let dt = batch.delta[d * l + t];
        let xt = batch.x[d * l + t];
        for i in 0..n {
            let (a_bar, b_bar) = zoh_entry(dt, a[i], batch.b[i * l + t]);
            h[i] = a_bar * h[i] + b_bar * xt;
        }
        visit(t, &h);
    }
}

/// Gradients of `Σ upstream ⊙ y` with respect to every selective-scan input.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanGradients<F> {
    pub x: Vec<F>,
    pub delta: Vec<F>,
    pub b: Vec<F>,
    pub c: Vec<F>,
    pub a: Vec<F>,
}

/// Reverse-time adjoint of [`selective_scan`], checkpointing every state.
pub fn selective_scan_backward<F: Real>(
    batch: &SequenceBatch<F>,
    a: &[F],
    upstream: &[F],
) -> Result<ScanGradients<F>> {
    const OP: &str = "selective_scan_backward";
    batch.check_scan_inputs(OP, a)?;
    let (dch, n, l) = (batch.channels, batch.state, batch.len);
    if upstream.len() != dch * l {
        return Err(Error::shape(OP, "upstream length (D×L)", dch * l, upstream.len()));
    }
    let zero = F::zero();
    let mut grads = ScanGradients {
        x: vec![zero; dch * l],
        delta: vec![zero; dch * l],
        b: vec![zero; n * l],
        c: vec![zero; n * l],
        a: vec![zero; dch * n],
    };
    let mut states = vec![zero; l * n];
    let mut gh = vec![zero; n];
    for d in 0..dch {
        let a_d = &a[d * n..][..n];
        scan_channel(batch, a_d, d, |t, h| states[t * n..][..n].copy_from_slice(h));
        gh.iter_mut().for_each(|g| *g = zero);
        for t in (0..l).rev() {
            let up = upstream[d * l + t];
            let dt = batch.delta[d * l + t];
            let xt = batch.x[d * l + t];
            let (mut gx, mut gdt) = (zero, zero);
            for i in 0..n {
                let h_t = states[t * n + i];
                let h_prev = if t == 0 { zero } else { states[(t - 1) * n + i] };
                let b = batch.b[i * l + t];
                gh[i] = gh[i] + up * batch.c[i * l + t];
                grads.c[i * l + t] = grads.c[i * l + t] + up * h_t;

                let z = dt * a_d[i];
                let a_bar = z.exp();
                let gain = zoh_gain(z);
                let g_abar = gh[i] * h_prev;
                let g_bbar = gh[i] * xt;
                gx = gx + gh[i] * dt * b * gain;
                // dĀ/dΔ = A·Ā, dB̄/dΔ = B·e^z; dĀ/dA = Δ·Ā, dB̄/dA = Δ²·B·gain'(z)
                gdt = gdt + g_abar * a_d[i] * a_bar + g_bbar * b * a_bar;
                grads.a[d * n + i] =
                    grads.a[d * n + i] + g_abar * dt * a_bar + g_bbar * dt * dt * b * zoh_gain_derivative(z);
                grads.b[i * l + t] = grads.b[i * l + t] + g_bbar * dt * gain;
                gh[i] = gh[i] * a_bar;
            }
            grads.x[d * l + t] = gx;
            grads.delta[d * l + t] = gdt;
        }
    }
    Ok(grads)
}
