//! Wall-clock scaling measurements.

use std::fmt::Write as _;
use std::hint::black_box;
use std::time::{Duration, Instant};

use myolo::analysis::LtiInstance;
use myolo::init::Initializer;
use myolo::rng::KeyedStream;
use myolo::ss2d::{ss2d_apply, Ss2dDims, Ss2dWeights};
use myolo::ssm_scan::{build_kernel, scan_convolutional, scan_recurrent, selective_scan, zoh_discretize, SequenceBatch, SsmParams};
use myolo::{Result, Tensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum BenchOp {
    ScanRecurrent,
    ScanConv,
    Selective,
    Ss2d,
}

impl BenchOp {
    pub fn name(self) -> &'static str {
        match self {
            BenchOp::ScanRecurrent => "scan-recurrent",
            BenchOp::ScanConv => "scan-conv",
            BenchOp::Selective => "selective",
            BenchOp::Ss2d => "ss2d",
        }
    }

    /// Sequence lengths for the scans; square side lengths for ss2d.
    pub fn default_sizes(self) -> Vec<usize> {
        match self {
            BenchOp::Ss2d => vec![8, 16, 32, 64],
            _ => vec![1024, 2048, 4096, 8192],
        }
    }

    fn elements(self, size: usize) -> usize {
        match self {
            BenchOp::Ss2d => size * size,
            _ => size,
        }
    }
}

/// Channels and state size of the selective-scan workload.
pub const SELECTIVE_CHANNELS: usize = 16;
pub const STATE: usize = 16;

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub size: usize,
    pub elements: usize,
    pub median_ns: f64,
    pub q1_ns: f64,
    pub q3_ns: f64,
    /// Per-iteration time of each round, in round order.
    pub samples_ns: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchReport {
    pub op: BenchOp,
    pub repeats: usize,
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    /// Median over rounds of `t[i] / t[i−1]`. Both sizes of a pair are timed
    /// in the same round, so load that slows a whole round cancels out.
    pub fn ratios(&self) -> Vec<f64> {
        self.rows
            .windows(2)
            .map(|w| {
                let mut r: Vec<f64> = w[1].samples_ns.iter().zip(&w[0].samples_ns).map(|(b, a)| b / a).collect();
                r.sort_by(f64::total_cmp);
                quantile(&r, 0.5)
            })
            .collect()
    }

    /// Least-squares slope of median time against element count (ns/element).
    pub fn slope(&self) -> f64 {
        let n = self.rows.len() as f64;
        let (sx, sy) = self.rows.iter().fold((0.0, 0.0), |(a, b), r| (a + r.elements as f64, b + r.median_ns));
        let (mx, my) = (sx / n, sy / n);
        let (mut num, mut den) = (0.0, 0.0);
        for r in &self.rows {
            num += (r.elements as f64 - mx) * (r.median_ns - my);
            den += (r.elements as f64 - mx).powi(2);
        }
        if den > 0.0 {
            num / den
        } else {
            0.0
        }
    }

    /// Least-squares slope of log time against log size; 1 is linear.
    pub fn log_log_slope(&self) -> f64 {
        let pts: Vec<(f64, f64)> = self.rows.iter().map(|r| ((r.elements as f64).ln(), r.median_ns.ln())).collect();
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let num: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let den: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        if den > 0.0 {
            num / den
        } else {
            0.0
        }
    }

    pub fn monotone(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].median_ns >= w[0].median_ns)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "op\t{}\nrepeats\t{}", self.op.name(), self.repeats);
        let _ = writeln!(s, "size\telements\tmedian_ns\tiqr_ns\tratio");
        let ratios = self.ratios();
        for (i, r) in self.rows.iter().enumerate() {
            let ratio = if i == 0 { "-".to_string() } else { format!("{:.3}", ratios[i - 1]) };
            let _ = writeln!(s, "{}\t{}\t{:.0}\t{:.0}\t{ratio}", r.size, r.elements, r.median_ns, r.q3_ns - r.q1_ns);
        }
        let _ = writeln!(s, "slope_ns_per_element\t{:.4}", self.slope());
        let _ = writeln!(s, "log_log_slope\t{:.3}", self.log_log_slope());
        let _ = writeln!(s, "monotone\t{}", if self.monotone() { "yes" } else { "no" });
        s
    }
}

fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let (lo, hi) = (pos.floor() as usize, pos.ceil() as usize);
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

/// Minimum wall time of one timing sample.
pub const SAMPLE_FLOOR: Duration = Duration::from_millis(20);

type Workload = Box<dyn FnMut() -> Result<()>>;

fn workload(op: BenchOp, size: usize, seed: u64) -> Result<Workload> {
    let mut s = KeyedStream::new(seed, &format!("bench.{}.{size}", op.name()));
    Ok(match op {
        BenchOp::ScanRecurrent | BenchOp::ScanConv => {
            let inst = LtiInstance::random(STATE, size, &mut s);
            let cast = |v: &[f64]| v.iter().map(|&x| x as f32).collect::<Vec<f32>>();
            let p = SsmParams::new(cast(&inst.a), cast(&inst.b), cast(&inst.c), inst.delta as f32)?;
            let disc = zoh_discretize(&p)?;
            let x = cast(&inst.x);
            if op == BenchOp::ScanRecurrent {
                Box::new(move || scan_recurrent(&disc, &p.c, black_box(&x), None).map(|y| drop(black_box(y))))
            } else {
                Box::new(move || {
                    let k = build_kernel(&disc, &p.c, x.len())?;
                    scan_convolutional(&k, black_box(&x)).map(|y| drop(black_box(y)))
                })
            }
        }
        BenchOp::Selective => {
            let (d, n, l) = (SELECTIVE_CHANNELS, STATE, size);
            let f = |v: Vec<f64>| v.into_iter().map(|x| x as f32).collect::<Vec<f32>>();
            let batch = SequenceBatch::new(
                d,
                n,
                l,
                f(s.uniform_vec(d * l, -1.0, 1.0)),
                f(s.uniform_vec(d * l, 0.01, 0.5)),
                f(s.uniform_vec(n * l, -1.0, 1.0)),
                f(s.uniform_vec(n * l, -1.0, 1.0)),
            )?;
            let a = f(s.uniform_vec(d * n, -2.0, -0.05));
            Box::new(move || selective_scan(black_box(&batch), &a).map(|y| drop(black_box(y))))
        }
        BenchOp::Ss2d => {
            let dims = Ss2dDims { channels: 16, d_inner: 32, d_state: 4, dt_rank: 1 };
            let init = Initializer::new(seed);
            let w = Ss2dWeights::init(&init, "bench.ss2d", dims);
            let x: Tensor = init.uniform("bench.input", &[16, size, size], 1.0);
            Box::new(move || ss2d_apply(black_box(&x), &w).map(|y| drop(black_box(y))))
        }
    })
}

/// Iterations per sample so that one sample lasts at least `floor`.
fn calibrate(f: &mut Workload, floor: Duration) -> Result<usize> {
    let start = Instant::now();
    f()?;
    f()?;
    let one = start.elapsed().as_secs_f64() / 2.0;
    Ok(((floor.as_secs_f64() / one.max(1e-9)).ceil() as usize).max(1))
}

/// Samples are taken round-robin across sizes so drift in machine load
/// hits every size alike instead of skewing one ratio.
pub fn bench(op: BenchOp, sizes: &[usize], repeats: usize, seed: u64) -> Result<BenchReport> {
    let floor = SAMPLE_FLOOR;
    let mut work = sizes.iter().map(|&size| workload(op, size, seed)).collect::<Result<Vec<_>>>()?;
    let iters = work.iter_mut().map(|f| calibrate(f, floor)).collect::<Result<Vec<_>>>()?;
    let mut samples = vec![Vec::with_capacity(repeats); sizes.len()];
    for round in 0..repeats {
        // alternate direction so no size always runs first
        let order: Vec<usize> =
            if round % 2 == 0 { (0..sizes.len()).collect() } else { (0..sizes.len()).rev().collect() };
        for i in order {
            let t = Instant::now();
            for _ in 0..iters[i] {
                work[i]()?;
            }
            samples[i].push(t.elapsed().as_secs_f64() * 1e9 / iters[i] as f64);
        }
    }
    let rows = sizes
        .iter()
        .zip(samples)
        .map(|(&size, samples_ns)| {
            let mut v = samples_ns.clone();
            v.sort_by(f64::total_cmp);
            BenchRow {
                size,
                elements: op.elements(size),
                median_ns: quantile(&v, 0.5),
                q1_ns: quantile(&v, 0.25),
                q3_ns: quantile(&v, 0.75),
                samples_ns,
            }
        })
        .collect();
    Ok(BenchReport { op, repeats, rows })
}
