//! Acceptance gate: every criterion runs in order and reports one line.
//!
//! `cargo test -p myolo-cli --test acceptance -- --nocapture`

#[path = "../../core/tests/oracles/zoh_values.rs"]
mod zoh_values;

use std::path::{Path, PathBuf};
use std::time::Instant;

use myolo::analysis::count_macs;
use myolo::config::ModelConfig;
use myolo::image::{test_pattern, write_ppm};
use myolo::ssm_scan::zoh_entry;
use myolo_cli::bench::{bench, BenchOp};
use myolo_cli::checks::{self, Check};

fn configs_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let c = checks::scan_equiv(16, 64, 400, 1);
    let secs = start.elapsed().as_secs_f64();
    Check::new("scan-form equivalence", c.passed && secs < 10.0, format!("{} elapsed={secs:.2}s", c.detail))
}

fn criterion_2() -> Check {
    let mut worst = 0.0f64;
    let mut series = 0;
    for [a, delta, b, a_bar, b_bar] in zoh_values::ZOH_CASES {
        series += usize::from((delta * a).abs() < 1e-8);
        let (ga, gb) = zoh_entry(delta, a, b);
        worst = worst
            .max((ga - a_bar).abs() / a_bar.abs().max(1.0))
            .max((gb - b_bar).abs() / b_bar.abs().max(1.0));
    }
    let n = zoh_values::ZOH_CASES.len();
    Check::new(
        "ZOH vs high-precision reference",
        n >= 100 && series > 0 && worst <= 1e-12,
        format!("points={n} series_points={series} max_rel_dev={worst:.3e}"),
    )
}

fn criterion_3() -> Check {
    checks::gradients(3, 24)
}

fn criterion_4() -> Check {
    checks::ss2d_round_trip(4, &[1, 2, 3, 8])
}

fn criterion_5() -> Check {
    checks::shape_law(&ModelConfig::tiny(), &[(64, 64), (320, 320), (640, 640)])
}

fn criterion_6() -> Check {
    let parts = checks::residual_collapses(6);
    let passed = parts.iter().all(|c| c.passed);
    let detail = parts.iter().map(|c| format!("{}={}", c.name, c.passed)).collect::<Vec<_>>().join(" ");
    Check::new("residual-identity collapses", passed, detail)
}

fn criterion_7() -> Check {
    let mut cfgs = Vec::new();
    for file in ["tiny.cfg", "t.cfg", "b.cfg", "l.cfg"] {
        match ModelConfig::load(configs_dir().join(file)) {
            Ok(c) => cfgs.push(c),
            Err(e) => return Check::new("cost accounting", false, format!("{file}: {e}")),
        }
    }
    let (check, _) = checks::param_counts(&cfgs);
    let t = count_macs(&cfgs[1], 640, 640);
    let info = format!(
        "T: params={:.2}M (reference 6.1M) flops@640={:.2}G (reference 14.3G) backbone_only_flops={:.2}G",
        t.total_params() as f64 / 1e6,
        2.0 * t.total_macs() as f64 / 1e9,
        2.0 * t.backbone_macs() as f64 / 1e9
    );
    Check::new("cost accounting", check.passed, format!("{} | {info}", check.detail))
}

fn criterion_8() -> Check {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let report = pool.install(|| bench(BenchOp::Selective, &[1024, 2048, 4096, 8192], 21, 8));
    match report {
        Ok(r) => {
            let ratios = r.ratios();
            let ok = ratios.iter().all(|q| (1.6..=2.6).contains(q));
            let archive = std::env::temp_dir().join("myolo-acceptance-bench.tsv");
            let _ = std::fs::write(&archive, r.to_text());
            let shown: Vec<String> = ratios.iter().map(|q| format!("{q:.3}")).collect();
            Check::new(
                "linear-time scaling",
                ok,
                format!("ratios=[{}] log_log_slope={:.3} report={}", shown.join(", "), r.log_log_slope(), archive.display()),
            )
        }
        Err(e) => Check::new("linear-time scaling", false, format!("error: {e}")),
    }
}

fn extract_run(image: &Path, out: &Path, threads: usize) -> Result<Vec<(String, Vec<u8>)>, String> {
    let argv = [
        "myolo".to_string(),
        "extract".into(),
        "--image".into(),
        image.display().to_string(),
        "--config".into(),
        configs_dir().join("tiny.cfg").display().to_string(),
        "--out".into(),
        out.display().to_string(),
        "--seed".into(),
        "9".into(),
        "--threads".into(),
        threads.to_string(),
    ];
    let (mut so, mut se) = (Vec::new(), Vec::new());
    let code = myolo_cli::run_with(argv, &mut so, &mut se);
    if code != 0 {
        return Err(format!("exit {code}: {}", String::from_utf8_lossy(&se)));
    }
    let mut files = Vec::new();
    for name in ["stem", "stage1", "stage2", "stage3", "stage4", "p3", "p4", "p5"] {
        let path = out.join(format!("{name}.myt"));
        files.push((name.to_string(), std::fs::read(&path).map_err(|e| format!("{}: {e}", path.display()))?));
    }
    Ok(files)
}

fn criterion_9() -> Check {
    const NAME: &str = "determinism";
    let dir = tempfile::tempdir().unwrap();
    let image = dir.path().join("pattern.ppm");
    // 100×140 is padded to 128×160 by extract
    write_ppm(&image, &test_pattern(100, 140)).unwrap();
    let runs: Result<Vec<_>, String> = [(1, "a"), (1, "b"), (8, "c")]
        .into_iter()
        .map(|(t, sub)| extract_run(&image, &dir.path().join(sub), t))
        .collect();
    match runs {
        Ok(runs) => {
            let same = runs[1..].iter().all(|r| r == &runs[0]);
            let bytes: usize = runs[0].iter().map(|(_, b)| b.len()).sum();
            Check::new(NAME, same, format!("files={} bytes={bytes} runs=threads1,threads1,threads8", runs[0].len()))
        }
        Err(e) => Check::new(NAME, false, e),
    }
}

fn criterion_10() -> Check {
    checks::mlp_ordering(10, 64, 128)
}

#[test]
fn acceptance() {
    let criteria: [(usize, fn() -> Check); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let mut failed = Vec::new();
    for (n, f) in criteria {
        let c = f();
        println!("criterion {n:>2}\t{}\t{}\t{}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
        if !c.passed {
            failed.push(n);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
