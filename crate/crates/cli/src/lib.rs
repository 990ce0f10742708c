//! `myolo` command-line driver.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.
//! Reports go to standard output as tab-separated text headed by a version
//! stamp; diagnostics go to standard error.

pub mod bench;
pub mod checks;
pub mod extract;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use myolo::analysis::{count_macs, shape_table};
use myolo::config::ModelConfig;

pub use bench::{BenchOp, BenchReport};
pub use checks::Check;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
/// Default thread cap when `--threads` is absent.
pub const THREADS_ENV: &str = "MYOLO_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "myolo", version, about = "State-space detection backbone toolkit")]
pub struct Cli {
    /// Seed for random instances and weight initialization.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads (0 = all cores); defaults to $MYOLO_THREADS.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the quick verification battery.
    Selftest,
    /// Compare recurrent and convolutional scans on random instances.
    ScanEquiv {
        #[arg(long, default_value_t = 16)]
        n: usize,
        #[arg(long, default_value_t = 64)]
        l: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
    /// Finite-difference check of the selective-scan backward pass.
    Gradcheck {
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Print block-level output shapes.
    Shapes {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = "640x640", value_parser = parse_size)]
        input: (usize, usize),
    },
    /// Per-layer parameter and MAC counts.
    Count {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = "640x640", value_parser = parse_size)]
        input: (usize, usize),
        /// Also write every row to this CSV file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run an image through backbone and neck and dump the features.
    Extract {
        #[arg(long)]
        image: PathBuf,
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Also dump every SS2D branch output under `intermediate/`.
        #[arg(long)]
        dump_intermediate: bool,
    },
    /// Time an operator across sizes.
    Bench {
        #[arg(long, value_enum)]
        op: BenchOp,
        /// Comma-separated sizes (sequence length, or side length for ss2d).
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        #[arg(long, default_value_t = 7)]
        repeats: usize,
        /// Archive the report to this file as well.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_size(s: &str) -> Result<(usize, usize), String> {
    let (h, w) = s.split_once(['x', 'X']).ok_or_else(|| format!("expected HxW, got {s:?}"))?;
    let p = |v: &str| v.trim().parse::<usize>().map_err(|_| format!("bad dimension {v:?}"));
    let (h, w) = (p(h)?, p(w)?);
    if h == 0 || w == 0 || h % 32 != 0 || w % 32 != 0 {
        return Err(format!("{h}x{w}: both dimensions must be positive multiples of 32"));
    }
    Ok((h, w))
}

/// A failure that maps to an exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub msg: String,
}

impl Failure {
    pub fn usage(msg: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, msg: msg.into() }
    }
}

impl From<myolo::Error> for Failure {
    fn from(e: myolo::Error) -> Self {
        let code = match e {
            myolo::Error::Io(_) | myolo::Error::Format { .. } | myolo::Error::Config { .. } => EXIT_USAGE,
            _ => EXIT_FAIL,
        };
        Self { code, msg: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self { code: EXIT_USAGE, msg: e.to_string() }
    }
}

type CmdResult = Result<i32, Failure>;

pub fn header(out: &mut dyn Write, command: &str) -> std::io::Result<()> {
    writeln!(out, "# myolo {VERSION}\t{command}")
}

fn require_file(path: &Path, what: &str) -> Result<(), Failure> {
    if path.is_file() {
        Ok(())
    } else {
        Err(Failure::usage(format!("{what} not found: {}", path.display())))
    }
}

fn load_config(path: &Path, seed: Option<u64>) -> Result<ModelConfig, Failure> {
    require_file(path, "config")?;
    let mut cfg = ModelConfig::load(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    Ok(cfg)
}

fn report_checks(out: &mut dyn Write, checks: &[Check]) -> CmdResult {
    for c in checks {
        writeln!(out, "{}\t{}\t{}", c.name, if c.passed { "PASS" } else { "FAIL" }, c.detail)?;
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    writeln!(out, "summary\t{}/{} passed", checks.len() - failed, checks.len())?;
    Ok(if failed == 0 { EXIT_OK } else { EXIT_FAIL })
}

fn execute(cli: Cli, out: &mut dyn Write) -> CmdResult {
    let seed = cli.seed;
    let s = seed.unwrap_or(0);
    match cli.command {
        Command::Selftest => {
            header(out, "selftest")?;
            report_checks(out, &checks::selftest(s))
        }
        Command::ScanEquiv { n, l, trials } => {
            if n == 0 || l == 0 || trials == 0 {
                return Err(Failure::usage("--n, --l and --trials must be positive"));
            }
            header(out, "scan-equiv")?;
            report_checks(out, &[checks::scan_equiv(n, l, trials, s)])
        }
        Command::Gradcheck { trials } => {
            if trials == 0 {
                return Err(Failure::usage("--trials must be positive"));
            }
            header(out, "gradcheck")?;
            report_checks(out, &[checks::gradients(s, trials)])
        }
        Command::Shapes { config, input: (h, w) } => {
            let cfg = load_config(&config, seed)?;
            header(out, "shapes")?;
            writeln!(out, "config\t{}\nblock\tchannels\theight\twidth", cfg.variant)?;
            for (name, [c, bh, bw]) in shape_table(&cfg, h, w) {
                writeln!(out, "{name}\t{c}\t{bh}\t{bw}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Count { config, input: (h, w), csv } => {
            let cfg = load_config(&config, seed)?;
            let r = count_macs(&cfg, h, w);
            header(out, "count")?;
            writeln!(out, "config\t{}\ninput\t{h}x{w}", cfg.variant)?;
            writeln!(out, "params\t{}\nparams_backbone\t{}", r.total_params(), r.backbone_params())?;
            writeln!(out, "macs\t{}\nmacs_backbone\t{}", r.total_macs(), r.backbone_macs())?;
            writeln!(out, "flops\t{}\t# 2 x macs", 2 * r.total_macs())?;
            let reference = match cfg.variant.as_str() {
                "T" => Some(("6.1M", "14.3G")),
                "B" => Some(("21.8M", "49.7G")),
                "L" => Some(("57.6M", "156.2G")),
                _ => None,
            };
            if let Some((p, f)) = reference {
                writeln!(out, "reference_params\t{p}\t# informational\nreference_flops\t{f}\t# informational")?;
            }
            if let Some(path) = csv {
                std::fs::write(&path, r.to_table(','))
                    .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
                writeln!(out, "csv\t{}", path.display())?;
            }
            Ok(EXIT_OK)
        }
        Command::Extract { image, config, out: dir, dump_intermediate } => {
            require_file(&image, "image")?;
            let cfg = load_config(&config, seed)?;
            let written = extract::extract(&image, &cfg, &dir, dump_intermediate)?;
            header(out, "extract")?;
            writeln!(out, "file\tchannels\theight\twidth")?;
            for (name, shape) in written {
                writeln!(out, "{name}\t{}\t{}\t{}", shape[0], shape[1], shape[2])?;
            }
            Ok(EXIT_OK)
        }
        Command::Bench { op, sizes, repeats, out: archive } => {
            if repeats == 0 {
                return Err(Failure::usage("--repeats must be at least 1"));
            }
            let sizes = sizes.unwrap_or_else(|| op.default_sizes());
            if sizes.is_empty() || sizes.contains(&0) {
                return Err(Failure::usage("--sizes must be positive"));
            }
            let report = bench::bench(op, &sizes, repeats, s)?;
            let text = format!("# myolo {VERSION}\tbench\n{}", report.to_text());
            out.write_all(text.as_bytes())?;
            if let Some(path) = archive {
                std::fs::write(&path, &text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn thread_count(flag: Option<usize>) -> Result<usize, Failure> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| Failure::usage(format!("{THREADS_ENV}={v:?} is not a thread count"))),
        Err(_) => Ok(0),
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let result = thread_count(cli.threads).and_then(|n| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Failure::usage(format!("thread pool: {e}")))?;
        let mut buf = Vec::new();
        let r = pool.install(|| execute(cli, &mut buf));
        out.write_all(&buf)?;
        r
    });
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
