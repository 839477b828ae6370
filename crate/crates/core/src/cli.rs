//! Command-line front end. Every command writes one [`Report`].
//!
//! Exit status: 0 on success, 1 on usage errors, 2 on domain errors,
//! 3 when an eigenvalue iteration fails to converge.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::dynamics::{
    fiber_image_interval, fiber_image_numeric, iterate_phi_endpoint, wordmap_orbit,
    DEFAULT_MAX_STEPS,
};
use crate::error::Error;
use crate::geometry::{fricke_commutator_trace, pi_map, TraceTriple};
use crate::measure::{boundary_mass, fiber_transport_demo, pushforward_histogram, sample_fiber};
use crate::output::{Format, Report, Table, Value};
use crate::pairspec::PairSpec;
use crate::spectral::{
    gap_profile, min_defect_level, random_unit_vector, word_defect_check, IrrepLevel,
    DEFAULT_N_MAX,
};
use crate::su2::{haar_pair, Pair, Streams, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Csv => Format::Csv,
            OutputFormat::Json => Format::Json,
        }
    }
}

/// Trace coordinates, plane dynamics, truncated spectral gaps and Monte Carlo
/// measure experiments for pairs in SU(2).
#[derive(Debug, Clone, Parser)]
#[command(name = "su2gap", version)]
pub struct RunConfig {
    /// Seed for every random stream.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Maximum number of worker threads.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Draw Haar-random pairs.
    Sample {
        #[arg(long, default_value_t = 10)]
        count: u64,
    },
    /// Traces and Fricke coordinates of a pair.
    Traces(PairArg),
    /// Build a pair from Fricke coordinates or a trace triple.
    Construct(ConstructArgs),
    /// Iterate the fiber endpoint t -> t^2 - 2 until it is negative.
    PhiIterate {
        #[arg(long, allow_negative_numbers = true)]
        t0: f64,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
    },
    /// Commutator traces reached from the fiber over t after squaring a.
    FiberImage {
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        #[arg(long, default_value_t = 1000)]
        grid: usize,
    },
    /// Breadth-first word-map orbit of a pair.
    Orbit {
        #[command(flatten)]
        pair: PairArg,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = 10_000)]
        max_points: usize,
    },
    /// Per-level spectral gaps (evidence, not a certificate).
    GapProfile {
        #[command(flatten)]
        pair: PairArg,
        #[arg(long, default_value_t = DEFAULT_N_MAX)]
        nmax: usize,
    },
    /// Word-length displacement bound on random unit vectors, and the
    /// minimal joint displacement at one level.
    Defect {
        #[command(flatten)]
        pair: PairArg,
        #[arg(long)]
        word: String,
        #[arg(long)]
        level: usize,
        #[arg(long, default_value_t = 1)]
        trials: usize,
    },
    /// Histogram of the pushforward of Haar measure to D.
    Density {
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 40)]
        bins: usize,
        /// Also report the mass within this distance of the boundary of D.
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Pairs with a prescribed commutator trace.
    FiberSample {
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Histogram of commutator traces after squaring a, over a fiber sample.
    FiberTransport {
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 40)]
        bins: usize,
    },
}

#[derive(Debug, Clone, Args)]
pub struct PairArg {
    /// Pair-spec file, or an inline JSON record.
    #[arg(long)]
    pub pair: String,
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct ConstructArgs {
    /// x t
    #[arg(long, num_args = 2, value_names = ["X", "T"], allow_negative_numbers = true)]
    pub fricke: Option<Vec<f64>>,
    /// x y z
    #[arg(long, num_args = 3, value_names = ["X", "Y", "Z"], allow_negative_numbers = true)]
    pub triple: Option<Vec<f64>>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Run(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Run(Error::Domain(_)) => 2,
            CliError::Run(Error::Convergence { .. }) => 3,
            CliError::Run(Error::PairSpec(_)) => 1,
            CliError::Run(_) => 1,
        }
    }
}

fn require(cond: bool, msg: &str) -> Result<(), CliError> {
    if cond {
        Ok(())
    } else {
        Err(CliError::Usage(msg.to_string()))
    }
}

fn require_t(t: f64, name: &str) -> Result<(), CliError> {
    require(
        t.is_finite() && (-2.0..=2.0).contains(&t),
        &format!("{name} must lie in [-2, 2]"),
    )
}

impl RunConfig {
    /// Checks every numeric parameter against the target operation's
    /// preconditions.
    pub fn validate(&self) -> Result<(), CliError> {
        if let Some(n) = self.threads {
            require(n >= 1, "--threads must be at least 1")?;
        }
        match &self.command {
            Command::Sample { count } => require(*count >= 1, "--count must be at least 1"),
            Command::Traces(_) | Command::Construct(_) => Ok(()),
            Command::PhiIterate { t0, max_steps } => {
                require_t(*t0, "--t0")?;
                require(*max_steps >= 1, "--max-steps must be at least 1")
            }
            Command::FiberImage { t, grid } => {
                require_t(*t, "--t")?;
                require(*grid >= 2, "--grid must be at least 2")
            }
            Command::Orbit { max_points, .. } => {
                require(*max_points >= 1, "--max-points must be at least 1")
            }
            Command::GapProfile { nmax, .. } => require(*nmax >= 1, "--nmax must be at least 1"),
            Command::Defect { level, trials, .. } => {
                require(*level >= 1, "--level must be at least 1")?;
                require(*trials >= 1, "--trials must be at least 1")
            }
            Command::Density {
                samples,
                bins,
                delta,
            } => {
                require(*samples >= 1, "--samples must be at least 1")?;
                require(*bins >= 2, "--bins must be at least 2")?;
                if let Some(d) = delta {
                    require(*d > 0.0, "--delta must be positive")?;
                }
                Ok(())
            }
            Command::FiberSample { t, samples } => {
                require_t(*t, "--t")?;
                require(*samples >= 1, "--samples must be at least 1")
            }
            Command::FiberTransport { t, samples, bins } => {
                require_t(*t, "--t")?;
                require(*samples >= 1, "--samples must be at least 1")?;
                require(*bins >= 1, "--bins must be at least 1")
            }
        }
    }

    fn default_format(&self) -> Format {
        match self.command {
            Command::Traces(_) | Command::Construct(_) => Format::Json,
            _ => Format::Csv,
        }
    }

    pub fn output_format(&self) -> Format {
        self.format.map(Into::into).unwrap_or_else(|| self.default_format())
    }
}

fn load_pair(arg: &PairArg) -> Result<Pair, CliError> {
    let text = if arg.pair.trim_start().starts_with('{') {
        arg.pair.clone()
    } else {
        fs::read_to_string(&arg.pair)
            .map_err(|e| CliError::Usage(format!("cannot read pair spec {}: {e}", arg.pair)))?
    };
    Ok(PairSpec::parse(&text)?.to_pair()?)
}

fn pair_row(p: &Pair) -> Vec<Value> {
    [p.a.alpha, p.a.beta, p.b.alpha, p.b.beta]
        .iter()
        .flat_map(|z| [Value::Float(z.re), Value::Float(z.im)])
        .collect()
}

const PAIR_COLUMNS: [&str; 8] = [
    "a_re_alpha",
    "a_im_alpha",
    "a_re_beta",
    "a_im_beta",
    "b_re_alpha",
    "b_im_alpha",
    "b_re_beta",
    "b_im_beta",
];

fn pair_table(pairs: &[Pair], with_traces: bool) -> Table {
    let mut cols: Vec<&str> = PAIR_COLUMNS.to_vec();
    if with_traces {
        cols.extend(["x", "y", "z", "t"]);
    }
    let mut table = Table::new(&cols);
    for p in pairs {
        let mut row = pair_row(p);
        if with_traces {
            let tr = TraceTriple::of_pair(p);
            row.extend([tr.x, tr.y, tr.z, p.commutator().trace()].map(Value::Float));
        }
        table.push(row);
    }
    table
}

fn matrix_report(command: &str, p: &Pair) -> Report {
    let PairSpec::Matrix { a, b } = PairSpec::matrix(p) else {
        unreachable!()
    };
    Report::new(command)
        .field("type", "matrix")
        .field("a", &a[..])
        .field("b", &b[..])
}

/// Runs one command and returns its report.
pub fn execute(config: &RunConfig) -> Result<Report, CliError> {
    config.validate()?;
    let seed = config.seed;
    let report = match &config.command {
        Command::Sample { count } => {
            let mut rng = Streams::new(seed).stream(0);
            let pairs: Vec<Pair> = (0..*count).map(|_| haar_pair(&mut rng)).collect();
            Report::new("sample")
                .field("seed", seed)
                .field("count", *count)
                .with_table(pair_table(&pairs, true))
        }
        Command::Traces(arg) => {
            let p = load_pair(arg)?;
            let tr = TraceTriple::of_pair(&p);
            let c = pi_map(&p);
            Report::new("traces")
                .field("x", tr.x)
                .field("y", tr.y)
                .field("z", tr.z)
                .field("t", c.t)
                .field("t_fricke_vogt", fricke_commutator_trace(tr))
        }
        Command::Construct(args) => {
            let spec = match (&args.fricke, &args.triple) {
                (Some(f), None) => PairSpec::Fricke { x: f[0], t: f[1] },
                (None, Some(t)) => PairSpec::Traces {
                    x: t[0],
                    y: t[1],
                    z: t[2],
                },
                _ => return Err(CliError::Usage("give exactly one of --fricke or --triple".into())),
            };
            matrix_report("construct", &spec.to_pair()?)
        }
        Command::PhiIterate { t0, max_steps } => {
            let rec = iterate_phi_endpoint(*t0, *max_steps);
            let mut table = Table::new(&["step", "t"]);
            for (k, t) in rec.orbit.iter().enumerate() {
                table.push(vec![k.into(), (*t).into()]);
            }
            Report::new("phi-iterate")
                .field("t0", *t0)
                .field("max_steps", *max_steps)
                .field("steps_to_negative", rec.steps_to_negative)
                .field("reached", rec.steps_to_negative.is_some())
                .with_table(table)
        }
        Command::FiberImage { t, grid } => {
            let exact = fiber_image_interval(*t);
            let numeric = fiber_image_numeric(*t, *grid);
            Report::new("fiber-image")
                .field("t", *t)
                .field("grid", *grid)
                .field("lo", exact.lo)
                .field("hi", exact.hi)
                .field("numeric_lo", numeric.lo)
                .field("numeric_hi", numeric.hi)
        }
        Command::Orbit {
            pair,
            depth,
            max_points,
        } => {
            let p = load_pair(pair)?;
            let points = wordmap_orbit(&p, *depth, *max_points);
            let mut table = Table::new(&["path", "x", "t"]);
            for pt in &points {
                table.push(vec![pt.path_label().into(), pt.coord.x.into(), pt.coord.t.into()]);
            }
            Report::new("orbit")
                .field("depth", *depth)
                .field("max_points", *max_points)
                .field("points", points.len())
                .with_table(table)
        }
        Command::GapProfile { pair, nmax } => {
            let p = load_pair(pair)?;
            let prof = gap_profile(&p, *nmax)?;
            let mut table = Table::new(&["n", "dim", "gap"]);
            for l in &prof.levels {
                table.push(vec![l.n.into(), l.dim.into(), l.gap.into()]);
            }
            Report::new("gap-profile")
                .field("n_max", prof.n_max)
                .field("min_gap", prof.min_gap)
                .field("argmin_level", prof.argmin_level)
                .field("note", "truncated profile: evidence, not a certificate")
                .with_table(table)
        }
        Command::Defect {
            pair,
            word,
            level,
            trials,
        } => {
            let p = load_pair(pair)?;
            let w: Word = word
                .parse()
                .map_err(|e: Error| CliError::Usage(e.to_string()))?;
            let level = IrrepLevel(*level);
            let mut rng = Streams::new(seed).stream(0);
            let mut table = Table::new(&["trial", "lhs", "rhs", "holds"]);
            for k in 0..*trials {
                let v = random_unit_vector(&mut rng, level.dim());
                let c = word_defect_check(&p, &w, level, &v)?;
                table.push(vec![k.into(), c.lhs.into(), c.rhs.into(), c.holds(1e-10).into()]);
            }
            Report::new("defect")
                .field("seed", seed)
                .field("word", w.to_string())
                .field("word_length", w.len())
                .field("level", level.0)
                .field("min_defect", min_defect_level(&p, level)?)
                .with_table(table)
        }
        Command::Density {
            samples,
            bins,
            delta,
        } => {
            let h = pushforward_histogram(*samples, *bins, seed)?;
            let mut table = Table::new(&["row", "col", "count"]);
            for (r, c, n) in h.iter_cells() {
                table.push(vec![r.into(), c.into(), n.into()]);
            }
            let mut report = Report::new("density")
                .field("x_range", &[-2.0, 2.0][..])
                .field("t_range", &[-2.0, 2.0][..])
                .field("bins", *bins)
                .field("total", h.total)
                .field("seed", seed);
            if let Some(d) = delta {
                report = report
                    .field("delta", *d)
                    .field("boundary_fraction", boundary_mass(*samples, *d, seed)?);
            }
            report.with_table(table)
        }
        Command::FiberSample { t, samples } => {
            let fs = sample_fiber(*t, *samples, seed)?;
            Report::new("fiber-sample")
                .field("t", *t)
                .field("seed", seed)
                .field("degenerate", fs.degenerate)
                .with_table(pair_table(&fs.pairs, true))
        }
        Command::FiberTransport { t, samples, bins } => {
            let h = fiber_transport_demo(*t, *samples, *bins, seed)?;
            let mut table = Table::new(&["bin", "lo", "hi", "count"]);
            for (k, n) in h.counts.iter().enumerate() {
                let b = h.bin_bounds(k);
                table.push(vec![k.into(), b.lo.into(), b.hi.into(), (*n).into()]);
            }
            Report::new("fiber-transport")
                .field("t", *t)
                .field("expected_lo", h.expected.lo)
                .field("expected_hi", h.expected.hi)
                .field("min", h.min)
                .field("max", h.max)
                .field("bins", h.bins)
                .field("total", h.total)
                .field("seed", seed)
                .with_table(table)
        }
    };
    Ok(report)
}

/// Runs a command, honoring `--threads`, and writes its report to `out`.
pub fn run(config: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let report = match config.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))?
            .install(|| execute(config))?,
        None => execute(config)?,
    };
    report
        .write(config.output_format(), out)
        .map_err(|e| CliError::Run(Error::Io(e)))
}

/// Parses `args` (including the program name), runs, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match &config.out {
        Some(path) => match fs::File::create(path) {
            Ok(f) => {
                let mut w = io::BufWriter::new(f);
                run(&config, &mut w).and_then(|_| w.flush().map_err(|e| Error::Io(e).into()))
            }
            Err(e) => Err(CliError::Usage(format!("cannot create {}: {e}", path.display()))),
        },
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            run(&config, &mut lock)
        }
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("su2gap: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> RunConfig {
        RunConfig::try_parse_from(std::iter::once("su2gap").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn construct_fricke_emits_matrix_spec() {
        let r = execute(&parse(&["construct", "--fricke", "0", "2"])).unwrap();
        let spec = PairSpec::parse(&r.to_json()).unwrap();
        let p = spec.to_pair().unwrap();
        assert!(p.a.approx_eq(&crate::su2::SU2Element::diagonal(std::f64::consts::FRAC_PI_2)));
        assert!(p.b.approx_eq(&crate::su2::SU2Element::IDENTITY));
    }

    #[test]
    fn exit_codes() {
        let code = |args: &[&str]| {
            let cfg = parse(args);
            match run(&cfg, &mut Vec::new()) {
                Ok(()) => 0,
                Err(e) => e.exit_code(),
            }
        };
        assert_eq!(code(&["construct", "--fricke", "2", "0"]), 2);
        assert_eq!(code(&["phi-iterate", "--t0", "3"]), 1);
        assert_eq!(code(&["fiber-image", "--t", "0", "--grid", "1"]), 1);
        assert_eq!(code(&["traces", "--pair", "/nonexistent/pair.json"]), 1);
        assert_eq!(code(&["traces", "--pair", r#"{"type":"fricke","x":2,"t":0}"#]), 2);
        assert_eq!(code(&["phi-iterate", "--t0", "-1.5"]), 0);
        assert_eq!(main_with_args(["su2gap", "bogus"]), 1);
        assert_eq!(main_with_args(["su2gap", "construct"]), 1);
    }

    #[test]
    fn negative_arguments_parse() {
        let cfg = parse(&["construct", "--triple", "-0.5", "0.25", "-1"]);
        let r = execute(&cfg).unwrap();
        let p = PairSpec::parse(&r.to_json()).unwrap().to_pair().unwrap();
        let tr = TraceTriple::of_pair(&p);
        assert!((tr.x + 0.5).abs() < 1e-12 && (tr.z + 1.0).abs() < 1e-12);
    }
}
