//! Command-line front end: `plot`, `compare`, `table` and `table-compare`.
//!
//! Settings resolve flags first, then the `--config` file, then built-in
//! defaults. The SVG goes to `--out` or stdout; diagnostics go to stderr.

pub mod config;
pub mod ingest;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::color::{make_context, HclColor};
use crate::density::{
    discrete_bounds, estimate, truncation_bounds, Kind, Sample, SupportBounds, DEFAULT_BINS,
    DEFAULT_COVERAGE,
};
use crate::error::{Error, Result};
use crate::geometry::{tessellate, Orientation, DEFAULT_K};
use crate::render::{
    comparison_figure, disk_pair_figure, serialize, strip_figure, table_figure, Layout,
};
use crate::table::{build_comparison, build_table, Dataset, TableConfig};

pub use config::FileConfig;
pub use ingest::{ingest_path, ingest_reader, ColumnKind, IngestSpec, Ingested};

/// Forces achromatic base colors when set to a non-empty value.
pub const NO_COLOR_ENV: &str = "HDDS_NO_COLOR";

/// The four figure types.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Plot,
    Compare,
    Table,
    TableCompare,
}

#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// Input CSV file(s).
    pub inputs: Vec<PathBuf>,
    /// TOML file with default settings.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub target: Option<String>,
    #[arg(long = "by-x")]
    pub by_x: Option<String>,
    #[arg(long = "by-y")]
    pub by_y: Option<String>,
    /// Column combined with --by-y into a composite conditioner.
    #[arg(long)]
    pub compose: Option<String>,
    /// Percentile classes for continuous conditioners.
    #[arg(long)]
    pub classes: Option<usize>,
    /// Central share of the target kept inside the bounds.
    #[arg(long)]
    pub coverage: Option<f64>,
    /// Known lower limit of the target's support.
    #[arg(long = "lower-bound", allow_hyphen_values = true)]
    pub lower_bound: Option<f64>,
    #[arg(long)]
    pub bins: Option<usize>,
    #[arg(long)]
    pub bandwidth: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Base color as `hue,chroma,luminance`.
    #[arg(long)]
    pub color: Option<String>,
    /// Second-source color as `hue,chroma,luminance`.
    #[arg(long)]
    pub color2: Option<String>,
    /// Diameter scaling exponent.
    #[arg(long)]
    pub k: Option<f64>,
    /// Baseline diameter in figure units.
    #[arg(long = "d-base")]
    pub d_base: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Overlay data points.
    #[arg(long)]
    pub dots: bool,
    /// Mark medians.
    #[arg(long)]
    pub median: bool,
    /// Cells with fewer records show data only.
    #[arg(long = "min-count")]
    pub min_count: Option<usize>,
    /// Column type hint, `name=continuous|discrete|categorical`; repeatable.
    #[arg(long = "type", value_name = "COL=KIND")]
    pub types: Vec<String>,
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

/// Fully resolved settings for one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub inputs: Vec<PathBuf>,
    pub ingest: IngestSpec,
    pub coverage: f64,
    pub lower_bound: Option<f64>,
    pub n_bins: usize,
    pub bandwidth: Option<f64>,
    pub gamma: f64,
    pub color: HclColor,
    pub color2: HclColor,
    pub k: f64,
    pub d_base: f64,
    pub seed: u64,
    pub show_dots: bool,
    pub show_median: bool,
    pub min_count: usize,
    pub out: Option<PathBuf>,
}

fn check_range(name: &str, ok: bool, value: impl std::fmt::Display) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "--{name} {value} out of range"
        )))
    }
}

impl RunConfig {
    /// Merges flags over the config file over defaults and validates ranges.
    pub fn resolve(args: &RunArgs, file: &FileConfig, no_color: bool) -> Result<Self> {
        let target = args
            .target
            .clone()
            .or_else(|| file.target.clone())
            .ok_or_else(|| Error::Usage("--target is required".into()))?;
        let mut hints = BTreeMap::new();
        for (col, kind) in &file.types {
            hints.insert(col.clone(), kind.parse::<ColumnKind>()?);
        }
        for t in &args.types {
            let (col, kind) = t
                .split_once('=')
                .ok_or_else(|| Error::Usage(format!("--type `{t}` is not COL=KIND")))?;
            hints.insert(col.to_string(), kind.parse::<ColumnKind>()?);
        }
        let classes = args.classes.or(file.classes).unwrap_or(3);
        let ingest = IngestSpec {
            target,
            by_x: args.by_x.clone().or_else(|| file.by_x.clone()),
            by_y: args.by_y.clone().or_else(|| file.by_y.clone()),
            compose: args.compose.clone().or_else(|| file.compose.clone()),
            hints,
            levels: file.levels.clone(),
            classes,
        };
        let parse_color = |flag: &Option<String>, file: &Option<String>, default: HclColor| {
            flag.as_ref()
                .or(file.as_ref())
                .map_or(Ok(default), |s| s.parse::<HclColor>())
        };
        let mut color = parse_color(&args.color, &file.color, HclColor::default_base())?;
        let mut color2 = parse_color(&args.color2, &file.color2, HclColor::default_second())?;
        if no_color {
            color = color.grayscale();
            color2 = color2.grayscale();
        }
        let cfg = RunConfig {
            inputs: args.inputs.clone(),
            ingest,
            coverage: args.coverage.or(file.coverage).unwrap_or(DEFAULT_COVERAGE),
            lower_bound: args.lower_bound.or(file.lower_bound),
            n_bins: args.bins.or(file.bins).unwrap_or(DEFAULT_BINS),
            bandwidth: args.bandwidth.or(file.bandwidth),
            gamma: args.gamma.or(file.gamma).unwrap_or(1.0),
            color,
            color2,
            k: args.k.or(file.k).unwrap_or(DEFAULT_K),
            d_base: args.d_base.or(file.d_base).unwrap_or(160.0),
            seed: args.seed.or(file.seed).unwrap_or(0),
            show_dots: args.dots || file.dots.unwrap_or(false),
            show_median: args.median || file.median.unwrap_or(false),
            min_count: args.min_count.or(file.min_count).unwrap_or(5),
            out: args.out.clone().or_else(|| file.out.clone()),
        };
        check_range("classes", classes >= 2, classes)?;
        check_range(
            "coverage",
            cfg.coverage > 0.0 && cfg.coverage <= 1.0,
            cfg.coverage,
        )?;
        check_range("bins", cfg.n_bins >= 2, cfg.n_bins)?;
        if let Some(h) = cfg.bandwidth {
            check_range("bandwidth", h > 0.0 && h.is_finite(), h)?;
        }
        check_range("gamma", cfg.gamma > 0.0 && cfg.gamma.is_finite(), cfg.gamma)?;
        check_range("k", cfg.k > 0.0 && cfg.k.is_finite(), cfg.k)?;
        check_range(
            "d-base",
            cfg.d_base > 0.0 && cfg.d_base.is_finite(),
            cfg.d_base,
        )?;
        if let Some(lo) = cfg.lower_bound {
            check_range("lower-bound", lo.is_finite(), lo)?;
        }
        Ok(cfg)
    }

    fn table_config(&self) -> TableConfig {
        TableConfig {
            coverage: self.coverage,
            lower_known: self.lower_bound,
            n_bins: self.n_bins,
            bandwidth: self.bandwidth,
            k: self.k,
            d_base: self.d_base,
            base: self.color,
            base2: self.color2,
            gamma: self.gamma,
            min_count: self.min_count,
        }
    }

    fn layout(&self) -> Layout {
        Layout {
            show_median: self.show_median,
            show_dots: self.show_dots,
            seed: self.seed,
            ..Layout::default()
        }
    }
}

fn support(sample: &Sample, cfg: &RunConfig) -> Result<SupportBounds> {
    match sample.kind() {
        Kind::Continuous => truncation_bounds(sample, cfg.coverage, cfg.lower_bound),
        Kind::Discrete => discrete_bounds(sample),
    }
}

fn expect_inputs(cfg: &RunConfig, allowed: &[usize], command: &str) -> Result<()> {
    if allowed.contains(&cfg.inputs.len()) {
        Ok(())
    } else {
        Err(Error::Usage(format!(
            "`{command}` takes {} input file(s), got {}",
            allowed
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(" or "),
            cfg.inputs.len()
        )))
    }
}

fn load(cfg: &RunConfig, index: usize, diag: &mut dyn Write) -> Result<Dataset> {
    let path = &cfg.inputs[index];
    let got = ingest_path(path, &cfg.ingest)?;
    if got.dropped > 0 {
        let _ = writeln!(
            diag,
            "hdds: {}: dropped {} of {} records with missing or unparseable values",
            path.display(),
            got.dropped,
            got.rows
        );
    }
    Ok(got.dataset)
}

/// Runs one subcommand and returns the SVG bytes.
pub fn render_command(command: Command, cfg: &RunConfig, diag: &mut dyn Write) -> Result<Vec<u8>> {
    if cfg.ingest.by_y.is_some() && cfg.ingest.by_x.is_none() {
        return Err(Error::Usage("--by-y needs --by-x".into()));
    }
    let layout = cfg.layout();
    let doc = match command {
        Command::Plot => {
            expect_inputs(cfg, &[1], "plot")?;
            let ds = load(cfg, 0, diag)?;
            let bounds = support(&ds.target, cfg)?;
            let grid = estimate(&ds.target, &bounds, cfg.n_bins, cfg.bandwidth)?;
            let ctx = make_context([&grid], cfg.color, cfg.gamma)?;
            let strip = tessellate(&grid, &ctx, cfg.d_base, Orientation::Up)?;
            let title = format!("{} ({})", cfg.ingest.target, ds.source_label);
            strip_figure(&strip, Some(&ds.target), &title, &layout)
        }
        Command::Compare => {
            expect_inputs(cfg, &[1, 2], "compare")?;
            let (a, b) = if cfg.inputs.len() == 2 {
                let mut single = cfg.clone();
                single.ingest.by_x = None;
                single.ingest.by_y = None;
                single.ingest.compose = None;
                (load(&single, 0, diag)?, load(&single, 1, diag)?)
            } else {
                let ds = load(cfg, 0, diag)?;
                if cfg.ingest.by_x.is_none() || ds.cond_x.n_levels() != 2 {
                    return Err(Error::Usage(
                        "`compare` on one file needs --by-x with exactly two levels".into(),
                    ));
                }
                let a = ds
                    .split_by_x(0)
                    .ok_or_else(|| Error::NoRecords(ds.cond_x.levels()[0].clone()))?;
                let b = ds
                    .split_by_x(1)
                    .ok_or_else(|| Error::NoRecords(ds.cond_x.levels()[1].clone()))?;
                (a, b)
            };
            let bounds = support(&a.target.pooled(&b.target)?, cfg)?;
            let ga = estimate(&a.target, &bounds, cfg.n_bins, cfg.bandwidth)?;
            let gb = estimate(&b.target, &bounds, cfg.n_bins, cfg.bandwidth)?;
            let ca = make_context([&ga], cfg.color, cfg.gamma)?;
            let cb = make_context([&gb], cfg.color2, cfg.gamma)?;
            let top = tessellate(&ga, &ca, cfg.d_base, Orientation::Up)?;
            let bottom = tessellate(&gb, &cb, cfg.d_base, Orientation::Down)?;
            disk_pair_figure(
                &top,
                &bottom,
                (Some(&a.target), Some(&b.target)),
                (&a.source_label, &b.source_label),
                (cfg.color, cfg.color2),
                &layout,
            )?
        }
        Command::Table => {
            expect_inputs(cfg, &[1], "table")?;
            if cfg.ingest.by_x.is_none() {
                return Err(Error::Usage("`table` needs --by-x".into()));
            }
            let ds = load(cfg, 0, diag)?;
            let table = build_table(&ds, &cfg.table_config())?;
            table_figure(&table, &layout)?
        }
        Command::TableCompare => {
            expect_inputs(cfg, &[2], "table-compare")?;
            if cfg.ingest.by_x.is_none() {
                return Err(Error::Usage("`table-compare` needs --by-x".into()));
            }
            let a = load(cfg, 0, diag)?;
            let b = load(cfg, 1, diag)?;
            let table = build_comparison(&a, &b, &cfg.table_config())?;
            comparison_figure(&table, &layout)?
        }
    };
    Ok(serialize(&doc))
}

/// Resolves settings, renders, and writes the output.
pub fn run(
    command: Command,
    args: &RunArgs,
    diag: &mut dyn Write,
    stdout: &mut dyn Write,
) -> Result<()> {
    let file = match &args.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let no_color = std::env::var_os(NO_COLOR_ENV).is_some_and(|v| !v.is_empty());
    let cfg = RunConfig::resolve(args, &file, no_color)?;
    let bytes = render_command(command, &cfg, diag)?;
    match &cfg.out {
        Some(path) => std::fs::write(path, &bytes).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        }),
        None => stdout.write_all(&bytes).map_err(|source| Error::Io {
            path: PathBuf::from("<stdout>"),
            source,
        }),
    }
}

/// Entry point behind the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let parsed = match CliArgs::try_parse_from(args) {
        Ok(p) => p,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = stdout.write_all(rendered.as_bytes());
            } else {
                let first = rendered.lines().next().unwrap_or("usage error");
                let _ = writeln!(stderr, "hdds: {}", first.trim_start_matches("error: "));
            }
            return code;
        }
    };
    let (command, args) = parsed.command.split();
    match run(command, &args, stderr, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "hdds: {e}");
            e.exit_code()
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "hdds",
    version,
    about = "Half-disk density strips and HDDS tables as SVG"
)]
struct CliArgs {
    #[command(subcommand)]
    command: CommandArgs,
}

#[derive(Debug, Subcommand)]
enum CommandArgs {
    /// One strip for a numeric column.
    Plot(RunArgs),
    /// Two strips stacked into a disk: two files, or one file split by --by-x.
    Compare(RunArgs),
    /// HDDS table conditioned on --by-x and optionally --by-y.
    Table(RunArgs),
    /// Two sources on one HDDS table layout.
    TableCompare(RunArgs),
}

impl CommandArgs {
    fn split(self) -> (Command, RunArgs) {
        match self {
            CommandArgs::Plot(a) => (Command::Plot, a),
            CommandArgs::Compare(a) => (Command::Compare, a),
            CommandArgs::Table(a) => (Command::Table, a),
            CommandArgs::TableCompare(a) => (Command::TableCompare, a),
        }
    }
}
