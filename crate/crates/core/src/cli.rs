//! Command-line front end. Every subcommand writes one table to `--out`
//! (standard output by default) as CSV or aligned text.
//!
//! Exit codes: 0 on success, 2 for malformed input, 3 when a numerical
//! precondition fails (truncation, support, degenerate splitter or spin).

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::beam_splitter::{
    apply_bs, bs_route_mandel, embed_with_vacuum, entanglement_potential, schmidt_analysis, verify_mode_transform,
    BSParams, SearchConfig, DEFAULT_SCHMIDT_THRESHOLD,
};
use crate::criteria::{evaluate_all, mandel_violation, DEFAULT_TOLERANCE};
use crate::dicke::{schwinger_identity_deviations, spin_algebra_residuals};
use crate::error::{Error, Result};
use crate::experiments::{acs_fidelity_sweep, rank_equivalence_with_threshold, sweep_hz_to_mandel, sweep_xi2_to_squeezing};
use crate::fock::{pure_state_from_spec, state_from_spec_with, ModeState, StateSpec, DEFAULT_TAIL_THRESHOLD};
use crate::io::{self as table_io, format_number, Format, Table};

pub const DEFAULT_DIM: usize = 40;
pub const THREADS_ENV: &str = "HPNC_THREADS";

#[derive(Debug, Parser)]
#[command(name = "hpnc", version, about = "Nonclassicality criteria through beam-splitter and collective-spin routes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Single-mode criterion margins for one state.
    Criteria {
        #[command(flatten)]
        common: Common,
        /// Order of the higher-order Mandel-type criterion.
        #[arg(long, default_value_t = 3)]
        order: usize,
    },
    /// Feed the state and vacuum through a splitter; report output entanglement.
    BsEntangle {
        #[command(flatten)]
        common: Common,
    },
    /// Schmidt decomposition of the splitter output.
    Schmidt {
        #[command(flatten)]
        common: Common,
    },
    /// Entanglement potential: output entropy maximised over splitter settings,
    /// or evaluated at fixed settings when `--t` is given.
    Potential {
        #[command(flatten)]
        common: Common,
    },
    /// Finite-N collective-spin quantities against their single-mode limits.
    DickeSweep {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        mode: Option<SweepMode>,
        /// Append a wall-clock `runtime_ms` column (breaks byte-identical output).
        #[arg(long)]
        timing: bool,
    },
    /// Schmidt rank of a cat on a circle against the Gram rank of its ACS images.
    RankEq {
        #[command(flatten)]
        common: Common,
        /// Component counts, comma separated.
        #[arg(long, value_delimiter = ',')]
        r: Vec<usize>,
        #[arg(long)]
        radius: Option<f64>,
    },
    /// Operator identities: splitter mode transform, Schwinger identity, spin algebra.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Photon-number cutoff for the Schwinger identity check.
        #[arg(long)]
        n_max: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepMode {
    Hz,
    Xi2,
    Fidelity,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Table,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Csv => Format::Csv,
            OutputFormat::Table => Format::Table,
        }
    }
}

/// Flags shared by every subcommand. Any of them may also come from `--config`;
/// flags given on the command line win.
#[derive(Clone, Debug, Default, Args)]
pub struct Common {
    /// State spec: inline JSON, `@path`, or a path to a JSON file.
    #[arg(long)]
    pub spec: Option<String>,
    /// Fock truncation per mode.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Particle numbers, comma separated.
    #[arg(long = "N", value_delimiter = ',')]
    pub n_values: Vec<usize>,
    /// Splitter transmission amplitude; `r = sqrt(1 - t^2)`.
    #[arg(long)]
    pub t: Option<f64>,
    #[arg(long)]
    pub phi: Option<f64>,
    /// Schmidt/Gram threshold, or the criterion tolerance for `criteria`.
    #[arg(long)]
    pub threshold: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// JSON file with any of: spec, dim, N, t, phi, threshold, out, format, mode, r, radius, n_max.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    spec: Option<StateSpec>,
    dim: Option<usize>,
    #[serde(rename = "N", default)]
    n_values: Vec<usize>,
    t: Option<f64>,
    phi: Option<f64>,
    threshold: Option<f64>,
    out: Option<PathBuf>,
    format: Option<OutputFormat>,
    mode: Option<SweepMode>,
    #[serde(default)]
    r: Vec<usize>,
    radius: Option<f64>,
    n_max: Option<usize>,
}

/// Flags merged with the optional config file.
struct Resolved {
    spec: Option<StateSpec>,
    dim: Option<usize>,
    n_values: Vec<usize>,
    t: Option<f64>,
    phi: Option<f64>,
    threshold: Option<f64>,
    out: Option<PathBuf>,
    format: Format,
    file: FileConfig,
}

impl Resolved {
    fn new(common: &Common) -> Result<Self> {
        let mut file: FileConfig = match &common.config {
            Some(path) => serde_json::from_reader(io::BufReader::new(File::open(path)?))
                .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?,
            None => FileConfig::default(),
        };
        let spec = match &common.spec {
            Some(s) => Some(parse_spec(s)?),
            None => file.spec.take(),
        };
        let n_values = if common.n_values.is_empty() { std::mem::take(&mut file.n_values) } else { common.n_values.clone() };
        Ok(Self {
            spec,
            dim: common.dim.or(file.dim),
            n_values,
            t: common.t.or(file.t),
            phi: common.phi.or(file.phi),
            threshold: common.threshold.or(file.threshold),
            out: common.out.clone().or_else(|| file.out.take()),
            format: common.format.or(file.format).unwrap_or_default().into(),
            file,
        })
    }

    fn spec(&self) -> Result<&StateSpec> {
        self.spec.as_ref().ok_or_else(|| Error::Config("--spec is required".into()))
    }

    fn dim(&self) -> Result<usize> {
        let dim = self.dim.unwrap_or(DEFAULT_DIM);
        if dim == 0 {
            return Err(Error::Config("--dim must be positive".into()));
        }
        Ok(dim)
    }

    fn n_values(&self) -> Result<&[usize]> {
        if self.n_values.is_empty() {
            return Err(Error::Config("--N is required".into()));
        }
        Ok(&self.n_values)
    }

    /// Balanced splitter at `phi = 0` unless overridden.
    fn params(&self) -> Result<BSParams> {
        let phi = self.phi.unwrap_or(0.0);
        match self.t {
            Some(t) => BSParams::from_transmission(t, phi),
            None => Ok(BSParams::balanced(phi)),
        }
    }

    fn emit(&self, table: &Table) -> Result<()> {
        match &self.out {
            Some(path) => {
                let mut w = BufWriter::new(File::create(path)?);
                table.write(&mut w, self.format)?;
                w.flush()?;
            }
            None => {
                let stdout = io::stdout();
                let mut w = stdout.lock();
                table.write(&mut w, self.format)?;
                w.flush()?;
            }
        }
        Ok(())
    }
}

/// Inline JSON if it starts with `{`, otherwise a file path (optionally `@`-prefixed).
pub fn parse_spec(arg: &str) -> Result<StateSpec> {
    let trimmed = arg.trim_start();
    let spec: StateSpec = if trimmed.starts_with('{') {
        serde_json::from_str(trimmed).map_err(|e| Error::InvalidSpec(e.to_string()))?
    } else {
        let path = trimmed.strip_prefix('@').unwrap_or(trimmed);
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::InvalidSpec(format!("{path}: {e}")))?
    };
    spec.validate()?;
    Ok(spec)
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    configure_threads();
    match run(&cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("hpnc: {}", e.to_string().replace('\n', " "));
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_numerical() {
        3
    } else {
        2
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        // a second call fails harmlessly once the pool exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

pub fn run(command: &Command) -> Result<()> {
    match command {
        Command::Criteria { common, order } => {
            let cfg = Resolved::new(common)?;
            let state = state_from_spec_with(cfg.spec()?, cfg.dim()?, DEFAULT_TAIL_THRESHOLD)?;
            let reports = evaluate_all(&state, *order, cfg.threshold.unwrap_or(DEFAULT_TOLERANCE))?;
            cfg.emit(&table_io::criteria_table(&reports))
        }
        Command::BsEntangle { common } => {
            let cfg = Resolved::new(common)?;
            let params = cfg.params()?;
            let dim = cfg.dim()?;
            let threshold = cfg.threshold.unwrap_or(DEFAULT_SCHMIDT_THRESHOLD);
            let psi = pure_state_from_spec(cfg.spec()?, dim)?;
            let out = apply_bs(&embed_with_vacuum(&psi, dim)?, &params)?;
            let schmidt = schmidt_analysis(&out, threshold);
            let mode = ModeState::Pure(psi.clone());
            let mut t = Table::new(["t", "r", "phi", "schmidt_rank", "entropy_bits", "mandel", "bs_route_mandel"]);
            t.push(vec![
                format_number(params.t),
                format_number(params.r),
                format_number(params.phi),
                schmidt.rank.to_string(),
                format_number(schmidt.entropy_bits),
                format_number(mandel_violation(&psi)?),
                format_number(bs_route_mandel(&mode, &params)?),
            ]);
            cfg.emit(&t)
        }
        Command::Schmidt { common } => {
            let cfg = Resolved::new(common)?;
            let dim = cfg.dim()?;
            let psi = pure_state_from_spec(cfg.spec()?, dim)?;
            let out = apply_bs(&embed_with_vacuum(&psi, dim)?, &cfg.params()?)?;
            let result = schmidt_analysis(&out, cfg.threshold.unwrap_or(DEFAULT_SCHMIDT_THRESHOLD));
            cfg.emit(&table_io::schmidt_table(&[result]))
        }
        Command::Potential { common } => {
            let cfg = Resolved::new(common)?;
            let psi = pure_state_from_spec(cfg.spec()?, cfg.dim()?)?;
            let search = if cfg.t.is_some() { SearchConfig::fixed(cfg.params()?) } else { SearchConfig::default() };
            let p = entanglement_potential(&psi, &search)?;
            let mut t = Table::new(["entropy_bits", "t", "r", "phi"]);
            t.push(vec![
                format_number(p.entropy_bits),
                format_number(p.params.t),
                format_number(p.params.r),
                format_number(p.params.phi),
            ]);
            cfg.emit(&t)
        }
        Command::DickeSweep { common, mode, timing } => {
            let cfg = Resolved::new(common)?;
            let mode = mode.or(cfg.file.mode).unwrap_or(SweepMode::Hz);
            let spec = cfg.spec()?;
            let n_values = cfg.n_values()?;
            let records = match mode {
                SweepMode::Hz => sweep_hz_to_mandel(spec, cfg.dim()?, n_values)?,
                SweepMode::Xi2 => sweep_xi2_to_squeezing(spec, cfg.dim()?, n_values)?,
                SweepMode::Fidelity => match spec {
                    StateSpec::Coherent { alpha } => acs_fidelity_sweep(*alpha, n_values)?,
                    _ => return Err(Error::Config("fidelity mode needs a coherent spec".into())),
                },
            };
            cfg.emit(&table_io::sweep_table(&records, *timing))
        }
        Command::RankEq { common, r, radius } => {
            let cfg = Resolved::new(common)?;
            let rs = if r.is_empty() { cfg.file.r.clone() } else { r.clone() };
            if rs.is_empty() {
                return Err(Error::Config("--r is required".into()));
            }
            let radius = radius.or(cfg.file.radius).unwrap_or(2.0);
            let params = cfg.params()?;
            let dim = cfg.dim()?;
            let n = match cfg.n_values.as_slice() {
                [] => 400,
                [n] => *n,
                _ => return Err(Error::Config("rank-eq takes a single --N".into())),
            };
            let threshold = cfg.threshold.unwrap_or(DEFAULT_SCHMIDT_THRESHOLD);
            let records = rs
                .iter()
                .map(|&r| rank_equivalence_with_threshold(r, radius, &params, n, dim, threshold))
                .collect::<Result<Vec<_>>>()?;
            cfg.emit(&table_io::rank_table(&records))
        }
        Command::Verify { common, n_max } => {
            let cfg = Resolved::new(common)?;
            let params = cfg.params()?;
            let dim = cfg.dim.unwrap_or(12);
            let n_max = n_max.or(cfg.file.n_max).unwrap_or(10);
            let n_particles = cfg.n_values.first().copied().unwrap_or(20);
            let (id_a, id_b) = schwinger_identity_deviations(n_max)?;
            let [comm_z, comm_plus, casimir] = spin_algebra_residuals(n_particles);
            let mut t = Table::new(["check", "deviation"]);
            let mut row = |name: &str, v: f64| t.push(vec![name.to_string(), format_number(v)]);
            row("mode_transform", verify_mode_transform(&params, dim));
            row("schwinger_normal_order", id_a);
            row("schwinger_s_plus_squared", id_b);
            row("spin_commutator_plus_minus", comm_z);
            row("spin_commutator_z_plus", comm_plus);
            row("spin_casimir", casimir);
            cfg.emit(&t)
        }
    }
}
