//! The `qmi-orbit` command line.
//!
//! Exit codes: 0 on success, 2 on usage errors, 1 on domain errors (the
//! message starts with the library error name).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::extremize::{
    build_rho_min, delta_i_max_energy, extremize, i_max, sample_orbit_qmi, ExtremalReport,
};
use crate::marginal2q::MarginalRegion;
use crate::numfmt::round_sig;
use crate::qcore::{DensityMatrix, Dims, Spectrum};
use crate::thermo::{
    collision_simulate, heat_flow_bound_check, max_anomalous_heat, refinery_gain, szilard_work,
    CollisionUnitary, Decorrelation, HeatSource, ThermalScenario,
};

/// Slack allowed by `verify` around the closed-form extremes.
pub const VERIFY_TOL: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(name = "qmi-orbit", version, about = "Extremal mutual information on unitary orbits")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Input {
    /// Joint spectrum as a comma-separated list
    #[arg(long, allow_hyphen_values = true)]
    pub spectrum: Option<String>,
    /// Density matrix JSON file {"d_a", "d_b", "re", "im"}
    #[arg(long)]
    pub state: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Local dimensions, e.g. 2x3 (ignored with --state)
    #[arg(long, default_value = "2x2")]
    pub dims: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write output here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimal and maximal QMI on the orbit
    Extremize {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        common: Common,
        /// Mean energy for the two-qubit energy-conserving variant
        #[arg(long)]
        energy: Option<f64>,
    },
    /// Rasterize the two-qubit marginal region
    Region {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 101)]
        grid: usize,
        #[arg(long)]
        energy: Option<f64>,
        /// Also write the marker JSON to this path
        #[arg(long)]
        markers: Option<PathBuf>,
    },
    /// Szilard-engine work and refinery gain
    Szilard {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1.0)]
        temp: f64,
    },
    /// Anomalous heat-flow bound and entanglement witness threshold
    Heatflow {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        ta: f64,
        #[arg(long)]
        tb: f64,
        /// Use the orbit maximum (required with --spectrum)
        #[arg(long)]
        worst_case: bool,
        /// Final state file; checks the heat-flow inequalities for state -> after
        #[arg(long, requires = "state")]
        after: Option<PathBuf>,
    },
    /// Collision-model equilibration of two qubits
    Collide {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        ta: f64,
        #[arg(long)]
        tb: f64,
        #[arg(long, default_value_t = 0.3)]
        theta: f64,
        #[arg(long, default_value_t = 200)]
        steps: usize,
        #[arg(long, value_enum, default_value = "product")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "swap")]
        unitary: UnitaryArg,
    },
    /// Haar-sample the orbit and compare with the closed forms
    Verify {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Product,
    Dephase,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum UnitaryArg {
    Swap,
    Random,
}

/// Parses `0.6,0.3,0.1,0` into a sorted spectrum, noting reorders.
pub fn parse_spectrum(s: &str) -> Result<Spectrum> {
    let values = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| Error::NotADistribution(format!("--spectrum {s:?}: {e}")))?;
    if values.windows(2).any(|w| w[0] < w[1]) {
        log::info!("spectrum sorted into non-increasing order");
    }
    Spectrum::new(values)
}

enum Loaded {
    Spectrum(Spectrum, Dims),
    State(DensityMatrix),
}

impl Loaded {
    fn spectrum(&self) -> Spectrum {
        match self {
            Loaded::Spectrum(s, _) => s.clone(),
            Loaded::State(rho) => rho.spectrum(),
        }
    }

    fn dims(&self) -> Dims {
        match self {
            Loaded::Spectrum(_, d) => *d,
            Loaded::State(rho) => rho.dims(),
        }
    }
}

fn read_state(path: &Path) -> Result<DensityMatrix> {
    DensityMatrix::from_json(&std::fs::read_to_string(path)?)
}

fn load(input: &Input, common: &Common) -> Result<Loaded> {
    match (&input.spectrum, &input.state) {
        (Some(s), None) => {
            let dims: Dims = common.dims.parse()?;
            let sp = parse_spectrum(s)?;
            sp.check_dims(dims)?;
            Ok(Loaded::Spectrum(sp, dims))
        }
        (None, Some(p)) => Ok(Loaded::State(read_state(p)?)),
        _ => unreachable!("clap enforces exactly one input"),
    }
}

/// Rounds every number in a JSON tree to 12 significant digits.
pub fn round_json(v: &mut Value) {
    match v {
        Value::Number(n) => {
            if let Some(x) = n.as_f64().filter(|_| !n.is_i64() && !n.is_u64()) {
                if let Some(r) = serde_json::Number::from_f64(round_sig(x, 12)) {
                    *n = r;
                }
            }
        }
        Value::Array(a) => a.iter_mut().for_each(round_json),
        Value::Object(o) => o.values_mut().for_each(round_json),
        _ => {}
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut v = serde_json::to_value(value)?;
    round_json(&mut v);
    Ok(serde_json::to_string_pretty(&v)? + "\n")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SzilardReport {
    pub temperature: f64,
    /// Work from the supplied state, if one was given.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub work: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub refinery_gain: Option<f64>,
    /// Work after the best entropy-preserving refinement.
    pub refined_work: f64,
}

impl SzilardReport {
    pub fn validate(&self) -> Result<()> {
        if !(self.temperature > 0.0) || self.refinery_gain.is_some_and(|g| g < 0.0) {
            return Err(Error::InvalidMode("inconsistent Szilard report".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub spectrum: Vec<f64>,
    pub dims: [usize; 2],
    pub samples: usize,
    pub seed: u64,
    pub i_min_bits: f64,
    pub i_max_bits: f64,
    pub sampled_min_bits: f64,
    pub sampled_max_bits: f64,
    pub within_bounds: bool,
}

impl VerifyReport {
    pub fn validate(&self) -> Result<()> {
        let inside = self.sampled_min_bits >= self.i_min_bits - VERIFY_TOL
            && self.sampled_max_bits <= self.i_max_bits + VERIFY_TOL
            && self.sampled_min_bits <= self.sampled_max_bits;
        if inside != self.within_bounds {
            return Err(Error::InvalidMode("within_bounds disagrees with the reported values".into()));
        }
        Spectrum::new(self.spectrum.clone())?;
        Ok(())
    }
}

/// Rendered output and whether the run counts as a domain failure.
struct Output {
    body: String,
    failed: Option<String>,
}

impl Output {
    fn ok(body: String) -> Self {
        Output { body, failed: None }
    }
}

fn execute(cmd: &Command) -> Result<Output> {
    match cmd {
        Command::Extremize { input, common, energy } => {
            let loaded = load(input, common)?;
            let (sp, dims) = (loaded.spectrum(), loaded.dims());
            let res = extremize(&sp, dims)?;
            let mut report = ExtremalReport::new(&sp, dims, &res);
            if let Some(e) = *energy {
                if dims != Dims::qubits() {
                    return Err(Error::DimensionMismatch("--energy needs 2x2".into()));
                }
                let region = MarginalRegion::new(sp.clone(), Some(e))?;
                report.energy = Some(e);
                report.delta_e_bits = Some(delta_i_max_energy(&sp, e)?.bits());
                report.q = Some(region.energy_max_point()?.xy());
            }
            Ok(Output::ok(to_json(&report)?))
        }
        Command::Region { input, common, grid, energy, markers } => {
            let loaded = load(input, common)?;
            let region = MarginalRegion::new(loaded.spectrum(), *energy)?;
            let raster = region.rasterize(*grid)?;
            let marker_json = to_json(&raster.markers)?;
            if let Some(p) = markers {
                std::fs::write(p, &marker_json)?;
            }
            Ok(Output::ok(match common.format.unwrap_or(Format::Csv) {
                Format::Csv => raster.to_csv(),
                Format::Json => marker_json,
            }))
        }
        Command::Szilard { input, common, temp } => {
            let loaded = load(input, common)?;
            let rho_min = build_rho_min(&loaded.spectrum(), loaded.dims())?.density_matrix();
            let refined_work = szilard_work(&rho_min, *temp)?;
            let report = match &loaded {
                Loaded::State(rho) => SzilardReport {
                    temperature: *temp,
                    work: Some(szilard_work(rho, *temp)?),
                    refinery_gain: Some(refinery_gain(rho, *temp)?),
                    refined_work,
                },
                Loaded::Spectrum(..) => SzilardReport { temperature: *temp, work: None, refinery_gain: None, refined_work },
            };
            Ok(Output::ok(to_json(&report)?))
        }
        Command::Heatflow { input, common, ta, tb, worst_case, after } => {
            let sc = ThermalScenario::qubits(*ta, *tb)?;
            let loaded = load(input, common)?;
            match (&loaded, after) {
                (Loaded::State(before), Some(p)) => {
                    let after = read_state(p)?;
                    Ok(Output::ok(to_json(&heat_flow_bound_check(before, &after, &sc)?)?))
                }
                (Loaded::State(rho), None) => {
                    let sp = rho.spectrum();
                    let source = if *worst_case { HeatSource::Spectrum(&sp) } else { HeatSource::State(rho) };
                    Ok(Output::ok(to_json(&max_anomalous_heat(source, &sc)?)?))
                }
                (Loaded::Spectrum(sp, _), _) => {
                    if !*worst_case {
                        return Err(Error::InvalidMode("--spectrum requires --worst-case".into()));
                    }
                    Ok(Output::ok(to_json(&max_anomalous_heat(HeatSource::Spectrum(sp), &sc)?)?))
                }
            }
        }
        Command::Collide { common, ta, tb, theta, steps, mode, unitary } => {
            let sc = ThermalScenario::qubits(*ta, *tb)?;
            let unitary = match unitary {
                UnitaryArg::Swap => CollisionUnitary::PartialSwap { theta: *theta },
                UnitaryArg::Random => CollisionUnitary::RandomStrong,
            };
            let mode = match mode {
                ModeArg::Product => Decorrelation::FullProduct,
                ModeArg::Dephase => Decorrelation::DephaseToMinimal,
            };
            let trace = collision_simulate(&sc, *steps, unitary, mode, common.seed)?;
            Ok(Output::ok(match common.format.unwrap_or(Format::Csv) {
                Format::Csv => trace.to_csv(),
                Format::Json => to_json(&trace)?,
            }))
        }
        Command::Verify { input, common, samples } => {
            let loaded = load(input, common)?;
            let (sp, dims) = (loaded.spectrum(), loaded.dims());
            let res = extremize(&sp, dims)?;
            let draws = sample_orbit_qmi(&sp, dims, (*samples).max(1), common.seed)?;
            let lo = draws.iter().map(|d| d.qmi.bits()).fold(f64::INFINITY, f64::min);
            let hi = draws.iter().map(|d| d.qmi.bits()).fold(f64::NEG_INFINITY, f64::max);
            let i_max = i_max(&sp, dims).bits();
            let i_min = res.i_min.bits();
            let within = lo >= i_min - VERIFY_TOL && hi <= i_max + VERIFY_TOL;
            let report = VerifyReport {
                spectrum: sp.values().to_vec(),
                dims: [dims.d_a, dims.d_b],
                samples: draws.len(),
                seed: common.seed,
                i_min_bits: i_min,
                i_max_bits: i_max,
                sampled_min_bits: lo,
                sampled_max_bits: hi,
                within_bounds: within,
            };
            let failed = (!within).then(|| {
                format!("sampled QMI in [{lo}, {hi}] escapes the closed-form range [{i_min}, {i_max}]")
            });
            Ok(Output { body: to_json(&report)?, failed })
        }
    }
}

fn common_of(cmd: &Command) -> &Common {
    match cmd {
        Command::Extremize { common, .. }
        | Command::Region { common, .. }
        | Command::Szilard { common, .. }
        | Command::Heatflow { common, .. }
        | Command::Collide { common, .. }
        | Command::Verify { common, .. } => common,
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    2
                }
            };
            return code;
        }
    };
    let outcome = execute(&cli.command).and_then(|out| {
        match &common_of(&cli.command).out {
            Some(p) => std::fs::write(p, &out.body)?,
            None => stdout.write_all(out.body.as_bytes())?,
        }
        Ok(out.failed)
    });
    match outcome {
        Ok(None) => 0,
        Ok(Some(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}
