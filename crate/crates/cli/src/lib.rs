//! Argument parsing and file emission for the `qts` binary.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use qts_core::export::{
    format_real, render_all, render_envelope, render_marginals, render_pnd, render_well,
    render_wigner, Artifact, RenderOptions,
};
use qts_core::{preset, PhaseSpaceGrid, SolverConfig, SuperpositionSpec};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Usage(#[from] clap::Error),
    #[error(transparent)]
    Core(#[from] qts_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(e) if !e.use_stderr() => 0,
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Wigner,
    Marginals,
    Pnd,
    Envelope,
    Well,
    All,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Wigner => "wigner",
            Command::Marginals => "marginals",
            Command::Pnd => "pnd",
            Command::Envelope => "envelope",
            Command::Well => "well",
            Command::All => "all",
        }
    }
}

/// `min:max:count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

fn parse_range(s: &str) -> Result<Range, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [min, max, count] = parts.as_slice() else {
        return Err(format!("expected min:max:count, got '{s}'"));
    };
    let min: f64 = min.parse().map_err(|e| format!("min '{min}': {e}"))?;
    let max: f64 = max.parse().map_err(|e| format!("max '{max}': {e}"))?;
    let count: usize = count.parse().map_err(|e| format!("count '{count}': {e}"))?;
    if !(min < max) || count < 2 {
        return Err(format!("need min < max and count ≥ 2, got '{s}'"));
    }
    Ok(Range { min, max, count })
}

fn parse_domain(s: &str) -> Result<(f64, f64), String> {
    let (min, max) = s
        .split_once(':')
        .ok_or_else(|| format!("expected min:max, got '{s}'"))?;
    let min: f64 = min.parse().map_err(|e| format!("min '{min}': {e}"))?;
    let max: f64 = max.parse().map_err(|e| format!("max '{max}': {e}"))?;
    if !(min < max) {
        return Err(format!("need min < max, got '{s}'"));
    }
    Ok((min, max))
}

#[derive(Debug, Parser)]
#[command(
    name = "qts",
    version,
    about = "Coherent-state superposition analyses emitted as CSV"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Wigner field on a q-p grid
    Wigner(Flags),
    /// Position and momentum distributions
    Marginals(Flags),
    /// Photon-number distribution
    Pnd(Flags),
    /// Continuous-n envelope and its derivative
    Envelope(Flags),
    /// Calibrated quadruple-well ground state
    Well(Flags),
    /// Every data file plus a manifest
    All(Flags),
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["preset", "amps"]))]
struct Flags {
    /// Named state: Y1, Y2, Y3, vacuum, even-cat(A), odd-cat(A)
    #[arg(long)]
    preset: Option<String>,
    /// Comma-separated coherent amplitudes
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
    amps: Option<Vec<f64>>,
    /// Comma-separated coefficients, one per amplitude (default all 1)
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        num_args = 1,
        requires = "amps"
    )]
    coeffs: Option<Vec<f64>>,
    /// Position grid as min:max:count
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    qrange: Option<Range>,
    /// Momentum grid as min:max:count
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    prange: Option<Range>,
    /// Photon-number truncation; raised to the accuracy minimum when lower
    #[arg(long)]
    nmax: Option<usize>,
    /// Output directory
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Solver residual tolerance
    #[arg(long)]
    tol: Option<f64>,
    /// Solver grid points
    #[arg(long)]
    points: Option<usize>,
    /// Solver domain as min:max
    #[arg(long, value_parser = parse_domain, allow_hyphen_values = true)]
    domain: Option<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SpecSource {
    Preset(String),
    Inline { amps: Vec<f64>, coeffs: Vec<f64> },
}

impl SpecSource {
    pub fn resolve(&self) -> qts_core::Result<SuperpositionSpec> {
        match self {
            SpecSource::Preset(name) => preset(name),
            SpecSource::Inline { amps, coeffs } => SuperpositionSpec::from_parts(amps, coeffs),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub source: SpecSource,
    pub qrange: Option<Range>,
    pub prange: Option<Range>,
    pub nmax: Option<usize>,
    pub out: PathBuf,
    pub tol: Option<f64>,
    pub points: Option<usize>,
    pub domain: Option<(f64, f64)>,
}

/// Parses a full argument vector, program name first.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    let (command, flags) = match cli.command {
        Sub::Wigner(f) => (Command::Wigner, f),
        Sub::Marginals(f) => (Command::Marginals, f),
        Sub::Pnd(f) => (Command::Pnd, f),
        Sub::Envelope(f) => (Command::Envelope, f),
        Sub::Well(f) => (Command::Well, f),
        Sub::All(f) => (Command::All, f),
    };
    let source = match (flags.preset, flags.amps) {
        (Some(name), None) => SpecSource::Preset(name),
        (None, Some(amps)) => {
            let coeffs = flags.coeffs.unwrap_or_else(|| vec![1.0; amps.len()]);
            if coeffs.len() != amps.len() {
                return Err(clap::Error::raw(
                    clap::error::ErrorKind::ValueValidation,
                    format!(
                        "{} coefficients given for {} amplitudes\n",
                        coeffs.len(),
                        amps.len()
                    ),
                ));
            }
            SpecSource::Inline { amps, coeffs }
        }
        _ => unreachable!("clap enforces exactly one spec source"),
    };
    Ok(RunConfig {
        command,
        source,
        qrange: flags.qrange,
        prange: flags.prange,
        nmax: flags.nmax,
        out: flags.out,
        tol: flags.tol,
        points: flags.points,
        domain: flags.domain,
    })
}

impl RunConfig {
    pub fn render_options(&self, spec: &SuperpositionSpec) -> qts_core::Result<RenderOptions> {
        let mut opts = RenderOptions::for_spec(spec);
        let g = opts.grid;
        let q = self.qrange.unwrap_or(Range {
            min: g.q_min,
            max: g.q_max,
            count: g.nq,
        });
        let p = self.prange.unwrap_or(Range {
            min: g.p_min,
            max: g.p_max,
            count: g.np,
        });
        opts.grid = PhaseSpaceGrid::new(q.min, q.max, q.count, p.min, p.max, p.count)?;
        opts.nmax = self.nmax.map_or(opts.nmax, |n| n.max(opts.nmax));
        if self.tol.is_some() || self.points.is_some() || self.domain.is_some() {
            let mut solver = SolverConfig::for_centers(spec.max_abs_mu());
            if let Some((lo, hi)) = self.domain {
                solver.x_min = lo;
                solver.x_max = hi;
            }
            if let Some(points) = self.points {
                solver.points = points;
            }
            if let Some(tol) = self.tol {
                solver.tol = tol;
            }
            solver.validate()?;
            opts.solver = Some(solver);
        }
        Ok(opts)
    }

    fn manifest(
        &self,
        spec: &SuperpositionSpec,
        opts: &RenderOptions,
        files: &[Artifact],
    ) -> String {
        let list = |xs: Vec<f64>| {
            xs.iter()
                .map(|&x| format_real(x))
                .collect::<Vec<_>>()
                .join(",")
        };
        let g = &opts.grid;
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        let mut out = String::new();
        let mut kv = |k: &str, v: String| writeln!(out, "{k} = {v}").unwrap();
        kv("command", self.command.name().into());
        if let SpecSource::Preset(name) = &self.source {
            kv("preset", name.clone());
        }
        kv("amplitudes", list(spec.amplitudes()));
        kv("coefficients", list(spec.coefficients()));
        kv(
            "qrange",
            format!("{}:{}:{}", format_real(g.q_min), format_real(g.q_max), g.nq),
        );
        kv(
            "prange",
            format!("{}:{}:{}", format_real(g.p_min), format_real(g.p_max), g.np),
        );
        kv("nmax", opts.nmax.to_string());
        if let Some(s) = &opts.solver {
            kv(
                "solver_domain",
                format!("{}:{}", format_real(s.x_min), format_real(s.x_max)),
            );
            kv("solver_points", s.points.to_string());
            kv("solver_tol", format_real(s.tol));
        }
        for a in files {
            kv("output", a.name.clone());
        }
        kv("timestamp", timestamp.to_string());
        out
    }
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, CliError> {
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    Ok(path)
}

/// Computes the requested outputs and writes them under `config.out`.
/// Returns the written paths in emission order.
pub fn run(config: &RunConfig) -> Result<Vec<PathBuf>, CliError> {
    let spec = config.source.resolve()?;
    let opts = config.render_options(&spec)?;
    let artifacts = match config.command {
        Command::Wigner => render_wigner(&spec, &opts),
        Command::Marginals => render_marginals(&spec, &opts),
        Command::Pnd => render_pnd(&spec, &opts)?,
        Command::Envelope => render_envelope(&spec, &opts)?,
        Command::Well => render_well(&spec, &opts)?,
        Command::All => render_all(&spec, &opts)?,
    };
    fs::create_dir_all(&config.out).map_err(|source| CliError::Io {
        path: config.out.clone(),
        source,
    })?;
    let mut written = artifacts
        .iter()
        .map(|a| write_file(&config.out, &a.name, &a.contents))
        .collect::<Result<Vec<_>, _>>()?;
    if config.command == Command::All {
        let manifest = config.manifest(&spec, &opts, &artifacts);
        written.push(write_file(&config.out, "manifest.txt", &manifest)?);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &str) -> Result<RunConfig, clap::Error> {
        parse_args(std::iter::once("qts").chain(args.split_whitespace()))
    }

    #[test]
    fn ranges() {
        assert_eq!(
            parse_range("-8:8:401").unwrap(),
            Range {
                min: -8.0,
                max: 8.0,
                count: 401
            }
        );
        assert!(parse_range("8:-8:401").is_err());
        assert!(parse_range("0:1").is_err());
        assert!(parse_range("0:1:1").is_err());
        assert!(parse_range("a:1:3").is_err());
        assert_eq!(parse_domain("-3.5:2").unwrap(), (-3.5, 2.0));
    }

    #[test]
    fn preset_config() {
        let cfg = parse("pnd --preset Y1 --nmax 130 --out ./run").unwrap();
        assert_eq!(cfg.command, Command::Pnd);
        let spec = cfg.source.resolve().unwrap();
        let mut amps = spec.amplitudes();
        amps.sort_by(f64::total_cmp);
        assert_eq!(amps, vec![-7.0, -4.0, 4.0, 7.0]);
        assert_eq!(cfg.out, PathBuf::from("./run"));
        // requested truncation is raised to the accuracy minimum
        assert_eq!(cfg.render_options(&spec).unwrap().nmax, 135);
    }

    #[test]
    fn inline_config() {
        let cfg =
            parse("wigner --amps 2,-2 --coeffs 1,1 --qrange -8:8:401 --prange -8:8:401").unwrap();
        assert_eq!(
            cfg.source,
            SpecSource::Inline {
                amps: vec![2.0, -2.0],
                coeffs: vec![1.0, 1.0]
            }
        );
        let spec = cfg.source.resolve().unwrap();
        let opts = cfg.render_options(&spec).unwrap();
        assert_eq!((opts.grid.nq, opts.grid.np), (401, 401));
        assert_eq!(opts.grid.q_min, -8.0);
    }

    #[test]
    fn usage_errors() {
        for bad in [
            "wigner --preset Y1 --preset Y2",
            "wigner --preset Y1 --amps 1,-1",
            "wigner",
            "wigner --preset Y1 --bogus",
            "wigner --amps 1,x",
            "wigner --amps 1,-1 --coeffs 1",
            "wigner --preset Y1 --qrange 1:0:3",
            "frobnicate --preset Y1",
        ] {
            let err = parse(bad).unwrap_err();
            assert_eq!(CliError::from(err).exit_code(), 2, "{bad}");
        }
    }

    #[test]
    fn solver_overrides() {
        let cfg = parse("well --preset Y3 --points 801 --tol 1e-9 --domain -20:20").unwrap();
        let spec = cfg.source.resolve().unwrap();
        let s = cfg.render_options(&spec).unwrap().solver.unwrap();
        assert_eq!(
            (s.points, s.tol, s.x_min, s.x_max),
            (801, 1e-9, -20.0, 20.0)
        );
        let bad = parse("well --preset Y3 --points 2").unwrap();
        assert!(bad.render_options(&spec).is_err());
    }
}
