//! Plain-text emission: CSV tables with a one-line header and key-value
//! reports. Reals are printed with 12 significant digits in scientific
//! notation, so a parsed value equals [`printed`] of the original exactly.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::marginals::{momentum_marginal, position_marginal, MarginalCurve};
use crate::photon::{qts_pnd, DoubletPair, PhotonDistribution};
use crate::states::SuperpositionSpec;
use crate::wellsolver::{analyze_wells, DiscretizedWavefunction, SolverConfig, WellAnalysis};
use crate::wigner::{wigner_closed_form, PhaseSpaceGrid, WignerField};

/// One CSV value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
}

impl Cell {
    fn render(self, out: &mut String) {
        match self {
            Cell::Int(v) => write!(out, "{v}").unwrap(),
            Cell::Real(v) => out.push_str(&format_real(v)),
        }
    }
}

pub fn format_real(x: f64) -> String {
    format!("{x:.11e}")
}

/// The value a reader recovers from the printed form of `x`.
pub fn printed(x: f64) -> f64 {
    format_real(x).parse().expect("formatted float parses")
}

pub fn write_table<I>(header: &[&str], rows: I) -> String
where
    I: IntoIterator,
    I::Item: AsRef<[Cell]>,
{
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        for (k, cell) in row.as_ref().iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            cell.render(&mut out);
        }
        out.push('\n');
    }
    out
}

/// A parsed CSV: header names and numeric rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }
}

pub fn parse_table(text: &str) -> Result<Table> {
    let mut lines = text.lines();
    let header: Vec<String> = lines
        .next()
        .ok_or_else(|| Error::InvalidSpec("empty CSV".into()))?
        .split(',')
        .map(str::to_owned)
        .collect();
    let rows = lines
        .enumerate()
        .filter(|(_, l)| !l.is_empty())
        .map(|(k, line)| {
            let row = line
                .split(',')
                .map(|f| f.trim().parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::InvalidSpec(format!("line {}: {e}", k + 2)))?;
            if row.len() != header.len() {
                return Err(Error::InvalidSpec(format!(
                    "line {}: {} fields, header has {}",
                    k + 2,
                    row.len(),
                    header.len()
                )));
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table { header, rows })
}

/// `q,p,w`, q-major.
pub fn field_csv(field: &WignerField) -> String {
    let g = &field.grid;
    let rows = (0..g.nq).flat_map(|i| {
        (0..g.np).map(move |j| {
            [
                Cell::Real(g.q(i)),
                Cell::Real(g.p(j)),
                Cell::Real(field.get(i, j)),
            ]
        })
    });
    write_table(&["q", "p", "w"], rows)
}

pub fn curve_csv(curve: &MarginalCurve) -> String {
    let rows = curve
        .samples
        .iter()
        .map(|&(x, d)| [Cell::Real(x), Cell::Real(d)]);
    write_table(&["coordinate", "density"], rows)
}

pub fn distribution_csv(dist: &PhotonDistribution) -> String {
    let rows = dist
        .probs
        .iter()
        .enumerate()
        .map(|(n, &p)| [Cell::Int(n as i64), Cell::Real(p)]);
    write_table(&["n", "probability"], rows)
}

/// Envelope samples on `n = 0, step, …, n_max`, each with and without the
/// interference term.
pub fn envelope_csv(pair: &DoubletPair, n_max: f64, step: f64) -> String {
    let count = (n_max / step).floor() as usize + 1;
    let rows = (0..count).flat_map(|k| {
        let n = k as f64 * step;
        [true, false].map(|with| {
            let s = pair.sample(n, with);
            [
                Cell::Real(s.n),
                Cell::Real(s.value),
                Cell::Real(s.derivative),
                Cell::Int(with as i64),
            ]
        })
    });
    write_table(&["n", "value", "derivative", "with_interference"], rows)
}

pub fn potential_csv(xs: &[f64], vs: &[f64]) -> String {
    let rows = xs
        .iter()
        .zip(vs)
        .map(|(&x, &v)| [Cell::Real(x), Cell::Real(v)]);
    write_table(&["x", "V"], rows)
}

pub fn wavefunction_csv(psi: &DiscretizedWavefunction) -> String {
    let rows = psi
        .xs
        .iter()
        .zip(&psi.values)
        .map(|(&x, &v)| [Cell::Real(x), Cell::Real(v)]);
    write_table(&["x", "psi"], rows)
}

/// `key = value` lines in the given order.
pub fn key_values(pairs: &[(&str, String)]) -> String {
    pairs.iter().fold(String::new(), |mut out, (k, v)| {
        writeln!(out, "{k} = {v}").unwrap();
        out
    })
}

/// Solver summary written next to the well CSVs.
pub fn well_report(analysis: &WellAnalysis) -> String {
    let list = |xs: &[f64]| {
        xs.iter()
            .map(|&x| format_real(x))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let g = &analysis.ground;
    key_values(&[
        ("energy", format_real(g.energy)),
        ("iterations", g.iterations.to_string()),
        ("residual", format_real(g.residual)),
        ("fidelity", format_real(analysis.fidelity)),
        ("depth", format_real(analysis.spec.depth)),
        ("gamma", format_real(analysis.spec.gamma)),
        ("sigma", format_real(analysis.spec.sigma)),
        ("centers", list(&analysis.spec.centers)),
        (
            "bottoms",
            list(&analysis.spec.bottoms().unwrap_or_default()),
        ),
        ("peaks", list(&analysis.ridge_peaks)),
        ("peak_grid_step", format_real(analysis.ridge_grid.dq())),
        ("peaks_at_bottoms", analysis.peaks_at_centers().to_string()),
        (
            "barrier_height",
            analysis.barrier.map_or_else(|| "none".into(), format_real),
        ),
        ("boundary_amplitude", format_real(g.boundary_amplitude())),
        ("parity_asymmetry", format_real(g.parity_asymmetry())),
        ("points", analysis.config.points.to_string()),
        (
            "domain",
            format!(
                "{}:{}",
                format_real(analysis.config.x_min),
                format_real(analysis.config.x_max)
            ),
        ),
    ])
}

/// A named output file and its full contents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Artifact {
    pub name: String,
    pub contents: String,
}

impl Artifact {
    fn new(name: &str, contents: String) -> Self {
        Self {
            name: name.into(),
            contents,
        }
    }
}

/// Step in `n` between envelope samples.
pub const ENVELOPE_STEP: f64 = 0.25;

/// Settings shared by the renderers below.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderOptions {
    pub grid: PhaseSpaceGrid,
    pub nmax: usize,
    /// `None` uses the default domain around the target amplitudes.
    pub solver: Option<SolverConfig>,
}

impl RenderOptions {
    pub fn for_spec(spec: &SuperpositionSpec) -> Self {
        Self {
            grid: PhaseSpaceGrid::default_for(spec),
            nmax: spec.required_nmax(),
            solver: None,
        }
    }
}

pub fn render_wigner(spec: &SuperpositionSpec, opts: &RenderOptions) -> Vec<Artifact> {
    let field = wigner_closed_form(spec, &opts.grid);
    vec![Artifact::new("wigner.csv", field_csv(&field))]
}

pub fn render_marginals(spec: &SuperpositionSpec, opts: &RenderOptions) -> Vec<Artifact> {
    vec![
        Artifact::new(
            "marginal_position.csv",
            curve_csv(&position_marginal(spec, &opts.grid.qs())),
        ),
        Artifact::new(
            "marginal_momentum.csv",
            curve_csv(&momentum_marginal(spec, &opts.grid.ps())),
        ),
    ]
}

pub fn render_pnd(spec: &SuperpositionSpec, opts: &RenderOptions) -> Result<Vec<Artifact>> {
    let dist = qts_pnd(spec, opts.nmax)?;
    Ok(vec![Artifact::new("pnd.csv", distribution_csv(&dist))])
}

pub fn render_envelope(spec: &SuperpositionSpec, opts: &RenderOptions) -> Result<Vec<Artifact>> {
    let pair = DoubletPair::from_spec(spec)?;
    Ok(vec![Artifact::new(
        "envelope.csv",
        envelope_csv(&pair, opts.nmax as f64, ENVELOPE_STEP),
    )])
}

/// Potential, ground state and report of the calibrated wells.
pub fn render_well(spec: &SuperpositionSpec, opts: &RenderOptions) -> Result<Vec<Artifact>> {
    let analysis = analyze_wells(spec, opts.solver)?;
    Ok(vec![
        Artifact::new(
            "potential.csv",
            potential_csv(&analysis.ground.xs, &analysis.potential),
        ),
        Artifact::new("wavefunction.csv", wavefunction_csv(&analysis.ground)),
        Artifact::new("well_report.txt", well_report(&analysis)),
    ])
}

/// The full data set: field, both marginals, photon numbers, envelope and
/// the well report.
pub fn render_all(spec: &SuperpositionSpec, opts: &RenderOptions) -> Result<Vec<Artifact>> {
    let mut out = render_wigner(spec, opts);
    out.extend(render_marginals(spec, opts));
    out.extend(render_pnd(spec, opts)?);
    out.extend(render_envelope(spec, opts)?);
    out.extend(
        render_well(spec, opts)?
            .into_iter()
            .filter(|a| a.name == "well_report.txt"),
    );
    Ok(out)
}
