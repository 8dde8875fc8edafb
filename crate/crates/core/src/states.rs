//! Weighted superpositions `Σ c_j |μ_j⟩` of real-amplitude coherent states.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

/// Tail mass tolerated beyond a Fock truncation.
pub const TRUNCATION_TOLERANCE: f64 = 1e-12;

/// One coherent-state component: amplitude `mu` on the position line and a
/// signed real weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub mu: f64,
    pub coeff: f64,
}

impl Term {
    pub fn new(mu: f64, coeff: f64) -> Self {
        Self { mu, coeff }
    }
}

/// Reflection symmetry of a state (or of the photon-number support it implies).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    /// Invariant under `μ → −μ`; only even photon numbers.
    Even,
    /// Changes sign under `μ → −μ`; only odd photon numbers.
    Odd,
    None,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
            Parity::None => "none",
        })
    }
}

/// The (unnormalized) superposition `Σ_j c_j |μ_j⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperpositionSpec {
    terms: Vec<Term>,
    label: Option<String>,
    norm: f64,
}

impl SuperpositionSpec {
    pub fn new(terms: Vec<Term>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidSpec("no terms".into()));
        }
        if let Some(t) = terms
            .iter()
            .find(|t| !t.mu.is_finite() || !t.coeff.is_finite())
        {
            return Err(Error::InvalidSpec(format!(
                "non-finite term (mu = {}, coeff = {})",
                t.mu, t.coeff
            )));
        }
        if terms.iter().all(|t| t.coeff == 0.0) {
            return Err(Error::InvalidSpec("all coefficients are zero".into()));
        }
        let norm = gram_sum(&terms);
        // Cancellation below this scale is indistinguishable from rounding.
        let scale: f64 = terms.iter().map(|t| t.coeff.abs()).sum::<f64>().powi(2);
        if !(norm > scale * 1e-14) {
            return Err(Error::Unnormalizable(norm));
        }
        Ok(Self {
            terms,
            label: None,
            norm,
        })
    }

    /// Builds a spec from parallel amplitude and coefficient lists.
    pub fn from_parts(amps: &[f64], coeffs: &[f64]) -> Result<Self> {
        if amps.len() != coeffs.len() {
            return Err(Error::InvalidSpec(format!(
                "{} amplitudes but {} coefficients",
                amps.len(),
                coeffs.len()
            )));
        }
        Self::new(
            amps.iter()
                .zip(coeffs)
                .map(|(&m, &c)| Term::new(m, c))
                .collect(),
        )
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// Gram sum `N = Σ_{j,k} c_j c_k ⟨μ_k|μ_j⟩`.
    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn max_abs_mu(&self) -> f64 {
        self.terms.iter().map(|t| t.mu.abs()).fold(0.0, f64::max)
    }

    pub fn amplitudes(&self) -> Vec<f64> {
        self.terms.iter().map(|t| t.mu).collect()
    }

    pub fn coefficients(&self) -> Vec<f64> {
        self.terms.iter().map(|t| t.coeff).collect()
    }

    /// Terms with equal amplitudes merged, keyed by amplitude bits, dropping
    /// components whose weights cancel.
    pub(crate) fn merged(&self) -> BTreeMap<OrdF64, f64> {
        let mut map = BTreeMap::new();
        for t in &self.terms {
            // -0.0 and 0.0 are the same state
            let mu = if t.mu == 0.0 { 0.0 } else { t.mu };
            *map.entry(OrdF64(mu)).or_insert(0.0) += t.coeff;
        }
        map.retain(|_, c| *c != 0.0);
        map
    }

    /// Symmetry under the reflection `μ → −μ` applied to every term.
    pub fn parity(&self) -> Parity {
        let merged = self.merged();
        let reflected = |sign: f64| {
            merged.iter().all(|(mu, c)| {
                merged.get(&OrdF64(if mu.0 == 0.0 { 0.0 } else { -mu.0 })) == Some(&(sign * c))
            })
        };
        if reflected(1.0) {
            Parity::Even
        } else if reflected(-1.0) {
            Parity::Odd
        } else {
            Parity::None
        }
    }

    /// Smallest Fock truncation accepted by [`fock_amplitudes`].
    pub fn required_nmax(&self) -> usize {
        required_nmax(self.max_abs_mu())
    }
}

/// Total order wrapper for finite amplitudes used as map keys.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct OrdF64(pub f64);

impl Eq for OrdF64 {}

impl PartialOrd for OrdF64 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrdF64 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Truncation rule `max(64, ⌈μ² + 10μ + 16⌉)` for largest amplitude `mu_max`.
pub fn required_nmax(mu_max: f64) -> usize {
    let m = mu_max.abs();
    (m * m + 10.0 * m + 16.0).ceil().max(64.0) as usize
}

fn gram_sum(terms: &[Term]) -> f64 {
    let mut total = 0.0;
    for a in terms {
        for b in terms {
            total += a.coeff * b.coeff * overlap(a.mu, b.mu);
        }
    }
    total
}

/// `⟨μ₂|μ₁⟩ = exp(−(μ₁−μ₂)²/2)` for real amplitudes.
pub fn overlap(mu1: f64, mu2: f64) -> f64 {
    let d = mu1 - mu2;
    (-0.5 * d * d).exp()
}

/// Normalization constant `N` of the superposition.
pub fn normalization(spec: &SuperpositionSpec) -> f64 {
    spec.norm()
}

/// Position amplitude `⟨q|μ⟩` of a single coherent state.
#[inline]
pub fn coherent_amplitude(mu: f64, q: f64) -> f64 {
    let d = q - mu;
    (2.0 / PI).powf(0.25) * (-d * d).exp()
}

/// Normalized position wavefunction `ψ(q) = N^{−1/2} Σ_j c_j ⟨q|μ_j⟩`.
pub fn position_wavefunction(spec: &SuperpositionSpec, q: f64) -> f64 {
    let sum: f64 = spec
        .terms
        .iter()
        .map(|t| t.coeff * coherent_amplitude(t.mu, q))
        .sum();
    sum / spec.norm.sqrt()
}

/// Fock-basis amplitudes `a_n = ⟨n|ψ⟩` for `n = 0..=nmax`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockExpansion {
    pub amplitudes: Vec<f64>,
    pub nmax: usize,
}

impl FockExpansion {
    pub fn total_probability(&self) -> f64 {
        self.amplitudes.iter().map(|a| a * a).sum()
    }
}

/// `ln |⟨n|μ⟩|` together with the sign of `⟨n|μ⟩`; `None` for an exact zero.
pub(crate) fn log_fock_component(mu: f64, n: usize) -> Option<(f64, f64)> {
    let half_ln_fact = 0.5 * ln_gamma(n as f64 + 1.0);
    if mu == 0.0 {
        return (n == 0).then_some((0.0, 1.0));
    }
    let sign = if mu < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
    Some((
        -0.5 * mu * mu + n as f64 * mu.abs().ln() - half_ln_fact,
        sign,
    ))
}

/// Expands the normalized state in the Fock basis, in log space.
pub fn fock_amplitudes(spec: &SuperpositionSpec, nmax: usize) -> Result<FockExpansion> {
    let required = spec.required_nmax();
    if nmax < required {
        return Err(Error::TruncationTooSmall {
            given: nmax,
            required,
        });
    }
    let inv_sqrt_norm = spec.norm.sqrt().recip();
    let amplitudes = (0..=nmax)
        .map(|n| {
            let sum: f64 = spec
                .terms
                .iter()
                .filter_map(|t| log_fock_component(t.mu, n).map(|(l, s)| t.coeff * s * l.exp()))
                .sum();
            sum * inv_sqrt_norm
        })
        .collect();
    let expansion = FockExpansion { amplitudes, nmax };
    let total = expansion.total_probability();
    debug_assert!(
        total > 1.0 - TRUNCATION_TOLERANCE && total < 1.0 + 1e-12,
        "Fock mass {total} outside tolerance"
    );
    Ok(expansion)
}

/// Named states: `Y1` (α=4, β=7), `Y2` (α=1, β=6), `Y3` (α=2, β=6),
/// `vacuum`, and `even-cat(α)` / `odd-cat(α)` (also written `even-cat:α`).
pub fn preset(name: &str) -> Result<SuperpositionSpec> {
    let trimmed = name.trim();
    let unknown = || Error::UnknownPreset(name.to_string());
    let quad =
        |a: f64, b: f64| SuperpositionSpec::from_parts(&[a, -a, b, -b], &[1.0, 1.0, 1.0, 1.0]);
    let spec = match trimmed.to_ascii_lowercase().as_str() {
        "y1" => quad(4.0, 7.0)?,
        "y2" => quad(1.0, 6.0)?,
        "y3" => quad(2.0, 6.0)?,
        "vacuum" => SuperpositionSpec::from_parts(&[0.0], &[1.0])?,
        other => {
            let (kind, arg) = other
                .strip_suffix(')')
                .and_then(|s| s.split_once('('))
                .or_else(|| other.split_once(':'))
                .ok_or_else(unknown)?;
            let alpha: f64 = arg.trim().parse().map_err(|_| unknown())?;
            if !alpha.is_finite() {
                return Err(unknown());
            }
            let sign = match kind {
                "even-cat" => 1.0,
                "odd-cat" => -1.0,
                _ => return Err(unknown()),
            };
            SuperpositionSpec::from_parts(&[alpha, -alpha], &[1.0, sign])?
        }
    };
    Ok(spec.with_label(trimmed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{linspace, trapezoid};

    fn gaussian_overlap_oracle(a: f64, b: f64) -> f64 {
        let xs = linspace(-30.0, 30.0, 12001);
        let ys: Vec<f64> = xs
            .iter()
            .map(|&q| (2.0 / PI).sqrt() * (-(q - a).powi(2) - (q - b).powi(2)).exp())
            .collect();
        trapezoid(&ys, xs[1] - xs[0])
    }

    #[test]
    fn overlap_examples() {
        assert_eq!(overlap(3.3, 3.3), 1.0);
        let o = overlap(4.0, 7.0);
        assert!((o - (-4.5f64).exp()).abs() < 1e-16);
        assert!((o - 1.1109e-2).abs() < 1e-6);
        assert!((o - gaussian_overlap_oracle(4.0, 7.0)).abs() < 1e-12);
        let o = overlap(2.0, -2.0);
        assert!((o - gaussian_overlap_oracle(2.0, -2.0)).abs() < 1e-12);
        assert!((o - 3.3546e-4).abs() < 1e-8);
    }

    #[test]
    fn normalization_examples() {
        let cat = preset("even-cat(2)").unwrap();
        assert!((normalization(&cat) - 2.0 * (1.0 + (-8.0f64).exp())).abs() < 1e-14);
        assert!((normalization(&cat) - 2.0006709).abs() < 1e-7);

        let y1 = preset("Y1").unwrap();
        let (a, b) = (4.0f64, 7.0f64);
        let closed = 2.0 * (1.0 + (-2.0 * a * a).exp())
            + 2.0 * (1.0 + (-2.0 * b * b).exp())
            + 4.0 * ((-(a - b).powi(2) / 2.0).exp() + (-(a + b).powi(2) / 2.0).exp());
        assert!((normalization(&y1) - closed).abs() < 1e-14);
        assert!((normalization(&y1) - 4.0444).abs() < 1e-4);

        assert_eq!(normalization(&preset("vacuum").unwrap()), 1.0);
    }

    #[test]
    fn normalization_matches_quadrature_of_unnormalized_density() {
        let spec = SuperpositionSpec::from_parts(&[0.3, -1.2, 2.5], &[1.0, -0.7, 0.4]).unwrap();
        let xs = linspace(-12.0, 12.0, 4801);
        let ys: Vec<f64> = xs
            .iter()
            .map(|&q| {
                spec.terms()
                    .iter()
                    .map(|t| t.coeff * coherent_amplitude(t.mu, q))
                    .sum::<f64>()
                    .powi(2)
            })
            .collect();
        assert!((trapezoid(&ys, xs[1] - xs[0]) - spec.norm()).abs() < 1e-12);
    }

    #[test]
    fn invalid_specs() {
        assert!(matches!(
            SuperpositionSpec::new(vec![]),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(
            SuperpositionSpec::from_parts(&[f64::NAN], &[1.0]),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(
            SuperpositionSpec::from_parts(&[1.0, 2.0], &[0.0, 0.0]),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(
            SuperpositionSpec::from_parts(&[1.0, 1.0], &[1.0, -1.0]),
            Err(Error::Unnormalizable(_))
        ));
        assert!(SuperpositionSpec::from_parts(&[1.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn vacuum_wavefunction_at_origin() {
        let vac = preset("vacuum").unwrap();
        // normalize exp(-q^2) by quadrature
        let xs = linspace(-10.0, 10.0, 2001);
        let ys: Vec<f64> = xs.iter().map(|q| (-2.0 * q * q).exp()).collect();
        let expected = 1.0 / trapezoid(&ys, xs[1] - xs[0]).sqrt();
        assert!((position_wavefunction(&vac, 0.0) - expected).abs() < 1e-12);
        assert!((position_wavefunction(&vac, 0.0) - 0.8932).abs() < 1e-4);
    }

    #[test]
    fn even_qts_wavefunction_is_symmetric() {
        for name in ["Y1", "Y2", "Y3"] {
            let s = preset(name).unwrap();
            for i in 0..200 {
                let q = -10.0 + 0.1 * i as f64;
                assert_eq!(position_wavefunction(&s, q), position_wavefunction(&s, -q));
            }
        }
    }

    #[test]
    fn y1_density_peaks() {
        let s = preset("Y1").unwrap();
        let xs = linspace(-10.0, 10.0, 200_001);
        let d: Vec<f64> = xs
            .iter()
            .map(|&q| position_wavefunction(&s, q).powi(2))
            .collect();
        let peaks: Vec<f64> = (1..d.len() - 1)
            .filter(|&i| d[i] > d[i - 1] && d[i] >= d[i + 1] && d[i] > 1e-3)
            .map(|i| xs[i])
            .collect();
        assert_eq!(peaks.len(), 4, "{peaks:?}");
        for (p, c) in peaks.iter().zip([-7.0, -4.0, 4.0, 7.0]) {
            assert!((p - c).abs() < 0.05, "peak {p} vs {c}");
        }
    }

    #[test]
    fn wavefunction_square_integrates_to_one() {
        for name in ["Y1", "Y2", "Y3", "vacuum", "odd-cat(2)", "even-cat(0.5)"] {
            let s = preset(name).unwrap();
            let xs = linspace(-15.0, 15.0, 6001);
            let ys: Vec<f64> = xs
                .iter()
                .map(|&q| position_wavefunction(&s, q).powi(2))
                .collect();
            assert!((trapezoid(&ys, xs[1] - xs[0]) - 1.0).abs() < 1e-8, "{name}");
        }
    }

    #[test]
    fn fock_examples() {
        let vac = preset("vacuum").unwrap();
        let f = fock_amplitudes(&vac, 64).unwrap();
        assert_eq!(f.amplitudes[0], 1.0);
        assert!(f.amplitudes[1..].iter().all(|&a| a == 0.0));

        for name in ["Y1", "Y2", "Y3", "even-cat(2)"] {
            let s = preset(name).unwrap();
            let f = fock_amplitudes(&s, s.required_nmax()).unwrap();
            for n in (1..=f.nmax).step_by(2) {
                assert!(f.amplitudes[n].abs() < 1e-12, "{name} n={n}");
            }
            assert!((f.total_probability() - 1.0).abs() < 1e-12);
        }

        let cat = preset("even-cat(2)").unwrap();
        let f = fock_amplitudes(&cat, 64).unwrap();
        let p: Vec<f64> = f.amplitudes.iter().map(|a| a * a).collect();
        let argmax = (0..p.len()).max_by(|&i, &j| p[i].total_cmp(&p[j])).unwrap();
        assert_eq!(argmax, 4);
    }

    #[test]
    fn fock_truncation_rule() {
        let y1 = preset("Y1").unwrap();
        assert_eq!(y1.required_nmax(), 135);
        assert_eq!(preset("vacuum").unwrap().required_nmax(), 64);
        assert!(matches!(
            fock_amplitudes(&y1, 130),
            Err(Error::TruncationTooSmall {
                given: 130,
                required: 135
            })
        ));
    }

    #[test]
    fn presets() {
        let y1 = preset("Y1").unwrap();
        assert_eq!(y1.amplitudes(), vec![4.0, -4.0, 7.0, -7.0]);
        assert_eq!(y1.coefficients(), vec![1.0; 4]);
        let y3 = preset("Y3").unwrap();
        assert_eq!(y3.amplitudes(), vec![2.0, -2.0, 6.0, -6.0]);
        let vac = preset("vacuum").unwrap();
        assert_eq!(vac.terms(), &[Term::new(0.0, 1.0)]);
        let odd = preset("odd-cat:2").unwrap();
        assert_eq!(odd.coefficients(), vec![1.0, -1.0]);
        assert_eq!(odd.parity(), Parity::Odd);
        assert!(matches!(preset("Y9"), Err(Error::UnknownPreset(_))));
        assert!(matches!(
            preset("even-cat(x)"),
            Err(Error::UnknownPreset(_))
        ));
    }

    #[test]
    fn parity_detection() {
        assert_eq!(preset("Y1").unwrap().parity(), Parity::Even);
        assert_eq!(preset("vacuum").unwrap().parity(), Parity::Even);
        let odd_qts =
            SuperpositionSpec::from_parts(&[4.0, -4.0, 7.0, -7.0], &[1.0, -1.0, 1.0, -1.0])
                .unwrap();
        assert_eq!(odd_qts.parity(), Parity::Odd);
        // sign pattern (+,-,-,-) has no definite parity
        let mixed =
            SuperpositionSpec::from_parts(&[4.0, -4.0, 7.0, -7.0], &[1.0, -1.0, -1.0, -1.0])
                .unwrap();
        assert_eq!(mixed.parity(), Parity::None);
    }
}
