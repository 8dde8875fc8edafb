//! Photon-number statistics of coherent-state superpositions.
//!
//! The primary route squares the Fock amplitudes of the state itself
//! ([`qts_pnd`]). For symmetric two-doublet states `|α⟩ ± |−α⟩ + |β⟩ ± |−β⟩`
//! the distribution factors as `[1 ± (−1)ⁿ] · envelope(n)`, where the
//! envelope is a sum of two Poisson terms plus the inter-Poissonian cross
//! term `e^{−(α²+β²)/2} (αβ)ⁿ / n!`. Envelopes are evaluated for real `n`
//! through `Γ(n+1)`.

use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::states::{fock_amplitudes, required_nmax, SuperpositionSpec};

pub use crate::states::Parity;

/// Probabilities `℘(n)` for `n = 0..=nmax`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhotonDistribution {
    pub probs: Vec<f64>,
    pub parity: Parity,
}

impl PhotonDistribution {
    pub fn nmax(&self) -> usize {
        self.probs.len() - 1
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .map(|(n, p)| n as f64 * p)
            .sum()
    }

    pub fn variance(&self) -> f64 {
        let m = self.mean();
        self.probs
            .iter()
            .enumerate()
            .map(|(n, p)| (n as f64 - m).powi(2) * p)
            .sum()
    }

    /// Local maxima of the subsequence `n ≡ start (mod 2)`, including an
    /// endpoint that exceeds its only neighbour. Values below `floor` are
    /// ignored.
    pub fn subsequence_peaks(&self, start: usize, floor: f64) -> Vec<usize> {
        let idx: Vec<usize> = (start..self.probs.len()).step_by(2).collect();
        let p = |k: usize| self.probs[idx[k]];
        (0..idx.len())
            .filter(|&k| {
                let left = k == 0 || p(k) > p(k - 1);
                let right = k + 1 == idx.len() || p(k) >= p(k + 1);
                left && right && p(k) > floor
            })
            .map(|k| idx[k])
            .collect()
    }
}

/// A continuous-`n` sample of an envelope and its derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeSample {
    pub n: f64,
    pub value: f64,
    pub derivative: f64,
}

/// `ln(xᵏⁿ)` with `0⁰ = 1`.
fn ln_pow(base: f64, exponent: f64) -> f64 {
    if exponent == 0.0 {
        0.0
    } else if base == 0.0 {
        f64::NEG_INFINITY
    } else {
        exponent * base.ln()
    }
}

/// Poisson distribution `e^{−α²} α^{2n} / n!` of a coherent state.
pub fn poisson_pnd(alpha: f64, n: usize) -> f64 {
    let a = alpha.abs();
    (-a * a + ln_pow(a, 2.0 * n as f64) - ln_gamma(n as f64 + 1.0)).exp()
}

/// Photon-number distribution of an arbitrary superposition.
pub fn qts_pnd(spec: &SuperpositionSpec, nmax: usize) -> Result<PhotonDistribution> {
    let fock = fock_amplitudes(spec, nmax)?;
    Ok(PhotonDistribution {
        probs: fock.amplitudes.iter().map(|a| a * a).collect(),
        parity: spec.parity(),
    })
}

fn parity_factor(parity: Parity, n: usize) -> f64 {
    let s = if n % 2 == 0 { 1.0 } else { -1.0 };
    match parity {
        Parity::Even => 1.0 + s,
        Parity::Odd => 1.0 - s,
        Parity::None => 1.0,
    }
}

/// Two doublets `(|α⟩ ± |−α⟩) + (|β⟩ ± |−β⟩)` with equal weights; `Even`
/// takes the `+` signs, `Odd` the `−` signs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubletPair {
    pub alpha: f64,
    pub beta: f64,
    pub parity: Parity,
    norm: f64,
}

impl DoubletPair {
    pub fn new(alpha: f64, beta: f64, parity: Parity) -> Result<Self> {
        let (a, b) = (alpha.abs(), beta.abs());
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidSpec(
                "doublet amplitudes must be finite".into(),
            ));
        }
        let sign = match parity {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
            Parity::None => {
                return Err(Error::Unsupported(
                    "doublet pairs need a definite parity".into(),
                ))
            }
        };
        let norm = 2.0 * (1.0 + sign * (-2.0 * a * a).exp())
            + 2.0 * (1.0 + sign * (-2.0 * b * b).exp())
            + 4.0 * ((-(a - b).powi(2) / 2.0).exp() + sign * (-(a + b).powi(2) / 2.0).exp());
        if !(norm > 1e-14) {
            return Err(Error::Unnormalizable(norm));
        }
        Ok(Self {
            alpha: a,
            beta: b,
            parity,
            norm,
        })
    }

    /// Recognizes specs of the form `c(|α⟩ ± |−α⟩) + c(|β⟩ ± |−β⟩)`, including
    /// the two-term cat (`β = α`).
    pub fn from_spec(spec: &SuperpositionSpec) -> Result<Self> {
        let parity = spec.parity();
        let unsupported = || {
            Error::Unsupported(
                "expected a parity-definite superposition of one or two equally weighted doublets"
                    .into(),
            )
        };
        if parity == Parity::None {
            return Err(unsupported());
        }
        let merged = spec.merged();
        let doublets: Vec<(f64, f64)> = merged
            .iter()
            .filter(|(mu, _)| mu.0 >= 0.0)
            .map(|(mu, c)| (mu.0, *c))
            .collect();
        let weight = doublets[0].1.abs();
        let equal = doublets
            .iter()
            .all(|(_, c)| (c.abs() - weight).abs() <= 1e-12 * weight);
        let same_sign = doublets
            .iter()
            .all(|(_, c)| c.signum() == doublets[0].1.signum());
        // a zero amplitude counts twice in a doublet
        let zero_ok = doublets.iter().all(|&(mu, _)| mu != 0.0) || doublets.len() == 1;
        match (doublets.as_slice(), equal && same_sign && zero_ok) {
            ([(a, _)], true) => Self::new(*a, *a, parity),
            ([(a, _), (b, _)], true) => Self::new(*a, *b, parity),
            _ => Err(unsupported()),
        }
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    fn ln_terms(&self, n: f64) -> [(f64, f64); 3] {
        let (a, b) = (self.alpha, self.beta);
        let lg = ln_gamma(n + 1.0);
        [
            (-a * a + ln_pow(a, 2.0 * n) - lg, 2.0 * a.ln()),
            (-b * b + ln_pow(b, 2.0 * n) - lg, 2.0 * b.ln()),
            (-(a * a + b * b) / 2.0 + ln_pow(a * b, n) - lg, (a * b).ln()),
        ]
    }

    /// Envelope `(4/N)[(℘_α + ℘_β)/2 + e^{−(α²+β²)/2}(αβ)ⁿ/Γ(n+1)]`, optionally
    /// without the inter-Poissonian term.
    pub fn envelope(&self, n: f64, include_interference: bool) -> f64 {
        let [ta, tb, tab] = self.ln_terms(n);
        let mut s = 0.5 * (ta.0.exp() + tb.0.exp());
        if include_interference {
            s += tab.0.exp();
        }
        4.0 * s / self.norm
    }

    /// `d/dn` of [`Self::envelope`], using `d/dn ln Γ(n+1) = ψ(n+1)`.
    pub fn envelope_derivative(&self, n: f64, include_interference: bool) -> f64 {
        let psi = digamma_unchecked(n + 1.0);
        let term = |(ln_value, ln_rate): (f64, f64)| {
            let v = ln_value.exp();
            if v == 0.0 {
                0.0
            } else {
                v * (ln_rate - psi)
            }
        };
        let [ta, tb, tab] = self.ln_terms(n);
        let mut s = 0.5 * (term(ta) + term(tb));
        if include_interference {
            s += term(tab);
        }
        4.0 * s / self.norm
    }

    pub fn sample(&self, n: f64, include_interference: bool) -> EnvelopeSample {
        EnvelopeSample {
            n,
            value: self.envelope(n, include_interference),
            derivative: self.envelope_derivative(n, include_interference),
        }
    }

    /// Inter-Poissonian part `[1 ± (−1)ⁿ](4/N) e^{−(α²+β²)/2}(αβ)ⁿ/n!`.
    pub fn inter_poissonian(&self, n: usize) -> f64 {
        let tab = self.ln_terms(n as f64)[2];
        parity_factor(self.parity, n) * 4.0 * tab.0.exp() / self.norm
    }

    /// Closed-form `℘(n) = [1 ± (−1)ⁿ] · envelope(n)`.
    pub fn pnd(&self, n: usize) -> f64 {
        parity_factor(self.parity, n) * self.envelope(n as f64, true)
    }

    /// Zeros of the envelope derivative in `[lo, hi]`: a scan at unit steps
    /// brackets sign changes, bisection refines them.
    pub fn envelope_extrema(&self, lo: f64, hi: f64, include_interference: bool) -> Vec<f64> {
        let f = |n: f64| self.envelope_derivative(n, include_interference);
        let mut roots = Vec::new();
        let mut a = lo;
        let mut fa = f(a);
        while a < hi {
            let b = (a + 1.0).min(hi);
            let fb = f(b);
            if fa == 0.0 {
                roots.push(a);
            } else if fa.signum() != fb.signum() && fb != 0.0 {
                roots.push(bisect(&f, a, b, fa));
            }
            a = b;
            fa = fb;
        }
        if fa == 0.0 {
            roots.push(a);
        }
        roots
    }
}

fn bisect(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Inter-Poissonian cross term of the two-doublet state with the given parity.
pub fn inter_poissonian(alpha: f64, beta: f64, n: usize, parity: Parity) -> Result<f64> {
    Ok(DoubletPair::new(alpha, beta, parity)?.inter_poissonian(n))
}

/// Envelope of the even two-doublet state at real `n ≥ 0`.
pub fn envelope(alpha: f64, beta: f64, n: f64) -> Result<f64> {
    if !(n >= 0.0) {
        return Err(Error::OutsideDomain { x: n });
    }
    Ok(DoubletPair::new(alpha, beta, Parity::Even)?.envelope(n, true))
}

/// Derivative in `n` of the even envelope, with or without the
/// inter-Poissonian term.
pub fn envelope_derivative(
    alpha: f64,
    beta: f64,
    n: f64,
    include_interference: bool,
) -> Result<f64> {
    if !(n >= 0.0) {
        return Err(Error::OutsideDomain { x: n });
    }
    Ok(DoubletPair::new(alpha, beta, Parity::Even)?.envelope_derivative(n, include_interference))
}

/// Default truncation for a two-doublet state.
pub fn doublet_nmax(pair: &DoubletPair) -> usize {
    required_nmax(pair.alpha.max(pair.beta))
}

const DIGAMMA_ASYMPTOTIC_MIN: f64 = 10.0;

/// `B_{2k} / (2k)` for `k = 1..=7`.
const DIGAMMA_SERIES: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
];

/// Digamma function `Ψ(x) = d/dx ln Γ(x)` for `x > 0`.
///
/// Below 10 the argument is raised with `Ψ(x) = Ψ(x+1) − 1/x`; from there the
/// asymptotic series `ln x − 1/(2x) − Σ B_{2k}/(2k x^{2k})` is used.
pub fn digamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::OutsideDomain { x });
    }
    Ok(digamma_unchecked(x))
}

fn digamma_unchecked(mut x: f64) -> f64 {
    let mut shift = 0.0;
    while x < DIGAMMA_ASYMPTOTIC_MIN {
        shift += 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    // Horner in 1/x²
    let series = DIGAMMA_SERIES
        .iter()
        .rev()
        .fold(0.0, |acc, c| (acc + c) * inv2);
    x.ln() - 0.5 / x - series - shift
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::preset;

    #[test]
    fn poisson_examples() {
        assert!((poisson_pnd(0.0, 0) - 1.0).abs() < 1e-15);
        assert_eq!(poisson_pnd(0.0, 3), 0.0);
        assert!((poisson_pnd(1.0, 0) / (-1.0f64).exp() - 1.0).abs() < 1e-14);
        // direct product form for a moderate n
        let direct = (-4.0f64).exp() * 4.0f64.powi(5) / 120.0;
        assert!((poisson_pnd(2.0, 5) / direct - 1.0).abs() < 1e-14);
        let mean: f64 = (0..=required_nmax(2.0))
            .map(|n| n as f64 * poisson_pnd(2.0, n))
            .sum();
        assert!((mean - 4.0).abs() < 1e-10);
    }

    #[test]
    fn poisson_survives_large_n() {
        let p = poisson_pnd(7.0, 400);
        assert!(p.is_finite() && p >= 0.0 && p < 1e-100);
    }

    #[test]
    fn digamma_reference_values() {
        // Euler–Maclaurin evaluation of γ = H_m − ln m − 1/(2m) + 1/(12m²) − 1/(120m⁴)
        let m = 10_000u32;
        let harmonic: f64 = (1..=m).rev().map(|k| 1.0 / k as f64).sum();
        let mf = m as f64;
        let gamma =
            harmonic - mf.ln() - 0.5 / mf + 1.0 / (12.0 * mf * mf) - 1.0 / (120.0 * mf.powi(4));
        assert!((digamma(1.0).unwrap() + gamma).abs() < 1e-12);
        assert!((digamma(1.0).unwrap() + 0.5772156649015329).abs() < 1e-14);

        // Ψ(n + 1/2) = −γ − 2 ln 2 + Σ_{k≤n} 2/(2k−1)
        let half: f64 = (1..=10).map(|k| 2.0 / (2 * k - 1) as f64).sum();
        let expected = -gamma - 2.0 * 2f64.ln() + half;
        assert!((digamma(10.5).unwrap() - expected).abs() < 1e-12);

        // arbitrary-precision references
        for (x, v) in [
            (10.5, 2.303_001_034_297_686_4),
            (0.3, -3.502_524_222_200_133),
            (150.7, 5.011_969_586_239_147),
            (0.01, -100.560_885_457_868_67),
            (3.75, 1.182_537_388_611_796_3),
        ] {
            let got = digamma(x).unwrap();
            assert!(
                (got - v).abs() < 1e-12 * v.abs().max(1.0),
                "Ψ({x}) = {got}, want {v}"
            );
        }
    }

    #[test]
    fn digamma_domain() {
        assert!(matches!(digamma(0.0), Err(Error::OutsideDomain { .. })));
        assert!(matches!(digamma(-1.5), Err(Error::OutsideDomain { .. })));
        assert!(digamma(f64::NAN).is_err());
        assert!(((digamma(2.0).unwrap() - digamma(1.0).unwrap()) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn pnd_presets() {
        for (name, centres) in [("Y1", [16, 49]), ("Y2", [1, 36]), ("Y3", [4, 36])] {
            let s = preset(name).unwrap();
            let d = qts_pnd(&s, s.required_nmax()).unwrap();
            assert_eq!(d.parity, Parity::Even);
            assert!((d.total() - 1.0).abs() < 1e-10);
            let peaks = d.subsequence_peaks(0, 1e-6);
            assert_eq!(peaks.len(), 2, "{name}: {peaks:?}");
            for (p, c) in peaks.iter().zip(centres) {
                assert!((*p as i64 - c).abs() <= 2, "{name}: peak {p} vs {c}");
            }
        }
    }

    #[test]
    fn closed_form_matches_fock_route() {
        for name in ["Y1", "Y2", "Y3", "even-cat(2)", "odd-cat(2)"] {
            let s = preset(name).unwrap();
            let pair = DoubletPair::from_spec(&s).unwrap();
            let d = qts_pnd(&s, s.required_nmax()).unwrap();
            for (n, p) in d.probs.iter().enumerate() {
                assert!((pair.pnd(n) - p).abs() < 1e-10, "{name} n={n}");
            }
        }
    }

    #[test]
    fn inter_poissonian_decomposition() {
        let pair = DoubletPair::new(4.0, 7.0, Parity::Even).unwrap();
        let s = preset("Y1").unwrap();
        let d = qts_pnd(&s, 200).unwrap();
        let mut total = 0.0;
        for (n, p) in d.probs.iter().enumerate() {
            let sum_part = parity_factor(Parity::Even, n) * pair.envelope(n as f64, false);
            let ip = pair.inter_poissonian(n);
            assert!((p - sum_part - ip).abs() < 1e-12);
            total += sum_part + ip;
        }
        assert!((total - 1.0).abs() < 1e-10);
        assert_eq!(inter_poissonian(4.0, 7.0, 31, Parity::Even).unwrap(), 0.0);
        let argmax = (0..120)
            .max_by(|&a, &b| {
                pair.inter_poissonian(a)
                    .total_cmp(&pair.inter_poissonian(b))
            })
            .unwrap();
        assert!((argmax as i64 - 28).abs() <= 1, "argmax {argmax}");
    }

    #[test]
    fn envelope_examples() {
        // α = β collapses to one Poisson shape
        let e = |n: f64| envelope(2.0, 2.0, n).unwrap();
        let single = DoubletPair::new(2.0, 2.0, Parity::Even).unwrap();
        for n in [0.0, 1.5, 4.0, 9.25] {
            let shape = (-4.0 + 2.0 * n * 2f64.ln() - ln_gamma(n + 1.0)).exp();
            assert!((e(n) - 8.0 * shape / single.norm()).abs() < 1e-15);
        }
        assert!(envelope(4.0, 7.0, 16.0).unwrap() > envelope(4.0, 7.0, 30.0).unwrap());
        let s = preset("Y3").unwrap();
        let d = qts_pnd(&s, 140).unwrap();
        for n in (0..=120).step_by(2) {
            assert!((2.0 * envelope(2.0, 6.0, n as f64).unwrap() - d.probs[n]).abs() < 1e-10);
        }
        assert!(envelope(1.0, 2.0, -1.0).is_err());
    }

    #[test]
    fn derivative_tail_and_toggle() {
        for n in 7..60 {
            assert!(envelope_derivative(2.0, 2.0, n as f64, true).unwrap() < 0.0);
        }
        let pair = DoubletPair::new(4.0, 7.0, Parity::Even).unwrap();
        let without = pair.envelope_extrema(0.5, 120.0, false);
        let with = pair.envelope_extrema(0.5, 120.0, true);
        assert_eq!(without.len(), 3, "{without:?}");
        assert_eq!(with.len(), 3);
        assert!((without[0] - 16.0).abs() < 1.0 && (without[2] - 49.0).abs() < 1.0);
        for (a, b) in without.iter().zip(&with) {
            assert!((a - b).abs() < 0.5);
        }
    }

    #[test]
    fn doublet_recognition() {
        let mixed =
            SuperpositionSpec::from_parts(&[4.0, -4.0, 7.0, -7.0], &[1.0, -1.0, -1.0, -1.0])
                .unwrap();
        assert!(DoubletPair::from_spec(&mixed).is_err());
        let unequal =
            SuperpositionSpec::from_parts(&[1.0, -1.0, 3.0, -3.0], &[1.0, 1.0, 2.0, 2.0]).unwrap();
        assert!(DoubletPair::from_spec(&unequal).is_err());
        let vac = DoubletPair::from_spec(&preset("vacuum").unwrap()).unwrap();
        assert!((vac.pnd(0) - 1.0).abs() < 1e-15);
        assert!(DoubletPair::new(1.0, 2.0, Parity::None).is_err());
    }
}
