//! Position and momentum distributions, in closed form and as axis integrals
//! of a Wigner field.

use std::f64::consts::PI;
use std::fmt;

use crate::states::{position_wavefunction, SuperpositionSpec};
use crate::wigner::{integrate, WignerField, MASS_TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Position,
    Momentum,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::Position => "position",
            Axis::Momentum => "momentum",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MarginalCurve {
    pub axis: Axis,
    /// `(coordinate, density)` pairs.
    pub samples: Vec<(f64, f64)>,
    /// Integral of the source field when it was flagged as not containing the state.
    pub mass_deficit: Option<f64>,
}

impl MarginalCurve {
    pub fn coordinates(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.0).collect()
    }

    pub fn densities(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.1).collect()
    }

    /// Trapezoid integral; assumes uniformly spaced coordinates.
    pub fn integral(&self) -> f64 {
        match self.samples.len() {
            0 | 1 => 0.0,
            n => {
                let step = (self.samples[n - 1].0 - self.samples[0].0) / (n - 1) as f64;
                crate::quad::trapezoid(&self.densities(), step)
            }
        }
    }

    pub fn sup_distance(&self, other: &MarginalCurve) -> f64 {
        assert_eq!(self.samples.len(), other.samples.len());
        self.samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| (a.1 - b.1).abs())
            .fold(0.0, f64::max)
    }

    /// Coordinates of strict local maxima whose density exceeds `floor`.
    pub fn peaks(&self, floor: f64) -> Vec<f64> {
        let s = &self.samples;
        (1..s.len().saturating_sub(1))
            .filter(|&i| s[i].1 > s[i - 1].1 && s[i].1 >= s[i + 1].1 && s[i].1 > floor)
            .map(|i| s[i].0)
            .collect()
    }
}

/// `pr(q) = |ψ(q)|²`.
pub fn position_marginal(spec: &SuperpositionSpec, qs: &[f64]) -> MarginalCurve {
    let samples = qs
        .iter()
        .map(|&q| (q, position_wavefunction(spec, q).powi(2)))
        .collect();
    MarginalCurve {
        axis: Axis::Position,
        samples,
        mass_deficit: None,
    }
}

/// `pr̃(p) = N^{−1} G(p; 0, 1) |Σ_j c_j e^{−ipμ_j}|²`.
pub fn momentum_marginal(spec: &SuperpositionSpec, ps: &[f64]) -> MarginalCurve {
    let scale = 1.0 / (spec.norm() * (2.0 * PI).sqrt());
    let samples = ps
        .iter()
        .map(|&p| {
            let (re, im) = spec.terms().iter().fold((0.0, 0.0), |(re, im), t| {
                let (s, c) = (p * t.mu).sin_cos();
                (re + t.coeff * c, im - t.coeff * s)
            });
            (p, scale * (-0.5 * p * p).exp() * (re * re + im * im))
        })
        .collect();
    MarginalCurve {
        axis: Axis::Momentum,
        samples,
        mass_deficit: None,
    }
}

/// Integrates the field over the axis conjugate to `axis` by trapezoid rule.
pub fn marginal_from_field(field: &WignerField, axis: Axis) -> MarginalCurve {
    let g = &field.grid;
    let samples = match axis {
        Axis::Position => (0..g.nq)
            .map(|i| (g.q(i), crate::quad::trapezoid(field.row(i), g.dp())))
            .collect(),
        Axis::Momentum => (0..g.np)
            .map(|j| (g.p(j), crate::quad::trapezoid(&field.column(j), g.dq())))
            .collect(),
    };
    let total = field.mass_deficit.unwrap_or_else(|| integrate(field));
    let mass_deficit = ((total - 1.0).abs() > MASS_TOLERANCE).then_some(total);
    MarginalCurve {
        axis,
        samples,
        mass_deficit,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::linspace;
    use crate::states::preset;
    use crate::wigner::{wigner_closed_form, PhaseSpaceGrid};

    fn normal(x: f64, mu: f64, sigma: f64) -> f64 {
        (-0.5 * ((x - mu) / sigma).powi(2)).exp() / ((2.0 * PI).sqrt() * sigma)
    }

    #[test]
    fn vacuum_marginals_are_gaussians() {
        let vac = preset("vacuum").unwrap();
        let xs = linspace(-4.0, 4.0, 81);
        for (q, d) in position_marginal(&vac, &xs).samples {
            assert!((d - normal(q, 0.0, 0.5)).abs() < 1e-15);
        }
        for (p, d) in momentum_marginal(&vac, &xs).samples {
            assert!((d - normal(p, 0.0, 1.0)).abs() < 1e-15);
        }
    }

    #[test]
    fn cat_marginals() {
        let cat = preset("even-cat(2)").unwrap();
        let n = cat.norm();
        let xs = linspace(-6.0, 6.0, 241);
        let pos = position_marginal(&cat, &xs);
        // two-Gaussian mixture plus the (here negligible) overlap term
        for &(q, d) in &pos.samples {
            let amp = (-(q - 2.0f64).powi(2)).exp() + (-(q + 2.0f64).powi(2)).exp();
            assert!((d - (2.0 / PI).sqrt() * amp * amp / n).abs() < 1e-15);
        }
        let peaks = pos.peaks(1e-3);
        assert_eq!(peaks.len(), 2);
        assert!((peaks[0] + 2.0).abs() < 0.05 && (peaks[1] - 2.0).abs() < 0.05);

        for (p, d) in momentum_marginal(&cat, &xs).samples {
            let expected = 4.0 * normal(p, 0.0, 1.0) * (2.0 * p).cos().powi(2) / n;
            assert!((d - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn y1_momentum_modulation() {
        let y1 = preset("Y1").unwrap();
        let n = y1.norm();
        let ps = linspace(-8.0, 8.0, 801);
        for (p, d) in momentum_marginal(&y1, &ps).samples {
            let m = (4.0 * p).cos() + (7.0 * p).cos();
            assert!((d - 4.0 * normal(p, 0.0, 1.0) * m * m / n).abs() < 1e-15);
        }
    }

    #[test]
    fn y2_position_peaks() {
        let y2 = preset("Y2").unwrap();
        let qs = linspace(-10.0, 10.0, 2001);
        let peaks = position_marginal(&y2, &qs).peaks(1e-3);
        assert_eq!(peaks.len(), 4, "{peaks:?}");
        for (p, c) in peaks.iter().zip([-6.0, -1.0, 1.0, 6.0]) {
            assert!((p - c).abs() < 0.1, "{p} vs {c}");
        }
    }

    #[test]
    fn even_qts_momentum_zeros() {
        // density vanishes where cos(pα) = −cos(pβ), e.g. p = π/(α+β) for Y1
        let y1 = preset("Y1").unwrap();
        let zeros: Vec<f64> = (0..4).map(|k| (2 * k + 1) as f64 * PI / 11.0).collect();
        for (_, d) in momentum_marginal(&y1, &zeros).samples {
            assert!(d < 1e-10);
        }
    }

    #[test]
    fn field_marginals_match_closed_forms() {
        let vac = preset("vacuum").unwrap();
        let grid = PhaseSpaceGrid::new(-6.0, 6.0, 241, -8.0, 8.0, 321).unwrap();
        let field = wigner_closed_form(&vac, &grid);
        let from_field = marginal_from_field(&field, Axis::Position);
        let closed = position_marginal(&vac, &grid.qs());
        assert!(from_field.sup_distance(&closed) < 1e-8);
        assert!((from_field.integral() - integrate(&field)).abs() < 1e-9);
        assert!(from_field.mass_deficit.is_none());
    }

    #[test]
    fn position_marginal_of_even_state_is_even() {
        let y3 = preset("Y3").unwrap();
        let qs = linspace(-9.0, 9.0, 181);
        let d = position_marginal(&y3, &qs).densities();
        for i in 0..d.len() {
            assert!((d[i] - d[d.len() - 1 - i]).abs() < 1e-12);
        }
    }
}
