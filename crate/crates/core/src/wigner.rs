//! Wigner functions on rectangular phase-space grids.
//!
//! Two independent routes are provided: [`wigner_closed_form`] sums the
//! pairwise Gaussian kernels of a superposition, and [`wigner_numeric`]
//! evaluates the Wigner transform of sampled wavefunction data by trapezoid
//! quadrature. The second is the oracle for the first, and also the only
//! route available for numerically computed states.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::trapezoid_weight;
use crate::states::{position_wavefunction, SuperpositionSpec};

/// Largest boundary magnitude accepted by [`wigner_numeric`].
pub const DECAY_LIMIT: f64 = 1e-10;

/// Allowed deviation of the field integral from one before a field is flagged.
pub const MASS_TOLERANCE: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSpaceGrid {
    pub q_min: f64,
    pub q_max: f64,
    pub p_min: f64,
    pub p_max: f64,
    pub nq: usize,
    pub np: usize,
}

impl PhaseSpaceGrid {
    pub fn new(
        q_min: f64,
        q_max: f64,
        nq: usize,
        p_min: f64,
        p_max: f64,
        np: usize,
    ) -> Result<Self> {
        let finite = [q_min, q_max, p_min, p_max].iter().all(|v| v.is_finite());
        if !finite || q_min >= q_max || p_min >= p_max {
            return Err(Error::InvalidGrid(format!(
                "bounds q [{q_min}, {q_max}], p [{p_min}, {p_max}] must be finite and increasing"
            )));
        }
        if nq < 2 || np < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 samples per axis, got {nq}x{np}"
            )));
        }
        Ok(Self {
            q_min,
            q_max,
            p_min,
            p_max,
            nq,
            np,
        })
    }

    /// `q ∈ ±(μ_max + 5)`, `p ∈ ±8`, 601 × 401 samples.
    pub fn default_for(spec: &SuperpositionSpec) -> Self {
        let half = spec.max_abs_mu() + 5.0;
        Self {
            q_min: -half,
            q_max: half,
            p_min: -8.0,
            p_max: 8.0,
            nq: 601,
            np: 401,
        }
    }

    pub fn dq(&self) -> f64 {
        (self.q_max - self.q_min) / (self.nq - 1) as f64
    }

    pub fn dp(&self) -> f64 {
        (self.p_max - self.p_min) / (self.np - 1) as f64
    }

    pub fn q(&self, i: usize) -> f64 {
        self.q_min + i as f64 * self.dq()
    }

    pub fn p(&self, j: usize) -> f64 {
        self.p_min + j as f64 * self.dp()
    }

    pub fn qs(&self) -> Vec<f64> {
        (0..self.nq).map(|i| self.q(i)).collect()
    }

    pub fn ps(&self) -> Vec<f64> {
        (0..self.np).map(|j| self.p(j)).collect()
    }

    /// Index of the sample nearest to `q` (clamped to the grid).
    pub fn nearest_q(&self, q: f64) -> usize {
        (((q - self.q_min) / self.dq()).round().max(0.0) as usize).min(self.nq - 1)
    }

    pub fn nearest_p(&self, p: f64) -> usize {
        (((p - self.p_min) / self.dp()).round().max(0.0) as usize).min(self.np - 1)
    }
}

/// Samples `W(q_i, p_j)` stored row-major in `q` then `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerField {
    pub grid: PhaseSpaceGrid,
    pub values: Vec<f64>,
    /// Set to the measured integral when it differs from one by more than
    /// [`MASS_TOLERANCE`], i.e. the grid does not contain the state.
    pub mass_deficit: Option<f64>,
}

impl WignerField {
    fn from_values(grid: PhaseSpaceGrid, values: Vec<f64>) -> Self {
        let mut field = Self {
            grid,
            values,
            mass_deficit: None,
        };
        let total = integrate(&field);
        if (total - 1.0).abs() > MASS_TOLERANCE {
            field.mass_deficit = Some(total);
        }
        field
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.grid.np + j]
    }

    /// All momentum samples at `q_i`.
    pub fn row(&self, i: usize) -> &[f64] {
        let np = self.grid.np;
        &self.values[i * np..(i + 1) * np]
    }

    /// All position samples at `p_j`.
    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.grid.nq).map(|i| self.get(i, j)).collect()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|v| v * factor).collect(),
            mass_deficit: self.mass_deficit.map(|m| m * factor),
        }
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Largest pointwise difference to another field on the same grid.
    pub fn sup_distance(&self, other: &WignerField) -> f64 {
        assert_eq!(self.grid, other.grid, "fields live on different grids");
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Phase-space kernel of `|μ_j⟩⟨μ_k|`:
/// `(1/π) e^{−2(q−(μ_j+μ_k)/2)²} e^{−p²/2} e^{−ip(μ_j−μ_k)}`.
pub fn cross_kernel(q: f64, p: f64, mu_j: f64, mu_k: f64) -> Complex64 {
    let centre = q - 0.5 * (mu_j + mu_k);
    let envelope = (-2.0 * centre * centre - 0.5 * p * p).exp() / PI;
    Complex64::from_polar(envelope, -p * (mu_j - mu_k))
}

/// `W = N^{−1} Σ_{j,k} c_j c_k K(q, p; μ_j, μ_k)`, summed as real cosine pairs.
pub fn wigner_closed_form(spec: &SuperpositionSpec, grid: &PhaseSpaceGrid) -> WignerField {
    let terms = spec.terms();
    // (weight, centre, frequency) per unordered pair; off-diagonal pairs doubled
    let mut pairs = Vec::with_capacity(terms.len() * (terms.len() + 1) / 2);
    for (j, a) in terms.iter().enumerate() {
        for b in &terms[j..] {
            let weight = if std::ptr::eq(a, b) { 1.0 } else { 2.0 };
            pairs.push((weight * a.coeff * b.coeff, 0.5 * (a.mu + b.mu), a.mu - b.mu));
        }
    }
    let scale = 1.0 / (PI * spec.norm());
    let ps = grid.ps();
    let p_env: Vec<f64> = ps.iter().map(|p| (-0.5 * p * p).exp()).collect();

    let mut values = Vec::with_capacity(grid.nq * grid.np);
    let mut q_weights = vec![0.0; pairs.len()];
    for i in 0..grid.nq {
        let q = grid.q(i);
        for (w, &(c, centre, _)) in q_weights.iter_mut().zip(&pairs) {
            let d = q - centre;
            *w = c * (-2.0 * d * d).exp();
        }
        for (p, env) in ps.iter().zip(&p_env) {
            let s: f64 = q_weights
                .iter()
                .zip(&pairs)
                .map(|(w, &(_, _, freq))| {
                    if freq == 0.0 {
                        *w
                    } else {
                        w * (p * freq).cos()
                    }
                })
                .sum();
            values.push(scale * env * s);
        }
    }
    WignerField::from_values(*grid, values)
}

/// Real wavefunction samples on a uniform position grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledWavefunction {
    pub x_min: f64,
    pub dx: f64,
    pub values: Vec<f64>,
}

impl SampledWavefunction {
    pub fn from_fn(x_min: f64, x_max: f64, n: usize, f: impl Fn(f64) -> f64) -> Self {
        let dx = (x_max - x_min) / (n - 1) as f64;
        let values = (0..n).map(|i| f(x_min + i as f64 * dx)).collect();
        Self { x_min, dx, values }
    }

    /// Samples `position_wavefunction(spec, ·)` on `[x_min, x_max]`.
    pub fn from_spec(spec: &SuperpositionSpec, x_min: f64, x_max: f64, n: usize) -> Self {
        Self::from_fn(x_min, x_max, n, |q| position_wavefunction(spec, q))
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.dx
    }
}

/// Trapezoid quadrature of `W(q,p) = (1/π) ∫ e^{2ipy} ψ(q+y) ψ(q−y) dy`.
///
/// Every grid `q` must sit on a sample or half-way between two samples so that
/// both `q ± y` land on samples; the `y` step equals the sample spacing.
/// Samples beyond the sampled range are taken as zero.
pub fn wigner_numeric(psi: &SampledWavefunction, grid: &PhaseSpaceGrid) -> Result<WignerField> {
    let n = psi.values.len();
    if n < 2 {
        return Err(Error::InvalidGrid(
            "need at least two wavefunction samples".into(),
        ));
    }
    let edge = psi.values[0].abs().max(psi.values[n - 1].abs());
    if edge >= DECAY_LIMIT {
        return Err(Error::DomainTooSmall {
            edge,
            limit: DECAY_LIMIT,
        });
    }
    let h = psi.dx;
    let ps = grid.ps();
    let mut values = Vec::with_capacity(grid.nq * grid.np);
    // (y, ψ(q+y)ψ(q−y)) for y ≥ 0; the y < 0 half mirrors it exactly
    let mut products: Vec<(f64, f64)> = Vec::with_capacity(n);
    for i in 0..grid.nq {
        let q = grid.q(i);
        let s = 2.0 * (q - psi.x_min) / h;
        let sum_index = s.round();
        if (s - sum_index).abs() > 1e-6 {
            return Err(Error::GridMismatch { q });
        }
        products.clear();
        let sum_index = sum_index as i64;
        let last = n as i64 - 1;
        // pairs (a, b) with a + b = sum_index, a ≥ b, both in range
        let a_lo = (sum_index + 1).div_euclid(2).max(0);
        let a_hi = sum_index.min(last);
        for a in a_lo..=a_hi {
            let b = sum_index - a;
            if b < 0 || b > last {
                continue;
            }
            let f = psi.values[a as usize] * psi.values[b as usize];
            let y = 0.5 * (a - b) as f64 * h;
            let weight = if a == b { 1.0 } else { 2.0 };
            products.push((y, weight * f));
        }
        for &p in &ps {
            let s: f64 = products.iter().map(|&(y, f)| f * (2.0 * p * y).cos()).sum();
            values.push(s * h / PI);
        }
    }
    Ok(WignerField::from_values(*grid, values))
}

/// Ridge profile `∫ W(q,p) dp` over the grid's p range, one value per q.
pub fn ridge_profile(field: &WignerField) -> Vec<f64> {
    (0..field.grid.nq)
        .map(|i| crate::quad::trapezoid(field.row(i), field.grid.dp()))
        .collect()
}

/// q positions of strict local maxima of the ridge profile that exceed
/// `floor` times its largest value.
pub fn ridge_peaks(field: &WignerField, floor: f64) -> Vec<f64> {
    let r = ridge_profile(field);
    let top = r.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (1..r.len().saturating_sub(1))
        .filter(|&i| r[i] > r[i - 1] && r[i] >= r[i + 1] && r[i] > floor * top)
        .map(|i| field.grid.q(i))
        .collect()
}

/// Trapezoid double integral, summed in a fixed row-major order.
pub fn integrate(field: &WignerField) -> f64 {
    weighted_sum(field, |w| w)
}

/// `∫∫ max(−W, 0) dq dp`.
pub fn negativity_volume(field: &WignerField) -> f64 {
    weighted_sum(field, |w| (-w).max(0.0))
}

fn weighted_sum(field: &WignerField, f: impl Fn(f64) -> f64) -> f64 {
    let g = &field.grid;
    let mut total = 0.0;
    for i in 0..g.nq {
        let wq = trapezoid_weight(i, g.nq);
        let row: f64 = field
            .row(i)
            .iter()
            .enumerate()
            .map(|(j, &w)| trapezoid_weight(j, g.np) * f(w))
            .sum();
        total += wq * row;
    }
    total * g.dq() * g.dp()
}
