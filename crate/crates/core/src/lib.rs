//! Superpositions of real-amplitude coherent states on the position line of
//! phase space: dichotomous (cat), tetrachotomous and comb states.
//!
//! Conventions used throughout (ħ = m = 1):
//!
//! * `⟨q|μ⟩ = (2/π)^{1/4} exp(−(q−μ)²)`, so a coherent state has position
//!   density `G(q; μ, 1/2)` and momentum density `G(p; 0, 1)`.
//! * `⟨μ₂|μ₁⟩ = exp(−(μ₁−μ₂)²/2)` and `⟨n|μ⟩ = e^{−μ²/2} μⁿ/√n!`.
//! * Wigner functions are normalized to unit phase-space integral, so that
//!   `|W| ≤ 1/π`.
//!
//! The crate is split by analysis:
//!
//! * [`states`]: superposition specs, normalization, wavefunctions, Fock
//!   amplitudes and presets.
//! * [`wigner`]: closed-form and quadrature Wigner fields.
//! * [`marginals`]: position/momentum distributions.
//! * [`photon`]: photon-number statistics, envelopes and the digamma function.
//! * [`wellsolver`]: multi-Gaussian-well potentials and the finite-difference
//!   ground-state solver.
//! * [`export`]: CSV emission and parsing shared by the command line.

pub mod error;
pub mod export;
pub mod marginals;
pub mod photon;
mod quad;
pub mod states;
pub mod wellsolver;
pub mod wigner;

pub use error::{Error, Result};
pub use marginals::{
    marginal_from_field, momentum_marginal, position_marginal, Axis, MarginalCurve,
};
pub use photon::{
    digamma, envelope, envelope_derivative, inter_poissonian, poisson_pnd, qts_pnd, Parity,
    PhotonDistribution,
};
pub use states::{
    fock_amplitudes, normalization, overlap, position_wavefunction, preset, FockExpansion,
    SuperpositionSpec, Term,
};
pub use wellsolver::{
    analyze_wells, build_hamiltonian, calibrate_wells, fidelity, ground_state, potential,
    DiscretizedWavefunction, SolverConfig, Tridiagonal, WellAnalysis, WellPotentialSpec,
};
pub use wigner::{
    cross_kernel, integrate, negativity_volume, ridge_peaks, ridge_profile, wigner_closed_form,
    wigner_numeric, PhaseSpaceGrid, SampledWavefunction, WignerField,
};
