//! Coherent-state kinematics under the displaced-oscillator Hamiltonians.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pathway::Pathway;

/// Frequency and decay rate of one vibrational mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Oscillator {
    pub omega: f64,
    pub kappa: f64,
}

impl Oscillator {
    pub fn new(omega: f64, kappa: f64) -> Self {
        Self { omega, kappa }
    }

    pub fn unit() -> Self {
        Self {
            omega: 1.0,
            kappa: 0.0,
        }
    }
}

/// Coherent amplitude together with the phase and log-norm collected on the way.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LabeledCoherentState {
    pub alpha: Complex64,
    pub phase: f64,
    pub log_magnitude: f64,
}

impl LabeledCoherentState {
    pub fn new(alpha: Complex64) -> Self {
        Self {
            alpha,
            phase: 0.0,
            log_magnitude: 0.0,
        }
    }

    pub fn vacuum() -> Self {
        Self::new(Complex64::new(0.0, 0.0))
    }
}

/// `<beta|alpha>`.
pub fn overlap(bra: Complex64, ket: Complex64) -> Complex64 {
    let d = (ket - bra).norm_sqr();
    Complex64::from_polar((-0.5 * d).exp(), (bra.conj() * ket).im)
}

/// Log of the norm factor gained by `alpha` while relaxing around `-z` for `t`.
pub fn log_decay(alpha: Complex64, z: f64, t: f64, kappa: f64) -> f64 {
    -0.5 * (alpha + z).norm_sqr() * -(-kappa * t).exp_m1()
}

/// Propagates a coherent state under the oscillator displaced by `z`.
pub fn evolve(
    state: LabeledCoherentState,
    z: f64,
    t: f64,
    osc: Oscillator,
) -> LabeledCoherentState {
    let rot = Complex64::new(-0.5 * osc.kappa * t, -osc.omega * t).exp();
    let alpha = (state.alpha + z) * rot - z;
    LabeledCoherentState {
        alpha,
        phase: state.phase + z * (alpha - state.alpha).im,
        log_magnitude: state.log_magnitude + log_decay(state.alpha, z, t, osc.kappa),
    }
}

/// Ket and bra states at the start of the pathway and after each waiting time.
#[derive(Debug, Clone, PartialEq)]
pub struct Ladder {
    pub ket: Vec<LabeledCoherentState>,
    pub bra: Vec<LabeledCoherentState>,
}

impl Ladder {
    pub fn final_states(&self) -> (LabeledCoherentState, LabeledCoherentState) {
        (*self.ket.last().unwrap(), *self.bra.last().unwrap())
    }

    pub fn response(&self) -> Complex64 {
        let (k, b) = self.final_states();
        response_from_states(k, b)
    }
}

/// Runs both sides of `pathway` with per-level displacements `z`.
pub fn run_pathway(
    pathway: &Pathway,
    z: &[f64],
    osc: Oscillator,
    times: &[f64],
    alpha0: Complex64,
) -> Result<Ladder> {
    let m = pathway.order();
    if times.len() != m {
        return Err(Error::Pathway(format!(
            "{} waiting times for a pathway of order {m}",
            times.len()
        )));
    }
    if pathway.max_level() >= z.len() {
        return Err(Error::Pathway(format!(
            "pathway visits level {} but only {} displacements are given",
            pathway.max_level(),
            z.len()
        )));
    }
    if times.iter().any(|t| !t.is_finite()) {
        return Err(Error::Pathway("non-finite waiting time".into()));
    }
    let mut ket = vec![LabeledCoherentState::new(alpha0)];
    let mut bra = ket.clone();
    let (kl, bl) = (pathway.ket_levels(), pathway.bra_levels());
    for i in 0..m {
        ket.push(evolve(ket[i], z[kl[i]], times[i], osc));
        bra.push(evolve(bra[i], z[bl[i]], times[i], osc));
    }
    Ok(Ladder { ket, bra })
}

/// `e^{log_k + log_b} <alpha_b|alpha_k> e^{i(a_k - a_b)}`.
pub fn response_from_states(ket: LabeledCoherentState, bra: LabeledCoherentState) -> Complex64 {
    let amp = (ket.log_magnitude + bra.log_magnitude).exp();
    overlap(bra.alpha, ket.alpha) * Complex64::from_polar(amp, ket.phase - bra.phase)
}

/// Vibrational response of a pathway for a single mode by direct propagation.
pub fn kinematic_response(
    pathway: &Pathway,
    z: &[f64],
    osc: Oscillator,
    times: &[f64],
    alpha0: Complex64,
) -> Result<Complex64> {
    Ok(run_pathway(pathway, z, osc, times, alpha0)?.response())
}

/// Closed form of `ln R` assembled from a ladder:
/// `sum_i z_{k_i}(a^k_i - a^k_{i-1}) + sum_i z_{b_i}(a^b_i - a^b_{i-1})^* + a_b^* a_k - |a_0|^2`.
/// Holds with and without relaxation.
pub fn ladder_log_response(ladder: &Ladder, pathway: &Pathway, z: &[f64]) -> Complex64 {
    let (kl, bl) = (pathway.ket_levels(), pathway.bra_levels());
    let a0 = ladder.ket[0].alpha;
    let mut f = Complex64::new(0.0, 0.0);
    for i in 0..pathway.order() {
        f += z[kl[i]] * (ladder.ket[i + 1].alpha - ladder.ket[i].alpha);
        f += z[bl[i]] * (ladder.bra[i + 1].alpha - ladder.bra[i].alpha).conj();
    }
    let (k, b) = ladder.final_states();
    f + b.alpha.conj() * k.alpha - a0.norm_sqr()
}
