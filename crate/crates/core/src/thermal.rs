//! Coherent and thermal initial states of the vibrational modes.

use num_complex::Complex64;

use crate::coherent::{run_pathway, Oscillator};
use crate::error::Result;
use crate::exponent::ExponentForm;
use crate::pathway::Pathway;

/// Temperature in units of the mode quantum over Boltzmann's constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalParameters {
    pub temperature: f64,
}

impl ThermalParameters {
    pub fn new(temperature: f64) -> Self {
        assert!(temperature >= 0.0, "temperature must be nonnegative");
        Self { temperature }
    }

    /// Temperature at which a mode of frequency `omega` has occupation `nbar`.
    pub fn from_occupation(nbar: f64, omega: f64) -> Self {
        if nbar <= 0.0 {
            Self { temperature: 0.0 }
        } else {
            Self {
                temperature: omega / (1.0 / nbar).ln_1p(),
            }
        }
    }

    pub fn mean_occupation(&self, omega: f64) -> f64 {
        crate::fock::mean_occupation(omega, self.temperature)
    }

    /// `coth(w / 2T) = 1 + 2 <n>`.
    pub fn coth(&self, omega: f64) -> f64 {
        1.0 + 2.0 * self.mean_occupation(omega)
    }
}

/// Extra phase of a pathway started in `|alpha0>` instead of the vacuum,
/// summed interval by interval.
pub fn delta_phase(
    pathway: &Pathway,
    z: &[f64],
    omega: f64,
    times: &[f64],
    alpha0: Complex64,
) -> f64 {
    let (kl, bl) = (pathway.ket_levels(), pathway.bra_levels());
    let mut elapsed = 0.0;
    let mut sum = 0.0;
    for (j, &t) in times.iter().enumerate() {
        let w = (Complex64::new(0.0, omega * t).exp() - 1.0)
            * Complex64::new(0.0, omega * elapsed).exp();
        sum += (z[bl[j]] - z[kl[j]]) * (alpha0.conj() * w).im;
        elapsed += t;
    }
    2.0 * sum
}

/// Same phase from the final vacuum-started amplitudes,
/// `2 Im[alpha0^* (alpha_ket - alpha_bra) e^{i w sum t}]`.
pub fn delta_phase_closed(
    pathway: &Pathway,
    z: &[f64],
    omega: f64,
    times: &[f64],
    alpha0: Complex64,
) -> Result<f64> {
    let l = run_pathway(
        pathway,
        z,
        Oscillator::new(omega, 0.0),
        times,
        Complex64::new(0.0, 0.0),
    )?;
    let (k, b) = l.final_states();
    let total: f64 = times.iter().sum();
    Ok(2.0 * (alpha0.conj() * (k.alpha - b.alpha) * Complex64::new(0.0, omega * total).exp()).im)
}

/// Thermally averaged response: the real part of each mode's exponent is
/// scaled by `coth(w/2T)`.
pub fn thermal_response(
    form: &ExponentForm,
    times: &[f64],
    params: ThermalParameters,
) -> Complex64 {
    thermal_exponent(form, times, params).exp()
}

pub fn thermal_exponent(
    form: &ExponentForm,
    times: &[f64],
    params: ThermalParameters,
) -> Complex64 {
    (0..form.omegas.len())
        .map(|x| {
            let f: Complex64 = form
                .terms_for_mode(x)
                .map(|t| t.value(times, form.omegas[x]))
                .sum();
            Complex64::new(params.coth(form.omegas[x]) * f.re, f.im)
        })
        .sum()
}

/// Rescales a single-mode exponent `f` to temperature.
pub fn thermal_scale(f: Complex64, omega: f64, params: ThermalParameters) -> Complex64 {
    Complex64::new(params.coth(omega) * f.re, f.im)
}

/// Average of `e^{i dphi(alpha0)}` times the vacuum response over initial
/// amplitudes drawn from a user-supplied P-function sampler.
pub fn p_function_average<I>(
    pathway: &Pathway,
    z: &[f64],
    omega: f64,
    times: &[f64],
    samples: I,
) -> Result<Complex64>
where
    I: IntoIterator<Item = Complex64>,
{
    let form = crate::exponent::single_mode(pathway, z, omega);
    let r0 = form.evaluate(times);
    let (mut acc, mut n) = (Complex64::new(0.0, 0.0), 0usize);
    for a in samples {
        acc += Complex64::from_polar(1.0, delta_phase(pathway, z, omega, times, a));
        n += 1;
    }
    Ok(r0 * acc / n.max(1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::kinematic_response;
    use crate::exponent::single_mode;
    use crate::pathway::{Contribution, Kind};

    #[test]
    fn zero_temperature_is_bare() {
        let z = [0.0, 0.4];
        let p = Contribution::new(Kind::GsbR, 1, 1, 0).pathway();
        let f = single_mode(&p, &z, 1.0);
        let t = [0.4, 1.1, 2.3];
        assert_eq!(
            thermal_response(&f, &t, ThermalParameters::new(0.0)),
            f.evaluate(&t)
        );
    }

    #[test]
    fn occupation_round_trip() {
        let p = ThermalParameters::from_occupation(2.0, 1.3);
        assert!((p.mean_occupation(1.3) - 2.0).abs() < 1e-12);
        assert!((p.coth(1.3) - (1.3 / (2.0 * p.temperature)).tanh().recip()).abs() < 1e-12);
    }

    #[test]
    fn phase_shift_matches_kinematics() {
        let z = [0.0, 0.4, -0.7];
        let t = [0.9, 2.3, 1.4];
        let a0 = Complex64::new(0.3, 0.2);
        for kind in [Kind::SeR, Kind::GsbR, Kind::SeNr, Kind::GsbNr] {
            let p = Contribution::new(kind, 1, 2, 0).pathway();
            let r0 = kinematic_response(&p, &z, Oscillator::unit(), &t, Complex64::new(0.0, 0.0))
                .unwrap();
            let ra = kinematic_response(&p, &z, Oscillator::unit(), &t, a0).unwrap();
            let d1 = delta_phase(&p, &z, 1.0, &t, a0);
            let d2 = delta_phase_closed(&p, &z, 1.0, &t, a0).unwrap();
            assert!((d1 - d2).abs() < 1e-14, "{kind}");
            assert!(
                (ra - r0 * Complex64::from_polar(1.0, d1)).norm() < 1e-14,
                "{kind}"
            );
        }
    }

    #[test]
    fn identical_sides_give_no_shift() {
        let p = Pathway::new(vec![
            crate::pathway::Interaction::ket(0, 1),
            crate::pathway::Interaction::bra(0, 1),
        ])
        .unwrap();
        let d = delta_phase(
            &p,
            &[0.0, 0.0, 0.6],
            1.0,
            &[0.3, 1.2],
            Complex64::new(0.5, -0.4),
        );
        assert_eq!(d, 0.0);
    }
}
