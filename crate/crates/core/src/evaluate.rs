//! Total responses of a model for a selection of pathways.

use num_complex::Complex64;

use crate::bath::{bath_exponent, Bath};
use crate::coherent::{run_pathway, Oscillator};
use crate::error::{Error, Result};
use crate::exponent::{build_exponent, ExponentForm};
use crate::model::VibronicModel;
use crate::pathway::{enumerate_third_order, Contribution, Kind, Pathway};
use crate::thermal::{thermal_exponent, ThermalParameters};

/// Which pathways to sum.
#[derive(Debug, Clone, PartialEq)]
pub enum Selection {
    /// Every level assignment of a third-order kind.
    Kind(Kind),
    /// Explicit contributions of third-order kinds.
    Contributions(Vec<Contribution>),
    /// Arbitrary pathways with dipole constants from the generic product.
    Pathways(Vec<Pathway>),
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ResponseOptions {
    pub temperature: f64,
    /// Overrides the model's relaxation rate.
    pub kappa: Option<f64>,
    /// Coherent initial amplitude, the same for every mode.
    pub alpha0: Option<Complex64>,
    /// Drop the electronic constant and phase.
    pub vibrational_only: bool,
}

impl ResponseOptions {
    pub fn check(&self, model: &VibronicModel) -> Result<()> {
        let kappa = self.kappa.unwrap_or(model.kappa);
        if !(self.temperature >= 0.0 && self.temperature.is_finite()) {
            return Err(Error::Options("temperature must be nonnegative".into()));
        }
        if !(kappa >= 0.0 && kappa.is_finite()) {
            return Err(Error::Options("kappa must be nonnegative".into()));
        }
        if self.temperature > 0.0 && kappa > 0.0 {
            return Err(Error::ThermalRelaxation);
        }
        if self.temperature > 0.0 && self.alpha0.is_some() {
            return Err(Error::Options(
                "a coherent initial state excludes a temperature".into(),
            ));
        }
        Ok(())
    }
}

struct Term {
    pathway: Pathway,
    constant: Complex64,
    form: ExponentForm,
}

/// Precomputed pathways, ready to evaluate at many time points.
pub struct Evaluator<'a> {
    model: &'a VibronicModel,
    bath: Option<&'a Bath>,
    options: ResponseOptions,
    kappa: f64,
    terms: Vec<Term>,
}

impl<'a> Evaluator<'a> {
    pub fn new(
        model: &'a VibronicModel,
        bath: Option<&'a Bath>,
        selection: &Selection,
        options: ResponseOptions,
    ) -> Result<Self> {
        options.check(model)?;
        let contributions = |cs: Vec<Contribution>| -> Result<Vec<Term>> {
            cs.into_iter()
                .map(|c| {
                    c.check_against(model)?;
                    let pathway = c.pathway();
                    let form = build_exponent(model, &pathway);
                    Ok(Term {
                        constant: c.constant(model),
                        pathway,
                        form,
                    })
                })
                .collect()
        };
        let terms = match selection {
            Selection::Kind(kind) => contributions(enumerate_third_order(model, *kind)?)?,
            Selection::Contributions(cs) => contributions(cs.clone())?,
            Selection::Pathways(ps) => ps
                .iter()
                .map(|p| {
                    p.check_against(model)?;
                    Ok(Term {
                        constant: p.dipole_constant(model),
                        pathway: p.clone(),
                        form: build_exponent(model, p),
                    })
                })
                .collect::<Result<_>>()?,
        };
        let order = terms.first().map(|t| t.pathway.order());
        if terms.iter().any(|t| Some(t.pathway.order()) != order) {
            return Err(Error::Pathway(
                "all selected pathways must have the same order".into(),
            ));
        }
        Ok(Self {
            model,
            bath,
            options,
            kappa: options.kappa.unwrap_or(model.kappa),
            terms,
        })
    }

    /// Interaction count shared by the selected pathways, 0 if none.
    pub fn order(&self) -> usize {
        self.terms.first().map_or(0, |t| t.pathway.order())
    }

    pub fn pathways(&self) -> impl Iterator<Item = &Pathway> {
        self.terms.iter().map(|t| &t.pathway)
    }

    fn vibrational(&self, term: &Term, times: &[f64]) -> Result<Complex64> {
        let bath = match self.bath {
            Some(b) => bath_exponent(&term.pathway, b, times, self.options.temperature)?,
            None => Complex64::new(0.0, 0.0),
        };
        if self.kappa > 0.0 || self.options.alpha0.is_some() {
            let a0 = self.options.alpha0.unwrap_or_default();
            let mut r = bath.exp();
            for x in 0..self.model.modes.len() {
                let osc = Oscillator::new(self.model.omega(x), self.kappa);
                r *= run_pathway(&term.pathway, self.model.z(x), osc, times, a0)?.response();
            }
            return Ok(r);
        }
        let f = if self.options.temperature > 0.0 {
            thermal_exponent(
                &term.form,
                times,
                ThermalParameters::new(self.options.temperature),
            )
        } else {
            term.form.exponent(times)
        };
        Ok((f + bath).exp())
    }

    /// Summed response at one set of waiting times.
    pub fn evaluate(&self, times: &[f64]) -> Result<Complex64> {
        if times.len() != self.order() {
            return Err(Error::Grid(format!(
                "{} waiting times for order {}",
                times.len(),
                self.order()
            )));
        }
        let mut total = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            let v = self.vibrational(t, times)?;
            total += if self.options.vibrational_only {
                v
            } else {
                t.constant * t.pathway.electronic_phase(self.model, times) * v
            };
        }
        Ok(total)
    }
}
