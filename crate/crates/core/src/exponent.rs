//! Arbitrary-order vibrational exponent read off a double-sided diagram.
//!
//! Each pathway of order `M` gives `M + 1` arrows: the field interactions and
//! the final emission. Walking them from the first bra arrow through the
//! emission and back down the ket side, every pair of arrows contributes one
//! term `z_a z_b (1 - e^{s i w (t_m + ... + t_n)})` over the waiting times that
//! separate them.

use std::fmt;

use num_complex::Complex64;

use crate::model::VibronicModel;
use crate::pathway::{Pathway, Side};

/// A transition label `(a, b)` standing for `z_a - z_b`.
pub type Label = (usize, usize);

#[derive(Debug, Clone, PartialEq)]
pub struct ExponentTerm {
    pub first: Label,
    pub second: Label,
    pub coeff: f64,
    /// Inclusive 1-based window of waiting times.
    pub window: (usize, usize),
    /// `true` for `1 - e^{+i w sum t}`, `false` for `1 - e^{-i w sum t}`.
    pub conj: bool,
    pub mode: usize,
}

impl ExponentTerm {
    pub fn sign(&self) -> f64 {
        if self.conj {
            1.0
        } else {
            -1.0
        }
    }

    pub fn window_sum(&self, times: &[f64]) -> f64 {
        times[self.window.0 - 1..self.window.1].iter().sum()
    }

    /// Term value with frequency `omega`.
    pub fn value(&self, times: &[f64], omega: f64) -> Complex64 {
        let x = self.sign() * omega * self.window_sum(times);
        // 1 - e^{ix} = -(e^{ix} - 1), written to keep precision at small x.
        let one_minus = Complex64::new(-(x.cos() - 1.0), -x.sin());
        self.coeff * one_minus
    }

    pub fn label(&self, names: &dyn Fn(usize) -> String) -> String {
        format!(
            "z_{{{}{}}} z_{{{}{}}}",
            names(self.first.0),
            names(self.first.1),
            names(self.second.0),
            names(self.second.1)
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExponentForm {
    pub order: usize,
    pub omegas: Vec<f64>,
    pub terms: Vec<ExponentTerm>,
}

#[derive(Debug, Clone, Copy)]
struct Arrow {
    time: usize,
    bra: bool,
    label: Label,
}

fn arrows(pathway: &Pathway) -> Vec<Arrow> {
    let its = pathway.interactions();
    let mut out: Vec<Arrow> = its
        .iter()
        .enumerate()
        .filter(|(_, it)| it.side == Side::Bra)
        .map(|(i, it)| Arrow {
            time: i + 1,
            bra: true,
            label: (it.from, it.to),
        })
        .collect();
    let (b, k) = pathway.detection();
    out.push(Arrow {
        time: its.len() + 1,
        bra: false,
        label: (b, k),
    });
    out.extend(
        its.iter()
            .enumerate()
            .rev()
            .filter(|(_, it)| it.side == Side::Ket)
            .map(|(i, it)| Arrow {
                time: i + 1,
                bra: false,
                label: (it.to, it.from),
            }),
    );
    out
}

/// Symbolic terms of one mode, without coefficients.
pub fn recipe(pathway: &Pathway) -> Vec<(Label, Label, (usize, usize), bool)> {
    let a = arrows(pathway);
    let mut out = Vec::with_capacity(a.len() * (a.len() - 1) / 2);
    for p in 0..a.len() {
        for q in p + 1..a.len() {
            let (x, y) = (a[p], a[q]);
            assert_ne!(x.time, y.time, "two arrows cannot share a time");
            let (early, _) = if x.time < y.time { (x, y) } else { (y, x) };
            let conj = if x.bra == y.bra { x.bra } else { early.bra };
            let window = (x.time.min(y.time), x.time.max(y.time) - 1);
            out.push((x.label, y.label, window, conj));
        }
    }
    out.sort_by_key(|t| (t.2 .1 - t.2 .0, t.2 .0));
    out
}

/// Builds the exponent of a pathway for every mode of the model.
pub fn build_exponent(model: &VibronicModel, pathway: &Pathway) -> ExponentForm {
    let zs: Vec<&[f64]> = (0..model.modes.len()).map(|x| model.z(x)).collect();
    let omegas = (0..model.modes.len()).map(|x| model.omega(x)).collect();
    build_exponent_for(pathway, &zs, omegas)
}

/// As [`build_exponent`] with explicit displacements per mode.
pub fn build_exponent_for(pathway: &Pathway, zs: &[&[f64]], omegas: Vec<f64>) -> ExponentForm {
    let symbolic = recipe(pathway);
    let mut terms = Vec::with_capacity(symbolic.len() * zs.len());
    for (mode, z) in zs.iter().enumerate() {
        let d = |l: Label| z[l.0] - z[l.1];
        for &(first, second, window, conj) in &symbolic {
            terms.push(ExponentTerm {
                first,
                second,
                coeff: d(first) * d(second),
                window,
                conj,
                mode,
            });
        }
    }
    ExponentForm {
        order: pathway.order(),
        omegas,
        terms,
    }
}

/// Single-mode exponent from a displacement vector and frequency.
pub fn single_mode(pathway: &Pathway, z: &[f64], omega: f64) -> ExponentForm {
    build_exponent_for(pathway, &[z], vec![omega])
}

impl ExponentForm {
    /// `f(t_1, ..., t_M)`.
    pub fn exponent(&self, times: &[f64]) -> Complex64 {
        assert_eq!(times.len(), self.order, "one waiting time per interaction");
        self.terms
            .iter()
            .map(|t| t.value(times, self.omegas[t.mode]))
            .sum()
    }

    /// `exp f`.
    pub fn evaluate(&self, times: &[f64]) -> Complex64 {
        self.exponent(times).exp()
    }

    pub fn terms_for_mode(&self, mode: usize) -> impl Iterator<Item = &ExponentTerm> {
        self.terms.iter().filter(move |t| t.mode == mode)
    }

    /// Collapses the exponent with some waiting times frozen at zero into a
    /// constant plus oscillating terms `c e^{i w (q . t)}` over the remaining
    /// times. Returned as `(constant, [(q, c)])`, merged and sorted.
    pub fn reduce(&self, zero: &[usize]) -> (f64, Vec<(Vec<i32>, f64)>) {
        let mut constant = 0.0;
        let mut osc: Vec<(Vec<i32>, f64)> = Vec::new();
        for t in &self.terms {
            constant += t.coeff;
            let mut q = vec![0i32; self.order];
            for (i, qi) in q
                .iter_mut()
                .enumerate()
                .take(t.window.1)
                .skip(t.window.0 - 1)
            {
                if !zero.contains(&(i + 1)) {
                    *qi = if t.conj { 1 } else { -1 };
                }
            }
            if q.iter().all(|&v| v == 0) {
                constant -= t.coeff;
                continue;
            }
            match osc.iter_mut().find(|(k, _)| *k == q) {
                Some(e) => e.1 -= t.coeff,
                None => osc.push((q, -t.coeff)),
            }
        }
        osc.retain(|(_, c)| c.abs() > 1e-15);
        osc.sort_by(|a, b| a.0.cmp(&b.0));
        (constant, osc)
    }
}

impl fmt::Display for ExponentForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# mode,window,function,prefactor,coefficient")?;
        for t in &self.terms {
            let win = if t.window.0 == t.window.1 {
                format!("t{}", t.window.0)
            } else {
                format!("t{}..t{}", t.window.0, t.window.1)
            };
            let func = if t.conj { "chi*" } else { "chi" };
            writeln!(
                f,
                "{},{},{},{},{:.12e}",
                t.mode,
                win,
                func,
                t.label(&|i| i.to_string()),
                t.coeff
            )?;
        }
        Ok(())
    }
}

/// Vibrational response of a pathway over all modes, `prod_x exp f_x`.
pub fn multimode_vibrational(model: &VibronicModel, pathway: &Pathway, times: &[f64]) -> Complex64 {
    build_exponent(model, pathway).evaluate(times)
}

/// Sum over pathways of dipole constant, electronic phase and vibrational part.
pub fn multimode_response(model: &VibronicModel, pathways: &[Pathway], times: &[f64]) -> Complex64 {
    pathways
        .iter()
        .map(|p| p.electronic_prefactor(model, times) * multimode_vibrational(model, p, times))
        .sum()
}
