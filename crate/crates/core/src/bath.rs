//! Continuum of weakly coupled modes and the line-shape functions it produces.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exponent::{recipe, Label};
use crate::pathway::{Contribution, Kind, Pathway};

/// Default absolute tolerance of the line-shape quadrature.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Density of displacement products over mode frequency.
#[derive(Debug, Clone, PartialEq)]
pub enum SpectralDensity {
    /// Samples `(w_i, s_i)` with `w_i > 0` strictly increasing, linearly
    /// interpolated, anchored at `s(0) = 0` and zero past the last sample.
    Tabulated(Vec<(f64, f64)>),
    /// `eta w e^{-w/wc}`.
    Ohmic { eta: f64, cutoff: f64 },
    /// `eta w^power e^{-w/wc}`.
    PowerLaw { eta: f64, power: f64, cutoff: f64 },
    /// Weighted delta functions `(w_i, weight_i)`.
    Discrete(Vec<(f64, f64)>),
}

impl SpectralDensity {
    pub fn validate(&self) -> Result<()> {
        match self {
            SpectralDensity::Tabulated(v) => {
                if v.is_empty() {
                    return Err(Error::Integrability("empty table".into()));
                }
                let mut last = 0.0;
                for &(w, s) in v {
                    if !w.is_finite() || w <= last || !s.is_finite() {
                        return Err(Error::Integrability(
                            "table frequencies must be positive and strictly increasing".into(),
                        ));
                    }
                    last = w;
                }
            }
            SpectralDensity::Ohmic { eta, cutoff } => {
                if !eta.is_finite() || cutoff.is_nan() || *cutoff <= 0.0 {
                    return Err(Error::Integrability("ohmic cutoff must be positive".into()));
                }
            }
            SpectralDensity::PowerLaw { eta, power, cutoff } => {
                if !eta.is_finite() || cutoff.is_nan() || *cutoff <= 0.0 || !power.is_finite() {
                    return Err(Error::Integrability(
                        "power-law cutoff must be positive".into(),
                    ));
                }
                if *power <= -1.0 {
                    return Err(Error::Integrability(format!(
                        "w^{power} is not integrable at w = 0"
                    )));
                }
            }
            SpectralDensity::Discrete(v) => {
                if v.iter()
                    .any(|&(w, s)| w.is_nan() || w <= 0.0 || !s.is_finite())
                {
                    return Err(Error::Integrability(
                        "delta frequencies must be positive".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Rejects densities for which `s(w)/w` is unbounded near zero at `T > 0`.
    pub fn check_temperature(&self, temperature: f64) -> Result<()> {
        self.validate()?;
        if temperature > 0.0 {
            if let SpectralDensity::PowerLaw { power, .. } = self {
                if *power < 1.0 {
                    return Err(Error::Integrability(format!(
                        "s(w)/w must stay bounded near w = 0 at finite temperature; power {power} < 1"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Density value; zero for the discrete variant.
    pub fn eval(&self, w: f64) -> f64 {
        match self {
            SpectralDensity::Tabulated(v) => {
                if w <= 0.0 {
                    return 0.0;
                }
                let mut prev = (0.0, 0.0);
                for &(x, s) in v {
                    if w <= x {
                        return prev.1 + (s - prev.1) * (w - prev.0) / (x - prev.0);
                    }
                    prev = (x, s);
                }
                0.0
            }
            SpectralDensity::Ohmic { eta, cutoff } => eta * w * (-w / cutoff).exp(),
            SpectralDensity::PowerLaw { eta, power, cutoff } => {
                eta * w.powf(*power) * (-w / cutoff).exp()
            }
            SpectralDensity::Discrete(_) => 0.0,
        }
    }

    /// Upper end of the integration range and the breakpoints inside it.
    fn breakpoints(&self) -> Vec<f64> {
        match self {
            SpectralDensity::Tabulated(v) => {
                let mut b = vec![0.0];
                b.extend(v.iter().map(|p| p.0));
                b
            }
            SpectralDensity::Ohmic { cutoff, .. } | SpectralDensity::PowerLaw { cutoff, .. } => {
                // Log-spaced panels from well below the cutoff to where the
                // exponential tail is below double precision.
                let top = cutoff * 60.0;
                let mut b = vec![0.0];
                let mut w = cutoff * 1e-6;
                while w < top {
                    b.push(w);
                    w *= 2.0;
                }
                b.push(top);
                b
            }
            SpectralDensity::Discrete(_) => vec![],
        }
    }
}

/// Reads a two-column `w s(w)` table. Blank lines and `#` comments are
/// skipped; columns may be separated by whitespace or commas.
pub fn parse_density_table(text: &str) -> Result<SpectralDensity> {
    let mut points = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = Vec::with_capacity(2);
        let mut col = 0;
        for piece in line.split(|c: char| c.is_whitespace() || c == ',') {
            if !piece.is_empty() {
                let start = line[col..].find(piece).map_or(col, |i| col + i);
                fields.push((start + 1, piece));
                col = start + piece.len();
            }
        }
        if fields.len() != 2 {
            return Err(Error::Parse {
                line: n + 1,
                column: fields.get(2).map_or(1, |f| f.0),
                msg: format!("expected two columns, found {}", fields.len()),
            });
        }
        let mut xy = [0.0; 2];
        for (i, (column, piece)) in fields.into_iter().enumerate() {
            xy[i] = piece.parse().map_err(|_| Error::Parse {
                line: n + 1,
                column,
                msg: format!("'{piece}' is not a number"),
            })?;
        }
        points.push((xy[0], xy[1]));
    }
    let sd = SpectralDensity::Tabulated(points);
    sd.validate()?;
    Ok(sd)
}

/// `coth(w/2T)`, or 1 at zero temperature.
fn coth_half(w: f64, temperature: f64) -> f64 {
    if temperature <= 0.0 {
        1.0
    } else {
        1.0 / (w / (2.0 * temperature)).tanh()
    }
}

fn kernel(w: f64, t: f64, temperature: f64) -> Complex64 {
    let x = w * t;
    // 1 - cos x written as 2 sin^2(x/2) to keep precision at small x.
    let one_minus_cos = 2.0 * (0.5 * x).sin().powi(2);
    Complex64::new(coth_half(w, temperature) * one_minus_cos, x.sin())
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// 15-point Kronrod estimate and its difference from the embedded 7-point
/// Gauss rule.
fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for i in 0..7 {
        let x = h * XGK[i];
        let s = f(c - x) + f(c + x);
        k += s * WGK[i];
        if i % 2 == 1 {
            g += s * WG[i / 2];
        }
    }
    (k * h, ((k - g) * h).norm())
}

fn adaptive<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    depth: u32,
) -> (Complex64, f64) {
    let (v, err) = gk15(f, a, b);
    if err <= tol || depth == 0 || (b - a) < 1e-14 * b.abs().max(1.0) {
        return (v, err);
    }
    let m = 0.5 * (a + b);
    let (l, el) = adaptive(f, a, m, 0.5 * tol, depth - 1);
    let (r, er) = adaptive(f, m, b, 0.5 * tol, depth - 1);
    (l + r, el + er)
}

/// Integrates `f` over consecutive panels with a shared absolute tolerance.
pub fn integrate_panels<F: Fn(f64) -> Complex64>(
    f: &F,
    breaks: &[f64],
    tol: f64,
) -> Result<Complex64> {
    let panels = breaks.len().saturating_sub(1).max(1);
    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for w in breaks.windows(2) {
        let (v, e) = adaptive(f, w[0], w[1], tol / panels as f64, 40);
        total += v;
        err += e;
    }
    if err > tol {
        return Err(Error::Quadrature { tol, err });
    }
    Ok(total)
}

/// `g(t) = int s(w) {coth(w/2T)[1 - cos wt] + i sin wt} dw`.
pub fn lineshape_g(sd: &SpectralDensity, t: f64, temperature: f64) -> Result<Complex64> {
    lineshape_g_tol(sd, t, temperature, DEFAULT_TOL)
}

pub fn lineshape_g_tol(
    sd: &SpectralDensity,
    t: f64,
    temperature: f64,
    tol: f64,
) -> Result<Complex64> {
    sd.check_temperature(temperature)?;
    if t == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if let SpectralDensity::Discrete(v) = sd {
        return Ok(v.iter().map(|&(w, s)| s * kernel(w, t, temperature)).sum());
    }
    let f = |w: f64| {
        if w <= 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            sd.eval(w) * kernel(w, t, temperature)
        }
    };
    let mut breaks = sd.breakpoints();
    // Resolve the oscillation of the kernel on long times.
    let top = *breaks.last().unwrap();
    let period = 2.0 * std::f64::consts::PI / t.abs();
    if top / period > 4.0 {
        let mut extra = Vec::new();
        let mut w = period;
        while w < top {
            extra.push(w);
            w += period;
        }
        breaks.extend(extra);
        breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
        breaks.dedup();
    }
    integrate_panels(&f, &breaks, tol)
}

/// Closed form of the ohmic line shape at zero temperature,
/// `eta wc^2 [1 - (1 + i wc t)^{-2}]`.
pub fn ohmic_zero_temperature(eta: f64, cutoff: f64, t: f64) -> Complex64 {
    let d = Complex64::new(1.0, cutoff * t);
    eta * cutoff * cutoff * (1.0 - 1.0 / (d * d))
}

/// Key of a pair of transitions with each transition written low-to-high
/// and the two ordered.
pub type PairKey = (Label, Label);

/// Canonical key of `z_{ab} z_{cd}` and the sign that relates them, or
/// `None` when one transition is trivial.
pub fn canonical_pair(first: Label, second: Label) -> Option<(PairKey, f64)> {
    if first.0 == first.1 || second.0 == second.1 {
        return None;
    }
    let mut sign = 1.0;
    let norm = |l: Label, sign: &mut f64| {
        if l.0 > l.1 {
            *sign = -*sign;
            (l.1, l.0)
        } else {
            l
        }
    };
    let a = norm(first, &mut sign);
    let b = norm(second, &mut sign);
    Some((if a <= b { (a, b) } else { (b, a) }, sign))
}

/// Spectral densities for every pair of transitions that appears.
#[derive(Debug, Clone, PartialEq)]
pub enum Bath {
    /// Explicit densities per canonical pair.
    Pairs(BTreeMap<PairKey, SpectralDensity>),
    /// Every level couples to one continuum with its own strength `w_j`, so
    /// that `s_{ab,cd} = (w_a - w_b)(w_c - w_d) shape`.
    Scaled {
        shape: SpectralDensity,
        weights: Vec<f64>,
    },
}

impl Bath {
    /// Line shape of the pair `z_{first} z_{second}` over window time `t`.
    pub fn g(&self, first: Label, second: Label, t: f64, temperature: f64) -> Result<Complex64> {
        let Some((key, sign)) = canonical_pair(first, second) else {
            return Ok(Complex64::new(0.0, 0.0));
        };
        match self {
            Bath::Pairs(map) => {
                let sd = map.get(&key).ok_or_else(|| {
                    Error::MissingDensity(format!(
                        "{}{},{}{}",
                        key.0 .0, key.0 .1, key.1 .0, key.1 .1
                    ))
                })?;
                Ok(sign * lineshape_g(sd, t, temperature)?)
            }
            Bath::Scaled { shape, weights } => {
                let w = |l: Label| -> Result<f64> {
                    let a = weights.get(l.0).ok_or(Error::LevelIndex(l.0))?;
                    let b = weights.get(l.1).ok_or(Error::LevelIndex(l.1))?;
                    Ok(a - b)
                };
                let factor = w(first)? * w(second)?;
                if factor == 0.0 {
                    return Ok(Complex64::new(0.0, 0.0));
                }
                Ok(factor * lineshape_g(shape, t, temperature)?)
            }
        }
    }
}

/// Printed line-shape table of one third-order kind: per term the two
/// transitions (as symbolic level slots), the window and whether `g` enters
/// conjugated. Slots: 0 ground, 1 `j`, 2 `k`, 3 `l`.
type Slot = (usize, usize);
type BathRow = (Slot, Slot, (usize, usize), bool);

const G: usize = 0;
const J: usize = 1;
const K: usize = 2;
const L: usize = 3;

const T1: (usize, usize) = (1, 1);
const T2: (usize, usize) = (2, 2);
const T3: (usize, usize) = (3, 3);
const T12: (usize, usize) = (1, 2);
const T23: (usize, usize) = (2, 3);
const T13: (usize, usize) = (1, 3);

pub fn bath_table(kind: Kind) -> [BathRow; 6] {
    match kind {
        Kind::SeR => [
            ((G, J), (K, G), T1, true),
            ((J, G), (K, G), T2, false),
            ((G, J), (K, G), T3, true),
            ((G, J), (J, G), T12, true),
            ((K, G), (G, K), T23, false),
            ((G, J), (G, K), T13, true),
        ],
        Kind::GsbR => [
            ((G, J), (J, G), T1, true),
            ((J, G), (K, G), T2, true),
            ((G, K), (K, G), T3, false),
            ((G, J), (K, G), T12, true),
            ((J, G), (G, K), T23, true),
            ((G, J), (G, K), T13, true),
        ],
        Kind::EsaR => [
            ((G, J), (K, G), T1, true),
            ((K, G), (L, K), T2, false),
            ((L, K), (J, L), T3, false),
            ((J, G), (K, L), T12, true),
            ((G, K), (L, J), T23, false),
            ((J, G), (L, J), T13, true),
        ],
        Kind::SeNr => [
            ((G, J), (K, G), T1, false),
            ((G, K), (K, G), T2, true),
            ((G, J), (K, G), T3, true),
            ((J, G), (K, G), T12, false),
            ((J, G), (K, G), T23, true),
            ((G, J), (J, G), T13, false),
        ],
        Kind::GsbNr => [
            ((G, J), (J, G), T1, false),
            ((G, J), (K, G), T2, false),
            ((G, K), (K, G), T3, false),
            ((J, G), (K, G), T12, false),
            ((J, G), (K, G), T23, false),
            ((G, J), (K, G), T13, false),
        ],
        Kind::EsaNr => [
            ((G, J), (K, G), T1, false),
            ((G, K), (L, J), T2, true),
            ((L, K), (J, L), T3, false),
            ((J, G), (L, J), T12, false),
            ((K, G), (L, K), T23, true),
            ((G, J), (L, K), T13, false),
        ],
        Kind::Dqc1 => [
            ((J, G), (L, J), T1, false),
            ((G, K), (L, J), T2, false),
            ((G, K), (K, L), T3, true),
            ((G, J), (K, G), T12, false),
            ((J, L), (L, K), T23, false),
            ((G, J), (L, K), T13, false),
        ],
        Kind::Dqc2 => [
            ((G, J), (J, L), T1, false),
            ((K, L), (L, J), T2, false),
            ((G, K), (K, L), T3, false),
            ((G, J), (L, K), T12, false),
            ((G, K), (L, J), T23, false),
            ((G, J), (K, G), T13, false),
        ],
    }
}

fn window_time(w: (usize, usize), times: &[f64]) -> f64 {
    times[w.0 - 1..w.1].iter().sum()
}

/// Exponent of a third-order contribution coupled to a bath, from the
/// per-kind line-shape tables.
pub fn third_order_bath_exponent(
    c: &Contribution,
    bath: &Bath,
    times: [f64; 3],
    temperature: f64,
) -> Result<Complex64> {
    let levels = [0, c.j, c.k, c.l];
    let mut f = Complex64::new(0.0, 0.0);
    for (a, b, w, conj) in bath_table(c.kind) {
        let g = bath.g(
            (levels[a.0], levels[a.1]),
            (levels[b.0], levels[b.1]),
            window_time(w, &times),
            temperature,
        )?;
        f += if conj { g.conj() } else { g };
    }
    Ok(f)
}

/// Bath exponent of an arbitrary pathway: every recipe term
/// `z z' (1 - e^{-i w sum t})` becomes `g` and its conjugate becomes `g^*`.
pub fn bath_exponent(
    pathway: &Pathway,
    bath: &Bath,
    times: &[f64],
    temperature: f64,
) -> Result<Complex64> {
    let mut f = Complex64::new(0.0, 0.0);
    for (first, second, w, conj) in recipe(pathway) {
        let g = bath.g(first, second, window_time(w, times), temperature)?;
        f += if conj { g.conj() } else { g };
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_time_is_zero() {
        let sd = SpectralDensity::Ohmic {
            eta: 0.1,
            cutoff: 2.0,
        };
        assert_eq!(
            lineshape_g(&sd, 0.0, 0.5).unwrap(),
            Complex64::new(0.0, 0.0)
        );
    }

    #[test]
    fn delta_density_collapses() {
        let z: f64 = 0.4;
        let sd = SpectralDensity::Discrete(vec![(1.0, z * z)]);
        for &t in &[0.3, 1.0, 4.2] {
            let g = lineshape_g(&sd, t, 0.0).unwrap();
            let want = z * z * (1.0 - Complex64::new(0.0, -t).exp());
            assert!((g - want).norm() < 1e-15);
        }
    }

    #[test]
    fn ohmic_closed_form() {
        let sd = SpectralDensity::Ohmic {
            eta: 0.3,
            cutoff: 1.5,
        };
        for &t in &[0.1, 0.7, 3.0, 12.0] {
            let g = lineshape_g(&sd, t, 0.0).unwrap();
            assert!(
                (g - ohmic_zero_temperature(0.3, 1.5, t)).norm() < 1e-9,
                "t={t}"
            );
        }
    }

    #[test]
    fn integrability_errors() {
        let sd = SpectralDensity::PowerLaw {
            eta: 1.0,
            power: 0.5,
            cutoff: 1.0,
        };
        assert!(lineshape_g(&sd, 1.0, 0.0).is_ok());
        assert!(matches!(
            lineshape_g(&sd, 1.0, 0.3),
            Err(Error::Integrability(_))
        ));
        let sd = SpectralDensity::PowerLaw {
            eta: 1.0,
            power: -1.5,
            cutoff: 1.0,
        };
        assert!(lineshape_g(&sd, 1.0, 0.0).is_err());
        let sd = SpectralDensity::Tabulated(vec![(1.0, 0.2), (0.5, 0.1)]);
        assert!(lineshape_g(&sd, 1.0, 0.0).is_err());
    }

    #[test]
    fn pair_canonicalization() {
        assert_eq!(
            canonical_pair((0, 1), (2, 0)),
            Some((((0, 1), (0, 2)), -1.0))
        );
        assert_eq!(
            canonical_pair((2, 0), (0, 1)),
            Some((((0, 1), (0, 2)), -1.0))
        );
        assert_eq!(
            canonical_pair((1, 0), (2, 0)),
            Some((((0, 1), (0, 2)), 1.0))
        );
        assert_eq!(canonical_pair((1, 1), (2, 0)), None);
    }

    #[test]
    fn missing_pair_is_reported() {
        let bath = Bath::Pairs(BTreeMap::new());
        let c = Contribution::new(Kind::GsbR, 1, 1, 0);
        assert!(matches!(
            third_order_bath_exponent(&c, &bath, [1.0, 1.0, 1.0], 0.0),
            Err(Error::MissingDensity(_))
        ));
    }

    fn delta_bath(z: &[f64]) -> Bath {
        Bath::Scaled {
            shape: SpectralDensity::Discrete(vec![(1.0, 1.0)]),
            weights: z.to_vec(),
        }
    }

    #[test]
    fn delta_bath_reproduces_single_mode() {
        let z = [0.0, 0.4, -0.7, 0.25];
        let t = [0.9, 2.3, 1.4];
        for kind in Kind::ALL {
            for &(j, k, l) in &[(1, 1, 3), (1, 2, 3), (2, 1, 3)] {
                let c = Contribution::new(kind, j, k, l);
                let p = c.pathway();
                let want = crate::third_order::exponent(&c, &z, 1.0, t);
                let a = third_order_bath_exponent(&c, &delta_bath(&z), t, 0.0).unwrap();
                let b = bath_exponent(&p, &delta_bath(&z), &t, 0.0).unwrap();
                assert!((a - want).norm() < 1e-13, "{kind} {j}{k}{l}: {a} {want}");
                assert!((b - want).norm() < 1e-13, "{kind} {j}{k}{l}");
            }
        }
    }

    #[test]
    fn two_deltas_are_two_modes() {
        let z1 = [0.0, 0.4, -0.3];
        let z2 = [0.0, -0.2, 0.5];
        let (w1, w2) = (1.0, 1.7);
        // Pair densities of two modes: s_{ab,cd} = sum_x z^x_{ab} z^x_{cd} delta(w - w_x).
        let mut map = BTreeMap::new();
        let trans = [(0, 1), (0, 2), (1, 2)];
        for &a in &trans {
            for &b in &trans {
                let Some((key, _)) = canonical_pair(a, b) else {
                    continue;
                };
                let d = |z: &[f64], l: Label| z[l.0] - z[l.1];
                let sd = SpectralDensity::Discrete(vec![
                    (w1, d(&z1, key.0) * d(&z1, key.1)),
                    (w2, d(&z2, key.0) * d(&z2, key.1)),
                ]);
                map.insert(key, sd);
            }
        }
        let bath = Bath::Pairs(map);
        let t = [0.9, 2.3, 1.4];
        let temp = 0.6;
        for kind in Kind::ALL {
            let c = if kind.needs_double() {
                Contribution::new(kind, 1, 1, 2)
            } else {
                Contribution::new(kind, 1, 2, 0)
            };
            let p = c.pathway();
            let form = crate::exponent::build_exponent_for(&p, &[&z1, &z2], vec![w1, w2]);
            let want = crate::thermal::thermal_exponent(
                &form,
                &t,
                crate::thermal::ThermalParameters::new(temp),
            );
            let got = bath_exponent(&p, &bath, &t, temp).unwrap();
            assert!((got - want).norm() < 1e-13, "{kind}");
        }
    }

    #[test]
    fn table_parsing() {
        let sd = parse_density_table("# w s\n0.5 0.1\n1.0, 0.2\n\n").unwrap();
        assert_eq!(sd, SpectralDensity::Tabulated(vec![(0.5, 0.1), (1.0, 0.2)]));
        match parse_density_table("0.5 0.1\n1.0 x\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 5)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_density_table("1 2 3"),
            Err(Error::Parse {
                line: 1,
                column: 5,
                ..
            })
        ));
    }

    #[test]
    fn tabulated_interpolates_from_origin() {
        let sd = SpectralDensity::Tabulated(vec![(1.0, 2.0), (2.0, 0.0)]);
        assert!((sd.eval(0.5) - 1.0).abs() < 1e-15);
        assert!((sd.eval(1.5) - 1.0).abs() < 1e-15);
        assert_eq!(sd.eval(3.0), 0.0);
    }
}
