//! Brute-force propagation in a truncated number basis.
//!
//! Nothing here uses coherent-state algebra beyond the matrix elements of the
//! displacement operator, so it serves as an independent check of the closed
//! forms.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::coherent::Oscillator;
use crate::error::{Error, Result};
use crate::model::VibronicModel;
use crate::pathway::Pathway;

/// Leak tolerance used by the truncation check.
pub const DEFAULT_LEAK_TOL: f64 = 1e-12;
/// Cumulative Boltzmann weight kept in thermal mixtures.
pub const THERMAL_WEIGHT: f64 = 1.0 - 1e-14;

pub type Operator = DMatrix<Complex64>;

fn ln_factorials(n: usize) -> Vec<f64> {
    let mut v = vec![0.0; n + 1];
    for i in 1..=n {
        v[i] = v[i - 1] + (i as f64).ln();
    }
    v
}

/// Generalized Laguerre polynomials `L_0^{(a)}(x), ..., L_n^{(a)}(x)`.
fn laguerre(n: usize, a: f64, x: f64) -> Vec<f64> {
    let mut l = Vec::with_capacity(n + 1);
    l.push(1.0);
    if n >= 1 {
        l.push(1.0 + a - x);
    }
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + a - x) * l[k] - (kf + a) * l[k - 1]) / (kf + 1.0);
        l.push(next);
    }
    l
}

/// Displacement operator `D(alpha)` truncated to `n_max` number states,
/// filled from its exact matrix elements.
pub fn displacement(alpha: Complex64, n_max: usize) -> Operator {
    let mut d = Operator::zeros(n_max, n_max);
    if alpha.norm() == 0.0 {
        d.fill_with_identity();
        return d;
    }
    let lf = ln_factorials(n_max);
    let x = alpha.norm_sqr();
    let (r, theta) = alpha.to_polar();
    let lnr = r.ln();
    for diff in 0..n_max {
        let poly = laguerre(n_max - 1 - diff, diff as f64, x);
        for (n, lg) in poly.iter().enumerate() {
            let m = n + diff;
            let mag = (0.5 * (lf[n] - lf[m]) + diff as f64 * lnr - 0.5 * x).exp() * lg;
            // <m|D|n> for m >= n, and <n|D|m> with -alpha^* for the upper triangle.
            d[(m, n)] = Complex64::from_polar(mag, diff as f64 * theta);
            if diff > 0 {
                let sign = if diff % 2 == 1 { -1.0 } else { 1.0 };
                d[(n, m)] = Complex64::from_polar(sign * mag, -(diff as f64) * theta);
            }
        }
    }
    d
}

/// Diagonal of `exp(-i (w - i k/2) n t)`.
fn number_phases(t: f64, osc: Oscillator, n_max: usize) -> Vec<Complex64> {
    (0..n_max)
        .map(|n| Complex64::new(-0.5 * osc.kappa * n as f64 * t, -osc.omega * n as f64 * t).exp())
        .collect()
}

/// `D(-z) diag(e^{-i(w - i k/2) n t}) D(z)`.
pub fn propagator(z: f64, t: f64, osc: Oscillator, n_max: usize) -> Operator {
    let dp = displacement(Complex64::new(z, 0.0), n_max);
    let dm = displacement(Complex64::new(-z, 0.0), n_max);
    let ph = DMatrix::from_diagonal(&DVector::from_vec(number_phases(t, osc, n_max)));
    dm * ph * dp
}

/// Fraction of the norm that sits in the top tenth of the basis.
pub fn trailing_population(v: &[Complex64]) -> f64 {
    let n = v.len();
    let cut = n - n.div_ceil(10);
    let total: f64 = v.iter().map(|c| c.norm_sqr()).sum();
    if total == 0.0 {
        return 0.0;
    }
    v[cut..].iter().map(|c| c.norm_sqr()).sum::<f64>() / total
}

/// Initial vibrational state of every mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Initial {
    Vacuum,
    Coherent(Complex64),
    /// Thermal state with the given temperature in units of the mode quantum
    /// of the first mode, applied to each mode with its own frequency.
    Thermal(f64),
}

/// Mean occupation `1/(e^{w/T} - 1)`.
pub fn mean_occupation(omega: f64, temperature: f64) -> f64 {
    if temperature <= 0.0 {
        0.0
    } else {
        1.0 / (omega / temperature).exp_m1()
    }
}

/// Options for the brute-force oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockOptions {
    pub n_max: usize,
    pub leak_tol: f64,
}

impl FockOptions {
    pub fn new(n_max: usize) -> Self {
        Self {
            n_max,
            leak_tol: DEFAULT_LEAK_TOL,
        }
    }
}

impl Default for FockOptions {
    fn default() -> Self {
        Self::new(64)
    }
}

/// Per-mode data the oracle needs.
struct ModeOps {
    n: usize,
    dp: Vec<Operator>,
    dm: Vec<Operator>,
    osc: Oscillator,
}

impl ModeOps {
    fn new(z: &[f64], osc: Oscillator, n: usize) -> Self {
        Self {
            n,
            dp: z
                .iter()
                .map(|&x| displacement(Complex64::new(x, 0.0), n))
                .collect(),
            dm: z
                .iter()
                .map(|&x| displacement(Complex64::new(-x, 0.0), n))
                .collect(),
            osc,
        }
    }
}

/// Applies `op` to tensor axis `axis` of a state with `dims`.
fn apply_axis(state: &[Complex64], dims: &[usize], axis: usize, op: &Operator) -> Vec<Complex64> {
    let inner: usize = dims[axis + 1..].iter().product();
    let n = dims[axis];
    let outer: usize = dims[..axis].iter().product();
    let mut out = vec![Complex64::new(0.0, 0.0); state.len()];
    for o in 0..outer {
        for i in 0..inner {
            for r in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for c in 0..n {
                    acc += op[(r, c)] * state[(o * n + c) * inner + i];
                }
                out[(o * n + r) * inner + i] = acc;
            }
        }
    }
    out
}

fn apply_diag_axis(state: &mut [Complex64], dims: &[usize], axis: usize, diag: &[Complex64]) {
    let inner: usize = dims[axis + 1..].iter().product();
    let n = dims[axis];
    for (idx, v) in state.iter_mut().enumerate() {
        *v *= diag[(idx / inner) % n];
    }
}

fn axis_leak(state: &[Complex64], dims: &[usize], axis: usize) -> f64 {
    let inner: usize = dims[axis + 1..].iter().product();
    let n = dims[axis];
    let mut marginal = vec![Complex64::new(0.0, 0.0); n];
    for (idx, v) in state.iter().enumerate() {
        marginal[(idx / inner) % n] += Complex64::new(v.norm_sqr(), 0.0);
    }
    let m: Vec<Complex64> = marginal
        .iter()
        .map(|p| Complex64::new(p.re.sqrt(), 0.0))
        .collect();
    trailing_population(&m)
}

struct Propagation<'a> {
    modes: &'a [ModeOps],
    dims: Vec<usize>,
}

impl Propagation<'_> {
    /// Propagates one side through its level sequence, returning the final
    /// state and the largest leak seen.
    fn run(
        &self,
        mut state: Vec<Complex64>,
        levels: &[usize],
        times: &[f64],
    ) -> (Vec<Complex64>, f64) {
        let mut leak: f64 = 0.0;
        for (&lv, &t) in levels.iter().zip(times) {
            for (x, m) in self.modes.iter().enumerate() {
                state = apply_axis(&state, &self.dims, x, &m.dp[lv]);
                leak = leak.max(axis_leak(&state, &self.dims, x));
                apply_diag_axis(&mut state, &self.dims, x, &number_phases(t, m.osc, m.n));
                state = apply_axis(&state, &self.dims, x, &m.dm[lv]);
                leak = leak.max(axis_leak(&state, &self.dims, x));
            }
        }
        (state, leak)
    }
}

fn inner(b: &[Complex64], k: &[Complex64]) -> Complex64 {
    b.iter().zip(k).map(|(x, y)| x.conj() * y).sum()
}

/// Number-state populations of a thermal state, cut at the cumulative weight
/// [`THERMAL_WEIGHT`] and at three quarters of the basis, renormalized.
pub fn thermal_weights(nbar: f64, n_max: usize) -> (Vec<f64>, f64) {
    if nbar <= 0.0 {
        return (vec![1.0], 0.0);
    }
    let q = nbar / (1.0 + nbar);
    let limit = (3 * n_max / 4).max(1);
    let mut w = Vec::new();
    let mut total = 0.0;
    let mut p = 1.0 - q;
    while w.len() < limit && total < THERMAL_WEIGHT {
        w.push(p);
        total += p;
        p *= q;
    }
    let dropped = 1.0 - total;
    for x in &mut w {
        *x /= total;
    }
    (w, dropped.max(0.0))
}

/// Outcome of a brute-force evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleValue {
    pub value: Complex64,
    /// Largest fraction of the norm seen in the top tenth of any mode basis,
    /// weighted by the initial-state population.
    pub leak: f64,
    /// Thermal weight left out of the mixture.
    pub dropped_weight: f64,
}

/// Vibrational response by literal ket and bra propagation over all modes of
/// `model` with relaxation rate `kappa`.
pub fn brute_force_response(
    model: &VibronicModel,
    pathway: &Pathway,
    times: &[f64],
    initial: Initial,
    kappa: f64,
    opts: FockOptions,
) -> Result<OracleValue> {
    let zs: Vec<&[f64]> = (0..model.modes.len()).map(|x| model.z(x)).collect();
    let oscs: Vec<Oscillator> = (0..model.modes.len())
        .map(|x| Oscillator::new(model.omega(x), kappa))
        .collect();
    brute_force_modes(pathway, &zs, &oscs, times, initial, opts)
}

/// Single-mode convenience wrapper.
pub fn brute_force_single(
    pathway: &Pathway,
    z: &[f64],
    osc: Oscillator,
    times: &[f64],
    initial: Initial,
    opts: FockOptions,
) -> Result<OracleValue> {
    brute_force_modes(pathway, &[z], &[osc], times, initial, opts)
}

/// Oracle over an explicit list of modes; the basis is the tensor product of
/// `n_max` number states per mode.
pub fn brute_force_modes(
    pathway: &Pathway,
    zs: &[&[f64]],
    oscs: &[Oscillator],
    times: &[f64],
    initial: Initial,
    opts: FockOptions,
) -> Result<OracleValue> {
    if times.len() != pathway.order() {
        return Err(Error::Pathway(
            "one waiting time per interaction is required".into(),
        ));
    }
    if opts.n_max < 2 {
        return Err(Error::Truncation {
            n_max: opts.n_max,
            leak: 1.0,
            tol: opts.leak_tol,
        });
    }
    let n = opts.n_max;
    let modes: Vec<ModeOps> = zs
        .iter()
        .zip(oscs)
        .map(|(z, o)| ModeOps::new(z, *o, n))
        .collect();
    let dims = vec![n; modes.len()];
    let size: usize = dims.iter().product();
    let prop = Propagation {
        modes: &modes,
        dims: dims.clone(),
    };
    let (kl, bl) = (pathway.ket_levels(), pathway.bra_levels());

    // Initial product states with their weights.
    let per_mode: Vec<Vec<(f64, Vec<Complex64>)>> = modes
        .iter()
        .map(|m| match initial {
            Initial::Vacuum => vec![(1.0, basis(n, 0))],
            Initial::Coherent(a) => {
                let d = displacement(a, n);
                vec![(1.0, d.column(0).iter().copied().collect())]
            }
            Initial::Thermal(temp) => {
                let (w, _) = thermal_weights(mean_occupation(m.osc.omega, temp), n);
                w.into_iter()
                    .enumerate()
                    .map(|(k, p)| (p, basis(n, k)))
                    .collect()
            }
        })
        .collect();
    let dropped = match initial {
        Initial::Thermal(temp) => modes
            .iter()
            .map(|m| thermal_weights(mean_occupation(m.osc.omega, temp), n).1)
            .fold(0.0, f64::max),
        _ => 0.0,
    };

    let mut value = Complex64::new(0.0, 0.0);
    let mut leak = 0.0;
    let mut idx = vec![0usize; modes.len()];
    loop {
        let mut weight = 1.0;
        let mut state = vec![Complex64::new(1.0, 0.0)];
        for (x, &i) in idx.iter().enumerate() {
            let (p, v) = &per_mode[x][i];
            weight *= p;
            state = kron(&state, v);
        }
        debug_assert_eq!(state.len(), size);
        leak += weight * initial_leak(&state, &dims);
        let (k, lk) = prop.run(state.clone(), &kl, times);
        let (b, lb) = prop.run(state, &bl, times);
        leak += weight * lk.max(lb);
        value += weight * inner(&b, &k);
        if !advance(&mut idx, &per_mode) {
            break;
        }
    }
    if leak > opts.leak_tol {
        return Err(Error::Truncation {
            n_max: n,
            leak,
            tol: opts.leak_tol,
        });
    }
    Ok(OracleValue {
        value,
        leak,
        dropped_weight: dropped,
    })
}

fn initial_leak(state: &[Complex64], dims: &[usize]) -> f64 {
    (0..dims.len())
        .map(|x| axis_leak(state, dims, x))
        .fold(0.0, f64::max)
}

fn advance(idx: &mut [usize], per_mode: &[Vec<(f64, Vec<Complex64>)>]) -> bool {
    for x in (0..idx.len()).rev() {
        idx[x] += 1;
        if idx[x] < per_mode[x].len() {
            return true;
        }
        idx[x] = 0;
    }
    false
}

fn basis(n: usize, k: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    v[k] = Complex64::new(1.0, 0.0);
    v
}

fn kron(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

/// `max |(D^dagger D - 1)_{ij}|` over the lower `frac` block.
pub fn unitarity_defect(d: &Operator, frac: f64) -> f64 {
    let m = ((d.nrows() as f64) * frac).floor() as usize;
    let p = d.adjoint() * d;
    let mut worst: f64 = 0.0;
    for i in 0..m {
        for j in 0..m {
            let e = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((p[(i, j)] - e).norm());
        }
    }
    worst
}
