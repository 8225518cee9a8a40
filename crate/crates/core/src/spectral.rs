//! Taylor decomposition of third-order responses into phonon-replica peaks,
//! and broadened two-dimensional spectra.

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::pathway::Contribution;
use crate::third_order::{h, terms, ThirdTerm};

/// Default truncation of the displacement order.
pub const DEFAULT_Q_MAX: usize = 16;
/// Default truncation of the replica index.
pub const DEFAULT_P_MAX: i32 = 12;

fn inv_factorials() -> [f64; 35] {
    let mut out = [1.0; 35];
    let mut f: u128 = 1;
    for (n, o) in out.iter_mut().enumerate().skip(1) {
        f *= n as u128;
        *o = 1.0 / f as f64;
    }
    out
}

fn power_term(c: f64, n: usize, inv_fact: &[f64; 35]) -> f64 {
    if n == 0 {
        1.0
    } else {
        c.powi(n as i32) * inv_fact[n]
    }
}

/// Coefficients and exponent signs of the six oscillating terms, addressed by
/// their `LambdaIndex`: `[100, 010, 001, 110, 011, 111]`.
fn slots(c: &Contribution, z: &[f64]) -> [ThirdTerm; 6] {
    let order = [
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [1, 1, 0],
        [0, 1, 1],
        [1, 1, 1],
    ];
    let ts = terms(c, z);
    order.map(|p| {
        *ts.iter()
            .find(|t| t.index.p == p)
            .expect("table covers every index")
    })
}

/// A peak weight with the size of its last included order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralCoefficient {
    pub p: [i32; 3],
    pub q_max: usize,
    pub value: f64,
    /// Contribution of the order `q = q_max` shell, a remainder estimate.
    pub last_shell: f64,
}

/// Calls `visit(q, weight)` for every admissible exponent tuple of peak `p`
/// with total order `q <= q_max`.
fn for_each_tuple(
    c: &Contribution,
    z: &[f64],
    p: [i32; 3],
    q_max: usize,
    mut visit: impl FnMut(usize, f64),
) {
    let s = slots(c, z);
    let inv = inv_factorials();
    let sg = |i: usize| s[i].sign;
    let q_max = q_max.min(34);
    let [p1, p2, p3] = p;
    for n110 in 0..=q_max as i32 {
        for n111 in 0..=(q_max as i32 - n110) {
            let n100 = sg(0) * (p1 - sg(3) * n110 - sg(5) * n111);
            if n100 < 0 {
                continue;
            }
            for n011 in 0..=(q_max as i32 - n110 - n111) {
                let n001 = sg(2) * (p3 - sg(4) * n011 - sg(5) * n111);
                let n010 = sg(1) * (p2 - sg(4) * n011 - sg(3) * n110 - sg(5) * n111);
                if n001 < 0 || n010 < 0 {
                    continue;
                }
                let n = [n100, n010, n001, n110, n011, n111];
                let q: i32 = n.iter().sum();
                if q as usize > q_max {
                    continue;
                }
                let w: f64 = n
                    .iter()
                    .zip(&s)
                    .map(|(&k, t)| power_term(t.coeff, k as usize, &inv))
                    .product();
                visit(q as usize, w);
            }
        }
    }
}

/// Weight `C_p` of the replica `e^{i Lambda_p}` summed to order `q_max`.
pub fn coefficient(c: &Contribution, z: &[f64], p: [i32; 3], q_max: usize) -> f64 {
    coefficient_detail(c, z, p, q_max).value
}

pub fn coefficient_detail(
    c: &Contribution,
    z: &[f64],
    p: [i32; 3],
    q_max: usize,
) -> SpectralCoefficient {
    let mut value = 0.0;
    let mut last_shell = 0.0;
    for_each_tuple(c, z, p, q_max, |q, w| {
        value += w;
        if q == q_max {
            last_shell += w;
        }
    });
    SpectralCoefficient {
        p,
        q_max,
        value,
        last_shell,
    }
}

/// Order-`q` part of `C_p` alone.
pub fn coefficient_order(c: &Contribution, z: &[f64], p: [i32; 3], q: usize) -> f64 {
    let mut value = 0.0;
    for_each_tuple(c, z, p, q, |k, w| {
        if k == q {
            value += w;
        }
    });
    value
}

/// Coefficient cube for `|p_i| <= p_max`, indexed `[p1 + P][p2 + P][p3 + P]`.
pub fn coefficient_cube(c: &Contribution, z: &[f64], p_max: i32, q_max: usize) -> Vec<f64> {
    let n = (2 * p_max + 1) as usize;
    (0..n * n * n)
        .into_par_iter()
        .map(|idx| {
            let p = [
                (idx / (n * n)) as i32 - p_max,
                ((idx / n) % n) as i32 - p_max,
                (idx % n) as i32 - p_max,
            ];
            coefficient(c, z, p, q_max)
        })
        .collect()
}

/// `A_{p1,p3}(t2) = e^{-h} sum_{|p2| <= p2_max} C_{p1 p2 p3} e^{i p2 w t2}`.
#[allow(clippy::too_many_arguments)]
pub fn peak_amplitude(
    c: &Contribution,
    z: &[f64],
    p1: i32,
    p3: i32,
    t2: f64,
    omega: f64,
    q_max: usize,
    p2_max: i32,
) -> Complex64 {
    let e = (-h(c, z)).exp();
    (-p2_max..=p2_max)
        .map(|p2| {
            coefficient(c, z, [p1, p2, p3], q_max)
                * Complex64::from_polar(1.0, p2 as f64 * omega * t2)
        })
        .sum::<Complex64>()
        * e
}

/// Peak trace over several `t2` values with the coefficients computed once.
#[allow(clippy::too_many_arguments)]
pub fn peak_trace(
    c: &Contribution,
    z: &[f64],
    p1: i32,
    p3: i32,
    t2: &[f64],
    omega: f64,
    q_max: usize,
    p2_max: i32,
) -> Vec<Complex64> {
    let e = (-h(c, z)).exp();
    let coeffs: Vec<f64> = (-p2_max..=p2_max)
        .map(|p2| coefficient(c, z, [p1, p2, p3], q_max))
        .collect();
    t2.iter()
        .map(|&t| {
            coeffs
                .iter()
                .zip(-p2_max..=p2_max)
                .map(|(cf, p2)| cf * Complex64::from_polar(1.0, p2 as f64 * omega * t))
                .sum::<Complex64>()
                * e
        })
        .collect()
}

/// Truncated reconstruction of the response from a coefficient cube.
pub struct Reconstruction {
    p_max: i32,
    cube: Vec<f64>,
    prefactor: f64,
    omega: f64,
}

impl Reconstruction {
    pub fn new(c: &Contribution, z: &[f64], omega: f64, p_max: i32, q_max: usize) -> Self {
        Self {
            p_max,
            cube: coefficient_cube(c, z, p_max, q_max),
            prefactor: (-h(c, z)).exp(),
            omega,
        }
    }

    pub fn evaluate(&self, times: [f64; 3]) -> Complex64 {
        let n = (2 * self.p_max + 1) as usize;
        let ph = |t: f64| -> Vec<Complex64> {
            (-self.p_max..=self.p_max)
                .map(|p| Complex64::from_polar(1.0, p as f64 * self.omega * t))
                .collect()
        };
        let (e1, e2, e3) = (ph(times[0]), ph(times[1]), ph(times[2]));
        let mut acc = Complex64::new(0.0, 0.0);
        for (plane, w1) in self.cube.chunks(n * n).zip(&e1) {
            let mut s2 = Complex64::new(0.0, 0.0);
            for (row, w2) in plane.chunks(n).zip(&e2) {
                let s3: Complex64 = row.iter().zip(&e3).map(|(c, e)| c * e).sum();
                s2 += w2 * s3;
            }
            acc += w1 * s2;
        }
        self.prefactor * acc
    }
}

/// Uniform sampling axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub start: f64,
    pub step: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(start: f64, step: f64, count: usize) -> Result<Self> {
        if !(step > 0.0 && step.is_finite()) || !start.is_finite() {
            return Err(Error::Grid("step must be positive and finite".into()));
        }
        if count == 0 {
            return Err(Error::Grid("count must be at least 1".into()));
        }
        Ok(Self { start, step, count })
    }

    /// Accepts a list of sample times only if it is uniformly spaced.
    pub fn from_samples(t: &[f64]) -> Result<Self> {
        if t.len() < 2 {
            return Err(Error::Grid(
                "at least two samples are needed to infer a step".into(),
            ));
        }
        let step = t[1] - t[0];
        for (i, w) in t.windows(2).enumerate() {
            if ((w[1] - w[0]) - step).abs() > 1e-9 * step.abs().max(1.0) {
                return Err(Error::Grid(format!(
                    "non-uniform spacing at sample {}",
                    i + 1
                )));
            }
        }
        Self::new(t[0], step, t.len())
    }

    pub fn value(&self, i: usize) -> f64 {
        self.start + self.step * i as f64
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.value(i)).collect()
    }
}

/// Broadened 2D spectrum on an fftshift-ordered frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum2d {
    pub omega1: Vec<f64>,
    pub omega3: Vec<f64>,
    /// Row-major, `values[i * omega3.len() + j]` at `(omega1[i], omega3[j])`.
    pub values: Vec<Complex64>,
}

impl Spectrum2d {
    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.values[i * self.omega3.len() + j]
    }
}

/// Zero-padding factor of [`spectrum_2d`].
pub const PADDING: usize = 4;

fn shifted_frequencies(n: usize, step: f64) -> Vec<f64> {
    let dw = 2.0 * std::f64::consts::PI / (n as f64 * step);
    (0..n)
        .map(|k| (k as i64 - (n / 2) as i64) as f64 * dw)
        .collect()
}

/// `S(w1, w3) = sum R(t1, t3) e^{-g(t1 + t3)} e^{i(w1 t1 + w3 t3)} dt1 dt3`
/// with the first sample on each axis weighted by one half and both axes
/// zero-padded [`PADDING`]-fold.
pub fn spectrum_2d<F>(response: F, t1: Axis, t3: Axis, gamma: f64) -> Result<Spectrum2d>
where
    F: Fn(f64, f64) -> Complex64 + Sync,
{
    if !(gamma >= 0.0 && gamma.is_finite()) {
        return Err(Error::Grid("gamma must be nonnegative".into()));
    }
    let (n1, n3) = (t1.count * PADDING, t3.count * PADDING);
    let weight = |i: usize| if i == 0 { 0.5 } else { 1.0 };
    let mut grid: Vec<Complex64> = (0..n1 * n3)
        .into_par_iter()
        .map(|idx| {
            let (a, b) = (idx / n3, idx % n3);
            if a >= t1.count || b >= t3.count {
                return Complex64::new(0.0, 0.0);
            }
            let (x, y) = (t1.value(a), t3.value(b));
            response(x, y) * (-gamma * (x + y)).exp() * weight(a) * weight(b)
        })
        .collect();

    let mut planner = FftPlanner::<f64>::new();
    let f3 = planner.plan_fft_inverse(n3);
    grid.par_chunks_mut(n3).for_each(|row| f3.process(row));
    let f1 = planner.plan_fft_inverse(n1);
    let mut cols: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); n1 * n3];
    for a in 0..n1 {
        for b in 0..n3 {
            cols[b * n1 + a] = grid[a * n3 + b];
        }
    }
    cols.par_chunks_mut(n1).for_each(|col| f1.process(col));

    let omega1 = shifted_frequencies(n1, t1.step);
    let omega3 = shifted_frequencies(n3, t3.step);
    let scale = t1.step * t3.step;
    let mut values = vec![Complex64::new(0.0, 0.0); n1 * n3];
    for (i, &w1) in omega1.iter().enumerate() {
        let a = (i + n1 - n1 / 2) % n1;
        for (j, &w3) in omega3.iter().enumerate() {
            let b = (j + n3 - n3 / 2) % n3;
            let shift = Complex64::from_polar(1.0, w1 * t1.start + w3 * t3.start);
            values[i * n3 + j] = cols[b * n1 + a] * scale * shift;
        }
    }
    Ok(Spectrum2d {
        omega1,
        omega3,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathway::Kind;

    #[test]
    fn zero_order_is_one() {
        let c = Contribution::new(Kind::GsbR, 1, 2, 0);
        assert_eq!(coefficient(&c, &[0.0, 0.4, -0.7], [0, 0, 0], 0), 1.0);
        assert_eq!(coefficient(&c, &[0.0, 0.4, -0.7], [1, 0, 0], 0), 0.0);
    }

    #[test]
    fn support_cones() {
        let z = [0.0, 0.4, -0.7];
        let r = Contribution::new(Kind::GsbR, 1, 2, 0);
        let nr = Contribution::new(Kind::GsbNr, 1, 2, 0);
        for p1 in -3..=3 {
            for p3 in -3..=3 {
                for p2 in -3..=3 {
                    if p1 < 0 {
                        assert_eq!(coefficient(&r, &z, [p1, p2, p3], 10), 0.0);
                    }
                    if p1 > 0 || p3 > 0 {
                        assert_eq!(coefficient(&nr, &z, [p1, p2, p3], 10), 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn undisplaced_peak_is_flat() {
        let c = Contribution::new(Kind::SeR, 1, 1, 0);
        for &t2 in &[0.0, 1.0, 2.5] {
            let a = peak_amplitude(&c, &[0.0, 0.0], 0, 0, t2, 1.0, 8, 4);
            assert!((a - 1.0).norm() < 1e-15);
        }
    }

    #[test]
    fn axis_rejects_uneven_samples() {
        assert!(Axis::from_samples(&[0.0, 0.1, 0.2, 0.35]).is_err());
        assert!(Axis::from_samples(&[0.0, 0.1, 0.2, 0.3]).is_ok());
        assert!(Axis::new(0.0, 0.0, 4).is_err());
        assert!(Axis::new(0.0, 0.1, 0).is_err());
    }
}
