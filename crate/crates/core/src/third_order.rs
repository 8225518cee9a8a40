//! Closed-form third-order vibrational responses as term tables.

use num_complex::Complex64;

use crate::error::Result;
use crate::model::VibronicModel;
use crate::pathway::{enumerate_third_order, Contribution, Kind};

/// Integer multipliers `(p1, p2, p3)` of the waiting times in a phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LambdaIndex {
    pub p: [i32; 3],
}

impl LambdaIndex {
    pub const fn new(p1: i32, p2: i32, p3: i32) -> Self {
        Self { p: [p1, p2, p3] }
    }

    /// `(p1 t1 + p2 t2 + p3 t3) w`.
    pub fn lambda(&self, times: [f64; 3], omega: f64) -> f64 {
        omega
            * (self.p[0] as f64 * times[0]
                + self.p[1] as f64 * times[1]
                + self.p[2] as f64 * times[2])
    }
}

/// One oscillating term `coeff * e^{sign i Lambda}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThirdTerm {
    pub coeff: f64,
    pub index: LambdaIndex,
    /// `+1` or `-1`.
    pub sign: i32,
}

const L100: LambdaIndex = LambdaIndex::new(1, 0, 0);
const L010: LambdaIndex = LambdaIndex::new(0, 1, 0);
const L001: LambdaIndex = LambdaIndex::new(0, 0, 1);
const L110: LambdaIndex = LambdaIndex::new(1, 1, 0);
const L011: LambdaIndex = LambdaIndex::new(0, 1, 1);
const L111: LambdaIndex = LambdaIndex::new(1, 1, 1);

/// The six oscillating terms of a contribution, in table order.
pub fn terms(c: &Contribution, z: &[f64]) -> [ThirdTerm; 6] {
    let (zj, zk) = (z[c.j], z[c.k]);
    let zl = if c.kind.needs_double() { z[c.l] } else { 0.0 };
    let (zlj, zlk, zkl, zjl) = (zl - zj, zl - zk, zk - zl, zj - zl);
    let t = |coeff: f64, index: LambdaIndex, sign: i32| ThirdTerm { coeff, index, sign };
    let x = zj * zk;
    match c.kind {
        Kind::GsbR => [
            t(zj * zj, L100, 1),
            t(zk * zk, L001, -1),
            t(-x, L010, 1),
            t(x, L011, 1),
            t(x, L110, 1),
            t(-x, L111, 1),
        ],
        Kind::GsbNr => [
            t(zj * zj, L100, -1),
            t(zk * zk, L001, -1),
            t(x, L010, -1),
            t(-x, L011, -1),
            t(-x, L110, -1),
            t(x, L111, -1),
        ],
        Kind::SeR => [
            t(zj * zj, L110, 1),
            t(zk * zk, L011, -1),
            t(x, L001, 1),
            t(-x, L010, -1),
            t(x, L100, 1),
            t(-x, L111, 1),
        ],
        Kind::SeNr => [
            t(zj * zj, L111, -1),
            t(zk * zk, L010, 1),
            t(x, L001, 1),
            t(x, L100, -1),
            t(-x, L011, 1),
            t(-x, L110, -1),
        ],
        Kind::EsaR => [
            t(zlk * zlj, L001, -1),
            t(zk * zkl, L010, -1),
            t(zj * zk, L100, 1),
            t(zk * zlj, L011, -1),
            t(-zj * zkl, L110, 1),
            t(-zj * zlj, L111, 1),
        ],
        Kind::EsaNr => [
            t(zlk * zlj, L001, -1),
            t(zk * zlj, L010, 1),
            t(zj * zk, L100, -1),
            t(-zk * zlk, L011, 1),
            t(zj * zjl, L110, -1),
            t(zj * zlk, L111, -1),
        ],
        Kind::Dqc1 => [
            t(zk * zkl, L001, 1),
            t(zk * zlj, L010, -1),
            t(-zj * zlj, L100, -1),
            t(zlj * zlk, L011, -1),
            t(zj * zk, L110, -1),
            t(zj * zlk, L111, -1),
        ],
        Kind::Dqc2 => [
            t(zk * zkl, L001, -1),
            t(zlk * zlj, L010, -1),
            t(zj * zjl, L100, -1),
            t(zk * zlj, L011, -1),
            t(zj * zlk, L110, -1),
            t(zj * zk, L111, -1),
        ],
    }
}

/// Constant part `h(z)` of the exponent, `f = -h + sum c e^{s i Lambda}`.
pub fn h(c: &Contribution, z: &[f64]) -> f64 {
    let (zj, zk) = (z[c.j], z[c.k]);
    if c.kind.needs_double() {
        let zl = z[c.l];
        zj * zj + zl * zl + zk * zk - zl * (zj + zk)
    } else {
        zj * zj + zk * zk
    }
}

/// Exponent `f` of the vibrational response.
pub fn exponent(c: &Contribution, z: &[f64], omega: f64, times: [f64; 3]) -> Complex64 {
    let mut f = Complex64::new(-h(c, z), 0.0);
    for t in terms(c, z) {
        f += t.coeff * Complex64::from_polar(1.0, t.sign as f64 * t.index.lambda(times, omega));
    }
    f
}

/// Vibrational third-order response for one mode.
pub fn r_v3(c: &Contribution, z: &[f64], omega: f64, times: [f64; 3]) -> Complex64 {
    exponent(c, z, omega, times).exp()
}

/// `(r, phi)` with `r_v3 = e^r e^{i phi}`.
pub fn r_phi_decomposition(c: &Contribution, z: &[f64], omega: f64, times: [f64; 3]) -> (f64, f64) {
    let mut r = -h(c, z);
    let mut phi = 0.0;
    for t in terms(c, z) {
        let x = t.sign as f64 * t.index.lambda(times, omega);
        r += t.coeff * x.cos();
        phi += t.coeff * x.sin();
    }
    (r, phi)
}

/// Product over modes of the single-mode responses.
pub fn multimode_r_v3(model: &VibronicModel, c: &Contribution, times: [f64; 3]) -> Complex64 {
    (0..model.modes.len())
        .map(|x| exponent(c, model.z(x), model.omega(x), times))
        .sum::<Complex64>()
        .exp()
}

/// Sum over all pathways of one kind of electronic prefactor times
/// vibrational response.
pub fn full_response3(model: &VibronicModel, kind: Kind, times: [f64; 3]) -> Result<Complex64> {
    let paths = enumerate_third_order(model, kind)?;
    Ok(paths
        .iter()
        .map(|c| c.electronic_prefactor(model, times) * multimode_r_v3(model, c, times))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::{kinematic_response, Oscillator};
    use crate::exponent::single_mode;

    #[test]
    fn trivial_limits() {
        let z = [0.0, 0.4, -0.7];
        for kind in Kind::ALL {
            let c = Contribution::new(kind, 1, 1, 2);
            assert!((r_v3(&c, &z, 1.0, [0.0; 3]) - 1.0).norm() < 1e-15, "{kind}");
            assert_eq!(
                r_v3(&c, &[0.0; 3], 1.0, [1.0, 2.0, 3.0]),
                Complex64::new(1.0, 0.0)
            );
        }
    }

    #[test]
    fn tables_match_kinematics_and_recipe() {
        let z = [0.0, 0.4, -0.7, 0.25];
        let t = [0.9, 2.3, 1.4];
        for kind in Kind::ALL {
            for &(j, k, l) in &[(1, 1, 2), (1, 3, 2), (3, 1, 2)] {
                let c = Contribution::new(kind, j, k, l);
                let p = c.pathway();
                let a = r_v3(&c, &z, 1.2, t);
                let b = kinematic_response(
                    &p,
                    &z,
                    Oscillator::new(1.2, 0.0),
                    &t,
                    Complex64::new(0.0, 0.0),
                )
                .unwrap();
                let e = single_mode(&p, &z, 1.2).evaluate(&t);
                assert!((a - b).norm() < 1e-13, "{kind} {j}{k}{l}");
                assert!((a - e).norm() < 1e-13, "{kind} {j}{k}{l}");
            }
        }
    }

    #[test]
    fn decomposition_round_trip() {
        let z = [0.0, 0.4, -0.7];
        for kind in Kind::ALL {
            let c = Contribution::new(kind, 1, 1, 2);
            let t = [0.3, 1.7, 4.1];
            let (r, phi) = r_phi_decomposition(&c, &z, 1.0, t);
            assert!(r <= 0.0);
            let back = Complex64::from_polar(r.exp(), phi);
            assert!((back - r_v3(&c, &z, 1.0, t)).norm() < 1e-15);
        }
    }

    #[test]
    fn ground_bleach_nonrephasing_phase_is_ket_only() {
        let z = [0.0, 0.4, -0.7];
        let c = Contribution::new(Kind::GsbNr, 1, 2, 0);
        let t = [0.3, 1.7, 4.1];
        let l = crate::coherent::run_pathway(
            &c.pathway(),
            &z,
            Oscillator::unit(),
            &t,
            Complex64::new(0.0, 0.0),
        )
        .unwrap();
        let (k, b) = l.final_states();
        assert_eq!(b.phase, 0.0);
        let (_, phi) = r_phi_decomposition(&c, &z, 1.0, t);
        let overlap_phase = (b.alpha.conj() * k.alpha).im;
        assert!((phi - (k.phase + overlap_phase)).abs() < 1e-14);
    }

    #[test]
    fn two_level_full_response() {
        let m = VibronicModel::two_level(1.5, 0.4);
        let t = [0.5, 1.0, 2.0];
        let c = Contribution::new(Kind::GsbR, 1, 1, 0);
        let want = c.electronic_prefactor(&m, t) * r_v3(&c, m.z(0), 1.0, t);
        assert_eq!(full_response3(&m, Kind::GsbR, t).unwrap(), want);
    }
}
