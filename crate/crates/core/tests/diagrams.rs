//! Fifth-order diagrams written out by hand, checked term by term.

use vibresp::exponent::{single_mode, ExponentForm};
use vibresp::pathway::{Interaction, Pathway};
use vibresp::Complex64;

fn names(l: usize) -> String {
    ["0", "j", "k", "l"][l].to_string()
}

fn labels(form: &ExponentForm) -> Vec<String> {
    form.terms.iter().map(|t| t.label(&names)).collect()
}

fn swapped(s: &str) -> String {
    let (a, b) = s.split_once(' ').unwrap();
    format!("{b} {a}")
}

fn split(list: &str) -> Vec<String> {
    list.split([',', ';'])
        .map(|s| s.split_whitespace().collect::<Vec<_>>().join(" "))
        .collect()
}

// Bra climbs to l and back, ket makes one excitation.
fn ladder_pathway() -> Pathway {
    Pathway::new(vec![
        Interaction::bra(0, 1),
        Interaction::bra(1, 3),
        Interaction::bra(3, 1),
        Interaction::bra(1, 0),
        Interaction::ket(0, 2),
    ])
    .unwrap()
}

fn crossed_pathway(j: usize, k: usize) -> Pathway {
    Pathway::new(vec![
        Interaction::bra(0, j),
        Interaction::ket(0, k),
        Interaction::bra(j, 0),
        Interaction::ket(k, 0),
        Interaction::ket(0, k),
    ])
    .unwrap()
}

const LADDER: &str = "z_{0j} z_{jl}, z_{jl} z_{lj}, z_{lj} z_{j0}, z_{j0} z_{0k}, z_{0k} z_{k0}; \
    z_{0j} z_{lj}, z_{jl} z_{j0}, z_{lj} z_{k0}, z_{j0} z_{0k}; \
    z_{0j} z_{j0}, z_{jl} z_{k0}, z_{lj} z_{0k}; z_{0j} z_{k0}, z_{jl} z_{0k}; z_{0j} z_{0k}";

const CROSSED: &str = "z_{0j} z_{k0}, z_{j0} z_{k0}, z_{j0} z_{0k}, z_{k0} z_{0k}, z_{0k} z_{k0}; \
    z_{0j} z_{j0}, z_{0k} z_{k0}, z_{j0} z_{k0}, z_{0k} z_{0k}; \
    z_{0j} z_{0k}, z_{k0} z_{k0}, z_{j0} z_{0k}; z_{0j} z_{k0}, z_{0k} z_{k0}; z_{0j} z_{0k}";

fn windows(form: &ExponentForm) -> Vec<(usize, usize)> {
    form.terms.iter().map(|t| t.window).collect()
}

fn expected_windows() -> Vec<(usize, usize)> {
    let mut w = Vec::new();
    for len in 0..5 {
        for s in 1..=5 - len {
            w.push((s, s + len));
        }
    }
    w
}

#[test]
fn crossed_diagram_prefactors() {
    let z = [0.0, 0.4, -0.7, 0.25];
    let f = single_mode(&crossed_pathway(1, 2), &z, 1.0);
    assert_eq!(windows(&f), expected_windows());
    for (got, want) in labels(&f).iter().zip(split(CROSSED)) {
        assert!(*got == want || swapped(got) == want, "{got} vs {want}");
    }
    let signs: Vec<bool> = f.terms.iter().map(|t| t.conj).collect();
    let want = [
        true, false, true, false, false, true, false, true, false, true, false, true, true, false,
        true,
    ];
    assert_eq!(signs, want);
}

#[test]
fn ladder_diagram_prefactors_up_to_one_misprint() {
    let z = [0.0, 0.4, -0.7, 0.25];
    let f = single_mode(&ladder_pathway(), &z, 1.0);
    assert_eq!(windows(&f), expected_windows());
    let got = labels(&f);
    let want = split(LADDER);
    let bad: Vec<usize> = (0..15)
        .filter(|&i| got[i] != want[i] && swapped(&got[i]) != want[i])
        .collect();
    // The single-interval term on t4 pairs the emission with the ket arrow,
    // which is z_{j0} z_{k0}; the listing has the ket label reversed.
    assert_eq!(bad, vec![3]);
    assert_eq!(got[3], "z_{j0} z_{k0}");
    assert_eq!(want[3], "z_{j0} z_{0k}");
}

fn osc(q: &[i32], t: &[f64]) -> Complex64 {
    let x: f64 = q.iter().zip(t).map(|(&a, b)| a as f64 * b).sum();
    Complex64::new(0.0, x).exp()
}

#[test]
fn crossed_ladder_system_reduction() {
    let z1 = 0.4;
    let f = single_mode(&crossed_pathway(1, 1), &[0.0, z1], 1.0);
    let (c, terms) = f.reduce(&[2, 3, 4]);
    let z2 = z1 * z1;
    assert!((c + 3.0 * z2).abs() < 1e-15);
    let want = [
        (vec![0, 0, 0, 0, -1], z2),
        (vec![0, 0, 0, 0, 1], z2),
        (vec![1, 0, 0, 0, 0], 2.0 * z2),
        (vec![1, 0, 0, 0, 1], -z2),
    ];
    assert_eq!(terms.len(), want.len());
    for ((q, c), (wq, wc)) in terms.iter().zip(&want) {
        assert_eq!(q, wq);
        assert!((c - wc).abs() < 1e-15);
    }
    for &(t1, t5) in &[(0.3, 1.7), (2.2, 0.4), (5.0, 3.3)] {
        let t = [t1, 0.0, 0.0, 0.0, t5];
        let closed = z2
            * (2.0 * osc(&[1], &[t1]) + osc(&[1], &[t5]) - osc(&[1, 1], &[t1, t5])
                + osc(&[-1], &[t5])
                - 3.0);
        assert!((f.exponent(&t) - closed).norm() < 1e-12);
    }
}

#[test]
fn crossed_v_system_reduction() {
    let (z1, z2) = (0.4, -0.7);
    let f = single_mode(&crossed_pathway(1, 2), &[0.0, z1, z2], 1.0);
    let (c, _) = f.reduce(&[2, 3, 4]);
    assert!((c + (z1 * z1 + z2 * z2 + z1 * z2)).abs() < 1e-15);
    for &(t1, t5) in &[(0.3, 1.7), (2.2, 0.4), (5.0, 3.3)] {
        let t = [t1, 0.0, 0.0, 0.0, t5];
        let e = |x: f64| Complex64::new(0.0, x).exp();
        let closed = z1 * (z1 + z2) * e(t1) - (z1 * z1 + z2 * z2 + z1 * z2)
            + z1 * z2 * (e(t5) - e(t1 + t5))
            + z2 * z2 * e(-t5);
        assert!((f.exponent(&t) - closed).norm() < 1e-12);
    }
}
