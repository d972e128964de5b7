//! The two-center application against the wavefunctions printed in closed
//! form, plus search invariants.

use confluent_heun::twocenter::{
    assemble_wavefunction, demkov_search, demkov_search_for, diophantine_enumerate, hamiltonian_residual,
    normalization, CenterConfig, DemkovSolution, Dim, QuantumNumbers,
};
use proptest::prelude::*;

fn solve(z1: i64, z2: i64, dim: Dim, qn: QuantumNumbers) -> Vec<DemkovSolution> {
    let c = CenterConfig::from_ints(z1, z2, dim).unwrap();
    demkov_search_for(&c, &[qn], 6).solutions
}

/// Ψ / printed is the same constant at every sample point.
fn assert_proportional(sol: &DemkovSolution, printed: impl Fn(f64, f64) -> f64) {
    let wf = assemble_wavefunction(sol);
    let mut ratio: Option<f64> = None;
    for &xi in &[1.1, 1.35, 1.8, 2.6, 3.3, 4.7] {
        for &eta in &[-0.85, -0.4, 0.05, 0.3, 0.75] {
            let p = printed(xi, eta);
            if p.abs() < 1e-6 {
                continue;
            }
            let v = wf.eval_spheroidal(xi, eta, 0.0).unwrap();
            let r = v / p;
            match ratio {
                None => ratio = Some(r),
                Some(r0) => assert!((r - r0).abs() <= 1e-9 * r0.abs(), "ξ={xi}, η={eta}: ratio {r} vs {r0}"),
            }
        }
    }
    assert!(ratio.is_some_and(|r| r.is_finite() && r != 0.0));
}

#[test]
fn five_one_spatial_wavefunction() {
    let s = solve(5, 1, Dim::Three, QuantumNumbers::spatial(3, 2, 0));
    assert_eq!(s.len(), 1);
    let c = (2.0f64 / 5.0).sqrt();
    let k = 10f64.sqrt() / 3.0;
    assert_proportional(&s[0], |xi, eta| (xi * xi - 2.0 * c * xi - 1.4) * (eta - c) * (-k * (xi - eta)).exp());
}

#[test]
fn five_one_planar_wavefunction() {
    let s = solve(5, 1, Dim::Two, QuantumNumbers::planar(3, 2));
    assert_eq!(s.len(), 1);
    assert_proportional(&s[0], |xi, eta| {
        (xi * xi - 1.0).sqrt() * (1.0 - eta).sqrt() * (-0.75 * (xi - eta)).exp()
    });
}

#[test]
fn five_three_spatial_wavefunction() {
    let s = solve(5, 3, Dim::Three, QuantumNumbers::spatial(4, 1, 0));
    assert_eq!(s.len(), 1);
    let c = (2.0f64 / 5.0).sqrt();
    let k = 10f64.sqrt();
    assert_proportional(&s[0], |xi, eta| {
        (xi.powi(3) - 3.0 * c * xi * xi - 0.6 * xi + 2.6 * c) * (-k * (xi - eta)).exp()
    });
}

#[test]
fn five_three_planar_wavefunctions() {
    let s = solve(5, 3, Dim::Two, QuantumNumbers::planar(4, 1));
    assert_eq!(s.len(), 2);
    let r3 = 3f64.sqrt();
    let (small, large) = if s[0].r < s[1].r { (&s[0], &s[1]) } else { (&s[1], &s[0]) };
    assert!((large.r - (3.0 + 2.0 * r3) / 8.0).abs() < 1e-10);
    assert!((small.r - (-3.0 + 2.0 * r3) / 8.0).abs() < 1e-10);
    let k = (3.0 + 2.0 * r3) / 4.0;
    assert_proportional(large, |xi, eta| (xi + 1.0).sqrt() * (xi + 4.0 - 3.0 * r3) * (-k * (xi - eta)).exp());
    let k = (-3.0 + 2.0 * r3) / 4.0;
    assert_proportional(small, |xi, eta| (xi - 1.0).sqrt() * (xi - 4.0 - 3.0 * r3) * (-k * (xi - eta)).exp());
}

#[test]
fn three_one_spatial_wavefunction() {
    let s = solve(3, 1, Dim::Three, QuantumNumbers::spatial(4, 2, 0));
    assert_eq!(s.len(), 1);
    let r3 = 3f64.sqrt();
    assert_proportional(&s[0], |xi, eta| {
        (xi.powi(3) - 3.0 * r3 * xi * xi + 3.0 * xi + 3.0 * r3) * (eta - 1.0 / r3) * (-(r3 / 2.0) * (xi - eta)).exp()
    });
}

#[test]
fn three_one_planar_wavefunction() {
    let s = solve(3, 1, Dim::Two, QuantumNumbers::planar(4, 2));
    assert_eq!(s.len(), 1);
    assert_proportional(&s[0], |xi, eta| {
        (xi + 1.0).sqrt() * (1.0 - eta).sqrt() * (xi - 2.0) * (-(xi - eta) / 2.0).exp()
    });
}

#[test]
fn swapping_charges_reflects_eta() {
    let a = demkov_search(&CenterConfig::from_ints(5, 1, Dim::Three).unwrap(), 4).solutions;
    let b = demkov_search(&CenterConfig::from_ints(1, 5, Dim::Three).unwrap(), 4).solutions;
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(&b) {
        assert!((x.r - y.r).abs() < 1e-10 && (x.lambda - y.lambda).abs() < 1e-9);
        let (wa, wb) = (assemble_wavefunction(x), assemble_wavefunction(y));
        let r = wa.eval_spheroidal(1.7, 0.3, 0.0).unwrap() / wb.eval_spheroidal(1.7, -0.3, 0.0).unwrap();
        for &(xi, eta) in &[(1.2, -0.6), (2.5, 0.8), (3.1, 0.1)] {
            let s = wa.eval_spheroidal(xi, eta, 0.0).unwrap() / wb.eval_spheroidal(xi, -eta, 0.0).unwrap();
            assert!((s - r).abs() < 1e-9 * r.abs());
        }
    }
}

#[test]
fn extra_planar_three_one_solution_is_genuine() {
    let s = solve(3, 1, Dim::Two, QuantumNumbers::planar(2, 1));
    assert_eq!(s.len(), 1);
    let (e, l, r) = s[0].triple();
    assert!((e + 8.0).abs() < 1e-12 && (l - 1.0 / 16.0).abs() < 1e-10 && (r - 0.125).abs() < 1e-10);
    let wf = assemble_wavefunction(&s[0]);
    let pts: Vec<Vec<f64>> = [[0.9, 0.4], [-0.7, 0.6], [1.3, -0.8], [0.2, 1.1]].iter().map(|p| p.to_vec()).collect();
    let r1 = hamiltonian_residual(&wf, 3.0, 1.0, e, &pts, 1e-2);
    let r2 = hamiltonian_residual(&wf, 3.0, 1.0, e, &pts, 5e-3);
    // second-order stencil: halving h quarters the residual
    assert!((r1 / r2 - 4.0).abs() < 0.2, "{r1} {r2}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Every enumerated pair satisfies the exact diophantine condition.
    #[test]
    fn diophantine_pairs_satisfy_condition(z1 in 1i64..12, z2 in 1i64..12, three in any::<bool>()) {
        let dim = if three { Dim::Three } else { Dim::Two };
        let c = CenterConfig::from_ints(z1, z2, dim).unwrap();
        for qn in diophantine_enumerate(&c, 8) {
            let (n1, n2) = (qn.n1 as i64, qn.n2 as i64);
            prop_assert_eq!((z1 + z2).pow(2) * n2 * n2, (z1 - z2).pow(2) * n1 * n1);
            prop_assert_eq!(qn.m.is_some(), three);
            if let Some(m) = qn.m {
                prop_assert!((m as i64) < n1.min(n2));
            }
        }
    }

    /// Found solutions are normalisable bound states with R > 0 and E < 0.
    #[test]
    fn solutions_are_physical(z1 in 2i64..8, z2 in 1i64..8, three in any::<bool>()) {
        prop_assume!(z1 != z2);
        let dim = if three { Dim::Three } else { Dim::Two };
        let c = CenterConfig::from_ints(z1, z2, dim).unwrap();
        for s in demkov_search(&c, 4).solutions {
            prop_assert!(s.r > 0.0 && s.energy < 0.0);
            let n2 = normalization(&assemble_wavefunction(&s)).unwrap();
            prop_assert!(n2.is_finite() && n2 > 0.0);
        }
    }
}
