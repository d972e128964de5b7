//! Weighted orthogonality of the polynomial solutions and the discrete
//! moment functional of the critical polynomials.

use confluent_heun::cheq::{all_solutions, build_family, spectral_roots};
use confluent_heun::ortho::{
    moment_functional, normalized_overlap, nu_coefficients, weak_orthogonality_check, weighted_integral, Interval,
    WeightFunction,
};
use proptest::prelude::*;

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        acc += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    acc * h / 3.0
}

#[test]
fn weighted_integral_against_simpson() {
    // integer exponents keep the integrand smooth for the composite rule
    let w = WeightFunction::new(2.0, 3.0, -1.3);
    let f = |z: f64| 1.0 + z - 0.5 * z * z;
    let got = weighted_integral(f, &w, Interval::Inner).unwrap().value;
    let want = simpson(
        |z| f(z) * (1.0 + z) * (1.0 - z).powi(2) * (-1.3 * z / 2.0).exp(),
        -1.0,
        1.0,
        2000,
    );
    assert!((got - want).abs() < 1e-11 * want.abs(), "{got} {want}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn distinct_solutions_are_orthogonal(
        g in 0.5f64..3.0, d in 0.5f64..3.0, e in -3.0f64..-0.3, n in 1usize..4,
    ) {
        let sols = all_solutions(&build_family(g, d, e, n)).unwrap();
        let w = WeightFunction::new(g, d, e);
        for i in 0..sols.len() {
            for j in i + 1..sols.len() {
                for iv in Interval::BOTH {
                    let o = normalized_overlap(&sols[i], &sols[j], &w, iv).unwrap();
                    prop_assert!(o.abs() < 1e-8, "{} {} {}: {}", i, j, iv, o);
                }
            }
            let self_overlap = normalized_overlap(&sols[i], &sols[i], &w, Interval::Inner).unwrap();
            prop_assert!((self_overlap - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn moment_functional_structure(
        g in 0.5f64..3.0, d in 0.5f64..3.0, e in -3.0f64..-0.3, n in 0usize..7,
    ) {
        let fam = build_family(g, d, e, n);
        let mf = moment_functional(&fam, &spectral_roots(&fam).unwrap()).unwrap();
        prop_assert_eq!(mf.omegas.len(), n + 1);
        prop_assert!((mf.omegas.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!((mf.step_measure(f64::INFINITY) - 1.0).abs() < 1e-12);
        prop_assert_eq!(mf.step_measure(f64::NEG_INFINITY), 0.0);
        prop_assert!(mf.system_backward_error(&fam) < 1e-14);
        let nus = nu_coefficients(&fam);
        prop_assert_eq!(&nus, &mf.nus);
        let numax = nus.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        prop_assert!(weak_orthogonality_check(&mf, &fam) < 1e-10 * numax.max(1.0));
        // 𝓛(1) = Σ Ω_j = 1 and 𝓛(P_1) = 𝓛(q) = 0
        prop_assert!(mf.apply(|q| q).abs() < 1e-10 * mf.roots.as_slice().iter().fold(1.0f64, |a, q| a.max(q.abs())));
    }
}
