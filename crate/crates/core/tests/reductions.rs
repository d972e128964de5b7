//! Descendant equations, the Schrödinger form and the sl(2) structure.

use confluent_heun::cheq::{all_solutions, build_family, CheqParams, QesCertificate};
use confluent_heun::poly::Poly;
use confluent_heun::reductions::{
    classify_reductions, derived_params, gseq_gauge, rwh_gauge, rwh_defect, schroedinger_form, self_adjoint_defect,
    sl2_decompose, sl2_expand, cheq_operator, GseqBranch, ReductionKind, SchroedingerForm,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// ψ(x) = μ(cosh x) u(cosh x) is annihilated by -d²/dx² + V.
    #[test]
    fn schroedinger_zero_modes(
        g in 0.6f64..3.0, d in 0.6f64..3.0, e in -3.0f64..-0.2, n in 0usize..4, x in 0.3f64..2.0,
    ) {
        let fam = build_family(g, d, e, n);
        for s in all_solutions(&fam).unwrap() {
            let form = schroedinger_form(&QesCertificate::new(n, g, d, e), s.q);
            let psi = |x: f64| form.gauge_transform(|z| s.eval(z), x);
            let h = 1e-4;
            let d2 = (psi(x + h) - 2.0 * psi(x) + psi(x - h)) / (h * h);
            let r = -d2 + form.potential(x) * psi(x);
            let scale = d2.abs() + (form.potential(x) * psi(x)).abs();
            prop_assert!(r.abs() <= 1e-5 * scale, "x={} r={} scale={}", x, r, scale);
            prop_assert!((SchroedingerForm::z_of_x(SchroedingerForm::x_of_z(1.0 + x)) - 1.0 - x).abs() < 1e-12);
        }
    }

    /// The sl(2) expansion reproduces the operator coefficients.
    #[test]
    fn sl2_round_trip(g in -3.0f64..3.0, d in -3.0f64..3.0, e in -5.0f64..5.0, n in 0usize..8) {
        let cert = QesCertificate::new(n, g, d, e);
        let op = cheq_operator(&cert);
        let back = sl2_expand(&sl2_decompose(&cert));
        for (a, b) in [(&op.p2, &back.p2), (&op.p1, &back.p1), (&op.p0, &back.p0)] {
            for k in 0..3 {
                prop_assert!((a.coeff(k) - b.coeff(k)).abs() <= 1e-12 * (1.0 + a.coeff(k).abs()));
            }
        }
    }

    /// Both gauges conjugate the equation to its self-adjoint and
    /// Razavy/Whittaker–Hill forms at arbitrary points and test functions.
    #[test]
    fn gauges_remove_first_order_terms(
        g in 0.2f64..3.0, e in -3.0f64..3.0, al in -3.0f64..3.0, q in -3.0f64..3.0,
        z in 1.05f64..4.0, c in prop::collection::vec(-2.0f64..2.0, 3),
    ) {
        let v = Poly::new(c);
        let p = CheqParams::new(al, g, g, e, q).unwrap();
        let gs = gseq_gauge(&p, GseqBranch::GammaEqDelta, 1e-12).unwrap();
        let scale = 1.0 + v.eval(&z).abs() * (1.0 + z * z) * (1.0 + e.abs() + al.abs() + q.abs());
        prop_assert!(self_adjoint_defect(&p, &gs, &v, z).abs() < 1e-9 * scale);
        let p2 = CheqParams::new(al, g, 2.0 - g, e, q).unwrap();
        let gs2 = gseq_gauge(&p2, GseqBranch::GammaEqTwoMinusDelta, 1e-12).unwrap();
        prop_assert!(self_adjoint_defect(&p2, &gs2, &v, z).abs() < 1e-9 * scale);
        let gr = rwh_gauge(&p);
        prop_assert!(rwh_defect(&p, &gr, &v, z).abs() < 1e-9 * scale);
    }
}

#[test]
fn classification_follows_parameters() {
    let p = CheqParams::new(-2.0, 1.5, 1.5, 1.0, 0.0).unwrap();
    let kinds = classify_reductions(&p, 1e-12);
    assert!(kinds.contains(&ReductionKind::GseqGammaEqDelta));
    let p = CheqParams::new(0.0, 1.0, 1.0, 0.0, 0.0).unwrap();
    let kinds = classify_reductions(&p, 1e-12);
    assert!(kinds.contains(&ReductionKind::Legendre), "{kinds:?}");
    let dp = derived_params(&p);
    assert_eq!((dp.A, dp.B, dp.a, dp.b), (0.0, 0.0, 0.0, 0.0));
}
