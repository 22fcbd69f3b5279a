//! Cross-module consistency checks: the same quantities computed along
//! independent routes must agree exactly.

use somos_hankel::{
    bindings, eval_gf, hankel_transform, parse_gf, somos4_generate, somos_seed_pipeline,
    verify_preset, PresetId, Rational, Somos4Params,
};

#[test]
fn somos_generation_reproduces_conj2_hankel_values() {
    // Hankel transform of the conj2 generating function at r = s = 1, then
    // regenerate it from its own head with the conjectured (0, 9) recurrence.
    let env = bindings(&[("r", Rational::one()), ("s", Rational::one())]);
    let expr = parse_gf(PresetId::Conj2.expr_text()).unwrap();
    let g = eval_gf(&expr, &env, 24).unwrap();
    let hankel = hankel_transform(&g, 12).unwrap();

    let seed = [
        hankel[0].clone(),
        hankel[1].clone(),
        hankel[2].clone(),
        hankel[3].clone(),
    ];
    let generated = somos4_generate(&Somos4Params::from_ints(0, 9), seed, 12);
    assert!(generated.breakdown.is_none());
    assert_eq!(generated.values, hankel);
}

#[test]
fn eq10_residuals_hold_from_index_two_on_sampled_presets() {
    // The asserted range starts at n = 3; empirically the relation already
    // holds at n = 2 on every preset instance checked here, and the report
    // records that observation.
    let env = bindings(&[
        ("r", Rational::one()),
        ("s", Rational::one()),
        ("v", Rational::one()),
        ("w", Rational::one()),
    ]);
    for id in [
        PresetId::Conj2,
        PresetId::Conj3,
        PresetId::Conj4,
        PresetId::Conj5,
    ] {
        let report = verify_preset(id, &env, 10).unwrap();
        assert!(report.pass);
        assert_eq!(
            report.eq10_first_index,
            Some(2),
            "{id}: unexpected first index"
        );
    }
    let report = somos_seed_pipeline(10).unwrap();
    assert_eq!(report.eq10_first_index, Some(2));
}

#[test]
fn conj4_report_at_unit_bindings() {
    let env = bindings(&[("r", Rational::one()), ("s", Rational::one())]);
    let report = verify_preset(PresetId::Conj4, &env, 10).unwrap();
    assert!(report.pass);
    assert_eq!(report.alpha, Rational::from_int(4));
    assert_eq!(report.beta, Rational::from_int(-7));
    // The closed form and the data-driven fit agree.
    assert_eq!(report.fitted_alpha, Some(Rational::from_int(4)));
    assert_eq!(report.fitted_beta, Some(Rational::from_int(-7)));
}

#[test]
fn somos_seed_report_certifies_the_classical_sequence() {
    let report = somos_seed_pipeline(12).unwrap();
    assert!(report.pass);
    // H(Q) is the classical sequence shifted by two: s_2, s_3, s_4, ...
    let classical: Vec<Rational> = [
        1i64, 1, 2, 3, 7, 23, 59, 314, 1529, 8209, 83313, 620297, 7869898,
    ]
    .iter()
    .map(|&v| Rational::from_int(v))
    .collect();
    assert_eq!(report.hankel_g, classical);
    assert_eq!(report.breakdown_index, None);
}
