use gifpsi::continuity::{
    check_compact_image, check_ifc, check_ifc_iff_sequential, check_sequentially_ifc,
    check_strong_implies_sequential, check_strongly_ifc, ifc_pair_holds, ContinuityConfig, IfcForm,
    IfcOutcome,
};
use gifpsi::corpus;
use gifpsi::{DetectorGrid, Error, FuzzyConnectives, GifPsiNorm, MapSpec, SequenceSpec, SetSpec, VectorSpaceConfig};
use proptest::prelude::*;

fn norm() -> GifPsiNorm {
    GifPsiNorm::standard(VectorSpaceConfig::euclidean(2), 1.0, FuzzyConnectives::standard()).unwrap()
}

fn cfg(samples: usize) -> ContinuityConfig {
    ContinuityConfig {
        samples,
        ..ContinuityConfig::default()
    }
}

const THETA: [f64; 2] = [0.0, 0.0];

#[test]
fn identity_examples() {
    let f = MapSpec::identity(2);
    let s = check_strongly_ifc(&f, &[0.3, -0.2], &norm(), &norm(), &[0.5, 1.0, 2.0], &cfg(500)).unwrap();
    for row in &s.table {
        let d = row.delta.unwrap();
        assert!((d - row.eps).abs() <= 1e-9 * row.eps, "{row:?}");
    }
    assert!(ifc_pair_holds(&f, &THETA, &norm(), &norm(), 1.0, 0.5, 1.0, 0.5, &cfg(500)).unwrap());
    let fam = corpus::null_family();
    let q = check_sequentially_ifc(&f, &THETA, &norm(), &norm(), &fam, &DetectorGrid::default(), 1000).unwrap();
    assert!(q.positive && q.witness.is_none());
}

#[test]
fn ifc_forms_differ_only_in_thresholds() {
    let f = MapSpec::scaling(2, 2.0);
    let original = ContinuityConfig { form: IfcForm::Original, ..cfg(300) };
    // Original form: μ_U > 1 − β ⇒ μ_V > 1 − α. With β = α = 0.5 both forms
    // coincide.
    assert!(ifc_pair_holds(&f, &THETA, &norm(), &norm(), 1.0, 0.5, 0.5, 0.5, &original).unwrap());
    let r = check_ifc(&f, &THETA, &norm(), &norm(), 1.0, 0.3, &original).unwrap();
    assert!(r.certified());
    assert_eq!(r.form, IfcForm::Original);
}

#[test]
fn radial_normalize_counterexample_is_recheckable() {
    let f = MapSpec::radial_normalize(2);
    let r = check_ifc(&f, &THETA, &norm(), &norm(), 1.0, 0.6, &cfg(500)).unwrap();
    let IfcOutcome::Counterexample(w) = r.outcome else { panic!("expected a counterexample") };
    let fx = f.apply(&w.x).unwrap();
    let mu_v = norm().mu(&fx, 1.0);
    let mu_u = norm().mu(&w.x, w.delta);
    assert_eq!(mu_v, w.mu_v);
    assert!(mu_u > w.beta && mu_v <= 0.6);
}

#[test]
fn compact_images() {
    let ball = SetSpec::closed_ball(vec![0.0, 0.0], 1.0).unwrap();
    let double = MapSpec::scaling(2, 2.0);
    let probe = SequenceSpec::affine_decay(vec![0.0, 0.0], vec![0.5, 0.5]).unwrap();
    let r = check_compact_image(&double, &norm(), &norm(), &ball, &[probe], 1000).unwrap();
    assert!(r.image.compatible);

    let list = SetSpec::finite(vec![vec![0.0, 0.0], vec![1.0, 1.0]]).unwrap();
    let probe = SequenceSpec::constant(vec![1.0, 1.0]).unwrap();
    let r = check_compact_image(&MapSpec::identity(2), &norm(), &norm(), &list, &[probe], 100).unwrap();
    assert!(r.image.compatible);

    let rot = MapSpec::rotation_shift(std::f64::consts::FRAC_PI_2, vec![1.0, 0.0]).unwrap();
    let spiral = SequenceSpec::spiral(vec![0.0, 0.0], 1.0, 1.0, 1.0, 1.0).unwrap();
    let r = check_compact_image(&rot, &norm(), &norm(), &ball, &[spiral], 10_000).unwrap();
    assert!(r.image.compatible);
    let limit = &r.image.probes[0].limit;
    assert!(((limit[0] - 1.0).powi(2) + limit[1].powi(2)).sqrt() <= 1.0 + 1e-9);

    assert!(matches!(
        check_compact_image(&MapSpec::radial_normalize(2), &norm(), &norm(), &ball, &[], 100),
        Err(Error::Unsupported(_))
    ));
}

#[test]
fn map_corpus_consistency() {
    let g = DetectorGrid::default();
    let c = cfg(400);
    for m in corpus::maps() {
        let iff = check_ifc_iff_sequential(&m.map, &m.x0, &norm(), &norm(), &m.family, &g, 1000, &c).unwrap();
        let strong = check_strong_implies_sequential(&m.map, &m.x0, &norm(), &norm(), &m.family, &g, 1000, &c).unwrap();
        assert!(!iff.violation && !strong.violation, "{}", m.id);
        assert_eq!(iff.sequential.positive, m.continuous, "{}", m.id);
        assert_eq!(iff.ifc_positive, m.continuous, "{}", m.id);
        assert_eq!(strong.strong.positive, m.continuous, "{}", m.id);
        if !m.continuous {
            assert!(iff.sequential.witness.is_some());
        }
    }
}

#[test]
fn negative_verdict_survives_more_samples_and_members() {
    let f = MapSpec::componentwise(2, gifpsi::map::ScalarFn::Sign);
    let g = DetectorGrid::default();
    let one = vec![corpus::null_family().remove(0)];
    let a = check_sequentially_ifc(&f, &THETA, &norm(), &norm(), &one, &g, 1000).unwrap();
    let b = check_sequentially_ifc(&f, &THETA, &norm(), &norm(), &corpus::null_family(), &g, 1000).unwrap();
    assert!(!a.positive && !b.positive);
    assert_eq!(a.witness, b.witness);
    for n in [100, 400, 1600] {
        assert!(!check_strongly_ifc(&f, &THETA, &norm(), &norm(), &[1.0], &cfg(n)).unwrap().positive);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn linear_maps_certify_eps_over_l(
        m in prop::collection::vec(-3f64..3.0, 4),
        eps in 0.1f64..5.0,
        seed in 0u64..1000,
    ) {
        let a = vec![vec![m[0], m[1]], vec![m[2], m[3]]];
        // Spectral norm of a 2×2 matrix from the eigenvalues of AᵀA.
        let (p, q, r) = (m[0] * m[0] + m[2] * m[2], m[0] * m[1] + m[2] * m[3], m[1] * m[1] + m[3] * m[3]);
        let l = (0.5 * (p + r + ((p - r).powi(2) + 4.0 * q * q).sqrt())).sqrt();
        prop_assume!(l > 1e-3);
        let f = MapSpec::linear(a).unwrap();
        let c = ContinuityConfig { samples: 200, ..ContinuityConfig::with_seed(seed) };
        let s = check_strongly_ifc(&f, &THETA, &norm(), &norm(), &[eps], &c).unwrap();
        prop_assert!(s.positive);
        let d = s.table[0].delta.unwrap();
        // δ = ε/L always works, so the largest certified δ is never smaller.
        prop_assert!(d >= eps / l * (1.0 - 1e-9), "{} < {}", d, eps / l);
    }
}
