use gifpsi::norm::{check_extra_conditions, validate_axioms};
use gifpsi::{
    CircleOp, CrispNorm, Error, FuzzyConnectives, GifPsiNorm, PsiFunction, SamplerConfig, Status,
    TNorm, VectorSpaceConfig,
};
use proptest::prelude::*;

fn standard(k: f64) -> GifPsiNorm {
    GifPsiNorm::standard(VectorSpaceConfig::euclidean(2), k, FuzzyConnectives::standard()).unwrap()
}

fn euclid(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

#[test]
fn closed_form_values() {
    let n = standard(1.0);
    let p = n.eval_membership(&[3.0, 4.0], 5.0).unwrap();
    assert_eq!((p.mu, p.nu), (0.5, 0.5));
    assert_eq!(n.mu(&[3.0, 4.0], 15.0), 0.75);
    let p = n.eval_membership(&[0.0, 0.0], 1.0).unwrap();
    assert_eq!((p.mu, p.nu), (1.0, 0.0));
    let p = standard(2.0).eval_membership(&[1.0, 0.0], 2.0).unwrap();
    assert_eq!((p.mu, p.nu), (0.5, 0.5));
}

#[test]
fn argument_errors() {
    let n = standard(1.0);
    assert!(matches!(n.eval_membership(&[1.0, 0.0], 0.0), Err(Error::Domain(_))));
    assert!(matches!(n.eval_membership(&[1.0, 0.0], -1.0), Err(Error::Domain(_))));
    assert!(matches!(n.eval_membership(&[1.0], 1.0), Err(Error::Shape { expected: 2, found: 1 })));
    for k in [0.0, -1.0, f64::NAN] {
        assert!(matches!(
            GifPsiNorm::standard(VectorSpaceConfig::euclidean(2), k, FuzzyConnectives::standard()),
            Err(Error::Domain(_))
        ));
    }
    assert!(VectorSpaceConfig::new(2, CrispNorm::P { p: 0.5 }).is_err());
    assert!(VectorSpaceConfig::new(0, CrispNorm::Max).is_err());
}

#[test]
fn standard_construction_passes_all_eleven() {
    let r = validate_axioms(&standard(1.0), &SamplerConfig::default().with_samples(1000)).unwrap();
    assert_eq!(r.entries.len(), 11);
    assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
    for crisp in [CrispNorm::P { p: 1.0 }, CrispNorm::P { p: 3.0 }, CrispNorm::Max] {
        let n = GifPsiNorm::standard(VectorSpaceConfig::new(3, crisp).unwrap(), 0.7, FuzzyConnectives::standard())
            .unwrap();
        assert!(validate_axioms(&n, &SamplerConfig::default().with_samples(500)).unwrap().all_passed());
    }
}

#[test]
fn max_circle_breaks_the_triangle() {
    let conn = FuzzyConnectives::standard().with_circle(CircleOp::Max);
    let n = GifPsiNorm::standard(VectorSpaceConfig::euclidean(2), 1.0, conn).unwrap();
    let r = validate_axioms(&n, &SamplerConfig::default().with_samples(1000)).unwrap();
    let v = r.entry("v").unwrap();
    assert_eq!(v.status, Status::Fail);
    let w = v.witness.as_ref().unwrap();
    let (x, y) = (w.x.clone().unwrap(), w.y.clone().unwrap());
    let (s, t) = (w.s.unwrap(), w.t.unwrap());
    assert_eq!((x.as_slice(), y.as_slice(), s, t), (&[1.0, 0.0][..], &[1.0, 0.0][..], 1.0, 1.0));
    // Independent re-evaluation of both sides.
    let mu = |z: &[f64], t: f64| t / (t + euclid(z));
    let lhs = mu(&x, s).min(mu(&y, t));
    let sum: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
    let rhs = mu(&sum, s.max(t));
    assert!(lhs - rhs >= 0.16, "{lhs} {rhs}");
}

#[test]
fn oversized_nonmembership_breaks_axiom_i() {
    let n = GifPsiNorm::custom(
        VectorSpaceConfig::euclidean(2),
        FuzzyConnectives::standard(),
        "doubled-nu",
        |x, t| t / (t + euclid(x)),
        |x, t| (2.0 * euclid(x) / (t + euclid(x))).min(1.0),
    )
    .unwrap();
    let r = validate_axioms(&n, &SamplerConfig::default().with_samples(200)).unwrap();
    let e = r.entry("i").unwrap();
    assert_eq!(e.status, Status::Fail);
    let w = e.witness.as_ref().unwrap();
    let p = n.pair(w.x.as_ref().unwrap(), w.t.unwrap());
    assert!(p.0 + p.1 > 1.0 + 1e-9);
    let p = n.pair(&[3.0, 4.0], 5.0);
    assert_eq!(p.0 + p.1, 1.5);
}

#[test]
fn extra_conditions() {
    let r = check_extra_conditions(&standard(1.0), &SamplerConfig::default().with_samples(300)).unwrap();
    assert_eq!(r.entry("xii").unwrap().status, Status::Pass);
    let xiii = r.entry("xiii").unwrap();
    assert_eq!(xiii.status, Status::Pass);
    let w = xiii.witness.as_ref().unwrap();
    assert_eq!((w.x.clone().unwrap(), w.t.unwrap()), (vec![1.0, 0.0], 1.0));
    assert_eq!(xiii.lhs, Some(0.5));

    let mut conn = FuzzyConnectives::standard();
    conn.tnorm = TNorm::Product;
    let n = GifPsiNorm::standard(VectorSpaceConfig::euclidean(2), 1.0, conn).unwrap();
    let r = check_extra_conditions(&n, &SamplerConfig::default().with_samples(300)).unwrap();
    let xii = r.entry("xii").unwrap();
    assert_eq!(xii.status, Status::Fail);
    assert_eq!(xii.witness.as_ref().unwrap().scalars.as_deref(), Some(&[0.5][..]));
    assert_eq!(xii.lhs, Some(0.25));
}

#[test]
fn failure_witnesses_reproduce() {
    // ψ(α) = |α|² with the standard construction breaks scaling; every
    // failing entry must re-evaluate to a violation.
    let mut conn = FuzzyConnectives::standard();
    conn.psi = PsiFunction::AbsPower { p: 2.0 };
    let n = GifPsiNorm::standard(VectorSpaceConfig::euclidean(2), 1.0, conn).unwrap();
    let r = validate_axioms(&n, &SamplerConfig::default().with_samples(300)).unwrap();
    let iv = r.entry("iv").unwrap();
    assert_eq!(iv.status, Status::Fail);
    let w = iv.witness.as_ref().unwrap();
    let (x, t, a) = (w.x.clone().unwrap(), w.t.unwrap(), w.alpha.unwrap());
    let ax: Vec<f64> = x.iter().map(|v| a * v).collect();
    let lhs = n.mu(&ax, t);
    let rhs = n.mu(&x, t / (a * a));
    assert!((lhs - rhs).abs() > 1e-9 * lhs.abs().max(rhs.abs()).max(1.0));
    assert_eq!(iv.lhs, Some(lhs));
    assert_eq!(iv.rhs, Some(rhs));
}

#[test]
fn determinism() {
    let s = SamplerConfig::default().with_samples(500);
    assert_eq!(validate_axioms(&standard(1.0), &s).unwrap(), validate_axioms(&standard(1.0), &s).unwrap());
}

proptest! {
    #[test]
    fn complementary_and_symmetric(
        x in prop::collection::vec(-1e3f64..1e3, 2),
        t in 1e-3f64..1e3,
        k in 1e-2f64..1e2,
    ) {
        let n = standard(k);
        let (mu, nu) = n.pair(&x, t);
        let kn = k * euclid(&x);
        prop_assert_eq!(mu, t / (t + kn));
        prop_assert_eq!(nu, kn / (t + kn));
        prop_assert!((mu + nu - 1.0).abs() <= 2.0 * f64::EPSILON);
        let neg: Vec<f64> = x.iter().map(|v| -v).collect();
        prop_assert_eq!(n.pair(&neg, t), (mu, nu));
    }

    #[test]
    fn strictly_increasing_in_t(x in prop::collection::vec(-1e2f64..1e2, 2), t in 1e-3f64..1e3) {
        let n = standard(1.0);
        if x.iter().any(|v| *v != 0.0) {
            prop_assert!(n.mu(&x, 2.0 * t) > n.mu(&x, t));
        } else {
            prop_assert_eq!(n.mu(&x, t), 1.0);
        }
    }

    #[test]
    fn scaling_with_abs(x in prop::collection::vec(-1e2f64..1e2, 2), t in 1e-2f64..1e2, a in 1e-2f64..1e2, neg: bool) {
        let a = if neg { -a } else { a };
        let n = standard(1.0);
        let ax: Vec<f64> = x.iter().map(|v| a * v).collect();
        let lhs = n.mu(&ax, t);
        let rhs = n.mu(&x, t / a.abs());
        prop_assert!((lhs - rhs).abs() <= 1e-14);
    }
}
