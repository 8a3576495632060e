use gifpsi::algebra::{
    check_connective_axioms, find_companion_r3, find_companion_r4, find_idempotent_pair,
};
use gifpsi::{CircleOp, Error, PsiFunction, SamplerConfig, Status, TConorm, TNorm};
use proptest::prelude::*;

const TNORMS: [TNorm; 3] = [TNorm::Minimum, TNorm::Product, TNorm::Lukasiewicz];
const TCONORMS: [TConorm; 3] = [TConorm::Maximum, TConorm::ProbabilisticSum, TConorm::BoundedSum];

fn sampler(n: usize) -> SamplerConfig {
    SamplerConfig::default().with_samples(n)
}

#[test]
fn builtin_formulas() {
    assert_eq!(TNorm::Minimum.apply(0.3, 0.7).unwrap(), 0.3);
    assert_eq!(TNorm::Product.apply(0.4, 1.0).unwrap(), 0.4);
    assert_eq!(TNorm::Product.apply(0.5, 0.5).unwrap(), 0.25);
    assert_eq!(TConorm::Maximum.apply(0.3, 0.7).unwrap(), 0.7);
    assert_eq!(TConorm::ProbabilisticSum.apply(0.4, 0.0).unwrap(), 0.4);
    assert_eq!(TConorm::ProbabilisticSum.apply(0.5, 0.5).unwrap(), 0.75);
    assert_eq!(CircleOp::Add.apply(3.0, 4.0).unwrap(), 7.0);
    assert_eq!(CircleOp::PowerMean { n: 2 }.apply(3.0, 4.0).unwrap(), 5.0);
    assert_eq!(CircleOp::Max.apply(2.5, 0.0).unwrap(), 2.5);
    assert_eq!(PsiFunction::RationalExample { n: 1 }.apply(1.0).unwrap(), 1.0);
}

#[test]
fn out_of_range_arguments() {
    assert!(matches!(TNorm::Minimum.apply(1.5, 0.2), Err(Error::Domain(_))));
    assert!(matches!(TConorm::Maximum.apply(-0.1, 0.2), Err(Error::Domain(_))));
    assert!(matches!(CircleOp::Add.apply(-1.0, 0.0), Err(Error::Domain(_))));
}

#[test]
fn builtin_connectives_pass_their_axioms() {
    let s = sampler(1000);
    for t in TNORMS {
        assert!(check_connective_axioms(&t, &s).unwrap().all_passed(), "{t:?}");
    }
    for c in TCONORMS {
        assert!(check_connective_axioms(&c, &s).unwrap().all_passed(), "{c:?}");
    }
    for c in [CircleOp::Add, CircleOp::Max, CircleOp::PowerMean { n: 3 }] {
        assert!(check_connective_axioms(&c, &s).unwrap().all_passed(), "{c:?}");
    }
    for p in [
        PsiFunction::Abs,
        PsiFunction::AbsPower { p: 0.5 },
        PsiFunction::RationalExample { n: 1 },
        PsiFunction::RationalExample { n: 2 },
    ] {
        let r = check_connective_axioms(&p, &s).unwrap();
        assert!(r.all_passed(), "{p:?}: {:?}", r.failures().collect::<Vec<_>>());
    }
}

#[test]
fn projection_is_not_commutative() {
    let proj = TNorm::custom("projection", |a, _| a);
    let r = check_connective_axioms(&proj, &sampler(1000)).unwrap();
    let e = r.entry("commutativity").unwrap();
    assert_eq!(e.status, Status::Fail);
    let w = e.witness.as_ref().unwrap().scalars.clone().unwrap();
    assert_ne!(w[0], w[1]);
    // Re-evaluation reproduces the asymmetry.
    assert_ne!(proj.eval(w[0], w[1]), proj.eval(w[1], w[0]));
    assert_eq!(proj.eval(0.2, 0.8), 0.2);
}

#[test]
fn nonmonotone_psi_is_rejected() {
    let bad = PsiFunction::custom("cos-bump", |a: f64| if a.abs() == 1.0 { 1.0 } else { a.abs() * (2.0 + a.cos()) / 3.0 });
    let r = check_connective_axioms(&bad, &sampler(200)).unwrap();
    assert_eq!(r.entry("strict-monotonicity").unwrap().status, Status::Fail);
}

#[test]
fn companion_examples() {
    let r3 = find_companion_r3(0.8, 0.5, &TNorm::Minimum).unwrap();
    assert!(TNorm::Minimum.eval(0.8, r3) > 0.5);
    let r3 = find_companion_r3(0.9, 0.1, &TNorm::Product).unwrap();
    assert!(0.9 * r3 > 0.1);
    let r3 = find_companion_r3(0.6, 0.59, &TNorm::Minimum).unwrap();
    assert!(r3 > 0.59 && r3 < 1.0);

    let r4 = find_companion_r4(0.8, 0.5, &TConorm::Maximum).unwrap();
    assert!(TConorm::Maximum.eval(r4, 0.5) < 0.8);
    let r4 = find_companion_r4(0.9, 0.1, &TConorm::ProbabilisticSum).unwrap();
    assert!(r4 + 0.1 - 0.1 * r4 < 0.9);
    let r4 = find_companion_r4(0.51, 0.5, &TConorm::Maximum).unwrap();
    assert!(r4 > 0.0 && r4 < 0.51);

    let (r6, r7) = find_idempotent_pair(0.7, &TNorm::Minimum, &TConorm::Maximum).unwrap();
    assert!(r6.min(r6) >= 0.7 && r7.max(r7) <= 0.7);
    let (r6, _) = find_idempotent_pair(0.81, &TNorm::Product, &TConorm::Maximum).unwrap();
    assert!(r6 * r6 >= 0.81 && r6 >= 0.9);
    let (_, r7) = find_idempotent_pair(0.5, &TNorm::Minimum, &TConorm::ProbabilisticSum).unwrap();
    assert!(2.0 * r7 - r7 * r7 <= 0.5);
}

#[test]
fn companion_preconditions_and_exhaustion() {
    assert!(matches!(find_companion_r3(0.5, 0.8, &TNorm::Minimum), Err(Error::Domain(_))));
    let zero = TNorm::custom("zero", |_, _| 0.0);
    assert!(matches!(find_companion_r3(0.8, 0.5, &zero), Err(Error::SearchExhausted(_))));
}

proptest! {
    #[test]
    fn tnorms_below_min(a in 0.0f64..=1.0, b in 0.0f64..=1.0) {
        for t in TNORMS {
            prop_assert!(t.eval(a, b) <= a.min(b) + 1e-15);
        }
    }

    #[test]
    fn tconorms_above_max(a in 0.0f64..=1.0, b in 0.0f64..=1.0) {
        for s in TCONORMS {
            prop_assert!(s.eval(a, b) >= a.max(b) - 1e-15);
        }
    }

    #[test]
    fn power_mean_one_is_addition(s in 0.0f64..1e6, t in 0.0f64..1e6) {
        let pm = CircleOp::PowerMean { n: 1 }.eval(s, t);
        prop_assert!((pm - (s + t)).abs() <= 1e-12 * (s + t).max(1.0));
    }

    #[test]
    fn psi_even_and_normalized(p in 0.1f64..5.0, n in 1u32..5, t in 1e-3f64..1e3) {
        for psi in [PsiFunction::Abs, PsiFunction::AbsPower { p }, PsiFunction::RationalExample { n }] {
            prop_assert_eq!(psi.eval(-1.0), 1.0);
            prop_assert!((psi.eval(1.0) - 1.0).abs() <= 1e-15);
            prop_assert_eq!(psi.eval(-t), psi.eval(t));
        }
    }

    #[test]
    fn companions_verify(r1 in 0.02f64..0.99, frac in 0.01f64..0.99, r5 in 0.01f64..0.99) {
        let r2 = r1 * frac;
        for t in TNORMS {
            if let Ok(r3) = find_companion_r3(r1, r2, &t) {
                prop_assert!(t.eval(r1, r3) > r2);
            }
        }
        for s in TCONORMS {
            if let Ok(r4) = find_companion_r4(r1, r2, &s) {
                prop_assert!(s.eval(r4, r2) < r1);
            }
        }
        for (t, s) in TNORMS.iter().zip(&TCONORMS) {
            if let Ok((r6, r7)) = find_idempotent_pair(r5, t, s) {
                prop_assert!(t.eval(r6, r6) >= r5 && s.eval(r7, r7) <= r5);
            }
        }
    }
}
