use frobsplit_core::builtins;
use frobsplit_core::groups::Faithfulness;
use frobsplit_core::modrep::{
    annihilator, build_v, closed_form_check, counterexample_report, distinct_witnesses, socle_dim, AnnihilatorIdeal,
};
use frobsplit_core::{FieldElement, FieldSpec};

fn k() -> FieldSpec {
    FieldSpec::perfect_rational(3).unwrap()
}

#[test]
fn witnesses_grow_with_e() {
    let w = distinct_witnesses(6).unwrap();
    assert!(w.passed && w.pairwise_distinct);
    assert_eq!(w.witnesses.len(), 7);
    for (e, x) in w.witnesses.iter().enumerate() {
        assert_eq!(x.e as usize, e);
        assert_eq!(x.socle_dim, 1);
        assert!(x.matches_expected && x.matches_twist);
    }
}

#[test]
fn smallness_depends_on_alpha() {
    let t = FieldElement::t(k()).unwrap();
    let one = FieldElement::one(k());
    for (alpha, small) in [(t.clone(), true), (&t + &one, true)] {
        let g = builtins::counterexample(&alpha).build(100).unwrap();
        let s = g.smallness(1000);
        assert_eq!(s.small, Some(small));
        assert!(s.pseudoreflections.is_empty());
        assert_eq!(g.order(), 9);
    }
    for a in 0..2 {
        let alpha = FieldElement::from_int(k(), a);
        let g = builtins::counterexample(&alpha).build(100).unwrap();
        assert_eq!(g.order(), 3, "alpha = {alpha}");
        assert!(matches!(
            g.faithfulness(1000),
            Faithfulness::NotFaithful { abstract_order: 9, .. }
        ));
        assert_eq!(g.smallness(1000).small, Some(false));
    }
    // alpha = 2 is faithful, but sigma*tau = I + 2N^2 is a pseudoreflection.
    let g = builtins::counterexample(&FieldElement::from_int(k(), 2))
        .build(100)
        .unwrap();
    let s = g.smallness(1000);
    assert_eq!(g.order(), 9);
    assert!(matches!(s.faithfulness, Faithfulness::Faithful { abstract_order: 9 }));
    assert!(!s.pseudoreflections.is_empty());
    assert_eq!(s.small, Some(false));
}

#[test]
fn closed_form_for_several_alphas() {
    let t = FieldElement::t(k()).unwrap();
    for alpha in [t.clone(), t.root(2), FieldElement::one(k()), FieldElement::zero(k())] {
        assert!(closed_form_check(&alpha).unwrap().iter().all(|r| r.passed));
    }
}

#[test]
fn annihilators_separate_parameters() {
    let t = FieldElement::t(k()).unwrap();
    let alphas = [
        t.clone(),
        t.root(1),
        &t + &FieldElement::one(k()),
        FieldElement::from_int(k(), 2),
    ];
    let ideals: Vec<AnnihilatorIdeal> = alphas.iter().map(|a| annihilator(&build_v(a).unwrap())).collect();
    for i in 0..ideals.len() {
        assert_eq!(ideals[i].linear_generator().as_ref(), Some(&alphas[i]));
        assert_eq!(socle_dim(&build_v(&alphas[i]).unwrap()), 1);
        for j in i + 1..ideals.len() {
            assert_ne!(ideals[i], ideals[j]);
        }
    }
}

#[test]
fn report_for_t() {
    let r = counterexample_report(&FieldElement::t(k()).unwrap(), 4).unwrap();
    assert!(r.passed);
    assert_eq!(r.smallness.small, Some(true));
    assert_eq!(r.closed_form.len(), 9);
}
