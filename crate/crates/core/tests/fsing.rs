use std::time::Instant;

use frobsplit_core::fsing::{p_cubed_suite, verify_presentation_remark};
use num_rational::Rational64;

#[test]
fn p_cubed_all_primes() {
    for p in [2, 3, 5] {
        let start = Instant::now();
        let r = p_cubed_suite(p).unwrap();
        eprintln!("p={p}: {:?}", start.elapsed());
        assert!(r.passed, "{r:?}");
        assert_eq!(r.order, (p as usize).pow(3));
        assert!(!r.closure.t_in_ideal.is_member());
        assert!(r.closure.tp_in_frobenius_power.verified);
        assert!(!r.fedder.f_pure);
        assert!(r.sandwich.parameters);
    }
}

#[test]
fn presentation_remark() {
    let r = verify_presentation_remark().unwrap();
    assert!(r.passed);
    assert_eq!(r.relation_degree, Rational64::from_integer(15));
    assert_eq!(r.a_invariant, Rational64::from_integer(-3));
}
