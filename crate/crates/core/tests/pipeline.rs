use v22::netquad::{klein_net, q_perp, NetOfQuadrics};
use v22::pipeline::*;
use v22::random;
use v22::Field;

const Q: Field = Field::Rational;

fn general_net(seed: u64) -> NetOfQuadrics {
    let mut rng = random::rng(seed);
    loop {
        let q = random::net(&mut rng, Q, 2);
        if q_perp(&q, 8).is_ok() {
            return q;
        }
    }
}

#[test]
fn random_net_closes_the_circle() {
    let report = circle(&general_net(12), 8).unwrap();
    assert_eq!(report.pfaffian_hilbert, PFAFFIAN_HILBERT.to_vec());
    let v = report
        .verdicts
        .iter()
        .find(|v| v.name == "covariant_vs_discriminant")
        .unwrap();
    assert!(v.pass, "{}", v.detail);
    assert!(report.passed());
}

#[test]
fn klein_circle_is_reproducible() {
    let a = circle(&klein_net(Q), 8).unwrap();
    let b = circle(&klein_net(Q), 8).unwrap();
    assert_eq!(a.s_q, b.s_q);
    assert_eq!(a.eta, b.eta);
    assert_eq!(a.pfaffians, b.pfaffians);
    assert_eq!(a.f_q, b.f_q);
    assert_eq!(a.s_f_q, b.s_f_q);
    assert_eq!(a.self_covariant, b.self_covariant);
    assert!(a.passed());
}
