mod common;

use std::time::Instant;

use common::*;
use liaison_core::matlink::*;

#[test]
fn random_three_by_three_reduce() {
    let r = ring(3);
    let mut g = rng(31);
    for _ in 0..10 {
        let a = random_linear_matrix(&r, 3, &mut g);
        let t = Instant::now();
        let chain = reduce(&a).unwrap();
        assert!(t.elapsed().as_secs_f64() < 2.0);
        assert!(chain.verify());
        assert!(chain.len() <= 2);
        for st in &chain.stages {
            assert!(st.step.s.is_symmetric());
            assert!(!st.step.det_s.is_zero());
            assert!(verify_matrix_link_modules(&st.step).unwrap().all_ok());
        }
    }
}

#[test]
fn random_four_by_four_reduce() {
    let r = ring(3);
    let mut g = rng(32);
    for _ in 0..2 {
        let a = random_linear_matrix(&r, 4, &mut g);
        let chain = reduce(&a).unwrap();
        assert!(chain.verify());
        assert!(chain.len() <= 3);
    }
}

#[test]
fn certificate_round_trip_and_tampering() {
    let r = ring(3);
    let mut g = rng(33);
    let a = random_linear_matrix(&r, 3, &mut g);
    let cert = reduce(&a).unwrap().certificate();
    let text = serde_json::to_string(&cert).unwrap();
    let back: MatChainCertificate = serde_json::from_str(&text).unwrap();
    assert_eq!(back, cert);
    back.verify().unwrap();
    let mut bad = cert.clone();
    bad.stages[0].s.rows[0][1] = "x0".into();
    assert!(bad.verify().is_err());
    let mut bad = cert;
    bad.stages[0].lambda = "x1*x2".into();
    assert!(bad.verify().is_err());
}
