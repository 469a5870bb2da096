mod common;

use common::*;
use liaison_core::fmodule::{dual_module, PresentedModule};
use liaison_core::hilbert::Cohomology;
use liaison_core::liaison::auto_link;
use liaison_core::resolution::*;

#[test]
fn e_type_tail_carries_the_cohomology() {
    let m = skew_lines();
    let e = e_type(&m).unwrap();
    assert_eq!(e.codim, 2);
    assert!(e.euler_ok(&m));
    let (cm, ce) = (Cohomology::new(&m), Cohomology::new(&e.tail));
    // H^{i+c}(E) = H^i(M) for 1 <= i <= dim M - 1
    for j in -3..4 {
        assert_eq!(ce.local_hf(3, j), cm.local_hf(1, j), "degree {j}");
    }
}

#[test]
fn exchange_gives_q_type_of_the_link() {
    let m = skew_lines();
    let mut g = rng(21);
    let step = auto_link(&m, &mut g).unwrap();
    let ex = exchange(&step).unwrap();
    assert!(ex.q_type.euler_ok(&step.result));
    assert!(ex.q_type.band_vanishes());
    assert!(ex.q_type.cohomology_matches(&step.result, (-4, 4)));
    assert!(ex.e_type.euler_ok(&step.result));
    // Q of the link is stably the dual of E of the source
    let e_dual = dual_module(&e_type(&m).unwrap().tail).module;
    assert!(stable_equiv(&ex.q_type.q, &e_dual, &mut g).is_equivalent());
}

#[test]
fn q_type_of_the_twisted_cubic() {
    let m = twisted_cubic();
    let mut g = rng(5);
    let (q, back) = q_type(&m, &mut g).unwrap();
    assert!(q.euler_ok(&back));
    assert!(q.band_vanishes());
    assert!(q.cohomology_matches(&back, (-4, 4)));
    // arithmetically Cohen-Macaulay: both stable classes are trivial
    let pp = phi_psi(&m, &mut g).unwrap();
    assert!(pp.phi.core.is_zero());
    assert!(pp.psi.core.is_zero());
}

#[test]
fn skew_lines_are_not_stably_free() {
    let m = skew_lines();
    let mut g = rng(8);
    let pp = phi_psi(&m, &mut g).unwrap();
    assert!(!pp.phi.core.is_zero());
    assert!(!pp.psi.core.is_zero());
    let free = PresentedModule::free(m.ring(), vec![0]);
    assert!(stable_equiv(&pp.phi.core, &free, &mut g).is_distinct());
}
