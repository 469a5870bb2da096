mod common;

use common::*;
use liaison_core::fmodule::{canonical_module, is_isomorphic, PresentedModule};
use liaison_core::liaison::*;

#[test]
fn twisted_cubic_links_to_a_line() {
    let m = twisted_cubic();
    let r = m.ring().clone();
    let mut g = rng(7);
    let c = cyclic(&r, &["x0*x2 - x1^2", "x1*x3 - x2^2"]);
    let cert = certify_quasi_gorenstein(&c, &mut g).unwrap().cert().unwrap();
    let phi = liaison_core::Matrix::identity(&r, vec![0]);
    let step = link(&m, &cert, &phi).unwrap();
    let line = cyclic(&r, &["x1", "x2"]);
    assert!(is_isomorphic(&step.result, &line, 4, &mut g).is_yes());
    let rep = verify_link_formulas(&step).unwrap();
    assert_eq!((rep.deg_n, rep.deg_c, rep.deg_m), (1, 4, 3));
    assert!(rep.all_ok(), "{rep:?}");
    assert_eq!(rep.function_ok, Some(true));
}

#[test]
fn auto_link_of_twisted_cubic() {
    let m = twisted_cubic();
    let mut g = rng(11);
    let step = auto_link(&m, &mut g).unwrap();
    let rep = verify_link_formulas(&step).unwrap();
    assert!(rep.all_ok(), "{rep:?}");
    let dl = double_link_check(step, &mut g).unwrap();
    assert!(dl.consistent());
    assert!(dl.iso.is_yes());
}

#[test]
fn hypersurface_with_canonical_summand() {
    let r = ring(3);
    let m = cyclic(&r, &["x0"]);
    let mut g = rng(1);
    let data = build_linking_module(&m, None, &mut g).unwrap();
    assert_eq!(data.cert.module.num_gens(), 2);
    let step = link(&m, &data.cert, &data.phi).unwrap();
    assert!(verify_link_formulas(&step).unwrap().all_ok());
    let dl = double_link_check(step, &mut g).unwrap();
    assert!(dl.consistent() && dl.iso.is_yes());
}

#[test]
fn perfect_module_links_to_itself() {
    let r = ring(3);
    let mut g = rng(2);
    let m = cyclic(&r, &["x0^2", "x1*x2"]);
    let c = m.direct_sum(&canonical_module(&m).unwrap()).unwrap();
    let cert = certify_quasi_gorenstein(&c, &mut g).unwrap().cert().unwrap();
    let mut phi = liaison_core::Matrix::zeros(&r, vec![0], c.gen_degrees().to_vec());
    phi.set(0, 0, liaison_core::poly::Poly::one(&r));
    let phi = phi.mul(&cert.from_input).unwrap();
    let step = link(&m, &cert, &phi).unwrap();
    assert!(is_isomorphic(&step.result, &m, 4, &mut g).is_yes());
}

#[test]
fn skew_lines_link() {
    let m = skew_lines();
    let mut g = rng(3);
    let step = auto_link(&m, &mut g).unwrap();
    let rep = verify_link_formulas(&step).unwrap();
    assert!(rep.all_ok(), "{rep:?}");
    assert_eq!(rep.poly_ok, Some(true));
    assert_eq!(rep.function_ok, None);
    let s = 1 - step.cert.module.hilbert().r().unwrap() - step.cert.module.hilbert().a().unwrap();
    assert!(cohomology_odd_check(&step.source, &step.result, s, (-4, 4)));
}

#[test]
fn free_modules_reduce_to_the_ring() {
    let r = ring(2);
    let mut g = rng(4);
    let f = PresentedModule::free(&r, vec![1, 0, -1]);
    let chain = free_reduction_chain(&f, &mut g).unwrap();
    let end = chain.end().unwrap();
    assert!(is_isomorphic(end, &PresentedModule::free(&r, vec![0]), 4, &mut g).is_yes());
}

#[test]
fn sm_linked_ideals() {
    let r = ring(4);
    let mut g = rng(5);
    let i = polys(&r, &["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"]);
    let j = polys(&r, &["x1", "x2"]);
    let c = polys(&r, &["x0*x2 - x1^2", "x1*x3 - x2^2"]);
    assert!(sm_link_ideals(&r, &i, &j, &c, &mut g).unwrap());
    let r3 = ring(3);
    let f = polys(&r3, &["x0^2 + x1*x2"]);
    // (f) : (f) is the unit ideal, so a hypersurface is not linked to itself by itself
    assert!(!sm_link_ideals(&r3, &f, &f, &f, &mut g).unwrap());
    let (x, y, xx) = (polys(&r3, &["x0"]), polys(&r3, &["x1"]), polys(&r3, &["x0^2"]));
    assert!(!sm_link_ideals(&r3, &x, &y, &xx, &mut g).unwrap());
}
