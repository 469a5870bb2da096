mod common;

use common::*;
use liaison_core::fmodule::PresentedModule;
use liaison_core::gbasis::GBasis;
use liaison_core::linalg::DenseMatrix;
use liaison_core::matlink::symmetric_transport;
use liaison_core::poly::{Monomial, Poly, Ring};
use liaison_core::resolution::minimal_free_resolution;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn random_poly(r: &Ring, g: &mut ChaCha8Rng) -> Poly {
    (0..=3).fold(Poly::zero(r), |acc, d| {
        if g.gen_bool(0.6) {
            acc.add(&Poly::random_homogeneous(r, d, g))
        } else {
            acc
        }
    })
}

/// Homogeneous `f` lies in `(gens)` iff it is a linear combination of `m * g` in its degree.
fn brute_force_member(r: &Ring, gens: &[Poly], f: &Poly) -> bool {
    let Some(d) = f.degree() else { return true };
    let monos = Monomial::all_of_degree(r.nvars(), d);
    let index = |m: &Monomial| monos.iter().position(|x| x == m).unwrap();
    let mut cols: Vec<Poly> = Vec::new();
    for g in gens {
        let Some(e) = g.degree() else { continue };
        if e > d {
            continue;
        }
        for m in Monomial::all_of_degree(r.nvars(), d - e) {
            cols.push(g.mul_term(1, &m));
        }
    }
    let mut a = DenseMatrix::zeros(monos.len(), cols.len());
    for (j, c) in cols.iter().enumerate() {
        for &(m, coef) in c.terms() {
            a.set(index(&m), j, coef);
        }
    }
    let mut b = vec![0u32; monos.len()];
    for &(m, coef) in f.terms() {
        b[index(&m)] = coef;
    }
    a.solve(&b, r.field()).is_some()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(seed in any::<u64>()) {
        let r = ring(3);
        let mut g = rng(seed);
        let (a, b, c) = (random_poly(&r, &mut g), random_poly(&r, &mut g), random_poly(&r, &mut g));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.mul(&Poly::one(&r)), a.clone());
        prop_assert!(a.mul(&Poly::zero(&r)).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn transport_identity(seed in any::<u64>()) {
        let r = ring(3);
        let mut g = rng(seed);
        let n = g.gen_range(1..=4usize);
        let d = g.gen_range(0..=4i64);
        let dv: Vec<i64> = (0..n).map(|_| g.gen_range((d - 2).max(0)..=d.min(2))).collect();
        let dw: Vec<i64> = dv.iter().map(|e| d - e).collect();
        let draw = |e: i64, g: &mut ChaCha8Rng| if g.gen_bool(0.3) { Poly::zero(&r) } else { Poly::random_homogeneous(&r, e, g) };
        let mut v: Vec<Poly> = dv.iter().map(|&e| draw(e, &mut g)).collect();
        let w: Vec<Poly> = dw.iter().map(|&e| draw(e, &mut g)).collect();
        prop_assume!(w.iter().any(|p| !p.is_zero()));
        if v.iter().all(Poly::is_zero) {
            v[0] = Poly::random_homogeneous(&r, dv[0], &mut g);
        }
        prop_assume!(v.iter().any(|p| !p.is_zero()));
        let t = symmetric_transport(&r, &v, &w, &dv, &dw).unwrap();
        prop_assert!(t.verify(&v, &w));
        prop_assert!(t.s.check_homogeneous().is_ok());
        if t.case.uses_adjugate() {
            prop_assert!(t.adjugate_identity());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn groebner_membership(seed in any::<u64>()) {
        let r = ring(3);
        let mut g = rng(seed);
        let k = g.gen_range(1..=3usize);
        let gens: Vec<Poly> = (0..k)
            .map(|_| { let d = g.gen_range(1..=2); Poly::random_homogeneous(&r, d, &mut g) })
            .filter(|p| !p.is_zero())
            .collect();
        prop_assume!(!gens.is_empty());
        let gb = GBasis::ideal(&r, &gens).unwrap();
        // a combination of the generators, and an arbitrary form
        let d = 3;
        let member = gens.iter().fold(Poly::zero(&r), |acc, f| {
            let e = d - f.degree().unwrap() as i64;
            acc.add(&f.mul(&Poly::random_homogeneous(&r, e, &mut g)))
        });
        let other = Poly::random_homogeneous(&r, d, &mut g);
        for f in [member, other] {
            prop_assert_eq!(gb.contains(std::slice::from_ref(&f)), brute_force_member(&r, &gens, &f));
        }
    }

    #[test]
    fn resolution_is_a_complex(seed in any::<u64>()) {
        let r = ring(3);
        let mut g = rng(seed);
        let k = g.gen_range(1..=3usize);
        let gens: Vec<Poly> = (0..k)
            .map(|_| { let d = g.gen_range(1..=2); Poly::random_homogeneous(&r, d, &mut g) })
            .filter(|p| !p.is_zero())
            .collect();
        prop_assume!(!gens.is_empty());
        let m = PresentedModule::cyclic(&r, &gens).unwrap();
        let res = minimal_free_resolution(&m);
        prop_assert!(res.is_complex());
        prop_assert!(res.is_minimal());
        prop_assert!(res.length() <= r.nvars());
    }
}
