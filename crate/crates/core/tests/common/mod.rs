#![allow(dead_code)]

use liaison_core::fmodule::PresentedModule;
use liaison_core::gbasis::ideal_intersection;
use liaison_core::poly::{parse_poly, Poly, Ring};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ring(nvars: usize) -> Ring {
    Ring::standard(32003, nvars).unwrap()
}

pub fn polys(r: &Ring, gens: &[&str]) -> Vec<Poly> {
    gens.iter().map(|g| parse_poly(g, r).unwrap()).collect()
}

pub fn cyclic(r: &Ring, gens: &[&str]) -> PresentedModule {
    PresentedModule::cyclic(r, &polys(r, gens)).unwrap()
}

/// Twisted cubic in P^3.
pub fn twisted_cubic() -> PresentedModule {
    let r = ring(4);
    cyclic(&r, &["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"])
}

/// Two skew lines `(x0, x1) ∩ (x2, x3)` in P^3.
pub fn skew_lines() -> PresentedModule {
    let r = ring(4);
    let v = |i| Poly::var(&r, i);
    let gb = ideal_intersection(&r, &[v(0), v(1)], &[v(2), v(3)]).unwrap();
    let gens: Vec<Poly> = gb.minimal_generators().iter().map(|g| g[0].clone()).collect();
    PresentedModule::cyclic(&r, &gens).unwrap()
}

/// Square matrix of random linear forms with nonzero determinant.
pub fn random_linear_matrix(r: &Ring, n: usize, g: &mut ChaCha8Rng) -> liaison_core::Matrix {
    loop {
        let rows = (0..n)
            .map(|_| (0..n).map(|_| Poly::random_homogeneous(r, 1, g)).collect())
            .collect();
        let m = liaison_core::Matrix::from_rows(r, rows, vec![0; n], vec![1; n]).unwrap();
        if !m.det().is_zero() {
            return m;
        }
    }
}
