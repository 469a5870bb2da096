use std::collections::HashMap;

use rand::Rng;

use super::{minimalize, PresentedModule};
use crate::gbasis::vector::SVec;
use crate::gbasis::GBasis;
use crate::linalg::DenseMatrix;
use crate::matrix::Matrix;
use crate::poly::{Monomial, Poly};

/// Basis of the graded piece `Hom(M, N)_s`; each map is a matrix (N gens × M gens)
/// whose columns are normal forms modulo the relations of `N`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: PresentedModule,
    pub target: PresentedModule,
    pub shift: i64,
    pub basis: Vec<Matrix>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Random linear combination of the basis.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Matrix {
        let ring = self.source.ring();
        let f = ring.field();
        let mut acc = self.empty_map();
        for b in &self.basis {
            let c = rng.gen_range(0..f.characteristic());
            acc = acc.add(&b.scale(&Poly::constant(ring, c), 0)).expect("same shape");
        }
        acc
    }

    fn empty_map(&self) -> Matrix {
        Matrix::zeros(
            self.source.ring(),
            self.target.gen_degrees().to_vec(),
            self.source.gen_degrees().iter().map(|a| a + self.shift).collect(),
        )
    }
}

/// `Hom(M, N)_s` by linear algebra on graded pieces.
pub fn hom_degree_zero(m: &PresentedModule, n: &PresentedModule, shift: i64) -> HomSpace {
    let ring = m.ring().clone();
    let f = *ring.field();
    let gbn: &GBasis = n.relation_basis();
    let a = m.gen_degrees();
    let b = n.gen_degrees();
    let nv = ring.nvars();
    // unknowns: (i, j, mono) with mono * e_i standard
    let mut unknowns: Vec<(usize, usize, Monomial)> = Vec::new();
    for j in 0..a.len() {
        for i in 0..b.len() {
            let d = a[j] + shift - b[i];
            if d < 0 {
                continue;
            }
            for mono in Monomial::all_of_degree(nv, d as u32) {
                if gbn.is_standard(i, &mono) {
                    unknowns.push((i, j, mono));
                }
            }
        }
    }
    let pres = m.presentation();
    // constraint rows keyed by (relation, comp, mono)
    let mut rows: HashMap<(usize, u32, Monomial), usize> = HashMap::new();
    let mut entries: Vec<(usize, usize, u32)> = Vec::new();
    for (u, &(i, j, mono)) in unknowns.iter().enumerate() {
        for c in 0..pres.ncols() {
            let e = pres.get(j, c);
            if e.is_zero() {
                continue;
            }
            let mut comps = vec![Poly::zero(&ring); b.len()];
            comps[i] = e.mul_term(1, &mono);
            let nf = gbn.nf(&SVec::from_polys(&comps));
            for t in nf.terms {
                let next = rows.len();
                let r = *rows.entry((c, t.comp, t.mono)).or_insert(next);
                entries.push((r, u, t.coeff));
            }
        }
    }
    let mut dm = DenseMatrix::zeros(rows.len(), unknowns.len());
    for (r, u, c) in entries {
        let v = f.add(dm.get(r, u), c);
        dm.set(r, u, v);
    }
    let null = if rows.is_empty() {
        (0..unknowns.len())
            .map(|k| {
                let mut v = vec![0u32; unknowns.len()];
                v[k] = 1;
                v
            })
            .collect()
    } else {
        dm.nullspace(&f)
    };
    let mut space = HomSpace {
        source: m.clone(),
        target: n.clone(),
        shift,
        basis: Vec::new(),
    };
    for v in null {
        let mut phi = space.empty_map();
        for (k, &(i, j, mono)) in unknowns.iter().enumerate() {
            if v[k] != 0 {
                let cur = phi.get(i, j).add(&Poly::monomial(&ring, v[k], mono));
                phi.set(i, j, cur);
            }
        }
        space.basis.push(phi);
    }
    space
}

/// Random element of `Hom(M, N)_s`, `None` if the piece is zero.
pub fn random_hom<R: Rng + ?Sized>(
    m: &PresentedModule,
    n: &PresentedModule,
    shift: i64,
    rng: &mut R,
) -> Option<Matrix> {
    let h = hom_degree_zero(m, n, shift);
    if h.dim() == 0 {
        None
    } else {
        Some(h.random_element(rng))
    }
}

/// Outcome of an isomorphism search.
#[derive(Clone, Debug)]
pub enum IsoResult {
    /// Explicit isomorphism `M -> N` on the given presentations.
    Yes(Matrix),
    No(String),
    Unknown(String),
}

impl IsoResult {
    pub fn is_yes(&self) -> bool {
        matches!(self, IsoResult::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, IsoResult::No(_))
    }
}

/// Whether `phi: M -> N` (given on generators) is onto.
pub fn is_surjective_on(phi: &Matrix, n: &PresentedModule) -> bool {
    let phi = phi.with_degrees(n.gen_degrees().to_vec(), phi.col_deg().to_vec());
    match phi.hstack(n.presentation()).map(|m| GBasis::of_image(&m)) {
        Ok(Ok(gb)) => gb.is_everything(),
        _ => false,
    }
}

/// Three-valued test for a degree-preserving isomorphism `M ≅ N`.
pub fn is_isomorphic<R: Rng + ?Sized>(
    m: &PresentedModule,
    n: &PresentedModule,
    tries: usize,
    rng: &mut R,
) -> IsoResult {
    let mz = m.is_zero();
    let nz = n.is_zero();
    if mz || nz {
        return if mz && nz {
            IsoResult::Yes(Matrix::zeros(m.ring(), n.gen_degrees().to_vec(), m.gen_degrees().to_vec()))
        } else {
            IsoResult::No("exactly one module is zero".into())
        };
    }
    if m.hilbert().numerator() != n.hilbert().numerator() {
        return IsoResult::No("Hilbert series differ".into());
    }
    let mm = minimalize(m);
    let nn = minimalize(n);
    let sorted = |v: &[i64]| {
        let mut v = v.to_vec();
        v.sort_unstable();
        v
    };
    if sorted(mm.module.gen_degrees()) != sorted(nn.module.gen_degrees())
        || sorted(mm.module.presentation().col_deg()) != sorted(nn.module.presentation().col_deg())
    {
        return IsoResult::No("minimal presentation degrees differ".into());
    }
    let space = hom_degree_zero(&mm.module, &nn.module, 0);
    if space.dim() == 0 {
        return IsoResult::No("no nonzero degree-0 homomorphism".into());
    }
    for _ in 0..tries.max(1) {
        let phi = space.random_element(rng);
        if is_surjective_on(&phi, &nn.module) {
            // back to the given presentations: M -> Mmin -> Nmin -> N
            let full = nn
                .to_old()
                .mul(&phi)
                .and_then(|x| x.mul(&mm.to_new))
                .expect("shapes agree");
            let full = full.with_degrees(n.gen_degrees().to_vec(), m.gen_degrees().to_vec());
            return IsoResult::Yes(full);
        }
    }
    IsoResult::Unknown(format!("{tries} random homomorphisms were not surjective"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn hom_of_cyclic_modules() {
        let r = Ring::standard(32003, 2).unwrap();
        let x = Poly::var(&r, 0);
        let m = PresentedModule::cyclic(&r, &[x.clone()]).unwrap();
        // Hom(R/(x), R/(x))_0 = K, degree 1 piece = K x1
        assert_eq!(hom_degree_zero(&m, &m, 0).dim(), 1);
        assert_eq!(hom_degree_zero(&m, &m, 1).dim(), 1);
        // Hom(R/(x), R)_0 = 0
        assert_eq!(hom_degree_zero(&m, &PresentedModule::free(&r, vec![0]), 0).dim(), 0);
    }

    #[test]
    fn isomorphism_search() {
        let r = Ring::standard(32003, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let m = PresentedModule::cyclic(&r, &[x.clone(), y.clone()]).unwrap();
        let sum = m.direct_sum(&m.twist(-1)).unwrap();
        let swapped = m.twist(-1).direct_sum(&m).unwrap();
        assert!(is_isomorphic(&sum, &swapped, 4, &mut rng).is_yes());
        assert!(is_isomorphic(&m, &m.twist(1), 4, &mut rng).is_no());
        let same = PresentedModule::cyclic(&r, &[x.clone(), x.add(&y)]).unwrap();
        assert!(is_isomorphic(&m, &same, 4, &mut rng).is_yes());
        // equal Hilbert series, different annihilators
        let other = PresentedModule::cyclic(&r, &[x, Poly::var(&r, 2)]).unwrap();
        assert!(is_isomorphic(&m, &other, 4, &mut rng).is_no());
    }
}
