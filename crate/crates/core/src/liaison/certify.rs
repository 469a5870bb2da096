use rand::Rng;

use crate::error::{Error, Result};
use crate::fmodule::{canonical_module, is_isomorphic, minimalize, IsoResult, PresentedModule};
use crate::gbasis::annihilator;
use crate::matrix::Matrix;
use crate::poly::{Poly, Ring};
use crate::resolution::{minimal_free_resolution, FreeResolution};

const ISO_TRIES: usize = 8;
const CI_RETRIES: usize = 64;

/// Witness that `C` is quasi-Gorenstein: perfect, with `Ext^c(C, R)(j) ≅ C`.
#[derive(Clone, Debug)]
pub struct QGCert {
    /// Minimal presentation of `C`; all maps below use its generators.
    pub module: PresentedModule,
    /// Input generators × minimal generators.
    pub from_input: Matrix,
    pub resolution: FreeResolution,
    pub codim: usize,
    /// `j` with `Ext^c(C, R)(j) ≅ C`.
    pub ext_twist: i64,
    /// `t` with `C ≅ K_C(t)`.
    pub t: i64,
    /// Isomorphism `Ext^c(C, R)(j) -> C` on generators (dual of the last free module).
    pub alpha: Matrix,
}

impl QGCert {
    /// `Ext^c(C, R)` presented as the cokernel of the dual of the last differential.
    pub fn ext_top(&self) -> PresentedModule {
        ext_top(&self.resolution, self.codim)
    }

    /// `r(C) + a(C) - 1`.
    pub fn s(&self) -> i64 {
        let h = self.module.hilbert();
        h.r().unwrap_or(0) + h.a().unwrap_or(0) - 1
    }

    /// Betti table symmetry and `t = 1 - r(C) - a(C)`; recomputed from the stored data.
    pub fn verify(&self) -> bool {
        let h = self.module.hilbert();
        let (Some(r), Some(a)) = (h.r(), h.a()) else {
            return false;
        };
        self.t == 1 - r - a
            && self.resolution.length() == self.codim
            && betti_symmetric(&self.resolution, self.codim)
            && {
                let e = self.ext_top().twist(self.ext_twist);
                crate::fmodule::is_surjective_on(&self.alpha, &self.module)
                    && e.hilbert().numerator() == h.numerator()
            }
    }
}

#[derive(Clone, Debug)]
pub enum QGVerdict {
    Yes(Box<QGCert>),
    No(String),
    Unknown(String),
}

impl QGVerdict {
    pub fn cert(self) -> Result<QGCert> {
        match self {
            QGVerdict::Yes(c) => Ok(*c),
            QGVerdict::No(why) => Err(Error::NotQuasiGorenstein(why)),
            QGVerdict::Unknown(why) => Err(Error::Inconclusive(why)),
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, QGVerdict::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, QGVerdict::No(_))
    }
}

pub(crate) fn ext_top(res: &FreeResolution, c: usize) -> PresentedModule {
    let ring = res.ring();
    if c == 0 {
        PresentedModule::free(ring, res.degrees(0).iter().map(|d| -d).collect())
    } else {
        PresentedModule::new(res.differential(c).transpose()).expect("dual of a homogeneous map")
    }
}

fn betti_symmetric(res: &FreeResolution, c: usize) -> bool {
    let sorted = |mut v: Vec<i64>| {
        v.sort_unstable();
        v
    };
    let d0 = res.degrees(0);
    let dc = res.degrees(c);
    let (Some(lo), Some(hi)) = (d0.iter().min(), dc.iter().max()) else {
        return false;
    };
    let u = lo + hi;
    (0..=c).all(|i| {
        sorted(res.degrees(i)) == sorted(res.degrees(c - i).iter().map(|d| u - d).collect())
    })
}

/// Decide whether `C` is quasi-Gorenstein, with an explicit isomorphism on success.
pub fn certify_quasi_gorenstein<R: Rng + ?Sized>(c: &PresentedModule, rng: &mut R) -> Result<QGVerdict> {
    if c.is_zero() {
        return Err(Error::ZeroModule);
    }
    let min = minimalize(c);
    let module = min.module.clone();
    let nv = module.ring().nvars();
    let dim = module.hilbert().dim().ok_or(Error::ZeroModule)?;
    let codim = nv - dim;
    let resolution = minimal_free_resolution(&module);
    if resolution.length() != codim {
        return Ok(QGVerdict::No(format!(
            "not perfect: projective dimension {} but codimension {codim}",
            resolution.length()
        )));
    }
    if !betti_symmetric(&resolution, codim) {
        return Ok(QGVerdict::No("minimal free resolution is not self-dual".into()));
    }
    let ext = ext_top(&resolution, codim);
    let (Some(ae), Some(ac)) = (ext.hilbert().a(), module.hilbert().a()) else {
        return Err(Error::Consistency("canonical module vanishes".into()));
    };
    let j = ae - ac;
    let twisted = ext.twist(j);
    let alpha = match is_isomorphic(&twisted, &module, ISO_TRIES, rng) {
        IsoResult::Yes(a) => a,
        IsoResult::No(why) => return Ok(QGVerdict::No(format!("not isomorphic to a twist of its canonical module: {why}"))),
        IsoResult::Unknown(why) => return Ok(QGVerdict::Unknown(why)),
    };
    let t = nv as i64 + j;
    let h = module.hilbert();
    let expected = 1 - h.r().unwrap_or(0) - h.a().unwrap_or(0);
    if t != expected {
        return Err(Error::Consistency(format!(
            "duality twist {t} differs from 1 - r - a = {expected}"
        )));
    }
    Ok(QGVerdict::Yes(Box::new(QGCert {
        module,
        from_input: min.to_old(),
        resolution,
        codim,
        ext_twist: j,
        t,
        alpha,
    })))
}

/// Linking module together with an epimorphism onto `M`.
#[derive(Clone, Debug)]
pub struct LinkingData {
    pub cert: QGCert,
    /// Generators of `M` × generators of `cert.module`.
    pub phi: Matrix,
    /// Complete intersection used (empty for maximal modules).
    pub ci: Vec<Poly>,
}

/// Homogeneous regular sequence of length `c` inside the ideal generated by `gens`.
pub fn regular_sequence_in<R: Rng + ?Sized>(
    ring: &Ring,
    gens: &[Poly],
    c: usize,
    rng: &mut R,
) -> Result<Vec<Poly>> {
    let nv = ring.nvars();
    let gens: Vec<&Poly> = gens.iter().filter(|g| !g.is_zero()).collect();
    let mut degs: Vec<i64> = gens.iter().map(|g| g.degree().unwrap() as i64).collect();
    degs.sort_unstable();
    degs.dedup();
    if let Some(&top) = degs.last() {
        degs.push(top + 1);
        degs.push(top + 2);
    }
    let mut seq: Vec<Poly> = Vec::new();
    for k in 0..c {
        let mut found = None;
        'degrees: for &d in &degs {
            for _ in 0..CI_RETRIES {
                let mut f = Poly::zero(ring);
                for g in &gens {
                    let e = d - g.degree().unwrap() as i64;
                    if e >= 0 {
                        f = f.add(&Poly::random_homogeneous(ring, e, rng).mul(g));
                    }
                }
                if f.is_zero() {
                    continue;
                }
                let mut trial = seq.clone();
                trial.push(f.clone());
                let q = PresentedModule::cyclic(ring, &trial)?;
                if q.hilbert().dim() == Some(nv - k - 1) {
                    found = Some(f);
                    break 'degrees;
                }
            }
        }
        match found {
            Some(f) => seq.push(f),
            None => return Err(Error::NoRegularSequence(degs)),
        }
    }
    Ok(seq)
}

/// `C = F/cF ⊕ K_{F/cF}(s)` with `c` a complete intersection in `Ann M`, or `F ⊕ F^*` for
/// maximal `M`. The canonical summand is dropped when `F/cF` is cyclic and not isomorphic to `M`.
pub fn build_linking_module<R: Rng + ?Sized>(
    m: &PresentedModule,
    k_twist: Option<i64>,
    rng: &mut R,
) -> Result<LinkingData> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let ring = m.ring().clone();
    let nv = ring.nvars();
    let min = minimalize(m);
    let mm = &min.module;
    let f = mm.gen_degrees().to_vec();
    let codim = nv - mm.hilbert().dim().ok_or(Error::ZeroModule)?;
    let (c0, ci) = if codim == 0 {
        (PresentedModule::free(&ring, f.clone()), Vec::new())
    } else {
        let ann = annihilator(mm.presentation())?;
        let gens: Vec<Poly> = ann.minimal_generators().iter().map(|g| g[0].clone()).collect();
        let ci = regular_sequence_in(&ring, &gens, codim, rng)?;
        let parts: Vec<PresentedModule> = f
            .iter()
            .map(|&a| PresentedModule::cyclic(&ring, &ci).map(|q| q.twist(-a)))
            .collect::<Result<_>>()?;
        (PresentedModule::direct_sum_all(&parts)?, ci)
    };
    let needs_k = k_twist.is_some()
        || codim == 0
        || f.len() > 1
        || c0.hilbert().numerator() == mm.hilbert().numerator();
    let c = if needs_k {
        let k = if codim == 0 {
            // K_F = F^*(-n-1); the default twist gives F ⊕ F^*
            let s = k_twist.unwrap_or(nv as i64);
            PresentedModule::free(&ring, f.iter().map(|d| -d).collect()).twist(s - nv as i64)
        } else {
            canonical_module(&c0)?.twist(k_twist.unwrap_or(0))
        };
        c0.direct_sum(&k)?
    } else {
        c0
    };
    // identity on the F/cF summand, zero on the canonical summand
    let mut phi = Matrix::zeros(&ring, f.clone(), c.gen_degrees().to_vec());
    for i in 0..f.len() {
        phi.set(i, i, Poly::one(&ring));
    }
    let cert = certify_quasi_gorenstein(&c, rng)?.cert()?;
    let phi = min
        .to_old()
        .mul(&phi)?
        .mul(&cert.from_input)?
        .with_degrees(m.gen_degrees().to_vec(), cert.module.gen_degrees().to_vec());
    Ok(LinkingData { cert, phi, ci })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn complete_intersection_is_quasi_gorenstein() {
        let r = Ring::standard(32003, 3).unwrap();
        let p = |s: &str| parse_poly(s, &r).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = PresentedModule::cyclic(&r, &[p("x0^2"), p("x1*x2 + x0*x1")]).unwrap();
        let cert = certify_quasi_gorenstein(&c, &mut rng).unwrap().cert().unwrap();
        assert_eq!(cert.codim, 2);
        assert!(cert.verify());
        let double = c.direct_sum(&c).unwrap().direct_sum(&c.twist(1)).unwrap();
        assert!(certify_quasi_gorenstein(&double, &mut rng).unwrap().is_no());
        let embedded = PresentedModule::cyclic(&r, &[p("x0^2"), p("x0*x1")]).unwrap();
        assert!(certify_quasi_gorenstein(&embedded, &mut rng).unwrap().is_no());
    }

    #[test]
    fn module_plus_canonical_is_quasi_gorenstein() {
        let r = Ring::standard(32003, 3).unwrap();
        let p = |s: &str| parse_poly(s, &r).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        // summands with different canonical twists: perfect, not quasi-Gorenstein
        let q = PresentedModule::cyclic(&r, &[p("x0"), p("x1^2")]).unwrap();
        let q2 = PresentedModule::cyclic(&r, &[p("x0"), p("x1^3")]).unwrap();
        let m = q.direct_sum(&q2).unwrap();
        assert!(certify_quasi_gorenstein(&m, &mut rng).unwrap().is_no());
        let c = m.direct_sum(&canonical_module(&m).unwrap()).unwrap();
        assert!(certify_quasi_gorenstein(&c, &mut rng).unwrap().is_yes());
    }

    #[test]
    fn linking_module_for_twisted_cubic() {
        let r = Ring::standard(32003, 4).unwrap();
        let p = |s: &str| parse_poly(s, &r).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = PresentedModule::cyclic(&r, &[p("x0*x2 - x1^2"), p("x1*x3 - x2^2"), p("x0*x3 - x1*x2")])
            .unwrap();
        let data = build_linking_module(&m, None, &mut rng).unwrap();
        assert_eq!(data.ci.len(), 2);
        assert_eq!(data.cert.module.hilbert().degree(), 4);
        assert_eq!(data.cert.module.num_gens(), 1);
    }
}
