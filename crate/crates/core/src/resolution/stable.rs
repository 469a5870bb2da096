use rand::Rng;
use serde::{Deserialize, Serialize};

use super::etype::{e_type, q_type};
use crate::error::Result;
use crate::fmodule::{hom_degree_zero, is_isomorphic, minimalize, IsoResult, PresentedModule};
use crate::matrix::Matrix;

const ISO_TRIES: usize = 8;

/// A module with every free direct summand split off.
#[derive(Clone, Debug)]
pub struct StableClassRep {
    pub core: PresentedModule,
    /// Generator degrees of the removed free summands.
    pub free_summands: Vec<i64>,
}

impl StableClassRep {
    /// `a(core)`, or `None` for a zero core.
    pub fn initial_degree(&self) -> Option<i64> {
        self.core.hilbert().a()
    }

    /// Core twisted so that its initial degree is zero.
    pub fn normalized(&self) -> PresentedModule {
        match self.initial_degree() {
            Some(a) => self.core.twist(a),
            None => self.core.clone(),
        }
    }
}

/// Index of a generator that spans a free summand `R(-a)`, if any.
fn free_summand_generator(m: &PresentedModule) -> Option<usize> {
    let ring = m.ring();
    let mut degs: Vec<i64> = m.gen_degrees().to_vec();
    degs.sort_unstable();
    degs.dedup();
    for a in degs {
        let target = PresentedModule::free(ring, vec![a]);
        let hom = hom_degree_zero(m, &target, 0);
        for psi in &hom.basis {
            for k in 0..m.num_gens() {
                // a unit value on a generator of degree a splits R(-a) off
                if m.gen_degrees()[k] == a && !psi.get(0, k).is_zero() {
                    return Some(k);
                }
            }
        }
    }
    None
}

/// Split off free summands one at a time until none are left.
pub fn strip_free_summands(m: &PresentedModule) -> StableClassRep {
    let mut cur = minimalize(m).module;
    let mut free_summands = Vec::new();
    while let Some(k) = free_summand_generator(&cur) {
        free_summands.push(cur.gen_degrees()[k]);
        let keep: Vec<usize> = (0..cur.num_gens()).filter(|&i| i != k).collect();
        let pres = cur.presentation().select_rows(&keep);
        cur = minimalize(&PresentedModule::new(pres).expect("row deletion keeps homogeneity")).module;
    }
    free_summands.sort_unstable();
    StableClassRep {
        core: cur,
        free_summands,
    }
}

#[derive(Clone, Debug)]
pub enum StableVerdict {
    /// `core(M) ≅ core(N)(shift)`.
    Equivalent { shift: i64, iso: Option<Matrix> },
    Distinct(String),
    Unknown(String),
}

impl StableVerdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, StableVerdict::Equivalent { .. })
    }

    pub fn is_distinct(&self) -> bool {
        matches!(self, StableVerdict::Distinct(_))
    }
}

/// Stable equivalence up to shift: equal cores after removing free summands.
pub fn stable_equiv<R: Rng + ?Sized>(m: &PresentedModule, n: &PresentedModule, rng: &mut R) -> StableVerdict {
    let (sm, sn) = (strip_free_summands(m), strip_free_summands(n));
    let (cm, cn) = (&sm.core, &sn.core);
    match (cm.is_zero(), cn.is_zero()) {
        (true, true) => return StableVerdict::Equivalent { shift: 0, iso: None },
        (true, false) | (false, true) => {
            return StableVerdict::Distinct("exactly one module is stably free".into());
        }
        _ => {}
    }
    let shift = cn.hilbert().a().unwrap_or(0) - cm.hilbert().a().unwrap_or(0);
    let cn_shifted = cn.twist(shift);
    if cm.hilbert().numerator() != cn_shifted.hilbert().numerator() {
        return StableVerdict::Distinct("cores have different Hilbert series at every shift".into());
    }
    match is_isomorphic(cm, &cn_shifted, ISO_TRIES, rng) {
        IsoResult::Yes(iso) => StableVerdict::Equivalent { shift, iso: Some(iso) },
        IsoResult::No(why) => StableVerdict::Distinct(why),
        IsoResult::Unknown(why) => StableVerdict::Unknown(why),
    }
}

/// Stable classes of the E-type tail and the Q-type module.
#[derive(Clone, Debug)]
pub struct PhiPsi {
    pub phi: StableClassRep,
    pub psi: StableClassRep,
}

pub fn phi_psi<R: Rng + ?Sized>(m: &PresentedModule, rng: &mut R) -> Result<PhiPsi> {
    let e = e_type(m)?;
    let (q, _) = q_type(m, rng)?;
    Ok(PhiPsi {
        phi: strip_free_summands(&e.tail),
        psi: strip_free_summands(&q.q),
    })
}

/// Serializable summary of a stable class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableSummary {
    pub stably_free: bool,
    pub core_generators: Vec<i64>,
    pub free_summands: Vec<i64>,
    pub core_numerator: Vec<(i64, i64)>,
}

impl StableClassRep {
    pub fn summary(&self) -> StableSummary {
        StableSummary {
            stably_free: self.core.is_zero(),
            core_generators: self.core.gen_degrees().to_vec(),
            free_summands: self.free_summands.clone(),
            core_numerator: self.core.hilbert().numerator().terms().collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Poly, Ring};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn strips_free_parts() {
        let r = Ring::standard(32003, 3).unwrap();
        let q = PresentedModule::cyclic(&r, &[Poly::var(&r, 0), Poly::var(&r, 1)]).unwrap();
        let m = q.direct_sum(&PresentedModule::free(&r, vec![1, 3])).unwrap();
        let s = strip_free_summands(&m);
        assert_eq!(s.free_summands, vec![1, 3]);
        assert_eq!(s.core.num_gens(), 1);
        let f = strip_free_summands(&PresentedModule::free(&r, vec![0, 2]));
        assert!(f.core.is_zero());
    }

    #[test]
    fn stable_classes() {
        let r = Ring::standard(32003, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let q = PresentedModule::cyclic(&r, &[Poly::var(&r, 0), Poly::var(&r, 1)]).unwrap();
        let m = q.direct_sum(&PresentedModule::free(&r, vec![0])).unwrap();
        let v = stable_equiv(&m, &q.twist(2), &mut rng);
        assert!(matches!(v, StableVerdict::Equivalent { shift: -2, .. }), "{v:?}");
        let other = PresentedModule::cyclic(&r, &[Poly::var(&r, 0)]).unwrap();
        assert!(stable_equiv(&q, &other, &mut rng).is_distinct());
        assert!(stable_equiv(&q, &PresentedModule::free(&r, vec![0]), &mut rng).is_distinct());
    }
}
