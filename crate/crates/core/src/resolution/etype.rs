use rand::Rng;

use super::{minimal_free_resolution, FreeResolution};
use crate::error::{Error, Result};
use crate::fmodule::PresentedModule;
use crate::gbasis::ImageSolver;
use crate::hilbert::{Cohomology, Laurent};
use crate::liaison::{auto_link, link_back, LinkStep};
use crate::matrix::Matrix;

/// `0 -> E -> F_{c-1} -> ... -> F_0 -> M -> 0`.
#[derive(Clone, Debug)]
pub struct ETypeRes {
    pub codim: usize,
    /// Generator degrees of `F_0, ..., F_{c-1}`.
    pub free: Vec<Vec<i64>>,
    /// `F_c -> F_{c-1}`, whose image is `E`.
    pub e_map: Matrix,
    /// The tail `E = coker(F_{c+1} -> F_c)`.
    pub tail: PresentedModule,
}

/// `0 -> G_c -> ... -> G_2 -> Q -> G_0 -> M -> 0` with a band of vanishing cohomology on `Q`.
#[derive(Clone, Debug)]
pub struct QTypeRes {
    pub codim: usize,
    pub g0: Vec<i64>,
    pub q: PresentedModule,
    /// `Q -> G_0` on generators.
    pub q_map: Matrix,
    /// Generator degrees of `G_2, ..., G_c`.
    pub tail: Vec<Vec<i64>>,
}

fn free_series(degs: &[i64]) -> Laurent {
    degs.iter().fold(Laurent::zero(), |acc, &d| acc.add(&Laurent::one().shift(d)))
}

impl ETypeRes {
    /// Alternating sum of Hilbert series equals that of `M`.
    pub fn euler_ok(&self, m: &PresentedModule) -> bool {
        let mut acc = Laurent::zero();
        for (i, f) in self.free.iter().enumerate() {
            let s = free_series(f);
            acc = if i % 2 == 0 { acc.add(&s) } else { acc.sub(&s) };
        }
        let e = self.tail.hilbert().numerator();
        acc = if self.codim % 2 == 0 { acc.add(e) } else { acc.sub(e) };
        &acc == m.hilbert().numerator()
    }
}

impl QTypeRes {
    pub fn euler_ok(&self, m: &PresentedModule) -> bool {
        let mut acc = free_series(&self.g0).sub(self.q.hilbert().numerator());
        for (k, g) in self.tail.iter().enumerate() {
            let s = free_series(g);
            // G_{k+2}
            acc = if k % 2 == 0 { acc.add(&s) } else { acc.sub(&s) };
        }
        &acc == m.hilbert().numerator()
    }

    /// `H^i_m(Q) = 0` for `n + 2 - c <= i <= n`.
    pub fn band_vanishes(&self) -> bool {
        let nv = self.q.ring().nvars();
        let coh = Cohomology::new(&self.q);
        (nv + 1 - self.codim..nv).all(|i| coh.local_vanishes(i))
    }

    /// `dim [H^i_m(Q)]_j = dim [H^{i-1}_m(M)]_j` for `1 <= i <= n + 1 - c` on the window.
    pub fn cohomology_matches(&self, m: &PresentedModule, window: (i64, i64)) -> bool {
        let nv = self.q.ring().nvars();
        let (cq, cm) = (Cohomology::new(&self.q), Cohomology::new(m));
        (1..=nv - self.codim)
            .all(|i| (window.0..=window.1).all(|j| cq.local_hf(i, j) == cm.local_hf(i - 1, j)))
    }
}

fn e_type_from(res: &FreeResolution, c: usize) -> ETypeRes {
    let ring = res.ring();
    let tail = if res.length() > c {
        PresentedModule::new(res.differential(c + 1).clone()).expect("homogeneous differential")
    } else {
        PresentedModule::free(ring, res.degrees(c))
    };
    ETypeRes {
        codim: c,
        free: (0..c).map(|i| res.degrees(i)).collect(),
        e_map: res.differential(c).clone(),
        tail,
    }
}

/// Truncation of the minimal free resolution at the codimension.
pub fn e_type(m: &PresentedModule) -> Result<ETypeRes> {
    let d = m.hilbert().dim().ok_or(Error::ZeroModule)?;
    let c = m.ring().nvars() - d;
    if c == 0 {
        return Err(Error::Precondition("E-type resolutions need positive codimension".into()));
    }
    Ok(e_type_from(&minimal_free_resolution(m), c))
}

/// Resolutions of the linked module read off the mapping cone of a link.
#[derive(Clone, Debug)]
pub struct Exchanged {
    pub q_type: QTypeRes,
    pub e_type: ETypeRes,
}

fn remove_multiset(from: &[i64], take: &[i64]) -> Option<Vec<i64>> {
    let mut out = from.to_vec();
    for d in take {
        let k = out.iter().position(|x| x == d)?;
        out.remove(k);
    }
    Some(out)
}

/// Q-type resolution of `N` from the E-type resolution of `M` used in `step`.
pub fn exchange(step: &LinkStep) -> Result<Exchanged> {
    let n = &step.result;
    let c = step.cert.codim;
    if c == 0 {
        return Err(Error::Precondition("exchange needs positive codimension".into()));
    }
    let e_n = e_type(n)?;
    if c == 1 {
        // in codimension one both notions agree
        let q_type = QTypeRes {
            codim: 1,
            g0: e_n.free[0].clone(),
            q: e_n.tail.clone(),
            q_map: e_n.e_map.clone(),
            tail: Vec::new(),
        };
        return Ok(Exchanged { q_type, e_type: e_n });
    }
    let ring = n.ring();
    let j = step.cert.ext_twist;
    let d_res = &step.cert.resolution;
    let f_res = &step.source_resolution;
    // E^* as the module generated by the cycle columns inside F_c^*
    let z = &step.cycles;
    let rel = ImageSolver::new(z)?.kernel_minimal();
    let e_dual = PresentedModule::new(rel.with_degrees(z.col_deg().to_vec(), rel.col_deg().to_vec()))?
        .twist(j);
    let d1 = d_res.degrees(1);
    let q = PresentedModule::free(ring, d1).direct_sum(&e_dual)?;
    let q_map = step.cert.module.presentation().hstack(&step.psi)?;
    let shifted_dual = |k: usize| -> Vec<i64> { f_res.degrees(k).iter().map(|d| -d - j).collect() };
    let mut tail = Vec::new();
    for i in 2..=c {
        let mut g = d_res.degrees(i);
        if i == c {
            g = remove_multiset(&g, &shifted_dual(0))
                .ok_or_else(|| Error::Consistency("F_0^* does not split off D_c".into()))?;
        }
        g.extend(shifted_dual(c - i + 1));
        tail.push(g);
    }
    let q_type = QTypeRes {
        codim: c,
        g0: d_res.degrees(0),
        q,
        q_map,
        tail,
    };
    if !q_type.euler_ok(n) {
        return Err(Error::Consistency("exchanged Q-type resolution has the wrong Hilbert series".into()));
    }
    Ok(Exchanged { q_type, e_type: e_n })
}

/// Q-type resolution of `M` by linking twice and exchanging on the way back.
///
/// The result resolves the module `M'` obtained after the double link, which is
/// isomorphic to `M` for unmixed `M`; it is returned alongside.
pub fn q_type<R: Rng + ?Sized>(m: &PresentedModule, rng: &mut R) -> Result<(QTypeRes, PresentedModule)> {
    let d = m.hilbert().dim().ok_or(Error::ZeroModule)?;
    let c = m.ring().nvars() - d;
    if c == 0 {
        return Err(Error::Precondition("Q-type resolutions need positive codimension".into()));
    }
    if c == 1 {
        let e = e_type(m)?;
        let q = QTypeRes {
            codim: 1,
            g0: e.free[0].clone(),
            q: e.tail.clone(),
            q_map: e.e_map.clone(),
            tail: Vec::new(),
        };
        return Ok((q, m.clone()));
    }
    let first = auto_link(m, rng)?;
    let second = link_back(&first)?;
    let ex = exchange(&second)?;
    Ok((ex.q_type, second.result))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Poly, Ring};

    #[test]
    fn koszul_tail() {
        let r = Ring::standard(32003, 3).unwrap();
        let m = PresentedModule::cyclic(&r, &[Poly::var(&r, 0), Poly::var(&r, 1)]).unwrap();
        let e = e_type(&m).unwrap();
        assert_eq!(e.codim, 2);
        assert!(e.tail.is_free());
        assert_eq!(e.tail.gen_degrees(), &[2]);
        assert!(e.euler_ok(&m));
        assert!(e_type(&PresentedModule::free(&r, vec![0])).is_err());
    }
}
