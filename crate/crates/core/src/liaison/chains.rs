use rand::Rng;

use super::certify::{build_linking_module, certify_quasi_gorenstein, QGCert};
use super::formulas::even_shift;
use super::link::{link, LinkStep};
use crate::error::{Error, Result};
use crate::fmodule::{canonical_module, is_isomorphic, IsoResult, PresentedModule};
use crate::gbasis::{ideal_quotient, GBasis};
use crate::matrix::Matrix;
use crate::poly::{Poly, Ring};

const ISO_TRIES: usize = 8;

/// Sequence of direct links; `bridges[k]` identifies the result of step `k` with the
/// source of step `k + 1`.
#[derive(Clone, Debug, Default)]
pub struct LinkChain {
    pub steps: Vec<LinkStep>,
    pub bridges: Vec<IsoResult>,
}

impl LinkChain {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn is_even(&self) -> bool {
        self.steps.len() % 2 == 0
    }

    pub fn end(&self) -> Option<&PresentedModule> {
        self.steps.last().map(|s| &s.result)
    }

    /// No bridge was refuted.
    pub fn is_connected(&self) -> bool {
        self.bridges.len() + 1 == self.steps.len().max(1) && self.bridges.iter().all(|b| !b.is_no())
    }

    /// Sum of the pairwise shifts `r(C) - r(C') + a(C) - a(C')` over consecutive pairs.
    pub fn composite_shift(&self) -> i64 {
        self.steps.chunks(2).filter(|p| p.len() == 2).map(|p| even_shift(&p[0], &p[1])).sum()
    }

    fn push(&mut self, step: LinkStep, bridge: Option<IsoResult>) {
        if let Some(b) = bridge {
            self.bridges.push(b);
        }
        self.steps.push(step);
    }

    pub fn append(&mut self, other: LinkChain, bridge: IsoResult) {
        if other.is_empty() {
            return;
        }
        if !self.is_empty() {
            self.bridges.push(bridge);
        }
        self.steps.extend(other.steps);
        self.bridges.extend(other.bridges);
    }
}

fn same(m: &PresentedModule) -> IsoResult {
    IsoResult::Yes(Matrix::identity(m.ring(), m.gen_degrees().to_vec()))
}

/// Link `M` by an automatically constructed linking module.
pub fn auto_link<R: Rng + ?Sized>(m: &PresentedModule, rng: &mut R) -> Result<LinkStep> {
    let data = build_linking_module(m, None, rng)?;
    link(m, &data.cert, &data.phi)
}

/// `M ⊕ D -> N -> M` for a quasi-Gorenstein `D` with `dim D = dim M`.
pub fn split_summand_chain<R: Rng + ?Sized>(
    m: &PresentedModule,
    d: &PresentedModule,
    rng: &mut R,
) -> Result<LinkChain> {
    if d.is_zero() {
        return Ok(LinkChain::default());
    }
    if d.hilbert().dim() != m.hilbert().dim() {
        return Err(Error::Precondition("summand must have the dimension of the module".into()));
    }
    let dcert = certify_quasi_gorenstein(d, rng)?.cert()?;
    // C = F/cF ⊕ K_{F/cF}(s) with D ≅ K_D(s)
    let data = build_linking_module(m, Some(dcert.t), rng)?;
    let direct = link(m, &data.cert, &data.phi)?;
    let big_c = data.cert.module.direct_sum(&dcert.module)?;
    let big_cert = certify_quasi_gorenstein(&big_c, rng)?.cert()?;
    let md = m.direct_sum(&dcert.module)?;
    let ring = m.ring();
    let inner = data.phi.block_diag(&Matrix::identity(ring, dcert.module.gen_degrees().to_vec()));
    let phi = inner.mul(&big_cert.from_input)?;
    let first = link(&md, &big_cert, &phi)?;
    let bridge = is_isomorphic(&first.result, &direct.result, ISO_TRIES, rng);
    let second = link(&direct.result, &data.cert, &direct.projection())?;
    let mut chain = LinkChain::default();
    chain.push(first, None);
    chain.push(second, Some(bridge));
    Ok(chain)
}

/// Even chain from `M` to `M(j)`.
pub fn shift_link_chain<R: Rng + ?Sized>(m: &PresentedModule, j: i64, rng: &mut R) -> Result<LinkChain> {
    if j == 0 {
        return Ok(LinkChain::default());
    }
    let data = build_linking_module(m, None, rng)?;
    let first = link(m, &data.cert, &data.phi)?;
    let c = &data.cert;
    let t = c.t;
    // link N by C ⊕ K_C(i) with i - t = j; the result is M(j) ⊕ C
    let i = t + j;
    let kc = canonical_module(&c.module)?.twist(i);
    let c2 = c.module.direct_sum(&kc)?;
    let cert2 = certify_quasi_gorenstein(&c2, rng)?.cert()?;
    let n = first.result.clone();
    let mut proj = Matrix::zeros(m.ring(), n.gen_degrees().to_vec(), c2.gen_degrees().to_vec());
    for k in 0..n.num_gens() {
        proj.set(k, k, Poly::one(m.ring()));
    }
    let phi2 = proj.mul(&cert2.from_input)?;
    let second = link(&n, &cert2, &phi2)?;
    let target_sum = m.twist(j).direct_sum(&c.module)?;
    let bridge = is_isomorphic(&second.result, &target_sum, ISO_TRIES, rng);
    let tail = split_summand_chain(&m.twist(j), &c.module, rng)?;
    let mut chain = LinkChain::default();
    chain.push(first, None);
    chain.push(second, Some(same(&n)));
    chain.append(tail, bridge);
    Ok(chain)
}

/// Chain of direct links from a free module down to `R`: `R(j) ⊕ G -> G` by
/// `C = R(j) ⊕ G ⊕ G^*(2j)`, then an even shift chain `R(j) -> R`.
pub fn free_reduction_chain<R: Rng + ?Sized>(f: &PresentedModule, rng: &mut R) -> Result<LinkChain> {
    let ring = f.ring().clone();
    if !f.is_free() {
        return Err(Error::Precondition("expected a free module".into()));
    }
    let mut cur = crate::fmodule::minimalize(f).module;
    let mut chain = LinkChain::default();
    while cur.num_gens() > 1 {
        let degs = cur.gen_degrees().to_vec();
        let a = degs[0];
        let g = &degs[1..];
        // R(j) has generator degree a = -j, so G^*(-2j) has generator degrees 2a - g
        let mut cdeg = degs.clone();
        cdeg.extend(g.iter().map(|&b| 2 * a - b));
        let c = PresentedModule::free(&ring, cdeg.clone());
        let cert = certify_quasi_gorenstein(&c, rng)?.cert()?;
        let mut phi = Matrix::zeros(&ring, degs.clone(), cdeg);
        for k in 0..degs.len() {
            phi.set(k, k, Poly::one(&ring));
        }
        let phi = phi.mul(&cert.from_input)?;
        let step = link(&cur, &cert, &phi)?;
        let next = crate::fmodule::minimalize(&step.result).module;
        let bridge = same(&next);
        let first = chain.is_empty();
        chain.push(step, if first { None } else { Some(bridge) });
        cur = next;
    }
    // rank-one free links are self-links, so the twist is removed by an even chain
    let a = cur.gen_degrees()[0];
    let bridge = same(&cur);
    chain.append(shift_link_chain(&cur, a, rng)?, bridge);
    Ok(chain)
}

/// `c : I = J` and `c : J = I` for a Gorenstein ideal `c ⊆ I ∩ J`.
pub fn sm_link_ideals<R: Rng + ?Sized>(
    ring: &Ring,
    i: &[Poly],
    j: &[Poly],
    c: &[Poly],
    rng: &mut R,
) -> Result<bool> {
    let gi = GBasis::ideal(ring, i)?;
    let gj = GBasis::ideal(ring, j)?;
    if !c.iter().all(|g| gi.contains(std::slice::from_ref(g)) && gj.contains(std::slice::from_ref(g))) {
        return Ok(false);
    }
    let rc = PresentedModule::cyclic(ring, c)?;
    certify_quasi_gorenstein(&rc, rng)?.cert()?;
    let ci = ideal_quotient(ring, c, i)?;
    let cj = ideal_quotient(ring, c, j)?;
    Ok(ci == gj && cj == gi)
}

/// Linking certificate for an explicitly given module `C`.
pub fn certify_for_link<R: Rng + ?Sized>(c: &PresentedModule, rng: &mut R) -> Result<QGCert> {
    certify_quasi_gorenstein(c, rng)?.cert()
}
