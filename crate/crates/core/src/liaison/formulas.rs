use rand::Rng;
use serde::{Deserialize, Serialize};

use super::link::{joint_window, link_back, LinkStep};
use crate::error::Result;
use crate::fmodule::{is_isomorphic, minimalize, IsoResult, PresentedModule};
use crate::hilbert::Cohomology;
use crate::resolution::minimal_free_resolution;

/// Outcome of the Hilbert identities along one link.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkFormulaReport {
    pub deg_m: i64,
    pub deg_n: i64,
    pub deg_c: i64,
    pub degree_ok: bool,
    /// `None` when `dim M < 2`.
    pub h1_ok: Option<bool>,
    /// Hilbert polynomial identity, `None` unless `M` is locally Cohen-Macaulay.
    pub poly_ok: Option<bool>,
    /// Hilbert function identity, `None` unless `M` is Cohen-Macaulay.
    pub function_ok: Option<bool>,
    pub dims_ok: bool,
    pub result_unmixed: bool,
    pub s: i64,
    pub window: (i64, i64),
}

impl LinkFormulaReport {
    pub fn all_ok(&self) -> bool {
        self.degree_ok
            && self.dims_ok
            && self.result_unmixed
            && self.h1_ok != Some(false)
            && self.poly_ok != Some(false)
            && self.function_ok != Some(false)
    }
}

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Whether every `H^i_m(M)` with `i < dim M` has finite length (or vanishes).
pub fn is_locally_cm(coh: &Cohomology) -> bool {
    let Some(d) = coh.module().hilbert().dim() else {
        return true;
    };
    let nv = coh.module().ring().nvars();
    (0..d).all(|i| coh.ext(nv - i).hilbert().dim().map_or(true, |e| e == 0))
}

/// Degree, `h_1` and Hilbert function identities for one link.
pub fn verify_link_formulas(step: &LinkStep) -> Result<LinkFormulaReport> {
    let m = &step.source;
    let n = &step.result;
    let c = &step.cert.module;
    let (hm, hn, hc) = (m.hilbert(), n.hilbert(), c.hilbert());
    let d = hm.dim().unwrap_or(0) as i64;
    let s = step.cert.s();
    let window = {
        let (lo, hi) = joint_window(&[hm, hn, hc]);
        // the reflected arguments s - j must also be covered
        (lo.min(s - hi), hi.max(s - lo))
    };
    let degree_ok = hn.degree() == hc.degree() - hm.degree();
    let h1_ok = if d >= 2 {
        let lhs = 2 * hn.h1().unwrap_or(0);
        let rhs = (s - d + 2) * (hm.degree() - hn.degree()) + 2 * hm.h1().unwrap_or(0);
        Some(lhs == rhs)
    } else {
        None
    };
    let coh = Cohomology::new(m);
    let lcm = is_locally_cm(&coh);
    let cm = coh.is_cohen_macaulay();
    let js = window.0..=window.1;
    let poly_ok = lcm.then(|| {
        js.clone()
            .all(|j| hn.hilbert_poly(j) == hc.hilbert_poly(j) + sign(d) * hm.hilbert_poly(s - j))
    });
    let function_ok = cm.then(|| {
        js.clone().all(|j| {
            hn.hilbert_function(j)
                == hc.hilbert_function(j)
                    + sign(d - 1) * (hm.hilbert_function(s - j) - hm.hilbert_poly(s - j))
        })
    });
    let dims_ok = hm.dim() == hn.dim() && hn.dim() == hc.dim();
    let result_unmixed = Cohomology::new(n).is_unmixed()?;
    Ok(LinkFormulaReport {
        deg_m: hm.degree(),
        deg_n: hn.degree(),
        deg_c: hc.degree(),
        degree_ok,
        h1_ok,
        poly_ok,
        function_ok,
        dims_ok,
        result_unmixed,
        s,
        window,
    })
}

/// `h_{M'}(j) = h_M(j + s) + h_{C'}(j) - h_C(j + s)` for consecutive links `M -> N -> M'`.
pub fn even_hilbert_identity(first: &LinkStep, second: &LinkStep) -> bool {
    let (c, c2) = (first.cert.module.hilbert(), second.cert.module.hilbert());
    let s = c.r().unwrap_or(0) - c2.r().unwrap_or(0) + c.a().unwrap_or(0) - c2.a().unwrap_or(0);
    let m = first.source.hilbert();
    let m2 = second.result.hilbert();
    let (lo, hi) = joint_window(&[m, m2, c, c2]);
    (lo - s.abs()..=hi + s.abs()).all(|j| {
        m2.hilbert_function(j)
            == m.hilbert_function(j + s) + c2.hilbert_function(j) - c.hilbert_function(j + s)
    })
}

/// Composite shift of two consecutive links: `r(C) - r(C') + a(C) - a(C')`.
pub fn even_shift(first: &LinkStep, second: &LinkStep) -> i64 {
    let (c, c2) = (first.cert.module.hilbert(), second.cert.module.hilbert());
    c.r().unwrap_or(0) - c2.r().unwrap_or(0) + c.a().unwrap_or(0) - c2.a().unwrap_or(0)
}

/// `dim [H^i_m(M')]_j = dim [H^i_m(M)]_{j+s}` for `0 <= i <= n - c`, `j` in the window.
pub fn cohomology_even_check(m: &PresentedModule, m2: &PresentedModule, s: i64, window: (i64, i64)) -> bool {
    let (a, b) = (Cohomology::new(m), Cohomology::new(m2));
    let nv = m.ring().nvars();
    let Some(d) = m.hilbert().dim() else { return m2.is_zero() };
    let c = nv - d;
    (0..nv - c).all(|i| (window.0..=window.1).all(|j| b.local_hf(i, j) == a.local_hf(i, j + s)))
}

/// `dim [H^i_m(M)]_j = dim [H^{n+1-c-i}_m(N)]_{-j-s}` for `1 <= i <= n - c`.
pub fn cohomology_odd_check(m: &PresentedModule, n: &PresentedModule, s: i64, window: (i64, i64)) -> bool {
    let (a, b) = (Cohomology::new(m), Cohomology::new(n));
    let nv = m.ring().nvars();
    let Some(d) = m.hilbert().dim() else { return n.is_zero() };
    let c = nv - d;
    (1..nv - c).all(|i| {
        (window.0..=window.1).all(|j| a.local_hf(i, j) == b.local_hf(nv - c - i, -j - s))
    })
}

/// Result of linking twice by the same module.
#[derive(Clone, Debug)]
pub struct DoubleLinkReport {
    pub first: LinkStep,
    pub second: LinkStep,
    pub hilbert_ok: bool,
    pub betti_ok: bool,
    pub iso: IsoResult,
    pub even_identity_ok: bool,
}

impl DoubleLinkReport {
    /// Invariants agree and no isomorphism was refuted.
    pub fn consistent(&self) -> bool {
        self.hilbert_ok && self.betti_ok && self.even_identity_ok && !self.iso.is_no()
    }
}

pub fn double_link_check<R: Rng + ?Sized>(first: LinkStep, rng: &mut R) -> Result<DoubleLinkReport> {
    let second = link_back(&first)?;
    let m = &first.source;
    let back = &second.result;
    let (lo, hi) = joint_window(&[m.hilbert(), back.hilbert()]);
    let hilbert_ok = (lo..=hi).all(|j| m.hilbert_function(j) == back.hilbert_function(j));
    let betti_ok = minimal_free_resolution(m).betti()
        == minimal_free_resolution(&minimalize(back).module).betti();
    let iso = is_isomorphic(back, m, 8, rng);
    let even_identity_ok = even_hilbert_identity(&first, &second);
    Ok(DoubleLinkReport {
        first,
        second,
        hilbert_ok,
        betti_ok,
        iso,
        even_identity_ok,
    })
}
