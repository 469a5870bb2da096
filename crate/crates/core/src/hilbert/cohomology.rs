use crate::error::{Error, Result};
use crate::fmodule::{ext_from_resolution, PresentedModule};
use crate::resolution::{minimal_free_resolution, FreeResolution};

/// All `Ext^k(M, R)` of a module, computed once from its minimal resolution.
#[derive(Clone, Debug)]
pub struct Cohomology {
    module: PresentedModule,
    resolution: FreeResolution,
    exts: Vec<PresentedModule>,
}

impl Cohomology {
    pub fn new(m: &PresentedModule) -> Cohomology {
        let resolution = minimal_free_resolution(m);
        let nv = m.ring().nvars();
        let exts = (0..=nv).map(|k| ext_from_resolution(&resolution, k)).collect();
        Cohomology {
            module: m.clone(),
            resolution,
            exts,
        }
    }

    pub fn module(&self) -> &PresentedModule {
        &self.module
    }

    pub fn resolution(&self) -> &FreeResolution {
        &self.resolution
    }

    pub fn ext(&self, k: usize) -> &PresentedModule {
        &self.exts[k]
    }

    /// `dim [H^i_m(M)]_j` by graded local duality.
    pub fn local_hf(&self, i: usize, j: i64) -> i64 {
        let nv = self.exts.len() - 1;
        if i > nv {
            return 0;
        }
        self.exts[nv - i].hilbert_function(-j - nv as i64)
    }

    /// Whether `H^i_m(M) = 0` in every degree.
    pub fn local_vanishes(&self, i: usize) -> bool {
        let nv = self.exts.len() - 1;
        i > nv || self.exts[nv - i].is_zero()
    }

    pub fn is_unmixed(&self) -> Result<bool> {
        let d = self.module.hilbert().dim().ok_or(Error::ZeroModule)?;
        let nv = self.exts.len() - 1;
        Ok((0..d).all(|i| match self.exts[nv - i].hilbert().dim() {
            None => true,
            Some(e) => e < i,
        }))
    }

    pub fn is_cohen_macaulay(&self) -> bool {
        match self.module.hilbert().dim() {
            None => true,
            Some(d) => (0..d).all(|i| self.local_vanishes(i)),
        }
    }

    pub fn riemann_roch(&self, j: i64) -> bool {
        let h = self.module.hilbert();
        let lhs = h.hilbert_function(j) - h.hilbert_poly(j);
        let nv = self.exts.len() - 1;
        let rhs: i64 = (0..=nv)
            .map(|i| if i % 2 == 0 { 1 } else { -1 } * self.local_hf(i, j))
            .sum();
        lhs == rhs
    }
}

pub fn local_cohomology_hf(m: &PresentedModule, i: usize, j: i64) -> i64 {
    Cohomology::new(m).local_hf(i, j)
}

/// No associated primes of lower dimension, tested on dimensions of `Ext` modules.
pub fn is_unmixed(m: &PresentedModule) -> Result<bool> {
    Cohomology::new(m).is_unmixed()
}

pub fn is_cohen_macaulay(m: &PresentedModule) -> bool {
    Cohomology::new(m).is_cohen_macaulay()
}

/// `h_M(j) - p_M(j) = sum (-1)^i dim [H^i_m(M)]_j`.
pub fn riemann_roch_check(m: &PresentedModule, j: i64) -> bool {
    Cohomology::new(m).riemann_roch(j)
}
