//! Minimal free resolutions and the E-type / Q-type machinery.

mod etype;
mod stable;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fmodule::{minimalize, PresentedModule};
use crate::gbasis::ImageSolver;
use crate::matrix::Matrix;
use crate::poly::Ring;

pub use etype::{e_type, exchange, q_type, ETypeRes, Exchanged, QTypeRes};
pub use stable::{
    phi_psi, stable_equiv, strip_free_summands, PhiPsi, StableClassRep, StableSummary, StableVerdict,
};

/// Betti table: homological degree -> internal degree -> rank.
pub type BettiTable = BTreeMap<usize, BTreeMap<i64, usize>>;

/// `0 -> F_len -> ... -> F_1 -> F_0`, with `maps[i]` the differential `F_{i+1} -> F_i`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    ring: Ring,
    maps: Vec<Matrix>,
    f0: Vec<i64>,
    minimal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiSummary {
    pub table: BettiTable,
    pub length: usize,
}

impl FreeResolution {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Projective dimension (number of nonzero differentials).
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// Differential `d_i: F_i -> F_{i-1}` for `1 <= i <= length`.
    pub fn differential(&self, i: usize) -> &Matrix {
        &self.maps[i - 1]
    }

    pub fn differentials(&self) -> &[Matrix] {
        &self.maps
    }

    /// Generator degrees of `F_i` (empty beyond the length).
    pub fn degrees(&self, i: usize) -> Vec<i64> {
        if i == 0 {
            self.f0.clone()
        } else if i <= self.maps.len() {
            self.maps[i - 1].col_deg().to_vec()
        } else {
            Vec::new()
        }
    }

    pub fn rank(&self, i: usize) -> usize {
        self.degrees(i).len()
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn betti(&self) -> BettiTable {
        let mut t = BettiTable::new();
        for i in 0..=self.length() {
            let row = t.entry(i).or_default();
            for d in self.degrees(i) {
                *row.entry(d).or_default() += 1;
            }
        }
        t
    }

    pub fn summary(&self) -> BettiSummary {
        BettiSummary {
            table: self.betti(),
            length: self.length(),
        }
    }

    /// `d_i ∘ d_{i+1} = 0` for all `i`.
    pub fn is_complex(&self) -> bool {
        self.maps
            .windows(2)
            .all(|w| w[0].mul(&w[1]).map(|m| m.is_zero()).unwrap_or(false))
    }

    /// Module resolved, as `coker d_1`.
    pub fn module(&self) -> PresentedModule {
        match self.maps.first() {
            Some(d) => PresentedModule::from_checked(d.clone(), self.minimal),
            None => PresentedModule::free(&self.ring, self.f0.clone()),
        }
    }

    /// Exactness at `F_i` (i >= 1) checked on graded pieces up to degree `top`.
    pub fn is_exact_up_to(&self, top: i64) -> bool {
        for i in 1..self.length() {
            let kernel = ImageSolver::new(&self.maps[i - 1]).map(|s| s.kernel());
            let Ok(kernel) = kernel else { return false };
            let image = &self.maps[i];
            let solver = ImageSolver::new(image).expect("homogeneous");
            for g in kernel.generators().iter() {
                let deg = crate::gbasis::FreeVector::new(g.clone(), self.degrees(i)).degree();
                if deg.map(|d| d <= top).unwrap_or(true) && !solver.image_contains(g) {
                    return false;
                }
            }
        }
        // top map injective
        if let Some(last) = self.maps.last() {
            if let Ok(s) = ImageSolver::new(last) {
                if !s.kernel().is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// Wrap explicit differentials.
    pub fn from_maps(ring: &Ring, f0: Vec<i64>, maps: Vec<Matrix>) -> Result<FreeResolution> {
        let mut prev = f0.clone();
        for (k, m) in maps.iter().enumerate() {
            if m.row_deg() != prev.as_slice() {
                return Err(Error::Shape(format!("differential {} has wrong target", k + 1)));
            }
            prev = m.col_deg().to_vec();
        }
        let minimal = maps.iter().all(|m| !m.has_unit_entry());
        Ok(FreeResolution {
            ring: ring.clone(),
            maps,
            f0,
            minimal,
        })
    }
}

/// Minimal free resolution of a minimal presentation of `M`.
pub fn minimal_free_resolution(m: &PresentedModule) -> FreeResolution {
    let mm = if m.is_minimal() {
        m.clone()
    } else {
        minimalize(m).module
    };
    resolve_minimal(&mm)
}

/// Resolve a module whose presentation is already minimal.
pub(crate) fn resolve_minimal(m: &PresentedModule) -> FreeResolution {
    let ring = m.ring().clone();
    let a = m.presentation().clone();
    let f0 = a.row_deg().to_vec();
    let mut maps = Vec::new();
    if a.ncols() > 0 {
        maps.push(a);
        let bound = ring.nvars() + 1;
        while maps.len() <= bound {
            let last = maps.last().unwrap();
            let k = ImageSolver::new(last)
                .expect("differentials are homogeneous")
                .kernel_minimal();
            if k.ncols() == 0 {
                break;
            }
            maps.push(k);
        }
    }
    FreeResolution {
        ring,
        maps,
        f0,
        minimal: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, Poly};

    #[test]
    fn koszul() {
        let r = Ring::standard(32003, 3).unwrap();
        let m = PresentedModule::cyclic(&r, &[Poly::var(&r, 0), Poly::var(&r, 1)]).unwrap();
        let res = minimal_free_resolution(&m);
        assert_eq!(res.length(), 2);
        assert_eq!(res.degrees(1), vec![1, 1]);
        assert_eq!(res.degrees(2), vec![2]);
        assert!(res.is_complex());
        assert!(res.is_exact_up_to(6));
    }

    #[test]
    fn twisted_cubic() {
        let r = Ring::standard(32003, 4).unwrap();
        let p = |s: &str| parse_poly(s, &r).unwrap();
        let m = PresentedModule::cyclic(&r, &[p("x0*x2 - x1^2"), p("x1*x3 - x2^2"), p("x0*x3 - x1*x2")])
            .unwrap();
        let res = minimal_free_resolution(&m);
        assert_eq!(res.degrees(0), vec![0]);
        assert_eq!(res.degrees(1), vec![2, 2, 2]);
        assert_eq!(res.degrees(2), vec![3, 3]);
        assert_eq!(res.length(), 2);
    }

    #[test]
    fn free_module() {
        let r = Ring::standard(32003, 2).unwrap();
        let res = minimal_free_resolution(&PresentedModule::free(&r, vec![0, 1]));
        assert_eq!(res.length(), 0);
        assert_eq!(res.rank(0), 2);
    }
}
