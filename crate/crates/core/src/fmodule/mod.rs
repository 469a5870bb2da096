//! Finitely presented graded modules.

mod hom;
mod homological;
mod minimal;

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::gbasis::GBasis;
use crate::hilbert::HilbertData;
use crate::matrix::Matrix;
use crate::poly::{Poly, Ring};

pub use hom::{
    hom_degree_zero, is_isomorphic, is_surjective_on, random_hom, HomSpace, IsoResult,
};
pub use homological::{
    auslander_dual, canonical_module, dual_module, ext_from_resolution, ext_module, Dualized,
};
pub use minimal::{minimalize, Minimalized};

#[derive(Default, Debug)]
struct Caches {
    gb: OnceLock<GBasis>,
    hilbert: OnceLock<HilbertData>,
}

/// `coker(A: F1 -> F0)` with `F0 = ⊕ R(-row_deg[i])`.
#[derive(Clone)]
pub struct PresentedModule {
    pres: Matrix,
    minimal: bool,
    caches: Arc<Caches>,
}

impl PartialEq for PresentedModule {
    fn eq(&self, other: &Self) -> bool {
        self.pres == other.pres
    }
}

impl PresentedModule {
    pub fn new(pres: Matrix) -> Result<PresentedModule> {
        pres.check_homogeneous()?;
        Ok(PresentedModule::from_checked(pres, false))
    }

    pub(crate) fn from_checked(pres: Matrix, minimal: bool) -> PresentedModule {
        PresentedModule {
            pres,
            minimal,
            caches: Arc::new(Caches::default()),
        }
    }

    /// Free module `⊕ R(-d)`.
    pub fn free(ring: &Ring, degs: Vec<i64>) -> PresentedModule {
        PresentedModule::from_checked(Matrix::zeros(ring, degs, vec![]), true)
    }

    pub fn zero(ring: &Ring) -> PresentedModule {
        PresentedModule::free(ring, vec![])
    }

    /// `R/I` for homogeneous generators of `I`.
    pub fn cyclic(ring: &Ring, ideal: &[Poly]) -> Result<PresentedModule> {
        let gens: Vec<Poly> = ideal.iter().filter(|g| !g.is_zero()).cloned().collect();
        let mut degs = Vec::new();
        for (k, g) in gens.iter().enumerate() {
            if !g.is_homogeneous() {
                return Err(Error::InhomogeneousGenerator(k));
            }
            degs.push(g.degree().unwrap() as i64);
        }
        PresentedModule::new(Matrix::from_rows(ring, vec![gens], vec![0], degs)?)
    }

    pub fn ring(&self) -> &Ring {
        self.pres.ring()
    }

    pub fn presentation(&self) -> &Matrix {
        &self.pres
    }

    pub fn gen_degrees(&self) -> &[i64] {
        self.pres.row_deg()
    }

    pub fn num_gens(&self) -> usize {
        self.pres.nrows()
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    /// Basis of the relation module `im A ⊂ F0`.
    pub fn relation_basis(&self) -> &GBasis {
        self.caches
            .gb
            .get_or_init(|| GBasis::of_image(&self.pres).expect("presentation is homogeneous"))
    }

    pub fn hilbert(&self) -> &HilbertData {
        self.caches
            .hilbert
            .get_or_init(|| HilbertData::from_basis(self.relation_basis()))
    }

    pub fn is_zero(&self) -> bool {
        self.num_gens() == 0 || self.relation_basis().is_everything()
    }

    /// Free if a minimal presentation has no relations.
    pub fn is_free(&self) -> bool {
        minimalize(self).module.pres.ncols() == 0
    }

    /// `M(j)`, so that `[M(j)]_i = [M]_{i+j}`.
    pub fn twist(&self, j: i64) -> PresentedModule {
        PresentedModule::from_checked(self.pres.twist(j), self.minimal)
    }

    pub fn direct_sum(&self, other: &PresentedModule) -> Result<PresentedModule> {
        if self.ring() != other.ring() {
            return Err(Error::RingMismatch);
        }
        Ok(PresentedModule::from_checked(
            self.pres.block_diag(&other.pres),
            self.minimal && other.minimal,
        ))
    }

    pub fn direct_sum_all(parts: &[PresentedModule]) -> Result<PresentedModule> {
        let mut it = parts.iter();
        let first = it
            .next()
            .ok_or_else(|| Error::Precondition("empty direct sum".into()))?;
        let mut acc = first.clone();
        for p in it {
            acc = acc.direct_sum(p)?;
        }
        Ok(acc)
    }

    /// Dimension of `[M]_j` over the field.
    pub fn hilbert_function(&self, j: i64) -> i64 {
        self.hilbert().hilbert_function(j)
    }

    /// Whether the vector lies in the relation module.
    pub fn is_relation(&self, v: &[Poly]) -> bool {
        self.relation_basis().contains(v)
    }
}

impl fmt::Debug for PresentedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "coker {:?}", self.pres)
    }
}

/// Homogeneous degree-zero map between presented modules, given on generators.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub source: PresentedModule,
    pub target: PresentedModule,
    /// Column `j` is the image of source generator `j` in target generators.
    pub matrix: Matrix,
}

impl ModuleMap {
    pub fn new(source: PresentedModule, target: PresentedModule, matrix: Matrix) -> Result<ModuleMap> {
        if matrix.nrows() != target.num_gens() || matrix.ncols() != source.num_gens() {
            return Err(Error::Shape("map matrix does not match generator counts".into()));
        }
        let m = matrix.with_degrees(target.gen_degrees().to_vec(), source.gen_degrees().to_vec());
        m.check_homogeneous()?;
        Ok(ModuleMap {
            source,
            target,
            matrix: m,
        })
    }

    /// Relations of the source map into relations of the target.
    pub fn is_well_defined(&self) -> bool {
        let img = self
            .matrix
            .mul(self.source.presentation())
            .expect("shapes agree");
        (0..img.ncols()).all(|j| self.target.is_relation(&img.column(j)))
    }

    pub fn is_surjective(&self) -> bool {
        let all = self
            .matrix
            .hstack(self.target.presentation())
            .expect("row counts agree");
        GBasis::of_image(&all)
            .map(|g| g.is_everything())
            .unwrap_or(false)
    }

    pub fn compose(&self, after: &ModuleMap) -> Result<ModuleMap> {
        ModuleMap::new(
            self.source.clone(),
            after.target.clone(),
            after.matrix.mul(&self.matrix)?,
        )
    }
}
