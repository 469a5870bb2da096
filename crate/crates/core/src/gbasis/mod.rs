//! Gröbner bases for homogeneous submodules of graded free modules.

mod buchberger;
mod ops;
pub(crate) mod vector;

use buchberger::{buchberger, normal_form, LeadIndex};
use vector::SVec;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::{Monomial, Poly, Ring};

pub use ops::{
    annihilator, ideal_intersection, ideal_quotient, kernel_of_map, module_quotient, syzygies,
    ImageSolver,
};

/// Element of a graded free module with generator degrees `twists`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeVector {
    pub comps: Vec<Poly>,
    pub twists: Vec<i64>,
}

impl FreeVector {
    pub fn new(comps: Vec<Poly>, twists: Vec<i64>) -> FreeVector {
        assert_eq!(comps.len(), twists.len());
        FreeVector { comps, twists }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|p| p.is_zero())
    }

    /// Degree of the vector, `None` for zero or inhomogeneous vectors.
    pub fn degree(&self) -> Option<i64> {
        let mut d = None;
        for (p, t) in self.comps.iter().zip(&self.twists) {
            if p.is_zero() {
                continue;
            }
            if !p.is_homogeneous() {
                return None;
            }
            let e = p.degree().unwrap() as i64 + t;
            match d {
                None => d = Some(e),
                Some(x) if x != e => return None,
                _ => {}
            }
        }
        d
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }
}

/// Reduced Gröbner basis of a submodule of `⊕ R(-twists[i])` in position-over-term order.
#[derive(Debug, Clone)]
pub struct GBasis {
    ring: Ring,
    twists: Vec<i64>,
    elems: Vec<SVec>,
    index: LeadIndex,
    minimal: Vec<Vec<Poly>>,
    minimal_idx: Vec<usize>,
}

impl PartialEq for GBasis {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.twists == other.twists && {
            let mut a = self.elems.clone();
            let mut b = other.elems.clone();
            let key = |v: &SVec| (v.terms[0].comp, v.terms[0].mono);
            a.sort_by_key(key);
            b.sort_by_key(key);
            a == b
        }
    }
}

/// Gröbner basis of the submodule generated by `gens`.
pub fn groebner(ring: &Ring, gens: &[FreeVector]) -> Result<GBasis> {
    let twists = match gens.first() {
        Some(g) => g.twists.clone(),
        None => return Err(Error::Shape("no generators and no ambient module".into())),
    };
    let mut cols = Vec::with_capacity(gens.len());
    for g in gens {
        if g.twists != twists {
            return Err(Error::Shape("generators live in different free modules".into()));
        }
        cols.push(g.comps.clone());
    }
    GBasis::new(ring, twists, &cols)
}

impl GBasis {
    /// Gröbner basis of the submodule generated by `gens` (each of length `twists.len()`).
    pub fn new(ring: &Ring, twists: Vec<i64>, gens: &[Vec<Poly>]) -> Result<GBasis> {
        let mut svecs = Vec::with_capacity(gens.len());
        for (k, g) in gens.iter().enumerate() {
            if g.len() != twists.len() {
                return Err(Error::Shape(format!(
                    "generator {k} has {} components, ambient rank {}",
                    g.len(),
                    twists.len()
                )));
            }
            if g.iter().any(|p| p.ring() != ring) {
                return Err(Error::RingMismatch);
            }
            let v = SVec::from_polys(g);
            if !v.is_homogeneous(&twists) {
                return Err(Error::InhomogeneousGenerator(k));
            }
            svecs.push(v);
        }
        Ok(GBasis::from_svecs(ring, twists, &svecs, Some(gens)))
    }

    pub(crate) fn from_svecs(
        ring: &Ring,
        twists: Vec<i64>,
        svecs: &[SVec],
        originals: Option<&[Vec<Poly>]>,
    ) -> GBasis {
        let run = buchberger(svecs, &twists, *ring.field());
        let minimal = run
            .minimal
            .iter()
            .map(|&i| match originals {
                Some(o) => o[i].clone(),
                None => svecs[i].to_polys(ring, twists.len()),
            })
            .collect();
        let mut gb = GBasis::assemble(ring, twists, run.basis, minimal);
        gb.minimal_idx = run.minimal;
        gb
    }

    /// Wrap elements already forming a reduced basis.
    pub(crate) fn assemble(
        ring: &Ring,
        twists: Vec<i64>,
        elems: Vec<SVec>,
        minimal: Vec<Vec<Poly>>,
    ) -> GBasis {
        let mut index = LeadIndex::default();
        for (i, e) in elems.iter().enumerate() {
            let t = e.terms[0];
            index.insert(t.comp, t.mono, i);
        }
        GBasis {
            ring: ring.clone(),
            twists,
            elems,
            index,
            minimal,
            minimal_idx: Vec::new(),
        }
    }

    /// Basis of the image of `A`.
    pub fn of_image(a: &Matrix) -> Result<GBasis> {
        GBasis::new(a.ring(), a.row_deg().to_vec(), &a.columns())
    }

    /// Basis of an ideal.
    pub fn ideal(ring: &Ring, gens: &[Poly]) -> Result<GBasis> {
        let cols: Vec<Vec<Poly>> = gens.iter().map(|g| vec![g.clone()]).collect();
        GBasis::new(ring, vec![0], &cols)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub(crate) fn svecs(&self) -> &[SVec] {
        &self.elems
    }

    pub fn generators(&self) -> Vec<Vec<Poly>> {
        self.elems
            .iter()
            .map(|e| e.to_polys(&self.ring, self.rank()))
            .collect()
    }

    pub fn generator_degrees(&self) -> Vec<i64> {
        self.elems
            .iter()
            .map(|e| e.degree(&self.twists).unwrap())
            .collect()
    }

    /// Minimal generators selected from the input, in input order.
    pub fn minimal_generators(&self) -> &[Vec<Poly>] {
        &self.minimal
    }

    /// Input positions of the minimal generators.
    pub fn minimal_indices(&self) -> &[usize] {
        &self.minimal_idx
    }

    /// Leading terms as (component, monomial).
    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.elems
            .iter()
            .map(|e| (e.terms[0].comp as usize, e.terms[0].mono))
            .collect()
    }

    pub(crate) fn nf(&self, v: &SVec) -> SVec {
        normal_form(v, &self.elems, &self.index, None, self.ring.field())
    }

    pub fn normal_form(&self, v: &[Poly]) -> Vec<Poly> {
        assert_eq!(v.len(), self.rank());
        self.nf(&SVec::from_polys(v)).to_polys(&self.ring, self.rank())
    }

    pub fn contains(&self, v: &[Poly]) -> bool {
        self.nf(&SVec::from_polys(v)).is_zero()
    }

    /// Whether `mono * e_comp` is not a leading term of the submodule.
    pub fn is_standard(&self, comp: usize, mono: &Monomial) -> bool {
        self.index.find_divisor(comp as u32, mono, None).is_none()
    }

    /// Whether the submodule is the whole free module.
    pub fn is_everything(&self) -> bool {
        (0..self.rank()).all(|c| {
            self.index
                .comp(c as u32)
                .iter()
                .any(|(m, _)| m.is_one())
        })
    }

    /// Generators as the columns of a matrix.
    pub fn to_matrix(&self) -> Matrix {
        let gens = self.generators();
        let degs = self.generator_degrees();
        Matrix::from_columns(&self.ring, gens, self.twists.clone(), degs)
            .expect("basis elements are homogeneous")
    }

    /// Minimal generators as the columns of a matrix.
    pub fn minimal_matrix(&self) -> Matrix {
        let degs: Vec<i64> = self
            .minimal
            .iter()
            .map(|g| FreeVector::new(g.clone(), self.twists.clone()).degree().unwrap())
            .collect();
        Matrix::from_columns(&self.ring, self.minimal.clone(), self.twists.clone(), degs)
            .expect("minimal generators are homogeneous")
    }
}
