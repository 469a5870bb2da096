use super::vector::SVec;
use super::{FreeVector, GBasis};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::{Poly, Ring};

/// Elimination basis for the graph of `A: F1 -> F0`, used for kernels and lifting.
#[derive(Debug, Clone)]
pub struct ImageSolver {
    gb: GBasis,
    r: usize,
    m: usize,
    col_deg: Vec<i64>,
}

impl ImageSolver {
    pub fn new(a: &Matrix) -> Result<ImageSolver> {
        a.check_homogeneous()?;
        let (r, m) = (a.nrows(), a.ncols());
        let mut twists = a.row_deg().to_vec();
        twists.extend_from_slice(a.col_deg());
        let one = Poly::one(a.ring());
        let gens: Vec<SVec> = (0..m)
            .map(|j| {
                let mut v = SVec::from_polys(&a.column(j));
                v.terms.extend(
                    SVec::from_polys_at(std::slice::from_ref(&one), (r + j) as u32).terms,
                );
                v
            })
            .collect();
        let gb = GBasis::from_svecs(a.ring(), twists, &gens, None);
        Ok(ImageSolver {
            gb,
            r,
            m,
            col_deg: a.col_deg().to_vec(),
        })
    }

    fn kernel_svecs(&self) -> Vec<SVec> {
        let (r, m) = (self.r as u32, self.m as u32);
        self.gb
            .svecs()
            .iter()
            .filter(|v| v.terms[0].comp >= r)
            .map(|v| v.project(r, r + m))
            .collect()
    }

    /// Reduced basis of the kernel inside `F1`.
    pub fn kernel(&self) -> GBasis {
        GBasis::assemble(self.gb.ring(), self.col_deg.clone(), self.kernel_svecs(), Vec::new())
    }

    /// Minimal generators of the kernel as the columns of a matrix into `F1`.
    pub fn kernel_minimal(&self) -> Matrix {
        let gb = GBasis::from_svecs(self.gb.ring(), self.col_deg.clone(), &self.kernel_svecs(), None);
        gb.minimal_matrix()
    }

    /// Some `x` with `A x = v`, or `None` when `v` is not in the image.
    pub fn lift(&self, v: &[Poly]) -> Option<Vec<Poly>> {
        assert_eq!(v.len(), self.r);
        let nf = self.gb.nf(&SVec::from_polys(v));
        if nf.terms.iter().any(|t| (t.comp as usize) < self.r) {
            return None;
        }
        let w = nf.project(self.r as u32, (self.r + self.m) as u32);
        Some(
            w.to_polys(self.gb.ring(), self.m)
                .into_iter()
                .map(|p| p.neg())
                .collect(),
        )
    }

    pub fn image_contains(&self, v: &[Poly]) -> bool {
        let nf = self.gb.nf(&SVec::from_polys(v));
        nf.terms.iter().all(|t| (t.comp as usize) >= self.r)
    }
}

/// Basis of `ker A` inside the source free module.
pub fn kernel_of_map(a: &Matrix) -> Result<GBasis> {
    Ok(ImageSolver::new(a)?.kernel())
}

/// Minimal generators of the relations among the basis elements.
pub fn syzygies(gb: &GBasis) -> Result<Vec<FreeVector>> {
    let a = gb.to_matrix();
    let k = ImageSolver::new(&a)?.kernel_minimal();
    Ok((0..k.ncols())
        .map(|j| FreeVector::new(k.column(j), a.col_deg().to_vec()))
        .collect())
}

/// `{ r : r * v_k ∈ im B_k for all k }`.
fn colon_parts(ring: &Ring, parts: &[(Vec<Poly>, &Matrix)]) -> Result<GBasis> {
    let mut twists = Vec::new();
    let mut gens: Vec<SVec> = Vec::new();
    let mut tag = SVec::default();
    for (v, b) in parts {
        if v.len() != b.nrows() {
            return Err(Error::Shape("colon: vector and submodule ambient differ".into()));
        }
        let fv = FreeVector::new(v.clone(), b.row_deg().to_vec());
        if fv.is_zero() {
            continue;
        }
        let delta = fv
            .degree()
            .ok_or_else(|| Error::Precondition("colon: inhomogeneous element".into()))?;
        let off = twists.len() as u32;
        twists.extend(b.row_deg().iter().map(|d| d - delta));
        tag.terms.extend(SVec::from_polys_at(v, off).terms);
        for j in 0..b.ncols() {
            let c = SVec::from_polys_at(&b.column(j), off);
            if !c.is_zero() {
                gens.push(c);
            }
        }
    }
    if tag.is_zero() {
        return GBasis::ideal(ring, &[Poly::one(ring)]);
    }
    let last = twists.len() as u32;
    twists.push(0);
    tag.terms.push(super::vector::Term {
        comp: last,
        mono: crate::poly::Monomial::ONE,
        coeff: 1,
    });
    gens.push(tag);
    let gb = GBasis::from_svecs(ring, twists, &gens, None);
    let elems: Vec<SVec> = gb
        .svecs()
        .iter()
        .filter(|v| v.terms[0].comp == last)
        .map(|v| v.project(last, last + 1))
        .collect();
    // rerun to expose minimal generators
    Ok(GBasis::from_svecs(ring, vec![0], &elems, None))
}

/// `N : J = { r : r J ⊆ N }` for submodules given by generator columns in a common free module.
pub fn module_quotient(n: &Matrix, j: &Matrix) -> Result<GBasis> {
    if n.row_deg() != j.row_deg() {
        return Err(Error::Shape("module quotient: ambient mismatch".into()));
    }
    let cols = j.columns();
    let parts: Vec<(Vec<Poly>, &Matrix)> = cols.into_iter().map(|c| (c, n)).collect();
    colon_parts(n.ring(), &parts)
}

fn ideal_matrix(ring: &Ring, gens: &[Poly]) -> Result<Matrix> {
    let gens: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let mut degs = Vec::with_capacity(gens.len());
    for (k, g) in gens.iter().enumerate() {
        if !g.is_homogeneous() {
            return Err(Error::InhomogeneousGenerator(k));
        }
        degs.push(g.degree().unwrap() as i64);
    }
    Matrix::from_rows(ring, vec![gens], vec![0], degs)
}

/// Ideal quotient `I : J`.
pub fn ideal_quotient(ring: &Ring, i: &[Poly], j: &[Poly]) -> Result<GBasis> {
    let im = ideal_matrix(ring, i)?;
    let parts: Vec<(Vec<Poly>, &Matrix)> = j.iter().map(|g| (vec![g.clone()], &im)).collect();
    colon_parts(ring, &parts)
}

/// Ideal intersection `I ∩ J`.
pub fn ideal_intersection(ring: &Ring, i: &[Poly], j: &[Poly]) -> Result<GBasis> {
    let im = ideal_matrix(ring, i)?;
    let jm = ideal_matrix(ring, j)?;
    let one = Poly::one(ring);
    colon_parts(ring, &[(vec![one.clone()], &im), (vec![one], &jm)])
}

/// `Ann coker A`, as the intersection of `im A : e_i` over the generators.
pub fn annihilator(a: &Matrix) -> Result<GBasis> {
    let ring = a.ring();
    a.check_homogeneous()?;
    let mut acc: Option<GBasis> = None;
    for i in 0..a.nrows() {
        let mut e = vec![Poly::zero(ring); a.nrows()];
        e[i] = Poly::one(ring);
        let q = colon_parts(ring, &[(e, a)])?;
        acc = Some(match acc {
            None => q,
            Some(prev) => {
                let pg: Vec<Poly> = prev.generators().into_iter().map(|v| v[0].clone()).collect();
                let qg: Vec<Poly> = q.generators().into_iter().map(|v| v[0].clone()).collect();
                ideal_intersection(ring, &pg, &qg)?
            }
        });
    }
    match acc {
        Some(g) => Ok(g),
        None => GBasis::ideal(ring, &[Poly::one(ring)]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn ring(vars: &[&str]) -> Ring {
        Ring::new(32003, vars.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    fn p(r: &Ring, s: &str) -> Poly {
        parse_poly(s, r).unwrap()
    }

    fn ideal_gens(g: &GBasis) -> Vec<Poly> {
        g.generators().into_iter().map(|v| v[0].clone()).collect()
    }

    #[test]
    fn koszul_kernel() {
        let r = ring(&["x", "y"]);
        let a = Matrix::from_rows(&r, vec![vec![p(&r, "x"), p(&r, "y")]], vec![0], vec![1, 1]).unwrap();
        let k = ImageSolver::new(&a).unwrap().kernel_minimal();
        assert_eq!(k.ncols(), 1);
        assert_eq!(k.col_deg(), &[2]);
        assert!(a.mul(&k).unwrap().is_zero());
        let single = Matrix::from_rows(&r, vec![vec![p(&r, "x")]], vec![0], vec![1]).unwrap();
        assert!(kernel_of_map(&single).unwrap().is_empty());
        let id = Matrix::identity(&r, vec![0, 0]);
        assert!(kernel_of_map(&id).unwrap().is_empty());
    }

    #[test]
    fn lift_solves() {
        let r = ring(&["x", "y"]);
        let a = Matrix::from_rows(&r, vec![vec![p(&r, "x"), p(&r, "y")]], vec![0], vec![1, 1]).unwrap();
        let s = ImageSolver::new(&a).unwrap();
        let x = s.lift(&[p(&r, "x^2 + 3*x*y - y^2")]).unwrap();
        assert_eq!(a.apply(&x), vec![p(&r, "x^2 + 3*x*y - y^2")]);
        let b = Matrix::from_rows(&r, vec![vec![p(&r, "x")]], vec![0], vec![1]).unwrap();
        assert!(ImageSolver::new(&b).unwrap().lift(&[p(&r, "y")]).is_none());
    }

    #[test]
    fn quotients() {
        let r = ring(&["x", "y", "z"]);
        let q = ideal_quotient(&r, &[p(&r, "x^2")], &[p(&r, "x")]).unwrap();
        assert_eq!(ideal_gens(&q), vec![p(&r, "x")]);
        let q = ideal_quotient(&r, &[p(&r, "x")], &[p(&r, "y")]).unwrap();
        assert_eq!(ideal_gens(&q), vec![p(&r, "x")]);
        let i = ideal_intersection(&r, &[p(&r, "x")], &[p(&r, "y")]).unwrap();
        assert_eq!(ideal_gens(&i), vec![p(&r, "x*y")]);
    }

    #[test]
    fn twisted_cubic_residual() {
        let r = ring(&["x0", "x1", "x2", "x3"]);
        let tc = [
            p(&r, "x0*x2 - x1^2"),
            p(&r, "x1*x3 - x2^2"),
            p(&r, "x0*x3 - x1*x2"),
        ];
        let c = [tc[0].clone(), tc[1].clone()];
        let q = ideal_quotient(&r, &c, &tc).unwrap();
        let want = GBasis::ideal(&r, &[p(&r, "x1"), p(&r, "x2")]).unwrap();
        assert_eq!(q, want);
    }

    #[test]
    fn annihilators() {
        let r = ring(&["x", "y", "z"]);
        let a = Matrix::from_rows(&r, vec![vec![p(&r, "x")]], vec![0], vec![1]).unwrap();
        assert_eq!(ideal_gens(&annihilator(&a).unwrap()), vec![p(&r, "x")]);
        let b = Matrix::from_rows(
            &r,
            vec![vec![p(&r, "x"), Poly::zero(&r)], vec![Poly::zero(&r), p(&r, "y")]],
            vec![0, 0],
            vec![1, 1],
        )
        .unwrap();
        assert_eq!(ideal_gens(&annihilator(&b).unwrap()), vec![p(&r, "x*y")]);
        let free = Matrix::zeros(&r, vec![0], vec![]);
        assert!(annihilator(&free).unwrap().is_empty());
    }

    #[test]
    fn syzygies_of_line() {
        let r = ring(&["x", "y", "z"]);
        let gb = GBasis::ideal(&r, &[p(&r, "x"), p(&r, "y")]).unwrap();
        let s = syzygies(&gb).unwrap();
        assert_eq!(s.len(), 1);
        let gb = GBasis::ideal(&r, &[p(&r, "x")]).unwrap();
        assert!(syzygies(&gb).unwrap().is_empty());
    }
}
