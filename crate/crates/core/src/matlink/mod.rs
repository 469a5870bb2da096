//! Linkage of square polynomial matrices and reduction to a single entry.

mod cert;
mod prepare;
mod transport;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fmodule::PresentedModule;
use crate::matrix::Matrix;
use crate::poly::Poly;

pub use cert::{MatChainCertificate, MatrixRecord, StageRecord};
pub use prepare::{is_prepared, prepare, Prepared};
pub use transport::{symmetric_transport, Transport, TransportCase};

/// `A` linked to `B` through the symmetric product `S = A B^t`.
#[derive(Clone, Debug)]
pub struct SymLinkStep {
    pub a: Matrix,
    /// `b adj(A')`.
    pub b_tilde: Vec<Poly>,
    pub transport: Transport,
    /// `adj(A') S~`.
    pub b_prime: Matrix,
    /// `B^t = diag(λ, B')`.
    pub b_t: Matrix,
    pub s: Matrix,
    pub det_s: Poly,
    pub lambda: Poly,
}

impl SymLinkStep {
    /// Re-check the product, its symmetry, the determinant and the block shape of `B^t`.
    pub fn verify(&self) -> bool {
        self.s.det() == self.det_s && self.check_with_det()
    }

    // everything except recomputing det S
    fn check_with_det(&self) -> bool {
        let n = self.a.nrows();
        let Ok(prod) = self.a.mul(&self.b_t) else { return false };
        let block_ok = (1..n).all(|k| self.b_t.get(0, k).is_zero() && self.b_t.get(k, 0).is_zero())
            && *self.b_t.get(0, 0) == self.lambda
            && (1..n).all(|i| (1..n).all(|j| self.b_t.get(i, j) == self.b_prime.get(i - 1, j - 1)));
        prod.rows() == self.s.rows()
            && self.s.is_symmetric()
            && !self.det_s.is_zero()
            && self.det_s == self.a.det().mul(&self.lambda).mul(&self.b_prime.det())
            && self.s.check_homogeneous().is_ok()
            && self.b_t.check_homogeneous().is_ok()
            && block_ok
    }
}

fn first_row(a: &Matrix) -> Vec<Poly> {
    (1..a.ncols()).map(|j| a.get(0, j).clone()).collect()
}

fn first_col(a: &Matrix) -> Vec<Poly> {
    (1..a.nrows()).map(|i| a.get(i, 0).clone()).collect()
}

/// One matrix link of a prepared matrix `[[a, b], [c, A']]`.
pub fn link_step(a: &Matrix) -> Result<SymLinkStep> {
    let n = a.nrows();
    if !a.is_square() || n < 2 {
        return Err(Error::Precondition("link step needs a square matrix of size at least 2".into()));
    }
    let ring = a.ring();
    let (r, c) = (a.row_deg(), a.col_deg());
    let (b, cv) = (first_row(a), first_col(a));
    if b.iter().all(Poly::is_zero) || cv.iter().all(Poly::is_zero) {
        return Err(Error::Precondition("first row and column off the pivot must be nonzero".into()));
    }
    let a_prime = a.minor_matrix(0, 0);
    if a_prime.det().is_zero() {
        return Err(Error::Precondition("the complementary minor is singular; prepare again".into()));
    }
    let adj = a_prime.adjugate();
    let b_tilde = adj.transpose().apply(&b);
    if b_tilde.iter().all(Poly::is_zero) {
        return Err(Error::Consistency("b adj(A') vanishes although A' is nonsingular".into()));
    }
    let d_prime: i64 = c[1..].iter().sum::<i64>() - r[1..].iter().sum::<i64>();
    let dv: Vec<i64> = (1..n).map(|k| d_prime - r[0] + r[k]).collect();
    let dw: Vec<i64> = (1..n).map(|k| c[0] - r[k]).collect();
    let transport = symmetric_transport(ring, &b_tilde, &cv, &dv, &dw)?;
    let lambda = transport.lambda.clone();
    let delta = lambda.degree().unwrap_or(0) as i64;
    let b_prime_raw = adj.mul(&transport.s)?;
    let col_deg: Vec<i64> = (0..n).map(|k| delta + c[0] + r[0] - r[k]).collect();
    let mut rows = vec![vec![Poly::zero(ring); n]; n];
    rows[0][0] = lambda.clone();
    for i in 1..n {
        for j in 1..n {
            rows[i][j] = b_prime_raw.get(i - 1, j - 1).clone();
        }
    }
    let b_t = Matrix::from_rows(ring, rows, c.to_vec(), col_deg)?;
    let b_prime = b_t.select_rows(&(1..n).collect::<Vec<_>>()).select_cols(&(1..n).collect::<Vec<_>>());
    let s = a.mul(&b_t)?;
    let det_s = s.det();
    let step = SymLinkStep {
        a: a.clone(),
        b_tilde,
        transport,
        b_prime,
        b_t,
        s,
        det_s,
        lambda,
    };
    if !step.check_with_det() {
        return Err(Error::Consistency("linked product is not symmetric with nonzero determinant".into()));
    }
    Ok(step)
}

#[derive(Clone, Debug)]
pub struct MatStage {
    pub prepared: Prepared,
    pub step: SymLinkStep,
}

/// Module-level move recorded along a reduction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModuleMove {
    /// `coker A` linked to `coker B^t` by `coker S` at the given stage.
    Link { stage: usize },
    /// `R/(λ)` split off `coker B^t`.
    SplitOff { stage: usize, summand: String },
    /// `R/(c)` linked to `R/(a)` by `R/(ac)`.
    Bridge { terminal: String, partner: String },
}

#[derive(Clone, Debug)]
pub struct MatLinkChain {
    pub input: Matrix,
    pub stages: Vec<MatStage>,
    pub terminal: Matrix,
    pub moves: Vec<ModuleMove>,
}

impl MatLinkChain {
    /// Every stage is verified and feeds the next; the chain ends in a `1 x 1` matrix.
    pub fn verify(&self) -> bool {
        let mut cur = &self.input;
        for st in &self.stages {
            if st.prepared.input.rows() != cur.rows()
                || !st.prepared.verify()
                || st.prepared.matrix.rows() != st.step.a.rows()
                || !st.step.verify()
            {
                return false;
            }
            cur = &st.step.b_prime;
        }
        cur.rows() == self.terminal.rows()
            && self.terminal.nrows() == 1
            && self.stages.len() < self.input.nrows().max(1)
    }

    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }
}

/// Reduce a square matrix with nonzero determinant to a single entry by matrix links.
pub fn reduce(a: &Matrix) -> Result<MatLinkChain> {
    if !a.is_square() || a.nrows() == 0 {
        return Err(Error::Shape("expected a nonempty square matrix".into()));
    }
    a.check_homogeneous()?;
    if a.det().is_zero() {
        return Err(Error::Precondition("determinant is zero".into()));
    }
    let mut cur = a.clone();
    let mut stages = Vec::new();
    let mut moves = Vec::new();
    while cur.nrows() >= 2 {
        let prepared = prepare(&cur)?;
        let step = link_step(&prepared.matrix)?;
        let k = stages.len();
        moves.push(ModuleMove::Link { stage: k });
        moves.push(ModuleMove::SplitOff {
            stage: k,
            summand: step.lambda.to_string(),
        });
        cur = step.b_prime.clone();
        stages.push(MatStage { prepared, step });
    }
    if !stages.is_empty() {
        let partner = Poly::var(a.ring(), 0);
        moves.push(ModuleMove::Bridge {
            terminal: cur.get(0, 0).to_string(),
            partner: partner.to_string(),
        });
    }
    // each stage was verified when it was built
    Ok(MatLinkChain {
        input: a.clone(),
        stages,
        terminal: cur,
        moves,
    })
}

/// Module-level checks for one matrix link.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatLinkModuleReport {
    pub deg_m: i64,
    pub deg_n: i64,
    pub deg_c: i64,
    pub degree_ok: bool,
    /// `0 -> coker B^t -> coker S -> coker A -> 0` on Hilbert series.
    pub hilbert_ok: bool,
}

impl MatLinkModuleReport {
    pub fn all_ok(&self) -> bool {
        self.degree_ok && self.hilbert_ok
    }
}

pub fn verify_matrix_link_modules(step: &SymLinkStep) -> Result<MatLinkModuleReport> {
    let m = PresentedModule::new(step.a.clone())?;
    let n = PresentedModule::new(step.b_t.clone())?;
    let c = PresentedModule::new(step.s.clone())?;
    let (hm, hn, hc) = (m.hilbert(), n.hilbert(), c.hilbert());
    let report = MatLinkModuleReport {
        deg_m: hm.degree(),
        deg_n: hn.degree(),
        deg_c: hc.degree(),
        degree_ok: hc.degree() == hm.degree() + hn.degree(),
        hilbert_ok: *hc.numerator() == hm.numerator().add(hn.numerator()),
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, Ring};

    fn mat(r: &Ring, rows: &[&[&str]]) -> Matrix {
        let rows = rows
            .iter()
            .map(|row| row.iter().map(|s| parse_poly(s, r).unwrap()).collect())
            .collect();
        Matrix::from_rows_infer(r, rows, vec![0; 2]).unwrap()
    }

    #[test]
    fn two_by_two_link() {
        let r = Ring::new(32003, ["x", "y", "z", "w"].map(String::from).to_vec()).unwrap();
        let p = |s: &str| parse_poly(s, &r).unwrap();
        let a = mat(&r, &[&["x", "y"], &["z", "w"]]);
        let st = link_step(&a).unwrap();
        assert_eq!(st.lambda, p("y"));
        assert_eq!(st.b_prime.rows(), vec![vec![p("z")]]);
        assert_eq!(st.s.rows(), vec![vec![p("x*y"), p("y*z")], vec![p("y*z"), p("w*z")]]);
        assert_eq!(st.det_s, p("y*z").mul(&p("x*w - y*z")));
        let rep = verify_matrix_link_modules(&st).unwrap();
        assert_eq!((rep.deg_c, rep.deg_m, rep.deg_n), (4, 2, 2));
        assert!(rep.all_ok());
        let chain = reduce(&a).unwrap();
        assert_eq!(chain.len(), 1);
        assert_eq!(chain.terminal.rows(), vec![vec![p("z")]]);
    }

    #[test]
    fn diagonal_and_trivial() {
        let r = Ring::standard(32003, 3).unwrap();
        let a = mat(&r, &[&["x0", "0"], &["0", "x1^2"]]);
        let chain = reduce(&a).unwrap();
        assert!(chain.verify());
        let one = Matrix::from_rows_infer(&r, vec![vec![parse_poly("x2", &r).unwrap()]], vec![0]).unwrap();
        let chain = reduce(&one).unwrap();
        assert!(chain.is_empty() && chain.moves.is_empty());
    }
}
