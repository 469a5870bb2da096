use serde::{Deserialize, Serialize};

use super::{MatLinkChain, ModuleMove};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::{format_poly, parse_poly, Ring};

/// Matrix with polynomials in canonical string form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub rows: Vec<Vec<String>>,
    pub row_deg: Vec<i64>,
    pub col_deg: Vec<i64>,
}

impl MatrixRecord {
    pub fn from_matrix(m: &Matrix) -> MatrixRecord {
        MatrixRecord {
            rows: m.rows().iter().map(|r| r.iter().map(format_poly).collect()).collect(),
            row_deg: m.row_deg().to_vec(),
            col_deg: m.col_deg().to_vec(),
        }
    }

    pub fn to_matrix(&self, ring: &Ring) -> Result<Matrix> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|s| parse_poly(s, ring)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(ring, rows, self.row_deg.clone(), self.col_deg.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageRecord {
    /// `a = p * input * q`.
    pub input: MatrixRecord,
    pub p: MatrixRecord,
    pub q: MatrixRecord,
    pub a: MatrixRecord,
    pub b_t: MatrixRecord,
    pub s: MatrixRecord,
    pub lambda: String,
    pub det_s: String,
}

/// Replayable record of a matrix reduction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatChainCertificate {
    pub characteristic: u32,
    pub vars: Vec<String>,
    pub input: MatrixRecord,
    pub stages: Vec<StageRecord>,
    pub terminal: MatrixRecord,
    pub moves: Vec<ModuleMove>,
}

fn fail(msg: String) -> Error {
    Error::Consistency(msg)
}

impl MatLinkChain {
    pub fn certificate(&self) -> MatChainCertificate {
        let ring = self.input.ring();
        MatChainCertificate {
            characteristic: ring.field().characteristic(),
            vars: ring.var_names().to_vec(),
            input: MatrixRecord::from_matrix(&self.input),
            stages: self
                .stages
                .iter()
                .map(|st| StageRecord {
                    input: MatrixRecord::from_matrix(&st.prepared.input),
                    p: MatrixRecord::from_matrix(&st.prepared.p),
                    q: MatrixRecord::from_matrix(&st.prepared.q),
                    a: MatrixRecord::from_matrix(&st.step.a),
                    b_t: MatrixRecord::from_matrix(&st.step.b_t),
                    s: MatrixRecord::from_matrix(&st.step.s),
                    lambda: format_poly(&st.step.lambda),
                    det_s: format_poly(&st.step.det_s),
                })
                .collect(),
            terminal: MatrixRecord::from_matrix(&self.terminal),
            moves: self.moves.clone(),
        }
    }
}

impl MatChainCertificate {
    pub fn ring(&self) -> Result<Ring> {
        Ring::new(self.characteristic, self.vars.clone())
    }

    /// Replay every recorded identity from the serialized data alone.
    pub fn verify(&self) -> Result<()> {
        let ring = self.ring()?;
        let mut cur = self.input.to_matrix(&ring)?;
        if !cur.is_square() || cur.det().is_zero() {
            return Err(fail("input is not square with nonzero determinant".into()));
        }
        for (k, st) in self.stages.iter().enumerate() {
            let input = st.input.to_matrix(&ring)?;
            if input.rows() != cur.rows() {
                return Err(fail(format!("stage {k} does not continue the chain")));
            }
            let (p, q, a) = (st.p.to_matrix(&ring)?, st.q.to_matrix(&ring)?, st.a.to_matrix(&ring)?);
            if p.mul(&input)?.mul(&q)?.rows() != a.rows() {
                return Err(fail(format!("stage {k}: transforms do not reproduce A")));
            }
            for (name, t) in [("P", &p), ("Q", &q)] {
                let d = t.det();
                if d.is_zero() || !d.is_constant() {
                    return Err(fail(format!("stage {k}: {name} is not invertible")));
                }
            }
            let b_t = st.b_t.to_matrix(&ring)?;
            let s = st.s.to_matrix(&ring)?;
            let lambda = parse_poly(&st.lambda, &ring)?;
            let det_s = parse_poly(&st.det_s, &ring)?;
            let n = a.nrows();
            if a.mul(&b_t)?.rows() != s.rows() {
                return Err(fail(format!("stage {k}: S differs from A B^t")));
            }
            if !s.is_symmetric() {
                return Err(fail(format!("stage {k}: S is not symmetric")));
            }
            if det_s.is_zero() || s.det() != det_s || det_s != a.det().mul(&b_t.det()) {
                return Err(fail(format!("stage {k}: determinant of S is wrong")));
            }
            let diag = *b_t.get(0, 0) == lambda
                && (1..n).all(|j| b_t.get(0, j).is_zero() && b_t.get(j, 0).is_zero());
            if !diag {
                return Err(fail(format!("stage {k}: B^t is not block diagonal")));
            }
            let rest: Vec<usize> = (1..n).collect();
            cur = b_t.select_rows(&rest).select_cols(&rest);
        }
        let terminal = self.terminal.to_matrix(&ring)?;
        if terminal.nrows() != 1 || terminal.rows() != cur.rows() {
            return Err(fail("terminal matrix does not end the chain".into()));
        }
        Ok(())
    }
}
