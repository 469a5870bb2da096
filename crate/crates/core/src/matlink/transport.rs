use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::{Poly, Ring};

const DET_RETRIES: u64 = 16;

/// Which construction produced the core block of a transport.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TransportCase {
    Identity,
    Diagonal,
    /// Disjoint supports with at least as many target entries as source entries.
    Split,
    /// Disjoint supports, solved in the other direction and inverted by the adjugate.
    SplitAdjugate,
    /// Source supported on a single entry.
    Column,
    ColumnAdjugate,
}

impl TransportCase {
    pub fn uses_adjugate(self) -> bool {
        matches!(self, TransportCase::SplitAdjugate | TransportCase::ColumnAdjugate)
    }
}

/// Symmetric `S` with `det S != 0` and `S v = λ w`.
#[derive(Clone, Debug)]
pub struct Transport {
    pub s: Matrix,
    pub lambda: Poly,
    pub case: TransportCase,
    /// The matrix whose adjugate was taken, for the adjugate cases.
    pub inner: Option<Matrix>,
}

type Block = Vec<Vec<Poly>>;

struct Problem<'a> {
    ring: &'a Ring,
    v: &'a [Poly],
    w: &'a [Poly],
    dv: &'a [i64],
    dw: &'a [i64],
    d: i64,
}

fn lin_pow(ring: &Ring, e: i64) -> Poly {
    Poly::var(ring, 0).pow(e as u32)
}

fn raw(ring: &Ring, block: &Block) -> Matrix {
    let n = block.len();
    let mut m = Matrix::zeros(ring, vec![0; n], vec![0; n]);
    for (i, row) in block.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            m.set(i, j, e.clone());
        }
    }
    m
}

fn to_block(m: &Matrix) -> Block {
    m.rows()
}

fn scalars(ring: &Ring, n: usize, attempt: u64) -> Vec<u32> {
    if attempt == 0 {
        return vec![1; n];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(attempt);
    (0..n).map(|_| Poly::random_unit(ring, &mut rng)).collect()
}

impl Problem<'_> {
    fn zero_block(&self, n: usize) -> Block {
        vec![vec![Poly::zero(self.ring); n]; n]
    }

    /// `v` supported on `b`, `w` on `a`, `|a| >= |b|`. Block order is `a` then `b`.
    fn split(&self, a: &[usize], b: &[usize], attempt: u64) -> (Block, Poly) {
        let ring = self.ring;
        let (k, m) = (a.len(), b.len());
        let delta0: i64 = b.iter().map(|&i| self.dv[i]).sum();
        let pad = a
            .iter()
            .map(|&i| -(delta0 + 2 * self.dw[i] - self.d))
            .max()
            .unwrap_or(0)
            .max(0);
        let lp = lin_pow(ring, pad);
        let lambda = b.iter().fold(lp.clone(), |acc, &i| acc.mul(&self.v[i]));
        let mut s = self.zero_block(k + m);
        for (r, &i) in a.iter().enumerate() {
            let j = r % m;
            let others = b
                .iter()
                .enumerate()
                .filter(|&(l, _)| l != j)
                .fold(lp.clone(), |acc, (_, &l)| acc.mul(&self.v[l]));
            let q = self.w[i].mul(&others);
            s[r][k + j] = q.clone();
            s[k + j][r] = q;
        }
        if k > m {
            let cs = scalars(ring, k, attempt);
            for (r, &i) in a.iter().enumerate() {
                let e = delta0 + pad + 2 * self.dw[i] - self.d;
                s[r][r] = lin_pow(ring, e).scale(cs[r]);
            }
        }
        (s, lambda)
    }

    /// `v` supported on the pivot only. Block order is the pivot then `rest`.
    fn column(&self, pivot: usize, rest: &[usize], attempt: u64) -> (Block, Poly) {
        let ring = self.ring;
        let base = self.dv[pivot];
        let pad = rest
            .iter()
            .map(|&i| -(base + 2 * self.dw[i] - self.d))
            .max()
            .unwrap_or(0)
            .max(0);
        let mu = lin_pow(ring, pad);
        let lambda = self.v[pivot].mul(&mu);
        let n = rest.len() + 1;
        let mut s = self.zero_block(n);
        s[0][0] = self.w[pivot].mul(&mu);
        let cs = scalars(ring, rest.len(), attempt);
        for (r, &i) in rest.iter().enumerate() {
            let e = self.w[i].mul(&mu);
            s[0][r + 1] = e.clone();
            s[r + 1][0] = e;
            let deg = base + pad + 2 * self.dw[i] - self.d;
            s[r + 1][r + 1] = lin_pow(ring, deg).scale(cs[r]);
        }
        (s, lambda)
    }

    fn swapped(&self) -> Problem<'_> {
        Problem {
            ring: self.ring,
            v: self.w,
            w: self.v,
            dv: self.dw,
            dw: self.dv,
            d: self.d,
        }
    }
}

/// From `S' w = μ v` to `(μ adj S') v = (det S') w`.
fn invert(ring: &Ring, inner: &Block, mu: &Poly) -> (Block, Poly, Matrix) {
    let m = raw(ring, inner);
    let adj = m.adjugate();
    let s = to_block(&adj)
        .into_iter()
        .map(|row| row.iter().map(|e| e.mul(mu)).collect())
        .collect();
    (s, m.det(), m)
}

fn place(ring: &Ring, n: usize, idx: &[usize], block: &Block) -> Block {
    let mut s = vec![vec![Poly::zero(ring); n]; n];
    for (a, &i) in idx.iter().enumerate() {
        for (b, &j) in idx.iter().enumerate() {
            s[i][j] = block[a][b].clone();
        }
    }
    s
}

fn attempt_transport(p: &Problem, attempt: u64) -> (Block, Poly, TransportCase, Option<Matrix>) {
    let ring = p.ring;
    let n = p.v.len();
    let (mut both, mut only_w, mut only_v, mut neither) = (vec![], vec![], vec![], vec![]);
    for i in 0..n {
        match (p.v[i].is_zero(), p.w[i].is_zero()) {
            (false, false) => both.push(i),
            (true, false) => only_w.push(i),
            (false, true) => only_v.push(i),
            (true, true) => neither.push(i),
        }
    }
    let (core_idx, core, mut lambda, case, inner) = if !only_w.is_empty() && !only_v.is_empty() {
        if only_w.len() >= only_v.len() {
            let (s, l) = p.split(&only_w, &only_v, attempt);
            ([only_w, only_v].concat(), s, l, TransportCase::Split, None)
        } else {
            // S' w = μ v with the roles of the supports exchanged
            let (s1, mu) = p.swapped().split(&only_v, &only_w, attempt);
            let (s, l, m) = invert(ring, &s1, &mu);
            ([only_v, only_w].concat(), s, l, TransportCase::SplitAdjugate, Some(m))
        }
    } else if !only_w.is_empty() {
        let pivot = both.remove(0);
        let (s, l) = p.column(pivot, &only_w, attempt);
        ([vec![pivot], only_w].concat(), s, l, TransportCase::Column, None)
    } else if !only_v.is_empty() {
        let pivot = both.remove(0);
        let (s1, mu) = p.swapped().column(pivot, &only_v, attempt);
        let (s, l, m) = invert(ring, &s1, &mu);
        ([vec![pivot], only_v].concat(), s, l, TransportCase::ColumnAdjugate, Some(m))
    } else {
        let pivot = both.remove(0);
        (vec![pivot], vec![vec![p.w[pivot].clone()]], p.v[pivot].clone(), TransportCase::Diagonal, None)
    };
    let mut s = place(ring, n, &core_idx, &core);
    // entries carried by both vectors: S' = diag(λ w_i, v_i S), λ' = λ v_i
    for &i in &both {
        for row in s.iter_mut() {
            for e in row.iter_mut() {
                if !e.is_zero() {
                    *e = e.mul(&p.v[i]);
                }
            }
        }
        s[i][i] = lambda.mul(&p.w[i]);
        lambda = lambda.mul(&p.v[i]);
    }
    if !neither.is_empty() {
        let delta = lambda.degree().unwrap_or(0) as i64;
        let pad = neither
            .iter()
            .map(|&i| -(delta + p.dw[i] - p.dv[i]))
            .max()
            .unwrap_or(0)
            .max(0);
        if pad > 0 {
            let lp = lin_pow(ring, pad);
            for row in s.iter_mut() {
                for e in row.iter_mut() {
                    *e = e.mul(&lp);
                }
            }
            lambda = lambda.mul(&lp);
        }
        let cs = scalars(ring, neither.len(), attempt);
        for (r, &i) in neither.iter().enumerate() {
            s[i][i] = lin_pow(ring, delta + pad + p.dw[i] - p.dv[i]).scale(cs[r]);
        }
    }
    (s, lambda, case, inner)
}

/// Symmetric transport of `v` onto `w`.
///
/// `dv`, `dw` are the degrees attached to the entries, zero entries included; their
/// sums must all agree. Powers of `x0` pad degrees where needed.
pub fn symmetric_transport(ring: &Ring, v: &[Poly], w: &[Poly], dv: &[i64], dw: &[i64]) -> Result<Transport> {
    let n = v.len();
    if n == 0 || w.len() != n || dv.len() != n || dw.len() != n {
        return Err(Error::Shape("transport vectors must have equal positive length".into()));
    }
    if v.iter().all(Poly::is_zero) || w.iter().all(Poly::is_zero) {
        return Err(Error::Precondition("transport needs nonzero vectors".into()));
    }
    let d = dv[0] + dw[0];
    for i in 0..n {
        if dv[i] + dw[i] != d {
            return Err(Error::Precondition("entry degrees do not add up to a constant".into()));
        }
        for (f, e) in [(&v[i], dv[i]), (&w[i], dw[i])] {
            if !f.is_zero() && (!f.is_homogeneous() || f.degree() != Some(e as u32)) {
                return Err(Error::Inhomogeneous { row: i, col: 0 });
            }
        }
    }
    if v == w && dv == dw {
        let s = Matrix::identity(ring, vec![0; n]).with_degrees(dw.iter().map(|e| -e).collect(), dv.iter().map(|e| -e).collect());
        return Ok(Transport {
            s,
            lambda: Poly::one(ring),
            case: TransportCase::Identity,
            inner: None,
        });
    }
    let p = Problem { ring, v, w, dv, dw, d };
    for attempt in 0..DET_RETRIES {
        let (block, lambda, case, inner) = attempt_transport(&p, attempt);
        let m = raw(ring, &block);
        if m.det().is_zero() {
            continue;
        }
        let delta = lambda.degree().unwrap_or(0) as i64;
        let s = Matrix::from_rows(
            ring,
            block,
            dw.iter().map(|e| -e).collect(),
            dv.iter().map(|e| delta - e).collect(),
        )?;
        let t = Transport { s, lambda, case, inner };
        if !t.verify(v, w) {
            return Err(Error::Consistency("symmetric transport identity failed".into()));
        }
        return Ok(t);
    }
    Err(Error::SearchExhausted("no nonsingular symmetric transport found".into()))
}

impl Transport {
    /// `S = S^t`, `det S != 0`, `λ != 0` and `S v = λ w`.
    pub fn verify(&self, v: &[Poly], w: &[Poly]) -> bool {
        let sv = self.s.apply(v);
        self.s.is_symmetric()
            && !self.lambda.is_zero()
            && !self.s.det().is_zero()
            && sv.iter().zip(w).all(|(a, b)| *a == b.mul(&self.lambda))
    }

    /// `adj(S') S' = det(S') I` for the inverted matrix, when there is one.
    pub fn adjugate_identity(&self) -> bool {
        let Some(m) = &self.inner else { return true };
        let n = m.nrows();
        let prod = match m.adjugate().mul(m) {
            Ok(p) => p,
            Err(_) => return false,
        };
        let det = m.det();
        (0..n).all(|i| (0..n).all(|j| *prod.get(i, j) == if i == j { det.clone() } else { Poly::zero(m.ring()) }))
    }
}
