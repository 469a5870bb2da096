use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::{Poly, Ring};

/// `matrix = p * input * q` with `p`, `q` invertible over the polynomial ring.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub input: Matrix,
    pub matrix: Matrix,
    pub p: Matrix,
    pub q: Matrix,
    /// Number of elementary operations applied.
    pub ops: usize,
}

/// First row and column off the pivot are nonzero and the lower-right minor is nonsingular.
pub fn is_prepared(a: &Matrix) -> bool {
    let n = a.nrows();
    n >= 2
        && a.is_square()
        && (1..n).any(|j| !a.get(0, j).is_zero())
        && (1..n).any(|i| !a.get(i, 0).is_zero())
        && !a.minor_matrix(0, 0).det().is_zero()
}

struct State {
    a: Matrix,
    p: Matrix,
    q: Matrix,
    ops: usize,
}

fn swap_perm(n: usize, i: usize, j: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.swap(i, j);
    perm
}

impl State {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            let perm = swap_perm(self.a.nrows(), i, j);
            self.a = self.a.select_rows(&perm);
            self.p = self.p.select_rows(&perm);
            self.ops += 1;
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            let perm = swap_perm(self.a.ncols(), i, j);
            self.a = self.a.select_cols(&perm);
            self.q = self.q.select_cols(&perm);
            self.ops += 1;
        }
    }

    /// `row_t += f * row_s`.
    fn add_row(&self, t: usize, s: usize, f: &Poly) -> State {
        let upd = |m: &Matrix| {
            let mut out = m.clone();
            for k in 0..m.ncols() {
                out.set(t, k, m.get(t, k).add(&f.mul(m.get(s, k))));
            }
            out
        };
        State {
            a: upd(&self.a),
            p: upd(&self.p),
            q: self.q.clone(),
            ops: self.ops + 1,
        }
    }

    /// `col_t += f * col_s`.
    fn add_col(&self, t: usize, s: usize, f: &Poly) -> State {
        let upd = |m: &Matrix| {
            let mut out = m.clone();
            for k in 0..m.nrows() {
                out.set(k, t, m.get(k, t).add(&f.mul(m.get(k, s))));
            }
            out
        };
        State {
            a: upd(&self.a),
            p: self.p.clone(),
            q: upd(&self.q),
            ops: self.ops + 1,
        }
    }

    fn b_zero(&self) -> bool {
        (1..self.a.ncols()).all(|j| self.a.get(0, j).is_zero())
    }

    fn c_zero(&self) -> bool {
        (1..self.a.nrows()).all(|i| self.a.get(i, 0).is_zero())
    }

    fn minor_ok(&self) -> bool {
        !self.a.minor_matrix(0, 0).det().is_zero()
    }
}

/// Homogeneous multipliers of degree `d` tried by the search.
fn multipliers(ring: &Ring, d: i64) -> Vec<Poly> {
    if d < 0 {
        return Vec::new();
    }
    if d == 0 {
        return vec![Poly::one(ring)];
    }
    let mut out: Vec<Poly> = (0..ring.nvars()).map(|k| Poly::var(ring, k).pow(d as u32)).collect();
    let sum = (0..ring.nvars()).fold(Poly::zero(ring), |acc, k| acc.add(&Poly::var(ring, k)));
    out.push(sum.pow(d as u32));
    out
}

fn fix_b(st: &State) -> Option<State> {
    let ring = st.a.ring();
    let (r, c) = (st.a.row_deg(), st.a.col_deg());
    let n = st.a.nrows();
    // row_0 += f row_i leaves the minor alone
    for i in 1..n {
        for f in multipliers(ring, r[i] - r[0]) {
            let next = st.add_row(0, i, &f);
            if !next.b_zero() {
                return Some(next);
            }
        }
    }
    for j in 1..n {
        for f in multipliers(ring, c[j] - c[0]) {
            let next = st.add_col(j, 0, &f);
            if !next.b_zero() && next.minor_ok() {
                return Some(next);
            }
        }
    }
    None
}

fn fix_c(st: &State) -> Option<State> {
    let ring = st.a.ring();
    let (r, c) = (st.a.row_deg(), st.a.col_deg());
    let n = st.a.nrows();
    // col_0 += f col_j leaves the minor and the first row off the pivot alone
    for j in 1..n {
        for f in multipliers(ring, c[0] - c[j]) {
            let next = st.add_col(0, j, &f);
            if !next.c_zero() {
                return Some(next);
            }
        }
    }
    for i in 1..n {
        for f in multipliers(ring, r[0] - r[i]) {
            let next = st.add_row(i, 0, &f);
            if !next.c_zero() && !next.b_zero() && next.minor_ok() {
                return Some(next);
            }
        }
    }
    None
}

/// Bring a square matrix with nonzero determinant into the shape
/// `[[a, b], [c, A']]` with `b`, `c` nonzero and `det A' != 0`.
///
/// Every pivot position with a nonsingular complementary minor is tried; at each
/// one the off-pivot row and column are repaired by at most one elementary
/// operation each.
pub fn prepare(a: &Matrix) -> Result<Prepared> {
    let n = a.nrows();
    if !a.is_square() || n < 2 {
        return Err(Error::Precondition("prepare needs a square matrix of size at least 2".into()));
    }
    a.check_homogeneous()?;
    if a.det().is_zero() {
        return Err(Error::Precondition("determinant is zero".into()));
    }
    let ring = a.ring();
    let start = State {
        a: a.clone(),
        p: Matrix::identity(ring, a.row_deg().to_vec()),
        q: Matrix::identity(ring, a.col_deg().to_vec()),
        ops: 0,
    };
    let mut pivots = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if !a.minor_matrix(i, j).det().is_zero() {
                pivots.push((i, j));
            }
        }
    }
    for (pi, pj) in pivots {
        let mut st = State {
            a: start.a.clone(),
            p: start.p.clone(),
            q: start.q.clone(),
            ops: 0,
        };
        st.swap_rows(0, pi);
        st.swap_cols(0, pj);
        if st.b_zero() {
            match fix_b(&st) {
                Some(next) => st = next,
                None => continue,
            }
        }
        if st.c_zero() {
            match fix_c(&st) {
                Some(next) => st = next,
                None => continue,
            }
        }
        if is_prepared(&st.a) {
            let out = Prepared {
                input: a.clone(),
                matrix: st.a,
                p: st.p,
                q: st.q,
                ops: st.ops,
            };
            if !out.verify() {
                return Err(Error::Consistency("recorded transforms do not reproduce the matrix".into()));
            }
            return Ok(out);
        }
    }
    Err(Error::SearchExhausted("no pivot admits a prepared form".into()))
}

impl Prepared {
    /// `matrix = p * input * q` with unit determinants.
    pub fn verify(&self) -> bool {
        let prod = self.p.mul(&self.input).and_then(|m| m.mul(&self.q));
        let unit = |m: &Matrix| {
            let d = m.det();
            !d.is_zero() && d.is_constant()
        };
        matches!(prod, Ok(m) if m.rows() == self.matrix.rows()) && unit(&self.p) && unit(&self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    #[test]
    fn diagonal_gets_off_diagonal_entries() {
        let r = Ring::standard(32003, 3).unwrap();
        let p = |s: &str| parse_poly(s, &r).unwrap();
        let a = Matrix::from_rows(&r, vec![vec![p("x0"), p("0")], vec![p("0"), p("x1")]], vec![0, 0], vec![1, 1])
            .unwrap();
        let pr = prepare(&a).unwrap();
        assert!(is_prepared(&pr.matrix));
        assert!(pr.verify());
        assert_eq!(pr.ops, 2);
    }

    #[test]
    fn already_prepared_is_untouched() {
        let r = Ring::standard(32003, 4).unwrap();
        let p = |s: &str| parse_poly(s, &r).unwrap();
        let a = Matrix::from_rows(&r, vec![vec![p("x0"), p("x1")], vec![p("x2"), p("x3")]], vec![0, 0], vec![1, 1])
            .unwrap();
        let pr = prepare(&a).unwrap();
        assert_eq!(pr.ops, 0);
        assert_eq!(pr.matrix, a);
        let one = Matrix::from_rows(&r, vec![vec![p("x0")]], vec![0], vec![1]).unwrap();
        assert!(prepare(&one).is_err());
    }
}
