use super::PresentedModule;
use crate::gbasis::GBasis;
use crate::matrix::Matrix;
use crate::poly::Poly;

/// Minimal presentation together with the comparison maps to the input.
#[derive(Clone, Debug)]
pub struct Minimalized {
    pub module: PresentedModule,
    /// New generators × old generators: image of each old generator.
    pub to_new: Matrix,
    /// Old generators kept, in order; new generator `k` is old generator `kept[k]`.
    pub kept: Vec<usize>,
}

impl Minimalized {
    /// Old generators × new generators (inclusion of the kept generators).
    pub fn to_old(&self) -> Matrix {
        let old = self.to_new.col_deg().to_vec();
        let ring = self.module.ring();
        let mut m = Matrix::zeros(ring, old, self.module.gen_degrees().to_vec());
        for (k, &i) in self.kept.iter().enumerate() {
            m.set(i, k, Poly::one(ring));
        }
        m
    }
}

/// Remove unit entries and redundant relations.
pub fn minimalize(m: &PresentedModule) -> Minimalized {
    let ring = m.ring().clone();
    let f = *ring.field();
    let a0 = m.presentation();
    let r = a0.nrows();
    let mut a = a0.clone();
    let mut kept: Vec<usize> = (0..r).collect();
    let mut t = Matrix::identity(&ring, a0.row_deg().to_vec());

    loop {
        let mut pivot = None;
        'search: for j in 0..a.ncols() {
            for i in 0..a.nrows() {
                if a.get(i, j).is_constant() {
                    pivot = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        let u = a.get(pi, pj).constant_coeff();
        let uinv = f.inv(u);
        // clear row pi using column pj
        for l in 0..a.ncols() {
            if l == pj || a.get(pi, l).is_zero() {
                continue;
            }
            let c = a.get(pi, l).scale(uinv);
            for k in 0..a.nrows() {
                let v = a.get(k, pj);
                if v.is_zero() {
                    continue;
                }
                let nv = a.get(k, l).sub(&v.mul(&c));
                a.set(k, l, nv);
            }
        }
        // e_pi = -u^{-1} sum_{k != pi} a[k][pj] e_k
        for c in 0..t.ncols() {
            let coef = t.get(pi, c).clone();
            if coef.is_zero() {
                continue;
            }
            for k in 0..a.nrows() {
                if k == pi {
                    continue;
                }
                let v = a.get(k, pj);
                if v.is_zero() {
                    continue;
                }
                let add = v.mul(&coef).scale(f.neg(uinv));
                let nv = t.get(k, c).add(&add);
                t.set(k, c, nv);
            }
        }
        let rows: Vec<usize> = (0..a.nrows()).filter(|&k| k != pi).collect();
        let cols: Vec<usize> = (0..a.ncols()).filter(|&l| l != pj).collect();
        a = a.select_rows(&rows).select_cols(&cols);
        t = t.select_rows(&rows);
        kept.remove(pi);
    }

    let nonzero: Vec<usize> = (0..a.ncols()).filter(|&j| !a.is_column_zero(j)).collect();
    a = a.select_cols(&nonzero);
    if a.ncols() > 0 {
        let gb = GBasis::of_image(&a).expect("homogeneous");
        a = a.select_cols(gb.minimal_indices());
    }
    Minimalized {
        module: PresentedModule::from_checked(a, true),
        to_new: t,
        kept,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, Ring};

    #[test]
    fn unit_presentation_is_zero() {
        let r = Ring::standard(32003, 2).unwrap();
        let m = PresentedModule::new(Matrix::identity(&r, vec![0])).unwrap();
        let mm = minimalize(&m);
        assert_eq!(mm.module.num_gens(), 0);
        assert!(m.is_zero());
    }

    #[test]
    fn pivots_on_unit() {
        let r = Ring::new(32003, vec!["x".into(), "y".into(), "z".into()]).unwrap();
        let p = |s: &str| parse_poly(s, &r).unwrap();
        // generators in degrees 0 and 1; relations in degrees 1 and 2
        let a = Matrix::from_rows(&r, vec![vec![p("x"), p("0")], vec![p("1"), p("y")]], vec![0, 1], vec![1, 2])
            .unwrap();
        let m = PresentedModule::new(a).unwrap();
        let mm = minimalize(&m);
        assert_eq!(mm.module.num_gens(), 1);
        assert_eq!(mm.module.presentation().ncols(), 1);
        assert_eq!(mm.module.presentation().get(0, 0), &p("-x*y"));
        for j in -1..6 {
            assert_eq!(m.hilbert_function(j), mm.module.hilbert_function(j));
        }
    }

    #[test]
    fn already_minimal() {
        let r = Ring::standard(32003, 2).unwrap();
        let m = PresentedModule::cyclic(&r, &[Poly::var(&r, 0)]).unwrap();
        assert_eq!(minimalize(&m).module, m);
    }
}
