use super::{minimalize, PresentedModule};
use crate::error::{Error, Result};
use crate::gbasis::ImageSolver;
use crate::matrix::Matrix;
use crate::resolution::{minimal_free_resolution, FreeResolution};

/// Cohomology of the dual complex at `F_i^*`, minimally presented.
pub fn ext_from_resolution(res: &FreeResolution, i: usize) -> PresentedModule {
    let ring = res.ring();
    if i > res.length() {
        return PresentedModule::zero(ring);
    }
    let dual_deg: Vec<i64> = res.degrees(i).iter().map(|d| -d).collect();
    // cycles: kernel of d_{i+1}^T : F_i^* -> F_{i+1}^*
    let cycles = if i < res.length() {
        ImageSolver::new(&res.differential(i + 1).transpose())
            .expect("homogeneous")
            .kernel_minimal()
    } else {
        Matrix::identity(ring, dual_deg.clone())
    };
    if cycles.ncols() == 0 {
        return PresentedModule::zero(ring);
    }
    let relations = if i == 0 {
        ImageSolver::new(&cycles).expect("homogeneous").kernel_minimal()
    } else {
        let joint = cycles
            .hstack(&res.differential(i).transpose())
            .expect("same target");
        let k = ImageSolver::new(&joint).expect("homogeneous").kernel_minimal();
        let top: Vec<usize> = (0..cycles.ncols()).collect();
        k.select_rows(&top)
    };
    let pres = relations.with_degrees(cycles.col_deg().to_vec(), relations.col_deg().to_vec());
    minimalize(&PresentedModule::from_checked(pres, false)).module
}

/// `Ext^i_R(M, R)`.
pub fn ext_module(m: &PresentedModule, i: usize) -> PresentedModule {
    ext_from_resolution(&minimal_free_resolution(m), i)
}

/// `K_M = Ext^{n+1-d}(M, R)(-n-1)`.
pub fn canonical_module(m: &PresentedModule) -> Result<PresentedModule> {
    let d = m.hilbert().dim().ok_or(Error::ZeroModule)?;
    let nv = m.ring().nvars();
    Ok(ext_module(m, nv - d).twist(-(nv as i64)))
}

/// `M^* = Hom(M, R)` together with its embedding into `F_0^*`.
#[derive(Clone, Debug)]
pub struct Dualized {
    pub module: PresentedModule,
    /// Columns: generators of `M^*` inside `F_0^*` of the minimal presentation.
    pub embedding: Matrix,
}

pub fn dual_module(m: &PresentedModule) -> Dualized {
    let mm = minimalize(m).module;
    let at = mm.presentation().transpose();
    let k = ImageSolver::new(&at).expect("homogeneous").kernel_minimal();
    let rel = ImageSolver::new(&k).expect("homogeneous").kernel_minimal();
    Dualized {
        module: PresentedModule::from_checked(rel, true),
        embedding: k,
    }
}

/// `M^× = coker(Hom(π, R))` for the minimal epimorphism `π: F -> M`.
pub fn auslander_dual(m: &PresentedModule) -> Result<PresentedModule> {
    let mm = minimalize(m).module;
    if mm.presentation().ncols() == 0 {
        return Err(Error::FreeModule("the Auslander dual needs a non-free module".into()));
    }
    let at = mm.presentation().transpose();
    let k = ImageSolver::new(&at)?.kernel_minimal();
    let pres = k.with_degrees(at.col_deg().to_vec(), k.col_deg().to_vec());
    Ok(minimalize(&PresentedModule::from_checked(pres, false)).module)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, Poly, Ring};

    fn ring(n: usize) -> Ring {
        Ring::standard(32003, n).unwrap()
    }

    #[test]
    fn ext_of_hypersurface() {
        let r = ring(3);
        let m = PresentedModule::cyclic(&r, &[Poly::var(&r, 0)]).unwrap();
        let e1 = ext_module(&m, 1);
        // (R/(x))(1)
        assert_eq!(e1.gen_degrees(), &[-1]);
        for j in -3..5 {
            assert_eq!(e1.hilbert_function(j), m.twist(1).hilbert_function(j));
        }
        assert!(ext_module(&m, 0).is_zero());
        assert!(ext_module(&m, 2).is_zero());
    }

    #[test]
    fn ext_of_codim_two() {
        let r = ring(3);
        let m = PresentedModule::cyclic(&r, &[Poly::var(&r, 0), Poly::var(&r, 1)]).unwrap();
        let e2 = ext_module(&m, 2);
        for j in -4..5 {
            assert_eq!(e2.hilbert_function(j), m.twist(2).hilbert_function(j));
        }
    }

    #[test]
    fn ext_of_free() {
        let r = ring(3);
        let m = PresentedModule::free(&r, vec![0]);
        let e0 = ext_module(&m, 0);
        assert_eq!(e0.gen_degrees(), &[0]);
        assert!(e0.presentation().ncols() == 0);
        assert!(ext_module(&m, 1).is_zero());
    }

    #[test]
    fn canonical_modules() {
        let r = ring(3);
        let kr = canonical_module(&PresentedModule::free(&r, vec![0])).unwrap();
        assert_eq!(kr.gen_degrees(), &[3]);
        let f = parse_poly("x0^2 + x1*x2", &r).unwrap();
        let m = PresentedModule::cyclic(&r, &[f]).unwrap();
        let k = canonical_module(&m).unwrap();
        // (R/(f))(d - 3)
        for j in -3..6 {
            assert_eq!(k.hilbert_function(j), m.twist(2 - 3).hilbert_function(j));
        }
        assert!(canonical_module(&PresentedModule::zero(&r)).is_err());
    }

    #[test]
    fn auslander_duals() {
        let r = ring(2);
        let m = PresentedModule::cyclic(&r, &[Poly::var(&r, 0)]).unwrap();
        let d = auslander_dual(&m).unwrap();
        assert_eq!(d.gen_degrees(), &[0]);
        assert_eq!(d.presentation().ncols(), 0);
        assert!(auslander_dual(&PresentedModule::free(&r, vec![0])).is_err());
    }
}
