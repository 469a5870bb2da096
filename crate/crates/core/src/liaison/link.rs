use super::certify::QGCert;
use crate::error::{Error, Result};
use crate::fmodule::{ext_from_resolution, is_surjective_on, minimalize, PresentedModule};
use crate::gbasis::ImageSolver;
use crate::hilbert::HilbertData;
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::resolution::{minimal_free_resolution, FreeResolution};

/// One direct link `M -> N = coker(K_M(t) -> C)`.
#[derive(Clone, Debug)]
pub struct LinkStep {
    /// Minimal presentation of `M`.
    pub source: PresentedModule,
    pub cert: QGCert,
    /// `C -> M` on generators (source gens × C gens).
    pub phi: Matrix,
    /// Chain map `D_i -> F_i` lifting `phi`, for `i = 0..=c`.
    pub lifts: Vec<Matrix>,
    pub source_resolution: FreeResolution,
    /// Generators of `E^* = Ext`-cycles inside `F_c^*`.
    pub cycles: Matrix,
    /// `K_M(t) -> C` on generators.
    pub psi: Matrix,
    /// `N = C / im psi`, presented on the generators of `C`.
    pub result: PresentedModule,
    /// Degree window on which the standard sequence was checked.
    pub window: (i64, i64),
}

impl LinkStep {
    /// `C -> N`, the identity on generators.
    pub fn projection(&self) -> Matrix {
        Matrix::identity(self.result.ring(), self.result.gen_degrees().to_vec())
    }

    /// `K_M(t)` with the generator degrees used in `psi`.
    pub fn canonical_part(&self) -> PresentedModule {
        ext_from_resolution(&self.source_resolution, self.cert.codim).twist(self.cert.ext_twist)
    }

    pub fn t(&self) -> i64 {
        self.cert.t
    }

    /// Re-check `0 -> K_M(t) -> C -> N -> 0` on the recorded window.
    pub fn check_sequence(&self) -> bool {
        let k = self.canonical_part();
        let c = &self.cert.module;
        (self.window.0..=self.window.1)
            .all(|j| c.hilbert_function(j) == k.hilbert_function(j) + self.result.hilbert_function(j))
    }
}

/// Joint window `[min a - 2, max r + 2]` over nonzero inputs.
pub fn joint_window(parts: &[&HilbertData]) -> (i64, i64) {
    let lo = parts.iter().filter_map(|h| h.a()).min().unwrap_or(0) - 2;
    let hi = parts.iter().filter_map(|h| h.r()).max().unwrap_or(0) + 2;
    (lo, hi.max(lo))
}

/// `L_C(φ)`: link `M = im φ` by the quasi-Gorenstein module of `cert`.
pub fn link(m: &PresentedModule, cert: &QGCert, phi: &Matrix) -> Result<LinkStep> {
    let ring = m.ring().clone();
    let c_mod = &cert.module;
    if phi.nrows() != m.num_gens() || phi.ncols() != c_mod.num_gens() {
        return Err(Error::Shape("epimorphism does not match generator counts".into()));
    }
    let min = minimalize(m);
    let mm = min.module.clone();
    if mm.is_zero() {
        return Err(Error::ZeroModule);
    }
    let phi0 = min
        .to_new
        .mul(phi)?
        .with_degrees(mm.gen_degrees().to_vec(), c_mod.gen_degrees().to_vec());
    phi0.check_homogeneous()?;
    let image = phi0.mul(c_mod.presentation())?;
    if !(0..image.ncols()).all(|j| mm.is_relation(&image.column(j))) {
        return Err(Error::Precondition("the map C -> M is not well defined".into()));
    }
    if !is_surjective_on(&phi0, &mm) {
        return Err(Error::NotSurjective);
    }
    if mm.hilbert().dim() != c_mod.hilbert().dim() {
        return Err(Error::Precondition("the image must have the dimension of C".into()));
    }
    let c = cert.codim;
    let res_m = minimal_free_resolution(&mm);
    if res_m.length() < c {
        return Err(Error::Consistency("projective dimension below codimension".into()));
    }
    let res_c = &cert.resolution;
    let mut lifts = vec![phi0];
    for i in 1..=c {
        let target = lifts[i - 1].mul(res_c.differential(i))?;
        let solver = ImageSolver::new(res_m.differential(i))?;
        let mut cols = Vec::with_capacity(target.ncols());
        for j in 0..target.ncols() {
            let x = solver
                .lift(&target.column(j))
                .ok_or_else(|| Error::Consistency(format!("chain map lift failed at step {i}")))?;
            cols.push(x);
        }
        lifts.push(columns_to_matrix(&ring, cols, res_m.degrees(i), res_c.degrees(i)));
    }
    let fc_dual: Vec<i64> = res_m.degrees(c).iter().map(|d| -d).collect();
    let cycles = if res_m.length() > c {
        ImageSolver::new(&res_m.differential(c + 1).transpose())?.kernel_minimal()
    } else {
        Matrix::identity(&ring, fc_dual)
    };
    if cycles.ncols() == 0 {
        return Err(Error::Consistency("top Ext of the source vanishes".into()));
    }
    let j = cert.ext_twist;
    let psi = cert
        .alpha
        .mul(&lifts[c].transpose())?
        .mul(&cycles)?
        .with_degrees(
            c_mod.gen_degrees().to_vec(),
            cycles.col_deg().iter().map(|d| d - j).collect(),
        );
    psi.check_homogeneous()?;
    let result = PresentedModule::new(c_mod.presentation().hstack(&psi)?)?;
    if result.is_zero() {
        return Err(Error::DegenerateLink);
    }
    let mut step = LinkStep {
        source: mm,
        cert: cert.clone(),
        phi: lifts[0].clone(),
        lifts,
        source_resolution: res_m,
        cycles,
        psi,
        result,
        window: (0, 0),
    };
    let k = step.canonical_part();
    step.window = joint_window(&[c_mod.hilbert(), k.hilbert(), step.result.hilbert()]);
    if !step.check_sequence() {
        return Err(Error::Consistency("0 -> K_M(t) -> C -> N -> 0 is not exact".into()));
    }
    Ok(step)
}

fn columns_to_matrix(
    ring: &crate::poly::Ring,
    cols: Vec<Vec<Poly>>,
    row_deg: Vec<i64>,
    col_deg: Vec<i64>,
) -> Matrix {
    let mut m = Matrix::zeros(ring, row_deg, col_deg);
    for (j, col) in cols.into_iter().enumerate() {
        for (i, p) in col.into_iter().enumerate() {
            m.set(i, j, p);
        }
    }
    m
}

/// Link twice by the same module; the second link uses the projection `C -> N`.
pub fn link_back(step: &LinkStep) -> Result<LinkStep> {
    link(&step.result, &step.cert, &step.projection())
}
