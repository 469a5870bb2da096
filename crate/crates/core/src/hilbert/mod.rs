//! Hilbert functions, polynomials and the invariants derived from them.

mod cohomology;
mod series;

use serde::{Deserialize, Serialize};

use crate::fmodule::PresentedModule;
use crate::gbasis::GBasis;
use crate::poly::Monomial;

pub use cohomology::{
    is_cohen_macaulay, is_unmixed, local_cohomology_hf, riemann_roch_check, Cohomology,
};
pub use series::{binomial, monomial_count, monomial_ideal_numerator, Laurent};

/// Hilbert series `numerator / (1 - t)^nvars` and derived invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertData {
    nvars: usize,
    numerator: Laurent,
    reduced: Laurent,
    dim: Option<usize>,
    h: Vec<i64>,
    r: Option<i64>,
    a: Option<i64>,
}

/// Serializable summary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSummary {
    pub numerator: Vec<(i64, i64)>,
    pub dim: Option<usize>,
    pub degree: i64,
    pub h: Vec<i64>,
    pub r: Option<i64>,
    pub a: Option<i64>,
}

impl HilbertData {
    pub fn from_numerator(nvars: usize, numerator: Laurent) -> HilbertData {
        let mut reduced = numerator.clone();
        let mut dim = None;
        if !numerator.is_zero() {
            let mut d = nvars;
            while d > 0 && reduced.eval_at_one() == 0 {
                reduced = reduced.div_one_minus_t();
                d -= 1;
            }
            dim = Some(d);
        }
        let a = if numerator.is_zero() {
            None
        } else {
            Some(numerator.low)
        };
        let mut hd = HilbertData {
            nvars,
            numerator,
            reduced,
            dim,
            h: Vec::new(),
            r: None,
            a,
        };
        if let Some(d) = dim {
            // h_i = Δ^{d-1-i} p evaluated at 0
            let d = d as i64;
            let vals: Vec<i64> = (0..d.max(1)).map(|j| hd.hilbert_poly(j)).collect();
            let mut diffs = vals;
            let mut h = vec![0i64; d as usize];
            for i in (0..d).rev() {
                h[i as usize] = diffs[0];
                diffs = diffs.windows(2).map(|w| w[1] - w[0]).collect();
            }
            if d == 0 {
                h = Vec::new();
            }
            hd.h = h;
            hd.r = Some(hd.compute_r());
        }
        hd
    }

    /// Series of `coker` read off the leading terms of the relation module.
    pub fn from_basis(gb: &GBasis) -> HilbertData {
        let nvars = gb.ring().nvars();
        let mut per_comp: Vec<Vec<Monomial>> = vec![Vec::new(); gb.rank()];
        for (c, m) in gb.leading_terms() {
            per_comp[c].push(m);
        }
        let mut num = Laurent::zero();
        for (c, gens) in per_comp.iter().enumerate() {
            num = num.add(&monomial_ideal_numerator(gens).shift(gb.twists()[c]));
        }
        HilbertData::from_numerator(nvars, num)
    }

    pub fn of(m: &PresentedModule) -> &HilbertData {
        m.hilbert()
    }

    pub fn numerator(&self) -> &Laurent {
        &self.numerator
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Krull dimension; `None` for the zero module.
    pub fn dim(&self) -> Option<usize> {
        self.dim
    }

    /// Codimension `n + 1 - dim`; `None` for the zero module.
    pub fn codim(&self) -> Option<usize> {
        self.dim.map(|d| self.nvars - d)
    }

    /// Multiplicity (length for modules of finite length).
    pub fn degree(&self) -> i64 {
        if self.is_zero() {
            0
        } else {
            self.reduced.eval_at_one()
        }
    }

    /// `h_0, ..., h_{d-1}`.
    pub fn h_coefficients(&self) -> &[i64] {
        &self.h
    }

    pub fn h1(&self) -> Option<i64> {
        self.h.get(1).copied()
    }

    /// Index of regularity.
    pub fn r(&self) -> Option<i64> {
        self.r
    }

    /// Initial degree.
    pub fn a(&self) -> Option<i64> {
        self.a
    }

    pub fn hilbert_function(&self, j: i64) -> i64 {
        self.numerator
            .terms()
            .map(|(k, c)| c as i128 * monomial_count(j - k, self.nvars as i64))
            .sum::<i128>() as i64
    }

    pub fn hilbert_poly(&self, j: i64) -> i64 {
        let d = match self.dim {
            None | Some(0) => return 0,
            Some(d) => d as i64,
        };
        self.reduced
            .terms()
            .map(|(k, c)| c as i128 * binomial(j - k + d - 1, d - 1))
            .sum::<i128>() as i64
    }

    fn compute_r(&self) -> i64 {
        let d = self.dim.unwrap_or(0) as i64;
        let top = self.reduced.high().unwrap_or(0) - d;
        let mut j = top;
        loop {
            if self.hilbert_function(j) != self.hilbert_poly(j) {
                return j + 1;
            }
            j -= 1;
            if j < top - 10_000 {
                // h == p everywhere is impossible for a nonzero polynomial
                unreachable!("index of regularity search diverged");
            }
        }
    }

    /// Window `[a - 2, r + 2]` used for identity checks.
    pub fn window(&self) -> Option<(i64, i64)> {
        Some((self.a? - 2, self.r? + 2))
    }

    pub fn summary(&self) -> HilbertSummary {
        HilbertSummary {
            numerator: self.numerator.terms().collect(),
            dim: self.dim,
            degree: self.degree(),
            h: self.h.clone(),
            r: self.r,
            a: self.a,
        }
    }
}

/// Hilbert data of a module.
pub fn hilbert_data(m: &PresentedModule) -> HilbertData {
    m.hilbert().clone()
}
