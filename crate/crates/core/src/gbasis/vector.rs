use std::cmp::Ordering;

use crate::poly::{Field, Monomial, Poly, Ring};

/// One term `coeff * mono * e_comp` of a module element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Term {
    pub comp: u32,
    pub mono: Monomial,
    pub coeff: u32,
}

/// Position over term: a smaller component index is larger, ties broken by grevlex.
#[inline]
pub fn cmp_pos(a: (u32, &Monomial), b: (u32, &Monomial)) -> Ordering {
    match b.0.cmp(&a.0) {
        Ordering::Equal => a.1.cmp(b.1),
        o => o,
    }
}

/// Sparse module element, terms strictly descending.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SVec {
    pub terms: Vec<Term>,
}

impl SVec {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn from_polys(comps: &[Poly]) -> SVec {
        let mut terms = Vec::new();
        for (i, p) in comps.iter().enumerate() {
            for &(m, c) in p.terms() {
                terms.push(Term {
                    comp: i as u32,
                    mono: m,
                    coeff: c,
                });
            }
        }
        SVec { terms }
    }

    /// Place the polynomials at components `offset..` instead of `0..`.
    pub fn from_polys_at(comps: &[Poly], offset: u32) -> SVec {
        let mut v = SVec::from_polys(comps);
        for t in v.terms.iter_mut() {
            t.comp += offset;
        }
        v
    }

    pub fn to_polys(&self, ring: &Ring, rank: usize) -> Vec<Poly> {
        let mut buckets: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); rank];
        for t in &self.terms {
            buckets[t.comp as usize].push((t.mono, t.coeff));
        }
        buckets
            .into_iter()
            .map(|b| Poly::from_sorted_terms(ring, b))
            .collect()
    }

    /// Homogeneous degree, assuming homogeneity.
    pub fn degree(&self, twists: &[i64]) -> Option<i64> {
        self.lead()
            .map(|t| t.mono.degree() as i64 + twists[t.comp as usize])
    }

    pub fn is_homogeneous(&self, twists: &[i64]) -> bool {
        match self.degree(twists) {
            None => true,
            Some(d) => self
                .terms
                .iter()
                .all(|t| t.mono.degree() as i64 + twists[t.comp as usize] == d),
        }
    }

    pub fn scale(&mut self, c: u32, f: &Field) {
        for t in self.terms.iter_mut() {
            t.coeff = f.mul(t.coeff, c);
        }
    }

    pub fn make_monic(&mut self, f: &Field) {
        if let Some(t) = self.terms.first() {
            if t.coeff != 1 {
                let inv = f.inv(t.coeff);
                self.scale(inv, f);
            }
        }
    }

    /// `self - c * mono * g`.
    pub fn sub_mul(&self, c: u32, mono: &Monomial, g: &SVec, f: &Field) -> SVec {
        let a = &self.terms;
        let mut out = Vec::with_capacity(a.len() + g.terms.len());
        let (mut i, mut j) = (0, 0);
        let shifted = |t: &Term| Term {
            comp: t.comp,
            mono: t.mono.mul(mono),
            coeff: f.neg(f.mul(t.coeff, c)),
        };
        while i < a.len() && j < g.terms.len() {
            let b = shifted(&g.terms[j]);
            match cmp_pos((a[i].comp, &a[i].mono), (b.comp, &b.mono)) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    let s = f.add(a[i].coeff, b.coeff);
                    if s != 0 {
                        out.push(Term {
                            comp: a[i].comp,
                            mono: a[i].mono,
                            coeff: s,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(g.terms[j..].iter().map(shifted));
        SVec { terms: out }
    }

    /// Keep components in `lo..hi`, renumbered from zero.
    pub fn project(&self, lo: u32, hi: u32) -> SVec {
        SVec {
            terms: self
                .terms
                .iter()
                .filter(|t| t.comp >= lo && t.comp < hi)
                .map(|t| Term {
                    comp: t.comp - lo,
                    ..*t
                })
                .collect(),
        }
    }
}
