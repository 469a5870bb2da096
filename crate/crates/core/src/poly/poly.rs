use std::fmt;

use rand::Rng;
use rustc_hash::FxHashMap;

use super::monomial::Monomial;
use super::ring::Ring;
use super::field::Field;
use crate::error::{Error, Result};

// above this many term products, accumulate in a hash map instead of sorting
const DENSE_PRODUCT: usize = 4096;

fn accumulate(small: &[(Monomial, u32)], big: &[(Monomial, u32)], f: &Field) -> Vec<(Monomial, u32)> {
    let p = f.characteristic() as u64;
    let mut acc: FxHashMap<Monomial, u64> = FxHashMap::default();
    acc.reserve(big.len() * 2);
    for &(ma, ca) in small {
        for &(mb, cb) in big {
            // products stay below 2^32, so many fit in a u64 before reducing
            let e = acc.entry(ma.mul(&mb)).or_insert(0);
            *e += ca as u64 * cb as u64;
            if *e >= 1 << 62 {
                *e %= p;
            }
        }
    }
    let mut out: Vec<(Monomial, u32)> = acc
        .into_iter()
        .filter_map(|(m, c)| {
            let c = (c % p) as u32;
            (c != 0).then_some((m, c))
        })
        .collect();
    out.sort_unstable_by(|a, b| b.0.cmp(&a.0));
    out
}

/// Polynomial over a prime field. Terms are strictly descending in grevlex order
/// and carry nonzero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    ring: Ring,
    terms: Vec<(Monomial, u32)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Ring-checked arithmetic.
pub fn poly_arith(f: &Poly, g: &Poly, op: ArithOp) -> Result<Poly> {
    if f.ring != g.ring {
        return Err(Error::RingMismatch);
    }
    Ok(match op {
        ArithOp::Add => f.add(g),
        ArithOp::Sub => f.sub(g),
        ArithOp::Mul => f.mul(g),
    })
}

impl Poly {
    pub fn zero(ring: &Ring) -> Poly {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Ring) -> Poly {
        Poly::constant(ring, 1)
    }

    pub fn constant(ring: &Ring, c: u32) -> Poly {
        Poly::monomial(ring, c, Monomial::ONE)
    }

    pub fn from_i64(ring: &Ring, c: i64) -> Poly {
        Poly::constant(ring, ring.field().from_i64(c))
    }

    pub fn var(ring: &Ring, i: usize) -> Poly {
        assert!(i < ring.nvars());
        Poly::monomial(ring, 1, Monomial::var(i))
    }

    pub fn monomial(ring: &Ring, c: u32, m: Monomial) -> Poly {
        let c = c % ring.field().characteristic();
        Poly {
            ring: ring.clone(),
            terms: if c == 0 { Vec::new() } else { vec![(m, c)] },
        }
    }

    /// Build from arbitrary (unsorted, possibly repeated) terms.
    pub fn from_terms(ring: &Ring, mut terms: Vec<(Monomial, u32)>) -> Poly {
        let f = *ring.field();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = c % f.characteristic();
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = f.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Poly {
            ring: ring.clone(),
            terms: out,
        }
    }

    /// Build from terms already sorted descending with nonzero coefficients.
    pub(crate) fn from_sorted_terms(ring: &Ring, terms: Vec<(Monomial, u32)>) -> Poly {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    #[inline]
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading(&self) -> Option<&(Monomial, u32)> {
        self.terms.first()
    }

    /// Degree of the leading term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|t| t.0.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|t| t.0.degree() == m.degree()),
        }
    }

    /// Constant coefficient (coefficient of the monomial 1).
    pub fn constant_coeff(&self) -> u32 {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => *c,
            _ => 0,
        }
    }

    pub fn neg(&self) -> Poly {
        let f = self.ring.field();
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|&(m, c)| (m, f.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Poly {
        let f = self.ring.field();
        let c = c % f.characteristic();
        if c == 0 {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|&(m, a)| (m, f.mul(a, c))).collect(),
        }
    }

    pub fn mul_term(&self, c: u32, mono: &Monomial) -> Poly {
        let f = self.ring.field();
        let c = c % f.characteristic();
        if c == 0 {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|&(m, a)| (m.mul(mono), f.mul(a, c)))
                .collect(),
        }
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        debug_assert!(self.ring == other.ring);
        let f = self.ring.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (a, b) = (&self.terms, &other.terms);
        let (mut i, mut j) = (0, 0);
        let sgn = |c: u32| if negate { f.neg(c) } else { c };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b[j].0, sgn(b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = f.add(a[i].1, sgn(b[j].1));
                    if c != 0 {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|&(m, c)| (m, sgn(c))));
        Poly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.merge(other, true)
    }

    /// `self - c * mono * other`, the elementary reduction step.
    pub fn sub_scaled(&self, c: u32, mono: &Monomial, other: &Poly) -> Poly {
        self.sub(&other.mul_term(c, mono))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert!(self.ring == other.ring);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ring);
        }
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.terms.len() == 1 {
            let (m, c) = small.terms[0];
            return big.mul_term(c, &m);
        }
        let f = *self.ring.field();
        if small.terms.len() * big.terms.len() > DENSE_PRODUCT {
            return Poly {
                ring: self.ring.clone(),
                terms: accumulate(&small.terms, &big.terms, &f),
            };
        }
        let mut prods = Vec::with_capacity(small.terms.len() * big.terms.len());
        for &(ma, ca) in &small.terms {
            for &(mb, cb) in &big.terms {
                prods.push((ma.mul(&mb), f.mul(ca, cb)));
            }
        }
        prods.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(prods.len() / 2 + 1);
        for (m, c) in prods {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = f.add(last.1, c),
                _ => {
                    if let Some(last) = out.last() {
                        if last.1 == 0 {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        out.retain(|t| t.1 != 0);
        Poly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut r = Poly::one(&self.ring);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Make the leading coefficient 1.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => self.clone(),
            Some(&(_, c)) => self.scale(self.ring.field().inv(c)),
        }
    }

    /// Substitute polynomials for the variables.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.ring.nvars());
        let mut acc = Poly::zero(&self.ring);
        for &(m, c) in &self.terms {
            let mut t = Poly::constant(&self.ring, c);
            for (i, img) in images.iter().enumerate() {
                let e = m.exponent(i);
                if e > 0 {
                    t = t.mul(&img.pow(e));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Uniformly random homogeneous polynomial of degree `d` (dense support).
    pub fn random_homogeneous<R: Rng + ?Sized>(ring: &Ring, d: i64, rng: &mut R) -> Poly {
        if d < 0 {
            return Poly::zero(ring);
        }
        let p = ring.field().characteristic();
        let terms = Monomial::all_of_degree(ring.nvars(), d as u32)
            .into_iter()
            .map(|m| (m, rng.gen_range(0..p)))
            .filter(|t| t.1 != 0)
            .collect();
        Poly::from_sorted_terms(ring, terms)
    }

    /// Random nonzero constant.
    pub fn random_unit<R: Rng + ?Sized>(ring: &Ring, rng: &mut R) -> u32 {
        rng.gen_range(1..ring.field().characteristic())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::parse::format_poly(self))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly::add(self, rhs)
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        Poly::sub(self, rhs)
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly::mul(self, rhs)
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}
