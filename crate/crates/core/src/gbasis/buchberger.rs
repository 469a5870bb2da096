use super::vector::SVec;
use crate::poly::{Field, Monomial};

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    deg: i64,
}

/// Output of the homogeneous Buchberger run.
pub(crate) struct Run {
    pub basis: Vec<SVec>,
    /// Indices of the input generators that are minimal generators.
    pub minimal: Vec<usize>,
}

/// Lead lookup by component.
#[derive(Debug, Clone, Default)]
pub(crate) struct LeadIndex {
    by_comp: Vec<Vec<(Monomial, usize)>>,
}

impl LeadIndex {
    pub fn insert(&mut self, comp: u32, mono: Monomial, idx: usize) {
        let c = comp as usize;
        if self.by_comp.len() <= c {
            self.by_comp.resize(c + 1, Vec::new());
        }
        self.by_comp[c].push((mono, idx));
    }

    pub fn find_divisor(&self, comp: u32, mono: &Monomial, skip: Option<usize>) -> Option<usize> {
        self.by_comp
            .get(comp as usize)?
            .iter()
            .find(|(m, i)| Some(*i) != skip && m.divides(mono))
            .map(|&(_, i)| i)
    }

    pub fn comp(&self, comp: u32) -> &[(Monomial, usize)] {
        self.by_comp
            .get(comp as usize)
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }
}

/// Full normal form of `v` against monic `basis`.
pub(crate) fn normal_form(
    v: &SVec,
    basis: &[SVec],
    index: &LeadIndex,
    skip: Option<usize>,
    f: &Field,
) -> SVec {
    let mut terms = v.terms.clone();
    let mut pos = 0;
    while pos < terms.len() {
        let t = terms[pos];
        match index.find_divisor(t.comp, &t.mono, skip) {
            Some(gi) => {
                let g = &basis[gi];
                let q = g.terms[0].mono.quotient_of(&t.mono);
                let tail = SVec {
                    terms: terms[pos..].to_vec(),
                }
                .sub_mul(t.coeff, &q, g, f);
                terms.truncate(pos);
                terms.extend(tail.terms);
            }
            None => pos += 1,
        }
    }
    SVec { terms }
}

fn s_vector(a: &SVec, b: &SVec, lcm: &Monomial, f: &Field) -> SVec {
    let ta = a.terms[0].mono.quotient_of(lcm);
    let tb = b.terms[0].mono.quotient_of(lcm);
    let lhs = SVec::default().sub_mul(f.neg(1), &ta, a, f);
    lhs.sub_mul(1, &tb, b, f)
}

struct State<'a> {
    twists: &'a [i64],
    f: Field,
    basis: Vec<SVec>,
    index: LeadIndex,
    pairs: Vec<Pair>,
}

impl State<'_> {
    fn add(&mut self, mut h: SVec) {
        h.make_monic(&self.f);
        let hl = h.terms[0];
        let hidx = self.basis.len();
        let f_deg = |m: &Monomial| m.degree() as i64 + self.twists[hl.comp as usize];

        // chain criterion on existing pairs
        let basis = &self.basis;
        self.pairs.retain(|p| {
            if basis[p.i].terms[0].comp != hl.comp || !hl.mono.divides(&p.lcm) {
                return true;
            }
            let li = basis[p.i].terms[0].mono.lcm(&hl.mono);
            let lj = basis[p.j].terms[0].mono.lcm(&hl.mono);
            li == p.lcm || lj == p.lcm
        });

        let mut cands: Vec<Pair> = self
            .index
            .comp(hl.comp)
            .iter()
            .map(|&(m, i)| {
                let l = m.lcm(&hl.mono);
                Pair {
                    i,
                    j: hidx,
                    lcm: l,
                    deg: f_deg(&l),
                }
            })
            .collect();
        // drop pairs whose lcm is a proper multiple of another new lcm
        let lcms: Vec<Monomial> = cands.iter().map(|p| p.lcm).collect();
        cands.retain(|p| !lcms.iter().any(|l| *l != p.lcm && l.divides(&p.lcm)));
        // one pair per lcm
        let mut seen: Vec<Monomial> = Vec::new();
        cands.retain(|p| {
            if seen.contains(&p.lcm) {
                false
            } else {
                seen.push(p.lcm);
                true
            }
        });
        self.pairs.extend(cands);
        self.index.insert(hl.comp, hl.mono, hidx);
        self.basis.push(h);
    }
}

/// Homogeneous degree-by-degree Buchberger with minimal-generator selection.
/// Inputs must be homogeneous and nonzero-checked by the caller.
pub(crate) fn buchberger(gens: &[SVec], twists: &[i64], f: Field) -> Run {
    let mut order: Vec<usize> = (0..gens.len()).filter(|&i| !gens[i].is_zero()).collect();
    order.sort_by_key(|&i| gens[i].degree(twists).unwrap());
    let mut st = State {
        twists,
        f,
        basis: Vec::new(),
        index: LeadIndex::default(),
        pairs: Vec::new(),
    };
    let mut minimal = Vec::new();
    let mut next_gen = 0;
    loop {
        let pd = st.pairs.iter().map(|p| p.deg).min();
        let gd = order.get(next_gen).map(|&i| gens[i].degree(twists).unwrap());
        let d = match (pd, gd) {
            (None, None) => break,
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };
        let (batch, rest): (Vec<Pair>, Vec<Pair>) = st.pairs.drain(..).partition(|p| p.deg == d);
        st.pairs = rest;
        for p in batch {
            let s = s_vector(&st.basis[p.i], &st.basis[p.j], &p.lcm, &f);
            let nf = normal_form(&s, &st.basis, &st.index, None, &f);
            if !nf.is_zero() {
                st.add(nf);
            }
        }
        while next_gen < order.len() && gens[order[next_gen]].degree(twists) == Some(d) {
            let gi = order[next_gen];
            next_gen += 1;
            let nf = normal_form(&gens[gi], &st.basis, &st.index, None, &f);
            if !nf.is_zero() {
                minimal.push(gi);
                st.add(nf);
            }
        }
    }
    // tail reduction gives the reduced basis
    let mut basis = st.basis;
    for k in 0..basis.len() {
        let lead = basis[k].terms[0];
        let tail = SVec {
            terms: basis[k].terms[1..].to_vec(),
        };
        let red = normal_form(&tail, &basis, &st.index, Some(k), &f);
        let mut terms = vec![lead];
        terms.extend(red.terms);
        basis[k] = SVec { terms };
    }
    minimal.sort_unstable();
    Run { basis, minimal }
}
