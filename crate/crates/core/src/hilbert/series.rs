use crate::poly::{Monomial, MAX_VARS};

/// Integer Laurent polynomial `sum c_k t^(low + k)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Laurent {
    pub low: i64,
    pub coeffs: Vec<i64>,
}

impl Laurent {
    pub fn zero() -> Laurent {
        Laurent::default()
    }

    pub fn one() -> Laurent {
        Laurent {
            low: 0,
            coeffs: vec![1],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn normalize(mut self) -> Laurent {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead == self.coeffs.len() {
            return Laurent::zero();
        }
        self.coeffs.drain(..lead);
        self.low += lead as i64;
        self
    }

    pub fn coeff(&self, e: i64) -> i64 {
        let k = e - self.low;
        if k < 0 || k as usize >= self.coeffs.len() {
            0
        } else {
            self.coeffs[k as usize]
        }
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn high(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.low + self.coeffs.len() as i64 - 1)
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(k, &c)| (self.low + k as i64, c))
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = self.high().unwrap().max(other.high().unwrap());
        let coeffs = (low..=high).map(|e| self.coeff(e) + other.coeff(e)).collect();
        Laurent { low, coeffs }.normalize()
    }

    pub fn neg(&self) -> Laurent {
        Laurent {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Laurent) -> Laurent {
        self.add(&other.neg())
    }

    pub fn shift(&self, by: i64) -> Laurent {
        if self.is_zero() {
            return Laurent::zero();
        }
        Laurent {
            low: self.low + by,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        if self.is_zero() || other.is_zero() {
            return Laurent::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Laurent {
            low: self.low + other.low,
            coeffs,
        }
        .normalize()
    }

    /// `1 - t^d`.
    pub fn one_minus_t_pow(d: u32) -> Laurent {
        if d == 0 {
            return Laurent::zero();
        }
        let mut coeffs = vec![0i64; d as usize + 1];
        coeffs[0] = 1;
        coeffs[d as usize] = -1;
        Laurent { low: 0, coeffs }
    }

    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Divide by `(1 - t)`, assuming divisibility.
    pub fn div_one_minus_t(&self) -> Laurent {
        // q_k = sum_{i <= k} c_i
        let mut acc = 0i64;
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for &c in &self.coeffs {
            acc += c;
            coeffs.push(acc);
        }
        debug_assert_eq!(coeffs.last().copied().unwrap_or(0), 0);
        coeffs.pop();
        Laurent {
            low: self.low,
            coeffs,
        }
        .normalize()
    }
}

fn minimize(gens: &mut Vec<Monomial>) {
    gens.sort();
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens.iter() {
        if !out.iter().any(|h| h.divides(g)) {
            out.push(*g);
        }
    }
    *gens = out;
}

fn pairwise_coprime(gens: &[Monomial]) -> bool {
    let mut used = [false; MAX_VARS];
    for g in gens {
        for (v, u) in used.iter_mut().enumerate() {
            if g.exponent(v) > 0 {
                if *u {
                    return false;
                }
                *u = true;
            }
        }
    }
    true
}

/// Numerator of the Hilbert series of `R / (gens)` over `(1 - t)^nvars`.
pub fn monomial_ideal_numerator(gens: &[Monomial]) -> Laurent {
    let mut g = gens.to_vec();
    minimize(&mut g);
    numerator_rec(g)
}

fn numerator_rec(gens: Vec<Monomial>) -> Laurent {
    if gens.is_empty() {
        return Laurent::one();
    }
    if gens.iter().any(|g| g.is_one()) {
        return Laurent::zero();
    }
    if pairwise_coprime(&gens) {
        return gens
            .iter()
            .fold(Laurent::one(), |acc, g| acc.mul(&Laurent::one_minus_t_pow(g.degree())));
    }
    // pivot on the variable occurring in most non-pure-power generators
    let mut counts = [0usize; MAX_VARS];
    for g in &gens {
        let support = (0..MAX_VARS).filter(|&v| g.exponent(v) > 0).count();
        if support > 1 {
            for (v, c) in counts.iter_mut().enumerate() {
                if g.exponent(v) > 0 {
                    *c += 1;
                }
            }
        }
    }
    let v = (0..MAX_VARS).max_by_key(|&v| counts[v]).unwrap();
    let x = Monomial::var(v);
    // N(L) = N(L + (x)) + t * N(L : x)
    let mut plus: Vec<Monomial> = gens.iter().filter(|g| g.exponent(v) == 0).copied().collect();
    plus.push(x);
    let mut colon: Vec<Monomial> = gens.iter().map(|g| g.colon(&x)).collect();
    minimize(&mut plus);
    minimize(&mut colon);
    numerator_rec(plus).add(&numerator_rec(colon).shift(1))
}

/// `C(x, k)` for the polynomial binomial coefficient, any integer `x`.
pub fn binomial(x: i64, k: i64) -> i128 {
    if k < 0 {
        return 0;
    }
    let mut c: i128 = 1;
    for i in 0..k {
        c = c * (x as i128 - i as i128) / (i as i128 + 1);
    }
    c
}

/// Number of monomials of degree `m` in `nvars` variables.
pub fn monomial_count(m: i64, nvars: i64) -> i128 {
    if m < 0 {
        0
    } else if nvars == 0 {
        (m == 0) as i128
    } else {
        binomial(m + nvars - 1, nvars - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numerators() {
        let m = |e: &[u32]| Monomial::from_exponents(e);
        // (x^2, xy): 1 - 2t^2 + t^3
        let n = monomial_ideal_numerator(&[m(&[2, 0]), m(&[1, 1])]);
        assert_eq!(n.coeffs, vec![1, 0, -2, 1]);
        assert_eq!(monomial_ideal_numerator(&[]), Laurent::one());
        assert!(monomial_ideal_numerator(&[Monomial::ONE]).is_zero());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(-1, 2), 1);
        assert_eq!(binomial(-1, 3), -1);
        assert_eq!(binomial(1, 3), 0);
        assert_eq!(monomial_count(2, 3), 6);
    }
}
