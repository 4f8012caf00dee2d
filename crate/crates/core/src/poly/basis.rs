use std::collections::HashMap;

use super::{Monomial, MAX_VARS};

/// All monomials of one degree, in descending grlex order (so `x0^d` comes first).
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    nvars: usize,
    degree: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialBasis {
    pub fn new(nvars: usize, degree: u32) -> Self {
        assert!((1..=MAX_VARS).contains(&nvars), "between 1 and {MAX_VARS} variables");
        let mut monomials = Vec::new();
        let mut exps = vec![0u32; nvars];
        fill(&mut exps, 0, degree, &mut monomials);
        let index = monomials.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        MonomialBasis { nvars, degree, monomials, index }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

fn fill(exps: &mut [u32], pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if pos == exps.len() - 1 {
        exps[pos] = remaining;
        out.push(Monomial::from_exps(exps).expect("bounded exponents"));
        return;
    }
    for e in (0..=remaining).rev() {
        exps[pos] = e;
        fill(exps, pos + 1, remaining - e, out);
    }
    exps[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn sizes_match_binomials() {
        for k in 0..=12u32 {
            assert_eq!(MonomialBasis::new(3, k).len() as u64, ((k + 1) * (k + 2) / 2) as u64);
            assert_eq!(MonomialBasis::new(5, k).len() as u64, binom(k as u64 + 4, 4));
        }
    }

    #[test]
    fn descending_grlex() {
        let b = MonomialBasis::new(3, 4);
        assert!(b.monomials().windows(2).all(|w| w[0] > w[1]));
        assert_eq!(b.monomials()[0], Monomial::from_exps(&[4, 0, 0]).unwrap());
        assert_eq!(b.index_of(&Monomial::from_exps(&[0, 0, 4]).unwrap()), Some(14));
    }
}
