//! Sparse multivariate polynomials over a [`FieldKind`].
//!
//! Monomials are compared in graded lexicographic order with `x0 > x1 > …`; every coordinate
//! vector and printed form in the crate follows that order.

mod basis;
mod parse;
pub mod series;
pub mod univariate;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use basis::MonomialBasis;
pub use parse::{parse, parse_homogeneous, VarSet};
pub use univariate::{univariate_factor_multiplicities, BinaryFactorization};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldKind};

/// Largest supported number of variables.
pub const MAX_VARS: usize = 16;

/// An exponent vector.  The derived order is grlex: total degree first, then lexicographic
/// with earlier variables larger.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { degree: 0, exps: [0; MAX_VARS] }
    }

    pub fn var(i: usize) -> Self {
        let mut m = Monomial::one();
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    pub fn from_exps(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::TooManyVariables(exps.len()));
        }
        let mut m = Monomial::one();
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = u16::try_from(e).map_err(|_| Error::OutOfRange(format!("exponent {e}")))?;
            m.degree += e;
        }
        Ok(m)
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exps(&self, nvars: usize) -> &[u16] {
        &self.exps[..nvars]
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] += other.exps[i];
        }
        m.degree += other.degree;
        m
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut m = *other;
        for i in 0..MAX_VARS {
            m.exps[i] -= self.exps[i];
        }
        m.degree -= self.degree;
        Some(m)
    }

    fn with_exp(mut self, i: usize, e: u16) -> Monomial {
        self.degree = self.degree - self.exps[i] as u32 + e as u32;
        self.exps[i] = e;
        self
    }
}

/// A polynomial in `nvars` variables; no stored coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    field: FieldKind,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl Polynomial {
    pub fn zero(field: FieldKind, nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        Polynomial { nvars, field, terms: BTreeMap::new() }
    }

    pub fn constant(field: FieldKind, nvars: usize, c: FieldElement) -> Self {
        Polynomial::monomial(field, nvars, Monomial::one(), c)
    }

    pub fn one(field: FieldKind, nvars: usize) -> Self {
        Polynomial::constant(field, nvars, field.one())
    }

    pub fn var(field: FieldKind, nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        Polynomial::monomial(field, nvars, Monomial::var(i), field.one())
    }

    pub fn monomial(field: FieldKind, nvars: usize, m: Monomial, c: FieldElement) -> Self {
        let mut p = Polynomial::zero(field, nvars);
        if !c.is_zero() {
            assert_eq!(c.kind(), field, "coefficient field must match");
            p.terms.insert(m, c);
        }
        p
    }

    /// Sums like terms; zero coefficients are dropped.
    pub fn from_terms(field: FieldKind, nvars: usize, terms: impl IntoIterator<Item = (Monomial, FieldElement)>) -> Self {
        let mut p = Polynomial::zero(field, nvars);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    /// Linear form Σ c_i x_i.
    pub fn linear_form(field: FieldKind, coeffs: &[FieldElement]) -> Self {
        Polynomial::from_terms(field, coeffs.len(), coeffs.iter().enumerate().map(|(i, c)| (Monomial::var(i), c.clone())))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending grlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElement {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Largest total degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys();
        match it.next() {
            None => true,
            Some(first) => it.all(|m| m.degree == first.degree),
        }
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree == d)
    }

    pub fn check_homogeneous(&self, d: u32) -> Result<()> {
        if self.is_homogeneous_of(d) {
            Ok(())
        } else {
            Err(Error::NotHomogeneous(d))
        }
    }

    /// Leading term in grlex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &FieldElement)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Monomial, c: &FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_same_ring(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch(format!("{} vs {} variables", self.nvars, other.nvars)));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, &-c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        let mut out = Polynomial::zero(self.field, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.field, self.nvars);
        }
        Polynomial { nvars: self.nvars, field: self.field, terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial { nvars: self.nvars, field: self.field, terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.field, self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Result<Polynomial> {
        if i >= self.nvars {
            return Err(Error::OutOfRange(format!("variable index {i} for {} variables", self.nvars)));
        }
        let mut out = Polynomial::zero(self.field, self.nvars);
        for (m, c) in &self.terms {
            let e = m.exps[i];
            if e == 0 {
                continue;
            }
            out.add_term(m.with_exp(i, e - 1), &(c * &self.field.from_i64(e as i64)));
        }
        Ok(out)
    }

    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.nvars).map(|i| self.partial(i).expect("index in range")).collect()
    }

    /// Substitutes `images[i]` for variable `i`.  The images share a ring, which may differ
    /// from this polynomial's.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!("{} images for {} variables", images.len(), self.nvars)));
        }
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        let (tn, tf) = (first.nvars, first.field);
        for im in images {
            if im.nvars != tn || im.field != tf {
                return Err(Error::DimensionMismatch("images must share one ring".into()));
            }
        }
        if tf != self.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, tf)));
        }
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|im| vec![Polynomial::one(tf, tn), im.clone()]).collect();
        let mut out = Polynomial::zero(tf, tn);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(tf, tn, c.clone());
            for i in 0..self.nvars {
                let e = m.exps[i] as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e];
            }
            for (mm, cc) in &t.terms {
                out.add_term(*mm, cc);
            }
        }
        Ok(out)
    }

    /// [`Polynomial::substitute`] restricted to homogeneous images of one common degree ≥ 1.
    pub fn substitute_linear(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!("{} images for {} variables", images.len(), self.nvars)));
        }
        let mut degree = None;
        for im in images.iter().filter(|im| !im.is_zero()) {
            if !im.is_homogeneous() {
                return Err(Error::NotHomogeneous(im.degree().unwrap_or(0)));
            }
            let d = im.degree().expect("nonzero image");
            match degree {
                None => degree = Some(d),
                Some(e) if e != d => {
                    return Err(Error::DimensionMismatch(format!("image degrees {e} and {d} differ")));
                }
                _ => {}
            }
        }
        if degree == Some(0) {
            return Err(Error::DimensionMismatch("images must have positive degree".into()));
        }
        self.substitute(images)
    }

    pub fn evaluate(&self, point: &[FieldElement]) -> Result<FieldElement> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!("point of length {} for {} variables", point.len(), self.nvars)));
        }
        if let Some(e) = point.iter().find(|e| e.kind() != self.field) {
            return Err(Error::FieldMismatch(format!("{} vs {}", e.kind(), self.field)));
        }
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, v) in point.iter().enumerate() {
                let e = m.exps[i] as u32;
                if e > 0 {
                    t = &t * &v.pow(e);
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Exact quotient `self / d`, or an error when `d` does not divide.
    pub fn exact_div(&self, d: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(d)?;
        let Some((lm, lc)) = d.leading_term() else {
            return Err(Error::DivisionByZero);
        };
        let (lm, lc_inv) = (*lm, lc.inv()?);
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.field, self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            let Some(qm) = lm.quotient_of(m) else {
                return Err(Error::NotDivisible("leading monomial not divisible".into()));
            };
            let qc = c * &lc_inv;
            for (dm, dc) in &d.terms {
                rem.add_term(dm.mul(&qm), &-(dc * &qc));
            }
            quot.add_term(qm, &qc);
        }
        Ok(quot)
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn make_monic(&self) -> Polynomial {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Reinterprets rational coefficients in another field.
    pub fn to_field(&self, field: FieldKind) -> Result<Polynomial> {
        let mut out = Polynomial::zero(field, self.nvars);
        for (m, c) in &self.terms {
            let v = match c.as_rational() {
                Some(q) => field.from_rational(q)?,
                None if c.kind() == field => c.clone(),
                None => return Err(Error::FieldMismatch(format!("{} to {field}", c.kind()))),
            };
            out.add_term(*m, &v);
        }
        Ok(out)
    }

    /// Moves variable `i` to position `positions[i]` in a ring with `nvars` variables.
    pub fn embed(&self, nvars: usize, positions: &[usize]) -> Result<Polynomial> {
        if positions.len() != self.nvars || positions.iter().any(|&p| p >= nvars) || nvars > MAX_VARS {
            return Err(Error::DimensionMismatch("invalid embedding".into()));
        }
        let mut out = Polynomial::zero(self.field, nvars);
        for (m, c) in &self.terms {
            let mut mm = Monomial::one();
            for (i, &p) in positions.iter().enumerate() {
                mm = mm.with_exp(p, mm.exps[p] + m.exps[i]);
            }
            out.add_term(mm, c);
        }
        Ok(out)
    }

    /// Splits off the first `k` variables: returns, for each monomial in them, its coefficient
    /// as a polynomial in the remaining variables.
    pub fn split_leading_vars(&self, k: usize) -> BTreeMap<Monomial, Polynomial> {
        let rest = self.nvars - k;
        let mut out: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut head = Monomial::one();
            let mut tail = Monomial::one();
            for i in 0..self.nvars {
                if i < k {
                    head = head.with_exp(i, m.exps[i]);
                } else {
                    tail = tail.with_exp(i - k, m.exps[i]);
                }
            }
            out.entry(head).or_insert_with(|| Polynomial::zero(self.field, rest)).add_term(tail, c);
        }
        out
    }

    /// Coordinates on a monomial basis; fails for monomials outside the basis.
    pub fn to_vector(&self, basis: &MonomialBasis) -> Result<Vec<FieldElement>> {
        if basis.nvars() != self.nvars {
            return Err(Error::DimensionMismatch(format!("basis in {} variables", basis.nvars())));
        }
        let mut v = vec![self.field.zero(); basis.len()];
        for (m, c) in &self.terms {
            let i = basis.index_of(m).ok_or(Error::NotHomogeneous(basis.degree()))?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn from_vector(field: FieldKind, basis: &MonomialBasis, v: &[FieldElement]) -> Polynomial {
        assert_eq!(v.len(), basis.len(), "vector length must match the basis");
        Polynomial::from_terms(field, basis.nvars(), basis.monomials().iter().copied().zip(v.iter().cloned()))
    }

    /// Prints with the default names for this many variables.
    pub fn to_string_with(&self, vars: &VarSet) -> String {
        parse::print(self, vars)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&parse::print(self, &VarSet::default_for(self.nvars)))
    }
}

macro_rules! poly_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                match self.$checked(rhs) {
                    Ok(p) => p,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    };
}

poly_binop!(Add, add, try_add);
poly_binop!(Sub, sub, try_sub);
poly_binop!(Mul, mul, try_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { nvars: self.nvars, field: self.field, terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Determinant of a 3×3 matrix of polynomials by cofactor expansion.
pub fn det3(m: &[[Polynomial; 3]; 3]) -> Polynomial {
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| &m[r1][c1] * &m[r2][c2] - &m[r1][c2] * &m[r2][c1];
    &m[0][0] * &minor(1, 2, 1, 2) - &m[0][1] * &minor(1, 2, 0, 2) + &m[0][2] * &minor(1, 2, 0, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldKind {
        FieldKind::Rational
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::from_exps(&[2, 0, 0]).unwrap();
        let b = Monomial::from_exps(&[1, 1, 0]).unwrap();
        let c = Monomial::from_exps(&[0, 0, 3]).unwrap();
        assert!(a > b);
        assert!(c > a);
    }

    #[test]
    fn partial_of_power() {
        let x = Polynomial::var(q(), 3, 0);
        let d = x.pow(5).partial(0).unwrap();
        assert_eq!(d, x.pow(4).scale(&q().from_i64(5)));
        assert!(x.partial(3).is_err());
    }

    #[test]
    fn exact_division() {
        let vars = VarSet::plane();
        let a = parse("x^2 - y^2", &vars, q()).unwrap();
        let b = parse("x + y", &vars, q()).unwrap();
        assert_eq!(a.exact_div(&b).unwrap(), parse("x - y", &vars, q()).unwrap());
        assert!(b.exact_div(&a).is_err());
    }

    #[test]
    fn identity_substitution() {
        let vars = VarSet::plane();
        let p = parse("x^3*y - 2*z^4 + 1/3*x*y*z^2", &vars, q()).unwrap();
        let id: Vec<_> = (0..3).map(|i| Polynomial::var(q(), 3, i)).collect();
        assert_eq!(p.substitute_linear(&id).unwrap(), p);
    }

    #[test]
    fn mixed_image_degrees_rejected() {
        let x = Polynomial::var(q(), 2, 0);
        let y = Polynomial::var(q(), 2, 1);
        let p = &x * &y;
        assert!(p.substitute_linear(&[x.clone(), &y * &y]).is_err());
        assert!(p.substitute_linear(&[x]).is_err());
    }

    #[test]
    fn split_and_embed() {
        let p = parse("x^2*y + 3*x*z", &VarSet::plane(), q()).unwrap();
        let e = p.embed(4, &[1, 2, 3]).unwrap();
        let parts = e.split_leading_vars(1);
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[&Monomial::one()], p);
    }
}
