//! Univariate polynomials and root extraction for binary forms.
//!
//! Rational roots are found p-adically: roots modulo a good prime ℓ are lifted by Newton
//! iteration, rationally reconstructed, and confirmed by exact evaluation.  Roots over 𝔽_p
//! come from gcd with x^p − x followed by Cantor–Zassenhaus splitting.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::field::{is_prime_u64, FieldElement, FieldKind};

/// Dense univariate polynomial, coefficients from low to high degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    field: FieldKind,
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn new(field: FieldKind, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn zero(field: FieldKind) -> Self {
        UniPoly { field, coeffs: Vec::new() }
    }

    pub fn constant(field: FieldKind, c: FieldElement) -> Self {
        UniPoly::new(field, vec![c])
    }

    /// The linear polynomial s − r.
    pub fn linear_root(field: FieldKind, r: &FieldElement) -> Self {
        UniPoly::new(field, vec![-r, field.one()])
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has degree `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                UniPoly::new(self.field, self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = self.field.zero();
        UniPoly::new(
            self.field,
            (0..n).map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z)).collect(),
        )
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = self.field.zero();
        UniPoly::new(
            self.field,
            (0..n).map(|i| self.coeffs.get(i).unwrap_or(&z) - other.coeffs.get(i).unwrap_or(&z)).collect(),
        )
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        UniPoly::new(self.field, out)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = d.leading().expect("nonzero").inv().expect("nonzero");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(self.field), self.clone());
        }
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    rem[k + j] -= &(&c * dc);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(self.field, quot), UniPoly::new(self.field, rem))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.divrem(d).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.field,
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * &self.field.from_i64(i as i64)).collect(),
        )
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    fn mulmod(&self, other: &UniPoly, m: &UniPoly) -> UniPoly {
        self.mul(other).rem(m)
    }

    fn powmod(&self, mut e: u64, m: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::constant(self.field, self.field.one()).rem(m);
        let mut base = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mulmod(&base, m);
            }
        }
        acc
    }

    /// Square-free decomposition (Yun): monic factors `a_k` with multiplicity `k`, nonconstant only.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, usize)> {
        let b = self.monic();
        if b.deg() == 0 {
            return Vec::new();
        }
        let one = UniPoly::constant(self.field, self.field.one());
        let db = b.derivative();
        let a0 = b.gcd(&db);
        let mut c = b.divrem(&a0).0;
        let mut d = db.divrem(&a0).0.sub(&c.derivative());
        let mut out = Vec::new();
        let mut k = 1;
        while c != one && c.deg() > 0 {
            let a = c.gcd(&d);
            c = c.divrem(&a).0;
            d = d.divrem(&a).0.sub(&c.derivative());
            if a.deg() > 0 {
                out.push((a, k));
            }
            k += 1;
        }
        out
    }

    /// Distinct roots in the base field of a square-free polynomial.
    pub fn distinct_roots(&self) -> Vec<FieldElement> {
        match self.field {
            FieldKind::Prime(p) => roots_mod_p(self, p),
            FieldKind::Rational => rational_roots(self),
        }
    }
}

fn roots_mod_p(f: &UniPoly, p: u64) -> Vec<FieldElement> {
    let field = f.field;
    let f = f.monic();
    if f.deg() == 0 {
        return Vec::new();
    }
    let x = UniPoly::new(field, vec![field.zero(), field.one()]);
    let xp = x.powmod(p, &f);
    let mut h = f.gcd(&xp.sub(&x));
    let mut roots = Vec::new();
    if h.coeffs.first().is_some_and(|c| c.is_zero()) {
        roots.push(field.zero());
        h = h.divrem(&x).0;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut stack = vec![h];
    while let Some(g) = stack.pop() {
        match g.deg() {
            0 => {}
            1 => roots.push(-&g.monic().coeffs[0]),
            _ => loop {
                let delta = field.from_i64(rng.gen_range(1..i64::MAX) % (p as i64));
                let shift = UniPoly::new(field, vec![delta, field.one()]);
                let w = shift.powmod((p - 1) / 2, &g).sub(&UniPoly::constant(field, field.one()));
                let split = g.gcd(&w);
                if split.deg() > 0 && split.deg() < g.deg() {
                    let other = g.divrem(&split).0;
                    stack.push(split);
                    stack.push(other);
                    break;
                }
            },
        }
    }
    roots
}

fn primitive_integer_coeffs(f: &UniPoly) -> Vec<BigInt> {
    let qs: Vec<&BigRational> = f.coeffs.iter().map(|c| c.as_rational().expect("rational")).collect();
    let mut l = BigInt::one();
    for q in &qs {
        l = l.lcm(q.denom());
    }
    let mut ints: Vec<BigInt> = qs.iter().map(|q| q.numer() * (&l / q.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, a| g.gcd(a));
    if !g.is_zero() && !g.is_one() {
        for a in ints.iter_mut() {
            *a = &*a / &g;
        }
    }
    ints
}

fn eval_int(a: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in a.iter().rev() {
        acc = (acc * x + c).mod_floor(m);
    }
    acc
}

fn inv_mod_big(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// u/v with u ≡ v·r (mod m), |u| ≤ nb, 0 < v ≤ db, if one exists (requires m > 2·nb·db).
fn rational_reconstruct(r: &BigInt, m: &BigInt, nb: &BigInt, db: &BigInt) -> Option<BigRational> {
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > nb {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if t1.is_zero() || &t1.abs() > db {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

fn rational_roots(f: &UniPoly) -> Vec<FieldElement> {
    let field = FieldKind::Rational;
    if f.deg() == 0 {
        return Vec::new();
    }
    let mut a = primitive_integer_coeffs(f);
    let mut roots = Vec::new();
    if a[0].is_zero() {
        roots.push(field.zero());
        a.remove(0);
    }
    let n = a.len() - 1;
    if n == 0 {
        return roots;
    }
    let nb = a[0].abs();
    let db = a[n].abs();
    let bound = BigInt::from(2) * &nb * &db;
    let deriv: Vec<BigInt> = a.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    let mut ell: u64 = 1_000_003;
    let (ell, modular) = loop {
        if is_prime_u64(ell) && !(&a[n] % BigInt::from(ell)).is_zero() {
            let fl = FieldKind::Prime(ell);
            let g = UniPoly::new(fl, a.iter().map(|c| fl.from_bigint(c)).collect());
            if g.gcd(&g.derivative()).deg() == 0 {
                break (ell, g);
            }
        }
        ell += 2;
    };
    let ell_big = BigInt::from(ell);
    for r0 in roots_mod_p(&modular, ell) {
        let mut r = BigInt::from(r0.residue().expect("residue"));
        let mut m = ell_big.clone();
        while m <= bound {
            m = &m * &m;
            let fr = eval_int(&a, &r, &m);
            let dr = eval_int(&deriv, &r, &m);
            let Some(inv) = inv_mod_big(&dr, &m) else { break };
            r = (&r - fr * inv).mod_floor(&m);
        }
        if let Some(q) = rational_reconstruct(&r, &m, &nb, &db) {
            let cand = FieldElement::Rational(q);
            if f.eval(&cand).is_zero() {
                roots.push(cand);
            }
        }
    }
    roots
}

/// Rational linear factors of a binary form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryFactorization {
    /// Roots `[a:b]` normalized so the first nonzero coordinate is 1, with multiplicities.
    pub roots: Vec<([FieldElement; 2], usize)>,
    /// Total degree of the part without roots in the base field.
    pub residual_degree: usize,
    /// Square-free pieces of the residual part: (degree, multiplicity).
    pub residual_pieces: Vec<(usize, usize)>,
}

impl BinaryFactorization {
    pub fn multiplicity_of(&self, point: &[FieldElement; 2]) -> usize {
        self.roots.iter().find(|(p, _)| p == point).map_or(0, |(_, m)| *m)
    }
}

fn sort_key(e: &FieldElement) -> (BigRational, u64) {
    match e {
        FieldElement::Rational(q) => (q.clone(), 0),
        FieldElement::Prime(x) => (BigRational::zero(), x.residue()),
    }
}

/// Splits off all linear factors over the base field of a nonzero binary form in 2 variables.
pub fn univariate_factor_multiplicities(p: &Polynomial) -> Result<BinaryFactorization> {
    if p.nvars() != 2 {
        return Err(Error::DimensionMismatch(format!("binary form expected, got {} variables", p.nvars())));
    }
    let d = p.degree().ok_or(Error::ZeroPolynomial)?;
    if !p.is_homogeneous() {
        return Err(Error::NotHomogeneous(d));
    }
    let field = p.field();
    let mut coeffs = vec![field.zero(); d as usize + 1];
    for (m, c) in p.terms() {
        coeffs[m.exp(1) as usize] = c.clone();
    }
    let g = UniPoly::new(field, coeffs);
    let mut roots: Vec<([FieldElement; 2], usize)> = Vec::new();
    let mut residual_degree = 0;
    let mut residual_pieces = Vec::new();
    for (a, k) in g.squarefree_decomposition() {
        let rs = a.distinct_roots();
        let rest = a.deg() - rs.len();
        for r in rs {
            roots.push(([field.one(), r], k));
        }
        if rest > 0 {
            residual_degree += rest * k;
            residual_pieces.push((rest, k));
        }
    }
    roots.sort_by(|x, y| sort_key(&x.0[1]).cmp(&sort_key(&y.0[1])));
    let at_infinity = d as usize - g.deg();
    if at_infinity > 0 {
        roots.push(([field.zero(), field.one()], at_infinity));
    }
    Ok(BinaryFactorization { roots, residual_degree, residual_pieces })
}

/// Binary form Π (b_i·X0 − a_i·X1)^{m_i} vanishing at the points [a_i:b_i].
pub fn binary_form_from_roots(field: FieldKind, roots: &[([FieldElement; 2], usize)]) -> Polynomial {
    let mut acc = Polynomial::one(field, 2);
    for (pt, m) in roots {
        let lin = Polynomial::from_terms(
            field,
            2,
            [(Monomial::var(0), pt[1].clone()), (Monomial::var(1), -&pt[0])],
        );
        acc = &acc * &lin.pow(*m as u32);
    }
    acc
}
