//! Exact base fields: the rationals and prime fields of odd characteristic below 2^63.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The default 62-bit prime used for randomized sweeps, 2^62 + 135.
pub const DEFAULT_PRIME: u64 = 4_611_686_018_427_388_039;

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    if s >= p as u128 {
        (s - p as u128) as u64
    } else {
        s as u64
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + (p - b)
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse modulo `p` by the extended Euclidean algorithm; `None` for non-units.
pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Which field a value lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rational,
    Prime(u64),
}

impl FieldKind {
    /// A prime field; `p` must be an odd prime below 2^63.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= 1 << 63 {
            return Err(Error::InvalidField(format!("{p} exceeds 2^63")));
        }
        if p == 2 {
            return Err(Error::Characteristic2);
        }
        if !is_prime_u64(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(FieldKind::Prime(p))
    }

    /// Parses `q`, `Q`, or `p=<prime>`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(FieldKind::Rational);
        }
        let digits = t
            .strip_prefix("p=")
            .ok_or_else(|| Error::InvalidField(format!("expected `q` or `p=<prime>`, got `{t}`")))?;
        let p: u64 = digits
            .trim()
            .parse()
            .map_err(|_| Error::InvalidField(format!("bad modulus `{digits}`")))?;
        FieldKind::prime(p)
    }

    /// 0 for the rationals, otherwise the modulus.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldKind::Rational => 0,
            FieldKind::Prime(p) => *p,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, FieldKind::Rational)
    }

    pub fn zero(&self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        match *self {
            FieldKind::Rational => FieldElement::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldKind::Prime(p) => FieldElement::Prime(Fp {
                residue: (n as i128).rem_euclid(p as i128) as u64,
                modulus: p,
            }),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        match *self {
            FieldKind::Rational => FieldElement::Rational(BigRational::from_integer(n.clone())),
            FieldKind::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits in u64");
                FieldElement::Prime(Fp { residue: r, modulus: p })
            }
        }
    }

    /// Image of a rational number; fails when the denominator vanishes in the field.
    pub fn from_rational(&self, q: &BigRational) -> Result<FieldElement> {
        match self {
            FieldKind::Rational => Ok(FieldElement::Rational(q.clone())),
            FieldKind::Prime(_) => {
                let n = self.from_bigint(q.numer());
                let d = self.from_bigint(q.denom());
                n.try_div(&d)
            }
        }
    }

    pub fn from_ratio(&self, n: i64, d: i64) -> Result<FieldElement> {
        if d == 0 {
            return Err(Error::DivisionByZero);
        }
        self.from_i64(n).try_div(&self.from_i64(d))
    }

    /// Descriptor used by the CLI and in reports.
    pub fn descriptor(&self) -> String {
        match self {
            FieldKind::Rational => "q".to_string(),
            FieldKind::Prime(p) => format!("p={p}"),
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

/// A residue modulo an odd prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    residue: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(residue: u64, modulus: u64) -> Self {
        Fp { residue: residue % modulus, modulus }
    }
    pub fn residue(&self) -> u64 {
        self.residue
    }
    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

/// An element of ℚ or of a prime field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Prime(Fp),
}

fn mismatch(a: &FieldElement, b: &FieldElement) -> Error {
    Error::FieldMismatch(format!("{} vs {}", a.kind(), b.kind()))
}

impl FieldElement {
    pub fn kind(&self) -> FieldKind {
        match self {
            FieldElement::Rational(_) => FieldKind::Rational,
            FieldElement::Prime(x) => FieldKind::Prime(x.modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_zero(),
            FieldElement::Prime(x) => x.residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_one(),
            FieldElement::Prime(x) => x.residue == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(q) => Some(q),
            FieldElement::Prime(_) => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match self {
            FieldElement::Rational(_) => None,
            FieldElement::Prime(x) => Some(x.residue),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => Ok(FieldElement::Rational(a + b)),
            (FieldElement::Prime(a), FieldElement::Prime(b)) if a.modulus == b.modulus => {
                Ok(FieldElement::Prime(Fp { residue: add_mod(a.residue, b.residue, a.modulus), modulus: a.modulus }))
            }
            _ => Err(mismatch(self, other)),
        }
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => Ok(FieldElement::Rational(a - b)),
            (FieldElement::Prime(a), FieldElement::Prime(b)) if a.modulus == b.modulus => {
                Ok(FieldElement::Prime(Fp { residue: sub_mod(a.residue, b.residue, a.modulus), modulus: a.modulus }))
            }
            _ => Err(mismatch(self, other)),
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => Ok(FieldElement::Rational(a * b)),
            (FieldElement::Prime(a), FieldElement::Prime(b)) if a.modulus == b.modulus => {
                Ok(FieldElement::Prime(Fp { residue: mul_mod(a.residue, b.residue, a.modulus), modulus: a.modulus }))
            }
            _ => Err(mismatch(self, other)),
        }
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            FieldElement::Rational(q) => FieldElement::Rational(q.recip()),
            FieldElement::Prime(x) => FieldElement::Prime(Fp {
                residue: inv_mod(x.residue, x.modulus).expect("nonzero residue mod a prime is a unit"),
                modulus: x.modulus,
            }),
        })
    }

    pub fn pow(&self, exp: u32) -> Self {
        match self {
            FieldElement::Rational(q) => FieldElement::Rational(num_traits::pow(q.clone(), exp as usize)),
            FieldElement::Prime(x) => FieldElement::Prime(Fp { residue: pow_mod(x.residue, exp as u64, x.modulus), modulus: x.modulus }),
        }
    }

    /// Signed integer value when the element is an integer small enough to fit.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            FieldElement::Rational(q) if q.is_integer() => q.numer().to_i64(),
            FieldElement::Rational(_) => None,
            FieldElement::Prime(x) => {
                let half = x.modulus / 2;
                if x.residue > half {
                    Some(-((x.modulus - x.residue) as i64))
                } else {
                    Some(x.residue as i64)
                }
            }
        }
    }

    /// True when the printed form needs a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_negative(),
            FieldElement::Prime(x) => x.residue > x.modulus / 2,
        }
    }
}

impl fmt::Display for FieldElement {
    /// Rationals print as `n` or `n/d`; residues print in the symmetric range (-p/2, p/2].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            FieldElement::Prime(x) => {
                if x.residue > x.modulus / 2 {
                    write!(f, "-{}", x.modulus - x.residue)
                } else {
                    write!(f, "{}", x.residue)
                }
            }
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        match (&mut *self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => *a += b,
            _ => *self = &*self + rhs,
        }
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        match (&mut *self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => *a -= b,
            _ => *self = &*self - rhs,
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(q) => FieldElement::Rational(-q),
            FieldElement::Prime(x) => FieldElement::Prime(Fp { residue: sub_mod(0, x.residue, x.modulus), modulus: x.modulus }),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_prime_is_prime() {
        assert!(is_prime_u64(DEFAULT_PRIME));
        assert!(!is_prime_u64(DEFAULT_PRIME - 2));
        assert!(FieldKind::prime(DEFAULT_PRIME).is_ok());
        assert_eq!(FieldKind::prime(2), Err(Error::Characteristic2));
        assert!(FieldKind::prime(91).is_err());
    }

    #[test]
    fn parse_descriptor_round_trip() {
        for k in [FieldKind::Rational, FieldKind::Prime(101), FieldKind::Prime(DEFAULT_PRIME)] {
            assert_eq!(FieldKind::parse(&k.descriptor()).unwrap(), k);
        }
        assert!(FieldKind::parse("r").is_err());
    }

    #[test]
    fn rationals_stay_reduced() {
        let q = FieldKind::Rational;
        let a = q.from_ratio(6, -4).unwrap();
        assert_eq!(a.to_string(), "-3/2");
        let b = &a * &q.from_ratio(-2, 3).unwrap();
        assert_eq!(b, q.one());
    }

    #[test]
    fn prime_inverse_and_symmetric_print() {
        let f = FieldKind::Prime(101);
        let a = f.from_i64(-5);
        assert_eq!(a.to_string(), "-5");
        assert_eq!(&a * &a.inv().unwrap(), f.one());
        assert_eq!(f.from_ratio(1, 2).unwrap().to_string(), "-50");
        assert!(f.from_ratio(1, 101).is_err());
    }

    #[test]
    fn mixing_moduli_is_an_error() {
        let a = FieldKind::Prime(101).one();
        let b = FieldKind::Prime(103).one();
        assert!(matches!(a.try_add(&b), Err(Error::FieldMismatch(_))));
        assert!(a.try_mul(&FieldKind::Rational.one()).is_err());
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn operator_panics_on_mismatch() {
        let _ = FieldKind::Prime(101).one() + FieldKind::Prime(103).one();
    }

    #[test]
    fn inv_mod_matches_fermat() {
        let p = DEFAULT_PRIME;
        for a in [1u64, 2, 12345, p - 1, 1 << 61] {
            assert_eq!(inv_mod(a, p).unwrap(), pow_mod(a, p - 2, p));
        }
    }
}
