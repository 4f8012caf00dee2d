//! Text form of polynomials.
//!
//! Grammar: an optional sign, then terms separated by `+` or `-`; a term is a `*`-separated
//! product of coefficients (`n` or `n/d`), powers (`var` or `var^k`) and parenthesized
//! sub-expressions (optionally raised to `^k`).  Whitespace between tokens is ignored.  Printing emits terms in descending grlex order, omits unit coefficients
//! and prints the zero polynomial as `0`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Monomial, Polynomial, MAX_VARS};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldKind};

/// Variable names of a polynomial ring, in index order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarSet {
    names: Vec<String>,
}

impl VarSet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        if names.len() > MAX_VARS {
            return Err(Error::TooManyVariables(names.len()));
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            let ok = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::Parse { pos: 0, msg: format!("invalid variable name `{n}`") });
            }
            if names[..i].contains(n) {
                return Err(Error::Parse { pos: 0, msg: format!("duplicate variable name `{n}`") });
            }
        }
        Ok(VarSet { names })
    }

    fn indexed(prefix: &str, range: std::ops::Range<usize>) -> Vec<String> {
        range.map(|i| format!("{prefix}{i}")).collect()
    }

    /// `x0, …, x4`, coordinates of ℙ⁴.
    pub fn projective4() -> Self {
        VarSet { names: Self::indexed("x", 0..5) }
    }

    /// `x, y, z`, coordinates of ℙ².
    pub fn plane() -> Self {
        VarSet { names: vec!["x".into(), "y".into(), "z".into()] }
    }

    /// `a1, …, a12`.
    pub fn parameters() -> Self {
        VarSet { names: Self::indexed("a", 1..13) }
    }

    /// `x, y, z, a1, …, a12`.
    pub fn plane_with_parameters() -> Self {
        let mut names = Self::plane().names;
        names.extend(Self::indexed("a", 1..13));
        VarSet { names }
    }

    pub fn default_for(nvars: usize) -> Self {
        match nvars {
            3 => Self::plane(),
            5 => Self::projective4(),
            15 => Self::plane_with_parameters(),
            n => VarSet { names: Self::indexed("x", 0..n) },
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((start, Tok::Plus)),
            b'-' => out.push((start, Tok::Minus)),
            b'*' => out.push((start, Tok::Star)),
            b'/' => out.push((start, Tok::Slash)),
            b'^' => out.push((start, Tok::Caret)),
            b'(' => out.push((start, Tok::LParen)),
            b')' => out.push((start, Tok::RParen)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("ascii digits");
                out.push((start, Tok::Num(n)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().expect("nonempty remainder");
                return Err(Error::Parse { pos: start, msg: format!("unexpected character `{ch}`") });
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    vars: &'a VarSet,
    field: FieldKind,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.offset(), msg: msg.into() })
    }

    fn number(&mut self) -> Result<BigInt> {
        match self.toks.get(self.pos) {
            Some((_, Tok::Num(n))) => {
                let n = n.clone();
                self.pos += 1;
                Ok(n)
            }
            _ => self.err("expected a number"),
        }
    }

    fn exponent(&mut self) -> Result<u32> {
        let at = self.offset();
        let k = self.number()?;
        u32::try_from(&k)
            .ok()
            .filter(|&v| v <= u16::MAX as u32)
            .ok_or(Error::Parse { pos: at, msg: "exponent too large".into() })
    }

    fn factor(&mut self, coeff: &mut BigRational, mono: &mut [u32], groups: &mut Vec<Polynomial>) -> Result<()> {
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expression(true)?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                let mut e = 1u32;
                if self.peek() == Some(&Tok::Caret) {
                    self.pos += 1;
                    e = self.exponent()?;
                }
                groups.push(inner.pow(e));
                Ok(())
            }
            Some(Tok::Num(_)) => {
                let n = self.number()?;
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    let at = self.offset();
                    let d = self.number()?;
                    if d == BigInt::from(0) {
                        return Err(Error::Parse { pos: at, msg: "zero denominator".into() });
                    }
                    *coeff *= BigRational::new(n, d);
                } else {
                    *coeff *= BigRational::from_integer(n);
                }
                Ok(())
            }
            Some(Tok::Ident(name)) => {
                let Some(i) = self.vars.index_of(&name) else {
                    return Err(Error::UnknownVariable(name));
                };
                self.pos += 1;
                let mut e = 1u32;
                if self.peek() == Some(&Tok::Caret) {
                    self.pos += 1;
                    e = self.exponent()?;
                }
                mono[i] += e;
                Ok(())
            }
            Some(_) => self.err("expected a coefficient or a variable"),
            None => self.err("unexpected end of input"),
        }
    }

    fn expression(&mut self, nested: bool) -> Result<Polynomial> {
        let n = self.vars.len();
        let mut out = Polynomial::zero(self.field, n);
        if self.pos >= self.toks.len() {
            return self.err("unexpected end of input");
        }
        let mut first = true;
        loop {
            let mut negative = false;
            match self.peek() {
                Some(Tok::Plus) if !first => self.pos += 1,
                Some(Tok::Minus) => {
                    self.pos += 1;
                    negative = true;
                }
                Some(Tok::Plus) => return self.err("leading `+`"),
                _ if first => {}
                _ => return self.err("expected `+` or `-`"),
            }
            let mut coeff = BigRational::from_integer(BigInt::from(if negative { -1 } else { 1 }));
            let mut mono = vec![0u32; n];
            let mut groups = Vec::new();
            self.factor(&mut coeff, &mut mono, &mut groups)?;
            while self.peek() == Some(&Tok::Star) {
                self.pos += 1;
                self.factor(&mut coeff, &mut mono, &mut groups)?;
            }
            let c = self.field.from_rational(&coeff).map_err(|_| Error::Parse {
                pos: self.offset(),
                msg: "coefficient denominator vanishes in the field".into(),
            })?;
            let mut term = Polynomial::monomial(self.field, n, Monomial::from_exps(&mono)?, c);
            for g in &groups {
                term = &term * g;
            }
            out = &out + &term;
            first = false;
            if self.peek().is_none() || (nested && self.peek() == Some(&Tok::RParen)) {
                return Ok(out);
            }
        }
    }
}

/// Parses `text` over the variables `vars`.
pub fn parse(text: &str, vars: &VarSet, field: FieldKind) -> Result<Polynomial> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len(), vars, field };
    if p.toks.is_empty() {
        return p.err("empty input");
    }
    p.expression(false)
}

/// Parses and checks homogeneity of the given degree; the zero polynomial passes.
pub fn parse_homogeneous(text: &str, vars: &VarSet, field: FieldKind, degree: u32) -> Result<Polynomial> {
    let p = parse(text, vars, field)?;
    p.check_homogeneous(degree)?;
    Ok(p)
}

pub(super) fn print(p: &Polynomial, vars: &VarSet) -> String {
    assert_eq!(vars.len(), p.nvars(), "variable names must cover the ring");
    if p.is_zero() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (k, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        let abs: FieldElement = if neg { -c } else { c.clone() };
        match (k, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        let mut factors = Vec::new();
        if !abs.is_one() || m.degree() == 0 {
            factors.push(abs.to_string());
        }
        for (i, name) in vars.names().iter().enumerate() {
            match m.exp(i) {
                0 => {}
                1 => factors.push(name.clone()),
                e => factors.push(format!("{name}^{e}")),
            }
        }
        s.push_str(&factors.join("*"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_monomial() {
        let p = parse("x^3*y*z", &VarSet::plane(), FieldKind::Rational).unwrap();
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.to_string(), "x^3*y*z");
    }

    #[test]
    fn zero_prints_as_zero() {
        assert_eq!(Polynomial::zero(FieldKind::Rational, 3).to_string(), "0");
        let p = parse("x - x", &VarSet::plane(), FieldKind::Rational).unwrap();
        assert_eq!(p.to_string(), "0");
    }

    #[test]
    fn quintic_round_trip() {
        let text = "4*x^3*y*z + 2*x^3*y^2 - x*y^4 - x^5 - z^5 - z^4*y";
        let p = parse(text, &VarSet::plane(), FieldKind::Rational).unwrap();
        assert_eq!(p.to_string(), "-x^5 + 2*x^3*y^2 + 4*x^3*y*z - x*y^4 - y*z^4 - z^5");
        assert_eq!(parse(&p.to_string(), &VarSet::plane(), FieldKind::Rational).unwrap(), p);
    }

    #[test]
    fn rational_and_modular_coefficients() {
        let q = parse("-1/2*x0^2 + 3/6*x1", &VarSet::projective4(), FieldKind::Rational).unwrap();
        assert_eq!(q.to_string(), "-1/2*x0^2 + 1/2*x1");
        let f = FieldKind::Prime(7);
        let p = parse("1/2*x + 3", &VarSet::plane(), f).unwrap();
        assert_eq!(p.to_string(), "-3*x + 3");
        assert!(parse("1/7*x", &VarSet::plane(), f).is_err());
    }

    #[test]
    fn errors_carry_positions() {
        let v = VarSet::plane();
        assert_eq!(parse("x + w", &v, FieldKind::Rational), Err(Error::UnknownVariable("w".into())));
        assert!(matches!(parse("x + * y", &v, FieldKind::Rational), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse("x^", &v, FieldKind::Rational), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse("x $ y", &v, FieldKind::Rational), Err(Error::Parse { pos: 2, .. })));
        assert!(parse("", &v, FieldKind::Rational).is_err());
        assert!(parse("x y", &v, FieldKind::Rational).is_err());
    }

    #[test]
    fn parenthesized_groups() {
        let v = VarSet::plane();
        let f = FieldKind::Rational;
        let a = parse("-2*(x - z)^2*y + (x + y)*(x - y)", &v, f).unwrap();
        let b = parse("-2*x^2*y + 4*x*y*z - 2*y*z^2 + x^2 - y^2", &v, f).unwrap();
        assert_eq!(a, b);
        assert!(matches!(parse("(x + y", &v, f), Err(Error::Parse { pos: 6, .. })));
        assert!(parse("x + y)", &v, f).is_err());
    }

    #[test]
    fn homogeneity_checked_on_request() {
        let v = VarSet::plane();
        assert!(parse("x^2 + y", &v, FieldKind::Rational).is_ok());
        assert_eq!(parse_homogeneous("x^2 + y", &v, FieldKind::Rational, 2), Err(Error::NotHomogeneous(2)));
        assert!(parse_homogeneous("x^2 + y*z", &v, FieldKind::Rational, 2).is_ok());
    }
}
