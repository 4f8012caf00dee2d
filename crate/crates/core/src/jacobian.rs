//! Graded pieces of homogeneous ideals, Jacobian rings and Macaulay duality.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldKind, DEFAULT_PRIME};
use crate::linalg::{Matrix, Subspace};
use crate::poly::{Monomial, MonomialBasis, Polynomial};

/// A subspace of the degree-`k` forms, coordinatized by [`MonomialBasis`].
#[derive(Clone, Debug)]
pub struct GradedPiece {
    basis: MonomialBasis,
    space: Subspace,
}

impl GradedPiece {
    pub fn new(basis: MonomialBasis, space: Subspace) -> Self {
        assert_eq!(basis.len(), space.ambient_dim(), "space must live in the span of the basis");
        GradedPiece { basis, space }
    }

    /// Span of homogeneous polynomials of one degree.
    pub fn span(field: FieldKind, nvars: usize, degree: u32, polys: &[Polynomial]) -> Result<Self> {
        let basis = MonomialBasis::new(nvars, degree);
        let rows = polys.iter().map(|p| p.to_vector(&basis)).collect::<Result<Vec<_>>>()?;
        let space = Subspace::span(field, basis.len(), &rows)?;
        Ok(GradedPiece { basis, space })
    }

    pub fn monomial_basis(&self) -> &MonomialBasis {
        &self.basis
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn field(&self) -> FieldKind {
        self.space.field()
    }

    pub fn nvars(&self) -> usize {
        self.basis.nvars()
    }

    pub fn degree(&self) -> u32 {
        self.basis.degree()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient_dim() - self.dim()
    }

    pub fn vector(&self, p: &Polynomial) -> Result<Vec<FieldElement>> {
        p.to_vector(&self.basis)
    }

    pub fn polynomial(&self, v: &[FieldElement]) -> Polynomial {
        Polynomial::from_vector(self.field(), &self.basis, v)
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.space.contains(&self.vector(p)?))
    }

    /// Coordinates of the normal form on the quotient monomials.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Vec<FieldElement>> {
        Ok(self.space.quotient_coords(&self.vector(p)?))
    }

    /// The normal form as a polynomial supported on the quotient monomials.
    pub fn reduce(&self, p: &Polynomial) -> Result<Polynomial> {
        Ok(self.polynomial(&self.space.reduce(&self.vector(p)?)))
    }

    /// Monomials indexing a complement (non-pivot columns).
    pub fn quotient_monomials(&self) -> Vec<Monomial> {
        self.space.quotient_basis().into_iter().map(|i| self.basis.monomials()[i]).collect()
    }

    /// The reduced basis as polynomials.
    pub fn elements(&self) -> Vec<Polynomial> {
        self.space.basis_rows().iter().map(|r| self.polynomial(r)).collect()
    }
}

fn common_ring(gens: &[Polynomial]) -> Result<(FieldKind, usize)> {
    let first = gens.first().ok_or_else(|| Error::Degenerate("no generators".into()))?;
    for g in gens {
        if g.nvars() != first.nvars() || g.field() != first.field() {
            return Err(Error::DimensionMismatch("generators must share one ring".into()));
        }
    }
    Ok((first.field(), first.nvars()))
}

/// Degree-`k` piece of the ideal generated by `generators`.
pub fn ideal_piece(generators: &[Polynomial], k: u32) -> Result<GradedPiece> {
    let (field, nvars) = common_ring(generators)?;
    let basis = MonomialBasis::new(nvars, k);
    let mut rows = Vec::new();
    for g in generators.iter().filter(|g| !g.is_zero()) {
        let dg = g.degree().expect("nonzero");
        if !g.is_homogeneous() {
            return Err(Error::NotHomogeneous(dg));
        }
        if dg > k {
            continue;
        }
        for m in MonomialBasis::new(nvars, k - dg).monomials() {
            rows.push(g.mul_monomial(m).to_vector(&basis)?);
        }
    }
    let space = Subspace::span(field, basis.len(), &rows)?;
    Ok(GradedPiece { basis, space })
}

fn check_form(f: &Polynomial) -> Result<u32> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    f.check_homogeneous(d)?;
    if d < 2 {
        return Err(Error::Degenerate(format!("degree {d} < 2")));
    }
    Ok(d)
}

/// N = (d − 2)(n + 1), the socle degree of the Jacobian ring.
pub fn top_degree(f: &Polynomial) -> Result<u32> {
    Ok((check_form(f)? - 2) * f.nvars() as u32)
}

fn full_in_degree(f: &Polynomial, k: u32) -> Result<bool> {
    Ok(ideal_piece(&f.gradient(), k)?.codim() == 0)
}

/// Decides smoothness of V(f) by whether the Jacobian ideal contains every form of degree N+1.
///
/// Over ℚ the test is first run modulo a large prime: a full-rank reduction certifies full rank
/// over ℚ, so only inconclusive cases pay for rational elimination.
pub fn smoothness(f: &Polynomial) -> Result<bool> {
    let n = top_degree(f)?;
    if f.field().is_rational() {
        if let Ok(fp) = f.to_field(FieldKind::Prime(DEFAULT_PRIME)) {
            if fp.degree() == f.degree() && full_in_degree(&fp, n + 1)? {
                return Ok(true);
            }
        }
    }
    full_in_degree(f, n + 1)
}

/// A class in the Jacobian ring, compared by normal form.
#[derive(Clone, Debug)]
pub struct RingClass {
    pub degree: u32,
    pub representative: Polynomial,
    pub normal_form: Vec<FieldElement>,
}

impl PartialEq for RingClass {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.normal_form == other.normal_form
    }
}

impl RingClass {
    pub fn is_zero(&self) -> bool {
        self.normal_form.iter().all(|e| e.is_zero())
    }
}

/// R_f = S/J_f in degrees 0..=kmax, with normal forms.
#[derive(Clone, Debug)]
pub struct JacobianRing {
    hypersurface: Polynomial,
    partials: Vec<Polynomial>,
    top: u32,
    pieces: Vec<GradedPiece>,
}

impl JacobianRing {
    /// All pieces up to degree N+1.
    pub fn new(f: &Polynomial) -> Result<Self> {
        let n = top_degree(f)?;
        Self::up_to(f, n + 1)
    }

    /// Pieces up to degree `kmax` only.
    pub fn up_to(f: &Polynomial, kmax: u32) -> Result<Self> {
        let top = top_degree(f)?;
        let partials = f.gradient();
        let pieces = (0..=kmax).map(|k| ideal_piece(&partials, k)).collect::<Result<Vec<_>>>()?;
        Ok(JacobianRing { hypersurface: f.clone(), partials, top, pieces })
    }

    pub fn hypersurface(&self) -> &Polynomial {
        &self.hypersurface
    }

    pub fn partials(&self) -> &[Polynomial] {
        &self.partials
    }

    pub fn field(&self) -> FieldKind {
        self.hypersurface.field()
    }

    pub fn top_degree(&self) -> u32 {
        self.top
    }

    pub fn max_degree(&self) -> u32 {
        self.pieces.len() as u32 - 1
    }

    /// J^k as a graded piece.
    pub fn ideal(&self, k: u32) -> Result<&GradedPiece> {
        self.pieces
            .get(k as usize)
            .ok_or_else(|| Error::OutOfRange(format!("degree {k} beyond the cached range")))
    }

    pub fn dim(&self, k: u32) -> Result<usize> {
        Ok(self.ideal(k)?.codim())
    }

    /// dim R^k for k = 0..=N (within the cached range).
    pub fn dims(&self) -> Vec<usize> {
        self.pieces.iter().take(self.top as usize + 1).map(|p| p.codim()).collect()
    }

    /// Requires the piece of degree N+1 to be cached.
    pub fn is_smooth(&self) -> Result<bool> {
        Ok(self.dim(self.top + 1)? == 0)
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        match p.degree() {
            None => Ok(true),
            Some(k) => self.ideal(k)?.contains(p),
        }
    }

    pub fn normal_form(&self, p: &Polynomial, k: u32) -> Result<Vec<FieldElement>> {
        p.check_homogeneous(k)?;
        self.ideal(k)?.normal_form(p)
    }

    pub fn class(&self, p: &Polynomial, k: u32) -> Result<RingClass> {
        Ok(RingClass { degree: k, representative: p.clone(), normal_form: self.normal_form(p, k)? })
    }

    /// Monomials whose classes form a basis of R^k.
    pub fn quotient_monomials(&self, k: u32) -> Result<Vec<Monomial>> {
        Ok(self.ideal(k)?.quotient_monomials())
    }

    /// Pairing R^i × R^{N−i} → R^N in the quotient monomial bases.
    pub fn macaulay_pairing(&self, i: u32) -> Result<Matrix> {
        if i > self.top {
            return Err(Error::OutOfRange(format!("degree {i} above the socle degree {}", self.top)));
        }
        let field = self.field();
        let nv = self.hypersurface.nvars();
        if self.dim(self.top)? != 1 {
            return Err(Error::Singular(format!("dim R^{} = {}", self.top, self.dim(self.top)?)));
        }
        let left = self.quotient_monomials(i)?;
        let right = self.quotient_monomials(self.top - i)?;
        let socle = self.ideal(self.top)?;
        let rows = left
            .iter()
            .map(|a| {
                right
                    .iter()
                    .map(|b| {
                        let prod = Polynomial::monomial(field, nv, a.mul(b), field.one());
                        socle.normal_form(&prod).map(|v| v[0].clone())
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(field, right.len(), rows)
    }

    /// True when every pairing R^i × R^{N−i} is perfect.
    pub fn pairings_nonsingular(&self) -> Result<bool> {
        for i in 0..=self.top {
            let m = self.macaulay_pairing(i)?;
            if m.rows() != m.cols() || m.rank() != m.rows() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Σ a_i ∂f/∂x_i.
pub fn polar(f: &Polynomial, point: &[FieldElement]) -> Result<Polynomial> {
    if point.len() != f.nvars() {
        return Err(Error::DimensionMismatch(format!("point of length {} for {} variables", point.len(), f.nvars())));
    }
    if point.iter().all(|a| a.is_zero()) {
        return Err(Error::ZeroPoint);
    }
    let mut out = Polynomial::zero(f.field(), f.nvars());
    for (i, a) in point.iter().enumerate() {
        if !a.is_zero() {
            out = &out + &f.partial(i)?.scale(a);
        }
    }
    Ok(out)
}

/// Symmetric Gram matrix of a quadratic form (mixed coefficients halved).
pub fn gram_matrix(q: &Polynomial) -> Result<Matrix> {
    let field = q.field();
    if field.characteristic() == 2 {
        return Err(Error::Characteristic2);
    }
    q.check_homogeneous(2)?;
    let n = q.nvars();
    let half = field.from_ratio(1, 2)?;
    let mut m = Matrix::zeros(field, n, n);
    for (mono, c) in q.terms() {
        let vars: Vec<usize> = (0..n).filter(|&i| mono.exp(i) > 0).collect();
        match vars.as_slice() {
            [i] => m.set(*i, *i, c.clone()),
            [i, j] => {
                let h = c * &half;
                m.set(*i, *j, h.clone());
                m.set(*j, *i, h);
            }
            _ => unreachable!("quadratic monomial"),
        }
    }
    Ok(m)
}

pub fn quadric_rank(q: &Polynomial) -> Result<usize> {
    Ok(gram_matrix(q)?.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse, VarSet};

    fn plane(s: &str) -> Polynomial {
        parse(s, &VarSet::plane(), FieldKind::Rational).unwrap()
    }

    #[test]
    fn fermat_quintic_ring() {
        let f = plane("x^5 + y^5 + z^5");
        assert_eq!(ideal_piece(&f.gradient(), 4).unwrap().dim(), 3);
        let r = JacobianRing::new(&f).unwrap();
        assert_eq!(r.dims(), vec![1, 3, 6, 10, 12, 12, 10, 6, 3, 1]);
        assert!(r.is_smooth().unwrap());
        assert!(r.pairings_nonsingular().unwrap());
        assert_eq!(r.macaulay_pairing(0).unwrap().rows(), 1);
    }

    #[test]
    fn singular_quintic() {
        assert!(!smoothness(&plane("x^5 + y^5")).unwrap());
        let r = JacobianRing::new(&plane("x^5 + y^5")).unwrap();
        assert!(r.macaulay_pairing(0).is_err());
    }

    #[test]
    fn polar_and_rank() {
        let q = FieldKind::Rational;
        let f = plane("x^5 + 3*x*y^2*z^2 + z^5");
        assert_eq!(polar(&f, &[q.zero(), q.one(), q.zero()]).unwrap(), f.partial(1).unwrap());
        assert_eq!(polar(&f, &[q.zero(), q.zero(), q.zero()]), Err(Error::ZeroPoint));
        assert_eq!(quadric_rank(&plane("x^2")).unwrap(), 1);
        assert_eq!(quadric_rank(&plane("x*y + z^2")).unwrap(), 3);
        assert_eq!(quadric_rank(&plane("x*y")).unwrap(), 2);
    }

    #[test]
    fn rank_needs_odd_characteristic() {
        let f = FieldKind::Prime(3);
        let q = parse("x*y", &VarSet::plane(), f).unwrap();
        assert_eq!(quadric_rank(&q).unwrap(), 2);
    }
}
