//! A cubic threefold X ⊂ ℙ⁴ projected from a line l ⊂ X: conic bundle over ℙ², discriminant
//! quintic, the conic C cutting 2D, and the cubics ψ: Q → X.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldKind};
use crate::jacobian::{ideal_piece, polar, quadric_rank, smoothness};
use crate::linalg::{kernel, Matrix};
use crate::poly::{det3, univariate_factor_multiplicities, Monomial, MonomialBasis, Polynomial};

pub type PlanePoint = [FieldElement; 3];

/// Scales a nonzero point so that its first nonzero coordinate is 1.
pub fn normalize_point(p: &[FieldElement]) -> Result<Vec<FieldElement>> {
    let lead = p.iter().find(|a| !a.is_zero()).ok_or(Error::ZeroPoint)?;
    let inv = lead.inv()?;
    Ok(p.iter().map(|a| a * &inv).collect())
}

pub fn normalize_plane_point(p: &[FieldElement]) -> Result<PlanePoint> {
    let v = normalize_point(p)?;
    Ok([v[0].clone(), v[1].clone(), v[2].clone()])
}

pub fn point_to_string(p: &[FieldElement]) -> String {
    let parts: Vec<String> = p.iter().map(|a| a.to_string()).collect();
    format!("[{}]", parts.join(":"))
}

fn points_from_i64(field: FieldKind, pts: &[[i64; 5]]) -> Vec<Vec<FieldElement>> {
    pts.iter().map(|p| p.iter().map(|&a| field.from_i64(a)).collect()).collect()
}

/// A line l = ⟨P₁, P₂⟩ on a cubic threefold with a complementary plane ⟨A, B, C⟩.
///
/// The cubic may carry extra parameter variables after its five coordinates; they pass through
/// every construction untouched.
#[derive(Clone, Debug)]
pub struct LineInX {
    cubic: Polynomial,
    span_points: [Vec<FieldElement>; 2],
    plane_points: [Vec<FieldElement>; 3],
}

impl LineInX {
    pub fn new(cubic: &Polynomial, span_points: [Vec<FieldElement>; 2], plane_points: [Vec<FieldElement>; 3]) -> Result<Self> {
        let field = cubic.field();
        if cubic.nvars() < 5 {
            return Err(Error::DimensionMismatch("cubic needs at least 5 variables".into()));
        }
        for p in span_points.iter().chain(plane_points.iter()) {
            if p.len() != 5 || p.iter().any(|a| a.kind() != field) {
                return Err(Error::DimensionMismatch("points must have 5 coordinates over the cubic's field".into()));
            }
        }
        let rows: Vec<Vec<FieldElement>> = span_points.iter().chain(plane_points.iter()).cloned().collect();
        if Matrix::from_rows(field, 5, rows)?.rank() != 5 {
            return Err(Error::Degenerate("line and plane points do not span ℙ⁴".into()));
        }
        let line = LineInX { cubic: cubic.clone(), span_points, plane_points };
        let nv = 2 + line.nparams();
        let images = line.images(nv, &[Some(0), Some(1), None, None, None, None]);
        if !cubic.substitute(&images)?.is_zero() {
            return Err(Error::Degenerate("cubic does not vanish on the line".into()));
        }
        Ok(line)
    }

    /// The line {x₁ = x₂ = x₄ = 0} with the plane {x₀ = x₃ = 0}, spanned by e₁, e₂, e₄.
    pub fn coordinate_line(cubic: &Polynomial) -> Result<Self> {
        let pts = points_from_i64(
            cubic.field(),
            &[[1, 0, 0, 0, 0], [0, 0, 0, 1, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 0, 1]],
        );
        LineInX::new(cubic, [pts[0].clone(), pts[1].clone()], [pts[2].clone(), pts[3].clone(), pts[4].clone()])
    }

    pub fn cubic(&self) -> &Polynomial {
        &self.cubic
    }

    pub fn span_points(&self) -> &[Vec<FieldElement>; 2] {
        &self.span_points
    }

    pub fn plane_points(&self) -> &[Vec<FieldElement>; 3] {
        &self.plane_points
    }

    pub fn nparams(&self) -> usize {
        self.cubic.nvars() - 5
    }

    pub fn field(&self) -> FieldKind {
        self.cubic.field()
    }

    /// Images of the cubic's variables in a ring of `nv` variables where slots name the
    /// positions of u, v, t, x, y, z (`None` drops the term); parameters follow at the end.
    fn images(&self, nv: usize, slots: &[Option<usize>; 6]) -> Vec<Polynomial> {
        let field = self.field();
        let k = self.nparams();
        let var = |s: Option<usize>| s.map(|i| Polynomial::var(field, nv, i));
        let mut out = Vec::with_capacity(5 + k);
        for i in 0..5 {
            let mut acc = Polynomial::zero(field, nv);
            for (j, p) in self.span_points.iter().enumerate() {
                if let Some(w) = var(slots[j]) {
                    acc = &acc + &w.scale(&p[i]);
                }
            }
            if let Some(t) = var(slots[2]) {
                let mut plane = Polynomial::zero(field, nv);
                for (j, p) in self.plane_points.iter().enumerate() {
                    if let Some(w) = var(slots[3 + j]) {
                        plane = &plane + &w.scale(&p[i]);
                    }
                }
                acc = &acc + &(&t * &plane);
            }
            out.push(acc);
        }
        for j in 0..k {
            out.push(Polynomial::var(field, nv, nv - k + j));
        }
        out
    }

    /// Substitutes a map from the plane (with parameters) into the ambient coordinates.
    pub fn compose(&self, g: &Polynomial, coords: &[Polynomial; 5]) -> Result<Polynomial> {
        let field = self.field();
        let nv = coords[0].nvars();
        let k = g.nvars() - 5;
        let mut images: Vec<Polynomial> = coords.to_vec();
        for j in 0..k {
            images.push(Polynomial::var(field, nv, nv - k + j));
        }
        g.substitute(&images)
    }
}

/// The conic bundle of a line: symmetric matrix, discriminant quintic, conic C and ψ-cubics.
#[derive(Clone, Debug)]
pub struct ConicBundleData {
    pub conic_matrix: [[Polynomial; 3]; 3],
    pub quintic: Polynomial,
    pub conic_c: Polynomial,
    /// Ambient coordinates of ψ as cubics in the plane variables.
    pub psi_cubics: [Polynomial; 5],
    /// Third adjugate column (u, v, t components of the fibre singular point).
    pub adjugate_column: [Polynomial; 3],
    nparams: usize,
}

impl ConicBundleData {
    pub fn nparams(&self) -> usize {
        self.nparams
    }
}

fn plane_degree(p: &Polynomial) -> Option<u32> {
    let mut d = None;
    for (m, _) in p.terms() {
        let e = m.exp(0) + m.exp(1) + m.exp(2);
        match d {
            None => d = Some(e),
            Some(f) if f != e => return None,
            _ => {}
        }
    }
    d
}

pub fn conic_bundle(line: &LineInX) -> Result<ConicBundleData> {
    let field = line.field();
    let k = line.nparams();
    let nv = 6 + k;
    let images = line.images(nv, &[Some(0), Some(1), Some(2), Some(3), Some(4), Some(5)]);
    let g = line.cubic.substitute(&images)?;
    let t = Polynomial::var(field, nv, 2);
    let h = g.exact_div(&t).map_err(|_| Error::Degenerate("substitution not divisible by t; the line is not on X".into()))?;
    let parts = h.split_leading_vars(3);
    let coef = |e: [u32; 3]| -> Polynomial {
        let m = Monomial::from_exps(&e).expect("small exponents");
        parts.get(&m).cloned().unwrap_or_else(|| Polynomial::zero(field, 3 + k))
    };
    for m in parts.keys() {
        if m.degree() != 2 {
            return Err(Error::Degenerate("quotient is not quadratic in (u, v, t)".into()));
        }
    }
    let half = field.from_ratio(1, 2)?;
    let m11 = coef([2, 0, 0]);
    let m22 = coef([0, 2, 0]);
    let m33 = coef([0, 0, 2]);
    let m12 = coef([1, 1, 0]).scale(&half);
    let m13 = coef([1, 0, 1]).scale(&half);
    let m23 = coef([0, 1, 1]).scale(&half);
    let expected = [[1, 1, 2], [1, 1, 2], [2, 2, 3]];
    let matrix = [
        [m11.clone(), m12.clone(), m13.clone()],
        [m12.clone(), m22.clone(), m23.clone()],
        [m13.clone(), m23.clone(), m33.clone()],
    ];
    for i in 0..3 {
        for j in 0..3 {
            let e = &matrix[i][j];
            if !e.is_zero() && plane_degree(e) != Some(expected[i][j]) {
                return Err(Error::Degenerate(format!("entry ({i},{j}) has the wrong degree")));
            }
        }
    }
    let quintic = det3(&matrix);
    if quintic.is_zero() {
        return Err(Error::Degenerate("discriminant vanishes identically".into()));
    }
    let conic_c = &(&m11 * &m22) - &(&m12 * &m12);
    let adj13 = &(&m12 * &m23) - &(&m13 * &m22);
    let adj23 = &(&m12 * &m13) - &(&m11 * &m23);
    let adj33 = conic_c.clone();
    let pv = 3 + k;
    let x = Polynomial::var(field, pv, 0);
    let y = Polynomial::var(field, pv, 1);
    let z = Polynomial::var(field, pv, 2);
    let psi: Vec<Polynomial> = (0..5)
        .map(|i| {
            let [p1, p2] = &line.span_points;
            let [a, b, c] = &line.plane_points;
            let plane = &(&x.scale(&a[i]) + &y.scale(&b[i])) + &z.scale(&c[i]);
            &(&adj13.scale(&p1[i]) + &adj23.scale(&p2[i])) + &(&adj33 * &plane)
        })
        .collect();
    Ok(ConicBundleData {
        conic_matrix: matrix,
        quintic,
        conic_c,
        psi_cubics: psi.try_into().expect("five cubics"),
        adjugate_column: [adj13, adj23, adj33],
        nparams: k,
    })
}

/// Whether the discriminant quintic is smooth (the line is non-special).
pub fn special_line_test(data: &ConicBundleData) -> Result<bool> {
    if data.nparams != 0 {
        return Err(Error::Unsupported("smoothness of a parametric quintic".into()));
    }
    smoothness(&data.quintic)
}

/// Result of checking that the quadrics through ψ(Q) are the polars of points of the line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct I2Report {
    /// polar(F, P)(ψ) ≡ 0 mod Q for P = P₁, P₂, P₁ + P₂.
    pub polars_vanish: Vec<bool>,
    pub polars_independent: bool,
    /// dim{G ∈ S²(ℙ⁴) : G(ψ) ≡ 0 mod Q}.
    pub quadrics_dim: usize,
}

impl I2Report {
    pub fn passed(&self) -> bool {
        self.polars_vanish.iter().all(|&b| b) && self.polars_independent && self.quadrics_dim == 2
    }
}

/// Divisibility of `g` by `q`.
fn divisible(g: &Polynomial, q: &Polynomial) -> bool {
    g.is_zero() || g.exact_div(q).is_ok()
}

pub fn verify_i2_polars(data: &ConicBundleData, line: &LineInX) -> Result<I2Report> {
    if data.nparams != 0 {
        return Err(Error::Unsupported("parametric cubic".into()));
    }
    let field = line.field();
    let f = line.cubic();
    let [p1, p2] = line.span_points();
    let sum: Vec<FieldElement> = p1.iter().zip(p2).map(|(a, b)| a + b).collect();
    let mut polars = Vec::new();
    let mut polars_vanish = Vec::new();
    for p in [p1, p2, &sum] {
        let g = polar(f, p)?;
        let composed = line.compose(&g, &data.psi_cubics)?;
        polars_vanish.push(divisible(&composed, &data.quintic));
        polars.push(g);
    }
    let b2 = MonomialBasis::new(5, 2);
    let rows = polars[..2].iter().map(|g| g.to_vector(&b2)).collect::<Result<Vec<_>>>()?;
    let polars_independent = Matrix::from_rows(field, b2.len(), rows)?.rank() == 2;
    let q_multiples = ideal_piece(std::slice::from_ref(&data.quintic), 6)?;
    let images = b2
        .monomials()
        .iter()
        .map(|m| {
            let g = Polynomial::monomial(field, 5, *m, field.one());
            q_multiples.normal_form(&line.compose(&g, &data.psi_cubics)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let cols = images[0].len();
    let quadrics_dim = b2.len() - Matrix::from_rows(field, cols, images)?.rank();
    Ok(I2Report { polars_vanish, polars_independent, quadrics_dim })
}

/// Rational part of the intersection of a plane curve with one component of a conic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentCycle {
    pub component: Polynomial,
    pub points: Vec<(PlanePoint, usize)>,
    pub residual_degree: usize,
    /// (degree, multiplicity) of the square-free parts without roots in the field.
    pub residual_pieces: Vec<(usize, usize)>,
}

/// The cycle C·Q for a reduced conic C with a known rational point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriplePointData {
    pub components: Vec<ComponentCycle>,
    /// Rational points of C ∩ Q with intersection multiplicities (summed over components).
    pub cycle: Vec<(PlanePoint, usize)>,
    /// Degree of the part of the cycle supported at non-rational points.
    pub residual_degree: usize,
    /// D = half of the rational part of the cycle.
    pub rational_points: Vec<(PlanePoint, usize)>,
    pub is_reduced_d: bool,
}

impl TriplePointData {
    pub fn is_rational(&self) -> bool {
        self.residual_degree == 0
    }

    pub fn multiplicity_of(&self, p: &PlanePoint) -> usize {
        self.cycle.iter().find(|(q, _)| q == p).map_or(0, |(_, m)| *m)
    }
}

/// Linear form through two distinct plane points (their cross product).
pub fn line_through(p: &[FieldElement], q: &[FieldElement]) -> Result<Polynomial> {
    let field = p[0].kind();
    let c = [
        &(&p[1] * &q[2]) - &(&p[2] * &q[1]),
        &(&p[2] * &q[0]) - &(&p[0] * &q[2]),
        &(&p[0] * &q[1]) - &(&p[1] * &q[0]),
    ];
    if c.iter().all(|a| a.is_zero()) {
        return Err(Error::Degenerate("points coincide".into()));
    }
    Ok(Polynomial::linear_form(field, &c))
}

/// Two points spanning the line {ℓ = 0}.
pub fn points_on_line(l: &Polynomial) -> Result<[PlanePoint; 2]> {
    let field = l.field();
    let coeffs: Vec<FieldElement> = (0..3).map(|i| l.coeff(&Monomial::var(i))).collect();
    let ker = kernel(&Matrix::from_rows(field, 3, vec![coeffs])?);
    if ker.len() != 2 {
        return Err(Error::Degenerate("not a line".into()));
    }
    Ok([normalize_plane_point(&ker[0])?, normalize_plane_point(&ker[1])?])
}

/// Parametrization (s, t) ↦ s·a + t·b of a line, as three linear binary forms.
pub fn line_parametrization(a: &PlanePoint, b: &PlanePoint) -> [Polynomial; 3] {
    let field = a[0].kind();
    std::array::from_fn(|i| {
        &Polynomial::var(field, 2, 0).scale(&a[i]) + &Polynomial::var(field, 2, 1).scale(&b[i])
    })
}

/// Birational parametrization ℙ¹ → C of a smooth conic through a rational point p₀, by the
/// pencil of lines through p₀.  Returns quadratic binary forms.
pub fn conic_parametrization(c: &Polynomial, p0: &PlanePoint) -> Result<[Polynomial; 3]> {
    let field = c.field();
    if !c.evaluate(p0)?.is_zero() {
        return Err(Error::Degenerate("point not on the conic".into()));
    }
    let lead = p0.iter().position(|a| !a.is_zero()).ok_or(Error::ZeroPoint)?;
    let others: Vec<usize> = (0..3).filter(|&i| i != lead).collect();
    let s = Polynomial::var(field, 2, 0);
    let t = Polynomial::var(field, 2, 1);
    let d: [Polynomial; 3] = std::array::from_fn(|i| {
        if i == others[0] {
            s.clone()
        } else if i == others[1] {
            t.clone()
        } else {
            Polynomial::zero(field, 2)
        }
    });
    let grad: Vec<FieldElement> = c.gradient().iter().map(|g| g.evaluate(p0)).collect::<Result<_>>()?;
    let c_d = c.substitute(&d)?;
    let mut slope = Polynomial::zero(field, 2);
    for i in 0..3 {
        slope = &slope + &d[i].scale(&grad[i]);
    }
    let param: [Polynomial; 3] = std::array::from_fn(|i| &c_d.scale(&p0[i]) - &(&slope * &d[i]));
    if param.iter().all(|p| p.is_zero()) {
        return Err(Error::Degenerate("conic is singular at the point".into()));
    }
    Ok(param)
}

/// Rational points with multiplicities, residual degree, and (degree, multiplicity) residual pieces.
type Restriction = (Vec<(PlanePoint, usize)>, usize, Vec<(usize, usize)>);

fn restrict_and_factor(q: &Polynomial, param: &[Polynomial; 3]) -> Result<Restriction> {
    let r = q.substitute(param)?;
    if r.is_zero() {
        return Err(Error::Degenerate("curve contains the component".into()));
    }
    let fac = univariate_factor_multiplicities(&r)?;
    let mut pts = Vec::new();
    for (st, m) in fac.roots {
        let v: Vec<FieldElement> = param.iter().map(|p| p.evaluate(&st)).collect::<Result<_>>()?;
        pts.push((normalize_plane_point(&v)?, m));
    }
    for (_, m) in &fac.residual_pieces {
        if m % 2 == 1 {
            return Err(Error::OddMultiplicity { point: "non-rational point".into(), mult: *m });
        }
    }
    Ok((pts, fac.residual_degree, fac.residual_pieces))
}

/// Intersection multiplicities of the binary restriction of `q` to a line through two points.
pub fn line_intersection(q: &Polynomial, a: &PlanePoint, b: &PlanePoint) -> Result<ComponentCycle> {
    let param = line_parametrization(a, b);
    let r = q.substitute(&param)?;
    if r.is_zero() {
        return Err(Error::Degenerate("curve contains the line".into()));
    }
    let fac = univariate_factor_multiplicities(&r)?;
    let mut points = Vec::new();
    for (st, m) in fac.roots {
        let v: Vec<FieldElement> = param.iter().map(|p| p.evaluate(&st)).collect::<Result<_>>()?;
        points.push((normalize_plane_point(&v)?, m));
    }
    Ok(ComponentCycle {
        component: line_through(a, b)?,
        points,
        residual_degree: fac.residual_degree,
        residual_pieces: fac.residual_pieces,
    })
}

/// Splits a rank-2 conic into its two lines when they are defined over the field.
pub fn split_line_pair(c: &Polynomial) -> Result<[Polynomial; 2]> {
    let field = c.field();
    let gram = crate::jacobian::gram_matrix(c)?;
    let ker = kernel(&gram);
    if ker.len() != 1 {
        return Err(Error::Degenerate("conic is not a line pair".into()));
    }
    let s0 = normalize_plane_point(&ker[0])?;
    let j = s0.iter().position(|a| !a.is_zero()).expect("nonzero");
    let mut e: Vec<PlanePoint> = Vec::new();
    for i in (0..3).filter(|&i| i != j) {
        let mut v = [field.zero(), field.zero(), field.zero()];
        v[i] = field.one();
        e.push(v);
    }
    let param = line_parametrization(&e[0], &e[1]);
    let fac = univariate_factor_multiplicities(&c.substitute(&param)?)?;
    if fac.residual_degree > 0 || fac.roots.len() != 2 {
        return Err(Error::NotRational("line pair not split over the field".into()));
    }
    let mut lines = Vec::new();
    for (st, _) in &fac.roots {
        let v: Vec<FieldElement> = param.iter().map(|p| p.evaluate(st)).collect::<Result<_>>()?;
        lines.push(line_through(&s0, &v)?.make_monic());
    }
    Ok([lines[0].clone(), lines[1].clone()])
}

/// The cycle C·Q of a reduced conic with a plane curve; `rational_point` must lie on C when C
/// is smooth (it is ignored for line pairs).
pub fn conic_cycle(c: &Polynomial, q: &Polynomial, rational_point: Option<&PlanePoint>) -> Result<TriplePointData> {
    let rank = quadric_rank(c)?;
    let mut components = Vec::new();
    match rank {
        3 => {
            let p0 = rational_point.ok_or_else(|| Error::NotRational("smooth conic without a rational point".into()))?;
            let param = conic_parametrization(c, p0)?;
            let (points, residual_degree, residual_pieces) = restrict_and_factor(q, &param)?;
            components.push(ComponentCycle { component: c.clone(), points, residual_degree, residual_pieces });
        }
        2 => {
            for l in split_line_pair(c)? {
                let [a, b] = points_on_line(&l)?;
                let param = line_parametrization(&a, &b);
                let (points, residual_degree, residual_pieces) = restrict_and_factor(q, &param)?;
                components.push(ComponentCycle { component: l, points, residual_degree, residual_pieces });
            }
        }
        _ => return Err(Error::Degenerate("conic is not reduced".into())),
    }
    let mut cycle: Vec<(PlanePoint, usize)> = Vec::new();
    for comp in &components {
        for (p, m) in &comp.points {
            match cycle.iter_mut().find(|(q, _)| q == p) {
                Some(entry) => entry.1 += m,
                None => cycle.push((p.clone(), *m)),
            }
        }
    }
    for (p, m) in &cycle {
        if m % 2 == 1 {
            return Err(Error::OddMultiplicity { point: point_to_string(p), mult: *m });
        }
    }
    let residual_degree = components.iter().map(|c| c.residual_degree).sum();
    let rational_points: Vec<(PlanePoint, usize)> = cycle.iter().map(|(p, m)| (p.clone(), m / 2)).collect();
    let is_reduced_d = residual_degree == 0 && rational_points.iter().all(|(_, m)| *m == 1);
    Ok(TriplePointData { components, cycle, residual_degree, rational_points, is_reduced_d })
}

/// The triple-point cycle of a conic bundle.  A rational point of C comes from {M₁₁ = M₁₂ = 0}.
pub fn triple_points(data: &ConicBundleData) -> Result<TriplePointData> {
    if data.nparams != 0 {
        return Err(Error::Unsupported("parametric conic bundle".into()));
    }
    let c = &data.conic_c;
    if c.is_zero() {
        return Err(Error::Degenerate("conic C vanishes".into()));
    }
    let field = c.field();
    let lin = |p: &Polynomial| -> Vec<FieldElement> { (0..3).map(|i| p.coeff(&Monomial::var(i))).collect() };
    let m = Matrix::from_rows(field, 3, vec![lin(&data.conic_matrix[0][0]), lin(&data.conic_matrix[0][1])])?;
    let ker = kernel(&m);
    let hint = if ker.len() == 1 { Some(normalize_plane_point(&ker[0])?) } else { None };
    conic_cycle(c, &data.quintic, hint.as_ref())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse, VarSet};

    #[test]
    fn conic_parametrization_covers_the_conic() {
        let q = FieldKind::Rational;
        let c = parse("x*z - y^2 + 2*x*y", &VarSet::plane(), q).unwrap();
        let p0 = [q.one(), q.zero(), q.zero()];
        let param = conic_parametrization(&c, &p0).unwrap();
        assert!(c.substitute(&param).unwrap().is_zero());
        assert!(param.iter().all(|p| p.is_homogeneous_of(2)));
    }

    #[test]
    fn line_pair_splits() {
        let q = FieldKind::Rational;
        let c = parse("x*z + 2*x*y", &VarSet::plane(), q).unwrap();
        let lines = split_line_pair(&c).unwrap();
        let prod = &lines[0] * &lines[1];
        assert_eq!(prod.make_monic(), c.make_monic());
        let irreducible = parse("x^2 + y^2", &VarSet::plane(), q).unwrap();
        assert!(matches!(split_line_pair(&irreducible), Err(Error::NotRational(_))));
    }
}
