//! Plane quintics with an odd 2-torsion datum (conic C with C·Q = 2D), first and second
//! Gaussian maps, and the projection τ to the Jacobian ring.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldKind};
use crate::jacobian::{ideal_piece, quadric_rank, smoothness, GradedPiece, JacobianRing};
use crate::linalg::{kernel, solve, Matrix};
use crate::poly::series::LocalBranch;
use crate::poly::{det3, MonomialBasis, Polynomial};
use crate::threefold::{conic_cycle, point_to_string, PlanePoint, TriplePointData};

/// Q, C and D with C·Q = 2D verified.
#[derive(Clone, Debug)]
pub struct QuinticConfig {
    pub quintic: Polynomial,
    pub conic: Polynomial,
    /// Points of D with multiplicities, total degree 5.
    pub divisor: Vec<(PlanePoint, usize)>,
    /// Tangent line of Q at each point of D, in the order of `divisor`.
    pub tangent_lines: Vec<Polynomial>,
    pub cycle: TriplePointData,
}

impl QuinticConfig {
    /// Checks smoothness of Q, reducedness of C and C·Q = 2D.
    pub fn new(quintic: &Polynomial, conic: &Polynomial, divisor: Vec<(PlanePoint, usize)>) -> Result<Self> {
        if quintic.nvars() != 3 || conic.nvars() != 3 {
            return Err(Error::DimensionMismatch("plane curves expected".into()));
        }
        quintic.check_homogeneous(5)?;
        conic.check_homogeneous(2)?;
        if quintic.is_zero() || conic.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if divisor.iter().map(|(_, m)| m).sum::<usize>() != 5 {
            return Err(Error::Degenerate("divisor must have degree 5".into()));
        }
        if !smoothness(quintic)? {
            return Err(Error::Singular("quintic".into()));
        }
        if quadric_rank(conic)? < 2 {
            return Err(Error::Degenerate("conic is a double line".into()));
        }
        let hint = divisor.first().map(|(p, _)| p.clone());
        let cycle = conic_cycle(conic, quintic, hint.as_ref())?;
        if !cycle.is_rational() {
            return Err(Error::NotRational(format!("{} non-rational intersection points", cycle.residual_degree)));
        }
        let matches = cycle.cycle.len() == divisor.len()
            && divisor.iter().all(|(p, m)| cycle.multiplicity_of(p) == 2 * m);
        if !matches {
            return Err(Error::Degenerate("C·Q differs from 2D".into()));
        }
        let tangent_lines = divisor
            .iter()
            .map(|(p, _)| {
                let grad: Vec<FieldElement> = quintic.gradient().iter().map(|g| g.evaluate(p)).collect::<Result<_>>()?;
                Ok(Polynomial::linear_form(quintic.field(), &grad))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(QuinticConfig { quintic: quintic.clone(), conic: conic.clone(), divisor, tangent_lines, cycle })
    }

    /// Reads D off the cycle C·Q; `hint` is a rational point of C when C is smooth.
    pub fn from_cycle(quintic: &Polynomial, conic: &Polynomial, hint: Option<&PlanePoint>) -> Result<Self> {
        let cycle = conic_cycle(conic, quintic, hint)?;
        if !cycle.is_rational() {
            return Err(Error::NotRational(format!("{} non-rational intersection points", cycle.residual_degree)));
        }
        QuinticConfig::new(quintic, conic, cycle.rational_points.clone())
    }

    pub fn field(&self) -> FieldKind {
        self.quintic.field()
    }

    pub fn is_reduced(&self) -> bool {
        self.divisor.iter().all(|(_, m)| *m == 1)
    }

    pub fn points(&self) -> Vec<PlanePoint> {
        self.divisor.iter().map(|(p, _)| p.clone()).collect()
    }
}

/// Intersection multiplicity at a smooth point p of Q of a curve G with Q, read off the local
/// branch; `None` when it reaches `precision` (e.g. G contains Q).
pub fn intersection_multiplicity(g: &Polynomial, q: &Polynomial, p: &PlanePoint, precision: usize) -> Result<Option<usize>> {
    Ok(LocalBranch::new(q, p, precision)?.order_of(g))
}

/// Linear system of degree-`degree` curves G with I_p(G, Q) ≥ m at each (p, m) of `divisor`.
pub fn curves_through(q: &Polynomial, divisor: &[(PlanePoint, usize)], degree: u32) -> Result<GradedPiece> {
    let field = q.field();
    let basis = MonomialBasis::new(3, degree);
    let mut rows = Vec::new();
    for (p, m) in divisor {
        let branch = LocalBranch::new(q, p, *m)?;
        rows.extend(branch.conditions(&basis, *m));
    }
    let sols = if rows.is_empty() {
        Matrix::identity(field, basis.len()).row_vecs()
    } else {
        kernel(&Matrix::from_rows(field, basis.len(), rows)?)
    };
    let space = crate::linalg::Subspace::span(field, basis.len(), &sols)?;
    Ok(GradedPiece::new(basis, space))
}

/// Certificate that O(D)⊗O(−1) is a nontrivial odd theta-type 2-torsion datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaCertificate {
    pub line_dim: usize,
    pub no_line_through_d: bool,
    pub oddness_dim: usize,
}

impl AlphaCertificate {
    pub fn accepted(&self) -> bool {
        self.no_line_through_d && self.oddness_dim == 1
    }
}

pub fn alpha_certificate_for(q: &Polynomial, divisor: &[(PlanePoint, usize)]) -> Result<AlphaCertificate> {
    let line_dim = curves_through(q, divisor, 1)?.dim();
    let oddness_dim = curves_through(q, divisor, 2)?.dim();
    Ok(AlphaCertificate { line_dim, no_line_through_d: line_dim == 0, oddness_dim })
}

pub fn alpha_certificate(cfg: &QuinticConfig) -> Result<AlphaCertificate> {
    alpha_certificate_for(&cfg.quintic, &cfg.divisor)
}

/// Two independent linear forms vanishing at p.
pub fn lines_through(p: &PlanePoint) -> Result<[Polynomial; 2]> {
    let field = p[0].kind();
    let ker = kernel(&Matrix::from_rows(field, 3, vec![p.to_vec()])?);
    if ker.len() != 2 {
        return Err(Error::ZeroPoint);
    }
    Ok([Polynomial::linear_form(field, &ker[0]), Polynomial::linear_form(field, &ker[1])])
}

/// det[∇a; ∇b; ∇c] of three plane forms.
pub fn jacobian_determinant(a: &Polynomial, b: &Polynomial, c: &Polynomial) -> Polynomial {
    let [a0, a1, a2]: [Polynomial; 3] = a.gradient().try_into().expect("three variables");
    let [b0, b1, b2]: [Polynomial; 3] = b.gradient().try_into().expect("three variables");
    let [c0, c1, c2]: [Polynomial; 3] = c.gradient().try_into().expect("three variables");
    det3(&[[a0, a1, a2], [b0, b1, b2], [c0, c1, c2]])
}

/// det[∇l₁; ∇l₂; ∇Q] for two independent lines through p, a nonzero multiple of the polar.
pub fn mu1_line_pencil(q: &Polynomial, p: &PlanePoint) -> Result<Polynomial> {
    if !q.evaluate(p)?.is_zero() {
        return Err(Error::Degenerate(format!("{} is not on Q", point_to_string(p))));
    }
    let [l1, l2] = lines_through(p)?;
    Ok(jacobian_determinant(&l1, &l2, q))
}

/// Basis of the conics through the given points.
pub fn conics_through(points: &[PlanePoint]) -> Result<Vec<Polynomial>> {
    let field = points[0][0].kind();
    let basis = MonomialBasis::new(3, 2);
    let rows = points
        .iter()
        .map(|p| {
            basis
                .monomials()
                .iter()
                .map(|m| Polynomial::monomial(field, 3, *m, field.one()).evaluate(p))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let ker = kernel(&Matrix::from_rows(field, basis.len(), rows)?);
    Ok(ker.iter().map(|v| Polynomial::from_vector(field, &basis, v)).collect())
}

/// Class of a degree-8 form in S⁸/Q·S³, normalized so the first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mu2Element {
    pub representative: Polynomial,
    pub normal_form: Vec<FieldElement>,
}

/// The subspace Q·S³ ⊂ S⁸.
pub fn quintic_multiples(q: &Polynomial) -> Result<GradedPiece> {
    ideal_piece(std::slice::from_ref(q), 8)
}

impl Mu2Element {
    pub fn new(rho: &Polynomial, q_s3: &GradedPiece) -> Result<Self> {
        rho.check_homogeneous(8)?;
        let mut nf = q_s3.normal_form(rho)?;
        if let Some(lead) = nf.iter().find(|a| !a.is_zero()).cloned() {
            let inv = lead.inv()?;
            for a in nf.iter_mut() {
                *a = &*a * &inv;
            }
        }
        Ok(Mu2Element { representative: rho.clone(), normal_form: nf })
    }

    pub fn is_zero(&self) -> bool {
        self.normal_form.iter().all(|a| a.is_zero())
    }
}

/// Diagnostics of the rank-4 construction.
#[derive(Clone, Debug)]
pub struct Mu2Rank4 {
    pub element: Mu2Element,
    /// W = μ₁(lines through pᵢ)·μ₁(conics through the other four points), degree 10.
    pub product: Polynomial,
    /// Dimension of the kernel of (ρ, μ) ↦ Cρ + Qμ; equals dim S³ = 10.
    pub kernel_dim: usize,
}

/// μ₂ of the rank-4 quadric attached to the i-th point of a reduced D.
pub fn mu2_rank4_detailed(cfg: &QuinticConfig, i: usize) -> Result<Mu2Rank4> {
    if !cfg.is_reduced() || cfg.divisor.len() != 5 {
        return Err(Error::Unsupported("rank-4 route needs a reduced divisor".into()));
    }
    let field = cfg.field();
    let q = &cfg.quintic;
    let pts = cfg.points();
    let pi = pts.get(i).ok_or_else(|| Error::OutOfRange(format!("point index {i}")))?;
    let others: Vec<PlanePoint> = pts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p.clone()).collect();
    let pencil = conics_through(&others)?;
    if pencil.len() != 2 {
        return Err(Error::Degenerate(format!("conics through four points form a {}-dimensional space", pencil.len())));
    }
    let w = &mu1_line_pencil(q, pi)? * &jacobian_determinant(&pencil[0], &pencil[1], q);
    let b8 = MonomialBasis::new(3, 8);
    let b5 = MonomialBasis::new(3, 5);
    let b10 = MonomialBasis::new(3, 10);
    let mut cols = Vec::new();
    for m in b8.monomials() {
        cols.push(cfg.conic.mul_monomial(m).to_vector(&b10)?);
    }
    for m in b5.monomials() {
        cols.push(q.mul_monomial(m).to_vector(&b10)?);
    }
    let a = Matrix::from_rows(field, b10.len(), cols)?.transpose();
    let sol = solve(&a, &w.to_vector(&b10)?)?.ok_or_else(|| Error::Infeasible("C·ρ + Q·μ = W".into()))?;
    let rho = Polynomial::from_vector(field, &b8, &sol.particular[..b8.len()]);
    let element = Mu2Element::new(&rho, &quintic_multiples(q)?)?;
    Ok(Mu2Rank4 { element, product: w, kernel_dim: sol.kernel.len() })
}

pub fn mu2_rank4(cfg: &QuinticConfig, i: usize) -> Result<Mu2Element> {
    let r = mu2_rank4_detailed(cfg, i)?;
    if r.kernel_dim != 10 {
        return Err(Error::Degenerate(format!("division kernel has dimension {}", r.kernel_dim)));
    }
    Ok(r.element)
}

/// h with z·h = y·Q_y − Q, for a quintic in the normalized frame (x, y, z first, any
/// parameters after).
pub fn rank3_h(q: &Polynomial) -> Result<Polynomial> {
    let f = q.field();
    let nv = q.nvars();
    let y = Polynomial::var(f, nv, 1);
    let z = Polynomial::var(f, nv, 2);
    let rhs = &(&y * &q.partial(1)?) - q;
    rhs.exact_div(&z)
        .map_err(|_| Error::NotDivisible("y·Q_y − Q is not divisible by z; input not in the normalized frame".into()))
}

/// μ₂ of the rank-3 quadric in the normalized frame: ρ₁ = h·Q_y.
pub fn mu2_rank3(cfg: &QuinticConfig) -> Result<Mu2Element> {
    let h = rank3_h(&cfg.quintic)?;
    let rho = &h * &cfg.quintic.partial(1)?;
    Mu2Element::new(&rho, &quintic_multiples(&cfg.quintic)?)
}

/// ρ ∈ J⁸_Q (which contains Q·S³).
pub fn tau_membership(rho: &Mu2Element, ring: &JacobianRing) -> Result<bool> {
    ring.contains(&rho.representative)
}

/// Linear independence of the classes of ρ₀ and ρ₁ in S⁸/Q·S³.
pub fn mu2_injectivity_check(cfg: &QuinticConfig) -> Result<bool> {
    let a = mu2_rank4(cfg, 0)?;
    let b = mu2_rank4(cfg, 1)?;
    classes_independent(&[a, b], cfg.field())
}

pub fn classes_independent(elems: &[Mu2Element], field: FieldKind) -> Result<bool> {
    let cols = elems.first().map_or(0, |e| e.normal_form.len());
    let m = Matrix::from_rows(field, cols, elems.iter().map(|e| e.normal_form.clone()).collect())?;
    Ok(m.rank() == elems.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse, VarSet};

    fn plane(s: &str) -> Polynomial {
        parse(s, &VarSet::plane(), FieldKind::Rational).unwrap()
    }

    #[test]
    fn mu1_at_coordinate_point_is_partial() {
        let q = FieldKind::Rational;
        let f = plane("x^5 + x*y^4 + z^5 + x^2*z^3");
        let p = [q.zero(), q.one(), q.zero()];
        let m = mu1_line_pencil(&f, &p).unwrap();
        let qy = f.partial(1).unwrap();
        assert!(m == qy || m == -&qy);
        assert!(mu1_line_pencil(&f, &[q.one(), q.zero(), q.zero()]).is_err());
    }

    #[test]
    fn collinear_divisor_has_a_line() {
        let q = FieldKind::Rational;
        // {x = 0} meets Q where y·z·(y − z)·(y + z)·(y − 2z) vanishes
        let f = plane("x^5 + x*y^4 + x*z^4 + y^4*z - 2*y^3*z^2 - y^2*z^3 + 2*y*z^4");
        let d: Vec<(PlanePoint, usize)> = [[0, 0, 1], [0, 1, 0], [0, 1, 1], [0, 1, -1], [0, 2, 1]]
            .iter()
            .map(|p| ([q.from_i64(p[0]), q.from_i64(p[1]), q.from_i64(p[2])], 1))
            .collect();
        for (p, _) in &d {
            assert!(f.evaluate(p).unwrap().is_zero());
        }
        let cert = alpha_certificate_for(&f, &d).unwrap();
        assert_eq!(cert.line_dim, 1);
        assert!(!cert.accepted());
    }
}
