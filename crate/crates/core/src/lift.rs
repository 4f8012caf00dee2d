//! Linear systems on the blow-up of ℙ² at D, realized as plane curves with base conditions,
//! and the lift τ̃ of the projection S⁸/Q·S³ → R⁸_Q to the cokernel of
//! f: V_{2M}^{⊕3} → V_{4M}, (S₀, S₁, S₂) ↦ Σ SᵢTᵢ.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldKind};
use crate::gauss::QuinticConfig;
use crate::jacobian::{GradedPiece, JacobianRing};
use crate::linalg::{kernel, solve, Matrix, Subspace};
use crate::poly::{MonomialBasis, Polynomial};
use crate::threefold::{point_to_string, PlanePoint};

/// Kind of condition imposed at a point of D.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionKind {
    /// Multiplicity ≥ k.
    Multiplicity,
    /// Multiplicity ≥ k at p and at the infinitely near point along the tangent line: in local
    /// coordinates (a, b) with b the tangent line, no monomial aⁱbʲ with i + 2j < 2k.
    Osculation,
}

#[derive(Clone, Debug)]
pub struct BaseCondition {
    pub point: PlanePoint,
    pub order: usize,
    pub kind: ConditionKind,
    /// Line used for the local frame; the tangent line for osculation conditions.
    pub line: Polynomial,
}

impl BaseCondition {
    /// Number of linear conditions imposed: k(k+1)/2 or k(k+1).
    pub fn naive_count(&self) -> usize {
        let k = self.order;
        match self.kind {
            ConditionKind::Multiplicity => k * (k + 1) / 2,
            ConditionKind::Osculation => k * (k + 1),
        }
    }

    fn admits(&self, i: u32, j: u32) -> bool {
        let k = self.order as u32;
        match self.kind {
            ConditionKind::Multiplicity => i + j >= k,
            ConditionKind::Osculation => i + 2 * j >= 2 * k,
        }
    }

    /// Local frame (u, v) with p, u spanning the line and ℓ(v) = 1.
    fn frame(&self) -> Result<[[FieldElement; 3]; 2]> {
        let field = self.line.field();
        let l: Vec<FieldElement> = (0..3)
            .map(|i| self.line.coeff(&crate::poly::Monomial::var(i)))
            .collect();
        if !self.line.is_homogeneous_of(1) || l.iter().all(|c| c.is_zero()) {
            return Err(Error::Degenerate("frame line must be a nonzero linear form".into()));
        }
        if !crate::linalg::dot(&l, &self.point, field).is_zero() {
            return Err(Error::Degenerate(format!("frame line misses {}", point_to_string(&self.point))));
        }
        let ker = kernel(&Matrix::from_rows(field, 3, vec![l.clone()])?);
        let p = Matrix::from_rows(field, 3, vec![self.point.to_vec()])?;
        let u = ker
            .into_iter()
            .find(|k| {
                let mut m = p.row_vecs();
                m.push(k.clone());
                Matrix::from_rows(field, 3, m).expect("shape").rank() == 2
            })
            .ok_or_else(|| Error::Degenerate("no frame direction".into()))?;
        let j = l.iter().position(|c| !c.is_zero()).expect("nonzero line");
        let mut v = [field.zero(), field.zero(), field.zero()];
        v[j] = l[j].inv()?;
        Ok([[u[0].clone(), u[1].clone(), u[2].clone()], v])
    }

    /// Rows of linear functionals on the coordinates of `basis`.
    pub fn rows(&self, basis: &MonomialBasis) -> Result<Vec<Vec<FieldElement>>> {
        let field = self.line.field();
        let [u, v] = self.frame()?;
        // x_i = p_i·w + u_i·a + v_i·b in the ring (a, b, w)
        let images: Vec<Polynomial> = (0..3)
            .map(|i| Polynomial::linear_form(field, &[u[i].clone(), v[i].clone(), self.point[i].clone()]))
            .collect();
        let d = basis.degree();
        let local = MonomialBasis::new(3, d);
        let wanted: Vec<usize> = local
            .monomials()
            .iter()
            .enumerate()
            .filter(|(_, m)| !self.admits(m.exp(0), m.exp(1)))
            .map(|(i, _)| i)
            .collect();
        let cols = basis
            .monomials()
            .iter()
            .map(|m| Polynomial::monomial(field, 3, *m, field.one()).substitute(&images)?.to_vector(&local))
            .collect::<Result<Vec<_>>>()?;
        Ok(wanted.iter().map(|&r| cols.iter().map(|c| c[r].clone()).collect()).collect())
    }
}

/// Plane curves of a given degree satisfying the base conditions.
#[derive(Clone, Debug)]
pub struct BaseConditionedSystem {
    pub degree: u32,
    pub conditions: Vec<BaseCondition>,
    pub space: GradedPiece,
    condition_matrix: Matrix,
}

impl BaseConditionedSystem {
    pub fn new(field: FieldKind, degree: u32, conditions: Vec<BaseCondition>) -> Result<Self> {
        let basis = MonomialBasis::new(3, degree);
        let mut rows = Vec::new();
        for c in &conditions {
            rows.extend(c.rows(&basis)?);
        }
        let condition_matrix = Matrix::from_rows(field, basis.len(), rows)?;
        let sols = if condition_matrix.rows() == 0 {
            Matrix::identity(field, basis.len()).row_vecs()
        } else {
            kernel(&condition_matrix)
        };
        let space = GradedPiece::new(basis.clone(), Subspace::span(field, basis.len(), &sols)?);
        Ok(BaseConditionedSystem { degree, conditions, space, condition_matrix })
    }

    /// Conditions "order k along D": multiplicity k at reduced points, osculation of order 2k
    /// along the tangent line at double points.
    pub fn along_divisor(cfg: &QuinticConfig, degree: u32, k: usize) -> Result<Self> {
        let mut conds = Vec::new();
        for ((p, m), line) in cfg.divisor.iter().zip(&cfg.tangent_lines) {
            let kind = match m {
                1 => ConditionKind::Multiplicity,
                2 => ConditionKind::Osculation,
                _ => return Err(Error::Unsupported(format!("point of multiplicity {m} in D"))),
            };
            conds.push(BaseCondition { point: p.clone(), order: k, kind, line: line.clone() });
        }
        BaseConditionedSystem::new(cfg.field(), degree, conds)
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn naive_count(&self) -> usize {
        self.conditions.iter().map(|c| c.naive_count()).sum()
    }

    /// dim S^degree minus the number of conditions, clamped at 0.
    pub fn expected_dim(&self) -> usize {
        self.space.ambient_dim().saturating_sub(self.naive_count())
    }

    pub fn has_expected_dim(&self) -> bool {
        self.dim() == self.expected_dim()
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        self.space.contains(p)
    }

    /// Values of the condition functionals on a form.
    pub fn evaluate_conditions(&self, p: &Polynomial) -> Result<Vec<FieldElement>> {
        self.condition_matrix.mul_vec(&self.space.vector(p)?)
    }

    pub fn condition_matrix(&self) -> &Matrix {
        &self.condition_matrix
    }

    /// Coordinates of a member in the reduced basis of the system.
    pub fn chart(&self, p: &Polynomial) -> Result<Vec<FieldElement>> {
        self.space
            .space()
            .chart_coords(&self.space.vector(p)?)
            .ok_or_else(|| Error::Degenerate(format!("form of degree {} violates the base conditions", self.degree)))
    }

    pub fn from_chart(&self, coords: &[FieldElement]) -> Polynomial {
        self.space.polynomial(&self.space.space().from_chart(coords))
    }
}

/// Tᵢ = C·Q_{xᵢ} − Q·C_{xᵢ}.
pub fn build_ti(cfg: &QuinticConfig) -> Result<[Polynomial; 3]> {
    let (q, c) = (&cfg.quintic, &cfg.conic);
    let mut out = Vec::new();
    for i in 0..3 {
        out.push(&(c * &q.partial(i)?) - &(q * &c.partial(i)?));
    }
    Ok(out.try_into().expect("three sextics"))
}

/// Σ xᵢTᵢ − 3CQ.
pub fn euler_defect(cfg: &QuinticConfig, t: &[Polynomial; 3]) -> Polynomial {
    let field = cfg.field();
    let mut acc = Polynomial::zero(field, 3);
    for (i, ti) in t.iter().enumerate() {
        acc = &acc + &(&Polynomial::var(field, 3, i) * ti);
    }
    &acc - &(&cfg.conic * &cfg.quintic).scale(&field.from_i64(3))
}

/// All data of the lifting construction for one configuration.
#[derive(Clone, Debug)]
pub struct LiftContext {
    pub cfg: QuinticConfig,
    pub t: [Polynomial; 3],
    pub v2m: BaseConditionedSystem,
    pub v4m: BaseConditionedSystem,
    pub v4m_minus_q: BaseConditionedSystem,
    /// Image of f in the chart coordinates of V4M.
    pub image_f: Subspace,
    /// image f + Q·V_{4M−Q′}, the indeterminacy of the lift; equals image f when S is a Del
    /// Pezzo surface.
    pub indeterminacy: Subspace,
    /// Jacobian ring of Q up to degree 8.
    pub ring: JacobianRing,
    /// The cubic threefold F and dim R⁴_F, when the configuration came from one.
    pub cubic: Option<(Polynomial, usize)>,
    /// Q·S⁷ in S¹² intersected with the equations of V4M, used to solve for μ.
    mu_matrix: Matrix,
    /// Columns (C²·m | m ∈ S⁸) and (Q·m | m ∈ S⁷) in S¹² coordinates.
    h_matrix: Matrix,
}

impl LiftContext {
    pub fn new(cfg: &QuinticConfig) -> Result<Self> {
        LiftContext::build(cfg, None)
    }

    pub fn with_cubic(cfg: &QuinticConfig, cubic: &Polynomial) -> Result<Self> {
        let r4 = JacobianRing::up_to(cubic, 4)?.dim(4)?;
        LiftContext::build(cfg, Some((cubic.clone(), r4)))
    }

    fn build(cfg: &QuinticConfig, cubic: Option<(Polynomial, usize)>) -> Result<Self> {
        let field = cfg.field();
        let t = build_ti(cfg)?;
        let v2m = BaseConditionedSystem::along_divisor(cfg, 6, 2)?;
        let v4m = BaseConditionedSystem::along_divisor(cfg, 12, 4)?;
        let v4m_minus_q = BaseConditionedSystem::along_divisor(cfg, 7, 3)?;
        let mut gens = Vec::new();
        for ti in &t {
            for s in v2m.space.elements() {
                let prod = &s * ti;
                gens.push(v4m.chart(&prod).map_err(|_| Error::Degenerate("S·Tᵢ violates the V4M conditions".into()))?);
            }
        }
        let image_f = Subspace::span(field, v4m.dim(), &gens)?;
        let mut qv = Vec::new();
        for g in v4m_minus_q.space.elements() {
            qv.push(v4m.chart(&(&cfg.quintic * &g)).map_err(|_| Error::Degenerate("Q·G violates the V4M conditions".into()))?);
        }
        let indeterminacy = image_f.sum(&Subspace::span(field, v4m.dim(), &qv)?)?;
        let b7 = MonomialBasis::new(3, 7);
        let b8 = MonomialBasis::new(3, 8);
        let b12 = MonomialBasis::new(3, 12);
        let q_cols: Vec<Vec<FieldElement>> = b7
            .monomials()
            .iter()
            .map(|m| cfg.quintic.mul_monomial(m).to_vector(&b12))
            .collect::<Result<_>>()?;
        let q_mat = Matrix::from_rows(field, b12.len(), q_cols.clone())?.transpose();
        let mu_matrix = v4m.condition_matrix().mul(&q_mat)?;
        let c2 = &cfg.conic * &cfg.conic;
        let mut h_cols: Vec<Vec<FieldElement>> = b8
            .monomials()
            .iter()
            .map(|m| c2.mul_monomial(m).to_vector(&b12))
            .collect::<Result<_>>()?;
        h_cols.extend(q_cols);
        let h_matrix = Matrix::from_rows(field, b12.len(), h_cols)?.transpose();
        let ring = JacobianRing::up_to(&cfg.quintic, 8)?;
        Ok(LiftContext { cfg: cfg.clone(), t, v2m, v4m, v4m_minus_q, image_f, indeterminacy, ring, cubic, mu_matrix, h_matrix })
    }

    pub fn field(&self) -> FieldKind {
        self.cfg.field()
    }

    pub fn codim_image_f(&self) -> usize {
        self.v4m.dim() - self.image_f.dim()
    }

    pub fn image_contains(&self, w: &Polynomial) -> Result<bool> {
        match self.v4m.chart(w) {
            Ok(c) => Ok(self.image_f.contains(&c)),
            Err(_) => Ok(false),
        }
    }

    /// Q·V_{4M−Q′} ⊆ image f.
    pub fn q_times_v4m_minus_q_in_image(&self) -> bool {
        self.indeterminacy.dim() == self.image_f.dim()
    }

    /// Class of a member of V4M modulo image f + Q·V_{4M−Q′}.
    pub fn reduced_class(&self, w: &Polynomial) -> Result<Vec<FieldElement>> {
        Ok(self.indeterminacy.quotient_coords(&self.v4m.chart(w)?))
    }

    /// Cokernel coordinates of a member of V4M.
    pub fn cokernel_class(&self, w: &Polynomial) -> Result<Vec<FieldElement>> {
        Ok(self.image_f.quotient_coords(&self.v4m.chart(w)?))
    }

    /// Canonical representative of a cokernel class.
    pub fn cokernel_representative(&self, class: &[FieldElement]) -> Result<Polynomial> {
        let qb = self.image_f.quotient_basis();
        if class.len() != qb.len() {
            return Err(Error::DimensionMismatch(format!("class of length {} for a {}-dimensional cokernel", class.len(), qb.len())));
        }
        let mut chart = vec![self.field().zero(); self.v4m.dim()];
        for (c, &i) in class.iter().zip(&qb) {
            chart[i] = c.clone();
        }
        Ok(self.v4m.from_chart(&chart))
    }

    /// Solutions μ ∈ S⁷ of ρC² + μQ ∈ V4M: a particular one and the kernel dimension.
    pub fn lift_solutions(&self, rho: &Polynomial) -> Result<(Polynomial, Vec<Polynomial>)> {
        rho.check_homogeneous(8)?;
        let b7 = MonomialBasis::new(3, 7);
        let c2rho = &(&self.cfg.conic * &self.cfg.conic) * rho;
        let rhs: Vec<FieldElement> = self.v4m.evaluate_conditions(&c2rho)?.iter().map(|e| -e).collect();
        let sol = solve(&self.mu_matrix, &rhs)?
            .ok_or_else(|| Error::Infeasible("no μ with ρC² + μQ in V4M".into()))?;
        let kernel = sol.kernel.iter().map(|k| Polynomial::from_vector(self.field(), &b7, k)).collect();
        Ok((Polynomial::from_vector(self.field(), &b7, &sol.particular), kernel))
    }

    /// The ρ ∈ S⁸ for which some μ puts ρC² + μQ in V4M. All of S⁸ when D is in general
    /// position; a proper subspace when three points of D are collinear.
    pub fn liftable_space(&self) -> Result<GradedPiece> {
        let field = self.field();
        let b8 = MonomialBasis::new(3, 8);
        let c2 = &self.cfg.conic * &self.cfg.conic;
        let mut cols: Vec<Vec<FieldElement>> =
            b8.monomials().iter().map(|m| self.v4m.evaluate_conditions(&c2.mul_monomial(m))).collect::<Result<_>>()?;
        let mu_t = self.mu_matrix.transpose();
        cols.extend(mu_t.row_vecs());
        let m = Matrix::from_rows(field, self.mu_matrix.rows(), cols)?.transpose();
        let rhos: Vec<Vec<FieldElement>> = kernel(&m).into_iter().map(|k| k[..b8.len()].to_vec()).collect();
        Ok(GradedPiece::new(b8.clone(), Subspace::span(field, b8.len(), &rhos)?))
    }

    /// A representative W = ρC² + μQ ∈ V4M.
    pub fn tau_tilde_representative(&self, rho: &Polynomial) -> Result<Polynomial> {
        let (mu, _) = self.lift_solutions(rho)?;
        Ok(&(&(&self.cfg.conic * &self.cfg.conic) * rho) + &(&mu * &self.cfg.quintic))
    }

    /// τ̃(ρ) in cokernel coordinates.
    pub fn tau_tilde(&self, rho: &Polynomial) -> Result<Vec<FieldElement>> {
        self.cokernel_class(&self.tau_tilde_representative(rho)?)
    }

    /// ρ′ with ρ′C² ≡ W mod Q.
    pub fn h_preimage(&self, w: &Polynomial) -> Result<Polynomial> {
        w.check_homogeneous(12)?;
        let b8 = MonomialBasis::new(3, 8);
        let b12 = MonomialBasis::new(3, 12);
        let sol = solve(&self.h_matrix, &w.to_vector(&b12)?)?
            .ok_or_else(|| Error::Infeasible("W is not congruent to a multiple of C² modulo Q".into()))?;
        Ok(Polynomial::from_vector(self.field(), &b8, &sol.particular[..b8.len()]))
    }

    /// h of a member of V4M, as a normal form in R⁸_Q.
    pub fn h(&self, w: &Polynomial) -> Result<Vec<FieldElement>> {
        self.ring.normal_form(&self.h_preimage(w)?, 8)
    }

    /// τ(ρ) as a normal form in R⁸_Q.
    pub fn tau(&self, rho: &Polynomial) -> Result<Vec<FieldElement>> {
        self.ring.normal_form(rho, 8)
    }

    /// h(τ̃(ρ)) = τ(ρ), evaluated on the canonical representative of τ̃(ρ).
    pub fn verify_h_tau_tilde(&self, rho: &Polynomial) -> Result<bool> {
        let class = self.tau_tilde(rho)?;
        let w = self.cokernel_representative(&class)?;
        Ok(self.h(&w)? == self.tau(rho)?)
    }

    /// Dimension of the kernel of h on the cokernel.
    pub fn h_kernel_dim(&self) -> Result<usize> {
        let n = self.codim_image_f();
        let field = self.field();
        let mut rows = Vec::new();
        for i in 0..n {
            let mut e = vec![field.zero(); n];
            e[i] = field.one();
            rows.push(self.h(&self.cokernel_representative(&e)?)?);
        }
        let cols = rows.first().map_or(0, |r| r.len());
        Ok(n - Matrix::from_rows(field, cols, rows)?.rank())
    }

    /// h vanishes on image f (h descends to the cokernel).
    pub fn h_vanishes_on_image(&self) -> Result<bool> {
        for v in self.image_f.basis_rows() {
            let w = self.v4m.from_chart(v);
            if self.h(&w)?.iter().any(|e| !e.is_zero()) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// W = Σ SᵢTᵢ for a triple in V2M; errors if some Sᵢ violates the V2M conditions.
    pub fn f_map(&self, s: &[Polynomial; 3]) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.field(), 3);
        for (si, ti) in s.iter().zip(&self.t) {
            if !self.v2m.contains(si)? {
                return Err(Error::Degenerate("argument of f outside V2M".into()));
            }
            acc = &acc + &(si * ti);
        }
        Ok(acc)
    }
}

/// Certificate that the class of ρ lifts to zero: from quartics Ãᵢ, linear forms γᵢ with
/// Aᵢ = C·Ãᵢ + γᵢ·Q ∈ V2M and Σ AᵢTᵢ − ρC² ∈ Q·S⁷.  Returns the Aᵢ when both hold.
pub fn zero_lift_certificate(ctx: &LiftContext, rho: &Polynomial, quartics: &[Polynomial; 3]) -> Result<Option<[Polynomial; 3]>> {
    let field = ctx.field();
    let q = &ctx.cfg.quintic;
    let lq: Vec<Polynomial> = (0..3).map(|k| &Polynomial::var(field, 3, k) * q).collect();
    let cols = lq.iter().map(|g| ctx.v2m.evaluate_conditions(g)).collect::<Result<Vec<_>>>()?;
    let nrows = ctx.v2m.condition_matrix().rows();
    let m = Matrix::from_rows(field, nrows, cols)?.transpose();
    let mut lifted = Vec::new();
    for a in quartics {
        let ca = &ctx.cfg.conic * a;
        let rhs: Vec<FieldElement> = ctx.v2m.evaluate_conditions(&ca)?.iter().map(|e| -e).collect();
        let Some(sol) = solve(&m, &rhs)? else {
            return Ok(None);
        };
        lifted.push(&ca + &(&Polynomial::linear_form(field, &sol.particular) * q));
    }
    let lifted: [Polynomial; 3] = lifted.try_into().expect("three sextics");
    let w = ctx.f_map(&lifted)?;
    let diff = &w - &(&(&ctx.cfg.conic * &ctx.cfg.conic) * rho);
    Ok(diff.exact_div(q).is_ok().then_some(lifted))
}

/// The rank-3 vanishing in the normalized frame: ρ₁ = h·Q_y and the triple (Tx, h + Ty, Tz)
/// with T = a₆xy².
pub fn rank3_zero_lift(ctx: &LiftContext, a6: &FieldElement) -> Result<bool> {
    let q = &ctx.cfg.quintic;
    let h = crate::gauss::rank3_h(q)?;
    let rho = &h * &q.partial(1)?;
    let triple = crate::symbolic::lemma_triple(&h, &Polynomial::constant(ctx.field(), 3, a6.clone()));
    Ok(zero_lift_certificate(ctx, &rho, &triple)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{u_family_config, UFamilySpec};
    use crate::poly::{parse, VarSet};

    fn plane(s: &str, f: FieldKind) -> Polynomial {
        parse(s, &VarSet::plane(), f).unwrap()
    }

    #[test]
    fn osculation_counts() {
        let f = FieldKind::Rational;
        let c = BaseCondition {
            point: [f.zero(), f.one(), f.zero()],
            order: 2,
            kind: ConditionKind::Osculation,
            line: plane("z", f),
        };
        let sys = BaseConditionedSystem::new(f, 6, vec![c]).unwrap();
        assert_eq!(sys.dim(), 28 - 6);
        assert!(sys.contains(&plane("y^4*z^2", f)).unwrap());
        assert!(sys.contains(&plane("x^4*y^2", f)).unwrap());
        assert!(!sys.contains(&plane("x*y^4*z", f)).unwrap());
        assert!(sys.contains(&plane("x^2*z*y^3", f)).unwrap());
    }

    #[test]
    fn multiplicity_conditions() {
        let f = FieldKind::Rational;
        let c = BaseCondition {
            point: [f.one(), f.zero(), f.zero()],
            order: 2,
            kind: ConditionKind::Multiplicity,
            line: plane("y", f),
        };
        let sys = BaseConditionedSystem::new(f, 3, vec![c]).unwrap();
        assert_eq!(sys.dim(), 7);
        assert!(sys.contains(&plane("x*y*z", f)).unwrap());
        assert!(!sys.contains(&plane("x^2*y", f)).unwrap());
    }

    #[test]
    fn u_family_lift_dimensions() {
        let f = FieldKind::prime(1_000_003).unwrap();
        let spec = UFamilySpec::from_i64(f, [3, -2, 5, 1, -4, 7, 2, -1, 6, -3, 4]);
        let cfg = u_family_config(&spec).unwrap();
        let ctx = LiftContext::new(&cfg).unwrap();
        assert_eq!(ctx.v2m.dim(), 13);
        assert_eq!(ctx.v4m.dim(), 41);
        assert_eq!(ctx.v4m_minus_q.dim(), 8);
        assert_eq!(ctx.codim_image_f(), 5);
        // p₀, p₂, p₃ lie on y = 0, so every member of V_{4M−Q′} is divisible by yz and two
        // extra dimensions appear; the surplus is not in image f and spans ker h.
        assert!(!ctx.q_times_v4m_minus_q_in_image());
        assert_eq!(ctx.indeterminacy.dim(), ctx.image_f.dim() + 2);
        let yz = plane("y*z", f);
        assert!(ctx.v4m_minus_q.space.elements().iter().all(|g| g.exact_div(&yz).is_ok()));
        assert!(ctx.h_vanishes_on_image().unwrap());
        assert_eq!(ctx.h_kernel_dim().unwrap(), 2);
        assert!(euler_defect(&cfg, &ctx.t).is_zero());
        assert!(rank3_zero_lift(&ctx, &spec.coeffs[5]).unwrap());
        let rho = &crate::gauss::rank3_h(&cfg.quintic).unwrap() * &cfg.quintic.partial(1).unwrap();
        let w = ctx.tau_tilde_representative(&rho).unwrap();
        assert!(ctx.reduced_class(&w).unwrap().iter().all(|c| c.is_zero()));
    }

    #[test]
    fn general_position_lift() {
        let f = FieldKind::prime(1_000_003).unwrap();
        let s = crate::families::random_tangency_config(f, 1, 50).unwrap();
        let ctx = LiftContext::new(&s.value.config).unwrap();
        assert_eq!((ctx.v2m.dim(), ctx.v4m.dim(), ctx.v4m_minus_q.dim()), (13, 41, 6));
        assert_eq!(ctx.codim_image_f(), 5);
        assert!(ctx.q_times_v4m_minus_q_in_image());
        assert_eq!(ctx.h_kernel_dim().unwrap(), 2);
        let rho = plane("x^8 + 3*x^2*y^5*z - 7*y^4*z^4 + 2*x*z^7", f);
        assert!(ctx.verify_h_tau_tilde(&rho).unwrap());
        let (mu, ker) = ctx.lift_solutions(&rho).unwrap();
        assert_eq!(ker.len(), 6);
        let c2rho = &(&ctx.cfg.conic * &ctx.cfg.conic) * &rho;
        let w1 = &c2rho + &(&mu * &ctx.cfg.quintic);
        let w2 = &w1 + &(&ker[0] * &ctx.cfg.quintic);
        assert_eq!(ctx.cokernel_class(&w1).unwrap(), ctx.cokernel_class(&w2).unwrap());
        assert!(ctx.tau_tilde(&Polynomial::zero(f, 3)).unwrap().iter().all(|c| c.is_zero()));
    }
}
