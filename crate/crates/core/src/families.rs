//! Explicit instances: the deformed Klein cubic and its line, the normalized quintic family with
//! a 4-tangent and a bitangent line, random conic-tangency quintics, and random cubic
//! threefolds whose triple points are rational.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldKind};
use crate::gauss::{alpha_certificate, AlphaCertificate, QuinticConfig};
use crate::jacobian::smoothness;
use crate::linalg::{kernel, solve, Matrix};
use crate::poly::{parse, MonomialBasis, Polynomial, VarSet};
use crate::field::pow_mod;
use crate::threefold::{conic_bundle, line_intersection, normalize_plane_point, special_line_test, triple_points, ConicBundleData, LineInX, PlanePoint, TriplePointData};

/// Default cap on rejection-sampling attempts.
pub const DEFAULT_RETRY_CAP: usize = 200;

/// Independent per-instance seed derived from a root seed (SplitMix64 finalizer).
pub fn instance_seed(root: u64, index: u64) -> u64 {
    let mut z = root ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn plane_point(field: FieldKind, p: [i64; 3]) -> PlanePoint {
    [field.from_i64(p[0]), field.from_i64(p[1]), field.from_i64(p[2])]
}

fn eps_vars() -> VarSet {
    VarSet::new(&["x0", "x1", "x2", "x3", "x4", "e"]).expect("valid names")
}

fn plane_eps_vars() -> VarSet {
    VarSet::new(&["x", "y", "z", "e"]).expect("valid names")
}

/// Replaces the last variable by a constant.
fn specialize_last(p: &Polynomial, value: &FieldElement) -> Result<Polynomial> {
    let f = p.field();
    let n = p.nvars() - 1;
    let mut images: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(f, n, i)).collect();
    images.push(Polynomial::constant(f, n, value.clone()));
    p.substitute(&images)
}

const KLEIN_EPS: &str = "x0^2*x1 + x4^2*x0 + x1^2*x2 + x2^2*x3 + x3^2*x4 + e*x1^2*x3 + e*x3^2*x2";
const KLEIN_QUINTIC: &str = "4*x^3*y*z + 2*e*x^3*y^2 - x*y^4 - e^2*x^5 - z^5 - e*z^4*y";

/// F_ε in x0..x4 with ε as a sixth variable `e`.
pub fn klein_cubic_symbolic(field: FieldKind) -> Polynomial {
    parse(KLEIN_EPS, &eps_vars(), field).expect("well-formed constant")
}

pub fn klein_cubic(eps: &FieldElement) -> Polynomial {
    specialize_last(&klein_cubic_symbolic(eps.kind()), eps).expect("specialization")
}

/// The closed form 4x³yz + 2εx³y² − xy⁴ − ε²x⁵ − z⁵ − εz⁴y, with ε as a fourth variable.
pub fn klein_quintic_symbolic(field: FieldKind) -> Polynomial {
    parse(KLEIN_QUINTIC, &plane_eps_vars(), field).expect("well-formed constant")
}

pub fn klein_quintic(eps: &FieldElement) -> Polynomial {
    specialize_last(&klein_quintic_symbolic(eps.kind()), eps).expect("specialization")
}

/// The expected conic-bundle matrix [[x, 0, z²/2], [0, z+εy, (y²+εx²)/2], [z²/2, (y²+εx²)/2, x²y]].
pub fn klein_matrix_symbolic(field: FieldKind) -> [[Polynomial; 3]; 3] {
    let p = |s: &str| parse(s, &plane_eps_vars(), field).expect("well-formed constant");
    let m13 = p("1/2*z^2");
    let m23 = p("1/2*y^2 + 1/2*e*x^2");
    [[p("x"), p("0"), m13.clone()], [p("0"), p("z + e*y"), m23.clone()], [m13, m23, p("x^2*y")]]
}

pub fn klein_conic_symbolic(field: FieldKind) -> Polynomial {
    parse("x*z + e*x*y", &plane_eps_vars(), field).expect("well-formed constant")
}

/// The conic bundle of the line {x₁ = x₂ = x₄ = 0} on F_ε with ε kept symbolic.
pub fn klein_bundle_symbolic(field: FieldKind) -> Result<(LineInX, ConicBundleData)> {
    let line = LineInX::coordinate_line(&klein_cubic_symbolic(field))?;
    let bundle = conic_bundle(&line)?;
    Ok((line, bundle))
}

/// The four points q₀, q₁, q₂, q₃ at ε = −1, normalized.
pub fn klein_points_eps_minus_one(field: FieldKind) -> [PlanePoint; 4] {
    [
        plane_point(field, [0, 1, 1]),
        plane_point(field, [0, 1, 0]),
        plane_point(field, [1, -1, -1]),
        plane_point(field, [1, 1, 1]),
    ]
}

/// A square root of −1 in F_p, when p ≡ 1 mod 4.
pub fn sqrt_minus_one(field: FieldKind) -> Option<FieldElement> {
    let FieldKind::Prime(p) = field else {
        return None;
    };
    if p % 4 != 1 {
        return None;
    }
    (2..p).find(|&g| pow_mod(g, (p - 1) / 2, p) == p - 1).map(|g| field_from_u64(field, pow_mod(g, (p - 1) / 4, p)))
}

fn field_from_u64(field: FieldKind, v: u64) -> FieldElement {
    field.from_bigint(&num_bigint::BigInt::from(v))
}

/// q₀ = [0:1:−1], q₁ = [0:1:0], q₂ = [1:i:−i], q₃ = [−1:i:−i] for ε = 1, when i = √−1 exists in
/// the field.
pub fn klein_points_eps_one(field: FieldKind) -> Option<[PlanePoint; 4]> {
    let i = sqrt_minus_one(field)?;
    let q2 = normalize_plane_point(&[field.one(), i.clone(), -&i]).ok()?;
    let q3 = normalize_plane_point(&[-field.one(), i.clone(), -&i]).ok()?;
    Some([plane_point(field, [0, 1, -1]), plane_point(field, [0, 1, 0]), q2, q3])
}

/// The Klein line at a specialized ε with its bundle, cycle and (when D is rational) config.
#[derive(Clone, Debug)]
pub struct KleinInstance {
    pub eps: FieldElement,
    pub line: LineInX,
    pub bundle: ConicBundleData,
    pub triple: TriplePointData,
    pub quintic_smooth: bool,
    pub config: std::result::Result<QuinticConfig, String>,
}

pub fn klein_instance(eps: &FieldElement) -> Result<KleinInstance> {
    let line = LineInX::coordinate_line(&klein_cubic(eps))?;
    let bundle = conic_bundle(&line)?;
    let four = eps.kind().from_i64(4);
    if bundle.quintic.scale(&four) != klein_quintic(eps) {
        return Err(Error::Degenerate("discriminant differs from the closed form".into()));
    }
    let quintic_smooth = special_line_test(&bundle)?;
    let triple = triple_points(&bundle)?;
    let config = if !quintic_smooth {
        Err("quintic is singular".to_string())
    } else if !triple.is_rational() {
        Err(format!("{} points of D are not rational", triple.residual_degree / 2))
    } else {
        QuinticConfig::new(&bundle.quintic, &bundle.conic_c, triple.rational_points.clone()).map_err(|e| e.to_string())
    };
    Ok(KleinInstance { eps: eps.clone(), line, bundle, triple, quintic_smooth, config })
}

/// Coefficients a₁…a₁₂ with a₁ = −(a₃ + … + a₁₂).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UFamilySpec {
    pub coeffs: [FieldElement; 12],
}

impl UFamilySpec {
    /// From a₂, …, a₁₂.
    pub fn from_free(free: [FieldElement; 11]) -> Self {
        let field = free[0].kind();
        let mut a1 = field.zero();
        for a in &free[1..] {
            a1 -= a;
        }
        let mut coeffs: Vec<FieldElement> = vec![a1];
        coeffs.extend(free);
        UFamilySpec { coeffs: coeffs.try_into().expect("twelve coefficients") }
    }

    pub fn from_i64(field: FieldKind, free: [i64; 11]) -> Self {
        UFamilySpec::from_free(free.map(|a| field.from_i64(a)))
    }

    pub fn field(&self) -> FieldKind {
        self.coeffs[0].kind()
    }

    /// Σ_{i≠2} aᵢ = 0.
    pub fn constraint_holds(&self) -> bool {
        let field = self.field();
        let mut s = field.zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i != 1 {
                s += a;
            }
        }
        s.is_zero()
    }

    pub fn free(&self) -> Vec<FieldElement> {
        self.coeffs[1..].to_vec()
    }
}

const U_BLOCKS: [&str; 12] = [
    "x^4*y",
    "x^4*z - 2*x^3*z^2 + x^2*z^3",
    "x^3*y*z",
    "x^2*y^2*z",
    "x^2*y*z^2",
    "x*y^3*z",
    "x*y^2*z^2",
    "x*y*z^3",
    "y^3*z^2",
    "y^2*z^3",
    "y*z^4",
    "y^4*z",
];

/// The twelve monomial blocks in x, y, z.
pub fn u_family_blocks(field: FieldKind) -> [Polynomial; 12] {
    U_BLOCKS.map(|s| parse(s, &VarSet::plane(), field).expect("well-formed constant"))
}

pub fn u_family_quintic(spec: &UFamilySpec) -> Polynomial {
    let field = spec.field();
    let mut q = Polynomial::zero(field, 3);
    for (a, b) in spec.coeffs.iter().zip(u_family_blocks(field)) {
        q = &q + &b.scale(a);
    }
    q
}

/// The family over Q[a₂, …, a₁₂] in the 15 variables x, y, z, a1, …, a12, with a1 replaced by
/// −(a3 + … + a12).
pub fn u_family_symbolic(field: FieldKind) -> Polynomial {
    let nv = 15;
    let a = |i: usize| Polynomial::var(field, nv, 2 + i);
    let mut a1 = Polynomial::zero(field, nv);
    for i in 3..=12 {
        a1 = &a1 - &a(i);
    }
    let embed: Vec<usize> = vec![0, 1, 2];
    let mut q = Polynomial::zero(field, nv);
    for (i, b) in u_family_blocks(field).iter().enumerate() {
        let coeff = if i == 0 { a1.clone() } else { a(i + 1) };
        q = &q + &(&coeff * &b.embed(nv, &embed).expect("embedding"));
    }
    q
}

/// p₀ = [1:0:0], p₁ = [0:1:0], p₂ = [0:0:1], p₃ = [1:0:1].
pub fn u_family_points(field: FieldKind) -> [PlanePoint; 4] {
    [plane_point(field, [1, 0, 0]), plane_point(field, [0, 1, 0]), plane_point(field, [0, 0, 1]), plane_point(field, [1, 0, 1])]
}

/// The conic y·z.
pub fn u_family_conic(field: FieldKind) -> Polynomial {
    parse("y*z", &VarSet::plane(), field).expect("well-formed constant")
}

/// Tangency scheme of a member: {z=0} meets Q in p₀ + 4p₁, {y=0} in p₀ + 2p₂ + 2p₃, and [1:1:1] ∈ Q.
pub fn u_family_tangency_holds(q: &Polynomial) -> Result<bool> {
    let field = q.field();
    let [p0, p1, p2, p3] = u_family_points(field);
    let l1 = line_intersection(q, &p0, &p1)?;
    let l2 = line_intersection(q, &p0, &p2)?;
    let mult = |c: &crate::threefold::ComponentCycle, p: &PlanePoint| c.points.iter().find(|(q, _)| q == p).map_or(0, |(_, m)| *m);
    let one = plane_point(field, [1, 1, 1]);
    Ok(mult(&l1, &p1) == 4
        && mult(&l1, &p0) == 1
        && mult(&l2, &p2) == 2
        && mult(&l2, &p3) == 2
        && mult(&l2, &p0) == 1
        && q.evaluate(&one)?.is_zero())
}

/// Assembles the configuration with C = yz and D = p₀ + 2p₁ + p₂ + p₃.
pub fn u_family_config(spec: &UFamilySpec) -> Result<QuinticConfig> {
    if !spec.constraint_holds() {
        return Err(Error::Degenerate("coefficient constraint violated".into()));
    }
    let field = spec.field();
    let q = u_family_quintic(spec);
    if !smoothness(&q)? {
        return Err(Error::Singular("family member".into()));
    }
    if !u_family_tangency_holds(&q)? {
        return Err(Error::Degenerate("tangency scheme violated".into()));
    }
    let [p0, p1, p2, p3] = u_family_points(field);
    QuinticConfig::new(&q, &u_family_conic(field), vec![(p0, 1), (p1, 2), (p2, 1), (p3, 1)])
}

/// A sampled member together with its sampling record.
#[derive(Clone, Debug)]
pub struct Sampled<T> {
    pub value: T,
    pub seed: u64,
    pub attempts: usize,
    pub rejections: Vec<String>,
}

fn small_int(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    rng.gen_range(-bound..=bound)
}

/// Random integer specialization (|aᵢ| ≤ 20) accepted once Q is smooth.
pub fn sample_u_family(field: FieldKind, seed: u64, cap: usize) -> Result<Sampled<(UFamilySpec, QuinticConfig)>> {
    let mut rng = rng_for(seed);
    let mut rejections = Vec::new();
    for attempt in 1..=cap {
        let free: [i64; 11] = std::array::from_fn(|_| small_int(&mut rng, 20));
        let spec = UFamilySpec::from_i64(field, free);
        match u_family_config(&spec) {
            Ok(cfg) => return Ok(Sampled { value: (spec, cfg), seed, attempts: attempt, rejections }),
            Err(Error::Singular(_)) => rejections.push(format!("{free:?}: singular")),
            Err(e) => return Err(e),
        }
    }
    Err(Error::RetriesExhausted(cap, rejections.last().cloned().unwrap_or_default()))
}

/// Random hypersurface with integer coefficients in [−5, 5], accepted once smooth.
pub fn random_smooth_form(field: FieldKind, nvars: usize, degree: u32, seed: u64, cap: usize) -> Result<Sampled<Polynomial>> {
    let mut rng = rng_for(seed);
    let basis = MonomialBasis::new(nvars, degree);
    let mut rejections = Vec::new();
    for attempt in 1..=cap {
        let v: Vec<FieldElement> = (0..basis.len()).map(|_| field.from_i64(small_int(&mut rng, 5))).collect();
        let f = Polynomial::from_vector(field, &basis, &v);
        if smoothness(&f)? {
            return Ok(Sampled { value: f, seed, attempts: attempt, rejections });
        }
        rejections.push("singular".into());
    }
    Err(Error::RetriesExhausted(cap, "singular".into()))
}

/// A random smooth conic with its parametrization and the conditions imposed on quintics.
#[derive(Clone, Debug)]
pub struct TangencyConfig {
    pub config: QuinticConfig,
    pub alpha: AlphaCertificate,
    pub parametrization: [Polynomial; 3],
    /// Parameters σᵢ of the tangency points φ(σᵢ, 1).
    pub params: Vec<FieldElement>,
    /// Dimension of the space of quintics tangent to C at the five points.
    pub solution_dim: usize,
}

fn binary_eval_rows(field: FieldKind, images: &[Polynomial], sigma: &FieldElement) -> Result<(Vec<FieldElement>, Vec<FieldElement>)> {
    let one = field.one();
    let mut vals = Vec::new();
    let mut ders = Vec::new();
    for g in images {
        vals.push(g.evaluate(&[sigma.clone(), one.clone()])?);
        ders.push(g.partial(0)?.evaluate(&[sigma.clone(), one.clone()])?);
    }
    Ok((vals, ders))
}

fn random_invertible(field: FieldKind, rng: &mut ChaCha8Rng, bound: i64) -> Vec<Vec<i64>> {
    loop {
        let m: Vec<Vec<i64>> = (0..3).map(|_| (0..3).map(|_| small_int(rng, bound)).collect()).collect();
        if Matrix::from_i64(field, &m).rank() == 3 {
            return m;
        }
    }
}

fn conic_param_from(field: FieldKind, g: &[Vec<i64>]) -> [Polynomial; 3] {
    let s = Polynomial::var(field, 2, 0);
    let t = Polynomial::var(field, 2, 1);
    let quad = [&s * &s, &s * &t, &t * &t];
    std::array::from_fn(|i| {
        let mut acc = Polynomial::zero(field, 2);
        for j in 0..3 {
            acc = &acc + &quad[j].scale(&field.from_i64(g[i][j]));
        }
        acc
    })
}

/// The unique conic through a parametrized conic's image.
fn implicit_conic(param: &[Polynomial; 3]) -> Result<Polynomial> {
    let field = param[0].field();
    let b2 = MonomialBasis::new(3, 2);
    let b4 = MonomialBasis::new(2, 4);
    let cols = b2
        .monomials()
        .iter()
        .map(|m| Polynomial::monomial(field, 3, *m, field.one()).substitute(param)?.to_vector(&b4))
        .collect::<Result<Vec<_>>>()?;
    let ker = kernel(&Matrix::from_rows(field, b4.len(), cols)?.transpose());
    if ker.len() != 1 {
        return Err(Error::Degenerate("parametrization does not trace a unique conic".into()));
    }
    Ok(Polynomial::from_vector(field, &b2, &ker[0]))
}

fn distinct_params(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::new();
    while out.len() < n {
        let s = small_int(rng, bound);
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

/// Random quintic tangent to a random smooth conic at five random rational points, accepted
/// when smooth, exactly 2D on C and odd.
pub fn random_tangency_config(field: FieldKind, seed: u64, cap: usize) -> Result<Sampled<TangencyConfig>> {
    let mut rng = rng_for(seed);
    let mut rejections = Vec::new();
    let b5 = MonomialBasis::new(3, 5);
    for attempt in 1..=cap {
        let g = random_invertible(field, &mut rng, 3);
        let param = conic_param_from(field, &g);
        let conic = implicit_conic(&param)?;
        let sigmas: Vec<FieldElement> = distinct_params(&mut rng, 5, 6).into_iter().map(|s| field.from_i64(s)).collect();
        let images = b5
            .monomials()
            .iter()
            .map(|m| Polynomial::monomial(field, 3, *m, field.one()).substitute(&param))
            .collect::<Result<Vec<_>>>()?;
        let mut rows = Vec::new();
        for s in &sigmas {
            let (v, d) = binary_eval_rows(field, &images, s)?;
            rows.push(v);
            rows.push(d);
        }
        let sols = kernel(&Matrix::from_rows(field, b5.len(), rows)?);
        let solution_dim = sols.len();
        let mut v = vec![field.zero(); b5.len()];
        for s in &sols {
            let c = field.from_i64(small_int(&mut rng, 3));
            for (a, b) in v.iter_mut().zip(s) {
                *a += &(&c * b);
            }
        }
        let q = Polynomial::from_vector(field, &b5, &v);
        if q.is_zero() || q.substitute(&param)?.is_zero() {
            rejections.push("conic contained in the quintic".into());
            continue;
        }
        let points: Vec<(PlanePoint, usize)> = sigmas
            .iter()
            .map(|s| {
                let p: Vec<FieldElement> = param.iter().map(|c| c.evaluate(&[s.clone(), field.one()])).collect::<Result<_>>()?;
                Ok((crate::threefold::normalize_plane_point(&p)?, 1))
            })
            .collect::<Result<Vec<_>>>()?;
        let cfg = match QuinticConfig::new(&q, &conic, points) {
            Ok(c) => c,
            Err(e) => {
                rejections.push(e.to_string());
                continue;
            }
        };
        let alpha = alpha_certificate(&cfg)?;
        if !alpha.accepted() {
            rejections.push(format!("alpha certificate {alpha:?}"));
            continue;
        }
        let value = TangencyConfig { config: cfg, alpha, parametrization: param, params: sigmas, solution_dim };
        return Ok(Sampled { value, seed, attempts: attempt, rejections });
    }
    Err(Error::RetriesExhausted(cap, rejections.last().cloned().unwrap_or_default()))
}

/// A random smooth cubic threefold with a line whose five triple points are rational.
#[derive(Clone, Debug)]
pub struct CubicInstance {
    pub line: LineInX,
    pub bundle: ConicBundleData,
    pub config: QuinticConfig,
    pub alpha: AlphaCertificate,
}

fn random_unimodular(field: FieldKind, rng: &mut ChaCha8Rng) -> (Matrix, Matrix) {
    let n = 5;
    let mut lower = Matrix::identity(field, n);
    let mut upper = Matrix::identity(field, n);
    for i in 0..n {
        for j in 0..i {
            lower.set(i, j, field.from_i64(small_int(rng, 1)));
            upper.set(j, i, field.from_i64(small_int(rng, 1)));
        }
    }
    let u = lower.mul(&upper).expect("square");
    let mut inv_cols = Vec::new();
    for j in 0..n {
        let mut e = vec![field.zero(); n];
        e[j] = field.one();
        inv_cols.push(solve(&u, &e).expect("shapes").expect("invertible").particular);
    }
    let inv = Matrix::from_rows(field, n, inv_cols).expect("square").transpose();
    (u, inv)
}

/// Builds F = L₁₁u² + 2L₁₂uv + L₂₂v² + 2Q₁₃u + 2Q₂₃v + K₃₃ with (L₁₁, L₁₂, L₂₂) independent so
/// that C is smooth and parametrized by (s², st, t²); Q₁₃, Q₂₃ are solved so that the triple
/// points sit at five chosen parameters.  A random unimodular coordinate change follows.
pub fn random_cubic_config(field: FieldKind, seed: u64, cap: usize) -> Result<Sampled<CubicInstance>> {
    let mut rng = rng_for(seed);
    let mut rejections = Vec::new();
    let b2 = MonomialBasis::new(3, 2);
    let b3 = MonomialBasis::new(3, 3);
    let b5bin = MonomialBasis::new(2, 5);
    for attempt in 1..=cap {
        let a = random_invertible(field, &mut rng, 2);
        let lforms: Vec<Polynomial> = a
            .iter()
            .map(|r| Polynomial::linear_form(field, &r.iter().map(|&c| field.from_i64(c)).collect::<Vec<_>>()))
            .collect();
        // φ = A⁻¹·(s², st, t²)
        let am = Matrix::from_i64(field, &a);
        let mut inv_cols = Vec::new();
        for j in 0..3 {
            let mut e = vec![field.zero(); 3];
            e[j] = field.one();
            inv_cols.push(solve(&am, &e)?.expect("invertible").particular);
        }
        let s = Polynomial::var(field, 2, 0);
        let t = Polynomial::var(field, 2, 1);
        let quad = [&s * &s, &s * &t, &t * &t];
        let phi: [Polynomial; 3] = std::array::from_fn(|i| {
            let mut acc = Polynomial::zero(field, 2);
            for j in 0..3 {
                acc = &acc + &quad[j].scale(&inv_cols[j][i]);
            }
            acc
        });
        let sigmas = distinct_params(&mut rng, 5, 6);
        let mut target = Polynomial::one(field, 2);
        for &sg in &sigmas {
            target = &target * &(&s - &t.scale(&field.from_i64(sg)));
        }
        // columns: Q13 monomials contribute t·m(φ), Q23 monomials contribute −s·m(φ)
        let mut cols = Vec::new();
        for m in b2.monomials() {
            let mphi = Polynomial::monomial(field, 3, *m, field.one()).substitute(&phi)?;
            cols.push((&t * &mphi).to_vector(&b5bin)?);
        }
        for m in b2.monomials() {
            let mphi = Polynomial::monomial(field, 3, *m, field.one()).substitute(&phi)?;
            cols.push((-(&s * &mphi)).to_vector(&b5bin)?);
        }
        let sys = Matrix::from_rows(field, b5bin.len(), cols)?.transpose();
        let Some(sol) = solve(&sys, &target.to_vector(&b5bin)?)? else {
            rejections.push("triple-point system inconsistent".into());
            continue;
        };
        let mut v = sol.particular.clone();
        for k in &sol.kernel {
            let c = field.from_i64(small_int(&mut rng, 2));
            for (x, y) in v.iter_mut().zip(k) {
                *x += &(&c * y);
            }
        }
        let q13 = Polynomial::from_vector(field, &b2, &v[..6]);
        let q23 = Polynomial::from_vector(field, &b2, &v[6..]);
        let k33 = Polynomial::from_vector(field, &b3, &(0..b3.len()).map(|_| field.from_i64(small_int(&mut rng, 3))).collect::<Vec<_>>());
        // F in x0..x4 with (x0, x1) = (u, v) and (x2, x3, x4) = (x, y, z)
        let emb = [2usize, 3, 4];
        let u = Polynomial::var(field, 5, 0);
        let w = Polynomial::var(field, 5, 1);
        let two = field.from_i64(2);
        let e = |p: &Polynomial| p.embed(5, &emb).expect("embedding");
        let f = &(&(&(&(&e(&lforms[0]) * &(&u * &u)) + &(&e(&lforms[1]) * &(&u * &w)).scale(&two)) + &(&e(&lforms[2]) * &(&w * &w)))
            + &(&(&e(&q13) * &u).scale(&two) + &(&e(&q23) * &w).scale(&two)))
            + &e(&k33);
        let (umat, uinv) = random_unimodular(field, &mut rng);
        let images: Vec<Polynomial> = (0..5)
            .map(|i| Polynomial::linear_form(field, umat.row(i)))
            .collect();
        let f2 = f.substitute(&images)?;
        let col = |j: usize| -> Vec<FieldElement> { (0..5).map(|i| uinv.get(i, j).clone()).collect() };
        let line = LineInX::new(&f2, [col(0), col(1)], [col(2), col(3), col(4)])?;
        if !smoothness(&f2)? {
            rejections.push("singular cubic".into());
            continue;
        }
        let bundle = conic_bundle(&line)?;
        if !special_line_test(&bundle)? {
            rejections.push("singular discriminant".into());
            continue;
        }
        let triple = match triple_points(&bundle) {
            Ok(t) => t,
            Err(e) => {
                rejections.push(e.to_string());
                continue;
            }
        };
        if !triple.is_reduced_d {
            rejections.push("non-reduced or non-rational D".into());
            continue;
        }
        let config = match QuinticConfig::new(&bundle.quintic, &bundle.conic_c, triple.rational_points.clone()) {
            Ok(c) => c,
            Err(e) => {
                rejections.push(e.to_string());
                continue;
            }
        };
        let alpha = alpha_certificate(&config)?;
        if !alpha.accepted() {
            rejections.push(format!("alpha certificate {alpha:?}"));
            continue;
        }
        return Ok(Sampled { value: CubicInstance { line, bundle, config, alpha }, seed, attempts: attempt, rejections });
    }
    Err(Error::RetriesExhausted(cap, rejections.last().cloned().unwrap_or_default()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_spread() {
        let s: Vec<u64> = (0..4).map(|i| instance_seed(7, i)).collect();
        assert!(s.windows(2).all(|w| w[0] != w[1]));
        assert_eq!(instance_seed(7, 2), s[2]);
    }

    #[test]
    fn u_spec_constraint() {
        let spec = UFamilySpec::from_i64(FieldKind::Rational, [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11]);
        assert!(spec.constraint_holds());
        let q = u_family_quintic(&spec);
        let one = [FieldKind::Rational.one(), FieldKind::Rational.one(), FieldKind::Rational.one()];
        assert!(q.evaluate(&one).unwrap().is_zero());
    }

    #[test]
    fn klein_minus_one() {
        let f = FieldKind::Rational;
        let inst = klein_instance(&f.from_i64(-1)).unwrap();
        assert!(inst.quintic_smooth);
        assert_eq!(inst.bundle.conic_c, parse("x*z - x*y", &VarSet::plane(), f).unwrap());
        let cfg = inst.config.unwrap();
        let [q0, q1, q2, q3] = klein_points_eps_minus_one(f);
        let mut expected = vec![(q0, 1), (q1, 2), (q2, 1), (q3, 1)];
        let mut got = cfg.divisor.clone();
        expected.sort_by_key(|(p, _)| format!("{p:?}"));
        got.sort_by_key(|(p, _)| format!("{p:?}"));
        assert_eq!(got, expected);
    }

    #[test]
    fn klein_plus_one_is_not_rational() {
        let f = FieldKind::Rational;
        let inst = klein_instance(&f.from_i64(1)).unwrap();
        assert!(inst.config.is_err());
        assert_eq!(inst.triple.residual_degree, 4);
    }

    #[test]
    fn tangency_sampler_runs() {
        let s = random_tangency_config(FieldKind::prime(1_000_003).unwrap(), 3, 50).unwrap();
        assert_eq!(s.value.solution_dim, 11);
        assert!(s.value.config.is_reduced());
    }

    #[test]
    fn u_family_sampler_runs() {
        let s = sample_u_family(FieldKind::Rational, 11, 50).unwrap();
        assert!(s.value.0.constraint_holds());
        assert!(!s.value.1.is_reduced());
    }

    #[test]
    fn random_cubic_runs() {
        let s = random_cubic_config(FieldKind::prime(1_000_003).unwrap(), 5, 50).unwrap();
        assert!(s.value.config.is_reduced());
        assert!(s.value.alpha.accepted());
    }

    #[test]
    fn klein_plus_one_cycles() {
        let q = FieldKind::Rational;
        let inst = klein_instance(&q.one()).unwrap();
        assert!(inst.quintic_smooth);
        let x0 = &inst.triple.components[0];
        let x1 = &inst.triple.components[1];
        let (on_x, on_other) = if x0.component == parse("x", &VarSet::plane(), q).unwrap() { (x0, x1) } else { (x1, x0) };
        let q0 = plane_point(q, [0, 1, -1]);
        let q1 = plane_point(q, [0, 1, 0]);
        let mut got = on_x.points.clone();
        let mut want = vec![(q1, 4), (q0.clone(), 1)];
        got.sort_by_key(|(p, _)| format!("{p:?}"));
        want.sort_by_key(|(p, _)| format!("{p:?}"));
        assert_eq!(got, want);
        assert_eq!(on_other.points, vec![(q0, 1)]);
        assert_eq!(on_other.residual_pieces, vec![(2, 2)]);

        let fp = FieldKind::prime(1_000_033).unwrap();
        let inst = klein_instance(&fp.one()).unwrap();
        let [q0, q1, q2, q3] = klein_points_eps_one(fp).unwrap();
        let cfg = inst.config.unwrap();
        for (p, m) in [(q0, 1), (q1, 2), (q2, 1), (q3, 1)] {
            assert_eq!(cfg.cycle.multiplicity_of(&p), 2 * m);
        }
    }
}
