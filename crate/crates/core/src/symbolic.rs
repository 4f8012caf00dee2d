//! Identities over the parameter ring of the normalized quintic family, checked in the
//! 15-variable polynomial ring (x, y, z, a1, …, a12) with a1 = −(a3 + … + a12).

use serde::Serialize;

use crate::error::Result;
use crate::families::u_family_symbolic;
use crate::field::FieldKind;
use crate::gauss::rank3_h;
use crate::lift::{BaseCondition, BaseConditionedSystem, ConditionKind};
use crate::poly::{parse, MonomialBasis, Polynomial, VarSet};

pub const NVARS: usize = 15;

/// Rank over the fraction field of the coefficient ring.  Nonzero constant entries are used as
/// unit pivots first; the remaining block is reduced fraction-free (every division is exact,
/// entries are minors).
pub fn generic_rank(mut m: Vec<Vec<Polynomial>>) -> Result<usize> {
    let Some(first) = m.first().and_then(|r| r.first()) else {
        return Ok(0);
    };
    let (field, nv) = (first.field(), first.nvars());
    let is_unit = |p: &Polynomial| p.num_terms() == 1 && p.degree() == Some(0);
    let mut rank = 0;
    // unit pivots: eliminate and drop the pivot row and column
    while let Some((r, c)) = m.iter().enumerate().find_map(|(i, row)| row.iter().position(is_unit).map(|j| (i, j))) {
        let prow = m.swap_remove(r);
        let inv = prow[c].coeff(&crate::poly::Monomial::one()).inv()?;
        for row in m.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].scale(&inv);
            for (e, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *e = &*e - &(&f * p);
                }
            }
        }
        for row in m.iter_mut() {
            row.remove(c);
        }
        rank += 1;
    }
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut prev = Polynomial::one(field, nv);
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        // the sparsest pivot keeps the minors small
        let Some(p) = (r..rows).filter(|&i| !m[i][col].is_zero()).min_by_key(|&i| m[i][col].num_terms()) else {
            continue;
        };
        m.swap(r, p);
        for i in (r + 1)..rows {
            for j in (col + 1)..cols {
                let num = &(&m[r][col] * &m[i][j]) - &(&m[i][col] * &m[r][j]);
                m[i][j] = num.exact_div(&prev)?;
            }
            m[i][col] = Polynomial::zero(field, nv);
        }
        prev = m[r][col].clone();
        r += 1;
    }
    Ok(rank + r)
}

/// Coefficients of a form in x, y, z (the first three variables) on `basis`, as polynomials in
/// the remaining variables.
pub fn coefficient_row(p: &Polynomial, basis: &MonomialBasis) -> Vec<Polynomial> {
    let split = p.split_leading_vars(3);
    let zero = Polynomial::zero(p.field(), p.nvars() - 3);
    basis.monomials().iter().map(|m| split.get(m).cloned().unwrap_or_else(|| zero.clone())).collect()
}

/// Generic dimension of the span of forms of one degree.
pub fn generic_span_dim(forms: &[Polynomial], degree: u32) -> Result<usize> {
    let basis = MonomialBasis::new(3, degree);
    generic_rank(forms.iter().map(|f| coefficient_row(f, &basis)).collect())
}

pub fn generic_span_contains(forms: &[Polynomial], p: &Polynomial, degree: u32) -> Result<bool> {
    let mut all = forms.to_vec();
    all.push(p.clone());
    Ok(generic_span_dim(&all, degree)? == generic_span_dim(forms, degree)?)
}

fn vars() -> VarSet {
    VarSet::plane_with_parameters()
}

/// Replaces a1 by −(a3 + … + a12).
pub fn eliminate_a1(p: &Polynomial) -> Polynomial {
    let f = p.field();
    let mut images: Vec<Polynomial> = (0..NVARS).map(|i| Polynomial::var(f, NVARS, i)).collect();
    let mut a1 = Polynomial::zero(f, NVARS);
    for i in 3..=12 {
        a1 = &a1 - &Polynomial::var(f, NVARS, 2 + i);
    }
    images[3] = a1;
    p.substitute(&images).expect("fifteen images")
}

fn sym(s: &str, field: FieldKind) -> Polynomial {
    eliminate_a1(&parse(s, &vars(), field).expect("well-formed constant"))
}

/// h = −a2(x⁴ − 2x³z + x²z²) + a4x²y² + 2a6xy³ + a7xy²z + 2a9y³z + a10y²z² + 3a12y⁴.
pub fn printed_h(field: FieldKind) -> Polynomial {
    sym(
        "-a2*(x^4 - 2*x^3*z + x^2*z^2) + a4*x^2*y^2 + 2*a6*x*y^3 + a7*x*y^2*z + 2*a9*y^3*z + a10*y^2*z^2 + 3*a12*y^4",
        field,
    )
}

/// The thirteen quartics spanning Γ.
pub fn gamma_basis(field: FieldKind) -> Vec<Polynomial> {
    [
        "x^4 - x^3*z",
        "x^2*y^2",
        "x^3*y",
        "x^2*y*z",
        "x^3*z - x^2*z^2",
        "x^2*z^2 - x*z^3",
        "y^3*z",
        "x*y^2*z",
        "y^2*z^2",
        "x*y*z^2",
        "y*z^3",
        "a6*x*y^3 + a12*y^4",
        "a1*x^4 + a3*x^3*z + a5*x^2*z^2 + a8*x*z^3 + a11*z^4",
    ]
    .iter()
    .map(|s| sym(s, field))
    .collect()
}

/// The V2M conditions of the normalized frame (constant in the parameters).
pub fn frame_v2m(field: FieldKind) -> Result<BaseConditionedSystem> {
    let p = |s: &str| parse(s, &VarSet::plane(), field).expect("well-formed constant");
    let pt = |a: i64, b: i64, c: i64| [field.from_i64(a), field.from_i64(b), field.from_i64(c)];
    let mult = |point, line| BaseCondition { point, order: 2, kind: ConditionKind::Multiplicity, line };
    BaseConditionedSystem::new(
        field,
        6,
        vec![
            mult(pt(1, 0, 0), p("y")),
            BaseCondition { point: pt(0, 1, 0), order: 2, kind: ConditionKind::Osculation, line: p("z") },
            mult(pt(0, 0, 1), p("y")),
            mult(pt(1, 0, 1), p("y")),
        ],
    )
}

/// Whether the constant condition functionals of `sys` vanish on a parametric form.
pub fn satisfies_conditions(sys: &BaseConditionedSystem, p: &Polynomial) -> Result<bool> {
    let basis = MonomialBasis::new(3, sys.degree);
    let row = coefficient_row(p, &basis);
    let m = sys.condition_matrix();
    for r in 0..m.rows() {
        let mut acc = Polynomial::zero(p.field(), p.nvars() - 3);
        for (c, entry) in row.iter().enumerate() {
            let k = m.get(r, c);
            if !k.is_zero() && !entry.is_zero() {
                acc = &acc + &entry.scale(k);
            }
        }
        if !acc.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SymbolicReport {
    /// z·h = y·Q_y − Q with the printed h.
    pub h_identity: bool,
    /// h − a12·y⁴ ∈ Γ.
    pub h_mod_gamma: bool,
    /// Σ Ãᵢ·Q_{xᵢ} − h·Q_y = 5T·Q with T = a6·x·y².
    pub lemma_identity: bool,
    /// Ã₀, Ã₁, Ã₂ ∈ Γ.
    pub lemma_membership: bool,
    pub gamma_dim: usize,
    /// Σ xᵢTᵢ = 3CQ.
    pub euler: bool,
    /// Tᵢ satisfy the V2M conditions.
    pub ti_in_v2m: bool,
    /// C·Γ + Q·S¹ = V2M ⊕ Q·S¹ (every quartic of Γ lifts to V2M modulo Q, and conversely).
    pub c_gamma_matches_v2m: bool,
}

impl SymbolicReport {
    pub fn passed(&self) -> bool {
        self.h_identity
            && self.h_mod_gamma
            && self.lemma_identity
            && self.lemma_membership
            && self.gamma_dim == 13
            && self.euler
            && self.ti_in_v2m
            && self.c_gamma_matches_v2m
    }
}

/// The lemma triple (Ã₀, Ã₁, Ã₂) = (Tx, h + Ty, Tz) for T = a6·x·y², in any ring whose first
/// three variables are x, y, z.
pub fn lemma_triple(h: &Polynomial, a6: &Polynomial) -> [Polynomial; 3] {
    let f = h.field();
    let nv = h.nvars();
    let (x, y, z) = (Polynomial::var(f, nv, 0), Polynomial::var(f, nv, 1), Polynomial::var(f, nv, 2));
    let t = &(a6 * &x) * &(&y * &y);
    [&t * &x, h + &(&t * &y), &t * &z]
}

pub fn u_family_symbolic_checks(field: FieldKind) -> Result<SymbolicReport> {
    let q = u_family_symbolic(field);
    let h = printed_h(field);
    let v = |i| Polynomial::var(field, NVARS, i);
    let (x, y, z) = (v(0), v(1), v(2));
    let a6 = v(8);
    let a12 = v(14);
    let h_identity = rank3_h(&q).map(|hh| hh == h).unwrap_or(false);
    let gamma = gamma_basis(field);
    let gamma_dim = generic_span_dim(&gamma, 4)?;
    let h_mod_gamma = generic_span_contains(&gamma, &(&h - &(&a12 * &y.pow(4))), 4)?;
    let qs = [q.partial(0)?, q.partial(1)?, q.partial(2)?];
    let at = lemma_triple(&h, &a6);
    let t = &(&a6 * &x) * &(&y * &y);
    let mut lhs = -(&h * &qs[1]);
    for (a, qi) in at.iter().zip(&qs) {
        lhs = &lhs + &(a * qi);
    }
    let lemma_identity = lhs == (&t * &q).scale(&field.from_i64(5));
    let mut lemma_membership = true;
    for a in &at {
        lemma_membership &= generic_span_contains(&gamma, a, 4)?;
    }
    let c = &y * &z;
    let cs = [c.partial(0)?, c.partial(1)?, c.partial(2)?];
    let ti: Vec<Polynomial> = (0..3).map(|i| &(&c * &qs[i]) - &(&q * &cs[i])).collect();
    let euler = &(&(&x * &ti[0]) + &(&y * &ti[1])) + &(&z * &ti[2]) == (&c * &q).scale(&field.from_i64(3));
    let v2m = frame_v2m(field)?;
    let mut ti_in_v2m = true;
    for t in &ti {
        ti_in_v2m &= satisfies_conditions(&v2m, t)?;
    }
    let q_s1: Vec<Polynomial> = [&x, &y, &z].iter().map(|l| *l * &q).collect();
    let mut c_gamma: Vec<Polynomial> = gamma.iter().map(|g| &c * g).collect();
    c_gamma.extend(q_s1.iter().cloned());
    let pos: Vec<usize> = (0..3).collect();
    let mut v2m_q: Vec<Polynomial> = v2m.space.elements().iter().map(|g| g.embed(NVARS, &pos)).collect::<Result<_>>()?;
    v2m_q.extend(q_s1);
    let target = v2m.dim() + 3;
    let mut both = c_gamma.clone();
    both.extend(v2m_q.iter().cloned());
    let c_gamma_matches_v2m = generic_span_dim(&c_gamma, 6)? == target
        && generic_span_dim(&v2m_q, 6)? == target
        && generic_span_dim(&both, 6)? == target;
    Ok(SymbolicReport { h_identity, h_mod_gamma, lemma_identity, lemma_membership, gamma_dim, euler, ti_in_v2m, c_gamma_matches_v2m })
}
