//! Truncated power-series parametrization of a plane curve at a smooth point.

use super::{MonomialBasis, Polynomial};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldKind};
use crate::linalg::dot;

type Series = Vec<FieldElement>;

fn series_mul(a: &Series, b: &Series, field: FieldKind) -> Series {
    let n = a.len();
    let mut out = vec![field.zero(); n];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            if !y.is_zero() {
                out[i + j] += &(x * y);
            }
        }
    }
    out
}

/// The branch of a plane curve Q through a smooth point p, written as
/// γ(a) = p + a·e_a + φ(a)·e_b with e_a tangent and φ(a) = O(a²), truncated at a^precision.
#[derive(Clone, Debug)]
pub struct LocalBranch {
    field: FieldKind,
    point: [FieldElement; 3],
    tangent: [FieldElement; 3],
    transverse: [FieldElement; 3],
    gamma: [Series; 3],
    precision: usize,
}

impl LocalBranch {
    pub fn new(curve: &Polynomial, point: &[FieldElement; 3], precision: usize) -> Result<Self> {
        let field = curve.field();
        if curve.nvars() != 3 {
            return Err(Error::DimensionMismatch("plane curve expected".into()));
        }
        if !curve.evaluate(point)?.is_zero() {
            return Err(Error::Degenerate("point not on the curve".into()));
        }
        let grad: Vec<FieldElement> = curve.gradient().iter().map(|g| g.evaluate(point)).collect::<Result<_>>()?;
        let Some(jb) = grad.iter().position(|g| !g.is_zero()) else {
            return Err(Error::Singular("curve singular at the point".into()));
        };
        let mut transverse = [field.zero(), field.zero(), field.zero()];
        transverse[jb] = field.one();
        let mut tangent = None;
        'search: for i in 0..3 {
            for j in (i + 1)..3 {
                let mut v = [field.zero(), field.zero(), field.zero()];
                v[i] = grad[j].clone();
                v[j] = -&grad[i];
                if v.iter().all(|e| e.is_zero()) {
                    continue;
                }
                let cross_zero = (0..3).all(|k| {
                    let (l, m) = ((k + 1) % 3, (k + 2) % 3);
                    (&v[l] * &point[m] - &v[m] * &point[l]).is_zero()
                });
                if !cross_zero {
                    tangent = Some(v);
                    break 'search;
                }
            }
        }
        let tangent = tangent.ok_or_else(|| Error::Degenerate("no tangent direction".into()))?;
        // f(a, b) = Q(p + a·e_a + b·e_b) in two affine variables
        let images: Vec<Polynomial> = (0..3)
            .map(|k| {
                &(&Polynomial::constant(field, 2, point[k].clone()) + &Polynomial::var(field, 2, 0).scale(&tangent[k]))
                    + &Polynomial::var(field, 2, 1).scale(&transverse[k])
            })
            .collect();
        let f = curve.substitute(&images)?;
        let fb_inv = dot(&grad, &transverse, field).inv()?;
        let n = precision.max(2);
        let mut phi: Series = vec![field.zero(); n];
        for _ in 0..n {
            let r = Self::eval_bivariate(&f, &phi, field);
            for k in 0..n {
                phi[k] -= &(&r[k] * &fb_inv);
            }
        }
        let mut gamma: [Series; 3] = std::array::from_fn(|_| vec![field.zero(); n]);
        for k in 0..3 {
            gamma[k][0] = point[k].clone();
            if n > 1 {
                gamma[k][1] = tangent[k].clone();
            }
            for (i, c) in phi.iter().enumerate() {
                if !c.is_zero() {
                    gamma[k][i] += &(c * &transverse[k]);
                }
            }
        }
        Ok(LocalBranch { field, point: point.clone(), tangent, transverse, gamma, precision: n })
    }

    fn eval_bivariate(f: &Polynomial, phi: &Series, field: FieldKind) -> Series {
        let n = phi.len();
        let mut a_pow: Vec<Series> = vec![];
        let mut phi_pow: Vec<Series> = vec![];
        let mut one = vec![field.zero(); n];
        one[0] = field.one();
        let mut out = vec![field.zero(); n];
        for (m, c) in f.terms() {
            let (i, j) = (m.exp(0) as usize, m.exp(1) as usize);
            while a_pow.len() <= i {
                let mut s = vec![field.zero(); n];
                if a_pow.len() < n {
                    s[a_pow.len()] = field.one();
                }
                a_pow.push(s);
            }
            while phi_pow.len() <= j {
                let next = match phi_pow.last() {
                    None => one.clone(),
                    Some(last) => series_mul(last, phi, field),
                };
                phi_pow.push(next);
            }
            let t = series_mul(&a_pow[i], &phi_pow[j], field);
            for k in 0..n {
                if !t[k].is_zero() {
                    out[k] += &(c * &t[k]);
                }
            }
        }
        out
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn point(&self) -> &[FieldElement; 3] {
        &self.point
    }

    pub fn tangent(&self) -> &[FieldElement; 3] {
        &self.tangent
    }

    pub fn transverse(&self) -> &[FieldElement; 3] {
        &self.transverse
    }

    /// g(γ(a)) truncated at the working precision.
    pub fn restrict(&self, g: &Polynomial) -> Series {
        let n = self.precision;
        let mut pows: [Vec<Series>; 3] = std::array::from_fn(|_| Vec::new());
        let mut out = vec![self.field.zero(); n];
        for (m, c) in g.terms() {
            let mut t = vec![self.field.zero(); n];
            t[0] = c.clone();
            for (k, (pk, gk)) in pows.iter_mut().zip(&self.gamma).enumerate() {
                let e = m.exp(k) as usize;
                if e == 0 {
                    continue;
                }
                while pk.len() < e {
                    let next = match pk.last() {
                        None => gk.clone(),
                        Some(last) => series_mul(last, gk, self.field),
                    };
                    pk.push(next);
                }
                t = series_mul(&t, &pk[e - 1], self.field);
            }
            for k in 0..n {
                if !t[k].is_zero() {
                    out[k] += &t[k];
                }
            }
        }
        out
    }

    /// Intersection multiplicity of g with the branch; `None` when it reaches the precision.
    pub fn order_of(&self, g: &Polynomial) -> Option<usize> {
        self.restrict(g).iter().position(|c| !c.is_zero())
    }

    /// Linear functionals on the coordinates of `basis` expressing "order ≥ `order`".
    pub fn conditions(&self, basis: &MonomialBasis, order: usize) -> Vec<Vec<FieldElement>> {
        assert!(order <= self.precision, "order exceeds the expansion precision");
        let cols: Vec<Series> = basis
            .monomials()
            .iter()
            .map(|m| self.restrict(&Polynomial::monomial(self.field, 3, *m, self.field.one())))
            .collect();
        (0..order).map(|k| cols.iter().map(|s| s[k].clone()).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse, VarSet};

    #[test]
    fn branch_lies_on_curve() {
        let q = FieldKind::Rational;
        let c = parse("x*z - y^2", &VarSet::plane(), q).unwrap();
        let p = [q.one(), q.zero(), q.zero()];
        let b = LocalBranch::new(&c, &p, 8).unwrap();
        assert!(b.restrict(&c).iter().all(|e| e.is_zero()));
        let tangent_line = parse("z", &VarSet::plane(), q).unwrap();
        assert_eq!(b.order_of(&tangent_line), Some(2));
        let other = parse("y", &VarSet::plane(), q).unwrap();
        assert_eq!(b.order_of(&other), Some(1));
    }

    #[test]
    fn singular_point_rejected() {
        let q = FieldKind::Rational;
        let c = parse("x*z^2 - y^3", &VarSet::plane(), q).unwrap();
        let p = [q.one(), q.zero(), q.zero()];
        assert!(matches!(LocalBranch::new(&c, &p, 4), Err(Error::Singular(_))));
    }
}
