//! Dense exact linear algebra over a [`FieldKind`].

mod fraction_free;
mod modp;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldKind, Fp};

/// A dense row-major matrix over one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldKind,
    entries: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(field: FieldKind, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, field, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldKind, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from rows of equal length; `cols` is needed when there are no rows.
    pub fn from_rows(field: FieldKind, cols: usize, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!("row {i} has length {}, expected {cols}", row.len())));
            }
            for e in row {
                if e.kind() != field {
                    return Err(Error::FieldMismatch(format!("entry over {} in a matrix over {field}", e.kind())));
                }
                entries.push(e);
            }
        }
        Ok(Matrix { rows: n, cols, field, entries })
    }

    pub fn from_i64(field: FieldKind, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows.iter().map(|r| r.iter().map(|&a| field.from_i64(a)).collect()).collect();
        Matrix::from_rows(field, cols, data).expect("rows of equal length")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        assert_eq!(v.kind(), self.field, "entry field must match the matrix field");
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows || self.field != other.field {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v, self.field)).collect())
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }
}

pub fn dot(a: &[FieldElement], b: &[FieldElement], field: FieldKind) -> FieldElement {
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

/// Output of [`rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    /// The reduced row echelon form, same shape as the input, zero rows at the bottom.
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Reduced nonzero rows and pivot columns of the row space of `rows`.
pub(crate) fn reduced_rows(field: FieldKind, cols: usize, rows: &[Vec<FieldElement>]) -> (Vec<Vec<FieldElement>>, Vec<usize>) {
    match field {
        FieldKind::Rational => {
            let ints = rows
                .iter()
                .map(|r| {
                    let qs: Vec<BigRational> = r.iter().map(|e| e.as_rational().expect("rational entry").clone()).collect();
                    fraction_free::primitive_from_rationals(&qs)
                })
                .collect();
            let (red, pivots) = fraction_free::reduce(ints, cols);
            let out = fraction_free::normalize(red, &pivots)
                .into_iter()
                .map(|r| r.into_iter().map(FieldElement::Rational).collect())
                .collect();
            (out, pivots)
        }
        FieldKind::Prime(p) => {
            let res = rows.iter().map(|r| r.iter().map(|e| e.residue().expect("prime-field entry")).collect()).collect();
            let (red, pivots) = modp::reduce(res, cols, p);
            let out = red
                .into_iter()
                .map(|r| r.into_iter().map(|a| FieldElement::Prime(Fp::new(a, p))).collect())
                .collect();
            (out, pivots)
        }
    }
}

/// The unique reduced row echelon form.  Pivots are chosen as the first nonzero entry, scanning
/// columns left to right and rows top to bottom.
pub fn rref(m: &Matrix) -> Rref {
    let (red, pivots) = reduced_rows(m.field, m.cols, &m.row_vecs());
    let rank = red.len();
    let mut out = Matrix::zeros(m.field, m.rows, m.cols);
    for (i, row) in red.into_iter().enumerate() {
        for (j, e) in row.into_iter().enumerate() {
            out.entries[i * m.cols + j] = e;
        }
    }
    Rref { matrix: out, rank, pivots }
}

/// Basis of the right kernel {x : A·x = 0}, one vector per free column.
pub fn kernel(a: &Matrix) -> Vec<Vec<FieldElement>> {
    let (red, pivots) = reduced_rows(a.field, a.cols, &a.row_vecs());
    kernel_from_reduced(a.field, a.cols, &red, &pivots)
}

fn kernel_from_reduced(field: FieldKind, cols: usize, red: &[Vec<FieldElement>], pivots: &[usize]) -> Vec<Vec<FieldElement>> {
    let mut is_pivot = vec![false; cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![field.zero(); cols];
            v[f] = field.one();
            for (row, &c) in red.iter().zip(pivots) {
                if !row[f].is_zero() {
                    v[c] = -&row[f];
                }
            }
            v
        })
        .collect()
}

/// A particular solution together with a kernel basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vec<FieldElement>,
    pub kernel: Vec<Vec<FieldElement>>,
}

/// Solves A·x = b.  `Ok(None)` when the system is inconsistent.
pub fn solve(a: &Matrix, b: &[FieldElement]) -> Result<Option<Solution>> {
    if b.len() != a.rows {
        return Err(Error::DimensionMismatch(format!("right side of length {} for {} rows", b.len(), a.rows)));
    }
    if let Some(e) = b.iter().find(|e| e.kind() != a.field) {
        return Err(Error::FieldMismatch(format!("right side over {} for a matrix over {}", e.kind(), a.field)));
    }
    let n = a.cols;
    let aug: Vec<Vec<FieldElement>> = (0..a.rows)
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let (red, pivots) = reduced_rows(a.field, n + 1, &aug);
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut particular = vec![a.field.zero(); n];
    for (row, &c) in red.iter().zip(&pivots) {
        particular[c] = row[n].clone();
    }
    let trimmed: Vec<Vec<FieldElement>> = red.into_iter().map(|mut r| {
        r.truncate(n);
        r
    }).collect();
    let kernel = kernel_from_reduced(a.field, n, &trimmed, &pivots);
    Ok(Some(Solution { particular, kernel }))
}

/// A linear subspace of field^n stored by its canonical reduced basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    field: FieldKind,
    basis: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldKind, ambient_dim: usize) -> Self {
        Subspace { ambient_dim, field, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: FieldKind, ambient_dim: usize) -> Self {
        let id = Matrix::identity(field, ambient_dim);
        Subspace { ambient_dim, field, basis: id.row_vecs(), pivots: (0..ambient_dim).collect() }
    }

    /// Span of the given vectors.
    pub fn span(field: FieldKind, ambient_dim: usize, vectors: &[Vec<FieldElement>]) -> Result<Self> {
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch(format!("vector of length {} in ambient {ambient_dim}", v.len())));
            }
            if let Some(e) = v.iter().find(|e| e.kind() != field) {
                return Err(Error::FieldMismatch(format!("{} in a space over {field}", e.kind())));
            }
        }
        let (basis, pivots) = reduced_rows(field, ambient_dim, vectors);
        Ok(Subspace { ambient_dim, field, basis, pivots })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_rows(&self) -> &[Vec<FieldElement>] {
        &self.basis
    }

    pub fn basis(&self) -> Matrix {
        Matrix::from_rows(self.field, self.ambient_dim, self.basis.clone()).expect("consistent basis")
    }

    /// Normal form of `v`: the unique vector congruent to `v` supported off the pivot columns.
    pub fn reduce(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.ambient_dim, "vector length must equal the ambient dimension");
        let mut out = v.to_vec();
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            let f = v[c].clone();
            if f.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o -= &(&f * r);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        self.reduce(v).iter().all(|e| e.is_zero())
    }

    /// Coordinates of the normal form on [`Subspace::quotient_basis`].
    pub fn quotient_coords(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        let nf = self.reduce(v);
        self.quotient_basis().into_iter().map(|i| nf[i].clone()).collect()
    }

    /// Coordinates of a member of the subspace with respect to the reduced basis.
    pub fn chart_coords(&self, v: &[FieldElement]) -> Option<Vec<FieldElement>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v[c].clone()).collect())
    }

    /// Inverse of [`Subspace::chart_coords`].
    pub fn from_chart(&self, coords: &[FieldElement]) -> Vec<FieldElement> {
        let mut out = vec![self.field.zero(); self.ambient_dim];
        for (row, c) in self.basis.iter().zip(coords) {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o += &(c * r);
                }
            }
        }
        out
    }

    /// Non-pivot coordinate indices; they index a complement of the subspace.
    pub fn quotient_basis(&self) -> Vec<usize> {
        quotient_basis(self.ambient_dim, self)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(self.field, self.ambient_dim, &vs)
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let (k, l) = (self.dim(), other.dim());
        if k == 0 || l == 0 {
            return Ok(Subspace::zero(self.field, self.ambient_dim));
        }
        // relations Σ a_i u_i + Σ b_j w_j = 0 are the kernel of the transpose of the stacked basis
        let mut stacked = self.basis.clone();
        stacked.extend(other.basis.iter().cloned());
        let m = Matrix::from_rows(self.field, self.ambient_dim, stacked)?.transpose();
        let rels = kernel(&m);
        let vs: Vec<Vec<FieldElement>> = rels
            .iter()
            .map(|c| {
                let mut v = vec![self.field.zero(); self.ambient_dim];
                for (a, u) in c[..k].iter().zip(&self.basis) {
                    if a.is_zero() {
                        continue;
                    }
                    for (o, x) in v.iter_mut().zip(u) {
                        if !x.is_zero() {
                            *o += &(a * x);
                        }
                    }
                }
                v
            })
            .collect();
        Subspace::span(self.field, self.ambient_dim, &vs)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis.iter().all(|v| other.contains(v))
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(format!("ambient {} vs {}", self.ambient_dim, other.ambient_dim)));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        Ok(())
    }
}

/// Non-pivot coordinate indices of `sub`'s reduced basis.
pub fn quotient_basis(ambient_dim: usize, sub: &Subspace) -> Vec<usize> {
    assert_eq!(ambient_dim, sub.ambient_dim, "ambient dimensions must agree");
    let mut is_pivot = vec![false; ambient_dim];
    for &c in &sub.pivots {
        is_pivot[c] = true;
    }
    (0..ambient_dim).filter(|&i| !is_pivot[i]).collect()
}
