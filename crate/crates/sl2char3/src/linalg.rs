//! Dense exact linear algebra over a [`Field`].
//!
//! Vectors are plain `Vec<Fe>`. Matrices act on column vectors. Subspaces are
//! stored by their reduced row echelon basis, which makes subspace equality a
//! plain comparison of bases.

use std::fmt;

use thiserror::Error;

use crate::field::{Fe, Field};
use crate::poly;

pub type Vector = Vec<Fe>;

/// Largest solution space searched exhaustively for an invertible intertwiner.
pub const INTERTWINER_SEARCH_DIM: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrices belong to different field contexts")]
    ContextMismatch,
    #[error("subspace is not invariant under the map")]
    NotInvariant,
    #[error("intertwiner solution space has dimension {0}, above the search cap")]
    Capacity(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatOp {
    Add,
    Sub,
    Mul,
    Scale(Fe),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.field.format(self[(i, j)])).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = Fe;
    fn index(&self, (i, j): (usize, usize)) -> &Fe {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Fe {
        &mut self.data[i * self.cols + j]
    }
}

impl Mat {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Mat {
        Mat {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Mat {
        Self::scalar(field, n, field.one())
    }

    pub fn scalar(field: &Field, n: usize, s: Fe) -> Mat {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = s;
        }
        m
    }

    pub fn diag(field: &Field, entries: &[Fe]) -> Mat {
        let mut m = Self::zeros(field, entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn from_fn(field: &Field, rows: usize, cols: usize, f: impl Fn(usize, usize) -> Fe) -> Mat {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Mat {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Builds a matrix from rows of equal length.
    pub fn from_rows(field: &Field, rows: &[Vec<Fe>]) -> Mat {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Mat {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    /// Builds a matrix of small integers, reduced into the prime field.
    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Mat {
        let rows: Vec<Vec<Fe>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Self::from_rows(field, &rows)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(field: &Field, n: usize, cols: &[Vector]) -> Mat {
        Self::from_fn(field, n, cols.len(), |i, j| cols[j][i])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn entries(&self) -> &[Fe] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// The scalar `s` if this matrix equals `s * I`.
    pub fn as_scalar(&self) -> Option<Fe> {
        if !self.is_square() {
            return None;
        }
        let s = if self.rows == 0 {
            self.field.zero()
        } else {
            self[(0, 0)]
        };
        (*self == Self::scalar(&self.field, self.rows, s)).then_some(s)
    }

    fn check_ctx(&self, other: &Mat) -> Result<(), LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::ContextMismatch);
        }
        Ok(())
    }

    /// Checked arithmetic. `Scale` ignores `other`.
    pub fn arith(&self, other: &Mat, op: MatOp) -> Result<Mat, LinalgError> {
        self.check_ctx(other)?;
        match op {
            MatOp::Add | MatOp::Sub => {
                if self.rows != other.rows || self.cols != other.cols {
                    return Err(LinalgError::Shape(format!(
                        "{}x{} vs {}x{}",
                        self.rows, self.cols, other.rows, other.cols
                    )));
                }
                Ok(if op == MatOp::Add {
                    self.add(other)
                } else {
                    self.sub(other)
                })
            }
            MatOp::Mul => {
                if self.cols != other.rows {
                    return Err(LinalgError::Shape(format!(
                        "{}x{} times {}x{}",
                        self.rows, self.cols, other.rows, other.cols
                    )));
                }
                Ok(self.mul(other))
            }
            MatOp::Scale(s) => {
                if !self.field.owns(s) {
                    return Err(LinalgError::ContextMismatch);
                }
                Ok(self.scale(s))
            }
        }
    }

    pub fn add(&self, other: &Mat) -> Mat {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Mat { data, ..self.clone() }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Mat { data, ..self.clone() }
    }

    pub fn neg(&self) -> Mat {
        let f = &self.field;
        Mat {
            data: self.data.iter().map(|&a| f.neg(a)).collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, s: Fe) -> Mat {
        let f = &self.field;
        Mat {
            data: self.data.iter().map(|&a| f.mul(a, s)).collect(),
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        debug_assert_eq!(self.cols, other.rows);
        let f = &self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other[(k, j)]));
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Mat {
        let mut out = Mat::identity(&self.field, self.rows);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(&self.field, self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Commutator `self * other - other * self`.
    pub fn bracket(&self, other: &Mat) -> Mat {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn apply(&self, v: &[Fe]) -> Vector {
        debug_assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (&a, &x)| f.add(acc, f.mul(a, x)))
            })
            .collect()
    }

    /// Kronecker product, with `self` indexing the outer block.
    pub fn kron(&self, other: &Mat) -> Mat {
        let f = &self.field;
        let (p, q) = (other.rows, other.cols);
        Mat::from_fn(f, self.rows * p, self.cols * q, |i, j| {
            f.mul(self[(i / p, j / q)], other[(i % p, j % q)])
        })
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m[(r, c)]).expect("pivot is nonzero");
            for j in 0..m.cols {
                m[(r, j)] = f.mul(m[(r, j)], inv);
            }
            for i in 0..m.rows {
                let factor = m[(i, c)];
                if i != r && !factor.is_zero() {
                    for j in 0..m.cols {
                        m[(i, j)] = f.sub(m[(i, j)], f.mul(factor, m[(r, j)]));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Null space `{ v : A v = 0 }`.
    pub fn kernel(&self) -> Subspace {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let vectors: Vec<Vector> = (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![f.zero(); self.cols];
                v[free] = f.one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(r[(i, free)]);
                }
                v
            })
            .collect();
        Subspace::span(f, self.cols, &vectors)
    }

    /// Column space.
    pub fn image(&self) -> Subspace {
        let cols: Vec<Vector> = (0..self.cols).map(|j| self.col(j)).collect();
        Subspace::span(&self.field, self.rows, &cols)
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let f = &self.field;
        let aug = Mat::from_fn(f, n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)]
            } else if j - n == i {
                f.one()
            } else {
                f.zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Mat::from_fn(f, n, n, |i, j| r[(i, j + n)]))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Similar upper Hessenberg matrix.
    fn hessenberg(&self) -> Mat {
        let f = &self.field;
        let n = self.rows;
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(p) = (j + 1..n).find(|&i| !h[(i, j)].is_zero()) else {
                continue;
            };
            h.swap_rows(p, j + 1);
            h.swap_cols(p, j + 1);
            let inv = f.inv(h[(j + 1, j)]).expect("pivot is nonzero");
            for i in j + 2..n {
                let factor = f.mul(h[(i, j)], inv);
                if factor.is_zero() {
                    continue;
                }
                for c in 0..n {
                    h[(i, c)] = f.sub(h[(i, c)], f.mul(factor, h[(j + 1, c)]));
                }
                for r in 0..n {
                    h[(r, j + 1)] = f.add(h[(r, j + 1)], f.mul(factor, h[(r, i)]));
                }
            }
        }
        h
    }

    /// Characteristic polynomial `det(xI - A)`, coefficients low to high.
    pub fn charpoly(&self) -> Vec<Fe> {
        assert!(self.is_square());
        let f = &self.field;
        let n = self.rows;
        let h = self.hessenberg();
        // 1-based accessor for the recurrence.
        let at = |i: usize, j: usize| h[(i - 1, j - 1)];
        let mut ps: Vec<Vec<Fe>> = vec![vec![f.one()]];
        for m in 1..=n {
            let mut next = poly::mul(f, &[f.neg(at(m, m)), f.one()], &ps[m - 1]);
            let mut prod = f.one();
            for i in (1..m).rev() {
                prod = f.mul(prod, at(i + 1, i));
                if prod.is_zero() {
                    break;
                }
                let coeff = f.mul(at(i, m), prod);
                let term: Vec<Fe> = ps[i - 1].iter().map(|&c| f.mul(c, coeff)).collect();
                next = poly::sub(f, &next, &term);
            }
            ps.push(next);
        }
        let mut p = ps.pop().unwrap();
        p.resize(n + 1, f.zero());
        p
    }

    /// Minimal polynomial: the first power `A^k` that is a combination of
    /// `I, A, ..., A^(k-1)` gives the monic relation.
    pub fn minpoly(&self) -> Vec<Fe> {
        assert!(self.is_square());
        let f = &self.field;
        let n = self.rows;
        let mut powers: Vec<Vector> = vec![Mat::identity(f, n).data];
        let mut cur = Mat::identity(f, n);
        loop {
            cur = cur.mul(self);
            powers.push(cur.data.clone());
            let system = Mat::from_cols(f, n * n, &powers);
            let ker = system.kernel();
            if let Some(v) = ker.basis().first() {
                return poly::monic(f, v.clone());
            }
        }
    }

    /// Both polynomials at once.
    pub fn char_min_poly(&self) -> (Vec<Fe>, Vec<Fe>) {
        (self.charpoly(), self.minpoly())
    }

    /// Eigenvalues lying in the field, each with its eigenspace, sorted by
    /// eigenvalue encoding.
    pub fn eigenspaces(&self) -> Vec<(Fe, Subspace)> {
        let f = &self.field;
        let roots = f.poly_roots(&self.charpoly()).expect("charpoly is monic");
        roots
            .roots
            .iter()
            .map(|&(lambda, _)| {
                let shifted = self.sub(&Mat::scalar(f, self.rows, lambda));
                (lambda, shifted.kernel())
            })
            .collect()
    }

    /// Evaluates a polynomial at this matrix.
    pub fn eval_poly(&self, p: &[Fe]) -> Mat {
        let f = &self.field;
        let n = self.rows;
        p.iter()
            .rev()
            .fold(Mat::zeros(f, n, n), |acc, &c| acc.mul(self).add(&Mat::scalar(f, n, c)))
    }

    /// Matrix of this map on the invariant subspace `u`, in `u`'s echelon basis.
    pub fn restrict(&self, u: &Subspace) -> Result<Mat, LinalgError> {
        let images: Vec<Vector> = u.basis().iter().map(|b| self.apply(b)).collect();
        let mut coords = Vec::with_capacity(images.len());
        for w in &images {
            coords.push(u.coords(w).ok_or(LinalgError::NotInvariant)?);
        }
        Ok(Mat::from_cols(&self.field, u.dim(), &coords))
    }

    /// Induced map on `ambient / u`, in the basis of the coordinates that are
    /// not pivots of `u`.
    pub fn quotient_action(&self, u: &Subspace) -> Result<Mat, LinalgError> {
        for b in u.basis() {
            if !u.contains(&self.apply(b)) {
                return Err(LinalgError::NotInvariant);
            }
        }
        let f = &self.field;
        let free = u.non_pivots();
        let cols: Vec<Vector> = free
            .iter()
            .map(|&c| {
                let w = u.reduce(&self.col(c));
                free.iter().map(|&k| w[k]).collect()
            })
            .collect();
        Ok(Mat::from_cols(f, free.len(), &cols))
    }
}

/// A subspace of `F^n`, held as a reduced row echelon basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<u16>> = self
            .basis
            .iter()
            .map(|v| v.iter().map(|x| x.code()).collect())
            .collect();
        write!(f, "Subspace(dim {} in {}: {:?})", self.dim(), self.ambient, rows)
    }
}

impl Subspace {
    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace {
            field: field.clone(),
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &Field, ambient: usize) -> Subspace {
        let vs: Vec<Vector> = (0..ambient).map(|i| unit(field, ambient, i)).collect();
        Self::span(field, ambient, &vs)
    }

    pub fn span(field: &Field, ambient: usize, vectors: &[Vector]) -> Subspace {
        if vectors.is_empty() {
            return Self::zero(field, ambient);
        }
        let (r, pivots) = Mat::from_rows(field, vectors).rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace {
            field: field.clone(),
            ambient,
            basis,
            pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// `v` minus its projection along the echelon basis: zero on every pivot.
    pub fn reduce(&self, v: &[Fe]) -> Vector {
        let f = &self.field;
        let mut w = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let c = w[p];
            if !c.is_zero() {
                for (x, &y) in w.iter_mut().zip(b) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Fe]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[Fe]) -> Option<Vector> {
        self.contains(v).then(|| self.pivots.iter().map(|&p| v[p]).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// The vector with the given coordinates.
    pub fn combine(&self, coords: &[Fe]) -> Vector {
        let field = &self.field;
        let mut out = vec![field.zero(); self.ambient];
        for (b, &c) in self.basis.iter().zip(coords) {
            if c.is_zero() {
                continue;
            }
            for (x, &y) in out.iter_mut().zip(b) {
                *x = field.add(*x, field.mul(c, y));
            }
        }
        out
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let vs: Vec<Vector> = self.basis.iter().chain(&other.basis).cloned().collect();
        Self::span(&self.field, self.ambient, &vs)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let field = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(field, self.ambient);
        }
        // Solve sum x_i a_i = sum y_j b_j.
        let mut cols: Vec<Vector> = self.basis.clone();
        cols.extend(other.basis.iter().map(|b| b.iter().map(|&x| field.neg(x)).collect()));
        let system = Mat::from_cols(field, self.ambient, &cols);
        let vs: Vec<Vector> = system
            .kernel()
            .basis()
            .iter()
            .map(|k| self.combine(&k[..self.dim()]))
            .collect();
        Self::span(field, self.ambient, &vs)
    }
}

/// The `i`-th standard basis vector of `F^n`.
pub fn unit(field: &Field, n: usize, i: usize) -> Vector {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

/// Basis of `{ S : S * a_i = b_i * S for all i }`, where `S` maps the space of
/// the `a_i` (dimension n) to that of the `b_i` (dimension m). Only the
/// entries `(r, c)` with `allowed(r, c)` are unknowns; the rest are zero.
pub fn hom_space_masked(field: &Field, a: &[&Mat], b: &[&Mat], allowed: impl Fn(usize, usize) -> bool) -> Vec<Mat> {
    let n = a[0].cols();
    let m = b[0].rows();
    let unknowns: Vec<(usize, usize)> = (0..m)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .filter(|&(r, c)| allowed(r, c))
        .collect();
    if unknowns.is_empty() {
        return Vec::new();
    }
    let index = |r: usize, c: usize| unknowns.iter().position(|&u| u == (r, c));
    let mut eqs: Vec<Vector> = Vec::new();
    for (ai, bi) in a.iter().zip(b) {
        // (S a)(i, j) - (b S)(i, j) = sum_k S(i,k) a(k,j) - sum_k b(i,k) S(k,j)
        for i in 0..m {
            for j in 0..n {
                let mut row = vec![field.zero(); unknowns.len()];
                for k in 0..n {
                    if let Some(u) = index(i, k) {
                        row[u] = field.add(row[u], ai[(k, j)]);
                    }
                }
                for k in 0..m {
                    if let Some(u) = index(k, j) {
                        row[u] = field.sub(row[u], bi[(i, k)]);
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    eqs.push(row);
                }
            }
        }
    }
    let solutions = if eqs.is_empty() {
        Subspace::full(field, unknowns.len())
    } else {
        Mat::from_rows(field, &eqs).kernel()
    };
    solutions
        .basis()
        .iter()
        .map(|v| {
            let mut s = Mat::zeros(field, m, n);
            for (&(r, c), &x) in unknowns.iter().zip(v) {
                s[(r, c)] = x;
            }
            s
        })
        .collect()
}

/// Basis of all intertwiners `S` with `S * a_i = b_i * S`.
pub fn hom_space(field: &Field, a: &[&Mat], b: &[&Mat]) -> Vec<Mat> {
    hom_space_masked(field, a, b, |_, _| true)
}

/// An invertible `S` with `S * a_i = b_i * S` for every `i`, if one exists.
///
/// The solution space of the linear system is searched projectively point by
/// point, which is exhaustive up to dimension [`INTERTWINER_SEARCH_DIM`].
pub fn solve_intertwiner(a: &[Mat], b: &[Mat]) -> Result<Option<Mat>, LinalgError> {
    if a.len() != b.len() || a.is_empty() {
        return Err(LinalgError::Shape("generator lists differ in length".into()));
    }
    let n = a[0].rows();
    for m in a.iter().chain(b) {
        if !m.is_square() || m.rows() != n {
            return Err(LinalgError::Shape("all generators must be square of one size".into()));
        }
        m.check_ctx(&a[0])?;
    }
    let field = a[0].field().clone();
    let ar: Vec<&Mat> = a.iter().collect();
    let br: Vec<&Mat> = b.iter().collect();
    let basis = hom_space(&field, &ar, &br);
    if basis.is_empty() {
        return Ok(None);
    }
    if let Some(s) = basis.iter().find(|s| s.is_invertible()) {
        return Ok(Some(s.clone()));
    }
    let m = basis.len();
    if m > INTERTWINER_SEARCH_DIM {
        return Err(LinalgError::Capacity(m));
    }
    for coeffs in projective_points(&field, m) {
        let s = basis
            .iter()
            .zip(&coeffs)
            .fold(Mat::zeros(&field, n, n), |acc, (bm, &c)| acc.add(&bm.scale(c)));
        if s.is_invertible() {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// One representative per point of projective `(m-1)`-space: the first
/// nonzero coordinate is 1.
pub fn projective_points(field: &Field, m: usize) -> Vec<Vector> {
    let q = field.order();
    let elems: Vec<Fe> = field.elements().collect();
    let mut out = Vec::new();
    for lead in 0..m {
        let tail = m - lead - 1;
        for code in 0..q.pow(tail as u32) {
            let mut v = vec![field.zero(); m];
            v[lead] = field.one();
            let mut c = code;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = elems[c % q];
                c /= q;
            }
            out.push(v);
        }
    }
    out
}
