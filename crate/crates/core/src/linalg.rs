//! Dense complex vectors and matrices, plus the factorizations the solvers
//! need: a one-sided Jacobi SVD and a cyclic Jacobi eigensolver for small
//! real symmetric matrices.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Global tolerance for unitarity checks.
pub const TAU_UNITARY: f64 = 1e-10;
/// Global tolerance for symmetry checks.
pub const TAU_SYM: f64 = 1e-10;
/// Relative Frobenius tolerance for factorization reconstruction.
pub const TAU_RECON: f64 = 1e-10;

const MAX_SWEEPS: usize = 80;

fn all_finite(values: &[C64]) -> bool {
    values.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// A dense complex column vector with at least one entry.
#[derive(Clone, PartialEq)]
pub struct ComplexVector {
    entries: Vec<C64>,
}

impl ComplexVector {
    pub fn new(entries: Vec<C64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::dim("vector must have at least one entry"));
        }
        if !all_finite(&entries) {
            return Err(Error::domain("vector has non-finite entries"));
        }
        Ok(Self { entries })
    }

    pub fn zeros(len: usize) -> Self {
        assert!(len >= 1, "vector length must be positive");
        Self {
            entries: vec![C64::new(0.0, 0.0); len],
        }
    }

    /// `k`-th canonical basis vector of length `len`.
    pub fn unit(len: usize, k: usize) -> Self {
        let mut v = Self::zeros(len);
        v.entries[k] = C64::new(1.0, 0.0);
        v
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, C64> {
        self.entries.iter()
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.entries
    }

    pub fn norm(&self) -> f64 {
        two_norm(self)
    }

    /// Unit-norm copy; errors on the zero vector.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::domain("cannot normalize a zero vector"));
        }
        Ok(self.scale(C64::new(1.0 / n, 0.0)))
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            entries: self.entries.iter().map(|z| z * c).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            entries: self.entries.iter().map(|z| z.conj()).collect(),
        }
    }

    /// Hermitian inner product `selfᴴ · other`.
    pub fn dot(&self, other: &ComplexVector) -> Result<C64> {
        if self.len() != other.len() {
            return Err(Error::dim(format!(
                "inner product of lengths {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(hdot(&self.entries, &other.entries))
    }

    /// Contiguous sub-vector `[start, start + len)`.
    pub fn segment(&self, start: usize, len: usize) -> Result<Self> {
        if len == 0 || start + len > self.len() {
            return Err(Error::dim(format!(
                "segment [{start}, {}) out of range for length {}",
                start + len,
                self.len()
            )));
        }
        Ok(Self {
            entries: self.entries[start..start + len].to_vec(),
        })
    }
}

impl Index<usize> for ComplexVector {
    type Output = C64;
    fn index(&self, i: usize) -> &C64 {
        &self.entries[i]
    }
}

impl fmt::Debug for ComplexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.iter()).finish()
    }
}

/// Dense complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::dim("matrix dimensions must be positive"));
        }
        if data.len() != rows * cols {
            return Err(Error::dim(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if !all_finite(&data) {
            return Err(Error::domain("matrix has non-finite entries"));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    /// Builds a matrix from nested rows.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::dim("ragged rows"));
        }
        Self::new(n_rows, n_cols, rows.concat())
    }

    pub fn from_columns(columns: &[ComplexVector]) -> Result<Self> {
        let cols = columns.len();
        if cols == 0 {
            return Err(Error::dim("need at least one column"));
        }
        let rows = columns[0].len();
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::dim("columns have different lengths"));
        }
        Ok(Self::from_fn(rows, cols, |r, c| columns[c][r]))
    }

    pub fn from_diagonal(values: &[C64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::dim("empty diagonal"));
        }
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        if !all_finite(&m.data) {
            return Err(Error::domain("diagonal has non-finite entries"));
        }
        Ok(m)
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

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn column(&self, c: usize) -> ComplexVector {
        ComplexVector {
            entries: (0..self.rows).map(|r| self[(r, c)]).collect(),
        }
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(C64, C64) -> C64) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::dim(format!(
                "elementwise op on {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::dim(format!(
                "matmul of {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let row = &self.data[r * self.cols..(r + 1) * self.cols];
            let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
            for (k, &a) in row.iter().enumerate() {
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                let src = &other.data[k * other.cols..(k + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(src) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, x: &ComplexVector) -> Result<ComplexVector> {
        if self.cols != x.len() {
            return Err(Error::dim(format!(
                "matvec of {}x{} by length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        let entries = (0..self.rows)
            .map(|r| {
                self.data[r * self.cols..(r + 1) * self.cols]
                    .iter()
                    .zip(x.iter())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect();
        Ok(ComplexVector { entries })
    }

    /// Row vector product `xᴴ · self`, returned as a column vector.
    pub fn left_hmul(&self, x: &ComplexVector) -> Result<ComplexVector> {
        if self.rows != x.len() {
            return Err(Error::dim(format!(
                "xᴴA with length {} and {}x{}",
                x.len(),
                self.rows,
                self.cols
            )));
        }
        let mut entries = vec![C64::new(0.0, 0.0); self.cols];
        for r in 0..self.rows {
            let xr = x[r].conj();
            for (e, a) in entries
                .iter_mut()
                .zip(&self.data[r * self.cols..(r + 1) * self.cols])
            {
                *e += xr * a;
            }
        }
        Ok(ComplexVector { entries })
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) -> Result<()> {
        if r0 + block.rows > self.rows || c0 + block.cols > self.cols {
            return Err(Error::dim("block does not fit"));
        }
        for r in 0..block.rows {
            for c in 0..block.cols {
                self[(r0 + r, c0 + c)] = block[(r, c)];
            }
        }
        Ok(())
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 || r0 + rows > self.rows || c0 + cols > self.cols {
            return Err(Error::dim("block out of range"));
        }
        Ok(Self::from_fn(rows, cols, |r, c| self[(r0 + r, c0 + c)]))
    }

    pub fn frobenius_norm(&self) -> f64 {
        frobenius(&self.data)
    }

    fn to_columns(&self) -> Vec<Vec<C64>> {
        (0..self.cols)
            .map(|c| (0..self.rows).map(|r| self[(r, c)]).collect())
            .collect()
    }

    fn from_column_vecs(rows: usize, columns: &[Vec<C64>]) -> Self {
        Self::from_fn(rows, columns.len(), |r, c| columns[c][r])
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self[(r, c)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

fn frobenius(values: &[C64]) -> f64 {
    values.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `xᴴ y` on raw slices.
fn hdot(x: &[C64], y: &[C64]) -> C64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

pub fn frobenius_norm(a: &ComplexMatrix) -> f64 {
    a.frobenius_norm()
}

pub fn two_norm(x: &ComplexVector) -> f64 {
    frobenius(&x.entries)
}

pub fn matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.matmul(b)
}

pub fn matvec(a: &ComplexMatrix, x: &ComplexVector) -> Result<ComplexVector> {
    a.matvec(x)
}

pub fn conj_transpose(a: &ComplexMatrix) -> ComplexMatrix {
    a.conj_transpose()
}

/// `x yᴴ`.
pub fn outer_product(x: &ComplexVector, y: &ComplexVector) -> ComplexMatrix {
    ComplexMatrix::from_fn(x.len(), y.len(), |r, c| x[r] * y[c].conj())
}

/// `‖QᴴQ − I‖_F`.
pub fn unitarity_defect(q: &ComplexMatrix) -> Result<f64> {
    if !q.is_square() {
        return Err(Error::dim(format!(
            "unitarity check needs a square matrix, got {}x{}",
            q.rows(),
            q.cols()
        )));
    }
    let n = q.rows();
    let cols = q.to_columns();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            let mut g = hdot(&cols[i], &cols[j]);
            if i == j {
                g -= 1.0;
            }
            acc += g.norm_sqr();
        }
    }
    Ok(acc.sqrt())
}

/// `‖Q − Qᵀ‖_F`.
pub fn symmetry_defect(q: &ComplexMatrix) -> Result<f64> {
    if !q.is_square() {
        return Err(Error::dim(format!(
            "symmetry check needs a square matrix, got {}x{}",
            q.rows(),
            q.cols()
        )));
    }
    let n = q.rows();
    let mut acc = 0.0;
    for r in 0..n {
        for c in 0..n {
            acc += (q[(r, c)] - q[(c, r)]).norm_sqr();
        }
    }
    Ok(acc.sqrt())
}

/// Full singular value decomposition `A = left · diag(s) · rightᴴ`.
#[derive(Debug, Clone)]
pub struct SvdFactorization {
    /// Unitary, `rows × rows`.
    pub left: ComplexMatrix,
    /// Descending, nonnegative, length `min(rows, cols)`.
    pub singular_values: Vec<f64>,
    /// Unitary, `cols × cols`.
    pub right: ComplexMatrix,
}

impl SvdFactorization {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let (m, n) = (self.left.rows(), self.right.rows());
        let mut out = ComplexMatrix::zeros(m, n);
        for (k, &s) in self.singular_values.iter().enumerate() {
            for r in 0..m {
                let a = self.left[(r, k)] * s;
                for c in 0..n {
                    out[(r, c)] += a * self.right[(c, k)].conj();
                }
            }
        }
        out
    }

    /// `‖A − U S Vᴴ‖_F / ‖A‖_F` (absolute when `A = 0`).
    pub fn relative_residual(&self, a: &ComplexMatrix) -> f64 {
        let diff = a
            .sub(&self.reconstruct())
            .map(|d| d.frobenius_norm())
            .unwrap_or(f64::INFINITY);
        let scale = a.frobenius_norm();
        if scale > 0.0 {
            diff / scale
        } else {
            diff
        }
    }
}

/// Singular value decomposition by one-sided (Hestenes) Jacobi rotations.
pub fn svd(a: &ComplexMatrix) -> Result<SvdFactorization> {
    if a.rows() >= a.cols() {
        jacobi_svd_tall(a)
    } else {
        let f = jacobi_svd_tall(&a.conj_transpose())?;
        Ok(SvdFactorization {
            left: f.right,
            singular_values: f.singular_values,
            right: f.left,
        })
    }
}

fn jacobi_svd_tall(a: &ComplexMatrix) -> Result<SvdFactorization> {
    let (m, n) = (a.rows(), a.cols());
    let fro = a.frobenius_norm();
    if fro == 0.0 {
        return Ok(SvdFactorization {
            left: ComplexMatrix::identity(m),
            singular_values: vec![0.0; n],
            right: ComplexMatrix::identity(n),
        });
    }

    let mut cols = a.to_columns();
    let mut v: Vec<Vec<C64>> = (0..n)
        .map(|j| {
            let mut e = vec![C64::new(0.0, 0.0); n];
            e[j] = C64::new(1.0, 0.0);
            e
        })
        .collect();

    let tol = (m as f64) * f64::EPSILON;
    let negligible = (f64::EPSILON * fro).powi(2);
    let mut norms: Vec<f64> = cols.iter().map(|c| c.iter().map(|z| z.norm_sqr()).sum()).collect();

    let mut converged = false;
    for _sweep in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha = norms[p];
                let beta = norms[q];
                if alpha <= negligible || beta <= negligible {
                    continue;
                }
                let gamma = hdot(&cols[p], &cols[q]);
                let g_abs = gamma.norm();
                if g_abs <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g_abs;
                let zeta = (beta - alpha) / (2.0 * g_abs);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                // a_q is phase-shifted by conj(phase) so that a_pᴴ a_q becomes real.
                let ph = phase.conj();
                rotate_pair(&mut cols, p, q, c, s, ph);
                rotate_pair(&mut v, p, q, c, s, ph);
                norms[p] = cols[p].iter().map(|z| z.norm_sqr()).sum();
                norms[q] = cols[q].iter().map(|z| z.norm_sqr()).sum();
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let sigma: Vec<f64> = norms.iter().map(|x| x.sqrt()).collect();
    order.sort_by(|&i, &j| sigma[j].partial_cmp(&sigma[i]).unwrap().then(i.cmp(&j)));

    let singular_values: Vec<f64> = order.iter().map(|&j| sigma[j]).collect();
    let right_cols: Vec<Vec<C64>> = order.iter().map(|&j| v[j].clone()).collect();

    let s_max = singular_values[0];
    let zero_cut = (m.max(n) as f64) * f64::EPSILON * s_max;
    let mut left_cols: Vec<Vec<C64>> = Vec::with_capacity(m);
    for (&j, &s) in order.iter().zip(&singular_values) {
        if s <= zero_cut {
            break;
        }
        left_cols.push(cols[j].iter().map(|z| z / s).collect());
    }
    complete_orthonormal_basis(&mut left_cols, m);

    let out = SvdFactorization {
        left: ComplexMatrix::from_column_vecs(m, &left_cols),
        singular_values,
        right: ComplexMatrix::from_column_vecs(n, &right_cols),
    };
    if !converged {
        return Err(Error::Numerical {
            what: format!("Jacobi SVD did not converge in {MAX_SWEEPS} sweeps"),
            residual: out.relative_residual(a),
        });
    }
    Ok(out)
}

/// Applies `x_p ← c x_p − s ph x_q`, `x_q ← s x_p + c ph x_q`.
fn rotate_pair(vecs: &mut [Vec<C64>], p: usize, q: usize, c: f64, s: f64, ph: C64) {
    let (lo, hi) = vecs.split_at_mut(q);
    let xp = &mut lo[p];
    let xq = &mut hi[0];
    for (a, b) in xp.iter_mut().zip(xq.iter_mut()) {
        let bq = *b * ph;
        let ap = *a;
        *a = ap * c - bq * s;
        *b = ap * s + bq * c;
    }
}

/// Extends an orthonormal set in `C^dim` to a full basis using canonical
/// basis vectors and two-pass Gram–Schmidt.
fn complete_orthonormal_basis(basis: &mut Vec<Vec<C64>>, dim: usize) {
    // Any candidate whose residual is at least this large is accepted; the
    // skipped candidates can hold at most a quarter of the missing mass, so a
    // single pass always finishes.
    let accept = 0.5 / (dim as f64).sqrt();
    for k in 0..dim {
        if basis.len() == dim {
            return;
        }
        let mut w = vec![C64::new(0.0, 0.0); dim];
        w[k] = C64::new(1.0, 0.0);
        for _ in 0..2 {
            for b in basis.iter() {
                let proj = hdot(b, &w);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= bi * proj;
                }
            }
        }
        let nrm = frobenius(&w);
        if nrm >= accept {
            basis.push(w.into_iter().map(|z| z / nrm).collect());
        }
    }
    debug_assert_eq!(basis.len(), dim);
}

/// Eigendecomposition of a real symmetric `n × n` matrix (row-major) by
/// cyclic Jacobi rotations. Returns eigenvalues in descending order and the
/// matching orthonormal eigenvectors as columns.
pub(crate) fn real_symmetric_eigen(a: &[f64], n: usize) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    assert_eq!(a.len(), n * n);
    let mut m = a.to_vec();
    let mut vecs = vec![0.0; n * n];
    for i in 0..n {
        vecs[i * n + i] = 1.0;
    }
    let scale: f64 = m.iter().map(|x| x * x).sum::<f64>().sqrt();
    let threshold = f64::EPSILON * scale;

    let off = |m: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += m[i * n + j] * m[i * n + j];
                }
            }
        }
        s.sqrt()
    };

    let mut converged = scale == 0.0;
    for _ in 0..MAX_SWEEPS {
        if converged || off(&m) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                if apq.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (m[q * n + q] - m[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[k * n + p];
                    let mkq = m[k * n + q];
                    m[k * n + p] = c * mkp - s * mkq;
                    m[k * n + q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p * n + k];
                    let mqk = m[q * n + k];
                    m[p * n + k] = c * mpk - s * mqk;
                    m[q * n + k] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = vecs[k * n + p];
                    let vkq = vecs[k * n + q];
                    vecs[k * n + p] = c * vkp - s * vkq;
                    vecs[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        return Err(Error::Numerical {
            what: "symmetric Jacobi eigensolver did not converge".into(),
            residual: off(&m),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[j * n + j].partial_cmp(&m[i * n + i]).unwrap().then(i.cmp(&j)));
    let values = order.iter().map(|&i| m[i * n + i]).collect();
    let vectors = order
        .iter()
        .map(|&i| (0..n).map(|k| vecs[k * n + i]).collect())
        .collect();
    Ok((values, vectors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    pub(crate) fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(rows, cols, |_, _| {
            c(rng.random::<f64>() * 2.0 - 1.0, rng.random::<f64>() * 2.0 - 1.0)
        })
    }

    #[test]
    fn identity_singular_values() {
        let f = svd(&ComplexMatrix::identity(3)).unwrap();
        assert_eq!(f.singular_values, vec![1.0, 1.0, 1.0]);
        assert!(unitarity_defect(&f.left).unwrap() < 1e-14);
    }

    #[test]
    fn rank_one_singular_values() {
        let u = ComplexVector::new(vec![c(1.0, 1.0), c(0.0, 2.0), c(-1.0, 0.5)])
            .unwrap()
            .normalized()
            .unwrap();
        let v = ComplexVector::new(vec![c(0.3, -1.0), c(2.0, 0.0), c(0.0, 0.0)])
            .unwrap()
            .normalized()
            .unwrap();
        let a = outer_product(&u, &v).scale(c(5.0, 0.0));
        let f = svd(&a).unwrap();
        assert!((f.singular_values[0] - 5.0).abs() < 1e-13);
        assert!(f.singular_values[1..].iter().all(|&s| s < 1e-13));
        assert!(unitarity_defect(&f.left).unwrap() < 1e-12);
        assert!(unitarity_defect(&f.right).unwrap() < 1e-12);
        assert!(f.relative_residual(&a) < 1e-13);
    }

    #[test]
    fn random_square_residual() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = random_matrix(&mut rng, 8, 8);
        let f = svd(&a).unwrap();
        assert!(f.relative_residual(&a) <= 1e-10);
        assert!(unitarity_defect(&f.left).unwrap() <= 1e-10);
        assert!(unitarity_defect(&f.right).unwrap() <= 1e-10);
        assert!(f.singular_values.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn rectangular_both_orientations() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for (r, cl) in [(7, 3), (3, 7), (16, 1), (1, 5)] {
            let a = random_matrix(&mut rng, r, cl);
            let f = svd(&a).unwrap();
            assert_eq!(f.left.rows(), r);
            assert_eq!(f.right.rows(), cl);
            assert_eq!(f.singular_values.len(), r.min(cl));
            assert!(f.relative_residual(&a) <= 1e-12, "{r}x{cl}");
            assert!(unitarity_defect(&f.left).unwrap() <= 1e-12);
            assert!(unitarity_defect(&f.right).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn zero_matrix_svd() {
        let f = svd(&ComplexMatrix::zeros(3, 2)).unwrap();
        assert_eq!(f.singular_values, vec![0.0, 0.0]);
        assert_eq!(f.relative_residual(&ComplexMatrix::zeros(3, 2)), 0.0);
    }

    #[test]
    fn defect_examples() {
        assert_eq!(unitarity_defect(&ComplexMatrix::identity(4)).unwrap(), 0.0);
        let two_i = ComplexMatrix::identity(2).scale(c(2.0, 0.0));
        let d = unitarity_defect(&two_i).unwrap();
        assert!((d - 3.0 * 2f64.sqrt()).abs() < 1e-14);

        let diag = ComplexMatrix::from_diagonal(&[c(1.0, 2.0), c(-3.0, 0.5)]).unwrap();
        assert_eq!(symmetry_defect(&diag).unwrap(), 0.0);
        let skew = ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(-1.0, 0.0), c(0.0, 0.0)]]).unwrap();
        assert!((symmetry_defect(&skew).unwrap() - 2.0 * 2f64.sqrt()).abs() < 1e-14);

        let rect = ComplexMatrix::zeros(2, 3);
        assert!(matches!(unitarity_defect(&rect), Err(Error::Dimension(_))));
        assert!(matches!(symmetry_defect(&rect), Err(Error::Dimension(_))));
    }

    #[test]
    fn svd_left_factor_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = random_matrix(&mut rng, 12, 12);
        let f = svd(&a).unwrap();
        assert!(unitarity_defect(&f.left).unwrap() <= 1e-10);
    }

    #[test]
    fn basic_ops() {
        let e1 = ComplexVector::unit(2, 0);
        let e2 = ComplexVector::unit(2, 1);
        let o = outer_product(&e1, &e2);
        assert_eq!(
            o,
            ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]]).unwrap()
        );
        assert_eq!(two_norm(&ComplexVector::from_real(&[3.0, 4.0]).unwrap()), 5.0);

        let x = ComplexVector::new(vec![c(1.0, -2.0), c(0.5, 3.0), c(0.0, 1.0)]).unwrap();
        assert_eq!(matvec(&ComplexMatrix::identity(3), &x).unwrap(), x);

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_matrix(&mut rng, 3, 4);
        assert_eq!(conj_transpose(&conj_transpose(&a)), a);
        assert!(matches!(matmul(&a, &a), Err(Error::Dimension(_))));
        assert!(matches!(matvec(&a, &x.segment(0, 2).unwrap()), Err(Error::Dimension(_))));
    }

    #[test]
    fn constructors_reject_bad_input() {
        assert!(ComplexVector::new(vec![]).is_err());
        assert!(ComplexVector::new(vec![c(f64::NAN, 0.0)]).is_err());
        assert!(ComplexMatrix::new(2, 2, vec![c(0.0, 0.0); 3]).is_err());
        assert!(ComplexMatrix::new(1, 1, vec![c(f64::INFINITY, 0.0)]).is_err());
        assert!(ComplexMatrix::new(0, 1, vec![]).is_err());
    }

    #[test]
    fn real_symmetric_eigen_small() {
        // [[2,1],[1,2]] → 3, 1
        let (vals, vecs) = real_symmetric_eigen(&[2.0, 1.0, 1.0, 2.0], 2).unwrap();
        assert!((vals[0] - 3.0).abs() < 1e-14 && (vals[1] - 1.0).abs() < 1e-14);
        let v0 = &vecs[0];
        assert!((v0[0].abs() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-14);
        assert!((v0[0] - v0[1]).abs() < 1e-14);
    }
}
