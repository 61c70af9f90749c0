//! Deterministic exact linear algebra over ℚ(i).
//!
//! Everything downstream — kernels, cohomology dimensions, spectral pages,
//! the ∂̄-potential solves of the deformation pipeline — reduces to
//! [`rref_solve`]. Pivoting is lexicographic (columns left to right, rows top
//! to bottom, first nonzero entry wins); there are no magnitude heuristics,
//! so pivot sets, kernel bases and particular solutions are identical across
//! runs and platforms.

use crate::scalars::Gq;
use std::fmt;

/// Dense matrix of Gaussian rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Gq>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Gq::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for k in 0..n {
            m[(k, k)] = Gq::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Gq>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        assert!(rows.iter().all(|v| v.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Column-major construction: `cols[j]` becomes the j-th column.
    pub fn from_cols(ambient: usize, cols: &[Vec<Gq>]) -> Self {
        let mut m = Matrix::zero(ambient, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), ambient, "column length mismatch");
            for i in 0..ambient {
                m[(i, j)] = col[i].clone();
            }
        }
        m
    }

    pub fn row(&self, i: usize) -> &[Gq] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Gq> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    /// Matrix–vector product.
    pub fn apply(&self, v: &[Gq]) -> Vec<Gq> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Gq::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        acc += &(&self[(i, j)] * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    /// Matrix product `self · other`.
    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    if other[(k, j)].is_zero() {
                        continue;
                    }
                    let p = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += &p;
                }
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Gq;
    fn index(&self, (i, j): (usize, usize)) -> &Gq {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Gq {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_text()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Output of [`rref_solve`].
#[derive(Clone, Debug)]
pub struct SolveResult {
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
    /// Present iff a right-hand side was given and the system is consistent.
    /// Free variables are set to 0.
    pub particular: Option<Vec<Gq>>,
    /// Standard free-variable kernel basis of the RREF, one vector per free
    /// column, in ascending free-column order.
    pub kernel: Vec<Vec<Gq>>,
}

/// Reduced row echelon solve of `A x = b` (or kernel/rank only when `b` is absent).
///
/// Deterministic by construction; an inconsistent system yields
/// `particular: None`, never an error.
pub fn rref_solve(a: &Matrix, b: Option<&[Gq]>) -> SolveResult {
    let rows = a.rows;
    let cols = a.cols;
    if let Some(b) = b {
        assert_eq!(b.len(), rows, "rhs length mismatch");
    }
    // augmented working copy
    let aug = b.is_some();
    let wcols = cols + usize::from(aug);
    let mut w = vec![vec![Gq::zero(); wcols]; rows];
    for i in 0..rows {
        for j in 0..cols {
            w[i][j] = a[(i, j)].clone();
        }
        if let Some(b) = b {
            w[i][cols] = b[i].clone();
        }
    }

    let mut pivot_cols = Vec::new();
    let mut pr = 0usize; // next pivot row
    for pc in 0..cols {
        let Some(sel) = (pr..rows).find(|&i| !w[i][pc].is_zero()) else { continue };
        w.swap(pr, sel);
        let inv = w[pr][pc].inv();
        for j in pc..wcols {
            if !w[pr][j].is_zero() {
                w[pr][j] = &w[pr][j] * &inv;
            }
        }
        for i in 0..rows {
            if i != pr && !w[i][pc].is_zero() {
                let f = w[i][pc].clone();
                for j in pc..wcols {
                    if !w[pr][j].is_zero() {
                        let d = &f * &w[pr][j];
                        w[i][j] = &w[i][j] - &d;
                    }
                }
            }
        }
        pivot_cols.push(pc);
        pr += 1;
        if pr == rows {
            break;
        }
    }
    let rank = pivot_cols.len();

    let particular = if aug {
        let consistent = (rank..rows).all(|i| w[i][cols].is_zero());
        if consistent {
            let mut x = vec![Gq::zero(); cols];
            for (r, &pc) in pivot_cols.iter().enumerate() {
                x[pc] = w[r][cols].clone();
            }
            Some(x)
        } else {
            None
        }
    } else {
        None
    };

    let mut kernel = Vec::new();
    let mut is_pivot = vec![false; cols];
    for &pc in &pivot_cols {
        is_pivot[pc] = true;
    }
    for fc in 0..cols {
        if is_pivot[fc] {
            continue;
        }
        let mut v = vec![Gq::zero(); cols];
        v[fc] = Gq::one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -&w[r][fc];
        }
        kernel.push(v);
    }

    SolveResult { rank, pivot_cols, particular, kernel }
}

/// A subspace of ℚ(i)^ambient held as a canonical RREF row basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub ambient: usize,
    /// RREF rows, each with leading coefficient 1; empty for the zero space.
    pub basis: Vec<Vec<Gq>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let id = Matrix::identity(ambient);
        Subspace { ambient, basis: (0..ambient).map(|i| id.row(i).to_vec()).collect() }
    }

    /// Canonicalise a spanning set.
    pub fn from_span(ambient: usize, vectors: &[Vec<Gq>]) -> Self {
        if vectors.is_empty() {
            return Subspace::zero(ambient);
        }
        let m = Matrix::from_rows(vectors.to_vec());
        assert_eq!(m.cols, ambient, "span vectors have wrong length");
        let mut w = m;
        let res = rref_rows(&mut w);
        Subspace { ambient, basis: res }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Canonical remainder of `v` modulo this subspace (zero iff contained).
    pub fn reduce(&self, v: &[Gq]) -> Vec<Gq> {
        assert_eq!(v.len(), self.ambient);
        let mut r = v.to_vec();
        for row in &self.basis {
            let lead = row.iter().position(|x| !x.is_zero()).expect("nonzero basis row");
            if !r[lead].is_zero() {
                let f = r[lead].clone();
                for j in lead..self.ambient {
                    if !row[j].is_zero() {
                        let d = &f * &row[j];
                        r[j] = &r[j] - &d;
                    }
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Gq]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Sum of subspaces.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::from_span(self.ambient, &all)
    }

    /// Intersection, via the kernel of the concatenated coefficient matrix.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(self.ambient);
        }
        // x = U^T s = W^T t  ⇔  [U^T | -W^T](s,t) = 0
        let cols = self.dim() + other.dim();
        let mut m = Matrix::zero(self.ambient, cols);
        for (j, u) in self.basis.iter().enumerate() {
            for i in 0..self.ambient {
                m[(i, j)] = u[i].clone();
            }
        }
        for (j, w) in other.basis.iter().enumerate() {
            for i in 0..self.ambient {
                m[(i, self.dim() + j)] = -&w[i];
            }
        }
        let ker = rref_solve(&m, None).kernel;
        let vectors: Vec<Vec<Gq>> = ker
            .iter()
            .map(|k| {
                let mut x = vec![Gq::zero(); self.ambient];
                for (j, u) in self.basis.iter().enumerate() {
                    if !k[j].is_zero() {
                        for i in 0..self.ambient {
                            if !u[i].is_zero() {
                                let d = &k[j] * &u[i];
                                x[i] = &x[i] + &d;
                            }
                        }
                    }
                }
                x
            })
            .collect();
        Subspace::from_span(self.ambient, &vectors)
    }

    /// Image of this subspace under a linear map (columns of `m` index the
    /// source coordinates).
    pub fn image_under(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols, self.ambient);
        let vectors: Vec<Vec<Gq>> = self.basis.iter().map(|v| m.apply(v)).collect();
        Subspace::from_span(m.rows, &vectors)
    }

    /// Preimage {x : m·x ∈ target}.
    pub fn preimage_under(m: &Matrix, target: &Subspace) -> Subspace {
        assert_eq!(m.rows, target.ambient);
        let src = m.cols;
        if target.dim() == 0 {
            let ker = rref_solve(m, None).kernel;
            return Subspace::from_span(src, &ker);
        }
        // m x = W^T t  ⇔  [m | -W^T](x, t) = 0, keep the x block of the kernel
        let cols = src + target.dim();
        let mut big = Matrix::zero(m.rows, cols);
        for i in 0..m.rows {
            for j in 0..src {
                big[(i, j)] = m[(i, j)].clone();
            }
            for (j, w) in target.basis.iter().enumerate() {
                big[(i, src + j)] = -&w[i];
            }
        }
        let ker = rref_solve(&big, None).kernel;
        let vectors: Vec<Vec<Gq>> = ker.iter().map(|k| k[..src].to_vec()).collect();
        Subspace::from_span(src, &vectors)
    }

    /// Deterministic representatives of a complement of `self` inside `total`
    /// (i.e. a basis of total/self), each reduced and with leading coefficient 1.
    pub fn complement_reps_in(&self, total: &Subspace) -> Vec<Vec<Gq>> {
        assert_eq!(self.ambient, total.ambient);
        let mut acc = self.clone();
        let mut reps = Vec::new();
        for v in &total.basis {
            let r = acc.reduce(v);
            if let Some(lead) = r.iter().position(|x| !x.is_zero()) {
                let inv = r[lead].inv();
                let r: Vec<Gq> = r.iter().map(|x| x * &inv).collect();
                acc = acc.sum(&Subspace { ambient: self.ambient, basis: vec![r.clone()] });
                reps.push(r);
            }
        }
        reps
    }
}

/// Image (column space) of a matrix as a canonical subspace of the target.
pub fn column_space(m: &Matrix) -> Subspace {
    let cols: Vec<Vec<Gq>> = (0..m.cols).map(|j| m.col(j)).collect();
    Subspace::from_span(m.rows, &cols)
}

/// Kernel of a matrix as a canonical subspace of the source.
pub fn kernel_space(m: &Matrix) -> Subspace {
    Subspace::from_span(m.cols, &rref_solve(m, None).kernel)
}

/// Invert a square matrix; `None` when singular.
pub fn invert(m: &Matrix) -> Option<Matrix> {
    assert_eq!(m.rows, m.cols, "invert needs a square matrix");
    let n = m.rows;
    let mut w = Matrix::zero(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            w[(i, j)] = m[(i, j)].clone();
        }
        w[(i, n + i)] = Gq::one();
    }
    let rows = rref_rows_full(&mut w);
    if rows < n {
        return None;
    }
    let mut out = Matrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = w[(i, n + j)].clone();
        }
    }
    Some(out)
}

/// In-place RREF over the leading `n` columns only; returns the rank.
fn rref_rows_full(w: &mut Matrix) -> usize {
    let rows = w.rows;
    let lead_cols = w.cols / 2;
    let mut pr = 0;
    for pc in 0..lead_cols {
        let Some(sel) = (pr..rows).find(|&i| !w[(i, pc)].is_zero()) else { continue };
        for j in 0..w.cols {
            let t = w[(pr, j)].clone();
            w[(pr, j)] = w[(sel, j)].clone();
            w[(sel, j)] = t;
        }
        let inv = w[(pr, pc)].inv();
        for j in 0..w.cols {
            if !w[(pr, j)].is_zero() {
                w[(pr, j)] = &w[(pr, j)] * &inv;
            }
        }
        for i in 0..rows {
            if i != pr && !w[(i, pc)].is_zero() {
                let f = w[(i, pc)].clone();
                for j in 0..w.cols {
                    if !w[(pr, j)].is_zero() {
                        let d = &f * &w[(pr, j)];
                        w[(i, j)] = &w[(i, j)] - &d;
                    }
                }
            }
        }
        pr += 1;
        if pr == rows {
            break;
        }
    }
    pr
}

/// RREF of the rows of `m`; returns the nonzero rows in canonical order.
fn rref_rows(m: &mut Matrix) -> Vec<Vec<Gq>> {
    let rows = m.rows;
    let cols = m.cols;
    let mut pr = 0;
    for pc in 0..cols {
        let Some(sel) = (pr..rows).find(|&i| !m[(i, pc)].is_zero()) else { continue };
        for j in 0..cols {
            let t = m[(pr, j)].clone();
            m[(pr, j)] = m[(sel, j)].clone();
            m[(sel, j)] = t;
        }
        let inv = m[(pr, pc)].inv();
        for j in pc..cols {
            if !m[(pr, j)].is_zero() {
                m[(pr, j)] = &m[(pr, j)] * &inv;
            }
        }
        for i in 0..rows {
            if i != pr && !m[(i, pc)].is_zero() {
                let f = m[(i, pc)].clone();
                for j in pc..cols {
                    if !m[(pr, j)].is_zero() {
                        let d = &f * &m[(pr, j)];
                        m[(i, j)] = &m[(i, j)] - &d;
                    }
                }
            }
        }
        pr += 1;
        if pr == rows {
            break;
        }
    }
    (0..pr).map(|i| m.row(i).to_vec()).collect()
}
