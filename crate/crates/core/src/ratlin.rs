//! Exact dense linear algebra over arbitrary-precision rationals.
//!
//! Elimination runs fraction-free on integer rows (Gauss–Jordan with
//! Bareiss divisions) and converts back to reduced rationals only when the
//! result is emitted. Pivots are always the first nonzero entry in column
//! order, so outputs are deterministic.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qpoly::QPoly;

/// Reduced rational with positive denominator.
pub type Rat = BigRational;

/// Coordinate vector of rationals.
pub type QVector = Vec<Rat>;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero_vec(n: usize) -> QVector {
    vec![Rat::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> QVector {
    let mut v = zero_vec(n);
    v[i] = Rat::one();
    v
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn vec_add(a: &[Rat], b: &[Rat]) -> QVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rat], b: &[Rat]) -> QVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Rat], c: &Rat) -> QVector {
    a.iter().map(|x| x * c).collect()
}

/// `acc += c * v`
pub fn vec_axpy(acc: &mut [Rat], c: &Rat, v: &[Rat]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

/// Least common multiple of all denominators.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn scalar(n: usize, c: &Rat) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rat>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(QMatrix { rows, cols, data })
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are the given vectors, all of length `height`.
    pub fn from_columns(height: usize, columns: &[QVector]) -> Self {
        let mut m = Self::zeros(height, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), height, "column length");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
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

    pub fn entries(&self) -> &[Rat] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> QVector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<QVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<QVector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn trace(&self) -> Rat {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                let orow = other.row(k);
                let start = i * out.cols;
                for (j, b) in orow.iter().enumerate() {
                    if !b.is_zero() {
                        out.data[start + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<QVector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix applied to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    fn check_same_shape(&self, other: &QMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &QMatrix) -> Result<QMatrix> {
        self.check_same_shape(other)?;
        Ok(QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: vec_add(&self.data, &other.data),
        })
    }

    pub fn sub(&self, other: &QMatrix) -> Result<QMatrix> {
        self.check_same_shape(other)?;
        Ok(QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: vec_sub(&self.data, &other.data),
        })
    }

    pub fn scale(&self, c: &Rat) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: vec_scale(&self.data, c),
        }
    }

    /// `self += c * other`
    pub fn axpy(&mut self, c: &Rat, other: &QMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        vec_axpy(&mut self.data, c, &other.data);
    }

    pub fn hstack(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(QMatrix {
            rows: self.rows,
            cols,
            data,
        })
    }

    pub fn vstack(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "vstack of {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(QMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn block_diagonal(blocks: &[QMatrix]) -> QMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &QMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> QMatrix {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = self[(r0 + i, c0 + j)].clone();
            }
        }
        m
    }

    pub fn select_columns(&self, idx: &[usize]) -> QMatrix {
        let mut m = Self::zeros(self.rows, idx.len());
        for (jj, &j) in idx.iter().enumerate() {
            for i in 0..self.rows {
                m[(i, jj)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn pow(&self, k: u32) -> Result<QMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Commutator `self·other − other·self`.
    pub fn bracket(&self, other: &QMatrix) -> Result<QMatrix> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn denominator_lcm(&self) -> BigInt {
        denominator_lcm(&self.data)
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QMatrix{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

/// Plain-text fraction grid, one row per line.
impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(0);
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>width$}", cells[i * self.cols + j]))
                .collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Elimination

/// Result of reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: QMatrix,
    pub pivot_cols: Vec<usize>,
    pub rank: usize,
}

fn integer_rows(m: &QMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows)
        .map(|i| {
            let row = m.row(i);
            let l = denominator_lcm(row);
            row.iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect()
        })
        .collect()
}

/// Fraction-free Gauss–Jordan on integer rows. Pivots are searched only in
/// columns `< pivot_limit`, but every column is updated. On return each pivot
/// entry equals the returned divisor and the pivot rows come first.
fn fraction_free_gauss_jordan(
    rows: &mut [Vec<BigInt>],
    pivot_limit: usize,
) -> (Vec<usize>, BigInt) {
    let nrows = rows.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..pivot_limit {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(p, r);
        let piv = rows[r][c].clone();
        let (head, tail) = rows.split_at_mut(r);
        let (prow, tail) = tail.split_first_mut().expect("pivot row");
        for row in head.iter_mut().chain(tail.iter_mut()) {
            let a = row[c].clone();
            for (x, y) in row.iter_mut().zip(prow.iter()) {
                if x.is_zero() && (a.is_zero() || y.is_zero()) {
                    continue;
                }
                let mut v = &piv * &*x;
                if !a.is_zero() && !y.is_zero() {
                    v -= &a * y;
                }
                debug_assert!((&v % &prev).is_zero(), "Bareiss division must be exact");
                *x = v / &prev;
            }
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    (pivots, prev)
}

fn rref_limited(m: &QMatrix, pivot_limit: usize) -> Rref {
    let mut rows = integer_rows(m);
    let (pivots, d) = fraction_free_gauss_jordan(&mut rows, pivot_limit);
    let rank = pivots.len();
    let mut reduced = QMatrix::zeros(m.rows, m.cols);
    for (i, row) in rows.iter().enumerate().take(rank) {
        for (j, x) in row.iter().enumerate() {
            if !x.is_zero() {
                reduced[(i, j)] = Rat::new(x.clone(), d.clone());
            }
        }
    }
    // rows below the rank are zero in the first `pivot_limit` columns but may
    // carry data in the augmented part; keep them (scaled) for callers that
    // need the transform.
    for (i, row) in rows.iter().enumerate().skip(rank) {
        for (j, x) in row.iter().enumerate() {
            if !x.is_zero() {
                reduced[(i, j)] = Rat::new(x.clone(), d.clone());
            }
        }
    }
    Rref {
        reduced,
        pivot_cols: pivots,
        rank,
    }
}

/// Reduced row echelon form.
pub fn rref(m: &QMatrix) -> Rref {
    rref_limited(m, m.cols)
}

/// Reduced row echelon form together with an invertible `e` such that
/// `e · m = reduced`.
pub fn rref_with_transform(m: &QMatrix) -> (Rref, QMatrix) {
    let aug = m
        .hstack(&QMatrix::identity(m.rows))
        .expect("identity has matching rows");
    let full = rref_limited(&aug, m.cols);
    let reduced = full.reduced.block(0, 0, m.rows, m.cols);
    let transform = full.reduced.block(0, m.cols, m.rows, m.rows);
    (
        Rref {
            reduced,
            pivot_cols: full.pivot_cols,
            rank: full.rank,
        },
        transform,
    )
}

pub fn rank(m: &QMatrix) -> usize {
    rref(m).rank
}

/// Basis of the right kernel, as columns.
pub fn kernel_basis(m: &QMatrix) -> QMatrix {
    let r = rref(m);
    let n = m.cols;
    let mut is_pivot = vec![false; n];
    for &p in &r.pivot_cols {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
    let mut k = QMatrix::zeros(n, free.len());
    for (col, &f) in free.iter().enumerate() {
        k[(f, col)] = Rat::one();
        for (i, &p) in r.pivot_cols.iter().enumerate() {
            let x = &r.reduced[(i, f)];
            if !x.is_zero() {
                k[(p, col)] = -x.clone();
            }
        }
    }
    k
}

/// Solve `a · x = b`; `Ok(None)` when the system is inconsistent.
pub fn solve(a: &QMatrix, b: &[Rat]) -> Result<Option<QVector>> {
    if a.rows != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} equations but right-hand side of length {}",
            a.rows,
            b.len()
        )));
    }
    let aug = a.hstack(&QMatrix::from_columns(a.rows, &[b.to_vec()]))?;
    let r = rref_limited(&aug, a.cols);
    let last = a.cols;
    if (r.rank..a.rows).any(|i| !r.reduced[(i, last)].is_zero()) {
        return Ok(None);
    }
    let mut x = zero_vec(a.cols);
    for (i, &p) in r.pivot_cols.iter().enumerate() {
        x[p] = r.reduced[(i, last)].clone();
    }
    Ok(Some(x))
}

/// Solve `a · X = b` column by column; `Ok(None)` if any column is inconsistent.
pub fn solve_matrix(a: &QMatrix, b: &QMatrix) -> Result<Option<QMatrix>> {
    if a.rows != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "{} equations but right-hand side with {} rows",
            a.rows, b.rows
        )));
    }
    let aug = a.hstack(b)?;
    let r = rref_limited(&aug, a.cols);
    for i in r.rank..a.rows {
        if (0..b.cols).any(|j| !r.reduced[(i, a.cols + j)].is_zero()) {
            return Ok(None);
        }
    }
    let mut x = QMatrix::zeros(a.cols, b.cols);
    for (i, &p) in r.pivot_cols.iter().enumerate() {
        for j in 0..b.cols {
            x[(p, j)] = r.reduced[(i, a.cols + j)].clone();
        }
    }
    Ok(Some(x))
}

/// Inverse; `Ok(None)` when singular.
pub fn inverse(m: &QMatrix) -> Result<Option<QMatrix>> {
    m.require_square()?;
    let n = m.rows;
    let aug = m.hstack(&QMatrix::identity(n))?;
    let r = rref_limited(&aug, n);
    if r.rank < n {
        return Ok(None);
    }
    Ok(Some(r.reduced.block(0, n, n, n)))
}

/// Columns of `m` forming a basis of its column space (the pivot columns).
pub fn column_space(m: &QMatrix) -> QMatrix {
    let r = rref(m);
    m.select_columns(&r.pivot_cols)
}

/// Canonical basis of the row space: the nonzero rows of the rref.
pub fn row_space_canonical(m: &QMatrix) -> (QMatrix, Vec<usize>) {
    let r = rref(m);
    let basis = r.reduced.block(0, 0, r.rank, m.cols);
    (basis, r.pivot_cols)
}

// ---------------------------------------------------------------------------
// Polynomials of matrices

/// Characteristic polynomial `det(t·Id − m)` by the division-free Berkowitz
/// recurrence over the integers, after clearing denominators.
pub fn charpoly(m: &QMatrix) -> Result<QPoly> {
    m.require_square()?;
    let n = m.rows;
    let d = m.denominator_lcm();
    let a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| x.numer() * (&d / x.denom()))
                .collect()
        })
        .collect();
    let desc = berkowitz(&a);
    // det(t - A/d) = d^{-n} det(d t - A): coefficient of t^i is a_i / d^{n-i}
    let mut coeffs = vec![Rat::zero(); n + 1];
    let mut dpow = BigInt::one();
    for i in (0..=n).rev() {
        coeffs[i] = Rat::new(desc[n - i].clone(), dpow.clone());
        dpow *= &d;
    }
    Ok(QPoly::new(coeffs))
}

/// Coefficients of `det(t·Id − a)` in descending order.
fn berkowitz(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = a.len();
    let mut v = vec![BigInt::one()];
    for r in 0..n {
        // leading (r+1)x(r+1) block: [[A_r, C], [R, a_rr]]
        let mut t = Vec::with_capacity(r + 2);
        t.push(BigInt::one());
        t.push(-a[r][r].clone());
        let mut x: Vec<BigInt> = (0..r).map(|i| a[i][r].clone()).collect();
        for _ in 0..r {
            let rc: BigInt = (0..r).map(|j| &a[r][j] * &x[j]).sum();
            t.push(-rc);
            x = (0..r)
                .map(|i| (0..r).map(|j| &a[i][j] * &x[j]).sum())
                .collect();
        }
        let w: Vec<BigInt> = (0..r + 2)
            .map(|k| {
                (0..=k.min(r))
                    .map(|j| &t[k - j] * &v[j])
                    .sum()
            })
            .collect();
        v = w;
    }
    v
}

/// Evaluate a polynomial at a square matrix (Horner).
pub fn eval_poly_at_matrix(p: &QPoly, m: &QMatrix) -> Result<QMatrix> {
    m.require_square()?;
    let n = m.rows;
    let mut acc = QMatrix::zeros(n, n);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(m)?;
        for i in 0..n {
            acc[(i, i)] += c;
        }
    }
    Ok(acc)
}

/// Minimal polynomial of `v` under repeated application of `apply`
/// (the monic generator of the annihilator of `v` in `Q[t]`).
pub fn krylov_minpoly(v: &[Rat], apply: impl Fn(&[Rat]) -> QVector) -> QPoly {
    let n = v.len();
    let mut krylov: Vec<QVector> = Vec::new();
    let mut basis = EchelonBasis::new(n);
    let mut cur = v.to_vec();
    loop {
        if !basis.insert(&cur) {
            break;
        }
        let next = apply(&cur);
        krylov.push(cur);
        cur = next;
    }
    if krylov.is_empty() {
        return QPoly::one();
    }
    // cur = sum c_i K_i
    let k = QMatrix::from_columns(n, &krylov);
    let c = solve(&k, &cur)
        .expect("shapes agree")
        .expect("dependent Krylov vector lies in the span");
    let mut coeffs: Vec<Rat> = c.into_iter().map(|x| -x).collect();
    coeffs.push(Rat::one());
    QPoly::new(coeffs)
}

/// Minimal polynomial of a square matrix: the lcm of the local minimal
/// polynomials of the standard basis vectors.
pub fn minpoly_matrix(m: &QMatrix) -> Result<QPoly> {
    m.require_square()?;
    let n = m.rows;
    let mut acc = QPoly::one();
    for j in 0..n {
        let e = unit_vec(n, j);
        if !acc.is_one() && is_zero_vec(&apply_poly_to_vector(&acc, m, &e)) {
            continue;
        }
        let local = krylov_minpoly(&e, |x| m.mul_vec(x).expect("square"));
        acc = acc.lcm(&local);
    }
    Ok(acc)
}

/// `p(m) · v` by Horner without forming `p(m)`.
pub fn apply_poly_to_vector(p: &QPoly, m: &QMatrix, v: &[Rat]) -> QVector {
    let mut acc = zero_vec(v.len());
    for c in p.coeffs().iter().rev() {
        acc = m.mul_vec(&acc).expect("square");
        vec_axpy(&mut acc, c, v);
    }
    acc
}

/// Basis (as columns) of `ker(m − n·Id)`.
pub fn integer_eigenspace(m: &QMatrix, n: i64) -> Result<QMatrix> {
    m.require_square()?;
    let shifted = m.sub(&QMatrix::scalar(m.rows, &rat(n)))?;
    Ok(kernel_basis(&shifted))
}

// ---------------------------------------------------------------------------

/// Incrementally maintained echelon basis of a subspace of `Q^n`, used for
/// span membership and independence tests.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    dim: usize,
    rows: Vec<(usize, QVector)>,
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        EchelonBasis {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Residual of `v` after elimination against the stored rows.
    pub fn reduce(&self, v: &[Rat]) -> QVector {
        assert_eq!(v.len(), self.dim);
        let mut r = v.to_vec();
        for (p, row) in &self.rows {
            if !r[*p].is_zero() {
                let c = r[*p].clone();
                for (x, y) in r.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x -= &c * y;
                    }
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Adds `v`; returns `false` when it was already in the span.
    pub fn insert(&mut self, v: &[Rat]) -> bool {
        let r = self.reduce(v);
        match r.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(p) => {
                let inv = r[p].recip();
                let row = vec_scale(&r, &inv);
                self.rows.push((p, row));
                true
            }
        }
    }
}

/// True when `v` has only integer entries.
pub fn is_integral_vec(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_integer())
}
