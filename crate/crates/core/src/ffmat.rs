//! Exact dense linear algebra over a prime field.
//!
//! Everything else in the crate is expressed through [`FpMatrix`]: action
//! matrices, module maps, projections onto quotients. Matrices are stored
//! row-major with every entry reduced into `[0, p)`. Vectors are plain
//! `Vec<u32>` slices of residues.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par::{self, Exec};

/// The prime field of order `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Field {
    p: u32,
}

impl Field {
    /// Entries are multiplied in `u64` and accumulated without intermediate
    /// reduction, which is safe for `p < 2^16`.
    pub const MAX_P: u64 = 1 << 16;

    pub fn new(p: u64) -> Result<Self> {
        if !(2..Self::MAX_P).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field { p: p as u32 })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    /// All residues `0..p`.
    pub fn elements(self) -> impl Iterator<Item = u32> {
        0..self.p
    }

    /// `y += a * x`
    pub fn axpy(self, y: &mut [u32], a: u32, x: &[u32]) {
        debug_assert_eq!(y.len(), x.len());
        if a == 0 {
            return;
        }
        let p = self.p as u64;
        for (yi, &xi) in y.iter_mut().zip(x) {
            *yi = ((*yi as u64 + a as u64 * xi as u64) % p) as u32;
        }
    }

    pub fn scale(self, v: &mut [u32], a: u32) {
        for x in v.iter_mut() {
            *x = self.mul(*x, a);
        }
    }

    pub fn add_vec(self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| self.add(x, y)).collect()
    }

    pub fn sub_vec(self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| self.sub(x, y)).collect()
    }

    pub fn dot(self, a: &[u32], b: &[u32]) -> u32 {
        let acc: u64 = a
            .iter()
            .zip(b)
            .map(|(&x, &y)| x as u64 * y as u64 % self.p as u64)
            .sum();
        (acc % self.p as u64) as u32
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn is_zero_vec(v: &[u32]) -> bool {
    v.iter().all(|&x| x == 0)
}

pub fn unit_vec(len: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; len];
    v[i] = 1;
    v
}

/// Dense matrix over `F_p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix(p={}, {}x{})", self.field.p, self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: FpMatrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl FpMatrix {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        if let Some(&bad) = data.iter().find(|&&x| x >= field.p) {
            return Err(Error::Unreduced {
                value: bad as u64,
                p: field.p,
            });
        }
        Ok(FpMatrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub(crate) fn from_raw(field: Field, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        FpMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Self::from_raw(field, rows, cols, vec![0; rows * cols])
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn scalar(field: Field, n: usize, c: u32) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c % field.p;
        }
        m
    }

    /// Build from signed integer rows, reducing every entry.
    pub fn from_rows(field: Field, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| field.reduce(x)))
            .collect();
        Ok(Self::from_raw(field, r, c, data))
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, f: impl Fn(usize, usize) -> u32) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j) % field.p);
            }
        }
        Self::from_raw(field, rows, cols, data)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<u32>]) -> Self {
        let cols = columns.len();
        let mut m = Self::zeros(field, rows, cols);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, &x) in col.iter().enumerate() {
                m.data[i * cols + j] = x;
            }
        }
        m
    }

    pub fn column_vector(field: Field, v: &[u32]) -> Self {
        Self::from_raw(field, v.len(), 1, v.to_vec())
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn data(&self) -> &[u32] {
        &self.data
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.field.p;
    }
    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = self.field;
        let data = self.data.iter().map(|&x| f.mul(x, c)).collect();
        Self::from_raw(f, self.rows, self.cols, data)
    }

    pub fn add_scaled(&mut self, c: u32, other: &FpMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.field.axpy(&mut self.data, c, &other.data);
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "mul_vec length");
        let p = self.field.p as u64;
        (0..self.rows)
            .map(|i| {
                let acc: u64 = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .fold(0u64, |s, t| {
                        let s = s + t;
                        if s >= 1 << 62 {
                            s % p
                        } else {
                            s
                        }
                    });
                (acc % p) as u32
            })
            .collect()
    }

    /// Matrix product with an explicit execution mode.
    pub fn mul_exec(&self, other: &FpMatrix, exec: Exec) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        assert_eq!(self.field, other.field);
        let (n, m) = (self.rows, other.cols);
        let p = self.field.p as u64;
        let mut out = vec![0u32; n * m];
        par::for_each_row(exec, &mut out, m, |i, out_row| {
            let mut acc = vec![0u64; m];
            let mut pending = 0usize;
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let b_row = other.row(k);
                for (s, &b) in acc.iter_mut().zip(b_row) {
                    *s += a as u64 * b as u64;
                }
                pending += 1;
                if pending == 1 << 30 {
                    acc.iter_mut().for_each(|s| *s %= p);
                    pending = 0;
                }
            }
            for (o, s) in out_row.iter_mut().zip(acc) {
                *o = (s % p) as u32;
            }
        });
        Self::from_raw(self.field, n, m, out)
    }

    pub fn pow(&self, mut k: u64) -> FpMatrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.field, self.rows);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Reduced row echelon form with pivot columns in increasing order.
    pub fn rref(&self) -> Rref {
        self.rref_exec(par::auto(self.rows * self.cols * self.cols.min(self.rows)))
    }

    pub fn rref_exec(&self, exec: Exec) -> Rref {
        let f = self.field;
        let p = f.p as u64;
        let (rows, cols) = (self.rows, self.cols);
        let mut data = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| data[i * cols + c] != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..cols {
                    data.swap(piv * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(data[r * cols + c]);
            for j in c..cols {
                data[r * cols + j] = f.mul(data[r * cols + j], inv);
            }
            let pivot_row: Vec<u32> = data[r * cols..(r + 1) * cols].to_vec();
            let elim = |i: usize, row: &mut [u32]| {
                if i == r {
                    return;
                }
                let factor = row[c];
                if factor == 0 {
                    return;
                }
                let neg = p - factor as u64;
                for j in c..cols {
                    row[j] = ((row[j] as u64 + neg * pivot_row[j] as u64) % p) as u32;
                }
            };
            let work = rows * (cols - c);
            let mode = if exec.is_parallel() && work >= par::PAR_THRESHOLD {
                Exec::Parallel
            } else {
                Exec::Sequential
            };
            par::for_each_row(mode, &mut data, cols, elim);
            pivots.push(c);
            r += 1;
        }
        Rref {
            reduced: Self::from_raw(f, rows, cols, data),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Basis of the right null space, as the columns of the returned matrix.
    pub fn kernel_basis(&self) -> FpMatrix {
        let vecs = self.kernel_vectors();
        Self::from_columns(self.field, self.cols, &vecs)
    }

    pub fn kernel_vectors(&self) -> Vec<Vec<u32>> {
        let f = self.field;
        let Rref { reduced, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0u32; self.cols];
                v[free] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(reduced.get(i, free));
                }
                v
            })
            .collect()
    }

    pub fn column_space(&self) -> Subspace {
        Subspace::from_vectors(self.field, self.rows, self.columns())
    }

    /// Some `x` with `self * x = b`, if one exists.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Self::column_vector(self.field, b));
        let Rref { reduced, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = reduced.get(i, self.cols);
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(self.field, n));
        let Rref { reduced, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(self.field, n, n, |i, j| reduced.get(i, n + j)))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Kronecker product, row-major block convention:
    /// `(A ⊗ B)[i*rB + k, j*cB + l] = A[i,j] * B[k,l]`.
    pub fn kronecker(&self, other: &FpMatrix) -> FpMatrix {
        let f = self.field;
        let (ra, ca, rb, cb) = (self.rows, self.cols, other.rows, other.cols);
        let mut out = Self::zeros(f, ra * rb, ca * cb);
        let width = ca * cb;
        for i in 0..ra {
            for j in 0..ca {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..rb {
                    let base = (i * rb + k) * width + j * cb;
                    for l in 0..cb {
                        out.data[base + l] = f.mul(a, other.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn hstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.rows, other.rows, "hstack rows");
        Self::from_fn(self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        })
    }

    pub fn vstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.cols, "vstack cols");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Self::from_raw(self.field, self.rows + other.rows, self.cols, data)
    }

    pub fn block_diagonal(field: Field, blocks: &[&FpMatrix]) -> FpMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &FpMatrix) {
        for i in 0..block.rows {
            let dst = (r0 + i) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(i));
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> FpMatrix {
        Self::from_fn(self.field, rows, cols, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn select_columns(&self, idx: &[usize]) -> FpMatrix {
        Self::from_fn(self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]))
    }

    pub fn select_rows(&self, idx: &[usize]) -> FpMatrix {
        Self::from_fn(self.field, idx.len(), self.cols, |i, j| self.get(idx[i], j))
    }

    /// Is `X^k = 0` for some `k <= n`?
    pub fn is_nilpotent(&self) -> bool {
        self.is_square() && self.pow(self.rows.max(1) as u64).is_zero()
    }
}

impl Mul for &FpMatrix {
    type Output = FpMatrix;
    fn mul(self, rhs: &FpMatrix) -> FpMatrix {
        let work = self.rows * self.cols * rhs.cols;
        self.mul_exec(rhs, par::auto(work))
    }
}

impl Add for &FpMatrix {
    type Output = FpMatrix;
    fn add(self, rhs: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add shape");
        let data = self.field.add_vec(&self.data, &rhs.data);
        FpMatrix::from_raw(self.field, self.rows, self.cols, data)
    }
}

impl Sub for &FpMatrix {
    type Output = FpMatrix;
    fn sub(self, rhs: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub shape");
        let data = self.field.sub_vec(&self.data, &rhs.data);
        FpMatrix::from_raw(self.field, self.rows, self.cols, data)
    }
}

impl Neg for &FpMatrix {
    type Output = FpMatrix;
    fn neg(self) -> FpMatrix {
        let f = self.field;
        let data = self.data.iter().map(|&x| f.neg(x)).collect();
        FpMatrix::from_raw(f, self.rows, self.cols, data)
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    p: u64,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl Serialize for FpMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            p: self.field.p as u64,
            rows: self.rows,
            cols: self.cols,
            entries: self.data.iter().map(|&x| x as u64).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FpMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = MatrixJson::deserialize(d)?;
        let field = Field::new(raw.p).map_err(D::Error::custom)?;
        if let Some(&bad) = raw.entries.iter().find(|&&x| x >= raw.p) {
            return Err(D::Error::custom(Error::Unreduced {
                value: bad,
                p: field.p,
            }));
        }
        let data = raw.entries.into_iter().map(|x| x as u32).collect();
        FpMatrix::new(field, raw.rows, raw.cols, data).map_err(D::Error::custom)
    }
}

/// A subspace of `F_p^n` kept as a fully reduced row-echelon basis.
///
/// Rows are sorted by pivot, each row has a 1 at its pivot and zeros at every
/// other pivot, so coordinates of a member are read off at the pivots and the
/// non-pivot positions give canonical quotient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors<I>(field: Field, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        let vectors: Vec<Vec<u32>> = vectors.into_iter().collect();
        if vectors.is_empty() {
            return Self::zero(field, ambient);
        }
        let m = FpMatrix::from_raw(
            field,
            vectors.len(),
            ambient,
            vectors.into_iter().flatten().collect(),
        );
        let Rref { reduced, pivots } = m.rref();
        let rows = (0..pivots.len()).map(|i| reduced.row(i).to_vec()).collect();
        Subspace {
            field,
            ambient,
            rows,
            pivots,
        }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Self::from_vectors(field, ambient, (0..ambient).map(|i| unit_vec(ambient, i)))
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its projection along the pivot coordinates: zero exactly when
    /// `v` is a member.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut r = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = r[pc];
            if c != 0 {
                f.axpy(&mut r, f.neg(c), row);
            }
        }
        r
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Add `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let f = self.field;
        let mut r = self.reduce(v);
        let Some(q) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(r[q]);
        f.scale(&mut r, inv);
        for row in self.rows.iter_mut() {
            let c = row[q];
            if c != 0 {
                f.axpy(row, f.neg(c), &r);
            }
        }
        let pos = self.pivots.partition_point(|&pc| pc < q);
        self.pivots.insert(pos, q);
        self.rows.insert(pos, r);
        true
    }

    /// Coordinates in the stored basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        if self.contains(v) {
            Some(self.pivots.iter().map(|&pc| v[pc]).collect())
        } else {
            None
        }
    }

    /// Non-pivot positions, indexing canonical coordinates on the quotient.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &pc in &self.pivots {
            is_pivot[pc] = true;
        }
        (0..self.ambient).filter(|&i| !is_pivot[i]).collect()
    }

    pub fn quotient_coords(&self, v: &[u32]) -> Vec<u32> {
        let r = self.reduce(v);
        self.complement_indices().into_iter().map(|i| r[i]).collect()
    }

    /// Projection `F_p^n -> F_p^n / self` as a matrix in canonical coordinates.
    pub fn quotient_projection(&self) -> FpMatrix {
        let comp = self.complement_indices();
        let cols: Vec<Vec<u32>> = (0..self.ambient)
            .map(|j| {
                let r = self.reduce(&unit_vec(self.ambient, j));
                comp.iter().map(|&i| r[i]).collect()
            })
            .collect();
        FpMatrix::from_columns(self.field, comp.len(), &cols)
    }

    /// Section of the quotient projection: canonical coordinates back to
    /// standard basis vectors at the non-pivot positions.
    pub fn quotient_section(&self) -> FpMatrix {
        let comp = self.complement_indices();
        let cols: Vec<Vec<u32>> = comp.iter().map(|&i| unit_vec(self.ambient, i)).collect();
        FpMatrix::from_columns(self.field, self.ambient, &cols)
    }

    /// Basis vectors as the columns of an `ambient x dim` matrix.
    pub fn basis_matrix(&self) -> FpMatrix {
        FpMatrix::from_columns(self.field, self.ambient, &self.rows)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // Kernel of [A | -B] gives the pairs with A x = B y.
        let f = self.field;
        let a = self.basis_matrix();
        let b = other.basis_matrix();
        let stacked = a.hstack(&(-&b));
        let vecs = stacked.kernel_vectors().into_iter().map(|k| {
            let x = &k[..self.dim()];
            a.mul_vec(x)
        });
        Subspace::from_vectors(f, self.ambient, vecs)
    }
}
