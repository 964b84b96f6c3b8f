//! Exact linear algebra over a prime field or the rationals.
//!
//! Everything here is dense. Row reduction skips zero entries of the pivot
//! row, so the sparse intertwiner systems built elsewhere reduce quickly even
//! though they are stored densely.

use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arithmetic context for a field. Elements carry no context of their own.
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn embed_i64(&self, v: i64) -> Self::Elem;
}

/// The prime field F_p, elements stored as canonical residues `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fp {
    p: u32,
}

impl Fp {
    /// Builds F_p; rejects composites and p < 5.
    pub fn new(p: u32) -> Result<Self> {
        if p < 5 || !is_prime(p) || p >= (1 << 31) {
            return Err(Error::InvalidPrime(p as u64));
        }
        Ok(Fp { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn elem(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// Signed representative in `(-p/2, p/2]`, for display.
    pub fn signed(&self, v: u32) -> i64 {
        let v = v as i64;
        if v > self.p as i64 / 2 {
            v - self.p as i64
        } else {
            v
        }
    }

    pub fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &a);
            }
            a = self.mul(&a, &a);
            e >>= 1;
        }
        acc
    }

    /// All nonzero elements in increasing order.
    pub fn units(&self) -> impl Iterator<Item = u32> {
        1..self.p
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n as u64 {
        if (n as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for Fp {
    type Elem = u32;

    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (if s >= self.p as u64 { s - self.p as u64 } else { s }) as u32
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (*a as u64 + self.p as u64 - *b as u64) as u32
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(self.elem(t0))
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn embed_i64(&self, v: i64) -> u32 {
        self.elem(v)
    }
}

/// The rationals, with arbitrary-precision numerators and denominators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn embed_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }
}

impl Rationals {
    pub fn is_negative(a: &BigRational) -> bool {
        a.is_negative()
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

/// Matrices over F_p, the workhorse type of the crate.
pub type Mat = Matrix<u32>;

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, v: E) -> Self {
        Matrix { rows, cols, data: vec![v; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
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
    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }
    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn data(&self) -> &[E] {
        &self.data
    }
    pub fn col(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix { rows: rows.len(), cols: cols.len(), data }
    }

    pub fn from_cols(rows: usize, cols: &[Vec<E>], zero: E) -> Self {
        let mut m = Matrix::filled(rows, cols.len(), zero);
        for (c, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), rows);
            for (r, x) in v.iter().enumerate() {
                m.set(r, c, x.clone());
            }
        }
        m
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut data = Vec::with_capacity(self.data.len() + other.data.len());
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Matrix { rows: self.rows, cols: self.cols + other.cols, data }
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }
}

/// Result of row reduction.
#[derive(Clone, Debug)]
pub struct Rref<E> {
    pub matrix: Matrix<E>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

pub fn zeros<F: Field>(f: &F, rows: usize, cols: usize) -> Matrix<F::Elem> {
    Matrix::filled(rows, cols, f.zero())
}

pub fn identity<F: Field>(f: &F, n: usize) -> Matrix<F::Elem> {
    let mut m = zeros(f, n, n);
    for i in 0..n {
        m.set(i, i, f.one());
    }
    m
}

pub fn from_i64_rows<F: Field>(f: &F, rows: &[&[i64]]) -> Matrix<F::Elem> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| f.embed_i64(v)).collect()).collect())
}

pub fn is_zero_matrix<F: Field>(f: &F, m: &Matrix<F::Elem>) -> bool {
    m.data.iter().all(|x| f.is_zero(x))
}

pub fn mul<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows, "shape mismatch in product");
    let mut out = zeros(f, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if f.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let y = b.get(k, j);
                if f.is_zero(y) {
                    continue;
                }
                let cur = out.get(i, j).clone();
                out.set(i, j, f.add(&cur, &f.mul(x, y)));
            }
        }
    }
    out
}

pub fn add<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    let data = a.data.iter().zip(&b.data).map(|(x, y)| f.add(x, y)).collect();
    Matrix { rows: a.rows, cols: a.cols, data }
}

pub fn sub<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    let data = a.data.iter().zip(&b.data).map(|(x, y)| f.sub(x, y)).collect();
    Matrix { rows: a.rows, cols: a.cols, data }
}

pub fn scale<F: Field>(f: &F, c: &F::Elem, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let data = a.data.iter().map(|x| f.mul(c, x)).collect();
    Matrix { rows: a.rows, cols: a.cols, data }
}

pub fn mat_vec<F: Field>(f: &F, a: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    assert_eq!(a.cols, v.len());
    (0..a.rows)
        .map(|i| {
            let mut acc = f.zero();
            for (k, x) in v.iter().enumerate() {
                let y = a.get(i, k);
                if !f.is_zero(x) && !f.is_zero(y) {
                    acc = f.add(&acc, &f.mul(y, x));
                }
            }
            acc
        })
        .collect()
}

/// Reduced row echelon form.
pub fn rref<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Rref<F::Elem> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    let mut nz: Vec<usize> = Vec::with_capacity(cols);
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !f.is_zero(a.get(i, c))) else {
            continue;
        };
        if p != r {
            for j in c..cols {
                a.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(a.get(r, c)).expect("nonzero pivot");
        nz.clear();
        for j in c..cols {
            let v = a.get(r, j);
            if !f.is_zero(v) {
                let scaled = f.mul(v, &inv);
                a.set(r, j, scaled);
                nz.push(j);
            }
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = a.get(i, c).clone();
            if f.is_zero(&factor) {
                continue;
            }
            for &j in &nz {
                let delta = f.mul(&factor, a.get(r, j));
                let cur = a.get(i, j);
                let nv = f.sub(cur, &delta);
                a.set(i, j, nv);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { matrix: a, rank: r, pivots }
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    rref(f, m).rank
}

/// Kernel of `m` together with the free columns. The i-th basis vector has a 1
/// in free column `free[i]` and a 0 in every other free column, so the
/// coordinates of any kernel vector are its entries at the free columns.
pub fn kernel_with_free<F: Field>(f: &F, m: &Matrix<F::Elem>) -> (Vec<Vec<F::Elem>>, Vec<usize>) {
    let red = rref(f, m);
    let n = m.cols;
    let mut is_pivot = vec![false; n];
    for &p in &red.pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let basis = free
        .iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); n];
            v[fc] = f.one();
            for (row, &pc) in red.pivots.iter().enumerate() {
                let x = red.matrix.get(row, fc);
                if !f.is_zero(x) {
                    v[pc] = f.neg(x);
                }
            }
            v
        })
        .collect();
    (basis, free)
}

pub fn kernel_basis<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    kernel_with_free(f, m).0
}

/// One solution of `m x = b`, or `None` when inconsistent.
pub fn solve<F: Field>(f: &F, m: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    assert_eq!(m.rows, b.len());
    let bcol = Matrix::from_vec(b.len(), 1, b.to_vec());
    let red = rref(f, &m.hstack(&bcol));
    if red.pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![f.zero(); m.cols];
    for (row, &pc) in red.pivots.iter().enumerate() {
        x[pc] = red.matrix.get(row, m.cols).clone();
    }
    Some(x)
}

/// Solves `m X = b` column by column; `None` if any column is inconsistent.
pub fn solve_matrix<F: Field>(f: &F, m: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    assert_eq!(m.rows, b.rows);
    let red = rref(f, &m.hstack(b));
    if red.pivots.iter().any(|&p| p >= m.cols) {
        return None;
    }
    let mut x = zeros(f, m.cols, b.cols);
    for (row, &pc) in red.pivots.iter().enumerate() {
        for j in 0..b.cols {
            x.set(pc, j, red.matrix.get(row, m.cols + j).clone());
        }
    }
    Some(x)
}

pub fn det<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Result<F::Elem> {
    if m.rows != m.cols {
        return Err(Error::Shape(format!("det of {}x{} matrix", m.rows, m.cols)));
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut d = f.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !f.is_zero(a.get(i, c))) else {
            return Ok(f.zero());
        };
        if p != c {
            for j in 0..n {
                a.data.swap(p * n + j, c * n + j);
            }
            d = f.neg(&d);
        }
        let piv = a.get(c, c).clone();
        d = f.mul(&d, &piv);
        let inv = f.inv(&piv).expect("nonzero pivot");
        for i in c + 1..n {
            let factor = f.mul(a.get(i, c), &inv);
            if f.is_zero(&factor) {
                continue;
            }
            for j in c..n {
                let delta = f.mul(&factor, a.get(c, j));
                let nv = f.sub(a.get(i, j), &delta);
                a.set(i, j, nv);
            }
        }
    }
    Ok(d)
}

pub fn is_invertible<F: Field>(f: &F, m: &Matrix<F::Elem>) -> bool {
    m.rows == m.cols && rank(f, m) == m.rows
}

pub fn inverse<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    if m.rows != m.cols {
        return None;
    }
    solve_matrix(f, m, &identity(f, m.rows))
}

/// Rank of a family of equally shaped matrices, viewed as vectors.
pub fn span_rank<F: Field>(f: &F, mats: &[Matrix<F::Elem>]) -> usize {
    if mats.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<F::Elem>> = mats.iter().map(|m| m.data.clone()).collect();
    rank(f, &Matrix::from_rows(rows))
}

/// A maximal linearly independent subfamily, chosen greedily in order.
pub fn independent_subset<F: Field>(f: &F, mats: &[Matrix<F::Elem>]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis: Vec<Matrix<F::Elem>> = Vec::new();
    for (i, m) in mats.iter().enumerate() {
        basis.push(m.clone());
        if span_rank(f, &basis) == basis.len() {
            chosen.push(i);
        } else {
            basis.pop();
        }
    }
    chosen
}

/// Incremental row echelon form for systems with short rows. Rows are sorted
/// `(column, value)` lists; each stored pivot row starts at its pivot column.
#[derive(Clone, Debug)]
pub struct SparseEchelon<F: Field> {
    field: F,
    cols: usize,
    pivots: std::collections::BTreeMap<usize, Vec<(usize, F::Elem)>>,
    inconsistent: bool,
}

impl<F: Field> SparseEchelon<F> {
    pub fn new(field: F, cols: usize) -> Self {
        SparseEchelon { field, cols, pivots: Default::default(), inconsistent: false }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Adds a row; entries may be unsorted and may repeat a column.
    pub fn insert(&mut self, entries: Vec<(usize, F::Elem)>) {
        let f = self.field.clone();
        let mut row = normalize_sparse(&f, entries);
        while let Some((lead, _)) = row.first() {
            let lead = *lead;
            match self.pivots.get(&lead) {
                Some(piv) => {
                    let factor = row[0].1.clone();
                    row = axpy_sparse(&f, &row, &f.neg(&factor), piv);
                }
                None => {
                    let inv = f.inv(&row[0].1).expect("nonzero lead");
                    for e in row.iter_mut() {
                        e.1 = f.mul(&e.1, &inv);
                    }
                    self.pivots.insert(lead, row);
                    return;
                }
            }
        }
    }

    /// Whether a row lies in the span of the rows inserted so far.
    pub fn spans(&self, entries: Vec<(usize, F::Elem)>) -> bool {
        let f = &self.field;
        let mut row = normalize_sparse(f, entries);
        while let Some((lead, factor)) = row.first().cloned() {
            match self.pivots.get(&lead) {
                Some(piv) => row = axpy_sparse(f, &row, &f.neg(&factor), piv),
                None => return false,
            }
        }
        true
    }

    /// Inserts an augmented row `a·x = b`, where `b` sits in column `cols`.
    /// Used by [`SparseEchelon::solve`].
    pub fn insert_augmented(&mut self, mut entries: Vec<(usize, F::Elem)>, rhs: F::Elem) {
        if !self.field.is_zero(&rhs) {
            entries.push((self.cols, rhs));
        }
        let before = self.pivots.len();
        self.insert(entries);
        if self.pivots.len() > before && self.pivots.contains_key(&self.cols) {
            self.inconsistent = true;
        }
    }

    /// One solution of the augmented system, or `None` if inconsistent.
    pub fn solve(&self) -> Option<Vec<F::Elem>> {
        if self.inconsistent || self.pivots.contains_key(&self.cols) {
            return None;
        }
        let f = &self.field;
        let mut x = vec![f.zero(); self.cols];
        for (&c, row) in self.pivots.iter().rev() {
            let mut acc = f.zero();
            for (j, v) in &row[1..] {
                if *j == self.cols {
                    acc = f.add(&acc, v);
                } else {
                    acc = f.sub(&acc, &f.mul(v, &x[*j]));
                }
            }
            x[c] = acc;
        }
        Some(x)
    }

    /// Kernel basis of the homogeneous system, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !self.pivots.contains_key(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut x = vec![f.zero(); self.cols];
                x[fc] = f.one();
                for (&c, row) in self.pivots.iter().rev() {
                    if c >= self.cols {
                        continue;
                    }
                    let mut acc = f.zero();
                    for (j, v) in &row[1..] {
                        if *j < self.cols {
                            acc = f.sub(&acc, &f.mul(v, &x[*j]));
                        }
                    }
                    x[c] = acc;
                }
                x
            })
            .collect()
    }
}

fn normalize_sparse<F: Field>(f: &F, mut entries: Vec<(usize, F::Elem)>) -> Vec<(usize, F::Elem)> {
    entries.sort_by_key(|e| e.0);
    let mut out: Vec<(usize, F::Elem)> = Vec::with_capacity(entries.len());
    for (c, v) in entries {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 = f.add(&last.1, &v),
            _ => out.push((c, v)),
        }
    }
    out.retain(|e| !f.is_zero(&e.1));
    out
}

/// `a + s·b` for sorted sparse rows.
fn axpy_sparse<F: Field>(f: &F, a: &[(usize, F::Elem)], s: &F::Elem, b: &[(usize, F::Elem)]) -> Vec<(usize, F::Elem)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, f.mul(s, &b[j].1)));
            j += 1;
        } else {
            let v = f.add(&a[i].1, &f.mul(s, &b[j].1));
            if !f.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f7() -> Fp {
        Fp::new(7).unwrap()
    }

    #[test]
    fn rejects_bad_primes() {
        assert!(Fp::new(4).is_err());
        assert!(Fp::new(3).is_err());
        assert!(Fp::new(9).is_err());
        assert!(Fp::new(101).is_ok());
    }

    #[test]
    fn rref_basic_examples() {
        let f = f7();
        let id = identity(&f, 3);
        let r = rref(&f, &id);
        assert_eq!(r.rank, 3);
        assert_eq!(r.matrix, id);
        let z = zeros(&f, 2, 3);
        let r = rref(&f, &z);
        assert_eq!(r.rank, 0);
        assert_eq!(r.matrix, z);
        let m = from_i64_rows(&f, &[&[1, 2], &[2, 4]]);
        assert_eq!(rank(&f, &m), 1);
    }

    #[test]
    fn kernel_solve_det_examples() {
        let f = f7();
        assert!(kernel_basis(&f, &identity(&f, 4)).is_empty());
        assert!(solve(&f, &zeros(&f, 2, 2), &[1, 0]).is_none());
        let perm = from_i64_rows(&f, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert_eq!(det(&f, &perm).unwrap(), f.elem(-1));
        assert_eq!(det(&f, &identity(&f, 3)).unwrap(), 1);
        assert!(det(&f, &zeros(&f, 2, 3)).is_err());
    }

    #[test]
    fn rationals_work() {
        let q = Rationals;
        let m = from_i64_rows(&q, &[&[2, 4], &[1, 3]]);
        assert_eq!(det(&q, &m).unwrap(), q.embed_i64(2));
        let inv = inverse(&q, &m).unwrap();
        assert_eq!(mul(&q, &m, &inv), identity(&q, 2));
        let sing = from_i64_rows(&q, &[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(kernel_basis(&q, &sing).len(), 2);
    }

    fn arb_matrix(p: u32) -> impl Strategy<Value = Mat> {
        (1usize..7, 1usize..7).prop_flat_map(move |(r, c)| {
            proptest::collection::vec(0..p, r * c).prop_map(move |d| Matrix::from_vec(r, c, d))
        })
    }

    fn arb_qmatrix() -> impl Strategy<Value = Matrix<BigRational>> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..4, r * c)
                .prop_map(move |d| Matrix::from_vec(r, c, d.into_iter().map(|v| Rationals.embed_i64(v)).collect()))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity_fp(m in arb_matrix(7)) {
            let f = f7();
            let k = kernel_basis(&f, &m);
            prop_assert_eq!(rank(&f, &m) + k.len(), m.cols());
            for v in &k {
                prop_assert!(mat_vec(&f, &m, v).iter().all(|x| *x == 0));
            }
        }

        #[test]
        fn rank_nullity_rationals(m in arb_qmatrix()) {
            let q = Rationals;
            let k = kernel_basis(&q, &m);
            prop_assert_eq!(rank(&q, &m) + k.len(), m.cols());
            for v in &k {
                prop_assert!(mat_vec(&q, &m, v).iter().all(|x| q.is_zero(x)));
            }
        }

        #[test]
        fn solve_is_exact(m in arb_matrix(101), seed in proptest::collection::vec(0u32..101, 7)) {
            let f = Fp::new(101).unwrap();
            let x: Vec<u32> = seed[..m.cols()].to_vec();
            let b = mat_vec(&f, &m, &x);
            let sol = solve(&f, &m, &b).expect("consistent by construction");
            prop_assert_eq!(mat_vec(&f, &m, &sol), b);
        }

        #[test]
        fn fp_inverse_round_trip(a in 0u32..101, b in 1u32..101) {
            let f = Fp::new(101).unwrap();
            let binv = f.inv(&b).unwrap();
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &binv), a);
        }

        #[test]
        fn det_multiplicative(a in proptest::collection::vec(0u32..7, 9), b in proptest::collection::vec(0u32..7, 9)) {
            let f = f7();
            let ma = Matrix::from_vec(3, 3, a);
            let mb = Matrix::from_vec(3, 3, b);
            let lhs = det(&f, &mul(&f, &ma, &mb)).unwrap();
            let rhs = f.mul(&det(&f, &ma).unwrap(), &det(&f, &mb).unwrap());
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(det(&f, &ma).unwrap() != 0, is_invertible(&f, &ma));
        }
    }
    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn sparse_echelon_matches_dense(m in arb_matrix(11)) {
            let f = Fp::new(11).unwrap();
            let mut se = SparseEchelon::new(f, m.cols());
            for r in 0..m.rows() {
                se.insert(m.row(r).iter().cloned().enumerate().collect());
            }
            prop_assert_eq!(se.rank(), rank(&f, &m));
            let ker = se.kernel();
            prop_assert_eq!(ker.len(), m.cols() - rank(&f, &m));
            for v in &ker {
                prop_assert!(mat_vec(&f, &m, v).iter().all(|x| *x == 0));
            }
        }

        #[test]
        fn sparse_solve_is_exact(m in arb_matrix(13), seed in any::<u64>()) {
            let f = Fp::new(13).unwrap();
            let x0: Vec<u32> = (0..m.cols()).map(|i| ((seed >> (i % 60)) % 13) as u32).collect();
            let b = mat_vec(&f, &m, &x0);
            let mut se = SparseEchelon::new(f, m.cols());
            for (r, &rhs) in b.iter().enumerate() {
                se.insert_augmented(m.row(r).iter().cloned().enumerate().collect(), rhs);
            }
            let x = se.solve().expect("consistent by construction");
            prop_assert_eq!(mat_vec(&f, &m, &x), b);
        }
    }
}
