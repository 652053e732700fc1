//! Dense scalar matrices, exact elimination, and matrices of polynomials.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::HomogPoly;

/// Dense row-major matrix over a field.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<K: Field> {
    field: K,
    rows: usize,
    cols: usize,
    data: Vec<K::Elem>,
}

impl<K: Field> Matrix<K> {
    pub fn zeros(field: &K, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &K, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &K, rows: Vec<Vec<K::Elem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|v| v.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend(row);
        }
        Matrix { field: field.clone(), rows: r, cols: c, data }
    }

    pub fn from_fn(field: &K, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> K::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn diagonal(field: &K, d: &[K::Elem]) -> Self {
        let mut m = Self::zeros(field, d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn field(&self) -> &K {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &K::Elem {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: K::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[K::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<K::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let f = &self.field;
        Self::from_fn(f, self.rows, other.cols, |i, j| {
            let mut acc = f.zero();
            for k in 0..self.cols {
                acc = f.add(&acc, &f.mul(self.get(i, k), other.get(k, j)));
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[K::Elem]) -> Vec<K::Elem> {
        assert_eq!(self.cols, v.len());
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (k, x) in v.iter().enumerate() {
                    acc = f.add(&acc, &f.mul(self.get(i, k), x));
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        Self::from_fn(f, self.rows, self.cols, |i, j| f.add(self.get(i, j), other.get(i, j)))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = &self.field;
        Self::from_fn(f, self.rows, self.cols, |i, j| f.sub(self.get(i, j), other.get(i, j)))
    }

    pub fn scale(&self, s: &K::Elem) -> Self {
        let f = &self.field;
        Self::from_fn(f, self.rows, self.cols, |i, j| f.mul(self.get(i, j), s))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Bilinear form `u^T M v`.
    pub fn bilinear(&self, u: &[K::Elem], v: &[K::Elem]) -> K::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for i in 0..self.rows {
            if f.is_zero(&u[i]) {
                continue;
            }
            let mut row = f.zero();
            for j in 0..self.cols {
                row = f.add(&row, &f.mul(self.get(i, j), &v[j]));
            }
            acc = f.add(&acc, &f.mul(&u[i], &row));
        }
        acc
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("nonzero pivot");
            for j in c..self.cols {
                let v = f.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || f.is_zero(self.get(i, c)) {
                    continue;
                }
                let factor = self.get(i, c).clone();
                for j in c..self.cols {
                    let v = f.sub(self.get(i, j), &f.mul(&factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{v : M v = 0}` read off the reduced echelon form.
    /// One basis vector per free column, with a 1 in that column.
    pub fn nullspace(&self) -> Vec<Vec<K::Elem>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(row);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (row, &c) in pivots.iter().enumerate() {
                v[c] = f.neg(r.get(row, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Scalar determinant by elimination.
    pub fn det(&self) -> K::Elem {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let f = &self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else {
                return f.zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = f.neg(&det);
            }
            let piv = m.get(c, c).clone();
            det = f.mul(&det, &piv);
            let inv = f.inv(&piv).expect("nonzero pivot");
            for i in c + 1..n {
                if f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = f.mul(m.get(i, c), &inv);
                for j in c..n {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let f = &self.field;
        let mut aug = Self::from_fn(f, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                f.one()
            } else {
                f.zero()
            }
        });
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(f, n, n, |i, j| aug.get(i, n + j).clone()))
    }

    /// Map every entry into another field.
    pub fn map_field<L: Field>(&self, target: &L, map: impl Fn(&K::Elem) -> L::Elem) -> Matrix<L> {
        Matrix { field: target.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(map).collect() }
    }
}

/// Square matrix of homogeneous polynomials of uniform degree.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix<K: Field> {
    n: usize,
    entries: Vec<HomogPoly<K>>,
    symmetric: bool,
}

impl<K: Field> PolyMatrix<K> {
    pub fn new(n: usize, entries: Vec<HomogPoly<K>>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::Mismatch(format!("{} entries for a {n}x{n} matrix", entries.len())));
        }
        if n > 5 {
            return Err(Error::Mismatch("polynomial matrices are limited to 5x5".into()));
        }
        let symmetric = (0..n).all(|i| (0..i).all(|j| entries[i * n + j] == entries[j * n + i]));
        Ok(PolyMatrix { n, entries, symmetric })
    }

    /// `sum_i t_i M_i` for scalar matrices `M_i` and parameters `t_0..t_{m-1}`.
    pub fn from_pencil(field: &K, mats: &[Matrix<K>]) -> Self {
        let n = mats[0].rows();
        let m = mats.len();
        let entries = (0..n * n)
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                let coeffs: Vec<K::Elem> = mats.iter().map(|a| a.get(i, j).clone()).collect();
                HomogPoly::linear(field, &coeffs)
            })
            .collect();
        let mut pm = PolyMatrix::new(n, entries).expect("square pencil");
        debug_assert!(m > 0);
        pm.symmetric = mats.iter().all(|a| a.is_symmetric());
        pm
    }

    pub fn dim(&self) -> usize {
        self.n
    }
    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }
    pub fn entry(&self, i: usize, j: usize) -> &HomogPoly<K> {
        &self.entries[i * self.n + j]
    }

    /// Scalar matrix obtained by evaluating every entry.
    pub fn eval(&self, pt: &[K::Elem]) -> Matrix<K> {
        let f = self.entries[0].field().clone();
        Matrix::from_fn(&f, self.n, self.n, |i, j| self.entry(i, j).eval(pt))
    }

    /// Determinant by cofactor expansion along rows, memoizing minors by column set.
    pub fn det(&self) -> HomogPoly<K> {
        let n = self.n;
        let f = self.entries[0].field().clone();
        let nv = self.entries[0].nvars();
        let ed = self.entries[0].degree();
        // memo[mask] = determinant of rows (n - popcount(mask))..n restricted to columns in mask
        let mut memo: HashMap<u32, HomogPoly<K>> = HashMap::new();
        memo.insert(0, HomogPoly::one(&f, nv));
        let mut masks: Vec<u32> = (1..(1u32 << n)).collect();
        masks.sort_by_key(|m| m.count_ones());
        for mask in masks {
            let k = mask.count_ones() as usize;
            let row = n - k;
            let mut acc = HomogPoly::zero(&f, nv, ed * k as u32);
            let mut sign_pos = true;
            for c in 0..n {
                if mask & (1 << c) == 0 {
                    continue;
                }
                let e = self.entry(row, c);
                if !e.is_zero() {
                    let minor = &memo[&(mask & !(1 << c))];
                    if !minor.is_zero() {
                        let term = e.mul(minor);
                        acc = if sign_pos { acc.add(&term) } else { acc.sub(&term) };
                    }
                }
                sign_pos = !sign_pos;
            }
            memo.insert(mask, acc);
        }
        memo.remove(&((1u32 << n) - 1)).expect("full minor")
    }
}
