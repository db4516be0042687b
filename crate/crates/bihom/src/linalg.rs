//! Exact rational vectors and square matrices.
//!
//! `LinearMap` stores a square matrix acting on the carrier space; column
//! `j` is the image of basis vector `j`. Inverses and kernels are computed
//! by Gaussian elimination with a deterministic pivot rule (first nonzero
//! entry in the column), so every result, including the order of kernel
//! basis vectors, is reproducible across runs.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::Error;
use crate::rational::Rat;

/// A dense vector of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Vector {
    entries: Vec<Rat>,
}

impl Vector {
    pub fn zero(dim: usize) -> Self {
        Vector { entries: vec![Rat::zero(); dim] }
    }

    pub fn from_entries(entries: Vec<Rat>) -> Self {
        Vector { entries }
    }

    /// Standard basis vector `e_i`.
    pub fn basis(dim: usize, i: usize) -> Self {
        assert!(i < dim, "basis index {i} out of range for dim {dim}");
        let mut v = Vector::zero(dim);
        v.entries[i] = Rat::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> &Rat {
        &self.entries[i]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rat::is_zero)
    }

    pub fn scaled(&self, c: &Rat) -> Vector {
        Vector { entries: self.entries.iter().map(|x| x * c).collect() }
    }

    /// Nonzero coordinates, as `(index, coefficient)` pairs.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Rat)> {
        self.entries.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub(crate) fn add_scaled(&mut self, c: &Rat, other: &Vector) {
        for (dst, src) in self.entries.iter_mut().zip(&other.entries) {
            *dst += &(c * src);
        }
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim());
        Vector {
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim());
        Vector {
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector { entries: self.entries.iter().map(|c| -c).collect() }
    }
}

/// A square matrix over the rationals, acting on column vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearMap {
    dim: usize,
    /// Row-major entries; `entries[r * dim + c]` is row `r`, column `c`.
    entries: Vec<Rat>,
}

impl LinearMap {
    pub fn zero(dim: usize) -> Self {
        LinearMap { dim, entries: vec![Rat::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = LinearMap::zero(dim);
        for i in 0..dim {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn diagonal(diag: &[Rat]) -> Self {
        let mut m = LinearMap::zero(diag.len());
        for (i, c) in diag.iter().enumerate() {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self, Error> {
        let dim = rows.len();
        for row in &rows {
            if row.len() != dim {
                return Err(Error::DimMismatch(format!(
                    "matrix must be square: {dim} rows but a row of length {}",
                    row.len()
                )));
            }
        }
        Ok(LinearMap { dim, entries: rows.into_iter().flatten().collect() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn at(&self, row: usize, col: usize) -> &Rat {
        &self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rat) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn rows(&self) -> Vec<Vec<Rat>> {
        (0..self.dim)
            .map(|r| (0..self.dim).map(|c| self.at(r, c).clone()).collect())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == LinearMap::identity(self.dim)
    }

    /// Image of basis vector `j`.
    pub fn column(&self, j: usize) -> Vector {
        Vector::from_entries((0..self.dim).map(|i| self.at(i, j).clone()).collect())
    }

    /// Applies the map to a vector.
    pub fn apply(&self, v: &Vector) -> Vector {
        assert_eq!(self.dim, v.dim(), "map/vector dimension mismatch");
        let mut out = Vector::zero(self.dim);
        for (j, c) in v.support() {
            for i in 0..self.dim {
                let m = self.at(i, j);
                if !m.is_zero() {
                    out.entries[i] += &(m * c);
                }
            }
        }
        out
    }

    /// Matrix product `self · other` (apply `other` first).
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(self.dim, other.dim, "map dimension mismatch");
        let d = self.dim;
        let mut out = LinearMap::zero(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        out.entries[i * d + j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<LinearMap, Error> {
        let d = self.dim;
        let mut a = self.clone();
        let mut inv = LinearMap::identity(d);
        for col in 0..d {
            // First nonzero entry at or below the diagonal.
            let pivot = (col..d).find(|&r| !a.at(r, col).is_zero());
            let pivot = match pivot {
                Some(p) => p,
                None => return Err(Error::Singular(format!("map is not invertible (rank < {d})"))),
            };
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a.at(col, col).clone();
            let p_inv = p.recip().expect("pivot is nonzero");
            a.scale_row(col, &p_inv);
            inv.scale_row(col, &p_inv);
            for r in 0..d {
                if r == col {
                    continue;
                }
                let factor = a.at(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                a.sub_scaled_row(r, col, &factor);
                inv.sub_scaled_row(r, col, &factor);
            }
        }
        Ok(inv)
    }

    /// Exact `k`-th power; `k = 0` gives the identity, negative `k`
    /// requires an invertible map.
    pub fn pow(&self, k: i64) -> Result<LinearMap, Error> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut out = LinearMap::identity(self.dim);
        for _ in 0..k.unsigned_abs() {
            out = out.compose(&base);
        }
        Ok(out)
    }

    pub fn commutes_with(&self, other: &LinearMap) -> bool {
        self.compose(other) == other.compose(self)
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        for c in 0..self.dim {
            self.entries.swap(r1 * self.dim + c, r2 * self.dim + c);
        }
    }

    fn scale_row(&mut self, r: usize, factor: &Rat) {
        for c in 0..self.dim {
            let v = self.at(r, c) * factor;
            self.set(r, c, v);
        }
    }

    /// `row[r] -= factor * row[src]`.
    fn sub_scaled_row(&mut self, r: usize, src: usize, factor: &Rat) {
        for c in 0..self.dim {
            let v = self.at(r, c) - &(factor * self.at(src, c));
            self.set(r, c, v);
        }
    }
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LinearMap(dim={}) [", self.dim)?;
        for r in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|c| self.at(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Mul for &LinearMap {
    type Output = LinearMap;
    fn mul(self, rhs: &LinearMap) -> LinearMap {
        self.compose(rhs)
    }
}

/// Basis (possibly empty) of the joint fixed subspace of the given maps:
/// all `v` with `m(v) = v` for every `m`. All maps must share a dimension.
///
/// Computed as the kernel of the stacked system `(m_i - I) v = 0`, with
/// kernel basis vectors ordered by free column, so the result is
/// deterministic.
pub fn fixed_subspace(maps: &[LinearMap]) -> Result<Vec<Vector>, Error> {
    let dim = match maps.first() {
        None => return Err(Error::DimMismatch("fixed_subspace needs at least one map".into())),
        Some(m) => m.dim(),
    };
    for m in maps {
        if m.dim() != dim {
            return Err(Error::DimMismatch(format!(
                "fixed_subspace maps disagree on dimension: {} vs {dim}",
                m.dim()
            )));
        }
    }
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(maps.len() * dim);
    for m in maps {
        for r in 0..dim {
            let mut row: Vec<Rat> = (0..dim).map(|c| m.at(r, c).clone()).collect();
            row[r] = &row[r] - &Rat::one();
            rows.push(row);
        }
    }
    Ok(kernel_basis(rows, dim))
}

/// Kernel basis of an `m x n` rational matrix via reduction to RREF with
/// the first-nonzero pivot rule. One basis vector per free column, in
/// increasing column order.
fn kernel_basis(mut a: Vec<Vec<Rat>>, n: usize) -> Vec<Vector> {
    let m = a.len();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut pivot_row = 0usize;
    for col in 0..n {
        if pivot_row >= m {
            break;
        }
        let found = (pivot_row..m).find(|&r| !a[r][col].is_zero());
        let row = match found {
            Some(r) => r,
            None => continue,
        };
        a.swap(row, pivot_row);
        let p = a[pivot_row][col].clone();
        let p_inv = p.recip().expect("pivot is nonzero");
        for x in a[pivot_row].iter_mut() {
            *x = &*x * &p_inv;
        }
        for r in 0..m {
            if r == pivot_row || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            let pivot_vals: Vec<Rat> = a[pivot_row].clone();
            for (dst, src) in a[r].iter_mut().zip(&pivot_vals) {
                *dst = &*dst - &(&factor * src);
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
    }

    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![Rat::zero(); n];
        v[free] = Rat::one();
        for (row, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -&a[row][free];
        }
        basis.push(Vector::from_entries(v));
    }
    basis
}
