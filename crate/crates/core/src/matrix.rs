//! Matrices of polynomials, read as maps between free modules: a map
//! `R^cols -> R^rows` acts on column vectors.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gb::Vector;
use crate::poly::Polynomial;
use crate::ring::Ring;

#[derive(Clone, Debug)]
pub struct FreeMap {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PartialEq for FreeMap {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }
}

impl FreeMap {
    pub fn new(ring: &Ring, rows: usize, cols: usize, entries: Vec<Vec<Polynomial>>) -> Result<Self> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape(format!("expected a {rows}x{cols} matrix")));
        }
        for p in entries.iter().flatten() {
            ring.check_poly(p)?;
        }
        Ok(FreeMap { ring: ring.clone(), rows, cols, entries: entries.into_iter().flatten().collect() })
    }

    pub fn zero(ring: &Ring, rows: usize, cols: usize) -> Self {
        FreeMap { ring: ring.clone(), rows, cols, entries: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    /// Diagonal matrix.
    pub fn diagonal(ring: &Ring, diag: Vec<Polynomial>) -> Self {
        let n = diag.len();
        let mut m = Self::zero(ring, n, n);
        for (i, p) in diag.into_iter().enumerate() {
            m.set(i, i, p);
        }
        m
    }

    pub fn from_columns(ring: &Ring, rows: usize, columns: &[Vec<Polynomial>]) -> Self {
        let mut m = Self::zero(ring, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, p) in col.iter().enumerate() {
                m.set(i, j, p.clone());
            }
        }
        m
    }

    /// A single row.
    pub fn row_vector(ring: &Ring, entries: Vec<Polynomial>) -> Self {
        let n = entries.len();
        FreeMap { ring: ring.clone(), rows: 1, cols: n, entries }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Polynomial) {
        self.entries[r * self.cols + c] = p;
    }

    pub fn column(&self, c: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Polynomial>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn row(&self, r: usize) -> Vec<Polynomial> {
        self.entries[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn column_vectors(&self) -> Vec<Vector> {
        (0..self.cols).map(|c| Vector::from_column(&self.column(c), 0)).collect()
    }

    pub fn transpose(&self) -> FreeMap {
        let mut m = Self::zero(&self.ring, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.get(r, c).clone());
            }
        }
        m
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FreeMap) -> Result<FreeMap> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot compose {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let mut m = Self::zero(&self.ring, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = self.ring.zero();
                for k in 0..self.cols {
                    let a = self.get(r, k);
                    let b = other.get(k, c);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                m.set(r, c, self.ring.reduce(&acc));
            }
        }
        Ok(m)
    }

    pub fn apply(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = self.ring.zero();
                for (c, x) in v.iter().enumerate() {
                    let a = self.get(r, c);
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.add(&a.mul(x));
                    }
                }
                self.ring.reduce(&acc)
            })
            .collect()
    }

    /// `self ⊗ I_b`: basis `e_s ⊗ u` indexed `s * b + u`.
    pub fn kron_identity(&self, b: usize) -> FreeMap {
        let mut m = Self::zero(&self.ring, self.rows * b, self.cols * b);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let p = self.get(r, c);
                if p.is_zero() {
                    continue;
                }
                for u in 0..b {
                    m.set(r * b + u, c * b + u, p.clone());
                }
            }
        }
        m
    }

    /// `I_n ⊗ self`: block diagonal with `n` copies.
    pub fn identity_kron(&self, n: usize) -> FreeMap {
        let mut m = Self::zero(&self.ring, self.rows * n, self.cols * n);
        for s in 0..n {
            for r in 0..self.rows {
                for c in 0..self.cols {
                    let p = self.get(r, c);
                    if !p.is_zero() {
                        m.set(s * self.rows + r, s * self.cols + c, p.clone());
                    }
                }
            }
        }
        m
    }

    /// Columns of `self` followed by columns of `other`.
    pub fn hcat(&self, other: &FreeMap) -> Result<FreeMap> {
        if self.rows != other.rows {
            return Err(Error::Shape("hcat needs equal row counts".into()));
        }
        let mut cols = self.columns();
        cols.extend(other.columns());
        Ok(Self::from_columns(&self.ring, self.rows, &cols))
    }

    pub fn select_columns(&self, keep: &[usize]) -> FreeMap {
        let cols: Vec<_> = keep.iter().map(|&c| self.column(c)).collect();
        Self::from_columns(&self.ring, self.rows, &cols)
    }

    pub fn select_rows(&self, keep: &[usize]) -> FreeMap {
        let mut m = Self::zero(&self.ring, keep.len(), self.cols);
        for (i, &r) in keep.iter().enumerate() {
            for c in 0..self.cols {
                m.set(i, c, self.get(r, c).clone());
            }
        }
        m
    }

    /// Entries replaced by normal forms modulo the quotient relations.
    pub fn reduced(&self) -> FreeMap {
        FreeMap {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|p| self.ring.reduce(p)).collect(),
        }
    }

    /// Zero as a map over `R` (entries vanish modulo the quotient).
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| self.ring.reduce(p).is_zero())
    }

    /// Drops columns that vanish over `R`.
    pub fn without_zero_columns(&self) -> FreeMap {
        let keep: Vec<usize> =
            (0..self.cols).filter(|&c| (0..self.rows).any(|r| !self.ring.reduce(self.get(r, c)).is_zero())).collect();
        self.select_columns(&keep)
    }

    pub fn is_homogeneous_entries(&self) -> bool {
        self.entries.iter().all(|p| p.is_homogeneous())
    }

    /// Row degrees making every column homogeneous, when they exist. Rows in
    /// different connected components are normalized independently to start
    /// at `base` (or at the supplied degree of the component's first row).
    pub fn infer_row_degrees(&self, known: Option<&[i64]>) -> Option<Vec<i64>> {
        let mut rows: Vec<Option<i64>> = match known {
            Some(k) => k.iter().map(|&d| Some(d)).collect(),
            None => vec![None; self.rows],
        };
        let mut cols: Vec<Option<i64>> = vec![None; self.cols];
        let entries: Vec<Polynomial> = self.entries.iter().map(|p| self.ring.reduce(p)).collect();
        if entries.iter().any(|p| !p.is_homogeneous()) {
            return None;
        }
        let deg = |r: usize, c: usize| entries[r * self.cols + c].total_degree().map(|d| d as i64);
        loop {
            let mut changed = true;
            while changed {
                changed = false;
                for r in 0..self.rows {
                    for c in 0..self.cols {
                        let Some(d) = deg(r, c) else { continue };
                        match (rows[r], cols[c]) {
                            (Some(a), None) => {
                                cols[c] = Some(a + d);
                                changed = true;
                            }
                            (None, Some(b)) => {
                                rows[r] = Some(b - d);
                                changed = true;
                            }
                            (Some(a), Some(b)) if b != a + d => return None,
                            _ => {}
                        }
                    }
                }
            }
            match rows.iter().position(|r| r.is_none()) {
                Some(r) => rows[r] = Some(0),
                None => break,
            }
        }
        Some(rows.into_iter().map(|r| r.unwrap()).collect())
    }

    /// Degrees of homogeneous columns given row degrees; `None` for a zero or
    /// inhomogeneous column.
    pub fn column_degrees(&self, row_degrees: &[i64]) -> Vec<Option<i64>> {
        (0..self.cols)
            .map(|c| {
                let mut found: Option<i64> = None;
                for r in 0..self.rows {
                    let p = self.ring.reduce(self.get(r, c));
                    if p.is_zero() {
                        continue;
                    }
                    if !p.is_homogeneous() {
                        return None;
                    }
                    let d = p.total_degree().unwrap() as i64 + row_degrees[r];
                    match found {
                        None => found = Some(d),
                        Some(e) if e != d => return None,
                        _ => {}
                    }
                }
                found
            })
            .collect()
    }

    /// Entries formatted with the ring's variable names, row-major.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|r| (0..self.cols).map(|c| self.ring.format(self.get(r, c))).collect()).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixRecord {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl From<&FreeMap> for MatrixRecord {
    fn from(m: &FreeMap) -> Self {
        MatrixRecord { rows: m.rows, cols: m.cols, entries: m.to_strings() }
    }
}
