//! Vectors and matrices over a Laurent polynomial ring.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::error::RingError;
use crate::ring::{ExponentVector, LaurentPoly, Ring};

/// Element of the free module `R^k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FreeVector {
    ring: Ring,
    entries: Vec<LaurentPoly>,
}

impl FreeVector {
    pub fn new(ring: Ring, entries: Vec<LaurentPoly>) -> Self {
        debug_assert!(entries.iter().all(|e| e.ring() == ring));
        FreeVector { ring, entries }
    }

    pub fn zero(ring: Ring, k: usize) -> Self {
        FreeVector { ring, entries: vec![ring.zero(); k] }
    }

    /// Standard basis vector `e_i`.
    pub fn unit(ring: Ring, k: usize, i: usize) -> Self {
        let mut v = Self::zero(ring, k);
        v.entries[i] = ring.one();
        v
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[LaurentPoly] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<LaurentPoly> {
        self.entries
    }

    pub fn get(&self, i: usize) -> &LaurentPoly {
        &self.entries[i]
    }

    pub fn set(&mut self, i: usize, f: LaurentPoly) {
        self.entries[i] = f;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(RingError::MismatchedRing { left: self.ring, right: other.ring }.into());
        }
        if self.rank() != other.rank() {
            return Err(Error::Shape(format!("rank {} vs {}", self.rank(), other.rank())));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.zip(other, |a, b| a - b))
    }

    fn zip(&self, other: &Self, f: impl Fn(&LaurentPoly, &LaurentPoly) -> LaurentPoly) -> Self {
        FreeVector {
            ring: self.ring,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("vector shapes agree")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("vector shapes agree")
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a)
    }

    /// Multiplication by a ring element.
    pub fn scale(&self, f: &LaurentPoly) -> Self {
        self.map(|a| a * f)
    }

    pub fn scale_int(&self, c: u64) -> Self {
        self.map(|a| a.scale(c))
    }

    pub fn shift(&self, e: &ExponentVector) -> Self {
        self.map(|a| a.shift(e))
    }

    pub fn involution(&self) -> Self {
        self.map(LaurentPoly::involution)
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        FreeVector { ring: self.ring, entries: self.entries.iter().map(f).collect() }
    }

    /// Bilinear dot product `Σ a_i b_i`.
    pub fn dot(&self, other: &Self) -> LaurentPoly {
        self.entries
            .iter()
            .zip(&other.entries)
            .fold(self.ring.zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        FreeVector { ring: self.ring, entries }
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Self {
        FreeVector { ring: self.ring, entries: self.entries[range].to_vec() }
    }

    pub fn reduce_mod(&self, m: u64) -> Self {
        FreeVector {
            ring: self.ring.with_modulus(m),
            entries: self.entries.iter().map(|e| e.reduce_mod(m)).collect(),
        }
    }

    pub fn with_modulus_lifted(&self, m: u64) -> Self {
        FreeVector {
            ring: self.ring.with_modulus(m),
            entries: self.entries.iter().map(|e| e.with_modulus_lifted(m)).collect(),
        }
    }
}

impl fmt::Debug for FreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.iter()).finish()
    }
}

impl fmt::Display for FreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for FreeVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(s)
    }
}

/// Dense matrix over a Laurent ring, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<LaurentPoly>,
}

impl Matrix {
    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Self {
        Matrix { ring, rows, cols, data: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: Ring, k: usize) -> Self {
        let mut m = Self::zeros(ring, k, k);
        for i in 0..k {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_rows(ring: Ring, rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged matrix rows".into()));
        }
        Ok(Matrix { ring, rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(ring: Ring, rows: usize, cols: &[FreeVector]) -> Self {
        let mut m = Self::zeros(ring, rows, cols.len());
        for (j, v) in cols.iter().enumerate() {
            assert_eq!(v.rank(), rows, "column rank mismatch");
            for i in 0..rows {
                m.set(i, j, v.get(i).clone());
            }
        }
        m
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, f: LaurentPoly) {
        self.data[i * self.cols + j] = f;
    }

    pub fn col(&self, j: usize) -> FreeVector {
        FreeVector::new(self.ring, (0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn row(&self, i: usize) -> FreeVector {
        FreeVector::new(self.ring, self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn columns(&self) -> Vec<FreeVector> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Entrywise involution of the transpose.
    pub fn adjoint(&self) -> Self {
        let mut t = self.transpose();
        for e in &mut t.data {
            *e = e.involution();
        }
        t
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        Matrix { ring: self.ring, rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.ring != other.ring {
            return Err(RingError::MismatchedRing { left: self.ring, right: other.ring }.into());
        }
        let mut out = Matrix::zeros(self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + &(a * b);
                        out.set(i, j, cur);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.try_mul(other).expect("matrix shapes agree")
    }

    pub fn apply(&self, v: &FreeVector) -> FreeVector {
        assert_eq!(v.rank(), self.cols, "vector rank mismatch");
        let entries = (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(self.ring.zero(), |acc, j| {
                    let a = self.get(i, j);
                    if a.is_zero() {
                        acc
                    } else {
                        acc + a * v.get(j)
                    }
                })
            })
            .collect();
        FreeVector::new(self.ring, entries)
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut cols = self.columns();
        cols.extend(other.columns());
        Matrix::from_cols(self.ring, self.rows, &cols)
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { ring: self.ring, rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(LaurentPoly::is_zero)
    }

    pub fn entries(&self) -> &[LaurentPoly] {
        &self.data
    }

    pub fn reduce_mod(&self, m: u64) -> Matrix {
        Matrix {
            ring: self.ring.with_modulus(m),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| e.reduce_mod(m)).collect(),
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.ring)?;
        for i in 0..self.rows {
            writeln!(f, "  {}", self.row(i))?;
        }
        Ok(())
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

/// Submodule of `R^k` given by generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubmodulePresentation {
    #[serde(skip)]
    ring: Ring,
    rank: usize,
    generators: Vec<FreeVector>,
}

impl SubmodulePresentation {
    /// Zero generators are dropped.
    pub fn new(ring: Ring, rank: usize, generators: Vec<FreeVector>) -> Result<Self> {
        for g in &generators {
            if g.rank() != rank {
                return Err(Error::Shape(format!("generator rank {} in ambient rank {rank}", g.rank())));
            }
            if g.ring() != ring {
                return Err(RingError::MismatchedRing { left: g.ring(), right: ring }.into());
            }
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(SubmodulePresentation { ring, rank, generators })
    }

    pub fn zero(ring: Ring, rank: usize) -> Self {
        SubmodulePresentation { ring, rank, generators: Vec::new() }
    }

    pub fn full(ring: Ring, rank: usize) -> Self {
        let gens = (0..rank).map(|i| FreeVector::unit(ring, rank, i)).collect();
        SubmodulePresentation { ring, rank, generators: gens }
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        Self::new(m.ring(), m.rows(), m.columns()).expect("columns have matching rank")
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[FreeVector] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_cols(self.ring, self.rank, &self.generators)
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut g = self.generators.clone();
        g.extend(other.generators.iter().cloned());
        SubmodulePresentation { ring: self.ring, rank: self.rank, generators: g }
    }
}
