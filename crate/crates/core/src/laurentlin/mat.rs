use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::cyclofield::{CycElt, CycField};
use crate::error::{Error, Result};

/// A dense matrix over Q(ζ_N), stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    field: CycField,
    rows: usize,
    cols: usize,
    data: Vec<CycElt>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Mat,
    pub pivots: Vec<usize>,
}

impl Mat {
    pub fn zeros(field: &CycField, rows: usize, cols: usize) -> Mat {
        Mat {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &CycField, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(
        field: &CycField,
        rows: usize,
        cols: usize,
        f: impl Fn(usize, usize) -> CycElt,
    ) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(field: &CycField, rows: Vec<Vec<CycElt>>) -> Result<Mat> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::BadSize(format!(
                    "ragged rows: expected {c} entries, got {}",
                    row.len()
                )));
            }
            for e in row {
                if e.field() != field {
                    return Err(Error::FieldMismatch(
                        field.conductor(),
                        e.field().conductor(),
                    ));
                }
                data.push(e);
            }
        }
        Ok(Mat {
            field: field.clone(),
            rows: r,
            cols: c,
            data,
        })
    }

    /// Integer-entry convenience constructor.
    pub fn from_ints(field: &CycField, rows: &[&[i64]]) -> Mat {
        let rs = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_int(x)).collect())
            .collect();
        Mat::from_rows(field, rs).expect("rectangular")
    }

    /// A matrix whose columns are the given vectors.
    pub fn from_columns(field: &CycField, rows: usize, columns: &[Vec<CycElt>]) -> Mat {
        Mat::from_fn(field, rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn column_vector(field: &CycField, v: &[CycElt]) -> Mat {
        Mat::from_columns(field, v.len(), &[v.to_vec()])
    }

    pub fn field(&self) -> &CycField {
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

    pub fn get(&self, i: usize, j: usize) -> &CycElt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycElt) {
        self.data[i * self.cols + j] = v;
    }

    /// Entries in row-major order; this is the `vec` used for matrix modules.
    pub fn entries(&self) -> &[CycElt] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<CycElt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<CycElt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CycElt::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    fn check_field(&self, other: &Mat) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.conductor(),
                other.field.conductor(),
            ));
        }
        Ok(())
    }

    pub fn checked_mul(&self, other: &Mat) -> Result<Mat> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::BadSize(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Mat::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &Mat, f: impl Fn(&CycElt, &CycElt) -> CycElt) -> Result<Mat> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::BadSize(format!(
                "shape mismatch {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(Mat {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn checked_add(&self, other: &Mat) -> Result<Mat> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Mat) -> Result<Mat> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn mul_vec(&self, v: &[CycElt]) -> Vec<CycElt> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, c: &CycElt) -> Mat {
        Mat {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(&self.field, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn trace(&self) -> Result<CycElt> {
        if !self.is_square() {
            return Err(Error::NonSquare(self.rows, self.cols));
        }
        let mut acc = self.field.zero();
        for i in 0..self.rows {
            acc = &acc + self.get(i, i);
        }
        Ok(acc)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Mat) -> Mat {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        Mat::from_fn(&self.field, r, c, |i, j| {
            self.get(i / other.rows, j / other.cols) * other.get(i % other.rows, j % other.cols)
        })
    }

    pub fn block_diag(&self, other: &Mat) -> Mat {
        let mut m = Mat::zeros(&self.field, self.rows + other.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, other);
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Mat) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        Mat::from_fn(&self.field, rows, cols, |i, j| {
            self.get(r0 + i, c0 + j).clone()
        })
    }

    pub fn vstack(field: &CycField, blocks: &[Mat]) -> Result<Mat> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut rows = Vec::new();
        for b in blocks {
            if b.cols != cols {
                return Err(Error::BadSize("vstack column mismatch".into()));
            }
            for i in 0..b.rows {
                rows.push(b.row(i));
            }
        }
        let rcount = rows.len();
        if rcount == 0 {
            return Ok(Mat::zeros(field, 0, cols));
        }
        Mat::from_rows(field, rows)
    }

    /// Reduced row echelon form by Gauss–Jordan elimination.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let pr = m.get(r, j);
                    if !pr.is_zero() {
                        let v = m.get(i, j) - &(&factor * pr);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right kernel `{v : self·v = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<CycElt>> {
        let Rref { matrix, pivots } = self.rref();
        let mut basis = Vec::new();
        let mut pivot_row = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            pivot_row[c] = Some(r);
        }
        for free in 0..self.cols {
            if pivot_row[free].is_some() {
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -matrix.get(r, free);
            }
            basis.push(v);
        }
        basis
    }

    /// Some solution of `self·x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[CycElt]) -> Option<Vec<CycElt>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let mut aug = Mat::zeros(&self.field, self.rows, self.cols + 1);
        aug.set_block(0, 0, self);
        for (i, x) in b.iter().enumerate() {
            aug.set(i, self.cols, x.clone());
        }
        let Rref { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = matrix.get(r, self.cols).clone();
        }
        Some(x)
    }

    /// True when `v` lies in the column space.
    pub fn column_space_contains(&self, v: &[CycElt]) -> bool {
        self.solve(v).is_some()
    }

    pub fn inverse(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::NonSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut aug = Mat::zeros(&self.field, n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &Mat::identity(&self.field, n));
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::DivisionByZero);
        }
        Ok(matrix.block(0, n, n, n))
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> Result<CycElt> {
        if !self.is_square() {
            return Err(Error::NonSquare(self.rows, self.cols));
        }
        let mut m = self.clone();
        let n = self.rows;
        let mut det = self.field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(self.field.zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv()?;
            for i in c + 1..n {
                let factor = m.get(i, c) * &inv;
                if factor.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j) - &(&factor * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Integer power; negative exponents use the inverse.
    pub fn pow(&self, e: i64) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::NonSquare(self.rows, self.cols));
        }
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Mat::identity(&self.field, self.rows);
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{self}")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Mat> for &Mat {
            type Output = Mat;
            fn $method(self, rhs: &Mat) -> Mat {
                self.$checked(rhs).expect("matrix shape or field mismatch")
            }
        }
        impl $tr<Mat> for Mat {
            type Output = Mat;
            fn $method(self, rhs: Mat) -> Mat {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        Mat {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}
