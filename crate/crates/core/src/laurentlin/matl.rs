use crate::cyclofield::{CycElt, CycField};
use crate::error::{Error, Result};
use crate::laurentlin::{LaurentPoly, Mat};

/// A dense matrix over the Laurent ring Q(ζ_N)[t, t⁻¹], stored row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatL {
    field: CycField,
    rows: usize,
    cols: usize,
    data: Vec<LaurentPoly>,
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

impl MatL {
    pub fn zeros(field: &CycField, rows: usize, cols: usize) -> MatL {
        MatL {
            field: field.clone(),
            rows,
            cols,
            data: vec![LaurentPoly::zero(field); rows * cols],
        }
    }

    pub fn identity(field: &CycField, n: usize) -> MatL {
        let mut m = MatL::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one(field));
        }
        m
    }

    pub fn from_fn(
        field: &CycField,
        rows: usize,
        cols: usize,
        f: impl Fn(usize, usize) -> LaurentPoly,
    ) -> MatL {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        MatL {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(field: &CycField, rows: Vec<Vec<LaurentPoly>>) -> Result<MatL> {
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != c) {
            return Err(Error::BadSize("ragged rows".into()));
        }
        let r = rows.len();
        Ok(MatL {
            field: field.clone(),
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// The constant matrix `m` scaled by `t^k`.
    pub fn from_mat(m: &Mat, k: i64) -> MatL {
        MatL::from_fn(m.field(), m.rows(), m.cols(), |i, j| {
            LaurentPoly::monomial(m.get(i, j).clone(), k)
        })
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

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        self.data[i * self.cols + j] = v;
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &MatL) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn checked_add(&self, other: &MatL) -> Result<MatL> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::BadSize("shape mismatch".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<_>>()?;
        Ok(MatL {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn checked_sub(&self, other: &MatL) -> Result<MatL> {
        self.checked_add(&other.scale(&-self.field.one()))
    }

    pub fn checked_mul(&self, other: &MatL) -> Result<MatL> {
        if self.cols != other.rows {
            return Err(Error::BadSize("inner dimensions differ".into()));
        }
        let mut out = MatL::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).checked_add(&a.checked_mul(b)?)?;
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &CycElt) -> MatL {
        MatL {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Entrywise evaluation at `t = μ`.
    pub fn eval(&self, mu: &CycElt) -> Result<Mat> {
        let entries: Vec<Vec<CycElt>> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j).eval(mu))
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;
        if self.rows == 0 {
            return Ok(Mat::zeros(&self.field, 0, self.cols));
        }
        Mat::from_rows(&self.field, entries)
    }

    pub fn substitute_inverse(&self) -> MatL {
        MatL {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(LaurentPoly::substitute_inverse)
                .collect(),
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> MatL {
        MatL::from_fn(&self.field, rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    /// Exact determinant by fraction-free Bareiss elimination.
    ///
    /// Each row is first multiplied by a power of `t` so that all entries are
    /// ordinary polynomials; the accumulated shift is undone at the end. The
    /// result is not normalized.
    pub fn det(&self) -> Result<LaurentPoly> {
        if self.rows != self.cols {
            return Err(Error::NonSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let zero = LaurentPoly::zero(&self.field);
        if n == 0 {
            return Ok(LaurentPoly::one(&self.field));
        }
        let mut a: Vec<Vec<LaurentPoly>> = Vec::with_capacity(n);
        let mut shift = 0i64;
        for i in 0..n {
            let row: Vec<LaurentPoly> = (0..n).map(|j| self.get(i, j).clone()).collect();
            let Some(lo) = row.iter().filter_map(LaurentPoly::min_exp).min() else {
                return Ok(zero);
            };
            shift += lo;
            a.push(row.iter().map(|p| p.shift(-lo)).collect());
        }
        let mut negate = false;
        let mut prev = LaurentPoly::one(&self.field);
        for k in 0..n - 1 {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(zero);
            };
            if p != k {
                a.swap(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num
                        .div_exact(&prev)?
                        .ok_or_else(|| Error::Internal("Bareiss division was not exact".into()))?;
                }
                a[i][k] = zero.clone();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].shift(shift);
        Ok(if negate { -&d } else { d })
    }

    /// Normalized gcd of all `k×k` minors; zero when every minor vanishes.
    ///
    /// Stops early once the running gcd is a unit.
    pub fn gcd_of_minors(&self, k: usize) -> Result<LaurentPoly> {
        if k == 0 || k > self.rows.min(self.cols) {
            return Err(Error::BadSize(format!(
                "minor size {k} invalid for a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let one = LaurentPoly::one(&self.field);
        let mut g = LaurentPoly::zero(&self.field);
        let col_sets = combinations(self.cols, k);
        for rs in combinations(self.rows, k) {
            for cs in &col_sets {
                let minor = self.submatrix(&rs, cs).det()?;
                if minor.is_zero() {
                    continue;
                }
                g = g.gcd(&minor)?;
                if g == one {
                    return Ok(g);
                }
            }
        }
        Ok(g)
    }
}
