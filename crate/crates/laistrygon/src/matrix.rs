//! Small dense square matrices over `FieldElem`. Sizes here are tiny
//! (module dimensions and the 9x9 / 27x27 braiding matrices), so plain
//! Gaussian elimination with exact arithmetic is enough.

use crate::error::{Error, Result};
use crate::scalars::{FieldElem, QSpec};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    n: usize,
    a: Vec<FieldElem>,
    mode: QSpec,
}

impl Matrix {
    pub fn zero(n: usize, mode: &QSpec) -> Self {
        Matrix {
            n,
            a: vec![FieldElem::zero(mode); n * n],
            mode: mode.clone(),
        }
    }

    pub fn identity(n: usize, mode: &QSpec) -> Self {
        let mut m = Matrix::zero(n, mode);
        for i in 0..n {
            m.set(i, i, FieldElem::one(mode));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElem>>, mode: &QSpec) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidSpec("matrix must be square".into()));
        }
        Ok(Matrix {
            n,
            a: rows.into_iter().flatten().collect(),
            mode: mode.clone(),
        })
    }

    pub fn diagonal(diag: Vec<FieldElem>, mode: &QSpec) -> Self {
        let n = diag.len();
        let mut m = Matrix::zero(n, mode);
        for (i, d) in diag.into_iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> &QSpec {
        &self.mode
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElem {
        &self.a[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.a[i * self.n + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (x, y) in out.a.iter_mut().zip(&other.a) {
            *x = x.add(y)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (x, y) in out.a.iter_mut().zip(&other.a) {
            *x = x.sub(y)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &FieldElem) -> Result<Self> {
        let mut out = self.clone();
        for x in out.a.iter_mut() {
            *x = x.mul(c)?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Matrix::zero(n, &self.mode);
        for i in 0..n {
            for j in 0..n {
                let mut acc = FieldElem::zero(&self.mode);
                for k in 0..n {
                    if self.get(i, k).is_zero() || other.get(k, j).is_zero() {
                        continue;
                    }
                    acc = acc.add(&self.get(i, k).mul(other.get(k, j))?)?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Apply the matrix to a column vector.
    pub fn apply(&self, v: &[FieldElem]) -> Result<Vec<FieldElem>> {
        assert_eq!(v.len(), self.n);
        let mut out = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let mut acc = FieldElem::zero(&self.mode);
            for (k, x) in v.iter().enumerate() {
                if x.is_zero() || self.get(i, k).is_zero() {
                    continue;
                }
                acc = acc.add(&self.get(i, k).mul(x)?)?;
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        let n = self.n * other.n;
        let mut out = Matrix::zero(n, &self.mode);
        for i1 in 0..self.n {
            for j1 in 0..self.n {
                let c = self.get(i1, j1);
                if c.is_zero() {
                    continue;
                }
                for i2 in 0..other.n {
                    for j2 in 0..other.n {
                        let v = c.mul(other.get(i2, j2))?;
                        out.set(i1 * other.n + i2, j1 * other.n + j2, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Determinant by fraction-full Gaussian elimination (the field is
    /// exact, so pivots divide cleanly).
    pub fn det(&self) -> Result<FieldElem> {
        let n = self.n;
        let mut m = self.a.clone();
        let mut det = FieldElem::one(&self.mode);
        for col in 0..n {
            let pivot_row = (col..n).find(|&r| !m[r * n + col].is_zero());
            let Some(pr) = pivot_row else {
                return Ok(FieldElem::zero(&self.mode));
            };
            if pr != col {
                for j in 0..n {
                    m.swap(pr * n + j, col * n + j);
                }
                det = det.neg();
            }
            let pivot = m[col * n + col].clone();
            det = det.mul(&pivot)?;
            for r in (col + 1)..n {
                let factor = m[r * n + col].div(&pivot)?;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let delta = factor.mul(&m[col * n + j])?;
                    m[r * n + j] = m[r * n + j].sub(&delta)?;
                }
            }
        }
        Ok(det)
    }

    pub fn trace(&self) -> Result<FieldElem> {
        let mut acc = FieldElem::zero(&self.mode);
        for i in 0..self.n {
            acc = acc.add(self.get(i, i))?;
        }
        Ok(acc)
    }

    /// Entries as strings, row major.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Row space / span utilities over an exact field: maintains a reduced
/// basis and reports whether a vector enlarges it. Used by the module
/// closure computations.
pub struct Span {
    n: usize,
    mode: QSpec,
    rows: Vec<Vec<FieldElem>>,
    pivots: Vec<usize>,
}

impl Span {
    pub fn new(n: usize, mode: &QSpec) -> Self {
        Span {
            n,
            mode: mode.clone(),
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Insert a vector; returns true if the span grew.
    pub fn insert(&mut self, v: &[FieldElem]) -> Result<bool> {
        assert_eq!(v.len(), self.n);
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let factor = v[p].div(&row[p])?;
                for j in 0..self.n {
                    let delta = factor.mul(&row[j])?;
                    v[j] = v[j].sub(&delta)?;
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        self.rows.push(v);
        self.pivots.push(p);
        Ok(true)
    }

    pub fn mode(&self) -> &QSpec {
        &self.mode
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]], mode: &QSpec) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| FieldElem::from_int(x, mode)).collect())
                .collect(),
            mode,
        )
        .unwrap()
    }

    #[test]
    fn det_and_trace() {
        let g = QSpec::Generic;
        let a = m(&[&[1, 2], &[3, 4]], &g);
        assert_eq!(a.det().unwrap(), FieldElem::from_int(-2, &g));
        assert_eq!(a.trace().unwrap(), FieldElem::from_int(5, &g));
    }

    #[test]
    fn kron_dims() {
        let g = QSpec::Generic;
        let a = m(&[&[0, 1], &[1, 0]], &g);
        let k = a.kron(&Matrix::identity(3, &g)).unwrap();
        assert_eq!(k.dim(), 6);
        assert_eq!(k.get(0, 3), &FieldElem::one(&g));
    }

    #[test]
    fn span_growth() {
        let g = QSpec::Generic;
        let mut s = Span::new(3, &g);
        let e = |i: usize| {
            let mut v = vec![FieldElem::zero(&g); 3];
            v[i] = FieldElem::one(&g);
            v
        };
        assert!(s.insert(&e(0)).unwrap());
        assert!(s.insert(&e(1)).unwrap());
        assert!(!s.insert(&e(0)).unwrap());
        assert_eq!(s.dim(), 2);
    }
}
