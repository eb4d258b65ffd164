use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{Field, Scalar};

/// Dense matrix over a single exact field, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with the pivot column of each nonzero row.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|s| s.field() != field) {
            return Err(Error::MixedFields(field, bad.field()));
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Builds a matrix from rows; the field is taken from the entries (or `field` if empty).
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Matrix::new(field, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let data = rows
            .iter()
            .map(|row| row.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Matrix::from_rows(field, data).expect("rectangular integer rows")
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "entry from a different field");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::ShapeMismatch("column length".into()));
            }
            for (i, v) in col.iter().enumerate() {
                if v.field() != field {
                    return Err(Error::MixedFields(field, v.field()));
                }
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// `a = -a^T` with zero diagonal.
    pub fn is_alternating(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                self.get(i, i).is_zero() && (0..i).all(|j| *self.get(i, j) == -self.get(j, i))
            })
    }

    fn check_same(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::MixedFields(self.field, other.field));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same(other)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch("vector length".into()));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Matrix> {
        self.check_same(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch("elementwise shapes differ".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Matrix::new(self.field, self.rows, self.cols, data)
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// Outer product `u v^T`.
    pub fn outer(field: Field, u: &[Scalar], v: &[Scalar]) -> Matrix {
        let data = u.iter().flat_map(|a| v.iter().map(move |b| a * b)).collect();
        Matrix::new(field, u.len(), v.len(), data).expect("outer product shape")
    }

    /// Gauss-Jordan elimination; the pivot in each column is the first nonzero entry
    /// at or below the current row.
    pub fn echelon(&self) -> Echelon {
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
            m.swap_rows(r, p);
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
                    let sub = &factor * m.get(r, j);
                    if !sub.is_zero() {
                        let v = m.get(i, j) - &sub;
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { matrix: m, pivots }
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
        self.echelon().pivots.len()
    }

    /// Any exact solution of `self * x = rhs`, or `None` when the system is inconsistent.
    /// Free variables are set to zero.
    pub fn solve_linear(&self, rhs: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if rhs.len() != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "rhs of length {} for {} rows",
                rhs.len(),
                self.rows
            )));
        }
        if let Some(bad) = rhs.iter().find(|s| s.field() != self.field) {
            return Err(Error::MixedFields(self.field, bad.field()));
        }
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, rhs[i].clone());
        }
        let ech = aug.echelon();
        if ech.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &c) in ech.pivots.iter().enumerate() {
            x[c] = ech.matrix.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let ech = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !ech.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (r, &c) in ech.pivots.iter().enumerate() {
                    v[c] = -ech.matrix.get(r, f);
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let ech = aug.echelon();
        if ech.pivots.len() < n || ech.pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, ech.matrix.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Upper-left `rows x cols` block, zero-padded when larger than `self`.
    pub fn block(&self, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(self.field, rows, cols);
        for i in 0..rows.min(self.rows) {
            for j in 0..cols.min(self.cols) {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        m
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: Field = Field::Rationals;

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::zeros(Q, 3, 3).rank(), 0);
        assert_eq!(Matrix::identity(Q, 4).rank(), 4);
        assert_eq!(Matrix::from_i64(Q, &[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn solve_examples() {
        let b: Vec<Scalar> = [3, -1, 7].iter().map(|&v| Q.from_i64(v)).collect();
        assert_eq!(Matrix::identity(Q, 3).solve_linear(&b).unwrap(), Some(b.clone()));

        let m = Matrix::from_i64(Q, &[&[1, 1]]);
        assert_eq!(
            m.solve_linear(&[Q.from_i64(2)]).unwrap(),
            Some(vec![Q.from_i64(2), Q.from_i64(0)])
        );

        let m = Matrix::from_i64(Q, &[&[1], &[1]]);
        assert_eq!(m.solve_linear(&[Q.from_i64(1), Q.from_i64(2)]).unwrap(), None);
        assert!(m.solve_linear(&[Q.from_i64(1)]).is_err());
    }

    #[test]
    fn mixed_fields_rejected() {
        let f5 = Field::prime(5).unwrap();
        let rows = vec![vec![Q.from_i64(1), f5.from_i64(1)]];
        assert!(matches!(Matrix::from_rows(Q, rows), Err(Error::MixedFields(..))));
        let a = Matrix::identity(Q, 2);
        let b = Matrix::identity(f5, 2);
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn inverse_and_kernel() {
        let m = Matrix::from_i64(Q, &[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(Q, 2));
        let s = Matrix::from_i64(Q, &[&[1, 2, 3], &[2, 4, 6]]);
        let ker = s.kernel();
        assert_eq!(ker.len(), 2);
        for v in ker {
            assert!(s.mul_vec(&v).unwrap().iter().all(Scalar::is_zero));
        }
    }

    fn small_matrix(field: Field) -> impl Strategy<Value = Matrix> {
        (1usize..6, 1usize..6).prop_flat_map(move |(r, c)| {
            proptest::collection::vec(-3i64..4, r * c).prop_map(move |vals| {
                let data = vals.iter().map(|&v| field.from_i64(v)).collect();
                Matrix::new(field, r, c, data).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_is_transpose_invariant(m in small_matrix(Q)) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn solutions_are_exact(m in small_matrix(Q), seed in proptest::collection::vec(-3i64..4, 6)) {
            let x: Vec<Scalar> = (0..m.cols()).map(|j| Q.from_i64(seed[j])).collect();
            let rhs = m.mul_vec(&x).unwrap();
            let sol = m.solve_linear(&rhs).unwrap().expect("consistent by construction");
            prop_assert_eq!(m.mul_vec(&sol).unwrap(), rhs);
        }

        #[test]
        fn modular_rank_never_exceeds_rational(m in small_matrix(Q), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
            let fp = Field::prime(p).unwrap();
            let rows = m.to_rows().iter().map(|row| {
                row.iter().map(|s| fp.from_rational(s.as_rational().unwrap()).unwrap()).collect()
            }).collect();
            let reduced = Matrix::from_rows(fp, rows).unwrap();
            prop_assert!(reduced.rank() <= m.rank());
        }
    }
}
