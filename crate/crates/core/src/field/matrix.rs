//! Dense square matrices over the coefficient field.

use super::{BaseFunction, FieldError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionMatrix {
    n: usize,
    nvars: usize,
    entries: Vec<BaseFunction>,
}

impl FunctionMatrix {
    pub fn zero(n: usize, nvars: usize) -> Self {
        FunctionMatrix { n, nvars, entries: vec![BaseFunction::zero(nvars); n * n] }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        let mut m = Self::zero(n, nvars);
        for i in 0..n {
            m.set(i, i, BaseFunction::one(nvars));
        }
        m
    }

    pub fn from_rows(nvars: usize, rows: Vec<Vec<BaseFunction>>) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "matrix must be square");
            entries.extend(row);
        }
        FunctionMatrix { n, nvars, entries }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BaseFunction {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BaseFunction) {
        self.entries[i * self.n + j] = v;
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        let mut out = Self::zero(self.n, self.nvars);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = BaseFunction::zero(self.nvars);
                for k in 0..self.n {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * rhs.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.n, self.nvars);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Determinant by Gaussian elimination over the field.
    pub fn det(&self) -> BaseFunction {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = BaseFunction::one(self.nvars);
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return BaseFunction::zero(self.nvars);
            };
            if p != col {
                for j in 0..n {
                    a.swap(p * n + j, col * n + j);
                }
                det = -&det;
            }
            let pivot = a[col * n + col].clone();
            det = &det * &pivot;
            let inv = pivot.recip().expect("pivot is nonzero");
            for r in col + 1..n {
                if a[r * n + col].is_zero() {
                    continue;
                }
                let factor = &a[r * n + col] * &inv;
                for j in col..n {
                    let sub = &factor * &a[col * n + j];
                    a[r * n + j] = &a[r * n + j] - &sub;
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self, FieldError> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n, self.nvars);
        for col in 0..n {
            let p = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(FieldError::SingularMatrix)?;
            if p != col {
                for j in 0..n {
                    a.entries.swap(p * n + j, col * n + j);
                    inv.entries.swap(p * n + j, col * n + j);
                }
            }
            let pivot_inv = a.get(col, col).recip()?;
            for j in 0..n {
                let v = a.get(col, j) * &pivot_inv;
                a.set(col, j, v);
                let w = inv.get(col, j) * &pivot_inv;
                inv.set(col, j, w);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for j in 0..n {
                    let v = a.get(r, j) - &(&factor * a.get(col, j));
                    a.set(r, j, v);
                    let w = inv.get(r, j) - &(&factor * inv.get(col, j));
                    inv.set(r, j, w);
                }
            }
        }
        Ok(inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: usize, i: usize) -> BaseFunction {
        BaseFunction::var(n, i)
    }

    #[test]
    fn det_of_triangular() {
        let m = FunctionMatrix::from_rows(
            1,
            vec![vec![f(1, 0), BaseFunction::integer(1, 3)], vec![BaseFunction::zero(1), f(1, 0)]],
        );
        assert_eq!(m.det(), &f(1, 0) * &f(1, 0));
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let x = f(2, 0);
        let y = f(2, 1);
        let m = FunctionMatrix::from_rows(
            2,
            vec![vec![x.clone(), y.clone()], vec![BaseFunction::one(2), &x + &y]],
        );
        let inv = m.inverse().unwrap();
        assert_eq!(inv.mul(&m), FunctionMatrix::identity(2, 2));
        assert_eq!(m.mul(&inv), FunctionMatrix::identity(2, 2));
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let x = f(1, 0);
        let m = FunctionMatrix::from_rows(1, vec![vec![x.clone(), x.clone()], vec![x.clone(), x]]);
        assert!(m.det().is_zero());
        assert_eq!(m.inverse(), Err(FieldError::SingularMatrix));
    }
}
