//! Dense matrices over the active scalar domain.
//!
//! Exact domains get exact linear algebra: Gaussian elimination over the
//! rationals and prime residue fields, and fraction-free Bareiss
//! elimination over lifted integers for composite `Z_n` determinants.
//! Floating domains delegate determinants, eigenvalues and numerical rank
//! to nalgebra.

use nalgebra::{Complex, DMatrix};
use num::rational::BigRational;
use num::{BigInt, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Scalar, ScalarDomain};

#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    domain: ScalarDomain,
    data: Vec<Scalar>,
}

impl DenseMatrix {
    pub fn zeros(domain: ScalarDomain, rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            domain,
            data: vec![Scalar::zero(domain); rows * cols],
        }
    }

    pub fn identity(domain: ScalarDomain, n: usize) -> Self {
        let mut m = DenseMatrix::zeros(domain, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(domain));
        }
        m
    }

    pub fn from_fn(
        domain: ScalarDomain,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut m = DenseMatrix::zeros(domain, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn domain(&self) -> ScalarDomain {
        self.domain
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        debug_assert_eq!(v.domain(), self.domain);
        self.data[i * self.cols + j] = v;
    }

    pub fn add(&self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        DenseMatrix::from_fn(self.domain, self.rows, self.cols, |i, j| {
            self.get(i, j).add(rhs.get(i, j))
        })
    }

    pub fn sub(&self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        DenseMatrix::from_fn(self.domain, self.rows, self.cols, |i, j| {
            self.get(i, j).sub(rhs.get(i, j))
        })
    }

    pub fn scale(&self, s: &Scalar) -> DenseMatrix {
        DenseMatrix::from_fn(self.domain, self.rows, self.cols, |i, j| {
            self.get(i, j).mul(s)
        })
    }

    pub fn matmul(&self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, rhs.rows, "matmul shape mismatch");
        DenseMatrix::from_fn(self.domain, self.rows, rhs.cols, |i, j| {
            let mut acc = Scalar::zero(self.domain);
            for k in 0..self.cols {
                acc = acc.add(&self.get(i, k).mul(rhs.get(k, j)));
            }
            acc
        })
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero(self.domain);
                for j in 0..self.cols {
                    acc = acc.add(&self.get(i, j).mul(&v[j]));
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.domain, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn trace(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let mut acc = Scalar::zero(self.domain);
        for i in 0..self.rows {
            acc = acc.add(self.get(i, i));
        }
        acc
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn max_magnitude(&self) -> f64 {
        self.data.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    /// Determinant, exact over the exact domains.
    pub fn determinant(&self) -> Result<Scalar> {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        match self.domain {
            ScalarDomain::Real => Ok(Scalar::Real(self.to_na_f64()?.determinant())),
            ScalarDomain::Complex => {
                Ok(Scalar::Complex(self.to_na_c64().determinant()))
            }
            ScalarDomain::Rational => Ok(Scalar::Rational(self.rational_determinant())),
            ScalarDomain::Zmod(n) => {
                let det = self.bareiss_integer_determinant();
                let reduced = det.mod_floor_u64(n);
                Ok(Scalar::Zmod { value: reduced, modulus: n })
            }
        }
    }

    fn rational_determinant(&self) -> BigRational {
        let n = self.rows;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match self.get(i, j) {
                        Scalar::Rational(r) => r.clone(),
                        _ => unreachable!(),
                    })
                    .collect()
            })
            .collect();
        let mut det = BigRational::from_integer(BigInt::from(1));
        for col in 0..n {
            let Some(pivot_row) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return BigRational::zero();
            };
            if pivot_row != col {
                a.swap(pivot_row, col);
                det = -det;
            }
            let pivot = a[col][col].clone();
            det *= &pivot;
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = &a[r][col] / &pivot;
                for c in col..n {
                    let sub = &factor * &a[col][c];
                    a[r][c] -= sub;
                }
            }
        }
        det
    }

    /// Fraction-free Bareiss elimination over the integers; used to get
    /// exact `Z_n` determinants by lifting residues to `0..n`.
    fn bareiss_integer_determinant(&self) -> BigInt {
        let n = self.rows;
        if n == 0 {
            return BigInt::from(1);
        }
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match self.get(i, j) {
                        Scalar::Zmod { value, .. } => BigInt::from(*value),
                        _ => unreachable!(),
                    })
                    .collect()
            })
            .collect();
        let mut sign = 1i32;
        let mut prev = BigInt::from(1);
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(sw) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap(k, sw);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = num / &prev; // exact by Bareiss
                }
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        if sign < 0 {
            -det
        } else {
            det
        }
    }

    /// Basis of the null space. Exact elimination over the rationals and
    /// prime residue fields; SVD with relative threshold `1e-10` over the
    /// floating domains. Composite moduli are rejected (Z_n is not a field
    /// there, so a kernel *basis* is not defined).
    pub fn null_space(&self) -> Result<Vec<Vec<Scalar>>> {
        match self.domain {
            ScalarDomain::Rational => Ok(self.exact_null_space()),
            ScalarDomain::Zmod(n) => {
                if crate::scalar::factorize(n).len() == 1
                    && crate::scalar::factorize(n)[0].1 == 1
                {
                    Ok(self.exact_null_space())
                } else {
                    Err(Error::domain(format!(
                        "null space over Z_{n} requires a prime modulus (composite residue rings have no kernel basis)"
                    )))
                }
            }
            ScalarDomain::Real => {
                let m = self.to_na_f64()?;
                Ok(f64_null_space(&m)
                    .into_iter()
                    .map(|v| v.into_iter().map(Scalar::Real).collect())
                    .collect())
            }
            ScalarDomain::Complex => {
                let m = self.to_na_c64();
                Ok(c64_null_space(&m)
                    .into_iter()
                    .map(|v| v.into_iter().map(Scalar::Complex).collect())
                    .collect())
            }
        }
    }

    /// Reduced row echelon form kernel over an exact field (rationals or
    /// Z_p). Basis vectors are normalized with a 1 in each free column.
    fn exact_null_space(&self) -> Vec<Vec<Scalar>> {
        let (rows, cols) = (self.rows, self.cols);
        let mut a: Vec<Vec<Scalar>> = (0..rows)
            .map(|i| (0..cols).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut pivot_cols = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            let Some(pr) = (row..rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(row, pr);
            let inv = a[row][col].inv().expect("pivot invertible in a field");
            for c in col..cols {
                a[row][c] = a[row][c].mul(&inv);
            }
            for r in 0..rows {
                if r != row && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in col..cols {
                        let sub = f.mul(&a[row][c]);
                        a[r][c] = a[r][c].sub(&sub);
                    }
                }
            }
            pivot_cols.push(col);
            row += 1;
            if row == rows {
                break;
            }
        }
        let mut basis = Vec::new();
        for free in 0..cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![Scalar::zero(self.domain); cols];
            v[free] = Scalar::one(self.domain);
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = a[r][free].neg();
            }
            basis.push(v);
        }
        basis
    }

    pub fn to_na_f64(&self) -> Result<DMatrix<f64>> {
        let mut out = DMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self.get(i, j).to_f64().ok_or_else(|| {
                    Error::domain(format!(
                        "matrix entry ({i},{j}) is not real-valued ({})",
                        self.get(i, j)
                    ))
                })?;
            }
        }
        Ok(out)
    }

    pub fn to_na_c64(&self) -> DMatrix<Complex<f64>> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j)
                .to_c64()
                .expect("complex-convertible entry")
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            (0..self.rows)
                .map(|i| {
                    serde_json::Value::Array(
                        (0..self.cols).map(|j| self.get(i, j).to_json()).collect(),
                    )
                })
                .collect(),
        )
    }
}

trait ModFloor {
    fn mod_floor_u64(&self, n: u64) -> u64;
}

impl ModFloor for BigInt {
    fn mod_floor_u64(&self, n: u64) -> u64 {
        let n_big = BigInt::from(n);
        let mut r = self % &n_big;
        if r.is_negative() {
            r += &n_big;
        }
        r.to_u64().expect("reduced residue fits u64")
    }
}

/// Right-singular vectors of `m` whose singular values fall below
/// `1e-10 * sigma_max`. Wide matrices are padded with zero rows so the
/// thin SVD exposes all of V.
pub fn f64_null_space(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    let cols = m.ncols();
    let square = if m.nrows() < cols {
        let mut p = DMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (m.nrows(), cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = square.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let tol = 1e-10 * smax.max(1e-300);
    let mut basis = Vec::new();
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if s <= tol {
            basis.push((0..cols).map(|j| v_t[(k, j)]).collect());
        }
    }
    basis
}

pub fn c64_null_space(m: &DMatrix<Complex<f64>>) -> Vec<Vec<Complex<f64>>> {
    let cols = m.ncols();
    let square = if m.nrows() < cols {
        let mut p = DMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (m.nrows(), cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = square.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let tol = 1e-10 * smax.max(1e-300);
    let mut basis = Vec::new();
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if s <= tol {
            // kernel vectors are columns of V, i.e. conjugated rows of V^H
            basis.push((0..cols).map(|j| v_t[(k, j)].conj()).collect());
        }
    }
    basis
}
