//! Exact dense and sparse linear algebra over cyclotomic fields.
//!
//! Everything here is plain Gaussian elimination with exact division;
//! matrices stay small (regular representations of desk-scale algebras),
//! so no fraction-free tricks are needed.

use crate::cyclo::CycNum;
use crate::{Error, Result};

/// Dense row-major matrix over `Q(zeta_M)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<CycNum>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize, modulus: u32) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![CycNum::zero(modulus); rows * cols],
        }
    }

    pub fn identity(n: usize, modulus: u32) -> Self {
        let mut m = Self::zero(n, n, modulus);
        for i in 0..n {
            m.set(i, i, CycNum::one(modulus));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &CycNum {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: CycNum) {
        self.data[r * self.cols + c] = v;
    }

    pub fn data(&self) -> &[CycNum] {
        &self.data
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        assert_eq!(self.cols, other.rows);
        let m = self.data[0].modulus();
        let mut out = Matrix::zero(self.rows, other.cols, m);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let t = a.mul(b)?;
                    let cur = out.at(i, j).add(&t)?;
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a = a.sub(b)?;
        }
        Ok(out)
    }

    pub fn scale(&self, s: &CycNum) -> Result<Matrix> {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = a.mul(s)?;
        }
        Ok(out)
    }

    /// Subtract `lambda` from the diagonal.
    pub fn shift_diag(&self, lambda: &CycNum) -> Result<Matrix> {
        assert_eq!(self.rows, self.cols);
        let mut out = self.clone();
        for i in 0..self.rows {
            let v = out.at(i, i).sub(lambda)?;
            out.set(i, i, v);
        }
        Ok(out)
    }

    /// Rank by Gaussian elimination with exact division.
    pub fn rank(&self) -> Result<usize> {
        let mut a = self.clone();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..a.cols {
            // find pivot
            let mut piv = None;
            for r in row..a.rows {
                if !a.at(r, col).is_zero() {
                    piv = Some(r);
                    break;
                }
            }
            let Some(p) = piv else { continue };
            a.swap_rows(row, p);
            let inv = a.at(row, col).inv()?;
            for r in (row + 1)..a.rows {
                if a.at(r, col).is_zero() {
                    continue;
                }
                let factor = a.at(r, col).mul(&inv)?;
                for c in col..a.cols {
                    let t = a.at(row, c).mul(&factor)?;
                    let v = a.at(r, c).sub(&t)?;
                    a.set(r, c, v);
                }
            }
            rank += 1;
            row += 1;
            if row == a.rows {
                break;
            }
        }
        Ok(rank)
    }

    pub fn nullity(&self) -> Result<usize> {
        Ok(self.cols - self.rank()?)
    }

    /// Exact determinant (square matrices).
    pub fn det(&self) -> Result<CycNum> {
        assert_eq!(self.rows, self.cols);
        let m = self.data[0].modulus();
        let mut a = self.clone();
        let mut det = CycNum::one(m);
        for col in 0..a.cols {
            let mut piv = None;
            for r in col..a.rows {
                if !a.at(r, col).is_zero() {
                    piv = Some(r);
                    break;
                }
            }
            let Some(p) = piv else {
                return Ok(CycNum::zero(m));
            };
            if p != col {
                a.swap_rows(col, p);
                det = det.neg();
            }
            let pivot = a.at(col, col).clone();
            det = det.mul(&pivot)?;
            let inv = pivot.inv()?;
            for r in (col + 1)..a.rows {
                if a.at(r, col).is_zero() {
                    continue;
                }
                let factor = a.at(r, col).mul(&inv)?;
                for c in col..a.cols {
                    let t = a.at(col, c).mul(&factor)?;
                    let v = a.at(r, c).sub(&t)?;
                    a.set(r, c, v);
                }
            }
        }
        Ok(det)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Projective canonical form: scale so the first nonzero entry in
    /// row-major order becomes 1. Errors on the zero matrix.
    pub fn projective_canonical(&self) -> Result<Matrix> {
        let first = self
            .data
            .iter()
            .find(|v| !v.is_zero())
            .ok_or(Error::DivisionByZero(self.data[0].modulus()))?;
        self.scale(&first.inv()?)
    }

    pub fn is_identity(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.at(i, j);
                if i == j {
                    if !v.is_one() {
                        return false;
                    }
                } else if !v.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// One nonzero entry per row and per column, each a (possibly negated)
    /// root of unity.
    pub fn is_generalized_permutation(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let mut row_seen = vec![false; self.rows];
        for c in 0..self.cols {
            let mut hits = 0;
            for r in 0..self.rows {
                let v = self.at(r, c);
                if !v.is_zero() {
                    hits += 1;
                    if row_seen[r] || v.as_signed_root().is_none() {
                        return false;
                    }
                    row_seen[r] = true;
                }
            }
            if hits != 1 {
                return false;
            }
        }
        true
    }
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{}  ", self.at(r, c))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Column-sparse square matrix; columns hold sorted `(row, value)` pairs.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    n: usize,
    modulus: u32,
    cols: Vec<Vec<(usize, CycNum)>>,
}

impl SparseMatrix {
    pub fn zero(n: usize, modulus: u32) -> Self {
        SparseMatrix {
            n,
            modulus,
            cols: vec![Vec::new(); n],
        }
    }

    pub fn identity(n: usize, modulus: u32) -> Self {
        let mut m = Self::zero(n, modulus);
        for i in 0..n {
            m.cols[i].push((i, CycNum::one(modulus)));
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn push(&mut self, row: usize, col: usize, v: CycNum) {
        if !v.is_zero() {
            self.cols[col].push((row, v));
        }
    }

    fn normalize(&mut self) {
        for col in self.cols.iter_mut() {
            col.sort_by_key(|(r, _)| *r);
        }
    }

    pub fn add(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        assert_eq!(self.n, other.n);
        let mut out = SparseMatrix::zero(self.n, self.modulus);
        for c in 0..self.n {
            let mut col: std::collections::BTreeMap<usize, CycNum> = std::collections::BTreeMap::new();
            for (r, v) in self.cols[c].iter().chain(other.cols[c].iter()) {
                match col.remove(r) {
                    Some(cur) => {
                        let s = cur.add(v)?;
                        if !s.is_zero() {
                            col.insert(*r, s);
                        }
                    }
                    None => {
                        col.insert(*r, v.clone());
                    }
                }
            }
            out.cols[c] = col.into_iter().collect();
        }
        Ok(out)
    }

    pub fn scale(&self, s: &CycNum) -> Result<SparseMatrix> {
        let mut out = self.clone();
        for col in out.cols.iter_mut() {
            for (_, v) in col.iter_mut() {
                *v = v.mul(s)?;
            }
            col.retain(|(_, v)| !v.is_zero());
        }
        Ok(out)
    }

    /// `self * other` (column-at-a-time).
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        assert_eq!(self.n, other.n);
        let mut out = SparseMatrix::zero(self.n, self.modulus);
        for c in 0..self.n {
            let mut acc: std::collections::BTreeMap<usize, CycNum> = std::collections::BTreeMap::new();
            for (k, w) in other.cols[c].iter() {
                for (r, v) in self.cols[*k].iter() {
                    let t = v.mul(w)?;
                    match acc.remove(r) {
                        Some(cur) => {
                            let s = cur.add(&t)?;
                            if !s.is_zero() {
                                acc.insert(*r, s);
                            }
                        }
                        None => {
                            if !t.is_zero() {
                                acc.insert(*r, t);
                            }
                        }
                    }
                }
            }
            out.cols[c] = acc.into_iter().collect();
        }
        Ok(out)
    }

    /// Kronecker product: `(A ⊗ B)[(ra*nb+rb), (ca*nb+cb)] = A[ra,ca] B[rb,cb]`.
    pub fn kron(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        let n = self.n * other.n;
        let mut out = SparseMatrix::zero(n, self.modulus);
        for ca in 0..self.n {
            for (ra, va) in self.cols[ca].iter() {
                for cb in 0..other.n {
                    for (rb, vb) in other.cols[cb].iter() {
                        out.push(ra * other.n + rb, ca * other.n + cb, va.mul(vb)?);
                    }
                }
            }
        }
        out.normalize();
        Ok(out)
    }

    pub fn eq_canonical(&self, other: &SparseMatrix) -> bool {
        let mut a = self.clone();
        let mut b = other.clone();
        a.normalize();
        b.normalize();
        a.cols == b.cols
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zero(self.n, self.n, self.modulus);
        for c in 0..self.n {
            for (r, v) in self.cols[c].iter() {
                m.set(*r, c, v.clone());
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn c(m: u32, n: i64) -> CycNum {
        CycNum::from_integer(m, n)
    }

    #[test]
    fn rank_and_det() {
        let m = 3;
        let mut a = Matrix::zero(2, 2, m);
        a.set(0, 0, c(m, 1));
        a.set(0, 1, c(m, 2));
        a.set(1, 0, c(m, 2));
        a.set(1, 1, c(m, 4));
        assert_eq!(a.rank().unwrap(), 1);
        assert!(a.det().unwrap().is_zero());
        assert_eq!(a.nullity().unwrap(), 1);

        let mut b = Matrix::zero(2, 2, m);
        b.set(0, 0, CycNum::root_of_unity(m, 1));
        b.set(0, 1, c(m, 1));
        b.set(1, 0, c(m, 0));
        b.set(1, 1, c(m, 5));
        assert_eq!(b.rank().unwrap(), 2);
        assert_eq!(
            b.det().unwrap(),
            CycNum::root_of_unity(m, 1).scale(&BigRational::from(BigInt::from(5)))
        );
    }

    #[test]
    fn projective_canonical_scales_first_entry() {
        let m = 4;
        let mut a = Matrix::zero(2, 2, m);
        a.set(0, 1, CycNum::root_of_unity(m, 1).scale(&BigRational::from(BigInt::from(2))));
        a.set(1, 0, c(m, 7));
        let canon = a.projective_canonical().unwrap();
        assert!(canon.at(0, 1).is_one());
        // scaling the input does not change the canonical form
        let scaled = a.scale(&CycNum::root_of_unity(m, 3)).unwrap();
        assert_eq!(scaled.projective_canonical().unwrap(), canon);
    }

    #[test]
    fn sparse_mul_matches_dense() {
        let m = 5;
        let mut a = SparseMatrix::zero(3, m);
        a.push(0, 1, CycNum::root_of_unity(m, 2));
        a.push(2, 0, c(m, 3));
        a.push(1, 2, c(m, -1));
        let mut b = SparseMatrix::zero(3, m);
        b.push(1, 1, c(m, 2));
        b.push(0, 2, CycNum::root_of_unity(m, 1));
        let ab = a.mul(&b).unwrap();
        let dense = a.to_dense().mul(&b.to_dense()).unwrap();
        assert_eq!(ab.to_dense(), dense);
    }

    #[test]
    fn kron_identity() {
        let m = 3;
        let i2 = SparseMatrix::identity(2, m);
        let i3 = SparseMatrix::identity(3, m);
        assert!(i2.kron(&i3).unwrap().eq_canonical(&SparseMatrix::identity(6, m)));
    }
}
