use std::fmt;

use num_integer::Integer;

use super::{CycScalar, CycloError};
use crate::par::Execution;

/// Products smaller than this many scalar multiplications stay on one thread.
const PARALLEL_MUL_THRESHOLD: usize = 512;

/// A dense row-major matrix over a cyclotomic field; all entries share one conductor.
#[derive(Clone, Debug)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    conductor: u32,
    entries: Vec<CycScalar>,
}

/// Equal shapes and equal entries as field elements, whatever the conductors.
impl PartialEq for CycMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }
}

impl Eq for CycMatrix {}

impl CycMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<CycScalar>) -> Result<Self, CycloError> {
        if entries.len() != rows * cols {
            return Err(CycloError::DimensionMismatch {
                op: "construction",
                left: (rows, cols),
                right: (entries.len(), 1),
            });
        }
        let conductor = entries.iter().fold(1u32, |acc, x| acc.lcm(&x.conductor()));
        let entries = entries
            .into_iter()
            .map(|x| {
                if x.conductor() == conductor {
                    x
                } else {
                    x.embed(conductor).expect("lcm is a common multiple")
                }
            })
            .collect();
        Ok(CycMatrix {
            rows,
            cols,
            conductor: if conductor == 2 { 1 } else { conductor },
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<CycScalar>>) -> Result<Self, CycloError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(CycloError::DimensionMismatch {
                op: "construction",
                left: (r, c),
                right: (r, 0),
            });
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> CycScalar) -> Self {
        let mut f = f;
        let entries = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Self::new(rows, cols, entries).expect("sized by construction")
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| CycScalar::from_int((i == j) as i64))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| CycScalar::zero())
    }

    pub fn diagonal(diag: &[CycScalar]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                diag[i].clone()
            } else {
                CycScalar::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycScalar {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[CycScalar] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[CycScalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    fn check_same_shape(&self, other: &Self, op: &'static str) -> Result<(), CycloError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(CycloError::DimensionMismatch {
                op,
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, CycloError> {
        self.check_same_shape(other, "add")?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Self::new(self.rows, self.cols, entries)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CycloError> {
        self.check_same_shape(other, "sub")?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Self::new(self.rows, self.cols, entries)
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        let entries = self.entries.iter().map(|x| x * c).collect();
        Self::new(self.rows, self.cols, entries).expect("shape preserved")
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        let entries = self.entries.iter().map(CycScalar::conj).collect();
        Self::new(self.rows, self.cols, entries).expect("shape preserved")
    }

    pub fn mul(&self, other: &Self) -> Result<Self, CycloError> {
        self.mul_with(other, Execution::default())
    }

    pub fn mul_with(&self, other: &Self, exec: Execution) -> Result<Self, CycloError> {
        if self.cols != other.rows {
            return Err(CycloError::DimensionMismatch {
                op: "mul",
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let (n, m, k) = (self.rows, other.cols, self.cols);
        let exec = if n * m * k >= PARALLEL_MUL_THRESHOLD {
            exec
        } else {
            Execution::Sequential
        };
        let entry = |idx: usize| {
            let (i, j) = (idx / m, idx % m);
            let mut acc = CycScalar::zero();
            for t in 0..k {
                let a = self.get(i, t);
                if a.is_zero() {
                    continue;
                }
                let b = other.get(t, j);
                if b.is_zero() {
                    continue;
                }
                acc = &acc + &(a * b);
            }
            acc
        };
        let entries = exec.map_range(n * m, entry);
        Self::new(n, m, entries)
    }

    /// Integer power by repeated squaring; negative exponents use the exact inverse.
    pub fn pow(&self, e: i64) -> Result<Self, CycloError> {
        if !self.is_square() {
            return Err(CycloError::NotSquare(self.rows, self.cols));
        }
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        if let Some(diag) = base.as_diagonal() {
            let powered: Result<Vec<_>, _> = diag
                .iter()
                .map(|d| d.pow(e.unsigned_abs() as i64))
                .collect();
            return Ok(Self::diagonal(&powered?));
        }
        let mut e = e.unsigned_abs();
        let mut acc = Self::identity(self.rows);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// The diagonal entries, when every off-diagonal entry is zero.
    pub fn as_diagonal(&self) -> Option<Vec<CycScalar>> {
        if !self.is_square() {
            return None;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j && !self.get(i, j).is_zero() {
                    return None;
                }
            }
        }
        Some((0..self.rows).map(|i| self.get(i, i).clone()).collect())
    }

    pub fn trace(&self) -> Result<CycScalar, CycloError> {
        if !self.is_square() {
            return Err(CycloError::NotSquare(self.rows, self.cols));
        }
        Ok(CycScalar::sum((0..self.rows).map(|i| self.get(i, i))))
    }

    /// Exact inverse by Gauss–Jordan elimination over the field.
    pub fn inverse(&self) -> Result<Self, CycloError> {
        if !self.is_square() {
            return Err(CycloError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut a: Vec<Vec<CycScalar>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut inv: Vec<Vec<CycScalar>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| CycScalar::from_int((i == j) as i64))
                    .collect()
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(CycloError::SingularMatrix)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].inv()?;
            for j in 0..n {
                a[col][j] = &a[col][j] * &p;
                inv[col][j] = &inv[col][j] * &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &f * &a[col][j];
                    a[r][j] = &a[r][j] - &t;
                    let u = &f * &inv[col][j];
                    inv[r][j] = &inv[r][j] - &u;
                }
            }
        }
        Self::from_rows(inv)
    }

    /// Returns `σ` with `M[i][σ(i)] = 1` when the matrix is a 0/1 permutation matrix.
    pub fn is_permutation(&self) -> Option<Vec<usize>> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut perm = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for i in 0..n {
            let mut hit = None;
            for j in 0..n {
                let x = self.get(i, j);
                if x.is_zero() {
                    continue;
                }
                if !x.is_one() || hit.is_some() {
                    return None;
                }
                hit = Some(j);
            }
            let j = hit?;
            if seen[j] {
                return None;
            }
            seen[j] = true;
            perm.push(j);
        }
        Some(perm)
    }

    pub fn is_identity(&self) -> bool {
        self.is_permutation()
            .is_some_and(|p| p.iter().enumerate().all(|(i, &j)| i == j))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// The principal submatrix on the given (ordered) index set.
    pub fn principal_submatrix(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), idx.len(), |i, j| {
            self.get(idx[i], idx[j]).clone()
        })
    }

    /// The permutation matrix with ones at `(i, σ(i))`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        Self::from_fn(n, n, |i, j| CycScalar::from_int((perm[i] == j) as i64))
    }
}

impl fmt::Display for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn m(rows: &[&[i64]]) -> CycMatrix {
        CycMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| CycScalar::from_int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn hadamard_inverse() {
        let h = m(&[&[1, 1], &[1, -1]]);
        let half = CycScalar::from_rational(BigRational::new(1.into(), 2.into()));
        assert_eq!(h.inverse().unwrap(), h.scale(&half));
        assert!(h.mul(&h.inverse().unwrap()).unwrap().is_identity());
    }

    #[test]
    fn singular_and_mismatch() {
        assert_eq!(
            m(&[&[1, 1], &[1, 1]]).inverse(),
            Err(CycloError::SingularMatrix)
        );
        let a = m(&[&[1, 2, 3]]);
        assert!(matches!(
            a.mul(&a),
            Err(CycloError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn trace_and_identity() {
        for n in 1..5 {
            assert_eq!(
                CycMatrix::identity(n).trace().unwrap(),
                CycScalar::from_int(n as i64)
            );
        }
    }

    #[test]
    fn permutations() {
        let p = m(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        assert_eq!(p.is_permutation(), Some(vec![1, 2, 0]));
        assert_eq!(CycMatrix::permutation(&[1, 2, 0]), p);
        assert_eq!(m(&[&[0, 2], &[1, 0]]).is_permutation(), None);
        assert_eq!(m(&[&[1, 1], &[0, 0]]).is_permutation(), None);
    }

    #[test]
    fn pow_and_mixed_conductors() {
        let i = CycScalar::zeta(4, 1).unwrap();
        let z8 = CycScalar::zeta(8, 1).unwrap();
        let a = CycMatrix::from_rows(vec![
            vec![CycScalar::zero(), i.clone()],
            vec![z8.clone(), CycScalar::one()],
        ])
        .unwrap();
        assert_eq!(a.conductor(), 8);
        let a3 = a.pow(3).unwrap();
        assert_eq!(a3, a.mul(&a).unwrap().mul(&a).unwrap());
        let back = a3.mul(&a.pow(-3).unwrap()).unwrap();
        assert!(back.is_identity());
        assert!(a.pow(0).unwrap().is_identity());
        let t = CycMatrix::diagonal(&[i.clone(), z8.clone()]);
        assert_eq!(t.pow(-5).unwrap(), t.inverse().unwrap().pow(5).unwrap());
    }

    #[test]
    fn sequential_and_parallel_products_agree() {
        let z = CycScalar::zeta(5, 1).unwrap();
        let a = CycMatrix::from_fn(9, 9, |i, j| z.pow((i * j) as i64).unwrap());
        let b = CycMatrix::from_fn(9, 9, |i, j| CycScalar::from_int(i as i64 - j as i64));
        assert_eq!(
            a.mul_with(&b, Execution::Sequential).unwrap(),
            a.mul_with(&b, Execution::Parallel).unwrap()
        );
    }
}
