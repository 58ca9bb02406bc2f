//! Division-free determinants over the polynomial ring, and integer-matrix
//! utilities for the complementary minor formula.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::Polynomial;

/// Largest dimension accepted by the memoized expansion (table size is `2^dim`).
pub const MAX_DET_DIM: usize = 20;
/// Largest dimension accepted by the permutation-sum oracle.
pub const MAX_NAIVE_DIM: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DetError {
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension {dim} exceeds the limit of {max}")]
    TooLarge { dim: usize, max: usize },
    #[error("expected {expected} entries, got {got}")]
    EntryCount { expected: usize, got: usize },
    #[error("labels must be strictly increasing and match the dimension")]
    BadLabels,
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
}

/// A matrix of polynomials whose rows and columns carry the index-set
/// elements they came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
    row_labels: Vec<usize>,
    col_labels: Vec<usize>,
}

fn strictly_increasing(labels: &[usize]) -> bool {
    labels.windows(2).all(|w| w[0] < w[1])
}

impl PolyMatrix {
    pub fn new(
        entries: Vec<Polynomial>,
        row_labels: Vec<usize>,
        col_labels: Vec<usize>,
    ) -> Result<Self, DetError> {
        let (rows, cols) = (row_labels.len(), col_labels.len());
        if entries.len() != rows * cols {
            return Err(DetError::EntryCount {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        if !strictly_increasing(&row_labels) || !strictly_increasing(&col_labels) {
            return Err(DetError::BadLabels);
        }
        Ok(Self {
            rows,
            cols,
            entries,
            row_labels,
            col_labels,
        })
    }

    /// Builds a matrix by evaluating `f(row_label, col_label)`.
    pub fn from_labels<F>(
        row_labels: Vec<usize>,
        col_labels: Vec<usize>,
        mut f: F,
    ) -> Result<Self, DetError>
    where
        F: FnMut(usize, usize) -> Polynomial,
    {
        let entries = row_labels
            .iter()
            .flat_map(|&r| col_labels.iter().map(move |&c| (r, c)))
            .map(|(r, c)| f(r, c))
            .collect();
        Self::new(entries, row_labels, col_labels)
    }

    /// Row-major nested vectors with labels `0..rows` and `0..cols`.
    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Result<Self, DetError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(DetError::SizeMismatch("ragged rows".into()));
        }
        Self::new(
            rows.into_iter().flatten().collect(),
            (0..r).collect(),
            (0..c).collect(),
        )
    }

    pub fn identity(labels: Vec<usize>) -> Result<Self, DetError> {
        let n = labels.len();
        let entries = (0..n * n)
            .map(|k| {
                if k / n == k % n {
                    Polynomial::one()
                } else {
                    Polynomial::zero()
                }
            })
            .collect();
        Self::new(entries, labels.clone(), labels)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_labels(&self) -> &[usize] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[usize] {
        &self.col_labels
    }

    /// Entry by position (not label).
    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    /// Entry by row and column label.
    pub fn at_label(&self, r: usize, c: usize) -> Option<&Polynomial> {
        let ri = self.row_labels.binary_search(&r).ok()?;
        let ci = self.col_labels.binary_search(&c).ok()?;
        Some(self.get(ri, ci))
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<Polynomial>> {
        self.entries
            .chunks(self.cols.max(1))
            .take(self.rows)
            .map(<[_]>::to_vec)
            .collect()
    }

    /// Keeps the rows and columns with the given labels.
    pub fn submatrix(&self, row_labels: &[usize], col_labels: &[usize]) -> Result<Self, DetError> {
        let find = |labels: &[usize], l: usize| {
            labels
                .binary_search(&l)
                .map_err(|_| DetError::SizeMismatch(format!("label {l} not present")))
        };
        let ri: Vec<usize> = row_labels
            .iter()
            .map(|&l| find(&self.row_labels, l))
            .try_collect()?;
        let ci: Vec<usize> = col_labels
            .iter()
            .map(|&l| find(&self.col_labels, l))
            .try_collect()?;
        let entries = ri
            .iter()
            .flat_map(|&r| ci.iter().map(move |&c| self.get(r, c).clone()))
            .collect();
        Self::new(entries, row_labels.to_vec(), col_labels.to_vec())
    }

    pub fn transpose(&self) -> Self {
        let entries = (0..self.cols)
            .flat_map(|c| (0..self.rows).map(move |r| (r, c)))
            .map(|(r, c)| self.get(r, c).clone())
            .collect();
        Self {
            rows: self.cols,
            cols: self.rows,
            entries,
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
        }
    }

    /// Applies `f` to every entry, keeping labels.
    pub fn map<E, F>(&self, f: F) -> Result<Self, E>
    where
        F: FnMut(&Polynomial) -> Result<Polynomial, E>,
    {
        let entries = self.entries.iter().map(f).try_collect()?;
        Ok(Self {
            entries,
            ..self.clone()
        })
    }

    /// Swaps two rows by position; the labels stay attached to their positions.
    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix, DetError> {
        if self.cols != rhs.rows {
            return Err(DetError::SizeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = Polynomial::zero();
                for k in 0..self.cols {
                    let (a, b) = (self.get(r, k), rhs.get(k, c));
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                entries.push(acc);
            }
        }
        Self::new(entries, self.row_labels.clone(), rhs.col_labels.clone())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let e = self.get(r, c);
                    if r == c {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    fn require_square(&self, max: usize) -> Result<usize, DetError> {
        if self.rows != self.cols {
            return Err(DetError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows > max {
            return Err(DetError::TooLarge {
                dim: self.rows,
                max,
            });
        }
        Ok(self.rows)
    }

    /// Determinant by first-row Laplace expansion, memoized over column
    /// subsets: `O(2^n * n)` ring multiplications and no division.
    pub fn det(&self) -> Result<Polynomial, DetError> {
        let n = self.require_square(MAX_DET_DIM)?;
        // minors[S] = det of the last |S| rows restricted to the columns in S.
        let mut minors: Vec<Polynomial> = vec![Polynomial::zero(); 1 << n];
        minors[0] = Polynomial::one();
        for mask in 1usize..(1 << n) {
            let row = n - mask.count_ones() as usize;
            let mut acc = Polynomial::zero();
            let mut sign_negative = false;
            for col in 0..n {
                if mask & (1 << col) == 0 {
                    continue;
                }
                let entry = self.get(row, col);
                let rest = &minors[mask & !(1 << col)];
                if !entry.is_zero() && !rest.is_zero() {
                    let t = entry * rest;
                    if sign_negative {
                        acc = &acc - &t;
                    } else {
                        acc += t;
                    }
                }
                sign_negative = !sign_negative;
            }
            minors[mask] = acc;
        }
        Ok(minors.pop().expect("table has at least one slot"))
    }

    /// Leibniz permutation-sum determinant; an oracle for [`PolyMatrix::det`].
    pub fn det_naive(&self) -> Result<Polynomial, DetError> {
        let n = self.require_square(MAX_NAIVE_DIM)?;
        let mut total = Polynomial::zero();
        for perm in (0..n).permutations(n) {
            let mut term = Polynomial::one();
            for (r, &c) in perm.iter().enumerate() {
                let e = self.get(r, c);
                if e.is_zero() {
                    term = Polynomial::zero();
                    break;
                }
                term = &term * e;
            }
            if term.is_zero() {
                continue;
            }
            if permutation_is_odd(&perm) {
                total = &total - &term;
            } else {
                total += term;
            }
        }
        Ok(total)
    }
}

fn permutation_is_odd(perm: &[usize]) -> bool {
    let inversions = perm
        .iter()
        .enumerate()
        .flat_map(|(i, a)| perm[i + 1..].iter().filter(move |b| a > *b))
        .count();
    inversions % 2 == 1
}

/// A square matrix of arbitrary-precision integers, indexed from 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self, DetError> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(DetError::NotSquare {
                rows: dim,
                cols: bad.len(),
            });
        }
        Ok(Self {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self, DetError> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.dim + c]
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries
            .chunks(self.dim.max(1))
            .take(self.dim)
            .map(<[_]>::to_vec)
            .collect()
    }

    /// Determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> BigInt {
        let n = self.dim;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.rows();
        let mut prev = BigInt::one();
        let mut negate = false;
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        negate = !negate;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    /// Determinant of the rows `rs` and columns `cs` (both sorted index lists).
    pub fn minor(&self, rs: &[usize], cs: &[usize]) -> BigInt {
        let rows = rs
            .iter()
            .map(|&r| cs.iter().map(|&c| self.get(r, c).clone()).collect())
            .collect();
        IntMatrix::new(rows).expect("equal-size index lists").det()
    }

    /// The cofactor matrix, i.e. the transpose of the classical adjugate.
    pub fn cofactor_matrix(&self) -> IntMatrix {
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                let rs: Vec<usize> = (0..n).filter(|&i| i != r).collect();
                let cs: Vec<usize> = (0..n).filter(|&j| j != c).collect();
                let m = self.minor(&rs, &cs);
                entries.push(if (r + c) % 2 == 0 { m } else { -m });
            }
        }
        IntMatrix { dim: n, entries }
    }
}

fn check_index_set(set: &[usize], dim: usize) -> Result<(), DetError> {
    if !strictly_increasing(set) || set.iter().any(|&i| i >= dim) {
        return Err(DetError::SizeMismatch(format!(
            "index set {set:?} must be strictly increasing within 0..{dim}"
        )));
    }
    Ok(())
}

/// Checks the complementary minor formula in adjugate form:
///
/// `det(M[A,B]) * det(M)^(r-1) == (-1)^(ΣA+ΣB) * det(cof(M)[A^c,B^c])`
///
/// where `r = |A^c|` and `cof(M) = adj(M)^T`. This holds for singular `M` as
/// well. When `r = 0` the equivalent `det(M[A,B]) == det(M)` is checked.
pub fn jacobi_check(m: &IntMatrix, a_set: &[usize], b_set: &[usize]) -> Result<bool, DetError> {
    let dim = m.dim();
    if a_set.len() != b_set.len() {
        return Err(DetError::SizeMismatch(format!(
            "|A| = {} but |B| = {}",
            a_set.len(),
            b_set.len()
        )));
    }
    check_index_set(a_set, dim)?;
    check_index_set(b_set, dim)?;
    let a_comp: Vec<usize> = (0..dim).filter(|i| !a_set.contains(i)).collect();
    let b_comp: Vec<usize> = (0..dim).filter(|i| !b_set.contains(i)).collect();
    let r = a_comp.len();
    let lhs_minor = m.minor(a_set, b_set);
    let det = m.det();
    if r == 0 {
        return Ok(lhs_minor == det);
    }
    let lhs = lhs_minor * num_traits::pow(det, r - 1);
    let mut rhs = m.cofactor_matrix().minor(&a_comp, &b_comp);
    let sign_sum: usize = a_set.iter().chain(b_set).sum();
    if sign_sum % 2 == 1 {
        rhs = -rhs;
    }
    Ok(lhs == rhs)
}
