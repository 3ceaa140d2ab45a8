use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::{self, Rat};

/// Dense row-major matrix of exact rationals.
///
/// Zero-sized dimensions are allowed; the 0×0 matrix is the natural result of
/// deleting every row and column and has determinant one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Integer matrix from nested rows. Panics on ragged input.
    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&v| rat::int(v)));
        }
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::new(n, cols, rows.into_iter().flatten().collect())
    }

    /// Column vector.
    pub fn column(entries: Vec<Rat>) -> Self {
        Self {
            rows: entries.len(),
            cols: 1,
            data: entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> impl Iterator<Item = &[Rat]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn entries(&self) -> &[Rat] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn row_sums(&self) -> Vec<Rat> {
        self.row_vecs()
            .map(|r| r.iter().fold(Rat::zero(), |acc, v| acc + v))
            .collect()
    }

    pub fn col_sums(&self) -> Vec<Rat> {
        let mut sums = vec![Rat::zero(); self.cols];
        for r in self.row_vecs() {
            for (s, v) in sums.iter_mut().zip(r) {
                *s += v;
            }
        }
        sums
    }

    pub fn total(&self) -> Rat {
        self.data.iter().fold(Rat::zero(), |acc, v| acc + v)
    }

    pub fn scale(&self, k: &Rat) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * k).collect(),
        }
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &Self, op: &str, f: impl Fn(&Rat, &Rat) -> Rat) -> Self {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in matrix {op}");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    /// `A[S1ᶜ, S2ᶜ]`: drops the listed rows and columns, keeping the order of
    /// the rest. Indices are 0-based.
    pub fn delete(&self, rows: &BTreeSet<usize>, cols: &BTreeSet<usize>) -> Result<Self> {
        if let Some(&r) = rows.iter().find(|&&r| r >= self.rows) {
            return Err(Error::IndexOutOfRange {
                index: r,
                size: self.rows,
            });
        }
        if let Some(&c) = cols.iter().find(|&&c| c >= self.cols) {
            return Err(Error::IndexOutOfRange {
                index: c,
                size: self.cols,
            });
        }
        let keep_r: Vec<usize> = (0..self.rows).filter(|r| !rows.contains(r)).collect();
        let keep_c: Vec<usize> = (0..self.cols).filter(|c| !cols.contains(c)).collect();
        Ok(self.select(&keep_r, &keep_c))
    }

    /// Submatrix on the given (0-based) row and column index lists, in order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| {
            self[(rows[i], cols[j])].clone()
        })
    }

    /// `P A Pᵀ` where row `i` of the result is row `order[i]` of `self`.
    pub fn permute_symmetric(&self, order: &[usize]) -> Self {
        self.select(order, order)
    }

    /// `diag(A, C)`.
    pub fn block_diag(a: &Self, c: &Self) -> Self {
        let mut out = Self::zeros(a.rows + c.rows, a.cols + c.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                out[(i, j)] = a[(i, j)].clone();
            }
        }
        for i in 0..c.rows {
            for j in 0..c.cols {
                out[(a.rows + i, a.cols + j)] = c[(i, j)].clone();
            }
        }
        out
    }

    /// Decimal rendering of every entry, row by row.
    pub fn to_decimal_rows(&self, places: usize) -> Vec<Vec<String>> {
        self.row_vecs()
            .map(|r| r.iter().map(|v| rat::to_decimal(v, places)).collect())
            .collect()
    }

    pub fn to_exact_rows(&self) -> Vec<Vec<String>> {
        self.row_vecs()
            .map(|r| r.iter().map(rat::to_exact_string).collect())
            .collect()
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rat;

    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;

    /// Panics on incompatible shapes; use [`RatMatrix::try_mul`] otherwise.
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        self.try_mul(rhs).unwrap()
    }
}

impl Add for &RatMatrix {
    type Output = RatMatrix;

    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        self.zip_with(rhs, "add", |a, b| a + b)
    }
}

impl Sub for &RatMatrix {
    type Output = RatMatrix;

    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        self.zip_with(rhs, "sub", |a, b| a - b)
    }
}

impl Neg for &RatMatrix {
    type Output = RatMatrix;

    fn neg(self) -> RatMatrix {
        self.scale(&-Rat::one())
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for r in self.row_vecs() {
            let cells: Vec<String> = r.iter().map(rat::to_exact_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}
