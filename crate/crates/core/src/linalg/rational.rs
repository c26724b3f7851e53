use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{IntMatrix, LinalgError};

/// Dense matrix of exact rationals. `BigRational` keeps every entry in
/// lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigRational>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape");
        RatMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Dimension {
                op: "mul",
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn row_sums(&self) -> Vec<BigRational> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].clone()).sum())
            .collect()
    }

    /// Exact inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<RatMatrix, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = (c..n)
                .find(|&i| !a[(i, c)].is_zero())
                .ok_or(LinalgError::Singular)?;
            a.swap_rows(c, p);
            inv.swap_rows(c, p);
            let s = a[(c, c)].recip();
            a.scale_row(c, &s);
            inv.scale_row(c, &s);
            for i in 0..n {
                if i != c && !a[(i, c)].is_zero() {
                    let f = a[(i, c)].clone();
                    a.sub_row_multiple(i, c, &f);
                    inv.sub_row_multiple(i, c, &f);
                }
            }
        }
        Ok(inv)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    /// Least common multiple of the entry denominators: the smallest
    /// positive `k` with `k * self` integral.
    pub fn denominator_lcm(&self) -> BigInt {
        self.data
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    /// `k * self` as an integer matrix; `None` if some entry stays fractional.
    pub fn scaled_to_integer(&self, k: &BigInt) -> Option<IntMatrix> {
        let kr = BigRational::from_integer(k.clone());
        let mut data = Vec::with_capacity(self.data.len());
        for x in &self.data {
            let y = x * &kr;
            if !y.is_integer() {
                return None;
            }
            data.push(y.to_integer());
        }
        Some(IntMatrix::from_vec(self.rows, self.cols, data))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, s: &BigRational) {
        for j in 0..self.cols {
            let x = &mut self.data[r * self.cols + j];
            *x = &*x * s;
        }
    }

    fn sub_row_multiple(&mut self, target: usize, source: usize, f: &BigRational) {
        for j in 0..self.cols {
            let d = f * &self.data[source * self.cols + j];
            self.data[target * self.cols + j] -= d;
        }
    }
}

impl From<&IntMatrix> for RatMatrix {
    fn from(m: &IntMatrix) -> Self {
        RatMatrix {
            rows: m.rows(),
            cols: m.cols(),
            data: m
                .entries()
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect(),
        }
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = BigRational;

    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix {}x{} ", self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", cells[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn diagonal_inverse() {
        let m = RatMatrix::from_vec(2, 2, vec![rat(2, 1), rat(0, 1), rat(0, 1), rat(3, 1)]);
        let inv = m.inverse().unwrap();
        assert_eq!(
            inv,
            RatMatrix::from_vec(2, 2, vec![rat(1, 2), rat(0, 1), rat(0, 1), rat(1, 3)])
        );
        assert_eq!(
            RatMatrix::identity(4).inverse().unwrap(),
            RatMatrix::identity(4)
        );
    }

    #[test]
    fn singular_detected() {
        let m = RatMatrix::from(&IntMatrix::from_rows(&[[1, 2], [2, 4]]));
        assert_eq!(m.inverse(), Err(LinalgError::Singular));
    }

    #[test]
    fn tree_w0_inverse() {
        let w0 = IntMatrix::from_rows(&[
            [1, 1, 2, 4, 0],
            [1, 2, 4, 6, 0],
            [1, 3, 4, 10, 0],
            [1, 1, 3, 4, 1],
            [1, 1, 3, 4, -1],
        ]);
        let r = RatMatrix::from(&w0);
        assert_eq!(
            r.mul(&r.inverse().unwrap()).unwrap(),
            RatMatrix::identity(5)
        );
    }

    #[test]
    fn level_of_fractional_matrix() {
        let m = RatMatrix::from_vec(2, 2, vec![rat(1, 2), rat(1, 3), rat(1, 1), rat(-5, 6)]);
        assert_eq!(m.denominator_lcm(), BigInt::from(6));
        assert!(m.scaled_to_integer(&BigInt::from(3)).is_none());
        assert!(m.scaled_to_integer(&BigInt::from(6)).is_some());
    }

    proptest! {
        #[test]
        fn inverse_round_trip(entries in proptest::collection::vec(-9i64..=9, 16)) {
            let m = RatMatrix::from(&IntMatrix::from_vec(4, 4, entries.into_iter().map(BigInt::from).collect()));
            match m.inverse() {
                Ok(inv) => {
                    prop_assert_eq!(m.mul(&inv).unwrap(), RatMatrix::identity(4));
                    prop_assert_eq!(inv.mul(&m).unwrap(), RatMatrix::identity(4));
                }
                Err(e) => prop_assert_eq!(e, LinalgError::Singular),
            }
        }
    }
}
