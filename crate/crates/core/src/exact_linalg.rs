//! Gaussian elimination over cyclotomic scalars.

use crate::error::{Error, Result};
use crate::scalar::Cyclotomic;

/// Dense row-major matrix with exact entries.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Cyclotomic>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Cyclotomic::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Cyclotomic::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Sizing("ragged rows".into()));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cyclotomic) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Sizing(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Cyclotomic::zero();
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b)?)?;
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> Result<(Self, Vec<usize>)> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, row * m.cols + j);
                }
            }
            let inv = m.get(row, col).inv()?;
            for j in col..m.cols {
                let v = m.get(row, j).mul(&inv)?;
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col).clone();
                for j in col..m.cols {
                    if m.get(row, j).is_zero() {
                        continue;
                    }
                    let v = m.get(r, j).sub(&f.mul(m.get(row, j))?)?;
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Ok((m, pivots))
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.rref()?.1.len())
    }

    /// Basis of the right null space, one vector per free column.
    pub fn null_space(&self) -> Result<Vec<Vec<Cyclotomic>>> {
        let (r, pivots) = self.rref()?;
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Cyclotomic::zero(); self.cols];
            v[free] = Cyclotomic::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = r.get(i, free).neg();
            }
            basis.push(v);
        }
        Ok(basis)
    }

    /// Solve `self · x = b` for square invertible `self`.
    pub fn solve(&self, b: &[Cyclotomic]) -> Result<Vec<Cyclotomic>> {
        if self.rows != self.cols || b.len() != self.rows {
            return Err(Error::Sizing("solve needs a square system".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, n + 1);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n, b[i].clone());
        }
        let (r, pivots) = aug.rref()?;
        if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
            return Err(Error::Domain("singular system".into()));
        }
        Ok((0..n).map(|i| r.get(i, n).clone()).collect())
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.rows;
        let mut out = Self::zeros(n, n);
        for j in 0..n {
            let mut e = vec![Cyclotomic::zero(); n];
            e[j] = Cyclotomic::one();
            let x = self.solve(&e)?;
            for (i, v) in x.into_iter().enumerate() {
                out.set(i, j, v);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64) -> Cyclotomic {
        Cyclotomic::rational(Rational::from_integer(n))
    }

    #[test]
    fn rank_and_null_space() {
        let i = Cyclotomic::root_of_unity(4, 1).unwrap();
        let m = ExactMatrix::from_rows(vec![
            vec![q(1), i.clone(), q(0)],
            vec![q(2), i.scale(&Rational::from_integer(2)).unwrap(), q(0)],
        ])
        .unwrap();
        assert_eq!(m.rank().unwrap(), 1);
        let ns = m.null_space().unwrap();
        assert_eq!(ns.len(), 2);
        for v in ns {
            let col = ExactMatrix::from_rows(v.into_iter().map(|x| vec![x]).collect()).unwrap();
            let p = m.mul(&col).unwrap();
            assert!((0..2).all(|r| p.get(r, 0).is_zero()));
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let w = Cyclotomic::root_of_unity(3, 1).unwrap();
        let m = ExactMatrix::from_rows(vec![vec![q(1), w.clone()], vec![w.conj().unwrap(), q(3)]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), ExactMatrix::identity(2));
    }
}
