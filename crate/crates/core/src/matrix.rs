//! Dense row-major matrices of polynomials; just enough linear algebra for
//! differentials, minors and presentations.

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::poly::{PolyRing, Polynomial};
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Arc<PolyRing>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zero(ring: &Arc<PolyRing>, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![Polynomial::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: &Arc<PolyRing>, n: usize) -> Self {
        let mut m = PolyMatrix::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, Polynomial::one(ring));
        }
        m
    }

    pub fn from_rows(ring: &Arc<PolyRing>, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::invalid(format!(
                    "ragged matrix: row {i} has {} entries, expected {ncols}",
                    row.len()
                )));
            }
            for p in &row {
                if !Arc::ptr_eq(p.ring(), ring) && *p.ring().as_ref() != *ring.as_ref() {
                    return Err(Error::RingMismatch("matrix entry from another ring".into()));
                }
            }
            entries.extend(row);
        }
        Ok(PolyMatrix { ring: ring.clone(), rows: nrows, cols: ncols, entries })
    }

    pub fn from_cols(ring: &Arc<PolyRing>, rank: usize, cols: Vec<Vec<Polynomial>>) -> Result<Self> {
        let mut m = PolyMatrix::zero(ring, rank, cols.len());
        for (j, col) in cols.into_iter().enumerate() {
            if col.len() != rank {
                return Err(Error::invalid(format!(
                    "column {j} has {} entries, expected {rank}",
                    col.len()
                )));
            }
            for (i, p) in col.into_iter().enumerate() {
                m.set(i, j, p);
            }
        }
        Ok(m)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Polynomial) {
        self.entries[r * self.cols + c] = p;
    }

    pub fn col(&self, j: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Polynomial>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::invalid(format!(
                "shape mismatch: {}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = PolyMatrix::zero(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero(&self.ring);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    acc = acc.checked_add(&a.checked_mul(b)?)?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Append the columns of `other` on the right.
    pub fn hstack(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.rows != other.rows {
            return Err(Error::invalid("hstack with different row counts"));
        }
        let mut out = PolyMatrix::zero(&self.ring, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(out)
    }

    /// Determinant by expansion along the sparsest row. Only used on the
    /// small square matrices arising from minors.
    pub fn det(&self) -> Polynomial {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Polynomial::one(&self.ring);
        }
        if n == 1 {
            return self.get(0, 0).clone();
        }
        let live_rows: Vec<usize> = (0..n).collect();
        let live_cols: Vec<usize> = (0..n).collect();
        self.det_rec(&live_rows, &live_cols)
    }

    fn det_rec(&self, rows: &[usize], cols: &[usize]) -> Polynomial {
        let n = rows.len();
        if n == 0 {
            return Polynomial::one(&self.ring);
        }
        if n == 1 {
            return self.get(rows[0], cols[0]).clone();
        }
        // pick the row with the most zeros among the live columns
        let (best_idx, _) = rows
            .iter()
            .enumerate()
            .map(|(ri, &r)| {
                let zeros = cols.iter().filter(|&&c| self.get(r, c).is_zero()).count();
                (ri, zeros)
            })
            .max_by_key(|(_, z)| *z)
            .unwrap();
        let r = rows[best_idx];
        let sub_rows: Vec<usize> = rows
            .iter()
            .copied()
            .filter(|&x| x != r)
            .collect();
        let mut acc = Polynomial::zero(&self.ring);
        for (ci, &c) in cols.iter().enumerate() {
            let a = self.get(r, c);
            if a.is_zero() {
                continue;
            }
            let sub_cols: Vec<usize> = cols
                .iter()
                .copied()
                .filter(|&x| x != c)
                .collect();
            let minor = self.det_rec(&sub_rows, &sub_cols);
            let signed = if (best_idx + ci) % 2 == 0 { minor } else { minor.negate() };
            acc = acc.checked_add(&a.checked_mul(&signed).unwrap()).unwrap();
        }
        acc
    }

    /// Rank after substituting a scalar point for the variables, by Gaussian
    /// elimination over the field.
    pub fn rank_at_point(&self, point: &[FieldElement]) -> usize {
        let mut data: Vec<Vec<FieldElement>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).eval(point)).collect())
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let pivot = (rank..self.rows).find(|&r| !data[r][col].is_zero());
            let Some(p) = pivot else { continue };
            data.swap(rank, p);
            let inv = data[rank][col].inv();
            for entry in data[rank][col..].iter_mut() {
                *entry = entry.mul(&inv);
            }
            let pivot_row = data[rank].clone();
            for (r, row) in data.iter_mut().enumerate() {
                if r != rank && !row[col].is_zero() {
                    let factor = row[col].clone();
                    for (entry, pivot) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                        *entry = entry.sub(&factor.mul(pivot));
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn m2(entries: [[&str; 2]; 2]) -> PolyMatrix {
        let r = PolyRing::rational(&["x", "y"]);
        PolyMatrix::from_rows(
            &r,
            entries
                .iter()
                .map(|row| row.iter().map(|s| parse_polynomial(&r, s).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn det_upper_triangular() {
        let m = m2([["x", "y"], ["0", "x"]]);
        assert_eq!(m.det().to_string(), "x^2");
    }

    #[test]
    fn det_antisymmetric_swap() {
        let m = m2([["x", "y"], ["1", "1"]]);
        assert_eq!(m.det().to_string(), "x - y");
    }

    #[test]
    fn rank_at_generic_point() {
        let r = PolyRing::rational(&["x", "y"]);
        let m = m2([["x", "y"], ["0", "x"]]);
        let two = r.field().from_integer(2);
        let three = r.field().from_integer(3);
        assert_eq!(m.rank_at_point(&[two, three]), 2);
        let zero = r.field().zero();
        assert_eq!(m.rank_at_point(&[zero.clone(), zero]), 0);
    }
}
