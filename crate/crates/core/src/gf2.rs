//! Small dense matrices over GF(2) with rows packed into `u64` words.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A `rows × cols` matrix over GF(2), `cols <= 64`. Bit `j` of `rows[i]` is
/// entry `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gf2Matrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Result<Self> {
        if ncols > 64 {
            return Err(Error::ResourceCap {
                what: "GF(2) columns",
                value: ncols,
                cap: 64,
            });
        }
        Ok(Gf2Matrix {
            nrows,
            ncols,
            rows: vec![0; nrows],
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut id = Self::zeros(n, n)?;
        for (i, row) in id.rows.iter_mut().enumerate() {
            *row = 1 << i;
        }
        Ok(id)
    }

    pub fn from_rows(ncols: usize, rows: Vec<u64>) -> Result<Self> {
        let mut m = Self::zeros(0, ncols)?;
        let mask = col_mask(ncols);
        if let Some(r) = rows.iter().find(|&&r| r & !mask != 0) {
            return Err(Error::InvalidMatrix(format!(
                "row {r:#b} has bits beyond column {ncols}"
            )));
        }
        m.nrows = rows.len();
        m.rows = rows;
        Ok(m)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> u64 {
        assert!(i < self.nrows, "row {i} out of bounds ({} rows)", self.nrows);
        self.rows[i]
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(j < self.ncols, "column {j} out of bounds ({} cols)", self.ncols);
        self.row(i) >> j & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.nrows && j < self.ncols, "({i}, {j}) out of bounds");
        if value {
            self.rows[i] |= 1 << j;
        } else {
            self.rows[i] &= !(1 << j);
        }
    }

    pub fn transpose(&self) -> Result<Self> {
        let mut t = Self::zeros(self.ncols, self.nrows)?;
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                if self.get(i, j) {
                    t.rows[j] |= 1 << i;
                }
            }
        }
        Ok(t)
    }

    pub fn is_symmetric(&self) -> bool {
        self.nrows == self.ncols && self.transpose().is_ok_and(|t| t == *self)
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.ncols {
            let bit = 1u64 << col;
            let Some(p) = (rank..rows.len()).find(|&r| rows[r] & bit != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && *row & bit != 0 {
                    *row ^= pivot;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Dimension of the right null space.
    pub fn nullity(&self) -> usize {
        self.ncols - self.rank()
    }

    /// Inverse by Gauss–Jordan elimination, `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        if self.nrows != self.ncols {
            return None;
        }
        let n = self.nrows;
        let mut a = self.rows.clone();
        let mut inv: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
        for col in 0..n {
            let bit = 1u64 << col;
            let p = (col..n).find(|&r| a[r] & bit != 0)?;
            a.swap(col, p);
            inv.swap(col, p);
            for r in 0..n {
                if r != col && a[r] & bit != 0 {
                    a[r] ^= a[col];
                    inv[r] ^= inv[col];
                }
            }
        }
        Some(Gf2Matrix {
            nrows: n,
            ncols: n,
            rows: inv,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.ncols != other.nrows {
            return Err(Error::OrderMismatch {
                left: self.ncols,
                right: other.nrows,
            });
        }
        let mut out = Self::zeros(self.nrows, other.ncols)?;
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc = 0;
            let mut bits = *row;
            while bits != 0 {
                let k = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                acc ^= other.rows[k];
            }
            out.rows[i] = acc;
        }
        Ok(out)
    }
}

fn col_mask(ncols: usize) -> u64 {
    if ncols == 64 {
        u64::MAX
    } else {
        (1u64 << ncols) - 1
    }
}

impl fmt::Display for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
