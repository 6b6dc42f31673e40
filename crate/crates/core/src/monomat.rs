//! Signed permutation matrices and dense `{-1, 0, 1}` matrices with exact
//! integer arithmetic.
//!
//! Kronecker products use row-major blocks throughout: in `X ⊗ Y` the block
//! row and column come from `X`, so entry `(a·n_Y + b, c·n_Y + d)` is
//! `X[a][c] · Y[b][d]`.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::Sign;
use crate::error::{Error, Result};

/// Which sign convention a λ value is read in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// `X Yᵀ + λ Y Xᵀ = 0`, used for the `A` matrices.
    ASide,
    /// `X Yᵀ - λ Y Xᵀ = 0`, used for the `B` and `D` matrices.
    BSide,
}

/// A monomial `{-1, 0, 1}` matrix: row `i` has its only nonzero entry,
/// `signs[i]`, in column `perm[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MonomialRecord", into = "MonomialRecord")]
pub struct MonomialMatrix {
    perm: Vec<usize>,
    signs: Vec<Sign>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MonomialRecord {
    order: usize,
    perm: Vec<usize>,
    signs: Vec<Sign>,
}

impl TryFrom<MonomialRecord> for MonomialMatrix {
    type Error = Error;

    fn try_from(rec: MonomialRecord) -> Result<Self> {
        if rec.perm.len() != rec.order {
            return Err(Error::LengthMismatch {
                expected: rec.order,
                found: rec.perm.len(),
            });
        }
        MonomialMatrix::new(rec.perm, rec.signs)
    }
}

impl From<MonomialMatrix> for MonomialRecord {
    fn from(m: MonomialMatrix) -> Self {
        MonomialRecord {
            order: m.order(),
            perm: m.perm,
            signs: m.signs,
        }
    }
}

fn check_order(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::OrderMismatch { left, right });
    }
    Ok(())
}

impl MonomialMatrix {
    pub fn new(perm: Vec<usize>, signs: Vec<Sign>) -> Result<Self> {
        let n = perm.len();
        if n == 0 {
            return Err(Error::InvalidMatrix("order must be positive".into()));
        }
        if signs.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: signs.len(),
            });
        }
        let mut seen = vec![false; n];
        for &c in &perm {
            if c >= n || std::mem::replace(&mut seen[c], true) {
                return Err(Error::InvalidMatrix(format!(
                    "{perm:?} is not a permutation of 0..{n}"
                )));
            }
        }
        Ok(MonomialMatrix { perm, signs })
    }

    pub fn identity(n: usize) -> Self {
        MonomialMatrix {
            perm: (0..n).collect(),
            signs: vec![Sign::Plus; n],
        }
    }

    /// Diagonal matrix with the given signs.
    pub fn diagonal(signs: Vec<Sign>) -> Self {
        MonomialMatrix {
            perm: (0..signs.len()).collect(),
            signs,
        }
    }

    /// The matrix sending basis vector `e_c` to `sign · e_row` for each
    /// `(row, sign)` in `images[c]`.
    pub fn from_column_images(images: &[(usize, Sign)]) -> Result<Self> {
        let n = images.len();
        let mut perm = vec![usize::MAX; n];
        let mut signs = vec![Sign::Plus; n];
        for (c, &(row, s)) in images.iter().enumerate() {
            if row >= n || perm[row] != usize::MAX {
                return Err(Error::InvalidMatrix(format!(
                    "column images {images:?} do not form a permutation"
                )));
            }
            perm[row] = c;
            signs[row] = s;
        }
        MonomialMatrix::new(perm, signs)
    }

    /// Parses a small matrix written as rows of integers.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        let mut perm = Vec::with_capacity(n);
        let mut signs = Vec::with_capacity(n);
        for row in rows {
            if row.len() != n {
                return Err(Error::InvalidMatrix("matrix is not square".into()));
            }
            let nz: Vec<_> = row.iter().enumerate().filter(|(_, &v)| v != 0).collect();
            match nz.as_slice() {
                [(c, &v)] => {
                    perm.push(*c);
                    signs.push(Sign::try_from(v)?);
                }
                _ => {
                    return Err(Error::InvalidMatrix(format!(
                        "row {row:?} does not have exactly one nonzero entry"
                    )))
                }
            }
        }
        MonomialMatrix::new(perm, signs)
    }

    pub fn order(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn entry(&self, i: usize, j: usize) -> i8 {
        if self.perm[i] == j {
            self.signs[i].to_i8()
        } else {
            0
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_order(self.order(), other.order())?;
        let (perm, signs) = self
            .perm
            .iter()
            .zip(&self.signs)
            .map(|(&k, &s)| (other.perm[k], s * other.signs[k]))
            .unzip();
        Ok(MonomialMatrix { perm, signs })
    }

    pub fn transpose(&self) -> Self {
        let n = self.order();
        let mut perm = vec![0; n];
        let mut signs = vec![Sign::Plus; n];
        for (i, (&c, &s)) in self.perm.iter().zip(&self.signs).enumerate() {
            perm[c] = i;
            signs[c] = s;
        }
        MonomialMatrix { perm, signs }
    }

    pub fn neg(&self) -> Self {
        self.scaled(Sign::Minus)
    }

    pub fn scaled(&self, s: Sign) -> Self {
        MonomialMatrix {
            perm: self.perm.clone(),
            signs: self.signs.iter().map(|&x| x * s).collect(),
        }
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let m = other.order();
        let mut perm = Vec::with_capacity(self.order() * m);
        let mut signs = Vec::with_capacity(self.order() * m);
        for (&a, &sa) in self.perm.iter().zip(&self.signs) {
            for (&b, &sb) in other.perm.iter().zip(&other.signs) {
                perm.push(a * m + b);
                signs.push(sa * sb);
            }
        }
        MonomialMatrix { perm, signs }
    }

    /// `I_left ⊗ self ⊗ I_right`.
    pub fn embed(&self, left: usize, right: usize) -> Self {
        MonomialMatrix::identity(left)
            .tensor(self)
            .tensor(&MonomialMatrix::identity(right))
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &c)| i == c) && self.signs.iter().all(|&s| s == Sign::Plus)
    }

    /// `Some(s)` if `self = s · I`.
    pub fn scalar(&self) -> Option<Sign> {
        let s = self.signs[0];
        (self.perm.iter().enumerate().all(|(i, &c)| i == c) && self.signs.iter().all(|&x| x == s))
            .then_some(s)
    }

    pub fn is_symmetric(&self) -> bool {
        self.transpose() == *self
    }

    pub fn is_skew(&self) -> bool {
        self.transpose() == self.neg()
    }

    /// `Some(s)` if `self · other = s · other · self`.
    pub fn commutation_sign(&self, other: &Self) -> Result<Option<Sign>> {
        let xy = self.mul(other)?;
        let yx = other.mul(self)?;
        Ok(relative_sign(&xy, &yx))
    }

    /// Elementwise product; nonzero exactly where both supports meet.
    pub fn star(&self, other: &Self) -> Result<DenseSignMatrix> {
        check_order(self.order(), other.order())?;
        let n = self.order();
        let mut out = DenseSignMatrix::zeros(n);
        for i in 0..n {
            if self.perm[i] == other.perm[i] {
                out.set(i, self.perm[i], (self.signs[i] * other.signs[i]).to_i8());
            }
        }
        Ok(out)
    }

    pub fn supports_disjoint(&self, other: &Self) -> Result<bool> {
        check_order(self.order(), other.order())?;
        Ok(self.perm.iter().zip(&other.perm).all(|(a, b)| a != b))
    }

    pub fn to_dense(&self) -> DenseSignMatrix {
        let n = self.order();
        let mut d = DenseSignMatrix::zeros(n);
        for i in 0..n {
            d.set(i, self.perm[i], self.signs[i].to_i8());
        }
        d
    }

    /// `self · d`: row `i` is `signs[i]` times row `perm[i]` of `d`.
    pub fn mul_dense(&self, d: &DenseSignMatrix) -> Result<DenseSignMatrix> {
        check_order(self.order(), d.order())?;
        let n = self.order();
        let mut entries = Vec::with_capacity(n * n);
        for (&k, &s) in self.perm.iter().zip(&self.signs) {
            let v = s.to_i8();
            entries.extend(d.row(k).iter().map(|&x| x * v));
        }
        Ok(DenseSignMatrix { order: n, entries })
    }
}

/// `Some(s)` if `x = s · y`.
fn relative_sign(x: &MonomialMatrix, y: &MonomialMatrix) -> Option<Sign> {
    if x.perm != y.perm {
        return None;
    }
    let s = x.signs[0] * y.signs[0];
    x.signs
        .iter()
        .zip(&y.signs)
        .all(|(&a, &b)| a * b == s)
        .then_some(s)
}

/// The λ relating a pair in the given convention, or `None` if `X Yᵀ` is not
/// `±Y Xᵀ`.
pub fn lambda_of_pair(
    x: &MonomialMatrix,
    y: &MonomialMatrix,
    convention: Convention,
) -> Result<Option<Sign>> {
    check_order(x.order(), y.order())?;
    let xy = x.mul(&y.transpose())?;
    let yx = y.mul(&x.transpose())?;
    let b_side = relative_sign(&xy, &yx);
    Ok(match convention {
        Convention::BSide => b_side,
        Convention::ASide => b_side.map(|s| -s),
    })
}

impl fmt::Display for MonomialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_dense(), f)
    }
}

/// A square matrix with entries in `{-1, 0, 1}`. Serialized as an array of
/// rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct DenseSignMatrix {
    order: usize,
    entries: Vec<i8>,
}

impl TryFrom<Vec<Vec<i64>>> for DenseSignMatrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        DenseSignMatrix::from_rows(&rows)
    }
}

impl From<DenseSignMatrix> for Vec<Vec<i64>> {
    fn from(d: DenseSignMatrix) -> Self {
        (0..d.order)
            .map(|i| d.row(i).iter().map(|&x| x as i64).collect())
            .collect()
    }
}

impl DenseSignMatrix {
    pub fn zeros(order: usize) -> Self {
        DenseSignMatrix {
            order,
            entries: vec![0; order * order],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidMatrix("order must be positive".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::InvalidMatrix("matrix is not square".into()));
            }
            for &v in row {
                if !(-1..=1).contains(&v) {
                    return Err(Error::InvalidMatrix(format!("entry {v} is not in {{-1, 0, 1}}")));
                }
                entries.push(v as i8);
            }
        }
        Ok(DenseSignMatrix { order: n, entries })
    }

    /// Parses rows of `+`/`-` characters, one row per line.
    pub fn from_pm_text(text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                l.trim()
                    .chars()
                    .map(|c| match c {
                        '+' => Ok(1),
                        '-' => Ok(-1),
                        c => Err(Error::Parse(format!("unexpected character {c:?} in sign matrix"))),
                    })
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(&rows)
    }

    /// One line of `+`/`-` per row; fails if any entry is zero.
    pub fn to_pm_text(&self) -> Result<String> {
        if !self.is_sign_matrix() {
            return Err(Error::InvalidMatrix("matrix has zero entries".into()));
        }
        let mut out = String::with_capacity(self.order * (self.order + 1));
        for i in 0..self.order {
            out.extend(self.row(i).iter().map(|&x| if x > 0 { '+' } else { '-' }));
            out.push('\n');
        }
        Ok(out)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.order + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i8) {
        debug_assert!((-1..=1).contains(&v));
        self.entries[i * self.order + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i8] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub(crate) fn row_mut(&mut self, i: usize) -> &mut [i8] {
        &mut self.entries[i * self.order..(i + 1) * self.order]
    }

    /// All entries are `±1`.
    pub fn is_sign_matrix(&self) -> bool {
        self.entries.iter().all(|&x| x != 0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn neg(&self) -> Self {
        DenseSignMatrix {
            order: self.order,
            entries: self.entries.iter().map(|&x| -x).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let n = self.order;
        let mut t = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                t.entries[j * n + i] = self.entries[i * n + j];
            }
        }
        t
    }

    /// Entrywise sum; fails if an entry leaves `{-1, 0, 1}`.
    pub fn add(&self, other: &Self) -> Result<Self> {
        check_order(self.order, other.order)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| {
                let v = a + b;
                if (-1..=1).contains(&v) {
                    Ok(v)
                } else {
                    Err(Error::InvalidMatrix(format!("sum entry {v} is outside {{-1, 0, 1}}")))
                }
            })
            .collect::<Result<_>>()?;
        Ok(DenseSignMatrix {
            order: self.order,
            entries,
        })
    }

    pub fn star(&self, other: &Self) -> Result<Self> {
        check_order(self.order, other.order)?;
        Ok(DenseSignMatrix {
            order: self.order,
            entries: self.entries.iter().zip(&other.entries).map(|(&a, &b)| a * b).collect(),
        })
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let (n, m) = (self.order, other.order);
        let mut out = Self::zeros(n * m);
        for a in 0..n {
            for c in 0..n {
                let x = self.get(a, c);
                if x == 0 {
                    continue;
                }
                for b in 0..m {
                    let dst = (a * m + b) * n * m + c * m;
                    for (o, &y) in out.entries[dst..dst + m].iter_mut().zip(other.row(b)) {
                        *o = x * y;
                    }
                }
            }
        }
        out
    }

    /// `self · M` for a monomial `M`: column `perm[k]` is `signs[k]` times column `k`.
    pub fn mul_monomial(&self, m: &MonomialMatrix) -> Result<Self> {
        check_order(self.order, m.order())?;
        let n = self.order;
        let mut out = Self::zeros(n);
        for i in 0..n {
            let src = self.row(i);
            let dst = &mut out.entries[i * n..(i + 1) * n];
            for (k, (&c, &s)) in m.perm().iter().zip(m.signs()).enumerate() {
                dst[c] = src[k] * s.to_i8();
            }
        }
        Ok(out)
    }

    /// Exact integer product `self · other`.
    pub fn mul(&self, other: &Self) -> Result<IntMatrix> {
        self.mul_transpose(&other.transpose())
    }

    /// Exact integer product `self · otherᵀ`. Pure `±1` inputs go through a
    /// packed XOR/popcount kernel; anything else through checked `i64` sums.
    pub fn mul_transpose(&self, other: &Self) -> Result<IntMatrix> {
        check_order(self.order, other.order)?;
        let n = self.order;
        if self.is_sign_matrix() && other.is_sign_matrix() {
            let a = PackedRows::new(self);
            let b = PackedRows::new(other);
            let entries = (0..n)
                .into_par_iter()
                .flat_map_iter(|i| {
                    let (a, b) = (&a, &b);
                    (0..n).map(move |j| n as i64 - 2 * a.hamming(i, b, j) as i64)
                })
                .collect();
            return Ok(IntMatrix { order: n, entries });
        }
        let entries = (0..n)
            .into_par_iter()
            .map(|i| {
                (0..n)
                    .map(|j| {
                        self.row(i)
                            .iter()
                            .zip(other.row(j))
                            .try_fold(0i64, |acc, (&x, &y)| acc.checked_add((x * y) as i64))
                            .ok_or_else(|| Error::InvalidMatrix("integer overflow".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?
            .concat();
        Ok(IntMatrix { order: n, entries })
    }

    /// `self · selfᵀ`.
    pub fn gram(&self) -> Result<IntMatrix> {
        self.mul_transpose(self)
    }
}

/// Rows of a `±1` matrix packed as bits (1 for -1).
struct PackedRows {
    words: usize,
    bits: Vec<u64>,
}

impl PackedRows {
    fn new(d: &DenseSignMatrix) -> Self {
        let words = d.order.div_ceil(64);
        let mut bits = vec![0u64; words * d.order];
        for i in 0..d.order {
            for (j, &x) in d.row(i).iter().enumerate() {
                if x < 0 {
                    bits[i * words + j / 64] |= 1 << (j % 64);
                }
            }
        }
        PackedRows { words, bits }
    }

    fn hamming(&self, i: usize, other: &PackedRows, j: usize) -> u32 {
        let a = &self.bits[i * self.words..(i + 1) * self.words];
        let b = &other.bits[j * other.words..(j + 1) * other.words];
        a.iter().zip(b).map(|(x, y)| (x ^ y).count_ones()).sum()
    }
}

impl fmt::Display for DenseSignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.order {
            let row: Vec<String> = self.row(i).iter().map(|x| format!("{x:2}")).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// The λ relating two dense matrices in the given convention.
pub fn lambda_of_dense_pair(
    x: &DenseSignMatrix,
    y: &DenseSignMatrix,
    convention: Convention,
) -> Result<Option<Sign>> {
    let xy = x.mul_transpose(y)?;
    let yx = y.mul_transpose(x)?;
    let b_side = if xy.is_zero() {
        None
    } else if xy == yx {
        Some(Sign::Plus)
    } else if xy == yx.neg() {
        Some(Sign::Minus)
    } else {
        None
    };
    Ok(match convention {
        Convention::BSide => b_side,
        Convention::ASide => b_side.map(|s| -s),
    })
}

/// A square integer matrix, the result of exact dense products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    order: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.order + j]
    }

    pub fn neg(&self) -> Self {
        IntMatrix {
            order: self.order,
            entries: self.entries.iter().map(|&x| -x).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_order(self.order, other.order)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| a.checked_add(b).ok_or_else(|| Error::InvalidMatrix("integer overflow".into())))
            .collect::<Result<_>>()?;
        Ok(IntMatrix {
            order: self.order,
            entries,
        })
    }

    /// `self == c · I`.
    pub fn is_scalar(&self, c: i64) -> bool {
        let n = self.order;
        self.entries
            .iter()
            .enumerate()
            .all(|(k, &x)| x == if k / n == k % n { c } else { 0 })
    }
}

/// The Sylvester Hadamard matrix of order `b = 2^k`.
pub fn sylvester(b: usize) -> Result<DenseSignMatrix> {
    if !b.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(b));
    }
    let mut s = DenseSignMatrix {
        order: 1,
        entries: vec![1],
    };
    let step = DenseSignMatrix::from_rows(&[vec![1, 1], vec![1, -1]])?;
    while s.order < b {
        s = step.tensor(&s);
    }
    Ok(s)
}

/// `J = [[0, -1], [1, 0]]`, squares to `-I`.
pub fn rotation() -> MonomialMatrix {
    MonomialMatrix::new(vec![1, 0], vec![Sign::Minus, Sign::Plus]).unwrap()
}

/// `Z = diag(1, -1)`.
pub fn reflection() -> MonomialMatrix {
    MonomialMatrix::diagonal(vec![Sign::Plus, Sign::Minus])
}

/// The order-2 swap `[[0, 1], [1, 0]]`.
pub fn swap() -> MonomialMatrix {
    MonomialMatrix::new(vec![1, 0], vec![Sign::Plus, Sign::Plus]).unwrap()
}
