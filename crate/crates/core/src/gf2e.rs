//! Arithmetic in GF(2^e), 1 <= e <= 8, and dense exact linear algebra.
//!
//! Elements are encoded as the coefficient bit vector of a polynomial in the
//! generator `g`, reduced modulo a fixed irreducible polynomial per degree.
//! In GF(4) the encodings 0, 1, 2, 3 stand for 0, 1, g, g + 1.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Reduction polynomials indexed by `e`, bit `i` is the coefficient of `x^i`.
const REDUCTION_POLYS: [u16; 9] = [
    0,
    0b10,        // x
    0b111,       // x^2 + x + 1
    0b1011,      // x^3 + x + 1
    0b10011,     // x^4 + x + 1
    0b100101,    // x^5 + x^2 + 1
    0b1000011,   // x^6 + x + 1
    0b10000011,  // x^7 + x + 1
    0b100011011, // x^8 + x^4 + x^3 + x + 1
];

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(transparent)]
pub struct FieldElem(pub u8);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The field GF(2^e) with precomputed multiplication and inversion tables.
#[derive(Clone)]
pub struct Field {
    e: u8,
    mul: Arc<[u8]>,
    inv: Arc<[u8]>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field(GF(2^{}))", self.e)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.e == other.e
    }
}

impl Eq for Field {}

fn slow_mul(a: u8, b: u8, e: u8) -> u8 {
    let poly = REDUCTION_POLYS[e as usize];
    let mut acc: u16 = 0;
    for i in 0..8 {
        if b >> i & 1 == 1 {
            acc ^= u16::from(a) << i;
        }
    }
    for i in (e as u16..16).rev() {
        if acc >> i & 1 == 1 {
            acc ^= poly << (i - e as u16);
        }
    }
    acc as u8
}

impl Field {
    pub fn new(e: u8) -> Result<Self> {
        if !(1..=8).contains(&e) {
            return Err(Error::domain(format!(
                "extension degree must be in 1..=8, got {e}"
            )));
        }
        let q = 1usize << e;
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                mul[a * q + b] = slow_mul(a as u8, b as u8, e);
            }
        }
        let mut inv = vec![0u8; q];
        for a in 1..q {
            inv[a] = (1..q)
                .find(|&b| mul[a * q + b] == 1)
                .expect("nonzero elements of a field are invertible") as u8;
        }
        Ok(Field {
            e,
            mul: mul.into(),
            inv: inv.into(),
        })
    }

    pub fn gf2() -> Self {
        Field::new(1).expect("valid degree")
    }

    pub fn gf4() -> Self {
        Field::new(2).expect("valid degree")
    }

    pub fn degree(&self) -> u8 {
        self.e
    }

    /// The bit mask of the reduction polynomial.
    pub fn reduction_poly(&self) -> u16 {
        REDUCTION_POLYS[self.e as usize]
    }

    pub fn size(&self) -> usize {
        1 << self.e
    }

    pub fn contains(&self, a: FieldElem) -> bool {
        usize::from(a.0) < self.size()
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.size()).map(|a| FieldElem(a as u8))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElem> {
        (1..self.size()).map(|a| FieldElem(a as u8))
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(a.0 ^ b.0)
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.mul[(usize::from(a.0) << self.e) + usize::from(b.0)])
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::domain("0 has no multiplicative inverse"));
        }
        Ok(FieldElem(self.inv[usize::from(a.0)]))
    }

    pub fn pow(&self, a: FieldElem, mut k: u64) -> FieldElem {
        let mut base = a;
        let mut acc = FieldElem::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    #[inline]
    fn mul_row(&self, c: FieldElem) -> &[u8] {
        let q = self.size();
        let start = usize::from(c.0) * q;
        &self.mul[start..start + q]
    }

    /// `dst += c * src`.
    #[inline]
    pub(crate) fn axpy(&self, dst: &mut [FieldElem], c: FieldElem, src: &[FieldElem]) {
        debug_assert_eq!(dst.len(), src.len());
        match c.0 {
            0 => {}
            1 => {
                for (d, s) in dst.iter_mut().zip(src) {
                    d.0 ^= s.0;
                }
            }
            _ => {
                let row = self.mul_row(c);
                for (d, s) in dst.iter_mut().zip(src) {
                    d.0 ^= row[usize::from(s.0)];
                }
            }
        }
    }

    #[inline]
    fn scale(&self, v: &mut [FieldElem], c: FieldElem) {
        if c == FieldElem::ONE {
            return;
        }
        let row = self.mul_row(c);
        for x in v.iter_mut() {
            x.0 = row[usize::from(x.0)];
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gf:{}", self.e)
    }
}

/// Parses the `gf:<e>` field flag.
impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits = s
            .strip_prefix("gf:")
            .ok_or_else(|| Error::parse(0, format!("expected gf:<e>, got '{s}'")))?;
        let e: u8 = digits
            .parse()
            .map_err(|_| Error::parse(3, format!("invalid extension degree '{digits}'")))?;
        Field::new(e)
    }
}

/// Dense row-major matrix over GF(2^e).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl FieldMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FieldMatrix {
            rows,
            cols,
            data: vec![FieldElem::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = FieldMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FieldElem::ONE);
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<FieldElem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(FieldMatrix { rows, cols, data })
    }

    /// Builds a matrix from rows of raw encodings. All rows must have equal length.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let data = rows.iter().flatten().map(|&b| FieldElem(b)).collect();
        FieldMatrix::from_vec(rows.len(), cols, data)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> FieldElem) -> Self {
        let mut m = FieldMatrix::zeros(rows, cols);
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

    pub fn entries(&self) -> &[FieldElem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [FieldElem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> FieldMatrix {
        FieldMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn add(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| FieldElem(a.0 ^ b.0))
            .collect();
        Ok(FieldMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Matrix product; zero entries of `self` are skipped, so sparse left factors are cheap.
    pub fn mul(&self, other: &FieldMatrix, f: &Field) -> Result<FieldMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = FieldMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for (l, &c) in self.row(i).iter().enumerate() {
                if !c.is_zero() {
                    f.axpy(out.row_mut(i), c, other.row(l));
                }
            }
        }
        Ok(out)
    }

    /// Nonzero entries of each row, as `(column, value)` pairs.
    pub fn sparse_rows(&self) -> Vec<Vec<(usize, FieldElem)>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, &v)| (j, v))
                    .collect()
            })
            .collect()
    }

    /// `sparse * self`, where `sparse` comes from [`FieldMatrix::sparse_rows`].
    pub fn left_mul_sparse(&self, sparse: &[Vec<(usize, FieldElem)>], f: &Field) -> FieldMatrix {
        let mut out = FieldMatrix::zeros(sparse.len(), self.cols);
        for (i, entries) in sparse.iter().enumerate() {
            for &(l, c) in entries {
                f.axpy(out.row_mut(i), c, self.row(l));
            }
        }
        out
    }

    /// Kronecker product: entry `(a_i * B.rows + b_i, a_j * B.cols + b_j)` is `A[a_i][a_j] * B[b_i][b_j]`.
    pub fn kron(&self, other: &FieldMatrix, f: &Field) -> FieldMatrix {
        let (br, bc) = (other.rows, other.cols);
        let mut out = FieldMatrix::zeros(self.rows * br, self.cols * bc);
        for ai in 0..self.rows {
            for aj in 0..self.cols {
                let a = self.get(ai, aj);
                if a.is_zero() {
                    continue;
                }
                for bi in 0..br {
                    let dst_row = ai * br + bi;
                    let start = dst_row * out.cols + aj * bc;
                    f.axpy(&mut out.data[start..start + bc], a, other.row(bi));
                }
            }
        }
        out
    }

    pub fn hstack(ms: &[&FieldMatrix]) -> Result<FieldMatrix> {
        let rows = ms.first().map_or(0, |m| m.rows);
        if ms.iter().any(|m| m.rows != rows) {
            return Err(Error::Dimension(
                "hstack of matrices with different row counts".into(),
            ));
        }
        let cols = ms.iter().map(|m| m.cols).sum();
        let mut out = FieldMatrix::zeros(rows, cols);
        for i in 0..rows {
            let mut off = 0;
            for m in ms {
                out.row_mut(i)[off..off + m.cols].copy_from_slice(m.row(i));
                off += m.cols;
            }
        }
        Ok(out)
    }

    pub fn vstack(ms: &[&FieldMatrix]) -> Result<FieldMatrix> {
        let cols = ms.first().map_or(0, |m| m.cols);
        if ms.iter().any(|m| m.cols != cols) {
            return Err(Error::Dimension(
                "vstack of matrices with different column counts".into(),
            ));
        }
        let rows = ms.iter().map(|m| m.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for m in ms {
            data.extend_from_slice(&m.data);
        }
        Ok(FieldMatrix { rows, cols, data })
    }

    /// Brings `self` to reduced row echelon form in place; returns the pivot columns.
    pub fn rref_in_place(&mut self, f: &Field) -> Vec<usize> {
        if f.degree() == 1 {
            let mut packed = BitRows::pack(self);
            let pivots = packed.rref();
            packed.unpack_into(self);
            pivots
        } else {
            self.rref_generic(f)
        }
    }

    /// Reduced row echelon form through per-element table arithmetic.
    /// Always uses the generic path, whatever the field.
    pub fn rref_generic(&mut self, f: &Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            f.scale(self.row_mut(r), inv);
            let pivot_row = self.row(r).to_vec();
            for i in 0..self.rows {
                if i != r {
                    let c_i = self.get(i, c);
                    f.axpy(self.row_mut(i), c_i, &pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let cols = self.cols;
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(hi * cols);
        head[lo * cols..(lo + 1) * cols].swap_with_slice(&mut tail[..cols]);
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.clone().rref_in_place(f).len()
    }

    /// Basis, in reduced column echelon form, of the sum of the column spaces of `ms`.
    pub fn col_space_sum(ms: &[&FieldMatrix], f: &Field) -> Result<FieldMatrix> {
        if ms.is_empty() {
            return Err(Error::domain("col_space_sum of an empty sequence"));
        }
        let stacked = FieldMatrix::hstack(ms)?;
        let mut t = stacked.transpose();
        let r = t.rref_in_place(f).len();
        t.rows = r;
        t.data.truncate(r * t.cols);
        Ok(t.transpose())
    }

    /// Basis (as columns) of the intersection of the kernels of `ms`.
    pub fn kernel_meet(ms: &[&FieldMatrix], f: &Field) -> Result<FieldMatrix> {
        if ms.is_empty() {
            return Err(Error::domain("kernel_meet of an empty sequence"));
        }
        let mut stacked = FieldMatrix::vstack(ms)?;
        let n = stacked.cols;
        let pivots = stacked.rref_in_place(f);
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut basis = FieldMatrix::zeros(n, free.len());
        for (k, &fc) in free.iter().enumerate() {
            basis.set(fc, k, FieldElem::ONE);
            for (r, &pc) in pivots.iter().enumerate() {
                // Characteristic 2: -x = x.
                basis.set(pc, k, stacked.get(r, fc));
            }
        }
        Ok(basis)
    }

    pub fn inverse(&self, f: &Field) -> Result<FieldMatrix> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "cannot invert a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut aug = FieldMatrix::hstack(&[self, &FieldMatrix::identity(n)])?;
        let pivots = aug.rref_in_place(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::domain("matrix is singular"));
        }
        Ok(FieldMatrix::from_fn(n, n, |i, j| aug.get(i, n + j)))
    }

    pub fn pow(&self, k: u64, f: &Field) -> Result<FieldMatrix> {
        let mut acc = FieldMatrix::identity(self.rows);
        for _ in 0..k {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }
}

/// GF(2) rows packed 64 entries per word.
struct BitRows {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitRows {
    fn pack(m: &FieldMatrix) -> Self {
        let words = m.cols.div_ceil(64);
        let mut data = vec![0u64; m.rows * words];
        for i in 0..m.rows {
            for (j, v) in m.row(i).iter().enumerate() {
                if v.0 & 1 == 1 {
                    data[i * words + j / 64] |= 1 << (j % 64);
                }
            }
        }
        BitRows {
            rows: m.rows,
            cols: m.cols,
            words,
            data,
        }
    }

    fn unpack_into(&self, m: &mut FieldMatrix) {
        for i in 0..self.rows {
            let row = &self.data[i * self.words..(i + 1) * self.words];
            for (j, v) in m.row_mut(i).iter_mut().enumerate() {
                *v = FieldElem((row[j / 64] >> (j % 64) & 1) as u8);
            }
        }
    }

    #[inline]
    fn bit(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    fn rref(&mut self) -> Vec<usize> {
        let w = self.words;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.bit(i, c)) else {
                continue;
            };
            if p != r {
                for k in 0..w {
                    self.data.swap(r * w + k, p * w + k);
                }
            }
            let pivot: Vec<u64> = self.data[r * w..(r + 1) * w].to_vec();
            for i in 0..self.rows {
                if i != r && self.bit(i, c) {
                    for (d, s) in self.data[i * w..(i + 1) * w].iter_mut().zip(&pivot) {
                        *d ^= s;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }
}
