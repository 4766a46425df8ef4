//! Block-graded matrices with supertranspose, superbracket and inversion of
//! nilpotent perturbations of an invertible scalar body.
//!
//! A matrix is homogeneous of parity `p` when every nonzero entry in row `i`,
//! column `j` has parity `p + |i| + |j|`. Numeric matrices (entries in
//! ℚ(i, √2)) are therefore even when supported on the diagonal blocks and odd
//! when supported on the off-diagonal blocks.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg;
use crate::parse;
use crate::ring::{Monomial, Parity, RingContext, SuperPoly};
use crate::scalar::FieldScalar;

/// Arithmetic required of matrix entries.
pub trait Entry: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn from_scalar(c: FieldScalar) -> Self;
    fn is_zero(&self) -> bool;
    fn try_add(&self, other: &Self) -> Result<Self>;
    fn try_mul(&self, other: &Self) -> Result<Self>;
    fn negate(&self) -> Self;
    fn scale(&self, c: &FieldScalar) -> Self;
    /// True if zero or homogeneous of parity `p`.
    fn has_parity(&self, p: Parity) -> bool;
    /// The pure-scalar part.
    fn body(&self) -> FieldScalar;
    /// True when `self − body()` is nilpotent.
    fn body_is_constant(&self) -> bool;
    /// Upper bound on the length of a nonvanishing product of nilpotent parts.
    fn nilpotency_bound(&self) -> usize;

    fn one() -> Self {
        Self::from_scalar(FieldScalar::one())
    }
}

impl Entry for FieldScalar {
    fn zero() -> Self {
        FieldScalar::zero()
    }
    fn from_scalar(c: FieldScalar) -> Self {
        c
    }
    fn is_zero(&self) -> bool {
        FieldScalar::is_zero(self)
    }
    fn try_add(&self, other: &Self) -> Result<Self> {
        Ok(self + other)
    }
    fn try_mul(&self, other: &Self) -> Result<Self> {
        Ok(self * other)
    }
    fn negate(&self) -> Self {
        -self
    }
    fn scale(&self, c: &FieldScalar) -> Self {
        self * c
    }
    fn has_parity(&self, p: Parity) -> bool {
        p == Parity::Even || self.is_zero()
    }
    fn body(&self) -> FieldScalar {
        self.clone()
    }
    fn body_is_constant(&self) -> bool {
        true
    }
    fn nilpotency_bound(&self) -> usize {
        0
    }
}

impl Entry for SuperPoly {
    fn zero() -> Self {
        SuperPoly::zero()
    }
    fn from_scalar(c: FieldScalar) -> Self {
        SuperPoly::constant(c)
    }
    fn is_zero(&self) -> bool {
        SuperPoly::is_zero(self)
    }
    fn try_add(&self, other: &Self) -> Result<Self> {
        SuperPoly::try_add(self, other)
    }
    fn try_mul(&self, other: &Self) -> Result<Self> {
        SuperPoly::try_mul(self, other)
    }
    fn negate(&self) -> Self {
        -self
    }
    fn scale(&self, c: &FieldScalar) -> Self {
        SuperPoly::scale(self, c)
    }
    fn has_parity(&self, p: Parity) -> bool {
        SuperPoly::has_parity(self, p)
    }
    fn body(&self) -> FieldScalar {
        self.constant_term()
    }
    fn body_is_constant(&self) -> bool {
        self.is_body_constant()
    }
    fn nilpotency_bound(&self) -> usize {
        self.context().map_or(0, |c| c.odd_count())
    }
}

/// Even|odd split of a row or column index range, with an optional finer
/// partition of each part (for instance `m, m, 1` | `n, n`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockShape {
    even: usize,
    odd: usize,
    even_blocks: Vec<usize>,
    odd_blocks: Vec<usize>,
}

impl BlockShape {
    pub fn new(even: usize, odd: usize) -> Self {
        BlockShape {
            even,
            odd,
            even_blocks: vec![even],
            odd_blocks: vec![odd],
        }
    }

    /// Shape with a finer partition; the parts must sum to the even and odd
    /// sizes.
    pub fn partitioned(even_blocks: Vec<usize>, odd_blocks: Vec<usize>) -> Self {
        let even = even_blocks.iter().sum();
        let odd = odd_blocks.iter().sum();
        BlockShape {
            even,
            odd,
            even_blocks,
            odd_blocks,
        }
    }

    pub fn even(&self) -> usize {
        self.even
    }

    pub fn odd(&self) -> usize {
        self.odd
    }

    pub fn dim(&self) -> usize {
        self.even + self.odd
    }

    pub fn even_blocks(&self) -> &[usize] {
        &self.even_blocks
    }

    pub fn odd_blocks(&self) -> &[usize] {
        &self.odd_blocks
    }

    pub fn parity(&self, index: usize) -> Parity {
        if index < self.even {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Same even and odd sizes (finer partitions are ignored).
    pub fn compatible(&self, other: &BlockShape) -> bool {
        self.even == other.even && self.odd == other.odd
    }

    /// Start offsets of the finer blocks, even blocks first.
    pub fn block_offsets(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut at = 0;
        for b in self.even_blocks.iter().chain(&self.odd_blocks) {
            out.push(at);
            at += b;
        }
        out
    }

    fn select(&self, indices: &[usize]) -> BlockShape {
        let even = indices.iter().filter(|&&i| i < self.even).count();
        BlockShape::new(even, indices.len() - even)
    }
}

/// A block-graded matrix.
#[derive(Clone)]
pub struct SuperMatrix<T: Entry = SuperPoly> {
    rows: BlockShape,
    cols: BlockShape,
    entries: Vec<T>,
    parity: Option<Parity>,
}

// The stored parity of a zero matrix is a label, not data.
impl<T: Entry> PartialEq for SuperMatrix<T> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }
}

/// Matrices over ℚ(i, √2).
pub type NumMatrix = SuperMatrix<FieldScalar>;

impl<T: Entry> SuperMatrix<T> {
    pub fn zeros(rows: BlockShape, cols: BlockShape) -> Self {
        let n = rows.dim() * cols.dim();
        SuperMatrix {
            rows,
            cols,
            entries: vec![T::zero(); n],
            parity: Some(Parity::Even),
        }
    }

    pub fn identity(shape: BlockShape) -> Self {
        let mut m = Self::zeros(shape.clone(), shape);
        let n = m.ncols();
        for i in 0..n {
            m.entries[i * n + i] = T::one();
        }
        m
    }

    /// Builds a matrix from row-major entries and infers its parity
    /// (`None` for inhomogeneous, `Even` for zero).
    pub fn from_entries(rows: BlockShape, cols: BlockShape, entries: Vec<T>) -> Result<Self> {
        if entries.len() != rows.dim() * cols.dim() {
            return Err(Error::ShapeMismatch(format!(
                "expected {} entries, got {}",
                rows.dim() * cols.dim(),
                entries.len()
            )));
        }
        let mut m = SuperMatrix {
            rows,
            cols,
            entries,
            parity: None,
        };
        m.parity = m.infer_parity();
        Ok(m)
    }

    pub fn from_rows(rows: BlockShape, cols: BlockShape, data: Vec<Vec<T>>) -> Result<Self> {
        if data.len() != rows.dim() || data.iter().any(|r| r.len() != cols.dim()) {
            return Err(Error::ShapeMismatch(
                "row data does not match the block shape".into(),
            ));
        }
        Self::from_entries(rows, cols, data.into_iter().flatten().collect())
    }

    /// Checks that the matrix is homogeneous of parity `p`.
    pub fn with_parity(mut self, p: Parity) -> Result<Self> {
        if !self.is_homogeneous_of(p) {
            return Err(Error::ParityMismatch(format!("matrix is not {p}")));
        }
        self.parity = Some(p);
        Ok(self)
    }

    fn is_homogeneous_of(&self, p: Parity) -> bool {
        (0..self.nrows()).all(|i| {
            (0..self.ncols()).all(|j| {
                let expected = p + self.rows.parity(i) + self.cols.parity(j);
                self.get(i, j).has_parity(expected)
            })
        })
    }

    fn infer_parity(&self) -> Option<Parity> {
        [Parity::Even, Parity::Odd]
            .into_iter()
            .find(|&p| self.is_homogeneous_of(p))
    }

    pub fn row_shape(&self) -> &BlockShape {
        &self.rows
    }

    pub fn col_shape(&self) -> &BlockShape {
        &self.cols
    }

    pub fn nrows(&self) -> usize {
        self.rows.dim()
    }

    pub fn ncols(&self) -> usize {
        self.cols.dim()
    }

    pub fn is_square(&self) -> bool {
        self.rows.compatible(&self.cols)
    }

    /// Declared parity; `None` means inhomogeneous.
    pub fn parity(&self) -> Option<Parity> {
        self.parity
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.ncols() + j]
    }

    /// Replaces one entry and re-infers the parity.
    pub fn set(&mut self, i: usize, j: usize, value: T) {
        let n = self.ncols();
        self.entries[i * n + j] = value;
        self.parity = self.infer_parity();
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[T] {
        let n = self.ncols();
        &self.entries[i * n..(i + 1) * n]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Entry::is_zero)
    }

    pub fn map<U: Entry>(&self, f: impl Fn(&T) -> U) -> SuperMatrix<U> {
        let entries = self.entries.iter().map(f).collect();
        SuperMatrix::from_entries(self.rows.clone(), self.cols.clone(), entries)
            .expect("same shape")
    }

    pub fn try_map<U: Entry>(&self, f: impl Fn(&T) -> Result<U>) -> Result<SuperMatrix<U>> {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>>>()?;
        SuperMatrix::from_entries(self.rows.clone(), self.cols.clone(), entries)
    }

    fn combine_parity(
        a: Option<Parity>,
        b: Option<Parity>,
        a_zero: bool,
        b_zero: bool,
    ) -> Option<Parity> {
        match (a, b) {
            _ if a_zero => b,
            _ if b_zero => a,
            (Some(x), Some(y)) if x == y => Some(x),
            _ => None,
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if !self.rows.compatible(&other.rows) || !self.cols.compatible(&other.cols) {
            return Err(Error::ShapeMismatch(
                "sum of differently shaped matrices".into(),
            ));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| {
                if b.is_zero() {
                    Ok(a.clone())
                } else {
                    a.try_add(b)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let parity =
            Self::combine_parity(self.parity, other.parity, self.is_zero(), other.is_zero());
        Ok(SuperMatrix {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            entries,
            parity,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        SuperMatrix {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            entries: self.entries.iter().map(Entry::negate).collect(),
            parity: self.parity,
        }
    }

    pub fn scale(&self, c: &FieldScalar) -> Self {
        SuperMatrix {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            entries: self.entries.iter().map(|e| e.scale(c)).collect(),
            parity: self.parity,
        }
    }

    /// Multiplies every entry on the left by `t`.
    pub fn left_mul_entries(&self, t: &T) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|e| t.try_mul(e))
            .collect::<Result<Vec<_>>>()?;
        Self::from_entries(self.rows.clone(), self.cols.clone(), entries)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if !self.cols.compatible(&other.rows) {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}|{} columns by {}|{} rows",
                self.cols.even, self.cols.odd, other.rows.even, other.rows.odd
            )));
        }
        let (n, k, m) = (self.nrows(), self.ncols(), other.ncols());
        let mut entries = vec![T::zero(); n * m];
        for i in 0..n {
            for l in 0..k {
                let a = &self.entries[i * k + l];
                if a.is_zero() {
                    continue;
                }
                for j in 0..m {
                    let b = &other.entries[l * m + j];
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.try_mul(b)?;
                    let slot = &mut entries[i * m + j];
                    *slot = slot.try_add(&prod)?;
                }
            }
        }
        let parity = match (self.parity, other.parity) {
            (Some(p), Some(q)) => Some(p + q),
            _ => None,
        };
        let mut out = SuperMatrix {
            rows: self.rows.clone(),
            cols: other.cols.clone(),
            entries,
            parity,
        };
        if out.parity.is_none() {
            out.parity = out.infer_parity();
        }
        Ok(out)
    }

    /// Graded transpose with blocks `(M₁₁ᵀ, M₂₁ᵀ; −M₁₂ᵀ, M₂₂ᵀ)`.
    pub fn supertranspose(&self) -> Result<Self> {
        if self.parity.is_none() {
            return Err(Error::Inhomogeneous);
        }
        let (n, m) = (self.nrows(), self.ncols());
        let mut entries = Vec::with_capacity(n * m);
        for i in 0..m {
            for j in 0..n {
                let e = self.get(j, i);
                // odd row of the result, even column: the −M₁₂ᵀ block
                if self.cols.parity(i).is_odd() && !self.rows.parity(j).is_odd() {
                    entries.push(e.negate());
                } else {
                    entries.push(e.clone());
                }
            }
        }
        Ok(SuperMatrix {
            rows: self.cols.clone(),
            cols: self.rows.clone(),
            entries,
            parity: self.parity,
        })
    }

    /// Ordinary transpose (no signs).
    pub fn transpose(&self) -> Self {
        let (n, m) = (self.nrows(), self.ncols());
        let mut entries = Vec::with_capacity(n * m);
        for i in 0..m {
            for j in 0..n {
                entries.push(self.get(j, i).clone());
            }
        }
        SuperMatrix {
            rows: self.cols.clone(),
            cols: self.rows.clone(),
            entries,
            parity: None,
        }
        .reinfer()
    }

    fn reinfer(mut self) -> Self {
        self.parity = self.infer_parity();
        self
    }

    /// `[A, B] = AB − (−1)^{|A||B|} BA` for homogeneous square matrices.
    pub fn superbracket(&self, other: &Self) -> Result<Self> {
        let (Some(p), Some(q)) = (self.parity, other.parity) else {
            return Err(Error::Inhomogeneous);
        };
        if !self.is_square() || !self.rows.compatible(&other.rows) || !other.is_square() {
            return Err(Error::ShapeMismatch(
                "bracket needs equal square shapes".into(),
            ));
        }
        let ab = self.try_mul(other)?;
        let ba = other.try_mul(self)?;
        let mut out = if p.koszul(q) < 0 {
            ab.try_add(&ba)?
        } else {
            ab.try_sub(&ba)?
        };
        out.parity = if out.is_zero() {
            Some(p + q)
        } else {
            out.infer_parity()
        };
        Ok(out)
    }

    /// The submatrix on the given rows and columns (in the given order).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        SuperMatrix::from_entries(self.rows.select(rows), self.cols.select(cols), entries)
            .expect("consistent size")
    }

    /// Scalar body: every entry replaced by its pure-scalar part.
    pub fn body(&self) -> NumMatrix {
        self.map(Entry::body)
    }

    /// Inverse of a matrix whose entries are a scalar body plus nilpotent
    /// parts: `M = B(I + K)` with `K = B⁻¹(M − B)` nilpotent, so
    /// `M⁻¹ = (Σ (−K)^j) B⁻¹` is a finite sum.
    pub fn invert(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(
                "inverse of a non-square matrix".into(),
            ));
        }
        if !self.entries.iter().all(Entry::body_is_constant) {
            return Err(Error::NotNilpotent);
        }
        let n = self.nrows();
        let body = self.body();
        let body_rows: Vec<Vec<FieldScalar>> = (0..n).map(|i| body.row(i).to_vec()).collect();
        let binv_rows = linalg::inverse(&body_rows)?;
        let binv = SuperMatrix::from_rows(
            self.rows.clone(),
            self.rows.clone(),
            binv_rows
                .into_iter()
                .map(|r| r.into_iter().map(T::from_scalar).collect())
                .collect(),
        )?;
        let lifted_body = body.map(|c| T::from_scalar(c.clone()));
        let nil = self.try_sub(&lifted_body)?;
        let k = binv.try_mul(&nil)?;
        let bound = self
            .entries
            .iter()
            .map(Entry::nilpotency_bound)
            .max()
            .unwrap_or(0)
            + 1;
        let mut sum = Self::identity(self.rows.clone());
        let mut term = Self::identity(self.rows.clone());
        for _ in 0..bound {
            term = term.try_mul(&k)?.neg();
            if term.is_zero() {
                let mut out = sum.try_mul(&binv)?;
                out.parity = out.infer_parity();
                return Ok(out);
            }
            sum = sum.try_add(&term)?;
        }
        Err(Error::NotNilpotent)
    }

    /// Row-major literal: rows separated by `;`, entries by `,`.
    pub fn to_literal(&self) -> String {
        (0..self.nrows())
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

impl NumMatrix {
    /// Entries as a flat vector, for linear algebra.
    pub fn to_vector(&self) -> Vec<FieldScalar> {
        self.entries.clone()
    }

    pub fn from_vector(rows: BlockShape, cols: BlockShape, v: Vec<FieldScalar>) -> Result<Self> {
        Self::from_entries(rows, cols, v)
    }

    /// A single unit entry `E_{ij}` scaled by `c`.
    pub fn unit(shape: &BlockShape, i: usize, j: usize, c: FieldScalar) -> Self {
        let mut m = Self::zeros(shape.clone(), shape.clone());
        let n = m.ncols();
        m.entries[i * n + j] = c;
        m.reinfer()
    }

    /// Embeds into polynomial entries.
    pub fn lift(&self) -> SuperMatrix<SuperPoly> {
        self.map(|c| SuperPoly::constant(c.clone()))
    }
}

impl SuperMatrix<SuperPoly> {
    pub fn parse(
        text: &str,
        rows: BlockShape,
        cols: BlockShape,
        ctx: Option<&Arc<RingContext>>,
    ) -> Result<Self> {
        let data = parse::parse_matrix_entries(text, ctx)?;
        Self::from_rows(rows, cols, data)
    }

    /// Moves every entry into `ctx` (see [`SuperPoly::rebind`]).
    pub fn rebind(&self, ctx: &Arc<RingContext>) -> Result<Self> {
        self.try_map(|p| p.rebind(ctx))
    }

    /// Writes the matrix as `Σ monomial · numeric matrix`.
    pub fn coefficient_matrices(&self) -> BTreeMap<Monomial, NumMatrix> {
        let mut out: BTreeMap<Monomial, NumMatrix> = BTreeMap::new();
        for (idx, e) in self.entries.iter().enumerate() {
            for (mono, c) in e.terms() {
                let slot = out
                    .entry(mono.clone())
                    .or_insert_with(|| NumMatrix::zeros(self.rows.clone(), self.cols.clone()));
                slot.entries[idx] = c.clone();
            }
        }
        out.into_iter().map(|(k, m)| (k, m.reinfer())).collect()
    }

    /// Applies a substitution to every entry.
    pub fn substitute(&self, bindings: &[(crate::ring::Variable, SuperPoly)]) -> Result<Self> {
        self.try_map(|p| p.substitute(bindings))
    }
}

impl<T: Entry> fmt::Display for SuperMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal())
    }
}

impl<T: Entry> fmt::Debug for SuperMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SuperMatrix[{}|{} x {}|{}, {:?}]({})",
            self.rows.even,
            self.rows.odd,
            self.cols.even,
            self.cols.odd,
            self.parity,
            self.to_literal()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingContext;

    fn num(rows: usize, cols_even: usize, data: &[&[i64]], even: usize) -> NumMatrix {
        let shape = BlockShape::new(even, rows - even);
        let _ = cols_even;
        NumMatrix::from_rows(
            shape.clone(),
            shape,
            data.iter()
                .map(|r| r.iter().map(|&x| FieldScalar::from_i64(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn supertranspose_of_identity() {
        let id = NumMatrix::identity(BlockShape::new(2, 2));
        assert_eq!(id.supertranspose().unwrap(), id);
    }

    #[test]
    fn supertranspose_one_one_blocks() {
        let ctx = RingContext::new(&[
            ("a", Parity::Even),
            ("b", Parity::Odd),
            ("c", Parity::Odd),
            ("d", Parity::Even),
        ])
        .unwrap();
        let s = BlockShape::new(1, 1);
        let m = SuperMatrix::parse("a, b; c, d", s.clone(), s.clone(), Some(&ctx)).unwrap();
        assert_eq!(m.parity(), Some(Parity::Even));
        let st = m.supertranspose().unwrap();
        let expected = SuperMatrix::parse("a, c; -b, d", s.clone(), s, Some(&ctx)).unwrap();
        assert_eq!(st, expected);
    }

    #[test]
    fn supertranspose_twice_negates_off_diagonal() {
        let m = num(3, 3, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]], 2);
        let even_part = num(3, 3, &[&[1, 2, 0], &[4, 5, 0], &[0, 0, 9]], 2);
        let odd_part = num(3, 3, &[&[0, 0, 3], &[0, 0, 6], &[7, 8, 0]], 2);
        assert_eq!(even_part.try_add(&odd_part).unwrap(), m);
        let twice = |x: &NumMatrix| x.supertranspose().unwrap().supertranspose().unwrap();
        assert_eq!(twice(&even_part), even_part);
        assert_eq!(twice(&odd_part), odd_part.neg());
        assert_eq!(m.supertranspose(), Err(Error::Inhomogeneous));
    }

    #[test]
    fn bracket_of_gl2_units() {
        let s = BlockShape::new(2, 0);
        let e12 = NumMatrix::unit(&s, 0, 1, FieldScalar::one());
        let e21 = NumMatrix::unit(&s, 1, 0, FieldScalar::one());
        let h = num(2, 2, &[&[1, 0], &[0, -1]], 2);
        assert_eq!(e12.superbracket(&e21).unwrap(), h);
    }

    #[test]
    fn odd_self_bracket_is_anticommutator() {
        let x = num(2, 2, &[&[0, 3], &[5, 0]], 1);
        assert_eq!(x.parity(), Some(Parity::Odd));
        let sq = x.try_mul(&x).unwrap();
        assert_eq!(
            x.superbracket(&x).unwrap(),
            sq.scale(&FieldScalar::from_i64(2))
        );
    }

    #[test]
    fn invert_identity_plus_odd_parameter() {
        let ctx = RingContext::new(&[("tau", Parity::Odd)]).unwrap();
        let s = BlockShape::new(1, 1);
        let m = SuperMatrix::parse("1, 2*tau; -tau, 1", s.clone(), s.clone(), Some(&ctx)).unwrap();
        let inv = m.invert().unwrap();
        let expected =
            SuperMatrix::parse("1, -2*tau; tau, 1", s.clone(), s.clone(), Some(&ctx)).unwrap();
        assert_eq!(inv, expected);
        assert_eq!(m.try_mul(&inv).unwrap(), SuperMatrix::identity(s));
    }

    #[test]
    fn invert_unipotent_neumann() {
        let s = BlockShape::new(3, 0);
        let ctx = RingContext::new(&[
            ("a", Parity::Odd),
            ("b", Parity::Odd),
            ("c", Parity::Odd),
            ("d", Parity::Odd),
        ])
        .unwrap();
        // N strictly upper triangular with even nilpotent entries, N^3 = 0
        let m = SuperMatrix::parse(
            "1, a*b, c*d; 0, 1, a*c; 0, 0, 1",
            s.clone(),
            s.clone(),
            Some(&ctx),
        )
        .unwrap();
        let id = SuperMatrix::identity(s.clone());
        let n = m.try_sub(&id).unwrap();
        let n2 = n.try_mul(&n).unwrap();
        let expected = id.try_sub(&n).unwrap().try_add(&n2).unwrap();
        let inv = m.invert().unwrap();
        assert_eq!(inv, expected);
        assert_eq!(inv.try_mul(&m).unwrap(), id);
    }

    #[test]
    fn invert_rejects_singular_body_and_even_variables() {
        let s = BlockShape::new(2, 0);
        let singular = num(2, 2, &[&[1, 2], &[2, 4]], 2);
        assert_eq!(singular.invert(), Err(Error::SingularBody));
        let ctx = RingContext::new(&[("x", Parity::Even)]).unwrap();
        let m = SuperMatrix::parse("1, x; 0, 1", s.clone(), s, Some(&ctx)).unwrap();
        assert_eq!(m.invert(), Err(Error::NotNilpotent));
    }
}
