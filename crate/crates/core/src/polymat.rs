//! Dense matrices over `K[x1..xr]`, elementary matrices and the bookkeeping
//! needed to certify left inverses.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::monomial::MonomialOrder;
use crate::parse::{parse, render};
use crate::poly::{Polynomial, Ring};

/// Row-major matrix whose entries all live in one ring. Zero-sized
/// dimensions are allowed so that blocks such as `O_{(m-n) x n}` with
/// `m = n` are representable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(ring: Ring, rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        for e in &entries {
            ring.check_same(&e.ring())?;
        }
        Ok(PolyMatrix { ring, rows, cols, entries })
    }

    pub fn from_rows(ring: Ring, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(ring, nrows, ncols, rows.into_iter().flatten().collect())
    }

    /// A column vector.
    pub fn column(ring: Ring, v: Vec<Polynomial>) -> Result<Self> {
        let n = v.len();
        Self::new(ring, n, 1, v)
    }

    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Self {
        PolyMatrix { ring, rows, cols, entries: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.entries[i * n + i] = ring.one();
        }
        m
    }

    /// `[E_n ; O_{(m-n) x n}]`.
    pub fn stacked_identity(ring: Ring, m: usize, n: usize) -> Result<Self> {
        if m < n {
            return Err(Error::DimensionMismatch(format!("m = {m} < n = {n}")));
        }
        let mut a = Self::zeros(ring, m, n);
        for i in 0..n {
            a.entries[i * n + i] = ring.one();
        }
        Ok(a)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, f: Polynomial) {
        assert_eq!(f.ring(), self.ring, "entry from another ring");
        self.entries[i * self.cols + j] = f;
    }

    pub fn row(&self, i: usize) -> &[Polynomial] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    /// Entries of a column vector (or all entries, row-major).
    pub fn into_entries(self) -> Vec<Polynomial> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.entries.iter().filter_map(Polynomial::degree).max()
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.ring.check_same(&other.ring)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.entries[idx] = &out.entries[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &PolyMatrix, f: impl Fn(&Polynomial, &Polynomial) -> Polynomial) -> Result<PolyMatrix> {
        self.ring.check_same(&other.ring)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect();
        Ok(PolyMatrix { ring: self.ring, rows: self.rows, cols: self.cols, entries })
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Coeff) -> PolyMatrix {
        let entries = self.entries.iter().map(|e| e.scalar_mul(c)).collect();
        PolyMatrix { entries, ..self.clone() }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> PolyMatrix {
        assert!(rows.end <= self.rows && cols.end <= self.cols, "block out of range");
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for i in rows.clone() {
            entries.extend_from_slice(&self.row(i)[cols.clone()]);
        }
        PolyMatrix { ring: self.ring, rows: rows.len(), cols: cols.len(), entries }
    }

    /// `(self | other)`.
    pub fn hstack(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.ring.check_same(&other.ring)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!("hstack of {} and {} rows", self.rows, other.rows)));
        }
        let mut entries = Vec::with_capacity(self.entries.len() + other.entries.len());
        for i in 0..self.rows {
            entries.extend_from_slice(self.row(i));
            entries.extend_from_slice(other.row(i));
        }
        Ok(PolyMatrix { ring: self.ring, rows: self.rows, cols: self.cols + other.cols, entries })
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.ring.check_same(&other.ring)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!("vstack of {} and {} columns", self.cols, other.cols)));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(PolyMatrix { ring: self.ring, rows: self.rows + other.rows, cols: self.cols, entries })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn require_square(&self) -> Result<usize> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!("{}x{} matrix is not square", self.rows, self.cols)));
        }
        Ok(self.rows)
    }

    /// Determinant by fraction-free (Bareiss) elimination; every division
    /// is exact in the polynomial ring.
    pub fn det(&self) -> Result<Polynomial> {
        let n = self.require_square()?;
        if n == 0 {
            return Ok(self.ring.one());
        }
        let mut m = self.clone();
        let mut negate = false;
        let mut prev = self.ring.one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        negate = !negate;
                    }
                    None => return Ok(self.ring.zero()),
                }
            }
            let pivot = m.get(k, k).clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(m.get(i, j) * &pivot) - &(m.get(i, k) * m.get(k, j));
                    let q = num.exact_div(&prev)?.ok_or_else(|| {
                        Error::VerificationFailed("inexact Bareiss division".into())
                    })?;
                    m.set(i, j, q);
                }
                m.set(i, k, self.ring.zero());
            }
            prev = pivot;
        }
        let d = m.get(n - 1, n - 1).clone();
        Ok(if negate { -&d } else { d })
    }

    /// Determinant by Laplace expansion along the first row. Exponential in
    /// the size; intended for `n <= 4` cross-checks.
    pub fn det_cofactor(&self) -> Result<Polynomial> {
        let n = self.require_square()?;
        Ok(cofactor_rec(self, &(0..n).collect::<Vec<_>>(), 0))
    }

    /// The inverse of a matrix whose determinant is a nonzero constant,
    /// computed as `adj(V) / det(V)`.
    pub fn inverse_unimodular(&self) -> Result<PolyMatrix> {
        let n = self.require_square()?;
        let det = self.det()?;
        let c = match det.constant_value() {
            Some(c) if !c.is_zero() => c,
            _ => return Err(Error::Precondition(format!("determinant {det} is not a nonzero constant"))),
        };
        let inv_det = c.inv()?;
        let mut out = Self::zeros(self.ring, n, n);
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(i, j);
                let mut cof = minor.det()?;
                if (i + j) % 2 == 1 {
                    cof = -&cof;
                }
                // adjugate is the transposed cofactor matrix
                out.set(j, i, cof.scalar_mul(&inv_det));
            }
        }
        Ok(out)
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> PolyMatrix {
        let mut entries = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != skip_row) {
            for j in (0..self.cols).filter(|&j| j != skip_col) {
                entries.push(self.get(i, j).clone());
            }
        }
        PolyMatrix { ring: self.ring, rows: self.rows - 1, cols: self.cols - 1, entries }
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    match i.cmp(&j) {
                        std::cmp::Ordering::Equal => e == &self.ring.one(),
                        std::cmp::Ordering::Greater => e.is_zero(),
                        std::cmp::Ordering::Less => true,
                    }
                })
            })
    }

    /// Inverse of an upper unitriangular matrix by back substitution; the
    /// result is again upper unitriangular and needs no division.
    pub fn unitriangular_inverse(&self) -> Result<PolyMatrix> {
        if !self.is_upper_unitriangular() {
            return Err(Error::Precondition("matrix is not upper unitriangular".into()));
        }
        let n = self.rows;
        let mut x = Self::identity(self.ring, n);
        for j in 0..n {
            for i in (0..j).rev() {
                let mut acc = self.ring.zero();
                for k in i + 1..=j {
                    acc = &acc + &(self.get(i, k) * x.get(k, j));
                }
                x.set(i, j, -&acc);
            }
        }
        Ok(x)
    }

    /// Nested arrays of polynomial strings, rows outermost.
    pub fn to_string_grid(&self) -> Vec<Vec<String>> {
        let order = MonomialOrder::lex(self.ring.nvars);
        (0..self.rows).map(|i| self.row(i).iter().map(|e| render(e, &order)).collect()).collect()
    }

    pub fn from_string_grid(ring: Ring, grid: &[Vec<String>]) -> Result<PolyMatrix> {
        let rows = grid
            .iter()
            .map(|r| r.iter().map(|s| parse(s, ring)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(ring, rows)
    }
}

fn cofactor_rec(m: &PolyMatrix, cols: &[usize], row: usize) -> Polynomial {
    if cols.is_empty() {
        return m.ring.one();
    }
    let mut acc = m.ring.zero();
    for (k, &c) in cols.iter().enumerate() {
        let e = m.get(row, c);
        if e.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = e * &cofactor_rec(m, &rest, row + 1);
        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let grid = self.to_string_grid();
        write!(f, "[")?;
        for (i, r) in grid.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}", r.join(", "))?;
        }
        write!(f, "]")
    }
}

/// The generators of `E(m)`, kept symbolic. Indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OpKind {
    /// Swap rows `i` and `j`.
    Permute { i: usize, j: usize },
    /// Multiply row `i` by a nonzero constant.
    Scale { i: usize, c: Coeff },
    /// Row `target` += `factor` * row `source`.
    AddRow { target: usize, source: usize, factor: Polynomial },
}

/// One elementary matrix of size `size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryOp {
    size: usize,
    kind: OpKind,
}

impl ElementaryOp {
    pub fn permute(size: usize, i: usize, j: usize) -> Result<Self> {
        if i == j || i >= size || j >= size {
            return Err(Error::InvalidArgument(format!("permute({i},{j}) on size {size}")));
        }
        Ok(ElementaryOp { size, kind: OpKind::Permute { i, j } })
    }

    pub fn scale(size: usize, i: usize, c: Coeff) -> Result<Self> {
        if i >= size || c.is_zero() {
            return Err(Error::InvalidArgument(format!("scale({i},{c}) on size {size}")));
        }
        Ok(ElementaryOp { size, kind: OpKind::Scale { i, c } })
    }

    pub fn add_row(size: usize, target: usize, source: usize, factor: Polynomial) -> Result<Self> {
        if target == source || target >= size || source >= size {
            return Err(Error::InvalidArgument(format!("add_row({target}<-{source}) on size {size}")));
        }
        Ok(ElementaryOp { size, kind: OpKind::AddRow { target, source, factor } })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn kind(&self) -> &OpKind {
        &self.kind
    }

    pub fn inverse(&self) -> ElementaryOp {
        let kind = match &self.kind {
            OpKind::Permute { i, j } => OpKind::Permute { i: *i, j: *j },
            OpKind::Scale { i, c } => OpKind::Scale { i: *i, c: c.inv().expect("scale factor is nonzero") },
            OpKind::AddRow { target, source, factor } => {
                OpKind::AddRow { target: *target, source: *source, factor: -factor }
            }
        };
        ElementaryOp { size: self.size, kind }
    }

    /// `(elementary matrix) * m`, performed as a row operation.
    pub fn apply_left(&self, m: &PolyMatrix) -> Result<PolyMatrix> {
        if m.rows != self.size {
            return Err(Error::DimensionMismatch(format!("op of size {} on {} rows", self.size, m.rows)));
        }
        let mut out = m.clone();
        match &self.kind {
            OpKind::Permute { i, j } => out.swap_rows(*i, *j),
            OpKind::Scale { i, c } => {
                if !m.ring.field.contains(c) {
                    return Err(Error::RingMismatch(format!("scalar {c} not in {}", m.ring.field)));
                }
                for k in 0..m.cols {
                    let idx = i * m.cols + k;
                    out.entries[idx] = out.entries[idx].scalar_mul(c);
                }
            }
            OpKind::AddRow { target, source, factor } => {
                m.ring.check_same(&factor.ring())?;
                for k in 0..m.cols {
                    let s = m.get(*source, k);
                    if !s.is_zero() {
                        let idx = target * m.cols + k;
                        out.entries[idx] = &out.entries[idx] + &(factor * s);
                    }
                }
            }
        }
        Ok(out)
    }

    /// The `size x size` matrix, materialized.
    pub fn matrix(&self, ring: Ring) -> Result<PolyMatrix> {
        self.apply_left(&PolyMatrix::identity(ring, self.size))
    }

    /// `-1`, `c` or `1` for a permutation, scaling or row addition.
    pub fn det(&self, ring: Ring) -> Coeff {
        match &self.kind {
            OpKind::Permute { .. } => ring.field.from_i64(-1),
            OpKind::Scale { c, .. } => c.clone(),
            OpKind::AddRow { .. } => ring.field.one(),
        }
    }
}

/// `U = ops[0] * ops[1] * ... * ops[s-1]` applied to `m`, i.e. the last op
/// acts first.
pub fn apply_product(ops: &[ElementaryOp], m: &PolyMatrix) -> Result<PolyMatrix> {
    ops.iter().rev().try_fold(m.clone(), |acc, op| op.apply_left(&acc))
}

/// `B = (E_n | O) U^{-1}` for `U = ops[0] * ... * ops[s-1]`, so that
/// `B * U * [E_n; O] = E_n`.
pub fn left_inverse_from_trace(ops: &[ElementaryOp], ring: Ring, m: usize, n: usize) -> Result<PolyMatrix> {
    if m < n {
        return Err(Error::DimensionMismatch(format!("m = {m} < n = {n}")));
    }
    if let Some(op) = ops.iter().find(|op| op.size != m) {
        return Err(Error::DimensionMismatch(format!("op of size {} in a trace of size {m}", op.size)));
    }
    // U^{-1} = ops[s-1]^{-1} ... ops[0]^{-1}
    let mut u_inv = PolyMatrix::identity(ring, m);
    for op in ops {
        u_inv = op.inverse().apply_left(&u_inv)?;
    }
    Ok(u_inv.submatrix(0..n, 0..m))
}

/// A permutation matrix stored as an index array: row `i` of `S * M` is row
/// `perm[i]` of `M`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || seen[p] {
                return Err(Error::InvalidArgument(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        Ok(Permutation(perm))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p] = i;
        }
        Permutation(inv)
    }

    /// `S * m`.
    pub fn apply_rows(&self, m: &PolyMatrix) -> Result<PolyMatrix> {
        if m.rows != self.len() {
            return Err(Error::DimensionMismatch(format!("permutation of {} on {} rows", self.len(), m.rows)));
        }
        let mut entries = Vec::with_capacity(m.entries.len());
        for &p in &self.0 {
            entries.extend_from_slice(m.row(p));
        }
        Ok(PolyMatrix { entries, ..m.clone() })
    }

    /// `m * S^{-1}`: column `j` of the result is column `perm[j]` of `m`.
    pub fn apply_inverse_cols(&self, m: &PolyMatrix) -> Result<PolyMatrix> {
        if m.cols != self.len() {
            return Err(Error::DimensionMismatch(format!("permutation of {} on {} columns", self.len(), m.cols)));
        }
        let mut entries = Vec::with_capacity(m.entries.len());
        for i in 0..m.rows {
            entries.extend(self.0.iter().map(|&p| m.get(i, p).clone()));
        }
        Ok(PolyMatrix { entries, ..m.clone() })
    }

    pub fn matrix(&self, ring: Ring) -> PolyMatrix {
        self.apply_rows(&PolyMatrix::identity(ring, self.len())).expect("square")
    }
}

/// Blocks `B = (B1 | B2)` and `A = [A1 ; A2]` with `B1, A1` of size `n x n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSplit {
    pub b1: PolyMatrix,
    pub b2: PolyMatrix,
    pub a1: PolyMatrix,
    pub a2: PolyMatrix,
}

impl BlockSplit {
    pub fn of(b: &PolyMatrix, a: &PolyMatrix) -> Result<Self> {
        let (n, m) = (b.rows, b.cols);
        if (a.rows, a.cols) != (m, n) || m < n {
            return Err(Error::DimensionMismatch(format!(
                "B is {}x{}, A is {}x{}; need n x m and m x n with m >= n",
                b.rows, b.cols, a.rows, a.cols
            )));
        }
        Ok(BlockSplit {
            b1: b.submatrix(0..n, 0..n),
            b2: b.submatrix(0..n, n..m),
            a1: a.submatrix(0..n, 0..n),
            a2: a.submatrix(n..m, 0..n),
        })
    }

    pub fn reassemble(&self) -> Result<(PolyMatrix, PolyMatrix)> {
        Ok((self.b1.hstack(&self.b2)?, self.a1.vstack(&self.a2)?))
    }
}

/// The Bruhat-like product `A = U1 S [U2; O]` with its certified left
/// inverse `B = (U2^{-1} | O) S^{-1} U1^{-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruhatPair {
    pub a: PolyMatrix,
    pub b: PolyMatrix,
}

pub fn bruhat_compose(u1: &PolyMatrix, s: &Permutation, u2: &PolyMatrix) -> Result<BruhatPair> {
    let ring = u1.ring;
    ring.check_same(&u2.ring)?;
    let (m, n) = (u1.rows, u2.rows);
    if !u1.is_upper_unitriangular() || !u2.is_upper_unitriangular() {
        return Err(Error::Precondition("U1 and U2 must be upper unitriangular".into()));
    }
    if s.len() != m || m < n {
        return Err(Error::DimensionMismatch(format!("U1 is {m}x{m}, S has size {}, U2 is {n}x{n}", s.len())));
    }
    let padded = u2.vstack(&PolyMatrix::zeros(ring, m - n, n))?;
    let a = u1.mul(&s.apply_rows(&padded)?)?;
    let left = u2.unitriangular_inverse()?.hstack(&PolyMatrix::zeros(ring, n, m - n))?;
    let b = s.apply_inverse_cols(&left)?.mul(&u1.unitriangular_inverse()?)?;
    Ok(BruhatPair { a, b })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldConfig;

    fn ring() -> Ring {
        Ring::new(2, FieldConfig::Rationals)
    }

    fn p(s: &str) -> Polynomial {
        parse(s, ring()).unwrap()
    }

    fn mat(rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::from_rows(ring(), rows.iter().map(|r| r.iter().map(|s| p(s)).collect()).collect()).unwrap()
    }

    #[test]
    fn permute_swaps_rows() {
        let g = mat(&[&["x1 - x2"], &["x2^2"]]);
        let out = ElementaryOp::permute(2, 0, 1).unwrap().apply_left(&g).unwrap();
        assert_eq!(out, mat(&[&["x2^2"], &["x1 - x2"]]));
    }

    #[test]
    fn identity_scale_is_noop() {
        let m = mat(&[&["x1", "1"], &["x2", "x1*x2"]]);
        let op = ElementaryOp::scale(2, 0, ring().field.one()).unwrap();
        assert_eq!(op.apply_left(&m).unwrap(), m);
    }

    #[test]
    fn add_row_on_stacked_identity() {
        let a = PolyMatrix::stacked_identity(ring(), 3, 2).unwrap();
        let f = p("x1 + 2");
        let out = ElementaryOp::add_row(3, 2, 0, f.clone()).unwrap().apply_left(&a).unwrap();
        assert_eq!(out.row(2), &[f, ring().zero()]);
    }

    #[test]
    fn op_validation() {
        assert!(ElementaryOp::permute(3, 1, 1).is_err());
        assert!(ElementaryOp::scale(3, 0, ring().field.zero()).is_err());
        assert!(ElementaryOp::add_row(3, 2, 2, p("x1")).is_err());
        assert!(ElementaryOp::add_row(3, 3, 0, p("x1")).is_err());
        let op = ElementaryOp::permute(3, 0, 1).unwrap();
        assert!(op.apply_left(&PolyMatrix::identity(ring(), 2)).is_err());
    }

    #[test]
    fn row_op_equals_matrix_product() {
        let m = mat(&[&["x1", "1"], &["x2", "x1*x2"], &["3", "x2 - 1"]]);
        let ops = [
            ElementaryOp::permute(3, 0, 2).unwrap(),
            ElementaryOp::scale(3, 1, ring().field.from_i64(-4)).unwrap(),
            ElementaryOp::add_row(3, 0, 1, p("x1^2 - x2")).unwrap(),
        ];
        for op in &ops {
            let full = op.matrix(ring()).unwrap().mul(&m).unwrap();
            assert_eq!(op.apply_left(&m).unwrap(), full);
            assert_eq!(op.matrix(ring()).unwrap().det().unwrap().constant_value().unwrap(), op.det(ring()));
        }
    }

    #[test]
    fn inverses() {
        let m = mat(&[&["x1", "1"], &["x2", "x1*x2"]]);
        let ops = [
            ElementaryOp::permute(2, 0, 1).unwrap(),
            ElementaryOp::scale(2, 1, ring().field.from_i64(3)).unwrap(),
            ElementaryOp::add_row(2, 1, 0, p("x2 + 1")).unwrap(),
        ];
        assert_eq!(ops[0].inverse(), ops[0]);
        assert_eq!(ops[1].inverse(), ElementaryOp::scale(2, 1, ring().field.from_fraction(&1.into(), &3.into()).unwrap()).unwrap());
        assert_eq!(ops[2].inverse(), ElementaryOp::add_row(2, 1, 0, p("-x2 - 1")).unwrap());
        for op in &ops {
            assert_eq!(op.inverse().apply_left(&op.apply_left(&m).unwrap()).unwrap(), m);
        }
    }

    #[test]
    fn determinants() {
        let e3 = PolyMatrix::identity(ring(), 3);
        assert_eq!(e3.det().unwrap(), p("1"));
        let perm = ElementaryOp::permute(3, 0, 2).unwrap().matrix(ring()).unwrap();
        assert_eq!(perm.det().unwrap(), p("-1"));
        // cofactor by hand: x*x - (1)(-1) = x^2 + 1
        let m = mat(&[&["x1", "1"], &["-1", "x1"]]);
        assert_eq!(m.det().unwrap(), p("x1^2 + 1"));
        assert_eq!(m.det_cofactor().unwrap(), p("x1^2 + 1"));
        assert!(mat(&[&["x1", "1"]]).det().is_err());
    }

    #[test]
    fn bareiss_pivots_on_zero() {
        let m = mat(&[&["0", "x1", "1"], &["x2", "0", "2"], &["1", "1", "x1*x2"]]);
        assert_eq!(m.det().unwrap(), m.det_cofactor().unwrap());
        let singular = mat(&[&["x1", "x2"], &["x1^2", "x1*x2"]]);
        assert!(singular.det().unwrap().is_zero());
    }

    #[test]
    fn empty_trace_gives_projection() {
        let b = left_inverse_from_trace(&[], ring(), 3, 2).unwrap();
        let expected = PolyMatrix::identity(ring(), 2).hstack(&PolyMatrix::zeros(ring(), 2, 1)).unwrap();
        assert_eq!(b, expected);
    }

    /// U^{-1} by reversed inverse ops: AddRow(2<-0, f)^{-1} = AddRow(2<-0, -f)
    /// only touches row 2, which (E_2 | O) discards.
    #[test]
    fn row_addition_below_n_is_annihilated() {
        let ops = [ElementaryOp::add_row(3, 2, 0, p("x1*x2 + 1")).unwrap()];
        let b = left_inverse_from_trace(&ops, ring(), 3, 2).unwrap();
        let expected = PolyMatrix::identity(ring(), 2).hstack(&PolyMatrix::zeros(ring(), 2, 1)).unwrap();
        assert_eq!(b, expected);
        let a = apply_product(&ops, &PolyMatrix::stacked_identity(ring(), 3, 2).unwrap()).unwrap();
        assert_eq!(b.mul(&a).unwrap(), PolyMatrix::identity(ring(), 2));
    }

    #[test]
    fn unimodular_inverse() {
        let ops = [
            ElementaryOp::add_row(3, 0, 2, p("x1")).unwrap(),
            ElementaryOp::scale(3, 1, ring().field.from_i64(2)).unwrap(),
            ElementaryOp::add_row(3, 2, 1, p("x2^2 - 1")).unwrap(),
            ElementaryOp::permute(3, 0, 1).unwrap(),
        ];
        let u = apply_product(&ops, &PolyMatrix::identity(ring(), 3)).unwrap();
        let inv = u.inverse_unimodular().unwrap();
        assert_eq!(inv.mul(&u).unwrap(), PolyMatrix::identity(ring(), 3));
        assert!(mat(&[&["x1", "0"], &["0", "1"]]).inverse_unimodular().is_err());
    }

    #[test]
    fn bruhat_identity_triple() {
        let r = ring();
        let pair = bruhat_compose(&PolyMatrix::identity(r, 3), &Permutation::identity(3), &PolyMatrix::identity(r, 2))
            .unwrap();
        assert_eq!(pair.a, PolyMatrix::stacked_identity(r, 3, 2).unwrap());
        assert_eq!(pair.b.mul(&pair.a).unwrap(), PolyMatrix::identity(r, 2));
    }

    #[test]
    fn bruhat_square_case_inverts_u1() {
        let r = ring();
        let u1 = mat(&[&["1", "x1^2 - x2"], &["0", "1"]]);
        let pair = bruhat_compose(&u1, &Permutation::identity(2), &PolyMatrix::identity(r, 2)).unwrap();
        assert_eq!(pair.a, u1);
        assert_eq!(pair.b, mat(&[&["1", "-x1^2 + x2"], &["0", "1"]]));
    }

    #[test]
    fn bruhat_rejects_non_unitriangular() {
        let r = ring();
        let bad = mat(&[&["1", "0"], &["x1", "1"]]);
        assert!(matches!(
            bruhat_compose(&PolyMatrix::identity(r, 2), &Permutation::identity(2), &bad),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn permutation_round_trip() {
        let r = ring();
        let s = Permutation::new(vec![2, 0, 1]).unwrap();
        let m = mat(&[&["x1"], &["x2"], &["1"]]);
        let sm = s.apply_rows(&m).unwrap();
        assert_eq!(sm, s.matrix(r).mul(&m).unwrap());
        assert_eq!(s.inverse().apply_rows(&sm).unwrap(), m);
        let row = mat(&[&["x1", "x2", "1"]]);
        assert_eq!(s.apply_inverse_cols(&row).unwrap(), row.mul(&s.inverse().matrix(r)).unwrap());
        assert!(Permutation::new(vec![0, 0]).is_err());
    }

    #[test]
    fn blocks_round_trip() {
        let b = mat(&[&["1", "x1", "x2"], &["0", "1", "x1*x2"]]);
        let a = mat(&[&["x1", "1"], &["2", "x2"], &["x1 + x2", "0"]]);
        let split = BlockSplit::of(&b, &a).unwrap();
        assert_eq!((split.b1.cols(), split.b2.cols(), split.a2.rows()), (2, 1, 1));
        assert_eq!(split.reassemble().unwrap(), (b, a));
    }

    #[test]
    fn string_grid_round_trip() {
        let m = mat(&[&["x1 - 1/2", "0"], &["x2^3", "-7"]]);
        let grid = m.to_string_grid();
        assert_eq!(grid[0], vec!["x1 - 1/2".to_string(), "0".to_string()]);
        assert_eq!(PolyMatrix::from_string_grid(ring(), &grid).unwrap(), m);
    }
}
