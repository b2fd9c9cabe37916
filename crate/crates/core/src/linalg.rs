//! Exact linear algebra over [`FieldElement`]s.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{ParseError, PolyError};
use crate::field::{FieldElement, FieldSpec};

/// Dense row-major matrix over one field.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, data: Vec<FieldElement>) -> Result<Self, PolyError> {
        if data.len() != rows * cols {
            return Err(PolyError::Shape(format!("{} entries for {rows}x{cols}", data.len())));
        }
        if data.iter().any(|x| x.spec() != field) {
            return Err(PolyError::RingMismatch(format!("entries not in {field}")));
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![FieldElement::zero(field); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::one(field));
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<FieldElement>>) -> Result<Self, PolyError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(PolyError::Shape("ragged rows".into()));
        }
        Self::new(field, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_ints(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&v| FieldElement::from_int(field, v)).collect())
            .collect();
        Self::from_rows(field, data).expect("rectangular integer matrix")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn map(&self, f: impl Fn(&FieldElement) -> FieldElement) -> Self {
        Matrix {
            data: self.data.iter().map(f).collect(),
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shapes");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Matrix {
        self.map(|a| a * c)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn pow(&self, mut k: u64) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = Matrix::identity(self.field, self.rows);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldElement::is_zero)
    }

    /// Stacks matrices with equal column count vertically.
    pub fn vstack(field: FieldSpec, parts: &[Matrix]) -> Matrix {
        let cols = parts.first().map_or(0, |m| m.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for m in parts {
            assert_eq!(m.cols, cols);
            rows += m.rows;
            data.extend(m.data.iter().cloned());
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : self·v = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<FieldElement>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![FieldElement::zero(self.field); self.cols];
                v[fc] = FieldElement::one(self.field);
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, fc);
                }
                v
            })
            .collect()
    }

    /// Reduced echelon basis of the row space (nonzero rows only).
    pub fn row_space_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let k = pivots.len();
        Matrix {
            field: self.field,
            rows: k,
            cols: self.cols,
            data: r.data[..k * self.cols].to_vec(),
        }
    }

    pub fn determinant(&self) -> FieldElement {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let mut det = FieldElement::one(self.field);
        for c in 0..m.cols {
            let Some(pr) = (c..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                return FieldElement::zero(self.field);
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv().expect("nonzero pivot");
            for i in c + 1..m.rows {
                let f = m.get(i, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Matrix, PolyError> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, FieldElement::one(self.field));
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(PolyError::Singular);
        }
        let mut out = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(out)
    }

    /// Parses `[[a, b], [c, d]]` with entries in the element syntax.
    pub fn parse(field: FieldSpec, text: &str) -> Result<Matrix, ParseError> {
        parse_matrix(field, text, 1, 1)
    }
}

/// Parses a bracketed matrix; `line`/`col` locate `text` inside a larger input.
pub(crate) fn parse_matrix(field: FieldSpec, text: &str, line: usize, col: usize) -> Result<Matrix, ParseError> {
    let err = |off: usize, msg: &str| ParseError::new(line, col + off, msg);
    let bytes = text.as_bytes();
    let mut depth = 0i32;
    let mut rows: Vec<Vec<FieldElement>> = Vec::new();
    let mut current: Vec<FieldElement> = Vec::new();
    let mut entry_start = None;
    let mut paren = 0i32;
    let mut saw_outer = false;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'[' => {
                depth += 1;
                if depth == 1 {
                    if saw_outer {
                        return Err(err(i, "unexpected `[` after matrix"));
                    }
                    saw_outer = true;
                } else if depth == 2 {
                    current.clear();
                    entry_start = Some(i + 1);
                } else {
                    return Err(err(i, "matrices nest at most two levels"));
                }
            }
            b'(' => paren += 1,
            b')' => paren -= 1,
            b',' | b']' if depth == 2 && paren == 0 => {
                let start = entry_start.ok_or_else(|| err(i, "misplaced separator"))?;
                let s = &text[start..i];
                if s.trim().is_empty() {
                    if !(b == b']' && current.is_empty()) {
                        return Err(err(start, "empty matrix entry"));
                    }
                } else {
                    let v = crate::poly::parse::parse_element(field, s)
                        .map_err(|e| ParseError::new(line, col + start + e.col - 1, e.msg))?;
                    current.push(v);
                }
                if b == b']' {
                    depth -= 1;
                    rows.push(std::mem::take(&mut current));
                    entry_start = None;
                } else {
                    entry_start = Some(i + 1);
                }
            }
            b']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(err(i, "unbalanced `]`"));
                }
            }
            b',' if depth == 1 => {}
            c if depth == 0 && !c.is_ascii_whitespace() => {
                return Err(err(i, "expected `[`"));
            }
            _ => {}
        }
    }
    if depth != 0 || !saw_outer {
        return Err(err(text.len(), "unterminated matrix"));
    }
    let ncols = rows.first().map_or(0, Vec::len);
    if let Some(k) = rows.iter().position(|r| r.len() != ncols) {
        return Err(err(
            0,
            &format!("row {} has {} entries, expected {ncols}", k + 1, rows[k].len()),
        ));
    }
    Matrix::from_rows(field, rows).map_err(|e| err(0, &e.to_string()))
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Sparse vector keyed by coordinate index.
pub type SparseVec = BTreeMap<usize, FieldElement>;

/// Incremental echelon basis of a span of sparse vectors, remembering how each
/// basis vector combines the inserted generators.
#[derive(Clone, Debug)]
pub struct SparseSpan {
    field: FieldSpec,
    // pivot coordinate -> (vector with leading coordinate = pivot and value 1, combination)
    basis: BTreeMap<usize, (SparseVec, SparseVec)>,
    inserted: usize,
}

fn axpy(target: &mut SparseVec, scale: &FieldElement, v: &SparseVec) {
    for (k, x) in v {
        let add = scale * x;
        match target.entry(*k) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &add;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                if !add.is_zero() {
                    e.insert(add);
                }
            }
        }
    }
}

impl SparseSpan {
    pub fn new(field: FieldSpec) -> Self {
        SparseSpan {
            field,
            basis: BTreeMap::new(),
            inserted: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Reduces `v` against the basis; returns the residue and the combination
    /// `c` of generators with `v - residue = Σ c_i g_i`.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut rest = v.clone();
        let mut combo = SparseVec::new();
        loop {
            let next = rest
                .iter()
                .rev()
                .find(|(k, _)| self.basis.contains_key(k))
                .map(|(k, x)| (*k, x.clone()));
            let Some((k, x)) = next else { break };
            let (bv, bc) = &self.basis[&k];
            axpy(&mut rest, &-&x, bv);
            axpy(&mut combo, &x, bc);
        }
        (rest, combo)
    }

    /// Adds generator number `self.inserted`; returns whether the span grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let index = self.inserted;
        self.inserted += 1;
        let (rest, combo) = self.reduce(v);
        let Some((&lead, lead_val)) = rest.iter().next_back() else {
            return false;
        };
        let inv = lead_val.inv().expect("nonzero lead");
        let mut own = SparseVec::new();
        own.insert(index, FieldElement::one(self.field));
        let mut c = SparseVec::new();
        axpy(&mut c, &FieldElement::one(self.field), &own);
        axpy(&mut c, &-FieldElement::one(self.field), &combo);
        let mut bv = SparseVec::new();
        axpy(&mut bv, &inv, &rest);
        let mut bc = SparseVec::new();
        axpy(&mut bc, &inv, &c);
        self.basis.insert(lead, (bv, bc));
        true
    }

    /// Coefficients over the inserted generators when `v` lies in the span.
    pub fn solve(&self, v: &SparseVec) -> Option<SparseVec> {
        let (rest, combo) = self.reduce(v);
        rest.is_empty().then_some(combo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }

    #[test]
    fn rank_and_kernel() {
        let m = Matrix::from_ints(f3(), &[&[1, 2, 0], &[2, 1, 0]]);
        // second row is 2 * first over F_3
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            let col = Matrix::from_rows(f3(), v.iter().map(|x| vec![x.clone()]).collect()).unwrap();
            assert!(m.mul(&col).is_zero());
        }
    }

    #[test]
    fn inverse_and_determinant() {
        let m = Matrix::from_ints(f3(), &[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]);
        assert!(m.determinant().is_one());
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert_eq!(m.pow(3), Matrix::identity(f3(), 3));
        let s = Matrix::from_ints(f3(), &[&[1, 2], &[2, 1]]);
        assert!(s.determinant().is_zero());
        assert_eq!(s.inverse(), Err(PolyError::Singular));
    }

    #[test]
    fn parse_and_display() {
        let k = FieldSpec::perfect_rational(3).unwrap();
        let m = Matrix::parse(k, "[[1, t, 0], [0, 1, t^(1/3)], [0, 0, 1]]").unwrap();
        assert_eq!(m.to_string(), "[[1, t, 0], [0, 1, t^(1/3)], [0, 0, 1]]");
        assert!(Matrix::parse(k, "[[1, 2], [3]]").is_err());
        let e = Matrix::parse(k, "[[1, 2], [3, $]]").unwrap_err();
        assert_eq!(e.col, 14);
    }

    #[test]
    fn sparse_span_solves() {
        let f = f3();
        let one = FieldElement::one(f);
        let two = FieldElement::from_int(f, 2);
        let mut span = SparseSpan::new(f);
        let g0: SparseVec = [(0, one.clone()), (2, one.clone())].into_iter().collect();
        let g1: SparseVec = [(1, one.clone()), (2, two.clone())].into_iter().collect();
        assert!(span.insert(&g0));
        assert!(span.insert(&g1));
        // g0 + g1 = (1, 1, 0)
        let target: SparseVec = [(0, one.clone()), (1, one.clone())].into_iter().collect();
        let c = span.solve(&target).unwrap();
        assert_eq!(c.get(&0), Some(&one));
        assert_eq!(c.get(&1), Some(&one));
        let off: SparseVec = [(0, one.clone())].into_iter().collect();
        assert!(span.solve(&off).is_none());
        assert!(!span.insert(&target));
    }
}
