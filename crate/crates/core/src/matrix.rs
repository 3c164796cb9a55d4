//! Dense matrices over a [`Scalars`] context.

use crate::error::{Error, Result};
use crate::scalar::Scalars;

/// Row-major dense matrix. Entries are canonical scalar values, so derived
/// equality is exact equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<V> {
    rows: usize,
    cols: usize,
    data: Vec<V>,
}

impl<V: Clone> Matrix<V> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<V>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<V>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Parse("matrix rows have different lengths".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn zeros<S: Scalars<Value = V>>(s: &S, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![s.zero(); rows * cols] }
    }

    pub fn identity<S: Scalars<Value = V>>(s: &S, k: usize) -> Self {
        let mut m = Self::zeros(s, k, k);
        for i in 0..k {
            m.set(i, i, s.one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &V {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: V) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[V] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[V] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<V>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Plain transpose, no scalar involution.
    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    /// Transpose composed with the entrywise scalar involution.
    pub fn star<S: Scalars<Value = V>>(&self, s: &S) -> Self {
        let mut t = self.transpose();
        if !s.conj_is_trivial() {
            t.data = t.data.iter().map(|v| s.conj(v)).collect();
        }
        t
    }

    pub fn add<S: Scalars<Value = V>>(&self, s: &S, other: &Self) -> Self {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| s.add(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub<S: Scalars<Value = V>>(&self, s: &S, other: &Self) -> Self {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| s.sub(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg<S: Scalars<Value = V>>(&self, s: &S) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| s.neg(a)).collect() }
    }

    pub fn scale<S: Scalars<Value = V>>(&self, s: &S, c: &V) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| s.mul(c, a)).collect() }
    }

    pub fn mul<S: Scalars<Value = V>>(&self, s: &S, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = s.zero();
                for l in 0..self.cols {
                    let a = self.get(i, l);
                    if s.is_zero(a) {
                        continue;
                    }
                    acc = s.add(&acc, &s.mul(a, other.get(l, j)));
                }
                out.push(acc);
            }
        }
        Matrix { rows: self.rows, cols: other.cols, data: out }
    }

    pub fn is_zero<S: Scalars<Value = V>>(&self, s: &S) -> bool {
        self.data.iter().all(|v| s.is_zero(v))
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column count");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let data = idx.iter().flat_map(|&i| self.row(i).iter().cloned()).collect();
        Matrix { rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.rows * idx.len());
        for i in 0..self.rows {
            for &j in idx {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.rows, cols: idx.len(), data }
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> Self {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != skip_row) {
            for j in (0..self.cols).filter(|&j| j != skip_col) {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.rows - 1, cols: self.cols - 1, data }
    }

    /// Determinant by cofactor expansion. Works over any commutative scalar
    /// ring; intended for the small dimensions used here.
    pub fn determinant<S: Scalars<Value = V>>(&self, s: &S) -> V {
        assert!(self.is_square(), "determinant of a non-square matrix");
        match self.rows {
            0 => s.one(),
            1 => self.data[0].clone(),
            2 => s.sub(&s.mul(self.get(0, 0), self.get(1, 1)), &s.mul(self.get(0, 1), self.get(1, 0))),
            n => {
                let mut acc = s.zero();
                for j in 0..n {
                    let a = self.get(0, j);
                    if s.is_zero(a) {
                        continue;
                    }
                    let term = s.mul(a, &self.minor(0, j).determinant(s));
                    acc = if j % 2 == 0 { s.add(&acc, &term) } else { s.sub(&acc, &term) };
                }
                acc
            }
        }
    }

    pub fn adjugate<S: Scalars<Value = V>>(&self, s: &S) -> Self {
        let n = self.rows;
        if n == 1 {
            return Self::identity(s, 1);
        }
        let mut out = Self::zeros(s, n, n);
        for i in 0..n {
            for j in 0..n {
                let c = self.minor(i, j).determinant(s);
                let c = if (i + j) % 2 == 0 { c } else { s.neg(&c) };
                out.set(j, i, c);
            }
        }
        out
    }

    pub fn render<S: Scalars<Value = V>>(&self, s: &S) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let cells: Vec<String> = self.row(i).iter().map(|v| s.render(v)).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }
}

/// Parse a matrix literal such as `[[0,1],[1/2,-i]]`.
pub fn parse_literal<S: Scalars>(s: &S, text: &str) -> Result<Matrix<S::Value>> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = t
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("matrix literal must be bracketed: `{text}`")))?;
    if inner.is_empty() {
        return Err(Error::Parse("empty matrix literal".into()));
    }
    let mut rows = Vec::new();
    let mut rest = inner;
    loop {
        let body =
            rest.strip_prefix('[').ok_or_else(|| Error::Parse(format!("expected `[` in matrix literal `{text}`")))?;
        let end = body.find(']').ok_or_else(|| Error::Parse(format!("unterminated row in `{text}`")))?;
        let row = body[..end].split(',').map(|cell| s.parse(cell.trim_matches('"'))).collect::<Result<Vec<_>>>()?;
        rows.push(row);
        rest = &body[end + 1..];
        if rest.is_empty() {
            break;
        }
        rest = rest.strip_prefix(',').ok_or_else(|| Error::Parse(format!("expected `,` between rows in `{text}`")))?;
    }
    Matrix::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Exact, Modular};
    use num_rational::BigRational;

    #[test]
    fn literal_round_trip() {
        let s = Exact::<BigRational>::new();
        let m = parse_literal(&s, "[[0, 1], [1/2, -3/4]]").unwrap();
        assert_eq!(m.render(&s), "[[0,1],[1/2,-3/4]]");
        assert_eq!(parse_literal(&s, &m.render(&s)).unwrap(), m);
        assert!(parse_literal(&s, "[[1,2],[3]]").is_err());
        assert!(parse_literal(&s, "[1,2]").is_err());
    }

    #[test]
    fn determinant_and_adjugate_mod_n() {
        let z4 = Modular::new(4).unwrap();
        let m = parse_literal(&z4, "[[1,2,0],[0,1,3],[1,0,1]]").unwrap();
        let det = m.determinant(&z4);
        // 1*(1-0) - 2*(0-3) + 0 = 7 = 3 mod 4
        assert_eq!(det, 3);
        let adj = m.adjugate(&z4);
        let prod = m.mul(&z4, &adj);
        assert_eq!(prod, Matrix::identity(&z4, 3).scale(&z4, &det));
    }

    #[test]
    fn star_is_transpose_over_rationals() {
        let s = Exact::<BigRational>::new();
        let a = parse_literal(&s, "[[0,1],[0,1]]").unwrap();
        assert_eq!(a.star(&s), parse_literal(&s, "[[0,0],[1,1]]").unwrap());
    }
}
