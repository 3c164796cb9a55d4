//! Exact linear algebra over a field: row reduction, ranks, spans, and the
//! rank-factorization closed forms for generalized inverses.
//!
//! Every routine here assumes `s.is_field()`. Pivoting takes the first
//! nonzero entry in the column, so results are deterministic.

use crate::matrix::Matrix;
use crate::scalar::Scalars;

/// Reduced row-echelon form and the pivot columns.
pub fn rref<S: Scalars>(s: &S, m: &Matrix<S::Value>) -> (Matrix<S::Value>, Vec<usize>) {
    debug_assert!(s.is_field());
    let mut rows = m.to_rows();
    let (nr, nc) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr).find(|&i| !s.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = s.inv(&rows[r][c]).expect("nonzero pivot in a field");
        for v in rows[r].iter_mut() {
            *v = s.mul(&inv, v);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || s.is_zero(&row[c]) {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                *v = s.sub(v, &s.mul(&f, p));
            }
        }
        pivots.push(c);
        r += 1;
    }
    let flat = rows.into_iter().flatten().collect();
    (Matrix::from_vec(nr, nc, flat), pivots)
}

pub fn rank<S: Scalars>(s: &S, m: &Matrix<S::Value>) -> usize {
    rref(s, m).1.len()
}

/// Canonical basis of the row space: the nonzero rows of the RREF.
pub fn row_basis<S: Scalars>(s: &S, m: &Matrix<S::Value>) -> Matrix<S::Value> {
    let (r, pivots) = rref(s, m);
    let idx: Vec<usize> = (0..pivots.len()).collect();
    r.select_rows(&idx)
}

/// Canonical basis (as rows) of `{v : m v = 0}`.
pub fn null_basis<S: Scalars>(s: &S, m: &Matrix<S::Value>) -> Matrix<S::Value> {
    let (r, pivots) = rref(s, m);
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Matrix::zeros(s, free.len(), m.cols());
    for (b, &f) in free.iter().enumerate() {
        basis.set(b, f, s.one());
        for (i, &p) in pivots.iter().enumerate() {
            basis.set(b, p, s.neg(r.get(i, f)));
        }
    }
    row_basis(s, &basis)
}

/// True when the row span of `small` lies inside the row span of `big`.
pub fn span_contains<S: Scalars>(s: &S, big: &Matrix<S::Value>, small: &Matrix<S::Value>) -> bool {
    if small.rows() == 0 {
        return true;
    }
    rank(s, &big.vstack(small)) == rank(s, big)
}

/// Gauss-Jordan inverse of a square matrix.
pub fn inverse<S: Scalars>(s: &S, m: &Matrix<S::Value>) -> Option<Matrix<S::Value>> {
    let n = m.rows();
    debug_assert!(m.is_square());
    let mut aug = Vec::with_capacity(n * 2 * n);
    for i in 0..n {
        aug.extend(m.row(i).iter().cloned());
        aug.extend((0..n).map(|j| if i == j { s.one() } else { s.zero() }));
    }
    let (r, pivots) = rref(s, &Matrix::from_vec(n, 2 * n, aug));
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let right: Vec<usize> = (n..2 * n).collect();
    Some(r.select_cols(&right))
}

/// Full-rank factorization `m = F G` with `F` built from the pivot columns
/// of `m` and `G` the nonzero rows of its RREF.
pub fn rank_factorization<S: Scalars>(s: &S, m: &Matrix<S::Value>) -> (Matrix<S::Value>, Matrix<S::Value>) {
    let (r, pivots) = rref(s, m);
    let f = m.select_cols(&pivots);
    let idx: Vec<usize> = (0..pivots.len()).collect();
    (f, r.select_rows(&idx))
}

/// Left inverse of a matrix with full column rank.
fn left_inverse<S: Scalars>(s: &S, f: &Matrix<S::Value>) -> Matrix<S::Value> {
    let r = f.cols();
    // independent rows of F are the pivot columns of F^T
    let (_, rows) = rref(s, &f.transpose());
    let square = f.select_rows(&rows);
    let sinv = inverse(s, &square).expect("selected rows are independent");
    let mut out = Matrix::zeros(s, r, f.rows());
    for i in 0..r {
        for (c, &row) in rows.iter().enumerate() {
            out.set(i, row, sinv.get(i, c).clone());
        }
    }
    out
}

/// A {1}-inverse: some `x` with `m x m = m`.
pub fn inner_inverse<S: Scalars>(s: &S, m: &Matrix<S::Value>) -> Matrix<S::Value> {
    let (f, g) = rank_factorization(s, m);
    if g.rows() == 0 {
        return Matrix::zeros(s, m.cols(), m.rows());
    }
    let (_, pivots) = rref(s, &g);
    // G is in RREF, so the identity placed on its pivot columns is a right inverse.
    let mut right = Matrix::zeros(s, m.cols(), g.rows());
    for (i, &p) in pivots.iter().enumerate() {
        right.set(p, i, s.one());
    }
    right.mul(s, &left_inverse(s, &f))
}

/// `G*(GG*)^-1 (F*F)^-1 F*`; fails when either Gram matrix is singular.
pub fn moore_penrose<S: Scalars>(s: &S, m: &Matrix<S::Value>) -> Result<Matrix<S::Value>, String> {
    let (f, g) = rank_factorization(s, m);
    let r = g.rows();
    if r == 0 {
        return Ok(Matrix::zeros(s, m.cols(), m.rows()));
    }
    let fs = f.star(s);
    let gs = g.star(s);
    let ff = fs.mul(s, &f);
    let gg = g.mul(s, &gs);
    let ffi =
        inverse(s, &ff).ok_or_else(|| format!("F*F is singular: rank(a*a) = {} < rank(a) = {r}", rank(s, &ff)))?;
    let ggi =
        inverse(s, &gg).ok_or_else(|| format!("GG* is singular: rank(aa*) = {} < rank(a) = {r}", rank(s, &gg)))?;
    Ok(gs.mul(s, &ggi).mul(s, &ffi).mul(s, &fs))
}

/// `F (GF)^-2 G`; fails when `GF` is singular, i.e. rank(a^2) < rank(a).
pub fn group_inverse<S: Scalars>(s: &S, m: &Matrix<S::Value>) -> Result<Matrix<S::Value>, String> {
    let (f, g) = rank_factorization(s, m);
    let r = g.rows();
    if r == 0 {
        return Ok(Matrix::zeros(s, m.cols(), m.rows()));
    }
    let gf = g.mul(s, &f);
    let inv =
        inverse(s, &gf).ok_or_else(|| format!("rank(a^2) = {} differs from rank(a) = {r}", rank(s, &m.mul(s, m))))?;
    Ok(f.mul(s, &inv).mul(s, &inv).mul(s, &g))
}

/// A {1,3}-inverse `(a*a)^- a*`, available iff rank(a*a) = rank(a).
pub fn least_squares_inverse<S: Scalars>(s: &S, m: &Matrix<S::Value>) -> Result<Matrix<S::Value>, String> {
    let ms = m.star(s);
    let gram = ms.mul(s, m);
    let (rg, rm) = (rank(s, &gram), rank(s, m));
    if rg != rm {
        return Err(format!("rank(a*a) = {rg} differs from rank(a) = {rm}"));
    }
    Ok(inner_inverse(s, &gram).mul(s, &ms))
}

/// Core inverse candidate `a^# a a^(1,3)`.
pub fn core_inverse<S: Scalars>(s: &S, m: &Matrix<S::Value>) -> Result<Matrix<S::Value>, String> {
    let g = group_inverse(s, m)?;
    let l = least_squares_inverse(s, m)?;
    Ok(g.mul(s, m).mul(s, &l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::parse_literal;
    use crate::scalar::{Exact, Modular};
    use num_rational::BigRational;

    fn q() -> Exact<BigRational> {
        Exact::new()
    }

    #[test]
    fn rank_factorization_reassembles() {
        let s = q();
        let a = parse_literal(&s, "[[1,2,3],[2,4,6],[1,0,1]]").unwrap();
        let (f, g) = rank_factorization(&s, &a);
        assert_eq!(f.cols(), 2);
        assert_eq!(f.mul(&s, &g), a);
        let x = inner_inverse(&s, &a);
        assert_eq!(a.mul(&s, &x).mul(&s, &a), a);
    }

    #[test]
    fn null_space_of_singular_matrix() {
        let s = q();
        let a = parse_literal(&s, "[[0,1],[0,1]]").unwrap();
        let n = null_basis(&s, &a);
        assert_eq!(n, parse_literal(&s, "[[1,0]]").unwrap());
        assert_eq!(null_basis(&s, &Matrix::identity(&s, 2)).rows(), 0);
    }

    #[test]
    fn column_space_of_golden_matrix() {
        let s = q();
        let a = parse_literal(&s, "[[0,1],[0,1]]").unwrap();
        let cols = row_basis(&s, &a.transpose());
        assert_eq!(cols, parse_literal(&s, "[[1,1]]").unwrap());
        let star_cols = row_basis(&s, &a.star(&s).transpose());
        assert_eq!(star_cols, parse_literal(&s, "[[0,1]]").unwrap());
        assert!(!span_contains(&s, &star_cols, &cols));
    }

    #[test]
    fn closed_forms_on_golden_matrix() {
        let s = q();
        let a = parse_literal(&s, "[[0,1],[0,1]]").unwrap();
        assert_eq!(moore_penrose(&s, &a).unwrap(), parse_literal(&s, "[[0,0],[1/2,1/2]]").unwrap());
        assert_eq!(group_inverse(&s, &a).unwrap(), a);
        assert_eq!(core_inverse(&s, &a).unwrap(), parse_literal(&s, "[[1/2,1/2],[1/2,1/2]]").unwrap());
        let n = parse_literal(&s, "[[0,1],[0,0]]").unwrap();
        assert!(group_inverse(&s, &n).is_err());
    }

    #[test]
    fn degenerate_gram_over_gf2() {
        let s = Modular::new(2).unwrap();
        // a*a = [[1,1],[1,1]]^2 = 0 over GF(2)
        let a = parse_literal(&s, "[[1,1],[1,1]]").unwrap();
        assert!(moore_penrose(&s, &a).is_err());
        assert!(inverse(&s, &a).is_none());
        let u = parse_literal(&s, "[[1,1],[0,1]]").unwrap();
        assert_eq!(inverse(&s, &u).unwrap(), u);
    }
}
