//! Exact integer matrices: fraction-free determinants and Smith normal form.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries given for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from machine-integer rows, which must all have the same length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let data = rows
            .iter()
            .flat_map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)))
            .collect();
        IntMatrix::new(rows.len(), cols, data)
    }

    /// Square matrix with `diag` on the diagonal.
    pub fn diagonal(diag: &[BigInt]) -> Self {
        let mut m = IntMatrix::zeros(diag.len(), diag.len());
        for (i, x) in diag.iter().enumerate() {
            m[(i, i)] = x.clone();
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

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, b: &[BigInt]) -> Result<Vec<BigInt>> {
        if b.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} against {} columns",
                b.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(b).map(|(a, x)| a * x).sum())
            .collect())
    }

    /// Rows rendered as decimal strings, the form used in JSON output.
    pub fn to_decimal_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(BigInt::to_string).collect())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] -= q * row[src]`
    fn sub_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let t = q * &self[(src, j)];
            self[(dst, j)] -= t;
        }
    }

    /// `col[dst] -= q * col[src]`
    fn sub_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let t = q * &self[(i, src)];
            self[(i, dst)] -= t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = -std::mem::take(&mut self[(i, j)]);
            self[(i, j)] = x;
        }
    }

    /// Rows `i, j` become `m * [row_i; row_j]` for the 2x2 matrix `m`.
    fn mix_rows(&mut self, i: usize, j: usize, m: &[[BigInt; 2]; 2]) {
        for c in 0..self.cols {
            let (a, b) = (self[(i, c)].clone(), self[(j, c)].clone());
            self[(i, c)] = &m[0][0] * &a + &m[0][1] * &b;
            self[(j, c)] = &m[1][0] * &a + &m[1][1] * &b;
        }
    }

    /// Columns `i, j` become `[col_i, col_j] * m`.
    fn mix_cols(&mut self, i: usize, j: usize, m: &[[BigInt; 2]; 2]) {
        for r in 0..self.rows {
            let (a, b) = (self[(r, i)].clone(), self[(r, j)].clone());
            self[(r, i)] = &a * &m[0][0] + &b * &m[1][0];
            self[(r, j)] = &a * &m[0][1] + &b * &m[1][1];
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(BigInt::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Signed determinant by Bareiss fraction-free elimination.
///
/// Every intermediate division is exact, so no rationals are formed.
pub fn determinant(a: &IntMatrix) -> Result<BigInt> {
    if !a.is_square() {
        return Err(Error::Shape(format!(
            "determinant of a {}x{} matrix",
            a.rows, a.cols
        )));
    }
    let n = a.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut m = a.clone();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                Some(i) => {
                    m.swap_rows(i, k);
                    negate = !negate;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                m[(i, j)] = num / &prev;
            }
            m[(i, k)] = BigInt::zero();
        }
        prev = m[(k, k)].clone();
    }
    let det = m[(n - 1, n - 1)].clone();
    Ok(if negate { -det } else { det })
}

/// A Smith normal form `u * a * v = d` with unimodular `u`, `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfDecomposition {
    /// The `min(rows, cols)` diagonal entries of `d`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    /// Number of nonzero diagonal entries. They always come first.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }

    /// Whether `b` lies in the integer column span of the decomposed matrix.
    ///
    /// With `c = u * b`, this holds iff `d_i | c_i` for every nonzero
    /// diagonal entry and `c_i = 0` for every row beyond the rank.
    pub fn contains(&self, b: &[BigInt]) -> Result<bool> {
        let c = self.u.mul_vec(b)?;
        let diag = self.diagonal();
        Ok(c.iter().enumerate().all(|(i, ci)| match diag.get(i) {
            Some(di) if !di.is_zero() => ci.is_multiple_of(di),
            _ => ci.is_zero(),
        }))
    }

    /// Checks every structural invariant against the original matrix `a`.
    pub fn verify(&self, a: &IntMatrix) -> bool {
        let product = self.u.mul(a).and_then(|ua| ua.mul(&self.v));
        if product.as_ref() != Ok(&self.d) {
            return false;
        }
        let unimodular = |m: &IntMatrix| determinant(m).is_ok_and(|x| x.abs().is_one());
        if !unimodular(&self.u) || !unimodular(&self.v) {
            return false;
        }
        for i in 0..self.d.rows {
            for j in 0..self.d.cols {
                if i != j && !self.d[(i, j)].is_zero() {
                    return false;
                }
            }
        }
        let diag = self.diagonal();
        let rank = self.rank();
        diag.iter().all(|x| !x.is_negative())
            && diag[rank..].iter().all(Zero::is_zero)
            && diag[..rank].windows(2).all(|w| w[1].is_multiple_of(&w[0]))
    }
}

/// Smith normal form with explicit unimodular transforms.
///
/// Pivots are the smallest nonzero entry (in absolute value) of the remaining
/// submatrix. After diagonalization, adjacent-entry gcd/lcm transforms repair
/// the divisibility chain.
pub fn smith_normal_form(a: &IntMatrix) -> SnfDecomposition {
    let (rows, cols) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let steps = rows.min(cols);

    let mut rank = 0;
    while rank < steps {
        let t = rank;
        let Some((pi, pj)) = smallest_nonzero(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            for i in t + 1..rows {
                if !d[(i, t)].is_zero() {
                    let q = d[(i, t)].div_floor(&d[(t, t)]);
                    d.sub_row(i, t, &q);
                    u.sub_row(i, t, &q);
                }
            }
            for j in t + 1..cols {
                if !d[(t, j)].is_zero() {
                    let q = d[(t, j)].div_floor(&d[(t, t)]);
                    d.sub_col(j, t, &q);
                    v.sub_col(j, t, &q);
                }
            }
            // remainders left in the pivot row/column are smaller than the pivot
            let col_min = (t + 1..rows)
                .filter(|&i| !d[(i, t)].is_zero())
                .min_by_key(|&i| d[(i, t)].abs());
            let row_min = (t + 1..cols)
                .filter(|&j| !d[(t, j)].is_zero())
                .min_by_key(|&j| d[(t, j)].abs());
            match (col_min, row_min) {
                (None, None) => break,
                (Some(i), Some(j)) if d[(t, j)].abs() < d[(i, t)].abs() => {
                    d.swap_cols(t, j);
                    v.swap_cols(t, j);
                }
                (Some(i), _) => {
                    d.swap_rows(t, i);
                    u.swap_rows(t, i);
                }
                (None, Some(j)) => {
                    d.swap_cols(t, j);
                    v.swap_cols(t, j);
                }
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        rank += 1;
    }

    for i in 0..rank {
        for j in i + 1..rank {
            let (x, y) = (d[(i, i)].clone(), d[(j, j)].clone());
            if y.is_multiple_of(&x) {
                continue;
            }
            let eg = x.extended_gcd(&y);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let (xg, yg) = (&x / &g, &y / &g);
            let left = [[s.clone(), t.clone()], [-&yg, xg.clone()]];
            let right = [[BigInt::one(), -(&t * &yg)], [BigInt::one(), &s * &xg]];
            d.mix_rows(i, j, &left);
            u.mix_rows(i, j, &left);
            d.mix_cols(i, j, &right);
            v.mix_cols(i, j, &right);
        }
    }

    SnfDecomposition { u, d, v }
}

fn smallest_nonzero(m: &IntMatrix, from: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in from..m.rows {
        for j in from..m.cols {
            let x = &m[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, b)| x.abs() < *b) {
                best = Some(((i, j), x.abs()));
            }
        }
    }
    best.map(|(p, _)| p)
}

/// Whether `b` is an integer combination of the columns of `a`.
pub fn solve_image_membership(a: &IntMatrix, b: &[BigInt]) -> Result<bool> {
    if b.len() != a.rows {
        return Err(Error::Shape(format!(
            "vector of length {} against {} rows",
            b.len(),
            a.rows
        )));
    }
    smith_normal_form(a).contains(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Cofactor expansion along the first row.
    fn cofactor_det(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|c| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != c)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if c % 2 == 0 { 1 } else { -1 };
                sign * m[0][c] * cofactor_det(&minor)
            })
            .sum()
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(
            determinant(&IntMatrix::identity(3)).unwrap(),
            BigInt::from(1)
        );
        // reduced Laplacian of C_4 with vertex 3 deleted
        let c4 = IntMatrix::from_rows(&[[2, -1, 0], [-1, 2, -1], [0, -1, 2]]).unwrap();
        assert_eq!(determinant(&c4).unwrap(), BigInt::from(4));
        let swap = IntMatrix::from_rows(&[[0, 1], [1, 0]]).unwrap();
        assert_eq!(determinant(&swap).unwrap(), BigInt::from(-1));
        let singular = IntMatrix::from_rows(&[[1, 2], [2, 4]]).unwrap();
        assert_eq!(determinant(&singular).unwrap(), BigInt::from(0));
        assert!(matches!(
            determinant(&IntMatrix::zeros(2, 3)),
            Err(Error::Shape(_))
        ));
        assert_eq!(
            determinant(&IntMatrix::zeros(0, 0)).unwrap(),
            BigInt::from(1)
        );
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..400 {
            let n = rng.gen_range(1..=4);
            let rows: Vec<Vec<i64>> = (0..n)
                .map(|_| (0..n).map(|_| rng.gen_range(-5..=5)).collect())
                .collect();
            let m = IntMatrix::from_rows(&rows).unwrap();
            assert_eq!(
                determinant(&m).unwrap(),
                BigInt::from(cofactor_det(&rows)),
                "{rows:?}"
            );
        }
    }

    #[test]
    fn snf_examples() {
        let snf = smith_normal_form(&IntMatrix::diagonal(&big(&[2, 3])));
        assert_eq!(snf.diagonal(), big(&[1, 6]));

        let k4 = IntMatrix::from_rows(&[[3, -1, -1], [-1, 3, -1], [-1, -1, 3]]).unwrap();
        let snf = smith_normal_form(&k4);
        assert_eq!(snf.diagonal(), big(&[1, 4, 4]));
        assert!(snf.verify(&k4));

        let zero = IntMatrix::zeros(2, 2);
        let snf = smith_normal_form(&zero);
        assert_eq!(snf.diagonal(), big(&[0, 0]));
        assert_eq!(snf.u, IntMatrix::identity(2));
        assert_eq!(snf.v, IntMatrix::identity(2));

        let rect = IntMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12]]).unwrap();
        let snf = smith_normal_form(&rect);
        assert!(snf.verify(&rect));
        assert_eq!(snf.diagonal(), big(&[2, 6]));
    }

    #[test]
    fn image_membership() {
        let a = IntMatrix::diagonal(&big(&[2]));
        assert!(solve_image_membership(&a, &big(&[4])).unwrap());
        assert!(!solve_image_membership(&a, &big(&[3])).unwrap());
        let c3 = IntMatrix::from_rows(&[[2, -1], [-1, 2]]).unwrap();
        // firing vector (2, 1) produces (3, 0)
        assert_eq!(c3.mul_vec(&big(&[2, 1])).unwrap(), big(&[3, 0]));
        assert!(solve_image_membership(&c3, &big(&[3, 0])).unwrap());
        assert!(!solve_image_membership(&c3, &big(&[1, 0])).unwrap());
        assert!(matches!(
            solve_image_membership(&c3, &big(&[1])),
            Err(Error::Shape(_))
        ));
        // beyond the rank the transformed vector must vanish
        let tall = IntMatrix::from_rows(&[[1], [1]]).unwrap();
        assert!(solve_image_membership(&tall, &big(&[5, 5])).unwrap());
        assert!(!solve_image_membership(&tall, &big(&[5, 4])).unwrap());
    }

    #[test]
    fn shape_errors() {
        assert!(IntMatrix::new(2, 2, big(&[1, 2, 3])).is_err());
        assert!(IntMatrix::from_rows(&[vec![1, 2], vec![3]]).is_err());
        assert!(IntMatrix::zeros(2, 3).mul(&IntMatrix::zeros(2, 3)).is_err());
    }
}
