//! Dense exact matrices and the elimination routines built on them.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::rat::Rat;
use super::scalar::Scalar;

pub type Vector = Vec<Scalar>;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_columns(cols: &[Vector], rows: usize) -> Matrix {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                if !v.is_zero() {
                    m.set(i, j, v.clone());
                }
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

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn trace(&self) -> Scalar {
        let mut t = Scalar::zero();
        for i in 0..self.rows.min(self.cols) {
            t += self.get(i, i);
        }
        t
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        if let Some(m) = self
            .integer_form()
            .zip(o.integer_form())
            .and_then(|(a, b)| self.mul_integer(o, a, b))
        {
            return m;
        }
        self.mul_generic(o)
    }

    pub(crate) fn mul_generic(&self, o: &Matrix) -> Matrix {
        let cols = o.cols;
        let rows: Vec<Vec<Scalar>> = (0..self.rows)
            .into_par_iter()
            .map(|i| {
                let mut acc = vec![Scalar::zero(); cols];
                for (k, a) in self.row(i).iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in o.row(k).iter().enumerate() {
                        if !b.is_zero() {
                            acc[j] += &(a * b);
                        }
                    }
                }
                acc
            })
            .collect();
        Matrix {
            rows: self.rows,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Numerators over a common denominator, when every entry is a small
    /// rational.
    fn integer_form(&self) -> Option<(Vec<i64>, i64)> {
        let mut den: i64 = 1;
        for x in &self.data {
            let (_, d) = x.as_rational()?.small()?;
            if d > 1 << 40 {
                return None;
            }
            den = num_integer::lcm(den, d);
            if den > 1 << 40 {
                return None;
            }
        }
        let nums = self
            .data
            .iter()
            .map(|x| {
                let (n, d) = x.as_rational()?.small()?;
                n.checked_mul(den / d)
            })
            .collect::<Option<Vec<_>>>()?;
        Some((nums, den))
    }

    /// Product through i128 accumulation; None on overflow.
    fn mul_integer(
        &self,
        o: &Matrix,
        (a, da): (Vec<i64>, i64),
        (b, db): (Vec<i64>, i64),
    ) -> Option<Matrix> {
        let (inner, cols) = (self.cols, o.cols);
        let den = da as i128 * db as i128;
        let rows: Option<Vec<Vec<Scalar>>> = (0..self.rows)
            .into_par_iter()
            .map(|i| {
                let mut acc = vec![0i128; cols];
                for k in 0..inner {
                    let x = a[i * inner + k] as i128;
                    if x == 0 {
                        continue;
                    }
                    for (c, &y) in acc.iter_mut().zip(&b[k * cols..(k + 1) * cols]) {
                        if y != 0 {
                            *c = c.checked_add(x.checked_mul(y as i128)?)?;
                        }
                    }
                }
                Some(
                    acc.into_iter()
                        .map(|c| Scalar::rational(Rat::from_i128(c, den)))
                        .collect(),
                )
            })
            .collect();
        Some(Matrix {
            rows: self.rows,
            cols,
            data: rows?.into_iter().flatten().collect(),
        })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn kron(&self, o: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for p in 0..o.rows {
                    for q in 0..o.cols {
                        let b = o.get(p, q);
                        if !b.is_zero() {
                            m.set(i * o.rows + p, j * o.cols + q, a * b);
                        }
                    }
                }
            }
        }
        m
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    /// Rank by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<Scalar>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut prev = Scalar::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let (head, tail) = m.split_at_mut(r + 1);
            let pivot_row = &head[r];
            let piv = pivot_row[c].clone();
            tail.par_iter_mut().for_each(|row| {
                let f = row[c].clone();
                for j in c + 1..self.cols {
                    let t = &(&piv * &row[j]) - &(&f * &pivot_row[j]);
                    row[j] = if t.is_zero() { t } else { &t / &prev };
                }
                row[c] = Scalar::zero();
            });
            prev = piv;
            r += 1;
        }
        r
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m: Vec<Vec<Scalar>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let pivots = rref_rows(&mut m, self.cols);
        let rows = self.rows;
        let cols = self.cols;
        (
            Matrix {
                rows,
                cols,
                data: m.into_iter().flatten().collect(),
            },
            pivots,
        )
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut m: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| {
                    if i == j {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    }
                }));
                r
            })
            .collect();
        let piv = rref_rows(&mut m, n);
        if piv.len() < n || piv.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some(Matrix::from_rows(
            m.into_iter().map(|r| r[n..].to_vec()).collect(),
        ))
    }

    /// Indices of a maximal set of linearly independent columns, chosen greedily
    /// from the left.
    pub fn column_basis(&self) -> Vec<usize> {
        self.rref().1
    }

    /// Orthogonal projection onto the column span: B (BᵀB)⁻¹ Bᵀ.
    pub fn column_span_projection(&self) -> Matrix {
        let basis = self.column_basis();
        if basis.is_empty() {
            return Matrix::zeros(self.rows, self.rows);
        }
        let all: Vec<usize> = (0..self.rows).collect();
        let b = self.submatrix(&all, &basis);
        let bt = b.transpose();
        let g = bt.mul(&b);
        let x = solve_matrix(&g, &bt).expect("Gram matrix of independent columns is invertible");
        b.mul(&x)
    }

    /// Checks positive semidefiniteness with exact symmetric elimination:
    /// every pivot must be nonnegative and a zero pivot must have a zero row.
    pub fn is_psd(&self) -> bool {
        if !self.is_symmetric() {
            return false;
        }
        let n = self.rows;
        let mut m: Vec<Vec<Scalar>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        for k in 0..n {
            let p = m[k][k].clone();
            match p.signum() {
                s if s < 0 => return false,
                0 => {
                    if (k + 1..n).any(|j| !m[k][j].is_zero()) {
                        return false;
                    }
                    continue;
                }
                _ => {}
            }
            let inv = p.inv();
            for i in k + 1..n {
                let f = &m[i][k] * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in k + 1..n {
                    let t = &f * &m[k][j];
                    m[i][j] -= &t;
                }
            }
        }
        true
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for i in 0..self.rows {
            w.write_record(self.row(i).iter().map(|x| x.to_string()))
                .expect("writing to memory");
        }
        String::from_utf8(w.into_inner().expect("flushing to memory")).expect("csv output is UTF-8")
    }
}

/// In-place Gauss-Jordan on the first `ncols` columns (the remaining columns
/// are carried along). Returns the pivot columns.
pub fn rref_rows(m: &mut [Vec<Scalar>], ncols: usize) -> Vec<usize> {
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv();
        if !inv.is_one() {
            for x in m[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = m[r].clone();
        m.par_iter_mut().enumerate().for_each(|(i, row)| {
            if i == r || row[c].is_zero() {
                return;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        });
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solves A X = B for square invertible A.
pub fn solve_matrix(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    assert_eq!(a.rows(), b.rows());
    let n = a.rows();
    let mut m: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.extend_from_slice(b.row(i));
            r
        })
        .collect();
    let piv = rref_rows(&mut m, a.cols());
    if piv.len() < a.cols() {
        return None;
    }
    Some(Matrix::from_rows(
        m.into_iter()
            .take(a.cols())
            .map(|r| r[a.cols()..].to_vec())
            .collect(),
    ))
}

/// Returns a particular solution of A x = b and a basis of the nullspace of A,
/// or `None` when the system is inconsistent.
pub fn solve_consistent(a: &Matrix, b: &[Scalar]) -> Option<(Vector, Vec<Vector>)> {
    assert_eq!(a.rows(), b.len());
    let n = a.cols();
    let mut m: Vec<Vec<Scalar>> = (0..a.rows())
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let piv = rref_rows(&mut m, n);
    for row in m.iter().skip(piv.len()) {
        if !row[n].is_zero() {
            return None;
        }
    }
    let mut x = vec![Scalar::zero(); n];
    for (r, &c) in piv.iter().enumerate() {
        x[c] = m[r][n].clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !piv.contains(c)).collect();
    let null = free
        .iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); n];
            v[f] = Scalar::one();
            for (r, &c) in piv.iter().enumerate() {
                v[c] = -&m[r][f];
            }
            v
        })
        .collect();
    Some((x, null))
}

/// A particular solution X of A X = B, column by column, or `None` when some
/// column is inconsistent. One elimination serves every right-hand side.
pub fn solve_consistent_many(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    assert_eq!(a.rows(), b.rows());
    let n = a.cols();
    let mut m: Vec<Vec<Scalar>> = (0..a.rows())
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.extend_from_slice(b.row(i));
            r
        })
        .collect();
    let piv = rref_rows(&mut m, n);
    if m.iter()
        .skip(piv.len())
        .any(|row| row[n..].iter().any(|s| !s.is_zero()))
    {
        return None;
    }
    let mut x = Matrix::zeros(n, b.cols());
    for (r, &c) in piv.iter().enumerate() {
        for j in 0..b.cols() {
            x.set(c, j, m[r][n + j].clone());
        }
    }
    Some(x)
}

/// Orthogonal projection onto the span of `vectors` in a space of dimension
/// `dim`, by exact Gram-Schmidt.
pub fn span_projection<'a>(vectors: impl IntoIterator<Item = &'a Vector>, dim: usize) -> Matrix {
    let mut ortho: Vec<(Vector, Scalar)> = Vec::new();
    for v in vectors {
        assert_eq!(v.len(), dim, "vector length");
        if ortho.len() == dim {
            break;
        }
        let mut w = v.clone();
        for (u, nu) in &ortho {
            let c = dot(&w, u);
            if !c.is_zero() {
                let f = &c / nu;
                for (wi, ui) in w.iter_mut().zip(u) {
                    if !ui.is_zero() {
                        *wi -= &(&f * ui);
                    }
                }
            }
        }
        let nw = dot(&w, &w);
        if !nw.is_zero() {
            ortho.push((w, nw));
        }
    }
    let rows: Vec<Vec<Scalar>> = (0..dim)
        .into_par_iter()
        .map(|i| {
            let mut row = vec![Scalar::zero(); dim];
            for (u, nu) in &ortho {
                if u[i].is_zero() {
                    continue;
                }
                let f = &u[i] / nu;
                for (r, uj) in row.iter_mut().zip(u) {
                    if !uj.is_zero() {
                        *r += &(&f * uj);
                    }
                }
            }
            row
        })
        .collect();
    Matrix::from_rows(rows)
}

pub fn nullspace(a: &Matrix) -> Vec<Vector> {
    solve_consistent(a, &vec![Scalar::zero(); a.rows()])
        .map(|(_, n)| n)
        .unwrap_or_default()
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_basics() {
        assert_eq!(Matrix::identity(5).rank(), 5);
        assert_eq!(Matrix::from_fn(4, 4, |_, _| Scalar::one()).rank(), 1);
        assert_eq!(m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]).rank(), 2);
        assert_eq!(Matrix::zeros(3, 2).rank(), 0);
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::identity(3);
        let b = vec![Scalar::int(1), Scalar::int(-2), Scalar::frac(1, 3)];
        let (x, null) = solve_consistent(&id, &b).unwrap();
        assert_eq!(x, b);
        assert!(null.is_empty());
        assert!(solve_consistent(&Matrix::zeros(1, 1), &[Scalar::one()]).is_none());
    }

    #[test]
    fn projection_of_ones_column() {
        let a = Matrix::from_fn(4, 1, |_, _| Scalar::one());
        let p = a.column_span_projection();
        assert_eq!(p, Matrix::from_fn(4, 4, |_, _| Scalar::frac(1, 4)));
    }

    #[test]
    fn projection_of_orthonormal_columns() {
        let a = m(&[&[1, 0], &[0, 0], &[0, 1]]);
        assert_eq!(a.column_span_projection(), a.mul(&a.transpose()));
    }

    #[test]
    fn psd_detection() {
        assert!(m(&[&[1, 1], &[1, 4]]).is_psd());
        assert!(m(&[&[1, 1], &[1, 1]]).is_psd());
        assert!(!m(&[&[1, 2], &[2, 1]]).is_psd());
        assert!(!m(&[&[0, 1], &[1, 0]]).is_psd());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1], &[7, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    proptest::proptest! {
        #[test]
        fn integer_product_matches_generic(
            a in proptest::collection::vec((-50i64..50, 1i64..12), 12),
            b in proptest::collection::vec((-50i64..50, 1i64..12), 12),
            big in proptest::bool::ANY,
        ) {
            let mut x = Matrix::from_fn(3, 4, |i, j| { let (n, d) = a[i * 4 + j]; Scalar::frac(n, d) });
            let y = Matrix::from_fn(4, 3, |i, j| { let (n, d) = b[i * 3 + j]; Scalar::frac(n, d) });
            if big {
                x.set(0, 0, Scalar::frac(i64::MAX - 1, 3));
            }
            proptest::prop_assert_eq!(x.mul(&y), x.mul_generic(&y));
        }
    }
}
