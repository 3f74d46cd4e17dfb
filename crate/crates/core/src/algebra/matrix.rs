//! Dense square matrices over an exact scalar.
//!
//! Determinants run through fraction-free (Bareiss) elimination over the
//! rationals and cofactor expansion for dual/float scalars; the coefficients
//! of the characteristic polynomial come from the division-free Berkowitz
//! scheme so they are available over any scalar ring, duals included.

use std::ops::Mul;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, parse_rational, Rational};
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Debug)]
pub struct Mat<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> Mat<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Shape(format!("expected {n} entries per row")));
        }
        Ok(Mat {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Mat { n, data }
    }

    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn zeros(n: usize) -> Self {
        Mat::from_fn(n, |_, _| T::zero())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Row/column indices are 0-based.
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v;
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> T {
        (0..self.n).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|v| v.clone() * c.clone())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        Mat::from_fn(self.n, |i, j| {
            self.get(i, j).clone() + rhs.get(i, j).clone()
        })
    }

    /// Exact product; the dimensions must agree.
    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch(self.n, rhs.n));
        }
        let n = self.n;
        let mut out = Mat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = T::zero();
                for k in 0..n {
                    acc = acc + self.get(i, k).clone() * rhs.get(k, j).clone();
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Leading principal i x i submatrix, 1 <= i <= n.
    pub fn leading_block(&self, i: usize) -> Result<Self> {
        if i < 1 || i > self.n {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: self.n,
            });
        }
        Ok(Mat::from_fn(i, |r, c| self.get(r, c).clone()))
    }

    /// Submatrix on the given 0-based row/column index set.
    pub fn principal_submatrix(&self, idx: &[usize]) -> Self {
        let k = idx.len();
        let mut out = Mat::zeros(k);
        for (r, &i) in idx.iter().enumerate() {
            for (c, &j) in idx.iter().enumerate() {
                out.set(r, c, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_unitriangular_upper(&self) -> bool {
        self.is_upper_triangular() && (0..self.n).all(|i| *self.get(i, i) == T::one())
    }

    pub fn is_unitriangular_lower(&self) -> bool {
        self.is_lower_triangular() && (0..self.n).all(|i| *self.get(i, i) == T::one())
    }

    pub fn diag(&self) -> Vec<T> {
        (0..self.n).map(|i| self.get(i, i).clone()).collect()
    }

    /// Exact inverse of a triangular matrix by back-substitution.
    pub fn triangular_inverse(&self) -> Result<Self> {
        let n = self.n;
        let upper = if self.is_upper_triangular() {
            true
        } else if self.is_lower_triangular() {
            false
        } else {
            return Err(Error::NotTriangular);
        };
        let mut dinv = Vec::with_capacity(n);
        for i in 0..n {
            dinv.push(self.get(i, i).try_inv().ok_or(Error::ZeroDiagonal(i + 1))?);
        }
        let mut inv: Mat<T> = Mat::zeros(n);
        if upper {
            // solve U x = e_j, back substitution from the bottom
            for j in 0..n {
                for i in (0..=j).rev() {
                    let mut acc = if i == j { T::one() } else { T::zero() };
                    for k in i + 1..=j {
                        acc = acc - self.get(i, k).clone() * inv.get(k, j).clone();
                    }
                    inv.set(i, j, acc * dinv[i].clone());
                }
            }
        } else {
            for j in 0..n {
                for i in j..n {
                    let mut acc = if i == j { T::one() } else { T::zero() };
                    for k in j..i {
                        acc = acc - self.get(i, k).clone() * inv.get(k, j).clone();
                    }
                    inv.set(i, j, acc * dinv[i].clone());
                }
            }
        }
        Ok(inv)
    }

    /// Exact determinant. Fraction-free elimination when the scalar supports
    /// exact division, cofactor expansion otherwise.
    pub fn det(&self) -> T {
        if T::use_fraction_free_det() {
            self.det_bareiss()
        } else {
            cofactor_det(self)
        }
    }

    fn det_bareiss(&self) -> T {
        let n = self.n;
        if n == 0 {
            return T::one();
        }
        let mut m = self.clone();
        let mut sign = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                // find a row to swap below
                match (k + 1..n).find(|&r| !m.get(r, k).is_zero()) {
                    Some(r) => {
                        for c in 0..n {
                            let tmp = m.get(k, c).clone();
                            m.set(k, c, m.get(r, c).clone());
                            m.set(r, c, tmp);
                        }
                        sign = !sign;
                    }
                    None => return T::zero(),
                }
            }
            let pivot = m.get(k, k).clone();
            let prev_inv = prev
                .try_inv()
                .expect("previous pivot is nonzero by construction");
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = m.get(i, j).clone() * pivot.clone()
                        - m.get(i, k).clone() * m.get(k, j).clone();
                    m.set(i, j, v * prev_inv.clone());
                }
                m.set(i, k, T::zero());
            }
            prev = pivot;
        }
        let d = m.get(n - 1, n - 1).clone();
        if sign {
            -d
        } else {
            d
        }
    }

    /// (P_1, ..., P_n) where P_r is the sum of all r x r principal minors,
    /// computed division-free (Berkowitz), so it works over any scalar ring.
    pub fn principal_minor_sums(&self) -> Vec<T> {
        let n = self.n;
        // coefficient vector of det(tI - M): c[0] t^n + c[1] t^{n-1} + ... + c[n]
        let mut coeffs: Vec<T> = vec![T::one()];
        for k in 1..=n {
            // block data of the leading k x k principal submatrix
            let a = k - 1; // 0-based index of the new row/column
            let corner = self.get(a, a).clone();
            let row: Vec<T> = (0..a).map(|j| self.get(a, j).clone()).collect();
            let col: Vec<T> = (0..a).map(|i| self.get(i, a).clone()).collect();

            // q[0] = 1, q[1] = -corner, q[j] = -(row * A^{j-2} * col)
            let mut q: Vec<T> = Vec::with_capacity(k + 1);
            q.push(T::one());
            q.push(-corner);
            let mut vec = col.clone();
            for _ in 2..=k {
                let dot = row
                    .iter()
                    .zip(vec.iter())
                    .fold(T::zero(), |acc, (r, v)| acc + r.clone() * v.clone());
                q.push(-dot);
                if q.len() <= k {
                    // vec = A * vec with A the (k-1) x (k-1) leading block
                    let mut next = vec![T::zero(); a];
                    for i in 0..a {
                        let mut acc = T::zero();
                        for j in 0..a {
                            acc = acc + self.get(i, j).clone() * vec[j].clone();
                        }
                        next[i] = acc;
                    }
                    vec = next;
                }
            }

            // Toeplitz product: new[i] = sum_j q[i-j] * coeffs[j]
            let mut new_coeffs = vec![T::zero(); k + 1];
            for (i, cell) in new_coeffs.iter_mut().enumerate() {
                let mut acc = T::zero();
                for (j, c) in coeffs.iter().enumerate() {
                    if i >= j && i - j < q.len() {
                        acc = acc + q[i - j].clone() * c.clone();
                    }
                }
                *cell = acc;
            }
            coeffs = new_coeffs;
        }
        // det(tI - M) = sum_r (-1)^r P_r t^{n-r}  =>  P_r = (-1)^r coeffs[r]
        (1..=n)
            .map(|r| {
                if r % 2 == 0 {
                    coeffs[r].clone()
                } else {
                    -coeffs[r].clone()
                }
            })
            .collect()
    }
}

impl<T: Scalar> Mul for &Mat<T> {
    type Output = Mat<T>;
    fn mul(self, rhs: Self) -> Mat<T> {
        self.checked_mul(rhs).expect("matrix dimension mismatch")
    }
}

/// Cofactor expansion along the first row. Used as the determinant fallback
/// for scalars without exact division and as an independent oracle route.
pub fn cofactor_det<T: Scalar>(m: &Mat<T>) -> T {
    let n = m.n();
    match n {
        0 => T::one(),
        1 => m.get(0, 0).clone(),
        2 => m.get(0, 0).clone() * m.get(1, 1).clone() - m.get(0, 1).clone() * m.get(1, 0).clone(),
        _ => {
            let mut acc = T::zero();
            for j in 0..n {
                if m.get(0, j).is_zero() {
                    continue;
                }
                let sub = Mat::from_fn(n - 1, |r, c| {
                    m.get(r + 1, if c < j { c } else { c + 1 }).clone()
                });
                let term = m.get(0, j).clone() * cofactor_det(&sub);
                acc = if j % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

/// Brute-force sum of all r x r principal minors, r = 1..n, via subset
/// enumeration and cofactor determinants. Independent of the Berkowitz path;
/// serves as its oracle.
pub fn brute_minor_sums<T: Scalar>(m: &Mat<T>) -> Vec<T> {
    let n = m.n();
    let mut sums = vec![T::zero(); n];
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let d = cofactor_det(&m.principal_submatrix(&idx));
        let r = idx.len();
        sums[r - 1] = sums[r - 1].clone() + d;
    }
    sums
}

/// Principal minor of `m` on a 0-based index set, via the cofactor route.
pub fn brute_principal_minor<T: Scalar>(m: &Mat<T>, idx: &[usize]) -> T {
    cofactor_det(&m.principal_submatrix(idx))
}

/// Rank of a rectangular row list by exact Gaussian elimination. Intended
/// for scalars with exact inversion (rationals).
pub fn row_rank<T: Scalar>(rows: &[Vec<T>]) -> usize {
    let mut rows: Vec<Vec<T>> = rows.to_vec();
    let nrows = rows.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    let mut col = 0;
    while rank < nrows && col < ncols {
        let pivot = (rank..nrows).find(|&r| !rows[r][col].is_zero());
        let Some(p) = pivot else {
            col += 1;
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].try_inv().expect("nonzero pivot");
        for r in rank + 1..nrows {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone() * inv.clone();
            for c in col..ncols {
                rows[r][c] = rows[r][c].clone() - factor.clone() * rows[rank][c].clone();
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

// ---------------------------------------------------------------------------
// Shared JSON wire format for rational matrices:
//   {"n": 2, "entries": [["1/2", "0"], ["3", "-4"]]}

impl Serialize for Mat<Rational> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            n: usize,
            entries: Vec<Vec<String>>,
        }
        let entries = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| format_rational(self.get(i, j)))
                    .collect()
            })
            .collect();
        Wire { n: self.n, entries }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Mat<Rational> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            n: usize,
            entries: Vec<Vec<String>>,
        }
        let wire = Wire::deserialize(deserializer)?;
        if wire.entries.len() != wire.n || wire.entries.iter().any(|r| r.len() != wire.n) {
            return Err(D::Error::custom(format!(
                "expected {0} rows of {0} entries",
                wire.n
            )));
        }
        let mut rows = Vec::with_capacity(wire.n);
        for row in &wire.entries {
            let mut out = Vec::with_capacity(wire.n);
            for s in row {
                out.push(parse_rational(s).map_err(|e| D::Error::custom(e.to_string()))?);
            }
            rows.push(out);
        }
        Mat::from_rows(rows).map_err(|e| D::Error::custom(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::dual::Dual;
    use crate::algebra::rational::{rat_i64, Rational};

    fn m(rows: &[&[i64]]) -> Mat<Rational> {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat_i64(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_multiplication() {
        let a = m(&[&[2, 0], &[3, 5]]);
        let i = Mat::<Rational>::identity(2);
        assert_eq!(i.checked_mul(&a).unwrap(), a);
        assert_eq!(a.checked_mul(&i).unwrap(), a);
    }

    #[test]
    fn product_example() {
        // the running example: D = A * C_2
        let a = m(&[&[2, 0], &[3, 5]]);
        let c = m(&[&[1, 1], &[0, 1]]);
        let d = a.checked_mul(&c).unwrap();
        assert_eq!(d, m(&[&[2, 2], &[3, 8]]));
    }

    #[test]
    fn unitriangular_inverse_roundtrip() {
        let u = m(&[&[1, 1], &[0, 1]]);
        let inv = u.triangular_inverse().unwrap();
        assert_eq!(inv, m(&[&[1, -1], &[0, 1]]));
        assert_eq!(u.checked_mul(&inv).unwrap(), Mat::identity(2));
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let a = m(&[&[1]]);
        let b = m(&[&[1, 0], &[0, 1]]);
        assert!(matches!(
            a.checked_mul(&b),
            Err(Error::DimensionMismatch(1, 2))
        ));
    }

    #[test]
    fn det_examples() {
        assert_eq!(Mat::<Rational>::identity(3).det(), rat_i64(1));
        assert_eq!(m(&[&[2, 2], &[3, 8]]).det(), rat_i64(10));
        // equal rows: singular
        assert_eq!(m(&[&[1, 2], &[1, 2]]).det(), rat_i64(0));
    }

    #[test]
    fn det_bareiss_agrees_with_cofactor() {
        let a = m(&[&[0, 2, 1, 4], &[3, -1, 0, 2], &[5, 0, 0, 1], &[2, 2, 2, 2]]);
        assert_eq!(a.det(), cofactor_det(&a));
    }

    #[test]
    fn minor_sums_identity() {
        // I (n=3) -> (3, 3, 1): binomial counts
        let p = Mat::<Rational>::identity(3).principal_minor_sums();
        assert_eq!(p, vec![rat_i64(3), rat_i64(3), rat_i64(1)]);
    }

    #[test]
    fn minor_sums_example() {
        let p = m(&[&[2, 2], &[3, 8]]).principal_minor_sums();
        assert_eq!(p, vec![rat_i64(10), rat_i64(10)]);
    }

    #[test]
    fn minor_sums_diagonal_elementary_symmetric() {
        // diag(2, 3, 5): e1 = 10, e2 = 31, e3 = 30
        let d = m(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]]);
        assert_eq!(
            d.principal_minor_sums(),
            vec![rat_i64(10), rat_i64(31), rat_i64(30)]
        );
    }

    #[test]
    fn minor_sums_on_duals() {
        // derivative of det wrt the (0,0) entry of [[x,2],[3,8]] at x=2 is 8
        let a: Mat<Dual<Rational>> = Mat::from_rows(vec![
            vec![Dual::variable(rat_i64(2)), Dual::constant(rat_i64(2))],
            vec![Dual::constant(rat_i64(3)), Dual::constant(rat_i64(8))],
        ])
        .unwrap();
        let p = a.principal_minor_sums();
        assert_eq!(p[1].value, rat_i64(10));
        assert_eq!(p[1].derivative, rat_i64(8));
        assert_eq!(p[0].derivative, rat_i64(1));
    }

    #[test]
    fn leading_block_examples() {
        let a = m(&[&[2, 2], &[3, 8]]);
        assert_eq!(a.leading_block(2).unwrap(), a);
        assert_eq!(a.leading_block(1).unwrap(), m(&[&[2]]));
        assert!(a.leading_block(0).is_err());
        assert!(a.leading_block(3).is_err());
        // leading block of a triangular matrix is triangular
        let t = m(&[&[1, 0, 0], &[2, 3, 0], &[4, 5, 6]]);
        assert!(t.leading_block(2).unwrap().is_lower_triangular());
    }

    #[test]
    fn triangular_inverse_errors() {
        let z = m(&[&[0, 0], &[1, 1]]);
        assert!(matches!(
            z.triangular_inverse(),
            Err(Error::ZeroDiagonal(1))
        ));
        let full = m(&[&[1, 2], &[3, 4]]);
        assert!(matches!(
            full.triangular_inverse(),
            Err(Error::NotTriangular)
        ));
    }

    #[test]
    fn unitriangular_inverse_oracle() {
        let mut rng = crate::sample::rng(61);
        for case in 0..50 {
            let upper = case % 2 == 0;
            let m = crate::sample::unitriangular(&mut rng, 4, upper);
            let inv = m.triangular_inverse().unwrap();
            assert_eq!(m.checked_mul(&inv).unwrap(), Mat::identity(4));
            assert_eq!(inv.checked_mul(&m).unwrap(), Mat::identity(4));
        }
    }

    #[test]
    fn minor_sums_oracle_seeded() {
        let mut rng = crate::sample::rng(67);
        for n in 2..=6 {
            for _ in 0..50 {
                let m = crate::sample::dense(&mut rng, n);
                assert_eq!(m.principal_minor_sums(), brute_minor_sums(&m), "n={n}");
            }
        }
    }

    #[test]
    fn row_rank_basic() {
        let rows = vec![
            vec![rat_i64(1), rat_i64(2), rat_i64(3)],
            vec![rat_i64(2), rat_i64(4), rat_i64(6)],
            vec![rat_i64(0), rat_i64(1), rat_i64(0)],
        ];
        assert_eq!(row_rank(&rows), 2);
    }

    #[test]
    fn json_roundtrip_and_rejections() {
        let a = Mat::from_rows(vec![
            vec![crate::algebra::rational::rat(1, 2), rat_i64(0)],
            vec![rat_i64(3), rat_i64(-4)],
        ])
        .unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert!(s.contains("\"1/2\""));
        let b: Mat<Rational> = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
        // zero denominator must be rejected
        let bad = r#"{"n":1,"entries":[["1/0"]]}"#;
        assert!(serde_json::from_str::<Mat<Rational>>(bad).is_err());
        // shape violations
        let bad = r#"{"n":2,"entries":[["1","2"]]}"#;
        assert!(serde_json::from_str::<Mat<Rational>>(bad).is_err());
    }
}
