//! The parametrization of the lower-triangular Borel of GL(n) by nested
//! characteristic-polynomial data, its constructive inverse, the closed
//! product formula for principal minors of A*C_n, and the simultaneous
//! quotient with its structured-subfamily variant.
//!
//! Conventions here follow the lower-triangular Borel; the Poisson module
//! works with the upper-triangular one and carries an adapter test at the
//! boundary.

use crate::algebra::{CharTriangle, Mat, Rational, Scalar};
use crate::error::{Error, Result};
use num_traits::{One, Zero};

/// An element of the lower-triangular Borel: a_{i,j} = 0 above the diagonal,
/// nonzero diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct LowerBorel {
    mat: Mat<Rational>,
}

impl LowerBorel {
    pub fn new(mat: Mat<Rational>) -> Result<Self> {
        if !mat.is_lower_triangular() || mat.diag().iter().any(|d| d.is_zero()) {
            return Err(Error::BadLowerBorel);
        }
        Ok(LowerBorel { mat })
    }

    pub fn n(&self) -> usize {
        self.mat.n()
    }

    pub fn mat(&self) -> &Mat<Rational> {
        &self.mat
    }

    /// Entry a_{i,j}, 1-based.
    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        self.mat.get(i - 1, j - 1)
    }
}

/// C_n: the upper-triangular all-ones matrix.
pub fn ones_upper<T: Scalar>(n: usize) -> Mat<T> {
    Mat::from_fn(n, |i, j| if i <= j { T::one() } else { T::zero() })
}

/// Closed form for the principal minor [i_1, ..., i_r] of D = A * C_n:
/// the product over h of (a_{i_h, i_h} + ... + a_{i_h, i_{h-1}+1}), with
/// i_0 = 0. Indices are 1-based and strictly increasing.
pub fn indu_minor(a: &LowerBorel, idx: &[usize]) -> Result<Rational> {
    let n = a.n();
    if idx.is_empty()
        || idx.windows(2).any(|w| w[0] >= w[1])
        || idx[0] < 1
        || idx[idx.len() - 1] > n
    {
        return Err(Error::BadIndexList(n));
    }
    let mut prod = Rational::one();
    let mut prev = 0usize;
    for &i in idx {
        let mut sum = Rational::zero();
        for j in prev + 1..=i {
            sum += a.entry(i, j);
        }
        prod *= sum;
        prev = i;
    }
    Ok(prod)
}

/// The coefficient map: for each leading block size i, the principal-minor
/// sums of D_i = A_i * C_i.
pub fn pi_map(a: &LowerBorel) -> Result<CharTriangle> {
    let n = a.n();
    let mut rows = Vec::with_capacity(n);
    for i in 1..=n {
        let d_i = a.mat().leading_block(i)?.checked_mul(&ones_upper(i))?;
        rows.push(d_i.principal_minor_sums());
    }
    CharTriangle::new(rows)
}

/// Constructive inverse of `pi_map`:
/// the diagonal comes from ratios of consecutive determinants, then the
/// anti-diagonals are solved outward; each unknown a_{m,m-r} enters the
/// block-m coefficient of index m-r affinely with leading coefficient
/// prod_{t<m-r} a_{t,t}, so one evaluation with the unknown zeroed
/// determines it.
pub fn pi_inverse(c: &CharTriangle) -> Result<LowerBorel> {
    let n = c.n();
    for i in 1..=n {
        if c.get(i, i).is_zero() {
            return Err(Error::ZeroDeterminantDatum(i));
        }
    }
    let mut a: Mat<Rational> = Mat::zeros(n);
    let mut prev = Rational::one();
    for h in 1..=n {
        let d = c.get(h, h) / &prev;
        a.set(h - 1, h - 1, d);
        prev = c.get(h, h).clone();
    }
    for r in 1..n {
        for m in r + 1..=n {
            let k = m - r;
            let q = {
                let d_m = a.leading_block(m)?.checked_mul(&ones_upper(m))?;
                d_m.principal_minor_sums().swap_remove(k - 1)
            };
            let mut coeff = Rational::one();
            for t in 1..k {
                coeff *= a.get(t - 1, t - 1);
            }
            let value = (c.get(m, k) - q) / coeff;
            a.set(m - 1, k - 1, value);
        }
    }
    LowerBorel::new(a)
}

/// The simultaneous quotient r(U, V): coefficients of the products of
/// leading blocks U_i V_i, for U in the lower Borel and V upper
/// unitriangular.
pub fn simultaneous_quotient(u: &Mat<Rational>, v: &Mat<Rational>) -> Result<CharTriangle> {
    let n = u.n();
    if v.n() != n {
        return Err(Error::DimensionMismatch(n, v.n()));
    }
    if !u.is_lower_triangular() || u.diag().iter().any(|d| d.is_zero()) {
        return Err(Error::Shape(
            "U must be lower triangular and invertible".into(),
        ));
    }
    if !v.is_unitriangular_upper() {
        return Err(Error::Shape("V must be upper unitriangular".into()));
    }
    let mut rows = Vec::with_capacity(n);
    for i in 1..=n {
        let prod = u.leading_block(i)?.checked_mul(&v.leading_block(i)?)?;
        rows.push(prod.principal_minor_sums());
    }
    CharTriangle::new(rows)
}

// ---------------------------------------------------------------------------
// Structured subfamily attached to a subsequence GL(n_1) < ... < GL(n_h)

/// A strictly increasing chain n_1 < n_2 < ... < n_h = n.
#[derive(Clone, Debug, PartialEq)]
pub struct GZChain {
    indices: Vec<usize>,
}

impl GZChain {
    pub fn new(indices: Vec<usize>, n: usize) -> Result<Self> {
        if indices.is_empty()
            || indices.windows(2).any(|w| w[0] >= w[1])
            || indices[0] < 1
            || *indices.last().unwrap() != n
        {
            return Err(Error::BadChain);
        }
        Ok(GZChain { indices })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn n(&self) -> usize {
        *self.indices.last().unwrap()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    /// The full chain 1 < 2 < ... < n.
    pub fn full(n: usize) -> Self {
        GZChain {
            indices: (1..=n).collect(),
        }
    }
}

/// A structured Borel element for a chain: rows n_t are free up to the
/// diagonal, every other row is a unit row of the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct StructuredA {
    chain: GZChain,
    mat: Mat<Rational>,
}

impl StructuredA {
    pub fn new(chain: GZChain, mat: Mat<Rational>) -> Result<Self> {
        let n = chain.n();
        if mat.n() != n {
            return Err(Error::DimensionMismatch(mat.n(), n));
        }
        for i in 1..=n {
            for j in 1..=n {
                let v = mat.get(i - 1, j - 1);
                if chain.contains(i) {
                    if j > i && !v.is_zero() {
                        return Err(Error::Shape(format!("entry ({i},{j}) must be zero")));
                    }
                    if j == i && v.is_zero() {
                        return Err(Error::Shape(format!(
                            "diagonal entry ({i},{i}) must be nonzero"
                        )));
                    }
                } else {
                    let expected_one = j == i;
                    if expected_one && !v.is_one() {
                        return Err(Error::Shape(format!("diagonal entry ({i},{i}) must be 1")));
                    }
                    if !expected_one && !v.is_zero() {
                        return Err(Error::Shape(format!("entry ({i},{j}) must be zero")));
                    }
                }
            }
        }
        Ok(StructuredA { chain, mat })
    }

    pub fn chain(&self) -> &GZChain {
        &self.chain
    }

    pub fn mat(&self) -> &Mat<Rational> {
        &self.mat
    }

    pub fn to_lower_borel(&self) -> LowerBorel {
        LowerBorel::new(self.mat.clone()).expect("structured matrices are valid Borel elements")
    }
}

/// The restriction of the coefficient triangle to the chain rows: for each
/// chain level n_t the values (n_t, 1), ..., (n_t, n_t).
#[derive(Clone, Debug, PartialEq)]
pub struct StructuredCoeffs {
    pub chain: GZChain,
    /// rows[t] holds the n_t coefficients of chain level t.
    pub rows: Vec<Vec<Rational>>,
}

impl StructuredCoeffs {
    /// Value at chain level n_t (must be a chain index), coefficient h.
    pub fn get(&self, level: usize, h: usize) -> &Rational {
        let t = self
            .chain
            .indices()
            .iter()
            .position(|&i| i == level)
            .expect("level is a chain index");
        &self.rows[t][h - 1]
    }
}

/// Coefficients of the chain blocks only.
pub fn structured_pi(s: &StructuredA) -> Result<StructuredCoeffs> {
    let full = pi_map(&s.to_lower_borel())?;
    let rows = s
        .chain
        .indices()
        .iter()
        .map(|&i| (1..=i).map(|h| full.get(i, h).clone()).collect())
        .collect();
    Ok(StructuredCoeffs {
        chain: s.chain.clone(),
        rows,
    })
}

/// Seeded random structured element for a chain: free rows from the shared
/// entry range, nonzero chain diagonals.
pub fn random_structured(rng: &mut rand_chacha::ChaCha8Rng, chain: &GZChain) -> StructuredA {
    let n = chain.n();
    let mut m: Mat<Rational> = Mat::identity(n);
    for &i in chain.indices() {
        for j in 1..i {
            m.set(i - 1, j - 1, crate::sample::entry(rng));
        }
        m.set(i - 1, i - 1, crate::sample::nonzero_entry(rng));
    }
    StructuredA::new(chain.clone(), m).expect("sampled matrix fits the structured shape")
}

/// Inverse of `structured_pi`: the same anti-diagonal elimination restricted
/// to the free rows; frozen unit rows keep the affine-triangular structure.
pub fn structured_pi_inverse(c: &StructuredCoeffs, chain: &GZChain) -> Result<StructuredA> {
    if c.chain != *chain {
        return Err(Error::BadChain);
    }
    let n = chain.n();
    let levels = chain.indices();
    for (t, &i) in levels.iter().enumerate() {
        if c.rows[t].len() != i {
            return Err(Error::Shape(format!(
                "chain level {i} needs {i} coefficients"
            )));
        }
        if c.rows[t][i - 1].is_zero() {
            return Err(Error::ZeroDeterminantDatum(i));
        }
    }
    let mut a: Mat<Rational> = Mat::identity(n);
    let mut prev = Rational::one();
    for (t, &i) in levels.iter().enumerate() {
        let det = &c.rows[t][i - 1];
        a.set(i - 1, i - 1, det / &prev);
        prev = det.clone();
    }
    for r in 1..n {
        for &m in levels.iter().filter(|&&m| m > r) {
            let k = m - r;
            let q = {
                let d_m = a.leading_block(m)?.checked_mul(&ones_upper(m))?;
                d_m.principal_minor_sums().swap_remove(k - 1)
            };
            let mut coeff = Rational::one();
            for t in 1..k {
                coeff *= a.get(t - 1, t - 1);
            }
            let value = (c.get(m, k) - q) / coeff;
            a.set(m - 1, k - 1, value);
        }
    }
    StructuredA::new(chain.clone(), a)
}
