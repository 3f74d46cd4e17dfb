//! Type-A root data, Weyl-group combinatorics, one-parameter subgroups,
//! beta sets, Levi-compatible orderings, and root-counting arithmetic.
//!
//! Roots of GL(n) are integer vectors e_p - e_q in Z^n. The Weyl group acts
//! by permuting coordinates; simple reflections are adjacent transpositions.
//! Positive roots correspond to upper-triangular matrix positions.

use num_bigint::BigUint;

use crate::algebra::{Mat, Scalar};
use crate::error::{Error, Result};

/// A root or weight as an integer vector in Z^n.
pub type Weight = Vec<i64>;

/// Root data of GL(n): n-1 simple roots alpha_i = e_i - e_{i+1}.
#[derive(Clone, Debug, PartialEq)]
pub struct RootDataA {
    n: usize,
}

impl RootDataA {
    pub fn new(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidInput("n must be >= 1".into()));
        }
        Ok(RootDataA { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.n - 1
    }

    /// Simple root alpha_i = e_i - e_{i+1}, 1 <= i <= n-1.
    pub fn simple_root(&self, i: usize) -> Result<Weight> {
        self.check_index(i)?;
        let mut v = vec![0i64; self.n];
        v[i - 1] = 1;
        v[i] = -1;
        Ok(v)
    }

    /// Pairing <v, alpha_i-check> = v_i - v_{i+1}.
    pub fn pairing(&self, v: &Weight, i: usize) -> Result<i64> {
        self.check_index(i)?;
        Ok(v[i - 1] - v[i])
    }

    /// Simple reflection s_i acting on weights, as the coordinate swap
    /// (i, i+1). Cross-checked against the reflection formula in tests.
    pub fn reflect(&self, v: &Weight, i: usize) -> Result<Weight> {
        self.check_index(i)?;
        let mut w = v.clone();
        w.swap(i - 1, i);
        Ok(w)
    }

    /// Whether v is a root e_p - e_q, p != q.
    pub fn is_root(&self, v: &Weight) -> bool {
        let plus = v.iter().filter(|&&c| c == 1).count();
        let minus = v.iter().filter(|&&c| c == -1).count();
        let zeros = v.iter().filter(|&&c| c == 0).count();
        plus == 1 && minus == 1 && zeros == self.n - 2
    }

    /// Simple-root support of a root: for e_p - e_q the indices
    /// min(p,q)..max(p,q)-1 of the alphas appearing in its expansion.
    pub fn root_support(&self, v: &Weight) -> Result<Vec<usize>> {
        if !self.is_root(v) {
            return Err(Error::InvalidInput(format!("{v:?} is not a root")));
        }
        let p = v.iter().position(|&c| c == 1).unwrap() + 1;
        let q = v.iter().position(|&c| c == -1).unwrap() + 1;
        Ok((p.min(q)..p.max(q)).collect())
    }

    /// Whether a root lies in the Levi root subsystem spanned by `levi`.
    pub fn root_in_levi(&self, v: &Weight, levi: &LeviA) -> bool {
        match self.root_support(v) {
            Ok(support) => support.iter().all(|i| levi.subset.contains(i)),
            Err(_) => false,
        }
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < 1 || i >= self.n {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: self.n.saturating_sub(1),
            });
        }
        Ok(())
    }
}

/// Prints a root as "e_p - e_q".
pub fn root_to_string(v: &Weight) -> String {
    let p = v.iter().position(|&c| c == 1);
    let q = v.iter().position(|&c| c == -1);
    match (p, q) {
        (Some(p), Some(q)) => format!("e_{} - e_{}", p + 1, q + 1),
        _ => format!("{v:?}"),
    }
}

/// An ordering of the simple roots: a permutation of {1, ..., n-1}.
#[derive(Clone, Debug, PartialEq)]
pub struct Ordering {
    sequence: Vec<usize>,
}

impl Ordering {
    pub fn new(sequence: Vec<usize>, rd: &RootDataA) -> Result<Self> {
        let rank = rd.rank();
        let mut seen = vec![false; rank + 1];
        if sequence.len() != rank {
            return Err(Error::NotAPermutation(rank));
        }
        for &i in &sequence {
            if i < 1 || i > rank || seen[i] {
                return Err(Error::NotAPermutation(rank));
            }
            seen[i] = true;
        }
        Ok(Ordering { sequence })
    }

    /// The standard order (alpha_1, ..., alpha_{n-1}).
    pub fn standard(rd: &RootDataA) -> Self {
        Ordering {
            sequence: (1..=rd.rank()).collect(),
        }
    }

    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    pub fn rank(&self) -> usize {
        self.sequence.len()
    }
}

/// All orderings of the simple roots of GL(n), for exhaustive checks.
pub fn all_orderings(rd: &RootDataA) -> Vec<Ordering> {
    fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == items.len() {
            out.push(items.clone());
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            permutations(items, k + 1, out);
            items.swap(k, i);
        }
    }
    let mut items: Vec<usize> = (1..=rd.rank()).collect();
    let mut out = Vec::new();
    permutations(&mut items, 0, &mut out);
    out.into_iter()
        .map(|sequence| Ordering { sequence })
        .collect()
}

/// The beta set of an ordering: beta_i = s_{gamma_{n-1}} ... s_{gamma_{i+1}}
/// (gamma_i) where gamma is the ordered list of simple roots, together with
/// the Weyl element w = s_{gamma_{n-1}} ... s_{gamma_1} as a permutation.
#[derive(Clone, Debug, PartialEq)]
pub struct BetaSet {
    pub betas: Vec<Weight>,
    /// w as a 0-based position map: coordinate k goes to w[k].
    pub w: Vec<usize>,
}

pub fn beta_set(ord: &Ordering, rd: &RootDataA) -> Result<BetaSet> {
    let rank = rd.rank();
    if ord.rank() != rank {
        return Err(Error::NotAPermutation(rank));
    }
    let gamma = ord.sequence();
    let mut betas = Vec::with_capacity(rank);
    for i in 0..rank {
        let mut v = rd.simple_root(gamma[i])?;
        for &g in &gamma[i + 1..] {
            v = rd.reflect(&v, g)?;
        }
        betas.push(v);
    }
    // w(k): apply s_{gamma_1} first, s_{gamma_{n-1}} last
    let mut w: Vec<usize> = (0..rd.n()).collect();
    for &g in gamma {
        for slot in w.iter_mut() {
            if *slot == g - 1 {
                *slot = g;
            } else if *slot == g {
                *slot = g - 1;
            }
        }
    }
    let bs = BetaSet { betas, w };
    if !beta_invariants_hold(&bs, rd) {
        return Err(Error::Internal(
            "beta set failed its defining invariants".into(),
        ));
    }
    Ok(bs)
}

/// Both defining invariants: every beta_i is a root, and beta_i + beta_j is
/// never a root.
pub fn beta_invariants_hold(bs: &BetaSet, rd: &RootDataA) -> bool {
    if !bs.betas.iter().all(|b| rd.is_root(b)) {
        return false;
    }
    for a in &bs.betas {
        for b in &bs.betas {
            let sum: Weight = a.iter().zip(b.iter()).map(|(x, y)| x + y).collect();
            if rd.is_root(&sum) {
                return false;
            }
        }
    }
    true
}

/// A standard Levi datum: a subset of simple-root indices.
#[derive(Clone, Debug, PartialEq)]
pub struct LeviA {
    pub subset: Vec<usize>,
}

impl LeviA {
    pub fn new(mut subset: Vec<usize>, rd: &RootDataA) -> Result<Self> {
        subset.sort_unstable();
        subset.dedup();
        for &i in &subset {
            if i < 1 || i > rd.rank() {
                return Err(Error::BadLeviSubset {
                    index: i,
                    max: rd.rank(),
                });
            }
        }
        Ok(LeviA { subset })
    }
}

/// An ordering compatible with the Levi: its initial segment is Delta_L and
/// every beta root lies outside Phi_L.
///
/// The construction peels each component interval of Delta_L from its
/// boundary: roots adjacent to the complement go last, the interior is
/// ordered recursively first. The tail (Delta minus Delta_L) is appended in
/// ascending order.
pub fn compatible_order(levi: &LeviA, rd: &RootDataA) -> Result<Ordering> {
    let rank = rd.rank();
    if levi.subset.len() == rank && rank > 0 {
        return Err(Error::LeviNotProper);
    }
    if levi.subset.is_empty() {
        return Ok(Ordering::standard(rd));
    }

    // component intervals of the subset inside the path diagram
    let mut components: Vec<(usize, usize)> = Vec::new();
    let mut start = levi.subset[0];
    let mut prev = levi.subset[0];
    for &i in &levi.subset[1..] {
        if i == prev + 1 {
            prev = i;
        } else {
            components.push((start, prev));
            start = i;
            prev = i;
        }
    }
    components.push((start, prev));

    // Peels the interval [lo, hi] inside the ambient interval: its boundary
    // roots adjacent to the ambient complement go last, the interior first.
    fn peel(lo: usize, hi: usize, ambient: (usize, usize), out: &mut Vec<usize>) {
        if lo > hi {
            return;
        }
        let left_open = lo > ambient.0;
        let right_open = hi < ambient.1;
        let mut sigma = Vec::new();
        if left_open {
            sigma.push(lo);
        }
        if right_open && (hi != lo || !left_open) {
            sigma.push(hi);
        }
        let nlo = if left_open { lo + 1 } else { lo };
        let nhi = if right_open { hi - 1 } else { hi };
        if nlo <= nhi {
            peel(nlo, nhi, (lo, hi), out);
        }
        out.extend(sigma);
    }

    let mut order = Vec::with_capacity(rank);
    for &(lo, hi) in &components {
        // at the top level the ambient diagram is the whole path
        peel(lo, hi, (1, rank), &mut order);
    }
    for i in 1..=rank {
        if !levi.subset.contains(&i) {
            order.push(i);
        }
    }
    let ord = Ordering::new(order, rd)?;
    // post-conditions of the construction
    let bs = beta_set(&ord, rd)?;
    let initial_ok = {
        let mut head: Vec<usize> = ord.sequence()[..levi.subset.len()].to_vec();
        head.sort_unstable();
        head == levi.subset
    };
    let betas_ok = bs.betas.iter().all(|b| !rd.root_in_levi(b, levi));
    if !initial_ok || !betas_ok {
        return Err(Error::Internal(
            "compatible order failed its post-conditions".into(),
        ));
    }
    Ok(ord)
}

// ---------------------------------------------------------------------------
// One-parameter subgroups and reflection lifts in GL(n)

/// X_{alpha_i}(a) = I + a E_{i,i+1} (1-based simple-root index).
pub fn x_alpha<T: Scalar>(i: usize, a: &T, n: usize) -> Result<Mat<T>> {
    if i < 1 || i >= n {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: n - 1,
        });
    }
    let mut m = Mat::identity(n);
    m.set(i - 1, i, a.clone());
    Ok(m)
}

/// Y_{alpha_i}(a) = I + a E_{i+1,i}.
pub fn y_alpha<T: Scalar>(i: usize, a: &T, n: usize) -> Result<Mat<T>> {
    if i < 1 || i >= n {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: n - 1,
        });
    }
    let mut m = Mat::identity(n);
    m.set(i, i - 1, a.clone());
    Ok(m)
}

/// The reflection lift s_{alpha_i} = X(1) Y(-1) X(1): identity outside
/// rows/columns {i, i+1}, block [[0,1],[-1,0]] there.
pub fn s_alpha<T: Scalar>(i: usize, n: usize) -> Result<Mat<T>> {
    if i < 1 || i >= n {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: n - 1,
        });
    }
    let mut m = Mat::identity(n);
    m.set(i - 1, i - 1, T::zero());
    m.set(i, i, T::zero());
    m.set(i - 1, i, T::one());
    m.set(i, i - 1, -T::one());
    Ok(m)
}

/// One-parameter subgroup of an arbitrary root e_p - e_q: I + a E_{p,q}.
/// This is the elementary normalization; conjugate normalizations differ by
/// a sign handled in the Steinberg module.
pub fn x_root<T: Scalar>(root: &Weight, a: &T, n: usize) -> Result<Mat<T>> {
    let p = root.iter().position(|&c| c == 1);
    let q = root.iter().position(|&c| c == -1);
    let (Some(p), Some(q)) = (p, q) else {
        return Err(Error::InvalidInput(format!("{root:?} is not a root")));
    };
    if root.len() != n {
        return Err(Error::Shape(format!("root lives in Z^{}", root.len())));
    }
    let mut m = Mat::identity(n);
    m.set(p, q, a.clone());
    Ok(m)
}

// ---------------------------------------------------------------------------
// Root-counting arithmetic

/// |Phi+| of GL(n): n choose 2.
pub fn positive_root_count(n: usize) -> u64 {
    (n as u64) * (n as u64 - 1) / 2
}

/// Branching exponent for the chain GL(m) < GL(n):
/// |Phi+_{GL(n)}| - |Phi+_{GL(m)}| - dim T_{GL(m)} = C(n,2) - C(m,2) - m.
///
/// It vanishes exactly when m = n-1 (the multiplicity-one chain). For the
/// torus case (restrict all the way to T) the analogous exponent is
/// |Phi+| - dim T = C(n,2) - n.
pub fn branching_exponent(n: usize, m: usize) -> Result<i64> {
    if m < 1 || m >= n {
        return Err(Error::InvalidInput(format!(
            "need 1 <= m < n, got m={m}, n={n}"
        )));
    }
    Ok(positive_root_count(n) as i64 - positive_root_count(m) as i64 - m as i64)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DegreeArithmetic {
    /// ell^C(n,2): the generic algebra degree.
    pub algebra_degree: BigUint,
    /// ell^n: the degree of the covering of the dual group.
    pub center_cover_degree: BigUint,
}

pub fn degree_arithmetic(n: usize, ell: u64) -> Result<DegreeArithmetic> {
    if ell < 3 || ell.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!(
            "ell must be odd and >= 3, got {ell}"
        )));
    }
    let ell = BigUint::from(ell);
    Ok(DegreeArithmetic {
        algebra_degree: ell.pow(positive_root_count(n) as u32),
        center_cover_degree: ell.pow(n as u32),
    })
}

/// ell^exp as a big integer, for multiplicity reporting.
pub fn ell_power(ell: u64, exp: u64) -> BigUint {
    BigUint::from(ell).pow(exp as u32)
}
