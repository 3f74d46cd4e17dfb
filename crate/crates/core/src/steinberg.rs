//! The Steinberg cross-section for SL(n)/GL(n): the ordered product of
//! one-parameter subgroups and reflection lifts, its beta-set rewriting,
//! the coefficient-map inversion, and the unipotent factorization test.

use crate::algebra::{Dual, Mat, Rational, Scalar};
use crate::error::{Error, Result};
use crate::roots::{beta_set, x_alpha, x_root, BetaSet, Ordering, RootDataA};
use num_traits::Zero;
use rand_chacha::ChaCha8Rng;

/// Input of the section: an ordering of the simple roots, one parameter per
/// simple root (indexed by root, not by position), and an optional torus
/// prefix for the reductive case.
#[derive(Clone, Debug)]
pub struct SteinbergInput {
    pub ord: Ordering,
    /// params[i-1] is the parameter attached to simple root alpha_i.
    pub params: Vec<Rational>,
    /// Optional diagonal s with nonzero entries; the section becomes
    /// diag(s) * St(a).
    pub torus: Option<Vec<Rational>>,
}

impl SteinbergInput {
    pub fn new(ord: Ordering, params: Vec<Rational>, torus: Option<Vec<Rational>>) -> Result<Self> {
        let rank = ord.rank();
        if params.len() != rank {
            return Err(Error::InvalidInput(format!(
                "expected {rank} parameters, got {}",
                params.len()
            )));
        }
        if let Some(t) = &torus {
            if t.len() != rank + 1 {
                return Err(Error::InvalidInput(format!(
                    "torus must have {} entries",
                    rank + 1
                )));
            }
            if let Some(k) = t.iter().position(|v| v.is_zero()) {
                return Err(Error::ZeroDiagonal(k + 1));
            }
        }
        Ok(SteinbergInput { ord, params, torus })
    }

    fn n(&self) -> usize {
        self.ord.rank() + 1
    }
}

/// St(a) = X_{gamma_{n-1}}(a_{n-1}) s_{gamma_{n-1}} ... X_{gamma_1}(a_1)
/// s_{gamma_1} over the ordered simple roots, with the optional torus
/// prefix. Generic over the scalar so dual-number parameters flow through.
pub fn steinberg_section_generic<T: Scalar>(
    ord: &Ordering,
    params: &[T],
    torus: Option<&[T]>,
    n: usize,
) -> Result<Mat<T>> {
    let gamma = ord.sequence();
    let mut acc = Mat::identity(n);
    // product from gamma_{n-1} on the left down to gamma_1 on the right
    for &g in gamma.iter().rev() {
        let a = &params[g - 1];
        let factor = x_alpha(g, a, n)?.checked_mul(&crate::roots::s_alpha(g, n)?)?;
        acc = acc.checked_mul(&factor)?;
    }
    if let Some(t) = torus {
        let mut d = Mat::zeros(n);
        for (k, v) in t.iter().enumerate() {
            d.set(k, k, v.clone());
        }
        acc = d.checked_mul(&acc)?;
    }
    Ok(acc)
}

pub fn steinberg_section(inp: &SteinbergInput) -> Result<Mat<Rational>> {
    steinberg_section_generic(&inp.ord, &inp.params, inp.torus.as_deref(), inp.n())
}

/// The rewriting of the section as a product over the beta set times the
/// Weyl lift: St(a) = (prod_i X_{beta_i}(eps_i a_i)) * w.
///
/// Each factor is the conjugate of X_{gamma_i}(a_i) by the partial lift
/// product; as an elementary matrix it sits at the position of beta_i with a
/// sign eps_i read off the signed permutation. The construction cross-checks
/// the matrix-level position against the combinatorial beta set and must
/// reproduce `steinberg_section` exactly.
pub fn steinberg_beta_form(inp: &SteinbergInput) -> Result<Mat<Rational>> {
    if inp.torus.is_some() {
        return Err(Error::InvalidInput(
            "beta form is defined for the semisimple case (no torus)".into(),
        ));
    }
    let n = inp.n();
    let rd = RootDataA::new(n)?;
    let bs = beta_set(&inp.ord, &rd)?;
    let gamma = inp.ord.sequence();
    let rank = gamma.len();

    // partial lift products: conj[i] = s_{gamma_{n-1}} ... s_{gamma_i}, so
    // the conjugator of factor i is conj[i+1] and conj[0] is the full lift
    let mut conj: Vec<Mat<Rational>> = vec![Mat::identity(n); rank + 1];
    for i in (0..rank).rev() {
        conj[i] = conj[i + 1].checked_mul(&crate::roots::s_alpha(gamma[i], n)?)?;
    }
    let w_lift = conj[0].clone();
    check_lift_matches_permutation(&w_lift, &bs)?;

    let mut acc = Mat::identity(n);
    for i in 0..rank {
        let a = &inp.params[gamma[i] - 1];
        let c = &conj[i + 1];
        let factor = c
            .checked_mul(&x_alpha(gamma[i], a, n)?)?
            .checked_mul(&signed_permutation_inverse(c)?)?;
        // the conjugate must be elementary at the beta_i position
        let sign = elementary_sign_at(&factor, &bs.betas[i], a)?;
        let elem = x_root(&bs.betas[i], &(sign * a.clone()), n)?;
        if elem != factor {
            return Err(Error::Internal(
                "conjugated factor is not elementary at its beta root".into(),
            ));
        }
        acc = acc.checked_mul(&elem)?;
    }
    acc.checked_mul(&w_lift)
}

/// The signed-permutation lift must project to the combinatorial Weyl
/// permutation of the beta set.
fn check_lift_matches_permutation(lift: &Mat<Rational>, bs: &BetaSet) -> Result<()> {
    let n = lift.n();
    for k in 0..n {
        let target = bs.w[k];
        for r in 0..n {
            let v = lift.get(r, k);
            if r == target {
                if v.is_zero() {
                    return Err(Error::Internal(
                        "lift misses the permutation support".into(),
                    ));
                }
            } else if !v.is_zero() {
                return Err(Error::Internal("lift has off-permutation support".into()));
            }
        }
    }
    Ok(())
}

/// Extracts the sign of the single off-diagonal entry of an elementary
/// conjugate, located at the (p,q) position of the given root.
fn elementary_sign_at(m: &Mat<Rational>, root: &[i64], a: &Rational) -> Result<Rational> {
    let p = root.iter().position(|&c| c == 1).unwrap();
    let q = root.iter().position(|&c| c == -1).unwrap();
    let v = m.get(p, q);
    if a.is_zero() {
        return Ok(Rational::from_integer(1.into()));
    }
    let s = v / a;
    if s == Rational::from_integer(1.into()) || s == Rational::from_integer((-1).into()) {
        Ok(s)
    } else {
        Err(Error::Internal(format!(
            "conjugate carries a non-unit coefficient {s} at its root position"
        )))
    }
}

/// Inverse of a signed permutation matrix: transpose and invert entries.
fn signed_permutation_inverse(m: &Mat<Rational>) -> Result<Mat<Rational>> {
    let n = m.n();
    let mut inv = Mat::zeros(n);
    for i in 0..n {
        let mut nonzero = 0usize;
        for j in 0..n {
            let v = m.get(i, j);
            if !v.is_zero() {
                nonzero += 1;
                let r = v
                    .clone()
                    .try_inv()
                    .ok_or_else(|| Error::Internal("singular lift".into()))?;
                inv.set(j, i, r);
            }
        }
        if nonzero != 1 {
            return Err(Error::Internal("lift is not a signed permutation".into()));
        }
    }
    Ok(inv)
}

/// The lemma element prod_i X_{beta_i}(c) * w for a constant parameter c,
/// built through the beta form.
pub fn unipotent_factorization_element(
    ord: &Ordering,
    n: usize,
    c: &Rational,
) -> Result<Mat<Rational>> {
    if n < 2 {
        return Err(Error::InvalidInput("need n >= 2".into()));
    }
    let params = vec![c.clone(); n - 1];
    let inp = SteinbergInput::new(ord.clone(), params, None)?;
    steinberg_beta_form(&inp)
}

/// Leading principal minors, sizes 1..=n.
pub fn leading_minors(m: &Mat<Rational>) -> Result<Vec<Rational>> {
    (1..=m.n()).map(|i| Ok(m.leading_block(i)?.det())).collect()
}

/// Membership test for U^- U^+ in GL(n): all leading principal minors are 1
/// (the LU factorization with unit diagonals exists exactly in that case).
/// Returns the test for the element prod X_{beta_i}(-1) * w.
pub fn check_unipotent_factorization(ord: &Ordering, n: usize) -> Result<bool> {
    let phi = unipotent_factorization_element(ord, n, &Rational::from_integer((-1).into()))?;
    let one = Rational::from_integer(1.into());
    Ok(leading_minors(&phi)?.iter().all(|m| *m == one))
}

/// Inverts the coefficient map of the section for SL(n) with the standard
/// order: returns `a` with minor_sums(St(a))[0..n-1] = target.
///
/// Each coefficient P_r is affine in a_r once a_1..a_{r-1} are fixed and the
/// later parameters are zeroed, with a unit leading coefficient; the solve
/// walks r upward, reading value and derivative off a dual-number
/// evaluation.
pub fn steinberg_invert(target: &[Rational], n: usize) -> Result<Vec<Rational>> {
    if n < 2 {
        return Err(Error::InvalidInput("need n >= 2".into()));
    }
    if target.len() != n - 1 {
        return Err(Error::InvalidInput(format!(
            "target must have {} coefficients",
            n - 1
        )));
    }
    let rd = RootDataA::new(n)?;
    let ord = Ordering::standard(&rd);
    let mut solved: Vec<Rational> = vec![Rational::zero(); n - 1];
    for r in 0..n - 1 {
        let params: Vec<Dual<Rational>> = (0..n - 1)
            .map(|j| {
                if j < r {
                    Dual::constant(solved[j].clone())
                } else if j == r {
                    Dual::variable(Rational::zero())
                } else {
                    Dual::constant(Rational::zero())
                }
            })
            .collect();
        let st = steinberg_section_generic(&ord, &params, None, n)?;
        let coeff = st.principal_minor_sums().swap_remove(r);
        let slope = coeff.derivative;
        let value = coeff.value;
        let inv = slope.try_inv().ok_or_else(|| {
            Error::Internal(format!("coefficient {} is not affine-invertible", r + 1))
        })?;
        solved[r] = (target[r].clone() - value) * inv;
    }
    // re-verify: the solve must reproduce the target exactly
    let st = steinberg_section_generic(&ord, &solved, None, n)?;
    let sums = st.principal_minor_sums();
    if sums[..n - 1] != *target {
        return Err(Error::Internal(
            "section inversion failed to reproduce its target".into(),
        ));
    }
    Ok(solved)
}

/// Regularity probe: the Krylov matrix [v, Mv, ..., M^{n-1}v] has rank n for
/// some vector v exactly when the minimal polynomial equals the
/// characteristic polynomial. Tries a few random vectors.
pub fn is_regular_krylov(m: &Mat<Rational>, rng: &mut ChaCha8Rng, attempts: usize) -> bool {
    let n = m.n();
    for _ in 0..attempts.max(1) {
        let v = crate::sample::vector(rng, n);
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n);
        let mut cur = v;
        for _ in 0..n {
            rows.push(cur.clone());
            let mut next = vec![Rational::zero(); n];
            for (i, cell) in next.iter_mut().enumerate() {
                let mut acc = Rational::zero();
                for j in 0..n {
                    acc += m.get(i, j) * &cur[j];
                }
                *cell = acc;
            }
            cur = next;
        }
        if crate::algebra::row_rank(&rows) == n {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat_i64;
    use crate::roots::all_orderings;
    use crate::sample;

    fn rat(v: i64) -> Rational {
        rat_i64(v)
    }

    fn standard_input(n: usize, params: Vec<Rational>) -> SteinbergInput {
        let rd = RootDataA::new(n).unwrap();
        SteinbergInput::new(Ordering::standard(&rd), params, None).unwrap()
    }

    #[test]
    fn sl2_section() {
        // X(a) * s = [[-a, 1], [-1, 0]]
        let st = steinberg_section(&standard_input(2, vec![rat(7)])).unwrap();
        let expected = Mat::from_rows(vec![vec![rat(-7), rat(1)], vec![rat(-1), rat(0)]]).unwrap();
        assert_eq!(st, expected);
        // a = 0 gives the reflection lift itself
        let st0 = steinberg_section(&standard_input(2, vec![rat(0)])).unwrap();
        assert_eq!(st0, crate::roots::s_alpha(1, 2).unwrap());
    }

    #[test]
    fn sl3_coefficients_are_affine_in_parameters() {
        // symbolic check through dual scalars: P_r depends on a_r with unit
        // slope and not on later parameters
        let rd = RootDataA::new(3).unwrap();
        let ord = Ordering::standard(&rd);
        for var in 0..2 {
            let params: Vec<Dual<Rational>> = (0..2)
                .map(|j| {
                    if j == var {
                        Dual::variable(rat(2))
                    } else {
                        Dual::constant(rat(3))
                    }
                })
                .collect();
            let st = steinberg_section_generic(&ord, &params, None, 3).unwrap();
            let sums = st.principal_minor_sums();
            for (r, c) in sums.iter().enumerate().take(2) {
                if r < var {
                    assert!(
                        c.derivative.is_zero(),
                        "P_{} must not see a_{}",
                        r + 1,
                        var + 1
                    );
                } else if r == var {
                    assert!(c.derivative.clone().try_inv().is_some());
                }
            }
        }
    }

    #[test]
    fn beta_form_equals_section_all_orderings() {
        let mut rng = sample::rng(11);
        for n in 2..=4 {
            let rd = RootDataA::new(n).unwrap();
            for ord in all_orderings(&rd) {
                for _ in 0..20 {
                    let params: Vec<Rational> =
                        (0..n - 1).map(|_| sample::entry(&mut rng)).collect();
                    let inp = SteinbergInput::new(ord.clone(), params, None).unwrap();
                    let a = steinberg_section(&inp).unwrap();
                    let b = steinberg_beta_form(&inp).unwrap();
                    assert_eq!(a, b, "n={n}, order {:?}", ord.sequence());
                }
            }
        }
    }

    #[test]
    fn beta_form_at_zero_is_weyl_lift() {
        let rd = RootDataA::new(4).unwrap();
        for ord in all_orderings(&rd) {
            let inp = SteinbergInput::new(ord.clone(), vec![rat(0); 3], None).unwrap();
            let b = steinberg_beta_form(&inp).unwrap();
            let s = steinberg_section(&inp).unwrap();
            assert_eq!(b, s);
            // entries all 0/+-1, one nonzero per row and column
            for i in 0..4 {
                let nz = (0..4).filter(|&j| !b.get(i, j).is_zero()).count();
                assert_eq!(nz, 1);
            }
        }
    }

    #[test]
    fn sl2_beta_form_explicit() {
        let inp = standard_input(2, vec![rat(7)]);
        let b = steinberg_beta_form(&inp).unwrap();
        let expected = Mat::from_rows(vec![vec![rat(-7), rat(1)], vec![rat(-1), rat(0)]]).unwrap();
        assert_eq!(b, expected);
    }

    #[test]
    fn factorization_minors_sl2_and_negative_control() {
        let rd = RootDataA::new(2).unwrap();
        let ord = Ordering::standard(&rd);
        // Phi = [[1,1],[-1,0]], leading minors (1, 1)
        let phi = unipotent_factorization_element(&ord, 2, &rat(-1)).unwrap();
        let expected = Mat::from_rows(vec![vec![rat(1), rat(1)], vec![rat(-1), rat(0)]]).unwrap();
        assert_eq!(phi, expected);
        assert!(check_unipotent_factorization(&ord, 2).unwrap());
        // +1 parameters: leading minor -1, membership fails
        let phi_plus = unipotent_factorization_element(&ord, 2, &rat(1)).unwrap();
        let minors = leading_minors(&phi_plus).unwrap();
        assert_eq!(minors[0], rat(-1));
        assert!(!minors.iter().all(|m| *m == rat(1)));
    }

    #[test]
    fn factorization_minors_exhaustive_small() {
        for n in 2..=4 {
            let rd = RootDataA::new(n).unwrap();
            for ord in all_orderings(&rd) {
                assert!(
                    check_unipotent_factorization(&ord, n).unwrap(),
                    "n={n} {:?}",
                    ord.sequence()
                );
            }
        }
    }

    #[test]
    fn invert_sl2() {
        // P_1(St(a)) = -a, so the preimage of p is -p
        let a = steinberg_invert(&[rat(5)], 2).unwrap();
        assert_eq!(a, vec![rat(-5)]);
    }

    #[test]
    fn coefficients_triangular_in_parameters() {
        // P_r never sees a_s for s > r, so the sequential solve is sound;
        // checked with dual scalars at random points
        let mut rng = sample::rng(83);
        for n in 2..=5 {
            let rd = RootDataA::new(n).unwrap();
            let ord = Ordering::standard(&rd);
            for _ in 0..5 {
                let base: Vec<Rational> = (0..n - 1).map(|_| sample::entry(&mut rng)).collect();
                for var in 0..n - 1 {
                    let params: Vec<Dual<Rational>> = base
                        .iter()
                        .enumerate()
                        .map(|(j, v)| {
                            if j == var {
                                Dual::variable(v.clone())
                            } else {
                                Dual::constant(v.clone())
                            }
                        })
                        .collect();
                    let sums = steinberg_section_generic(&ord, &params, None, n)
                        .unwrap()
                        .principal_minor_sums();
                    for (r, c) in sums.iter().enumerate().take(n - 1) {
                        if r < var {
                            assert!(
                                c.derivative.is_zero(),
                                "P_{} saw a_{} at n={n}",
                                r + 1,
                                var + 1
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn invert_round_trips() {
        let mut rng = sample::rng(23);
        for n in 2..=5 {
            for _ in 0..25 {
                let params: Vec<Rational> = (0..n - 1).map(|_| sample::entry(&mut rng)).collect();
                let inp = standard_input(n, params.clone());
                let sums = steinberg_section(&inp).unwrap().principal_minor_sums();
                let back = steinberg_invert(&sums[..n - 1], n).unwrap();
                assert_eq!(back, params, "n={n}");
            }
        }
    }

    #[test]
    fn invert_identity_class_coefficients() {
        // target: coefficients of the identity class (binomials); applying
        // the section afterwards must reproduce them
        for n in 2..=4 {
            let target: Vec<Rational> = (1..n)
                .map(|r| {
                    let mut c = 1i64;
                    for t in 0..r {
                        c = c * (n as i64 - t as i64) / (t as i64 + 1);
                    }
                    rat(c)
                })
                .collect();
            let a = steinberg_invert(&target, n).unwrap();
            let inp = standard_input(n, a);
            let sums = steinberg_section(&inp).unwrap().principal_minor_sums();
            assert_eq!(&sums[..n - 1], &target[..]);
        }
    }

    #[test]
    fn section_determinant_is_one() {
        let mut rng = sample::rng(3);
        for n in 2..=5 {
            let params: Vec<Rational> = (0..n - 1).map(|_| sample::entry(&mut rng)).collect();
            let st = steinberg_section(&standard_input(n, params)).unwrap();
            assert_eq!(st.det(), rat(1));
        }
    }

    #[test]
    fn regularity_krylov() {
        let mut rng = sample::rng(7);
        for n in 2..=5 {
            for _ in 0..20 {
                let params: Vec<Rational> = (0..n - 1).map(|_| sample::entry(&mut rng)).collect();
                let st = steinberg_section(&standard_input(n, params)).unwrap();
                assert!(is_regular_krylov(&st, &mut rng, 4), "n={n}");
            }
        }
        // the identity is maximally non-regular for n >= 2
        let id = Mat::identity(3);
        assert!(!is_regular_krylov(&id, &mut rng, 4));
    }

    #[test]
    fn reductive_jacobian_nonsingular() {
        // for fixed random diagonal t, a -> (P_1..P_{n-1})(t * St(a)) has
        // everywhere-invertible Jacobian at sampled points
        let mut rng = sample::rng(41);
        for n in 2..=4 {
            let torus: Vec<Rational> = (0..n).map(|_| sample::nonzero_entry(&mut rng)).collect();
            for _ in 0..20 {
                let base: Vec<Rational> = (0..n - 1).map(|_| sample::entry(&mut rng)).collect();
                let rd = RootDataA::new(n).unwrap();
                let ord = Ordering::standard(&rd);
                let torus_dual: Vec<Dual<Rational>> =
                    torus.iter().map(|v| Dual::constant(v.clone())).collect();
                let mut jac: Vec<Vec<Rational>> = Vec::new();
                for var in 0..n - 1 {
                    let params: Vec<Dual<Rational>> = base
                        .iter()
                        .enumerate()
                        .map(|(j, v)| {
                            if j == var {
                                Dual::variable(v.clone())
                            } else {
                                Dual::constant(v.clone())
                            }
                        })
                        .collect();
                    let st =
                        steinberg_section_generic(&ord, &params, Some(&torus_dual), n).unwrap();
                    let sums = st.principal_minor_sums();
                    jac.push(sums[..n - 1].iter().map(|d| d.derivative.clone()).collect());
                }
                let rows: Vec<Vec<Rational>> = (0..n - 1)
                    .map(|r| (0..n - 1).map(|c| jac[c][r].clone()).collect())
                    .collect();
                assert_eq!(crate::algebra::row_rank(&rows), n - 1, "n={n}");
            }
        }
    }

    #[test]
    fn torus_prefix() {
        let rd = RootDataA::new(2).unwrap();
        let inp = SteinbergInput::new(
            Ordering::standard(&rd),
            vec![rat(3)],
            Some(vec![rat(2), rat(5)]),
        )
        .unwrap();
        let st = steinberg_section(&inp).unwrap();
        // diag(2,5) * [[-3,1],[-1,0]]
        let expected = Mat::from_rows(vec![vec![rat(-6), rat(2)], vec![rat(-5), rat(0)]]).unwrap();
        assert_eq!(st, expected);
        assert!(SteinbergInput::new(
            Ordering::standard(&rd),
            vec![rat(3)],
            Some(vec![rat(0), rat(5)])
        )
        .is_err());
    }
}
