//! The Poisson dual of GL(n) and its Manin-triple bracket, computed exactly.
//!
//! The dual group is H = {(x, y) in B x B^-: diag(x) diag(y) = 1} inside
//! GL(n) x GL(n) with the bilinear form kappa((a,b),(u,v)) = tr(au) - tr(bv).
//! The tangent algebra h of H pairs perfectly with the diagonal copy k of
//! gl(n), which identifies the differential of a function with a matrix z:
//!
//!   z_{q,p} =  D f along (E_{p,q}, 0)        for p < q  (lower part of z)
//!   z_{q,p} = -D f along (0, E_{p,q})        for p > q  (upper part of z)
//!   z_{k,k} =  D f along (E_{k,k}, -E_{k,k}) / 2
//!
//! with D the left-invariant directional derivative, computed exactly with
//! dual numbers. Writing F1 = x zf x^-1, F2 = y zf y^-1 (the two components
//! of Ad_{(x,y)} applied to the diagonal pair) and likewise G1, G2 for g,
//! the bracket pairs the h-component of one transported differential against
//! the other through the isotropic splitting of the double:
//!
//!   {f,g} = tr[(F1 - F2) * (low(G1) + up(G2) + diag(G1 + G2)/2)].
//!
//! With this form every conjugation-invariant function of x y^-1 is a
//! Casimir on the nose: its transported differential is diagonal, so
//! F1 - F2 = 0.

pub mod flow;
pub mod functions;

use serde::Serialize;

use crate::algebra::{format_rational, rat_i64, row_rank, Dual, Mat, Rational, Scalar};
use crate::error::{Error, Result};
use crate::sample;
use num_traits::{Signed, Zero};
use rand_chacha::ChaCha8Rng;

pub use functions::{all_entry_functions, chart_functions, gz_family, HFunction};

/// A validated point of H over the rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct HPoint {
    x: Mat<Rational>,
    y: Mat<Rational>,
}

impl HPoint {
    pub fn new(x: Mat<Rational>, y: Mat<Rational>) -> Result<Self> {
        if x.n() != y.n() {
            return Err(Error::DimensionMismatch(x.n(), y.n()));
        }
        if !x.is_upper_triangular() {
            return Err(Error::Shape("x must be upper triangular".into()));
        }
        if !y.is_lower_triangular() {
            return Err(Error::Shape("y must be lower triangular".into()));
        }
        for k in 0..x.n() {
            let prod = x.get(k, k) * y.get(k, k);
            if prod != rat_i64(1) {
                return Err(Error::DiagonalCondition(k + 1));
            }
        }
        Ok(HPoint { x, y })
    }

    pub fn n(&self) -> usize {
        self.x.n()
    }

    pub fn x(&self) -> &Mat<Rational> {
        &self.x
    }

    pub fn y(&self) -> &Mat<Rational> {
        &self.y
    }
}

/// Seeded random point of H: x upper with nonzero diagonal, y strictly-lower
/// entries free, diag(y) the reciprocal of diag(x). Entries from {-5..5}.
pub fn random_h_point(rng: &mut ChaCha8Rng, n: usize) -> HPoint {
    let mut x: Mat<Rational> = Mat::zeros(n);
    let mut y: Mat<Rational> = Mat::zeros(n);
    for i in 0..n {
        for j in i + 1..n {
            x.set(i, j, sample::entry(rng));
            y.set(j, i, sample::entry(rng));
        }
        let d = sample::nonzero_entry(rng);
        y.set(i, i, d.clone().try_inv().unwrap());
        x.set(i, i, d);
    }
    HPoint::new(x, y).expect("construction satisfies the diagonal condition")
}

/// Random point for float-mode checks: entries in {-1, 0, 1} and unit
/// diagonals. Small reciprocal diagonals make block inverses and the
/// division-free coefficient sums blow up to ~1e13 intermediates at n = 4,
/// which drowns a 1e-9 zero-test in rounding noise; this range keeps every
/// intermediate well inside f64 exactness.
pub fn random_h_point_float_safe(rng: &mut ChaCha8Rng, n: usize) -> HPoint {
    use rand::Rng;
    let mut x: Mat<Rational> = Mat::zeros(n);
    let mut y: Mat<Rational> = Mat::zeros(n);
    for i in 0..n {
        for j in i + 1..n {
            x.set(i, j, rat_i64(rng.random_range(-1..=1)));
            y.set(j, i, rat_i64(rng.random_range(-1..=1)));
        }
        let d = rat_i64(if rng.random_range(0..2) == 0 { 1 } else { -1 });
        y.set(i, i, d.clone());
        x.set(i, i, d);
    }
    HPoint::new(x, y).expect("construction satisfies the diagonal condition")
}

/// Evaluation hook for bracket-as-function nodes, implemented level by
/// level over the dual-number tower so the compiled recursion is finite.
/// Two nested bracket evaluations over the rationals (enough for the Jacobi
/// identity) are supported; deeper nesting reports an error at runtime.
pub trait BracketEval: Scalar {
    fn eval_bracket(f: &HFunction, g: &HFunction, x: &Mat<Self>, y: &Mat<Self>) -> Result<Self>;
}

macro_rules! bracket_eval_via_differentials {
    ($t:ty) => {
        impl BracketEval for $t {
            fn eval_bracket(
                f: &HFunction,
                g: &HFunction,
                x: &Mat<Self>,
                y: &Mat<Self>,
            ) -> Result<Self> {
                bracket_with_form(f, g, x, y, BracketForm::Standard)
            }
        }
    };
}

macro_rules! bracket_eval_depth_limit {
    ($t:ty) => {
        impl BracketEval for $t {
            fn eval_bracket(
                _f: &HFunction,
                _g: &HFunction,
                _x: &Mat<Self>,
                _y: &Mat<Self>,
            ) -> Result<Self> {
                Err(Error::InvalidInput(
                    "bracket nesting exceeds the supported dual-number depth".into(),
                ))
            }
        }
    };
}

bracket_eval_via_differentials!(Rational);
bracket_eval_via_differentials!(Dual<Rational>);
bracket_eval_via_differentials!(Dual<Dual<Rational>>);
bracket_eval_depth_limit!(Dual<Dual<Dual<Rational>>>);
bracket_eval_via_differentials!(f64);
bracket_eval_via_differentials!(Dual<f64>);
bracket_eval_depth_limit!(Dual<Dual<f64>>);

/// The differential z = delta_p f in gl(n), from exact directional
/// derivatives along the tangent basis of H (see the module docs).
pub fn differential<T: Scalar>(f: &HFunction, x: &Mat<T>, y: &Mat<T>) -> Result<Mat<T>>
where
    Dual<T>: BracketEval,
{
    let n = x.n();
    let mut z: Mat<T> = Mat::zeros(n);
    let lift_x = x.map(|v| Dual::constant(v.clone()));
    let lift_y = y.map(|v| Dual::constant(v.clone()));

    // right translation by exp(eps E_{p,q}) perturbs to m + eps (m E_{p,q}):
    // column q picks up column p in the eps part.
    let perturb =
        |m: &Mat<T>, lifted: &Mat<Dual<T>>, p: usize, q: usize, negate: bool| -> Mat<Dual<T>> {
            let mut out = lifted.clone();
            for i in 0..n {
                let d = m.get(i, p).clone();
                let d = if negate { -d } else { d };
                let mut cell = out.get(i, q).clone();
                cell.derivative = d;
                out.set(i, q, cell);
            }
            out
        };

    for p in 0..n {
        for q in 0..n {
            if p == q {
                continue;
            }
            if p < q {
                // (E_pq, 0): x moves, lower entry z_{q,p}
                let xd = perturb(x, &lift_x, p, q, false);
                let d = f.eval(&xd, &lift_y)?.derivative;
                z.set(q, p, d);
            } else {
                // (0, E_pq): y moves, upper entry z_{q,p} with a sign
                let yd = perturb(y, &lift_y, p, q, false);
                let d = f.eval(&lift_x, &yd)?.derivative;
                z.set(q, p, -d);
            }
        }
    }
    for k in 0..n {
        // (E_kk, -E_kk)
        let xd = perturb(x, &lift_x, k, k, false);
        let yd = perturb(y, &lift_y, k, k, true);
        let d = f.eval(&xd, &yd)?.derivative;
        z.set(k, k, d.halve());
    }
    Ok(z)
}

/// Bracket evaluation form: the mutated variant flips one sign and destroys
/// the Poisson identities, proving the checks have power.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketForm {
    Standard,
    SignFlipped,
}

/// {f,g}(x,y) from precomputed differentials (see the module docs for the
/// formula).
pub fn bracket_from_differentials<T: Scalar>(
    zf: &Mat<T>,
    zg: &Mat<T>,
    x: &Mat<T>,
    x_inv: &Mat<T>,
    y: &Mat<T>,
    y_inv: &Mat<T>,
    form: BracketForm,
) -> Result<T> {
    let n = x.n();
    let f1 = x.checked_mul(zf)?.checked_mul(x_inv)?;
    let f2 = y.checked_mul(zf)?.checked_mul(y_inv)?;
    let g1 = x.checked_mul(zg)?.checked_mul(x_inv)?;
    let g2 = y.checked_mul(zg)?.checked_mul(y_inv)?;
    // w = low(G1) + up(G2) + diag(G1 + G2)/2; the mutated form flips the
    // sign of the upper block, which destroys the Poisson identities.
    let w = Mat::from_fn(n, |i, j| {
        if i > j {
            g1.get(i, j).clone()
        } else if i < j {
            let v = g2.get(i, j).clone();
            match form {
                BracketForm::Standard => v,
                BracketForm::SignFlipped => -v,
            }
        } else {
            (g1.get(i, j).clone() + g2.get(i, j).clone()).halve()
        }
    });
    let diff = Mat::from_fn(n, |i, j| f1.get(i, j).clone() - f2.get(i, j).clone());
    Ok(trace_product(&diff, &w))
}

fn trace_product<T: Scalar>(a: &Mat<T>, b: &Mat<T>) -> T {
    let n = a.n();
    let mut acc = T::zero();
    for i in 0..n {
        for j in 0..n {
            acc = acc + a.get(i, j).clone() * b.get(j, i).clone();
        }
    }
    acc
}

/// {f,g} at a point given by triangular matrices over any scalar.
pub fn bracket_with_form<T: Scalar>(
    f: &HFunction,
    g: &HFunction,
    x: &Mat<T>,
    y: &Mat<T>,
    form: BracketForm,
) -> Result<T>
where
    Dual<T>: BracketEval,
{
    let zf = differential(f, x, y)?;
    let zg = differential(g, x, y)?;
    let xi = x.triangular_inverse()?;
    let yi = y.triangular_inverse()?;
    bracket_from_differentials(&zf, &zg, x, &xi, y, &yi, form)
}

pub fn bracket<T: Scalar>(f: &HFunction, g: &HFunction, x: &Mat<T>, y: &Mat<T>) -> Result<T>
where
    Dual<T>: BracketEval,
{
    bracket_with_form(f, g, x, y, BracketForm::Standard)
}

pub fn bracket_at(f: &HFunction, g: &HFunction, p: &HPoint) -> Result<Rational> {
    bracket(f, g, p.x(), p.y())
}

// ---------------------------------------------------------------------------
// Verification reports

#[derive(Clone, Debug, Serialize)]
pub struct PairViolation {
    pub f: String,
    pub g: String,
    pub point: usize,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutationReport {
    pub n: usize,
    pub seed: u64,
    pub points: usize,
    pub pairs_checked: usize,
    pub float_mode: bool,
    /// Maximal |{f,g}| seen, as a string ("0" when everything vanished).
    pub max_abs: String,
    pub violations: Vec<PairViolation>,
}

/// Pairwise brackets of the family at seeded random points. In float mode
/// values below `float_tol` count as zero and points come from the
/// float-safe sampler; in exact mode only literal zero passes.
pub fn verify_commutative_family(
    family: &[HFunction],
    n: usize,
    points: usize,
    seed: u64,
    float_mode: bool,
    float_tol: f64,
    form: BracketForm,
) -> Result<CommutationReport> {
    let mut rng = sample::rng(seed);
    let mut violations = Vec::new();
    let mut pairs_checked = 0usize;
    let mut max_exact = Rational::zero();
    let mut max_float = 0.0f64;

    for point_idx in 0..points {
        let p = if float_mode {
            random_h_point_float_safe(&mut rng, n)
        } else {
            random_h_point(&mut rng, n)
        };
        if float_mode {
            let x = p.x().map(Scalar::from_rational);
            let y = p.y().map(Scalar::from_rational);
            let xi = x.triangular_inverse()?;
            let yi = y.triangular_inverse()?;
            let diffs: Vec<Mat<f64>> = family
                .iter()
                .map(|f| differential(f, &x, &y))
                .collect::<Result<_>>()?;
            for a in 0..family.len() {
                for b in a + 1..family.len() {
                    let v =
                        bracket_from_differentials(&diffs[a], &diffs[b], &x, &xi, &y, &yi, form)?;
                    pairs_checked += 1;
                    max_float = max_float.max(v.abs());
                    if v.abs() > float_tol {
                        violations.push(PairViolation {
                            f: family[a].name(),
                            g: family[b].name(),
                            point: point_idx,
                            value: format!("{v:e}"),
                        });
                    }
                }
            }
        } else {
            let xi = p.x().triangular_inverse()?;
            let yi = p.y().triangular_inverse()?;
            let diffs: Vec<Mat<Rational>> = family
                .iter()
                .map(|f| differential(f, p.x(), p.y()))
                .collect::<Result<_>>()?;
            for a in 0..family.len() {
                for b in a + 1..family.len() {
                    let v = bracket_from_differentials(
                        &diffs[a],
                        &diffs[b],
                        p.x(),
                        &xi,
                        p.y(),
                        &yi,
                        form,
                    )?;
                    pairs_checked += 1;
                    if !v.is_zero() {
                        if v.abs() > max_exact {
                            max_exact = v.abs();
                        }
                        violations.push(PairViolation {
                            f: family[a].name(),
                            g: family[b].name(),
                            point: point_idx,
                            value: format_rational(&v),
                        });
                    }
                }
            }
        }
    }
    let max_abs = if float_mode {
        format!("{max_float:e}")
    } else {
        format_rational(&max_exact)
    };
    Ok(CommutationReport {
        n,
        seed,
        points,
        pairs_checked,
        float_mode,
        max_abs,
        violations,
    })
}

/// Pairwise commutation of the Gelfand-Zetlin family.
pub fn verify_commutative(n: usize, points: usize, seed: u64) -> Result<CommutationReport> {
    verify_commutative_family(
        &gz_family(n),
        n,
        points,
        seed,
        false,
        0.0,
        BracketForm::Standard,
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct CasimirReport {
    pub n: usize,
    pub seed: u64,
    pub points: usize,
    pub brackets_checked: usize,
    pub max_abs: String,
    pub violations: Vec<PairViolation>,
}

/// The top-block coefficients f_{n,k} must bracket to zero with every entry
/// function of x and y.
pub fn casimir_check(n: usize, seed: u64, points: usize) -> Result<CasimirReport> {
    casimir_check_with_form(n, seed, points, BracketForm::Standard)
}

/// Form-aware variant for the aggregated suite. Centrality is structural
/// (the transported differential of f_{n,k} is diagonal), so it survives
/// the mutated form too; the mutation shows up in the commutation checks.
pub fn casimir_check_with_form(
    n: usize,
    seed: u64,
    points: usize,
    form: BracketForm,
) -> Result<CasimirReport> {
    let casimirs: Vec<HFunction> = (1..=n)
        .map(|coeff| HFunction::GzCoeff { block: n, coeff })
        .collect();
    let coords = all_entry_functions(n);
    let mut rng = sample::rng(seed);
    let mut violations = Vec::new();
    let mut checked = 0usize;
    let mut max_exact = Rational::zero();
    for point_idx in 0..points {
        let p = random_h_point(&mut rng, n);
        let xi = p.x().triangular_inverse()?;
        let yi = p.y().triangular_inverse()?;
        for f in &casimirs {
            let zf = differential(f, p.x(), p.y())?;
            for g in &coords {
                let zg = differential(g, p.x(), p.y())?;
                let v = bracket_from_differentials(&zf, &zg, p.x(), &xi, p.y(), &yi, form)?;
                checked += 1;
                if !v.is_zero() {
                    if v.abs() > max_exact {
                        max_exact = v.abs();
                    }
                    violations.push(PairViolation {
                        f: f.name(),
                        g: g.name(),
                        point: point_idx,
                        value: format_rational(&v),
                    });
                }
            }
        }
    }
    Ok(CasimirReport {
        n,
        seed,
        points,
        brackets_checked: checked,
        max_abs: format_rational(&max_exact),
        violations,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RankReport {
    pub n: usize,
    pub seed: u64,
    pub family_size: usize,
    pub chart_size: usize,
    pub family_rank: usize,
    pub family_rank_expected: usize,
    pub bivector_rank: usize,
    pub bivector_rank_expected: usize,
    pub pass: bool,
}

/// Jacobian of the family in the chart coordinates: rows are functions,
/// columns the n^2 coordinates. Diagonal perturbations keep the point on H
/// by moving diag(y) reciprocally.
pub fn family_jacobian(family: &[HFunction], p: &HPoint) -> Result<Vec<Vec<Rational>>> {
    let n = p.n();
    let lift_x = p.x().map(|v| Dual::constant(v.clone()));
    let lift_y = p.y().map(|v| Dual::constant(v.clone()));
    let mut columns: Vec<Vec<Rational>> = Vec::with_capacity(n * n);

    let mut push_column = |xd: &Mat<Dual<Rational>>, yd: &Mat<Dual<Rational>>| -> Result<()> {
        let mut col = Vec::with_capacity(family.len());
        for f in family {
            col.push(f.eval(xd, yd)?.derivative);
        }
        columns.push(col);
        Ok(())
    };

    for p_idx in 0..n {
        for q in p_idx + 1..n {
            let mut xd = lift_x.clone();
            let mut cell = xd.get(p_idx, q).clone();
            cell.derivative = Rational::from_integer(1.into());
            xd.set(p_idx, q, cell);
            push_column(&xd, &lift_y)?;
        }
    }
    for p_idx in 0..n {
        for q in 0..p_idx {
            let mut yd = lift_y.clone();
            let mut cell = yd.get(p_idx, q).clone();
            cell.derivative = Rational::from_integer(1.into());
            yd.set(p_idx, q, cell);
            push_column(&lift_x, &yd)?;
        }
    }
    for k in 0..n {
        let mut xd = lift_x.clone();
        let mut cx = xd.get(k, k).clone();
        cx.derivative = Rational::from_integer(1.into());
        xd.set(k, k, cx);
        // diag(y) = 1/diag(x): derivative is -y_kk^2
        let mut yd = lift_y.clone();
        let ykk = p.y().get(k, k).clone();
        let mut cy = yd.get(k, k).clone();
        cy.derivative = -(ykk.clone() * ykk);
        yd.set(k, k, cy);
        push_column(&xd, &yd)?;
    }

    // transpose columns into rows per function
    let rows = (0..family.len())
        .map(|r| columns.iter().map(|c| c[r].clone()).collect())
        .collect();
    Ok(rows)
}

/// Rank data at a seeded random point: the Jacobian rank of the family
/// (expected n(n+1)/2) and the rank of the coordinate bivector
/// {c_a, c_b} (expected n^2 - n, the generic leaf dimension).
pub fn rank_report(n: usize, seed: u64) -> Result<RankReport> {
    let mut rng = sample::rng(seed);
    let p = random_h_point(&mut rng, n);
    let family = gz_family(n);
    let jac = family_jacobian(&family, &p)?;
    let family_rank = row_rank(&jac);

    let coords = chart_functions(n);
    let xi = p.x().triangular_inverse()?;
    let yi = p.y().triangular_inverse()?;
    let diffs: Vec<Mat<Rational>> = coords
        .iter()
        .map(|c| differential(c, p.x(), p.y()))
        .collect::<Result<_>>()?;
    let m = coords.len();
    let mut bivector: Vec<Vec<Rational>> = vec![vec![Rational::zero(); m]; m];
    for a in 0..m {
        for b in a + 1..m {
            let v = bracket_from_differentials(
                &diffs[a],
                &diffs[b],
                p.x(),
                &xi,
                p.y(),
                &yi,
                BracketForm::Standard,
            )?;
            bivector[b][a] = -v.clone();
            bivector[a][b] = v;
        }
    }
    let bivector_rank = row_rank(&bivector);

    let family_rank_expected = n * (n + 1) / 2;
    let bivector_rank_expected = n * n - n;
    Ok(RankReport {
        n,
        seed,
        family_size: family.len(),
        chart_size: m,
        family_rank,
        family_rank_expected,
        bivector_rank,
        bivector_rank_expected,
        pass: family_rank == family_rank_expected && bivector_rank == bivector_rank_expected,
    })
}
