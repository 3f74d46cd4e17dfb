//! Functions on the dual group H, evaluable over any scalar (rationals,
//! duals, nested duals, floats), so directional derivatives come out exact.

use crate::algebra::{Mat, Rational};
use crate::error::{Error, Result};

/// A function on H = {(x, y) in B x B^- : reciprocal diagonals}, given by an
/// evaluation rule that is polynomial in the entries of x, y and the inverse
/// diagonal. `Bracket` closes the family under the Poisson bracket, which
/// makes nested (Jacobi-style) evaluations possible.
#[derive(Clone, Debug, PartialEq)]
pub enum HFunction {
    /// Coordinate x_{p,q}, 1-based, p <= q.
    XEntry(usize, usize),
    /// Coordinate y_{p,q}, 1-based, p >= q.
    YEntry(usize, usize),
    /// f_{i,k} = P_k(x_i * y_i^{-1}) on the leading i x i blocks.
    GzCoeff {
        block: usize,
        coeff: usize,
    },
    Const(Rational),
    Product(Box<HFunction>, Box<HFunction>),
    /// The Poisson bracket of two functions, as a function.
    Bracket(Box<HFunction>, Box<HFunction>),
}

impl HFunction {
    pub fn product(f: HFunction, g: HFunction) -> HFunction {
        HFunction::Product(Box::new(f), Box::new(g))
    }

    pub fn bracket_fn(f: HFunction, g: HFunction) -> HFunction {
        HFunction::Bracket(Box::new(f), Box::new(g))
    }

    /// Stable name for reports.
    pub fn name(&self) -> String {
        match self {
            HFunction::XEntry(p, q) => format!("x_{p}_{q}"),
            HFunction::YEntry(p, q) => format!("y_{p}_{q}"),
            HFunction::GzCoeff { block, coeff } => format!("f_{block}_{coeff}"),
            HFunction::Const(c) => format!("const_{c}"),
            HFunction::Product(f, g) => format!("prod({},{})", f.name(), g.name()),
            HFunction::Bracket(f, g) => format!("bracket({},{})", f.name(), g.name()),
        }
    }

    pub fn eval<T: super::BracketEval>(&self, x: &Mat<T>, y: &Mat<T>) -> Result<T> {
        let n = x.n();
        match self {
            HFunction::XEntry(p, q) => {
                check_pos(*p, *q, n)?;
                Ok(x.get(p - 1, q - 1).clone())
            }
            HFunction::YEntry(p, q) => {
                check_pos(*q, *p, n)?;
                Ok(y.get(p - 1, q - 1).clone())
            }
            HFunction::GzCoeff { block, coeff } => {
                if *block < 1 || *block > n || *coeff < 1 || *coeff > *block {
                    return Err(Error::IndexOutOfRange {
                        index: *block.max(coeff),
                        max: n,
                    });
                }
                let xi = x.leading_block(*block)?;
                let yi = y.leading_block(*block)?.triangular_inverse()?;
                let prod = xi.checked_mul(&yi)?;
                Ok(prod.principal_minor_sums().swap_remove(*coeff - 1))
            }
            HFunction::Const(c) => Ok(T::from_rational(c)),
            HFunction::Product(f, g) => Ok(f.eval(x, y)? * g.eval(x, y)?),
            HFunction::Bracket(f, g) => T::eval_bracket(f, g, x, y),
        }
    }
}

fn check_pos(lo: usize, hi: usize, n: usize) -> Result<()> {
    if lo < 1 || hi > n || lo > hi {
        return Err(Error::IndexOutOfRange { index: hi, max: n });
    }
    Ok(())
}

/// The multiplicative Gelfand-Zetlin family: the nested block coefficients
/// f_{i,k} for 1 <= k <= i <= n plus the torus coordinates d_j = x_{j,j}.
/// Size n(n+1)/2 + n before dependency reduction.
pub fn gz_family(n: usize) -> Vec<HFunction> {
    let mut fam = Vec::with_capacity(n * (n + 1) / 2 + n);
    for block in 1..=n {
        for coeff in 1..=block {
            fam.push(HFunction::GzCoeff { block, coeff });
        }
    }
    for j in 1..=n {
        fam.push(HFunction::XEntry(j, j));
    }
    fam
}

/// The n^2 independent chart coordinates: strict upper entries of x, strict
/// lower entries of y, and the diagonal of x (the diagonal of y is the
/// reciprocal and is not a coordinate).
pub fn chart_functions(n: usize) -> Vec<HFunction> {
    let mut out = Vec::with_capacity(n * n);
    for p in 1..=n {
        for q in p + 1..=n {
            out.push(HFunction::XEntry(p, q));
        }
    }
    for p in 1..=n {
        for q in 1..p {
            out.push(HFunction::YEntry(p, q));
        }
    }
    for k in 1..=n {
        out.push(HFunction::XEntry(k, k));
    }
    out
}

/// Every structurally present matrix entry of x and y as a function:
/// x_{p,q} for p <= q and y_{p,q} for p >= q.
pub fn all_entry_functions(n: usize) -> Vec<HFunction> {
    let mut out = Vec::with_capacity(n * (n + 1));
    for p in 1..=n {
        for q in p..=n {
            out.push(HFunction::XEntry(p, q));
        }
    }
    for p in 1..=n {
        for q in 1..=p {
            out.push(HFunction::YEntry(p, q));
        }
    }
    out
}
