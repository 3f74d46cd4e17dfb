//! Hamiltonian flow of a function on H, integrated with classical
//! fourth-order Runge-Kutta over the chart coordinates.
//!
//! The trajectory state is a float vector, but the vector field at every
//! stage is evaluated in exact rational arithmetic (a float is a rational,
//! losslessly), then rounded back. Casimir fields are therefore literally
//! zero and their flows stationary, not merely small.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{bracket_from_differentials, differential, gz_family, BracketForm, HFunction};
use crate::algebra::{rational_from_f64, rational_to_f64, Mat, Rational, Scalar};
use crate::error::{Error, Result};
use num_traits::{Signed, Zero};

pub const DIAGONAL_GUARD: f64 = 1e-12;

/// Chart coordinate labels: strict upper x, strict lower y, diag x; the same
/// layout as `chart_functions`.
pub fn chart_labels(n: usize) -> Vec<String> {
    let mut out = Vec::with_capacity(n * n);
    for p in 1..=n {
        for q in p + 1..=n {
            out.push(format!("x_{p}_{q}"));
        }
    }
    for p in 1..=n {
        for q in 1..p {
            out.push(format!("y_{p}_{q}"));
        }
    }
    for k in 1..=n {
        out.push(format!("x_{k}_{k}"));
    }
    out
}

/// Packs an H-point into chart coordinates.
pub fn to_chart(x: &Mat<f64>, y: &Mat<f64>) -> Vec<f64> {
    let n = x.n();
    let mut c = Vec::with_capacity(n * n);
    for p in 0..n {
        for q in p + 1..n {
            c.push(*x.get(p, q));
        }
    }
    for p in 0..n {
        for q in 0..p {
            c.push(*y.get(p, q));
        }
    }
    for k in 0..n {
        c.push(*x.get(k, k));
    }
    c
}

/// Rebuilds (x, y) from chart coordinates; diag(y) is derived as the
/// reciprocal of diag(x), so the point stays on H by construction.
pub fn from_chart(n: usize, c: &[f64]) -> Result<(Mat<f64>, Mat<f64>)> {
    let mut x = Mat::zeros(n);
    let mut y = Mat::zeros(n);
    let mut it = c.iter();
    for p in 0..n {
        for q in p + 1..n {
            x.set(
                p,
                q,
                *it.next().ok_or(Error::Shape("short chart vector".into()))?,
            );
        }
    }
    for p in 0..n {
        for q in 0..p {
            y.set(
                p,
                q,
                *it.next().ok_or(Error::Shape("short chart vector".into()))?,
            );
        }
    }
    for k in 0..n {
        let d = *it.next().ok_or(Error::Shape("short chart vector".into()))?;
        if d.abs() < DIAGONAL_GUARD || !d.is_finite() {
            return Err(Error::NumericallySingular(DIAGONAL_GUARD));
        }
        x.set(k, k, d);
        y.set(k, k, 1.0 / d);
    }
    Ok((x, y))
}

#[derive(Clone, Debug, Serialize)]
pub struct FlowReport {
    pub n: usize,
    pub hamiltonian: String,
    pub dt: f64,
    pub steps: usize,
    /// True when every field evaluation was exactly zero: the trajectory
    /// never moved.
    pub stationary: bool,
    /// Per-function maximal relative drift of the conserved family.
    pub drifts: BTreeMap<String, f64>,
    pub max_relative_drift: f64,
}

#[derive(Clone, Debug)]
pub struct FlowResult {
    pub report: FlowReport,
    /// Chart coordinates per recorded step (including the initial point).
    pub trajectory: Vec<Vec<f64>>,
    pub labels: Vec<String>,
}

/// Exact vector field: c-dot_a = {f, coord_a} evaluated over the rationals
/// at the (exactly lifted) float point. Returns None when the field is
/// identically zero at this point.
fn field_exact(
    f: &HFunction,
    coords: &[HFunction],
    n: usize,
    chart: &[f64],
) -> Result<(Vec<f64>, bool)> {
    let (xf, yf) = from_chart(n, chart)?;
    let x: Mat<Rational> = xf.map(|v| rational_from_f64(*v).expect("guarded finite value"));
    let mut y: Mat<Rational> = yf.map(|v| rational_from_f64(*v).expect("guarded finite value"));
    // keep the diagonal condition exact: diag(y) := 1/diag(x)
    for k in 0..n {
        let d = x
            .get(k, k)
            .clone()
            .try_inv()
            .ok_or(Error::ZeroDiagonal(k + 1))?;
        y.set(k, k, d);
    }
    let xi = x.triangular_inverse()?;
    let yi = y.triangular_inverse()?;
    let zf = differential(f, &x, &y)?;
    let mut out = Vec::with_capacity(coords.len());
    let mut all_zero = true;
    for c in coords {
        let zc = differential(c, &x, &y)?;
        let v = bracket_from_differentials(&zf, &zc, &x, &xi, &y, &yi, BracketForm::Standard)?;
        if !v.is_zero() {
            all_zero = false;
        }
        out.push(rational_to_f64(&v));
    }
    Ok((out, all_zero))
}

/// Integrates the flow of `f` from the float point (x0, y0) and reports the
/// relative drift of every Gelfand-Zetlin function along the trajectory.
///
/// dt = 0 is allowed and yields a constant trajectory; negative or
/// non-finite step sizes are rejected.
pub fn hamiltonian_flow(
    f: &HFunction,
    x0: &Mat<f64>,
    y0: &Mat<f64>,
    dt: f64,
    steps: usize,
) -> Result<FlowResult> {
    if !dt.is_finite() || dt < 0.0 {
        return Err(Error::BadStepSize);
    }
    let n = x0.n();
    let coords = super::chart_functions(n);
    let labels = chart_labels(n);
    let family = gz_family(n);

    let mut chart = to_chart(x0, y0);
    // validate the start point through the chart rebuild
    let _ = from_chart(n, &chart)?;

    let monitor = |chart: &[f64]| -> Result<Vec<Rational>> {
        let (xf, yf) = from_chart(n, chart)?;
        let x: Mat<Rational> = xf.map(|v| rational_from_f64(*v).expect("guarded"));
        let mut y: Mat<Rational> = yf.map(|v| rational_from_f64(*v).expect("guarded"));
        for k in 0..n {
            let d = x
                .get(k, k)
                .clone()
                .try_inv()
                .ok_or(Error::ZeroDiagonal(k + 1))?;
            y.set(k, k, d);
        }
        family.iter().map(|g| g.eval(&x, &y)).collect()
    };

    let initial = monitor(&chart)?;
    let mut max_drift: Vec<Rational> = vec![Rational::zero(); family.len()];
    let mut trajectory = Vec::with_capacity(steps + 1);
    trajectory.push(chart.clone());
    let mut stationary = true;

    let axpy = |base: &[f64], k: &[f64], h: f64| -> Vec<f64> {
        base.iter().zip(k).map(|(b, v)| b + h * v).collect()
    };

    for _ in 0..steps {
        let (k1, z1) = field_exact(f, &coords, n, &chart)?;
        let (k2, z2) = field_exact(f, &coords, n, &axpy(&chart, &k1, dt / 2.0))?;
        let (k3, z3) = field_exact(f, &coords, n, &axpy(&chart, &k2, dt / 2.0))?;
        let (k4, z4) = field_exact(f, &coords, n, &axpy(&chart, &k3, dt))?;
        stationary &= z1 && z2 && z3 && z4;
        for a in 0..chart.len() {
            chart[a] += dt / 6.0 * (k1[a] + 2.0 * k2[a] + 2.0 * k3[a] + k4[a]);
        }
        trajectory.push(chart.clone());
        let current = monitor(&chart)?;
        for (slot, (v, v0)) in max_drift.iter_mut().zip(current.iter().zip(&initial)) {
            let diff = (v - v0).abs();
            // relative drift; absolute when the reference is tiny
            let denom_ok = v0.abs() > Rational::new(1.into(), 1_000_000_000u64.into());
            let drift = if denom_ok { diff / v0.abs() } else { diff };
            if drift > *slot {
                *slot = drift;
            }
        }
    }

    let mut drifts = BTreeMap::new();
    let mut max_relative_drift = 0.0f64;
    for (g, d) in family.iter().zip(&max_drift) {
        let df = rational_to_f64(d);
        max_relative_drift = max_relative_drift.max(df);
        drifts.insert(g.name(), df);
    }
    Ok(FlowResult {
        report: FlowReport {
            n,
            hamiltonian: f.name(),
            dt,
            steps,
            stationary,
            drifts,
            max_relative_drift,
        },
        trajectory,
        labels,
    })
}
