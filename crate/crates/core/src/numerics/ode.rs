//! Classical fixed-step Runge-Kutta integration.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)] // shadowed by std's inherent methods when a test build links std
use num_traits::Float;

use crate::error::{Error, Result};

/// States beyond this magnitude abort the integration.
pub const OVERFLOW_GUARD: f64 = 1e150;

/// Sampled solution of an initial value problem on a uniform grid.
///
/// Samples are taken from an internal half-step companion run, and
/// `error_estimate` is the order-4 Richardson estimate
/// `max_i |y_h(r_i) - y_{h/2}(r_i)| / 15` over the shared grid.
pub struct Trajectory {
    r0: f64,
    h: f64,
    dim: usize,
    data: Vec<f64>,
    pub error_estimate: f64,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.data.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn step(&self) -> f64 {
        self.h
    }

    pub fn radius(&self, i: usize) -> f64 {
        self.r0 + i as f64 * self.h
    }

    pub fn state(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn last_state(&self) -> &[f64] {
        self.state(self.len() - 1)
    }
}

fn rk4_step<F: Fn(f64, &[f64], &mut [f64])>(
    rhs: &F,
    r: f64,
    h: f64,
    y: &mut [f64],
    k: &mut [Vec<f64>; 4],
    tmp: &mut [f64],
) {
    let dim = y.len();
    rhs(r, y, &mut k[0]);
    for i in 0..dim {
        tmp[i] = y[i] + 0.5 * h * k[0][i];
    }
    rhs(r + 0.5 * h, tmp, &mut k[1]);
    for i in 0..dim {
        tmp[i] = y[i] + 0.5 * h * k[1][i];
    }
    rhs(r + 0.5 * h, tmp, &mut k[2]);
    for i in 0..dim {
        tmp[i] = y[i] + h * k[2][i];
    }
    rhs(r + h, tmp, &mut k[3]);
    for i in 0..dim {
        y[i] += h / 6.0 * (k[0][i] + 2.0 * k[1][i] + 2.0 * k[2][i] + k[3][i]);
    }
}

fn run<F: Fn(f64, &[f64], &mut [f64])>(
    rhs: &F,
    y0: &[f64],
    r0: f64,
    h: f64,
    steps: usize,
    keep_every: usize,
) -> Result<Vec<f64>> {
    let dim = y0.len();
    let mut y = y0.to_vec();
    let mut k = [vec![0.0; dim], vec![0.0; dim], vec![0.0; dim], vec![0.0; dim]];
    let mut tmp = vec![0.0; dim];
    let mut out = Vec::with_capacity((steps / keep_every + 1) * dim);
    out.extend_from_slice(&y);
    for s in 0..steps {
        let r = r0 + s as f64 * h;
        rk4_step(rhs, r, h, &mut y, &mut k, &mut tmp);
        if y.iter().any(|v| !v.is_finite() || v.abs() > OVERFLOW_GUARD) {
            return Err(Error::Divergence(format!(
                "trajectory exceeded overflow guard near r = {:e}",
                r + h
            )));
        }
        if (s + 1) % keep_every == 0 {
            out.extend_from_slice(&y);
        }
    }
    Ok(out)
}

/// Integrates `y' = rhs(r, y)` over `span` with the classical 4th-order
/// Runge-Kutta scheme.
///
/// The step is adjusted down so that the span is an integer number of steps.
/// Identical inputs produce bit-identical trajectories.
pub fn solve_ivp<F: Fn(f64, &[f64], &mut [f64])>(
    rhs: F,
    y0: &[f64],
    span: (f64, f64),
    h: f64,
) -> Result<Trajectory> {
    let (r0, r1) = span;
    if !(h > 0.0) || !r0.is_finite() || !r1.is_finite() || r1 <= r0 {
        return Err(Error::Domain(format!(
            "invalid span/step: [{r0:e}, {r1:e}] with h = {h:e}"
        )));
    }
    if y0.is_empty() {
        return Err(Error::Domain("empty initial state".into()));
    }
    let steps = ((r1 - r0) / h).ceil().max(1.0) as usize;
    let h = (r1 - r0) / steps as f64;
    let coarse = run(&rhs, y0, r0, h, steps, 1)?;
    let fine = run(&rhs, y0, r0, 0.5 * h, 2 * steps, 2)?;
    let dim = y0.len();
    let mut err: f64 = 0.0;
    for (a, b) in coarse.iter().zip(fine.iter()) {
        err = err.max((a - b).abs());
    }
    Ok(Trajectory {
        r0,
        h,
        dim,
        data: fine,
        error_estimate: err / 15.0,
    })
}
