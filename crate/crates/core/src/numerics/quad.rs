//! Adaptive and composite Simpson quadrature.

use alloc::format;
use alloc::vec::Vec;
#[allow(unused_imports)] // shadowed by std's inherent methods when a test build links std
use num_traits::Float;

use crate::error::{Error, Result};

/// Default mixed absolute/relative tolerance for all integrals.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Subdivision cap for the adaptive scheme, counted in leaf panels.
pub const MAX_PANELS: u64 = 1 << 20;

/// Beyond this depth an interval has shrunk below f64 resolution.
const MAX_DEPTH: u32 = 52;

fn check_finite(x: f64, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Domain(format!("integrand not finite at {x:e}")))
    }
}

/// One Simpson panel over `[a, b]` given the endpoint values; returns the
/// panel value together with the midpoint and its integrand value.
fn simpson_panel<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> Result<(f64, f64, f64)> {
    let c = 0.5 * (a + b);
    let fc = check_finite(c, f(c))?;
    Ok(((b - a) / 6.0 * (fa + 4.0 * fc + fb), c, fc))
}

struct Adapt<'a, F> {
    f: &'a F,
    panels: u64,
}

impl<F: Fn(f64) -> f64> Adapt<'_, F> {
    fn run(
        &mut self,
        a: f64,
        fa: f64,
        c: f64,
        fc: f64,
        b: f64,
        fb: f64,
        whole: f64,
        eps: f64,
        depth: u32,
    ) -> Result<f64> {
        let (left, lm, flm) = simpson_panel(self.f, a, fa, c, fc)?;
        let (right, rm, frm) = simpson_panel(self.f, c, fc, b, fb)?;
        let delta = left + right - whole;
        if delta.abs() <= 15.0 * eps {
            self.panels += 2;
            return Ok(left + right + delta / 15.0);
        }
        if depth >= MAX_DEPTH || self.panels >= MAX_PANELS {
            return Err(Error::Convergence(format!(
                "adaptive Simpson exceeded subdivision limit near [{a:e}, {b:e}]"
            )));
        }
        let half = 0.5 * eps;
        let l = self.run(a, fa, lm, flm, c, fc, left, half, depth + 1)?;
        let r = self.run(c, fc, rm, frm, b, fb, right, half, depth + 1)?;
        Ok(l + r)
    }
}

/// Number of equal base panels the interval is split into before the
/// adaptive refinement; a plain single-panel start can accept a spuriously
/// small value when the integrand is localized well inside the interval.
const BASE_PANELS: u32 = 16;

/// Adaptive composite Simpson integral of `f` over `[a, b]`.
///
/// The estimated absolute error is at most `tol * (1 + |result|)`; the scale
/// factor comes from a coarse composite pre-scan.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if !a.is_finite() || !b.is_finite() || a > b {
        return Err(Error::Domain(format!("invalid interval [{a:e}, {b:e}]")));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol:e}")));
    }
    if a == b {
        return Ok(0.0);
    }
    let scale = composite_simpson(&f, a, b, BASE_PANELS)?;
    let eps = tol * (1.0 + scale.abs()) / BASE_PANELS as f64;
    let mut adapt = Adapt { f: &f, panels: 0 };
    let mut total = 0.0;
    let h = (b - a) / BASE_PANELS as f64;
    let mut left = a;
    let mut f_left = check_finite(a, f(a))?;
    for k in 1..=BASE_PANELS {
        let right = if k == BASE_PANELS { b } else { a + k as f64 * h };
        let f_right = check_finite(right, f(right))?;
        let (whole, c, fc) = simpson_panel(&f, left, f_left, right, f_right)?;
        total += adapt.run(left, f_left, c, fc, right, f_right, whole, eps, 0)?;
        left = right;
        f_left = f_right;
    }
    Ok(total)
}

/// Composite Simpson rule with a fixed number of panels.
pub fn composite_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: u32) -> Result<f64> {
    if panels == 0 {
        return Err(Error::Domain("composite Simpson needs at least one panel".into()));
    }
    if a == b {
        return Ok(0.0);
    }
    let n = panels as usize;
    let h = (b - a) / n as f64;
    let mut sum = check_finite(a, f(a))? + check_finite(b, f(b))?;
    for i in 0..n {
        let mid = a + (i as f64 + 0.5) * h;
        sum += 4.0 * check_finite(mid, f(mid))?;
        if i > 0 {
            let x = a + i as f64 * h;
            sum += 2.0 * check_finite(x, f(x))?;
        }
    }
    Ok(sum * h / 6.0)
}

/// Radial average `(1/t) * integral of p over [0, t]`, with the continuity
/// value `p(0)` at `t = 0`.
pub fn average_integral<F: Fn(f64) -> f64>(p: F, t: f64, tol: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("average requires t >= 0, got {t:e}")));
    }
    if t == 0.0 {
        return check_finite(0.0, p(0.0));
    }
    Ok(integrate(p, 0.0, t, tol)? / t)
}

/// Cumulative antiderivative `H(t) = integral of g over [0, t]` tabulated on a
/// uniform mesh with per-step Simpson increments and evaluated by cubic
/// Hermite interpolation (the tabulated slopes are the exact integrand
/// values, so the interpolant stays consistent with `H' = g`).
pub struct CumulativeSimpson {
    h: f64,
    upper: f64,
    cum: Vec<f64>,
    slope: Vec<f64>,
}

impl CumulativeSimpson {
    pub fn build<F: Fn(f64) -> f64>(g: F, upper: f64, steps: usize) -> Result<Self> {
        if !(upper > 0.0) || steps < 2 {
            return Err(Error::Domain(format!(
                "cumulative integral needs upper > 0 and steps >= 2, got {upper:e}, {steps}"
            )));
        }
        let h = upper / steps as f64;
        let mut cum = Vec::with_capacity(steps + 1);
        let mut slope = Vec::with_capacity(steps + 1);
        let mut acc = 0.0;
        let mut prev = check_finite(0.0, g(0.0))?;
        cum.push(0.0);
        slope.push(prev);
        for i in 0..steps {
            let mid = (i as f64 + 0.5) * h;
            let right = (i + 1) as f64 * h;
            let gm = check_finite(mid, g(mid))?;
            let gr = check_finite(right, g(right))?;
            acc += h / 6.0 * (prev + 4.0 * gm + gr);
            cum.push(acc);
            slope.push(gr);
            prev = gr;
        }
        Ok(Self { h, upper, cum, slope })
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    /// `H(t)` for `t` clamped to `[0, upper]`.
    pub fn eval(&self, t: f64) -> f64 {
        let t = t.max(0.0).min(self.upper);
        let cells = self.cum.len() - 1;
        let mut i = (t / self.h).floor() as usize;
        if i >= cells {
            i = cells - 1;
        }
        let theta = (t - i as f64 * self.h) / self.h;
        let (c0, c1) = (self.cum[i], self.cum[i + 1]);
        let (g0, g1) = (self.slope[i], self.slope[i + 1]);
        let t2 = theta * theta;
        let t3 = t2 * theta;
        (2.0 * t3 - 3.0 * t2 + 1.0) * c0
            + (t3 - 2.0 * t2 + theta) * self.h * g0
            + (-2.0 * t3 + 3.0 * t2) * c1
            + (t3 - t2) * self.h * g1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // integral of sinh^2 over [0,1] = (sinh(2) - 2)/4
    const SINH_SQ_01: f64 = 0.406_715_101_961_754_7;

    #[test]
    fn polynomial_is_exact() {
        let v = integrate(|s| s * s, 0.0, 1.0, DEFAULT_TOL).unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn sinh_squared_matches_antiderivative() {
        let v = integrate(|s| s.sinh() * s.sinh(), 0.0, 1.0, DEFAULT_TOL).unwrap();
        assert!((v - SINH_SQ_01).abs() < 1e-11, "got {v}");
    }

    #[test]
    fn zero_integrand() {
        assert_eq!(integrate(|_| 0.0, 0.0, 1.0, DEFAULT_TOL).unwrap(), 0.0);
    }

    #[test]
    fn reversed_interval_is_domain_error() {
        assert!(matches!(integrate(|s| s, 1.0, 0.0, DEFAULT_TOL), Err(Error::Domain(_))));
    }

    #[test]
    fn non_finite_integrand_is_domain_error() {
        let r = integrate(|s| 1.0 / (s - 0.5), 0.0, 1.0, DEFAULT_TOL);
        assert!(matches!(r, Err(Error::Domain(_)) | Err(Error::Convergence(_))));
        let r = integrate(|_| f64::NAN, 0.0, 1.0, DEFAULT_TOL);
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn composite_simpson_order_four() {
        // halving the mesh must cut the error by >= 12 on a smooth
        // non-polynomial integrand (nominal 16)
        let truth = 0.746_824_132_812_427; // integral of exp(-s^2) over [0,1]
        let coarse = (composite_simpson(|s| (-s * s).exp(), 0.0, 1.0, 4).unwrap() - truth).abs();
        let fine = (composite_simpson(|s| (-s * s).exp(), 0.0, 1.0, 8).unwrap() - truth).abs();
        assert!(coarse / fine >= 12.0, "ratio {}", coarse / fine);
    }

    #[test]
    fn average_of_constant_and_linear() {
        assert!((average_integral(|_| 7.0, 3.0, DEFAULT_TOL).unwrap() - 7.0).abs() < 1e-12);
        assert!((average_integral(|s| s, 2.0, DEFAULT_TOL).unwrap() - 1.0).abs() < 1e-12);
        // continuity limit at t = 0
        assert_eq!(average_integral(|s| s * s, 0.0, DEFAULT_TOL).unwrap(), 0.0);
    }

    #[test]
    fn cumulative_matches_adaptive() {
        let cum = CumulativeSimpson::build(|s| s.sinh() * s.sinh(), 4.0, 4096).unwrap();
        for &t in &[0.3, 1.0, 1.7, 2.9, 4.0] {
            let direct = integrate(|s| s.sinh() * s.sinh(), 0.0, t, 1e-12).unwrap();
            assert!((cum.eval(t) - direct).abs() <= 1e-10 * (1.0 + direct.abs()), "t={t}");
        }
        assert!((cum.eval(1.0) - SINH_SQ_01).abs() < 1e-11);
    }
}
