//! Radial scalar profiles with two derivatives.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

type Scalar = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A smooth scalar function of the radius together with its first two
/// derivatives, valid on `[0, r_max]`.
///
/// Profiles are cheap to clone and safe to share across threads.
#[derive(Clone)]
pub struct RadialProfile {
    value: Scalar,
    deriv1: Scalar,
    deriv2: Scalar,
    r_max: f64,
}

impl core::fmt::Debug for RadialProfile {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "RadialProfile {{ r_max: {} }}", self.r_max)
    }
}

/// Evaluates a polynomial and its first two derivatives by Horner's rule.
fn polyval(coeffs: &[f64], x: f64) -> (f64, f64, f64) {
    let (mut p, mut dp, mut ddp) = (0.0, 0.0, 0.0);
    for &c in coeffs.iter().rev() {
        ddp = ddp * x + 2.0 * dp;
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp, ddp)
}

impl RadialProfile {
    pub fn from_fns(
        value: impl Fn(f64) -> f64 + Send + Sync + 'static,
        deriv1: impl Fn(f64) -> f64 + Send + Sync + 'static,
        deriv2: impl Fn(f64) -> f64 + Send + Sync + 'static,
        r_max: f64,
    ) -> Self {
        Self {
            value: Arc::new(value),
            deriv1: Arc::new(deriv1),
            deriv2: Arc::new(deriv2),
            r_max,
        }
    }

    pub fn constant(c: f64, r_max: f64) -> Self {
        Self::from_fns(move |_| c, |_| 0.0, |_| 0.0, r_max)
    }

    /// Polynomial `sum_k coeffs[k] r^k`.
    pub fn polynomial(coeffs: Vec<f64>, r_max: f64) -> Self {
        let c1 = coeffs.clone();
        let c2 = coeffs.clone();
        Self::from_fns(
            move |r| polyval(&coeffs, r).0,
            move |r| polyval(&c1, r).1,
            move |r| polyval(&c2, r).2,
            r_max,
        )
    }

    /// Rational function `num(r) / den(r)`; the denominator must not vanish
    /// on `[0, r_max]` (checked on a coarse scan).
    pub fn rational(num: Vec<f64>, den: Vec<f64>, r_max: f64) -> Result<Self> {
        for k in 0..=1024 {
            let r = r_max * k as f64 / 1024.0;
            let d = polyval(&den, r).0;
            if !d.is_finite() || d.abs() < 1e-12 {
                return Err(Error::Domain(format!(
                    "rational profile denominator vanishes near r = {r:e}"
                )));
            }
        }
        let eval = move |num: &[f64], den: &[f64], r: f64| -> (f64, f64, f64) {
            let (p, dp, ddp) = polyval(num, r);
            let (q, dq, ddq) = polyval(den, r);
            let v = p / q;
            let d1 = (dp - v * dq) / q;
            let d2 = (ddp - v * ddq - 2.0 * d1 * dq) / q;
            (v, d1, d2)
        };
        let (n1, d1) = (num.clone(), den.clone());
        let (n2, d2) = (num.clone(), den.clone());
        Ok(Self::from_fns(
            move |r| eval(&num, &den, r).0,
            move |r| eval(&n1, &d1, r).1,
            move |r| eval(&n2, &d2, r).2,
            r_max,
        ))
    }

    /// Cubic-spline interpolant through `(rs, vals)` with a clamped zero
    /// slope at the left end (radial smoothness at the pole) and a natural
    /// right end. Knots must start at 0 and increase strictly.
    pub fn cubic_spline(rs: &[f64], vals: &[f64]) -> Result<Self> {
        let n = rs.len();
        if n < 3 || vals.len() != n {
            return Err(Error::Domain("spline needs >= 3 matching knots".into()));
        }
        if rs[0].abs() > 1e-12 {
            return Err(Error::Domain("spline knots must start at r = 0".into()));
        }
        for w in rs.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::Domain("spline knots must increase strictly".into()));
            }
        }
        if vals.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("spline values must be finite".into()));
        }
        // Solve for second derivatives M_i: clamped left (s'(0) = 0), natural right.
        let mut diag = vec![0.0; n];
        let mut upper = vec![0.0; n];
        let mut lower = vec![0.0; n];
        let mut rhs = vec![0.0; n];
        let h0 = rs[1] - rs[0];
        diag[0] = 2.0 * h0;
        upper[0] = h0;
        rhs[0] = 6.0 * ((vals[1] - vals[0]) / h0 - 0.0);
        for i in 1..n - 1 {
            let hl = rs[i] - rs[i - 1];
            let hr = rs[i + 1] - rs[i];
            lower[i] = hl;
            diag[i] = 2.0 * (hl + hr);
            upper[i] = hr;
            rhs[i] = 6.0 * ((vals[i + 1] - vals[i]) / hr - (vals[i] - vals[i - 1]) / hl);
        }
        diag[n - 1] = 1.0;
        // Thomas algorithm
        for i in 1..n {
            let w = lower[i] / diag[i - 1];
            diag[i] -= w * upper[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        let mut m = vec![0.0; n];
        m[n - 1] = rhs[n - 1] / diag[n - 1];
        for i in (0..n - 1).rev() {
            m[i] = (rhs[i] - upper[i] * m[i + 1]) / diag[i];
        }

        let knots: Arc<(Vec<f64>, Vec<f64>, Vec<f64>)> =
            Arc::new((rs.to_vec(), vals.to_vec(), m));
        let locate = |rs: &[f64], r: f64| -> usize {
            match rs.binary_search_by(|x| x.partial_cmp(&r).unwrap()) {
                Ok(i) => i.min(rs.len() - 2),
                Err(i) => i.saturating_sub(1).min(rs.len() - 2),
            }
        };
        let r_max = rs[n - 1];
        let k0 = knots.clone();
        let k1 = knots.clone();
        let k2 = knots;
        Ok(Self::from_fns(
            move |r| {
                let (rs, vals, m) = &*k0;
                let r = r.max(rs[0]).min(rs[rs.len() - 1]);
                let i = locate(rs, r);
                let h = rs[i + 1] - rs[i];
                let a = (rs[i + 1] - r) / h;
                let b = (r - rs[i]) / h;
                a * vals[i]
                    + b * vals[i + 1]
                    + ((a * a * a - a) * m[i] + (b * b * b - b) * m[i + 1]) * h * h / 6.0
            },
            move |r| {
                let (rs, vals, m) = &*k1;
                let r = r.max(rs[0]).min(rs[rs.len() - 1]);
                let i = locate(rs, r);
                let h = rs[i + 1] - rs[i];
                let a = (rs[i + 1] - r) / h;
                let b = (r - rs[i]) / h;
                (vals[i + 1] - vals[i]) / h
                    + ((1.0 - 3.0 * a * a) * m[i] + (3.0 * b * b - 1.0) * m[i + 1]) * h / 6.0
            },
            move |r| {
                let (rs, _, m) = &*k2;
                let r = r.max(rs[0]).min(rs[rs.len() - 1]);
                let i = locate(rs, r);
                let h = rs[i + 1] - rs[i];
                let a = (rs[i + 1] - r) / h;
                let b = (r - rs[i]) / h;
                a * m[i] + b * m[i + 1]
            },
            r_max,
        ))
    }

    pub fn value(&self, r: f64) -> f64 {
        (self.value)(r)
    }

    pub fn deriv1(&self, r: f64) -> f64 {
        (self.deriv1)(r)
    }

    pub fn deriv2(&self, r: f64) -> f64 {
        (self.deriv2)(r)
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    /// Largest relative mismatch between the stored derivatives and central
    /// finite differences of `value` at step `1e-4` over `samples` points of
    /// `[lo, hi]`.
    ///
    /// The rounding of the sampled values alone injects up to about
    /// `4 eps |f| / step` into the first difference and `8 eps |f| / step^2`
    /// into the second; that provable noise floor is subtracted before the
    /// mismatch is normalized, so the check measures derivative correctness
    /// rather than cancellation at large |f|.
    pub fn finite_difference_mismatch(&self, lo: f64, hi: f64, samples: usize) -> f64 {
        let step = 1e-4;
        let mut worst: f64 = 0.0;
        for k in 0..samples {
            let r = lo + (hi - lo) * k as f64 / (samples.max(2) - 1) as f64;
            let scale = f64::EPSILON * self.value(r).abs();
            let fd1 = (self.value(r + step) - self.value(r - step)) / (2.0 * step);
            let fd2 =
                (self.value(r + step) - 2.0 * self.value(r) + self.value(r - step)) / (step * step);
            let e1 = ((self.deriv1(r) - fd1).abs() - 4.0 * scale / step).max(0.0)
                / (1.0 + fd1.abs());
            let e2 = ((self.deriv2(r) - fd2).abs() - 8.0 * scale / (step * step)).max(0.0)
                / (1.0 + fd2.abs());
            worst = worst.max(e1).max(e2);
        }
        worst
    }
}
