//! The twelve lamination parameters of a step-function layup.
//!
//! Every parameter has the form `w * ∫ f(theta(z)) z^j dz` over `[-1, 1]`
//! with `f` one of `cos 2θ, cos 4θ, sin 2θ, sin 4θ` and `(j, w)` one of
//! `(0, 1/2)`, `(1, 1)`, `(2, 3/2)`. For a step function the integral
//! collapses to a finite sum of ply moments, so the exact value needs no
//! quadrature.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laminate::{locate, MomentTriple, StepLaminate};

/// Normalizing weights of the in-plane, coupling and bending groups.
pub const GROUP_WEIGHTS: [f64; 3] = [0.5, 1.0, 1.5];

/// In-plane (`xi_a`), coupling (`xi_b`) and bending (`xi_d`) parameters,
/// each ordered `[cos 2θ, cos 4θ, sin 2θ, sin 4θ]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct LamParams {
    pub xi_a: [f64; 4],
    pub xi_b: [f64; 4],
    pub xi_d: [f64; 4],
}

impl LamParams {
    /// Flattened as `[xi_a.., xi_b.., xi_d..]`.
    pub fn to_array(&self) -> [f64; 12] {
        let mut out = [0.0; 12];
        out[..4].copy_from_slice(&self.xi_a);
        out[4..8].copy_from_slice(&self.xi_b);
        out[8..].copy_from_slice(&self.xi_d);
        out
    }

    pub fn from_array(values: [f64; 12]) -> Self {
        let mut p = Self::default();
        p.xi_a.copy_from_slice(&values[..4]);
        p.xi_b.copy_from_slice(&values[4..8]);
        p.xi_d.copy_from_slice(&values[8..]);
        p
    }

    /// `(1 - alpha) * self + alpha * other`.
    pub fn interpolate(&self, other: &LamParams, alpha: f64) -> LamParams {
        let (a, b) = (self.to_array(), other.to_array());
        LamParams::from_array(std::array::from_fn(|k| (1.0 - alpha) * a[k] + alpha * b[k]))
    }

    pub fn abs_diff(&self, other: &LamParams) -> [f64; 12] {
        let (a, b) = (self.to_array(), other.to_array());
        std::array::from_fn(|k| (a[k] - b[k]).abs())
    }

    pub fn max_abs_diff(&self, other: &LamParams) -> f64 {
        self.abs_diff(other).into_iter().fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.to_array().into_iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Component names in flattened order, e.g. `xiA1` .. `xiD4`.
    pub fn component_names() -> [&'static str; 12] {
        [
            "xiA1", "xiA2", "xiA3", "xiA4", "xiB1", "xiB2", "xiB3", "xiB4", "xiD1", "xiD2",
            "xiD3", "xiD4",
        ]
    }
}

fn trig_family(theta: f64) -> [f64; 4] {
    let (s2, c2) = (2.0 * theta).sin_cos();
    let (s4, c4) = (4.0 * theta).sin_cos();
    [c2, c4, s2, s4]
}

/// Unnormalized `∫ f(theta(z)) z^j dz` for `j = 0, 1, 2`, summed ply by ply
/// from exact interval moments. Works for any scalar function of the angle.
pub fn weighted_moments<F>(t: &StepLaminate, f: F) -> [f64; 3]
where
    F: Fn(f64) -> f64,
{
    t.plies().fold([0.0; 3], |acc, (lo, hi, angle)| {
        let m = MomentTriple::of_interval_unchecked(lo, hi);
        let v = f(angle);
        [acc[0] + v * m.m0, acc[1] + v * m.m1, acc[2] + v * m.m2]
    })
}

fn assemble(sums: [[f64; 4]; 3]) -> LamParams {
    let scale = |j: usize| sums[j].map(|s| GROUP_WEIGHTS[j] * s);
    LamParams {
        xi_a: scale(0),
        xi_b: scale(1),
        xi_d: scale(2),
    }
}

/// Exact lamination parameters of `t` (up to floating-point round-off).
pub fn lamination_parameters(t: &StepLaminate) -> LamParams {
    let mut sums = [[0.0; 4]; 3];
    for (lo, hi, angle) in t.plies() {
        let m = MomentTriple::of_interval_unchecked(lo, hi).as_array();
        let f = trig_family(angle);
        for (j, row) in sums.iter_mut().enumerate() {
            for (k, s) in row.iter_mut().enumerate() {
                *s += f[k] * m[j];
            }
        }
    }
    assemble(sums)
}

/// Composite midpoint-rule approximation of the lamination parameters.
///
/// Each ply is sampled on its own (no sample cell straddles a breakpoint)
/// and the angle is looked up from the step function at every sample
/// point. Used only as an independent cross-check of
/// [`lamination_parameters`].
pub fn quadrature_oracle(t: &StepLaminate, samples_per_interval: usize) -> Result<LamParams> {
    if samples_per_interval == 0 {
        return Err(Error::InvalidArgument(
            "samples_per_interval must be at least 1".into(),
        ));
    }
    let bps = t.breakpoints();
    let mut sums = [[0.0; 4]; 3];
    let mut cached: Option<(f64, [f64; 4])> = None;

    for w in bps.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let h = (hi - lo) / samples_per_interval as f64;
        for k in 0..samples_per_interval {
            let z = lo + (k as f64 + 0.5) * h;
            let theta = t.angles()[locate(bps, z)];
            let f = match cached {
                Some((c, f)) if c == theta => f,
                _ => {
                    let f = trig_family(theta);
                    cached = Some((theta, f));
                    f
                }
            };
            let weights = [h, z * h, z * z * h];
            for (j, row) in sums.iter_mut().enumerate() {
                for (k, s) in row.iter_mut().enumerate() {
                    *s += f[k] * weights[j];
                }
            }
        }
    }
    Ok(assemble(sums))
}
