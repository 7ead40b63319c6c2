//! Constructive convex combination of two step-function layups.
//!
//! On every interval of the common refinement where the two layups
//! disagree, the interval is split into two equal-length subintervals `E`
//! carrying the first angle, chosen so that the zeroth, first and second
//! moments of `E` are exactly the prescribed fraction of the interval's
//! moments. The remaining three pieces carry the second angle. Since every
//! lamination parameter is a combination of these three moments, the
//! resulting layup reproduces the convex combination of the parameters
//! exactly.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lamparams::{lamination_parameters, LamParams};
use crate::laminate::{refine, MomentTriple, StepLaminate, MERGE_TOLERANCE};

/// Default pass threshold for [`verify_combination`].
pub const COMBINATION_TOLERANCE: f64 = 1e-12;

/// Plies whose angles differ by less than this are not split.
pub const EQUAL_ANGLE_TOLERANCE: f64 = 1e-12;

/// Moment-matching split of `(lo, hi)`:
/// `lo < a < b < c < d < hi`, `b - a = d - c = pair_length`, and the
/// moments of `E = (a, b) ∪ (c, d)` equal `alpha` times those of `(lo, hi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntervalSplit {
    pub lo: f64,
    pub hi: f64,
    pub alpha: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    /// Common length of the two subintervals of `E`.
    pub pair_length: f64,
    /// Distance between the two subinterval centres.
    pub offset: f64,
}

impl IntervalSplit {
    /// Centres of `(a, b)` and `(c, d)`.
    pub fn centers(&self) -> (f64, f64) {
        let mid = self.lo + self.hi;
        ((mid - self.offset) / 2.0, (mid + self.offset) / 2.0)
    }

    /// `(start, end, in_e)` for the five pieces of `(lo, hi)`, left to right.
    pub fn pieces(&self) -> [(f64, f64, bool); 5] {
        [
            (self.lo, self.a, false),
            (self.a, self.b, true),
            (self.b, self.c, false),
            (self.c, self.d, true),
            (self.d, self.hi, false),
        ]
    }
}

/// Closed-form moment-matching split of `(lo, hi)` with weight `alpha`.
///
/// The pair length is `alpha (hi - lo) / 2`. The centre offset solves
/// `(Y - X)^2 = (e^2 / 3)(4 / alpha^2 - 1)`; substituting the pair length
/// gives `((hi - lo) / 2) sqrt((4 - alpha^2) / 3)`, which stays finite as
/// `alpha -> 0`.
pub fn moment_split(lo: f64, hi: f64, alpha: f64) -> Result<IntervalSplit> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
        return Err(Error::DegenerateInterval { lo, hi });
    }
    let half = (hi - lo) / 2.0;
    let pair_length = alpha * half;
    let offset = half * ((4.0 - alpha * alpha) / 3.0).sqrt();
    let x = (lo + hi - offset) / 2.0;
    let y = (lo + hi + offset) / 2.0;
    let e2 = pair_length / 2.0;
    Ok(IntervalSplit {
        lo,
        hi,
        alpha,
        a: x - e2,
        b: x + e2,
        c: y - e2,
        d: y + e2,
        pair_length,
        offset,
    })
}

/// Moments of `E = (a, b) ∪ (c, d)` and of its complement in `(lo, hi)`.
pub fn split_moments(s: &IntervalSplit) -> (MomentTriple, MomentTriple) {
    let m = MomentTriple::of_interval_unchecked;
    let inside = m(s.a, s.b) + m(s.c, s.d);
    let outside = m(s.lo, s.a) + m(s.b, s.c) + m(s.d, s.hi);
    (inside, outside)
}

/// Accumulates consecutive pieces into a partition, dropping pieces
/// narrower than the merge tolerance (their neighbour absorbs them).
struct PieceBuilder {
    breakpoints: Vec<f64>,
    angles: Vec<f64>,
}

impl PieceBuilder {
    fn new(capacity: usize) -> Self {
        let mut breakpoints = Vec::with_capacity(capacity + 1);
        breakpoints.push(-1.0);
        Self {
            breakpoints,
            angles: Vec::with_capacity(capacity),
        }
    }

    fn push(&mut self, end: f64, angle: f64) {
        let start = *self.breakpoints.last().expect("nonempty");
        if end - start >= MERGE_TOLERANCE {
            self.breakpoints.push(end);
            self.angles.push(angle);
        }
    }

    fn finish(mut self) -> Result<StepLaminate> {
        // A dropped sliver at the top leaves the last breakpoint just short of 1.
        *self.breakpoints.last_mut().expect("nonempty") = 1.0;
        StepLaminate::new(self.breakpoints, self.angles)
    }
}

/// Builds a step-function layup whose lamination parameters are
/// `(1 - alpha) ξ[t1] + alpha ξ[t2]`.
///
/// At `alpha = 0` and `alpha = 1` the respective input is returned. The
/// output has at most five plies per interval of the common refinement and
/// is not simplified.
pub fn convex_combine(t1: &StepLaminate, t2: &StepLaminate, alpha: f64) -> Result<StepLaminate> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    if alpha == 0.0 {
        return Ok(t1.clone());
    }
    if alpha == 1.0 {
        return Ok(t2.clone());
    }

    let pair = refine(t1, t2);
    let mut out = PieceBuilder::new(5 * pair.interval_count());
    for (i, w) in pair.breakpoints.windows(2).enumerate() {
        let (theta1, theta2) = (pair.angles1[i], pair.angles2[i]);
        if (theta1 - theta2).abs() < EQUAL_ANGLE_TOLERANCE {
            out.push(w[1], theta1);
            continue;
        }
        // E carries theta1 and takes the measure fraction 1 - alpha.
        let split = moment_split(w[0], w[1], 1.0 - alpha)?;
        for (_, end, in_e) in split.pieces() {
            out.push(end, if in_e { theta1 } else { theta2 });
        }
    }
    out.finish()
}

/// Componentwise residuals of a claimed convex combination.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CombinationReport {
    pub alpha: f64,
    pub target: LamParams,
    pub achieved: LamParams,
    pub residuals: [f64; 12],
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Checks `ξ[result] = (1 - alpha) ξ[t1] + alpha ξ[t2]` at
/// [`COMBINATION_TOLERANCE`].
pub fn verify_combination(
    t1: &StepLaminate,
    t2: &StepLaminate,
    alpha: f64,
    result: &StepLaminate,
) -> CombinationReport {
    verify_combination_with_tolerance(t1, t2, alpha, result, COMBINATION_TOLERANCE)
}

pub fn verify_combination_with_tolerance(
    t1: &StepLaminate,
    t2: &StepLaminate,
    alpha: f64,
    result: &StepLaminate,
    tolerance: f64,
) -> CombinationReport {
    let target = lamination_parameters(t1).interpolate(&lamination_parameters(t2), alpha);
    let achieved = lamination_parameters(result);
    let residuals = achieved.abs_diff(&target);
    let max_residual = residuals.iter().copied().fold(0.0, f64::max);
    CombinationReport {
        alpha,
        target,
        achieved,
        residuals,
        max_residual,
        tolerance,
        pass: max_residual <= tolerance,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laminate::moments;
    use crate::lamparams::{quadrature_oracle, weighted_moments};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    // (sqrt(5) + 1) / 4 and (sqrt(5) - 1) / 4
    const GOLDEN_OUTER: f64 = 0.809_016_994_374_947_5;
    const GOLDEN_INNER: f64 = 0.309_016_994_374_947_45;

    #[test]
    fn symmetric_half_split() {
        let s = moment_split(-1.0, 1.0, 0.5).unwrap();
        assert_eq!(s.pair_length, 0.5);
        assert!((s.offset - 5f64.sqrt() / 2.0).abs() < 1e-15);
        let expected = [-GOLDEN_OUTER, -GOLDEN_INNER, GOLDEN_INNER, GOLDEN_OUTER];
        for (got, want) in [s.a, s.b, s.c, s.d].iter().zip(expected) {
            assert!((got - want).abs() < 1e-15, "{got} vs {want}");
        }

        let (inside, outside) = split_moments(&s);
        let whole = moments(-1.0, 1.0).unwrap();
        for j in 0..3 {
            assert!((inside.as_array()[j] - 0.5 * whole.as_array()[j]).abs() < 1e-15);
        }
        assert!((inside.m0 - 1.0).abs() < 1e-15);
        assert!(inside.m1.abs() < 1e-15);
        assert!((inside.m2 - 1.0 / 3.0).abs() < 1e-15);
        assert!((outside.m0 - 1.0).abs() < 1e-15);
        assert!(outside.m1.abs() < 1e-15);
        assert!((outside.m2 - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn split_is_affine_equivariant() {
        let s = moment_split(0.0, 1.0, 0.5).unwrap();
        let expected = [
            (1.0 - GOLDEN_OUTER) / 2.0,
            (1.0 - GOLDEN_INNER) / 2.0,
            (1.0 + GOLDEN_INNER) / 2.0,
            (1.0 + GOLDEN_OUTER) / 2.0,
        ];
        for (got, want) in [s.a, s.b, s.c, s.d].iter().zip(expected) {
            assert!((got - want).abs() < 1e-15, "{got} vs {want}");
        }
        assert!((expected[0] - 0.09549).abs() < 1e-5);
        assert!((expected[3] - 0.90451).abs() < 1e-5);

        let (inside, _) = split_moments(&s);
        assert!((inside.m0 - 0.5).abs() < 1e-15);
        assert!((inside.m1 - 0.25).abs() < 1e-15);
        assert!((inside.m2 - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn split_fills_the_interval_as_alpha_tends_to_one() {
        let s = moment_split(-1.0, 1.0, 1.0 - 1e-9).unwrap();
        assert!(s.a - s.lo < 1e-8);
        assert!(s.hi - s.d < 1e-8);
        assert!(s.c - s.b < 1e-8);
        assert!(s.lo < s.a && s.a < s.b && s.b < s.c && s.c < s.d && s.d < s.hi);
    }

    #[test]
    fn stable_offset_equals_textbook_form() {
        for alpha in [0.01, 0.2, 0.5, 0.9, 0.999] {
            let s = moment_split(-0.3, 0.7, alpha).unwrap();
            let e = s.pair_length;
            let textbook = e / 3f64.sqrt() * (4.0 / (alpha * alpha) - 1.0).sqrt();
            assert!((s.offset - textbook).abs() < 1e-14);
        }
    }

    #[test]
    fn split_rejects_bad_input() {
        for alpha in [0.0, 1.0, -0.1, 1.5, f64::NAN] {
            assert!(matches!(
                moment_split(-1.0, 1.0, alpha),
                Err(Error::AlphaOutOfRange(_))
            ));
        }
        assert!(matches!(
            moment_split(1.0, 1.0, 0.5),
            Err(Error::DegenerateInterval { .. })
        ));
    }

    #[test]
    fn combine_endpoints_return_inputs() {
        let t1 = StepLaminate::new(vec![-1.0, 0.3, 1.0], vec![0.1, 0.7]).unwrap();
        let t2 = StepLaminate::constant(1.2).unwrap();
        assert_eq!(convex_combine(&t1, &t2, 0.0).unwrap(), t1);
        assert_eq!(convex_combine(&t1, &t2, 1.0).unwrap(), t2);
        assert!(matches!(
            convex_combine(&t1, &t2, 1.01),
            Err(Error::AlphaOutOfRange(_))
        ));
    }

    #[test]
    fn combine_zero_and_ninety_at_half() {
        let t1 = StepLaminate::constant(0.0).unwrap();
        let t2 = StepLaminate::constant(FRAC_PI_2).unwrap();
        let t = convex_combine(&t1, &t2, 0.5).unwrap();
        let p = lamination_parameters(&t);
        let expected = [0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0];
        for (got, want) in p.to_array().iter().zip(expected) {
            assert!((got - want).abs() < 1e-13);
        }
        let q = quadrature_oracle(&t, 100_000).unwrap();
        assert!(q.max_abs_diff(&p) < 1e-9);

        let report = verify_combination(&t1, &t2, 0.5, &t);
        assert!(report.pass);
        assert!(report.max_residual <= 1e-13);
    }

    #[test]
    fn combine_orientation_puts_one_minus_alpha_on_first() {
        let t1 = StepLaminate::constant(0.0).unwrap();
        let t2 = StepLaminate::constant(FRAC_PI_4).unwrap();
        let t = convex_combine(&t1, &t2, 0.25).unwrap();
        let p = lamination_parameters(&t);
        let expected = [0.75, 0.5, 0.25, 0.0, 0.0, 0.0, 0.0, 0.0, 0.75, 0.5, 0.25, 0.0];
        for (got, want) in p.to_array().iter().zip(expected) {
            assert!((got - want).abs() < 1e-13, "{got} vs {want}");
        }
        // measure of the 0-degree set is 2 * 0.75
        let zero_measure: f64 = t
            .plies()
            .filter(|p| p.2 == 0.0)
            .map(|(lo, hi, _)| hi - lo)
            .sum();
        assert!((zero_measure - 1.5).abs() < 1e-15);
    }

    #[test]
    fn combine_skips_equal_angles() {
        let t1 = StepLaminate::new(vec![-1.0, 0.0, 1.0], vec![0.3, 0.5]).unwrap();
        let t2 = StepLaminate::new(vec![-1.0, 0.0, 1.0], vec![0.3, 0.9]).unwrap();
        let t = convex_combine(&t1, &t2, 0.4).unwrap();
        assert_eq!(t.ply_count(), 1 + 5);
        assert_eq!(t.breakpoints()[1], 0.0);
    }

    #[test]
    fn negative_control_fails() {
        let t1 = StepLaminate::constant(0.0).unwrap();
        let t2 = StepLaminate::constant(FRAC_PI_2).unwrap();
        let report = verify_combination(&t1, &t2, 0.5, &t1);
        assert!(!report.pass);
        assert!(report.max_residual > 0.5);
    }

    #[test]
    fn arbitrary_angle_functions_are_matched() {
        let t1 = StepLaminate::new(vec![-1.0, -0.4, 0.2, 1.0], vec![0.3, -1.1, 2.0]).unwrap();
        let t2 = StepLaminate::new(vec![-1.0, 0.5, 1.0], vec![1.4, -0.2]).unwrap();
        let alpha = 0.35;
        let t = convex_combine(&t1, &t2, alpha).unwrap();
        let fs: [fn(f64) -> f64; 2] = [|th| th, |th| th * th];
        for f in fs {
            let got = weighted_moments(&t, f);
            let w1 = weighted_moments(&t1, f);
            let w2 = weighted_moments(&t2, f);
            for j in 0..3 {
                let want = (1.0 - alpha) * w1[j] + alpha * w2[j];
                assert!((got[j] - want).abs() < 1e-12, "j={j}: {} vs {want}", got[j]);
            }
        }
    }

    #[test]
    fn extreme_alpha_drops_slivers() {
        let t1 = StepLaminate::constant(0.0).unwrap();
        let t2 = StepLaminate::constant(1.0).unwrap();
        for alpha in [1e-14, 1.0 - 1e-14] {
            let t = convex_combine(&t1, &t2, alpha).unwrap();
            assert!(t.plies().all(|(lo, hi, _)| hi - lo >= MERGE_TOLERANCE));
            assert!(verify_combination(&t1, &t2, alpha, &t).max_residual < 1e-11);
        }
    }
}
