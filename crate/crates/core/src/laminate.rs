//! Step-function layups on the normalized thickness coordinate [-1, 1],
//! interval moments, and the common refinement of two layups.

use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

/// Breakpoints closer than this are treated as the same point when
/// partitions are merged.
pub const MERGE_TOLERANCE: f64 = 1e-12;

/// Adjacent plies whose angles differ by less than this (radians) are
/// fused by [`StepLaminate::simplify`].
pub const SIMPLIFY_TOLERANCE: f64 = 1e-12;

/// Integrals of `z^0`, `z^1`, `z^2` over an interval or a union of intervals.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MomentTriple {
    pub m0: f64,
    pub m1: f64,
    pub m2: f64,
}

impl MomentTriple {
    pub const ZERO: MomentTriple = MomentTriple {
        m0: 0.0,
        m1: 0.0,
        m2: 0.0,
    };

    pub fn new(m0: f64, m1: f64, m2: f64) -> Self {
        Self { m0, m1, m2 }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.m0, self.m1, self.m2]
    }

    /// Moments of the interval `(lo, hi)`, with no ordering check.
    pub(crate) fn of_interval_unchecked(lo: f64, hi: f64) -> Self {
        let (lo2, hi2) = (lo * lo, hi * hi);
        Self {
            m0: hi - lo,
            m1: (hi2 - lo2) / 2.0,
            m2: (hi2 * hi - lo2 * lo) / 3.0,
        }
    }
}

impl Add for MomentTriple {
    type Output = MomentTriple;

    fn add(self, rhs: Self) -> Self {
        Self::new(self.m0 + rhs.m0, self.m1 + rhs.m1, self.m2 + rhs.m2)
    }
}

impl Sub for MomentTriple {
    type Output = MomentTriple;

    fn sub(self, rhs: Self) -> Self {
        Self::new(self.m0 - rhs.m0, self.m1 - rhs.m1, self.m2 - rhs.m2)
    }
}

impl Mul<MomentTriple> for f64 {
    type Output = MomentTriple;

    fn mul(self, rhs: MomentTriple) -> MomentTriple {
        MomentTriple::new(self * rhs.m0, self * rhs.m1, self * rhs.m2)
    }
}

/// `(B - A, (B^2 - A^2)/2, (B^3 - A^3)/3)` for the interval `(a, b)`.
pub fn moments(a: f64, b: f64) -> Result<MomentTriple> {
    if !(a.is_finite() && b.is_finite()) || a >= b {
        return Err(Error::DegenerateInterval { lo: a, hi: b });
    }
    Ok(MomentTriple::of_interval_unchecked(a, b))
}

/// A piecewise-constant layup angle `theta(z)` on `[-1, 1]`.
///
/// `angles[i]` (radians) is the value on the open interval
/// `(breakpoints[i], breakpoints[i + 1])`. Values at the breakpoints
/// themselves are left undefined.
#[derive(Debug, Clone, PartialEq)]
pub struct StepLaminate {
    breakpoints: Vec<f64>,
    angles: Vec<f64>,
}

impl StepLaminate {
    pub fn new(breakpoints: Vec<f64>, angles: Vec<f64>) -> Result<Self> {
        let violation = |field, index, reason: &str| Error::InvariantViolation {
            field,
            index,
            reason: reason.to_string(),
        };

        if breakpoints.len() < 2 {
            return Err(violation(
                "breakpoints",
                0,
                "at least two breakpoints are required",
            ));
        }
        if angles.len() != breakpoints.len() - 1 {
            return Err(violation(
                "angles",
                angles.len(),
                &format!(
                    "expected {} angles for {} breakpoints, found {}",
                    breakpoints.len() - 1,
                    breakpoints.len(),
                    angles.len()
                ),
            ));
        }
        if let Some(i) = breakpoints.iter().position(|b| !b.is_finite()) {
            return Err(violation("breakpoints", i, "breakpoint is not finite"));
        }
        if let Some(i) = angles.iter().position(|a| !a.is_finite()) {
            return Err(violation("angles", i, "angle is not finite"));
        }
        if breakpoints[0] != -1.0 {
            return Err(violation("breakpoints", 0, "first breakpoint must be -1"));
        }
        let last = breakpoints.len() - 1;
        if breakpoints[last] != 1.0 {
            return Err(violation("breakpoints", last, "last breakpoint must be 1"));
        }
        if let Some(i) = breakpoints.windows(2).position(|w| w[0] >= w[1]) {
            return Err(violation(
                "breakpoints",
                i + 1,
                "breakpoints must be strictly increasing",
            ));
        }

        Ok(Self {
            breakpoints,
            angles,
        })
    }

    /// Single ply of constant angle over the whole thickness.
    pub fn constant(angle: f64) -> Result<Self> {
        Self::new(vec![-1.0, 1.0], vec![angle])
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn ply_count(&self) -> usize {
        self.angles.len()
    }

    /// Iterator over `(lower, upper, angle)` for every ply.
    pub fn plies(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.breakpoints
            .windows(2)
            .zip(&self.angles)
            .map(|(w, &angle)| (w[0], w[1], angle))
    }

    /// `theta(z)` for `z` strictly inside a ply.
    ///
    /// Evaluating exactly at a breakpoint (including the end points) is an
    /// error.
    pub fn eval(&self, z: f64) -> Result<f64> {
        if !(-1.0..=1.0).contains(&z) {
            return Err(Error::OutOfDomain(z));
        }
        let upper = self.breakpoints.partition_point(|&b| b <= z);
        if self.breakpoints[upper - 1] == z {
            return Err(Error::UndefinedAtBreakpoint { x: z });
        }
        Ok(self.angles[upper - 1])
    }

    /// The layup seen from the other face, `z -> -z`.
    pub fn reversed(&self) -> Self {
        let breakpoints = self.breakpoints.iter().rev().map(|b| -b).collect();
        let angles = self.angles.iter().rev().copied().collect();
        Self {
            breakpoints,
            angles,
        }
    }

    /// Fuses adjacent plies whose angles differ by less than
    /// [`SIMPLIFY_TOLERANCE`]. The fused ply keeps the first angle.
    pub fn simplify(&self) -> Self {
        let mut breakpoints = vec![self.breakpoints[0]];
        let mut angles: Vec<f64> = Vec::with_capacity(self.angles.len());
        for (_, hi, angle) in self.plies() {
            match angles.last() {
                Some(&prev) if (prev - angle).abs() < SIMPLIFY_TOLERANCE => {
                    *breakpoints.last_mut().expect("nonempty") = hi;
                }
                _ => {
                    breakpoints.push(hi);
                    angles.push(angle);
                }
            }
        }
        Self {
            breakpoints,
            angles,
        }
    }
}

/// Index of the interval of `breakpoints` containing `z`. `z` is assumed
/// to lie in `[breakpoints[0], breakpoints[last])`.
pub(crate) fn locate(breakpoints: &[f64], z: f64) -> usize {
    breakpoints
        .partition_point(|&b| b <= z)
        .clamp(1, breakpoints.len() - 1)
        - 1
}

/// Sorted union of several partitions of `[-1, 1]`. Points closer than
/// [`MERGE_TOLERANCE`] collapse onto the smaller one, except that the end
/// points stay exactly `-1` and `1`.
pub(crate) fn merge_partitions(partitions: &[&[f64]]) -> Vec<f64> {
    let mut all: Vec<f64> = partitions.iter().flat_map(|p| p.iter().copied()).collect();
    all.sort_by(f64::total_cmp);

    let mut merged: Vec<f64> = Vec::with_capacity(all.len());
    for p in all {
        match merged.last() {
            Some(&last) if p - last < MERGE_TOLERANCE => {}
            _ => merged.push(p),
        }
    }
    if let Some(last) = merged.last_mut() {
        *last = 1.0;
    }
    merged
}

/// Two layups expressed on a common partition.
#[derive(Debug, Clone, PartialEq)]
pub struct RefinedPair {
    pub breakpoints: Vec<f64>,
    pub angles1: Vec<f64>,
    pub angles2: Vec<f64>,
}

impl RefinedPair {
    pub fn interval_count(&self) -> usize {
        self.angles1.len()
    }

    pub fn first(&self) -> StepLaminate {
        StepLaminate {
            breakpoints: self.breakpoints.clone(),
            angles: self.angles1.clone(),
        }
    }

    pub fn second(&self) -> StepLaminate {
        StepLaminate {
            breakpoints: self.breakpoints.clone(),
            angles: self.angles2.clone(),
        }
    }
}

/// Common refinement: both layups are constant on every interval of the
/// merged breakpoint set.
pub fn refine(t1: &StepLaminate, t2: &StepLaminate) -> RefinedPair {
    let breakpoints = merge_partitions(&[&t1.breakpoints, &t2.breakpoints]);
    let (angles1, angles2) = breakpoints
        .windows(2)
        .map(|w| {
            let mid = 0.5 * (w[0] + w[1]);
            (
                t1.angles[locate(&t1.breakpoints, mid)],
                t2.angles[locate(&t2.breakpoints, mid)],
            )
        })
        .unzip();
    RefinedPair {
        breakpoints,
        angles1,
        angles2,
    }
}

/// Affine map of `[raw[0], raw[last]]` onto `[-1, 1]`.
pub fn normalize_breakpoints(raw: &[f64]) -> Result<Vec<f64>> {
    if raw.len() < 2 {
        return Err(Error::InvalidArgument(
            "at least two breakpoints are required".into(),
        ));
    }
    let (first, last) = (raw[0], raw[raw.len() - 1]);
    if !(first.is_finite() && last.is_finite()) || first >= last {
        return Err(Error::DegenerateInterval { lo: first, hi: last });
    }
    if let Some(i) = raw.windows(2).position(|w| w[0] >= w[1]) {
        return Err(Error::InvariantViolation {
            field: "breakpoints",
            index: i + 1,
            reason: "breakpoints must be strictly increasing".into(),
        });
    }
    let span = last - first;
    let mut out: Vec<f64> = raw.iter().map(|z| 2.0 * (z - first) / span - 1.0).collect();
    out[0] = -1.0;
    *out.last_mut().expect("nonempty") = 1.0;
    Ok(out)
}
