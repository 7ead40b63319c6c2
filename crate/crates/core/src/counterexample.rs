//! The interleaving sequence `θⁿ` and why it has no pointwise limit.
//!
//! `θⁿ` cuts `[-1, 1]` into `n` equal cells and uses `t1` on the first
//! fraction `alpha` of each cell and `t2` on the rest. Its lamination
//! parameters converge, but at a point `x` the cell side is governed by the
//! fractional part of `n y` with `y = (x + 1) / 2`, which keeps visiting
//! both sides. For rational `x` every question here is answered in exact
//! integer arithmetic.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lamparams::{lamination_parameters, LamParams};
use crate::laminate::{locate, merge_partitions, StepLaminate};

/// Default upper bound (exclusive) on `n` for witness searches.
pub const DEFAULT_SEARCH_CAP: u64 = 10_000_000;

/// Floating inputs closer than this to a cell boundary are treated as
/// lying on it.
pub const FLOAT_BOUNDARY_TOLERANCE: f64 = 1e-12;

/// Reduced fraction with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i64,
    den: i64,
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        if num == i64::MIN || den == i64::MIN {
            return Err(Error::InvalidArgument("value out of range".into()));
        }
        let g = gcd(num, den);
        let sign = den.signum();
        Ok(Self {
            num: sign * num / g,
            den: sign * den / g,
        })
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p/q` or a bare integer.
    fn from_str(s: &str) -> Result<Self> {
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| Error::Parse(format!("invalid rational `{s}`: {e}")))
        };
        match s.split_once('/') {
            Some((p, q)) => Rational::new(parse(p)?, parse(q)?),
            None => Rational::new(parse(s)?, 1),
        }
    }
}

/// A point given either exactly or as a float.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coordinate {
    Exact(Rational),
    Approx(f64),
}

impl Coordinate {
    pub fn to_f64(&self) -> f64 {
        match self {
            Coordinate::Exact(r) => r.to_f64(),
            Coordinate::Approx(v) => *v,
        }
    }

    /// `y = (x + 1) / 2`, which maps `[-1, 1]` onto `[0, 1]`.
    pub fn to_unit(&self) -> Result<Coordinate> {
        Ok(match self {
            Coordinate::Exact(r) => {
                let num = r.num.checked_add(r.den);
                let den = r.den.checked_mul(2);
                match (num, den) {
                    (Some(n), Some(d)) => Coordinate::Exact(Rational::new(n, d)?),
                    _ => return Err(Error::InvalidArgument(format!("{r} is too large"))),
                }
            }
            Coordinate::Approx(v) => Coordinate::Approx((v + 1.0) / 2.0),
        })
    }
}

impl fmt::Display for Coordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coordinate::Exact(r) => write!(f, "{r}"),
            Coordinate::Approx(v) => write!(f, "{v}"),
        }
    }
}

impl FromStr for Coordinate {
    type Err = Error;

    /// `p/q` selects the exact path, anything else is read as a float.
    fn from_str(s: &str) -> Result<Self> {
        if s.contains('/') {
            return s.parse().map(Coordinate::Exact);
        }
        let v: f64 = s
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("invalid coordinate `{s}`: {e}")))?;
        if !v.is_finite() {
            return Err(Error::Parse(format!("coordinate `{s}` is not finite")));
        }
        Ok(Coordinate::Approx(v))
    }
}

impl From<Rational> for Coordinate {
    fn from(r: Rational) -> Self {
        Coordinate::Exact(r)
    }
}

impl From<f64> for Coordinate {
    fn from(v: f64) -> Self {
        Coordinate::Approx(v)
    }
}

impl Serialize for Coordinate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

/// `(g, s, t)` with `s a + t b = g = gcd(a, b)`.
pub fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a as i128, b as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let quotient = old_r / r;
        (old_r, r) = (r, old_r - quotient * r);
        (old_s, s) = (s, old_s - quotient * s);
        (old_t, t) = (t, old_t - quotient * t);
    }
    if old_r < 0 {
        (old_r, old_s, old_t) = (-old_r, -old_s, -old_t);
    }
    (old_r as i64, old_s as i64, old_t as i64)
}

fn check_proper_fraction(p: i64, q: i64) -> Result<()> {
    if !(0 < p && p < q) {
        return Err(Error::InvalidArgument(format!(
            "expected 0 < p < q, got p = {p}, q = {q}"
        )));
    }
    if gcd(p, q) != 1 {
        return Err(Error::NotCoprime { p, q });
    }
    Ok(())
}

/// Smallest `n0 >= 1` with `n0 p - q i0 = 1`, together with `i0`.
///
/// All other solutions are `(n0 + k q, i0 + k p)`.
pub fn bezout_solve(p: i64, q: i64) -> Result<(i64, i64)> {
    check_proper_fraction(p, q)?;
    let (_, s, _) = extended_gcd(p, q);
    let n0 = s.rem_euclid(q);
    let i0 = ((n0 as i128 * p as i128 - 1) / q as i128) as i64;
    Ok((n0, i0))
}

fn check_residue(q: i64, j: i64) -> Result<()> {
    if !(1..q).contains(&j) {
        return Err(Error::JOutOfRange { j, q });
    }
    Ok(())
}

/// The first `count` solutions `(n', i')` of `n' p - q i' = j` with
/// `n' >= 1`, in increasing `n'`. Each satisfies `0 <= i' <= n' - 1`.
pub fn residue_solutions(p: i64, q: i64, j: i64, count: usize) -> Result<Vec<(i64, i64)>> {
    let (n0, _) = bezout_solve(p, q)?;
    check_residue(q, j)?;
    let first = ((j as i128 * n0 as i128) % q as i128) as i64;
    Ok((0..count as i64)
        .map(|k| {
            let n = first + k * q;
            let i = ((n as i128 * p as i128 - j as i128) / q as i128) as i64;
            (n, i)
        })
        .collect())
}

/// Solutions of `n' p - q i' = j` obtained by scaling the unit solutions
/// `(n0 + k q, i0 + k p)`, `k = 0, 1, ...`, by `j`.
///
/// Not every solution is of this form, and the first entries need not be
/// the smallest. Members with `n0 + k q >= q - 1` satisfy
/// `n' >= j (q - 1)` and `0 <= i' <= n' - 1`.
pub fn scaled_unit_solutions(p: i64, q: i64, j: i64, count: usize) -> Result<Vec<(i64, i64)>> {
    let (n0, i0) = bezout_solve(p, q)?;
    check_residue(q, j)?;
    Ok((0..count as i64)
        .map(|k| (j * (n0 + k * q), j * (i0 + k * p)))
        .collect())
}

/// `(floor(x q), x q is an integer)` computed exactly for `0 <= x <= 1`.
fn floor_mul(x: f64, q: u64) -> (u128, bool) {
    debug_assert!((0.0..=1.0).contains(&x));
    if x == 0.0 {
        return (0, true);
    }
    let bits = x.to_bits();
    let exp_bits = ((bits >> 52) & 0x7ff) as i32;
    let frac = bits & ((1u64 << 52) - 1);
    let (mantissa, exp) = if exp_bits == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), exp_bits - 1075)
    };
    let product = mantissa as u128 * q as u128;
    let shift = (-exp) as u32;
    if shift >= 128 {
        return (0, product == 0);
    }
    (product >> shift, product & ((1u128 << shift) - 1) == 0)
}

/// Range of residues `r` with `lo < r / q < hi`, or `None` if empty.
fn residue_window(lo: f64, hi: f64, q: u64) -> Option<(u128, u128)> {
    let min = floor_mul(lo, q).0 + 1;
    let max = match floor_mul(hi, q) {
        (f, true) => f.checked_sub(1)?,
        (f, false) => f,
    };
    (min <= max).then_some((min, max))
}

/// `(n y)` as the residue `n num mod den` for `y = num / den`.
fn residue(n: u64, y: &Rational) -> u128 {
    let den = y.den as u128;
    let num = y.num.rem_euclid(y.den) as u128;
    (n as u128 % den) * num % den
}

fn check_region(lo: f64, hi: f64) -> Result<()> {
    if !(0.0 <= lo && lo < hi && hi <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "region ({lo}, {hi}) must satisfy 0 <= lo < hi <= 1"
        )));
    }
    Ok(())
}

/// Smallest `n` in `[n_min, cap)` with `lo < (n y) < hi`.
///
/// Rational `y` is handled exactly; since `(n y)` is periodic in `n` with
/// period `den(y)`, the search also stops after one full period.
pub fn find_n_in_region(y: &Coordinate, lo: f64, hi: f64, n_min: u64, cap: u64) -> Result<u64> {
    check_region(lo, hi)?;
    let exhausted = || Error::SearchCapExceeded { lo, hi, n_min, cap };
    let n_min = n_min.max(1);
    match y {
        Coordinate::Exact(r) => {
            let (min, max) = residue_window(lo, hi, r.den as u64).ok_or_else(exhausted)?;
            let end = cap.min(n_min.saturating_add(r.den as u64));
            (n_min..end)
                .find(|&n| (min..=max).contains(&residue(n, r)))
                .ok_or_else(exhausted)
        }
        Coordinate::Approx(v) => (n_min..cap)
            .find(|&n| {
                let f = (n as f64 * v).rem_euclid(1.0);
                lo + FLOAT_BOUNDARY_TOLERANCE < f && f < hi - FLOAT_BOUNDARY_TOLERANCE
            })
            .ok_or_else(exhausted),
    }
}

fn check_alpha_open(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    Ok(())
}

fn check_n(n: u64) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    Ok(())
}

/// Builds `θⁿ` as a step function on the merged partition of the cell
/// points and the breakpoints of `t1` and `t2`.
pub fn theta_n_build(
    t1: &StepLaminate,
    t2: &StepLaminate,
    alpha: f64,
    n: u64,
) -> Result<StepLaminate> {
    check_alpha_open(alpha)?;
    check_n(n)?;
    let nf = n as f64;
    let mut cells = Vec::with_capacity(2 * n as usize + 1);
    for i in 0..n {
        let start = -1.0 + 2.0 * i as f64 / nf;
        cells.push(start);
        cells.push(start + 2.0 * alpha / nf);
    }
    cells.push(1.0);

    let breakpoints = merge_partitions(&[&cells, t1.breakpoints(), t2.breakpoints()]);
    let angles = breakpoints
        .windows(2)
        .map(|w| {
            let mid = 0.5 * (w[0] + w[1]);
            let t = if locate(&cells, mid) % 2 == 0 { t1 } else { t2 };
            t.angles()[locate(t.breakpoints(), mid)]
        })
        .collect();
    StepLaminate::new(breakpoints, angles)
}

/// Which part of its cell a point falls in for a given `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CellSide {
    /// `0 < (n y) < alpha`: `θⁿ(x) = t1(x)`.
    First,
    /// `alpha < (n y) < 1`: `θⁿ(x) = t2(x)`.
    Second,
}

fn check_open_domain(x: &Coordinate) -> Result<()> {
    let inside = match x {
        Coordinate::Exact(r) => -r.den < r.num && r.num < r.den,
        Coordinate::Approx(v) => -1.0 < *v && *v < 1.0,
    };
    if !inside {
        return Err(Error::OutOfDomain(x.to_f64()));
    }
    Ok(())
}

/// Cell side of `x` for `θⁿ`, or `UndefinedAtBreakpoint` when `(n y)` is
/// `0` or `alpha`.
pub fn cell_side(x: &Coordinate, alpha: f64, n: u64) -> Result<CellSide> {
    check_alpha_open(alpha)?;
    check_n(n)?;
    check_open_domain(x)?;
    let undefined = || Error::UndefinedAtBreakpoint { x: x.to_f64() };
    match x.to_unit()? {
        Coordinate::Exact(y) => {
            let r = residue(n, &y);
            if r == 0 {
                return Err(undefined());
            }
            match floor_mul(alpha, y.den as u64) {
                (f, true) if r == f => Err(undefined()),
                (f, exact) if r < f || (r == f && !exact) => Ok(CellSide::First),
                _ => Ok(CellSide::Second),
            }
        }
        Coordinate::Approx(y) => {
            let f = (n as f64 * y).rem_euclid(1.0);
            let tol = FLOAT_BOUNDARY_TOLERANCE;
            if f < tol || f > 1.0 - tol || (f - alpha).abs() < tol {
                Err(undefined())
            } else if f < alpha {
                Ok(CellSide::First)
            } else {
                Ok(CellSide::Second)
            }
        }
    }
}

/// `θⁿ(x)`, with no construction of the full step function.
///
/// Undefined at cell boundaries and at breakpoints of either input.
pub fn theta_n_eval(
    t1: &StepLaminate,
    t2: &StepLaminate,
    alpha: f64,
    n: u64,
    x: &Coordinate,
) -> Result<f64> {
    let side = cell_side(x, alpha, n)?;
    let xf = x.to_f64();
    let (v1, v2) = (t1.eval(xf)?, t2.eval(xf)?);
    Ok(match side {
        CellSide::First => v1,
        CellSide::Second => v2,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WitnessEntry {
    pub n: u64,
    /// Fractional part `(n y)`.
    pub frac: f64,
    /// `n num(y) mod den(y)` when `y` is exact; `(n y) = residue / den(y)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residue: Option<u64>,
}

/// Indices certifying that `θⁿ(x)` visits both `t1(x)` and `t2(x)`
/// infinitely often.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessTable {
    pub x: Coordinate,
    pub y: Coordinate,
    pub alpha: f64,
    /// `0 < (n y) < alpha`, so `θⁿ(x) = t1(x)`.
    pub below: Vec<WitnessEntry>,
    /// `alpha < (n y) < 1`, so `θⁿ(x) = t2(x)`.
    pub above: Vec<WitnessEntry>,
    /// `n = 2 k q` for exact `x = p/q`: `x` is then a cell point of `θⁿ`.
    /// Empty for float input.
    pub undefined_at: Vec<u64>,
    pub theta1: Option<f64>,
    pub theta2: Option<f64>,
    /// `1/den(y) < min(alpha, 1 - alpha)`, which guarantees both regions
    /// are reached. `None` for float input.
    pub denominator_condition: Option<bool>,
    /// Both regions populated and `t1(x) != t2(x)`.
    pub oscillates: bool,
}

fn witness_entry(n: u64, y: &Coordinate) -> WitnessEntry {
    match y {
        Coordinate::Exact(r) => {
            let res = residue(n, r) as u64;
            WitnessEntry {
                n,
                frac: res as f64 / r.den as f64,
                residue: Some(res),
            }
        }
        Coordinate::Approx(v) => WitnessEntry {
            n,
            frac: (n as f64 * v).rem_euclid(1.0),
            residue: None,
        },
    }
}

fn collect_region(
    y: &Coordinate,
    lo: f64,
    hi: f64,
    count: usize,
    cap: u64,
) -> Result<Vec<WitnessEntry>> {
    let mut out = Vec::with_capacity(count);
    let mut next = 1;
    while out.len() < count {
        let n = find_n_in_region(y, lo, hi, next, cap)?;
        out.push(witness_entry(n, y));
        next = n + 1;
    }
    Ok(out)
}

pub fn oscillation_witness(
    t1: &StepLaminate,
    t2: &StepLaminate,
    alpha: f64,
    x: &Coordinate,
    count: usize,
) -> Result<WitnessTable> {
    oscillation_witness_with_cap(t1, t2, alpha, x, count, DEFAULT_SEARCH_CAP)
}

pub fn oscillation_witness_with_cap(
    t1: &StepLaminate,
    t2: &StepLaminate,
    alpha: f64,
    x: &Coordinate,
    count: usize,
    cap: u64,
) -> Result<WitnessTable> {
    check_alpha_open(alpha)?;
    check_open_domain(x)?;
    if count < 1 {
        return Err(Error::InvalidArgument("count must be at least 1".into()));
    }
    let y = x.to_unit()?;
    let below = collect_region(&y, 0.0, alpha, count, cap)?;
    let above = collect_region(&y, alpha, 1.0, count, cap)?;

    let (undefined_at, denominator_condition) = match (x, &y) {
        (Coordinate::Exact(rx), Coordinate::Exact(ry)) => {
            let period = 2 * rx.den as u64;
            let step = 1.0 / ry.den as f64;
            (
                (1..=count as u64).map(|k| k * period).collect(),
                Some(step < alpha.min(1.0 - alpha)),
            )
        }
        _ => (Vec::new(), None),
    };

    let xf = x.to_f64();
    let (theta1, theta2) = (t1.eval(xf).ok(), t2.eval(xf).ok());
    let differ = matches!((theta1, theta2), (Some(a), Some(b)) if a != b);
    Ok(WitnessTable {
        x: *x,
        y,
        alpha,
        oscillates: differ && !below.is_empty() && !above.is_empty(),
        below,
        above,
        undefined_at,
        theta1,
        theta2,
        denominator_condition,
    })
}

/// Which weighting of the two inputs the limit of `ξ[θⁿ]` is compared to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitOrientation {
    /// `alpha ξ[t1] + (1 - alpha) ξ[t2]`, the limit of the sequence as built.
    #[default]
    AsConstructed,
    /// `(1 - alpha) ξ[t1] + alpha ξ[t2]`.
    Swapped,
}

pub fn limit_parameters(
    t1: &StepLaminate,
    t2: &StepLaminate,
    alpha: f64,
    orientation: LimitOrientation,
) -> LamParams {
    let (p1, p2) = (lamination_parameters(t1), lamination_parameters(t2));
    match orientation {
        LimitOrientation::AsConstructed => p1.interpolate(&p2, 1.0 - alpha),
        LimitOrientation::Swapped => p1.interpolate(&p2, alpha),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n: u64,
    pub params: LamParams,
    pub distance: [f64; 12],
    pub max_distance: f64,
}

impl ConvergenceRow {
    /// Largest distance over the in-plane components.
    pub fn max_distance_a(&self) -> f64 {
        self.distance[..4].iter().copied().fold(0.0, f64::max)
    }

    /// Largest distance over the coupling and bending components.
    pub fn max_distance_bd(&self) -> f64 {
        self.distance[4..].iter().copied().fold(0.0, f64::max)
    }
}

/// Exact parameters of `θⁿ` for each `n` and their distance to the limit.
pub fn convergence_table(
    t1: &StepLaminate,
    t2: &StepLaminate,
    alpha: f64,
    n_list: &[u64],
    orientation: LimitOrientation,
) -> Result<Vec<ConvergenceRow>> {
    check_alpha_open(alpha)?;
    let limit = limit_parameters(t1, t2, alpha, orientation);
    n_list
        .iter()
        .map(|&n| {
            let params = lamination_parameters(&theta_n_build(t1, t2, alpha, n)?);
            let distance = params.abs_diff(&limit);
            Ok(ConvergenceRow {
                n,
                params,
                max_distance: distance.iter().copied().fold(0.0, f64::max),
                distance,
            })
        })
        .collect()
}
