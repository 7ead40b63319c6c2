//! The four CLI operations, each producing a [`Report`].

use std::path::Path;

use serde_json::json;

use crate::convexity::{convex_combine, verify_combination_with_tolerance};
use crate::counterexample::{
    convergence_table, limit_parameters, oscillation_witness_with_cap, Coordinate,
    LimitOrientation,
};
use crate::error::Result;
use crate::io::{load_laminate, save_laminate};
use crate::lamparams::{lamination_parameters, LamParams};
use crate::laminate::StepLaminate;
use crate::report::{Report, Verdict};

/// Slack on the `|ξ| <= 1` bound check.
pub const BOUND_SLACK: f64 = 1e-12;

fn bound_verdict(params: &[LamParams]) -> Verdict {
    let worst = params.iter().map(LamParams::max_abs).fold(0.0, f64::max);
    Verdict::at_most("max_abs_parameter", worst, 1.0 + BOUND_SLACK)
}

fn laminate_json(t: &StepLaminate) -> serde_json::Value {
    json!({
        "breakpoints": t.breakpoints(),
        "angles_deg": t.angles().iter().map(|a| a.to_degrees()).collect::<Vec<_>>(),
    })
}

pub fn cmd_params(file: &Path, normalize: bool) -> Result<Report> {
    let t = load_laminate(file, normalize)?;
    let p = lamination_parameters(&t);
    Ok(Report::new(
        "params",
        json!({"file": file.display().to_string(), "normalize": normalize}),
        json!({"plies": t.ply_count(), "parameters": p}),
        vec![bound_verdict(&[p])],
    ))
}

pub struct CombineArgs<'a> {
    pub file1: &'a Path,
    pub file2: &'a Path,
    pub alpha: f64,
    pub out: Option<&'a Path>,
    pub tolerance: f64,
    pub normalize: bool,
}

pub fn cmd_combine(args: &CombineArgs<'_>) -> Result<Report> {
    let t1 = load_laminate(args.file1, args.normalize)?;
    let t2 = load_laminate(args.file2, args.normalize)?;
    let combined = convex_combine(&t1, &t2, args.alpha)?;
    if let Some(out) = args.out {
        save_laminate(&combined, out)?;
    }
    let check = verify_combination_with_tolerance(&t1, &t2, args.alpha, &combined, args.tolerance);
    let bounds = bound_verdict(&[check.achieved]);
    Ok(Report::new(
        "combine",
        json!({
            "file1": args.file1.display().to_string(),
            "file2": args.file2.display().to_string(),
            "alpha": args.alpha,
            "out": args.out.map(|p| p.display().to_string()),
            "tolerance": args.tolerance,
            "normalize": args.normalize,
        }),
        json!({
            "laminate": laminate_json(&combined),
            "plies": combined.ply_count(),
            "target": check.target,
            "achieved": check.achieved,
            "residuals": check.residuals,
            "max_residual": check.max_residual,
        }),
        vec![
            Verdict::at_most("max_residual", check.max_residual, args.tolerance),
            bounds,
        ],
    ))
}

pub struct SequenceArgs<'a> {
    pub file1: &'a Path,
    pub file2: &'a Path,
    pub alpha: f64,
    pub n_list: &'a [u64],
    pub orientation: LimitOrientation,
    pub normalize: bool,
}

pub fn cmd_gsequence(args: &SequenceArgs<'_>) -> Result<Report> {
    let t1 = load_laminate(args.file1, args.normalize)?;
    let t2 = load_laminate(args.file2, args.normalize)?;
    let rows = convergence_table(&t1, &t2, args.alpha, args.n_list, args.orientation)?;
    let limit = limit_parameters(&t1, &t2, args.alpha, args.orientation);
    let params: Vec<LamParams> = rows.iter().map(|r| r.params).collect();
    Ok(Report::new(
        "gsequence",
        json!({
            "file1": args.file1.display().to_string(),
            "file2": args.file2.display().to_string(),
            "alpha": args.alpha,
            "n": args.n_list,
            "orientation": args.orientation,
            "normalize": args.normalize,
        }),
        json!({"limit": limit, "rows": rows}),
        vec![bound_verdict(&params)],
    ))
}

pub struct OscillateArgs<'a> {
    pub x: Coordinate,
    pub alpha: f64,
    pub count: usize,
    pub cap: u64,
    /// Defaults to a single 0 degree ply.
    pub file1: Option<&'a Path>,
    /// Defaults to a single 90 degree ply.
    pub file2: Option<&'a Path>,
    pub normalize: bool,
}

pub fn cmd_oscillate(args: &OscillateArgs<'_>) -> Result<Report> {
    let load = |file: Option<&Path>, default_deg: f64| match file {
        Some(f) => load_laminate(f, args.normalize),
        None => StepLaminate::constant(default_deg.to_radians()),
    };
    let t1 = load(args.file1, 0.0)?;
    let t2 = load(args.file2, 90.0)?;
    let table = oscillation_witness_with_cap(&t1, &t2, args.alpha, &args.x, args.count, args.cap)?;
    let shortfall = args.count - table.below.len().min(table.above.len());
    let mut report = Report::new(
        "oscillate",
        json!({
            "x": args.x,
            "alpha": args.alpha,
            "count": args.count,
            "cap": args.cap,
            "file1": args.file1.map(|p| p.display().to_string()),
            "file2": args.file2.map(|p| p.display().to_string()),
        }),
        serde_json::to_value(&table).expect("witness table serializes"),
        vec![Verdict::at_most("missing_witnesses", shortfall as f64, 0.0)],
    );
    if !table.oscillates {
        report = report.with_note("t1(x) equals t2(x) or is undefined at x; oscillation is vacuous");
    }
    Ok(report)
}
