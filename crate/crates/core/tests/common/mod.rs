#![allow(dead_code)]

use std::f64::consts::PI;

use lamconvex::StepLaminate;
use proptest::prelude::*;
use rand::Rng;

/// Random partition of [-1, 1] into `plies` intervals, interior points
/// at least `1e-6` apart.
pub fn random_laminate<R: Rng>(rng: &mut R, max_plies: usize, angle_range: f64) -> StepLaminate {
    let plies = rng.gen_range(1..=max_plies);
    loop {
        let mut cuts: Vec<f64> = (0..plies - 1).map(|_| rng.gen_range(-1.0..1.0)).collect();
        cuts.sort_by(f64::total_cmp);
        let mut bps = vec![-1.0];
        bps.extend(cuts);
        bps.push(1.0);
        if bps.windows(2).any(|w| w[1] - w[0] < 1e-6) {
            continue;
        }
        let angles = (0..plies)
            .map(|_| rng.gen_range(-angle_range..=angle_range))
            .collect();
        return StepLaminate::new(bps, angles).expect("valid random laminate");
    }
}

pub fn laminate_strategy(max_plies: usize) -> impl Strategy<Value = StepLaminate> {
    (1..=max_plies)
        .prop_flat_map(|plies| {
            (
                prop::collection::vec(0.01f64..1.0, plies),
                prop::collection::vec(-PI..PI, plies),
            )
        })
        .prop_map(|(widths, angles)| {
            let total: f64 = widths.iter().sum();
            let mut bps = vec![-1.0];
            let mut acc = 0.0;
            for w in &widths[..widths.len() - 1] {
                acc += w;
                bps.push(-1.0 + 2.0 * acc / total);
            }
            bps.push(1.0);
            StepLaminate::new(bps, angles).expect("valid generated laminate")
        })
}
