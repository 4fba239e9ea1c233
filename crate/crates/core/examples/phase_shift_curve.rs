//! Phase shift of a square well followed from high energy down to each
//! threshold, and its limit compared with the jump count along the depth.
//!
//! Usage: cargo run --example phase_shift_curve -- [kappa] [lambda]

use std::f64::consts::PI;

use dirac_levinson::kinematics::Threshold;
use dirac_levinson::phase::{delta_curve, threshold_limit_by_jumps, DeltaGrid};
use dirac_levinson::potential::{AngularChannel, CutoffPotential, PhysicalScale};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let kappa: i32 = args.first().map_or(Ok(1), |s| s.parse())?;
    let lambda: f64 = args.get(1).map_or(Ok(2.5), |s| s.parse())?;

    let scale = PhysicalScale::new(1.0)?;
    let ch = AngularChannel::new(kappa)?;
    let p = CutoffPotential::square_well(lambda, 1.0)?;

    for t in [Threshold::Plus, Threshold::Minus] {
        let rec = delta_curve(&p, ch, &scale, t, &DeltaGrid::default())?;
        let jumps = threshold_limit_by_jumps(lambda, ch, &scale, 1.0, t)?;
        println!("threshold {t}: kappa = {kappa}, lambda = {lambda}");
        for (e, d) in rec.energies.iter().zip(&rec.delta).step_by(12) {
            println!("  k r0 = {:>10.3e}  E = {:>+12.8}  delta/pi = {:>+9.5}", e.momentum().unwrap_or(0.0), e.energy(), d / PI);
        }
        println!(
            "  limit: {} pi (unsnapped {:.3e} pi), by jumps {} pi, half-bound {}\n",
            rec.threshold_limit / PI,
            rec.unsnapped_limit / PI,
            jumps.delta / PI,
            rec.half_bound_flag
        );
    }
    Ok(())
}
