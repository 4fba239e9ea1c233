//! Sweep the depth of a square well and list the threshold jump events.
//!
//! Usage: cargo run --release --example lambda_sweep -- [kappa] [lambda_min] [lambda_max] [step]

use std::time::Instant;

use dirac_levinson::potential::{AngularChannel, PhysicalScale};
use dirac_levinson::sweep::lambda_sweep;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let arg = |i: usize, d: f64| args.get(i).map_or(Ok(d), |s| s.parse::<f64>());
    let kappa = args.first().map_or(Ok(1), |s| s.parse::<i32>())?;
    let (lo, hi, step) = (arg(1, -6.0)?, arg(2, 6.0)?, arg(3, 0.25)?);

    let scale = PhysicalScale::new(1.0)?;
    let ch = AngularChannel::new(kappa)?;
    let start = Instant::now();
    let out = lambda_sweep(ch, &scale, 1.0, lo, hi, step)?;

    println!("kappa = {kappa}, {} rows in {:.2?}", out.rows.len(), start.elapsed());
    println!("{:>8} {:>8} {:>8} {:>3} {:>5} {:>5} {:>5}", "lambda", "d+/pi", "d-/pi", "N", "eq3+", "eq3-", "(c)");
    for r in &out.rows {
        println!(
            "{:>8.3} {:>8.1} {:>8.1} {:>3} {:>5} {:>5} {:>5}{}",
            r.lambda,
            r.delta_plus_over_pi,
            r.delta_minus_over_pi,
            r.n,
            r.eq3_plus,
            r.eq3_minus,
            r.modified_c,
            if r.near_event { "  *" } else { "" }
        );
    }
    println!("\nevents:");
    for e in &out.events {
        println!("  lambda* = {:.10} {:?} at {} (jump {:+.3} pi)", e.lambda_star, e.kind, e.threshold, e.phase_jump / std::f64::consts::PI);
    }
    println!("max residual = {:e}", out.max_residual());
    Ok(())
}
