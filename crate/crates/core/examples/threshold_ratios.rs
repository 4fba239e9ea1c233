//! Matching ratio A = f/g at the thresholds for square wells, from the
//! closed forms and from direct integration of the radial equations.

use dirac_levinson::exterior::threshold_constants;
use dirac_levinson::interior::{closed_form_threshold_ratio, interior_ratio};
use dirac_levinson::kinematics::{EnergyPoint, Threshold};
use dirac_levinson::potential::{AngularChannel, CutoffPotential, PhysicalScale};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let scale = PhysicalScale::new(1.0)?;
    let r0 = 1.0;
    for kappa in 1..=3 {
        let ch = AngularChannel::new(kappa)?;
        let tc = threshold_constants(&scale, r0, ch)?;
        println!("kappa = {kappa}  (rho1 = {}, rho2 = {})", tc.rho1, tc.rho2);
        println!("{:>7} {:>16} {:>16} {:>10}", "lambda", "A(+M)", "A(-M)", "|diff|");
        for lambda in [-5.0, -2.0, -1.0, 0.0, 1.0, 2.0, 2.5, 4.0, 5.5] {
            let p = CutoffPotential::square_well(lambda, r0)?;
            let mut diff: f64 = 0.0;
            let mut cells = Vec::new();
            for t in [Threshold::Plus, Threshold::Minus] {
                let exact = closed_form_threshold_ratio(lambda, &scale, r0, ch, t)?;
                let ode = interior_ratio(&p, ch, &EnergyPoint::threshold(&scale, t))?;
                diff = diff.max(exact.distance(&ode));
                cells.push(exact.to_string());
            }
            println!("{lambda:>7} {:>16.16} {:>16.16} {diff:>10.1e}", cells[0], cells[1]);
        }
        println!();
    }
    Ok(())
}
