//! Bound-state energies in the gap for square wells and a layered
//! potential read from JSON.

use dirac_levinson::potential::{AngularChannel, CutoffPotential, PhysicalScale};
use dirac_levinson::spectrum::{detect_half_bound, find_bound_states};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let scale = PhysicalScale::new(1.0)?;
    for kappa in [1, 2, -1] {
        let ch = AngularChannel::new(kappa)?;
        println!("kappa = {kappa}");
        for lambda in [0.0, 1.0, 2.5, 4.0, 6.0, -3.0, -6.0] {
            let p = CutoffPotential::square_well(lambda, 1.0)?;
            let rep = find_bound_states(&p, ch, &scale, 1e-12)?;
            let energies: Vec<String> = rep.bound_energies.iter().map(|e| format!("{e:+.9}")).collect();
            println!("  lambda = {lambda:>5}: N = {}  [{}]", rep.count, energies.join(", "));
        }
    }

    let layered = CutoffPotential::from_json_str(r#"{"segments": [[0.4, -8.0], [1.0, -1.5]], "r0": 1.0}"#)?;
    let ch = AngularChannel::new(1)?;
    let rep = find_bound_states(&layered, ch, &scale, 1e-12)?;
    let (plus, minus) = detect_half_bound(&layered, ch, &scale, 1e-9)?;
    println!("\nlayered well, kappa = 1: {:?} (match distance {:.1e})", rep.bound_energies, rep.max_match_distance);
    println!("half-bound at +M: {plus}, at -M: {minus}");
    Ok(())
}
