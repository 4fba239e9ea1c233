//! Levinson's theorem and the two node-count statements for one well.
//!
//! Usage: cargo run --example levinson_check -- [kappa] [lambda]

use dirac_levinson::levinson::{check_modified_statement, check_strong_statement, verify_levinson};
use dirac_levinson::potential::{AngularChannel, CutoffPotential, PhysicalScale};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let kappa: i32 = args.first().map_or(Ok(1), |s| s.parse())?;
    let lambda: f64 = args.get(1).map_or(Ok(5.5), |s| s.parse())?;

    let scale = PhysicalScale::new(1.0)?;
    let ch = AngularChannel::new(kappa)?;
    let p = CutoffPotential::square_well(lambda, 1.0)?;

    let report = verify_levinson(&p, ch, &scale)?;
    println!("{}", serde_json::to_string_pretty(&report)?);

    let strong = check_strong_statement(&p, ch, &scale)?;
    println!("\nnode form: +M {} / -M {}", strong.plus_holds, strong.minus_holds);
    for d in &strong.details {
        println!(
            "  {} {:?} {:?}: {} nodes vs {} -> {}",
            d.threshold, d.component, d.range, d.nodes, d.phase_side, d.holds
        );
    }

    let modified = check_modified_statement(&p, ch, &scale)?;
    println!("\nmodified statement holds: {}", modified.holds);
    for c in modified.cases.iter().filter(|c| c.applies) {
        println!("  {:?}: {} vs {} -> {}", c.case, c.phase_side, c.node_side, c.holds);
    }
    Ok(())
}
