//! Nodes of the threshold solutions inside and outside the well.

use dirac_levinson::kinematics::Threshold;
use dirac_levinson::nodes::node_report;
use dirac_levinson::potential::{AngularChannel, CutoffPotential, PhysicalScale};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let scale = PhysicalScale::new(1.0)?;
    let ch = AngularChannel::new(1)?;
    println!("kappa = 1; columns are interior + exterior (flags: zero at r0)");
    println!("{:>7} | {:>9} {:>9} | {:>9} {:>9}", "lambda", "f(+M)", "g(+M)", "f(-M)", "g(-M)");
    for lambda in [0.0, 1.0, 2.5, 3.5, 4.5, 5.5, 7.0, -2.5, -5.0] {
        let p = CutoffPotential::square_well(lambda, 1.0)?;
        let plus = node_report(&p, ch, &scale, Threshold::Plus)?;
        let minus = node_report(&p, ch, &scale, Threshold::Minus)?;
        let cell = |inner: usize, outer: usize, at_r0: bool| {
            format!("{inner}+{outer}{}", if at_r0 { "*" } else { "" })
        };
        println!(
            "{lambda:>7} | {:>9} {:>9} | {:>9} {:>9}",
            cell(plus.f_nodes_interior, plus.f_nodes_exterior, plus.node_at_r0_f),
            cell(plus.g_nodes_interior, plus.g_nodes_exterior, plus.node_at_r0_g),
            cell(minus.f_nodes_interior, minus.f_nodes_exterior, minus.node_at_r0_f),
            cell(minus.g_nodes_interior, minus.g_nodes_exterior, minus.node_at_r0_g),
        );
    }
    Ok(())
}
