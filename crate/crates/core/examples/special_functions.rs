//! Spherical and modified spherical Bessel functions from the closed-form
//! recurrences, with the cross-product identity as a check.

use dirac_levinson::special::{
    double_factorial, modified_i, modified_k, spherical_j, spherical_j_zeros, spherical_y, BesselOrder,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>3} {:>6} {:>14} {:>14} {:>14} {:>14} {:>10}", "n", "x", "j_n", "y_n", "i_n", "k_n", "x^2 W - 1");
    for n in 0..=4 {
        for x in [0.01, 1.0, 5.0, 20.0] {
            let o = BesselOrder::new(n);
            let (j, y) = (spherical_j(o, x)?, spherical_y(o, x)?);
            let wronskian = if n > 0 {
                let p = BesselOrder::new(n - 1);
                x * x * (j * spherical_y(p, x)? - spherical_j(p, x)? * y) - 1.0
            } else {
                0.0
            };
            println!(
                "{n:>3} {x:>6} {j:>14.6e} {y:>14.6e} {:>14.6e} {:>14.6e} {wronskian:>10.1e}",
                modified_i(o, x)?,
                modified_k(o, x)?
            );
        }
    }

    println!("\nsmall argument: j_n(x) (2n+1)!! / x^n at x = 1e-4");
    for n in 0..=4 {
        let x: f64 = 1e-4;
        let v = spherical_j(BesselOrder::new(n), x)? * double_factorial(2 * n as i64 + 1) / x.powi(n as i32);
        println!("  n = {n}: {v:.12}");
    }

    println!("\nzeros of j_1 below 20: {:?}", spherical_j_zeros(BesselOrder::new(1), 20.0));
    Ok(())
}
