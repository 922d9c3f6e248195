//! Dual generators {x_i}, {y_i} of N_3 over Q and the reconstruction check.

use frobex::constructions::nilcoxeter;
use frobex::frobenius::{compute_dual_generators, verify_dual_generators};

fn main() -> frobex::Result<()> {
    let nc = nilcoxeter(3)?;
    let basis: Vec<usize> = (0..nc.algebra.dim()).collect();
    let dg = compute_dual_generators(&nc.trace, &basis)?;
    for (x, y) in dg.x.iter().zip(&dg.y) {
        println!("x = {x:<6} y = {y}");
    }
    print!("{}", verify_dual_generators(&dg, &nc.trace));
    Ok(())
}
