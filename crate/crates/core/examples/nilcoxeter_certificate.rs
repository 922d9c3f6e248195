//! Certify N_{n-1} ⊆ N_n over Q for n = 2..=5 and print each summary.

use frobex::constructions::nilcoxeter_tower;
use frobex::verify_main_theorem;

fn main() -> frobex::Result<()> {
    for n in 2..=5 {
        let problem = nilcoxeter_tower(n)?;
        let cert = verify_main_theorem(&problem)?;
        println!("N{n} over N{}: {}", n - 1, cert.summary());
    }
    Ok(())
}
