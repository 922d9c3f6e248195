//! Which twist pairs make the nested trace a bimodule map: nilcoxeter towers
//! need (ψ_A, ψ_B), the S3/A3 group-ring tower accepts all four.

use frobex::cli::builtin_problem;
use frobex::verify_main_theorem;

fn main() -> frobex::Result<()> {
    for spec in ["nilcoxeter:3", "nilcoxeter:4", "groupring:S3:A3"] {
        let cert = verify_main_theorem(&builtin_problem(spec, "q")?)?;
        println!("{spec}");
        if let Some(scan) = &cert.twist_scan {
            for check in &scan.checks {
                println!("  {check}");
            }
        }
    }
    Ok(())
}
