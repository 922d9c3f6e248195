//! Load a `.frob` file (default: the shipped nilcoxeter3 problem), verify it
//! and print the canonical serialization.

use frobex::cli::{parse_problem, serialize_problem};
use frobex::verify_main_theorem;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/problems/nilcoxeter3.frob").into());
    let text = std::fs::read_to_string(&path)?;
    let problem = parse_problem(&text)?.into_problem()?;
    let cert = verify_main_theorem(&problem)?;
    println!("{path}: {}", cert.summary());
    print!("{}", serialize_problem(&problem));
    Ok(())
}
