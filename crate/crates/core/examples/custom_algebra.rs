//! Build the dual numbers Q[ε]/(ε²) with ε odd of weight 1 by hand, give it
//! the trace reading off ε, and run the Frobenius checks.

use std::sync::Arc;

use frobex::algebra::check_algebra;
use frobex::frobenius::{compute_nakayama, verify_t1, verify_t2, verify_trace_bimodule};
use frobex::linalg::{scalar, Matrix};
use frobex::{AlgebraSpec, Degree, Embedding, Parity, SparseVec, TraceData};

fn main() -> frobex::Result<()> {
    let one = SparseVec::unit(0);
    let eps = SparseVec::unit(1);
    let dual_numbers = AlgebraSpec::new(
        "D",
        1,
        vec!["1".into(), "eps".into()],
        vec![Degree::new(vec![0], Parity::Even), Degree::new(vec![1], Parity::Odd)],
        vec![scalar(1), scalar(0)],
        vec![one, eps.clone(), eps, SparseVec::new()],
    )?;
    print!("{}", check_algebra(&dual_numbers));

    let q = Arc::new(AlgebraSpec::rationals(1));
    let d = Arc::new(dual_numbers);
    let unit = Embedding::new(q, d, Matrix::from_int_rows(&[&[1], &[0]]))?;
    let tr = TraceData::untwisted("tr", unit, Matrix::from_int_rows(&[&[0, 1]]), Degree::new(vec![-1], Parity::Odd))?;
    print!("{}", verify_trace_bimodule(&tr));
    print!("{}", verify_t1(&tr));
    print!("{}", verify_t2(&tr)?);
    println!("Nakayama map is the identity: {}", compute_nakayama(&tr)?.is_identity());
    Ok(())
}
