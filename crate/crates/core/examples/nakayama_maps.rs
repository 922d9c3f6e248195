//! Nakayama automorphisms of the nilcoxeter traces and of a group-ring trace.

use std::sync::Arc;

use frobex::constructions::{group_ring, nilcoxeter, GroupTable};
use frobex::frobenius::{compute_nakayama, verify_nakayama};
use frobex::{AlgebraSpec, SparseVec};

fn main() -> frobex::Result<()> {
    for n in 2..=5 {
        let nc = nilcoxeter(n)?;
        let psi = compute_nakayama(&nc.trace)?;
        assert!(verify_nakayama(&nc.trace, &psi).passed());
        let a = &nc.algebra;
        let images: Vec<String> = (1..n)
            .map(|i| {
                let u = a.index_of(&format!("u{i}")).expect("generator");
                format!("u{i} -> {}", a.format(&psi.apply(&SparseVec::unit(u))))
            })
            .collect();
        println!("psi_{n}: {}", images.join(", "));
    }

    let s3 = GroupTable::symmetric(3)?;
    let q = Arc::new(AlgebraSpec::rationals(1));
    let rg = group_ring(&s3, &q)?;
    let psi = compute_nakayama(&rg.trace)?;
    println!("Q[S3]: Nakayama map is the identity: {}", psi.is_identity());
    Ok(())
}
