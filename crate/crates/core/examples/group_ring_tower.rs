//! Q[S3] over Q[A3]: the nested trace is the projection onto the subgroup.

use std::sync::Arc;

use frobex::constructions::{group_ring_tower, GroupTable};
use frobex::{verify_main_theorem, AlgebraSpec, SparseVec};

fn main() -> frobex::Result<()> {
    let s3 = GroupTable::symmetric(3)?;
    let a3: Vec<usize> = ["e", "c123", "c132"]
        .iter()
        .map(|l| s3.index_of(l).expect("element of S3"))
        .collect();
    let problem = group_ring_tower(&s3, &a3, &Arc::new(AlgebraSpec::rationals(1)))?;
    let cert = verify_main_theorem(&problem)?;
    println!("{}", cert.summary());

    let td = cert.nested_trace.expect("valid certificate has a nested trace");
    for g in 0..td.big().dim() {
        let image = td.apply(&SparseVec::unit(g));
        println!("  tr({}) = {}", td.big().label(g), td.sub().format(&image));
    }
    Ok(())
}
