//! A tower over the exterior algebra on one odd generator,
//! ext1 ⊆ ext1[Z2] ⊆ ext1[Z4], where the super signs of R matter.

use std::sync::Arc;

use frobex::algebra::check_supercommutative;
use frobex::constructions::{exterior_base, group_ring_tower, GroupTable};
use frobex::verify_main_theorem;

fn main() -> frobex::Result<()> {
    let base = Arc::new(exterior_base(1, 1)?);
    print!("{}", check_supercommutative(&base));
    let z4 = GroupTable::cyclic(4);
    let h = [z4.identity(), z4.index_of("g2").expect("g2")];
    let problem = group_ring_tower(&z4, &h, &base)?;
    let cert = verify_main_theorem(&problem)?;
    println!("{}", cert.summary());
    Ok(())
}
