//! The isomorphism HOM_B(^{ψ_B}A, B) ≅ A^∨ for Q[Z4] over Q[Z2], its inverse,
//! and the rank of a ↦ tr_A ∘ ρ_{ψ_A(a)}.

use std::sync::Arc;

use frobex::constructions::{group_ring_tower, GroupTable};
use frobex::AlgebraSpec;

fn main() -> frobex::Result<()> {
    let z4 = GroupTable::cyclic(4);
    let h = [z4.identity(), z4.index_of("g2").expect("g2")];
    let problem = group_ring_tower(&z4, &h, &Arc::new(AlgebraSpec::rationals(1)))?;
    let duality = problem.duality()?;

    let homs = duality.iso.hom_basis()?;
    let mut round_trips = 0;
    for f in &homs {
        let back = duality.iso.inverse(&duality.iso.forward(f)?)?;
        round_trips += usize::from(&back == f);
    }
    println!("HOM_B basis: {} maps, {} round trips exact", homs.len(), round_trips);

    let duals = duality.iso.dual_basis()?;
    let mut round_trips = 0;
    for theta in &duals {
        let back = duality.iso.forward(&duality.iso.inverse(theta)?)?;
        round_trips += usize::from(&back == theta);
    }
    println!("A^dual basis: {} functionals, {} round trips exact", duals.len(), round_trips);
    println!("rank of phi_A: {} (dim A = {})", duality.phi_a_rank()?, problem.tower.a.dim());
    Ok(())
}
