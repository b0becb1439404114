//! Enumerate exact polynomial solutions and their homotopy potentials.
//!
//! The basis of polynomial field strengths of each homogeneous degree is the
//! null space of the Maxwell constraint matrix, computed in exact rational
//! arithmetic. Potentials come from the homotopy formula
//! `A = sum_d (2/(d+2)) x . F_d` (which also satisfies `x . A = 0`) and are
//! then regauged to Lorentz gauge; every residual below is an exact
//! polynomial identity, not a numerical check.
//!
//! Run with: `cargo run --example polynomial_solutions`

use emfield::jet::{interior, coordinate_field, JetField};
use emfield::solutions::{cronstrom_potential, field_strength_basis, polynomial_catalog};
use emfield::tensor::MetricContext;

fn main() {
    let ctx = MetricContext::default();
    for degree in [0usize, 1] {
        let basis = field_strength_basis(degree);
        println!("degree {degree}: {} independent field strengths", basis.len());
        for f in &basis {
            let a = cronstrom_potential(f).expect("basis elements are closed");
            // x . A = 0 exactly: the potential is radial-gauge by construction.
            let af = JetField::from_poly(a);
            let radial = interior(&coordinate_field(), &af);
            assert_eq!(radial.is_identically_zero(), Some(true));
        }
    }

    for sol in polynomial_catalog(ctx) {
        let all_zero = sol
            .residual_fields()
            .iter()
            .all(|(_, f)| f.is_identically_zero() == Some(true));
        println!("  {:<16} exact: {}", sol.id, all_zero);
        assert!(all_zero);
    }
}
