//! Verify closed-form Lie brackets against operator commutators.
//!
//! The structure constants of the 38-dimensional symmetry algebra are
//! implemented in closed form by [`AlgElem::bracket`]. The ground truth is
//! the operator commutator of the evolutionary generators on a generic
//! polynomial solution: for each pair the predicted bracket's action must
//! reproduce the commutator identically, in exact rational arithmetic.
//!
//! Run with: `cargo run --example bracket_check`

use emfield::algebra::{algebra_basis, algebra_labels, AlgElem};
use emfield::scalar::Scalar;
use emfield::solutions::generic_polynomial_solution;
use emfield::symmetries::PotentialPair;
use emfield::tensor::MetricContext;

fn main() {
    let ctx = MetricContext::default();
    let p = PotentialPair::from_solution(&generic_polynomial_solution(ctx));
    let basis = algebra_basis();
    let labels = algebra_labels();

    // A few structurally different pairs; the `bracket-table` CLI command
    // sweeps all 38 * 37 / 2 of them.
    let picks = [
        (0usize, 10usize), // scaling is central
        (2, 3),            // two internal mixings
        (18, 9),           // weighted dilation and a translation
        (8, 27),           // translation against a dual rotation
        (19, 33),          // special conformal against a dual translation
    ];
    for (i, j) in picks {
        let predicted: AlgElem = basis[i].bracket(&basis[j]);
        let q1 = basis[i].action(&p, ctx);
        let q2 = basis[j].action(&p, ctx);
        let commutator = basis[j].action(&q1, ctx).sub(&basis[i].action(&q2, ctx));
        let residual = predicted.action(&p, ctx).sub(&commutator);
        let exact = residual.is_identically_zero() == Some(true);

        let nonzero: Vec<String> = predicted
            .coords()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("{} {}", c, labels[k]))
            .collect();
        println!(
            "[{}, {}] = {}  (exact: {exact})",
            labels[i],
            labels[j],
            if nonzero.is_empty() {
                "0".into()
            } else {
                nonzero.join(" + ")
            },
        );
        assert!(exact);
    }
}
