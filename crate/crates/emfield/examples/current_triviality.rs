//! Classify currents as trivial or essential.
//!
//! A current is trivial when it is a curl `Phi^mu = D_nu Theta^{mu nu}` on
//! solutions: it carries no conservation-law content. The scaling current is
//! trivial — [`trivial_certificate`] produces the multiple of the explicit
//! curl potential `Theta` that witnesses it, verified as an exact identity —
//! while the duality, internal, conformal, and Killing-Yano pair currents
//! are not (their nonzero charges confirm the verdict independently; see
//! the `conserved_charges` example).
//!
//! Run with: `cargo run --example current_triviality`

use emfield::currents::{
    curl_current, divergence_residual, scaling_current, scaling_theta, trivial_certificate,
    CurrentKind, current_catalog,
};
use emfield::solutions::generic_polynomial_solution;
use emfield::tensor::MetricContext;

fn main() {
    let ctx = MetricContext::default();
    let sol = generic_polynomial_solution(ctx);

    // The scaling current equals c * D_nu Theta^{mu nu} with Theta the
    // explicit antisymmetric potential from the catalog.
    let cert = trivial_certificate(
        &emfield::jet::JetField::from_tensor(&emfield::tensor::metric_dd()),
        &emfield::jet::JetField::zeros(vec![
            emfield::tensor::Var::Down,
            emfield::tensor::Var::Down,
        ]),
    )
    .expect("scaling pair is trivial");
    let witness = scaling_current(&sol).sub(&curl_current(&scaling_theta(&sol)).scale(&cert));
    println!(
        "scaling current = {cert} * curl(Theta): exact {}",
        witness.is_identically_zero() == Some(true)
    );
    assert_eq!(witness.is_identically_zero(), Some(true));

    // Every pair-form catalog current other than scaling fails the
    // triviality certificate.
    for (name, kind) in current_catalog() {
        let Some((a, aprime)) = kind.pair(ctx) else {
            continue; // stress-energy currents are not of pair form
        };
        let trivial = trivial_certificate(&a, &aprime).is_some();
        if !name.starts_with("se.") {
            println!("  {name:<14} trivial: {trivial}");
            assert!(!trivial);
        }
    }

    // Triviality talk only makes sense for conserved currents; spot-check
    // conservation of one of them here.
    let phi = CurrentKind::Duality.evaluate(&sol);
    assert_eq!(divergence_residual(&phi).is_identically_zero(), Some(true));
}
