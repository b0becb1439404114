//! Probe gauge sensitivity: which symmetries are local on the field strength?
//!
//! Shifting a solution by a residual gauge transformation (`A -> A + D chi`
//! with a harmonic `chi`) leaves `F` unchanged. A generator is *local* when
//! its induced field-strength perturbation `D Q` is insensitive to that
//! shift; generators whose characteristics depend essentially on the
//! potentials themselves are nonlocal. The example also shows the duality
//! behaviour of the Killing-Yano currents: they are pointwise invariant
//! under evaluating on the duality-rotated solution `(A', -A, *F)`, and for
//! constant `Y` the direct and dual currents interchange (up to sign) under
//! `Y -> *Y`.
//!
//! Run with: `cargo run --example gauge_and_locality`

use emfield::currents::{ky_current, ky_dual_current};
use emfield::geometry::{ky_basis, KillingYano};
use emfield::report::sample_points;
use emfield::solutions::{circularly_polarized_wave, generic_polynomial_solution};
use emfield::symmetries::{is_local, symmetry_catalog};
use emfield::tensor::MetricContext;

fn main() {
    let ctx = MetricContext::default();
    let sol = generic_polynomial_solution(ctx);

    for (name, gen) in symmetry_catalog() {
        println!("{name:<16} local: {}", is_local(&gen, &sol));
    }

    // Duality invariance: each Killing-Yano current takes the same values
    // on the rotated solution as on the original.
    let wave = circularly_polarized_wave(ctx);
    let rotated = wave.duality_rotated();
    let points = sample_points(11, 40);
    let mut worst: f64 = 0.0;
    for y in ky_basis() {
        let d = ky_current::<f64>(&y, &rotated).sub(&ky_current::<f64>(&y, &wave));
        worst = worst.max(d.max_abs_at(&points));
    }
    println!("Killing-Yano duality invariance, max residual: {worst:.3e}");
    assert!(worst <= 1e-10);

    // Interchange under Y -> *Y for the constant tensors:
    // ky(*Y) = -ky-dual(Y).
    let mut worst: f64 = 0.0;
    for y in ky_basis().into_iter().take(6) {
        let ystar = KillingYano::new(y.y1.hodge_dual2(ctx), y.c2.clone());
        let d = ky_current::<f64>(&ystar, &wave).add(&ky_dual_current::<f64>(&y, &wave));
        worst = worst.max(d.max_abs_at(&points));
    }
    println!("constant-Y interchange, max residual: {worst:.3e}");
    assert!(worst <= 1e-10);
}
