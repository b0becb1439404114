//! Integrate conserved charges of a circularly polarized wave.
//!
//! Over a box spanning one full spatial period the boundary flux cancels,
//! so the charge of any divergence-free current is time-independent. The
//! duality charge (optical helicity) of the circular wave is nonzero —
//! a direct witness that the duality current is not trivial — and the
//! time-translation stress-energy charge gives the (positive) energy.
//!
//! Run with: `cargo run --example conserved_charges`

use emfield::charges::{charge, conservation_check, SliceSpec};
use emfield::currents::{duality_current, stress_energy_current};
use emfield::geometry::ckv_basis;
use emfield::solutions::circularly_polarized_wave;
use emfield::tensor::MetricContext;

fn main() {
    let ctx = MetricContext::default();
    let sol = circularly_polarized_wave(ctx);
    let bounds = [(0.0, 2.0 * std::f64::consts::PI), (0.0, 1.0), (0.0, 1.0)];
    println!("solution: {}", sol.id);

    let helicity = duality_current(&sol);
    let report = conservation_check(&helicity, 0.3, 1.1, bounds, 12).expect("periodic box");
    println!(
        "duality charge (helicity): Q(0.3) = {:.12}, Q(1.1) = {:.12}, drift {:.3e}",
        report.q1, report.q2, report.difference
    );
    assert!(report.difference <= 1e-6 * report.q1.abs().max(1.0));
    assert!(report.q1.abs() > 1.0, "helicity must be nonzero");

    // Energy: the time-translation charge is -E in this metric signature.
    let time_translation = &ckv_basis()[0];
    let phi = stress_energy_current(time_translation, &sol);
    let energy = -charge(
        &phi,
        &SliceSpec {
            t: 0.7,
            bounds,
            resolution: 12,
        },
    )
    .expect("valid slice");
    println!("energy over the box: {energy:.12} (closed form: pi)");
    assert!((energy - std::f64::consts::PI).abs() <= 1e-9);
}
