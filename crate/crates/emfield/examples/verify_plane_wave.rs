//! Build a plane-wave solution and check every structural invariant.
//!
//! The wave vector must be null and the polarization transverse; the dual
//! polarization `a'` is then solved exactly from `k ^ a' = *(k ^ a)`. The
//! residual fields (Maxwell equations, potential curls, Lorentz gauge) are
//! sampled at seeded points on the floating-point backend.
//!
//! Run with: `cargo run --example verify_plane_wave`

use emfield::report::sample_points;
use emfield::scalar::Rat;
use emfield::solutions::{plane_wave, PlaneWaveSpec, Profile};
use emfield::tensor::MetricContext;

fn main() {
    let ctx = MetricContext::default();
    let spec = PlaneWaveSpec {
        k: [Rat::int(5), Rat::int(3), Rat::int(4), Rat::int(0)],
        a: [Rat::int(0), Rat::int(4), Rat::int(-3), Rat::int(0)],
        profile: Profile::Sin,
    };
    let sol = plane_wave(&spec, ctx).expect("null and transverse data");
    println!("solution: {}", sol.id);

    let points = sample_points(7, 50);
    for (name, residual) in sol.residual_fields() {
        let max = residual.max_abs_at(&points);
        println!("  {name:<22} max residual {max:.3e}");
        assert!(max <= 1e-9);
    }

    // A non-null wave vector is rejected up front.
    let bad = PlaneWaveSpec {
        k: [Rat::int(1), Rat::int(2), Rat::int(0), Rat::int(0)],
        ..spec
    };
    match plane_wave(&bad, ctx) {
        Err(e) => println!("non-null k: {e}"),
        Ok(_) => unreachable!("a non-null wave vector must be rejected"),
    }
}
