//! Conserved charges: spatial-slice integration of the time component of a
//! current, and time-independence checks over periodic boxes.
//!
//! A divergence-free current `Phi^mu` integrates to a constant of motion
//! `Q(t) = ∫ Phi^0(t, x) d^3x` whenever the spatial flux through the boundary
//! of the integration region cancels. Only periodic boxes are supported here:
//! plane-wave solutions are exactly periodic, so a box spanning whole periods
//! gives an honest desk-scale conservation test, while decaying-at-infinity
//! solutions would need infinite-domain quadrature and are out of scope.
//!
//! Integration uses tensor-product Gauss–Legendre quadrature. Node values are
//! evaluated in parallel; accumulation is compensated (Kahan) summation over
//! a fixed node order, so results are deterministic.

use crate::jet::JetField;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Charge-integration failures.
#[derive(Error, Debug)]
pub enum ChargeError {
    #[error("quadrature resolution {0} is below the minimum of 4")]
    Resolution(usize),
    #[error("degenerate integration box on spatial axis {axis}: [{min}, {max}]")]
    DegenerateBox { axis: usize, min: f64, max: f64 },
    #[error(
        "current is not a rank-1 field (rank {0}); only vector currents have a charge"
    )]
    NotVector(usize),
    #[error(
        "periodicity spot-check failed on spatial axis {axis}: \
         face mismatch {mismatch:.3e} exceeds tolerance {tol:.1e}"
    )]
    NotPeriodic {
        axis: usize,
        mismatch: f64,
        tol: f64,
    },
}

/// A fixed-time spatial integration region with a quadrature resolution.
///
/// `bounds[i]` is the `(min, max)` interval on spatial axis `i + 1`; the
/// quadrature rule is the `resolution`-node Gauss–Legendre rule applied per
/// axis as a tensor product.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SliceSpec {
    pub t: f64,
    pub bounds: [(f64, f64); 3],
    pub resolution: usize,
}

impl SliceSpec {
    fn validate(&self) -> Result<(), ChargeError> {
        if self.resolution < 4 {
            return Err(ChargeError::Resolution(self.resolution));
        }
        for (axis, &(min, max)) in self.bounds.iter().enumerate() {
            if !(max > min) || !min.is_finite() || !max.is_finite() {
                return Err(ChargeError::DegenerateBox { axis, min, max });
            }
        }
        Ok(())
    }
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`,
/// computed by Newton iteration on the Legendre three-term recurrence. The
/// rule integrates polynomials of degree `2n - 1` exactly (to roundoff).
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // Chebyshev-like initial guess for the i-th root of P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            // Evaluate P_n and P_{n-1} by the recurrence
            // (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}.
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 1..n {
                let p2 = ((2 * k + 1) as f64 * x * p1 - k as f64 * p0) / (k + 1) as f64;
                p0 = p1;
                p1 = p2;
            }
            // P_n'(x) = n (x P_n - P_{n-1}) / (x^2 - 1).
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        // Recompute P_{n-1} and P_n' at the converged root for the weight
        // w = 2 / ((1 - x^2) P_n'(x)^2).
        let mut p0 = 1.0;
        let mut p1 = x;
        for k in 1..n {
            let p2 = ((2 * k + 1) as f64 * x * p1 - k as f64 * p0) / (k + 1) as f64;
            p0 = p1;
            p1 = p2;
        }
        let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Compensated (Kahan) sum of a slice in its given order.
fn kahan_sum(values: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for &v in values {
        let y = v - c;
        let t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    sum
}

/// The weight `∫_0^1 lambda^degree d lambda` evaluated by 16-node
/// Gauss–Legendre quadrature. Agrees with the closed form `1/(degree + 1)`
/// to machine precision for `degree <= 31`.
pub fn lambda_weight(degree: usize) -> f64 {
    let mut acc = 0.0;
    for (x, w) in gauss_legendre(16) {
        let lam = 0.5 * (x + 1.0);
        acc += 0.5 * w * lam.powi(degree as i32);
    }
    acc
}

/// `Q(t) = ∫∫∫ Phi^0(t, x) d^3x` over the slice box by tensor-product
/// Gauss–Legendre quadrature.
pub fn charge(phi: &JetField<f64>, slice: &SliceSpec) -> Result<f64, ChargeError> {
    slice.validate()?;
    if phi.rank() != 1 {
        return Err(ChargeError::NotVector(phi.rank()));
    }
    let rule = gauss_legendre(slice.resolution);
    let n = slice.resolution;
    // Per-axis affine map [-1, 1] -> [min, max] with Jacobian half-width.
    let axis: Vec<Vec<(f64, f64)>> = (0..3)
        .map(|i| {
            let (min, max) = slice.bounds[i];
            let mid = 0.5 * (min + max);
            let half = 0.5 * (max - min);
            rule.iter().map(|&(x, w)| (mid + half * x, half * w)).collect()
        })
        .collect();
    let t = slice.t;
    let contributions: Vec<f64> = (0..n * n * n)
        .into_par_iter()
        .map(|flat| {
            let (i, j, k) = (flat / (n * n), (flat / n) % n, flat % n);
            let (x1, w1) = axis[0][i];
            let (x2, w2) = axis[1][j];
            let (x3, w3) = axis[2][k];
            let v = phi.value(&[t, x1, x2, x3]);
            w1 * w2 * w3 * v.get(&[0])
        })
        .collect();
    Ok(kahan_sum(&contributions))
}

/// Report of a two-time conservation check with convergence data.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConservationReport {
    pub resolution: usize,
    /// Charges at `t1` and `t2` at the full resolution.
    pub q1: f64,
    pub q2: f64,
    /// `|q1 - q2|` at the full resolution.
    pub difference: f64,
    /// Charges at `t1` and `t2` at half the resolution.
    pub coarse_q1: f64,
    pub coarse_q2: f64,
    pub coarse_difference: f64,
    /// Richardson-style quadrature error estimate:
    /// `max(|coarse_q1 - q1|, |coarse_q2 - q2|)`, the charge shift under
    /// resolution doubling.
    pub error_estimate: f64,
}

/// Sample points per face used by the periodicity spot-check.
const FACE_SAMPLES: usize = 3;
/// Relative tolerance of the periodicity spot-check.
const PERIODICITY_TOL: f64 = 1e-9;

/// Spot-check that `Phi` takes equal values on opposite faces of the box on
/// every spatial axis (a `FACE_SAMPLES`-per-axis sample grid at time `t`), so
/// that boundary flux cancels in the divergence theorem.
pub fn periodicity_check(
    phi: &JetField<f64>,
    t: f64,
    bounds: [(f64, f64); 3],
    tol: f64,
) -> Result<(), ChargeError> {
    // Interior sample fractions, deliberately irrational-ish to avoid hitting
    // symmetry points of the integrand.
    let fracs: [f64; FACE_SAMPLES] = [0.21, 0.54, 0.87];
    for axis in 0..3 {
        let (o1, o2) = match axis {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let mut mismatch: f64 = 0.0;
        let mut scale: f64 = 1.0;
        for &fa in &fracs {
            for &fb in &fracs {
                let mut x = [t, 0.0, 0.0, 0.0];
                x[1 + o1] = bounds[o1].0 + fa * (bounds[o1].1 - bounds[o1].0);
                x[1 + o2] = bounds[o2].0 + fb * (bounds[o2].1 - bounds[o2].0);
                x[1 + axis] = bounds[axis].0;
                let lo = phi.value(&x);
                x[1 + axis] = bounds[axis].1;
                let hi = phi.value(&x);
                for (a, b) in lo.data.iter().zip(hi.data.iter()) {
                    mismatch = mismatch.max((a - b).abs());
                    scale = scale.max(a.abs()).max(b.abs());
                }
            }
        }
        if mismatch > tol * scale {
            return Err(ChargeError::NotPeriodic {
                axis,
                mismatch,
                tol,
            });
        }
    }
    Ok(())
}

/// Verify time-independence of the charge of `phi` between `t1` and `t2`
/// over a spatially periodic box.
///
/// The periodicity of the current over the box is spot-checked first (at both
/// times); the charges are then integrated at `resolution` and at half of it,
/// and reported together with the resolution-doubling error estimate.
pub fn conservation_check(
    phi: &JetField<f64>,
    t1: f64,
    t2: f64,
    bounds: [(f64, f64); 3],
    resolution: usize,
) -> Result<ConservationReport, ChargeError> {
    periodicity_check(phi, t1, bounds, PERIODICITY_TOL)?;
    periodicity_check(phi, t2, bounds, PERIODICITY_TOL)?;
    let coarse = (resolution / 2).max(4);
    let at = |t: f64, res: usize| {
        charge(
            phi,
            &SliceSpec {
                t,
                bounds,
                resolution: res,
            },
        )
    };
    let q1 = at(t1, resolution)?;
    let q2 = at(t2, resolution)?;
    let coarse_q1 = at(t1, coarse)?;
    let coarse_q2 = at(t2, coarse)?;
    Ok(ConservationReport {
        resolution,
        q1,
        q2,
        difference: (q1 - q2).abs(),
        coarse_q1,
        coarse_q2,
        coarse_difference: (coarse_q1 - coarse_q2).abs(),
        error_estimate: (coarse_q1 - q1).abs().max((coarse_q2 - q2).abs()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::currents::{
        curl_current, duality_current, scaling_formula, scaling_formula_quadrature,
        scaling_theta, stress_energy_current,
    };
    use crate::geometry::ckv_basis;
    use crate::solutions::plane_wave_catalog;
    use crate::tensor::{MetricContext, Var};

    const TAU: f64 = 2.0 * std::f64::consts::PI;

    use crate::solutions::circularly_polarized_wave as circular_wave;

    fn period_box() -> [(f64, f64); 3] {
        [(0.0, TAU), (0.0, 1.0), (0.0, 1.0)]
    }

    #[test]
    fn gauss_legendre_integrates_moments_exactly() {
        for n in [4usize, 5, 8, 12, 16] {
            let rule = gauss_legendre(n);
            // Weight sanity: total weight is the interval length.
            let total: f64 = rule.iter().map(|&(_, w)| w).sum();
            assert!((total - 2.0).abs() < 1e-13);
            // Exact on monomials up to degree 2n - 1.
            for k in 0..2 * n {
                let got: f64 = rule.iter().map(|&(x, w)| w * x.powi(k as i32)).sum();
                let exact = if k % 2 == 0 { 2.0 / (k as f64 + 1.0) } else { 0.0 };
                assert!(
                    (got - exact).abs() < 1e-13,
                    "n = {n}, moment {k}: {got} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn lambda_weight_matches_closed_form() {
        for d in 0..=16usize {
            let got = lambda_weight(d);
            let exact = 1.0 / (d as f64 + 1.0);
            assert!((got - exact).abs() <= 1e-12, "degree {d}: {got} vs {exact}");
        }
    }

    #[test]
    fn zero_current_has_zero_charge() {
        let phi = JetField::<f64>::zeros(vec![Var::Up]);
        let slice = SliceSpec {
            t: 0.0,
            bounds: period_box(),
            resolution: 4,
        };
        assert_eq!(charge(&phi, &slice).unwrap(), 0.0);
    }

    #[test]
    fn rejects_invalid_slices_and_ranks() {
        let phi = JetField::<f64>::zeros(vec![Var::Up]);
        let bad_res = SliceSpec {
            t: 0.0,
            bounds: period_box(),
            resolution: 3,
        };
        assert!(matches!(
            charge(&phi, &bad_res),
            Err(ChargeError::Resolution(3))
        ));
        let bad_box = SliceSpec {
            t: 0.0,
            bounds: [(0.0, 1.0), (2.0, 2.0), (0.0, 1.0)],
            resolution: 8,
        };
        assert!(matches!(
            charge(&phi, &bad_box),
            Err(ChargeError::DegenerateBox { axis: 1, .. })
        ));
        let two_form = JetField::<f64>::zeros(vec![Var::Up, Var::Up]);
        let ok = SliceSpec {
            t: 0.0,
            bounds: period_box(),
            resolution: 8,
        };
        assert!(matches!(
            charge(&two_form, &ok),
            Err(ChargeError::NotVector(2))
        ));
    }

    /// The duality charge of a circularly polarized wave is the optical
    /// helicity: nonzero (= 2 pi for this unit-amplitude wave over the
    /// period box) and time-independent.
    #[test]
    fn duality_charge_conserved_and_nonzero_on_circular_wave() {
        let ctx = MetricContext::default();
        let sol = circular_wave(ctx);
        let phi = duality_current(&sol);
        let report = conservation_check(&phi, 0.3, 1.1, period_box(), 12).unwrap();
        assert!(
            report.difference <= 1e-6 * report.q1.abs().max(1.0),
            "duality charge drift: {report:?}"
        );
        assert!(
            (report.q1 - TAU).abs() <= 1e-9,
            "helicity {} != 2 pi",
            report.q1
        );
        assert!(report.error_estimate <= 1e-6, "quadrature: {report:?}");
    }

    /// Stress-energy charge along the time translation. With this metric
    /// signature the charge is `-E`; the energy `E` is positive, and for the
    /// linearly polarized catalog wave the closed-form period integral of the
    /// energy density `(E^2 + B^2)/2` (weighted-half field strength) gives
    /// `E = pi / 2` over the box.
    #[test]
    fn stress_energy_charge_gives_positive_energy() {
        let ctx = MetricContext::default();
        let xi0 = &ckv_basis()[0];
        let lin = &plane_wave_catalog(ctx)[0];
        let slice = SliceSpec {
            t: 0.7,
            bounds: period_box(),
            resolution: 12,
        };
        let energy = -charge(&stress_energy_current(xi0, lin), &slice).unwrap();
        assert!(
            (energy - std::f64::consts::FRAC_PI_2).abs() <= 1e-9,
            "linear-wave energy {energy}"
        );
        let circ = circular_wave(ctx);
        let energy = -charge(&stress_energy_current(xi0, &circ), &slice).unwrap();
        assert!(
            (energy - std::f64::consts::PI).abs() <= 1e-9,
            "circular-wave energy {energy}"
        );
        let report =
            conservation_check(&stress_energy_current(xi0, lin), 0.3, 1.1, period_box(), 12)
                .unwrap();
        assert!(report.difference <= 1e-6 * report.q1.abs().max(1.0));
    }

    /// The charge of a curl current vanishes over a periodic box: its time
    /// component is a pure spatial divergence.
    #[test]
    fn curl_current_charge_vanishes_over_periodic_box() {
        let ctx = MetricContext::default();
        let sol = circular_wave(ctx);
        let phi = curl_current(&scaling_theta(&sol));
        let slice = SliceSpec {
            t: 0.4,
            bounds: period_box(),
            resolution: 10,
        };
        let q = charge(&phi, &slice).unwrap();
        assert!(q.abs() <= 1e-8, "curl-current charge {q}");
    }

    #[test]
    fn charge_is_linear() {
        let ctx = MetricContext::default();
        let sol = circular_wave(ctx);
        let phi = duality_current(&sol);
        let psi = stress_energy_current(&ckv_basis()[0], &sol);
        let slice = SliceSpec {
            t: 0.2,
            bounds: period_box(),
            resolution: 8,
        };
        let sum = charge(&phi.add(&psi), &slice).unwrap();
        let parts = charge(&phi, &slice).unwrap() + charge(&psi, &slice).unwrap();
        assert!((sum - parts).abs() <= 1e-12, "{sum} vs {parts}");
    }

    /// Negative control: over a fraction of the current's period the
    /// boundary flux does not cancel and the periodicity spot-check must
    /// reject the box. (The current is quadratic in the wave, so its period
    /// in `x1` is `pi`; a quarter of the wave period breaks it.)
    #[test]
    fn non_periodic_box_is_rejected() {
        let ctx = MetricContext::default();
        let lin = &plane_wave_catalog(ctx)[0];
        let phi = stress_energy_current(&ckv_basis()[0], lin);
        let half = [(0.0, TAU / 4.0), (0.0, 1.0), (0.0, 1.0)];
        let err = conservation_check(&phi, 0.3, 1.1, half, 8).unwrap_err();
        assert!(matches!(err, ChargeError::NotPeriodic { axis: 0, .. }), "{err}");
    }

    /// Resolution doubling on a smooth periodic integrand shows the
    /// high-order convergence of Gauss–Legendre quadrature.
    #[test]
    fn resolution_doubling_converges() {
        let ctx = MetricContext::default();
        let lin = &plane_wave_catalog(ctx)[0];
        let phi = stress_energy_current(&ckv_basis()[0], lin);
        // Closed-form reference: Q = -pi/2 (see the energy test).
        let exact = -std::f64::consts::FRAC_PI_2;
        let at = |res: usize| {
            charge(
                &phi,
                &SliceSpec {
                    t: 0.7,
                    bounds: period_box(),
                    resolution: res,
                },
            )
            .unwrap()
        };
        let e4 = (at(4) - exact).abs();
        let e8 = (at(8) - exact).abs();
        let e16 = (at(16) - exact).abs();
        assert!(e8 < 1e-2 * e4, "4 -> 8 nodes: {e4} -> {e8}");
        assert!(e16 <= e8, "8 -> 16 nodes: {e8} -> {e16}");
        assert!(e16 <= 1e-9, "16-node error {e16}");
    }

    /// The quadrature path of the scaling formula agrees with the closed
    /// form on a pair of declared homogeneity degree.
    #[test]
    fn scaling_formula_quadrature_matches_closed_form() {
        let ctx = MetricContext::default();
        let sol = circular_wave(ctx);
        // (A, A') is the scaling characteristic: degree 1 in the solution.
        let closed = scaling_formula(&sol.a, &sol.aprime, &sol, 1);
        let quad = scaling_formula_quadrature(&sol.a, &sol.aprime, &sol, 1);
        let points: Vec<[f64; 4]> = vec![
            [0.3, 0.9, -0.4, 1.7],
            [-1.1, 0.2, 0.8, -0.6],
            [0.0, 2.5, 1.0, 0.1],
        ];
        let diff = quad.sub(&closed).max_abs_at(&points);
        let scale = closed.max_abs_at(&points).max(1.0);
        assert!(diff <= 1e-12 * scale, "quadrature mismatch {diff}");
    }
}
