//! Forward-mode automatic differentiation via truncated multivariate Taylor
//! jets.
//!
//! An [`AdJet`] generalizes nested dual numbers: it carries the value of an
//! expression together with all mixed partial derivatives up to a requested
//! total order (default 3, the deepest derivative any residual in this crate
//! needs). Derivatives of composed elementary functions (`+`, `*`, `sin`,
//! `cos`, `exp`) are exact to machine precision — there is no step size.
//!
//! Internally the jet is a polynomial in the displacement from the expansion
//! point whose `x^alpha` coefficient is `d^alpha f / alpha!`; multiplication
//! is polynomial multiplication truncated at the jet order, and an outer
//! function `g` is composed by summing its Taylor series in the
//! value-free part of the argument.
//!
//! A central-difference oracle with Richardson extrapolation lives in the
//! test module; it independently validates the AD derivatives, and is kept
//! out of the production path.

use crate::poly::{Expo, Poly};

/// Truncated Taylor jet of an `f64`-valued expression in the four spacetime
/// coordinates.
#[derive(Clone, Debug)]
pub struct AdJet {
    /// Truncation order: all coefficients with total degree `<= order` are
    /// tracked exactly.
    pub order: usize,
    /// Taylor coefficients in displacement variables.
    pub coeffs: Poly<f64>,
}

fn truncate(p: Poly<f64>, order: usize) -> Poly<f64> {
    let mut out = Poly::zero();
    for (e, c) in &p.terms {
        if e.iter().map(|&k| k as usize).sum::<usize>() <= order {
            out.add_term(*e, *c);
        }
    }
    out
}

impl AdJet {
    pub fn constant(v: f64, order: usize) -> Self {
        AdJet {
            order,
            coeffs: Poly::constant(v),
        }
    }

    /// The coordinate `x^axis` seeded at the value `v`.
    pub fn var(axis: usize, v: f64, order: usize) -> Self {
        let mut coeffs = Poly::constant(v);
        if order >= 1 {
            coeffs = coeffs.add(&Poly::var(axis));
        }
        AdJet { order, coeffs }
    }

    pub fn value(&self) -> f64 {
        self.coeffs.coeff([0; 4])
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.order, o.order);
        AdJet {
            order: self.order,
            coeffs: self.coeffs.add(&o.coeffs),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.order, o.order);
        AdJet {
            order: self.order,
            coeffs: self.coeffs.sub(&o.coeffs),
        }
    }

    pub fn neg(&self) -> Self {
        AdJet {
            order: self.order,
            coeffs: self.coeffs.neg(),
        }
    }

    pub fn scale(&self, k: f64) -> Self {
        AdJet {
            order: self.order,
            coeffs: self.coeffs.scale(&k),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.order, o.order);
        AdJet {
            order: self.order,
            coeffs: truncate(self.coeffs.mul(&o.coeffs), self.order),
        }
    }

    /// Compose with an outer analytic function given the sequence of its
    /// derivatives `g, g', g'', ...` evaluated at `self.value()`.
    fn compose(&self, outer_derivs: &[f64]) -> Self {
        // Split off the value: w has no constant term, so w^j raises the
        // minimal degree and the series below terminates at the jet order.
        let v = self.value();
        let mut w = self.coeffs.clone();
        w.add_term([0; 4], -v);
        let mut acc = Poly::constant(outer_derivs[0]);
        let mut wpow = Poly::one();
        let mut fact = 1.0;
        for (j, &gj) in outer_derivs.iter().enumerate().skip(1) {
            wpow = truncate(wpow.mul(&w), self.order);
            fact *= j as f64;
            acc = acc.add(&wpow.scale(&(gj / fact)));
        }
        AdJet {
            order: self.order,
            coeffs: truncate(acc, self.order),
        }
    }

    pub fn sin(&self) -> Self {
        let v = self.value();
        let cycle = [v.sin(), v.cos(), -v.sin(), -v.cos()];
        let derivs: Vec<f64> = (0..=self.order).map(|j| cycle[j % 4]).collect();
        self.compose(&derivs)
    }

    pub fn cos(&self) -> Self {
        let v = self.value();
        let cycle = [v.cos(), -v.sin(), -v.cos(), v.sin()];
        let derivs: Vec<f64> = (0..=self.order).map(|j| cycle[j % 4]).collect();
        self.compose(&derivs)
    }

    pub fn exp(&self) -> Self {
        let derivs = vec![self.value().exp(); self.order + 1];
        self.compose(&derivs)
    }

    /// Mixed partial derivative for a tuple of axes (length up to `order`).
    /// The result is symmetric in the tuple by construction.
    pub fn deriv(&self, axes: &[usize]) -> f64 {
        assert!(axes.len() <= self.order, "derivative deeper than jet order");
        let mut expo: Expo = [0; 4];
        for &a in axes {
            expo[a] += 1;
        }
        // d^alpha f = alpha! * coeff(alpha)
        let mut fact = 1.0;
        for &k in &expo {
            for m in 1..=(k as usize) {
                fact *= m as f64;
            }
        }
        self.coeffs.coeff(expo) * fact
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Tolerance for AD vs. Richardson-extrapolated central differences.
    /// Central differences at step 1e-4 with one Richardson level are good
    /// to ~1e-8 relative on well-scaled third derivatives.
    const FD_TOL: f64 = 1e-7;

    /// Central finite difference of `f` along `axis`, Richardson-extrapolated.
    fn fd_deriv(f: &dyn Fn(&[f64; 4]) -> f64, x: &[f64; 4], axis: usize) -> f64 {
        let d = |h: f64| {
            let mut xp = *x;
            let mut xm = *x;
            xp[axis] += h;
            xm[axis] -= h;
            (f(&xp) - f(&xm)) / (2.0 * h)
        };
        let h = 1e-4;
        (4.0 * d(h / 2.0) - d(h)) / 3.0
    }

    fn test_fn(x: &[f64; 4]) -> f64 {
        (x[0] - 2.0 * x[1]).sin() * (0.5 * x[2] + x[3]).cos() + (0.3 * x[0] * x[3]).exp()
    }

    fn test_jet(x: &[f64; 4], order: usize) -> AdJet {
        let v: Vec<AdJet> = (0..4).map(|i| AdJet::var(i, x[i], order)).collect();
        let a = v[0].sub(&v[1].scale(2.0)).sin();
        let b = v[2].scale(0.5).add(&v[3]).cos();
        let c = v[0].scale(0.3).mul(&v[3]).exp();
        a.mul(&b).add(&c)
    }

    #[test]
    fn value_matches_direct_evaluation() {
        let x = [0.3, -0.7, 1.1, 0.2];
        assert!((test_jet(&x, 3).value() - test_fn(&x)).abs() < 1e-14);
    }

    #[test]
    fn first_derivatives_match_fd_oracle() {
        let x = [0.3, -0.7, 1.1, 0.2];
        let jet = test_jet(&x, 3);
        for axis in 0..4 {
            let ad = jet.deriv(&[axis]);
            let fd = fd_deriv(&test_fn, &x, axis);
            assert!((ad - fd).abs() < FD_TOL, "axis {axis}: {ad} vs {fd}");
        }
    }

    #[test]
    fn higher_derivatives_match_fd_of_ad() {
        // Validate order-m derivatives against finite differences of the
        // order-(m-1) AD derivatives, which isolates each differentiation
        // level.
        let x = [0.3, -0.7, 1.1, 0.2];
        let jet = test_jet(&x, 3);
        for a in 0..4 {
            for b in a..4 {
                let ad = jet.deriv(&[a, b]);
                let lower = |y: &[f64; 4]| test_jet(y, 1).deriv(&[b]);
                let fd = fd_deriv(&lower, &x, a);
                assert!((ad - fd).abs() < FD_TOL, "({a},{b}): {ad} vs {fd}");
                for c in b..4 {
                    let ad3 = jet.deriv(&[a, b, c]);
                    let lower2 = |y: &[f64; 4]| test_jet(y, 2).deriv(&[b, c]);
                    let fd3 = fd_deriv(&lower2, &x, a);
                    assert!((ad3 - fd3).abs() < FD_TOL, "({a},{b},{c}): {ad3} vs {fd3}");
                }
            }
        }
    }

    #[test]
    fn mixed_partials_symmetric() {
        let x = [0.9, 0.1, -0.4, 0.6];
        let jet = test_jet(&x, 3);
        for a in 0..4 {
            for b in 0..4 {
                let ab = jet.deriv(&[a, b]);
                let ba = jet.deriv(&[b, a]);
                assert_eq!(ab, ba);
            }
        }
    }

    #[test]
    fn trig_pythagoras_in_jet_arithmetic() {
        let x = [0.2, 0.5, -0.3, 0.8];
        let t = AdJet::var(0, x[0], 3).add(&AdJet::var(1, x[1], 3));
        let s = t.sin();
        let c = t.cos();
        let one = s.mul(&s).add(&c.mul(&c));
        assert!((one.value() - 1.0).abs() < 1e-14);
        for axis in 0..4 {
            assert!(one.deriv(&[axis]).abs() < 1e-13);
        }
    }
}
