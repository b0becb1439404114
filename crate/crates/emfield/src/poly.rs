//! Exact multivariate polynomials in the four spacetime coordinates.
//!
//! Polynomials are the workhorse of the exact backend: conformal Killing
//! vectors, Killing–Yano tensors, polynomial Maxwell solutions, and every
//! residual derived from them are polynomials in `x^0..x^3`. A residual that
//! normalizes to the empty term map is *identically* zero, which is what turns
//! a sweep into a proof rather than a spot check.

use crate::scalar::Scalar;
use std::collections::BTreeMap;

/// Exponent vector for a monomial `x0^e0 x1^e1 x2^e2 x3^e3`.
pub type Expo = [u8; 4];

/// Sparse multivariate polynomial in the four coordinates.
///
/// Terms with zero coefficient are never stored, so `terms.is_empty()`
/// is an exact identically-zero test when the scalar type is exact.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<S> {
    pub terms: BTreeMap<Expo, S>,
}

impl<S: Scalar> Poly<S> {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: S) -> Self {
        let mut p = Poly::zero();
        p.add_term([0; 4], c);
        p
    }

    pub fn one() -> Self {
        Poly::constant(S::one())
    }

    /// The coordinate `x^axis`.
    pub fn var(axis: usize) -> Self {
        let mut e = [0u8; 4];
        e[axis] = 1;
        let mut p = Poly::zero();
        p.add_term(e, S::one());
        p
    }

    /// Single monomial `c * x^expo`.
    pub fn monomial(expo: Expo, c: S) -> Self {
        let mut p = Poly::zero();
        p.add_term(expo, c);
        p
    }

    /// Add `c * x^expo` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, expo: Expo, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&expo) {
            None => {
                self.terms.insert(expo, c);
            }
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(expo, s);
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&k| k as usize).sum())
            .max()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.neg());
        }
        r
    }

    pub fn neg(&self) -> Self {
        let mut r = Poly::zero();
        for (e, c) in &self.terms {
            r.add_term(*e, c.neg());
        }
        r
    }

    pub fn scale(&self, k: &S) -> Self {
        let mut r = Poly::zero();
        for (e, c) in &self.terms {
            r.add_term(*e, c.mul(k));
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Poly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let mut e = *ea;
                for i in 0..4 {
                    e[i] += eb[i];
                }
                r.add_term(e, ca.mul(cb));
            }
        }
        r
    }

    /// Partial derivative with respect to `x^axis`.
    pub fn deriv(&self, axis: usize) -> Self {
        let mut r = Poly::zero();
        for (e, c) in &self.terms {
            if e[axis] == 0 {
                continue;
            }
            let mut en = *e;
            en[axis] -= 1;
            r.add_term(en, c.mul(&S::from_int(e[axis] as i64)));
        }
        r
    }

    pub fn eval(&self, x: &[S; 4]) -> S {
        let mut acc = S::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t = t.mul(&x[i]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Coefficient of `x^expo` (zero when absent).
    pub fn coeff(&self, expo: Expo) -> S {
        self.terms.get(&expo).cloned().unwrap_or_else(S::zero)
    }

    /// The homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: usize) -> Self {
        let mut r = Poly::zero();
        for (e, c) in &self.terms {
            if e.iter().map(|&k| k as usize).sum::<usize>() == d {
                r.add_term(*e, c.clone());
            }
        }
        r
    }

    /// Map coefficients into another scalar type.
    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Poly<T> {
        let mut r = Poly::zero();
        for (e, c) in &self.terms {
            r.add_term(*e, f(c));
        }
        r
    }

    /// Largest coefficient magnitude, for float-backend diagnostics.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.abs_f64())
            .fold(0.0, f64::max)
    }
}

/// Polynomials form a commutative ring; implementing [`Scalar`] for them lets
/// every tensor operation (contraction, raising, antisymmetrization, Hodge
/// duals) apply unchanged to polynomial-valued tensors, which is how the
/// exact backend keeps whole fields symbolic. Division is only defined by
/// (nonzero) constants — that is the only division the tensor layer performs
/// (factorial weights in the (anti)symmetrization projectors).
impl<S: Scalar> Scalar for Poly<S> {
    const EXACT: bool = S::EXACT;

    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn from_int(n: i64) -> Self {
        Poly::constant(S::from_int(n))
    }
    fn from_rat(r: &crate::scalar::Rat) -> Self {
        Poly::constant(S::from_rat(r))
    }

    fn add(&self, o: &Self) -> Self {
        Poly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Poly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Poly::mul(self, o)
    }
    fn div(&self, o: &Self) -> Self {
        let d = o.degree();
        assert!(
            d == Some(0),
            "polynomial division is only defined by nonzero constants"
        );
        let c = o.coeff([0; 4]);
        self.scale(&S::one().div(&c))
    }
    fn neg(&self) -> Self {
        Poly::neg(self)
    }

    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn abs_f64(&self) -> f64 {
        self.max_abs_coeff()
    }
    fn to_f64(&self) -> f64 {
        self.coeff([0; 4]).to_f64()
    }
}

/// All exponent vectors of total degree exactly `d`.
pub fn monomials_of_degree(d: usize) -> Vec<Expo> {
    let mut out = Vec::new();
    for e0 in 0..=d {
        for e1 in 0..=(d - e0) {
            for e2 in 0..=(d - e0 - e1) {
                let e3 = d - e0 - e1 - e2;
                out.push([e0 as u8, e1 as u8, e2 as u8, e3 as u8]);
            }
        }
    }
    out
}

/// All exponent vectors of total degree at most `d`.
pub fn monomials_up_to(d: usize) -> Vec<Expo> {
    (0..=d).flat_map(monomials_of_degree).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    fn x(i: usize) -> Poly<Rat> {
        Poly::var(i)
    }

    #[test]
    fn ring_identities() {
        // (x0 + x1)^2 = x0^2 + 2 x0 x1 + x1^2
        let s = x(0).add(&x(1));
        let sq = s.mul(&s);
        assert_eq!(sq.coeff([2, 0, 0, 0]), Rat::int(1));
        assert_eq!(sq.coeff([1, 1, 0, 0]), Rat::int(2));
        assert_eq!(sq.coeff([0, 2, 0, 0]), Rat::int(1));
        assert!(s.sub(&s).is_zero());
    }

    #[test]
    fn derivative_and_eval() {
        // d/dx1 (x0 x1^3) = 3 x0 x1^2, value at (2,1,0,0) is 6.
        let p = x(0).mul(&x(1)).mul(&x(1)).mul(&x(1));
        let d = p.deriv(1);
        assert_eq!(d.coeff([1, 2, 0, 0]), Rat::int(3));
        let v = d.eval(&[Rat::int(2), Rat::int(1), Rat::int(0), Rat::int(0)]);
        assert_eq!(v, Rat::int(6));
        // Mixed partials commute.
        assert_eq!(p.deriv(0).deriv(1), p.deriv(1).deriv(0));
    }

    #[test]
    fn homogeneous_split_recombines() {
        let p = Poly::one().add(&x(2)).add(&x(0).mul(&x(3)));
        let recomposed = (0..=2)
            .map(|d| p.homogeneous_part(d))
            .fold(Poly::zero(), |a, b| a.add(&b));
        assert_eq!(recomposed, p);
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(0).len(), 1);
        assert_eq!(monomials_of_degree(1).len(), 4);
        assert_eq!(monomials_of_degree(2).len(), 10);
        assert_eq!(monomials_up_to(2).len(), 15);
    }
}
