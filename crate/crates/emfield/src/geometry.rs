//! Conformal Killing vectors and Killing–Yano 2-forms on Minkowski space.
//!
//! A conformal Killing vector (CKV) is parameterized exactly by
//!
//! ```text
//! xi^mu = k1^mu + k2^mu_nu x^nu + k3 x^mu + (k4.x) x^mu - (1/2) k4^mu (x.x)
//! ```
//!
//! with `k1` a translation, antisymmetric `k2` a rotation/boost, `k3` a
//! dilation, and `k4` a special conformal parameter — 15 dimensions in all.
//! The homothetic subfamily (`k4 = 0`) is 11-dimensional.
//!
//! Two derived quantities appear throughout the symmetry catalog:
//! the curl `zeta_{mu nu} = -(1/2) d_[mu xi_nu]` (weighted bracket) and the
//! expansion `Omega = (1/2) d_mu xi^mu`, normalized so that
//! `L_xi eta = Omega eta`.
//!
//! A Killing–Yano 2-form solves `d_(sigma Y_mu) nu = 0` and on flat space is
//!
//! ```text
//! Y_{mu nu} = y1_{mu nu} + epsilon_{mu nu sigma tau} c2^sigma x^tau
//! ```
//!
//! (6 constant + 4 linear = 10 dimensions). The two families are linked by
//! `Y = *zeta`, which is the geometric form behind the nonlocal symmetries
//! and currents verified in this crate.
//!
//! All parameters are exact rationals; fields can be instantiated on either
//! scalar backend.

use crate::jet::{divergence, exterior_d, lie_derivative, JetField};
use crate::linalg::Mat;
use crate::poly::{monomials_up_to, Poly};
use crate::scalar::{Rat, Scalar};
use crate::tensor::{antisym2_from_upper, metric_dd, MetricContext, Tensor, Var, DIM};

/// Convert a rational polynomial tensor into a field over any scalar backend.
pub fn field_from_rat_poly<S: Scalar>(t: &Tensor<Poly<Rat>>) -> JetField<S> {
    JetField::from_poly(Tensor {
        var: t.var.clone(),
        data: t.data.iter().map(|p| p.map(S::from_rat)).collect(),
    })
}

/// Conformal Killing vector parameters (all exact rationals; vector
/// components are contravariant, `k2` is stored with both slots down).
#[derive(Clone, PartialEq, Debug)]
pub struct ConformalKilling {
    pub k1: [Rat; 4],
    pub k2: Tensor<Rat>,
    pub k3: Rat,
    pub k4: [Rat; 4],
}

fn dot_down<S: Scalar>(v: &[Rat; 4]) -> impl Fn(usize) -> S + '_ {
    // v_mu = eta_{mu nu} v^nu: sign flip on the time component.
    move |mu| {
        let s = S::from_rat(&v[mu]);
        if mu == 0 {
            s.neg()
        } else {
            s
        }
    }
}

impl ConformalKilling {
    pub fn zero() -> Self {
        ConformalKilling {
            k1: std::array::from_fn(|_| Rat::int(0)),
            k2: Tensor::zeros(vec![Var::Down, Var::Down]),
            k3: Rat::int(0),
            k4: std::array::from_fn(|_| Rat::int(0)),
        }
    }

    pub fn translation(k1: [Rat; 4]) -> Self {
        ConformalKilling {
            k1,
            ..Self::zero()
        }
    }

    /// Rotation/boost with antisymmetric down-down parameter `k2`.
    pub fn rotation(k2: Tensor<Rat>) -> Self {
        assert_eq!(k2.var, vec![Var::Down, Var::Down]);
        assert_eq!(k2.antisymmetrize(&[0, 1]), k2, "k2 must be antisymmetric");
        ConformalKilling {
            k2,
            ..Self::zero()
        }
    }

    pub fn dilation(k3: Rat) -> Self {
        ConformalKilling {
            k3,
            ..Self::zero()
        }
    }

    /// Special (proper) conformal vector with parameter `k4`.
    pub fn special(k4: [Rat; 4]) -> Self {
        ConformalKilling {
            k4,
            ..Self::zero()
        }
    }

    /// `true` when the vector is homothetic (no special conformal part).
    pub fn is_homothetic(&self) -> bool {
        self.k4.iter().all(Rat::is_zero)
    }

    /// The homothetic part `(k1, k2, k3)` of this CKV.
    pub fn homothetic_part(&self) -> Self {
        ConformalKilling {
            k4: std::array::from_fn(|_| Rat::int(0)),
            ..self.clone()
        }
    }

    /// The special conformal part (`k4` only).
    pub fn special_part(&self) -> Self {
        Self::special(self.k4.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        ConformalKilling {
            k1: std::array::from_fn(|i| self.k1[i].add(&o.k1[i])),
            k2: self.k2.add(&o.k2),
            k3: self.k3.add(&o.k3),
            k4: std::array::from_fn(|i| self.k4[i].add(&o.k4[i])),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        ConformalKilling {
            k1: std::array::from_fn(|i| self.k1[i].mul(c)),
            k2: self.k2.scale(c),
            k3: self.k3.mul(c),
            k4: std::array::from_fn(|i| self.k4[i].mul(c)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.k1.iter().all(Rat::is_zero)
            && self.k2.is_zero()
            && self.k3.is_zero()
            && self.k4.iter().all(Rat::is_zero)
    }

    /// The vector field `xi^mu` as a rank-1 contravariant polynomial field.
    pub fn xi_poly(&self) -> Tensor<Poly<Rat>> {
        let k2u = self.k2.raise(0); // k2^mu_nu
        let lower4 = dot_down::<Rat>(&self.k4);
        Tensor::from_fn(vec![Var::Up], |idx| {
            let mu = idx[0];
            let mut p = Poly::constant(self.k1[mu].clone());
            for nu in 0..DIM {
                p = p.add(&Poly::var(nu).scale(k2u.get(&[mu, nu])));
            }
            p = p.add(&Poly::var(mu).scale(&self.k3));
            // (k4.x) x^mu
            for nu in 0..DIM {
                let c = lower4(nu);
                p = p.add(&Poly::var(nu).mul(&Poly::var(mu)).scale(&c));
            }
            // -(1/2) k4^mu (x.x)
            for nu in 0..DIM {
                let sign = Rat::int(crate::tensor::MetricContext::eta_sign(nu));
                let c = self.k4[mu].mul(&sign).mul(&Rat::ratio(-1, 2));
                p = p.add(&Poly::var(nu).mul(&Poly::var(nu)).scale(&c));
            }
            p
        })
    }

    /// The vector field on a chosen scalar backend.
    pub fn xi_field<S: Scalar>(&self) -> JetField<S> {
        field_from_rat_poly(&self.xi_poly())
    }

    /// Curl 2-form `zeta_{mu nu} = -(1/2) d_[mu xi_nu]` (weighted bracket)
    /// and expansion scalar `Omega = (1/2) d_mu xi^mu`, as fields.
    ///
    /// Locked values: `zeta = (1/2) k2 - k4 wedge x`, `Omega = 2 k3 + 2 k4.x`.
    pub fn curl_div<S: Scalar>(&self) -> (JetField<S>, JetField<S>) {
        let xi = self.xi_field::<S>();
        let zeta = exterior_d(&xi.lower(0)).scale_rat(-1, 2);
        let omega = divergence(&xi, 0).scale_rat(1, 2);
        (zeta, omega)
    }

    /// Conformal Killing residual `L_xi eta - Omega eta`; identically zero
    /// exactly when the parameters define a CKV.
    pub fn residual<S: Scalar>(&self) -> JetField<S> {
        let xi = self.xi_field::<S>();
        let eta = JetField::from_tensor(&metric_dd::<S>());
        let (_, omega) = self.curl_div::<S>();
        lie_derivative(&xi, &eta).sub(&omega.mul_contract(&eta, &[]))
    }

    /// Flatten to the 15 coordinates `(k1 | k2 upper triangle | k3 | k4)`.
    pub fn coords(&self) -> Vec<Rat> {
        let mut v: Vec<Rat> = self.k1.to_vec();
        for (i, j) in UPPER_PAIRS {
            v.push(self.k2.get(&[i, j]).clone());
        }
        v.push(self.k3.clone());
        v.extend(self.k4.iter().cloned());
        v
    }

    /// Rebuild from the 15 coordinates.
    pub fn from_coords(c: &[Rat]) -> Self {
        assert_eq!(c.len(), 15);
        let k1 = std::array::from_fn(|i| c[i].clone());
        let k2 = antisym2_from_upper(&std::array::from_fn(|i| c[4 + i].clone()));
        let k3 = c[10].clone();
        let k4 = std::array::from_fn(|i| c[11 + i].clone());
        ConformalKilling { k1, k2, k3, k4 }
    }
}

const UPPER_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// The 15 basis conformal Killing vectors, in the order: 4 translations,
/// 6 rotations/boosts (`k2` upper-triangle units), 1 dilation, 4 special
/// conformal vectors.
pub fn ckv_basis() -> Vec<ConformalKilling> {
    let mut out = Vec::with_capacity(15);
    for mu in 0..4 {
        let mut k1 = std::array::from_fn(|_| Rat::int(0));
        k1[mu] = Rat::int(1);
        out.push(ConformalKilling::translation(k1));
    }
    for slot in 0..6 {
        let mut c = std::array::from_fn(|_| Rat::int(0));
        c[slot] = Rat::int(1);
        out.push(ConformalKilling::rotation(antisym2_from_upper(&c)));
    }
    out.push(ConformalKilling::dilation(Rat::int(1)));
    for mu in 0..4 {
        let mut k4 = std::array::from_fn(|_| Rat::int(0));
        k4[mu] = Rat::int(1);
        out.push(ConformalKilling::special(k4));
    }
    out
}

/// Lie bracket of vector fields, `bracket(xi1, xi2) := L_{xi1} xi2`, fitted
/// back to CKV parameters. Panics if the result is not in the CKV family
/// (it always is for CKV inputs; this is a guard against bad parameters).
pub fn ckv_commutator(a: &ConformalKilling, b: &ConformalKilling) -> ConformalKilling {
    let lie = lie_derivative(&a.xi_field::<Rat>(), &b.xi_field::<Rat>());
    fit_ckv(lie.as_poly().expect("CKV fields are polynomial"))
}

/// Fit a rank-1 contravariant polynomial field to CKV parameters exactly.
pub fn fit_ckv(v: &Tensor<Poly<Rat>>) -> ConformalKilling {
    let monos = monomials_up_to(2);
    let basis = ckv_basis();
    let rows = monos.len() * DIM;
    let mut m = Mat::zeros(rows, basis.len());
    let mut rhs = vec![Rat::int(0); rows];
    for (col, ckv) in basis.iter().enumerate() {
        let xi = ckv.xi_poly();
        for mu in 0..DIM {
            for (r, e) in monos.iter().enumerate() {
                m.set(mu * monos.len() + r, col, xi.get(&[mu]).coeff(*e));
            }
        }
    }
    for mu in 0..DIM {
        for (r, e) in monos.iter().enumerate() {
            rhs[mu * monos.len() + r] = v.get(&[mu]).coeff(*e);
        }
    }
    let sol = m.solve(&rhs).expect("field is not a conformal Killing vector");
    let mut acc = ConformalKilling::zero();
    for (c, ckv) in sol.iter().zip(&basis) {
        acc = acc.add(&ckv.scale(c));
    }
    // Guard: the fit must reproduce the field exactly (degree > 2 terms or
    // non-CKV degree-2 structure would slip through the coefficient match).
    let diff_zero = {
        let fitted = acc.xi_poly();
        fitted
            .data
            .iter()
            .zip(&v.data)
            .all(|(a, b)| a.sub(b).is_zero())
    };
    assert!(diff_zero, "field is not a conformal Killing vector");
    acc
}

/// Killing–Yano 2-form parameters: constant antisymmetric part `y1` (both
/// slots down) and linear part `epsilon_{mu nu sigma tau} c2^sigma x^tau`.
#[derive(Clone, PartialEq, Debug)]
pub struct KillingYano {
    pub y1: Tensor<Rat>,
    pub c2: [Rat; 4],
}

impl KillingYano {
    pub fn new(y1: Tensor<Rat>, c2: [Rat; 4]) -> Self {
        assert_eq!(y1.var, vec![Var::Down, Var::Down]);
        assert_eq!(y1.antisymmetrize(&[0, 1]), y1, "y1 must be antisymmetric");
        KillingYano { y1, c2 }
    }

    pub fn constant(y1: Tensor<Rat>) -> Self {
        Self::new(y1, std::array::from_fn(|_| Rat::int(0)))
    }

    /// The 2-form as a polynomial tensor (orientation-dependent through the
    /// epsilon symbol).
    pub fn y_poly(&self, ctx: MetricContext) -> Tensor<Poly<Rat>> {
        let eps = crate::tensor::epsilon_dddd::<Rat>(ctx);
        Tensor::from_fn(vec![Var::Down, Var::Down], |idx| {
            let (mu, nu) = (idx[0], idx[1]);
            let mut p = Poly::constant(self.y1.get(&[mu, nu]).clone());
            for sigma in 0..DIM {
                // epsilon_{mu nu sigma tau} c2^sigma x^tau: the contravariant
                // c2 pairs naturally with the covariant epsilon slot.
                let cs = self.c2[sigma].clone();
                for tau in 0..DIM {
                    let e = eps.get(&[mu, nu, sigma, tau]);
                    if !e.is_zero() {
                        p = p.add(&Poly::var(tau).scale(&e.mul(&cs)));
                    }
                }
            }
            p
        })
    }

    pub fn y_field<S: Scalar>(&self, ctx: MetricContext) -> JetField<S> {
        field_from_rat_poly(&self.y_poly(ctx))
    }

    /// Killing–Yano residual `d_(sigma Y_mu) nu` (weighted symmetrization of
    /// the derivative slot with the first form slot); identically zero
    /// exactly for a Killing–Yano tensor.
    pub fn residual<S: Scalar>(&self, ctx: MetricContext) -> JetField<S> {
        self.y_field::<S>(ctx).total_derivative().symmetrize(&[0, 1])
    }

    /// Flatten to 10 coordinates `(y1 upper triangle | c2)`.
    pub fn coords(&self) -> Vec<Rat> {
        let mut v = Vec::with_capacity(10);
        for (i, j) in UPPER_PAIRS {
            v.push(self.y1.get(&[i, j]).clone());
        }
        v.extend(self.c2.iter().cloned());
        v
    }
}

/// The 10 basis Killing–Yano tensors: 6 constant 2-forms, then 4 linear ones.
pub fn ky_basis() -> Vec<KillingYano> {
    let mut out = Vec::with_capacity(10);
    for slot in 0..6 {
        let mut c = std::array::from_fn(|_| Rat::int(0));
        c[slot] = Rat::int(1);
        out.push(KillingYano::constant(antisym2_from_upper(&c)));
    }
    for mu in 0..4 {
        let mut c2 = std::array::from_fn(|_| Rat::int(0));
        c2[mu] = Rat::int(1);
        out.push(KillingYano::new(
            Tensor::zeros(vec![Var::Down, Var::Down]),
            c2,
        ));
    }
    out
}

/// Killing–Yano tensor `Y = *zeta` associated with the rotation + special
/// conformal parts of a CKV: `y1 = (1/2) * k2`, `c2 = -(1/2) k4`.
pub fn ky_from_ckv(xi: &ConformalKilling, ctx: MetricContext) -> KillingYano {
    let y1 = xi.k2.hodge_dual2(ctx).scale(&Rat::ratio(1, 2));
    let c2 = std::array::from_fn(|i| xi.k4[i].mul(&Rat::ratio(-1, 2)));
    KillingYano::new(y1, c2)
}

/// Inverse of [`ky_from_ckv`]: the CKV (rotation + special parts only) whose
/// curl dualizes to the given Killing–Yano tensor:
/// `k2 = -2 (*y1)`, `k4 = -2 c2`.
pub fn ckv_from_ky(y: &KillingYano, ctx: MetricContext) -> ConformalKilling {
    let k2 = y.y1.hodge_dual2(ctx).scale(&Rat::int(-2));
    let k4 = std::array::from_fn(|i| y.c2[i].mul(&Rat::int(-2)));
    ConformalKilling {
        k1: std::array::from_fn(|_| Rat::int(0)),
        k2,
        k3: Rat::int(0),
        k4,
    }
}

/// Commutator of two antisymmetric (down-down) internal parameters:
/// `[g1, g2]^{mu nu} = 2 g1^{sigma [mu} g2^{nu]}_sigma`, returned with both
/// slots down.
pub fn skew_commutator(g1: &Tensor<Rat>, g2: &Tensor<Rat>) -> Tensor<Rat> {
    assert_eq!(g1.var, vec![Var::Down, Var::Down]);
    assert_eq!(g2.var, vec![Var::Down, Var::Down]);
    // term^{mu nu} = g1^{sigma mu} g2^nu_sigma
    let t = g1
        .raise(0)
        .raise(1)
        .tensor_prod(&g2.raise(0))
        .contract(0, 3);
    let anti = t.sub(&t.permute(&[1, 0]));
    anti.lower(0).lower(1)
}
