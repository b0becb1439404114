//! Exact solution families of the source-free Maxwell equations with joint
//! electric and magnetic potentials.
//!
//! A [`MaxwellSolution`] bundles a field strength `F` with a potential pair
//! `(A, A')` satisfying
//!
//! ```text
//! F = D A,      *F = D A',      d.A = d.A' = 0   (Lorentz gauge)
//! ```
//!
//! so that the Maxwell equations hold automatically: `D F = 0` because `F` is
//! exact, and `d^mu F_{mu nu} = 0` because `*F` is exact. Residual gauge
//! freedom is by gradients of wave-equation solutions.
//!
//! Three families are provided:
//!
//! * **Plane waves** — `A = a sin/cos(k.x)` with exact rational null wave
//!   vector and transverse polarization; the dual polarization `a'` is
//!   solved exactly from `k ^ a' = *(k ^ a)`. Evaluated on the AD backend.
//! * **Polynomial solutions** — a rational basis of all polynomial field
//!   strengths of a given homogeneous degree, computed as the null space of
//!   the Maxwell constraint matrix; potentials come from the homotopy
//!   formula below and are regauged to Lorentz gauge.
//! * **Custom** — explicit polynomial potentials supplied by the user
//!   (e.g. from a JSON solution spec), validated on construction.
//!
//! The homotopy potential (`cronstrom_potential`) inverts `D` along rays
//! from the origin: for a closed 2-form with homogeneous components `F_d`,
//! `A = sum_d (2/(d+2)) x . F_d`, which satisfies `D A = F` and `x . A = 0`
//! exactly. The per-degree coefficient is the closed form of the
//! dilation-operator series for the weighted antisymmetrization convention
//! used here, and is pinned by the exactness tests.

use crate::jet::{divergence, exterior_d, hodge2, jets_from_scalar_jets, JetField};
use crate::dual::AdJet;
use crate::linalg::Mat;
use crate::poly::{monomials_of_degree, monomials_up_to, Expo, Poly};
use crate::scalar::{Rat, Scalar};
use crate::tensor::{MetricContext, Tensor, Var, DIM};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolutionError {
    #[error("wave vector is not null: k.k = {0}")]
    NotNull(String),
    #[error("polarization is not transverse: k.a = {0}")]
    NotTransverse(String),
    #[error("no dual polarization solves k ^ a' = *(k ^ a)")]
    NoDualPolarization,
    #[error("field strength is not closed (D F != 0)")]
    NotClosed,
    #[error("no polynomial gauge function solves box chi = d.A")]
    NoGaugeFunction,
    #[error("custom potentials do not satisfy the duality relation *DA = DA'")]
    DualityRelationFails,
    #[error("custom potentials are not in Lorentz gauge")]
    NotLorentz,
    #[error("polynomial solution index {index} out of range (basis size {size})")]
    BadIndex { index: usize, size: usize },
}

/// Trigonometric profile of a plane wave.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    Sin,
    Cos,
}

/// Exact data defining a plane wave: covariant wave vector `k_mu` (null),
/// covariant polarization `a_mu` (transverse), and profile.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct PlaneWaveSpec {
    pub k: [Rat; 4],
    pub a: [Rat; 4],
    pub profile: Profile,
}

/// A source-free Maxwell solution with its joint potential pair.
#[derive(Clone)]
pub struct MaxwellSolution<S> {
    pub id: String,
    pub ctx: MetricContext,
    /// Field strength `F_{mu nu}` (antisymmetric, both slots down).
    pub f: JetField<S>,
    /// Electric-side potential `A_mu` with `F = D A`.
    pub a: JetField<S>,
    /// Magnetic-side potential `A'_mu` with `*F = D A'`.
    pub aprime: JetField<S>,
    /// Optional residual gauge functions (wave-equation solutions).
    pub chi: Option<JetField<S>>,
    pub chi_prime: Option<JetField<S>>,
    /// Whether the potential pair is in Lorentz gauge.
    pub lorentz: bool,
}

impl<S: Scalar> MaxwellSolution<S> {
    /// Hodge dual of the field strength.
    pub fn fstar(&self) -> JetField<S> {
        hodge2(&self.f, self.ctx)
    }

    /// Named residual fields; all must vanish for a valid Lorentz-gauge
    /// solution (on the polynomial backend: identically, as polynomials).
    pub fn residual_fields(&self) -> Vec<(&'static str, JetField<S>)> {
        let mut out = vec![
            ("maxwell.divergence", divergence(&self.f, 0)),
            ("maxwell.closure", exterior_d(&self.f)),
            ("potential.curl", exterior_d(&self.a).sub(&self.f)),
            (
                "potential.dual-curl",
                exterior_d(&self.aprime).sub(&self.fstar()),
            ),
        ];
        if self.lorentz {
            out.push(("gauge.lorentz", divergence(&self.a, 0)));
            out.push(("gauge.lorentz-dual", divergence(&self.aprime, 0)));
        }
        if let Some(chi) = &self.chi {
            // box chi = d.A for the stored residual gauge function.
            let box_chi = divergence(&chi.total_derivative(), 0);
            out.push(("gauge.wave", box_chi.sub(&divergence(&self.a, 0))));
        }
        if let Some(chi) = &self.chi_prime {
            let box_chi = divergence(&chi.total_derivative(), 0);
            out.push(("gauge.wave-dual", box_chi.sub(&divergence(&self.aprime, 0))));
        }
        out
    }

    /// Scale the whole solution (fields and potentials) by a constant.
    pub fn scaled(&self, c: &S) -> Self {
        MaxwellSolution {
            id: format!("{}*scaled", self.id),
            ctx: self.ctx,
            f: self.f.scale(c),
            a: self.a.scale(c),
            aprime: self.aprime.scale(c),
            chi: self.chi.as_ref().map(|x| x.scale(c)),
            chi_prime: self.chi_prime.as_ref().map(|x| x.scale(c)),
            lorentz: self.lorentz,
        }
    }

    /// Linear superposition with another solution (same orientation).
    pub fn superpose(&self, o: &Self) -> Self {
        assert_eq!(self.ctx, o.ctx);
        MaxwellSolution {
            id: format!("{}+{}", self.id, o.id),
            ctx: self.ctx,
            f: self.f.add(&o.f),
            a: self.a.add(&o.a),
            aprime: self.aprime.add(&o.aprime),
            chi: None,
            chi_prime: None,
            lorentz: self.lorentz && o.lorentz,
        }
    }

    /// The duality-rotated solution: `(F, A, A') -> (*F, A', -A)`.
    pub fn duality_rotated(&self) -> Self {
        MaxwellSolution {
            id: format!("{}*dual", self.id),
            ctx: self.ctx,
            f: self.fstar(),
            a: self.aprime.clone(),
            aprime: self.a.neg(),
            chi: self.chi_prime.clone(),
            chi_prime: self.chi.as_ref().map(|c| c.neg()),
            lorentz: self.lorentz,
        }
    }
}

fn eta_dot(u: &[Rat; 4], v: &[Rat; 4]) -> Rat {
    let mut acc = u[0].mul(&v[0]).neg();
    for i in 1..4 {
        acc = acc.add(&u[i].mul(&v[i]));
    }
    acc
}

/// Wedge of two covariant vectors with the weighted convention:
/// `(u ^ v)_{mu nu} = (u_mu v_nu - u_nu v_mu)/2`.
fn wedge(u: &[Rat; 4], v: &[Rat; 4]) -> Tensor<Rat> {
    Tensor::from_fn(vec![Var::Down, Var::Down], |idx| {
        u[idx[0]]
            .mul(&v[idx[1]])
            .sub(&u[idx[1]].mul(&v[idx[0]]))
            .mul(&Rat::ratio(1, 2))
    })
}

/// Solve `k ^ aprime = *(k ^ a)` exactly for the dual polarization.
pub fn dual_polarization(
    k: &[Rat; 4],
    a: &[Rat; 4],
    ctx: MetricContext,
) -> Result<[Rat; 4], SolutionError> {
    // Contravariant k and a enter the duality relation only through the
    // covariant wedge; work directly with covariant components.
    let target = wedge(k, a).hodge_dual2(ctx);
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let mut m = Mat::zeros(6, 4);
    let mut rhs = vec![Rat::int(0); 6];
    for (row, (mu, nu)) in pairs.into_iter().enumerate() {
        for sigma in 0..4 {
            let mut c = Rat::int(0);
            if sigma == nu {
                c = c.add(&k[mu]);
            }
            if sigma == mu {
                c = c.sub(&k[nu]);
            }
            m.set(row, sigma, c.mul(&Rat::ratio(1, 2)));
        }
        rhs[row] = target.get(&[mu, nu]).clone();
    }
    let sol = m.solve(&rhs).ok_or(SolutionError::NoDualPolarization)?;
    Ok(std::array::from_fn(|i| sol[i].clone()))
}

/// Covector field `c_mu g(k.x)` on the AD backend.
fn trig_covector(coeffs: [f64; 4], k: [f64; 4], profile: Profile) -> JetField<f64> {
    JetField::from_closure(vec![Var::Down], move |x, order| {
        let mut phase = AdJet::constant(0.0, order);
        for (i, &ki) in k.iter().enumerate() {
            phase = phase.add(&AdJet::var(i, x[i], order).scale(ki));
        }
        let g = match profile {
            Profile::Sin => phase.sin(),
            Profile::Cos => phase.cos(),
        };
        let comps: Vec<AdJet> = coeffs.iter().map(|&c| g.scale(c)).collect();
        jets_from_scalar_jets(vec![Var::Down], &comps, order)
    })
}

/// Construct a plane-wave solution on the floating-point backend.
///
/// Validation is exact (rational): the wave vector must be null and the
/// polarization transverse; the dual polarization is solved exactly and only
/// then converted to `f64`.
pub fn plane_wave(
    spec: &PlaneWaveSpec,
    ctx: MetricContext,
) -> Result<MaxwellSolution<f64>, SolutionError> {
    let kk = eta_dot(&spec.k, &spec.k);
    if !kk.is_zero() {
        return Err(SolutionError::NotNull(kk.to_string()));
    }
    let ka = eta_dot(&spec.k, &spec.a);
    if !ka.is_zero() {
        return Err(SolutionError::NotTransverse(ka.to_string()));
    }
    let aprime = dual_polarization(&spec.k, &spec.a, ctx)?;
    let kf: [f64; 4] = std::array::from_fn(|i| spec.k[i].to_f64());
    let af: [f64; 4] = std::array::from_fn(|i| spec.a[i].to_f64());
    let apf: [f64; 4] = std::array::from_fn(|i| aprime[i].to_f64());
    let a = trig_covector(af, kf, spec.profile);
    let ap = trig_covector(apf, kf, spec.profile);
    let f = exterior_d(&a);
    Ok(MaxwellSolution {
        id: format!(
            "plane-wave[k=({},{},{},{}),{}]",
            spec.k[0],
            spec.k[1],
            spec.k[2],
            spec.k[3],
            match spec.profile {
                Profile::Sin => "sin",
                Profile::Cos => "cos",
            }
        ),
        ctx,
        f,
        a,
        aprime: ap,
        chi: None,
        chi_prime: None,
        lorentz: true,
    })
}

/// Homotopy potential for a closed polynomial 2-form: for each homogeneous
/// degree-`d` component, `A = (2/(d+2)) x . F_d`. With the weighted curl
/// convention, `D (x . F_d) = ((d+2)/2) F_d` for closed homogeneous `F_d`,
/// so this satisfies `D A = F` and `x . A = 0` exactly.
pub fn cronstrom_potential(f: &Tensor<Poly<Rat>>) -> Result<Tensor<Poly<Rat>>, SolutionError> {
    assert_eq!(f.var, vec![Var::Down, Var::Down]);
    let closed = exterior_d(&JetField::from_poly(f.clone()))
        .is_identically_zero()
        .unwrap_or(false);
    if !closed {
        return Err(SolutionError::NotClosed);
    }
    let max_deg = f
        .data
        .iter()
        .filter_map(Poly::degree)
        .max()
        .unwrap_or(0);
    let mut a = Tensor::<Poly<Rat>>::zeros(vec![Var::Down]);
    for d in 0..=max_deg {
        let coeff = Rat::ratio(2, (d + 2) as i64);
        for nu in 0..DIM {
            let mut comp = Poly::zero();
            for mu in 0..DIM {
                let fd = f.get(&[mu, nu]).homogeneous_part(d);
                comp = comp.add(&Poly::var(mu).mul(&fd));
            }
            let prev = a.get(&[nu]).clone();
            a.set(&[nu], prev.add(&comp.scale(&coeff)));
        }
    }
    Ok(a)
}

/// Laplace–Beltrami (wave) operator on a polynomial.
fn box_poly(p: &Poly<Rat>) -> Poly<Rat> {
    let mut acc = p.deriv(0).deriv(0).neg();
    for i in 1..4 {
        acc = acc.add(&p.deriv(i).deriv(i));
    }
    acc
}

/// Gauge-transform a polynomial potential into Lorentz gauge: returns
/// `(A - D chi, chi)` with `box chi = d.A`, `chi` polynomial.
pub fn regauge_to_lorentz(
    a: &Tensor<Poly<Rat>>,
) -> Result<(Tensor<Poly<Rat>>, Poly<Rat>), SolutionError> {
    assert_eq!(a.var, vec![Var::Down]);
    let div = {
        let field = JetField::from_poly(a.clone());
        divergence(&field, 0)
            .as_poly()
            .expect("polynomial backend")
            .data[0]
            .clone()
    };
    let target_deg = div.degree().map_or(0, |d| d + 2);
    let monos = monomials_up_to(target_deg);
    let out_monos = monomials_up_to(target_deg.saturating_sub(2));
    let mut m = Mat::zeros(out_monos.len(), monos.len());
    for (col, e) in monos.iter().enumerate() {
        let img = box_poly(&Poly::monomial(*e, Rat::int(1)));
        for (row, oe) in out_monos.iter().enumerate() {
            m.set(row, col, img.coeff(*oe));
        }
    }
    let rhs: Vec<Rat> = out_monos.iter().map(|e| div.coeff(*e)).collect();
    let sol = m.solve(&rhs).ok_or(SolutionError::NoGaugeFunction)?;
    let mut chi = Poly::zero();
    for (c, e) in sol.iter().zip(&monos) {
        chi = chi.add(&Poly::monomial(*e, c.clone()));
    }
    let grad = Tensor::from_fn(vec![Var::Down], |idx| chi.deriv(idx[0]));
    Ok((a.sub(&grad), chi))
}

/// Rational basis of all polynomial Maxwell field strengths whose components
/// are homogeneous of degree `degree` (the full degree-0 basis has 6
/// elements: the constant antisymmetric tensors).
pub fn field_strength_basis(degree: usize) -> Vec<Tensor<Poly<Rat>>> {
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let monos = monomials_of_degree(degree);
    let unknowns: Vec<(usize, Expo)> = pairs
        .iter()
        .enumerate()
        .flat_map(|(p, _)| monos.iter().map(move |e| (p, *e)))
        .collect();

    let unit_f = |p: usize, e: Expo| -> Tensor<Poly<Rat>> {
        let (i, j) = pairs[p];
        Tensor::from_fn(vec![Var::Down, Var::Down], |idx| {
            if (idx[0], idx[1]) == (i, j) {
                Poly::monomial(e, Rat::int(1))
            } else if (idx[1], idx[0]) == (i, j) {
                Poly::monomial(e, Rat::int(-1))
            } else {
                Poly::zero()
            }
        })
    };

    // Constraint image: divergence (4 components) and closure (4 independent
    // components), both of polynomial degree `degree - 1`.
    let lower_monos = if degree == 0 {
        vec![]
    } else {
        monomials_of_degree(degree - 1)
    };
    let triples = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)];
    let rows = (4 + 4) * lower_monos.len().max(1);
    let mut m = Mat::zeros(rows, unknowns.len());
    if !lower_monos.is_empty() {
        for (col, &(p, e)) in unknowns.iter().enumerate() {
            let f = unit_f(p, e);
            let jf = JetField::from_poly(f);
            let div = divergence(&jf, 0);
            let div_t = div.as_poly().unwrap();
            let clo = exterior_d(&jf);
            let clo_t = clo.as_poly().unwrap();
            let mut row = 0;
            for nu in 0..4 {
                for e in &lower_monos {
                    m.set(row, col, div_t.get(&[nu]).coeff(*e));
                    row += 1;
                }
            }
            for &(s, mu, nu) in &triples {
                for e in &lower_monos {
                    m.set(row, col, clo_t.get(&[s, mu, nu]).coeff(*e));
                    row += 1;
                }
            }
        }
    }
    m.null_space()
        .into_iter()
        .map(|v| {
            let mut f = Tensor::<Poly<Rat>>::zeros(vec![Var::Down, Var::Down]);
            for (c, &(p, e)) in v.iter().zip(&unknowns) {
                if !c.is_zero() {
                    f = f.add(&unit_f(p, e).scale(&Poly::constant(c.clone())));
                }
            }
            f
        })
        .collect()
}

/// Build the full Lorentz-gauge joint-potential solution for a polynomial
/// field strength.
pub fn solution_from_field_strength(
    f: Tensor<Poly<Rat>>,
    id: String,
    ctx: MetricContext,
) -> Result<MaxwellSolution<Rat>, SolutionError> {
    let fd = JetField::from_poly(f.clone());
    let fstar = hodge2(&fd, ctx)
        .as_poly()
        .expect("polynomial backend")
        .clone();
    let a_raw = cronstrom_potential(&f)?;
    let ap_raw = cronstrom_potential(&fstar)?;
    let (a, _) = regauge_to_lorentz(&a_raw)?;
    let (ap, _) = regauge_to_lorentz(&ap_raw)?;
    Ok(MaxwellSolution {
        id,
        ctx,
        f: JetField::from_poly(f),
        a: JetField::from_poly(a),
        aprime: JetField::from_poly(ap),
        chi: None,
        chi_prime: None,
        lorentz: true,
    })
}

/// All basis solutions of homogeneous degree `degree`.
pub fn polynomial_solutions(
    degree: usize,
    ctx: MetricContext,
) -> Result<Vec<MaxwellSolution<Rat>>, SolutionError> {
    field_strength_basis(degree)
        .into_iter()
        .enumerate()
        .map(|(i, f)| solution_from_field_strength(f, format!("poly-d{degree}-{i}"), ctx))
        .collect()
}

/// The exact catalog used by the sweeps: degree-0 and degree-1 polynomial
/// bases plus one generic rational combination of each.
pub fn polynomial_catalog(ctx: MetricContext) -> Vec<MaxwellSolution<Rat>> {
    let mut out = Vec::new();
    for degree in [0usize, 1] {
        let basis = field_strength_basis(degree);
        let mut combo = Tensor::<Poly<Rat>>::zeros(vec![Var::Down, Var::Down]);
        for (i, f) in basis.iter().enumerate() {
            let c = Poly::constant(Rat::ratio(2 * i as i64 + 1, 3));
            combo = combo.add(&f.scale(&c));
        }
        for (i, f) in basis.into_iter().enumerate() {
            out.push(
                solution_from_field_strength(f, format!("poly-d{degree}-{i}"), ctx)
                    .expect("basis field strengths are closed"),
            );
        }
        out.push(
            solution_from_field_strength(combo, format!("poly-d{degree}-combo"), ctx)
                .expect("combination of closed forms is closed"),
        );
    }
    out
}

/// A generic mixed-degree polynomial solution: the degree-0 and degree-1
/// catalog combinations superposed. A purely homogeneous solution would make
/// some generator actions degenerate (the weighted dilation collapses onto
/// scaling), so fits and rank measurements use this mixed solution.
pub fn generic_polynomial_solution(ctx: MetricContext) -> MaxwellSolution<Rat> {
    let cat = polynomial_catalog(ctx);
    let d0 = &cat[field_strength_basis(0).len()];
    let d1 = cat.last().expect("catalog is nonempty");
    d0.superpose(d1)
}

/// A circularly polarized wave along `x^1`: the `sin`/`e_2` catalog wave
/// superposed with a `cos`/`e_3` wave of the same null vector. Its duality
/// charge (optical helicity) is nonzero, unlike any linearly polarized wave.
pub fn circularly_polarized_wave(ctx: MetricContext) -> MaxwellSolution<f64> {
    let r = Rat::int;
    let lin = plane_wave(&plane_wave_specs()[0], ctx).expect("catalog spec is valid");
    let other = plane_wave(
        &PlaneWaveSpec {
            k: [r(1), r(1), r(0), r(0)],
            a: [r(0), r(0), r(0), r(1)],
            profile: Profile::Cos,
        },
        ctx,
    )
    .expect("shifted polarization is valid");
    lin.superpose(&other)
}

/// The three standard plane waves used by the float-backend sweeps.
pub fn plane_wave_catalog(ctx: MetricContext) -> Vec<MaxwellSolution<f64>> {
    plane_wave_specs()
        .iter()
        .map(|s| plane_wave(s, ctx).expect("catalog specs are valid"))
        .collect()
}

/// Specs behind [`plane_wave_catalog`].
pub fn plane_wave_specs() -> Vec<PlaneWaveSpec> {
    let r = Rat::int;
    vec![
        PlaneWaveSpec {
            k: [r(1), r(1), r(0), r(0)],
            a: [r(0), r(0), r(1), r(0)],
            profile: Profile::Sin,
        },
        PlaneWaveSpec {
            k: [r(1), r(-1), r(0), r(0)],
            a: [r(0), r(0), r(0), r(1)],
            profile: Profile::Cos,
        },
        PlaneWaveSpec {
            k: [r(5), r(3), r(4), r(0)],
            a: [r(0), r(4), r(-3), r(0)],
            profile: Profile::Sin,
        },
    ]
}

/// One term of a polynomial component in a JSON solution spec.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyTerm {
    pub coeff: Rat,
    pub powers: [u8; 4],
}

/// Serializable description of a solution, as accepted by the CLI.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SolutionSpec {
    /// Plane wave from exact rational data.
    PlaneWave {
        k: [Rat; 4],
        a: [Rat; 4],
        profile: Profile,
    },
    /// Element of the homogeneous polynomial basis.
    Polynomial { degree: usize, index: usize },
    /// Explicit polynomial potentials (4 components each, as term lists).
    Custom {
        a: Vec<Vec<PolyTerm>>,
        aprime: Vec<Vec<PolyTerm>>,
    },
}

fn covector_from_terms(comps: &[Vec<PolyTerm>]) -> Tensor<Poly<Rat>> {
    assert_eq!(comps.len(), 4, "potential needs 4 components");
    Tensor {
        var: vec![Var::Down],
        data: comps
            .iter()
            .map(|terms| {
                let mut p = Poly::zero();
                for t in terms {
                    p.add_term(t.powers, t.coeff.clone());
                }
                p
            })
            .collect(),
    }
}

/// Backend selector for spec-driven construction.
pub enum AnySolution {
    Exact(MaxwellSolution<Rat>),
    Float(MaxwellSolution<f64>),
}

/// Assemble a custom solution from explicit potential terms *without*
/// validating the joint-potential invariants. The residual fields of the
/// result decide whether it is actually a Lorentz-gauge solution; the
/// verification front end uses this to *report* a corrupted input rather
/// than reject it outright. `build_solution` adds the validation.
pub fn custom_solution_unchecked(
    a: &[Vec<PolyTerm>],
    aprime: &[Vec<PolyTerm>],
    ctx: MetricContext,
) -> MaxwellSolution<Rat> {
    let af = JetField::from_poly(covector_from_terms(a));
    let apf = JetField::from_poly(covector_from_terms(aprime));
    let f = exterior_d(&af);
    MaxwellSolution {
        id: "custom".into(),
        ctx,
        f,
        a: af,
        aprime: apf,
        chi: None,
        chi_prime: None,
        lorentz: true,
    }
}

/// Build a solution from its serializable spec, validating all invariants.
pub fn build_solution(spec: &SolutionSpec, ctx: MetricContext) -> Result<AnySolution, SolutionError> {
    match spec {
        SolutionSpec::PlaneWave { k, a, profile } => {
            let pw = plane_wave(
                &PlaneWaveSpec {
                    k: k.clone(),
                    a: a.clone(),
                    profile: *profile,
                },
                ctx,
            )?;
            Ok(AnySolution::Float(pw))
        }
        SolutionSpec::Polynomial { degree, index } => {
            let basis = field_strength_basis(*degree);
            let size = basis.len();
            let f = basis
                .into_iter()
                .nth(*index)
                .ok_or(SolutionError::BadIndex {
                    index: *index,
                    size,
                })?;
            Ok(AnySolution::Exact(solution_from_field_strength(
                f,
                format!("poly-d{degree}-{index}"),
                ctx,
            )?))
        }
        SolutionSpec::Custom { a, aprime } => {
            let sol = custom_solution_unchecked(a, aprime, ctx);
            let fstar = hodge2(&sol.f, ctx);
            let dual_res = exterior_d(&sol.aprime).sub(&fstar);
            if dual_res.is_identically_zero() != Some(true) {
                return Err(SolutionError::DualityRelationFails);
            }
            let lorentz = divergence(&sol.a, 0).is_identically_zero() == Some(true)
                && divergence(&sol.aprime, 0).is_identically_zero() == Some(true);
            if !lorentz {
                return Err(SolutionError::NotLorentz);
            }
            Ok(AnySolution::Exact(sol))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_points() -> Vec<[f64; 4]> {
        vec![
            [0.3, -1.2, 0.8, 2.0],
            [1.0, 0.0, -0.5, 0.25],
            [-0.7, 0.9, 1.3, -0.1],
        ]
    }

    #[test]
    fn plane_wave_catalog_satisfies_all_invariants() {
        for ctx in [MetricContext::default(), MetricContext::reversed()] {
            for sol in plane_wave_catalog(ctx) {
                for (name, res) in sol.residual_fields() {
                    let worst = res.max_abs_at(&sample_points());
                    assert!(worst < 1e-12, "{}: {} = {}", sol.id, name, worst);
                }
            }
        }
    }

    #[test]
    fn first_plane_wave_dual_polarization_is_unit() {
        // For k = (1,1,0,0), a = e_2, sin profile and standard orientation,
        // the dual polarization is +/- e_3 depending on orientation.
        let specs = plane_wave_specs();
        let ap = dual_polarization(&specs[0].k, &specs[0].a, MetricContext::default()).unwrap();
        assert_eq!(ap, [Rat::int(0), Rat::int(0), Rat::int(0), Rat::int(1)]);
        let ap_rev =
            dual_polarization(&specs[0].k, &specs[0].a, MetricContext::reversed()).unwrap();
        assert_eq!(
            ap_rev,
            [Rat::int(0), Rat::int(0), Rat::int(0), Rat::int(-1)]
        );
    }

    #[test]
    fn plane_wave_rejects_bad_specs() {
        let r = Rat::int;
        let not_null = PlaneWaveSpec {
            k: [r(1), r(0), r(0), r(0)],
            a: [r(0), r(1), r(0), r(0)],
            profile: Profile::Sin,
        };
        assert!(matches!(
            plane_wave(&not_null, MetricContext::default()),
            Err(SolutionError::NotNull(_))
        ));
        let not_transverse = PlaneWaveSpec {
            k: [r(1), r(1), r(0), r(0)],
            a: [r(1), r(0), r(0), r(0)],
            profile: Profile::Sin,
        };
        assert!(matches!(
            plane_wave(&not_transverse, MetricContext::default()),
            Err(SolutionError::NotTransverse(_))
        ));
    }

    #[test]
    fn degree_zero_basis_has_six_solutions() {
        let ctx = MetricContext::default();
        let sols = polynomial_solutions(0, ctx).unwrap();
        assert_eq!(sols.len(), 6);
        for sol in &sols {
            for (name, res) in sol.residual_fields() {
                assert_eq!(
                    res.is_identically_zero(),
                    Some(true),
                    "{}: {}",
                    sol.id,
                    name
                );
            }
        }
    }

    #[test]
    fn degree_one_basis_is_exact_and_nonempty() {
        let ctx = MetricContext::default();
        let sols = polynomial_solutions(1, ctx).unwrap();
        assert_eq!(sols.len(), 16);
        for sol in &sols {
            for (name, res) in sol.residual_fields() {
                assert_eq!(
                    res.is_identically_zero(),
                    Some(true),
                    "{}: {}",
                    sol.id,
                    name
                );
            }
        }
    }

    #[test]
    fn cronstrom_potential_is_exact_up_to_degree_two() {
        // D A_F = F and x . A_F = 0 exactly for every basis field strength of
        // degree 0, 1, 2.
        let x = crate::jet::coordinate_field::<Rat>();
        for degree in 0..=2 {
            for (i, f) in field_strength_basis(degree).into_iter().enumerate() {
                let a = cronstrom_potential(&f).unwrap();
                let af = JetField::from_poly(a);
                let curl = exterior_d(&af).sub(&JetField::from_poly(f));
                assert_eq!(
                    curl.is_identically_zero(),
                    Some(true),
                    "exactness d{degree}-{i}"
                );
                let radial = crate::jet::interior(&x, &af);
                assert_eq!(
                    radial.is_identically_zero(),
                    Some(true),
                    "ray gauge d{degree}-{i}"
                );
            }
        }
    }

    #[test]
    fn cronstrom_rejects_non_closed_input() {
        // F_{01} = x^2 has dF != 0.
        let f = Tensor::from_fn(vec![Var::Down, Var::Down], |idx| match (idx[0], idx[1]) {
            (0, 1) => Poly::<Rat>::var(2),
            (1, 0) => Poly::var(2).neg(),
            _ => Poly::zero(),
        });
        assert!(matches!(
            cronstrom_potential(&f),
            Err(SolutionError::NotClosed)
        ));
    }

    #[test]
    fn regauge_produces_lorentz_gauge_with_wave_witness() {
        // Start from the ray-gauge potential of a degree-1 solution, which is
        // generally not in Lorentz gauge.
        let f = field_strength_basis(1).swap_remove(3);
        let a_raw = cronstrom_potential(&f).unwrap();
        let (a, chi) = regauge_to_lorentz(&a_raw).unwrap();
        let af = JetField::from_poly(a);
        assert_eq!(divergence(&af, 0).is_identically_zero(), Some(true));
        // box chi = d.A(raw) as polynomials.
        let div_raw = divergence(&JetField::from_poly(a_raw), 0);
        let want = div_raw.as_poly().unwrap().data[0].clone();
        assert!(box_poly(&chi).sub(&want).is_zero());
        // The curl is untouched by regauging.
        let curl = exterior_d(&af).sub(&JetField::from_poly(f));
        assert_eq!(curl.is_identically_zero(), Some(true));
    }

    #[test]
    fn custom_spec_roundtrip_and_validation() {
        // A constant-F solution written as explicit potentials. A_1 = x^0
        // gives F_{01} = 1/2 and d.A = 0. Then *F_{23} = eps_{2301} F^{01}
        // = -1/2, which is matched by A'_3 = -x^2 since (DA')_{23} = -1/2.
        let term = |c: (i64, i64), powers: [u8; 4]| PolyTerm {
            coeff: Rat::ratio(c.0, c.1),
            powers,
        };
        let a = vec![
            vec![],
            vec![term((1, 1), [1, 0, 0, 0])],
            vec![],
            vec![],
        ];
        let aprime = vec![vec![], vec![], vec![], vec![term((-1, 1), [0, 0, 1, 0])]];
        let spec = SolutionSpec::Custom { a, aprime };
        let built = build_solution(&spec, MetricContext::default());
        match built {
            Ok(AnySolution::Exact(sol)) => {
                for (name, res) in sol.residual_fields() {
                    assert_eq!(res.is_identically_zero(), Some(true), "{name}");
                }
            }
            _ => panic!("expected exact custom solution"),
        }
        // JSON roundtrip of the spec type.
        let js = serde_json::to_string(&spec).unwrap();
        let back: SolutionSpec = serde_json::from_str(&js).unwrap();
        assert!(matches!(back, SolutionSpec::Custom { .. }));
    }

    #[test]
    fn superposition_and_duality_rotation_stay_solutions() {
        let ctx = MetricContext::default();
        let sols = polynomial_solutions(1, ctx).unwrap();
        let sup = sols[0].superpose(&sols[5]).scaled(&Rat::ratio(2, 3));
        for (name, res) in sup.residual_fields() {
            assert_eq!(res.is_identically_zero(), Some(true), "{name}");
        }
        let rot = sols[7].duality_rotated();
        for (name, res) in rot.residual_fields() {
            assert_eq!(res.is_identically_zero(), Some(true), "{name}");
        }
    }
}
