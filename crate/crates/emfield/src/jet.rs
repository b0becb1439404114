//! Tensor-valued fields with exact jets, on two interchangeable backends.
//!
//! A [`JetField`] is a tensor field on Minkowski space whose evaluator
//! returns, at any point, *all* partial-derivative tensors up to a requested
//! order. Every formula in the crate (symmetry actions, determining-equation
//! residuals, currents and their divergences) is written once against this
//! type and runs on both backends:
//!
//! * **Polynomial** — components are exact multivariate polynomials; all
//!   operations stay symbolic, so a residual can be certified *identically*
//!   zero by inspecting coefficients.
//! * **Closure** — components are arbitrary smooth expressions whose jets are
//!   produced on demand (in practice by forward-mode automatic
//!   differentiation, see [`crate::dual`]); derived fields compose jets
//!   pointwise, with the Leibniz rule handling products.
//!
//! Derivative slots always come first in a jet tensor's slot list and are
//! covariant; they are symmetric under exchange by construction. Linear
//! pointwise operations act on the base (non-derivative) slots and therefore
//! commute with differentiation, which is what makes lazy composition sound.

use crate::poly::Poly;
use crate::scalar::{Rat, Scalar};
use crate::tensor::{decode, MetricContext, Tensor, Var, DIM};
use std::sync::Arc;

/// All derivative tensors of a field at one point, orders `0..=max`.
///
/// `orders[m]` has variance `[Down; m] ++ base_var`: `m` derivative slots in
/// front of the field's own slots.
#[derive(Clone, Debug)]
pub struct Jets<S> {
    pub base_var: Vec<Var>,
    pub orders: Vec<Tensor<S>>,
}

impl<S: Scalar> Jets<S> {
    pub fn max_order(&self) -> usize {
        self.orders.len() - 1
    }

    pub fn order(&self, m: usize) -> &Tensor<S> {
        &self.orders[m]
    }
}

/// Slot-manipulation operations that are linear and touch only base slots,
/// hence commute with total differentiation.
#[derive(Clone, Debug)]
enum LinOp {
    Contract(usize, usize),
    Flip(usize),
    Antisym(Vec<usize>),
    Sym(Vec<usize>),
    Permute(Vec<usize>),
}

fn apply_linop<T: Scalar>(t: &Tensor<T>, op: &LinOp, offset: usize) -> Tensor<T> {
    match op {
        LinOp::Contract(i, j) => t.contract(i + offset, j + offset),
        LinOp::Flip(s) => t.flip_slot(s + offset),
        LinOp::Antisym(slots) => {
            let shifted: Vec<usize> = slots.iter().map(|s| s + offset).collect();
            t.antisymmetrize(&shifted)
        }
        LinOp::Sym(slots) => {
            let shifted: Vec<usize> = slots.iter().map(|s| s + offset).collect();
            t.symmetrize(&shifted)
        }
        LinOp::Permute(perm) => {
            let mut full: Vec<usize> = (0..offset).collect();
            full.extend(perm.iter().map(|p| p + offset));
            t.permute(&full)
        }
    }
}

/// Contract several slot pairs of one tensor, given in the tensor's original
/// slot numbering. Pairs must be disjoint.
fn contract_pairs<T: Scalar>(mut t: Tensor<T>, pairs: &[(usize, usize)]) -> Tensor<T> {
    let mut rest: Vec<(usize, usize)> = pairs
        .iter()
        .map(|&(a, b)| if a < b { (a, b) } else { (b, a) })
        .collect();
    {
        let mut all: Vec<usize> = rest.iter().flat_map(|&(a, b)| [a, b]).collect();
        all.sort_unstable();
        all.dedup();
        assert_eq!(all.len(), 2 * rest.len(), "contraction pairs must be disjoint");
    }
    while let Some((i, j)) = rest.pop() {
        t = t.contract(i, j);
        for p in rest.iter_mut() {
            let shift = |s: usize| s - usize::from(s > i) - usize::from(s > j);
            *p = (shift(p.0), shift(p.1));
        }
    }
    t
}

type ClosureEval<S> = Arc<dyn Fn(&[S; 4], usize) -> Jets<S> + Send + Sync>;

/// A tensor field evaluable to jets of any order at any point.
#[derive(Clone)]
pub enum JetField<S> {
    /// Symbolic polynomial components.
    Poly(Tensor<Poly<S>>),
    /// Lazy jet evaluator.
    Closure { var: Vec<Var>, eval: ClosureEval<S> },
}

/// Jets of a polynomial tensor at a point, computed by symbolic
/// differentiation followed by evaluation.
fn poly_jets<S: Scalar>(t: &Tensor<Poly<S>>, x: &[S; 4], order: usize) -> Jets<S> {
    let mut sym = t.clone();
    let mut orders = Vec::with_capacity(order + 1);
    for m in 0..=order {
        if m > 0 {
            sym = poly_deriv_front(&sym);
        }
        orders.push(Tensor {
            var: sym.var.clone(),
            data: sym.data.iter().map(|p| p.eval(x)).collect(),
        });
    }
    Jets {
        base_var: t.var.clone(),
        orders,
    }
}

/// Symbolic total derivative with the new covariant slot in front.
fn poly_deriv_front<S: Scalar>(t: &Tensor<Poly<S>>) -> Tensor<Poly<S>> {
    let mut var = vec![Var::Down];
    var.extend_from_slice(&t.var);
    Tensor::from_fn(var, |idx| t.get(&idx[1..]).deriv(idx[0]))
}

/// Order-`m` jets of a pointwise product via the Leibniz rule, before any
/// contraction. Result variance: `[Down; m] ++ a.base ++ b.base`.
fn leibniz_order<S: Scalar>(a: &Jets<S>, b: &Jets<S>, m: usize) -> Tensor<S> {
    let ra = a.base_var.len();
    let rb = b.base_var.len();
    let mut var = vec![Var::Down; m];
    var.extend_from_slice(&a.base_var);
    var.extend_from_slice(&b.base_var);
    let rank = var.len();
    let mut out = Tensor::zeros(var);
    let mut idx = vec![0usize; rank];
    let mut aidx = vec![0usize; m + ra];
    let mut bidx = vec![0usize; m + rb];
    for flat in 0..out.data.len() {
        decode(flat, rank, &mut idx);
        let (d, rest) = idx.split_at(m);
        let (abase, bbase) = rest.split_at(ra);
        let mut acc = S::zero();
        for mask in 0u32..(1 << m) {
            let k = mask.count_ones() as usize;
            let mut ka = 0;
            let mut kb = 0;
            for (bit, &di) in d.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    aidx[ka] = di;
                    ka += 1;
                } else {
                    bidx[kb] = di;
                    kb += 1;
                }
            }
            aidx[k..k + ra].copy_from_slice(abase);
            bidx[(m - k)..(m - k) + rb].copy_from_slice(bbase);
            let av = a.orders[k].get(&aidx[..k + ra]);
            let bv = b.orders[m - k].get(&bidx[..(m - k) + rb]);
            acc = acc.add(&av.mul(bv));
        }
        out.data[flat] = acc;
    }
    out
}

impl<S: Scalar> JetField<S> {
    /// Constant tensor field.
    pub fn from_tensor(t: &Tensor<S>) -> Self {
        JetField::Poly(Tensor {
            var: t.var.clone(),
            data: t.data.iter().map(|c| Poly::constant(c.clone())).collect(),
        })
    }

    /// Field with explicit polynomial components.
    pub fn from_poly(t: Tensor<Poly<S>>) -> Self {
        JetField::Poly(t)
    }

    /// Field from a lazy jet evaluator.
    pub fn from_closure(
        var: Vec<Var>,
        eval: impl Fn(&[S; 4], usize) -> Jets<S> + Send + Sync + 'static,
    ) -> Self {
        JetField::Closure {
            var,
            eval: Arc::new(eval),
        }
    }

    /// Zero field of the given variance.
    pub fn zeros(var: Vec<Var>) -> Self {
        JetField::Poly(Tensor::zeros(var))
    }

    pub fn var(&self) -> &[Var] {
        match self {
            JetField::Poly(t) => &t.var,
            JetField::Closure { var, .. } => var,
        }
    }

    pub fn rank(&self) -> usize {
        self.var().len()
    }

    /// Symbolic components when on the polynomial backend.
    pub fn as_poly(&self) -> Option<&Tensor<Poly<S>>> {
        match self {
            JetField::Poly(t) => Some(t),
            JetField::Closure { .. } => None,
        }
    }

    /// Identically-zero test; `None` when the backend cannot decide
    /// symbolically.
    pub fn is_identically_zero(&self) -> Option<bool> {
        self.as_poly().map(Tensor::is_zero)
    }

    /// All derivative tensors up to `order` at `x`.
    pub fn jets(&self, x: &[S; 4], order: usize) -> Jets<S> {
        match self {
            JetField::Poly(t) => poly_jets(t, x, order),
            JetField::Closure { eval, .. } => eval(x, order),
        }
    }

    /// Field value at `x`.
    pub fn value(&self, x: &[S; 4]) -> Tensor<S> {
        self.jets(x, 0).orders.pop_unwrap()
    }

    fn eval_arc(&self) -> ClosureEval<S> {
        match self {
            JetField::Poly(t) => {
                let t = t.clone();
                Arc::new(move |x, order| poly_jets(&t, x, order))
            }
            JetField::Closure { eval, .. } => eval.clone(),
        }
    }

    /// Total derivative `d_sigma t_{...}` with the new covariant slot first.
    pub fn total_derivative(&self) -> Self {
        match self {
            JetField::Poly(t) => JetField::Poly(poly_deriv_front(t)),
            JetField::Closure { var, eval } => {
                let mut nvar = vec![Var::Down];
                nvar.extend_from_slice(var);
                let inner = eval.clone();
                let base_var = nvar.clone();
                JetField::Closure {
                    var: nvar,
                    eval: Arc::new(move |x, order| {
                        // The order-(j+1) jet of t *is* the order-j jet of
                        // d t: reinterpret the innermost derivative slot as
                        // the new base slot (derivative slots are symmetric).
                        let jets = inner(x, order + 1);
                        let orders = jets.orders.into_iter().skip(1).collect();
                        Jets {
                            base_var: base_var.clone(),
                            orders,
                        }
                    }),
                }
            }
        }
    }

    fn lin(&self, op: LinOp) -> Self {
        match self {
            JetField::Poly(t) => JetField::Poly(apply_linop(t, &op, 0)),
            JetField::Closure { var, eval } => {
                let probe = apply_linop(&Tensor::<S>::zeros(var.clone()), &op, 0);
                let nvar = probe.var;
                let inner = eval.clone();
                let base_var = nvar.clone();
                JetField::Closure {
                    var: nvar,
                    eval: Arc::new(move |x, order| {
                        let jets = inner(x, order);
                        let orders = jets
                            .orders
                            .iter()
                            .enumerate()
                            .map(|(m, t)| apply_linop(t, &op, m))
                            .collect();
                        Jets {
                            base_var: base_var.clone(),
                            orders,
                        }
                    }),
                }
            }
        }
    }

    /// Contract two slots of this field (opposite variance).
    pub fn contract(&self, i: usize, j: usize) -> Self {
        self.lin(LinOp::Contract(i, j))
    }

    /// Raise a covariant slot with the inverse metric.
    pub fn raise(&self, slot: usize) -> Self {
        assert_eq!(self.var()[slot], Var::Down);
        self.lin(LinOp::Flip(slot))
    }

    /// Lower a contravariant slot with the metric.
    pub fn lower(&self, slot: usize) -> Self {
        assert_eq!(self.var()[slot], Var::Up);
        self.lin(LinOp::Flip(slot))
    }

    /// Weighted antisymmetrization over the given slots.
    pub fn antisymmetrize(&self, slots: &[usize]) -> Self {
        self.lin(LinOp::Antisym(slots.to_vec()))
    }

    /// Weighted symmetrization over the given slots.
    pub fn symmetrize(&self, slots: &[usize]) -> Self {
        self.lin(LinOp::Sym(slots.to_vec()))
    }

    /// Reorder slots: result slot `i` is input slot `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        self.lin(LinOp::Permute(perm.to_vec()))
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.var(), o.var(), "variance mismatch in field add");
        match (self, o) {
            (JetField::Poly(a), JetField::Poly(b)) => JetField::Poly(a.add(b)),
            _ => {
                let (ea, eb) = (self.eval_arc(), o.eval_arc());
                let var = self.var().to_vec();
                let base_var = var.clone();
                JetField::Closure {
                    var,
                    eval: Arc::new(move |x, order| {
                        let (ja, jb) = (ea(x, order), eb(x, order));
                        let orders = ja
                            .orders
                            .iter()
                            .zip(&jb.orders)
                            .map(|(a, b)| a.add(b))
                            .collect();
                        Jets {
                            base_var: base_var.clone(),
                            orders,
                        }
                    }),
                }
            }
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&S::from_int(-1))
    }

    pub fn scale(&self, k: &S) -> Self {
        match self {
            JetField::Poly(t) => JetField::Poly(t.scale(&Poly::constant(k.clone()))),
            JetField::Closure { var, eval } => {
                let inner = eval.clone();
                let k = k.clone();
                let base_var = var.clone();
                JetField::Closure {
                    var: var.clone(),
                    eval: Arc::new(move |x, order| {
                        let jets = inner(x, order);
                        let orders = jets.orders.iter().map(|t| t.scale(&k)).collect();
                        Jets {
                            base_var: base_var.clone(),
                            orders,
                        }
                    }),
                }
            }
        }
    }

    /// Scale by an exact rational constant (works on both backends).
    pub fn scale_rat(&self, num: i64, den: i64) -> Self {
        self.scale(&S::from_rat(&Rat::ratio(num, den)))
    }

    /// Pointwise tensor product followed by contraction of the given slot
    /// pairs. Pair indices refer to the concatenated slot list
    /// `self.var() ++ o.var()`. Products of jets use the Leibniz rule.
    pub fn mul_contract(&self, o: &Self, pairs: &[(usize, usize)]) -> Self {
        match (self, o) {
            (JetField::Poly(a), JetField::Poly(b)) => {
                JetField::Poly(contract_pairs(a.tensor_prod(b), pairs))
            }
            _ => {
                let (ea, eb) = (self.eval_arc(), o.eval_arc());
                let mut pvar = self.var().to_vec();
                pvar.extend_from_slice(o.var());
                let probe = contract_pairs(Tensor::<S>::zeros(pvar), pairs);
                let var = probe.var;
                let base_var = var.clone();
                let pairs = pairs.to_vec();
                JetField::Closure {
                    var,
                    eval: Arc::new(move |x, order| {
                        let (ja, jb) = (ea(x, order), eb(x, order));
                        let orders = (0..=order)
                            .map(|m| {
                                let prod = leibniz_order(&ja, &jb, m);
                                let shifted: Vec<(usize, usize)> =
                                    pairs.iter().map(|&(a, b)| (a + m, b + m)).collect();
                                contract_pairs(prod, &shifted)
                            })
                            .collect();
                        Jets {
                            base_var: base_var.clone(),
                            orders,
                        }
                    }),
                }
            }
        }
    }

    /// Largest component magnitude of the field value over sample points.
    pub fn max_abs_at(&self, points: &[[S; 4]]) -> f64 {
        points
            .iter()
            .map(|x| self.value(x).max_abs())
            .fold(0.0, f64::max)
    }
}

/// Helper so `value` can move out of the jets vector.
trait PopUnwrap<T> {
    fn pop_unwrap(self) -> T;
}

impl<T> PopUnwrap<T> for Vec<T> {
    fn pop_unwrap(mut self) -> T {
        self.pop().expect("empty jets")
    }
}

/// Exterior derivative of a totally antisymmetric covariant field, with the
/// weighted convention: `(D q)_{s m...} = alt(d_s q_{m...})`, so that
/// `F = D A` has components `(d_mu A_nu - d_nu A_mu)/2`.
pub fn exterior_d<S: Scalar>(f: &JetField<S>) -> JetField<S> {
    assert!(f.var().iter().all(|&v| v == Var::Down));
    let d = f.total_derivative();
    let slots: Vec<usize> = (0..d.rank()).collect();
    d.antisymmetrize(&slots)
}

/// Divergence on slot `slot`: `d^mu t_{... mu ...}` (or `d_mu t^{... mu ...}`
/// for a contravariant slot).
pub fn divergence<S: Scalar>(f: &JetField<S>, slot: usize) -> JetField<S> {
    let d = f.total_derivative();
    match f.var()[slot] {
        Var::Up => d.contract(0, slot + 1),
        Var::Down => d.raise(0).contract(0, slot + 1),
    }
}

/// Lie derivative along an (arbitrary-variance aware) vector field `xi`
/// (rank 1, up): `L_xi t = xi^s d_s t + sum_i (slot correction)`, with
/// `+ t_{.. s ..} d_{mu_i} xi^s` on covariant slots and
/// `- t^{.. s ..} d_s xi^{mu_i}` on contravariant slots.
pub fn lie_derivative<S: Scalar>(xi: &JetField<S>, t: &JetField<S>) -> JetField<S> {
    assert_eq!(xi.var(), &[Var::Up]);
    let rank = t.rank();
    // Transport term: xi^s d_s t.
    let mut acc = xi.mul_contract(&t.total_derivative(), &[(0, 1)]);
    let dxi = xi.total_derivative(); // slots: [Down d_s, Up xi^m]
    for i in 0..rank {
        let corr = match t.var()[i] {
            Var::Down => {
                // t_{.. s ..} d_{b} xi^s : contract t slot i with dxi's up
                // slot; the free down slot of dxi replaces slot i.
                let c = t.mul_contract(&dxi, &[(i, rank + 1)]);
                // Slots now: t others (in order), then dxi's derivative slot
                // at the end; move it back to position i.
                let mut perm: Vec<usize> = Vec::with_capacity(rank);
                let others: Vec<usize> = (0..rank - 1).collect();
                let (before, after) = others.split_at(i);
                perm.extend_from_slice(before);
                perm.push(rank - 1);
                perm.extend_from_slice(after);
                c.permute(&perm)
            }
            Var::Up => {
                // - t^{.. s ..} d_s xi^{b}
                let c = t.mul_contract(&dxi, &[(i, rank)]);
                let mut perm: Vec<usize> = Vec::with_capacity(rank);
                let others: Vec<usize> = (0..rank - 1).collect();
                let (before, after) = others.split_at(i);
                perm.extend_from_slice(before);
                perm.push(rank - 1);
                perm.extend_from_slice(after);
                c.permute(&perm).neg()
            }
        };
        acc = acc.add(&corr);
    }
    acc
}

/// Hodge dual of an antisymmetric down-down 2-form field.
pub fn hodge2<S: Scalar>(f: &JetField<S>, ctx: MetricContext) -> JetField<S> {
    assert_eq!(f.var(), &[Var::Down, Var::Down]);
    let eps = JetField::from_tensor(&crate::tensor::epsilon_dddd::<S>(ctx));
    let fuu = f.raise(0).raise(1);
    eps.mul_contract(&fuu, &[(2, 4), (3, 5)]).scale_rat(1, 2)
}

/// Interior product `x . t` of an up-vector field with the first (down) slot.
pub fn interior<S: Scalar>(x: &JetField<S>, t: &JetField<S>) -> JetField<S> {
    assert_eq!(x.var(), &[Var::Up]);
    assert_eq!(t.var().first(), Some(&Var::Down));
    x.mul_contract(t, &[(0, 1)])
}

/// Assemble a [`Jets`] value from per-component forward-mode AD jets, in
/// component order matching the tensor's row-major layout.
pub fn jets_from_scalar_jets(
    base_var: Vec<Var>,
    comps: &[crate::dual::AdJet],
    order: usize,
) -> Jets<f64> {
    let orders = (0..=order)
        .map(|m| {
            let mut var = vec![Var::Down; m];
            var.extend_from_slice(&base_var);
            Tensor::from_fn(var, |idx| {
                let (d, b) = idx.split_at(m);
                comps[crate::tensor::encode(b)].deriv(d)
            })
        })
        .collect();
    Jets { base_var, orders }
}

/// Up-vector field of the coordinate functions (`x^mu`), i.e. the dilation
/// vector field.
pub fn coordinate_field<S: Scalar>() -> JetField<S> {
    JetField::Poly(Tensor {
        var: vec![Var::Up],
        data: (0..DIM).map(Poly::var).collect(),
    })
}
