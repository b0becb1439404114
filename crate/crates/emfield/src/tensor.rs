//! Dense tensors on Minkowski space with explicit index variance.
//!
//! Conventions fixed here and relied on everywhere else:
//!
//! * Metric signature `(-,+,+,+)` with `eta = diag(-1, 1, 1, 1)`; the inverse
//!   metric has the same components, so raising or lowering a slot flips the
//!   sign of every component whose index on that slot is `0`.
//! * Totally antisymmetric symbol with `epsilon_{0123} = +1` by default; the
//!   orientation is configurable through [`MetricContext`] and every derived
//!   check must pass for either choice.
//! * (Anti)symmetrization is *weighted*: the projector carries `1/p!`, so it
//!   is idempotent and the field strength of a potential is
//!   `F_{mu nu} = (1/2)(d_mu A_nu - d_nu A_mu)`.
//! * The Hodge dual of a 2-form is
//!   `(*f)_{mu nu} = (1/2) epsilon_{mu nu sigma tau} f^{sigma tau}`, which
//!   squares to `-1` on 2-forms in Lorentzian signature.

use crate::scalar::Scalar;

/// Index variance of one tensor slot.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Var {
    Up,
    Down,
}

impl Var {
    pub fn flip(self) -> Var {
        match self {
            Var::Up => Var::Down,
            Var::Down => Var::Up,
        }
    }
}

/// Spacetime dimension.
pub const DIM: usize = 4;

/// Metric and orientation data threaded through every metric-dependent
/// operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MetricContext {
    /// Value of the totally antisymmetric symbol at index `(0,1,2,3)` with
    /// all slots down: `+1` or `-1`.
    pub orientation: i8,
}

impl Default for MetricContext {
    fn default() -> Self {
        MetricContext { orientation: 1 }
    }
}

impl MetricContext {
    pub fn reversed() -> Self {
        MetricContext { orientation: -1 }
    }

    /// Diagonal entry `eta_{ii}` as an integer sign.
    pub fn eta_sign(i: usize) -> i64 {
        if i == 0 {
            -1
        } else {
            1
        }
    }
}

/// Dense tensor of rank `var.len()` with `4^rank` components in row-major
/// order (first slot most significant).
#[derive(Clone, PartialEq, Debug)]
pub struct Tensor<S> {
    pub var: Vec<Var>,
    pub data: Vec<S>,
}

/// Decode a flat offset into per-slot indices.
pub fn decode(mut flat: usize, rank: usize, out: &mut [usize]) {
    for slot in (0..rank).rev() {
        out[slot] = flat % DIM;
        flat /= DIM;
    }
}

/// Encode per-slot indices into a flat offset.
pub fn encode(idx: &[usize]) -> usize {
    idx.iter().fold(0, |acc, &i| acc * DIM + i)
}

/// Sign of the permutation sending `0..n` to `perm`, or 0 when `perm` has a
/// repeated entry.
pub fn perm_sign(perm: &[usize]) -> i64 {
    let n = perm.len();
    for i in 0..n {
        for j in (i + 1)..n {
            if perm[i] == perm[j] {
                return 0;
            }
        }
    }
    let mut sign = 1i64;
    let mut p = perm.to_vec();
    for i in 0..n {
        while p[i] != i {
            let t = p[i];
            p.swap(i, t);
            sign = -sign;
        }
    }
    sign
}

/// All permutations of `0..n` (n small).
fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..n {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

impl<S: Scalar> Tensor<S> {
    pub fn zeros(var: Vec<Var>) -> Self {
        let len = DIM.pow(var.len() as u32);
        Tensor {
            var,
            data: vec![S::zero(); len],
        }
    }

    pub fn scalar(v: S) -> Self {
        Tensor {
            var: vec![],
            data: vec![v],
        }
    }

    pub fn from_fn(var: Vec<Var>, f: impl Fn(&[usize]) -> S) -> Self {
        let rank = var.len();
        let len = DIM.pow(rank as u32);
        let mut idx = vec![0usize; rank];
        let data = (0..len)
            .map(|flat| {
                decode(flat, rank, &mut idx);
                f(&idx)
            })
            .collect();
        Tensor { var, data }
    }

    pub fn rank(&self) -> usize {
        self.var.len()
    }

    pub fn get(&self, idx: &[usize]) -> &S {
        &self.data[encode(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: S) {
        self.data[encode(idx)] = v;
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.var, o.var, "variance mismatch in add");
        Tensor {
            var: self.var.clone(),
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.var, o.var, "variance mismatch in sub");
        Tensor {
            var: self.var.clone(),
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Tensor {
            var: self.var.clone(),
            data: self.data.iter().map(S::neg).collect(),
        }
    }

    pub fn scale(&self, k: &S) -> Self {
        Tensor {
            var: self.var.clone(),
            data: self.data.iter().map(|a| a.mul(k)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(S::is_zero)
    }

    /// Largest component magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(S::abs_f64).fold(0.0, f64::max)
    }

    /// Outer (tensor) product.
    pub fn tensor_prod(&self, o: &Self) -> Self {
        let mut var = self.var.clone();
        var.extend_from_slice(&o.var);
        let mut data = Vec::with_capacity(self.data.len() * o.data.len());
        for a in &self.data {
            for b in &o.data {
                data.push(a.mul(b));
            }
        }
        Tensor { var, data }
    }

    /// Contract slots `i` and `j` (natural pairing: one up, one down).
    pub fn contract(&self, i: usize, j: usize) -> Self {
        assert!(i < j && j < self.rank(), "bad contraction slots");
        assert_ne!(
            self.var[i], self.var[j],
            "contraction requires opposite variance"
        );
        let rank = self.rank();
        let mut var = Vec::with_capacity(rank - 2);
        for (k, v) in self.var.iter().enumerate() {
            if k != i && k != j {
                var.push(*v);
            }
        }
        let mut out = Tensor::zeros(var);
        let out_rank = rank - 2;
        let mut oidx = vec![0usize; out_rank];
        let mut idx = vec![0usize; rank];
        for flat in 0..out.data.len() {
            decode(flat, out_rank, &mut oidx);
            let mut acc = S::zero();
            for m in 0..DIM {
                let mut pos = 0;
                for k in 0..rank {
                    if k == i || k == j {
                        idx[k] = m;
                    } else {
                        idx[k] = oidx[pos];
                        pos += 1;
                    }
                }
                acc = acc.add(self.get(&idx));
            }
            out.data[flat] = acc;
        }
        out
    }

    /// Raise or lower one slot with the metric (sign flip on index 0).
    pub fn flip_slot(&self, slot: usize) -> Self {
        let rank = self.rank();
        let mut var = self.var.clone();
        var[slot] = var[slot].flip();
        let mut idx = vec![0usize; rank];
        let data = (0..self.data.len())
            .map(|flat| {
                decode(flat, rank, &mut idx);
                if idx[slot] == 0 {
                    self.data[flat].neg()
                } else {
                    self.data[flat].clone()
                }
            })
            .collect();
        Tensor { var, data }
    }

    /// Raise slot `slot` (must be down).
    pub fn raise(&self, slot: usize) -> Self {
        assert_eq!(self.var[slot], Var::Down);
        self.flip_slot(slot)
    }

    /// Lower slot `slot` (must be up).
    pub fn lower(&self, slot: usize) -> Self {
        assert_eq!(self.var[slot], Var::Up);
        self.flip_slot(slot)
    }

    /// Reorder slots: `result` slot `i` is `self` slot `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let rank = self.rank();
        assert_eq!(perm.len(), rank);
        let var = perm.iter().map(|&p| self.var[p]).collect();
        let mut out_idx = vec![0usize; rank];
        let mut in_idx = vec![0usize; rank];
        let data = (0..self.data.len())
            .map(|flat| {
                decode(flat, rank, &mut out_idx);
                for (i, &p) in perm.iter().enumerate() {
                    in_idx[p] = out_idx[i];
                }
                self.get(&in_idx).clone()
            })
            .collect();
        Tensor { var, data }
    }

    fn alternate(&self, slots: &[usize], antisym: bool) -> Self {
        for w in slots.windows(2) {
            assert!(w[0] < w[1], "slots must be strictly increasing");
        }
        for &s in slots {
            assert_eq!(self.var[s], self.var[slots[0]], "mixed variance");
        }
        let rank = self.rank();
        let p = slots.len();
        let perms = permutations(p);
        let weight = S::one().div(&S::from_int((1..=p as i64).product::<i64>()));
        let mut out = Tensor::zeros(self.var.clone());
        let mut idx = vec![0usize; rank];
        let mut src = vec![0usize; rank];
        for flat in 0..self.data.len() {
            decode(flat, rank, &mut idx);
            let mut acc = S::zero();
            for perm in &perms {
                src.copy_from_slice(&idx);
                for (a, &pa) in perm.iter().enumerate() {
                    src[slots[a]] = idx[slots[pa]];
                }
                let term = self.get(&src);
                if antisym && perm_sign(perm) < 0 {
                    acc = acc.sub(term);
                } else {
                    acc = acc.add(term);
                }
            }
            out.data[flat] = acc.mul(&weight);
        }
        out
    }

    /// Weighted antisymmetrization over the given slots (idempotent).
    pub fn antisymmetrize(&self, slots: &[usize]) -> Self {
        self.alternate(slots, true)
    }

    /// Weighted symmetrization over the given slots (idempotent).
    pub fn symmetrize(&self, slots: &[usize]) -> Self {
        self.alternate(slots, false)
    }

    /// Hodge dual of an antisymmetric rank-2 tensor with both slots down:
    /// `(*f)_{mu nu} = (1/2) epsilon_{mu nu sigma tau} f^{sigma tau}`.
    pub fn hodge_dual2(&self, ctx: MetricContext) -> Self {
        assert_eq!(self.var, vec![Var::Down, Var::Down], "hodge_dual2 needs a down-down 2-form");
        let fuu = self.raise(0).raise(1);
        let eps = epsilon_dddd::<S>(ctx);
        // eps_{mu nu sigma tau} f^{sigma tau}: contract slots (2,3) of eps
        // with slots (0,1) of f.
        eps.tensor_prod(&fuu)
            .contract(2, 4)
            .contract(2, 3)
            .scale(&S::from_ratio(1, 2))
    }

    /// Interior product with an up-vector on the first (down) slot.
    pub fn interior(&self, x: &Tensor<S>) -> Self {
        assert_eq!(x.var, vec![Var::Up]);
        assert_eq!(self.var.first(), Some(&Var::Down));
        x.tensor_prod(self).contract(0, 1)
    }
}

/// Metric `eta_{mu nu}` (both slots down).
pub fn metric_dd<S: Scalar>() -> Tensor<S> {
    Tensor::from_fn(vec![Var::Down, Var::Down], |idx| {
        if idx[0] == idx[1] {
            S::from_int(MetricContext::eta_sign(idx[0]))
        } else {
            S::zero()
        }
    })
}

/// Inverse metric `eta^{mu nu}` (both slots up).
pub fn metric_uu<S: Scalar>() -> Tensor<S> {
    let mut m = metric_dd::<S>();
    m.var = vec![Var::Up, Var::Up];
    m
}

/// Totally antisymmetric symbol with all slots down and
/// `epsilon_{0123} = ctx.orientation`.
pub fn epsilon_dddd<S: Scalar>(ctx: MetricContext) -> Tensor<S> {
    Tensor::from_fn(vec![Var::Down; 4], |idx| {
        let s = perm_sign(idx) * ctx.orientation as i64;
        S::from_int(s)
    })
}

/// Totally antisymmetric symbol with all slots up
/// (`epsilon^{0123} = -epsilon_{0123}` in Lorentzian signature).
pub fn epsilon_uuuu<S: Scalar>(ctx: MetricContext) -> Tensor<S> {
    epsilon_dddd::<S>(ctx).raise(0).raise(1).raise(2).raise(3)
}

/// Duality rotation by a quarter turn on a 2-form pair `(f, *f)`:
/// returns `(*f, -f)`.
pub fn duality_rotate<S: Scalar>(f: &Tensor<S>, ctx: MetricContext) -> (Tensor<S>, Tensor<S>) {
    (f.hodge_dual2(ctx), f.neg())
}

/// Antisymmetric rank-2 tensor (both down) from its strict upper-triangle
/// components in the order `(01, 02, 03, 12, 13, 23)`.
pub fn antisym2_from_upper<S: Scalar>(c: &[S; 6]) -> Tensor<S> {
    let pos = |i: usize, j: usize| -> usize {
        match (i, j) {
            (0, 1) => 0,
            (0, 2) => 1,
            (0, 3) => 2,
            (1, 2) => 3,
            (1, 3) => 4,
            (2, 3) => 5,
            _ => unreachable!(),
        }
    };
    Tensor::from_fn(vec![Var::Down, Var::Down], |idx| {
        let (i, j) = (idx[0], idx[1]);
        if i < j {
            c[pos(i, j)].clone()
        } else if i > j {
            c[pos(j, i)].neg()
        } else {
            S::zero()
        }
    })
}
