//! Operator expressions over the rational Cherednik–Clifford generators and an identity checker.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use rayon::prelude::*;
use thiserror::Error;

use crate::clifford::{CliffordElement, Eps, SpinorPoly};
use crate::context::Context;
use crate::dunkl::{DunklError, WeightedElement};
use crate::poly::{MultiIndex, Polynomial};
use crate::projection::{self, ProjectionError};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OpError {
    #[error(transparent)]
    Dunkl(#[from] DunklError),
    #[error(transparent)]
    Projection(#[from] ProjectionError),
}

/// Building blocks of an operator expression. Indices are zero-based.
#[derive(Clone, Debug, PartialEq)]
pub enum Prim {
    Identity,
    Dunkl(usize),
    MulVar(usize),
    /// Multiplication by `x_1² + … + x_M²`.
    MulSqNorm(usize),
    MulPoly(Polynomial),
    MulNormPow(BigRational),
    Generator(usize),
    Clifford(CliffordElement),
    Reflect(usize),
    DoubleCover(usize),
    Euler(usize),
    H(usize),
    Laplacian,
    Dirac(usize),
    VecX(usize),
    KelvinK,
    KelvinI,
    ProjHarmonic,
    ProjMonogenic,
    ProjHToM,
}

impl Prim {
    fn needs_weights(&self) -> bool {
        matches!(self, Prim::MulNormPow(_) | Prim::KelvinK | Prim::KelvinI)
    }
}

/// A lazily evaluated operator. `Compose` lists factors left to right, so the last one acts first.
#[derive(Clone, Debug, PartialEq)]
pub enum Op {
    Prim(Prim),
    Scale(Scalar, Box<Op>),
    Sum(Vec<Op>),
    Compose(Vec<Op>),
    Commutator(Box<Op>, Box<Op>),
    Anticommutator(Box<Op>, Box<Op>),
    Power(Box<Op>, u32),
}

impl Op {
    pub fn zero() -> Op {
        Op::Sum(Vec::new())
    }

    pub fn id() -> Op {
        Op::Prim(Prim::Identity)
    }

    pub fn scalar(c: Scalar) -> Op {
        Op::Scale(c, Box::new(Op::id()))
    }

    pub fn int(c: i64) -> Op {
        Op::scalar(Scalar::from_int(c))
    }

    pub fn dunkl(j: usize) -> Op {
        Op::Prim(Prim::Dunkl(j))
    }

    pub fn x(j: usize) -> Op {
        Op::Prim(Prim::MulVar(j))
    }

    /// Multiplication by `|x|²` in `d` variables.
    pub fn sqnorm(d: usize) -> Op {
        Op::Prim(Prim::MulSqNorm(d))
    }

    pub fn mul_poly(p: Polynomial) -> Op {
        Op::Prim(Prim::MulPoly(p))
    }

    pub fn norm_pow(s: BigRational) -> Op {
        Op::Prim(Prim::MulNormPow(s))
    }

    pub fn e(j: usize) -> Op {
        Op::Prim(Prim::Generator(j))
    }

    pub fn clifford(a: CliffordElement) -> Op {
        Op::Prim(Prim::Clifford(a))
    }

    pub fn reflect(idx: usize) -> Op {
        Op::Prim(Prim::Reflect(idx))
    }

    pub fn double_cover(idx: usize) -> Op {
        Op::Prim(Prim::DoubleCover(idx))
    }

    /// `E_{[M]}`; `M = d` is the full Euler operator.
    pub fn euler(rank: usize) -> Op {
        Op::Prim(Prim::Euler(rank))
    }

    /// `H_{[M]}`; `M = d` is `H`.
    pub fn h(rank: usize) -> Op {
        Op::Prim(Prim::H(rank))
    }

    pub fn laplacian() -> Op {
        Op::Prim(Prim::Laplacian)
    }

    /// `D_{[M]}`; `M = d` is the Dunkl–Dirac operator.
    pub fn dirac(rank: usize) -> Op {
        Op::Prim(Prim::Dirac(rank))
    }

    /// `x̲_{[M]}`
    pub fn vec_x(rank: usize) -> Op {
        Op::Prim(Prim::VecX(rank))
    }

    pub fn kelvin_k() -> Op {
        Op::Prim(Prim::KelvinK)
    }

    pub fn kelvin_i() -> Op {
        Op::Prim(Prim::KelvinI)
    }

    pub fn proj_harmonic() -> Op {
        Op::Prim(Prim::ProjHarmonic)
    }

    pub fn proj_monogenic() -> Op {
        Op::Prim(Prim::ProjMonogenic)
    }

    pub fn proj_h_to_m() -> Op {
        Op::Prim(Prim::ProjHToM)
    }

    pub fn comm(a: Op, b: Op) -> Op {
        Op::Commutator(Box::new(a), Box::new(b))
    }

    pub fn acomm(a: Op, b: Op) -> Op {
        Op::Anticommutator(Box::new(a), Box::new(b))
    }

    pub fn pow(self, k: u32) -> Op {
        Op::Power(Box::new(self), k)
    }

    pub fn sum(terms: impl IntoIterator<Item = Op>) -> Op {
        Op::Sum(terms.into_iter().collect())
    }

    /// `m_j = 2x_j(H − 1) − |x|² T_j`
    pub fn m(d: usize, j: usize) -> Op {
        Op::int(2) * Op::x(j) * (Op::h(d) - Op::id()) - Op::sqnorm(d) * Op::dunkl(j)
    }

    /// `z_{[M],j} = 2εx_j H_{[M]} − x̲_{[M]} T_j x̲_{[M]}`; `M = d` gives `z_j`.
    pub fn z_partial(eps: Eps, rank: usize, j: usize) -> Op {
        Op::scalar(Scalar::from_int(2 * eps.value())) * Op::x(j) * Op::h(rank)
            - Op::vec_x(rank) * Op::dunkl(j) * Op::vec_x(rank)
    }

    pub fn z(ctx: &Context, j: usize) -> Op {
        Op::z_partial(ctx.eps(), ctx.dim(), j)
    }

    /// `O_j = ε Σ_α κ(α) α_j α̲σ_α`
    pub fn o(ctx: &Context, j: usize) -> Op {
        Op::sum(ctx.group().roots().iter().enumerate().filter(|(_, r)| !(r.vector[j].is_zero() || r.kappa.is_zero())).map(
            |(idx, r)| Op::scalar(ctx.eps().scalar() * &r.kappa * &r.vector[j]) * Op::double_cover(idx),
        ))
    }

    /// `x_j{D, x̲} − x̲[D, x_j] − ε|x|² T_j`
    pub fn z_via_osp(ctx: &Context, j: usize) -> Op {
        let d = ctx.dim();
        Op::x(j) * Op::acomm(Op::dirac(d), Op::vec_x(d))
            - Op::vec_x(d) * Op::comm(Op::dirac(d), Op::x(j))
            - Op::scalar(ctx.eps().scalar()) * Op::sqnorm(d) * Op::dunkl(j)
    }

    /// `2εx_j(E + d/2 + γ) − x̲(e_j + 2εO_j) − ε|x|² T_j`
    pub fn z_via_o(ctx: &Context, j: usize) -> Op {
        let d = ctx.dim();
        let eps = ctx.eps().scalar();
        Op::scalar(Scalar::from_int(2) * &eps) * Op::x(j) * (Op::euler(d) + Op::scalar(ctx.half_dim_gamma()))
            - Op::vec_x(d) * (Op::e(j) + Op::scalar(Scalar::from_int(2) * &eps) * Op::o(ctx, j))
            - Op::scalar(eps) * Op::sqnorm(d) * Op::dunkl(j)
    }

    /// `m^β = m_1^{β_1} ⋯ m_d^{β_d}`
    pub fn m_pow(d: usize, beta: &MultiIndex) -> Op {
        Op::Compose((0..d).map(|j| Op::m(d, j).pow(beta.get(j))).collect())
    }

    /// `z_{[M]}^β` over the first `β.nvars()` indices.
    pub fn z_pow(eps: Eps, rank: usize, beta: &MultiIndex) -> Op {
        Op::Compose((0..beta.nvars()).map(|j| Op::z_partial(eps, rank, j).pow(beta.get(j))).collect())
    }

    /// `T^β`
    pub fn dunkl_pow(beta: &MultiIndex) -> Op {
        Op::Compose((0..beta.nvars()).map(|j| Op::dunkl(j).pow(beta.get(j))).collect())
    }

    /// True when evaluation has to pass through radially weighted elements.
    pub fn needs_weights(&self) -> bool {
        match self {
            Op::Prim(p) => p.needs_weights(),
            Op::Scale(_, a) | Op::Power(a, _) => a.needs_weights(),
            Op::Sum(v) | Op::Compose(v) => v.iter().any(Op::needs_weights),
            Op::Commutator(a, b) | Op::Anticommutator(a, b) => a.needs_weights() || b.needs_weights(),
        }
    }
}

impl Mul for Op {
    type Output = Op;
    fn mul(self, rhs: Op) -> Op {
        let mut factors = match self {
            Op::Compose(v) => v,
            other => vec![other],
        };
        match rhs {
            Op::Compose(v) => factors.extend(v),
            other => factors.push(other),
        }
        Op::Compose(factors)
    }
}

impl Add for Op {
    type Output = Op;
    fn add(self, rhs: Op) -> Op {
        let mut terms = match self {
            Op::Sum(v) => v,
            other => vec![other],
        };
        match rhs {
            Op::Sum(v) => terms.extend(v),
            other => terms.push(other),
        }
        Op::Sum(terms)
    }
}

impl Neg for Op {
    type Output = Op;
    fn neg(self) -> Op {
        Op::Scale(Scalar::from_int(-1), Box::new(self))
    }
}

impl Sub for Op {
    type Output = Op;
    fn sub(self, rhs: Op) -> Op {
        self + (-rhs)
    }
}

impl Mul<Op> for Scalar {
    type Output = Op;
    fn mul(self, rhs: Op) -> Op {
        Op::Scale(self, Box::new(rhs))
    }
}

impl fmt::Display for Prim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Prim::Identity => write!(f, "1"),
            Prim::Dunkl(j) => write!(f, "T{}", j + 1),
            Prim::MulVar(j) => write!(f, "x{}", j + 1),
            Prim::MulSqNorm(m) => write!(f, "|x|^2[{m}]"),
            Prim::MulPoly(p) => write!(f, "({p})"),
            Prim::MulNormPow(s) => write!(f, "|x|^({s})"),
            Prim::Generator(j) => write!(f, "e{}", j + 1),
            Prim::Clifford(a) => write!(f, "({a})"),
            Prim::Reflect(i) => write!(f, "sigma[{i}]"),
            Prim::DoubleCover(i) => write!(f, "alpha_sigma[{i}]"),
            Prim::Euler(m) => write!(f, "E[{m}]"),
            Prim::H(m) => write!(f, "H[{m}]"),
            Prim::Laplacian => write!(f, "Lap"),
            Prim::Dirac(m) => write!(f, "D[{m}]"),
            Prim::VecX(m) => write!(f, "x_[{m}]"),
            Prim::KelvinK => write!(f, "K"),
            Prim::KelvinI => write!(f, "I"),
            Prim::ProjHarmonic => write!(f, "projH"),
            Prim::ProjMonogenic => write!(f, "projM"),
            Prim::ProjHToM => write!(f, "projHM"),
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, v: &[Op], sep: &str| -> fmt::Result {
            for (i, o) in v.iter().enumerate() {
                if i > 0 {
                    write!(f, "{sep}")?;
                }
                write!(f, "{o}")?;
            }
            Ok(())
        };
        match self {
            Op::Prim(p) => write!(f, "{p}"),
            Op::Scale(c, a) if **a == Op::id() => write!(f, "{c}"),
            Op::Scale(c, a) => write!(f, "({c})*{a}"),
            Op::Sum(v) if v.is_empty() => write!(f, "0"),
            Op::Sum(v) => {
                write!(f, "(")?;
                join(f, v, " + ")?;
                write!(f, ")")
            }
            Op::Compose(v) => join(f, v, " "),
            Op::Commutator(a, b) => write!(f, "[{a}, {b}]"),
            Op::Anticommutator(a, b) => write!(f, "{{{a}, {b}}}"),
            Op::Power(a, k) => write!(f, "({a})^{k}"),
        }
    }
}

/// Values an operator expression can act on.
pub trait Operand: Clone + Send + Sync + PartialEq + fmt::Display {
    fn zero_like(&self) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, c: &Scalar) -> Self;
    fn apply_prim(ctx: &Context, p: &Prim, f: &Self) -> Result<Self, OpError>;
}

impl Operand for SpinorPoly {
    fn zero_like(&self) -> Self {
        SpinorPoly::zero(self.nvars(), self.size())
    }

    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }

    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }

    fn times(&self, c: &Scalar) -> Self {
        self.scale(c)
    }

    fn apply_prim(ctx: &Context, p: &Prim, f: &Self) -> Result<Self, OpError> {
        Ok(match p {
            Prim::Identity => f.clone(),
            Prim::Dunkl(j) => ctx.dunkl(*j, f),
            Prim::MulVar(j) => f.mul_var(*j),
            Prim::MulSqNorm(m) => f.mul_poly(&Polynomial::sqnorm(ctx.dim(), *m)),
            Prim::MulPoly(q) => f.mul_poly(q),
            Prim::Generator(j) => f.apply_matrix(ctx.generator(*j)),
            Prim::Clifford(a) => f.apply_matrix(&ctx.spinor().to_matrix(a)),
            Prim::Reflect(i) => ctx.reflect(*i, f),
            Prim::DoubleCover(i) => ctx.double_cover(*i, f),
            Prim::Euler(m) => f.map(|q| q.euler_partial(*m)),
            Prim::H(m) if *m == ctx.dim() => ctx.h_operator(f),
            Prim::H(m) => ctx.h_partial(*m, f),
            Prim::Laplacian => ctx.laplacian(f),
            Prim::Dirac(m) => ctx.dirac_partial(*m, f),
            Prim::VecX(m) => ctx.vec_x_partial(*m, f),
            Prim::ProjHarmonic => projection::proj_harmonic(ctx, f)?,
            Prim::ProjMonogenic => projection::proj_monogenic(ctx, f)?,
            Prim::ProjHToM => projection::proj_h_to_m(ctx, f)?,
            Prim::MulNormPow(_) | Prim::KelvinK | Prim::KelvinI => {
                let w = WeightedElement::apply_prim(ctx, p, &WeightedElement::from_spinor(f.clone()))?;
                w.to_spinor()?
            }
        })
    }
}

impl Operand for WeightedElement {
    fn zero_like(&self) -> Self {
        WeightedElement::zero(self.nvars(), self.size())
    }

    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }

    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }

    fn times(&self, c: &Scalar) -> Self {
        self.scale(c)
    }

    fn apply_prim(ctx: &Context, p: &Prim, f: &Self) -> Result<Self, OpError> {
        Ok(match p {
            Prim::Identity => f.clone(),
            Prim::Dunkl(j) => ctx.dunkl_apply(*j, f),
            Prim::MulNormPow(s) => f.mul_norm_pow(s),
            Prim::Euler(m) => f.euler_partial(*m),
            Prim::H(m) if *m == ctx.dim() => ctx.h_weighted(f),
            Prim::H(m) => ctx.h_partial_weighted(*m, f),
            Prim::Laplacian => ctx.laplacian_weighted(f),
            Prim::Dirac(m) => {
                let mut out = f.zero_like();
                for j in 0..*m {
                    out = out.add(&ctx.dunkl_apply(j, f).map_parts(|q| q.apply_matrix(ctx.generator(j))));
                }
                out
            }
            Prim::KelvinK => ctx.kelvin_k(f)?,
            Prim::KelvinI => ctx.kelvin_i(f)?,
            Prim::ProjHarmonic | Prim::ProjMonogenic | Prim::ProjHToM => {
                WeightedElement::from_spinor(SpinorPoly::apply_prim(ctx, p, &f.to_spinor()?)?)
            }
            // everything else commutes with radial factors
            other => {
                let mut err = None;
                let out = f.map_parts(|q| {
                    SpinorPoly::apply_prim(ctx, other, q).unwrap_or_else(|e| {
                        err = Some(e);
                        q.clone()
                    })
                });
                if let Some(e) = err {
                    return Err(e);
                }
                out
            }
        })
    }
}

/// Evaluates `op` on `f`.
pub fn apply<T: Operand>(ctx: &Context, op: &Op, f: &T) -> Result<T, OpError> {
    match op {
        Op::Prim(p) => T::apply_prim(ctx, p, f),
        Op::Scale(c, a) => {
            if c.is_zero() {
                Ok(f.zero_like())
            } else {
                Ok(apply(ctx, a, f)?.times(c))
            }
        }
        Op::Sum(terms) => {
            let mut acc = f.zero_like();
            for t in terms {
                acc = acc.plus(&apply(ctx, t, f)?);
            }
            Ok(acc)
        }
        Op::Compose(factors) => {
            let mut cur = f.clone();
            for a in factors.iter().rev() {
                cur = apply(ctx, a, &cur)?;
            }
            Ok(cur)
        }
        Op::Commutator(a, b) => {
            let ab = apply(ctx, a, &apply(ctx, b, f)?)?;
            let ba = apply(ctx, b, &apply(ctx, a, f)?)?;
            Ok(ab.minus(&ba))
        }
        Op::Anticommutator(a, b) => {
            let ab = apply(ctx, a, &apply(ctx, b, f)?)?;
            let ba = apply(ctx, b, &apply(ctx, a, f)?)?;
            Ok(ab.plus(&ba))
        }
        Op::Power(a, k) => {
            let mut cur = f.clone();
            for _ in 0..*k {
                cur = apply(ctx, a, &cur)?;
            }
            Ok(cur)
        }
    }
}

/// Evaluates `op` on a polynomial, routing through weighted elements when a Kelvin transform is involved.
pub fn apply_spinor(ctx: &Context, op: &Op, f: &SpinorPoly) -> Result<SpinorPoly, OpError> {
    if op.needs_weights() {
        Ok(apply(ctx, op, &WeightedElement::from_spinor(f.clone()))?.to_spinor()?)
    } else {
        apply(ctx, op, f)
    }
}

/// Monomials of degree `≤ max_degree` times the standard spinor basis.
pub fn spanning_set(ctx: &Context, max_degree: usize) -> Vec<SpinorPoly> {
    let d = ctx.dim();
    let mut out = Vec::new();
    for n in 0..=max_degree {
        for m in MultiIndex::all_of_degree(d, n) {
            let p = Polynomial::monomial(m, Scalar::one());
            for s in 0..ctx.spinor_size() {
                out.push(SpinorPoly::tensor(&p, &ctx.spinor().basis_vector(s)));
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct Mismatch {
    pub input: SpinorPoly,
    pub lhs: String,
    pub rhs: String,
}

/// Result of checking `lhs = rhs` on a set of inputs.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub checked: usize,
    pub mismatch: Option<Mismatch>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.mismatch {
            None => write!(f, "ok on {} inputs", self.checked),
            Some(m) => write!(f, "mismatch on input {}: lhs = {}, rhs = {}", m.input, m.lhs, m.rhs),
        }
    }
}

fn compare<T: Operand>(ctx: &Context, lhs: &Op, rhs: &Op, f: T) -> Option<(String, String)> {
    let a = apply(ctx, lhs, &f);
    let b = apply(ctx, rhs, &f);
    match (a, b) {
        (Ok(a), Ok(b)) if a == b => None,
        (a, b) => {
            let show = |r: Result<T, OpError>| match r {
                Ok(v) => v.to_string(),
                Err(e) => format!("error: {e}"),
            };
            Some((show(a), show(b)))
        }
    }
}

/// Applies both sides to every input and reports the first disagreement in input order.
pub fn verify_on(ctx: &Context, lhs: &Op, rhs: &Op, inputs: &[SpinorPoly]) -> IdentityReport {
    let weighted = lhs.needs_weights() || rhs.needs_weights();
    let mismatch = inputs.par_iter().find_map_first(|f| {
        let out = if weighted {
            compare(ctx, lhs, rhs, WeightedElement::from_spinor(f.clone()))
        } else {
            compare(ctx, lhs, rhs, f.clone())
        };
        out.map(|(l, r)| Mismatch { input: f.clone(), lhs: l, rhs: r })
    });
    IdentityReport { checked: inputs.len(), mismatch }
}

/// Checks `lhs = rhs` on all monomial-times-spinor inputs of degree `≤ max_degree`.
pub fn verify_identity(ctx: &Context, lhs: &Op, rhs: &Op, max_degree: usize) -> IdentityReport {
    verify_on(ctx, lhs, rhs, &spanning_set(ctx, max_degree))
}
