//! Bases of Dunkl monogenics: Maxwell-type `Z^j_s`, the CK tower `Ψ^j_s` and the partial-z basis `Φ^j_s`.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::clifford::SpinorPoly;
use crate::context::Context;
use crate::linalg::{self, Coordinates, LinalgError};
use crate::operator::{apply, Op, OpError};
use crate::poly::{MultiIndex, Polynomial};
use crate::scalar::{pochhammer, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BasisError {
    #[error("CK requires Z2^d")]
    RequiresZ2,
    #[error("{kind} set of degree {degree} has rank {rank}, expected {expected}")]
    RankDeficient { kind: BasisKind, degree: usize, rank: usize, expected: usize },
    #[error("element {label} is not annihilated by D")]
    NotMonogenic { label: String },
    #[error("CK level {0} out of range")]
    BadLevel(usize),
    #[error("CK input must be homogeneous in the first {0} variables")]
    BadCkInput(usize),
    #[error("coordinate {0} out of range")]
    BadCoordinate(usize),
    #[error(transparent)]
    Op(#[from] OpError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisKind {
    Maxwell,
    Ck,
    PartialZ,
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BasisKind::Maxwell => "maxwell",
            BasisKind::Ck => "ck",
            BasisKind::PartialZ => "partial-z",
        })
    }
}

impl std::str::FromStr for BasisKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "maxwell" => Ok(BasisKind::Maxwell),
            "ck" => Ok(BasisKind::Ck),
            "partial-z" => Ok(BasisKind::PartialZ),
            other => Err(format!("unknown basis kind {other:?}")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BasisElement {
    pub label: MultiIndex,
    pub spinor: usize,
    pub poly: SpinorPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Certificate {
    pub rank: usize,
    pub expected: usize,
    /// Every element is annihilated by `D`.
    pub kernel: bool,
}

#[derive(Clone, Debug)]
pub struct BasisSet {
    pub kind: BasisKind,
    pub degree: usize,
    pub elements: Vec<BasisElement>,
    pub certificate: Certificate,
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `dim P_n(R^d)`
pub fn poly_dim(d: usize, n: usize) -> usize {
    binomial(n + d - 1, d - 1)
}

/// `dim M_n(R^d; V) = C(n+d−2, d−2) · dim V`
pub fn monogenic_dim(d: usize, n: usize, spinor_size: usize) -> usize {
    match d {
        0 => 0,
        1 => usize::from(n == 0) * spinor_size,
        _ => binomial(n + d - 2, d - 2) * spinor_size,
    }
}

/// Multi-indices of degree `n` in `d` variables with a zero in position `omit`, reverse-lex ordered.
pub fn indices_with_zero(d: usize, n: usize, omit: usize) -> Vec<MultiIndex> {
    MultiIndex::all_of_degree(d, n).into_iter().filter(|m| m.get(omit) == 0).collect()
}

/// Exact rank of a list of degree-`n` elements.
pub fn rank_of(ctx: &Context, n: usize, elems: &[SpinorPoly]) -> Result<usize, LinalgError> {
    let coords = Coordinates::new(ctx.dim(), n, ctx.spinor_size());
    let rows = elems.iter().map(|f| coords.vectorize(f)).collect::<Result<Vec<_>, _>>()?;
    linalg::rank(&rows)
}

fn certify(ctx: &Context, kind: BasisKind, degree: usize, elements: Vec<BasisElement>) -> Result<BasisSet, BasisError> {
    let expected = monogenic_dim(ctx.dim(), degree, ctx.spinor_size());
    for e in &elements {
        if !ctx.dirac(&e.poly).is_zero() {
            return Err(BasisError::NotMonogenic { label: format!("{} s{}", e.label, e.spinor + 1) });
        }
    }
    let polys: Vec<SpinorPoly> = elements.iter().map(|e| e.poly.clone()).collect();
    let rank = rank_of(ctx, degree, &polys)?;
    if rank != expected || elements.len() != expected {
        return Err(BasisError::RankDeficient { kind, degree, rank, expected });
    }
    Ok(BasisSet { kind, degree, elements, certificate: Certificate { rank, expected, kernel: true } })
}

/// `Z^β_u` for every `|β| ≤ n`, built as `Z^β = z_{j0} Z^{β−ξ_{j0}}` with `j0` the first nonzero index of `β`.
pub fn z_family(ctx: &Context, u: &SpinorPoly, n: usize) -> Result<BTreeMap<MultiIndex, SpinorPoly>, OpError> {
    let d = ctx.dim();
    let zs: Vec<Op> = (0..d).map(|j| Op::z(ctx, j)).collect();
    let mut out = BTreeMap::new();
    out.insert(MultiIndex::zero(d), u.clone());
    for deg in 1..=n {
        let level: Vec<(MultiIndex, SpinorPoly)> = MultiIndex::all_of_degree(d, deg)
            .into_par_iter()
            .map(|beta| {
                let j0 = (0..d).find(|&j| beta.get(j) > 0).expect("degree is positive");
                let prev = MultiIndex::from_slice(
                    &beta.exps().iter().enumerate().map(|(i, &e)| if i == j0 { e - 1 } else { e }).collect::<Vec<_>>(),
                );
                apply(ctx, &zs[j0], &out[&prev]).map(|f| (beta, f))
            })
            .collect::<Result<_, _>>()?;
        out.extend(level);
    }
    Ok(out)
}

/// `Z^β_s = z_1^{β_1} ⋯ z_d^{β_d} s` for a constant spinor `s`.
pub fn z_monogenic(ctx: &Context, beta: &MultiIndex, s: &SpinorPoly) -> Result<SpinorPoly, OpError> {
    let mut f = s.clone();
    for j in (0..ctx.dim()).rev() {
        for _ in 0..beta.get(j) {
            f = apply(ctx, &Op::z(ctx, j), &f)?;
        }
    }
    Ok(f)
}

/// The basis `{Z^j_s : j_omit = 0, |j| = n}`. [`maxwell_basis`] uses `omit = d − 1`.
pub fn maxwell_basis_omitting(ctx: &Context, n: usize, omit: usize) -> Result<BasisSet, BasisError> {
    if omit >= ctx.dim() {
        return Err(BasisError::BadCoordinate(omit));
    }
    let families = (0..ctx.spinor_size())
        .into_par_iter()
        .map(|s| z_family(ctx, &ctx.basis_spinor(s), n))
        .collect::<Result<Vec<_>, _>>()?;
    let mut elements = Vec::new();
    for beta in indices_with_zero(ctx.dim(), n, omit) {
        for (s, fam) in families.iter().enumerate() {
            elements.push(BasisElement { label: beta.clone(), spinor: s, poly: fam[&beta].clone() });
        }
    }
    certify(ctx, BasisKind::Maxwell, n, elements)
}

pub fn maxwell_basis(ctx: &Context, n: usize) -> Result<BasisSet, BasisError> {
    maxwell_basis_omitting(ctx, n, ctx.dim() - 1)
}

fn require_z2(ctx: &Context) -> Result<(), BasisError> {
    if ctx.group().is_z2() {
        Ok(())
    } else {
        Err(BasisError::RequiresZ2)
    }
}

/// `κ_k` for the 1-based level `k`.
fn kappa(ctx: &Context, k: usize) -> Scalar {
    ctx.group().root(k - 1).kappa.clone()
}

/// `γ_k = κ_1 + … + κ_k`
fn gamma_upto(ctx: &Context, k: usize) -> Scalar {
    (1..=k).map(|i| kappa(ctx, i)).sum()
}

/// The CK extension `CK_{x_k}^{κ_k}` from `P_n(R^{k−1}) ⊗ V` to `M_n(R^k; V)` (`k` is 1-based, `k ≥ 2`).
pub fn ck_extend(ctx: &Context, k: usize, p: &SpinorPoly) -> Result<SpinorPoly, BasisError> {
    require_z2(ctx)?;
    if k < 2 || k > ctx.dim() {
        return Err(BasisError::BadLevel(k));
    }
    if p.is_zero() {
        return Ok(p.clone());
    }
    let n = p.degree().unwrap_or(0);
    if !p.is_homogeneous_of(n) || !p.components().iter().all(|c| c.depends_only_on_first(k - 1)) {
        return Err(BasisError::BadCkInput(k - 1));
    }
    let half = &kappa(ctx, k) + &Scalar::from_ratio(1, 2);
    let xk = Polynomial::var(ctx.dim(), k - 1);
    let xk2 = xk.mul(&xk);
    let dk = |f: &SpinorPoly| ctx.dirac_partial(k - 1, f);

    let mut even = SpinorPoly::zero(p.nvars(), p.size());
    let mut odd = SpinorPoly::zero(p.nvars(), p.size());
    // cur = x_k^{2a} D^{2a} p, one = D cur
    let mut cur = p.clone();
    let mut a = 0usize;
    let mut fact = Scalar::one();
    // (−ε)^a 4^a, so that D_{[k−1]}^2 = εΔ_{[k−1]} is accounted for
    let step = -ctx.eps().scalar() * Scalar::from_int(4);
    let mut four = Scalar::one();
    loop {
        if 2 * a <= n {
            even.add_assign(&cur.scale(&(&four * &fact * pochhammer(&half, a)).inv().expect("kappa >= 0")));
        }
        if 2 * a < n {
            let den = &four * &fact * pochhammer(&half, a + 1);
            odd.add_assign(&dk(&cur).scale(&den.inv().expect("kappa >= 0")));
        }
        a += 1;
        if 2 * a > n {
            break;
        }
        cur = dk(&dk(&cur)).mul_poly(&xk2);
        fact *= &Scalar::from_int(a as i64);
        four *= &step;
    }
    let c = -ctx.eps().scalar() * Scalar::from_ratio(1, 2);
    let odd = odd.mul_poly(&xk).apply_matrix(ctx.generator(k - 1)).scale(&c);
    Ok(even.add(&odd))
}

/// `R_k`: sets `x_k` to zero (1-based).
pub fn restrict(f: &SpinorPoly, k: usize) -> SpinorPoly {
    f.map(|p| p.set_var_zero(k - 1))
}

/// `x̲_{[k]}^m f`
pub fn vec_x_power(ctx: &Context, k: usize, m: usize, f: &SpinorPoly) -> SpinorPoly {
    (0..m).fold(f.clone(), |acc, _| ctx.vec_x_partial(k, &acc))
}

/// The CK tower at level `k`: `CK_{x_k}(x̲_{k−1}^{j_{k−1}} ⋯ CK_{x_2}(x_1^{j_1} v))`, with `j.len() = k − 1`.
pub fn ck_tower(ctx: &Context, j: &[u32], v: &SpinorPoly) -> Result<SpinorPoly, BasisError> {
    require_z2(ctx)?;
    let k = j.len() + 1;
    if k > ctx.dim() {
        return Err(BasisError::BadLevel(k));
    }
    let mut f = v.clone();
    if k == 1 {
        return Ok(f);
    }
    f = f.mul_poly(&Polynomial::var(ctx.dim(), 0).pow(j[0]));
    f = ck_extend(ctx, 2, &f)?;
    for level in 3..=k {
        f = vec_x_power(ctx, level - 1, j[level - 2] as usize, &f);
        f = ck_extend(ctx, level, &f)?;
    }
    Ok(f)
}

/// `Ψ^j_v` for `j = (j_1, …, j_{d−1}, 0)`.
pub fn ck_psi(ctx: &Context, j: &MultiIndex, v: &SpinorPoly) -> Result<SpinorPoly, BasisError> {
    let d = ctx.dim();
    ck_tower(ctx, &j.exps()[..d - 1], v)
}

pub fn ck_basis(ctx: &Context, n: usize) -> Result<BasisSet, BasisError> {
    require_z2(ctx)?;
    let d = ctx.dim();
    let labels: Vec<(MultiIndex, usize)> = indices_with_zero(d, n, d - 1)
        .into_iter()
        .flat_map(|m| (0..ctx.spinor_size()).map(move |s| (m.clone(), s)))
        .collect();
    let elements = labels
        .into_par_iter()
        .map(|(label, s)| {
            let poly = ck_psi(ctx, &label, &ctx.basis_spinor(s))?;
            Ok(BasisElement { label, spinor: s, poly })
        })
        .collect::<Result<Vec<_>, BasisError>>()?;
    certify(ctx, BasisKind::Ck, n, elements)
}

/// `z_{[k],k}` (1-based `k`).
pub fn z_level(ctx: &Context, k: usize) -> Op {
    Op::z_partial(ctx.eps(), k, k - 1)
}

/// `Φ^j_s = z_{[d]}^{j_{d−1}} ⋯ z_{[2]}^{j_1} s`, applied from `z_{[2]}` outwards.
pub fn partial_z_phi(ctx: &Context, j: &MultiIndex, s: &SpinorPoly) -> Result<SpinorPoly, OpError> {
    let mut f = s.clone();
    for k in 2..=ctx.dim() {
        let z = z_level(ctx, k);
        for _ in 0..j.get(k - 2) {
            f = apply(ctx, &z, &f)?;
        }
    }
    Ok(f)
}

pub fn partial_z_basis(ctx: &Context, n: usize) -> Result<BasisSet, BasisError> {
    require_z2(ctx)?;
    let d = ctx.dim();
    let labels: Vec<(MultiIndex, usize)> = indices_with_zero(d, n, d - 1)
        .into_iter()
        .flat_map(|m| (0..ctx.spinor_size()).map(move |s| (m.clone(), s)))
        .collect();
    let elements = labels
        .into_par_iter()
        .map(|(label, s)| {
            let poly = partial_z_phi(ctx, &label, &ctx.basis_spinor(s))?;
            Ok(BasisElement { label, spinor: s, poly })
        })
        .collect::<Result<Vec<_>, BasisError>>()?;
    certify(ctx, BasisKind::PartialZ, n, elements)
}

pub fn build_basis(ctx: &Context, kind: BasisKind, n: usize) -> Result<BasisSet, BasisError> {
    match kind {
        BasisKind::Maxwell => maxwell_basis(ctx, n),
        BasisKind::Ck => ck_basis(ctx, n),
        BasisKind::PartialZ => partial_z_basis(ctx, n),
    }
}

/// `j·s = e_d^{j_{d−1}} ⋯ e_3^{j_2} (e_2e_1)^{j_1} s`
pub fn j_action(ctx: &Context, j: &MultiIndex, s: &SpinorPoly) -> SpinorPoly {
    let mut f = s.clone();
    if ctx.dim() < 2 {
        return f;
    }
    for _ in 0..j.get(0) {
        f = f.apply_matrix(ctx.generator(0)).apply_matrix(ctx.generator(1));
    }
    for i in 2..ctx.dim() {
        for _ in 0..j.get(i - 1) {
            f = f.apply_matrix(ctx.generator(i));
        }
    }
    f
}

fn parity_factor(m: usize) -> Scalar {
    // (1 − (−1)^m)/2
    Scalar::from_int((m % 2) as i64)
}

/// `A_m = 1 + m + (1 − (−1)^m)κ_1 + 2κ_2`
pub fn constant_a_step(m: usize, kappa1: &Scalar, kappa2: &Scalar) -> Scalar {
    Scalar::from_int(1 + m as i64) + Scalar::from_int(2) * parity_factor(m) * kappa1 + Scalar::from_int(2) * kappa2
}

/// `a_2^j = 2^j (κ_2 + 1/2)_{⌊(j+1)/2⌋} (γ_2 + 1)_{⌊j/2⌋}`
pub fn constant_a2(j: usize, kappa2: &Scalar, gamma2: &Scalar) -> Scalar {
    Scalar::from_int(2).pow(j as u32)
        * pochhammer(&(kappa2 + &Scalar::from_ratio(1, 2)), j.div_ceil(2))
        * pochhammer(&(gamma2 + &Scalar::one()), j / 2)
}

/// `B^m_{k,n} = (−1)^{m+1}(m + 1 + (1−(−1)^m)/2 · (2n + k − 2 + 2γ_{k−1}) + 2κ_k)`
pub fn constant_b_step(k: usize, n: usize, m: usize, kappa_k: &Scalar, gamma_prev: &Scalar) -> Scalar {
    let inner = Scalar::from_int((2 * n + k) as i64 - 2) + Scalar::from_int(2) * gamma_prev;
    Scalar::sign_pow(m + 1)
        * (Scalar::from_int(m as i64 + 1) + parity_factor(m) * inner + Scalar::from_int(2) * kappa_k)
}

/// `b^j_{k,n} = (−1)^{⌊(j+1)/2⌋} 2^j (κ_k + 1/2)_{⌊(j+1)/2⌋} (γ_k + n + k/2)_{⌊j/2⌋}`
pub fn constant_b(k: usize, n: usize, j: usize, kappa_k: &Scalar, gamma_k: &Scalar) -> Scalar {
    let half = Scalar::from_ratio(1, 2);
    let up = j.div_ceil(2);
    Scalar::sign_pow(up)
        * Scalar::from_int(2).pow(j as u32)
        * pochhammer(&(kappa_k + &half), up)
        * pochhammer(&(gamma_k + &(Scalar::from_int(n as i64) + Scalar::from_ratio(k as i64, 2))), j / 2)
}

/// The factor `c_j` relating `Φ^j_s = c_j Ψ^j_{j·s}`.
pub fn constant_c(ctx: &Context, j: &MultiIndex) -> Scalar {
    let d = ctx.dim();
    if d < 2 {
        return Scalar::one();
    }
    // 1-based access to j_i
    let ji = |i: usize| j.get(i - 1) as usize;
    let mut sign_exp = 0usize;
    for k in 3..d {
        for l in 2..k {
            sign_exp += ji(k) * ji(l);
        }
    }
    let n: usize = (1..d).map(ji).sum();
    let half = Scalar::from_ratio(1, 2);
    let mut c = Scalar::sign_pow(sign_exp)
        * Scalar::from_int(2).pow(n as u32)
        * pochhammer(&(&half + &kappa(ctx, 2)), ji(1).div_ceil(2))
        * pochhammer(&(Scalar::one() + gamma_upto(ctx, 2)), ji(1) / 2);
    for i in 2..d {
        let below: usize = (1..i).map(ji).sum();
        let up = ji(i).div_ceil(2);
        let shift = Scalar::from_ratio(i as i64 + 1, 2) + gamma_upto(ctx, i + 1) + Scalar::from_int(below as i64);
        c = c * Scalar::sign_pow(up) * pochhammer(&(&half + &kappa(ctx, i + 1)), up) * pochhammer(&shift, ji(i) / 2);
    }
    c
}

/// `Some(r)` with `lhs = r · base`, or `None` when the two are not proportional.
pub fn ratio(lhs: &SpinorPoly, base: &SpinorPoly) -> Option<Scalar> {
    if base.is_zero() {
        return lhs.is_zero().then(Scalar::zero);
    }
    let (idx, m, c) = base
        .components()
        .iter()
        .enumerate()
        .find_map(|(i, p)| p.terms().next().map(|(m, c)| (i, m.clone(), c.clone())))?;
    let r = lhs.component(idx).coeff(&m) / c;
    (base.scale(&r) == *lhs).then_some(r)
}

/// One named check with its outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", if self.passed { "PASS" } else { "FAIL" }, self.name)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

/// Compares `lhs` with `expected · base`, reporting the observed ratio on failure.
pub fn constant_check(name: String, lhs: &SpinorPoly, base: &SpinorPoly, expected: &Scalar) -> Check {
    if lhs.is_zero() && base.is_zero() {
        return Check::new(name, true, "both sides vanish");
    }
    match ratio(lhs, base) {
        Some(r) if r == *expected => Check::new(name, true, ""),
        Some(r) => Check::new(name, false, format!("colinear with ratio {r}, formula gives {expected}")),
        None => Check::new(name, false, "sides are not proportional"),
    }
}

fn check_all_zero(name: String, items: impl IntoIterator<Item = Result<SpinorPoly, OpError>>) -> Check {
    let mut count = 0;
    for item in items {
        count += 1;
        match item {
            Ok(f) if f.is_zero() => {}
            Ok(f) => return Check::new(name, false, format!("nonzero sum {f}")),
            Err(e) => return Check::new(name, false, e.to_string()),
        }
    }
    Check::new(name, true, format!("{count} relations"))
}

/// `Σ_j Z^{η+ξ_j}_{e_j s} = 0` for all `|η| = n − 1` and basis spinors `s`.
pub fn check_linear_relation(ctx: &Context, n: usize) -> Check {
    let name = format!("sum_j Z^(eta+xi_j)_(e_j s) = 0, n = {n}");
    if n == 0 {
        return Check::new(name, true, "no relations");
    }
    let d = ctx.dim();
    let run = || -> Result<Vec<Result<SpinorPoly, OpError>>, OpError> {
        let mut out = Vec::new();
        for s in 0..ctx.spinor_size() {
            let fams: Vec<_> = (0..d)
                .map(|j| z_family(ctx, &ctx.basis_spinor(s).apply_matrix(ctx.generator(j)), n))
                .collect::<Result<_, _>>()?;
            for eta in MultiIndex::all_of_degree(d, n - 1) {
                let mut sum = SpinorPoly::zero(d, ctx.spinor_size());
                for (j, fam) in fams.iter().enumerate() {
                    sum.add_assign(&fam[&eta.with_added(j, 1)]);
                }
                out.push(Ok(sum));
            }
        }
        Ok(out)
    };
    match run() {
        Ok(items) => check_all_zero(name, items),
        Err(e) => Check::new(name, false, e.to_string()),
    }
}

/// `Σ_j Z^{η+2ξ_j}_s = 0` for all `|η| = n − 2`.
pub fn check_near_xu_relation(ctx: &Context, n: usize) -> Check {
    let name = format!("sum_j Z^(eta+2xi_j)_s = 0, n = {n}");
    if n < 2 {
        return Check::new(name, true, "no relations");
    }
    let d = ctx.dim();
    let mut items = Vec::new();
    for s in 0..ctx.spinor_size() {
        let fam = match z_family(ctx, &ctx.basis_spinor(s), n) {
            Ok(f) => f,
            Err(e) => return Check::new(name, false, e.to_string()),
        };
        for eta in MultiIndex::all_of_degree(d, n - 2) {
            let mut sum = SpinorPoly::zero(d, ctx.spinor_size());
            for j in 0..d {
                sum.add_assign(&fam[&eta.with_added(j, 2)]);
            }
            items.push(Ok(sum));
        }
    }
    check_all_zero(name, items)
}

/// `Z^{η+ξ_d}_s = −Σ_{j<d} Z^{η+ξ_j}_{e_j(εe_d s)}`, the elimination step behind the Maxwell basis.
pub fn check_elimination(ctx: &Context, n: usize) -> Check {
    let name = format!("elimination of Z^(eta+xi_d)_s, n = {n}");
    if n == 0 {
        return Check::new(name, true, "nothing to eliminate");
    }
    let d = ctx.dim();
    let eps = ctx.eps().scalar();
    let mut items = Vec::new();
    for s in 0..ctx.spinor_size() {
        let v = ctx.basis_spinor(s);
        let sp = v.apply_matrix(ctx.generator(d - 1)).scale(&eps);
        let fams: Result<Vec<_>, _> = std::iter::once(v)
            .chain((0..d - 1).map(|j| sp.apply_matrix(ctx.generator(j))))
            .map(|u| z_family(ctx, &u, n))
            .collect();
        let fams = match fams {
            Ok(f) => f,
            Err(e) => return Check::new(name, false, e.to_string()),
        };
        for eta in MultiIndex::all_of_degree(d, n - 1) {
            let mut diff = fams[0][&eta.with_added(d - 1, 1)].clone();
            for j in 0..d - 1 {
                diff.add_assign(&fams[j + 1][&eta.with_added(j, 1)]);
            }
            items.push(Ok(diff));
        }
    }
    check_all_zero(name, items)
}

/// `z_{[2]} CK_{x_2}(x_1^m s) = A_m CK_{x_2}(x_1^{m+1} e_2e_1 s)`
pub fn check_step_induction(ctx: &Context, m: usize, s: usize) -> Result<Check, BasisError> {
    require_z2(ctx)?;
    let v = ctx.basis_spinor(s);
    let x1 = Polynomial::var(ctx.dim(), 0);
    let lhs = apply(ctx, &z_level(ctx, 2), &ck_extend(ctx, 2, &v.mul_poly(&x1.pow(m as u32)))?)?;
    let e21 = v.apply_matrix(ctx.generator(0)).apply_matrix(ctx.generator(1));
    let base = ck_extend(ctx, 2, &e21.mul_poly(&x1.pow(m as u32 + 1)))?;
    let a = constant_a_step(m, &kappa(ctx, 1), &kappa(ctx, 2));
    Ok(constant_check(format!("A_{m} (s{})", s + 1), &lhs, &base, &a))
}

/// `z_{[2]}^j s = a_2^j CK_{x_2}(x_1^j (e_2e_1)^j s)`
pub fn check_z2_ck(ctx: &Context, j: usize, s: usize) -> Result<Check, BasisError> {
    require_z2(ctx)?;
    let v = ctx.basis_spinor(s);
    let lhs = apply(ctx, &z_level(ctx, 2).pow(j as u32), &v)?;
    let mut w = v;
    for _ in 0..j {
        w = w.apply_matrix(ctx.generator(0)).apply_matrix(ctx.generator(1));
    }
    let base = ck_extend(ctx, 2, &w.mul_poly(&Polynomial::var(ctx.dim(), 0).pow(j as u32)))?;
    let a = constant_a2(j, &kappa(ctx, 2), &gamma_upto(ctx, 2));
    Ok(constant_check(format!("a_2^{j} (s{})", s + 1), &lhs, &base, &a))
}

/// A spanning set of `M_n(R^k; V)` for `k ≤ d` taken from the CK tower.
pub fn lower_monogenics(ctx: &Context, k: usize, n: usize) -> Result<Vec<SpinorPoly>, BasisError> {
    require_z2(ctx)?;
    if k == 1 {
        return Ok(if n == 0 { ctx.spinor_basis() } else { Vec::new() });
    }
    let mut out = Vec::new();
    for j in indices_with_zero(k, n, k - 1) {
        for v in ctx.spinor_basis() {
            out.push(ck_tower(ctx, &j.exps()[..k - 1], &v)?);
        }
    }
    Ok(out)
}

/// `D_{[k]}(x̲_{[k]}^m f) = ε(m + (1−(−1)^m)/2 · (2n+k−1+2γ_k)) x̲_{[k]}^{m−1} f` for `f ∈ M_n(R^k; V)`.
pub fn check_dirac_on_vec_power(ctx: &Context, k: usize, n: usize, m: usize) -> Result<Check, BasisError> {
    let name = format!("D_[{k}] x_[{k}]^{m} on M_{n}(R^{k})");
    let inner = Scalar::from_int((2 * n + k) as i64 - 1) + Scalar::from_int(2) * gamma_upto(ctx, k);
    let c = ctx.eps().scalar() * (Scalar::from_int(m as i64) + parity_factor(m) * inner);
    for f in lower_monogenics(ctx, k, n)? {
        let lhs = ctx.dirac_partial(k, &vec_x_power(ctx, k, m, &f));
        let base = if m == 0 { SpinorPoly::zero(f.nvars(), f.size()) } else { vec_x_power(ctx, k, m - 1, &f) };
        let check = constant_check(name.clone(), &lhs, &base, &c);
        if !check.passed {
            return Ok(check);
        }
    }
    Ok(Check::new(name, true, ""))
}

/// `z_{[k]} CK_{x_k}(x̲_{k−1}^m f) = B^m_{k,n} CK_{x_k}(x̲_{k−1}^{m+1} e_k f)` for `f ∈ M_n(R^{k−1}; V)`.
pub fn check_induction_step(ctx: &Context, k: usize, n: usize, m: usize) -> Result<Check, BasisError> {
    let name = format!("B^{m}_({k},{n})");
    let b = constant_b_step(k, n, m, &kappa(ctx, k), &gamma_upto(ctx, k - 1));
    let z = z_level(ctx, k);
    for f in lower_monogenics(ctx, k - 1, n)? {
        let lhs = apply(ctx, &z, &ck_extend(ctx, k, &vec_x_power(ctx, k - 1, m, &f))?)?;
        let ef = f.apply_matrix(ctx.generator(k - 1));
        let base = ck_extend(ctx, k, &vec_x_power(ctx, k - 1, m + 1, &ef))?;
        let check = constant_check(name.clone(), &lhs, &base, &b);
        if !check.passed {
            return Ok(check);
        }
    }
    Ok(Check::new(name, true, ""))
}

/// `z_{[k]}^j f = b^j_{k,n} CK_{x_k}(x̲_{k−1}^j e_k^j f)` for `f ∈ M_n(R^{k−1}; V)`.
pub fn check_zk_ck(ctx: &Context, k: usize, n: usize, j: usize) -> Result<Check, BasisError> {
    let name = format!("b^{j}_({k},{n})");
    let b = constant_b(k, n, j, &kappa(ctx, k), &gamma_upto(ctx, k));
    let z = z_level(ctx, k).pow(j as u32);
    for f in lower_monogenics(ctx, k - 1, n)? {
        let lhs = apply(ctx, &z, &f)?;
        let ef = (0..j).fold(f.clone(), |acc, _| acc.apply_matrix(ctx.generator(k - 1)));
        let base = ck_extend(ctx, k, &vec_x_power(ctx, k - 1, j, &ef))?;
        let check = constant_check(name.clone(), &lhs, &base, &b);
        if !check.passed {
            return Ok(check);
        }
    }
    Ok(Check::new(name, true, ""))
}

/// `Φ^j_s = c_j Ψ^j_{j·s}`
pub fn check_phi_psi(ctx: &Context, j: &MultiIndex, s: usize) -> Result<Check, BasisError> {
    let v = ctx.basis_spinor(s);
    let phi = partial_z_phi(ctx, j, &v)?;
    let psi = ck_psi(ctx, j, &j_action(ctx, j, &v))?;
    Ok(constant_check(format!("c_{j} (s{})", s + 1), &phi, &psi, &constant_c(ctx, j)))
}

/// Checks `P_n ⊗ V = ⊕_k x̲^{n−k} M_k` by stacking `x̲^{n−k}` times Maxwell bases.
pub fn fischer_check(ctx: &Context, n: usize) -> Result<Check, BasisError> {
    let mut rows = Vec::new();
    let mut blocks = Vec::new();
    for k in 0..=n {
        let basis = maxwell_basis(ctx, k)?;
        blocks.push(basis.elements.len());
        for e in basis.elements {
            rows.push(vec_x_power(ctx, ctx.dim(), n - k, &e.poly));
        }
    }
    let rank = rank_of(ctx, n, &rows)?;
    let expected = poly_dim(ctx.dim(), n) * ctx.spinor_size();
    let detail = format!("rank {rank} of {expected}, blocks {blocks:?}");
    Ok(Check::new(format!("Fischer decomposition, n = {n}"), rank == expected, detail))
}

/// Coefficients of `f` in a certified basis.
pub fn coordinates_in(ctx: &Context, basis: &BasisSet, f: &SpinorPoly) -> Result<Option<Vec<Scalar>>, BasisError> {
    let coords = Coordinates::new(ctx.dim(), basis.degree, ctx.spinor_size());
    let rows = basis.elements.iter().map(|e| coords.vectorize(&e.poly)).collect::<Result<Vec<_>, _>>()?;
    Ok(match linalg::solve(&rows, &coords.vectorize(f)?)? {
        linalg::Solution::Unique(c) => Some(c),
        _ => None,
    })
}

pub fn expand(basis: &BasisSet, coeffs: &[Scalar], nvars: usize, size: usize) -> SpinorPoly {
    let mut out = SpinorPoly::zero(nvars, size);
    for (e, c) in basis.elements.iter().zip(coeffs) {
        out.add_assign(&e.poly.scale(c));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Eps;
    use crate::projection::proj_monogenic;
    use crate::roots::GroupSpec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d)
    }

    fn z2(kappa: &[(i64, i64)], eps: Eps) -> Context {
        Context::z2(&kappa.iter().map(|&(a, b)| q(a, b)).collect::<Vec<_>>(), eps).unwrap()
    }

    #[test]
    fn dims() {
        assert_eq!((0..5).map(|n| monogenic_dim(3, n, 2)).collect::<Vec<_>>(), vec![2, 4, 6, 8, 10]);
        assert_eq!((0..4).map(|n| monogenic_dim(2, n, 2)).collect::<Vec<_>>(), vec![2, 2, 2, 2]);
        assert_eq!(monogenic_dim(1, 0, 1), 1);
        assert_eq!(monogenic_dim(1, 3, 1), 0);
        assert_eq!(poly_dim(3, 3), 10);
    }

    #[test]
    fn maxwell_small() {
        let ctx = z2(&[(1, 2), (1, 3), (1, 4)], Eps::Minus);
        let b0 = maxwell_basis(&ctx, 0).unwrap();
        assert_eq!(b0.elements.len(), 2);
        assert_eq!(b0.elements[1].poly, ctx.basis_spinor(1));
        let b2 = maxwell_basis(&ctx, 2).unwrap();
        assert_eq!(b2.elements.len(), 6);
        assert_eq!(b2.certificate, Certificate { rank: 6, expected: 6, kernel: true });
        // other eliminations give bases too
        assert_eq!(maxwell_basis_omitting(&ctx, 2, 0).unwrap().elements.len(), 6);
    }

    #[test]
    fn maxwell_on_b2() {
        let ctx = Context::build(&GroupSpec::B2 { short: q(1, 2), long: q(1, 3) }, Eps::Minus).unwrap();
        for n in 0..=3 {
            assert_eq!(maxwell_basis(&ctx, n).unwrap().certificate.rank, 2);
        }
        assert_eq!(ck_basis(&ctx, 1).unwrap_err(), BasisError::RequiresZ2);
    }

    #[test]
    fn z_recursion() {
        let ctx = z2(&[(1, 2), (1, 3), (1, 4)], Eps::Plus);
        let s = ctx.basis_spinor(0);
        let beta = MultiIndex::from_slice(&[1, 1, 0]);
        let zb = z_monogenic(&ctx, &beta, &s).unwrap();
        let n = Scalar::from_int(2);
        let eps = ctx.eps().scalar();
        let two = Scalar::from_int(2);
        for j in 0..3 {
            let rec = two.clone() * eps.clone() * Op::x(j) * (Op::scalar(&n + &ctx.half_dim_gamma()))
                - two.clone() * eps.clone() * Op::vec_x(3) * Op::o(&ctx, j)
                - Op::vec_x(3) * Op::e(j)
                - eps.clone() * Op::sqnorm(3) * Op::dunkl(j);
            let want = z_monogenic(&ctx, &beta.with_added(j, 1), &s).unwrap();
            assert_eq!(apply(&ctx, &rec, &zb).unwrap(), want);
        }
    }

    #[test]
    fn ck_examples() {
        for eps in [Eps::Plus, Eps::Minus] {
            let ctx = z2(&[(1, 2), (1, 3)], eps);
            let s = ctx.basis_spinor(0);
            assert_eq!(ck_extend(&ctx, 2, &s).unwrap(), s);
            let got = ck_extend(&ctx, 2, &s.mul_var(0)).unwrap();
            let c = eps.scalar() * q(6, 5);
            let want = s.mul_var(0).sub(&s.apply_matrix(ctx.generator(0)).apply_matrix(ctx.generator(1)).mul_var(1).scale(&c));
            assert_eq!(got, want);
            assert!(ctx.dirac(&got).is_zero());
        }
    }

    #[test]
    fn ck_is_inverted_by_restriction() {
        let ctx = z2(&[(1, 2), (1, 3), (1, 4)], Eps::Minus);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 0..=4 {
            for _ in 0..3 {
                let mut p = SpinorPoly::zero(3, 2);
                for m in MultiIndex::all_of_degree(2, n) {
                    let exps = [m.get(0), m.get(1), 0];
                    let mono = Polynomial::monomial(MultiIndex::from_slice(&exps), Scalar::from_int(rng.gen_range(-3..4)));
                    p.add_assign(&SpinorPoly::tensor(&mono, &ctx.spinor().basis_vector(rng.gen_range(0..2))));
                }
                let f = ck_extend(&ctx, 3, &p).unwrap();
                assert!(ctx.dirac(&f).is_zero());
                assert_eq!(restrict(&f, 3), p);
            }
        }
    }

    #[test]
    fn ck_and_partial_z_bases() {
        let ctx = z2(&[(1, 2), (1, 3), (1, 4)], Eps::Minus);
        for n in 0..=3 {
            assert_eq!(ck_basis(&ctx, n).unwrap().elements.len(), 2 * (n + 1));
            assert_eq!(partial_z_basis(&ctx, n).unwrap().certificate.rank, 2 * (n + 1));
        }
        let d2 = z2(&[(1, 2), (1, 3)], Eps::Minus);
        let psi = ck_basis(&d2, 1).unwrap();
        let s = d2.basis_spinor(0);
        assert_eq!(psi.elements[0].poly, ck_extend(&d2, 2, &s.mul_var(0)).unwrap());
    }

    #[test]
    fn constants() {
        let (k1, k2) = (q(1, 2), q(1, 3));
        assert_eq!(constant_a_step(0, &k1, &k2), q(5, 3));
        assert_eq!(constant_a2(1, &k2, &(&k1 + &k2)), q(5, 3));
        assert_eq!(constant_b(3, 2, 0, &k2, &k1), Scalar::one());
        for m in 0..6 {
            let g2 = &k1 + &k2;
            assert_eq!(constant_a_step(m, &k1, &k2) * constant_a2(m, &k2, &g2), constant_a2(m + 1, &k2, &g2));
            let (kk, gp) = (q(1, 4), q(5, 6));
            let gk = &gp + &kk;
            assert_eq!(constant_b_step(3, 2, m, &kk, &gp) * constant_b(3, 2, m, &kk, &gk), constant_b(3, 2, m + 1, &kk, &gk));
        }
    }

    #[test]
    fn section_five_identities() {
        for eps in [Eps::Plus, Eps::Minus] {
            let ctx = z2(&[(1, 2), (1, 3), (1, 4)], eps);
            for m in 0..=3 {
                for s in 0..2 {
                    let c = check_step_induction(&ctx, m, s).unwrap();
                    assert!(c.passed, "{c}");
                    let c = check_z2_ck(&ctx, m, s).unwrap();
                    assert!(c.passed, "{c}");
                }
            }
            for n in 0..=2 {
                for m in 0..=2 {
                    let c = check_dirac_on_vec_power(&ctx, 2, n, m).unwrap();
                    assert!(c.passed, "{c}");
                    let c = check_induction_step(&ctx, 3, n, m).unwrap();
                    assert!(c.passed, "{c}");
                    let c = check_zk_ck(&ctx, 3, n, m).unwrap();
                    assert!(c.passed, "{c}");
                }
            }
            for n in 0..=3 {
                for j in indices_with_zero(3, n, 2) {
                    for s in 0..2 {
                        let c = check_phi_psi(&ctx, &j, s).unwrap();
                        assert!(c.passed, "{c}");
                    }
                }
            }
        }
    }

    #[test]
    fn relations_and_fischer() {
        let ctx = z2(&[(1, 2), (1, 3), (1, 4)], Eps::Minus);
        for n in 0..=3 {
            assert!(check_linear_relation(&ctx, n).passed);
            assert!(check_near_xu_relation(&ctx, n).passed);
            assert!(check_elimination(&ctx, n).passed);
            let f = fischer_check(&ctx, n).unwrap();
            assert!(f.passed, "{f}");
        }
        let d2 = z2(&[(1, 2), (1, 3)], Eps::Plus);
        let f = fischer_check(&d2, 2).unwrap();
        assert_eq!(f.detail, "rank 6 of 6, blocks [2, 2, 2]");
    }

    #[test]
    fn basis_round_trip() {
        let ctx = z2(&[(1, 2), (1, 3), (1, 4)], Eps::Minus);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 2;
        let mut p = SpinorPoly::zero(3, 2);
        for m in MultiIndex::all_of_degree(3, n) {
            for s in 0..2 {
                let mono = Polynomial::monomial(m.clone(), Scalar::from_int(rng.gen_range(-5..6)));
                p.add_assign(&SpinorPoly::tensor(&mono, &ctx.spinor().basis_vector(s)));
            }
        }
        let f = proj_monogenic(&ctx, &p).unwrap();
        for kind in [BasisKind::Maxwell, BasisKind::Ck, BasisKind::PartialZ] {
            let basis = build_basis(&ctx, kind, n).unwrap();
            let c = coordinates_in(&ctx, &basis, &f).unwrap().expect("monogenic lies in the span");
            assert_eq!(expand(&basis, &c, 3, 2), f);
        }
    }
}
