//! Harmonic and monogenic projections and Xu's harmonics `H_β`.

use thiserror::Error;

use crate::clifford::SpinorPoly;
use crate::context::Context;
use crate::dunkl::{DunklError, WeightedElement};
use crate::poly::{MultiIndex, Polynomial};
use crate::scalar::{pochhammer, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProjectionError {
    #[error("input is not homogeneous of degree {0}")]
    NotHomogeneous(usize),
    #[error("input of degree {0} is not Dunkl harmonic")]
    NotHarmonic(usize),
    #[error("vanishing denominator in term {term} at degree {degree}")]
    ZeroDenominator { degree: usize, term: usize },
    #[error(transparent)]
    Dunkl(#[from] DunklError),
}

fn factorial(j: usize) -> Scalar {
    (1..=j as i64).map(Scalar::from_int).fold(Scalar::one(), |a, b| a * b)
}

fn two_pow(k: usize) -> Scalar {
    Scalar::from_int(2).pow(k as u32)
}

/// Adds `num / den` to `acc`, failing only when a nonzero numerator meets a zero denominator.
fn add_quotient(
    acc: &mut SpinorPoly,
    num: &SpinorPoly,
    den: &Scalar,
    degree: usize,
    term: usize,
) -> Result<(), ProjectionError> {
    if num.is_zero() {
        return Ok(());
    }
    let inv = den.inv().map_err(|_| ProjectionError::ZeroDenominator { degree, term })?;
    acc.add_assign(&num.scale(&inv));
    Ok(())
}

fn per_component(
    ctx: &Context,
    f: &SpinorPoly,
    g: impl Fn(&Context, &SpinorPoly, usize) -> Result<SpinorPoly, ProjectionError>,
) -> Result<SpinorPoly, ProjectionError> {
    let mut out = SpinorPoly::zero(f.nvars(), f.size());
    for (n, piece) in f.homogeneous_components() {
        out.add_assign(&g(ctx, &piece, n)?);
    }
    Ok(out)
}

fn check_degree(p: &SpinorPoly, n: usize) -> Result<(), ProjectionError> {
    if p.is_homogeneous_of(n) {
        Ok(())
    } else {
        Err(ProjectionError::NotHomogeneous(n))
    }
}

/// `Σ_j |x|^{2j} Δ_κ^j p / (4^j j! (−n−d/2−γ+2)_j)` for `p ∈ P_n ⊗ V`.
pub fn proj_harmonic_n(ctx: &Context, p: &SpinorPoly, n: usize) -> Result<SpinorPoly, ProjectionError> {
    check_degree(p, n)?;
    let a = Scalar::from_int(2 - n as i64) - ctx.half_dim_gamma();
    let sq = Polynomial::sqnorm(ctx.dim(), ctx.dim());
    let mut out = p.clone();
    let mut lap = p.clone();
    let mut radial = Polynomial::one(ctx.dim());
    for j in 1..=n / 2 {
        lap = ctx.laplacian(&lap);
        if lap.is_zero() {
            break;
        }
        radial = radial.mul(&sq);
        let den = two_pow(2 * j) * factorial(j) * pochhammer(&a, j);
        add_quotient(&mut out, &lap.mul_poly(&radial), &den, n, j)?;
    }
    Ok(out)
}

/// Harmonic projection applied to each homogeneous component.
pub fn proj_harmonic(ctx: &Context, f: &SpinorPoly) -> Result<SpinorPoly, ProjectionError> {
    per_component(ctx, f, proj_harmonic_n)
}

/// The three-sum projection `P_n ⊗ V → M_n`.
pub fn proj_monogenic_n(ctx: &Context, p: &SpinorPoly, n: usize) -> Result<SpinorPoly, ProjectionError> {
    check_degree(p, n)?;
    let c = ctx.half_dim_gamma();
    let eps = ctx.eps().scalar();
    let mut out = p.clone();

    // −ε Σ_j (−1)^j x̲^{2j+1} D^{2j+1} p / (2^{2j+1} j! (n−j−1+d/2+γ)_{j+1})
    let mut dp = ctx.dirac(p);
    for j in 0..=n.div_ceil(2) {
        if j > 0 {
            dp = ctx.dirac(&ctx.dirac(&dp));
        }
        if dp.is_zero() {
            break;
        }
        let mut num = dp.clone();
        for _ in 0..2 * j + 1 {
            num = ctx.vec_x(&num);
        }
        let num = num.scale(&(-&eps * Scalar::sign_pow(j)));
        let base = Scalar::from_int(n as i64 - j as i64 - 1) + &c;
        let den = two_pow(2 * j + 1) * factorial(j) * pochhammer(&base, j + 1);
        add_quotient(&mut out, &num, &den, n, j)?;
    }

    // Σ_{j≥1} (−1)^j |x|^{2j} Δ^j p / (4^j j! (n−j+d/2+γ)_j)
    let sq = Polynomial::sqnorm(ctx.dim(), ctx.dim());
    let mut lap = p.clone();
    let mut radial = Polynomial::one(ctx.dim());
    for j in 1..=n / 2 {
        lap = ctx.laplacian(&lap);
        if lap.is_zero() {
            break;
        }
        radial = radial.mul(&sq);
        let base = Scalar::from_int(n as i64 - j as i64) + &c;
        let den = two_pow(2 * j) * factorial(j) * pochhammer(&base, j);
        let num = lap.mul_poly(&radial).scale(&Scalar::sign_pow(j));
        add_quotient(&mut out, &num, &den, n, j + n)?;
    }
    Ok(out)
}

pub fn proj_monogenic(ctx: &Context, f: &SpinorPoly) -> Result<SpinorPoly, ProjectionError> {
    per_component(ctx, f, proj_monogenic_n)
}

/// Denominator `2(n − 1 + d/2 + γ)` of the harmonic-to-monogenic factor.
pub fn h_to_m_denominator(ctx: &Context, n: usize) -> Scalar {
    Scalar::from_int(2) * (Scalar::from_int(n as i64 - 1) + &ctx.half_dim_gamma())
}

/// `(1 − εx̲D / (2(n−1+d/2+γ))) h` for a harmonic `h ∈ H_n ⊗ V`.
pub fn proj_h_to_m_n(ctx: &Context, h: &SpinorPoly, n: usize) -> Result<SpinorPoly, ProjectionError> {
    check_degree(h, n)?;
    if !ctx.laplacian(h).is_zero() {
        return Err(ProjectionError::NotHarmonic(n));
    }
    h_to_m_unchecked(ctx, h, n)
}

fn h_to_m_unchecked(ctx: &Context, h: &SpinorPoly, n: usize) -> Result<SpinorPoly, ProjectionError> {
    let mut out = h.clone();
    let num = ctx.vec_x(&ctx.dirac(h)).scale(&-ctx.eps().scalar());
    add_quotient(&mut out, &num, &h_to_m_denominator(ctx, n), n, 0)?;
    Ok(out)
}

/// Applies the harmonic-to-monogenic factor degree by degree without the harmonicity check.
pub fn proj_h_to_m(ctx: &Context, f: &SpinorPoly) -> Result<SpinorPoly, ProjectionError> {
    per_component(ctx, f, h_to_m_unchecked)
}

/// `H_β = K_κ T^β K_κ(1)`.
pub fn xu_harmonic(ctx: &Context, beta: &MultiIndex) -> Result<Polynomial, ProjectionError> {
    let d = ctx.dim();
    let one = SpinorPoly::from_components(vec![Polynomial::one(d)]);
    let mut f = ctx.kelvin_k(&WeightedElement::from_spinor(one))?;
    for j in (0..d).rev() {
        for _ in 0..beta.get(j) {
            f = ctx.dunkl_apply(j, &f);
        }
    }
    let f = ctx.kelvin_k(&f)?.to_spinor()?;
    Ok(f.component(0).clone())
}
