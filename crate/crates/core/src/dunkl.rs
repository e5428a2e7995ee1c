//! Dunkl operators, the Dunkl Laplacian, `H`, radially weighted elements and the Kelvin transforms.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::clifford::SpinorPoly;
use crate::context::Context;
use crate::poly::Polynomial;
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DunklError {
    #[error("Kelvin transforms need a rational gamma, got {0}")]
    IrrationalGamma(Scalar),
    #[error("element still carries a non-polynomial radial factor")]
    NotPolynomial,
}

impl Context {
    /// `T_j p` on a scalar polynomial (`j` zero-based).
    pub fn dunkl_poly(&self, j: usize, p: &Polynomial) -> Polynomial {
        let mut out = p.partial(j);
        for (idx, root) in self.group().roots().iter().enumerate() {
            if root.vector[j].is_zero() || root.kappa.is_zero() {
                continue;
            }
            let term = match root.coordinate {
                // α = ±ξ_j: the signs of α_j and ⟨α, x⟩ cancel
                Some(_) => p.coordinate_divided_difference(j).scale(&root.kappa),
                None => {
                    let diff = p.sub(&self.group().apply_reflection(idx, p));
                    diff.divide_by_linear_form(&root.vector)
                        .expect("p − σ_α p is divisible by ⟨α, x⟩")
                        .scale(&(&root.kappa * &root.vector[j]))
                }
            };
            out.add_assign(&term);
        }
        out
    }

    pub fn dunkl(&self, j: usize, f: &SpinorPoly) -> SpinorPoly {
        f.map(|p| self.dunkl_poly(j, p))
    }

    /// `Δ_κ = Σ_j T_j²`
    pub fn laplacian(&self, f: &SpinorPoly) -> SpinorPoly {
        f.map(|p| {
            let mut out = Polynomial::zero(p.nvars());
            for j in 0..self.dim() {
                out.add_assign(&self.dunkl_poly(j, &self.dunkl_poly(j, p)));
            }
            out
        })
    }

    /// `H = E + d/2 + γ`
    pub fn h_operator(&self, f: &SpinorPoly) -> SpinorPoly {
        let c = self.half_dim_gamma();
        f.map(|p| p.euler().add(&p.scale(&c)))
    }

    /// `H_{[M]} = E_{[M]} + M/2 + γ_{[M]}`
    pub fn h_partial(&self, rank: usize, f: &SpinorPoly) -> SpinorPoly {
        let c = self.partial_shift(rank);
        f.map(|p| p.euler_partial(rank).add(&p.scale(&c)))
    }

    pub(crate) fn partial_shift(&self, rank: usize) -> Scalar {
        let gamma = self.partial(rank).expect("root system splits at this rank").gamma;
        Scalar::from_ratio(rank as i64, 2) + &gamma
    }

    /// `f ∘ σ_α`
    pub fn reflect(&self, idx: usize, f: &SpinorPoly) -> SpinorPoly {
        f.map(|p| self.group().apply_reflection(idx, p))
    }

    /// `α̲ σ_α f`
    pub fn double_cover(&self, idx: usize, f: &SpinorPoly) -> SpinorPoly {
        self.reflect(idx, f).apply_matrix(self.root_matrix(idx))
    }

    /// `D_{[M]} = Σ_{j<M} e_j T_j`; `rank = d` gives the Dunkl–Dirac operator.
    pub fn dirac_partial(&self, rank: usize, f: &SpinorPoly) -> SpinorPoly {
        let mut out = SpinorPoly::zero(f.nvars(), f.size());
        for j in 0..rank {
            out.add_assign(&self.dunkl(j, f).apply_matrix(self.generator(j)));
        }
        out
    }

    pub fn dirac(&self, f: &SpinorPoly) -> SpinorPoly {
        self.dirac_partial(self.dim(), f)
    }

    /// `x̲_{[M]} = Σ_{j<M} x_j e_j`
    pub fn vec_x_partial(&self, rank: usize, f: &SpinorPoly) -> SpinorPoly {
        let mut out = SpinorPoly::zero(f.nvars(), f.size());
        for j in 0..rank {
            out.add_assign(&f.apply_matrix(self.generator(j)).mul_var(j));
        }
        out
    }

    pub fn vec_x(&self, f: &SpinorPoly) -> SpinorPoly {
        self.vec_x_partial(self.dim(), f)
    }

    /// `T_j` on `Σ |x|^s p_s` via `T_j(|x|^s p) = |x|^s T_j p + s|x|^{s−2} x_j p`.
    pub fn dunkl_apply(&self, j: usize, f: &WeightedElement) -> WeightedElement {
        let mut raw = Vec::new();
        for (s, p) in f.parts() {
            raw.push((s.clone(), self.dunkl(j, p)));
            if !s.is_zero() {
                raw.push((s - BigRational::from_integer(2.into()), p.mul_var(j).scale(&Scalar::from_rational(s.clone()))));
            }
        }
        WeightedElement::from_raw(f.nvars, f.size, raw)
    }

    pub fn laplacian_weighted(&self, f: &WeightedElement) -> WeightedElement {
        let mut out = WeightedElement::zero(f.nvars, f.size);
        for j in 0..self.dim() {
            out = out.add(&self.dunkl_apply(j, &self.dunkl_apply(j, f)));
        }
        out
    }

    /// `H` on weighted elements, where `E` counts `|x|^s p_n` as homogeneous of degree `s + n`.
    pub fn h_weighted(&self, f: &WeightedElement) -> WeightedElement {
        f.euler().add(&f.scale(&self.half_dim_gamma()))
    }

    pub fn h_partial_weighted(&self, rank: usize, f: &WeightedElement) -> WeightedElement {
        f.euler_partial(rank).add(&f.scale(&self.partial_shift(rank)))
    }

    fn rational_gamma(&self) -> Result<BigRational, DunklError> {
        self.gamma().to_rational().cloned().ok_or_else(|| DunklError::IrrationalGamma(self.gamma().clone()))
    }

    fn kelvin_with(
        &self,
        f: &WeightedElement,
        shift: BigRational,
        piece: impl Fn(&SpinorPoly) -> SpinorPoly,
    ) -> WeightedElement {
        let mut raw = Vec::new();
        for (s, p) in f.parts() {
            for (n, pn) in p.homogeneous_components() {
                let n = BigRational::from_integer(BigInt::from(n));
                // |x|^{−c−2h} · |x|^s p_n with h = s + n
                let exp = -s - &shift - n * BigRational::from_integer(2.into());
                raw.push((exp, piece(&pn)));
            }
        }
        WeightedElement::from_raw(f.nvars, f.size, raw)
    }

    /// `K_κ`: `|x|^s p_n ↦ |x|^{−s−(2γ+d−2)−2n} p_n`.
    pub fn kelvin_k(&self, f: &WeightedElement) -> Result<WeightedElement, DunklError> {
        let shift = self.rational_gamma()? * BigRational::from_integer(2.into())
            + BigRational::from_integer(BigInt::from(self.dim() as i64 - 2));
        Ok(self.kelvin_with(f, shift, SpinorPoly::clone))
    }

    /// `I_κ`: `|x|^s p_n ↦ |x|^{−s−(2γ+d)−2n} x̲ p_n`.
    pub fn kelvin_i(&self, f: &WeightedElement) -> Result<WeightedElement, DunklError> {
        let shift = self.rational_gamma()? * BigRational::from_integer(2.into())
            + BigRational::from_integer(BigInt::from(self.dim() as i64));
        Ok(self.kelvin_with(f, shift, |p| self.vec_x(p)))
    }
}

/// A finite sum `Σ |x|^s · p_s` with `p_s ∈ P ⊗ V`.
///
/// Canonical form: exponents are pairwise incongruent mod 2 and no stored
/// part is divisible by `|x|²`.
#[derive(Clone, PartialEq, Eq)]
pub struct WeightedElement {
    nvars: usize,
    size: usize,
    parts: BTreeMap<BigRational, SpinorPoly>,
}

fn divide_spinor_by_sqnorm(p: &SpinorPoly) -> Option<SpinorPoly> {
    let comps: Option<Vec<Polynomial>> = p.components().iter().map(Polynomial::divide_by_sqnorm).collect();
    comps.map(SpinorPoly::from_components)
}

impl WeightedElement {
    pub fn zero(nvars: usize, size: usize) -> Self {
        WeightedElement { nvars, size, parts: BTreeMap::new() }
    }

    /// `|x|^s · f`
    pub fn with_norm_power(s: BigRational, f: SpinorPoly) -> Self {
        Self::from_raw(f.nvars(), f.size(), vec![(s, f)])
    }

    pub fn from_spinor(f: SpinorPoly) -> Self {
        Self::with_norm_power(BigRational::zero(), f)
    }

    /// Builds the canonical form of `Σ |x|^s p`.
    pub fn from_raw(nvars: usize, size: usize, raw: Vec<(BigRational, SpinorPoly)>) -> Self {
        let two = BigRational::from_integer(2.into());
        // group by s mod 2
        let mut classes: BTreeMap<BigRational, Vec<(BigRational, SpinorPoly)>> = BTreeMap::new();
        for (s, p) in raw {
            if p.is_zero() {
                continue;
            }
            let class = &s - (&s / &two).floor() * &two;
            classes.entry(class).or_default().push((s, p));
        }
        let sq = Polynomial::sqnorm(nvars, nvars);
        let mut parts = BTreeMap::new();
        for (_, members) in classes {
            let low = members.iter().map(|(s, _)| s.clone()).min().expect("class is nonempty");
            let mut sum = SpinorPoly::zero(nvars, size);
            for (s, p) in members {
                let k = ((s - &low) / &two).to_integer().to_u32().expect("small exponent gap");
                if k == 0 {
                    sum.add_assign(&p);
                } else {
                    sum.add_assign(&p.mul_poly(&sq.pow(k)));
                }
            }
            if sum.is_zero() {
                continue;
            }
            let mut s = low;
            while let Some(q) = divide_spinor_by_sqnorm(&sum) {
                sum = q;
                s += &two;
            }
            parts.insert(s, sum);
        }
        WeightedElement { nvars, size, parts }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn parts(&self) -> impl Iterator<Item = (&BigRational, &SpinorPoly)> {
        self.parts.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    /// The plain polynomial this element equals, if any.
    pub fn to_spinor(&self) -> Result<SpinorPoly, DunklError> {
        match self.parts.len() {
            0 => Ok(SpinorPoly::zero(self.nvars, self.size)),
            1 => {
                let (s, p) = self.parts.iter().next().unwrap();
                if !s.is_integer() || s.is_negative() || (s.to_integer() % 2u32) != BigInt::zero() {
                    return Err(DunklError::NotPolynomial);
                }
                let k = (s / BigRational::from_integer(2.into())).to_integer().to_u32().expect("small exponent");
                Ok(if k == 0 { p.clone() } else { p.mul_poly(&Polynomial::sqnorm(self.nvars, self.nvars).pow(k)) })
            }
            _ => Err(DunklError::NotPolynomial),
        }
    }

    fn combine(&self, other: &Self, sign: &Scalar) -> Self {
        let mut raw: Vec<_> = self.parts.iter().map(|(s, p)| (s.clone(), p.clone())).collect();
        raw.extend(other.parts.iter().map(|(s, p)| (s.clone(), p.scale(sign))));
        Self::from_raw(self.nvars, self.size, raw)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, &Scalar::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, &Scalar::from_int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.size);
        }
        WeightedElement {
            nvars: self.nvars,
            size: self.size,
            parts: self.parts.iter().map(|(s, p)| (s.clone(), p.scale(c))).collect(),
        }
    }

    /// Applies a linear map that commutes with multiplication by radial functions.
    pub fn map_parts(&self, mut f: impl FnMut(&SpinorPoly) -> SpinorPoly) -> Self {
        let raw = self.parts.iter().map(|(s, p)| (s.clone(), f(p))).collect();
        Self::from_raw(self.nvars, self.size, raw)
    }

    /// `|x|^t · self`
    pub fn mul_norm_pow(&self, t: &BigRational) -> Self {
        let raw = self.parts.iter().map(|(s, p)| (s + t, p.clone())).collect();
        Self::from_raw(self.nvars, self.size, raw)
    }

    /// `E(|x|^s p) = s|x|^s p + |x|^s E p`
    pub fn euler(&self) -> Self {
        self.map_with_exponent(|s, p| p.map(Polynomial::euler).add(&p.scale(&Scalar::from_rational(s.clone()))))
    }

    /// `E_{[M]}(|x|^s p) = s|x|^{s−2}(x_1² + … + x_M²)p + |x|^s E_{[M]} p`
    pub fn euler_partial(&self, rank: usize) -> Self {
        let head = Polynomial::sqnorm(self.nvars, rank);
        let two = BigRational::from_integer(2.into());
        let mut raw = Vec::new();
        for (s, p) in &self.parts {
            raw.push((s.clone(), p.map(|q| q.euler_partial(rank))));
            if !s.is_zero() {
                raw.push((s - &two, p.mul_poly(&head).scale(&Scalar::from_rational(s.clone()))));
            }
        }
        Self::from_raw(self.nvars, self.size, raw)
    }

    fn map_with_exponent(&self, f: impl Fn(&BigRational, &SpinorPoly) -> SpinorPoly) -> Self {
        let raw = self.parts.iter().map(|(s, p)| (s.clone(), f(s, p))).collect();
        Self::from_raw(self.nvars, self.size, raw)
    }
}

impl From<SpinorPoly> for WeightedElement {
    fn from(f: SpinorPoly) -> Self {
        Self::from_spinor(f)
    }
}

impl fmt::Display for WeightedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, p)) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if s.is_zero() {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p} · |x|^({s})")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for WeightedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
pub(crate) fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Eps;
    use crate::poly::MultiIndex;
    use crate::roots::GroupSpec;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d)
    }

    fn z2_3() -> Context {
        Context::z2(&[q(1, 2), q(1, 3), q(1, 4)], Eps::Minus).unwrap()
    }

    fn b2() -> Context {
        Context::build(&GroupSpec::B2 { short: q(1, 2), long: q(1, 3) }, Eps::Plus).unwrap()
    }

    #[test]
    fn dunkl_on_powers_of_x1() {
        let ctx = z2_3();
        let x1 = Polynomial::var(3, 0);
        for m in 1..6u32 {
            let k1 = q(1, 2);
            let c = Scalar::from_int(m as i64) + &k1 * &Scalar::from_int(if m % 2 == 1 { 2 } else { 0 });
            assert_eq!(ctx.dunkl_poly(0, &x1.pow(m)), x1.pow(m - 1).scale(&c));
        }
        assert!(ctx.dunkl_poly(0, &Polynomial::var(3, 1)).is_zero());
    }

    #[test]
    fn dunkl_of_radial_power() {
        let ctx = z2_3();
        let a = rational(1, 3);
        let one = WeightedElement::from_spinor(ctx.basis_spinor(0));
        let f = one.mul_norm_pow(&a);
        let want = WeightedElement::with_norm_power(&a - rational(2, 1), ctx.basis_spinor(0).mul_var(1))
            .scale(&Scalar::from_rational(a.clone()));
        assert_eq!(ctx.dunkl_apply(1, &f), want);
    }

    #[test]
    fn laplacian_examples() {
        for ctx in [z2_3(), b2()] {
            let d = ctx.dim();
            let x1 = Polynomial::var(d, 0);
            assert!(ctx.laplacian(&SpinorPoly::tensor(&x1, &ctx.spinor().basis_vector(0))).is_zero());
            let sq = SpinorPoly::tensor(&Polynomial::sqnorm(d, d), &ctx.spinor().basis_vector(0));
            let want = Scalar::from_int(2 * d as i64) + &(Scalar::from_int(4) * ctx.gamma());
            assert_eq!(ctx.laplacian(&sq), ctx.basis_spinor(0).scale(&want));
        }
    }

    #[test]
    fn h_on_monomials() {
        let ctx = z2_3();
        let m = MultiIndex::from_slice(&[2, 0, 1]);
        let f = SpinorPoly::tensor(&Polynomial::monomial(m, Scalar::one()), &ctx.spinor().basis_vector(0));
        let c = Scalar::from_int(3) + &ctx.half_dim_gamma();
        assert_eq!(ctx.h_operator(&f), f.scale(&c));
    }

    #[test]
    fn b2_dunkl_operators_commute() {
        let ctx = b2();
        for n in 0..5 {
            for m in MultiIndex::all_of_degree(2, n) {
                let p = Polynomial::monomial(m, Scalar::one());
                let a = ctx.dunkl_poly(0, &ctx.dunkl_poly(1, &p));
                let b = ctx.dunkl_poly(1, &ctx.dunkl_poly(0, &p));
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn double_cover_examples() {
        let ctx = z2_3();
        let s = ctx.basis_spinor(0);
        assert_eq!(ctx.double_cover(0, &s), s.apply_matrix(ctx.generator(0)));
        let f = s.mul_var(0);
        assert_eq!(ctx.double_cover(0, &f), s.apply_matrix(ctx.generator(0)).mul_var(0).neg());
        let g = SpinorPoly::tensor(&Polynomial::var(3, 0).mul(&Polynomial::var(3, 2)), &ctx.spinor().basis_vector(1));
        assert_eq!(ctx.double_cover(1, &ctx.double_cover(1, &g)), g.scale(&ctx.eps().scalar()));
    }

    #[test]
    fn kelvin_examples() {
        let ctx = Context::z2(&[q(1, 2), q(1, 3)], Eps::Minus).unwrap();
        let s = ctx.basis_spinor(0);
        let k1 = ctx.kelvin_k(&s.clone().into()).unwrap();
        assert_eq!(k1, WeightedElement::with_norm_power(rational(-5, 3), s.clone()));
        let kx = ctx.kelvin_k(&s.mul_var(0).into()).unwrap();
        assert_eq!(kx, WeightedElement::with_norm_power(rational(-11, 3), s.mul_var(0)));
        let i1 = ctx.kelvin_i(&s.clone().into()).unwrap();
        assert_eq!(i1, WeightedElement::with_norm_power(rational(-11, 3), ctx.vec_x(&s)));
    }

    #[test]
    fn kelvin_involutions() {
        let ctx = z2_3();
        let s = ctx.basis_spinor(1);
        let x = |j| Polynomial::var(3, j);
        let p = x(0).mul(&x(1)).add(&x(2).pow(3)).add(&Polynomial::one(3));
        let f: WeightedElement = SpinorPoly::tensor(&p, &ctx.spinor().basis_vector(1)).into();
        let f = f.add(&WeightedElement::with_norm_power(rational(1, 2), s));
        assert_eq!(ctx.kelvin_k(&ctx.kelvin_k(&f).unwrap()).unwrap(), f);
        assert_eq!(ctx.kelvin_i(&ctx.kelvin_i(&f).unwrap()).unwrap(), f.scale(&ctx.eps().scalar()));
        // I f = x̲ |x|^{-2} K f, as forced by the definitions of both transforms
        let lhs = ctx.kelvin_i(&f).unwrap();
        let rhs = ctx.kelvin_k(&f).unwrap().mul_norm_pow(&rational(-2, 1)).map_parts(|p| ctx.vec_x(p));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn canonical_form() {
        let ctx = z2_3();
        let s = ctx.basis_spinor(0);
        let sq = s.mul_poly(&Polynomial::sqnorm(3, 3));
        let a = WeightedElement::from_spinor(sq.clone());
        let b = WeightedElement::with_norm_power(rational(2, 1), s.clone());
        assert_eq!(a, b);
        assert_eq!(a.to_spinor().unwrap(), sq);
        assert_eq!(
            WeightedElement::with_norm_power(rational(-2, 1), sq.clone()).to_spinor().unwrap(),
            s
        );
        assert!(WeightedElement::with_norm_power(rational(1, 2), s).to_spinor().is_err());
    }

    #[test]
    fn irrational_gamma_is_rejected_by_kelvin() {
        let ctx = Context::z2(&[Scalar::sqrt_of(2).unwrap()], Eps::Plus).unwrap();
        let f = WeightedElement::from_spinor(ctx.basis_spinor(0));
        assert!(matches!(ctx.kelvin_k(&f), Err(DunklError::IrrationalGamma(_))));
    }

    proptest! {
        #[test]
        fn weighted_dunkl_agrees_on_polynomials(exps in proptest::collection::vec(0u32..3, 3), j in 0usize..3) {
            let ctx = z2_3();
            let p = Polynomial::monomial(MultiIndex::from_slice(&exps), Scalar::one()).mul(&Polynomial::sqnorm(3, 3));
            let f = SpinorPoly::tensor(&p, &ctx.spinor().basis_vector(0));
            let w = ctx.dunkl_apply(j, &f.clone().into());
            prop_assert_eq!(w.to_spinor().unwrap(), ctx.dunkl(j, &f));
        }
    }
}
