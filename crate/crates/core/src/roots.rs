//! Root systems, reflections and multiplicity functions.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::poly::Polynomial;
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("dimension must be at least 1")]
    EmptyDimension,
    #[error("root {0} has the wrong length")]
    DimensionMismatch(usize),
    #[error("root {0} is zero")]
    ZeroRoot(usize),
    #[error("root {0} cannot be normalised inside the configured field")]
    NonUnitRoot(usize),
    #[error("expected {expected} multiplicities, got {found}")]
    KappaCount { expected: usize, found: usize },
    #[error("multiplicity of root {0} must be real and non-negative")]
    NegativeKappa(usize),
    #[error("reflecting root {root} in root {mirror} leaves the positive root list")]
    NotClosed { mirror: usize, root: usize },
    #[error("multiplicity is not invariant: reflecting root {root} in root {mirror} gives root {image} with different kappa")]
    KappaNotInvariant { mirror: usize, root: usize, image: usize },
    #[error("roots are not split between the first {0} coordinates and the rest")]
    NotReducible(usize),
    #[error("partial rank {0} out of range")]
    BadRank(usize),
}

/// Which family a root system was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    /// `Z_2^d` with one multiplicity per coordinate reflection.
    Z2 { kappa: Vec<Scalar> },
    /// `B_2` with multiplicities on the short (`ξ_i`) and long (`(ξ_1 ± ξ_2)/√2`) orbits.
    B2 { short: Scalar, long: Scalar },
    /// A user-supplied positive root list; roots are rescaled to unit length.
    Explicit { roots: Vec<Vec<Scalar>>, kappa: Vec<Scalar>, radicand: Option<u32> },
}

#[derive(Clone, Debug)]
pub struct Root {
    /// Unit vector `α`.
    pub vector: Vec<Scalar>,
    pub kappa: Scalar,
    /// Matrix of `σ_α = I − 2αα^T`.
    pub reflection: Vec<Vec<Scalar>>,
    /// `Some(j)` when `α = ±ξ_j`.
    pub coordinate: Option<usize>,
}

/// A validated positive root system with multiplicities.
#[derive(Clone, Debug)]
pub struct RootSystemData {
    dim: usize,
    roots: Vec<Root>,
    gamma: Scalar,
    label: String,
    radicand: Option<u32>,
    z2: bool,
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn reflection_matrix(alpha: &[Scalar]) -> Vec<Vec<Scalar>> {
    let two = Scalar::from_int(2);
    (0..alpha.len())
        .map(|i| {
            (0..alpha.len())
                .map(|k| {
                    let delta = if i == k { Scalar::one() } else { Scalar::zero() };
                    delta - &two * &alpha[i] * &alpha[k]
                })
                .collect()
        })
        .collect()
}

impl RootSystemData {
    pub fn build(spec: &GroupSpec) -> Result<Self, RootError> {
        match spec {
            GroupSpec::Z2 { kappa } => {
                let d = kappa.len();
                let roots = (0..d)
                    .map(|j| (0..d).map(|i| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
                    .collect();
                let mut data = Self::from_roots(roots, kappa.clone(), None)?;
                data.label = format!("z2^{d}");
                Ok(data)
            }
            GroupSpec::B2 { short, long } => {
                let one = Scalar::one();
                let zero = Scalar::zero();
                let roots = vec![
                    vec![one.clone(), zero.clone()],
                    vec![zero, one.clone()],
                    vec![one.clone(), one.clone()],
                    vec![one.clone(), -&one],
                ];
                let kappa = vec![short.clone(), short.clone(), long.clone(), long.clone()];
                let mut data = Self::from_roots(roots, kappa, Some(2))?;
                data.label = "b2".into();
                Ok(data)
            }
            GroupSpec::Explicit { roots, kappa, radicand } => Self::from_roots(roots.clone(), kappa.clone(), *radicand),
        }
    }

    /// Shorthand for `Z_2^d` with the given multiplicities.
    pub fn z2(kappa: &[Scalar]) -> Result<Self, RootError> {
        Self::build(&GroupSpec::Z2 { kappa: kappa.to_vec() })
    }

    fn from_roots(raw: Vec<Vec<Scalar>>, kappa: Vec<Scalar>, radicand: Option<u32>) -> Result<Self, RootError> {
        let dim = raw.first().map(Vec::len).ok_or(RootError::EmptyDimension)?;
        if dim == 0 {
            return Err(RootError::EmptyDimension);
        }
        if kappa.len() != raw.len() {
            return Err(RootError::KappaCount { expected: raw.len(), found: kappa.len() });
        }
        let mut roots = Vec::with_capacity(raw.len());
        for (idx, (v, k)) in raw.into_iter().zip(kappa).enumerate() {
            if v.len() != dim {
                return Err(RootError::DimensionMismatch(idx));
            }
            if v.iter().all(Scalar::is_zero) {
                return Err(RootError::ZeroRoot(idx));
            }
            if k.real_cmp_zero().is_none_or(|o| o == Ordering::Less) {
                return Err(RootError::NegativeKappa(idx));
            }
            let norm2 = dot(&v, &v);
            let vector = if norm2.is_one() {
                v
            } else {
                let q = norm2.to_rational().ok_or(RootError::NonUnitRoot(idx))?;
                let norm = Scalar::sqrt_rational(q, radicand).ok_or(RootError::NonUnitRoot(idx))?;
                let inv = norm.inv().map_err(|_| RootError::NonUnitRoot(idx))?;
                v.iter().map(|a| a * &inv).collect()
            };
            let coordinate = {
                let nz: Vec<usize> = (0..dim).filter(|&i| !vector[i].is_zero()).collect();
                (nz.len() == 1).then(|| nz[0])
            };
            roots.push(Root { reflection: reflection_matrix(&vector), vector, kappa: k, coordinate });
        }
        let gamma = roots.iter().map(|r| r.kappa.clone()).sum();
        let data = RootSystemData {
            dim,
            z2: roots.len() == dim && roots.iter().enumerate().all(|(j, r)| r.coordinate == Some(j)),
            roots,
            gamma,
            label: "explicit".into(),
            radicand,
        };
        data.check_orbits()?;
        Ok(data)
    }

    fn find_root_up_to_sign(&self, v: &[Scalar]) -> Option<usize> {
        self.roots.iter().position(|r| {
            r.vector.iter().zip(v).all(|(a, b)| a == b) || r.vector.iter().zip(v).all(|(a, b)| (a + b).is_zero())
        })
    }

    fn check_orbits(&self) -> Result<(), RootError> {
        for mirror in 0..self.roots.len() {
            for root in 0..self.roots.len() {
                let image = self.reflect(mirror, &self.roots[root].vector);
                let found = self.find_root_up_to_sign(&image).ok_or(RootError::NotClosed { mirror, root })?;
                if self.roots[found].kappa != self.roots[root].kappa {
                    return Err(RootError::KappaNotInvariant { mirror, root, image: found });
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, idx: usize) -> &Root {
        &self.roots[idx]
    }

    /// `γ = Σ_{α∈R+} κ(α)`.
    pub fn gamma(&self) -> &Scalar {
        &self.gamma
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn radicand(&self) -> Option<u32> {
        self.radicand
    }

    /// True when the positive roots are exactly `ξ_1, …, ξ_d` in order.
    pub fn is_z2(&self) -> bool {
        self.z2
    }

    /// Per-coordinate multiplicities when the group is `Z_2^d`.
    pub fn z2_kappa(&self) -> Option<Vec<Scalar>> {
        self.z2.then(|| self.roots.iter().map(|r| r.kappa.clone()).collect())
    }

    pub fn kappa_list(&self) -> Vec<Scalar> {
        self.roots.iter().map(|r| r.kappa.clone()).collect()
    }

    /// `σ_α(y) = y − 2⟨y, α⟩α` (roots are unit vectors).
    pub fn reflect(&self, idx: usize, y: &[Scalar]) -> Vec<Scalar> {
        let alpha = &self.roots[idx].vector;
        let c = Scalar::from_int(2) * dot(y, alpha);
        y.iter().zip(alpha).map(|(yi, ai)| yi - &(&c * ai)).collect()
    }

    /// The polynomial `p ∘ σ_α`.
    pub fn apply_reflection(&self, idx: usize, p: &Polynomial) -> Polynomial {
        let root = &self.roots[idx];
        match root.coordinate {
            Some(j) => p.flip_sign(j),
            None => p.substitute_linear(&root.reflection),
        }
    }

    /// `γ_{[M]}` and the roots supported on the first `M` coordinates.
    pub fn partial(&self, rank: usize) -> Result<PartialRealization, RootError> {
        PartialRealization::new(self, rank)
    }
}

impl fmt::Display for RootSystemData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (d={}, gamma={})", self.label, self.dim, self.gamma)
    }
}

/// The sub-root-system living on the first `rank` coordinates.
#[derive(Clone, Debug)]
pub struct PartialRealization {
    pub rank: usize,
    pub gamma: Scalar,
    pub roots: Vec<usize>,
}

impl PartialRealization {
    pub fn new(group: &RootSystemData, rank: usize) -> Result<Self, RootError> {
        if rank == 0 || rank > group.dim() {
            return Err(RootError::BadRank(rank));
        }
        let mut roots = Vec::new();
        let mut gamma = Scalar::zero();
        for (idx, r) in group.roots().iter().enumerate() {
            let head = r.vector[..rank].iter().any(|a| !a.is_zero());
            let tail = r.vector[rank..].iter().any(|a| !a.is_zero());
            match (head, tail) {
                (true, false) => {
                    roots.push(idx);
                    gamma += &r.kappa;
                }
                (false, true) => {}
                _ => return Err(RootError::NotReducible(rank)),
            }
        }
        Ok(PartialRealization { rank, gamma, roots })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d)
    }

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&a| Scalar::from_int(a)).collect()
    }

    fn b2() -> RootSystemData {
        RootSystemData::build(&GroupSpec::B2 { short: q(1, 2), long: q(1, 2) }).unwrap()
    }

    #[test]
    fn z2_gamma() {
        let g = RootSystemData::z2(&[q(1, 2), q(1, 3), q(1, 4)]).unwrap();
        assert_eq!(g.gamma(), &q(13, 12));
        assert!(g.is_z2());
        let g0 = RootSystemData::z2(&[q(0, 1), q(0, 1)]).unwrap();
        assert!(g0.gamma().is_zero());
    }

    #[test]
    fn b2_gamma_and_roots() {
        let g = b2();
        assert_eq!(g.gamma(), &Scalar::from_int(2));
        assert_eq!(g.roots().len(), 4);
        assert!(!g.is_z2());
        let h = Scalar::sqrt_of(2).unwrap().inv().unwrap();
        assert_eq!(g.root(3).vector, vec![h.clone(), -&h]);
    }

    #[test]
    fn reflect_vectors() {
        let g = RootSystemData::z2(&[q(1, 2), q(1, 2)]).unwrap();
        assert_eq!(g.reflect(0, &ints(&[3, 5])), ints(&[-3, 5]));
        assert_eq!(g.reflect(0, &ints(&[0, 7])), ints(&[0, 7]));
        // (1/√2, −1/√2) swaps the coordinates
        assert_eq!(b2().reflect(3, &ints(&[1, 0])), ints(&[0, 1]));
    }

    #[test]
    fn reflect_polynomials() {
        let g = b2();
        let x1 = Polynomial::var(2, 0);
        assert_eq!(g.apply_reflection(3, &x1), Polynomial::var(2, 1));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(RootSystemData::z2(&[q(-1, 2)]).unwrap_err(), RootError::NegativeKappa(0));
        let spec = GroupSpec::B2 { short: q(1, 2), long: q(1, 3) };
        assert!(RootSystemData::build(&spec).is_ok());
        // without the sqrt(2) layer the long roots cannot be normalised
        let spec = GroupSpec::Explicit { roots: vec![ints(&[1, 1])], kappa: vec![q(1, 2)], radicand: None };
        assert_eq!(RootSystemData::build(&spec).unwrap_err(), RootError::NonUnitRoot(0));
        // kappa must be constant on the orbit {ξ1, ξ2} under (ξ1 − ξ2)/√2
        let spec = GroupSpec::Explicit {
            roots: vec![ints(&[1, 0]), ints(&[0, 1]), ints(&[1, 1]), ints(&[1, -1])],
            kappa: vec![q(1, 2), q(1, 3), q(1, 2), q(1, 2)],
            radicand: Some(2),
        };
        assert!(matches!(RootSystemData::build(&spec), Err(RootError::KappaNotInvariant { .. })));
        let spec = GroupSpec::Explicit {
            roots: vec![ints(&[1, 0]), ints(&[1, 1])],
            kappa: vec![q(1, 2), q(1, 2)],
            radicand: Some(2),
        };
        assert!(matches!(RootSystemData::build(&spec), Err(RootError::NotClosed { .. })));
    }

    #[test]
    fn partial_realizations() {
        let g = RootSystemData::z2(&[q(1, 2), q(1, 3), q(1, 4)]).unwrap();
        let p = g.partial(2).unwrap();
        assert_eq!(p.gamma, q(5, 6));
        assert_eq!(p.roots, vec![0, 1]);
        assert!(matches!(b2().partial(1), Err(RootError::NotReducible(1))));
    }

    #[test]
    fn roots_are_reversed_and_involutive() {
        for g in [b2(), RootSystemData::z2(&[q(1, 2), q(1, 3), q(1, 4)]).unwrap()] {
            for idx in 0..g.roots().len() {
                let a = &g.root(idx).vector;
                let neg: Vec<Scalar> = a.iter().map(|x| -x).collect();
                assert_eq!(g.reflect(idx, a), neg);
                let m = &g.root(idx).reflection;
                for i in 0..g.dim() {
                    for k in 0..g.dim() {
                        let sq: Scalar = (0..g.dim()).map(|l| &m[i][l] * &m[l][k]).sum();
                        assert_eq!(sq, if i == k { Scalar::one() } else { Scalar::zero() });
                    }
                }
            }
        }
    }

    #[test]
    fn z2_reflections_commute() {
        let g = RootSystemData::z2(&[q(1, 2), q(1, 3), q(1, 4)]).unwrap();
        let y = ints(&[2, -3, 5]);
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(g.reflect(a, &g.reflect(b, &y)), g.reflect(b, &g.reflect(a, &y)));
            }
        }
    }

    proptest! {
        #[test]
        fn reflections_preserve_inner_product(y in proptest::collection::vec(-9i64..9, 2), z in proptest::collection::vec(-9i64..9, 2), idx in 0usize..4) {
            let g = b2();
            let (y, z) = (ints(&y), ints(&z));
            prop_assert_eq!(dot(&g.reflect(idx, &y), &g.reflect(idx, &z)), dot(&y, &z));
        }
    }
}
