//! The fixed data every computation runs against: root system, `ε` and spinor space.

use crate::clifford::{Eps, SpinorMatrix, SpinorPoly, SpinorSpace};
use crate::roots::{GroupSpec, PartialRealization, RootError, RootSystemData};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct Context {
    group: RootSystemData,
    spinor: SpinorSpace,
    root_matrices: Vec<SpinorMatrix>,
}

impl Context {
    pub fn new(group: RootSystemData, eps: Eps) -> Self {
        let spinor = SpinorSpace::new(group.dim(), eps);
        let root_matrices = group.roots().iter().map(|r| spinor.vector_matrix(&r.vector)).collect();
        Context { group, spinor, root_matrices }
    }

    pub fn build(spec: &GroupSpec, eps: Eps) -> Result<Self, RootError> {
        Ok(Self::new(RootSystemData::build(spec)?, eps))
    }

    pub fn z2(kappa: &[Scalar], eps: Eps) -> Result<Self, RootError> {
        Self::build(&GroupSpec::Z2 { kappa: kappa.to_vec() }, eps)
    }

    pub fn group(&self) -> &RootSystemData {
        &self.group
    }

    pub fn spinor(&self) -> &SpinorSpace {
        &self.spinor
    }

    pub fn dim(&self) -> usize {
        self.group.dim()
    }

    pub fn eps(&self) -> Eps {
        self.spinor.eps()
    }

    pub fn gamma(&self) -> &Scalar {
        self.group.gamma()
    }

    /// `dim V`
    pub fn spinor_size(&self) -> usize {
        self.spinor.size()
    }

    /// Matrix of `e_{j+1}`.
    pub fn generator(&self, j: usize) -> &SpinorMatrix {
        self.spinor.generator(j)
    }

    /// Matrix of `α̲` for the root with the given index.
    pub fn root_matrix(&self, idx: usize) -> &SpinorMatrix {
        &self.root_matrices[idx]
    }

    /// `d/2 + γ`
    pub fn half_dim_gamma(&self) -> Scalar {
        Scalar::from_ratio(self.dim() as i64, 2) + self.gamma()
    }

    pub fn partial(&self, rank: usize) -> Result<PartialRealization, RootError> {
        self.group.partial(rank)
    }

    /// The constant spinor `e_{idx}` of the standard basis of `V`.
    pub fn basis_spinor(&self, idx: usize) -> SpinorPoly {
        SpinorPoly::constant(self.dim(), &self.spinor.basis_vector(idx))
    }

    /// Standard basis of `V` as constant spinor polynomials.
    pub fn spinor_basis(&self) -> Vec<SpinorPoly> {
        (0..self.spinor_size()).map(|i| self.basis_spinor(i)).collect()
    }
}
