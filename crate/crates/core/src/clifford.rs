//! The ε-signed Clifford algebra, its spinor representation and spinor-valued polynomials.

use std::collections::BTreeMap;
use std::fmt;

use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// The sign `ε` in `e_i e_j + e_j e_i = 2εδ_ij`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Eps {
    Plus,
    Minus,
}

impl Eps {
    pub fn from_int(v: i64) -> Option<Eps> {
        match v {
            1 => Some(Eps::Plus),
            -1 => Some(Eps::Minus),
            _ => None,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Eps::Plus => 1,
            Eps::Minus => -1,
        }
    }

    pub fn scalar(self) -> Scalar {
        Scalar::from_int(self.value())
    }

    /// `ε^n`
    pub fn pow(self, n: usize) -> Scalar {
        match self {
            Eps::Plus => Scalar::one(),
            Eps::Minus => Scalar::sign_pow(n),
        }
    }
}

impl fmt::Display for Eps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Sign of `e_A e_B = ± ε^{|A∩B|} e_{A△B}` for ascending blades.
pub fn blade_sign(a: u32, b: u32, eps: Eps) -> Scalar {
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        swaps += (a >> (j + 1)).count_ones();
    }
    let contractions = (a & b).count_ones();
    let mut neg = swaps % 2 == 1;
    if eps == Eps::Minus && contractions % 2 == 1 {
        neg = !neg;
    }
    if neg {
        Scalar::from_int(-1)
    } else {
        Scalar::one()
    }
}

/// Sparse element of `Cl(d)`; bit `j` of a key stands for `e_{j+1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct CliffordElement {
    dim: usize,
    eps: Eps,
    blades: BTreeMap<u32, Scalar>,
}

impl CliffordElement {
    pub fn zero(dim: usize, eps: Eps) -> Self {
        CliffordElement { dim, eps, blades: BTreeMap::new() }
    }

    pub fn scalar(dim: usize, eps: Eps, c: Scalar) -> Self {
        Self::blade(dim, eps, 0, c)
    }

    pub fn blade(dim: usize, eps: Eps, mask: u32, c: Scalar) -> Self {
        assert!(mask >> dim == 0, "blade outside Cl({dim})");
        let mut e = Self::zero(dim, eps);
        if !c.is_zero() {
            e.blades.insert(mask, c);
        }
        e
    }

    /// `e_j` for a zero-based `j`.
    pub fn generator(dim: usize, eps: Eps, j: usize) -> Self {
        Self::blade(dim, eps, 1 << j, Scalar::one())
    }

    /// `α̲ = Σ α_j e_j`
    pub fn vector(eps: Eps, alpha: &[Scalar]) -> Self {
        let mut e = Self::zero(alpha.len(), eps);
        for (j, a) in alpha.iter().enumerate() {
            e.add_blade(1 << j, a.clone());
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eps(&self) -> Eps {
        self.eps
    }

    pub fn is_zero(&self) -> bool {
        self.blades.is_empty()
    }

    pub fn blades(&self) -> impl Iterator<Item = (u32, &Scalar)> {
        self.blades.iter().map(|(k, v)| (*k, v))
    }

    fn add_blade(&mut self, mask: u32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.blades.entry(mask).or_insert_with(Scalar::zero);
        *entry += &c;
        if entry.is_zero() {
            self.blades.remove(&mask);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.blades {
            out.add_blade(*k, v.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.dim, self.eps);
        for (k, v) in &self.blades {
            out.add_blade(*k, v * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!((self.dim, self.eps), (other.dim, other.eps), "Clifford elements from different algebras");
        let mut out = Self::zero(self.dim, self.eps);
        for (a, ca) in &self.blades {
            for (b, cb) in &other.blades {
                let c = blade_sign(*a, *b, self.eps) * ca * cb;
                out.add_blade(a ^ b, c);
            }
        }
        out
    }
}

impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blades.is_empty() {
            return write!(f, "0");
        }
        for (n, (mask, c)) in self.blades.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let name: String = (0..self.dim).filter(|j| mask >> j & 1 == 1).map(|j| format!("e{}", j + 1)).collect();
            match (name.is_empty(), c.is_one()) {
                (true, _) => write!(f, "{c}")?,
                (false, true) => write!(f, "{name}")?,
                (false, false) => write!(f, "({c}) {name}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Dense square matrix over the scalar field.
#[derive(Clone, PartialEq, Eq)]
pub struct SpinorMatrix {
    n: usize,
    data: Vec<Scalar>,
}

impl SpinorMatrix {
    pub fn zero(n: usize) -> Self {
        SpinorMatrix { n, data: vec![Scalar::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        SpinorMatrix { n, data: rows.into_iter().flatten().collect() }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.n + c]
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zero(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = o.get(k, c);
                    if !b.is_zero() {
                        out.data[r * n + c] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        SpinorMatrix { n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        SpinorMatrix { n: self.n, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn kron(&self, o: &Self) -> Self {
        let n = self.n * o.n;
        let mut out = Self::zero(n);
        for (r1, c1) in (0..self.n).flat_map(|r| (0..self.n).map(move |c| (r, c))) {
            let a = self.get(r1, c1);
            if a.is_zero() {
                continue;
            }
            for (r2, c2) in (0..o.n).flat_map(|r| (0..o.n).map(move |c| (r, c))) {
                out.data[(r1 * o.n + r2) * n + c1 * o.n + c2] = a * o.get(r2, c2);
            }
        }
        out
    }

    /// `Some(c)` when the matrix is `c·Id`.
    pub fn as_scalar(&self) -> Option<Scalar> {
        let c = self.get(0, 0).clone();
        (*self == Self::identity(self.n).scale(&c)).then_some(c)
    }

    pub fn apply_vector(&self, v: &[Scalar]) -> Vec<Scalar> {
        (0..self.n).map(|r| (0..self.n).map(|c| self.get(r, c) * &v[c]).sum()).collect()
    }
}

impl fmt::Display for SpinorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|c| self.get(r, c).to_string()).collect();
            write!(f, "{}[{}]", if r > 0 { ", " } else { "" }, row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for SpinorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A concrete irreducible module `V` for `Cl(d)` built from tensor products of Pauli matrices.
#[derive(Clone, Debug)]
pub struct SpinorSpace {
    dim: usize,
    eps: Eps,
    size: usize,
    gens: Vec<SpinorMatrix>,
}

impl SpinorSpace {
    pub fn new(dim: usize, eps: Eps) -> Self {
        let (z, o, i) = (Scalar::zero(), Scalar::one(), Scalar::i());
        let id2 = SpinorMatrix::identity(2);
        let px = SpinorMatrix::from_rows(vec![vec![z.clone(), o.clone()], vec![o.clone(), z.clone()]]);
        let py = SpinorMatrix::from_rows(vec![vec![z.clone(), -&i], vec![i.clone(), z.clone()]]);
        let pz = SpinorMatrix::from_rows(vec![vec![o.clone(), z.clone()], vec![z, -&o]]);
        let k = dim / 2;
        let tensor = |parts: Vec<&SpinorMatrix>| {
            parts.into_iter().fold(SpinorMatrix::identity(1), |acc, m| acc.kron(m))
        };
        let mut gens = Vec::with_capacity(dim);
        for l in 0..k {
            for pauli in [&px, &py] {
                let mut parts = vec![&pz; l];
                parts.push(pauli);
                parts.extend(std::iter::repeat_n(&id2, k - l - 1));
                gens.push(tensor(parts));
            }
        }
        if dim % 2 == 1 {
            gens.push(tensor(vec![&pz; k]));
        }
        if eps == Eps::Minus {
            gens = gens.iter().map(|g| g.scale(&i)).collect();
        }
        SpinorSpace { dim, eps, size: 1 << k, gens }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eps(&self) -> Eps {
        self.eps
    }

    /// `dim V = 2^⌊d/2⌋`
    pub fn size(&self) -> usize {
        self.size
    }

    /// Matrix of `e_{j+1}`.
    pub fn generator(&self, j: usize) -> &SpinorMatrix {
        &self.gens[j]
    }

    pub fn to_matrix(&self, a: &CliffordElement) -> SpinorMatrix {
        assert_eq!((a.dim(), a.eps()), (self.dim, self.eps), "Clifford element from a different algebra");
        let mut out = SpinorMatrix::zero(self.size);
        for (mask, c) in a.blades() {
            let mut m = SpinorMatrix::identity(self.size);
            for j in (0..self.dim).filter(|j| mask >> j & 1 == 1) {
                m = m.mul(&self.gens[j]);
            }
            out = out.add(&m.scale(c));
        }
        out
    }

    /// Matrix of `α̲ = Σ α_j e_j`.
    pub fn vector_matrix(&self, alpha: &[Scalar]) -> SpinorMatrix {
        let mut out = SpinorMatrix::zero(self.size);
        for (j, a) in alpha.iter().enumerate() {
            if !a.is_zero() {
                out = out.add(&self.gens[j].scale(a));
            }
        }
        out
    }

    /// The scalar by which `e_1 ⋯ e_d` acts, for odd `d`.
    pub fn pseudoscalar(&self) -> Option<Scalar> {
        if self.dim.is_multiple_of(2) {
            return None;
        }
        let top = CliffordElement::blade(self.dim, self.eps, (1u32 << self.dim) - 1, Scalar::one());
        self.to_matrix(&top).as_scalar()
    }

    /// The `idx`-th standard basis vector of `V`.
    pub fn basis_vector(&self, idx: usize) -> Vec<Scalar> {
        (0..self.size).map(|r| if r == idx { Scalar::one() } else { Scalar::zero() }).collect()
    }
}

/// An element of `P ⊗ V`: one polynomial per spinor coordinate.
#[derive(Clone, PartialEq, Eq)]
pub struct SpinorPoly {
    comps: Vec<Polynomial>,
}

impl SpinorPoly {
    pub fn zero(nvars: usize, size: usize) -> Self {
        SpinorPoly { comps: vec![Polynomial::zero(nvars); size] }
    }

    pub fn from_components(comps: Vec<Polynomial>) -> Self {
        assert!(!comps.is_empty(), "spinor space has positive dimension");
        let n = comps[0].nvars();
        assert!(comps.iter().all(|p| p.nvars() == n), "components must share the variable count");
        SpinorPoly { comps }
    }

    /// `p · v` for a scalar polynomial `p` and spinor `v`.
    pub fn tensor(p: &Polynomial, v: &[Scalar]) -> Self {
        SpinorPoly { comps: v.iter().map(|c| p.scale(c)).collect() }
    }

    /// The constant spinor `v`.
    pub fn constant(nvars: usize, v: &[Scalar]) -> Self {
        Self::tensor(&Polynomial::one(nvars), v)
    }

    pub fn nvars(&self) -> usize {
        self.comps[0].nvars()
    }

    pub fn size(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.comps
    }

    pub fn component(&self, idx: usize) -> &Polynomial {
        &self.comps[idx]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Polynomial::is_zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.comps.iter().filter_map(Polynomial::degree).max()
    }

    pub fn is_homogeneous_of(&self, n: usize) -> bool {
        self.comps.iter().all(|p| p.is_homogeneous_of(n))
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Self {
        SpinorPoly { comps: self.comps.iter().map(f).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        SpinorPoly { comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn add_assign(&mut self, o: &Self) {
        for (a, b) in self.comps.iter_mut().zip(&o.comps) {
            a.add_assign(b);
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        SpinorPoly { comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn neg(&self) -> Self {
        self.map(Polynomial::neg)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.map(|p| p.scale(c))
    }

    pub fn mul_poly(&self, q: &Polynomial) -> Self {
        self.map(|p| p.mul(q))
    }

    pub fn mul_var(&self, j: usize) -> Self {
        self.map(|p| p.mul_var(j))
    }

    /// Left multiplication of the spinor part by a matrix.
    pub fn apply_matrix(&self, m: &SpinorMatrix) -> Self {
        let n = self.size();
        let mut comps = vec![Polynomial::zero(self.nvars()); n];
        for (r, out) in comps.iter_mut().enumerate() {
            for c in 0..n {
                let a = m.get(r, c);
                if !a.is_zero() && !self.comps[c].is_zero() {
                    out.add_assign(&self.comps[c].scale(a));
                }
            }
        }
        SpinorPoly { comps }
    }

    /// Splits into homogeneous pieces, ascending by degree.
    pub fn homogeneous_components(&self) -> Vec<(usize, SpinorPoly)> {
        let mut pieces: BTreeMap<usize, SpinorPoly> = BTreeMap::new();
        for (idx, p) in self.comps.iter().enumerate() {
            for (deg, piece) in p.homogeneous_components() {
                let slot = pieces.entry(deg).or_insert_with(|| SpinorPoly::zero(self.nvars(), self.size()));
                slot.comps[idx] = piece;
            }
        }
        pieces.into_iter().collect()
    }

    /// Column vector of component polynomials.
    pub fn to_latex(&self) -> String {
        let rows: Vec<String> = self.comps.iter().map(Polynomial::to_latex).collect();
        format!("\\begin{{pmatrix}} {} \\end{{pmatrix}}", rows.join(" \\\\ "))
    }

    /// Per-component list of `(exponents, coefficient)` pairs.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.comps.iter().map(Polynomial::to_json).collect())
    }
}

impl fmt::Display for SpinorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.comps.iter().enumerate() {
            write!(f, "{}{p}", if i > 0 { "; " } else { "" })?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for SpinorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn e(d: usize, eps: Eps, j: usize) -> CliffordElement {
        CliffordElement::generator(d, eps, j)
    }

    #[test]
    fn latex_column() {
        let f = SpinorPoly::from_components(vec![Polynomial::var(2, 0), Polynomial::zero(2)]);
        assert_eq!(f.to_latex(), "\\begin{pmatrix} x_{1} \\\\ 0 \\end{pmatrix}");
    }

    #[test]
    fn generators_square_to_eps() {
        for eps in [Eps::Plus, Eps::Minus] {
            let sq = e(3, eps, 0).mul(&e(3, eps, 0));
            assert_eq!(sq, CliffordElement::scalar(3, eps, eps.scalar()));
        }
    }

    #[test]
    fn anticommutation_and_contraction() {
        for eps in [Eps::Plus, Eps::Minus] {
            let e12 = CliffordElement::blade(3, eps, 0b11, Scalar::one());
            assert_eq!(e(3, eps, 0).mul(&e(3, eps, 1)), e12);
            assert_eq!(e(3, eps, 1).mul(&e(3, eps, 0)), e12.scale(&Scalar::from_int(-1)));
            assert_eq!(e12.mul(&e(3, eps, 1)), e(3, eps, 0).scale(&eps.scalar()));
        }
        assert_eq!(CliffordElement::blade(3, Eps::Plus, 0b101, Scalar::one()).to_string(), "e1e3");
    }

    #[test]
    fn d2_matrices() {
        let v = SpinorSpace::new(2, Eps::Plus);
        let (z, o) = (Scalar::zero(), Scalar::one());
        let expect = SpinorMatrix::from_rows(vec![vec![z.clone(), o.clone()], vec![o, z]]);
        assert_eq!(v.generator(0), &expect);
        let unit = CliffordElement::scalar(2, Eps::Plus, Scalar::one());
        assert_eq!(v.to_matrix(&unit), SpinorMatrix::identity(2));
    }

    #[test]
    fn matrices_satisfy_relations() {
        for d in 1..=6 {
            for eps in [Eps::Plus, Eps::Minus] {
                let v = SpinorSpace::new(d, eps);
                assert_eq!(v.size(), 1 << (d / 2));
                for i in 0..d {
                    for j in 0..d {
                        let a = v.generator(i).mul(v.generator(j)).add(&v.generator(j).mul(v.generator(i)));
                        let want = if i == j {
                            SpinorMatrix::identity(v.size()).scale(&Scalar::from_int(2 * eps.value()))
                        } else {
                            SpinorMatrix::zero(v.size())
                        };
                        assert_eq!(a, want, "d={d} eps={eps} i={i} j={j}");
                    }
                }
                assert_eq!(v.pseudoscalar().is_some(), d % 2 == 1);
            }
        }
    }

    #[test]
    fn to_matrix_is_multiplicative_on_random_blades() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for eps in [Eps::Plus, Eps::Minus] {
            let d = 4;
            let v = SpinorSpace::new(d, eps);
            for _ in 0..50 {
                let a = CliffordElement::blade(d, eps, rng.gen_range(0..16), Scalar::from_int(rng.gen_range(-3..4)));
                let b = CliffordElement::blade(d, eps, rng.gen_range(0..16), Scalar::from_int(rng.gen_range(-3..4)));
                assert_eq!(v.to_matrix(&a.mul(&b)), v.to_matrix(&a).mul(&v.to_matrix(&b)));
            }
        }
    }

    #[test]
    fn homogeneous_split() {
        let x1 = Polynomial::var(2, 0);
        let f = SpinorPoly::from_components(vec![x1.add(&Polynomial::one(2)), x1.mul(&x1)]);
        let parts = f.homogeneous_components();
        assert_eq!(parts.iter().map(|(n, _)| *n).collect::<Vec<_>>(), vec![0, 1, 2]);
        let back = parts.iter().fold(SpinorPoly::zero(2, 2), |acc, (_, p)| acc.add(p));
        assert_eq!(back, f);
    }

    proptest! {
        #[test]
        fn blade_product_is_associative(a in 0u32..32, b in 0u32..32, c in 0u32..32, minus in any::<bool>()) {
            let eps = if minus { Eps::Minus } else { Eps::Plus };
            let bl = |m| CliffordElement::blade(5, eps, m, Scalar::one());
            prop_assert_eq!(bl(a).mul(&bl(b)).mul(&bl(c)), bl(a).mul(&bl(b).mul(&bl(c))));
        }
    }
}
