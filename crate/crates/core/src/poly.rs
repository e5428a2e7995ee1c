//! Sparse exact multivariate polynomials.
//!
//! Terms are kept in a `BTreeMap` keyed by [`MultiIndex`], whose ordering is
//! total degree first and then reverse lexicographic (larger trailing
//! exponents come first), so `(0,0,2) < (0,1,1) < (1,0,1) < (0,2,0) < ...`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomial is not divisible by the linear form (nonzero remainder)")]
    NotDivisible,
    #[error("linear form is identically zero")]
    ZeroDivisor,
    #[error("expected {expected} variables, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("expected a homogeneous polynomial of degree {0}")]
    NotHomogeneous(usize),
}

/// Exponent vector `β = (β_1, …, β_d)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(SmallVec<[u32; 4]>);

impl MultiIndex {
    pub fn zero(nvars: usize) -> Self {
        MultiIndex(SmallVec::from_elem(0, nvars))
    }

    pub fn from_slice(exps: &[u32]) -> Self {
        MultiIndex(SmallVec::from_slice(exps))
    }

    /// The unit index `ξ_j` (0-based `j`).
    pub fn unit(nvars: usize, j: usize) -> Self {
        let mut m = Self::zero(nvars);
        m.0[j] = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    /// `|β|_1`.
    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, j: usize) -> u32 {
        self.0[j]
    }

    pub fn with_added(&self, j: usize, by: u32) -> Self {
        let mut m = self.clone();
        m.0[j] += by;
        m
    }

    pub fn plus(&self, other: &MultiIndex) -> Self {
        MultiIndex(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// All indices with `|β|_1 = n` in `nvars` variables, in ascending order.
    pub fn all_of_degree(nvars: usize, n: usize) -> Vec<MultiIndex> {
        fn rec(prefix: &mut Vec<u32>, left: usize, slots: usize, out: &mut Vec<MultiIndex>) {
            if slots == 1 {
                prefix.push(left as u32);
                out.push(MultiIndex::from_slice(prefix));
                prefix.pop();
                return;
            }
            for e in 0..=left {
                prefix.push(e as u32);
                rec(prefix, left - e, slots - 1, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if n == 0 {
                out.push(MultiIndex::zero(0));
            }
            return out;
        }
        rec(&mut Vec::with_capacity(nvars), n, nvars, &mut out);
        out.sort();
        out
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.iter().rev().cmp(self.0.iter().rev()))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Sparse polynomial in a fixed number of variables.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<MultiIndex, Scalar>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Self::monomial(MultiIndex::zero(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Scalar::one())
    }

    /// The coordinate function `x_j` (0-based).
    pub fn var(nvars: usize, j: usize) -> Self {
        Self::monomial(MultiIndex::unit(nvars, j), Scalar::one())
    }

    pub fn monomial(exps: MultiIndex, c: Scalar) -> Self {
        let mut p = Polynomial::zero(exps.nvars());
        p.add_term(exps, c);
        p
    }

    /// `Σ_{a<upto} x_a²`; `upto = nvars` gives `|x|²`.
    pub fn sqnorm(nvars: usize, upto: usize) -> Self {
        let mut p = Polynomial::zero(nvars);
        for a in 0..upto {
            p.add_term(MultiIndex::unit(nvars, a).with_added(a, 1), Scalar::one());
        }
        p
    }

    /// `Σ_j c_j x_j`.
    pub fn linear_form(coeffs: &[Scalar]) -> Self {
        let mut p = Polynomial::zero(coeffs.len());
        for (j, c) in coeffs.iter().enumerate() {
            p.add_term(MultiIndex::unit(coeffs.len(), j), c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &MultiIndex) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// Adds `c·x^exps`, dropping the entry if it cancels.
    pub fn add_term(&mut self, exps: MultiIndex, c: Scalar) {
        debug_assert_eq!(exps.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Highest total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(MultiIndex::degree)
    }

    pub fn is_homogeneous_of(&self, n: usize) -> bool {
        self.terms.keys().all(|m| m.degree() == n)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Polynomial) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        if c.is_one() {
            return self.clone();
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.plus(m2), c1 * c2);
            }
        }
        out
    }

    /// Multiplication by `x_j`.
    pub fn mul_var(&self, j: usize) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.with_added(j, 1), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `∂p/∂x_j`.
    pub fn partial(&self, j: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.get(j);
            if e > 0 {
                let mut m2 = m.clone();
                m2.0[j] -= 1;
                out.add_term(m2, c * &Scalar::from_int(e as i64));
            }
        }
        out
    }

    /// `p(x)` with `x_j ↦ −x_j`.
    pub fn flip_sign(&self, j: usize) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), if m.get(j) % 2 == 1 { -c } else { c.clone() }))
                .collect(),
        }
    }

    /// `(p − p(x_j ↦ −x_j)) / x_j`, the coordinate divided difference.
    pub fn coordinate_divided_difference(&self, j: usize) -> Polynomial {
        let two = Scalar::from_int(2);
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.get(j) % 2 == 1 {
                let mut m2 = m.clone();
                m2.0[j] -= 1;
                out.add_term(m2, c * &two);
            }
        }
        out
    }

    /// `p(Ax)` for a square matrix `A` given by rows.
    pub fn substitute_linear(&self, rows: &[Vec<Scalar>]) -> Polynomial {
        let n = self.nvars;
        assert_eq!(rows.len(), n);
        let forms: Vec<Polynomial> = rows.iter().map(|r| Polynomial::linear_form(r)).collect();
        let mut cache: Vec<Vec<Polynomial>> = forms.iter().map(|_| vec![Polynomial::one(n)]).collect();
        let mut out = Polynomial::zero(n);
        for (m, c) in &self.terms {
            let mut prod = Polynomial::constant(n, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                while cache[i].len() <= e as usize {
                    let next = cache[i].last().unwrap().mul(&forms[i]);
                    cache[i].push(next);
                }
                if e > 0 {
                    prod = prod.mul(&cache[i][e as usize]);
                }
            }
            out.add_assign(&prod);
        }
        out
    }

    /// Exact quotient by the linear form `⟨α, x⟩`.
    ///
    /// Synthetic division in the variable of the last nonzero entry of `α`;
    /// any nonzero remainder is reported as [`PolyError::NotDivisible`].
    pub fn divide_by_linear_form(&self, alpha: &[Scalar]) -> Result<Polynomial, PolyError> {
        if alpha.len() != self.nvars {
            return Err(PolyError::Arity { expected: self.nvars, found: alpha.len() });
        }
        let k = alpha.iter().rposition(|a| !a.is_zero()).ok_or(PolyError::ZeroDivisor)?;
        if self.is_zero() {
            return Ok(self.clone());
        }
        let lead = &alpha[k];
        let lead_inv = lead.inv().expect("nonzero");
        let mut rest_coeffs = alpha.to_vec();
        rest_coeffs[k] = Scalar::zero();
        let rest = Polynomial::linear_form(&rest_coeffs);

        // coefficients of p as a polynomial in x_k
        let mut by_power: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.get(k);
            let mut m2 = m.clone();
            m2.0[k] = 0;
            by_power.entry(e).or_insert_with(|| Polynomial::zero(self.nvars)).add_term(m2, c.clone());
        }
        let top = *by_power.keys().next_back().unwrap();
        let coeff = |r: u32| by_power.get(&r).cloned().unwrap_or_else(|| Polynomial::zero(self.nvars));

        let mut quotient = Polynomial::zero(self.nvars);
        let mut remainder = coeff(top);
        // p = (lead·x_k + rest)·q + rem; descend from the top power.
        for r in (1..=top).rev() {
            let q_r1 = remainder.scale(&lead_inv);
            for (m, c) in &q_r1.terms {
                quotient.add_term(m.with_added(k, r - 1), c.clone());
            }
            remainder = coeff(r - 1).sub(&rest.mul(&q_r1));
        }
        if !remainder.is_zero() {
            return Err(PolyError::NotDivisible);
        }
        Ok(quotient)
    }

    /// Exact quotient by `|x|²`, or `None` when it does not divide.
    pub fn divide_by_sqnorm(&self) -> Option<Polynomial> {
        let n = self.nvars;
        if self.is_zero() {
            return Some(self.clone());
        }
        if n == 0 {
            return None;
        }
        let k = n - 1;
        let rest = Polynomial::sqnorm(n, k);
        let mut by_power: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            m2.0[k] = 0;
            by_power.entry(m.get(k)).or_insert_with(|| Polynomial::zero(n)).add_term(m2, c.clone());
        }
        let top = *by_power.keys().next_back().unwrap();
        let mut quotient = Polynomial::zero(n);
        // divide by x_k² + rest, monic in x_k
        for t in (2..=top).rev() {
            let Some(c_t) = by_power.remove(&t) else { continue };
            if c_t.is_zero() {
                continue;
            }
            for (m, c) in &c_t.terms {
                quotient.add_term(m.with_added(k, t - 2), c.clone());
            }
            let below = by_power.entry(t - 2).or_insert_with(|| Polynomial::zero(n));
            *below = below.sub(&rest.mul(&c_t));
        }
        by_power.values().all(Polynomial::is_zero).then_some(quotient)
    }

    /// Euler operator `Σ x_j ∂_j`; scales each monomial by its degree.
    pub fn euler(&self) -> Polynomial {
        self.euler_partial(self.nvars)
    }

    /// `Σ_{a<upto} x_a ∂_a`.
    pub fn euler_partial(&self, upto: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let deg: u32 = m.exps()[..upto].iter().sum();
            if deg > 0 {
                out.add_term(m.clone(), c * &Scalar::from_int(deg as i64));
            }
        }
        out
    }

    /// Nonzero homogeneous pieces in increasing degree.
    pub fn homogeneous_components(&self) -> Vec<(usize, Polynomial)> {
        let mut out: Vec<(usize, Polynomial)> = Vec::new();
        for (m, c) in &self.terms {
            let d = m.degree();
            match out.last_mut() {
                Some((deg, p)) if *deg == d => p.add_term(m.clone(), c.clone()),
                _ => out.push((d, Polynomial::monomial(m.clone(), c.clone()))),
            }
        }
        out
    }

    /// `p(x_1, …, x_{k−1}, 0, x_{k+1}, …)` for 0-based `k`.
    pub fn set_var_zero(&self, k: usize) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.get(k) == 0).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// True when no monomial involves variables with index `>= upto`.
    pub fn depends_only_on_first(&self, upto: usize) -> bool {
        self.terms.keys().all(|m| m.exps()[upto..].iter().all(|&e| e == 0))
    }

    /// `(exponents, coefficient)` pairs in term order, for serialisation.
    pub fn to_pairs(&self) -> Vec<(Vec<u32>, String)> {
        self.terms.iter().map(|(m, c)| (m.exps().to_vec(), c.to_string())).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_pairs()).expect("plain data")
    }

    pub fn from_pairs(nvars: usize, pairs: &[(Vec<u32>, String)]) -> Result<Polynomial, crate::scalar::ScalarError> {
        let mut p = Polynomial::zero(nvars);
        for (exps, c) in pairs {
            p.add_term(MultiIndex::from_slice(exps), c.parse()?);
        }
        Ok(p)
    }
}

impl Polynomial {
    pub fn to_latex(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (m, c) in &self.terms {
            let vars: String = m
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(j, &e)| if e == 1 { format!("x_{{{}}}", j + 1) } else { format!("x_{{{}}}^{{{}}}", j + 1, e) })
                .collect();
            let mut coef = c.to_latex();
            let compound = coef[1..].contains([' ']);
            let negative = !compound && coef.starts_with('-');
            if negative {
                coef.remove(0);
            }
            if compound {
                coef = format!("\\left({coef}\\right)");
            } else if coef == "1" && !vars.is_empty() {
                coef.clear();
            }
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&coef);
            out.push_str(&vars);
        }
        out
    }
}

impl fmt::Display for Polynomial {
    /// `c * x1^a x2^b + ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let vars: Vec<String> = m
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(j, &e)| if e == 1 { format!("x{}", j + 1) } else { format!("x{}^{}", j + 1, e) })
                .collect();
            let coef = c.to_string();
            let coef = if coef[1..].contains(['+', '-']) {
                format!("({coef})")
            } else {
                coef
            };
            if vars.is_empty() {
                f.write_str(&coef)?;
            } else {
                write!(f, "{} * {}", coef, vars.join(" "))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
