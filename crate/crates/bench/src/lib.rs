//! Fixtures shared by the benchmarks.

use monogenic::{Context, Eps, GroupSpec, Scalar};

/// `Z2^d` with multiplicities `1/2, 1/3, …`.
pub fn z2(d: usize, eps: Eps) -> Context {
    let k: Vec<Scalar> = (0..d).map(|i| Scalar::from_ratio(1, i as i64 + 2)).collect();
    Context::z2(&k, eps).expect("positive multiplicities")
}

pub fn b2(eps: Eps) -> Context {
    Context::build(&GroupSpec::B2 { short: Scalar::from_ratio(1, 2), long: Scalar::from_ratio(1, 3) }, eps)
        .expect("B2 builds")
}
