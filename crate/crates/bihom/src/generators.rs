//! Deterministic generator families for the concrete instances the tests
//! and the CLI run on.
//!
//! Both polynomial families use the Euler derivation `D(x^k) = k·x^k`: it
//! is the homogeneous weight-0 derivation of the monomial basis and
//! therefore the one derivation guaranteed to commute with arbitrary
//! diagonal scalings of that basis. Scale parameters of `1` or `-1` make
//! the squared structure maps the identity, giving the perturbation
//! constructions a full space of admissible elements; other rationals are
//! accepted but leave only the weight-0 component fixed.

use crate::algebra::{BilinearOp, TwoProductAlgebra};
use crate::error::Error;
use crate::linalg::LinearMap;
use crate::rational::Rat;

/// The ingredients of the derivation construction: a commutative
/// associative product, two commuting algebra morphisms, and a derivation
/// commuting with both.
#[derive(Clone, Debug)]
pub struct DerivationData {
    pub mu: BilinearOp,
    pub alpha: LinearMap,
    pub beta: LinearMap,
    pub derivation: LinearMap,
}

fn scaling_powers(scale: &Rat, exponents: impl Iterator<Item = usize>) -> Vec<Rat> {
    exponents
        .map(|e| {
            let mut acc = Rat::one();
            for _ in 0..e {
                acc = &acc * scale;
            }
            acc
        })
        .collect()
}

/// The quotient ring `Q[x]/(x^n)` on the basis `{1, x, …, x^(n-1)}`, with
/// `x^i · x^j = x^(i+j)` truncated at degree `n`, the diagonal algebra
/// morphisms `x^k ↦ a_scale^k x^k` and `x^k ↦ b_scale^k x^k`, and the
/// Euler derivation.
pub fn gen_truncated_poly(n: usize, a_scale: &Rat, b_scale: &Rat) -> Result<DerivationData, Error> {
    if n < 1 {
        return Err(Error::Parse("truncated-poly needs n >= 1".into()));
    }
    let mut mu = BilinearOp::zero(n);
    for i in 0..n {
        for j in 0..n {
            if i + j < n {
                mu.set(i, j, i + j, Rat::one());
            }
        }
    }
    let alpha = LinearMap::diagonal(&scaling_powers(a_scale, 0..n));
    let beta = LinearMap::diagonal(&scaling_powers(b_scale, 0..n));
    let derivation =
        LinearMap::diagonal(&(0..n).map(|k| Rat::from_int(k as i64)).collect::<Vec<_>>());
    Ok(DerivationData { mu, alpha, beta, derivation })
}

/// The non-unital span of `{x, x², …, x^m}` inside `Q[x]/(x^(m+1))`, with
/// maps and derivation as in [`gen_truncated_poly`] restricted to that
/// span. For `m = 2` every triple product vanishes, which makes the
/// derivation construction left BiHom-associative.
pub fn gen_nilpotent(m: usize, a_scale: &Rat, b_scale: &Rat) -> Result<DerivationData, Error> {
    if m < 1 {
        return Err(Error::Parse("nilpotent needs m >= 1".into()));
    }
    // Basis index i holds x^(i+1).
    let mut mu = BilinearOp::zero(m);
    for i in 0..m {
        for j in 0..m {
            if i + j + 2 <= m {
                mu.set(i, j, i + j + 1, Rat::one());
            }
        }
    }
    let alpha = LinearMap::diagonal(&scaling_powers(a_scale, 1..=m));
    let beta = LinearMap::diagonal(&scaling_powers(b_scale, 1..=m));
    let derivation =
        LinearMap::diagonal(&(1..=m).map(|k| Rat::from_int(k as i64)).collect::<Vec<_>>());
    Ok(DerivationData { mu, alpha, beta, derivation })
}

/// The zero algebra on an `n`-dimensional carrier: both products zero,
/// identity structure maps. Passes every suite vacuously; `n = 0` is the
/// empty carrier.
pub fn gen_zero(n: usize) -> TwoProductAlgebra {
    TwoProductAlgebra::new(
        BilinearOp::zero(n),
        BilinearOp::zero(n),
        LinearMap::identity(n),
        LinearMap::identity(n),
    )
    .expect("zero products with identity maps always validate")
}
