//! Structure-constant representation of bilinear products and the
//! algebra bundles the identity checkers operate on.
//!
//! A bilinear product on a dimension-`n` space is stored as a dense
//! `n x n x n` cube: `table[i][j][k]` is the `k`-th coordinate of
//! `e_i ∘ e_j`. Because every identity in this crate is linear in each
//! variable slot once the structure maps are fixed, verifying an identity
//! on all basis tuples verifies it on the whole space; the checkers rely
//! on exactly that reduction.
//!
//! Bundles validate their structural invariants at construction (the
//! structure maps commute and are multiplicative for every product) and
//! refuse invalid data, since every identity suite presupposes them.

use std::fmt;

use serde::Serialize;

use crate::error::Error;
use crate::linalg::{LinearMap, Vector};
use crate::rational::Rat;

/// Default cap on stored counterexample witnesses per identity.
pub const DEFAULT_WITNESS_CAP: usize = 16;

/// A bilinear operation given by its structure constants.
#[derive(Clone, PartialEq, Eq)]
pub struct BilinearOp {
    dim: usize,
    /// Dense cube, indexed `(i * dim + j) * dim + k`.
    table: Vec<Rat>,
}

impl BilinearOp {
    pub fn zero(dim: usize) -> Self {
        BilinearOp { dim, table: vec![Rat::zero(); dim * dim * dim] }
    }

    /// Builds an op from `(i, j, k, coefficient)` entries; unlisted
    /// entries are zero. Duplicate positions are rejected.
    pub fn from_triples(dim: usize, triples: &[(usize, usize, usize, Rat)]) -> Result<Self, Error> {
        let mut op = BilinearOp::zero(dim);
        let mut seen = vec![false; dim * dim * dim];
        for (i, j, k, c) in triples {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(Error::Parse(format!(
                    "structure constant index ({i},{j},{k}) out of range for dim {dim}"
                )));
            }
            let idx = (i * dim + j) * dim + k;
            if seen[idx] {
                return Err(Error::Parse(format!("duplicate structure constant at ({i},{j},{k})")));
            }
            seen[idx] = true;
            op.table[idx] = c.clone();
        }
        Ok(op)
    }

    /// Builds an op whose structure constants come from evaluating `f` on
    /// every basis pair.
    pub fn from_fn<F>(dim: usize, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> Vector,
    {
        let mut op = BilinearOp::zero(dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = f(i, j);
                assert_eq!(v.dim(), dim, "from_fn closure returned wrong dimension");
                for (k, c) in v.support() {
                    op.set(i, j, k, c.clone());
                }
            }
        }
        op
    }

    /// Structure constants of the twisted product `(x, y) ↦ self(f(x), g(y))`.
    pub fn precompose(&self, f: &LinearMap, g: &LinearMap) -> BilinearOp {
        BilinearOp::from_fn(self.dim, |i, j| ev(self, &f.column(i), &g.column(j)))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn at(&self, i: usize, j: usize, k: usize) -> &Rat {
        &self.table[(i * self.dim + j) * self.dim + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, c: Rat) {
        self.table[(i * self.dim + j) * self.dim + k] = c;
    }

    /// `e_i ∘ e_j` as a vector.
    pub fn basis_product(&self, i: usize, j: usize) -> Vector {
        Vector::from_entries((0..self.dim).map(|k| self.at(i, j, k).clone()).collect())
    }

    /// Nonzero entries in lexicographic `(i, j, k)` order.
    pub fn nonzero_triples(&self) -> Vec<(usize, usize, usize, Rat)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let c = self.at(i, j, k);
                    if !c.is_zero() {
                        out.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(Rat::is_zero)
    }
}

impl fmt::Debug for BilinearOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BilinearOp(dim={}, nonzero={:?})", self.dim, self.nonzero_triples())
    }
}

/// Evaluates `op(u, v)` exactly: `result_k = Σ_{i,j} u_i v_j table[i][j][k]`.
pub fn eval(op: &BilinearOp, u: &Vector, v: &Vector) -> Result<Vector, Error> {
    if u.dim() != op.dim() || v.dim() != op.dim() {
        return Err(Error::DimMismatch(format!(
            "eval: op dim {} vs vector dims {} and {}",
            op.dim(),
            u.dim(),
            v.dim()
        )));
    }
    let mut out = Vector::zero(op.dim());
    for (i, a) in u.support() {
        for (j, b) in v.support() {
            let ab = a * b;
            out.add_scaled(&ab, &op.basis_product(i, j));
        }
    }
    Ok(out)
}

/// In-crate evaluation helper for operands already known to have the right
/// dimension.
pub(crate) fn ev(op: &BilinearOp, u: &Vector, v: &Vector) -> Vector {
    eval(op, u, v).expect("operand dimensions agree")
}

/// A failing basis tuple together with the nonzero residual (left side
/// minus right side) witnessing the failure.
#[derive(Clone, PartialEq, Eq)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub residual: Vector,
}

impl fmt::Debug for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {:?} residual {:?}", self.indices, self.residual)
    }
}

/// Outcome of checking one named identity over all basis tuples.
///
/// Witnesses are in lexicographic index order; `passed` holds exactly when
/// there are none. At most `cap` witnesses are stored and `truncated` is
/// set when the cap cut the list short.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub identity: String,
    pub passed: bool,
    pub witnesses: Vec<Witness>,
    pub truncated: bool,
}

impl CheckReport {
    pub fn new(identity: &str, mut witnesses: Vec<Witness>, cap: usize) -> Self {
        witnesses.sort_by(|a, b| a.indices.cmp(&b.indices));
        let passed = witnesses.is_empty();
        let truncated = witnesses.len() > cap;
        witnesses.truncate(cap);
        CheckReport { identity: identity.to_string(), passed, witnesses, truncated }
    }

    pub fn pass(identity: &str) -> Self {
        CheckReport::new(identity, Vec::new(), DEFAULT_WITNESS_CAP)
    }
}

/// A group of `CheckReport`s run together, e.g. every identity in one
/// definition. Passes when every member passes.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn new(suite: &str, checks: Vec<CheckReport>) -> Self {
        SuiteReport { suite: suite.to_string(), checks }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failing(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.identity.as_str()).collect()
    }

    /// Report for the first failing identity, if any.
    pub fn first_failure(&self) -> Option<&CheckReport> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub(crate) fn extend(&mut self, other: SuiteReport) {
        self.checks.extend(other.checks);
    }
}

/// Checks that `f` is multiplicative for `op`: `f(e_i ∘ e_j) = f(e_i) ∘ f(e_j)`
/// on every basis pair, which by bilinearity settles the identity for all
/// elements. The identity is reported under `name`.
pub fn check_multiplicative_named(
    f: &LinearMap,
    op: &BilinearOp,
    name: &str,
    cap: usize,
) -> Result<CheckReport, Error> {
    if f.dim() != op.dim() {
        return Err(Error::DimMismatch(format!(
            "check_multiplicative: map dim {} vs op dim {}",
            f.dim(),
            op.dim()
        )));
    }
    let d = op.dim();
    let mut witnesses = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let lhs = f.apply(&op.basis_product(i, j));
            let rhs = ev(op, &f.column(i), &f.column(j));
            let residual = &lhs - &rhs;
            if !residual.is_zero() {
                witnesses.push(Witness { indices: vec![i, j], residual });
            }
        }
    }
    Ok(CheckReport::new(name, witnesses, cap))
}

/// `check_multiplicative_named` with the default name and witness cap.
pub fn check_multiplicative(f: &LinearMap, op: &BilinearOp) -> Result<CheckReport, Error> {
    check_multiplicative_named(f, op, "multiplicative", DEFAULT_WITNESS_CAP)
}

/// Checks `a ∘ b = b ∘ a` as maps.
pub fn check_maps_commute(a: &LinearMap, b: &LinearMap) -> Result<CheckReport, Error> {
    if a.dim() != b.dim() {
        return Err(Error::DimMismatch(format!(
            "check_maps_commute: {} vs {}",
            a.dim(),
            b.dim()
        )));
    }
    let ab = a.compose(b);
    let ba = b.compose(a);
    let mut witnesses = Vec::new();
    for j in 0..a.dim() {
        let residual = &ab.column(j) - &ba.column(j);
        if !residual.is_zero() {
            witnesses.push(Witness { indices: vec![j], residual });
        }
    }
    Ok(CheckReport::new("maps_commute", witnesses, DEFAULT_WITNESS_CAP))
}

/// An algebra with one bilinear product and a pair of commuting
/// multiplicative structure maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneProductAlgebra {
    dim: usize,
    mu: BilinearOp,
    alpha: LinearMap,
    beta: LinearMap,
}

/// An algebra carrying two bilinear products (`mu` and `star`) sharing one
/// pair of structure maps. The `star` slot also hosts brackets when a
/// bundle pairs a product with a bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoProductAlgebra {
    dim: usize,
    mu: BilinearOp,
    star: BilinearOp,
    alpha: LinearMap,
    beta: LinearMap,
}

fn dims_agree(parts: &[(&str, usize)]) -> Result<usize, Error> {
    let dim = parts[0].1;
    for (name, d) in parts {
        if *d != dim {
            return Err(Error::DimMismatch(format!(
                "bundle parts disagree on dimension: {name} has {d}, expected {dim}"
            )));
        }
    }
    Ok(dim)
}

fn validate_parts(
    alpha: &LinearMap,
    beta: &LinearMap,
    products: &[(&str, &BilinearOp)],
) -> Result<SuiteReport, Error> {
    let mut checks = vec![check_maps_commute(alpha, beta)?];
    for (name, op) in products {
        checks.push(check_multiplicative_named(
            alpha,
            op,
            &format!("mult_alpha_{name}"),
            DEFAULT_WITNESS_CAP,
        )?);
        checks.push(check_multiplicative_named(
            beta,
            op,
            &format!("mult_beta_{name}"),
            DEFAULT_WITNESS_CAP,
        )?);
    }
    Ok(SuiteReport::new("bundle-validation", checks))
}

impl OneProductAlgebra {
    /// Builds and validates the bundle; rejects data whose maps do not
    /// commute or are not multiplicative.
    pub fn new(mu: BilinearOp, alpha: LinearMap, beta: LinearMap) -> Result<Self, Error> {
        let dim = dims_agree(&[
            ("mu", mu.dim()),
            ("alpha", alpha.dim()),
            ("beta", beta.dim()),
        ])?;
        let bundle = OneProductAlgebra { dim, mu, alpha, beta };
        let report = bundle.validate();
        if !report.passed() {
            return Err(Error::InvalidBundle(report.failing().join(", ")));
        }
        Ok(bundle)
    }

    /// Builds the bundle without structural validation. Intended for
    /// mutation tests that deliberately corrupt structure constants.
    pub fn new_unchecked(mu: BilinearOp, alpha: LinearMap, beta: LinearMap) -> Self {
        let dim = mu.dim();
        OneProductAlgebra { dim, mu, alpha, beta }
    }

    /// Re-runs the structural checks the constructor enforces.
    pub fn validate(&self) -> SuiteReport {
        validate_parts(&self.alpha, &self.beta, &[("mu", &self.mu)])
            .expect("dimensions were checked at construction")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mu(&self) -> &BilinearOp {
        &self.mu
    }

    pub fn alpha(&self) -> &LinearMap {
        &self.alpha
    }

    pub fn beta(&self) -> &LinearMap {
        &self.beta
    }
}

impl TwoProductAlgebra {
    pub fn new(
        mu: BilinearOp,
        star: BilinearOp,
        alpha: LinearMap,
        beta: LinearMap,
    ) -> Result<Self, Error> {
        let dim = dims_agree(&[
            ("mu", mu.dim()),
            ("star", star.dim()),
            ("alpha", alpha.dim()),
            ("beta", beta.dim()),
        ])?;
        let bundle = TwoProductAlgebra { dim, mu, star, alpha, beta };
        let report = bundle.validate();
        if !report.passed() {
            return Err(Error::InvalidBundle(report.failing().join(", ")));
        }
        Ok(bundle)
    }

    /// See [`OneProductAlgebra::new_unchecked`].
    pub fn new_unchecked(
        mu: BilinearOp,
        star: BilinearOp,
        alpha: LinearMap,
        beta: LinearMap,
    ) -> Self {
        let dim = mu.dim();
        TwoProductAlgebra { dim, mu, star, alpha, beta }
    }

    pub fn validate(&self) -> SuiteReport {
        validate_parts(&self.alpha, &self.beta, &[("mu", &self.mu), ("star", &self.star)])
            .expect("dimensions were checked at construction")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mu(&self) -> &BilinearOp {
        &self.mu
    }

    pub fn star(&self) -> &BilinearOp {
        &self.star
    }

    pub fn alpha(&self) -> &LinearMap {
        &self.alpha
    }

    pub fn beta(&self) -> &LinearMap {
        &self.beta
    }

    /// The `(mu, alpha, beta)` part as a one-product bundle.
    pub fn mu_bundle(&self) -> OneProductAlgebra {
        OneProductAlgebra {
            dim: self.dim,
            mu: self.mu.clone(),
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
        }
    }

    /// The `(star, alpha, beta)` part as a one-product bundle.
    pub fn star_bundle(&self) -> OneProductAlgebra {
        OneProductAlgebra {
            dim: self.dim,
            mu: self.star.clone(),
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
        }
    }
}

/// Machine-readable form of a witness, used by the JSON report.
#[derive(Serialize)]
pub(crate) struct WitnessJson {
    pub indices: Vec<usize>,
    pub residual: Vec<String>,
}

impl From<&Witness> for WitnessJson {
    fn from(w: &Witness) -> Self {
        WitnessJson {
            indices: w.indices.clone(),
            residual: w.residual.entries().iter().map(|c| c.to_string()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Quotient ring k[x]/(x^2) on basis {1, x}.
    fn p2_mu() -> BilinearOp {
        BilinearOp::from_triples(
            2,
            &[
                (0, 0, 0, Rat::one()),
                (0, 1, 1, Rat::one()),
                (1, 0, 1, Rat::one()),
            ],
        )
        .unwrap()
    }

    #[test]
    fn eval_on_zero_op() {
        let op = BilinearOp::zero(3);
        let u = Vector::basis(3, 0);
        let v = Vector::basis(3, 2);
        assert!(eval(&op, &u, &v).unwrap().is_zero());
    }

    #[test]
    fn eval_quotient_ring_table() {
        let mu = p2_mu();
        let e0 = Vector::basis(2, 0);
        let e1 = Vector::basis(2, 1);
        assert_eq!(eval(&mu, &e0, &e1).unwrap(), e1);
        assert!(eval(&mu, &e1, &e1).unwrap().is_zero());
    }

    #[test]
    fn eval_rejects_dim_mismatch() {
        let op = BilinearOp::zero(2);
        let u = Vector::basis(3, 0);
        assert!(matches!(eval(&op, &u, &u), Err(Error::DimMismatch(_))));
    }

    #[test]
    fn multiplicative_identity_map_always_passes() {
        let report = check_multiplicative(&LinearMap::identity(2), &p2_mu()).unwrap();
        assert!(report.passed);
    }

    #[test]
    fn multiplicative_sign_flip_is_endomorphism() {
        let f = LinearMap::diagonal(&[Rat::one(), Rat::from_int(-1)]);
        assert!(check_multiplicative(&f, &p2_mu()).unwrap().passed);
    }

    #[test]
    fn multiplicative_shear_fails() {
        // Columns are images: f(e0) = e0, f(e1) = e0 + e1. The first
        // failing pair is (1,1): f(x·x) = 0 but f(x)·f(x) = 1 + 2x.
        let f = LinearMap::from_rows(vec![
            vec![Rat::one(), Rat::one()],
            vec![Rat::zero(), Rat::one()],
        ])
        .unwrap();
        let report = check_multiplicative(&f, &p2_mu()).unwrap();
        assert!(!report.passed);
        assert_eq!(report.witnesses[0].indices, vec![1, 1]);
        let expected = Vector::from_entries(vec![Rat::from_int(-1), Rat::from_int(-2)]);
        assert_eq!(report.witnesses[0].residual, expected);
    }

    #[test]
    fn maps_commute_cases() {
        let id = LinearMap::identity(2);
        let d = LinearMap::diagonal(&[Rat::from_int(2), Rat::from_int(3)]);
        let s = LinearMap::diagonal(&[Rat::one(), Rat::from_int(-1)]);
        assert!(check_maps_commute(&id, &d).unwrap().passed);
        assert!(check_maps_commute(&s, &d).unwrap().passed);
        let n = LinearMap::from_rows(vec![
            vec![Rat::zero(), Rat::one()],
            vec![Rat::zero(), Rat::zero()],
        ])
        .unwrap();
        assert!(!check_maps_commute(&n, &d).unwrap().passed);
    }

    #[test]
    fn bundle_rejects_non_commuting_maps() {
        let n = LinearMap::from_rows(vec![
            vec![Rat::zero(), Rat::one()],
            vec![Rat::zero(), Rat::zero()],
        ])
        .unwrap();
        let d = LinearMap::diagonal(&[Rat::one(), Rat::from_int(2)]);
        let err = OneProductAlgebra::new(BilinearOp::zero(2), n, d).unwrap_err();
        match err {
            Error::InvalidBundle(msg) => assert!(msg.contains("maps_commute")),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn zero_algebra_with_commuting_maps_validates() {
        let s = LinearMap::diagonal(&[Rat::one(), Rat::from_int(-1)]);
        let bundle = OneProductAlgebra::new(BilinearOp::zero(2), s.clone(), s).unwrap();
        assert!(bundle.validate().passed());
    }

    #[test]
    fn p2_bundle_with_sign_maps_validates() {
        let s = LinearMap::diagonal(&[Rat::one(), Rat::from_int(-1)]);
        assert!(OneProductAlgebra::new(p2_mu(), s.clone(), s).is_ok());
    }

    #[test]
    fn witness_cap_and_truncation_flag() {
        // Identity map against an op where nothing matches forces d*d
        // failures; cap at 2.
        let mut op = BilinearOp::zero(2);
        op.set(0, 0, 0, Rat::one());
        op.set(0, 1, 0, Rat::one());
        op.set(1, 0, 0, Rat::one());
        op.set(1, 1, 0, Rat::one());
        let f = LinearMap::diagonal(&[Rat::from_int(2), Rat::from_int(3)]);
        let report = check_multiplicative_named(&f, &op, "mult", 2).unwrap();
        assert!(!report.passed);
        assert!(report.truncated);
        assert_eq!(report.witnesses.len(), 2);
        assert_eq!(report.witnesses[0].indices, vec![0, 0]);
    }

    proptest! {
        #[test]
        fn eval_is_bilinear_in_first_slot(
            lam_n in -20i64..20,
            u0 in -5i64..5, u1 in -5i64..5,
            w0 in -5i64..5, w1 in -5i64..5,
            v0 in -5i64..5, v1 in -5i64..5,
        ) {
            let mu = p2_mu();
            let lam = Rat::from_int(lam_n);
            let u = Vector::from_entries(vec![Rat::from_int(u0), Rat::from_int(u1)]);
            let w = Vector::from_entries(vec![Rat::from_int(w0), Rat::from_int(w1)]);
            let v = Vector::from_entries(vec![Rat::from_int(v0), Rat::from_int(v1)]);
            let combined = &u + &w.scaled(&lam);
            let lhs = eval(&mu, &combined, &v).unwrap();
            let rhs = &eval(&mu, &u, &v).unwrap() + &eval(&mu, &w, &v).unwrap().scaled(&lam);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
