//! Constructions that produce new bundles from old ones: twisting by
//! morphisms, tensor products, element perturbations, the derivation
//! construction, and the commutator bracket, together with the
//! admissibility test and the bracket pushforward equalities.
//!
//! Each constructor's output is structurally validated; the identity
//! suites it is promised to satisfy are asserted by the test suites rather
//! than re-run on every call.

use crate::algebra::{
    ev, BilinearOp, CheckReport, OneProductAlgebra, SuiteReport, TwoProductAlgebra, Witness,
    DEFAULT_WITNESS_CAP,
};
use crate::error::Error;
use crate::generators::DerivationData;
use crate::identities::{check_bhnp_full, check_bihom_poisson, check_left_bihom_assoc};
use crate::linalg::{LinearMap, Vector};
use crate::rational::Rat;

fn require_commuting(maps: &[(&str, &LinearMap)]) -> Result<(), Error> {
    for (i, (name_a, a)) in maps.iter().enumerate() {
        for (name_b, b) in &maps[i + 1..] {
            if !a.commutes_with(b) {
                return Err(Error::MapsDontCommute(format!("{name_a} and {name_b}")));
            }
        }
    }
    Ok(())
}

fn require_morphism(f: &LinearMap, op: &BilinearOp, what: &str) -> Result<(), Error> {
    let report = crate::algebra::check_multiplicative(f, op)?;
    if !report.passed {
        return Err(Error::NotMorphism(format!(
            "{what} is not multiplicative (first failure at basis pair {:?})",
            report.witnesses[0].indices
        )));
    }
    Ok(())
}

/// `a` must satisfy `alpha^k(a) = beta^k(a) = a` for the given power.
fn require_fixed(alpha: &LinearMap, beta: &LinearMap, k: i64, a: &Vector, what: &str) -> Result<(), Error> {
    let ap = alpha.pow(k).expect("nonnegative power");
    let bp = beta.pow(k).expect("nonnegative power");
    if ap.apply(a) != *a || bp.apply(a) != *a {
        return Err(Error::NotFixed(format!(
            "{what} is not fixed by the {k}-th powers of the structure maps"
        )));
    }
    Ok(())
}

/// Twists a one-product bundle by a pair of multiplicative maps commuting
/// with each other and with the structure maps: the product becomes
/// `mu(ta(x), tb(y))` and the maps compose.
pub fn yau_twist_one(
    a: &OneProductAlgebra,
    ta: &LinearMap,
    tb: &LinearMap,
) -> Result<OneProductAlgebra, Error> {
    require_morphism(ta, a.mu(), "first twisting map")?;
    require_morphism(tb, a.mu(), "second twisting map")?;
    require_commuting(&[
        ("alpha", a.alpha()),
        ("beta", a.beta()),
        ("first twisting map", ta),
        ("second twisting map", tb),
    ])?;
    OneProductAlgebra::new(
        a.mu().precompose(ta, tb),
        a.alpha().compose(ta),
        a.beta().compose(tb),
    )
}

/// The two-product Yau twist: both products are precomposed with
/// `ta ⊗ tb` and the structure maps become `alpha∘ta`, `beta∘tb`. The
/// twisting maps must be multiplicative for both products, and all four
/// maps must pairwise commute. Preserves the full
/// BiHom-Novikov-Poisson suite and left BiHom-associativity.
pub fn yau_twist(
    a: &TwoProductAlgebra,
    ta: &LinearMap,
    tb: &LinearMap,
) -> Result<TwoProductAlgebra, Error> {
    require_morphism(ta, a.mu(), "first twisting map")?;
    require_morphism(tb, a.mu(), "second twisting map")?;
    require_morphism(ta, a.star(), "first twisting map")?;
    require_morphism(tb, a.star(), "second twisting map")?;
    require_commuting(&[
        ("alpha", a.alpha()),
        ("beta", a.beta()),
        ("first twisting map", ta),
        ("second twisting map", tb),
    ])?;
    TwoProductAlgebra::new(
        a.mu().precompose(ta, tb),
        a.star().precompose(ta, tb),
        a.alpha().compose(ta),
        a.beta().compose(tb),
    )
}

/// The `n`-th power twist: products precomposed with `alpha^n ⊗ beta^n`,
/// structure maps raised to `n + 1`. `n = 0` returns the input unchanged.
pub fn yau_twist_power(a: &TwoProductAlgebra, n: u32) -> TwoProductAlgebra {
    let ta = a.alpha().pow(n as i64).expect("nonnegative power");
    let tb = a.beta().pow(n as i64).expect("nonnegative power");
    // The structure maps are multiplicative and commute, so their powers
    // qualify as twisting maps.
    yau_twist(a, &ta, &tb).expect("powers of the structure maps always qualify")
}

/// Kronecker product of two maps under the pairing `p(i, j) = i·n2 + j`.
fn tensor_map(m1: &LinearMap, m2: &LinearMap) -> LinearMap {
    let (n1, n2) = (m1.dim(), m2.dim());
    let mut out = LinearMap::zero(n1 * n2);
    for r1 in 0..n1 {
        for c1 in 0..n1 {
            let a = m1.at(r1, c1);
            if a.is_zero() {
                continue;
            }
            for r2 in 0..n2 {
                for c2 in 0..n2 {
                    let b = m2.at(r2, c2);
                    if !b.is_zero() {
                        out.set(r1 * n2 + r2, c1 * n2 + c2, a * b);
                    }
                }
            }
        }
    }
    out
}

/// Pure tensor of two products: `(op1 ⊗ op2)(x1⊗x2, y1⊗y2) =
/// op1(x1,y1) ⊗ op2(x2,y2)`.
fn tensor_op(op1: &BilinearOp, op2: &BilinearOp) -> BilinearOp {
    let (n1, n2) = (op1.dim(), op2.dim());
    BilinearOp::from_fn(n1 * n2, |i, j| {
        let (i1, i2) = (i / n2, i % n2);
        let (j1, j2) = (j / n2, j % n2);
        let p1 = op1.basis_product(i1, j1);
        let p2 = op2.basis_product(i2, j2);
        let mut entries = vec![Rat::zero(); n1 * n2];
        for (k1, c1) in p1.support() {
            for (k2, c2) in p2.support() {
                entries[k1 * n2 + k2] = c1 * c2;
            }
        }
        Vector::from_entries(entries)
    })
}

/// The Leibniz-style combination `(op1a ⊗ op2b) + (op1b ⊗ op2a)` used both
/// for the tensor `*` product and for the tensor bracket formula.
fn tensor_leibniz(
    star1: &BilinearOp,
    mu1: &BilinearOp,
    star2: &BilinearOp,
    mu2: &BilinearOp,
) -> BilinearOp {
    let a = tensor_op(star1, mu2);
    let b = tensor_op(mu1, star2);
    BilinearOp::from_fn(a.dim(), |i, j| &a.basis_product(i, j) + &b.basis_product(i, j))
}

/// Tensor product of two bundles on the carrier pairing
/// `p(i, j) = i·n2 + j`: the commutative products multiply componentwise,
/// the Novikov product follows the two-term Leibniz formula
/// `(x1*y1)⊗(x2·y2) + (x1·y1)⊗(x2*y2)`, and the maps tensor. Preserves the
/// full BiHom-Novikov-Poisson suite and left BiHom-associativity.
pub fn tensor_product(
    a1: &TwoProductAlgebra,
    a2: &TwoProductAlgebra,
) -> Result<TwoProductAlgebra, Error> {
    TwoProductAlgebra::new(
        tensor_op(a1.mu(), a2.mu()),
        tensor_leibniz(a1.star(), a1.mu(), a2.star(), a2.mu()),
        tensor_map(a1.alpha(), a2.alpha()),
        tensor_map(a1.beta(), a2.beta()),
    )
}

/// Structure constants of `(x, y) ↦ mu(alpha(x), mu(alpha(a), y))`, the
/// element perturbation of a product.
fn diamond_op(mu: &BilinearOp, alpha: &LinearMap, shifted_a: &Vector) -> BilinearOp {
    BilinearOp::from_fn(mu.dim(), |i, j| {
        ev(mu, &alpha.column(i), &ev(mu, shifted_a, &Vector::basis(mu.dim(), j)))
    })
}

/// Perturbs a one-product bundle by an element `a` fixed by the squared
/// structure maps: the product becomes `x⋄y = mu(alpha(x), mu(alpha(a), y))`
/// and the maps square. BiHom-associativity and BiHom-commutativity of the
/// input carry over to the output.
pub fn perturb_mu(a: &OneProductAlgebra, elem: &Vector) -> Result<OneProductAlgebra, Error> {
    if elem.dim() != a.dim() {
        return Err(Error::DimMismatch(format!(
            "perturbation element has dim {}, bundle has {}",
            elem.dim(),
            a.dim()
        )));
    }
    require_fixed(a.alpha(), a.beta(), 2, elem, "perturbation element")?;
    let shifted = a.alpha().apply(elem);
    OneProductAlgebra::new(
        diamond_op(a.mu(), a.alpha(), &shifted),
        a.alpha().pow(2).expect("nonnegative power"),
        a.beta().pow(2).expect("nonnegative power"),
    )
}

/// Perturbs the commutative product of a BiHom-Novikov-Poisson bundle by a
/// fixed element while twisting the Novikov product:
/// `x⋄y = mu(alpha(x), mu(alpha(a), y))`, `x*'y = star(alpha(x), beta(y))`,
/// with squared maps. Output satisfies the full suite whenever the input
/// does, and stays left BiHom-associative when the input is.
pub fn perturb_commutative(
    a: &TwoProductAlgebra,
    elem: &Vector,
) -> Result<TwoProductAlgebra, Error> {
    if elem.dim() != a.dim() {
        return Err(Error::DimMismatch(format!(
            "perturbation element has dim {}, bundle has {}",
            elem.dim(),
            a.dim()
        )));
    }
    require_fixed(a.alpha(), a.beta(), 2, elem, "perturbation element")?;
    let shifted = a.alpha().apply(elem);
    TwoProductAlgebra::new(
        diamond_op(a.mu(), a.alpha(), &shifted),
        a.star().precompose(a.alpha(), a.beta()),
        a.alpha().pow(2).expect("nonnegative power"),
        a.beta().pow(2).expect("nonnegative power"),
    )
}

/// Perturbs the Novikov product instead: the commutative product is
/// twisted to `mu(alpha(x), beta(y))` and the Novikov product becomes
/// `x×y = star(alpha(x), beta(y)) + mu(alpha(x), mu(alpha(a), y))`, with
/// squared maps. Same preservation guarantees as [`perturb_commutative`];
/// forgetting the commutative part, `(×, alpha², beta²)` is itself
/// BiHom-Novikov.
pub fn perturb_novikov(a: &TwoProductAlgebra, elem: &Vector) -> Result<TwoProductAlgebra, Error> {
    if elem.dim() != a.dim() {
        return Err(Error::DimMismatch(format!(
            "perturbation element has dim {}, bundle has {}",
            elem.dim(),
            a.dim()
        )));
    }
    require_fixed(a.alpha(), a.beta(), 2, elem, "perturbation element")?;
    let shifted = a.alpha().apply(elem);
    let diamond = diamond_op(a.mu(), a.alpha(), &shifted);
    let twisted_star = a.star().precompose(a.alpha(), a.beta());
    let cross = BilinearOp::from_fn(a.dim(), |i, j| {
        &twisted_star.basis_product(i, j) + &diamond.basis_product(i, j)
    });
    TwoProductAlgebra::new(
        a.mu().precompose(a.alpha(), a.beta()),
        cross,
        a.alpha().pow(2).expect("nonnegative power"),
        a.beta().pow(2).expect("nonnegative power"),
    )
}

/// Applies both perturbations in one step: given `a` fixed by the squared
/// maps and `b` fixed by the fourth powers, the result carries
/// `x⋄y = mu(alpha³(x), mu(alpha³beta(b), beta²(y)))` and
/// `x⊠y = star(alpha³(x), beta³(y)) + mu(alpha³(x), mu(alpha(a), beta²(y)))`
/// with fourth-power maps. Equals, table for table,
/// `perturb_commutative(perturb_novikov(A, a), b)`.
pub fn perturb_both(
    alg: &TwoProductAlgebra,
    elem_a: &Vector,
    elem_b: &Vector,
) -> Result<TwoProductAlgebra, Error> {
    for (elem, what) in [(elem_a, "first perturbation element"), (elem_b, "second perturbation element")] {
        if elem.dim() != alg.dim() {
            return Err(Error::DimMismatch(format!(
                "{what} has dim {}, bundle has {}",
                elem.dim(),
                alg.dim()
            )));
        }
    }
    require_fixed(alg.alpha(), alg.beta(), 2, elem_a, "first perturbation element")?;
    require_fixed(alg.alpha(), alg.beta(), 4, elem_b, "second perturbation element")?;
    let (mu, star, al, be) = (alg.mu(), alg.star(), alg.alpha(), alg.beta());
    let dim = alg.dim();
    let al3 = al.pow(3).expect("nonnegative power");
    let be2 = be.pow(2).expect("nonnegative power");
    let be3 = be.pow(3).expect("nonnegative power");
    let b_shift = al3.compose(be).apply(elem_b);
    let a_shift = al.apply(elem_a);
    let diamond = BilinearOp::from_fn(dim, |i, j| {
        ev(mu, &al3.column(i), &ev(mu, &b_shift, &be2.column(j)))
    });
    let boxed = BilinearOp::from_fn(dim, |i, j| {
        let t1 = ev(star, &al3.column(i), &be3.column(j));
        let t2 = ev(mu, &al3.column(i), &ev(mu, &a_shift, &be2.column(j)));
        &t1 + &t2
    });
    TwoProductAlgebra::new(
        diamond,
        boxed,
        al.pow(4).expect("nonnegative power"),
        be.pow(4).expect("nonnegative power"),
    )
}

fn validate_derivation_data(data: &DerivationData) -> Result<(), Error> {
    let DerivationData { mu, alpha, beta, derivation } = data;
    let dim = mu.dim();
    if alpha.dim() != dim || beta.dim() != dim || derivation.dim() != dim {
        return Err(Error::DimMismatch("derivation data parts disagree on dimension".into()));
    }
    for i in 0..dim {
        for j in 0..dim {
            if mu.basis_product(i, j) != mu.basis_product(j, i) {
                return Err(Error::NotCommutativeAssociative(format!(
                    "product is not commutative at basis pair ({i},{j})"
                )));
            }
            for k in 0..dim {
                let left = ev(mu, &mu.basis_product(i, j), &Vector::basis(dim, k));
                let right = ev(mu, &Vector::basis(dim, i), &mu.basis_product(j, k));
                if left != right {
                    return Err(Error::NotCommutativeAssociative(format!(
                        "product is not associative at basis triple ({i},{j},{k})"
                    )));
                }
            }
        }
    }
    require_morphism(alpha, mu, "alpha")?;
    require_morphism(beta, mu, "beta")?;
    require_commuting(&[("alpha", alpha), ("beta", beta)])?;
    for i in 0..dim {
        for j in 0..dim {
            let lhs = derivation.apply(&mu.basis_product(i, j));
            let rhs = &ev(mu, &derivation.column(i), &Vector::basis(dim, j))
                + &ev(mu, &Vector::basis(dim, i), &derivation.column(j));
            if lhs != rhs {
                return Err(Error::NotDerivation(format!(
                    "Leibniz rule fails at basis pair ({i},{j})"
                )));
            }
        }
    }
    if !derivation.commutes_with(alpha) || !derivation.commutes_with(beta) {
        return Err(Error::MapsDontCommute(
            "derivation must commute with both structure maps".into(),
        ));
    }
    Ok(())
}

/// The derivation construction: from a commutative associative product,
/// commuting algebra morphisms, and a compatible derivation, builds the
/// bundle with `x•y = mu(alpha(x), beta(y))` and
/// `x*y = mu(alpha(x), D(beta(y)))`, which satisfies the full
/// BiHom-Novikov-Poisson suite.
pub fn derivation_bhnp(data: &DerivationData) -> Result<TwoProductAlgebra, Error> {
    validate_derivation_data(data)?;
    let DerivationData { mu, alpha, beta, derivation } = data;
    let bullet = mu.precompose(alpha, beta);
    let star = BilinearOp::from_fn(mu.dim(), |i, j| {
        ev(mu, &alpha.column(i), &derivation.apply(&beta.column(j)))
    });
    TwoProductAlgebra::new(bullet, star, alpha.clone(), beta.clone())
}

/// The perturbed derivation construction in closed form:
/// `x⊡y = mu(alpha⁴(x), D(beta⁴(y))) + mu(mu(alpha⁴(x), beta(a)), beta⁴(y))`
/// and `x◊y = mu(mu(alpha⁴(x), beta²(b)), beta⁴(y))` with fourth-power
/// maps. Equals `perturb_both(derivation_bhnp(data), a, b)` table for
/// table.
pub fn derivation_perturbed(
    data: &DerivationData,
    elem_a: &Vector,
    elem_b: &Vector,
) -> Result<TwoProductAlgebra, Error> {
    validate_derivation_data(data)?;
    let DerivationData { mu, alpha, beta, derivation } = data;
    let dim = mu.dim();
    for (elem, what) in [(elem_a, "first perturbation element"), (elem_b, "second perturbation element")] {
        if elem.dim() != dim {
            return Err(Error::DimMismatch(format!(
                "{what} has dim {}, data has {}",
                elem.dim(),
                dim
            )));
        }
    }
    require_fixed(alpha, beta, 2, elem_a, "first perturbation element")?;
    require_fixed(alpha, beta, 4, elem_b, "second perturbation element")?;
    let al4 = alpha.pow(4).expect("nonnegative power");
    let be4 = beta.pow(4).expect("nonnegative power");
    let a_shift = beta.apply(elem_a);
    let b_shift = beta.pow(2).expect("nonnegative power").apply(elem_b);
    let lozenge = BilinearOp::from_fn(dim, |i, j| {
        ev(mu, &ev(mu, &al4.column(i), &b_shift), &be4.column(j))
    });
    let boxdot = BilinearOp::from_fn(dim, |i, j| {
        let t1 = ev(mu, &al4.column(i), &derivation.apply(&be4.column(j)));
        let t2 = ev(mu, &ev(mu, &al4.column(i), &a_shift), &be4.column(j));
        &t1 + &t2
    });
    TwoProductAlgebra::new(lozenge, boxdot, al4, be4)
}

/// The commutator bracket of the Novikov product,
/// `[x,y] = x*y - (alpha⁻¹beta(y)) * (alpha·beta⁻¹(x))`, available when
/// both structure maps are invertible. Returns the bundle carrying the
/// commutative product alongside the bracket (in the `star` slot) with the
/// original maps; the bracket inherits multiplicativity from `*`.
pub fn commutator_bracket(a: &TwoProductAlgebra) -> Result<TwoProductAlgebra, Error> {
    let alpha_inv = a
        .alpha()
        .inverse()
        .map_err(|_| Error::Singular("alpha must be invertible to form the bracket".into()))?;
    let beta_inv = a
        .beta()
        .inverse()
        .map_err(|_| Error::Singular("beta must be invertible to form the bracket".into()))?;
    let left_shift = alpha_inv.compose(a.beta());
    let right_shift = a.alpha().compose(&beta_inv);
    let star = a.star();
    let bracket = BilinearOp::from_fn(a.dim(), |i, j| {
        let direct = star.basis_product(i, j);
        let swapped = ev(star, &left_shift.column(j), &right_shift.column(i));
        &direct - &swapped
    });
    TwoProductAlgebra::new(a.mu().clone(), bracket, a.alpha().clone(), a.beta().clone())
}

/// Both sides of the admissibility equivalence, reported together.
#[derive(Clone, Debug)]
pub struct AdmissibilityReport {
    /// Left BiHom-associativity of the Novikov product.
    pub left_assoc: SuiteReport,
    /// The full BiHom-Poisson suite on the commutator bracket.
    pub poisson: SuiteReport,
}

impl AdmissibilityReport {
    pub fn verdicts_agree(&self) -> bool {
        self.left_assoc.passed() == self.poisson.passed()
    }

    /// The shared verdict. The two checks are equivalent for a valid
    /// BiHom-Novikov-Poisson bundle with bijective maps, so disagreement
    /// can only mean a bug in this crate and is never resolved silently.
    pub fn verdict(&self) -> Result<bool, Error> {
        if !self.verdicts_agree() {
            return Err(Error::InvariantViolation(format!(
                "admissibility verdicts disagree: left BiHom-associativity {} but \
                 bracket BiHom-Poisson {}",
                self.left_assoc.passed(),
                self.poisson.passed()
            )));
        }
        Ok(self.left_assoc.passed())
    }
}

/// Runs both sides of the admissibility equivalence on a bundle that
/// passes the full BiHom-Novikov-Poisson suite and has invertible maps:
/// left BiHom-associativity on one side, the BiHom-Poisson suite of the
/// commutator bracket on the other.
pub fn admissibility_test(a: &TwoProductAlgebra) -> Result<AdmissibilityReport, Error> {
    let bhnp = check_bhnp_full(a);
    if !bhnp.passed() {
        return Err(Error::PrereqFailed(format!(
            "admissibility is defined for BiHom-Novikov-Poisson bundles; failing: {}",
            bhnp.failing().join(", ")
        )));
    }
    let left_assoc = check_left_bihom_assoc(a)?;
    let bracket_bundle = commutator_bracket(a)?;
    let poisson = check_bihom_poisson(&bracket_bundle);
    Ok(AdmissibilityReport { left_assoc, poisson })
}

/// A construction whose effect on the commutator bracket has a closed
/// form.
pub enum Pushforward<'a> {
    /// Twist by a pair of morphisms: the bracket twists by the same pair.
    YauTwist { ta: &'a LinearMap, tb: &'a LinearMap },
    /// Commutative-side perturbation: the bracket twists by `(alpha, beta)`.
    PerturbCommutative { elem: &'a Vector },
    /// Novikov-side perturbation: the bracket twists by `(alpha, beta)`;
    /// the element's contribution cancels in the commutator.
    PerturbNovikov { elem: &'a Vector },
    /// Tensor product: the bracket follows the two-term formula
    /// `[x1,y1]⊗(x2·y2) + (x1·y1)⊗[x2,y2]`.
    Tensor { right: &'a TwoProductAlgebra },
}

impl Pushforward<'_> {
    fn name(&self) -> &'static str {
        match self {
            Pushforward::YauTwist { .. } => "pushforward_yau_twist",
            Pushforward::PerturbCommutative { .. } => "pushforward_perturb_commutative",
            Pushforward::PerturbNovikov { .. } => "pushforward_perturb_novikov",
            Pushforward::Tensor { .. } => "pushforward_tensor",
        }
    }
}

fn require_left_assoc_bhnp(a: &TwoProductAlgebra, which: &str) -> Result<(), Error> {
    let bhnp = check_bhnp_full(a);
    if !bhnp.passed() {
        return Err(Error::PrereqFailed(format!(
            "{which} bundle does not satisfy the BiHom-Novikov-Poisson suite; failing: {}",
            bhnp.failing().join(", ")
        )));
    }
    let left = check_left_bihom_assoc(a)?;
    if !left.passed() {
        return Err(Error::PrereqFailed(format!(
            "{which} bundle is not left BiHom-associative"
        )));
    }
    Ok(())
}

/// Verifies, structure constant for structure constant, that the bracket
/// of a constructed bundle matches its closed form in terms of the input
/// bracket(s). Witnesses are basis pairs where the tables differ.
pub fn bracket_pushforward_check(
    a: &TwoProductAlgebra,
    case: &Pushforward<'_>,
) -> Result<CheckReport, Error> {
    require_left_assoc_bhnp(a, "input")?;
    let own_bracket = commutator_bracket(a)?;
    let (constructed, predicted): (TwoProductAlgebra, BilinearOp) = match case {
        Pushforward::YauTwist { ta, tb } => {
            let twisted = yau_twist(a, ta, tb)?;
            // The twisted maps must themselves be invertible for the
            // twisted bundle to have a bracket.
            let predicted = own_bracket.star().precompose(ta, tb);
            (commutator_bracket(&twisted)?, predicted)
        }
        Pushforward::PerturbCommutative { elem } => {
            let perturbed = perturb_commutative(a, elem)?;
            let predicted = own_bracket.star().precompose(a.alpha(), a.beta());
            (commutator_bracket(&perturbed)?, predicted)
        }
        Pushforward::PerturbNovikov { elem } => {
            let perturbed = perturb_novikov(a, elem)?;
            let predicted = own_bracket.star().precompose(a.alpha(), a.beta());
            (commutator_bracket(&perturbed)?, predicted)
        }
        Pushforward::Tensor { right } => {
            require_left_assoc_bhnp(right, "right tensor factor")?;
            let product = tensor_product(a, right)?;
            let right_bracket = commutator_bracket(right)?;
            let predicted = tensor_leibniz(
                own_bracket.star(),
                a.mu(),
                right_bracket.star(),
                right.mu(),
            );
            (commutator_bracket(&product)?, predicted)
        }
    };
    let actual = constructed.star();
    let mut witnesses = Vec::new();
    for i in 0..actual.dim() {
        for j in 0..actual.dim() {
            let residual = &actual.basis_product(i, j) - &predicted.basis_product(i, j);
            if !residual.is_zero() {
                witnesses.push(Witness { indices: vec![i, j], residual });
            }
        }
    }
    Ok(CheckReport::new(case.name(), witnesses, DEFAULT_WITNESS_CAP))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_nilpotent, gen_truncated_poly, gen_zero};
    use crate::identities::{
        check_bihom_associative, check_bihom_commutative, check_bihom_novikov, check_bhnp_compat,
    };
    use crate::linalg::fixed_subspace;
    use crate::rational::Rat;

    fn p2_bundle() -> TwoProductAlgebra {
        let data = gen_truncated_poly(2, &Rat::from_int(-1), &Rat::from_int(-1)).unwrap();
        derivation_bhnp(&data).unwrap()
    }

    fn p3_bundle() -> TwoProductAlgebra {
        let data = gen_truncated_poly(3, &Rat::from_int(-1), &Rat::from_int(-1)).unwrap();
        derivation_bhnp(&data).unwrap()
    }

    fn n2_bundle() -> TwoProductAlgebra {
        let data = gen_nilpotent(2, &Rat::from_int(-1), &Rat::from_int(-1)).unwrap();
        derivation_bhnp(&data).unwrap()
    }

    fn unit(dim: usize) -> Vector {
        Vector::basis(dim, 0)
    }

    #[test]
    fn derivation_construction_on_p2_and_p3_passes_bhnp() {
        assert!(check_bhnp_full(&p2_bundle()).passed());
        assert!(check_bhnp_full(&p3_bundle()).passed());
        // Mixed scales as in the alternating-sign example.
        let data = gen_truncated_poly(3, &Rat::from_int(-1), &Rat::from_int(1)).unwrap();
        assert!(check_bhnp_full(&derivation_bhnp(&data).unwrap()).passed());
    }

    #[test]
    fn derivation_construction_rejects_bad_inputs() {
        let good = gen_truncated_poly(2, &Rat::from_int(-1), &Rat::from_int(-1)).unwrap();
        // Identity is not a derivation of a unital algebra.
        let mut bad = good.clone();
        bad.derivation = LinearMap::identity(2);
        assert!(matches!(derivation_bhnp(&bad), Err(Error::NotDerivation(_))));
        // A noncommutative table is rejected.
        let mut bad = good.clone();
        bad.mu = BilinearOp::from_triples(2, &[(0, 1, 0, Rat::one())]).unwrap();
        assert!(matches!(derivation_bhnp(&bad), Err(Error::NotCommutativeAssociative(_))));
        // A derivation not commuting with the maps is rejected.
        let mut bad = good;
        bad.derivation = LinearMap::from_rows(vec![
            vec![Rat::zero(), Rat::zero()],
            vec![Rat::one(), Rat::zero()],
        ])
        .unwrap();
        assert!(derivation_bhnp(&bad).is_err());
    }

    #[test]
    fn zero_derivation_gives_zero_star() {
        let mut data = gen_truncated_poly(3, &Rat::from_int(-1), &Rat::from_int(1)).unwrap();
        data.derivation = LinearMap::zero(3);
        let bundle = derivation_bhnp(&data).unwrap();
        assert!(bundle.star().is_zero());
        assert!(check_bhnp_full(&bundle).passed());
    }

    #[test]
    fn identity_twist_changes_nothing() {
        let a = p2_bundle();
        let twisted = yau_twist(&a, &LinearMap::identity(2), &LinearMap::identity(2)).unwrap();
        assert_eq!(twisted.mu(), a.mu());
        assert_eq!(twisted.star(), a.star());
        assert_eq!(twisted.alpha(), a.alpha());
    }

    #[test]
    fn twist_of_classical_np_passes_bhnp() {
        // Classical Q[x]/(x^3) Novikov-Poisson twisted by (diag(1,-1,1), id).
        let data = gen_truncated_poly(3, &Rat::from_int(1), &Rat::from_int(1)).unwrap();
        let classical = derivation_bhnp(&data).unwrap();
        let ta = LinearMap::diagonal(&[Rat::one(), Rat::from_int(-1), Rat::one()]);
        let twisted = yau_twist(&classical, &ta, &LinearMap::identity(3)).unwrap();
        assert!(check_bhnp_full(&twisted).passed());
    }

    #[test]
    fn twist_rejects_non_morphism() {
        let a = p2_bundle();
        let shear = LinearMap::from_rows(vec![
            vec![Rat::one(), Rat::one()],
            vec![Rat::zero(), Rat::one()],
        ])
        .unwrap();
        assert!(matches!(
            yau_twist(&a, &shear, &LinearMap::identity(2)),
            Err(Error::NotMorphism(_))
        ));
    }

    #[test]
    fn twist_power_matches_single_twist_and_map_powers() {
        let a = p2_bundle();
        let once = yau_twist(&a, a.alpha(), a.beta()).unwrap();
        let power = yau_twist_power(&a, 1);
        assert_eq!(power, once);
        assert!(check_bhnp_full(&power).passed());
        assert_eq!(yau_twist_power(&a, 0), a);
        // Maps of the n-th power twist are the (n+1)-th map powers.
        let n3 = yau_twist_power(&p3_bundle(), 2);
        assert_eq!(n3.alpha(), &p3_bundle().alpha().pow(3).unwrap());
        assert_eq!(n3.beta(), &p3_bundle().beta().pow(3).unwrap());
    }

    #[test]
    fn tensor_with_zero_factor_is_zero() {
        let a = p2_bundle();
        let z = gen_zero(1);
        let t = tensor_product(&a, &z).unwrap();
        assert!(t.mu().is_zero());
        assert!(t.star().is_zero());
    }

    #[test]
    fn tensor_of_derivation_bundles_passes_bhnp() {
        let t = tensor_product(&p2_bundle(), &p2_bundle()).unwrap();
        assert_eq!(t.dim(), 4);
        assert!(check_bhnp_full(&t).passed());
    }

    #[test]
    fn perturb_mu_zero_element_gives_zero_product() {
        let a = p2_bundle().mu_bundle();
        let out = perturb_mu(&a, &Vector::zero(2)).unwrap();
        assert!(out.mu().is_zero());
    }

    #[test]
    fn perturb_mu_on_twisted_p2_by_unit() {
        // The twisted product of P2 under diag(1,-1) on both sides,
        // perturbed by the unit: expanding x⋄y = a(x)·(a(1)·y) entrywise
        // recovers the untwisted multiplication table, and the output maps
        // are identities.
        let a = p2_bundle().mu_bundle();
        let out = perturb_mu(&a, &unit(2)).unwrap();
        assert!(out.alpha().is_identity());
        assert!(out.beta().is_identity());
        let expected = gen_truncated_poly(2, &Rat::one(), &Rat::one()).unwrap().mu;
        assert_eq!(out.mu(), &expected);
        assert!(check_bihom_associative(&out).passed);
        assert!(check_bihom_commutative(&out).passed);
    }

    #[test]
    fn perturb_mu_rejects_unfixed_element() {
        let data = gen_truncated_poly(2, &Rat::from_int(2), &Rat::from_int(1)).unwrap();
        let a = derivation_bhnp(&data).unwrap().mu_bundle();
        // alpha² = diag(1, 4), so x is not fixed.
        assert!(matches!(
            perturb_mu(&a, &Vector::basis(2, 1)),
            Err(Error::NotFixed(_))
        ));
    }

    #[test]
    fn perturb_mu_equal_maps_degenerates_to_left_multiplication() {
        // With alpha = beta the perturbed product equals a(x·y) entrywise.
        let a = p3_bundle().mu_bundle();
        for elem in fixed_subspace(&[a.alpha().pow(2).unwrap(), a.beta().pow(2).unwrap()]).unwrap()
        {
            let out = perturb_mu(&a, &elem).unwrap();
            let expected = BilinearOp::from_fn(3, |i, j| {
                ev(a.mu(), &elem, &a.mu().basis_product(i, j))
            });
            assert_eq!(out.mu(), &expected);
        }
    }

    #[test]
    fn perturbations_preserve_bhnp_on_p2() {
        let a = p2_bundle();
        for elem in [unit(2), Vector::basis(2, 1)] {
            let thm1 = perturb_commutative(&a, &elem).unwrap();
            assert!(check_bhnp_full(&thm1).passed(), "commutative-side perturbation");
            let thm2 = perturb_novikov(&a, &elem).unwrap();
            assert!(check_bhnp_full(&thm2).passed(), "novikov-side perturbation");
        }
    }

    #[test]
    fn perturb_commutative_equal_maps_degeneration() {
        // With alpha = beta the output is the pair (a(x·y), star∘(a⊗a))
        // with squared maps.
        let a = p3_bundle();
        assert_eq!(a.alpha(), a.beta());
        let elem = unit(3);
        let out = perturb_commutative(&a, &elem).unwrap();
        let left_mult = BilinearOp::from_fn(3, |i, j| {
            ev(a.mu(), &elem, &a.mu().basis_product(i, j))
        });
        assert_eq!(out.mu(), &left_mult);
        assert_eq!(out.star(), &a.star().precompose(a.alpha(), a.alpha()));
        assert_eq!(out.alpha(), &a.alpha().pow(2).unwrap());
    }

    #[test]
    fn perturb_with_zero_element_still_passes() {
        let a = p2_bundle();
        let z = Vector::zero(2);
        assert!(check_bhnp_full(&perturb_commutative(&a, &z).unwrap()).passed());
        let thm2 = perturb_novikov(&a, &z).unwrap();
        assert!(check_bhnp_full(&thm2).passed());
        // With a = 0 the cross product reduces to the twisted star.
        assert_eq!(thm2.star(), &a.star().precompose(a.alpha(), a.beta()));
    }

    #[test]
    fn novikov_part_of_perturb_novikov_stands_alone() {
        // Forgetting the commutative product, (×, alpha², beta²) is a
        // BiHom-Novikov bundle by itself.
        let a = p2_bundle();
        let thm2 = perturb_novikov(&a, &unit(2)).unwrap();
        assert!(check_bihom_novikov(&thm2.star_bundle()).passed());
    }

    #[test]
    fn double_perturbation_is_the_composition() {
        let a = p2_bundle();
        let e = unit(2);
        let direct = perturb_both(&a, &e, &e).unwrap();
        let composed = perturb_commutative(&perturb_novikov(&a, &e).unwrap(), &e).unwrap();
        assert_eq!(direct, composed);
        assert!(check_bhnp_full(&direct).passed());
    }

    #[test]
    fn double_perturbation_with_zero_elements() {
        let a = p2_bundle();
        let z = Vector::zero(2);
        let out = perturb_both(&a, &z, &z).unwrap();
        assert!(out.mu().is_zero());
        let al3 = a.alpha().pow(3).unwrap();
        let be3 = a.beta().pow(3).unwrap();
        assert_eq!(out.star(), &a.star().precompose(&al3, &be3));
    }

    #[test]
    fn derivation_perturbed_matches_composed_route() {
        let data = gen_truncated_poly(2, &Rat::from_int(-1), &Rat::from_int(-1)).unwrap();
        let e = unit(2);
        let direct = derivation_perturbed(&data, &e, &e).unwrap();
        let composed = perturb_both(&derivation_bhnp(&data).unwrap(), &e, &e).unwrap();
        assert_eq!(direct, composed);
        assert!(check_bhnp_full(&direct).passed());
    }

    #[test]
    fn derivation_perturbed_classical_specialization() {
        // With identity maps and a = b = 1 the formulas collapse to
        // x⊡y = x·D(y) + x·y and x◊y = x·y.
        let data = gen_truncated_poly(2, &Rat::one(), &Rat::one()).unwrap();
        let e = unit(2);
        let out = derivation_perturbed(&data, &e, &e).unwrap();
        assert_eq!(out.mu(), &data.mu);
        let expected_star = BilinearOp::from_fn(2, |i, j| {
            let xy = data.mu.basis_product(i, j);
            let xdy = ev(&data.mu, &Vector::basis(2, i), &data.derivation.column(j));
            &xdy + &xy
        });
        assert_eq!(out.star(), &expected_star);
    }

    #[test]
    fn derivation_perturbed_zero_elements_keep_derivation_star() {
        let data = gen_truncated_poly(2, &Rat::one(), &Rat::one()).unwrap();
        let z = Vector::zero(2);
        let out = derivation_perturbed(&data, &z, &z).unwrap();
        assert!(out.mu().is_zero());
        let expected_star = BilinearOp::from_fn(2, |i, j| {
            ev(&data.mu, &Vector::basis(2, i), &data.derivation.column(j))
        });
        assert_eq!(out.star(), &expected_star);
    }

    #[test]
    fn bracket_on_p2_matches_hand_computation() {
        // With alpha = beta the bracket is plain antisymmetrization; here
        // 1*x = -x is the only nonzero star entry, so [1,x] = -x and
        // [x,1] = x.
        let a = p2_bundle();
        let with_bracket = commutator_bracket(&a).unwrap();
        let br = with_bracket.star();
        let minus_x = Vector::from_entries(vec![Rat::zero(), Rat::from_int(-1)]);
        assert_eq!(br.basis_product(0, 1), minus_x);
        assert_eq!(br.basis_product(1, 0), -&minus_x);
        assert!(br.basis_product(0, 0).is_zero());
        assert!(br.basis_product(1, 1).is_zero());
    }

    #[test]
    fn bracket_of_zero_star_is_zero() {
        let z = gen_zero(3);
        assert!(commutator_bracket(&z).unwrap().star().is_zero());
    }

    #[test]
    fn bracket_requires_invertible_maps() {
        let mut data = gen_truncated_poly(2, &Rat::one(), &Rat::one()).unwrap();
        data.alpha = LinearMap::diagonal(&[Rat::one(), Rat::zero()]);
        // diag(1, 0) is multiplicative for the truncated product, so the
        // bundle is valid but its alpha is singular.
        let bundle = derivation_bhnp(&data).unwrap();
        assert!(matches!(commutator_bracket(&bundle), Err(Error::Singular(_))));
    }

    #[test]
    fn admissibility_agrees_on_nilpotent_and_unital_instances() {
        // Nilpotent instance: all triple products vanish, so left
        // BiHom-associativity holds and the bracket is BiHom-Poisson.
        let n2 = n2_bundle();
        let report = admissibility_test(&n2).unwrap();
        assert!(report.verdict().unwrap());

        // Unital P3 with nontrivial scaling: the derivation criterion
        // fails, and so must the bracket suite, in agreement.
        let p3 = p3_bundle();
        let report = admissibility_test(&p3).unwrap();
        assert!(!report.verdict().unwrap());
        assert!(report.poisson.failing().contains(&"bihom_leibniz"));
    }

    #[test]
    fn admissibility_with_zero_star() {
        let z = gen_zero(2);
        let report = admissibility_test(&z).unwrap();
        assert!(report.verdict().unwrap());
    }

    #[test]
    fn admissibility_rejects_non_bhnp_input() {
        // A noncommutative mu is not BiHom-commutative, so the test
        // refuses to run.
        let mu = BilinearOp::from_triples(2, &[(0, 1, 0, Rat::one())]).unwrap();
        let bad = TwoProductAlgebra::new(
            mu,
            BilinearOp::zero(2),
            LinearMap::identity(2),
            LinearMap::identity(2),
        )
        .unwrap();
        assert!(matches!(admissibility_test(&bad), Err(Error::PrereqFailed(_))));
    }

    #[test]
    fn pushforward_checks_on_nilpotent_instance() {
        let n2 = n2_bundle();
        let e = Vector::zero(2);
        for elem in fixed_subspace(&[n2.alpha().pow(2).unwrap(), n2.beta().pow(2).unwrap()])
            .unwrap()
            .into_iter()
            .chain([e])
        {
            let c1 = bracket_pushforward_check(&n2, &Pushforward::PerturbCommutative { elem: &elem })
                .unwrap();
            assert!(c1.passed, "{c1:?}");
            let c2 =
                bracket_pushforward_check(&n2, &Pushforward::PerturbNovikov { elem: &elem }).unwrap();
            assert!(c2.passed, "{c2:?}");
        }
        let twist = bracket_pushforward_check(
            &n2,
            &Pushforward::YauTwist { ta: n2.alpha(), tb: n2.beta() },
        )
        .unwrap();
        assert!(twist.passed);
        let trivial = bracket_pushforward_check(
            &n2,
            &Pushforward::YauTwist { ta: &LinearMap::identity(2), tb: &LinearMap::identity(2) },
        )
        .unwrap();
        assert!(trivial.passed);
        let tensor = bracket_pushforward_check(&n2, &Pushforward::Tensor { right: &n2 }).unwrap();
        assert!(tensor.passed);
    }

    #[test]
    fn pushforward_rejects_non_left_assoc_input() {
        let p3 = p3_bundle();
        assert!(matches!(
            bracket_pushforward_check(
                &p3,
                &Pushforward::YauTwist { ta: &LinearMap::identity(3), tb: &LinearMap::identity(3) }
            ),
            Err(Error::PrereqFailed(_))
        ));
    }

    #[test]
    fn perturbations_preserve_left_bihom_assoc_on_nilpotent() {
        let n2 = n2_bundle();
        assert!(check_left_bihom_assoc(&n2).unwrap().passed());
        let e = unit(2);
        let thm1 = perturb_commutative(&n2, &e).unwrap();
        assert!(check_left_bihom_assoc(&thm1).unwrap().passed());
        let thm2 = perturb_novikov(&n2, &e).unwrap();
        assert!(check_left_bihom_assoc(&thm2).unwrap().passed());
        let twisted = yau_twist(&n2, n2.alpha(), n2.beta()).unwrap();
        assert!(check_left_bihom_assoc(&twisted).unwrap().passed());
        let tensor = tensor_product(&n2, &n2).unwrap();
        assert!(check_left_bihom_assoc(&tensor).unwrap().passed());
    }

    #[test]
    fn compat_suite_survives_perturbation_composition() {
        let a = p3_bundle();
        let basis = fixed_subspace(&[a.alpha().pow(2).unwrap(), a.beta().pow(2).unwrap()]).unwrap();
        assert_eq!(basis.len(), 3);
        for elem in &basis {
            let out = perturb_commutative(&a, elem).unwrap();
            assert!(check_bhnp_compat(&out).passed());
        }
    }
}
