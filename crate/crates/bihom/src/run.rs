//! The command layer shared by the CLI binary and the C bindings: check a
//! file against a named suite, run a generator family, or apply a
//! construction, all in terms of [`AlgebraFile`] values.

use std::collections::BTreeMap;

use crate::algebra::{OneProductAlgebra, SuiteReport, TwoProductAlgebra};
use crate::construct;
use crate::error::Error;
use crate::format::{AlgebraFile, ParsedAlgebra, Provenance};
use crate::generators::{self, DerivationData};
use crate::identities::{
    bhnp_compat_capped, bhnp_full_capped, bihom_assoc_capped, bihom_comm_capped,
    bihom_leibniz_capped, bihom_lie_capped, bihom_novikov_capped, bihom_poisson_capped,
    classical_np_capped, left_bihom_assoc_capped, Suite,
};
use crate::linalg::{fixed_subspace, LinearMap, Vector};
use crate::rational::Rat;

fn require_star<'a>(
    parsed: &'a ParsedAlgebra,
    suite: &str,
) -> Result<&'a crate::algebra::BilinearOp, Error> {
    parsed.star.as_ref().ok_or_else(|| {
        Error::SuiteInapplicable(format!("suite {suite} needs a `star` product, file has none"))
    })
}

fn require_bracket<'a>(
    parsed: &'a ParsedAlgebra,
    suite: &str,
) -> Result<&'a crate::algebra::BilinearOp, Error> {
    parsed.bracket.as_ref().ok_or_else(|| {
        Error::SuiteInapplicable(format!("suite {suite} needs a `bracket` table, file has none"))
    })
}

/// Runs one named suite against a parsed file. Bundle validation failures
/// and inapplicable suites surface as errors; identity failures are part
/// of the returned report.
pub fn run_check(file: &AlgebraFile, suite: Suite, cap: usize) -> Result<SuiteReport, Error> {
    let parsed = file.decode()?;
    let name = suite.name();
    match suite {
        Suite::BihomAssoc => {
            let bundle =
                OneProductAlgebra::new(parsed.mu, parsed.alpha, parsed.beta)?;
            Ok(SuiteReport::new(name, vec![bihom_assoc_capped(&bundle, cap)]))
        }
        Suite::BihomComm => {
            let bundle =
                OneProductAlgebra::new(parsed.mu, parsed.alpha, parsed.beta)?;
            Ok(SuiteReport::new(name, vec![bihom_comm_capped(&bundle, cap)]))
        }
        Suite::BihomNovikov => {
            let star = require_star(&parsed, name)?.clone();
            let bundle = OneProductAlgebra::new(star, parsed.alpha, parsed.beta)?;
            Ok(bihom_novikov_capped(&bundle, cap))
        }
        Suite::BhnpCompat => {
            let star = require_star(&parsed, name)?.clone();
            let bundle = TwoProductAlgebra::new(parsed.mu, star, parsed.alpha, parsed.beta)?;
            Ok(bhnp_compat_capped(&bundle, cap))
        }
        Suite::Bhnp => {
            let star = require_star(&parsed, name)?.clone();
            let bundle = TwoProductAlgebra::new(parsed.mu, star, parsed.alpha, parsed.beta)?;
            Ok(bhnp_full_capped(&bundle, cap))
        }
        Suite::BihomLie => {
            let bracket = require_bracket(&parsed, name)?.clone();
            let bundle = OneProductAlgebra::new(bracket, parsed.alpha, parsed.beta)?;
            Ok(bihom_lie_capped(&bundle, cap))
        }
        Suite::BihomLeibniz => {
            let bracket = require_bracket(&parsed, name)?.clone();
            let bundle = TwoProductAlgebra::new(parsed.mu, bracket, parsed.alpha, parsed.beta)?;
            Ok(SuiteReport::new(name, vec![bihom_leibniz_capped(&bundle, cap)]))
        }
        Suite::BihomPoisson => {
            let bracket = require_bracket(&parsed, name)?.clone();
            let bundle = TwoProductAlgebra::new(parsed.mu, bracket, parsed.alpha, parsed.beta)?;
            Ok(bihom_poisson_capped(&bundle, cap))
        }
        Suite::LeftBihomAssoc => {
            let star = require_star(&parsed, name)?.clone();
            let bundle = TwoProductAlgebra::new(parsed.mu, star, parsed.alpha, parsed.beta)?;
            left_bihom_assoc_capped(&bundle, cap)
        }
        Suite::ClassicalNp => {
            let star = require_star(&parsed, name)?.clone();
            let bundle = TwoProductAlgebra::new(parsed.mu, star, parsed.alpha, parsed.beta)?;
            classical_np_capped(&bundle, cap)
        }
    }
}

/// Generator family names accepted by `gen`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenFamily {
    TruncatedPoly,
    Nilpotent,
    Zero,
}

impl GenFamily {
    pub fn parse(name: &str) -> Result<Self, Error> {
        match name {
            "truncated-poly" => Ok(GenFamily::TruncatedPoly),
            "nilpotent" => Ok(GenFamily::Nilpotent),
            "zero" => Ok(GenFamily::Zero),
            other => Err(Error::Parse(format!(
                "unknown generator family {other:?}; expected truncated-poly, nilpotent or zero"
            ))),
        }
    }
}

pub struct GenParams {
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub a_scale: Rat,
    pub b_scale: Rat,
}

fn poly_basis_names(n: usize, offset: usize) -> Vec<String> {
    (0..n)
        .map(|i| match i + offset {
            0 => "1".to_string(),
            1 => "x".to_string(),
            k => format!("x^{k}"),
        })
        .collect()
}

fn require_within_ceiling(dim: usize, what: &str) -> Result<(), Error> {
    if dim > crate::format::MAX_DIM {
        return Err(Error::Parse(format!(
            "{what} has dimension {dim}, above the supported ceiling of {}",
            crate::format::MAX_DIM
        )));
    }
    Ok(())
}

/// Emits a generator instance as a file.
pub fn run_gen(family: GenFamily, params: &GenParams) -> Result<AlgebraFile, Error> {
    let mut prov_params = BTreeMap::new();
    match family {
        GenFamily::TruncatedPoly => {
            let n = params
                .n
                .ok_or_else(|| Error::Parse("truncated-poly needs --n".into()))?;
            require_within_ceiling(n, "truncated-poly carrier")?;
            let data = generators::gen_truncated_poly(n, &params.a_scale, &params.b_scale)?;
            prov_params.insert("n".into(), n.to_string());
            prov_params.insert("a".into(), params.a_scale.to_string());
            prov_params.insert("b".into(), params.b_scale.to_string());
            Ok(AlgebraFile::from_derivation_data(
                &data,
                Some(poly_basis_names(n, 0)),
                Some(Provenance { construction: "gen truncated-poly".into(), params: prov_params }),
            ))
        }
        GenFamily::Nilpotent => {
            let m = params.m.ok_or_else(|| Error::Parse("nilpotent needs --m".into()))?;
            require_within_ceiling(m, "nilpotent carrier")?;
            let data = generators::gen_nilpotent(m, &params.a_scale, &params.b_scale)?;
            prov_params.insert("m".into(), m.to_string());
            prov_params.insert("a".into(), params.a_scale.to_string());
            prov_params.insert("b".into(), params.b_scale.to_string());
            Ok(AlgebraFile::from_derivation_data(
                &data,
                Some(poly_basis_names(m, 1)),
                Some(Provenance { construction: "gen nilpotent".into(), params: prov_params }),
            ))
        }
        GenFamily::Zero => {
            let n = params.n.ok_or_else(|| Error::Parse("zero needs --n".into()))?;
            require_within_ceiling(n, "zero-algebra carrier")?;
            let bundle = generators::gen_zero(n);
            prov_params.insert("n".into(), n.to_string());
            Ok(AlgebraFile::from_two_product(
                &bundle,
                Some(Provenance { construction: "gen zero".into(), params: prov_params }),
            ))
        }
    }
}

/// Construction kinds accepted by `construct`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstructKind {
    YauTwist,
    TwistPower,
    Tensor,
    PerturbMu,
    PerturbThm1,
    PerturbThm2,
    PerturbDouble,
    DerivationBhnp,
    DerivationPerturbed,
    Bracket,
}

impl ConstructKind {
    pub const ALL: [ConstructKind; 10] = [
        ConstructKind::YauTwist,
        ConstructKind::TwistPower,
        ConstructKind::Tensor,
        ConstructKind::PerturbMu,
        ConstructKind::PerturbThm1,
        ConstructKind::PerturbThm2,
        ConstructKind::PerturbDouble,
        ConstructKind::DerivationBhnp,
        ConstructKind::DerivationPerturbed,
        ConstructKind::Bracket,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConstructKind::YauTwist => "yau-twist",
            ConstructKind::TwistPower => "twist-power",
            ConstructKind::Tensor => "tensor",
            ConstructKind::PerturbMu => "perturb-mu",
            ConstructKind::PerturbThm1 => "perturb-thm1",
            ConstructKind::PerturbThm2 => "perturb-thm2",
            ConstructKind::PerturbDouble => "perturb-double",
            ConstructKind::DerivationBhnp => "derivation-bhnp",
            ConstructKind::DerivationPerturbed => "derivation-perturbed",
            ConstructKind::Bracket => "bracket",
        }
    }

    pub fn parse(name: &str) -> Result<Self, Error> {
        Self::ALL.iter().copied().find(|k| k.name() == name).ok_or_else(|| {
            let known: Vec<&str> = Self::ALL.iter().map(|k| k.name()).collect();
            Error::Parse(format!(
                "unknown construction {name:?}; expected one of {}",
                known.join(", ")
            ))
        })
    }

    pub fn input_count(self) -> usize {
        match self {
            ConstructKind::Tensor => 2,
            _ => 1,
        }
    }
}

/// An element parameter: explicit coordinates or `auto`, which picks the
/// first basis vector of the relevant fixed subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementSpec {
    Auto,
    Explicit(Vec<Rat>),
}

impl ElementSpec {
    /// Parses `auto` or a comma-separated list of canonical rationals.
    pub fn parse(s: &str) -> Result<Self, Error> {
        if s == "auto" {
            return Ok(ElementSpec::Auto);
        }
        let coords = s
            .split(',')
            .map(|part| Rat::parse_canonical(part.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ElementSpec::Explicit(coords))
    }

    /// Resolves to a concrete vector; `auto` takes the first basis vector
    /// of the joint fixed subspace of `alpha^k` and `beta^k`.
    fn resolve(
        &self,
        alpha: &LinearMap,
        beta: &LinearMap,
        k: i64,
        dim: usize,
    ) -> Result<Vector, Error> {
        match self {
            ElementSpec::Explicit(coords) => {
                if coords.len() != dim {
                    return Err(Error::Parse(format!(
                        "element has {} coordinates, carrier dimension is {dim}",
                        coords.len()
                    )));
                }
                Ok(Vector::from_entries(coords.clone()))
            }
            ElementSpec::Auto => {
                let basis = fixed_subspace(&[alpha.pow(k)?, beta.pow(k)?])?;
                basis.into_iter().next().ok_or_else(|| {
                    Error::NotFixed(format!(
                        "--element auto: the fixed subspace of the {k}-th map powers is empty"
                    ))
                })
            }
        }
    }

    fn describe(&self, resolved: &Vector) -> String {
        match self {
            ElementSpec::Auto => format!("auto ({resolved:?})"),
            ElementSpec::Explicit(_) => format!("{resolved:?}"),
        }
    }
}

#[derive(Default)]
pub struct ConstructParams {
    pub element: Option<ElementSpec>,
    pub element_b: Option<ElementSpec>,
    pub power: Option<u32>,
    pub twist_alpha: Option<LinearMap>,
    pub twist_beta: Option<LinearMap>,
}

fn need_star_bundle(parsed: &ParsedAlgebra, kind: &str) -> Result<TwoProductAlgebra, Error> {
    let star = parsed
        .star
        .as_ref()
        .ok_or_else(|| {
            Error::Parse(format!("construction {kind} needs a `star` product in the input file"))
        })?
        .clone();
    TwoProductAlgebra::new(parsed.mu.clone(), star, parsed.alpha.clone(), parsed.beta.clone())
}

fn need_derivation_data(parsed: &ParsedAlgebra, kind: &str) -> Result<DerivationData, Error> {
    let derivation = parsed
        .derivation
        .as_ref()
        .ok_or_else(|| {
            Error::Parse(format!("construction {kind} needs a `derivation` matrix in the input file"))
        })?
        .clone();
    Ok(DerivationData {
        mu: parsed.mu.clone(),
        alpha: parsed.alpha.clone(),
        beta: parsed.beta.clone(),
        derivation,
    })
}

fn need_element<'a>(params: &'a ConstructParams, kind: &str) -> Result<&'a ElementSpec, Error> {
    params
        .element
        .as_ref()
        .ok_or_else(|| Error::Parse(format!("construction {kind} needs --element")))
}

/// What a construction promises about its output, used by `--verify`.
enum Output {
    /// Promises the full BiHom-Novikov-Poisson suite.
    Bhnp(TwoProductAlgebra),
    /// Promises BiHom-associativity (and BiHom-commutativity when the
    /// input is BiHom-commutative; only the former is re-checked).
    BihomAssociative(OneProductAlgebra),
    /// Bracket bundles promise only structural validity, which holds by
    /// construction.
    BracketBundle(TwoProductAlgebra),
}

/// Applies a construction to input files and returns the output file with
/// provenance. With `verify` set, the construction's promised identity
/// suite is re-run on the output and a failure is reported as
/// `InvariantViolation`.
pub fn run_construct(
    kind: ConstructKind,
    inputs: &[AlgebraFile],
    params: &ConstructParams,
    verify: bool,
) -> Result<AlgebraFile, Error> {
    if inputs.len() != kind.input_count() {
        return Err(Error::Parse(format!(
            "construction {} takes {} input file(s), got {}",
            kind.name(),
            kind.input_count(),
            inputs.len()
        )));
    }
    let parsed: Vec<ParsedAlgebra> =
        inputs.iter().map(|f| f.decode()).collect::<Result<_, _>>()?;
    let first = &parsed[0];
    let mut prov = BTreeMap::new();

    let output = match kind {
        ConstructKind::YauTwist => {
            let ta = params
                .twist_alpha
                .as_ref()
                .ok_or_else(|| Error::Parse("yau-twist needs --ta".into()))?;
            let tb = params
                .twist_beta
                .as_ref()
                .ok_or_else(|| Error::Parse("yau-twist needs --tb".into()))?;
            prov.insert("ta".into(), format!("{ta:?}"));
            prov.insert("tb".into(), format!("{tb:?}"));
            match &first.star {
                Some(_) => Output::Bhnp(construct::yau_twist(
                    &need_star_bundle(first, kind.name())?,
                    ta,
                    tb,
                )?),
                None => {
                    let bundle = OneProductAlgebra::new(
                        first.mu.clone(),
                        first.alpha.clone(),
                        first.beta.clone(),
                    )?;
                    Output::BihomAssociative(construct::yau_twist_one(&bundle, ta, tb)?)
                }
            }
        }
        ConstructKind::TwistPower => {
            let n = params.power.ok_or_else(|| Error::Parse("twist-power needs --n".into()))?;
            prov.insert("n".into(), n.to_string());
            match &first.star {
                Some(_) => Output::Bhnp(construct::yau_twist_power(
                    &need_star_bundle(first, kind.name())?,
                    n,
                )),
                None => {
                    let bundle = OneProductAlgebra::new(
                        first.mu.clone(),
                        first.alpha.clone(),
                        first.beta.clone(),
                    )?;
                    let ta = bundle.alpha().pow(n as i64)?;
                    let tb = bundle.beta().pow(n as i64)?;
                    Output::BihomAssociative(construct::yau_twist_one(&bundle, &ta, &tb)?)
                }
            }
        }
        ConstructKind::Tensor => {
            let left = need_star_bundle(first, kind.name())?;
            let right = need_star_bundle(&parsed[1], kind.name())?;
            require_within_ceiling(left.dim() * right.dim(), "tensor product")?;
            Output::Bhnp(construct::tensor_product(&left, &right)?)
        }
        ConstructKind::PerturbMu => {
            let bundle = OneProductAlgebra::new(
                first.mu.clone(),
                first.alpha.clone(),
                first.beta.clone(),
            )?;
            let spec = need_element(params, kind.name())?;
            let elem = spec.resolve(bundle.alpha(), bundle.beta(), 2, bundle.dim())?;
            prov.insert("element".into(), spec.describe(&elem));
            Output::BihomAssociative(construct::perturb_mu(&bundle, &elem)?)
        }
        ConstructKind::PerturbThm1 => {
            let bundle = need_star_bundle(first, kind.name())?;
            let spec = need_element(params, kind.name())?;
            let elem = spec.resolve(bundle.alpha(), bundle.beta(), 2, bundle.dim())?;
            prov.insert("element".into(), spec.describe(&elem));
            Output::Bhnp(construct::perturb_commutative(&bundle, &elem)?)
        }
        ConstructKind::PerturbThm2 => {
            let bundle = need_star_bundle(first, kind.name())?;
            let spec = need_element(params, kind.name())?;
            let elem = spec.resolve(bundle.alpha(), bundle.beta(), 2, bundle.dim())?;
            prov.insert("element".into(), spec.describe(&elem));
            Output::Bhnp(construct::perturb_novikov(&bundle, &elem)?)
        }
        ConstructKind::PerturbDouble => {
            let bundle = need_star_bundle(first, kind.name())?;
            let spec_a = need_element(params, kind.name())?;
            let spec_b = params
                .element_b
                .as_ref()
                .ok_or_else(|| Error::Parse("perturb-double needs --element-b".into()))?;
            let elem_a = spec_a.resolve(bundle.alpha(), bundle.beta(), 2, bundle.dim())?;
            let elem_b = spec_b.resolve(bundle.alpha(), bundle.beta(), 4, bundle.dim())?;
            prov.insert("element".into(), spec_a.describe(&elem_a));
            prov.insert("element_b".into(), spec_b.describe(&elem_b));
            Output::Bhnp(construct::perturb_both(&bundle, &elem_a, &elem_b)?)
        }
        ConstructKind::DerivationBhnp => {
            let data = need_derivation_data(first, kind.name())?;
            Output::Bhnp(construct::derivation_bhnp(&data)?)
        }
        ConstructKind::DerivationPerturbed => {
            let data = need_derivation_data(first, kind.name())?;
            let spec_a = need_element(params, kind.name())?;
            let spec_b = params
                .element_b
                .as_ref()
                .ok_or_else(|| Error::Parse("derivation-perturbed needs --element-b".into()))?;
            let elem_a = spec_a.resolve(&data.alpha, &data.beta, 2, data.mu.dim())?;
            let elem_b = spec_b.resolve(&data.alpha, &data.beta, 4, data.mu.dim())?;
            prov.insert("element".into(), spec_a.describe(&elem_a));
            prov.insert("element_b".into(), spec_b.describe(&elem_b));
            Output::Bhnp(construct::derivation_perturbed(&data, &elem_a, &elem_b)?)
        }
        ConstructKind::Bracket => {
            let bundle = need_star_bundle(first, kind.name())?;
            Output::BracketBundle(construct::commutator_bracket(&bundle)?)
        }
    };

    if verify {
        let report = match &output {
            Output::Bhnp(bundle) => Some(crate::identities::check_bhnp_full(bundle)),
            Output::BihomAssociative(bundle) => Some(SuiteReport::new(
                "bihom-assoc",
                vec![crate::identities::check_bihom_associative(bundle)],
            )),
            // Structural validity was already enforced when the bundle was
            // built.
            Output::BracketBundle(_) => None,
        };
        if let Some(report) = report {
            if !report.passed() {
                return Err(Error::InvariantViolation(format!(
                    "construction {} promised suite {} but it fails: {}",
                    kind.name(),
                    report.suite,
                    report.failing().join(", ")
                )));
            }
        }
    }

    let provenance = Some(Provenance { construction: kind.name().to_string(), params: prov });
    Ok(match output {
        Output::Bhnp(bundle) => AlgebraFile::from_two_product(&bundle, provenance),
        Output::BihomAssociative(bundle) => AlgebraFile::from_one_product(&bundle, provenance),
        Output::BracketBundle(bundle) => AlgebraFile::from_bracket_bundle(&bundle, provenance),
    })
}
