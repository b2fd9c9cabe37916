//! Generators of the invariant ring of the counterexample group over the
//! perfection of `F_3(t)` and their degree-15 relation.

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use super::input::KeyedFile;
use super::{fedder_test, orbit_product, verify_invariance, FedderReport, HypersurfacePresentation};
use crate::builtins;
use crate::error::FsingError;
use crate::groups::DEFAULT_CAP;
use crate::poly::FracPolynomial;

/// The bundled generator and relation data.
pub const PRESENTATION_DATA: &str = include_str!("../../data/presentation.txt");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorCheck {
    pub name: String,
    pub degree: u32,
    pub weight: u32,
    pub invariant: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationReport {
    pub field: String,
    pub generators: Vec<GeneratorCheck>,
    /// The named generator equals the product of the listed linear factors.
    pub product_matches_factors: bool,
    /// ... and the product over the orbit of `x3`.
    pub product_matches_orbit: bool,
    pub orbit_size: usize,
    /// The relation is homogeneous for the weights and expands to zero.
    pub relation_terms: usize,
    pub relation_vanishes: bool,
    #[serde(with = "crate::ratio")]
    pub relation_degree: Rational64,
    #[serde(with = "crate::ratio")]
    pub a_invariant: Rational64,
    pub fedder: FedderReport,
    pub passed: bool,
}

/// Checks the bundled data.
pub fn verify_presentation_remark() -> Result<PresentationReport, FsingError> {
    verify_presentation_text(PRESENTATION_DATA)
}

/// Checks data in the bundled file format: `field`, `ambient`, `vars`,
/// `weights`, one entry per generator, `factors` for the last generator and
/// the relation as `poly`.
pub fn verify_presentation_text(text: &str) -> Result<PresentationReport, FsingError> {
    let file = KeyedFile::parse(text)?;
    let field = file.field()?;
    let ambient = file.words("ambient")?;
    let names = file.words("vars")?;
    let weights = file.integers("weights")?.unwrap_or_else(|| vec![1; names.len()]);
    let gens: Vec<FracPolynomial> = names
        .iter()
        .map(|n| file.require(n)?.polynomial(field, &ambient))
        .collect::<Result<_, _>>()?;
    let group = builtins::counterexample_t().build(DEFAULT_CAP)?;
    if group.field() != field || group.dimension() != ambient.len() {
        return Err(FsingError::CheckFailed(format!(
            "data must live over {} in {} variables",
            group.field(),
            group.dimension()
        )));
    }

    let mut generators = Vec::new();
    for ((name, g), &weight) in names.iter().zip(&gens).zip(&weights) {
        let degree = match g.degrees().iter().collect::<Vec<_>>().as_slice() {
            [d] => d.to_integer() as u32,
            _ => 0,
        };
        generators.push(GeneratorCheck {
            name: name.clone(),
            degree,
            weight,
            invariant: verify_invariance(g, &group)?,
        });
    }

    let last = gens
        .last()
        .ok_or_else(|| FsingError::CheckFailed("no generators".into()))?;
    let factors = file.require("factors")?.split(';');
    let mut product = FracPolynomial::one(field, ambient.len());
    for f in factors.iter().filter(|f| !f.value.trim().is_empty()) {
        product = product.mul(&f.polynomial(field, &ambient)?);
    }
    let product_matches_factors = product == *last;
    let x3 = FracPolynomial::var(field, ambient.len(), ambient.len() - 1);
    let orbit = orbit_product(&x3, &group)?;
    let orbit_size = orbit.degrees().iter().next().map_or(0, |d| d.to_integer() as usize);
    let product_matches_orbit = orbit == *last;

    let relation = HypersurfacePresentation::parse(text)?;
    let relation_vanishes = relation.poly().compose(&gens)?.is_zero();
    let fedder = fedder_test(&relation);
    let passed = generators.iter().all(|g| g.invariant && g.degree == g.weight)
        && product_matches_factors
        && product_matches_orbit
        && relation_vanishes
        && !fedder.f_pure;
    Ok(PresentationReport {
        field: field.to_string(),
        generators,
        product_matches_factors,
        product_matches_orbit,
        orbit_size,
        relation_terms: relation.poly().len(),
        relation_vanishes,
        relation_degree: relation.degree(),
        a_invariant: relation.a_invariant(),
        fedder,
        passed,
    })
}
