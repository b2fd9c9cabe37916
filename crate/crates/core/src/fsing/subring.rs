//! Graded subrings `k[g_1, ..., g_r]` of a polynomial ring and membership by
//! linear algebra in one degree at a time.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::FsingError;
use crate::field::{FieldElement, FieldSpec};
use crate::linalg::{SparseSpan, SparseVec};
use crate::poly::{Exponents, FracPolynomial};

/// Subring generated by homogeneous level-0 polynomials.
#[derive(Clone, Debug)]
pub struct GradedSubring {
    field: FieldSpec,
    nvars: usize,
    names: Vec<String>,
    generators: Vec<FracPolynomial>,
    weights: Vec<u32>,
    cache: HashMap<Exponents, FracPolynomial>,
}

/// Outcome of a membership question in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    pub degree: u32,
    /// Products of generators spanning the relevant graded piece.
    pub candidates: usize,
    pub span_dim: usize,
    /// The target as a polynomial in the generators, if it is a member.
    pub certificate: Option<String>,
    /// The certificate re-expands to the target.
    pub verified: bool,
    #[serde(skip)]
    pub certificate_poly: Option<FracPolynomial>,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        self.certificate_poly.is_some() || self.certificate.is_some()
    }
}

fn homogeneous_degree(f: &FracPolynomial) -> Option<u32> {
    if f.level() != 0 || f.is_zero() || !f.is_homogeneous() {
        return None;
    }
    let d = *f.degrees().iter().next()?;
    d.is_integer().then(|| *d.numer() as u32)
}

impl GradedSubring {
    pub fn new(names: Vec<String>, generators: Vec<FracPolynomial>) -> Result<Self, FsingError> {
        let first = generators
            .first()
            .ok_or_else(|| FsingError::CheckFailed("subring needs generators".into()))?;
        let (field, nvars) = (first.field(), first.nvars());
        let mut weights = Vec::new();
        for (i, g) in generators.iter().enumerate() {
            first.check_same_ring(g)?;
            match homogeneous_degree(g) {
                Some(d) if d > 0 => weights.push(d),
                _ => {
                    return Err(FsingError::CheckFailed(format!(
                        "generator {} is not homogeneous of positive degree",
                        names.get(i).map_or("?", |s| s.as_str())
                    )))
                }
            }
        }
        if names.len() != generators.len() {
            return Err(FsingError::CheckFailed("one name per generator".into()));
        }
        Ok(GradedSubring {
            field,
            nvars,
            names,
            generators,
            weights,
            cache: HashMap::new(),
        })
    }

    pub fn generators(&self) -> &[FracPolynomial] {
        &self.generators
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// Exponent vectors over the generators of weighted degree `d`.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Exponents> {
        fn rec(w: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Exponents>) {
            if i == w.len() {
                if left == 0 {
                    out.push(Exponents::from_slice(cur));
                }
                return;
            }
            for k in 0..=left / w[i] {
                cur.push(k);
                rec(w, i + 1, left - k * w[i], cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(&self.weights, 0, d, &mut Vec::new(), &mut out);
        out
    }

    pub fn weight_of(&self, m: &Exponents) -> u32 {
        m.as_slice().iter().zip(&self.weights).map(|(a, w)| a * w).sum()
    }

    /// `Π g_i^{m_i}` in the ambient ring, cached.
    pub fn expand(&mut self, m: &Exponents) -> FracPolynomial {
        if let Some(f) = self.cache.get(m) {
            return f.clone();
        }
        let out = match m.as_slice().iter().position(|&a| a > 0) {
            None => FracPolynomial::one(self.field, self.nvars),
            Some(i) => {
                let mut rest = m.clone();
                rest.0[i] -= 1;
                let r = self.expand(&rest);
                r.mul(&self.generators[i])
            }
        };
        self.cache.insert(m.clone(), out.clone());
        out
    }

    /// Evaluates a polynomial in the generators.
    pub fn evaluate(&mut self, cert: &FracPolynomial) -> FracPolynomial {
        let mut out = FracPolynomial::zero(self.field, self.nvars);
        for (m, c) in cert.terms() {
            out = out.add(&self.expand(m).scale(c));
        }
        out
    }

    /// Decides `f ∈ C` (or `f ∈ I·C` when `ideal` lists monomials in the
    /// generators) by solving in the graded piece of degree `deg f`.
    pub fn membership(&mut self, f: &FracPolynomial, ideal: Option<&[Exponents]>) -> Result<Membership, FsingError> {
        let ngens = self.generators.len();
        if f.is_zero() {
            return Ok(Membership {
                degree: 0,
                candidates: 0,
                span_dim: 0,
                certificate: Some("0".into()),
                verified: true,
                certificate_poly: Some(FracPolynomial::zero(self.field, ngens)),
            });
        }
        self.generators[0].check_same_ring(f)?;
        let d = homogeneous_degree(f).ok_or_else(|| FsingError::CheckFailed(format!("{f} is not homogeneous")))?;
        let candidates: Vec<Exponents> = match ideal {
            None => self.monomials_of_degree(d),
            Some(gens) => {
                let mut set = BTreeSet::new();
                for g in gens {
                    let wg = self.weight_of(g);
                    if wg <= d {
                        for m in self.monomials_of_degree(d - wg) {
                            set.insert(m.add(g));
                        }
                    }
                }
                set.into_iter().collect()
            }
        };
        let mut index: BTreeMap<Exponents, usize> = BTreeMap::new();
        let mut to_vec = |p: &FracPolynomial| -> SparseVec {
            p.terms()
                .map(|(e, c)| {
                    let n = index.len();
                    (*index.entry(e.clone()).or_insert(n), c.clone())
                })
                .collect()
        };
        let target = to_vec(f);
        let mut span = SparseSpan::new(self.field);
        for m in &candidates {
            let v = to_vec(&self.expand(m));
            span.insert(&v);
        }
        let solution = span.solve(&target);
        let certificate_poly = solution.map(|combo| {
            let terms: Vec<(Exponents, FieldElement)> =
                combo.into_iter().map(|(i, c)| (candidates[i].clone(), c)).collect();
            FracPolynomial::from_terms(self.field, ngens, 0, terms)
        });
        let verified = match &certificate_poly {
            Some(c) => self.evaluate(c) == *f,
            None => false,
        };
        Ok(Membership {
            degree: d,
            candidates: candidates.len(),
            span_dim: span.dim(),
            certificate: certificate_poly
                .as_ref()
                .map(|c| c.display_with(&self.names).to_string()),
            verified,
            certificate_poly,
        })
    }

    /// Checks a claimed expression of `f` in the generators.
    pub fn check_certificate(&mut self, f: &FracPolynomial, cert: &FracPolynomial) -> bool {
        cert.nvars() == self.generators.len() && self.evaluate(cert) == *f
    }
}
