//! Orbit decomposition of `(S^G)^{1/q}` for monomial actions.
//!
//! `S^{1/q}` is free over `S` on the fractional monomials `B_e` with
//! exponents `λ_i/q`, `0 <= λ_i < q`. A monomial group permutes the lines
//! `kμ`, and each orbit contributes one summand `(Sμ)^H` where `H` is the
//! stabilizer of the line and acts on `μ` through a character.

pub mod verify;

use std::collections::HashMap;

use num_rational::Rational64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::GroupError;
use crate::field::FieldElement;
use crate::groups::{detect_monomial, MatrixGroup, MonomialStructure};
use crate::poly::{Exponents, FracMonomial};

/// Largest basis `q^n` that [`decompose`] will enumerate.
pub const MAX_BASIS: u64 = 1 << 32;

/// The `S`-basis `B_e` of `S^{1/q}`, indexed in lex order (`x1` most significant).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FracBasis {
    pub n: usize,
    pub p: u32,
    pub e: u32,
    q: u64,
}

impl FracBasis {
    pub fn new(n: usize, p: u32, e: u32) -> Option<Self> {
        let q = (p as u64).checked_pow(e)?;
        q.checked_pow(n as u32)?;
        Some(FracBasis { n, p, e, q })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn len(&self) -> u64 {
        self.q.pow(self.n as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn exps(&self, mut index: u64) -> Vec<u32> {
        let mut out = vec![0; self.n];
        for slot in out.iter_mut().rev() {
            *slot = (index % self.q) as u32;
            index /= self.q;
        }
        out
    }

    pub fn index(&self, exps: &[u32]) -> u64 {
        exps.iter().fold(0, |acc, &a| acc * self.q + a as u64)
    }

    pub fn monomial(&self, index: u64) -> FracMonomial {
        FracMonomial::new(Exponents::from_slice(&self.exps(index)), self.e, self.p)
    }
}

/// All of `B_e` in lex order.
pub fn enumerate_basis(n: usize, p: u32, e: u32) -> Vec<FracMonomial> {
    let basis = FracBasis::new(n, p, e).expect("basis size overflows");
    (0..basis.len()).map(|i| basis.monomial(i)).collect()
}

/// Orbit of the line `kμ` under a monomial group.
#[derive(Clone, Debug)]
pub struct Orbit {
    /// Lex-least exponent vector in the orbit.
    pub representative: Vec<u32>,
    /// Orbit members; `members[0]` is the input monomial.
    pub members: Vec<Vec<u32>>,
    /// `coset_reps[i]` maps the input to a multiple of `members[i]`.
    pub coset_reps: Vec<usize>,
    pub stabilizer: Vec<usize>,
    /// `character[k]` is the scalar by which `stabilizer[k]` multiplies the input.
    pub character: Vec<FieldElement>,
}

impl Orbit {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Orbit, stabilizer and character of `x^{exps/p^level}`.
pub fn orbit_and_stabilizer(mono: &MonomialStructure, exps: &[u32], level: u32) -> Orbit {
    let mut members: Vec<Vec<u32>> = Vec::new();
    let mut coset_reps = Vec::new();
    let mut seen: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut stabilizer = Vec::new();
    let mut character = Vec::new();
    for (gi, g) in mono.elements.iter().enumerate() {
        let (c, img) = g.act(exps, level);
        if img.as_slice() == exps {
            stabilizer.push(gi);
            character.push(c);
        }
        if !seen.contains_key(&img) {
            seen.insert(img.clone(), members.len());
            members.push(img);
            coset_reps.push(gi);
        }
    }
    let representative = members.iter().min().cloned().unwrap_or_default();
    Orbit {
        representative,
        members,
        coset_reps,
        stabilizer,
        character,
    }
}

/// One orbit of `B_e`.
#[derive(Clone, Debug)]
pub struct OrbitSummand {
    /// Exponent numerators of the representative over `q`.
    pub exps: Vec<u32>,
    pub representative: FracMonomial,
    pub orbit_size: usize,
    pub stabilizer: Vec<usize>,
    pub character: Vec<FieldElement>,
    pub shift: Rational64,
    /// Index into [`DecompositionReport::classes`].
    pub class: usize,
}

/// A stabilizer with its character values.
type StabilizerKey = (Vec<usize>, Vec<FieldElement>);

/// Summands sharing a canonical `(H, χ)` label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandClass {
    pub label: String,
    pub name: String,
    /// Canonical stabilizer as group table indices.
    pub stabilizer: Vec<usize>,
    pub stabilizer_order: usize,
    /// Canonical character values, aligned with `stabilizer`.
    pub character: Vec<String>,
    pub multiplicity: u64,
    #[serde(with = "crate::ratio::vec")]
    pub shifts: Vec<Rational64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankCheck {
    pub orbit_size_sum: u64,
    pub expected: u64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub group: String,
    pub p: u32,
    pub e: u32,
    pub n: usize,
    pub order: usize,
    pub q: u64,
    pub classes: Vec<SummandClass>,
    pub rank_check: RankCheck,
}

impl DecompositionReport {
    pub fn class_named(&self, name: &str) -> Option<&SummandClass> {
        self.classes.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub report: DecompositionReport,
    pub summands: Vec<OrbitSummand>,
}

/// Lex-least conjugate of `(H, χ)`: over all `x ∈ G`, the sorted indices of
/// `xHx^{-1}` with `χ(h)` carried to `xhx^{-1}`.
pub fn canonical_label(
    group: &MatrixGroup,
    stabilizer: &[usize],
    character: &[FieldElement],
) -> (Vec<usize>, Vec<FieldElement>) {
    let mut best: Option<(Vec<usize>, Vec<FieldElement>)> = None;
    for x in 0..group.order() {
        let xi = group.inverse(x);
        let mut pairs: Vec<(usize, FieldElement)> = stabilizer
            .iter()
            .zip(character)
            .map(|(&h, c)| (group.product(group.product(x, h), xi), c.clone()))
            .collect();
        pairs.sort();
        let cand: (Vec<usize>, Vec<FieldElement>) = pairs.into_iter().unzip();
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    }
    best.expect("group is nonempty")
}

fn class_name(order: usize, stabilizer: &[usize], character: &[FieldElement]) -> String {
    let trivial = character.iter().all(FieldElement::is_one);
    match (stabilizer.len(), trivial) {
        (1, _) => "S".into(),
        (h, true) if h == order => "S^G".into(),
        (_, true) => "S^H".into(),
        (h, false) if h == order => "(S⊗χ)^G".into(),
        _ => "(S⊗χ)^H".into(),
    }
}

fn class_label(stabilizer: &[usize], character: &[FieldElement]) -> String {
    let h: Vec<String> = stabilizer.iter().map(usize::to_string).collect();
    let c: Vec<String> = character.iter().map(FieldElement::to_string).collect();
    format!("H{{{}}} chi({})", h.join(","), c.join(","))
}

#[derive(Clone, Copy, Debug)]
pub struct DecomposeOptions {
    /// Worker threads; 0 uses the rayon default.
    pub workers: usize,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions { workers: 1 }
    }
}

fn with_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    if workers == 0 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Decomposes `(S^G)^{1/p^e}` into orbit summands grouped by canonical class.
pub fn decompose(group: &MatrixGroup, name: &str, e: u32, opts: DecomposeOptions) -> Result<Decomposition, GroupError> {
    let mono = detect_monomial(group)?;
    decompose_monomial(group, &mono, name, e, opts)
}

/// As [`decompose`], reusing precomputed monomial data.
pub fn decompose_monomial(
    group: &MatrixGroup,
    mono: &MonomialStructure,
    name: &str,
    e: u32,
    opts: DecomposeOptions,
) -> Result<Decomposition, GroupError> {
    let n = group.dimension();
    let p = group.field().characteristic();
    let basis = FracBasis::new(n, p, e)
        .filter(|b| b.len() <= MAX_BASIS)
        .ok_or(GroupError::CapExceeded(MAX_BASIS as usize))?;
    let q = basis.q();
    let others: Vec<_> = mono.elements.iter().skip(1).collect();

    let (reps, orbits) = with_pool(opts.workers, || {
        let reps: Vec<u64> = (0..basis.len())
            .into_par_iter()
            .filter(|&i| {
                let exps = basis.exps(i);
                let mut img = vec![0; n];
                others.iter().all(|g| {
                    g.permute(&exps, &mut img);
                    img >= exps
                })
            })
            .collect();
        let orbits: Vec<Orbit> = reps
            .par_iter()
            .map(|&i| orbit_and_stabilizer(mono, &basis.exps(i), e))
            .collect();
        (reps, orbits)
    });

    let mut label_index: HashMap<StabilizerKey, usize> = HashMap::new();
    let mut canon_cache: HashMap<StabilizerKey, StabilizerKey> = HashMap::new();
    let mut classes: Vec<SummandClass> = Vec::new();
    let mut summands = Vec::with_capacity(reps.len());
    let mut orbit_size_sum = 0u64;
    for (&i, orbit) in reps.iter().zip(orbits) {
        let key = (orbit.stabilizer.clone(), orbit.character.clone());
        let canon = canon_cache
            .entry(key)
            .or_insert_with(|| canonical_label(group, &orbit.stabilizer, &orbit.character))
            .clone();
        let class = *label_index.entry(canon.clone()).or_insert_with(|| {
            classes.push(SummandClass {
                label: class_label(&canon.0, &canon.1),
                name: class_name(group.order(), &canon.0, &canon.1),
                stabilizer: canon.0.clone(),
                stabilizer_order: canon.0.len(),
                character: canon.1.iter().map(FieldElement::to_string).collect(),
                multiplicity: 0,
                shifts: Vec::new(),
            });
            classes.len() - 1
        });
        let exps = basis.exps(i);
        let shift = Rational64::new(exps.iter().map(|&a| a as i64).sum(), q as i64);
        classes[class].multiplicity += 1;
        classes[class].shifts.push(shift);
        orbit_size_sum += orbit.size() as u64;
        summands.push(OrbitSummand {
            representative: basis.monomial(i),
            exps,
            orbit_size: orbit.size(),
            stabilizer: orbit.stabilizer,
            character: orbit.character,
            shift,
            class,
        });
    }
    for c in &mut classes {
        c.shifts.sort();
    }
    let expected = basis.len();
    Ok(Decomposition {
        report: DecompositionReport {
            group: name.to_string(),
            p,
            e,
            n,
            order: group.order(),
            q,
            classes,
            rank_check: RankCheck {
                orbit_size_sum,
                expected,
                passed: orbit_size_sum == expected,
            },
        },
        summands,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignatureEntry {
    pub label: String,
    pub name: String,
    pub multiplicity: u64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignatureRow {
    pub e: u32,
    pub q: u64,
    pub basis_size: u64,
    pub classes: Vec<SignatureEntry>,
    /// Ratio for the free-orbit class, if it occurs.
    pub free_ratio: Option<f64>,
    pub inverse_order: f64,
}

/// Multiplicity over `q^n` for every class and each `e` in `es`.
pub fn empirical_signature(
    group: &MatrixGroup,
    es: &[u32],
    opts: DecomposeOptions,
) -> Result<Vec<SignatureRow>, GroupError> {
    let mono = detect_monomial(group)?;
    es.iter()
        .map(|&e| {
            let d = decompose_monomial(group, &mono, "", e, opts)?.report;
            let total = d.rank_check.expected;
            let classes: Vec<SignatureEntry> = d
                .classes
                .iter()
                .map(|c| SignatureEntry {
                    label: c.label.clone(),
                    name: c.name.clone(),
                    multiplicity: c.multiplicity,
                    ratio: c.multiplicity as f64 / total as f64,
                })
                .collect();
            let free_ratio = d
                .classes
                .iter()
                .zip(&classes)
                .find(|(c, _)| c.stabilizer_order == 1)
                .map(|(_, s)| s.ratio);
            Ok(SignatureRow {
                e,
                q: d.q,
                basis_size: total,
                classes,
                free_ratio,
                inverse_order: 1.0 / group.order() as f64,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    #[test]
    fn basis_indexing() {
        let b = FracBasis::new(3, 3, 1).unwrap();
        assert_eq!(b.len(), 27);
        assert_eq!(b.exps(5), vec![0, 1, 2]);
        assert_eq!(b.index(&[0, 1, 2]), 5);
        let small = enumerate_basis(1, 2, 1);
        assert_eq!(small.len(), 2);
        assert!(small[0].is_one());
        assert_eq!(small[1].to_string(), "x1^(1/2)");
        assert_eq!(enumerate_basis(4, 2, 1).len(), 16);
    }

    #[test]
    fn a3_first_level() {
        let g = builtins::a3().build(100).unwrap();
        let d = decompose(&g, "a3", 1, DecomposeOptions::default()).unwrap().report;
        assert!(d.rank_check.passed);
        let inv = d.class_named("S^G").unwrap();
        assert_eq!(inv.multiplicity, 3);
        assert_eq!(inv.shifts, vec![0.into(), 1.into(), 2.into()]);
        assert_eq!(d.class_named("S").unwrap().multiplicity, 8);
        assert_eq!(d.classes.len(), 2);
    }

    #[test]
    fn stabilizer_of_fixed_monomial() {
        let g = builtins::a3().build(100).unwrap();
        let mono = detect_monomial(&g).unwrap();
        let o = orbit_and_stabilizer(&mono, &[1, 1, 1], 1);
        assert_eq!(o.stabilizer.len(), 3);
        assert!(o.character.iter().all(FieldElement::is_one));
        let o = orbit_and_stabilizer(&mono, &[0, 0, 0], 1);
        assert_eq!((o.size(), o.stabilizer.len()), (1, 3));
    }

    #[test]
    fn z4_half_stabilizer() {
        let g = builtins::z4_f2().build(100).unwrap();
        let mono = detect_monomial(&g).unwrap();
        let o = orbit_and_stabilizer(&mono, &[1, 0, 1, 0], 1);
        assert_eq!(o.size(), 2);
        assert_eq!(o.stabilizer.len(), 2);
        assert_eq!(o.representative, vec![0, 1, 0, 1]);
    }

    #[test]
    fn trivial_group_gives_free_summands() {
        let f = crate::field::FieldSpec::prime(2).unwrap();
        let g = MatrixGroup::generate(f, 2, vec![crate::linalg::Matrix::identity(f, 2)], 10).unwrap();
        let d = decompose(&g, "trivial", 2, DecomposeOptions::default()).unwrap().report;
        assert_eq!(d.classes.len(), 1);
        assert_eq!(d.classes[0].multiplicity, 16);
        assert_eq!(d.classes[0].name, "S");
    }
}
