//! Linear-algebra checks of a decomposition: the map `Σ g_i`, graded
//! dimension counts, and the splitting of `S^G` off `(S^G)^{1/q}`.

use std::collections::{BTreeMap, HashMap};

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::GroupError;
use crate::field::{FieldElement, FieldSpec};
use crate::frobdecomp::{orbit_and_stabilizer, OrbitSummand};
use crate::groups::{MatrixGroup, MonomialElement, MonomialStructure};
use crate::linalg::{Matrix, SparseSpan, SparseVec};
use crate::poly::{compositions, Exponents, FracPolynomial};

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Invariant subspace of `span(basis)` under `elements`, where `basis` is a
/// list of fractional exponent vectors at `level`, closed under the action.
///
/// The operators `g - 1` are block diagonal along orbits of basis monomials,
/// so the kernel is computed block by block.
pub fn invariant_space(
    field: FieldSpec,
    elements: &[&MonomialElement],
    basis: &[Vec<u32>],
    level: u32,
) -> Vec<SparseVec> {
    let index: HashMap<&[u32], usize> = basis.iter().enumerate().map(|(i, b)| (b.as_slice(), i)).collect();
    let mut images: Vec<Vec<(FieldElement, usize)>> = Vec::with_capacity(basis.len());
    let mut parent: Vec<usize> = (0..basis.len()).collect();
    for (i, b) in basis.iter().enumerate() {
        let mut row = Vec::with_capacity(elements.len());
        for g in elements {
            let (c, img) = g.act(b, level);
            let j = *index.get(img.as_slice()).expect("basis is closed under the group");
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
            row.push((c, j));
        }
        images.push(row);
    }
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..basis.len() {
        let r = find(&mut parent, i);
        blocks.entry(r).or_default().push(i);
    }
    let mut out = Vec::new();
    for members in blocks.values() {
        let local: HashMap<usize, usize> = members.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let b = members.len();
        let rows = elements.len().max(1) * b;
        let mut m = Matrix::zeros(field, rows, b);
        for (col, &i) in members.iter().enumerate() {
            for (gk, (c, j)) in images[i].iter().enumerate() {
                let r0 = gk * b;
                let row = r0 + local[j];
                m.set(row, col, m.get(row, col) + c);
                let diag = r0 + col;
                m.set(diag, col, m.get(diag, col) - &FieldElement::one(field));
            }
        }
        for v in m.kernel() {
            let sv: SparseVec = v
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(k, x)| (members[k], x))
                .collect();
            out.push(sv);
        }
    }
    out
}

fn generator_elements<'a>(group: &MatrixGroup, mono: &'a MonomialStructure) -> Vec<&'a MonomialElement> {
    group
        .generators()
        .iter()
        .map(|g| &mono.elements[group.index_of(g).expect("generators are in the table")])
        .collect()
}

fn shifted_basis(n: usize, k: u32, q: u32, residue: &[u32]) -> Vec<Vec<u32>> {
    compositions(n, k)
        .into_iter()
        .map(|m| m.as_slice().iter().zip(residue).map(|(&a, &r)| a * q + r).collect())
        .collect()
}

/// One degree of [`verify_perm_map`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermMapRow {
    #[serde(with = "crate::ratio")]
    pub degree: Rational64,
    /// `dim [(Sμ)^H]_d`.
    pub source_dim: usize,
    /// `dim [(Sγ_μ)^G]_d`.
    pub target_dim: usize,
    pub image_rank: usize,
    pub image_invariant: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermMapReport {
    pub representative: String,
    pub orbit_size: usize,
    pub stabilizer_order: usize,
    pub rows: Vec<PermMapRow>,
    pub passed: bool,
}

/// Checks that `Σ_i g_i : (Sμ)^H → (Sγ_μ)^G` is a bijection in every degree up to `max_degree`.
pub fn verify_perm_map(
    group: &MatrixGroup,
    mono: &MonomialStructure,
    exps: &[u32],
    level: u32,
    max_degree: u32,
) -> PermMapReport {
    let field = group.field();
    let n = group.dimension();
    let p = field.characteristic();
    let q = p.pow(level);
    let orbit = orbit_and_stabilizer(mono, exps, level);
    let h_elems: Vec<&MonomialElement> = orbit.stabilizer.iter().map(|&h| &mono.elements[h]).collect();
    let gens = generator_elements(group, mono);
    let deg_mu: u32 = exps.iter().sum();
    let mut rows = Vec::new();
    let mut k = 0u32;
    while deg_mu + k * q <= max_degree * q {
        let source_basis = shifted_basis(n, k, q, exps);
        let mut target_basis = Vec::new();
        for member in &orbit.members {
            target_basis.extend(shifted_basis(n, k, q, member));
        }
        let target_index: HashMap<&[u32], usize> = target_basis
            .iter()
            .enumerate()
            .map(|(i, b)| (b.as_slice(), i))
            .collect();
        let source = invariant_space(field, &h_elems, &source_basis, level);
        let target = invariant_space(field, &gens, &target_basis, level);

        let mut span = SparseSpan::new(field);
        let mut image_rank = 0;
        let mut image_invariant = true;
        for v in &source {
            let mut img: SparseVec = BTreeMap::new();
            for &gi in &orbit.coset_reps {
                for (&j, a) in v {
                    let (c, e) = mono.elements[gi].act(&source_basis[j], level);
                    let t = target_index[e.as_slice()];
                    let add = a * &c;
                    let slot = img.entry(t).or_insert_with(|| FieldElement::zero(field));
                    *slot = &*slot + &add;
                }
            }
            img.retain(|_, x| !x.is_zero());
            for g in &gens {
                let mut moved: SparseVec = BTreeMap::new();
                for (&t, a) in &img {
                    let (c, e) = g.act(&target_basis[t], level);
                    let slot = moved
                        .entry(target_index[e.as_slice()])
                        .or_insert_with(|| FieldElement::zero(field));
                    *slot = &*slot + &(a * &c);
                }
                moved.retain(|_, x| !x.is_zero());
                if moved != img {
                    image_invariant = false;
                }
            }
            if span.insert(&img) {
                image_rank += 1;
            }
        }
        let passed = image_invariant && image_rank == source.len() && target.len() == source.len();
        rows.push(PermMapRow {
            degree: Rational64::new((deg_mu + k * q) as i64, q as i64),
            source_dim: source.len(),
            target_dim: target.len(),
            image_rank,
            image_invariant,
            passed,
        });
        k += 1;
    }
    let representative = crate::poly::FracMonomial::new(Exponents::from_slice(exps), level, p).to_string();
    PermMapReport {
        representative,
        orbit_size: orbit.size(),
        stabilizer_order: orbit.stabilizer.len(),
        passed: rows.iter().all(|r| r.passed),
        rows,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertRow {
    #[serde(with = "crate::ratio")]
    pub degree: Rational64,
    /// `Σ_μ dim [(Sμ)^H]_d` over all summands.
    pub from_summands: usize,
    /// `dim [(S^{1/q})^G]_d` computed directly.
    pub direct: usize,
    pub passed: bool,
}

/// Compares the graded dimensions predicted by the summands with a direct
/// invariant computation in every degree `d <= max_degree`, `d ∈ (1/q)Z`.
pub fn hilbert_check(
    group: &MatrixGroup,
    mono: &MonomialStructure,
    summands: &[OrbitSummand],
    level: u32,
    max_degree: u32,
) -> Vec<HilbertRow> {
    let field = group.field();
    let n = group.dimension();
    let q = field.characteristic().pow(level);
    let gens = generator_elements(group, mono);
    let mut keys: HashMap<(Vec<usize>, Vec<FieldElement>), usize> = HashMap::new();
    let summand_key: Vec<usize> = summands
        .iter()
        .map(|s| {
            let next = keys.len();
            *keys.entry((s.stabilizer.clone(), s.character.clone())).or_insert(next)
        })
        .collect();
    let mut dims: HashMap<(usize, u32), usize> = HashMap::new();
    let mut rows = Vec::new();
    for t in 0..=max_degree * q {
        let direct_basis: Vec<Vec<u32>> = compositions(n, t).into_iter().map(|e| e.as_slice().to_vec()).collect();
        let direct = invariant_space(field, &gens, &direct_basis, level).len();
        let mut from_summands = 0;
        for (s, &key) in summands.iter().zip(&summand_key) {
            let deg: u32 = s.exps.iter().sum();
            if deg > t || !(t - deg).is_multiple_of(q) {
                continue;
            }
            let k = (t - deg) / q;
            from_summands += *dims.entry((key, k)).or_insert_with(|| {
                let h: Vec<&MonomialElement> = s.stabilizer.iter().map(|&i| &mono.elements[i]).collect();
                invariant_space(field, &h, &shifted_basis(n, k, q, &s.exps), level).len()
            });
        }
        rows.push(HilbertRow {
            degree: Rational64::new(t as i64, q as i64),
            from_summands,
            direct,
            passed: from_summands == direct,
        });
    }
    rows
}

/// Outcome of checking the projection onto the `μ = 1` summand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitReport {
    pub e: u32,
    pub max_degree: u32,
    pub invariants_checked: usize,
    pub products_checked: usize,
    pub unit_maps_to_one: bool,
    pub failures: Vec<String>,
    pub passed: bool,
}

/// Keeps the terms of `f` with integral exponents, as a level-0 polynomial.
///
/// On `(S^G)^{1/q}` this is the projection onto the `μ = 1` summand.
pub fn project_to_integral(f: &FracPolynomial) -> FracPolynomial {
    let level = f.level();
    let den = f.characteristic().pow(level);
    let terms = f
        .terms()
        .filter(|&(e, _c)| e.as_slice().iter().all(|&a| a % den == 0))
        .map(|(e, c)| {
            (
                Exponents::from_slice(&e.as_slice().iter().map(|&a| a / den).collect::<Vec<_>>()),
                c.clone(),
            )
        });
    FracPolynomial::from_terms(f.field(), f.nvars(), 0, terms)
}

fn to_poly(field: FieldSpec, n: usize, level: u32, basis: &[Vec<u32>], v: &SparseVec) -> FracPolynomial {
    FracPolynomial::from_terms(
        field,
        n,
        level,
        v.iter().map(|(&i, c)| (Exponents::from_slice(&basis[i]), c.clone())),
    )
}

/// Verifies that `π = project_to_integral` is an `S^G`-linear retraction
/// `(S^G)^{1/q} → S^G` with `π(1) = 1`, on all invariants up to `max_degree`.
///
/// Invariance is checked with the polynomial action, independently of the
/// monomial bookkeeping that produced the invariants.
pub fn fpure_split_witness(group: &MatrixGroup, mono: &MonomialStructure, e: u32, max_degree: u32) -> SplitReport {
    let field = group.field();
    let n = group.dimension();
    let q = field.characteristic().pow(e);
    let gens = generator_elements(group, mono);
    let mut failures = Vec::new();
    let is_invariant = |f: &FracPolynomial| group.generators().iter().all(|g| f.act(g).as_ref() == Ok(f));

    let one = FracPolynomial::one(field, n);
    let unit_maps_to_one = project_to_integral(&one) == one;

    // Low-degree invariants of S serve as the scalars for the linearity test.
    let mut scalars = Vec::new();
    for d in 1..=2u32.min(max_degree.max(1)) {
        let basis: Vec<Vec<u32>> = compositions(n, d).into_iter().map(|x| x.as_slice().to_vec()).collect();
        for v in invariant_space(field, &gens, &basis, 0).iter().take(4) {
            scalars.push(to_poly(field, n, 0, &basis, v));
        }
    }
    for s in &scalars {
        if project_to_integral(s) != *s {
            failures.push(format!("projection moves the invariant {s}"));
        }
    }

    let mut invariants_checked = 0;
    let mut products_checked = 0;
    for t in 0..=max_degree * q {
        let basis: Vec<Vec<u32>> = compositions(n, t).into_iter().map(|x| x.as_slice().to_vec()).collect();
        for v in invariant_space(field, &gens, &basis, e) {
            let f = to_poly(field, n, e, &basis, &v);
            invariants_checked += 1;
            if !is_invariant(&f) {
                failures.push(format!("{f} is not invariant"));
                continue;
            }
            let pf = project_to_integral(&f);
            if !is_invariant(&pf) {
                failures.push(format!("projection of {f} is not invariant"));
            }
            for s in &scalars {
                products_checked += 1;
                if project_to_integral(&(s * &f)) != s * &pf {
                    failures.push(format!("projection is not linear on {s} * ({f})"));
                }
            }
        }
    }
    if !unit_maps_to_one {
        failures.push("projection does not send 1 to 1".into());
    }
    SplitReport {
        e,
        max_degree,
        invariants_checked,
        products_checked,
        unit_maps_to_one,
        passed: failures.is_empty(),
        failures,
    }
}

/// Runs [`verify_perm_map`] on every orbit representative.
pub fn verify_all_perm_maps(
    group: &MatrixGroup,
    mono: &MonomialStructure,
    summands: &[OrbitSummand],
    level: u32,
    max_degree: u32,
) -> Result<Vec<PermMapReport>, GroupError> {
    Ok(summands
        .iter()
        .map(|s| verify_perm_map(group, mono, &s.exps, level, max_degree))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::frobdecomp::{decompose, DecomposeOptions};
    use crate::groups::detect_monomial;

    #[test]
    fn block_kernel_matches_dense_kernel() {
        let g = builtins::a3().build(10).unwrap();
        let mono = detect_monomial(&g).unwrap();
        let gens = generator_elements(&g, &mono);
        let basis: Vec<Vec<u32>> = compositions(3, 3).into_iter().map(|x| x.as_slice().to_vec()).collect();
        let blocks = invariant_space(g.field(), &gens, &basis, 0);
        // Dense: stack (g - 1) over the whole basis.
        let nb = basis.len();
        let mut m = Matrix::zeros(g.field(), nb, nb);
        for (j, b) in basis.iter().enumerate() {
            let (c, img) = gens[0].act(b, 0);
            let i = basis.iter().position(|x| *x == img).unwrap();
            m.set(i, j, m.get(i, j) + &c);
            m.set(j, j, m.get(j, j) - &FieldElement::one(g.field()));
        }
        assert_eq!(blocks.len(), m.kernel().len());
        // Cubic invariants of A_3: 10 monomials in 4 orbits.
        assert_eq!(blocks.len(), 4);
    }

    #[test]
    fn perm_map_for_unit_is_identity_on_invariants() {
        let g = builtins::a3().build(10).unwrap();
        let mono = detect_monomial(&g).unwrap();
        let r = verify_perm_map(&g, &mono, &[0, 0, 0], 1, 2);
        assert!(r.passed);
        assert_eq!(r.orbit_size, 1);
        assert_eq!(r.rows.len(), 3);
        assert_eq!(r.rows[1].source_dim, 1);
        assert_eq!(r.rows[2].source_dim, 2);
    }

    #[test]
    fn hilbert_a3() {
        let g = builtins::a3().build(10).unwrap();
        let mono = detect_monomial(&g).unwrap();
        let d = decompose(&g, "a3", 1, DecomposeOptions::default()).unwrap();
        let rows = hilbert_check(&g, &mono, &d.summands, 1, 2);
        assert_eq!(rows.len(), 7);
        assert!(rows.iter().all(|r| r.passed), "{rows:?}");
    }

    #[test]
    fn split_for_trivial_group() {
        let f = FieldSpec::prime(3).unwrap();
        let g = MatrixGroup::generate(f, 2, vec![Matrix::identity(f, 2)], 10).unwrap();
        let mono = detect_monomial(&g).unwrap();
        let r = fpure_split_witness(&g, &mono, 1, 1);
        assert!(r.passed, "{:?}", r.failures);
        assert_eq!(r.invariants_checked, (0..=3).map(|t| t + 1).sum::<usize>());
    }
}
