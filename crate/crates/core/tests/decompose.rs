use std::collections::{BTreeMap, BTreeSet};

use frobsplit_core::builtins;
use frobsplit_core::frobdecomp::verify::{fpure_split_witness, hilbert_check, verify_all_perm_maps};
use frobsplit_core::frobdecomp::{decompose, empirical_signature, DecomposeOptions};
use frobsplit_core::groups::detect_monomial;

/// Orbit counts of the cyclic shift on `[0, q)^n`, keyed by orbit size.
fn cyclic_orbits(n: usize, q: u32) -> BTreeMap<usize, u64> {
    let mut seen = BTreeSet::new();
    let mut counts = BTreeMap::new();
    let total = (q as u64).pow(n as u32);
    for code in 0..total {
        let mut lam = Vec::with_capacity(n);
        let mut c = code;
        for _ in 0..n {
            lam.push((c % q as u64) as u32);
            c /= q as u64;
        }
        if seen.contains(&lam) {
            continue;
        }
        let mut orbit = BTreeSet::new();
        let mut cur = lam.clone();
        loop {
            orbit.insert(cur.clone());
            cur.rotate_right(1);
            if cur == lam {
                break;
            }
        }
        *counts.entry(orbit.len()).or_insert(0) += 1;
        seen.extend(orbit);
    }
    counts
}

fn multiplicity(report: &frobsplit_core::DecompositionReport, name: &str) -> u64 {
    report.class_named(name).map_or(0, |c| c.multiplicity)
}

#[test]
fn a3_matches_orbit_count() {
    let g = builtins::a3().build(10).unwrap();
    for e in 1..=2 {
        let q = 3u32.pow(e);
        let oracle = cyclic_orbits(3, q);
        let r = decompose(&g, "a3", e, DecomposeOptions::default()).unwrap().report;
        assert_eq!(multiplicity(&r, "S^G"), oracle[&1]);
        assert_eq!(multiplicity(&r, "S"), oracle[&3]);
        assert_eq!(r.classes.len(), 2);
        assert!(r.rank_check.passed);
    }
}

#[test]
fn z4_matches_orbit_count() {
    let g = builtins::z4_f2().build(10).unwrap();
    for e in 1..=3 {
        let q = 2u32.pow(e);
        let oracle = cyclic_orbits(4, q);
        let r = decompose(&g, "z4", e, DecomposeOptions::default()).unwrap().report;
        assert_eq!(multiplicity(&r, "S^G"), oracle[&1]);
        assert_eq!(multiplicity(&r, "S^H"), oracle[&2]);
        assert_eq!(multiplicity(&r, "S"), oracle[&4]);
    }
}

#[test]
fn veronese_classes_follow_residues() {
    let g = builtins::veronese(3, 2).unwrap().build(10).unwrap();
    for e in 1..=3 {
        let q = 2u32.pow(e);
        let d = decompose(&g, "veronese-3", e, DecomposeOptions::default()).unwrap();
        let mut by_class: BTreeMap<usize, BTreeSet<u32>> = BTreeMap::new();
        for s in &d.summands {
            by_class.entry(s.class).or_default().insert((s.exps[0] + s.exps[1]) % 3);
        }
        // Each class is one residue of λ1 + λ2 mod 3.
        assert!(by_class.values().all(|r| r.len() == 1));
        for (class, residues) in &by_class {
            let r = *residues.iter().next().unwrap();
            let brute = (0..q)
                .flat_map(|a| (0..q).map(move |b| (a, b)))
                .filter(|(a, b)| (a + b) % 3 == r)
                .count() as u64;
            assert_eq!(d.report.classes[*class].multiplicity, brute);
        }
    }
}

#[test]
fn cyclic5_and_signature() {
    let g = builtins::cyclic(5).unwrap().build(10).unwrap();
    let r = decompose(&g, "cyclic-5", 1, DecomposeOptions::default())
        .unwrap()
        .report;
    let oracle = cyclic_orbits(5, 5);
    assert_eq!(multiplicity(&r, "S^G"), oracle[&1]);
    assert_eq!(multiplicity(&r, "S"), oracle[&5]);
    let a3 = builtins::a3().build(10).unwrap();
    let rows = empirical_signature(&a3, &[1, 2, 3], DecomposeOptions::default()).unwrap();
    for row in &rows {
        let q = row.q as f64;
        let closed = (q * q * q - q) / (3.0 * q * q * q);
        assert!((row.free_ratio.unwrap() - closed).abs() < 1e-12);
    }
}

#[test]
fn verification_on_small_cases() {
    for input in [builtins::a3(), builtins::z4_f2(), builtins::veronese(3, 2).unwrap()] {
        let g = input.build(10).unwrap();
        let mono = detect_monomial(&g).unwrap();
        let d = decompose(&g, "", 1, DecomposeOptions::default()).unwrap();
        let maps = verify_all_perm_maps(&g, &mono, &d.summands, 1, 2).unwrap();
        assert!(maps.iter().all(|m| m.passed), "{:?}", input.name);
        assert!(hilbert_check(&g, &mono, &d.summands, 1, 2).iter().all(|r| r.passed));
        assert!(fpure_split_witness(&g, &mono, 1, 2).passed);
    }
}

#[test]
fn workers_do_not_change_results() {
    let g = builtins::z4_f2().build(10).unwrap();
    let one = decompose(&g, "z4", 3, DecomposeOptions { workers: 1 }).unwrap().report;
    let four = decompose(&g, "z4", 3, DecomposeOptions { workers: 4 }).unwrap().report;
    assert_eq!(one, four);
}

#[test]
fn non_monomial_groups_are_rejected() {
    let g = builtins::counterexample_t().build(100).unwrap();
    assert!(decompose(&g, "", 1, DecomposeOptions::default()).is_err());
}
