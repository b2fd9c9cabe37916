//! Modules over `kG = k[a,b]/(a^3, b^3)` for `G = Z/3 × Z/3 = <σ, τ>`,
//! with `a = σ - 1` and `b = τ - 1`, and the witnesses showing that the
//! Frobenius pushforwards of the counterexample ring need infinitely many
//! indecomposable summand classes.

use num_rational::Rational64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::builtins;
use crate::error::ModRepError;
use crate::field::{FieldElement, FieldSpec};
use crate::groups::{MatrixGroup, SmallnessReport, DEFAULT_CAP};
use crate::linalg::Matrix;
use crate::poly::FracPolynomial;

/// Monomials `a^i b^j` of `kG` in the fixed order used for coordinates.
pub const KG_BASIS: [(usize, usize); 9] = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (2, 1), (1, 2), (2, 2)];

fn kg_index(i: usize, j: usize) -> Option<usize> {
    KG_BASIS.iter().position(|&m| m == (i, j))
}

fn kg_monomial_name(i: usize, j: usize) -> String {
    let part = |v: &str, k: usize| match k {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{k}"),
    };
    match (i, j) {
        (0, 0) => "1".into(),
        (_, 0) => part("a", i),
        (0, _) => part("b", j),
        _ => format!("{}*{}", part("a", i), part("b", j)),
    }
}

/// Product in `k[a,b]/(a^3,b^3)` on coordinate vectors.
pub fn kg_mul(x: &[FieldElement], y: &[FieldElement]) -> Vec<FieldElement> {
    let field = x[0].spec();
    let mut out = vec![FieldElement::zero(field); 9];
    for (k1, &(i1, j1)) in KG_BASIS.iter().enumerate() {
        if x[k1].is_zero() {
            continue;
        }
        for (k2, &(i2, j2)) in KG_BASIS.iter().enumerate() {
            if y[k2].is_zero() {
                continue;
            }
            if let Some(k) = kg_index(i1 + i2, j1 + j2) {
                out[k] = &out[k] + &(&x[k1] * &y[k2]);
            }
        }
    }
    out
}

/// A finite-dimensional `kG`-module given by the images of `σ` and `τ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KGModule {
    sigma: Matrix,
    tau: Matrix,
    degree: Option<Rational64>,
}

impl KGModule {
    /// Checks `σ^3 = τ^3 = 1` and `στ = τσ` in characteristic 3.
    pub fn new(sigma: Matrix, tau: Matrix, degree: Option<Rational64>) -> Result<Self, ModRepError> {
        let p = sigma.field().characteristic();
        if p != 3 {
            return Err(ModRepError::WrongCharacteristic(p));
        }
        if sigma.rows() != sigma.cols() || tau.rows() != sigma.rows() || tau.cols() != sigma.cols() {
            return Err(ModRepError::Axioms("matrices must be square of equal size".into()));
        }
        if !sigma.pow(3).is_identity() || !tau.pow(3).is_identity() {
            return Err(ModRepError::Axioms("generators must have order dividing 3".into()));
        }
        if sigma.mul(&tau) != tau.mul(&sigma) {
            return Err(ModRepError::Axioms("generators must commute".into()));
        }
        Ok(KGModule { sigma, tau, degree })
    }

    pub fn field(&self) -> FieldSpec {
        self.sigma.field()
    }

    pub fn dim(&self) -> usize {
        self.sigma.rows()
    }

    pub fn sigma(&self) -> &Matrix {
        &self.sigma
    }

    pub fn tau(&self) -> &Matrix {
        &self.tau
    }

    pub fn degree(&self) -> Option<Rational64> {
        self.degree
    }

    /// `a = σ - 1`.
    pub fn a(&self) -> Matrix {
        self.sigma.sub(&Matrix::identity(self.field(), self.dim()))
    }

    /// `b = τ - 1`.
    pub fn b(&self) -> Matrix {
        self.tau.sub(&Matrix::identity(self.field(), self.dim()))
    }

    /// The regular module `kG` on the basis [`KG_BASIS`].
    pub fn regular(field: FieldSpec) -> Result<Self, ModRepError> {
        let mult = |i: usize, j: usize| {
            let mut gen = vec![FieldElement::zero(field); 9];
            gen[0] = FieldElement::one(field);
            gen[kg_index(i, j).unwrap()] = FieldElement::one(field);
            let mut m = Matrix::zeros(field, 9, 9);
            for k in 0..9 {
                let mut e = vec![FieldElement::zero(field); 9];
                e[k] = FieldElement::one(field);
                for (r, v) in kg_mul(&gen, &e).into_iter().enumerate() {
                    m.set(r, k, v);
                }
            }
            m
        };
        KGModule::new(mult(1, 0), mult(0, 1), None)
    }

    pub fn direct_sum(&self, other: &KGModule) -> Result<KGModule, ModRepError> {
        let block = |x: &Matrix, y: &Matrix| {
            let (m, n) = (x.rows(), y.rows());
            let mut out = Matrix::zeros(x.field(), m + n, m + n);
            for i in 0..m {
                for j in 0..m {
                    out.set(i, j, x.get(i, j).clone());
                }
            }
            for i in 0..n {
                for j in 0..n {
                    out.set(m + i, m + j, y.get(i, j).clone());
                }
            }
            out
        };
        KGModule::new(block(&self.sigma, &other.sigma), block(&self.tau, &other.tau), None)
    }

    /// Action of the element with coordinates `f` (over [`KG_BASIS`]).
    pub fn action(&self, f: &[FieldElement]) -> Matrix {
        let (a, b) = (self.a(), self.b());
        let mut out = Matrix::zeros(self.field(), self.dim(), self.dim());
        for (k, &(i, j)) in KG_BASIS.iter().enumerate() {
            if !f[k].is_zero() {
                out = out.add(&a.pow(i as u64).mul(&b.pow(j as u64)).scale(&f[k]));
            }
        }
        out
    }
}

/// `V(α)`: `σ ↦ I + N`, `τ ↦ I + αN` with `N` the nilpotent Jordan block.
pub fn build_v(alpha: &FieldElement) -> Result<KGModule, ModRepError> {
    let input = builtins::counterexample(alpha);
    let mut gens = input.generators.into_iter();
    KGModule::new(gens.next().unwrap(), gens.next().unwrap(), None)
}

/// An ideal of `kG` as a subspace, in reduced row echelon form over [`KG_BASIS`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilatorIdeal {
    basis: Matrix,
}

impl AnnihilatorIdeal {
    fn from_rows(field: FieldSpec, rows: Vec<Vec<FieldElement>>) -> Self {
        let basis = if rows.is_empty() {
            Matrix::zeros(field, 0, 9)
        } else {
            Matrix::from_rows(field, rows).unwrap().row_space_basis()
        };
        AnnihilatorIdeal { basis }
    }

    /// The ideal generated by the given elements.
    pub fn generated_by(field: FieldSpec, gens: &[Vec<FieldElement>]) -> Self {
        let mut rows = Vec::new();
        for g in gens {
            for k in 0..9 {
                let mut e = vec![FieldElement::zero(field); 9];
                e[k] = FieldElement::one(field);
                rows.push(kg_mul(g, &e));
            }
        }
        Self::from_rows(field, rows)
    }

    /// The principal ideal `(b - βa)`.
    pub fn b_minus(beta: &FieldElement) -> Self {
        let field = beta.spec();
        let mut g = vec![FieldElement::zero(field); 9];
        g[kg_index(0, 1).unwrap()] = FieldElement::one(field);
        g[kg_index(1, 0).unwrap()] = -beta;
        Self::generated_by(field, &[g])
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// The unique `β` with `b - βa` in the ideal, if the ideal meets
    /// `span(a, b)` in exactly such a line.
    pub fn linear_generator(&self) -> Option<FieldElement> {
        let field = self.basis.field();
        let (ka, kb) = (kg_index(1, 0).unwrap(), kg_index(0, 1).unwrap());
        // Columns: basis rows, then e_a, e_b; a kernel vector gives a relation.
        let r = self.dim();
        let mut m = Matrix::zeros(field, 9, r + 2);
        for i in 0..r {
            for k in 0..9 {
                m.set(k, i, self.basis.get(i, k).clone());
            }
        }
        m.set(ka, r, FieldElement::one(field));
        m.set(kb, r + 1, FieldElement::one(field));
        let ker = m.kernel();
        if ker.len() != 1 {
            return None;
        }
        let (x, y) = (&ker[0][r], &ker[0][r + 1]);
        if y.is_zero() {
            return None;
        }
        Some(-(x / y))
    }

    /// Rows of the echelon basis as strings like `b + 2*a`.
    pub fn describe(&self) -> Vec<String> {
        (0..self.dim())
            .map(|i| {
                let terms: Vec<String> = KG_BASIS
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| !self.basis.get(i, *k).is_zero())
                    .map(|(k, &(a, b))| {
                        let c = self.basis.get(i, k);
                        let m = kg_monomial_name(a, b);
                        if c.is_one() {
                            m
                        } else if c.is_compound() {
                            format!("({c})*{m}")
                        } else {
                            format!("{c}*{m}")
                        }
                    })
                    .collect();
                terms.join(" + ")
            })
            .collect()
    }
}

/// `{f ∈ kG : f·M = 0}`, from the kernel of `f ↦ Σ f_{ij} A^i B^j`.
pub fn annihilator(m: &KGModule) -> AnnihilatorIdeal {
    let field = m.field();
    let d = m.dim();
    let (a, b) = (m.a(), m.b());
    let mut cols = Matrix::zeros(field, d * d, 9);
    for (k, &(i, j)) in KG_BASIS.iter().enumerate() {
        let op = a.pow(i as u64).mul(&b.pow(j as u64));
        for (r, v) in op.entries().iter().enumerate() {
            cols.set(r, k, v.clone());
        }
    }
    AnnihilatorIdeal::from_rows(field, cols.kernel())
}

/// `dim {v : Av = 0 = Bv}`.
pub fn socle_dim(m: &KGModule) -> usize {
    let stacked = Matrix::vstack(m.field(), &[m.a(), m.b()]);
    stacked.kernel().len()
}

/// Entrywise `3^e`-th roots of the representing matrices.
pub fn twist_module(m: &KGModule, e: u32) -> Result<KGModule, ModRepError> {
    let g = MatrixGroup::with_names(
        m.field(),
        m.dim(),
        vec![m.sigma.clone(), m.tau.clone()],
        vec!["sigma".into(), "tau".into()],
        Vec::new(),
        DEFAULT_CAP,
    )?;
    let t = g.twist(e);
    let degree = m.degree.map(|d| d / Rational64::from_integer(3i64.pow(e)));
    KGModule::new(t.generators()[0].clone(), t.generators()[1].clone(), degree)
}

/// The `G`-module on the degree-`1/3^e` piece `span{x_j^{1/3^e}}` of `S^{1/3^e}`
/// for the counterexample group, computed by acting on polynomials.
pub fn lowest_degree_component(e: u32) -> Result<KGModule, ModRepError> {
    let input = builtins::counterexample_t();
    let field = input.field;
    let n = 3;
    let basis: Vec<FracPolynomial> = (0..n)
        .map(|j| FracPolynomial::var(field, n, j).frobenius_root(e))
        .collect();
    let mut mats = Vec::new();
    for g in &input.generators {
        let mut m = Matrix::zeros(field, n, n);
        for (j, xj) in basis.iter().enumerate() {
            let img = xj.act(g).map_err(|e| ModRepError::Axioms(e.to_string()))?;
            for (i, xi) in basis.iter().enumerate() {
                let mono = xi.monomials().next().unwrap().0;
                m.set(i, j, img.coefficient(&mono));
            }
            // Everything must land back in the degree-1/3^e piece.
            let rebuilt = basis
                .iter()
                .enumerate()
                .fold(FracPolynomial::zero(field, n), |acc, (i, xi)| {
                    &acc + &xi.scale(m.get(i, j))
                });
            if rebuilt != img {
                return Err(ModRepError::Axioms("image leaves the degree-1/3^e piece".into()));
            }
        }
        mats.push(m);
    }
    let degree = Rational64::new(1, 3i64.pow(e));
    let mut it = mats.into_iter();
    KGModule::new(it.next().unwrap(), it.next().unwrap(), Some(degree))
}

/// One row of the witness table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub e: u32,
    #[serde(with = "crate::ratio")]
    pub shift: Rational64,
    /// `t^{1/3^e}`.
    pub alpha: String,
    /// `b - β·a` read off the annihilator, if principal of that form.
    pub annihilator: Option<String>,
    pub annihilator_dim: usize,
    pub annihilator_basis: Vec<String>,
    pub socle_dim: usize,
    /// Annihilator equals `(b - t^{1/3^e} a)`.
    pub matches_expected: bool,
    /// Component equals the entrywise twist of `V(t)`.
    pub matches_twist: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessTable {
    pub max_e: u32,
    pub witnesses: Vec<Witness>,
    pub pairwise_distinct: bool,
    pub passed: bool,
}

/// Annihilators of `lowest_degree_component(e)` for `e = 0..=max_e`.
pub fn distinct_witnesses(max_e: u32) -> Result<WitnessTable, ModRepError> {
    let field = FieldSpec::perfect_rational(3).unwrap();
    let t = FieldElement::t(field).unwrap();
    let base = build_v(&t)?;
    let rows: Vec<Result<(Witness, AnnihilatorIdeal), ModRepError>> = (0..=max_e)
        .into_par_iter()
        .map(|e| {
            let comp = lowest_degree_component(e)?;
            let ann = annihilator(&comp);
            let alpha = t.root(e);
            let expected = AnnihilatorIdeal::b_minus(&alpha);
            let twisted = twist_module(&base, e)?;
            let w = Witness {
                e,
                shift: Rational64::new(1, 3i64.pow(e)),
                alpha: alpha.to_string(),
                annihilator: ann.linear_generator().map(|beta| format!("b - ({beta})*a")),
                annihilator_dim: ann.dim(),
                annihilator_basis: ann.describe(),
                socle_dim: socle_dim(&comp),
                matches_expected: ann == expected,
                matches_twist: twisted.sigma == comp.sigma && twisted.tau == comp.tau,
            };
            Ok((w, ann))
        })
        .collect();
    let mut witnesses = Vec::new();
    let mut ideals = Vec::new();
    for r in rows {
        let (w, a) = r?;
        witnesses.push(w);
        ideals.push(a);
    }
    let pairwise_distinct = (0..ideals.len()).all(|i| (i + 1..ideals.len()).all(|j| ideals[i] != ideals[j]));
    let passed = pairwise_distinct
        && witnesses
            .iter()
            .all(|w| w.matches_expected && w.matches_twist && w.socle_dim == 1);
    Ok(WitnessTable {
        max_e,
        witnesses,
        pairwise_distinct,
        passed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormRow {
    pub i: u32,
    pub j: u32,
    /// `rank(σ^i τ^j - I)`.
    pub rank: usize,
    pub passed: bool,
}

/// Checks `σ^iτ^j = I + (i+jα)N + (C(i,2) + ijα + C(j,2)α²)N²` for all `i, j < 3`.
pub fn closed_form_check(alpha: &FieldElement) -> Result<Vec<ClosedFormRow>, ModRepError> {
    let v = build_v(alpha)?;
    let field = alpha.spec();
    let id = Matrix::identity(field, 3);
    let n = v.a();
    let n2 = n.mul(&n);
    let int = |k: u32| FieldElement::from_int(field, k as i64);
    let choose2 = |k: u32| int(k * k.saturating_sub(1) / 2);
    let mut rows = Vec::new();
    for i in 0..3u32 {
        for j in 0..3u32 {
            let lhs = v.sigma.pow(i as u64).mul(&v.tau.pow(j as u64));
            let c1 = &int(i) + &(&int(j) * alpha);
            let c2 = &(&choose2(i) + &(&int(i * j) * alpha)) + &(&choose2(j) * &(alpha * alpha));
            let rhs = id.add(&n.scale(&c1)).add(&n2.scale(&c2));
            rows.push(ClosedFormRow {
                i,
                j,
                rank: lhs.sub(&id).rank(),
                passed: lhs == rhs,
            });
        }
    }
    Ok(rows)
}

/// Everything the `counterexample` command reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub alpha: String,
    pub order: usize,
    pub smallness: SmallnessReport,
    pub closed_form: Vec<ClosedFormRow>,
    pub closed_form_passed: bool,
    pub witnesses: WitnessTable,
    pub passed: bool,
}

/// Smallness and closed form for `α`, and the witness table for `α = t`.
pub fn counterexample_report(alpha: &FieldElement, max_e: u32) -> Result<CounterexampleReport, ModRepError> {
    let group = builtins::counterexample(alpha).build(DEFAULT_CAP)?;
    let smallness = group.smallness(10_000);
    let closed_form = closed_form_check(alpha)?;
    let closed_form_passed = closed_form.iter().all(|r| r.passed);
    let witnesses = distinct_witnesses(max_e)?;
    let passed = closed_form_passed && witnesses.passed;
    Ok(CounterexampleReport {
        alpha: alpha.to_string(),
        order: group.order(),
        smallness,
        closed_form,
        closed_form_passed,
        witnesses,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> FieldSpec {
        FieldSpec::perfect_rational(3).unwrap()
    }

    #[test]
    fn v_alpha_annihilator_and_socle() {
        let t = FieldElement::t(k()).unwrap();
        let v = build_v(&t).unwrap();
        let ann = annihilator(&v);
        assert_eq!(ann, AnnihilatorIdeal::b_minus(&t));
        assert_eq!(ann.dim(), 6);
        assert_eq!(ann.linear_generator(), Some(t.clone()));
        assert_eq!(socle_dim(&v), 1);
        let zero = FieldElement::zero(k());
        assert_eq!(annihilator(&build_v(&zero).unwrap()), AnnihilatorIdeal::b_minus(&zero));
    }

    #[test]
    fn regular_module() {
        let r = KGModule::regular(k()).unwrap();
        assert_eq!(annihilator(&r).dim(), 0);
        assert_eq!(socle_dim(&r), 1);
        let t = FieldElement::t(k()).unwrap();
        let one = FieldElement::one(k());
        let sum = build_v(&t).unwrap().direct_sum(&build_v(&one).unwrap()).unwrap();
        assert_eq!(socle_dim(&sum), 2);
    }

    #[test]
    fn twist_and_lowest_component() {
        let t = FieldElement::t(k()).unwrap();
        let v = build_v(&t).unwrap();
        assert_eq!(twist_module(&v, 0).unwrap(), v);
        let tw = twist_module(&v, 1).unwrap();
        assert_eq!(tw.tau().get(0, 1), &t.root(1));
        assert_eq!(lowest_degree_component(0).unwrap().sigma(), v.sigma());
        let c2 = lowest_degree_component(2).unwrap();
        assert_eq!(c2.tau().get(1, 2), &t.root(2));
        assert_eq!(c2.degree(), Some(Rational64::new(1, 9)));
    }

    #[test]
    fn rejects_bad_modules() {
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(
            build_v(&FieldElement::one(f5)).unwrap_err(),
            ModRepError::WrongCharacteristic(5)
        );
        let f3 = FieldSpec::prime(3).unwrap();
        let s = Matrix::from_ints(f3, &[&[1, 1], &[0, 1]]);
        let u = Matrix::from_ints(f3, &[&[1, 0], &[1, 1]]);
        assert!(matches!(KGModule::new(s, u, None), Err(ModRepError::Axioms(_))));
    }

    #[test]
    fn witnesses_up_to_two() {
        let w = distinct_witnesses(2).unwrap();
        assert!(w.passed);
        assert_eq!(w.witnesses.len(), 3);
        assert_eq!(w.witnesses[1].annihilator.as_deref(), Some("b - (t^(1/3))*a"));
    }

    #[test]
    fn closed_form_and_smallness() {
        let t = FieldElement::t(k()).unwrap();
        let rows = closed_form_check(&t).unwrap();
        assert!(rows.iter().all(|r| r.passed));
        assert!(rows.iter().filter(|r| (r.i, r.j) != (0, 0)).all(|r| r.rank == 2));
        let rep = counterexample_report(&FieldElement::one(k()), 0).unwrap();
        assert_eq!(rep.order, 3);
        assert_eq!(rep.smallness.small, Some(false));
    }
}
