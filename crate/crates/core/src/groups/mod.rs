//! Finite matrix groups given by generators.
//!
//! Elements act on `S = k[x_1..x_n]` by the column convention
//! `g·x_j = Σ_i g_{ij} x_i`, which is a left action: `(gh)·f = g·(h·f)`.

pub mod io;
pub mod presentation;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::GroupError;
use crate::field::{FieldElement, FieldSpec};
use crate::linalg::Matrix;

pub use presentation::{coset_enumerate, Word};

/// Default bound on the enumerated group order.
pub const DEFAULT_CAP: usize = 1_000_000;

/// A finite subgroup of `GL_n(k)` with its full element table.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    field: FieldSpec,
    n: usize,
    generators: Vec<Matrix>,
    names: Vec<String>,
    relators: Vec<Word>,
    elements: Vec<Matrix>,
    index: HashMap<Matrix, usize>,
}

impl MatrixGroup {
    /// Enumerates the group generated by `gens` by breadth-first closure.
    ///
    /// Element 0 is the identity; later elements appear in discovery order,
    /// multiplying by the generators in sorted order.
    pub fn generate(field: FieldSpec, n: usize, gens: Vec<Matrix>, cap: usize) -> Result<Self, GroupError> {
        let names = (1..=gens.len()).map(|i| format!("g{i}")).collect();
        Self::with_names(field, n, gens, names, Vec::new(), cap)
    }

    /// Like [`MatrixGroup::generate`], with generator names and an optional presentation.
    pub fn with_names(
        field: FieldSpec,
        n: usize,
        gens: Vec<Matrix>,
        names: Vec<String>,
        relators: Vec<Word>,
        cap: usize,
    ) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::Empty);
        }
        for (index, g) in gens.iter().enumerate() {
            if g.rows() != n || g.cols() != n {
                return Err(GroupError::BadShape {
                    index,
                    rows: g.rows(),
                    cols: g.cols(),
                    n,
                });
            }
            if g.field() != field {
                return Err(GroupError::Poly(crate::error::PolyError::RingMismatch(format!(
                    "generator {index} is not over {field}"
                ))));
            }
            if g.determinant().is_zero() {
                return Err(GroupError::NotInvertible(index));
            }
        }
        let mut sorted = gens.clone();
        sorted.sort();
        sorted.dedup();
        let id = Matrix::identity(field, n);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0)]);
        let mut head = 0;
        while head < elements.len() {
            let current = elements[head].clone();
            head += 1;
            for g in &sorted {
                let next = g.mul(&current);
                if !index.contains_key(&next) {
                    if elements.len() >= cap {
                        return Err(GroupError::CapExceeded(cap));
                    }
                    index.insert(next.clone(), elements.len());
                    elements.push(next);
                }
            }
        }
        Ok(MatrixGroup {
            field,
            n,
            generators: gens,
            names,
            relators,
            elements,
            index,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Matrix {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &Matrix) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Table index of `elements[i] * elements[j]`.
    pub fn product(&self, i: usize, j: usize) -> usize {
        self.index[&self.elements[i].mul(&self.elements[j])]
    }

    /// Table index of the inverse of `elements[i]`.
    pub fn inverse(&self, i: usize) -> usize {
        let inv = self.elements[i].inverse().expect("group elements are invertible");
        self.index[&inv]
    }

    /// Evaluates a word in the generators.
    pub fn evaluate(&self, word: &Word) -> Matrix {
        let mut acc = Matrix::identity(self.field, self.n);
        for &(g, k) in word.letters() {
            let base = if k < 0 {
                self.generators[g].inverse().expect("generators are invertible")
            } else {
                self.generators[g].clone()
            };
            acc = acc.mul(&base.pow(k.unsigned_abs()));
        }
        acc
    }

    /// Full multiplication table, `table[i][j] = index(g_i g_j)`.
    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        (0..self.order())
            .map(|i| (0..self.order()).map(|j| self.product(i, j)).collect())
            .collect()
    }

    /// Frobenius twist: every matrix entry replaced by its `p^e`-th root.
    ///
    /// The element table keeps its order, so index `i` of the twist is the
    /// twist of index `i` here.
    pub fn twist(&self, e: u32) -> MatrixGroup {
        let root = |m: &Matrix| m.map(|x| x.root(e));
        let elements: Vec<Matrix> = self.elements.iter().map(root).collect();
        let index = elements.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        MatrixGroup {
            field: self.field,
            n: self.n,
            generators: self.generators.iter().map(root).collect(),
            names: self.names.clone(),
            relators: self.relators.clone(),
            elements,
            index,
        }
    }

    /// Elements `g` with `rank(I - g) = 1`, as table indices.
    pub fn pseudoreflections(&self) -> Vec<usize> {
        let id = Matrix::identity(self.field, self.n);
        (1..self.order())
            .filter(|&i| id.sub(&self.elements[i]).rank() == 1)
            .collect()
    }

    /// Pseudoreflections, faithfulness against the presentation, and smallness.
    pub fn smallness(&self, coset_limit: usize) -> SmallnessReport {
        let id = Matrix::identity(self.field, self.n);
        let ranks = self.elements.iter().map(|g| id.sub(g).rank()).collect();
        let pseudoreflections = self.pseudoreflections();
        let faithfulness = self.faithfulness(coset_limit);
        let small = match &faithfulness {
            Faithfulness::Faithful { .. } => Some(pseudoreflections.is_empty()),
            Faithfulness::NotFaithful { .. } | Faithfulness::RelatorFails { .. } => Some(false),
            Faithfulness::Unknown { .. } => {
                if pseudoreflections.is_empty() {
                    None
                } else {
                    Some(false)
                }
            }
        };
        SmallnessReport {
            order: self.order(),
            ranks,
            pseudoreflections,
            faithfulness,
            small,
        }
    }

    /// Compares the abstract group given by the relators with the matrix group.
    pub fn faithfulness(&self, coset_limit: usize) -> Faithfulness {
        if self.relators.is_empty() {
            return Faithfulness::Unknown {
                reason: "no presentation supplied".into(),
            };
        }
        for r in &self.relators {
            if !self.evaluate(r).is_identity() {
                return Faithfulness::RelatorFails {
                    relator: r.display(&self.names),
                };
            }
        }
        let Some(table) = coset_enumerate(self.generators.len(), &self.relators, coset_limit) else {
            return Faithfulness::Unknown {
                reason: format!("coset enumeration exceeded {coset_limit} cosets"),
            };
        };
        let abstract_order = table.order();
        if abstract_order == self.order() {
            return Faithfulness::Faithful { abstract_order };
        }
        let witness = table
            .words()
            .into_iter()
            .skip(1)
            .find(|w| self.evaluate(w).is_identity())
            .map(|w| w.display(&self.names))
            .unwrap_or_default();
        Faithfulness::NotFaithful {
            abstract_order,
            kernel_witness: witness,
        }
    }
}

/// Outcome of comparing a presentation with its matrix image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Faithfulness {
    Faithful {
        abstract_order: usize,
    },
    NotFaithful {
        abstract_order: usize,
        kernel_witness: String,
    },
    RelatorFails {
        relator: String,
    },
    Unknown {
        reason: String,
    },
}

/// Pseudoreflection and smallness data for a matrix group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmallnessReport {
    pub order: usize,
    /// `rank(I - g)` for every element in table order.
    pub ranks: Vec<usize>,
    pub pseudoreflections: Vec<usize>,
    pub faithfulness: Faithfulness,
    /// `None` when faithfulness could not be decided.
    pub small: Option<bool>,
}

/// Permutation-with-scalars data: `g·x_j = scalars[j] · x_{perm[j]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialElement {
    pub perm: Vec<usize>,
    pub scalars: Vec<FieldElement>,
}

impl MonomialElement {
    /// Rebuilds the matrix: column `j` has `scalars[j]` in row `perm[j]`.
    pub fn to_matrix(&self, field: FieldSpec) -> Matrix {
        let n = self.perm.len();
        let mut m = Matrix::zeros(field, n, n);
        for j in 0..n {
            m.set(self.perm[j], j, self.scalars[j].clone());
        }
        m
    }

    /// Action on `x^{λ/p^e}`: returns the scalar and the image exponents.
    ///
    /// A scalar `c` on `x_j` contributes `c^{λ_j/p^e}`, the unique root.
    pub fn act(&self, exps: &[u32], level: u32) -> (FieldElement, Vec<u32>) {
        let field = self.scalars[0].spec();
        let mut out = vec![0; exps.len()];
        let mut c = FieldElement::one(field);
        for (j, &a) in exps.iter().enumerate() {
            out[self.perm[j]] = a;
            if a > 0 && !self.scalars[j].is_one() {
                c = &c * &self.scalars[j].pow(a as u64);
            }
        }
        (c.root(level), out)
    }

    /// Action on exponents only.
    pub fn permute(&self, exps: &[u32], out: &mut [u32]) {
        for (j, &a) in exps.iter().enumerate() {
            out[self.perm[j]] = a;
        }
    }
}

/// Monomial data for every element of a group, in table order.
#[derive(Clone, Debug)]
pub struct MonomialStructure {
    pub elements: Vec<MonomialElement>,
}

impl MonomialStructure {
    pub fn is_permutation(&self) -> bool {
        self.elements.iter().all(|m| m.scalars.iter().all(FieldElement::is_one))
    }
}

/// Reads off permutation and scalars from every element, or names the first
/// element with a column that is not a multiple of one basis vector.
pub fn detect_monomial(g: &MatrixGroup) -> Result<MonomialStructure, GroupError> {
    let n = g.dimension();
    let mut elements = Vec::with_capacity(g.order());
    for (index, m) in g.elements().iter().enumerate() {
        let mut perm = Vec::with_capacity(n);
        let mut scalars = Vec::with_capacity(n);
        for j in 0..n {
            let nonzero: Vec<usize> = (0..n).filter(|&i| !m.get(i, j).is_zero()).collect();
            if nonzero.len() != 1 {
                return Err(GroupError::NotMonomial {
                    index,
                    reason: format!("column {} has {} nonzero entries", j + 1, nonzero.len()),
                });
            }
            perm.push(nonzero[0]);
            scalars.push(m.get(nonzero[0], j).clone());
        }
        elements.push(MonomialElement { perm, scalars });
    }
    Ok(MonomialStructure { elements })
}
