//! Sparse multivariate polynomials with exponents in `(1/p^e)·Z_{≥0}`.
//!
//! A [`FracPolynomial`] stores integer exponent vectors together with one
//! shared level `e`; the exponent `λ_i` stands for `λ_i / p^e`. Levels are
//! canonical: a polynomial is never stored at level `e > 0` when every
//! exponent is divisible by `p`. Terms iterate in graded-lex order.

pub mod matrix;
pub mod parse;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Rational64;
use smallvec::SmallVec;

use crate::error::PolyError;
use crate::field::{FieldElement, FieldSpec};
use crate::linalg::Matrix;

pub use matrix::PolyMatrix;

/// Exponent vector, ordered by total degree and then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Exponents(pub SmallVec<[u32; 6]>);

impl Exponents {
    pub fn zero(n: usize) -> Self {
        Exponents(SmallVec::from_elem(0, n))
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = Self::zero(n);
        e.0[i] = 1;
        e
    }

    pub fn from_slice(v: &[u32]) -> Self {
        Exponents(SmallVec::from_slice(v))
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&x| x as u64).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn add(&self, other: &Self) -> Self {
        Exponents(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn scaled(&self, k: u32) -> Self {
        Exponents(self.0.iter().map(|a| a * k).collect())
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other - self`; caller checks [`divides`](Self::divides).
    pub fn quotient_of(&self, other: &Self) -> Self {
        Exponents(other.0.iter().zip(self.0.iter()).map(|(b, a)| b - a).collect())
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total().cmp(&other.total()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Monomial `x_1^{λ_1/p^e} ⋯ x_n^{λ_n/p^e}` in canonical level.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FracMonomial {
    exps: Exponents,
    level: u32,
    p: u32,
}

impl FracMonomial {
    pub fn new(exps: Exponents, level: u32, p: u32) -> Self {
        let (exps, level) = canonical_level(exps, level, p);
        FracMonomial { exps, level, p }
    }

    pub fn exps(&self) -> &Exponents {
        &self.exps
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> Rational64 {
        Rational64::new(self.exps.total() as i64, (self.p as i64).pow(self.level))
    }

    /// Exponent vector rewritten over the denominator `p^level`.
    pub fn lifted(&self, level: u32) -> Exponents {
        assert!(level >= self.level);
        self.exps.scaled(self.p.pow(level - self.level))
    }

    pub fn is_one(&self) -> bool {
        self.exps.total() == 0
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }
}

impl Ord for FracMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let level = self.level.max(other.level);
        self.lifted(level).cmp(&other.lifted(level))
    }
}

impl PartialOrd for FracMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FracMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.nvars());
        fmt_monomial(f, &self.exps, self.p.pow(self.level) as u64, &names)
    }
}

fn canonical_level(mut exps: Exponents, mut level: u32, p: u32) -> (Exponents, u32) {
    while level > 0 && exps.0.iter().all(|&x| x % p == 0) {
        for x in exps.0.iter_mut() {
            *x /= p;
        }
        level -= 1;
    }
    (exps, level)
}

pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn fmt_monomial(f: &mut fmt::Formatter<'_>, exps: &Exponents, den: u64, names: &[String]) -> fmt::Result {
    let mut first = true;
    for (i, &a) in exps.0.iter().enumerate() {
        if a == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        let g = num_integer::gcd(a as u64, den);
        let (n, d) = (a as u64 / g, den / g);
        match (n, d) {
            (1, 1) => write!(f, "{}", names[i])?,
            (_, 1) => write!(f, "{}^{}", names[i], n)?,
            _ => write!(f, "{}^({}/{})", names[i], n, d)?,
        }
    }
    if first {
        write!(f, "1")?;
    }
    Ok(())
}

/// Sparse polynomial over a [`FieldSpec`] in `nvars` variables at a common level.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FracPolynomial {
    field: FieldSpec,
    nvars: usize,
    level: u32,
    terms: BTreeMap<Exponents, FieldElement>,
}

impl FracPolynomial {
    pub fn zero(field: FieldSpec, nvars: usize) -> Self {
        FracPolynomial {
            field,
            nvars,
            level: 0,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: FieldElement, nvars: usize) -> Self {
        let mut f = Self::zero(c.spec(), nvars);
        if !c.is_zero() {
            f.terms.insert(Exponents::zero(nvars), c);
        }
        f
    }

    pub fn one(field: FieldSpec, nvars: usize) -> Self {
        Self::constant(FieldElement::one(field), nvars)
    }

    /// The variable `x_{i+1}` (0-based index).
    pub fn var(field: FieldSpec, nvars: usize, i: usize) -> Self {
        Self::term(
            FieldElement::one(field),
            FracMonomial::new(Exponents::unit(nvars, i), 0, field.characteristic()),
        )
    }

    /// All variables `x_1, …, x_n`.
    pub fn vars(field: FieldSpec, nvars: usize) -> Vec<Self> {
        (0..nvars).map(|i| Self::var(field, nvars, i)).collect()
    }

    pub fn term(c: FieldElement, mono: FracMonomial) -> Self {
        let mut f = Self::zero(c.spec(), mono.nvars());
        if !c.is_zero() {
            f.level = mono.level;
            f.terms.insert(mono.exps, c);
        }
        f
    }

    /// Builds a polynomial from terms at a given level, merging duplicates.
    pub fn from_terms<I>(field: FieldSpec, nvars: usize, level: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, FieldElement)>,
    {
        let mut out = Self::zero(field, nvars);
        out.level = level;
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            accumulate(&mut out.terms, e, c);
        }
        out.normalize();
        out
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Raw terms: exponent vectors over the denominator `p^level`, in increasing grlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &FieldElement)> {
        self.terms.iter()
    }

    /// Terms with their monomials in canonical form.
    pub fn monomials(&self) -> impl Iterator<Item = (FracMonomial, &FieldElement)> + '_ {
        let p = self.characteristic();
        self.terms
            .iter()
            .map(move |(e, c)| (FracMonomial::new(e.clone(), self.level, p), c))
    }

    pub fn coefficient(&self, mono: &FracMonomial) -> FieldElement {
        if mono.level > self.level {
            return FieldElement::zero(self.field);
        }
        let e = mono.lifted(self.level);
        self.terms
            .get(&e)
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(self.field))
    }

    /// The constant term as a field element, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<FieldElement> {
        match self.terms.len() {
            0 => Some(FieldElement::zero(self.field)),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                (e.total() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<(&Exponents, &FieldElement)> {
        self.terms.iter().next_back()
    }

    fn normalize(&mut self) {
        if self.terms.is_empty() {
            self.level = 0;
            return;
        }
        let p = self.characteristic();
        let mut shift = 0;
        while self.level > shift
            && self
                .terms
                .keys()
                .all(|e| e.0.iter().all(|&x| x % p.pow(shift + 1) == 0))
        {
            shift += 1;
        }
        if shift > 0 {
            let d = p.pow(shift);
            let old = std::mem::take(&mut self.terms);
            self.terms = old
                .into_iter()
                .map(|(e, c)| (Exponents(e.0.iter().map(|x| x / d).collect()), c))
                .collect();
            self.level -= shift;
        }
    }

    /// Terms rewritten at a higher level.
    fn lifted_terms(&self, level: u32) -> BTreeMap<Exponents, FieldElement> {
        if level == self.level {
            return self.terms.clone();
        }
        let k = self.characteristic().pow(level - self.level);
        self.terms.iter().map(|(e, c)| (e.scaled(k), c.clone())).collect()
    }

    fn assert_same_ring(&self, other: &Self) {
        assert!(
            self.field == other.field && self.nvars == other.nvars,
            "polynomials over different rings: {}[{} vars] vs {}[{} vars]",
            self.field,
            self.nvars,
            other.field,
            other.nvars
        );
    }

    /// Fallible compatibility check for user-supplied operands.
    pub fn check_same_ring(&self, other: &Self) -> Result<(), PolyError> {
        if self.field == other.field && self.nvars == other.nvars {
            Ok(())
        } else {
            Err(PolyError::RingMismatch(format!(
                "{}[{} vars] vs {}[{} vars]",
                self.field, self.nvars, other.field, other.nvars
            )))
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_ring(other);
        let level = self.level.max(other.level);
        let mut terms = self.lifted_terms(level);
        let k = self.characteristic().pow(level - other.level);
        for (e, c) in &other.terms {
            let e = if k == 1 { e.clone() } else { e.scaled(k) };
            accumulate(&mut terms, e, c.clone());
        }
        let mut out = FracPolynomial {
            field: self.field,
            nvars: self.nvars,
            level,
            terms,
        };
        out.normalize();
        out
    }

    pub fn neg(&self) -> Self {
        FracPolynomial {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero(self.field, self.nvars);
        }
        FracPolynomial {
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_ring(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field, self.nvars);
        }
        let level = self.level.max(other.level);
        let a = self.lifted_terms(level);
        let b = other.lifted_terms(level);
        let mut acc: HashMap<Exponents, FieldElement> = HashMap::with_capacity(a.len() * b.len());
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                let e = ea.add(eb);
                let c = ca * cb;
                match acc.entry(e) {
                    std::collections::hash_map::Entry::Occupied(mut o) => {
                        let s = o.get() + &c;
                        *o.get_mut() = s;
                    }
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(c);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let mut out = FracPolynomial {
            field: self.field,
            nvars: self.nvars,
            level,
            terms,
        };
        out.normalize();
        out
    }

    /// `self^k`, using Frobenius on the base-`p` digits of `k`.
    pub fn pow(&self, k: u64) -> Self {
        let p = self.characteristic() as u64;
        let mut acc = Self::one(self.field, self.nvars);
        let mut frob = self.clone();
        let mut k = k;
        while k > 0 {
            let digit = k % p;
            for _ in 0..digit {
                acc = acc.mul(&frob);
            }
            k /= p;
            if k > 0 {
                frob = frob.frobenius_power(1);
            }
        }
        acc
    }

    /// `self^{p^e}`: coefficients to the `p^e`-th power, exponents times `p^e`.
    pub fn frobenius_power(&self, e: u32) -> Self {
        if e == 0 || self.is_zero() {
            return self.clone();
        }
        let p = self.characteristic();
        let (level, k) = if self.level >= e {
            (self.level - e, 1)
        } else {
            (0, p.pow(e - self.level))
        };
        let terms = self
            .terms
            .iter()
            .map(|(ex, c)| (if k == 1 { ex.clone() } else { ex.scaled(k) }, c.frobenius(e)))
            .collect();
        FracPolynomial {
            field: self.field,
            nvars: self.nvars,
            level,
            terms,
        }
    }

    /// The unique `h` with `h^{p^e} = self`, viewed inside `S^{1/p^e}`.
    pub fn frobenius_root(&self, e: u32) -> Self {
        if e == 0 || self.is_zero() {
            return self.clone();
        }
        let mut out = FracPolynomial {
            field: self.field,
            nvars: self.nvars,
            level: self.level + e,
            terms: self.terms.iter().map(|(ex, c)| (ex.clone(), c.root(e))).collect(),
        };
        out.normalize();
        out
    }

    /// Evaluates a level-0 polynomial at the given polynomials (one per variable).
    pub fn compose(&self, values: &[FracPolynomial]) -> Result<Self, PolyError> {
        if self.level != 0 {
            return Err(PolyError::LevelMismatch(self.level));
        }
        if values.len() != self.nvars {
            return Err(PolyError::Shape(format!(
                "{} values for {} variables",
                values.len(),
                self.nvars
            )));
        }
        let (field, nvars) = match values.first() {
            Some(v) => (v.field, v.nvars),
            None => (self.field, 0),
        };
        let mut cache: HashMap<(usize, u32), FracPolynomial> = HashMap::new();
        let mut out = Self::zero(field, nvars);
        for (e, c) in &self.terms {
            let mut prod = Self::constant(c.clone(), nvars);
            for (j, &a) in e.0.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let pw = cache.entry((j, a)).or_insert_with(|| values[j].pow(a as u64));
                prod = FracPolynomial::mul(&prod, pw);
            }
            out = out.add(&prod);
        }
        Ok(out)
    }

    /// Linear substitution `x_j ↦ Σ_i g_{ij} x_i` (column convention) on a level-0 polynomial.
    pub fn substitute(&self, g: &Matrix) -> Result<Self, PolyError> {
        if self.level != 0 {
            return Err(PolyError::LevelMismatch(self.level));
        }
        if g.rows() != self.nvars || g.cols() != self.nvars {
            return Err(PolyError::Shape(format!(
                "{}x{} matrix on {} variables",
                g.rows(),
                g.cols(),
                self.nvars
            )));
        }
        if g.field() != self.field {
            return Err(PolyError::RingMismatch(format!("{} vs {}", g.field(), self.field)));
        }
        if g.rank() < self.nvars {
            return Err(PolyError::Singular);
        }
        self.compose(&linear_forms(g, self.nvars))
    }

    /// Action of a linear map on any level: `g(f) = (g(f^{p^e}))^{1/p^e}`.
    pub fn act(&self, g: &Matrix) -> Result<Self, PolyError> {
        let e = self.level;
        let base = self.frobenius_power(e);
        Ok(base.substitute(g)?.frobenius_root(e))
    }

    /// Formal partial derivative in variable `i` of a level-0 polynomial.
    pub fn derivative(&self, i: usize) -> Result<Self, PolyError> {
        if self.level != 0 {
            return Err(PolyError::LevelMismatch(self.level));
        }
        let terms = self.terms.iter().filter_map(|(e, c)| {
            let a = e.0[i];
            if a == 0 {
                return None;
            }
            let mut d = e.clone();
            d.0[i] -= 1;
            Some((d, c * &FieldElement::from_int(self.field, a as i64)))
        });
        Ok(Self::from_terms(self.field, self.nvars, 0, terms))
    }

    /// Exact quotient `self / divisor`; fails if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, PolyError> {
        self.check_same_ring(divisor)?;
        if divisor.is_zero() {
            return Err(PolyError::Field(crate::error::FieldError::DivisionByZero));
        }
        let level = self.level.max(divisor.level);
        let mut rem = self.lifted_terms(level);
        let div = divisor.lifted_terms(level);
        let (lead_e, lead_c) = div.iter().next_back().unwrap();
        let lead_inv = lead_c.inv()?;
        let mut quot = BTreeMap::new();
        while let Some((re, rc)) = rem.iter().next_back() {
            if !lead_e.divides(re) {
                return Err(PolyError::Inexact);
            }
            let qe = lead_e.quotient_of(re);
            let qc = rc * &lead_inv;
            for (de, dc) in &div {
                accumulate(&mut rem, de.add(&qe), -(dc * &qc));
            }
            quot.insert(qe, qc);
        }
        let mut out = FracPolynomial {
            field: self.field,
            nvars: self.nvars,
            level,
            terms: quot,
        };
        out.normalize();
        Ok(out)
    }

    /// Distinct total degrees of the monomials.
    pub fn degrees(&self) -> BTreeSet<Rational64> {
        let den = (self.characteristic() as i64).pow(self.level);
        self.terms
            .keys()
            .map(|e| Rational64::new(e.total() as i64, den))
            .collect()
    }

    /// Distinct weighted degrees, `Σ w_i λ_i / p^e`.
    pub fn weighted_degrees(&self, weights: &[u32]) -> BTreeSet<Rational64> {
        let den = (self.characteristic() as i64).pow(self.level);
        self.terms
            .keys()
            .map(|e| {
                let s: i64 = e.0.iter().zip(weights).map(|(&a, &w)| a as i64 * w as i64).sum();
                Rational64::new(s, den)
            })
            .collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degrees().len() <= 1
    }

    /// Greedy split `f = A·x_a^p + B·x_b^p + R` where no term of `R` is divisible
    /// by `x_a^p` or `x_b^p`; terms divisible by `x_a^p` go to `A` first.
    pub fn split_by_pth_powers(&self, a: usize, b: usize) -> Result<(Self, Self, Self), PolyError> {
        if self.level != 0 {
            return Err(PolyError::LevelMismatch(self.level));
        }
        let p = self.characteristic();
        let (mut ta, mut tb, mut tr) = (Vec::new(), Vec::new(), Vec::new());
        for (e, c) in &self.terms {
            if e.0[a] >= p {
                let mut q = e.clone();
                q.0[a] -= p;
                ta.push((q, c.clone()));
            } else if e.0[b] >= p {
                let mut q = e.clone();
                q.0[b] -= p;
                tb.push((q, c.clone()));
            } else {
                tr.push((e.clone(), c.clone()));
            }
        }
        Ok((
            Self::from_terms(self.field, self.nvars, 0, ta),
            Self::from_terms(self.field, self.nvars, 0, tb),
            Self::from_terms(self.field, self.nvars, 0, tr),
        ))
    }

    /// Re-embeds into a ring with more variables (new variables appended).
    pub fn extend_vars(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars);
        FracPolynomial {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut v = e.0.clone();
                    v.resize(nvars, 0);
                    (Exponents(v), c.clone())
                })
                .collect(),
            ..self.clone()
        }
    }

    /// Display using custom variable names.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        NamedPoly { poly: self, names }
    }

    /// Parses the polynomial text syntax in variables `x1..xn`.
    pub fn parse(field: FieldSpec, nvars: usize, text: &str) -> Result<Self, crate::error::ParseError> {
        let names = default_names(nvars);
        parse::parse_polynomial(field, &names, text)
    }
}

/// Columns of `g` as linear forms: `g·x_j = Σ_i g_{ij} x_i`.
pub fn linear_forms(g: &Matrix, nvars: usize) -> Vec<FracPolynomial> {
    let field = g.field();
    (0..g.cols())
        .map(|j| {
            let terms = (0..g.rows()).map(|i| (Exponents::unit(nvars, i), g.get(i, j).clone()));
            FracPolynomial::from_terms(field, nvars, 0, terms)
        })
        .collect()
}

fn accumulate(terms: &mut BTreeMap<Exponents, FieldElement>, e: Exponents, c: FieldElement) {
    if c.is_zero() {
        return;
    }
    match terms.entry(e) {
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
    }
}

/// Determinant of the `m×m` Moore matrix with `(i, j)` entry `f_j^{p^i}`.
pub fn moore_determinant(rows: &[FracPolynomial], m: usize) -> Result<FracPolynomial, PolyError> {
    if rows.len() < m || m == 0 {
        return Err(PolyError::Shape(format!("{} entries for Moore size {m}", rows.len())));
    }
    if let Some(f) = rows.iter().find(|f| f.level() != 0) {
        return Err(PolyError::LevelMismatch(f.level()));
    }
    let mut entries = Vec::with_capacity(m * m);
    for i in 0..m {
        for f in rows.iter().take(m) {
            entries.push(f.frobenius_power(i as u32));
        }
    }
    PolyMatrix::new(m, m, entries)?.determinant()
}

/// Monomial basis of the degree-`d` piece of `S^{1/p^e}` in `n` variables.
pub fn graded_piece(field: FieldSpec, nvars: usize, level: u32, d: Rational64) -> Result<Vec<FracMonomial>, PolyError> {
    let p = field.characteristic();
    let scaled = d * Rational64::from_integer((p as i64).pow(level));
    if !scaled.is_integer() || scaled < Rational64::from_integer(0) {
        return Err(PolyError::Shape(format!(
            "degree {d} is not in (1/{p}^{level})Z_{{>=0}}"
        )));
    }
    let total = *scaled.numer() as u32;
    let mut out: Vec<FracMonomial> = compositions(nvars, total)
        .into_iter()
        .map(|e| FracMonomial::new(e, level, p))
        .collect();
    out.sort_by(|a, b| b.cmp(a));
    Ok(out)
}

/// All exponent vectors of length `n` summing to `total`.
pub fn compositions(n: usize, total: u32) -> Vec<Exponents> {
    fn rec(n: usize, total: u32, prefix: &mut Vec<u32>, out: &mut Vec<Exponents>) {
        if prefix.len() + 1 == n {
            prefix.push(total);
            out.push(Exponents::from_slice(prefix));
            prefix.pop();
            return;
        }
        for a in 0..=total {
            prefix.push(a);
            rec(n, total - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if total == 0 {
            out.push(Exponents::zero(0));
        }
        return out;
    }
    rec(n, total, &mut Vec::with_capacity(n), &mut out);
    out
}

struct NamedPoly<'a> {
    poly: &'a FracPolynomial,
    names: &'a [String],
}

impl fmt::Display for NamedPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let poly = self.poly;
        if poly.is_zero() {
            return write!(f, "0");
        }
        let p = poly.characteristic();
        let den = (p as u64).pow(poly.level);
        let mut first = true;
        for (e, c) in poly.terms.iter().rev() {
            // Print prime-field coefficients in the balanced range.
            let (neg, mag) = match c.as_prime() {
                Some(v) if poly.field.is_prime_field() && v > p / 2 => {
                    (true, FieldElement::from_int(poly.field, (p - v) as i64))
                }
                _ => (false, c.clone()),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let is_const = e.total() == 0;
            if mag.is_one() && !is_const {
                fmt_monomial(f, e, den, self.names)?;
            } else {
                if mag.is_compound() {
                    write!(f, "({mag})")?;
                } else {
                    write!(f, "{mag}")?;
                }
                if !is_const {
                    write!(f, "*")?;
                    fmt_monomial(f, e, den, self.names)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for FracPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.nvars);
        fmt::Display::fmt(
            &NamedPoly {
                poly: self,
                names: &names,
            },
            f,
        )
    }
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&FracPolynomial> for &FracPolynomial {
            type Output = FracPolynomial;
            fn $method(self, rhs: &FracPolynomial) -> FracPolynomial {
                FracPolynomial::$method(self, rhs)
            }
        }
        impl $trait<FracPolynomial> for FracPolynomial {
            type Output = FracPolynomial;
            fn $method(self, rhs: FracPolynomial) -> FracPolynomial {
                FracPolynomial::$method(&self, &rhs)
            }
        }
        impl $trait<&FracPolynomial> for FracPolynomial {
            type Output = FracPolynomial;
            fn $method(self, rhs: &FracPolynomial) -> FracPolynomial {
                FracPolynomial::$method(&self, rhs)
            }
        }
    };
}

poly_binop!(Add, add);
poly_binop!(Sub, sub);
poly_binop!(Mul, mul);

impl Neg for &FracPolynomial {
    type Output = FracPolynomial;
    fn neg(self) -> FracPolynomial {
        FracPolynomial::neg(self)
    }
}

impl Neg for FracPolynomial {
    type Output = FracPolynomial;
    fn neg(self) -> FracPolynomial {
        FracPolynomial::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u32) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn parse(field: FieldSpec, n: usize, s: &str) -> FracPolynomial {
        FracPolynomial::parse(field, n, s).unwrap()
    }

    #[test]
    fn freshmans_dream_in_char_two() {
        let f = parse(fp(2), 2, "x1 + x2");
        assert_eq!(&f * &f, parse(fp(2), 2, "x1^2 + x2^2"));
    }

    #[test]
    fn fractional_exponents_collapse_level() {
        let f3 = fp(3);
        let a = parse(f3, 1, "x1^(1/3)");
        let b = parse(f3, 1, "x1^(2/3)");
        assert_eq!(a.level(), 1);
        let prod = &a * &b;
        assert_eq!(prod.level(), 0);
        assert_eq!(prod, FracPolynomial::var(f3, 1, 0));
    }

    #[test]
    fn frobenius_root_examples() {
        let f2 = fp(2);
        assert_eq!(parse(f2, 1, "x1^2").frobenius_root(1), parse(f2, 1, "x1"));
        let k = FieldSpec::perfect_rational(3).unwrap();
        let f = parse(k, 1, "t*x1^3");
        let r = f.frobenius_root(1);
        assert_eq!(r, parse(k, 1, "t^(1/3)*x1"));
        assert_eq!(
            r.degrees().into_iter().collect::<Vec<_>>(),
            vec![Rational64::from_integer(1)]
        );
        let g = parse(fp(3), 2, "(x1 + x2)^3");
        assert_eq!(g.frobenius_root(1), parse(fp(3), 2, "x1 + x2"));
    }

    #[test]
    fn moore_two_by_two() {
        let f2 = fp(2);
        let xs = FracPolynomial::vars(f2, 2);
        let d = moore_determinant(&xs, 2).unwrap();
        assert_eq!(d, parse(f2, 2, "x1*x2^2 + x1^2*x2"));
    }

    #[test]
    fn moore_three_by_three_has_six_terms() {
        let f2 = fp(2);
        let xs = FracPolynomial::vars(f2, 3);
        let d = moore_determinant(&xs, 3).unwrap();
        assert_eq!(d.len(), 6);
        assert_eq!(
            d.degrees().into_iter().collect::<Vec<_>>(),
            vec![Rational64::from_integer(7)]
        );
    }

    #[test]
    fn graded_pieces() {
        let f3 = fp(3);
        let piece = graded_piece(f3, 3, 1, Rational64::new(1, 3)).unwrap();
        let shown: Vec<String> = piece.iter().map(|m| m.to_string()).collect();
        assert_eq!(shown, ["x1^(1/3)", "x2^(1/3)", "x3^(1/3)"]);
        let piece = graded_piece(f3, 3, 0, Rational64::from_integer(0)).unwrap();
        assert_eq!(piece.len(), 1);
        assert!(piece[0].is_one());
        let piece = graded_piece(f3, 2, 0, Rational64::from_integer(2)).unwrap();
        let shown: Vec<String> = piece.iter().map(|m| m.to_string()).collect();
        assert_eq!(shown, ["x1^2", "x1*x2", "x2^2"]);
        assert!(graded_piece(f3, 2, 1, Rational64::new(1, 2)).is_err());
    }

    #[test]
    fn split_by_pth_powers_examples() {
        let f2 = fp(2);
        let w = parse(f2, 2, "x1*x2^2 - x1^2*x2");
        let (_, _, r) = w.pow(1).split_by_pth_powers(0, 1).unwrap();
        assert!(r.is_zero());
        let (a, b, r) = parse(f2, 2, "x1*x2").split_by_pth_powers(0, 1).unwrap();
        assert!(a.is_zero() && b.is_zero());
        assert_eq!(r, parse(f2, 2, "x1*x2"));
        let (a, b, r) = parse(f2, 2, "x1^2").split_by_pth_powers(0, 1).unwrap();
        assert_eq!(a, FracPolynomial::one(f2, 2));
        assert!(b.is_zero() && r.is_zero());
    }

    #[test]
    fn substitute_identity_and_unipotent() {
        let f3 = fp(3);
        let x3 = FracPolynomial::var(f3, 3, 2);
        assert_eq!(x3.substitute(&Matrix::identity(f3, 3)).unwrap(), x3);
        let sigma = Matrix::parse(f3, "[[1,1,0],[0,1,1],[0,0,1]]").unwrap();
        assert_eq!(x3.substitute(&sigma).unwrap(), parse(f3, 3, "x2 + x3"));
        let singular = Matrix::parse(f3, "[[1,1,0],[1,1,0],[0,0,1]]").unwrap();
        assert_eq!(x3.substitute(&singular), Err(PolyError::Singular));
        let frac = parse(f3, 3, "x3^(1/3)");
        assert_eq!(frac.substitute(&sigma), Err(PolyError::LevelMismatch(1)));
        assert_eq!(frac.act(&sigma).unwrap(), parse(f3, 3, "x2^(1/3) + x3^(1/3)"));
    }

    #[test]
    fn exact_division() {
        let f3 = fp(3);
        let a = parse(f3, 2, "x1^2 - x2^2");
        let b = parse(f3, 2, "x1 + x2");
        assert_eq!(a.exact_div(&b).unwrap(), parse(f3, 2, "x1 - x2"));
        assert_eq!(parse(f3, 2, "x1^2 + x2").exact_div(&b), Err(PolyError::Inexact));
    }

    #[test]
    fn display_balanced_signs() {
        let f = parse(fp(5), 2, "x1^2 - 2*x1*x2 + 3");
        assert_eq!(f.to_string(), "x1^2 - 2*x1*x2 - 2");
        let k = FieldSpec::perfect_rational(3).unwrap();
        let g = parse(k, 3, "(t+1)*x1^2*x3 - x2^(1/3)");
        assert_eq!(g.to_string(), "(t + 1)*x1^2*x3 + 2*x2^(1/3)");
    }

    #[test]
    fn derivative_in_char_p() {
        let f = parse(fp(3), 2, "x1^3 + x1^2*x2");
        assert_eq!(f.derivative(0).unwrap(), parse(fp(3), 2, "2*x1*x2"));
    }
}
