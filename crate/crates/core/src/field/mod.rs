//! Exact coefficient fields: F_p, F_{p^n}, and the perfection of F_p(t).
//!
//! Every field here is perfect, so p-th roots always exist and are unique.
//! Elements of the perfection of F_p(t) are stored as a reduced fraction
//! `r(s)` together with a level `e`, denoting `r(t^{1/p^e})`; the level is
//! kept minimal so structural equality is value equality.

pub mod conway;
pub mod unipoly;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::FieldError;
pub use unipoly::UniPoly;
use unipoly::{mod_inv, mod_pow};

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Which coefficient field a value lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldSpec {
    p: u32,
    degree: u32,
    transcendental: bool,
}

impl FieldSpec {
    pub fn new(p: u32, degree: u32, transcendental: bool) -> Result<Self, FieldError> {
        if !is_prime(p) || p >= 1 << 16 {
            return Err(FieldError::InvalidSpec(format!(
                "characteristic {p} is not a prime below 2^16"
            )));
        }
        if degree == 0 {
            return Err(FieldError::InvalidSpec("extension degree must be >= 1".into()));
        }
        if transcendental && degree != 1 {
            return Err(FieldError::InvalidSpec(
                "the perfection of F_p(t) is only supported over the prime field".into(),
            ));
        }
        if degree > 1 && conway::conway_polynomial(p, degree).is_none() {
            return Err(FieldError::InvalidSpec(format!(
                "no tabulated Conway polynomial for F_{{{p}^{degree}}}"
            )));
        }
        Ok(FieldSpec {
            p,
            degree,
            transcendental,
        })
    }

    pub fn prime(p: u32) -> Result<Self, FieldError> {
        Self::new(p, 1, false)
    }

    pub fn extension(p: u32, degree: u32) -> Result<Self, FieldError> {
        Self::new(p, degree, false)
    }

    /// The perfection of F_p(t).
    pub fn perfect_rational(p: u32) -> Result<Self, FieldError> {
        Self::new(p, 1, true)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_transcendental(&self) -> bool {
        self.transcendental
    }

    pub fn is_prime_field(&self) -> bool {
        self.degree == 1 && !self.transcendental
    }

    /// Number of elements for finite fields.
    pub fn order(&self) -> Option<u64> {
        if self.transcendental {
            None
        } else {
            Some((self.p as u64).pow(self.degree))
        }
    }

    /// Defining polynomial of the extension generator `w`.
    pub fn modulus(&self) -> Option<UniPoly> {
        if self.degree > 1 {
            conway::conway_polynomial(self.p, self.degree)
        } else {
            None
        }
    }

    /// Every element of F_p, in increasing order.
    pub fn prime_subfield(&self) -> Vec<FieldElement> {
        (0..self.p).map(|c| FieldElement::from_int(*self, c as i64)).collect()
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.transcendental {
            write!(f, "F_{}(t)", self.p)
        } else {
            write!(f, "F_{}", (self.p as u64).pow(self.degree))
        }
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    /// Accepts `F_q` (q a prime power), `GF(q)`, and `F_p(t)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || FieldError::InvalidSpec(format!("cannot parse field `{s}`"));
        let body = if let Some(rest) = s.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
            rest.to_string()
        } else if let Some(rest) = s.strip_prefix("F_") {
            rest.to_string()
        } else {
            return Err(bad());
        };
        let body = body.trim_matches(|c| c == '{' || c == '}');
        if let Some(pstr) = body.strip_suffix("(t)") {
            let p: u32 = pstr.trim().parse().map_err(|_| bad())?;
            return Self::perfect_rational(p);
        }
        let q: u64 = body.trim().parse().map_err(|_| bad())?;
        let mut p = 2u64;
        while p <= q && !q.is_multiple_of(p) {
            p += 1;
        }
        if p > q {
            return Err(bad());
        }
        let mut n = 0u32;
        let mut rest = q;
        while rest.is_multiple_of(p) {
            rest /= p;
            n += 1;
        }
        if rest != 1 {
            return Err(FieldError::InvalidSpec(format!("{q} is not a prime power")));
        }
        Self::new(p as u32, n, false)
    }
}

/// Element of the perfection of F_p(t): the value `num(s)/den(s)` at `s = t^{1/p^level}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Perfect {
    num: UniPoly,
    den: UniPoly,
    level: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Repr {
    Prime(u32),
    Ext(SmallVec<[u32; 4]>),
    Perfect(Perfect),
}

/// An exact element of one of the supported fields.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    spec: FieldSpec,
    repr: Repr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary arithmetic.
pub fn field_arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement, FieldError> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
        ArithOp::Div => a.try_div(b),
    }
}

fn lift_factor(p: u32, by: u32) -> usize {
    (p as usize)
        .checked_pow(by)
        .expect("perfection level difference too large")
}

fn normalize_perfect(p: u32, num: UniPoly, den: UniPoly, mut level: u32) -> Perfect {
    if num.is_zero() {
        return Perfect {
            num,
            den: UniPoly::one(),
            level: 0,
        };
    }
    let (mut num, mut den) = if den.is_one() {
        (num, den)
    } else {
        let g = num.gcd(&den, p);
        let (n, _) = num.div_rem(&g, p);
        let (d, _) = den.div_rem(&g, p);
        (n, d)
    };
    let lead = den.leading();
    if lead != 1 {
        let inv = mod_inv(lead, p);
        num = num.scale(inv, p);
        den = den.scale(inv, p);
    }
    let k = p as usize;
    while level > 0 && num.is_inflated_by(k) && den.is_inflated_by(k) {
        num = num.deflate(k);
        den = den.deflate(k);
        level -= 1;
    }
    Perfect { num, den, level }
}

impl Perfect {
    fn lift(&self, p: u32, level: u32) -> (UniPoly, UniPoly) {
        let k = lift_factor(p, level - self.level);
        (self.num.inflate(k), self.den.inflate(k))
    }
}

impl FieldElement {
    pub fn zero(spec: FieldSpec) -> Self {
        Self::from_int(spec, 0)
    }

    pub fn one(spec: FieldSpec) -> Self {
        Self::from_int(spec, 1)
    }

    /// Image of an integer under Z -> F_p -> field.
    pub fn from_int(spec: FieldSpec, value: i64) -> Self {
        let p = spec.p as i64;
        let c = value.rem_euclid(p) as u32;
        let repr = if spec.transcendental {
            Repr::Perfect(Perfect {
                num: UniPoly::constant(c),
                den: UniPoly::one(),
                level: 0,
            })
        } else if spec.degree > 1 {
            let mut coords: SmallVec<[u32; 4]> = SmallVec::from_elem(0, spec.degree as usize);
            coords[0] = c;
            Repr::Ext(coords)
        } else {
            Repr::Prime(c)
        };
        FieldElement { spec, repr }
    }

    /// The extension generator `w` (a root of the Conway polynomial).
    pub fn generator(spec: FieldSpec) -> Option<Self> {
        if spec.degree < 2 {
            return None;
        }
        let mut coords: SmallVec<[u32; 4]> = SmallVec::from_elem(0, spec.degree as usize);
        coords[1] = 1;
        Some(FieldElement {
            spec,
            repr: Repr::Ext(coords),
        })
    }

    /// `t^{num/p^level}` in the perfection of F_p(t).
    pub fn t_power(spec: FieldSpec, num: usize, level: u32) -> Option<Self> {
        if !spec.transcendental {
            return None;
        }
        let repr = normalize_perfect(spec.p, UniPoly::monomial(num), UniPoly::one(), level);
        Some(FieldElement {
            spec,
            repr: Repr::Perfect(repr),
        })
    }

    /// The transcendental `t`.
    pub fn t(spec: FieldSpec) -> Option<Self> {
        Self::t_power(spec, 1, 0)
    }

    /// Builds `num(t^{1/p^level}) / den(t^{1/p^level})` and normalizes it.
    pub fn from_fraction(spec: FieldSpec, num: UniPoly, den: UniPoly, level: u32) -> Result<Self, FieldError> {
        if !spec.transcendental {
            return Err(FieldError::InvalidSpec(format!("{spec} has no t")));
        }
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let p = spec.p;
        let num = UniPoly::from_coeffs(num.coeffs().iter().map(|c| c % p).collect());
        let den = UniPoly::from_coeffs(den.coeffs().iter().map(|c| c % p).collect());
        Ok(FieldElement {
            spec,
            repr: Repr::Perfect(normalize_perfect(p, num, den, level)),
        })
    }

    /// Builds an element of F_{p^n} from power-basis coordinates.
    pub fn from_coords(spec: FieldSpec, coords: &[u32]) -> Result<Self, FieldError> {
        if spec.transcendental || coords.len() != spec.degree as usize {
            return Err(FieldError::InvalidSpec(format!(
                "{spec} needs {} coordinates",
                spec.degree
            )));
        }
        if spec.degree == 1 {
            return Ok(FieldElement::from_int(spec, coords[0] as i64));
        }
        Ok(FieldElement {
            spec,
            repr: Repr::Ext(coords.iter().map(|c| c % spec.p).collect()),
        })
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn characteristic(&self) -> u32 {
        self.spec.p
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Prime(c) => *c == 0,
            Repr::Ext(v) => v.iter().all(|&c| c == 0),
            Repr::Perfect(r) => r.num.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Prime(c) => *c == 1,
            Repr::Ext(v) => v[0] == 1 && v[1..].iter().all(|&c| c == 0),
            Repr::Perfect(r) => r.num.is_one() && r.den.is_one(),
        }
    }

    /// The value as an integer in `0..p` when it lies in the prime field.
    pub fn as_prime(&self) -> Option<u32> {
        match &self.repr {
            Repr::Prime(c) => Some(*c),
            Repr::Ext(v) => v[1..].iter().all(|&c| c == 0).then_some(v[0]),
            Repr::Perfect(r) => (r.den.is_one() && r.num.degree().unwrap_or(0) == 0).then(|| r.num.leading()),
        }
    }

    /// Level `e` of a perfection element (0 for finite fields).
    pub fn level(&self) -> u32 {
        match &self.repr {
            Repr::Perfect(r) => r.level,
            _ => 0,
        }
    }

    fn check(&self, other: &Self) -> Result<(), FieldError> {
        if self.spec != other.spec {
            Err(FieldError::Mismatch(self.spec, other.spec))
        } else {
            Ok(())
        }
    }

    fn with_repr(&self, repr: Repr) -> Self {
        FieldElement { spec: self.spec, repr }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        let p = self.spec.p;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Prime(a), Repr::Prime(b)) => Repr::Prime((a + b) % p),
            (Repr::Ext(a), Repr::Ext(b)) => Repr::Ext(a.iter().zip(b.iter()).map(|(x, y)| (x + y) % p).collect()),
            (Repr::Perfect(a), Repr::Perfect(b)) => {
                let level = a.level.max(b.level);
                let (an, ad) = a.lift(p, level);
                let (bn, bd) = b.lift(p, level);
                if ad == bd {
                    Repr::Perfect(normalize_perfect(p, an.add(&bn, p), ad, level))
                } else {
                    let num = an.mul(&bd, p).add(&bn.mul(&ad, p), p);
                    Repr::Perfect(normalize_perfect(p, num, ad.mul(&bd, p), level))
                }
            }
            _ => unreachable!("equal fields share a representation"),
        };
        Ok(self.with_repr(repr))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        let p = self.spec.p;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Prime(a), Repr::Prime(b)) => Repr::Prime((*a as u64 * *b as u64 % p as u64) as u32),
            (Repr::Ext(a), Repr::Ext(b)) => {
                let m = self.spec.modulus().expect("extension modulus");
                let prod = UniPoly::from_coeffs(a.to_vec())
                    .mul(&UniPoly::from_coeffs(b.to_vec()), p)
                    .rem(&m, p);
                Repr::Ext(self.coords_from(&prod))
            }
            (Repr::Perfect(a), Repr::Perfect(b)) => {
                if a.num.is_zero() || b.num.is_zero() {
                    return Ok(Self::zero(self.spec));
                }
                let level = a.level.max(b.level);
                let (an, ad) = a.lift(p, level);
                let (bn, bd) = b.lift(p, level);
                Repr::Perfect(normalize_perfect(p, an.mul(&bn, p), ad.mul(&bd, p), level))
            }
            _ => unreachable!("equal fields share a representation"),
        };
        Ok(self.with_repr(repr))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        self.try_mul(&other.inv()?)
    }

    fn coords_from(&self, poly: &UniPoly) -> SmallVec<[u32; 4]> {
        let mut coords: SmallVec<[u32; 4]> = SmallVec::from_elem(0, self.spec.degree as usize);
        for (i, &c) in poly.coeffs().iter().enumerate() {
            coords[i] = c;
        }
        coords
    }

    pub fn neg(&self) -> Self {
        let p = self.spec.p;
        let repr = match &self.repr {
            Repr::Prime(a) => Repr::Prime((p - a) % p),
            Repr::Ext(v) => Repr::Ext(v.iter().map(|&c| (p - c) % p).collect()),
            Repr::Perfect(r) => Repr::Perfect(Perfect {
                num: r.num.neg(p),
                den: r.den.clone(),
                level: r.level,
            }),
        };
        self.with_repr(repr)
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let p = self.spec.p;
        let repr = match &self.repr {
            Repr::Prime(a) => Repr::Prime(mod_inv(*a, p)),
            Repr::Ext(v) => {
                let m = self.spec.modulus().expect("extension modulus");
                let inv = UniPoly::from_coeffs(v.to_vec())
                    .inverse_mod(&m, p)
                    .ok_or(FieldError::DivisionByZero)?;
                Repr::Ext(self.coords_from(&inv))
            }
            Repr::Perfect(r) => Repr::Perfect(normalize_perfect(p, r.den.clone(), r.num.clone(), r.level)),
        };
        Ok(self.with_repr(repr))
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        if let Repr::Prime(a) = self.repr {
            return self.with_repr(Repr::Prime(mod_pow(a, exp, self.spec.p)));
        }
        let mut acc = Self::one(self.spec);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self^p`.
    pub fn pth_power(&self) -> Self {
        let p = self.spec.p;
        match &self.repr {
            Repr::Prime(_) => self.clone(),
            Repr::Ext(_) => self.pow(p as u64),
            Repr::Perfect(r) => {
                let repr = if r.level > 0 {
                    Perfect {
                        num: r.num.clone(),
                        den: r.den.clone(),
                        level: r.level - 1,
                    }
                } else {
                    let k = p as usize;
                    Perfect {
                        num: r.num.inflate(k),
                        den: r.den.inflate(k),
                        level: 0,
                    }
                };
                self.with_repr(Repr::Perfect(repr))
            }
        }
    }

    /// The unique `x` with `x^p = self`.
    pub fn pth_root(&self) -> Self {
        let p = self.spec.p;
        match &self.repr {
            Repr::Prime(_) => self.clone(),
            Repr::Ext(_) => {
                let mut x = self.clone();
                for _ in 1..self.spec.degree {
                    x = x.pth_power();
                }
                x
            }
            Repr::Perfect(r) => self.with_repr(Repr::Perfect(normalize_perfect(
                p,
                r.num.clone(),
                r.den.clone(),
                r.level + 1,
            ))),
        }
    }

    /// `self^{p^e}`.
    pub fn frobenius(&self, e: u32) -> Self {
        (0..e).fold(self.clone(), |x, _| x.pth_power())
    }

    /// The unique `p^e`-th root.
    pub fn root(&self, e: u32) -> Self {
        match &self.repr {
            Repr::Prime(_) => self.clone(),
            Repr::Ext(_) => {
                let n = self.spec.degree;
                // x -> x^{p^{n - (e mod n)}} inverts e-fold Frobenius.
                let steps = (n - e % n) % n;
                self.frobenius(steps)
            }
            Repr::Perfect(r) => self.with_repr(Repr::Perfect(normalize_perfect(
                self.spec.p,
                r.num.clone(),
                r.den.clone(),
                r.level + e,
            ))),
        }
    }

    /// Parses the textual element syntax (`2`, `w+1`, `t^(1/3)`, `(t+1)/t`).
    pub fn parse(spec: FieldSpec, text: &str) -> Result<Self, crate::error::ParseError> {
        crate::poly::parse::parse_element(spec, text)
    }

    /// Whether printing needs parentheses when used as a factor.
    pub(crate) fn is_compound(&self) -> bool {
        let s = self.to_string();
        s.contains(['+', '/', ' ']) || s[1..].contains('-')
    }
}

fn fmt_rational_exponent(f: &mut fmt::Formatter<'_>, sym: &str, num: usize, den: usize) -> fmt::Result {
    let g = num_integer::gcd(num, den);
    let (a, b) = (num / g, den / g);
    match (a, b) {
        (0, _) => Ok(()),
        (1, 1) => write!(f, "{sym}"),
        (_, 1) => write!(f, "{sym}^{a}"),
        _ => write!(f, "{sym}^({a}/{b})"),
    }
}

fn fmt_unipoly(f: &mut fmt::Formatter<'_>, poly: &UniPoly, sym: &str, den: usize) -> fmt::Result {
    if poly.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (i, &c) in poly.coeffs().iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        if i == 0 {
            write!(f, "{c}")?;
        } else {
            if c != 1 {
                write!(f, "{c}*")?;
            }
            fmt_rational_exponent(f, sym, i, den)?;
        }
    }
    Ok(())
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Prime(c) => write!(f, "{c}"),
            Repr::Ext(v) => fmt_unipoly(f, &UniPoly::from_coeffs(v.to_vec()), "w", 1),
            Repr::Perfect(r) => {
                let den = lift_factor(self.spec.p, r.level);
                let single = |u: &UniPoly| u.coeffs().iter().filter(|&&c| c != 0).count() <= 1;
                if r.den.is_one() {
                    return fmt_unipoly(f, &r.num, "t", den);
                }
                if single(&r.num) {
                    fmt_unipoly(f, &r.num, "t", den)?;
                } else {
                    write!(f, "(")?;
                    fmt_unipoly(f, &r.num, "t", den)?;
                    write!(f, ")")?;
                }
                write!(f, "/")?;
                if single(&r.den) && r.den.leading() == 1 {
                    fmt_unipoly(f, &r.den, "t", den)
                } else {
                    write!(f, "(")?;
                    fmt_unipoly(f, &r.den, "t", den)?;
                    write!(f, ")")
                }
            }
        }
    }
}

impl Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            /// Panics on mixed fields (or division by zero); use the checked form to recover.
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(&self)
    }
}
