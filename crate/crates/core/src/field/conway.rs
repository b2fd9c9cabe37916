//! Fixed Conway polynomials defining the extension fields F_{p^n}.
//!
//! Coefficients are listed in ascending order and the polynomials are monic.

use super::unipoly::UniPoly;

const TABLE: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (7, 2, &[3, 6, 1]),
    (7, 3, &[4, 0, 6, 1]),
    (11, 2, &[2, 7, 1]),
    (13, 2, &[2, 12, 1]),
];

/// The Conway polynomial for `(p, n)`, if tabulated. `n = 1` is not an extension.
pub fn conway_polynomial(p: u32, n: u32) -> Option<UniPoly> {
    TABLE
        .iter()
        .find(|(tp, tn, _)| *tp == p && *tn == n)
        .map(|(_, _, c)| UniPoly::from_coeffs(c.to_vec()))
}

/// All tabulated `(p, n)` pairs.
pub fn tabulated() -> impl Iterator<Item = (u32, u32)> {
    TABLE.iter().map(|(p, n, _)| (*p, *n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime_factors(mut m: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut d = 2;
        while d * d <= m {
            if m.is_multiple_of(d) {
                out.push(d);
                while m.is_multiple_of(d) {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            out.push(m);
        }
        out
    }

    fn x_pow_mod(exp: u64, f: &UniPoly, p: u32) -> UniPoly {
        let mut acc = UniPoly::one();
        let mut base = UniPoly::monomial(1).rem(f, p);
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, p).rem(f, p);
            }
            base = base.mul(&base, p).rem(f, p);
            e >>= 1;
        }
        acc
    }

    // A primitive polynomial is irreducible, and the class of x has order p^n - 1.
    #[test]
    fn every_entry_is_primitive() {
        for (p, n) in tabulated() {
            let f = conway_polynomial(p, n).unwrap();
            assert_eq!(f.degree(), Some(n as usize));
            assert_eq!(f.leading(), 1);
            let order = (p as u64).pow(n) - 1;
            assert!(x_pow_mod(order, &f, p).is_one(), "x^(q-1) != 1 for ({p},{n})");
            for r in prime_factors(order) {
                assert!(
                    !x_pow_mod(order / r, &f, p).is_one(),
                    "x is not primitive mod Conway({p},{n})"
                );
            }
        }
    }
}
