use frobsplit_core::field::unipoly::UniPoly;
use frobsplit_core::poly::{moore_determinant, Exponents};
use frobsplit_core::{FieldElement, FieldSpec, FracPolynomial, Matrix, MatrixGroup};
use proptest::prelude::*;

fn fields() -> Vec<FieldSpec> {
    vec![
        FieldSpec::prime(2).unwrap(),
        FieldSpec::prime(3).unwrap(),
        FieldSpec::prime(7).unwrap(),
        FieldSpec::extension(2, 2).unwrap(),
        FieldSpec::extension(2, 3).unwrap(),
        FieldSpec::extension(3, 2).unwrap(),
        FieldSpec::extension(5, 2).unwrap(),
        FieldSpec::perfect_rational(2).unwrap(),
        FieldSpec::perfect_rational(3).unwrap(),
        FieldSpec::perfect_rational(5).unwrap(),
    ]
}

/// Builds an element from raw integers; the den is bumped to stay nonzero.
fn element(spec: FieldSpec, num: &[u32], den: &[u32], level: u32) -> FieldElement {
    if spec.is_transcendental() {
        let mut d = den.to_vec();
        if d.iter().all(|c| c % spec.characteristic() == 0) {
            d.push(1);
        }
        FieldElement::from_fraction(spec, UniPoly::from_coeffs(num.to_vec()), UniPoly::from_coeffs(d), level).unwrap()
    } else if spec.degree() > 1 {
        let mut c: Vec<u32> = num
            .iter()
            .copied()
            .chain(std::iter::repeat(0))
            .take(spec.degree() as usize)
            .collect();
        for x in &mut c {
            *x %= spec.characteristic();
        }
        FieldElement::from_coords(spec, &c).unwrap()
    } else {
        FieldElement::from_int(spec, num.first().copied().unwrap_or(0) as i64)
    }
}

fn any_element() -> impl Strategy<Value = FieldElement> {
    (
        0..fields().len(),
        prop::collection::vec(0u32..7, 0..4),
        prop::collection::vec(0u32..7, 0..3),
        0u32..3,
    )
        .prop_map(|(i, num, den, level)| element(fields()[i], &num, &den, level))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn root_and_power_round_trip(x in any_element(), e in 0u32..3) {
        prop_assert_eq!(x.pth_power().pth_root(), x.clone());
        prop_assert_eq!(x.pth_root().pth_power(), x.clone());
        prop_assert_eq!(x.frobenius(e).root(e), x.clone());
        prop_assert_eq!(x.pth_power(), x.pow(x.spec().characteristic() as u64));
    }
}

proptest! {
    #[test]
    fn normalization_is_idempotent(
        num in prop::collection::vec(0u32..3, 0..4),
        den in prop::collection::vec(0u32..3, 0..3),
        common in prop::collection::vec(0u32..3, 1..3),
        level in 0u32..3,
    ) {
        let spec = FieldSpec::perfect_rational(3).unwrap();
        let x = element(spec, &num, &den, level);
        let mut c = common.clone();
        c.push(1);
        let c = UniPoly::from_coeffs(c);
        let mut d = den.clone();
        if d.iter().all(|v| v % 3 == 0) {
            d.push(1);
        }
        let scaled = FieldElement::from_fraction(
            spec,
            UniPoly::from_coeffs(num.clone()).mul(&c, 3),
            UniPoly::from_coeffs(d).mul(&c, 3),
            level,
        ).unwrap();
        prop_assert_eq!(&scaled, &x);
        let again = x.pth_power().pth_root();
        prop_assert_eq!(again.level(), x.level());
    }

    #[test]
    fn element_text_round_trip(x in any_element()) {
        let text = x.to_string();
        let back = FieldElement::parse(x.spec(), &text).unwrap();
        prop_assert_eq!(back, x);
    }
}

fn poly_strategy(field: FieldSpec, n: usize, level: u32) -> impl Strategy<Value = FracPolynomial> {
    let p = field.characteristic();
    prop::collection::vec((prop::collection::vec(0u32..5, n), 1u32..p), 0..6).prop_map(move |terms| {
        let terms = terms
            .into_iter()
            .map(|(e, c)| (Exponents::from_slice(&e), FieldElement::from_int(field, c as i64)));
        FracPolynomial::from_terms(field, n, level, terms)
    })
}

fn invertible(field: FieldSpec, entries: &[i64]) -> Matrix {
    let n = 3;
    let m = Matrix::from_rows(
        field,
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| FieldElement::from_int(field, entries[i * n + j]))
                    .collect()
            })
            .collect(),
    )
    .unwrap();
    if m.rank() == n {
        m
    } else {
        Matrix::identity(field, n)
    }
}

proptest! {
    #[test]
    fn substitution_is_multiplicative(
        f in poly_strategy(FieldSpec::prime(5).unwrap(), 3, 0),
        g in poly_strategy(FieldSpec::prime(5).unwrap(), 3, 0),
        a in prop::collection::vec(0i64..5, 9),
        b in prop::collection::vec(0i64..5, 9),
    ) {
        let field = FieldSpec::prime(5).unwrap();
        let (ma, mb) = (invertible(field, &a), invertible(field, &b));
        let fg = f.mul(&g).substitute(&ma).unwrap();
        prop_assert_eq!(fg, f.substitute(&ma).unwrap().mul(&g.substitute(&ma).unwrap()));
        let twice = f.substitute(&ma).unwrap().substitute(&mb).unwrap();
        prop_assert_eq!(twice, f.substitute(&mb.mul(&ma)).unwrap());
    }

    #[test]
    fn fractional_action_is_multiplicative(
        f in poly_strategy(FieldSpec::prime(3).unwrap(), 3, 1),
        g in poly_strategy(FieldSpec::prime(3).unwrap(), 3, 2),
        a in prop::collection::vec(0i64..3, 9),
    ) {
        let m = invertible(FieldSpec::prime(3).unwrap(), &a);
        prop_assert_eq!(f.mul(&g).act(&m).unwrap(), f.act(&m).unwrap().mul(&g.act(&m).unwrap()));
    }

    #[test]
    fn split_reassembles(f in poly_strategy(FieldSpec::prime(2).unwrap(), 3, 0)) {
        let (a, b, r) = f.split_by_pth_powers(0, 1).unwrap();
        let x = FracPolynomial::vars(f.field(), 3);
        let back = &(&a.mul(&x[0].pow(2)) + &b.mul(&x[1].pow(2))) + &r;
        prop_assert_eq!(back, f);
        prop_assert!(r.terms().all(|(e, _)| e.as_slice()[0] < 2 && e.as_slice()[1] < 2));
    }

    #[test]
    fn polynomial_text_round_trip(
        f in poly_strategy(FieldSpec::prime(3).unwrap(), 3, 2),
        g in poly_strategy(FieldSpec::perfect_rational(3).unwrap(), 2, 1),
    ) {
        prop_assert_eq!(FracPolynomial::parse(f.field(), 3, &f.to_string()).unwrap(), f);
        let tg = g.scale(&FieldElement::t(g.field()).unwrap().root(1));
        prop_assert_eq!(FracPolynomial::parse(tg.field(), 2, &tg.to_string()).unwrap(), tg);
    }
}

/// Upper unitriangular `3 x 3` matrices with entries `c + d t^{1/3^l}`.
fn unitriangular(field: FieldSpec, v: &[(u32, u32, u32)]) -> Matrix {
    let mut m = Matrix::identity(field, 3);
    let t = FieldElement::t(field).unwrap();
    for (k, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
        let (c, d, l) = v[k];
        let x = &FieldElement::from_int(field, c as i64) + &(&FieldElement::from_int(field, d as i64) * &t.root(l));
        m.set(i, j, x);
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn twist_is_functorial(
        g1 in prop::collection::vec((0u32..3, 0u32..3, 0u32..2), 3),
        g2 in prop::collection::vec((0u32..3, 0u32..3, 0u32..2), 3),
        e in 0u32..3,
        e2 in 0u32..3,
    ) {
        let field = FieldSpec::perfect_rational(3).unwrap();
        let g = MatrixGroup::generate(field, 3, vec![unitriangular(field, &g1), unitriangular(field, &g2)], 10_000).unwrap();
        let zero = g.twist(0);
        prop_assert_eq!(zero.elements(), g.elements());
        let composed = g.twist(e).twist(e2);
        let direct = g.twist(e + e2);
        prop_assert_eq!(composed.elements(), direct.elements());
        prop_assert_eq!(direct.cayley_table(), g.cayley_table());
        for (x, y) in g.elements().iter().zip(direct.elements()) {
            let back = y.map(|c| c.frobenius(e + e2));
            prop_assert_eq!(&back, x);
        }
    }

    #[test]
    fn twist_over_extension_fields(
        d1 in prop::collection::vec(1u32..9, 2),
        d2 in prop::collection::vec(1u32..9, 2),
        e in 0u32..4,
    ) {
        let field = FieldSpec::extension(3, 2).unwrap();
        let w = FieldElement::generator(field).unwrap();
        let diag = |d: &[u32]| {
            let mut m = Matrix::zeros(field, 2, 2);
            m.set(0, 0, w.pow(d[0] as u64));
            m.set(1, 1, w.pow(d[1] as u64));
            m
        };
        let swap = Matrix::from_ints(field, &[&[0, 1], &[1, 0]]);
        let g = MatrixGroup::generate(field, 2, vec![diag(&d1), diag(&d2), swap], 10_000).unwrap();
        let (stepped, direct) = (g.twist(e).twist(1), g.twist(e + 1));
        prop_assert_eq!(stepped.elements(), direct.elements());
        prop_assert_eq!(g.twist(e).cayley_table(), g.cayley_table());
        // F_9 has Frobenius of order 2.
        let two = g.twist(2);
        prop_assert_eq!(two.elements(), g.elements());
    }
}

#[test]
fn moore_quotient_is_orbit_product() {
    for p in [2u32, 3] {
        let field = FieldSpec::prime(p).unwrap();
        for m in [2usize, 3] {
            let x = FracPolynomial::vars(field, m);
            let top = moore_determinant(&x, m).unwrap();
            let bottom = moore_determinant(&x[..m - 1], m - 1).unwrap();
            let quotient = top.exact_div(&bottom).unwrap();
            // All x_m + Σ a_i x_i with a ∈ F_p^{m-1}.
            let mut product = FracPolynomial::one(field, m);
            for code in 0..p.pow(m as u32 - 1) {
                let mut l = x[m - 1].clone();
                let mut c = code;
                for xi in &x[..m - 1] {
                    l = &l + &xi.scale(&FieldElement::from_int(field, (c % p) as i64));
                    c /= p;
                }
                product = product.mul(&l);
            }
            assert_eq!(quotient, product, "p = {p}, m = {m}");
        }
    }
}
