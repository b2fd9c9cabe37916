//! Built-in groups covering the worked examples.

use crate::error::FieldError;
use crate::field::{conway, FieldElement, FieldSpec};
use crate::groups::io::GroupInput;
use crate::groups::Word;
use crate::linalg::Matrix;

/// Names accepted by [`builtin`].
pub const NAMES: &[&str] = &[
    "a3",
    "cyclic-<p>",
    "z4-f2",
    "veronese-<n>",
    "counterexample",
    "hypersurface-<p>",
];

fn cyclic_shift(field: FieldSpec, n: usize) -> Matrix {
    // x_j -> x_{j+1}, indices mod n: column j has its 1 in row j+1.
    let mut m = Matrix::zeros(field, n, n);
    for j in 0..n {
        m.set((j + 1) % n, j, FieldElement::one(field));
    }
    m
}

fn single(name: &str, field: FieldSpec, g: Matrix, order: i64) -> GroupInput {
    GroupInput {
        name: Some(name.into()),
        field,
        generators: vec![g],
        names: vec!["s".into()],
        relators: vec![Word::new(vec![(0, order)])],
    }
}

fn commuting_presentation(k: usize, order: i64) -> Vec<Word> {
    let mut rels: Vec<Word> = (0..k).map(|i| Word::new(vec![(i, order)])).collect();
    for i in 0..k {
        for j in i + 1..k {
            rels.push(Word::new(vec![(i, 1), (j, 1), (i, -1), (j, -1)]));
        }
    }
    rels
}

/// `A_3` permuting `x1 -> x2 -> x3 -> x1` over `F_3`.
pub fn a3() -> GroupInput {
    let f = FieldSpec::prime(3).unwrap();
    single("a3", f, cyclic_shift(f, 3), 3)
}

/// Cyclic group of order `p` permuting `p` variables over `F_p`.
pub fn cyclic(p: u32) -> Result<GroupInput, FieldError> {
    let f = FieldSpec::prime(p)?;
    Ok(single(&format!("cyclic-{p}"), f, cyclic_shift(f, p as usize), p as i64))
}

/// Cyclic group of order 4 permuting four variables over `F_2`.
pub fn z4_f2() -> GroupInput {
    let f = FieldSpec::prime(2).unwrap();
    single("z4-f2", f, cyclic_shift(f, 4), 4)
}

/// `<diag(ζ, ζ)>` for a primitive `n`-th root of unity `ζ` in the smallest
/// tabulated `F_{p^k}` containing one.
pub fn veronese(n: u32, p: u32) -> Result<GroupInput, FieldError> {
    if n < 2 || n.is_multiple_of(p) {
        return Err(FieldError::InvalidSpec(format!("need n >= 2 prime to {p}, got {n}")));
    }
    let k = (1..=12u32)
        .find(|&k| (p as u64).pow(k) % n as u64 == 1)
        .ok_or_else(|| FieldError::InvalidSpec(format!("no small extension of F_{p} has a primitive {n}-th root")))?;
    let field = if k == 1 {
        FieldSpec::prime(p)?
    } else {
        if conway::conway_polynomial(p, k).is_none() {
            return Err(FieldError::InvalidSpec(format!("F_{p}^{k} is not tabulated")));
        }
        FieldSpec::extension(p, k)?
    };
    let order = field.order().unwrap() - 1;
    let zeta = if k == 1 {
        // Search for an element of exact order n.
        (2..p as i64)
            .map(|a| FieldElement::from_int(field, a))
            .map(|a| a.pow(order / n as u64))
            .find(|z| (1..n).all(|d| !z.pow(d as u64).is_one()))
            .ok_or_else(|| FieldError::InvalidSpec(format!("F_{p} has no primitive {n}-th root")))?
    } else {
        FieldElement::generator(field).unwrap().pow(order / n as u64)
    };
    let zero = FieldElement::zero(field);
    let g = Matrix::from_rows(field, vec![vec![zeta.clone(), zero.clone()], vec![zero, zeta]]).unwrap();
    Ok(single(&format!("veronese-{n}"), field, g, n as i64))
}

/// The two unipotent generators `I + N` and `I + αN` over the perfection of `F_3(t)`.
pub fn counterexample(alpha: &FieldElement) -> GroupInput {
    let f = alpha.spec();
    let one = FieldElement::one(f);
    let zero = FieldElement::zero(f);
    let unip = |a: &FieldElement| {
        Matrix::from_rows(
            f,
            vec![
                vec![one.clone(), a.clone(), zero.clone()],
                vec![zero.clone(), one.clone(), a.clone()],
                vec![zero.clone(), zero.clone(), one.clone()],
            ],
        )
        .unwrap()
    };
    GroupInput {
        name: Some("counterexample".into()),
        field: f,
        generators: vec![unip(&one), unip(alpha)],
        names: vec!["sigma".into(), "tau".into()],
        relators: commuting_presentation(2, 3),
    }
}

/// The default counterexample with `α = t`.
pub fn counterexample_t() -> GroupInput {
    let f = FieldSpec::perfect_rational(3).unwrap();
    counterexample(&FieldElement::t(f).unwrap())
}

/// Three commuting unipotent `4 x 4` generators over `F_p` (order `p^3`).
pub fn hypersurface(p: u32) -> Result<GroupInput, FieldError> {
    let f = FieldSpec::prime(p)?;
    let gens = vec![
        Matrix::from_ints(f, &[&[1, 0, 1, 0], &[0, 1, 0, 1], &[0, 0, 1, 0], &[0, 0, 0, 1]]),
        Matrix::from_ints(f, &[&[1, 0, 0, 1], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]),
        Matrix::from_ints(f, &[&[1, 0, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]),
    ];
    Ok(GroupInput {
        name: Some(format!("hypersurface-{p}")),
        field: f,
        generators: gens,
        names: vec!["g1".into(), "g2".into(), "g3".into()],
        relators: commuting_presentation(3, p as i64),
    })
}

/// Looks up a built-in by name; `p` fills in a missing parameter.
pub fn builtin(name: &str, p: Option<u32>) -> Result<GroupInput, FieldError> {
    let param = |prefix: &str| -> Result<Option<u32>, FieldError> {
        match name.strip_prefix(prefix) {
            None => Ok(None),
            Some("") => Ok(p),
            Some(rest) => rest
                .strip_prefix('-')
                .and_then(|s| s.parse().ok())
                .map(Some)
                .ok_or_else(|| FieldError::InvalidSpec(format!("bad parameter in `{name}`"))),
        }
    };
    let missing = || FieldError::InvalidSpec(format!("`{name}` needs a parameter (e.g. `{name}-3` or --p)"));
    match name {
        "a3" => return Ok(a3()),
        "z4-f2" | "z4" => return Ok(z4_f2()),
        "counterexample" => return Ok(counterexample_t()),
        _ => {}
    }
    if let Some(k) = param("cyclic")? {
        return cyclic(k);
    }
    if name.starts_with("cyclic") {
        return Err(missing());
    }
    if let Some(n) = param("veronese")? {
        return veronese(n, 2);
    }
    if name.starts_with("veronese") {
        return Err(missing());
    }
    if let Some(k) = param("hypersurface")? {
        return hypersurface(k);
    }
    if name.starts_with("hypersurface") {
        return Err(missing());
    }
    Err(FieldError::InvalidSpec(format!(
        "unknown builtin `{name}`; available: {}",
        NAMES.join(", ")
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        let cases = [
            (a3(), 3),
            (z4_f2(), 4),
            (cyclic(5).unwrap(), 5),
            (veronese(3, 2).unwrap(), 3),
            (veronese(5, 2).unwrap(), 5),
            (counterexample_t(), 9),
            (hypersurface(2).unwrap(), 8),
            (hypersurface(3).unwrap(), 27),
        ];
        for (input, order) in cases {
            assert_eq!(input.build(1000).unwrap().order(), order, "{:?}", input.name);
        }
    }

    #[test]
    fn lookup() {
        assert_eq!(builtin("veronese-3", None).unwrap().field.to_string(), "F_4");
        assert_eq!(builtin("cyclic", Some(3)).unwrap().dimension(), 3);
        assert_eq!(builtin("hypersurface-5", None).unwrap().field.characteristic(), 5);
        assert!(builtin("cyclic", None).is_err());
        assert!(builtin("nope", None).is_err());
        assert!(builtin("veronese-2", None).is_err());
    }
}
