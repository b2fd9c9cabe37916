use crate::error::PolyError;
use crate::poly::FracPolynomial;

/// Rectangular matrix of polynomials sharing one ring and level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<FracPolynomial>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<FracPolynomial>) -> Result<Self, PolyError> {
        if entries.len() != rows * cols || entries.is_empty() {
            return Err(PolyError::Shape(format!("{} entries for {rows}x{cols}", entries.len())));
        }
        let first = &entries[0];
        for e in &entries[1..] {
            first.check_same_ring(e)?;
        }
        Ok(PolyMatrix { rows, cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FracPolynomial {
        &self.entries[i * self.cols + j]
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> PolyMatrix {
        let entries = (0..self.rows)
            .filter(|&i| i != skip_row)
            .flat_map(|i| {
                (0..self.cols)
                    .filter(move |&j| j != skip_col)
                    .map(move |j| self.get(i, j).clone())
            })
            .collect();
        PolyMatrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            entries,
        }
    }

    /// Determinant: Laplace expansion up to 4x4, Bareiss elimination above.
    pub fn determinant(&self) -> Result<FracPolynomial, PolyError> {
        if self.rows != self.cols {
            return Err(PolyError::Shape(format!("{}x{} is not square", self.rows, self.cols)));
        }
        if self.rows <= 4 {
            Ok(self.determinant_cofactor())
        } else {
            self.determinant_bareiss()
        }
    }

    /// Laplace expansion along the first row.
    pub fn determinant_cofactor(&self) -> FracPolynomial {
        let any = &self.entries[0];
        match self.rows {
            1 => self.get(0, 0).clone(),
            2 => &(self.get(0, 0) * self.get(1, 1)) - &(self.get(0, 1) * self.get(1, 0)),
            n => {
                let mut acc = FracPolynomial::zero(any.field(), any.nvars());
                for j in 0..n {
                    let a = self.get(0, j);
                    if a.is_zero() {
                        continue;
                    }
                    let term = a * &self.minor(0, j).determinant_cofactor();
                    acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                acc
            }
        }
    }

    /// Fraction-free Bareiss elimination; every division is exact.
    pub fn determinant_bareiss(&self) -> Result<FracPolynomial, PolyError> {
        let n = self.rows;
        let any = &self.entries[0];
        let mut m: Vec<Vec<FracPolynomial>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut sign_neg = false;
        let mut prev = FracPolynomial::one(any.field(), any.nvars());
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return Ok(FracPolynomial::zero(any.field(), any.nvars()));
                };
                m.swap(k, swap);
                sign_neg = !sign_neg;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num.exact_div(&prev)?;
                }
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        Ok(if sign_neg { -det } else { det })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    #[test]
    fn bareiss_agrees_with_cofactor() {
        let f = FieldSpec::prime(5).unwrap();
        let texts = [
            "x1",
            "x2 + 1",
            "x3",
            "2*x1*x2",
            "x2^2",
            "x1 - x3",
            "3",
            "x1",
            "x3 + x2",
            "x1^2",
            "x2*x3",
            "4*x2",
            "1",
            "x3^2 + x1",
            "x1",
            "x2",
        ];
        let entries: Vec<_> = texts.iter().map(|s| FracPolynomial::parse(f, 3, s).unwrap()).collect();
        let m = PolyMatrix::new(4, 4, entries).unwrap();
        assert_eq!(m.determinant_bareiss().unwrap(), m.determinant_cofactor());
        let m3 = PolyMatrix::new(
            3,
            3,
            texts[..9]
                .iter()
                .map(|s| FracPolynomial::parse(f, 3, s).unwrap())
                .collect(),
        )
        .unwrap();
        assert_eq!(m3.determinant_bareiss().unwrap(), m3.determinant_cofactor());
    }
}
