//! Series in two variables `z` (size) and `x` (distance), stored as rows
//! indexed by the power of `x`.

use super::series::{Scalar, TruncatedSeries};

#[derive(Clone, Debug, PartialEq)]
pub struct BivariateSeries<T: Scalar = f64> {
    rows: Vec<TruncatedSeries<T>>,
}

impl<T: Scalar> BivariateSeries<T> {
    pub fn zeros(n_order: usize, k_order: usize) -> Self {
        Self {
            rows: vec![TruncatedSeries::zeros(n_order); k_order + 1],
        }
    }

    /// Rows `[x^k]` as z-series; all rows must share one order.
    pub fn from_rows(rows: Vec<TruncatedSeries<T>>) -> Self {
        assert!(!rows.is_empty());
        let n = rows[0].order();
        assert!(rows.iter().all(|r| r.order() == n));
        Self { rows }
    }

    /// A z-series placed at `x^0`.
    pub fn from_z(s: &TruncatedSeries<T>, k_order: usize) -> Self {
        let mut b = Self::zeros(s.order(), k_order);
        b.rows[0] = s.clone();
        b
    }

    pub fn n_order(&self) -> usize {
        self.rows[0].order()
    }

    pub fn k_order(&self) -> usize {
        self.rows.len() - 1
    }

    /// Coefficient of `z^n x^k`.
    pub fn coeff(&self, n: usize, k: usize) -> T {
        self.rows.get(k).map(|r| r.coeff(n)).unwrap_or_else(T::zero)
    }

    pub fn row(&self, k: usize) -> &TruncatedSeries<T> {
        &self.rows[k]
    }

    pub fn rows(&self) -> &[TruncatedSeries<T>] {
        &self.rows
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            rows: self.rows.iter().zip(&o.rows).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, c: T) -> Self {
        Self {
            rows: self.rows.iter().map(|r| r.scale(c)).collect(),
        }
    }

    /// Multiplication by `x^j`, truncated in `x`.
    pub fn shift_x(&self, j: usize) -> Self {
        let k = self.k_order();
        let n = self.n_order();
        let rows = (0..=k)
            .map(|i| {
                if i >= j {
                    self.rows[i - j].clone()
                } else {
                    TruncatedSeries::zeros(n)
                }
            })
            .collect();
        Self { rows }
    }

    /// Multiplication by a series in `z` only.
    pub fn mul_z(&self, s: &TruncatedSeries<T>) -> Self {
        Self {
            rows: self.rows.iter().map(|r| r.mul(s)).collect(),
        }
    }

    /// Product truncated independently in `z` and `x`.
    pub fn mul(&self, o: &Self) -> Self {
        let k = self.k_order().min(o.k_order());
        let n = self.n_order().min(o.n_order());
        let mut rows = vec![TruncatedSeries::zeros(n); k + 1];
        for i in 0..=k {
            for j in 0..=(k - i) {
                let p = self.rows[i].mul(&o.rows[j]);
                rows[i + j] = rows[i + j].add(&p);
            }
        }
        Self { rows }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_truncates_both_variables() {
        // (1 + x z)² = 1 + 2xz + x²z²
        let one = TruncatedSeries::<f64>::constant(1.0, 2);
        let z = TruncatedSeries::<f64>::z(2);
        let b = BivariateSeries::from_rows(vec![one, z.clone(), TruncatedSeries::zeros(2)]);
        let sq = b.mul(&b);
        assert_eq!(sq.coeff(0, 0), 1.0);
        assert_eq!(sq.coeff(1, 1), 2.0);
        assert_eq!(sq.coeff(2, 2), 1.0);
        let small = BivariateSeries::from_rows(vec![
            TruncatedSeries::constant(1.0, 2),
            z,
        ]);
        assert_eq!(small.mul(&small).k_order(), 1);
    }
}
