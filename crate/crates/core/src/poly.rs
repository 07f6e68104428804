//! Integer polynomials in `q`, used for Poincaré polynomials: the coefficient of
//! `q^k` is the Betti number `b_{2k}`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::Serialize;

/// Coefficients low degree first, no trailing zeros; the zero polynomial is empty
/// and encodes an empty Grassmannian.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct PoincarePoly(Vec<i64>);

impl PoincarePoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PoincarePoly(coeffs)
    }

    pub fn zero() -> Self {
        PoincarePoly(Vec::new())
    }

    pub fn one() -> Self {
        PoincarePoly(vec![1])
    }

    pub fn monomial(k: usize) -> Self {
        let mut c = vec![0; k + 1];
        c[k] = 1;
        PoincarePoly(c)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0; k];
        c.extend_from_slice(&self.0);
        PoincarePoly(c)
    }

    /// Coefficientwise `self <= other`.
    pub fn le(&self, other: &PoincarePoly) -> bool {
        (0..self.0.len().max(other.0.len())).all(|k| self.coeff(k) <= other.coeff(k))
    }

    pub fn eval(&self, x: i128) -> i128 {
        self.0.iter().rev().fold(0i128, |acc, &c| acc * x + c as i128)
    }

    /// Value at `q = 1`, the Euler characteristic.
    pub fn euler_characteristic(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Gaussian binomial `[n choose k]_q`, the Poincaré polynomial of `Gr(k, n)`.
    pub fn gaussian_binomial(n: usize, k: usize) -> Self {
        if k > n {
            return PoincarePoly::zero();
        }
        // Pascal rule [n,k] = [n-1,k-1] + q^k [n-1,k]
        let mut row = vec![PoincarePoly::one()];
        for m in 1..=n {
            let mut next = Vec::with_capacity(m + 1);
            for j in 0..=m {
                let left = if j > 0 { row[j - 1].clone() } else { PoincarePoly::zero() };
                let right = if j < m { row[j].shift(j) } else { PoincarePoly::zero() };
                next.push(&left + &right);
            }
            row = next;
        }
        row.swap_remove(k)
    }
}

impl Add for &PoincarePoly {
    type Output = PoincarePoly;
    fn add(self, rhs: &PoincarePoly) -> PoincarePoly {
        let len = self.0.len().max(rhs.0.len());
        PoincarePoly::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &PoincarePoly {
    type Output = PoincarePoly;
    fn sub(self, rhs: &PoincarePoly) -> PoincarePoly {
        let len = self.0.len().max(rhs.0.len());
        PoincarePoly::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &PoincarePoly {
    type Output = PoincarePoly;
    fn mul(self, rhs: &PoincarePoly) -> PoincarePoly {
        if self.is_zero() || rhs.is_zero() {
            return PoincarePoly::zero();
        }
        let mut c = vec![0; self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        PoincarePoly::new(c)
    }
}

impl std::iter::Sum for PoincarePoly {
    fn sum<I: Iterator<Item = PoincarePoly>>(iter: I) -> Self {
        iter.fold(PoincarePoly::zero(), |acc, p| &acc + &p)
    }
}

/// `1 + 2q + 2q^2 + q^3`; zero prints as `0`.
impl fmt::Display for PoincarePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            match (first, c < 0) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            match (k, mag) {
                (0, _) => write!(f, "{mag}")?,
                (_, 1) => {}
                _ => write!(f, "{mag}")?,
            }
            match k {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{k}")?,
            }
        }
        Ok(())
    }
}
