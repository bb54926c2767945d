//! Truncated power series with exact rational coefficients.
//!
//! A [`Series`] always stores ordinary coefficients `c(n) = [x^n]`, even
//! when it stands for an exponential generating function. The EGF view
//! `a(n) = n!·c(n)` is produced on demand by [`Series::egf_coefficient`].

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::numbers::factorial;
use crate::{Error, Execution, Result};

/// Arbitrary-precision fraction, always kept in lowest terms with a
/// positive denominator. Zero is `0/1`.
pub type ExactRational = BigRational;

/// Whether a series is read as `Σ c(n) x^n` or as `Σ a(n) x^n / n!`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesKind {
    Ordinary,
    Exponential,
}

impl fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesKind::Ordinary => f.write_str("ordinary"),
            SeriesKind::Exponential => f.write_str("exponential"),
        }
    }
}

/// A power series truncated after `x^order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<ExactRational>,
    kind: SeriesKind,
}

impl Series {
    /// Builds a series from its ordinary coefficients `c(0..=N)`.
    pub fn new(coeffs: Vec<ExactRational>, kind: SeriesKind) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "a series needs at least the constant coefficient".into(),
            ));
        }
        Ok(Self { coeffs, kind })
    }

    pub fn zero(order: usize, kind: SeriesKind) -> Self {
        Self {
            coeffs: vec![ExactRational::zero(); order + 1],
            kind,
        }
    }

    pub fn one(order: usize, kind: SeriesKind) -> Self {
        Self::monomial(0, order, kind)
    }

    /// `x^power` truncated to `order` (the zero series if `power > order`).
    pub fn monomial(power: usize, order: usize, kind: SeriesKind) -> Self {
        let mut s = Self::zero(order, kind);
        if power <= order {
            s.coeffs[power] = ExactRational::one();
        }
        s
    }

    /// Exponential series from EGF coefficients `a(0..=N)`, i.e. `c(n) = a(n)/n!`.
    pub fn from_egf<I, T>(egf: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<ExactRational>,
    {
        let coeffs = egf
            .into_iter()
            .enumerate()
            .map(|(n, a)| a.into() / ExactRational::from_integer(factorial(n)))
            .collect();
        Self::new(coeffs, SeriesKind::Exponential)
    }

    /// Series from ordinary coefficients given as anything convertible to a rational.
    pub fn from_ordinary<I, T>(coeffs: I, kind: SeriesKind) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<ExactRational>,
    {
        Self::new(coeffs.into_iter().map(Into::into).collect(), kind)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn kind(&self) -> SeriesKind {
        self.kind
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    /// Ordinary coefficient `[x^n]`.
    pub fn coeff(&self, n: usize) -> Result<&ExactRational> {
        self.coeffs.get(n).ok_or(Error::IndexOutOfRange {
            index: n,
            order: self.order(),
        })
    }

    /// Same coefficients, relabelled as the other kind.
    pub fn with_kind(mut self, kind: SeriesKind) -> Self {
        self.kind = kind;
        self
    }

    /// Drops every coefficient above `x^order`; a no-op if already shorter.
    pub fn truncate(&self, order: usize) -> Self {
        let keep = (order + 1).min(self.coeffs.len());
        Self {
            coeffs: self.coeffs[..keep].to_vec(),
            kind: self.kind,
        }
    }

    /// Errors unless the constant term is zero, as every inner series must be.
    pub fn require_no_constant_term(&self) -> Result<()> {
        if self.coeffs[0].is_zero() {
            Ok(())
        } else {
            Err(Error::NonzeroConstantTerm)
        }
    }

    fn check_kind(&self, other: &Self) -> Result<()> {
        if self.kind == other.kind {
            Ok(())
        } else {
            Err(Error::KindMismatch {
                left: self.kind,
                right: other.kind,
            })
        }
    }

    /// Coefficientwise sum, truncated to the smaller order.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_kind(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            coeffs,
            kind: self.kind,
        })
    }

    pub fn negated(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            kind: self.kind,
        }
    }

    /// Multiplies every coefficient by `factor`.
    pub fn scaled(&self, factor: &ExactRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
            kind: self.kind,
        }
    }

    /// Truncated Cauchy product.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.try_mul_with(other, Execution::default())
    }

    pub fn try_mul_with(&self, other: &Self, exec: Execution) -> Result<Self> {
        self.check_kind(other)?;
        let len = self.coeffs.len().min(other.coeffs.len());
        Ok(Self {
            coeffs: cauchy_product(&self.coeffs, &other.coeffs, len, exec),
            kind: self.kind,
        })
    }

    /// `self^k` truncated to `self.order()`. Requires a zero constant term
    /// for `k ≥ 1` so that every retained coefficient is exact.
    pub fn pow(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Ok(Self::one(self.order(), self.kind));
        }
        self.require_no_constant_term()?;
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    /// EGF coefficient `a(n) = n!·c(n)`.
    pub fn egf_coefficient(&self, n: usize) -> Result<ExactRational> {
        if self.kind != SeriesKind::Exponential {
            return Err(Error::KindMismatch {
                left: self.kind,
                right: SeriesKind::Exponential,
            });
        }
        let c = self.coeff(n)?;
        Ok(c * ExactRational::from_integer(factorial(n)))
    }

    /// All EGF coefficients `a(0..=N)`, regardless of the stored kind.
    pub fn egf_coefficients(&self) -> Vec<ExactRational> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c * ExactRational::from_integer(factorial(n)))
            .collect()
    }

    /// EGF coefficients as integers; errors naming the first non-integer one.
    pub fn integer_egf_coefficients(&self) -> Result<Vec<BigInt>> {
        to_integers(self.egf_coefficients())
    }

    /// Ordinary coefficients as integers; errors naming the first non-integer one.
    pub fn integer_coefficients(&self) -> Result<Vec<BigInt>> {
        to_integers(self.coeffs.clone())
    }
}

fn to_integers(values: Vec<ExactRational>) -> Result<Vec<BigInt>> {
    values
        .into_iter()
        .enumerate()
        .map(|(index, v)| {
            if v.is_integer() {
                Ok(v.to_integer())
            } else {
                Err(Error::NonIntegerCoefficient {
                    index,
                    value: v.to_string(),
                })
            }
        })
        .collect()
}

/// Index of the first nonzero entry, or `len` if there is none.
pub(crate) fn valuation(coeffs: &[ExactRational]) -> usize {
    coeffs
        .iter()
        .position(|c| !c.is_zero())
        .unwrap_or(coeffs.len())
}

/// First `len` coefficients of the product of `a` and `b`.
pub(crate) fn cauchy_product(
    a: &[ExactRational],
    b: &[ExactRational],
    len: usize,
    exec: Execution,
) -> Vec<ExactRational> {
    let va = valuation(&a[..len]);
    let vb = valuation(&b[..len]);
    exec.map_range(0..len, |n| {
        let mut acc = ExactRational::zero();
        if n >= va + vb {
            for i in va..=(n - vb) {
                let (x, y) = (&a[i], &b[n - i]);
                if !x.is_zero() && !y.is_zero() {
                    acc += x * y;
                }
            }
        }
        acc
    })
}
