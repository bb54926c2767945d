//! The composita `F^Δ(n,k) = [x^n] F(x)^k` of a series without constant term.
//!
//! Three independent routes are provided:
//!
//! * [`composita_by_power`]: iterated truncated multiplication, the
//!   production path used by composition and the congruences;
//! * [`composita_by_compositions`]: direct sum over the compositions of `n`
//!   into `k` positive parts, exponential time, kept as an oracle;
//! * closed forms for `e^x − 1`, `x + x²/2 + x³/6` and `artanh x`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::numbers::{binomial, binomial_or_zero, factorial, SequenceCache, SequenceFamily};
use crate::{Error, ExactRational, Execution, Result, Series};

/// Triangular table of `F^Δ(n,k)` for `1 ≤ k ≤ n ≤ order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositaTable {
    // rows[n - 1][k - 1]
    rows: Vec<Vec<ExactRational>>,
}

impl CompositaTable {
    /// Builds a table by evaluating `entry(n, k)` for every `1 ≤ k ≤ n ≤ order`.
    /// Rows are evaluated independently under `exec`.
    pub fn from_fn<F>(order: usize, exec: Execution, entry: F) -> Self
    where
        F: Fn(usize, usize) -> ExactRational + Sync + Send,
    {
        let rows = exec.map_range(1..order + 1, |n| (1..=n).map(|k| entry(n, k)).collect());
        Self { rows }
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    /// `F^Δ(n,k)`; zero when `k > n`. Errors unless `1 ≤ k` and `1 ≤ n ≤ order`.
    pub fn entry(&self, n: usize, k: usize) -> Result<ExactRational> {
        if n == 0 || n > self.order() {
            return Err(Error::IndexOutOfRange {
                index: n,
                order: self.order(),
            });
        }
        if k == 0 {
            return Err(Error::InvalidArgument(
                "composita index k starts at 1".into(),
            ));
        }
        Ok(self.rows[n - 1]
            .get(k - 1)
            .cloned()
            .unwrap_or_else(ExactRational::zero))
    }

    /// `F^Δ(n,1..=n)`.
    pub fn row(&self, n: usize) -> Option<&[ExactRational]> {
        n.checked_sub(1)
            .and_then(|i| self.rows.get(i))
            .map(Vec::as_slice)
    }

    /// `(n!/k!)·F^Δ(n,k)`, integral whenever F has integer EGF coefficients.
    pub fn scaled_entry(&self, n: usize, k: usize) -> Result<ExactRational> {
        let ratio = ExactRational::new(factorial(n), factorial(k));
        Ok(self.entry(n, k)? * ratio)
    }

    /// `(n, k, F^Δ(n,k))` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &ExactRational)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, v)| (i + 1, j + 1, v)))
    }
}

/// Composita table of `f` up to `f.order()` by raising to successive powers.
pub fn composita_by_power(f: &Series) -> Result<CompositaTable> {
    composita_by_power_with(f, Execution::default())
}

pub fn composita_by_power_with(f: &Series, exec: Execution) -> Result<CompositaTable> {
    f.require_no_constant_term()?;
    let order = f.order();
    let mut rows: Vec<Vec<ExactRational>> = (1..=order).map(Vec::with_capacity).collect();
    let mut power = f.clone();
    for k in 1..=order {
        for n in k..=order {
            rows[n - 1].push(power.coeffs()[n].clone());
        }
        if k < order {
            power = power.try_mul_with(f, exec)?;
        }
    }
    Ok(CompositaTable { rows })
}

/// `F^Δ(n,k)` as the sum over compositions `λ_1 + … + λ_k = n`, `λ_i ≥ 1`,
/// of `c(λ_1)…c(λ_k)`.
pub fn composita_by_compositions(f: &Series, n: usize, k: usize) -> Result<ExactRational> {
    f.require_no_constant_term()?;
    if n > f.order() {
        return Err(Error::IndexOutOfRange {
            index: n,
            order: f.order(),
        });
    }
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "need 1 ≤ k ≤ n, got n = {n}, k = {k}"
        )));
    }
    Ok(sum_over_compositions(f.coeffs(), n, k))
}

fn sum_over_compositions(c: &[ExactRational], n: usize, k: usize) -> ExactRational {
    if k == 1 {
        return c[n].clone();
    }
    // first part λ_1 = first; the remaining k − 1 parts need at least k − 1
    (1..=n - (k - 1))
        .filter(|&first| !c[first].is_zero())
        .map(|first| &c[first] * sum_over_compositions(c, n - first, k - 1))
        .fold(ExactRational::zero(), |acc, t| acc + t)
}

fn boundary(n: usize, k: usize) -> Option<ExactRational> {
    if k == 0 {
        Some(if n == 0 {
            ExactRational::one()
        } else {
            ExactRational::zero()
        })
    } else if k > n {
        Some(ExactRational::zero())
    } else {
        None
    }
}

/// Composita of `e^x − 1`: `(k!/n!)·S(n,k)`.
pub fn stirling2_composita(n: usize, k: usize) -> ExactRational {
    stirling2_composita_from(&SequenceCache::up_to(SequenceFamily::Stirling2, n), n, k)
}

fn stirling2_composita_from(s2: &SequenceCache, n: usize, k: usize) -> ExactRational {
    if let Some(v) = boundary(n, k) {
        return v;
    }
    let s = BigInt::from(s2.entry(n, k).expect("cache covers n"));
    ExactRational::new(factorial(k) * s, factorial(n))
}

/// Composita of `x + x²/2 + x³/6`:
/// `Σ_{j=0}^{k} C(j, n−3k+2j)·3^{j−k}·C(k,j)·2^{−n+2k−j}`.
pub fn poly3_composita(n: usize, k: usize) -> ExactRational {
    if let Some(v) = boundary(n, k) {
        return v;
    }
    let (n_i, k_i) = (n as i64, k as i64);
    let two = ExactRational::from_integer(BigInt::from(2));
    let three = ExactRational::from_integer(BigInt::from(3));
    (0..=k)
        .map(|j| {
            let j_i = j as i64;
            let b = binomial_or_zero(j, n_i - 3 * k_i + 2 * j_i);
            if b.is_zero() {
                return ExactRational::zero();
            }
            let coeff = ExactRational::from_integer(b * binomial(k, j));
            coeff * three.pow((j_i - k_i) as i32) * two.pow((2 * k_i - n_i - j_i) as i32)
        })
        .fold(ExactRational::zero(), |acc, t| acc + t)
}

/// Composita of `artanh x`:
/// `k!·Σ_{m=k}^{n} 2^{m−k}/m!·s(m,k)·C(n−1, m−1)`, with `s` the signed
/// Stirling numbers of the first kind.
pub fn artanh_composita(n: usize, k: usize) -> ExactRational {
    artanh_composita_from(
        &SequenceCache::up_to(SequenceFamily::Stirling1Unsigned, n),
        n,
        k,
    )
}

fn artanh_composita_from(s1: &SequenceCache, n: usize, k: usize) -> ExactRational {
    if let Some(v) = boundary(n, k) {
        return v;
    }
    let sum = (k..=n)
        .map(|m| {
            let mut s = BigInt::from(s1.entry(m, k).expect("cache covers n"));
            if (m - k) % 2 == 1 {
                s = -s;
            }
            let num = (BigInt::one() << (m - k)) * s * binomial(n - 1, m - 1);
            ExactRational::new(num, factorial(m))
        })
        .fold(ExactRational::zero(), |acc, t| acc + t);
    sum * ExactRational::from_integer(factorial(k))
}

/// Closed-form table for `e^x − 1` up to `order`.
pub fn stirling2_composita_table(order: usize, exec: Execution) -> CompositaTable {
    let s2 = SequenceCache::up_to(SequenceFamily::Stirling2, order);
    CompositaTable::from_fn(order, exec, |n, k| stirling2_composita_from(&s2, n, k))
}

/// Closed-form table for `x + x²/2 + x³/6` up to `order`.
pub fn poly3_composita_table(order: usize, exec: Execution) -> CompositaTable {
    CompositaTable::from_fn(order, exec, poly3_composita)
}

/// Closed-form table for `artanh x` up to `order`.
pub fn artanh_composita_table(order: usize, exec: Execution) -> CompositaTable {
    let s1 = SequenceCache::up_to(SequenceFamily::Stirling1Unsigned, order);
    CompositaTable::from_fn(order, exec, |n, k| artanh_composita_from(&s1, n, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::Builtin;
    use crate::SeriesKind;

    fn r(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n.into(), d.into())
    }

    #[test]
    fn identity_series_table_is_diagonal() {
        let t = composita_by_power(&Builtin::X.series(8)).unwrap();
        for (n, k, v) in t.iter() {
            assert_eq!(v, &r((n == k) as i64, 1), "({n},{k})");
        }
    }

    #[test]
    fn power_examples() {
        let t = composita_by_power(&Builtin::Expm1.series(6)).unwrap();
        assert_eq!(t.entry(4, 2).unwrap(), r(7, 12));
        assert_eq!(t.entry(3, 5).unwrap(), r(0, 1));
        assert!(t.entry(7, 1).is_err());
        assert!(t.entry(3, 0).is_err());

        let p =
            Series::from_ordinary([0, 1, 1, 0, 0].map(BigInt::from), SeriesKind::Ordinary).unwrap();
        assert_eq!(
            composita_by_power(&p).unwrap().entry(4, 3).unwrap(),
            r(3, 1)
        );

        let bad = Builtin::Exp.series(4);
        assert_eq!(composita_by_power(&bad), Err(Error::NonzeroConstantTerm));
    }

    #[test]
    fn table_boundaries() {
        let f = Builtin::Sin.series(10);
        let t = composita_by_power(&f).unwrap();
        assert_eq!(t.order(), 10);
        for n in 1..=10 {
            assert_eq!(&t.entry(n, 1).unwrap(), f.coeff(n).unwrap());
            assert_eq!(t.entry(n, n).unwrap(), r(1, 1));
        }
        assert_eq!(t.row(3).unwrap().len(), 3);
        assert!(t.row(0).is_none());
    }

    #[test]
    fn compositions_examples() {
        assert_eq!(
            composita_by_compositions(&Builtin::X.series(7), 7, 7).unwrap(),
            r(1, 1)
        );
        assert_eq!(
            composita_by_compositions(&Builtin::Expm1.series(3), 3, 2).unwrap(),
            r(1, 1)
        );
        let p3 = Builtin::Poly3.series(5);
        let table = composita_by_power(&p3).unwrap();
        assert_eq!(
            composita_by_compositions(&p3, 5, 2).unwrap(),
            table.entry(5, 2).unwrap()
        );
        assert!(composita_by_compositions(&p3, 6, 2).is_err());
        assert!(composita_by_compositions(&p3, 3, 4).is_err());
        assert!(composita_by_compositions(&p3, 3, 0).is_err());
    }

    #[test]
    fn closed_form_examples() {
        for n in 1..8 {
            assert_eq!(stirling2_composita(n, n), r(1, 1));
            assert_eq!(poly3_composita(n, n), r(1, 1));
            assert_eq!(artanh_composita(n, n), r(1, 1));
        }
        assert_eq!(stirling2_composita(3, 2), r(1, 1));
        assert_eq!(stirling2_composita(5, 3), r(5, 4));
        assert_eq!(poly3_composita(3, 1), r(1, 6));
        assert_eq!(poly3_composita(4, 1), r(0, 1));
        assert_eq!(artanh_composita(1, 1), r(1, 1));
        assert_eq!(artanh_composita(2, 1), r(0, 1));
        assert_eq!(artanh_composita(3, 1), r(1, 3));

        let p3 = composita_by_power(&Builtin::Poly3.series(5)).unwrap();
        assert_eq!(poly3_composita(5, 2), p3.entry(5, 2).unwrap());
        let at = composita_by_power(&Builtin::Artanh.series(5)).unwrap();
        assert_eq!(artanh_composita(5, 3), at.entry(5, 3).unwrap());
    }

    #[test]
    fn closed_forms_outside_triangle() {
        assert_eq!(stirling2_composita(0, 0), r(1, 1));
        assert_eq!(poly3_composita(2, 3), r(0, 1));
        assert_eq!(artanh_composita(4, 0), r(0, 1));
    }

    #[test]
    fn closed_form_tables_match_power_raising() {
        let exec = Execution::default();
        let n = 16;
        assert_eq!(
            stirling2_composita_table(n, exec),
            composita_by_power(&Builtin::Expm1.series(n)).unwrap()
        );
        assert_eq!(
            poly3_composita_table(n, exec),
            composita_by_power(&Builtin::Poly3.series(n)).unwrap()
        );
        assert_eq!(
            artanh_composita_table(n, exec),
            composita_by_power(&Builtin::Artanh.series(n)).unwrap()
        );
    }

    #[test]
    fn sequential_and_parallel_tables_agree() {
        let f = Builtin::Poly3.series(20);
        assert_eq!(
            composita_by_power_with(&f, Execution::Sequential).unwrap(),
            composita_by_power_with(&f, Execution::Parallel).unwrap()
        );
    }
}
