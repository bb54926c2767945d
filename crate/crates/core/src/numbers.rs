//! Integer sequences used by the closed forms and congruences.
//!
//! Each family is grown as a triangle, one row at a time, by a
//! [`SequenceCache`]. The second computation path for each family (the
//! explicit alternating sum for `S(n,k)`, `Σ_k S(n,k)` for Bell numbers,
//! rising-factorial expansion for the first kind) lives next to it so the
//! two can be compared.

use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::{Error, Result};

static FACTORIALS: OnceLock<RwLock<Vec<BigInt>>> = OnceLock::new();

/// `n!`, memoized process-wide. The memo only ever grows.
pub fn factorial(n: usize) -> BigInt {
    let memo = FACTORIALS.get_or_init(|| RwLock::new(vec![BigInt::one()]));
    if let Some(f) = memo.read().expect("factorial memo poisoned").get(n) {
        return f.clone();
    }
    let mut table = memo.write().expect("factorial memo poisoned");
    while table.len() <= n {
        let next = table.last().unwrap() * BigInt::from(table.len());
        table.push(next);
    }
    table[n].clone()
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `C(n, k)` with a possibly negative lower index; zero outside `0..=n`.
pub fn binomial_or_zero(n: usize, k: i64) -> BigInt {
    match usize::try_from(k) {
        Ok(k) => binomial(n, k),
        Err(_) => BigInt::zero(),
    }
}

/// `n! / Π parts_i!`. The parts must sum to `n`.
pub fn multinomial(n: usize, parts: &[usize]) -> Result<BigUint> {
    let total: usize = parts.iter().sum();
    if total != n {
        return Err(Error::InvalidArgument(format!(
            "parts sum to {total}, expected {n}"
        )));
    }
    let denom: BigInt = parts.iter().map(|&p| factorial(p)).product();
    let value = factorial(n) / denom;
    Ok(value.to_biguint().expect("multinomial is nonnegative"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequenceFamily {
    Stirling2,
    Stirling1Unsigned,
    Bell,
    EulerZigzag,
    Binomial,
}

/// Monotonically growing triangle for one [`SequenceFamily`].
///
/// Row `n` of each triangle:
///
/// * `Stirling2`, `Stirling1Unsigned`, `Binomial`: the values at `(n, 0..=n)`.
/// * `Bell`: row `n` of the Bell (Aitken) triangle; `B_n` is its first entry.
/// * `EulerZigzag`: row `n` of the Seidel boustrophedon; `E(n)` is its last entry.
///
/// Grow it to the largest index needed before sharing it across threads.
#[derive(Debug, Clone)]
pub struct SequenceCache {
    family: SequenceFamily,
    rows: Vec<Vec<BigUint>>,
}

impl SequenceCache {
    pub fn new(family: SequenceFamily) -> Self {
        Self {
            family,
            rows: vec![vec![BigUint::one()]],
        }
    }

    /// Cache holding rows `0..=n`.
    pub fn up_to(family: SequenceFamily, n: usize) -> Self {
        let mut cache = Self::new(family);
        cache.extend_to(n);
        cache
    }

    pub fn family(&self) -> SequenceFamily {
        self.family
    }

    /// Largest row index currently held.
    pub fn max_row(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn extend_to(&mut self, n: usize) {
        while self.rows.len() <= n {
            let m = self.rows.len();
            let prev = &self.rows[m - 1];
            let row = match self.family {
                SequenceFamily::Stirling2 => (0..=m)
                    .map(|k| {
                        let stay = prev.get(k).map(|v| v * k).unwrap_or_default();
                        let new_block = if k > 0 {
                            prev[k - 1].clone()
                        } else {
                            BigUint::zero()
                        };
                        stay + new_block
                    })
                    .collect(),
                SequenceFamily::Stirling1Unsigned => (0..=m)
                    .map(|k| {
                        let stay = prev.get(k).map(|v| v * (m - 1)).unwrap_or_default();
                        let new_cycle = if k > 0 {
                            prev[k - 1].clone()
                        } else {
                            BigUint::zero()
                        };
                        stay + new_cycle
                    })
                    .collect(),
                SequenceFamily::Binomial => (0..=m)
                    .map(|k| {
                        let right = prev.get(k).cloned().unwrap_or_default();
                        let left = if k > 0 {
                            prev[k - 1].clone()
                        } else {
                            BigUint::zero()
                        };
                        left + right
                    })
                    .collect(),
                SequenceFamily::Bell => {
                    let mut row = Vec::with_capacity(m + 1);
                    row.push(prev[m - 1].clone());
                    for i in 1..=m {
                        let next = &row[i - 1] + &prev[i - 1];
                        row.push(next);
                    }
                    row
                }
                SequenceFamily::EulerZigzag => {
                    let mut row = Vec::with_capacity(m + 1);
                    row.push(BigUint::zero());
                    for k in 1..=m {
                        let next = &row[k - 1] + &prev[m - k];
                        row.push(next);
                    }
                    row
                }
            };
            self.rows.push(row);
        }
    }

    pub fn row(&self, n: usize) -> Option<&[BigUint]> {
        self.rows.get(n).map(Vec::as_slice)
    }

    /// Triangle entry `(n, k)`; zero for `k > n`, `None` if row `n` is not cached.
    pub fn entry(&self, n: usize, k: usize) -> Option<BigUint> {
        self.rows
            .get(n)
            .map(|row| row.get(k).cloned().unwrap_or_default())
    }

    /// The one-index sequence read off row `n`: `B_n` or `E(n)`.
    /// For the two-index families this is the diagonal entry, which is 1.
    pub fn term(&self, n: usize) -> Option<&BigUint> {
        let row = self.rows.get(n)?;
        match self.family {
            SequenceFamily::Bell => row.first(),
            _ => row.last(),
        }
    }

    /// `term(0..=max_row)`.
    pub fn terms(&self) -> Vec<BigUint> {
        (0..self.rows.len())
            .map(|n| self.term(n).unwrap().clone())
            .collect()
    }
}

/// Stirling number of the second kind, by the triangular recurrence.
pub fn stirling2(n: usize, k: usize) -> BigUint {
    SequenceCache::up_to(SequenceFamily::Stirling2, n)
        .entry(n, k)
        .unwrap()
}

/// `S(n,k) = (1/k!) Σ_j (−1)^{k−j} C(k,j) j^n`, evaluated directly.
pub fn stirling2_explicit(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let sum: BigInt = (0..=k)
        .map(|j| {
            let term = binomial(k, j) * num_traits::pow(BigInt::from(j), n);
            if (k - j).is_multiple_of(2) {
                term
            } else {
                -term
            }
        })
        .sum();
    (sum / factorial(k))
        .to_biguint()
        .expect("Stirling numbers are nonnegative")
}

/// Unsigned Stirling number of the first kind (permutations of `m` with `k` cycles).
pub fn stirling1_unsigned(m: usize, k: usize) -> BigUint {
    SequenceCache::up_to(SequenceFamily::Stirling1Unsigned, m)
        .entry(m, k)
        .unwrap()
}

/// Signed Stirling number of the first kind, `(−1)^{m−k}·[m k]`.
pub fn stirling1_signed(m: usize, k: usize) -> BigInt {
    let v = BigInt::from(stirling1_unsigned(m, k));
    if (m + k).is_multiple_of(2) {
        v
    } else {
        -v
    }
}

/// Bell number via the Bell triangle.
pub fn bell(n: usize) -> BigUint {
    SequenceCache::up_to(SequenceFamily::Bell, n)
        .term(n)
        .unwrap()
        .clone()
}

/// `B_0..=B_n`.
pub fn bell_numbers(n: usize) -> Vec<BigUint> {
    SequenceCache::up_to(SequenceFamily::Bell, n).terms()
}

/// Euler zigzag number `E(n)` (A000111 indexing: 1, 1, 1, 2, 5, 16, …).
pub fn euler_zigzag(n: usize) -> BigUint {
    SequenceCache::up_to(SequenceFamily::EulerZigzag, n)
        .term(n)
        .unwrap()
        .clone()
}

/// `E(0)..=E(n)`.
pub fn euler_zigzag_numbers(n: usize) -> Vec<BigUint> {
    SequenceCache::up_to(SequenceFamily::EulerZigzag, n).terms()
}
