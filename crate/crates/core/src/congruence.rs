//! Prime-only integrality expressions and compositeness witnesses.
//!
//! Each expression below is an integer for every prime `n`. A non-integer
//! value at `n` therefore certifies that `n` is composite. The converse
//! does not hold: composites may produce integers too, so the verdict for
//! an integer value is only "consistent with prime".

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::composita::{composita_by_power_with, CompositaTable};
use crate::composition::{compose_egf_egf_with, compose_ogf_egf_with};
use crate::numbers::{factorial, SequenceCache, SequenceFamily};
use crate::text::rational_str;
use crate::{Builtin, Error, ExactRational, Execution, Result, Series, SeriesKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    ConsistentWithPrime,
    CompositeWitness,
}

/// One evaluated expression at one `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    pub family: String,
    pub n: usize,
    #[serde(with = "rational_str")]
    pub value: ExactRational,
    pub is_integer: bool,
    pub verdict: Verdict,
    /// Set when `n` lies below the range where the expression is meaningful
    /// and the value was taken as the empty sum.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub degenerate: bool,
}

impl CongruenceReport {
    pub fn new(family: impl Into<String>, n: usize, value: ExactRational) -> Self {
        let is_integer = value.is_integer();
        Self {
            family: family.into(),
            n,
            value,
            is_integer,
            verdict: if is_integer {
                Verdict::ConsistentWithPrime
            } else {
                Verdict::CompositeWitness
            },
            degenerate: false,
        }
    }

    fn degenerate(family: impl Into<String>, n: usize) -> Self {
        Self {
            degenerate: true,
            ..Self::new(family, n, ExactRational::zero())
        }
    }
}

/// Evidence that `n` is composite: an expression that is integral at every
/// prime took a non-integer value at `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessCertificate {
    pub n: usize,
    pub family: String,
    #[serde(with = "rational_str")]
    pub value: ExactRational,
    #[serde(serialize_with = "crate::text::bigint_str")]
    pub denominator: BigInt,
}

impl WitnessCertificate {
    /// `None` when the report's value is an integer.
    pub fn from_report(report: &CongruenceReport) -> Option<Self> {
        if report.value.is_integer() {
            return None;
        }
        Some(Self {
            n: report.n,
            family: report.family.clone(),
            value: report.value.clone(),
            denominator: report.value.denom().clone(),
        })
    }
}

/// A registered expression: a name, the range of `n` its precomputed tables
/// cover, and an evaluator. Implementations are immutable after
/// construction, so one instance can be evaluated from many threads.
pub trait CongruenceFamily: Send + Sync {
    fn name(&self) -> &str;

    /// Smallest `n` accepted by [`evaluate`](Self::evaluate).
    fn min_n(&self) -> usize;

    /// Largest `n` the precomputed tables cover.
    fn max_n(&self) -> usize;

    fn evaluate(&self, n: usize) -> Result<CongruenceReport>;
}

fn check_range(family: &dyn CongruenceFamily, n: usize) -> Result<()> {
    if n < family.min_n() {
        return Err(Error::InvalidArgument(format!(
            "{} needs n ≥ {}, got {n}",
            family.name(),
            family.min_n()
        )));
    }
    if n > family.max_n() {
        return Err(Error::BoundExceeded {
            requested: n,
            limit: family.max_n(),
        });
    }
    Ok(())
}

fn ratio(num: BigInt, n: usize) -> ExactRational {
    ExactRational::new(num, BigInt::from(n))
}

/// The inner series of every family: integer EGF coefficients, no constant term.
fn integer_inner(inner: &Series) -> Result<Vec<BigInt>> {
    if inner.kind() != SeriesKind::Exponential {
        return Err(Error::KindMismatch {
            left: inner.kind(),
            right: SeriesKind::Exponential,
        });
    }
    inner.require_no_constant_term()?;
    inner.integer_egf_coefficients()
}

fn integer_egf_g(g: &Series) -> Result<Vec<BigInt>> {
    // g(n) is integral by construction for integer inputs; keep it exact anyway
    g.integer_egf_coefficients()
}

/// `(B_n − 2)/n`, Touchard's congruence at `k = 0`.
pub struct TouchardK0 {
    bells: Vec<BigInt>,
}

impl TouchardK0 {
    pub fn new(max_n: usize) -> Self {
        Self {
            bells: bells(max_n),
        }
    }
}

fn bells(max_n: usize) -> Vec<BigInt> {
    SequenceCache::up_to(SequenceFamily::Bell, max_n)
        .terms()
        .into_iter()
        .map(BigInt::from)
        .collect()
}

impl CongruenceFamily for TouchardK0 {
    fn name(&self) -> &str {
        "touchard_k0"
    }
    fn min_n(&self) -> usize {
        2
    }
    fn max_n(&self) -> usize {
        self.bells.len() - 1
    }
    fn evaluate(&self, n: usize) -> Result<CongruenceReport> {
        check_range(self, n)?;
        let value = ratio(&self.bells[n] - 2, n);
        Ok(CongruenceReport::new(self.name(), n, value))
    }
}

/// `(B_{n+k} − B_{k+1} − B_k)/n` for a fixed shift `k`.
pub struct TouchardGeneral {
    name: String,
    k: usize,
    bells: Vec<BigInt>,
}

impl TouchardGeneral {
    pub fn new(k: usize, max_n: usize) -> Self {
        Self {
            name: format!("touchard_k{k}"),
            k,
            bells: bells(max_n + k.max(1)),
        }
    }
}

impl CongruenceFamily for TouchardGeneral {
    fn name(&self) -> &str {
        &self.name
    }
    fn min_n(&self) -> usize {
        2
    }
    fn max_n(&self) -> usize {
        self.bells.len() - 1 - self.k.max(1)
    }
    fn evaluate(&self, n: usize) -> Result<CongruenceReport> {
        check_range(self, n)?;
        let k = self.k;
        let num = &self.bells[n + k] - &self.bells[k + 1] - &self.bells[k];
        Ok(CongruenceReport::new(self.name(), n, ratio(num, n)))
    }
}

/// `(E(n+1) − s(n))/n` where `s(n)` is the n-th EGF coefficient of `sin x`.
pub struct EulerCongruence {
    zigzag: Vec<BigInt>,
}

impl EulerCongruence {
    pub fn new(max_n: usize) -> Self {
        let zigzag = SequenceCache::up_to(SequenceFamily::EulerZigzag, max_n + 1)
            .terms()
            .into_iter()
            .map(BigInt::from)
            .collect();
        Self { zigzag }
    }
}

/// EGF coefficient of `sin x`: 0 for even `n`, `(−1)^{(n−1)/2}` for odd.
pub fn sin_egf_coefficient(n: usize) -> BigInt {
    match n % 4 {
        1 => BigInt::one(),
        3 => -BigInt::one(),
        _ => BigInt::zero(),
    }
}

impl CongruenceFamily for EulerCongruence {
    fn name(&self) -> &str {
        "euler"
    }
    fn min_n(&self) -> usize {
        2
    }
    fn max_n(&self) -> usize {
        self.zigzag.len() - 2
    }
    fn evaluate(&self, n: usize) -> Result<CongruenceReport> {
        check_range(self, n)?;
        let num = &self.zigzag[n + 1] - sin_egf_coefficient(n);
        Ok(CongruenceReport::new(self.name(), n, ratio(num, n)))
    }
}

/// `Σ_{k=2}^{n−1} E^Δ(n,k)·(n−1)!/k!` for an integer EGF `E`.
///
/// For `n < 3` the sum is empty; those `n` are reported as degenerate with
/// value 0.
pub struct Corollary1Sum {
    name: String,
    table: CompositaTable,
}

impl Corollary1Sum {
    pub fn new(label: &str, inner: &Series, exec: Execution) -> Result<Self> {
        integer_inner(inner)?;
        Ok(Self {
            name: format!("corollary1_sum:{label}"),
            table: composita_by_power_with(inner, exec)?,
        })
    }
}

impl CongruenceFamily for Corollary1Sum {
    fn name(&self) -> &str {
        &self.name
    }
    fn min_n(&self) -> usize {
        1
    }
    fn max_n(&self) -> usize {
        self.table.order()
    }
    fn evaluate(&self, n: usize) -> Result<CongruenceReport> {
        check_range(self, n)?;
        if n < 3 {
            return Ok(CongruenceReport::degenerate(self.name(), n));
        }
        let fact = factorial(n - 1);
        let row = self.table.row(n).expect("n within table");
        let value = (2..n)
            .filter(|&k| !row[k - 1].is_zero())
            .map(|k| &row[k - 1] * ExactRational::new(fact.clone(), factorial(k)))
            .fold(ExactRational::zero(), |acc, t| acc + t);
        Ok(CongruenceReport::new(self.name(), n, value))
    }
}

/// `(g(n) − e(n) − e(1)^n)/n` with `g` the EGF coefficients of `exp(E(x))`.
/// Equal to [`Corollary1Sum`] at every `n`; degenerate below 3 likewise.
pub struct Corollary1ViaG {
    name: String,
    e: Vec<BigInt>,
    g: Vec<BigInt>,
}

impl Corollary1ViaG {
    pub fn new(label: &str, inner: &Series, exec: Execution) -> Result<Self> {
        let e = integer_inner(inner)?;
        let g = compose_egf_egf_with(&Builtin::Exp.series(inner.order()), inner, exec)?;
        Ok(Self {
            name: format!("corollary1_via_g:{label}"),
            e,
            g: integer_egf_g(&g)?,
        })
    }
}

impl CongruenceFamily for Corollary1ViaG {
    fn name(&self) -> &str {
        &self.name
    }
    fn min_n(&self) -> usize {
        1
    }
    fn max_n(&self) -> usize {
        self.g.len() - 1
    }
    fn evaluate(&self, n: usize) -> Result<CongruenceReport> {
        check_range(self, n)?;
        if n < 3 {
            return Ok(CongruenceReport::degenerate(self.name(), n));
        }
        let num = &self.g[n] - &self.e[n] - num_traits::pow(self.e[1].clone(), n);
        Ok(CongruenceReport::new(self.name(), n, ratio(num, n)))
    }
}

/// `(g(n) − e(n)·a(1) − e(1)^n·a(n))/n` with `g` the EGF coefficients of `A(E(x))`.
pub struct GeneralPrime {
    name: String,
    a: Vec<BigInt>,
    e: Vec<BigInt>,
    g: Vec<BigInt>,
}

impl GeneralPrime {
    pub fn new(label: &str, outer: &Series, inner: &Series, exec: Execution) -> Result<Self> {
        if outer.kind() != SeriesKind::Exponential {
            return Err(Error::KindMismatch {
                left: outer.kind(),
                right: SeriesKind::Exponential,
            });
        }
        let a = outer.integer_egf_coefficients()?;
        let e = integer_inner(inner)?;
        let g = compose_egf_egf_with(outer, inner, exec)?;
        Ok(Self {
            name: format!("general:{label}"),
            a,
            e,
            g: integer_egf_g(&g)?,
        })
    }
}

impl CongruenceFamily for GeneralPrime {
    fn name(&self) -> &str {
        &self.name
    }
    fn min_n(&self) -> usize {
        2
    }
    fn max_n(&self) -> usize {
        self.g.len() - 1
    }
    fn evaluate(&self, n: usize) -> Result<CongruenceReport> {
        check_range(self, n)?;
        let num = &self.g[n]
            - &self.e[n] * &self.a[1]
            - num_traits::pow(self.e[1].clone(), n) * &self.a[n];
        Ok(CongruenceReport::new(self.name(), n, ratio(num, n)))
    }
}

/// `(g(n) − e(n)·b(1))/n` with `g` the EGF coefficients of `B(E(x))`, `B` an
/// ordinary series with integer coefficients.
pub struct Theorem2 {
    name: String,
    b1: BigInt,
    e: Vec<BigInt>,
    g: Vec<BigInt>,
}

impl Theorem2 {
    pub fn new(label: &str, outer: &Series, inner: &Series, exec: Execution) -> Result<Self> {
        if outer.kind() != SeriesKind::Ordinary {
            return Err(Error::KindMismatch {
                left: outer.kind(),
                right: SeriesKind::Ordinary,
            });
        }
        let b = outer.integer_coefficients()?;
        let e = integer_inner(inner)?;
        let g = compose_ogf_egf_with(outer, inner, exec)?;
        Ok(Self {
            name: format!("theorem2:{label}"),
            b1: b.get(1).cloned().unwrap_or_default(),
            e,
            g: integer_egf_g(&g)?,
        })
    }
}

impl CongruenceFamily for Theorem2 {
    fn name(&self) -> &str {
        &self.name
    }
    fn min_n(&self) -> usize {
        2
    }
    fn max_n(&self) -> usize {
        self.g.len() - 1
    }
    fn evaluate(&self, n: usize) -> Result<CongruenceReport> {
        check_range(self, n)?;
        let num = &self.g[n] - &self.e[n] * &self.b1;
        Ok(CongruenceReport::new(self.name(), n, ratio(num, n)))
    }
}

/// Built-in family names accepted by [`named_family`].
pub const NAMED_FAMILIES: &[&str] = &[
    "touchard_k0",
    "touchard_k<K>",
    "euler",
    "poly3",
    "artanh",
    "expm1",
    "sin",
];

/// Constructs a built-in family whose tables cover `n ≤ max_n`.
///
/// `poly3`, `artanh`, `expm1` and `sin` are the corollary-1 sum over that
/// inner series.
pub fn named_family(
    name: &str,
    max_n: usize,
    exec: Execution,
) -> Result<Box<dyn CongruenceFamily>> {
    match name {
        "touchard_k0" => Ok(Box::new(TouchardK0::new(max_n))),
        "euler" => Ok(Box::new(EulerCongruence::new(max_n))),
        _ => {
            if let Some(k) = name.strip_prefix("touchard_k") {
                let k = k
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad Touchard shift in `{name}`")))?;
                return Ok(Box::new(TouchardGeneral::new(k, max_n)));
            }
            let inner: Builtin = name
                .parse()
                .map_err(|_| Error::Parse(format!("unknown family `{name}`")))?;
            if inner.kind() != SeriesKind::Exponential || matches!(inner, Builtin::Exp) {
                return Err(Error::Parse(format!(
                    "`{name}` is not a valid inner series"
                )));
            }
            Ok(Box::new(Corollary1Sum::new(
                name,
                &inner.series(max_n),
                exec,
            )?))
        }
    }
}

/// Reports for every `n` in a range, plus a certificate per non-integer value.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ScanResult {
    pub reports: Vec<CongruenceReport>,
    pub certificates: Vec<WitnessCertificate>,
}

pub fn scan(family: &dyn CongruenceFamily, range: RangeInclusive<usize>) -> Result<ScanResult> {
    scan_with(family, range, Execution::default())
}

/// Evaluates `family` over `range`; output is ordered by `n` whatever `exec` is.
pub fn scan_with(
    family: &dyn CongruenceFamily,
    range: RangeInclusive<usize>,
    exec: Execution,
) -> Result<ScanResult> {
    let (from, to) = range.into_inner();
    if from > to {
        return Ok(ScanResult::default());
    }
    check_range(family, from)?;
    check_range(family, to)?;
    let reports = exec
        .map_range(from..to + 1, |n| family.evaluate(n))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let certificates = reports
        .iter()
        .filter_map(WitnessCertificate::from_report)
        .collect();
    Ok(ScanResult {
        reports,
        certificates,
    })
}

/// Whether `(n!/k!)·E^Δ(n,k)` is an integer.
pub fn theorem1_check(inner: &Series, n: usize, k: usize) -> Result<bool> {
    integer_inner(inner)?;
    if k == 0 || k > n || n > inner.order() {
        return Err(Error::InvalidArgument(format!(
            "need 1 ≤ k ≤ n ≤ {}, got n = {n}, k = {k}",
            inner.order()
        )));
    }
    let table = composita_by_power_with(&inner.truncate(n), Execution::default())?;
    Ok(table.scaled_entry(n, k)?.is_integer())
}

/// `theorem1_check` for the whole triangle `1 ≤ k ≤ n ≤ order`; returns
/// the `(n, k)` pairs that fail, which should always be none.
pub fn theorem1_failures(inner: &Series, exec: Execution) -> Result<Vec<(usize, usize)>> {
    integer_inner(inner)?;
    let table = composita_by_power_with(inner, exec)?;
    let failures = exec.map_range(1..table.order() + 1, |n| {
        (1..=n)
            .filter(|&k| !table.scaled_entry(n, k).unwrap().is_integer())
            .map(|k| (n, k))
            .collect::<Vec<_>>()
    });
    Ok(failures.into_iter().flatten().collect())
}

fn require_at_least(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min {
        Err(Error::InvalidArgument(format!(
            "{what} needs n ≥ {min}, got {n}"
        )))
    } else {
        Ok(())
    }
}

fn require_order(series: &Series, n: usize) -> Result<()> {
    if n > series.order() {
        Err(Error::IndexOutOfRange {
            index: n,
            order: series.order(),
        })
    } else {
        Ok(())
    }
}

/// `Σ_{k=2}^{n−1} E^Δ(n,k)·(n−1)!/k!`, for `n ≥ 3`.
pub fn corollary1_sum(inner: &Series, n: usize) -> Result<CongruenceReport> {
    require_at_least(n, 3, "corollary1_sum")?;
    require_order(inner, n)?;
    Corollary1Sum::new("custom", &inner.truncate(n), Execution::default())?.evaluate(n)
}

/// `(g(n) − e(n) − e(1)^n)/n` with `G = exp(E)`, for `n ≥ 3`.
pub fn corollary1_via_g(inner: &Series, n: usize) -> Result<CongruenceReport> {
    require_at_least(n, 3, "corollary1_via_g")?;
    require_order(inner, n)?;
    Corollary1ViaG::new("custom", &inner.truncate(n), Execution::default())?.evaluate(n)
}

/// `(g(n) − e(n)·a(1) − e(1)^n·a(n))/n` with `G = A(E)`.
pub fn general_prime_congruence(
    outer: &Series,
    inner: &Series,
    n: usize,
) -> Result<CongruenceReport> {
    require_at_least(n, 2, "general_prime_congruence")?;
    require_order(outer, n)?;
    require_order(inner, n)?;
    GeneralPrime::new(
        "custom",
        &outer.truncate(n),
        &inner.truncate(n),
        Execution::default(),
    )?
    .evaluate(n)
}

/// `(g(n) − e(n)·b(1))/n` with `G = B(E)`, `B` ordinary.
pub fn theorem2_congruence(outer: &Series, inner: &Series, n: usize) -> Result<CongruenceReport> {
    require_at_least(n, 2, "theorem2_congruence")?;
    require_order(outer, n)?;
    require_order(inner, n)?;
    Theorem2::new(
        "custom",
        &outer.truncate(n),
        &inner.truncate(n),
        Execution::default(),
    )?
    .evaluate(n)
}

/// `(B_n − 2)/n`, for `n ≥ 2`.
pub fn touchard_k0(n: usize) -> Result<CongruenceReport> {
    require_at_least(n, 2, "touchard_k0")?;
    TouchardK0::new(n).evaluate(n)
}

/// `(B_{n+k} − B_{k+1} − B_k)/n`, for `n ≥ 2`.
pub fn touchard_general(n: usize, k: usize) -> Result<CongruenceReport> {
    require_at_least(n, 2, "touchard_general")?;
    TouchardGeneral::new(k, n).evaluate(n)
}

/// `(E(n+1) − s(n))/n`, for `n ≥ 2`.
pub fn euler_congruence(n: usize) -> Result<CongruenceReport> {
    require_at_least(n, 2, "euler_congruence")?;
    EulerCongruence::new(n).evaluate(n)
}

/// Trial division; used to confirm that certificates name composites.
pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    (2..)
        .take_while(|d| d * d <= n)
        .all(|d| !n.is_multiple_of(d))
}

/// Smallest nontrivial factor of `n`, if any.
pub fn smallest_factor(n: usize) -> Option<usize> {
    (2..)
        .take_while(|d| d * d <= n)
        .find(|d| n.is_multiple_of(*d))
}

impl WitnessCertificate {
    /// True when the value really is a non-integer in lowest terms.
    pub fn is_well_formed(&self) -> bool {
        self.denominator > BigInt::one()
            && self.value.denom() == &self.denominator
            && !self.value.denom().is_negative()
    }
}
