//! Composition `R(F(x))` through the composita:
//! `h(n) = Σ_{k=1}^{n} F^Δ(n,k)·r(k)` and `h(0) = r(0)`.

use num_traits::Zero;

use crate::composita::{composita_by_power_with, CompositaTable};
use crate::{Error, ExactRational, Execution, Result, Series, SeriesKind};

/// Ordinary coefficients of `R(F(x))` given the ordinary coefficients of `R`.
/// The result is ordinary kind, truncated to `f.order()`.
pub fn compose_coeffs(outer: &[ExactRational], inner: &Series) -> Result<Series> {
    compose_coeffs_with(outer, inner, Execution::default())
}

pub fn compose_coeffs_with(
    outer: &[ExactRational],
    inner: &Series,
    exec: Execution,
) -> Result<Series> {
    inner.require_no_constant_term()?;
    if outer.len() < inner.order() + 1 {
        return Err(Error::IndexOutOfRange {
            index: inner.order(),
            order: outer.len().saturating_sub(1),
        });
    }
    let table = composita_by_power_with(inner, exec)?;
    Ok(compose_with_table(outer, &table, exec))
}

/// `R(F(x))` from a precomputed composita table of `F`; ordinary kind.
pub fn compose_with_table(
    outer: &[ExactRational],
    table: &CompositaTable,
    exec: Execution,
) -> Series {
    let order = table.order().min(outer.len() - 1);
    let coeffs = exec.map_range(0..order + 1, |n| {
        if n == 0 {
            return outer[0].clone();
        }
        let row = table.row(n).expect("n within table order");
        row.iter()
            .zip(&outer[1..])
            .filter(|(e, r)| !e.is_zero() && !r.is_zero())
            .fold(ExactRational::zero(), |acc, (e, r)| acc + e * r)
    });
    Series::new(coeffs, SeriesKind::Ordinary).expect("nonempty")
}

fn check_kinds(outer: &Series, want: SeriesKind, inner: &Series) -> Result<()> {
    if outer.kind() != want {
        return Err(Error::KindMismatch {
            left: outer.kind(),
            right: want,
        });
    }
    if inner.kind() != SeriesKind::Exponential {
        return Err(Error::KindMismatch {
            left: inner.kind(),
            right: SeriesKind::Exponential,
        });
    }
    Ok(())
}

/// `G = A(E(x))` for exponential `A` and `E`; `g(n) = n!·Σ_k E^Δ(n,k)·a(k)/k!`.
/// Truncated to the smaller of the two orders.
pub fn compose_egf_egf(outer: &Series, inner: &Series) -> Result<Series> {
    compose_egf_egf_with(outer, inner, Execution::default())
}

pub fn compose_egf_egf_with(outer: &Series, inner: &Series, exec: Execution) -> Result<Series> {
    check_kinds(outer, SeriesKind::Exponential, inner)?;
    compose_truncated(outer, inner, exec)
}

/// `G = B(E(x))` for ordinary `B` and exponential `E`; `g(n) = n!·Σ_k E^Δ(n,k)·b(k)`.
pub fn compose_ogf_egf(outer: &Series, inner: &Series) -> Result<Series> {
    compose_ogf_egf_with(outer, inner, Execution::default())
}

pub fn compose_ogf_egf_with(outer: &Series, inner: &Series, exec: Execution) -> Result<Series> {
    check_kinds(outer, SeriesKind::Ordinary, inner)?;
    compose_truncated(outer, inner, exec)
}

fn compose_truncated(outer: &Series, inner: &Series, exec: Execution) -> Result<Series> {
    let order = outer.order().min(inner.order());
    let inner = inner.truncate(order);
    // Both cases store r(k) as the ordinary coefficient of the outer series
    // (a(k)/k! for an EGF, b(k) for an OGF), so one formula serves.
    let g = compose_coeffs_with(&outer.coeffs()[..=order], &inner, exec)?;
    Ok(g.with_kind(SeriesKind::Exponential))
}

/// Whether each EGF coefficient `g(0..=N)` of `A(E(x))` is an integer.
/// Both inputs must have integer EGF coefficients.
pub fn integrality_of_composition(outer: &Series, inner: &Series) -> Result<Vec<bool>> {
    outer.integer_egf_coefficients()?;
    inner.integer_egf_coefficients()?;
    let g = compose_egf_egf(outer, inner)?;
    Ok(g.egf_coefficients()
        .iter()
        .map(|v| v.is_integer())
        .collect())
}
