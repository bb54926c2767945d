//! Named series, generated exactly to any requested order.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::numbers::factorial;
use crate::{Error, ExactRational, Series, SeriesKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Builtin {
    /// `x`
    X,
    /// `e^x`
    Exp,
    /// `e^x − 1`
    Expm1,
    /// `sin x`
    Sin,
    /// `artanh x = Σ_{n odd} x^n / n`
    Artanh,
    /// `1/(1 − x)`, the only ordinary-kind built-in.
    Geom,
    /// `x + x²/2 + x³/6`
    Poly3,
}

impl Builtin {
    pub const ALL: [Builtin; 7] = [
        Builtin::X,
        Builtin::Exp,
        Builtin::Expm1,
        Builtin::Sin,
        Builtin::Artanh,
        Builtin::Geom,
        Builtin::Poly3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::X => "x",
            Builtin::Exp => "exp",
            Builtin::Expm1 => "expm1",
            Builtin::Sin => "sin",
            Builtin::Artanh => "artanh",
            Builtin::Geom => "geom",
            Builtin::Poly3 => "poly3",
        }
    }

    pub fn kind(self) -> SeriesKind {
        match self {
            Builtin::Geom => SeriesKind::Ordinary,
            _ => SeriesKind::Exponential,
        }
    }

    /// Ordinary coefficient `[x^n]`.
    pub fn coefficient(self, n: usize) -> ExactRational {
        let inv_fact = || ExactRational::new(BigInt::one(), factorial(n));
        match self {
            Builtin::X => indicator(n == 1),
            Builtin::Exp => inv_fact(),
            Builtin::Expm1 if n == 0 => ExactRational::zero(),
            Builtin::Expm1 => inv_fact(),
            Builtin::Sin => match n % 4 {
                1 => inv_fact(),
                3 => -inv_fact(),
                _ => ExactRational::zero(),
            },
            Builtin::Artanh if n % 2 == 1 => ExactRational::new(BigInt::one(), BigInt::from(n)),
            Builtin::Artanh => ExactRational::zero(),
            Builtin::Geom => ExactRational::one(),
            Builtin::Poly3 if (1..=3).contains(&n) => inv_fact(),
            Builtin::Poly3 => ExactRational::zero(),
        }
    }

    pub fn series(self, order: usize) -> Series {
        Series::new(
            (0..=order).map(|n| self.coefficient(n)).collect(),
            self.kind(),
        )
        .expect("order + 1 coefficients")
    }
}

fn indicator(b: bool) -> ExactRational {
    if b {
        ExactRational::one()
    } else {
        ExactRational::zero()
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Builtin::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown built-in series `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for b in Builtin::ALL {
            assert_eq!(b.name().parse::<Builtin>().unwrap(), b);
        }
        assert!("cos".parse::<Builtin>().is_err());
    }

    #[test]
    fn sin_egf_coefficients_follow_taylor_expansion() {
        let egf = Builtin::Sin.series(9).egf_coefficients();
        let expected = [0i64, 1, 0, -1, 0, 1, 0, -1, 0, 1];
        for (n, e) in expected.iter().enumerate() {
            assert_eq!(egf[n], ExactRational::from_integer((*e).into()), "n = {n}");
        }
    }

    #[test]
    fn artanh_and_poly3_coefficients() {
        let a = Builtin::Artanh.series(5);
        assert_eq!(a.coeff(5).unwrap(), &ExactRational::new(1.into(), 5.into()));
        assert!(a.coeff(4).unwrap().is_zero());
        let p = Builtin::Poly3.series(5);
        assert_eq!(p.coeff(3).unwrap(), &ExactRational::new(1.into(), 6.into()));
        assert!(p.coeff(4).unwrap().is_zero());
        assert!(Builtin::Geom.series(3).coeffs().iter().all(One::is_one));
    }
}
