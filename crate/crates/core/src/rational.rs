//! Exact rational log-norm values, with a distinguished bottom element.
//!
//! All spectral norms are tracked through `log_q` of the absolute value, an
//! exact rational. The zero element of a normed space has `log = -infinity`,
//! an absorbing bottom element for max computations.

use num_bigint::BigInt;
use num_rational::BigRational;
use std::cmp::Ordering;
use std::fmt;

/// Arbitrary-precision rational. Always stored in lowest terms with a
/// positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// A log-norm value in `Q ∪ {-infinity}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LogVal {
    NegInf,
    Finite(Rat),
}

impl LogVal {
    pub fn finite(v: Rat) -> Self {
        LogVal::Finite(v)
    }

    pub fn is_neg_inf(&self) -> bool {
        matches!(self, LogVal::NegInf)
    }

    pub fn unwrap_finite(self) -> Rat {
        match self {
            LogVal::Finite(v) => v,
            LogVal::NegInf => panic!("log value is -infinity"),
        }
    }
}

impl PartialOrd for LogVal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LogVal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (LogVal::NegInf, LogVal::NegInf) => Ordering::Equal,
            (LogVal::NegInf, _) => Ordering::Less,
            (_, LogVal::NegInf) => Ordering::Greater,
            (LogVal::Finite(a), LogVal::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for LogVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogVal::NegInf => write!(f, "-inf"),
            LogVal::Finite(v) => write!(f, "{}", v),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neg_inf_is_bottom() {
        assert!(LogVal::NegInf < LogVal::finite(rat(-1000)));
        assert_eq!(
            LogVal::NegInf.max(LogVal::finite(rat(3))),
            LogVal::finite(rat(3))
        );
    }

    #[test]
    fn rationals_reduce() {
        assert_eq!(ratio(2, 4), ratio(1, 2));
        assert_eq!(ratio(-3, -6), ratio(1, 2));
        assert!(ratio(-1, 2) < ratio(1, 3));
    }
}
