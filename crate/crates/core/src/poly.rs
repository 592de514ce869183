//! Polynomials and Laurent polynomials over `F_q` in the variable `T`.
//!
//! The absolute value at infinity is normalized by `|T| = q`, so for a
//! nonzero Laurent polynomial `f` the log-norm is `deg_T f` and the
//! `pi`-adic valuation (`pi = T^{-1}`) is `-deg_T f`. The zero polynomial
//! has degree `-infinity`, kept as `None`.

use crate::error::{Error, Result};
use crate::fq::{Fq, FqElem};

/// Dense polynomial in `T` over `F_q`; `coeffs[i]` is the coefficient of
/// `T^i`. Invariant: no trailing zero coefficient (zero = empty).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FqPoly {
    pub coeffs: Vec<FqElem>,
}

impl FqPoly {
    pub fn zero() -> FqPoly {
        FqPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<FqElem>) -> FqPoly {
        while coeffs.last().is_some_and(|c| c.0 == 0) {
            coeffs.pop();
        }
        FqPoly { coeffs }
    }

    pub fn constant(c: FqElem) -> FqPoly {
        FqPoly::from_coeffs(vec![c])
    }

    pub fn one(fq: &Fq) -> FqPoly {
        FqPoly::constant(fq.one())
    }

    /// c * T^k
    pub fn monomial(c: FqElem, k: usize) -> FqPoly {
        if c.0 == 0 {
            return FqPoly::zero();
        }
        let mut coeffs = vec![FqElem(0); k + 1];
        coeffs[k] = c;
        FqPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in T; None encodes -infinity.
    pub fn deg(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() as i64 - 1)
        }
    }

    pub fn leading_coeff(&self) -> FqElem {
        *self.coeffs.last().unwrap_or(&FqElem(0))
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        *self.coeffs.get(i).unwrap_or(&FqElem(0))
    }

    pub fn add(&self, fq: &Fq, other: &FqPoly) -> FqPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(fq.add(self.coeff(i), other.coeff(i)));
        }
        FqPoly::from_coeffs(out)
    }

    pub fn neg(&self, fq: &Fq) -> FqPoly {
        FqPoly::from_coeffs(self.coeffs.iter().map(|&c| fq.neg(c)).collect())
    }

    pub fn sub(&self, fq: &Fq, other: &FqPoly) -> FqPoly {
        self.add(fq, &other.neg(fq))
    }

    pub fn mul(&self, fq: &Fq, other: &FqPoly) -> FqPoly {
        if self.is_zero() || other.is_zero() {
            return FqPoly::zero();
        }
        let mut out = vec![FqElem(0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.0 == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = fq.add(out[i + j], fq.mul(a, b));
            }
        }
        FqPoly::from_coeffs(out)
    }

    pub fn scale(&self, fq: &Fq, c: FqElem) -> FqPoly {
        FqPoly::from_coeffs(self.coeffs.iter().map(|&a| fq.mul(a, c)).collect())
    }

    /// Quotient and remainder with deg(rem) < deg(b).
    pub fn divrem(&self, fq: &Fq, b: &FqPoly) -> Result<(FqPoly, FqPoly)> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let db = b.coeffs.len() - 1;
        let lead_inv = fq.inv(b.leading_coeff())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![FqElem(0); rem.len().saturating_sub(db)];
        while rem.len() > db {
            let lead = *rem.last().unwrap();
            let k = rem.len() - 1 - db;
            if lead.0 != 0 {
                let f = fq.mul(lead, lead_inv);
                quot[k] = f;
                for i in 0..=db {
                    let t = fq.mul(f, b.coeff(i));
                    rem[k + i] = fq.sub(rem[k + i], t);
                }
            }
            rem.pop();
        }
        Ok((FqPoly::from_coeffs(quot), FqPoly::from_coeffs(rem)))
    }

    /// Format like "T^2 + 2*T + 1" using element encodings.
    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.0 == 0 {
                continue;
            }
            let term = match (i, c.0) {
                (0, v) => format!("{}", v),
                (1, 1) => "T".into(),
                (1, v) => format!("{}*T", v),
                (i, 1) => format!("T^{}", i),
                (i, v) => format!("{}*T^{}", v, i),
            };
            parts.push(term);
        }
        parts.join(" + ")
    }
}

/// Laurent polynomial in `T`: `coeffs[j]` is the coefficient of
/// `T^{min_deg + j}`. Invariant: first and last stored coefficients are
/// nonzero; zero = empty with `min_deg = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FqLaurent {
    pub coeffs: Vec<FqElem>,
    pub min_deg: i64,
}

impl FqLaurent {
    pub fn zero() -> FqLaurent {
        FqLaurent {
            coeffs: Vec::new(),
            min_deg: 0,
        }
    }

    pub fn normalize(mut coeffs: Vec<FqElem>, mut min_deg: i64) -> FqLaurent {
        while coeffs.last().is_some_and(|c| c.0 == 0) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.0 == 0).count();
        if lead_zeros > 0 {
            coeffs.drain(..lead_zeros);
            min_deg += lead_zeros as i64;
        }
        if coeffs.is_empty() {
            min_deg = 0;
        }
        FqLaurent { coeffs, min_deg }
    }

    pub fn from_poly(p: &FqPoly) -> FqLaurent {
        FqLaurent::normalize(p.coeffs.clone(), 0)
    }

    pub fn constant(c: FqElem) -> FqLaurent {
        FqLaurent::normalize(vec![c], 0)
    }

    pub fn one(fq: &Fq) -> FqLaurent {
        FqLaurent::constant(fq.one())
    }

    /// c * T^k for any integer k (k < 0 gives a pi-power).
    pub fn monomial(c: FqElem, k: i64) -> FqLaurent {
        FqLaurent::normalize(vec![c], k)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.min_deg + self.coeffs.len() as i64 - 1)
        }
    }

    /// pi-adic valuation, pi = T^{-1}; None is +infinity (zero).
    pub fn val_pi(&self) -> Option<i64> {
        self.deg().map(|d| -d)
    }

    /// Coefficient of the top T-degree, i.e. of `pi^{val_pi}`.
    pub fn leading_coeff(&self) -> FqElem {
        *self.coeffs.last().unwrap_or(&FqElem(0))
    }

    pub fn coeff_at(&self, t_deg: i64) -> FqElem {
        if self.is_zero() {
            return FqElem(0);
        }
        let idx = t_deg - self.min_deg;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            FqElem(0)
        } else {
            self.coeffs[idx as usize]
        }
    }

    pub fn add(&self, fq: &Fq, other: &FqLaurent) -> FqLaurent {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.min_deg.min(other.min_deg);
        let hi = (self.min_deg + self.coeffs.len() as i64)
            .max(other.min_deg + other.coeffs.len() as i64);
        let mut out = vec![FqElem(0); (hi - lo) as usize];
        for (j, c) in out.iter_mut().enumerate() {
            let d = lo + j as i64;
            *c = fq.add(self.coeff_at(d), other.coeff_at(d));
        }
        FqLaurent::normalize(out, lo)
    }

    pub fn neg(&self, fq: &Fq) -> FqLaurent {
        FqLaurent::normalize(
            self.coeffs.iter().map(|&c| fq.neg(c)).collect(),
            self.min_deg,
        )
    }

    pub fn sub(&self, fq: &Fq, other: &FqLaurent) -> FqLaurent {
        self.add(fq, &other.neg(fq))
    }

    pub fn mul(&self, fq: &Fq, other: &FqLaurent) -> FqLaurent {
        if self.is_zero() || other.is_zero() {
            return FqLaurent::zero();
        }
        let mut out = vec![FqElem(0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.0 == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = fq.add(out[i + j], fq.mul(a, b));
            }
        }
        FqLaurent::normalize(out, self.min_deg + other.min_deg)
    }

    /// Multiply by T^k.
    pub fn shift(&self, k: i64) -> FqLaurent {
        if self.is_zero() {
            return FqLaurent::zero();
        }
        FqLaurent {
            coeffs: self.coeffs.clone(),
            min_deg: self.min_deg + k,
        }
    }

    pub fn scale(&self, fq: &Fq, c: FqElem) -> FqLaurent {
        if c.0 == 0 {
            return FqLaurent::zero();
        }
        FqLaurent::normalize(
            self.coeffs.iter().map(|&a| fq.mul(a, c)).collect(),
            self.min_deg,
        )
    }

    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.0 == 0 {
                continue;
            }
            let d = self.min_deg + j as i64;
            let term = match (d, c.0) {
                (0, v) => format!("{}", v),
                (1, 1) => "T".into(),
                (1, v) => format!("{}*T", v),
                (d, 1) => format!("T^{}", d),
                (d, v) => format!("{}*T^{}", v, d),
            };
            parts.push(term);
        }
        parts.join(" + ")
    }
}
