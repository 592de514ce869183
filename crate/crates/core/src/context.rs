//! Global parameters: the prime power q and the rank r.

use crate::error::{Error, Result};
use crate::fq::Fq;

/// Validated global context. `q = p^e` is a prime power, `r >= 2` is the
/// rank. The base field `F_q` is constructed once with a deterministic
/// modulus so that element encodings are reproducible across runs.
#[derive(Debug, Clone)]
pub struct Context {
    pub q: u64,
    pub p: u64,
    pub e: u32,
    pub r: usize,
    fq: Fq,
}

impl Context {
    pub fn fq(&self) -> &Fq {
        &self.fq
    }

    /// q^k as u64; panics on overflow (desk-scale guard keeps this small).
    pub fn qpow(&self, k: u32) -> u64 {
        self.q.checked_pow(k).expect("q^k overflows u64")
    }
}

/// Factor `q` as `p^e` with `p` prime, or fail.
fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 0u64;
    let mut d = 2u64;
    while d * d <= q {
        if q % d == 0 {
            p = d;
            break;
        }
        d += 1;
    }
    if p == 0 {
        return Some((q, 1)); // q itself is prime
    }
    let mut m = q;
    let mut e = 0u32;
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    if m == 1 {
        Some((p, e))
    } else {
        None
    }
}

pub fn make_context(q: u64, r: usize) -> Result<Context> {
    let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if r < 2 {
        return Err(Error::RankTooSmall(r));
    }
    let fq = Fq::new(p, e);
    Ok(Context { q, p, e, r, fq })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_prime_powers() {
        let ctx = make_context(4, 3).unwrap();
        assert_eq!((ctx.q, ctx.p, ctx.e, ctx.r), (4, 2, 2, 3));
        let ctx = make_context(9, 2).unwrap();
        assert_eq!((ctx.p, ctx.e), (3, 2));
        let ctx = make_context(5, 4).unwrap();
        assert_eq!((ctx.p, ctx.e), (5, 1));
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert_eq!(make_context(6, 3).unwrap_err(), Error::NotPrimePower(6));
        assert_eq!(make_context(12, 2).unwrap_err(), Error::NotPrimePower(12));
        assert_eq!(make_context(1, 2).unwrap_err(), Error::NotPrimePower(1));
        assert_eq!(make_context(0, 2).unwrap_err(), Error::NotPrimePower(0));
    }

    #[test]
    fn rejects_small_rank() {
        assert_eq!(make_context(2, 1).unwrap_err(), Error::RankTooSmall(1));
        assert_eq!(make_context(2, 0).unwrap_err(), Error::RankTooSmall(0));
    }
}
