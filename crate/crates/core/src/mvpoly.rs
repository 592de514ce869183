//! Trivariate polynomials over `F_q` and the divisor-degree oracle for the
//! local inner degree at the origin.
//!
//! The Moore minor `M^{(k)}(w_1, w_2, w_3)` is a form on `P^2` whose zero
//! divisor contains every rational hyperplane with multiplicity one; the
//! inner degree at the origin is its total degree minus the `q^2 + q + 1`
//! boundary hyperplanes. We verify the multiplicity-one claim by exact
//! division: divide once by each rational linear form, check exactness, and
//! check the final quotient is coprime to all of them.

use crate::context::Context;
use crate::error::{Error, Result};
use crate::fq::{Fq, FqElem};
use std::collections::BTreeMap;

/// Monomial exponents, graded-lex ordered: higher total degree first, ties
/// by exponent vector (w_1 before w_2 before w_3).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    fn grlex_key(&self) -> (u32, [u32; 3]) {
        (self.0.iter().sum(), self.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.grlex_key().cmp(&other.grlex_key())
    }
}

/// Sparse trivariate polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MvPoly {
    pub terms: BTreeMap<[u32; 3], FqElem>,
}

impl MvPoly {
    pub fn zero() -> MvPoly {
        MvPoly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, fq: &Fq, exp: [u32; 3], c: FqElem) {
        if c.0 == 0 {
            return;
        }
        let entry = self.terms.entry(exp).or_insert(FqElem(0));
        *entry = fq.add(*entry, c);
        if entry.0 == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Leading term in graded lex.
    fn leading(&self) -> Option<([u32; 3], FqElem)> {
        self.terms
            .iter()
            .max_by(|a, b| Monomial(*a.0).cmp(&Monomial(*b.0)))
            .map(|(e, c)| (*e, *c))
    }

    fn sub_scaled(&mut self, fq: &Fq, other: &MvPoly, exp: [u32; 3], c: FqElem) {
        // self -= c * X^exp * other
        for (e, oc) in &other.terms {
            let shifted = [e[0] + exp[0], e[1] + exp[1], e[2] + exp[2]];
            self.add_term(fq, shifted, fq.neg(fq.mul(c, *oc)));
        }
    }

    /// Exact division by `g`: returns the quotient if the remainder of the
    /// graded-lex division algorithm vanishes.
    pub fn divide_exact(&self, fq: &Fq, g: &MvPoly) -> Option<MvPoly> {
        let (glead, gc) = g.leading()?;
        let gc_inv = fq.inv(gc).ok()?;
        let mut rem = self.clone();
        let mut quot = MvPoly::zero();
        loop {
            let Some((e, c)) = rem.leading() else {
                return Some(quot);
            };
            if e[0] < glead[0] || e[1] < glead[1] || e[2] < glead[2] {
                return None; // leading term not divisible: nonzero remainder
            }
            let shift = [e[0] - glead[0], e[1] - glead[1], e[2] - glead[2]];
            let qc = fq.mul(c, gc_inv);
            quot.add_term(fq, shift, qc);
            rem.sub_scaled(fq, g, shift, qc);
        }
    }

    pub fn divisible_by(&self, fq: &Fq, g: &MvPoly) -> bool {
        self.divide_exact(fq, g).is_some()
    }
}

/// The rational linear forms, one per point of `P^2(F_q)`.
pub fn rational_linear_forms(fq: &Fq) -> Vec<MvPoly> {
    let q = fq.q;
    let mut out = Vec::new();
    let mut push = |c: [u64; 3]| {
        let mut p = MvPoly::zero();
        p.add_term(fq, [1, 0, 0], FqElem(c[0]));
        p.add_term(fq, [0, 1, 0], FqElem(c[1]));
        p.add_term(fq, [0, 0, 1], FqElem(c[2]));
        out.push(p);
    };
    push([1, 0, 0]);
    for b in 0..q {
        push([b, 1, 0]);
    }
    for b in 0..q {
        for c in 0..q {
            push([b, c, 1]);
        }
    }
    out
}

/// The Moore minor `M^{(skip)}` of `(w_1, w_2, w_3)` as a polynomial:
/// determinant of the 3x3 matrix with rows `(w_i^{q^a})` over the exponents
/// `a in {0,1,2,3} \ {skip}`.
pub fn moore_minor_poly(ctx: &Context, skip: u32) -> MvPoly {
    let fq = ctx.fq();
    let exps: Vec<u32> = (0..=3).filter(|&a| a != skip).collect();
    let q = ctx.q;
    let qp = |a: u32| -> u32 { (q as u32).pow(a) }; // desk-scale guard keeps this small
    let mut out = MvPoly::zero();
    // permutation expansion of the 3x3 determinant
    let perms: [([usize; 3], bool); 6] = [
        ([0, 1, 2], true),
        ([1, 2, 0], true),
        ([2, 0, 1], true),
        ([0, 2, 1], false),
        ([1, 0, 2], false),
        ([2, 1, 0], false),
    ];
    for (perm, even) in perms {
        let mut exp = [0u32; 3];
        for (row, &col) in perm.iter().enumerate() {
            // row w_{row+1} taken at Frobenius exponent exps[col]
            exp[row] = qp(exps[col]);
        }
        let c = if even { fq.one() } else { fq.neg(fq.one()) };
        out.add_term(fq, exp, c);
    }
    out
}

/// Divisor-degree route to the local inner degree of `alpha_k` at the
/// origin (rank 3, `k` in {1, 2}): divide `M^{(k)}` once by every rational
/// linear form, check exactness and coprimality of the quotient, and return
/// `deg M^{(k)} - (q^2 + q + 1)`.
pub fn inner_degree_via_moore(ctx: &Context, k: usize) -> Result<i64> {
    if ctx.r != 3 {
        return Err(Error::UnsupportedRank(ctx.r));
    }
    if !(1..=2).contains(&k) {
        return Err(Error::IndexOutOfRange(format!(
            "k = {} (supported: 1, 2)",
            k
        )));
    }
    if ctx.q > 3 {
        return Err(Error::Invalid(format!(
            "degree guard: q = {} exceeds 3 for the Moore divisor oracle",
            ctx.q
        )));
    }
    let fq = ctx.fq();
    let m = moore_minor_poly(ctx, k as u32);
    let total = m.total_degree().expect("Moore minor is nonzero") as i64;
    let forms = rational_linear_forms(fq);
    let mut quotient = m;
    for form in &forms {
        quotient = quotient.divide_exact(fq, form).ok_or_else(|| {
            Error::DivisibilityFailure(format!(
                "Moore minor M^({}) not divisible by a rational hyperplane",
                k
            ))
        })?;
    }
    for form in &forms {
        if quotient.divisible_by(fq, form) {
            return Err(Error::DivisibilityFailure(format!(
                "quotient of M^({}) still divisible by a rational hyperplane",
                k
            )));
        }
    }
    Ok(total - forms.len() as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::make_context;

    #[test]
    fn linear_form_count() {
        for q in [2u64, 3] {
            let ctx = make_context(q, 3).unwrap();
            assert_eq!(rational_linear_forms(ctx.fq()).len() as u64, q * q + q + 1);
        }
    }

    #[test]
    fn division_round_trip() {
        let ctx = make_context(3, 3).unwrap();
        let fq = ctx.fq();
        let forms = rational_linear_forms(fq);
        let mut prod = MvPoly::zero();
        prod.add_term(fq, [0, 0, 0], fq.one());
        for f in forms.iter().take(4) {
            let mut next = MvPoly::zero();
            for (e, c) in &prod.terms {
                for (fe, fc) in &f.terms {
                    next.add_term(
                        fq,
                        [e[0] + fe[0], e[1] + fe[1], e[2] + fe[2]],
                        fq.mul(*c, *fc),
                    );
                }
            }
            prod = next;
        }
        let mut q = prod.clone();
        for f in forms.iter().take(4) {
            q = q.divide_exact(fq, f).expect("exact by construction");
        }
        assert_eq!(q.total_degree(), Some(0));
        // and a non-divisor fails
        assert!(!prod.divisible_by(fq, forms.last().unwrap()));
    }

    #[test]
    fn moore_minor_degrees() {
        let ctx = make_context(2, 3).unwrap();
        let q = ctx.q as u32;
        assert_eq!(
            moore_minor_poly(&ctx, 2).total_degree(),
            Some(1 + q + q * q * q)
        );
        assert_eq!(
            moore_minor_poly(&ctx, 1).total_degree(),
            Some(1 + q * q + q * q * q)
        );
    }

    #[test]
    fn inner_degrees_closed_forms() {
        for q in [2i64, 3] {
            let ctx = make_context(q as u64, 3).unwrap();
            assert_eq!(inner_degree_via_moore(&ctx, 2).unwrap(), q * q * q - q * q);
            assert_eq!(inner_degree_via_moore(&ctx, 1).unwrap(), q * q * q - q);
        }
    }

    #[test]
    fn guards() {
        let ctx = make_context(5, 3).unwrap();
        assert!(inner_degree_via_moore(&ctx, 2).is_err());
        let ctx = make_context(2, 4).unwrap();
        assert!(matches!(
            inner_degree_via_moore(&ctx, 2),
            Err(Error::UnsupportedRank(4))
        ));
    }
}
