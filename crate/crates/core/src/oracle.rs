//! Brute-force oracles over finite fields: Moore determinants, exponential
//! coefficients of finite lattices, the one-level valued model for the
//! reduction identity of exponential coefficients, and the zero count of
//! the boundary form `beta`.
//!
//! These are independent of the chamber/building machinery and serve as
//! ground truth for the local inner degrees and the spectral principle.

use crate::context::Context;
use crate::error::{Error, Result};
use crate::extfield::{ExtElem, ExtField};

/// A finite-dimensional F_q-subspace of `F_{q^m}`, given by a basis.
#[derive(Debug, Clone)]
pub struct FqLattice {
    pub basis: Vec<ExtElem>,
}

/// Moore determinant of `n` elements: `det(omega_j^{q^i})_{j,i}` with rows
/// indexed by the elements and columns by the Frobenius powers `0..n`.
pub fn moore_det(field: &ExtField, elems: &[ExtElem]) -> ExtElem {
    let n = elems.len();
    let rows: Vec<Vec<ExtElem>> = elems
        .iter()
        .map(|&w| (0..n as u32).map(|i| field.frob(w, i)).collect())
        .collect();
    ext_det(field, rows)
}

/// Moore minor `M^{(i)}`: drop the column of Frobenius exponent `i` from
/// the `n x (n+1)` Moore matrix of the given elements.
pub fn moore_minor(field: &ExtField, elems: &[ExtElem], skip: u32) -> ExtElem {
    let n = elems.len();
    let rows: Vec<Vec<ExtElem>> = elems
        .iter()
        .map(|&w| {
            (0..=n as u32)
                .filter(|&i| i != skip)
                .map(|i| field.frob(w, i))
                .collect()
        })
        .collect();
    ext_det(field, rows)
}

fn ext_det(field: &ExtField, mut a: Vec<Vec<ExtElem>>) -> ExtElem {
    let n = a.len();
    let mut det = field.one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&row| !field.is_zero(a[row][col])) else {
            return field.zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = field.neg(det);
        }
        let pv = a[col][col];
        det = field.mul(det, pv);
        let inv = field.inv(pv).expect("pivot nonzero");
        for row in col + 1..n {
            let f = field.mul(a[row][col], inv);
            if field.is_zero(f) {
                continue;
            }
            for k in col..n {
                let t = field.mul(f, a[col][k]);
                a[row][k] = field.sub(a[row][k], t);
            }
        }
    }
    det
}

/// Enumerate all q^n elements of the span of the basis.
pub fn span_elements(field: &ExtField, basis: &[ExtElem]) -> Vec<ExtElem> {
    let q = field.fq.q;
    let n = basis.len();
    let total = q.pow(n as u32);
    let mut out = Vec::with_capacity(total as usize);
    for code in 0..total {
        let mut acc = field.zero();
        let mut c = code;
        for &b in basis {
            let coeff = crate::fq::FqElem(c % q); // base-field scalar
            c /= q;
            if coeff.0 != 0 {
                acc = field.add(acc, field.mul(field.embed(coeff), b));
            }
        }
        out.push(acc);
    }
    out
}

/// Coefficients `alpha_0 .. alpha_n` of the exponential `e_W` of the span
/// of the basis, computed two independent ways and asserted equal:
///
/// 1. expand `f_W(X) = prod_{w in W} (X - w)` (a q-polynomial since `W` is
///    an F_q-space) and normalize by the coefficient of `X`;
/// 2. Moore minors: `alpha_i = (-1)^i M^{(i)} / M^{(0)}`.
pub fn exp_poly_coeffs(ctx: &Context, field: &ExtField, w: &FqLattice) -> Result<Vec<ExtElem>> {
    let n = w.basis.len();
    if field.is_zero(moore_det(field, &w.basis)) {
        return Err(Error::DependentBasis);
    }
    // route 1: product expansion
    let elements = span_elements(field, &w.basis);
    let mut poly = vec![field.one()]; // coefficients of prod (X - w), low degree first
    for &lam in &elements {
        // multiply by (X - lam)
        let mut next = vec![field.zero(); poly.len() + 1];
        for (i, &c) in poly.iter().enumerate() {
            next[i + 1] = field.add(next[i + 1], c);
            next[i] = field.sub(next[i], field.mul(c, lam));
        }
        poly = next;
    }
    // q-additivity: only exponents q^j may carry nonzero coefficients
    let q = field.fq.q;
    let mut route1 = Vec::with_capacity(n + 1);
    let mut qpow = 1usize;
    for (i, &c) in poly.iter().enumerate() {
        if i == qpow {
            route1.push(c);
            qpow *= q as usize;
        } else if !field.is_zero(c) && i != 0 {
            return Err(Error::Invalid(format!(
                "product expansion is not q-additive at exponent {}",
                i
            )));
        }
    }
    // normalize: e_W = f_W / (coefficient of X)
    let lead_inv = field.inv(route1[0])?;
    let route1: Vec<ExtElem> = route1.iter().map(|&c| field.mul(c, lead_inv)).collect();

    // route 2: Moore minors
    let m0 = moore_minor(field, &w.basis, 0);
    let m0_inv = field.inv(m0)?;
    let mut route2 = Vec::with_capacity(n + 1);
    for i in 0..=n as u32 {
        let mi = moore_minor(field, &w.basis, i);
        let mut v = field.mul(mi, m0_inv);
        if i % 2 == 1 {
            v = field.neg(v);
        }
        route2.push(v);
    }
    if route1 != route2 {
        return Err(Error::Invalid(
            "Moore-minor route disagrees with product expansion".into(),
        ));
    }
    let _ = ctx;
    Ok(route1)
}

/// Number of `omega_2` in `F_{q^2} \ F_q` with `alpha_1(F_q + F_q omega_2)`
/// equal to zero; the boundary-form zero count `q^2 - q`.
pub fn beta_zero_count(ctx: &Context) -> Result<u64> {
    let field = ExtField::new(ctx.fq(), 2)?;
    let one = field.one();
    let mut count = 0u64;
    for w2 in field.elements() {
        if field.in_base_field(w2) {
            continue;
        }
        let coeffs = exp_poly_coeffs(
            ctx,
            &field,
            &FqLattice {
                basis: vec![one, w2],
            },
        )?;
        if field.is_zero(coeffs[1]) {
            count += 1;
        }
    }
    Ok(count)
}

// ---------------------------------------------------------------------------
// One-level valued model F_{q^m}[u]/(u^2)
// ---------------------------------------------------------------------------

/// Element `a + b u` of `R = F_{q^m}[u]/(u^2)`; `|a + bu| = 1` when `a != 0`,
/// `|u|` in (0,1) when `a = 0 != b`, and 0 when both vanish.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UElem {
    pub a: ExtElem,
    pub b: ExtElem,
}

/// A finite lattice in the one-level valued model: basis elements
/// `lambda_1, ..., lambda_{d0}` purely infinitesimal (`a = 0`) and
/// `lambda_{d0+1}, ..., lambda_d` of unit norm, with the unit parts
/// F_q-independent after reduction. This realizes the hypothesis
/// `|lambda_{d0}| < |lambda_{d0+1}| = ... = |lambda_d| = 1`.
#[derive(Debug, Clone)]
pub struct UModelLattice {
    pub d0: usize,
    pub basis: Vec<UElem>,
}

pub struct URing<'a> {
    pub field: &'a ExtField,
}

impl<'a> URing<'a> {
    pub fn zero(&self) -> UElem {
        UElem {
            a: self.field.zero(),
            b: self.field.zero(),
        }
    }

    pub fn add(&self, x: UElem, y: UElem) -> UElem {
        UElem {
            a: self.field.add(x.a, y.a),
            b: self.field.add(x.b, y.b),
        }
    }

    pub fn sub(&self, x: UElem, y: UElem) -> UElem {
        UElem {
            a: self.field.sub(x.a, y.a),
            b: self.field.sub(x.b, y.b),
        }
    }

    pub fn mul(&self, x: UElem, y: UElem) -> UElem {
        // (a + bu)(c + du) = ac + (ad + bc) u, u^2 = 0
        UElem {
            a: self.field.mul(x.a, y.a),
            b: self
                .field
                .add(self.field.mul(x.a, y.b), self.field.mul(x.b, y.a)),
        }
    }

    pub fn scale_base(&self, c: crate::fq::FqElem, x: UElem) -> UElem {
        let ce = self.field.embed(c);
        UElem {
            a: self.field.mul(ce, x.a),
            b: self.field.mul(ce, x.b),
        }
    }
}

impl UModelLattice {
    /// Validate the hypothesis and basic independence.
    pub fn validate(&self, field: &ExtField) -> Result<()> {
        let d = self.basis.len();
        if self.d0 >= d {
            return Err(Error::HypothesisViolated(
                "need at least one unit-norm basis element".into(),
            ));
        }
        for (j, lam) in self.basis.iter().enumerate() {
            let infinitesimal = field.is_zero(lam.a);
            if j < self.d0 && !infinitesimal {
                return Err(Error::HypothesisViolated(format!(
                    "basis element {} should be infinitesimal",
                    j + 1
                )));
            }
            if j >= self.d0 && infinitesimal {
                return Err(Error::HypothesisViolated(format!(
                    "basis element {} should have unit norm",
                    j + 1
                )));
            }
        }
        // u-parts of the infinitesimal block independent over F_q
        if self.d0 > 0 {
            let infs: Vec<ExtElem> = self.basis[..self.d0].iter().map(|l| l.b).collect();
            if field.is_zero(moore_det(field, &infs)) {
                return Err(Error::HypothesisViolated(
                    "infinitesimal parts are F_q-dependent".into(),
                ));
            }
        }
        // reductions of the unit block independent over F_q
        let units: Vec<ExtElem> = self.basis[self.d0..].iter().map(|l| l.a).collect();
        if field.is_zero(moore_det(field, &units)) {
            return Err(Error::HypothesisViolated(
                "reduced unit parts are F_q-dependent".into(),
            ));
        }
        Ok(())
    }

    /// All q^d elements of the span.
    pub fn elements(&self, field: &ExtField) -> Vec<UElem> {
        let ring = URing { field };
        let q = field.fq.q;
        let total = q.pow(self.basis.len() as u32);
        let mut out = Vec::with_capacity(total as usize);
        for code in 0..total {
            let mut acc = ring.zero();
            let mut c = code;
            for &lam in &self.basis {
                let coeff = crate::fq::FqElem(c % q);
                c /= q;
                if coeff.0 != 0 {
                    acc = ring.add(acc, ring.scale_base(coeff, lam));
                }
            }
            out.push(acc);
        }
        out
    }

    /// Coefficients `gamma_j` of `f_W(X) = prod_{w in W}(X - w)` at the
    /// exponents `q^j` (a q-polynomial over R with gamma_d = 1).
    pub fn monic_coeffs(&self, field: &ExtField) -> Result<Vec<UElem>> {
        let ring = URing { field };
        let elements = self.elements(field);
        let mut poly = vec![UElem {
            a: field.one(),
            b: field.zero(),
        }];
        for &lam in &elements {
            let mut next = vec![ring.zero(); poly.len() + 1];
            for (i, &c) in poly.iter().enumerate() {
                next[i + 1] = ring.add(next[i + 1], c);
                next[i] = ring.sub(next[i], ring.mul(c, lam));
            }
            poly = next;
        }
        let q = field.fq.q as usize;
        let d = self.basis.len();
        let mut out = Vec::with_capacity(d + 1);
        let mut qpow = 1usize;
        for (i, &c) in poly.iter().enumerate() {
            if i == qpow {
                out.push(c);
                qpow *= q;
            } else if i != 0 && (c.a != field.zero() || c.b != field.zero()) {
                return Err(Error::Invalid(format!(
                    "u-model expansion not q-additive at exponent {}",
                    i
                )));
            }
        }
        debug_assert_eq!(out.len(), d + 1);
        Ok(out)
    }
}

/// Check the reduction identity for exponential coefficients on a one-level
/// valued lattice: writing `gamma_j` for the coefficients of the monic
/// `f_W` and `delta_j` for those of `f_{Wbar}` over the residue field,
/// `gamma_j` reduces to `delta_{j - d0}^{q^{d0}}` for `d0 <= j <= d`
/// (and to 0 for `j < d0`).
pub fn reduction_identity_check(ctx: &Context, field: &ExtField, w: &UModelLattice) -> Result<bool> {
    w.validate(field)?;
    let d = w.basis.len();
    let d0 = w.d0;
    let gammas = w.monic_coeffs(field)?;

    // residue lattice Wbar spanned by the reduced unit parts
    let units: Vec<ExtElem> = w.basis[d0..].iter().map(|l| l.a).collect();
    let reduced = span_elements(field, &units);
    let mut fbar = vec![field.one()];
    for &lam in &reduced {
        let mut next = vec![field.zero(); fbar.len() + 1];
        for (i, &c) in fbar.iter().enumerate() {
            next[i + 1] = field.add(next[i + 1], c);
            next[i] = field.sub(next[i], field.mul(c, lam));
        }
        fbar = next;
    }
    let q = field.fq.q as usize;
    let mut deltas = Vec::with_capacity(d - d0 + 1);
    let mut qpow = 1usize;
    for (i, &c) in fbar.iter().enumerate() {
        if i == qpow {
            deltas.push(c);
            qpow *= q;
        }
    }

    let qd0 = field.fq.q.pow(d0 as u32);
    for (j, gamma) in gammas.iter().enumerate().take(d + 1) {
        if j < d0 {
            if !field.is_zero(gamma.a) {
                return Ok(false);
            }
        } else {
            let rhs = field.pow(deltas[j - d0], qd0);
            if gamma.a != rhs {
                return Ok(false);
            }
        }
    }
    let _ = ctx;
    Ok(true)
}

/// Spectral-principle direction in the u-model: if the coefficient
/// `gamma_k` of the monic exponential vanishes then the spectrum is
/// k-inseparable, i.e. `k != d0` (the only separable position in a
/// one-level model).
pub fn spectral_principle_direction(field: &ExtField, w: &UModelLattice, k: usize) -> Result<bool> {
    w.validate(field)?;
    let gammas = w.monic_coeffs(field)?;
    if k >= gammas.len() {
        return Err(Error::IndexOutOfRange(format!("k = {}", k)));
    }
    let vanishes = field.is_zero(gammas[k].a) && field.is_zero(gammas[k].b);
    Ok(!vanishes || k != w.d0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::make_context;

    #[test]
    fn moore_det_examples() {
        let ctx = make_context(2, 3).unwrap();
        let f4 = ExtField::new(ctx.fq(), 2).unwrap();
        // n = 1: M(w) = w
        for w in f4.elements() {
            assert_eq!(moore_det(&f4, &[w]), w);
        }
        // dependent pair over F_2 in F_4
        let g = ExtElem(2);
        assert!(f4.is_zero(moore_det(&f4, &[g, g])));
        // basis (1, g) of F_4 over F_2: det = g^2 - g = 1 (g^2 = g + 1)
        let m = moore_det(&f4, &[f4.one(), g]);
        assert_eq!(m, f4.one());
        // oracle: brute-force dependence check
        let dependent = |a: ExtElem, b: ExtElem| -> bool {
            for c1 in 0..2u64 {
                for c2 in 0..2u64 {
                    if c1 == 0 && c2 == 0 {
                        continue;
                    }
                    let mut acc = f4.zero();
                    if c1 == 1 {
                        acc = f4.add(acc, a);
                    }
                    if c2 == 1 {
                        acc = f4.add(acc, b);
                    }
                    if f4.is_zero(acc) {
                        return true;
                    }
                }
            }
            false
        };
        for a in f4.elements() {
            for b in f4.elements() {
                if a.0 == 0 || b.0 == 0 {
                    continue;
                }
                assert_eq!(
                    f4.is_zero(moore_det(&f4, &[a, b])),
                    dependent(a, b),
                    "a={:?} b={:?}",
                    a,
                    b
                );
            }
        }
    }

    #[test]
    fn exp_poly_basic() {
        let ctx = make_context(2, 3).unwrap();
        let f4 = ExtField::new(ctx.fq(), 2).unwrap();
        // W = F_2 * 1: e_W(X) = X + X^2, so alpha_1 = 1 = -M(1)^{q-1} over F_2
        let coeffs = exp_poly_coeffs(
            &ctx,
            &f4,
            &FqLattice {
                basis: vec![f4.one()],
            },
        )
        .unwrap();
        assert_eq!(coeffs[0], f4.one()); // alpha_0 = 1 always
        assert_eq!(coeffs[1], f4.one());
        // W = F_2-span of (1, g) in F_4: alpha_2 = product of nonzero
        // elements = 1 * g * (1+g) = 1
        let g = ExtElem(2);
        let coeffs = exp_poly_coeffs(
            &ctx,
            &f4,
            &FqLattice {
                basis: vec![f4.one(), g],
            },
        )
        .unwrap();
        assert_eq!(coeffs[0], f4.one());
        let prod = f4.mul(f4.mul(f4.one(), g), f4.add(f4.one(), g));
        assert_eq!(coeffs[2], prod); // (-1)^n M^{q-1}: signs trivial in char 2
        assert_eq!(coeffs[2], f4.one());
        // dependent basis rejected
        assert!(matches!(
            exp_poly_coeffs(&ctx, &f4, &FqLattice { basis: vec![g, g] }),
            Err(Error::DependentBasis)
        ));
    }

    #[test]
    fn exp_poly_kernel_and_additivity() {
        let ctx = make_context(3, 3).unwrap();
        let f9 = ExtField::new(ctx.fq(), 2).unwrap();
        let g = ExtElem(3);
        let w = FqLattice {
            basis: vec![f9.one(), g],
        };
        let coeffs = exp_poly_coeffs(&ctx, &f9, &w).unwrap();
        let eval = |x: ExtElem| -> ExtElem {
            let mut acc = f9.zero();
            let mut qpow = 1u64;
            for &c in &coeffs {
                acc = f9.add(acc, f9.mul(c, f9.pow(x, qpow)));
                qpow *= 3;
            }
            acc
        };
        // kernel property: e_W vanishes exactly on W
        let span: std::collections::HashSet<u64> =
            span_elements(&f9, &w.basis).iter().map(|e| e.0).collect();
        for x in f9.elements() {
            assert_eq!(f9.is_zero(eval(x)), span.contains(&x.0));
        }
        // q-additivity on all pairs
        for x in f9.elements() {
            for y in f9.elements() {
                assert_eq!(eval(f9.add(x, y)), f9.add(eval(x), eval(y)));
            }
        }
    }

    #[test]
    fn beta_zero_counts() {
        for q in [2u64, 3, 4] {
            let ctx = make_context(q, 3).unwrap();
            assert_eq!(beta_zero_count(&ctx).unwrap(), q * q - q, "q={}", q);
        }
    }

    #[test]
    fn reduction_identity_examples() {
        // q=2, d=2, d0=1, W = span(u, 1) in F_4[u]/(u^2)
        let ctx = make_context(2, 3).unwrap();
        let f4 = ExtField::new(ctx.fq(), 2).unwrap();
        let w = UModelLattice {
            d0: 1,
            basis: vec![
                UElem {
                    a: f4.zero(),
                    b: f4.one(),
                },
                UElem {
                    a: f4.one(),
                    b: f4.zero(),
                },
            ],
        };
        assert!(reduction_identity_check(&ctx, &f4, &w).unwrap());

        // q=3, d=2, d0=1, W = span(u, g) with g generating F_9
        let ctx = make_context(3, 3).unwrap();
        let f9 = ExtField::new(ctx.fq(), 2).unwrap();
        let g = ExtElem(3);
        let w = UModelLattice {
            d0: 1,
            basis: vec![
                UElem {
                    a: f9.zero(),
                    b: f9.one(),
                },
                UElem { a: g, b: f9.zero() },
            ],
        };
        assert!(reduction_identity_check(&ctx, &f9, &w).unwrap());

        // d0 = 0 degenerate case: reduction commutes with coefficients
        let w = UModelLattice {
            d0: 0,
            basis: vec![
                UElem { a: g, b: f9.zero() },
                UElem {
                    a: f9.one(),
                    b: ExtElem(4),
                },
            ],
        };
        assert!(reduction_identity_check(&ctx, &f9, &w).unwrap());
    }

    #[test]
    fn reduction_identity_hypothesis_violations() {
        let ctx = make_context(2, 3).unwrap();
        let f4 = ExtField::new(ctx.fq(), 2).unwrap();
        // no unit part
        let w = UModelLattice {
            d0: 1,
            basis: vec![UElem {
                a: f4.zero(),
                b: f4.one(),
            }],
        };
        assert!(matches!(
            reduction_identity_check(&ctx, &f4, &w),
            Err(Error::HypothesisViolated(_))
        ));
        // misplaced infinitesimal
        let w = UModelLattice {
            d0: 0,
            basis: vec![UElem {
                a: f4.zero(),
                b: f4.one(),
            }],
        };
        assert!(matches!(
            reduction_identity_check(&ctx, &f4, &w),
            Err(Error::HypothesisViolated(_))
        ));
    }
}
