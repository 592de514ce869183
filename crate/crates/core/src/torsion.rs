//! The finite model of `a`-torsion and the coefficient forms.
//!
//! For `a` of degree `d`, the torsion module is an `F_q`-space of dimension
//! `r d` with formal basis symbols `e_{s,i}` (`0 <= s < d`, `1 <= i <= r`).
//! Everything depends only on `d` and the chamber point `x`, never on `a`
//! itself. The log-norm of `e_{s,i}` is
//!
//! `log e_{s,i} = B + sum' (B - M(a_{i+1},...,a_r))`
//!
//! with `B = s + x_i - d`, the sum over nonzero tuples of polynomials with
//! `deg a_n + x_n < B` for all `n > i`, and `M` the maximum of
//! `deg a_n + x_n`. The sum is evaluated by counting degree profiles
//! (`#\{a : deg a <= m\} = q^{m+1}`), never by enumerating polynomials.

use crate::alpha::log_alpha_norm_vertex;
use crate::context::Context;
use crate::error::{Error, Result};
use crate::rational::{rat, Rat};
use crate::vdp::{inner_degree, FormSpec};
use crate::weyl::{window_vertices, wk_membership, WeylPoint};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A formal torsion basis symbol `e_{s,i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TorsionSymbol {
    pub s: usize,
    /// index in 1..=r
    pub i: usize,
}

/// The full characteristic sequence of the torsion model: all `r d` symbols
/// sorted by `(lognorm, -i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionCharSeq {
    pub entries: Vec<(TorsionSymbol, Rat)>,
}

/// Number of `a in F_q[T]` with `deg a + shift <= v`, as a BigInt
/// (`q^{floor(v - shift) + 1}`, at least 1 for the zero polynomial).
fn count_upto(q: &BigInt, v: &Rat, shift: &Rat) -> BigInt {
    let room = v - shift; // deg a <= room
    if room.is_negative() {
        return BigInt::one(); // only a = 0
    }
    let e = room.floor().to_integer() + 1;
    q.pow(u32::try_from(e).expect("exponent fits u32"))
}

/// `log_q |e_{s,i}|` at `x` in the chamber.
pub fn log_e_si(ctx: &Context, x: &WeylPoint, d: usize, s: usize, i: usize) -> Result<Rat> {
    if d == 0 || s >= d || i == 0 || i > ctx.r {
        return Err(Error::IndexOutOfRange(format!(
            "(s, i) = ({}, {}) for d = {}, r = {}",
            s, i, d, ctx.r
        )));
    }
    let b = rat(s as i64) + &x.coords()[i - 1] - rat(d as i64);
    if i == ctx.r {
        return Ok(b); // empty product: log e_{s,r} = s - d
    }
    let tail = &x.coords()[i..]; // x_{i+1}, ..., x_r
    let q = BigInt::from(ctx.q);

    // candidate values of M(tuple) strictly below B
    let mut values: Vec<Rat> = Vec::new();
    for xn in tail {
        let mut m = 0i64;
        loop {
            let v = rat(m) + xn;
            if v >= b {
                break;
            }
            values.push(v);
            m += 1;
        }
    }
    values.sort();
    values.dedup();

    // N(v) = C(v) - C(prev), C(v) = prod_n #\{a : deg a + x_n <= v\}
    let mut sum = Rat::zero();
    let mut prev_c = BigInt::one(); // the zero tuple
    for v in &values {
        let mut c = BigInt::one();
        for xn in tail {
            c *= count_upto(&q, v, xn);
        }
        let n_v = &c - &prev_c;
        sum += (&b - v) * Rat::from_integer(n_v);
        prev_c = c;
    }
    Ok(b + sum)
}

/// Oracle used in tests: literal enumeration of the tuples (exponential in
/// the window size; only run at tiny parameters).
pub fn log_e_si_enumerated(
    ctx: &Context,
    x: &WeylPoint,
    d: usize,
    s: usize,
    i: usize,
) -> Result<Rat> {
    if d == 0 || s >= d || i == 0 || i > ctx.r {
        return Err(Error::IndexOutOfRange(format!("(s, i) = ({}, {})", s, i)));
    }
    let b = rat(s as i64) + &x.coords()[i - 1] - rat(d as i64);
    if i == ctx.r {
        return Ok(b);
    }
    let tail = &x.coords()[i..];
    // max degree that can appear per slot
    let bounds: Vec<i64> = tail
        .iter()
        .map(|xn| {
            let room = &b - xn;
            if room.is_positive() {
                // deg a < room, so deg a <= ceil(room) - 1
                let c = room.ceil().to_integer() - 1;
                i64::try_from(c).unwrap()
            } else {
                -1
            }
        })
        .collect();
    // degree alphabets per slot: -infinity (zero) encoded as None
    let mut sum = Rat::zero();
    let mut stack: Vec<Vec<Option<i64>>> = vec![Vec::new()];
    while let Some(tuple) = stack.pop() {
        if tuple.len() == tail.len() {
            if tuple.iter().all(|t| t.is_none()) {
                continue; // primed product skips the zero tuple
            }
            let m = tuple
                .iter()
                .zip(tail)
                .filter_map(|(t, xn)| t.map(|deg| rat(deg) + xn))
                .max()
                .unwrap();
            if m < b {
                sum += &b - &m;
            }
            continue;
        }
        let slot = tuple.len();
        // one representative per (slot degree, count): polynomials of exact
        // degree m with deg a + x_n < B number (q-1) q^m each
        let mut push = |t: Option<i64>, mult: BigInt| {
            let mut next = tuple.clone();
            next.push(t);
            for _ in 0..usize::try_from(mult).unwrap() {
                stack.push(next.clone());
            }
        };
        push(None, BigInt::one());
        for m in 0..=bounds[slot] {
            let cnt = (BigInt::from(ctx.q) - BigInt::one()) * BigInt::from(ctx.q).pow(m as u32);
            push(Some(m), cnt);
        }
    }
    Ok(b + sum)
}

/// Characteristic sequence of the torsion model: all `r d` symbols ordered
/// by `(lognorm, -i)`.
pub fn torsion_char_sequence(ctx: &Context, x: &WeylPoint, d: usize) -> Result<TorsionCharSeq> {
    let mut entries = Vec::with_capacity(ctx.r * d);
    for s in 0..d {
        for i in 1..=ctx.r {
            let v = log_e_si(ctx, x, d, s, i)?;
            entries.push((TorsionSymbol { s, i }, v));
        }
    }
    entries.sort_by(|a, b| a.1.cmp(&b.1).then(b.0.i.cmp(&a.0.i)));
    Ok(TorsionCharSeq { entries })
}

/// Is `x` in `W'_d(k)`, the zero-locus image of the coefficient form of
/// index `k` for `deg a = d`? Requires `1 <= k < rd`; the top coefficient
/// has no zeros.
pub fn wprime_membership(ctx: &Context, x: &WeylPoint, d: usize, k: usize) -> Result<bool> {
    let rd = ctx.r * d;
    if k == 0 || k >= rd {
        return Err(Error::KOutOfRange { k, rd });
    }
    let seq = torsion_char_sequence(ctx, x, d)?;
    Ok(seq.entries[k - 1].1 == seq.entries[k].1)
}

/// `log_q ||a_ell_k||_x = d - sum_{s=1..k} (q^s - q^{s-1}) m_s` with `m_s`
/// the s-th log-norm of the torsion characteristic sequence.
pub fn log_coeff_norm(ctx: &Context, x: &WeylPoint, d: usize, k: usize) -> Result<Rat> {
    let rd = ctx.r * d;
    if k == 0 || k > rd {
        return Err(Error::KOutOfRange { k, rd });
    }
    let seq = torsion_char_sequence(ctx, x, d)?;
    let q = BigInt::from(ctx.q);
    let mut acc = rat(d as i64);
    let mut qpow = BigInt::one(); // q^{s-1}
    for entry in seq.entries.iter().take(k) {
        let weight = &qpow * (&q - BigInt::one()); // q^s - q^{s-1}
        acc -= Rat::from_integer(weight) * &entry.1;
        qpow *= &q;
    }
    Ok(acc)
}

/// Closed form `(d-k) q^k + q (q^k - 1)/(q-1)` for the constant value on
/// the deep chamber, valid in the regime `k <= d`.
pub fn coeff_constant_log(ctx: &Context, d: usize, k: usize) -> Result<Rat> {
    if k > d {
        return Err(Error::RegimeViolation { k, d });
    }
    let q = BigInt::from(ctx.q);
    let qk = q.pow(k as u32);
    let geometric = &q * (&qk - BigInt::one()) / (&q - BigInt::one());
    Ok(Rat::from_integer(
        BigInt::from((d - k) as u64) * qk + geometric,
    ))
}

/// Closed form of the norm at the origin: writing `k = k_0 + s r`,
/// `log ||a_ell_k||_0 = (d - s) q^k + q^r (q^{rs} - 1)/(q^r - 1)`.
pub fn origin_norm_closed_form(ctx: &Context, d: usize, k: usize) -> Rat {
    let r = ctx.r;
    let s = k / r;
    let q = BigInt::from(ctx.q);
    let qk = q.pow(k as u32);
    let qr = q.pow(r as u32);
    let geometric = &qr * (qr.pow(s as u32) - BigInt::one()) / (&qr - BigInt::one());
    Rat::from_integer(BigInt::from(d as i64 - s as i64) * qk + geometric)
}

/// Report of the three regime checks (`k <= d`): membership equality with
/// `W(k)`, constant norm offset against `alpha_k`, and equal local inner
/// degrees, over the window `n_1 <= bound`.
#[derive(Debug, Clone)]
pub struct RegimeAgreementReport {
    pub membership_equal: bool,
    pub constant_offset: Option<Rat>,
    pub offset_matches_closed_forms: bool,
    pub inner_degrees_equal: bool,
    pub violations: Vec<String>,
}

impl RegimeAgreementReport {
    pub fn passed(&self) -> bool {
        self.membership_equal
            && self.constant_offset.is_some()
            && self.offset_matches_closed_forms
            && self.inner_degrees_equal
    }
}

pub fn regime_agreement_verify(ctx: &Context, d: usize, k: usize, bound: i64) -> Result<RegimeAgreementReport> {
    if k > d {
        return Err(Error::RegimeViolation { k, d });
    }
    let mut violations = Vec::new();
    let window = window_vertices(ctx, bound);

    let mut membership_equal = true;
    for n in &window {
        let x = n.to_point();
        let lhs = wprime_membership(ctx, &x, d, k)?;
        let rhs = wk_membership(ctx, x.as_apartment(), k);
        if lhs != rhs {
            membership_equal = false;
            violations.push(format!(
                "membership differs at {}: coeff {} vs alpha {}",
                n.short(),
                lhs,
                rhs
            ));
        }
    }

    let expected_offset = {
        let c = coeff_constant_log(ctx, d, k)?;
        let a = crate::alpha::alpha_constant_log(ctx, k);
        c - a
    };
    let mut constant_offset: Option<Rat> = None;
    let mut offset_ok = true;
    for n in &window {
        let x = n.to_point();
        let diff = log_coeff_norm(ctx, &x, d, k)? - log_alpha_norm_vertex(ctx, n, k);
        match &constant_offset {
            None => constant_offset = Some(diff),
            Some(c) if *c != diff => {
                offset_ok = false;
                violations.push(format!("offset varies at {}", n.short()));
            }
            _ => {}
        }
    }
    if let Some(c) = &constant_offset {
        if *c != expected_offset {
            offset_ok = false;
            violations.push(format!(
                "offset {} differs from closed form {}",
                c, expected_offset
            ));
        }
    }

    let mut inner_equal = true;
    let alpha_form = FormSpec::alpha(k)?;
    let coeff_form = FormSpec::coeff(k, d)?;
    for n in &window {
        let na = inner_degree(ctx, &alpha_form, n)?;
        let nc = inner_degree(ctx, &coeff_form, n)?;
        if na != nc {
            inner_equal = false;
            violations.push(format!(
                "inner degree differs at {}: alpha {} vs coeff {}",
                n.short(),
                na,
                nc
            ));
        }
    }

    Ok(RegimeAgreementReport {
        membership_equal,
        constant_offset: if offset_ok { constant_offset } else { None },
        offset_matches_closed_forms: offset_ok,
        inner_degrees_equal: inner_equal,
        violations,
    })
}

/// Regime-boundary fact used by the membership proof: for `k <= x_{r-1}`
/// and `k <= d`, the point is never in `W'_d(k)`.
pub fn regime_boundary_holds(ctx: &Context, x: &WeylPoint, d: usize, k: usize) -> Result<bool> {
    let xr1 = &x.coords()[ctx.r - 2];
    if k > d || rat(k as i64) > *xr1 {
        return Err(Error::Invalid("outside the regime-boundary case".into()));
    }
    Ok(!wprime_membership(ctx, x, d, k)?)
}
