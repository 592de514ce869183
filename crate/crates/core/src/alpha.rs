//! Spectral-norm logarithms of the para-Eisenstein series `alpha_k` on the
//! Weyl chamber.
//!
//! At an integral vertex `n` the value is
//! `log_q ||alpha_k||_n = -(q-1) * sum_{j=1..k} q^{j-1} c_j`
//! where `c_j` is the log-norm of the j-th term of the characteristic
//! sequence of `n`. On rational points the function interpolates affinely
//! inside each cell of the standard triangulation of the chamber; we locate
//! the cell through the fractional parts of the coordinates (type-A alcove
//! combinatorics) and take the barycentric combination of vertex values.

use crate::context::Context;
use crate::rational::{rat, Rat};
use crate::weyl::{characteristic_sequence, WeylPoint, WeylVertex};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `log_q ||E_k||_x` on the whole chamber: the spectral norm of every
/// ortho-Eisenstein series is constant equal to 1 there, so its logarithm
/// is 0. Kept as a constant; there is nothing to compute.
pub const LOG_EISENSTEIN_NORM: i64 = 0;

/// `log_q ||alpha_k||_n` at an integral chamber vertex.
pub fn log_alpha_norm_vertex(ctx: &Context, n: &WeylVertex, k: usize) -> Rat {
    assert!(k >= 1, "k must be >= 1");
    let seq = characteristic_sequence(ctx, n.to_point().as_apartment(), k);
    let q = BigInt::from(ctx.q);
    let mut sum = BigInt::zero();
    let mut qpow = BigInt::one();
    for entry in seq.iter() {
        // c_j is a non-negative integer at integral points
        let c = entry.lognorm.to_integer();
        sum += &qpow * c;
        qpow *= &q;
    }
    Rat::from_integer(-(q - BigInt::one()) * sum)
}

/// Barycentric decomposition of a rational chamber point: the vertices of
/// the minimal cell containing `x` with their (positive) weights.
///
/// Writing `x = n + f` with `n` the coordinatewise floor and `f` the
/// fractional parts, the cell vertices are `n` together with
/// `n + 1_{f >= t}` for each distinct nonzero fractional value `t`, and the
/// weights are the gaps between consecutive values.
pub fn simplex_of(ctx: &Context, x: &WeylPoint) -> Vec<(WeylVertex, Rat)> {
    let r = ctx.r;
    let floor: Vec<BigInt> = x.coords().iter().map(|c| c.floor().to_integer()).collect();
    let frac: Vec<Rat> = x
        .coords()
        .iter()
        .zip(&floor)
        .map(|(c, n)| c - Rat::from_integer(n.clone()))
        .collect();
    let mut levels: Vec<Rat> = frac.iter().filter(|f| !f.is_zero()).cloned().collect();
    levels.sort_by(|a, b| b.cmp(a));
    levels.dedup();

    let vertex_at = |threshold: Option<&Rat>| -> WeylVertex {
        let coords: Vec<i64> = (0..r)
            .map(|i| {
                let mut v = i64::try_from(floor[i].clone()).expect("coordinate fits i64");
                if let Some(t) = threshold {
                    if &frac[i] >= t {
                        v += 1;
                    }
                }
                v
            })
            .collect();
        WeylVertex { coords }
    };

    let mut out = Vec::new();
    let w0 = match levels.first() {
        Some(t1) => rat(1) - t1,
        None => rat(1),
    };
    if !w0.is_zero() {
        out.push((vertex_at(None), w0));
    }
    for (j, t) in levels.iter().enumerate() {
        let next = levels.get(j + 1).cloned().unwrap_or_else(|| rat(0));
        let w = t - next;
        out.push((vertex_at(Some(t)), w));
    }
    out
}

/// `log_q ||alpha_k||_x` on `W(Q)` by affine interpolation in the cell of x.
pub fn log_alpha_norm_point(ctx: &Context, x: &WeylPoint, k: usize) -> Rat {
    let mut acc = Rat::zero();
    for (v, w) in simplex_of(ctx, x) {
        acc += w * log_alpha_norm_vertex(ctx, &v, k);
    }
    acc
}

/// The constant value `q (q^k - 1)/(q - 1) - k q^k` taken on the deep
/// chamber `n_{r-1} >= k`.
pub fn alpha_constant_log(ctx: &Context, k: usize) -> Rat {
    let q = BigInt::from(ctx.q);
    let qk = q.pow(k as u32);
    let num = &q * (&qk - BigInt::one());
    Rat::from_integer(num / (&q - BigInt::one()) - BigInt::from(k as u64) * qk)
}

/// Supremum index below which `c_k` may vanish: `sup { i : 1 <= i < r,
/// n_{r-i+1} = 0 }`. Beyond it, `k -> log||alpha_k||` strictly decreases.
pub fn strict_threshold(ctx: &Context, n: &WeylVertex) -> usize {
    let r = ctx.r;
    (1..r).filter(|&i| n.coords[r - i] == 0).max().unwrap_or(0)
}
