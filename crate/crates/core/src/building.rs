//! Vertices of the building as Laurent-polynomial lattice classes, type-1
//! arrows, shifts toward vectors, and reduction to the Weyl chamber.
//!
//! A vertex is the similarity class `[L]` of an `O_infty`-lattice
//! `L = sum_i O_infty row_i` in `K_infty^r`, presented by an `r x r` matrix
//! of Laurent polynomials in `T` with nonzero determinant (rows = basis).
//! `GL(r, K_infty)` acts on row vectors from the right, so the induced
//! vertex action is `basis -> basis * gamma`; the left action on the
//! building is `gamma . [L] = [L gamma^{-1}]`.
//!
//! `reduce_to_weyl` brings a basis to the form
//! `basis * gamma = pi^m * U * diag(pi^{n_1}, ..., pi^{n_r})` with
//! `gamma in GL(r, F_q[T])`, `U` invertible over `O_infty`, and
//! `n_1 >= ... >= n_r = 0`: a weak-Popov style column reduction. Columns are
//! combined to raise their minimal pi-valuation until the matrix of leading
//! coefficients is invertible over `F_q`; the sum of column valuations is
//! bounded by the valuation of the determinant and strictly increases, so
//! the loop terminates.

use crate::context::Context;
use crate::error::{Error, Result};
use crate::fq::{fq_det, fq_kernel_vector, FqElem};
use crate::poly::{FqLaurent, FqPoly};
use crate::rational::{rat, LogVal};
use crate::weyl::{WeylPoint, WeylVertex};

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

/// Square matrix of Laurent polynomials, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    pub n: usize,
    pub entries: Vec<FqLaurent>,
}

impl LaurentMatrix {
    pub fn from_rows(rows: Vec<Vec<FqLaurent>>) -> LaurentMatrix {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n));
        LaurentMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn identity(ctx: &Context, n: usize) -> LaurentMatrix {
        let fq = ctx.fq();
        let mut m = LaurentMatrix {
            n,
            entries: vec![FqLaurent::zero(); n * n],
        };
        for i in 0..n {
            *m.at_mut(i, i) = FqLaurent::one(fq);
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &FqLaurent {
        &self.entries[i * self.n + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut FqLaurent {
        &mut self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[FqLaurent] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    /// Determinant by cofactor expansion (ranks here are tiny).
    pub fn det(&self, ctx: &Context) -> FqLaurent {
        let fq = ctx.fq();
        fn go(fq: &crate::fq::Fq, m: &LaurentMatrix, rows: &[usize], cols: &[usize]) -> FqLaurent {
            if rows.len() == 1 {
                return m.at(rows[0], cols[0]).clone();
            }
            let mut acc = FqLaurent::zero();
            for (pos, &c) in cols.iter().enumerate() {
                let e = m.at(rows[0], c);
                if e.is_zero() {
                    continue;
                }
                let sub_rows = &rows[1..];
                let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let minor = go(fq, m, sub_rows, &sub_cols);
                let term = e.mul(fq, &minor);
                acc = if pos % 2 == 0 {
                    acc.add(fq, &term)
                } else {
                    acc.sub(fq, &term)
                };
            }
            acc
        }
        let idx: Vec<usize> = (0..self.n).collect();
        go(fq, self, &idx, &idx)
    }

    /// Adjugate: `self * adj = det * I`.
    pub fn adjugate(&self, ctx: &Context) -> LaurentMatrix {
        let fq = ctx.fq();
        let n = self.n;
        let mut out = LaurentMatrix {
            n,
            entries: vec![FqLaurent::zero(); n * n],
        };
        let idx: Vec<usize> = (0..n).collect();
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = idx.iter().copied().filter(|&x| x != j).collect();
                let cols: Vec<usize> = idx.iter().copied().filter(|&x| x != i).collect();
                let minor = if rows.is_empty() {
                    FqLaurent::one(fq)
                } else {
                    let sub = LaurentMatrix::from_rows(
                        rows.iter()
                            .map(|&r| cols.iter().map(|&c| self.at(r, c).clone()).collect())
                            .collect(),
                    );
                    sub.det(ctx)
                };
                *out.at_mut(i, j) = if (i + j) % 2 == 0 {
                    minor
                } else {
                    minor.neg(fq)
                };
            }
        }
        out
    }

    pub fn mul(&self, ctx: &Context, other: &LaurentMatrix) -> LaurentMatrix {
        let fq = ctx.fq();
        let n = self.n;
        let mut out = LaurentMatrix {
            n,
            entries: vec![FqLaurent::zero(); n * n],
        };
        for i in 0..n {
            for j in 0..n {
                let mut acc = FqLaurent::zero();
                for k in 0..n {
                    acc = acc.add(fq, &self.at(i, k).mul(fq, other.at(k, j)));
                }
                *out.at_mut(i, j) = acc;
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn row_mul(&self, ctx: &Context, v: &[FqLaurent]) -> Vec<FqLaurent> {
        let fq = ctx.fq();
        (0..self.n)
            .map(|j| {
                let mut acc = FqLaurent::zero();
                for (i, vi) in v.iter().enumerate() {
                    acc = acc.add(fq, &vi.mul(fq, self.at(i, j)));
                }
                acc
            })
            .collect()
    }

    /// Multiply every entry by T^k.
    pub fn shift_all(&self, k: i64) -> LaurentMatrix {
        LaurentMatrix {
            n: self.n,
            entries: self.entries.iter().map(|e| e.shift(k)).collect(),
        }
    }
}

/// Element of `GL(r, A)`, `A = F_q[T]`: polynomial entries, determinant a
/// nonzero constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaMatrix {
    pub n: usize,
    pub entries: Vec<FqPoly>,
}

impl GammaMatrix {
    pub fn identity(ctx: &Context, n: usize) -> GammaMatrix {
        let fq = ctx.fq();
        let mut entries = vec![FqPoly::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = FqPoly::one(fq);
        }
        GammaMatrix { n, entries }
    }

    pub fn from_rows(rows: Vec<Vec<FqPoly>>) -> GammaMatrix {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n));
        GammaMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn at(&self, i: usize, j: usize) -> &FqPoly {
        &self.entries[i * self.n + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut FqPoly {
        &mut self.entries[i * self.n + j]
    }

    pub fn bottom_row(&self) -> Vec<FqPoly> {
        (0..self.n)
            .map(|j| self.at(self.n - 1, j).clone())
            .collect()
    }

    pub fn mul(&self, ctx: &Context, other: &GammaMatrix) -> GammaMatrix {
        let fq = ctx.fq();
        let n = self.n;
        let mut out = GammaMatrix {
            n,
            entries: vec![FqPoly::zero(); n * n],
        };
        for i in 0..n {
            for j in 0..n {
                let mut acc = FqPoly::zero();
                for k in 0..n {
                    acc = acc.add(fq, &self.at(i, k).mul(fq, other.at(k, j)));
                }
                *out.at_mut(i, j) = acc;
            }
        }
        out
    }

    pub fn det(&self, ctx: &Context) -> FqPoly {
        let rows: Vec<Vec<FqLaurent>> = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| FqLaurent::from_poly(self.at(i, j)))
                    .collect()
            })
            .collect();
        let d = LaurentMatrix::from_rows(rows).det(ctx);
        // determinant of a polynomial matrix is a polynomial
        let mut coeffs = vec![FqElem(0); (d.deg().unwrap_or(0).max(0) + 1) as usize];
        if !d.is_zero() {
            for (j, &c) in d.coeffs.iter().enumerate() {
                let deg = d.min_deg + j as i64;
                assert!(deg >= 0, "polynomial determinant has negative degree part");
                coeffs[deg as usize] = c;
            }
        }
        FqPoly::from_coeffs(coeffs)
    }

    pub fn is_unimodular(&self, ctx: &Context) -> bool {
        let d = self.det(ctx);
        d.deg() == Some(0)
    }

    /// Inverse over `A` (exists because det is a unit).
    pub fn inverse(&self, ctx: &Context) -> Result<GammaMatrix> {
        let fq = ctx.fq();
        let d = self.det(ctx);
        if d.deg() != Some(0) {
            return Err(Error::SingularMatrix);
        }
        let dinv = fq.inv(d.leading_coeff())?;
        let rows: Vec<Vec<FqLaurent>> = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| FqLaurent::from_poly(self.at(i, j)))
                    .collect()
            })
            .collect();
        let adj = LaurentMatrix::from_rows(rows).adjugate(ctx);
        let mut out = GammaMatrix {
            n: self.n,
            entries: vec![FqPoly::zero(); self.n * self.n],
        };
        for i in 0..self.n {
            for j in 0..self.n {
                let e = adj.at(i, j).scale(fq, dinv);
                let mut coeffs = vec![FqElem(0); (e.deg().unwrap_or(0).max(0) + 1) as usize];
                if !e.is_zero() {
                    for (k, &c) in e.coeffs.iter().enumerate() {
                        let deg = e.min_deg + k as i64;
                        assert!(deg >= 0, "adjugate of unimodular matrix is polynomial");
                        coeffs[deg as usize] = c;
                    }
                }
                *out.at_mut(i, j) = FqPoly::from_coeffs(coeffs);
            }
        }
        Ok(out)
    }

    pub fn to_laurent(&self) -> LaurentMatrix {
        LaurentMatrix {
            n: self.n,
            entries: self.entries.iter().map(FqLaurent::from_poly).collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// Lattice vertices
// ---------------------------------------------------------------------------

/// A vertex of the building: similarity class of the row span of `basis`.
/// The representation is normalized so that the minimal pi-exponent over all
/// entries is exactly 0 (all entries lie in `F_q[pi]`, some entry has a
/// nonzero constant term).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeVertex {
    basis: LaurentMatrix,
}

impl LatticeVertex {
    pub fn new(ctx: &Context, basis: LaurentMatrix) -> Result<LatticeVertex> {
        if basis.n != ctx.r {
            return Err(Error::Invalid("basis has wrong rank".into()));
        }
        if basis.det(ctx).is_zero() {
            return Err(Error::SingularMatrix);
        }
        // normalize the global pi-power: max T-degree over entries becomes 0
        let max_deg = basis
            .entries
            .iter()
            .filter_map(|e| e.deg())
            .max()
            .expect("nonsingular matrix has a nonzero entry");
        Ok(LatticeVertex {
            basis: basis.shift_all(-max_deg),
        })
    }

    pub fn basis(&self) -> &LaurentMatrix {
        &self.basis
    }

    /// Same vertex of the building (equal lattice classes).
    pub fn same_class(&self, ctx: &Context, other: &LatticeVertex) -> bool {
        let da = self.basis.det(ctx);
        let db = other.basis.det(ctx);
        let (va, vb) = (da.val_pi().unwrap(), db.val_pi().unwrap());
        let r = ctx.r as i64;
        if (va - vb).rem_euclid(r) != 0 {
            return false;
        }
        let m = (va - vb) / r;
        // scale other by pi^m so determinant valuations agree, then check one
        // inclusion: rows of self inside the span of scaled other.
        let scaled = other.basis.shift_all(-m);
        let adj = scaled.adjugate(ctx);
        let det = scaled.det(ctx);
        let dv = det.val_pi().unwrap();
        for i in 0..ctx.r {
            // basis coordinates of row_i(self) in scaled: (row * adj) / det
            let c = adj.row_mul(ctx, self.basis.row(i));
            for e in &c {
                if let Some(v) = e.val_pi() {
                    if v < dv {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// An oriented type-1 edge of the building. `direction`, when present, is
/// the projective point of `P(L/piL)` in basis coordinates of the origin.
#[derive(Debug, Clone)]
pub struct Arrow {
    pub origin: LatticeVertex,
    pub target: LatticeVertex,
    pub direction: Option<Vec<FqElem>>,
}

/// Certificate produced by `reduce_to_weyl`:
/// `basis * gamma = pi^{pi_power} * unit_witness * diag(pi^{n_1},...,pi^{n_r})`
/// with `weyl_rep = (n_1 >= ... >= n_r = 0)` and `unit_witness` invertible
/// over `O_infty`.
#[derive(Debug, Clone)]
pub struct ReductionCertificate {
    pub gamma: GammaMatrix,
    pub weyl_rep: WeylVertex,
    pub unit_witness: LaurentMatrix,
    pub pi_power: i64,
}

impl ReductionCertificate {
    /// Check the certificate against the original basis: unimodular gamma,
    /// unit witness with non-negative pi-exponents and invertible constant
    /// term, and the defining matrix identity.
    pub fn verify(&self, ctx: &Context, basis: &LaurentMatrix) -> bool {
        let fq = ctx.fq();
        if !self.gamma.is_unimodular(ctx) {
            return false;
        }
        let prod = basis.mul(ctx, &self.gamma.to_laurent());
        // expected = pi^m * U * D  <=>  U = prod * D^{-1} * pi^{-m}
        let mut u = prod;
        for j in 0..ctx.r {
            let nj = self.weyl_rep.coords[j];
            for i in 0..ctx.r {
                *u.at_mut(i, j) = u.at(i, j).shift(nj); // times T^{n_j} = pi^{-n_j}
            }
        }
        let u = u.shift_all(self.pi_power);
        if u != self.unit_witness {
            return false;
        }
        // entries in O_infty: T-degree <= 0
        if u.entries.iter().any(|e| e.deg().map_or(false, |d| d > 0)) {
            return false;
        }
        // constant-term matrix invertible over F_q
        let const_mat: Vec<Vec<FqElem>> = (0..ctx.r)
            .map(|i| (0..ctx.r).map(|j| u.at(i, j).coeff_at(0)).collect())
            .collect();
        !fq.is_zero(fq_det(fq, &const_mat))
    }
}

/// The standard vertex `L_n = (pi^{n_1} O, ..., pi^{n_r} O)`.
pub fn standard_vertex(ctx: &Context, n: &WeylVertex) -> LatticeVertex {
    let fq = ctx.fq();
    let rows: Vec<Vec<FqLaurent>> = (0..ctx.r)
        .map(|i| {
            (0..ctx.r)
                .map(|j| {
                    if i == j {
                        FqLaurent::monomial(fq.one(), -n.coords[i])
                    } else {
                        FqLaurent::zero()
                    }
                })
                .collect()
        })
        .collect();
    LatticeVertex::new(ctx, LaurentMatrix::from_rows(rows)).expect("diagonal basis is nonsingular")
}

/// Lattice of an arbitrary integral apartment point (not necessarily in W).
pub fn apartment_lattice(ctx: &Context, coords: &[i64]) -> LatticeVertex {
    let fq = ctx.fq();
    let rows: Vec<Vec<FqLaurent>> = (0..ctx.r)
        .map(|i| {
            (0..ctx.r)
                .map(|j| {
                    if i == j {
                        FqLaurent::monomial(fq.one(), -coords[i])
                    } else {
                        FqLaurent::zero()
                    }
                })
                .collect()
        })
        .collect();
    LatticeVertex::new(ctx, LaurentMatrix::from_rows(rows)).expect("diagonal basis is nonsingular")
}

/// All `(q^r - 1)/(q - 1)` type-1 arrows with the given origin, one per
/// point of `P(L/piL)`. Directions are enumerated with the first nonzero
/// coordinate normalized to 1, in lexicographic order.
pub fn arrows_type1(ctx: &Context, v: &LatticeVertex) -> Vec<Arrow> {
    let fq = ctx.fq();
    let r = ctx.r;
    let mut arrows = Vec::new();
    let mut dir = vec![FqElem(0); r];
    // enumerate projective representatives: pivot position, then free tail
    for pivot in 0..r {
        let tail = r - pivot - 1;
        let total = ctx.q.pow(tail as u32);
        for code in 0..total {
            for d in dir.iter_mut() {
                *d = FqElem(0);
            }
            dir[pivot] = fq.one();
            let mut c = code;
            for t in 0..tail {
                dir[pivot + 1 + t] = FqElem(c % ctx.q);
                c /= ctx.q;
            }
            arrows.push(arrow_in_direction(ctx, v, &dir));
        }
    }
    arrows
}

/// The type-1 arrow from `v` in basis direction `a` (a nonzero vector over
/// F_q in the coordinates of the basis rows): target `O ytilde + pi L` where
/// `ytilde = sum a_i row_i`.
fn arrow_in_direction(ctx: &Context, v: &LatticeVertex, a: &[FqElem]) -> Arrow {
    let fq = ctx.fq();
    let r = ctx.r;
    let pivot = (0..r)
        .rfind(|&i| a[i].0 != 0)
        .expect("direction must be nonzero");
    let mut rows: Vec<Vec<FqLaurent>> = Vec::with_capacity(r);
    for i in 0..r {
        if i == pivot {
            // ytilde = sum a_j row_j
            let mut acc = vec![FqLaurent::zero(); r];
            for (j, &aj) in a.iter().enumerate() {
                if aj.0 == 0 {
                    continue;
                }
                for (k, cell) in acc.iter_mut().enumerate() {
                    *cell = cell.add(fq, &v.basis().at(j, k).scale(fq, aj));
                }
            }
            rows.push(acc);
        } else {
            rows.push(v.basis().row(i).iter().map(|e| e.shift(-1)).collect());
        }
    }
    let target = LatticeVertex::new(ctx, LaurentMatrix::from_rows(rows))
        .expect("type-1 target is nonsingular");
    Arrow {
        origin: v.clone(),
        target,
        direction: Some(a.to_vec()),
    }
}

/// The shift of `[L]` toward a nonzero vector `y` of `V`: the vertex of
/// `(L ∩ K_infty y) + pi L`.
pub fn shift_toward(ctx: &Context, v: &LatticeVertex, y: &[FqLaurent]) -> Result<LatticeVertex> {
    let a = direction_of(ctx, v, y)?;
    Ok(arrow_in_direction(ctx, v, &a).target)
}

/// Basis coordinates in `P(L/piL)` of the line determined by `y`: scale `y`
/// into `L \ piL` and reduce its coefficient vector mod pi.
pub fn direction_of(ctx: &Context, v: &LatticeVertex, y: &[FqLaurent]) -> Result<Vec<FqElem>> {
    let fq = ctx.fq();
    if y.iter().all(|e| e.is_zero()) {
        return Err(Error::ZeroVector);
    }
    // coefficients of y in the basis: c = y * basis^{-1} = (y * adj) / det
    let adj = v.basis().adjugate(ctx);
    let num = adj.row_mul(ctx, y);
    let det = v.basis().det(ctx);
    let dv = det.val_pi().expect("nonsingular");
    // delta_i = val_pi(c_i); v = -min delta_i
    let mut min_delta: Option<i64> = None;
    let deltas: Vec<Option<i64>> = num
        .iter()
        .map(|e| {
            let d = e.val_pi().map(|vv| vv - dv);
            if let Some(d) = d {
                min_delta = Some(min_delta.map_or(d, |m| m.min(d)));
            }
            d
        })
        .collect();
    let min_delta = min_delta.expect("y nonzero implies some coefficient nonzero");
    let det_lc = det.leading_coeff();
    let det_lc_inv = fq.inv(det_lc)?;
    let a: Vec<FqElem> = num
        .iter()
        .zip(&deltas)
        .map(|(e, d)| match d {
            Some(d) if *d == min_delta => fq.mul(e.leading_coeff(), det_lc_inv),
            _ => FqElem(0),
        })
        .collect();
    Ok(a)
}

/// Does the arrow point to `y`, i.e. is its target the shift of its origin
/// toward `y`?
pub fn points_to(ctx: &Context, e: &Arrow, y: &[FqLaurent]) -> Result<bool> {
    // cheap path: compare projective directions when the arrow carries one
    let a = direction_of(ctx, e.origin(), y)?;
    if let Some(d) = &e.direction {
        return Ok(projectively_equal(ctx, d, &a));
    }
    let shifted = arrow_in_direction(ctx, e.origin(), &a).target;
    Ok(e.target.same_class(ctx, &shifted))
}

fn projectively_equal(ctx: &Context, a: &[FqElem], b: &[FqElem]) -> bool {
    let fq = ctx.fq();
    let pa = a.iter().position(|c| c.0 != 0);
    let pb = b.iter().position(|c| c.0 != 0);
    if pa != pb {
        return false;
    }
    let Some(p) = pa else { return false };
    let la = fq.inv(a[p]).unwrap();
    let lb = fq.inv(b[p]).unwrap();
    (0..a.len()).all(|i| fq.mul(a[i], la) == fq.mul(b[i], lb))
}

impl Arrow {
    pub fn origin(&self) -> &LatticeVertex {
        &self.origin
    }

    pub fn target(&self) -> &LatticeVertex {
        &self.target
    }

    /// Left action of gamma on the arrow: both endpoints move by
    /// `basis -> basis * gamma^{-1}`.
    pub fn gamma_image(&self, ctx: &Context, gamma: &GammaMatrix) -> Result<Arrow> {
        let inv = gamma.inverse(ctx)?.to_laurent();
        let origin = LatticeVertex::new(ctx, self.origin.basis().mul(ctx, &inv))?;
        let target = LatticeVertex::new(ctx, self.target.basis().mul(ctx, &inv))?;
        Ok(Arrow {
            origin,
            target,
            direction: None,
        })
    }
}

// ---------------------------------------------------------------------------
// Reduction to the Weyl chamber
// ---------------------------------------------------------------------------

pub fn reduce_to_weyl(ctx: &Context, v: &LatticeVertex) -> Result<ReductionCertificate> {
    let fq = ctx.fq();
    let r = ctx.r;
    let mut m = v.basis().clone();
    if m.det(ctx).is_zero() {
        return Err(Error::SingularMatrix);
    }
    let mut gamma = GammaMatrix::identity(ctx, r);

    loop {
        // per-column minimal pi-valuation and leading coefficient vectors
        let mut d = vec![0i64; r];
        let mut lc: Vec<Vec<FqElem>> = vec![vec![FqElem(0); r]; r]; // lc[i][k]: row i of col k
        for k in 0..r {
            let dk = (0..r)
                .filter_map(|i| m.at(i, k).val_pi())
                .min()
                .expect("no zero column in a nonsingular matrix");
            d[k] = dk;
            for i in 0..r {
                lc[i][k] = m.at(i, k).coeff_at(-dk);
            }
        }
        let Some(c) = fq_kernel_vector(fq, &lc) else {
            // leading-coefficient matrix invertible: sort columns and finish
            let mut order: Vec<usize> = (0..r).collect();
            order.sort_by_key(|&k| -d[k]); // stable, descending valuation
            let mut sorted = LaurentMatrix {
                n: r,
                entries: vec![FqLaurent::zero(); r * r],
            };
            let mut perm = GammaMatrix {
                n: r,
                entries: vec![FqPoly::zero(); r * r],
            };
            for (newk, &oldk) in order.iter().enumerate() {
                for i in 0..r {
                    *sorted.at_mut(i, newk) = m.at(i, oldk).clone();
                }
                *perm.at_mut(oldk, newk) = FqPoly::one(fq);
            }
            gamma = gamma.mul(ctx, &perm);
            let d_sorted: Vec<i64> = order.iter().map(|&k| d[k]).collect();
            let base = d_sorted[r - 1];
            let n = WeylVertex::new(ctx, d_sorted.iter().map(|&x| x - base).collect())?;
            // U = sorted * D^{-1} * pi^{-base}
            let mut u = sorted;
            for k in 0..r {
                let nk = n.coords[k];
                for i in 0..r {
                    *u.at_mut(i, k) = u.at(i, k).shift(nk);
                }
            }
            let u = u.shift_all(base);
            return Ok(ReductionCertificate {
                gamma,
                weyl_rep: n,
                unit_witness: u,
                pi_power: base,
            });
        };
        // combine the dependent columns into the one of smallest valuation
        let support: Vec<usize> = (0..r).filter(|&k| c[k].0 != 0).collect();
        let k0 = *support
            .iter()
            .min_by_key(|&&k| d[k])
            .expect("kernel vector is nonzero");
        let mut newcol = vec![FqLaurent::zero(); r];
        let mut elem = GammaMatrix::identity(ctx, r);
        *elem.at_mut(k0, k0) = FqPoly::zero();
        for &k in &support {
            let power = (d[k] - d[k0]) as usize; // >= 0 by choice of k0
            let factor = FqPoly::monomial(c[k], power);
            for (i, cell) in newcol.iter_mut().enumerate() {
                let term = m.at(i, k).scale(fq, c[k]).shift(power as i64);
                *cell = cell.add(fq, &term);
            }
            *elem.at_mut(k, k0) = factor;
        }
        for (i, cell) in newcol.into_iter().enumerate() {
            *m.at_mut(i, k0) = cell;
        }
        gamma = gamma.mul(ctx, &elem);
    }
}

/// `log_q nu_x(v)` for a polynomial vector `v` and `x` in the chamber: the
/// standard basis is orthogonal for `nu_x`, so the value is
/// `max_i (deg v_i + x_i)`, with the zero vector mapping to -infinity.
pub fn log_nu(_ctx: &Context, x: &WeylPoint, v: &[FqPoly]) -> LogVal {
    let mut best = LogVal::NegInf;
    for (i, p) in v.iter().enumerate() {
        if let Some(d) = p.deg() {
            let val = LogVal::Finite(rat(d) + &x.coords()[i]);
            if val > best {
                best = val;
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::make_context;
    use crate::fq::Fq;

    fn lau(fq: &Fq, pairs: &[(u64, i64)]) -> FqLaurent {
        let mut acc = FqLaurent::zero();
        for &(c, d) in pairs {
            acc = acc.add(fq, &FqLaurent::monomial(fq.from_u64(c), d));
        }
        acc
    }

    fn wv(ctx: &Context, coords: &[i64]) -> WeylVertex {
        WeylVertex::new(ctx, coords.to_vec()).unwrap()
    }

    #[test]
    fn standard_vertices() {
        let ctx = make_context(2, 3).unwrap();
        let v = standard_vertex(&ctx, &wv(&ctx, &[0, 0, 0]));
        assert_eq!(v.basis().at(0, 0), &FqLaurent::one(ctx.fq()));
        let v = standard_vertex(&ctx, &wv(&ctx, &[1, 1, 0]));
        assert_eq!(v.basis().at(0, 0).val_pi(), Some(1));
        assert_eq!(v.basis().at(2, 2).val_pi(), Some(0));
        let v = standard_vertex(&ctx, &wv(&ctx, &[2, 1, 0]));
        assert_eq!(v.basis().at(0, 0).val_pi(), Some(2));
    }

    #[test]
    fn arrow_counts() {
        for (q, r, expect) in [(2u64, 3usize, 7usize), (3, 3, 13), (4, 2, 5)] {
            let ctx = make_context(q, r).unwrap();
            let v = standard_vertex(&ctx, &WeylVertex::origin(&ctx));
            assert_eq!(arrows_type1(&ctx, &v).len(), expect);
        }
    }

    #[test]
    fn shift_examples() {
        let ctx = make_context(2, 3).unwrap();
        let fq = ctx.fq();
        let origin = standard_vertex(&ctx, &wv(&ctx, &[0, 0, 0]));
        // shift of 0 toward e_3 has Weyl representative (1,1,0)
        let y = vec![FqLaurent::zero(), FqLaurent::zero(), FqLaurent::one(fq)];
        let t = shift_toward(&ctx, &origin, &y).unwrap();
        let cert = reduce_to_weyl(&ctx, &t).unwrap();
        assert_eq!(cert.weyl_rep, wv(&ctx, &[1, 1, 0]));
        assert!(cert.verify(&ctx, t.basis()));

        // shift of (1,1,0) toward e_2 has Weyl representative (1,0,0)
        let p = standard_vertex(&ctx, &wv(&ctx, &[1, 1, 0]));
        let y = vec![FqLaurent::zero(), FqLaurent::one(fq), FqLaurent::zero()];
        let t = shift_toward(&ctx, &p, &y).unwrap();
        let cert = reduce_to_weyl(&ctx, &t).unwrap();
        assert_eq!(cert.weyl_rep, wv(&ctx, &[1, 0, 0]));

        // shift of (n,0,0) toward e_1 has Weyl representative (n-1,0,0)
        for n in 1..=4i64 {
            let qv = standard_vertex(&ctx, &wv(&ctx, &[n, 0, 0]));
            let y = vec![FqLaurent::one(fq), FqLaurent::zero(), FqLaurent::zero()];
            let t = shift_toward(&ctx, &qv, &y).unwrap();
            let cert = reduce_to_weyl(&ctx, &t).unwrap();
            assert_eq!(cert.weyl_rep, wv(&ctx, &[n - 1, 0, 0]));
        }
    }

    #[test]
    fn points_to_examples() {
        let ctx = make_context(2, 3).unwrap();
        let fq = ctx.fq();
        let origin = standard_vertex(&ctx, &WeylVertex::origin(&ctx));
        let z = vec![FqLaurent::zero(), FqLaurent::zero(), FqLaurent::one(fq)];
        let e1 = vec![FqLaurent::one(fq), FqLaurent::zero(), FqLaurent::zero()];
        let t = shift_toward(&ctx, &origin, &z).unwrap();
        let e = Arrow {
            origin: origin.clone(),
            target: t,
            direction: None,
        };
        assert!(points_to(&ctx, &e, &z).unwrap());
        assert!(!points_to(&ctx, &e, &e1).unwrap());
        // projective direction: scalar multiples point the same way
        let ctx3 = make_context(3, 3).unwrap();
        let fq3 = ctx3.fq();
        let origin3 = standard_vertex(&ctx3, &WeylVertex::origin(&ctx3));
        let z3 = vec![FqLaurent::zero(), FqLaurent::zero(), FqLaurent::one(fq3)];
        let cz3 = vec![
            FqLaurent::zero(),
            FqLaurent::zero(),
            FqLaurent::constant(fq3.from_u64(2)),
        ];
        let t3 = shift_toward(&ctx3, &origin3, &z3).unwrap();
        let e3 = Arrow {
            origin: origin3,
            target: t3,
            direction: None,
        };
        assert!(points_to(&ctx3, &e3, &cz3).unwrap());
        assert!(points_to(&ctx3, &e3, &z3).unwrap());
        // zero vector rejected
        let zero = vec![FqLaurent::zero(); 3];
        assert!(matches!(
            points_to(&ctx3, &e3, &zero),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn reduce_identity_and_diagonal() {
        let ctx = make_context(2, 3).unwrap();
        let id = standard_vertex(&ctx, &wv(&ctx, &[0, 0, 0]));
        let cert = reduce_to_weyl(&ctx, &id).unwrap();
        assert_eq!(cert.weyl_rep, wv(&ctx, &[0, 0, 0]));
        assert_eq!(cert.gamma, GammaMatrix::identity(&ctx, 3));
        assert!(cert.verify(&ctx, id.basis()));

        let d = standard_vertex(&ctx, &wv(&ctx, &[1, 0, 0]));
        let cert = reduce_to_weyl(&ctx, &d).unwrap();
        assert_eq!(cert.weyl_rep, wv(&ctx, &[1, 0, 0]));
    }

    #[test]
    fn reduce_derived_example() {
        // basis rows {(0,0,1), (pi,0,0), (0,pi,0)}: this is the shift of 0
        // toward e_3 up to row order, so the representative is (1,1,0)
        let ctx = make_context(2, 3).unwrap();
        let fq = ctx.fq();
        let z = FqLaurent::zero();
        let one = FqLaurent::one(fq);
        let pi = FqLaurent::monomial(fq.one(), -1);
        let m = LaurentMatrix::from_rows(vec![
            vec![z.clone(), z.clone(), one.clone()],
            vec![pi.clone(), z.clone(), z.clone()],
            vec![z.clone(), pi.clone(), z.clone()],
        ]);
        let v = LatticeVertex::new(&ctx, m).unwrap();
        let cert = reduce_to_weyl(&ctx, &v).unwrap();
        assert_eq!(cert.weyl_rep, wv(&ctx, &[1, 1, 0]));
        assert!(cert.verify(&ctx, v.basis()));
    }

    #[test]
    fn reduce_mixed_entries() {
        // a basis with genuinely mixed Laurent entries
        let ctx = make_context(3, 3).unwrap();
        let fq = ctx.fq();
        let m = LaurentMatrix::from_rows(vec![
            vec![
                lau(fq, &[(1, 0), (2, -1)]),
                lau(fq, &[(1, -2)]),
                lau(fq, &[(2, 0)]),
            ],
            vec![lau(fq, &[(1, -1)]), lau(fq, &[(1, 0)]), FqLaurent::zero()],
            vec![
                FqLaurent::zero(),
                lau(fq, &[(2, -1)]),
                lau(fq, &[(1, 1), (1, 0)]),
            ],
        ]);
        let v = LatticeVertex::new(&ctx, m).unwrap();
        let cert = reduce_to_weyl(&ctx, &v).unwrap();
        assert!(cert.verify(&ctx, v.basis()));
    }

    #[test]
    fn log_nu_examples() {
        let ctx = make_context(2, 3).unwrap();
        let fq = ctx.fq();
        let x = WeylPoint::new(&ctx, vec![rat(2), rat(1), rat(0)]).unwrap();
        let zero = FqPoly::zero();
        let one = FqPoly::one(fq);
        let t = FqPoly::monomial(fq.one(), 1);
        assert_eq!(
            log_nu(&ctx, &x, &[zero.clone(), zero.clone(), one.clone()]),
            LogVal::Finite(rat(0))
        );
        assert_eq!(
            log_nu(&ctx, &x, &[one.clone(), zero.clone(), t.clone()]),
            LogVal::Finite(rat(2))
        );
        let x11 = WeylPoint::new(&ctx, vec![rat(1), rat(1), rat(0)]).unwrap();
        let t2 = FqPoly::monomial(fq.one(), 2);
        assert_eq!(
            log_nu(&ctx, &x11, &[zero.clone(), t2, one.clone()]),
            LogVal::Finite(rat(3))
        );
        assert_eq!(
            log_nu(&ctx, &x, &[zero.clone(), zero.clone(), zero]),
            LogVal::NegInf
        );
    }

    #[test]
    fn class_equality() {
        let ctx = make_context(2, 3).unwrap();
        let a = standard_vertex(&ctx, &wv(&ctx, &[1, 1, 0]));
        // same lattice scaled by pi
        let b = LatticeVertex::new(&ctx, a.basis().shift_all(-1)).unwrap();
        assert!(a.same_class(&ctx, &b));
        let c = standard_vertex(&ctx, &wv(&ctx, &[1, 0, 0]));
        assert!(!a.same_class(&ctx, &c));
    }
}
