//! The base field `F_q`, `q = p^e`, as `F_p[Y]/(f)`.
//!
//! The modulus `f` is the lexicographically least monic irreducible of
//! degree `e` over `F_p`, where polynomials are ordered by their base-p
//! integer encoding `sum c_i p^i`. This pins element encodings across runs.
//!
//! Elements are packed into a single `u64` holding the base-p digits of the
//! coefficient vector, so `FqElem` is `Copy` and encodings are canonical:
//! the element `sum c_i Y^i` is the integer `sum c_i p^i < q`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElem(pub u64);

#[derive(Debug, Clone)]
pub struct Fq {
    pub p: u64,
    pub e: u32,
    pub q: u64,
    /// Digits of the monic modulus, length e+1, leading digit 1. Unused
    /// (empty) when e = 1.
    modulus: Vec<u64>,
}

fn unpack(mut v: u64, p: u64, e: u32) -> Vec<u64> {
    let mut out = vec![0u64; e as usize];
    for d in out.iter_mut() {
        *d = v % p;
        v /= p;
    }
    out
}

fn pack(digits: &[u64], p: u64) -> u64 {
    let mut v = 0u64;
    for &d in digits.iter().rev() {
        v = v * p + d;
    }
    v
}

/// Multiply two coefficient vectors over F_p and reduce by the monic
/// modulus (digit vector of length e+1).
fn polymul_mod(a: &[u64], b: &[u64], p: u64, modulus: &[u64]) -> Vec<u64> {
    let e = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            let t = (ai as u128 * bj as u128 + prod[i + j] as u128) % p as u128;
            prod[i + j] = t as u64;
        }
    }
    // reduce: repeatedly fold the top coefficient down via Y^e = -(lower part)
    for k in (e..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for i in 0..e {
            let sub = (c as u128 * modulus[i] as u128) % p as u128;
            let cur = prod[k - e + i] as u128;
            prod[k - e + i] = ((cur + p as u128 - sub) % p as u128) as u64;
        }
    }
    prod.truncate(e);
    prod
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let e = f.len() - 1;
    // trial division by every monic polynomial of degree 1..=e/2
    let mut divisors: Vec<Vec<u64>> = Vec::new();
    for d in 1..=e / 2 {
        let count = p.pow(d as u32);
        for enc in 0..count {
            let mut g = unpack(enc, p, d as u32);
            g.push(1);
            divisors.push(g);
        }
    }
    for g in &divisors {
        if poly_divisible(f, g, p) {
            return false;
        }
    }
    true
}

/// Exact divisibility of f by monic g over F_p.
fn poly_divisible(f: &[u64], g: &[u64], p: u64) -> bool {
    let mut rem: Vec<u64> = f.to_vec();
    let dg = g.len() - 1;
    while rem.len() > dg {
        let lead = *rem.last().unwrap();
        let k = rem.len() - 1 - dg;
        if lead != 0 {
            for i in 0..=dg {
                let sub = (lead as u128 * g[i] as u128) % p as u128;
                let cur = rem[k + i] as u128;
                rem[k + i] = ((cur + p as u128 - sub) % p as u128) as u64;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c == 0)
}

impl Fq {
    pub fn new(p: u64, e: u32) -> Fq {
        let q = p.pow(e);
        let modulus = if e == 1 {
            Vec::new()
        } else {
            // least monic irreducible by base-p encoding of the low part
            let mut found = None;
            for enc in 0..q {
                let mut f = unpack(enc, p, e);
                f.push(1);
                if is_irreducible(&f, p) {
                    found = Some(f);
                    break;
                }
            }
            found.expect("an irreducible polynomial of every degree exists")
        };
        Fq { p, e, q, modulus }
    }

    pub fn zero(&self) -> FqElem {
        FqElem(0)
    }

    pub fn one(&self) -> FqElem {
        FqElem(1)
    }

    /// The element with encoding `v mod q` (bijective on 0..q).
    pub fn from_u64(&self, v: u64) -> FqElem {
        FqElem(v % self.q)
    }

    /// Embed an integer of the prime field (reduce mod p).
    pub fn from_prime(&self, v: i64) -> FqElem {
        let m = v.rem_euclid(self.p as i64) as u64;
        FqElem(m)
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.q).map(FqElem)
    }

    pub fn is_zero(&self, a: FqElem) -> bool {
        a.0 == 0
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.e == 1 {
            return FqElem((a.0 + b.0) % self.p);
        }
        let (da, db) = (unpack(a.0, self.p, self.e), unpack(b.0, self.p, self.e));
        let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        FqElem(pack(&sum, self.p))
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        if self.e == 1 {
            return FqElem((self.p - a.0) % self.p);
        }
        let da = unpack(a.0, self.p, self.e);
        let neg: Vec<u64> = da.iter().map(|x| (self.p - x) % self.p).collect();
        FqElem(pack(&neg, self.p))
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.e == 1 {
            return FqElem(((a.0 as u128 * b.0 as u128) % self.p as u128) as u64);
        }
        let (da, db) = (unpack(a.0, self.p, self.e), unpack(b.0, self.p, self.e));
        FqElem(pack(&polymul_mod(&da, &db, self.p, &self.modulus), self.p))
    }

    pub fn pow(&self, a: FqElem, mut n: u64) -> FqElem {
        let mut base = a;
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        // a^(q-2) = a^{-1} in F_q^*
        Ok(self.pow(a, self.q - 2))
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> Result<FqElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// A generator of the cyclic group F_q^* (smallest encoding that works).
    pub fn multiplicative_generator(&self) -> FqElem {
        'cand: for v in 2..self.q.max(3) {
            let g = FqElem(v % self.q);
            if g.0 == 0 {
                continue;
            }
            let mut x = g;
            for _ in 1..self.q - 1 {
                if x.0 == 1 {
                    continue 'cand;
                }
                x = self.mul(x, g);
            }
            if x.0 == 1 {
                return g;
            }
        }
        // q = 2: the group is trivial
        self.one()
    }
}

// ---------------------------------------------------------------------------
// Small dense linear algebra over F_q, used by the lattice reduction and the
// orbit machinery. Matrices are row-major Vec<Vec<FqElem>>.
// ---------------------------------------------------------------------------

/// Determinant by Gaussian elimination.
pub fn fq_det(fq: &Fq, m: &[Vec<FqElem>]) -> FqElem {
    let n = m.len();
    let mut a: Vec<Vec<FqElem>> = m.to_vec();
    let mut det = fq.one();
    for col in 0..n {
        let pivot = (col..n).find(|&row| !fq.is_zero(a[row][col]));
        let Some(pivot) = pivot else {
            return fq.zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = fq.neg(det);
        }
        let pv = a[col][col];
        det = fq.mul(det, pv);
        let pv_inv = fq.inv(pv).expect("pivot nonzero");
        for row in col + 1..n {
            let factor = fq.mul(a[row][col], pv_inv);
            if fq.is_zero(factor) {
                continue;
            }
            for k in col..n {
                let t = fq.mul(factor, a[col][k]);
                a[row][k] = fq.sub(a[row][k], t);
            }
        }
    }
    det
}

/// One nonzero kernel vector of the column space: returns c with M c = 0,
/// or None if M (square) is invertible.
pub fn fq_kernel_vector(fq: &Fq, m: &[Vec<FqElem>]) -> Option<Vec<FqElem>> {
    let n = m.len();
    let mut a: Vec<Vec<FqElem>> = m.to_vec();
    let mut where_pivot: Vec<Option<usize>> = vec![None; n]; // column -> pivot row
    let mut row = 0;
    for col in 0..n {
        let pivot = (row..n).find(|&rr| !fq.is_zero(a[rr][col]));
        let Some(p) = pivot else { continue };
        a.swap(p, row);
        let inv = fq.inv(a[row][col]).unwrap();
        for k in 0..n {
            a[row][k] = fq.mul(a[row][k], inv);
        }
        for rr in 0..n {
            if rr != row && !fq.is_zero(a[rr][col]) {
                let f = a[rr][col];
                for k in 0..n {
                    let t = fq.mul(f, a[row][k]);
                    a[rr][k] = fq.sub(a[rr][k], t);
                }
            }
        }
        where_pivot[col] = Some(row);
        row += 1;
        if row == n {
            break;
        }
    }
    let free_col = (0..n).find(|&c| where_pivot[c].is_none())?;
    let mut c = vec![fq.zero(); n];
    c[free_col] = fq.one();
    for col in 0..n {
        if let Some(prow) = where_pivot[col] {
            c[col] = fq.neg(a[prow][free_col]);
        }
    }
    Some(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_is_a_field() {
        let f = Fq::new(2, 2);
        assert_eq!(f.q, 4);
        // Y^2 + Y + 1 is the only irreducible of degree 2 over F_2
        let g = FqElem(2); // Y
        assert_eq!(f.mul(g, g), f.add(g, f.one())); // Y^2 = Y + 1
        for a in f.elements() {
            for b in f.elements() {
                for c in f.elements() {
                    let lhs = f.mul(a, f.add(b, c));
                    let rhs = f.add(f.mul(a, b), f.mul(a, c));
                    assert_eq!(lhs, rhs);
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                }
            }
        }
        for a in f.elements().skip(1) {
            let inv = f.inv(a).unwrap();
            assert_eq!(f.mul(a, inv), f.one());
        }
    }

    #[test]
    fn f9_modulus_is_y2_plus_1() {
        let f = Fq::new(3, 2);
        let y = FqElem(3);
        // Y^2 = -1 = 2
        assert_eq!(f.mul(y, y), FqElem(2));
    }

    #[test]
    fn f8_modulus_is_y3_plus_y_plus_1() {
        let f = Fq::new(2, 3);
        let y = FqElem(2);
        let y3 = f.mul(f.mul(y, y), y);
        assert_eq!(y3, f.add(y, f.one()));
    }

    #[test]
    fn generators_generate() {
        for (p, e) in [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2)] {
            let f = Fq::new(p, e);
            let g = f.multiplicative_generator();
            let mut seen = std::collections::HashSet::new();
            let mut x = f.one();
            for _ in 0..f.q - 1 {
                seen.insert(x);
                x = f.mul(x, g);
            }
            assert_eq!(seen.len() as u64, f.q - 1);
        }
    }

    #[test]
    fn det_and_kernel() {
        let f = Fq::new(2, 1);
        let id = vec![vec![FqElem(1), FqElem(0)], vec![FqElem(0), FqElem(1)]];
        assert_eq!(fq_det(&f, &id), f.one());
        assert!(fq_kernel_vector(&f, &id).is_none());
        let sing = vec![vec![FqElem(1), FqElem(1)], vec![FqElem(1), FqElem(1)]];
        assert_eq!(fq_det(&f, &sing), f.zero());
        let c = fq_kernel_vector(&f, &sing).unwrap();
        // M c = 0
        for row in &sing {
            let mut acc = f.zero();
            for (a, b) in row.iter().zip(&c) {
                acc = f.add(acc, f.mul(*a, *b));
            }
            assert!(f.is_zero(acc));
        }
    }
}
