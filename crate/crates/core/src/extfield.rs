//! The extension field `F_{q^m} = F_q[Z]/(h)` used by the finite-lattice
//! oracles.
//!
//! `h` is the least monic irreducible of degree `m` over `F_q` in the
//! encoding order (coefficients packed base q, constant digit first), so
//! encodings are reproducible. Elements pack into a `u64` with base-q digits
//! that are themselves `F_q` encodings. A multiplication table is built when
//! `q^m` is small; the guard `q^m <= 2^20` keeps everything desk-scale.

use crate::error::{Error, Result};
use crate::fq::{Fq, FqElem};

pub const EXT_GUARD: u64 = 1 << 20;
const TABLE_LIMIT: u64 = 1 << 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtElem(pub u64);

#[derive(Debug, Clone)]
pub struct ExtField {
    pub fq: Fq,
    pub m: u32,
    pub qm: u64,
    /// modulus digits over F_q, length m+1, leading coefficient 1
    modulus: Vec<FqElem>,
    mul_table: Option<Vec<ExtElem>>,
}

fn unpack(fq: &Fq, v: u64, m: u32) -> Vec<FqElem> {
    let mut out = Vec::with_capacity(m as usize);
    let mut v = v;
    for _ in 0..m {
        out.push(FqElem(v % fq.q));
        v /= fq.q;
    }
    out
}

fn pack(fq: &Fq, digits: &[FqElem]) -> u64 {
    let mut v = 0u64;
    for d in digits.iter().rev() {
        v = v * fq.q + d.0;
    }
    v
}

fn mul_mod(fq: &Fq, a: &[FqElem], b: &[FqElem], modulus: &[FqElem]) -> Vec<FqElem> {
    let m = modulus.len() - 1;
    let mut prod = vec![FqElem(0); a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai.0 == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = fq.add(prod[i + j], fq.mul(ai, bj));
        }
    }
    for k in (m..prod.len()).rev() {
        let c = prod[k];
        if c.0 == 0 {
            continue;
        }
        prod[k] = FqElem(0);
        for i in 0..m {
            let t = fq.mul(c, modulus[i]);
            prod[k - m + i] = fq.sub(prod[k - m + i], t);
        }
    }
    prod.truncate(m);
    prod
}

fn is_irreducible(fq: &Fq, h: &[FqElem]) -> bool {
    let m = h.len() - 1;
    for d in 1..=m / 2 {
        let count = fq.q.pow(d as u32);
        for enc in 0..count {
            let mut g = unpack(fq, enc, d as u32);
            g.push(fq.one());
            if divides(fq, h, &g) {
                return false;
            }
        }
    }
    true
}

fn divides(fq: &Fq, f: &[FqElem], g: &[FqElem]) -> bool {
    let mut rem: Vec<FqElem> = f.to_vec();
    let dg = g.len() - 1;
    while rem.len() > dg {
        let lead = *rem.last().unwrap();
        let k = rem.len() - 1 - dg;
        if lead.0 != 0 {
            for i in 0..=dg {
                let t = fq.mul(lead, g[i]);
                rem[k + i] = fq.sub(rem[k + i], t);
            }
        }
        rem.pop();
    }
    rem.iter().all(|c| c.0 == 0)
}

impl ExtField {
    pub fn new(fq: &Fq, m: u32) -> Result<ExtField> {
        let qm =
            fq.q.checked_pow(m)
                .filter(|&v| v <= EXT_GUARD)
                .ok_or_else(|| Error::Invalid(format!("q^m = {}^{} exceeds the guard", fq.q, m)))?;
        let modulus = if m == 1 {
            Vec::new()
        } else {
            let mut found = None;
            for enc in 0..qm {
                let mut h = unpack(fq, enc, m);
                h.push(fq.one());
                if is_irreducible(fq, &h) {
                    found = Some(h);
                    break;
                }
            }
            found.expect("irreducible polynomial of every degree exists")
        };
        let mut field = ExtField {
            fq: fq.clone(),
            m,
            qm,
            modulus,
            mul_table: None,
        };
        if qm <= TABLE_LIMIT {
            let mut table = vec![ExtElem(0); (qm * qm) as usize];
            for a in 0..qm {
                for b in a..qm {
                    let v = field.mul_direct(ExtElem(a), ExtElem(b));
                    table[(a * qm + b) as usize] = v;
                    table[(b * qm + a) as usize] = v;
                }
            }
            field.mul_table = Some(table);
        }
        Ok(field)
    }

    pub fn zero(&self) -> ExtElem {
        ExtElem(0)
    }

    pub fn one(&self) -> ExtElem {
        ExtElem(1)
    }

    pub fn elements(&self) -> impl Iterator<Item = ExtElem> {
        (0..self.qm).map(ExtElem)
    }

    pub fn is_zero(&self, a: ExtElem) -> bool {
        a.0 == 0
    }

    /// Embed an element of the base field (constant digit).
    pub fn embed(&self, a: FqElem) -> ExtElem {
        ExtElem(a.0)
    }

    /// Is `a` in the embedded base field `F_q`?
    pub fn in_base_field(&self, a: ExtElem) -> bool {
        a.0 < self.fq.q
    }

    pub fn add(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        if self.m == 1 {
            return ExtElem(self.fq.add(FqElem(a.0), FqElem(b.0)).0);
        }
        let (da, db) = (unpack(&self.fq, a.0, self.m), unpack(&self.fq, b.0, self.m));
        let sum: Vec<FqElem> = da
            .iter()
            .zip(&db)
            .map(|(&x, &y)| self.fq.add(x, y))
            .collect();
        ExtElem(pack(&self.fq, &sum))
    }

    pub fn neg(&self, a: ExtElem) -> ExtElem {
        if self.m == 1 {
            return ExtElem(self.fq.neg(FqElem(a.0)).0);
        }
        let da = unpack(&self.fq, a.0, self.m);
        let neg: Vec<FqElem> = da.iter().map(|&x| self.fq.neg(x)).collect();
        ExtElem(pack(&self.fq, &neg))
    }

    pub fn sub(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        self.add(a, self.neg(b))
    }

    fn mul_direct(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        if self.m == 1 {
            return ExtElem(self.fq.mul(FqElem(a.0), FqElem(b.0)).0);
        }
        let (da, db) = (unpack(&self.fq, a.0, self.m), unpack(&self.fq, b.0, self.m));
        ExtElem(pack(&self.fq, &mul_mod(&self.fq, &da, &db, &self.modulus)))
    }

    pub fn mul(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        match &self.mul_table {
            Some(t) => t[(a.0 * self.qm + b.0) as usize],
            None => self.mul_direct(a, b),
        }
    }

    pub fn pow(&self, a: ExtElem, mut n: u64) -> ExtElem {
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

    pub fn inv(&self, a: ExtElem) -> Result<ExtElem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.qm - 2))
    }

    /// Frobenius relative to the base field: `a -> a^{q^i}`.
    pub fn frob(&self, a: ExtElem, i: u32) -> ExtElem {
        let mut exp = 1u64;
        for _ in 0..i {
            exp = exp.checked_mul(self.fq.q).expect("q^i fits u64");
        }
        self.pow(a, exp)
    }
}
