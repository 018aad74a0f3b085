//! Finite coefficient fields GF(p^k) for p in {2,3,5} and k <= 3.
//!
//! The restriction to small prime-power fields keeps every residue field
//! enumerable, which the point-set checks rely on. Elements are stored as
//! coefficient vectors over the prime field with respect to a fixed
//! irreducible modulus; the modulus table below is verified at construction
//! by exhausting prime-field roots (enough for degrees 2 and 3).

use crate::error::{Error, Result};
use std::fmt;

/// An element of GF(p^k), k <= 3: coefficients of 1, g, g^2 where g is the
/// class of the generator modulo the field's modulus. Entries are reduced
/// mod p and positions >= k are zero, so derived equality is field equality.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fq(pub [u8; 3]);

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fq({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

/// Fixed irreducible moduli over GF(p), indexed by (p, k). Coefficients are
/// listed from the constant term up; the leading 1 is implicit.
fn modulus_table(p: u32, k: u32) -> Option<[u8; 3]> {
    match (p, k) {
        (_, 1) => Some([0, 0, 0]), // x itself; never used in reduction
        (2, 2) => Some([1, 1, 0]), // x^2 + x + 1
        (2, 3) => Some([1, 1, 0]), // x^3 + x + 1
        (3, 2) => Some([1, 0, 0]), // x^2 + 1
        (3, 3) => Some([1, 2, 0]), // x^3 + 2x + 1
        (5, 2) => Some([2, 0, 0]), // x^2 + 2
        (5, 3) => Some([1, 1, 0]), // x^3 + x + 1
        _ => None,
    }
}

/// A coefficient field context. All element operations go through the
/// context, since the representation only makes sense relative to p, k and
/// the modulus.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FieldCtx {
    pub p: u32,
    pub k: u32,
    /// Modulus coefficients below the leading term (degree k monic).
    modulus: [u8; 3],
}

impl FieldCtx {
    pub fn new(p: u32, k: u32) -> Result<FieldCtx> {
        if !matches!(p, 2 | 3 | 5) || !(1..=3).contains(&k) {
            return Err(Error::UnsupportedField { p, k });
        }
        let modulus = modulus_table(p, k).ok_or(Error::UnsupportedField { p, k })?;
        let ctx = FieldCtx { p, k, modulus };
        if k >= 2 {
            // Root exhaustion: a polynomial of degree 2 or 3 over GF(p) is
            // irreducible iff it has no root in GF(p).
            for a in 0..p {
                let mut acc: u32 = 1; // leading coefficient
                for i in (0..k).rev() {
                    acc = (acc * a + ctx.modulus[i as usize] as u32) % p;
                }
                assert!(acc != 0, "modulus for GF({p}^{k}) has root {a}");
            }
        }
        Ok(ctx)
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.k)
    }

    pub fn zero(&self) -> Fq {
        Fq([0, 0, 0])
    }

    pub fn one(&self) -> Fq {
        Fq([1, 0, 0])
    }

    /// The class of the extension generator g (requires k >= 2).
    pub fn generator(&self) -> Fq {
        assert!(self.k >= 2);
        Fq([0, 1, 0])
    }

    pub fn from_int(&self, n: i64) -> Fq {
        let m = n.rem_euclid(self.p as i64) as u8;
        Fq([m, 0, 0])
    }

    pub fn is_zero(&self, a: Fq) -> bool {
        a == self.zero()
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        let mut r = [0u8; 3];
        for i in 0..3 {
            r[i] = ((a.0[i] as u32 + b.0[i] as u32) % self.p) as u8;
        }
        Fq(r)
    }

    pub fn neg(&self, a: Fq) -> Fq {
        let mut r = [0u8; 3];
        for i in 0..3 {
            r[i] = ((self.p - a.0[i] as u32) % self.p) as u8;
        }
        Fq(r)
    }

    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        let p = self.p;
        let k = self.k as usize;
        // Schoolbook product, degree <= 4.
        let mut prod = [0u32; 5];
        for i in 0..k {
            for j in 0..k {
                prod[i + j] = (prod[i + j] + a.0[i] as u32 * b.0[j] as u32) % p;
            }
        }
        // Reduce by the monic modulus: x^k = -modulus tail.
        for d in (k..=2 * (k - 1)).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (i, &m) in self.modulus.iter().enumerate().take(k) {
                let sub = (c * m as u32) % p;
                prod[d - k + i] = (prod[d - k + i] + p - sub) % p;
            }
        }
        Fq([prod[0] as u8, prod[1] as u8, prod[2] as u8])
    }

    pub fn pow(&self, a: Fq, mut e: u64) -> Fq {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Fq) -> Fq {
        assert!(!self.is_zero(a), "division by zero in GF({}^{})", self.p, self.k);
        self.pow(a, (self.order() - 2) as u64)
    }

    /// Frobenius a -> a^p.
    pub fn frobenius(&self, a: Fq) -> Fq {
        self.pow(a, self.p as u64)
    }

    /// The unique p-th root (inverse Frobenius; x -> x^p is bijective).
    pub fn p_root(&self, a: Fq) -> Fq {
        let mut r = a;
        for _ in 0..self.k.saturating_sub(1) {
            r = self.frobenius(r);
        }
        r
    }

    /// The unique p^e-th root.
    pub fn pe_root(&self, a: Fq, e: u32) -> Fq {
        let mut r = a;
        for _ in 0..e {
            r = self.p_root(r);
        }
        r
    }

    /// Every element of the field, in a fixed deterministic order.
    pub fn elements(&self) -> Vec<Fq> {
        let mut out = Vec::with_capacity(self.order() as usize);
        let k = self.k as usize;
        let mut cur = [0u8; 3];
        loop {
            out.push(Fq(cur));
            let mut i = 0;
            loop {
                if i == k {
                    return out;
                }
                cur[i] += 1;
                if (cur[i] as u32) < self.p {
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
        }
    }

    pub fn format(&self, a: Fq) -> String {
        if self.k == 1 {
            return format!("{}", a.0[0]);
        }
        let mut parts = Vec::new();
        for i in (0..self.k as usize).rev() {
            let c = a.0[i];
            if c == 0 {
                continue;
            }
            let s = match i {
                0 => format!("{c}"),
                1 if c == 1 => "g".to_string(),
                1 => format!("{c}*g"),
                _ if c == 1 => format!("g^{i}"),
                _ => format!("{c}*g^{i}"),
            };
            parts.push(s);
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_in_f4() {
        let f = FieldCtx::new(2, 2).unwrap();
        let g = f.generator();
        // g^2 = g + 1 under x^2 + x + 1
        assert_eq!(f.mul(g, g), f.add(g, f.one()));
        // every nonzero element has a multiplicative inverse
        for a in f.elements() {
            if !f.is_zero(a) {
                assert_eq!(f.mul(a, f.inv(a)), f.one());
            }
        }
    }

    #[test]
    fn frobenius_roots_round_trip() {
        for &(p, k) in &[(2, 1), (2, 2), (2, 3), (3, 2), (5, 2), (3, 3), (5, 3)] {
            let f = FieldCtx::new(p, k).unwrap();
            for a in f.elements() {
                assert_eq!(f.pow(f.p_root(a), p as u64), a);
                assert_eq!(f.pow(f.pe_root(a, 2), (p * p) as u64), a);
            }
        }
    }

    #[test]
    fn field_sizes() {
        assert_eq!(FieldCtx::new(3, 3).unwrap().elements().len(), 27);
        assert_eq!(FieldCtx::new(5, 2).unwrap().elements().len(), 25);
        assert!(FieldCtx::new(7, 1).is_err());
        assert!(FieldCtx::new(2, 4).is_err());
    }
}
