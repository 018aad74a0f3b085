//! Transversality, monic forms in the transversal variable, elimination
//! algebras and specialization of universal symmetric invariants.
//!
//! The elimination algebra lives one dimension down: it is the part of the
//! (differentially closed) algebra free of the transversal variable z. On
//! transforms the closure taken is the one supported on z, which is the
//! structure preserved by monoidal transformations; for absolutely closed
//! algebras the two notions agree.

use crate::error::{Error, Result};
use crate::field::Fq;
use crate::poly::{Poly, RingCtx};
use crate::rees::{ReesAlgebra, WeightedGenerator};
use std::collections::BTreeMap;
use std::sync::Arc;

/// A polynomial written as z^n + a_1 z^{n-1} + ... + a_n with the a_i free
/// of z (after dividing out a unit leading constant).
#[derive(Clone, Debug)]
pub struct MonicForm {
    pub z: String,
    pub n: u32,
    /// a_1 ... a_n, each free of z, indexed so that coeffs[i] = a_{i+1}.
    pub coeffs: Vec<Poly>,
    ring: Arc<RingCtx>,
}

impl MonicForm {
    pub fn ring(&self) -> &Arc<RingCtx> {
        &self.ring
    }

    pub fn a(&self, i: u32) -> &Poly {
        &self.coeffs[(i - 1) as usize]
    }

    /// z^n + sum a_i z^{n-i}.
    pub fn reconstruct(&self) -> Poly {
        let zi = self.ring.var_index(&self.z).unwrap();
        let z = Poly::var(self.ring.clone(), zi);
        let mut acc = z.pow(self.n);
        for (i, a) in self.coeffs.iter().enumerate() {
            let power = self.n - (i as u32 + 1);
            acc = acc.add(&a.mul(&z.pow(power)));
        }
        acc
    }
}

/// True iff Delta_z^(n)(f) does not vanish at the point, n the order there.
pub fn is_transversal(f: &Poly, z: &str, pt: &[Fq]) -> bool {
    let ring = f.ring().clone();
    let zi = ring.var_index(z).expect("transversal variable not in ring");
    let n = match f.order_at_point(pt) {
        Some(n) => n,
        None => return false,
    };
    let d = f.hasse_var(zi, n as u16);
    !ring.field.is_zero(d.eval(pt))
}

/// Extract the monic form of f in z. The z-leading coefficient must be a
/// unit constant; everything is divided by it. Inputs needing an actual
/// preparation step are rejected so the scenario can supply a coordinate
/// change instead.
pub fn monic_form(f: &Poly, z: &str) -> Result<MonicForm> {
    let ring = f.ring().clone();
    let zi = ring
        .var_index(z)
        .unwrap_or_else(|| panic!("no variable {z}"));
    let n = f.deg_var(zi);
    let coeffs = f.coeffs_in_var(zi);
    let lead = coeffs.get(&(n as u16)).cloned().unwrap_or_else(|| Poly::zero(ring.clone()));
    let unit = match (lead.total_degree(), lead.leading_coeff()) {
        (Some(0), Some(c)) => c,
        _ => {
            return Err(Error::NotMonic {
                poly: f.to_string(),
                var: z.to_string(),
            })
        }
    };
    let inv = ring.field.inv(unit);
    let mut out = Vec::with_capacity(n as usize);
    for i in 1..=n {
        let a = coeffs
            .get(&((n - i) as u16))
            .map(|p| p.scale(inv))
            .unwrap_or_else(|| Poly::zero(ring.clone()));
        out.push(a);
    }
    Ok(MonicForm {
        z: z.to_string(),
        n,
        coeffs: out,
        ring,
    })
}

/// The elimination algebra: the z-free generators of the differential
/// closure supported on z, moved to the ring without z and pruned.
pub fn elimination_algebra(alg: &ReesAlgebra, z: &str) -> ReesAlgebra {
    let closed = alg.relative_diff_closure(z);
    let ring = alg.ring.clone();
    let zi = ring.var_index(z).expect("transversal variable not in ring");
    let target = ring.without_var(z);
    let images: Vec<Poly> = ring
        .vars
        .iter()
        .map(|v| {
            if v == z {
                Poly::zero(target.clone())
            } else {
                Poly::var_named(&target, v)
            }
        })
        .collect();
    let gens: Vec<WeightedGenerator> = closed
        .gens()
        .iter()
        .filter(|g| !g.poly.involves_var(zi))
        .map(|g| WeightedGenerator::new(g.poly.map_ring(&target, &images), g.weight))
        .collect();
    ReesAlgebra::new(target, gens)
}

/// A weighted-homogeneous polynomial in the universal symmetric functions
/// s_1 ... s_n (weight i) and Z (weight 1), with integer coefficients.
/// Exponent vectors are [e_1, ..., e_n, e_Z].
#[derive(Clone, Debug)]
pub struct UniversalInvariant {
    pub n: u32,
    pub weighted_degree: u32,
    terms: Vec<(Vec<u16>, i64)>,
}

impl UniversalInvariant {
    pub fn new(n: u32, terms: Vec<(Vec<u16>, i64)>) -> UniversalInvariant {
        let mut degree = None;
        for (exps, _) in &terms {
            assert_eq!(exps.len() as u32, n + 1);
            let mut d = 0u32;
            for (i, &e) in exps.iter().enumerate() {
                let w = if (i as u32) < n { i as u32 + 1 } else { 1 };
                d += w * e as u32;
            }
            match degree {
                None => degree = Some(d),
                Some(prev) => assert_eq!(prev, d, "invariant is not weighted-homogeneous"),
            }
        }
        UniversalInvariant {
            n,
            weighted_degree: degree.unwrap_or(0),
            terms,
        }
    }

    /// The discriminant of the universal degree-2 polynomial: the expansion
    /// of (Y_1 - Y_2)^2 in elementary symmetric functions, s_1^2 - 4 s_2.
    pub fn discriminant2() -> UniversalInvariant {
        UniversalInvariant::new(2, vec![(vec![2, 0, 0], 1), (vec![0, 1, 0], -4)])
    }

    /// The first symmetric function s_1 of degree 2 (weight 1).
    pub fn s1_of_degree2() -> UniversalInvariant {
        UniversalInvariant::new(2, vec![(vec![1, 0, 0], 1)])
    }
}

/// Specialize a universal invariant along s_i -> (-1)^i a_i W^i, Z -> z W.
/// The result carries W^m with m the weighted degree. Returns None for the
/// zero specialization (everything collapsed mod p).
pub fn specialize_invariant(
    inv: &UniversalInvariant,
    mf: &MonicForm,
) -> Result<Option<WeightedGenerator>> {
    if inv.n != mf.n {
        return Err(Error::DegreeMismatch {
            expected: inv.n,
            found: mf.n,
        });
    }
    let ring = mf.ring().clone();
    let field = ring.field.clone();
    let zi = ring.var_index(&mf.z).unwrap();
    let z = Poly::var(ring.clone(), zi);
    let mut acc = Poly::zero(ring.clone());
    for (exps, c) in &inv.terms {
        let mut t = Poly::constant(ring.clone(), field.from_int(*c));
        for (i, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let img = if (i as u32) < inv.n {
                let sign = if (i + 1) % 2 == 1 { -1i64 } else { 1 };
                mf.a(i as u32 + 1).scale(field.from_int(sign))
            } else {
                z.clone()
            };
            t = t.mul(&img.pow(e as u32));
        }
        acc = acc.add(&t);
    }
    if acc.is_zero() {
        Ok(None)
    } else {
        Ok(Some(WeightedGenerator::new(acc, inv.weighted_degree)))
    }
}

/// z-coefficient decomposition of a polynomial, used by contact checks.
pub fn z_coefficients(f: &Poly, z: &str) -> BTreeMap<u16, Poly> {
    let zi = f.ring().var_index(z).expect("variable not in ring");
    f.coeffs_in_var(zi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use crate::parse::parse_poly;

    fn ring(p: u32, vars: &[&str]) -> Arc<RingCtx> {
        RingCtx::new(
            FieldCtx::new(p, 1).unwrap(),
            vars.iter().map(|s| s.to_string()).collect(),
        )
    }

    fn alg(ring: &Arc<RingCtx>, gens: &[(&str, u32)]) -> ReesAlgebra {
        ReesAlgebra::new(
            ring.clone(),
            gens.iter()
                .map(|(s, w)| WeightedGenerator::new(parse_poly(s, ring).unwrap(), *w))
                .collect(),
        )
    }

    #[test]
    fn transversality() {
        let r = ring(2, &["Z", "X", "Y"]);
        let origin = vec![r.field.zero(); 3];
        let f = parse_poly("Z^2+Y^7+X^4*Y", &r).unwrap();
        assert!(is_transversal(&f, "Z", &origin));

        let g = parse_poly("Z*Y+Y^2", &r).unwrap();
        assert!(!is_transversal(&g, "Z", &origin));
    }

    #[test]
    fn monic_form_extraction() {
        let r = ring(2, &["Z", "X", "Y"]);
        let f = parse_poly("Z^2+Y^7+X^4*Y", &r).unwrap();
        let mf = monic_form(&f, "Z").unwrap();
        assert_eq!(mf.n, 2);
        assert!(mf.a(1).is_zero());
        assert_eq!(mf.a(2), &parse_poly("Y^7+X^4*Y", &r).unwrap());
        assert_eq!(mf.reconstruct(), f);

        let zn = parse_poly("Z^4", &r).unwrap();
        let mz = monic_form(&zn, "Z").unwrap();
        assert!(mz.coeffs.iter().all(|a| a.is_zero()));

        let bad = parse_poly("Y*Z^2+X", &r).unwrap();
        assert!(matches!(monic_form(&bad, "Z"), Err(Error::NotMonic { .. })));
    }

    #[test]
    fn elimination_of_examples() {
        let r = ring(2, &["Z", "X", "Y"]);
        let g = alg(&r, &[("Z^2+Y^7+X^4*Y", 2), ("Y^6+X^4", 1)]).diff_closure();
        let e = elimination_algebra(&g, "Z");
        assert_eq!(e.to_string(), "[(Y^6+X^4)W^1]");

        let r4 = ring(2, &["T", "X", "Y", "Z"]);
        let g4 = alg(&r4, &[("T^2+X*Y*Z", 2)]).diff_closure();
        let e4 = elimination_algebra(&g4, "T");
        assert_eq!(e4.gens().len(), 3);
        assert!(e4.gens().iter().all(|g| g.weight == 1));

        let zonly = alg(&r, &[("Z", 1)]);
        assert!(elimination_algebra(&zonly, "Z").is_empty());
    }

    #[test]
    fn discriminant_specialization() {
        // over F3 with symbolic a1, a2 the discriminant is a1^2 - 4 a2
        let r3 = ring(3, &["Z", "a1", "a2"]);
        let f = parse_poly("Z^2+a1*Z+a2", &r3).unwrap();
        let mf = monic_form(&f, "Z").unwrap();
        let d = specialize_invariant(&UniversalInvariant::discriminant2(), &mf)
            .unwrap()
            .unwrap();
        assert_eq!(d.weight, 2);
        assert_eq!(d.poly, parse_poly("a1^2-4*a2", &r3).unwrap().normalized());

        // -a1, stored normalized (generators are scalar-insensitive)
        let s1 = specialize_invariant(&UniversalInvariant::s1_of_degree2(), &mf)
            .unwrap()
            .unwrap();
        assert_eq!(s1.weight, 1);
        assert_eq!(s1.poly, parse_poly("a1", &r3).unwrap());

        // in char 2 with a1 = 0 the discriminant collapses to zero, which is
        // exactly why the differential generators carry the elimination data
        let r2 = ring(2, &["Z", "X", "Y"]);
        let h = parse_poly("Z^2+Y^7+X^4*Y", &r2).unwrap();
        let mh = monic_form(&h, "Z").unwrap();
        assert!(specialize_invariant(&UniversalInvariant::discriminant2(), &mh)
            .unwrap()
            .is_none());

        // degree mismatch is rejected
        let rq = ring(2, &["Z", "X"]);
        let q = parse_poly("Z^4+X", &rq).unwrap();
        let mq = monic_form(&q, "Z").unwrap();
        assert!(matches!(
            specialize_invariant(&UniversalInvariant::discriminant2(), &mq),
            Err(Error::DegreeMismatch { .. })
        ));
    }
}
