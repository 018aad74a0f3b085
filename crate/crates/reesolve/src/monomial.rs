//! Slopes, p^e-power cleaning, condition (C), strong exponents, the strong
//! monomial algebra and its combinatorial resolution.
//!
//! The strong exponent of an exceptional divisor y is the largest h for
//! which the contact inclusion G inside <z>W (.) y^h W^s holds. After
//! cleaning, h reads off the slope: h = floor(s * min ord_y / weight), with
//! the elimination exponent as a cap and condition (C) (the restriction of
//! the monic generator to y = 0 is a p^e-th power) as the gate for h >= 1.

use crate::elim::MonicForm;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rees::ReesAlgebra;
use num_rational::Ratio;
use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;

/// An exact nonnegative slope; None is the conventional top (no constraint).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Slope(pub Option<Ratio<u64>>);

impl Slope {
    pub fn finite(num: u64, den: u64) -> Slope {
        Slope(Some(Ratio::new(num, den)))
    }

    pub fn infinite() -> Slope {
        Slope(None)
    }

    pub fn min(self, other: Slope) -> Slope {
        match (self.0, other.0) {
            (None, _) => other,
            (_, None) => self,
            (Some(a), Some(b)) => Slope(Some(a.min(b))),
        }
    }

    /// floor(s * slope), saturating for the infinite slope.
    pub fn scaled_floor(self, s: u32) -> Option<u32> {
        self.0
            .map(|r| ((r * Ratio::from_integer(s as u64)).floor().to_integer()) as u32)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            None => write!(f, "inf"),
            Some(r) if r.is_integer() => write!(f, "{}", r.to_integer()),
            Some(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

/// Slope of the monic form and elimination data along a divisor variable:
/// min over nonzero coefficients of ord_y(a_k)/k and over elimination
/// generators of ord_y(g)/weight.
pub fn divisor_slope(mf: &MonicForm, elim: &ReesAlgebra, y: &str) -> Slope {
    assert_ne!(y, mf.z.as_str());
    let ring = mf.ring();
    let yi = ring.var_index(y).expect("divisor variable not in ring");
    let mut slope = Slope::infinite();
    for k in 1..=mf.n {
        let a = mf.a(k);
        if a.is_zero() {
            continue;
        }
        let ord = a.ord_var(yi).unwrap();
        slope = slope.min(Slope::finite(ord as u64, k as u64));
    }
    for g in elim.gens() {
        let yj = elim.ring.var_index(y).expect("divisor variable not downstairs");
        let ord = g.poly.ord_var(yj).unwrap();
        slope = slope.min(Slope::finite(ord as u64, g.weight as u64));
    }
    slope
}

/// Newton-polygon slope at a point: min over coefficients of
/// order_at_point(a_k)/k. With no divisor in sight this is the invariant the
/// first quadratic transformation improves.
pub fn point_slope(mf: &MonicForm, pt: &[crate::field::Fq]) -> Slope {
    let mut slope = Slope::infinite();
    for k in 1..=mf.n {
        let a = mf.a(k);
        if let Some(ord) = a.order_at_point(pt) {
            slope = slope.min(Slope::finite(ord as u64, k as u64));
        }
    }
    slope
}

/// Condition (C) for a divisor y: the restriction of the monic generator to
/// y = 0 equals (z - alpha)^(p^e) at full weight.
pub fn condition_c(mf: &MonicForm, y: &str) -> bool {
    let ring = mf.ring();
    let yi = match ring.var_index(y) {
        Some(i) => i,
        None => return false,
    };
    let zi = ring.var_index(&mf.z).unwrap();
    let e = match exponent_of(mf.n, ring.field.p) {
        Some(e) if e >= 1 => e,
        _ => return false,
    };
    let restricted = mf.reconstruct().restrict_to_zero(&[yi]);
    let (root, rest) = restricted.pe_split(e);
    rest.is_zero()
        && root.deg_var(zi) == 1
        && root
            .coeffs_in_var(zi)
            .get(&1)
            .map_or(false, |c| c.total_degree() == Some(0))
}

pub(crate) fn exponent_of(n: u32, p: u32) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let mut n = n;
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    if n == 1 {
        Some(e)
    } else {
        None
    }
}

/// Remove the p^e-th power part of the constant coefficient by translations
/// z -> z - root, repeated until the split root vanishes. Returns the cleaned
/// form and the accumulated translation.
pub fn clean_pe_powers(mf: &MonicForm) -> Result<(MonicForm, Poly)> {
    let ring = mf.ring().clone();
    let p = ring.field.p;
    let e = match exponent_of(mf.n, p) {
        Some(e) if e >= 1 => e,
        _ => return Ok((mf.clone(), Poly::zero(ring))),
    };
    let zi = ring.var_index(&mf.z).unwrap();
    let z = Poly::var(ring.clone(), zi);
    let mut current = mf.reconstruct();
    let mut total = Poly::zero(ring.clone());
    let max_deg = current.total_degree().unwrap_or(0);
    let cap = mf.n * max_deg + mf.n + 1;
    for _ in 0..cap {
        let a_n = crate::elim::monic_form(&current, &mf.z)?
            .a(mf.n)
            .clone();
        let (root, _) = a_n.pe_split(e);
        if root.is_zero() {
            let cleaned = crate::elim::monic_form(&current, &mf.z)?;
            return Ok((cleaned, total));
        }
        let mut map = BTreeMap::new();
        map.insert(zi, z.sub(&root));
        current = current.substitute(&map);
        total = total.add(&root);
    }
    Err(Error::NonTerminating { cap })
}

/// The strong exponent of one divisor: capped slope reading, gated by
/// condition (C). Cleaning is applied to a working copy first so hidden
/// p^e-th powers do not depress the slope.
pub fn strong_exponent(
    mf: &MonicForm,
    elim: &ReesAlgebra,
    y: &str,
    s: u32,
    alpha_cap: Option<u32>,
) -> Result<u32> {
    let (cleaned, _) = clean_pe_powers(mf)?;
    if !condition_c(&cleaned, y) {
        return Ok(0);
    }
    let slope = divisor_slope(&cleaned, elim, y);
    let h = slope.scaled_floor(s).unwrap_or(u32::MAX);
    Ok(match alpha_cap {
        Some(cap) => h.min(cap),
        None => h,
    })
}

/// A monomial algebra prod I(H_i)^{h_i} W^s on the registered divisors,
/// together with the pairwise intersection relation needed to resolve it
/// combinatorially. Two divisors {v+c=0}, {v'+c'=0} meet exactly when the
/// variables differ or the loci coincide.
#[derive(Clone, Debug)]
pub struct MonomialAlgebra {
    /// (divisor name, exponent h), in birth order.
    pub entries: Vec<(String, u32)>,
    pub s: u32,
    meets: BTreeSet<(usize, usize)>,
}

impl MonomialAlgebra {
    pub fn new(entries: Vec<(String, u32)>, s: u32, meets: BTreeSet<(usize, usize)>) -> Self {
        assert!(s >= 1);
        MonomialAlgebra { entries, s, meets }
    }

    /// All-pairs-meet intersection data (coordinate divisors in one chart).
    pub fn with_full_intersections(entries: Vec<(String, u32)>, s: u32) -> Self {
        let mut meets = BTreeSet::new();
        for i in 0..entries.len() {
            for j in i + 1..entries.len() {
                meets.insert((i, j));
            }
        }
        MonomialAlgebra::new(entries, s, meets)
    }

    fn pair_meets(&self, i: usize, j: usize) -> bool {
        let key = (i.min(j), i.max(j));
        self.meets.contains(&key)
    }

    fn subset_intersects(&self, subset: &[usize]) -> bool {
        for (a, i) in subset.iter().enumerate() {
            for j in &subset[a + 1..] {
                if !self.pair_meets(*i, *j) {
                    return false;
                }
            }
        }
        true
    }

    pub fn exponent_of(&self, name: &str) -> Option<u32> {
        self.entries
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, h)| *h)
    }

    pub fn is_resolved(&self) -> bool {
        self.next_center().is_none()
    }

    /// The smallest intersecting subset with exponent sum >= s, ties broken
    /// by birth order.
    fn next_center(&self) -> Option<Vec<usize>> {
        let n = self.entries.len();
        for size in 1..=n {
            let mut best: Option<Vec<usize>> = None;
            let mut subset = Vec::new();
            subsets_of_size(n, size, 0, &mut subset, &mut |s: &[usize]| {
                if best.is_some() {
                    return;
                }
                let total: u32 = s.iter().map(|&i| self.entries[i].1).sum();
                if total >= self.s && self.subset_intersects(s) {
                    best = Some(s.to_vec());
                }
            });
            if best.is_some() {
                return best;
            }
        }
        None
    }

    /// Controlled transform along the blow-up at the intersection of the
    /// chosen divisors. A singleton blow-up is an isomorphism downstairs and
    /// just lowers its own exponent by s; a larger center spawns a fresh
    /// divisor with exponent sum - s, the members keep their exponents as
    /// strict transforms but stop meeting each other.
    pub fn apply_combinatorial(&mut self, subset: &[usize], fresh_name: &str) {
        if subset.len() == 1 {
            let i = subset[0];
            assert!(self.entries[i].1 >= self.s, "center below the weight");
            self.entries[i].1 -= self.s;
            return;
        }
        let total: u32 = subset.iter().map(|&i| self.entries[i].1).sum();
        let fresh = self.entries.len();
        self.entries.push((fresh_name.to_string(), total - self.s));
        // the new divisor meets the members and everything that met them all
        for &i in subset {
            self.meets.insert((i.min(fresh), i.max(fresh)));
        }
        for other in 0..fresh {
            if subset.contains(&other) {
                continue;
            }
            if subset.iter().all(|&i| self.pair_meets(other, i)) {
                self.meets.insert((other.min(fresh), other.max(fresh)));
            }
        }
        for (a, &i) in subset.iter().enumerate() {
            for &j in &subset[a + 1..] {
                self.meets.remove(&(i.min(j), i.max(j)));
            }
        }
    }
}

fn subsets_of_size(
    n: usize,
    size: usize,
    from: usize,
    cur: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if cur.len() == size {
        f(cur);
        return;
    }
    for i in from..n {
        cur.push(i);
        subsets_of_size(n, size, i + 1, cur, f);
        cur.pop();
    }
}

impl fmt::Display for MonomialAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .filter(|(_, h)| *h > 0)
            .map(|(n, h)| format!("{n}^{h}"))
            .collect();
        if parts.is_empty() {
            write!(f, "(1)W^{}", self.s)
        } else {
            write!(f, "{}W^{}", parts.join("*"), self.s)
        }
    }
}

/// The deterministic greedy combinatorial resolution: repeatedly blow up the
/// smallest intersecting subset with exponent sum >= s until none remains.
/// Returns each chosen center as a list of divisor names. Termination is
/// enforced by an explicit per-step bound check.
pub fn resolve_monomial(m: &MonomialAlgebra) -> Vec<Vec<String>> {
    let mut state = m.clone();
    let mut centers = Vec::new();
    let initial: u64 =
        state.entries.iter().map(|(_, h)| *h as u64).sum::<u64>() + state.entries.len() as u64;
    let bound = (initial + 2) * (initial + 2);
    let mut fresh = state.entries.len();
    let mut steps: u64 = 0;
    while let Some(subset) = state.next_center() {
        steps += 1;
        assert!(steps <= bound, "combinatorial resolution exceeded its bound");
        if subset.len() > 1 {
            // smaller subsets were preferred, so every member is below s and
            // the fresh exponent strictly drops under the subset minimum
            let total: u32 = subset.iter().map(|&i| state.entries[i].1).sum();
            let min = subset.iter().map(|&i| state.entries[i].1).min().unwrap();
            assert!(total - state.s < min.max(1), "measure failed to decrease");
        }
        centers.push(
            subset
                .iter()
                .map(|&i| state.entries[i].0.clone())
                .collect(),
        );
        fresh += 1;
        state.apply_combinatorial(&subset, &format!("E{fresh}"));
    }
    centers
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elim::monic_form;
    use crate::field::FieldCtx;
    use crate::parse::parse_poly;
    use crate::poly::RingCtx;
    use crate::rees::{ReesAlgebra, WeightedGenerator};
    use std::sync::Arc;

    fn ring(vars: &[&str]) -> Arc<RingCtx> {
        RingCtx::new(
            FieldCtx::new(2, 1).unwrap(),
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
    fn slopes() {
        let r = ring(&["Z", "X", "Y"]);
        let down = r.without_var("Z");

        // at the origin, before any divisor exists: 5/2
        let f = parse_poly("Z^2+Y^7+X^4*Y", &r).unwrap();
        let mf = monic_form(&f, "Z").unwrap();
        let origin = vec![r.field.zero(); 3];
        assert_eq!(point_slope(&mf, &origin), Slope::finite(5, 2));

        // first chart: 3/2 along the exceptional Y
        let f1 = parse_poly("Z^2+Y^5+X^4*Y^3", &r).unwrap();
        let mf1 = monic_form(&f1, "Z").unwrap();
        let e1 = alg(&down, &[("Y^5+X^4*Y^3", 1)]);
        assert_eq!(divisor_slope(&mf1, &e1, "Y"), Slope::finite(3, 2));

        // all coefficients zero: infinite
        let fz = parse_poly("Z^2", &r).unwrap();
        let mfz = monic_form(&fz, "Z").unwrap();
        let empty = ReesAlgebra::empty(down.clone());
        assert_eq!(divisor_slope(&mfz, &empty, "Y"), Slope::infinite());
    }

    #[test]
    fn condition_c_examples() {
        let r = ring(&["Z", "X", "Y"]);
        let f1 = parse_poly("Z^2+Y^5+X^4*Y^3", &r).unwrap();
        assert!(condition_c(&monic_form(&f1, "Z").unwrap(), "Y"));

        let r4 = ring(&["T", "X", "Y", "Z"]);
        let f = parse_poly("T^2+X*Y*Z", &r4).unwrap();
        assert!(condition_c(&monic_form(&f, "T").unwrap(), "X"));

        let g = parse_poly("Z^2+Z*X+Y", &r).unwrap();
        assert!(!condition_c(&monic_form(&g, "Z").unwrap(), "Y"));
    }

    #[test]
    fn cleaning() {
        let r = ring(&["Z", "X1", "Y"]);
        let f = parse_poly("Z^2+Y^6*X1^2+Y^6*X1^3+Y^6*X1^4+Y^6*X1^5", &r).unwrap();
        let (cleaned, t) = clean_pe_powers(&monic_form(&f, "Z").unwrap()).unwrap();
        assert_eq!(
            cleaned.reconstruct(),
            parse_poly("Z^2+Y^6*X1^3+Y^6*X1^5", &r).unwrap()
        );
        assert_eq!(t, parse_poly("Y^3*X1+Y^3*X1^2", &r).unwrap());

        let g = parse_poly("Z^2+X1^6+X1^7", &r).unwrap();
        let (cleaned, t) = clean_pe_powers(&monic_form(&g, "Z").unwrap()).unwrap();
        assert_eq!(cleaned.reconstruct(), parse_poly("Z^2+X1^7", &r).unwrap());
        assert_eq!(t, parse_poly("X1^3", &r).unwrap());

        let h = parse_poly("Z^2+X1^7", &r).unwrap();
        let (cleaned, t) = clean_pe_powers(&monic_form(&h, "Z").unwrap()).unwrap();
        assert_eq!(cleaned.reconstruct(), h);
        assert!(t.is_zero());
    }

    #[test]
    fn strong_exponents_on_paper_charts() {
        let r = ring(&["Z", "X", "Y"]);
        let down = r.without_var("Z");

        // Hauser chart 1: h = 3 along Y at s = 2
        let f1 = parse_poly("Z^2+Y^5+X^4*Y^3", &r).unwrap();
        let mf1 = monic_form(&f1, "Z").unwrap();
        let e1 = alg(&down, &[("Y^5+X^4*Y^3", 1)]);
        assert_eq!(strong_exponent(&mf1, &e1, "Y", 2, Some(6)).unwrap(), 3);

        // T^2+XYZ chart 1: h = 1 along X
        let r4 = ring(&["T", "X", "Y", "Z"]);
        let down4 = r4.without_var("T");
        let f = parse_poly("T^2+X*Y*Z", &r4).unwrap();
        let mf = monic_form(&f, "T").unwrap();
        let e = alg(&down4, &[("X*Y", 1), ("X*Z", 1)]);
        assert_eq!(strong_exponent(&mf, &e, "X", 2, Some(2)).unwrap(), 1);

        // condition (C) failing forces h = 0
        let bad = parse_poly("Z^2+Z*X+Y", &r).unwrap();
        let mfb = monic_form(&bad, "Z").unwrap();
        let empty = ReesAlgebra::empty(down.clone());
        assert_eq!(strong_exponent(&mfb, &empty, "Y", 2, None).unwrap(), 0);
    }

    #[test]
    fn combinatorial_resolution_sequences() {
        // X^3 Y^6 W^2 resolves by one transformation at X and three at Y
        let m = MonomialAlgebra::with_full_intersections(
            vec![("X".into(), 3), ("Y".into(), 6)],
            2,
        );
        let centers = resolve_monomial(&m);
        let printed: Vec<String> = centers.iter().map(|c| c.join(",")).collect();
        assert_eq!(printed, vec!["X", "Y", "Y", "Y"]);

        // X Y W^2 needs the single center <X, Y>
        let m2 = MonomialAlgebra::with_full_intersections(
            vec![("X".into(), 1), ("Y".into(), 1)],
            2,
        );
        let centers2 = resolve_monomial(&m2);
        assert_eq!(centers2, vec![vec!["X".to_string(), "Y".to_string()]]);

        // X^1 W^2 is already resolved
        let m3 = MonomialAlgebra::with_full_intersections(vec![("X".into(), 1)], 2);
        assert!(resolve_monomial(&m3).is_empty());
    }

    #[test]
    fn resolution_respects_intersections() {
        // H2^3 H3^6 H4^7 with H2 and H4 disjoint: the leftover pair
        // H2 + H4 = 2 >= s never fires because the divisors do not meet.
        let mut meets = BTreeSet::new();
        meets.insert((0, 1));
        meets.insert((1, 2));
        let m = MonomialAlgebra::new(
            vec![("H2".into(), 3), ("H3".into(), 6), ("H4".into(), 7)],
            2,
            meets,
        );
        let centers = resolve_monomial(&m);
        let printed: Vec<String> = centers.iter().map(|c| c.join(",")).collect();
        assert_eq!(printed, vec!["H2", "H3", "H3", "H3", "H4", "H4", "H4"]);
    }
}
