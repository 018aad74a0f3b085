//! Weighted Rees algebras O_V[g_1 W^{n_1}, ..., g_s W^{n_s}] and their
//! differential structure.
//!
//! The singular locus of such an algebra is the set of points where every
//! generator has order at least its weight. Saturating the generator set
//! under Hasse derivatives (with weight drop |alpha|) produces the smallest
//! algebra closed under differential operators; it has the same singular
//! locus, and its degree-one part cuts that locus out as a plain ideal.

use crate::error::{Error, Result};
use crate::field::Fq;
use crate::poly::{enumerate_points, MultiIndex, Poly, RingCtx};
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// A generator g W^n of a weighted Rees algebra: g nonzero, n >= 1. The
/// polynomial is kept normalized (leading coefficient 1), so generator
/// comparison is scalar-insensitive.
#[derive(Clone, PartialEq, Debug)]
pub struct WeightedGenerator {
    pub poly: Poly,
    pub weight: u32,
}

impl WeightedGenerator {
    pub fn new(poly: Poly, weight: u32) -> WeightedGenerator {
        assert!(!poly.is_zero(), "zero generator");
        assert!(weight >= 1, "weight must be >= 1");
        WeightedGenerator {
            poly: poly.normalized(),
            weight,
        }
    }
}

impl fmt::Display for WeightedGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})W^{}", self.poly, self.weight)
    }
}

/// How far a Rees algebra has been closed under differential operators.
#[derive(Clone, PartialEq, Debug)]
pub enum DiffClosed {
    None,
    /// Closed under operators supported on the named transversal variable.
    Relative(String),
    Absolute,
}

#[derive(Clone, PartialEq, Debug)]
pub struct ReesAlgebra {
    pub ring: Arc<RingCtx>,
    gens: Vec<WeightedGenerator>,
    pub closed: DiffClosed,
    /// Marked transversal variable z, when one has been chosen.
    pub transversal: Option<String>,
}

/// The common zero set of all Hasse derivatives Delta^alpha(g), |alpha| < n,
/// over the generators; its points are exactly Sing(G).
#[derive(Clone, PartialEq, Debug)]
pub struct SingIdeal {
    pub ring: Arc<RingCtx>,
    pub gens: Vec<Poly>,
}

impl SingIdeal {
    pub fn contains_point(&self, pt: &[Fq]) -> bool {
        self.gens.iter().all(|g| self.ring.field.is_zero(g.eval(pt)))
    }

    /// All rational points of the zero set over the ring's own field.
    pub fn enumerate_zero_set(&self) -> Vec<Vec<Fq>> {
        enumerate_points(&self.ring.field, self.ring.nvars())
            .into_iter()
            .filter(|pt| self.contains_point(pt))
            .collect()
    }
}

/// All multi-indices over `nvars` variables with 1 <= |alpha| <= max.
fn multi_indices_up_to(nvars: usize, max: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; nvars];
    fn rec(cur: &mut Vec<u16>, var: usize, left: u32, out: &mut Vec<MultiIndex>) {
        if var == cur.len() {
            if cur.iter().any(|&e| e > 0) {
                out.push(MultiIndex(cur.clone()));
            }
            return;
        }
        for e in 0..=left {
            cur[var] = e as u16;
            rec(cur, var + 1, left - e, out);
        }
        cur[var] = 0;
    }
    rec(&mut cur, 0, max, &mut out);
    out
}

impl ReesAlgebra {
    pub fn new(ring: Arc<RingCtx>, gens: Vec<WeightedGenerator>) -> ReesAlgebra {
        let mut a = ReesAlgebra {
            ring,
            gens,
            closed: DiffClosed::None,
            transversal: None,
        };
        a.canonicalize();
        a
    }

    pub fn empty(ring: Arc<RingCtx>) -> ReesAlgebra {
        ReesAlgebra::new(ring, Vec::new())
    }

    pub fn with_transversal(mut self, z: &str) -> ReesAlgebra {
        assert!(self.ring.var_index(z).is_some());
        self.transversal = Some(z.to_string());
        self
    }

    pub fn gens(&self) -> &[WeightedGenerator] {
        &self.gens
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Sort generators canonically (weight, then polynomial order) and prune.
    fn canonicalize(&mut self) {
        for g in &self.gens {
            assert!(g.poly.ring() == &self.ring, "generator in wrong ring");
        }
        self.sort_gens();
        self.prune_in_place();
    }

    fn sort_gens(&mut self) {
        self.gens.sort_by(|a, b| {
            a.weight.cmp(&b.weight).then_with(|| {
                let ta: Vec<_> = a.poly.terms().map(|(m, c)| (m.clone(), *c)).collect();
                let tb: Vec<_> = b.poly.terms().map(|(m, c)| (m.clone(), *c)).collect();
                ta.cmp(&tb)
            })
        });
        self.gens.dedup_by(|a, b| a == b);
    }

    /// Redundancy pruning. A generator gW^n is dropped when some other
    /// generator g'W^{n'} already spans it: either g = h*g' with n' >= n, or
    /// more generally (g')^k divides g with k*n' >= n, since (g')^k W^{kn'}
    /// lies in the algebra. The scan repeats to a fixed point in canonical
    /// order, so the result is deterministic. The singular locus is
    /// unchanged by construction.
    fn prune_in_place(&mut self) {
        'outer: loop {
            for i in 0..self.gens.len() {
                for j in 0..self.gens.len() {
                    if i == j {
                        continue;
                    }
                    let g = &self.gens[i];
                    let other = &self.gens[j];
                    let k = g.weight.div_ceil(other.weight);
                    let power = other.poly.pow(k);
                    if g.poly.div_exact(&power).is_some() {
                        self.gens.remove(i);
                        continue 'outer;
                    }
                }
            }
            return;
        }
    }

    pub fn prune_redundant(&self) -> ReesAlgebra {
        let mut out = self.clone();
        out.canonicalize();
        out
    }

    /// Generator-set equality after pruning, generator-wise up to nonzero
    /// scalars (generators are stored normalized, so plain equality works).
    pub fn same_gens(&self, other: &ReesAlgebra) -> bool {
        let a = self.prune_redundant();
        let b = other.prune_redundant();
        a.gens == b.gens
    }

    fn close_under(&self, indices_for: impl Fn(u32) -> Vec<MultiIndex>, flag: DiffClosed) -> ReesAlgebra {
        let mut seen: BTreeSet<(Vec<(MultiIndex, Fq)>, u32)> = BTreeSet::new();
        let key = |g: &WeightedGenerator| {
            (
                g.poly.terms().map(|(m, c)| (m.clone(), *c)).collect::<Vec<_>>(),
                g.weight,
            )
        };
        let mut work: Vec<WeightedGenerator> = self.gens.clone();
        let mut out: Vec<WeightedGenerator> = Vec::new();
        while let Some(g) = work.pop() {
            if !seen.insert(key(&g)) {
                continue;
            }
            if g.weight > 1 {
                for alpha in indices_for(g.weight - 1) {
                    let d = g.poly.hasse(&alpha);
                    if d.is_zero() {
                        continue;
                    }
                    let w = g.weight - alpha.degree();
                    work.push(WeightedGenerator::new(d, w));
                }
            }
            out.push(g);
        }
        let mut alg = ReesAlgebra::new(self.ring.clone(), out);
        alg.closed = flag;
        alg.transversal = self.transversal.clone();
        alg
    }

    /// The differential closure G(G): adds Delta^alpha(g) W^{n-|alpha|} for
    /// every generator gW^n and every 0 < |alpha| < n, dropping zeros.
    /// Idempotent, and Sing is unchanged.
    pub fn diff_closure(&self) -> ReesAlgebra {
        if self.closed == DiffClosed::Absolute {
            return self.clone();
        }
        let nvars = self.ring.nvars();
        self.close_under(|max| multi_indices_up_to(nvars, max), DiffClosed::Absolute)
    }

    /// Closure using only multi-indices supported on the variable z.
    pub fn relative_diff_closure(&self, z: &str) -> ReesAlgebra {
        if self.closed == DiffClosed::Absolute || self.closed == DiffClosed::Relative(z.to_string())
        {
            return self.clone();
        }
        let zi = self
            .ring
            .var_index(z)
            .unwrap_or_else(|| panic!("no variable {z}"));
        let nvars = self.ring.nvars();
        let mut alg = self.close_under(
            |max| (1..=max).map(|e| MultiIndex::unit(nvars, zi, e as u16)).collect(),
            DiffClosed::Relative(z.to_string()),
        );
        alg.transversal = Some(z.to_string());
        alg
    }

    /// Generators of the ideal cutting out Sing(G): every Delta^alpha(g) with
    /// |alpha| <= n-1 (including g itself).
    pub fn sing_ideal(&self) -> SingIdeal {
        let mut gens: Vec<Poly> = Vec::new();
        let nvars = self.ring.nvars();
        for g in &self.gens {
            let mut push = |p: Poly| {
                if !p.is_zero() && !gens.contains(&p) {
                    gens.push(p);
                }
            };
            push(g.poly.clone());
            if g.weight > 1 {
                for alpha in multi_indices_up_to(nvars, g.weight - 1) {
                    push(g.poly.hasse(&alpha).normalized());
                }
            }
        }
        SingIdeal {
            ring: self.ring.clone(),
            gens,
        }
    }

    /// Direct restatement of the order condition: pt is singular iff every
    /// generator has order >= its weight there.
    pub fn is_singular_at(&self, pt: &[Fq]) -> bool {
        self.gens.iter().all(|g| {
            g.poly
                .order_at_point(pt)
                .map_or(true, |o| o >= g.weight)
        })
    }

    /// Membership test for strong monomial contact: G inside <z>W (.) M W^s,
    /// decided per divisor by the valuative criterion. Writing a generator
    /// gW^n as sum_j c_j(y) z^j, terms with j >= n are absorbed by <z>^n W^n
    /// and every other term must satisfy s*ord_{y_i}(c_j) >= (n-j)*h_i.
    pub fn contact_membership(&self, z: &str, monomial: &[(String, u32)], s: u32) -> Result<bool> {
        let zi = self
            .ring
            .var_index(z)
            .unwrap_or_else(|| panic!("no variable {z}"));
        for (v, _) in monomial {
            if v == z {
                return Err(Error::InvalidDivisor { var: v.clone() });
            }
        }
        for g in &self.gens {
            let coeffs = g.poly.coeffs_in_var(zi);
            for (j, c) in coeffs {
                if (j as u32) >= g.weight {
                    continue;
                }
                for (v, h) in monomial {
                    if *h == 0 {
                        continue;
                    }
                    let vi = self
                        .ring
                        .var_index(v)
                        .ok_or_else(|| Error::UnknownDivisorVar { name: v.clone() })?;
                    let ord = c.ord_var(vi).expect("nonzero coefficient");
                    if (s as u64) * (ord as u64) < ((g.weight - j as u32) as u64) * (*h as u64) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Apply a ring map to every generator (weights unchanged).
    pub fn map_ring(&self, target: &Arc<RingCtx>, images: &[Poly]) -> ReesAlgebra {
        let gens = self
            .gens
            .iter()
            .map(|g| WeightedGenerator::new(g.poly.map_ring(target, images), g.weight))
            .collect();
        let mut alg = ReesAlgebra::new(target.clone(), gens);
        alg.transversal = self
            .transversal
            .as_ref()
            .filter(|z| target.var_index(z).is_some())
            .cloned();
        alg
    }

    /// Embed prime-field generators into an extension for point enumeration.
    pub fn embed(&self, target: &Arc<RingCtx>) -> ReesAlgebra {
        let gens = self
            .gens
            .iter()
            .map(|g| WeightedGenerator::new(g.poly.embed(target), g.weight))
            .collect();
        let mut alg = ReesAlgebra::new(target.clone(), gens);
        alg.closed = self.closed.clone();
        alg.transversal = self.transversal.clone();
        alg
    }
}

impl fmt::Display for ReesAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "[0]");
        }
        let parts: Vec<String> = self.gens.iter().rev().map(|g| g.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use crate::parse::parse_poly;

    fn ring(p: u32, k: u32, vars: &[&str]) -> Arc<RingCtx> {
        RingCtx::new(
            FieldCtx::new(p, k).unwrap(),
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
    fn closure_of_hauser_algebra() {
        let r = ring(2, 1, &["Z", "X", "Y"]);
        let g = alg(&r, &[("Z^2+Y^7+X^4*Y", 2)]).diff_closure();
        let expected = alg(&r, &[("Z^2+Y^7+X^4*Y", 2), ("Y^6+X^4", 1)]);
        assert!(g.same_gens(&expected));
        // idempotent
        assert!(g.diff_closure().same_gens(&g));
    }

    #[test]
    fn closure_of_txyz_algebra() {
        let r = ring(2, 1, &["T", "X", "Y", "Z"]);
        let g = alg(&r, &[("T^2+X*Y*Z", 2)]).diff_closure();
        let expected = alg(
            &r,
            &[("T^2+X*Y*Z", 2), ("X*Y", 1), ("X*Z", 1), ("Y*Z", 1)],
        );
        assert!(g.same_gens(&expected));
    }

    #[test]
    fn closure_weight_one_is_identity() {
        let r = ring(2, 1, &["x", "y"]);
        let g = alg(&r, &[("x", 1)]);
        assert!(g.diff_closure().same_gens(&g));
    }

    #[test]
    fn relative_closure() {
        let r = ring(2, 1, &["Z", "X", "Y"]);
        let g = alg(&r, &[("Z^2+Y^7+X^4*Y", 2)]);
        // d/dZ kills everything in char 2
        assert!(g.relative_diff_closure("Z").same_gens(&g));

        let r3 = ring(3, 1, &["Z", "a1", "a2"]);
        let g3 = alg(&r3, &[("Z^2+a1*Z+a2", 2)]).relative_diff_closure("Z");
        let expected = alg(&r3, &[("Z^2+a1*Z+a2", 2), ("2*Z+a1", 1)]);
        assert!(g3.same_gens(&expected));

        let triv = alg(&r, &[("Y", 1)]);
        assert!(triv.relative_diff_closure("Z").same_gens(&triv));
    }

    #[test]
    fn sing_ideal_of_hauser_over_f4() {
        let r = ring(2, 1, &["Z", "X", "Y"]);
        let g = alg(&r, &[("Z^2+Y^7+X^4*Y", 2), ("Y^6+X^4", 1)]);
        let r4 = ring(2, 2, &["Z", "X", "Y"]);
        let sing = g.embed(&r4).sing_ideal();
        let zero_set = sing.enumerate_zero_set();
        // the cusp (0, t^3, t^2) over F4
        let f4 = &r4.field;
        let mut expected: Vec<Vec<Fq>> = f4
            .elements()
            .into_iter()
            .map(|t| vec![f4.zero(), f4.pow(t, 3), f4.pow(t, 2)])
            .collect();
        expected.sort();
        expected.dedup();
        let mut got = zero_set.clone();
        got.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn sing_ideal_of_axes() {
        let r = ring(2, 1, &["T", "X", "Y", "Z"]);
        let g = alg(
            &r,
            &[("T^2+X*Y*Z", 2), ("X*Y", 1), ("X*Z", 1), ("Y*Z", 1)],
        );
        let sing = g.sing_ideal();
        for pt in sing.enumerate_zero_set() {
            // T = 0 and at most one of X, Y, Z nonzero
            assert!(r.field.is_zero(pt[0]));
            let nonzero = pt[1..].iter().filter(|c| !r.field.is_zero(**c)).count();
            assert!(nonzero <= 1);
        }
        let triv = alg(&r, &[("Z", 1)]);
        assert_eq!(triv.sing_ideal().gens.len(), 1);
    }

    #[test]
    fn pruning_rules() {
        let r = ring(2, 1, &["X", "Y", "Z"]);
        // multiple rule: XYZ = Z * XY
        let a = alg(&r, &[("X*Y*Z", 1), ("X*Y", 1)]);
        assert_eq!(a.gens().len(), 1);
        assert_eq!(a.gens()[0].poly.to_string(), "X*Y");

        // a single generator stays
        let b = alg(&r, &[("X*Y+Z^2", 2)]);
        assert_eq!(b.gens().len(), 1);

        // power rule: X^2 W^2 is spanned by (X W)^2
        let c = alg(&r, &[("X^2", 2), ("X", 1)]);
        assert_eq!(c.gens().len(), 1);
        assert_eq!(c.gens()[0].weight, 1);
    }

    #[test]
    fn contact_membership_hauser_chart1() {
        let r = ring(2, 1, &["Z", "X", "Y"]);
        let g1 = alg(&r, &[("Z^2+Y^5+X^4*Y^3", 2), ("Y^5+X^4*Y^3", 1)])
            .relative_diff_closure("Z");
        let m3 = vec![("Y".to_string(), 3u32)];
        let m4 = vec![("Y".to_string(), 4u32)];
        assert!(g1.contact_membership("Z", &m3, 2).unwrap());
        assert!(!g1.contact_membership("Z", &m4, 2).unwrap());

        // a pure power of z imposes nothing
        let pure = alg(&r, &[("Z^2", 2)]);
        assert!(pure
            .contact_membership("Z", &[("Y".to_string(), 100)], 2)
            .unwrap());

        assert!(matches!(
            g1.contact_membership("Z", &[("Z".to_string(), 1)], 2),
            Err(Error::InvalidDivisor { .. })
        ));
    }
}
