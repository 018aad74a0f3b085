//! Exact sparse multivariate polynomials over GF(p^k), together with the
//! divided-power (Hasse) differential operators that replace d/dx in
//! positive characteristic.
//!
//! Delta^alpha reads off the T^alpha coefficient of f(x + T); on a monomial
//! x^beta it acts as binom(beta, alpha) x^(beta-alpha), with the binomial
//! reduced mod p by Lucas' theorem. This keeps each derivative O(#terms).

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// An exponent vector over the ring's variables. Ordered by graded lex:
/// total degree first, then lexicographically with earlier variables more
/// significant. This order fixes canonical printing and generator sorting.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiIndex(pub Vec<u16>);

impl MultiIndex {
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn unit(nvars: usize, var: usize, e: u16) -> MultiIndex {
        let mut v = vec![0u16; nvars];
        v[var] = e;
        MultiIndex(v)
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// The ambient polynomial ring: a coefficient field plus an ordered list of
/// variable names. The order is fixed and drives all canonical output.
#[derive(Clone, PartialEq, Debug)]
pub struct RingCtx {
    pub field: FieldCtx,
    pub vars: Vec<String>,
}

impl RingCtx {
    pub fn new(field: FieldCtx, vars: Vec<String>) -> Arc<RingCtx> {
        let mut seen = std::collections::BTreeSet::new();
        for v in &vars {
            assert!(seen.insert(v.clone()), "duplicate variable name {v}");
        }
        Arc::new(RingCtx { field, vars })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// The same ring with one variable removed (for elimination).
    pub fn without_var(&self, name: &str) -> Arc<RingCtx> {
        let vars = self
            .vars
            .iter()
            .filter(|v| v.as_str() != name)
            .cloned()
            .collect();
        RingCtx::new(self.field.clone(), vars)
    }
}

/// binom(n, k) mod p by Lucas: the product of digit-wise binomials in base p.
pub fn binom_mod_p(n: u16, k: u16, p: u32) -> u32 {
    if k > n {
        return 0;
    }
    let (mut n, mut k) = (n as u32, k as u32);
    let mut acc = 1u32;
    while k > 0 || n > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        // digits are < 5, so the small binomial fits easily
        let mut b = 1u32;
        for i in 0..kd {
            b = b * (nd - i) / (i + 1);
        }
        acc = acc * (b % p) % p;
        n /= p;
        k /= p;
    }
    acc
}

/// A sparse polynomial in canonical form: no zero coefficients are stored,
/// so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly {
    ring: Arc<RingCtx>,
    terms: BTreeMap<MultiIndex, Fq>,
}

impl Poly {
    pub fn zero(ring: Arc<RingCtx>) -> Poly {
        Poly {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: Arc<RingCtx>, c: Fq) -> Poly {
        let mut p = Poly::zero(ring);
        if !p.field().is_zero(c) {
            let n = p.ring.nvars();
            p.terms.insert(MultiIndex(vec![0; n]), c);
        }
        p
    }

    pub fn var(ring: Arc<RingCtx>, idx: usize) -> Poly {
        let one = ring.field.one();
        let m = MultiIndex::unit(ring.nvars(), idx, 1);
        Poly::monomial(ring, m, one)
    }

    pub fn var_named(ring: &Arc<RingCtx>, name: &str) -> Poly {
        let idx = ring
            .var_index(name)
            .unwrap_or_else(|| panic!("no variable {name} in ring"));
        Poly::var(ring.clone(), idx)
    }

    pub fn monomial(ring: Arc<RingCtx>, exps: MultiIndex, c: Fq) -> Poly {
        let mut p = Poly::zero(ring);
        assert_eq!(exps.0.len(), p.ring.nvars());
        if !p.field().is_zero(c) {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<RingCtx> {
        &self.ring
    }

    pub fn field(&self) -> &FieldCtx {
        &self.ring.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Fq)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; None for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    fn add_term(&mut self, exps: MultiIndex, c: Fq) {
        let f = self.ring.field.clone();
        if f.is_zero(c) {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = f.add(*e.get(), c);
                if f.is_zero(s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert!(self.ring == other.ring, "ring mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), *c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        let f = self.field().clone();
        let mut out = Poly::zero(self.ring.clone());
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), f.neg(*c));
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert!(self.ring == other.ring, "ring mismatch");
        let f = self.field().clone();
        let mut out = Poly::zero(self.ring.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let exps: Vec<u16> = ma
                    .0
                    .iter()
                    .zip(&mb.0)
                    .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
                    .collect();
                out.add_term(MultiIndex(exps), f.mul(*ca, *cb));
            }
        }
        out
    }

    pub fn scale(&self, c: Fq) -> Poly {
        let f = self.field().clone();
        let mut out = Poly::zero(self.ring.clone());
        for (m, a) in &self.terms {
            let v = f.mul(*a, c);
            if !f.is_zero(v) {
                out.terms.insert(m.clone(), v);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(self.ring.clone(), self.field().one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Divided-power derivative: the T^alpha coefficient of f(x + T).
    pub fn hasse(&self, alpha: &MultiIndex) -> Poly {
        assert_eq!(alpha.0.len(), self.ring.nvars());
        let f = self.field().clone();
        let p = f.p;
        let mut out = Poly::zero(self.ring.clone());
        'term: for (beta, c) in &self.terms {
            let mut scalar = 1u32;
            let mut exps = Vec::with_capacity(beta.0.len());
            for (&b, &a) in beta.0.iter().zip(&alpha.0) {
                if b < a {
                    continue 'term;
                }
                scalar = scalar * binom_mod_p(b, a, p) % p;
                exps.push(b - a);
            }
            if scalar == 0 {
                continue;
            }
            out.add_term(MultiIndex(exps), f.mul(*c, f.from_int(scalar as i64)));
        }
        out
    }

    /// Hasse derivative in a single variable.
    pub fn hasse_var(&self, var: usize, order: u16) -> Poly {
        self.hasse(&MultiIndex::unit(self.ring.nvars(), var, order))
    }

    pub fn eval(&self, point: &[Fq]) -> Fq {
        assert_eq!(point.len(), self.ring.nvars());
        let f = self.field().clone();
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = *c;
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = f.mul(t, f.pow(point[i], e as u64));
                }
            }
            acc = f.add(acc, t);
        }
        acc
    }

    /// f(x + c): translation by a point.
    pub fn translate(&self, point: &[Fq]) -> Poly {
        assert_eq!(point.len(), self.ring.nvars());
        let ring = self.ring.clone();
        let images: Vec<Poly> = (0..ring.nvars())
            .map(|i| {
                let v = Poly::var(ring.clone(), i);
                v.add(&Poly::constant(ring.clone(), point[i]))
            })
            .collect();
        self.map_ring(&ring, &images)
    }

    /// Order at a point: minimal total degree after translating the point to
    /// the origin. None encodes infinity (the zero polynomial).
    pub fn order_at_point(&self, point: &[Fq]) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let moved = if point.iter().all(|&c| self.field().is_zero(c)) {
            self.clone()
        } else {
            self.translate(point)
        };
        moved.terms.keys().map(|m| m.degree()).min()
    }

    /// Order along the coordinate subspace cut out by the given variables:
    /// the minimum over terms of the exponent sum on those variables.
    pub fn order_along(&self, vars: &[usize]) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        self.terms
            .keys()
            .map(|m| vars.iter().map(|&v| m.0[v] as u32).sum())
            .min()
    }

    /// Order in a single variable (minimal exponent over all terms).
    pub fn ord_var(&self, var: usize) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        self.terms.keys().map(|m| m.0[var] as u32).min()
    }

    /// Maximal exponent of a variable (its degree in that variable).
    pub fn deg_var(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var] as u32).max().unwrap_or(0)
    }

    /// Exact division by var^n. Failure signals a non-permissible center.
    pub fn div_var_power(&self, var: usize, n: u16) -> Result<Poly> {
        if n == 0 {
            return Ok(self.clone());
        }
        let mut out = Poly::zero(self.ring.clone());
        for (m, c) in &self.terms {
            if m.0[var] < n {
                return Err(Error::NotDivisible {
                    poly: self.to_string(),
                    var: self.ring.vars[var].clone(),
                    power: n as u32,
                });
            }
            let mut e = m.0.clone();
            e[var] -= n;
            out.terms.insert(MultiIndex(e), *c);
        }
        Ok(out)
    }

    /// Attempt exact polynomial division; None when the divisor does not
    /// divide. Single-divisor long division in the monomial order decides
    /// divisibility over a field.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(self.ring == d.ring, "ring mismatch");
        if self.is_zero() {
            return Some(self.clone());
        }
        if d.is_zero() {
            return None;
        }
        let f = self.field().clone();
        let (dm, dc) = d.terms.iter().next_back().map(|(m, c)| (m.clone(), *c))?;
        let dinv = f.inv(dc);
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.ring.clone());
        while !rem.is_zero() {
            let (rm, rc) = rem.terms.iter().next_back().map(|(m, c)| (m.clone(), *c))?;
            let mut q = Vec::with_capacity(rm.0.len());
            for (&a, &b) in rm.0.iter().zip(&dm.0) {
                if a < b {
                    return None;
                }
                q.push(a - b);
            }
            let qc = f.mul(rc, dinv);
            let qt = Poly::monomial(self.ring.clone(), MultiIndex(q), qc);
            quot = quot.add(&qt);
            rem = rem.sub(&qt.mul(d));
        }
        Some(quot)
    }

    /// Split off the maximal p^e-th power part: returns (root, rest) with
    /// f = root^(p^e) + rest, where root^(p^e) collects exactly the terms
    /// whose exponents are all divisible by p^e. Coefficient roots are the
    /// unique p^e-th roots in the field.
    pub fn pe_split(&self, e: u32) -> (Poly, Poly) {
        assert!(e >= 1);
        let f = self.field().clone();
        let q = f.p.pow(e) as u16;
        let mut root = Poly::zero(self.ring.clone());
        let mut rest = Poly::zero(self.ring.clone());
        for (m, c) in &self.terms {
            if m.0.iter().all(|&x| x % q == 0) {
                let exps: Vec<u16> = m.0.iter().map(|&x| x / q).collect();
                root.terms.insert(MultiIndex(exps), f.pe_root(*c, e));
            } else {
                rest.terms.insert(m.clone(), *c);
            }
        }
        (root, rest)
    }

    /// When f = g^(p^e) with e >= 1 maximal, returns (g, e).
    pub fn pe_power(&self) -> Option<(Poly, u32)> {
        if self.is_zero() {
            return None;
        }
        let (root, rest) = self.pe_split(1);
        if !rest.is_zero() {
            return None;
        }
        match root.pe_power() {
            Some((g, e)) => Some((g, e + 1)),
            None => Some((root, 1)),
        }
    }

    /// Substitute within the same ring; variables absent from the map are
    /// fixed.
    pub fn substitute(&self, map: &BTreeMap<usize, Poly>) -> Poly {
        let ring = self.ring.clone();
        let images: Vec<Poly> = (0..ring.nvars())
            .map(|i| match map.get(&i) {
                Some(p) => {
                    assert!(p.ring == ring, "substitute image in wrong ring");
                    p.clone()
                }
                None => Poly::var(ring.clone(), i),
            })
            .collect();
        self.map_ring(&ring, &images)
    }

    /// General ring map: one image (in the target ring) per source variable.
    pub fn map_ring(&self, target: &Arc<RingCtx>, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.ring.nvars());
        let tf = target.field.clone();
        assert!(tf == self.ring.field, "coefficient field mismatch");
        let mut out = Poly::zero(target.clone());
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target.clone(), *c);
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(e as u32));
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Embed into a ring with the same variables over an extension of the
    /// prime field (only prime-field coefficients can be embedded).
    pub fn embed(&self, target: &Arc<RingCtx>) -> Poly {
        assert_eq!(self.ring.vars, target.vars);
        assert_eq!(self.ring.field.p, target.field.p);
        assert_eq!(self.ring.field.k, 1, "only prime-field data embeds");
        let mut out = Poly::zero(target.clone());
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), *c);
        }
        out
    }

    pub fn homogeneous_component(&self, d: u32) -> Poly {
        let mut out = Poly::zero(self.ring.clone());
        for (m, c) in &self.terms {
            if m.degree() == d {
                out.terms.insert(m.clone(), *c);
            }
        }
        out
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Coefficients of powers of one variable: j -> coefficient of var^j,
    /// returned in the same ring with that variable's exponent zeroed.
    pub fn coeffs_in_var(&self, var: usize) -> BTreeMap<u16, Poly> {
        let mut out: BTreeMap<u16, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let j = m.0[var];
            let mut e = m.0.clone();
            e[var] = 0;
            out.entry(j)
                .or_insert_with(|| Poly::zero(self.ring.clone()))
                .add_term(MultiIndex(e), *c);
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    pub fn involves_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    /// Restriction to the coordinate subspace {vars = 0}: drops every term
    /// that involves one of the given variables.
    pub fn restrict_to_zero(&self, vars: &[usize]) -> Poly {
        let mut out = Poly::zero(self.ring.clone());
        for (m, c) in &self.terms {
            if vars.iter().all(|&v| m.0[v] == 0) {
                out.terms.insert(m.clone(), *c);
            }
        }
        out
    }

    /// Leading (canonically largest) coefficient.
    pub fn leading_coeff(&self) -> Option<Fq> {
        self.terms.values().next_back().copied()
    }

    /// Scaled so the leading coefficient is 1.
    pub fn normalized(&self) -> Poly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) => self.scale(self.field().inv(c)),
        }
    }

    /// For a homogeneous linear form, its coefficient vector.
    pub fn linear_coeffs(&self) -> Option<Vec<Fq>> {
        if self.is_zero() || !self.is_homogeneous() || self.total_degree() != Some(1) {
            return None;
        }
        let mut out = vec![self.field().zero(); self.ring.nvars()];
        for (m, c) in &self.terms {
            let var = m.0.iter().position(|&e| e == 1)?;
            out[var] = *c;
        }
        Some(out)
    }
}

impl fmt::Display for Poly {
    /// Canonical form: terms in descending graded-lex order, coefficients as
    /// integers in [0, p) over the prime field, variables in declared order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let fld = self.field();
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let coeff = fld.format(*c);
            let mut vars = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => vars.push(self.ring.vars[i].clone()),
                    _ => vars.push(format!("{}^{}", self.ring.vars[i], e)),
                }
            }
            if vars.is_empty() {
                write!(f, "{coeff}")?;
            } else if coeff == "1" {
                write!(f, "{}", vars.join("*"))?;
            } else if fld.k == 1 {
                write!(f, "{}*{}", coeff, vars.join("*"))?;
            } else {
                write!(f, "({})*{}", coeff, vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Enumerate all points of GF(p^k)^n in a fixed order.
pub fn enumerate_points(field: &FieldCtx, n: usize) -> Vec<Vec<Fq>> {
    let elems = field.elements();
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * elems.len());
        for prefix in &out {
            for &e in &elems {
                let mut p = prefix.clone();
                p.push(e);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn ring2(vars: &[&str]) -> Arc<RingCtx> {
        RingCtx::new(
            FieldCtx::new(2, 1).unwrap(),
            vars.iter().map(|s| s.to_string()).collect(),
        )
    }

    #[test]
    fn hasse_hauser_generator() {
        // d/dY of Z^2 + Y^7 + X^4*Y in char 2 is Y^6 + X^4
        let r = ring2(&["Z", "X", "Y"]);
        let f = parse_poly("Z^2+Y^7+X^4*Y", &r).unwrap();
        let d = f.hasse_var(2, 1);
        assert_eq!(d, parse_poly("Y^6+X^4", &r).unwrap());
        // the zero multi-index is the identity
        assert_eq!(f.hasse(&MultiIndex(vec![0, 0, 0])), f);
    }

    #[test]
    fn hasse_cubic_char5() {
        // Delta^(2) of x^3 over F5 reads the t^2 coefficient of (x+t)^3 = 3x
        let r = RingCtx::new(FieldCtx::new(5, 1).unwrap(), vec!["x".into()]);
        let f = parse_poly("x^3", &r).unwrap();
        assert_eq!(f.hasse_var(0, 2), parse_poly("3*x", &r).unwrap());
    }

    #[test]
    fn orders() {
        let r = ring2(&["Z", "X", "Y"]);
        let f = parse_poly("Z^2+Y^7+X^4*Y", &r).unwrap();
        let origin = vec![r.field.zero(); 3];
        assert_eq!(f.order_at_point(&origin), Some(2));
        assert_eq!(Poly::zero(r.clone()).order_at_point(&origin), None);

        // Y^6+X^4 = (Y^3+X^2)^2 and the root vanishes simply at (1,1), so
        // the order there is 2: substitute X+1, Y+1 and expand.
        let g = parse_poly("Y^6+X^4", &r).unwrap();
        let one = r.field.one();
        let pt = vec![r.field.zero(), one, one];
        assert_eq!(
            g.translate(&pt),
            parse_poly("Y^6+Y^4+Y^2+X^4", &r).unwrap()
        );
        assert_eq!(g.order_at_point(&pt), Some(2));

        assert_eq!(f.order_along(&[0, 1, 2]), Some(2));
        let h = parse_poly("X^4*Y^5+X^6*Y^3", &r).unwrap();
        assert_eq!(h.order_along(&[1, 2]), Some(9));
        let c = parse_poly("1", &r).unwrap();
        assert_eq!(c.order_along(&[1]), Some(0));
    }

    #[test]
    fn exact_division_by_variable_power() {
        let r = ring2(&["Z", "X", "Y"]);
        let f = parse_poly("Z^2*Y^2+Y^7+X^4*Y^5", &r).unwrap();
        let q = f.div_var_power(2, 2).unwrap();
        assert_eq!(q, parse_poly("Z^2+Y^5+X^4*Y^3", &r).unwrap());
        assert_eq!(f.div_var_power(2, 0).unwrap(), f);
        let bad = parse_poly("Z^2+Y", &r).unwrap();
        assert!(bad.div_var_power(2, 1).is_err());
    }

    #[test]
    fn pe_split_cleaning_data() {
        let r = ring2(&["Z", "X1", "Y"]);
        let f = parse_poly("Y^6*X1^2+Y^6*X1^3+Y^6*X1^4+Y^6*X1^5", &r).unwrap();
        let (root, rest) = f.pe_split(1);
        assert_eq!(root, parse_poly("Y^3*X1+Y^3*X1^2", &r).unwrap());
        assert_eq!(rest, parse_poly("Y^6*X1^3+Y^6*X1^5", &r).unwrap());

        let g = parse_poly("X1^6+X1^7", &r).unwrap();
        let (root, rest) = g.pe_split(1);
        assert_eq!(root, parse_poly("X1^3", &r).unwrap());
        assert_eq!(rest, parse_poly("X1^7", &r).unwrap());

        let h = parse_poly("X1*Y", &r).unwrap();
        let (root, rest) = h.pe_split(1);
        assert!(root.is_zero());
        assert_eq!(rest, h);
    }

    #[test]
    fn pe_power_detection() {
        let r = ring2(&["Z", "X1", "Y"]);
        let f = parse_poly("Z^2+Y^6*X1^2", &r).unwrap();
        let (g, e) = f.pe_power().unwrap();
        assert_eq!(e, 1);
        assert_eq!(g, parse_poly("Z+Y^3*X1", &r).unwrap());

        let r4 = ring2(&["T", "Y", "Z"]);
        assert!(parse_poly("T^2+Y*Z", &r4).unwrap().pe_power().is_none());

        let x4 = parse_poly("Z^4", &r).unwrap();
        let (g, e) = x4.pe_power().unwrap();
        assert_eq!((g.to_string().as_str(), e), ("Z", 2));
    }

    #[test]
    fn substitution_chart_map() {
        let r = ring2(&["Z", "X", "Y"]);
        let f = parse_poly("Z^2+Y^7+X^4*Y", &r).unwrap();
        let y = Poly::var_named(&r, "Y");
        let mut map = BTreeMap::new();
        map.insert(0, Poly::var_named(&r, "Z").mul(&y));
        map.insert(1, Poly::var_named(&r, "X").mul(&y));
        let g = f.substitute(&map);
        assert_eq!(g, parse_poly("Z^2*Y^2+Y^7+X^4*Y^5", &r).unwrap());

        // identity map
        assert_eq!(f.substitute(&BTreeMap::new()), f);

        // cleaning substitution kills the square part
        let r1 = ring2(&["Z", "X1"]);
        let h = parse_poly("Z^2+X1^6+X1^7", &r1).unwrap();
        let mut m = BTreeMap::new();
        m.insert(
            0,
            Poly::var_named(&r1, "Z").add(&parse_poly("X1^3", &r1).unwrap()),
        );
        assert_eq!(h.substitute(&m), parse_poly("Z^2+X1^7", &r1).unwrap());
    }

    #[test]
    fn display_round_trip() {
        let r = ring2(&["Z", "X", "Y"]);
        for s in ["Z^2+Y^7+X^4*Y", "0", "1", "X^4*Y^5+X^6*Y^3"] {
            let p = parse_poly(s, &r).unwrap();
            let printed = p.to_string();
            assert_eq!(parse_poly(&printed, &r).unwrap(), p);
        }
    }
}
