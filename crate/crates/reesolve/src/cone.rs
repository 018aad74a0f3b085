//! Initial forms, tangent cones and the tau invariant.
//!
//! At a singular point the weight-n generators contribute their degree-n
//! initial forms; the homogeneous ideal they generate, saturated under
//! Hasse derivatives, cuts out the cone whose translation space we need.
//! Over the perfect fields used here that saturated cone is generated by
//! p^e-th powers of linear forms, so tau is read off by collecting those
//! forms and reducing modulo their span. Anything outside that class is
//! reported as unsupported rather than given a wrong answer.

use crate::error::{Error, Result};
use crate::field::Fq;
use crate::poly::{MultiIndex, Poly};
use crate::rees::ReesAlgebra;

/// Initial forms In_n(g) at a point, each tagged with its weight.
#[derive(Clone, Debug)]
pub struct InitialIdeal {
    pub point: Vec<Fq>,
    pub gens: Vec<(Poly, u32)>,
}

/// Independent degree-one forms cutting out the linear space of vertices;
/// tau is their number.
#[derive(Clone, Debug)]
pub struct VertexSpace {
    pub linear_forms: Vec<Poly>,
}

impl VertexSpace {
    pub fn tau(&self) -> u32 {
        self.linear_forms.len() as u32
    }
}

/// The initial ideal of G at a singular point: each generator of order
/// exactly its weight contributes its lowest homogeneous part (translated to
/// the point); generators of higher order contribute nothing.
pub fn initial_ideal(alg: &ReesAlgebra, pt: &[Fq]) -> Result<InitialIdeal> {
    let mut gens = Vec::new();
    for g in alg.gens() {
        let order = g.poly.order_at_point(pt);
        match order {
            None => continue,
            Some(o) if o < g.weight => {
                return Err(Error::NotSingularPoint {
                    gen: g.poly.to_string(),
                    weight: g.weight,
                    found: o,
                });
            }
            Some(o) if o > g.weight => continue,
            Some(_) => {
                let moved = g.poly.translate(pt);
                let init = moved.homogeneous_component(g.weight).normalized();
                if !init.is_zero() && !gens.iter().any(|(p, w)| *w == g.weight && p == &init) {
                    gens.push((init, g.weight));
                }
            }
        }
    }
    Ok(InitialIdeal {
        point: pt.to_vec(),
        gens,
    })
}

/// Smallest extension of a homogeneous generator set closed under Delta^alpha
/// with |alpha| < weight; homogeneous pieces keep the reduced weight.
pub fn diff_close_homogeneous(ideal: &InitialIdeal) -> InitialIdeal {
    let mut out: Vec<(Poly, u32)> = Vec::new();
    let mut work = ideal.gens.clone();
    while let Some((g, w)) = work.pop() {
        if out.iter().any(|(p, v)| *v == w && p == &g) {
            continue;
        }
        if w > 1 {
            let nvars = g.ring().nvars();
            for var in 0..nvars {
                for e in 1..w {
                    let d = g.hasse(&MultiIndex::unit(nvars, var, e as u16));
                    if !d.is_zero() {
                        work.push((d.normalized(), w - e));
                    }
                }
            }
        }
        out.push((g, w));
    }
    out.sort_by(|a, b| {
        a.1.cmp(&b.1).then_with(|| {
            let ta: Vec<_> = a.0.terms().map(|(m, c)| (m.clone(), *c)).collect();
            let tb: Vec<_> = b.0.terms().map(|(m, c)| (m.clone(), *c)).collect();
            ta.cmp(&tb)
        })
    });
    InitialIdeal {
        point: ideal.point.clone(),
        gens: out,
    }
}

/// Row-reduce a set of linear forms to a reduced echelon basis; returns the
/// basis rows (pivot coefficient one, pivots cleared from other rows).
struct LinearBasis {
    ring: std::sync::Arc<crate::poly::RingCtx>,
    /// (pivot variable, coefficient row)
    rows: Vec<(usize, Vec<Fq>)>,
}

impl LinearBasis {
    fn new(ring: std::sync::Arc<crate::poly::RingCtx>) -> LinearBasis {
        LinearBasis { ring, rows: Vec::new() }
    }

    /// Insert a form; returns false when it was already in the span.
    fn insert(&mut self, form: &Poly) -> bool {
        let f = self.ring.field.clone();
        let mut row = match form.linear_coeffs() {
            Some(r) => r,
            None => return false,
        };
        for (pivot, basis_row) in &self.rows {
            let c = row[*pivot];
            if !f.is_zero(c) {
                for i in 0..row.len() {
                    row[i] = f.sub(row[i], f.mul(c, basis_row[i]));
                }
            }
        }
        let pivot = match row.iter().position(|c| !f.is_zero(*c)) {
            Some(p) => p,
            None => return false,
        };
        let inv = f.inv(row[pivot]);
        for c in row.iter_mut() {
            *c = f.mul(*c, inv);
        }
        // clear the new pivot from existing rows
        for (_, basis_row) in self.rows.iter_mut() {
            let c = basis_row[pivot];
            if !f.is_zero(c) {
                for i in 0..basis_row.len() {
                    basis_row[i] = f.sub(basis_row[i], f.mul(c, row[i]));
                }
            }
        }
        self.rows.push((pivot, row));
        self.rows.sort_by_key(|(p, _)| *p);
        true
    }

    /// Substitute each pivot variable by minus the rest of its row, i.e.
    /// reduce a polynomial modulo the span of the basis forms.
    fn reduce(&self, p: &Poly) -> Poly {
        let f = self.ring.field.clone();
        let mut map = std::collections::BTreeMap::new();
        for (pivot, row) in &self.rows {
            let mut image = Poly::zero(self.ring.clone());
            for (i, &c) in row.iter().enumerate() {
                if i != *pivot && !f.is_zero(c) {
                    image = image.add(&Poly::var(self.ring.clone(), i).scale(f.neg(c)));
                }
            }
            map.insert(*pivot, image);
        }
        p.substitute(&map)
    }

    fn forms(&self) -> Vec<Poly> {
        self.rows
            .iter()
            .map(|(_, row)| {
                let mut form = Poly::zero(self.ring.clone());
                for (i, &c) in row.iter().enumerate() {
                    if !self.ring.field.is_zero(c) {
                        form = form.add(&Poly::var(self.ring.clone(), i).scale(c));
                    }
                }
                form
            })
            .collect()
    }
}

/// The linear forms computed by the tau iteration: close the initial ideal
/// under differential operators, collect generators that are p^e-th powers
/// of linear forms (e = 0 means linear), extend a basis, rewrite the rest
/// modulo the span, and repeat. Leftover generators mean the cone is outside
/// the supported class.
pub fn vertex_space(alg: &ReesAlgebra, pt: &[Fq]) -> Result<VertexSpace> {
    let closed = diff_close_homogeneous(&initial_ideal(alg, pt)?);
    collect_vertex_forms(&alg.ring, &closed)
}

/// The collection loop on an already diff-closed homogeneous generator set.
/// Over the perfect fields here the closure always lands in the supported
/// class; the leftover check guards against being handed anything else.
pub fn collect_vertex_forms(
    ring: &std::sync::Arc<crate::poly::RingCtx>,
    closed: &InitialIdeal,
) -> Result<VertexSpace> {
    let ring = ring.clone();
    let mut basis = LinearBasis::new(ring);
    let mut remaining: Vec<Poly> = closed.gens.iter().map(|(g, _)| g.clone()).collect();
    loop {
        let mut progressed = false;
        let mut leftovers = Vec::new();
        for g in remaining.drain(..) {
            let g = basis.reduce(&g).normalized();
            if g.is_zero() {
                continue;
            }
            let form = if g.total_degree() == Some(1) && g.is_homogeneous() {
                Some(g.clone())
            } else {
                match g.pe_power() {
                    Some((root, _)) if root.total_degree() == Some(1) && root.is_homogeneous() => {
                        Some(root)
                    }
                    _ => None,
                }
            };
            match form {
                Some(f) => {
                    if basis.insert(&f.normalized()) {
                        progressed = true;
                    }
                }
                None => leftovers.push(g),
            }
        }
        remaining = leftovers;
        if !progressed {
            break;
        }
    }
    // whatever survives reduction must itself be a power of a linear form
    for g in &remaining {
        let g = basis.reduce(g);
        if !g.is_zero() {
            return Err(Error::UnsupportedCone { gen: g.to_string() });
        }
    }
    Ok(VertexSpace {
        linear_forms: basis.forms(),
    })
}

/// The tau invariant: the codimension of the linear space of vertices, i.e.
/// the number of independent forms collected by `vertex_space`.
pub fn tau(alg: &ReesAlgebra, pt: &[Fq]) -> Result<u32> {
    Ok(vertex_space(alg, pt)?.tau())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use crate::parse::parse_poly;
    use crate::poly::RingCtx;
    use crate::rees::WeightedGenerator;
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

    fn origin(ring: &Arc<RingCtx>) -> Vec<Fq> {
        vec![ring.field.zero(); ring.nvars()]
    }

    #[test]
    fn initial_ideal_examples() {
        let r = ring(&["Z", "X", "Y"]);
        let g = alg(&r, &[("Z^2+Y^7+X^4*Y", 2), ("Y^6+X^4", 1)]);
        let ii = initial_ideal(&g, &origin(&r)).unwrap();
        // the weight-1 generator has order 4 > 1 and contributes nothing
        assert_eq!(ii.gens.len(), 1);
        assert_eq!(ii.gens[0].0.to_string(), "Z^2");
        assert_eq!(ii.gens[0].1, 2);

        let r4 = ring(&["T", "X", "Y", "Z"]);
        let g4 = alg(
            &r4,
            &[("T^2+X*Y*Z", 2), ("X*Y", 1), ("X*Z", 1), ("Y*Z", 1)],
        );
        let ii4 = initial_ideal(&g4, &origin(&r4)).unwrap();
        assert_eq!(ii4.gens.len(), 1);
        assert_eq!(ii4.gens[0].0.to_string(), "T^2");

        let triv = alg(&r, &[("Z", 1)]);
        let it = initial_ideal(&triv, &origin(&r)).unwrap();
        assert_eq!(it.gens[0].0.to_string(), "Z");

        // a non-singular point is rejected
        let one = r.field.one();
        let smooth_pt = vec![one, r.field.zero(), r.field.zero()];
        assert!(initial_ideal(&g, &smooth_pt).is_err());
    }

    #[test]
    fn homogeneous_closure() {
        let r = ring(&["T", "Y", "Z"]);
        let ii = InitialIdeal {
            point: origin(&r),
            gens: vec![(parse_poly("T^2+Y*Z", &r).unwrap(), 2)],
        };
        let closed = diff_close_homogeneous(&ii);
        let printed: Vec<String> = closed.gens.iter().map(|(g, w)| format!("{g}@{w}")).collect();
        assert_eq!(printed, vec!["Z@1", "Y@1", "T^2+Y*Z@2"]);

        // char-2 vanishing leaves Z^2 alone
        let rz = ring(&["Z", "X", "Y"]);
        let iz = InitialIdeal {
            point: origin(&rz),
            gens: vec![(parse_poly("Z^2", &rz).unwrap(), 2)],
        };
        assert_eq!(diff_close_homogeneous(&iz).gens.len(), 1);
    }

    #[test]
    fn tau_examples() {
        let r = ring(&["Z", "X", "Y"]);
        let hauser = alg(&r, &[("Z^2+Y^7+X^4*Y", 2), ("Y^6+X^4", 1)]);
        assert_eq!(tau(&hauser, &origin(&r)).unwrap(), 1);
        let vs = vertex_space(&hauser, &origin(&r)).unwrap();
        assert_eq!(vs.linear_forms[0].to_string(), "Z");

        let r4 = ring(&["T", "X", "Y", "Z"]);
        let g4 = alg(
            &r4,
            &[("T^2+X*Y*Z", 2), ("X*Y", 1), ("X*Z", 1), ("Y*Z", 1)],
        );
        assert_eq!(tau(&g4, &origin(&r4)).unwrap(), 1);

        // after the lifted monoidal transformation tau jumps to 3
        let g3 = alg(&r4, &[("T^2+Y*Z", 2), ("X*Y", 1)]);
        assert_eq!(tau(&g3, &origin(&r4)).unwrap(), 3);
        let vs3 = vertex_space(&g3, &origin(&r4)).unwrap();
        let names: Vec<String> = vs3.linear_forms.iter().map(|f| f.to_string()).collect();
        assert_eq!(names, vec!["T", "Y", "Z"]);
    }

    #[test]
    fn tau_of_single_variable() {
        let r = ring(&["x", "y"]);
        let g = alg(&r, &[("x", 1)]);
        let vs = vertex_space(&g, &origin(&r)).unwrap();
        assert_eq!(vs.tau(), 1);
        assert_eq!(vs.linear_forms[0].to_string(), "x");
    }

    #[test]
    fn unsupported_cone_is_reported() {
        // handed a generator set that is not closed and not spanned by
        // powers of linear forms, the collection loop refuses rather than
        // returning a wrong count
        let r = ring(&["X", "Y"]);
        let synthetic = InitialIdeal {
            point: origin(&r),
            gens: vec![(parse_poly("X*Y", &r).unwrap(), 2)],
        };
        assert!(matches!(
            collect_vertex_forms(&r, &synthetic),
            Err(Error::UnsupportedCone { .. })
        ));

        // the same cone through tau gets closed first and succeeds
        let g = alg(&r, &[("X*Y", 2)]);
        assert_eq!(tau(&g, &origin(&r)).unwrap(), 2);
    }

    #[test]
    fn tau_zero_for_empty_initial_ideal() {
        // order 4 > weight 1 everywhere relevant: empty cone, tau = 0
        let r = ring(&["X", "Y"]);
        let g = alg(&r, &[("Y^6+X^4", 1)]);
        assert_eq!(tau(&g, &origin(&r)).unwrap(), 0);
    }
}
