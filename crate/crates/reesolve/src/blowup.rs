//! Permissible centers and chart-wise monoidal transformations.
//!
//! A blow-up at a coordinate center C with chosen chart variable u maps
//! every other center variable v to v*u and divides each transformed
//! generator by u^weight; failure of that division is exactly the detector
//! for a non-permissible center. Charts keep a registry of exceptional
//! divisors and a replayable history of every substitution applied since
//! the original ambient space.

use crate::elim::{elimination_algebra, monic_form};
use crate::error::{Error, Result};
use crate::field::Fq;
use crate::monomial::clean_pe_powers;
use crate::poly::{Poly, RingCtx};
use crate::rees::{ReesAlgebra, WeightedGenerator};
use num_rational::Ratio;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// An exceptional divisor as seen in the current chart. The defining locus
/// is {var + shift = 0}; shift becomes nonzero when an affine rename moves
/// the chart origin off the divisor.
#[derive(Clone, PartialEq, Debug)]
pub struct Divisor {
    /// H1, H2, ... by birth order.
    pub name: String,
    pub var: String,
    pub shift: Fq,
    pub birth: u32,
    /// Elimination exponent, rescaled to the common weight s.
    pub alpha: Option<Ratio<u64>>,
    /// Frozen strong exponent h_i.
    pub h: Option<u32>,
}

impl Divisor {
    pub fn is_coordinate(&self, ring: &RingCtx) -> bool {
        ring.field.is_zero(self.shift)
    }

    pub fn locus_string(&self, ring: &RingCtx) -> String {
        if ring.field.is_zero(self.shift) {
            self.var.clone()
        } else {
            format!("{}+{}", ring.field.format(self.shift), self.var)
        }
    }
}

/// One entry of the replayable substitution history.
#[derive(Clone, Debug)]
pub enum HistoryStep {
    Blowup {
        center: Vec<String>,
        chart_var: String,
        dropped_divisors: Vec<String>,
    },
    /// New coordinate `new` = `old` + shift.
    Rename { old: String, new: String, shift: Fq },
    /// z -> z - alpha.
    Translate { var: String, alpha: Poly },
}

/// Current coordinates, divisor registry and substitution history.
#[derive(Clone, Debug)]
pub struct Chart {
    pub ring: Arc<RingCtx>,
    pub divisors: Vec<Divisor>,
    pub history: Vec<HistoryStep>,
    births: u32,
}

impl Chart {
    pub fn new(ring: Arc<RingCtx>) -> Chart {
        Chart {
            ring,
            divisors: Vec::new(),
            history: Vec::new(),
            births: 0,
        }
    }

    pub fn divisor_by_var(&self, var: &str) -> Option<&Divisor> {
        self.divisors
            .iter()
            .find(|d| d.var == var && self.ring.field.is_zero(d.shift))
    }

    pub fn divisor_by_name_mut(&mut self, name: &str) -> Option<&mut Divisor> {
        self.divisors.iter_mut().find(|d| d.name == name)
    }

    pub fn next_birth(&mut self) -> u32 {
        self.births += 1;
        self.births
    }
}

/// A center in coordinate form: a subset of chart coordinates, together with
/// the translations (z -> z - alpha) that brought it there.
#[derive(Clone, Debug)]
pub struct Center {
    pub vars: Vec<String>,
    pub translations: Vec<(String, Poly)>,
}

impl Center {
    pub fn coordinates(vars: &[&str]) -> Center {
        Center {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            translations: Vec::new(),
        }
    }
}

impl fmt::Display for Center {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.vars.join(","))
    }
}

/// Y is permissible for G when Y sits inside Sing(G): every generator must
/// have order >= its weight along the center.
pub fn is_permissible(alg: &ReesAlgebra, center: &Center) -> bool {
    permissibility_failure(alg, center).is_none()
}

fn permissibility_failure(alg: &ReesAlgebra, center: &Center) -> Option<Error> {
    let idx: Vec<usize> = center
        .vars
        .iter()
        .map(|v| alg.ring.var_index(v).expect("center variable not in ring"))
        .collect();
    for g in alg.gens() {
        let ord = g.poly.order_along(&idx).unwrap_or(u32::MAX);
        if ord < g.weight {
            return Some(Error::NotPermissible {
                center: center.to_string(),
                gen: g.poly.to_string(),
                weight: g.weight,
                found: ord,
            });
        }
    }
    None
}

/// The controlled transform of a Rees algebra in one chart of the blow-up at
/// a coordinate center. Old divisors keep their defining coordinate (their
/// strict transform in this chart); the divisor defined by the chart
/// variable itself leaves the chart and is dropped from the registry.
pub fn blowup_chart(
    alg: &ReesAlgebra,
    center: &Center,
    chart_var: &str,
    chart: &Chart,
) -> Result<(Chart, ReesAlgebra)> {
    assert!(
        center.vars.iter().any(|v| v == chart_var),
        "chart variable must belong to the center"
    );
    if let Some(err) = permissibility_failure(alg, center) {
        return Err(err);
    }
    let ring = alg.ring.clone();
    let ci = ring.var_index(chart_var).expect("chart variable not in ring");
    let u = Poly::var(ring.clone(), ci);

    let mut map = BTreeMap::new();
    for v in &center.vars {
        if v != chart_var {
            let vi = ring.var_index(v).expect("center variable not in ring");
            map.insert(vi, Poly::var(ring.clone(), vi).mul(&u));
        }
    }

    let mut gens = Vec::with_capacity(alg.gens().len());
    for g in alg.gens() {
        let total = g.poly.substitute(&map);
        let divided = total.div_var_power(ci, g.weight as u16)?;
        gens.push(WeightedGenerator::new(divided, g.weight));
    }
    let mut out = ReesAlgebra::new(ring.clone(), gens);
    out.transversal = alg.transversal.clone();

    let mut new_chart = chart.clone();
    let mut dropped = Vec::new();
    new_chart.divisors.retain(|d| {
        let invisible = d.var == chart_var && ring.field.is_zero(d.shift);
        if invisible {
            dropped.push(d.name.clone());
        }
        !invisible
    });
    let birth = new_chart.next_birth();
    new_chart.divisors.push(Divisor {
        name: format!("H{birth}"),
        var: chart_var.to_string(),
        shift: ring.field.zero(),
        birth,
        alpha: None,
        h: None,
    });
    new_chart.history.push(HistoryStep::Blowup {
        center: center.vars.clone(),
        chart_var: chart_var.to_string(),
        dropped_divisors: dropped,
    });
    Ok((new_chart, out))
}

/// Lift a lower-dimensional coordinate center through the projection that
/// forgets z. The monic generator is cleaned first, then restricted to the
/// center subspace; the restriction must be the p^e-th power of a section
/// z - alpha, and the net translation is recorded on the returned center.
pub fn normalize_center(alg: &ReesAlgebra, z: &str, low_vars: &[String]) -> Result<Center> {
    let ring = alg.ring.clone();
    let zi = ring.var_index(z).expect("transversal variable not in ring");
    let monic_gen = alg
        .gens()
        .iter()
        .filter(|g| g.poly.involves_var(zi))
        .max_by_key(|g| g.weight)
        .expect("no generator involves the transversal variable");
    let mf = monic_form(&monic_gen.poly, z)?;
    let e = crate::monomial::exponent_of(mf.n, ring.field.p).ok_or(Error::NotPePower {
        poly: monic_gen.poly.to_string(),
    })?;

    let (cleaned, cleaning) = clean_pe_powers(&mf)?;

    let low_idx: Vec<usize> = low_vars
        .iter()
        .map(|v| ring.var_index(v).expect("center variable not in ring"))
        .collect();
    let restricted = cleaned.reconstruct().restrict_to_zero(&low_idx);
    let (root, rest) = restricted.pe_split(e);
    let ok_root = root.deg_var(zi) == 1
        && root
            .coeffs_in_var(zi)
            .get(&1)
            .map_or(false, |c| c.total_degree() == Some(0));
    if !rest.is_zero() || !ok_root {
        return Err(Error::NotPePower {
            poly: restricted.to_string(),
        });
    }
    // root = c*(z - alpha); normalize so alpha reads off directly
    let coeffs = root.coeffs_in_var(zi);
    let lead = coeffs.get(&1).unwrap().leading_coeff().unwrap();
    let inv = ring.field.inv(lead);
    let alpha = coeffs
        .get(&0)
        .map(|c| c.scale(inv).neg())
        .unwrap_or_else(|| Poly::zero(ring.clone()));

    let mut translations = Vec::new();
    if !cleaning.is_zero() {
        translations.push((z.to_string(), cleaning));
    }
    if !alpha.is_zero() {
        translations.push((z.to_string(), alpha));
    }
    let mut vars = vec![z.to_string()];
    vars.extend(low_vars.iter().cloned());
    Ok(Center { vars, translations })
}

/// Lift a center that is permissible for the elimination algebra to a center
/// permissible for G itself (unique by the projection bijection).
pub fn lift_center(low_vars: &[String], alg: &ReesAlgebra, z: &str) -> Result<Center> {
    let center = normalize_center(alg, z, low_vars)?;
    // permissibility is checked against the translated algebra
    let translated = apply_translations(alg, &center.translations);
    if let Some(err) = permissibility_failure(&translated, &center) {
        return Err(err);
    }
    Ok(center)
}

/// Substitute z -> z - alpha for each recorded translation.
pub fn apply_translations(alg: &ReesAlgebra, translations: &[(String, Poly)]) -> ReesAlgebra {
    let mut out = alg.clone();
    for (var, alpha) in translations {
        let vi = out.ring.var_index(var).expect("translation variable not in ring");
        let mut map = BTreeMap::new();
        map.insert(vi, Poly::var(out.ring.clone(), vi).sub(alpha));
        let gens = out
            .gens()
            .iter()
            .map(|g| WeightedGenerator::new(g.poly.substitute(&map), g.weight))
            .collect();
        let mut next = ReesAlgebra::new(out.ring.clone(), gens);
        next.transversal = out.transversal.clone();
        out = next;
    }
    out
}

/// Theorem-style commutation check: blowing up the elimination algebra
/// downstairs agrees with eliminating after blowing up upstairs.
pub fn check_elim_commutes(
    alg: &ReesAlgebra,
    z: &str,
    center: &Center,
    chart_var: &str,
    chart: &Chart,
) -> Result<bool> {
    assert_ne!(chart_var, z, "the z-chart does not project");
    let downstairs = elimination_algebra(alg, z);
    let low_center = Center {
        vars: center.vars.iter().filter(|v| *v != z).cloned().collect(),
        translations: Vec::new(),
    };
    let (_, transformed_elim) = blowup_chart(
        &downstairs,
        &low_center,
        chart_var,
        &Chart::new(downstairs.ring.clone()),
    )?;
    let (_, upstairs) = blowup_chart(alg, center, chart_var, chart)?;
    let elim_of_transform = elimination_algebra(&upstairs, z);
    Ok(transformed_elim.same_gens(&elim_of_transform))
}

/// Replay the recorded history against the original generators: apply every
/// substitution in order and divide by the recorded exceptional powers. Used
/// to check that charts reproduce the current generators exactly.
pub fn replay_history(
    original_ring: &Arc<RingCtx>,
    original: &[WeightedGenerator],
    chart: &Chart,
) -> Result<ReesAlgebra> {
    let mut ring = original_ring.clone();
    let mut gens: Vec<WeightedGenerator> = original.to_vec();
    for step in &chart.history {
        match step {
            HistoryStep::Blowup {
                center, chart_var, ..
            } => {
                let ci = ring.var_index(chart_var).unwrap();
                let u = Poly::var(ring.clone(), ci);
                let mut map = BTreeMap::new();
                for v in center {
                    if v != chart_var {
                        let vi = ring.var_index(v).unwrap();
                        map.insert(vi, Poly::var(ring.clone(), vi).mul(&u));
                    }
                }
                gens = gens
                    .iter()
                    .map(|g| {
                        let t = g.poly.substitute(&map);
                        Ok(WeightedGenerator::new(
                            t.div_var_power(ci, g.weight as u16)?,
                            g.weight,
                        ))
                    })
                    .collect::<Result<Vec<_>>>()?;
            }
            HistoryStep::Rename { old, new, shift } => {
                let target = RingCtx::new(
                    ring.field.clone(),
                    ring.vars
                        .iter()
                        .map(|v| if v == old { new.clone() } else { v.clone() })
                        .collect(),
                );
                let images: Vec<Poly> = ring
                    .vars
                    .iter()
                    .map(|v| {
                        if v == old {
                            // new = old + shift, so old = new - shift
                            Poly::var_named(&target, new)
                                .sub(&Poly::constant(target.clone(), *shift))
                        } else {
                            Poly::var_named(&target, v)
                        }
                    })
                    .collect();
                gens = gens
                    .iter()
                    .map(|g| WeightedGenerator::new(g.poly.map_ring(&target, &images), g.weight))
                    .collect();
                ring = target;
            }
            HistoryStep::Translate { var, alpha } => {
                let vi = ring.var_index(var).unwrap();
                let mut map = BTreeMap::new();
                map.insert(vi, Poly::var(ring.clone(), vi).sub(alpha));
                gens = gens
                    .iter()
                    .map(|g| WeightedGenerator::new(g.poly.substitute(&map), g.weight))
                    .collect();
            }
        }
    }
    Ok(ReesAlgebra::new(ring, gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use crate::parse::parse_poly;

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
    fn permissibility() {
        let r = ring(&["Z", "X", "Y"]);
        let g = alg(&r, &[("Z^2+Y^7+X^4*Y", 2), ("Y^6+X^4", 1)]);
        assert!(is_permissible(&g, &Center::coordinates(&["Z", "X", "Y"])));
        // Y^7 has order 0 along {Z, X}
        assert!(!is_permissible(&g, &Center::coordinates(&["Z", "X"])));

        let r4 = ring(&["T", "X", "Y", "Z"]);
        let g2 = alg(&r4, &[("T^2+X*Y*Z", 2), ("X*Y", 1)]);
        assert!(is_permissible(&g2, &Center::coordinates(&["T", "X", "Y"])));
    }

    #[test]
    fn hauser_first_two_charts() {
        let r = ring(&["Z", "X", "Y"]);
        let g = alg(&r, &[("Z^2+Y^7+X^4*Y", 2), ("Y^6+X^4", 1)]);
        let chart0 = Chart::new(r.clone());
        let center = Center::coordinates(&["Z", "X", "Y"]);

        let (chart1, g1) = blowup_chart(&g, &center, "Y", &chart0).unwrap();
        let expected1 = alg(&r, &[("Z^2+Y^5+X^4*Y^3", 2), ("Y^5+X^4*Y^3", 1)]);
        assert!(g1.same_gens(&expected1));
        assert_eq!(chart1.divisors.len(), 1);
        assert_eq!(chart1.divisors[0].var, "Y");

        let (chart2, g2) = blowup_chart(&g1, &center, "X", &chart1).unwrap();
        let expected2 = alg(&r, &[("Z^2+X^3*Y^5+X^5*Y^3", 2), ("X^4*Y^5+X^6*Y^3", 1)]);
        assert!(g2.same_gens(&expected2));
        let vars: Vec<&str> = chart2.divisors.iter().map(|d| d.var.as_str()).collect();
        assert_eq!(vars, vec!["Y", "X"]);
    }

    #[test]
    fn txyz_first_chart_prunes_redundant_transform() {
        let r = ring(&["T", "X", "Y", "Z"]);
        let g = alg(
            &r,
            &[("T^2+X*Y*Z", 2), ("X*Y", 1), ("X*Z", 1), ("Y*Z", 1)],
        );
        let center = Center::coordinates(&["T", "X", "Y", "Z"]);
        let (_, g1) = blowup_chart(&g, &center, "X", &Chart::new(r.clone())).unwrap();
        let expected = alg(&r, &[("T^2+X*Y*Z", 2), ("X*Y", 1), ("X*Z", 1)]);
        assert!(g1.same_gens(&expected));
    }

    #[test]
    fn commutation_on_both_examples() {
        let r = ring(&["Z", "X", "Y"]);
        let g = alg(&r, &[("Z^2+Y^7+X^4*Y", 2), ("Y^6+X^4", 1)]);
        let center = Center::coordinates(&["Z", "X", "Y"]);
        assert!(check_elim_commutes(&g, "Z", &center, "Y", &Chart::new(r.clone())).unwrap());

        let r4 = ring(&["T", "X", "Y", "Z"]);
        let g4 = alg(
            &r4,
            &[("T^2+X*Y*Z", 2), ("X*Y", 1), ("X*Z", 1), ("Y*Z", 1)],
        );
        let center4 = Center::coordinates(&["T", "X", "Y", "Z"]);
        assert!(check_elim_commutes(&g4, "T", &center4, "X", &Chart::new(r4.clone())).unwrap());

        // a pure power of z eliminates to zero on both sides
        let pure = alg(&r, &[("Z^2", 2)]).with_transversal("Z");
        assert!(check_elim_commutes(&pure, "Z", &center, "X", &Chart::new(r.clone())).unwrap());
    }

    #[test]
    fn lifting_centers() {
        let r4 = ring(&["T", "X", "Y", "Z"]);
        let g2 = alg(&r4, &[("T^2+X*Y*Z", 2), ("X*Y", 1)]);
        let c = lift_center(&["X".into(), "Y".into()], &g2, "T").unwrap();
        assert_eq!(c.vars, vec!["T", "X", "Y"]);
        assert!(c.translations.is_empty());

        // f = Z^2 + X1^6 + X1^7 restricted to X1 = 0 is Z^2 after cleaning;
        // the recorded translation is the cleaning root X1^3
        let r = ring(&["Z", "X1"]);
        let g = alg(&r, &[("Z^2+X1^6+X1^7", 2)]);
        let c = normalize_center(&g, "Z", &["X1".to_string()]).unwrap();
        assert_eq!(c.vars, vec!["Z", "X1"]);
        assert_eq!(c.translations.len(), 1);
        assert_eq!(c.translations[0].1, parse_poly("X1^3", &r).unwrap());

        // z^2 needs no translation at all
        let gz = alg(&r, &[("Z^2", 2)]);
        let cz = normalize_center(&gz, "Z", &["X1".to_string()]).unwrap();
        assert!(cz.translations.is_empty());

        // a center through a non-singular point is rejected
        let bad = alg(&r4, &[("T^2+X*Y*Z", 2), ("X*Y", 1)]);
        let res = lift_center(&["Z".into()], &bad, "T");
        assert!(matches!(res, Err(Error::NotPermissible { .. }) | Err(Error::NotPePower { .. })));
    }

    #[test]
    fn absolute_closure_can_grow_after_transform() {
        // G = [(Z^2+X^2*Y)W^2, (X^2)W] is differentially closed in char 2;
        // the chart-X transform does not contain YW, but its closure does.
        let r = ring(&["Z", "X", "Y"]);
        let g = alg(&r, &[("Z^2+X^2*Y", 2), ("X^2", 1)]);
        assert!(g.diff_closure().same_gens(&g));

        let center = Center::coordinates(&["Z", "X", "Y"]);
        let (_, g1) = blowup_chart(&g, &center, "X", &Chart::new(r.clone())).unwrap();
        let expected = alg(&r, &[("Z^2+X*Y", 2), ("X", 1)]);
        assert!(g1.same_gens(&expected));

        // YW is not spanned: no weight-1 generator divides Y
        let y = parse_poly("Y", &r).unwrap();
        assert!(!g1
            .gens()
            .iter()
            .filter(|g| g.weight == 1)
            .any(|g| y.div_exact(&g.poly).is_some()));

        // but the absolute closure acquires it
        let closed = g1.diff_closure();
        assert!(closed
            .gens()
            .iter()
            .any(|g| g.weight == 1 && g.poly == y));

        // the closure supported on Z adds nothing
        assert!(g1.relative_diff_closure("Z").same_gens(&g1));
    }

    #[test]
    fn history_replays_to_current_generators() {
        let r = ring(&["Z", "X", "Y"]);
        let g = alg(&r, &[("Z^2+Y^7+X^4*Y", 2), ("Y^6+X^4", 1)]);
        let center = Center::coordinates(&["Z", "X", "Y"]);
        let (c1, g1) = blowup_chart(&g, &center, "Y", &Chart::new(r.clone())).unwrap();
        let (c2, g2) = blowup_chart(&g1, &center, "X", &c1).unwrap();
        let replayed = replay_history(&r, g.gens(), &c2).unwrap();
        assert!(replayed.same_gens(&g2));
    }
}
