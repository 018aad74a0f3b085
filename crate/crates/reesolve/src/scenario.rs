//! Scenario files, the resolution pipeline state and the deterministic
//! report. A scenario fixes a field, an ambient ring, a transversal
//! variable and a starting generator list, then runs a sequence of steps
//! (closures, blow-ups, renames, cleanings, exponent freezes, combinatorial
//! resolution and lifting). Reports are plain text with a versioned header
//! and are byte-deterministic for a given scenario.

use crate::blowup::{
    apply_translations, blowup_chart, check_elim_commutes, lift_center, Center, Chart, HistoryStep,
};
use crate::cone::tau;
use crate::elim::{elimination_algebra, monic_form, MonicForm};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq};
use crate::monomial::{
    clean_pe_powers, divisor_slope, point_slope, resolve_monomial, strong_exponent,
    MonomialAlgebra,
};
use crate::parse::parse_poly;
use crate::poly::{Poly, RingCtx};
use crate::rees::{ReesAlgebra, WeightedGenerator};
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::sync::Arc;

pub const REPORT_VERSION: &str = "reesolve report v1";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    #[serde(default = "default_k")]
    pub k: u32,
}

fn default_k() -> u32 {
    1
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub poly: String,
    pub weight: u32,
}

/// One pipeline step. The op vocabulary is fixed; scenario files use records
/// like {"op":"blowup","center":["Z","X","Y"],"chart":"Y"}.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Step {
    DiffClose,
    Elim,
    Sing {
        #[serde(default = "default_k")]
        ext: u32,
    },
    Blowup {
        center: Vec<String>,
        chart: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expect_gens: Option<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expect_elim: Option<Vec<String>>,
    },
    Exponents,
    Rename {
        from: String,
        to: String,
        #[serde(default)]
        shift: i64,
    },
    Clean,
    Monomial,
    Resolve,
    Lift {
        centers: Vec<Vec<String>>,
    },
    Tau {
        point: Vec<i64>,
    },
    Slope {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        divisor: Option<String>,
    },
    Show,
}

impl Step {
    pub fn op_name(&self) -> &'static str {
        match self {
            Step::DiffClose => "diff_close",
            Step::Elim => "elim",
            Step::Sing { .. } => "sing",
            Step::Blowup { .. } => "blowup",
            Step::Exponents => "exponents",
            Step::Rename { .. } => "rename",
            Step::Clean => "clean",
            Step::Monomial => "monomial",
            Step::Resolve => "resolve",
            Step::Lift { .. } => "lift",
            Step::Tau { .. } => "tau",
            Step::Slope { .. } => "slope",
            Step::Show => "show",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Scenario {
    #[serde(default)]
    pub name: String,
    pub field: FieldSpec,
    pub vars: Vec<String>,
    pub transversal: String,
    pub generators: Vec<GeneratorSpec>,
    pub steps: Vec<Step>,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Scenario> {
        serde_json::from_str(text).map_err(|e| Error::Scenario(format!("invalid scenario: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }
}

/// The unit of pipeline progress: a chart, the algebra on it, the carried
/// elimination algebra one dimension down, and the combinatorial state of
/// the strong monomial algebra once it has been built.
#[derive(Clone, Debug)]
pub struct ResolutionState {
    pub chart: Chart,
    pub algebra: ReesAlgebra,
    pub elim: Option<ReesAlgebra>,
    pub z: String,
    pub s: u32,
    pub monomial: Option<MonomialAlgebra>,
    pub original_ring: Arc<RingCtx>,
    pub original_gens: Vec<WeightedGenerator>,
}

/// Extra data a step computed, for programmatic consumers.
#[derive(Clone, Debug)]
pub enum StepData {
    None,
    Tau(u32),
    Slope(String),
    Sing(Vec<Vec<Fq>>),
    Centers(Vec<Vec<String>>),
    Monomial(String),
    Commutes(bool),
    Exponents(Vec<(String, u32)>),
}

#[derive(Clone, Debug)]
pub struct StepRecord {
    pub op: String,
    pub state: ResolutionState,
    pub data: StepData,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub lines: Vec<String>,
    pub error: Option<(usize, String)>,
}

impl Report {
    fn push(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    pub fn text(&self) -> String {
        let mut out = self.lines.join("\n");
        out.push('\n');
        out
    }
}

pub struct RunOutput {
    pub report: Report,
    pub steps: Vec<StepRecord>,
}

impl ResolutionState {
    pub fn from_scenario(s: &Scenario) -> Result<ResolutionState> {
        let field = FieldCtx::new(s.field.p, s.field.k)?;
        let ring = RingCtx::new(field, s.vars.clone());
        if ring.var_index(&s.transversal).is_none() {
            return Err(Error::Scenario(format!(
                "transversal variable {} is not a ring variable",
                s.transversal
            )));
        }
        let mut gens = Vec::new();
        for g in &s.generators {
            let poly = parse_poly(&g.poly, &ring)?;
            if poly.is_zero() {
                return Err(Error::Scenario(format!("generator {} is zero", g.poly)));
            }
            if g.weight == 0 {
                return Err(Error::Scenario("generator weight must be >= 1".into()));
            }
            gens.push(WeightedGenerator::new(poly, g.weight));
        }
        let algebra = ReesAlgebra::new(ring.clone(), gens.clone()).with_transversal(&s.transversal);
        let zi = ring.var_index(&s.transversal).unwrap();
        let s_weight = algebra
            .gens()
            .iter()
            .filter(|g| g.poly.involves_var(zi))
            .map(|g| g.weight)
            .max()
            .unwrap_or(1);
        Ok(ResolutionState {
            chart: Chart::new(ring.clone()),
            algebra,
            elim: None,
            z: s.transversal.clone(),
            s: s_weight,
            monomial: None,
            original_ring: ring,
            original_gens: gens,
        })
    }

    pub fn ring(&self) -> &Arc<RingCtx> {
        &self.chart.ring
    }

    /// The generator carrying the monic structure: maximal weight among
    /// those involving z.
    pub fn monic_generator(&self) -> Result<&WeightedGenerator> {
        let zi = self.ring().var_index(&self.z).unwrap();
        self.algebra
            .gens()
            .iter()
            .filter(|g| g.poly.involves_var(zi))
            .max_by_key(|g| g.weight)
            .ok_or_else(|| Error::Scenario("no generator involves the transversal variable".into()))
    }

    pub fn monic_form(&self) -> Result<MonicForm> {
        monic_form(&self.monic_generator()?.poly, &self.z)
    }

    fn divisor_descriptions(&self) -> String {
        if self.chart.divisors.is_empty() {
            return "(none)".to_string();
        }
        let mut divisors: Vec<_> = self.chart.divisors.iter().collect();
        divisors.sort_by_key(|d| d.birth);
        divisors
            .iter()
            .map(|d| {
                let mut s = format!("{} = {{{}=0}}", d.name, d.locus_string(self.ring()));
                if let Some(a) = &d.alpha {
                    s.push_str(&format!(" alpha={}", format_ratio(a)));
                }
                if let Some(h) = d.h {
                    s.push_str(&format!(" h={h}"));
                }
                s
            })
            .collect::<Vec<_>>()
            .join(", ")
    }

    fn describe(&self, report: &mut Report) {
        report.push(format!("chart: {}", self.ring().vars.join(", ")));
        report.push(format!("divisors: {}", self.divisor_descriptions()));
        report.push(format!("gens: {}", self.algebra));
        match &self.elim {
            Some(e) => report.push(format!("elim: {e}")),
            None => report.push("elim: (not computed)".to_string()),
        }
    }

    /// Verify the frozen contact exponents against the current algebra;
    /// divisors away from the chart origin are skipped.
    fn contact_violations(&self) -> Result<Vec<String>> {
        let mut monomial = Vec::new();
        for d in &self.chart.divisors {
            if d.is_coordinate(self.ring()) {
                if let Some(h) = d.h {
                    if h >= 1 {
                        monomial.push((d.var.clone(), h));
                    }
                }
            }
        }
        if monomial.is_empty() {
            return Ok(Vec::new());
        }
        let closed = self.algebra.relative_diff_closure(&self.z);
        let mut out = Vec::new();
        for (var, h) in &monomial {
            if !closed.contact_membership(&self.z, &[(var.clone(), *h)], self.s)? {
                out.push(format!(
                    "note: contact violated for {{{var}=0}} at exponent {h}"
                ));
            }
        }
        Ok(out)
    }

    fn transform_elim(&mut self, center: &Center, chart_var: &str) -> Result<()> {
        if let Some(elim) = &self.elim {
            let low = Center {
                vars: center
                    .vars
                    .iter()
                    .filter(|v| *v != &self.z)
                    .cloned()
                    .collect(),
                translations: Vec::new(),
            };
            let scratch = Chart::new(elim.ring.clone());
            let (_, e1) = blowup_chart(elim, &low, chart_var, &scratch)?;
            self.elim = Some(e1);
        }
        Ok(())
    }

    fn do_blowup(
        &mut self,
        center: Center,
        chart_var: &str,
        report: &mut Report,
    ) -> Result<bool> {
        if chart_var == self.z {
            return Err(Error::Scenario(
                "the z-chart carries no singular points and no projection".into(),
            ));
        }
        let mut commutes = true;
        if self.elim.is_some() {
            commutes = check_elim_commutes(&self.algebra, &self.z, &center, chart_var, &self.chart)?;
            report.push(format!("commute: {commutes}"));
        }
        let (chart, algebra) = blowup_chart(&self.algebra, &center, chart_var, &self.chart)?;
        self.chart = chart;
        self.algebra = algebra;
        self.transform_elim(&center, chart_var)?;
        Ok(commutes)
    }

    fn apply_rename(&mut self, from: &str, to: &str, shift: i64) -> Result<()> {
        let ring = self.ring().clone();
        let fi = ring
            .var_index(from)
            .ok_or_else(|| Error::Scenario(format!("no variable {from}")))?;
        if ring.var_index(to).is_some() {
            return Err(Error::Scenario(format!("variable {to} already exists")));
        }
        let c = ring.field.from_int(shift);
        let target = RingCtx::new(
            ring.field.clone(),
            ring.vars
                .iter()
                .map(|v| if v == from { to.to_string() } else { v.clone() })
                .collect(),
        );
        // to = from + c, so from maps to to - c
        let images: Vec<Poly> = ring
            .vars
            .iter()
            .enumerate()
            .map(|(i, _)| {
                let v = Poly::var(target.clone(), i);
                if i == fi {
                    v.sub(&Poly::constant(target.clone(), c))
                } else {
                    v
                }
            })
            .collect();
        self.algebra = self.algebra.map_ring(&target, &images);
        if let Some(elim) = &self.elim {
            let down_target = target.without_var(&self.z);
            let down_images: Vec<Poly> = elim
                .ring
                .vars
                .iter()
                .map(|v| {
                    let name = if v == from { to } else { v.as_str() };
                    let var = Poly::var_named(&down_target, name);
                    if v == from {
                        var.sub(&Poly::constant(down_target.clone(), c))
                    } else {
                        var
                    }
                })
                .collect();
            self.elim = Some(elim.map_ring(&down_target, &down_images));
        }
        for d in &mut self.chart.divisors {
            if d.var == from {
                // locus {from + s0 = 0} = {to + (s0 - c) = 0}
                d.var = to.to_string();
                d.shift = ring.field.sub(d.shift, c);
            }
        }
        self.chart.ring = target;
        self.chart.history.push(HistoryStep::Rename {
            old: from.to_string(),
            new: to.to_string(),
            shift: c,
        });
        Ok(())
    }

    fn apply_clean(&mut self, report: &mut Report) -> Result<()> {
        let mf = self.monic_form()?;
        let (_, root) = clean_pe_powers(&mf)?;
        if root.is_zero() {
            report.push("clean: nothing to remove".to_string());
            return Ok(());
        }
        self.algebra = apply_translations(&self.algebra, &[(self.z.clone(), root.clone())]);
        self.chart.history.push(HistoryStep::Translate {
            var: self.z.clone(),
            alpha: root.clone(),
        });
        report.push(format!("clean: {} -> {} - ({})", self.z, self.z, root));
        Ok(())
    }

    fn freeze_exponents(&mut self, report: &mut Report) -> Result<Vec<(String, u32)>> {
        let mf = self.monic_form()?;
        let elim = self
            .elim
            .clone()
            .unwrap_or_else(|| ReesAlgebra::empty(self.ring().without_var(&self.z)));
        let mut frozen = Vec::new();
        let ring = self.ring().clone();
        let s = self.s;
        for d in &mut self.chart.divisors {
            if d.h.is_some() || !ring.field.is_zero(d.shift) {
                continue;
            }
            let alpha = {
                let yi = elim.ring.var_index(&d.var);
                match yi {
                    Some(yi) => {
                        let mut best: Option<Ratio<u64>> = None;
                        for g in elim.gens() {
                            if let Some(ord) = g.poly.ord_var(yi) {
                                let r = Ratio::new(ord as u64 * s as u64, g.weight as u64);
                                best = Some(match best {
                                    None => r,
                                    Some(b) => b.min(r),
                                });
                            }
                        }
                        best
                    }
                    None => None,
                }
            };
            let cap = alpha.map(|a| a.floor().to_integer() as u32);
            let h = strong_exponent(&mf, &elim, &d.var, s, cap)?;
            let (cleaned, _) = clean_pe_powers(&mf)?;
            let slope = divisor_slope(&cleaned, &elim, &d.var);
            d.alpha = alpha;
            d.h = Some(h);
            report.push(format!(
                "{}: slope {}, alpha {}, h {}",
                d.name,
                slope,
                alpha.map(|a| format_ratio(&a)).unwrap_or_else(|| "-".into()),
                h
            ));
            frozen.push((d.name.clone(), h));
        }
        if frozen.is_empty() {
            report.push("exponents: nothing new to freeze".to_string());
        }
        for note in self.contact_violations()? {
            report.push(note);
        }
        Ok(frozen)
    }

    fn build_monomial(&mut self, report: &mut Report) -> Result<MonomialAlgebra> {
        let elim = self
            .elim
            .as_ref()
            .ok_or_else(|| Error::Scenario("monomial step needs the elimination algebra".into()))?;
        // every generator must be a monomial in the chart variables times a
        // unit; unit factors are discarded with a note
        for g in elim.gens() {
            let mut mono = g.poly.clone();
            for vi in 0..elim.ring.nvars() {
                let ord = mono.ord_var(vi).unwrap_or(0);
                if ord > 0 {
                    mono = mono.div_var_power(vi, ord as u16)?;
                }
            }
            let constant_term = mono
                .order_at_point(&vec![elim.ring.field.zero(); elim.ring.nvars()])
                .map_or(false, |o| o == 0);
            if mono.total_degree() == Some(0) {
                continue; // pure monomial
            }
            if constant_term {
                report.push(format!(
                    "note: unit factor ({}) discarded in elimination generator ({})",
                    mono, g.poly
                ));
            } else {
                return Err(Error::NotMonomialCase {
                    gen: g.poly.to_string(),
                });
            }
        }
        let mut entries = Vec::new();
        let mut keys: Vec<(String, Fq)> = Vec::new();
        for d in &self.chart.divisors {
            let h = match d.h {
                Some(h) => h,
                None => {
                    return Err(Error::Scenario(format!(
                        "divisor {} has no frozen exponent; run exponents first",
                        d.name
                    )))
                }
            };
            entries.push((d.name.clone(), h));
            keys.push((d.var.clone(), d.shift));
        }
        let mut meets = BTreeSet::new();
        for i in 0..keys.len() {
            for j in i + 1..keys.len() {
                // distinct parallel loci {v+c=0}, {v+c'=0} never meet
                if keys[i].0 != keys[j].0 || keys[i].1 == keys[j].1 {
                    meets.insert((i, j));
                }
            }
        }
        let m = MonomialAlgebra::new(entries, self.s, meets);
        report.push(format!("M = {m}"));
        for note in self.contact_violations()? {
            report.push(note);
        }
        self.monomial = Some(m.clone());
        Ok(m)
    }

    fn lift_one(&mut self, names: &[String], report: &mut Report) -> Result<()> {
        // map center entries (divisor names or plain variables) onto
        // coordinate divisors of the current chart
        let mut low_vars = Vec::new();
        let mut divisor_names = Vec::new();
        for n in names {
            let d = self
                .chart
                .divisors
                .iter()
                .find(|d| &d.name == n)
                .or_else(|| self.chart.divisor_by_var(n))
                .ok_or_else(|| Error::UnknownDivisorVar { name: n.clone() })?;
            if !d.is_coordinate(self.ring()) {
                return Err(Error::Scenario(format!(
                    "divisor {} sits at {{{}=0}}; rename before lifting",
                    d.name,
                    d.locus_string(self.ring())
                )));
            }
            low_vars.push(d.var.clone());
            divisor_names.push(d.name.clone());
        }
        let reborn_birth = if divisor_names.len() == 1 {
            self.chart
                .divisors
                .iter()
                .find(|d| d.name == divisor_names[0])
                .map(|d| d.birth)
        } else {
            None
        };
        let center = lift_center(&low_vars, &self.algebra, &self.z)?;
        for (var, alpha) in &center.translations {
            self.algebra = apply_translations(&self.algebra, &[(var.clone(), alpha.clone())]);
            self.chart.history.push(HistoryStep::Translate {
                var: var.clone(),
                alpha: alpha.clone(),
            });
            report.push(format!("translate: {var} -> {var} - ({alpha})"));
        }
        // chart variable: the first center variable in ring order, never z
        let ring = self.ring().clone();
        let chart_var = low_vars
            .iter()
            .min_by_key(|v| ring.var_index(v).unwrap())
            .cloned()
            .unwrap();
        report.push(format!(
            "lift <{}>: center {} chart {}",
            names.join(","),
            center,
            chart_var
        ));
        let center = Center {
            vars: center.vars.clone(),
            translations: Vec::new(),
        };
        self.do_blowup(center, &chart_var, report)?;

        // keep the combinatorial bookkeeping in lockstep with the chart
        let fresh_name = if divisor_names.len() == 1 {
            divisor_names[0].clone()
        } else {
            self.chart.divisors.last().unwrap().name.clone()
        };
        if let Some(m) = &mut self.monomial {
            let idx: Vec<usize> = divisor_names
                .iter()
                .map(|n| {
                    m.entries
                        .iter()
                        .position(|(en, _)| en == n)
                        .ok_or_else(|| Error::UnknownDivisorVar { name: n.clone() })
                })
                .collect::<Result<Vec<_>>>()?;
            let total: u32 = idx.iter().map(|&i| m.entries[i].1).sum();
            m.apply_combinatorial(&idx, &fresh_name);
            let new_h = if idx.len() == 1 {
                m.entries[idx[0]].1
            } else {
                total - m.s
            };
            let d = self.chart.divisors.last_mut().unwrap();
            d.name = fresh_name;
            d.h = Some(new_h);
        }
        for note in self.contact_violations()? {
            report.push(note);
        }
        self.describe(report);
        Ok(())
    }

    fn point_from_ints(&self, coords: &[i64]) -> Result<Vec<Fq>> {
        if coords.len() != self.ring().nvars() {
            return Err(Error::Scenario(format!(
                "point has {} coordinates; ring has {}",
                coords.len(),
                self.ring().nvars()
            )));
        }
        Ok(coords
            .iter()
            .map(|&c| self.ring().field.from_int(c))
            .collect())
    }

    /// Execute one step, appending its report lines.
    pub fn apply(&mut self, step: &Step, report: &mut Report) -> Result<StepData> {
        match step {
            Step::DiffClose => {
                self.algebra = self.algebra.diff_closure();
                report.push(format!("gens: {}", self.algebra));
                Ok(StepData::None)
            }
            Step::Elim => {
                let e = elimination_algebra(&self.algebra, &self.z);
                report.push(format!("elim: {e}"));
                self.elim = Some(e);
                Ok(StepData::None)
            }
            Step::Sing { ext } => {
                let base = &self.ring().field;
                let target_field = FieldCtx::new(base.p, *ext)?;
                let algebra = if *ext == base.k {
                    self.algebra.clone()
                } else {
                    let target = RingCtx::new(target_field.clone(), self.ring().vars.clone());
                    self.algebra.embed(&target)
                };
                let points = algebra.sing_ideal().enumerate_zero_set();
                report.push(format!(
                    "sing over GF({}^{}): {} points",
                    base.p,
                    ext,
                    points.len()
                ));
                for pt in &points {
                    let coords: Vec<String> =
                        pt.iter().map(|c| target_field.format(*c)).collect();
                    report.push(format!("  ({})", coords.join(", ")));
                }
                Ok(StepData::Sing(points))
            }
            Step::Blowup {
                center,
                chart,
                expect_gens,
                expect_elim,
            } => {
                let c = Center {
                    vars: center.clone(),
                    translations: Vec::new(),
                };
                report.push(format!("blowup center=<{}> chart={}", center.join(","), chart));
                let commutes = self.do_blowup(c, chart, report)?;
                self.describe(report);
                if let Some(expect) = expect_gens {
                    note_expectation(report, "gens", expect, &gen_strings(&self.algebra));
                }
                if let (Some(expect), Some(elim)) = (expect_elim, &self.elim) {
                    note_expectation(report, "elim", expect, &gen_strings(elim));
                }
                Ok(StepData::Commutes(commutes))
            }
            Step::Exponents => {
                let frozen = self.freeze_exponents(report)?;
                Ok(StepData::Exponents(frozen))
            }
            Step::Rename { from, to, shift } => {
                self.apply_rename(from, to, *shift)?;
                report.push(format!("rename: {to} = {from}+{shift}"));
                report.push(format!("chart: {}", self.ring().vars.join(", ")));
                report.push(format!("divisors: {}", self.divisor_descriptions()));
                report.push(format!("gens: {}", self.algebra));
                Ok(StepData::None)
            }
            Step::Clean => {
                self.apply_clean(report)?;
                report.push(format!("gens: {}", self.algebra));
                Ok(StepData::None)
            }
            Step::Monomial => {
                let m = self.build_monomial(report)?;
                Ok(StepData::Monomial(m.to_string()))
            }
            Step::Resolve => {
                let m = self.monomial.as_ref().ok_or_else(|| {
                    Error::Scenario("resolve needs the monomial step first".into())
                })?;
                let centers = resolve_monomial(m);
                let printed: Vec<String> = centers
                    .iter()
                    .map(|c| format!("<{}>", c.join(",")))
                    .collect();
                report.push(format!("centers: {}", printed.join(" ")));
                Ok(StepData::Centers(centers))
            }
            Step::Lift { centers } => {
                for c in centers {
                    self.lift_one(c, report)?;
                }
                Ok(StepData::None)
            }
            Step::Tau { point } => {
                let pt = self.point_from_ints(point)?;
                let t = tau(&self.algebra, &pt)?;
                let coords: Vec<String> = point.iter().map(|c| c.to_string()).collect();
                report.push(format!("tau at ({}) = {}", coords.join(","), t));
                Ok(StepData::Tau(t))
            }
            Step::Slope { divisor } => {
                let mf = self.monic_form()?;
                let s = match divisor {
                    Some(y) => {
                        let elim = self.elim.clone().unwrap_or_else(|| {
                            ReesAlgebra::empty(self.ring().without_var(&self.z))
                        });
                        let slope = divisor_slope(&mf, &elim, y);
                        report.push(format!("slope along {y}: {slope}"));
                        slope
                    }
                    None => {
                        let origin = vec![self.ring().field.zero(); self.ring().nvars()];
                        let slope = point_slope(&mf, &origin);
                        report.push(format!("slope at origin: {slope}"));
                        slope
                    }
                };
                Ok(StepData::Slope(s.to_string()))
            }
            Step::Show => {
                self.describe(report);
                Ok(StepData::None)
            }
        }
    }
}

fn gen_strings(alg: &ReesAlgebra) -> Vec<String> {
    alg.gens().iter().rev().map(|g| g.to_string()).collect()
}

fn note_expectation(report: &mut Report, what: &str, expected: &[String], derived: &[String]) {
    if expected != derived {
        report.push(format!(
            "note: expected {what} [{}]; derived [{}]",
            expected.join(", "),
            derived.join(", ")
        ));
    }
}

fn format_ratio(r: &Ratio<u64>) -> String {
    if r.is_integer() {
        format!("{}", r.to_integer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Run a scenario to completion. Any step error aborts the run; the report
/// is emitted either way, with the failing step recorded.
pub fn run_scenario(s: &Scenario) -> RunOutput {
    let mut report = Report::default();
    report.push(REPORT_VERSION);
    if !s.name.is_empty() {
        report.push(format!("scenario: {}", s.name));
    }
    report.push(format!("field: GF({}^{})", s.field.p, s.field.k));
    report.push(format!("vars: {}", s.vars.join(", ")));
    report.push(format!("transversal: {}", s.transversal));
    let mut steps = Vec::new();
    let mut state = match ResolutionState::from_scenario(s) {
        Ok(st) => st,
        Err(e) => {
            report.push(format!("verdict: error in setup: {e}"));
            report.error = Some((0, e.to_string()));
            return RunOutput { report, steps };
        }
    };
    report.push(format!("initial: {}", state.algebra));
    for (i, step) in s.steps.iter().enumerate() {
        report.push(format!("-- step {}: {}", i + 1, step.op_name()));
        match state.apply(step, &mut report) {
            Ok(data) => {
                steps.push(StepRecord {
                    op: step.op_name().to_string(),
                    state: state.clone(),
                    data,
                });
            }
            Err(e) => {
                let wrapped = Error::Step {
                    index: i + 1,
                    op: step.op_name().to_string(),
                    cause: Box::new(e),
                };
                report.push(format!("verdict: {wrapped}"));
                report.error = Some((i + 1, wrapped.to_string()));
                return RunOutput { report, steps };
            }
        }
    }
    report.push("verdict: ok".to_string());
    RunOutput { report, steps }
}

/// Unified-style diff between a golden report and an actual one; empty when
/// they agree byte for byte.
pub fn diff_reports(golden: &str, actual: &str) -> String {
    if golden == actual {
        return String::new();
    }
    let g: Vec<&str> = golden.lines().collect();
    let a: Vec<&str> = actual.lines().collect();
    let mut out = String::new();
    let max = g.len().max(a.len());
    for i in 0..max {
        let gl = g.get(i).copied();
        let al = a.get(i).copied();
        if gl != al {
            if let Some(l) = gl {
                out.push_str(&format!("-{:>4} {l}\n", i + 1));
            }
            if let Some(l) = al {
                out.push_str(&format!("+{:>4} {l}\n", i + 1));
            }
        }
    }
    out
}
