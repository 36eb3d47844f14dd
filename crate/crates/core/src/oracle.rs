//! Brute-force ground truth on finite spaces and hypothesis ⟹ conclusion
//! suites per theorem.
//!
//! | id | hypotheses | conclusions |
//! |----|------------|-------------|
//! | T1 | a02, a03, a04, a05 | Picard modulo d |
//! | T2 | a02, b02, b03 | Picard modulo d |
//! | T3 | e-metric, b04 on e, d ≤ e | Picard modulo d |
//! | T4 | phi comparison, c04, c05, c06 | Picard modulo (C, ≤), maximality |
//! | C1 | phi comparison, d01 | Picard modulo d |
//! | C2 | phi comparison, a03, b02, d02, d03, d04 | Picard modulo d |
//! | T6 | e05 – e09 | iii, iv, v |
//! | T7 | e05 – e09, ordering | iii – vi |
//! | T8 | e05 – e11 | iii – vi, with vi(b) read as `y ≤ z` |
//! | T9 | e05, e06, e12, f normal | iii, iv, v |
//!
//! Completeness, continuity and the closedness properties of the order hold
//! on any finite carrier; they are listed with `automatic = true`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::compfn::{
    check_comparison, check_divergence, check_normal_scalar, PointGaugeFamily, SamplingPlan,
    ScalarGauge,
};
use crate::contract::{
    check_contraction, check_e10_e11, check_monotone, progressive_sets, ContractionReport,
    ContractionVariant, MonotoneMode, MonotoneReport,
};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::instances::{gen_theorem_instance, trial_params, GeneratorParams};
use crate::picard::{PicardMode, PicardReport, StartVerdict};
use crate::spaces::{distance_axioms, Axiom, AxiomMode, Distance, FiniteSpace};

pub fn enumerate_fixed_points(space: &FiniteSpace) -> Result<Vec<usize>> {
    let t = space.selfmap()?;
    Ok((0..space.len()).filter(|&x| t[x] == x).collect())
}

/// `Tⁿx` with `n` the carrier size: the orbit has entered its terminal
/// cycle or fixed point by then.
fn terminal(t: &[usize], x: usize) -> usize {
    (0..t.len()).fold(x, |p, _| t[p])
}

/// Some `u ∈ X(T, ≤)` with `z ≤ u` but not `u ≤ z`.
pub fn maximality_violation(space: &FiniteSpace, z: usize) -> Result<Option<usize>> {
    let t = space.selfmap()?;
    Ok((0..space.len()).find(|&u| space.leq(u, t[u]) && space.leq(z, u) && !space.leq(u, z)))
}

/// Evaluates the Picard definition of `mode` by iterating every admissible
/// start `n` times, independently of the orbit engine.
pub fn brute_picard_check(space: &FiniteSpace, mode: PicardMode) -> Result<PicardReport> {
    let t = space.selfmap()?;
    let n = space.len();
    let fix_set = enumerate_fixed_points(space)?;
    let admissible: Vec<usize> = match mode {
        PicardMode::ModuloD => (0..n).collect(),
        PicardMode::ModuloCLeq => (0..n).filter(|&x| space.leq(x, t[x])).collect(),
    };
    let starts: Vec<StartVerdict> = admissible
        .iter()
        .map(|&x| {
            let z = terminal(t, x);
            let converged = t[z] == z;
            let ascent = (mode == PicardMode::ModuloCLeq).then(|| {
                converged && (0..=n).scan(x, |p, _| {
                    let cur = *p;
                    *p = t[cur];
                    Some(cur)
                })
                .all(|p| space.leq(p, z))
            });
            StartVerdict {
                start: x,
                limit: converged.then_some(z),
                converged,
                ascent,
            }
        })
        .collect();

    let nonconvergent_witness = starts.iter().find(|s| !s.converged).map(|s| s.start);
    let all_converge = nonconvergent_witness.is_none();
    let mut rep = PicardReport {
        mode,
        fix_set: fix_set.clone(),
        singleton: false,
        singleton_witness: None,
        starts,
        all_converge,
        nonconvergent_witness,
        ascent: None,
        ascent_witness: None,
        maximality: None,
        maximality_witness: None,
        is_picard: false,
    };
    match mode {
        PicardMode::ModuloD => {
            rep.singleton = fix_set.len() == 1;
            if fix_set.len() > 1 {
                rep.singleton_witness = Some((fix_set[0], fix_set[1]));
            }
            rep.is_picard = rep.singleton && all_converge;
        }
        PicardMode::ModuloCLeq => {
            for &z in &fix_set {
                for &w in &fix_set {
                    if z != w && space.leq(z, w) && rep.singleton_witness.is_none() {
                        rep.singleton_witness = Some((z, w));
                    }
                }
                if rep.maximality_witness.is_none() {
                    rep.maximality_witness = maximality_violation(space, z)?.map(|u| (z, u));
                }
            }
            rep.singleton = rep.singleton_witness.is_none();
            rep.ascent_witness = rep
                .starts
                .iter()
                .find(|s| s.ascent != Some(true))
                .map(|s| s.start);
            rep.ascent = Some(rep.ascent_witness.is_none());
            rep.maximality = Some(rep.maximality_witness.is_none());
            rep.is_picard = rep.singleton && all_converge && rep.ascent == Some(true);
        }
    }
    Ok(rep)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    T1,
    T2,
    T3,
    T4,
    C1,
    C2,
    T6,
    T7,
    T8,
    T9,
}

impl TheoremId {
    pub const ALL: [TheoremId; 10] = [
        TheoremId::T1,
        TheoremId::T2,
        TheoremId::T3,
        TheoremId::T4,
        TheoremId::C1,
        TheoremId::C2,
        TheoremId::T6,
        TheoremId::T7,
        TheoremId::T8,
        TheoremId::T9,
    ];

    /// Accepts `T2`, `t2`, and suffixed forms such as `T3-Maia`.
    pub fn parse(s: &str) -> Result<Self> {
        let head = s.split('-').next().unwrap_or("").to_ascii_uppercase();
        Self::ALL
            .into_iter()
            .find(|t| t.to_string() == head)
            .ok_or_else(|| Error::Input(format!("unknown theorem {s:?}")))
    }

    /// Names of the checked (non-automatic) hypotheses, in report order.
    pub fn hypothesis_names(self) -> &'static [&'static str] {
        match self {
            TheoremId::T1 => &["a02", "a03", "a04", "a05"],
            TheoremId::T2 => &["a02", "b02", "b03"],
            TheoremId::T3 => &["e-metric", "b04", "subordinated"],
            TheoremId::T4 => &["phi-comparison", "c04", "c05", "c06"],
            TheoremId::C1 => &["phi-comparison", "d01"],
            TheoremId::C2 => &["phi-comparison", "a03", "b02", "d02", "d03", "d04"],
            TheoremId::T6 => &["e05", "e06", "e07", "e08", "e09"],
            TheoremId::T7 => &["e05", "e06", "e07", "e08", "e09", "ordering"],
            TheoremId::T8 => &["e05", "e06", "e07", "e08", "e09", "e10", "e11"],
            TheoremId::T9 => &["e05", "e06", "e12", "normal"],
        }
    }

    fn automatic_names(self) -> &'static [&'static str] {
        match self {
            TheoremId::T1 | TheoremId::T2 | TheoremId::T3 => &["complete", "continuous"],
            TheoremId::T4 => &["ao-complete", "ao-continuous", "ao-self-closed"],
            TheoremId::C1 | TheoremId::C2 => &["o-complete", "o-continuous"],
            TheoremId::T6 | TheoremId::T9 => {
                &["quasi-order-complete", "self-closed", "left-continuous"]
            }
            TheoremId::T7 | TheoremId::T8 => &["quasi-order-complete", "interval-closed"],
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Objects a suite may need; which ones depends on the theorem.
#[derive(Clone, Debug)]
pub struct SuiteParams {
    pub alpha: Option<f64>,
    pub phi: Option<ScalarGauge>,
    pub family: Option<PointGaugeFamily>,
    /// The second distance `e` for T3.
    pub e_table: Option<Vec<Vec<f64>>>,
    /// Tolerance for inequalities evaluated on floating-point tables.
    pub slack: f64,
    /// A hypothesis excluded from the antecedent.
    pub drop: Option<String>,
    pub plan: SamplingPlan,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            alpha: None,
            phi: None,
            family: None,
            e_table: None,
            slack: 0.0,
            drop: None,
            plan: SamplingPlan::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    /// True on every finite carrier; recorded, not tested.
    pub automatic: bool,
    pub witness: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    fn new(name: &str, witness: Option<Vec<usize>>) -> Self {
        Check {
            name: name.into(),
            holds: witness.is_none(),
            automatic: false,
            witness,
            note: None,
        }
    }

    fn flag(name: &str, holds: bool) -> Self {
        Check {
            name: name.into(),
            holds,
            automatic: false,
            witness: None,
            note: None,
        }
    }

    fn automatic(name: &str) -> Self {
        Check {
            name: name.into(),
            holds: true,
            automatic: true,
            witness: None,
            note: Some("holds: finite carrier".into()),
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    fn from_contraction(name: &str, rep: ContractionReport) -> Self {
        match rep.witness {
            Some(w) => Check::new(name, Some(vec![w.x, w.y]))
                .with_note(format!("lhs {} > rhs {}", w.lhs, w.rhs)),
            None => Check::flag(name, rep.holds),
        }
    }

    fn from_monotone(name: &str, rep: MonotoneReport) -> Self {
        Check::new(name, rep.witness.map(|(x, y)| vec![x, y]))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteVerdict {
    pub theorem: TheoremId,
    pub hypotheses: Vec<Check>,
    pub conclusions: Vec<Check>,
    pub dropped: Option<String>,
    /// Every hypothesis except the dropped one holds.
    pub hypotheses_hold: bool,
    pub conclusions_hold: bool,
    pub implication_respected: bool,
}

impl SuiteVerdict {
    pub fn hypothesis(&self, name: &str) -> Option<&Check> {
        self.hypotheses.iter().find(|c| c.name == name)
    }

    pub fn conclusion(&self, name: &str) -> Option<&Check> {
        self.conclusions.iter().find(|c| c.name == name)
    }
}

fn need<'a, T>(v: &'a Option<T>, what: &str, theorem: TheoremId) -> Result<&'a T> {
    v.as_ref()
        .ok_or_else(|| Error::Input(format!("theorem {theorem} needs parameter {what}")))
}

pub fn theorem_suite(
    space: &FiniteSpace,
    theorem: TheoremId,
    params: &SuiteParams,
) -> Result<SuiteVerdict> {
    let t = space.selfmap()?;
    if let Some(d) = &params.drop {
        if !theorem.hypothesis_names().contains(&d.as_str()) {
            return Err(Error::Input(format!(
                "theorem {theorem} has no hypothesis {d:?}; expected one of {:?}",
                theorem.hypothesis_names()
            )));
        }
    }
    let slack = params.slack;
    let mut hyps = Vec::new();
    for &name in theorem.hypothesis_names() {
        hyps.push(hypothesis(space, theorem, name, params, slack)?);
    }
    hyps.extend(theorem.automatic_names().iter().map(|n| Check::automatic(n)));

    let conclusions = match theorem {
        TheoremId::T1 | TheoremId::T2 | TheoremId::T3 | TheoremId::C1 | TheoremId::C2 => {
            let rep = brute_picard_check(space, PicardMode::ModuloD)?;
            vec![
                Check::new("fix-singleton", (!rep.singleton).then(|| rep.fix_set.clone())),
                Check::new("orbits-converge", rep.nonconvergent_witness.map(|x| vec![x])),
            ]
        }
        TheoremId::T4 => {
            let rep = brute_picard_check(space, PicardMode::ModuloCLeq)?;
            vec![
                Check::new("orbits-converge", rep.nonconvergent_witness.map(|x| vec![x])),
                Check::new("ascent", rep.ascent_witness.map(|x| vec![x])),
                Check::new("le-singleton", rep.singleton_witness.map(|(a, b)| vec![a, b])),
                Check::new("maximality", rep.maximality_witness.map(|(a, b)| vec![a, b])),
            ]
        }
        TheoremId::T6 | TheoremId::T9 => limit_conclusions(space, t, None),
        TheoremId::T7 => limit_conclusions(space, t, Some(ViReading::Equal)),
        TheoremId::T8 => limit_conclusions(space, t, Some(ViReading::Below)),
    };

    let hypotheses_hold = hyps
        .iter()
        .all(|c| c.holds || params.drop.as_deref() == Some(c.name.as_str()));
    let conclusions_hold = conclusions.iter().all(|c| c.holds);
    Ok(SuiteVerdict {
        theorem,
        hypotheses: hyps,
        conclusions,
        dropped: params.drop.clone(),
        hypotheses_hold,
        conclusions_hold,
        implication_respected: !hypotheses_hold || conclusions_hold,
    })
}

fn hypothesis(
    space: &FiniteSpace,
    theorem: TheoremId,
    name: &str,
    params: &SuiteParams,
    slack: f64,
) -> Result<Check> {
    let t = space.selfmap()?;
    let n = space.len();
    let phi = || need(&params.phi, "phi", theorem);
    let family = || need(&params.family, "family", theorem);
    let y_set = || (0..n).filter(move |&x| space.leq(x, t[x]));
    Ok(match name {
        "a02" => {
            let alpha = *need(&params.alpha, "alpha", theorem)?;
            if !(alpha > 0.0 && alpha < 1.0) {
                Check::flag(name, false).with_note(format!("alpha {alpha} outside (0, 1)"))
            } else {
                let v = ContractionVariant::OrderLinear { alpha };
                Check::from_contraction(name, check_contraction(space, space, &v, slack)?)
            }
        }
        "a03" => Check::flag(name, !progressive_sets(space)?.comp.is_empty()),
        "a04" => Check::from_monotone(name, check_monotone(space, MonotoneMode::Either)?),
        "a05" => Check::new(
            name,
            space.check_bounds_and_directedness().a05_witness.map(|(x, y)| vec![x, y]),
        ),
        "b02" => Check::from_monotone(name, check_monotone(space, MonotoneMode::Comparability)?),
        "b03" => {
            let blocks = space.chain_components();
            Check::new(name, (blocks.len() > 1).then(|| vec![blocks[0][0], blocks[1][0]]))
        }
        "e-metric" => {
            let e = need(&params.e_table, "e_table", theorem)?;
            check_table(space, e)?;
            let bad = distance_axioms(e.as_slice(), true, slack)
                .into_iter()
                .find(|c| !c.holds);
            match bad {
                Some(c) => Check::new(name, c.witness).with_note(format!("{:?} fails", c.axiom)),
                None => Check::flag(name, true),
            }
        }
        "b04" => {
            let e = need(&params.e_table, "e_table", theorem)?;
            let alpha = *need(&params.alpha, "alpha", theorem)?;
            check_table(space, e)?;
            if !(alpha > 0.0 && alpha < 1.0) {
                Check::flag(name, false).with_note(format!("alpha {alpha} outside (0, 1)"))
            } else {
                let v = ContractionVariant::PlainLinear { alpha };
                Check::from_contraction(name, check_contraction(space, e.as_slice(), &v, slack)?)
            }
        }
        "subordinated" => {
            let e = need(&params.e_table, "e_table", theorem)?;
            check_table(space, e)?;
            let w = (0..n)
                .flat_map(|x| (0..n).map(move |y| (x, y)))
                .find(|&(x, y)| space.dist(x, y) > e[x][y] + slack);
            Check::new(name, w.map(|(x, y)| vec![x, y]))
        }
        "phi-comparison" => {
            let rep = check_comparison(phi()?, &params.plan)?;
            let c = Check::flag(name, rep.passes());
            match rep.first_failure {
                Some(f) => c.with_note(format!("{} fails at t = {}", f.check, f.at)),
                None => c,
            }
        }
        "c04" | "e05" => Check::flag(name, !progressive_sets(space)?.leq.is_empty()),
        "c05" | "e06" => Check::from_monotone(name, check_monotone(space, MonotoneMode::Leq)?),
        "c06" => {
            let v = ContractionVariant::EmOrder { phi: phi()?.clone() };
            Check::from_contraction(name, check_contraction(space, space, &v, slack)?)
        }
        "d01" => {
            let v = ContractionVariant::EmPlain { phi: phi()?.clone() };
            Check::from_contraction(name, check_contraction(space, space, &v, slack)?)
        }
        "d02" => {
            let v = ContractionVariant::PhiOrder { phi: phi()?.clone() };
            Check::from_contraction(name, check_contraction(space, space, &v, slack)?)
        }
        "d03" => Check::new(
            name,
            space
                .check_bounds_and_directedness()
                .d03_witness
                .map(|(x, y, z)| vec![x, y, z]),
        ),
        "d04" => Check::new(
            name,
            space.check_bounds_and_directedness().d04_witness.map(|(x, y)| vec![x, y]),
        ),
        "e07" => {
            let v = ContractionVariant::Iterative { family: family()?.clone() };
            Check::from_contraction(name, check_contraction(space, space, &v, slack)?)
        }
        "e08" => {
            let f = family()?;
            check_family(space, f)?;
            let mut bad = None;
            for x in y_set() {
                let g = f.diagonal(x);
                let f1 = check_comparison(&g, &params.plan)?.f1_member;
                if !f1 || check_divergence(&g)?.is_some() {
                    bad = Some(vec![x]);
                    break;
                }
            }
            Check::new(name, bad)
        }
        "e09" => {
            let f = family()?;
            check_family(space, f)?;
            Check::new(name, composite_decay(space, f, &params.plan)?.map(|x| vec![x]))
        }
        "e10" | "e11" => {
            let rep = check_e10_e11(family()?, space, &params.plan)?;
            if name == "e10" {
                Check::new(name, rep.e10_witness.map(|(x, _)| vec![x]))
            } else {
                Check::new(name, rep.e11_witness.map(|(x, _)| vec![x]))
            }
        }
        "e12" => {
            let f = family()?;
            if f.uniform_gauge().is_none() {
                return Err(Error::Input(format!(
                    "theorem {theorem} needs a uniform family (one gauge for all points)"
                )));
            }
            let v = ContractionVariant::IterativeUniform { family: f.clone() };
            Check::from_contraction(name, check_contraction(space, space, &v, slack)?)
        }
        "normal" => {
            let g = family()?.uniform_gauge().ok_or_else(|| {
                Error::Input(format!("theorem {theorem} needs a uniform family"))
            })?;
            Check::flag(name, check_normal_scalar(g, &params.plan)?.passes())
        }
        "ordering" => {
            let rep = space.check_axioms(AxiomMode::Order);
            Check::new(name, rep.get(Axiom::Antisymmetric).and_then(|c| c.witness.clone()))
        }
        other => return Err(Error::Input(format!("unknown hypothesis {other:?}"))),
    })
}

fn check_table(space: &FiniteSpace, e: &[Vec<f64>]) -> Result<()> {
    if e.len() != space.len() || e.iter().any(|r| r.len() != space.len()) {
        return Err(Error::Input(format!(
            "e_table must be {n}×{n}",
            n = space.len()
        )));
    }
    Ok(())
}

fn check_family(space: &FiniteSpace, f: &PointGaugeFamily) -> Result<()> {
    if f.len() != space.len() {
        return Err(Error::Arity {
            expected: space.len(),
            got: f.len(),
        });
    }
    Ok(())
}

/// First `x₀ ∈ Y` at which `g(xₖ)∘…∘g(x₀)(t)` fails to reach the decay
/// tolerance within the iterate budget, for some sampled `t`.
fn composite_decay(
    space: &FiniteSpace,
    f: &PointGaugeFamily,
    plan: &SamplingPlan,
) -> Result<Option<usize>> {
    let t = space.selfmap()?;
    let n = space.len();
    let diag: Vec<ScalarGauge> = (0..n).map(|x| f.diagonal(x)).collect();
    let next: Vec<usize> = (0..n)
        .map(|x| space.iterate_map(x, f.exponent(x)))
        .collect::<Result<_>>()?;
    let pts = plan.points();
    for x0 in (0..n).filter(|&x| space.leq(x, t[x])) {
        for &s in &pts {
            let (mut v, mut p) = (s, x0);
            let mut decayed = false;
            for _ in 0..=plan.iterate_budget {
                if v <= plan.decay_tol {
                    decayed = true;
                    break;
                }
                if v > 1e150 {
                    break;
                }
                v = diag[p].eval(v)?;
                p = next[p];
            }
            if !decayed {
                return Ok(Some(x0));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Copy)]
enum ViReading {
    /// `z ≤ y ∈ Y ⟹ z = y`
    Equal,
    /// `z ≤ y ∈ Y ⟹ y ≤ z`
    Below,
}

/// Conclusions iii – v, plus vi(a)/(b) when a reading is given.
fn limit_conclusions(space: &FiniteSpace, t: &[usize], vi: Option<ViReading>) -> Vec<Check> {
    let n = space.len();
    let ys: Vec<usize> = (0..n).filter(|&x| space.leq(x, t[x])).collect();
    let limit = |x: usize| {
        let z = terminal(t, x);
        (t[z] == z).then_some(z)
    };
    let mut out = vec![
        Check::flag("iii", (0..n).any(|x| t[x] == x)),
        Check::new("iv", ys.iter().find(|&&x| limit(x).is_none()).map(|&x| vec![x])),
    ];
    let v_bad = ys.iter().find_map(|&x| {
        ys.iter()
            .find(|&&y| space.is_comparable(x, y) && (limit(x).is_none() || limit(x) != limit(y)))
            .map(|&y| vec![x, y])
    });
    out.push(Check::new("v", v_bad));
    if let Some(reading) = vi {
        let a_bad = ys
            .iter()
            .find(|&&x| limit(x).is_none_or(|z| !space.leq(x, z)))
            .map(|&x| vec![x]);
        let b_bad = ys.iter().find_map(|&x| {
            let z = limit(x)?;
            ys.iter()
                .find(|&&y| {
                    space.leq(z, y)
                        && match reading {
                            ViReading::Equal => z != y,
                            ViReading::Below => !space.leq(y, z),
                        }
                })
                .map(|&y| vec![x, y])
        });
        out.push(Check::new("vi-a", a_bad));
        out.push(Check::new("vi-b", b_bad));
    }
    out
}

/// Tally of a generated corpus run through one suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub theorem: TheoremId,
    pub count: usize,
    pub generated: usize,
    pub hypotheses_passed: usize,
    /// Trial indices where every hypothesis held and a conclusion failed.
    pub violations: Vec<usize>,
    pub generation_failures: Vec<usize>,
}

impl CorpusReport {
    pub fn implication_rate(&self) -> f64 {
        if self.hypotheses_passed == 0 {
            return 1.0;
        }
        1.0 - self.violations.len() as f64 / self.hypotheses_passed as f64
    }
}

/// Generates `count` instances with [`trial_params`] and runs the suite on
/// each.
pub fn run_corpus(exec: Exec, base: &GeneratorParams, count: usize) -> Result<CorpusReport> {
    base.validate()?;
    let outcomes = exec.map(count, |i| {
        let p = trial_params(base, i);
        let spec = gen_theorem_instance(&p).ok()?;
        let mut sp = spec.suite_params(base.target).ok()?;
        sp.drop = base.drop.clone();
        theorem_suite(&spec.space, base.target, &sp).ok()
    });
    let mut rep = CorpusReport {
        theorem: base.target,
        count,
        generated: 0,
        hypotheses_passed: 0,
        violations: Vec::new(),
        generation_failures: Vec::new(),
    };
    for (i, o) in outcomes.into_iter().enumerate() {
        match o {
            None => rep.generation_failures.push(i),
            Some(v) => {
                rep.generated += 1;
                if v.hypotheses_hold {
                    rep.hypotheses_passed += 1;
                    if !v.conclusions_hold {
                        rep.violations.push(i);
                    }
                }
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compfn::{GaugeSpec, PointFamilySpec, PointKernel};
    use crate::picard::classify_picard;

    fn unit(n: usize) -> Vec<Vec<f64>> {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { 0.0 } else { 1.0 }).collect())
            .collect()
    }

    fn grid() -> FiniteSpace {
        let vals: Vec<f64> = [0.0, 1.0, 3.0, 7.0, 15.0].iter().map(|v| v / 16.0).collect();
        let dist = vals
            .iter()
            .map(|a| vals.iter().map(|b| (a - b).abs()).collect())
            .collect();
        let pairs: Vec<(usize, usize)> = (0..4).map(|i| (i, i + 1)).collect();
        FiniteSpace::from_pairs(dist, &pairs, Some(vec![0, 0, 1, 2, 3])).unwrap()
    }

    fn alpha(a: f64) -> SuiteParams {
        SuiteParams {
            alpha: Some(a),
            ..SuiteParams::default()
        }
    }

    #[test]
    fn fixed_point_sets() {
        let id = FiniteSpace::from_pairs(unit(3), &[], Some(vec![0, 1, 2])).unwrap();
        assert_eq!(enumerate_fixed_points(&id).unwrap(), vec![0, 1, 2]);
        let c = id.with_selfmap(vec![1, 1, 1]).unwrap();
        assert_eq!(enumerate_fixed_points(&c).unwrap(), vec![1]);
        let cyc = FiniteSpace::from_pairs(unit(2), &[], Some(vec![1, 0])).unwrap();
        assert!(enumerate_fixed_points(&cyc).unwrap().is_empty());
        assert!(matches!(
            enumerate_fixed_points(&FiniteSpace::from_pairs(unit(1), &[], None).unwrap()),
            Err(Error::MissingSelfmap)
        ));
    }

    #[test]
    fn brute_examples() {
        let c = FiniteSpace::from_pairs(unit(3), &[], Some(vec![1, 1, 1])).unwrap();
        assert!(brute_picard_check(&c, PicardMode::ModuloD).unwrap().is_picard);

        let two = FiniteSpace::from_pairs(unit(2), &[], Some(vec![0, 1])).unwrap();
        let r = brute_picard_check(&two, PicardMode::ModuloD).unwrap();
        assert!(!r.is_picard && !r.singleton);

        let g = grid();
        let r = brute_picard_check(&g, PicardMode::ModuloCLeq).unwrap();
        assert!(r.is_picard);
        assert_eq!(r.maximality, Some(true));
        assert_eq!(r.starts.len(), 1);
        for mode in [PicardMode::ModuloD, PicardMode::ModuloCLeq] {
            for s in [&c, &two, &g] {
                assert_eq!(brute_picard_check(s, mode).unwrap(), classify_picard(s, mode).unwrap());
            }
        }
    }

    #[test]
    fn suite_examples() {
        let g = grid();
        let v = theorem_suite(&g, TheoremId::T2, &alpha(0.5)).unwrap();
        assert!(v.hypotheses_hold && v.conclusions_hold && v.implication_respected);

        let two = FiniteSpace::from_pairs(unit(2), &[], Some(vec![0, 1])).unwrap();
        let v = theorem_suite(&two, TheoremId::T2, &alpha(0.5)).unwrap();
        assert!(!v.hypothesis("b03").unwrap().holds);
        assert!(!v.conclusions_hold);
        assert!(!v.hypotheses_hold && v.implication_respected);

        let dropped = SuiteParams {
            drop: Some("b03".into()),
            ..alpha(0.5)
        };
        let v = theorem_suite(&two, TheoremId::T2, &dropped).unwrap();
        assert!(v.hypotheses_hold && !v.implication_respected);

        let f = PointGaugeFamily::from_spec(&PointFamilySpec {
            exponents: vec![1; 5],
            kernel: PointKernel::Lead {
                gauge: GaugeSpec::Linear { alpha: 0.5 },
            },
        })
        .unwrap();
        let p = SuiteParams {
            family: Some(f),
            ..SuiteParams::default()
        };
        let v = theorem_suite(&g, TheoremId::T9, &p).unwrap();
        assert!(v.hypotheses_hold && v.conclusions_hold);
        assert_eq!(v.conclusions.len(), 3);
    }

    #[test]
    fn suite_errors() {
        let g = grid();
        let err = theorem_suite(&g, TheoremId::T4, &SuiteParams::default()).unwrap_err();
        assert!(matches!(err, Error::Input(m) if m.contains("phi")));
        let bad_drop = SuiteParams {
            drop: Some("c05".into()),
            ..alpha(0.5)
        };
        assert!(theorem_suite(&g, TheoremId::T2, &bad_drop).is_err());
        assert_eq!(TheoremId::parse("T3-Maia").unwrap(), TheoremId::T3);
        assert_eq!(TheoremId::parse("c2").unwrap(), TheoremId::C2);
        assert!(TheoremId::parse("T5").is_err());
    }

    #[test]
    fn t4_and_t8_readings() {
        // 0 ≤ 1 ≤ 0 (merged), 2 above both; T collapses onto 2
        let s = FiniteSpace::from_pairs(unit(3), &[(0, 1), (1, 0), (1, 2)], Some(vec![2, 2, 2]))
            .unwrap();
        let p = SuiteParams {
            phi: Some(ScalarGauge::linear(0.5)),
            ..SuiteParams::default()
        };
        let v = theorem_suite(&s, TheoremId::T4, &p).unwrap();
        assert!(v.hypotheses_hold && v.conclusions_hold);

        // z = 0 fixed, y = 1 ≥ z in Y with y ≤ z: literal vi(b) fails, y ≤ z holds
        let q = FiniteSpace::from_pairs(unit(2), &[(0, 1), (1, 0)], Some(vec![0, 0])).unwrap();
        let f = PointGaugeFamily::from_spec(&PointFamilySpec {
            exponents: vec![1; 2],
            kernel: PointKernel::MaxTail { coef: 0.5 },
        })
        .unwrap();
        let p = SuiteParams {
            family: Some(f),
            ..SuiteParams::default()
        };
        let t8 = theorem_suite(&q, TheoremId::T8, &p).unwrap();
        assert!(t8.hypotheses_hold && t8.conclusions_hold, "{t8:#?}");
        let t7 = theorem_suite(&q, TheoremId::T7, &p).unwrap();
        assert!(!t7.hypothesis("ordering").unwrap().holds);
        assert!(!t7.conclusion("vi-b").unwrap().holds);
        assert!(t7.implication_respected);
    }
}
