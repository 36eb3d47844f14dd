//! Iteration engines: Picard orbits with gauge certificates, the block
//! recursion for per-point exponents, and Picard-operator classification.
//!
//! On a finite carrier with a sufficient distance an orbit converges exactly
//! when it reaches a literal fixed point, and every orbit either does so or
//! enters a cycle within `n` steps.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::compfn::{gamma_beta, PointGaugeFamily, ScalarGauge};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::spaces::{Distance, FiniteSpace};

/// Default certificate slack for derived (floating-point) tables.
pub const DERIVED_SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Termination {
    Fixed,
    Cycle,
    MaxSteps,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitTrace {
    pub start: usize,
    /// `x₀, x₁, …`; for a cycle the revisited point is repeated at the end.
    pub points: Vec<usize>,
    /// `e(xₙ, xₙ₊₁)` for consecutive recorded points.
    pub step_distances: Vec<f64>,
    /// `xᵢ ≤ xⱼ` for all recorded `i ≤ j`.
    pub ascending: bool,
    /// `φⁿ(e(x₀, x₁))`, when a gauge is attached.
    pub bounds: Option<Vec<f64>>,
    pub terminated_at: usize,
    pub reason: Termination,
    /// Index of the first occurrence of the revisited point.
    pub cycle_start: Option<usize>,
}

impl OrbitTrace {
    pub fn last(&self) -> usize {
        *self.points.last().expect("orbit has a start")
    }

    /// The fixed point reached, if any.
    pub fn limit(&self) -> Option<usize> {
        (self.reason == Termination::Fixed).then(|| self.last())
    }

    /// Attaches `φⁿ(e(x₀, x₁))` for every recorded step.
    pub fn with_bounds(mut self, phi: &ScalarGauge) -> Result<Self> {
        let first = self.step_distances.first().copied().unwrap_or(0.0);
        let mut bounds = Vec::with_capacity(self.step_distances.len());
        let mut b = first;
        for _ in 0..self.step_distances.len() {
            bounds.push(b);
            b = phi.eval(b)?;
        }
        self.bounds = Some(bounds);
        Ok(self)
    }

    /// CSV with header `step,point,step_distance,bound`; the last row of a
    /// trace has empty distance and bound columns.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("step,point,step_distance,bound\n");
        for (k, p) in self.points.iter().enumerate() {
            let dist = self.step_distances.get(k).map(|v| v.to_string()).unwrap_or_default();
            let bound = self
                .bounds
                .as_ref()
                .and_then(|b| b.get(k))
                .map(|v| v.to_string())
                .unwrap_or_default();
            let _ = writeln!(out, "{k},{p},{dist},{bound}");
        }
        out
    }
}

/// Iterates `T` from `x` until a fixed point, a revisited point, or
/// `max_steps` applications.
pub fn orbit<D: Distance + ?Sized>(
    space: &FiniteSpace,
    metric: &D,
    x: usize,
    max_steps: usize,
) -> Result<OrbitTrace> {
    let t = space.selfmap()?;
    check_point(space, x)?;
    check_metric(space, metric)?;
    let mut points = vec![x];
    let mut seen = vec![usize::MAX; space.len()];
    seen[x] = 0;
    let mut p = x;
    let (reason, cycle_start) = loop {
        if t[p] == p {
            break (Termination::Fixed, None);
        }
        if points.len() > max_steps {
            break (Termination::MaxSteps, None);
        }
        p = t[p];
        points.push(p);
        if seen[p] != usize::MAX {
            break (Termination::Cycle, Some(seen[p]));
        }
        seen[p] = points.len() - 1;
    };
    let step_distances = points.windows(2).map(|w| metric.dist(w[0], w[1])).collect();
    let ascending = points
        .iter()
        .enumerate()
        .all(|(i, &a)| points[i..].iter().all(|&b| space.leq(a, b)));
    Ok(OrbitTrace {
        start: x,
        terminated_at: points.len() - 1,
        points,
        step_distances,
        ascending,
        bounds: None,
        reason,
        cycle_start,
    })
}

fn check_point(space: &FiniteSpace, x: usize) -> Result<()> {
    if x >= space.len() {
        return Err(Error::Input(format!(
            "point {x} out of range for a space of {} points",
            space.len()
        )));
    }
    Ok(())
}

fn check_metric<D: Distance + ?Sized>(space: &FiniteSpace, metric: &D) -> Result<()> {
    if metric.size() != space.len() {
        return Err(Error::Input(format!(
            "metric has {} points, space has {}",
            metric.size(),
            space.len()
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub final_step_distance: f64,
    pub final_bound: f64,
    /// Every step satisfied `e(xₙ, xₙ₊₁) ≤ φⁿ(e(x₀, x₁)) + slack`.
    pub bound_respected: bool,
    pub first_violation: Option<usize>,
    pub slack: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FixedPointResult {
    pub start: usize,
    pub fixed_point: Option<usize>,
    pub steps: usize,
    pub converged: bool,
    /// The repeating segment when the orbit cycles.
    pub cycle: Option<Vec<usize>>,
    pub certificate: Certificate,
    pub trace: OrbitTrace,
}

/// Runs the orbit of `x` to termination and certifies every step against
/// `φⁿ(e(x₀, x₁))`. Non-convergence is a result, not an error.
pub fn run_picard<D: Distance + ?Sized>(
    space: &FiniteSpace,
    metric: &D,
    x: usize,
    phi: &ScalarGauge,
    slack: f64,
) -> Result<FixedPointResult> {
    let trace = orbit(space, metric, x, space.len())?.with_bounds(phi)?;
    let bounds = trace.bounds.as_deref().unwrap_or(&[]);
    let first_violation = trace
        .step_distances
        .iter()
        .zip(bounds)
        .position(|(d, b)| *d > b + slack);
    let certificate = Certificate {
        final_step_distance: trace.step_distances.last().copied().unwrap_or(0.0),
        final_bound: bounds.last().copied().unwrap_or(0.0),
        bound_respected: first_violation.is_none(),
        first_violation,
        slack,
    };
    let cycle = trace.cycle_start.map(|s| trace.points[s..].to_vec());
    Ok(FixedPointResult {
        start: x,
        fixed_point: trace.limit(),
        steps: trace.step_distances.len(),
        converged: trace.reason == Termination::Fixed,
        cycle,
        certificate,
        trace,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CauchyReport {
    pub gamma: f64,
    pub beta: f64,
    /// First rank from which every recorded step is below `β/2`.
    pub rank_m: Option<usize>,
    pub holds: bool,
    pub pairs_checked: usize,
    /// First `(k, n)` with `E(k, n) ≥ γ + β/2`, or the offending step `(k, 1)`
    /// when no rank exists.
    pub violation: Option<(usize, usize)>,
}

/// Replays the Cauchy induction on a recorded orbit: finds `m` with
/// `E(k, 1) < β/2` for `k ≥ m`, then checks `E(k, n) = e(xₖ, xₖ₊ₙ) < γ + β/2`
/// for every recorded `k ≥ m`. `β` is capped at `γ/2` so that `β < γ`.
pub fn cauchy_certificate<D: Distance + ?Sized>(
    trace: &OrbitTrace,
    phi: &ScalarGauge,
    gamma: f64,
    metric: &D,
) -> Result<CauchyReport> {
    let beta = gamma_beta(phi, gamma)?
        .ok_or_else(|| Error::Precondition(format!("no beta found for gamma = {gamma}")))?
        .min(gamma / 2.0);
    let steps = &trace.step_distances;
    let half = beta / 2.0;
    let mut rep = CauchyReport {
        gamma,
        beta,
        rank_m: None,
        holds: false,
        pairs_checked: 0,
        violation: None,
    };
    if trace.reason != Termination::Fixed {
        if let Some(k) = steps.iter().position(|&s| s >= half) {
            rep.violation = Some((k, 1));
            return Ok(rep);
        }
    }
    let m = steps.iter().rposition(|&s| s >= half).map_or(0, |k| k + 1);
    rep.rank_m = Some(m);
    let pts = &trace.points;
    for k in m..pts.len() {
        for n in 0..pts.len() - k {
            rep.pairs_checked += 1;
            if metric.dist(pts[k], pts[k + n]) >= gamma + half {
                rep.violation = Some((k, n));
                return Ok(rep);
            }
        }
    }
    rep.holds = true;
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Block {
    /// `xᵢ`
    pub point: usize,
    /// `nᵢ = n(xᵢ)`
    pub exponent: usize,
    /// `mᵢ = n₀ + … + nᵢ`
    pub cumulative: usize,
    /// `xᵢ₊₁ = T^{nᵢ} xᵢ`
    pub next: usize,
    /// `g(xᵢ)∘…∘g(x₀)(t₀)`
    pub bound: f64,
    /// `max_m d(xᵢ₊₁, Tᵐ xᵢ₊₁)` over the full orbit.
    pub realized: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VariableOrbitTrace {
    pub start: usize,
    /// `max{d(x, Tx), …, d(x, T^{n(x)}x)}`
    pub alpha: f64,
    /// Bound with `d(x₀, Tᵐx₀) ≤ t₀` for all `m`; `None` when the search
    /// found no admissible value.
    pub t0: Option<f64>,
    pub normality_witnessed: bool,
    /// `t₀` dominates every realized `d(x₀, Tᵐx₀)`.
    pub t0_dominates: bool,
    pub blocks: Vec<Block>,
    /// Realized distances never exceed their composite bounds.
    pub bounds_respected: bool,
    /// The orbit `Tᵐx₀` is increasing.
    pub ascending: bool,
    /// The plain orbit of `x₀`, used for the Cauchy check.
    pub orbit: OrbitTrace,
    pub slack: f64,
}

impl VariableOrbitTrace {
    /// Recomputes every `xᵢ₊₁ = T^{nᵢ} xᵢ`.
    pub fn recheck(&self, space: &FiniteSpace) -> Result<bool> {
        for b in &self.blocks {
            if space.iterate_map(b.point, b.exponent)? != b.next {
                return Ok(false);
            }
        }
        Ok(self.blocks.windows(2).all(|w| w[0].next == w[1].point))
    }
}

const T0_BISECTIONS: usize = 80;

/// Whether `t > α + g(t)` on the samples `b·2^{j/4}`, `j = 1..240`, plus a
/// point just above `b`.
fn t0_admissible(g: &ScalarGauge, alpha: f64, b: f64) -> Result<bool> {
    let ratio = 2f64.powf(0.25);
    let mut t = b * (1.0 + 1e-9);
    if t <= alpha + g.eval(t)? {
        return Ok(false);
    }
    t = b;
    for _ in 0..240 {
        t *= ratio;
        if t <= alpha + g.eval(t)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Bisection over `[α, 10(α + 1)]` for `β` with `t ≤ α + g(t) ⟹ t ≤ β`.
fn search_t0(g: &ScalarGauge, alpha: f64) -> Result<Option<f64>> {
    let (mut lo, mut hi) = (alpha, 10.0 * (alpha + 1.0));
    if !t0_admissible(g, alpha, hi)? {
        return Ok(None);
    }
    if t0_admissible(g, alpha, lo)? {
        return Ok(Some(lo));
    }
    for _ in 0..T0_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if t0_admissible(g, alpha, mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(hi))
}

/// Block recursion `xᵢ₊₁ = T^{n(xᵢ)} xᵢ` from `x ∈ Y`, with composite bounds
/// `g(xₖ)∘…∘g(x₀)(t₀)` checked against the realized `max_m d(xₖ₊₁, Tᵐxₖ₊₁)`.
/// Stops at a fixed block point or after `max_blocks` blocks.
pub fn run_variable_exponent<D: Distance + ?Sized>(
    space: &FiniteSpace,
    metric: &D,
    x: usize,
    family: &PointGaugeFamily,
    max_blocks: usize,
    slack: f64,
) -> Result<VariableOrbitTrace> {
    let t = space.selfmap()?;
    check_point(space, x)?;
    check_metric(space, metric)?;
    if family.len() != space.len() {
        return Err(Error::Arity {
            expected: space.len(),
            got: family.len(),
        });
    }
    if !space.leq(x, t[x]) {
        return Err(Error::Precondition(format!("start {x} is not progressive (x ≤ Tx fails)")));
    }
    let n = space.len();
    let sup_dist = |p: usize| -> f64 {
        let mut q = p;
        let mut best: f64 = 0.0;
        for _ in 0..=n {
            best = best.max(metric.dist(p, q));
            q = t[q];
        }
        best
    };

    let n0 = family.exponent(x);
    let mut alpha: f64 = 0.0;
    let mut q = x;
    for _ in 0..n0 {
        q = t[q];
        alpha = alpha.max(metric.dist(x, q));
    }
    let t0 = if alpha == 0.0 {
        Some(0.0)
    } else {
        search_t0(&family.diagonal(x), alpha)?
    };
    let orbit = orbit(space, metric, x, n)?;

    let mut rep = VariableOrbitTrace {
        start: x,
        alpha,
        t0,
        normality_witnessed: t0.is_some(),
        t0_dominates: t0.is_some_and(|t0| sup_dist(x) <= t0 + slack),
        blocks: Vec::new(),
        bounds_respected: true,
        ascending: orbit.ascending,
        orbit,
        slack,
    };
    let Some(t0) = t0 else {
        rep.bounds_respected = false;
        return Ok(rep);
    };

    let mut point = x;
    let mut bound = t0;
    let mut cumulative = 0;
    for _ in 0..max_blocks {
        if t[point] == point {
            break;
        }
        let exponent = family.exponent(point);
        let next = space.iterate_map(point, exponent)?;
        cumulative += exponent;
        bound = family.diagonal(point).eval(bound)?;
        let realized = sup_dist(next);
        if realized > bound + slack {
            rep.bounds_respected = false;
        }
        rep.blocks.push(Block {
            point,
            exponent,
            cumulative,
            next,
            bound,
            realized,
        });
        point = next;
    }
    Ok(rep)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PicardMode {
    /// Every orbit converges to the unique fixed point.
    ModuloD,
    /// Orbits from `X(T, ≤)` converge upward and `Fix(T)` is `≤`-singleton.
    ModuloCLeq,
}

impl PicardMode {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "modulo-d" | "d" => Ok(PicardMode::ModuloD),
            "modulo-c-leq" | "c-leq" => Ok(PicardMode::ModuloCLeq),
            _ => Err(Error::Input(format!("unknown Picard mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StartVerdict {
    pub start: usize,
    pub limit: Option<usize>,
    pub converged: bool,
    /// `Tⁿx ≤ z` for every `n`; only in `ModuloCLeq`.
    pub ascent: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PicardReport {
    pub mode: PicardMode,
    pub fix_set: Vec<usize>,
    /// `|Fix(T)| = 1` in `ModuloD`; `≤`-singleton in `ModuloCLeq`.
    pub singleton: bool,
    pub singleton_witness: Option<(usize, usize)>,
    pub starts: Vec<StartVerdict>,
    pub all_converge: bool,
    pub nonconvergent_witness: Option<usize>,
    pub ascent: Option<bool>,
    pub ascent_witness: Option<usize>,
    /// Every fixed point is `≤`-maximal in `X(T, ≤)`.
    pub maximality: Option<bool>,
    pub maximality_witness: Option<(usize, usize)>,
    pub is_picard: bool,
}

impl PicardReport {
    /// Assembles the report from per-start verdicts; shared with the oracle.
    pub(crate) fn assemble(
        space: &FiniteSpace,
        mode: PicardMode,
        fix_set: Vec<usize>,
        starts: Vec<StartVerdict>,
        progressive: &[usize],
    ) -> Self {
        let nonconvergent_witness = starts.iter().find(|s| !s.converged).map(|s| s.start);
        let all_converge = nonconvergent_witness.is_none();
        match mode {
            PicardMode::ModuloD => {
                let singleton = fix_set.len() == 1;
                let singleton_witness = match fix_set.as_slice() {
                    [a, b, ..] => Some((*a, *b)),
                    _ => None,
                };
                PicardReport {
                    mode,
                    is_picard: singleton && all_converge,
                    fix_set,
                    singleton,
                    singleton_witness,
                    starts,
                    all_converge,
                    nonconvergent_witness,
                    ascent: None,
                    ascent_witness: None,
                    maximality: None,
                    maximality_witness: None,
                }
            }
            PicardMode::ModuloCLeq => {
                let singleton_witness = fix_set.iter().find_map(|&z| {
                    fix_set.iter().find(|&&w| w != z && space.leq(z, w)).map(|&w| (z, w))
                });
                let ascent_witness = starts.iter().find(|s| s.ascent == Some(false)).map(|s| s.start);
                let maximality_witness = fix_set.iter().find_map(|&z| {
                    progressive
                        .iter()
                        .find(|&&u| space.leq(z, u) && !space.leq(u, z))
                        .map(|&u| (z, u))
                });
                let singleton = singleton_witness.is_none();
                let ascent = ascent_witness.is_none();
                PicardReport {
                    mode,
                    is_picard: singleton && all_converge && ascent,
                    fix_set,
                    singleton,
                    singleton_witness,
                    starts,
                    all_converge,
                    nonconvergent_witness,
                    ascent: Some(ascent),
                    ascent_witness,
                    maximality: Some(maximality_witness.is_none()),
                    maximality_witness,
                }
            }
        }
    }
}

pub fn classify_picard(space: &FiniteSpace, mode: PicardMode) -> Result<PicardReport> {
    classify_picard_with(Exec::default(), space, mode)
}

/// Simulates the orbit of every admissible start: all points in `ModuloD`,
/// `X(T, ≤)` in `ModuloCLeq`.
pub fn classify_picard_with(exec: Exec, space: &FiniteSpace, mode: PicardMode) -> Result<PicardReport> {
    let t = space.selfmap()?;
    let n = space.len();
    let fix_set: Vec<usize> = (0..n).filter(|&x| t[x] == x).collect();
    let progressive: Vec<usize> = (0..n).filter(|&x| space.leq(x, t[x])).collect();
    let admissible: Vec<usize> = match mode {
        PicardMode::ModuloD => (0..n).collect(),
        PicardMode::ModuloCLeq => progressive.clone(),
    };
    let traces = exec.map(admissible.len(), |i| orbit(space, &ZeroTable(n), admissible[i], n));
    let mut starts = Vec::with_capacity(admissible.len());
    for tr in traces {
        let tr = tr?;
        let limit = tr.limit();
        let ascent = match (mode, limit) {
            (PicardMode::ModuloD, _) => None,
            (PicardMode::ModuloCLeq, Some(z)) => Some(tr.points.iter().all(|&p| space.leq(p, z))),
            (PicardMode::ModuloCLeq, None) => Some(false),
        };
        starts.push(StartVerdict {
            start: tr.start,
            limit,
            converged: limit.is_some(),
            ascent,
        });
    }
    Ok(PicardReport::assemble(space, mode, fix_set, starts, &progressive))
}

/// Orbit simulation only needs the points, not the distances.
struct ZeroTable(usize);

impl Distance for ZeroTable {
    fn size(&self) -> usize {
        self.0
    }

    fn dist(&self, _: usize, _: usize) -> f64 {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compfn::{PointFamilySpec, PointKernel};

    /// Values `2⁻ᵏ − 2⁻⁴` listed ascending, `T` moving one point down.
    fn grid() -> FiniteSpace {
        let vals: Vec<f64> = [0.0, 1.0, 3.0, 7.0, 15.0].iter().map(|v| v / 16.0).collect();
        let dist = vals
            .iter()
            .map(|a| vals.iter().map(|b| (a - b).abs()).collect())
            .collect();
        let pairs: Vec<(usize, usize)> = (0..4).map(|i| (i, i + 1)).collect();
        FiniteSpace::from_pairs(dist, &pairs, Some(vec![0, 0, 1, 2, 3])).unwrap()
    }

    fn unit(n: usize) -> Vec<Vec<f64>> {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { 0.0 } else { 1.0 }).collect())
            .collect()
    }

    #[test]
    fn orbit_examples() {
        let g = grid();
        let fixed = orbit(&g, &g, 0, 10).unwrap();
        assert_eq!(fixed.points, vec![0]);
        assert_eq!(fixed.reason, Termination::Fixed);

        let down = orbit(&g, &g, 4, 10).unwrap();
        assert_eq!(down.points, vec![4, 3, 2, 1, 0]);
        assert_eq!(down.step_distances, vec![0.5, 0.25, 0.125, 0.0625]);
        assert!(!down.ascending);

        let cyc = FiniteSpace::from_pairs(unit(2), &[], Some(vec![1, 0])).unwrap();
        let tr = orbit(&cyc, &cyc, 0, 10).unwrap();
        assert_eq!(tr.points, vec![0, 1, 0]);
        assert_eq!(tr.reason, Termination::Cycle);
        assert_eq!(tr.cycle_start, Some(0));

        let capped = orbit(&g, &g, 4, 2).unwrap();
        assert_eq!(capped.reason, Termination::MaxSteps);
        assert_eq!(capped.points, vec![4, 3, 2]);
    }

    #[test]
    fn run_picard_examples() {
        let g = grid();
        let half = ScalarGauge::linear(0.5);
        let r = run_picard(&g, &g, 0, &half, 0.0).unwrap();
        assert!(r.converged);
        assert_eq!(r.steps, 0);

        let r = run_picard(&g, &g, 4, &half, 0.0).unwrap();
        assert_eq!(r.fixed_point, Some(0));
        assert_eq!(r.trace.bounds.as_ref().unwrap(), &r.trace.step_distances);
        assert!(r.certificate.bound_respected);

        let cyc = FiniteSpace::from_pairs(unit(2), &[], Some(vec![1, 0])).unwrap();
        let r = run_picard(&cyc, &cyc, 0, &half, 0.0).unwrap();
        assert!(!r.converged);
        assert_eq!(r.cycle, Some(vec![0, 1, 0]));
        assert_eq!(r.certificate.first_violation, Some(1));
    }

    #[test]
    fn csv_export() {
        let g = grid();
        let r = run_picard(&g, &g, 2, &ScalarGauge::linear(0.5), 0.0).unwrap();
        assert_eq!(
            r.trace.to_csv(),
            "step,point,step_distance,bound\n0,2,0.125,0.125\n1,1,0.0625,0.0625\n2,0,,\n"
        );
    }

    #[test]
    fn cauchy_examples() {
        let g = grid();
        let half = ScalarGauge::linear(0.5);
        let fixed = orbit(&g, &g, 0, 10).unwrap();
        let c = cauchy_certificate(&fixed, &half, 0.5, &g).unwrap();
        assert!(c.holds);
        assert_eq!(c.rank_m, Some(0));

        let down = orbit(&g, &g, 4, 10).unwrap();
        let c = cauchy_certificate(&down, &half, 0.5, &g).unwrap();
        assert!(c.holds);
        // β = min(0.5, 0.25): steps below 0.125 start at index 3
        assert_eq!(c.beta, 0.25);
        assert_eq!(c.rank_m, Some(3));

        let cyc = FiniteSpace::from_pairs(unit(2), &[], Some(vec![1, 0])).unwrap();
        let tr = orbit(&cyc, &cyc, 0, 10).unwrap();
        let c = cauchy_certificate(&tr, &half, 0.5, &cyc).unwrap();
        assert!(!c.holds);
        assert_eq!(c.violation, Some((0, 1)));

        assert!(matches!(
            cauchy_certificate(&tr, &ScalarGauge::linear(1.0), 0.5, &cyc),
            Err(Error::Precondition(_))
        ));
    }

    fn chain6() -> (FiniteSpace, PointGaugeFamily) {
        let vals = [0.0, 8.0, 12.0, 14.0, 15.0, 15.5];
        let dist = vals
            .iter()
            .map(|a: &f64| vals.iter().map(|b| (a - b).abs()).collect())
            .collect();
        let pairs: Vec<(usize, usize)> = (0..5).map(|i| (i, i + 1)).collect();
        let s = FiniteSpace::from_pairs(dist, &pairs, Some(vec![1, 2, 3, 4, 5, 5])).unwrap();
        let f = PointGaugeFamily::from_spec(&PointFamilySpec {
            exponents: vec![1, 2, 1, 2, 1, 1],
            kernel: PointKernel::MaxTail { coef: 0.5 },
        })
        .unwrap();
        (s, f)
    }

    #[test]
    fn variable_exponent_chain() {
        let (s, f) = chain6();
        let v = run_variable_exponent(&s, &s, 0, &f, 50, 0.0).unwrap();
        assert_eq!(v.alpha, 8.0);
        assert!((v.t0.unwrap() - 16.0).abs() < 1e-6);
        let pts: Vec<usize> = v.blocks.iter().map(|b| b.point).collect();
        assert_eq!(pts, vec![0, 1, 3]);
        assert_eq!(v.blocks.last().unwrap().next, 5);
        let realized: Vec<f64> = v.blocks.iter().map(|b| b.realized).collect();
        assert_eq!(realized, vec![7.5, 1.5, 0.0]);
        for (b, want) in v.blocks.iter().zip([8.0, 4.0, 2.0]) {
            assert!((b.bound - want).abs() < 1e-6);
        }
        assert!(v.bounds_respected && v.ascending && v.t0_dominates);
        assert!(v.recheck(&s).unwrap());
    }

    #[test]
    fn variable_exponent_reduces_to_picard() {
        let (s, _) = chain6();
        let f = PointGaugeFamily::from_spec(&PointFamilySpec {
            exponents: vec![1; 6],
            kernel: PointKernel::MaxTail { coef: 0.5 },
        })
        .unwrap();
        let v = run_variable_exponent(&s, &s, 0, &f, 50, 0.0).unwrap();
        let r = run_picard(&s, &s, 0, &ScalarGauge::linear(0.5), 0.0).unwrap();
        let mut pts: Vec<usize> = v.blocks.iter().map(|b| b.point).collect();
        pts.push(v.blocks.last().unwrap().next);
        assert_eq!(pts, r.trace.points);

        let at_fixed = run_variable_exponent(&s, &s, 5, &f, 50, 0.0).unwrap();
        assert!(at_fixed.blocks.is_empty());
        assert_eq!(at_fixed.t0, Some(0.0));

        let down = FiniteSpace::from_pairs(unit(2), &[(0, 1)], Some(vec![0, 0])).unwrap();
        let f2 = PointGaugeFamily::from_spec(&PointFamilySpec {
            exponents: vec![1; 2],
            kernel: PointKernel::MaxTail { coef: 0.5 },
        })
        .unwrap();
        assert!(matches!(
            run_variable_exponent(&down, &down, 1, &f2, 5, 0.0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn classify_examples() {
        let konst = FiniteSpace::from_pairs(unit(3), &[], Some(vec![2, 2, 2])).unwrap();
        let r = classify_picard(&konst, PicardMode::ModuloD).unwrap();
        assert!(r.is_picard);
        assert_eq!(r.fix_set, vec![2]);

        let id = FiniteSpace::from_pairs(unit(2), &[], Some(vec![0, 1])).unwrap();
        let r = classify_picard(&id, PicardMode::ModuloD).unwrap();
        assert!(!r.is_picard);
        assert_eq!(r.singleton_witness, Some((0, 1)));
        let r = classify_picard(&id, PicardMode::ModuloCLeq).unwrap();
        assert!(r.singleton && r.is_picard);
        assert_eq!(r.maximality, Some(true));

        let g = grid();
        let r = classify_picard(&g, PicardMode::ModuloD).unwrap();
        assert!(r.is_picard);
        assert_eq!(r.fix_set, vec![0]);
        assert_eq!(r.starts.len(), 5);

        for exec in [Exec::Sequential, Exec::Parallel] {
            assert_eq!(classify_picard_with(exec, &g, PicardMode::ModuloCLeq).unwrap().starts.len(), 1);
        }
    }
}
