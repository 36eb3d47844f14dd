//! Comparison functions and gauge families.
//!
//! Gauges are opaque evaluators, so every functional property (monotonicity,
//! `φ(t) < t`, decay of iterates, divergence of `t − g(t)`) is semi-decided on
//! a [`SamplingPlan`]. A passing report means no violation was found on the
//! plan it names.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type VectorFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// Built-in scalar gauges, as accepted on the command line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum GaugeSpec {
    /// `t ↦ αt`
    Linear { alpha: f64 },
    /// `t ↦ t / (1 + ct)`
    Rational { c: f64 },
}

/// A gauge `φ: R₊ → R₊`. Evaluators must be stateless.
#[derive(Clone)]
pub struct ScalarGauge {
    eval: ScalarFn,
    declared_increasing: bool,
    spec: Option<GaugeSpec>,
}

impl fmt::Debug for ScalarGauge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarGauge")
            .field("spec", &self.spec)
            .field("declared_increasing", &self.declared_increasing)
            .finish_non_exhaustive()
    }
}

impl ScalarGauge {
    pub fn new<F>(f: F, declared_increasing: bool) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        ScalarGauge {
            eval: Arc::new(f),
            declared_increasing,
            spec: None,
        }
    }

    pub fn linear(alpha: f64) -> Self {
        ScalarGauge {
            spec: Some(GaugeSpec::Linear { alpha }),
            ..Self::new(move |t| alpha * t, alpha >= 0.0)
        }
    }

    pub fn rational(c: f64) -> Self {
        ScalarGauge {
            spec: Some(GaugeSpec::Rational { c }),
            ..Self::new(move |t| t / (1.0 + c * t), c >= 0.0)
        }
    }

    pub fn from_spec(spec: &GaugeSpec) -> Result<Self> {
        match *spec {
            GaugeSpec::Linear { alpha } if alpha.is_finite() && alpha >= 0.0 => {
                Ok(Self::linear(alpha))
            }
            GaugeSpec::Rational { c } if c.is_finite() && c >= 0.0 => Ok(Self::rational(c)),
            _ => Err(Error::Input(format!("invalid gauge parameters {spec:?}"))),
        }
    }

    pub fn spec(&self) -> Option<&GaugeSpec> {
        self.spec.as_ref()
    }

    pub fn declared_increasing(&self) -> bool {
        self.declared_increasing
    }

    /// `φ(t)`, rejecting negative or non-finite values.
    pub fn eval(&self, t: f64) -> Result<f64> {
        let v = (self.eval)(t);
        if v.is_finite() && v >= 0.0 {
            Ok(v)
        } else {
            Err(Error::Gauge { arg: t, value: v })
        }
    }
}

/// `φⁿ(t)`, with `φ⁰(t) = t`.
pub fn iterate(phi: &ScalarGauge, t: f64, n: usize) -> Result<f64> {
    (0..n).try_fold(t, |acc, _| phi.eval(acc))
}

/// Prefix compositions `g₀(t), g₁(g₀(t)), …` of a gauge sequence.
pub fn compose_family(gauges: &[ScalarGauge], t: f64) -> Result<Vec<f64>> {
    if gauges.is_empty() {
        return Err(Error::Input("compose_family needs at least one gauge".into()));
    }
    let mut out = Vec::with_capacity(gauges.len());
    let mut acc = t;
    for g in gauges {
        acc = g.eval(acc)?;
        out.push(acc);
    }
    Ok(out)
}

pub const DIVERGENCE_THRESHOLD: f64 = 1e6;

/// Where gauge properties are sampled.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplingPlan {
    /// Grid points `10^k` for `k` in this inclusive range.
    pub grid_exponents: (i32, i32),
    /// Extra log-uniform points drawn over the grid's span.
    pub random_points: usize,
    pub seed: u64,
    /// Iterates must fall to this level...
    pub decay_tol: f64,
    /// ...within this many applications.
    pub iterate_budget: usize,
}

impl Default for SamplingPlan {
    fn default() -> Self {
        SamplingPlan {
            grid_exponents: (-6, 3),
            random_points: 64,
            seed: 0x5eed,
            decay_tol: 1e-3,
            iterate_budget: 10_000,
        }
    }
}

impl SamplingPlan {
    /// Sorted positive sample points.
    pub fn points(&self) -> Vec<f64> {
        let (lo, hi) = self.grid_exponents;
        let mut pts: Vec<f64> = (lo..=hi).map(|k| 10f64.powi(k)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        for _ in 0..self.random_points {
            let e: f64 = rng.gen_range(lo as f64..=hi as f64);
            pts.push(10f64.powf(e));
        }
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }

    pub fn name(&self) -> String {
        format!(
            "grid 10^{}..10^{} + {} log-uniform (seed {}), decay to {:e} within {} steps",
            self.grid_exponents.0,
            self.grid_exponents.1,
            self.random_points,
            self.seed,
            self.decay_tol,
            self.iterate_budget
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleFailure {
    pub check: String,
    pub at: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalityReport {
    pub plan: String,
    /// `φ(0) = 0` and `φ(t) < t` on samples.
    pub f1_member: bool,
    pub increasing: bool,
    /// Iterates reach the decay tolerance within budget.
    pub decay: bool,
    /// `t − φ(t)` grows past [`DIVERGENCE_THRESHOLD`]; only checked for normality.
    pub divergence: Option<bool>,
    pub samples_used: usize,
    pub first_failure: Option<SampleFailure>,
}

impl NormalityReport {
    pub fn passes(&self) -> bool {
        self.f1_member && self.increasing && self.decay && self.divergence.unwrap_or(true)
    }

    fn fail(&mut self, check: &str, at: f64) {
        if self.first_failure.is_none() {
            self.first_failure = Some(SampleFailure {
                check: check.into(),
                at,
            });
        }
    }
}

fn sample_properties(phi: &ScalarGauge, plan: &SamplingPlan) -> Result<NormalityReport> {
    let pts = plan.points();
    let mut rep = NormalityReport {
        plan: plan.name(),
        f1_member: true,
        increasing: true,
        decay: true,
        divergence: None,
        samples_used: pts.len() + 1,
        first_failure: None,
    };

    if phi.eval(0.0)? != 0.0 {
        rep.f1_member = false;
        rep.fail("phi(0) = 0", 0.0);
    }
    let values = pts
        .iter()
        .map(|&t| phi.eval(t))
        .collect::<Result<Vec<_>>>()?;
    for (&t, &v) in pts.iter().zip(&values) {
        if v >= t {
            rep.f1_member = false;
            rep.fail("phi(t) < t", t);
            break;
        }
    }
    for (i, w) in values.windows(2).enumerate() {
        if w[1] < w[0] {
            rep.increasing = false;
            rep.fail("increasing", pts[i + 1]);
            break;
        }
    }
    for &t in &pts {
        if !decays(phi, t, plan)? {
            rep.decay = false;
            rep.fail("iterates decay", t);
            break;
        }
    }
    Ok(rep)
}

/// Iterates above this are treated as escaping to infinity.
const ESCAPE: f64 = 1e150;

fn decays(phi: &ScalarGauge, t: f64, plan: &SamplingPlan) -> Result<bool> {
    let mut acc = t;
    for _ in 0..=plan.iterate_budget {
        if acc <= plan.decay_tol {
            return Ok(true);
        }
        if acc > ESCAPE {
            return Ok(false);
        }
        acc = phi.eval(acc)?;
    }
    Ok(false)
}

/// Comparison-function check: increasing, `φ(0) = 0`, `φ(t) < t`, and
/// `φⁿ(t)` decays, all on the plan's samples.
pub fn check_comparison(phi: &ScalarGauge, plan: &SamplingPlan) -> Result<NormalityReport> {
    sample_properties(phi, plan)
}

/// Whether `t − g(t)` exceeds [`DIVERGENCE_THRESHOLD`] at `t = 2⁶⁰` and is
/// nondecreasing over the ten largest samples `2⁵¹ … 2⁶⁰`. Returns the first
/// offending sample on failure.
pub fn check_divergence(g: &ScalarGauge) -> Result<Option<f64>> {
    let ts: Vec<f64> = (0..=60).map(|k| 2f64.powi(k)).collect();
    let gaps = ts
        .iter()
        .map(|&t| g.eval(t).map(|v| t - v))
        .collect::<Result<Vec<_>>>()?;
    let tail = &gaps[gaps.len() - 10..];
    if let Some(i) = tail.windows(2).position(|w| w[1] < w[0]) {
        return Ok(Some(ts[gaps.len() - 10 + i + 1]));
    }
    if *gaps.last().unwrap() < DIVERGENCE_THRESHOLD {
        return Ok(Some(*ts.last().unwrap()));
    }
    Ok(None)
}

const BETA_BISECTIONS: usize = 80;
const BETA_SAMPLES: usize = 256;
/// Below this fraction of `γ`, a bisection result counts as no β at all.
const BETA_FLOOR: f64 = 1e-9;

/// Whether `φ(t) ≤ γ` on 256 samples of `[0, γ + β)`: a uniform grid plus a
/// point just below the right end.
pub fn gamma_beta_valid(phi: &ScalarGauge, gamma: f64, beta: f64) -> Result<bool> {
    let top = gamma + beta;
    let grid = BETA_SAMPLES - 1;
    for i in 0..grid {
        if phi.eval(top * i as f64 / grid as f64)? > gamma {
            return Ok(false);
        }
    }
    Ok(phi.eval(top * (1.0 - 1e-12))? <= gamma)
}

/// Finds `β > 0` with `0 ≤ t < γ + β ⟹ φ(t) ≤ γ` by bisection over
/// `(0, 10γ]`. `None` when no β above `1e-9·γ` validates, which for an
/// increasing φ means φ is not a comparison function near `γ`.
pub fn gamma_beta(phi: &ScalarGauge, gamma: f64) -> Result<Option<f64>> {
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(Error::Input(format!("gamma must be positive, got {gamma}")));
    }
    let mut hi = 10.0 * gamma;
    if gamma_beta_valid(phi, gamma, hi)? {
        return Ok(Some(hi));
    }
    let mut lo = 0.0;
    for _ in 0..BETA_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if gamma_beta_valid(phi, gamma, mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo > BETA_FLOOR * gamma).then_some(lo))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Family5Spec {
    /// `coef · max(t₁, …, t₅)`
    Max { coef: f64 },
}

/// `f: R₊⁵ → R₊`, increasing in each variable.
#[derive(Clone)]
pub struct GaugeFamily5 {
    eval: VectorFn,
    spec: Option<Family5Spec>,
}

impl fmt::Debug for GaugeFamily5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GaugeFamily5")
            .field("spec", &self.spec)
            .finish_non_exhaustive()
    }
}

impl GaugeFamily5 {
    pub fn new<F>(f: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        GaugeFamily5 {
            eval: Arc::new(f),
            spec: None,
        }
    }

    pub fn max_scaled(coef: f64) -> Self {
        GaugeFamily5 {
            spec: Some(Family5Spec::Max { coef }),
            ..Self::new(move |a| coef * max_of(a))
        }
    }

    pub fn from_spec(spec: &Family5Spec) -> Self {
        match *spec {
            Family5Spec::Max { coef } => Self::max_scaled(coef),
        }
    }

    pub fn eval(&self, args: [f64; 5]) -> Result<f64> {
        let v = (self.eval)(&args);
        if v.is_finite() && v >= 0.0 {
            Ok(v)
        } else {
            Err(Error::Gauge { arg: args[0], value: v })
        }
    }

    /// `g(t) = f(t, t, t, 2t, 2t)`.
    pub fn diagonal(&self) -> ScalarGauge {
        let f = self.eval.clone();
        ScalarGauge::new(move |t| f(&[t, t, t, 2.0 * t, 2.0 * t]), true)
    }

    /// Sampled coordinatewise monotonicity: bumping any one argument of a
    /// sample vector never decreases `f`.
    pub fn sampled_increasing(&self, plan: &SamplingPlan) -> Result<bool> {
        let pts = plan.points();
        for w in pts.windows(5) {
            let base = [w[0], w[1], w[2], w[3], w[4]];
            let v = self.eval(base)?;
            for i in 0..5 {
                let mut up = base;
                up[i] *= 2.0;
                if self.eval(up)? < v {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Normality of a five-argument family through its diagonal `g`: `g ∈ F₁`,
/// `t − g(t) → ∞`, and `gⁿ(t) → 0`, each checked on its own.
pub fn check_normal5(f: &GaugeFamily5, plan: &SamplingPlan) -> Result<NormalityReport> {
    let g = f.diagonal();
    let mut rep = sample_properties(&g, plan)?;
    rep.increasing = rep.increasing && f.sampled_increasing(plan)?;
    let div = check_divergence(&g)?;
    rep.divergence = Some(div.is_none());
    if let Some(t) = div {
        rep.fail("t - g(t) diverges", t);
    }
    Ok(rep)
}

/// Normality of a scalar gauge `f` used directly (the uniform iterative form):
/// the comparison checks plus divergence of `t − f(t)`.
pub fn check_normal_scalar(f: &ScalarGauge, plan: &SamplingPlan) -> Result<NormalityReport> {
    let mut rep = sample_properties(f, plan)?;
    let div = check_divergence(f)?;
    rep.divergence = Some(div.is_none());
    if let Some(t) = div {
        rep.fail("t - f(t) diverges", t);
    }
    Ok(rep)
}

/// `F(ξ, η, ζ) = f(ξ, η, ζ, ξ + η, ζ + η)`.
#[derive(Clone)]
pub struct Reduced3 {
    inner: VectorFn,
}

impl Reduced3 {
    pub fn eval(&self, xi: f64, eta: f64, zeta: f64) -> f64 {
        (self.inner)(&[xi, eta, zeta, xi + eta, zeta + eta])
    }
}

pub fn matkowski_reduce(f: &GaugeFamily5) -> Reduced3 {
    Reduced3 {
        inner: f.eval.clone(),
    }
}

pub(crate) fn max_of(args: &[f64]) -> f64 {
    args.iter().copied().fold(0.0, f64::max)
}

/// How a per-point gauge `f(x)` combines its `2n(x) + 1` arguments
/// `(d(x,Tx), …, d(x,Tⁿx); d(x,y), …, d(x,Tⁿy))`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PointKernel {
    /// `coef · max` of all arguments.
    MaxAll { coef: f64 },
    /// `coef · max` of the second block `d(x,y), …, d(x,Tⁿy)`.
    MaxTail { coef: f64 },
    /// `f(d(x,y))` for one scalar gauge: the uniform iterative condition.
    Lead { gauge: GaugeSpec },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointFamilySpec {
    /// `n(x)` for every point.
    pub exponents: Vec<usize>,
    pub kernel: PointKernel,
}

#[derive(Clone)]
pub struct PointGauge {
    pub exponent: usize,
    eval: VectorFn,
}

impl fmt::Debug for PointGauge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PointGauge")
            .field("exponent", &self.exponent)
            .finish_non_exhaustive()
    }
}

/// Per-point exponents `n(x)` and gauges `f(x)` on `R₊^{2n(x)+1}`.
#[derive(Clone, Debug)]
pub struct PointGaugeFamily {
    gauges: Vec<PointGauge>,
    spec: Option<PointFamilySpec>,
    /// The scalar `f` when the family has the uniform `f(d(x, y))` form.
    uniform: Option<ScalarGauge>,
}

impl PointGaugeFamily {
    pub fn new(gauges: Vec<(usize, VectorFn)>) -> Result<Self> {
        let gauges = gauges
            .into_iter()
            .map(|(exponent, eval)| {
                if exponent == 0 {
                    Err(Error::Input("exponents n(x) must be at least 1".into()))
                } else {
                    Ok(PointGauge { exponent, eval })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PointGaugeFamily {
            gauges,
            spec: None,
            uniform: None,
        })
    }

    pub fn from_spec(spec: &PointFamilySpec) -> Result<Self> {
        let make: Box<dyn Fn(usize) -> VectorFn> = match &spec.kernel {
            PointKernel::MaxAll { coef } => {
                let c = *coef;
                Box::new(move |_| Arc::new(move |a: &[f64]| c * max_of(a)))
            }
            PointKernel::MaxTail { coef } => {
                let c = *coef;
                Box::new(move |n| Arc::new(move |a: &[f64]| c * max_of(&a[n..])))
            }
            PointKernel::Lead { gauge } => {
                let g = ScalarGauge::from_spec(gauge)?;
                Box::new(move |n| {
                    let g = g.clone();
                    Arc::new(move |a: &[f64]| (g.eval)(a[n]))
                })
            }
        };
        let mut fam = Self::new(spec.exponents.iter().map(|&n| (n, make(n))).collect())?;
        if let PointKernel::Lead { gauge } = &spec.kernel {
            fam.uniform = Some(ScalarGauge::from_spec(gauge)?);
        }
        fam.spec = Some(spec.clone());
        Ok(fam)
    }

    /// The uniform form: `f(x)(…; d(x,y), …) = f(d(x,y))` at every point.
    pub fn uniform(exponents: Vec<usize>, f: ScalarGauge) -> Result<Self> {
        let gauges = exponents
            .iter()
            .map(|&n| {
                let g = f.clone();
                let eval: VectorFn = Arc::new(move |a: &[f64]| (g.eval)(a[n]));
                (n, eval)
            })
            .collect();
        let mut fam = Self::new(gauges)?;
        fam.spec = f.spec().map(|g| PointFamilySpec {
            exponents,
            kernel: PointKernel::Lead { gauge: g.clone() },
        });
        fam.uniform = Some(f);
        Ok(fam)
    }

    pub fn spec(&self) -> Option<&PointFamilySpec> {
        self.spec.as_ref()
    }

    pub fn uniform_gauge(&self) -> Option<&ScalarGauge> {
        self.uniform.as_ref()
    }

    pub fn len(&self) -> usize {
        self.gauges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gauges.is_empty()
    }

    pub fn exponent(&self, x: usize) -> usize {
        self.gauges[x].exponent
    }

    pub fn exponents(&self) -> Vec<usize> {
        self.gauges.iter().map(|g| g.exponent).collect()
    }

    /// `f(x)(args)`; `args` must have length `2n(x) + 1`.
    pub fn eval(&self, x: usize, args: &[f64]) -> Result<f64> {
        let g = &self.gauges[x];
        let expected = 2 * g.exponent + 1;
        if args.len() != expected {
            return Err(Error::Arity {
                expected,
                got: args.len(),
            });
        }
        let v = (g.eval)(args);
        if v.is_finite() && v >= 0.0 {
            Ok(v)
        } else {
            Err(Error::Gauge {
                arg: args.first().copied().unwrap_or(0.0),
                value: v,
            })
        }
    }

    /// `g(x)(t) = f(x)(t, …, t; t, …, t)`.
    pub fn diagonal(&self, x: usize) -> ScalarGauge {
        let g = self.gauges[x].clone();
        let len = 2 * g.exponent + 1;
        ScalarGauge::new(move |t| (g.eval)(&vec![t; len]), true)
    }
}
