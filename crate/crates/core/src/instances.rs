//! Seeded instance generation, the curated library, and the falsifier.
//!
//! Generated distances are integers scaled by a power of two, so every table
//! entry, sum and halving is exact in `f64` and contraction checks run with
//! zero slack.

use serde::{Deserialize, Serialize};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::compfn::{GaugeSpec, PointFamilySpec, PointGaugeFamily, PointKernel, ScalarGauge};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::maia::{build_maia_metric, DEFAULT_TOL};
use crate::oracle::{theorem_suite, SuiteParams, SuiteVerdict, TheoremId};
use crate::schema::{self, InstanceDoc};
use crate::spaces::{transitive_closure, FiniteSpace};

/// A space with the parameters its advertised hypotheses refer to.
#[derive(Clone, Debug, PartialEq)]
pub struct InstanceSpec {
    pub name: Option<String>,
    pub space: FiniteSpace,
    pub alpha: Option<f64>,
    pub gauge: Option<GaugeSpec>,
    pub family: Option<PointFamilySpec>,
    pub provenance: Option<String>,
}

impl InstanceSpec {
    pub fn bare(space: FiniteSpace) -> Self {
        InstanceSpec {
            name: None,
            space,
            alpha: None,
            gauge: None,
            family: None,
            provenance: None,
        }
    }

    /// The attached gauge, falling back to `αt`.
    pub fn phi(&self) -> Result<Option<ScalarGauge>> {
        match (&self.gauge, self.alpha) {
            (Some(g), _) => ScalarGauge::from_spec(g).map(Some),
            (None, Some(a)) => Ok(Some(ScalarGauge::linear(a))),
            (None, None) => Ok(None),
        }
    }

    /// Suite parameters for `theorem`. For T3 the series metric is built from
    /// `alpha` and attached as `e`, with factor `1/λ`.
    pub fn suite_params(&self, theorem: TheoremId) -> Result<SuiteParams> {
        let mut p = SuiteParams {
            alpha: self.alpha,
            phi: self.phi()?,
            ..SuiteParams::default()
        };
        let n = self.space.len();
        p.family = match (&self.family, theorem, self.alpha) {
            (Some(f), TheoremId::T9, Some(a)) if !matches!(f.kernel, PointKernel::Lead { .. }) => {
                Some(PointGaugeFamily::uniform(f.exponents.clone(), ScalarGauge::linear(a))?)
            }
            (Some(f), _, _) => Some(PointGaugeFamily::from_spec(f)?),
            (None, TheoremId::T9, Some(a)) => {
                Some(PointGaugeFamily::uniform(vec![1; n], ScalarGauge::linear(a))?)
            }
            (None, _, _) => None,
        };
        if theorem == TheoremId::T3 {
            let alpha = self
                .alpha
                .ok_or_else(|| Error::Input("theorem T3 needs parameter alpha".into()))?;
            let dm = build_maia_metric(&self.space, alpha, None, DEFAULT_TOL)?;
            p.alpha = Some(dm.mu());
            p.slack = dm.check_slack();
            p.e_table = Some(dm.table().to_vec());
        }
        Ok(p)
    }

    pub fn to_json(&self) -> String {
        schema::export_instance(self)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeneratorParams {
    pub seed: u64,
    pub n: usize,
    pub order_density: f64,
    /// Chance that two neighbours in the linear extension become equivalent.
    pub quasi: f64,
    pub alpha: f64,
    pub target: TheoremId,
    /// Hypothesis left unenforced.
    pub drop: Option<String>,
    pub max_attempts: usize,
}

impl Default for GeneratorParams {
    fn default() -> Self {
        GeneratorParams {
            seed: 0,
            n: 6,
            order_density: 0.3,
            quasi: 0.15,
            alpha: 0.5,
            target: TheoremId::T2,
            drop: None,
            max_attempts: 500,
        }
    }
}

impl GeneratorParams {
    /// Accepts a JSON object or `key=value` pairs separated by commas, e.g.
    /// `n=6,density=0.3,alpha=0.5,target=T4,seed=3`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            let p: Self = serde_json::from_str(s)
                .map_err(|e| Error::Input(format!("generator params: {e}")))?;
            p.validate()?;
            return Ok(p);
        }
        let mut p = Self::default();
        for kv in s.split(',').map(str::trim).filter(|kv| !kv.is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Input(format!("generator params: expected key=value, got {kv:?}")))?;
            let bad = |_| Error::Input(format!("generator params: bad value for {k}: {v:?}"));
            match k.trim() {
                "seed" => p.seed = v.parse().map_err(|e: std::num::ParseIntError| bad(e.to_string()))?,
                "n" => p.n = v.parse().map_err(|e: std::num::ParseIntError| bad(e.to_string()))?,
                "density" | "order_density" => {
                    p.order_density = v.parse().map_err(|e: std::num::ParseFloatError| bad(e.to_string()))?
                }
                "quasi" => p.quasi = v.parse().map_err(|e: std::num::ParseFloatError| bad(e.to_string()))?,
                "alpha" => p.alpha = v.parse().map_err(|e: std::num::ParseFloatError| bad(e.to_string()))?,
                "target" | "theorem" => p.target = TheoremId::parse(v)?,
                "drop" => p.drop = Some(v.trim().to_string()),
                "max_attempts" | "attempts" => {
                    p.max_attempts = v.parse().map_err(|e: std::num::ParseIntError| bad(e.to_string()))?
                }
                other => return Err(Error::Input(format!("generator params: unknown key {other:?}"))),
            }
        }
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Input("generator params: n must be at least 1".into()));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::Input(format!("generator params: alpha {} outside (0, 1)", self.alpha)));
        }
        for (name, v) in [("order_density", self.order_density), ("quasi", self.quasi)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Input(format!("generator params: {name} {v} outside [0, 1]")));
            }
        }
        if self.max_attempts == 0 {
            return Err(Error::Input("generator params: max_attempts must be positive".into()));
        }
        Ok(())
    }

    fn provenance(&self) -> String {
        let mut s = format!(
            "gen:seed={},n={},density={},quasi={},alpha={},target={}",
            self.seed, self.n, self.order_density, self.quasi, self.alpha, self.target
        );
        if let Some(d) = &self.drop {
            s.push_str(&format!(",drop={d}"));
        }
        s
    }

    fn dropped(&self, names: &[&str]) -> bool {
        self.drop.as_deref().is_some_and(|d| names.contains(&d))
    }
}

/// Structural requirements on the random order.
#[derive(Clone, Copy, Default)]
struct OrderShape {
    connected: bool,
    bounded: bool,
    linear: bool,
    antisymmetric: bool,
}

/// Symmetric integer weights in `1..=100`, closed under shortest paths.
fn base_metric(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<u64>> {
    let mut d = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let w = rng.gen_range(1..=100);
            d[i][j] = w;
            d[j][i] = w;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Closure of a random DAG over a random linear extension, plus optional
/// merges of neighbours into equivalence classes.
fn random_order(
    rng: &mut ChaCha8Rng,
    n: usize,
    density: f64,
    quasi: f64,
    shape: OrderShape,
) -> Vec<Vec<bool>> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut order = vec![vec![false; n]; n];
    for (i, row) in order.iter_mut().enumerate() {
        row[i] = true;
    }
    for i in 0..n {
        for j in i + 1..n {
            if shape.linear || rng.gen_bool(density) {
                order[perm[i]][perm[j]] = true;
            }
        }
    }
    if shape.connected {
        for i in 1..n {
            let j = rng.gen_range(0..i);
            order[perm[j]][perm[i]] = true;
        }
    }
    if shape.bounded && n > 1 {
        for &p in &perm {
            order[perm[0]][p] = true;
            order[p][perm[n - 1]] = true;
        }
    }
    if !shape.antisymmetric {
        for i in 0..n.saturating_sub(1) {
            if rng.gen_bool(quasi) {
                order[perm[i]][perm[i + 1]] = true;
                order[perm[i + 1]][perm[i]] = true;
            }
        }
    }
    transitive_closure(&mut order);
    order
}

fn scaled(table: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let max = table.iter().flatten().copied().fold(0.0, f64::max);
    if max == 0.0 {
        return table.to_vec();
    }
    let scale = 2f64.powi(-(max.log2().ceil() as i32));
    table.iter().map(|r| r.iter().map(|v| v * scale).collect()).collect()
}

fn as_f64(d: &[Vec<u64>]) -> Vec<Vec<f64>> {
    d.iter().map(|r| r.iter().map(|&v| v as f64).collect()).collect()
}

/// A random metric (shortest-path closure of random weights) and a random
/// quasi-order (closure of a random DAG), without a self-map.
pub fn gen_random_space(params: &GeneratorParams) -> Result<FiniteSpace> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let d = base_metric(&mut rng, params.n);
    let order = random_order(&mut rng, params.n, params.order_density, params.quasi, OrderShape::default());
    FiniteSpace::new(scaled(&as_f64(&d)), order, None)
}

/// Greedy increasing map along a linear extension; `None` when some point
/// has no admissible image.
fn monotone_map(rng: &mut ChaCha8Rng, order: &[Vec<bool>]) -> Option<Vec<usize>> {
    let n = order.len();
    let mut seq: Vec<usize> = (0..n).collect();
    // a linear extension up to equivalence: sort by number of points below
    seq.shuffle(rng);
    seq.sort_by_key(|&x| (0..n).filter(|&u| order[u][x]).count());
    let mut t: Vec<Option<usize>> = vec![None; n];
    for &x in &seq {
        let ok = |c: usize| {
            (0..n).all(|u| match t[u] {
                Some(tu) => (!order[u][x] || order[tu][c]) && (!order[x][u] || order[c][tu]),
                None => true,
            })
        };
        let cands: Vec<usize> = (0..n).filter(|&c| ok(c)).collect();
        if cands.is_empty() {
            return None;
        }
        let images: Vec<usize> = cands.iter().copied().filter(|c| t.contains(&Some(*c))).collect();
        let pick = if !images.is_empty() && rng.gen_bool(0.6) {
            *images.choose(rng)?
        } else {
            *cands.choose(rng)?
        };
        t[x] = Some(pick);
    }
    t.into_iter().collect()
}

/// Every point eventually lands on one root.
fn funnel_map(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut t = vec![0; n];
    t[perm[0]] = perm[0];
    for i in 1..n {
        t[perm[i]] = perm[rng.gen_range(0..i)];
    }
    t
}

fn merge_time(t: &[usize], x: usize, y: usize) -> Option<usize> {
    let (mut a, mut b) = (x, y);
    for k in 0..t.len() {
        if a == b {
            return Some(k);
        }
        a = t[a];
        b = t[b];
    }
    (a == b).then_some(t.len())
}

/// `d(x,y) = Σ_{k<n} c_k d₀(Tᵏx, Tᵏy)` with `c₀ = 1`, `c_k = ⌈c_{k−1}/α'⌉`,
/// `α' = α(1 − 10⁻⁹)`: every pair whose orbits merge is contracted by `α`.
fn orbit_rescaled(d0: &[Vec<u64>], t: &[usize], alpha: f64) -> Result<Vec<Vec<f64>>> {
    let n = t.len();
    let ap = alpha * (1.0 - 1e-9);
    let mut c = vec![1.0f64; n];
    for k in 1..n {
        c[k] = (c[k - 1] / ap).ceil();
    }
    let mut orb = vec![(0..n).collect::<Vec<usize>>()];
    for k in 1..n {
        let prev = &orb[k - 1];
        orb.push(prev.iter().map(|&p| t[p]).collect());
    }
    let mut out = vec![vec![0.0; n]; n];
    let mut max = 0.0f64;
    for x in 0..n {
        for y in 0..n {
            let s: f64 = (0..n).map(|k| c[k] * d0[orb[k][x]][orb[k][y]] as f64).sum();
            out[x][y] = s;
            max = max.max(s);
        }
    }
    if max >= 2f64.powi(53) {
        return Err(Error::Input(format!(
            "alpha {alpha} is too small for exact tables at n = {n}"
        )));
    }
    Ok(scaled(&out))
}

/// Proposes spaces and self-maps until the target's hypotheses (except the
/// dropped one) all hold; fails after `max_attempts` proposals.
pub fn gen_theorem_instance(params: &GeneratorParams) -> Result<InstanceSpec> {
    params.validate()?;
    let target = params.target;
    if let Some(d) = &params.drop {
        let names = target.hypothesis_names();
        if !names.contains(&d.as_str()) {
            return Err(Error::Input(format!(
                "theorem {target} has no hypothesis {d:?}; expected one of {names:?}"
            )));
        }
    }
    let n = params.n;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let needs_ordering = target == TheoremId::T7 && !params.dropped(&["ordering"]);
    let shape = OrderShape {
        connected: matches!(target, TheoremId::T2 | TheoremId::T3) && !params.dropped(&["b03"]),
        bounded: target == TheoremId::T1 && !params.dropped(&["a05"]),
        linear: target == TheoremId::C2 && !params.dropped(&["d03", "d04"]),
        antisymmetric: needs_ordering,
    };
    let free_map = params.dropped(&["a04", "b02", "c05", "e06"]);
    let all_merge = matches!(target, TheoremId::C1 | TheoremId::C2);
    let contraction_dropped = params.dropped(&["a02", "b04", "c06", "d01", "d02", "e07", "e12"]);

    for _ in 0..params.max_attempts {
        let d0 = base_metric(&mut rng, n);
        let order = random_order(&mut rng, n, params.order_density, params.quasi, shape);
        let t = if all_merge && !free_map {
            funnel_map(&mut rng, n)
        } else if free_map {
            (0..n).map(|_| rng.gen_range(0..n)).collect()
        } else {
            match monotone_map(&mut rng, &order) {
                Some(t) => t,
                None => continue,
            }
        };
        let exponents: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=2)).collect();

        let dist = if contraction_dropped {
            scaled(&as_f64(&d0))
        } else {
            let merges = (0..n).all(|x| {
                (0..n).all(|y| {
                    let must = if all_merge { true } else { order[x][y] };
                    !must || merge_time(&t, x, y).is_some()
                })
            });
            if !merges {
                continue;
            }
            orbit_rescaled(&d0, &t, params.alpha)?
        };
        let space = FiniteSpace::new(dist, order, Some(t))?;
        let kernel = if target == TheoremId::T9 {
            PointKernel::Lead {
                gauge: GaugeSpec::Linear { alpha: params.alpha },
            }
        } else {
            PointKernel::MaxTail { coef: params.alpha }
        };
        let spec = InstanceSpec {
            name: None,
            space,
            alpha: Some(params.alpha),
            gauge: Some(GaugeSpec::Linear { alpha: params.alpha }),
            family: Some(PointFamilySpec { exponents, kernel }),
            provenance: Some(params.provenance()),
        };
        if accepts(&spec, params)? {
            return Ok(spec);
        }
    }
    Err(Error::GenerationFailed {
        attempts: params.max_attempts,
    })
}

fn accepts(spec: &InstanceSpec, params: &GeneratorParams) -> Result<bool> {
    let mut sp = match spec.suite_params(params.target) {
        Ok(p) => p,
        // T3 needs the series metric, which needs the T2 hypotheses
        Err(Error::Precondition(_)) => return Ok(false),
        Err(e) => return Err(e),
    };
    sp.drop = params.drop.clone();
    Ok(theorem_suite(&spec.space, params.target, &sp)?.hypotheses_hold)
}

/// Number of dyadic levels in the half-map grid.
pub const HALF_GRID_LEVELS: i32 = 100;

/// Value of grid point `i`: `2^{i−K} − 2^{−K}`, so `0` maps to `0` and `K`
/// to `1 − 2^{−K}`.
pub fn half_grid_value(i: usize) -> f64 {
    2f64.powi(i as i32 - HALF_GRID_LEVELS) - 2f64.powi(-HALF_GRID_LEVELS)
}

/// `T` moves every grid point one level down, which halves every distance
/// between points above `0` exactly.
fn half_map_grid() -> InstanceSpec {
    let k = HALF_GRID_LEVELS as usize;
    let pow = |i: usize| 2f64.powi(i as i32 - HALF_GRID_LEVELS);
    let dist = (0..=k)
        .map(|i| {
            (0..=k)
                .map(|j| match i.cmp(&j) {
                    std::cmp::Ordering::Less => pow(j) - pow(i),
                    std::cmp::Ordering::Greater => pow(i) - pow(j),
                    std::cmp::Ordering::Equal => 0.0,
                })
                .collect()
        })
        .collect();
    let pairs: Vec<(usize, usize)> = (0..k).map(|i| (i, i + 1)).collect();
    let t = (0..=k).map(|i| i.saturating_sub(1)).collect();
    let space = FiniteSpace::from_pairs(dist, &pairs, Some(t)).expect("valid grid");
    library_entry("half-map-grid", space, Some(0.5), Some(vec![1; k + 1]), true)
}

fn unit(n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { 0.0 } else { 1.0 }).collect())
        .collect()
}

fn library_entry(
    name: &str,
    space: FiniteSpace,
    alpha: Option<f64>,
    exponents: Option<Vec<usize>>,
    lead: bool,
) -> InstanceSpec {
    let family = match (exponents, alpha) {
        (Some(exponents), Some(a)) => Some(PointFamilySpec {
            exponents,
            kernel: if lead {
                PointKernel::Lead {
                    gauge: GaugeSpec::Linear { alpha: a },
                }
            } else {
                PointKernel::MaxTail { coef: a }
            },
        }),
        _ => None,
    };
    InstanceSpec {
        name: Some(name.into()),
        space,
        alpha,
        gauge: alpha.map(|a| GaugeSpec::Linear { alpha: a }),
        family,
        provenance: Some(format!("library:{name}")),
    }
}

pub const LIBRARY_NAMES: [&str; 6] = [
    "half-map-grid",
    "two-components",
    "two-cycle",
    "bounds-lattice",
    "directed-not-transitive",
    "variable-exponent-chain",
];

pub fn builtin_library() -> Vec<InstanceSpec> {
    let two_components = FiniteSpace::from_pairs(unit(2), &[], Some(vec![0, 1])).expect("valid");
    let two_cycle = FiniteSpace::from_pairs(unit(2), &[], Some(vec![1, 0])).expect("valid");

    // 0 = (0,0) below 1 = (1,0) and 2 = (0,1), both below 3 = (3,3); L1 distances
    let coords = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (3.0, 3.0)];
    let l1 = coords
        .iter()
        .map(|a: &(f64, f64)| coords.iter().map(|b| (a.0 - b.0).abs() + (a.1 - b.1).abs()).collect())
        .collect();
    let lattice = FiniteSpace::from_pairs(l1, &[(0, 1), (0, 2), (1, 3), (2, 3)], Some(vec![0, 0, 0, 1]))
        .expect("valid");

    let vee = FiniteSpace::from_pairs(unit(3), &[(0, 2), (1, 2)], Some(vec![2, 2, 2])).expect("valid");

    let vals = [0.0, 8.0, 12.0, 14.0, 15.0, 15.5];
    let chain_d = vals
        .iter()
        .map(|a: &f64| vals.iter().map(|b| (a - b).abs()).collect())
        .collect();
    let chain_pairs: Vec<(usize, usize)> = (0..5).map(|i| (i, i + 1)).collect();
    let chain = FiniteSpace::from_pairs(chain_d, &chain_pairs, Some(vec![1, 2, 3, 4, 5, 5]))
        .expect("valid");

    vec![
        half_map_grid(),
        library_entry("two-components", two_components, Some(0.5), None, false),
        library_entry("two-cycle", two_cycle, Some(0.5), None, false),
        library_entry("bounds-lattice", lattice, Some(0.5), Some(vec![1; 4]), false),
        library_entry("directed-not-transitive", vee, Some(0.5), None, false),
        library_entry(
            "variable-exponent-chain",
            chain,
            Some(0.5),
            Some(vec![1, 2, 1, 2, 1, 1]),
            false,
        ),
    ]
}

pub fn library_instance(name: &str) -> Result<InstanceSpec> {
    builtin_library()
        .into_iter()
        .find(|s| s.name.as_deref() == Some(name))
        .ok_or_else(|| {
            Error::Input(format!("unknown library instance {name:?}; known: {}", LIBRARY_NAMES.join(", ")))
        })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub trial: usize,
    pub seed: u64,
    pub instance: InstanceDoc,
    pub verdict: SuiteVerdict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FalsifyReport {
    pub theorem: TheoremId,
    pub drop: Option<String>,
    pub trials: usize,
    pub seed: u64,
    pub counterexample: Option<Counterexample>,
}

/// Generator parameters of trial `i`: seed `base.seed + i`, carrier size
/// cycling through `1..=base.n`.
pub fn trial_params(base: &GeneratorParams, i: usize) -> GeneratorParams {
    GeneratorParams {
        seed: base.seed.wrapping_add(i as u64),
        n: 1 + i % base.n,
        ..base.clone()
    }
}

/// Hunts for an instance where every hypothesis but `base.drop` holds and
/// some conclusion fails. The lowest trial index wins.
pub fn falsify(exec: Exec, base: &GeneratorParams, trials: usize) -> Result<FalsifyReport> {
    base.validate()?;
    if let Some(d) = &base.drop {
        if !base.target.hypothesis_names().contains(&d.as_str()) {
            return Err(Error::Input(format!(
                "theorem {} has no hypothesis {d:?}; expected one of {:?}",
                base.target,
                base.target.hypothesis_names()
            )));
        }
    }
    let hit = exec.find_first(trials, |i| {
        let p = trial_params(base, i);
        let spec = gen_theorem_instance(&p).ok()?;
        let mut sp = spec.suite_params(base.target).ok()?;
        sp.drop = base.drop.clone();
        let verdict = theorem_suite(&spec.space, base.target, &sp).ok()?;
        (!verdict.implication_respected).then(|| Counterexample {
            trial: i,
            seed: p.seed,
            instance: schema::to_doc(&spec),
            verdict,
        })
    });
    Ok(FalsifyReport {
        theorem: base.target,
        drop: base.drop.clone(),
        trials,
        seed: base.seed,
        counterexample: hit.map(|(_, c)| c),
    })
}
