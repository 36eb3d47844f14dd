//! Contraction and structural hypotheses on a finite space with a self-map.
//!
//! Every check scans its full quantified pair set. The reported witness is the
//! lexicographically smallest violating pair, whatever the execution strategy.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::compfn::{GaugeSpec, PointFamilySpec, PointGaugeFamily, SamplingPlan, ScalarGauge};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::spaces::{Distance, FiniteSpace};

/// Which contractive inequality is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VariantTag {
    /// `d(Tx,Ty) ≤ α d(x,y)` for `x ≤ y`.
    A02,
    /// `e(Tx,Ty) ≤ α e(x,y)` for all pairs.
    B04,
    /// `e(Tx,Ty) ≤ φ(M(x,y))` for `x ≤ y`.
    C06,
    /// `e(Tx,Ty) ≤ φ(M(x,y))` for all pairs.
    D01,
    /// `d(Tx,Ty) ≤ φ(d(x,y))` for `x ≤ y`.
    D02,
    /// Per-point iterative condition over `x ≤ y` in `Y`.
    E07,
    /// Uniform iterative condition `d(Tⁿ⁽ˣ⁾x, Tⁿ⁽ˣ⁾y) ≤ f(d(x,y))`.
    E12,
}

impl VariantTag {
    pub fn parse(s: &str) -> Result<Self> {
        serde_json::from_value(serde_json::Value::String(s.to_ascii_lowercase()))
            .map_err(|_| Error::Input(format!("unknown variant tag {s:?}")))
    }

    fn order_restricted(self) -> bool {
        !matches!(self, VariantTag::B04 | VariantTag::D01)
    }
}

#[derive(Clone, Debug)]
pub enum ContractionVariant {
    OrderLinear { alpha: f64 },
    PlainLinear { alpha: f64 },
    EmOrder { phi: ScalarGauge },
    EmPlain { phi: ScalarGauge },
    PhiOrder { phi: ScalarGauge },
    Iterative { family: PointGaugeFamily },
    IterativeUniform { family: PointGaugeFamily },
}

impl ContractionVariant {
    pub fn tag(&self) -> VariantTag {
        match self {
            ContractionVariant::OrderLinear { .. } => VariantTag::A02,
            ContractionVariant::PlainLinear { .. } => VariantTag::B04,
            ContractionVariant::EmOrder { .. } => VariantTag::C06,
            ContractionVariant::EmPlain { .. } => VariantTag::D01,
            ContractionVariant::PhiOrder { .. } => VariantTag::D02,
            ContractionVariant::Iterative { .. } => VariantTag::E07,
            ContractionVariant::IterativeUniform { .. } => VariantTag::E12,
        }
    }

    pub fn from_spec(spec: &VariantSpec) -> Result<Self> {
        let alpha = || {
            spec.alpha
                .ok_or_else(|| Error::Input(format!("variant {:?} needs alpha", spec.tag)))
        };
        let gauge = || -> Result<ScalarGauge> {
            match (&spec.gauge, spec.alpha) {
                (Some(g), _) => ScalarGauge::from_spec(g),
                (None, Some(a)) => Ok(ScalarGauge::linear(a)),
                (None, None) => Err(Error::Input(format!(
                    "variant {:?} needs a gauge or alpha",
                    spec.tag
                ))),
            }
        };
        let family = || -> Result<PointGaugeFamily> {
            let f = spec
                .family
                .as_ref()
                .ok_or_else(|| Error::Input(format!("variant {:?} needs a family", spec.tag)))?;
            PointGaugeFamily::from_spec(f)
        };
        Ok(match spec.tag {
            VariantTag::A02 => ContractionVariant::OrderLinear { alpha: alpha()? },
            VariantTag::B04 => ContractionVariant::PlainLinear { alpha: alpha()? },
            VariantTag::C06 => ContractionVariant::EmOrder { phi: gauge()? },
            VariantTag::D01 => ContractionVariant::EmPlain { phi: gauge()? },
            VariantTag::D02 => ContractionVariant::PhiOrder { phi: gauge()? },
            VariantTag::E07 => ContractionVariant::Iterative { family: family()? },
            VariantTag::E12 => {
                let family = family()?;
                if family.uniform_gauge().is_none() {
                    return Err(Error::Input("e12 needs a family of kind \"lead\"".into()));
                }
                ContractionVariant::IterativeUniform { family }
            }
        })
    }
}

/// Which table the inequality is evaluated on.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MetricSpec {
    #[default]
    Base,
    /// The series metric built from the base distance; `lambda` defaults to
    /// `sqrt(1/alpha)`.
    Maia { alpha: f64, lambda: Option<f64> },
}

/// JSON form of a [`ContractionVariant`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VariantSpec {
    pub tag: VariantTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gauge: Option<GaugeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<PointFamilySpec>,
    #[serde(default)]
    pub metric: MetricSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub x: usize,
    pub y: usize,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContractionReport {
    pub variant: VariantTag,
    pub holds: bool,
    pub witness: Option<Witness>,
    pub pairs_checked: usize,
    pub slack: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProgressiveSets {
    /// `X(T, ≤) = {x : x ≤ Tx}`
    pub leq: Vec<usize>,
    /// `X(T, <>) = {x : x <> Tx}`
    pub comp: Vec<usize>,
}

pub fn progressive_sets(space: &FiniteSpace) -> Result<ProgressiveSets> {
    let t = space.selfmap()?;
    let n = space.len();
    Ok(ProgressiveSets {
        leq: (0..n).filter(|&x| space.leq(x, t[x])).collect(),
        comp: (0..n).filter(|&x| space.is_comparable(x, t[x])).collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonotoneMode {
    /// `x ≤ y ⟹ Tx ≤ Ty`
    Leq,
    /// `x <> y ⟹ Tx <> Ty`
    Comparability,
    /// Increasing or decreasing (`x ≤ y ⟹ Ty ≤ Tx`).
    Either,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonotoneReport {
    pub mode: MonotoneMode,
    pub holds: bool,
    pub increasing: bool,
    /// Only evaluated in [`MonotoneMode::Either`].
    pub decreasing: Option<bool>,
    pub witness: Option<(usize, usize)>,
    pub pairs_checked: usize,
}

pub fn check_monotone(space: &FiniteSpace, mode: MonotoneMode) -> Result<MonotoneReport> {
    let t = space.selfmap()?;
    let n = space.len();
    let pairs = || (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)));
    let first = |premise: &dyn Fn(usize, usize) -> bool, concl: &dyn Fn(usize, usize) -> bool| {
        pairs().find(|&(x, y)| premise(x, y) && !concl(t[x], t[y]))
    };
    let leq = |a: usize, b: usize| space.leq(a, b);
    let geq = |a: usize, b: usize| space.leq(b, a);
    let comp = |a: usize, b: usize| space.is_comparable(a, b);

    let report = match mode {
        MonotoneMode::Leq => {
            let w = first(&leq, &leq);
            MonotoneReport {
                mode,
                holds: w.is_none(),
                increasing: w.is_none(),
                decreasing: None,
                witness: w,
                pairs_checked: pairs().filter(|&(x, y)| leq(x, y)).count(),
            }
        }
        MonotoneMode::Comparability => {
            let w = first(&comp, &comp);
            MonotoneReport {
                mode,
                holds: w.is_none(),
                increasing: w.is_none(),
                decreasing: None,
                witness: w,
                pairs_checked: pairs().filter(|&(x, y)| comp(x, y)).count(),
            }
        }
        MonotoneMode::Either => {
            let up = first(&leq, &leq);
            let down = first(&leq, &geq);
            MonotoneReport {
                mode,
                holds: up.is_none() || down.is_none(),
                increasing: up.is_none(),
                decreasing: Some(down.is_none()),
                witness: if up.is_none() || down.is_none() { None } else { up },
                pairs_checked: pairs().filter(|&(x, y)| leq(x, y)).count(),
            }
        }
    };
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HlmTriple {
    /// `max{e(x,Tx), e(y,Ty)}`
    pub h: f64,
    /// `½[e(x,Ty) + e(Tx,y)]`
    pub l: f64,
    /// `max{e(x,y), H, L}`
    pub m: f64,
}

pub fn hlm<D: Distance + ?Sized>(
    space: &FiniteSpace,
    metric: &D,
    x: usize,
    y: usize,
) -> Result<HlmTriple> {
    let t = space.selfmap()?;
    Ok(hlm_with(t, metric, x, y))
}

fn hlm_with<D: Distance + ?Sized>(t: &[usize], e: &D, x: usize, y: usize) -> HlmTriple {
    let h = e.dist(x, t[x]).max(e.dist(y, t[y]));
    let l = 0.5 * (e.dist(x, t[y]) + e.dist(t[x], y));
    HlmTriple {
        h,
        l,
        m: e.dist(x, y).max(h).max(l),
    }
}

/// Orbits `x, Tx, …, Tᵏx` for every point, `k = max_len`.
fn orbit_table(t: &[usize], max_len: usize) -> Vec<Vec<usize>> {
    (0..t.len())
        .map(|x| {
            let mut orbit = Vec::with_capacity(max_len + 1);
            let mut p = x;
            orbit.push(p);
            for _ in 0..max_len {
                p = t[p];
                orbit.push(p);
            }
            orbit
        })
        .collect()
}

/// Left and right sides of the iterative condition at `(x, y)`.
pub fn iterative_sides<D: Distance + ?Sized>(
    space: &FiniteSpace,
    metric: &D,
    family: &PointGaugeFamily,
    x: usize,
    y: usize,
) -> Result<(f64, f64)> {
    let t = space.selfmap()?;
    let n = family.exponent(x);
    let orbits = orbit_table(t, n);
    iterative_sides_with(&orbits, metric, family, x, y)
}

fn iterative_sides_with<D: Distance + ?Sized>(
    orbits: &[Vec<usize>],
    e: &D,
    family: &PointGaugeFamily,
    x: usize,
    y: usize,
) -> Result<(f64, f64)> {
    let n = family.exponent(x);
    let (ox, oy) = (&orbits[x], &orbits[y]);
    let mut args = Vec::with_capacity(2 * n + 1);
    args.extend((1..=n).map(|i| e.dist(x, ox[i])));
    args.extend((0..=n).map(|j| e.dist(x, oy[j])));
    Ok((e.dist(ox[n], oy[n]), family.eval(x, &args)?))
}

/// Checks the variant's inequality on its quantified pair set, accepting
/// `lhs ≤ rhs + slack`.
pub fn check_contraction<D: Distance + Sync + ?Sized>(
    space: &FiniteSpace,
    metric: &D,
    variant: &ContractionVariant,
    slack: f64,
) -> Result<ContractionReport> {
    let t = space.selfmap()?;
    let n = space.len();
    if metric.size() != n {
        return Err(Error::Input(format!(
            "metric has {} points, space has {n}",
            metric.size()
        )));
    }
    let tag = variant.tag();
    let family = match variant {
        ContractionVariant::Iterative { family } | ContractionVariant::IterativeUniform { family } => {
            if family.len() != n {
                return Err(Error::Arity {
                    expected: n,
                    got: family.len(),
                });
            }
            Some(family)
        }
        _ => None,
    };
    let orbits = family
        .map(|f| orbit_table(t, f.exponents().into_iter().max().unwrap_or(1)))
        .unwrap_or_default();

    let in_scope = |x: usize, y: usize| -> bool {
        match tag {
            VariantTag::B04 | VariantTag::D01 => true,
            VariantTag::E07 | VariantTag::E12 => {
                space.leq(x, y) && space.leq(x, t[x]) && space.leq(y, t[y])
            }
            _ => space.leq(x, y),
        }
    };
    let sides = |x: usize, y: usize| -> Result<(f64, f64)> {
        match variant {
            ContractionVariant::OrderLinear { alpha } | ContractionVariant::PlainLinear { alpha } => {
                Ok((metric.dist(t[x], t[y]), alpha * metric.dist(x, y)))
            }
            ContractionVariant::EmOrder { phi } | ContractionVariant::EmPlain { phi } => {
                let m = hlm_with(t, metric, x, y).m;
                Ok((metric.dist(t[x], t[y]), phi.eval(m)?))
            }
            ContractionVariant::PhiOrder { phi } => {
                Ok((metric.dist(t[x], t[y]), phi.eval(metric.dist(x, y))?))
            }
            ContractionVariant::Iterative { family }
            | ContractionVariant::IterativeUniform { family } => {
                iterative_sides_with(&orbits, metric, family, x, y)
            }
        }
    };

    let row = |x: usize| -> Option<Result<Witness>> {
        for y in 0..n {
            if !in_scope(x, y) {
                continue;
            }
            match sides(x, y) {
                Err(e) => return Some(Err(e)),
                Ok((lhs, rhs)) if lhs > rhs + slack => {
                    return Some(Ok(Witness { x, y, lhs, rhs }));
                }
                Ok(_) => {}
            }
        }
        None
    };
    let witness = Exec::default()
        .find_first(n, row)
        .map(|(_, w)| w)
        .transpose()?;
    let pairs_checked = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| in_scope(x, y))
        .count();
    debug_assert!(tag.order_restricted() || pairs_checked == n * n);
    Ok(ContractionReport {
        variant: tag,
        holds: witness.is_none(),
        witness,
        pairs_checked,
        slack,
    })
}

/// Smallest `β` of the halving sequence `αₙ/2, αₙ/4, …` (80 steps) with
/// `β + f(x)(α₁, …, αₙ; β, …, β) < αₙ`.
pub fn e10_beta(family: &PointGaugeFamily, x: usize, alphas: &[f64]) -> Result<Option<f64>> {
    let n = family.exponent(x);
    if alphas.len() != n {
        return Err(Error::Arity {
            expected: n,
            got: alphas.len(),
        });
    }
    let target = alphas[n - 1];
    let mut beta = 0.5 * target;
    for _ in 0..80 {
        let mut args = alphas.to_vec();
        args.extend(std::iter::repeat_n(beta, n + 1));
        if beta + family.eval(x, &args)? < target {
            return Ok(Some(beta));
        }
        beta *= 0.5;
    }
    Ok(None)
}

/// `f(x)(α₁, …, αₙ; α₁, …, αₙ, α₁) < α₁`.
pub fn e11_holds(family: &PointGaugeFamily, x: usize, alphas: &[f64]) -> Result<bool> {
    let n = family.exponent(x);
    if alphas.len() != n {
        return Err(Error::Arity {
            expected: n,
            got: alphas.len(),
        });
    }
    let mut args = alphas.to_vec();
    args.extend_from_slice(alphas);
    args.push(alphas[0]);
    Ok(family.eval(x, &args)? < alphas[0])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct E1011Report {
    pub plan: String,
    pub e10: bool,
    pub e11: bool,
    /// `(point, α-vector)` with no admissible β.
    pub e10_witness: Option<(usize, Vec<f64>)>,
    pub e11_witness: Option<(usize, Vec<f64>)>,
    /// First β found at each checked point.
    pub betas: Vec<(usize, f64)>,
    pub vectors_checked: usize,
}

const E1011_VECTORS: usize = 32;

/// Samples α-vectors at every point of `Y = {x : x ≤ Tx}`: for (e10) with
/// `αₙ > 0`, for (e11) with `α₁ > 0` and `αₙ = 0` (vacuous when `n(x) = 1`).
pub fn check_e10_e11(
    family: &PointGaugeFamily,
    space: &FiniteSpace,
    plan: &SamplingPlan,
) -> Result<E1011Report> {
    let t = space.selfmap()?;
    if family.len() != space.len() {
        return Err(Error::Arity {
            expected: space.len(),
            got: family.len(),
        });
    }
    let pts = plan.points();
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    let mut rep = E1011Report {
        plan: plan.name(),
        e10: true,
        e11: true,
        e10_witness: None,
        e11_witness: None,
        betas: Vec::new(),
        vectors_checked: 0,
    };
    for x in (0..space.len()).filter(|&x| space.leq(x, t[x])) {
        let n = family.exponent(x);
        let mut first_beta = None;
        for _ in 0..E1011_VECTORS {
            let alphas: Vec<f64> = (0..n).map(|_| pts[rng.gen_range(0..pts.len())]).collect();
            rep.vectors_checked += 1;
            match e10_beta(family, x, &alphas)? {
                Some(b) => {
                    first_beta.get_or_insert(b);
                }
                None => {
                    rep.e10 = false;
                    rep.e10_witness.get_or_insert((x, alphas.clone()));
                }
            }
            if n >= 2 {
                let mut a = alphas;
                a[n - 1] = 0.0;
                if !e11_holds(family, x, &a)? {
                    rep.e11 = false;
                    rep.e11_witness.get_or_insert((x, a));
                }
            }
        }
        if let Some(b) = first_beta {
            rep.betas.push((x, b));
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compfn::PointKernel;

    fn unit(n: usize) -> Vec<Vec<f64>> {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { 0.0 } else { 1.0 }).collect())
            .collect()
    }

    fn chain(n: usize) -> Vec<(usize, usize)> {
        (1..n).map(|i| (i - 1, i)).collect()
    }

    fn line(vals: &[f64]) -> Vec<Vec<f64>> {
        vals.iter().map(|a| vals.iter().map(|b| (a - b).abs()).collect()).collect()
    }

    #[test]
    fn progressive() {
        let s = FiniteSpace::from_pairs(unit(3), &chain(3), Some(vec![0, 1, 2])).unwrap();
        assert_eq!(progressive_sets(&s).unwrap().leq, vec![0, 1, 2]);

        let swap = FiniteSpace::from_pairs(unit(2), &[], Some(vec![1, 0])).unwrap();
        let p = progressive_sets(&swap).unwrap();
        assert!(p.leq.is_empty() && p.comp.is_empty());

        let up = FiniteSpace::from_pairs(unit(3), &chain(3), Some(vec![1, 2, 2])).unwrap();
        assert_eq!(progressive_sets(&up).unwrap().leq, vec![0, 1, 2]);

        let bare = FiniteSpace::from_pairs(unit(2), &[], None).unwrap();
        assert_eq!(progressive_sets(&bare), Err(Error::MissingSelfmap));
    }

    #[test]
    fn monotone() {
        let id = FiniteSpace::from_pairs(unit(3), &[(0, 2)], Some(vec![0, 1, 2])).unwrap();
        for mode in [MonotoneMode::Leq, MonotoneMode::Comparability, MonotoneMode::Either] {
            assert!(check_monotone(&id, mode).unwrap().holds);
        }
        let constant = id.with_selfmap(vec![1, 1, 1]).unwrap();
        assert!(check_monotone(&constant, MonotoneMode::Leq).unwrap().holds);

        let flip = FiniteSpace::from_pairs(unit(2), &chain(2), Some(vec![1, 0])).unwrap();
        let r = check_monotone(&flip, MonotoneMode::Leq).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness, Some((0, 1)));
        let r = check_monotone(&flip, MonotoneMode::Either).unwrap();
        assert!(r.holds && !r.increasing && r.decreasing == Some(true));
    }

    #[test]
    fn hlm_values() {
        let s = FiniteSpace::from_pairs(unit(2), &[], Some(vec![0, 0])).unwrap();
        let z = hlm(&s, &s, 0, 0).unwrap();
        assert_eq!((z.h, z.l, z.m), (0.0, 0.0, 0.0));

        // hand-filled asymmetric table, T = 0→1→2→2
        let d = vec![
            vec![0.0, 2.0, 3.0],
            vec![1.0, 0.0, 4.0],
            vec![2.5, 1.5, 0.0],
        ];
        let s = FiniteSpace::from_pairs(d.clone(), &[], Some(vec![1, 2, 2])).unwrap();
        let got = hlm(&s, &s, 0, 2).unwrap();
        // straight-line evaluation: H = max(d01, d22) = 2, L = (d02 + d12)/2 = 3.5
        let (h, l) = (f64::max(d[0][1], d[2][2]), 0.5 * (d[0][2] + d[1][2]));
        assert_eq!(got.h, h);
        assert_eq!(got.l, l);
        assert_eq!(got.m, f64::max(d[0][2], f64::max(h, l)));
        // y = Tx
        let m = hlm(&s, &s, 0, 1).unwrap().m;
        assert_eq!(m, f64::max(d[0][1], d[1][2]));
    }

    #[test]
    fn linear_variants() {
        let constant = FiniteSpace::from_pairs(unit(3), &[], Some(vec![2, 2, 2])).unwrap();
        let r = check_contraction(
            &constant,
            &constant,
            &ContractionVariant::PlainLinear { alpha: 0.3 },
            0.0,
        )
        .unwrap();
        assert!(r.holds);
        assert_eq!(r.pairs_checked, 9);

        let id = FiniteSpace::from_pairs(unit(2), &chain(2), Some(vec![0, 1])).unwrap();
        let r = check_contraction(&id, &id, &ContractionVariant::OrderLinear { alpha: 0.9 }, 0.0)
            .unwrap();
        assert!(!r.holds);
        let w = r.witness.unwrap();
        assert_eq!((w.x, w.y, w.lhs), (0, 1, 1.0));
        assert!((w.rhs - 0.9).abs() < 1e-15);
    }

    #[test]
    fn grid_contracts_at_half() {
        // dyadic grid 2⁻ᵏ − 2⁻⁴, gaps halving towards the bottom
        let vals: Vec<f64> = [0.0, 1.0, 3.0, 7.0, 15.0].iter().map(|v| v / 16.0).collect();
        let pairs: Vec<_> = chain(5);
        let s = FiniteSpace::from_pairs(line(&vals), &pairs, Some(vec![0, 0, 1, 2, 3])).unwrap();
        let r = check_contraction(&s, &s, &ContractionVariant::OrderLinear { alpha: 0.5 }, 0.0)
            .unwrap();
        assert!(r.holds, "{r:?}");
        let r = check_contraction(
            &s,
            &s,
            &ContractionVariant::PhiOrder {
                phi: ScalarGauge::linear(0.5),
            },
            0.0,
        )
        .unwrap();
        assert!(r.holds);
    }

    #[test]
    fn iterative_variant() {
        let vals = [0.0, 8.0, 12.0, 14.0, 15.0, 15.5];
        let s = FiniteSpace::from_pairs(line(&vals), &chain(6), Some(vec![1, 2, 3, 4, 5, 5]))
            .unwrap();
        let fam = PointGaugeFamily::from_spec(&PointFamilySpec {
            exponents: vec![1, 2, 1, 2, 1, 1],
            kernel: PointKernel::MaxTail { coef: 0.5 },
        })
        .unwrap();
        let r = check_contraction(&s, &s, &ContractionVariant::Iterative { family: fam.clone() }, 0.0)
            .unwrap();
        assert!(r.holds, "{r:?}");
        assert_eq!(r.pairs_checked, 21);

        let (lhs, rhs) = iterative_sides(&s, &s, &fam, 1, 4).unwrap();
        // n(1) = 2: d(T²1, T²4) = d(3, 5); rhs = ½ max(d(1,4), d(1,5), d(1,5))
        assert_eq!(lhs, 1.5);
        assert_eq!(rhs, 0.5 * 7.5);

        let short = PointGaugeFamily::from_spec(&PointFamilySpec {
            exponents: vec![1],
            kernel: PointKernel::MaxAll { coef: 0.5 },
        })
        .unwrap();
        assert!(matches!(
            check_contraction(&s, &s, &ContractionVariant::Iterative { family: short }, 0.0),
            Err(Error::Arity { .. })
        ));
    }

    #[test]
    fn e10_e11_examples() {
        let quarter = PointGaugeFamily::from_spec(&PointFamilySpec {
            exponents: vec![1],
            kernel: PointKernel::MaxAll { coef: 0.25 },
        })
        .unwrap();
        assert_eq!(e10_beta(&quarter, 0, &[1.0]).unwrap(), Some(0.5));

        let zero = PointGaugeFamily::from_spec(&PointFamilySpec {
            exponents: vec![2, 2],
            kernel: PointKernel::MaxAll { coef: 0.0 },
        })
        .unwrap();
        let s = FiniteSpace::from_pairs(unit(2), &chain(2), Some(vec![1, 1])).unwrap();
        let r = check_e10_e11(&zero, &s, &SamplingPlan::default()).unwrap();
        assert!(r.e10 && r.e11);

        let full = PointGaugeFamily::from_spec(&PointFamilySpec {
            exponents: vec![2, 2],
            kernel: PointKernel::MaxAll { coef: 1.0 },
        })
        .unwrap();
        assert!(!e11_holds(&full, 0, &[1.0, 0.0]).unwrap());
        let r = check_e10_e11(&full, &s, &SamplingPlan::default()).unwrap();
        assert!(!r.e11 && !r.e10);
        let (x, a) = r.e11_witness.unwrap();
        assert!(!e11_holds(&full, x, &a).unwrap());
    }

    #[test]
    fn variant_json() {
        let spec: VariantSpec = serde_json::from_str(r#"{"tag":"a02","alpha":0.5}"#).unwrap();
        assert!(matches!(
            ContractionVariant::from_spec(&spec).unwrap(),
            ContractionVariant::OrderLinear { alpha } if alpha == 0.5
        ));
        let spec: VariantSpec =
            serde_json::from_str(r#"{"tag":"c06","gauge":{"family":"rational","c":1}}"#).unwrap();
        assert_eq!(ContractionVariant::from_spec(&spec).unwrap().tag(), VariantTag::C06);
        let spec: VariantSpec = serde_json::from_str(r#"{"tag":"e07"}"#).unwrap();
        assert!(ContractionVariant::from_spec(&spec).is_err());
        assert_eq!(VariantTag::parse("D02").unwrap(), VariantTag::D02);
    }
}
