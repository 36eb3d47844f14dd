//! The series metric `e(x,y) = Σₙ λⁿ d(Tⁿx, Tⁿy)`.
//!
//! Under an order-restricted linear contraction with `<>`-increasing `T` and a
//! connected comparability graph, `e` is finite, dominates `d`, satisfies
//! `e(x,y) = d(x,y) + λ e(Tx,Ty)` and makes `T` a plain contraction with
//! factor `1/λ`. On a finite carrier the orbits of `x` and `y` merge after
//! finitely many steps, after which every term vanishes and the sum is exact.

use serde::{Deserialize, Serialize};

use crate::contract::{check_contraction, check_monotone, ContractionVariant, MonotoneMode};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::spaces::{distance_axioms, Distance, FiniteSpace};

pub const DEFAULT_TOL: f64 = 1e-9;
const CHECK_FLOOR: f64 = 1e-12;
const MAX_TERMS: usize = 100_000;

/// Geometric midpoint of `(1, 1/α)`.
pub fn default_lambda(alpha: f64) -> f64 {
    (1.0 / alpha).sqrt()
}

#[derive(Clone, Debug, PartialEq)]
pub struct DerivedMetric {
    base: FiniteSpace,
    alpha: f64,
    lambda: f64,
    tol: f64,
    table: Vec<Vec<f64>>,
    tail_bound: Vec<Vec<f64>>,
    truncation: Vec<Vec<usize>>,
}

impl Distance for DerivedMetric {
    fn size(&self) -> usize {
        self.table.len()
    }

    fn dist(&self, x: usize, y: usize) -> f64 {
        self.table[x][y]
    }
}

impl DerivedMetric {
    pub fn base(&self) -> &FiniteSpace {
        &self.base
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `μ = 1/λ`.
    pub fn mu(&self) -> f64 {
        1.0 / self.lambda
    }

    pub fn table(&self) -> &[Vec<f64>] {
        &self.table
    }

    pub fn tail_bound(&self, x: usize, y: usize) -> f64 {
        self.tail_bound[x][y]
    }

    pub fn max_tail_bound(&self) -> f64 {
        self.tail_bound.iter().flatten().copied().fold(0.0, f64::max)
    }

    /// Number of series terms summed for `(x, y)`.
    pub fn truncation(&self, x: usize, y: usize) -> usize {
        self.truncation[x][y]
    }

    /// Tolerance used by [`verify_maia_properties`]: `2·tail + 1e-12`.
    pub fn check_slack(&self) -> f64 {
        2.0 * self.max_tail_bound() + CHECK_FLOOR
    }

    pub fn to_doc(&self) -> DerivedMetricDoc {
        DerivedMetricDoc {
            n: self.table.len(),
            dist: self.table.clone(),
            alpha: self.alpha,
            lambda: self.lambda,
            tol: self.tol,
            tail_bound: self.max_tail_bound(),
            truncation_n: self.truncation.iter().flatten().copied().max().unwrap_or(0),
        }
    }
}

/// Export form: the shared distance-table layout plus series metadata.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivedMetricDoc {
    pub n: usize,
    pub dist: Vec<Vec<f64>>,
    pub alpha: f64,
    pub lambda: f64,
    pub tol: f64,
    pub tail_bound: f64,
    pub truncation_n: usize,
}

pub fn build_maia_metric(
    space: &FiniteSpace,
    alpha: f64,
    lambda: Option<f64>,
    tol: f64,
) -> Result<DerivedMetric> {
    build_maia_metric_with(Exec::default(), space, alpha, lambda, tol)
}

/// Sums the series for every pair until the two orbits meet. Past `n` terms
/// it also stops once the geometric tail `(λα)ᴺ·S/(1 − λα)` drops below
/// `tol` times the smallest positive distance, `S` being the length of the
/// shortest `<>`-chain between the pair.
pub fn build_maia_metric_with(
    exec: Exec,
    space: &FiniteSpace,
    alpha: f64,
    lambda: Option<f64>,
    tol: f64,
) -> Result<DerivedMetric> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Input(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    let lambda = lambda.unwrap_or_else(|| default_lambda(alpha));
    if !(lambda > 1.0 && lambda * alpha < 1.0) {
        return Err(Error::Input(format!(
            "lambda must lie in (1, 1/alpha) = (1, {}), got {lambda}",
            1.0 / alpha
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::Input(format!("tol must be positive, got {tol}")));
    }
    let t = space.selfmap()?;
    let a02 = check_contraction(space, space, &ContractionVariant::OrderLinear { alpha }, 0.0)?;
    if !a02.holds {
        return Err(Error::Precondition(format!(
            "a02 fails at alpha = {alpha}: {:?}",
            a02.witness
        )));
    }
    let b02 = check_monotone(space, MonotoneMode::Comparability)?;
    if !b02.holds {
        return Err(Error::Precondition(format!(
            "b02 fails: T is not <>-increasing at {:?}",
            b02.witness
        )));
    }
    if space.chain_components().len() != 1 {
        return Err(Error::Precondition(
            "b03 fails: the comparability graph is disconnected".into(),
        ));
    }

    let n = space.len();
    let ratio = lambda * alpha;
    // scale of the smallest nonzero distance, so truncation never merges points
    let floor = space
        .dist_rows()
        .iter()
        .flatten()
        .copied()
        .filter(|&v| v > 0.0)
        .fold(f64::INFINITY, f64::min);
    let cutoff = if floor.is_finite() { tol * floor.min(1.0) } else { tol };
    let rows = exec.map(n, |x| {
        let mut row = Vec::with_capacity(n);
        for y in 0..n {
            let mut bound = None;
            let (mut px, mut py) = (x, y);
            let mut sum = 0.0;
            let mut k = 0;
            let tail = loop {
                if px == py {
                    break 0.0;
                }
                if k > n {
                    // connectivity was checked above
                    let s = *bound.get_or_insert_with(|| {
                        space.find_chain(x, y).ok().flatten().expect("connected").length(space)
                    });
                    let tail = ratio.powi(k as i32) * s / (1.0 - ratio);
                    if tail <= cutoff || k >= MAX_TERMS {
                        break tail;
                    }
                }
                sum += lambda.powi(k as i32) * space.dist(px, py);
                px = t[px];
                py = t[py];
                k += 1;
            };
            row.push((sum, tail, k));
        }
        row
    });

    let mut dm = DerivedMetric {
        base: space.clone(),
        alpha,
        lambda,
        tol,
        table: Vec::with_capacity(n),
        tail_bound: Vec::with_capacity(n),
        truncation: Vec::with_capacity(n),
    };
    for row in rows {
        dm.table.push(row.iter().map(|r| r.0).collect());
        dm.tail_bound.push(row.iter().map(|r| r.1).collect());
        dm.truncation.push(row.iter().map(|r| r.2).collect());
    }
    Ok(dm)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaiaReport {
    /// `e(x,y) = d(x,y) + λ e(Tx,Ty)`
    pub identity: bool,
    /// `d ≤ e`
    pub subordination: bool,
    /// Reflexive, sufficient, triangular.
    pub axioms: bool,
    /// `e(Tx,Ty) ≤ (1/λ) e(x,y)`
    pub contraction_mu: bool,
    pub symmetric: bool,
    pub slack: f64,
    pub max_identity_residual: f64,
    pub identity_witness: Option<(usize, usize)>,
    pub subordination_witness: Option<(usize, usize)>,
    pub contraction_witness: Option<(usize, usize)>,
}

impl MaiaReport {
    pub fn all_pass(&self) -> bool {
        self.identity && self.subordination && self.axioms && self.contraction_mu
    }
}

pub fn verify_maia_properties(dm: &DerivedMetric) -> Result<MaiaReport> {
    let base = &dm.base;
    let t = base.selfmap()?;
    let n = dm.table.len();
    let slack = dm.check_slack();
    let pairs = || (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)));

    let residual =
        |x: usize, y: usize| (dm.dist(x, y) - base.dist(x, y) - dm.lambda * dm.dist(t[x], t[y])).abs();
    let max_identity_residual = pairs().map(|(x, y)| residual(x, y)).fold(0.0, f64::max);
    let identity_witness = pairs().find(|&(x, y)| residual(x, y) > slack);
    let subordination_witness = pairs().find(|&(x, y)| base.dist(x, y) > dm.dist(x, y) + slack);
    let contraction_witness =
        pairs().find(|&(x, y)| dm.dist(t[x], t[y]) > dm.mu() * dm.dist(x, y) + slack);
    let axioms = distance_axioms(dm, false, slack).iter().all(|c| c.holds);
    let symmetric = pairs().all(|(x, y)| (dm.dist(x, y) - dm.dist(y, x)).abs() <= slack);

    Ok(MaiaReport {
        identity: identity_witness.is_none(),
        subordination: subordination_witness.is_none(),
        axioms,
        contraction_mu: contraction_witness.is_none(),
        symmetric,
        slack,
        max_identity_residual,
        identity_witness,
        subordination_witness,
        contraction_witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(n: usize) -> Vec<Vec<f64>> {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { 0.0 } else { 1.0 }).collect())
            .collect()
    }

    #[test]
    fn constant_map_gives_base_metric() {
        let s = FiniteSpace::from_pairs(unit(3), &[(0, 1), (1, 2)], Some(vec![1, 1, 1])).unwrap();
        let dm = build_maia_metric(&s, 0.5, None, DEFAULT_TOL).unwrap();
        assert_eq!(dm.table(), s.dist_rows().as_slice());
        assert_eq!(dm.max_tail_bound(), 0.0);
        let rep = verify_maia_properties(&dm).unwrap();
        assert!(rep.all_pass());
        assert!(rep.symmetric);
        assert_eq!(rep.max_identity_residual, 0.0);
    }

    #[test]
    fn parameter_errors() {
        let s = FiniteSpace::from_pairs(unit(2), &[(0, 1)], Some(vec![1, 1])).unwrap();
        assert!(matches!(build_maia_metric(&s, 0.5, Some(2.5), 1e-9), Err(Error::Input(_))));
        assert!(matches!(build_maia_metric(&s, 0.5, Some(1.0), 1e-9), Err(Error::Input(_))));
        assert!(matches!(build_maia_metric(&s, 1.5, None, 1e-9), Err(Error::Input(_))));

        let two = FiniteSpace::from_pairs(unit(2), &[], Some(vec![0, 1])).unwrap();
        assert!(matches!(
            build_maia_metric(&two, 0.5, None, 1e-9),
            Err(Error::Precondition(msg)) if msg.contains("a02") || msg.contains("b03")
        ));
        let disconnected = FiniteSpace::from_pairs(unit(2), &[], Some(vec![0, 0])).unwrap();
        // a02 and b02 hold vacuously-ish; b03 fails
        assert!(matches!(
            build_maia_metric(&disconnected, 0.5, None, 1e-9),
            Err(Error::Precondition(msg)) if msg.contains("b03")
        ));
    }
}
