//! Finite quasi-ordered (almost-)metric spaces.
//!
//! A [`FiniteSpace`] is an enumerated carrier `0..n` with a distance table, a
//! relation `≤` stored as a boolean matrix and an optional self-map. Axioms are
//! not enforced at construction: [`FiniteSpace::check_axioms`] reports which
//! ones hold, so that defective instances can still be loaded and inspected.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Read access to an `n × n` distance table.
pub trait Distance {
    fn size(&self) -> usize;
    fn dist(&self, x: usize, y: usize) -> f64;
}

impl Distance for [Vec<f64>] {
    fn size(&self) -> usize {
        self.len()
    }

    fn dist(&self, x: usize, y: usize) -> f64 {
        self[x][y]
    }
}

impl Distance for Vec<Vec<f64>> {
    fn size(&self) -> usize {
        self.len()
    }

    fn dist(&self, x: usize, y: usize) -> f64 {
        self[x][y]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiniteSpace {
    n: usize,
    dist: Vec<f64>,
    order: Vec<bool>,
    selfmap: Option<Vec<usize>>,
    symmetric: bool,
}

impl FiniteSpace {
    /// Builds a space from row-major tables. Only shapes and value ranges are
    /// validated here; the axioms are checked separately.
    pub fn new(
        dist: Vec<Vec<f64>>,
        order: Vec<Vec<bool>>,
        selfmap: Option<Vec<usize>>,
    ) -> Result<Self> {
        let n = dist.len();
        if n == 0 {
            return Err(Error::Input("the carrier must be nonempty".into()));
        }
        for (i, row) in dist.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Input(format!(
                    "dist row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            if let Some(j) = row.iter().position(|v| !v.is_finite() || *v < 0.0) {
                return Err(Error::Input(format!(
                    "dist[{i}][{j}] = {} is not a finite nonnegative real",
                    row[j]
                )));
            }
        }
        if order.len() != n {
            return Err(Error::Input(format!(
                "order has {} rows, expected {n}",
                order.len()
            )));
        }
        for (i, row) in order.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Input(format!(
                    "order row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
        }
        if let Some(map) = &selfmap {
            if map.len() != n {
                return Err(Error::Input(format!(
                    "selfmap has length {}, expected {n}",
                    map.len()
                )));
            }
            if let Some(i) = map.iter().position(|&v| v >= n) {
                return Err(Error::Input(format!(
                    "selfmap[{i}] = {} is out of range",
                    map[i]
                )));
            }
        }
        let dist: Vec<f64> = dist.into_iter().flatten().collect();
        let symmetric = (0..n).all(|i| (0..n).all(|j| dist[i * n + j] == dist[j * n + i]));
        Ok(FiniteSpace {
            n,
            dist,
            order: order.into_iter().flatten().collect(),
            selfmap,
            symmetric,
        })
    }

    /// Builds the relation as the reflexive-transitive closure of `pairs`
    /// (each `(i, j)` meaning `i ≤ j`).
    pub fn from_pairs(
        dist: Vec<Vec<f64>>,
        pairs: &[(usize, usize)],
        selfmap: Option<Vec<usize>>,
    ) -> Result<Self> {
        let n = dist.len();
        let mut order = vec![vec![false; n]; n];
        for (i, row) in order.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(i, j) in pairs {
            if i >= n || j >= n {
                return Err(Error::Input(format!("order pair ({i}, {j}) is out of range")));
            }
            order[i][j] = true;
        }
        transitive_closure(&mut order);
        Self::new(dist, order, selfmap)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.order[x * self.n + y]
    }

    /// Whether `dist` is symmetric everywhere (metric rather than almost metric).
    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn selfmap(&self) -> Result<&[usize]> {
        self.selfmap.as_deref().ok_or(Error::MissingSelfmap)
    }

    pub fn has_selfmap(&self) -> bool {
        self.selfmap.is_some()
    }

    pub fn with_selfmap(&self, selfmap: Vec<usize>) -> Result<Self> {
        Self::new(self.dist_rows(), self.order_rows(), Some(selfmap))
    }

    /// `Tᵏx`.
    pub fn iterate_map(&self, x: usize, k: usize) -> Result<usize> {
        let map = self.selfmap()?;
        Ok((0..k).fold(x, |p, _| map[p]))
    }

    pub fn dist_rows(&self) -> Vec<Vec<f64>> {
        self.dist.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    pub fn order_rows(&self) -> Vec<Vec<bool>> {
        self.order.chunks(self.n).map(<[bool]>::to_vec).collect()
    }

    fn check_index(&self, x: usize) -> Result<()> {
        if x < self.n {
            Ok(())
        } else {
            Err(Error::Input(format!("point {x} is out of range 0..{}", self.n)))
        }
    }

    pub fn comparable(&self, x: usize, y: usize) -> Result<bool> {
        self.check_index(x)?;
        self.check_index(y)?;
        Ok(self.is_comparable(x, y))
    }

    pub(crate) fn is_comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// Shortest `<>`-chain from `x` to `y`, breadth-first with the lowest
    /// index explored first. `x == y` yields the one-element chain `[x]`.
    pub fn find_chain(&self, x: usize, y: usize) -> Result<Option<ChainPath>> {
        self.check_index(x)?;
        self.check_index(y)?;
        if x == y {
            return Ok(Some(ChainPath(vec![x])));
        }
        let mut prev = vec![usize::MAX; self.n];
        prev[x] = x;
        let mut queue = VecDeque::from([x]);
        while let Some(u) = queue.pop_front() {
            for v in 0..self.n {
                if prev[v] != usize::MAX || !self.is_comparable(u, v) {
                    continue;
                }
                prev[v] = u;
                if v == y {
                    let mut path = vec![y];
                    let mut cur = y;
                    while cur != x {
                        cur = prev[cur];
                        path.push(cur);
                    }
                    path.reverse();
                    return Ok(Some(ChainPath(path)));
                }
                queue.push_back(v);
            }
        }
        Ok(None)
    }

    /// Blocks of the chain equivalence `~`, each sorted, ordered by their
    /// smallest point.
    pub fn chain_components(&self) -> Vec<Vec<usize>> {
        let mut sets = DisjointSets::new(self.n);
        for x in 0..self.n {
            for y in x + 1..self.n {
                if self.is_comparable(x, y) {
                    sets.union(x, y);
                }
            }
        }
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; self.n];
        for x in 0..self.n {
            let root = sets.find(x);
            if slot[root] == usize::MAX {
                slot[root] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[slot[root]].push(x);
        }
        blocks
    }

    pub fn check_axioms(&self, mode: AxiomMode) -> AxiomReport {
        let mut checks = Vec::new();
        match mode {
            AxiomMode::Metric | AxiomMode::AlmostMetric => {
                checks.extend(distance_axioms(self, mode == AxiomMode::Metric, 0.0));
            }
            AxiomMode::QuasiOrder | AxiomMode::Order => {
                let n = self.n;
                checks.push(AxiomCheck::from_witness(
                    Axiom::OrderReflexive,
                    (0..n).find(|&i| !self.leq(i, i)).map(|i| vec![i]),
                ));
                checks.push(AxiomCheck::from_witness(
                    Axiom::OrderTransitive,
                    triples(n)
                        .find(|&(i, j, k)| self.leq(i, j) && self.leq(j, k) && !self.leq(i, k))
                        .map(|(i, j, k)| vec![i, j, k]),
                ));
                if mode == AxiomMode::Order {
                    checks.push(AxiomCheck::from_witness(
                        Axiom::Antisymmetric,
                        pairs(n)
                            .find(|&(i, j)| i != j && self.leq(i, j) && self.leq(j, i))
                            .map(|(i, j)| vec![i, j]),
                    ));
                }
            }
        }
        AxiomReport { mode, checks }
    }

    pub fn check_bounds_and_directedness(&self) -> BoundsReport {
        let n = self.n;
        let a05_witness = pairs(n).find(|&(x, y)| {
            let lower = (0..n).any(|u| self.leq(u, x) && self.leq(u, y));
            let upper = (0..n).any(|v| self.leq(x, v) && self.leq(y, v));
            !(lower && upper)
        });
        let d03_witness = triples(n).find(|&(x, y, z)| {
            self.is_comparable(x, y) && self.is_comparable(y, z) && !self.is_comparable(x, z)
        });
        let d04_witness = pairs(n).find(|&(x, y)| {
            !self.is_comparable(x, y)
                && !(0..n).any(|c| self.is_comparable(x, c) && self.is_comparable(y, c))
        });
        let linear_witness = pairs(n).find(|&(x, y)| !self.is_comparable(x, y));
        BoundsReport {
            a05: a05_witness.is_none(),
            d03: d03_witness.is_none(),
            d04: d04_witness.is_none(),
            linear: linear_witness.is_none(),
            a05_witness,
            d03_witness,
            d04_witness,
            linear_witness,
        }
    }
}

impl Distance for FiniteSpace {
    fn size(&self) -> usize {
        self.n
    }

    fn dist(&self, x: usize, y: usize) -> f64 {
        self.dist[x * self.n + y]
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)))
}

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    pairs(n).flat_map(move |(i, j)| (0..n).map(move |k| (i, j, k)))
}

/// Reflexivity, sufficiency and the triangle inequality (plus symmetry when
/// `symmetric`), each up to `tol`. The triangle witness `(i, j, k)` reads
/// `dist(i, k) > dist(i, j) + dist(j, k) + tol`.
pub(crate) fn distance_axioms<D: Distance + ?Sized>(
    table: &D,
    symmetric: bool,
    tol: f64,
) -> Vec<AxiomCheck> {
    let n = table.size();
    let mut checks = vec![
        AxiomCheck::from_witness(
            Axiom::Reflexive,
            (0..n).find(|&i| table.dist(i, i) > tol).map(|i| vec![i]),
        ),
        AxiomCheck::from_witness(
            Axiom::Sufficient,
            pairs(n)
                .find(|&(i, j)| i != j && table.dist(i, j) == 0.0)
                .map(|(i, j)| vec![i, j]),
        ),
        AxiomCheck::from_witness(
            Axiom::Triangular,
            triples(n)
                .find(|&(i, j, k)| table.dist(i, k) > table.dist(i, j) + table.dist(j, k) + tol)
                .map(|(i, j, k)| vec![i, j, k]),
        ),
    ];
    if symmetric {
        checks.push(AxiomCheck::from_witness(
            Axiom::Symmetric,
            pairs(n)
                .find(|&(i, j)| (table.dist(i, j) - table.dist(j, i)).abs() > tol)
                .map(|(i, j)| vec![i, j]),
        ));
    }
    checks
}

/// Warshall closure of a boolean relation, in place.
pub(crate) fn transitive_closure(rel: &mut [Vec<bool>]) {
    let n = rel.len();
    for k in 0..n {
        for i in 0..n {
            if rel[i][k] {
                for j in 0..n {
                    if rel[k][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AxiomMode {
    Metric,
    AlmostMetric,
    QuasiOrder,
    Order,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Reflexive,
    Sufficient,
    Triangular,
    Symmetric,
    OrderReflexive,
    OrderTransitive,
    Antisymmetric,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub holds: bool,
    /// First violating index tuple in lexicographic order.
    pub witness: Option<Vec<usize>>,
}

impl AxiomCheck {
    fn from_witness(axiom: Axiom, witness: Option<Vec<usize>>) -> Self {
        AxiomCheck {
            axiom,
            holds: witness.is_none(),
            witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub mode: AxiomMode,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn get(&self, axiom: Axiom) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }
}

/// A `<>`-chain `z₁, …, z_k`: consecutive points are comparable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainPath(pub Vec<usize>);

impl ChainPath {
    pub fn points(&self) -> &[usize] {
        &self.0
    }

    pub fn is_valid(&self, space: &FiniteSpace) -> bool {
        !self.0.is_empty() && self.0.windows(2).all(|w| space.is_comparable(w[0], w[1]))
    }

    /// `Σ d(zᵢ, zᵢ₊₁)`, taking the larger direction when `d` is asymmetric.
    pub fn length<D: Distance + ?Sized>(&self, table: &D) -> f64 {
        self.0
            .windows(2)
            .map(|w| table.dist(w[0], w[1]).max(table.dist(w[1], w[0])))
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    /// Every pair has a lower and an upper bound.
    pub a05: bool,
    /// Comparability is transitive.
    pub d03: bool,
    /// Every incomparable pair has a common comparable point.
    pub d04: bool,
    /// Every pair is comparable.
    pub linear: bool,
    pub a05_witness: Option<(usize, usize)>,
    pub d03_witness: Option<(usize, usize, usize)>,
    pub d04_witness: Option<(usize, usize)>,
    pub linear_witness: Option<(usize, usize)>,
}

struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.rank[a] < self.rank[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        if self.rank[a] == self.rank[b] {
            self.rank[a] += 1;
        }
    }
}
