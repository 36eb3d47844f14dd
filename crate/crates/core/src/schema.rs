//! Shared JSON instance format.
//!
//! ```json
//! {
//!   "name": "two-cycle",
//!   "n": 2,
//!   "dist": [[0, 1], [1, 0]],
//!   "order": [[0, 1]],
//!   "selfmap": [1, 0],
//!   "alpha": 0.5,
//!   "gauge": {"family": "linear", "alpha": 0.5},
//!   "family": {"exponents": [1, 1], "kernel": {"kind": "max_tail", "coef": 0.5}},
//!   "provenance": "library:two-cycle"
//! }
//! ```
//!
//! `order` is either an `n×n` boolean matrix or a list of `[i, j]` pairs
//! meaning `i ≤ j`, closed reflexively and transitively. Export always
//! writes the matrix form.

use serde::{Deserialize, Serialize};

use crate::compfn::{GaugeSpec, PointFamilySpec, PointGaugeFamily, ScalarGauge};
use crate::error::{Error, Result};
use crate::instances::InstanceSpec;
use crate::spaces::{AxiomMode, FiniteSpace};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OrderDoc {
    Matrix(Vec<Vec<bool>>),
    Pairs(Vec<(usize, usize)>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n: usize,
    pub dist: Vec<Vec<f64>>,
    pub order: OrderDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub selfmap: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gauge: Option<GaugeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<PointFamilySpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

fn at(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::Input(format!("{path}: {msg}"))
}

/// Parses and validates an instance document. Errors carry the JSON path of
/// the offending value.
pub fn parse_instance(text: &str) -> Result<InstanceSpec> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: InstanceDoc = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        at(&format!("$.{path}").replace("$..", "$"), e.inner())
    })?;
    from_doc(doc)
}

pub fn from_doc(doc: InstanceDoc) -> Result<InstanceSpec> {
    let n = doc.n;
    if doc.dist.len() != n {
        return Err(at("$.dist", format!("has {} rows, expected n = {n}", doc.dist.len())));
    }
    for (i, row) in doc.dist.iter().enumerate() {
        if row.len() != n {
            return Err(at(
                &format!("$.dist[{i}]"),
                format!("dist row {i} has length {}, expected {n}", row.len()),
            ));
        }
    }
    let order = match doc.order {
        OrderDoc::Matrix(m) if m.is_empty() => OrderDoc::Pairs(Vec::new()),
        other => other,
    };
    let space = match order {
        OrderDoc::Matrix(m) => {
            if m.len() != n {
                return Err(at("$.order", format!("has {} rows, expected n = {n}", m.len())));
            }
            if let Some(i) = m.iter().position(|r| r.len() != n) {
                return Err(at(
                    &format!("$.order[{i}]"),
                    format!("order row {i} has length {}, expected {n}", m[i].len()),
                ));
            }
            FiniteSpace::new(doc.dist, m, doc.selfmap)
        }
        OrderDoc::Pairs(p) => {
            if let Some(k) = p.iter().position(|&(i, j)| i >= n || j >= n) {
                return Err(at(&format!("$.order[{k}]"), format!("pair out of range for n = {n}")));
            }
            FiniteSpace::from_pairs(doc.dist, &p, doc.selfmap)
        }
    }
    .map_err(|e| match e {
        Error::Input(m) if m.contains("selfmap") => at("$.selfmap", m),
        Error::Input(m) => at("$.dist", m),
        other => other,
    })?;

    let metric_mode = if space.is_symmetric() {
        AxiomMode::Metric
    } else {
        AxiomMode::AlmostMetric
    };
    for mode in [metric_mode, AxiomMode::QuasiOrder] {
        let rep = space.check_axioms(mode);
        if let Some(c) = rep.checks.iter().find(|c| !c.holds) {
            let field = if mode == AxiomMode::QuasiOrder { "$.order" } else { "$.dist" };
            return Err(at(field, format!("{:?} fails at {:?}", c.axiom, c.witness)));
        }
    }
    if let Some(a) = doc.alpha {
        if !(a > 0.0 && a < 1.0) {
            return Err(at("$.alpha", format!("must lie in (0, 1), got {a}")));
        }
    }
    if let Some(g) = &doc.gauge {
        ScalarGauge::from_spec(g).map_err(|e| at("$.gauge", e))?;
    }
    if let Some(f) = &doc.family {
        if f.exponents.len() != n {
            return Err(at(
                "$.family.exponents",
                format!("has {} entries, expected n = {n}", f.exponents.len()),
            ));
        }
        PointGaugeFamily::from_spec(f).map_err(|e| at("$.family", e))?;
    }
    Ok(InstanceSpec {
        name: doc.name,
        space,
        alpha: doc.alpha,
        gauge: doc.gauge,
        family: doc.family,
        provenance: doc.provenance,
    })
}

pub fn to_doc(spec: &InstanceSpec) -> InstanceDoc {
    InstanceDoc {
        name: spec.name.clone(),
        n: spec.space.len(),
        dist: spec.space.dist_rows(),
        order: OrderDoc::Matrix(spec.space.order_rows()),
        selfmap: spec.space.selfmap().ok().map(<[usize]>::to_vec),
        alpha: spec.alpha,
        gauge: spec.gauge.clone(),
        family: spec.family.clone(),
        provenance: spec.provenance.clone(),
    }
}

pub fn export_instance(spec: &InstanceSpec) -> String {
    serde_json::to_string_pretty(&to_doc(spec)).expect("instance documents serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singleton_document() {
        let s = parse_instance(r#"{"n": 1, "dist": [[0]], "order": [[true]]}"#).unwrap();
        assert_eq!(s.space.len(), 1);
        assert!(!s.space.has_selfmap());
    }

    #[test]
    fn errors_name_the_location() {
        let e = parse_instance(r#"{"n": 2, "dist": [[0, 1], [1]], "order": []}"#).unwrap_err();
        assert!(e.to_string().contains("$.dist[1]"), "{e}");
        assert!(e.to_string().contains("row 1"), "{e}");

        let e = parse_instance(r#"{"n": 2, "dist": [[0, 1], [1, "x"]], "order": []}"#)
            .unwrap_err();
        assert!(e.to_string().contains("dist[1][1]"), "{e}");

        let e = parse_instance(r#"{"n": 2, "dist": [[0, 1], [1, 0]], "order": [], "selfmap": [0, 5]}"#)
            .unwrap_err();
        assert!(e.to_string().contains("$.selfmap"), "{e}");

        let e = parse_instance(r#"{"n": 3, "dist": [[0,1,5],[1,0,1],[5,1,0]], "order": []}"#)
            .unwrap_err();
        assert!(e.to_string().contains("Triangular"), "{e}");
    }

    #[test]
    fn pair_and_matrix_orders_agree() {
        let a = parse_instance(r#"{"n": 2, "dist": [[0, 1], [1, 0]], "order": [[0, 1]]}"#).unwrap();
        let b = parse_instance(
            r#"{"n": 2, "dist": [[0, 1], [1, 0]], "order": [[true, true], [false, true]]}"#,
        )
        .unwrap();
        assert_eq!(a, b);
    }
}
