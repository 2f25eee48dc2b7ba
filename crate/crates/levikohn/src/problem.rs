//! Problem files: one UTF-8 JSON document holding the defining function and
//! any named varieties, vector-field families, holomorphic maps, metrics,
//! sampling windows, and budgets a command may need. All expressions are
//! exact; floating literals are rejected by the grammar.

use crate::error::{Error, Result};
use crate::kohn::DEFAULT_MAX_STEPS;
use crate::levi::{DefiningFunction, HermitianMetric, Point, RealBox};
use crate::parse::{parse_constant, parse_map_component, parse_polynomial};
use crate::rational::GaussianRational;
use crate::variety::{FieldKind, HoloMap, PolyVectorField, VarietyIdeal};
use serde::Deserialize;
use std::collections::BTreeMap;

#[derive(Debug, Deserialize)]
struct RawProblem {
    dimension: usize,
    defining_function: String,
    #[serde(default)]
    metric: Option<Vec<Vec<String>>>,
    #[serde(default)]
    metrics: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default)]
    varieties: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    vector_fields: BTreeMap<String, Vec<RawField>>,
    #[serde(default)]
    holo_maps: BTreeMap<String, RawMap>,
    #[serde(default)]
    q: Option<usize>,
    #[serde(default)]
    base_point: Option<Vec<String>>,
    #[serde(default)]
    sampling: RawSampling,
    #[serde(default)]
    budgets: RawBudgets,
}

#[derive(Debug, Deserialize)]
struct RawField {
    kind: String,
    coefficients: Vec<String>,
}

#[derive(Debug, Deserialize)]
struct RawMap {
    params: usize,
    components: Vec<String>,
}

#[derive(Debug, Default, Deserialize)]
struct RawSampling {
    #[serde(default, rename = "box")]
    window: Option<RawBox>,
    #[serde(default)]
    count: Option<usize>,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    radius: Option<f64>,
}

#[derive(Debug, Deserialize)]
struct RawBox {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

#[derive(Debug, Default, Deserialize)]
struct RawBudgets {
    #[serde(default)]
    max_h: Option<usize>,
    #[serde(default)]
    max_order: Option<u32>,
    #[serde(default)]
    groebner_limit: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct Sampling {
    pub window: RealBox,
    pub count: usize,
    pub seed: u64,
    pub radius: f64,
}

#[derive(Debug, Clone)]
pub struct Budgets {
    pub max_h: usize,
    pub max_order: u32,
    pub groebner_limit: usize,
}

/// A fully validated problem file.
#[derive(Debug)]
pub struct ProblemFile {
    pub n: usize,
    pub defining_source: String,
    pub defining: DefiningFunction,
    pub metrics: BTreeMap<String, HermitianMetric>,
    pub default_metric: HermitianMetric,
    pub varieties: BTreeMap<String, VarietyIdeal>,
    pub vector_fields: BTreeMap<String, Vec<PolyVectorField>>,
    pub holo_maps: BTreeMap<String, HoloMap>,
    pub q: Option<usize>,
    pub base_point: Option<(Vec<GaussianRational>, Point)>,
    pub sampling: Sampling,
    pub budgets: Budgets,
}

fn parse_metric(n: usize, raw: &[Vec<String>], name: &str) -> Result<HermitianMetric> {
    if raw.len() != n || raw.iter().any(|row| row.len() != n) {
        return Err(Error::Problem(format!(
            "metric '{name}' must be {n} x {n}"
        )));
    }
    let mut entries = Vec::with_capacity(n);
    for row in raw {
        let mut out = Vec::with_capacity(n);
        for e in row {
            out.push(parse_constant(e, &format!("metric '{name}'"))?);
        }
        entries.push(out);
    }
    HermitianMetric::new(entries)
}

/// Parse and validate a problem file.
pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    let raw: RawProblem =
        serde_json::from_str(text).map_err(|e| Error::Problem(format!("invalid JSON: {e}")))?;
    let n = raw.dimension;
    if n == 0 || n > 9 {
        return Err(Error::Problem(
            "dimension must be between 1 and 9".to_string(),
        ));
    }
    let r = parse_polynomial(&raw.defining_function, n)?;
    if !r.is_real() {
        return Err(Error::NotReal);
    }
    let defining = DefiningFunction::new(r)?;

    let default_metric = match &raw.metric {
        Some(entries) => parse_metric(n, entries, "default")?,
        None => HermitianMetric::identity(n),
    };
    let mut metrics = BTreeMap::new();
    for (name, entries) in &raw.metrics {
        metrics.insert(name.clone(), parse_metric(n, entries, name)?);
    }

    let mut varieties = BTreeMap::new();
    for (name, exprs) in &raw.varieties {
        let gens: Result<Vec<_>> = exprs.iter().map(|e| parse_polynomial(e, n)).collect();
        let gens = gens?;
        if let Some(bad) = gens.iter().find(|g| !g.is_real()) {
            return Err(Error::Problem(format!(
                "variety '{name}' has a non-real generator: {bad}"
            )));
        }
        varieties.insert(name.clone(), VarietyIdeal::new(gens)?);
    }

    let mut vector_fields = BTreeMap::new();
    for (name, fields) in &raw.vector_fields {
        let mut family = Vec::new();
        for f in fields {
            let kind = match f.kind.as_str() {
                "real" => FieldKind::Real,
                "holomorphic" => FieldKind::Holomorphic,
                other => {
                    return Err(Error::Problem(format!(
                        "field family '{name}': unknown kind '{other}'"
                    )))
                }
            };
            let coeffs: Result<Vec<_>> = f
                .coefficients
                .iter()
                .map(|e| parse_polynomial(e, n))
                .collect();
            family.push(PolyVectorField::new(kind, n, coeffs?)?);
        }
        vector_fields.insert(name.clone(), family);
    }

    let mut holo_maps = BTreeMap::new();
    for (name, m) in &raw.holo_maps {
        if m.components.len() != n {
            return Err(Error::Problem(format!(
                "map '{name}' must have {n} components"
            )));
        }
        let comps: Result<Vec<_>> = m
            .components
            .iter()
            .map(|e| parse_map_component(e, m.params))
            .collect();
        holo_maps.insert(name.clone(), HoloMap::new(m.params, comps?)?);
    }

    let base_point = match &raw.base_point {
        None => None,
        Some(coords) => {
            if coords.len() != n {
                return Err(Error::Problem(format!(
                    "base_point must have {n} coordinates"
                )));
            }
            let exact: Result<Vec<_>> = coords
                .iter()
                .map(|c| parse_constant(c, "base_point"))
                .collect();
            let exact = exact?;
            let float = exact.iter().map(|g| g.to_complex64()).collect();
            Some((exact, float))
        }
    };

    let window = match &raw.sampling.window {
        Some(b) => {
            let bx = RealBox {
                lo: b.lo.clone(),
                hi: b.hi.clone(),
            };
            bx.validate(n)?;
            bx
        }
        None => RealBox::cube(n, 1.0),
    };
    let sampling = Sampling {
        window,
        count: raw.sampling.count.unwrap_or(50),
        seed: raw.sampling.seed.unwrap_or(0),
        radius: raw.sampling.radius.unwrap_or(0.5),
    };
    let budgets = Budgets {
        max_h: raw.budgets.max_h.unwrap_or(DEFAULT_MAX_STEPS),
        max_order: raw.budgets.max_order.unwrap_or(24),
        groebner_limit: raw
            .budgets
            .groebner_limit
            .unwrap_or(crate::groebner::DEFAULT_GROEBNER_LIMIT),
    };

    Ok(ProblemFile {
        n,
        defining_source: raw.defining_function.clone(),
        defining,
        metrics,
        default_metric,
        varieties,
        vector_fields,
        holo_maps,
        q: raw.q,
        base_point,
        sampling,
        budgets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const WORKED: &str = r#"{
        "dimension": 3,
        "defining_function": "-x3 - z1*conj(z1)*z2*conj(z2) + (1/4)*(z1*conj(z1))^2 + (3/4)*(z2*conj(z2))^2",
        "q": 2,
        "varieties": {
            "diagonal_curve": ["x1 - x2", "y1 - y2", "x3", "y3"]
        },
        "holo_maps": {
            "curve": {"params": 1, "components": ["w1", "w1", "0"]}
        },
        "sampling": {"box": {"lo": [-0.8,-0.8,-0.8,-0.8,-0.8,-0.8], "hi": [0.8,0.8,0.8,0.8,0.8,0.8]}, "count": 40, "seed": 7},
        "budgets": {"max_h": 6}
    }"#;

    #[test]
    fn parses_full_problem() {
        let p = parse_problem(WORKED).unwrap();
        assert_eq!(p.n, 3);
        assert_eq!(p.q, Some(2));
        assert!(p.varieties.contains_key("diagonal_curve"));
        assert!(p.holo_maps.contains_key("curve"));
        assert_eq!(p.sampling.count, 40);
        assert_eq!(p.budgets.max_h, 6);
        assert_eq!(p.budgets.max_order, 24);
    }

    #[test]
    fn rejects_non_real_defining_function() {
        let text = r#"{"dimension": 2, "defining_function": "z1"}"#;
        assert!(matches!(parse_problem(text), Err(Error::NotReal)));
    }

    #[test]
    fn rejects_bad_json_and_bad_metric() {
        assert!(parse_problem("not json").is_err());
        let text = r#"{
            "dimension": 2,
            "defining_function": "z1*conj(z1) - 1",
            "metric": [["1", "0"], ["0", "-1"]]
        }"#;
        assert!(matches!(parse_problem(text), Err(Error::BadMetric)));
    }

    #[test]
    fn default_sampling_and_budgets() {
        let text = r#"{"dimension": 2, "defining_function": "z1*conj(z1) + z2*conj(z2) - 1"}"#;
        let p = parse_problem(text).unwrap();
        assert_eq!(p.sampling.count, 50);
        assert_eq!(p.sampling.seed, 0);
        assert_eq!(p.budgets.max_h, DEFAULT_MAX_STEPS);
        assert_eq!(p.sampling.window.lo.len(), 4);
    }
}
