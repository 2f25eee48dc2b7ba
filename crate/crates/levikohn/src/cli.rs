//! Command dispatch: wires problem files and flags into the library
//! operations and builds deterministic reports.

use crate::error::{Error, Result};
use crate::kohn::{run_chain, ChainConfig, ChainStatus};
use crate::levi::{
    classify_point, graph_frame_symbolic, levi_matrix_on_frame, sample_boundary, FrameMode, Point,
};
use crate::problem::ProblemFile;
use crate::report::{
    chain_value, point_value, poly_value, rational_value, Report,
};
use crate::variety::{
    bracket_flag, complex_tangential_check, holomorphic_dimension, involutivity_check,
    tangency_order, TangencyOrder, VarietyIdeal, DEFAULT_INTERSECTION_TOL,
};
use num_complex::Complex64;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Levi,
    Classify,
    Kohn,
    Holdim,
    Brackets,
    Tangency,
    Ctangent,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Levi => "levi",
            Command::Classify => "classify",
            Command::Kohn => "kohn",
            Command::Holdim => "holdim",
            Command::Brackets => "brackets",
            Command::Tangency => "tangency",
            Command::Ctangent => "ctangent",
        }
    }
}

/// Flag overrides; unset values fall back to the problem file and then to
/// built-in defaults.
#[derive(Debug, Clone, Default)]
pub struct CommandFlags {
    pub q: Option<usize>,
    pub max_steps: Option<usize>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
    pub metric: Option<String>,
    pub max_order: Option<u32>,
    pub variety: Option<String>,
    pub fields: Option<String>,
    pub map: Option<String>,
}

fn input_echo(p: &ProblemFile, flags_used: Value) -> Value {
    json!({
        "dimension": p.n,
        "defining_function": p.defining_source,
        "flags": flags_used,
    })
}

/// The classification frame: the graph projection by default, a named
/// constant metric when requested.
fn select_frame_mode<'a>(p: &'a ProblemFile, flags: &CommandFlags) -> Result<FrameMode<'a>> {
    match &flags.metric {
        None => Ok(FrameMode::Projection),
        Some(name) if name == "euclidean" => Ok(FrameMode::Orthonormal(&p.default_metric)),
        Some(name) => p
            .metrics
            .get(name)
            .map(FrameMode::Orthonormal)
            .ok_or_else(|| Error::Problem(format!("metric '{name}' not defined in problem file"))),
    }
}

fn select_variety<'a>(p: &'a ProblemFile, flags: &CommandFlags) -> Result<(String, &'a VarietyIdeal)> {
    match &flags.variety {
        Some(name) => p
            .varieties
            .get(name)
            .map(|v| (name.clone(), v))
            .ok_or_else(|| Error::Problem(format!("variety '{name}' not defined in problem file"))),
        None => {
            if p.varieties.len() == 1 {
                let (name, v) = p.varieties.iter().next().unwrap();
                Ok((name.clone(), v))
            } else {
                Err(Error::Problem(
                    "select a variety with --variety NAME".to_string(),
                ))
            }
        }
    }
}

fn base_point_or_origin(p: &ProblemFile) -> Point {
    p.base_point
        .as_ref()
        .map(|(_, f)| f.clone())
        .unwrap_or_else(|| vec![Complex64::new(0.0, 0.0); p.n])
}

fn require_q(p: &ProblemFile, flags: &CommandFlags) -> Result<usize> {
    flags
        .q
        .or(p.q)
        .ok_or_else(|| Error::Problem("q is required: pass --q or set it in the problem file".into()))
}

pub fn run_command(cmd: Command, p: &ProblemFile, flags: &CommandFlags) -> Result<Report> {
    match cmd {
        Command::Levi => cmd_levi(p, flags),
        Command::Classify => cmd_classify(p, flags),
        Command::Kohn => cmd_kohn(p, flags),
        Command::Holdim => cmd_holdim(p, flags),
        Command::Brackets => cmd_brackets(p, flags),
        Command::Tangency => cmd_tangency(p, flags),
        Command::Ctangent => cmd_ctangent(p, flags),
    }
}

fn cmd_levi(p: &ProblemFile, _flags: &CommandFlags) -> Result<Report> {
    let mut report = Report::new("levi");
    report.input = input_echo(p, json!({}));
    let hessian = p.defining.complex_hessian();
    let gradient = p.defining.gradient_form();
    let frame = graph_frame_symbolic(&p.defining)?;
    let levi = levi_matrix_on_frame(&p.defining, &frame);
    let (trace, det) = levi.trace_det();
    report.results = json!({
        "gradient": gradient.iter().map(poly_value).collect::<Vec<_>>(),
        "hessian": hessian
            .iter()
            .map(|row| row.iter().map(poly_value).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "graph_frame": {
            "vectors": frame
                .vectors
                .iter()
                .map(|v| v.iter().map(poly_value).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "denominator_cleared": frame.denominator.as_ref().map(poly_value),
        },
        "levi_matrix": levi
            .entries
            .iter()
            .map(|row| row.iter().map(poly_value).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "trace": poly_value(&trace),
        "det": poly_value(&det),
    });
    Ok(report)
}

fn cmd_classify(p: &ProblemFile, flags: &CommandFlags) -> Result<Report> {
    let q = require_q(p, flags)?;
    let mode = select_frame_mode(p, flags)?;
    let tol = flags.tol.unwrap_or(crate::levi::DEFAULT_SIGNATURE_TOL);
    let count = flags.samples.unwrap_or(p.sampling.count);
    let seed = flags.seed.unwrap_or(p.sampling.seed);
    let mut report = Report::new("classify");
    report.input = input_echo(
        p,
        json!({"q": q, "samples": count, "seed": seed, "tol": tol}),
    );

    let outcome = sample_boundary(&p.defining, &p.sampling.window, count, seed)?;
    if let Some(w) = outcome.warning {
        report.warnings.push(w);
    }
    let mut points = Vec::new();
    if let Some((_, base)) = &p.base_point {
        if p.defining.r_at(base).norm() <= crate::levi::BOUNDARY_TOL {
            points.push(base.clone());
        } else {
            report
                .warnings
                .push("base_point is off the boundary; skipped in classification".into());
        }
    }
    points.extend(outcome.points);
    if points.is_empty() {
        return Err(Error::NoSamples);
    }

    let mut rows = Vec::new();
    let mut min_margin = f64::INFINITY;
    let mut any_not_pseudoconvex = false;
    let mut all_q_convex = true;
    let mut z_q_everywhere = true;
    for pt in &points {
        let rep = classify_point(&p.defining, pt, q, mode, tol)?;
        min_margin = min_margin.min(rep.q_margin);
        any_not_pseudoconvex |= !rep.pseudoconvex;
        all_q_convex &= rep.q_convex;
        z_q_everywhere &= rep.z_q;
        rows.push(json!({
            "point": point_value(pt),
            "eigenvalues": rep.eigenvalues,
            "signature": {"pos": rep.signature.0, "neg": rep.signature.1, "zero": rep.signature.2},
            "q_margin": rep.q_margin,
            "pseudoconvex": rep.pseudoconvex,
            "q_convex": rep.q_convex,
            "z_q": rep.z_q,
        }));
    }
    report.counters.insert("points".into(), rows.len() as u64);
    report.results = json!({
        "points": rows,
        "summary": {
            "min_q_margin": min_margin,
            "any_not_pseudoconvex": any_not_pseudoconvex,
            "all_q_convex": all_q_convex,
            "z_q_everywhere": z_q_everywhere,
        },
    });
    Ok(report)
}

fn cmd_kohn(p: &ProblemFile, flags: &CommandFlags) -> Result<Report> {
    let q = require_q(p, flags)?;
    let max_h = flags.max_steps.unwrap_or(p.budgets.max_h);
    let cfg = ChainConfig {
        groebner_limit: p.budgets.groebner_limit,
        ..ChainConfig::default()
    };
    let mut report = Report::new("kohn");
    report.input = input_echo(p, json!({"q": q, "max_steps": max_h}));

    match run_chain(&p.defining, q, max_h, &cfg) {
        Ok(run) => {
            report
                .counters
                .insert("chain_steps".into(), run.trace.steps.len() as u64);
            report.counters.insert(
                "generators".into(),
                run.state.ideal.generators.len() as u64,
            );
            let mut results = json!({ "chain": chain_value(&run) });
            if matches!(run.state.status, ChainStatus::Stuck(_)) {
                // the stuck dichotomy: analyze the emitted variety
                let vgens = run.state.ideal.variety_generators();
                results["variety"] =
                    Value::Array(vgens.iter().map(poly_value).collect());
                let variety = VarietyIdeal::new(vgens)?;
                let z0 = base_point_or_origin(p);
                let full = variety.with_boundary(&p.defining);
                if full.residual_at(&z0) <= crate::levi::BOUNDARY_TOL {
                    let hd = holomorphic_dimension(
                        &p.defining,
                        &variety,
                        &z0,
                        p.sampling.radius,
                        flags.samples.unwrap_or(p.sampling.count),
                        flags.seed.unwrap_or(p.sampling.seed),
                        flags.tol.unwrap_or(DEFAULT_INTERSECTION_TOL),
                    )?;
                    results["holomorphic_dimension"] = holdim_value(&hd, q);
                } else {
                    report.warnings.push(
                        "holomorphic dimension skipped: base point is not on the stuck variety"
                            .into(),
                    );
                }
            }
            report.results = results;
            Ok(report)
        }
        Err(abort) => {
            report.exit_code = abort.error.exit_code();
            report.warnings.push(format!("aborted: {}", abort.error));
            let mut results = json!({});
            if let Some(state) = &abort.partial {
                results["partial"] = json!({
                    "status": state.status.label(),
                    "h": state.h,
                    "generators": state.ideal.generators.iter().map(poly_value).collect::<Vec<_>>(),
                });
            }
            report.results = results;
            Ok(report)
        }
    }
}

fn holdim_value(hd: &crate::variety::HolDimReport, q: usize) -> Value {
    json!({
        "value": hd.value,
        "at_least_q": hd.value >= q,
        "rank_jump_detected": hd.rank_jump_detected,
        "per_radius": hd.per_radius.iter().map(|r| json!({
            "radius": r.radius,
            "samples_used": r.samples_used,
            "min_dim": r.min_dim,
        })).collect::<Vec<_>>(),
    })
}

fn cmd_holdim(p: &ProblemFile, flags: &CommandFlags) -> Result<Report> {
    let (name, variety) = select_variety(p, flags)?;
    let z0 = base_point_or_origin(p);
    let samples = flags.samples.unwrap_or(p.sampling.count);
    let seed = flags.seed.unwrap_or(p.sampling.seed);
    let tol = flags.tol.unwrap_or(DEFAULT_INTERSECTION_TOL);
    let mut report = Report::new("holdim");
    report.input = input_echo(
        p,
        json!({"variety": name, "radius": p.sampling.radius, "samples": samples, "seed": seed, "tol": tol}),
    );
    let hd = holomorphic_dimension(
        &p.defining,
        variety,
        &z0,
        p.sampling.radius,
        samples,
        seed,
        tol,
    )?;
    report
        .counters
        .insert("radii".into(), hd.per_radius.len() as u64);
    report.results = holdim_value(&hd, p.q.or(flags.q).unwrap_or(1));
    Ok(report)
}

fn cmd_brackets(p: &ProblemFile, flags: &CommandFlags) -> Result<Report> {
    let family_name = flags
        .fields
        .as_ref()
        .cloned()
        .or_else(|| {
            if p.vector_fields.len() == 1 {
                p.vector_fields.keys().next().cloned()
            } else {
                None
            }
        })
        .ok_or_else(|| Error::Problem("select a field family with --fields NAME".into()))?;
    let fields = p
        .vector_fields
        .get(&family_name)
        .ok_or_else(|| Error::Problem(format!("field family '{family_name}' not defined")))?;
    let (vname, variety) = select_variety(p, flags)?;
    let point = base_point_or_origin(p);
    let max_depth = flags.max_steps.unwrap_or(6);
    let mut report = Report::new("brackets");
    report.input = input_echo(
        p,
        json!({"fields": family_name, "variety": vname, "max_depth": max_depth}),
    );
    let flag = bracket_flag(fields, variety, &point, max_depth, p.budgets.groebner_limit)?;
    let involutive = involutivity_check(
        fields,
        variety,
        &p.sampling.window,
        flags.samples.unwrap_or(p.sampling.count).min(24),
        flags.seed.unwrap_or(p.sampling.seed),
        flags.tol.unwrap_or(DEFAULT_INTERSECTION_TOL),
    )?;
    report.results = json!({
        "dims": flag.dims,
        "depth": flag.depth,
        "finite_type": flag.finite_type,
        "manifold_dim": flag.manifold_dim,
        "involutive": involutive,
    });
    Ok(report)
}

fn cmd_tangency(p: &ProblemFile, flags: &CommandFlags) -> Result<Report> {
    let name = flags
        .map
        .as_ref()
        .cloned()
        .or_else(|| {
            if p.holo_maps.len() == 1 {
                p.holo_maps.keys().next().cloned()
            } else {
                None
            }
        })
        .ok_or_else(|| Error::Problem("select a map with --map NAME".into()))?;
    let map = p
        .holo_maps
        .get(&name)
        .ok_or_else(|| Error::Problem(format!("map '{name}' not defined")))?;
    let max_order = flags.max_order.unwrap_or(p.budgets.max_order);
    let mut report = Report::new("tangency");
    report.input = input_echo(p, json!({"map": name, "max_order": max_order}));
    let order = tangency_order(&p.defining, map, max_order)?;
    report.results = match order {
        TangencyOrder::Finite(k) => json!({"order": k, "identically_zero": false}),
        TangencyOrder::IdenticallyZero => {
            json!({"order": "identically-zero", "identically_zero": true})
        }
        TangencyOrder::AboveMax(cap) => {
            json!({"order": format!("above-max-{cap}"), "identically_zero": false, "inconclusive": true})
        }
    };
    report.results["base_value"] = Value::Array(
        map.base_value().iter().map(rational_value).collect(),
    );
    Ok(report)
}

fn cmd_ctangent(p: &ProblemFile, flags: &CommandFlags) -> Result<Report> {
    let (name, variety) = select_variety(p, flags)?;
    let samples = flags.samples.unwrap_or(p.sampling.count);
    let seed = flags.seed.unwrap_or(p.sampling.seed);
    let tol = flags.tol.unwrap_or(1e-6);
    let mut report = Report::new("ctangent");
    report.input = input_echo(
        p,
        json!({"variety": name, "samples": samples, "seed": seed, "tol": tol}),
    );
    let rep = complex_tangential_check(
        &p.defining,
        variety,
        &p.sampling.window,
        samples,
        seed,
        tol,
    )?;
    report
        .counters
        .insert("samples".into(), rep.samples_used as u64);
    report.results = json!({
        "complex_tangential": rep.holds,
        "max_violation": rep.max_violation,
    });
    Ok(report)
}
