//! Python bindings for the `doflab` crate: exact DoF regions, regime
//! classification, corner-point transmission plans, and Monte Carlo
//! simulation, all returned as the same JSON documents the CLI emits (plus a
//! few convenience accessors with native Python types).

use doflab::report::{to_json_string, ClassifyDoc, PlanDoc, RegionDoc, SimulateDoc};
use doflab::sim::{monte_carlo, DistributionSpec, Mode};
use doflab::{
    classify, format_rat, parse_rat, plan_p0_p1, plan_p2, region_for, AntennaConfig, Family,
    SchemePlan, SchemePoint,
};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn config(m1: u32, m2: u32, n1: u32, n2: u32) -> PyResult<AntennaConfig> {
    AntennaConfig::new(m1, m2, n1, n2).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn family(name: &str) -> PyResult<Family> {
    Family::parse(name).ok_or_else(|| PyValueError::new_err(format!("unknown family '{name}'")))
}

fn plan_for(canon: &AntennaConfig, point: &str) -> PyResult<SchemePlan> {
    let plan = match point {
        "p0" | "p1" => plan_p0_p1(canon),
        "p2" => plan_p2(canon),
        other => return Err(PyValueError::new_err(format!("unknown point '{other}'"))),
    }
    .map_err(|e| PyValueError::new_err(e.to_string()))?;
    if plan.point.as_str() != point {
        return Err(PyValueError::new_err(format!(
            "point {point} does not apply to {canon}; its fresh-transmission corner point is {}",
            plan.point.as_str()
        )));
    }
    Ok(plan)
}

/// The DoF region of a configuration under the given CSIT family, as a JSON
/// document with exact rational half-planes and vertices.
#[pyfunction]
fn region_json(m1: u32, m2: u32, n1: u32, n2: u32, family_name: &str) -> PyResult<String> {
    let cfg = config(m1, m2, n1, n2)?;
    let region = region_for(&cfg, family(family_name)?)
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(to_json_string(&RegionDoc::new(&region)))
}

/// The region's vertices in counter-clockwise order as exact rational
/// strings, e.g. `[("0", "0"), ("4", "0"), ("2", "2"), ("0", "2")]`.
#[pyfunction]
fn vertices(
    m1: u32,
    m2: u32,
    n1: u32,
    n2: u32,
    family_name: &str,
) -> PyResult<Vec<(String, String)>> {
    let cfg = config(m1, m2, n1, n2)?;
    let region = region_for(&cfg, family(family_name)?)
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(region
        .vertices()
        .iter()
        .map(|(x, y)| (format_rat(x), format_rat(y)))
        .collect())
}

/// Membership test with exact arithmetic: is `(d1, d2)` (rational strings)
/// inside the region?
#[pyfunction]
fn contains(
    m1: u32,
    m2: u32,
    n1: u32,
    n2: u32,
    family_name: &str,
    d1: &str,
    d2: &str,
) -> PyResult<bool> {
    let cfg = config(m1, m2, n1, n2)?;
    let region = region_for(&cfg, family(family_name)?)
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    let point = (
        parse_rat(d1).map_err(|e| PyValueError::new_err(e.to_string()))?,
        parse_rat(d2).map_err(|e| PyValueError::new_err(e.to_string()))?,
    );
    Ok(region.contains(&point))
}

/// Regime classification (EqualDelayed / CaseA / CaseB) with its exact
/// witness values, as JSON.
#[pyfunction]
fn classify_json(m1: u32, m2: u32, n1: u32, n2: u32) -> PyResult<String> {
    let cfg = config(m1, m2, n1, n2)?;
    let (canon, swapped) = cfg.canonical();
    let class = classify(&canon);
    Ok(to_json_string(&ClassifyDoc::new(&cfg, &canon, swapped, &class)))
}

/// The corner-point transmission plan (`p0`, `p1`, or `p2`) for the
/// canonical orientation of the configuration, as JSON.
#[pyfunction]
fn plan_json(m1: u32, m2: u32, n1: u32, n2: u32, point: &str) -> PyResult<String> {
    let cfg = config(m1, m2, n1, n2)?;
    let (canon, _) = cfg.canonical();
    let plan = plan_for(&canon, point)?;
    Ok(to_json_string(&PlanDoc::new(&plan)))
}

/// Monte Carlo execution of a corner-point plan over random channels, as the
/// CLI's JSON summary. `mode` is `"exact"` (integer rationals, uniform in
/// `[-bound, bound]`) or `"float"` (complex Gaussian).
#[pyfunction]
#[pyo3(signature = (m1, m2, n1, n2, point, trials = 100, seed = 0, mode = "exact", bound = 1000))]
#[allow(clippy::too_many_arguments)]
fn simulate_json(
    m1: u32,
    m2: u32,
    n1: u32,
    n2: u32,
    point: &str,
    trials: usize,
    seed: u64,
    mode: &str,
    bound: u32,
) -> PyResult<String> {
    let cfg = config(m1, m2, n1, n2)?;
    let (canon, swapped) = cfg.canonical();
    let plan = plan_for(&canon, point)?;
    let (dist, mode_tag, bound_doc) = match mode {
        "exact" => (
            DistributionSpec::exact_uniform(bound)
                .map_err(|e| PyValueError::new_err(e.to_string()))?,
            Mode::Exact,
            Some(bound),
        ),
        "float" => (DistributionSpec::gaussian(), Mode::Float, None),
        other => return Err(PyValueError::new_err(format!("unknown mode '{other}'"))),
    };
    let summary = monte_carlo(&plan, &dist, trials, seed)
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    let doc = SimulateDoc::new(&cfg, swapped, point, mode_tag, seed, bound_doc, &summary);
    Ok(to_json_string(&doc))
}

/// Exact convex combination `theta * a + (1 - theta) * b` of two DoF points
/// given as rational strings.
#[pyfunction]
fn time_share(a: (String, String), b: (String, String), theta: &str) -> PyResult<(String, String)> {
    let parse = |s: &str| parse_rat(s).map_err(|e| PyValueError::new_err(e.to_string()));
    let a = (parse(&a.0)?, parse(&a.1)?);
    let b = (parse(&b.0)?, parse(&b.1)?);
    let theta = parse(theta)?;
    let blend =
        doflab::time_share(&a, &b, &theta).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok((format_rat(&blend.0), format_rat(&blend.1)))
}

/// Overlaid region polygons for one configuration as a standalone SVG
/// document.
#[pyfunction]
fn render_svg(m1: u32, m2: u32, n1: u32, n2: u32, family_names: Vec<String>) -> PyResult<String> {
    let cfg = config(m1, m2, n1, n2)?;
    if family_names.is_empty() {
        return Err(PyValueError::new_err("at least one family is required"));
    }
    let mut regions = Vec::new();
    for name in &family_names {
        regions.push(
            region_for(&cfg, family(name)?).map_err(|e| PyValueError::new_err(e.to_string()))?,
        );
    }
    Ok(doflab::svgplot::render_regions(&cfg, &regions))
}

/// The corner points the schemes can realize for this configuration,
/// e.g. `["p0"]` for CaseA, `["p1", "p2"]` for CaseB, `[]` otherwise.
#[pyfunction]
fn available_points(m1: u32, m2: u32, n1: u32, n2: u32) -> PyResult<Vec<&'static str>> {
    let cfg = config(m1, m2, n1, n2)?;
    let (canon, _) = cfg.canonical();
    let mut points = Vec::new();
    if let Ok(plan) = plan_p0_p1(&canon) {
        points.push(match plan.point {
            SchemePoint::P0 => "p0",
            SchemePoint::P1 => "p1",
            SchemePoint::P2 => "p2",
        });
    }
    if plan_p2(&canon).is_ok() {
        points.push("p2");
    }
    Ok(points)
}

#[pymodule]
fn doflab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(region_json, m)?)?;
    m.add_function(wrap_pyfunction!(vertices, m)?)?;
    m.add_function(wrap_pyfunction!(contains, m)?)?;
    m.add_function(wrap_pyfunction!(classify_json, m)?)?;
    m.add_function(wrap_pyfunction!(plan_json, m)?)?;
    m.add_function(wrap_pyfunction!(simulate_json, m)?)?;
    m.add_function(wrap_pyfunction!(time_share, m)?)?;
    m.add_function(wrap_pyfunction!(render_svg, m)?)?;
    m.add_function(wrap_pyfunction!(available_points, m)?)?;
    Ok(())
}
