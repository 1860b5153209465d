use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use turnover_core::collars::{
    c_bound, delta as delta_bound, order_filter_report, supergroups as find_supergroups, table_rows, ConeOrderSet,
    EllipticPair,
};
use turnover_core::engine::{self, AnalysisOptions, ScanPolicy};
use turnover_core::rooms::{isoperimetric_check, random_ceiling, CeilingFunction, FloorRegion};
use turnover_core::simplices::TruncatedSimplexSpec;
use turnover_core::{turnover_area, Error, GeometryClass, TurnoverSignature};

use crate::format::{num, set, triple};
use crate::{Context, Failure};

/// Output of one command: the JSON document, its text rendering and the
/// exit status to report after printing.
pub struct Report {
    pub json: Value,
    pub text: String,
    pub status: Result<(), Failure>,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report {
            json,
            text,
            status: Ok(()),
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<Value, Failure> {
    serde_json::to_value(value).map_err(|e| Failure::Numeric(e.to_string()))
}

fn signature(p: u32, q: u32, r: u32) -> Result<TurnoverSignature, Failure> {
    Ok(TurnoverSignature::new(p, q, r)?)
}

fn hyperbolic(p: u32, q: u32, r: u32) -> Result<TurnoverSignature, Failure> {
    let s = signature(p, q, r)?;
    match turnover_core::classify(s) {
        GeometryClass::Hyperbolic => Ok(s),
        class => Err(Failure::Usage(format!("{s} is {class}, not hyperbolic"))),
    }
}

pub fn area(p: u32, q: u32, r: u32) -> Result<Report, Failure> {
    let s = signature(p, q, r)?;
    let class = turnover_core::classify(s);
    let area = match class {
        GeometryClass::Hyperbolic => Some(turnover_area(s)?),
        _ => None,
    };
    let json = json!({ "signature": s, "class": class, "area": area });
    let text = match json["area"].is_null() {
        true => format!("{}\n", json["class"].as_str().unwrap_or_default()),
        false => format!(
            "{}, area = {}\n",
            json["class"].as_str().unwrap_or_default(),
            num(&json["area"])
        ),
    };
    Ok(Report::ok(json, text))
}

pub fn classify(p: u32, q: u32, r: u32) -> Result<Report, Failure> {
    let s = signature(p, q, r)?;
    let json = json!({ "signature": s, "class": turnover_core::classify(s) });
    let text = format!("{}\n", json["class"].as_str().unwrap_or_default());
    Ok(Report::ok(json, text))
}

pub fn delta(n: u32, m: u32) -> Result<Report, Failure> {
    let pair = EllipticPair::new(n, m)?;
    let json = json!({ "n": pair.n(), "m": pair.m(), "c": c_bound(pair), "delta": delta_bound(pair) });
    let text = format!(
        "c({},{}) = {}\ndelta = {}\n",
        json["n"],
        json["m"],
        num(&json["c"]),
        num(&json["delta"])
    );
    Ok(Report::ok(json, text))
}

pub fn orders(p: u32, q: u32, r: u32) -> Result<Report, Failure> {
    let s = hyperbolic(p, q, r)?;
    let json = to_json(&order_filter_report(s)?)?;
    let text = format!(
        "universe: {}\ndiameter: {}\ndelta excluded: {}\ntable protected: {}\norders: {}\n",
        set(&json["universe"]),
        num(&json["diameter"]),
        set(&json["delta_excluded"]),
        set(&json["table_protected"]),
        set(&json["orders"]),
    );
    Ok(Report::ok(json, text))
}

pub fn supergroups(p: u32, q: u32, r: u32) -> Result<Report, Failure> {
    let s = hyperbolic(p, q, r)?;
    let json = json!({ "signature": s, "supergroups": find_supergroups(s) });
    let mut text = String::new();
    let rows = json["supergroups"].as_array().cloned().unwrap_or_default();
    if rows.is_empty() {
        text.push_str("maximal\n");
    }
    for row in &rows {
        let normal = if row["normal"].as_bool() == Some(true) {
            ", normal"
        } else {
            ""
        };
        let _ = writeln!(text, "{}  index {}{normal}", triple(&row["signature"]), row["index"]);
    }
    Ok(Report::ok(json, text))
}

fn ledger_text(json: &Value) -> String {
    format!(
        "area: {}\nbudget: {}\nvolume bound with boundary: {}\nvolume bound without boundary: {}\nmax boundary pieces: {}\n",
        num(&json["area"]),
        num(&json["two_sided_budget"]),
        num(&json["upper_bound_with_boundary"]),
        num(&json["upper_bound_no_boundary"]),
        json["max_boundary_pieces"],
    )
}

pub fn bounds(p: u32, q: u32, r: u32, ext: u32) -> Result<Report, Failure> {
    let s = hyperbolic(p, q, r)?;
    let json = to_json(&engine::make_ledger(s, ext)?)?;
    let text = ledger_text(&json);
    Ok(Report::ok(json, text))
}

fn candidates_text(list: &Value) -> String {
    let mut text = String::new();
    for c in list.as_array().into_iter().flatten() {
        let _ = writeln!(text, "{}  area {}", triple(&c["sig"]), num(&c["area"]));
    }
    text
}

pub fn candidates(p: u32, q: u32, r: u32, ext: u32, orders: Option<&[u32]>) -> Result<Report, Failure> {
    let s = hyperbolic(p, q, r)?;
    let ledger = engine::make_ledger(s, ext)?;
    let orders = match orders {
        Some(list) => {
            if let Some(bad) = list.iter().find(|&&n| n < 2) {
                return Err(Failure::Usage(format!("cone orders must be at least 2, got {bad}")));
            }
            ConeOrderSet::new(list.iter().copied())
        }
        None => turnover_core::collars::refined_boundary_orders(s)?,
    };
    let found = engine::boundary_candidates(&ledger, &orders);
    let json = json!({ "signature": s, "extension_index": ext, "orders": orders, "candidates": found });
    let text = format!(
        "orders: {}\n{}",
        set(&json["orders"]),
        candidates_text(&json["candidates"])
    );
    Ok(Report::ok(json, text))
}

pub fn analyze(p: u32, q: u32, r: u32, ext: u32, refinements: bool, skip_forced_open: bool) -> Result<Report, Failure> {
    let s = hyperbolic(p, q, r)?;
    let mut options = if refinements {
        AnalysisOptions::with_known_refinements(s)?
    } else {
        AnalysisOptions::default()
    };
    if skip_forced_open {
        options.policy = ScanPolicy::SkipForcedOpen;
    }
    let json = to_json(&engine::analyze(s, ext, &options)?)?;
    let bounds = &json["bounds"];
    let mut text = format!(
        "signature: {}\nextension index: {}\nvolume bound with boundary: {}\nvolume bound without boundary: {}\nbudget: {}\norders: {}\ncandidates:\n",
        triple(&json["signature"]),
        json["extension_index"],
        num(&bounds["with_boundary"]),
        num(&bounds["no_boundary"]),
        num(&bounds["budget"]),
        set(&json["orders"]),
    );
    for line in candidates_text(&json["candidates"]).lines() {
        let _ = writeln!(text, "  {line}");
    }
    text.push_str("cases:\n");
    for c in json["cases"].as_array().into_iter().flatten() {
        let kind = if c["closed"].as_bool() == Some(true) {
            "closed"
        } else {
            "open"
        };
        let _ = writeln!(
            text,
            "  {} k={} {kind}  theta {}  bound {}  {}",
            triple(&c["boundary"]),
            c["k"],
            num(&c["theta"]),
            num(&c["lower_bound"]),
            num(&c["verdict"]),
        );
    }
    if let Some(list) = json["refinements"].as_array().filter(|l| !l.is_empty()) {
        text.push_str("refinements:\n");
        for r in list {
            let _ = writeln!(
                text,
                "  {}  theta {}  bound {}  {}",
                num(&r["name"]),
                num(&r["theta"]),
                num(&r["lower_bound"]),
                num(&r["verdict"]),
            );
        }
    }
    let _ = writeln!(text, "conclusion: {}", num(&json["conclusion"]));
    Ok(Report::ok(json, text))
}

pub fn rho3(theta: Option<f64>, edge: Option<f64>) -> Result<Report, Failure> {
    let spec = match (theta, edge) {
        (Some(t), None) => TruncatedSimplexSpec::from_angle(t)?,
        (None, Some(l)) => TruncatedSimplexSpec::from_edge(l)?,
        _ => return Err(Failure::Usage("give exactly one of --theta and --edge".into())),
    };
    let json = to_json(&spec)?;
    let text = format!(
        "edge = {}\ntheta = {}\nvolume = {}\nrho3 = {}\n",
        num(&json["edge_length"]),
        num(&json["theta"]),
        num(&json["volume"]),
        num(&json["rho3"]),
    );
    Ok(Report::ok(json, text))
}

pub fn room_check(ctx: &Context, count: usize, constant: Option<f64>) -> Result<Report, Failure> {
    if count == 0 {
        return Err(Failure::Usage("--count must be at least 1".into()));
    }
    if let Some(h) = constant {
        if !(h.is_finite() && h >= 0.0) {
            return Err(Failure::Usage(format!(
                "--constant must be a finite height ≥ 0, got {h}"
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut rooms = Vec::with_capacity(count);
    let mut violations = Vec::new();
    for i in 0..count {
        let radius = rng.gen_range(0.3..2.0);
        let floor = FloorRegion::disk(radius)?;
        let ceiling = match constant {
            Some(h) => CeilingFunction::constant(h),
            None => random_ceiling(&mut rng, radius),
        };
        match isoperimetric_check(&floor, &ceiling, &ctx.tol) {
            Ok(spec) => rooms.push(spec.record()),
            Err(Error::InequalityViolation(msg)) => {
                violations.push(json!({ "index": i, "radius": radius, "message": msg }))
            }
            Err(other) => return Err(other.into()),
        }
    }
    let worst = rooms
        .iter()
        .map(|r| r.margin)
        .fold(None, |acc: Option<f64>, m| Some(acc.map_or(m, |a| a.min(m))));
    let json = json!({
        "seed": ctx.seed,
        "count": count,
        "violations": violations.len(),
        "worst_margin": worst,
        "rooms": rooms,
        "failures": violations,
    });
    let text = format!(
        "violations: {}\nworst margin: {}\n",
        json["violations"],
        num(&json["worst_margin"])
    );
    let status = match violations.len() {
        0 => Ok(()),
        n => Err(Failure::Numeric(format!(
            "{n} rooms violate the isoperimetric inequality"
        ))),
    };
    Ok(Report { json, text, status })
}

pub fn registry() -> Result<Report, Failure> {
    let json = to_json(&engine::registry())?;
    let mut text = String::new();
    for e in json.as_array().into_iter().flatten() {
        let immersed: Vec<String> = e["known_immersed"]
            .as_array()
            .into_iter()
            .flatten()
            .map(triple)
            .collect();
        let _ = writeln!(
            text,
            "{:<12} {:<12} volume {:<14} ext {}  immersed {}",
            num(&e["name"]),
            num(&e["kind"]).to_lowercase(),
            num(&e["volume"]),
            e["extension_index"],
            if immersed.is_empty() {
                "-".into()
            } else {
                immersed.join(" ")
            },
        );
    }
    Ok(Report::ok(json, text))
}

pub fn table() -> Result<Report, Failure> {
    let json = to_json(&table_rows())?;
    let mut text = String::new();
    for row in json.as_array().into_iter().flatten() {
        let normal = if row["normal"].as_bool() == Some(true) {
            "yes"
        } else {
            "no"
        };
        let _ = writeln!(
            text,
            "{} >= {} | {} | {normal}",
            num(&row["super"]),
            num(&row["sub"]),
            row["index"]
        );
    }
    Ok(Report::ok(json, text))
}
