//! JSON model and simulation documents.
//!
//! A model document is a tree of nodes:
//!
//! ```json
//! {"node": "serial", "children": [
//!     {"node": "leaf", "potential": {"kind": "dashpot", "D": 1.0}},
//!     {"node": "leaf", "potential": {"kind": "powerlaw", "D": 1.0, "n": 3}}
//! ]}
//! ```
//!
//! Potential kinds: `dashpot {D}`, `plastic {sigma_a}`, `powerlaw {D, n}`
//! with `n` a number or `"inf"`, and `huber {sigma_a, D}`. A simulation
//! document reads `{"E", "elements": [potential…], "drive": [{"t_end",
//! "eps"}…], "e_el0"?}`.

use serde_json::{json, Map, Value};

use crate::CliError;
use rheokit_core::maxwell::{DriveProgram, MaxwellModel};
use rheokit_core::{Potential, RheoExpr};

/// A parsed simulation document.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationDocument {
    pub model: MaxwellModel,
    pub drive: DriveProgram,
    pub e_el0: f64,
}

fn fail<T>(path: &str, msg: impl std::fmt::Display) -> Result<T, CliError> {
    Err(CliError::Input(format!("{path}: {msg}")))
}

fn parse_json(text: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed JSON: {e}")))
}

fn object<'a>(v: &'a Value, path: &str, allowed: &[&str]) -> Result<&'a Map<String, Value>, CliError> {
    let Some(map) = v.as_object() else {
        return fail(path, "expected an object");
    };
    if let Some(k) = map.keys().find(|k| !allowed.contains(&k.as_str())) {
        return fail(path, format_args!("unknown field `{k}` (expected one of {})", allowed.join(", ")));
    }
    Ok(map)
}

fn field<'a>(map: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value, CliError> {
    map.get(key).ok_or_else(|| CliError::Input(format!("{path}: missing field `{key}`")))
}

fn string<'a>(map: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a str, CliError> {
    let v = field(map, key, path)?;
    v.as_str().ok_or_else(|| CliError::Input(format!("{path}.{key}: expected a string, got {v}")))
}

fn number(map: &Map<String, Value>, key: &str, path: &str) -> Result<f64, CliError> {
    let v = field(map, key, path)?;
    match v.as_f64() {
        Some(x) if x.is_finite() => Ok(x),
        _ => fail(&format!("{path}.{key}"), format_args!("expected a finite number, got {v}")),
    }
}

fn positive(map: &Map<String, Value>, key: &str, path: &str) -> Result<f64, CliError> {
    let x = number(map, key, path)?;
    if x > 0.0 {
        Ok(x)
    } else {
        fail(&format!("{path}.{key}"), format_args!("must be positive, got {x}"))
    }
}

/// Reads an exponent: a positive number or the token `"inf"`.
pub fn parse_exponent(v: &Value, path: &str) -> Result<f64, CliError> {
    match v {
        Value::String(s) if s == "inf" => Ok(f64::INFINITY),
        Value::Number(n) => match n.as_f64() {
            Some(x) if x > 0.0 && x.is_finite() => Ok(x),
            _ => fail(path, format_args!("exponent must be positive, got {n}")),
        },
        _ => fail(path, format_args!("expected a positive number or \"inf\", got {v}")),
    }
}

fn potential(v: &Value, path: &str) -> Result<Potential, CliError> {
    let Some(map) = v.as_object() else {
        return fail(path, "expected an object");
    };
    let kind = string(map, "kind", path)?;
    let p = match kind {
        "dashpot" => {
            let map = object(v, path, &["kind", "D"])?;
            Potential::dashpot(positive(map, "D", path)?)
        }
        "plastic" => {
            let map = object(v, path, &["kind", "sigma_a"])?;
            Potential::perfect_plastic(positive(map, "sigma_a", path)?)
        }
        "powerlaw" => {
            let map = object(v, path, &["kind", "D", "n"])?;
            let n = parse_exponent(field(map, "n", path)?, &format!("{path}.n"))?;
            Potential::power_law(positive(map, "D", path)?, n)
        }
        "huber" => {
            let map = object(v, path, &["kind", "sigma_a", "D"])?;
            Potential::huber(positive(map, "sigma_a", path)?, positive(map, "D", path)?)
        }
        other => {
            return fail(
                &format!("{path}.kind"),
                format_args!("unknown potential kind `{other}` (expected dashpot, plastic, powerlaw or huber)"),
            )
        }
    };
    p.map_err(|e| CliError::Input(format!("{path}: {e}")))
}

fn node(v: &Value, path: &str) -> Result<RheoExpr, CliError> {
    let Some(map) = v.as_object() else {
        return fail(path, "expected an object");
    };
    match string(map, "node", path)? {
        "leaf" => {
            let map = object(v, path, &["node", "potential"])?;
            let p = potential(field(map, "potential", path)?, &format!("{path}.potential"))?;
            Ok(RheoExpr::Leaf(p))
        }
        kind @ ("parallel" | "serial") => {
            let map = object(v, path, &["node", "children"])?;
            let cpath = format!("{path}.children");
            let Some(items) = field(map, "children", path)?.as_array() else {
                return fail(&cpath, "expected an array");
            };
            if items.is_empty() {
                return fail(&cpath, "a composite node needs at least one child");
            }
            let children = items
                .iter()
                .enumerate()
                .map(|(i, c)| node(c, &format!("{cpath}[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            let built = if kind == "parallel" { RheoExpr::parallel(children) } else { RheoExpr::serial(children) };
            built.map_err(|e| CliError::Input(format!("{path}: {e}")))
        }
        other => fail(
            &format!("{path}.node"),
            format_args!("unknown node type `{other}` (expected leaf, parallel or serial)"),
        ),
    }
}

/// Parses a model document.
pub fn parse_model(text: &str) -> Result<RheoExpr, CliError> {
    node(&parse_json(text)?, "$")
}

/// Parses a simulation document.
pub fn parse_simulation(text: &str) -> Result<SimulationDocument, CliError> {
    let root = parse_json(text)?;
    let map = object(&root, "$", &["E", "elements", "drive", "e_el0"])?;
    let e = positive(map, "E", "$")?;
    let Some(items) = field(map, "elements", "$")?.as_array() else {
        return fail("$.elements", "expected an array");
    };
    if items.is_empty() {
        return fail("$.elements", "needs at least one flow element");
    }
    let elements = items
        .iter()
        .enumerate()
        .map(|(i, p)| potential(p, &format!("$.elements[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let Some(segs) = field(map, "drive", "$")?.as_array() else {
        return fail("$.drive", "expected an array");
    };
    let mut segments = Vec::with_capacity(segs.len());
    let mut prev = 0.0;
    for (i, s) in segs.iter().enumerate() {
        let path = format!("$.drive[{i}]");
        let m = object(s, &path, &["t_end", "eps"])?;
        let t = positive(m, "t_end", &path)?;
        if t <= prev {
            return fail(&format!("{path}.t_end"), format_args!("must exceed the previous end time {prev}"));
        }
        prev = t;
        segments.push((t, number(m, "eps", &path)?));
    }
    if segments.is_empty() {
        return fail("$.drive", "needs at least one segment");
    }
    let e_el0 = if map.contains_key("e_el0") { number(map, "e_el0", "$")? } else { 0.0 };
    Ok(SimulationDocument { model: MaxwellModel::new(e, elements)?, drive: DriveProgram::new(segments)?, e_el0 })
}

fn exponent_value(n: f64) -> Value {
    if n.is_infinite() {
        json!("inf")
    } else {
        json!(n)
    }
}

/// JSON form of a potential; only document kinds are representable.
pub fn potential_to_json(p: &Potential) -> Result<Value, CliError> {
    Ok(match *p {
        Potential::Dashpot { viscosity } => json!({"kind": "dashpot", "D": viscosity}),
        Potential::PerfectPlastic { yield_stress } => json!({"kind": "plastic", "sigma_a": yield_stress}),
        Potential::PowerLaw { coeff, exponent } => {
            json!({"kind": "powerlaw", "D": coeff, "n": exponent_value(exponent)})
        }
        Potential::Huber { yield_stress, viscosity } => {
            json!({"kind": "huber", "sigma_a": yield_stress, "D": viscosity})
        }
        ref other => return Err(CliError::Input(format!("{other:?} has no document form"))),
    })
}

/// JSON form of a model tree.
pub fn model_to_json(e: &RheoExpr) -> Result<Value, CliError> {
    Ok(match e {
        RheoExpr::Leaf(p) => json!({"node": "leaf", "potential": potential_to_json(p)?}),
        RheoExpr::Parallel(cs) | RheoExpr::Serial(cs) => {
            let kind = if matches!(e, RheoExpr::Parallel(_)) { "parallel" } else { "serial" };
            let children = cs.iter().map(model_to_json).collect::<Result<Vec<_>, _>>()?;
            json!({"node": kind, "children": children})
        }
    })
}
