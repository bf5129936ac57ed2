//! JSON readers and writers.
//!
//! Everything is built on [`serde_json::Value`], whose maps keep keys
//! sorted, so output is byte-deterministic. Components are numbered from
//! 1 (`E1`, `E2`, ...) in every schema. Rationals appear either as
//! canonical strings (`"3"`, `"-1/2"`) or as `num`/`den` string pairs.

use serde_json::{json, Map, Value};

use crate::algebra::{
    format_rational, parse_rational, rational_from_parts, BivariatePoly, OneForm,
    PuiseuxParametrization, Rational, TruncatedSeries,
};
use crate::blowup::{build_process, Center, ComponentId, CurveAttachment, CurveSpec, DualGraph};
use crate::cs_solver::{CSCertificate, EdgeSlots, RealizabilityReport, VertexIndices};
use crate::error::{Error, Result};
use crate::saito_min::{Color, MinSaitoResult, NumberedColoredGraph};

fn malformed(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| malformed(format!("missing field \"{key}\"")))
}

fn as_u32(v: &Value, what: &str) -> Result<u32> {
    v.as_u64()
        .and_then(|n| u32::try_from(n).ok())
        .ok_or_else(|| malformed(format!("\"{what}\" must be a non-negative integer")))
}

fn as_i64(v: &Value, what: &str) -> Result<i64> {
    v.as_i64()
        .ok_or_else(|| malformed(format!("\"{what}\" must be an integer")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| malformed(format!("\"{what}\" must be an array")))
}

fn u32_field(v: &Value, key: &str) -> Result<u32> {
    as_u32(field(v, key)?, key)
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| malformed(format!("invalid JSON: {e}")))
}

/// Pretty-printed with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("Value always serializes");
    s.push('\n');
    s
}

pub fn rational_to_json(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).ok_or_else(|| malformed(format!("bad rational \"{s}\""))),
        Value::Number(n) => n
            .as_i64()
            .map(crate::algebra::int)
            .ok_or_else(|| malformed(format!("bad rational {n}"))),
        _ => Err(malformed("rational must be a string or an integer")),
    }
}

fn parts(q: &Rational) -> (String, String) {
    (q.numer().to_string(), q.denom().to_string())
}

fn rational_from_parts_json(v: &Value, num_key: &str, den_key: &str) -> Result<Rational> {
    let s = |key: &str| -> Result<String> {
        match field(v, key)? {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            _ => Err(malformed(format!("\"{key}\" must be a string"))),
        }
    };
    let (n, d) = (s(num_key)?, s(den_key)?);
    rational_from_parts(&n, &d).ok_or_else(|| malformed(format!("bad rational {n}/{d}")))
}

// ---------------------------------------------------------------- specs

fn center_to_json(c: &Center) -> Value {
    match *c {
        Center::Initial => json!({"center": "initial"}),
        Center::Free(a) => json!({"center": "free", "on": [a.0]}),
        Center::Satellite(a, b) => json!({"center": "satellite", "on": [a.0, b.0]}),
    }
}

fn center_from_json(v: &Value, index: usize) -> Result<Center> {
    let kind = field(v, "center")?
        .as_str()
        .ok_or_else(|| malformed("\"center\" must be a string"))?;
    let on = || -> Result<Vec<ComponentId>> {
        as_array(field(v, "on")?, "on")?
            .iter()
            .map(|c| as_u32(c, "on").map(|n| ComponentId(n as usize)))
            .collect()
    };
    let wrong = |reason: String| Error::InvalidStep { index, reason };
    match kind {
        "initial" => Ok(Center::Initial),
        "free" => match on()?[..] {
            [a] => Ok(Center::Free(a)),
            _ => Err(wrong("a free point lies on exactly one component".into())),
        },
        "satellite" => match on()?[..] {
            [a, b] => Ok(Center::Satellite(a, b)),
            _ => Err(wrong("a satellite point lies on exactly two components".into())),
        },
        other => Err(wrong(format!("unknown center kind \"{other}\""))),
    }
}

pub fn spec_to_json(spec: &CurveSpec) -> Value {
    match spec {
        CurveSpec::Explicit {
            process,
            attachment,
        } => {
            let steps: Vec<Value> = process.steps().iter().map(|s| center_to_json(&s.center)).collect();
            let attachments: Vec<Value> = attachment
                .counts()
                .iter()
                .enumerate()
                .filter(|(_, &n)| n > 0)
                .map(|(v, &n)| json!({"component": v + 1, "n": n}))
                .collect();
            json!({"type": "explicit", "steps": steps, "attachments": attachments})
        }
        CurveSpec::CharExponents(b) => json!({"type": "char_exponents", "betas": b}),
        CurveSpec::CNab { n, nu0, nu1 } => json!({"type": "c_nab", "N": n, "nu0": nu0, "nu1": nu1}),
        CurveSpec::TwoComponent { nu0, nu1 } => json!({"type": "two_component", "nu0": nu0, "nu1": nu1}),
        CurveSpec::NLines { n } => json!({"type": "n_lines", "N": n}),
    }
}

pub fn spec_from_json(v: &Value) -> Result<CurveSpec> {
    let kind = field(v, "type")?
        .as_str()
        .ok_or_else(|| malformed("\"type\" must be a string"))?;
    let spec = match kind {
        "explicit" => {
            let centers = as_array(field(v, "steps")?, "steps")?
                .iter()
                .enumerate()
                .map(|(i, s)| center_from_json(s, i + 1))
                .collect::<Result<Vec<_>>>()?;
            let process = build_process(&centers)?;
            let mut counts = vec![0u32; process.num_components()];
            for a in as_array(field(v, "attachments")?, "attachments")? {
                let c = u32_field(a, "component")? as usize;
                if c == 0 || c > counts.len() {
                    return Err(Error::InvalidSpec(format!("attachment on unknown component E{c}")));
                }
                counts[c - 1] += u32_field(a, "n")?;
            }
            CurveSpec::Explicit {
                process,
                attachment: CurveAttachment::new(counts),
            }
        }
        "char_exponents" => CurveSpec::CharExponents(
            as_array(field(v, "betas")?, "betas")?
                .iter()
                .map(|b| as_u32(b, "betas"))
                .collect::<Result<_>>()?,
        ),
        "c_nab" => CurveSpec::CNab {
            n: u32_field(v, "N")?,
            nu0: u32_field(v, "nu0")?,
            nu1: u32_field(v, "nu1")?,
        },
        "two_component" => CurveSpec::TwoComponent {
            nu0: u32_field(v, "nu0")?,
            nu1: u32_field(v, "nu1")?,
        },
        "n_lines" => CurveSpec::NLines { n: u32_field(v, "N")? },
        other => return Err(Error::InvalidSpec(format!("unknown spec type \"{other}\""))),
    };
    spec.validate()?;
    Ok(spec)
}

// ----------------------------------------------------------- algebra

pub fn poly_to_json(p: &BivariatePoly) -> Value {
    Value::Array(
        p.terms()
            .map(|((i, j), c)| {
                let (n, d) = parts(c);
                json!({"exponents": [i, j], "numerator": n, "denominator": d})
            })
            .collect(),
    )
}

pub fn poly_from_json(v: &Value) -> Result<BivariatePoly> {
    let mut terms = Vec::new();
    for t in as_array(v, "polynomial")? {
        let e = as_array(field(t, "exponents")?, "exponents")?;
        if e.len() != 2 {
            return Err(malformed("\"exponents\" must have two entries"));
        }
        let c = rational_from_parts_json(t, "numerator", "denominator")?;
        terms.push(((as_u32(&e[0], "exponents")?, as_u32(&e[1], "exponents")?), c));
    }
    Ok(BivariatePoly::from_terms(terms))
}

pub fn form_to_json(w: &OneForm) -> Value {
    json!({"dx": poly_to_json(&w.dx), "dy": poly_to_json(&w.dy)})
}

/// Reads `{"dx": poly, "dy": poly}`; the zero form is rejected.
pub fn form_from_json(v: &Value) -> Result<OneForm> {
    let dx = poly_from_json(field(v, "dx")?)?;
    let dy = poly_from_json(field(v, "dy")?)?;
    OneForm::new(dx, dy).ok_or_else(|| malformed("the zero 1-form is not allowed"))
}

fn coeff_records(s: &TruncatedSeries) -> Value {
    Value::Array(
        s.terms()
            .map(|(e, c)| {
                let (n, d) = parts(c);
                json!({"exp": e, "num": n, "den": d})
            })
            .collect(),
    )
}

fn coeffs_from_records(v: &Value) -> Result<Vec<(u32, Rational)>> {
    as_array(v, "coeffs")?
        .iter()
        .map(|r| Ok((u32_field(r, "exp")?, rational_from_parts_json(r, "num", "den")?)))
        .collect()
}

pub fn series_to_json(s: &TruncatedSeries) -> Value {
    json!({"var": s.var(), "trunc": s.trunc(), "coeffs": coeff_records(s)})
}

pub fn series_from_json(v: &Value) -> Result<TruncatedSeries> {
    let var = field(v, "var")?
        .as_str()
        .ok_or_else(|| malformed("\"var\" must be a string"))?;
    let trunc = u32_field(v, "trunc")?;
    Ok(TruncatedSeries::from_terms(var, trunc, coeffs_from_records(field(v, "coeffs")?)?))
}

pub fn parametrization_to_json(psi: &PuiseuxParametrization) -> Value {
    json!({"nu0": psi.nu0(), "trunc": psi.trunc(), "coeffs": coeff_records(psi.y())})
}

pub fn parametrization_from_json(v: &Value) -> Result<PuiseuxParametrization> {
    let nu0 = u32_field(v, "nu0")?;
    if nu0 == 0 {
        return Err(malformed("\"nu0\" must be positive"));
    }
    let trunc = u32_field(v, "trunc")?;
    let y = TruncatedSeries::from_terms("t", trunc, coeffs_from_records(field(v, "coeffs")?)?);
    Ok(PuiseuxParametrization::new(nu0, y))
}

// ------------------------------------------------------------ graphs

fn colors_string(colors: &[Color]) -> String {
    colors.iter().map(|c| c.as_char()).collect()
}

pub fn parse_colors(s: &str) -> Result<Vec<Color>> {
    s.chars()
        .map(|c| Color::from_char(c).ok_or_else(|| malformed(format!("bad color '{c}', use W or B"))))
        .collect()
}

pub fn numbered_graph_to_json(g: &NumberedColoredGraph) -> Value {
    let edges: Vec<Value> = (0..g.len())
        .flat_map(|a| g.graph.adj[a].iter().filter(move |&&b| b > a).map(move |&b| json!([a + 1, b + 1])))
        .collect();
    json!({
        "rho": g.graph.rho,
        "self_intersections": g.graph.self_int,
        "edges": edges,
        "colors": colors_string(&g.colors),
        "s2": g.second,
    })
}

pub fn numbered_graph_from_json(v: &Value) -> Result<NumberedColoredGraph> {
    let ints = |key: &str| -> Result<Vec<i64>> {
        as_array(field(v, key)?, key)?.iter().map(|x| as_i64(x, key)).collect()
    };
    let rho: Vec<u64> = as_array(field(v, "rho")?, "rho")?
        .iter()
        .map(|x| as_u32(x, "rho").map(u64::from))
        .collect::<Result<_>>()?;
    let n = rho.len();
    let self_int = ints("self_intersections")?;
    let second = ints("s2")?;
    let colors = parse_colors(
        field(v, "colors")?
            .as_str()
            .ok_or_else(|| malformed("\"colors\" must be a string"))?,
    )?;
    if self_int.len() != n || second.len() != n || colors.len() != n {
        return Err(malformed("rho, self_intersections, colors and s2 must have equal length"));
    }
    let mut adj = vec![Vec::new(); n];
    for e in as_array(field(v, "edges")?, "edges")? {
        let e = as_array(e, "edges")?;
        let (a, b) = match e[..] {
            [ref a, ref b] => (as_u32(a, "edges")? as usize, as_u32(b, "edges")? as usize),
            _ => return Err(malformed("an edge is a pair of components")),
        };
        if a == 0 || b == 0 || a > n || b > n || a == b {
            return Err(malformed(format!("bad edge [{a}, {b}]")));
        }
        if adj[a - 1].contains(&(b - 1)) {
            return Err(malformed(format!("duplicate edge [{a}, {b}]")));
        }
        adj[a - 1].push(b - 1);
        adj[b - 1].push(a - 1);
    }
    for l in &mut adj {
        l.sort_unstable();
    }
    Ok(NumberedColoredGraph {
        graph: DualGraph { rho, adj, self_int },
        colors,
        second,
    })
}

pub fn min_report_to_json(r: &MinSaitoResult) -> Value {
    let components: Vec<Value> = r
        .components
        .iter()
        .map(|c| {
            let mut m = Map::new();
            m.insert("vertices".into(), json!(c.vertices.iter().map(|v| v + 1).collect::<Vec<_>>()));
            m.insert("class".into(), json!(c.class.to_string()));
            if let Some(p) = c.patched {
                m.insert("patched_vertex".into(), json!(p + 1));
            }
            Value::Object(m)
        })
        .collect();
    json!({
        "min": r.value,
        "witness": {
            "colors": colors_string(&r.witness.colors),
            "numbers": (0..r.witness.len())
                .map(|v| json!([r.witness.first(v), r.witness.second[v]]))
                .collect::<Vec<_>>(),
        },
        "components": components,
    })
}

pub fn realizability_to_json(r: &RealizabilityReport) -> Value {
    json!({
        "ok": r.ok,
        "violations": r.violations.iter().map(|v| json!({
            "condition": v.condition.to_string(),
            "vertices": v.vertices.iter().map(|x| x + 1).collect::<Vec<_>>(),
            "detail": v.detail,
        })).collect::<Vec<_>>(),
    })
}

pub fn certificate_to_json(c: &CSCertificate) -> Value {
    json!({
        "vertices": c.vertices.iter().map(|v| json!({
            "component": v.vertex + 1,
            "lambdas": v.lambdas.iter().map(rational_to_json).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "edges": c.edges.iter().map(|e| json!({
            "components": [e.vertices.0 + 1, e.vertices.1 + 1],
            "slots": [e.slots.0, e.slots.1],
        })).collect::<Vec<_>>(),
    })
}

pub fn certificate_from_json(v: &Value) -> Result<CSCertificate> {
    let component = |x: &Value| -> Result<usize> {
        match as_u32(x, "component")? {
            0 => Err(malformed("components are numbered from 1")),
            c => Ok(c as usize - 1),
        }
    };
    let vertices = as_array(field(v, "vertices")?, "vertices")?
        .iter()
        .map(|e| {
            Ok(VertexIndices {
                vertex: component(field(e, "component")?)?,
                lambdas: as_array(field(e, "lambdas")?, "lambdas")?
                    .iter()
                    .map(rational_from_json)
                    .collect::<Result<_>>()?,
            })
        })
        .collect::<Result<_>>()?;
    let edges = as_array(field(v, "edges")?, "edges")?
        .iter()
        .map(|e| {
            let cs = as_array(field(e, "components")?, "components")?;
            let ss = as_array(field(e, "slots")?, "slots")?;
            if cs.len() != 2 || ss.len() != 2 {
                return Err(malformed("an edge has two components and two slots"));
            }
            Ok(EdgeSlots {
                vertices: (component(&cs[0])?, component(&cs[1])?),
                slots: (as_u32(&ss[0], "slots")? as usize, as_u32(&ss[1], "slots")? as usize),
            })
        })
        .collect::<Result<_>>()?;
    Ok(CSCertificate { vertices, edges })
}
