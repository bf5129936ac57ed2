//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when the input is refused (bad spec,
//! bound too small, unrealizable graph, bad command line), 2 on internal
//! errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{int, BivariatePoly, OneForm, PuiseuxParametrization};
use crate::blowup::CurveSpec;
use crate::cs_solver::{check_realizability, solve_cs_indices, verify_certificate};
use crate::error::{Error, Result};
use crate::io;
use crate::saito_min::{
    max_saito, min_saito_closed_form, min_saito_for_spec, numbering_for_coloration, render_tree,
    SearchOptions, DEFAULT_VERTEX_LIMIT,
};
use crate::semimodule::{
    build_lemma_aux_curve, central_dicriticality, cnab_basis, cnab_equation, euler_form,
    lambda_generators, lines_pair, saito_basis_check, t_values, two_component_basis, Semigroup,
};
use crate::verify;

#[derive(Parser, Debug)]
#[command(name = "saito", version, about = "Saito numbers of plane curve classes in exact arithmetic")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    #[value(name = "c_nab")]
    CNab,
    #[value(name = "two_component")]
    TwoComponent,
    #[value(name = "n_lines")]
    NLines,
    #[value(name = "char_exponents")]
    CharExponents,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Preset {
    #[value(name = "two_component")]
    TwoComponent,
    #[value(name = "c_nab")]
    CNab,
    #[value(name = "lines_pair")]
    LinesPair,
}

/// A curve class, from a JSON file or inline flags.
#[derive(Args, Debug)]
struct SpecArgs {
    /// Curve-spec JSON file.
    #[arg(long, conflicts_with = "family")]
    spec: Option<PathBuf>,
    #[arg(long, value_enum)]
    family: Option<Family>,
    #[arg(long = "N")]
    n: Option<u32>,
    #[arg(long)]
    nu0: Option<u32>,
    #[arg(long)]
    nu1: Option<u32>,
    /// Characteristic exponents, comma separated.
    #[arg(long, value_delimiter = ',')]
    betas: Vec<u32>,
}

#[derive(Args, Debug)]
struct SearchArgs {
    /// Largest dual graph searched exhaustively.
    #[arg(long, default_value_t = DEFAULT_VERTEX_LIMIT)]
    limit: usize,
    /// Evaluate colorations on all cores.
    #[arg(long)]
    parallel: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimal Saito number by exhaustive coloration search.
    Mins {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Maximal Saito number of a family.
    Maxs {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Family formula for the minimal Saito number.
    ClosedForm {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Minimal generators of the Lambda semimodule of a branch.
    Lambda {
        /// Parametrization JSON file.
        #[arg(long)]
        param: PathBuf,
        /// Values are computed below this bound (default nu0 nu1 + nu0 + nu1).
        #[arg(long)]
        trunc: Option<u32>,
    },
    /// t-values from Lambda generators.
    Tvalues {
        #[arg(long)]
        nu0: u32,
        #[arg(long)]
        nu1: u32,
        /// lambda_{-1}, lambda_0, ..., comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        generators: Vec<u64>,
    },
    /// Branch with Saito number k and the 1-form leaving it invariant.
    ConstructK {
        #[arg(long)]
        nu0: u32,
        #[arg(long)]
        nu1: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        trunc: Option<u32>,
        /// Also write the invariant 1-form to this file.
        #[arg(long)]
        form_out: Option<PathBuf>,
    },
    /// Saito's criterion for a pair of 1-forms.
    CheckBasis {
        #[arg(long, value_enum, conflicts_with = "forms")]
        preset: Option<Preset>,
        /// JSON file {"omega1": form, "omega2": form, "f": poly}.
        #[arg(long)]
        forms: Option<PathBuf>,
        #[arg(long = "N")]
        n: Option<u32>,
        #[arg(long)]
        nu0: Option<u32>,
        #[arg(long)]
        nu1: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
    },
    /// Realizability check and Camacho-Sad index certificate.
    CsSolve {
        #[command(flatten)]
        spec: SpecArgs,
        /// Coloration as a string of W and B, one letter per component.
        #[arg(long, conflicts_with = "graph")]
        colors: Option<String>,
        /// Numbered colored graph JSON file.
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Dicriticality of df + h (nu1 y dx - nu0 x dy) along the central component.
    Dicritical {
        #[arg(long = "N")]
        n: u32,
        #[arg(long)]
        nu0: u32,
        #[arg(long)]
        nu1: u32,
        /// Monomial h = x^i y^j given as i,j.
        #[arg(long, value_delimiter = ',', conflicts_with = "h")]
        monomial: Option<Vec<u32>>,
        /// Polynomial JSON file for h.
        #[arg(long)]
        h: Option<PathBuf>,
        /// 1-form JSON file for eta (default: built from h).
        #[arg(long)]
        eta: Option<PathBuf>,
    },
    /// Run the reference checks.
    VerifyPaper {
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
    },
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.display())))?;
    io::parse_json(&text)
}

fn missing(flag: &str) -> Error {
    Error::InvalidSpec(format!("--{flag} is required for this family"))
}

fn spec_from_args(a: &SpecArgs) -> Result<CurveSpec> {
    if let Some(path) = &a.spec {
        return io::spec_from_json(&read_json(path)?);
    }
    let family = a
        .family
        .ok_or_else(|| Error::InvalidSpec("give --spec or --family".into()))?;
    let spec = match family {
        Family::CNab => CurveSpec::CNab {
            n: a.n.ok_or_else(|| missing("N"))?,
            nu0: a.nu0.ok_or_else(|| missing("nu0"))?,
            nu1: a.nu1.ok_or_else(|| missing("nu1"))?,
        },
        Family::TwoComponent => CurveSpec::TwoComponent {
            nu0: a.nu0.ok_or_else(|| missing("nu0"))?,
            nu1: a.nu1.ok_or_else(|| missing("nu1"))?,
        },
        Family::NLines => CurveSpec::NLines {
            n: a.n.ok_or_else(|| missing("N"))?,
        },
        Family::CharExponents => {
            if a.betas.is_empty() {
                return Err(missing("betas"));
            }
            CurveSpec::CharExponents(a.betas.clone())
        }
    };
    spec.validate()?;
    Ok(spec)
}

struct Report {
    json: Value,
    text: String,
}

impl Report {
    fn json(json: Value) -> Self {
        let text = text_of(&json);
        Report { json, text }
    }
}

/// `key: value` per top-level field, compact JSON for the values.
fn text_of(v: &Value) -> String {
    match v {
        Value::Object(m) => m
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}: {s}\n"),
                other => format!("{k}: {other}\n"),
            })
            .collect(),
        other => format!("{other}\n"),
    }
}

fn cmd_mins(spec: &SpecArgs, search: &SearchArgs) -> Result<Report> {
    let spec = spec_from_args(spec)?;
    let opts = SearchOptions {
        parallel: search.parallel,
        vertex_limit: search.limit,
    };
    let r = min_saito_for_spec(&spec, opts)?;
    let json = io::min_report_to_json(&r);
    let mut text = format!("min: {}\n", r.value);
    text.push_str(&render_tree(&r.witness));
    for c in &r.components {
        let ids: Vec<String> = c.vertices.iter().map(|v| format!("E{}", v + 1)).collect();
        text.push_str(&format!("white component {{{}}}: {}", ids.join(", "), c.class));
        if let Some(p) = c.patched {
            text.push_str(&format!(", patched at E{}", p + 1));
        }
        text.push('\n');
    }
    Ok(Report { json, text })
}

fn cmd_lambda(param: &Path, trunc: Option<u32>) -> Result<Report> {
    let psi = io::parametrization_from_json(&read_json(param)?)?;
    let bound = match trunc {
        Some(t) => t,
        None => {
            let nu1 = psi
                .nu1()
                .ok_or_else(|| Error::InvalidParameters("y(t) vanishes to the truncation".into()))?;
            PuiseuxParametrization::default_trunc(psi.nu0(), nu1)
        }
    };
    let l = lambda_generators(&psi, bound)?;
    Ok(Report::json(json!({"generators": l.generators, "bound": l.bound})))
}

fn cmd_tvalues(nu0: u32, nu1: u32, generators: &[u64]) -> Result<Report> {
    let g = Semigroup::new(nu0 as u64, nu1 as u64)?;
    let t = t_values(&g, generators)?;
    let rows: Vec<Value> = t
        .rows
        .iter()
        .map(|r| json!({"i": r.i, "u": r.u, "t": r.t, "t_min": r.t_min(), "t_max": r.t_max()}))
        .collect();
    Ok(Report::json(json!({"t0": t.t0, "rows": rows})))
}

fn cmd_construct_k(nu0: u32, nu1: u32, k: u32, trunc: Option<u32>, form_out: Option<&Path>) -> Result<Report> {
    let trunc = trunc.unwrap_or_else(|| PuiseuxParametrization::default_trunc(nu0, nu1));
    let (psi, w) = build_lemma_aux_curve(nu0, nu1, k, trunc)?;
    if let Some(path) = form_out {
        fs::write(path, io::to_pretty(&io::form_to_json(&w)))
            .map_err(|e| Error::Malformed(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(Report::json(io::parametrization_to_json(&psi)))
}

fn need(v: Option<u32>, flag: &str) -> Result<u32> {
    v.ok_or_else(|| Error::InvalidParameters(format!("--{flag} is required for this preset")))
}

fn cmd_check_basis(
    preset: Option<Preset>,
    forms: Option<&Path>,
    n: Option<u32>,
    nu0: Option<u32>,
    nu1: Option<u32>,
    k: Option<u32>,
) -> Result<Report> {
    let (w1, w2, f) = match (preset, forms) {
        (_, Some(path)) => {
            let v = read_json(path)?;
            let field = |key: &str| {
                v.get(key)
                    .ok_or_else(|| Error::Malformed(format!("missing field \"{key}\"")))
            };
            let f = io::poly_from_json(field("f")?)?;
            if f.is_zero() {
                return Err(Error::Malformed("f must be nonzero".into()));
            }
            (io::form_from_json(field("omega1")?)?, io::form_from_json(field("omega2")?)?, f)
        }
        (Some(Preset::TwoComponent), None) => {
            let (a, b) = (need(nu0, "nu0")?, need(nu1, "nu1")?);
            CurveSpec::TwoComponent { nu0: a, nu1: b }.validate()?;
            two_component_basis(a, b)
        }
        (Some(Preset::CNab), None) => {
            let (n, a, b) = (need(n, "N")?, need(nu0, "nu0")?, need(nu1, "nu1")?);
            CurveSpec::CNab { n, nu0: a, nu1: b }.validate()?;
            cnab_basis(n, a, b)
        }
        (Some(Preset::LinesPair), None) => lines_pair(need(n, "N")?, need(k, "k")?)?,
        (None, None) => return Err(Error::InvalidParameters("give --preset or --forms".into())),
    };
    let r = saito_basis_check(&w1, &w2, &f);
    Ok(Report::json(json!({
        "is_basis": r.is_basis,
        "wedge": io::poly_to_json(&r.wedge),
        "cofactor": r.cofactor.as_ref().map(io::poly_to_json),
    })))
}

fn cmd_cs_solve(spec: &SpecArgs, colors: Option<&str>, graph: Option<&Path>) -> Result<Report> {
    let g = match (graph, colors) {
        (Some(path), _) => io::numbered_graph_from_json(&read_json(path)?)?,
        (None, Some(colors)) => {
            let spec = spec_from_args(spec)?;
            let (p, att) = spec.resolve()?;
            let colors = io::parse_colors(colors)?;
            if colors.len() != p.num_components() {
                return Err(Error::InvalidParameters(format!(
                    "{} colors for {} components",
                    colors.len(),
                    p.num_components()
                )));
            }
            numbering_for_coloration(&p.dual_graph(), &att, &colors)
        }
        (None, None) => return Err(Error::InvalidParameters("give --graph or --colors".into())),
    };
    let realizability = check_realizability(&g);
    if !realizability.ok {
        let details: Vec<String> = realizability.violations.iter().map(|v| v.detail.clone()).collect();
        return Err(Error::NotRealizable(details.join("; ")));
    }
    let cert = solve_cs_indices(&g)?;
    let verified = verify_certificate(&g, &cert)?;
    if !verified {
        return Err(Error::SolverExhausted { vertex: 0 });
    }
    let json = json!({
        "graph": io::numbered_graph_to_json(&g),
        "realizability": io::realizability_to_json(&realizability),
        "certificate": io::certificate_to_json(&cert),
        "verified": verified,
    });
    let mut text = render_tree(&g);
    for v in &cert.vertices {
        let ls: Vec<String> = v.lambdas.iter().map(crate::algebra::format_rational).collect();
        text.push_str(&format!("E{}: [{}]\n", v.vertex + 1, ls.join(", ")));
    }
    text.push_str(&format!("verified: {verified}\n"));
    Ok(Report { json, text })
}

fn cmd_dicritical(
    n: u32,
    nu0: u32,
    nu1: u32,
    monomial: Option<&[u32]>,
    h: Option<&Path>,
    eta: Option<&Path>,
) -> Result<Report> {
    let h = match (monomial, h) {
        (Some(&[i, j]), _) => BivariatePoly::monomial(i, j, int(1)),
        (Some(_), _) => {
            return Err(Error::InvalidParameters("--monomial takes two exponents i,j".into()))
        }
        (None, Some(path)) => io::poly_from_json(&read_json(path)?)?,
        (None, None) => BivariatePoly::zero(),
    };
    let eta = match eta {
        Some(path) => io::form_from_json(&read_json(path)?)?,
        None => OneForm::differential(&cnab_equation(n, nu0, nu1)).add(&euler_form(nu0, nu1).mul_poly(&h)),
    };
    let r = central_dicriticality(&eta, &h, n, nu0, nu1)?;
    Ok(Report::json(json!({
        "nu_d_h": r.nu_d_h,
        "bound": r.bound,
        "criterion_holds": r.criterion_holds,
        "chart_dicritical": r.chart_dicritical,
    })))
}

fn cmd_verify(seed: u64) -> (Report, bool) {
    let results = verify::run_all(seed);
    let all = results.iter().all(|r| r.passed);
    let mut text = String::new();
    for r in &results {
        text.push_str(&format!(
            "[{}] {:>2} {}: {}\n",
            if r.passed { "PASS" } else { "FAIL" },
            r.id,
            r.title,
            r.detail
        ));
    }
    let json = json!({
        "passed": all,
        "criteria": results.iter().map(|r| json!({
            "id": r.id, "title": r.title, "passed": r.passed, "detail": r.detail,
        })).collect::<Vec<_>>(),
    });
    (Report { json, text }, all)
}

fn dispatch(cmd: &Command) -> Result<(Report, bool)> {
    let ok = |r: Report| Ok((r, true));
    match cmd {
        Command::Mins { spec, search } => ok(cmd_mins(spec, search)?),
        Command::Maxs { spec } => ok(Report::json(json!({"max": max_saito(&spec_from_args(spec)?)?}))),
        Command::ClosedForm { spec } => {
            ok(Report::json(json!({"closed_form": min_saito_closed_form(&spec_from_args(spec)?)?})))
        }
        Command::Lambda { param, trunc } => ok(cmd_lambda(param, *trunc)?),
        Command::Tvalues { nu0, nu1, generators } => ok(cmd_tvalues(*nu0, *nu1, generators)?),
        Command::ConstructK { nu0, nu1, k, trunc, form_out } => {
            ok(cmd_construct_k(*nu0, *nu1, *k, *trunc, form_out.as_deref())?)
        }
        Command::CheckBasis { preset, forms, n, nu0, nu1, k } => {
            ok(cmd_check_basis(*preset, forms.as_deref(), *n, *nu0, *nu1, *k)?)
        }
        Command::CsSolve { spec, colors, graph } => ok(cmd_cs_solve(spec, colors.as_deref(), graph.as_deref())?),
        Command::Dicritical { n, nu0, nu1, monomial, h, eta } => ok(cmd_dicritical(
            *n,
            *nu0,
            *nu1,
            monomial.as_deref(),
            h.as_deref(),
            eta.as_deref(),
        )?),
        Command::VerifyPaper { seed } => Ok(cmd_verify(*seed)),
    }
}

/// Run with explicit output streams; returns the exit code.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli.command) {
        Ok((report, all_ok)) => {
            let body = match cli.format {
                Format::Json => io::to_pretty(&report.json),
                Format::Text => report.text,
            };
            let _ = out.write_all(body.as_bytes());
            if all_ok {
                0
            } else {
                2
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_internal() {
                2
            } else {
                1
            }
        }
    }
}

pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
