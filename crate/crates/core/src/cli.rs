//! Command-line front end. JSON goes to stdout, diagnostics to stderr.

use std::collections::BTreeMap;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use crate::automorphism::{self, fixed_subalgebra, named_element, DEFAULT_ORDER_CAP};
use crate::classify::{self, classify_field, ClassCount, ClassifyOptions, SCHEMA};
use crate::composition::{doubling_chain, find_zero_divisor, hurwitz_flags, quaternion_presentation, SplitOctonions};
use crate::error::Error;
use crate::fields::{hilbert_symbol, hilbert_symbol_at_place, FieldSpec, Place, Scalar};
use crate::forms::{self, quaternion_is_split, DiagonalForm};
use crate::suites;

#[derive(Debug, Parser)]
#[command(name = "octo", version, about = "Split octonions and the involutions of G2 over exact fields")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify involutions over one field.
    Classify(ClassifyArgs),
    /// Inspect a named automorphism.
    Element(ElementArgs),
    /// Fixed quaternion subalgebra of a named involution.
    FixedSubalgebra(FixedArgs),
    /// Hilbert symbol (a, b).
    Hilbert(HilbertArgs),
    /// Decide isotropy of a diagonal form.
    Form(FormArgs),
    /// Cayley-Dickson doubling chain starting from the ground field.
    Double(DoubleArgs),
    /// Classify over the standard field list and run every property suite.
    VerifyPaper(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub field: FieldSpec,
    /// Primes p = 3 mod 4 whose representatives s_p are added over Q.
    #[arg(long, value_delimiter = ',')]
    pub q_primes: Vec<u64>,
    #[arg(long, default_value_t = 0)]
    pub probe_samples: usize,
    /// Also write the report to this file.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Show {
    Matrix,
    Order,
    FixedSubalgebra,
}

#[derive(Debug, Args)]
pub struct ElementArgs {
    /// s | t:<b>,<g> | st:<b>,<g> | sp:<p>
    #[arg(long)]
    pub name: String,
    #[arg(long, default_value = "Q")]
    pub field: FieldSpec,
    #[arg(long, value_enum)]
    pub show: Option<Show>,
}

#[derive(Debug, Args)]
pub struct FixedArgs {
    #[arg(long)]
    pub name: String,
    #[arg(long, default_value = "Q")]
    pub field: FieldSpec,
}

#[derive(Debug, Args)]
pub struct HilbertArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
    #[arg(long)]
    pub field: FieldSpec,
    /// A single place of Q (prime or "inf"); without it all relevant places
    /// are reported.
    #[arg(long)]
    pub place: Option<Place>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Decide {
    Isotropy,
}

#[derive(Debug, Args)]
pub struct FormArgs {
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    pub coeffs: Vec<String>,
    #[arg(long)]
    pub field: FieldSpec,
    #[arg(long, value_enum, default_value_t = Decide::Isotropy)]
    pub decide: Decide,
}

#[derive(Debug, Args)]
pub struct DoubleArgs {
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',', default_value = "1,1,1")]
    pub alphas: Vec<String>,
    #[arg(long, default_value = "Q")]
    pub field: FieldSpec,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_delimiter = ',', default_values_t = vec![3, 7, 11])]
    pub q_primes: Vec<u64>,
    #[arg(long, default_value_t = 8)]
    pub probe_samples: usize,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn parse_args<I, T>(argv: I) -> Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Cli::try_parse_from(argv)
}

pub fn seed_from_env() -> u64 {
    std::env::var("OCTO_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0)
}

pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Classify(a) => classify_cmd(a),
        Command::Element(a) => element_cmd(a),
        Command::FixedSubalgebra(a) => fixed_cmd(a),
        Command::Hilbert(a) => hilbert_cmd(a),
        Command::Form(a) => form_cmd(a),
        Command::Double(a) => double_cmd(a),
        Command::VerifyPaper(a) => verify_cmd(a, seed_from_env()),
    };
    match result {
        Ok((code, value)) => {
            let stdout = match cli.format {
                Format::Json => serde_json::to_string_pretty(&value).expect("serializable") + "\n",
                Format::Text => render_text(&value),
            };
            Outcome {
                code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => {
            let code = match e {
                Error::ClassCountMismatch { .. } | Error::Engine(_) => 1,
                _ => 2,
            };
            Outcome {
                code,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    }
}

type CmdResult = Result<(i32, Value), Error>;

fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn classify_cmd(a: &ClassifyArgs) -> CmdResult {
    let opts = ClassifyOptions {
        q_primes: a.q_primes.clone(),
        probe_samples: a.probe_samples,
        seed: seed_from_env(),
    };
    let report = classify_field(a.field, &opts)?;
    let code = if report.all_checks_pass() { 0 } else { 1 };
    let value = to_value(&report);
    if let Some(path) = &a.out {
        let text = serde_json::to_string_pretty(&value).expect("serializable") + "\n";
        std::fs::write(path, text).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    }
    Ok((code, value))
}

fn element_cmd(a: &ElementArgs) -> CmdResult {
    let m = named_element(&a.name, a.field)?;
    let order = m.order(DEFAULT_ORDER_CAP);
    let mut out = serde_json::Map::new();
    out.insert("schema".into(), json!(SCHEMA));
    out.insert("name".into(), json!(a.name));
    out.insert("field".into(), json!(a.field));
    let wants = |s: Show| a.show.map_or(true, |x| x == s);
    if wants(Show::Matrix) {
        out.insert("matrix".into(), to_value(m.matrix()));
        out.insert("automorphism".into(), json!(automorphism::is_automorphism(&m).holds));
    }
    if wants(Show::Order) {
        out.insert("order".into(), to_value(order));
    }
    if wants(Show::FixedSubalgebra) {
        if a.show.is_some() || matches!(order, automorphism::Order::Finite(1 | 2)) {
            let d = fixed_subalgebra(&m)?;
            out.insert("fixed_basis".into(), to_value(d.vectors()));
            if d.dim() == 4 {
                let p = quaternion_presentation(&d, &SplitOctonions::new(a.field))?;
                out.insert("presentation".into(), json!({"alpha": p.alpha, "beta": p.beta}));
            }
        }
    }
    Ok((0, Value::Object(out)))
}

fn fixed_cmd(a: &FixedArgs) -> CmdResult {
    let m = named_element(&a.name, a.field)?;
    let class = classify::classify_involution(&m, &a.name)?;
    let alg = SplitOctonions::new(a.field);
    let zero_divisor = find_zero_divisor(&class.fixed_subalgebra()?, &alg)?;
    Ok((
        0,
        json!({
            "schema": SCHEMA,
            "name": a.name,
            "field": a.field,
            "fixed_basis": class.fixed_basis,
            "presentation": class.presentation,
            "invariant": class.invariant,
            "zero_divisor": zero_divisor,
        }),
    ))
}

fn hilbert_cmd(a: &HilbertArgs) -> CmdResult {
    let (x, y) = (a.field.parse_scalar(&a.a)?, a.field.parse_scalar(&a.b)?);
    if x.is_zero() || y.is_zero() {
        return Err(Error::ZeroInput("hilbert"));
    }
    let inv = quaternion_is_split(&x, &y, a.field)?;
    let verdict = inv.verdict;
    let mut out = json!({"schema": SCHEMA, "field": a.field, "a": x, "b": y});
    match (a.field, a.place) {
        (FieldSpec::Rationals, Some(place)) => {
            let r = |s: &Scalar| -> BigRational { s.as_rational().expect("rational").clone() };
            out["place"] = json!(place);
            out["symbol"] = json!(hilbert_symbol_at_place(&r(&x), &r(&y), place)?);
        }
        (FieldSpec::Rationals, None) => {
            out["symbols"] = to_value(inv.symbols()?);
            out["ramified_places"] = to_value(&inv.ramified_places);
        }
        (_, Some(_)) => return Err(Error::InvalidArgument("--place is only meaningful over Q".into())),
        (field, None) => out["symbol"] = json!(hilbert_symbol(&x, &y, field)?),
    }
    out["verdict"] = to_value(verdict);
    Ok((0, out))
}

fn form_cmd(a: &FormArgs) -> CmdResult {
    let coeffs = a.coeffs.iter().map(|c| a.field.parse_scalar(c.trim())).collect::<Result<Vec<_>, _>>()?;
    let form = DiagonalForm::new(coeffs, a.field)?;
    let iso = forms::is_isotropic(&form)?;
    let mut out = json!({
        "schema": SCHEMA,
        "field": a.field,
        "coeffs": form.coeffs(),
        "verdict": if iso.isotropic { "isotropic" } else { "anisotropic" },
    });
    if let Some(w) = &iso.witness {
        out["witness"] = to_value(w);
    }
    if a.field == FieldSpec::Rationals && form.dim() >= 2 {
        let c: Vec<BigRational> = form.coeffs().iter().map(|s| s.as_rational().unwrap().clone()).collect();
        let refs: Vec<&BigRational> = c.iter().collect();
        let mut bad = Vec::new();
        for place in crate::fields::relevant_places(&refs)? {
            if !forms::locally_isotropic(&c, place)? {
                bad.push(place);
            }
        }
        out["ramified_places"] = to_value(bad);
    }
    Ok((0, out))
}

fn double_cmd(a: &DoubleArgs) -> CmdResult {
    let alphas = a.alphas.iter().map(|s| a.field.parse_scalar(s.trim())).collect::<Result<Vec<_>, _>>()?;
    let chain = doubling_chain(a.field, &alphas)?;
    let algebras: Vec<Value> = chain
        .iter()
        .map(|alg| {
            json!({
                "algebra": alg.to_document(),
                "hurwitz": hurwitz_flags(alg),
                "composition": alg.composition_check(),
            })
        })
        .collect();
    Ok((0, json!({"schema": SCHEMA, "field": a.field, "alphas": alphas, "chain": algebras})))
}

/// The fields the theorem covers, in report order.
pub fn default_field_matrix() -> Vec<FieldSpec> {
    use FieldSpec::*;
    vec![
        Reals,
        Complex,
        Rationals,
        Padic(2),
        Padic(3),
        Padic(5),
        Padic(7),
        PrimeField(3),
        PrimeField(5),
        PrimeField(7),
        PrimeField(11),
    ]
}

fn verify_cmd(a: &VerifyArgs, seed: u64) -> CmdResult {
    let mut counts = BTreeMap::new();
    let mut fields = Vec::new();
    let mut passed = true;
    for field in default_field_matrix() {
        let opts = ClassifyOptions {
            q_primes: if field == FieldSpec::Rationals { a.q_primes.clone() } else { Vec::new() },
            probe_samples: a.probe_samples,
            seed,
        };
        match classify_field(field, &opts) {
            Ok(report) => {
                passed &= report.all_checks_pass();
                counts.insert(field.short_name(), to_value(&report.count));
                fields.push(json!({
                    "field": field,
                    "count": report.count,
                    "classes_found": report.classes_found,
                    "classes": report.classes.iter().map(|c| json!({
                        "members": c.members,
                        "alpha": c.class.presentation.alpha,
                        "beta": c.class.presentation.beta,
                        "verdict": c.class.invariant.verdict,
                    })).collect::<Vec<_>>(),
                    "checks": report.checks,
                }));
            }
            Err(e) => {
                passed = false;
                counts.insert(field.short_name(), json!(null));
                fields.push(json!({"field": field, "error": e.to_string()}));
            }
        }
    }
    let expected = expected_counts();
    let counts_match = counts == expected;
    passed &= counts_match;
    let suites = suites::default_suites(seed);
    passed &= suites.iter().all(|s| s.passed);
    Ok((
        if passed { 0 } else { 1 },
        json!({
            "schema": SCHEMA,
            "seed": seed,
            "passed": passed,
            "counts": counts,
            "counts_match": counts_match,
            "fields": fields,
            "suites": suites,
        }),
    ))
}

fn expected_counts() -> BTreeMap<String, Value> {
    default_field_matrix()
        .into_iter()
        .map(|f| {
            let c = match f {
                FieldSpec::Rationals => ClassCount::NonExhaustive,
                FieldSpec::Complex | FieldSpec::PrimeField(_) => ClassCount::Exact(1),
                _ => ClassCount::Exact(2),
            };
            (f.short_name(), to_value(c))
        })
        .collect()
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// A line-oriented summary of a JSON result.
fn render_text(v: &Value) -> String {
    let mut out = String::new();
    let Value::Object(map) = v else {
        return scalar_text(v) + "\n";
    };
    if let (Some(counts), Some(suites)) = (map.get("counts"), map.get("suites")) {
        out.push_str(&format!("verify-paper: {}\n", if map["passed"] == json!(true) { "PASS" } else { "FAIL" }));
        if let Value::Object(c) = counts {
            for (k, n) in c {
                out.push_str(&format!("  {k}: {}\n", scalar_text(n)));
            }
        }
        for s in suites.as_array().into_iter().flatten() {
            let mark = if s["passed"] == json!(true) { "ok  " } else { "FAIL" };
            out.push_str(&format!("  [{mark}] {} ({} cases)\n", scalar_text(&s["name"]), s["cases"]));
        }
        return out;
    }
    if let Some(classes) = map.get("classes").and_then(Value::as_array) {
        out.push_str(&format!("field {}: {} classes\n", scalar_text(&map["field"]), scalar_text(&map["count"])));
        for c in classes {
            let inv = &c["invariant"];
            out.push_str(&format!(
                "  {} ({}, {}) {}\n",
                c["members"].as_array().map(|m| m.iter().map(scalar_text).collect::<Vec<_>>().join(" ≅ ")).unwrap_or_default(),
                scalar_text(&inv["alpha"]),
                scalar_text(&inv["beta"]),
                scalar_text(&inv["verdict"]),
            ));
        }
        for c in map.get("checks").and_then(Value::as_array).into_iter().flatten() {
            let mark = if c["passed"] == json!(true) { "ok  " } else { "FAIL" };
            out.push_str(&format!("  [{mark}] {}\n", scalar_text(&c["name"])));
        }
        return out;
    }
    for (k, val) in map {
        if k == "schema" {
            continue;
        }
        out.push_str(&format!("{k}: {}\n", scalar_text(val)));
    }
    out
}
