//! Command-line front end. `run` never touches the process: it returns the exit code and
//! both output streams, so the binary and the tests share one code path.

use std::fs;
use std::io::Read;

use clap::{Args, Parser, Subcommand};
use houghton::brown::{
    cone, le, q_fixed_vertex, stabilizer_order, upper_bound, InjectiveMonoidMap, MonoidMapJson,
};
use houghton::centralizer::{
    centralizer_finite, centralizer_infinite, centralizer_vc, gamma, quasi_ufp0_witnesses,
};
use houghton::oracle::verify;
use houghton::{conjugator, Element, ElementJson, Error, FiniteSubgroup, Order};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "houghton",
    about = "Exact computations in Houghton's groups H_n"
)]
struct Cli {
    /// Pretty-print JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Element arithmetic.
    #[command(subcommand)]
    Elem(ElemCmd),
    /// Conjugacy of finite-order elements.
    #[command(subcommand)]
    Conj(ConjCmd),
    /// Centralizer descriptions.
    #[command(subcommand)]
    Centralizer(CentralizerCmd),
    /// The graph Γ of an infinite-order element.
    Gamma {
        #[command(flatten)]
        input: Inputs,
        /// Emit DOT instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Brown's poset of injective maps.
    #[command(subcommand)]
    Brown(BrownCmd),
    /// Brute-force oracles.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Witness families.
    #[command(subcommand)]
    Witnesses(WitnessCmd),
}

#[derive(Args, Debug, Clone)]
struct Inputs {
    /// Input file, or `-` for standard input.
    #[arg(long = "in", value_name = "FILE")]
    input: Option<String>,
    /// Further input files.
    #[arg(value_name = "FILE")]
    files: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum ElemCmd {
    /// Left-to-right product of two or more elements.
    Compose(Inputs),
    Invert(Inputs),
    Order(Inputs),
    Phi(Inputs),
    CycleType(Inputs),
}

#[derive(Subcommand, Debug)]
enum ConjCmd {
    Test(Inputs),
    Find(Inputs),
}

#[derive(Subcommand, Debug)]
enum CentralizerCmd {
    /// Input: a subgroup `{"n":…, "generators":[…]}`.
    Finite(Inputs),
    /// Input: one infinite-order element.
    Element(Inputs),
    /// Input: `{"n":…, "generators":[…], "w": element}`.
    Vc(Inputs),
}

#[derive(Subcommand, Debug)]
enum BrownCmd {
    /// Inputs: two vertices.
    Le(Inputs),
    Stab(Inputs),
    /// Input: a finite subgroup.
    FixedVertex(Inputs),
    /// Inputs: two vertices and a finite subgroup fixing both.
    UpperBound(Inputs),
    /// Vertices above the input up to the given extra degree.
    Cone {
        #[command(flatten)]
        input: Inputs,
        #[arg(long, default_value_t = 2)]
        depth: u64,
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCmd {
    Verify {
        #[arg(long)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Box depth.
        #[arg(long = "box", default_value_t = 3)]
        depth: usize,
    },
}

#[derive(Subcommand, Debug)]
enum WitnessCmd {
    QuasiUfp0 {
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
}

/// A failure reported as `{"error": code, "detail": …}`.
#[derive(Debug)]
struct Failure {
    code: String,
    detail: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: e.code().into(),
            detail: e.to_string(),
        }
    }
}

fn malformed(detail: impl ToString) -> Failure {
    Failure {
        code: "malformed".into(),
        detail: detail.to_string(),
    }
}

type Out = Result<Output, Failure>;

enum Output {
    Json(Value),
    Lines(Vec<Value>),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSubgroup {
    n: usize,
    generators: Vec<ElementJson>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVc {
    n: usize,
    #[serde(default)]
    generators: Vec<ElementJson>,
    w: ElementJson,
}

#[derive(Serialize)]
struct Conjugacy {
    conjugate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    conjugator: Option<Option<Element>>,
}

pub fn run<I, S>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    run_with_stdin(argv, &mut std::io::stdin())
}

pub fn run_with_stdin<I, S>(argv: I, stdin: &mut dyn Read) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let mut args: Vec<String> = argv.into_iter().map(Into::into).collect();
    if args.is_empty() {
        args.push("houghton".into());
    }
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    CommandResult {
                        code: 0,
                        stdout: text,
                        stderr: String::new(),
                    }
                }
                _ => CommandResult {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match dispatch(cli.command, stdin) {
        Ok(out) => CommandResult {
            code: 0,
            stdout: render(out, cli.pretty),
            stderr: String::new(),
        },
        Err(f) => CommandResult {
            code: 1,
            stdout: String::new(),
            stderr: format!("{}\n", json!({"error": f.code, "detail": f.detail})),
        },
    }
}

fn render(out: Output, pretty: bool) -> String {
    let one = |v: &Value| {
        if pretty {
            serde_json::to_string_pretty(v).expect("json values serialize")
        } else {
            v.to_string()
        }
    };
    match out {
        Output::Json(v) => format!("{}\n", one(&v)),
        // one report per line, so never pretty-printed
        Output::Lines(vs) => vs.iter().map(|v| format!("{v}\n")).collect(),
        Output::Text(t) => t,
    }
}

fn to_value<T: Serialize>(x: &T) -> Result<Value, Failure> {
    serde_json::to_value(x).map_err(|e| Failure {
        code: "internal".into(),
        detail: e.to_string(),
    })
}

/// Reads every input document, in order. A single document holding an array of exactly
/// `want` values is spread, so pairs can come from one file or standard input.
fn documents(inputs: &Inputs, stdin: &mut dyn Read, want: usize) -> Result<Vec<Value>, Failure> {
    let mut names: Vec<&str> = inputs.input.iter().map(String::as_str).collect();
    names.extend(inputs.files.iter().map(String::as_str));
    if names.is_empty() {
        names.push("-");
    }
    let mut docs = Vec::new();
    for name in names {
        let text = if name == "-" {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| Failure {
                code: "io".into(),
                detail: format!("standard input: {e}"),
            })?;
            s
        } else {
            fs::read_to_string(name).map_err(|e| Failure {
                code: "io".into(),
                detail: format!("{name}: {e}"),
            })?
        };
        let v: Value =
            serde_json::from_str(&text).map_err(|e| malformed(format!("{name}: {e}")))?;
        docs.push(v);
    }
    if want > 1 && docs.len() == 1 {
        if let Value::Array(items) = &docs[0] {
            if items.len() == want {
                return Ok(items.clone());
            }
        }
    }
    if docs.len() < want {
        return Err(malformed(format!(
            "expected {want} inputs, got {}",
            docs.len()
        )));
    }
    Ok(docs)
}

fn element(v: Value) -> Result<Element, Failure> {
    let raw: ElementJson = serde_json::from_value(v).map_err(malformed)?;
    Ok(Element::try_from(raw)?)
}

fn elements(raw: Vec<ElementJson>) -> Result<Vec<Element>, Failure> {
    raw.into_iter()
        .map(|j| Element::try_from(j).map_err(Failure::from))
        .collect()
}

fn check_arity(n: usize, items: &[Element]) -> Result<(), Failure> {
    match items.iter().find(|e| e.arity() != n) {
        Some(e) => Err(Error::ArityMismatch {
            left: n,
            right: e.arity(),
        }
        .into()),
        None => Ok(()),
    }
}

fn subgroup(v: Value) -> Result<FiniteSubgroup, Failure> {
    let raw: RawSubgroup = serde_json::from_value(v).map_err(malformed)?;
    let gens = elements(raw.generators)?;
    check_arity(raw.n, &gens)?;
    Ok(FiniteSubgroup::closure(raw.n, &gens)?)
}

fn vertex(v: Value) -> Result<InjectiveMonoidMap, Failure> {
    let raw: MonoidMapJson = serde_json::from_value(v).map_err(malformed)?;
    Ok(InjectiveMonoidMap::try_from(raw)?)
}

fn single(inputs: &Inputs, stdin: &mut dyn Read) -> Result<Value, Failure> {
    let mut docs = documents(inputs, stdin, 1)?;
    if docs.len() != 1 {
        return Err(malformed(format!("expected one input, got {}", docs.len())));
    }
    Ok(docs.remove(0))
}

fn pair(inputs: &Inputs, stdin: &mut dyn Read) -> Result<(Value, Value), Failure> {
    let docs = documents(inputs, stdin, 2)?;
    match <[Value; 2]>::try_from(docs) {
        Ok([a, b]) => Ok((a, b)),
        Err(docs) => Err(malformed(format!(
            "expected two inputs, got {}",
            docs.len()
        ))),
    }
}

fn conjugacy(inputs: &Inputs, stdin: &mut dyn Read, find: bool) -> Out {
    let (a, b) = pair(inputs, stdin)?;
    let (a, b) = (element(a)?, element(b)?);
    let h = conjugator(&a, &b)?;
    let out = Conjugacy {
        conjugate: h.is_some(),
        conjugator: find.then_some(h),
    };
    Ok(Output::Json(to_value(&out)?))
}

fn dispatch(cmd: Command, stdin: &mut dyn Read) -> Out {
    match cmd {
        Command::Elem(c) => elem(c, stdin),
        Command::Conj(ConjCmd::Test(i)) => conjugacy(&i, stdin, false),
        Command::Conj(ConjCmd::Find(i)) => conjugacy(&i, stdin, true),
        Command::Centralizer(c) => {
            let desc = match c {
                CentralizerCmd::Finite(i) => centralizer_finite(&subgroup(single(&i, stdin)?)?)?,
                CentralizerCmd::Element(i) => centralizer_infinite(&element(single(&i, stdin)?)?)?,
                CentralizerCmd::Vc(i) => {
                    let raw: RawVc =
                        serde_json::from_value(single(&i, stdin)?).map_err(malformed)?;
                    let gens = elements(raw.generators)?;
                    let w = Element::try_from(raw.w)?;
                    check_arity(raw.n, &gens)?;
                    check_arity(raw.n, std::slice::from_ref(&w))?;
                    centralizer_vc(&gens, &w)?
                }
            };
            Ok(Output::Json(to_value(&desc.to_json())?))
        }
        Command::Gamma { input, dot } => {
            let g = gamma(&element(single(&input, stdin)?)?)?;
            if dot {
                Ok(Output::Text(g.to_dot()))
            } else {
                Ok(Output::Json(to_value(&g)?))
            }
        }
        Command::Brown(c) => brown(c, stdin),
        Command::Oracle(OracleCmd::Verify { cases, seed, depth }) => {
            let reports = verify(cases, seed, depth)?;
            Ok(Output::Lines(
                reports.iter().map(to_value).collect::<Result<_, _>>()?,
            ))
        }
        Command::Witnesses(WitnessCmd::QuasiUfp0 { count, n }) => {
            let groups = quasi_ufp0_witnesses(n, count)?;
            let list: Vec<_> = groups.iter().map(FiniteSubgroup::to_json).collect();
            Ok(Output::Json(to_value(&list)?))
        }
    }
}

fn elem(cmd: ElemCmd, stdin: &mut dyn Read) -> Out {
    let value = match cmd {
        ElemCmd::Compose(i) => {
            let docs = documents(&i, stdin, 2)?;
            let mut items = docs.into_iter().map(element);
            let first = items.next().ok_or_else(|| malformed("no inputs"))??;
            let product =
                items.try_fold(first, |acc, e| acc.compose(&e?).map_err(Failure::from))?;
            to_value(&product)?
        }
        ElemCmd::Invert(i) => to_value(&element(single(&i, stdin)?)?.invert())?,
        ElemCmd::Order(i) => match element(single(&i, stdin)?)?.order() {
            Order::Finite(k) => json!({ "order": k }),
            Order::Infinite => json!({ "order": "infinite" }),
        },
        ElemCmd::Phi(i) => json!({ "phi": element(single(&i, stdin)?)?.phi() }),
        ElemCmd::CycleType(i) => {
            json!({ "cycle_type": element(single(&i, stdin)?)?.cycle_type()? })
        }
    };
    Ok(Output::Json(value))
}

fn brown(cmd: BrownCmd, stdin: &mut dyn Read) -> Out {
    let value = match cmd {
        BrownCmd::Le(i) => {
            let (a, b) = pair(&i, stdin)?;
            let word = le(&vertex(a)?, &vertex(b)?);
            json!({ "le": word.is_some(), "word": word })
        }
        BrownCmd::Stab(i) => {
            let order = stabilizer_order(&vertex(single(&i, stdin)?)?)?;
            // orders can exceed u64; emit the exact integer as a JSON number
            let number: Value = serde_json::from_str(&order.to_string()).map_err(malformed)?;
            json!({ "stabilizer_order": number })
        }
        BrownCmd::FixedVertex(i) => to_value(&q_fixed_vertex(&subgroup(single(&i, stdin)?)?))?,
        BrownCmd::UpperBound(i) => {
            let docs = documents(&i, stdin, 3)?;
            let [m, n, q] = <[Value; 3]>::try_from(docs)
                .map_err(|d| malformed(format!("expected three inputs, got {}", d.len())))?;
            to_value(&upper_bound(&vertex(m)?, &vertex(n)?, &subgroup(q)?)?)?
        }
        BrownCmd::Cone { input, depth, dot } => {
            let c = cone(&vertex(single(&input, stdin)?)?, depth)?;
            if dot {
                return Ok(Output::Text(c.to_dot()));
            }
            let vertices: Vec<Value> = c
                .vertices
                .iter()
                .map(|(w, v)| json!({ "word": w, "vertex": v }))
                .collect();
            let edges: Vec<Value> = c
                .edges
                .iter()
                .map(|&(lo, hi, ray)| json!({ "lower": lo, "upper": hi, "ray": ray }))
                .collect();
            json!({ "vertices": vertices, "edges": edges })
        }
    };
    Ok(Output::Json(value))
}
