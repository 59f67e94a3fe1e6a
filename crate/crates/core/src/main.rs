use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lyhall::hall::{Enumerator, Signature};
use lyhall::models::{self, ModelSource};
use lyhall::oracle::{FreenessReport, Oracle, OracleConfig};
use lyhall::rewrite::{Normalizer, Rule};
use lyhall::{syntax, Alphabet, Error, LinComb, Result};

/// Free Lie-Yamaguti algebras: basis enumeration, normal forms, and exact
/// certification.
///
/// Generators are ordered as given: in `--gens a,b,c` the order is a < b < c,
/// and every term order, basis and normal form depends on it. `--gens 3` is
/// shorthand for `a,b,c`.
#[derive(Parser)]
#[command(name = "lyhall", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Count or list basis elements by degree.
    Basis {
        #[arg(long)]
        gens: String,
        #[arg(long)]
        max_degree: usize,
        /// List the elements instead of counting them.
        #[arg(long)]
        list: bool,
    },
    /// Rewrite an expression to its normal form over the basis.
    Normalize {
        #[arg(long)]
        gens: String,
        /// Also check that the input minus its normal form lies in the ideal
        /// of relations.
        #[arg(long)]
        certify: bool,
        /// Report how often each rewrite rule fired.
        #[arg(long)]
        rules: bool,
        expression: String,
    },
    /// Brute-force quotient computations.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
    /// Lie-Yamaguti algebras induced from reductive splittings.
    Model {
        #[command(subcommand)]
        command: ModelCommand,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Compare the basis count of one degree with the quotient dimension.
    Verify {
        #[arg(long)]
        gens: String,
        #[arg(long)]
        degree: usize,
        /// Use the bracket-only signature and the Lie triple Hall set.
        #[arg(long)]
        lts: bool,
    },
}

#[derive(Subcommand)]
enum ModelCommand {
    /// Check Jacobi, the splitting, and the six defining identities.
    Check { file: PathBuf },
    /// Evaluate an expression with generators sent to basis vectors of m.
    Eval {
        file: PathBuf,
        /// Assignment such as `a=L1,b=L2`; also fixes the generator names.
        #[arg(long)]
        map: String,
        expression: String,
    },
}

/// Failure that has already been reported on stdout.
struct Reported(u8);

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceCap { .. } => 3,
        Error::FlattenCollision { .. } => 4,
        Error::DepthExceeded { .. } => 5,
        Error::ModelCheck(_) => 6,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Reported(code))) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

type Outcome = Result<std::result::Result<(), Reported>>;

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Basis {
            gens,
            max_degree,
            list,
        } => basis(cli.format, gens, *max_degree, *list),
        Command::Normalize {
            gens,
            certify,
            rules,
            expression,
        } => normalize(cli.format, gens, expression, *certify, *rules),
        Command::Oracle {
            command: OracleCommand::Verify { gens, degree, lts },
        } => verify(cli.format, gens, *degree, *lts),
        Command::Model {
            command: ModelCommand::Check { file },
        } => model_check(cli.format, file),
        Command::Model {
            command: ModelCommand::Eval {
                file,
                map,
                expression,
            },
        } => model_eval(cli.format, file, map, expression),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn print_json(value: Value) {
    println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
}

fn basis(format: Format, gens: &str, max_degree: usize, list: bool) -> Outcome {
    let alphabet = Alphabet::parse_spec(gens)?;
    if max_degree == 0 {
        return Err(Error::InvalidDegree(0));
    }
    let en = Enumerator::new(alphabet.len());
    let mut degrees = Vec::new();
    for n in 1..=max_degree {
        let set = en.basis(n)?;
        let elements: Vec<String> = set.iter().map(|t| syntax::print(t, &alphabet)).collect();
        degrees.push((n, elements));
    }
    match format {
        Format::Text => {
            for (n, elements) in &degrees {
                if list {
                    println!("degree {n}: {}", elements.join(", "));
                } else {
                    println!("degree {n}: {}", elements.len());
                }
            }
        }
        Format::Csv => {
            if list {
                println!("degree,element");
                for (n, elements) in &degrees {
                    for e in elements {
                        println!("{n},{}", csv_field(e));
                    }
                }
            } else {
                println!("degree,count");
                for (n, elements) in &degrees {
                    println!("{n},{}", elements.len());
                }
            }
        }
        Format::Json => {
            let rows: Vec<Value> = degrees
                .iter()
                .map(|(n, elements)| {
                    let mut row = json!({"degree": n, "count": elements.len()});
                    if list {
                        row["elements"] = json!(elements);
                    }
                    row
                })
                .collect();
            print_json(json!({"schema": 1, "generators": alphabet.names(), "degrees": rows}));
        }
    }
    Ok(Ok(()))
}

/// Checks that `input - output` lies in the ideal, degree by degree.
fn certify(alphabet: &Alphabet, input: &LinComb, output: &LinComb) -> Result<bool> {
    let difference = input - output;
    let mut by_degree: BTreeMap<usize, LinComb> = BTreeMap::new();
    for (t, c) in difference.iter() {
        by_degree
            .entry(t.size())
            .or_insert_with(LinComb::zero)
            .add_term(t.clone(), c.clone());
    }
    let oracle = Oracle::with_config(alphabet.len(), OracleConfig::from_env()?);
    for (n, part) in &by_degree {
        if !oracle.relation_span(*n)?.contains(part)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn normalize(format: Format, gens: &str, expression: &str, check: bool, rules: bool) -> Outcome {
    let alphabet = Alphabet::parse_spec(gens)?;
    let term = syntax::parse(expression, &alphabet)?;
    let input = LinComb::term(term);
    let nf = Normalizer::new().normalize(&input)?;
    let certified = if check {
        Some(certify(&alphabet, &input, &nf.value)?)
    } else {
        None
    };
    let entries: Vec<(String, String)> = nf
        .value
        .iter()
        .rev()
        .map(|(t, c)| (c.to_string(), syntax::print(t, &alphabet)))
        .collect();
    let verdict = |ok: bool| if ok { "in-span" } else { "NOT in span" };
    match format {
        Format::Text => {
            println!("{}", nf.value.display(&alphabet));
            if let Some(ok) = certified {
                println!("certified: {}", verdict(ok));
            }
            if rules {
                for rule in Rule::ALL {
                    println!("rule {}: {}", rule.name(), nf.certificate.get(rule));
                }
            }
        }
        Format::Csv => {
            println!("coefficient,term");
            for (c, t) in &entries {
                println!("{c},{}", csv_field(t));
            }
        }
        Format::Json => {
            let terms: Vec<Value> = entries
                .iter()
                .map(|(c, t)| json!({"coefficient": c, "term": t}))
                .collect();
            let mut out = json!({
                "schema": 1,
                "generators": alphabet.names(),
                "input": expression,
                "terms": terms,
            });
            if let Some(ok) = certified {
                out["certified"] = json!(ok);
            }
            if rules {
                let counts: BTreeMap<&str, u64> = Rule::ALL
                    .iter()
                    .map(|&r| (r.name(), nf.certificate.get(r)))
                    .collect();
                out["rules"] = json!(counts);
            }
            print_json(out);
        }
    }
    if certified == Some(false) {
        return Ok(Err(Reported(1)));
    }
    Ok(Ok(()))
}

fn verify(format: Format, gens: &str, degree: usize, lts: bool) -> Outcome {
    let alphabet = Alphabet::parse_spec(gens)?;
    let mut config = OracleConfig::from_env()?;
    if lts {
        config.signature = Signature::TernaryOnly;
    }
    let report: FreenessReport = Oracle::with_config(alphabet.len(), config).verify_basis_freeness(degree)?;
    match format {
        Format::Text => println!("{report}"),
        Format::Csv => {
            println!("{}", FreenessReport::CSV_HEADER);
            println!("{}", report.csv_row());
        }
        Format::Json => print_json(json!({
            "schema": 1,
            "gens": report.gens,
            "degree": report.degree,
            "signature": if lts { "ternary" } else { "full" },
            "expected": report.expected,
            "got": report.got,
            "independent": report.independent,
            "spanning": report.spanning,
            "pass": report.passed(),
        })),
    }
    Ok(if report.passed() { Ok(()) } else { Err(Reported(1)) })
}

fn model_check(format: Format, file: &PathBuf) -> Outcome {
    let source = ModelSource::load(file)?;
    let (algebra, split) = (&source.algebra, &source.split);
    let name = |i: usize| algebra.names()[i].clone();
    let jacobi = algebra.jacobi_witness().map(|(i, j, k)| vec![name(i), name(j), name(k)]);
    let reductive = if jacobi.is_none() {
        split.violation(algebra).map(|(i, j)| vec![name(i), name(j)])
    } else {
        None
    };
    let report = match (&jacobi, &reductive) {
        (None, None) => Some(models::check_axioms(&source.induce()?)?),
        _ => None,
    };
    let passed = report.as_ref().is_some_and(|r| r.passed());
    match format {
        Format::Text | Format::Csv => {
            let csv = format == Format::Csv;
            if csv {
                println!("check,result,witness");
            }
            let line = |check: &str, witness: &Option<Vec<String>>| match (csv, witness) {
                (false, None) => println!("{check}: pass"),
                (false, Some(w)) => println!("{check}: FAIL at ({})", w.join(", ")),
                (true, None) => println!("{check},pass,"),
                (true, Some(w)) => println!("{check},fail,{}", csv_field(&w.join(" "))),
            };
            line("jacobi", &jacobi);
            if jacobi.is_none() {
                line("reductive", &reductive);
            }
            if let Some(report) = &report {
                for check in &report.checks {
                    line(&format!("axiom {}", check.axiom.number()), &report.witness_names(check));
                }
            }
            if !csv {
                println!("result: {}", if passed { "pass" } else { "FAIL" });
            }
        }
        Format::Json => {
            let axioms: Vec<Value> = report
                .iter()
                .flat_map(|r| {
                    r.checks.iter().map(move |c| {
                        json!({"axiom": c.axiom.number(), "pass": c.witness.is_none(), "witness": r.witness_names(c)})
                    })
                })
                .collect();
            print_json(json!({
                "schema": 1,
                "jacobi": {"pass": jacobi.is_none(), "witness": jacobi},
                "reductive": {"pass": jacobi.is_none() && reductive.is_none(), "witness": reductive},
                "axioms": axioms,
                "pass": passed,
            }));
        }
    }
    Ok(if passed { Ok(()) } else { Err(Reported(6)) })
}

fn model_eval(format: Format, file: &PathBuf, map: &str, expression: &str) -> Outcome {
    let model = models::load_model(file)?;
    let mut names = Vec::new();
    let mut assignment = Vec::new();
    for item in map.split(',') {
        let (g, v) = item
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("--map entry {item:?} is not of the form gen=vector")))?;
        names.push(g.trim().to_string());
        assignment.push(model.parse_vector(v)?);
    }
    let alphabet = Alphabet::new(names)?;
    let term = syntax::parse(expression, &alphabet)?;
    let value = models::eval_term(&model, &term, &assignment)?;
    let text = model.format_vector(&value);
    match format {
        Format::Text => println!("{text}"),
        Format::Csv => {
            println!("basis,coefficient");
            for (n, c) in model.names().iter().zip(&value) {
                println!("{n},{c}");
            }
        }
        Format::Json => {
            let coords: Vec<String> = value.iter().map(|c| c.to_string()).collect();
            print_json(json!({
                "schema": 1,
                "value": text,
                "basis": model.names(),
                "coordinates": coords,
            }));
        }
    }
    Ok(Ok(()))
}
