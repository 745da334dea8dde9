//! Command-line front end. Every subcommand builds a JSON value first; text
//! output is rendered from that value, never computed separately.
//!
//! Exit codes: 0 success, 1 failed `check`, 2 usage or parse error, 3 domain
//! error (unknown vertex, threshold exceeded, and so on).

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::constructions::{extended_graph, hedge_graph, quotient_graph, restriction_graph};
use crate::graph::{Graph, VertexSet};
use crate::hsat::{closure, enumerate_hsat};
use crate::laurent::{enumerate_laurent_primes, FieldSpec};
use crate::spectrum::{
    graph_report, is_prime_algebra, is_primitive_algebra, is_simple_algebra, recognize_algebra,
    spectrum, spectrum_entry, symbolic_entry, symbolic_spectrum, tail_report, Decision,
};
use crate::tails::enumerate_maximal_tails;
use crate::{Error, Result};

#[derive(Parser)]
#[command(
    name = "leavitt",
    about = "Structural classification of Leavitt path algebras of finite graphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckProperty {
    Prime,
    Primitive,
    Simple,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: decisions, maximal tails, spectrum, recognized class
    Analyze {
        file: String,
        /// Field for the spectrum: q or gf:P
        #[arg(long, default_value = "gf:2")]
        field: String,
        /// Degree bound for Laurent primes over a finite field
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Decide one property; exit 1 with a witness when it fails
    Check {
        #[arg(value_enum)]
        property: CheckProperty,
        file: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List the maximal tails with kinds and no-exit cycles
    Tails {
        file: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Hereditary saturated closure of a vertex set
    Closure {
        file: String,
        /// Comma-separated vertex names
        #[arg(long)]
        set: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Enumerate the hereditary saturated lattice
    Hsat {
        file: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Quotient graph E/H for hereditary H
    Quotient {
        file: String,
        #[arg(long)]
        set: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Restriction graph E_H for hereditary H
    Restrict {
        file: String,
        #[arg(long)]
        set: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Extended graph with ghost edges
    Extend {
        file: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Hedge graph _H E for hereditary saturated H, paths up to --bound
    Hedge {
        file: String,
        #[arg(long)]
        set: String,
        /// Maximum entering-path length to materialize
        #[arg(long)]
        bound: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Prime spectrum descriptors
    Spectrum {
        file: String,
        /// q or gf:P
        #[arg(long, default_value = "gf:2")]
        field: String,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List irreducible generators of Spec(K[x,x^-1])* up to a degree bound
    Primes {
        /// gf:P (the list is infinite over q)
        #[arg(long)]
        field: String,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// Parses `argv` and dispatches; returns the process exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own help/version output with exit code 0
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse { .. } => 2,
                _ => 3,
            }
        }
    }
}

fn load_graph(path: &str) -> Result<Graph> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        message: format!("cannot read {path}: {e}"),
    })?;
    Graph::parse(&text)
}

fn parse_set(g: &Graph, spec: &str) -> Result<VertexSet> {
    VertexSet::from_names(g, spec.split(',').map(str::trim).filter(|s| !s.is_empty()))
}

fn emit(value: &Value, format: Format, render: impl Fn(&Value) -> String) -> i32 {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).unwrap()),
        Format::Text => {
            let text = render(value);
            if !text.is_empty() {
                println!("{text}");
            }
        }
    }
    0
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Analyze {
            file,
            field,
            max_degree,
            format,
        } => {
            let g = load_graph(&file)?;
            let field = FieldSpec::parse(&field)?;
            let value = analyze_value(&g, &field, max_degree)?;
            Ok(emit(&value, format, render_analyze))
        }
        Command::Check {
            property,
            file,
            format,
        } => {
            let g = load_graph(&file)?;
            let (name, decision) = match property {
                CheckProperty::Prime => ("prime", is_prime_algebra(&g)),
                CheckProperty::Primitive => ("primitive", is_primitive_algebra(&g)),
                CheckProperty::Simple => ("simple", is_simple_algebra(&g)?),
            };
            let value = check_value(name, &decision);
            match format {
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&value).unwrap());
                }
                Format::Text => {
                    // on success text mode stays silent
                    if !decision.holds {
                        println!("{}", render_check(&value));
                    }
                }
            }
            Ok(if decision.holds { 0 } else { 1 })
        }
        Command::Tails { file, format } => {
            let g = load_graph(&file)?;
            let tails: Vec<Value> = enumerate_maximal_tails(&g)?
                .iter()
                .map(|t| serde_json::to_value(tail_report(&g, t)).unwrap())
                .collect();
            let value = json!({ "maximal_tails": tails });
            Ok(emit(&value, format, render_tails))
        }
        Command::Closure { file, set, format } => {
            let g = load_graph(&file)?;
            let x = parse_set(&g, &set)?;
            let value = json!({
                "input": x.names(&g),
                "closure": closure(&g, &x).names(&g),
            });
            Ok(emit(&value, format, |v| {
                render_set(&v["closure"])
            }))
        }
        Command::Hsat { file, format } => {
            let g = load_graph(&file)?;
            let sets: Vec<Value> = enumerate_hsat(&g)?
                .iter()
                .map(|h| json!(h.names(&g)))
                .collect();
            let value = json!({ "hereditary_saturated": sets });
            Ok(emit(&value, format, |v| {
                v["hereditary_saturated"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(render_set)
                    .collect::<Vec<_>>()
                    .join("\n")
            }))
        }
        Command::Quotient { file, set, format } => {
            let g = load_graph(&file)?;
            let h = parse_set(&g, &set)?;
            let derived = quotient_graph(&g, &h)?;
            Ok(emit(&derived_value(&derived), format, render_derived))
        }
        Command::Restrict { file, set, format } => {
            let g = load_graph(&file)?;
            let h = parse_set(&g, &set)?;
            let derived = restriction_graph(&g, &h)?;
            Ok(emit(&derived_value(&derived), format, render_derived))
        }
        Command::Extend { file, format } => {
            let g = load_graph(&file)?;
            let derived = extended_graph(&g)?;
            Ok(emit(&derived_value(&derived), format, render_derived))
        }
        Command::Hedge {
            file,
            set,
            bound,
            format,
        } => {
            let g = load_graph(&file)?;
            let h = parse_set(&g, &set)?;
            let hedge = hedge_graph(&g, &h, bound)?;
            let mut value = derived_value(&hedge.derived);
            value["finite"] = json!(hedge.finite);
            Ok(emit(&value, format, render_derived))
        }
        Command::Spectrum {
            file,
            field,
            max_degree,
            format,
        } => {
            let g = load_graph(&file)?;
            let field = FieldSpec::parse(&field)?;
            let value = json!({ "spectrum": spectrum_values(&g, &field, max_degree)? });
            Ok(emit(&value, format, |v| render_spectrum(&v["spectrum"])))
        }
        Command::Primes {
            field,
            max_degree,
            format,
        } => {
            let field = FieldSpec::parse(&field)?;
            let primes: Vec<Value> = enumerate_laurent_primes(&field, max_degree)?
                .iter()
                .map(|p| json!(p.to_string()))
                .collect();
            let value = json!({ "primes": primes });
            Ok(emit(&value, format, |v| {
                v["primes"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|p| p.as_str().unwrap().to_owned())
                    .collect::<Vec<_>>()
                    .join("\n")
            }))
        }
    }
}

fn spectrum_values(g: &Graph, field: &FieldSpec, max_degree: usize) -> Result<Vec<Value>> {
    match field {
        FieldSpec::Rationals => {
            let sym = symbolic_spectrum(g)?;
            let mut out: Vec<Value> = sym
                .graded
                .iter()
                .map(|d| serde_json::to_value(spectrum_entry(g, d)).unwrap())
                .collect();
            for (tail, structure) in &sym.tau {
                out.push(serde_json::to_value(symbolic_entry(g, tail, structure)).unwrap());
            }
            Ok(out)
        }
        FieldSpec::PrimeField(_) => Ok(spectrum(g, field, max_degree)?
            .iter()
            .map(|d| serde_json::to_value(spectrum_entry(g, d)).unwrap())
            .collect()),
    }
}

fn analyze_value(g: &Graph, field: &FieldSpec, max_degree: usize) -> Result<Value> {
    let tails: Vec<Value> = enumerate_maximal_tails(g)?
        .iter()
        .map(|t| serde_json::to_value(tail_report(g, t)).unwrap())
        .collect();
    Ok(json!({
        "graph": serde_json::to_value(graph_report(g)).unwrap(),
        "prime": is_prime_algebra(g).holds,
        "primitive": is_primitive_algebra(g).holds,
        "simple": is_simple_algebra(g)?.holds,
        "maximal_tails": tails,
        "spectrum": spectrum_values(g, field, max_degree)?,
        "recognized": serde_json::to_value(recognize_algebra(g)).unwrap(),
    }))
}

fn check_value(name: &str, decision: &Decision) -> Value {
    json!({
        "property": name,
        "holds": decision.holds,
        "witness": decision
            .witness
            .as_ref()
            .map(|w| serde_json::to_value(w).unwrap()),
        "witness_text": decision.witness.as_ref().map(|w| w.describe()),
    })
}

// --- text renderers (all read the JSON value, not the library types) --------

fn render_set(names: &Value) -> String {
    let names: Vec<&str> = names
        .as_array()
        .unwrap()
        .iter()
        .map(|n| n.as_str().unwrap())
        .collect();
    format!("{{{}}}", names.join(","))
}

fn render_check(v: &Value) -> String {
    let property = v["property"].as_str().unwrap();
    if v["holds"].as_bool().unwrap() {
        format!("{property}: true")
    } else {
        match v["witness_text"].as_str() {
            Some(w) => format!("{property}: false, witness {w}"),
            None => format!("{property}: false"),
        }
    }
}

fn render_tail(t: &Value) -> String {
    let mut line = format!(
        "{} {}",
        render_set(&t["members"]),
        t["kind"].as_str().unwrap()
    );
    if let Some(cycle) = t["no_exit_cycle"].as_array() {
        let names: Vec<&str> = cycle.iter().map(|e| e.as_str().unwrap()).collect();
        line.push_str(&format!(" no-exit cycle ({})", names.join(" ")));
    }
    line
}

fn render_tails(v: &Value) -> String {
    v["maximal_tails"]
        .as_array()
        .unwrap()
        .iter()
        .map(render_tail)
        .collect::<Vec<_>>()
        .join("\n")
}

fn render_spectrum_entry(e: &Value) -> String {
    match e["type"].as_str().unwrap() {
        "graded" => format!(
            "graded H={} tail={}",
            render_set(&e["H"]),
            render_set(&e["tail"])
        ),
        "nongraded" => format!(
            "nongraded tail={} polynomial={} matrix_size={}",
            render_set(&e["tail"]),
            e["polynomial"].as_str().unwrap(),
            render_matrix_size(&e["matrix_size"])
        ),
        _ => format!(
            "nongraded tail={} polynomials={} matrix_size={}",
            render_set(&e["tail"]),
            e["polynomial_family"].as_str().unwrap(),
            render_matrix_size(&e["matrix_size"])
        ),
    }
}

fn render_matrix_size(v: &Value) -> String {
    match v.as_u64() {
        Some(n) => n.to_string(),
        None => v.as_str().unwrap().to_owned(),
    }
}

fn render_spectrum(entries: &Value) -> String {
    entries
        .as_array()
        .unwrap()
        .iter()
        .map(render_spectrum_entry)
        .collect::<Vec<_>>()
        .join("\n")
}

fn render_recognized(v: &Value) -> String {
    let tag = v["tag"].as_str().unwrap();
    match v["n"].as_u64() {
        Some(n) => format!("{tag}(n={n})"),
        None => tag.to_owned(),
    }
}

fn render_derived(v: &Value) -> String {
    v["text"].as_str().unwrap().trim_end().to_owned()
}

fn derived_value(d: &crate::constructions::DerivedGraph) -> Value {
    json!({
        "provenance": d.provenance.describe(),
        "graph": serde_json::to_value(graph_report(&d.graph)).unwrap(),
        "name_map": d.name_map,
        "text": d.serialize(),
    })
}

fn render_analyze(v: &Value) -> String {
    let mut lines = Vec::new();
    let g = &v["graph"];
    lines.push(format!(
        "graph: {} vertices, {} edges",
        g["vertices"].as_array().unwrap().len(),
        g["edges"].as_array().unwrap().len()
    ));
    for name in ["prime", "primitive", "simple"] {
        lines.push(format!("{name}: {}", v[name].as_bool().unwrap()));
    }
    lines.push("maximal tails:".to_owned());
    for t in v["maximal_tails"].as_array().unwrap() {
        lines.push(format!("  {}", render_tail(t)));
    }
    lines.push("spectrum:".to_owned());
    for e in v["spectrum"].as_array().unwrap() {
        lines.push(format!("  {}", render_spectrum_entry(e)));
    }
    lines.push(format!("recognized: {}", render_recognized(&v["recognized"])));
    lines.join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::fixtures::*;

    #[test]
    fn analyze_report_schema() {
        let t = toeplitz();
        let v = analyze_value(&t, &FieldSpec::PrimeField(2), 2).unwrap();
        assert_eq!(v["prime"], json!(true));
        assert_eq!(v["primitive"], json!(true));
        assert_eq!(v["simple"], json!(false));
        assert_eq!(v["maximal_tails"].as_array().unwrap().len(), 2);
        assert_eq!(v["spectrum"].as_array().unwrap().len(), 4);
        assert_eq!(v["recognized"]["tag"], json!("ToeplitzPattern"));
        let entry = &v["spectrum"][0];
        assert_eq!(entry["type"], json!("graded"));
        assert!(entry["H"].as_array().unwrap().is_empty());
    }

    #[test]
    fn symbolic_spectrum_over_q() {
        let l = loop_graph();
        let vs = spectrum_values(&l, &FieldSpec::Rationals, 0).unwrap();
        assert_eq!(vs.len(), 2);
        assert_eq!(vs[1]["type"], json!("nongraded_symbolic"));
        assert!(vs[1]["polynomial_family"]
            .as_str()
            .unwrap()
            .contains("infinite"));
    }

    #[test]
    fn check_value_shapes() {
        let d = is_primitive_algebra(&loop_graph());
        let v = check_value("primitive", &d);
        assert_eq!(v["holds"], json!(false));
        assert_eq!(v["witness"]["kind"], json!("exitless_cycle"));
        assert_eq!(
            render_check(&v),
            "primitive: false, witness exitless cycle (e)"
        );
    }

    #[test]
    fn render_analyze_is_derived_from_json() {
        let v = analyze_value(&rose2(), &FieldSpec::PrimeField(2), 1).unwrap();
        let text = render_analyze(&v);
        assert!(text.contains("simple: true"));
        assert!(text.contains("recognized: LeavittAlgebra(n=2)"));
    }
}
