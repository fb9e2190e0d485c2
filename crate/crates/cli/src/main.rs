//! `hassett`: command-line access to weighted moduli combinatorics.
//!
//! Every subcommand prints one JSON document (default) or a text rendering
//! of the same data. Exit status: 0 on success, 1 when the input is fine but
//! the requested object does not exist, 2 on malformed input.

use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hassett::kapranov::{CremonaAnalysis, TowerEntry};
use hassett::moduli::complement;
use hassett::perm::admissible_transpositions;
use hassett::{
    admissible_group, aut_descriptor_coarse, aut_descriptor_stack, boundary_divisors,
    contracted_divisors, detect_losev_manin, feasible_cremona_degrees,
    forgetful_target, identify_step, is_admissible, kapranov_tower, parse_weight_data,
    reduction_exists, signature_preserving_group, Error, GroupDescriptor, TowerClass, WeightData,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "hassett", version, about = "Combinatorics of Hassett weighted moduli spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Input {
    /// Weight data: a file path, inline JSON, or `-` for stdin.
    #[arg(long = "in", value_name = "FILE|JSON|-")]
    input: String,
}

#[derive(Subcommand)]
enum Command {
    /// Check weight data and print it in normal form.
    Validate(Input),
    /// Whether the markings in a set may coincide.
    Coincide {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<usize>,
    },
    /// Subsets of at least `--min-size` markings that may coincide.
    Signature {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 3)]
        min_size: usize,
    },
    /// Admissibility of one transposition, or all of them.
    Admissible {
        #[command(flatten)]
        input: Input,
        #[arg(long, requires = "j")]
        i: Option<usize>,
        #[arg(long, requires = "i")]
        j: Option<usize>,
    },
    /// The group generated by admissible transpositions.
    Group(Input),
    /// Exhaustive search for signature-preserving permutations (n <= 8).
    Oracle {
        #[command(flatten)]
        input: Input,
        /// Also print every element.
        #[arg(long)]
        list: bool,
    },
    /// Target of the forgetful morphism.
    Forgetful {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',', conflicts_with = "keep", required_unless_present = "keep")]
        drop: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        keep: Vec<usize>,
    },
    /// Whether a reduction morphism to `--to` exists.
    Reduce {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "FILE|JSON|-")]
        to: String,
    },
    /// Boundary divisors contracted by the reduction to `--to`.
    Contracted {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "FILE|JSON|-")]
        to: String,
    },
    /// Boundary divisors.
    Boundary(Input),
    /// Automorphism group of the coarse space (g >= 1).
    Aut(Input),
    /// Automorphism group of the stack (g >= 1).
    AutStack(Input),
    /// The Kapranov blow-up tower, or one step of it.
    Kapranov {
        #[arg(long)]
        n: usize,
        #[arg(long, requires = "s")]
        r: Option<usize>,
        #[arg(long, requires = "r")]
        s: Option<usize>,
        /// List the whole schedule (the default without `--r`/`--s`).
        #[arg(long, conflicts_with_all = ["r", "s"])]
        list: bool,
    },
    /// Recognise A_{1,n-3}[n] up to reordering.
    LosevManin(Input),
    /// Degrees of Cremona maps compatible with the tower.
    Cremona {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
}

/// One result, rendered either way.
struct Output {
    json: Value,
    text: String,
}

fn output(json: Value, text: impl Into<String>) -> Output {
    Output { json, text: text.into() }
}

fn read_source(source: &str) -> Result<String, Error> {
    if source == "-" {
        let mut buf = String::new();
        io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Syntax(format!("stdin: {e}")))?;
        Ok(buf)
    } else if source.trim_start().starts_with('{') {
        Ok(source.to_string())
    } else {
        fs::read_to_string(source).map_err(|e| Error::Syntax(format!("{source}: {e}")))
    }
}

fn load(source: &str) -> Result<WeightData, Error> {
    parse_weight_data(&read_source(source)?)
}

fn sets_text(sets: &[Vec<usize>]) -> String {
    let body: Vec<String> = sets.iter().map(|s| set_text(s)).collect();
    format!("{{{}}}", body.join(", "))
}

fn set_text(s: &[usize]) -> String {
    let body: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", body.join(","))
}

fn descriptor_output(d: &GroupDescriptor) -> Output {
    let mut text = d.to_string();
    if let Some(order) = d.finite_order() {
        text.push_str(&format!("\nfinite order: {order}"));
    }
    if let Some(blocks) = &d.components {
        text.push_str(&format!("\nblocks: {}", sets_text(blocks)));
    }
    if d.outside_theorem {
        text.push_str("\nclassical answer outside the automorphism theorems");
    }
    output(json!(d.to_document()), text)
}

fn tower_entry_text(e: &TowerEntry) -> String {
    let weights: Vec<String> = e.weights.weights().iter().map(|w| w.to_string()).collect();
    let centers: Vec<String> = e
        .centers
        .iter()
        .map(|c| {
            let pts: Vec<String> = c.points.iter().map(|p| format!("p{p}")).collect();
            format!("<{}>", pts.join(","))
        })
        .collect();
    format!(
        "({}, {}) weights ({}) | {} centers: {} | rank {} | aut {}",
        e.step.r,
        e.step.s,
        weights.join(", "),
        e.centers.len(),
        if centers.is_empty() { "-".to_string() } else { centers.join(" ") },
        e.rank,
        e.aut
    )
}

fn cremona_output(a: &CremonaAnalysis) -> Output {
    let mut lines = vec![format!("n = {}, {}", a.n, a.class)];
    for c in &a.candidates {
        let status = if c.feasible() {
            "feasible".to_string()
        } else {
            let v: Vec<String> = c
                .violated
                .iter()
                .map(|x| serde_json::to_value(x).unwrap().as_str().unwrap().to_string())
                .collect();
            format!("violates {}", v.join(", "))
        };
        lines.push(format!("d = {}: {status}", c.degree));
    }
    let feasible: Vec<String> = a.feasible_degrees().iter().map(|d| d.to_string()).collect();
    lines.push(format!("feasible degrees: {{{}}}", feasible.join(", ")));
    let mut json = json!(a);
    json["feasible_degrees"] = json!(a.feasible_degrees());
    output(json, lines.join("\n"))
}

fn run(command: Command) -> Result<Output, Error> {
    Ok(match command {
        Command::Validate(input) => {
            let a = load(&input.input)?;
            output(json!(a.to_document()), a.to_string())
        }
        Command::Coincide { input, set } => {
            let a = load(&input.input)?;
            let ok = a.can_coincide(&set)?;
            let sum = a.subset_sum(&set)?;
            output(
                json!({"set": set, "sum": sum.to_string(), "coincide": ok}),
                format!("sum {sum}: {}", if ok { "may coincide" } else { "may not coincide" }),
            )
        }
        Command::Signature { input, min_size } => {
            let sig = load(&input.input)?.signature(min_size)?;
            let text = sets_text(&sig.subsets);
            output(json!(sig), text)
        }
        Command::Admissible { input, i: Some(i), j: Some(j) } => {
            let a = load(&input.input)?;
            let ok = is_admissible(&a, i, j)?;
            output(
                json!({"i": i, "j": j, "admissible": ok}),
                format!("({i} {j}) is {}admissible", if ok { "" } else { "not " }),
            )
        }
        Command::Admissible { input, .. } => {
            let a = load(&input.input)?;
            let pairs = admissible_transpositions(&a)?;
            let group = admissible_group(&a)?;
            let named: Vec<String> = pairs.iter().map(|(i, j)| format!("({i} {j})")).collect();
            output(
                json!({"transpositions": named, "partition": group.components()}),
                format!(
                    "transpositions: {}\npartition: {}",
                    if named.is_empty() { "none".to_string() } else { named.join(" ") },
                    sets_text(group.components())
                ),
            )
        }
        Command::Group(input) => {
            let group = admissible_group(&load(&input.input)?)?;
            let doc = group.to_document();
            let text = format!(
                "generators: {}\nblocks: {}\norder: {}",
                if doc.generators.is_empty() { "none".to_string() } else { doc.generators.join(" ") },
                sets_text(&doc.components),
                doc.order
            );
            output(json!(doc), text)
        }
        Command::Oracle { input, list } => {
            let a = load(&input.input)?;
            let oracle = signature_preserving_group(&a)?;
            let group = admissible_group(&a)?;
            let inside = group
                .enumerate_elements()?
                .iter()
                .all(|sigma| oracle.contains(sigma));
            let mut json = json!({
                "order": oracle.order().to_string(),
                "admissible_order": group.order().to_string(),
                "contains_admissible_group": inside,
            });
            let mut text = format!(
                "signature-preserving permutations: {}\nadmissible group order: {}\ncontains admissible group: {inside}",
                oracle.order(),
                group.order()
            );
            if list {
                let elements: Vec<String> = oracle.elements.iter().map(|p| p.to_string()).collect();
                text.push_str(&format!("\nelements: {}", elements.join(" ")));
                json["elements"] = json!(elements);
            }
            output(json, text)
        }
        Command::Forgetful { input, drop, keep } => {
            let a = load(&input.input)?;
            let keep = if keep.is_empty() { complement(a.len(), &drop)? } else { keep };
            let target = forgetful_target(&a, &keep)?;
            output(json!({"keep": keep, "target": target.to_document()}), target.to_string())
        }
        Command::Reduce { input, to } => {
            let a = load(&input.input)?;
            let b = load(&to)?;
            if !reduction_exists(&a, &b)? {
                return Err(Error::ReductionNotDefined);
            }
            output(json!({"exists": true, "target": b.to_document()}), format!("{a} -> {b}"))
        }
        Command::Contracted { input, to } => {
            let contracted = contracted_divisors(&load(&input.input)?, &load(&to)?)?;
            let text = sets_text(&contracted);
            output(json!(contracted), text)
        }
        Command::Boundary(input) => {
            let divs = boundary_divisors(&load(&input.input)?)?;
            let text: Vec<String> = divs.iter().map(|d| d.to_string()).collect();
            output(json!(divs), text.join("\n"))
        }
        Command::Aut(input) => descriptor_output(&aut_descriptor_coarse(&load(&input.input)?)?),
        Command::AutStack(input) => descriptor_output(&aut_descriptor_stack(&load(&input.input)?)?),
        Command::Kapranov { n, r, s, .. } => {
            let tower = kapranov_tower(n)?;
            let entries: Vec<&TowerEntry> = match (r, s) {
                (Some(r), Some(s)) => {
                    let step = hassett::kapranov::TowerStep::new(n, r, s)?;
                    tower.iter().filter(|e| e.step == step).collect()
                }
                _ => tower.iter().collect(),
            };
            let docs: Vec<_> = entries.iter().map(|e| e.to_document()).collect();
            let text: Vec<String> = entries.iter().map(|e| tower_entry_text(e)).collect();
            match (r, s) {
                (Some(_), Some(_)) => output(json!(docs[0]), text.join("\n")),
                _ => output(json!(docs), text.join("\n")),
            }
        }
        Command::LosevManin(input) => {
            let a = load(&input.input)?;
            let m = detect_losev_manin(&a);
            let step = identify_step(&a).map(|s| json!({"n": s.n, "r": s.r, "s": s.s}));
            let text = match m {
                Some(m) => format!("Losev-Manin space with {m} points"),
                None => "not a Losev-Manin weight vector".to_string(),
            };
            output(json!({"m": m, "step": step}), text)
        }
        Command::Cremona { n, r } => cremona_output(&feasible_cremona_degrees(n, TowerClass::from_r(r)?)?),
    })
}

fn usage_error(format: Format, err: clap::Error) -> ExitCode {
    match format {
        Format::Json => {
            let detail = err.render().to_string();
            eprintln!("{}", json!({"error": "usage", "detail": detail.trim_end()}));
        }
        Format::Text => {
            let _ = err.print();
        }
    }
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(err) if !err.use_stderr() => {
            let _ = err.print();
            return ExitCode::SUCCESS;
        }
        Err(err) => {
            let text = args.windows(2).any(|w| w[0] == "--format" && w[1] == "text")
                || args.iter().any(|a| a == "--format=text");
            return usage_error(if text { Format::Text } else { Format::Json }, err);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", out.json),
                Format::Text => println!("{}", out.text),
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            match cli.format {
                Format::Json => eprintln!("{}", json!({"error": err.code(), "detail": err.to_string()})),
                Format::Text => eprintln!("error ({}): {err}", err.code()),
            }
            ExitCode::from(if err.is_domain() { 1 } else { 2 })
        }
    }
}
