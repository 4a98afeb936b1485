mod input;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use nodequery::bounds::{certify, certify_all, verify_bound, BoundRecord, Verdict};
use nodequery::constructions::{build_star_local_con, build_upper_bound_graph, validate_construction};
use nodequery::graph::{is_vertex_transitive, parse_graph6_lines, write_graph6, MAX_ENUMERATION_N};
use nodequery::sweep::{build_report, min_cost, GraphSource, SweepConfig, REPORT_SCHEMA_VERSION};
use nodequery::{evaluate, exact_cost, Graph, PropertySpec};

#[derive(Parser)]
#[command(name = "nodequery", version, about = "Exact node-query complexity of graph properties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact decision-tree depth of a property on a graph, with an optimal strategy.
    Cost {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        property: String,
        /// Where to write the strategy tree as JSON.
        #[arg(long, default_value = "strategy.json")]
        out: PathBuf,
    },
    /// Evaluate a property on an induced subgraph.
    Eval {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        property: String,
        /// Vertex subset as a bitmask (decimal, 0x.., 0b..); defaults to all vertices.
        #[arg(long)]
        subset: Option<String>,
    },
    /// Lower-bound certificates, each checked against the exact solver.
    Bound {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        property: String,
        /// A certifier name, or `all` for every applicable one.
        #[arg(long, default_value = "all")]
        certifier: String,
        /// Write the certificates and verdicts as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Find a sunflower in a family of equal-size sets.
    Sunflower {
        /// `0,1;0,2;0,3` or `@file` with one set per line.
        #[arg(long)]
        family: String,
        /// Required petal count; without it the largest sunflower is reported.
        #[arg(long)]
        p: Option<usize>,
    },
    /// Build the clique-and-petals instance, or the s-t star, and validate it.
    Construct {
        #[arg(long)]
        property: String,
        #[arg(long)]
        n: usize,
        /// Build the star K_{1,n-1} for st-connected(s,t) instead.
        #[arg(long)]
        star: bool,
        /// Path stem for `<stem>.g6` and the `<stem>.json` manifest.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Is the graph vertex-transitive?
    Transitive {
        #[arg(long)]
        graph: String,
    },
    /// Minimum exact cost over the relevant graphs on n vertices.
    Mincost {
        #[arg(long)]
        property: String,
        #[arg(long)]
        n: usize,
        /// graph6 file, one graph per line; resolved against $NODEQUERY_CORPUS_DIR when not found.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long)]
        transitive_only: bool,
        /// Also run the certifiers on the arg-min graph.
        #[arg(long)]
        bounds: bool,
        #[arg(long)]
        jobs: Option<usize>,
        /// Write the result as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Transitive vs unrestricted minimum cost for each property and n.
    Report {
        /// Repeat for several properties.
        #[arg(long)]
        property: Vec<String>,
        /// Largest vertex count.
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        n_min: usize,
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn usage_error(msg: &str) -> ! {
    Cli::command().error(ErrorKind::MissingRequiredArgument, msg).exit()
}

fn write_file(path: &Path, body: &str) -> Result<()> {
    std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Cost { graph, property, out } => {
            let g = input::graph(&graph)?;
            let p = input::property(&property)?;
            let cert = exact_cost(&p, &g)?;
            write_file(&out, &(cert.strategy.to_json()? + "\n"))?;
            println!("cost: {}", cert.cost);
            println!("strategy: {}", out.display());
        }
        Command::Eval { graph, property, subset } => {
            let g = input::graph(&graph)?;
            let p = input::property(&property)?;
            let s = match subset {
                Some(text) => input::subset(&text, g.n())?,
                None => g.vertices(),
            };
            let value = evaluate(&p, &g.induced_subgraph(s)?)?;
            println!("{}", u8::from(value));
        }
        Command::Bound { graph, property, certifier, out } => {
            let g = input::graph(&graph)?;
            let p = input::property(&property)?;
            let outcomes = if certifier == "all" {
                certify_all(&p, &g)
                    .into_iter()
                    .map(|(name, b)| (name.to_string(), b))
                    .collect()
            } else {
                vec![(certifier.clone(), certify(&certifier, &p, &g))]
            };
            let mut records = Vec::new();
            for (name, outcome) in &outcomes {
                let verification = match outcome {
                    Ok(b) => Some(verify_bound(b, &p, &g)?),
                    Err(_) => None,
                };
                records.push(BoundRecord::from_outcome(name, &p, outcome, verification));
            }
            for r in &records {
                match (&r.value, &r.verification, &r.error) {
                    (Some(v), Some(ver), _) => {
                        let verdict = match ver.verdict {
                            Verdict::Pass => "verified",
                            Verdict::Fail => "FAILED",
                            Verdict::Unverifiable => "unverifiable",
                        };
                        println!("{}: {v} {verdict} ({})", r.certifier, r.summary);
                    }
                    (_, _, Some(err)) => println!("{}: n/a ({err})", r.certifier),
                    _ => println!("{}: n/a", r.certifier),
                }
            }
            if let Some(out) = out {
                write_file(&out, &(serde_json::to_string_pretty(&records)? + "\n"))?;
            }
            if certifier != "all" {
                if let Err(e) = &outcomes[0].1 {
                    bail!("{e}");
                }
            }
            if records
                .iter()
                .any(|r| r.verification.as_ref().is_some_and(|v| v.verdict == Verdict::Fail))
            {
                bail!("a certificate failed verification");
            }
        }
        Command::Sunflower { family, p } => {
            let sets = input::family(&family)?;
            let found = match p {
                Some(p) => nodequery::bounds::find_sunflower(&sets, p)?,
                None => nodequery::bounds::max_sunflower(&sets)?,
            };
            match found {
                Some(s) => {
                    println!("core: {}", s.core);
                    for petal in &s.petals {
                        println!("petal: {petal}");
                    }
                }
                None => {
                    println!("no sunflower");
                    if p.is_some() {
                        bail!("no sunflower with the requested petal count");
                    }
                }
            }
        }
        Command::Construct { property, n, star, out } => {
            if star {
                let p = input::property(&property)?;
                let (s, t) = match p.builtin_id() {
                    Some(nodequery::property::Builtin::StConnected(s, t)) => (s, t),
                    _ => bail!("--star needs an st-connected(s,t) property"),
                };
                let inst = build_star_local_con(n, s, t)?;
                let cost = exact_cost(&inst.property, &inst.graph)?.cost;
                println!("graph: {}", write_graph6(&inst.graph));
                println!("cost: {cost}");
                if let Some(out) = out {
                    write_file(&out.with_extension("g6"), &(write_graph6(&inst.graph) + "\n"))?;
                }
                return Ok(());
            }
            let p = input::property(&property)?;
            let inst = build_upper_bound_graph(&p, n)?;
            let report = validate_construction(&inst)?;
            println!("graph: {}", write_graph6(&inst.graph));
            println!("k: {}  d_P: {}  c_P: {}", inst.k, inst.d_p, inst.c_p);
            println!("budget: {}  query bound: {}", inst.budget(), inst.query_bound());
            println!("max queries over {} truths: {}", report.truths_checked, report.max_queries);
            match report.exact_cost {
                Some(c) => println!("exact cost: {c}"),
                None => println!("exact cost: above the solver cap"),
            }
            if let Some(out) = &out {
                inst.save(out)?;
                println!("wrote {} and {}", out.with_extension("g6").display(), out.with_extension("json").display());
            }
            report.into_result()?;
            println!("validation: passed");
        }
        Command::Transitive { graph } => {
            let g = input::graph(&graph)?;
            println!("{}", if is_vertex_transitive(&g)? { "vertex-transitive" } else { "not vertex-transitive" });
        }
        Command::Mincost { property, n, corpus, transitive_only, bounds, jobs, out } => {
            let p = input::property(&property)?;
            let cfg = SweepConfig {
                n,
                source: source(corpus.as_deref(), n)?,
                transitive_only,
                jobs,
                with_bounds: bounds,
            };
            let r = min_cost(&p, &cfg)?;
            println!("property: {}", r.property);
            println!("n: {}{}", r.n, if r.transitive_only { " (vertex-transitive only)" } else { "" });
            println!("graphs: {} considered, {} qualifying", r.graphs_considered, r.relevant_graphs);
            match (&r.min_cost, &r.argmin) {
                (Some(c), Some(g)) => {
                    println!("min-cost: {c} ({} minimizers)", r.minimizers);
                    println!("arg-min: {g}");
                }
                _ => println!("min-cost: none (no qualifying graph)"),
            }
            for b in &r.bounds {
                if let Some(v) = b.value {
                    let verdict = b.verification.as_ref().map_or(Verdict::Unverifiable, |v| v.verdict);
                    println!("bound {}: {v} {verdict:?}", b.certifier);
                }
            }
            if let Some(out) = out {
                let mut json = serde_json::to_value(&r)?;
                json["schema_version"] = REPORT_SCHEMA_VERSION.into();
                write_file(&out, &(serde_json::to_string_pretty(&json)? + "\n"))?;
            }
        }
        Command::Report { property, n, n_min, corpus, jobs, format, out } => {
            if property.is_empty() {
                usage_error("report needs at least one --property");
            }
            let props = property
                .iter()
                .map(|s| input::property(s))
                .collect::<Result<Vec<PropertySpec>>>()?;
            let source = match corpus {
                Some(path) => corpus_source(&path)?,
                None => {
                    if n > MAX_ENUMERATION_N {
                        bail!("n = {n} exceeds the enumeration cap {MAX_ENUMERATION_N}; pass --corpus");
                    }
                    GraphSource::All
                }
            };
            let report = build_report(&props, n_min..=n, &source, jobs)?;
            let body = match format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json()?,
            };
            match out {
                Some(path) => write_file(&path, &body)?,
                None => print!("{body}"),
            }
        }
    }
    Ok(())
}

fn corpus_source(path: &Path) -> Result<GraphSource> {
    let path = input::corpus_path(path);
    let text = std::fs::read_to_string(&path).with_context(|| format!("reading corpus {}", path.display()))?;
    let graphs: Vec<Graph> = parse_graph6_lines(&text)?;
    Ok(GraphSource::Graphs(graphs))
}

fn source(corpus: Option<&Path>, n: usize) -> Result<GraphSource> {
    if let Some(path) = corpus {
        return corpus_source(path);
    }
    if n <= MAX_ENUMERATION_N {
        return Ok(GraphSource::All);
    }
    match input::default_corpus(n) {
        Some(path) => corpus_source(&path),
        None => bail!(
            "n = {n} exceeds the enumeration cap {MAX_ENUMERATION_N}; pass --corpus or set {}",
            input::CORPUS_DIR_ENV
        ),
    }
}
