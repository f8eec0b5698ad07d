//! Command dispatch for the `critgroup` binary.
//!
//! [`run`] parses arguments and returns a [`CommandResult`] instead of
//! printing, so every command is testable in-process. Every payload is built
//! once as JSON and rendered either as pretty JSON (`--json`) or as
//! `key: value` text. Big integers are always decimal strings.

use std::ffi::OsString;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::chip::{fire, reduce_on_cycle, reduce_to_pair, Configuration, MoveLog};
use crate::graph::{cycle_graph, polygon_stack, Multigraph, StackSpec};
use crate::group::{critical_group, critical_group_at};
use crate::sequences::{
    alternating_tables, constant_k_closed_form, constant_k_table, forest_count, house_closed_form,
    house_table, tree_count,
};
use crate::verify::{
    brute_spanning_trees_with_limit, lorenzini_check, lorenzini_path_check, question1_search,
    SearchParams, DEFAULT_EDGE_LIMIT,
};
use crate::Error;

/// Exit code and rendered output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    /// 0 on success, 1 on a domain error, 2 on a usage error.
    pub code: i32,
    pub output: String,
}

#[derive(Debug, Parser)]
#[command(
    name = "critgroup",
    version,
    about = "Critical groups of multigraphs and polygon stacks"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Suppress output on success.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GraphSource {
    /// Graph file in the `n`/`e` text format, or `-` for standard input.
    graph: Option<PathBuf>,
    /// Use the polygon stack with these sizes instead, e.g. `3,4,4`.
    #[arg(long, conflicts_with = "graph")]
    stack: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Invariant factors, order and cyclicity of the critical group.
    Group {
        #[command(flatten)]
        source: GraphSource,
        /// Vertex whose row and column are deleted (default: last vertex).
        #[arg(long)]
        deleted_vertex: Option<usize>,
    },
    /// Spanning tree count from the reduced Laplacian.
    Trees {
        #[command(flatten)]
        source: GraphSource,
        /// Cross-check by enumerating edge subsets.
        #[arg(long)]
        brute: bool,
        #[arg(long, default_value_t = DEFAULT_EDGE_LIMIT)]
        limit: usize,
    },
    /// Order of delta(x, y) for every vertex pair.
    Pairs {
        #[command(flatten)]
        source: GraphSource,
        /// Stop after the first generating pair.
        #[arg(long)]
        first: bool,
    },
    /// Order of a degree-zero configuration in the critical group.
    Order {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, allow_hyphen_values = true)]
        config: String,
    },
    /// Fire (or, with negative times, borrow at) a vertex.
    Fire {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, allow_hyphen_values = true)]
        config: String,
        #[arg(long)]
        vertex: usize,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        times: BigInt,
    },
    /// Push a degree-zero configuration onto one consecutive pair.
    Reduce {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, allow_hyphen_values = true)]
        config: String,
        /// Position of the target pair on the top path of a stack.
        #[arg(long, default_value_t = 0)]
        pair: usize,
        /// Include the move log.
        #[arg(long)]
        log: bool,
    },
    /// Whether two configurations are equivalent (pass `--config` twice).
    Equiv {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long = "config", allow_hyphen_values = true, required = true)]
        configs: Vec<String>,
    },
    /// Spanning tree sequences of polygon stacks.
    Seq {
        #[command(flatten)]
        family: SeqFamily,
        /// Largest index to tabulate.
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Also evaluate the closed form exactly.
        #[arg(long)]
        closed_form: bool,
    },
    /// Coprimality check for an adjacent pair, optionally after adding a path.
    Lorenzini {
        #[command(flatten)]
        source: GraphSource,
        /// Adjacent pair as `x,y`.
        #[arg(long)]
        pair: String,
        /// Attach a chain with this many edges across the pair.
        #[arg(long)]
        path: Option<usize>,
    },
    /// Seeded search for pairs with coprime orders that fail to generate.
    Search {
        /// Largest vertex count sampled or scanned.
        #[arg(long, default_value_t = 6)]
        max_vertices: usize,
        /// Parallel edges added on top of each sampled graph, at most.
        #[arg(long, default_value_t = 2)]
        max_extra_edges: usize,
        /// Number of random multigraphs.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also scan every connected simple graph up to the vertex bound.
        #[arg(long)]
        exhaustive: bool,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct SeqFamily {
    /// Tree and forest count of one stack, e.g. `3,4,4`.
    #[arg(long)]
    tuple: Option<String>,
    /// Stacks of equal k-gons.
    #[arg(long = "const")]
    constant: Option<u64>,
    /// The n-story house (3,4,...,4).
    #[arg(long)]
    house: bool,
    /// Alternating k1,k2 stacks.
    #[arg(long)]
    alt: Option<String>,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome = std::result::Result<Value, Failure>;

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return CommandResult {
                code,
                output: e.to_string(),
            };
        }
    };
    match dispatch(&cli.command, stdin) {
        Ok(value) => {
            let output = if cli.quiet {
                String::new()
            } else if cli.json {
                serde_json::to_string_pretty(&value).expect("serializable") + "\n"
            } else {
                render_text(&value)
            };
            CommandResult { code: 0, output }
        }
        Err(Failure::Usage(msg)) => CommandResult {
            code: 2,
            output: format!("usage error: {msg}\n"),
        },
        Err(Failure::Domain(msg)) => CommandResult {
            code: 1,
            output: format!("error: {msg}\n"),
        },
    }
}

/// Renders a payload as `key: value` lines. Arrays of scalars are joined
/// with commas; objects and arrays of objects become indented `k=v` lines.
pub fn render_text(value: &Value) -> String {
    let mut out = String::new();
    let Value::Object(map) = value else {
        out.push_str(&scalar(value));
        out.push('\n');
        return out;
    };
    for (key, v) in map {
        match v {
            Value::Array(items) if items.iter().any(Value::is_object) => {
                out.push_str(&format!("{key}:\n"));
                for item in items {
                    out.push_str(&format!("  {}\n", inline(item)));
                }
            }
            Value::Object(_) => out.push_str(&format!("{key}:\n  {}\n", inline(v))),
            _ => out.push_str(&format!("{key}: {}\n", scalar(v))),
        }
    }
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "n/a".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(","),
        Value::Object(_) => inline(v),
        other => other.to_string(),
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::Object(map) => map
            .iter()
            .map(|(k, x)| format!("{k}={}", scalar(x)))
            .collect::<Vec<_>>()
            .join(" "),
        other => scalar(other),
    }
}

fn load_graph(
    source: &GraphSource,
    stdin: &mut dyn Read,
) -> std::result::Result<Multigraph, Failure> {
    load_source(source, stdin).map(|(g, _)| g)
}

fn load_source(
    source: &GraphSource,
    stdin: &mut dyn Read,
) -> std::result::Result<(Multigraph, Option<StackSpec>), Failure> {
    if let Some(spec) = &source.stack {
        let spec: StackSpec = spec.parse()?;
        return Ok((polygon_stack(&spec)?.graph, Some(spec)));
    }
    let text = match source.graph.as_deref() {
        None => return Err(Failure::Usage("give a graph file, `-`, or --stack".into())),
        Some(p) if p.as_os_str() == "-" => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| Failure::Domain(format!("reading standard input: {e}")))?;
            s
        }
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| Failure::Domain(format!("reading {}: {e}", p.display())))?,
    };
    Ok((text.parse()?, None))
}

fn parse_config(s: &str) -> std::result::Result<Configuration, Failure> {
    Ok(s.parse::<Configuration>()?)
}

fn parse_pair(s: &str) -> std::result::Result<(usize, usize), Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => match (a.parse(), b.parse()) {
            (Ok(x), Ok(y)) => Ok((x, y)),
            _ => Err(Failure::Usage(format!("bad pair `{s}`"))),
        },
        _ => Err(Failure::Usage(format!("expected `x,y`, got `{s}`"))),
    }
}

fn strings(xs: &[BigInt]) -> Vec<String> {
    xs.iter().map(BigInt::to_string).collect()
}

fn log_json(log: &MoveLog) -> Value {
    Value::Array(
        log.moves()
            .iter()
            .map(|(v, t)| json!({ "vertex": v, "times": t.to_string() }))
            .collect(),
    )
}

fn dispatch(command: &Command, stdin: &mut dyn Read) -> Outcome {
    match command {
        Command::Group {
            source,
            deleted_vertex,
        } => {
            let g = load_graph(source, stdin)?;
            let kg = match deleted_vertex {
                Some(q) => critical_group_at(&g, *q)?,
                None => critical_group(&g)?,
            };
            Ok(json!({
                "n": g.vertex_count(),
                "edges": g.edge_count(),
                "invariant_factors": strings(&kg.invariant_factors),
                "order": kg.order.to_string(),
                "cyclic": kg.is_cyclic(),
                "deleted_vertex": kg.deleted_vertex,
            }))
        }
        Command::Trees {
            source,
            brute,
            limit,
        } => {
            let g = load_graph(source, stdin)?;
            let count = critical_group(&g)?.order;
            let mut out = Map::new();
            out.insert("trees".into(), count.to_string().into());
            if *brute {
                let enumerated = brute_spanning_trees_with_limit(&g, *limit)?;
                if enumerated != count {
                    return Err(Failure::Domain(format!(
                        "determinant gives {count} but enumeration gives {enumerated}"
                    )));
                }
                out.insert("brute".into(), enumerated.to_string().into());
            }
            Ok(Value::Object(out))
        }
        Command::Pairs { source, first } => {
            let g = load_graph(source, stdin)?;
            let kg = critical_group(&g)?;
            let mut pairs = Vec::new();
            let mut generating = 0usize;
            'outer: for x in 0..g.vertex_count() {
                for y in x + 1..g.vertex_count() {
                    let r = kg.pair_report(x, y)?;
                    pairs.push(json!({
                        "x": r.x,
                        "y": r.y,
                        "element_order": r.element_order.to_string(),
                        "generates": r.generates,
                    }));
                    if r.generates {
                        generating += 1;
                        if *first {
                            break 'outer;
                        }
                    }
                }
            }
            Ok(json!({
                "order": kg.order.to_string(),
                "cyclic": kg.is_cyclic(),
                "generating_pairs": generating,
                "pairs": pairs,
            }))
        }
        Command::Order { source, config } => {
            let g = load_graph(source, stdin)?;
            let c = parse_config(config)?;
            let kg = critical_group(&g)?;
            Ok(json!({
                "element_order": kg.configuration_order(&c)?.to_string(),
                "group_order": kg.order.to_string(),
            }))
        }
        Command::Fire {
            source,
            config,
            vertex,
            times,
        } => {
            let g = load_graph(source, stdin)?;
            let c = fire(&g, &parse_config(config)?, *vertex, times.clone())?;
            Ok(json!({ "config": c.to_string(), "degree": c.degree().to_string() }))
        }
        Command::Reduce {
            source,
            config,
            pair,
            log,
        } => {
            let (g, spec) = load_source(source, stdin)?;
            let c = parse_config(config)?;
            let mut out = Map::new();
            let moves = match spec {
                Some(spec) => {
                    let sg = polygon_stack(&spec)?;
                    let r = reduce_to_pair(&sg, &c, *pair)?;
                    out.insert("config".into(), r.config.to_string().into());
                    out.insert("pair".into(), json!([r.pair.0, r.pair.1]));
                    r.log
                }
                None => {
                    let n = g.vertex_count();
                    if n < 3 || g != cycle_graph(n)? {
                        return Err(Failure::Domain(
                            "reduce on a graph file needs the labelled cycle; use --stack for polygon stacks"
                                .into(),
                        ));
                    }
                    let r = reduce_on_cycle(&g, &c)?;
                    out.insert("config".into(), r.config.to_string().into());
                    out.insert("pair".into(), json!([n - 2, n - 1]));
                    out.insert("multiple".into(), r.multiple.to_string().into());
                    r.log
                }
            };
            if *log {
                out.insert("log".into(), log_json(&moves));
            }
            Ok(Value::Object(out))
        }
        Command::Equiv { source, configs } => {
            let [a, b] = configs.as_slice() else {
                return Err(Failure::Usage(
                    "equiv takes exactly two --config values".into(),
                ));
            };
            let g = load_graph(source, stdin)?;
            let kg = critical_group(&g)?;
            let equivalent = kg.are_equivalent(&parse_config(a)?, &parse_config(b)?)?;
            Ok(json!({ "equivalent": equivalent }))
        }
        Command::Seq {
            family,
            n,
            closed_form,
        } => seq(family, *n, *closed_form),
        Command::Lorenzini { source, pair, path } => {
            let g = load_graph(source, stdin)?;
            let (x, y) = parse_pair(pair)?;
            Ok(match path {
                Some(len) => lorenzini_path_check(&g, x, y, *len)?.to_json(),
                None => lorenzini_check(&g, x, y)?.to_json(),
            })
        }
        Command::Search {
            max_vertices,
            max_extra_edges,
            trials,
            seed,
            exhaustive,
        } => {
            let params = SearchParams {
                max_vertices: *max_vertices,
                max_extra_edges: *max_extra_edges,
                trials: *trials,
                seed: *seed,
                exhaustive: *exhaustive,
                ..SearchParams::default()
            };
            Ok(question1_search(&params)?.to_json())
        }
    }
}

fn seq(family: &SeqFamily, n: usize, closed_form: bool) -> Outcome {
    if let Some(tuple) = &family.tuple {
        let spec: StackSpec = tuple.parse()?;
        let mut out = Map::new();
        out.insert("spec".into(), spec.to_string().into());
        out.insert("tree_count".into(), tree_count(&spec).to_string().into());
        if !spec.is_empty() {
            out.insert(
                "forest_count".into(),
                forest_count(&spec)?.to_string().into(),
            );
        }
        return Ok(Value::Object(out));
    }
    if let Some(k) = family.constant {
        let table = constant_k_table(k, n)?;
        let mut out = Map::new();
        out.insert("k".into(), k.into());
        out.insert("T".into(), strings(&table.values).into());
        if closed_form {
            let closed = (0..=n as u32)
                .map(|i| constant_k_closed_form(k, i))
                .collect::<crate::Result<Vec<_>>>()?;
            out.insert("closed_form".into(), strings(&closed).into());
        }
        return Ok(Value::Object(out));
    }
    if family.house {
        let table = house_table(n);
        let mut out = Map::new();
        out.insert("T".into(), strings(&table.values).into());
        if closed_form {
            let closed: Vec<BigInt> = (0..=n as u32).map(house_closed_form).collect();
            out.insert("closed_form".into(), strings(&closed).into());
        }
        return Ok(Value::Object(out));
    }
    if let Some(alt) = &family.alt {
        let (k1, k2) = parse_pair(alt)?;
        if closed_form {
            return Err(Failure::Domain(
                "no closed form is implemented for alternating stacks".into(),
            ));
        }
        let (a, b) = alternating_tables(k1 as u64, k2 as u64, n)?;
        return Ok(json!({ "A": strings(&a.values), "B": strings(&b.values) }));
    }
    Err(Failure::Usage(
        "choose one of --tuple, --const, --house, --alt".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> CommandResult {
        let mut argv = vec!["critgroup"];
        argv.extend_from_slice(args);
        run(argv, &mut std::io::empty())
    }

    #[test]
    fn text_rendering() {
        let v = json!({"a": "1", "b": ["2", "3"], "c": true, "d": null, "e": [{"x": 1, "y": "z"}]});
        assert_eq!(
            render_text(&v),
            "a: 1\nb: 2,3\nc: true\nd: n/a\ne:\n  x=1 y=z\n"
        );
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["bogus"]).code, 2);
        assert_eq!(call(&["group"]).code, 2);
        assert_eq!(call(&["seq", "--n", "3"]).code, 2);
        assert_eq!(
            call(&["equiv", "--stack", "3", "--config", "0,0,0"]).code,
            2
        );
        assert_eq!(call(&["--help"]).code, 0);
    }

    #[test]
    fn domain_errors_exit_one() {
        let r = call(&["seq", "--const", "2", "--closed-form", "--n", "3"]);
        assert_eq!(r.code, 1);
        assert!(r.output.contains("k = 2"), "{}", r.output);
        assert_eq!(call(&["group", "/nonexistent/graph.txt"]).code, 1);
        assert_eq!(call(&["group", "--stack", "3,1"]).code, 1);
    }

    #[test]
    fn quiet_suppresses_output() {
        let r = call(&["--quiet", "group", "--stack", "3,4"]);
        assert_eq!((r.code, r.output.as_str()), (0, ""));
    }
}
