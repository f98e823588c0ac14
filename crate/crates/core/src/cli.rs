//! The `pcn-attach` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::attach::{
    brute_force_oracle, continuous_local_search, exhaustive_discrete, greedy_fixed, AttachProblem, OptResult,
    RateModel,
};
use crate::equilibrium::{
    hub_path_check, is_nash_equilibrium, make_topology, star_ne_conditions, ConditionReport, GameParams, Topology,
};
use crate::error::{Error, Result};
use crate::graph::{Node, NodeId, PcnGraph};
use crate::io::{graph_to_json, load_graph, load_params};
use crate::units::Coins;
use crate::utility::{network_state, utility, Action, CapacityFilter, GlobalParams, ObjectiveKind, Strategy};

#[derive(Debug, Parser)]
#[command(name = "pcn-attach", version, about = "Channel strategies and topology equilibria for payment channel networks")]
struct Cli {
    /// Worker threads (also PCN_ATTACH_THREADS); defaults to all cores.
    #[arg(long, global = true, env = "PCN_ATTACH_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Per-edge probabilities and transaction rates.
    Rates(RatesArgs),
    /// Utility breakdown of a node after opening some channels.
    Eval(EvalArgs),
    /// Optimise a joining node's channels.
    Attach(AttachArgs),
    /// Nash-equilibrium analysis of a topology.
    NeCheck(NeCheckArgs),
    /// Write a generated topology as graph JSON.
    Gen(GenArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct RatesArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    config: Option<PathBuf>,
    /// Route only over edges holding at least this much.
    #[arg(long)]
    tx_size: Option<f64>,
    #[arg(long, value_enum, default_value = "csv")]
    out: OutFormat,
}

#[derive(Debug, Args)]
struct JoinerArgs {
    /// Transactions the node sends per unit of time, if it is new.
    #[arg(long, default_value_t = 1.0)]
    joiner_n_tx: f64,
    /// Zipf exponent of the node, if it is new.
    #[arg(long, default_value_t = 1.0)]
    joiner_s: f64,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    config: PathBuf,
    /// Node to evaluate; added to the graph if absent.
    #[arg(long)]
    node: String,
    #[command(flatten)]
    joiner: JoinerArgs,
    /// Channel to open, as PEER:LOCK; repeatable.
    #[arg(long = "action", value_name = "PEER:LOCK")]
    actions: Vec<String>,
    /// Reject strategies costing more than this.
    #[arg(long)]
    budget: Option<f64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Algo {
    Greedy,
    Discrete,
    Continuous,
    Brute,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum RateArg {
    Frozen,
    Recompute,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ObjectiveArg {
    U,
    #[value(name = "U'")]
    UPrime,
    Ub,
}

#[derive(Debug, Args)]
struct AttachArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    config: PathBuf,
    /// Id of the joining node.
    #[arg(long, default_value = "joiner")]
    joiner: String,
    #[command(flatten)]
    joiner_attrs: JoinerArgs,
    #[arg(long)]
    budget: f64,
    #[arg(long, value_enum, default_value = "greedy")]
    algo: Algo,
    /// Lock per channel for the greedy algorithm.
    #[arg(long, default_value_t = 0.0)]
    lock: f64,
    /// Budget unit for the discrete search and the brute-force lock grid.
    #[arg(long, default_value_t = 1.0)]
    unit: f64,
    #[arg(long, default_value_t = 0.01)]
    eps: f64,
    /// How strategies are scored.
    #[arg(long, value_enum, default_value = "frozen")]
    rate_model: RateArg,
    /// Objective maximised by the brute-force search.
    #[arg(long, value_enum, default_value = "u")]
    objective: ObjectiveArg,
    /// Restrict peers to these ids (comma separated).
    #[arg(long, value_delimiter = ',')]
    candidates: Option<Vec<String>>,
    #[arg(long, value_enum, default_value = "json")]
    out: OutFormat,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum TopologyArg {
    Star,
    Path,
    Circle,
    Complete,
    Random,
    File,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum NeMode {
    Enumerate,
    StarConditions,
    DiameterBound,
}

#[derive(Debug, Args)]
struct TopologyArgs {
    #[arg(long, value_enum)]
    topology: TopologyArg,
    /// Size: leaves for a star, n + 1 nodes for a circle, nodes otherwise.
    #[arg(long)]
    n: Option<usize>,
    /// Graph file for `--topology file`.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.5)]
    edge_prob: f64,
}

#[derive(Debug, Args)]
struct NeCheckArgs {
    #[command(flatten)]
    topo: TopologyArgs,
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
    #[arg(long)]
    l: f64,
    #[arg(long)]
    s: f64,
    #[arg(long, value_enum, default_value = "enumerate")]
    mode: NeMode,
    /// Largest graph whose best responses are enumerated.
    #[arg(long, default_value_t = crate::equilibrium::DEFAULT_MAX_N)]
    max_n: usize,
    #[arg(long, value_enum, default_value = "json")]
    out: OutFormat,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[command(flatten)]
    topo: TopologyArgs,
}

/// Runs the command line and returns the process exit code: 0 on success,
/// 1 for invalid input, 2 when a computation cannot be carried out.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match execute(cli, &mut out) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_validation() {
                1
            } else {
                2
            }
        }
    }
}

/// Runs a parsed command, writing its output to `out`.
fn execute(cli: Cli, out: &mut dyn Write) -> Result<()> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Error::field("threads", "must be >= 1"));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    let text = pool.install(|| match cli.command {
        Command::Rates(a) => rates(a),
        Command::Eval(a) => eval(a),
        Command::Attach(a) => attach(a),
        Command::NeCheck(a) => ne_check(a),
        Command::Gen(a) => gen(a),
    })?;
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|source| Error::Io {
            path: "<stdout>".into(),
            source,
        })
}

/// Rounds every float in `v` to 12 significant digits.
pub fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            if let Some(r) = serde_json::Number::from_f64(round12(x)) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

fn fmt12(x: f64) -> String {
    if x.is_finite() {
        round12(x).to_string()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn json_text(mut v: Value) -> String {
    round_floats(&mut v);
    let mut s = serde_json::to_string_pretty(&v).expect("JSON values serialise");
    s.push('\n');
    s
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("output types serialise")
}

fn coins(field: &str, v: f64) -> Result<Coins> {
    Coins::from_f64(v).map_err(|reason| Error::field(field, reason))
}

fn non_negative(field: &str, v: f64) -> Result<f64> {
    if v.is_finite() && v >= 0.0 {
        Ok(v)
    } else {
        Err(Error::field(field, format!("{v} must be finite and >= 0")))
    }
}

fn rates(a: RatesArgs) -> Result<String> {
    let g = load_graph(&a.graph)?;
    let mut params = match &a.config {
        Some(path) => load_params(path)?,
        None => GlobalParams::default(),
    };
    if let Some(t) = a.tx_size {
        params.t = coins("tx-size", t)?;
        params.capacity_filter = CapacityFilter::TxSize;
    }
    let state = network_state(&g, &params)?;
    let rows: Vec<(String, String, f64, f64)> = state
        .routing
        .enabled_edges()
        .map(|(e, edge)| {
            (
                g.node(edge.from).id.to_string(),
                g.node(edge.to).id.to_string(),
                state.rates.p_e[e],
                state.rates.lambda[e],
            )
        })
        .collect();
    Ok(match a.out {
        OutFormat::Csv => {
            let mut s = String::from("from,to,p_e,lambda_e\n");
            for (from, to, p, l) in rows {
                s.push_str(&format!("{from},{to},{},{}\n", fmt12(p), fmt12(l)));
            }
            s
        }
        OutFormat::Json => json_text(Value::Array(
            rows.into_iter()
                .map(|(from, to, p, l)| json!({"from": from, "to": to, "p_e": p, "lambda_e": l}))
                .collect(),
        )),
    })
}

fn parse_action(text: &str) -> Result<Action> {
    let (peer, lock) = text
        .rsplit_once(':')
        .ok_or_else(|| Error::field("action", format!("`{text}` is not PEER:LOCK")))?;
    let lock: f64 = lock
        .parse()
        .map_err(|_| Error::field("action", format!("`{lock}` is not a number")))?;
    Ok(Action::new(peer, coins("action lock", lock)?))
}

fn joiner_node(id: &str, attrs: &JoinerArgs) -> Result<Node> {
    Ok(Node::new(
        id,
        non_negative("joiner-n-tx", attrs.joiner_n_tx)?,
        non_negative("joiner-s", attrs.joiner_s)?,
    ))
}

fn eval(a: EvalArgs) -> Result<String> {
    let g = load_graph(&a.graph)?;
    let params = load_params(&a.config)?;
    let node = joiner_node(&a.node, &a.joiner)?;
    let strategy = Strategy::new(a.actions.iter().map(|s| parse_action(s)).collect::<Result<_>>()?);
    if let Some(b) = a.budget {
        strategy.check_budget(&params, coins("budget", b)?)?;
    }
    let b = utility(&g, &node, &strategy, &params)?;
    let mut v = to_json(&b);
    v["simplified"] = to_json(&b.simplified());
    v["benefit"] = to_json(&b.benefit());
    v["strategy"] = to_json(&strategy);
    Ok(json_text(v))
}

fn attach(a: AttachArgs) -> Result<String> {
    let g = load_graph(&a.graph)?;
    let params = load_params(&a.config)?;
    let joiner = joiner_node(&a.joiner, &a.joiner_attrs)?;
    let budget = coins("budget", a.budget)?;
    let candidates: Vec<NodeId> = match &a.candidates {
        Some(list) => list.iter().map(|s| NodeId::new(s.as_str())).collect(),
        None => g.nodes().iter().map(|n| n.id.clone()).collect(),
    };
    let model = match a.rate_model {
        RateArg::Frozen => RateModel::Frozen,
        RateArg::Recompute => RateModel::Recompute,
    };
    let problem = AttachProblem::with_candidates(g, joiner, budget, params, candidates)?.rate_model(model);
    let result = match a.algo {
        Algo::Greedy => greedy_fixed(&problem, coins("lock", a.lock)?)?,
        Algo::Discrete => exhaustive_discrete(&problem, coins("unit", a.unit)?)?,
        Algo::Continuous => continuous_local_search(&problem, a.eps)?,
        Algo::Brute => {
            let unit = coins("unit", a.unit)?;
            if unit == Coins::ZERO {
                return Err(Error::field("unit", "must be > 0"));
            }
            let spare = budget.0.saturating_sub(problem.params.c.0);
            let actions: Vec<Action> = problem
                .candidates
                .iter()
                .flat_map(|v| (0..=spare / unit.0).map(move |k| Action::new(v.clone(), k * unit.0)))
                .collect();
            let kind = match a.objective {
                ObjectiveArg::U => ObjectiveKind::Utility,
                ObjectiveArg::UPrime => ObjectiveKind::Simplified,
                ObjectiveArg::Ub => ObjectiveKind::Benefit,
            };
            brute_force_oracle(&problem, &actions, kind)?
        }
    };
    Ok(match a.out {
        OutFormat::Json => json_text(attach_json(&result)),
        OutFormat::Csv => {
            let mut s = String::from("peer,lock\n");
            for act in &result.strategy.actions {
                s.push_str(&format!("{},{}\n", act.peer, act.lock));
            }
            s
        }
    })
}

fn attach_json(r: &OptResult) -> Value {
    json!({
        "algorithm": r.algorithm,
        "strategy": to_json(&r.strategy),
        "objective_kind": to_json(&r.objective_kind),
        "objective_value": to_json(&r.objective_value),
        "evaluations": r.evaluations,
    })
}

fn topology_graph(t: &TopologyArgs) -> Result<PcnGraph> {
    let kind = match t.topology {
        TopologyArg::File => {
            let path = t
                .graph
                .as_ref()
                .ok_or_else(|| Error::field("graph", "required with --topology file"))?;
            return load_graph(path);
        }
        TopologyArg::Star => Topology::Star,
        TopologyArg::Path => Topology::Path,
        TopologyArg::Circle => Topology::Circle,
        TopologyArg::Complete => Topology::Complete,
        TopologyArg::Random => Topology::Random {
            seed: t.seed,
            edge_prob: t.edge_prob,
        },
    };
    let n = t.n.ok_or_else(|| Error::field("n", "required for generated topologies"))?;
    make_topology(kind, n)
}

fn conditions_json(c1: &ConditionReport, c2: &ConditionReport, c3: &ConditionReport) -> Value {
    json!({
        "c1": c1.holds,
        "c2": c2.holds,
        "c3": c3.holds,
        "slacks": {"c1": c1.slack, "c2": c2.slack, "c3": c3.slack},
    })
}

fn ne_check(a: NeCheckArgs) -> Result<String> {
    let (na, nb, nl, ns) = (
        non_negative("a", a.a)?,
        non_negative("b", a.b)?,
        non_negative("l", a.l)?,
        non_negative("s", a.s)?,
    );
    let v = match a.mode {
        NeMode::StarConditions => {
            let leaves = match a.topo.topology {
                TopologyArg::Star => a.topo.n.ok_or_else(|| Error::field("n", "required"))?,
                _ => return Err(Error::field("topology", "star conditions apply to stars only")),
            };
            let c = star_ne_conditions(&GameParams::new(na, nb, nl, ns, leaves))?;
            json!({
                "is_ne": c.holds,
                "deviations": [],
                "conditions": conditions_json(&c.c1, &c.c2, &c.c3),
            })
        }
        NeMode::Enumerate | NeMode::DiameterBound => {
            let g = topology_graph(&a.topo)?;
            let gp = GameParams::new(na, nb, nl, ns, a.topo.n.unwrap_or(g.node_count()));
            let report = is_nash_equilibrium(&g, &gp, a.max_n)?;
            let deviations: Vec<Value> = report
                .profitable()
                .map(|r| json!({"node": r.node, "gain": to_json(&r.gain), "best_response": r.best_response}))
                .collect();
            let mut v = json!({"is_ne": report.is_ne, "deviations": deviations, "conditions": null});
            if a.topo.topology == TopologyArg::Star {
                if let Some(n) = a.topo.n {
                    let c = star_ne_conditions(&GameParams::new(na, nb, nl, ns, n))?;
                    v["conditions"] = conditions_json(&c.c1, &c.c2, &c.c3);
                }
            }
            if a.mode == NeMode::DiameterBound {
                v["diameter"] = to_json(&hub_path_check(&g, &gp)?);
            }
            v
        }
    };
    Ok(match a.out {
        OutFormat::Json => json_text(v),
        OutFormat::Csv => {
            let mut s = String::from("node,gain,best_response\n");
            for d in v["deviations"].as_array().into_iter().flatten() {
                let response: Vec<&str> = d["best_response"]
                    .as_array()
                    .into_iter()
                    .flatten()
                    .filter_map(Value::as_str)
                    .collect();
                let gain = match &d["gain"] {
                    Value::Number(n) => fmt12(n.as_f64().unwrap_or(f64::NAN)),
                    other => other.as_str().unwrap_or("").to_string(),
                };
                s.push_str(&format!(
                    "{},{},{}\n",
                    d["node"].as_str().unwrap_or(""),
                    gain,
                    response.join(";")
                ));
            }
            s
        }
    })
}

fn gen(a: GenArgs) -> Result<String> {
    let g = topology_graph(&a.topo)?;
    Ok(json_text(graph_to_json(&g)))
}
