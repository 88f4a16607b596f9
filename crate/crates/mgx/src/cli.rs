//! Argument parsing and command dispatch for the `mgx` binary.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use mgx_core::girth::girth_turan;
use mgx_core::iterated::{
    build_iterated, is_s_dominant, iterated_entropy, iterated_product, iterated_sum, pi_iterated, pow,
    sigma_iterated, AdmissiblePair, Universe, DEFAULT_ENUMERATION_BUDGET,
};
use mgx_core::reductions::{
    acyclic_transform, cycle_reduce, heavy_edge_reduce, heavy_kset_reduce, heavy_triangle_reduce,
    min_product_degree_vertex, mt_pipeline, peel, step_down_reduce, symmetrize, ChainStep, Heavy, KsetThreshold,
    LowDegreeWitness, MtEnd, PeelEvent, PeelResult, StepDown,
};
use mgx_core::solver::{Problem, SearchBudget, SearchOptions};
use mgx_core::sparse::{classify, sparse_value, sparse_witness, SparseRegime, SparseValue};
use mgx_core::turan::{
    build_turan, entropy_density, extremal_v0_set, partition_product, partition_sum, pi_max, sigma, x_star,
    Objective, Partition, TuranSpec,
};
use mgx_core::{Error, Multigraph, PowerProduct, RootBound};
use serde_json::{json, Map, Value};

use crate::driver::{conjecture_check, solve_parallel, ConjectureStatus};
use crate::io;
use crate::output::{big, float, record, Format, Output};
use crate::verify::{run_suite, Suite, VerifyOptions};

pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INCOMPLETE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "mgx", version, about = "Extremal products of edge multiplicities in multigraphs")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

/// A T_{r,d}(a,n) spec (`--r 2 --d 1 --a 3`), an admissible pair
/// (`--r 1,2 --a 4,2`), or either as JSON via `--spec`.
#[derive(Args, Debug, Clone)]
pub struct SpecArgs {
    #[arg(long)]
    pub r: Option<String>,
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long)]
    pub a: Option<String>,
    /// JSON such as {"r":2,"d":1,"a":3} or {"r":[1,2],"a":[4,2]}, inline or a file path.
    #[arg(long)]
    pub spec: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct BudgetArgs {
    /// Node budget.
    #[arg(long, default_value_t = 1_000_000_000)]
    pub nodes: u64,
    /// Wall-clock budget in seconds.
    #[arg(long = "time-s", default_value_t = 600.0)]
    pub time_s: f64,
    /// Worker threads, 0 for one per core; MGX_THREADS takes precedence.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveArg {
    Product,
    Sum,
}

impl From<ObjectiveArg> for Objective {
    fn from(o: ObjectiveArg) -> Self {
        match o {
            ObjectiveArg::Product => Objective::Product,
            ObjectiveArg::Sum => Objective::Sum,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Lemma {
    Triangle,
    Edge,
    Heavy4,
    Heavy5,
    Heavy6,
    StepDown,
    Cycle,
    Symmetrize,
    Acyclic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Pipeline {
    Mt,
    MinDegree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    All,
    BaseCases,
    Turan,
    Sparse,
    Entropy,
    Iterated,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::BaseCases => Suite::BaseCases,
            SuiteArg::Turan => Suite::Turan,
            SuiteArg::Sparse => Suite::Sparse,
            SuiteArg::Entropy => Suite::Entropy,
            SuiteArg::Iterated => Suite::Iterated,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Σ_{r,d}(a,n), the largest edge sum in T_{r,d}(a,n).
    Sigma {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        n: usize,
    },
    /// Π_{r,d}(a,n), the largest product in T_{r,d}(a,n).
    Pi {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        n: usize,
    },
    /// x_{r*}(a,d), the limiting share of V0 in product maximisers.
    Xstar {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        d: u32,
    },
    /// Entropy density of T_{r,d}(a,n) or of an iterated construction.
    Entropy {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Product-optimal weighting of an admissible pair.
    Pow {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Build a member of T_{r,d}(a,n) or T_r(a,n).
    Construct {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        n: Option<usize>,
        /// Part sizes, comma separated; default is a product-optimal partition.
        #[arg(long)]
        sizes: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Σ_r(a,n) and Π_r(a,n) for an admissible pair.
    Iterated {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
        budget: u64,
    },
    /// Exact ex_Π(n,s,q) or ex_Σ(n,s,q).
    Exact {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value_t = ObjectiveArg::Product)]
        objective: ObjectiveArg,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long = "emit-witness")]
        emit_witness: Option<PathBuf>,
    },
    /// ex(n, {C3..Cs}): most edges with no cycle of length at most s.
    Girth {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 1_000_000_000)]
        nodes: u64,
    },
    /// Apply one reduction to a multigraph file.
    Reduce {
        #[arg(long, value_enum)]
        lemma: Lemma,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        a: u32,
        /// r and d of the step-down family.
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        d: Option<u32>,
        /// Set size of the step-down reduction.
        #[arg(long)]
        s: Option<usize>,
        /// Least vertex count for heavy k-sets, or "evaluated".
        #[arg(long, default_value = "21")]
        threshold: String,
        /// Where symmetrize and acyclic write their result.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Peel vertices from a multigraph file, one JSON line per step.
    Peel {
        #[arg(long, value_enum, default_value_t = Pipeline::Mt)]
        pipeline: Pipeline,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        a: u32,
        #[arg(long, default_value_t = 6)]
        floor: usize,
        /// Stop the min-degree pipeline once the multigraph lies in F(n,s,q).
        #[arg(long, requires = "q")]
        s: Option<usize>,
        #[arg(long, requires = "s")]
        q: Option<u64>,
    },
    /// Regime, value and witness in the sparse range q <= 2 C(s,2).
    Sparse {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(long, default_value_t = 1_000_000_000)]
        nodes: u64,
    },
    /// Whether an admissible pair is s-dominant within a finite universe.
    Dominance {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        s: usize,
        #[arg(long = "max-k", default_value_t = 3)]
        max_k: usize,
        #[arg(long = "max-r", default_value_t = 4)]
        max_r: usize,
        #[arg(long = "max-a1", default_value_t = 8)]
        max_a1: u32,
    },
    /// Compare ex_Π(n, s, Σ_{r,d}(a,s)) with Π_{r,d}(a,n).
    Conjecture {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Run the verification checks.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Wall-clock budget of the stretch search.
        #[arg(long = "time-s", default_value_t = 600.0)]
        time_s: f64,
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random instances per reduction lemma.
        #[arg(long, default_value_t = 10_000)]
        instances: usize,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error(transparent)]
    Io(#[from] io::IoError),
    #[error("{0}")]
    Usage(String),
}

/// What to print and the process exit code.
#[derive(Debug)]
pub struct Outcome {
    pub output: Output,
    pub code: i32,
}

fn ok(output: Output) -> Result<Outcome, CliError> {
    Ok(Outcome { output, code: 0 })
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

enum Family {
    Turan(TuranSpec),
    Pair(AdmissiblePair),
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, CliError> {
    text.split(',')
        .map(|t| t.trim().parse().map_err(|_| usage(format!("cannot parse {what} entry {t:?}"))))
        .collect()
}

fn from_json_spec(v: &Value) -> Result<Family, CliError> {
    let bad = || usage(format!("spec JSON must look like {{\"r\":2,\"d\":1,\"a\":3}} or {{\"r\":[1,2],\"a\":[4,2]}} (got {v})"));
    match (v.get("r"), v.get("a")) {
        (Some(Value::Array(r)), Some(Value::Array(a))) => {
            if v.get("d").is_some() {
                return Err(bad());
            }
            let r: Option<Vec<usize>> = r.iter().map(|x| x.as_u64().map(|x| x as usize)).collect();
            let a: Option<Vec<u32>> = a.iter().map(|x| x.as_u64().and_then(|x| u32::try_from(x).ok())).collect();
            Ok(Family::Pair(AdmissiblePair::new(r.ok_or_else(bad)?, a.ok_or_else(bad)?)?))
        }
        (Some(r), Some(a)) => {
            let r = r.as_u64().ok_or_else(bad)? as usize;
            let a = a.as_u64().and_then(|x| u32::try_from(x).ok()).ok_or_else(bad)?;
            let d = match v.get("d") {
                None => 0,
                Some(d) => d.as_u64().and_then(|x| u32::try_from(x).ok()).ok_or_else(bad)?,
            };
            Ok(Family::Turan(TuranSpec::new(r, d, a)?))
        }
        _ => Err(bad()),
    }
}

impl SpecArgs {
    fn family(&self) -> Result<Family, CliError> {
        if let Some(text) = &self.spec {
            if self.r.is_some() || self.a.is_some() || self.d.is_some() {
                return Err(usage("give either --spec or --r/--d/--a, not both"));
            }
            let body = if text.trim_start().starts_with('{') {
                text.clone()
            } else {
                std::fs::read_to_string(text).map_err(|e| usage(format!("cannot read {text}: {e}")))?
            };
            let v: Value = serde_json::from_str(&body).map_err(|e| usage(format!("malformed spec JSON: {e}")))?;
            return from_json_spec(&v);
        }
        let (r, a) = match (&self.r, &self.a) {
            (Some(r), Some(a)) => (r, a),
            _ => return Err(usage("missing --r and --a (or --spec)")),
        };
        if r.contains(',') || a.contains(',') {
            if self.d.is_some() {
                return Err(usage("--d applies to T_{r,d}(a,n) only, not to admissible pairs"));
            }
            return Ok(Family::Pair(AdmissiblePair::new(parse_list(r, "r")?, parse_list(a, "a")?)?));
        }
        let r: usize = r.trim().parse().map_err(|_| usage(format!("cannot parse --r {r:?}")))?;
        let a: u32 = a.trim().parse().map_err(|_| usage(format!("cannot parse --a {a:?}")))?;
        Ok(Family::Turan(TuranSpec::new(r, self.d.unwrap_or(0), a)?))
    }

    fn turan(&self) -> Result<TuranSpec, CliError> {
        match self.family()? {
            Family::Turan(s) => Ok(s),
            Family::Pair(_) => Err(usage("this command needs a single T_{r,d}(a,n) spec")),
        }
    }

    /// An admissible pair; a T_{r,d} spec is accepted when it is one.
    fn pair(&self) -> Result<AdmissiblePair, CliError> {
        match self.family()? {
            Family::Pair(p) => Ok(p),
            Family::Turan(s) => Ok(turan_pair(s)?),
        }
    }
}

/// The admissible pair whose construction is T_{r,d}(a,n).
fn turan_pair(s: TuranSpec) -> Result<AdmissiblePair, Error> {
    match (s.r, s.d) {
        (1, d) => AdmissiblePair::new(vec![1], vec![s.a - d]),
        (r, 0) => AdmissiblePair::new(vec![r], vec![s.a]),
        (r, d) => AdmissiblePair::new(vec![r - 1, 1], vec![s.a, s.a - d]),
    }
}

/// MGX_THREADS, when set, overrides the flag.
pub fn effective_threads(flag: usize) -> Result<usize, CliError> {
    match std::env::var("MGX_THREADS") {
        Ok(v) if !v.trim().is_empty() => {
            v.trim().parse().map_err(|_| usage(format!("MGX_THREADS must be a nonnegative integer (got {v:?})")))
        }
        _ => Ok(flag),
    }
}

impl BudgetArgs {
    fn budget(&self) -> Result<SearchBudget, CliError> {
        if self.nodes == 0 || self.time_s.is_nan() || self.time_s <= 0.0 {
            return Err(usage("--nodes and --time-s must be positive"));
        }
        Ok(SearchBudget { max_nodes: self.nodes, max_time_s: self.time_s, threads: effective_threads(self.threads)? })
    }
}

fn spec_json(s: TuranSpec) -> Value {
    json!({"r": s.r, "d": s.d, "a": s.a})
}

fn pair_json(p: &AdmissiblePair) -> Value {
    json!({"r": p.r(), "a": p.a()})
}

fn graph_json(g: &Multigraph) -> Value {
    serde_json::from_str(&io::to_json(g)).expect("canonical JSON parses")
}

fn bound_json(b: &RootBound) -> Value {
    Value::String(b.render())
}

fn witness_fields(w: &LowDegreeWitness) -> Vec<(&'static str, Value)> {
    vec![
        ("vertex", json!(w.vertex)),
        ("product_degree", big(&w.product_degree)),
        ("bound", bound_json(&w.bound)),
        ("holds", json!(w.holds())),
        ("source", json!(w.source)),
    ]
}

fn path_str(p: &Path) -> Value {
    Value::String(p.display().to_string())
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Sigma { spec, n } => {
            let s = spec.turan()?;
            ok(Output::Record(record([
                ("spec", spec_json(s)),
                ("n", json!(n)),
                ("value", json!(sigma(s, *n))),
                ("v0", json!(extremal_v0_set(s, *n, Objective::Sum))),
            ])))
        }
        Command::Pi { spec, n } => {
            let s = spec.turan()?;
            let (value, part) = pi_max(s, *n);
            ok(Output::Record(record([
                ("spec", spec_json(s)),
                ("n", json!(n)),
                ("value", big(&value)),
                ("sizes", json!(part.sizes)),
                ("v0", json!(extremal_v0_set(s, *n, Objective::Product))),
            ])))
        }
        Command::Xstar { r, a, d } => ok(Output::Record(record([("value", float(x_star(*r, *a, *d)?))]))),
        Command::Entropy { spec } => {
            let value = match spec.family()? {
                Family::Turan(s) => entropy_density(s),
                Family::Pair(p) => iterated_entropy(&p),
            };
            ok(Output::Record(record([("value", float(value))])))
        }
        Command::Pow { spec } => {
            let p = spec.pair()?;
            let w = pow(&p);
            ok(Output::Record(record([
                ("pair", pair_json(&p)),
                ("weights", Value::Array(w.x.iter().map(|&x| float(x)).collect())),
                ("entropy", float(iterated_entropy(&p))),
            ])))
        }
        Command::Construct { spec, n, sizes, out } => construct(spec, *n, sizes.as_deref(), out.as_deref()),
        Command::Iterated { spec, n, budget } => {
            let p = spec.pair()?;
            let (value, part) = pi_iterated(&p, *n, *budget)?;
            ok(Output::Record(record([
                ("pair", pair_json(&p)),
                ("n", json!(n)),
                ("value", big(&value)),
                ("sizes", json!(part.sizes)),
                ("sigma", json!(sigma_iterated(&p, *n, *budget)?)),
            ])))
        }
        Command::Exact { n, s, q, objective, budget, emit_witness } => {
            let problem = Problem::new(*n, *s, *q, (*objective).into())?;
            let r = solve_parallel(problem, SearchOptions::default(), &budget.budget()?)?;
            let mut fields = vec![
                ("n", json!(n)),
                ("s", json!(s)),
                ("q", json!(q)),
                ("objective", json!(format!("{objective:?}").to_lowercase())),
                ("value", big(&r.optimum)),
                ("complete", json!(r.complete)),
                ("nodes", json!(r.nodes_explored)),
            ];
            if let Some(path) = emit_witness {
                io::write(path, &r.witness)?;
                fields.push(("witness_path", path_str(path)));
            }
            Ok(Outcome { output: Output::Record(record(fields)), code: if r.complete { 0 } else { EXIT_INCOMPLETE } })
        }
        Command::Girth { n, s, nodes } => {
            let r = girth_turan(*n, *s, *nodes)?;
            let edges: Vec<[usize; 2]> =
                (0..*n).flat_map(|u| (u + 1..*n).map(move |v| [u, v])).filter(|&[u, v]| r.witness.get(u, v) > 0).collect();
            Ok(Outcome {
                output: Output::Record(record([
                    ("n", json!(n)),
                    ("s", json!(s)),
                    ("value", json!(r.edges)),
                    ("complete", json!(r.complete)),
                    ("nodes", json!(r.nodes_explored)),
                    ("edges", json!(edges)),
                ])),
                code: if r.complete { 0 } else { EXIT_INCOMPLETE },
            })
        }
        Command::Reduce { lemma, input, a, r, d, s, threshold, out } => {
            reduce(*lemma, &io::read(input)?, *a, (*r, *d, *s), threshold, out.as_deref())
        }
        Command::Peel { pipeline, input, a, floor, s, q } => {
            peel_cmd(*pipeline, &io::read(input)?, *a, *floor, s.zip(*q))
        }
        Command::Sparse { n, s, q, witness, nodes } => sparse_cmd(*n, *s, *q, witness.as_deref(), *nodes),
        Command::Dominance { spec, s, max_k, max_r, max_a1 } => {
            let p = spec.pair()?;
            let (dominant, cert) = is_s_dominant(&p, *s, Universe { max_k: *max_k, max_r: *max_r, max_a1: *max_a1 })?;
            ok(Output::Record(record([
                ("pair", pair_json(&p)),
                ("s", json!(s)),
                ("dominant", json!(dominant)),
                ("certificate", cert.as_ref().map_or(Value::Null, pair_json)),
            ])))
        }
        Command::Conjecture { spec, s, n, budget } => {
            let r = conjecture_check(spec.turan()?, *s, *n, &budget.budget()?)?;
            Ok(Outcome {
                output: Output::Record(record([
                    ("spec", spec_json(r.spec)),
                    ("s", json!(r.s)),
                    ("n", json!(r.n)),
                    ("q", json!(r.q)),
                    ("status", json!(r.status.tag())),
                    ("construction", big(&r.construction)),
                    ("search", big(&r.search.optimum)),
                    ("complete", json!(r.search.complete)),
                ])),
                code: if r.status == ConjectureStatus::SearchIncomplete { EXIT_INCOMPLETE } else { 0 },
            })
        }
        Command::Verify { suite, time_s, threads, seed, instances } => {
            let opts = VerifyOptions {
                threads: effective_threads(*threads)?,
                seed: *seed,
                time_s: *time_s,
                reduction_instances: *instances,
                ..VerifyOptions::default()
            };
            let report = run_suite((*suite).into(), &opts);
            let rows = report
                .checks
                .iter()
                .map(|c| {
                    record([
                        ("id", json!(c.id)),
                        ("status", json!(c.status.tag())),
                        ("anchor", json!(c.anchor)),
                        ("observed", json!(c.observed)),
                        ("expected", json!(c.expected)),
                        ("runtime_s", float((c.runtime_s * 1000.0).round() / 1000.0)),
                    ])
                })
                .collect();
            Ok(Outcome { output: Output::Rows(rows), code: if report.passed() { 0 } else { EXIT_FAIL } })
        }
    }
}

fn construct(spec: &SpecArgs, n: Option<usize>, sizes: Option<&str>, out: Option<&Path>) -> Result<Outcome, CliError> {
    let sizes: Option<Vec<usize>> = sizes.map(|s| parse_list(s, "sizes")).transpose()?;
    if let (Some(n), Some(sz)) = (n, &sizes) {
        if sz.iter().sum::<usize>() != n {
            return Err(usage(format!("sizes {sz:?} do not add up to n = {n}")));
        }
    }
    let (fields, g) = match spec.family()? {
        Family::Turan(s) => {
            let part = match (sizes, n) {
                (Some(sz), _) => Partition::new(sz),
                (None, Some(n)) => pi_max(s, n).1,
                (None, None) => return Err(usage("give --n or --sizes")),
            };
            let g = build_turan(s, &part)?;
            let fields = vec![
                ("spec", spec_json(s)),
                ("sizes", json!(part.sizes)),
                ("sum", json!(partition_sum(s, &part.sizes)?)),
                ("product", big(&partition_product(s, &part.sizes)?.to_biguint())),
            ];
            (fields, g)
        }
        Family::Pair(p) => {
            let part = match (sizes, n) {
                (Some(sz), _) => Partition::new(sz),
                (None, Some(n)) => pi_iterated(&p, n, DEFAULT_ENUMERATION_BUDGET)?.1,
                (None, None) => return Err(usage("give --n or --sizes")),
            };
            let g = build_iterated(&p, &part)?;
            let fields = vec![
                ("pair", pair_json(&p)),
                ("sizes", json!(part.sizes)),
                ("sum", json!(iterated_sum(&p, &part))),
                ("product", big(&iterated_product(&p, &part).to_biguint())),
            ];
            (fields, g)
        }
    };
    let mut fields = fields;
    match out {
        Some(path) => {
            io::write(path, &g)?;
            fields.push(("path", path_str(path)));
        }
        None => fields.push(("graph", graph_json(&g))),
    }
    ok(Output::Record(record(fields)))
}

fn kset_threshold_arg(text: &str) -> Result<KsetThreshold, CliError> {
    if text == "evaluated" {
        return Ok(KsetThreshold::Evaluated);
    }
    text.parse()
        .map(KsetThreshold::MinVertices)
        .map_err(|_| usage(format!("--threshold must be a vertex count or \"evaluated\" (got {text:?})")))
}

fn heavy_output(h: Heavy) -> Output {
    match h {
        Heavy::AllLight => Output::Record(record([("status", json!("all-light"))])),
        Heavy::Witness(w) => {
            let mut fields = vec![("status", json!("witness"))];
            fields.extend(witness_fields(&w));
            Output::Record(record(fields))
        }
    }
}

fn reduce(
    lemma: Lemma,
    g: &Multigraph,
    a: u32,
    (r, d, s): (Option<usize>, Option<u32>, Option<usize>),
    threshold: &str,
    out: Option<&Path>,
) -> Result<Outcome, CliError> {
    let output = match lemma {
        Lemma::Triangle => heavy_output(heavy_triangle_reduce(g, a)?),
        Lemma::Edge => heavy_output(heavy_edge_reduce(g, a)?),
        Lemma::Heavy4 | Lemma::Heavy5 | Lemma::Heavy6 => {
            let k = match lemma {
                Lemma::Heavy4 => 4,
                Lemma::Heavy5 => 5,
                _ => 6,
            };
            heavy_output(heavy_kset_reduce(g, a, k, kset_threshold_arg(threshold)?)?)
        }
        Lemma::StepDown => {
            let (r, s) = r.zip(s).ok_or_else(|| usage("step-down needs --r, --s (and optionally --d)"))?;
            match step_down_reduce(g, TuranSpec::new(r, d.unwrap_or(0), a)?, s)? {
                StepDown::InLowerClass => Output::Record(record([("status", json!("in-lower-class"))])),
                StepDown::Witness(w) => {
                    let mut fields = vec![("status", json!("witness"))];
                    fields.extend(witness_fields(&w));
                    Output::Record(record(fields))
                }
            }
        }
        Lemma::Cycle => {
            let w = cycle_reduce(g, a)?;
            let mut fields = vec![("status", json!("witness"))];
            fields.extend(witness_fields(&w));
            Output::Record(record(fields))
        }
        Lemma::Symmetrize => {
            let res = symmetrize(g, a)?;
            let mut fields = vec![
                ("status", json!("symmetrized")),
                ("steps", json!(res.steps.len())),
                ("classes", json!(res.classes)),
                ("product_before", big(&g.total_product())),
                ("product_after", big(&res.graph.total_product())),
            ];
            push_graph(&mut fields, &res.graph, out)?;
            Output::Record(record(fields))
        }
        Lemma::Acyclic => {
            let res = acyclic_transform(g, a)?;
            let v0 = &res.aux.classes[res.v0];
            let mut fields = vec![
                ("status", json!("transformed")),
                ("v0", json!(v0)),
                ("products", Value::Array(res.products.iter().map(big).collect())),
            ];
            push_graph(&mut fields, &res.graph, out)?;
            Output::Record(record(fields))
        }
    };
    ok(output)
}

fn push_graph(fields: &mut Vec<(&'static str, Value)>, g: &Multigraph, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => {
            io::write(path, g)?;
            fields.push(("path", path_str(path)));
        }
        None => fields.push(("graph", graph_json(g))),
    }
    Ok(())
}

fn peel_events(res: &PeelResult) -> Vec<Map<String, Value>> {
    res.events
        .iter()
        .map(|e| match e {
            PeelEvent::Removal { kind, vertex, n_before, witness } => record([
                ("event", json!("removal")),
                ("kind", json!(kind)),
                ("vertex", json!(vertex)),
                ("n_before", json!(n_before)),
                ("product_degree", big(&witness.product_degree)),
                ("bound", bound_json(&witness.bound)),
                ("holds", json!(witness.holds())),
            ]),
            PeelEvent::Replacement { kind, n, product_before, product_after } => record([
                ("event", json!("replacement")),
                ("kind", json!(kind)),
                ("n", json!(n)),
                ("product_before", big(product_before)),
                ("product_after", big(product_after)),
            ]),
        })
        .collect()
}

fn peel_cmd(pipeline: Pipeline, g: &Multigraph, a: u32, floor: usize, stop: Option<(usize, u64)>) -> Result<Outcome, CliError> {
    let (res, end, final_graph) = match pipeline {
        Pipeline::Mt => {
            let o = mt_pipeline(g, a, floor)?;
            let end = match &o.end {
                MtEnd::Floor => "floor",
                MtEnd::Acyclic(_) => "acyclic",
            };
            let fin = o.final_graph().clone();
            (o.peel, end, fin)
        }
        Pipeline::MinDegree => {
            let res = peel(
                g,
                |h| h.n() <= floor || stop.is_some_and(|(s, q)| h.n() >= s && h.is_sq_graph(s, q)),
                |h| {
                    let (vertex, p) = min_product_degree_vertex(h);
                    let incident = (0..h.n()).filter(|&u| u != vertex).map(|u| (h.get(u, vertex) as u64, 1));
                    let bound = RootBound::exact(&PowerProduct::from_factors(incident));
                    let witness = LowDegreeWitness { vertex, product_degree: p, bound, source: (0..h.n()).collect() };
                    Ok(ChainStep::Remove { kind: "min-degree", witness })
                },
            )?;
            let end = if res.graph.n() <= floor { "floor" } else { "predicate" };
            let fin = res.graph.clone();
            (res, end, fin)
        }
    };
    let removed = res.removed_product();
    let final_product = final_graph.total_product();
    let mut lines = peel_events(&res);
    lines.push(record([
        ("event", json!("end")),
        ("reason", json!(end)),
        ("n", json!(final_graph.n())),
        ("labels", json!(res.labels)),
        ("final_product", big(&final_product)),
        ("removed_product", big(&removed)),
        ("bound", big(&(&removed * &final_product))),
        ("sound", json!(res.is_sound())),
    ]));
    ok(Output::Stream(lines))
}

fn sparse_cmd(n: usize, s: usize, q: u64, witness: Option<&Path>, nodes: u64) -> Result<Outcome, CliError> {
    let regime = classify(s, q)?;
    let mut fields = vec![("n", json!(n)), ("s", json!(s)), ("q", json!(q)), ("regime", json!(regime.tag()))];
    if let SparseRegime::Power { exponent } = regime {
        fields.push(("exponent", json!(exponent)));
    }
    match sparse_value(n, s, q, nodes)? {
        SparseValue::Exact(v) => fields.push(("value", big(&v))),
        SparseValue::Bounds { lower, upper, upper_tight, asymptotic, provenance } => {
            fields.push(("lower", big(&lower)));
            fields.push(("upper", big(&upper)));
            fields.push(("upper_tight", json!(upper_tight)));
            fields.push(("asymptotic", json!(asymptotic)));
            fields.push(("provenance", json!(provenance)));
        }
    }
    if let Some(path) = witness {
        let g = sparse_witness(n, s, q, nodes)?;
        io::write(path, &g)?;
        fields.push(("witness_product", big(&g.total_product())));
        fields.push(("witness_path", path_str(path)));
    }
    ok(Output::Record(record(fields)))
}

/// Standard output, standard error and exit code of one invocation.
pub fn run<I, T>(args: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if e.use_stderr() { (String::new(), text, code) } else { (text, String::new(), code) };
        }
    };
    match execute(&cli) {
        Ok(o) => (crate::output::render(&o.output, cli.format), String::new(), o.code),
        Err(e) => (String::new(), format!("error: {e}\n"), EXIT_INVALID),
    }
}
