//! The `modcolor` command line. [`run`] parses arguments, executes one
//! command and returns the process exit code: 0 for Yes / pass, 1 for No /
//! fail, 2 for errors.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bench::{rows_to_csv, run_bench, BenchConfig, BenchSolver, Family};
use crate::error::{Error, Result};
use crate::gen::{derive_seed, random_graph, random_modulator_instance, rng};
use crate::graph::{is_member, verify_modulator, ClassTag, Graph, Modulator, VertexSet};
use crate::io::{self, Meta};
use crate::nocert::{
    build_certificate_set, solve_nocert_with, NoCertificateSet, SolveOptions, TraceEvent,
};
use crate::oracle::{
    brute_force_list_color, brute_force_with_budget, check_coloring, chromatic_number_brute,
    chromatic_number_ie, is_list_colorable, is_q_colorable, node_budget, Color, ColorSet, Coloring,
    ListAssignment, DEFAULT_IE_CAP,
};
use crate::reductions::{
    attach_palette_clique, build_clause_path, join_paths, reduce_3sat_lists, reduce_ssat,
    ssat_group_size, ReductionOutput, Role,
};
use crate::stats::BranchStats;
use crate::treedepth::{
    dfs_treedepth, exact_treedepth, mark_no_certificate, marking_bound,
    prune_to_q_plus_1_colorable, DEFAULT_EXACT_CAP,
};
use crate::vc::solve_vc;

#[derive(Parser, Debug)]
#[command(name = "modcolor", version, about = "Exact parameterized q-(list-)coloring")]
struct Cli {
    /// Print the run report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide colorability.
    #[command(subcommand)]
    Solve(SolveCmd),
    /// Write generated instances.
    #[command(subcommand)]
    Gen(GenCmd),
    /// Check artifacts.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Extract No-certificates.
    #[command(subcommand)]
    Certify(CertifyCmd),
    /// Measure node counts over an instance family and fit `C · b^k`.
    Bench(BenchArgs),
    /// Compare two solvers on random instances.
    Fuzz(FuzzArgs),
}

#[derive(Args, Debug)]
struct InstanceArgs {
    #[arg(long)]
    graph: PathBuf,
    /// List file; without it every vertex gets `[q]`.
    #[arg(long)]
    lists: Option<PathBuf>,
    #[arg(long)]
    q: Option<u32>,
}

#[derive(Args, Debug)]
struct WitnessArgs {
    /// Where to write the witness coloring.
    #[arg(long, short = 'o')]
    out: Option<PathBuf>,
    /// Include branching counters.
    #[arg(long)]
    stats: bool,
}

#[derive(Subcommand, Debug)]
enum SolveCmd {
    /// Exhaustive backtracking.
    Brute {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        witness: WitnessArgs,
    },
    /// Chromatic number by inclusion-exclusion; with `--q`, decides `χ ≤ q`.
    Chromatic {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        q: Option<u32>,
    },
    /// Branching on a given vertex cover.
    Vc {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        modulator: PathBuf,
        #[arg(long)]
        q: u32,
        #[command(flatten)]
        witness: WitnessArgs,
    },
    /// Branching on No-certificates around a modulator.
    Nocert {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        modulator: PathBuf,
        /// Class of the graph minus the modulator; defaults to the class in
        /// the modulator file.
        #[arg(long)]
        class: Option<ClassTag>,
        /// Largest certificate order.
        #[arg(long, default_value_t = 1)]
        g: usize,
        /// Certificate set file to use instead of enumerating one.
        #[arg(long)]
        zeta: Option<PathBuf>,
        /// Keep only inclusion-minimal certificates.
        #[arg(long)]
        minimal: bool,
        #[command(flatten)]
        witness: WitnessArgs,
    },
}

#[derive(Subcommand, Debug)]
enum GenCmd {
    /// 3-SAT to 3q-coloring with a vertex-cover modulator.
    Reduce3sat {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        q: u32,
        /// Keep the list instance instead of adding the palette clique.
        #[arg(long)]
        lists_only: bool,
        #[arg(long, short = 'o')]
        out: PathBuf,
    },
    /// s-SAT to q-list-coloring with a linear-forest modulator.
    Reducessat {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 1)]
        p: usize,
        /// Chain the clause paths into one path.
        #[arg(long)]
        join_paths: bool,
        /// Convert to plain coloring with a palette clique.
        #[arg(long)]
        palette_clique: bool,
        #[arg(long, short = 'o')]
        out: PathBuf,
    },
    /// A single clause path for the color vector `c`.
    PathGadget {
        #[arg(long, value_delimiter = ',', required = true)]
        c: Vec<Color>,
        #[arg(long)]
        q: u32,
        #[arg(long, short = 'o')]
        out: PathBuf,
    },
    /// The No-certificate set of a class.
    Zeta {
        #[arg(long)]
        class: ClassTag,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        g: usize,
        #[arg(long)]
        minimal: bool,
        #[arg(long, short = 'o')]
        out: PathBuf,
    },
    /// A random instance with a modulator to the given class.
    Random {
        #[arg(long)]
        class: ClassTag,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: u32,
        /// Probability of each edge touching the modulator.
        #[arg(long, default_value_t = 0.5)]
        edge_p: f64,
        /// Probability of each color joining each list.
        #[arg(long, default_value_t = 1.0)]
        list_p: f64,
        #[arg(long, short = 'o')]
        out: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Proper coloring respecting lists.
    Coloring {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        lists: Option<PathBuf>,
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Graph minus the modulator lies in the class.
    Modulator {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        modulator: PathBuf,
        #[arg(long)]
        class: Option<ClassTag>,
    },
    /// The graph (minus an optional modulator) lies in the class.
    Class {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        class: ClassTag,
        #[arg(long)]
        modulator: Option<PathBuf>,
    },
    /// The marked subinstance is not list-colorable.
    Certificate {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Marked set, in modulator format.
        #[arg(long)]
        marked: PathBuf,
    },
    /// Every edge joins an ancestor and a descendant.
    Decomposition {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        decomposition: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum CertifyCmd {
    /// Mark a No-certificate of size at most `1 + q + ... + q^(t-1)`.
    Treedepth {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Decomposition of the input graph; computed when absent.
        #[arg(long)]
        decomposition: Option<PathBuf>,
        /// Where to write the marked set.
        #[arg(long, short = 'o')]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long)]
    solver: BenchSolver,
    /// `cover` or a graph class.
    #[arg(long, default_value = "cover")]
    family: String,
    #[arg(long, default_value_t = 3)]
    q: u32,
    #[arg(long, default_value_t = 6)]
    k_min: usize,
    #[arg(long, default_value_t = 14)]
    k_max: usize,
    #[arg(long, default_value_t = 3)]
    per_k: usize,
    #[arg(long, default_value_t = 1)]
    g: usize,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    workers: Option<usize>,
    /// CSV destination; printed when absent.
    #[arg(long, short = 'o')]
    out: Option<PathBuf>,
}

// variant names double as the command-line values
#[allow(clippy::enum_variant_names)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum FuzzPair {
    NocertBrute,
    VcBrute,
    IeBrute,
}

#[derive(Args, Debug)]
struct FuzzArgs {
    #[arg(long, value_enum)]
    pair: FuzzPair,
    #[arg(long, default_value_t = 1000)]
    count: usize,
    #[arg(long, default_value = "independent")]
    class: ClassTag,
    #[arg(long, default_value_t = 3)]
    q: u32,
    #[arg(long, default_value_t = 12)]
    n_max: usize,
    #[arg(long, default_value_t = 6)]
    k_max: usize,
    #[arg(long, default_value_t = 1)]
    g: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Yes,
    No,
    Pass,
    Fail,
    Ok,
}

impl Decision {
    pub fn exit_code(self) -> i32 {
        match self {
            Decision::Yes | Decision::Pass | Decision::Ok => 0,
            Decision::No | Decision::Fail => 1,
        }
    }
}

/// Outcome of one command. Maps are ordered, so the JSON form is stable.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub format_version: u32,
    pub command: Vec<String>,
    pub decision: Decision,
    pub outputs: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<BranchStats>,
    /// Per-invariant verification flags.
    pub checks: BTreeMap<String, bool>,
    pub messages: Vec<String>,
    pub wall_ms: f64,
    /// Printed after the report in text mode (witness colorings, CSV).
    #[serde(skip)]
    pub body: Option<String>,
}

impl RunReport {
    fn new(decision: Decision) -> Self {
        RunReport {
            format_version: io::FORMAT_VERSION,
            command: Vec::new(),
            decision,
            outputs: BTreeMap::new(),
            stats: None,
            checks: BTreeMap::new(),
            messages: Vec::new(),
            wall_ms: 0.0,
            body: None,
        }
    }

    fn output(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.outputs.insert(
            key.to_string(),
            serde_json::to_value(value).expect("report values serialize"),
        );
        self
    }

    fn check(&mut self, key: &str, ok: bool) -> &mut Self {
        self.checks.insert(key.to_string(), ok);
        self
    }

    fn message(&mut self, text: impl Into<String>) -> &mut Self {
        self.messages.push(text.into());
        self
    }

    fn render_text(&self) -> String {
        let mut out = format!("decision: {}\n", serde_json::to_value(self.decision).expect("enum").as_str().expect("string"));
        for (k, v) in &self.outputs {
            out.push_str(&format!("{k}: {v}\n"));
        }
        if let Some(s) = &self.stats {
            out.push_str(&format!(
                "stats: nodes_expanded={} subsets_enumerated={} depth={}\n",
                s.nodes_expanded, s.subsets_enumerated, s.depth
            ));
        }
        for (k, v) in &self.checks {
            out.push_str(&format!("check {k}: {}\n", if *v { "ok" } else { "FAILED" }));
        }
        for m in &self.messages {
            out.push_str(&format!("note: {m}\n"));
        }
        if let Some(body) = &self.body {
            out.push_str(body);
        }
        out
    }
}

/// Runs one command line (including the program name) and returns the exit
/// code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let help = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = if help {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return if help { 0 } else { 2 };
        }
    };
    let start = Instant::now();
    match execute(&cli) {
        Ok(mut report) => {
            report.command = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
            report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
            let text = if cli.json {
                let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
                s.push('\n');
                s
            } else {
                report.render_text()
            };
            let _ = out.write_all(text.as_bytes());
            report.decision.exit_code()
        }
        Err(e) => {
            if cli.json {
                let _ = writeln!(out, "{}", json!({ "format_version": io::FORMAT_VERSION, "error": e.to_string() }));
            }
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn execute(cli: &Cli) -> Result<RunReport> {
    match &cli.command {
        Command::Solve(cmd) => solve(cmd),
        Command::Gen(cmd) => gen(cmd, cli.seed),
        Command::Verify(cmd) => verify(cmd),
        Command::Certify(cmd) => certify(cmd),
        Command::Bench(args) => bench(args, cli.seed),
        Command::Fuzz(args) => fuzz(args, cli.seed),
    }
}

fn load_instance(args: &InstanceArgs) -> Result<(Graph, ListAssignment)> {
    let g = io::load_graph(&args.graph)?;
    let lists = match &args.lists {
        Some(path) => {
            let lists = io::load_lists(path)?;
            if let Some(q) = args.q.filter(|&q| q != lists.q()) {
                return Err(Error::invalid(format!(
                    "--q {q} disagrees with q = {} in {}",
                    lists.q(),
                    path.display()
                )));
            }
            lists
        }
        None => {
            let q = args
                .q
                .ok_or_else(|| Error::invalid("either --lists or --q is required"))?;
            ListAssignment::full(g.vertex_count(), q)
        }
    };
    lists.check_graph(&g)?;
    Ok((g, lists))
}

fn load_modulator_for(g: &Graph, path: &Path) -> Result<(VertexSet, Option<ClassTag>)> {
    let (set, tag) = io::load_modulator(path)?;
    if set.universe() != g.vertex_count() {
        return Err(Error::invalid(format!(
            "{}: modulator is over {} vertices, graph has {}",
            path.display(),
            set.universe(),
            g.vertex_count()
        )));
    }
    Ok((set, tag))
}

/// Fills in a decision report, writing or attaching the witness.
fn decide(
    coloring: Option<Coloring>,
    q: u32,
    witness: &WitnessArgs,
    stats: Option<BranchStats>,
    check: impl FnOnce(&Coloring) -> bool,
) -> Result<RunReport> {
    let mut report = RunReport::new(if coloring.is_some() { Decision::Yes } else { Decision::No });
    if witness.stats {
        report.stats = stats;
    }
    if let Some(c) = coloring {
        report.check("witness_valid", check(&c));
        match &witness.out {
            Some(path) => {
                io::write_text(path, &io::write_coloring(&c, q))?;
                report.output("witness", path.display().to_string());
            }
            None => {
                report.output("coloring", c.colors());
                report.body = Some(io::write_coloring(&c, q));
            }
        }
    }
    Ok(report)
}

fn solve(cmd: &SolveCmd) -> Result<RunReport> {
    match cmd {
        SolveCmd::Brute { instance, witness } => {
            let (g, lists) = load_instance(instance)?;
            let out = brute_force_with_budget(&g, &lists, node_budget())?;
            let stats = BranchStats {
                nodes_expanded: out.nodes,
                ..BranchStats::default()
            };
            decide(out.coloring, lists.q(), witness, Some(stats), |c| {
                check_coloring(&g, &lists, c).is_ok()
            })
        }
        SolveCmd::Chromatic { graph, q } => {
            let g = io::load_graph(graph)?;
            let chi = if g.vertex_count() <= DEFAULT_IE_CAP {
                chromatic_number_ie(&g)?
            } else {
                chromatic_number_brute(&g)? as usize
            };
            let decision = match q {
                Some(q) if chi > *q as usize => Decision::No,
                Some(_) => Decision::Yes,
                None => Decision::Ok,
            };
            let mut report = RunReport::new(decision);
            report.output("chromatic_number", chi);
            Ok(report)
        }
        SolveCmd::Vc {
            graph,
            modulator,
            q,
            witness,
        } => {
            let g = io::load_graph(graph)?;
            let (cover, _) = load_modulator_for(&g, modulator)?;
            let out = solve_vc(&g, &cover, *q)?;
            let lists = ListAssignment::full(g.vertex_count(), *q);
            let mut report = decide(out.coloring, *q, witness, Some(out.stats), |c| {
                check_coloring(&g, &lists, c).is_ok()
            })?;
            if witness.stats {
                report.output("top_level_subsets", out.top_level_subsets);
            }
            Ok(report)
        }
        SolveCmd::Nocert {
            instance,
            modulator,
            class,
            g: order,
            zeta,
            minimal,
            witness,
        } => {
            let (g, lists) = load_instance(instance)?;
            let (x, file_tag) = load_modulator_for(&g, modulator)?;
            let tag = class.or(file_tag).ok_or_else(|| {
                Error::invalid("no class given: pass --class or put it in the modulator header")
            })?;
            let set = match zeta {
                Some(path) => {
                    let set = io::load_zeta(path)?;
                    if set.tag != tag || set.q != lists.q() {
                        return Err(Error::invalid(format!(
                            "{}: certificate set is for class {} with q = {}, instance needs {tag} with q = {}",
                            path.display(),
                            set.tag,
                            set.q,
                            lists.q()
                        )));
                    }
                    set
                }
                None => build_certificate_set(tag, lists.q(), *order, *minimal)?,
            };
            let out = solve_nocert_with(&g, &lists, &x, &set, SolveOptions::default())?;
            let mut report = decide(out.coloring, lists.q(), witness, Some(out.stats), |c| {
                check_coloring(&g, &lists, c).is_ok()
            })?;
            report.output("certificates", set.len());
            if witness.stats {
                report.output("modulator_leaves", out.modulator_leaves);
                report.output("extension_failures", out.extension_failures);
            }
            Ok(report)
        }
    }
}

struct Written {
    dir: PathBuf,
    files: Vec<String>,
}

impl Written {
    fn new(dir: &Path) -> Self {
        Written {
            dir: dir.to_path_buf(),
            files: Vec::new(),
        }
    }

    fn put(&mut self, name: &str, text: &str) -> Result<()> {
        let path = self.dir.join(name);
        io::write_text(&path, text)?;
        self.files.push(path.display().to_string());
        Ok(())
    }
}

fn write_reduction(out: &ReductionOutput, dir: &Path, report: &mut RunReport) -> Result<()> {
    let mut w = Written::new(dir);
    w.put("graph.col", &io::write_graph(&out.graph))?;
    w.put("lists.txt", &io::write_lists(&out.lists))?;
    w.put("modulator.txt", &io::write_modulator(&out.modulator))?;
    w.put("meta.jsonl", &io::write_meta(&Meta::of(out)))?;
    report
        .output("vertices", out.vertex_count())
        .output("edges", out.graph.edge_count())
        .output("modulator_size", out.modulator.size())
        .output("class", out.modulator.target)
        .output("roles", role_summary(&out.roles))
        .output("files", w.files);
    Ok(())
}

fn gen(cmd: &GenCmd, seed: u64) -> Result<RunReport> {
    let mut report = RunReport::new(Decision::Ok);
    match cmd {
        GenCmd::Reduce3sat {
            cnf,
            q,
            lists_only,
            out,
        } => {
            let f = io::load_cnf(cnf)?;
            let lists = reduce_3sat_lists(&f, *q)?;
            let structural = verify_modulator(&lists.graph, &lists.modulator.vertices, ClassTag::Independent);
            let result = if *lists_only { lists } else { attach_palette_clique(lists)? };
            let bits = q.trailing_zeros() as usize;
            let palette = if *lists_only { 0 } else { 3 * *q as usize };
            report.check("remainder_independent", structural);
            report.check(
                "modulator_size_formula",
                result.modulator.size() == 3 * f.num_vars().div_ceil(bits) + palette,
            );
            write_reduction(&result, out, &mut report)?;
        }
        GenCmd::Reducessat {
            cnf,
            q,
            p,
            join_paths: join,
            palette_clique,
            out,
        } => {
            let f = io::load_cnf(cnf)?;
            let b = ssat_group_size(*q, *p)?;
            let mut result = reduce_ssat(&f, *q, *p)?;
            report.check("remainder_linear_forest", remainder_in(&result, ClassTag::LinearForest)?);
            if *join {
                result = join_paths(result)?;
                report.check("remainder_path", remainder_in(&result, ClassTag::Path)?);
            }
            if *palette_clique {
                result = attach_palette_clique(result)?;
            }
            let palette = if *palette_clique { *q as usize } else { 0 };
            report.check(
                "modulator_size_formula",
                result.modulator.size() == p * f.num_vars().div_ceil(b) + palette,
            );
            report.output("group_size", b);
            write_reduction(&result, out, &mut report)?;
        }
        GenCmd::PathGadget { c, q, out } => {
            let gadget = build_clause_path(c, *q)?;
            let mut w = Written::new(out);
            w.put("graph.col", &io::write_graph(&gadget.path))?;
            w.put("lists.txt", &io::write_lists(&gadget.lists))?;
            let distinguished: Vec<usize> = gadget.distinguished.iter().map(|v| v + 1).collect();
            report
                .output("vertices", gadget.path.vertex_count())
                .output("distinguished", distinguished)
                .output("files", w.files);
        }
        GenCmd::Zeta {
            class,
            q,
            g,
            minimal,
            out,
        } => {
            let set = build_certificate_set(*class, *q, *g, *minimal)?;
            io::write_text(out, &io::write_zeta(&set))?;
            report
                .output("certificates", set.len())
                .output("files", [out.display().to_string()]);
        }
        GenCmd::Random {
            class,
            n,
            k,
            q,
            edge_p,
            list_p,
            out,
        } => {
            if k > n {
                return Err(Error::invalid(format!("k = {k} exceeds n = {n}")));
            }
            for (name, p) in [("edge-p", edge_p), ("list-p", list_p)] {
                if !(0.0..=1.0).contains(p) {
                    return Err(Error::invalid(format!("--{name} {p} is not a probability")));
                }
            }
            let inst = random_modulator_instance(*class, *n, *k, *q, *edge_p, *list_p, &mut rng(seed));
            let mut w = Written::new(out);
            w.put("graph.col", &io::write_graph(&inst.graph))?;
            w.put("lists.txt", &io::write_lists(&inst.lists))?;
            w.put("modulator.txt", &io::write_modulator(&inst.modulator))?;
            report
                .output("vertices", *n)
                .output("edges", inst.graph.edge_count())
                .output("files", w.files);
        }
    }
    Ok(report)
}

fn remainder_in(out: &ReductionOutput, tag: ClassTag) -> Result<bool> {
    let (rest, _) = out.graph.induced_subgraph(&out.modulator.vertices.complement())?;
    Ok(is_member(&rest, tag))
}

fn verdict(ok: bool, failure: Option<String>) -> RunReport {
    let mut report = RunReport::new(if ok { Decision::Pass } else { Decision::Fail });
    if let Some(msg) = failure {
        report.message(msg);
    }
    report
}

fn verify(cmd: &VerifyCmd) -> Result<RunReport> {
    match cmd {
        VerifyCmd::Coloring {
            graph,
            lists,
            coloring,
        } => {
            let g = io::load_graph(graph)?;
            let (c, q) = io::load_coloring(coloring)?;
            let lists = match lists {
                Some(path) => io::load_lists(path)?,
                None => ListAssignment::full(g.vertex_count(), q),
            };
            let result = check_coloring(&g, &lists, &c);
            Ok(verdict(result.is_ok(), result.err().map(|v| v.to_string())))
        }
        VerifyCmd::Modulator {
            graph,
            modulator,
            class,
        } => {
            let g = io::load_graph(graph)?;
            let (x, file_tag) = load_modulator_for(&g, modulator)?;
            let tag = class
                .or(file_tag)
                .ok_or_else(|| Error::invalid("no class given: pass --class or put it in the modulator header"))?;
            let ok = verify_modulator(&g, &x, tag);
            let mut report = verdict(ok, (!ok).then(|| format!("graph minus modulator is not {tag}")));
            report.output("modulator_size", x.len());
            Ok(report)
        }
        VerifyCmd::Class {
            graph,
            class,
            modulator,
        } => {
            let g = io::load_graph(graph)?;
            let rest = match modulator {
                Some(path) => {
                    let (x, _) = load_modulator_for(&g, path)?;
                    g.induced_subgraph(&x.complement())?.0
                }
                None => g,
            };
            let ok = is_member(&rest, *class);
            let mut report = verdict(ok, (!ok).then(|| format!("graph is not {class}")));
            report.output("vertices", rest.vertex_count());
            Ok(report)
        }
        VerifyCmd::Certificate { instance, marked } => {
            let (g, lists) = load_instance(instance)?;
            let (m, _) = load_modulator_for(&g, marked)?;
            let vertices = m.to_vec();
            let colorable = is_list_colorable(&g.induced_on(&vertices), &lists.restrict(&vertices))?;
            let mut report = verdict(
                !colorable,
                colorable.then(|| "marked subinstance is list-colorable".to_string()),
            );
            report.output("marked", vertices.len());
            Ok(report)
        }
        VerifyCmd::Decomposition {
            graph,
            decomposition,
        } => {
            let g = io::load_graph(graph)?;
            let dec = io::load_decomposition(decomposition)?;
            let failure = dec.violation(&g);
            let mut report = verdict(failure.is_none(), failure);
            report.output("depth", dec.depth());
            Ok(report)
        }
    }
}

fn certify(cmd: &CertifyCmd) -> Result<RunReport> {
    let CertifyCmd::Treedepth {
        instance,
        decomposition,
        out,
    } = cmd;
    let (g, lists) = load_instance(instance)?;
    if let Some(c) = brute_force_list_color(&g, &lists)? {
        let mut report = RunReport::new(Decision::Fail);
        report.message("instance is list-colorable; no certificate exists");
        report.output("coloring", c.colors());
        return Ok(report);
    }
    let sub = prune_to_q_plus_1_colorable(&g, &lists)?;
    let dec = match decomposition {
        Some(path) => {
            let dec = io::load_decomposition(path)?;
            if let Some(why) = dec.violation(&g) {
                return Err(Error::invalid(format!("{}: {why}", path.display())));
            }
            dec.restrict(&sub.vertices)?
        }
        None if sub.len() <= DEFAULT_EXACT_CAP => exact_treedepth(&sub.graph)?.1,
        None => dfs_treedepth(&sub.graph),
    };
    let local = mark_no_certificate(&sub.graph, &sub.lists, &dec)?;
    let marked: Vec<usize> = local.iter().map(|v| sub.vertices[v]).collect();
    let bound = marking_bound(lists.q(), dec.depth());
    let still_no = !is_list_colorable(&g.induced_on(&marked), &lists.restrict(&marked))?;
    let mut report = RunReport::new(Decision::Pass);
    report
        .output("pruned_vertices", sub.len())
        .output("depth", dec.depth())
        .output("marked", marked.len())
        .output("bound", bound)
        .output("vertices", marked.iter().map(|v| v + 1).collect::<Vec<_>>())
        .check("within_bound", marked.len() as u64 <= bound)
        .check("marked_is_no", still_no);
    if let Some(path) = out {
        let set = VertexSet::from_vertices(g.vertex_count(), marked.iter().copied())?;
        let text = io::write_modulator(&Modulator::new(set, ClassTag::Independent));
        // a marked set has no target class; drop it from the header
        let text = text.replacen(&format!(" {}\n", ClassTag::Independent), "\n", 1);
        io::write_text(path, &text)?;
        report.output("files", [path.display().to_string()]);
    }
    if report.checks.values().any(|ok| !ok) {
        report.decision = Decision::Fail;
    }
    Ok(report)
}

fn bench(args: &BenchArgs, seed: u64) -> Result<RunReport> {
    let family = match args.family.as_str() {
        "cover" => Family::Cover,
        other => Family::Class(other.parse()?),
    };
    let cfg = BenchConfig {
        solver: args.solver,
        family,
        q: args.q,
        k_min: args.k_min,
        k_max: args.k_max,
        per_k: args.per_k,
        seed,
        workers: args
            .workers
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())),
        g: args.g,
    };
    let result = run_bench(&cfg)?;
    let csv = rows_to_csv(&result.rows);
    let mut report = RunReport::new(Decision::Ok);
    report
        .output("instances", result.rows.len())
        .output("reference_base", result.reference_base);
    if let Some(fit) = result.fit {
        report
            .output("fitted_base", fit.base)
            .output("fitted_constant", fit.constant)
            .output("r_squared", fit.r_squared);
    }
    match &args.out {
        Some(path) => {
            io::write_text(path, &csv)?;
            report.output("files", [path.display().to_string()]);
        }
        None => report.body = Some(csv),
    }
    Ok(report)
}

struct FuzzTally {
    agree: usize,
    disagree: usize,
    first_mismatch: Option<u64>,
    bad_witness: usize,
    unsound_skips: usize,
    skips_checked: usize,
    yes: usize,
}

fn fuzz(args: &FuzzArgs, seed: u64) -> Result<RunReport> {
    if args.n_max == 0 {
        return Err(Error::invalid("--n-max must be positive"));
    }
    let set: Option<NoCertificateSet> = match args.pair {
        FuzzPair::NocertBrute => Some(build_certificate_set(args.class, args.q, args.g, false)?),
        _ => None,
    };
    let mut t = FuzzTally {
        agree: 0,
        disagree: 0,
        first_mismatch: None,
        bad_witness: 0,
        unsound_skips: 0,
        skips_checked: 0,
        yes: 0,
    };
    for i in 0..args.count {
        let s = derive_seed(seed, i as u64);
        let mut r = rng(s);
        let n = rand::Rng::gen_range(&mut r, 1..=args.n_max);
        let k = rand::Rng::gen_range(&mut r, 0..=args.k_max.min(n));
        let same = match args.pair {
            FuzzPair::IeBrute => {
                let g = random_graph(n.min(DEFAULT_IE_CAP), 0.5, &mut r);
                chromatic_number_ie(&g)? == chromatic_number_brute(&g)? as usize
            }
            FuzzPair::VcBrute => {
                let inst = random_modulator_instance(ClassTag::Independent, n, k, args.q, 0.5, 1.0, &mut r);
                let out = solve_vc(&inst.graph, &inst.modulator.vertices, args.q)?;
                if let Some(c) = &out.coloring {
                    t.bad_witness += usize::from(check_coloring(&inst.graph, &inst.lists, c).is_err());
                }
                t.yes += usize::from(out.colorable);
                out.colorable == is_q_colorable(&inst.graph, args.q)?
            }
            FuzzPair::NocertBrute => {
                let inst = random_modulator_instance(args.class, n, k, args.q, 0.5, 0.8, &mut r);
                let out = solve_nocert_with(
                    &inst.graph,
                    &inst.lists,
                    &inst.modulator.vertices,
                    set.as_ref().expect("built above"),
                    SolveOptions { record_trace: true },
                )?;
                if let Some(c) = &out.coloring {
                    t.bad_witness += usize::from(check_coloring(&inst.graph, &inst.lists, c).is_err());
                }
                for event in &out.trace {
                    if let TraceEvent::Skipped { instance, assignment } = event {
                        let mut lists = instance.lists.clone();
                        for &(v, c) in assignment {
                            let forced = if lists.list(v).contains(c) { ColorSet::single(c) } else { ColorSet::EMPTY };
                            lists.set(v, forced);
                        }
                        t.skips_checked += 1;
                        t.unsound_skips += usize::from(is_list_colorable(&instance.graph, &lists)?);
                    }
                }
                t.yes += usize::from(out.colorable);
                out.colorable == is_list_colorable(&inst.graph, &inst.lists)?
            }
        };
        if same {
            t.agree += 1;
        } else {
            t.disagree += 1;
            t.first_mismatch.get_or_insert(s);
        }
    }
    let ok = t.disagree == 0 && t.bad_witness == 0 && t.unsound_skips == 0;
    let mut report = RunReport::new(if ok { Decision::Pass } else { Decision::Fail });
    report
        .output("instances", args.count)
        .output("agree", t.agree)
        .output("disagree", t.disagree)
        .check("decisions_agree", t.disagree == 0)
        .check("witnesses_valid", t.bad_witness == 0);
    if args.pair == FuzzPair::NocertBrute {
        report
            .output("yes_instances", t.yes)
            .output("skipped_colorings", t.skips_checked);
        report.check("skipped_colorings_unextendible", t.unsound_skips == 0);
    }
    if args.pair == FuzzPair::VcBrute {
        report.output("yes_instances", t.yes);
    }
    if let Some(s) = t.first_mismatch {
        report.output("first_mismatch_seed", s);
    }
    Ok(report)
}

/// Vertex counts per role.
pub fn role_summary(roles: &[Role]) -> BTreeMap<&'static str, usize> {
    let mut out = BTreeMap::new();
    for r in roles {
        let key = match r {
            Role::Variable { .. } => "variable",
            Role::Propagation { .. } => "propagation",
            Role::Clause { .. } => "clause",
            Role::Path { .. } => "path",
            Role::Connector => "connector",
            Role::Palette { .. } => "palette",
        };
        *out.entry(key).or_insert(0) += 1;
    }
    out
}
