//! Growth measurements: run a solver over an instance family for a range
//! of parameters and fit `nodes ≈ C · b^k`.

use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gen::{derive_seed, random_modulator_instance, rng, vc_bench_instance};
use crate::graph::{ClassTag, Graph, VertexSet};
use crate::nocert::{build_certificate_set, solve_nocert, NoCertificateSet};
use crate::oracle::{brute_force_with_budget, node_budget, ListAssignment};
use crate::vc::solve_vc;

/// Bumped whenever the CSV columns change.
pub const CSV_VERSION: u32 = 1;

pub const CSV_HEADER: &str =
    "version,id,solver,class,q,k,n,seed,colorable,nodes_expanded,subsets_enumerated,top_level_subsets,wall_us";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BenchSolver {
    Vc,
    Brute,
    Nocert,
}

impl BenchSolver {
    pub fn name(self) -> &'static str {
        match self {
            BenchSolver::Vc => "vc",
            BenchSolver::Brute => "brute",
            BenchSolver::Nocert => "nocert",
        }
    }
}

impl FromStr for BenchSolver {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vc" => Ok(BenchSolver::Vc),
            "brute" => Ok(BenchSolver::Brute),
            "nocert" => Ok(BenchSolver::Nocert),
            _ => Err(Error::invalid(format!("unknown bench solver '{s}'"))),
        }
    }
}

/// Which instances to generate. `Cover` is the vertex-cover family of
/// [`vc_bench_instance`]; `Class` draws `2k`-vertex instances whose
/// modulator of size `k` leaves a random member of the class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Cover,
    Class(ClassTag),
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub solver: BenchSolver,
    pub family: Family,
    pub q: u32,
    pub k_min: usize,
    pub k_max: usize,
    pub per_k: usize,
    pub seed: u64,
    pub workers: usize,
    /// Certificate order for the No-certificate solver.
    pub g: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub id: usize,
    pub solver: BenchSolver,
    pub class: ClassTag,
    pub q: u32,
    pub k: usize,
    pub n: usize,
    pub seed: u64,
    pub colorable: bool,
    pub nodes_expanded: u64,
    pub subsets_enumerated: u64,
    pub top_level_subsets: u64,
    pub wall_us: u128,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Fit {
    /// Fitted base `b`.
    pub base: f64,
    /// Fitted constant `C`.
    pub constant: f64,
    pub r_squared: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    /// Fit of per-`k` mean node counts against `k`.
    pub fit: Option<Fit>,
    /// The reference base the fit is compared with.
    pub reference_base: f64,
}

/// Least squares on `(x, ln y)`. Needs two distinct `x` and positive `y`.
pub fn fit_exponential(points: &[(f64, f64)]) -> Option<Fit> {
    if points.iter().any(|&(_, y)| y <= 0.0) {
        return None;
    }
    let n = points.len() as f64;
    let (sx, sy) = points
        .iter()
        .fold((0.0, 0.0), |(a, b), &(x, y)| (a + x, b + y.ln()));
    let (mx, my) = (sx / n, sy / n);
    let sxx: f64 = points.iter().map(|&(x, _)| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = points.iter().map(|&(x, y)| (x - mx) * (y.ln() - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_tot: f64 = points.iter().map(|&(_, y)| (y.ln() - my).powi(2)).sum();
    let ss_res: f64 = points
        .iter()
        .map(|&(x, y)| (y.ln() - intercept - slope * x).powi(2))
        .sum();
    let r_squared = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    Some(Fit {
        base: slope.exp(),
        constant: intercept.exp(),
        r_squared,
    })
}

/// Expected branching base for a configuration: `q - 1.11`
/// for the vertex-cover solver (`2^{0.9183}` ≈ 1.89 at `q = 3`), the
/// certificate branching factor `(q^{qg} - 1)^{1/(qg)}` for the
/// No-certificate solver, and `q` for plain search.
pub fn reference_base(solver: BenchSolver, q: u32, g: usize) -> f64 {
    match solver {
        BenchSolver::Vc if q == 3 => 2f64.powf(0.9183),
        BenchSolver::Vc => f64::from(q) - 1.11,
        BenchSolver::Nocert => {
            let e = (q as usize * g) as f64;
            (f64::from(q).powf(e) - 1.0).powf(1.0 / e)
        }
        BenchSolver::Brute => f64::from(q),
    }
}

struct Job {
    id: usize,
    k: usize,
    seed: u64,
}

pub fn run_bench(cfg: &BenchConfig) -> Result<BenchReport> {
    if cfg.k_min > cfg.k_max {
        return Err(Error::invalid("k range is empty"));
    }
    if cfg.solver == BenchSolver::Vc && cfg.family != Family::Cover {
        return Err(Error::invalid("the vertex-cover solver needs the cover family"));
    }
    let class = match cfg.family {
        Family::Cover => ClassTag::Independent,
        Family::Class(tag) => tag,
    };
    let set = match cfg.solver {
        BenchSolver::Nocert => Some(build_certificate_set(class, cfg.q, cfg.g, false)?),
        _ => None,
    };
    let mut jobs = Vec::new();
    for k in cfg.k_min..=cfg.k_max {
        for _ in 0..cfg.per_k {
            let id = jobs.len();
            jobs.push(Job {
                id,
                k,
                seed: derive_seed(cfg.seed, id as u64),
            });
        }
    }

    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Result<BenchRow>>> = Mutex::new(Vec::with_capacity(jobs.len()));
    std::thread::scope(|scope| {
        for _ in 0..cfg.workers.max(1) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(job) = jobs.get(i) else { break };
                let row = run_one(cfg, class, set.as_ref(), job);
                results.lock().expect("no worker panicked").push(row);
            });
        }
    });
    let mut rows = results
        .into_inner()
        .expect("no worker panicked")
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|r| r.id);

    let mut points = Vec::new();
    for k in cfg.k_min..=cfg.k_max {
        let nodes: Vec<u64> = rows.iter().filter(|r| r.k == k).map(|r| r.nodes_expanded).collect();
        if !nodes.is_empty() {
            points.push((k as f64, nodes.iter().sum::<u64>() as f64 / nodes.len() as f64));
        }
    }
    Ok(BenchReport {
        rows,
        fit: fit_exponential(&points),
        reference_base: reference_base(cfg.solver, cfg.q, cfg.g),
    })
}

fn run_one(cfg: &BenchConfig, class: ClassTag, set: Option<&NoCertificateSet>, job: &Job) -> Result<BenchRow> {
    let mut r = rng(job.seed);
    let (graph, lists, cover): (Graph, ListAssignment, VertexSet) = match cfg.family {
        Family::Cover => {
            let (g, x) = vc_bench_instance(job.k, cfg.q, &mut r);
            let lists = ListAssignment::full(g.vertex_count(), cfg.q);
            (g, lists, x)
        }
        Family::Class(tag) => {
            let inst = random_modulator_instance(tag, 2 * job.k, job.k, cfg.q, 0.5, 1.0, &mut r);
            (inst.graph, inst.lists, inst.modulator.vertices)
        }
    };
    let start = Instant::now();
    let (colorable, nodes, subsets, top) = match cfg.solver {
        BenchSolver::Vc => {
            let out = solve_vc(&graph, &cover, cfg.q)?;
            (out.colorable, out.stats.nodes_expanded, out.stats.subsets_enumerated, out.top_level_subsets)
        }
        BenchSolver::Brute => {
            let out = brute_force_with_budget(&graph, &lists, node_budget())?;
            (out.coloring.is_some(), out.nodes, 0, 0)
        }
        BenchSolver::Nocert => {
            let out = solve_nocert(&graph, &lists, &cover, set.expect("built for nocert"))?;
            (out.colorable, out.stats.nodes_expanded, out.stats.subsets_enumerated, 0)
        }
    };
    Ok(BenchRow {
        id: job.id,
        solver: cfg.solver,
        class,
        q: cfg.q,
        k: job.k,
        n: graph.vertex_count(),
        seed: job.seed,
        colorable,
        nodes_expanded: nodes,
        subsets_enumerated: subsets,
        top_level_subsets: top,
        wall_us: start.elapsed().as_micros(),
    })
}

pub fn rows_to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{CSV_VERSION},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.id,
            r.solver.name(),
            r.class,
            r.q,
            r.k,
            r.n,
            r.seed,
            r.colorable,
            r.nodes_expanded,
            r.subsets_enumerated,
            r.top_level_subsets,
            r.wall_us
        );
    }
    out
}
