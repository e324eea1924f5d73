use std::f64::consts::PI;

use qwsearch::bipartite::{
    class_subspace_probe, fastest_regime, initial_state, reduced_hamiltonian, reduced_to_full,
    BipartiteSearch, Mode,
};
use qwsearch::evolve::{
    overlap_profile, search_hamiltonian, success_probability, EigenSelection, Probe, Propagator,
    QuantumState, SearchInstance,
};
use qwsearch::graph::BipartiteSpec;
use qwsearch::spin::{certify_walk_equivalence, CouplingConstants, WalkClass, EQUIVALENCE_TOL};
use qwsearch::{CMatrix, C64};

use crate::config::{check_full_size, RunConfig, SweepAxis};
use crate::error::CliError;

pub const SIMULATE_HEADER: [&str; 6] = ["t", "p_success", "p_a", "p_b", "p_c", "p_d"];
pub const SWEEP_HEADER: [&str; 3] = ["gamma", "t_peak", "p_peak"];
pub const OVERLAP_HEADER: [&str; 5] = ["gamma", "n", "S_n", "L_n", "R_n"];
pub const RUNTIME_HEADER: [&str; 8] = [
    "sweep_key",
    "t_La",
    "t_Lb",
    "t_A",
    "t_Qa",
    "t_Qb",
    "fastest",
    "near_regular_flag",
];

/// Result of a subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub csv: String,
    pub warnings: Vec<String>,
    /// False only when a verification did not confirm its expectation.
    pub passed: bool,
}

impl Report {
    fn ok(csv: String) -> Self {
        Self {
            csv,
            warnings: Vec::new(),
            passed: true,
        }
    }
}

fn write_csv<I>(header: &[&str], rows: I) -> Result<String, CliError>
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is ASCII"))
}

fn num(x: f64) -> String {
    x.to_string()
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn bipartite_search(
    cfg: &RunConfig,
    spec: BipartiteSpec,
    gamma: f64,
) -> Result<BipartiteSearch, CliError> {
    if cfg.mode() == Mode::Full {
        check_full_size(spec.n())?;
    }
    Ok(BipartiteSearch::new(spec, cfg.walk(), gamma, cfg.mode())?)
}

/// Twice the slowest analytic runtime.
fn default_tmax(spec: &BipartiteSpec) -> Result<f64, CliError> {
    Ok(2.0 * qwsearch::bipartite::runtime_table(spec)?.max())
}

/// Brackets both critical rates `1/N1` and `1/N2` with a factor-two margin.
fn default_gamma_range(spec: &BipartiteSpec) -> (f64, f64) {
    let big = spec.n1.max(spec.n2) as f64;
    let small = spec.n1.min(spec.n2) as f64;
    (0.5 / big, 2.0 / small)
}

pub fn cmd_simulate(cfg: &RunConfig) -> Result<Report, CliError> {
    if let Some(graph) = cfg.graph()? {
        if cfg.has_spec() {
            return Err(CliError::Usage(
                "give either --graph or --n1/--n2, not both".into(),
            ));
        }
        return simulate_graph(cfg, graph);
    }
    let spec = cfg.spec()?;
    let gamma = cfg.single_gamma()?;
    let times = cfg.time_grid(default_tmax(&spec)?)?;
    let search = bipartite_search(cfg, spec, gamma)?;
    let start = initial_state(&spec, cfg.init())?;
    let curve = search.class_curve(&start, &times, cfg.execution())?;
    let rows = times.iter().zip(&curve).map(|(&t, p)| {
        vec![
            num(t),
            num(p.success()),
            num(p.pa),
            num(p.pb),
            num(p.pc),
            num(p.pd),
        ]
    });
    write_csv(&SIMULATE_HEADER, rows).map(Report::ok)
}

fn simulate_graph(cfg: &RunConfig, graph: qwsearch::graph::Graph) -> Result<Report, CliError> {
    if cfg.init() != qwsearch::bipartite::InitialStateKind::UniformS {
        return Err(CliError::Usage("--graph supports only --init s".into()));
    }
    let marked = cfg
        .marked
        .clone()
        .ok_or_else(|| CliError::Usage("--graph needs --marked".into()))?;
    let n = graph.vertex_count();
    check_full_size(n)?;
    let inst = SearchInstance::new(cfg.walk(), graph, marked, cfg.single_gamma()?)?;
    let default_tmax = PI * (n as f64 / inst.marked().len() as f64).sqrt();
    let times = cfg.time_grid(default_tmax)?;
    let prop = Propagator::new(&search_hamiltonian(&inst))?;
    let psi0 = QuantumState::uniform(n);
    let marked = inst.marked().to_vec();
    let p = prop
        .trajectory(&psi0)?
        .sample(&times, cfg.execution(), |psi| {
            success_probability(psi, &marked)
        })?;
    let rows = times.iter().zip(p).map(|(&t, p)| vec![num(t), num(p)]);
    write_csv(&SIMULATE_HEADER[..2], rows).map(Report::ok)
}

pub fn cmd_sweep_gamma(cfg: &RunConfig) -> Result<Report, CliError> {
    let spec = cfg.spec()?;
    let gammas = cfg.gamma_grid(Some(default_gamma_range(&spec)))?;
    let times = cfg.time_grid(default_tmax(&spec)?)?;
    let start = initial_state(&spec, cfg.init())?;
    if cfg.mode() == Mode::Full {
        check_full_size(spec.n())?;
    }
    let peaks = cfg.execution().try_map(&gammas, |&gamma| {
        let search = BipartiteSearch::new(spec, cfg.walk(), gamma, cfg.mode())?;
        search.success_peak(&start, &times, qwsearch::exec::Execution::Sequential)
    })?;
    let rows = gammas
        .iter()
        .zip(&peaks)
        .map(|(&g, p)| vec![num(g), num(p.t), num(p.value)]);
    write_csv(&SWEEP_HEADER, rows).map(Report::ok)
}

pub fn cmd_overlaps(cfg: &RunConfig) -> Result<Report, CliError> {
    let spec = cfg.spec()?;
    let gammas = cfg.gamma_grid(Some(default_gamma_range(&spec)))?;
    let start = initial_state(&spec, cfg.init())?;
    let walk = cfg.walk();
    let rows = match cfg.mode() {
        Mode::Reduced => {
            let probes = [
                Probe::state("S", &start.to_state()),
                Probe::vertices("L", 4, [0]),
                Probe::vertices("R", 4, [1]),
            ];
            overlap_profile(
                &gammas,
                |gamma| Ok(reduced_hamiltonian(&spec, walk, gamma)?.map(|x| C64::new(x, 0.0))),
                &probes,
                EigenSelection::Lowest(4),
                cfg.execution(),
            )?
        }
        Mode::Full => {
            check_full_size(spec.n())?;
            let (g, marked) = spec.complete_bipartite()?;
            let [left, right, _, _] = spec.classes();
            let probes = [
                Probe::state("S", &reduced_to_full(&spec, &start)?),
                Probe::vertices("L", spec.n(), left),
                Probe::vertices("R", spec.n(), right),
            ];
            overlap_profile(
                &gammas,
                |gamma| -> qwsearch::Result<CMatrix> {
                    Ok(search_hamiltonian(&SearchInstance::new(
                        walk,
                        g.clone(),
                        marked.clone(),
                        gamma,
                    )?))
                },
                &probes,
                EigenSelection::LargestWeight(4, class_subspace_probe(&spec)),
                cfg.execution(),
            )?
        }
    };
    let rows = rows.into_iter().map(|r| {
        vec![
            num(r.gamma),
            r.n.to_string(),
            num(r.weights[0]),
            num(r.weights[1]),
            num(r.weights[2]),
        ]
    });
    write_csv(&OVERLAP_HEADER, rows).map(Report::ok)
}

pub fn cmd_runtimes(cfg: &RunConfig) -> Result<Report, CliError> {
    let (n1, n2) = match (cfg.n1, cfg.n2) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(CliError::Usage("runtimes needs --n1 and --n2".into())),
    };
    let (k1, k2) = (cfg.k1.unwrap_or(0), cfg.k2.unwrap_or(0));
    let points: Vec<(usize, usize, usize)> = match cfg.sweep {
        None => {
            if cfg.from.is_some() || cfg.to.is_some() {
                return Err(CliError::Usage("--from/--to need --sweep".into()));
            }
            vec![(k1, k1, k2)]
        }
        Some(axis) => {
            let to = cfg
                .to
                .ok_or_else(|| CliError::Usage("--sweep needs --to".into()))?;
            let from = cfg.from.unwrap_or(1);
            if from > to {
                return Err(CliError::Usage(format!("empty sweep range {from}..={to}")));
            }
            (from..=to)
                .map(|k| match axis {
                    SweepAxis::K1 => (k, k, k2),
                    SweepAxis::K2 => (k, k1, k),
                })
                .collect()
        }
    };
    let mut warnings = Vec::new();
    let mut rows = Vec::new();
    for (key, k1, k2) in points {
        if k1 == 0 && k2 == 0 {
            warnings.push(format!("skipping sweep key {key}: no marked vertices"));
            continue;
        }
        let spec = BipartiteSpec::new(n1, n2, k1, k2)?;
        let r = fastest_regime(&spec)?;
        let rt = r.runtimes;
        rows.push(vec![
            key.to_string(),
            opt(rt.laplacian_left),
            opt(rt.laplacian_right),
            num(rt.adjacency),
            opt(rt.signless_left),
            opt(rt.signless_right),
            r.fastest.to_string(),
            r.near_regular.to_string(),
        ]);
    }
    Ok(Report {
        csv: write_csv(&RUNTIME_HEADER, rows)?,
        warnings,
        passed: true,
    })
}

pub fn cmd_verify_spin(cfg: &RunConfig) -> Result<Report, CliError> {
    let graph = cfg
        .graph()?
        .ok_or_else(|| CliError::Usage("verify-spin needs --graph or --builtin".into()))?;
    let gamma = cfg.gamma.unwrap_or(1.0);
    let ratio = cfg.jz_ratio.unwrap_or(0.0);
    let eq = certify_walk_equivalence(&graph, CouplingConstants::xxz(gamma, ratio)?)?;
    let expected = WalkClass::expected_for_ratio(ratio);
    let passed =
        eq.class != WalkClass::Other && eq.class == expected && eq.max_deviation <= EQUIVALENCE_TOL;
    let status = if passed { "pass" } else { "fail" };
    let csv = write_csv(
        &["classification", "max_deviation", "status"],
        [vec![
            eq.class.to_string(),
            num(eq.max_deviation),
            status.to_string(),
        ]],
    )?;
    Ok(Report {
        csv,
        warnings: Vec::new(),
        passed,
    })
}
