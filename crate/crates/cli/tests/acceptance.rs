//! Acceptance checks. Prints one line per criterion and exits non-zero if
//! any criterion fails. Run with `cargo test -p qwsearch-cli --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use qwsearch::bipartite::{
    closed_form_probabilities, degenerate_correction, initial_state, reduced_walk_matrix,
    runtime_table, BipartiteSearch, ClassProbabilities, Critical, InitialStateKind, Mode,
};
use qwsearch::evolve::{evolve_state, time_grid, Propagator, QuantumState, WalkKind};
use qwsearch::exec::Execution;
use qwsearch::graph::{BipartiteSpec, Graph};
use qwsearch::spin::{
    heisenberg_hamiltonian, project_single_excitation, walk_target, CouplingConstants, WalkClass,
};
use qwsearch::{CMatrix, CVector, C64};
use qwsearch_cli::{cmd_runtimes, cmd_simulate, cmd_sweep_gamma, RunConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn reference_spec() -> BipartiteSpec {
    BipartiteSpec::new(512, 256, 3, 5).unwrap()
}

fn peak(
    spec: BipartiteSpec,
    gamma: f64,
    kind: InitialStateKind,
    t_target: f64,
    mode: Mode,
) -> qwsearch::evolve::Peak {
    let search = BipartiteSearch::new(spec, WalkKind::SignlessLaplacian, gamma, mode).unwrap();
    let start = initial_state(&spec, kind).unwrap();
    let times = time_grid(2.0 * t_target, 4001);
    search
        .success_peak(&start, &times, Execution::default())
        .unwrap()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t0 = Instant::now();
    let r = f();
    (r, t0.elapsed())
}

fn criterion_1() -> Outcome {
    let (p, dt) = timed(|| {
        peak(
            reference_spec(),
            1.0 / 512.0,
            InitialStateKind::UniformS,
            35.54,
            Mode::Reduced,
        )
    });
    let pass =
        (p.value - 0.889).abs() <= 0.02 && (p.t - 35.54).abs() <= 1.0 && dt.as_secs_f64() < 1.0;
    outcome(
        pass,
        format!(
            "peak p={:.5} at t={:.3} (target 0.889 +/- 0.02 at 35.54 +/- 1.0), {:.3}s",
            p.value,
            p.t,
            dt.as_secs_f64()
        ),
    )
}

fn criterion_2() -> Outcome {
    let (p, dt) = timed(|| {
        peak(
            reference_spec(),
            1.0 / 256.0,
            InitialStateKind::UniformS,
            13.77,
            Mode::Reduced,
        )
    });
    let pass =
        (p.value - 0.889).abs() <= 0.02 && (p.t - 13.77).abs() <= 0.5 && dt.as_secs_f64() < 1.0;
    outcome(
        pass,
        format!(
            "peak p={:.5} at t={:.3} (target 0.889 +/- 0.02 at 13.77 +/- 0.5), {:.3}s",
            p.value,
            p.t,
            dt.as_secs_f64()
        ),
    )
}

fn criterion_3() -> Outcome {
    let mut pass = true;
    let mut detail = Vec::new();
    for (gamma, t_star) in [(1.0 / 512.0, 35.54), (1.0 / 256.0, 13.77)] {
        let p = peak(
            reference_spec(),
            gamma,
            InitialStateKind::SignlessSQ,
            t_star,
            Mode::Reduced,
        );
        pass &= p.value >= 0.95 && (p.t - t_star).abs() <= 0.1 * t_star;
        detail.push(format!(
            "gamma={gamma:.6}: p={:.5} at t={:.3}",
            p.value, p.t
        ));
    }
    let small = BipartiteSpec::new(9, 5, 4, 2).unwrap();
    let mut worst = 0.0_f64;
    for gamma in [1.0 / 9.0, 1.0 / 5.0] {
        let t = 30.0;
        let r = peak(small, gamma, InitialStateKind::SignlessSQ, t, Mode::Reduced);
        let f = peak(small, gamma, InitialStateKind::SignlessSQ, t, Mode::Full);
        worst = worst.max((r.value - f.value).abs()).max((r.t - f.t).abs());
    }
    pass &= worst <= 1e-9;
    detail.push(format!("(9,5,4,2) reduced vs full peak diff {worst:.2e}"));
    outcome(pass, detail.join("; "))
}

fn criterion_4() -> Outcome {
    let (dev, dt) = timed(|| {
        let g = Graph::spin_example();
        let gamma = 0.3;
        [
            (0.0, WalkClass::Adjacency),
            (1.0, WalkClass::Laplacian),
            (-1.0, WalkClass::SignlessLaplacian),
        ]
        .into_iter()
        .map(|(ratio, class)| {
            let h =
                heisenberg_hamiltonian(&g, CouplingConstants::xxz(gamma, ratio).unwrap()).unwrap();
            let p = project_single_excitation(&h, g.vertex_count()).unwrap();
            let target = walk_target(&g, class, gamma).unwrap();
            p.iter()
                .zip(target.iter())
                .map(|(z, &x)| (z - C64::new(x, 0.0)).norm())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
    });
    outcome(
        dev <= 1e-10 && dt.as_secs_f64() < 1.0,
        format!("max deviation {dev:.2e}, {:.3}s", dt.as_secs_f64()),
    )
}

fn criterion_5() -> Outcome {
    let (worst, dt) = timed(|| {
        let spec = BipartiteSpec::new(9, 5, 4, 2).unwrap();
        let times: Vec<f64> = (0..=500).map(|i| i as f64 * 0.1).collect();
        let mut worst = 0.0_f64;
        for walk in WalkKind::ALL {
            for gamma in [1.0 / 9.0, 1.0 / 5.0, 0.07] {
                let red = BipartiteSearch::new(spec, walk, gamma, Mode::Reduced).unwrap();
                let full = BipartiteSearch::new(spec, walk, gamma, Mode::Full).unwrap();
                for kind in [
                    InitialStateKind::UniformS,
                    InitialStateKind::AdjacencySA,
                    InitialStateKind::SignlessSQ,
                ] {
                    let start = initial_state(&spec, kind).unwrap();
                    let a = red
                        .class_curve(&start, &times, Execution::default())
                        .unwrap();
                    let b = full
                        .class_curve(&start, &times, Execution::default())
                        .unwrap();
                    for (x, y) in a.iter().zip(&b) {
                        worst = worst.max(x.max_abs_diff(y));
                    }
                }
            }
        }
        worst
    });
    outcome(
        worst <= 1e-9 && dt.as_secs_f64() < 10.0,
        format!(
            "max class-probability diff {worst:.2e}, {:.3}s",
            dt.as_secs_f64()
        ),
    )
}

fn closed_form_gap(kind: InitialStateKind) -> f64 {
    let spec = reference_spec();
    let corr = degenerate_correction(&spec, Critical::Left).unwrap();
    let times = time_grid(corr.runtime(), 4001);
    let search =
        BipartiteSearch::new(spec, WalkKind::SignlessLaplacian, corr.gamma, Mode::Reduced).unwrap();
    let curve = search
        .class_curve(
            &initial_state(&spec, kind).unwrap(),
            &times,
            Execution::default(),
        )
        .unwrap();
    times
        .iter()
        .zip(&curve)
        .map(|(&t, p)| {
            (p.pa
                - closed_form_probabilities(&spec, kind, Critical::Left, t)
                    .unwrap()
                    .pa)
                .abs()
        })
        .fold(0.0, f64::max)
}

fn criterion_6() -> Outcome {
    let s = closed_form_gap(InitialStateKind::UniformS);
    let q = closed_form_gap(InitialStateKind::SignlessSQ);
    outcome(
        s <= 0.06 && q <= 0.06,
        format!("max |p_a numeric - closed| s: {s:.4}, sQ: {q:.4} (tolerance 0.06)"),
    )
}

fn criterion_7() -> Outcome {
    let cfg = RunConfig {
        n1: Some(1024),
        n2: Some(256),
        k2: Some(5),
        sweep: Some(qwsearch_cli::config::SweepAxis::K1),
        from: Some(1),
        to: Some(60),
        ..Default::default()
    };
    let csv = cmd_runtimes(&cfg).unwrap().csv;
    let labels: Vec<(usize, String)> = csv
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[6].to_string())
        })
        .collect();
    let transitions: Vec<usize> = labels
        .windows(2)
        .filter(|w| w[0].1 != w[1].1)
        .map(|w| w[1].0)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut violations = 0;
    let mut checked = 0;
    while checked < 1000 {
        let n1 = rng.random_range(2..=200_000usize);
        let n2 = rng.random_range(1..n1);
        let k1 = rng.random_range(1..=n1);
        let k2 = rng.random_range(0..=n2);
        let rt = runtime_table(&BipartiteSpec::new(n1, n2, k1, k2).unwrap()).unwrap();
        if rt.adjacency >= rt.signless_left.unwrap() {
            violations += 1;
        }
        checked += 1;
    }
    outcome(
        transitions == [12, 34] && violations == 0,
        format!(
            "transitions at k1 = {transitions:?}; t_A >= t_Qa in {violations}/1000 random specs"
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0_f64;
    for _ in 0..100 {
        let n1 = rng.random_range(1..=5000usize);
        let n2 = rng.random_range(1..=5000usize);
        let k1 = rng.random_range(0..=n1);
        let k2 = rng.random_range(if k1 == 0 { 1 } else { 0 }..=n2);
        let spec = BipartiteSpec::new(n1, n2, k1, k2).unwrap();
        let (f1, f2) = (n1 as f64, n2 as f64);
        for (walk, kind, lambda) in [
            (WalkKind::Laplacian, InitialStateKind::UniformS, 0.0),
            (
                WalkKind::Adjacency,
                InitialStateKind::AdjacencySA,
                (f1 * f2).sqrt(),
            ),
            (
                WalkKind::SignlessLaplacian,
                InitialStateKind::SignlessSQ,
                f1 + f2,
            ),
        ] {
            let m = reduced_walk_matrix(&spec, walk);
            let v = initial_state(&spec, kind).unwrap().as_real();
            for i in 0..4 {
                let mv: f64 = (0..4).map(|j| m[(i, j)] * v[j]).sum();
                worst = worst.max((mv - lambda * v[i]).abs() / lambda.max(1.0));
            }
        }
    }
    outcome(
        worst <= 1e-10,
        format!("max relative residual {worst:.2e} over 100 random specs"),
    )
}

fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    let m = CMatrix::from_fn(n, n, |_, _| {
        C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    (&m + m.adjoint()) * C64::new(0.5, 0.0)
}

fn random_state(rng: &mut ChaCha8Rng, n: usize) -> QuantumState {
    QuantumState::normalized(CVector::from_fn(n, |_, _| {
        C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    }))
    .unwrap()
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut failures = Vec::new();

    let mut norm_err = 0.0_f64;
    let mut comp_err = 0.0_f64;
    for _ in 0..20 {
        let n = rng.random_range(1..=64);
        let h = random_hermitian(&mut rng, n);
        let psi = random_state(&mut rng, n);
        let prop = Propagator::new(&h).unwrap();
        for t in [0.1, 1.0, 10.0, 100.0] {
            norm_err = norm_err.max((prop.evolve(&psi, t).unwrap().norm() - 1.0).abs());
        }
        let (t1, t2) = (rng.random_range(0.0..20.0), rng.random_range(0.0..20.0));
        let a = prop.evolve(&prop.evolve(&psi, t1).unwrap(), t2).unwrap();
        let b = prop.evolve(&psi, t1 + t2).unwrap();
        comp_err = comp_err.max(
            (a.amplitudes() - b.amplitudes())
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max),
        );
    }
    if norm_err > 1e-10 {
        failures.push(format!("norm {norm_err:.2e}"));
    }
    if comp_err > 1e-8 {
        failures.push(format!("composition {comp_err:.2e}"));
    }

    let spec = BipartiteSpec::new(9, 5, 4, 2).unwrap();
    let (g, marked) = spec.complete_bipartite().unwrap();
    let psi = random_state(&mut rng, spec.n());
    let mut zero_err = 0.0_f64;
    for walk in WalkKind::ALL {
        let h = qwsearch::evolve::search_hamiltonian(
            &qwsearch::evolve::SearchInstance::new(walk, g.clone(), marked.clone(), 0.0).unwrap(),
        );
        for t in [1.0, 10.0, 100.0] {
            let p = evolve_state(&h, &psi, t).unwrap().probabilities();
            for (x, y) in p.iter().zip(psi.probabilities()) {
                zero_err = zero_err.max((x - y).abs());
            }
        }
    }
    if zero_err > 1e-10 {
        failures.push(format!("gamma=0 invariance {zero_err:.2e}"));
    }

    let mut sum_err = 0.0_f64;
    let mut swap_ok = true;
    for _ in 0..200 {
        let n1 = rng.random_range(1..=5000usize);
        let n2 = rng.random_range(1..=5000usize);
        let spec =
            BipartiteSpec::new(n1, n2, rng.random_range(1..=n1), rng.random_range(1..=n2)).unwrap();
        let t = rng.random_range(0.0..200.0);
        for kind in [InitialStateKind::UniformS, InitialStateKind::SignlessSQ] {
            for which in [Critical::Left, Critical::Right] {
                let p = closed_form_probabilities(&spec, kind, which, t).unwrap();
                sum_err = sum_err.max((p.total() - 1.0).abs());
            }
            let l = closed_form_probabilities(&spec, kind, Critical::Left, t).unwrap();
            let r: ClassProbabilities =
                closed_form_probabilities(&spec.swapped(), kind, Critical::Right, t).unwrap();
            swap_ok &= l == r.swapped();
        }
        let (a, b) = (
            runtime_table(&spec).unwrap(),
            runtime_table(&spec.swapped()).unwrap(),
        );
        swap_ok &= a.signless_left == b.signless_right
            && a.laplacian_left == b.laplacian_right
            && a.adjacency == b.adjacency;
        swap_ok &= degenerate_correction(&spec, Critical::Left)
            .unwrap()
            .delta_e
            == degenerate_correction(&spec.swapped(), Critical::Right)
                .unwrap()
                .delta_e;
    }
    if sum_err > 1e-12 {
        failures.push(format!("closed-form sum {sum_err:.2e}"));
    }
    if !swap_ok {
        failures.push("partite swap not exact".into());
    }

    let sim = RunConfig {
        n1: Some(512),
        n2: Some(256),
        k1: Some(3),
        k2: Some(5),
        gamma: Some(0.002),
        tmax: Some(80.0),
        ..Default::default()
    };
    let sweep = RunConfig {
        gamma: None,
        gamma_min: Some(0.001),
        gamma_max: Some(0.0055),
        gamma_count: Some(24),
        ..sim.clone()
    };
    let identical = cmd_simulate(&sim).unwrap() == cmd_simulate(&sim).unwrap()
        && cmd_sweep_gamma(&sweep).unwrap() == cmd_sweep_gamma(&sweep).unwrap()
        && cmd_sweep_gamma(&sweep).unwrap()
            == cmd_sweep_gamma(&RunConfig {
                sequential: true,
                ..sweep.clone()
            })
            .unwrap();
    if !identical {
        failures.push("CSV output differs between runs".into());
    }

    let detail = format!(
        "norm {norm_err:.1e}, composition {comp_err:.1e}, gamma=0 {zero_err:.1e}, closed-form sum {sum_err:.1e}, swap exact {swap_ok}, csv identical {identical}"
    );
    outcome(failures.is_empty(), detail)
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("peak reproduction, left critical", criterion_1),
        ("peak reproduction, right critical", criterion_2),
        ("deterministic search from s_Q", criterion_3),
        ("spin-network equivalences", criterion_4),
        ("reduced vs full oracle", criterion_5),
        ("closed form vs numeric", criterion_6),
        ("regime table", criterion_7),
        ("eigenvector identities", criterion_8),
        ("property suite", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {} [{tag}] {name}: {}", i + 1, o.detail);
        failed += usize::from(!o.pass);
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
