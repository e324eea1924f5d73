//! Search on the complete bipartite graph `K_{N1,N2}` with `k1` marked
//! vertices on the left and `k2` on the right.
//!
//! By symmetry the evolution stays in the span of four class states:
//!
//! - `|a>`: uniform over the left marked vertices
//! - `|b>`: uniform over the right marked vertices
//! - `|c>`: uniform over the left unmarked vertices
//! - `|d>`: uniform over the right unmarked vertices
//!
//! A class that is empty (`k_i = 0` or `k_i = N_i`) is kept as an inert
//! coordinate: its row and column of every reduced matrix are zero and its
//! amplitude is always zero.
//!
//! Left-critical quantities (`gamma = 1/N1`) are derived directly; every
//! right-critical quantity is the left-critical one on the swapped spec
//! `(N2, N1, k2, k1)` with coordinates relabelled `a <-> b`, `c <-> d`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::evolve::{
    self, find_peak, Peak, Probe, Propagator, QuantumState, SearchInstance, WalkKind,
};
use crate::exec::Execution;
use crate::graph::BipartiteSpec;
use crate::{CMatrix, CVector, RMatrix, C64};

pub const A: usize = 0;
pub const B: usize = 1;
pub const C: usize = 2;
pub const D: usize = 3;

/// `(a, b, c, d) -> (b, a, d, c)`.
pub fn swap_coords<T: Copy>(v: [T; 4]) -> [T; 4] {
    [v[B], v[A], v[D], v[C]]
}

/// Which class coordinates are non-empty for `spec`.
pub fn active_classes(spec: &BipartiteSpec) -> [bool; 4] {
    [spec.k1 > 0, spec.k2 > 0, spec.nk1() > 0, spec.nk2() > 0]
}

fn class_sizes(spec: &BipartiteSpec) -> [usize; 4] {
    [spec.k1, spec.k2, spec.nk1(), spec.nk2()]
}

/// Amplitudes over `(|a>, |b>, |c>, |d>)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedState {
    pub amps: [C64; 4],
}

impl ReducedState {
    /// Validates unit norm and that inert classes carry no amplitude.
    pub fn new(spec: &BipartiteSpec, amps: [C64; 4]) -> Result<Self> {
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > evolve::NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        for (k, active) in active_classes(spec).into_iter().enumerate() {
            if !active && amps[k] != C64::new(0.0, 0.0) {
                return Err(Error::Validation(format!(
                    "class {} is empty for {spec} but has amplitude {}",
                    ["a", "b", "c", "d"][k],
                    amps[k]
                )));
            }
        }
        Ok(Self { amps })
    }

    fn from_real(spec: &BipartiteSpec, amps: [f64; 4]) -> Result<Self> {
        Self::new(spec, amps.map(|x| C64::new(x, 0.0)))
    }

    pub fn probabilities(&self) -> ClassProbabilities {
        ClassProbabilities::from(self.amps.map(|z| z.norm_sqr()))
    }

    pub fn to_state(&self) -> QuantumState {
        QuantumState::new(CVector::from_row_slice(&self.amps)).expect("validated at construction")
    }

    pub fn as_real(&self) -> [f64; 4] {
        self.amps.map(|z| z.re)
    }
}

/// Probability of finding the walker in each vertex class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassProbabilities {
    pub pa: f64,
    pub pb: f64,
    pub pc: f64,
    pub pd: f64,
}

impl ClassProbabilities {
    pub fn as_array(&self) -> [f64; 4] {
        [self.pa, self.pb, self.pc, self.pd]
    }

    pub fn total(&self) -> f64 {
        self.pa + self.pb + self.pc + self.pd
    }

    /// Probability on marked vertices, `pa + pb`.
    pub fn success(&self) -> f64 {
        self.pa + self.pb
    }

    pub fn swapped(&self) -> Self {
        Self::from(swap_coords(self.as_array()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }
}

impl From<[f64; 4]> for ClassProbabilities {
    fn from(p: [f64; 4]) -> Self {
        Self {
            pa: p[0],
            pb: p[1],
            pc: p[2],
            pd: p[3],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InitialStateKind {
    /// Uniform superposition over all vertices (eigenvector of `L`).
    UniformS,
    /// `1/sqrt(2 N1)` on the left, `1/sqrt(2 N2)` on the right (eigenvector of `A`).
    AdjacencySA,
    /// `sqrt(N2/(N1 N))` on the left, `sqrt(N1/(N2 N))` on the right (eigenvector of `Q`).
    SignlessSQ,
}

impl fmt::Display for InitialStateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InitialStateKind::UniformS => "s",
            InitialStateKind::AdjacencySA => "sa",
            InitialStateKind::SignlessSQ => "sq",
        })
    }
}

impl FromStr for InitialStateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "s" | "sl" | "uniform" => Ok(InitialStateKind::UniformS),
            "sa" => Ok(InitialStateKind::AdjacencySA),
            "sq" => Ok(InitialStateKind::SignlessSQ),
            other => Err(Error::Validation(format!(
                "unknown initial state '{other}'"
            ))),
        }
    }
}

/// Per-vertex amplitudes `(left, right)` of an initial state.
pub fn vertex_weights(spec: &BipartiteSpec, kind: InitialStateKind) -> (f64, f64) {
    let (n1, n2) = (spec.n1 as f64, spec.n2 as f64);
    let n = n1 + n2;
    match kind {
        InitialStateKind::UniformS => (1.0 / n.sqrt(), 1.0 / n.sqrt()),
        InitialStateKind::AdjacencySA => (1.0 / (2.0 * n1).sqrt(), 1.0 / (2.0 * n2).sqrt()),
        InitialStateKind::SignlessSQ => ((n2 / (n1 * n)).sqrt(), (n1 / (n2 * n)).sqrt()),
    }
}

/// An initial state folded into the class basis.
pub fn initial_state(spec: &BipartiteSpec, kind: InitialStateKind) -> Result<ReducedState> {
    spec.validate()?;
    let (wl, wr) = vertex_weights(spec, kind);
    let sizes = class_sizes(spec).map(|s| (s as f64).sqrt());
    ReducedState::from_real(
        spec,
        [wl * sizes[A], wr * sizes[B], wl * sizes[C], wr * sizes[D]],
    )
}

fn zero_inert(spec: &BipartiteSpec, mut m: RMatrix) -> RMatrix {
    for (k, active) in active_classes(spec).into_iter().enumerate() {
        if !active {
            m.row_mut(k).fill(0.0);
            m.column_mut(k).fill(0.0);
        }
    }
    m
}

/// Adjacency matrix in the class basis.
pub fn reduced_adjacency(spec: &BipartiteSpec) -> RMatrix {
    let [k1, k2, nk1, nk2] = class_sizes(spec).map(|x| x as f64);
    let ab = (k1 * k2).sqrt();
    let ad = (k1 * nk2).sqrt();
    let bc = (k2 * nk1).sqrt();
    let cd = (nk1 * nk2).sqrt();
    #[rustfmt::skip]
    let a = RMatrix::from_row_slice(4, 4, &[
        0.0, ab,  0.0, ad,
        ab,  0.0, bc,  0.0,
        0.0, bc,  0.0, cd,
        ad,  0.0, cd,  0.0,
    ]);
    zero_inert(spec, a)
}

/// Degree matrix `diag(N2, N1, N2, N1)` in the class basis.
pub fn reduced_degree(spec: &BipartiteSpec) -> RMatrix {
    let (n1, n2) = (spec.n1 as f64, spec.n2 as f64);
    zero_inert(
        spec,
        RMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![n2, n1, n2, n1])),
    )
}

/// The walk's graph matrix (`A`, `A - D` or `A + D`) in the class basis.
pub fn reduced_walk_matrix(spec: &BipartiteSpec, walk: WalkKind) -> RMatrix {
    let a = reduced_adjacency(spec);
    let d = reduced_degree(spec);
    match walk {
        WalkKind::Adjacency => a,
        WalkKind::Laplacian => a - d,
        WalkKind::SignlessLaplacian => a + d,
    }
}

/// `-gamma W - diag(1, 1, 0, 0)` in the class basis.
pub fn reduced_hamiltonian(spec: &BipartiteSpec, walk: WalkKind, gamma: f64) -> Result<RMatrix> {
    spec.validate()?;
    if !(gamma.is_finite() && gamma >= 0.0) {
        return Err(Error::Validation(format!(
            "jumping rate must be finite and >= 0, got {gamma}"
        )));
    }
    let mut h = reduced_walk_matrix(spec, walk) * -gamma;
    if spec.k1 > 0 {
        h[(A, A)] -= 1.0;
    }
    if spec.k2 > 0 {
        h[(B, B)] -= 1.0;
    }
    Ok(h)
}

fn to_complex(m: &RMatrix) -> CMatrix {
    m.map(|x| C64::new(x, 0.0))
}

/// `N x 4` matrix whose columns are `|a>, |b>, |c>, |d>` in the canonical
/// vertex layout (inert classes give zero columns).
pub fn class_isometry(spec: &BipartiteSpec) -> RMatrix {
    let mut p = RMatrix::zeros(spec.n(), 4);
    for (k, range) in spec.classes().into_iter().enumerate() {
        if range.is_empty() {
            continue;
        }
        let w = 1.0 / (range.len() as f64).sqrt();
        for i in range {
            p[(i, k)] = w;
        }
    }
    p
}

/// Span of the non-empty class states in the full vertex space: the
/// subspace the search dynamics never leaves.
pub fn class_subspace_probe(spec: &BipartiteSpec) -> Probe {
    let p = class_isometry(spec);
    let vectors = (0..4)
        .filter(|&k| active_classes(spec)[k])
        .map(|k| p.column(k).map(|x| C64::new(x, 0.0)))
        .collect();
    Probe::span("classes", vectors)
}

/// Spreads each class amplitude uniformly over its vertices.
pub fn reduced_to_full(spec: &BipartiteSpec, rs: &ReducedState) -> Result<QuantumState> {
    spec.validate()?;
    let mut v = CVector::zeros(spec.n());
    for (k, range) in spec.classes().into_iter().enumerate() {
        if range.is_empty() {
            continue;
        }
        let amp = rs.amps[k] / C64::new((range.len() as f64).sqrt(), 0.0);
        for i in range {
            v[i] = amp;
        }
    }
    QuantumState::new(v)
}

/// Total probability of a full-space state in each vertex class.
pub fn class_probabilities(spec: &BipartiteSpec, psi: &QuantumState) -> Result<ClassProbabilities> {
    if psi.dim() != spec.n() {
        return Err(Error::DimensionMismatch {
            expected: spec.n(),
            actual: psi.dim(),
        });
    }
    let amps = psi.amplitudes();
    Ok(ClassProbabilities::from(
        spec.classes()
            .map(|r| r.map(|i| amps[i].norm_sqr()).sum::<f64>()),
    ))
}

/// A real eigenvector in the class basis with its eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenPair4 {
    pub vector: [f64; 4],
    pub eigenvalue: f64,
}

impl EigenPair4 {
    fn swapped(self) -> Self {
        Self {
            vector: swap_coords(self.vector),
            eigenvalue: self.eigenvalue,
        }
    }
}

/// Eigensystem of the dominant part of the reduced search Hamiltonian for
/// large `N1, N2`, in the order `|a>, |b>, |u>, |v>` with
/// `|u> = (sqrt(N2)|c> + sqrt(N1)|d>)/sqrt(N)` and
/// `|v> = (sqrt(N1)|c> - sqrt(N2)|d>)/sqrt(N)`.
pub fn asymptotic_eigensystem_h0(spec: &BipartiteSpec, gamma: f64) -> Result<[EigenPair4; 4]> {
    spec.validate()?;
    let (n1, n2) = (spec.n1 as f64, spec.n2 as f64);
    let n = n1 + n2;
    let (u, v) = uv_vectors(spec);
    Ok([
        EigenPair4 {
            vector: [1.0, 0.0, 0.0, 0.0],
            eigenvalue: -1.0 - gamma * n2,
        },
        EigenPair4 {
            vector: [0.0, 1.0, 0.0, 0.0],
            eigenvalue: -1.0 - gamma * n1,
        },
        EigenPair4 {
            vector: u,
            eigenvalue: -gamma * n,
        },
        EigenPair4 {
            vector: v,
            eigenvalue: 0.0,
        },
    ])
}

fn uv_vectors(spec: &BipartiteSpec) -> ([f64; 4], [f64; 4]) {
    let (n1, n2) = (spec.n1 as f64, spec.n2 as f64);
    let sn = (n1 + n2).sqrt();
    (
        [0.0, 0.0, n2.sqrt() / sn, n1.sqrt() / sn],
        [0.0, 0.0, n1.sqrt() / sn, -n2.sqrt() / sn],
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Critical {
    /// `gamma = 1/N1`: `|a>` and `|u>` are degenerate.
    Left,
    /// `gamma = 1/N2`: `|b>` and `|u>` are degenerate.
    Right,
}

impl Critical {
    pub fn gamma(self, spec: &BipartiteSpec) -> f64 {
        match self {
            Critical::Left => 1.0 / spec.n1 as f64,
            Critical::Right => 1.0 / spec.n2 as f64,
        }
    }
}

/// First-order degenerate eigensystem at a critical jumping rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegenerateEigensystem {
    pub gamma: f64,
    /// For [`Critical::Left`]: `|b>`, `(|a>+|u>)/sqrt2`, `(|a>-|u>)/sqrt2`, `|v>`.
    /// [`Critical::Right`] is the partite-swapped image.
    pub pairs: [EigenPair4; 4],
    /// Splitting of the lifted pair, `2 sqrt(k1 N2 / (N1 N))` on the left.
    pub delta_e: f64,
}

impl DegenerateEigensystem {
    /// `pi / delta_e`, the time of the first success-probability maximum.
    pub fn runtime(&self) -> f64 {
        PI / self.delta_e
    }
}

fn left_correction(spec: &BipartiteSpec) -> DegenerateEigensystem {
    let (n1, n2, k1) = (spec.n1 as f64, spec.n2 as f64, spec.k1 as f64);
    let n = n1 + n2;
    let x = (k1 * n2 / (n1 * n)).sqrt();
    let (u, v) = uv_vectors(spec);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let plus = [r, 0.0, r * u[C], r * u[D]];
    let minus = [r, 0.0, -r * u[C], -r * u[D]];
    let base = -1.0 - n2 / n1;
    DegenerateEigensystem {
        gamma: 1.0 / n1,
        pairs: [
            EigenPair4 {
                vector: [0.0, 1.0, 0.0, 0.0],
                eigenvalue: -2.0,
            },
            EigenPair4 {
                vector: plus,
                eigenvalue: base - x,
            },
            EigenPair4 {
                vector: minus,
                eigenvalue: base + x,
            },
            EigenPair4 {
                vector: v,
                eigenvalue: 0.0,
            },
        ],
        delta_e: 2.0 * x,
    }
}

/// Lifts the degeneracy at `gamma = 1/N1` (left) or `1/N2` (right).
pub fn degenerate_correction(
    spec: &BipartiteSpec,
    which: Critical,
) -> Result<DegenerateEigensystem> {
    spec.validate()?;
    match which {
        Critical::Left if spec.k1 == 0 => {
            Err(Error::NoDegenerateLift("left-critical case needs k1 >= 1"))
        }
        Critical::Right if spec.k2 == 0 => {
            Err(Error::NoDegenerateLift("right-critical case needs k2 >= 1"))
        }
        Critical::Left => Ok(left_correction(spec)),
        Critical::Right => {
            let sw = left_correction(&spec.swapped());
            Ok(DegenerateEigensystem {
                gamma: sw.gamma,
                pairs: sw.pairs.map(EigenPair4::swapped),
                delta_e: sw.delta_e,
            })
        }
    }
}

fn left_closed_form(spec: &BipartiteSpec, start: InitialStateKind, t: f64) -> ClassProbabilities {
    let (n1, n2) = (spec.n1 as f64, spec.n2 as f64);
    let n = n1 + n2;
    let de = left_correction(spec).delta_e;
    let s = (de * t / 2.0).sin();
    let c = (de * t / 2.0).cos();
    match start {
        InitialStateKind::SignlessSQ => ClassProbabilities {
            pa: s * s,
            pb: 0.0,
            pc: n2 / n * c * c,
            pd: n1 / n * c * c,
        },
        _ => {
            let n3 = n * n * n;
            let diff = n1 - n2;
            let cross = 4.0 * n1 * n2 * diff / n3 * c * ((1.0 + n2 / n1) * t).cos();
            ClassProbabilities {
                pa: 4.0 * n1 * n2 / (n * n) * s * s,
                pb: 0.0,
                pc: 4.0 * n1 * n2 * n2 / n3 * c * c + cross + n1 * diff * diff / n3,
                pd: 4.0 * n1 * n1 * n2 / n3 * c * c - cross + n2 * diff * diff / n3,
            }
        }
    }
}

/// Asymptotic class probabilities for the signless-Laplacian walk at a
/// critical jumping rate, starting from `|s>` or `|s_Q>`.
pub fn closed_form_probabilities(
    spec: &BipartiteSpec,
    start: InitialStateKind,
    which: Critical,
    t: f64,
) -> Result<ClassProbabilities> {
    if start == InitialStateKind::AdjacencySA {
        return Err(Error::Validation(
            "closed forms are available for the s and sq initial states only".into(),
        ));
    }
    degenerate_correction(spec, which)?;
    Ok(match which {
        Critical::Left => left_closed_form(spec, start, t),
        Critical::Right => left_closed_form(&spec.swapped(), start, t).swapped(),
    })
}

/// Runtimes of the deterministic search algorithms. Entries that need a
/// marked vertex in an empty set are `None`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RuntimeTable {
    pub laplacian_left: Option<f64>,
    pub laplacian_right: Option<f64>,
    pub adjacency: f64,
    pub signless_left: Option<f64>,
    pub signless_right: Option<f64>,
}

impl RuntimeTable {
    /// `(regime, runtime)` in the fixed tie-break order
    /// `L,a / L,b / A / Q,a / Q,b`.
    pub fn entries(&self) -> [(Fastest, Option<f64>); 5] {
        [
            (Fastest::LaplacianLeft, self.laplacian_left),
            (Fastest::LaplacianRight, self.laplacian_right),
            (Fastest::Adjacency, Some(self.adjacency)),
            (Fastest::SignlessLeft, self.signless_left),
            (Fastest::SignlessRight, self.signless_right),
        ]
    }

    pub fn get(&self, which: Fastest) -> Option<f64> {
        self.entries()
            .into_iter()
            .find(|e| e.0 == which)
            .and_then(|e| e.1)
    }

    /// Largest defined runtime.
    pub fn max(&self) -> f64 {
        self.entries()
            .iter()
            .filter_map(|e| e.1)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Argmin; exact ties go to the earliest entry in [`RuntimeTable::entries`] order.
    pub fn fastest(&self) -> Fastest {
        let mut best: Option<(Fastest, f64)> = None;
        for (which, t) in self.entries() {
            if let Some(t) = t {
                if best.is_none_or(|(_, b)| t < b) {
                    best = Some((which, t));
                }
            }
        }
        best.expect("adjacency runtime is always defined").0
    }
}

/// `(pi/2) sqrt(num/den)`; every runtime is written in this form with
/// integer numerator and denominator so that algebraically equal runtimes
/// are bitwise equal.
fn half_pi_sqrt(num: u128, den: u128) -> f64 {
    PI / 2.0 * (num as f64 / den as f64).sqrt()
}

pub fn runtime_table(spec: &BipartiteSpec) -> Result<RuntimeTable> {
    spec.validate()?;
    let (n1, n2, k1, k2) = (
        spec.n1 as u128,
        spec.n2 as u128,
        spec.k1 as u128,
        spec.k2 as u128,
    );
    let n = n1 + n2;
    let when = |k: u128, f: &dyn Fn() -> f64| if k > 0 { Some(f()) } else { None };
    Ok(RuntimeTable {
        laplacian_left: when(k1, &|| half_pi_sqrt(n, k1)),
        laplacian_right: when(k2, &|| half_pi_sqrt(n, k2)),
        // (pi/sqrt2) sqrt(N1 N2 / (k2 N1 + k1 N2))
        adjacency: half_pi_sqrt(2 * n1 * n2, k2 * n1 + k1 * n2),
        signless_left: when(k1, &|| half_pi_sqrt(n1 * n, k1 * n2)),
        signless_right: when(k2, &|| half_pi_sqrt(n2 * n, k2 * n1)),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fastest {
    LaplacianLeft,
    LaplacianRight,
    Adjacency,
    SignlessLeft,
    SignlessRight,
}

impl Fastest {
    pub fn label(self) -> &'static str {
        match self {
            Fastest::LaplacianLeft => "L_a",
            Fastest::LaplacianRight => "L_b",
            Fastest::Adjacency => "A",
            Fastest::SignlessLeft => "Q_a",
            Fastest::SignlessRight => "Q_b",
        }
    }
}

impl fmt::Display for Fastest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Analytic regime boundaries for an irregular graph. With the larger set on
/// the left, `k1 < lower` favours `Q,b`, `lower <= k1 < upper` favours `A`
/// and `k1 >= upper` favours `L,a`; the right-larger case is the mirror
/// image in `k2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeThresholds {
    pub larger: Side,
    pub lower: f64,
    pub upper: f64,
    /// `None` when a marked count is zero and a regime boundary is undefined.
    pub predicted: Option<Fastest>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeClassification {
    pub fastest: Fastest,
    pub runtimes: RuntimeTable,
    /// `None` for `N1 = N2`.
    pub thresholds: Option<RegimeThresholds>,
    /// `|N1 - N2| < sqrt(N)`: the graph is close to regular and the three
    /// walks behave alike.
    pub near_regular: bool,
}

impl RegimeClassification {
    /// `N_large / N_small`.
    pub fn imbalance(spec: &BipartiteSpec) -> f64 {
        spec.n1.max(spec.n2) as f64 / spec.n1.min(spec.n2) as f64
    }
}

fn left_heavy_thresholds(spec: &BipartiteSpec) -> RegimeThresholds {
    let (n1, n2, k1, k2) = (
        spec.n1 as u128,
        spec.n2 as u128,
        spec.k1 as u128,
        spec.k2 as u128,
    );
    debug_assert!(n1 > n2);
    let n = n1 + n2;
    let diff = n1 - n2;
    let lower = (k2 * n1 * diff) as f64 / (n2 * n) as f64;
    let upper = (k2 * n1 * n) as f64 / (n2 * diff) as f64;
    // Compared in exact integer arithmetic.
    let predicted = (k1 > 0 && k2 > 0).then(|| {
        if k1 * n2 * n < k2 * n1 * diff {
            Fastest::SignlessRight
        } else if k1 * n2 * diff < k2 * n1 * n {
            Fastest::Adjacency
        } else {
            Fastest::LaplacianLeft
        }
    });
    RegimeThresholds {
        larger: Side::Left,
        lower,
        upper,
        predicted,
    }
}

fn swap_fastest(f: Fastest) -> Fastest {
    match f {
        Fastest::LaplacianLeft => Fastest::LaplacianRight,
        Fastest::LaplacianRight => Fastest::LaplacianLeft,
        Fastest::Adjacency => Fastest::Adjacency,
        Fastest::SignlessLeft => Fastest::SignlessRight,
        Fastest::SignlessRight => Fastest::SignlessLeft,
    }
}

pub fn fastest_regime(spec: &BipartiteSpec) -> Result<RegimeClassification> {
    let runtimes = runtime_table(spec)?;
    let thresholds = match spec.n1.cmp(&spec.n2) {
        std::cmp::Ordering::Greater => Some(left_heavy_thresholds(spec)),
        std::cmp::Ordering::Less => {
            let t = left_heavy_thresholds(&spec.swapped());
            Some(RegimeThresholds {
                larger: Side::Right,
                predicted: t.predicted.map(swap_fastest),
                ..t
            })
        }
        std::cmp::Ordering::Equal => None,
    };
    let diff = spec.n1.abs_diff(spec.n2) as f64;
    Ok(RegimeClassification {
        fastest: runtimes.fastest(),
        runtimes,
        thresholds,
        near_regular: diff < (spec.n() as f64).sqrt(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    LeftMarked,
    RightMarked,
    Mixed,
}

/// One asymptotic search result: jumping rate, runtime and peak success.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormPeak {
    pub walk: WalkKind,
    pub start: InitialStateKind,
    pub gamma_critical: f64,
    pub runtime: f64,
    pub peak_success: f64,
    pub target: Target,
}

/// Asymptotic results for all three walks on `spec`. Rows that need a
/// marked vertex in an empty set are omitted.
pub fn closed_form_peaks(spec: &BipartiteSpec) -> Result<Vec<ClosedFormPeak>> {
    use InitialStateKind::*;
    use WalkKind::*;
    let rt = runtime_table(spec)?;
    let (n1, n2) = (spec.n1 as f64, spec.n2 as f64);
    let n = n1 + n2;
    let partial = 4.0 * n1 * n2 / (n * n);
    let mut rows = Vec::new();
    let mut push = |walk, start, gamma_critical, runtime: Option<f64>, peak_success, target| {
        if let Some(runtime) = runtime {
            rows.push(ClosedFormPeak {
                walk,
                start,
                gamma_critical,
                runtime,
                peak_success,
                target,
            });
        }
    };
    push(
        Laplacian,
        UniformS,
        1.0 / n2,
        rt.laplacian_left,
        1.0,
        Target::LeftMarked,
    );
    push(
        Laplacian,
        UniformS,
        1.0 / n1,
        rt.laplacian_right,
        1.0,
        Target::RightMarked,
    );
    let ga = 1.0 / (n1 * n2).sqrt();
    push(
        Adjacency,
        UniformS,
        ga,
        Some(rt.adjacency),
        0.5 + (n1 * n2).sqrt() / n,
        Target::Mixed,
    );
    push(
        Adjacency,
        AdjacencySA,
        ga,
        Some(rt.adjacency),
        1.0,
        Target::Mixed,
    );
    push(
        SignlessLaplacian,
        UniformS,
        1.0 / n1,
        rt.signless_left,
        partial,
        Target::LeftMarked,
    );
    push(
        SignlessLaplacian,
        UniformS,
        1.0 / n2,
        rt.signless_right,
        partial,
        Target::RightMarked,
    );
    push(
        SignlessLaplacian,
        SignlessSQ,
        1.0 / n1,
        rt.signless_left,
        1.0,
        Target::LeftMarked,
    );
    push(
        SignlessLaplacian,
        SignlessSQ,
        1.0 / n2,
        rt.signless_right,
        1.0,
        Target::RightMarked,
    );
    Ok(rows)
}

/// Whether numeric evolution runs in the 4-dimensional class basis or on
/// the full `N`-vertex graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Reduced,
    Full,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "reduced" => Ok(Mode::Reduced),
            "full" => Ok(Mode::Full),
            other => Err(Error::Validation(format!("unknown mode '{other}'"))),
        }
    }
}

/// Exact numeric evolution of a bipartite search instance.
#[derive(Debug, Clone)]
pub struct BipartiteSearch {
    spec: BipartiteSpec,
    mode: Mode,
    prop: Propagator,
}

impl BipartiteSearch {
    pub fn new(spec: BipartiteSpec, walk: WalkKind, gamma: f64, mode: Mode) -> Result<Self> {
        let h = match mode {
            Mode::Reduced => to_complex(&reduced_hamiltonian(&spec, walk, gamma)?),
            Mode::Full => {
                let (g, marked) = spec.complete_bipartite()?;
                evolve::search_hamiltonian(&SearchInstance::new(walk, g, marked, gamma)?)
            }
        };
        Ok(Self {
            spec,
            mode,
            prop: Propagator::new(&h)?,
        })
    }

    pub fn spec(&self) -> &BipartiteSpec {
        &self.spec
    }

    pub fn propagator(&self) -> &Propagator {
        &self.prop
    }

    pub fn start_state(&self, start: &ReducedState) -> Result<QuantumState> {
        match self.mode {
            Mode::Reduced => Ok(start.to_state()),
            Mode::Full => reduced_to_full(&self.spec, start),
        }
    }

    /// Class probabilities at each of `times`.
    pub fn class_curve(
        &self,
        start: &ReducedState,
        times: &[f64],
        exec: Execution,
    ) -> Result<Vec<ClassProbabilities>> {
        let psi0 = self.start_state(start)?;
        let traj = self.prop.trajectory(&psi0)?;
        let spec = self.spec;
        let mode = self.mode;
        let curve = traj.sample(times, exec, |psi| match mode {
            Mode::Reduced => {
                ClassProbabilities::from(std::array::from_fn(|k| psi.amplitudes()[k].norm_sqr()))
            }
            Mode::Full => class_probabilities(&spec, psi).expect("dimension checked"),
        })?;
        Ok(curve)
    }

    /// Maximum success probability on `times` (see [`find_peak`]).
    pub fn success_peak(
        &self,
        start: &ReducedState,
        times: &[f64],
        exec: Execution,
    ) -> Result<Peak> {
        let curve = self.class_curve(start, times, exec)?;
        let p: Vec<f64> = curve.iter().map(ClassProbabilities::success).collect();
        find_peak(times, &p).ok_or_else(|| Error::Validation("empty time grid".into()))
    }
}
