//! Search Hamiltonians and exact time evolution.
//!
//! States are propagated in the eigenbasis of the (time-independent)
//! Hamiltonian, `|psi(t)> = V exp(-i Lambda t) V^dagger |psi(0)>`, so long
//! evolution times carry no series-truncation error.

use std::fmt;
use std::str::FromStr;

use crate::eigen::{eig_hermitian, EigenDecomposition};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::graph::Graph;
use crate::{CMatrix, CVector, RMatrix, C64};

/// States must have unit norm to within this tolerance.
pub const NORM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WalkKind {
    Laplacian,
    Adjacency,
    SignlessLaplacian,
}

impl WalkKind {
    pub const ALL: [WalkKind; 3] = [
        WalkKind::Laplacian,
        WalkKind::Adjacency,
        WalkKind::SignlessLaplacian,
    ];

    /// The graph matrix `W` in `H = -gamma W - oracle`.
    pub fn graph_matrix(self, g: &Graph) -> RMatrix {
        match self {
            WalkKind::Laplacian => g.laplacian(),
            WalkKind::Adjacency => g.adjacency_matrix(),
            WalkKind::SignlessLaplacian => g.signless_laplacian(),
        }
    }
}

impl fmt::Display for WalkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WalkKind::Laplacian => "laplacian",
            WalkKind::Adjacency => "adjacency",
            WalkKind::SignlessLaplacian => "signless",
        })
    }
}

impl FromStr for WalkKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "laplacian" | "l" => Ok(WalkKind::Laplacian),
            "adjacency" | "a" => Ok(WalkKind::Adjacency),
            "signless" | "signless-laplacian" | "q" => Ok(WalkKind::SignlessLaplacian),
            other => Err(Error::Validation(format!("unknown walk kind '{other}'"))),
        }
    }
}

/// A graph, its marked vertices, a walk kind and a jumping rate.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchInstance {
    walk: WalkKind,
    graph: Graph,
    marked: Vec<usize>,
    gamma: f64,
}

impl SearchInstance {
    /// `gamma = 0` is accepted (pure oracle evolution).
    pub fn new(
        walk: WalkKind,
        graph: Graph,
        marked: impl IntoIterator<Item = usize>,
        gamma: f64,
    ) -> Result<Self> {
        let mut marked: Vec<usize> = marked.into_iter().collect();
        marked.sort_unstable();
        marked.dedup();
        if marked.is_empty() {
            return Err(Error::Validation("marked set must be nonempty".into()));
        }
        if let Some(&bad) = marked.iter().find(|&&m| m >= graph.vertex_count()) {
            return Err(Error::Validation(format!(
                "marked vertex {bad} out of range for {} vertices",
                graph.vertex_count()
            )));
        }
        if !(gamma.is_finite() && gamma >= 0.0) {
            return Err(Error::Validation(format!(
                "jumping rate must be finite and >= 0, got {gamma}"
            )));
        }
        Ok(Self {
            walk,
            graph,
            marked,
            gamma,
        })
    }

    pub fn walk(&self) -> WalkKind {
        self.walk
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn marked(&self) -> &[usize] {
        &self.marked
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn with_gamma(&self, gamma: f64) -> Result<Self> {
        Self::new(self.walk, self.graph.clone(), self.marked.clone(), gamma)
    }

    pub fn dim(&self) -> usize {
        self.graph.vertex_count()
    }
}

/// `H = -gamma W - sum_{i marked} |i><i|` with `W` one of `A`, `L = A - D`, `Q = A + D`.
pub fn search_hamiltonian(inst: &SearchInstance) -> CMatrix {
    let mut h = inst.walk.graph_matrix(&inst.graph) * -inst.gamma;
    for &m in &inst.marked {
        h[(m, m)] -= 1.0;
    }
    h.map(|x| C64::new(x, 0.0))
}

/// A normalized complex amplitude vector.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    amplitudes: CVector,
}

impl QuantumState {
    pub fn new(amplitudes: CVector) -> Result<Self> {
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { amplitudes })
    }

    /// Scales `amplitudes` to unit norm.
    pub fn normalized(amplitudes: CVector) -> Result<Self> {
        let norm = amplitudes.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self {
            amplitudes: amplitudes / C64::new(norm, 0.0),
        })
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(CVector::from_iterator(
            amplitudes.len(),
            amplitudes.iter().map(|&x| C64::new(x, 0.0)),
        ))
    }

    /// Uniform superposition `1/sqrt(n) sum_i |i>`.
    pub fn uniform(n: usize) -> Self {
        let a = 1.0 / (n as f64).sqrt();
        Self {
            amplitudes: CVector::from_element(n, C64::new(a, 0.0)),
        }
    }

    pub fn basis(n: usize, k: usize) -> Self {
        let mut v = CVector::zeros(n);
        v[k] = C64::new(1.0, 0.0);
        Self { amplitudes: v }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> CVector {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    /// `|c_i|^2` for every entry.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|z| z.norm_sqr()).collect()
    }
}

/// Total probability on `marked`. Indices outside the state are ignored.
pub fn success_probability(psi: &QuantumState, marked: &[usize]) -> f64 {
    marked
        .iter()
        .filter_map(|&i| psi.amplitudes.get(i))
        .map(|z| z.norm_sqr())
        .sum()
}

/// Exact propagator `exp(-i H t)` for a fixed Hermitian `H`.
#[derive(Debug, Clone)]
pub struct Propagator {
    eig: EigenDecomposition,
}

impl Propagator {
    pub fn new(h: &CMatrix) -> Result<Self> {
        Ok(Self {
            eig: eig_hermitian(h)?,
        })
    }

    pub fn from_decomposition(eig: EigenDecomposition) -> Self {
        Self { eig }
    }

    pub fn decomposition(&self) -> &EigenDecomposition {
        &self.eig
    }

    pub fn dim(&self) -> usize {
        self.eig.dim()
    }

    /// Expands `psi0` in the eigenbasis once; the result evaluates any `t` in `O(n^2)`.
    pub fn trajectory(&self, psi0: &QuantumState) -> Result<Trajectory<'_>> {
        if psi0.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: psi0.dim(),
            });
        }
        let coeffs = self.eig.eigenvectors.adjoint() * psi0.amplitudes();
        Ok(Trajectory {
            prop: self,
            coeffs,
            initial: psi0.clone(),
        })
    }

    pub fn evolve(&self, psi0: &QuantumState, t: f64) -> Result<QuantumState> {
        self.trajectory(psi0)?.state_at(t)
    }
}

/// A state's evolution under a fixed [`Propagator`].
#[derive(Debug, Clone)]
pub struct Trajectory<'a> {
    prop: &'a Propagator,
    coeffs: CVector,
    initial: QuantumState,
}

impl Trajectory<'_> {
    pub fn state_at(&self, t: f64) -> Result<QuantumState> {
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::Validation(format!(
                "time must be finite and >= 0, got {t}"
            )));
        }
        if t == 0.0 {
            return Ok(self.initial.clone());
        }
        let phased = CVector::from_iterator(
            self.coeffs.len(),
            self.coeffs
                .iter()
                .zip(&self.prop.eig.eigenvalues)
                .map(|(c, &lam)| c * C64::from_polar(1.0, -lam * t)),
        );
        Ok(QuantumState {
            amplitudes: &self.prop.eig.eigenvectors * phased,
        })
    }

    /// Evaluates `f(state)` at each time, in order.
    pub fn sample<R, F>(&self, times: &[f64], exec: Execution, f: F) -> Result<Vec<R>>
    where
        R: Send,
        F: Fn(&QuantumState) -> R + Sync + Send,
    {
        exec.try_map(times, |&t| self.state_at(t).map(|s| f(&s)))
    }
}

/// `exp(-i h t) |psi0>`.
pub fn evolve_state(h: &CMatrix, psi0: &QuantumState, t: f64) -> Result<QuantumState> {
    if h.nrows() != psi0.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.nrows(),
            actual: psi0.dim(),
        });
    }
    Propagator::new(h)?.evolve(psi0, t)
}

/// `samples` evenly spaced points on `[0, t_max]`, both endpoints included.
pub fn time_grid(t_max: f64, samples: usize) -> Vec<f64> {
    match samples {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => {
            let step = t_max / (samples - 1) as f64;
            (0..samples).map(|i| i as f64 * step).collect()
        }
    }
}

/// A sampled maximum of a curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub t: f64,
    pub value: f64,
}

/// Locates the global maximum of `values` sampled at `times` (earliest
/// sample on exact ties) and refines it with the parabola through the
/// bracketing samples. Endpoint maxima are returned unrefined.
pub fn find_peak(times: &[f64], values: &[f64]) -> Option<Peak> {
    if times.is_empty() || times.len() != values.len() {
        return None;
    }
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = i;
        }
    }
    let raw = Peak {
        t: times[best],
        value: values[best],
    };
    if best == 0 || best + 1 == values.len() {
        return Some(raw);
    }
    let (t0, t1, t2) = (times[best - 1], times[best], times[best + 1]);
    let (y0, y1, y2) = (values[best - 1], values[best], values[best + 1]);
    // Newton form of the interpolating parabola.
    let d01 = (y1 - y0) / (t1 - t0);
    let d12 = (y2 - y1) / (t2 - t1);
    let curv = (d12 - d01) / (t2 - t0);
    if curv >= 0.0 {
        return Some(raw);
    }
    // y(t) = y0 + d01 (t - t0) + curv (t - t0)(t - t1)
    let tv = (t0 + t1) / 2.0 - d01 / (2.0 * curv);
    let tv = tv.clamp(t0, t2);
    let yv = y0 + d01 * (tv - t0) + curv * (tv - t0) * (tv - t1);
    Some(Peak {
        t: tv,
        value: yv.max(y1),
    })
}

/// A set of orthonormal vectors; the weight of a state is its squared
/// projection `sum_j |<phi_j|psi>|^2` onto their span.
#[derive(Debug, Clone, PartialEq)]
pub struct Probe {
    pub name: String,
    pub vectors: Vec<CVector>,
}

impl Probe {
    pub fn state(name: impl Into<String>, psi: &QuantumState) -> Self {
        Self {
            name: name.into(),
            vectors: vec![psi.amplitudes().clone()],
        }
    }

    /// Span of computational basis vectors `|i>`, `i` in `vertices`.
    pub fn vertices(
        name: impl Into<String>,
        dim: usize,
        vertices: impl IntoIterator<Item = usize>,
    ) -> Self {
        Self {
            name: name.into(),
            vectors: vertices
                .into_iter()
                .map(|i| QuantumState::basis(dim, i).into_amplitudes())
                .collect(),
        }
    }

    /// Span of `vectors`, which must be orthonormal.
    pub fn span(name: impl Into<String>, vectors: Vec<CVector>) -> Self {
        Self {
            name: name.into(),
            vectors,
        }
    }

    pub fn weight(&self, psi: &CVector) -> f64 {
        self.vectors
            .iter()
            .map(|phi| phi.dotc(psi).norm_sqr())
            .sum()
    }
}

/// Which eigenvectors an overlap profile reports.
#[derive(Debug, Clone, PartialEq)]
pub enum EigenSelection {
    /// The `k` lowest eigenpairs.
    Lowest(usize),
    /// The `k` eigenpairs with the largest weight on a subspace, reported in
    /// ascending eigenvalue order.
    LargestWeight(usize, Probe),
}

#[derive(Debug, Clone, PartialEq)]
pub struct OverlapRow {
    pub gamma: f64,
    /// Rank among the reported eigenvectors, ascending in eigenvalue.
    pub n: usize,
    pub eigenvalue: f64,
    /// One weight per probe, in probe order.
    pub weights: Vec<f64>,
}

/// For each `gamma`, diagonalizes `hamiltonian(gamma)` and records the
/// weight of every selected eigenvector on every probe. Rows are ordered by
/// the position of `gamma` in `gammas`, then by `n`.
pub fn overlap_profile<F>(
    gammas: &[f64],
    hamiltonian: F,
    probes: &[Probe],
    selection: EigenSelection,
    exec: Execution,
) -> Result<Vec<OverlapRow>>
where
    F: Fn(f64) -> Result<CMatrix> + Sync + Send,
{
    if gammas.is_empty() {
        return Err(Error::Validation(
            "overlap profile needs at least one gamma".into(),
        ));
    }
    let selector = match &selection {
        EigenSelection::LargestWeight(_, p) => Some(p),
        EigenSelection::Lowest(_) => None,
    };
    let per_gamma = exec.try_map(gammas, |&gamma| -> Result<Vec<OverlapRow>> {
        let h = hamiltonian(gamma)?;
        for p in probes.iter().chain(selector) {
            for v in &p.vectors {
                if v.len() != h.nrows() {
                    return Err(Error::DimensionMismatch {
                        expected: h.nrows(),
                        actual: v.len(),
                    });
                }
            }
        }
        let eig = eig_hermitian(&h)?;
        let weights: Vec<Vec<f64>> = (0..eig.dim())
            .map(|k| {
                let v = eig.eigenvector(k);
                probes.iter().map(|p| p.weight(&v)).collect()
            })
            .collect();
        let chosen: Vec<usize> = match &selection {
            EigenSelection::Lowest(k) => (0..(*k).min(eig.dim())).collect(),
            EigenSelection::LargestWeight(k, probe) => {
                let on: Vec<f64> = (0..eig.dim())
                    .map(|i| probe.weight(&eig.eigenvector(i)))
                    .collect();
                let mut idx: Vec<usize> = (0..eig.dim()).collect();
                // Stable sort keeps ascending-eigenvalue order among equal weights.
                idx.sort_by(|&a, &b| on[b].total_cmp(&on[a]));
                idx.truncate(*k);
                idx.sort_unstable();
                idx
            }
        };
        Ok(chosen
            .into_iter()
            .enumerate()
            .map(|(n, k)| OverlapRow {
                gamma,
                n,
                eigenvalue: eig.eigenvalues[k],
                weights: weights[k].clone(),
            })
            .collect())
    })?;
    Ok(per_gamma.into_iter().flatten().collect())
}
