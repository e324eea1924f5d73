//! Heisenberg XYZ spin networks.
//!
//! One spin sits on each vertex; each edge `i ~ j` contributes
//! `-(1/2) (jx X_i X_j + jy Y_i Y_j + jz Z_i Z_j)`. Restricted to states with
//! a single excitation (`|1>_z` on one spin, `|0>_z` elsewhere) and `jx = jy = gamma`,
//! the Hamiltonian is a quantum walk:
//!
//! | `jz / jx` | restriction                     |
//! |-----------|---------------------------------|
//! | 0         | `-gamma A`                      |
//! | 1         | `-gamma L - (gamma m / 2) I`    |
//! | -1        | `-gamma Q + (gamma m / 2) I`    |
//!
//! Bit order: vertex 0 is the most significant bit of the basis index, so
//! the excitation on vertex 0 is `|10...0>_z`.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::{CMatrix, RMatrix, C64};

/// Full 2^n construction is refused above this many spins (4096-dim dense).
pub const MAX_SPINS: usize = 12;
/// Deviation below which a projected Hamiltonian is accepted as a walk.
pub const EQUIVALENCE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingConstants {
    pub jx: f64,
    pub jy: f64,
    pub jz: f64,
}

impl CouplingConstants {
    pub fn new(jx: f64, jy: f64, jz: f64) -> Result<Self> {
        if !(jx.is_finite() && jy.is_finite() && jz.is_finite()) {
            return Err(Error::Validation(
                "coupling constants must be finite".into(),
            ));
        }
        Ok(Self { jx, jy, jz })
    }

    /// `jx = jy = gamma`, `jz = ratio * gamma`.
    pub fn xxz(gamma: f64, ratio: f64) -> Result<Self> {
        Self::new(gamma, gamma, ratio * gamma)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn matrix(self) -> CMatrix {
        let z = C64::new(0.0, 0.0);
        let one = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        let entries = match self {
            Pauli::I => [one, z, z, one],
            Pauli::X => [z, one, one, z],
            Pauli::Y => [z, -i, i, z],
            Pauli::Z => [one, z, z, -one],
        };
        CMatrix::from_row_slice(2, 2, &entries)
    }
}

/// `P_i P_j` on an `n`-spin register, assembled as the Kronecker product
/// `I (x) ... (x) P (x) ... (x) P (x) ... (x) I` with vertex 0 leftmost.
pub fn two_site_operator(n: usize, p: Pauli, i: usize, j: usize) -> CMatrix {
    let pm = p.matrix();
    let id = Pauli::I.matrix();
    (0..n).fold(CMatrix::identity(1, 1), |acc, k| {
        let factor = if k == i || k == j { &pm } else { &id };
        acc.kronecker(factor)
    })
}

/// Dense Hamiltonian on the `2^n`-dimensional spin space.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinHamiltonian {
    n_spins: usize,
    matrix: CMatrix,
}

impl SpinHamiltonian {
    pub fn n_spins(&self) -> usize {
        self.n_spins
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }
}

/// `H = -(1/2) sum_{i~j} (jx X_i X_j + jy Y_i Y_j + jz Z_i Z_j)`.
pub fn heisenberg_hamiltonian(g: &Graph, j: CouplingConstants) -> Result<SpinHamiltonian> {
    let n = g.vertex_count();
    if n > MAX_SPINS {
        return Err(Error::SizeLimit {
            what: "spin count",
            actual: n,
            limit: MAX_SPINS,
        });
    }
    let dim = 1usize << n;
    let mut h = CMatrix::zeros(dim, dim);
    for (a, b) in g.edges() {
        for (p, c) in [(Pauli::X, j.jx), (Pauli::Y, j.jy), (Pauli::Z, j.jz)] {
            if c != 0.0 {
                h += two_site_operator(n, p, a, b) * C64::new(-0.5 * c, 0.0);
            }
        }
    }
    Ok(SpinHamiltonian {
        n_spins: n,
        matrix: h,
    })
}

/// Basis indices of the single-excitation states; entry `k` is the state
/// with the excitation on vertex `k`.
pub fn single_excitation_basis(n: usize) -> Vec<usize> {
    (0..n).map(|k| 1usize << (n - 1 - k)).collect()
}

/// Restriction of `h` to the single-excitation subspace of `n` spins.
pub fn project_single_excitation(h: &SpinHamiltonian, n: usize) -> Result<CMatrix> {
    let expected = 1usize
        .checked_shl(n as u32)
        .filter(|_| n < usize::BITS as usize)
        .ok_or(Error::SizeLimit {
            what: "spin count",
            actual: n,
            limit: MAX_SPINS,
        })?;
    if h.dim() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            actual: h.dim(),
        });
    }
    let basis = single_excitation_basis(n);
    Ok(CMatrix::from_fn(n, n, |k, l| {
        h.matrix[(basis[k], basis[l])]
    }))
}

/// Largest matrix element coupling a single-excitation state to any basis
/// state outside the subspace. Zero when the subspace is invariant.
pub fn single_excitation_leakage(h: &SpinHamiltonian) -> f64 {
    let n = h.n_spins;
    let basis = single_excitation_basis(n);
    let mut worst = 0.0_f64;
    for &col in &basis {
        for row in 0..h.dim() {
            if row.count_ones() != 1 {
                worst = worst.max(h.matrix[(row, col)].norm());
            }
        }
    }
    worst
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkClass {
    Adjacency,
    Laplacian,
    SignlessLaplacian,
    Other,
}

impl fmt::Display for WalkClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WalkClass::Adjacency => "Adjacency",
            WalkClass::Laplacian => "Laplacian",
            WalkClass::SignlessLaplacian => "SignlessLaplacian",
            WalkClass::Other => "Other",
        })
    }
}

impl WalkClass {
    /// The class a `jz / jx` ratio should produce, if any.
    pub fn expected_for_ratio(ratio: f64) -> Self {
        if ratio == 0.0 {
            WalkClass::Adjacency
        } else if ratio == 1.0 {
            WalkClass::Laplacian
        } else if ratio == -1.0 {
            WalkClass::SignlessLaplacian
        } else {
            WalkClass::Other
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkEquivalence {
    pub class: WalkClass,
    /// Max entrywise deviation from the candidate walk Hamiltonian; for a
    /// ratio matching no walk, the smallest deviation over all three.
    pub max_deviation: f64,
}

/// The walk Hamiltonian, with identity shift, that the single-excitation
/// restriction should equal for `class` at jumping rate `gamma`.
pub fn walk_target(g: &Graph, class: WalkClass, gamma: f64) -> Option<RMatrix> {
    let n = g.vertex_count();
    let shift = RMatrix::identity(n, n) * (gamma * g.edge_count() as f64 / 2.0);
    match class {
        WalkClass::Adjacency => Some(g.adjacency_matrix() * -gamma),
        WalkClass::Laplacian => Some(g.laplacian() * -gamma - shift),
        WalkClass::SignlessLaplacian => Some(g.signless_laplacian() * -gamma + shift),
        WalkClass::Other => None,
    }
}

fn max_deviation(a: &CMatrix, b: &RMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(z, &x)| (z - C64::new(x, 0.0)).norm())
        .fold(0.0, f64::max)
}

/// Classifies the single-excitation restriction of the Heisenberg model on `g`.
pub fn certify_walk_equivalence(g: &Graph, j: CouplingConstants) -> Result<WalkEquivalence> {
    if j.jx != j.jy {
        return Err(Error::UnsupportedCoupling { jx: j.jx, jy: j.jy });
    }
    let h = heisenberg_hamiltonian(g, j)?;
    let projected = project_single_excitation(&h, g.vertex_count())?;
    let gamma = j.jx;
    let candidate = if gamma == 0.0 {
        if j.jz == 0.0 {
            WalkClass::Adjacency
        } else {
            WalkClass::Other
        }
    } else {
        WalkClass::expected_for_ratio(j.jz / gamma)
    };

    let deviation_from = |class| {
        walk_target(g, class, gamma)
            .map(|t| max_deviation(&projected, &t))
            .unwrap_or(f64::INFINITY)
    };

    Ok(match candidate {
        WalkClass::Other => WalkEquivalence {
            class: WalkClass::Other,
            max_deviation: [
                WalkClass::Adjacency,
                WalkClass::Laplacian,
                WalkClass::SignlessLaplacian,
            ]
            .into_iter()
            .map(deviation_from)
            .fold(f64::INFINITY, f64::min),
        },
        class => {
            let dev = deviation_from(class);
            WalkEquivalence {
                class: if dev <= EQUIVALENCE_TOL {
                    class
                } else {
                    WalkClass::Other
                },
                max_deviation: dev,
            }
        }
    })
}
