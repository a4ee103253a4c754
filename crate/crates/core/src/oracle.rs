//! Brute-force rank oracle: numerically close a generating set under
//! commutators and report the dimension of the span. On SU(N) the system is
//! controllable exactly when this dimension reaches N^2 - 1, which makes
//! the closure the ground truth every criterion is checked against.

use ndarray::Array1;

use crate::error::CoreError;
use crate::su::{commutator, weyl_basis, SuElement, WeylBasis};
use crate::system::ControlSystem;

/// Default generation cap: far above anything observed at desk scale, a
/// hard stop against tolerance-induced oscillation.
pub fn default_max_generations(n: usize) -> usize {
    n * n
}

/// How a basis direction entered the closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    /// Seeded from generator k.
    Generator(usize),
    /// Bracket of basis directions (left, right).
    Bracket(usize, usize),
}

/// One accepted direction: its orthonormal coordinates, the matrix it
/// reconstructs to, and where it came from.
#[derive(Debug, Clone)]
struct Direction {
    coords: Array1<f64>,
    matrix: SuElement,
    origin: Origin,
    generation: usize,
}

/// Result of a closure run.
#[derive(Debug, Clone)]
pub struct BracketClosure {
    dimension: usize,
    basis: Vec<Array1<f64>>,
    origins: Vec<(Origin, usize)>,
    depth: usize,
}

impl BracketClosure {
    /// Dimension of the closed span; the system dimension N^2 - 1 means the
    /// full algebra was generated.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Orthonormal coordinate vectors spanning the closure (length N^2 - 1
    /// each).
    pub fn basis(&self) -> &[Array1<f64>] {
        &self.basis
    }

    /// Number of bracket generations that were run.
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Which generator or bracket produced each direction, with the
    /// generation it appeared in.
    pub fn steps(&self) -> &[(Origin, usize)] {
        &self.origins
    }
}

struct ClosureState {
    basis: WeylBasis,
    directions: Vec<Direction>,
    rank_tol: f64,
}

impl ClosureState {
    /// Project a candidate against the current span (two passes, so the
    /// residual is orthonormal to working precision) and keep it when the
    /// residual is large relative to the candidate's own size.
    fn try_add(
        &mut self,
        candidate: &SuElement,
        origin: Origin,
        generation: usize,
    ) -> Result<bool, CoreError> {
        let coords = self.basis.decompose(candidate)?;
        let mut v = coords.values().clone();
        let pre_norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if pre_norm == 0.0 {
            return Ok(false);
        }
        for _ in 0..2 {
            for dir in &self.directions {
                let overlap = dir.coords.dot(&v);
                v.scaled_add(-overlap, &dir.coords);
            }
        }
        let residual = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if residual <= self.rank_tol * pre_norm {
            return Ok(false);
        }
        v.mapv_inplace(|x| x / residual);
        let matrix = self
            .basis
            .reconstruct_slice(v.as_slice().expect("contiguous"))?;
        self.directions.push(Direction {
            coords: v,
            matrix,
            origin,
            generation,
        });
        Ok(true)
    }
}

/// Closes an arbitrary generating set under commutators. Scheduling:
/// generation g brackets every direction new in generation g-1 against the
/// whole current basis; once a generation adds nothing, a full all-pairs
/// round must confirm stability before the result is returned.
pub fn closure_of_subspaces(
    generators: &[SuElement],
    rank_tol: f64,
    max_generations: usize,
) -> Result<BracketClosure, CoreError> {
    if generators.is_empty() {
        return Ok(BracketClosure {
            dimension: 0,
            basis: Vec::new(),
            origins: Vec::new(),
            depth: 0,
        });
    }
    let n = generators[0].dim();
    for g in generators {
        if g.dim() != n {
            return Err(CoreError::DimensionMismatch {
                left: n,
                right: g.dim(),
            });
        }
    }
    let full = n * n - 1;
    let mut state = ClosureState {
        basis: weyl_basis(n)?,
        directions: Vec::new(),
        rank_tol,
    };

    for (k, g) in generators.iter().enumerate() {
        state.try_add(g, Origin::Generator(k), 0)?;
    }

    let mut frontier: Vec<usize> = (0..state.directions.len()).collect();
    let mut depth = 0;
    loop {
        if state.directions.len() >= full {
            break;
        }
        if frontier.is_empty() {
            // Nothing scheduled: verify stability with one full all-pairs
            // round. Anything it finds becomes the next frontier.
            if depth >= max_generations {
                return Err(CoreError::NonConvergence {
                    dimension: state.directions.len(),
                    max_generations,
                });
            }
            depth += 1;
            let count = state.directions.len();
            let mut found = Vec::new();
            'verify: for i in 0..count {
                for j in i + 1..count {
                    let bracket =
                        commutator(&state.directions[i].matrix, &state.directions[j].matrix)?;
                    if state.try_add(&bracket, Origin::Bracket(i, j), depth)? {
                        found.push(state.directions.len() - 1);
                        if state.directions.len() >= full {
                            break 'verify;
                        }
                    }
                }
            }
            if found.is_empty() {
                break; // stable
            }
            frontier = found;
            continue;
        }
        if depth >= max_generations {
            return Err(CoreError::NonConvergence {
                dimension: state.directions.len(),
                max_generations,
            });
        }
        depth += 1;
        let mut next = Vec::new();
        'schedule: for &f in &frontier {
            let mut partner = 0;
            while partner < state.directions.len() {
                if partner != f {
                    let bracket =
                        commutator(&state.directions[f].matrix, &state.directions[partner].matrix)?;
                    if state.try_add(&bracket, Origin::Bracket(f, partner), depth)? {
                        next.push(state.directions.len() - 1);
                        if state.directions.len() >= full {
                            break 'schedule;
                        }
                    }
                }
                partner += 1;
            }
        }
        frontier = next;
    }

    let origins = state
        .directions
        .iter()
        .map(|d| (d.origin, d.generation))
        .collect();
    Ok(BracketClosure {
        dimension: state.directions.len(),
        basis: state.directions.into_iter().map(|d| d.coords).collect(),
        origins,
        depth,
    })
}

/// Closure of the drift/control pair of a system: the Lie algebra rank
/// condition evaluated numerically.
pub fn lie_closure(
    sys: &ControlSystem,
    rank_tol: f64,
    max_generations: usize,
) -> Result<BracketClosure, CoreError> {
    closure_of_subspaces(
        &[sys.drift().clone(), sys.control().clone()],
        rank_tol,
        max_generations,
    )
}
