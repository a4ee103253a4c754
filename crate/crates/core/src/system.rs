//! A control system: the drift built from an energy spectrum plus a
//! Hermitian coupling matrix, normalized on ingest so that both generators
//! live in su(N).

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::CoreError;
use crate::graph::{build_graph, TransitionGraph};
use crate::roots::{EnergySpectrum, RootTable, ROOT_EQ_TOL};
use crate::su::{SuElement, I, VALIDATION_TOL};

/// Tolerances threaded through an analysis. All are relative; effective
/// absolute thresholds are scaled by the magnitude of the data they test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Resonance detection: two transition values collide when they differ
    /// by less than this times the spectrum spread (floored at 1).
    pub root_eq: f64,
    /// Edge detection: a coupling entry below this times the largest entry
    /// magnitude (floored at 1) is treated as zero.
    pub edge: f64,
    /// Rank acceptance in the closure oracle, relative to the candidate
    /// bracket's own norm.
    pub rank: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            root_eq: ROOT_EQ_TOL,
            edge: 1e-10,
            rank: 1e-8,
        }
    }
}

/// The pair of su(N) generators for an N-level system: diagonal drift
/// A = -i * diag(energies) and control B = -i * coupling.
///
/// Ingest normalization (none of it changes any decision):
/// - levels are relabeled so energies are nondecreasing, with the coupling
///   permuted consistently;
/// - energies are shifted to zero mean;
/// - the coupling is symmetrized to exactly Hermitian (after validating it
///   was Hermitian within tolerance) and its trace, a global phase, is
///   removed.
#[derive(Debug, Clone)]
pub struct ControlSystem {
    label: Option<String>,
    spectrum: EnergySpectrum,
    coupling: Array2<Complex64>,
    a: SuElement,
    b: SuElement,
    graph: TransitionGraph,
    table: RootTable,
    tol: Tolerances,
}

impl ControlSystem {
    pub fn new(
        energies: Vec<f64>,
        coupling: Array2<Complex64>,
        tol: Tolerances,
        label: Option<String>,
    ) -> Result<Self, CoreError> {
        let n = energies.len();
        if n < 2 {
            return Err(CoreError::InvalidDimension { n });
        }
        if coupling.nrows() != n || coupling.ncols() != n {
            return Err(CoreError::DimensionMismatch {
                left: n,
                right: coupling.nrows().max(coupling.ncols()),
            });
        }
        if energies.iter().any(|e| !e.is_finite()) {
            return Err(CoreError::Validation("non-finite energy level".into()));
        }
        if coupling
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(CoreError::Validation(
                "non-finite coupling entry".into(),
            ));
        }

        let scale = coupling
            .iter()
            .map(|z| z.norm())
            .fold(0.0_f64, f64::max)
            .max(1.0);
        let herm_tol = VALIDATION_TOL * scale;
        for i in 0..n {
            for j in i..n {
                let residual = (coupling[(i, j)] - coupling[(j, i)].conj()).norm();
                if residual > herm_tol {
                    return Err(CoreError::NotHermitian {
                        i: i + 1,
                        j: j + 1,
                        residual,
                        tol: herm_tol,
                    });
                }
            }
        }

        // Relabel levels so energies are nondecreasing; the coupling rows
        // and columns follow the same permutation.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| energies[a].partial_cmp(&energies[b]).unwrap());
        let sorted_energies: Vec<f64> = order.iter().map(|&k| energies[k]).collect();
        let mut permuted = Array2::zeros((n, n));
        for (i, &pi) in order.iter().enumerate() {
            for (j, &pj) in order.iter().enumerate() {
                permuted[(i, j)] = coupling[(pi, pj)];
            }
        }

        // Exact symmetrization; drops rounding noise and makes the diagonal
        // purely real.
        let mut herm = permuted.clone();
        for i in 0..n {
            for j in 0..n {
                herm[(i, j)] = (permuted[(i, j)] + permuted[(j, i)].conj()) * 0.5;
            }
        }
        // Remove the trace: a multiple of the identity commutes with
        // everything and only produces a global phase.
        let trace_mean: f64 = (0..n).map(|k| herm[(k, k)].re).sum::<f64>() / n as f64;
        for k in 0..n {
            herm[(k, k)] -= Complex64::new(trace_mean, 0.0);
        }

        let spectrum = EnergySpectrum::new(sorted_energies)?.mean_shifted();

        let mut a_mat: Array2<Complex64> = Array2::zeros((n, n));
        for (k, e) in spectrum.energies().iter().enumerate() {
            a_mat[(k, k)] = -I * e;
        }
        let a = SuElement::new(a_mat)?;
        let b = SuElement::new(herm.mapv(|z| -I * z))?;

        let graph = build_graph(&b, tol.edge * b.max_abs().max(1.0));
        let touched: Vec<(usize, usize)> = graph.edges().collect();
        let table = RootTable::build(&spectrum, &touched, &b.diagonal_imag(), tol.root_eq)?;

        Ok(Self {
            label,
            spectrum,
            coupling: herm,
            a,
            b,
            graph,
            table,
            tol,
        })
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn n(&self) -> usize {
        self.spectrum.n()
    }

    /// Dimension of su(N), the target of the rank condition.
    pub fn full_dimension(&self) -> usize {
        self.n() * self.n() - 1
    }

    pub fn spectrum(&self) -> &EnergySpectrum {
        &self.spectrum
    }

    /// The normalized Hermitian coupling matrix.
    pub fn coupling(&self) -> &Array2<Complex64> {
        &self.coupling
    }

    pub fn drift(&self) -> &SuElement {
        &self.a
    }

    pub fn control(&self) -> &SuElement {
        &self.b
    }

    pub fn graph(&self) -> &TransitionGraph {
        &self.graph
    }

    pub fn root_table(&self) -> &RootTable {
        &self.table
    }

    pub fn tolerances(&self) -> Tolerances {
        self.tol
    }

    /// Effective absolute edge threshold used for this system's graph.
    pub fn edge_threshold(&self) -> f64 {
        self.tol.edge * self.b.max_abs().max(1.0)
    }

    pub fn is_degenerate(&self) -> bool {
        self.spectrum.is_degenerate(self.tol.root_eq)
    }
}
