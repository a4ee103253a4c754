//! Transition structure of a spectrum: the positive roots (level-pair
//! energy differences), the subset touched by the control matrix, and the
//! regular/degenerate classifications used by the controllability criteria.

use crate::error::CoreError;

/// Default relative tolerance for deciding that two transition values
/// coincide (a resonance).
pub const ROOT_EQ_TOL: f64 = 1e-9;

/// Sorted energy levels of an N-level system (atomic units).
#[derive(Debug, Clone, PartialEq)]
pub struct EnergySpectrum {
    energies: Vec<f64>,
}

impl EnergySpectrum {
    /// Requires at least two levels in nondecreasing order. Sorting (with
    /// the matching relabeling of the coupling matrix) is the caller's job,
    /// since reordering levels permutes every other input consistently.
    pub fn new(energies: Vec<f64>) -> Result<Self, CoreError> {
        if energies.len() < 2 {
            return Err(CoreError::InvalidDimension { n: energies.len() });
        }
        if energies.iter().any(|e| !e.is_finite()) {
            return Err(CoreError::Validation("non-finite energy level".into()));
        }
        if energies.windows(2).any(|w| w[0] > w[1]) {
            return Err(CoreError::Validation(
                "energy levels must be nondecreasing".into(),
            ));
        }
        Ok(Self { energies })
    }

    pub fn n(&self) -> usize {
        self.energies.len()
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    /// Copy shifted to zero mean, so the drift matrix built from it is
    /// traceless. Transition values are unchanged.
    pub fn mean_shifted(&self) -> Self {
        let mean = self.energies.iter().sum::<f64>() / self.energies.len() as f64;
        Self {
            energies: self.energies.iter().map(|e| e - mean).collect(),
        }
    }

    /// Spread of the spectrum, used to scale equality tolerances.
    pub fn spread(&self) -> f64 {
        self.energies[self.energies.len() - 1] - self.energies[0]
    }

    /// True when two levels coincide within the scaled tolerance. Degenerate
    /// spectra are accepted as input but the singular-case criteria refuse
    /// to fire on them.
    pub fn is_degenerate(&self, tol: f64) -> bool {
        let eff = tol * self.spread().max(1.0);
        self.energies.windows(2).any(|w| (w[1] - w[0]).abs() <= eff)
    }
}

/// A positive root: the transition between two levels, identified by the
/// 0-based level pair (i, j) with i < j, with its value at the drift.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub i: usize,
    pub j: usize,
    /// Energy difference E_j - E_i; nonnegative for sorted spectra.
    pub value_at_drift: f64,
}

impl Root {
    pub fn pair(&self) -> (usize, usize) {
        (self.i, self.j)
    }

    /// 1-based label for humans, e.g. "a(1,3)".
    pub fn label(&self) -> String {
        format!("a({},{})", self.i + 1, self.j + 1)
    }
}

/// All N(N-1)/2 positive roots in lexicographic (i, j) order.
pub fn compute_roots(spectrum: &EnergySpectrum) -> Vec<Root> {
    let e = spectrum.energies();
    let n = spectrum.n();
    let mut roots = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            roots.push(Root {
                i,
                j,
                value_at_drift: e[j] - e[i],
            });
        }
    }
    roots
}

/// A list of values is regular when every value exceeds `tol` in magnitude
/// and every pairwise difference does too (no zeros, no collisions).
pub fn is_regular(values: &[f64], tol: f64) -> bool {
    for (k, v) in values.iter().enumerate() {
        if v.abs() <= tol {
            return false;
        }
        for w in &values[k + 1..] {
            if (v - w).abs() <= tol {
                return false;
            }
        }
    }
    true
}

/// Indices (into `values`) of the `candidates` whose value is nonzero and
/// distinct from every OTHER value in the full list, within `tol`. This is
/// the per-root notion of regularity: distinctness is tested against all
/// positive roots, not only the candidate subset.
fn regular_subset(values: &[f64], candidates: &[usize], tol: f64) -> Vec<usize> {
    candidates
        .iter()
        .copied()
        .filter(|&c| {
            let v = values[c];
            v.abs() > tol
                && values
                    .iter()
                    .enumerate()
                    .all(|(k, w)| k == c || (v - w).abs() > tol)
        })
        .collect()
}

/// Splits the touched roots into the part regular at the drift and the
/// degenerate remainder. Returns (regular, degenerate) index lists.
pub fn split_regular(roots: &[Root], touched: &[usize], tol: f64) -> (Vec<usize>, Vec<usize>) {
    let values: Vec<f64> = roots.iter().map(|r| r.value_at_drift).collect();
    let regular = regular_subset(&values, touched, tol);
    let degenerate = touched
        .iter()
        .copied()
        .filter(|idx| !regular.contains(idx))
        .collect();
    (regular, degenerate)
}

/// Root bookkeeping for one control system: every positive root with its
/// value at the drift and at the diagonal part of the control matrix, plus
/// the index sets the criteria consume.
#[derive(Debug, Clone)]
pub struct RootTable {
    roots: Vec<Root>,
    /// Roots whose coupling entry is nonzero (indices into `roots`).
    touched: Vec<usize>,
    /// Touched roots regular at the drift (distinct against all roots).
    regular_touched: Vec<usize>,
    /// Touched roots degenerate at the drift.
    degenerate_touched: Vec<usize>,
    /// Touched roots regular when evaluated at the control diagonal.
    regular_touched_at_diag: Vec<usize>,
    /// Value of every root at the control diagonal.
    values_at_diag: Vec<f64>,
    /// Effective absolute tolerance used for drift-value equality.
    drift_tol: f64,
    /// Effective absolute tolerance used for diagonal-value equality.
    diag_tol: f64,
}

impl RootTable {
    /// `touched_pairs` are the 0-based level pairs with nonzero coupling;
    /// `diag_coeffs` are the real diagonal coefficients t of the control
    /// matrix (its diagonal is i*t), whose differences are the root values
    /// at that diagonal. `root_eq_tol` is the relative resonance tolerance.
    pub fn build(
        spectrum: &EnergySpectrum,
        touched_pairs: &[(usize, usize)],
        diag_coeffs: &[f64],
        root_eq_tol: f64,
    ) -> Result<Self, CoreError> {
        let n = spectrum.n();
        if diag_coeffs.len() != n {
            return Err(CoreError::DimensionMismatch {
                left: diag_coeffs.len(),
                right: n,
            });
        }
        let roots = compute_roots(spectrum);
        let index_of = |i: usize, j: usize| -> Result<usize, CoreError> {
            if i >= j || j >= n {
                return Err(CoreError::Validation(format!(
                    "invalid level pair ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
            Ok(i * n - i * (i + 1) / 2 + (j - i - 1))
        };
        let mut touched: Vec<usize> = Vec::with_capacity(touched_pairs.len());
        for &(i, j) in touched_pairs {
            touched.push(index_of(i, j)?);
        }
        touched.sort_unstable();
        touched.dedup();

        let drift_tol = root_eq_tol * spectrum.spread().max(1.0);
        let (regular_touched, degenerate_touched) = split_regular(&roots, &touched, drift_tol);

        let values_at_diag: Vec<f64> = roots
            .iter()
            .map(|r| diag_coeffs[r.i] - diag_coeffs[r.j])
            .collect();
        let diag_spread = diag_coeffs.iter().fold(f64::NEG_INFINITY, |a, &v| a.max(v))
            - diag_coeffs.iter().fold(f64::INFINITY, |a, &v| a.min(v));
        let diag_tol = root_eq_tol * diag_spread.max(1.0);
        let regular_touched_at_diag = regular_subset(&values_at_diag, &touched, diag_tol);

        Ok(Self {
            roots,
            touched,
            regular_touched,
            degenerate_touched,
            regular_touched_at_diag,
            values_at_diag,
            drift_tol,
            diag_tol,
        })
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn drift_values(&self) -> Vec<f64> {
        self.roots.iter().map(|r| r.value_at_drift).collect()
    }

    pub fn touched(&self) -> &[usize] {
        &self.touched
    }

    pub fn regular_touched(&self) -> &[usize] {
        &self.regular_touched
    }

    pub fn degenerate_touched(&self) -> &[usize] {
        &self.degenerate_touched
    }

    pub fn regular_touched_at_diag(&self) -> &[usize] {
        &self.regular_touched_at_diag
    }

    pub fn values_at_diag(&self) -> &[f64] {
        &self.values_at_diag
    }

    pub fn drift_tol(&self) -> f64 {
        self.drift_tol
    }

    pub fn diag_tol(&self) -> f64 {
        self.diag_tol
    }

    pub fn pairs(&self, indices: &[usize]) -> Vec<(usize, usize)> {
        indices.iter().map(|&k| self.roots[k].pair()).collect()
    }

    /// Regularity of the drift restricted to the touched roots: all touched
    /// values nonzero and pairwise distinct among themselves. Errors when
    /// nothing is touched (the control matrix has no off-diagonal part).
    pub fn is_b_regular(&self) -> Result<bool, CoreError> {
        if self.touched.is_empty() {
            return Err(CoreError::DegenerateInput(
                "control matrix touches no transition".into(),
            ));
        }
        let values: Vec<f64> = self
            .touched
            .iter()
            .map(|&k| self.roots[k].value_at_drift)
            .collect();
        Ok(is_regular(&values, self.drift_tol))
    }
}
