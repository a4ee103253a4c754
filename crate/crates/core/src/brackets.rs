//! Derived bracket objects for the singular-case criteria: the level-one
//! bracket C = [A, B], the level-two bracket D = [C, B], diagonal /
//! off-diagonal splits, the regular / degenerate split of the control
//! matrix, and the matrix of iterated drift brackets whose determinant
//! witnesses that the touched root spaces are reachable.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::CoreError;
use crate::linalg::complex_determinant;
use crate::roots::RootTable;
use crate::su::{commutator, SuElement};
use crate::system::ControlSystem;

/// Fixed engine-wide phase: the diagonal of D equals `DIAGONAL_PHASE`
/// times the real coefficient vector d, whose entries match the
/// energy-level expression `d_k = 2 sum_l (E_k - E_l) |b_kl|^2`. Pinned by
/// the cross-check in `derive_brackets`.
pub const DIAGONAL_PHASE: Complex64 = Complex64::new(0.0, 1.0);

/// Tolerance for the two independent computations of d to agree, relative
/// to the magnitude of the coefficients.
pub const DK_CONSISTENCY_TOL: f64 = 1e-8;

/// Everything the singular-case criteria read off the brackets of one
/// system.
#[derive(Debug, Clone)]
pub struct DerivedBrackets {
    /// Level-one bracket [A, B]; zero diagonal since A is diagonal.
    pub c: SuElement,
    /// Level-two bracket [[A, B], B].
    pub d: SuElement,
    /// Diagonal part of the control matrix.
    pub b0: SuElement,
    /// Off-diagonal part of the control matrix.
    pub b1: SuElement,
    /// Diagonal part of D.
    pub d0: SuElement,
    /// Off-diagonal part of D.
    pub d1: SuElement,
    /// Real coefficients with d0 = DIAGONAL_PHASE * diag(dk). They sum to
    /// zero (D stays traceless).
    pub dk: Vec<f64>,
    /// Diagonal plus the touched entries whose transition is regular at the
    /// drift.
    pub br: SuElement,
    /// Touched entries whose transition is degenerate at the drift.
    pub bs: SuElement,
    /// Restriction of C to the touched transitions regular at the control
    /// diagonal.
    pub cr: SuElement,
}

/// The d coefficients computed from the energy levels and coupling moduli
/// alone, independent of any matrix bracket:
/// `d_k = 2 sum_{l != k} (E_k - E_l) |h_kl|^2`.
pub fn dk_from_energies(sys: &ControlSystem) -> Vec<f64> {
    let n = sys.n();
    let e = sys.spectrum().energies();
    let h = sys.coupling();
    (0..n)
        .map(|k| {
            2.0 * (0..n)
                .filter(|&l| l != k)
                .map(|l| (e[k] - e[l]) * h[(k, l)].norm_sqr())
                .sum::<f64>()
        })
        .collect()
}

/// Restriction of a matrix to the given level pairs: keeps entries (i, j)
/// and (j, i) for each pair, everything else zero (diagonal excluded).
fn restrict_to_pairs(m: &SuElement, pairs: &[(usize, usize)]) -> SuElement {
    let n = m.dim();
    let mut out: Array2<Complex64> = Array2::zeros((n, n));
    for &(i, j) in pairs {
        out[(i, j)] = m.entry(i, j);
        out[(j, i)] = m.entry(j, i);
    }
    SuElement::new_unchecked(out)
}

/// Computes the bracket objects and cross-checks the diagonal of D against
/// the energy-level expression; disagreement indicates a bug and is
/// reported as an internal-consistency error.
pub fn derive_brackets(sys: &ControlSystem) -> Result<DerivedBrackets, CoreError> {
    let a = sys.drift();
    let b = sys.control();
    debug_assert!(a.is_diagonal(1e-15));

    let c = commutator(a, b)?;
    let d = commutator(&c, b)?;

    let b0 = b.diagonal_part();
    let b1 = b.off_diagonal_part();
    let d0 = d.diagonal_part();
    let d1 = d.off_diagonal_part();

    // DIAGONAL_PHASE is i, so the real coefficients are the imaginary parts.
    let dk = d0.diagonal_imag();
    let dk_formula = dk_from_energies(sys);
    let scale = dk_formula
        .iter()
        .chain(dk.iter())
        .fold(0.0_f64, |acc, v| acc.max(v.abs()))
        .max(1.0);
    for (k, (direct, formula)) in dk.iter().zip(dk_formula.iter()).enumerate() {
        let residual = (direct - formula).abs();
        if residual > DK_CONSISTENCY_TOL * scale {
            return Err(CoreError::Inconsistency(format!(
                "diagonal coefficient d[{k}] from brackets ({direct:.6e}) disagrees with the energy-level expression ({formula:.6e})"
            )));
        }
        let real_leak = d0.entry(k, k).re.abs();
        if real_leak > DK_CONSISTENCY_TOL * scale {
            return Err(CoreError::Inconsistency(format!(
                "diagonal of D has unexpected real part {real_leak:.6e} at level {k}"
            )));
        }
    }

    let table = sys.root_table();
    let br = b0.add(&restrict_to_pairs(b, &table.pairs(table.regular_touched())))?;
    let bs = restrict_to_pairs(b, &table.pairs(table.degenerate_touched()));
    let cr = restrict_to_pairs(&c, &table.pairs(table.regular_touched_at_diag()));

    Ok(DerivedBrackets {
        c,
        d,
        b0,
        b1,
        d0,
        d1,
        dk,
        br,
        bs,
        cr,
    })
}

/// Which diagonal matrix to evaluate the roots at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagonalSource {
    /// Diagonal part of the control matrix.
    B0,
    /// Diagonal part of the level-two bracket.
    D0,
}

/// Value of every positive root at the chosen diagonal matrix: for root
/// (i, j) this is t_i - t_j, with t the real coefficient vector of the
/// diagonal (the matrix is i * diag(t)).
pub fn effective_diagonal_roots(
    brackets: &DerivedBrackets,
    source: DiagonalSource,
    table: &RootTable,
) -> Vec<f64> {
    let t = match source {
        DiagonalSource::B0 => brackets.b0.diagonal_imag(),
        DiagonalSource::D0 => brackets.d0.diagonal_imag(),
    };
    table
        .roots()
        .iter()
        .map(|r| t[r.i] - t[r.j])
        .collect()
}

/// The 2m x 2m matrix of iterated drift brackets: row k holds the
/// components of ad_A^k B along the touched root spaces, first the upper
/// entries (i, j), then the lower entries (j, i), in the fixed pair order.
#[derive(Debug, Clone)]
pub struct AMatrix {
    pairs: Vec<(usize, usize)>,
    entries: Array2<Complex64>,
}

impl AMatrix {
    /// Number of touched roots m (the matrix is 2m x 2m).
    pub fn root_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn entries(&self) -> &Array2<Complex64> {
        &self.entries
    }

    pub fn determinant(&self) -> Complex64 {
        complex_determinant(&self.entries)
    }

    /// Product of row 2-norms: the Hadamard bound on |det|, used as the
    /// scale for the singularity threshold.
    pub fn hadamard_bound(&self) -> f64 {
        let size = self.entries.nrows();
        (0..size)
            .map(|r| {
                (0..size)
                    .map(|c| self.entries[(r, c)].norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            })
            .product()
    }
}

/// Builds the iterated-bracket matrix over an explicit list of level pairs
/// (each (i, j), i < j). Rows come from actual commutators with the drift,
/// not from the closed-form pattern.
pub fn build_m_for_roots(
    sys: &ControlSystem,
    pairs: &[(usize, usize)],
) -> Result<AMatrix, CoreError> {
    if pairs.is_empty() {
        return Err(CoreError::DegenerateInput(
            "no touched roots: the iterated-bracket matrix is empty".into(),
        ));
    }
    let n = sys.n();
    for &(i, j) in pairs {
        if i >= j || j >= n {
            return Err(CoreError::Validation(format!(
                "invalid level pair ({}, {})",
                i + 1,
                j + 1
            )));
        }
    }
    let m = pairs.len();
    let mut entries: Array2<Complex64> = Array2::zeros((2 * m, 2 * m));
    let mut z = sys.control().clone();
    for row in 0..2 * m {
        z = commutator(sys.drift(), &z)?;
        for (col, &(i, j)) in pairs.iter().enumerate() {
            entries[(row, col)] = z.entry(i, j);
            entries[(row, m + col)] = z.entry(j, i);
        }
    }
    Ok(AMatrix {
        pairs: pairs.to_vec(),
        entries,
    })
}

/// Iterated-bracket matrix over the system's touched roots.
pub fn build_m(sys: &ControlSystem) -> Result<AMatrix, CoreError> {
    let table = sys.root_table();
    let pairs = table.pairs(table.touched());
    build_m_for_roots(sys, &pairs)
}

/// True when |det M| exceeds `tol` times the Hadamard bound of M. By the
/// determinant's factorization this happens exactly when the touched root
/// values are nonzero, pairwise distinct in absolute value, and every
/// touched coupling is nonzero.
pub fn det_m_nonzero(sys: &ControlSystem, tol: f64) -> Result<bool, CoreError> {
    let m = build_m(sys)?;
    let bound = m.hadamard_bound();
    Ok(m.determinant().norm() > tol * bound)
}
