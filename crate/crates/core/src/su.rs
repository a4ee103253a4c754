//! Numerics for the algebra su(N) of traceless skew-Hermitian matrices:
//! the root-adapted basis, commutators, coordinate decomposition, the
//! Killing form, and adjoint matrices.
//!
//! Everything here is a pure function of its inputs; elements are validated
//! at construction and immutable afterwards. Level indices are 0-based in
//! code and printed 1-based for humans.

use std::fmt;

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::error::CoreError;

/// Relative tolerance for the skew-Hermitian / traceless validation of
/// matrices arriving from outside (hand-written JSON cannot be exact).
pub const VALIDATION_TOL: f64 = 1e-10;

pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);

fn entry_scale(mat: &Array2<Complex64>) -> f64 {
    mat.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0)
}

/// A traceless skew-Hermitian N x N complex matrix, i.e. an element of su(N).
#[derive(Debug, Clone, PartialEq)]
pub struct SuElement {
    mat: Array2<Complex64>,
}

impl SuElement {
    /// Validates skew-Hermiticity and tracelessness to `VALIDATION_TOL`
    /// scaled by the largest entry magnitude.
    pub fn new(mat: Array2<Complex64>) -> Result<Self, CoreError> {
        let n = mat.nrows();
        if n < 2 {
            return Err(CoreError::InvalidDimension { n });
        }
        if mat.ncols() != n {
            return Err(CoreError::DimensionMismatch {
                left: n,
                right: mat.ncols(),
            });
        }
        if mat.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(CoreError::Validation(
                "matrix contains non-finite entries".into(),
            ));
        }
        let tol = VALIDATION_TOL * entry_scale(&mat);
        for i in 0..n {
            for j in i..n {
                let residual = (mat[(i, j)] + mat[(j, i)].conj()).norm();
                if residual > tol {
                    return Err(CoreError::NotSkewHermitian {
                        i,
                        j,
                        residual,
                        tol,
                    });
                }
            }
        }
        let trace: Complex64 = (0..n).map(|k| mat[(k, k)]).sum();
        if trace.norm() > tol {
            return Err(CoreError::NotTraceless {
                residual: trace.norm(),
                tol,
            });
        }
        Ok(Self { mat })
    }

    /// For results of internal arithmetic that is skew-Hermitian by algebra
    /// (sums, real scalings, commutators); only rounding noise can violate
    /// the invariant there.
    pub(crate) fn new_unchecked(mat: Array2<Complex64>) -> Self {
        debug_assert!(mat.nrows() == mat.ncols());
        Self { mat }
    }

    pub fn zero(n: usize) -> Self {
        Self {
            mat: Array2::zeros((n, n)),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.mat[(i, j)]
    }

    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.mat
    }

    pub fn add(&self, other: &Self) -> Result<Self, CoreError> {
        self.check_dim(other)?;
        Ok(Self::new_unchecked(&self.mat + &other.mat))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CoreError> {
        self.check_dim(other)?;
        Ok(Self::new_unchecked(&self.mat - &other.mat))
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::new_unchecked(self.mat.mapv(|z| z * factor))
    }

    /// Matrix with only the diagonal kept.
    pub fn diagonal_part(&self) -> Self {
        let n = self.dim();
        let mut out = Array2::zeros((n, n));
        for k in 0..n {
            out[(k, k)] = self.mat[(k, k)];
        }
        Self::new_unchecked(out)
    }

    /// Matrix with the diagonal zeroed.
    pub fn off_diagonal_part(&self) -> Self {
        let mut out = self.mat.clone();
        for k in 0..self.dim() {
            out[(k, k)] = Complex64::new(0.0, 0.0);
        }
        Self::new_unchecked(out)
    }

    /// Imaginary parts of the diagonal. For a skew-Hermitian matrix the
    /// diagonal is purely imaginary, so this is the full diagonal content.
    pub fn diagonal_imag(&self) -> Vec<f64> {
        (0..self.dim()).map(|k| self.mat[(k, k)].im).collect()
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                if i != j && self.mat[(i, j)].norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    pub fn max_abs(&self) -> f64 {
        self.mat.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.mat.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    fn check_dim(&self, other: &Self) -> Result<(), CoreError> {
        if self.dim() != other.dim() {
            return Err(CoreError::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }
}

/// Lie bracket XY - YX. Skew-Hermitian and traceless by algebra whenever the
/// arguments are.
pub fn commutator(x: &SuElement, y: &SuElement) -> Result<SuElement, CoreError> {
    if x.dim() != y.dim() {
        return Err(CoreError::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    let m = x.mat.dot(&y.mat) - y.mat.dot(&x.mat);
    Ok(SuElement::new_unchecked(m))
}

/// Which member of the root-adapted basis an element is.
///
/// With `E(i,j)` the elementary matrix (1 in slot `(i,j)`, 0-based):
/// `Cartan(i) = i(E(i,i) - E(i+1,i+1))`, `X(i,j) = E(i,j) - E(j,i)`,
/// `Y(i,j) = i(E(i,j) + E(j,i))`, always with `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    Cartan(usize),
    X(usize, usize),
    Y(usize, usize),
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisKind::Cartan(i) => write!(f, "iH{}", i + 1),
            BasisKind::X(i, j) => write!(f, "X({},{})", i + 1, j + 1),
            BasisKind::Y(i, j) => write!(f, "Y({},{})", i + 1, j + 1),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BasisElement {
    pub kind: BasisKind,
    matrix: SuElement,
}

impl BasisElement {
    pub fn matrix(&self) -> &SuElement {
        &self.matrix
    }
}

/// Real coordinates of an su(N) element in the root-adapted basis, ordered
/// as (Cartan coefficients, X coefficients, Y coefficients), X and Y in
/// lexicographic (i, j) order. Length N^2 - 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Coordinates {
    values: Array1<f64>,
}

impl Coordinates {
    pub fn values(&self) -> &Array1<f64> {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

/// The ordered basis of su(N) adapted to the root decomposition: N-1
/// diagonal (Cartan) elements first, then the X family, then the Y family.
///
/// The ordering is fixed so coordinate vectors and adjoint matrices are
/// reproducible across runs.
#[derive(Debug, Clone)]
pub struct WeylBasis {
    n: usize,
    elements: Vec<BasisElement>,
}

pub(crate) fn elementary(n: usize, i: usize, j: usize) -> Array2<Complex64> {
    let mut m = Array2::zeros((n, n));
    m[(i, j)] = Complex64::new(1.0, 0.0);
    m
}

impl WeylBasis {
    pub fn new(n: usize) -> Result<Self, CoreError> {
        if n < 2 {
            return Err(CoreError::InvalidDimension { n });
        }
        let mut elements = Vec::with_capacity(n * n - 1);
        for i in 0..n - 1 {
            let mat = (elementary(n, i, i) - elementary(n, i + 1, i + 1)).mapv(|z| z * I);
            elements.push(BasisElement {
                kind: BasisKind::Cartan(i),
                matrix: SuElement::new_unchecked(mat),
            });
        }
        for i in 0..n {
            for j in i + 1..n {
                let mat = elementary(n, i, j) - elementary(n, j, i);
                elements.push(BasisElement {
                    kind: BasisKind::X(i, j),
                    matrix: SuElement::new_unchecked(mat),
                });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let mat = (elementary(n, i, j) + elementary(n, j, i)).mapv(|z| z * I);
                elements.push(BasisElement {
                    kind: BasisKind::Y(i, j),
                    matrix: SuElement::new_unchecked(mat),
                });
            }
        }
        Ok(Self { n, elements })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of basis elements, N^2 - 1.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    /// Number of (i, j) pairs with i < j.
    pub fn pair_count(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    /// Lexicographic rank of the pair (i, j), i < j, among all such pairs.
    pub fn pair_rank(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.n);
        i * self.n - i * (i + 1) / 2 + (j - i - 1)
    }

    pub fn cartan_slot(&self, i: usize) -> usize {
        debug_assert!(i < self.n - 1);
        i
    }

    pub fn x_slot(&self, i: usize, j: usize) -> usize {
        self.n - 1 + self.pair_rank(i, j)
    }

    pub fn y_slot(&self, i: usize, j: usize) -> usize {
        self.n - 1 + self.pair_count() + self.pair_rank(i, j)
    }

    /// Real coordinates of `m` in this basis.
    ///
    /// Off-diagonal slots read directly from the upper triangle
    /// (X = real part, Y = imaginary part); Cartan coefficients are partial
    /// sums of the imaginary diagonal, which telescope because the trace
    /// vanishes.
    pub fn decompose(&self, m: &SuElement) -> Result<Coordinates, CoreError> {
        if m.dim() != self.n {
            return Err(CoreError::DimensionMismatch {
                left: m.dim(),
                right: self.n,
            });
        }
        let mut values = Array1::zeros(self.len());
        let diag = m.diagonal_imag();
        let mut running = 0.0;
        for i in 0..self.n - 1 {
            running += diag[i];
            values[self.cartan_slot(i)] = running;
        }
        for i in 0..self.n {
            for j in i + 1..self.n {
                let z = m.entry(i, j);
                values[self.x_slot(i, j)] = z.re;
                values[self.y_slot(i, j)] = z.im;
            }
        }
        Ok(Coordinates { values })
    }

    pub fn reconstruct(&self, coords: &Coordinates) -> Result<SuElement, CoreError> {
        self.reconstruct_slice(coords.values.as_slice().expect("contiguous"))
    }

    pub(crate) fn reconstruct_slice(&self, values: &[f64]) -> Result<SuElement, CoreError> {
        if values.len() != self.len() {
            return Err(CoreError::DimensionMismatch {
                left: values.len(),
                right: self.len(),
            });
        }
        let n = self.n;
        let mut mat: Array2<Complex64> = Array2::zeros((n, n));
        for k in 0..n {
            let upper = if k < n - 1 { values[self.cartan_slot(k)] } else { 0.0 };
            let lower = if k > 0 { values[self.cartan_slot(k - 1)] } else { 0.0 };
            mat[(k, k)] = Complex64::new(0.0, upper - lower);
        }
        for i in 0..n {
            for j in i + 1..n {
                let z = Complex64::new(values[self.x_slot(i, j)], values[self.y_slot(i, j)]);
                mat[(i, j)] = z;
                mat[(j, i)] = -z.conj();
            }
        }
        Ok(SuElement::new_unchecked(mat))
    }

    /// Matrix of ad_X in this basis: column k holds the coordinates of
    /// [X, e_k]. Real because the structure constants are real.
    pub fn adjoint_matrix(&self, x: &SuElement) -> Result<Array2<f64>, CoreError> {
        if x.dim() != self.n {
            return Err(CoreError::DimensionMismatch {
                left: x.dim(),
                right: self.n,
            });
        }
        let dim = self.len();
        let mut out = Array2::zeros((dim, dim));
        for (k, e) in self.elements.iter().enumerate() {
            let bracket = commutator(x, e.matrix())?;
            let coords = self.decompose(&bracket)?;
            for (row, v) in coords.values.iter().enumerate() {
                out[(row, k)] = *v;
            }
        }
        Ok(out)
    }

    /// Killing form trace(ad_X ad_Y), computed from the adjoint matrices.
    /// Negative definite on su(N).
    pub fn killing_form(&self, x: &SuElement, y: &SuElement) -> Result<f64, CoreError> {
        let ax = self.adjoint_matrix(x)?;
        let ay = self.adjoint_matrix(y)?;
        let dim = self.len();
        let mut trace = 0.0;
        for k in 0..dim {
            for l in 0..dim {
                trace += ax[(k, l)] * ay[(l, k)];
            }
        }
        Ok(trace)
    }
}

/// Convenience constructor used across the crate: the full ordered basis
/// for su(N).
pub fn weyl_basis(n: usize) -> Result<WeylBasis, CoreError> {
    WeylBasis::new(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn basis_matrix(basis: &WeylBasis, kind: BasisKind) -> &SuElement {
        basis
            .elements()
            .iter()
            .find(|e| e.kind == kind)
            .map(|e| e.matrix())
            .expect("basis element present")
    }

    fn assert_entrywise_eq(a: &SuElement, b: &SuElement, tol: f64) {
        let n = a.dim();
        for i in 0..n {
            for j in 0..n {
                let diff = (a.entry(i, j) - b.entry(i, j)).norm();
                assert!(
                    diff <= tol,
                    "entry ({i},{j}) differs by {diff:.3e}: {} vs {}",
                    a.entry(i, j),
                    b.entry(i, j)
                );
            }
        }
    }

    #[test]
    fn basis_n2_matrices() {
        let basis = weyl_basis(2).unwrap();
        assert_eq!(basis.len(), 3);
        let h = basis_matrix(&basis, BasisKind::Cartan(0));
        assert_eq!(h.entry(0, 0), c(0.0, 1.0));
        assert_eq!(h.entry(1, 1), c(0.0, -1.0));
        assert_eq!(h.entry(0, 1), c(0.0, 0.0));
        let x = basis_matrix(&basis, BasisKind::X(0, 1));
        assert_eq!(x.entry(0, 1), c(1.0, 0.0));
        assert_eq!(x.entry(1, 0), c(-1.0, 0.0));
        let y = basis_matrix(&basis, BasisKind::Y(0, 1));
        assert_eq!(y.entry(0, 1), c(0.0, 1.0));
        assert_eq!(y.entry(1, 0), c(0.0, 1.0));
    }

    #[test]
    fn basis_n3_counts() {
        let basis = weyl_basis(3).unwrap();
        assert_eq!(basis.len(), 8);
        let cartan = basis
            .elements()
            .iter()
            .filter(|e| matches!(e.kind, BasisKind::Cartan(_)))
            .count();
        let x = basis
            .elements()
            .iter()
            .filter(|e| matches!(e.kind, BasisKind::X(_, _)))
            .count();
        let y = basis
            .elements()
            .iter()
            .filter(|e| matches!(e.kind, BasisKind::Y(_, _)))
            .count();
        assert_eq!((cartan, x, y), (2, 3, 3));
    }

    #[test]
    fn basis_rejects_small_dimension() {
        assert!(matches!(
            weyl_basis(1),
            Err(CoreError::InvalidDimension { n: 1 })
        ));
        assert!(matches!(
            weyl_basis(0),
            Err(CoreError::InvalidDimension { n: 0 })
        ));
    }

    #[test]
    fn basis_elements_decompose_to_unit_vectors() {
        // Implies linear independence of the N^2 - 1 elements.
        for n in 2..=5 {
            let basis = weyl_basis(n).unwrap();
            for (k, e) in basis.elements().iter().enumerate() {
                let coords = basis.decompose(e.matrix()).unwrap();
                for (slot, v) in coords.values().iter().enumerate() {
                    let expected = if slot == k { 1.0 } else { 0.0 };
                    assert!(
                        (v - expected).abs() < 1e-14,
                        "n={n} element {k} slot {slot}: {v}"
                    );
                }
            }
        }
    }

    #[test]
    fn commutator_with_self_vanishes() {
        let basis = weyl_basis(3).unwrap();
        let mut mat = Array2::zeros((3, 3));
        mat[(0, 0)] = c(0.0, 0.5);
        mat[(1, 1)] = c(0.0, -0.2);
        mat[(2, 2)] = c(0.0, -0.3);
        mat[(0, 1)] = c(1.0, 2.0);
        mat[(1, 0)] = c(-1.0, 2.0);
        mat[(0, 2)] = c(-0.5, 0.25);
        mat[(2, 0)] = c(0.5, 0.25);
        mat[(1, 2)] = c(0.0, 1.5);
        mat[(2, 1)] = c(0.0, 1.5);
        let m = SuElement::new(mat).unwrap();
        let z = commutator(&m, &m).unwrap();
        assert!(z.max_abs() < 1e-15);
        // and the zero matrix decomposes to zero coordinates
        let coords = basis.decompose(&z).unwrap();
        assert!(coords.norm() < 1e-15);
    }

    #[test]
    fn commutator_x12_y12_in_su2() {
        let basis = weyl_basis(2).unwrap();
        let x = basis_matrix(&basis, BasisKind::X(0, 1));
        let y = basis_matrix(&basis, BasisKind::Y(0, 1));
        let z = commutator(x, y).unwrap();
        let h = basis_matrix(&basis, BasisKind::Cartan(0));
        assert_entrywise_eq(&z, &h.scale(2.0), 1e-15);
    }

    #[test]
    fn bracket_of_fundamental_pair_gives_cartan_n4() {
        let basis = weyl_basis(4).unwrap();
        let x = basis_matrix(&basis, BasisKind::X(0, 1));
        let y = basis_matrix(&basis, BasisKind::Y(0, 1));
        let z = commutator(x, y).unwrap();
        let h = basis_matrix(&basis, BasisKind::Cartan(0));
        assert_entrywise_eq(&z, &h.scale(2.0), 1e-15);
    }

    #[test]
    fn commutator_x12_x23_gives_x13() {
        let basis = weyl_basis(3).unwrap();
        let x12 = basis_matrix(&basis, BasisKind::X(0, 1));
        let x23 = basis_matrix(&basis, BasisKind::X(1, 2));
        let z = commutator(x12, x23).unwrap();
        let x13 = basis_matrix(&basis, BasisKind::X(0, 2));
        assert_entrywise_eq(&z, x13, 1e-15);
    }

    #[test]
    fn commutator_dimension_mismatch() {
        let a = SuElement::zero(2);
        let b = SuElement::zero(3);
        assert!(matches!(
            commutator(&a, &b),
            Err(CoreError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn decompose_basis_combination() {
        let basis = weyl_basis(3).unwrap();
        let x12 = basis_matrix(&basis, BasisKind::X(0, 1)).clone();
        let y13 = basis_matrix(&basis, BasisKind::Y(0, 2)).clone();
        let m = x12.add(&y13.scale(2.0)).unwrap();
        let coords = basis.decompose(&m).unwrap();
        for (slot, v) in coords.values().iter().enumerate() {
            let expected = if slot == basis.x_slot(0, 1) {
                1.0
            } else if slot == basis.y_slot(0, 2) {
                2.0
            } else {
                0.0
            };
            assert!((v - expected).abs() < 1e-15, "slot {slot}: {v}");
        }
    }

    #[test]
    fn reconstruct_roundtrip_fixed_matrix() {
        let basis = weyl_basis(4).unwrap();
        let mut mat = Array2::zeros((4, 4));
        let diag = [0.7, -0.3, 0.1, -0.5];
        for (k, d) in diag.iter().enumerate() {
            mat[(k, k)] = c(0.0, *d);
        }
        let upper = [
            ((0, 1), c(0.3, -0.4)),
            ((0, 2), c(-1.2, 0.8)),
            ((0, 3), c(0.05, 0.0)),
            ((1, 2), c(0.0, 2.0)),
            ((1, 3), c(1.5, 1.5)),
            ((2, 3), c(-0.7, 0.2)),
        ];
        for ((i, j), z) in upper {
            mat[(i, j)] = z;
            mat[(j, i)] = -z.conj();
        }
        let m = SuElement::new(mat).unwrap();
        let coords = basis.decompose(&m).unwrap();
        let back = basis.reconstruct(&coords).unwrap();
        assert_entrywise_eq(&m, &back, 1e-12);
    }

    #[test]
    fn validation_rejects_non_skew() {
        let mut mat: Array2<Complex64> = Array2::zeros((2, 2));
        mat[(0, 1)] = c(1.0, 0.0);
        mat[(1, 0)] = c(1.0, 0.0); // should be -1
        assert!(matches!(
            SuElement::new(mat),
            Err(CoreError::NotSkewHermitian { .. })
        ));
    }

    #[test]
    fn validation_rejects_trace() {
        let mut mat: Array2<Complex64> = Array2::zeros((2, 2));
        mat[(0, 0)] = c(0.0, 1.0);
        mat[(1, 1)] = c(0.0, 1.0);
        assert!(matches!(
            SuElement::new(mat),
            Err(CoreError::NotTraceless { .. })
        ));
    }

    #[test]
    fn killing_form_symmetric_and_matches_su2_value() {
        let basis = weyl_basis(2).unwrap();
        let x = basis_matrix(&basis, BasisKind::X(0, 1));
        let y = basis_matrix(&basis, BasisKind::Y(0, 1));
        let kxy = basis.killing_form(x, y).unwrap();
        let kyx = basis.killing_form(y, x).unwrap();
        assert!((kxy - kyx).abs() < 1e-12);
        let kxx = basis.killing_form(x, x).unwrap();
        assert!((kxx + 8.0).abs() < 1e-12, "K(X,X) = {kxx}, expected -8");
    }

    #[test]
    fn killing_form_dimension_mismatch() {
        let basis = weyl_basis(2).unwrap();
        let a = SuElement::zero(2);
        let b = SuElement::zero(3);
        assert!(matches!(
            basis.killing_form(&a, &b),
            Err(CoreError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn adjoint_of_zero_is_zero() {
        let basis = weyl_basis(3).unwrap();
        let ad = basis.adjoint_matrix(&SuElement::zero(3)).unwrap();
        assert!(ad.iter().all(|v| v.abs() < 1e-15));
    }

    #[test]
    fn adjoint_kernel_of_regular_diagonal() {
        // For a regular diagonal element the kernel of the adjoint matrix is
        // exactly the diagonal subalgebra, dimension N - 1.
        for (n, diag) in [(3, vec![1.0, -0.25, -0.75]), (4, vec![2.0, 0.5, -0.7, -1.8])] {
            let basis = weyl_basis(n).unwrap();
            let mut mat: Array2<Complex64> = Array2::zeros((n, n));
            for (k, d) in diag.iter().enumerate() {
                mat[(k, k)] = c(0.0, *d);
            }
            let a = SuElement::new(mat).unwrap();
            let ad = basis.adjoint_matrix(&a).unwrap();
            let rank = crate::linalg::real_rank(&ad, 1e-10);
            let dim = basis.len();
            assert_eq!(dim - rank, n - 1, "kernel dimension for n={n}");
        }
    }

    #[test]
    fn adjoint_restricted_to_root_pair_is_scaled_rotation() {
        // On span{X(i,j), Y(i,j)} the adjoint of a diagonal element acts as
        // [[0, -a], [a, 0]] with a the root value (difference of the two
        // imaginary diagonal entries).
        let n = 3;
        let basis = weyl_basis(n).unwrap();
        let diag = [0.9, -0.4, -0.5];
        let mut mat: Array2<Complex64> = Array2::zeros((n, n));
        for (k, d) in diag.iter().enumerate() {
            mat[(k, k)] = c(0.0, *d);
        }
        let a = SuElement::new(mat).unwrap();
        let ad = basis.adjoint_matrix(&a).unwrap();
        for i in 0..n {
            for j in i + 1..n {
                let alpha = diag[i] - diag[j];
                let xs = basis.x_slot(i, j);
                let ys = basis.y_slot(i, j);
                assert!((ad[(ys, xs)] - alpha).abs() < 1e-13);
                assert!((ad[(xs, ys)] + alpha).abs() < 1e-13);
                assert!(ad[(xs, xs)].abs() < 1e-13);
                assert!(ad[(ys, ys)].abs() < 1e-13);
            }
        }
    }
}
