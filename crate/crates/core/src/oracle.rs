//! Dense matrices on a truncated angular-momentum window.
//!
//! Amplitudes pushed outside the window are dropped (hard truncation), so
//! identities are only compared on interior rows and columns.

use std::fmt::Write as _;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-12;

/// The basis `|ℓ⟩`, `ℓ ∈ [−l_max, l_max]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    l_max: i64,
}

impl Window {
    pub fn new(l_max: i64) -> Result<Self> {
        if l_max < 1 {
            return Err(Error::Sizing(format!("l_max must be positive, got {l_max}")));
        }
        Ok(Self { l_max })
    }

    pub fn l_max(&self) -> i64 {
        self.l_max
    }

    pub fn dim(&self) -> usize {
        (2 * self.l_max + 1) as usize
    }

    pub fn contains(&self, ell: i64) -> bool {
        ell.abs() <= self.l_max
    }

    pub fn index(&self, ell: i64) -> Option<usize> {
        self.contains(ell).then(|| (ell + self.l_max) as usize)
    }

    pub fn ell(&self, index: usize) -> i64 {
        index as i64 - self.l_max
    }

    pub fn ells(&self) -> impl Iterator<Item = i64> {
        -self.l_max..=self.l_max
    }

    /// `|ℓ⟩` as a vector.
    pub fn basis_vector(&self, ell: i64) -> Result<DVector<Complex64>> {
        let i = self
            .index(ell)
            .ok_or_else(|| Error::Sizing(format!("|{ell}⟩ lies outside the window ±{}", self.l_max)))?;
        let mut v = DVector::zeros(self.dim());
        v[i] = Complex64::new(1.0, 0.0);
        Ok(v)
    }

    /// Indices whose `ℓ` is at least `margin` away from the edge.
    pub fn interior(&self, margin: i64) -> Result<Vec<usize>> {
        if margin >= self.l_max {
            return Err(Error::Sizing(format!("margin {margin} leaves no interior in window ±{}", self.l_max)));
        }
        Ok((-self.l_max + margin..=self.l_max - margin)
            .map(|l| (l + self.l_max) as usize)
            .collect())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedOperator {
    window: Window,
    matrix: DMatrix<Complex64>,
    bandwidth: i64,
}

impl TruncatedOperator {
    pub fn new(window: Window, matrix: DMatrix<Complex64>, bandwidth: i64) -> Result<Self> {
        if matrix.nrows() != window.dim() || matrix.ncols() != window.dim() {
            return Err(Error::Sizing(format!(
                "matrix is {}x{}, window needs {}",
                matrix.nrows(),
                matrix.ncols(),
                window.dim()
            )));
        }
        Ok(Self { window, matrix, bandwidth })
    }

    pub fn identity(window: Window) -> Self {
        Self { window, matrix: DMatrix::identity(window.dim(), window.dim()), bandwidth: 0 }
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn bandwidth(&self) -> i64 {
        self.bandwidth
    }

    fn same_window(&self, other: &Self) -> Result<()> {
        if self.window != other.window {
            return Err(Error::Sizing("operators live on different windows".into()));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_window(other)?;
        Ok(Self {
            window: self.window,
            matrix: &self.matrix * &other.matrix,
            bandwidth: self.bandwidth + other.bandwidth,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_window(other)?;
        Ok(Self {
            window: self.window,
            matrix: &self.matrix - &other.matrix,
            bandwidth: self.bandwidth.max(other.bandwidth),
        })
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { window: self.window, matrix: &self.matrix * c, bandwidth: self.bandwidth }
    }

    pub fn adjoint(&self) -> Self {
        Self { window: self.window, matrix: self.matrix.adjoint(), bandwidth: self.bandwidth }
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &DVector<Complex64>) -> Result<DVector<Complex64>> {
        if v.len() != self.window.dim() {
            return Err(Error::Sizing(format!("vector has length {}, window needs {}", v.len(), self.window.dim())));
        }
        Ok(&self.matrix * v)
    }

    /// Plain-text dump: one `row col re im` line per nonzero entry.
    pub fn dump_text(&self) -> String {
        let mut s = format!("# l_max {} bandwidth {}\n", self.window.l_max, self.bandwidth);
        for j in 0..self.matrix.ncols() {
            for i in 0..self.matrix.nrows() {
                let z = self.matrix[(i, j)];
                if z.norm() > 0.0 {
                    let _ = writeln!(s, "{} {} {:.17e} {:.17e}", self.window.ell(i), self.window.ell(j), z.re, z.im);
                }
            }
        }
        s
    }
}

/// Matrix of `a` on the window.
///
/// `W(θ,ℓ)|m⟩ = e^{−iℓθ/2} e^{i(m+ℓ)θ} |m+ℓ⟩`; rows outside the window are
/// dropped.
pub fn represent(a: &AlgebraElement, w: Window) -> Result<TruncatedOperator> {
    let bw = a.bandwidth();
    if bw as usize >= w.dim() {
        return Err(Error::Sizing(format!("bandwidth {bw} does not fit window of dimension {}", w.dim())));
    }
    let mut m = DMatrix::zeros(w.dim(), w.dim());
    for t in a.float_terms() {
        for col in w.ells() {
            let row = col + t.ell;
            if let (Some(i), Some(j)) = (w.index(row), w.index(col)) {
                let phase = -0.5 * t.ell as f64 * t.theta + row as f64 * t.theta;
                m[(i, j)] += t.coeff * Complex64::from_polar(1.0, phase);
            }
        }
    }
    TruncatedOperator::new(w, m, bw)
}

/// Largest entrywise difference over interior rows and columns.
pub fn interior_residual(a: &TruncatedOperator, b: &TruncatedOperator, margin: i64) -> Result<f64> {
    a.same_window(b)?;
    let idx = a.window.interior(margin)?;
    let mut worst = 0.0f64;
    for &j in &idx {
        for &i in &idx {
            worst = worst.max((a.matrix[(i, j)] - b.matrix[(i, j)]).norm());
        }
    }
    Ok(worst)
}

pub fn interior_equal(a: &TruncatedOperator, b: &TruncatedOperator, margin: i64, tol: f64) -> Result<bool> {
    Ok(interior_residual(a, b, margin)? <= tol)
}

/// Represent both sides and compare on the interior, with the margin set to
/// the larger bandwidth plus `extra_margin`.
pub fn elements_residual(
    lhs: &AlgebraElement,
    rhs: &AlgebraElement,
    w: Window,
    extra_margin: i64,
) -> Result<f64> {
    let margin = lhs.bandwidth().max(rhs.bandwidth()) + extra_margin;
    interior_residual(&represent(lhs, w)?, &represent(rhs, w)?, margin)
}

/// The diagonal `⌊ℓ/2⌋` on the window.
pub fn l1_diagonal(w: Window) -> DMatrix<f64> {
    DMatrix::from_diagonal(&DVector::from_iterator(w.dim(), w.ells().map(|l| l.div_euclid(2) as f64)))
}

/// Numerical rank from singular values above `rel_tol · σ_max`.
pub fn numeric_rank(m: &DMatrix<Complex64>, rel_tol: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.clone().singular_values();
    let max = sv.max();
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * max).count()
}

/// Dimension of the joint commutant of `gens`, restricted to the interior.
///
/// Unknowns are the entries of a matrix `X` with `|row − col| ≤ bandwidth`.
/// The commutator `[G, X]` is required to vanish wherever it is unaffected
/// by truncation, and the resulting null space is projected onto entries at
/// least `margin` from the edge. The rank of that projection is returned.
pub fn joint_commutant_dimension(gens: &[TruncatedOperator], bandwidth: i64, margin: i64) -> Result<usize> {
    let w = gens
        .first()
        .ok_or_else(|| Error::Usage("no generators given".into()))?
        .window;
    let l = w.l_max;
    let g_bw = gens.iter().map(|g| g.bandwidth).max().unwrap_or(0);
    if margin <= bandwidth + g_bw || margin >= l {
        return Err(Error::Sizing(format!(
            "margin {margin} must exceed combined bandwidth {} and stay below l_max {l}",
            bandwidth + g_bw
        )));
    }
    let mut unknowns = Vec::new();
    let mut slot = std::collections::HashMap::new();
    for i in w.ells() {
        for j in (i - bandwidth)..=(i + bandwidth) {
            if w.contains(j) {
                slot.insert((i, j), unknowns.len());
                unknowns.push((i, j));
            }
        }
    }
    let n = unknowns.len();
    let trusted = l - g_bw;
    let mut rows: Vec<Vec<(usize, Complex64)>> = Vec::new();
    for g in gens {
        let gm = &g.matrix;
        for i in -trusted..=trusted {
            for j in (i - bandwidth - g_bw)..=(i + bandwidth + g_bw) {
                if j.abs() > trusted {
                    continue;
                }
                // ([G,X])_{ij} = Σ_k G_ik X_kj − X_ik G_kj
                let mut row = Vec::new();
                let (ii, jj) = (w.index(i).unwrap(), w.index(j).unwrap());
                for k in (i - g_bw)..=(i + g_bw) {
                    if let (Some(kk), Some(&s)) = (w.index(k), slot.get(&(k, j))) {
                        let c = gm[(ii, kk)];
                        if c.norm() > 0.0 {
                            row.push((s, c));
                        }
                    }
                }
                for k in (j - g_bw)..=(j + g_bw) {
                    if let (Some(kk), Some(&s)) = (w.index(k), slot.get(&(i, k))) {
                        let c = gm[(kk, jj)];
                        if c.norm() > 0.0 {
                            row.push((s, -c));
                        }
                    }
                }
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    // Null space via the Hermitian normal matrix AᴴA.
    let mut normal = DMatrix::<Complex64>::zeros(n, n);
    for row in &rows {
        for &(a, ca) in row {
            for &(b, cb) in row {
                normal[(a, b)] += ca.conj() * cb;
            }
        }
    }
    let eig = normal.symmetric_eigen();
    let max = eig.eigenvalues.iter().cloned().fold(0.0f64, f64::max);
    let null: Vec<usize> = (0..n).filter(|&k| eig.eigenvalues[k] <= 1e-10 * max.max(1.0)).collect();
    let inner: Vec<usize> = (0..n)
        .filter(|&s| {
            let (i, j) = unknowns[s];
            i.abs() <= l - margin && j.abs() <= l - margin
        })
        .collect();
    let mut proj = DMatrix::<Complex64>::zeros(inner.len(), null.len());
    for (c, &k) in null.iter().enumerate() {
        for (r, &s) in inner.iter().enumerate() {
            proj[(r, c)] = eig.eigenvectors[(s, k)];
        }
    }
    Ok(numeric_rank(&proj, 1e-8))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::RationalAngle;

    fn w16() -> Window {
        Window::new(16).unwrap()
    }

    #[test]
    fn identity_and_parity() {
        let i = represent(&AlgebraElement::identity(), w16()).unwrap();
        assert_eq!(i.matrix(), &DMatrix::identity(33, 33));
        let a3 = represent(&AlgebraElement::u(RationalAngle::pi()), w16()).unwrap();
        for l in -16..=16i64 {
            let k = w16().index(l).unwrap();
            let expect = if l % 2 == 0 { 1.0 } else { -1.0 };
            assert!((a3.matrix()[(k, k)] - Complex64::new(expect, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn shift_moves_up() {
        let w = w16();
        let v = represent(&AlgebraElement::v_pow(1), w).unwrap();
        let out = v.apply(&w.basis_vector(3).unwrap()).unwrap();
        assert!((out - w.basis_vector(4).unwrap()).norm() < 1e-14);
        let edge = v.apply(&w.basis_vector(16).unwrap()).unwrap();
        assert_eq!(edge.norm(), 0.0);
    }

    #[test]
    fn negative_control_v_vs_vstar() {
        let w = w16();
        let v = represent(&AlgebraElement::v_pow(1), w).unwrap();
        let vs = represent(&AlgebraElement::v_pow(-1), w).unwrap();
        assert!(!interior_equal(&v, &vs, 2, 1e-12).unwrap());
        assert!(interior_equal(&v.adjoint(), &vs, 2, 1e-12).unwrap());
    }

    #[test]
    fn margin_too_large() {
        let i = TruncatedOperator::identity(w16());
        assert!(matches!(interior_equal(&i, &i, 16, 1e-12), Err(Error::Sizing(_))));
    }

    #[test]
    fn l1_is_floor_half() {
        let d = l1_diagonal(Window::new(3).unwrap());
        let got: Vec<f64> = d.diagonal().iter().cloned().collect();
        assert_eq!(got, vec![-2.0, -1.0, -1.0, 0.0, 0.0, 1.0, 1.0]);
    }

    #[test]
    fn commutant_of_a_single_shift_is_large() {
        // Anything banded built from powers of V commutes with V.
        let w = w16();
        let v = represent(&AlgebraElement::v_pow(1), w).unwrap();
        assert!(joint_commutant_dimension(&[v], 2, 6).unwrap() >= 3);
    }
}
