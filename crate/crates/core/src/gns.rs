//! States on the algebra and the GNS representation of the qubit subalgebra.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector, Matrix2};
use num_complex::Complex64;
use serde::Deserialize;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::oracle::{represent, Window};
use crate::qubit::build_generators;

pub const NORM_TOL: f64 = 1e-12;
/// Residual allowed when projecting onto the qubit span.
pub const MEMBERSHIP_TOL: f64 = 1e-10;
/// Singular values below this count as zero in Gram ranks.
pub const RANK_TOL: f64 = 1e-10;

/// A state functional `a ↦ ω(a)`.
pub trait State {
    /// Largest `|ℓ|` in the support.
    fn support_radius(&self) -> i64;

    /// `ω(a)` using the given window, which must hold the support plus the
    /// bandwidth of `a`.
    fn omega_on(&self, a: &AlgebraElement, w: Window) -> Result<Complex64>;

    /// `ω(a)` on an automatically sized window.
    fn omega(&self, a: &AlgebraElement) -> Result<Complex64> {
        let w = Window::new(self.support_radius() + a.bandwidth() + 1)?;
        self.omega_on(a, w)
    }
}

fn check_fits(radius: i64, a: &AlgebraElement, w: Window) -> Result<()> {
    if radius + a.bandwidth() > w.l_max() {
        return Err(Error::Sizing(format!(
            "support radius {radius} plus bandwidth {} exceeds window ±{}",
            a.bandwidth(),
            w.l_max()
        )));
    }
    Ok(())
}

/// A normalized vector state `ψ = Σ c_ℓ |ℓ⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReferenceState {
    coeffs: BTreeMap<i64, Complex64>,
}

impl ReferenceState {
    /// Rejects states whose norm differs from 1 by more than `1e−12`.
    pub fn new(coeffs: BTreeMap<i64, Complex64>) -> Result<Self> {
        let norm2: f64 = coeffs.values().map(|c| c.norm_sqr()).sum();
        if (norm2 - 1.0).abs() > NORM_TOL {
            return Err(Error::Domain(format!("state is not normalized: Σ|c|² = {norm2}")));
        }
        let coeffs = coeffs.into_iter().filter(|(_, c)| c.norm() > 0.0).collect();
        Ok(Self { coeffs })
    }

    /// Normalize the given amplitudes.
    pub fn normalized<I: IntoIterator<Item = (i64, Complex64)>>(amps: I) -> Result<Self> {
        let mut coeffs: BTreeMap<i64, Complex64> = BTreeMap::new();
        for (l, c) in amps {
            *coeffs.entry(l).or_default() += c;
        }
        let norm: f64 = coeffs.values().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::Domain("zero vector cannot be normalized".into()));
        }
        Self::new(coeffs.into_iter().map(|(l, c)| (l, c / norm)).collect())
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, Complex64> {
        &self.coeffs
    }

    pub fn is_even_support(&self) -> bool {
        self.coeffs.keys().all(|l| l.rem_euclid(2) == 0)
    }

    pub fn vector(&self, w: Window) -> Result<DVector<Complex64>> {
        let mut v = DVector::zeros(w.dim());
        for (&l, &c) in &self.coeffs {
            let i = w
                .index(l)
                .ok_or_else(|| Error::Sizing(format!("|{l}⟩ lies outside the window ±{}", w.l_max())))?;
            v[i] = c;
        }
        Ok(v)
    }

    /// `Σ c_ℓ |ℓ−1⟩`, the odd-support partner of an even-support state.
    pub fn partner(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(&l, &c)| (l - 1, c)).collect() }
    }
}

impl State for ReferenceState {
    fn support_radius(&self) -> i64 {
        self.coeffs.keys().map(|l| l.abs()).max().unwrap_or(0)
    }

    fn omega_on(&self, a: &AlgebraElement, w: Window) -> Result<Complex64> {
        check_fits(self.support_radius(), a, w)?;
        let v = self.vector(w)?;
        let av = represent(a, w)?.apply(&v)?;
        Ok(v.dotc(&av))
    }
}

/// A density matrix `ρ = Σ ρ_{ℓℓ′} |ℓ⟩⟨ℓ′|`.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityState {
    entries: BTreeMap<(i64, i64), Complex64>,
}

impl DensityState {
    /// Rejects matrices that are not Hermitian, positive semidefinite and of
    /// unit trace (tolerance `1e−12`).
    pub fn new(entries: BTreeMap<(i64, i64), Complex64>) -> Result<Self> {
        let s = Self { entries };
        let w = Window::new(s.support_radius().max(1))?;
        let m = s.matrix(w)?;
        if (&m - m.adjoint()).norm() > NORM_TOL {
            return Err(Error::Domain("density matrix is not Hermitian".into()));
        }
        let tr = m.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > NORM_TOL {
            return Err(Error::Domain(format!("density matrix trace is {tr}, expected 1")));
        }
        let min = m.symmetric_eigen().eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
        if min < -NORM_TOL {
            return Err(Error::Domain(format!("density matrix has negative eigenvalue {min}")));
        }
        Ok(s)
    }

    /// `Σ p_k |ψ_k⟩⟨ψ_k|`.
    pub fn mixture(parts: &[(f64, &ReferenceState)]) -> Result<Self> {
        let mut entries: BTreeMap<(i64, i64), Complex64> = BTreeMap::new();
        for (p, psi) in parts {
            for (&l, &c) in psi.coeffs() {
                for (&lp, &cp) in psi.coeffs() {
                    *entries.entry((l, lp)).or_default() += c * cp.conj() * *p;
                }
            }
        }
        Self::new(entries)
    }

    pub fn matrix(&self, w: Window) -> Result<DMatrix<Complex64>> {
        let mut m = DMatrix::zeros(w.dim(), w.dim());
        for (&(l, lp), &c) in &self.entries {
            match (w.index(l), w.index(lp)) {
                (Some(i), Some(j)) => m[(i, j)] = c,
                _ => return Err(Error::Sizing(format!("entry ({l},{lp}) lies outside the window"))),
            }
        }
        Ok(m)
    }
}

impl State for DensityState {
    fn support_radius(&self) -> i64 {
        self.entries.keys().map(|(l, lp)| l.abs().max(lp.abs())).max().unwrap_or(0)
    }

    fn omega_on(&self, a: &AlgebraElement, w: Window) -> Result<Complex64> {
        check_fits(self.support_radius(), a, w)?;
        let rho = self.matrix(w)?;
        Ok((rho * represent(a, w)?.matrix()).trace())
    }
}

/// `{𝕀, a₁, a₂, a₃}`.
pub fn qubit_basis() -> [AlgebraElement; 4] {
    let g = build_generators();
    [g.identity.clone(), g.a1.clone(), g.a2.clone(), g.a3.clone()]
}

/// `G_jk = ω(b_j* b_k)`.
pub fn gram_matrix<S: State>(state: &S, basis: &[AlgebraElement]) -> Result<DMatrix<Complex64>> {
    let n = basis.len();
    let mut g = DMatrix::zeros(n, n);
    for j in 0..n {
        let bj = basis[j].adjoint()?;
        for k in 0..n {
            g[(j, k)] = state.omega(&bj.try_mul(&basis[k])?)?;
        }
    }
    Ok(g)
}

pub fn gram_rank(g: &DMatrix<Complex64>) -> usize {
    g.clone().singular_values().iter().filter(|&&s| s > RANK_TOL).count()
}

/// Kernel of an even-support vector state on the qubit algebra, with the
/// values that certify it.
#[derive(Clone, Debug)]
pub struct KernelInfo {
    /// `{a₋a₊, a₊}`.
    pub kernel: Vec<AlgebraElement>,
    /// `ω(k*k)` for each kernel element.
    pub kernel_norms: Vec<f64>,
    /// `ω(b*b)` for the complement `{a₊a₋, a₋}`.
    pub complement_norms: Vec<f64>,
    pub gram_rank: usize,
}

pub fn kernel_basis(state: &ReferenceState) -> Result<KernelInfo> {
    if !state.is_even_support() {
        return Err(Error::Domain(
            "closed-form kernel needs even support; use gns_rep_general for other states".into(),
        ));
    }
    let g = build_generators();
    let kernel = vec![g.a_minus.try_mul(&g.a_plus)?, g.a_plus.clone()];
    let complement = [g.a_plus.try_mul(&g.a_minus)?, g.a_minus.clone()];
    let norm = |x: &AlgebraElement| -> Result<f64> { Ok(state.omega(&x.adjoint()?.try_mul(x)?)?.re) };
    let kernel_norms = kernel.iter().map(norm).collect::<Result<_>>()?;
    let complement_norms = complement.iter().map(norm).collect::<Result<_>>()?;
    let gram_rank = gram_rank(&gram_matrix(state, &qubit_basis())?);
    Ok(KernelInfo { kernel, kernel_norms, complement_norms, gram_rank })
}

/// A finite-dimensional representation of the qubit algebra.
#[derive(Clone, Debug)]
pub struct GnsRep {
    pub labels: Vec<String>,
    /// Images of `𝕀, a₁, a₂, a₃`, in that order.
    pub matrices: [DMatrix<Complex64>; 4],
}

impl GnsRep {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Image of an element of the qubit span.
    pub fn rep(&self, a: &AlgebraElement) -> Result<DMatrix<Complex64>> {
        let c = qubit_coordinates(a)?;
        let mut m = DMatrix::zeros(self.dim(), self.dim());
        for (k, ck) in c.iter().enumerate() {
            m += &self.matrices[k] * *ck;
        }
        Ok(m)
    }

    /// True when only scalars commute with the images of `a₁, a₂, a₃`.
    pub fn is_irreducible(&self) -> bool {
        let n = self.dim();
        let id = DMatrix::<Complex64>::identity(n, n);
        let mut stacked = DMatrix::<Complex64>::zeros(3 * n * n, n * n);
        for (g, m) in self.matrices[1..].iter().enumerate() {
            // vec(MX − XM) = (I⊗M − Mᵀ⊗I) vec(X)
            let op = id.kronecker(m) - m.transpose().kronecker(&id);
            stacked.view_mut((g * n * n, 0), (n * n, n * n)).copy_from(&op);
        }
        let sv = stacked.singular_values();
        sv.iter().filter(|&&s| s <= RANK_TOL).count() == 1
    }
}

fn rep_from_vectors<S: State>(state: &S, reps: &[AlgebraElement]) -> Result<[DMatrix<Complex64>; 4]> {
    let n = reps.len();
    let adj: Vec<_> = reps.iter().map(|e| e.adjoint()).collect::<Result<_>>()?;
    let mut out: [DMatrix<Complex64>; 4] = std::array::from_fn(|_| DMatrix::zeros(n, n));
    for (k, a) in qubit_basis().iter().enumerate() {
        for j in 0..n {
            for i in 0..n {
                out[k][(j, i)] = state.omega(&adj[j].try_mul(a)?.try_mul(&reps[i])?)?;
            }
        }
    }
    Ok(out)
}

/// GNS representation from an even-support vector state, with classes
/// represented by `e₀ = a₊a₋` and `e₁ = a₋` and matrix entries
/// `ω(e_j* a e_i)`.
pub fn gns_rep(state: &ReferenceState) -> Result<GnsRep> {
    if !state.is_even_support() {
        return Err(Error::Domain("gns_rep needs an even-support state; use gns_rep_general".into()));
    }
    let g = build_generators();
    let reps = [g.a_plus.try_mul(&g.a_minus)?, g.a_minus.clone()];
    Ok(GnsRep { labels: vec!["e0".into(), "e1".into()], matrices: rep_from_vectors(state, &reps)? })
}

/// GNS representation for any state, built from an orthonormal basis of the
/// quotient of the qubit algebra by the kernel of the Gram form. The
/// dimension is the Gram rank.
pub fn gns_rep_general<S: State>(state: &S) -> Result<GnsRep> {
    let basis = qubit_basis();
    let g = gram_matrix(state, &basis)?;
    let eig = g.symmetric_eigen();
    let mut vecs = Vec::new();
    for k in 0..4 {
        let lam = eig.eigenvalues[k];
        if lam > RANK_TOL {
            let v = eig.eigenvectors.column(k) / Complex64::new(lam.sqrt(), 0.0);
            let mut e = AlgebraElement::zero().to_float();
            for (b, c) in basis.iter().zip(v.iter()) {
                e = e.try_add(&b.try_scale(&crate::scalar::Scalar::float(*c))?)?;
            }
            vecs.push(e);
        }
    }
    let labels = (0..vecs.len()).map(|k| format!("f{k}")).collect();
    Ok(GnsRep { labels, matrices: rep_from_vectors(state, &vecs)? })
}

/// Coordinates of `a` in `{𝕀, a₁, a₂, a₃}` by least squares on a window; a
/// domain error if the residual exceeds `1e−10`.
pub fn qubit_coordinates(a: &AlgebraElement) -> Result<[Complex64; 4]> {
    let bw = a.bandwidth().max(1);
    let w = Window::new(bw + 12)?;
    let margin = bw + 1;
    let idx = w.interior(margin)?;
    let flatten = |x: &AlgebraElement| -> Result<DVector<Complex64>> {
        let m = represent(x, w)?;
        Ok(DVector::from_iterator(
            idx.len() * idx.len(),
            idx.iter().flat_map(|&j| idx.iter().map(move |&i| (i, j))).map(|(i, j)| m.matrix()[(i, j)]),
        ))
    };
    let basis = qubit_basis();
    let cols: Vec<_> = basis.iter().map(flatten).collect::<Result<_>>()?;
    let target = flatten(a)?;
    let b = DMatrix::from_columns(&cols);
    let normal = b.adjoint() * &b;
    let rhs = b.adjoint() * &target;
    let c = normal
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Domain("qubit basis Gram matrix is singular".into()))?;
    let residual = (&b * &c - &target).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if residual > MEMBERSHIP_TOL {
        return Err(Error::Domain(format!(
            "element is outside the qubit subalgebra (projection residual {residual:.3e})"
        )));
    }
    Ok([c[0], c[1], c[2], c[3]])
}

/// `Tr_ψ(a) = ⟨ψ|aψ⟩ + ⟨ψ⊥|aψ⊥⟩` with `ψ⊥ = Σ c_ℓ|ℓ−1⟩`, defined on the
/// qubit subalgebra.
pub fn qubit_trace(state: &ReferenceState, a: &AlgebraElement) -> Result<Complex64> {
    if !state.is_even_support() {
        return Err(Error::Domain("qubit_trace needs an even-support reference state".into()));
    }
    qubit_coordinates(a)?;
    Ok(state.omega(a)? + state.partner().omega(a)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StateEntry {
    ell: i64,
    #[serde(default)]
    ellp: Option<i64>,
    #[serde(default)]
    re: f64,
    #[serde(default)]
    im: f64,
}

#[derive(Deserialize)]
struct StateJson {
    entries: Vec<serde_json::Value>,
}

/// A state read from JSON.
#[derive(Clone, Debug)]
pub enum StateInput {
    Vector(ReferenceState),
    Density(DensityState),
}

impl StateInput {
    /// Parse `{entries: [{ell, re, im}]}` or `{entries: [{ell, ellp, re, im}]}`;
    /// `re` and `im` default to zero.
    pub fn from_json(s: &str) -> Result<Self> {
        let parsed: StateJson = serde_json::from_str(s)
            .map_err(|e| Error::Parse(format!("state at line {} column {}: {e}", e.line(), e.column())))?;
        let entries: Vec<StateEntry> = parsed
            .entries
            .into_iter()
            .enumerate()
            .map(|(k, v)| serde_json::from_value(v).map_err(|e| Error::Parse(format!("state entry {k}: {e}"))))
            .collect::<Result<_>>()?;
        let density = entries.iter().any(|e| e.ellp.is_some());
        if density {
            let mut m = BTreeMap::new();
            for (k, e) in entries.iter().enumerate() {
                let ellp = e
                    .ellp
                    .ok_or_else(|| Error::Parse(format!("state entry {k}: density entries need ellp")))?;
                m.insert((e.ell, ellp), Complex64::new(e.re, e.im));
            }
            Ok(Self::Density(DensityState::new(m)?))
        } else {
            let mut m = BTreeMap::new();
            for e in entries {
                *m.entry(e.ell).or_insert(Complex64::new(0.0, 0.0)) += Complex64::new(e.re, e.im);
            }
            Ok(Self::Vector(ReferenceState::new(m)?))
        }
    }
}

/// Standard Pauli matrices `[𝕀, σ₁, σ₂, σ₃]`.
pub fn pauli_matrices() -> [Matrix2<Complex64>; 4] {
    let o = Complex64::new(0.0, 0.0);
    let l = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    [
        Matrix2::new(l, o, o, l),
        Matrix2::new(o, l, l, o),
        Matrix2::new(o, -i, i, o),
        Matrix2::new(l, o, o, -l),
    ]
}
