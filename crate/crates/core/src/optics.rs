//! Linear-optics simulation on `path ⊗ polarization ⊗ OAM`.
//!
//! Conventions: beam splitter `[[√t, i√(1−t)], [i√(1−t), √t]]`, polarization
//! basis `H, V` with `|R⟩ = (|H⟩ − i|V⟩)/√2` and `|L⟩ = (|H⟩ + i|V⟩)/√2`,
//! angles in radians. Logical `|0⟩` is the even-OAM codeword.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI};

use nalgebra::{DMatrix, DVector, Matrix2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::Window;
use crate::report::{Entry, Mode, Report};

const C0: Complex64 = Complex64::new(0.0, 0.0);
const C1: Complex64 = Complex64::new(1.0, 0.0);
const CI: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModeSpace {
    pub paths: usize,
    pub polarization: bool,
    pub l_max: i64,
}

impl ModeSpace {
    pub fn new(paths: usize, polarization: bool, l_max: i64) -> Result<Self> {
        if paths == 0 {
            return Err(Error::Config("a mode space needs at least one path".into()));
        }
        Window::new(l_max)?;
        Ok(Self { paths, polarization, l_max })
    }

    pub fn window(&self) -> Window {
        Window::new(self.l_max).expect("validated on construction")
    }

    pub fn n_pol(&self) -> usize {
        if self.polarization {
            2
        } else {
            1
        }
    }

    pub fn dim(&self) -> usize {
        self.paths * self.n_pol() * self.window().dim()
    }

    /// Flat index of `(path, pol, ℓ)`; `pol` is 0 for H and 1 for V.
    pub fn index(&self, path: usize, pol: usize, ell: i64) -> Option<usize> {
        if path >= self.paths || pol >= self.n_pol() {
            return None;
        }
        let w = self.window();
        w.index(ell).map(|li| (path * self.n_pol() + pol) * w.dim() + li)
    }

    /// `(path, pol, ℓ)` of a flat index.
    pub fn label(&self, index: usize) -> (usize, usize, i64) {
        let w = self.window();
        let li = index % w.dim();
        let rest = index / w.dim();
        (rest / self.n_pol(), rest % self.n_pol(), w.ell(li))
    }

    pub fn zero_vector(&self) -> DVector<Complex64> {
        DVector::zeros(self.dim())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Component {
    BeamSplitter {
        i: usize,
        j: usize,
        #[serde(default = "half")]
        t: f64,
    },
    PhaseShifter { path: usize, phi: f64 },
    /// Reverses the sign of the OAM.
    Mirror { path: usize },
    /// Shifts OAM by `q`.
    Hologram { path: usize, q: i64 },
    /// `e^{iαL}`, after an OAM sign flip when `sign_flip` is set.
    DovePrism {
        path: usize,
        alpha: f64,
        #[serde(default)]
        sign_flip: bool,
    },
    /// Transmits H, swaps V between paths `i` and `j`.
    Pbs { i: usize, j: usize },
    Hwp { path: usize, angle: f64 },
    Qwp { path: usize, angle: f64 },
    /// `|L⟩⟨R| ⊗ V^{2q} + |R⟩⟨L| ⊗ V^{−2q}`.
    QPlate { path: usize, q: f64 },
}

fn half() -> f64 {
    0.5
}

fn rotation(theta: f64) -> Matrix2<Complex64> {
    let (s, c) = theta.sin_cos();
    Matrix2::new(c, -s, s, c).map(|x| Complex64::new(x, 0.0))
}

fn jones_hwp(theta: f64) -> Matrix2<Complex64> {
    let (s, c) = (2.0 * theta).sin_cos();
    Matrix2::new(c, s, s, -c).map(|x| Complex64::new(x, 0.0))
}

fn jones_qwp(theta: f64) -> Matrix2<Complex64> {
    let r = rotation(theta);
    r * Matrix2::new(C1, C0, C0, CI) * r.transpose()
}

impl Component {
    fn paths(&self) -> Vec<usize> {
        use Component::*;
        match *self {
            BeamSplitter { i, j, .. } | Pbs { i, j } => vec![i, j],
            PhaseShifter { path, .. }
            | Mirror { path }
            | Hologram { path, .. }
            | DovePrism { path, .. }
            | Hwp { path, .. }
            | Qwp { path, .. }
            | QPlate { path, .. } => vec![path],
        }
    }

    /// Largest OAM shift the component can produce.
    pub fn shift(&self) -> i64 {
        match *self {
            Component::Hologram { q, .. } => q.abs(),
            Component::QPlate { q, .. } => (2.0 * q).abs().round() as i64,
            _ => 0,
        }
    }

    pub fn validate(&self, s: &ModeSpace) -> Result<()> {
        for p in self.paths() {
            if p >= s.paths {
                return Err(Error::Config(format!("{self:?} references path {p} in a {}-path space", s.paths)));
            }
        }
        match *self {
            Component::BeamSplitter { i, j, t } => {
                if i == j || !(0.0..=1.0).contains(&t) {
                    return Err(Error::Config(format!("invalid beam splitter {self:?}")));
                }
            }
            Component::Pbs { i, j }
                if i == j => {
                    return Err(Error::Config("PBS needs two distinct paths".into()));
                }
            _ => {}
        }
        let needs_pol = matches!(
            self,
            Component::Pbs { .. } | Component::Hwp { .. } | Component::Qwp { .. } | Component::QPlate { .. }
        );
        if needs_pol && !s.polarization {
            return Err(Error::Config(format!("{self:?} needs a polarization degree of freedom")));
        }
        if let Component::QPlate { q, .. } = *self {
            if (2.0 * q - (2.0 * q).round()).abs() > 1e-12 {
                return Err(Error::Config(format!("Q-plate charge {q} is not a multiple of 1/2")));
            }
        }
        Ok(())
    }

    /// Components whose product inverts this one.
    pub fn inverse(&self) -> Vec<Component> {
        use Component::*;
        match *self {
            BeamSplitter { i, j, t } => vec![
                PhaseShifter { path: j, phi: PI },
                BeamSplitter { i, j, t },
                PhaseShifter { path: j, phi: PI },
            ],
            PhaseShifter { path, phi } => vec![PhaseShifter { path, phi: -phi }],
            Hologram { path, q } => vec![Hologram { path, q: -q }],
            DovePrism { path, alpha, sign_flip: false } => vec![DovePrism { path, alpha: -alpha, sign_flip: false }],
            // QWP³ = HWP·QWP at the same axis
            Qwp { path, angle } => vec![Qwp { path, angle }, Hwp { path, angle }],
            Mirror { .. } | DovePrism { sign_flip: true, .. } | Pbs { .. } | Hwp { .. } | QPlate { .. } => {
                vec![self.clone()]
            }
        }
    }

    /// Act on a state vector.
    pub fn apply(&self, s: &ModeSpace, v: &DVector<Complex64>) -> Result<DVector<Complex64>> {
        self.validate(s)?;
        if v.len() != s.dim() {
            return Err(Error::Sizing(format!("state has length {}, space needs {}", v.len(), s.dim())));
        }
        let w = s.window();
        let np = s.n_pol();
        let idx = |p: usize, pol: usize, l: i64| s.index(p, pol, l);
        let mut out = v.clone();
        match *self {
            Component::BeamSplitter { i, j, t } => {
                let (a, b) = (Complex64::new(t.sqrt(), 0.0), CI * (1.0 - t).sqrt());
                for pol in 0..np {
                    for l in w.ells() {
                        let (x, y) = (idx(i, pol, l).unwrap(), idx(j, pol, l).unwrap());
                        out[x] = a * v[x] + b * v[y];
                        out[y] = b * v[x] + a * v[y];
                    }
                }
            }
            Component::PhaseShifter { path, phi } => {
                let z = Complex64::from_polar(1.0, phi);
                for pol in 0..np {
                    for l in w.ells() {
                        let x = idx(path, pol, l).unwrap();
                        out[x] = v[x] * z;
                    }
                }
            }
            Component::Mirror { path } => {
                for pol in 0..np {
                    for l in w.ells() {
                        out[idx(path, pol, l).unwrap()] = v[idx(path, pol, -l).unwrap()];
                    }
                }
            }
            Component::Hologram { path, q } => {
                for pol in 0..np {
                    for l in w.ells() {
                        out[idx(path, pol, l).unwrap()] = idx(path, pol, l - q).map_or(C0, |x| v[x]);
                    }
                }
            }
            Component::DovePrism { path, alpha, sign_flip } => {
                for pol in 0..np {
                    for l in w.ells() {
                        let src = if sign_flip { -l } else { l };
                        out[idx(path, pol, l).unwrap()] =
                            v[idx(path, pol, src).unwrap()] * Complex64::from_polar(1.0, alpha * l as f64);
                    }
                }
            }
            Component::Pbs { i, j } => {
                for l in w.ells() {
                    let (x, y) = (idx(i, 1, l).unwrap(), idx(j, 1, l).unwrap());
                    out[x] = v[y];
                    out[y] = v[x];
                }
            }
            Component::Hwp { path, angle } | Component::Qwp { path, angle } => {
                let m = if matches!(self, Component::Hwp { .. }) { jones_hwp(angle) } else { jones_qwp(angle) };
                for l in w.ells() {
                    let (h, vv) = (idx(path, 0, l).unwrap(), idx(path, 1, l).unwrap());
                    out[h] = m[(0, 0)] * v[h] + m[(0, 1)] * v[vv];
                    out[vv] = m[(1, 0)] * v[h] + m[(1, 1)] * v[vv];
                }
            }
            Component::QPlate { path, q } => {
                let k = (2.0 * q).round() as i64;
                let s2 = FRAC_1_SQRT_2;
                for l in w.ells() {
                    let (h, vv) = (idx(path, 0, l).unwrap(), idx(path, 1, l).unwrap());
                    out[h] = C0;
                    out[vv] = C0;
                }
                for l in w.ells() {
                    let (h, vv) = (idx(path, 0, l).unwrap(), idx(path, 1, l).unwrap());
                    let r_amp = (v[h] + CI * v[vv]) * s2;
                    let l_amp = (v[h] - CI * v[vv]) * s2;
                    if let (Some(h2), Some(v2)) = (idx(path, 0, l + k), idx(path, 1, l + k)) {
                        // |L⟩ = (1, i)/√2
                        out[h2] += r_amp * s2;
                        out[v2] += r_amp * CI * s2;
                    }
                    if let (Some(h2), Some(v2)) = (idx(path, 0, l - k), idx(path, 1, l - k)) {
                        // |R⟩ = (1, −i)/√2
                        out[h2] += l_amp * s2;
                        out[v2] -= l_amp * CI * s2;
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Full matrix of one component on the mode space.
pub fn component_unitary(c: &Component, s: &ModeSpace) -> Result<DMatrix<Complex64>> {
    OpticalCircuit::new(*s, vec![c.clone()])?.unitary()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OpticalCircuit {
    pub space: ModeSpace,
    pub stages: Vec<Component>,
}

impl OpticalCircuit {
    pub fn new(space: ModeSpace, stages: Vec<Component>) -> Result<Self> {
        for c in &stages {
            c.validate(&space)?;
        }
        Ok(Self { space, stages })
    }

    pub fn push(&mut self, c: Component) -> Result<()> {
        c.validate(&self.space)?;
        self.stages.push(c);
        Ok(())
    }

    pub fn extend(&mut self, other: &OpticalCircuit) -> Result<()> {
        if other.space != self.space {
            return Err(Error::Config("cannot concatenate circuits on different spaces".into()));
        }
        self.stages.extend(other.stages.iter().cloned());
        Ok(())
    }

    /// Total OAM shift the circuit can apply.
    pub fn bandwidth(&self) -> i64 {
        self.stages.iter().map(Component::shift).sum()
    }

    pub fn apply(&self, v: &DVector<Complex64>) -> Result<DVector<Complex64>> {
        let mut x = v.clone();
        for c in &self.stages {
            x = c.apply(&self.space, &x)?;
        }
        Ok(x)
    }

    /// Stage-ordered product of all component matrices.
    pub fn unitary(&self) -> Result<DMatrix<Complex64>> {
        let n = self.space.dim();
        let mut m = DMatrix::zeros(n, n);
        for k in 0..n {
            let mut e = self.space.zero_vector();
            e[k] = C1;
            m.set_column(k, &self.apply(&e)?);
        }
        Ok(m)
    }

    pub fn inverse(&self) -> Self {
        Self {
            space: self.space,
            stages: self.stages.iter().rev().flat_map(Component::inverse).collect(),
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let c: Self = serde_json::from_str(s)
            .map_err(|e| Error::Parse(format!("circuit at line {} column {}: {e}", e.line(), e.column())))?;
        Window::new(c.space.l_max)?;
        Self::new(c.space, c.stages)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("circuit serializes")
    }
}

/// Dove prisms with optional explicit mirrors cancelling their sign flip.
fn dove(path: usize, alpha: f64, strict: bool) -> Vec<Component> {
    if strict {
        vec![Component::Mirror { path }, Component::DovePrism { path, alpha, sign_flip: true }]
    } else {
        vec![Component::DovePrism { path, alpha, sign_flip: false }]
    }
}

fn sorter_stages(a: usize, b: usize, alpha: f64, flip: bool, strict: bool) -> Vec<Component> {
    let mut st = vec![Component::BeamSplitter { i: a, j: b, t: 0.5 }];
    st.extend(dove(a, 0.0, strict));
    st.extend(dove(b, alpha, strict));
    if flip {
        st.push(Component::PhaseShifter { path: b, phi: PI });
    }
    st.push(Component::BeamSplitter { i: a, j: b, t: 0.5 });
    st
}

/// Mach–Zehnder with a relative Dove-prism angle of π.
///
/// Light entering `in_path` leaves even OAM on `out_even` and odd OAM on
/// `out_odd`; `in_path` must be one of the two outputs.
pub fn dp_sorter(s: &ModeSpace, in_path: usize, out_even: usize, out_odd: usize) -> Result<OpticalCircuit> {
    dp_sorter_with(s, in_path, out_even, out_odd, false)
}

pub fn dp_sorter_with(
    s: &ModeSpace,
    in_path: usize,
    out_even: usize,
    out_odd: usize,
    strict: bool,
) -> Result<OpticalCircuit> {
    if s.paths < 2 || out_even == out_odd || (in_path != out_even && in_path != out_odd) {
        return Err(Error::Config(format!(
            "sorter needs two distinct outputs including the input, got in={in_path} even={out_even} odd={out_odd}"
        )));
    }
    let (other, flip) = if in_path == out_odd { (out_even, false) } else { (out_odd, true) };
    OpticalCircuit::new(*s, sorter_stages(in_path, other, PI, flip, strict))
}

/// Built-in logical gates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gate {
    Phase(f64),
    Not,
    Hadamard,
    ControlledZ,
    PolToOam,
}

impl Gate {
    pub fn from_name(name: &str, phi: Option<f64>) -> Result<Self> {
        match name {
            "phase" => Ok(Gate::Phase(
                phi.ok_or_else(|| Error::Usage("the phase gate needs a phase angle".into()))?,
            )),
            "not" => Ok(Gate::Not),
            "hadamard" => Ok(Gate::Hadamard),
            "controlled_z" | "cz" => Ok(Gate::ControlledZ),
            "pol_to_oam" => Ok(Gate::PolToOam),
            _ => Err(Error::Usage(format!(
                "unknown gate {name:?}; expected phase, not, hadamard, controlled_z or pol_to_oam"
            ))),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Gate::Phase(phi) => format!("phase({phi})"),
            Gate::Not => "not".into(),
            Gate::Hadamard => "hadamard".into(),
            Gate::ControlledZ => "controlled_z".into(),
            Gate::PolToOam => "pol_to_oam".into(),
        }
    }

    pub fn n_logical(&self) -> usize {
        if matches!(self, Gate::ControlledZ) {
            2
        } else {
            1
        }
    }

    pub fn space(&self, l_max: i64) -> Result<ModeSpace> {
        match self {
            Gate::ControlledZ => ModeSpace::new(4, false, l_max),
            Gate::PolToOam => ModeSpace::new(2, true, l_max),
            _ => ModeSpace::new(2, false, l_max),
        }
    }

    /// Target logical unitary.
    pub fn target(&self) -> DMatrix<Complex64> {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        match *self {
            Gate::Phase(phi) => DMatrix::from_diagonal(&DVector::from_vec(vec![C1, Complex64::from_polar(1.0, phi)])),
            Gate::Not | Gate::PolToOam => DMatrix::from_row_slice(2, 2, &[C0, C1, C1, C0]),
            Gate::Hadamard => DMatrix::from_row_slice(2, 2, &[h, h, h, -h]),
            Gate::ControlledZ => DMatrix::from_diagonal(&DVector::from_vec(vec![C1, C1, C1, -C1])),
        }
    }
}

/// Circuit for a built-in gate; input and output on path 0.
pub fn gate_circuit(gate: Gate, l_max: i64) -> Result<OpticalCircuit> {
    gate_circuit_with(gate, l_max, false)
}

/// As [`gate_circuit`]; with `strict`, every Dove prism carries its sign
/// flip together with an explicit mirror.
pub fn gate_circuit_with(gate: Gate, l_max: i64, strict: bool) -> Result<OpticalCircuit> {
    use Component::*;
    let s = gate.space(l_max)?;
    let sorter = OpticalCircuit::new(s, sorter_stages(0, 1, PI, false, strict))?;
    let flipped = OpticalCircuit::new(s, sorter_stages(0, 1, PI, true, strict))?;
    let mut c = OpticalCircuit::new(s, vec![])?;
    match gate {
        Gate::Phase(phi) => {
            c.extend(&sorter)?;
            c.push(PhaseShifter { path: 0, phi })?;
            c.extend(&sorter.inverse())?;
        }
        Gate::Not => {
            c.extend(&sorter)?;
            c.push(Hologram { path: 1, q: -1 })?;
            c.push(Hologram { path: 0, q: 1 })?;
            c.extend(&flipped.inverse())?;
        }
        Gate::Hadamard => {
            c.extend(&sorter)?;
            c.push(PhaseShifter { path: 1, phi: PI })?;
            c.push(Hologram { path: 0, q: 1 })?;
            c.push(BeamSplitter { i: 0, j: 1, t: 0.5 })?;
            c.push(PhaseShifter { path: 1, phi: PI })?;
            c.push(Hologram { path: 1, q: -1 })?;
            c.extend(&flipped.inverse())?;
        }
        Gate::ControlledZ => {
            let mut m4 = OpticalCircuit::new(s, sorter_stages(0, 1, PI, false, strict))?;
            m4.stages.extend(sorter_stages(1, 3, FRAC_PI_2, false, strict));
            let mut odd = sorter_stages(0, 2, FRAC_PI_2, false, strict);
            let last = odd.pop().expect("sorter ends with a beam splitter");
            odd.push(PhaseShifter { path: 2, phi: -FRAC_PI_2 });
            odd.push(last);
            m4.stages.extend(odd);
            c.extend(&m4)?;
            c.push(PhaseShifter { path: 0, phi: PI })?;
            c.extend(&m4.inverse())?;
        }
        Gate::PolToOam => {
            c.push(Qwp { path: 0, angle: FRAC_PI_4 })?;
            c.push(QPlate { path: 0, q: 0.5 })?;
            c.push(Qwp { path: 0, angle: -FRAC_PI_4 })?;
            c.push(Pbs { i: 0, j: 1 })?;
            c.push(Hologram { path: 0, q: 1 })?;
            c.push(Hologram { path: 1, q: -2 })?;
            c.push(Hwp { path: 1, angle: FRAC_PI_4 })?;
            c.push(PhaseShifter { path: 1, phi: -FRAC_PI_2 })?;
            c.extend(&flipped.inverse())?;
        }
    }
    Ok(c)
}

/// Codewords built from a geometric profile `c_k ∝ r^{|k|}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogicalCode {
    pub n_logical: usize,
    /// `(k, c_k)`, normalized.
    pub coeffs: Vec<(i64, f64)>,
}

impl LogicalCode {
    /// `c_k ∝ 0.5^{|k|}` with every codeword inside `|ℓ| ≤ l_max/2` (plus the
    /// class offset).
    pub fn geometric(n_logical: usize, l_max: i64) -> Result<Self> {
        if !(1..=2).contains(&n_logical) {
            return Err(Error::Usage(format!("codes for {n_logical} qubits are not built in")));
        }
        let step = 2i64 << (n_logical - 1);
        let kmax = (l_max / 2) / step;
        let raw: Vec<(i64, f64)> = (-kmax..=kmax).map(|k| (k, 0.5f64.powi(k.abs() as i32))).collect();
        let norm = raw.iter().map(|(_, c)| c * c).sum::<f64>().sqrt();
        Ok(Self { n_logical, coeffs: raw.into_iter().map(|(k, c)| (k, c / norm)).collect() })
    }

    /// `(ℓ, amplitude)` of codeword `j`.
    ///
    /// One qubit: `|0⟩ = Σ c_k|2k⟩`, `|1⟩ = Σ c_k|2k−1⟩`. Two qubits:
    /// `|b₁b₂⟩ = Σ c_k|4k + b₁ + 2b₂⟩` with `j = 2b₁ + b₂`.
    pub fn codeword(&self, j: usize) -> Vec<(i64, f64)> {
        match self.n_logical {
            1 => self.coeffs.iter().map(|&(k, c)| (2 * k - j as i64, c)).collect(),
            _ => {
                let (b1, b2) = ((j >> 1) as i64, (j & 1) as i64);
                self.coeffs.iter().map(|&(k, c)| (4 * k + b1 + 2 * b2, c)).collect()
            }
        }
    }

    pub fn radius(&self) -> i64 {
        (0..1usize << self.n_logical)
            .flat_map(|j| self.codeword(j))
            .map(|(l, _)| l.abs())
            .max()
            .unwrap_or(0)
    }

    /// Codeword `j` on `(path, pol)` of `s`.
    pub fn embed(&self, s: &ModeSpace, j: usize, path: usize, pol: usize) -> Result<DVector<Complex64>> {
        let mut v = s.zero_vector();
        for (l, c) in self.codeword(j) {
            let i = s
                .index(path, pol, l)
                .ok_or_else(|| Error::Sizing(format!("codeword mode ({path},{pol},{l}) lies outside the space")))?;
            v[i] = Complex64::new(c, 0.0);
        }
        Ok(v)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GateReport {
    pub gate: String,
    pub fidelity: f64,
    pub leakage: f64,
    pub phase: f64,
    /// Rows of `[re, im]`.
    pub matrix: Vec<Vec<[f64; 2]>>,
    pub components: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alternative: Option<AlternativeFit>,
}

/// Fidelity against the target under the opposite even/odd naming.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlternativeFit {
    pub label: String,
    pub fidelity: f64,
}

impl GateReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.fidelity >= 1.0 - tol && self.leakage <= tol
    }
}

fn fidelity_of(m: &DMatrix<Complex64>, target: &DMatrix<Complex64>) -> (f64, f64) {
    let n = m.nrows() as f64;
    let z = (target.adjoint() * m).trace();
    (z.norm() / n, z.arg())
}

/// `M_jk = ⟨out_j| C |in_k⟩` with leakage `1 − Σ‖M e_k‖²/2ⁿ` and fidelity
/// `|tr(T†M)|/2ⁿ`.
pub fn verify_logical_gate(
    c: &OpticalCircuit,
    inputs: &[DVector<Complex64>],
    outputs: &[DVector<Complex64>],
    target: &DMatrix<Complex64>,
    name: &str,
) -> Result<GateReport> {
    let n = inputs.len();
    if outputs.len() != n || target.nrows() != n || target.ncols() != n {
        return Err(Error::Sizing("inputs, outputs and target disagree in size".into()));
    }
    let mut m = DMatrix::zeros(n, n);
    for (k, inp) in inputs.iter().enumerate() {
        let y = c.apply(inp)?;
        for (j, out) in outputs.iter().enumerate() {
            m[(j, k)] = out.dotc(&y);
        }
    }
    let captured: f64 = m.iter().map(|z| z.norm_sqr()).sum();
    let (fidelity, phase) = fidelity_of(&m, target);
    Ok(GateReport {
        gate: name.to_string(),
        fidelity,
        leakage: (1.0 - captured / n as f64).max(0.0),
        phase,
        matrix: (0..n).map(|j| (0..n).map(|k| [m[(j, k)].re, m[(j, k)].im]).collect()).collect(),
        components: c.stages.len(),
        alternative: None,
    })
}

/// Build, embed and verify a built-in gate.
pub fn verify_gate(gate: Gate, l_max: i64) -> Result<GateReport> {
    let c = gate_circuit(gate, l_max)?;
    verify_gate_circuit(gate, &c)
}

pub fn verify_gate_circuit(gate: Gate, c: &OpticalCircuit) -> Result<GateReport> {
    let s = c.space;
    let code = LogicalCode::geometric(gate.n_logical(), s.l_max)?;
    if code.radius() + c.bandwidth() >= s.l_max {
        return Err(Error::Sizing(format!(
            "codewords reach |ℓ| = {} and the circuit shifts by up to {}, beyond window ±{}",
            code.radius(),
            c.bandwidth(),
            s.l_max
        )));
    }
    let dim = 1usize << gate.n_logical();
    let (inputs, outputs): (Vec<_>, Vec<_>) = if gate == Gate::PolToOam {
        let inputs = (0..2).map(|pol| code.embed(&s, 0, 0, pol)).collect::<Result<_>>()?;
        let outputs = (0..2).map(|j| code.embed(&s, j, 0, 0)).collect::<Result<_>>()?;
        (inputs, outputs)
    } else {
        let words: Vec<_> = (0..dim).map(|j| code.embed(&s, j, 0, 0)).collect::<Result<_>>()?;
        (words.clone(), words)
    };
    let mut report = verify_logical_gate(c, &inputs, &outputs, &gate.target(), &gate.name())?;
    if let Gate::Phase(phi) = gate {
        let alt = DMatrix::from_diagonal(&DVector::from_vec(vec![Complex64::from_polar(1.0, phi), C1]));
        let m = DMatrix::from_fn(2, 2, |j, k| {
            let [re, im] = report.matrix[j][k];
            Complex64::new(re, im)
        });
        report.alternative = Some(AlternativeFit {
            label: "diag(e^{iφ}, 1): even codeword named |1⟩".into(),
            fidelity: fidelity_of(&m, &alt).0,
        });
    }
    Ok(report)
}

/// Per-parity routing of a sorter for `|ℓ| ≤ max_ell`: the largest
/// deviation from a constant-phase unit amplitude on the expected output.
pub fn sorter_routing(
    c: &OpticalCircuit,
    in_path: usize,
    out_even: usize,
    out_odd: usize,
    max_ell: i64,
) -> Result<(f64, Complex64, Complex64)> {
    let s = c.space;
    let mut phases: [Option<Complex64>; 2] = [None, None];
    let mut worst = 0.0f64;
    for l in -max_ell..=max_ell {
        let mut v = s.zero_vector();
        v[s.index(in_path, 0, l).ok_or_else(|| Error::Sizing(format!("|{l}⟩ outside window")))?] = C1;
        let y = c.apply(&v)?;
        let parity = l.rem_euclid(2) as usize;
        let target = if parity == 0 { out_even } else { out_odd };
        let amp = y[s.index(target, 0, l).expect("checked above")];
        let rest = (y.norm_squared() - amp.norm_sqr()).max(0.0).sqrt();
        let p = *phases[parity].get_or_insert(amp);
        worst = worst.max(rest).max((amp - p).norm()).max((amp.norm() - 1.0).abs());
    }
    Ok((worst, phases[0].unwrap_or(C0), phases[1].unwrap_or(C0)))
}

/// Largest deviation from unitarity of `u` on interior columns.
pub fn interior_unitarity_defect(u: &DMatrix<Complex64>, s: &ModeSpace, margin: i64) -> f64 {
    let cols: Vec<usize> = (0..s.dim()).filter(|&k| s.label(k).2.abs() <= s.l_max - margin).collect();
    let mut worst = 0.0f64;
    for (a, &i) in cols.iter().enumerate() {
        for &j in &cols[a..] {
            let z = u.column(i).dotc(&u.column(j));
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((z - want).norm());
        }
    }
    worst
}

/// `DP(α)·Hologram(q) = e^{iqα}·Hologram(q)·DP(α)` on interior modes.
pub fn weyl_relation_residual(l_max: i64, alpha: f64, q: i64) -> Result<f64> {
    let s = ModeSpace::new(1, false, l_max)?;
    let dp = Component::DovePrism { path: 0, alpha, sign_flip: false };
    let hg = Component::Hologram { path: 0, q };
    let lhs = OpticalCircuit::new(s, vec![hg.clone(), dp.clone()])?;
    let rhs = OpticalCircuit::new(s, vec![dp, hg])?;
    let z = Complex64::from_polar(1.0, q as f64 * alpha);
    let mut worst = 0.0f64;
    for l in -(l_max - q.abs())..=(l_max - q.abs()) {
        let mut v = s.zero_vector();
        v[s.index(0, 0, l).expect("interior")] = C1;
        worst = worst.max((lhs.apply(&v)? - rhs.apply(&v)? * z).norm());
    }
    Ok(worst)
}

/// A state read from `{entries: [{path, pol, ell, re, im}]}` (`pol` is
/// optional and defaults to H).
pub fn state_from_json(s: &ModeSpace, text: &str) -> Result<DVector<Complex64>> {
    #[derive(Deserialize)]
    struct E {
        #[serde(default)]
        path: usize,
        #[serde(default)]
        pol: usize,
        ell: i64,
        re: f64,
        #[serde(default)]
        im: f64,
    }
    #[derive(Deserialize)]
    struct F {
        entries: Vec<E>,
    }
    let f: F = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("input state at line {} column {}: {e}", e.line(), e.column())))?;
    let mut v = s.zero_vector();
    for (n, e) in f.entries.iter().enumerate() {
        let i = s
            .index(e.path, e.pol, e.ell)
            .ok_or_else(|| Error::Parse(format!("entry {n}: mode ({}, {}, {}) is outside the space", e.path, e.pol, e.ell)))?;
        v[i] += Complex64::new(e.re, e.im);
    }
    Ok(v)
}

/// Nonzero amplitudes as `{path, pol, ell, re, im}` records.
pub fn state_to_json(s: &ModeSpace, v: &DVector<Complex64>, threshold: f64) -> serde_json::Value {
    let entries: Vec<_> = v
        .iter()
        .enumerate()
        .filter(|(_, z)| z.norm() > threshold)
        .map(|(k, z)| {
            let (path, pol, ell) = s.label(k);
            serde_json::json!({"path": path, "pol": pol, "ell": ell, "re": z.re, "im": z.im})
        })
        .collect();
    serde_json::json!({ "entries": entries })
}

/// Phase values exercised by the optics suite.
pub fn sample_phases() -> [f64; 8] {
    [0.0, FRAC_PI_4, FRAC_PI_2, 1.0, PI, -FRAC_PI_2, 2.5, 5.0]
}

/// Sorter routing, built-in gate fidelities and the optical Weyl relation.
pub fn verify_optics(l_max: i64, tol: f64) -> Result<Report> {
    let mut report = Report::new(format!("optics at l_max = {l_max}"));
    let s = ModeSpace::new(2, false, l_max)?;
    let reach = (3 * l_max) / 4;
    for (label, even, odd) in [("even to partner", 1, 0), ("even stays", 0, 1)] {
        let c = dp_sorter(&s, 0, even, odd)?;
        let (dev, pe, po) = sorter_routing(&c, 0, even, odd, reach)?;
        report.push(
            Entry::check(format!("sorter {label}"), dev <= 1e-12, dev, Mode::Float)
                .with_note(format!("|ℓ| ≤ {reach}, even phase {pe:.3}, odd phase {po:.3}")),
        );
    }
    let mut gates: Vec<Gate> = sample_phases().iter().map(|&p| Gate::Phase(p)).collect();
    gates.extend([Gate::Not, Gate::Hadamard, Gate::ControlledZ, Gate::PolToOam]);
    for g in gates {
        let r = verify_gate(g, l_max)?;
        let mut e = Entry::check(
            format!("gate {}", r.gate),
            r.passes(tol),
            (1.0 - r.fidelity).abs().max(r.leakage),
            Mode::Float,
        )
        .with_note(format!("fidelity {:.15}, leakage {:.2e}, {} components", r.fidelity, r.leakage, r.components));
        if let Some(a) = &r.alternative {
            e = e.with_note(format!(
                "fidelity {:.15}, leakage {:.2e}; alternative naming fidelity {:.6}",
                r.fidelity, r.leakage, a.fidelity
            ));
        }
        report.push(e);
    }
    let mut worst = 0.0f64;
    for (alpha, q) in [(0.3, 1), (PI / 3.0, 2), (-1.1, -3)] {
        worst = worst.max(weyl_relation_residual(l_max, alpha, q)?);
    }
    report.push(Entry::check("optical Weyl relation", worst <= 1e-12, worst, Mode::Float));
    Ok(report)
}
