//! The qubit subalgebra, its commutant, and the tensor split `A ≅ M₂ ⊗ A`.
//!
//! Generators:
//!
//! ```text
//! a₊ = ½W(0,−1) − (i/2)W(π,−1)      a₋ = a₊*
//! a₁ = a₊ + a₋    a₂ = −i a₊ + i a₋    a₃ = W(π,0)
//! ```
//!
//! `a₊` lowers odd `|ℓ⟩` to `|ℓ−1⟩` and kills even states; `a₋` raises even
//! states. The commutant is generated by `U₁(θ) = e^{2iθ⌊L/2⌋}` and
//! `V₁ = V²`, and `nest_iso` identifies it with the whole algebra through
//! `W(φ,ℓ) ↦ W₁(φ/2,ℓ)`.

use std::sync::OnceLock;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::One;

use crate::algebra::{AlgebraElement, WeylTerm, WordKey};
use crate::angle::RationalAngle;
use crate::error::{Error, Result};
use crate::exact_linalg::ExactMatrix;
use crate::oracle::{self, represent, Window, DEFAULT_TOL};
use crate::report::{identity_entry, Entry, Mode, Report};
use crate::scalar::{checked_mul, Cyclotomic, Rational, Scalar};

#[derive(Clone, Debug)]
pub struct QubitGenerators {
    pub a_plus: AlgebraElement,
    pub a_minus: AlgebraElement,
    pub a1: AlgebraElement,
    pub a2: AlgebraElement,
    pub a3: AlgebraElement,
    pub identity: AlgebraElement,
}

impl QubitGenerators {
    /// `[a₁, a₂, a₃]`.
    pub fn paulis(&self) -> [&AlgebraElement; 3] {
        [&self.a1, &self.a2, &self.a3]
    }

    /// Matrix units `E₀₀ = a₊a₋`, `E₀₁ = a₊`, `E₁₀ = a₋`, `E₁₁ = a₋a₊`.
    pub fn matrix_units(&self) -> [[AlgebraElement; 2]; 2] {
        [
            [&self.a_plus * &self.a_minus, self.a_plus.clone()],
            [self.a_minus.clone(), &self.a_minus * &self.a_plus],
        ]
    }
}

fn half() -> Rational {
    Rational::new(1, 2)
}

fn phase(r: Rational) -> Result<Cyclotomic> {
    Cyclotomic::phase_pi(r)
}

fn sign(n: i64) -> Cyclotomic {
    Cyclotomic::rational(Rational::from_integer(if n.rem_euclid(2) == 0 { 1 } else { -1 }))
}

fn term(coeff: Cyclotomic, theta: RationalAngle, ell: i64) -> AlgebraElement {
    AlgebraElement::from_term(WeylTerm { coeff, theta, ell })
}

fn build() -> Result<QubitGenerators> {
    let i = Cyclotomic::root_of_unity(4, 1)?;
    let a_plus = term(Cyclotomic::rational(half()), RationalAngle::zero(), -1)
        .try_add(&term(i.scale(&-half())?, RationalAngle::pi(), -1))?;
    let a_minus = a_plus.adjoint()?;
    let a1 = a_plus.try_add(&a_minus)?;
    let i_s = Scalar::i();
    let a2 = a_plus.try_scale(&i_s.neg())?.try_add(&a_minus.try_scale(&i_s)?)?;
    Ok(QubitGenerators {
        a_plus,
        a_minus,
        a1,
        a2,
        a3: AlgebraElement::u(RationalAngle::pi()),
        identity: AlgebraElement::identity(),
    })
}

/// The qubit generators (built once).
pub fn build_generators() -> &'static QubitGenerators {
    static GENS: OnceLock<QubitGenerators> = OnceLock::new();
    GENS.get_or_init(|| build().expect("generator coefficients are small"))
}

/// Check the nine Pauli products and three self-adjointness relations.
pub fn verify_pauli(window: Option<Window>) -> Result<Report> {
    let g = build_generators();
    let s = [&g.a1, &g.a2, &g.a3];
    let mut report = Report::new("Pauli relations");
    for j in 0..3 {
        for k in 0..3 {
            let lhs = s[j].try_mul(s[k])?;
            let rhs = if j == k {
                AlgebraElement::identity()
            } else {
                let l = 3 - j - k;
                let eps = if (j + 1) % 3 == k { 1 } else { -1 };
                s[l].try_scale(&Scalar::i().mul(&Scalar::integer(eps))?)?
            };
            report.push(identity_entry(format!("pauli a{}a{}", j + 1, k + 1), &lhs, &rhs, window)?);
        }
    }
    for (j, a) in s.iter().enumerate() {
        report.push(identity_entry(format!("adjoint a{}", j + 1), &a.adjoint()?, a, window)?);
    }
    Ok(report)
}

fn u1_coeffs(theta: RationalAngle) -> Result<(Cyclotomic, Cyclotomic)> {
    // e^{−iθ/2}cos(θ/2) = (1 + e^{−iθ})/2,  i·e^{−iθ/2}sin(θ/2) = (1 − e^{−iθ})/2
    let z = phase(-theta.pi_multiple())?;
    let one = Cyclotomic::one();
    Ok((one.add(&z)?.scale(&half())?, one.sub(&z)?.scale(&half())?))
}

/// `U₁(θ) = e^{−iθ/2}(cos(θ/2)W(θ,0) + i sin(θ/2)W(θ+π,0))`.
pub fn u1(theta: RationalAngle) -> Result<AlgebraElement> {
    let (alpha, beta) = u1_coeffs(theta)?;
    let second = RationalAngle::from_turns_pi(theta.pi_multiple() + Rational::one());
    term(alpha, theta, 0).try_add(&term(beta, second, 0))
}

/// `V₁ = V²`.
pub fn v1() -> AlgebraElement {
    AlgebraElement::v_pow(2)
}

/// `W₁(θ,ℓ) = e^{−iℓθ} U₁(θ) V^{2ℓ}`.
pub fn w1(theta: RationalAngle, ell: i64) -> Result<AlgebraElement> {
    let r = checked_mul(&theta.pi_multiple(), &Rational::from_integer(-ell))?;
    u1(theta)?
        .try_mul(&AlgebraElement::v_pow(2 * ell))?
        .try_scale(&Scalar::Exact(phase(r)?))
}

/// True when `x` commutes exactly with `a₁`, `a₂`, `a₃`.
pub fn in_commutant(x: &AlgebraElement) -> Result<bool> {
    for a in build_generators().paulis() {
        if !x.commutator(a)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Coefficient matrix of the linear map `c ↦ Σ_k c_k [basis_k, g]` over all
/// `g` in `against`, one row per Weyl key.
fn commutation_system(basis: &[AlgebraElement], against: &[&AlgebraElement]) -> Result<ExactMatrix> {
    let mut entries: Vec<((usize, WordKey), usize, Cyclotomic)> = Vec::new();
    let mut keys: Vec<(usize, WordKey)> = Vec::new();
    for (gi, g) in against.iter().enumerate() {
        for (k, b) in basis.iter().enumerate() {
            for t in b.commutator(g)?.terms() {
                let key = (gi, WordKey::new(t.theta, t.ell));
                if !keys.contains(&key) {
                    keys.push(key);
                }
                entries.push((key, k, t.coeff));
            }
        }
    }
    let mut m = ExactMatrix::zeros(keys.len(), basis.len());
    for (key, k, c) in entries {
        let row = keys.iter().position(|x| *x == key).expect("key registered");
        m.set(row, k, m.get(row, k).add(&c)?);
    }
    Ok(m)
}

/// Solve for all combinations `c₁W(θ,0) + c₂W(θ+π,0)` commuting with `a₊`
/// and `a₋`, exactly and on the oracle window.
pub fn commutant_ratio_check(theta: RationalAngle, window: Window) -> Result<Report> {
    let g = build_generators();
    let second = RationalAngle::from_turns_pi(theta.pi_multiple() + Rational::one());
    let basis = [AlgebraElement::u(theta), AlgebraElement::u(second)];
    let sys = commutation_system(&basis, &[&g.a_plus, &g.a_minus])?;
    let null = sys.null_space()?;
    let mut report = Report::new(format!("commutant coefficients at θ = {theta}π"));
    report.push(
        Entry::check(format!("ratio θ={theta} null space dimension"), null.len() == 1, 0.0, Mode::Exact)
            .with_sides(null.len().to_string(), "1"),
    );
    let (alpha, beta) = u1_coeffs(theta)?;
    let degenerate = alpha.is_zero() || beta.is_zero();
    if let Some(v) = null.first() {
        // (c₁, c₂) ∥ (α, β)  ⇔  c₁β − c₂α = 0
        let cross = v[0].mul(&beta)?.sub(&v[1].mul(&alpha)?)?;
        let mut e = Entry::check(format!("ratio θ={theta} symbolic"), cross.is_zero(), 0.0, Mode::Exact)
            .with_sides(format!("{} : {}", v[0], v[1]), format!("{alpha} : {beta}"));
        if degenerate {
            e = e.with_note("degenerate angle: single-term solution");
        }
        report.push(e);
    }
    // Oracle: null space of the stacked interior commutators.
    let ops: Vec<_> = basis.iter().map(|b| represent(b, window)).collect::<Result<_>>()?;
    let gens = [represent(&g.a_plus, window)?, represent(&g.a_minus, window)?];
    let idx = window.interior(2)?;
    let rows = gens.len() * idx.len() * idx.len();
    let mut m = DMatrix::<Complex64>::zeros(rows, 2);
    for (k, op) in ops.iter().enumerate() {
        let mut r = 0;
        for gm in &gens {
            let c = op.mul(gm)?.sub(&gm.mul(op)?)?;
            for &j in &idx {
                for &i in &idx {
                    m[(r, k)] = c.matrix()[(i, j)];
                    r += 1;
                }
            }
        }
    }
    let svd = m.svd(false, true);
    let v_t = svd.v_t.expect("requested");
    let (kmin, smin) = svd
        .singular_values
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (k, &s)| if s < acc.1 { (k, s) } else { acc });
    let (c1, c2) = (v_t[(kmin, 0)].conj(), v_t[(kmin, 1)].conj());
    let cross = (c1 * beta.to_complex() - c2 * alpha.to_complex()).norm();
    let ok = smin <= 1e-10 && cross <= 1e-10;
    report.push(
        Entry::check(format!("ratio θ={theta} oracle"), ok, cross.max(smin), Mode::Float)
            .with_sides(format!("{c1:.6} : {c2:.6}"), format!("{alpha} : {beta}")),
    );
    Ok(report)
}

/// `U(θ) = e^{iθ/2} U₁(θ) (cos(θ/2)𝕀 − i sin(θ/2)a₃)`.
pub fn reconstruct_u(theta: RationalAngle) -> Result<AlgebraElement> {
    let h = checked_mul(&theta.pi_multiple(), &half())?;
    let z = phase(h)?;
    let zc = phase(-h)?;
    let cos = z.add(&zc)?.scale(&half())?;
    let minus_i_sin = zc.sub(&z)?.scale(&half())?;
    let g = build_generators();
    let factor = g
        .identity
        .try_scale(&Scalar::Exact(cos))?
        .try_add(&g.a3.try_scale(&Scalar::Exact(minus_i_sin))?)?;
    u1(theta)?.try_mul(&factor)?.try_scale(&Scalar::Exact(z))
}

/// `V = a₊V₁ + a₋`.
pub fn reconstruct_v() -> Result<AlgebraElement> {
    let g = build_generators();
    g.a_plus.try_mul(&v1())?.try_add(&g.a_minus)
}

/// Image of `W(φ,ℓ)` under the nest isomorphism, `W₁(φ/2,ℓ)`, in closed form:
/// `α W(θ,2ℓ) + (−1)^ℓ β W(θ+π,2ℓ)` with `θ = φ/2`.
fn nest_word(coeff: &Cyclotomic, phi: RationalAngle, ell: i64) -> Result<AlgebraElement> {
    let theta = phi.half();
    let (alpha, beta) = u1_coeffs(theta)?;
    let second = RationalAngle::from_turns_pi(theta.pi_multiple() + Rational::one());
    let e2 = ell
        .checked_mul(2)
        .ok_or_else(|| Error::ArithmeticCapacity("word exponent overflow".into()))?;
    term(coeff.mul(&alpha)?, theta, e2).try_add(&term(coeff.mul(&beta)?.mul(&sign(ell))?, second, e2))
}

/// The *-isomorphism of the algebra onto the commutant, `W(φ,ℓ) ↦ W₁(φ/2,ℓ)`.
pub fn nest_iso(a: &AlgebraElement) -> Result<AlgebraElement> {
    if a.is_float() {
        let mut out = AlgebraElement::zero().to_float();
        for t in a.float_terms() {
            let theta = 0.5 * t.theta;
            let z = Complex64::from_polar(1.0, -theta);
            let alpha = (Complex64::new(1.0, 0.0) + z) * 0.5;
            let beta = (Complex64::new(1.0, 0.0) - z) * 0.5 * if t.ell % 2 == 0 { 1.0 } else { -1.0 };
            out = out.try_add(&AlgebraElement::from_float_terms(vec![
                crate::algebra::FloatTerm { coeff: t.coeff * alpha, theta, ell: 2 * t.ell },
                crate::algebra::FloatTerm { coeff: t.coeff * beta, theta: theta + std::f64::consts::PI, ell: 2 * t.ell },
            ]))?;
        }
        return Ok(out);
    }
    let mut out = AlgebraElement::zero();
    for t in a.terms() {
        out = out.try_add(&nest_word(&t.coeff, t.theta, t.ell)?)?;
    }
    Ok(out)
}

/// Preimage under [`nest_iso`]; a domain error if `a` is not in its image.
pub fn nest_iso_inverse(a: &AlgebraElement) -> Result<AlgebraElement> {
    if a.is_float() {
        return Err(Error::Usage("nest_iso_inverse needs an exact element".into()));
    }
    let mut pre = AlgebraElement::zero();
    for t in a.terms() {
        if t.ell.rem_euclid(2) != 0 {
            return Err(Error::Domain(format!("odd shift {} is not in the commutant image", t.ell)));
        }
        let ell = t.ell / 2;
        let r = t.theta.pi_multiple();
        let (base, c) = if r >= Rational::one() {
            (r - Rational::one(), t.coeff.mul(&sign(ell))?)
        } else {
            (r, t.coeff.clone())
        };
        let phi = RationalAngle::from_turns_pi(base * Rational::from_integer(2));
        pre = pre.try_add(&term(c, phi, ell))?;
    }
    if !nest_iso(&pre)?.equals(a)? {
        return Err(Error::Domain("element is not in the commutant image".into()));
    }
    Ok(pre)
}

pub type Block = [[AlgebraElement; 2]; 2];

fn zero_block() -> Block {
    [[AlgebraElement::zero(), AlgebraElement::zero()], [AlgebraElement::zero(), AlgebraElement::zero()]]
}

/// `x = Σ_{jk} E_jk · blocks[j][k]`, each block in the commutant.
#[derive(Clone, Debug)]
pub struct QubitDecomposition {
    pub blocks: Block,
    /// Preimages of the blocks under [`nest_iso`].
    pub preimages: Block,
}

impl QubitDecomposition {
    pub fn recombine(&self) -> Result<AlgebraElement> {
        recombine(&self.blocks)
    }
}

/// `Σ_{jk} E_jk b_jk`.
pub fn recombine(blocks: &Block) -> Result<AlgebraElement> {
    let e = build_generators().matrix_units();
    let mut out = AlgebraElement::zero();
    for j in 0..2 {
        for k in 0..2 {
            out = out.try_add(&e[j][k].try_mul(&blocks[j][k])?)?;
        }
    }
    Ok(out)
}

/// Blocks by the matrix-unit formula `m_jk = Σ_r E_rj x E_kr`.
pub fn matrix_unit_blocks(x: &AlgebraElement) -> Result<Block> {
    let e = build_generators().matrix_units();
    let mut out = zero_block();
    for j in 0..2 {
        for k in 0..2 {
            for r in 0..2 {
                out[j][k] = out[j][k].try_add(&e[r][j].try_mul(x)?.try_mul(&e[k][r])?)?;
            }
        }
    }
    Ok(out)
}

/// 2×2 matrix of preimages for a single word:
/// `U(φ) ↦ diag(U(2φ), e^{iφ}U(2φ))`, `V ↦ [[0,V],[𝕀,0]]`.
fn split_word(t: &WeylTerm) -> Result<Block> {
    let r = t.theta.pi_multiple();
    let prefactor = t.coeff.mul(&phase(checked_mul(&r, &Rational::new(-t.ell, 2))?)?)?;
    let u2 = AlgebraElement::u(RationalAngle::from_turns_pi(checked_mul(&r, &Rational::from_integer(2))?));
    let diag = [prefactor.clone(), prefactor.mul(&phase(r)?)?];
    let n = t.ell.div_euclid(2);
    let mut shift = zero_block();
    if t.ell.rem_euclid(2) == 0 {
        shift[0][0] = AlgebraElement::v_pow(n);
        shift[1][1] = AlgebraElement::v_pow(n);
    } else {
        shift[0][1] = AlgebraElement::v_pow(n + 1);
        shift[1][0] = AlgebraElement::v_pow(n);
    }
    let mut out = zero_block();
    for j in 0..2 {
        for k in 0..2 {
            if !shift[j][k].is_zero() {
                out[j][k] = u2.try_mul(&shift[j][k])?.try_scale(&Scalar::Exact(diag[j].clone()))?;
            }
        }
    }
    Ok(out)
}

/// Write `a` as `Σ E_jk ⊗ b_jk` with every `b_jk` in the commutant.
pub fn split(a: &AlgebraElement) -> Result<QubitDecomposition> {
    if a.is_float() {
        return Err(Error::Usage("split needs an exact element".into()));
    }
    let mut pre = zero_block();
    for t in a.terms() {
        let w = split_word(&t)?;
        for j in 0..2 {
            for k in 0..2 {
                pre[j][k] = pre[j][k].try_add(&w[j][k])?;
            }
        }
    }
    let mut blocks = zero_block();
    for j in 0..2 {
        for k in 0..2 {
            blocks[j][k] = nest_iso(&pre[j][k])?;
        }
    }
    Ok(QubitDecomposition { blocks, preimages: pre })
}

/// `n` extracted qubits: `entries` is a `2ⁿ×2ⁿ` matrix over the algebra,
/// with the first qubit as the most significant index bit.
#[derive(Clone, Debug)]
pub struct ExtractionTree {
    pub depth: usize,
    pub entries: Vec<Vec<AlgebraElement>>,
}

impl ExtractionTree {
    /// Block `(j,k)` carried into the `depth`-fold nested commutant.
    pub fn block(&self, j: usize, k: usize) -> Result<AlgebraElement> {
        let mut x = self.entries[j][k].clone();
        for _ in 0..self.depth {
            x = nest_iso(&x)?;
        }
        Ok(x)
    }

    pub fn recombine(&self) -> Result<AlgebraElement> {
        recombine_entries(&self.entries)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "depth": self.depth,
            "entries": self.entries.iter()
                .map(|row| row.iter().map(AlgebraElement::to_json_value).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

fn recombine_entries(m: &[Vec<AlgebraElement>]) -> Result<AlgebraElement> {
    if m.len() == 1 {
        return Ok(m[0][0].clone());
    }
    let h = m.len() / 2;
    let mut blocks = zero_block();
    for j in 0..2 {
        for k in 0..2 {
            let sub: Vec<Vec<AlgebraElement>> =
                (0..h).map(|p| m[j * h + p][k * h..k * h + h].to_vec()).collect();
            blocks[j][k] = nest_iso(&recombine_entries(&sub)?)?;
        }
    }
    recombine(&blocks)
}

/// Iterate [`split`] `n` times, pulling each block back through
/// [`nest_iso_inverse`] before the next level.
pub fn extract_qubits(a: &AlgebraElement, n: usize) -> Result<ExtractionTree> {
    if n == 0 {
        return Err(Error::Usage("extract_qubits needs n ≥ 1".into()));
    }
    Ok(ExtractionTree { depth: n, entries: extract_entries(a, n)? })
}

fn extract_entries(a: &AlgebraElement, n: usize) -> Result<Vec<Vec<AlgebraElement>>> {
    if n == 0 {
        return Ok(vec![vec![a.clone()]]);
    }
    let d = split(a)?;
    let h = 1usize << (n - 1);
    let mut out = vec![vec![AlgebraElement::zero(); 2 * h]; 2 * h];
    for j in 0..2 {
        for k in 0..2 {
            let pre = nest_iso_inverse(&d.blocks[j][k])?;
            let sub = extract_entries(&pre, n - 1)?;
            for p in 0..h {
                for q in 0..h {
                    out[j * h + p][k * h + q] = sub[p][q].clone();
                }
            }
        }
    }
    Ok(out)
}

/// Angle used for the commutant generator in numeric checks.
fn probe_angle() -> RationalAngle {
    RationalAngle::new(1, 3)
}

/// The center of the qubit algebra meets the commutant only in scalars.
pub fn factor_check(window: Window) -> Result<Report> {
    let g = build_generators();
    let mut report = Report::new("factor");
    let a3_center = g.a3.commutator(&g.a1)?.is_zero() && g.a3.commutator(&g.a2)?.is_zero();
    report.push(
        Entry::check("center candidate a3 rejected", !a3_center, 0.0, Mode::Exact)
            .with_sides("[a3, a1]", g.a3.commutator(&g.a1)?.to_string()),
    );
    report.push(Entry::check("center candidate identity accepted", in_commutant(&g.identity)?, 0.0, Mode::Exact));

    let basis = [g.identity.clone(), g.a1.clone(), g.a2.clone(), g.a3.clone()];
    let null = commutation_system(&basis, &[&g.a1, &g.a2])?.null_space()?;
    let scalar_only = null.len() == 1 && (1..4).all(|k| null[0][k].is_zero());
    report.push(
        Entry::check("qubit span commuting with a1 a2 is scalar", scalar_only, 0.0, Mode::Exact)
            .with_sides(format!("null space dimension {}", null.len()), "1"),
    );

    // Only U₁(0) = U₁(π) = 𝕀 has support on the key (π,0), with coefficient 0.
    let key = WordKey::new(RationalAngle::pi(), 0);
    let in_u1 = [RationalAngle::zero(), RationalAngle::pi()]
        .iter()
        .map(|t| u1(*t))
        .collect::<Result<Vec<_>>>()?
        .iter()
        .any(|u| u.coefficient(&key).is_some());
    report.push(Entry::check("a3 outside span of U1", !in_u1, 0.0, Mode::Exact));

    let gens = [
        represent(&g.a1, window)?,
        represent(&g.a2, window)?,
        represent(&g.a3, window)?,
        represent(&u1(probe_angle())?, window)?,
        represent(&v1(), window)?,
    ];
    let dim = oracle::joint_commutant_dimension(&gens, 4, 7)?;
    report.push(
        Entry::check("joint commutant interior dimension", dim == 1, 0.0, Mode::Float)
            .with_sides(dim.to_string(), "1"),
    );
    Ok(report)
}

/// Deterministic sample of word pairs for homomorphism checks.
fn sample_words() -> Vec<AlgebraElement> {
    let angles = [(0, 1), (1, 1), (1, 2), (2, 3), (5, 4), (7, 6), (3, 5)];
    let mut out = Vec::new();
    for (k, (p, q)) in angles.iter().enumerate() {
        out.push(AlgebraElement::word(RationalAngle::new(*p, *q), k as i64 - 3));
    }
    out
}

/// The structural conditions behind the tensor decomposition, each tied to
/// the check that establishes it.
pub fn structure_predicates(window: Window) -> Result<Report> {
    let g = build_generators();
    let mut report = Report::new("structure predicates");

    let pauli = verify_pauli(Some(window))?;
    report.push(Entry::check("(i) identity and M2 relations", pauli.all_pass(), 0.0, Mode::Exact));

    let mut comm_ok = true;
    for w in sample_words() {
        let t = w.terms().next().expect("word");
        comm_ok &= in_commutant(&w1(t.theta, t.ell)?)?;
    }
    report.push(Entry::check("(ii) W1 words lie in the commutant", comm_ok, 0.0, Mode::Exact));

    let mut total = reconstruct_v()?.equals(&AlgebraElement::v_pow(1))?;
    for w in sample_words() {
        let t = w.terms().next().expect("word");
        total &= reconstruct_u(t.theta)?.equals(&AlgebraElement::u(t.theta))?;
    }
    report.push(Entry::check("(iii) qubit and commutant generate U and V", total, 0.0, Mode::Exact));

    let factor = factor_check(window)?;
    report.push(Entry::check("(iv) factor", factor.all_pass(), 0.0, Mode::Exact));

    let words = sample_words();
    let mut hom = nest_iso(&g.identity)?.equals(&g.identity)?;
    for a in &words {
        hom &= nest_iso(&a.adjoint()?)?.equals(&nest_iso(a)?.adjoint()?)?;
        for b in &words {
            hom &= nest_iso(&a.try_mul(b)?)?.equals(&nest_iso(a)?.try_mul(&nest_iso(b)?)?)?;
        }
    }
    report.push(Entry::check("(v) nest isomorphism", hom, 0.0, Mode::Exact));
    Ok(report)
}

/// Group law, periodicity and Weyl relation of `U₁`, `V₁`; membership of
/// `W₁` words; coefficient ratios at two angles.
pub fn commutant_suite(window: Window) -> Result<Report> {
    let mut report = Report::new("commutant");
    let id = AlgebraElement::identity();
    report.push(identity_entry("U1(π) = I", &u1(RationalAngle::pi())?, &id, Some(window))?);
    let angles = [RationalAngle::new(1, 3), RationalAngle::new(1, 2), RationalAngle::new(5, 4), RationalAngle::new(7, 6)];
    for (k, t) in angles.iter().enumerate() {
        let t2 = angles[(k + 1) % angles.len()];
        let sum = RationalAngle::from_turns_pi(t.pi_multiple() + t2.pi_multiple());
        report.push(identity_entry(
            format!("U1 group law θ={t} θ'={t2}"),
            &u1(*t)?.try_mul(&u1(t2)?)?,
            &u1(sum)?,
            Some(window),
        )?);
        for ell in [-2i64, 1, 3] {
            let vl = v1_pow(ell)?;
            let phase = Scalar::phase_pi(checked_mul(&t.pi_multiple(), &Rational::from_integer(2 * ell))?)?;
            report.push(identity_entry(
                format!("U1 V1 Weyl relation θ={t} ℓ={ell}"),
                &u1(*t)?.try_mul(&vl)?,
                &vl.try_mul(&u1(*t)?)?.try_scale(&phase)?,
                Some(window),
            )?);
            let w = w1(*t, ell)?;
            report.push(Entry::check(format!("W1({t},{ell}) in commutant"), in_commutant(&w)?, 0.0, Mode::Exact));
        }
    }
    for t in [RationalAngle::new(1, 3), RationalAngle::new(1, 2)] {
        report.extend(commutant_ratio_check(t, window)?);
    }
    Ok(report)
}

fn v1_pow(ell: i64) -> Result<AlgebraElement> {
    let base = if ell >= 0 { v1() } else { v1().adjoint()? };
    base.pow(ell.unsigned_abs() as u32)
}

/// Split and recombine sample elements, checking block membership, the
/// matrix-unit formula and oracle agreement, followed by the structure
/// predicates.
pub fn tensor_suite(window: Window) -> Result<Report> {
    let g = build_generators();
    let mut report = Report::new("tensor split");
    let mut samples: Vec<(String, AlgebraElement)> = vec![
        ("V".into(), AlgebraElement::v_pow(1)),
        ("V*".into(), AlgebraElement::v_pow(-1)),
        ("a3".into(), g.a3.clone()),
        ("a+".into(), g.a_plus.clone()),
        ("U1(π/3)".into(), u1(RationalAngle::new(1, 3))?),
    ];
    for (k, w) in sample_words().into_iter().enumerate() {
        samples.push((format!("word {k}"), w));
    }
    let words = sample_words();
    samples.push(("V + U(π/2)".into(), AlgebraElement::v_pow(1).try_add(&AlgebraElement::u(RationalAngle::new(1, 2)))?));
    samples.push(("word mix".into(), words[2].try_mul(&words[5])?.try_add(&words[1].try_scale(&Scalar::i())?)?));
    for (name, x) in samples {
        let d = split(&x)?;
        report.push(identity_entry(format!("split round trip {name}"), &d.recombine()?, &x, Some(window))?);
        let members = d.blocks.iter().flatten().map(in_commutant).collect::<Result<Vec<_>>>()?;
        report.push(Entry::check(format!("split blocks in commutant {name}"), members.iter().all(|b| *b), 0.0, Mode::Exact));
        let cross = matrix_unit_blocks(&x)?;
        let mut agree = true;
        for j in 0..2 {
            for k in 0..2 {
                agree &= cross[j][k].equals(&d.blocks[j][k])?;
            }
        }
        report.push(Entry::check(format!("split matrix-unit cross-check {name}"), agree, 0.0, Mode::Exact));
    }
    report.extend(structure_predicates(window)?);
    Ok(report)
}

/// Largest oracle residual between `x` and its recombined split.
pub fn split_oracle_residual(x: &AlgebraElement, window: Window) -> Result<f64> {
    let back = split(x)?.recombine()?;
    oracle::elements_residual(x, &back, window, 1)
}

/// Pass/fail wrapper used by reports that compare against the oracle.
pub fn oracle_agrees(lhs: &AlgebraElement, rhs: &AlgebraElement, window: Window) -> Result<bool> {
    Ok(oracle::elements_residual(lhs, rhs, window, 1)? <= DEFAULT_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w32() -> Window {
        Window::new(32).unwrap()
    }

    #[test]
    fn pauli_suite_passes() {
        let r = verify_pauli(Some(w32())).unwrap();
        assert_eq!(r.entries.len(), 12);
        assert!(r.all_pass(), "{r}");
    }

    #[test]
    fn a_plus_squares_to_zero() {
        let g = build_generators();
        assert!((&g.a_plus * &g.a_plus).is_zero());
        assert_eq!(g.a1.len(), 4);
    }

    #[test]
    fn u1_special_values() {
        assert_eq!(u1(RationalAngle::zero()).unwrap(), AlgebraElement::identity());
        assert_eq!(u1(RationalAngle::pi()).unwrap(), AlgebraElement::identity());
        assert_eq!(u1(RationalAngle::new(1, 2)).unwrap().len(), 2);
    }

    #[test]
    fn nest_iso_examples() {
        assert_eq!(nest_iso(&AlgebraElement::v_pow(1)).unwrap(), v1());
        let img = nest_iso(&build_generators().a3).unwrap();
        assert_eq!(img, u1(RationalAngle::new(1, 2)).unwrap());
        assert!(in_commutant(&img).unwrap());
        assert_eq!(&img * &img, AlgebraElement::identity());
    }

    #[test]
    fn nest_word_matches_definition() {
        for (p, q, l) in [(0, 1, 1), (1, 3, -2), (3, 2, 3), (5, 3, 0)] {
            let phi = RationalAngle::new(p, q);
            let lit = w1(phi.half(), l).unwrap();
            assert_eq!(nest_iso(&AlgebraElement::word(phi, l)).unwrap(), lit);
        }
    }

    #[test]
    fn nest_inverse_rejects_outside_image() {
        assert!(matches!(nest_iso_inverse(&AlgebraElement::v_pow(1)), Err(Error::Domain(_))));
        assert!(matches!(nest_iso_inverse(&build_generators().a3), Err(Error::Domain(_))));
    }

    #[test]
    fn split_of_v_and_matrix_units_agree() {
        let v = AlgebraElement::v_pow(1);
        let d = split(&v).unwrap();
        assert_eq!(d.recombine().unwrap(), v);
        let mu = matrix_unit_blocks(&v).unwrap();
        for j in 0..2 {
            for k in 0..2 {
                assert_eq!(mu[j][k], d.blocks[j][k]);
            }
        }
        assert_eq!(d.blocks[0][1], v1());
        assert_eq!(d.blocks[1][0], AlgebraElement::identity());
    }

    #[test]
    fn extract_a3_depth_3() {
        let t = extract_qubits(&build_generators().a3, 3).unwrap();
        assert_eq!(t.entries.len(), 8);
        assert_eq!(t.entries[0][0], AlgebraElement::identity());
        assert_eq!(t.entries[4][4], AlgebraElement::identity().neg());
        assert_eq!(t.recombine().unwrap(), build_generators().a3);
    }

    #[test]
    fn ratio_at_half_pi() {
        let r = commutant_ratio_check(RationalAngle::new(1, 2), Window::new(16).unwrap()).unwrap();
        assert!(r.all_pass(), "{r}");
    }

    #[test]
    fn factor_passes() {
        let r = factor_check(Window::new(16).unwrap()).unwrap();
        assert!(r.all_pass(), "{r}");
    }
}
