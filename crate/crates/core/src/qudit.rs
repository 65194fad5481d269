//! `d`-level matrix subalgebras built from periodic projectors.

use num_complex::Complex64;

use crate::algebra::AlgebraElement;
use crate::angle::RationalAngle;
use crate::error::{Error, Result};
use crate::exact_linalg::ExactMatrix;
use crate::oracle::{represent, Window};
use crate::report::{Entry, Mode, Report};
use crate::scalar::{Cyclotomic, Rational, Scalar};

fn check_index(d: i64, ell: i64) -> Result<()> {
    if d < 2 {
        return Err(Error::Usage(format!("qudit dimension must be at least 2, got {d}")));
    }
    if !(1..=d).contains(&ell) {
        return Err(Error::Usage(format!("index {ell} outside 1..={d}")));
    }
    Ok(())
}

/// `P_ℓ = (1/d) Σ_j e^{−2πijℓ/d} U(2πj/d)`, the projector onto `ℓ′ ≡ ℓ (mod d)`.
pub fn projector(d: i64, ell: i64) -> Result<AlgebraElement> {
    check_index(d, ell)?;
    let mut out = AlgebraElement::zero();
    for j in 0..d {
        let c = Cyclotomic::phase_pi(Rational::new(-2 * j * ell, d))?.scale(&Rational::new(1, d))?;
        out = out.try_add(&AlgebraElement::u(RationalAngle::new(2 * j, d)).try_scale(&Scalar::Exact(c))?)?;
    }
    Ok(out)
}

/// `Q_{ℓℓ′} = V^{ℓ mod d} P_d V*^{ℓ′ mod d}`, mapping class `ℓ′` onto class `ℓ`.
pub fn matrix_unit(d: i64, l: i64, lp: i64) -> Result<AlgebraElement> {
    check_index(d, l)?;
    check_index(d, lp)?;
    AlgebraElement::v_pow(l.rem_euclid(d))
        .try_mul(&projector(d, d)?)?
        .try_mul(&AlgebraElement::v_pow(-lp.rem_euclid(d)))
}

#[derive(Clone, Debug)]
pub struct QuditBasis {
    pub d: i64,
    pub projectors: Vec<AlgebraElement>,
    /// `units[a−1][b−1] = Q_ab`.
    pub units: Vec<Vec<AlgebraElement>>,
}

impl QuditBasis {
    pub fn new(d: i64) -> Result<Self> {
        let projectors = (1..=d).map(|l| projector(d, l)).collect::<Result<_>>()?;
        let units = (1..=d)
            .map(|a| (1..=d).map(|b| matrix_unit(d, a, b)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        Ok(Self { d, projectors, units })
    }
}

/// Exact coordinates of `target` in the span of `basis`, if it lies there.
pub fn span_coordinates(basis: &[AlgebraElement], target: &AlgebraElement) -> Result<Option<Vec<Cyclotomic>>> {
    let mut keys = Vec::new();
    for x in basis.iter().chain(std::iter::once(target)) {
        for k in x.keys() {
            if !keys.contains(&k) {
                keys.push(k);
            }
        }
    }
    let n = basis.len();
    let mut m = ExactMatrix::zeros(keys.len(), n + 1);
    for (col, x) in basis.iter().chain(std::iter::once(target)).enumerate() {
        for t in x.terms() {
            let row = keys.iter().position(|k| k.theta == t.theta && k.ell == t.ell).expect("key collected");
            m.set(row, col, t.coeff);
        }
    }
    let (r, pivots) = m.rref()?;
    if pivots.contains(&n) {
        return Ok(None);
    }
    let mut c = vec![Cyclotomic::zero(); n];
    for (row, &p) in pivots.iter().enumerate() {
        c[p] = r.get(row, n).clone();
    }
    Ok(Some(c))
}

/// Exhaustive products for `d ≤ 4`; a fixed stride sample above that.
fn unit_triples(d: i64) -> Vec<(i64, i64, i64, i64)> {
    let mut out = Vec::new();
    for a in 1..=d {
        for b in 1..=d {
            for c in 1..=d {
                for e in 1..=d {
                    let idx = ((a - 1) * d * d * d + (b - 1) * d * d + (c - 1) * d + (e - 1)) as usize;
                    if d <= 4 || idx.is_multiple_of(7) {
                        out.push((a, b, c, e));
                    }
                }
            }
        }
    }
    out
}

/// Projector and matrix-unit relations, the oracle pattern of the
/// projectors, and for `d = 2` the change of basis to `{𝕀, a₁, a₂, a₃}`.
pub fn verify_qudit(d: i64, window: Window) -> Result<Report> {
    if !(2..=8).contains(&d) {
        return Err(Error::Usage(format!("qudit dimension {d} outside the supported range 2..=8")));
    }
    let basis = QuditBasis::new(d)?;
    let mut report = Report::new(format!("qudit d={d}"));
    let p = &basis.projectors;
    let id = AlgebraElement::identity();

    let mut idem = true;
    let mut orth = true;
    let mut sum = AlgebraElement::zero();
    for (a, pa) in p.iter().enumerate() {
        idem &= pa.try_mul(pa)?.equals(pa)? && pa.adjoint()?.equals(pa)?;
        for (b, pb) in p.iter().enumerate() {
            if a != b {
                orth &= pa.try_mul(pb)?.is_zero();
            }
        }
        sum = sum.try_add(pa)?;
    }
    report.push(Entry::check(format!("d={d} projectors idempotent and self-adjoint"), idem, 0.0, Mode::Exact));
    report.push(Entry::check(format!("d={d} projectors orthogonal"), orth, 0.0, Mode::Exact));
    report.push(Entry::check(format!("d={d} projectors complete"), sum.equals(&id)?, 0.0, Mode::Exact));

    let q = &basis.units;
    let triples = unit_triples(d);
    let mut table = true;
    for &(a, b, c, e) in &triples {
        let lhs = q[(a - 1) as usize][(b - 1) as usize].try_mul(&q[(c - 1) as usize][(e - 1) as usize])?;
        let rhs = if b == c { q[(a - 1) as usize][(e - 1) as usize].clone() } else { AlgebraElement::zero() };
        table &= lhs.equals(&rhs)?;
    }
    report.push(
        Entry::check(format!("d={d} matrix unit table"), table, 0.0, Mode::Exact)
            .with_note(format!("{} products", triples.len())),
    );
    let mut adj = true;
    let mut diag = AlgebraElement::zero();
    for a in 0..d as usize {
        diag = diag.try_add(&q[a][a])?;
        for b in 0..d as usize {
            adj &= q[a][b].adjoint()?.equals(&q[b][a])?;
        }
    }
    report.push(Entry::check(format!("d={d} unit adjoints"), adj, 0.0, Mode::Exact));
    report.push(Entry::check(format!("d={d} diagonal units sum to identity"), diag.equals(&id)?, 0.0, Mode::Exact));

    let mut worst = 0.0f64;
    for (k, pk) in p.iter().enumerate() {
        let m = represent(pk, window)?;
        for ell in window.ells() {
            let i = window.index(ell).expect("in window");
            let want = if (ell - (k as i64 + 1)).rem_euclid(d) == 0 { 1.0 } else { 0.0 };
            for j in 0..window.dim() {
                let target = if i == j { Complex64::new(want, 0.0) } else { Complex64::new(0.0, 0.0) };
                worst = worst.max((m.matrix()[(i, j)] - target).norm());
            }
        }
    }
    report.push(Entry::check(format!("d={d} projector oracle pattern"), worst <= 1e-12, worst, Mode::Float));

    if d == 2 {
        let g = crate::qubit::build_generators();
        let pauli = [g.identity.clone(), g.a1.clone(), g.a2.clone(), g.a3.clone()];
        let mut rows = Vec::new();
        let mut ok = true;
        for a in 0..2 {
            for b in 0..2 {
                match span_coordinates(&pauli, &q[a][b])? {
                    Some(c) => rows.push(c),
                    None => ok = false,
                }
            }
        }
        let invertible = ok && ExactMatrix::from_rows(rows)?.rank()? == 4;
        report.push(Entry::check("d=2 change of basis to qubit subalgebra", invertible, 0.0, Mode::Exact));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qubit::build_generators;

    #[test]
    fn even_projector_for_d2() {
        let g = build_generators();
        let want = g.identity.try_add(&g.a3).unwrap().try_scale(&Scalar::rational(1, 2)).unwrap();
        assert_eq!(projector(2, 2).unwrap(), want);
    }

    #[test]
    fn units_d3() {
        let q12 = matrix_unit(3, 1, 2).unwrap();
        let q23 = matrix_unit(3, 2, 3).unwrap();
        assert_eq!(&q12 * &q23, matrix_unit(3, 1, 3).unwrap());
        assert!((&q12 * &q12).is_zero());
        assert_eq!(q12.adjoint().unwrap(), matrix_unit(3, 2, 1).unwrap());
    }

    #[test]
    fn suites_pass() {
        let w = Window::new(16).unwrap();
        for d in 2..=5 {
            let r = verify_qudit(d, w).unwrap();
            assert!(r.all_pass(), "{r}");
        }
    }

    #[test]
    fn bad_index() {
        assert!(projector(3, 0).is_err());
        assert!(matrix_unit(3, 1, 4).is_err());
    }
}
