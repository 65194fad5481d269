//! Exact and floating complex scalars.
//!
//! Every phase produced by the Weyl product rule is a root of unity, and so
//! are the half-angle cosines and sines that show up in the commutant
//! generators. Exact coefficients therefore live in a cyclotomic field
//! Q(ζₙ). An element is stored in the power basis `1, ζ, …, ζ^{φ(n)−1}`
//! reduced modulo the cyclotomic polynomial Φₙ, which makes zero tests and
//! equality exact.
//!
//! Rational coefficients are `Ratio<i64>` with checked arithmetic; overflow
//! and oversized field orders surface as [`Error::ArithmeticCapacity`].

use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// Largest cyclotomic order an exact scalar may live in.
pub const MAX_ORDER: u32 = 4096;

fn capacity(what: &str) -> Error {
    Error::ArithmeticCapacity(format!("rational overflow in {what}"))
}

pub(crate) fn checked_add(a: &Rational, b: &Rational) -> Result<Rational> {
    a.checked_add(b).ok_or_else(|| capacity("addition"))
}

pub(crate) fn checked_sub(a: &Rational, b: &Rational) -> Result<Rational> {
    a.checked_sub(b).ok_or_else(|| capacity("subtraction"))
}

pub(crate) fn checked_mul(a: &Rational, b: &Rational) -> Result<Rational> {
    a.checked_mul(b).ok_or_else(|| capacity("multiplication"))
}

pub(crate) fn checked_div(a: &Rational, b: &Rational) -> Result<Rational> {
    if b.is_zero() {
        return Err(Error::Usage("division by zero".into()));
    }
    a.checked_div(b).ok_or_else(|| capacity("division"))
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn mobius(n: u32) -> i32 {
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

pub(crate) fn euler_phi(n: u32) -> usize {
    let mut result = n as usize;
    for p in prime_factors(n) {
        result = result / p as usize * (p as usize - 1);
    }
    result
}

/// Integer coefficients (low degree first) of the cyclotomic polynomial Φₙ,
/// from Φₙ = ∏_{d | n} (x^d − 1)^{μ(n/d)}.
pub(crate) fn cyclotomic_poly(n: u32) -> Vec<i64> {
    let mut poly = vec![1i64];
    let mut divide_by = Vec::new();
    for d in divisors(n) {
        match mobius(n / d) {
            1 => {
                let d = d as usize;
                let mut next = vec![0i64; poly.len() + d];
                for (k, &c) in poly.iter().enumerate() {
                    next[k + d] += c;
                    next[k] -= c;
                }
                poly = next;
            }
            -1 => divide_by.push(d as usize),
            _ => {}
        }
    }
    for d in divide_by {
        let len = poly.len() - d;
        let mut q = vec![0i64; len];
        for k in 0..len {
            let prev = if k >= d { q[k - d] } else { 0 };
            q[k] = prev - poly[k];
        }
        poly = q;
    }
    debug_assert_eq!(poly.len(), euler_phi(n) + 1);
    poly
}

/// Reduce `p` modulo the monic polynomial `modulus` in place and return the
/// remainder padded to `deg(modulus)` coefficients.
fn reduce(mut p: Vec<Rational>, modulus: &[i64]) -> Result<Vec<Rational>> {
    let d = modulus.len() - 1;
    for k in (d..p.len()).rev() {
        let c = p[k];
        if c.is_zero() {
            continue;
        }
        for (j, &m) in modulus[..d].iter().enumerate() {
            if m != 0 {
                let t = checked_mul(&c, &Rational::from_integer(m))?;
                p[k - d + j] = checked_sub(&p[k - d + j], &t)?;
            }
        }
        p[k] = Rational::zero();
    }
    p.resize(d, Rational::zero());
    Ok(p)
}

/// An element of the cyclotomic field Q(ζₙ), ζₙ = e^{2πi/n}.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<Rational>,
}

type CommonForm = (u32, Vec<i64>, Vec<Rational>, Vec<Rational>);

impl Cyclotomic {
    pub fn zero() -> Self {
        Self { order: 1, coeffs: vec![Rational::zero()] }
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    pub fn rational(q: Rational) -> Self {
        Self { order: 1, coeffs: vec![q] }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Power-basis coefficients of ζₙ^k, k = 0..φ(n).
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// ζₙ^k.
    pub fn root_of_unity(order: u32, k: i64) -> Result<Self> {
        if order == 0 {
            return Err(Error::Usage("root of unity of order 0".into()));
        }
        if order > MAX_ORDER {
            return Err(Error::ArithmeticCapacity(format!(
                "cyclotomic order {order} exceeds cap {MAX_ORDER}"
            )));
        }
        let k = k.rem_euclid(order as i64) as usize;
        let mut p = vec![Rational::zero(); k + 1];
        p[k] = Rational::one();
        let coeffs = reduce(p, &cyclotomic_poly(order))?;
        Self { order, coeffs }.normalized()
    }

    /// e^{iπr}.
    pub fn phase_pi(r: Rational) -> Result<Self> {
        let denom = *r.denom();
        let order = 2 * denom;
        if order > MAX_ORDER as i64 {
            return Err(Error::ArithmeticCapacity(format!(
                "phase denominator {denom} exceeds cyclotomic order cap"
            )));
        }
        Self::root_of_unity(order as u32, *r.numer())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    fn lift(&self, n: u32, modulus: &[i64]) -> Result<Vec<Rational>> {
        debug_assert_eq!(n % self.order, 0);
        let step = (n / self.order) as usize;
        if step == 1 {
            return Ok(self.coeffs.clone());
        }
        let mut p = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            p[k * step] = *c;
        }
        reduce(p, modulus)
    }

    /// Common order, its cyclotomic polynomial, and both operands lifted to it.
    fn common(&self, other: &Self) -> Result<CommonForm> {
        let n = self.order.lcm(&other.order);
        if n > MAX_ORDER {
            return Err(Error::ArithmeticCapacity(format!(
                "cyclotomic order {n} exceeds cap {MAX_ORDER}"
            )));
        }
        let modulus = cyclotomic_poly(n);
        let a = self.lift(n, &modulus)?;
        let b = other.lift(n, &modulus)?;
        Ok((n, modulus, a, b))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (order, _, a, b) = self.common(other)?;
        let coeffs = a
            .iter()
            .zip(&b)
            .map(|(x, y)| checked_add(x, y))
            .collect::<Result<Vec<_>>>()?;
        Self { order, coeffs }.normalized()
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, q: &Rational) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|c| checked_mul(c, q)).collect::<Result<Vec<_>>>()?;
        Self { order: self.order, coeffs }.normalized()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.is_rational() {
            return other.scale(&self.coeffs[0]);
        }
        if other.is_rational() {
            return self.scale(&other.coeffs[0]);
        }
        let (order, modulus, a, b) = self.common(other)?;
        let mut p = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                p[i + j] = checked_add(&p[i + j], &checked_mul(x, y)?)?;
            }
        }
        let coeffs = reduce(p, &modulus)?;
        Self { order, coeffs }.normalized()
    }

    /// Complex conjugate (ζ ↦ ζ⁻¹).
    pub fn conj(&self) -> Result<Self> {
        if self.is_rational() {
            return Ok(self.clone());
        }
        let n = self.order as usize;
        let mut p = vec![Rational::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            let idx = (n - k) % n;
            p[idx] = checked_add(&p[idx], c)?;
        }
        let coeffs = reduce(p, &cyclotomic_poly(self.order))?;
        Self { order: self.order, coeffs }.normalized()
    }

    /// Multiplicative inverse, by solving the multiplication-by-self linear
    /// system over Q.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Usage("inverse of zero".into()));
        }
        if self.is_rational() {
            return Ok(Self::rational(checked_div(&Rational::one(), &self.coeffs[0])?));
        }
        let modulus = cyclotomic_poly(self.order);
        let d = self.coeffs.len();
        // columns: self * ζ^j
        let mut columns = Vec::with_capacity(d);
        for j in 0..d {
            let mut p = vec![Rational::zero(); d + j];
            p[j..j + d].copy_from_slice(&self.coeffs);
            columns.push(reduce(p, &modulus)?);
        }
        let mut rows: Vec<Vec<Rational>> = (0..d)
            .map(|i| {
                let mut row: Vec<Rational> = columns.iter().map(|c| c[i]).collect();
                row.push(if i == 0 { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        for col in 0..d {
            let pivot = (col..d)
                .find(|&r| !rows[r][col].is_zero())
                .ok_or_else(|| Error::Usage("singular multiplication matrix".into()))?;
            rows.swap(col, pivot);
            let p = rows[col][col];
            for k in col..=d {
                rows[col][k] = checked_div(&rows[col][k], &p)?;
            }
            for r in 0..d {
                if r == col || rows[r][col].is_zero() {
                    continue;
                }
                let f = rows[r][col];
                for k in col..=d {
                    let t = checked_mul(&f, &rows[col][k])?;
                    rows[r][k] = checked_sub(&rows[r][k], &t)?;
                }
            }
        }
        let coeffs = rows.iter().map(|r| r[d]).collect();
        Self { order: self.order, coeffs }.normalized()
    }

    pub fn to_complex(&self) -> Complex64 {
        let n = self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let v = *c.numer() as f64 / *c.denom() as f64;
                Complex64::from_polar(v, 2.0 * std::f64::consts::PI * k as f64 / n)
            })
            .sum()
    }

    /// Components `(magnitude, phase)` with the value equal to
    /// Σ magnitude·e^{iπ·phase}, phase in [0, 2).
    pub fn components(&self) -> Vec<(Rational, Rational)> {
        let n = self.order as i64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let mut phase = Rational::new(2 * k as i64, n);
                if c.is_negative() {
                    phase += Rational::one();
                }
                let two = Rational::from_integer(2);
                while phase >= two {
                    phase -= two;
                }
                (c.abs(), phase)
            })
            .collect()
    }

    fn normalized(mut self) -> Result<Self> {
        if self.is_rational() {
            self.coeffs.truncate(1);
            self.order = 1;
            return Ok(self);
        }
        loop {
            let n = self.order;
            // Φ_n(x) = Φ_{n/p}(x^p) when p² | n, so the subfield Q(ζ_{n/p})
            // is spanned by the basis powers divisible by p.
            let shrink = prime_factors(n).into_iter().find(|&p| {
                n.is_multiple_of(p * p)
                    && self
                        .coeffs
                        .iter()
                        .enumerate()
                        .all(|(k, c)| c.is_zero() || k % p as usize == 0)
            });
            match shrink {
                Some(p) => {
                    self.coeffs = self.coeffs.iter().step_by(p as usize).copied().collect();
                    self.order = n / p;
                }
                None => break,
            }
        }
        if self.order % 4 == 2 {
            // Q(ζ_{2m}) = Q(ζ_m) for odd m, via ζ_{2m} = −ζ_m^{(m+1)/2}.
            let m = self.order / 2;
            let modulus = cyclotomic_poly(m);
            let mut p = vec![Rational::zero(); m as usize];
            for (k, c) in self.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let idx = (k as u64 * (m as u64).div_ceil(2) % m as u64) as usize;
                let v = if k % 2 == 0 { *c } else { -c };
                p[idx] = checked_add(&p[idx], &v)?;
            }
            self.coeffs = reduce(p, &modulus)?;
            self.order = m;
            return self.normalized();
        }
        Ok(self)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        match self.common(other) {
            Ok((_, _, a, b)) => a == b,
            Err(_) => false,
        }
    }
}

fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps = self.components();
        if comps.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = comps
            .iter()
            .map(|(mag, phase)| {
                let m = fmt_rational(mag);
                if phase.is_zero() {
                    m
                } else if *phase == Rational::one() {
                    format!("-{m}")
                } else if *phase == Rational::new(1, 2) {
                    format!("{m}i")
                } else if *phase == Rational::new(3, 2) {
                    format!("-{m}i")
                } else {
                    format!("{m}·e^(iπ·{})", fmt_rational(phase))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

/// A coefficient of the algebra: exact cyclotomic or a float fallback.
#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(Cyclotomic),
    Float(Complex64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(Cyclotomic::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(Cyclotomic::one())
    }

    pub fn rational(numer: i64, denom: i64) -> Self {
        Scalar::Exact(Cyclotomic::rational(Rational::new(numer, denom)))
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(n, 1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar::Exact(Cyclotomic::root_of_unity(4, 1).expect("order 4 is small"))
    }

    /// e^{iπr} for rational r.
    pub fn phase_pi(r: Rational) -> Result<Self> {
        Ok(Scalar::Exact(Cyclotomic::phase_pi(r)?))
    }

    pub fn float(c: Complex64) -> Self {
        Scalar::Float(c)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(c) => c.is_zero(),
            Scalar::Float(z) => *z == Complex64::new(0.0, 0.0),
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Exact(c) => c.to_complex(),
            Scalar::Float(z) => *z,
        }
    }

    pub fn as_exact(&self) -> Option<&Cyclotomic> {
        match self {
            Scalar::Exact(c) => Some(c),
            Scalar::Float(_) => None,
        }
    }

    pub fn to_float(&self) -> Self {
        Scalar::Float(self.to_complex())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(a.add(b)?)),
            _ => Ok(Scalar::Float(self.to_complex() + other.to_complex())),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(a.mul(b)?)),
            _ => Ok(Scalar::Float(self.to_complex() * other.to_complex())),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Scalar::Exact(a) => Scalar::Exact(a.neg()),
            Scalar::Float(z) => Scalar::Float(-z),
        }
    }

    pub fn conj(&self) -> Result<Self> {
        match self {
            Scalar::Exact(a) => Ok(Scalar::Exact(a.conj()?)),
            Scalar::Float(z) => Ok(Scalar::Float(z.conj())),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        match self {
            Scalar::Exact(a) => Ok(Scalar::Exact(a.inv()?)),
            Scalar::Float(z) => {
                if *z == Complex64::new(0.0, 0.0) {
                    Err(Error::Usage("inverse of zero".into()))
                } else {
                    Ok(Scalar::Float(z.inv()))
                }
            }
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inv()?)
    }

    /// Exact equality; a float on either side is a usage error.
    pub fn exact_eq(&self, other: &Self) -> Result<bool> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(a == b),
            _ => Err(Error::Usage("exact comparison of a float-mode scalar".into())),
        }
    }
}

impl From<Cyclotomic> for Scalar {
    fn from(c: Cyclotomic) -> Self {
        Scalar::Exact(c)
    }
}

impl From<Complex64> for Scalar {
    fn from(c: Complex64) -> Self {
        Scalar::Float(c)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(c) => write!(f, "{c}"),
            Scalar::Float(z) => write!(f, "({:.6e}{:+.6e}i)", z.re, z.im),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        // Φ_105 is the first with a coefficient of magnitude 2
        assert!(cyclotomic_poly(105).contains(&-2));
        assert_eq!(euler_phi(105), 48);
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        let mut acc = Cyclotomic::zero();
        for k in 0..3 {
            acc = acc.add(&Cyclotomic::root_of_unity(3, k).unwrap()).unwrap();
        }
        assert!(acc.is_zero());
        let mut acc = Cyclotomic::zero();
        for k in 0..12 {
            acc = acc.add(&Cyclotomic::root_of_unity(12, k).unwrap()).unwrap();
        }
        assert!(acc.is_zero());
    }

    #[test]
    fn phases_compose() {
        let a = Cyclotomic::phase_pi(q(1, 3)).unwrap();
        let b = Cyclotomic::phase_pi(q(1, 4)).unwrap();
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, Cyclotomic::phase_pi(q(7, 12)).unwrap());
        let minus_one = Cyclotomic::phase_pi(q(1, 1)).unwrap();
        assert_eq!(minus_one, Cyclotomic::rational(q(-1, 1)));
        assert_eq!(Cyclotomic::phase_pi(q(2, 1)).unwrap(), Cyclotomic::one());
    }

    #[test]
    fn order_reduction_is_consistent() {
        // ζ_6 lives in Q(ζ_3)
        let z6 = Cyclotomic::root_of_unity(6, 1).unwrap();
        assert_eq!(z6.order(), 3);
        assert!((z6.to_complex() - Complex64::from_polar(1.0, std::f64::consts::PI / 3.0)).norm() < 1e-14);
        // i·i = −1 through a detour in order 12
        let i = Cyclotomic::root_of_unity(4, 1).unwrap();
        let w = Cyclotomic::root_of_unity(12, 3).unwrap();
        assert_eq!(i, w);
        assert_eq!(i.mul(&w).unwrap(), Cyclotomic::rational(q(-1, 1)));
    }

    #[test]
    fn sqrt_two_over_two() {
        // cos(π/4) = (ζ8 + ζ8⁻¹)/2, squared is 1/2
        let z = Cyclotomic::root_of_unity(8, 1).unwrap();
        let c = z.add(&z.conj().unwrap()).unwrap().scale(&q(1, 2)).unwrap();
        assert_eq!(c.mul(&c).unwrap(), Cyclotomic::rational(q(1, 2)));
        assert!((c.to_complex().re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = Cyclotomic::rational(q(1, 2))
            .add(&Cyclotomic::phase_pi(q(2, 3)).unwrap())
            .unwrap();
        let inv = a.inv().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Cyclotomic::one());
        assert!(Cyclotomic::zero().inv().is_err());
    }

    #[test]
    fn conj_of_phase() {
        let a = Cyclotomic::phase_pi(q(1, 6)).unwrap();
        assert_eq!(a.conj().unwrap(), Cyclotomic::phase_pi(q(-1, 6)).unwrap());
    }

    #[test]
    fn overflow_is_reported() {
        let big = Cyclotomic::rational(q(i64::MAX / 2, 1));
        let err = big.mul(&big).unwrap_err();
        assert!(matches!(err, Error::ArithmeticCapacity(_)));
        assert!(matches!(
            Cyclotomic::root_of_unity(MAX_ORDER + 1, 1),
            Err(Error::ArithmeticCapacity(_))
        ));
    }

    #[test]
    fn components_reconstruct_value() {
        let a = Cyclotomic::rational(q(1, 2))
            .add(&Cyclotomic::phase_pi(q(1, 3)).unwrap().scale(&q(-3, 4)).unwrap())
            .unwrap();
        let sum: Complex64 = a
            .components()
            .iter()
            .map(|(m, p)| {
                Complex64::from_polar(
                    *m.numer() as f64 / *m.denom() as f64,
                    std::f64::consts::PI * *p.numer() as f64 / *p.denom() as f64,
                )
            })
            .sum();
        assert!((sum - a.to_complex()).norm() < 1e-14);
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::i().to_string(), "1i");
        assert_eq!(Scalar::rational(-1, 2).to_string(), "-1/2");
    }
}
