//! The dense Weyl algebra A₀ = span{W(θ,ℓ)}.
//!
//! A Weyl word is `W(θ,ℓ) = e^{−iℓθ/2} U(θ) Vˡ` with `U(θ) = e^{iθL}` and
//! `V` the unit shift of angular momentum. Words multiply as
//!
//! ```text
//! W(θ,ℓ) W(θ′,ℓ′) = e^{i(ℓ′θ − ℓθ′)/2} W(θ+θ′, ℓ+ℓ′),   W(θ,ℓ)* = W(−θ,−ℓ)
//! ```
//!
//! Angles are kept in `[0, 2π)`. Because of the half-angle prefactor a full
//! turn is not free: `W(θ+2π,ℓ) = (−1)ˡ W(θ,ℓ)`, and that sign is absorbed
//! into the coefficient whenever an angle is wrapped.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::angle::{parse_rational, RationalAngle};
use crate::error::{Error, Result};
use crate::scalar::{checked_add, checked_mul, checked_sub, Cyclotomic, Rational, Scalar};

/// Products whose expanded term count exceeds this are refused.
pub const MAX_TERMS: usize = 1 << 16;

/// Relative threshold below which float-mode coefficients are dropped.
pub const FLOAT_ZERO_REL: f64 = 1e-12;

/// Angles closer than this are merged in float mode.
const FLOAT_ANGLE_EPS: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WordKey {
    pub theta: RationalAngle,
    pub ell: i64,
}

impl WordKey {
    pub fn new(theta: RationalAngle, ell: i64) -> Self {
        Self { theta, ell }
    }
}

/// A scalar multiple of a single canonical word.
#[derive(Clone, Debug)]
pub struct WeylTerm {
    pub coeff: Cyclotomic,
    pub theta: RationalAngle,
    pub ell: i64,
}

/// A float-mode term; `theta` is in radians, `[0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FloatTerm {
    pub coeff: Complex64,
    pub theta: f64,
    pub ell: i64,
}

fn parity_sign(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `(−1)^{turns·ℓ}`, the sign picked up by wrapping a word's angle.
fn wrap_sign(turns: i64, ell: i64) -> i64 {
    if parity_sign(turns) < 0 && parity_sign(ell) < 0 {
        -1
    } else {
        1
    }
}

fn ratio_mul_int(r: &Rational, n: i64) -> Result<Rational> {
    checked_mul(r, &Rational::from_integer(n))
}

/// Product of two words: `W(θ,ℓ)·W(θ′,ℓ′)`, canonicalized.
pub fn weyl_mul(a: &WeylTerm, b: &WeylTerm) -> Result<WeylTerm> {
    let (r, l) = (a.theta.pi_multiple(), a.ell);
    let (rp, lp) = (b.theta.pi_multiple(), b.ell);
    let ell = l
        .checked_add(lp)
        .ok_or_else(|| Error::ArithmeticCapacity("word exponent overflow".into()))?;
    let (theta, turns) = RationalAngle::wrap(checked_add(&r, &rp)?);
    // e^{iπ(ℓ′r − ℓr′)/2} · (−1)^{turns·ℓ}
    let mut phase = checked_sub(&ratio_mul_int(&r, lp)?, &ratio_mul_int(&rp, l)?)?;
    phase = checked_mul(&phase, &Rational::new(1, 2))?;
    if wrap_sign(turns, ell) < 0 {
        phase = checked_add(&phase, &Rational::one())?;
    }
    let coeff = a.coeff.mul(&b.coeff)?.mul(&Cyclotomic::phase_pi(phase)?)?;
    Ok(WeylTerm { coeff, theta, ell })
}

fn weyl_adjoint(t: &WeylTerm) -> Result<WeylTerm> {
    let (theta, turns) = RationalAngle::wrap(-t.theta.pi_multiple());
    let ell = -t.ell;
    let mut coeff = t.coeff.conj()?;
    if wrap_sign(turns, ell) < 0 {
        coeff = coeff.neg();
    }
    Ok(WeylTerm { coeff, theta, ell })
}

fn float_wrap(theta: f64, ell: i64) -> (f64, Complex64) {
    let turns = (theta / TAU).floor();
    let mut t = theta - turns * TAU;
    let mut sign = wrap_sign(turns as i64, ell);
    if t >= TAU - FLOAT_ANGLE_EPS {
        t = 0.0;
        sign *= parity_sign(ell);
    }
    (t, Complex64::new(sign as f64, 0.0))
}

#[derive(Clone, Debug)]
enum Repr {
    Exact(BTreeMap<WordKey, Cyclotomic>),
    Float(Vec<FloatTerm>),
}

/// A finite linear combination of Weyl words in canonical form.
///
/// Exact elements hold cyclotomic coefficients keyed by `(θ, ℓ)`; float-mode
/// elements hold `f64` angles and complex coefficients and only support
/// tolerance-based comparison.
#[derive(Clone, Debug)]
pub struct AlgebraElement {
    repr: Repr,
}

impl Default for AlgebraElement {
    fn default() -> Self {
        Self::zero()
    }
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self { repr: Repr::Exact(BTreeMap::new()) }
    }

    pub fn identity() -> Self {
        Self::word(RationalAngle::zero(), 0)
    }

    /// The word `W(θ,ℓ)` with unit coefficient.
    pub fn word(theta: RationalAngle, ell: i64) -> Self {
        let mut m = BTreeMap::new();
        m.insert(WordKey::new(theta, ell), Cyclotomic::one());
        Self { repr: Repr::Exact(m) }
    }

    /// `U(θ) = W(θ,0)`.
    pub fn u(theta: RationalAngle) -> Self {
        Self::word(theta, 0)
    }

    /// `Vˡ = W(0,ℓ)`.
    pub fn v_pow(ell: i64) -> Self {
        Self::word(RationalAngle::zero(), ell)
    }

    pub fn from_term(term: WeylTerm) -> Self {
        let mut m = BTreeMap::new();
        if !term.coeff.is_zero() {
            m.insert(WordKey::new(term.theta, term.ell), term.coeff);
        }
        Self { repr: Repr::Exact(m) }
    }

    /// Build from `(coefficient, θ as multiple of π, ℓ)` triples; repeated
    /// keys are summed.
    pub fn from_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Scalar, RationalAngle, i64)>,
    {
        let mut acc = Self::zero();
        for (c, theta, ell) in terms {
            acc = acc.try_add(&Self::word(theta, ell).try_scale(&c)?)?;
        }
        Ok(acc)
    }

    /// A float-mode word at an arbitrary real angle (radians).
    pub fn float_word(theta: f64, ell: i64, coeff: Complex64) -> Self {
        Self::from_float_terms(vec![FloatTerm { coeff, theta, ell }])
    }

    pub fn from_float_terms(terms: Vec<FloatTerm>) -> Self {
        Self { repr: Repr::Float(canonical_float(terms)) }
    }

    pub fn is_float(&self) -> bool {
        matches!(self.repr, Repr::Float(_))
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Exact(m) => m.is_empty(),
            Repr::Float(v) => v.is_empty(),
        }
    }

    pub fn len(&self) -> usize {
        match &self.repr {
            Repr::Exact(m) => m.len(),
            Repr::Float(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Exact terms in key order. Empty for float-mode elements.
    pub fn terms(&self) -> impl Iterator<Item = WeylTerm> + '_ {
        let it = match &self.repr {
            Repr::Exact(m) => Some(m.iter().map(|(k, c)| WeylTerm {
                coeff: c.clone(),
                theta: k.theta,
                ell: k.ell,
            })),
            Repr::Float(_) => None,
        };
        it.into_iter().flatten()
    }

    pub fn coefficient(&self, key: &WordKey) -> Option<&Cyclotomic> {
        match &self.repr {
            Repr::Exact(m) => m.get(key),
            Repr::Float(_) => None,
        }
    }

    pub fn keys(&self) -> Vec<WordKey> {
        match &self.repr {
            Repr::Exact(m) => m.keys().copied().collect(),
            Repr::Float(_) => Vec::new(),
        }
    }

    /// Terms as floats, valid in either mode.
    pub fn float_terms(&self) -> Vec<FloatTerm> {
        match &self.repr {
            Repr::Exact(m) => m
                .iter()
                .map(|(k, c)| FloatTerm { coeff: c.to_complex(), theta: k.theta.radians(), ell: k.ell })
                .collect(),
            Repr::Float(v) => v.clone(),
        }
    }

    /// Largest |ℓ| among the terms.
    pub fn bandwidth(&self) -> i64 {
        self.float_terms().iter().map(|t| t.ell.abs()).max().unwrap_or(0)
    }

    pub fn to_float(&self) -> Self {
        Self::from_float_terms(self.float_terms())
    }

    fn exact_map(&self) -> Option<&BTreeMap<WordKey, Cyclotomic>> {
        match &self.repr {
            Repr::Exact(m) => Some(m),
            Repr::Float(_) => None,
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        match (&self.repr, &other.repr) {
            (Repr::Exact(a), Repr::Exact(b)) => {
                let mut out = a.clone();
                for (k, c) in b {
                    add_into(&mut out, *k, c)?;
                }
                Ok(Self { repr: Repr::Exact(out) })
            }
            _ => {
                let mut v = self.float_terms();
                v.extend(other.float_terms());
                Ok(Self::from_float_terms(v))
            }
        }
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        match &self.repr {
            Repr::Exact(m) => Self {
                repr: Repr::Exact(m.iter().map(|(k, c)| (*k, c.neg())).collect()),
            },
            Repr::Float(v) => Self {
                repr: Repr::Float(v.iter().map(|t| FloatTerm { coeff: -t.coeff, ..*t }).collect()),
            },
        }
    }

    pub fn try_scale(&self, c: &Scalar) -> Result<Self> {
        match (&self.repr, c) {
            (Repr::Exact(m), Scalar::Exact(s)) => {
                let mut out = BTreeMap::new();
                if s.is_zero() {
                    return Ok(Self::zero());
                }
                for (k, v) in m {
                    out.insert(*k, v.mul(s)?);
                }
                Ok(Self { repr: Repr::Exact(out) })
            }
            _ => {
                let z = c.to_complex();
                Ok(Self::from_float_terms(
                    self.float_terms()
                        .into_iter()
                        .map(|t| FloatTerm { coeff: t.coeff * z, ..t })
                        .collect(),
                ))
            }
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let count = self.len() * other.len();
        if count > MAX_TERMS {
            return Err(Error::TermCap { count, cap: MAX_TERMS, context: "product".into() });
        }
        match (&self.repr, &other.repr) {
            (Repr::Exact(a), Repr::Exact(b)) => {
                let mut out = BTreeMap::new();
                for (ka, ca) in a {
                    for (kb, cb) in b {
                        let t = weyl_mul(
                            &WeylTerm { coeff: ca.clone(), theta: ka.theta, ell: ka.ell },
                            &WeylTerm { coeff: cb.clone(), theta: kb.theta, ell: kb.ell },
                        )?;
                        add_into(&mut out, WordKey::new(t.theta, t.ell), &t.coeff)?;
                    }
                }
                Ok(Self { repr: Repr::Exact(out) })
            }
            _ => {
                let (a, b) = (self.float_terms(), other.float_terms());
                let mut v = Vec::with_capacity(count);
                for x in &a {
                    for y in &b {
                        let phase = 0.5 * (y.ell as f64 * x.theta - x.ell as f64 * y.theta);
                        v.push(FloatTerm {
                            coeff: x.coeff * y.coeff * Complex64::from_polar(1.0, phase),
                            theta: x.theta + y.theta,
                            ell: x.ell + y.ell,
                        });
                    }
                }
                Ok(Self::from_float_terms(v))
            }
        }
    }

    pub fn adjoint(&self) -> Result<Self> {
        match &self.repr {
            Repr::Exact(m) => {
                let mut out = BTreeMap::new();
                for (k, c) in m {
                    let t = weyl_adjoint(&WeylTerm { coeff: c.clone(), theta: k.theta, ell: k.ell })?;
                    out.insert(WordKey::new(t.theta, t.ell), t.coeff);
                }
                Ok(Self { repr: Repr::Exact(out) })
            }
            Repr::Float(v) => Ok(Self::from_float_terms(
                v.iter()
                    .map(|t| FloatTerm { coeff: t.coeff.conj(), theta: -t.theta, ell: -t.ell })
                    .collect(),
            )),
        }
    }

    /// `ab − ba`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    /// Non-negative integer power.
    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = Self::identity();
        for _ in 0..n {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    /// Exact equality of canonical forms. Float-mode operands need
    /// [`AlgebraElement::approx_eq`].
    pub fn equals(&self, other: &Self) -> Result<bool> {
        match (self.exact_map(), other.exact_map()) {
            (Some(a), Some(b)) => Ok(a == b),
            _ => Err(Error::Usage(
                "exact comparison involving a float-mode element; use approx_eq with a tolerance".into(),
            )),
        }
    }

    /// Tolerance comparison of coefficients, valid in either mode.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let diff = self.to_float().try_sub(&other.to_float()).expect("float arithmetic is total");
        diff.float_terms().iter().all(|t| t.coeff.norm() <= tol)
    }

    /// Largest coefficient magnitude.
    pub fn max_abs_coeff(&self) -> f64 {
        self.float_terms().iter().map(|t| t.coeff.norm()).fold(0.0, f64::max)
    }
}

fn add_into(map: &mut BTreeMap<WordKey, Cyclotomic>, key: WordKey, c: &Cyclotomic) -> Result<()> {
    match map.get(&key) {
        Some(prev) => {
            let s = prev.add(c)?;
            if s.is_zero() {
                map.remove(&key);
            } else {
                map.insert(key, s);
            }
        }
        None => {
            if !c.is_zero() {
                map.insert(key, c.clone());
            }
        }
    }
    Ok(())
}

fn canonical_float(terms: Vec<FloatTerm>) -> Vec<FloatTerm> {
    let mut v: Vec<FloatTerm> = terms
        .into_iter()
        .map(|t| {
            let (theta, sign) = float_wrap(t.theta, t.ell);
            FloatTerm { coeff: t.coeff * sign, theta, ell: t.ell }
        })
        .collect();
    v.sort_by(|a, b| a.ell.cmp(&b.ell).then(a.theta.total_cmp(&b.theta)));
    let mut merged: Vec<FloatTerm> = Vec::with_capacity(v.len());
    for t in v {
        match merged.last_mut() {
            Some(last) if last.ell == t.ell && (t.theta - last.theta).abs() <= FLOAT_ANGLE_EPS => {
                last.coeff += t.coeff;
            }
            _ => merged.push(t),
        }
    }
    let max = merged.iter().map(|t| t.coeff.norm()).fold(0.0, f64::max);
    merged.retain(|t| t.coeff.norm() > FLOAT_ZERO_REL * max && t.coeff.norm() > 0.0);
    merged
}

impl PartialEq for AlgebraElement {
    /// Exact equality; float-mode elements compare unequal to everything.
    fn eq(&self, other: &Self) -> bool {
        self.equals(other).unwrap_or(false)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = match &self.repr {
            Repr::Exact(m) => m
                .iter()
                .map(|(k, c)| format!("({c})·W({}π,{})", k.theta, k.ell))
                .collect(),
            Repr::Float(v) => v
                .iter()
                .map(|t| {
                    format!("({:.6}{:+.6}i)·W({:.6},{})", t.coeff.re, t.coeff.im, t.theta, t.ell)
                })
                .collect(),
        };
        write!(f, "{}", parts.join(" + "))
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $call:ident) => {
        impl ops::$tr<&AlgebraElement> for &AlgebraElement {
            type Output = AlgebraElement;

            /// Panics if exact arithmetic overflows; use the `try_` form to
            /// handle that case.
            fn $method(self, rhs: &AlgebraElement) -> AlgebraElement {
                self.$call(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl ops::$tr<AlgebraElement> for AlgebraElement {
            type Output = AlgebraElement;

            fn $method(self, rhs: AlgebraElement) -> AlgebraElement {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl ops::Neg for &AlgebraElement {
    type Output = AlgebraElement;

    fn neg(self) -> AlgebraElement {
        AlgebraElement::neg(self)
    }
}

impl ops::Neg for AlgebraElement {
    type Output = AlgebraElement;

    fn neg(self) -> AlgebraElement {
        AlgebraElement::neg(&self)
    }
}

impl ops::Mul<&AlgebraElement> for &Scalar {
    type Output = AlgebraElement;

    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        rhs.try_scale(self).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl ops::Mul<AlgebraElement> for Scalar {
    type Output = AlgebraElement;

    fn mul(self, rhs: AlgebraElement) -> AlgebraElement {
        &self * &rhs
    }
}

// ---- JSON -----------------------------------------------------------------

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(untagged)]
enum NumJson {
    Exact(String),
    Float(f64),
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
struct ComponentJson {
    mag: NumJson,
    phase: NumJson,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(untagged)]
enum CoeffJson {
    Single(ComponentJson),
    Sum(Vec<ComponentJson>),
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
struct TermJson {
    theta: NumJson,
    ell: i64,
    coeff: CoeffJson,
}

fn rational_string(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl AlgebraElement {
    /// Serialize as a JSON list of `{theta, ell, coeff}` entries; `theta`
    /// and phases are in units of π.
    pub fn to_json_value(&self) -> serde_json::Value {
        let terms: Vec<TermJson> = match &self.repr {
            Repr::Exact(m) => m
                .iter()
                .map(|(k, c)| {
                    let comps: Vec<ComponentJson> = c
                        .components()
                        .iter()
                        .map(|(mag, ph)| ComponentJson {
                            mag: NumJson::Exact(rational_string(mag)),
                            phase: NumJson::Exact(rational_string(ph)),
                        })
                        .collect();
                    let coeff = if comps.len() == 1 {
                        CoeffJson::Single(comps.into_iter().next().expect("one component"))
                    } else {
                        CoeffJson::Sum(comps)
                    };
                    TermJson { theta: NumJson::Exact(k.theta.to_string()), ell: k.ell, coeff }
                })
                .collect(),
            Repr::Float(v) => v
                .iter()
                .map(|t| TermJson {
                    theta: NumJson::Float(t.theta / PI),
                    ell: t.ell,
                    coeff: CoeffJson::Single(ComponentJson {
                        mag: NumJson::Float(t.coeff.norm()),
                        phase: NumJson::Float(t.coeff.arg().rem_euclid(TAU) / PI),
                    }),
                })
                .collect(),
        };
        serde_json::to_value(terms).expect("terms serialize")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("value serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(s)
            .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
        Self::from_json_value(&v)
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        let terms: Vec<TermJson> = serde_json::from_value(v.clone())
            .map_err(|e| Error::Parse(format!("algebra element: {e}")))?;
        let mut exact = Self::zero();
        let mut floats = Vec::new();
        for (idx, t) in terms.iter().enumerate() {
            let comps = match &t.coeff {
                CoeffJson::Single(c) => std::slice::from_ref(c),
                CoeffJson::Sum(v) => v.as_slice(),
            };
            let all_exact = matches!(t.theta, NumJson::Exact(_))
                && comps
                    .iter()
                    .all(|c| matches!((&c.mag, &c.phase), (NumJson::Exact(_), NumJson::Exact(_))));
            let ctx = |e: Error| Error::Parse(format!("term {idx}: {e}"));
            if all_exact {
                let NumJson::Exact(th) = &t.theta else { unreachable!() };
                let theta: RationalAngle = th.parse().map_err(ctx)?;
                let mut coeff = Cyclotomic::zero();
                for c in comps {
                    let (NumJson::Exact(m), NumJson::Exact(p)) = (&c.mag, &c.phase) else {
                        unreachable!()
                    };
                    let mag = parse_rational(m).map_err(ctx)?;
                    let phase = parse_rational(p).map_err(ctx)?;
                    let part = Cyclotomic::phase_pi(phase)?.scale(&mag)?;
                    coeff = coeff.add(&part)?;
                }
                exact = exact.try_add(&Self::from_term(WeylTerm { coeff, theta, ell: t.ell }))?;
            } else {
                let num = |n: &NumJson| -> Result<f64> {
                    match n {
                        NumJson::Float(x) => Ok(*x),
                        NumJson::Exact(s) => {
                            let q = parse_rational(s)?;
                            Ok(*q.numer() as f64 / *q.denom() as f64)
                        }
                    }
                };
                let theta = num(&t.theta).map_err(ctx)? * PI;
                let mut coeff = Complex64::zero();
                for c in comps {
                    coeff += Complex64::from_polar(num(&c.mag).map_err(ctx)?, num(&c.phase).map_err(ctx)? * PI);
                }
                floats.push(FloatTerm { coeff, theta, ell: t.ell });
            }
        }
        if floats.is_empty() {
            Ok(exact)
        } else {
            floats.extend(exact.float_terms());
            Ok(Self::from_float_terms(floats))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(p: i64, q: i64, ell: i64) -> AlgebraElement {
        AlgebraElement::word(RationalAngle::new(p, q), ell)
    }

    #[test]
    fn identity_is_neutral() {
        let a = w(1, 3, 2);
        assert_eq!(&AlgebraElement::identity() * &a, a);
        assert_eq!(&a * &AlgebraElement::identity(), a);
    }

    #[test]
    fn a3_squares_to_identity() {
        let a3 = w(1, 1, 0);
        assert_eq!(&a3 * &a3, AlgebraElement::identity());
    }

    #[test]
    fn w_pi_1_times_w_pi_minus_1() {
        // phase e^{i(−π−π)/2} = −1, angle 2π wraps with ℓ = 0
        let p = &w(1, 1, 1) * &w(1, 1, -1);
        assert_eq!(p, AlgebraElement::identity().neg());
    }

    #[test]
    fn full_turn_is_identity() {
        for k in -3..=3 {
            assert_eq!(w(2 * k, 1, 0), AlgebraElement::identity());
        }
    }

    #[test]
    fn weyl_relation() {
        // U(θ)V = e^{iθ} V U(θ)
        let theta = RationalAngle::new(2, 5);
        let u = AlgebraElement::u(theta);
        let v = AlgebraElement::v_pow(1);
        let lhs = &u * &v;
        let rhs = Scalar::phase_pi(Rational::new(2, 5)).unwrap() * (&v * &u);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn adjoint_wrap_sign() {
        // W(π,1)* = W(−π,−1) = (−1)^{−1}·W(π,−1)
        let a = w(1, 1, 1).adjoint().unwrap();
        assert_eq!(a, w(1, 1, -1).neg());
        assert_eq!(w(1, 1, 0).adjoint().unwrap(), w(1, 1, 0));
    }

    #[test]
    fn unitary_words() {
        let a = w(3, 7, -3);
        assert_eq!(&a * &a.adjoint().unwrap(), AlgebraElement::identity());
    }

    #[test]
    fn cancellation_to_zero() {
        let a = w(1, 2, 1).try_add(&w(0, 1, 3)).unwrap();
        assert!((a.clone() + a.neg()).is_zero());
    }

    #[test]
    fn float_mode_tracks_exact() {
        let a = w(1, 3, 1).try_add(&w(1, 2, -2)).unwrap();
        let b = w(5, 4, 1);
        let exact = &a * &b;
        let float = &a.to_float() * &b;
        assert!(float.is_float());
        assert!(exact.approx_eq(&float, 1e-12));
        assert!(exact.equals(&float).is_err());
    }

    #[test]
    fn float_words_merge_across_wrap() {
        let a = AlgebraElement::float_word(TAU + 0.3, 1, Complex64::new(1.0, 0.0));
        let b = AlgebraElement::float_word(0.3, 1, Complex64::new(1.0, 0.0));
        assert!(a.try_add(&b).unwrap().is_zero());
    }

    #[test]
    fn json_roundtrip_exact() {
        let a = AlgebraElement::from_terms([
            (Scalar::rational(1, 2), RationalAngle::zero(), -1),
            (Scalar::i().neg(), RationalAngle::pi(), -1),
            (
                Scalar::rational(1, 3).add(&Scalar::phase_pi(Rational::new(1, 3)).unwrap()).unwrap(),
                RationalAngle::new(1, 6),
                4,
            ),
        ])
        .unwrap();
        let back = AlgebraElement::from_json(&a.to_json()).unwrap();
        assert_eq!(a, back);
    }

    #[test]
    fn json_parse_errors_are_located() {
        let err = AlgebraElement::from_json("[{\"theta\": \"a/b\", \"ell\": 0, \"coeff\": {\"mag\": \"1\", \"phase\": \"0\"}}]")
            .unwrap_err();
        assert!(err.to_string().contains("term 0"), "{err}");
        assert!(AlgebraElement::from_json("[{").is_err());
    }
}
