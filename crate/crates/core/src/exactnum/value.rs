//! Exact real numbers in `ℚ`, `ℚ(√d)` and biquadratic fields `ℚ(√d₁, √d₂)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::radical::{mul_radicands, squarefree_decompose, DEFAULT_TRIAL_BOUND};
use super::Rational;
use crate::error::{Error, Result};

/// An exact real number `Σ cᵣ·√r` over square-free radicands `r`.
///
/// The radicand `1` carries the rational part. Coefficients are never zero,
/// so two values are equal exactly when their term maps are equal. At most two
/// independent square roots may occur, which keeps every value inside `ℚ`,
/// a quadratic field `ℚ(√d)`, or a biquadratic compositum.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactValue {
    terms: BTreeMap<u64, Rational>,
}

/// The smallest field a value (or a set of values) lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Quadratic(u64),
    /// Generated by the two smallest of the three non-trivial radicands.
    Biquadratic(u64, u64),
}

/// `p + q·√d`, with `d` absent for rational values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticParts {
    pub p: Rational,
    pub q: Rational,
    pub d: Option<u64>,
}

/// Coordinates over the basis `{1, √d₁, √d₂, √(d₁d₂)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositeValue {
    pub d1: u64,
    pub d2: u64,
    pub coords: [Rational; 4],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
    Invert,
}

/// Radicands reachable from a set of generators, each labelled with the
/// subset of generators it is built from.
struct Span {
    elems: Vec<(u64, u8)>,
}

impl Span {
    fn of(radicands: impl IntoIterator<Item = u64>) -> Result<Span> {
        let mut elems = vec![(1u64, 0u8)];
        let mut gens = 0;
        for r in radicands {
            if elems.iter().any(|&(e, _)| e == r) {
                continue;
            }
            if gens == 2 {
                return Err(Error::TooManyRadicals);
            }
            let bit = 1u8 << gens;
            gens += 1;
            let fresh = elems
                .iter()
                .map(|&(e, b)| mul_radicands(e, r).map(|(_, m)| (m, b | bit)))
                .collect::<Result<Vec<_>>>()?;
            elems.extend(fresh);
        }
        Ok(Span { elems })
    }

    fn label(&self, r: u64) -> u8 {
        self.elems
            .iter()
            .find(|&&(e, _)| e == r)
            .map(|&(_, b)| b)
            .expect("radicand outside span")
    }

    fn field(&self) -> Field {
        let mut nontrivial: Vec<u64> = self
            .elems
            .iter()
            .map(|&(e, _)| e)
            .filter(|&e| e != 1)
            .collect();
        nontrivial.sort_unstable();
        match nontrivial.as_slice() {
            [] => Field::Rational,
            [d] => Field::Quadratic(*d),
            [d1, d2, _] => Field::Biquadratic(*d1, *d2),
            _ => unreachable!("span has 1, 2 or 4 elements"),
        }
    }

    /// Number of generators.
    fn rank(&self) -> u32 {
        self.elems.len().trailing_zeros()
    }
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

/// Rational interval `[lo, lo + 2^-bits]` containing `√r`.
fn sqrt_enclosure(r: u64, bits: u32) -> (Rational, Rational) {
    if r == 1 {
        return (Rational::one(), Rational::one());
    }
    let scale = pow2(bits);
    let lo_num = (BigInt::from(r) << (2 * bits)).sqrt();
    let lo = Rational::new(lo_num.clone(), scale.clone());
    let hi = Rational::new(lo_num + 1, scale);
    (lo, hi)
}

impl ExactValue {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(1, r);
        }
        ExactValue { terms }
    }

    fn from_terms(raw: impl IntoIterator<Item = (u64, Rational)>) -> Self {
        let mut terms: BTreeMap<u64, Rational> = BTreeMap::new();
        for (r, c) in raw {
            *terms.entry(r).or_insert_with(Rational::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        ExactValue { terms }
    }

    /// `√n` for a non-negative integer, with `n` reduced to its square-free part.
    pub fn sqrt_of(n: u64) -> Result<Self> {
        Self::sqrt_with_bound(n, DEFAULT_TRIAL_BOUND)
    }

    pub fn sqrt_with_bound(n: u64, bound: u64) -> Result<Self> {
        let (s, d) = squarefree_decompose(n, bound)?;
        Ok(Self::from_terms([(d, Rational::from_integer(s.into()))]))
    }

    /// `p + q·√d`; `d` need not be square-free.
    pub fn quadratic(p: Rational, q: Rational, d: u64) -> Result<Self> {
        let root = Self::sqrt_of(d)?;
        Ok(Self::from_rational(p).add_unchecked(&root.scale(&q)))
    }

    /// Coefficients keyed by radicand; the key `1` is the rational part.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.terms.iter().map(|(&r, c)| (r, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn rational_part(&self) -> Rational {
        self.terms.get(&1).cloned().unwrap_or_else(Rational::zero)
    }

    /// The value as a rational number when it has no irrational terms.
    pub fn to_rational(&self) -> Option<Rational> {
        self.terms
            .keys()
            .all(|&r| r == 1)
            .then(|| self.rational_part())
    }

    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|&r| r == 1)
    }

    /// Irrational terms only, keyed by radicand.
    pub fn irrational_terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.terms().filter(|&(r, _)| r != 1)
    }

    pub fn field(&self) -> Field {
        Span::of(self.terms.keys().copied())
            .expect("values are kept within a biquadratic field")
            .field()
    }

    /// Smallest field containing every value in `values`.
    pub fn common_field<'a>(values: impl IntoIterator<Item = &'a ExactValue>) -> Result<Field> {
        Ok(Span::of(values.into_iter().flat_map(|v| v.terms.keys().copied()))?.field())
    }

    pub fn quadratic_parts(&self) -> Option<QuadraticParts> {
        match self.field() {
            Field::Rational => Some(QuadraticParts {
                p: self.rational_part(),
                q: Rational::zero(),
                d: None,
            }),
            Field::Quadratic(d) => Some(QuadraticParts {
                p: self.rational_part(),
                q: self.terms[&d].clone(),
                d: Some(d),
            }),
            Field::Biquadratic(..) => None,
        }
    }

    /// Coordinates over `{1, √d₁, √d₂, √(d₁d₂)}` for values that need two radicals.
    pub fn as_composite(&self) -> Option<CompositeValue> {
        let Field::Biquadratic(d1, d2) = self.field() else {
            return None;
        };
        let (g, d3) = mul_radicands(d1, d2).ok()?;
        let coef = |r: u64| self.terms.get(&r).cloned().unwrap_or_else(Rational::zero);
        // √(d₁d₂) = g·√d₃
        let c3 = coef(d3) / Rational::from_integer(g.into());
        Some(CompositeValue {
            d1,
            d2,
            coords: [coef(1), coef(d1), coef(d2), c3],
        })
    }

    pub fn neg(&self) -> Self {
        ExactValue {
            terms: self.terms.iter().map(|(&r, c)| (r, -c)).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(&r, c)| (r, c * k)))
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&Rational::from_integer(k.into()))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(&r, c)| (r, c.clone())),
        )
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Span::of(self.terms.keys().chain(other.terms.keys()).copied())?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Span::of(self.terms.keys().chain(other.terms.keys()).copied())?;
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (&r1, c1) in &self.terms {
            for (&r2, c2) in &other.terms {
                let (g, r) = mul_radicands(r1, r2)?;
                raw.push((r, c1 * c2 * Rational::from_integer(g.into())));
            }
        }
        Ok(Self::from_terms(raw))
    }

    /// Image under the field automorphism selected by `mask` (a subset of
    /// the span's generators whose square roots change sign).
    fn conjugate(&self, span: &Span, mask: u8) -> Self {
        ExactValue {
            terms: self
                .terms
                .iter()
                .map(|(&r, c)| {
                    if (span.label(r) & mask).count_ones() % 2 == 1 {
                        (r, -c)
                    } else {
                        (r, c.clone())
                    }
                })
                .collect(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let span = Span::of(self.terms.keys().copied())?;
        let mut cofactor = Self::one();
        for mask in 1..(1u8 << span.rank()) {
            cofactor = cofactor.mul(&self.conjugate(&span, mask))?;
        }
        let norm = self
            .mul(&cofactor)?
            .to_rational()
            .expect("product over all conjugates is rational");
        Ok(cofactor.scale(&norm.recip()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inv()?)
    }

    pub fn square(&self) -> Self {
        self.mul(self).expect("square stays in the same field")
    }

    /// Rational interval containing the value, each radical enclosed to within `2^-bits`.
    pub fn enclosure(&self, bits: u32) -> (Rational, Rational) {
        let mut lo = Rational::zero();
        let mut hi = Rational::zero();
        for (&r, c) in &self.terms {
            let (s_lo, s_hi) = sqrt_enclosure(r, bits);
            if c.is_positive() {
                lo += c * s_lo;
                hi += c * s_hi;
            } else {
                lo += c * s_hi;
                hi += c * s_lo;
            }
        }
        (lo, hi)
    }

    /// Sign of the value as `-1`, `0` or `1`.
    ///
    /// Zero is read off the canonical terms; otherwise the enclosure is
    /// refined until it excludes zero.
    pub fn sign(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        if let Some(r) = self.to_rational() {
            return if r.is_positive() { 1 } else { -1 };
        }
        let mut bits = 32;
        loop {
            let (lo, hi) = self.enclosure(bits);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            bits *= 2;
        }
    }

    /// A rational lower bound that is strictly positive whenever the value is.
    pub fn lower_bound(&self) -> Rational {
        let mut bits = 16;
        loop {
            let (lo, _) = self.enclosure(bits);
            if lo.is_positive() || self.sign() <= 0 {
                return lo;
            }
            bits *= 2;
        }
    }

    pub fn upper_bound(&self) -> Rational {
        self.enclosure(16).1
    }

    pub fn cmp_value(&self, other: &Self) -> Result<std::cmp::Ordering> {
        Ok(self.sub(other)?.sign().cmp(&0))
    }

    /// Approximation for diagnostics only; never used in decisions.
    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.enclosure(64);
        let mid = (lo + hi) / Rational::from_integer(2.into());
        let n: f64 = mid.numer().to_string().parse().unwrap_or(f64::NAN);
        let d: f64 = mid.denom().to_string().parse().unwrap_or(f64::NAN);
        n / d
    }
}

/// Applies `op` to `x` (and `y` for binary operations).
pub fn arith(op: ArithOp, x: &ExactValue, y: Option<&ExactValue>) -> Result<ExactValue> {
    let rhs = || y.ok_or_else(|| Error::precondition("binary operation needs two operands"));
    match op {
        ArithOp::Add => x.add(rhs()?),
        ArithOp::Sub => x.sub(rhs()?),
        ArithOp::Mul => x.mul(rhs()?),
        ArithOp::Neg => Ok(x.neg()),
        ArithOp::Invert => x.inv(),
    }
}

impl CompositeValue {
    pub fn new(d1: u64, d2: u64, coords: [Rational; 4]) -> Result<Self> {
        use super::radical::is_squarefree;
        if d1 == d2 || !is_squarefree(d1) || !is_squarefree(d2) {
            return Err(Error::precondition(format!(
                "composite basis needs distinct square-free radicands ≥ 2, got {d1} and {d2}"
            )));
        }
        let (d1, d2, coords) = if d1 < d2 {
            (d1, d2, coords)
        } else {
            let [a, b, c, d] = coords;
            (d2, d1, [a, c, b, d])
        };
        Ok(CompositeValue { d1, d2, coords })
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn to_value(&self) -> ExactValue {
        let (g, d3) = mul_radicands(self.d1, self.d2).expect("validated radicands");
        let [c0, c1, c2, c3] = self.coords.clone();
        ExactValue::from_terms([
            (1, c0),
            (self.d1, c1),
            (self.d2, c2),
            (d3, c3 * Rational::from_integer(g.into())),
        ])
    }
}

impl From<CompositeValue> for ExactValue {
    fn from(v: CompositeValue) -> Self {
        v.to_value()
    }
}

impl From<Rational> for ExactValue {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for ExactValue {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for ExactValue {
    /// Renders in the textual grammar accepted by [`ExactValue::from_str`],
    /// e.g. `-1/2+3/4*sqrt(5)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&r, c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if neg {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            if r == 1 {
                f.write_str(&fmt_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "sqrt({r})")?;
            } else {
                write!(f, "{}*sqrt({r})", fmt_rational(&mag))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactValue({self})")
    }
}
