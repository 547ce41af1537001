//! Representation counts of integers by positive-definite forms, and of
//! exact real values by forms with quadratic-irrational coefficients.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::exactnum::radical::exact_sqrt_i128;
use crate::exactnum::{ExactValue, Rational};
use crate::qform::{Form, UnimodularMap};

/// What is being represented.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepTarget {
    Integer(u64),
    Real(ExactValue),
}

/// All solutions of `Q(x, y) = target`, sorted by `(y, x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepSet {
    pub target: RepTarget,
    pub solutions: Vec<(i64, i64)>,
    /// Orbits under proper automorphisms; integer targets only.
    pub r_plus: Option<u64>,
    /// Orbits under all automorphisms; integer targets only.
    pub r_full: Option<u64>,
    pub primitive_count: u64,
}

impl RepSet {
    /// `R`, the raw number of solutions.
    pub fn count(&self) -> u64 {
        self.solutions.len() as u64
    }
}

fn gcd_pair(x: i64, y: i64) -> u64 {
    x.unsigned_abs().gcd(&y.unsigned_abs())
}

fn primitive_count(sols: &[(i64, i64)]) -> u64 {
    sols.iter().filter(|&&(x, y)| gcd_pair(x, y) == 1).count() as u64
}

/// Calls `visit(x, y)` for every solution of `F(x, y) = n`, in `(y, x)` order.
///
/// For each `y` with `y² ≤ 4an/|Δ|` the quadratic in `x` has roots
/// `(−by ± s) / 2a` with `s² = Δy² + 4an`.
fn for_each_solution(form: &Form, n: u64, mut visit: impl FnMut(i64, i64)) -> Result<()> {
    form.require_definite()?;
    if n == 0 {
        visit(0, 0);
        return Ok(());
    }
    let a = form.a as i128;
    let b = form.b as i128;
    let delta = form.delta();
    let four_an = (4 * a)
        .checked_mul(n as i128)
        .ok_or(Error::Overflow("representation bound"))?;
    let y_max = (four_an / -delta).sqrt();
    for y in -y_max..=y_max {
        let disc = delta * y * y + four_an;
        let Some(s) = exact_sqrt_i128(disc) else {
            continue;
        };
        let lo = -b * y - s;
        if lo % (2 * a) == 0 {
            visit((lo / (2 * a)) as i64, y as i64);
        }
        if s != 0 {
            let hi = -b * y + s;
            if hi % (2 * a) == 0 {
                visit((hi / (2 * a)) as i64, y as i64);
            }
        }
    }
    Ok(())
}

/// Integer solutions of `F(x, y) = n`, sorted by `(y, x)`.
pub fn solutions(form: &Form, n: u64) -> Result<Vec<(i64, i64)>> {
    let mut out = Vec::new();
    for_each_solution(form, n, |x, y| out.push((x, y)))?;
    Ok(out)
}

/// The full automorphism group: proper maps plus, for ambiguous forms, their
/// products with an improper automorphism.
fn full_automorphisms(form: &Form) -> Result<Vec<UnimodularMap>> {
    let mut group = form.proper_automorphisms()?;
    if let Some(j) = form.improper_automorphism()? {
        let improper = group
            .iter()
            .map(|a| a.compose(&j))
            .collect::<Result<Vec<_>>>()?;
        group.extend(improper);
    }
    Ok(group)
}

fn count_orbits(sols: &[(i64, i64)], group: &[UnimodularMap]) -> u64 {
    let mut seen: BTreeSet<(i64, i64)> = BTreeSet::new();
    let mut orbits = 0;
    for &(x, y) in sols {
        if seen.contains(&(x, y)) {
            continue;
        }
        orbits += 1;
        for g in group {
            let (u, v) = g.apply(x, y);
            seen.insert((u as i64, v as i64));
        }
    }
    orbits
}

fn integer_repset(form: &Form, n: u64, sols: Vec<(i64, i64)>) -> Result<RepSet> {
    let (r_plus, r_full) = if n == 0 {
        (1, 1)
    } else {
        let aut = form.discriminant()?.proper_automorphism_count() as u64;
        let raw = sols.len() as u64;
        assert_eq!(raw % aut, 0, "trivial stabilizers force R ≡ 0 mod |Aut⁺|");
        (raw / aut, count_orbits(&sols, &full_automorphisms(form)?))
    };
    Ok(RepSet {
        target: RepTarget::Integer(n),
        primitive_count: primitive_count(&sols),
        solutions: sols,
        r_plus: Some(r_plus),
        r_full: Some(r_full),
    })
}

/// Every integer pair with `F(x, y) = n`, with the three counting functions.
pub fn representations(form: &Form, n: u64) -> Result<RepSet> {
    let sols = solutions(form, n)?;
    integer_repset(form, n, sols)
}

/// `R_F(n)`: number of pairs with `F(x, y) = n`.
pub fn count_r(form: &Form, n: u64) -> Result<u64> {
    let mut k = 0;
    for_each_solution(form, n, |_, _| k += 1)?;
    Ok(k)
}

/// `r⁺_F(n)`: representations up to proper automorphism.
pub fn count_r_plus(form: &Form, n: u64) -> Result<u64> {
    if n == 0 {
        form.require_definite()?;
        return Ok(1);
    }
    let raw = count_r(form, n)?;
    Ok(raw / form.discriminant()?.proper_automorphism_count() as u64)
}

/// `r_F(n)`: representations up to any automorphism, as genuine orbits.
pub fn count_r_full(form: &Form, n: u64) -> Result<u64> {
    Ok(representations(form, n)?.r_full.expect("integer target"))
}

/// Representations with `gcd(x, y) = 1`, where `gcd(x, 0) = |x|`.
pub fn primitive_representations(form: &Form, n: u64) -> Result<RepSet> {
    let sols = solutions(form, n)?
        .into_iter()
        .filter(|&(x, y)| gcd_pair(x, y) == 1)
        .collect();
    integer_repset(form, n, sols)
}

/// Lattice points `(x, y)` with `x, y ≥ 1` on `m·x² + n·y² = level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadrantCount {
    pub count: u64,
    /// Sorted by `(y, x)`.
    pub solutions: Vec<(u64, u64)>,
}

/// Points strictly inside the first quadrant on `m·x² + n·y² = level`.
///
/// Points on the axes are excluded: they correspond to eigenfunctions that
/// vanish identically.
pub fn first_quadrant_count(m: u64, n: u64, level: u64) -> Result<QuadrantCount> {
    if m == 0 || n == 0 {
        return Err(Error::precondition("coefficients must be positive"));
    }
    let (m, n, level) = (m as u128, n as u128, level as u128);
    let mut solutions = Vec::new();
    let mut y: u128 = 1;
    while n * y * y < level {
        let rest = level - n * y * y;
        if rest % m == 0 {
            let x2 = rest / m;
            let x = x2.sqrt();
            if x * x == x2 {
                solutions.push((x as u64, y as u64));
            }
        }
        y += 1;
    }
    Ok(QuadrantCount {
        count: solutions.len() as u64,
        solutions,
    })
}

/// Upper bound on `√x` for a non-negative rational, within `2^-bits`.
fn sqrt_upper(x: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let num = x.numer() * x.denom() * &scale * &scale;
    Rational::new(num.sqrt() + 1, x.denom() * scale)
}

/// A rational `μ > 0` with `x² + bxy + cy² ≥ μ(x² + y²)` for all real `x, y`.
///
/// This lower-bounds the smallest eigenvalue `((1 + c) − √((1 − c)² + b²)) / 2`
/// of the Gram matrix, rounding every step outward.
pub fn gram_lower_bound(b: &ExactValue, c: &ExactValue) -> Result<Rational> {
    require_irrational_definite(b, c)?;
    let half = Rational::new(1.into(), 2.into());
    let mut bits = 24;
    loop {
        let (b_lo, b_hi) = b.enclosure(bits);
        let (c_lo, c_hi) = c.enclosure(bits);
        let b_abs = b_lo.abs().max(b_hi.abs());
        let one = Rational::one();
        let dev = (&one - &c_lo).abs().max((&one - &c_hi).abs());
        let radius = sqrt_upper(&(&dev * &dev + &b_abs * &b_abs), bits);
        let mu = (one + c_lo - radius) * &half;
        if mu.is_positive() {
            return Ok(mu);
        }
        bits *= 2;
    }
}

/// `x² + b·xy + c·y²` evaluated exactly.
pub fn eval_irrational(b: &ExactValue, c: &ExactValue, x: i64, y: i64) -> Result<ExactValue> {
    let xy = x as i128 * y as i128;
    let yy = y as i128 * y as i128;
    let lin = b
        .scale(&Rational::from_integer(xy.into()))
        .add(&c.scale(&Rational::from_integer(yy.into())))?;
    lin.add(&ExactValue::from_integer(x as i128 * x as i128))
}

/// Checks `b² − 4c < 0`.
pub(crate) fn require_irrational_definite(b: &ExactValue, c: &ExactValue) -> Result<()> {
    let disc = b.mul(b)?.sub(&c.scale_int(4))?;
    if disc.sign() >= 0 {
        return Err(Error::precondition(format!(
            "x² + ({b})xy + ({c})y² is not positive definite"
        )));
    }
    Ok(())
}

/// Largest `x² + y²` that can reach `f̃(x, y) = z`.
pub(crate) fn irrational_radius_sq(b: &ExactValue, c: &ExactValue, z: &ExactValue) -> Result<u64> {
    let mu = gram_lower_bound(b, c)?;
    let z_hi = z.upper_bound();
    if !z_hi.is_positive() {
        return Ok(0);
    }
    Ok((z_hi / mu)
        .floor()
        .to_integer()
        .to_u64()
        .unwrap_or(u64::MAX))
}

/// Every integer pair with `x² + b·xy + c·y² = z`, found by an exact scan
/// of the disc that the Gram bound guarantees contains all of them.
///
/// `max_radius` caps the scan: if the disc is wider, the call fails with
/// [`Error::BoxExceeded`] instead of returning a possibly incomplete set.
pub fn representations_irrational(
    b: &ExactValue,
    c: &ExactValue,
    z: &ExactValue,
    max_radius: u64,
) -> Result<RepSet> {
    require_irrational_definite(b, c)?;
    let coeff_field = ExactValue::common_field([b, c])?;
    if ExactValue::common_field([b, c, z])? != coeff_field {
        return Err(Error::precondition(format!(
            "target {z} is outside the field of the coefficients"
        )));
    }
    let mut solutions = Vec::new();
    match z.sign() {
        -1 => {}
        0 => solutions.push((0, 0)),
        _ => {
            let r2 = irrational_radius_sq(b, c, z)?;
            let radius = r2.sqrt();
            if radius > max_radius {
                return Err(Error::BoxExceeded {
                    needed: radius,
                    limit: max_radius,
                });
            }
            let radius = radius as i64;
            for y in -radius..=radius {
                let span = (r2 - (y * y) as u64).sqrt() as i64;
                for x in -span..=span {
                    if eval_irrational(b, c, x, y)? == *z {
                        solutions.push((x, y));
                    }
                }
            }
        }
    }
    Ok(RepSet {
        target: RepTarget::Real(z.clone()),
        primitive_count: primitive_count(&solutions),
        solutions,
        r_plus: None,
        r_full: None,
    })
}

impl RepSet {
    pub fn integer_target(&self) -> Option<u64> {
        match self.target {
            RepTarget::Integer(n) => Some(n),
            RepTarget::Real(_) => None,
        }
    }
}
