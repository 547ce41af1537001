//! Exact arithmetic over `ℚ` and real quadratic extensions.
//!
//! Every rationality decision in the classifiers goes through this module, so
//! nothing here touches floating point. Signs of irrational values are settled
//! by refining rational enclosures of the square roots involved.

mod parse;
pub mod radical;
mod value;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub use parse::parse_rational;
pub use value::{arith, ArithOp, CompositeValue, ExactValue, Field, QuadraticParts};

use crate::error::{Error, Result};

/// Arbitrary-precision rational in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Returns the value as a rational number when its irrational part vanishes.
pub fn is_rational(x: &ExactValue) -> Option<Rational> {
    x.to_rational()
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// The non-negative rational square root of `x`, if it exists.
pub fn rational_square_root(x: &Rational) -> Option<Rational> {
    // Lowest terms: x is a square iff numerator and denominator both are.
    let n = exact_sqrt(x.numer())?;
    let d = exact_sqrt(x.denom())?;
    Some(Rational::new(n, d))
}

/// Outcome of testing `{1, b, c}` for `ℚ`-linear dependence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DependenceReport {
    /// `c = alpha·b + beta`.
    Dependent {
        alpha: Rational,
        beta: Rational,
    },
    Independent,
}

/// Decides whether `c = α·b + β` for rationals `α`, `β`.
///
/// Both values must be irrational. Distinct square-free radicands are linearly
/// independent over `ℚ`, so the relation holds exactly when the irrational
/// parts of `b` and `c` are proportional.
pub fn linear_dependence(b: &ExactValue, c: &ExactValue) -> Result<DependenceReport> {
    if b.is_rational() {
        return Err(Error::precondition(format!("b = {b} is rational")));
    }
    if c.is_rational() {
        return Err(Error::precondition(format!("c = {c} is rational")));
    }
    let b_irr: Vec<_> = b.irrational_terms().collect();
    let c_irr: Vec<_> = c.irrational_terms().collect();
    if b_irr.len() != c_irr.len() || b_irr.iter().zip(&c_irr).any(|(x, y)| x.0 != y.0) {
        return Ok(DependenceReport::Independent);
    }
    let alpha = c_irr[0].1 / b_irr[0].1;
    let proportional = b_irr
        .iter()
        .zip(&c_irr)
        .all(|((_, cb), (_, cc))| (*cb * &alpha - *cc).is_zero());
    if !proportional {
        return Ok(DependenceReport::Independent);
    }
    let beta = c.rational_part() - &alpha * b.rational_part();
    Ok(DependenceReport::Dependent { alpha, beta })
}
