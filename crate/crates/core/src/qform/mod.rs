//! Integer binary quadratic forms `ax² + bxy + cy²`.
//!
//! Coefficients are stored as `i64`; every intermediate product is carried in
//! `i128` and narrowed with an explicit overflow check. Operations that need a
//! primitive positive-definite form say so and fail with
//! [`Error::Precondition`] otherwise.

mod compose;
mod reduce;

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::radical::{squarefree_decompose, DEFAULT_TRIAL_BOUND};

pub use compose::class_group;

/// `Q(x, y) = a·x² + b·x·y + c·y²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Form {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

/// `Δ = Δ₀·f²` with `Δ₀` fundamental and `f` the conductor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Discriminant {
    pub delta: i64,
    pub fundamental: i64,
    pub conductor: u64,
}

/// Integer change of variables `(x, y) ↦ (p·x + q·y, r·x + s·y)` with `ps − qr = ±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnimodularMap {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub s: i64,
}

pub(crate) fn narrow(v: i128, what: &'static str) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow(what))
}

impl UnimodularMap {
    pub const IDENTITY: UnimodularMap = UnimodularMap {
        p: 1,
        q: 0,
        r: 0,
        s: 1,
    };
    pub const NEG_IDENTITY: UnimodularMap = UnimodularMap {
        p: -1,
        q: 0,
        r: 0,
        s: -1,
    };
    /// `(x, y) ↦ (x, −y)`.
    pub const FLIP: UnimodularMap = UnimodularMap {
        p: 1,
        q: 0,
        r: 0,
        s: -1,
    };

    pub fn new(p: i64, q: i64, r: i64, s: i64) -> Result<Self> {
        let m = UnimodularMap { p, q, r, s };
        match m.det() {
            1 | -1 => Ok(m),
            d => Err(Error::precondition(format!("determinant {d} is not ±1"))),
        }
    }

    pub fn det(&self) -> i128 {
        self.p as i128 * self.s as i128 - self.q as i128 * self.r as i128
    }

    pub fn is_proper(&self) -> bool {
        self.det() == 1
    }

    /// Matrix product `self · other`; as substitutions, `other` is applied first
    /// to the variables and `self` afterwards.
    pub fn compose(&self, other: &UnimodularMap) -> Result<UnimodularMap> {
        let (a, b) = (self, other);
        let e = |x: i64, y: i64, z: i64, w: i64| {
            narrow(x as i128 * y as i128 + z as i128 * w as i128, "map product")
        };
        Ok(UnimodularMap {
            p: e(a.p, b.p, a.q, b.r)?,
            q: e(a.p, b.q, a.q, b.s)?,
            r: e(a.r, b.p, a.s, b.r)?,
            s: e(a.r, b.q, a.s, b.s)?,
        })
    }

    pub fn inverse(&self) -> UnimodularMap {
        let d = self.det() as i64;
        UnimodularMap {
            p: d * self.s,
            q: -d * self.q,
            r: -d * self.r,
            s: d * self.p,
        }
    }

    pub fn apply(&self, x: i64, y: i64) -> (i128, i128) {
        (
            self.p as i128 * x as i128 + self.q as i128 * y as i128,
            self.r as i128 * x as i128 + self.s as i128 * y as i128,
        )
    }
}

impl Form {
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        Form { a, b, c }
    }

    /// The principal form of discriminant `delta`: `(1, 0, −Δ/4)` or `(1, 1, (1−Δ)/4)`.
    pub fn principal(delta: i64) -> Result<Form> {
        let parity = delta.rem_euclid(4);
        if delta >= 0 || parity > 1 {
            return Err(Error::precondition(format!(
                "{delta} is not a negative discriminant"
            )));
        }
        Ok(Form::new(1, parity, (parity - delta) / 4))
    }

    pub fn eval(&self, x: i64, y: i64) -> i128 {
        let (x, y) = (x as i128, y as i128);
        self.a as i128 * x * x + self.b as i128 * x * y + self.c as i128 * y * y
    }

    pub(crate) fn eval_wide(&self, x: i128, y: i128) -> i128 {
        self.a as i128 * x * x + self.b as i128 * x * y + self.c as i128 * y * y
    }

    /// `b² − 4ac` without the fundamental decomposition.
    pub fn delta(&self) -> i128 {
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        b * b - 4 * a * c
    }

    pub fn discriminant(&self) -> Result<Discriminant> {
        Discriminant::new(narrow(self.delta(), "discriminant")?)
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }

    pub fn is_positive_definite(&self) -> bool {
        self.a > 0 && self.delta() < 0
    }

    pub(crate) fn require_definite(&self) -> Result<()> {
        if !self.is_primitive() {
            return Err(Error::precondition(format!("form {self} is not primitive")));
        }
        if !self.is_positive_definite() {
            return Err(Error::precondition(format!(
                "form {self} is not positive definite"
            )));
        }
        Ok(())
    }

    /// `(a, −b, c)`, the image under `(x, y) ↦ (x, −y)`.
    pub fn opposite(&self) -> Form {
        Form::new(self.a, -self.b, self.c)
    }

    /// The form `(x, y) ↦ Q(m(x, y))`.
    pub fn transform(&self, m: &UnimodularMap) -> Result<Form> {
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        let (p, q, r, s) = (m.p as i128, m.q as i128, m.r as i128, m.s as i128);
        Ok(Form {
            a: narrow(self.eval_wide(p, r), "transformed form")?,
            b: narrow(
                2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
                "transformed form",
            )?,
            c: narrow(self.eval_wide(q, s), "transformed form")?,
        })
    }

    /// `|b| ≤ a ≤ c`, with `b ≥ 0` when `|b| = a` or `a = c`.
    pub fn is_reduced(&self) -> bool {
        let Form { a, b, c } = *self;
        b.abs() <= a && a <= c && !(b < 0 && (b == -a || a == c))
    }
}

/// The defining predicate: `d ≠ 1`, no odd prime square divides `d`, and
/// `d ≡ 1 (mod 4)` or `d ≡ 8, 12 (mod 16)`.
pub fn is_fundamental(d: i64) -> bool {
    if d == 1 || d == 0 {
        return false;
    }
    let congruence = d.rem_euclid(4) == 1 || matches!(d.rem_euclid(16), 8 | 12);
    if !congruence {
        return false;
    }
    let mut odd = d.unsigned_abs();
    while odd % 2 == 0 {
        odd /= 2;
    }
    match squarefree_decompose(odd, DEFAULT_TRIAL_BOUND) {
        Ok((square, _)) => square == 1,
        Err(_) => false,
    }
}

impl Discriminant {
    pub fn new(delta: i64) -> Result<Discriminant> {
        if delta == 0 || !matches!(delta.rem_euclid(4), 0 | 1) {
            return Err(Error::NotADiscriminant(delta));
        }
        let (g, s) = squarefree_decompose(delta.unsigned_abs(), DEFAULT_TRIAL_BOUND)?;
        let s = s as i64 * delta.signum();
        if s == 1 {
            return Err(Error::NotADiscriminant(delta));
        }
        let (fundamental, conductor) = if s.rem_euclid(4) == 1 {
            (s, g)
        } else {
            (4 * s, g / 2)
        };
        debug_assert!(is_fundamental(fundamental));
        Ok(Discriminant {
            delta,
            fundamental,
            conductor,
        })
    }

    /// `|Aut⁺|` for a primitive positive-definite form of this discriminant.
    pub fn proper_automorphism_count(&self) -> usize {
        match self.delta {
            -3 => 6,
            -4 => 4,
            _ => 2,
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.a, self.b, self.c)
    }
}

impl FromStr for Form {
    type Err = Error;

    /// Parses `a,b,c`.
    fn from_str(s: &str) -> Result<Form> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [a, b, c] = parts.as_slice() else {
            return Err(Error::Parse(format!("expected `a,b,c`, got `{s}`")));
        };
        let num = |t: &str| {
            t.parse::<i64>()
                .map_err(|e| Error::Parse(format!("bad coefficient `{t}`: {e}")))
        };
        Ok(Form::new(num(a)?, num(b)?, num(c)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn discriminants() {
        let d = Form::new(1, 0, 1).discriminant().unwrap();
        assert_eq!((d.delta, d.fundamental, d.conductor), (-4, -4, 1));
        let d = Form::new(1, 1, 1).discriminant().unwrap();
        assert_eq!((d.delta, d.fundamental, d.conductor), (-3, -3, 1));
        let d = Form::new(1, 0, 3).discriminant().unwrap();
        assert_eq!((d.delta, d.fundamental, d.conductor), (-12, -3, 2));
        let d = Discriminant::new(-16).unwrap();
        assert_eq!((d.fundamental, d.conductor), (-4, 2));
        let d = Discriminant::new(-32).unwrap();
        assert_eq!((d.fundamental, d.conductor), (-8, 2));
        let d = Discriminant::new(5).unwrap();
        assert_eq!((d.fundamental, d.conductor), (5, 1));
    }

    #[test]
    fn square_discriminants_have_no_decomposition() {
        assert_eq!(Discriminant::new(1), Err(Error::NotADiscriminant(1)));
        assert_eq!(Discriminant::new(9), Err(Error::NotADiscriminant(9)));
        assert_eq!(Discriminant::new(0), Err(Error::NotADiscriminant(0)));
        assert_eq!(Discriminant::new(-2), Err(Error::NotADiscriminant(-2)));
        assert!(Form::new(1, 2, 1).discriminant().is_err());
    }

    #[test]
    fn predicates() {
        assert!(!Form::new(2, 2, 4).is_primitive());
        assert!(Form::new(1, 1, 1).is_positive_definite());
        assert!(!Form::new(1, 3, 1).is_positive_definite());
        assert!(!Form::new(-1, 0, -1).is_positive_definite());
    }

    #[test]
    fn fundamental_predicate() {
        let fundamentals: Vec<i64> = (-60..0).filter(|&d| is_fundamental(d)).collect();
        assert_eq!(
            fundamentals,
            vec![
                -59, -56, -55, -52, -51, -47, -43, -40, -39, -35, -31, -24, -23, -20, -19, -15,
                -11, -8, -7, -4, -3
            ]
        );
    }

    #[test]
    fn principal_forms() {
        assert_eq!(Form::principal(-20).unwrap(), Form::new(1, 0, 5));
        assert_eq!(Form::principal(-23).unwrap(), Form::new(1, 1, 6));
        assert!(Form::principal(-22).is_err());
    }

    #[test]
    fn form_text() {
        let f: Form = "2, -1,3".parse().unwrap();
        assert_eq!(f, Form::new(2, -1, 3));
        assert_eq!(f.to_string(), "2,-1,3");
        assert!("1,2".parse::<Form>().is_err());
        assert!("1,x,2".parse::<Form>().is_err());
    }

    #[test]
    fn map_algebra() {
        let m = UnimodularMap::new(2, 1, 1, 1).unwrap();
        assert_eq!(m.compose(&m.inverse()).unwrap(), UnimodularMap::IDENTITY);
        assert!(UnimodularMap::new(2, 0, 0, 1).is_err());
        assert!(!UnimodularMap::FLIP.is_proper());
    }

    proptest! {
        #[test]
        fn decomposition_identity(delta in -200_000i64..-2) {
            prop_assume!(matches!(delta.rem_euclid(4), 0 | 1));
            let d = Discriminant::new(delta).unwrap();
            prop_assert_eq!(d.fundamental * (d.conductor as i64).pow(2), delta);
            prop_assert!(is_fundamental(d.fundamental));
        }

        #[test]
        fn transform_matches_substitution(
            a in -20i64..20, b in -20i64..20, c in -20i64..20,
            p in -5i64..5, q in -5i64..5, r in -5i64..5,
            x in -10i64..10, y in -10i64..10,
        ) {
            // Complete (p, q, r) to a unimodular matrix when possible.
            let s = if p == 0 { 0 } else { (1 + q * r) / p };
            prop_assume!(p * s - q * r == 1);
            let m = UnimodularMap::new(p, q, r, s).unwrap();
            let f = Form::new(a, b, c);
            let g = f.transform(&m).unwrap();
            let (u, v) = m.apply(x, y);
            prop_assert_eq!(g.eval(x, y), f.eval_wide(u, v));
            prop_assert_eq!(g.delta(), f.delta());
        }
    }
}
