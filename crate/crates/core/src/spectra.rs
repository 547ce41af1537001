//! Multiplicity sets of Laplace eigenvalues on rectangles and flat 2-tori.
//!
//! A rectangle with side ratio `(a/b)² = q_r/p_r` has eigenvalues
//! `π²(p_r·m² + q_r·n²)/(b²·q_r)` for `m, n ≥ 1`, so multiplicities are
//! first-quadrant lattice counts. A torus with basis angle `θ` and length
//! ratio `r` is described by `(r·cosθ, r²)`; its multiplicities are
//! representation counts of `x² − 2r·cosθ·xy + r²y²`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{
    linear_dependence, rational_square_root, DependenceReport, ExactValue, Rational,
};
use crate::qform::{Discriminant, Form};
use crate::repcount::{
    count_r, eval_irrational, first_quadrant_count, irrational_radius_sq,
    representations_irrational, solutions,
};
use crate::witness::{theorem_q_witness, MultiplicityWitness, WitnessKind};

/// The possible multiplicity sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SetTag {
    AllNaturals,
    Singleton1,
    TwoN,
    FourN,
    SixN,
    SetTwo,
    SetTwoFour,
}

impl SetTag {
    pub const ALL: [SetTag; 7] = [
        SetTag::AllNaturals,
        SetTag::Singleton1,
        SetTag::TwoN,
        SetTag::FourN,
        SetTag::SixN,
        SetTag::SetTwo,
        SetTag::SetTwoFour,
    ];

    pub fn label(self) -> &'static str {
        match self {
            SetTag::AllNaturals => "N",
            SetTag::Singleton1 => "{1}",
            SetTag::TwoN => "2N",
            SetTag::FourN => "4N",
            SetTag::SixN => "6N",
            SetTag::SetTwo => "{2}",
            SetTag::SetTwoFour => "{2,4}",
        }
    }

    pub fn contains(self, k: u64) -> bool {
        match self {
            SetTag::AllNaturals => k >= 1,
            SetTag::Singleton1 => k == 1,
            SetTag::TwoN => k >= 2 && k % 2 == 0,
            SetTag::FourN => k >= 4 && k % 4 == 0,
            SetTag::SixN => k >= 6 && k % 6 == 0,
            SetTag::SetTwo => k == 2,
            SetTag::SetTwoFour => k == 2 || k == 4,
        }
    }

    /// Smallest member.
    pub fn min(self) -> u64 {
        match self {
            SetTag::AllNaturals | SetTag::Singleton1 => 1,
            SetTag::TwoN | SetTag::SetTwo | SetTag::SetTwoFour => 2,
            SetTag::FourN => 4,
            SetTag::SixN => 6,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(
            self,
            SetTag::AllNaturals | SetTag::TwoN | SetTag::FourN | SetTag::SixN
        )
    }
}

impl fmt::Display for SetTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for SetTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SetTag::ALL
            .into_iter()
            .find(|t| t.label() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown multiplicity set {s:?}")))
    }
}

/// Which branch of the classification produced a set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Case {
    RectangleRational,
    RectangleIrrational,
    TorusRational,
    /// `r·cosθ ∈ ℚ`, `r² ∉ ℚ`.
    IrrationalRsq,
    /// `r·cosθ ∉ ℚ`, `r ∈ ℚ`.
    IrrationalRcosRationalR,
    /// `r·cosθ ∉ ℚ`, `r² ∈ ℚ`, `r ∉ ℚ`.
    IrrationalRcosIrrationalR,
    /// Both irrational and `{1, b, c}` independent over `ℚ`.
    Independent,
    /// `c = αb + β` with `α² + β` a rational square.
    DependentSquare,
    /// `c = αb + β` with `α² + β` not a rational square.
    DependentNonSquare,
}

impl Case {
    pub const ALL: [Case; 9] = [
        Case::RectangleRational,
        Case::RectangleIrrational,
        Case::TorusRational,
        Case::IrrationalRsq,
        Case::IrrationalRcosRationalR,
        Case::IrrationalRcosIrrationalR,
        Case::Independent,
        Case::DependentSquare,
        Case::DependentNonSquare,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Case::RectangleRational => "rectangle-rational",
            Case::RectangleIrrational => "rectangle-irrational",
            Case::TorusRational => "torus-rational",
            Case::IrrationalRsq => "irrational-rsq",
            Case::IrrationalRcosRationalR => "irrational-rcos-rational-r",
            Case::IrrationalRcosIrrationalR => "irrational-rcos-irrational-r",
            Case::Independent => "independent",
            Case::DependentSquare => "dependent-square",
            Case::DependentNonSquare => "dependent-non-square",
        }
    }
}

impl FromStr for Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Case::ALL
            .into_iter()
            .find(|c| c.label() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown classification case {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicitySet {
    pub tag: SetTag,
    pub case: Case,
    /// Discriminant of the integral form, for rational tori.
    pub delta: Option<i64>,
}

fn rational_to_u64(x: &BigInt, what: &'static str) -> Result<u64> {
    x.to_u64().ok_or(Error::Overflow(what))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RectangleSpec {
    /// `(a/b)²`.
    pub ratio_sq: ExactValue,
    /// `(p_r, q_r)` with `ratio_sq = q_r/p_r` in lowest terms.
    pub reduced: Option<(u64, u64)>,
}

impl RectangleSpec {
    pub fn new(ratio_sq: ExactValue) -> Result<Self> {
        if ratio_sq.sign() <= 0 {
            return Err(Error::precondition(format!(
                "ratio² = {ratio_sq} must be positive"
            )));
        }
        let reduced = match ratio_sq.to_rational() {
            Some(r) => Some((
                rational_to_u64(r.denom(), "ratio denominator")?,
                rational_to_u64(r.numer(), "ratio numerator")?,
            )),
            None => None,
        };
        Ok(RectangleSpec { ratio_sq, reduced })
    }

    fn require_rational(&self) -> Result<(u64, u64)> {
        self.reduced.ok_or_else(|| {
            Error::NotRational(format!(
                "ratio² = {}; every eigenvalue is simple",
                self.ratio_sq
            ))
        })
    }
}

impl FromStr for RectangleSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RectangleSpec::new(s.parse()?)
    }
}

pub fn rect_classify(spec: &RectangleSpec) -> MultiplicitySet {
    let (tag, case) = if spec.reduced.is_some() {
        (SetTag::AllNaturals, Case::RectangleRational)
    } else {
        (SetTag::Singleton1, Case::RectangleIrrational)
    };
    MultiplicitySet {
        tag,
        case,
        delta: None,
    }
}

/// `p_r·m0² + q_r·n0²`, the eigenvalue `λ_{m0,n0}` up to the factor `π²/(b²·q_r)`.
pub fn rect_level(spec: &RectangleSpec, m0: u64, n0: u64) -> Result<u64> {
    let (p, q) = spec.require_rational()?;
    if m0 == 0 || n0 == 0 {
        return Err(Error::precondition("eigenvalue indices must be positive"));
    }
    let wide = p as u128 * (m0 as u128).pow(2) + q as u128 * (n0 as u128).pow(2);
    u64::try_from(wide).map_err(|_| Error::Overflow("rectangle level"))
}

/// Multiplicity of `λ_{m0,n0}`.
pub fn rect_multiplicity(spec: &RectangleSpec, m0: u64, n0: u64) -> Result<u64> {
    let (p, q) = spec.require_rational()?;
    Ok(first_quadrant_count(p, q, rect_level(spec, m0, n0)?)?.count)
}

/// An eigenvalue `λ = level·π²/(b²·scale)` of prescribed multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RectEigenvalue {
    pub witness: MultiplicityWitness,
    pub level: u64,
    pub scale: u64,
}

/// An eigenvalue of multiplicity exactly `k`.
///
/// When `p_r·q_r > 3` the level is a prime power `p^(2k−1)`; otherwise the
/// smallest level with exactly `k` index pairs is found by scanning.
pub fn rect_witness(spec: &RectangleSpec, k: u64, bound: u64) -> Result<RectEigenvalue> {
    let (p, q) = spec.require_rational()?;
    if k == 0 {
        return Err(Error::precondition("k must be positive"));
    }
    let witness = if p * q > 3 {
        theorem_q_witness(p, q, k, bound)?
    } else {
        let mut found = None;
        for level in 1..=bound {
            let quad = first_quadrant_count(p, q, level)?;
            if quad.count == k {
                found = Some(MultiplicityWitness {
                    kind: WitnessKind::RectTheoremQ,
                    target_count: k,
                    value: level,
                    solutions: quad
                        .solutions
                        .iter()
                        .map(|&(x, y)| (x as i64, y as i64))
                        .collect(),
                    prime: None,
                    base: None,
                    trace_len: level,
                });
                break;
            }
        }
        found.ok_or_else(|| Error::exhausted(format!("level with {k} index pairs"), bound))?
    };
    Ok(RectEigenvalue {
        level: witness.value,
        scale: q,
        witness,
    })
}

/// A flat torus given by `r·cosθ` and `r²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusSpec {
    pub rcos: ExactValue,
    pub rsq: ExactValue,
}

impl TorusSpec {
    pub fn new(rcos: ExactValue, rsq: ExactValue) -> Result<Self> {
        if rcos.sign() < 0 {
            return Err(Error::precondition(format!(
                "r·cosθ = {rcos} must be non-negative"
            )));
        }
        if rsq.sign() <= 0 {
            return Err(Error::precondition(format!("r² = {rsq} must be positive")));
        }
        if rsq.sub(&rcos.square())?.sign() <= 0 {
            return Err(Error::precondition(format!(
                "r² − (r·cosθ)² must be positive (rcos = {rcos}, rsq = {rsq})"
            )));
        }
        ExactValue::common_field([&rcos, &rsq])?;
        Ok(TorusSpec { rcos, rsq })
    }

    pub fn parse(rcos: &str, rsq: &str) -> Result<Self> {
        TorusSpec::new(rcos.parse()?, rsq.parse()?)
    }

    /// `−2·r·cosθ`, the `xy` coefficient.
    pub fn b(&self) -> ExactValue {
        self.rcos.scale_int(-2)
    }

    /// `r²`, the `y²` coefficient.
    pub fn c(&self) -> ExactValue {
        self.rsq.clone()
    }

    pub fn is_rational(&self) -> bool {
        self.rcos.is_rational() && self.rsq.is_rational()
    }

    /// `x² − 2r·cosθ·xy + r²y²`.
    pub fn eval(&self, x: i64, y: i64) -> Result<ExactValue> {
        eval_irrational(&self.b(), &self.c(), x, y)
    }
}

/// The primitive integral form proportional to the torus form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusFormData {
    pub alpha: u64,
    pub beta: u64,
    pub gamma: u64,
    pub delta: u64,
    pub tau: u64,
    pub form: Form,
    pub discriminant: Discriminant,
}

impl TorusFormData {
    /// `βδ/τ`, the factor taking the torus form to the integral one.
    pub fn scale(&self) -> u64 {
        self.beta * self.delta / self.tau
    }
}

/// `2·r·cosθ = α/β`, `r² = γ/δ`, `τ = gcd(β, δ)` and
/// `f = (βδx² − αδxy + γβy²)/τ`.
pub fn torus_form(spec: &TorusSpec) -> Result<TorusFormData> {
    let (Some(rcos), Some(rsq)) = (spec.rcos.to_rational(), spec.rsq.to_rational()) else {
        return Err(Error::precondition(
            "torus_form needs rational r·cosθ and r²",
        ));
    };
    let two_rcos: Rational = rcos * Rational::from_integer(2.into());
    let alpha = rational_to_u64(two_rcos.numer(), "alpha")?;
    let beta = rational_to_u64(two_rcos.denom(), "beta")?;
    let gamma = rational_to_u64(rsq.numer(), "gamma")?;
    let delta = rational_to_u64(rsq.denom(), "delta")?;
    let tau = beta.gcd(&delta);

    let coeff = |x: u64, y: u64| -> Result<i64> {
        let v = x as u128 * y as u128 / tau as u128;
        i64::try_from(v).map_err(|_| Error::Overflow("torus form coefficient"))
    };
    let form = Form::new(
        coeff(beta, delta)?,
        -coeff(alpha, delta)?,
        coeff(gamma, beta)?,
    );
    let discriminant = form.discriminant()?;

    let lhs = (tau as i128).pow(2) * discriminant.delta as i128;
    let rhs = (alpha as i128 * delta as i128).pow(2)
        - 4 * (beta as i128).pow(2) * gamma as i128 * delta as i128;
    assert_eq!(lhs, rhs, "τ²Δ identity for {form}");
    assert!(form.is_primitive() && form.is_positive_definite(), "{form}");

    Ok(TorusFormData {
        alpha,
        beta,
        gamma,
        delta,
        tau,
        form,
        discriminant,
    })
}

pub fn torus_classify(spec: &TorusSpec) -> Result<MultiplicitySet> {
    if spec.is_rational() {
        let data = torus_form(spec)?;
        let delta = data.discriminant.delta;
        let tag = match delta {
            -3 => SetTag::SixN,
            -4 => SetTag::FourN,
            _ => SetTag::TwoN,
        };
        return Ok(MultiplicitySet {
            tag,
            case: Case::TorusRational,
            delta: Some(delta),
        });
    }
    let (tag, case) = match (spec.rcos.to_rational(), spec.rsq.to_rational()) {
        (Some(_), None) => (SetTag::SetTwoFour, Case::IrrationalRsq),
        (None, Some(rsq)) => {
            if rational_square_root(&rsq).is_some() {
                (SetTag::SetTwoFour, Case::IrrationalRcosRationalR)
            } else {
                (SetTag::SetTwo, Case::IrrationalRcosIrrationalR)
            }
        }
        _ => match linear_dependence(&spec.b(), &spec.c())? {
            DependenceReport::Independent => (SetTag::SetTwo, Case::Independent),
            DependenceReport::Dependent { alpha, beta } => {
                if rational_square_root(&(&alpha * &alpha + beta)).is_some() {
                    (SetTag::SetTwoFour, Case::DependentSquare)
                } else {
                    (SetTag::SetTwo, Case::DependentNonSquare)
                }
            }
        },
    };
    Ok(MultiplicitySet {
        tag,
        case,
        delta: None,
    })
}

fn nonzero(x0: i64, y0: i64) -> Result<()> {
    if x0 == 0 && y0 == 0 {
        return Err(Error::precondition("generator must be non-zero"));
    }
    Ok(())
}

/// Number of lattice points `(x, y)` with `f̃(x, y) = f̃(x0, y0)`.
///
/// `max_radius` caps the exact scan used for irrational tori.
pub fn torus_multiplicity(spec: &TorusSpec, x0: i64, y0: i64, max_radius: u64) -> Result<u64> {
    nonzero(x0, y0)?;
    if spec.is_rational() {
        let data = torus_form(spec)?;
        let level =
            u64::try_from(data.form.eval(x0, y0)).map_err(|_| Error::Overflow("torus level"))?;
        return count_r(&data.form, level);
    }
    let z = spec.eval(x0, y0)?;
    Ok(representations_irrational(&spec.b(), &spec.c(), &z, max_radius)?.count())
}

/// All lattice points on the same level set as `(x0, y0)`.
pub fn torus_level_set(
    spec: &TorusSpec,
    x0: i64,
    y0: i64,
    max_radius: u64,
) -> Result<Vec<(i64, i64)>> {
    nonzero(x0, y0)?;
    if spec.is_rational() {
        let data = torus_form(spec)?;
        let level =
            u64::try_from(data.form.eval(x0, y0)).map_err(|_| Error::Overflow("torus level"))?;
        return solutions(&data.form, level);
    }
    let z = spec.eval(x0, y0)?;
    Ok(representations_irrational(&spec.b(), &spec.c(), &z, max_radius)?.solutions)
}

/// What [`multiplicity_set_sample`] ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleRange {
    /// Integral levels `1..=N` of the primitive form; rational tori only.
    Levels(u64),
    /// Generators with `|x|, |y| ≤ B`.
    Box(u64),
}

/// Distinct multiplicities observed over a range of eigenvalues.
pub fn multiplicity_set_sample(spec: &TorusSpec, range: SampleRange) -> Result<BTreeSet<u64>> {
    let mut seen = BTreeSet::new();
    match range {
        SampleRange::Levels(n_max) => {
            let data = torus_form(spec)?;
            for n in 1..=n_max {
                let r = count_r(&data.form, n)?;
                if r > 0 {
                    seen.insert(r);
                }
            }
        }
        SampleRange::Box(bx) if spec.is_rational() => {
            let bx = i64::try_from(bx).map_err(|_| Error::Overflow("box"))?;
            let data = torus_form(spec)?;
            for y in -bx..=bx {
                for x in -bx..=bx {
                    if (x, y) != (0, 0) {
                        let level = u64::try_from(data.form.eval(x, y))
                            .map_err(|_| Error::Overflow("torus level"))?;
                        seen.insert(count_r(&data.form, level)?);
                    }
                }
            }
        }
        SampleRange::Box(bx) => {
            for (_, count) in irrational_box_counts(spec, bx)? {
                seen.insert(count);
            }
        }
    }
    Ok(seen)
}

/// Exact multiplicity of every generator in `|x|, |y| ≤ bx`, `(x, y) ≠ (0, 0)`.
///
/// Values are bucketed over a disc large enough to contain every lattice
/// point on every sampled level set, so each count is complete.
pub fn irrational_box_counts(spec: &TorusSpec, bx: u64) -> Result<Vec<((i64, i64), u64)>> {
    let bx = i64::try_from(bx).map_err(|_| Error::Overflow("box"))?;
    let (b, c) = (spec.b(), spec.c());
    let mut generators = Vec::new();
    let mut r2 = 0u64;
    for y in -bx..=bx {
        for x in -bx..=bx {
            if (x, y) != (0, 0) {
                let z = eval_irrational(&b, &c, x, y)?;
                r2 = r2.max(irrational_radius_sq(&b, &c, &z)?);
                generators.push(((x, y), z));
            }
        }
    }
    let radius = r2.sqrt() as i64;
    let mut buckets: HashMap<ExactValue, u64> = HashMap::new();
    for y in -radius..=radius {
        let span = (r2 - (y * y) as u64).sqrt() as i64;
        for x in -span..=span {
            *buckets.entry(eval_irrational(&b, &c, x, y)?).or_insert(0) += 1;
        }
    }
    Ok(generators
        .into_iter()
        .map(|(g, z)| (g, buckets[&z]))
        .collect())
}
