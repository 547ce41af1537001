//! JSON-ready records. Every number is carried as a decimal string so that
//! no consumer loses precision; each record converts back to the value it
//! was built from.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::ExactValue;
use crate::qform::{Discriminant, Form};
use crate::repcount::{RepSet, RepTarget};
use crate::spectra::{MultiplicitySet, TorusFormData};
use crate::witness::{MultiplicityWitness, PrimeWitness, WitnessKind};

fn s(x: impl Display) -> String {
    x.to_string()
}

fn num<T: FromStr>(field: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| Error::Parse(format!("field {field}: {v:?} is not a valid number")))
}

fn opt_num<T: FromStr>(field: &str, v: &Option<String>) -> Result<Option<T>> {
    v.as_deref().map(|v| num(field, v)).transpose()
}

fn pair(p: (i64, i64)) -> [String; 2] {
    [s(p.0), s(p.1)]
}

fn unpair(p: &[String; 2]) -> Result<(i64, i64)> {
    Ok((num("x", &p[0])?, num("y", &p[1])?))
}

fn unpairs(ps: &[[String; 2]]) -> Result<Vec<(i64, i64)>> {
    ps.iter().map(unpair).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormRecord {
    pub a: String,
    pub b: String,
    pub c: String,
    pub delta: String,
}

impl From<&Form> for FormRecord {
    fn from(f: &Form) -> Self {
        FormRecord {
            a: s(f.a),
            b: s(f.b),
            c: s(f.c),
            delta: s(f.delta()),
        }
    }
}

impl TryFrom<&FormRecord> for Form {
    type Error = Error;

    fn try_from(r: &FormRecord) -> Result<Form> {
        let f = Form::new(num("a", &r.a)?, num("b", &r.b)?, num("c", &r.c)?);
        if s(f.delta()) != r.delta {
            return Err(Error::Parse(format!(
                "delta {} does not match form {f}",
                r.delta
            )));
        }
        Ok(f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetKind {
    Integer,
    Real,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepSetRecord {
    pub target: String,
    pub target_kind: TargetKind,
    #[serde(rename = "R")]
    pub r: String,
    pub r_plus: Option<String>,
    pub r_full: Option<String>,
    pub primitive: String,
    pub solutions: Vec<[String; 2]>,
}

impl From<&RepSet> for RepSetRecord {
    fn from(set: &RepSet) -> Self {
        let (target, target_kind) = match &set.target {
            RepTarget::Integer(n) => (s(n), TargetKind::Integer),
            RepTarget::Real(z) => (s(z), TargetKind::Real),
        };
        RepSetRecord {
            target,
            target_kind,
            r: s(set.count()),
            r_plus: set.r_plus.map(s),
            r_full: set.r_full.map(s),
            primitive: s(set.primitive_count),
            solutions: set.solutions.iter().copied().map(pair).collect(),
        }
    }
}

impl TryFrom<&RepSetRecord> for RepSet {
    type Error = Error;

    fn try_from(r: &RepSetRecord) -> Result<RepSet> {
        let target = match r.target_kind {
            TargetKind::Integer => RepTarget::Integer(num("target", &r.target)?),
            TargetKind::Real => RepTarget::Real(r.target.parse::<ExactValue>()?),
        };
        let set = RepSet {
            target,
            solutions: unpairs(&r.solutions)?,
            r_plus: opt_num("r_plus", &r.r_plus)?,
            r_full: opt_num("r_full", &r.r_full)?,
            primitive_count: num("primitive", &r.primitive)?,
        };
        if s(set.count()) != r.r {
            return Err(Error::Parse(format!(
                "R = {} disagrees with the solution list",
                r.r
            )));
        }
        Ok(set)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub set: String,
    pub case: String,
    pub delta: Option<String>,
}

impl From<&MultiplicitySet> for ClassificationRecord {
    fn from(m: &MultiplicitySet) -> Self {
        ClassificationRecord {
            set: m.tag.label().to_owned(),
            case: m.case.label().to_owned(),
            delta: m.delta.map(s),
        }
    }
}

impl TryFrom<&ClassificationRecord> for MultiplicitySet {
    type Error = Error;

    fn try_from(r: &ClassificationRecord) -> Result<MultiplicitySet> {
        Ok(MultiplicitySet {
            tag: r.set.parse()?,
            case: r.case.parse()?,
            delta: opt_num("delta", &r.delta)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeWitnessRecord {
    pub p: String,
    pub rep: [String; 2],
    pub form: FormRecord,
}

impl From<&PrimeWitness> for PrimeWitnessRecord {
    fn from(w: &PrimeWitness) -> Self {
        PrimeWitnessRecord {
            p: s(w.p),
            rep: pair(w.rep),
            form: (&w.form).into(),
        }
    }
}

impl TryFrom<&PrimeWitnessRecord> for PrimeWitness {
    type Error = Error;

    fn try_from(r: &PrimeWitnessRecord) -> Result<PrimeWitness> {
        Ok(PrimeWitness {
            p: num("p", &r.p)?,
            rep: unpair(&r.rep)?,
            form: (&r.form).try_into()?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub kind: WitnessKind,
    pub target_count: String,
    pub value: String,
    pub solutions: Vec<[String; 2]>,
    pub prime: Option<String>,
    pub base: Option<String>,
    pub trace_len: String,
}

impl From<&MultiplicityWitness> for WitnessRecord {
    fn from(w: &MultiplicityWitness) -> Self {
        WitnessRecord {
            kind: w.kind,
            target_count: s(w.target_count),
            value: s(w.value),
            solutions: w.solutions.iter().copied().map(pair).collect(),
            prime: w.prime.map(s),
            base: w.base.map(s),
            trace_len: s(w.trace_len),
        }
    }
}

impl TryFrom<&WitnessRecord> for MultiplicityWitness {
    type Error = Error;

    fn try_from(r: &WitnessRecord) -> Result<MultiplicityWitness> {
        Ok(MultiplicityWitness {
            kind: r.kind,
            target_count: num("target_count", &r.target_count)?,
            value: num("value", &r.value)?,
            solutions: unpairs(&r.solutions)?,
            prime: opt_num("prime", &r.prime)?,
            base: opt_num("base", &r.base)?,
            trace_len: num("trace_len", &r.trace_len)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusFormRecord {
    pub alpha: String,
    pub beta: String,
    pub gamma: String,
    pub delta: String,
    pub tau: String,
    pub form: FormRecord,
    pub discriminant: String,
    pub fundamental: String,
    pub conductor: String,
}

impl From<&TorusFormData> for TorusFormRecord {
    fn from(d: &TorusFormData) -> Self {
        TorusFormRecord {
            alpha: s(d.alpha),
            beta: s(d.beta),
            gamma: s(d.gamma),
            delta: s(d.delta),
            tau: s(d.tau),
            form: (&d.form).into(),
            discriminant: s(d.discriminant.delta),
            fundamental: s(d.discriminant.fundamental),
            conductor: s(d.discriminant.conductor),
        }
    }
}

impl TryFrom<&TorusFormRecord> for TorusFormData {
    type Error = Error;

    fn try_from(r: &TorusFormRecord) -> Result<TorusFormData> {
        Ok(TorusFormData {
            alpha: num("alpha", &r.alpha)?,
            beta: num("beta", &r.beta)?,
            gamma: num("gamma", &r.gamma)?,
            delta: num("delta", &r.delta)?,
            tau: num("tau", &r.tau)?,
            form: (&r.form).try_into()?,
            discriminant: Discriminant::new(num("discriminant", &r.discriminant)?)?,
        })
    }
}

/// `{count: frequency}` with string keys and values.
pub fn histogram_record(hist: &BTreeMap<u64, u64>) -> BTreeMap<String, String> {
    hist.iter().map(|(k, v)| (s(k), s(v))).collect()
}

pub fn histogram_from_record(rec: &BTreeMap<String, String>) -> Result<BTreeMap<u64, u64>> {
    rec.iter()
        .map(|(k, v)| Ok((num("count", k)?, num("frequency", v)?)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub error: String,
}

impl From<&Error> for ErrorRecord {
    fn from(e: &Error) -> Self {
        ErrorRecord {
            error: e.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repcount::{representations, representations_irrational};
    use crate::spectra::{torus_classify, torus_form, TorusSpec};
    use crate::witness::{find_represented_prime, theorem_q_witness};

    fn round_trip<R, T>(value: &T) -> T
    where
        R: Serialize + for<'de> Deserialize<'de> + for<'a> From<&'a T>,
        T: for<'a> TryFrom<&'a R, Error = Error>,
    {
        let json = serde_json::to_string(&R::from(value)).unwrap();
        let back: R = serde_json::from_str(&json).unwrap();
        T::try_from(&back).unwrap()
    }

    #[test]
    fn forms() {
        let f = Form::new(2, -1, 3);
        let json = serde_json::to_string(&FormRecord::from(&f)).unwrap();
        assert_eq!(json, r#"{"a":"2","b":"-1","c":"3","delta":"-23"}"#);
        assert_eq!(round_trip::<FormRecord, _>(&f), f);
    }

    #[test]
    fn repsets() {
        let set = representations(&Form::new(1, 0, 1), 5).unwrap();
        let v = serde_json::to_value(RepSetRecord::from(&set)).unwrap();
        assert_eq!(v["R"], "8");
        assert_eq!(v["r_plus"], "2");
        assert_eq!(round_trip::<RepSetRecord, _>(&set), set);

        let (b, c) = ("-2*sqrt(2)".parse().unwrap(), "2+sqrt(2)".parse().unwrap());
        let set = representations_irrational(&b, &c, &"9".parse().unwrap(), 50).unwrap();
        assert_eq!(round_trip::<RepSetRecord, _>(&set), set);
    }

    #[test]
    fn classifications() {
        let m = torus_classify(&TorusSpec::parse("1/2", "1").unwrap()).unwrap();
        let v = serde_json::to_value(ClassificationRecord::from(&m)).unwrap();
        assert_eq!(
            (v["set"].as_str(), v["delta"].as_str()),
            (Some("6N"), Some("-3"))
        );
        assert_eq!(round_trip::<ClassificationRecord, _>(&m), m);
    }

    #[test]
    fn witnesses() {
        let w = theorem_q_witness(1, 5, 2, 1000).unwrap();
        assert_eq!(round_trip::<WitnessRecord, _>(&w), w);
        let v = serde_json::to_value(WitnessRecord::from(&w)).unwrap();
        assert_eq!(v["kind"], "rect_theorem_q");
        let p = find_represented_prime(&Form::new(1, 1, 6), &[], 1000).unwrap();
        assert_eq!(round_trip::<PrimeWitnessRecord, _>(&p), p);
    }

    #[test]
    fn torus_forms() {
        let d = torus_form(&TorusSpec::parse("1/4", "5/6").unwrap()).unwrap();
        assert_eq!(round_trip::<TorusFormRecord, _>(&d), d);
    }

    #[test]
    fn histograms() {
        let h = BTreeMap::from([(0, 3), (4, 5), (8, 2)]);
        assert_eq!(histogram_from_record(&histogram_record(&h)).unwrap(), h);
    }
}
