use num_integer::Integer;

use super::{narrow, Form};
use crate::error::{Error, Result};

/// `(g, x, y)` with `x·a + y·b = g = gcd(a, b) ≥ 0`.
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

impl Form {
    /// Dirichlet composition, returned reduced.
    ///
    /// The result is checked to have the common discriminant and to be
    /// reduced before it is returned.
    pub fn compose(&self, other: &Form) -> Result<Form> {
        self.require_definite()?;
        other.require_definite()?;
        let delta = self.delta();
        if delta != other.delta() {
            return Err(Error::DiscriminantMismatch {
                left: narrow(delta, "discriminant")?,
                right: narrow(other.delta(), "discriminant")?,
            });
        }
        let (f1, f2) = if self.a > other.a {
            (other, self)
        } else {
            (self, other)
        };
        let (a1, b1) = (f1.a as i128, f1.b as i128);
        let (a2, b2, c2) = (f2.a as i128, f2.b as i128, f2.c as i128);

        let s = (b1 + b2) / 2;
        let n = b2 - s;
        let (d, y1) = if a2 % a1 == 0 {
            (a1, 0)
        } else {
            let (d, u, _) = ext_gcd(a2, a1);
            (d, u)
        };
        let (d1, x2, y2) = if s % d == 0 {
            (d, 0, -1)
        } else {
            let (d1, u, v) = ext_gcd(s, d);
            (d1, u, -v)
        };
        let v1 = a1 / d1;
        let v2 = a2 / d1;
        let r = (y1 * y2 * n - x2 * c2).rem_euclid(v1);
        let b3 = b2 + 2 * v2 * r;
        let a3 = v1 * v2;
        let num = b3 * b3 - delta;
        if num % (4 * a3) != 0 {
            return Err(Error::Overflow("composition produced a non-integral form"));
        }
        let c3 = num / (4 * a3);
        let composed = Form {
            a: narrow(a3, "composition")?,
            b: narrow(b3, "composition")?,
            c: narrow(c3, "composition")?,
        };
        let (reduced, _) = composed.reduce()?;
        assert_eq!(
            reduced.delta(),
            delta,
            "composition changed the discriminant"
        );
        assert!(reduced.is_reduced());
        Ok(reduced)
    }
}

/// One reduced primitive form per proper equivalence class of discriminant
/// `delta < 0`, sorted by `(a, b, c)`.
pub fn class_group(delta: i64) -> Result<Vec<Form>> {
    if delta >= 0 || !matches!(delta.rem_euclid(4), 0 | 1) {
        return Err(Error::precondition(format!(
            "{delta} is not a negative discriminant"
        )));
    }
    let abs = (delta as i128).abs();
    let mut forms = Vec::new();
    let mut a: i128 = 1;
    while 3 * a * a <= abs {
        for b in -a + 1..=a {
            if (b - delta as i128).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - delta as i128;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (b < 0 && a == c) {
                continue;
            }
            let f = Form {
                a: narrow(a, "class group")?,
                b: narrow(b, "class group")?,
                c: narrow(c, "class group")?,
            };
            if f.is_primitive() {
                forms.push(f);
            }
        }
        a += 1;
    }
    forms.sort();
    Ok(forms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qform::Form;

    fn f(a: i64, b: i64, c: i64) -> Form {
        Form::new(a, b, c)
    }

    #[test]
    fn class_group_examples() {
        assert_eq!(class_group(-4).unwrap(), vec![f(1, 0, 1)]);
        assert_eq!(class_group(-20).unwrap(), vec![f(1, 0, 5), f(2, 2, 3)]);
        assert_eq!(
            class_group(-23).unwrap(),
            vec![f(1, 1, 6), f(2, -1, 3), f(2, 1, 3)]
        );
        assert!(class_group(-5).is_err());
        assert!(class_group(8).is_err());
    }

    /// Brute force: reduce every primitive definite form with small
    /// coefficients and collect the distinct results.
    fn class_group_oracle(delta: i64) -> Vec<Form> {
        let mut seen = std::collections::BTreeSet::new();
        for a in 1..=40i64 {
            for b in -40..=40i64 {
                let num = b * b - delta;
                if num % (4 * a) != 0 {
                    continue;
                }
                let g = f(a, b, num / (4 * a));
                if g.is_primitive() && g.is_positive_definite() {
                    seen.insert(g.reduce().unwrap().0);
                }
            }
        }
        seen.into_iter().collect()
    }

    #[test]
    fn class_group_matches_reduction_oracle() {
        for delta in (-400..-2).filter(|d: &i64| matches!(d.rem_euclid(4), 0 | 1)) {
            assert_eq!(
                class_group(delta).unwrap(),
                class_group_oracle(delta),
                "Δ = {delta}"
            );
        }
    }

    #[test]
    fn class_numbers() {
        // Known class numbers h(Δ).
        for (delta, h) in [
            (-3, 1),
            (-4, 1),
            (-7, 1),
            (-8, 1),
            (-15, 2),
            (-20, 2),
            (-23, 3),
            (-47, 5),
            (-71, 7),
            (-56, 4),
            (-84, 4),
            (-163, 1),
        ] {
            assert_eq!(class_group(delta).unwrap().len(), h, "Δ = {delta}");
        }
    }

    #[test]
    fn compose_examples() {
        assert_eq!(f(1, 0, 5).compose(&f(2, 2, 3)).unwrap(), f(2, 2, 3));
        assert_eq!(f(2, 2, 3).compose(&f(2, 2, 3)).unwrap(), f(1, 0, 5));
        assert_eq!(f(2, 1, 3).compose(&f(2, -1, 3)).unwrap(), f(1, 1, 6));
        assert!(matches!(
            f(1, 0, 1).compose(&f(1, 1, 1)),
            Err(Error::DiscriminantMismatch { .. })
        ));
    }

    #[test]
    fn group_laws_on_small_class_groups() {
        for delta in (-700..-2).filter(|d: &i64| matches!(d.rem_euclid(4), 0 | 1)) {
            let reps = class_group(delta).unwrap();
            if reps.len() > 6 {
                continue;
            }
            let id = Form::principal(delta).unwrap().reduce().unwrap().0;
            for x in &reps {
                assert_eq!(x.compose(&id).unwrap(), *x);
                let inv = x.opposite().reduce().unwrap().0;
                assert_eq!(x.compose(&inv).unwrap(), id);
                // ambiguity ⇔ order ≤ 2 ⇔ improper automorphism
                let amb = x.is_ambiguous().unwrap();
                assert_eq!(amb, x.compose(x).unwrap() == id, "{x}");
                assert_eq!(amb, x.improper_automorphism().unwrap().is_some());
                for y in &reps {
                    let xy = x.compose(y).unwrap();
                    assert!(reps.contains(&xy));
                    assert_eq!(xy, y.compose(x).unwrap());
                    for z in &reps {
                        assert_eq!(
                            xy.compose(z).unwrap(),
                            x.compose(&y.compose(z).unwrap()).unwrap(),
                            "Δ = {delta}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn composition_multiplies_represented_values() {
        // If F represents m and G represents n, the composite represents mn.
        let represented =
            |g: &Form, n: i128| (-60i64..=60).any(|x| (-60i64..=60).any(|y| g.eval(x, y) == n));
        for delta in [-23i64, -47, -56, -71, -84] {
            let reps = class_group(delta).unwrap();
            for x in &reps {
                for y in &reps {
                    let xy = x.compose(y).unwrap();
                    for (u, v) in [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1)] {
                        for (s, t) in [(1, 0), (0, 1), (1, 1), (2, -1)] {
                            let m = x.eval(u, v) * y.eval(s, t);
                            assert!(represented(&xy, m), "{x} ∘ {y} = {xy} misses {m}");
                        }
                    }
                }
            }
        }
    }
}
