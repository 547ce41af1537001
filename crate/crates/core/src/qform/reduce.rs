use super::{narrow, Form, UnimodularMap};
use crate::error::Result;

/// Working copy in `i128` so intermediate translations cannot overflow.
#[derive(Clone, Copy)]
struct Wide {
    a: i128,
    b: i128,
    c: i128,
}

#[derive(Clone, Copy)]
struct WideMap {
    p: i128,
    q: i128,
    r: i128,
    s: i128,
}

impl WideMap {
    /// `self · (1 k; 0 1)`
    fn translate(&mut self, k: i128) {
        self.q += k * self.p;
        self.s += k * self.r;
    }

    /// `self · (0 −1; 1 0)`
    fn swap(&mut self) {
        let (p, q, r, s) = (self.p, self.q, self.r, self.s);
        *self = WideMap {
            p: q,
            q: -p,
            r: s,
            s: -r,
        };
    }
}

impl Form {
    /// The reduced form properly equivalent to `self`, with a proper map `T`
    /// such that `self ∘ T` is that reduced form.
    pub fn reduce(&self) -> Result<(Form, UnimodularMap)> {
        self.require_definite()?;
        let mut f = Wide {
            a: self.a as i128,
            b: self.b as i128,
            c: self.c as i128,
        };
        let mut t = WideMap {
            p: 1,
            q: 0,
            r: 0,
            s: 1,
        };
        loop {
            if f.b > f.a || f.b <= -f.a {
                // Bring b into (−a, a].
                let k = (f.a - f.b).div_euclid(2 * f.a);
                f = Wide {
                    a: f.a,
                    b: f.b + 2 * f.a * k,
                    c: f.a * k * k + f.b * k + f.c,
                };
                t.translate(k);
            }
            if f.a > f.c {
                f = Wide {
                    a: f.c,
                    b: -f.b,
                    c: f.a,
                };
                t.swap();
                continue;
            }
            if f.a == f.c && f.b < 0 {
                f.b = -f.b;
                t.swap();
            }
            break;
        }
        let reduced = Form {
            a: narrow(f.a, "reduction")?,
            b: narrow(f.b, "reduction")?,
            c: narrow(f.c, "reduction")?,
        };
        let map = UnimodularMap {
            p: narrow(t.p, "reduction map")?,
            q: narrow(t.q, "reduction map")?,
            r: narrow(t.r, "reduction map")?,
            s: narrow(t.s, "reduction map")?,
        };
        debug_assert!(reduced.is_reduced());
        debug_assert_eq!(self.transform(&map)?, reduced);
        Ok((reduced, map))
    }

    /// A proper map `T` with `self ∘ T = other`, when the two are properly equivalent.
    pub fn is_equivalent(&self, other: &Form) -> Result<Option<UnimodularMap>> {
        let (rf, tf) = self.reduce()?;
        let (rg, tg) = other.reduce()?;
        if rf != rg {
            return Ok(None);
        }
        let t = tf.compose(&tg.inverse())?;
        debug_assert_eq!(self.transform(&t)?, *other);
        Ok(Some(t))
    }

    /// The full group `Aut⁺(Q)` of proper automorphisms.
    ///
    /// The table of automorphisms is known for the reduced representative;
    /// for any other form the elements are conjugated by the reduction map.
    pub fn proper_automorphisms(&self) -> Result<Vec<UnimodularMap>> {
        let (reduced, t) = self.reduce()?;
        let table: &[(i64, i64, i64, i64)] = match (reduced.a, reduced.b, reduced.c) {
            (1, 0, 1) => &[(1, 0, 0, 1), (0, -1, 1, 0)],
            (1, 1, 1) => &[(1, 0, 0, 1), (0, -1, 1, 1), (1, 1, -1, 0)],
            _ => &[(1, 0, 0, 1)],
        };
        let t_inv = t.inverse();
        let mut out = Vec::with_capacity(table.len() * 2);
        for &(p, q, r, s) in table {
            for sign in [1, -1] {
                let b = UnimodularMap {
                    p: sign * p,
                    q: sign * q,
                    r: sign * r,
                    s: sign * s,
                };
                let a = t.compose(&b)?.compose(&t_inv)?;
                assert!(
                    a.is_proper() && self.transform(&a)? == *self,
                    "automorphism check failed for {self}"
                );
                out.push(a);
            }
        }
        Ok(out)
    }

    /// An automorphism of determinant −1, present exactly when the form is ambiguous.
    pub fn improper_automorphism(&self) -> Result<Option<UnimodularMap>> {
        let Some(t) = self.opposite().is_equivalent(self)? else {
            return Ok(None);
        };
        let a = UnimodularMap::FLIP.compose(&t)?;
        assert!(
            a.det() == -1 && self.transform(&a)? == *self,
            "improper automorphism check failed for {self}"
        );
        Ok(Some(a))
    }

    /// Properly equivalent to `(a, −b, c)`; equivalently, of order at most two
    /// in the class group.
    pub fn is_ambiguous(&self) -> Result<bool> {
        Ok(self.is_equivalent(&self.opposite())?.is_some())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use proptest::prelude::*;

    #[test]
    fn reduce_examples() {
        assert_eq!(
            Form::new(1, 0, 1).reduce().unwrap(),
            (Form::new(1, 0, 1), UnimodularMap::IDENTITY)
        );
        assert_eq!(
            Form::new(3, 2, 3).reduce().unwrap(),
            (Form::new(3, 2, 3), UnimodularMap::IDENTITY)
        );
        let f = Form::new(2, -2, 3);
        let (r, t) = f.reduce().unwrap();
        assert_eq!(r, Form::new(2, 2, 3));
        assert!(t.is_proper());
        assert_eq!(f.transform(&t).unwrap(), r);
    }

    #[test]
    fn reduce_rejects_bad_input() {
        assert!(matches!(
            Form::new(2, 2, 4).reduce(),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            Form::new(1, 3, 1).reduce(),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn equivalence_examples() {
        let f = Form::new(1, 0, 5);
        assert_eq!(f.is_equivalent(&f).unwrap(), Some(UnimodularMap::IDENTITY));
        assert_eq!(f.is_equivalent(&Form::new(2, 2, 3)).unwrap(), None);
        let t = Form::new(2, -2, 3)
            .is_equivalent(&Form::new(2, 2, 3))
            .unwrap()
            .unwrap();
        assert_eq!(
            Form::new(2, -2, 3).transform(&t).unwrap(),
            Form::new(2, 2, 3)
        );
    }

    #[test]
    fn automorphism_table() {
        let aut = Form::new(1, 0, 1).proper_automorphisms().unwrap();
        assert_eq!(aut.len(), 4);
        assert!(aut.contains(&UnimodularMap {
            p: 0,
            q: -1,
            r: 1,
            s: 0
        }));
        assert!(aut.contains(&UnimodularMap {
            p: 0,
            q: 1,
            r: -1,
            s: 0
        }));
        assert_eq!(Form::new(1, 1, 1).proper_automorphisms().unwrap().len(), 6);
        assert_eq!(
            Form::new(2, 2, 3).proper_automorphisms().unwrap(),
            vec![UnimodularMap::IDENTITY, UnimodularMap::NEG_IDENTITY]
        );
        // The hexagonal form written with a negative middle coefficient.
        let hex = Form::new(1, -1, 1);
        let aut = hex.proper_automorphisms().unwrap();
        assert_eq!(aut.len(), 6);
        for a in aut {
            assert_eq!(hex.transform(&a).unwrap(), hex);
        }
    }

    #[test]
    fn improper_examples() {
        assert_eq!(
            Form::new(1, 0, 5).improper_automorphism().unwrap(),
            Some(UnimodularMap::FLIP)
        );
        assert_eq!(Form::new(2, 1, 3).improper_automorphism().unwrap(), None);
        let a = Form::new(2, 2, 3).improper_automorphism().unwrap().unwrap();
        assert_eq!(a.det(), -1);
    }

    #[test]
    fn ambiguity_examples() {
        assert!(Form::new(1, 0, 5).is_ambiguous().unwrap());
        assert!(!Form::new(2, 1, 3).is_ambiguous().unwrap());
        assert!(Form::new(1, 1, 1).is_ambiguous().unwrap());
    }

    fn definite_form() -> impl Strategy<Value = Form> {
        (1i64..60, -60i64..60, 1i64..60)
            .prop_map(|(a, b, c)| Form::new(a, b, c))
            .prop_filter("primitive definite", |f| {
                f.is_primitive() && f.is_positive_definite()
            })
    }

    fn unimodular() -> impl Strategy<Value = UnimodularMap> {
        prop::collection::vec(0u8..4, 0..8).prop_map(|steps| {
            let gens = [
                UnimodularMap {
                    p: 1,
                    q: 1,
                    r: 0,
                    s: 1,
                },
                UnimodularMap {
                    p: 1,
                    q: -1,
                    r: 0,
                    s: 1,
                },
                UnimodularMap {
                    p: 0,
                    q: -1,
                    r: 1,
                    s: 0,
                },
                UnimodularMap {
                    p: 1,
                    q: 0,
                    r: 1,
                    s: 1,
                },
            ];
            steps.iter().fold(UnimodularMap::IDENTITY, |m, &i| {
                m.compose(&gens[i as usize]).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn reduction_certificate(f in definite_form()) {
            let (r, t) = f.reduce().unwrap();
            prop_assert!(r.is_reduced());
            prop_assert!(t.is_proper());
            prop_assert_eq!(f.transform(&t).unwrap(), r);
            let (rr, tt) = r.reduce().unwrap();
            prop_assert_eq!(rr, r);
            prop_assert_eq!(tt, UnimodularMap::IDENTITY);
        }

        #[test]
        fn equivalence_relation(f in definite_form(), m1 in unimodular(), m2 in unimodular()) {
            let g = f.transform(&m1).unwrap();
            let h = g.transform(&m2).unwrap();
            let fg = f.is_equivalent(&g).unwrap().unwrap();
            prop_assert_eq!(f.transform(&fg).unwrap(), g);
            // symmetry through the inverse certificate
            let gf = g.is_equivalent(&f).unwrap().unwrap();
            prop_assert_eq!(g.transform(&fg.inverse()).unwrap(), f);
            prop_assert_eq!(g.transform(&gf).unwrap(), f);
            // transitivity through the composed certificate
            let gh = g.is_equivalent(&h).unwrap().unwrap();
            prop_assert_eq!(f.transform(&fg.compose(&gh).unwrap()).unwrap(), h);
            prop_assert!(f.is_equivalent(&h).unwrap().is_some());
        }

        #[test]
        fn automorphisms_fix_the_form(f in definite_form(), m in unimodular()) {
            let g = f.transform(&m).unwrap();
            let aut = g.proper_automorphisms().unwrap();
            let expected = g.discriminant().unwrap().proper_automorphism_count();
            prop_assert_eq!(aut.len(), expected);
            for a in &aut {
                prop_assert!(a.is_proper());
                prop_assert_eq!(g.transform(a).unwrap(), g);
            }
            if let Some(a) = g.improper_automorphism().unwrap() {
                prop_assert_eq!(a.det(), -1);
                prop_assert_eq!(g.transform(&a).unwrap(), g);
            }
        }
    }
}
