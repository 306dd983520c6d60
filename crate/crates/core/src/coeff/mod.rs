//! Exact coefficients: rationals and multivariate polynomials in named
//! parameters (`t`, `v`, `s`, `u`, `h`, ...).

mod poly;
mod rational;

pub use poly::{Assignment, Exponent, Poly};
pub(crate) use poly::parse_factor;
pub use rational::Rational;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("malformed rational `{0}`")]
    BadRational(String),
    #[error("unknown parameter `{0}` in assignment")]
    UnknownParameter(String),
}

/// Parses `NAME=RATIONAL`.
pub fn parse_assignment(s: &str) -> Result<(String, Rational), CoeffError> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| CoeffError::BadRational(s.to_string()))?;
    Ok((name.trim().to_string(), value.trim().parse()?))
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n, d))
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        let var = prop_oneof![Just("t"), Just("v"), Just("h")];
        let term = (small_rational(), proptest::collection::vec((var, 0u32..3), 0..3));
        proptest::collection::vec(term, 0..4).prop_map(|terms| {
            let mut acc = Poly::zero();
            for (c, vars) in terms {
                let mut m = Poly::constant(c);
                for (v, k) in vars {
                    m = m.mul(&Poly::var(v).pow(k));
                }
                acc = acc.add(&m);
            }
            acc
        })
    }

    fn point() -> impl Strategy<Value = Assignment> {
        (small_rational(), small_rational(), small_rational()).prop_map(|(a, b, c)| {
            [("t", a), ("v", b), ("h", c)]
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert!(a.add(&a.neg()).is_zero());
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in small_poly(), b in small_poly(), x in point()) {
            let ea = a.evaluate_lenient(&x);
            let eb = b.evaluate_lenient(&x);
            prop_assert_eq!(a.mul(&b).evaluate_lenient(&x), ea.mul(&eb));
            prop_assert_eq!(a.add(&b).evaluate_lenient(&x), ea.add(&eb));
            prop_assert!(a.evaluate_lenient(&x).is_constant());
        }

        #[test]
        fn text_round_trip(a in small_poly()) {
            let text = a.to_string();
            let back: Poly = text.parse().unwrap();
            prop_assert_eq!(&back, &a);
            prop_assert_eq!(back.to_string(), text);
        }

        #[test]
        fn rational_field_axioms(a in small_rational(), b in small_rational()) {
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&(&a * &b) / &b, a.clone());
            }
            prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
        }
    }
}
