use mldlab::discrepancy::brute_force_mld;
use mldlab::poly_algebra::{CoefficientField, PolynomialIdeal};
use mldlab::scalars::rational;
use mldlab::{
    lct, log_discrepancy, make_ideal, mld, monomialize, ExactScalar, LctValue, MldValue, Monomial, MonomialIdeal,
    MultiIdeal, Rational,
};
use proptest::prelude::*;

fn arb_ideal(max_exp: u32) -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec((0..=max_exp, 0..=max_exp), 1..5)
        .prop_map(|g| make_ideal(g.into_iter().map(|(a, b)| Monomial::new(a, b))).unwrap())
}

fn arb_exponent() -> impl Strategy<Value = ExactScalar> {
    (1i64..=8, 1i64..=8).prop_map(|(n, d)| ExactScalar::from_rational(rational(n, d)))
}

fn arb_multi(max_exp: u32) -> impl Strategy<Value = MultiIdeal> {
    prop::collection::vec((arb_ideal(max_exp), arb_exponent()), 1..=3).prop_map(|p| MultiIdeal::new(p).unwrap())
}

/// Least `(p1 + p2) / sum e_i val_i(p)` over the box `[0..30]^2` minus the
/// origin, for rational exponents, by direct evaluation of generators.
fn box_lct(m: &MultiIdeal) -> Option<Rational> {
    let mut best: Option<Rational> = None;
    for p1 in 0..=30i64 {
        for p2 in 0..=30i64 {
            if p1 == 0 && p2 == 0 {
                continue;
            }
            let mut den = Rational::from_integer(0.into());
            for (ideal, e) in m.pairs() {
                let v = ideal.generators().iter().map(|g| g.ex as i64 * p1 + g.ey as i64 * p2).min().unwrap();
                den += e.as_rational().unwrap() * Rational::from_integer(v.into());
            }
            if den > Rational::from_integer(0.into()) {
                let r = Rational::from_integer((p1 + p2).into()) / den;
                if best.as_ref().is_none_or(|b| &r < b) {
                    best = Some(r);
                }
            }
        }
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn log_discrepancy_is_homogeneous(m in arb_multi(8), p1 in 0i64..20, p2 in 1i64..20, k in 1i64..=5) {
        let a = log_discrepancy([p1, p2], &m).unwrap();
        prop_assert_eq!(log_discrepancy([k * p1, k * p2], &m).unwrap(), a.scale_int(k));
    }

    #[test]
    fn smaller_ideals_have_smaller_mld(
        m in arb_multi(6),
        shifts in prop::collection::vec((0u32..3, 0u32..3), 3),
    ) {
        // Multiplying generators by monomials gives J inside I.
        let smaller: Vec<_> = m
            .pairs()
            .iter()
            .zip(&shifts)
            .map(|((i, e), &(a, b))| {
                let j = make_ideal(i.generators().iter().map(|g| g.mul(&Monomial::new(a, b)))).unwrap();
                prop_assert!(i.contains(&j));
                Ok((j, e.clone()))
            })
            .collect::<Result<_, TestCaseError>>()?;
        let j = MultiIdeal::new(smaller).unwrap();
        prop_assert!(mld(&j).value <= mld(&m).value);
    }

    #[test]
    fn mld_ignores_the_coefficient_field(m in arb_multi(6)) {
        let direct = mld(&m);
        for ch in [0u64, 2, 3] {
            let field = CoefficientField::new(ch).unwrap();
            let pairs = m
                .pairs()
                .iter()
                .map(|(i, e)| (monomialize(&PolynomialIdeal::from_monomial_ideal(field, i)), e.clone()))
                .collect();
            prop_assert_eq!(&mld(&MultiIdeal::new(pairs).unwrap()), &direct);
        }
    }

    #[test]
    fn lct_matches_box_minimum(m in arb_multi(8)) {
        let r = lct(&m).unwrap();
        match (r.value, box_lct(&m)) {
            (LctValue::Finite(v), Some(b)) => prop_assert_eq!(v, ExactScalar::from_rational(b)),
            (LctValue::Unbounded, None) => {}
            (v, b) => prop_assert!(false, "lct {:?} vs box {:?}", v, b),
        }
    }

    #[test]
    fn mld_matches_box_scan_on_small_inputs(m in arb_multi(4)) {
        let fast = mld(&m);
        let brute = brute_force_mld(&m, 24).unwrap();
        match (&fast.value, &brute.value) {
            (MldValue::Finite(v), MldValue::Finite(b)) => {
                prop_assert_eq!(v, b);
                prop_assert_eq!(fast.divisor, brute.argmin);
            }
            (MldValue::MinusInfinity, MldValue::MinusInfinity) => prop_assert_eq!(fast.divisor, brute.argmin),
            _ => prop_assert!(false, "fan {} vs box {}", fast.value, brute.value),
        }
    }
}
