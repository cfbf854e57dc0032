use divsum_core::distribution::{Mollifier, Numerics, Shifted, TestFunction};
use divsum_core::series::generating_function_series;
use divsum_core::{sum_powers, GaussianRational, Rational, SumEngine, TaylorSeries};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=20).prop_map(|(p, q)| Rational::new(p, q).unwrap())
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (rational(), rational()).prop_map(|(re, im)| GaussianRational::new(re, im))
}

fn series(order: usize) -> impl Strategy<Value = TaylorSeries> {
    prop::collection::vec(gaussian(), order).prop_map(TaylorSeries::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gaussian_field_axioms(a in gaussian(), b in gaussian(), c in gaussian()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !b.is_zero() {
            prop_assert_eq!(&a.checked_div(&b).unwrap() * &b, a.clone());
        } else {
            prop_assert!(a.checked_div(&b).is_err());
        }
    }

    #[test]
    fn display_round_trips(a in gaussian()) {
        prop_assert_eq!(a.to_string().parse::<GaussianRational>().unwrap(), a);
    }

    #[test]
    fn i_pow_is_periodic(k in -1000i64..1000) {
        prop_assert_eq!(GaussianRational::i_pow(k) * GaussianRational::i_pow(-k), GaussianRational::one());
        prop_assert_eq!(GaussianRational::i_pow(k + 4), GaussianRational::i_pow(k));
    }

    #[test]
    fn series_reciprocal_inverts(s in series(8), c0 in gaussian()) {
        prop_assume!(!c0.is_zero());
        let mut coeffs = s.coeffs().to_vec();
        coeffs[0] = c0;
        let s = TaylorSeries::new(coeffs);
        let prod = s.mul(&s.reciprocal().unwrap());
        prop_assert_eq!(prod, TaylorSeries::constant(GaussianRational::one(), s.order()));
    }

    #[test]
    fn series_derivative_is_a_derivation(a in series(7), b in series(7)) {
        let lhs = a.mul(&b).derivative();
        let rhs = a.derivative().mul(&b.truncate(6)).add(&a.truncate(6).mul(&b.derivative()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn truncation_is_stable(k in 1u32..=12, extra in 0usize..20) {
        let small = SumEngine::new(k as usize).sum_powers(k).unwrap().value;
        let large = SumEngine::new(k as usize + extra).sum_powers(k).unwrap().value;
        prop_assert_eq!(small, large);
    }

    #[test]
    fn generating_function_is_even(order in 2usize..24) {
        // 1/(4 cos^2(t/2)) is even, so odd Taylor coefficients vanish.
        let g = generating_function_series(order);
        for j in (1..order).step_by(2) {
            prop_assert!(g.coeff(j).unwrap().is_zero());
        }
    }

    #[test]
    fn odd_sums_alternate_in_sign(j in 1u32..12) {
        // zeta(-k) for odd k = 2j-1 has sign (-1)^j.
        let v = sum_powers(2 * j - 1).unwrap().value;
        prop_assert_eq!(v.is_negative(), j % 2 == 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn pf_representations_agree(center in 1.2f64..5.0, width in 0.3f64..1.0, p in prop::sample::select(vec![0u32, 2, 4]), amp in 0.2f64..3.0) {
        let w = width.min(center - 0.05).min(2.0 * std::f64::consts::PI - center - 0.05);
        let phi = Shifted {
            inner: divsum_core::distribution::Dilated { inner: Mollifier::bump(p).unwrap(), rate: 1.0 / w, amplitude: amp },
            offset: center,
        };
        let (lo, hi) = phi.support();
        prop_assert!(lo > 0.0 && hi < 2.0 * std::f64::consts::PI);
        let nm = Numerics::default();
        let rem = nm.pf_action_remainder(&phi).unwrap();
        let eps = nm.pf_action_epsilon(&phi, 10).unwrap();
        prop_assert!((rem - eps.extrapolated).norm() < 1e-6, "{} vs {}", rem, eps.extrapolated);
    }

    #[test]
    fn s_limit_is_a_quarter_for_stretched_mollifiers(stretch in 0.3f64..3.0, p in prop::sample::select(vec![0u32, 2, 4])) {
        // Any approximate identity built from a rescaled bump gives 1/4.
        let nm = Numerics::default();
        let base = divsum_core::distribution::Dilated::approximate_identity(Mollifier::bump(p).unwrap(), stretch);
        let l = nm
            .mollified_limit(|m| divsum_core::distribution::Dilated::approximate_identity(base.clone(), f64::from(m)), |f| Ok(nm.s_action(f)), 10)
            .unwrap();
        prop_assert!(l.converged);
        prop_assert!((l.extrapolated.re - 0.25).abs() < 1e-6 && l.extrapolated.im.abs() < 1e-12);
    }
}
