mod common;

use common::{counts_from_bs, lpoly_from_bs, weil_traces};
use dmcurve::bounds::{defect_in_range, defect_report, dm_defect};
use dmcurve::classify::{check_covering_consistency, classify_counts, ClassificationVerdict};
use dmcurve::ff::{make_field, FieldDesc};
use dmcurve::intpoly::{
    functional_equation_check, is_q_weil, is_weil_lpoly, lpoly_to_profile, real_weil_transform, IntPoly,
};
use dmcurve::zeta::{alpha_stats, lpoly_from_counts, LPolynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use std::sync::OnceLock;

const QS: [i64; 12] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27];

/// (q, traces b_j) with every b_j^2 <= 4q, so prod (1 + b_j T + q T^2) is q-Weil.
fn weil_factors(max_g: usize) -> impl Strategy<Value = (i64, Vec<i64>)> {
    prop::sample::select(&QS[..]).prop_flat_map(move |q| {
        let traces = weil_traces(q);
        (Just(q), prop::collection::vec(prop::sample::select(traces), 1..=max_g))
    })
}

fn as_i64(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| i64::try_from(x).unwrap()).collect()
}

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn newton_round_trip((q, bs) in weil_factors(6)) {
        let l = lpoly_from_bs(q, &bs);
        let g = bs.len();
        let counts = as_i64(&lpoly_to_profile(&l, q, g).unwrap());
        prop_assert_eq!(lpoly_from_counts(q, g as u32, &counts).unwrap().poly, l);
    }

    #[test]
    fn weil_products_pass_and_obey_the_functional_equation((q, bs) in weil_factors(5)) {
        let l = lpoly_from_bs(q, &bs);
        prop_assert!(is_weil_lpoly(&l, q).unwrap().is_weil);
        prop_assert!(functional_equation_check(&l, q));
    }

    #[test]
    fn breaking_the_functional_equation_is_rejected((q, bs) in weil_factors(4), bump in 1i64..5) {
        let l = lpoly_from_bs(q, &bs);
        let mut c = l.coeffs().to_vec();
        let top = c.len() - 1;
        c[top] += bump;
        let broken = IntPoly::new(c);
        prop_assert!(!functional_equation_check(&broken, q));
        prop_assert!(LPolynomial::new(broken, q).is_err());
    }

    #[test]
    fn ds_and_dm_ensure_ihara_max_and_weil_extremes_are_dm((q, bs) in weil_factors(8)) {
        let g = bs.len() as i64;
        let (n1, n2) = counts_from_bs(q, &bs);
        // F_q-points are F_{q^2}-points, so no curve has N_1 > N_2
        prop_assume!(n1 <= n2);
        let v = classify_counts(q, g, n1, n2).unwrap();
        prop_assert_eq!(v.ihara_max, v.dm && v.ds);
        prop_assert!(!(v.weil_max || v.weil_min) || v.dm);
        if v.dm {
            prop_assert_eq!((q + 1 - n1) % g, 0);
            prop_assert!(bs.iter().all(|&b| b == bs[0]));
        }
        prop_assert!(defect_in_range(q, g, &dm_defect(q, g, n1, n2)));
    }

    #[test]
    fn alpha_statistics_match_the_traces((q, bs) in weil_factors(8)) {
        let g = bs.len() as i64;
        let (n1, n2) = counts_from_bs(q, &bs);
        let s = alpha_stats(q, g, n1, n2);
        // alpha_j = -b_j / 2
        let mean = r(-bs.iter().sum::<i64>(), 2 * g);
        let sum_sq = r(bs.iter().map(|b| b * b).sum::<i64>(), 4);
        let variance = &sum_sq / BigRational::from_integer(g.into()) - &mean * &mean;
        prop_assert_eq!(&s.mean, &mean);
        prop_assert_eq!(&s.sum_sq, &sum_sq);
        prop_assert_eq!(&s.variance, &variance);
        prop_assert!(s.variance >= r(0, 1));
        prop_assert_eq!(s.variance, BigRational::new(dm_defect(q, g, n1, n2), (4 * g * g).into()));
    }

    #[test]
    fn covering_consistency_on_subproducts((q, bs) in weil_factors(6), cut in 0usize..6, other in -10i64..=10) {
        let cut = cut.min(bs.len() - 1) + 1;
        let ly = lpoly_from_bs(q, &bs);
        prop_assert!(check_covering_consistency(&lpoly_from_bs(q, &bs[..cut]), &ly, q));
        if other * other <= 4 * q && !bs.contains(&other) {
            prop_assert!(!check_covering_consistency(&lpoly_from_bs(q, &[other]), &ly, q));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn real_weil_transform_re_expands(q in prop::sample::select(&QS[..]), upper in prop::collection::vec(-40i64..=40, 1..=6)) {
        let g = upper.len();
        let mut c = vec![0i64; 2 * g + 1];
        c[2 * g] = 1;
        c[g..2 * g].copy_from_slice(&upper);
        for k in 1..=g {
            c[g - k] = q.pow(k as u32) * c[g + k];
        }
        let f = IntPoly::from_i64(&c);
        let h = real_weil_transform(&f, q).unwrap().h;
        // T^g h(T + q/T) = sum h_i (T^2 + q)^i T^(g-i)
        let shift = IntPoly::from_i64(&[q, 0, 1]);
        let mut back = IntPoly::zero();
        for (i, hi) in h.coeffs().iter().enumerate() {
            let mut mono = vec![BigInt::from(0); g - i + 1];
            mono[g - i] = hi.clone();
            back = &back + &(&shift.pow(i as u32) * &IntPoly::new(mono));
        }
        prop_assert_eq!(back, f.clone());
        prop_assert_eq!(is_q_weil(&f, q).unwrap().functional_equation, true);
    }
}

/// Covers the full-table, log-table and slow arithmetic paths.
fn fields() -> &'static [FieldDesc] {
    static FIELDS: OnceLock<Vec<FieldDesc>> = OnceLock::new();
    FIELDS.get_or_init(|| {
        [(2, 1), (3, 1), (2, 3), (5, 2), (3, 4), (2, 8), (1009, 1), (2, 11), (7, 4), (3, 13), (2, 24), (5, 11)]
            .iter()
            .map(|&(p, n)| make_field(p, n, None).unwrap())
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn field_axioms(idx in 0usize..12, seeds in prop::array::uniform3(any::<u64>())) {
        let f = &fields()[idx];
        let [a, b, c] = seeds.map(|s| s % f.q());
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
        prop_assert_eq!(f.pow(a, f.q()), a);
        match f.inv(a) {
            Some(i) => prop_assert_eq!(f.mul(a, i), f.one()),
            None => prop_assert_eq!(a, f.zero()),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn reports_survive_json((q, bs) in weil_factors(6)) {
        let g = bs.len() as i64;
        let (n1, n2) = counts_from_bs(q, &bs);
        prop_assume!(n1 <= n2);
        let rep = defect_report(q, g, n1, n2).unwrap();
        let text = serde_json::to_string(&rep).unwrap();
        prop_assert_eq!(serde_json::from_str::<dmcurve::bounds::DefectReport>(&text).unwrap(), rep);
        let mut v = classify_counts(q, g, n1, n2).unwrap();
        v.dm_lpoly = None;
        v.notes.clear();
        let text = serde_json::to_string(&v).unwrap();
        prop_assert_eq!(serde_json::from_str::<ClassificationVerdict>(&text).unwrap(), v);
        let l = lpoly_from_bs(q, &bs);
        let text = serde_json::to_string(&l).unwrap();
        prop_assert_eq!(serde_json::from_str::<IntPoly>(&text).unwrap(), l);
    }
}
