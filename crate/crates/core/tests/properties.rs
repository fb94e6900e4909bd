//! Randomized properties over small parameter sets: the two construction
//! routes agree, construction is path independent, orthogonality holds,
//! the eigen-relation holds on the truncated operator model, and every
//! serialized form round-trips. Case counts are kept small because each
//! case is an exact-arithmetic computation, not a cheap predicate.

use proptest::prelude::*;

use multimeixner::fock::checks as fock;
use multimeixner::genfun;
use multimeixner::index::MultiIndex;
use multimeixner::moments;
use multimeixner::params::ParamsFile;
use multimeixner::poly::PolyX;
use multimeixner::relations;
use multimeixner::report::all_pass;
use multimeixner::suite;
use multimeixner::{MeixnerTable, Params, Rational};

/// Parameters with `r` weights: random rational `beta` in (0, 6] and
/// pairwise-distinct rational `c_i` in (0, 1).
fn arb_params(r: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Params> {
    r.prop_flat_map(|r| {
        let beta = (1i64..=6, 1i64..=3).prop_map(|(p, q)| Rational::new(p, q));
        let cs = proptest::collection::vec((1i64..=11, 2i64..=12), r).prop_filter_map(
            "c values must lie in (0,1) and be pairwise distinct",
            |pairs| {
                let mut cs: Vec<Rational> = Vec::new();
                for (p, q) in pairs {
                    if p >= q {
                        return None;
                    }
                    let c = Rational::new(p, q);
                    if cs.contains(&c) {
                        return None;
                    }
                    cs.push(c);
                }
                Some(cs)
            },
        );
        (beta, cs).prop_map(|(beta, cs)| Params::new(beta, cs).expect("strategy output is valid"))
    })
}

/// A multi-index for `params` with total degree at most `bound`.
fn arb_index(params: &Params, bound: u32) -> impl Strategy<Value = MultiIndex> {
    let r = params.r();
    proptest::collection::vec(0u32..=bound, r)
        .prop_filter("total degree within bound", move |v| {
            v.iter().sum::<u32>() <= bound
        })
        .prop_map(MultiIndex::new)
}

fn arb_rational(range: i64) -> impl Strategy<Value = Rational> {
    (-range..=range, 1i64..=4).prop_map(|(p, q)| Rational::new(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn construction_routes_agree(params in arb_params(1..=2)) {
        let table = MeixnerTable::new(params);
        let reports = genfun::check_genfun(&table, 3).unwrap();
        prop_assert!(all_pass(&reports));
    }

    #[test]
    fn construction_is_path_independent(
        (params, n) in arb_params(2..=3)
            .prop_flat_map(|p| { let n = arb_index(&p, 4); (Just(p), n) })
    ) {
        let table = MeixnerTable::new(params);
        let paths = suite::all_paths(&n);
        let report = relations::check_path_independence(&table, &n, &paths).unwrap();
        prop_assert!(report.pass, "{}", report.summary_line());
    }

    #[test]
    fn orthogonality_holds_at_random_parameters(
        (params, n) in arb_params(1..=2)
            .prop_flat_map(|p| { let n = arb_index(&p, 3); (Just(p), n) })
    ) {
        let table = MeixnerTable::new(params.clone());
        let kernel = moments::MomentKernel::new(params.beta(), 2 * (n.total() as usize) + 2);
        for i in 1..=params.r() {
            let reports = moments::check_orthogonality(&table, &kernel, &n, i).unwrap();
            prop_assert!(all_pass(&reports));
        }
    }

    #[test]
    fn eigen_relation_holds_at_random_parameters_and_points(
        params in arb_params(1..=2),
        x in arb_rational(6),
    ) {
        let reports = fock::check_eigen(&params, 4, &[x]).unwrap();
        prop_assert!(all_pass(&reports));
    }

    #[test]
    fn params_file_round_trips(params in arb_params(1..=3)) {
        let text = serde_json::to_string(&ParamsFile::from(&params)).unwrap();
        let back: ParamsFile = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.validate().unwrap(), params);
    }

    #[test]
    fn polynomial_coefficient_strings_round_trip(
        (params, n) in arb_params(1..=2)
            .prop_flat_map(|p| { let n = arb_index(&p, 4); (Just(p), n) })
    ) {
        let table = MeixnerTable::new(params);
        let poly = table.poly(&n);
        let back = PolyX::from_coeff_strings(&poly.coeff_strings()).unwrap();
        prop_assert_eq!(back, (*poly).clone());
    }

    #[test]
    fn rational_strings_round_trip(x in arb_rational(1000)) {
        let back: Rational = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
    }
}
