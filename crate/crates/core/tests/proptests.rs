use jacobi_curves::exactpoly::{format_rational, gcd_in_lambda, parse_rational, ratio, BiPoly, UniPoly, Var};
use jacobi_curves::experiments::{run_campaign, sample_pencil, sample_rng, Campaign, Sampler};
use jacobi_curves::hensel::decide;
use jacobi_curves::pencil::JacobiPencil;
use proptest::prelude::*;

fn pencil_strategy(max_n: usize, nonzero_b: bool) -> impl Strategy<Value = JacobiPencil> {
    (1..=max_n).prop_flat_map(move |n| {
        let b = if nonzero_b {
            prop::collection::vec(prop_oneof![-9i64..=-1, 1i64..=9], n - 1).boxed()
        } else {
            prop::collection::vec(-9i64..=9, n - 1).boxed()
        };
        (prop::collection::vec(-9i64..=9, n), b)
            .prop_map(|(a, b)| JacobiPencil::from_ints(&a, &b).expect("lengths match"))
    })
}

fn upoly() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-20i64..=20, 0..6).prop_map(|c| UniPoly::from_ints(&c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn continuant_matches_determinant(p in pencil_strategy(6, false)) {
        prop_assert_eq!(p.continuant().to_w_form().unwrap(), p.charpoly_oracle().unwrap());
    }

    #[test]
    fn reversal_preserves_the_curve(p in pencil_strategy(6, false)) {
        let mut a = p.a().to_vec();
        let mut b = p.b().to_vec();
        a.reverse();
        b.reverse();
        prop_assert_eq!(JacobiPencil::new(a, b).unwrap().charpoly(), p.charpoly());
    }

    #[test]
    fn evaluation_is_a_ring_map(f in upoly(), g in upoly(), x in -7i64..=7, d in 1i64..=5) {
        let x = ratio(x, d);
        prop_assert_eq!((&f * &g).eval(&x), f.eval(&x) * g.eval(&x));
        prop_assert_eq!((&f + &g).eval(&x), f.eval(&x) + g.eval(&x));
    }

    #[test]
    fn gcd_divides_and_keeps_common_factors(f in upoly(), g in upoly(), h in upoly()) {
        prop_assume!(!f.is_zero() && !g.is_zero() && !h.is_zero());
        let (fg, fh) = (&f * &g, &f * &h);
        let d = fg.gcd(&fh);
        prop_assert!(fg.div_rem(&d).unwrap().1.is_zero());
        prop_assert!(fh.div_rem(&d).unwrap().1.is_zero());
        prop_assert!(d.degree() >= f.degree());
    }

    #[test]
    fn rationals_round_trip(n in -1000i64..=1000, d in 1i64..=1000) {
        let x = ratio(n, d);
        prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
    }

    #[test]
    fn polynomial_documents_round_trip(p in pencil_strategy(5, false)) {
        for f in [p.charpoly(), p.continuant()] {
            prop_assert_eq!(f.to_doc().to_poly().unwrap(), f);
        }
    }

    #[test]
    fn zero_coupling_factors_the_curve(p in pencil_strategy(6, false), cut in 0usize..5) {
        prop_assume!(p.n() >= 2);
        let i = cut % (p.n() - 1);
        let mut b = p.b().to_vec();
        b[i] = ratio(0, 1);
        let q = JacobiPencil::new(p.a().to_vec(), b).unwrap();
        let left = q.extract_block(1, i + 1).unwrap().charpoly();
        let right = q.extract_block(i + 2, q.n()).unwrap().charpoly();
        prop_assert_eq!(left.mul(&right).unwrap(), q.charpoly());
    }

    #[test]
    fn consecutive_continuants_are_coprime(p in pencil_strategy(6, true)) {
        prop_assume!(p.n() >= 2);
        let prev = p.extract_block(1, p.n() - 1).unwrap().continuant();
        let g = gcd_in_lambda(&p.continuant(), &prev).unwrap();
        prop_assert_eq!(g.deg_lambda(), Some(0));
    }

    #[test]
    fn decision_ignores_coupling_signs(p in pencil_strategy(5, true), flips in prop::collection::vec(any::<bool>(), 4)) {
        prop_assume!(p.has_distinct_diagonal());
        let b = p.b().iter().zip(flips.iter().cycle()).map(|(x, &f)| if f { -x.clone() } else { x.clone() }).collect();
        let q = JacobiPencil::new(p.a().to_vec(), b).unwrap();
        let (dp, dq) = (decide(&p).unwrap(), decide(&q).unwrap());
        prop_assert_eq!(dp.status, dq.status);
        prop_assert_eq!(dp.factor_degrees(), dq.factor_degrees());
        let product = BiPoly::product(dp.factors.iter().map(|f| &f.w_form), Var::W).unwrap();
        prop_assert_eq!(product, p.charpoly());
    }

    #[test]
    fn samplers_are_deterministic(seed in any::<u64>(), index in 0usize..1000) {
        for s in [Sampler::Generic, Sampler::Palindromic, Sampler::Scalar, Sampler::D3Stratum] {
            let n = if s == Sampler::D3Stratum { 3 } else { 5 };
            let x = sample_pencil(s, n, 9, &mut sample_rng(seed, index)).unwrap();
            let y = sample_pencil(s, n, 9, &mut sample_rng(seed, index)).unwrap();
            prop_assert_eq!(x, y);
        }
    }
}

#[test]
fn campaigns_are_reproducible() {
    let c = Campaign::sample("repeat", 4, Sampler::Connected, 4, 30, 11);
    let (mut x, mut y) = (run_campaign(&c).unwrap(), run_campaign(&c).unwrap());
    x.runtime_ms = 0;
    y.runtime_ms = 0;
    assert_eq!(x, y);
    assert_eq!(x.to_csv().unwrap(), y.to_csv().unwrap());
}
