use proptest::prelude::*;

use qsupercong::catalog::{Check, RunConfig};
use qsupercong::cyclotomic::{cyclotomic, divisors, CyclotomicCache};
use qsupercong::factored::CycloProduct;
use qsupercong::padic::{padic_gamma, PadicResidue};
use qsupercong::polyarith::{poly_gcd, DensePolynomial, LaurentPolynomial, Rational};
use qsupercong::qobjects::q_binomial;
use qsupercong::residue::ResidueRing;
use qsupercong::sweep::{run_instances, Instance};
use qsupercong::verifier::{params, verify_karlsson_minton, Arithmetic};

type Poly = DensePolynomial<Rational>;

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-6i64..=6, 0..8).prop_map(|c| Poly::from_i64(&c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn divrem_reconstructs(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.divrem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn multiplication_distributes(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn cyclotomic_product_over_divisors(n in 1u64..40) {
        let mut acc = Poly::one();
        for m in divisors(n) {
            acc = &acc * &cyclotomic::<Rational>(m as i64).unwrap();
        }
        let mut expect = vec![0i64; n as usize + 1];
        expect[0] = -1;
        expect[n as usize] = 1;
        prop_assert_eq!(acc, Poly::from_i64(&expect));
    }

    #[test]
    fn one_minus_q_pow_factors_exactly(e in 1i64..30) {
        let mut cache = CyclotomicCache::<Rational>::new();
        let f = CycloProduct::one_minus_q_pow(e).unwrap().to_laurent(&mut cache).unwrap();
        prop_assert_eq!(f, LaurentPolynomial::one_minus(Rational::from_integer(1.into()), e));
    }

    #[test]
    fn reduction_is_multiplicative(n in 2i64..12, a in poly(), b in poly()) {
        let ring = ResidueRing::<Rational>::phi_squared(n).unwrap();
        let lhs = ring.reduce_dense(&(&a * &b));
        let rhs = ring.reduce_dense(&a) * ring.reduce_dense(&b);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn units_invert(n in 2i64..12, a in poly()) {
        let ring = ResidueRing::<Rational>::phi_squared(n).unwrap();
        let phi = cyclotomic::<Rational>(n).unwrap();
        prop_assume!(!a.is_zero() && poly_gcd(&a, &phi).degree() == Some(0));
        let x = ring.reduce_dense(&a);
        let y = x.invert().unwrap();
        prop_assert!((x * y).is_one());
    }

    #[test]
    fn qbinomial_symmetry_and_q_one(n in 0u64..14, k in 0u64..14) {
        prop_assume!(k <= n);
        let a = q_binomial::<Rational>(n, k as i64);
        prop_assert_eq!(&a, &q_binomial::<Rational>(n, (n - k) as i64));
        let one = Rational::from_integer(1.into());
        let binom = (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1));
        prop_assert_eq!(a.eval(&one), Rational::from_integer(binom.into()));
    }

    #[test]
    fn gamma_functional_equation(p in prop::sample::select(vec![3u64, 5, 7, 11, 13]), x in 0i128..500) {
        let xr = PadicResidue::new(p, 2, x);
        let lhs = padic_gamma(&PadicResidue::new(p, 2, x + 1)).unwrap();
        let g = padic_gamma(&xr).unwrap();
        let rhs = if x % p as i128 == 0 { g.neg() } else { xr.neg().mul(&g) };
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn karlsson_minton_holds_at_any_seed(list in prop::collection::vec(0u64..3, 1..3), seed in any::<u64>()) {
        let res = verify_karlsson_minton(&list, 2, seed, Arithmetic::Exact);
        prop_assert!(res.holds(), "{:?}", res);
    }

    #[test]
    fn odd_squared_congruence_holds(d in prop::sample::select(vec![3i64, 5, 7]), l in 1i64..3) {
        let n = l * d - 1;
        let res = Check::from_id("THM12").unwrap().run(&params(&[("d", d), ("n", n)]), &RunConfig::default()).unwrap();
        prop_assert!(res.holds(), "{:?}", res);
    }

    #[test]
    fn sweep_order_ignores_input_order(mut ns in prop::collection::vec(2i64..40, 1..10)) {
        let check = Check::from_id("BRACKET_FACTORIZATION").unwrap();
        let build = |ns: &[i64]| -> Vec<Instance> {
            ns.iter().map(|&n| Instance::new(check, params(&[("n", n)]))).collect()
        };
        let cfg = RunConfig::default();
        let strip = |v: Vec<qsupercong::verifier::CheckResult>| -> Vec<_> {
            v.into_iter().map(|r| (r.id, r.params, r.status)).collect()
        };
        let a = strip(run_instances(&build(&ns), &cfg).unwrap());
        ns.reverse();
        let b = strip(run_instances(&build(&ns), &cfg).unwrap());
        prop_assert_eq!(a, b);
    }
}
