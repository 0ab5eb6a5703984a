use proptest::prelude::*;

use qwreath::basealg::BaseElt;
use qwreath::qwp::{Algebra, QwpElt};
use qwreath::scalar::{Scalar, ScalarRing};
use qwreath::symgroup::Perm;
use qwreath::Params;

fn ring() -> ScalarRing {
    ScalarRing::new(4, 5)
}

/// sum of c_j ζ^j (1 or s) with small rational c_j
fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-4i64..5, 1i64..4, 0i64..4, any::<bool>()), 0..5).prop_map(|terms| {
        let k = ring();
        let mut acc = k.zero();
        for (num, den, j, with_sqrt) in terms {
            let mut c = k.mul(&k.rational(num, den).unwrap(), &k.root_of_unity(j));
            if with_sqrt {
                c = k.mul(&c, &k.sqrt_q());
            }
            acc += &c;
        }
        acc
    })
}

fn algebra() -> Algebra {
    Algebra::from_params(&Params::new(5, 2, 0, 3, 1).unwrap()).unwrap()
}

fn perm_strategy(d: usize) -> impl Strategy<Value = Perm> {
    Just((1..=d).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Perm::from_one_line(&v).unwrap())
}

/// t^a x^e H_w with small exponents
fn monomial_strategy() -> impl Strategy<Value = (Vec<i64>, Vec<i32>, Perm)> {
    (prop::collection::vec(0i64..4, 3), prop::collection::vec(-1i32..2, 3), perm_strategy(3))
}

fn build(alg: &Algebra, (ts, xs, w): &(Vec<i64>, Vec<i32>, Perm)) -> QwpElt {
    let mut b: BaseElt = alg.base.one();
    for slot in 1..=3 {
        b = alg.base.mul(&b, &alg.base.t(slot, ts[slot - 1]));
        b = alg.base.mul(&b, &alg.base.x(slot, xs[slot - 1]));
    }
    alg.base_times_h(&b, w)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scalar_ring_axioms(a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
        let k = ring();
        prop_assert_eq!(k.mul(&a, &b), k.mul(&b, &a));
        prop_assert_eq!(k.mul(&k.mul(&a, &b), &c), k.mul(&a, &k.mul(&b, &c)));
        prop_assert_eq!(k.mul(&a, &(&b + &c)), &k.mul(&a, &b) + &k.mul(&a, &c));
        prop_assert_eq!(k.mul(&a, &k.one()), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn scalar_json_round_trip(a in scalar_strategy()) {
        let back = Scalar::from_json(&a.to_json()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn perm_word_round_trip(w in perm_strategy(5)) {
        let word = w.reduced_word();
        prop_assert_eq!(word.len(), w.length());
        prop_assert_eq!(Perm::from_word(5, &word).unwrap(), w.clone());
        prop_assert!(w.compose(&w.inverse()).is_identity());
    }

    #[test]
    fn product_is_associative(a in monomial_strategy(), b in monomial_strategy(), c in monomial_strategy()) {
        let alg = algebra();
        let (a, b, c) = (build(&alg, &a), build(&alg, &b), build(&alg, &c));
        prop_assert_eq!(alg.mul(&alg.mul(&a, &b), &c), alg.mul(&a, &alg.mul(&b, &c)));
    }

    #[test]
    fn element_json_round_trip(a in monomial_strategy(), b in monomial_strategy()) {
        let alg = algebra();
        let elt = build(&alg, &a).plus(&build(&alg, &b));
        prop_assert_eq!(alg.from_json(&alg.to_json(&elt)).unwrap(), elt);
    }
}
