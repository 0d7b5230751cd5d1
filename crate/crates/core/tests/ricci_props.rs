use proptest::prelude::*;

use conformal_cones::cone::{ConeSpec, EigenTuple};
use conformal_cones::conformal::{mobius_hessian, Bubble, ScalarField};
use conformal_cones::ricci::{convert_pair, schouten_to_ricci, LinearDictionary};
use conformal_cones::symfun::{Family, SymFun};

fn point(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-5.0..5.0f64, n)
}

proptest! {
    #[test]
    fn dictionary_round_trips((n, x) in (3usize..=8).prop_flat_map(|n| (Just(n), point(n)))) {
        let t = LinearDictionary::new(n).unwrap();
        let scale = 1.0 + x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for y in [t.apply(&t.apply_inverse(&x).unwrap()).unwrap(), t.apply_inverse(&t.apply(&x).unwrap()).unwrap()] {
            for (a, b) in y.iter().zip(&x) {
                prop_assert!((a - b).abs() <= 1e-12 * scale);
            }
        }
    }

    /// `T` is `(n−2)I` plus a shift along `e⃗`, so it keeps descending order.
    #[test]
    fn dictionary_preserves_order((n, x) in (3usize..=8).prop_flat_map(|n| (Just(n), point(n)))) {
        let l = EigenTuple::new(x).unwrap();
        let m = LinearDictionary::new(n).unwrap().apply(l.values()).unwrap();
        prop_assert!(m.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn bubbles_have_constant_ricci_eigenvalues(
        n in 3usize..=7,
        a in 0.5..2.0f64,
        b in 0.5..2.0f64,
        x in point(7),
    ) {
        let f = ScalarField::new(Bubble::new(a, b, vec![0.0; n]).unwrap());
        let l = mobius_hessian(&f, &x[..n], None).unwrap().eigenvalues;
        let ric = schouten_to_ricci(&l).unwrap();
        let want = 4.0 * (n as f64 - 1.0) * b * b / (a * a);
        for v in ric.values() {
            prop_assert!((v - want).abs() <= 1e-9 * want);
        }
    }

    /// `f(λ) = f̂(Tλ)` and `λ ∈ Γ ⇔ Tλ ∈ Γ̂`.
    #[test]
    fn converted_pairs_agree_with_the_hat_pair((n, x) in (3usize..=6).prop_flat_map(|n| (Just(n), point(n)))) {
        let fhat = SymFun::family(Family::SigmaK { k: 2 }, n).unwrap();
        let ghat = ConeSpec::gamma_k(n, 2).unwrap();
        let (f, g) = convert_pair(&fhat, &ghat).unwrap();
        let l = EigenTuple::new(x).unwrap();
        let tl = EigenTuple::new(LinearDictionary::new(n).unwrap().apply(l.values()).unwrap()).unwrap();
        let (a, b) = (f.value(&l).unwrap(), fhat.value(&tl).unwrap());
        prop_assert!((a - b).abs() <= 1e-10 * (1.0 + b.abs()));
        let margin = ghat.margin(&tl).unwrap();
        prop_assume!(margin.abs() > 1e-6);
        prop_assert_eq!(g.contains_open(l.values()), margin > 0.0);
    }
}

#[test]
fn dictionary_needs_three_dimensions() {
    assert!(LinearDictionary::new(2).is_err());
    assert!(LinearDictionary::new(3).unwrap().apply(&[1.0, 2.0]).is_err());
}
