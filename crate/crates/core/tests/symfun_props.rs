use proptest::prelude::*;

use conformal_cones::cone::{ConeSpec, EigenTuple};
use conformal_cones::numerics::{gaussian, rng_from_seed};
use conformal_cones::symfun::{maxform_f0, mollified_f, Family, GaugeFn, LevelSet, SymFun};

fn family(n: usize) -> impl Strategy<Value = Family> {
    prop_oneof![
        (1..=n).prop_map(|k| Family::SigmaK { k }),
        (1..=n).prop_map(|k| Family::SigmaKRoot { k }),
        (1..n).prop_map(|p| Family::Gp { p }),
        (1..=n).prop_flat_map(move |p| (Just(p), 0..=n - p)).prop_map(|(p, q)| Family::LambdaPQ { p, q }),
        (-0.9..0.9f64).prop_map(|c| Family::Circular { c }),
        prop::collection::vec(0.0..2.0f64, n).prop_map(|mut w| {
            w.sort_by(|a, b| b.total_cmp(a));
            Family::OrderedLinear { weights: w }
        }),
    ]
}

/// A family function with a point of its cone and a shuffled copy of that point.
fn function_and_point() -> impl Strategy<Value = (SymFun, Vec<f64>, Vec<f64>)> {
    (2usize..=6)
        .prop_flat_map(|n| (family(n), Just(n), any::<u64>()))
        .prop_filter_map("admissible family", |(fam, n, seed)| {
            let f = SymFun::family(fam, n).ok()?;
            let mut rng = rng_from_seed(seed);
            let l = f.domain().sample_interior(&mut rng, 1).pop()?;
            Some((f, l.into_vec()))
        })
        .prop_flat_map(|(f, l)| (Just(f), Just(l.clone()), Just(l).prop_shuffle()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn evaluators_ignore_input_order((f, l, shuffled) in function_and_point()) {
        let a = f.value_unsorted(&l).unwrap();
        let b = f.value_unsorted(&shuffled).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()), "{}: {a} vs {b}", f.label());
    }

    #[test]
    fn homogeneous_of_stated_degree((f, l, _) in function_and_point(), t in 0.05..20.0f64) {
        let d = f.degree().unwrap();
        let l = EigenTuple::new(l).unwrap();
        let a = f.value(&l.scale(t)).unwrap();
        let b = t.powf(d) * f.value(&l).unwrap();
        prop_assert!((a - b).abs() <= 1e-10 * (1.0 + b.abs()), "{}: {a} vs {b}", f.label());
    }

    #[test]
    fn positive_on_its_cone((f, l, _) in function_and_point()) {
        prop_assert!(f.value_unsorted(&l).unwrap() > 0.0);
    }

    #[test]
    fn gauge_is_one_on_the_level_set(t in 0.2..3.0f64, k in 1usize..=3, seed in any::<u64>()) {
        let level = LevelSet::shifted_cone(&ConeSpec::gamma_k(3, k).unwrap(), t).unwrap();
        let pts = level.boundary_samples(20, seed).unwrap();
        let f = GaugeFn::new(level).unwrap();
        for x in pts {
            let v = f.evaluate(&x).unwrap();
            prop_assert!(v.in_cone);
            prop_assert!((v.value - 1.0).abs() <= 1e-8);
        }
    }

    /// With a gap of 2 between the two largest entries the ε-ball around
    /// the point stays in one linear branch of the max-form.
    #[test]
    fn mollified_matches_max_form_inside_a_branch(
        s in 0.05..=1.0f64,
        n in 2usize..=4,
        rest in prop::collection::vec(-3.0..3.0f64, 3),
        gap in 2.0..5.0f64,
    ) {
        let mut l = rest[..n - 1].to_vec();
        let top = l.iter().copied().fold(f64::NEG_INFINITY, f64::max) + gap;
        l.push(top);
        let l = EigenTuple::new(l).unwrap();
        let eps = 0.4 / (n as f64).sqrt();
        let a = mollified_f(s, eps, &l).unwrap();
        let b = maxform_f0(s, &l).unwrap();
        prop_assert!((a - b).abs() <= 1e-6, "{a} vs {b}");
    }
}

#[test]
fn ordered_linear_is_midpoint_convex() {
    let n = 5;
    let f = SymFun::family(Family::OrderedLinear { weights: vec![2.0, 1.5, 1.0, 0.5, 0.1] }, n).unwrap();
    let mut rng = rng_from_seed(7);
    let mut violations = 0;
    for _ in 0..10_000 {
        let x: Vec<f64> = (0..n).map(|_| 3.0 * gaussian(&mut rng)).collect();
        let y: Vec<f64> = (0..n).map(|_| 3.0 * gaussian(&mut rng)).collect();
        let m: Vec<f64> = x.iter().zip(&y).map(|(a, b)| 0.5 * (a + b)).collect();
        let (fx, fy, fm) =
            (f.value_unsorted(&x).unwrap(), f.value_unsorted(&y).unwrap(), f.value_unsorted(&m).unwrap());
        if fm > 0.5 * (fx + fy) + 1e-10 {
            violations += 1;
        }
    }
    assert_eq!(violations, 0);
}

#[test]
fn max_form_reference_values() {
    for n in 2..=6 {
        for s in [0.25, 0.5, 1.0] {
            let e = EigenTuple::ones(n).unwrap();
            assert!((maxform_f0(s, &e).unwrap() - (1.0 + s)).abs() <= 1e-14);
            let mut l = vec![-1.0; n];
            l[0] = s;
            assert!(maxform_f0(s, &EigenTuple::new(l).unwrap()).unwrap().abs() <= 1e-14);
        }
    }
}
