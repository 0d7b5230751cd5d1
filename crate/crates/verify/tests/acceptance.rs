//! Acceptance suite: one line per criterion, `PASS` or `FAIL`, with the
//! measured quantity. Exits non-zero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use rand::Rng;

use conformal_cones::cone::{ConeKind, ConeSpec};
use conformal_cones::conformal::{
    apply_mobius, mobius_hessian, Bubble, Cubic, DerivativeMethod, Domain, MobiusGenerator, MobiusMap, ScalarField,
};
use conformal_cones::counterex::{
    existence_predicate, gradient_blowup, integrate_ode, nonbubble_entire, sigma_half_constant, singular_profile,
    BlowupKind, Existence, OdeSetup, SingularKind, NONBUBBLE_POINTS, NONBUBBLE_WINDOW,
};
use conformal_cones::numerics::{fd_gradient, gaussian, random_orthogonal, rng_from_seed, Matrix};
use conformal_cones::radial::{
    cone_boundary_residual, lipschitz_gap, solve_dirichlet, DirichletAnnulus, RadialFamily, RadialProfile, Regularity,
};
use conformal_cones::ricci::{bubble_constants, BubbleQuantity, LinearDictionary};
use conformal_cones::symfun::{convex_extend, normal_identity_check, Family, GaugeFn, LevelSet, SymFun};

use common::Golden;

const BUBBLE_ANALYTIC: f64 = 1e-9;
const BUBBLE_FD: f64 = 1e-5;
const MU_TABLE: f64 = 1e-8;
const DUALITY: f64 = 1e-8;
const MOBIUS: f64 = 1e-7;
const RADIAL_RESIDUAL: f64 = 1e-10;
const RADIAL_JET: f64 = 1e-12;
const DIRICHLET_BOUNDARY: f64 = 1e-12;
const DIRICHLET_CONE: f64 = 1e-9;
const LIPSCHITZ_CEILING: f64 = 0.02;
const GOLDEN_REL: f64 = 1e-9;
const ODE_DRIFT: f64 = 1e-6;
const ODE_BUDGET: Duration = Duration::from_secs(30);
const NONBUBBLE_RESIDUAL: f64 = 1e-6;
const NONBUBBLE_FIT_FLOOR: f64 = 0.1;
const NONBUBBLE_GOLDEN_REL: f64 = 1e-6;
const BLOWUP_IDENTITY: f64 = 1e-8;
const GAUGE_BOUNDARY: f64 = 1e-8;
const GAUGE_HOMOGENEITY: f64 = 1e-10;
const GAUGE_NORMAL: f64 = 1e-5;
const CONVEX_SLACK: f64 = 1e-10;
const PARTIAL_FLOOR: f64 = 1e-3;
const DICTIONARY_ROUNDTRIP: f64 = 1e-12;
const CURVATURE_CONSTANT: f64 = 1e-9;
const SINGULAR_DIRECTION: f64 = 1e-10;

type Outcome = Result<(bool, String), String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// `|a − b|` with `∞ = ∞`.
fn gap(a: f64, b: f64) -> f64 {
    if a.is_infinite() && b.is_infinite() && a.signum() == b.signum() {
        0.0
    } else {
        (a - b).abs()
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

fn random_vec<R: Rng>(rng: &mut R, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(lo..hi)).collect()
}

fn frobenius_gap(f: &ScalarField, x: &[f64], c: f64, m: DerivativeMethod) -> Result<f64, String> {
    Ok(mobius_hessian(f, x, Some(m)).map_err(err)?.matrix.add_identity(-c).frobenius_norm())
}

fn c01_bubble_identity() -> Outcome {
    let mut rng = rng_from_seed(101);
    let (mut wa, mut wf) = (0.0f64, 0.0f64);
    for n in 2..=6 {
        for _ in 0..20 {
            let (a, b) = (rng.gen_range(0.5..2.0), rng.gen_range(0.5..2.0));
            let center = random_vec(&mut rng, n, -1.0, 1.0);
            let x = random_vec(&mut rng, n, -1.5, 1.5);
            let bubble = Bubble::new(a, b, center).map_err(err)?;
            let c = bubble.hessian_constant();
            let f = ScalarField::new(bubble);
            wa = wa.max(frobenius_gap(&f, &x, c, DerivativeMethod::Analytic)?);
            wf = wf.max(frobenius_gap(&f, &x, c, DerivativeMethod::FiniteDifference)?);
        }
    }
    Ok((wa <= BUBBLE_ANALYTIC && wf <= BUBBLE_FD, format!("analytic {wa:.2e}, fd {wf:.2e}")))
}

fn c02_cone_table() -> Outcome {
    let mut worst = 0.0f64;
    for n in 2..=8 {
        for k in 1..=n {
            let cone = ConeSpec::gamma_k(n, k).map_err(err)?;
            let plus = (n - k) as f64 / k as f64;
            // Γ_1 reaches (c, −1, …, −1) once c ≥ n − 1; for k ≥ 2 it never does.
            let minus = if k == 1 { (n - 1) as f64 } else { f64::INFINITY };
            let mp = cone.mu_plus().map_err(err)?;
            let mm = cone.mu_minus().map_err(err)?;
            let bp = cone.mu_plus_bisect().map_err(err)?.value;
            let bm = cone.mu_minus_bisect().map_err(err)?.value;
            for d in [gap(mp, plus), gap(mm, minus), gap(bp, mp), gap(bm, mm)] {
                worst = worst.max(d);
            }
        }
    }
    Ok((worst <= MU_TABLE, format!("36 cones, worst gap {worst:.2e}")))
}

fn random_cone<R: Rng>(rng: &mut R, i: usize) -> Result<ConeSpec, String> {
    let n = rng.gen_range(2..=7);
    let kind = match i % 6 {
        0 => ConeKind::GammaK(rng.gen_range(1..=n)),
        1 => ConeKind::NegDualGammaK(rng.gen_range(1..=n)),
        2 => ConeKind::OrderedLinear(random_vec(rng, n, 0.0, 2.0)),
        3 => ConeKind::Circular(rng.gen_range(-1.0..1.0)),
        4 => ConeKind::ExtremalLargest(rng.gen_range(0.0..6.0)),
        _ => ConeKind::ExtremalSmallest(rng.gen_range(0.0..6.0)),
    };
    ConeSpec::new(n, kind).map_err(err)
}

fn c03_duality() -> Outcome {
    let mut rng = rng_from_seed(103);
    let mut worst = 0.0f64;
    for i in 0..50 {
        let cone = random_cone(&mut rng, i)?;
        let dual = cone.negation_dual();
        worst = worst.max(gap(cone.mu_plus().map_err(err)?, dual.mu_minus().map_err(err)?));
        worst = worst.max(gap(cone.mu_minus().map_err(err)?, dual.mu_plus().map_err(err)?));
    }
    Ok((worst <= DUALITY, format!("50 cones, worst gap {worst:.2e}")))
}

fn random_field<R: Rng>(rng: &mut R, n: usize, i: usize) -> Result<ScalarField, String> {
    if i % 2 == 0 {
        let b = Bubble::new(rng.gen_range(0.5..2.0), rng.gen_range(0.5..2.0), random_vec(rng, n, -0.5, 0.5));
        return Ok(ScalarField::new(b.map_err(err)?));
    }
    let g = random_vec(rng, n, -0.5, 0.5);
    let q = Matrix::from_fn(n, |_, _| 0.3 * gaussian(rng)).symmetrized();
    let mut t = vec![0.0; n * n * n];
    let base = random_vec(rng, n * n * n, -0.1, 0.1);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let mut idx = [a, b, c];
                idx.sort_unstable();
                t[(a * n + b) * n + c] = base[(idx[0] * n + idx[1]) * n + idx[2]];
            }
        }
    }
    Ok(ScalarField::new(Cubic::new(rng.gen_range(-0.5..0.5), g, q, t, Domain::all()).map_err(err)?))
}

fn random_map<R: Rng>(rng: &mut R, n: usize, i: usize) -> Result<MobiusMap, String> {
    let mut gens = Vec::new();
    for k in 0..3 {
        let pick = if k == 1 && i % 2 == 0 { 3 } else { rng.gen_range(0..4) };
        gens.push(match pick {
            0 => MobiusGenerator::Translation { t: random_vec(rng, n, -0.5, 0.5) },
            1 => MobiusGenerator::Dilation { a: rng.gen_range(0.5..2.0) },
            2 => MobiusGenerator::Rotation { o: random_orthogonal(rng, n) },
            _ => MobiusGenerator::Inversion,
        });
    }
    MobiusMap::new(n, gens).map_err(err)
}

fn c04_mobius_invariance() -> Outcome {
    let mut rng = rng_from_seed(104);
    let (mut worst, mut done, mut inversions) = (0.0f64, 0, 0);
    let mut attempts = 0;
    while done < 100 && attempts < 1000 {
        attempts += 1;
        let n = rng.gen_range(2..=5);
        let v = random_field(&mut rng, n, done)?;
        let phi = random_map(&mut rng, n, done)?;
        let x = random_vec(&mut rng, n, -1.5, 1.5);
        let Ok(y) = phi.apply(&x) else { continue };
        if conformal_cones::numerics::linalg::norm(&y) > 5.0 {
            continue;
        }
        let w = apply_mobius(&v, &phi).map_err(err)?;
        let (Ok(lhs), Ok(rhs)) = (mobius_hessian(&w, &x, None), mobius_hessian(&v, &y, None)) else { continue };
        let d = lhs.eigenvalues.max_abs_diff(&rhs.eigenvalues) / (1.0 + rhs.eigenvalues.norm());
        worst = worst.max(d);
        done += 1;
        if phi.generators().iter().any(|g| matches!(g, MobiusGenerator::Inversion)) {
            inversions += 1;
        }
    }
    let ok = done == 100 && worst <= MOBIUS && inversions > 0;
    Ok((ok, format!("{done} triples ({inversions} with inversions), worst relative gap {worst:.2e}")))
}

fn log_radii(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..count).map(|i| (a + (b - a) * (i as f64 + 0.5) / count as f64).exp()).collect()
}

fn c05_radial_classification() -> Outcome {
    let mut rng = rng_from_seed(105);
    let mut worst = 0.0f64;
    let mut sign_errors = 0;
    let mut consistency = 0.0f64;
    // (case label, expected sign of ν)
    let cases: [(&str, f64); 4] = [("a", 1.0), ("b", 1.0), ("c", -1.0), ("d", -1.0)];
    for (label, sign) in cases {
        for _ in 0..10 {
            let c1 = rng.gen_range(-2.0..2.0);
            let (family, mu) = match label {
                "a" => (RadialFamily::LogLinear { c1, c2: rng.gen_range(-1.99..-0.01) }, 1.0),
                "c" => {
                    let c2 = if rng.gen_bool(0.5) { rng.gen_range(0.01..3.0) } else { rng.gen_range(-5.0..-2.01) };
                    (RadialFamily::LogLinear { c1, c2 }, 1.0)
                }
                _ => {
                    let mu = if rng.gen_bool(0.5) { rng.gen_range(0.0..0.95) } else { rng.gen_range(1.05..6.0) };
                    let (p, q) = (rng.gen_range(0.1..3.0), rng.gen_range(0.1..3.0));
                    if label == "b" {
                        (RadialFamily::PowerLogPlus { mu, c3: p, c4: q }, mu)
                    } else if rng.gen_bool(0.5) {
                        (RadialFamily::PowerLogMinus { mu, c7: p, c8: -q }, mu)
                    } else {
                        (RadialFamily::PowerLogMinus { mu, c7: -p, c8: q }, mu)
                    }
                }
            };
            let prof = RadialProfile::new(family, rng.gen_range(0.5..2.0), c1).map_err(err)?;
            let (lo, hi) = prof.domain;
            let mut lo = if lo > 0.0 { lo * 1.01 } else { 1e-3 };
            let mut hi = if hi.is_finite() { hi * 0.99 } else { 1e3 };
            if lo >= hi {
                // Domain edge outside the default window.
                if prof.domain.0 > 0.0 {
                    hi = lo * 1e3;
                } else {
                    lo = hi * 1e-3;
                }
            }
            for r in log_radii(lo, hi, 100) {
                let p = prof.parts(r).map_err(err)?;
                worst = worst.max(p.residual(mu));
                let (_, d1, d2) = prof.jet(r).map_err(err)?;
                let size = d2.abs() + d1 * d1 + (d1 / r).abs();
                let from_jet = ((p.big_v + d2 - 0.5 * d1 * d1).abs()).max((p.nu + d1 / r + 0.5 * d1 * d1).abs());
                consistency = consistency.max(from_jet / size);
                if p.nu * sign <= 0.0 {
                    sign_errors += 1;
                }
            }
        }
    }
    let ok = worst <= RADIAL_RESIDUAL && sign_errors == 0 && consistency <= RADIAL_JET;
    Ok((ok, format!("40 profiles x 100 radii, residual {worst:.2e}, jet consistency {consistency:.1e}, nu sign errors {sign_errors}")))
}

/// The solvability rule on annuli, from `(μ⁺, μ⁻)`, `s = β − α` and `L = log(b/a)`.
fn expected_regularity(mu_plus: f64, mu_minus: f64, s: f64, l: f64) -> Regularity {
    let band = 1e-12 * (1.0 + s.abs() + l);
    if s.abs() <= band || (s + 2.0 * l).abs() <= band {
        Regularity::Smooth
    } else if s < 0.0 && s > -2.0 * l {
        if mu_plus.is_infinite() {
            Regularity::LipschitzKink
        } else {
            Regularity::Smooth
        }
    } else if mu_minus.is_infinite() {
        Regularity::Unsolvable
    } else {
        Regularity::Smooth
    }
}

fn c06_dirichlet_matrix() -> Outcome {
    let cones = [
        ("(1,1)", ConeSpec::gamma_k(2, 1)),
        ("(3,3)", ConeSpec::gamma_k(4, 1)),
        ("(1.5,inf)", ConeSpec::gamma_k(5, 2)),
        ("(inf,1.5)", ConeSpec::neg_dual_gamma_k(5, 2)),
        ("(inf,inf)", ConeSpec::ordered_linear(vec![0.0, 1.0, 0.0])),
    ];
    let (mut mismatches, mut solved, mut wb, mut wc) = (0, 0, 0.0f64, 0.0f64);
    let mut kinds = std::collections::BTreeSet::new();
    for (_, cone) in cones {
        let cone = cone.map_err(err)?;
        let (mp, mm) = (cone.mu_plus().map_err(err)?, cone.mu_minus().map_err(err)?);
        for i in 0..21 {
            for k in 0..21 {
                let s = -3.0 + 0.25 * i as f64;
                let l = 0.125 * (k + 1) as f64;
                let alpha = 0.3;
                let prob = DirichletAnnulus::new(1.0, l.exp(), alpha, alpha + s).map_err(err)?;
                let rep = solve_dirichlet(&cone, &prob).map_err(err)?;
                let want = expected_regularity(mp, mm, s, l);
                kinds.insert(format!("{want:?}"));
                if rep.regularity != want {
                    mismatches += 1;
                    continue;
                }
                let Some(p) = rep.profile else { continue };
                solved += 1;
                let (ra, rb) = rep.boundary_residual.unwrap_or((f64::INFINITY, f64::INFINITY));
                wb = wb.max(ra).max(rb);
                for j in 1..20 {
                    let r = (l * j as f64 / 20.0).exp();
                    if p.kink().is_some_and(|c| (c - r).abs() < 1e-9) {
                        continue;
                    }
                    wc = wc.max(cone_boundary_residual(&cone, &p, r).map_err(err)?);
                }
            }
        }
    }
    let ok = mismatches == 0 && wb <= DIRICHLET_BOUNDARY && wc <= DIRICHLET_CONE && kinds.len() == 3;
    Ok((
        ok,
        format!(
            "5 cones x 441 cells, {mismatches} verdict mismatches, {solved} solved, boundary {wb:.2e}, cone {wc:.2e}"
        ),
    ))
}

fn c07_lipschitz_limit(golden: &Golden) -> Outcome {
    let mus = [2.0, 5.0, 10.0, 50.0];
    let gaps: Vec<f64> = mus.iter().map(|&m| lipschitz_gap(m, 1000)).collect::<Result<_, _>>().map_err(err)?;
    let decreasing = gaps.windows(2).all(|w| w[1] < w[0]);
    let mut golden_gap = 0.0f64;
    for (m, g) in mus.iter().zip(&gaps) {
        golden_gap = golden_gap.max(rel(*g, golden.lipschitz_gap(*m)));
    }
    let last = gaps[3];
    let ok = decreasing && golden_gap <= GOLDEN_REL && last < LIPSCHITZ_CEILING;
    Ok((ok, format!("gaps {gaps:.4?}, decreasing {decreasing}, golden rel {golden_gap:.1e}, mu=50 gap {last:.5} vs ceiling {LIPSCHITZ_CEILING}")))
}

/// At least 0.1 from every clause boundary of the existence rule.
fn clear_of_boundaries(s: &OdeSetup) -> bool {
    let g = s.gamma;
    let mut edges = vec![-1.0, 1.0];
    if s.w0 != 0.0 {
        edges.push(-1.0 - 2.0 * (2.0 * s.v0).exp() / (s.w0 * s.w0));
    }
    edges.iter().all(|e| (g - e).abs() >= 0.1)
}

fn c08_ode_agreement() -> Outcome {
    let mut rng = rng_from_seed(108);
    let start = Instant::now();
    let (mut agree, mut total, mut worst, mut finite) = (0, 0, 0.0f64, 0);
    while total < 100 {
        let s =
            OdeSetup::new(rng.gen_range(-6.0..3.0), rng.gen_range(-1.0..1.0), rng.gen_range(-2.0..2.0)).map_err(err)?;
        if !clear_of_boundaries(&s) {
            continue;
        }
        total += 1;
        let tr = integrate_ode(&s, 200.0, 1e8).map_err(err)?;
        let want = existence_predicate(&s);
        if want == Existence::FiniteTime {
            finite += 1;
        }
        if tr.existence() == want {
            agree += 1;
        }
        worst = worst.max(tr.drift);
    }
    let took = start.elapsed();
    let ok = agree == total && worst <= ODE_DRIFT && took <= ODE_BUDGET;
    Ok((
        ok,
        format!("{agree}/{total} agree ({finite} finite-time), worst drift {worst:.2e}, {:.1} s", took.as_secs_f64()),
    ))
}

fn c09_nonbubble(golden: &Golden) -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for s in [0.5, 1.0] {
        for n in [3, 4] {
            let nb = nonbubble_entire(s, n, 0.0, 0.0, NONBUBBLE_WINDOW).map_err(err)?;
            let rep = nb.verify(NONBUBBLE_POINTS).map_err(err)?;
            let g = golden.nonbubble(s, n);
            let dist_rel = rel(rep.constant_fit_distance, g.distance);
            ok &= rep.max_residual <= NONBUBBLE_RESIDUAL
                && rep.constant_fit_distance > NONBUBBLE_FIT_FLOOR
                && dist_rel <= NONBUBBLE_GOLDEN_REL
                && rep.min_theta >= -1e-10;
            lines.push(format!("s={s} n={n}: residual {:.1e}, fit {:.4}", rep.max_residual, rep.constant_fit_distance));
        }
    }
    Ok((ok, lines.join("; ")))
}

fn c10_gradient_blowup(golden: &Golden) -> Outcome {
    let c4 = sigma_half_constant(4).map_err(err)?;
    let mut devs = Vec::new();
    let mut ok = (c4 - golden.sigma_half_constant(4)).abs() == 0.0;
    let mut worst_identity = 0.0f64;
    for j in [5, 10, 20] {
        let fam = gradient_blowup(BlowupKind::NegSigmaHalf, 4, j).map_err(err)?;
        let rep = fam.verify(100).map_err(err)?;
        let id = rep.check("identity").map(|c| c.value).unwrap_or(f64::INFINITY);
        worst_identity = worst_identity.max(id);
        ok &= id <= BLOWUP_IDENTITY && rep.min_gradient >= j as f64 && rep.all_pass();
        devs.push(rep.sup_deviation);
    }
    ok &= devs.windows(2).all(|w| w[1] < w[0]);
    Ok((
        ok,
        format!(
            "c4 = {c4}, identity {worst_identity:.1e}, sup deviations {:?}",
            devs.iter().map(|d| format!("{d:.3e}")).collect::<Vec<_>>()
        ),
    ))
}

fn c11_gauge() -> Outcome {
    let levels = [
        LevelSet::shifted_cone(&ConeSpec::gamma_k(3, 2).map_err(err)?, 1.0).map_err(err)?,
        LevelSet::smoothed_halfspace(3, 0.5).map_err(err)?,
    ];
    let (mut wb, mut wh, mut wn) = (0.0f64, 0.0f64, 0.0f64);
    let mut rng = rng_from_seed(111);
    for level in levels {
        let pts = level.boundary_samples(100, 11).map_err(err)?;
        let f = GaugeFn::new(level).map_err(err)?;
        let sf = SymFun::new(f.clone());
        for x in &pts {
            wb = wb.max((f.evaluate(x).map_err(err)?.value - 1.0).abs());
            wn = wn.max(normal_identity_check(&f, x).map_err(err)?.residual);
        }
        let cone = sf.domain();
        for l in cone.sample_interior(&mut rng, 100) {
            let t = rng.gen_range(0.1..10.0);
            let a = sf.value(&l.scale(t)).map_err(err)?;
            let b = t * sf.value(&l).map_err(err)?;
            wh = wh.max((a - b).abs() / (1.0 + b.abs()));
        }
    }
    let ok = wb <= GAUGE_BOUNDARY && wh <= GAUGE_HOMOGENEITY && wn <= GAUGE_NORMAL;
    Ok((ok, format!("boundary {wb:.1e}, homogeneity {wh:.1e}, normal identity {wn:.1e}")))
}

fn c12_convex_extension() -> Outcome {
    let n = 3;
    let f = SymFun::family(Family::SigmaK { k: 1 }, n).map_err(err)?;
    let ext = SymFun::new(convex_extend(f, ConeSpec::gamma_k(n, 1).map_err(err)?, 1.0, 200, 12).map_err(err)?);
    let mut rng = rng_from_seed(112);
    let mut violations = 0;
    for _ in 0..10_000 {
        let x: Vec<f64> = (0..n).map(|_| 2.0 * gaussian(&mut rng)).collect();
        let y: Vec<f64> = (0..n).map(|_| 2.0 * gaussian(&mut rng)).collect();
        let m: Vec<f64> = x.iter().zip(&y).map(|(a, b)| 0.5 * (a + b)).collect();
        let v = |p: &[f64]| ext.value_unsorted(p);
        let (fx, fy, fm) = (v(&x).map_err(err)?, v(&y).map_err(err)?, v(&m).map_err(err)?);
        if fm > 0.5 * (fx + fy) + CONVEX_SLACK {
            violations += 1;
        }
    }
    let (mut min_partial, mut closed_form) = (f64::INFINITY, 0.0f64);
    let root_n = (n as f64).sqrt();
    let mut outside = 0;
    while outside < 100 {
        let l: Vec<f64> = (0..n).map(|_| 2.0 * gaussian(&mut rng)).collect();
        let s: f64 = l.iter().sum();
        if s > -0.05 {
            continue;
        }
        outside += 1;
        let g = fd_gradient(|p| ext.value_unsorted(p), &l, 1e-6).map_err(err)?;
        min_partial = g.into_iter().fold(min_partial, f64::min);
        closed_form = closed_form.max((ext.value_unsorted(&l).map_err(err)? - s / root_n).abs());
    }
    let ok = violations == 0 && min_partial >= PARTIAL_FLOOR && closed_form <= 1e-10;
    Ok((ok, format!("{violations} convexity violations in 1e4 segments, min partial {min_partial:.4}, half-space gap {closed_form:.1e}")))
}

fn c13_ricci(pts: &dyn Fn(usize) -> Vec<Vec<f64>>) -> Outcome {
    let mut roundtrip = 0.0f64;
    for n in 3..=8 {
        let t = LinearDictionary::new(n).map_err(err)?;
        roundtrip = roundtrip.max(t.composition_residual(1000, n as u64).map_err(err)?);
    }
    let mut worst = [0.0f64; 3];
    for n in 3..=6 {
        let mut quantities = Vec::new();
        for i in 2..=n {
            quantities.push((0, BubbleQuantity::RicciEigenvalue { i }));
        }
        for i in 1..n {
            quantities.push((1, BubbleQuantity::RicciPartialSum { i, j: n }));
        }
        for p in 1..=n - 2 {
            quantities.push((2, BubbleQuantity::Weitzenbock { p }));
        }
        for (slot, q) in quantities {
            let b = 1.0 / q.constraint(n, 1.0, 1.0).sqrt();
            let rep = bubble_constants(q, n, 1.0, b, &pts(n)).map_err(err)?;
            worst[slot] = worst[slot].max((rep.value - 1.0).abs());
        }
    }
    let ok = roundtrip <= DICTIONARY_ROUNDTRIP && worst.iter().all(|w| *w <= CURVATURE_CONSTANT);
    Ok((
        ok,
        format!(
            "roundtrip {roundtrip:.1e}; |value - 1|: Ricci eigenvalue {:.1e}, partial sum {:.1e}, Weitzenbock {:.3}",
            worst[0], worst[1], worst[2]
        ),
    ))
}

fn c14_singular_profiles() -> Outcome {
    let log = singular_profile(SingularKind::LogPositive { alpha: 1.0 }, 3).map_err(err)?;
    let mut max_v = f64::NEG_INFINITY;
    for k in 0..50 {
        let r = (-20.0 - 0.01 - 0.5 * k as f64).exp();
        max_v = max_v.max(log.profile.value(r).map_err(err)?);
    }
    let mut shifted_gap = 0.0f64;
    for (mu, a) in [(2.0, 0.0), (3.0, 0.7), (2.5, -0.4)] {
        let p = singular_profile(SingularKind::PowerPlusShifted { mu, a }, 3).map_err(err)?;
        let r = 1e-8f64;
        shifted_gap = shifted_gap.max((p.profile.value(r).map_err(err)? + 2.0 * r.ln() - a).abs());
    }
    let grid: Vec<f64> = (1..100).map(|i| 0.0099 * i as f64).collect();
    let mut direction = 0.0f64;
    let mut positive = true;
    for n in [3, 4, 6] {
        for k in [
            SingularKind::LogPositive { alpha: 1.5 },
            SingularKind::PowerMinus { mu: 0.4 },
            SingularKind::LogNegative { alpha: -0.5 },
            SingularKind::PowerPlus { mu: 0.2 },
            SingularKind::PowerPlusShifted { mu: 2.5, a: 0.3 },
        ] {
            let c = singular_profile(k, n).map_err(err)?.check_direction(&grid).map_err(err)?;
            direction = direction.max(c.max_residual);
            positive &= c.min_scalar > 0.0;
        }
    }
    let ok = max_v < -20.0 && shifted_gap <= 1e-6 && direction <= SINGULAR_DIRECTION && positive;
    Ok((
        ok,
        format!(
            "max v below e^-20: {max_v:.3}, shifted limit gap {shifted_gap:.1e}, direction residual {direction:.1e}"
        ),
    ))
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() {
    let golden = Golden::load();
    let ricci_points = |n: usize| -> Vec<Vec<f64>> {
        let mut rng = rng_from_seed(113 + n as u64);
        (0..10).map(|_| random_vec(&mut rng, n, -2.0, 2.0)).collect()
    };
    let criteria: Vec<Criterion> = vec![
        ("bubble identity", Box::new(c01_bubble_identity)),
        ("cone table", Box::new(c02_cone_table)),
        ("duality", Box::new(c03_duality)),
        ("mobius invariance", Box::new(c04_mobius_invariance)),
        ("radial classification", Box::new(c05_radial_classification)),
        ("dirichlet decision matrix", Box::new(c06_dirichlet_matrix)),
        ("lipschitz limit", Box::new(|| c07_lipschitz_limit(&golden))),
        ("ode oracle agreement", Box::new(c08_ode_agreement)),
        ("non-bubble entire solution", Box::new(|| c09_nonbubble(&golden))),
        ("gradient blow-up", Box::new(|| c10_gradient_blowup(&golden))),
        ("gauge construction", Box::new(c11_gauge)),
        ("convex extension", Box::new(c12_convex_extension)),
        ("ricci dictionary", Box::new(|| c13_ricci(&ricci_points))),
        ("singular profiles", Box::new(c14_singular_profiles)),
    ];
    let start = Instant::now();
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (pass, detail) = match check() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        let tag = if pass { "PASS" } else { "FAIL" };
        println!("acceptance {:>2} {name:<28} {tag}  {detail}  [{:.2} s]", i + 1, t.elapsed().as_secs_f64());
        if !pass {
            failed.push(i + 1);
        }
    }
    println!(
        "acceptance total {:.1} s, {} of {} pass",
        start.elapsed().as_secs_f64(),
        criteria.len() - failed.len(),
        criteria.len()
    );
    if !failed.is_empty() {
        println!("acceptance failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
