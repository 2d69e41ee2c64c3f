//! Acceptance suite. Runs without the libtest harness so each criterion
//! prints exactly one PASS/FAIL line; exits nonzero if any fails.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use conical_core::cone::{gamma, gamma_inv, ConeCoordinate, GammaPoint};
use conical_core::deriv::{
    closed_form_parametric, derive, nth_derivative, ConicalMapSpec, DeriveConfig, ExprFunction, FiniteBase,
    PiecewiseConeAction, Route,
};
use conical_core::forms::{binomial, ce_oracle, exterior_derivative, KForm, LieAlgebraPresentation, WedgeBasis, Q};
use conical_core::order::is_monotone;
use conical_core::refine::{coarsening_surjection, refined_poset, representative_section, RefinementPair};
use conical_core::sample::{random_continuous_map, random_cover, random_lie, random_refinement, random_space};
use conical_core::stratify::{quotient_poset, standard_stratification, stratum_preimage_formula, Cover, Stratification};
use conical_core::stratmap::{check_square, induce_g};
use conical_core::topology::{FiniteSpace, PointMap, PointSet};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !($cond) {
            return Err(format!($($msg)+));
        }
    };
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("stratification validity", Some(Duration::from_secs(10)), stratification_validity),
        ("degenerate cover", None, degenerate_cover),
        ("refinement coherence", Some(Duration::from_secs(10)), refinement_coherence),
        ("induced square", None, induced_square),
        ("gamma round trip", None, gamma_round_trip),
        ("identity derivative", None, identity_derivative),
        ("parametric oracle agreement", Some(Duration::from_secs(5)), parametric_oracle),
        ("second derivative", None, second_derivative),
        ("exterior derivative matches oracle", None, d_matches_oracle),
        ("d squared and Betti numbers", Some(Duration::from_secs(10)), d_squared_and_betti),
        ("selftest determinism", None, selftest_determinism),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let elapsed = start.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(_), Some(b)) if elapsed > *b => Err(format!("took {elapsed:.2?}, budget {b:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({detail}; {elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

// ---- stratifications ----

/// Signature bitmask of each point.
fn signatures(cover: &Cover) -> Vec<u32> {
    (0..cover.space().len())
        .map(|x| {
            cover
                .members()
                .iter()
                .enumerate()
                .filter(|(_, m)| m.contains(x))
                .fold(0, |acc, (t, _)| acc | 1 << t)
        })
        .collect()
}

/// Surjectivity plus openness of the preimage of every up-set, found by
/// enumerating all subsets of classes.
fn exhaustive_continuity(strat: &Stratification) -> Result<usize, String> {
    let q = strat.quotient();
    let n = q.len();
    let points = strat.space().len();
    let mut hit = vec![false; n];
    (0..points).for_each(|x| hit[strat.stratum_of(x)] = true);
    ensure!(hit.iter().all(|&h| h), "s is not surjective");
    let mut up_sets = 0;
    for mask in 0u64..1 << n {
        let inside = |c: usize| mask >> c & 1 == 1;
        if !(0..n).all(|c| !inside(c) || (0..n).all(|d| !q.leq(c, d) || inside(d))) {
            continue;
        }
        up_sets += 1;
        let pre = PointSet::from_indices((0..points).filter(|&x| inside(strat.stratum_of(x))));
        ensure!(strat.second_topology().is_open(pre), "preimage of up-set {mask:b} is not open");
    }
    Ok(up_sets)
}

fn check_stratification(cover: &Cover) -> Result<(), String> {
    let (strat, _) = standard_stratification(cover).map_err(|e| e.to_string())?;
    exhaustive_continuity(&strat)?;
    let sig = signatures(cover);
    let q = strat.quotient();
    let mut fibres: BTreeMap<u32, PointSet> = BTreeMap::new();
    for (x, &s) in sig.iter().enumerate() {
        let f = fibres.entry(s).or_insert(PointSet::EMPTY);
        *f = f.with(x);
    }
    ensure!(fibres.len() == q.len(), "{} classes for {} signatures", q.len(), fibres.len());
    for c in 0..q.len() {
        let fibre = fibres[&sig[q.class(c).representative]];
        let formula = stratum_preimage_formula(&strat, c).map_err(|e| e.to_string())?;
        ensure!(formula == fibre, "preimage formula differs from the h-fibre on class {c}");
    }
    Ok(())
}

fn stratification_validity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for i in 0..200 {
        let space = random_space(&mut rng, 10);
        let cover = random_cover(&mut rng, &space, 5);
        ensure!(space.len() <= 10 && cover.len() <= 5, "instance {i} exceeds the size bounds");
        check_stratification(&cover).map_err(|e| format!("instance {i}: {e}"))?;
    }
    let w = FiniteSpace::discrete(&["a", "b", "c", "d"]).unwrap();
    let cover = Cover::from_names(&w, &[vec!["a", "b"], vec!["b", "c"], vec!["c", "d"]]).unwrap();
    check_stratification(&cover).map_err(|e| format!("running example: {e}"))?;
    ensure!(quotient_poset(&cover).len() == 4, "running example should have 4 classes");
    Ok("200 random instances and the running example".into())
}

fn degenerate_cover() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let mut spaces: Vec<FiniteSpace> = (0..100).map(|_| random_space(&mut rng, 10)).collect();
    spaces.push(FiniteSpace::indiscrete(&["a", "b", "c"]).unwrap());
    spaces.push(FiniteSpace::discrete(&["a", "b", "c", "d"]).unwrap());
    for space in &spaces {
        let (strat, _) = standard_stratification(&Cover::trivial(space)).map_err(|e| e.to_string())?;
        ensure!(strat.quotient().len() == 1, "cover {{X}} gave {} classes", strat.quotient().len());
        ensure!(exhaustive_continuity(&strat)? == 2, "one-point poset should have two up-sets");
    }
    Ok(format!("{} spaces", spaces.len()))
}

fn refinement_coherence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    for i in 0..100 {
        let space = random_space(&mut rng, 8);
        let coarse = random_cover(&mut rng, &space, 4);
        let extra = rng.gen_range(1..4);
        let fine = random_refinement(&mut rng, &coarse, extra);
        let pair = RefinementPair::new(coarse.clone(), fine).map_err(|e| format!("pair {i}: {e}"))?;
        let (cq, fq) = (pair.coarse_poset(), pair.fine_poset());
        let surj = coarsening_surjection(&pair).map_err(|e| format!("pair {i}: {e}"))?;
        // fine class ↦ class of any of its points, recomputed pointwise
        for x in 0..space.len() {
            ensure!(surj.table[fq.class_of(x)] == cq.class_of(x), "pair {i}: surjection disagrees at point {x}");
        }
        let mut hit = vec![false; cq.len()];
        surj.table.iter().for_each(|&c| hit[c] = true);
        ensure!(hit.iter().all(|&h| h), "pair {i}: not surjective");
        ensure!(is_monotone(fq.order(), cq.order(), &surj.table), "pair {i}: not monotone");
        let sec = representative_section(&pair).map_err(|e| format!("pair {i}: {e}"))?;
        for c in 0..cq.len() {
            ensure!(surj.table[sec.table[c]] == c, "pair {i}: surjection ∘ section ≠ id at class {c}");
        }
        let limit = refined_poset(&space).map_err(|e| e.to_string())?;
        for cover in [&coarse, pair.fine()] {
            let onto = limit.coarsening_onto(cover).map_err(|e| format!("pair {i}: limit: {e}"))?;
            let target = quotient_poset(cover);
            ensure!(
                is_monotone(limit.poset().order(), target.order(), &onto.table),
                "pair {i}: limit surjection not monotone"
            );
        }
    }
    Ok("100 refinement pairs".into())
}

fn induced_square() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let strat = |c: &Cover| standard_stratification(c).map(|s| s.0).map_err(|e| e.to_string());
    for i in 0..200 {
        let (x1, x2) = (random_space(&mut rng, 7), random_space(&mut rng, 7));
        let s1 = strat(&random_cover(&mut rng, &x1, 4))?;
        let s2 = strat(&random_cover(&mut rng, &x2, 4))?;
        let f = random_continuous_map(&mut rng, &x1, &x2);
        let square = induce_g(&f, &s1, &s2).map_err(|e| format!("instance {i}: {e}"))?;
        let reps = square.representatives.as_ref().expect("restricted square");
        for &t in &reps.reps {
            ensure!(
                s2.stratum_of(f.apply(t)) == square.g[s1.stratum_of(t)],
                "instance {i}: square fails at representative {t}"
            );
        }
        check_square(&square).map_err(|e| format!("instance {i}: {e}"))?;
    }
    // two points in one class, sent to different target classes
    let x1 = FiniteSpace::discrete(&["a", "b"]).unwrap();
    let x2 = FiniteSpace::discrete(&["p", "q"]).unwrap();
    let s1 = strat(&Cover::trivial(&x1))?;
    let s2 = strat(&Cover::from_names(&x2, &[vec!["p"], vec!["q"]]).unwrap())?;
    let f = PointMap::from_pairs(x1, x2, &[("a", "p"), ("b", "q")]).unwrap();
    let square = induce_g(&f, &s1, &s2).map_err(|e| e.to_string())?;
    let cert = check_square(&square).map_err(|e| e.to_string())?;
    let (p, q) = (s2.quotient().class_named("p").unwrap(), s2.quotient().class_named("q").unwrap());
    ensure!(square.g == vec![p], "g should send the single class to [p]");
    ensure!(!cert.commutes_everywhere, "counterexample commutes everywhere");
    let failing: Vec<usize> = (0..2).filter(|&x| s2.stratum_of(f.apply(x)) != square.g[s1.stratum_of(x)]).collect();
    ensure!(failing == vec![1], "expected failure exactly at b, got {failing:?}");
    ensure!(s2.stratum_of(f.apply(1)) == q, "s2(f(b)) should be [q]");
    Ok("200 instances and the counterexample".into())
}

// ---- cones and derivatives ----

fn gamma_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let mut worst = 0.0f64;
    let (mut a_min, mut a_max) = (f64::INFINITY, 0.0f64);
    let mut inputs = 0;
    while inputs < 10_000 {
        let dim = rng.gen_range(1..=3);
        let a = 10f64.powf(rng.gen_range(-3.0..=3.0));
        if a <= 1e-3 || a > 1e3 {
            continue;
        }
        inputs += 1;
        a_min = a_min.min(a);
        a_max = a_max.max(a);
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-2.0..=2.0)).collect();
        let x: Vec<f64> = (0..dim).map(|_| rng.gen_range(-2.0..=2.0)).collect();
        let c = if rng.gen_bool(0.2) {
            ConeCoordinate::Apex
        } else {
            ConeCoordinate::new(rng.gen_range(1e-3..=10.0), rng.gen_range(0..4)).unwrap()
        };
        let p = GammaPoint::new(a, v.clone(), x.clone(), c).map_err(|e| e.to_string())?;
        let back = gamma_inv(&gamma(&p).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        // compare coordinates directly rather than through a library metric
        let mut err = (back.a - a).abs();
        err = v.iter().zip(&back.v).chain(x.iter().zip(&back.x)).fold(err, |m, (s, t)| m.max((s - t).abs()));
        ensure!(back.c.approx_eq(&c, 1e-12), "cone part changed: {c:?} -> {:?}", back.c);
        worst = worst.max(err);
    }
    ensure!(worst <= 1e-12, "worst round-trip error {worst:e}");
    Ok(format!("{inputs} inputs, worst error {worst:.1e}, a in [{a_min:.2e}, {a_max:.2e}]"))
}

fn base3() -> FiniteBase {
    FiniteBase::single_stratum(&["p", "q", "r"], "s").unwrap()
}

fn random_cone(rng: &mut ChaCha8Rng) -> ConeCoordinate {
    if rng.gen_bool(0.2) {
        ConeCoordinate::Apex
    } else {
        ConeCoordinate::new(rng.gen_range(0.01..4.0), rng.gen_range(0..3)).unwrap()
    }
}

fn max_diff(p: &[f64], q: &[f64]) -> f64 {
    assert_eq!(p.len(), q.len());
    p.iter().zip(q).map(|(s, t)| (s - t).abs()).fold(0.0, f64::max)
}

fn identity_derivative() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut worst = 0.0f64;
    for i in 0..50 {
        let dim = rng.gen_range(1..=3);
        let spec = ConicalMapSpec::identity(dim, base3()).unwrap();
        let x: Vec<f64> = (0..dim).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let c = random_cone(&mut rng);
        let r = derive(&spec, &v, &x, c, &DeriveConfig::default()).map_err(|e| e.to_string())?;
        ensure!(r.derivable, "point {i}: not derivable: {:?}", r.failure);
        ensure!(r.residual < 1e-9, "point {i}: residual {:e}", r.residual);
        let err = max_diff(&r.value.v, &v).max(max_diff(&r.value.p.x, &x));
        ensure!(err < 1e-9, "point {i}: identity off by {err:e}");
        ensure!(r.value.p.c == c, "point {i}: cone part moved");
        worst = worst.max(r.residual);
    }
    Ok(format!("50 points, worst residual {worst:.1e}"))
}

type Jacobian = fn(&[f64], &[f64]) -> Vec<f64>;

fn parametric_oracle() -> Outcome {
    let families: [(&str, &[&str], Jacobian); 6] = [
        ("affine", &["3*x - 1"], |_, v| vec![3.0 * v[0]]),
        ("square", &["x^2"], |x, v| vec![2.0 * x[0] * v[0]]),
        ("sine", &["sin(x)"], |x, v| vec![x[0].cos() * v[0]]),
        ("affine2", &["2*x1 - 3*x2 + 1", "x1 + 0.5*x2"], |_, v| vec![2.0 * v[0] - 3.0 * v[1], v[0] + 0.5 * v[1]]),
        ("square2", &["x1^2 + x2^2", "x1*x2"], |x, v| {
            vec![2.0 * x[0] * v[0] + 2.0 * x[1] * v[1], x[1] * v[0] + x[0] * v[1]]
        }),
        ("sine2", &["sin(x1)", "sin(x1 + x2)"], |x, v| {
            vec![x[0].cos() * v[0], (x[0] + x[1]).cos() * (v[0] + v[1])]
        }),
    ];
    // ρ cycles the base near the apex and is the identity from 1/2 on
    let rho0 = [1, 2, 0];
    let rho = PiecewiseConeAction::new(vec![0.0, 0.5], vec![rho0.to_vec(), vec![0, 1, 2]]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let mut worst = 0.0f64;
    for (name, sources, jac) in families {
        let dim = sources.len();
        let k = ExprFunction::parse(dim, sources).map_err(|e| e.to_string())?;
        let spec = ConicalMapSpec::parametric(k.clone(), rho.clone(), base3(), base3()).unwrap();
        for _ in 0..100 {
            let x: Vec<f64> = (0..dim).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let c = random_cone(&mut rng);
            let r = derive(&spec, &v, &x, c, &DeriveConfig::default()).map_err(|e| e.to_string())?;
            ensure!(r.derivable, "{name}: not derivable at {x:?}: {:?}", r.failure);
            let closed = closed_form_parametric(&spec, &v, &x, c).map_err(|e| e.to_string())?;
            let ev = max_diff(&r.value.v, &closed.v);
            let ex = max_diff(&r.value.p.x, &closed.p.x);
            ensure!(ev <= 1e-6 && ex <= 1e-6, "{name}: off by {ev:e} (vector) {ex:e} (point)");
            ensure!(max_diff(&closed.v, &jac(&x, &v)) <= 1e-12, "{name}: closed form disagrees with hand Jacobian");
            let expected = c.map_base(|z| rho0[z]);
            ensure!(r.value.p.c == expected && closed.p.c == expected, "{name}: cone part is not [y, ρ₀(z)]");
            worst = worst.max(ev).max(ex);
        }
    }
    Ok(format!("600 points, worst error {worst:.1e}"))
}

fn second_derivative() -> Outcome {
    let cfg = DeriveConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let id = PiecewiseConeAction::constant(vec![0, 1, 2]);
    let square = ConicalMapSpec::parametric(ExprFunction::parse(1, &["x^2"]).unwrap(), id.clone(), base3(), base3()).unwrap();
    let affine = ConicalMapSpec::parametric(ExprFunction::parse(1, &["4*x - 7"]).unwrap(), id, base3(), base3()).unwrap();
    for _ in 0..20 {
        let x = [rng.gen_range(-2.0..2.0)];
        let c = random_cone(&mut rng);
        let r = nth_derivative(&square, 2, &[1.0], &x, c, &cfg).map_err(|e| e.to_string())?;
        ensure!(r.route == Route::SchemeMap { order: 2 }, "unexpected route {:?}", r.route);
        ensure!(r.derivable, "x^2 not twice derivable at {x:?}");
        let coeff = r.leading_coefficient()[0];
        ensure!((coeff - 2.0).abs() <= 1e-3, "x^2: coefficient {coeff}");
        let r = nth_derivative(&affine, 2, &[1.0], &x, c, &cfg).map_err(|e| e.to_string())?;
        ensure!(r.derivable, "affine not twice derivable at {x:?}");
        let coeff = r.leading_coefficient()[0];
        ensure!(coeff.abs() <= 1e-6, "affine: coefficient {coeff}");
    }
    Ok("20 points per map".into())
}

// ---- forms ----

fn corpus() -> Vec<(String, LieAlgebraPresentation)> {
    let mut out: Vec<(String, LieAlgebraPresentation)> =
        (0..=5).map(|n| (format!("abelian({n})"), LieAlgebraPresentation::abelian(n))).collect();
    out.push(("heisenberg".into(), LieAlgebraPresentation::heisenberg()));
    out.push(("sl2".into(), LieAlgebraPresentation::sl2()));
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    out.extend((0..50).map(|i| (format!("random #{i}"), random_lie(&mut rng, 4))));
    out
}

/// Jacobi identity on basis triples, straight from the bracket.
fn jacobi_holds(g: &LieAlgebraPresentation) -> bool {
    let n = g.dim();
    let e = |i| g.basis_vector(i);
    (0..n).all(|i| {
        (0..n).all(|j| {
            (0..n).all(|k| {
                let a = g.bracket(&e(i), &g.bracket(&e(j), &e(k)));
                let b = g.bracket(&e(j), &g.bracket(&e(k), &e(i)));
                let c = g.bracket(&e(k), &g.bracket(&e(i), &e(j)));
                a.iter().zip(&b).zip(&c).all(|((a, b), c)| (a + b + c).is_zero())
            })
        })
    })
}

fn d_matches_oracle() -> Outcome {
    let mut forms = 0;
    for (name, g) in corpus() {
        ensure!(g.dim() <= 5 && jacobi_holds(&g), "{name}: not a valid presentation");
        let n = g.dim();
        let basis = WedgeBasis::new(n);
        for k in 0..=n {
            for tuple in basis.tuples(k) {
                let w = KForm::basis_form(n, tuple).unwrap();
                let ours = exterior_derivative(&g, &w).map_err(|e| format!("{name}: {e}"))?;
                let theirs = ce_oracle(&g, &w).map_err(|e| format!("{name}: {e}"))?;
                ensure!(ours == theirs, "{name}: d disagrees with the oracle on {tuple:?}");
                forms += 1;
            }
        }
    }
    Ok(format!("{forms} basis forms over 58 algebras"))
}

/// Rank by Gaussian elimination over the rationals.
fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                let pivot_row = rows[r].clone();
                for (a, b) in rows[i].iter_mut().zip(&pivot_row).skip(c) {
                    *a -= &f * b;
                }
            }
        }
        r += 1;
    }
    r
}

/// Matrix of the oracle differential from degree `k`, one row per output coefficient.
fn oracle_matrix(g: &LieAlgebraPresentation, basis: &WedgeBasis, k: usize) -> Vec<Vec<Q>> {
    let n = g.dim();
    let columns: Vec<Vec<Q>> = basis
        .tuples(k)
        .iter()
        .map(|t| ce_oracle(g, &KForm::basis_form(n, t).unwrap()).unwrap().coeffs().to_vec())
        .collect();
    let out_dim = if k < n { binomial(n, k + 1) } else { 0 };
    (0..out_dim).map(|i| columns.iter().map(|col| col[i].clone()).collect()).collect()
}

fn d_squared_and_betti() -> Outcome {
    for (name, g) in corpus() {
        let n = g.dim();
        let basis = WedgeBasis::new(n);
        for k in 0..n.saturating_sub(1) {
            for tuple in basis.tuples(k) {
                let w = KForm::basis_form(n, tuple).unwrap();
                let dd = exterior_derivative(&g, &exterior_derivative(&g, &w).unwrap()).unwrap();
                ensure!(dd.is_zero(), "{name}: d∘d ≠ 0 on {tuple:?}");
            }
        }
        let complex = conical_core::forms::de_rham_complex(&g).map_err(|e| format!("{name}: {e}"))?;
        let ranks: Vec<usize> = (0..=n).map(|k| rank(oracle_matrix(&g, &basis, k))).collect();
        let betti: Vec<usize> = (0..=n)
            .map(|k| binomial(n, k) - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 })
            .collect();
        ensure!(complex.betti == betti, "{name}: Betti {:?}, oracle {betti:?}", complex.betti);
        let expected: Option<Vec<usize>> = match name.as_str() {
            "sl2" => Some(vec![1, 0, 0, 1]),
            "heisenberg" => Some(vec![1, 2, 2, 1]),
            s if s.starts_with("abelian") => Some((0..=n).map(|k| binomial(n, k)).collect()),
            _ => None,
        };
        if let Some(e) = expected {
            ensure!(betti == e, "{name}: Betti {betti:?}, expected {e:?}");
        }
    }
    Ok("58 algebras".into())
}

// ---- CLI ----

fn selftest_determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_conical"))
            .args(["selftest", "--seed", "20240917", "--cases", "20"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure!(a.status.success(), "selftest failed: {}", String::from_utf8_lossy(&a.stderr));
    ensure!(b.status.success(), "selftest failed on rerun");
    ensure!(!a.stdout.is_empty(), "empty summary");
    ensure!(a.stdout == b.stdout, "summaries differ between runs");
    Ok(format!("{} identical bytes", a.stdout.len()))
}
