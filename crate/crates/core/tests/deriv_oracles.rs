use conical_core::cone::ConeCoordinate;
use conical_core::deriv::{
    closed_form_parametric, d_at_point, derive, nth_derivative, oscillating_spec, ConicalMapSpec, DeriveConfig,
    ExprFunction, FiniteBase, PiecewiseConeAction, Route,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Jacobian = fn(&[f64], &[f64]) -> Vec<f64>;

/// Expression sources with hand-written directional derivatives.
fn families() -> Vec<(&'static str, Vec<&'static str>, Jacobian)> {
    vec![
        ("affine", vec!["3*x - 1"], |_, v| vec![3.0 * v[0]]),
        ("square", vec!["x^2"], |x, v| vec![2.0 * x[0] * v[0]]),
        ("sine", vec!["sin(x)"], |x, v| vec![x[0].cos() * v[0]]),
        ("affine2", vec!["2*x1 - 3*x2 + 1", "x1 + 0.5*x2"], |_, v| {
            vec![2.0 * v[0] - 3.0 * v[1], v[0] + 0.5 * v[1]]
        }),
        ("square2", vec!["x1^2 + x2^2", "x1*x2"], |x, v| {
            vec![2.0 * x[0] * v[0] + 2.0 * x[1] * v[1], x[1] * v[0] + x[0] * v[1]]
        }),
        ("sine2", vec!["sin(x1)", "sin(x1 + x2)"], |x, v| {
            vec![x[0].cos() * v[0], (x[0] + x[1]).cos() * (v[0] + v[1])]
        }),
    ]
}

fn base3() -> FiniteBase {
    FiniteBase::single_stratum(&["p", "q", "r"], "s").unwrap()
}

/// `ρ_y` cycles the base on `[0, 0.5)` and is the identity beyond.
fn rho() -> PiecewiseConeAction {
    PiecewiseConeAction::new(vec![0.0, 0.5], vec![vec![1, 2, 0], vec![0, 1, 2]]).unwrap()
}

fn random_cone(rng: &mut ChaCha8Rng) -> ConeCoordinate {
    if rng.gen_bool(0.2) {
        ConeCoordinate::Apex
    } else {
        ConeCoordinate::new(rng.gen_range(0.01..4.0), rng.gen_range(0..3)).unwrap()
    }
}

fn max_diff(p: &[f64], q: &[f64]) -> f64 {
    p.iter().zip(q).map(|(s, t)| (s - t).abs()).fold(0.0, f64::max)
}

#[test]
fn parametric_family_matches_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let cfg = DeriveConfig::default();
    for (name, sources, jac) in families() {
        let dim = sources.len();
        let k = ExprFunction::parse(dim, &sources).unwrap();
        let spec = ConicalMapSpec::parametric(k.clone(), rho(), base3(), base3()).unwrap();
        for _ in 0..100 {
            let x: Vec<f64> = (0..dim).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let c = random_cone(&mut rng);
            let r = derive(&spec, &v, &x, c, &cfg).unwrap();
            assert!(r.derivable, "{name} at {x:?}, {v:?}, {c:?}: {:?}", r.failure);
            let closed = closed_form_parametric(&spec, &v, &x, c).unwrap();
            let by_hand = jac(&x, &v);
            assert!(max_diff(&r.value.v, &closed.v) < 1e-6, "{name}: {:?} vs {:?}", r.value.v, closed.v);
            assert!(max_diff(&closed.v, &by_hand) < 1e-12, "{name}: symbolic derivative disagrees");
            assert!(max_diff(&r.value.p.x, &k.eval(&x).unwrap()) < 1e-6);
            let expected_cone = c.map_base(|z| [1, 2, 0][z]);
            assert_eq!(r.value.p.c, expected_cone);
            assert_eq!(closed.p.c, expected_cone);
            if c.is_apex() {
                assert!(r.trace.iter().all(|s| s.value.p.c.is_apex()));
            }
        }
    }
}

#[test]
fn finite_difference_oracle() {
    // central differences on k alone, independent of the cone machinery
    let k = ExprFunction::parse(2, &["sin(x1)*x2", "x1^3 - x2"]).unwrap();
    let spec = ConicalMapSpec::parametric(k.clone(), rho(), base3(), base3()).unwrap();
    let (x, v) = ([0.7, -1.2], [0.3, 1.1]);
    let h = 1e-5;
    let plus: Vec<f64> = x.iter().zip(&v).map(|(x, v)| x + h * v).collect();
    let minus: Vec<f64> = x.iter().zip(&v).map(|(x, v)| x - h * v).collect();
    let (kp, km) = (k.eval(&plus).unwrap(), k.eval(&minus).unwrap());
    let central: Vec<f64> = kp.iter().zip(&km).map(|(p, m)| (p - m) / (2.0 * h)).collect();
    let r = derive(&spec, &v, &x, ConeCoordinate::Apex, &DeriveConfig::default()).unwrap();
    assert!(max_diff(&r.value.v, &central) < 1e-6);
}

#[test]
fn identity_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..50 {
        let dim = rng.gen_range(1..=3);
        let spec = ConicalMapSpec::identity(dim, base3()).unwrap();
        let x: Vec<f64> = (0..dim).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let c = random_cone(&mut rng);
        let r = derive(&spec, &v, &x, c, &DeriveConfig::default()).unwrap();
        assert!(r.derivable);
        assert!(r.residual < 1e-9);
        assert!(max_diff(&r.value.v, &v) < 1e-9);
        assert_eq!(r.value.p.x, x);
        assert_eq!(r.value.p.c, c);
    }
}

#[test]
fn fibre_derivative_is_linear() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cfg = DeriveConfig::default();
    for (_, sources, _) in families() {
        let dim = sources.len();
        let spec =
            ConicalMapSpec::parametric(ExprFunction::parse(dim, &sources).unwrap(), rho(), base3(), base3()).unwrap();
        let x: Vec<f64> = (0..dim).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let d = d_at_point(&spec, &x, &cfg).unwrap();
        for _ in 0..10 {
            let v1: Vec<f64> = (0..dim).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let v2: Vec<f64> = (0..dim).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let (al, be) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let mix: Vec<f64> = v1.iter().zip(&v2).map(|(a, b)| al * a + be * b).collect();
            let (w1, _) = d.apply(&v1, ConeCoordinate::Apex).unwrap();
            let (w2, _) = d.apply(&v2, ConeCoordinate::Apex).unwrap();
            let (wm, _) = d.apply(&mix, ConeCoordinate::Apex).unwrap();
            let combo: Vec<f64> = w1.iter().zip(&w2).map(|(a, b)| al * a + be * b).collect();
            assert!(max_diff(&wm, &combo) < 1e-6);
        }
    }
}

#[test]
fn second_derivatives() {
    let cfg = DeriveConfig::default();
    let square = ConicalMapSpec::parametric(
        ExprFunction::parse(1, &["x^2"]).unwrap(),
        rho(),
        base3(),
        base3(),
    )
    .unwrap();
    let affine = ConicalMapSpec::parametric(
        ExprFunction::parse(1, &["4*x - 7"]).unwrap(),
        rho(),
        base3(),
        base3(),
    )
    .unwrap();
    for x in [-1.5, 0.0, 0.3, 2.0] {
        let c = ConeCoordinate::new(1.0, 0).unwrap();
        let r = nth_derivative(&square, 2, &[1.0], &[x], c, &cfg).unwrap();
        assert!(r.derivable, "{:?}", r.failure);
        assert_eq!(r.route, Route::SchemeMap { order: 2 });
        assert!((r.leading_coefficient()[0] - 2.0).abs() < 1e-3);
        let r = nth_derivative(&affine, 2, &[1.0], &[x], c, &cfg).unwrap();
        assert!(r.leading_coefficient()[0].abs() < 1e-6);
    }
    let id = ConicalMapSpec::identity(2, base3()).unwrap();
    let r = nth_derivative(&id, 2, &[1.0, -1.0], &[0.5, 0.5], ConeCoordinate::Apex, &cfg).unwrap();
    assert!(max_diff(r.leading_coefficient(), &[0.0, 0.0]) < 1e-6);
    assert!(nth_derivative(&id, 3, &[1.0, -1.0], &[0.5, 0.5], ConeCoordinate::Apex, &cfg).is_err());
}

#[test]
fn oscillating_action_has_no_limit() {
    let spec = oscillating_spec(ExprFunction::parse(1, &["x"]).unwrap()).unwrap();
    let r = derive(&spec, &[1.0], &[0.0], ConeCoordinate::new(1.0, 0).unwrap(), &DeriveConfig::default()).unwrap();
    assert!(!r.derivable);
    assert!(r.failure.is_some());
    assert_eq!(r.trace.len(), 41);
}
