//! Seeded invariant suites, one per library module. The summary holds counts
//! and the first failure of each suite, and nothing time-dependent, so a
//! fixed seed reproduces it byte for byte.

use conical_core::cone::{cone_poset, gamma, gamma_inv, ConeCoordinate, GammaPoint};
use conical_core::deriv::{closed_form_parametric, derive, ConicalMapSpec, DeriveConfig, ExprFunction, FiniteBase, PiecewiseConeAction};
use conical_core::forms::{ce_oracle, de_rham_complex, ExteriorDerivative, KForm};
use conical_core::refine::{coarsening_surjection, refined_poset, representative_section, RefinementPair};
use conical_core::sample::{
    random_continuous_map, random_cover, random_fiber_constant_map, random_lie, random_poset, random_refinement,
    random_space, random_unimodular,
};
use conical_core::stratify::{preorders_agree, standard_stratification, stratum_preimage_formula, Cover};
use conical_core::stratmap::{check_square, induce_g};
use conical_core::topology::{PointMap, PointSet};
use conical_core::Result as CoreResult;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::CliError;

pub const SUITES: [&str; 7] = ["topology", "stratify", "refine", "stratmap", "cone", "deriv", "forms"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub checks: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summary {
    pub suites: Vec<SuiteResult>,
}

impl Summary {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.failures == 0)
    }

    pub fn failed_suites(&self) -> Vec<&'static str> {
        self.suites.iter().filter(|s| s.failures > 0).map(|s| s.name).collect()
    }

    pub fn table(&self) -> String {
        let mut out = format!("{:<10}{:>7}{:>8}{:>10}\n", "suite", "cases", "checks", "failures");
        for s in &self.suites {
            out.push_str(&format!("{:<10}{:>7}{:>8}{:>10}\n", s.name, s.cases, s.checks, s.failures));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.suites
                .iter()
                .map(|s| {
                    json!({
                        "suite": s.name,
                        "cases": s.cases,
                        "checks": s.checks,
                        "failures": s.failures,
                        "first_failure": s.first_failure,
                    })
                })
                .collect(),
        )
    }
}

struct Checker {
    checks: usize,
    failures: usize,
    first_failure: Option<String>,
    /// Flip the first verdict, standing in for a broken oracle.
    fault: bool,
}

impl Checker {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        let ok = if self.fault && self.checks == 0 { !ok } else { ok };
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }

    fn check_ok<T>(&mut self, r: CoreResult<T>, what: &str) -> Option<T> {
        match r {
            Ok(t) => {
                self.check(true, String::new);
                Some(t)
            }
            Err(e) => {
                self.check(false, || format!("{what}: {e}"));
                None
            }
        }
    }
}

/// Runs every suite with `cases` random instances each.
pub fn run(seed: u64, cases: usize, fault: Option<&str>) -> Result<Summary, CliError> {
    if let Some(name) = fault {
        if !SUITES.contains(&name) {
            return Err(CliError::Usage(format!("unknown suite `{name}`; expected one of {SUITES:?}")));
        }
    }
    let suites = SUITES
        .iter()
        .enumerate()
        .map(|(i, &name)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (i as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let mut c = Checker {
                checks: 0,
                failures: 0,
                first_failure: None,
                fault: fault == Some(name),
            };
            for case in 0..cases {
                match name {
                    "topology" => topology_case(&mut rng, &mut c),
                    "stratify" => stratify_case(&mut rng, &mut c),
                    "refine" => refine_case(&mut rng, &mut c),
                    "stratmap" => stratmap_case(&mut rng, &mut c),
                    "cone" => cone_case(&mut rng, &mut c),
                    "deriv" => deriv_case(&mut rng, &mut c, case),
                    "forms" => forms_case(&mut rng, &mut c),
                    _ => unreachable!("suite list is fixed"),
                }
            }
            SuiteResult {
                name,
                cases,
                checks: c.checks,
                failures: c.failures,
                first_failure: c.first_failure,
            }
        })
        .collect();
    Ok(Summary { suites })
}

fn topology_case(rng: &mut ChaCha8Rng, c: &mut Checker) {
    let space = random_space(rng, 8);
    let opens = space.opens();
    c.check(opens.contains(&PointSet::EMPTY) && opens.contains(&space.full()), || {
        "empty set or whole space is not open".into()
    });
    let closed = opens.iter().all(|&u| {
        opens
            .iter()
            .all(|&v| space.is_open(u.union(v)) && space.is_open(u.intersection(v)))
    });
    c.check(closed, || "opens not closed under union and intersection".into());
    for x in 0..space.len() {
        let meet = opens
            .iter()
            .filter(|u| u.contains(x))
            .fold(space.full(), |m, &u| m.intersection(u));
        c.check(meet == space.minimal_neighborhood(x), || {
            format!("minimal neighbourhood of `{}` is wrong", space.point(x))
        });
    }
    c.check(PointMap::identity(space.clone()).discontinuity_witness().is_none(), || {
        "identity map is not continuous".into()
    });
}

fn stratify_case(rng: &mut ChaCha8Rng, c: &mut Checker) {
    let space = random_space(rng, 10);
    let cover = random_cover(rng, &space, 5);
    let Some((strat, _)) = c.check_ok(standard_stratification(&cover), "standard stratification") else {
        return;
    };
    let q = strat.quotient();
    let hit: PointSet = (0..space.len()).fold(PointSet::EMPTY, |s, x| s.with(strat.stratum_of(x)));
    c.check(hit.len() == q.len(), || "stratification is not surjective".into());
    for class in 0..q.len() {
        c.check(stratum_preimage_formula(&strat, class).is_ok(), || {
            format!("preimage formula fails on class {class}")
        });
    }
    c.check(preorders_agree(&strat) == Some(true), || "preorders disagree".into());
    if let Some((trivial, _)) = c.check_ok(standard_stratification(&Cover::trivial(&space)), "trivial cover") {
        c.check(trivial.quotient().len() == 1, || "cover {X} gives more than one class".into());
    }
}

fn refine_case(rng: &mut ChaCha8Rng, c: &mut Checker) {
    let space = random_space(rng, 8);
    let coarse = random_cover(rng, &space, 4);
    let extra = rng.gen_range(1..4);
    let fine = random_refinement(rng, &coarse, extra);
    let Some(pair) = c.check_ok(RefinementPair::new(coarse.clone(), fine), "refinement pair") else {
        return;
    };
    if let Some(s) = c.check_ok(coarsening_surjection(&pair), "coarsening surjection") {
        c.check(s.table.len() == pair.fine_poset().len(), || "surjection has the wrong domain".into());
    }
    if let Some(sec) = c.check_ok(representative_section(&pair), "representative section") {
        c.check(sec.retracts, || "section does not retract".into());
    }
    if let Some(limit) = c.check_ok(refined_poset(&space), "refined poset") {
        c.check_ok(limit.coarsening_onto(&coarse), "coarsening from the limit");
    }
}

fn stratmap_case(rng: &mut ChaCha8Rng, c: &mut Checker) {
    let (x1, x2) = (random_space(rng, 6), random_space(rng, 6));
    let (c1, c2) = (random_cover(rng, &x1, 3), random_cover(rng, &x2, 3));
    let (Some((s1, _)), Some((s2, _))) = (
        c.check_ok(standard_stratification(&c1), "source stratification"),
        c.check_ok(standard_stratification(&c2), "target stratification"),
    ) else {
        return;
    };
    let f = random_continuous_map(rng, &x1, &x2);
    if let Some(square) = c.check_ok(induce_g(&f, &s1, &s2), "induce g") {
        c.check_ok(check_square(&square), "square on representatives");
    }
    let h = random_fiber_constant_map(rng, &s1, &x2);
    if let Some(square) = c.check_ok(induce_g(&h, &s1, &s2), "induce g, fibre-constant map") {
        if let Some(cert) = c.check_ok(check_square(&square), "fibre-constant square") {
            c.check(cert.commutes_everywhere, || "fibre-constant map does not commute everywhere".into());
        }
    }
}

fn cone_case(rng: &mut ChaCha8Rng, c: &mut Checker) {
    for _ in 0..10 {
        let dim = rng.gen_range(1..=3);
        let a = 10f64.powf(rng.gen_range(-3.0..=3.0)).max(1.0000001e-3);
        let v = (0..dim).map(|_| rng.gen_range(-2.0..=2.0)).collect();
        let x = (0..dim).map(|_| rng.gen_range(-2.0..=2.0)).collect();
        let cone = if rng.gen_bool(0.2) {
            ConeCoordinate::Apex
        } else {
            ConeCoordinate::Ray {
                radius: rng.gen_range(1e-3..=10.0),
                base: rng.gen_range(0..4),
            }
        };
        let Some(p) = c.check_ok(GammaPoint::new(a, v, x, cone), "gamma point") else {
            continue;
        };
        if let Some(back) = c.check_ok(gamma(&p).and_then(|q| gamma_inv(&q)), "gamma round trip") {
            let err = p.distance(&back);
            c.check(err <= 1e-12, || format!("round-trip error {err:e} at a = {a:e}"));
        }
    }
    let n = rng.gen_range(0..6);
    let base = random_poset(rng, n, 0.4);
    if let Some(cone) = c.check_ok(cone_poset(&base), "cone poset") {
        c.check(cone.poset().minima() == vec![0], || "cone poset lacks a unique minimum".into());
    }
}

fn deriv_case(rng: &mut ChaCha8Rng, c: &mut Checker, case: usize) {
    let base = FiniteBase::single_stratum(&["p", "q", "r"], "s").expect("distinct names");
    let cone = if rng.gen_bool(0.2) {
        ConeCoordinate::Apex
    } else {
        ConeCoordinate::Ray {
            radius: rng.gen_range(0.01..4.0),
            base: rng.gen_range(0..3),
        }
    };
    let x = [rng.gen_range(-2.0..2.0)];
    let v = [rng.gen_range(-2.0..2.0)];
    let cfg = DeriveConfig::default();
    if case.is_multiple_of(2) {
        let Some(spec) = c.check_ok(ConicalMapSpec::identity(1, base), "identity spec") else {
            return;
        };
        if let Some(r) = c.check_ok(derive(&spec, &v, &x, cone, &cfg), "identity derivative") {
            let err = (r.value.v[0] - v[0]).abs().max((r.value.p.x[0] - x[0]).abs());
            c.check(r.derivable && err < 1e-9 && r.value.p.c.approx_eq(&cone, 1e-9), || {
                format!("identity derivative off by {err:e}")
            });
        }
    } else {
        let rho = PiecewiseConeAction::new(vec![0.0, 0.5], vec![vec![1, 2, 0], vec![0, 1, 2]]).expect("valid pieces");
        let k = ExprFunction::parse(1, &["x^2"]).expect("valid expression");
        let Some(spec) = c.check_ok(ConicalMapSpec::parametric(k, rho, base.clone(), base), "parametric spec") else {
            return;
        };
        let (Some(r), Some(oracle)) = (
            c.check_ok(derive(&spec, &v, &x, cone, &cfg), "parametric derivative"),
            c.check_ok(closed_form_parametric(&spec, &v, &x, cone), "closed form"),
        ) else {
            return;
        };
        let err = (r.value.v[0] - oracle.v[0]).abs().max((r.value.p.x[0] - oracle.p.x[0]).abs());
        c.check(r.derivable && err <= 1e-6 && r.value.p.c.base() == oracle.p.c.base(), || {
            format!("x^2 derivative off by {err:e}")
        });
    }
}

fn forms_case(rng: &mut ChaCha8Rng, c: &mut Checker) {
    let g = random_lie(rng, 4);
    let n = g.dim();
    let Some(d) = c.check_ok(ExteriorDerivative::new(&g), "exterior derivative") else {
        return;
    };
    for k in 0..=n {
        for tuple in d.basis().tuples(k).to_vec() {
            let w = KForm::basis_form(n, &tuple).expect("valid tuple");
            let (Some(ours), Some(oracle)) = (c.check_ok(d.apply(&w), "d"), c.check_ok(ce_oracle(&g, &w), "oracle"))
            else {
                continue;
            };
            c.check(ours == oracle, || format!("d disagrees with the oracle on {tuple:?}"));
        }
    }
    let Some(complex) = c.check_ok(de_rham_complex(&g), "complex") else {
        return;
    };
    c.check(complex.betti.first() == Some(&1), || "b0 is not 1".into());
    let p = random_unimodular(rng, n);
    if let Some(h) = c.check_ok(g.change_basis(&p), "basis change") {
        if let Some(other) = c.check_ok(de_rham_complex(&h), "complex after basis change") {
            c.check(other.betti == complex.betti, || "Betti numbers depend on the basis".into());
        }
    }
}
