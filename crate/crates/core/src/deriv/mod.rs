//! Conical derivatives as the `a → 0` limit of `γ⁻¹ ∘ f_Δ ∘ γ`.
//!
//! The limit is taken numerically along `a_k = 2⁻ᵏ`. A limit is accepted
//! once the real parts are Cauchy under the tolerance and the discrete parts
//! (cone base point, its stratum, the `ρ` interval in use) have settled. The
//! accepted value is a Richardson extrapolation of the last three iterates.

mod expr;
mod spec;

pub use expr::ExprFunction;
pub use spec::{ConicalMapSpec, FiniteBase, MapKind, PiecewiseConeAction};

use crate::cone::{f_delta, gamma, gamma_inv, ConeCoordinate, ConicalPoint, GammaPoint, TangentConicalPoint};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct DeriveConfig {
    pub tol: f64,
    pub max_steps: usize,
    /// Iterates needed before stopping; at least three for extrapolation.
    pub min_steps: usize,
    pub probes: bool,
    pub probe_step: f64,
    pub probe_tol: f64,
    pub second_tol: f64,
    pub second_max_steps: usize,
}

impl Default for DeriveConfig {
    fn default() -> Self {
        DeriveConfig {
            tol: 1e-6,
            max_steps: 40,
            min_steps: 3,
            probes: true,
            probe_step: 1e-5,
            probe_tol: 1e-3,
            second_tol: 1e-3,
            second_max_steps: 12,
        }
    }
}

impl DeriveConfig {
    pub fn with_tol(tol: f64) -> Self {
        DeriveConfig {
            tol,
            ..DeriveConfig::default()
        }
    }

    fn validate(&self) -> Result<()> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(self.tol) || !positive(self.second_tol) || !positive(self.probe_tol) || !positive(self.probe_step) {
            return Err(Error::input("tolerances and probe step must be positive"));
        }
        if self.min_steps < 3 || self.max_steps + 1 < self.min_steps || self.second_max_steps + 1 < self.min_steps {
            return Err(Error::input("step limits must allow at least three iterates"));
        }
        Ok(())
    }
}

/// The discrete part of an iterate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiscreteTags {
    /// Cone base point of the output, `None` at the apex.
    pub cone_base: Option<usize>,
    /// Its stratum in the target base poset.
    pub stratum: Option<usize>,
    /// `ρ` interval used, `None` for maps without one or at the apex.
    pub interval: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceStep {
    pub a: f64,
    pub value: TangentConicalPoint,
    pub tags: DiscreteTags,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// `D f` of the stratified map itself.
    Stratified,
    /// Iterated derivative of the discretely re-labelled `D f`; not the
    /// iterated derivative of `D f` as a stratified map.
    SchemeMap { order: u32 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Probe {
    pub label: String,
    /// Cone-metric distance from the unperturbed value; `∞` if the probe
    /// itself did not converge.
    pub distance: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DerivativeReport {
    pub order: u32,
    pub route: Route,
    pub derivable: bool,
    /// Extrapolated limit when derivable, otherwise the last iterate.
    pub value: TangentConicalPoint,
    pub trace: Vec<TraceStep>,
    /// First step from which the discrete parts stay constant.
    pub stabilization_index: Option<usize>,
    /// Distance between the extrapolated value and the last iterate.
    pub residual: f64,
    pub probes: Vec<Probe>,
    pub failure: Option<String>,
}

impl DerivativeReport {
    /// The leading block of the vector part: `D²k_x(v, v)` for order 2.
    pub fn leading_coefficient(&self) -> &[f64] {
        match self.route {
            Route::SchemeMap { .. } => &self.value.v[..self.value.v.len() / 2],
            Route::Stratified => &self.value.v,
        }
    }
}

fn max_diff(p: &[f64], q: &[f64]) -> f64 {
    p.iter().zip(q).map(|(s, t)| (s - t).abs()).fold(0.0, f64::max)
}

/// `d([r, z], [s, w]) = |r − s|` on a common ray, `r + s` through the apex.
pub fn cone_distance(c: &ConeCoordinate, d: &ConeCoordinate) -> f64 {
    match (c.base(), d.base()) {
        (Some(z), Some(w)) if z == w => (c.radius() - d.radius()).abs(),
        _ => c.radius() + d.radius(),
    }
}

fn point_distance(p: &TangentConicalPoint, q: &TangentConicalPoint) -> f64 {
    if p.v.len() != q.v.len() || p.p.x.len() != q.p.x.len() {
        return f64::INFINITY;
    }
    max_diff(&p.v, &q.v)
        .max(max_diff(&p.p.x, &q.p.x))
        .max(cone_distance(&p.p.c, &q.p.c))
}

/// `γ⁻¹ ∘ f_Δ ∘ γ` at `(a, v, x, c)`.
pub fn conjugate(spec: &ConicalMapSpec, a: f64, v: &[f64], x: &[f64], c: ConeCoordinate) -> Result<TangentConicalPoint> {
    spec.check_point(x, &c)?;
    let p = GammaPoint::new(a, v.to_vec(), x.to_vec(), c)?;
    Ok(gamma_inv(&f_delta(spec, &gamma(&p)?)?)?.tangent())
}

fn tags(spec: &ConicalMapSpec, a: f64, c: ConeCoordinate, out: &ConeCoordinate) -> DiscreteTags {
    let cone_base = out.base();
    DiscreteTags {
        cone_base,
        stratum: cone_base.map(|w| spec.target().stratum_of(w)),
        interval: if c.is_apex() {
            None
        } else {
            spec.interval_at(a * c.radius())
        },
    }
}

/// The discrete parts agree with `ρ₀`: the interval containing 0 is in use.
fn settled(t: &DiscreteTags) -> bool {
    t.interval.is_none_or(|i| i == 0)
}

/// `(8D_k − 6D_{k−1} + D_{k−2}) / 3`, exact for errors quadratic in `a`
/// under step halving.
fn richardson(d2: &[f64], d1: &[f64], d0: &[f64]) -> Vec<f64> {
    d0.iter()
        .zip(d1)
        .zip(d2)
        .map(|((&k, &k1), &k2)| (8.0 * k - 6.0 * k1 + k2) / 3.0)
        .collect()
}

fn stabilization_index(trace: &[TraceStep]) -> Option<usize> {
    let last = trace.last()?.tags;
    let start = trace.iter().rposition(|s| s.tags != last).map_or(0, |i| i + 1);
    Some(start)
}

struct Limit {
    derivable: bool,
    value: TangentConicalPoint,
    trace: Vec<TraceStep>,
    stabilization_index: Option<usize>,
    residual: f64,
    failure: Option<String>,
}

fn limit(spec: &ConicalMapSpec, v: &[f64], x: &[f64], c: ConeCoordinate, cfg: &DeriveConfig) -> Result<Limit> {
    let mut trace: Vec<TraceStep> = Vec::new();
    for k in 0..=cfg.max_steps {
        let a = (-(k as f64)).exp2();
        let value = conjugate(spec, a, v, x, c)?;
        let t = tags(spec, a, c, &value.p.c);
        trace.push(TraceStep { a, value, tags: t });
        let n = trace.len();
        if n < cfg.min_steps {
            continue;
        }
        let (last, prev) = (&trace[n - 1], &trace[n - 2]);
        let step = point_distance(&last.value, &prev.value);
        let stable = trace[n - 3..].iter().all(|s| s.tags == last.tags);
        if step < cfg.tol && stable && settled(&last.tags) {
            let v_limit = richardson(&trace[n - 3].value.v, &prev.value.v, &last.value.v);
            let residual = max_diff(&v_limit, &last.value.v);
            let value = TangentConicalPoint {
                v: v_limit,
                p: last.value.p.clone(),
            };
            return Ok(Limit {
                derivable: true,
                value,
                stabilization_index: stabilization_index(&trace),
                trace,
                residual,
                failure: None,
            });
        }
    }
    let n = trace.len();
    let last = &trace[n - 1];
    let stable = n >= 3 && trace[n - 3..].iter().all(|s| s.tags == last.tags);
    let failure = if !stable {
        "discrete part does not stabilize along the schedule".to_string()
    } else if !settled(&last.tags) {
        "cone action never enters the interval containing 0".to_string()
    } else {
        format!(
            "real part is not Cauchy: last step {:.3e} exceeds tolerance {:.1e}",
            point_distance(&last.value, &trace[n - 2].value),
            cfg.tol
        )
    };
    Ok(Limit {
        derivable: false,
        value: last.value.clone(),
        stabilization_index: if stable { stabilization_index(&trace) } else { None },
        residual: f64::INFINITY,
        trace,
        failure: Some(failure),
    })
}

fn shifted(p: &[f64], by: f64) -> Vec<f64> {
    p.iter().map(|t| t + by).collect()
}

/// Eight perturbed inputs around `(v, x, c)`.
fn probe_inputs(spec: &ConicalMapSpec, v: &[f64], x: &[f64], c: ConeCoordinate, d: f64) -> Result<Vec<(String, Vec<f64>, Vec<f64>, ConeCoordinate)>> {
    let mut probes = vec![
        ("x+".to_string(), v.to_vec(), shifted(x, d), c),
        ("x-".to_string(), v.to_vec(), shifted(x, -d), c),
        ("v+".to_string(), shifted(v, d), x.to_vec(), c),
        ("v-".to_string(), shifted(v, -d), x.to_vec(), c),
    ];
    match c {
        ConeCoordinate::Ray { radius, base } => {
            probes.push(("y+".into(), v.to_vec(), x.to_vec(), ConeCoordinate::new(radius * (1.0 + d), base)?));
            probes.push(("y-".into(), v.to_vec(), x.to_vec(), ConeCoordinate::new(radius * (1.0 - d), base)?));
        }
        ConeCoordinate::Apex => {
            // approach the apex along rays over the first and last base points
            let n = spec.source().len();
            let bases = if n == 0 { vec![] } else { vec![0, n - 1] };
            for (i, z) in bases.into_iter().enumerate() {
                probes.push((format!("ray{i}"), v.to_vec(), x.to_vec(), ConeCoordinate::new(d, z)?));
            }
            while probes.len() < 6 {
                probes.push(("apex".into(), v.to_vec(), x.to_vec(), c));
            }
        }
    }
    probes.push(("xv+".into(), shifted(v, d), shifted(x, d), c));
    probes.push(("xv-".into(), shifted(v, -d), shifted(x, -d), c));
    Ok(probes)
}

/// `D f` at `(v, x, c)`.
pub fn derive(spec: &ConicalMapSpec, v: &[f64], x: &[f64], c: ConeCoordinate, cfg: &DeriveConfig) -> Result<DerivativeReport> {
    cfg.validate()?;
    spec.check_point(x, &c)?;
    if v.len() != spec.dim() {
        return Err(Error::input(format!("tangent vector must have {} coordinates", spec.dim())));
    }
    let main = limit(spec, v, x, c, cfg)?;
    let mut report = DerivativeReport {
        order: 1,
        route: Route::Stratified,
        derivable: main.derivable,
        value: main.value,
        trace: main.trace,
        stabilization_index: main.stabilization_index,
        residual: main.residual,
        probes: Vec::new(),
        failure: main.failure,
    };
    if !report.derivable || !cfg.probes {
        return Ok(report);
    }
    let radius = report.value.p.c.radius();
    let scale = 1.0 + report.value.v.iter().chain(&report.value.p.x).fold(radius, |m, t| m.max(t.abs()));
    for (label, pv, px, pc) in probe_inputs(spec, v, x, c, cfg.probe_step)? {
        let distance = match limit(spec, &pv, &px, pc, cfg) {
            Ok(l) if l.derivable => point_distance(&l.value, &report.value),
            Ok(_) => f64::INFINITY,
            Err(Error::Numeric(_)) => f64::INFINITY,
            Err(e) => return Err(e),
        };
        let ok = distance <= cfg.probe_tol * scale;
        if !ok && report.failure.is_none() {
            report.failure = Some(format!("extension is not continuous: probe {label} moved by {distance:.3e}"));
        }
        report.probes.push(Probe { label, distance, ok });
    }
    report.derivable = report.probes.iter().all(|p| p.ok);
    Ok(report)
}

/// `(Dk_x(v), k(x), [y, ρ₀(z)])` from the symbolic derivative of `k`.
pub fn closed_form_parametric(spec: &ConicalMapSpec, v: &[f64], x: &[f64], c: ConeCoordinate) -> Result<TangentConicalPoint> {
    spec.check_point(x, &c)?;
    let MapKind::Parametric { k, rho } = spec.kind() else {
        return Err(Error::input("closed form needs a parametric map"));
    };
    let rho0 = rho.zero_table();
    Ok(TangentConicalPoint {
        v: k.jacobian_apply(x, v)?,
        p: ConicalPoint::new(k.eval(x)?, c.map_base(|z| rho0[z])),
    })
}

/// `D_x f: (v, c) ↦ (vector part, cone part)` at a fixed `x`.
#[derive(Clone, Debug)]
pub struct FiberDerivative {
    spec: ConicalMapSpec,
    x: Vec<f64>,
    base_value: Vec<f64>,
    cfg: DeriveConfig,
}

impl FiberDerivative {
    pub fn x(&self) -> &[f64] {
        &self.x
    }

    /// `f(x, ⋆)`, the point every fiber value sits over.
    pub fn base_value(&self) -> &[f64] {
        &self.base_value
    }

    pub fn apply(&self, v: &[f64], c: ConeCoordinate) -> Result<(Vec<f64>, ConeCoordinate)> {
        let r = derive(&self.spec, v, &self.x, c, &self.cfg)?;
        if !r.derivable {
            return Err(Error::NotDerivable(r.failure.unwrap_or_default()));
        }
        Ok((r.value.v, r.value.p.c))
    }
}

/// Checks derivability at `(0, x, ⋆)` and returns the fiber map at `x`.
pub fn d_at_point(spec: &ConicalMapSpec, x: &[f64], cfg: &DeriveConfig) -> Result<FiberDerivative> {
    let zero = vec![0.0; spec.dim()];
    let r = derive(spec, &zero, x, ConeCoordinate::Apex, cfg)?;
    if !r.derivable {
        return Err(Error::NotDerivable(r.failure.unwrap_or_default()));
    }
    Ok(FiberDerivative {
        spec: spec.clone(),
        x: x.to_vec(),
        base_value: r.value.p.x,
        cfg: cfg.clone(),
    })
}

/// A derivative re-read as a map between discrete spaces, every point its
/// own affine piece. Carries no numerics beyond the wrapped report.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteWrapper {
    report: DerivativeReport,
}

impl DiscreteWrapper {
    pub fn is_discrete(&self) -> bool {
        true
    }

    pub fn value(&self) -> &TangentConicalPoint {
        &self.report.value
    }

    pub fn unwrap(self) -> DerivativeReport {
        self.report
    }
}

pub fn wrap_discrete(report: DerivativeReport) -> Result<DiscreteWrapper> {
    if !report.derivable {
        return Err(Error::NotDerivable(
            report.failure.clone().unwrap_or_else(|| "report is not derivable".into()),
        ));
    }
    Ok(DiscreteWrapper { report })
}

/// `n = 1` is [`derive`]. `n = 2` differentiates the wrapped `D f`, seen as
/// `(v, x) ↦ (Dk_x(v), k(x))` on `ℝ²ⁱ`, at `(v, x)` in direction `(0, v)`.
/// The vector part is then `(D²k_x(v, v), Dk_x(v))`.
pub fn nth_derivative(spec: &ConicalMapSpec, n: u32, v: &[f64], x: &[f64], c: ConeCoordinate, cfg: &DeriveConfig) -> Result<DerivativeReport> {
    match n {
        1 => derive(spec, v, x, c, cfg),
        2 => second_derivative(spec, v, x, c, cfg),
        0 => Err(Error::input("derivative order must be at least 1")),
        _ => Err(Error::Unsupported(format!(
            "order {n} derivatives: iterated finite differences are only trusted up to order 2"
        ))),
    }
}

fn second_derivative(spec: &ConicalMapSpec, v: &[f64], x: &[f64], c: ConeCoordinate, cfg: &DeriveConfig) -> Result<DerivativeReport> {
    cfg.validate()?;
    let inner_cfg = DeriveConfig {
        probes: false,
        ..cfg.clone()
    };
    let inner = |xv: &[f64]| -> Result<Option<TangentConicalPoint>> {
        let r = derive(spec, v, xv, c, &inner_cfg)?;
        Ok(r.derivable.then_some(r.value))
    };
    let first = derive(spec, v, x, c, cfg)?;
    let wrapped = match wrap_discrete(first) {
        Ok(w) => w,
        Err(Error::NotDerivable(why)) => {
            return Err(Error::NotDerivable(format!("first derivative: {why}")));
        }
        Err(e) => return Err(e),
    };
    let base = wrapped.value().clone();
    let outer_point: Vec<f64> = base.v.iter().chain(&base.p.x).copied().collect();
    let mut trace = Vec::new();
    let mut failure = None;
    for k in 0..=cfg.second_max_steps {
        let a = (-(k as f64)).exp2();
        let moved: Vec<f64> = x.iter().zip(v).map(|(x, v)| x + a * v).collect();
        let Some(image) = inner(&moved)? else {
            failure = Some(format!("first derivative fails near x at step {k}"));
            break;
        };
        let image_point: Vec<f64> = image.v.iter().chain(&image.p.x).copied().collect();
        let quotient: Vec<f64> = image_point
            .iter()
            .zip(&outer_point)
            .map(|(p, q)| (p - q) / a)
            .collect();
        let value = TangentConicalPoint {
            v: quotient,
            p: ConicalPoint::new(outer_point.clone(), base.p.c),
        };
        let t = DiscreteTags {
            cone_base: image.p.c.base(),
            stratum: image.p.c.base().map(|w| spec.target().stratum_of(w)),
            interval: None,
        };
        if image.p.c != base.p.c {
            failure = Some(format!("cone part of the first derivative moves at step {k}"));
        }
        trace.push(TraceStep { a, value, tags: t });
        let n = trace.len();
        if failure.is_some() {
            break;
        }
        if n >= cfg.min_steps && max_diff(&trace[n - 1].value.v, &trace[n - 2].value.v) < cfg.second_tol {
            let limit = richardson(&trace[n - 3].value.v, &trace[n - 2].value.v, &trace[n - 1].value.v);
            let residual = max_diff(&limit, &trace[n - 1].value.v);
            return Ok(DerivativeReport {
                order: 2,
                route: Route::SchemeMap { order: 2 },
                derivable: true,
                value: TangentConicalPoint {
                    v: limit,
                    p: ConicalPoint::new(outer_point, base.p.c),
                },
                stabilization_index: stabilization_index(&trace),
                trace,
                residual,
                probes: Vec::new(),
                failure: None,
            });
        }
    }
    let value = trace.last().map(|s| s.value.clone()).unwrap_or(TangentConicalPoint {
        v: vec![f64::NAN; outer_point.len()],
        p: ConicalPoint::new(outer_point, base.p.c),
    });
    Ok(DerivativeReport {
        order: 2,
        route: Route::SchemeMap { order: 2 },
        derivable: false,
        value,
        stabilization_index: None,
        trace,
        residual: f64::INFINITY,
        probes: Vec::new(),
        failure: Some(failure.unwrap_or_else(|| "second difference quotients are not Cauchy".into())),
    })
}

/// One base point mapped onto two target points, alternating between them on
/// `[2⁻⁽ᵐ⁺¹⁾, 2⁻ᵐ)` for `m = 0..=50`. Along `a_k = 2⁻ᵏ` at radius 1 the
/// cone slot flips at every step and never reaches `ρ₀`.
pub fn oscillating_spec(k: ExprFunction) -> Result<ConicalMapSpec> {
    let source = FiniteBase::discrete(&["z"])?;
    let target = FiniteBase::single_stratum(&["u", "w"], "s")?;
    let mut breaks = vec![0.0];
    let mut tables = vec![vec![0]];
    for m in (0..=50).rev() {
        breaks.push((-(m as f64) - 1.0).exp2());
        tables.push(vec![m % 2]);
    }
    breaks.push(1.0);
    tables.push(vec![1]);
    ConicalMapSpec::parametric(k, PiecewiseConeAction::new(breaks, tables)?, source, target)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base2() -> FiniteBase {
        FiniteBase::single_stratum(&["p", "q"], "s").unwrap()
    }

    fn square_spec() -> ConicalMapSpec {
        let k = ExprFunction::parse(1, &["x1^2"]).unwrap();
        ConicalMapSpec::parametric(k, PiecewiseConeAction::constant(vec![1, 0]), base2(), base2()).unwrap()
    }

    fn ray(t: f64, z: usize) -> ConeCoordinate {
        ConeCoordinate::new(t, z).unwrap()
    }

    #[test]
    fn conjugate_examples() {
        let id = ConicalMapSpec::identity(1, base2()).unwrap();
        let p = conjugate(&id, 0.3, &[2.0], &[1.0], ray(0.7, 1)).unwrap();
        assert!((p.v[0] - 2.0).abs() < 1e-12);
        assert_eq!(p.p.c, ray(0.7, 1));

        let q = conjugate(&square_spec(), 0.5, &[1.0], &[3.0], ConeCoordinate::Apex).unwrap();
        assert!((q.v[0] - 6.5).abs() < 1e-12);

        let rho = PiecewiseConeAction::new(vec![0.0, 1.0], vec![vec![0, 1], vec![1, 0]]).unwrap();
        let k = ExprFunction::parse(1, &["x1"]).unwrap();
        let spec = ConicalMapSpec::parametric(k, rho, base2(), base2()).unwrap();
        // a·y = 0.5 lies in [0, 1): first table
        let r = conjugate(&spec, 0.25, &[0.0], &[0.0], ray(2.0, 0)).unwrap();
        assert_eq!(r.p.c, ray(2.0, 0));
        let r = conjugate(&spec, 1.0, &[0.0], &[0.0], ray(2.0, 0)).unwrap();
        assert_eq!(r.p.c, ray(2.0, 1));
    }

    #[test]
    fn identity_derivative() {
        let id = ConicalMapSpec::identity(2, base2()).unwrap();
        let r = derive(&id, &[1.5, -2.0], &[0.3, 0.1], ray(0.4, 1), &DeriveConfig::default()).unwrap();
        assert!(r.derivable);
        assert!((r.value.v[0] - 1.5).abs() < 1e-9 && (r.value.v[1] + 2.0).abs() < 1e-9);
        assert_eq!(r.value.p.x, vec![0.3, 0.1]);
        assert_eq!(r.value.p.c, ray(0.4, 1));
        assert!(r.residual < 1e-9);
        assert_eq!(r.probes.len(), 8);
    }

    #[test]
    fn square_derivative() {
        let r = derive(&square_spec(), &[1.0], &[3.0], ray(0.5, 0), &DeriveConfig::default()).unwrap();
        assert!(r.derivable, "{:?}", r.failure);
        assert!((r.value.v[0] - 6.0).abs() < 1e-6);
        assert_eq!(r.value.p.x, vec![9.0]);
        assert_eq!(r.value.p.c, ray(0.5, 1));
        let closed = closed_form_parametric(&square_spec(), &[1.0], &[3.0], ray(0.5, 0)).unwrap();
        assert!((closed.v[0] - 6.0).abs() < 1e-12);
        assert_eq!(closed.p.c, r.value.p.c);
    }

    #[test]
    fn oscillating_cone_action_is_not_derivable() {
        let spec = oscillating_spec(ExprFunction::parse(1, &["x1"]).unwrap()).unwrap();
        let r = derive(&spec, &[1.0], &[0.0], ray(1.0, 0), &DeriveConfig::default()).unwrap();
        assert!(!r.derivable);
        assert_eq!(r.trace.len(), 41);
        assert!(r.trace.windows(2).all(|w| w[0].tags.cone_base != w[1].tags.cone_base));
        // at the apex nothing oscillates
        let r = derive(&spec, &[1.0], &[0.0], ConeCoordinate::Apex, &DeriveConfig::default()).unwrap();
        assert!(r.derivable);
    }

    #[test]
    fn slowly_entering_zero_interval() {
        let rho = PiecewiseConeAction::new(vec![0.0, 1.0], vec![vec![0, 1], vec![1, 0]]).unwrap();
        let k = ExprFunction::parse(1, &["x1"]).unwrap();
        let spec = ConicalMapSpec::parametric(k, rho, base2(), base2()).unwrap();
        let r = derive(&spec, &[1.0], &[0.0], ray(1000.0, 0), &DeriveConfig::default()).unwrap();
        assert!(r.derivable, "{:?}", r.failure);
        assert_eq!(r.value.p.c, ray(1000.0, 0));
        assert_eq!(r.stabilization_index, Some(10));
    }

    #[test]
    fn fiber_derivative_is_linear() {
        let d = d_at_point(&square_spec(), &[3.0], &DeriveConfig::default()).unwrap();
        assert_eq!(d.base_value(), &[9.0]);
        for v in [-1.0, 0.5, 2.0] {
            let (w, _) = d.apply(&[v], ConeCoordinate::Apex).unwrap();
            assert!((w[0] - 6.0 * v).abs() < 1e-6);
        }
        let (w, c) = d.apply(&[0.0], ray(1.0, 0)).unwrap();
        assert_eq!(w, vec![0.0]);
        assert_eq!(c, ray(1.0, 1));
    }

    #[test]
    fn wrapping_round_trips() {
        let r = derive(&square_spec(), &[1.0], &[1.0], ConeCoordinate::Apex, &DeriveConfig::default()).unwrap();
        let w = wrap_discrete(r.clone()).unwrap();
        assert!(w.is_discrete());
        assert_eq!(w.value(), &r.value);
        assert_eq!(w.unwrap(), r);
        let mut bad = r;
        bad.derivable = false;
        assert!(wrap_discrete(bad).is_err());
    }

    #[test]
    fn second_derivatives() {
        let cfg = DeriveConfig::default();
        let r = nth_derivative(&square_spec(), 2, &[1.0], &[0.7], ConeCoordinate::Apex, &cfg).unwrap();
        assert!(r.derivable, "{:?}", r.failure);
        assert_eq!(r.route, Route::SchemeMap { order: 2 });
        assert!((r.leading_coefficient()[0] - 2.0).abs() < 1e-3);

        let k = ExprFunction::parse(1, &["2*x1+1"]).unwrap();
        let affine = ConicalMapSpec::parametric(k, PiecewiseConeAction::constant(vec![0, 1]), base2(), base2()).unwrap();
        let r = nth_derivative(&affine, 2, &[1.0], &[-1.3], ray(0.2, 0), &cfg).unwrap();
        assert!(r.leading_coefficient()[0].abs() < 1e-6);

        let id = ConicalMapSpec::identity(1, base2()).unwrap();
        let r = nth_derivative(&id, 2, &[2.0], &[0.5], ConeCoordinate::Apex, &cfg).unwrap();
        assert!(r.leading_coefficient()[0].abs() < 1e-9);
        // map part: direction (0, v) goes to (0, v)
        assert!((r.value.v[1] - 2.0).abs() < 1e-9);

        assert!(matches!(
            nth_derivative(&id, 3, &[1.0], &[0.0], ConeCoordinate::Apex, &cfg),
            Err(Error::Unsupported(_))
        ));
    }
}
