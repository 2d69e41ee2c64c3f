use conical_core::cone::{ConeCoordinate, TangentConicalPoint, CONE_POINT};
use conical_core::deriv::{nth_derivative, DeriveConfig, FiniteBase, Route};
use serde_json::{json, Map, Value};

use super::finish;
use crate::docs::{load, QueryDoc};
use crate::error::{CliError, Context};
use crate::output::{float, floats};
use crate::DeriveArgs;

fn cone_json(c: &ConeCoordinate, base: &FiniteBase) -> Value {
    match c {
        ConeCoordinate::Apex => Value::String(CONE_POINT.into()),
        ConeCoordinate::Ray { radius, base: z } => json!({ "t": float(*radius), "z": base.point(*z) }),
    }
}

fn point_json(p: &TangentConicalPoint, base: &FiniteBase) -> Value {
    json!({ "v": floats(&p.v), "x": floats(&p.p.x), "cone": cone_json(&p.p.c, base) })
}

pub fn derive(args: &DeriveArgs) -> Result<(), CliError> {
    let mut cfg = crate::RunConfig::new("derive", args.common.seed);
    let query = load::<QueryDoc>(&args.query)?;
    cfg.input("query", &query.digest);
    let q = query.doc;
    let defaults = DeriveConfig::default();
    cfg.tol = Some(args.tol.or(q.tol).unwrap_or(defaults.tol));
    cfg.max_steps = Some(args.max_steps.or(q.max_steps).unwrap_or(defaults.max_steps));
    cfg.validate()?;

    let spec = q.spec.build(&args.query)?;
    let c = q.point.cone.build(&args.query, spec.source())?;
    let derive_cfg = DeriveConfig {
        tol: cfg.tol.expect("set above"),
        max_steps: cfg.max_steps.expect("set above"),
        ..defaults
    };
    let report = nth_derivative(&spec, q.order, &q.point.v, &q.point.x, c, &derive_cfg).context(args.query.display())?;

    let target = spec.target();
    let trace: Vec<Value> = report
        .trace
        .iter()
        .map(|s| {
            json!({
                "a": float(s.a),
                "value": point_json(&s.value, target),
                "cone_base": s.tags.cone_base.map(|z| target.point(z)),
                "stratum": s.tags.stratum.map(|k| target.poset().label(k)),
                "interval": s.tags.interval,
            })
        })
        .collect();
    let probes: Vec<Value> = report
        .probes
        .iter()
        .map(|p| json!({ "label": p.label, "distance": float(p.distance), "ok": p.ok }))
        .collect();

    let mut body = Map::new();
    body.insert("order".into(), json!(report.order));
    body.insert(
        "route".into(),
        match report.route {
            Route::Stratified => json!({ "kind": "stratified" }),
            Route::SchemeMap { order } => json!({ "kind": "scheme-map", "order": order }),
        },
    );
    body.insert("derivable".into(), Value::Bool(report.derivable));
    body.insert("value".into(), point_json(&report.value, target));
    body.insert("leading_coefficient".into(), floats(report.leading_coefficient()));
    body.insert("residual".into(), float(report.residual));
    body.insert("stabilization_index".into(), json!(report.stabilization_index));
    body.insert("failure".into(), json!(report.failure));
    body.insert("probes".into(), Value::Array(probes));
    body.insert("trace".into(), Value::Array(trace));
    finish(&cfg, &args.common, body)?;
    if !report.derivable {
        return Err(CliError::NotConverged(format!(
            "not derivable: {}",
            report.failure.as_deref().unwrap_or("limit did not settle")
        )));
    }
    Ok(())
}
