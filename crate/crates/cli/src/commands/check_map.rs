use conical_core::stratify::{standard_stratification, Stratification};
use conical_core::stratmap::{alt_induce_g, check_square, induce_g_with, representatives_from, choose_representatives};
use conical_core::topology::{FiniteSpace, PointMap};
use serde_json::{json, Map, Value};

use super::{finish, load_space, names};
use crate::docs::{load, CoverDoc, MapDoc, MapMode};
use crate::error::{CliError, Context};
use crate::CheckMapArgs;

fn stratification(
    space: &FiniteSpace,
    path: &std::path::Path,
    cfg: &mut crate::RunConfig,
) -> Result<Stratification, CliError> {
    let doc = load::<CoverDoc>(path)?;
    cfg.input("cover", &doc.digest);
    let cover = doc.doc.build(space, path)?;
    Ok(standard_stratification(&cover).context(path.display())?.0)
}

pub fn check_map(args: &CheckMapArgs) -> Result<(), CliError> {
    let mut cfg = crate::RunConfig::new("check-map", args.common.seed);
    let map_doc = load::<MapDoc>(&args.map)?;
    cfg.input("map", &map_doc.digest);
    let map = map_doc.doc;

    let (source, target) = match args.space.as_slice() {
        [one] => {
            let s = load_space(one, &mut cfg, "space")?;
            (s.clone(), s)
        }
        [src, tgt] => (load_space(src, &mut cfg, "space")?, load_space(tgt, &mut cfg, "space")?),
        _ => return Err(CliError::Usage("--space takes one or two files (source, target)".into())),
    };
    let f = PointMap::from_pairs(source.clone(), target.clone(), &map.f).context(args.map.display())?;

    let square = match map.mode {
        MapMode::Restricted => {
            let (c1, c2) = match args.cover.as_slice() {
                [one] => (one, one),
                [c1, c2] => (c1, c2),
                _ => return Err(CliError::Usage("--cover takes one or two files (source, target)".into())),
            };
            let s1 = stratification(&source, c1, &mut cfg)?;
            let s2 = stratification(&target, c2, &mut cfg)?;
            let reps = match &map.representatives {
                Some(chosen) => {
                    let idx = chosen
                        .iter()
                        .map(|n| source.index_of(n))
                        .collect::<Result<Vec<_>, _>>()
                        .context(args.map.display())?;
                    representatives_from(&s1, &idx).context(args.map.display())?
                }
                None => choose_representatives(&s1),
            };
            induce_g_with(&f, &s1, &s2, reps).context("check-map")?
        }
        MapMode::IdentityStratification => {
            let [c2] = args.cover.as_slice() else {
                return Err(CliError::Usage(
                    "identity-stratification mode takes exactly one --cover, for the target".into(),
                ));
            };
            let s2 = stratification(&target, c2, &mut cfg)?;
            alt_induce_g(&f, &s2).context("check-map")?
        }
    };
    let cert = check_square(&square).context("check-map")?;

    let sq = square.source.quotient();
    let tq = square.target.quotient();
    let mut g = Map::new();
    for (c, &d) in square.g.iter().enumerate() {
        g.insert(sq.representative_name(c).into(), Value::String(tq.representative_name(d).into()));
    }
    let off_domain: Vec<Value> = (0..source.len())
        .filter(|&x| tq.class_of(f.apply(x)) != square.g[sq.class_of(x)])
        .map(|x| {
            json!({
                "point": source.point(x),
                "via_top": tq.representative_name(tq.class_of(f.apply(x))),
                "via_bottom": tq.representative_name(square.g[sq.class_of(x)]),
            })
        })
        .collect();
    let witnesses: Vec<Value> = cert
        .witnesses
        .iter()
        .map(|w| {
            json!({
                "point": source.point(w.point),
                "image": target.point(w.image),
                "class": tq.representative_name(w.via_top),
            })
        })
        .collect();

    let mut body = Map::new();
    body.insert(
        "mode".into(),
        Value::String(match map.mode {
            MapMode::Restricted => "restricted".into(),
            MapMode::IdentityStratification => "identity-stratification".into(),
        }),
    );
    body.insert("domain".into(), names(&source, square.domain));
    body.insert("g".into(), Value::Object(g));
    body.insert(
        "certificate".into(),
        json!({
            "commutes_on_domain": true,
            "witnesses": witnesses,
            "f_continuous": cert.f_continuous,
            "f_continuous_second": cert.f_continuous_second,
            "g_monotone": cert.g_monotone,
            "commutes_everywhere": cert.commutes_everywhere,
            "fails_off_domain": off_domain,
            "g_is_identity": cert.g_is_identity,
        }),
    );
    body.insert(
        "summary".into(),
        Value::String(if cert.g_is_identity { "g = identity" } else { "g is not the identity" }.into()),
    );
    finish(&cfg, &args.common, body)
}
