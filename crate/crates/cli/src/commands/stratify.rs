use conical_core::stratify::{preorders_agree, standard_stratification, stratum_preimage_formula};
use serde_json::{json, Map, Value};

use super::{finish, load_space, names, poset_json, write_dot};
use crate::docs::{load, CoverDoc};
use crate::error::{CliError, Context};
use crate::{dot, StratifyArgs};

pub fn stratify(args: &StratifyArgs) -> Result<(), CliError> {
    let mut cfg = crate::RunConfig::new("stratify", args.common.seed);
    cfg.dot = args.dot.is_some();
    let space = load_space(&args.space, &mut cfg, "space")?;
    let cover_doc = load::<CoverDoc>(&args.cover)?;
    cfg.input("cover", &cover_doc.digest);
    let cover = cover_doc.doc.build(&space, &args.cover)?;

    let (strat, cert) = standard_stratification(&cover).context("stratify")?;
    let q = strat.quotient();

    let mut formula_ok = true;
    for c in 0..q.len() {
        if stratum_preimage_formula(&strat, c).is_err() {
            formula_ok = false;
        }
    }
    let agree = preorders_agree(&strat);

    let entries: Vec<Value> = cert
        .entries
        .iter()
        .map(|e| {
            json!({
                "up_set": e.up_set.iter().map(|&c| q.representative_name(c)).collect::<Vec<_>>(),
                "preimage": names(&space, e.preimage),
                "witness": e.witness.iter().map(|s| s.indices().to_vec()).collect::<Vec<_>>(),
            })
        })
        .collect();

    let mut body = Map::new();
    body.insert("points".into(), crate::output::strings(space.points()));
    body.insert(
        "cover".into(),
        Value::Array(cover.members().iter().map(|&m| names(&space, m)).collect()),
    );
    body.extend(poset_json(&space, q));
    body.insert(
        "certificate".into(),
        json!({ "continuous": true, "surjective": true, "open_sets_checked": entries.len(), "entries": entries }),
    );
    body.insert(
        "checks".into(),
        json!({ "preimage_formula": formula_ok, "preorders_agree": agree }),
    );

    if let Some(path) = &args.dot {
        write_dot(path, &dot::hasse(&q.poset(), "strata"))?;
    }
    finish(&cfg, &args.common, body)?;
    if !formula_ok || agree == Some(false) {
        return Err(CliError::CheckFailed("stratification checks failed; see `checks`".into()));
    }
    Ok(())
}
