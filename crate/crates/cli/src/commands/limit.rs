use conical_core::refine::{refined_poset, representative_section, RefinementPair};
use conical_core::stratify::{quotient_poset, Cover, QuotientPoset};
use serde_json::{json, Map, Value};

use super::{finish, load_space, poset_json, write_dot};
use crate::docs::{load, CoverDoc};
use crate::error::{CliError, Context};
use crate::{dot, LimitArgs};

fn class_map(from: &QuotientPoset, to: &QuotientPoset, table: &[usize]) -> Value {
    let mut m = Map::new();
    for (c, &d) in table.iter().enumerate() {
        m.insert(from.representative_name(c).into(), Value::String(to.representative_name(d).into()));
    }
    Value::Object(m)
}

pub fn limit(args: &LimitArgs) -> Result<(), CliError> {
    let mut cfg = crate::RunConfig::new("limit", args.common.seed);
    cfg.witness = args.witness;
    cfg.dot = args.dot.is_some();
    let space = load_space(&args.space, &mut cfg, "space")?;
    let mut covers = Vec::with_capacity(args.cover.len());
    for path in &args.cover {
        let doc = load::<CoverDoc>(path)?;
        cfg.input("cover", &doc.digest);
        covers.push((path.display().to_string(), Some(doc.digest), doc.doc.build(&space, path)?));
    }
    if !covers.is_empty() && !args.witness {
        return Err(CliError::Usage("--cover is only used together with --witness".into()));
    }

    let refined = refined_poset(&space).context("limit")?;
    let fine = refined.poset();
    let mut body = Map::new();
    body.insert("points".into(), crate::output::strings(space.points()));
    body.insert("open_sets".into(), json!(refined.cover().len()));
    body.extend(poset_json(&space, fine));

    let mut all_retract = true;
    if args.witness {
        if covers.is_empty() {
            covers.push(("whole-space cover".into(), None, Cover::trivial(&space)));
        }
        let mut witnesses = Vec::with_capacity(covers.len());
        for (name, digest, cover) in covers {
            let surjection = refined.coarsening_onto(&cover).context(&name)?;
            let coarse = quotient_poset(&cover);
            let pair = RefinementPair::new(cover, refined.cover().clone()).context(&name)?;
            let section = representative_section(&pair).context(&name)?;
            all_retract &= section.retracts;
            witnesses.push(json!({
                "cover_digest": digest,
                "coarse_classes": coarse.len(),
                "surjection": class_map(fine, &coarse, &surjection.table),
                "order_pairs_checked": surjection.checked_pairs.len(),
                "section": class_map(&coarse, fine, &section.table),
                "section_injective": section.injective,
                "section_monotone": section.monotone,
                "section_retracts": section.retracts,
            }));
        }
        body.insert("witnesses".into(), Value::Array(witnesses));
    }

    if let Some(path) = &args.dot {
        write_dot(path, &dot::hasse(&fine.poset(), "refined"))?;
    }
    finish(&cfg, &args.common, body)?;
    if !all_retract {
        return Err(CliError::CheckFailed("a representative section does not retract".into()));
    }
    Ok(())
}
