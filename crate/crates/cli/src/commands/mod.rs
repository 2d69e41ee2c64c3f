//! One function per subcommand. Each builds a JSON report, writes it, and
//! only then turns a failed check into an error so the report is kept.

mod check_map;
mod cohomology;
mod derive;
mod limit;
mod stratify;

pub use check_map::check_map;
pub use cohomology::cohomology;
pub use derive::derive;
pub use limit::limit;
pub use stratify::stratify;

use std::path::Path;

use conical_core::order::Poset;
use conical_core::stratify::QuotientPoset;
use conical_core::topology::{FiniteSpace, PointSet};
use serde_json::{json, Map, Value};

use crate::docs::{load, Loaded, SpaceDoc};
use crate::error::CliError;
use crate::output;
use crate::{Common, RunConfig, SelftestArgs};

pub fn selftest(args: &SelftestArgs) -> Result<(), CliError> {
    let mut cfg = RunConfig::new("selftest", args.common.seed);
    cfg.cases = Some(args.cases);
    cfg.inject_fault = args.inject_fault.clone();
    if args.cases == 0 {
        return Err(CliError::Usage("--cases must be positive".into()));
    }
    let summary = crate::selftest::run(args.common.seed, args.cases, args.inject_fault.as_deref())?;
    if args.table {
        cfg.table = true;
        let meta = cfg.meta();
        let text = format!(
            "{}seed {}  config {}  {}\n",
            summary.table(),
            args.common.seed,
            meta["config_hash"].as_str().unwrap_or_default(),
            if summary.passed() { "passed" } else { "FAILED" }
        );
        output::emit(&text, args.common.out.as_deref())?;
    } else {
        let mut body = Map::new();
        body.insert("passed".into(), Value::Bool(summary.passed()));
        body.insert("suites".into(), summary.to_json());
        finish(&cfg, &args.common, body)?;
    }
    if summary.passed() {
        Ok(())
    } else {
        Err(CliError::CheckFailed(format!(
            "selftest failed in: {}",
            summary.failed_suites().join(", ")
        )))
    }
}

pub(crate) fn load_space(path: &Path, cfg: &mut RunConfig, role: &str) -> Result<FiniteSpace, CliError> {
    let Loaded { doc, digest } = load::<SpaceDoc>(path)?;
    cfg.input(role, &digest);
    doc.build(path)
}

pub(crate) fn names(space: &FiniteSpace, set: PointSet) -> Value {
    output::strings(&space.names(set))
}

/// Classes with members and (when the poset came from a cover) signatures,
/// followed by the full order and its Hasse diagram, all by representative.
pub(crate) fn poset_json(space: &FiniteSpace, q: &QuotientPoset) -> Map<String, Value> {
    let classes: Vec<Value> = q
        .classes()
        .iter()
        .enumerate()
        .map(|(c, class)| {
            json!({
                "id": c,
                "representative": q.representative_name(c),
                "members": names(space, class.members),
                "signature": class.signature.as_ref().map(|s| s.indices().to_vec()),
            })
        })
        .collect();
    let poset = q.poset();
    let mut out = Map::new();
    out.insert("classes".into(), Value::Array(classes));
    out.insert("order".into(), pairs_json(&poset, poset.relation().strict_part().pairs()));
    out.insert("hasse".into(), pairs_json(&poset, poset.hasse_pairs()));
    out
}

fn pairs_json(poset: &Poset, pairs: Vec<(usize, usize)>) -> Value {
    Value::Array(
        pairs
            .into_iter()
            .map(|(i, j)| json!([poset.label(i), poset.label(j)]))
            .collect(),
    )
}

/// Adds `meta`, renders and writes the report.
pub(crate) fn finish(cfg: &RunConfig, common: &Common, mut body: Map<String, Value>) -> Result<(), CliError> {
    body.insert("meta".into(), cfg.meta());
    output::emit(&output::render(&Value::Object(body)), common.out.as_deref())
}

pub(crate) fn write_dot(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Output {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}
