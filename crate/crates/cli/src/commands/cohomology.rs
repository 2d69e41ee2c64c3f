use conical_core::forms::de_rham_complex;
use serde_json::{json, Map, Value};

use super::finish;
use crate::docs::{load, LieDoc};
use crate::error::{CliError, Context};
use crate::output::{matrix, strings};
use crate::CohomologyArgs;

pub fn cohomology(args: &CohomologyArgs) -> Result<(), CliError> {
    let mut cfg = crate::RunConfig::new("cohomology", args.common.seed);
    let lie = load::<LieDoc>(&args.lie)?;
    cfg.input("lie", &lie.digest);
    let g = lie.doc.build(&args.lie)?;
    let report = de_rham_complex(&g).context(args.lie.display())?;

    let mut body = Map::new();
    body.insert("dim".into(), json!(report.dim));
    body.insert("basis".into(), strings(g.basis()));
    body.insert(
        "differentials".into(),
        Value::Array(
            report
                .matrices
                .iter()
                .enumerate()
                .map(|(k, m)| json!({ "from_degree": k, "rows": m.rows(), "cols": m.cols(), "matrix": matrix(m) }))
                .collect(),
        ),
    );
    body.insert("ranks".into(), json!(report.ranks));
    body.insert("betti".into(), json!(report.betti));
    body.insert("euler".into(), json!(report.euler));
    finish(&cfg, &args.common, body)
}
