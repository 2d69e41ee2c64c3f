//! Input documents. All are JSON; unknown fields are rejected.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use conical_core::cone::ConeCoordinate;
use conical_core::deriv::{ConicalMapSpec, ExprFunction, FiniteBase, MapKind, PiecewiseConeAction};
use conical_core::forms::{LieAlgebraPresentation, Q};
use conical_core::order::{Poset, Relation};
use conical_core::stratify::Cover;
use conical_core::topology::{alexandroff_from_poset, generate_topology, spec_zmod, FiniteSpace};
use num_traits::Num;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::error::{CliError, Context};

/// A parsed document with the digest of its bytes.
pub struct Loaded<T> {
    pub doc: T,
    pub digest: String,
}

pub fn load<T: DeserializeOwned>(path: &Path) -> Result<Loaded<T>, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::document(path, e.to_string()))?;
    let text = std::str::from_utf8(&bytes).map_err(|e| CliError::document(path, format!("not UTF-8: {e}")))?;
    let doc = serde_json::from_str(text).map_err(|e| CliError::document(path, e.to_string()))?;
    Ok(Loaded {
        doc,
        digest: hex::encode(Sha256::digest(&bytes)),
    })
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub points: Option<Vec<String>>,
    pub opens: Option<Vec<Vec<String>>>,
    pub basis: Option<Vec<Vec<String>>>,
    pub poset: Option<Vec<(String, String)>>,
    pub spec_zmod: Option<u64>,
}

/// Closes `[lesser, greater]` pairs reflexively and transitively.
fn poset_from_pairs(elements: &[String], pairs: &[(String, String)]) -> conical_core::Result<Poset> {
    let index = |name: &str| {
        elements
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| conical_core::Error::UnknownPoint(name.to_string()))
    };
    let mut idx = Vec::with_capacity(pairs.len());
    for (a, b) in pairs {
        idx.push((index(a)?, index(b)?));
    }
    let order = Relation::from_pairs(elements.len(), idx).transitive_closure().reflexive_closure();
    Poset::new(elements.to_vec(), order)
}

impl SpaceDoc {
    pub fn build(&self, path: &Path) -> Result<FiniteSpace, CliError> {
        let sources = [
            self.opens.is_some(),
            self.basis.is_some(),
            self.poset.is_some(),
            self.spec_zmod.is_some(),
        ];
        if sources.iter().filter(|&&s| s).count() != 1 {
            return Err(CliError::document(
                path,
                "exactly one of `opens`, `basis`, `poset`, `spec_zmod` must be present",
            ));
        }
        let ctx = path.display();
        if let Some(n) = self.spec_zmod {
            let space = spec_zmod(n).context(ctx)?;
            if let Some(points) = &self.points {
                let mut given = points.clone();
                given.sort();
                if given != space.points() {
                    return Err(CliError::document(
                        path,
                        format!("`points` must be the primes {:?} when `spec_zmod` is given", space.points()),
                    ));
                }
            }
            return Ok(space);
        }
        let points = self
            .points
            .as_ref()
            .ok_or_else(|| CliError::document(path, "missing field `points`"))?;
        if let Some(opens) = &self.opens {
            return FiniteSpace::from_opens(points, opens).context(ctx);
        }
        if let Some(basis) = &self.basis {
            return generate_topology(points, basis).context(ctx);
        }
        let pairs = self.poset.as_ref().expect("one source is present");
        let poset = poset_from_pairs(points, pairs).context(&ctx)?;
        alexandroff_from_poset(&poset).context(ctx)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverDoc {
    pub cover: Vec<Vec<String>>,
}

impl CoverDoc {
    pub fn build(&self, space: &FiniteSpace, path: &Path) -> Result<Cover, CliError> {
        Cover::from_names(space, &self.cover).context(path.display())
    }
}

#[derive(Clone, Copy, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum MapMode {
    #[default]
    Restricted,
    IdentityStratification,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub f: Vec<(String, String)>,
    pub representatives: Option<Vec<String>>,
    #[serde(default)]
    pub mode: MapMode,
}

/// A bracket index: position in the basis (from 0) or a basis name.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum BasisRef {
    Index(usize),
    Name(String),
}

/// `"p/q"`, `"p"` or a JSON integer.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum RationalDoc {
    Int(i64),
    Text(String),
}

impl RationalDoc {
    fn value(&self) -> Result<Q, String> {
        match self {
            RationalDoc::Int(n) => Ok(Q::from_integer((*n).into())),
            RationalDoc::Text(s) => {
                let s = s.trim();
                let parsed = if s.contains('/') {
                    Q::from_str_radix(s, 10)
                } else {
                    Q::from_str_radix(&format!("{s}/1"), 10)
                };
                parsed.map_err(|_| format!("`{s}` is not a rational of the form p/q"))
            }
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieDoc {
    pub dim: usize,
    pub basis: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<(BasisRef, BasisRef, Vec<RationalDoc>)>,
}

impl LieDoc {
    pub fn build(&self, path: &Path) -> Result<LieAlgebraPresentation, CliError> {
        let basis = match &self.basis {
            Some(b) if b.len() != self.dim => {
                return Err(CliError::document(
                    path,
                    format!("`basis` has {} names but `dim` is {}", b.len(), self.dim),
                ))
            }
            Some(b) => b.clone(),
            None => (1..=self.dim).map(|i| format!("e{i}")).collect(),
        };
        let resolve = |r: &BasisRef| match r {
            BasisRef::Index(i) => Ok(*i),
            BasisRef::Name(n) => basis
                .iter()
                .position(|b| b == n)
                .ok_or_else(|| CliError::document(path, format!("unknown basis element `{n}`"))),
        };
        let mut brackets = Vec::with_capacity(self.brackets.len());
        for (t, (i, j, v)) in self.brackets.iter().enumerate() {
            let coeffs = v
                .iter()
                .map(RationalDoc::value)
                .collect::<Result<Vec<Q>, String>>()
                .map_err(|m| CliError::document(path, format!("brackets[{t}]: {m}")))?;
            brackets.push((resolve(i)?, resolve(j)?, coeffs));
        }
        LieAlgebraPresentation::from_brackets(basis, &brackets).context(path.display())
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseDoc {
    pub points: Vec<String>,
    /// Point ↦ stratum label; every point its own stratum when absent.
    pub strata: Option<BTreeMap<String, String>>,
    /// `[lesser, greater]` pairs of stratum labels.
    #[serde(default)]
    pub order: Vec<(String, String)>,
}

impl BaseDoc {
    fn build(&self, path: &Path, field: &str) -> Result<FiniteBase, CliError> {
        let ctx = format!("{}: {field}", path.display());
        let Some(strata) = &self.strata else {
            if !self.order.is_empty() {
                return Err(CliError::document(path, format!("{field}: `order` needs `strata`")));
            }
            return FiniteBase::discrete(&self.points).context(ctx);
        };
        let mut labels: Vec<String> = strata.values().cloned().collect();
        labels.sort();
        labels.dedup();
        let mut stratum = Vec::with_capacity(self.points.len());
        for p in &self.points {
            let label = strata
                .get(p)
                .ok_or_else(|| CliError::document(path, format!("{field}: point `{p}` has no stratum")))?;
            stratum.push(labels.binary_search(label).expect("label collected above"));
        }
        if let Some(extra) = strata.keys().find(|k| !self.points.contains(k)) {
            return Err(CliError::document(path, format!("{field}: `{extra}` is not a point")));
        }
        let poset = poset_from_pairs(&labels, &self.order).context(&ctx)?;
        FiniteBase::new(self.points.clone(), stratum, poset).context(ctx)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RhoPieceDoc {
    /// Left end of the half-open interval `[from, next from)`.
    pub from: f64,
    pub table: BTreeMap<String, String>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", deny_unknown_fields)]
pub enum MapSpecDoc {
    Identity {
        dim: usize,
        base: BaseDoc,
    },
    Obvious {
        dim: usize,
        source: BaseDoc,
        target: BaseDoc,
        table: BTreeMap<String, String>,
        poset_map: Option<BTreeMap<String, String>>,
    },
    Parametric {
        k: Vec<String>,
        source: BaseDoc,
        target: Option<BaseDoc>,
        rho: Vec<RhoPieceDoc>,
        poset_map: Option<BTreeMap<String, String>>,
    },
}

fn point_table(
    path: &Path,
    field: &str,
    table: &BTreeMap<String, String>,
    source: &FiniteBase,
    target: &FiniteBase,
) -> Result<Vec<usize>, CliError> {
    let mut out = Vec::with_capacity(source.len());
    for p in source.points() {
        let image = table
            .get(p)
            .ok_or_else(|| CliError::document(path, format!("{field}: no image for `{p}`")))?;
        out.push(target.index_of(image).context(format!("{}: {field}", path.display()))?);
    }
    if let Some(extra) = table.keys().find(|k| !source.points().contains(k)) {
        return Err(CliError::document(path, format!("{field}: `{extra}` is not a source point")));
    }
    Ok(out)
}

fn class_table(
    path: &Path,
    map: &Option<BTreeMap<String, String>>,
    source: &FiniteBase,
    target: &FiniteBase,
) -> Result<Option<Vec<usize>>, CliError> {
    let Some(map) = map else {
        return Ok(None);
    };
    let mut out = Vec::new();
    for label in source.poset().labels() {
        let image = map
            .get(label)
            .ok_or_else(|| CliError::document(path, format!("poset_map: no image for stratum `{label}`")))?;
        out.push(
            target
                .poset()
                .index_of(image)
                .ok_or_else(|| CliError::document(path, format!("poset_map: unknown stratum `{image}`")))?,
        );
    }
    Ok(Some(out))
}

impl MapSpecDoc {
    pub fn build(&self, path: &Path) -> Result<ConicalMapSpec, CliError> {
        let ctx = path.display();
        match self {
            MapSpecDoc::Identity { dim, base } => {
                ConicalMapSpec::identity(*dim, base.build(path, "base")?).context(ctx)
            }
            MapSpecDoc::Obvious {
                dim,
                source,
                target,
                table,
                poset_map,
            } => {
                let (s, t) = (source.build(path, "source")?, target.build(path, "target")?);
                let table = point_table(path, "table", table, &s, &t)?;
                let classes = class_table(path, poset_map, &s, &t)?;
                ConicalMapSpec::new(*dim, MapKind::Obvious { table }, s, t, classes).context(ctx)
            }
            MapSpecDoc::Parametric {
                k,
                source,
                target,
                rho,
                poset_map,
            } => {
                let s = source.build(path, "source")?;
                let t = match target {
                    Some(t) => t.build(path, "target")?,
                    None => s.clone(),
                };
                let k = ExprFunction::parse(k.len(), k).context(format!("{ctx}: k"))?;
                let mut breaks = Vec::with_capacity(rho.len());
                let mut tables = Vec::with_capacity(rho.len());
                for (i, piece) in rho.iter().enumerate() {
                    breaks.push(piece.from);
                    tables.push(point_table(path, &format!("rho[{i}].table"), &piece.table, &s, &t)?);
                }
                let rho = PiecewiseConeAction::new(breaks, tables).context(format!("{ctx}: rho"))?;
                let classes = class_table(path, poset_map, &s, &t)?;
                ConicalMapSpec::new(k.arity(), MapKind::Parametric { k, rho }, s, t, classes).context(ctx)
            }
        }
    }
}

/// `"*"` for the cone point, or a ray coordinate.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum ConeDoc {
    Apex(String),
    Ray { t: f64, z: String },
}

impl ConeDoc {
    pub fn build(&self, path: &Path, base: &FiniteBase) -> Result<ConeCoordinate, CliError> {
        match self {
            ConeDoc::Apex(s) if s == conical_core::cone::CONE_POINT => Ok(ConeCoordinate::Apex),
            ConeDoc::Apex(s) => Err(CliError::document(
                path,
                format!("point.cone: expected \"*\" or {{\"t\": …, \"z\": …}}, got `{s}`"),
            )),
            ConeDoc::Ray { t, z } => {
                let z = base.index_of(z).context(format!("{}: point.cone", path.display()))?;
                ConeCoordinate::new(*t, z).context(format!("{}: point.cone", path.display()))
            }
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDoc {
    pub x: Vec<f64>,
    pub v: Vec<f64>,
    pub cone: ConeDoc,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QueryDoc {
    pub spec: MapSpecDoc,
    pub point: PointDoc,
    #[serde(default = "first_order")]
    pub order: u32,
    pub tol: Option<f64>,
    pub max_steps: Option<usize>,
}

fn first_order() -> u32 {
    1
}
