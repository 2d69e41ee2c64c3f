//! Maps `ℝⁱ × C(X) → ℝⁱ × C(Y)` between cones on finite stratified bases.

use crate::cone::{ConeCoordinate, ConicalMap, ConicalPoint};
use crate::error::{Error, Result};
use crate::order::{MonotoneMap, Poset};

use super::expr::ExprFunction;

/// A finite space with a stratification onto a poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteBase {
    points: Vec<String>,
    stratum: Vec<usize>,
    poset: Poset,
}

impl FiniteBase {
    pub fn new(points: Vec<String>, stratum: Vec<usize>, poset: Poset) -> Result<Self> {
        if stratum.len() != points.len() {
            return Err(Error::input("every base point needs a stratum"));
        }
        if let Some(&s) = stratum.iter().find(|&&s| s >= poset.len()) {
            return Err(Error::input(format!("stratum {s} is not an element of the base poset")));
        }
        let mut hit = vec![false; poset.len()];
        stratum.iter().for_each(|&s| hit[s] = true);
        if let Some(s) = hit.iter().position(|h| !h) {
            return Err(Error::input(format!(
                "stratification misses `{}`",
                poset.label(s)
            )));
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(Error::input(format!("duplicate base point `{p}`")));
            }
        }
        Ok(FiniteBase {
            points,
            stratum,
            poset,
        })
    }

    /// Every point its own stratum, no relations.
    pub fn discrete<S: AsRef<str>>(points: &[S]) -> Result<Self> {
        let points: Vec<String> = points.iter().map(|p| p.as_ref().to_string()).collect();
        let n = points.len();
        FiniteBase::new(points.clone(), (0..n).collect(), Poset::antichain(points))
    }

    /// All points in a single stratum.
    pub fn single_stratum<S: AsRef<str>>(points: &[S], label: &str) -> Result<Self> {
        let points: Vec<String> = points.iter().map(|p| p.as_ref().to_string()).collect();
        let n = points.len();
        FiniteBase::new(points, vec![0; n], Poset::antichain(vec![label.to_string()]))
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &str {
        &self.points[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.points
            .iter()
            .position(|p| p == name)
            .ok_or_else(|| Error::UnknownPoint(name.to_string()))
    }

    pub fn stratum_of(&self, z: usize) -> usize {
        self.stratum[z]
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }
}

/// `y ↦ ρ_y`, constant on half-open intervals `[b_i, b_{i+1})` with `b_0 = 0`
/// and the last interval unbounded.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseConeAction {
    breaks: Vec<f64>,
    tables: Vec<Vec<usize>>,
}

impl PiecewiseConeAction {
    pub fn new(breaks: Vec<f64>, tables: Vec<Vec<usize>>) -> Result<Self> {
        if breaks.first() != Some(&0.0) {
            return Err(Error::input("the first cone interval must start at 0"));
        }
        if breaks.len() != tables.len() {
            return Err(Error::input(format!(
                "{} interval starts for {} tables",
                breaks.len(),
                tables.len()
            )));
        }
        if breaks.iter().any(|b| !b.is_finite()) || breaks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::input("interval starts must be finite and strictly increasing"));
        }
        let width = tables[0].len();
        if tables.iter().any(|t| t.len() != width) {
            return Err(Error::input("cone tables have different lengths"));
        }
        Ok(PiecewiseConeAction { breaks, tables })
    }

    /// A single table for all `y`.
    pub fn constant(table: Vec<usize>) -> Self {
        PiecewiseConeAction {
            breaks: vec![0.0],
            tables: vec![table],
        }
    }

    pub fn breaks(&self) -> &[f64] {
        &self.breaks
    }

    pub fn tables(&self) -> &[Vec<usize>] {
        &self.tables
    }

    /// Index of the interval containing `y ≥ 0`.
    pub fn interval_at(&self, y: f64) -> usize {
        self.breaks.partition_point(|&b| b <= y).saturating_sub(1)
    }

    pub fn table_at(&self, y: f64) -> &[usize] {
        &self.tables[self.interval_at(y)]
    }

    /// `ρ₀`
    pub fn zero_table(&self) -> &[usize] {
        &self.tables[0]
    }

    pub fn apply(&self, y: f64, z: usize) -> usize {
        self.table_at(y)[z]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum MapKind {
    /// `(x, [y, z]) ↦ (x, [y, φ(z)])`.
    Obvious { table: Vec<usize> },
    /// `(x, [y, z]) ↦ (k(x), [y, ρ_y(z)])`.
    Parametric { k: ExprFunction, rho: PiecewiseConeAction },
}

/// A conical map together with the base data it runs between.
#[derive(Clone, Debug, PartialEq)]
pub struct ConicalMapSpec {
    dim: usize,
    kind: MapKind,
    source: FiniteBase,
    target: FiniteBase,
    poset_map: MonotoneMap,
}

impl ConicalMapSpec {
    /// Validates the tables and checks that every one of them commutes with
    /// `poset_map`. Without an explicit map, it is read off `ρ₀` (or the
    /// obvious table) and must then be monotone.
    pub fn new(
        dim: usize,
        kind: MapKind,
        source: FiniteBase,
        target: FiniteBase,
        poset_map: Option<Vec<usize>>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::input("dimension must be positive"));
        }
        let tables: Vec<&[usize]> = match &kind {
            MapKind::Obvious { table } => vec![table.as_slice()],
            MapKind::Parametric { k, rho } => {
                if k.arity() != dim || k.output_dim() != dim {
                    return Err(Error::input(format!(
                        "k must map ℝ^{dim} to ℝ^{dim}; got {} variables and {} components",
                        k.arity(),
                        k.output_dim()
                    )));
                }
                rho.tables().iter().map(Vec::as_slice).collect()
            }
        };
        for t in &tables {
            if t.len() != source.len() {
                return Err(Error::input(format!(
                    "cone table has {} entries for {} base points",
                    t.len(),
                    source.len()
                )));
            }
            if let Some(&w) = t.iter().find(|&&w| w >= target.len()) {
                return Err(Error::input(format!("cone table refers to missing target point {w}")));
            }
        }
        let strata = source.poset().len();
        let class_table = match poset_map {
            Some(table) => table,
            None => {
                let mut table = vec![usize::MAX; strata];
                for z in 0..source.len() {
                    table[source.stratum_of(z)] = target.stratum_of(tables[0][z]);
                }
                table
            }
        };
        let poset_map = MonotoneMap::new(
            source.poset().clone(),
            target.poset().clone(),
            class_table,
        )?;
        for (i, t) in tables.iter().enumerate() {
            for z in 0..source.len() {
                let lhs = target.stratum_of(t[z]);
                let rhs = poset_map.apply(source.stratum_of(z));
                if lhs != rhs {
                    return Err(Error::NotCommutative {
                        point: format!("{} (table {i})", source.point(z)),
                        via_top: target.poset().label(lhs).to_string(),
                        via_bottom: target.poset().label(rhs).to_string(),
                    });
                }
            }
        }
        Ok(ConicalMapSpec {
            dim,
            kind,
            source,
            target,
            poset_map,
        })
    }

    /// The identity on `ℝⁱ × C(X)` with `X` discrete.
    pub fn identity(dim: usize, base: FiniteBase) -> Result<Self> {
        let table = (0..base.len()).collect();
        ConicalMapSpec::new(dim, MapKind::Obvious { table }, base.clone(), base, None)
    }

    /// `(x, [y, z]) ↦ (k(x), [y, ρ_y(z)])`.
    pub fn parametric(
        k: ExprFunction,
        rho: PiecewiseConeAction,
        source: FiniteBase,
        target: FiniteBase,
    ) -> Result<Self> {
        ConicalMapSpec::new(k.arity(), MapKind::Parametric { k, rho }, source, target, None)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &MapKind {
        &self.kind
    }

    pub fn source(&self) -> &FiniteBase {
        &self.source
    }

    pub fn target(&self) -> &FiniteBase {
        &self.target
    }

    pub fn poset_map(&self) -> &MonotoneMap {
        &self.poset_map
    }

    pub fn expression(&self) -> Option<&ExprFunction> {
        match &self.kind {
            MapKind::Parametric { k, .. } => Some(k),
            MapKind::Obvious { .. } => None,
        }
    }

    /// Index of the `ρ` interval in use for cone radius `y`; `None` for the
    /// obvious kind.
    pub fn interval_at(&self, y: f64) -> Option<usize> {
        match &self.kind {
            MapKind::Parametric { rho, .. } => Some(rho.interval_at(y)),
            MapKind::Obvious { .. } => None,
        }
    }

    pub(crate) fn check_point(&self, x: &[f64], c: &ConeCoordinate) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::input(format!(
                "point has {} coordinates, the map lives on ℝ^{}",
                x.len(),
                self.dim
            )));
        }
        if let Some(z) = c.base() {
            if z >= self.source.len() {
                return Err(Error::input(format!("cone base index {z} out of range")));
            }
        }
        Ok(())
    }

    /// The real part `ℝⁱ → ℝⁱ`.
    pub fn real_part(&self, x: &[f64]) -> Result<Vec<f64>> {
        match &self.kind {
            MapKind::Obvious { .. } => Ok(x.to_vec()),
            MapKind::Parametric { k, .. } => k.eval(x),
        }
    }

    /// The cone part `C(X) → C(Y)`.
    pub fn cone_part(&self, c: ConeCoordinate) -> ConeCoordinate {
        match &self.kind {
            MapKind::Obvious { table } => c.map_base(|z| table[z]),
            MapKind::Parametric { rho, .. } => {
                let y = c.radius();
                c.map_base(|z| rho.apply(y, z))
            }
        }
    }
}

impl ConicalMap for ConicalMapSpec {
    fn source_dim(&self) -> usize {
        self.dim
    }

    fn target_dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, p: &ConicalPoint) -> Result<ConicalPoint> {
        self.check_point(&p.x, &p.c)?;
        Ok(ConicalPoint::new(self.real_part(&p.x)?, self.cone_part(p.c)))
    }
}
