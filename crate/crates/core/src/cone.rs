//! Cones on finite posets and spaces, the rescaling map γ and f_Δ.
//!
//! A cone coordinate `[t, z]` with `t = 0` is the apex regardless of `z`.
//! The apex is a separate variant rather than a zero radius, so equality is
//! the quotient equality and never depends on a float comparison.

use crate::error::{Error, Result};
use crate::order::{MonotoneMap, Poset, Relation};

/// Label of the adjoined bottom element.
pub const CONE_POINT: &str = "*";

/// `C(P)`: the poset `P` with a new least element at index 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetCone {
    base: Poset,
    poset: Poset,
}

impl PosetCone {
    pub fn base(&self) -> &Poset {
        &self.base
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Index in the cone of base element `p`.
    pub fn lift(&self, p: usize) -> usize {
        p + 1
    }

    /// `None` for the cone point.
    pub fn lower(&self, i: usize) -> Option<usize> {
        i.checked_sub(1)
    }
}

pub fn cone_poset(base: &Poset) -> Result<PosetCone> {
    if base.index_of(CONE_POINT).is_some() {
        return Err(Error::input(format!(
            "base poset already has an element named `{CONE_POINT}`"
        )));
    }
    let n = base.len();
    let order = Relation::from_fn(n + 1, |i, j| match (i, j) {
        (0, _) => true,
        (_, 0) => false,
        (i, j) => base.leq(i - 1, j - 1),
    });
    let mut labels = Vec::with_capacity(n + 1);
    labels.push(CONE_POINT.to_string());
    labels.extend(base.labels().iter().cloned());
    Ok(PosetCone {
        base: base.clone(),
        poset: Poset::new(labels, order)?,
    })
}

/// `C(g)`: apex to apex, `p ↦ g(p)`.
pub fn cone_map(g: &MonotoneMap) -> Result<MonotoneMap> {
    let source = cone_poset(g.source())?;
    let target = cone_poset(g.target())?;
    let mut table = Vec::with_capacity(source.len());
    table.push(0);
    table.extend(g.table().iter().map(|&q| q + 1));
    MonotoneMap::new(source.poset, target.poset, table)
}

/// A point `[t, z]` of `C(X)` for a finite `X` indexed by `usize`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ConeCoordinate {
    Apex,
    Ray { radius: f64, base: usize },
}

impl ConeCoordinate {
    /// `[t, z]`, collapsing `t = 0` to the apex.
    pub fn new(t: f64, z: usize) -> Result<Self> {
        if !t.is_finite() || t < 0.0 {
            return Err(Error::input(format!("cone radius {t} is not a nonnegative real")));
        }
        Ok(if t == 0.0 {
            ConeCoordinate::Apex
        } else {
            ConeCoordinate::Ray { radius: t, base: z }
        })
    }

    pub fn is_apex(&self) -> bool {
        matches!(self, ConeCoordinate::Apex)
    }

    pub fn radius(&self) -> f64 {
        match *self {
            ConeCoordinate::Apex => 0.0,
            ConeCoordinate::Ray { radius, .. } => radius,
        }
    }

    pub fn base(&self) -> Option<usize> {
        match *self {
            ConeCoordinate::Apex => None,
            ConeCoordinate::Ray { base, .. } => Some(base),
        }
    }

    /// `[a·t, z]` for `a > 0`.
    pub fn scale(self, a: f64) -> Result<Self> {
        check_scale(a)?;
        match self {
            ConeCoordinate::Apex => Ok(ConeCoordinate::Apex),
            ConeCoordinate::Ray { radius, base } => ConeCoordinate::new(radius * a, base),
        }
    }

    /// `[t, z] ↦ [t, φ(z)]`, the apex fixed.
    pub fn map_base(self, phi: impl FnOnce(usize) -> usize) -> Self {
        match self {
            ConeCoordinate::Apex => ConeCoordinate::Apex,
            ConeCoordinate::Ray { radius, base } => ConeCoordinate::Ray {
                radius,
                base: phi(base),
            },
        }
    }

    /// Equal discrete parts and radii within `tol`; apexes only match apexes.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        match (*self, *other) {
            (ConeCoordinate::Apex, ConeCoordinate::Apex) => true,
            (
                ConeCoordinate::Ray { radius: r, base: z },
                ConeCoordinate::Ray { radius: s, base: w },
            ) => z == w && (r - s).abs() <= tol,
            _ => false,
        }
    }
}

fn check_scale(a: f64) -> Result<()> {
    if a.is_finite() && a > 0.0 {
        Ok(())
    } else {
        Err(Error::input(format!("scale {a} is not a positive real")))
    }
}

/// `(x, [y, z])` in `ℝⁱ × C(X)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConicalPoint {
    pub x: Vec<f64>,
    pub c: ConeCoordinate,
}

impl ConicalPoint {
    pub fn new(x: Vec<f64>, c: ConeCoordinate) -> Self {
        ConicalPoint { x, c }
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }
}

/// `(v, x, [y, z])` in `ℝⁱ_v × ℝⁱ × C(X)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentConicalPoint {
    pub v: Vec<f64>,
    pub p: ConicalPoint,
}

/// `(a, v, x, [y, z])` with `a > 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaPoint {
    pub a: f64,
    pub v: Vec<f64>,
    pub x: Vec<f64>,
    pub c: ConeCoordinate,
}

impl GammaPoint {
    pub fn new(a: f64, v: Vec<f64>, x: Vec<f64>, c: ConeCoordinate) -> Result<Self> {
        check_scale(a)?;
        if v.len() != x.len() {
            return Err(Error::input(format!(
                "tangent vector has length {} but base point has length {}",
                v.len(),
                x.len()
            )));
        }
        Ok(GammaPoint { a, v, x, c })
    }

    pub fn tangent(&self) -> TangentConicalPoint {
        TangentConicalPoint {
            v: self.v.clone(),
            p: ConicalPoint::new(self.x.clone(), self.c),
        }
    }

    /// Largest coordinate difference; `∞` if the cone parts differ discretely.
    pub fn distance(&self, other: &GammaPoint) -> f64 {
        let discrete_match = match (self.c, other.c) {
            (ConeCoordinate::Apex, ConeCoordinate::Apex) => true,
            (ConeCoordinate::Ray { base: z, .. }, ConeCoordinate::Ray { base: w, .. }) => z == w,
            _ => false,
        };
        if !discrete_match || self.v.len() != other.v.len() || self.x.len() != other.x.len() {
            return f64::INFINITY;
        }
        let diff = |p: &[f64], q: &[f64]| {
            p.iter()
                .zip(q)
                .map(|(s, t)| (s - t).abs())
                .fold(0.0, f64::max)
        };
        diff(&self.v, &other.v)
            .max(diff(&self.x, &other.x))
            .max((self.c.radius() - other.c.radius()).abs())
            .max((self.a - other.a).abs())
    }
}

/// `(a, v, x, [y, z]) ↦ (a, av + x, x, [ay, z])`.
pub fn gamma(p: &GammaPoint) -> Result<GammaPoint> {
    let p = GammaPoint::new(p.a, p.v.clone(), p.x.clone(), p.c)?;
    let w = p.v.iter().zip(&p.x).map(|(v, x)| p.a * v + x).collect();
    Ok(GammaPoint {
        a: p.a,
        v: w,
        c: p.c.scale(p.a)?,
        x: p.x,
    })
}

/// `(a, w, x, [u, z]) ↦ (a, (w − x)/a, x, [u/a, z])`.
pub fn gamma_inv(p: &GammaPoint) -> Result<GammaPoint> {
    let p = GammaPoint::new(p.a, p.v.clone(), p.x.clone(), p.c)?;
    let v = p.v.iter().zip(&p.x).map(|(w, x)| (w - x) / p.a).collect();
    Ok(GammaPoint {
        a: p.a,
        v,
        c: p.c.scale(1.0 / p.a)?,
        x: p.x,
    })
}

/// A map `ℝⁱ × C(X) → ℝʲ × C(Y)`.
pub trait ConicalMap {
    fn source_dim(&self) -> usize;
    fn target_dim(&self) -> usize;
    fn apply(&self, p: &ConicalPoint) -> Result<ConicalPoint>;
}

/// The identity on `ℝⁱ × C(X)`.
#[derive(Clone, Copy, Debug)]
pub struct IdentityMap {
    pub dim: usize,
}

impl ConicalMap for IdentityMap {
    fn source_dim(&self) -> usize {
        self.dim
    }

    fn target_dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, p: &ConicalPoint) -> Result<ConicalPoint> {
        if p.dim() != self.dim {
            return Err(Error::input(format!("expected a point of dimension {}", self.dim)));
        }
        Ok(p.clone())
    }
}

/// Restriction of `f` to the cone-point stratum `ℝⁱ × {⋆}`.
pub fn restrict_to_apex<F: ConicalMap + ?Sized>(f: &F, u: &[f64]) -> Result<Vec<f64>> {
    let image = f.apply(&ConicalPoint::new(u.to_vec(), ConeCoordinate::Apex))?;
    if !image.c.is_apex() {
        return Err(Error::ConePoint(format!(
            "map sends the cone point over {u:?} to {:?}",
            image.c
        )));
    }
    Ok(image.x)
}

/// `(a, u, p) ↦ (a, f|ℝⁱ(u), f(p))`.
pub fn f_delta<F: ConicalMap + ?Sized>(f: &F, p: &GammaPoint) -> Result<GammaPoint> {
    check_scale(p.a)?;
    let u = restrict_to_apex(f, &p.v)?;
    let image = f.apply(&ConicalPoint::new(p.x.clone(), p.c))?;
    if p.c.is_apex() && !image.c.is_apex() {
        return Err(Error::ConePoint("cone point is not preserved".into()));
    }
    Ok(GammaPoint {
        a: p.a,
        v: u,
        x: image.x,
        c: image.c,
    })
}
