//! Stratified map squares.
//!
//! Given `f: X₁ → X₂` and stratifications `s₁, s₂`, a bottom map `g` with
//! `g ∘ s₁ = s₂ ∘ f` exists only when `f` is constant on the fibres of `s₁`.
//! [`induce_g`] restricts `f` to one representative per class instead, where
//! `g = s₂ ∘ f ∘ s₁⁻¹` always commutes. [`alt_induce_g`] uses the identity
//! stratification on the domain, where `g = s₂ ∘ f` needs no restriction.

use crate::error::{Error, Result};
use crate::order::is_monotone;
use crate::stratify::{identity_stratification_unchecked, Stratification};
use crate::topology::{FiniteSpace, PointMap, PointSet};

/// One point per class of a stratification, with the subspace topology
/// induced from the second topology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentativeSubspace {
    /// `reps[c]` is the chosen point of class `c`.
    pub reps: Vec<usize>,
    pub points: PointSet,
    pub topology: FiniteSpace,
}

/// Canonical choice: the least point of every class.
pub fn choose_representatives(strat: &Stratification) -> RepresentativeSubspace {
    let reps: Vec<usize> = strat
        .quotient()
        .classes()
        .iter()
        .map(|c| c.representative)
        .collect();
    build_subspace(strat, reps).expect("canonical representatives hit each class once")
}

/// User-supplied representatives, one per class in any order.
pub fn representatives_from(strat: &Stratification, chosen: &[usize]) -> Result<RepresentativeSubspace> {
    let q = strat.quotient();
    let mut reps = vec![usize::MAX; q.len()];
    for &x in chosen {
        if x >= strat.space().len() {
            return Err(Error::input(format!("no point with index {x}")));
        }
        let c = q.class_of(x);
        if reps[c] != usize::MAX {
            return Err(Error::input(format!(
                "two representatives for the class of `{}`",
                strat.space().point(x)
            )));
        }
        reps[c] = x;
    }
    if let Some(c) = reps.iter().position(|&r| r == usize::MAX) {
        return Err(Error::input(format!(
            "no representative for the class of `{}`",
            q.representative_name(c)
        )));
    }
    build_subspace(strat, reps)
}

fn build_subspace(strat: &Stratification, reps: Vec<usize>) -> Result<RepresentativeSubspace> {
    // s restricted to the representatives must be a bijection onto the classes
    for (c, &x) in reps.iter().enumerate() {
        if strat.stratum_of(x) != c {
            return Err(Error::invariant(format!(
                "representative `{}` is not in class {c}",
                strat.space().point(x)
            )));
        }
    }
    let points = PointSet::from_indices(reps.iter().copied());
    if points.len() != reps.len() {
        return Err(Error::invariant("representatives are not distinct"));
    }
    let topology = strat.second_topology().subspace(points);
    Ok(RepresentativeSubspace {
        reps,
        points,
        topology,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SquareMode {
    /// `f` restricted to a representative subspace.
    Restricted,
    /// Domain stratified by the identity; `f` on all points.
    IdentityStratification,
}

/// `f` on top, `g` at the bottom, `s₁` and `s₂` on the sides.
#[derive(Clone, Debug)]
pub struct StratifiedMapSquare {
    pub source: Stratification,
    pub target: Stratification,
    pub f: PointMap,
    /// Points of the source on which the square is declared.
    pub domain: PointSet,
    /// `g[c]` is the target class of source class `c`.
    pub g: Vec<usize>,
    pub mode: SquareMode,
    pub representatives: Option<RepresentativeSubspace>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareWitness {
    pub point: usize,
    pub image: usize,
    /// `s₂(f(x))`
    pub via_top: usize,
    /// `g(s₁(x))`
    pub via_bottom: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareCertificate {
    pub witnesses: Vec<SquareWitness>,
    /// `f` restricted to the declared domain is continuous for the first topologies.
    pub f_continuous: bool,
    /// Same for the second topologies.
    pub f_continuous_second: bool,
    /// `g` is monotone, i.e. continuous between the Alexandroff spaces.
    pub g_monotone: bool,
    /// `g ∘ s₁ = s₂ ∘ f` on every source point, not only the declared domain.
    pub commutes_everywhere: bool,
    /// Each class is sent to the class with the same representative name.
    pub g_is_identity: bool,
}

impl StratifiedMapSquare {
    fn via_top(&self, x: usize) -> usize {
        self.target.stratum_of(self.f.apply(x))
    }

    fn via_bottom(&self, x: usize) -> usize {
        self.g[self.source.stratum_of(x)]
    }

    fn full_f(&self) -> Result<PointMap> {
        PointMap::new(
            self.source.second_topology().clone(),
            self.target.second_topology().clone(),
            self.f.table().to_vec(),
        )
    }
}

/// Verifies commutativity on the declared domain and reports continuity,
/// monotonicity and whether the square commutes off the domain too.
pub fn check_square(square: &StratifiedMapSquare) -> Result<SquareCertificate> {
    let src = square.source.space();
    if square.f.domain() != src || square.f.codomain() != square.target.space() {
        return Err(Error::input("top map does not run between the stratified spaces"));
    }
    if square.g.len() != square.source.quotient().len()
        || square.g.iter().any(|&c| c >= square.target.quotient().len())
    {
        return Err(Error::input("bottom map does not run between the class posets"));
    }
    let mut witnesses = Vec::with_capacity(square.domain.len());
    for x in square.domain.iter() {
        let (via_top, via_bottom) = (square.via_top(x), square.via_bottom(x));
        if via_top != via_bottom {
            let tq = square.target.quotient();
            return Err(Error::NotCommutative {
                point: src.point(x).to_string(),
                via_top: tq.representative_name(via_top).to_string(),
                via_bottom: tq.representative_name(via_bottom).to_string(),
            });
        }
        witnesses.push(SquareWitness {
            point: x,
            image: square.f.apply(x),
            via_top,
            via_bottom,
        });
    }
    let commutes_everywhere = (0..src.len()).all(|x| square.via_top(x) == square.via_bottom(x));
    let g_monotone = is_monotone(
        square.source.quotient().order(),
        square.target.quotient().order(),
        &square.g,
    );
    let sq = square.source.quotient();
    let tq = square.target.quotient();
    let g_is_identity = square
        .g
        .iter()
        .enumerate()
        .all(|(c, &d)| sq.representative_name(c) == tq.representative_name(d));
    Ok(SquareCertificate {
        witnesses,
        f_continuous: square.f.is_continuous_on(square.domain),
        f_continuous_second: square.full_f()?.is_continuous_on(square.domain),
        g_monotone,
        commutes_everywhere,
        g_is_identity,
    })
}

fn require_continuous(f: &PointMap) -> Result<()> {
    match f.discontinuity_error() {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn check_endpoints(f: &PointMap, s1: Option<&Stratification>, s2: &Stratification) -> Result<()> {
    if let Some(s1) = s1 {
        if f.domain() != s1.space() {
            return Err(Error::input("map domain differs from the source stratified space"));
        }
    }
    if f.codomain() != s2.space() {
        return Err(Error::input("map codomain differs from the target stratified space"));
    }
    Ok(())
}

/// `g = s₂ ∘ f ∘ s₁⁻¹` on the canonical representatives.
pub fn induce_g(f: &PointMap, s1: &Stratification, s2: &Stratification) -> Result<StratifiedMapSquare> {
    induce_g_with(f, s1, s2, choose_representatives(s1))
}

/// As [`induce_g`], with an explicit representative subspace.
pub fn induce_g_with(
    f: &PointMap,
    s1: &Stratification,
    s2: &Stratification,
    reps: RepresentativeSubspace,
) -> Result<StratifiedMapSquare> {
    check_endpoints(f, Some(s1), s2)?;
    require_continuous(f)?;
    let g = reps
        .reps
        .iter()
        .map(|&t| s2.stratum_of(f.apply(t)))
        .collect();
    let square = StratifiedMapSquare {
        source: s1.clone(),
        target: s2.clone(),
        f: f.clone(),
        domain: reps.points,
        g,
        mode: SquareMode::Restricted,
        representatives: Some(reps),
    };
    // commutativity on the representatives holds by construction
    check_square(&square)?;
    Ok(square)
}

/// `g = s₂ ∘ f` with the domain stratified by the identity over its
/// specialization order. That stratification is continuous only for T0
/// domains; the square commutes either way.
pub fn alt_induce_g(f: &PointMap, s2: &Stratification) -> Result<StratifiedMapSquare> {
    check_endpoints(f, None, s2)?;
    require_continuous(f)?;
    let s1 = identity_stratification_unchecked(f.domain())?;
    let g = (0..f.domain().len())
        .map(|x| s2.stratum_of(f.apply(x)))
        .collect();
    let square = StratifiedMapSquare {
        domain: f.domain().full(),
        source: s1,
        target: s2.clone(),
        f: f.clone(),
        g,
        mode: SquareMode::IdentityStratification,
        representatives: None,
    };
    check_square(&square)?;
    Ok(square)
}
