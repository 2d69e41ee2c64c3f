//! Finite topological spaces stored extensionally.
//!
//! Points are opaque strings kept in lexicographic order; everything else
//! refers to them by index. Subsets are bitmasks ([`PointSet`]), so a space
//! holds at most [`MAX_POINTS`] points.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::order::{Poset, Relation};

pub const MAX_POINTS: usize = 64;

/// Spaces with more open sets than this are refused.
pub const MAX_OPENS: usize = 1 << 16;

/// A subset of the points of a finite space, as a bitmask over point indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PointSet(u64);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_POINTS);
        if n == MAX_POINTS {
            PointSet(u64::MAX)
        } else {
            PointSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        PointSet(1u64 << i)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        indices
            .into_iter()
            .fold(PointSet::EMPTY, |acc, i| acc.with(i))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn from_bits(bits: u64) -> Self {
        PointSet(bits)
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[must_use]
    pub fn with(self, i: usize) -> Self {
        PointSet(self.0 | 1u64 << i)
    }

    #[must_use]
    pub fn union(self, other: Self) -> Self {
        PointSet(self.0 | other.0)
    }

    #[must_use]
    pub fn intersection(self, other: Self) -> Self {
        PointSet(self.0 & other.0)
    }

    #[must_use]
    pub fn difference(self, other: Self) -> Self {
        PointSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn first(self) -> Option<usize> {
        (!self.is_empty()).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }
}

/// Lexicographic order on the sorted member lists, so `{} < {0} < {0,1} < {1}`.
impl Ord for PointSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let i = diff.trailing_zeros();
        // Below `i` both sets agree. The one holding `i` is smaller unless the
        // other one has run out of elements.
        let (holder, other_bits) = if self.0 >> i & 1 == 1 {
            (Ordering::Less, other.0)
        } else {
            (Ordering::Greater, self.0)
        };
        if other_bits >> i == 0 {
            holder.reverse()
        } else {
            holder
        }
    }
}

impl PartialOrd for PointSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A finite set of points with a topology closed under unions and intersections.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteSpace {
    points: Vec<String>,
    opens: Vec<PointSet>,
    // minimal open neighbourhood of each point
    neighborhoods: Vec<PointSet>,
}

impl fmt::Debug for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteSpace")
            .field("points", &self.points)
            .field("opens", &self.opens.len())
            .finish()
    }
}

fn canonical_points<S: AsRef<str>>(points: &[S]) -> Result<Vec<String>> {
    let mut out: Vec<String> = points.iter().map(|p| p.as_ref().to_string()).collect();
    out.sort();
    if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::input(format!("duplicate point `{}`", w[0])));
    }
    if out.len() > MAX_POINTS {
        return Err(Error::input(format!(
            "{} points given, at most {MAX_POINTS} supported",
            out.len()
        )));
    }
    Ok(out)
}

fn resolve(points: &[String], names: &[impl AsRef<str>]) -> Result<PointSet> {
    let mut set = PointSet::EMPTY;
    for name in names {
        let name = name.as_ref();
        let i = points
            .binary_search_by(|p| p.as_str().cmp(name))
            .map_err(|_| Error::UnknownPoint(name.to_string()))?;
        set = set.with(i);
    }
    Ok(set)
}

/// Minimal open neighbourhood of each point: intersection of all generators
/// (and the whole space) containing it.
fn neighborhoods_of(n: usize, generators: &[PointSet]) -> Vec<PointSet> {
    (0..n)
        .map(|x| {
            generators
                .iter()
                .filter(|g| g.contains(x))
                .fold(PointSet::full(n), |acc, g| acc.intersection(*g))
        })
        .collect()
}

/// Every union of minimal neighbourhoods, sorted.
fn unions_of(neighborhoods: &[PointSet]) -> Result<Vec<PointSet>> {
    let mut seen: HashSet<PointSet> = HashSet::from([PointSet::EMPTY]);
    let mut opens = vec![PointSet::EMPTY];
    for &u in neighborhoods {
        let snapshot = opens.len();
        for k in 0..snapshot {
            let candidate = opens[k].union(u);
            if seen.insert(candidate) {
                opens.push(candidate);
                if opens.len() > MAX_OPENS {
                    return Err(Error::TooManyOpens { limit: MAX_OPENS });
                }
            }
        }
    }
    opens.sort();
    Ok(opens)
}

impl FiniteSpace {
    fn from_generators(points: Vec<String>, generators: &[PointSet]) -> Result<Self> {
        let neighborhoods = neighborhoods_of(points.len(), generators);
        let opens = unions_of(&neighborhoods)?;
        Ok(FiniteSpace {
            points,
            opens,
            neighborhoods,
        })
    }

    /// Validates that `opens` already is a topology on `points`.
    pub fn from_opens<S: AsRef<str>>(points: &[S], opens: &[Vec<S>]) -> Result<Self> {
        let points = canonical_points(points)?;
        let n = points.len();
        let mut given = Vec::with_capacity(opens.len());
        for o in opens {
            given.push(resolve(&points, o)?);
        }
        given.sort();
        given.dedup();
        if given.first() != Some(&PointSet::EMPTY) {
            return Err(Error::input("the empty set must be open"));
        }
        if !given.contains(&PointSet::full(n)) {
            return Err(Error::input("the whole space must be open"));
        }
        let space = FiniteSpace::from_generators(points, &given)?;
        if space.opens != given {
            let missing = space
                .opens
                .iter()
                .find(|o| given.binary_search(o).is_err())
                .copied()
                .unwrap_or_default();
            return Err(Error::input(format!(
                "open sets are not closed under union and intersection; missing {:?}",
                space.names(missing)
            )));
        }
        Ok(space)
    }

    pub fn discrete<S: AsRef<str>>(points: &[S]) -> Result<Self> {
        let points = canonical_points(points)?;
        let gens: Vec<PointSet> = (0..points.len()).map(PointSet::singleton).collect();
        FiniteSpace::from_generators(points, &gens)
    }

    pub fn indiscrete<S: AsRef<str>>(points: &[S]) -> Result<Self> {
        let points = canonical_points(points)?;
        FiniteSpace::from_generators(points, &[])
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
            .binary_search_by(|p| p.as_str().cmp(name))
            .map_err(|_| Error::UnknownPoint(name.to_string()))
    }

    pub fn set_of<S: AsRef<str>>(&self, names: &[S]) -> Result<PointSet> {
        resolve(&self.points, names)
    }

    pub fn names(&self, set: PointSet) -> Vec<String> {
        set.iter().map(|i| self.points[i].clone()).collect()
    }

    pub fn full(&self) -> PointSet {
        PointSet::full(self.len())
    }

    /// All open sets, ordered lexicographically by sorted membership.
    pub fn opens(&self) -> &[PointSet] {
        &self.opens
    }

    pub fn minimal_neighborhood(&self, x: usize) -> PointSet {
        self.neighborhoods[x]
    }

    pub fn is_open(&self, set: PointSet) -> bool {
        set.iter().all(|x| self.neighborhoods[x].is_subset(set))
    }

    /// `x <= y` iff every open set containing `x` contains `y`
    /// (equivalently `x` lies in the closure of `{y}`).
    pub fn specialization_preorder(&self) -> Relation {
        Relation::from_fn(self.len(), |x, y| self.neighborhoods[x].contains(y))
    }

    pub fn is_t0(&self) -> bool {
        self.specialization_preorder().is_antisymmetric()
    }

    /// Subspace topology on `subset`; points keep their names.
    pub fn subspace(&self, subset: PointSet) -> FiniteSpace {
        let kept: Vec<usize> = subset.iter().collect();
        let reindex = |set: PointSet| {
            PointSet::from_indices(
                kept.iter()
                    .enumerate()
                    .filter(|(_, &old)| set.contains(old))
                    .map(|(new, _)| new),
            )
        };
        let points = kept.iter().map(|&i| self.points[i].clone()).collect();
        let neighborhoods: Vec<PointSet> = kept
            .iter()
            .map(|&i| reindex(self.neighborhoods[i]))
            .collect();
        let mut opens: Vec<PointSet> = self.opens.iter().map(|&o| reindex(o)).collect();
        opens.sort();
        opens.dedup();
        FiniteSpace {
            points,
            opens,
            neighborhoods,
        }
    }
}

/// Smallest topology on `points` containing every member of `basis`.
///
/// Computed through minimal neighbourhoods: the generated topology is the
/// family of all unions of the sets `U_x = ⋂{B ∈ basis ∪ {X} : x ∈ B}`.
pub fn generate_topology<S: AsRef<str>>(points: &[S], basis: &[Vec<S>]) -> Result<FiniteSpace> {
    let points = canonical_points(points)?;
    let mut gens = Vec::with_capacity(basis.len());
    for b in basis {
        gens.push(resolve(&points, b)?);
    }
    FiniteSpace::from_generators(points, &gens)
}

/// Same as [`generate_topology`] for generators already expressed over `space`'s points.
pub fn generate_on(space: &FiniteSpace, generators: &[PointSet]) -> Result<FiniteSpace> {
    FiniteSpace::from_generators(space.points.clone(), generators)
}

/// Distinct prime divisors of `n`, by trial division.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Underlying space of Spec(ℤ/n): one point `p<q>` per prime `q | n`, discrete.
pub fn spec_zmod(n: u64) -> Result<FiniteSpace> {
    if n == 0 {
        return Err(Error::input("spec_zmod needs n >= 1"));
    }
    let points: Vec<String> = prime_divisors(n).iter().map(|p| format!("p{p}")).collect();
    FiniteSpace::discrete(&points)
}

/// Alexandroff space of a poset: the open sets are the up-closed sets.
pub fn alexandroff_from_poset(poset: &Poset) -> Result<FiniteSpace> {
    if !poset.relation().is_partial_order() {
        return Err(Error::NotAPartialOrder("relation is not a partial order".into()));
    }
    let points = canonical_points(poset.labels())?;
    // labels may not be sorted; map poset index -> space index
    let pos: Vec<usize> = poset
        .labels()
        .iter()
        .map(|l| points.binary_search(l).expect("label present"))
        .collect();
    let gens: Vec<PointSet> = (0..poset.len())
        .map(|i| PointSet::from_indices(poset.up_set(i).into_iter().map(|j| pos[j])))
        .collect();
    FiniteSpace::from_generators(points, &gens)
}

/// A total function between the points of two finite spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointMap {
    domain: FiniteSpace,
    codomain: FiniteSpace,
    table: Vec<usize>,
}

impl PointMap {
    pub fn new(domain: FiniteSpace, codomain: FiniteSpace, table: Vec<usize>) -> Result<Self> {
        if table.len() != domain.len() {
            return Err(Error::input(format!(
                "map defined on {} of {} points",
                table.len(),
                domain.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&t| t >= codomain.len()) {
            return Err(Error::input(format!("image index {bad} outside the codomain")));
        }
        Ok(PointMap {
            domain,
            codomain,
            table,
        })
    }

    /// From `(from, to)` name pairs; must be total and single-valued.
    pub fn from_pairs<S: AsRef<str>>(
        domain: FiniteSpace,
        codomain: FiniteSpace,
        pairs: &[(S, S)],
    ) -> Result<Self> {
        let mut table: Vec<Option<usize>> = vec![None; domain.len()];
        for (a, b) in pairs {
            let i = domain.index_of(a.as_ref())?;
            let j = codomain.index_of(b.as_ref())?;
            match table[i] {
                Some(prev) if prev != j => {
                    return Err(Error::input(format!(
                        "point `{}` mapped twice",
                        a.as_ref()
                    )))
                }
                _ => table[i] = Some(j),
            }
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, t)| {
                t.ok_or_else(|| {
                    Error::input(format!("map is undefined at `{}`", domain.point(i)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        PointMap::new(domain, codomain, table)
    }

    pub fn identity(space: FiniteSpace) -> Self {
        let table = (0..space.len()).collect();
        PointMap {
            domain: space.clone(),
            codomain: space,
            table,
        }
    }

    pub fn constant(domain: FiniteSpace, codomain: FiniteSpace, target: usize) -> Result<Self> {
        let table = vec![target; domain.len()];
        PointMap::new(domain, codomain, table)
    }

    pub fn domain(&self) -> &FiniteSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteSpace {
        &self.codomain
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn preimage(&self, set: PointSet) -> PointSet {
        PointSet::from_indices((0..self.domain.len()).filter(|&x| set.contains(self.table[x])))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &PointMap) -> Result<PointMap> {
        if self.codomain != other.domain {
            return Err(Error::input("composed maps do not share a middle space"));
        }
        let table = self.table.iter().map(|&x| other.table[x]).collect();
        PointMap::new(self.domain.clone(), other.codomain.clone(), table)
    }

    /// A codomain open set whose preimage is not open, if any.
    ///
    /// It suffices to test the minimal neighbourhoods `U_{f(x)}`: `f` is
    /// continuous iff `f(U_x) ⊆ U_{f(x)}` for every `x`.
    pub fn discontinuity_witness(&self) -> Option<(PointSet, PointSet)> {
        self.discontinuity_witness_on(self.domain.full())
    }

    /// Same check for the restriction of the map to `subset` (subspace topology).
    pub fn discontinuity_witness_on(&self, subset: PointSet) -> Option<(PointSet, PointSet)> {
        for x in subset.iter() {
            let target = self.codomain.minimal_neighborhood(self.table[x]);
            let nbhd = self.domain.minimal_neighborhood(x).intersection(subset);
            if nbhd.iter().any(|y| !target.contains(self.table[y])) {
                return Some((target, self.preimage(target).intersection(subset)));
            }
        }
        None
    }

    pub fn is_continuous_on(&self, subset: PointSet) -> bool {
        self.discontinuity_witness_on(subset).is_none()
    }

    pub fn discontinuity_error(&self) -> Option<Error> {
        self.discontinuity_witness()
            .map(|(open, pre)| Error::Discontinuous {
                open: self.codomain.names(open),
                preimage: self.domain.names(pre),
            })
    }
}

/// True iff the preimage of every open set of the codomain is open.
pub fn check_continuity(map: &PointMap) -> bool {
    map.discontinuity_witness().is_none()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets(space: &FiniteSpace) -> Vec<Vec<String>> {
        space.opens().iter().map(|&o| space.names(o)).collect()
    }

    #[test]
    fn point_set_order_is_lexicographic_on_members() {
        let a = PointSet::from_indices([0]);
        let ab = PointSet::from_indices([0, 1]);
        let b = PointSet::from_indices([1]);
        let ac = PointSet::from_indices([0, 2]);
        let mut v = vec![b, ac, PointSet::EMPTY, ab, a];
        v.sort();
        assert_eq!(v, vec![PointSet::EMPTY, a, ab, ac, b]);
    }

    #[test]
    fn single_generator() {
        let s = generate_topology(&["a", "b"], &[vec!["a"]]).unwrap();
        assert_eq!(sets(&s), vec![vec![], vec!["a"], vec!["a", "b"]]);
    }

    #[test]
    fn singleton_space_with_no_basis() {
        let s = generate_topology::<&str>(&["a"], &[]).unwrap();
        assert_eq!(s.opens().len(), 2);
    }

    #[test]
    fn unknown_basis_point_is_rejected() {
        let err = generate_topology(&["a", "b"], &[vec!["c"]]).unwrap_err();
        assert_eq!(err, Error::UnknownPoint("c".into()));
    }

    #[test]
    fn empty_space_has_one_open() {
        let s = FiniteSpace::discrete::<&str>(&[]).unwrap();
        assert_eq!(s.opens(), &[PointSet::EMPTY]);
    }

    #[test]
    fn spec_zmod_points() {
        assert_eq!(spec_zmod(12).unwrap().points(), &["p2", "p3"]);
        assert_eq!(spec_zmod(12).unwrap().opens().len(), 4);
        assert_eq!(spec_zmod(7).unwrap().points(), &["p7"]);
        assert!(spec_zmod(1).unwrap().is_empty());
        assert!(spec_zmod(0).is_err());
        assert_eq!(prime_divisors(2 * 2 * 3 * 97), vec![2, 3, 97]);
    }

    #[test]
    fn from_opens_rejects_non_topology() {
        let err = FiniteSpace::from_opens(
            &["a", "b", "c"],
            &[vec![], vec!["a"], vec!["b"], vec!["a", "b", "c"]],
        )
        .unwrap_err();
        assert!(matches!(err, Error::Input(msg) if msg.contains("closed")));
        assert!(FiniteSpace::from_opens(&["a", "b"], &[vec!["a", "b"]]).is_err());
    }

    #[test]
    fn alexandroff_chain_and_antichain() {
        let chain = Poset::from_pairs(&["a", "b"], &[("a", "b")]).unwrap();
        let s = alexandroff_from_poset(&chain).unwrap();
        assert_eq!(sets(&s), vec![vec![], vec!["a", "b"], vec!["b"]]);

        let anti = Poset::antichain(vec!["a".into(), "b".into()]);
        assert_eq!(alexandroff_from_poset(&anti).unwrap().opens().len(), 4);
    }

    #[test]
    fn indiscrete_to_discrete_identity_is_not_continuous() {
        let src = FiniteSpace::indiscrete(&["a", "b"]).unwrap();
        let dst = FiniteSpace::discrete(&["a", "b"]).unwrap();
        let swap = PointMap::new(src.clone(), dst.clone(), vec![1, 0]).unwrap();
        assert!(!check_continuity(&swap));
        let err = swap.discontinuity_error().unwrap();
        assert!(matches!(err, Error::Discontinuous { .. }));
        // the other direction is fine
        let back = PointMap::new(dst, src, vec![1, 0]).unwrap();
        assert!(check_continuity(&back));
    }

    #[test]
    fn subspace_of_chain() {
        let s = generate_topology(&["a", "b", "c"], &[vec!["b", "c"], vec!["c"]]).unwrap();
        let sub = s.subspace(PointSet::from_indices([0, 2]));
        assert_eq!(sub.points(), &["a", "c"]);
        assert_eq!(sets(&sub), vec![vec![], vec!["a", "c"], vec!["c"]]);
    }

    #[test]
    fn map_from_pairs_must_be_total() {
        let s = FiniteSpace::discrete(&["a", "b"]).unwrap();
        assert!(PointMap::from_pairs(s.clone(), s.clone(), &[("a", "b")]).is_err());
        assert!(PointMap::from_pairs(s.clone(), s.clone(), &[("a", "b"), ("a", "a")]).is_err());
        let m = PointMap::from_pairs(s.clone(), s, &[("a", "b"), ("b", "b")]).unwrap();
        assert_eq!(m.table(), &[1, 1]);
    }
}
