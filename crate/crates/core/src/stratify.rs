//! Cover-induced stratifications.
//!
//! A cover `(X_t)` of a finite space gives each point its signature
//! `h(x) = {t : x ∈ X_t}`. Points with equal signatures are identified and the
//! classes are ordered by signature inclusion. The standard stratification is
//! the quotient map `s(x) = [x]`, continuous from the topology generated by the
//! cover to the Alexandroff topology of the class poset.
//!
//! Two topologies live on the same point set: cover members must be open in
//! the space's own (first) topology, while continuity of `s` is checked
//! against the generated (second) topology.

use std::fmt;

use crate::error::{Error, Result};
use crate::order::{Poset, Relation};
use crate::topology::{alexandroff_from_poset, generate_on, FiniteSpace, PointMap, PointSet};

/// Up-set enumeration is refused above this many classes.
pub const MAX_CLASSES: usize = 20;

/// An open cover of a finite space by nonempty members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    space: FiniteSpace,
    members: Vec<PointSet>,
}

impl Cover {
    pub fn new(space: &FiniteSpace, members: Vec<PointSet>) -> Result<Self> {
        let mut union = PointSet::EMPTY;
        for (index, &m) in members.iter().enumerate() {
            if m.is_empty() {
                return Err(Error::EmptyMember { index });
            }
            if !m.is_subset(space.full()) {
                return Err(Error::input(format!("cover member {index} has unknown points")));
            }
            if !space.is_open(m) {
                return Err(Error::NotOpen {
                    index,
                    members: space.names(m),
                });
            }
            union = union.union(m);
        }
        let missing = space.full().difference(union);
        if !missing.is_empty() {
            return Err(Error::NotACover {
                missing: space.names(missing),
            });
        }
        Ok(Cover {
            space: space.clone(),
            members,
        })
    }

    pub fn from_names<S: AsRef<str>>(space: &FiniteSpace, members: &[Vec<S>]) -> Result<Self> {
        let sets = members
            .iter()
            .map(|m| space.set_of(m))
            .collect::<Result<Vec<_>>>()?;
        Cover::new(space, sets)
    }

    /// The cover `{X}` (empty for the empty space).
    pub fn trivial(space: &FiniteSpace) -> Self {
        let members = if space.is_empty() {
            vec![]
        } else {
            vec![space.full()]
        };
        Cover {
            space: space.clone(),
            members,
        }
    }

    /// Every nonempty open set of the first topology, in canonical order.
    pub fn maximal(space: &FiniteSpace) -> Self {
        let members = space
            .opens()
            .iter()
            .copied()
            .filter(|o| !o.is_empty())
            .collect();
        Cover {
            space: space.clone(),
            members,
        }
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn members(&self) -> &[PointSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members as a sorted, deduplicated family of sets.
    pub fn member_sets(&self) -> Vec<PointSet> {
        let mut v = self.members.clone();
        v.sort();
        v.dedup();
        v
    }
}

/// A sorted set of cover-member indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Signature(Vec<usize>);

impl Signature {
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        Signature(indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, t: usize) -> bool {
        self.0.binary_search(&t).is_ok()
    }

    pub fn is_subset(&self, other: &Signature) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|a| it.any(|b| b == a))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// Per-point signatures `h(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HSignature {
    points: Vec<String>,
    signatures: Vec<Signature>,
}

impl HSignature {
    pub fn of(&self, x: usize) -> &Signature {
        &self.signatures[x]
    }

    pub fn signatures(&self) -> &[Signature] {
        &self.signatures
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    /// The family 𝓛 of signatures that actually occur, sorted.
    pub fn occurring(&self) -> Vec<Signature> {
        let mut v = self.signatures.clone();
        v.sort();
        v.dedup();
        v
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.signatures[x].is_subset(&self.signatures[y])
    }

    /// The preorder `x <= y ⇔ h(x) ⊆ h(y)` on points.
    pub fn preorder(&self) -> Relation {
        Relation::from_fn(self.points.len(), |x, y| self.leq(x, y))
    }

    fn index(&self, name: &str) -> Result<usize> {
        self.points
            .iter()
            .position(|p| p == name)
            .ok_or_else(|| Error::UnknownPoint(name.to_string()))
    }
}

pub fn h_map(cover: &Cover) -> HSignature {
    let space = cover.space();
    let signatures = (0..space.len())
        .map(|x| {
            Signature(
                cover
                    .members()
                    .iter()
                    .enumerate()
                    .filter(|(_, m)| m.contains(x))
                    .map(|(t, _)| t)
                    .collect(),
            )
        })
        .collect();
    HSignature {
        points: space.points().to_vec(),
        signatures,
    }
}

/// `h(x) ⊆ h(y)`, by point name.
pub fn preorder_leq(h: &HSignature, x: &str, y: &str) -> Result<bool> {
    Ok(h.leq(h.index(x)?, h.index(y)?))
}

/// One class of a quotient poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    /// Least point of the class.
    pub representative: usize,
    pub members: PointSet,
    /// Shared signature, for cover-induced classes.
    pub signature: Option<Signature>,
}

/// Point classes with their order; classes are listed by representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientPoset {
    points: Vec<String>,
    classes: Vec<Stratum>,
    order: Relation,
    class_of: Vec<usize>,
}

impl QuotientPoset {
    pub fn classes(&self) -> &[Stratum] {
        &self.classes
    }

    pub fn class(&self, c: usize) -> &Stratum {
        &self.classes[c]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn order(&self) -> &Relation {
        &self.order
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.order.holds(a, b)
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn class_table(&self) -> &[usize] {
        &self.class_of
    }

    pub fn representative_name(&self, c: usize) -> &str {
        &self.points[self.classes[c].representative]
    }

    /// The class order as a [`Poset`] labelled by representatives.
    pub fn poset(&self) -> Poset {
        let labels = (0..self.len())
            .map(|c| self.representative_name(c).to_string())
            .collect();
        Poset::new(labels, self.order.clone()).expect("quotient order is a partial order")
    }

    /// Class index whose representative is named `name`.
    pub fn class_named(&self, name: &str) -> Option<usize> {
        (0..self.len()).find(|&c| self.representative_name(c) == name)
    }
}

/// Classes of the fibres of `h`, ordered by signature inclusion.
pub fn quotient_poset(cover: &Cover) -> QuotientPoset {
    let h = h_map(cover);
    let n = cover.space().len();
    let mut classes: Vec<Stratum> = Vec::new();
    let mut class_of = vec![usize::MAX; n];
    // points are visited in canonical order, so the first member seen is the least
    for x in 0..n {
        match classes
            .iter()
            .position(|c| c.signature.as_ref() == Some(h.of(x)))
        {
            Some(c) => {
                classes[c].members = classes[c].members.with(x);
                class_of[x] = c;
            }
            None => {
                class_of[x] = classes.len();
                classes.push(Stratum {
                    representative: x,
                    members: PointSet::singleton(x),
                    signature: Some(h.of(x).clone()),
                });
            }
        }
    }
    let order = Relation::from_fn(classes.len(), |a, b| {
        let (sa, sb) = (&classes[a].signature, &classes[b].signature);
        sa.as_ref().unwrap().is_subset(sb.as_ref().unwrap())
    });
    QuotientPoset {
        points: cover.space().points().to_vec(),
        classes,
        order,
        class_of,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StratificationKind {
    /// `s(x) = [x]` over the quotient by cover signatures.
    Standard,
    /// `s = id` over the points ordered by the specialization partial order.
    Identity,
}

/// A space with a continuous surjection onto a poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratification {
    space: FiniteSpace,
    cover: Option<Cover>,
    quotient: QuotientPoset,
    second_topology: FiniteSpace,
    kind: StratificationKind,
}

impl Stratification {
    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn cover(&self) -> Option<&Cover> {
        self.cover.as_ref()
    }

    pub fn quotient(&self) -> &QuotientPoset {
        &self.quotient
    }

    pub fn second_topology(&self) -> &FiniteSpace {
        &self.second_topology
    }

    pub fn kind(&self) -> StratificationKind {
        self.kind
    }

    /// `s(x)`.
    pub fn stratum_of(&self, x: usize) -> usize {
        self.quotient.class_of(x)
    }

    pub fn poset(&self) -> Poset {
        self.quotient.poset()
    }

    /// The class poset with its Alexandroff topology; point names are the
    /// class representatives.
    pub fn alexandroff(&self) -> Result<FiniteSpace> {
        alexandroff_from_poset(&self.poset())
    }

    /// `s` as a point map from the second topology to the Alexandroff space.
    pub fn projection(&self) -> Result<PointMap> {
        let target = self.alexandroff()?;
        let table = (0..self.space.len())
            .map(|x| target.index_of(self.quotient.representative_name(self.stratum_of(x))))
            .collect::<Result<Vec<_>>>()?;
        PointMap::new(self.second_topology.clone(), target, table)
    }

    /// Points of the classes in `classes`.
    pub fn preimage(&self, classes: impl IntoIterator<Item = usize>) -> PointSet {
        classes
            .into_iter()
            .fold(PointSet::EMPTY, |acc, c| acc.union(self.quotient.class(c).members))
    }
}

/// One verified open set: `s⁻¹(up_set) = preimage` is open, and equals the
/// union of the intersections of the cover members named by each witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateEntry {
    pub up_set: Vec<usize>,
    pub preimage: PointSet,
    pub witness: Vec<Signature>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ContinuityCertificate {
    pub entries: Vec<CertificateEntry>,
}

fn check_class_count(n: usize) -> Result<()> {
    if n > MAX_CLASSES {
        return Err(Error::TooManyClasses {
            classes: n,
            limit: MAX_CLASSES,
        });
    }
    Ok(())
}

/// Up-sets of the class order, each as a sorted list of class indices.
fn up_sets(strat: &Stratification) -> Result<Vec<Vec<usize>>> {
    let alex = strat.alexandroff()?;
    let q = strat.quotient();
    // alexandroff points are representative names; map back to class indices
    let class_at: Vec<usize> = alex
        .points()
        .iter()
        .map(|name| q.class_named(name).expect("representative names are distinct"))
        .collect();
    Ok(alex
        .opens()
        .iter()
        .map(|o| {
            let mut v: Vec<usize> = o.iter().map(|i| class_at[i]).collect();
            v.sort_unstable();
            v
        })
        .collect())
}

fn verify_continuity(strat: &Stratification) -> Result<ContinuityCertificate> {
    let q = strat.quotient();
    let mut cert = ContinuityCertificate::default();
    for up in up_sets(strat)? {
        let preimage = strat.preimage(up.iter().copied());
        if !strat.second_topology().is_open(preimage) {
            return Err(Error::Discontinuous {
                open: up
                    .iter()
                    .map(|&c| q.representative_name(c).to_string())
                    .collect(),
                preimage: strat.space().names(preimage),
            });
        }
        let mut witness = Vec::new();
        if let Some(cover) = strat.cover() {
            // minimal classes of the up-set; their signature intersections fill it
            let minimal: Vec<usize> = up
                .iter()
                .copied()
                .filter(|&c| up.iter().all(|&d| d == c || !q.leq(d, c)))
                .collect();
            let mut union = PointSet::EMPTY;
            for c in minimal {
                let sig = q.class(c).signature.clone().expect("cover-induced class");
                let meet = sig
                    .indices()
                    .iter()
                    .fold(strat.space().full(), |acc, &t| acc.intersection(cover.members()[t]));
                union = union.union(meet);
                witness.push(sig);
            }
            if union != preimage {
                return Err(Error::invariant(format!(
                    "preimage {:?} differs from the union of member intersections {:?}",
                    strat.space().names(preimage),
                    strat.space().names(union)
                )));
            }
        }
        cert.entries.push(CertificateEntry {
            up_set: up,
            preimage,
            witness,
        });
    }
    Ok(cert)
}

/// `(X, s: X → X/∼)` with `s(x) = [x]`, the second topology generated by the
/// cover, and an exhaustive continuity check over all up-sets.
pub fn standard_stratification(cover: &Cover) -> Result<(Stratification, ContinuityCertificate)> {
    let quotient = quotient_poset(cover);
    check_class_count(quotient.len())?;
    let space = cover.space().clone();
    let second_topology = generate_on(&space, cover.members())?;
    let strat = Stratification {
        space,
        cover: Some(cover.clone()),
        quotient,
        second_topology,
        kind: StratificationKind::Standard,
    };
    for c in 0..strat.quotient.len() {
        if strat.quotient.class(c).members.is_empty() {
            return Err(Error::invariant(format!("class {c} is not hit by s")));
        }
    }
    let cert = verify_continuity(&strat)?;
    Ok((strat, cert))
}

/// `(X, id: X → X)` with `X` ordered by the partial order derived from its
/// specialization preorder; the second topology is the first one.
pub fn identity_stratification(space: &FiniteSpace) -> Result<(Stratification, ContinuityCertificate)> {
    check_class_count(space.len())?;
    let strat = identity_stratification_unchecked(space)?;
    let cert = verify_continuity(&strat)?;
    Ok((strat, cert))
}

/// As [`identity_stratification`] without the continuity check, which fails
/// on spaces that are not T0.
pub(crate) fn identity_stratification_unchecked(space: &FiniteSpace) -> Result<Stratification> {
    let order = partial_order_from_preorder(space.points(), &space.specialization_preorder())?;
    let n = space.len();
    let quotient = QuotientPoset {
        points: space.points().to_vec(),
        classes: (0..n)
            .map(|x| Stratum {
                representative: x,
                members: PointSet::singleton(x),
                signature: None,
            })
            .collect(),
        order: order.relation().clone(),
        class_of: (0..n).collect(),
    };
    let strat = Stratification {
        space: space.clone(),
        cover: None,
        quotient,
        second_topology: space.clone(),
        kind: StratificationKind::Identity,
    };
    Ok(strat)
}

/// `s⁻¹([x]) = (⋂_{t ∈ h(x)} X_t) \ (⋃_{i ∉ h(x)} X_i)`, checked against the fibre.
pub fn stratum_preimage_formula(strat: &Stratification, class: usize) -> Result<PointSet> {
    let cover = strat
        .cover()
        .ok_or_else(|| Error::input("preimage formula needs a cover-induced stratification"))?;
    if class >= strat.quotient().len() {
        return Err(Error::input(format!("no class {class}")));
    }
    let stratum = strat.quotient().class(class);
    let sig = stratum.signature.as_ref().expect("cover-induced class");
    let full = strat.space().full();
    let (inside, outside) = cover.members().iter().enumerate().fold(
        (full, PointSet::EMPTY),
        |(meet, join), (t, &m)| {
            if sig.contains(t) {
                (meet.intersection(m), join)
            } else {
                (meet, join.union(m))
            }
        },
    );
    let formula = inside.difference(outside);
    if formula != stratum.members {
        return Err(Error::invariant(format!(
            "preimage formula gives {:?} but the class is {:?}",
            strat.space().names(formula),
            strat.space().names(stratum.members)
        )));
    }
    Ok(formula)
}

/// `x ⪯ y ⇔ (x <= y and not y <= x) or x = y`, with transitivity certified.
pub fn partial_order_from_preorder(labels: &[String], preorder: &Relation) -> Result<Poset> {
    let strict = preorder.strict_part();
    if let Some((i, j, k)) = strict.transitivity_violation() {
        return Err(Error::invariant(format!(
            "strict part not transitive at ({}, {}, {})",
            labels[i], labels[j], labels[k]
        )));
    }
    Poset::new(labels.to_vec(), strict.reflexive_closure())
}

pub fn preorder_to_partial_order(h: &HSignature) -> Result<Poset> {
    partial_order_from_preorder(h.points(), &h.preorder())
}

/// `x <=_s y ⇔ s(x) <= s(y)`.
pub fn preorder_from_stratification(strat: &Stratification) -> Relation {
    let q = strat.quotient();
    Relation::from_fn(strat.space().len(), |x, y| {
        q.leq(q.class_of(x), q.class_of(y))
    })
}

/// For a standard stratification, whether `<=_s` equals the signature preorder.
pub fn preorders_agree(strat: &Stratification) -> Option<bool> {
    strat
        .cover()
        .map(|cover| preorder_from_stratification(strat) == h_map(cover).preorder())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w_space() -> FiniteSpace {
        FiniteSpace::discrete(&["a", "b", "c", "d"]).unwrap()
    }

    fn w_cover() -> Cover {
        Cover::from_names(&w_space(), &[vec!["a", "b"], vec!["b", "c"], vec!["c", "d"]]).unwrap()
    }

    #[test]
    fn h_on_running_example() {
        let h = h_map(&w_cover());
        let sigs: Vec<Vec<usize>> = h.signatures().iter().map(|s| s.indices().to_vec()).collect();
        assert_eq!(sigs, vec![vec![0], vec![0, 1], vec![1, 2], vec![2]]);
        assert!(preorder_leq(&h, "a", "b").unwrap());
        assert!(!preorder_leq(&h, "b", "c").unwrap());
        assert!(preorder_leq(&h, "c", "c").unwrap());
        assert!(preorder_leq(&h, "z", "a").is_err());
    }

    #[test]
    fn h_on_trivial_and_partition_covers() {
        let h = h_map(&Cover::trivial(&w_space()));
        assert!(h.signatures().iter().all(|s| s.indices() == [0]));
        let part = Cover::from_names(&w_space(), &[vec!["a"], vec!["b"], vec!["c"], vec!["d"]])
            .unwrap();
        assert_eq!(h_map(&part).occurring().len(), 4);
    }

    #[test]
    fn cover_validation() {
        let s = FiniteSpace::indiscrete(&["a", "b"]).unwrap();
        let err = Cover::from_names(&s, &[vec!["a"], vec!["a", "b"]]).unwrap_err();
        assert!(matches!(err, Error::NotOpen { index: 0, .. }));
        let err = Cover::from_names(&w_space(), &[vec!["a", "b"]]).unwrap_err();
        assert_eq!(
            err,
            Error::NotACover {
                missing: vec!["c".into(), "d".into()]
            }
        );
        let err = Cover::from_names::<&str>(&w_space(), &[vec![], vec!["a", "b", "c", "d"]])
            .unwrap_err();
        assert_eq!(err, Error::EmptyMember { index: 0 });
    }

    #[test]
    fn quotient_of_running_example() {
        let q = quotient_poset(&w_cover());
        assert_eq!(q.len(), 4);
        let strict: Vec<(usize, usize)> = q.order().strict_part().pairs();
        // classes are a, b, c, d in order
        assert_eq!(strict, vec![(0, 1), (3, 2)]);
    }

    #[test]
    fn quotient_of_two_point_example() {
        let s = FiniteSpace::discrete(&["a", "b"]).unwrap();
        let cover = Cover::from_names(&s, &[vec!["a", "b"], vec!["a"]]).unwrap();
        let q = quotient_poset(&cover);
        assert_eq!(q.len(), 2);
        // [b] < [a]
        assert!(q.leq(1, 0) && !q.leq(0, 1));
    }

    #[test]
    fn standard_stratification_certificate() {
        let (strat, cert) = standard_stratification(&w_cover()).unwrap();
        let b = strat.space().index_of("b").unwrap();
        let entry = cert
            .entries
            .iter()
            .find(|e| e.up_set == vec![strat.stratum_of(b)])
            .unwrap();
        assert_eq!(entry.preimage, PointSet::singleton(b));
        assert_eq!(entry.witness, vec![Signature::new(vec![0, 1])]);
        assert!(check_continuity_of(&strat));
        // minimal neighbourhoods {a,b},{b},{c},{c,d}: 3 × 3 unions
        assert_eq!(strat.second_topology().opens().len(), 9);
    }

    fn check_continuity_of(strat: &Stratification) -> bool {
        crate::topology::check_continuity(&strat.projection().unwrap())
    }

    #[test]
    fn trivial_cover_is_one_point() {
        let (strat, cert) = standard_stratification(&Cover::trivial(&w_space())).unwrap();
        assert_eq!(strat.quotient().len(), 1);
        assert_eq!(cert.entries.len(), 2);
        assert_eq!(cert.entries[1].preimage, w_space().full());
    }

    #[test]
    fn partition_cover_second_topology_is_discrete() {
        let cover = Cover::from_names(&w_space(), &[vec!["a", "b"], vec!["c", "d"]]).unwrap();
        let (strat, cert) = standard_stratification(&cover).unwrap();
        assert_eq!(strat.second_topology().opens().len(), 4);
        assert_eq!(cert.entries.len(), 4);
    }

    #[test]
    fn preimage_formula() {
        let (strat, _) = standard_stratification(&w_cover()).unwrap();
        let sp = strat.space();
        let b = strat.stratum_of(sp.index_of("b").unwrap());
        let a = strat.stratum_of(sp.index_of("a").unwrap());
        assert_eq!(stratum_preimage_formula(&strat, b).unwrap(), sp.set_of(&["b"]).unwrap());
        assert_eq!(stratum_preimage_formula(&strat, a).unwrap(), sp.set_of(&["a"]).unwrap());
        let (triv, _) = standard_stratification(&Cover::trivial(sp)).unwrap();
        assert_eq!(stratum_preimage_formula(&triv, 0).unwrap(), sp.full());
    }

    #[test]
    fn partial_order_from_signatures() {
        let p = preorder_to_partial_order(&h_map(&w_cover())).unwrap();
        let strict = p.relation().strict_part().pairs();
        assert_eq!(strict, vec![(0, 1), (3, 2)]);

        let constant = preorder_to_partial_order(&h_map(&Cover::trivial(&w_space()))).unwrap();
        assert_eq!(constant.relation(), &Relation::identity(4));
    }

    #[test]
    fn stratification_preorder_matches_signatures() {
        let (strat, _) = standard_stratification(&w_cover()).unwrap();
        assert_eq!(preorders_agree(&strat), Some(true));
        let (triv, _) = standard_stratification(&Cover::trivial(&w_space())).unwrap();
        assert_eq!(preorder_from_stratification(&triv), Relation::total(4));
    }

    #[test]
    fn identity_stratification_of_chain() {
        let chain = Poset::from_pairs(&["a", "b"], &[("a", "b")]).unwrap();
        let space = alexandroff_from_poset(&chain).unwrap();
        let (strat, cert) = identity_stratification(&space).unwrap();
        assert_eq!(strat.kind(), StratificationKind::Identity);
        assert_eq!(preorder_from_stratification(&strat), chain.relation().clone());
        assert_eq!(cert.entries.len(), 3);
    }

    #[test]
    fn too_many_classes_refused() {
        let names: Vec<String> = (0..21).map(|i| format!("q{i:02}")).collect();
        let space = FiniteSpace::indiscrete(&names).unwrap();
        // indiscrete: only X is open, so one class; use identity on a big antichain instead
        assert!(standard_stratification(&Cover::trivial(&space)).is_ok());
        let err = identity_stratification(&space).unwrap_err();
        assert!(matches!(err, Error::TooManyClasses { classes: 21, .. }));
    }
}
