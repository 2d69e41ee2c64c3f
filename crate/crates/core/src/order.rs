//! Finite binary relations, partial orders and monotone maps.
//!
//! Elements are addressed by index; labels travel alongside in [`Poset`].

use std::fmt;

use crate::error::{Error, Result};

/// A binary relation on `0..n`, stored as a dense boolean matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    bits: Vec<bool>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation {
            n,
            bits: vec![false; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| i == j)
    }

    pub fn total(n: usize) -> Self {
        Self::from_fn(n, |_, _| true)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut bits = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                bits.push(f(i, j));
            }
        }
        Relation { n, bits }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut r = Self::empty(n);
        for (i, j) in pairs {
            r.set(i, j, true);
        }
        r
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn holds(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.bits[i * self.n + j] = value;
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|i| self.holds(i, i))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.antisymmetry_violation().is_none()
    }

    pub fn antisymmetry_violation(&self) -> Option<(usize, usize)> {
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.holds(i, j) && self.holds(j, i) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_transitive(&self) -> bool {
        self.transitivity_violation().is_none()
    }

    /// First triple `(i, j, k)` with `i R j`, `j R k` but not `i R k`.
    pub fn transitivity_violation(&self) -> Option<(usize, usize, usize)> {
        for i in 0..self.n {
            for j in 0..self.n {
                if !self.holds(i, j) {
                    continue;
                }
                for k in 0..self.n {
                    if self.holds(j, k) && !self.holds(i, k) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn is_preorder(&self) -> bool {
        self.is_reflexive() && self.is_transitive()
    }

    pub fn is_partial_order(&self) -> bool {
        self.is_preorder() && self.is_antisymmetric()
    }

    /// `i < j` iff `i R j` and not `j R i`.
    pub fn strict_part(&self) -> Relation {
        Relation::from_fn(self.n, |i, j| self.holds(i, j) && !self.holds(j, i))
    }

    pub fn reflexive_closure(&self) -> Relation {
        Relation::from_fn(self.n, |i, j| i == j || self.holds(i, j))
    }

    /// Warshall closure.
    pub fn transitive_closure(&self) -> Relation {
        let mut r = self.clone();
        for k in 0..self.n {
            for i in 0..self.n {
                if !r.holds(i, k) {
                    continue;
                }
                for j in 0..self.n {
                    if r.holds(k, j) {
                        r.set(i, j, true);
                    }
                }
            }
        }
        r
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.holds(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Covering pairs of the strict part: `i < j` with nothing strictly between.
    ///
    /// Only meaningful for preorders; for a partial order this is the Hasse diagram.
    pub fn covering_pairs(&self) -> Vec<(usize, usize)> {
        let strict = self.strict_part();
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if !strict.holds(i, j) {
                    continue;
                }
                let between = (0..self.n).any(|k| strict.holds(i, k) && strict.holds(k, j));
                if !between {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Relation")
            .field("n", &self.n)
            .field("pairs", &self.pairs())
            .finish()
    }
}

/// A finite partial order with labelled elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    order: Relation,
}

impl Poset {
    pub fn new(labels: Vec<String>, order: Relation) -> Result<Self> {
        if labels.len() != order.len() {
            return Err(Error::input(format!(
                "{} labels for a relation on {} elements",
                labels.len(),
                order.len()
            )));
        }
        if !order.is_reflexive() {
            return Err(Error::NotAPartialOrder("relation is not reflexive".into()));
        }
        if let Some((i, j)) = order.antisymmetry_violation() {
            return Err(Error::NotAPartialOrder(format!(
                "antisymmetry fails for `{}` and `{}`",
                labels[i], labels[j]
            )));
        }
        if let Some((i, j, k)) = order.transitivity_violation() {
            return Err(Error::NotAPartialOrder(format!(
                "transitivity fails: `{}` <= `{}` <= `{}` but not `{}` <= `{}`",
                labels[i], labels[j], labels[k], labels[i], labels[k]
            )));
        }
        Ok(Poset { labels, order })
    }

    /// Builds a poset from `[lesser, greater]` pairs; the diagonal is added,
    /// transitivity must already hold.
    pub fn from_pairs<S: AsRef<str>>(elements: &[S], pairs: &[(S, S)]) -> Result<Self> {
        let labels: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let index = |name: &str| {
            labels
                .iter()
                .position(|l| l == name)
                .ok_or_else(|| Error::UnknownPoint(name.to_string()))
        };
        let mut idx_pairs = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            idx_pairs.push((index(a.as_ref())?, index(b.as_ref())?));
        }
        let order = Relation::from_pairs(labels.len(), idx_pairs).reflexive_closure();
        Poset::new(labels, order)
    }

    pub fn antichain(labels: Vec<String>) -> Self {
        let n = labels.len();
        Poset {
            labels,
            order: Relation::identity(n),
        }
    }

    pub fn chain(labels: Vec<String>) -> Self {
        let n = labels.len();
        Poset {
            labels,
            order: Relation::from_fn(n, |i, j| i <= j),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn relation(&self) -> &Relation {
        &self.order
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.order.holds(i, j)
    }

    pub fn up_set(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.leq(i, j)).collect()
    }

    pub fn hasse_pairs(&self) -> Vec<(usize, usize)> {
        self.order.covering_pairs()
    }

    pub fn minima(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| (0..self.len()).all(|j| j == i || !self.leq(j, i)))
            .collect()
    }
}

/// `table` is monotone from `source` to `target` orders.
pub fn is_monotone(source: &Relation, target: &Relation, table: &[usize]) -> bool {
    monotonicity_violation(source, target, table).is_none()
}

pub fn monotonicity_violation(
    source: &Relation,
    target: &Relation,
    table: &[usize],
) -> Option<(usize, usize)> {
    source
        .pairs()
        .into_iter()
        .find(|&(i, j)| !target.holds(table[i], table[j]))
}

/// An order-preserving map between finite posets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneMap {
    source: Poset,
    target: Poset,
    table: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(source: Poset, target: Poset, table: Vec<usize>) -> Result<Self> {
        if table.len() != source.len() {
            return Err(Error::input(format!(
                "map table has {} entries for a source of {} elements",
                table.len(),
                source.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&t| t >= target.len()) {
            return Err(Error::input(format!("map image {bad} is outside the target")));
        }
        if let Some((i, j)) = monotonicity_violation(source.relation(), target.relation(), &table)
        {
            return Err(Error::NotMonotone(format!(
                "`{}` <= `{}` but `{}` is not <= `{}`",
                source.label(i),
                source.label(j),
                target.label(table[i]),
                target.label(table[j])
            )));
        }
        Ok(MonotoneMap {
            source,
            target,
            table,
        })
    }

    pub fn identity(poset: Poset) -> Self {
        let table = (0..poset.len()).collect();
        MonotoneMap {
            source: poset.clone(),
            target: poset,
            table,
        }
    }

    pub fn source(&self) -> &Poset {
        &self.source
    }

    pub fn target(&self) -> &Poset {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &MonotoneMap) -> Result<MonotoneMap> {
        if self.target != other.source {
            return Err(Error::input("composed maps do not share a middle poset"));
        }
        let table = self.table.iter().map(|&i| other.table[i]).collect();
        Ok(MonotoneMap {
            source: self.source.clone(),
            target: other.target.clone(),
            table,
        })
    }
}
