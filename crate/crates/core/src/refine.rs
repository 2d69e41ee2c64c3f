//! Refinements of covers and the refined (cover-independent) poset.
//!
//! A refinement of a cover is a cover containing all of its members, possibly
//! with more. Adding members can only split classes, so every fine class
//! lies in a single coarse class: this gives a well-defined monotone
//! surjection fine → coarse. Going the other way needs a choice of
//! representatives, and the resulting section need not be monotone.

use crate::error::{Error, Result};
use crate::order::{is_monotone, monotonicity_violation};
use crate::stratify::{quotient_poset, Cover, QuotientPoset};
use crate::topology::FiniteSpace;

/// Every member of `coarse` occurs (as a set) among the members of `fine`.
pub fn is_refinement(coarse: &Cover, fine: &Cover) -> Result<bool> {
    if coarse.space() != fine.space() {
        return Err(Error::input("covers live on different spaces"));
    }
    let fine_sets = fine.member_sets();
    Ok(coarse
        .members()
        .iter()
        .all(|m| fine_sets.binary_search(m).is_ok()))
}

#[derive(Clone, Debug)]
pub struct RefinementPair {
    coarse: Cover,
    fine: Cover,
    coarse_poset: QuotientPoset,
    fine_poset: QuotientPoset,
}

impl RefinementPair {
    pub fn new(coarse: Cover, fine: Cover) -> Result<Self> {
        if !is_refinement(&coarse, &fine)? {
            return Err(Error::input("the fine cover does not contain every coarse member"));
        }
        let coarse_poset = quotient_poset(&coarse);
        let fine_poset = quotient_poset(&fine);
        Ok(RefinementPair {
            coarse,
            fine,
            coarse_poset,
            fine_poset,
        })
    }

    pub fn coarse(&self) -> &Cover {
        &self.coarse
    }

    pub fn fine(&self) -> &Cover {
        &self.fine
    }

    pub fn coarse_poset(&self) -> &QuotientPoset {
        &self.coarse_poset
    }

    pub fn fine_poset(&self) -> &QuotientPoset {
        &self.fine_poset
    }
}

/// `[x]_fine ↦ [x]_coarse`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoarseningSurjection {
    pub table: Vec<usize>,
    /// Fine order pairs `(i, j)` whose images were checked to be ordered.
    pub checked_pairs: Vec<(usize, usize)>,
}

pub fn coarsening_surjection(pair: &RefinementPair) -> Result<CoarseningSurjection> {
    coarsen(&pair.fine_poset, &pair.coarse_poset)
}

fn coarsen(fine: &QuotientPoset, coarse: &QuotientPoset) -> Result<CoarseningSurjection> {
    let mut table = Vec::with_capacity(fine.len());
    for (c, stratum) in fine.classes().iter().enumerate() {
        let image = coarse.class_of(stratum.representative);
        if let Some(x) = stratum.members.iter().find(|&x| coarse.class_of(x) != image) {
            return Err(Error::invariant(format!(
                "fine class {c} meets coarse classes {image} and {}",
                coarse.class_of(x)
            )));
        }
        table.push(image);
    }
    let mut hit = vec![false; coarse.len()];
    table.iter().for_each(|&c| hit[c] = true);
    if let Some(c) = hit.iter().position(|h| !h) {
        return Err(Error::invariant(format!("coarse class {c} is not hit")));
    }
    if let Some((i, j)) = monotonicity_violation(fine.order(), coarse.order(), &table) {
        return Err(Error::invariant(format!(
            "coarsening breaks the order between fine classes {i} and {j}"
        )));
    }
    Ok(CoarseningSurjection {
        table,
        checked_pairs: fine.order().pairs(),
    })
}

/// `[x]_coarse ↦ [rep [x]_coarse]_fine`, with its properties reported.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentativeSection {
    pub table: Vec<usize>,
    pub injective: bool,
    pub monotone: bool,
    /// coarsening ∘ section = id on the coarse poset
    pub retracts: bool,
}

pub fn representative_section(pair: &RefinementPair) -> Result<RepresentativeSection> {
    let coarse = &pair.coarse_poset;
    let fine = &pair.fine_poset;
    let table: Vec<usize> = coarse
        .classes()
        .iter()
        .map(|s| fine.class_of(s.representative))
        .collect();
    let mut sorted = table.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let injective = sorted.len() == table.len();
    let monotone = is_monotone(coarse.order(), fine.order(), &table);
    let back = coarsening_surjection(pair)?;
    let retracts = table
        .iter()
        .enumerate()
        .all(|(c, &f)| back.table[f] == c);
    Ok(RepresentativeSection {
        table,
        injective,
        monotone,
        retracts,
    })
}

/// The quotient poset of the maximal cover (all nonempty opens), which is
/// the top of the finite directed system of covers and so realises its limit.
#[derive(Clone, Debug)]
pub struct RefinedPoset {
    cover: Cover,
    poset: QuotientPoset,
}

impl RefinedPoset {
    pub fn cover(&self) -> &Cover {
        &self.cover
    }

    pub fn poset(&self) -> &QuotientPoset {
        &self.poset
    }

    /// The coarsening surjection from the refined poset onto `cover`'s poset.
    pub fn coarsening_onto(&self, cover: &Cover) -> Result<CoarseningSurjection> {
        if !is_refinement(cover, &self.cover)? {
            return Err(Error::invariant("maximal cover does not refine a cover"));
        }
        coarsen(&self.poset, &quotient_poset(cover))
    }
}

pub fn refined_poset(space: &FiniteSpace) -> Result<RefinedPoset> {
    if space.is_empty() {
        return Err(Error::input("refined poset needs a nonempty space"));
    }
    let cover = Cover::maximal(space);
    let poset = quotient_poset(&cover);
    let refined = RefinedPoset { cover, poset };
    refined.coarsening_onto(&Cover::trivial(space))?;
    Ok(refined)
}
