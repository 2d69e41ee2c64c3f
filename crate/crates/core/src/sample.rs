//! Seeded random instances for property checks and the self-test.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::forms::{validate_lie, LieAlgebraPresentation, Matrix, Q};
use crate::order::{MonotoneMap, Poset, Relation};
use crate::stratify::{Cover, Stratification};
use crate::topology::{generate_topology, FiniteSpace, PointMap, PointSet};

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i:02}")).collect()
}

fn random_subset<R: Rng>(rng: &mut R, universe: PointSet) -> PointSet {
    PointSet::from_indices(universe.iter().filter(|_| rng.gen_bool(0.5)))
}

/// A space on `1..=max_points` points generated by up to four random subsets.
pub fn random_space<R: Rng>(rng: &mut R, max_points: usize) -> FiniteSpace {
    let n = rng.gen_range(1..=max_points.max(1));
    let points = names(n);
    let full = PointSet::full(n);
    let basis: Vec<Vec<String>> = (0..rng.gen_range(0..=4))
        .map(|_| {
            random_subset(rng, full)
                .iter()
                .map(|i| points[i].clone())
                .collect()
        })
        .collect();
    generate_topology(&points, &basis).expect("random basis is well formed")
}

/// A cover by at most `max_members ≥ 1` nonempty opens. When the random
/// choice misses points, the last member is replaced by the whole space.
pub fn random_cover<R: Rng>(rng: &mut R, space: &FiniteSpace, max_members: usize) -> Cover {
    if space.is_empty() {
        return Cover::trivial(space);
    }
    let opens: Vec<PointSet> = space.opens().iter().copied().filter(|o| !o.is_empty()).collect();
    let count = rng.gen_range(1..=max_members.max(1));
    let mut members: Vec<PointSet> = (0..count).map(|_| *opens.choose(rng).unwrap()).collect();
    let union = members.iter().fold(PointSet::EMPTY, |u, &m| u.union(m));
    if union != space.full() {
        *members.last_mut().unwrap() = space.full();
    }
    members.shuffle(rng);
    Cover::new(space, members).expect("members are open and cover")
}

/// `cover` with up to `extra` random opens appended.
pub fn random_refinement<R: Rng>(rng: &mut R, cover: &Cover, extra: usize) -> Cover {
    let space = cover.space();
    let opens: Vec<PointSet> = space.opens().iter().copied().filter(|o| !o.is_empty()).collect();
    let mut members = cover.members().to_vec();
    for _ in 0..rng.gen_range(0..=extra) {
        members.push(*opens.choose(rng).unwrap());
    }
    Cover::new(space, members).expect("refinement of a cover is a cover")
}

/// A poset on `n` elements whose index order is a linear extension.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize, density: f64) -> Poset {
    let rel = Relation::from_fn(n, |i, j| i < j && rng.gen_bool(density));
    let order = rel.transitive_closure().reflexive_closure();
    Poset::new(names(n), order).expect("closure of an acyclic relation")
}

/// A monotone map, assigned along the source's index order; falls back to a
/// constant map after repeated dead ends.
pub fn random_monotone_map<R: Rng>(rng: &mut R, source: &Poset, target: &Poset) -> MonotoneMap {
    assert!(!target.is_empty() || source.is_empty(), "no maps into the empty poset");
    'attempt: for _ in 0..20 {
        let mut table: Vec<usize> = Vec::with_capacity(source.len());
        for x in 0..source.len() {
            let candidates: Vec<usize> = (0..target.len())
                .filter(|&y| (0..x).all(|p| !source.leq(p, x) || target.leq(table[p], y)))
                .collect();
            match candidates.choose(rng) {
                Some(&y) => table.push(y),
                None => continue 'attempt,
            }
        }
        if let Ok(m) = MonotoneMap::new(source.clone(), target.clone(), table) {
            return m;
        }
    }
    let c = rng.gen_range(0..target.len());
    MonotoneMap::new(source.clone(), target.clone(), vec![c; source.len()]).expect("constant maps are monotone")
}

/// A continuous map by rejection sampling, or a constant map.
pub fn random_continuous_map<R: Rng>(rng: &mut R, domain: &FiniteSpace, codomain: &FiniteSpace) -> PointMap {
    for _ in 0..50 {
        let table = (0..domain.len()).map(|_| rng.gen_range(0..codomain.len())).collect();
        let f = PointMap::new(domain.clone(), codomain.clone(), table).expect("table in range");
        if f.discontinuity_witness().is_none() {
            return f;
        }
    }
    let c = rng.gen_range(0..codomain.len());
    PointMap::constant(domain.clone(), codomain.clone(), c).expect("target in range")
}

/// A continuous map constant on each stratum of `s1`, or a constant map.
pub fn random_fiber_constant_map<R: Rng>(rng: &mut R, s1: &Stratification, codomain: &FiniteSpace) -> PointMap {
    let domain = s1.space();
    for _ in 0..50 {
        let images: Vec<usize> = (0..s1.quotient().len())
            .map(|_| rng.gen_range(0..codomain.len()))
            .collect();
        let table = (0..domain.len()).map(|x| images[s1.stratum_of(x)]).collect();
        let f = PointMap::new(domain.clone(), codomain.clone(), table).expect("table in range");
        if f.discontinuity_witness().is_none() {
            return f;
        }
    }
    let c = rng.gen_range(0..codomain.len());
    PointMap::constant(domain.clone(), codomain.clone(), c).expect("target in range")
}

fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// `L·U` with unit diagonals and small integer entries, hence invertible.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    let mut l = Matrix::identity(n);
    let mut u = Matrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            l.set(i, j, qi(rng.gen_range(-2..=2)));
            u.set(j, i, qi(rng.gen_range(-2..=2)));
        }
    }
    l.mul(&u)
}

/// Sparse constants supported on `k > max(i, j)`, kept only if Jacobi holds.
fn random_nilpotent<R: Rng>(rng: &mut R, n: usize) -> Option<LieAlgebraPresentation> {
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let v: Vec<Q> = (0..n)
                .map(|k| {
                    if k > j && rng.gen_bool(0.4) {
                        qi(rng.gen_range(-3..=3))
                    } else {
                        qi(0)
                    }
                })
                .collect();
            brackets.push((i, j, v));
        }
    }
    let g = LieAlgebraPresentation::from_brackets(names(n), &brackets).ok()?;
    validate_lie(&g).is_ok().then_some(g)
}

/// A valid presentation of dimension `1..=max_dim` (at least 1): a named
/// algebra, a direct sum or a filtered sparse one, under a random change of
/// basis half of the time.
pub fn random_lie<R: Rng>(rng: &mut R, max_dim: usize) -> LieAlgebraPresentation {
    let max_dim = max_dim.max(1);
    let g = loop {
        let candidate = match rng.gen_range(0..6) {
            0 => Some(LieAlgebraPresentation::abelian(rng.gen_range(1..=max_dim))),
            1 => Some(LieAlgebraPresentation::heisenberg()),
            2 => Some(LieAlgebraPresentation::sl2()),
            3 => Some(LieAlgebraPresentation::affine_line()),
            4 => {
                let a = LieAlgebraPresentation::affine_line();
                let other = match rng.gen_range(0..3) {
                    0 => LieAlgebraPresentation::affine_line(),
                    1 => LieAlgebraPresentation::abelian(1),
                    _ => LieAlgebraPresentation::abelian(2),
                };
                Some(a.direct_sum(&other))
            }
            _ => {
                let n = rng.gen_range(2..=max_dim.max(2));
                (0..50).find_map(|_| random_nilpotent(rng, n))
            }
        };
        if let Some(g) = candidate.filter(|g| g.dim() <= max_dim) {
            break g;
        }
    };
    if rng.gen_bool(0.5) {
        let p = random_unimodular(rng, g.dim());
        g.change_basis(&p).expect("unimodular change of basis")
    } else {
        g
    }
}

/// A random rational vector with small numerators and denominators.
pub fn random_vector<R: Rng>(rng: &mut R, n: usize) -> Vec<Q> {
    (0..n)
        .map(|_| Q::new(rng.gen_range(-4..=4).into(), rng.gen_range(1..=3).into()))
        .collect()
}
