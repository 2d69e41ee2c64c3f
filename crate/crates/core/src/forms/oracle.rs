//! The alternating-sum formula
//! `dω(X₀, …, X_k) = Σ_{p<q} (−1)^{p+q} ω([X_p, X_q], X₀, …, X̂_p, …, X̂_q, …, X_k)`
//! for constant coefficients. Only the bracket is shared with the inductive
//! construction; tuple ranking and permutation signs are computed here
//! independently.

use std::collections::HashMap;

use num_traits::Zero;

use super::lie::LieAlgebraPresentation;
use super::linalg::Q;
use super::KForm;
use crate::error::{Error, Result};

/// Increasing `k`-subsets of `0..n` in lexicographic order, via bitmasks.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect();
    out.sort();
    out
}

/// Number of inversions, or `None` on a repeated entry.
fn inversion_parity(t: &[usize]) -> Option<bool> {
    let mut odd = false;
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            if t[i] == t[j] {
                return None;
            }
            if t[i] > t[j] {
                odd = !odd;
            }
        }
    }
    Some(odd)
}

struct Lookup<'a> {
    form: &'a KForm,
    rank: HashMap<Vec<usize>, usize>,
}

impl Lookup<'_> {
    fn value(&self, tuple: &[usize]) -> Q {
        let Some(odd) = inversion_parity(tuple) else {
            return Q::zero();
        };
        let mut sorted = tuple.to_vec();
        sorted.sort_unstable();
        let c = &self.form.coeffs()[self.rank[&sorted]];
        if odd {
            -c
        } else {
            c.clone()
        }
    }
}

pub fn ce_oracle(g: &LieAlgebraPresentation, w: &KForm) -> Result<KForm> {
    let n = g.dim();
    if w.dim() != n {
        return Err(Error::Degree("form and algebra dimensions differ".into()));
    }
    if n > 20 {
        return Err(Error::Unsupported("oracle enumerates subsets of at most 20 elements".into()));
    }
    let k = w.degree();
    if k == n {
        return Ok(KForm::zero(n, n));
    }
    let lookup = Lookup {
        form: w,
        rank: subsets(n, k).into_iter().enumerate().map(|(i, t)| (t, i)).collect(),
    };
    let coeffs = subsets(n, k + 1)
        .iter()
        .map(|args| {
            let mut total = Q::zero();
            for p in 0..args.len() {
                for q in p + 1..args.len() {
                    let rest: Vec<usize> = args
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != p && i != q)
                        .map(|(_, &a)| a)
                        .collect();
                    let br = g.bracket_basis(args[p], args[q]);
                    let mut term = Q::zero();
                    for (m, c) in br.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let mut tuple = vec![m];
                        tuple.extend_from_slice(&rest);
                        term += c * lookup.value(&tuple);
                    }
                    if (p + q) % 2 == 1 {
                        total -= term;
                    } else {
                        total += term;
                    }
                }
            }
            total
        })
        .collect();
    KForm::new(n, k + 1, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets(2, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn abelian_oracle_vanishes() {
        let g = LieAlgebraPresentation::abelian(4);
        for k in 0..=4 {
            let n = super::super::binomial(4, k);
            let w = KForm::new(4, k, (0..n).map(|i| Q::from_integer((i as i64 + 1).into())).collect()).unwrap();
            assert!(ce_oracle(&g, &w).unwrap().is_zero());
        }
    }

    #[test]
    fn heisenberg_dual() {
        let h = LieAlgebraPresentation::heisenberg();
        let d = ce_oracle(&h, &KForm::dual(3, 2).unwrap()).unwrap();
        assert_eq!(d.coeffs()[0], Q::from_integer((-1).into()));
        assert!(d.coeffs()[1..].iter().all(Zero::is_zero));
    }
}
