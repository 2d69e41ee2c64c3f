//! The wedge basis: `e*_I` for strictly increasing index tuples `I`, listed
//! lexicographically. Every sign convention of the module lives here.

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// All `k`-subsets of `0..n` as increasing tuples, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(n, k));
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Sorts `indices`, returning the sorted tuple and the permutation sign, or
/// `None` when an index repeats (the alternating value is then zero).
pub fn sort_with_sign(indices: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = indices.to_vec();
    let mut odd = false;
    // insertion sort, counting transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, odd))
}

/// Index tables for every degree of an `n`-dimensional exterior algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeBasis {
    n: usize,
    by_degree: Vec<Vec<Vec<usize>>>,
}

impl WedgeBasis {
    pub fn new(n: usize) -> Self {
        WedgeBasis {
            n,
            by_degree: (0..=n).map(|k| combinations(n, k)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Number of basis forms of degree `k`; zero above `n`.
    pub fn size(&self, k: usize) -> usize {
        self.by_degree.get(k).map_or(0, Vec::len)
    }

    pub fn tuples(&self, k: usize) -> &[Vec<usize>] {
        self.by_degree.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn tuple(&self, k: usize, i: usize) -> &[usize] {
        &self.by_degree[k][i]
    }

    /// Position of an increasing tuple.
    pub fn index(&self, tuple: &[usize]) -> usize {
        self.by_degree[tuple.len()]
            .binary_search_by(|t| t.as_slice().cmp(tuple))
            .expect("increasing tuple of in-range indices")
    }

    /// Position and sign of an arbitrary tuple, `None` if an index repeats.
    pub fn signed_index(&self, tuple: &[usize]) -> Option<(usize, bool)> {
        let (sorted, odd) = sort_with_sign(tuple)?;
        Some((self.index(&sorted), odd))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        for n in 0..7 {
            for k in 0..=n + 1 {
                assert_eq!(combinations(n, k).len(), binomial(n, k));
            }
        }
        assert_eq!(combinations(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(combinations(2, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn signs() {
        assert_eq!(sort_with_sign(&[0, 1, 2]), Some((vec![0, 1, 2], false)));
        assert_eq!(sort_with_sign(&[1, 0, 2]), Some((vec![0, 1, 2], true)));
        assert_eq!(sort_with_sign(&[2, 0, 1]), Some((vec![0, 1, 2], false)));
        assert_eq!(sort_with_sign(&[1, 1]), None);
    }

    #[test]
    fn indexing() {
        let b = WedgeBasis::new(4);
        for k in 0..=4 {
            for (i, t) in b.tuples(k).iter().enumerate() {
                assert_eq!(b.index(t), i);
            }
        }
        assert_eq!(b.signed_index(&[3, 1]), Some((b.index(&[1, 3]), true)));
        assert_eq!(b.size(5), 0);
    }
}
