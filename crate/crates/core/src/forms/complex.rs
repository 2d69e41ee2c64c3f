//! The complex `0 → Λ⁰ → Λ¹ → … → Λⁿ → 0` and its cohomology.

use super::lie::{validate_lie, LieAlgebraPresentation};
use super::linalg::Matrix;
use super::{binomial, ExteriorDerivative};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexReport {
    pub dim: usize,
    /// `d_k` for `k = 0..=n`; `d_n` has no rows.
    pub matrices: Vec<Matrix>,
    pub ranks: Vec<usize>,
    /// `b_k = C(n, k) − rank d_k − rank d_{k−1}`.
    pub betti: Vec<usize>,
    pub euler: i64,
}

pub fn de_rham_complex(g: &LieAlgebraPresentation) -> Result<ComplexReport> {
    validate_lie(g)?;
    let n = g.dim();
    let d = ExteriorDerivative::new(g)?;
    for k in 1..=n {
        if !d.matrix(k).mul(d.matrix(k - 1)).is_zero() {
            return Err(Error::invariant(format!("d∘d ≠ 0 from degree {}", k - 1)));
        }
    }
    let ranks: Vec<usize> = d.matrices().iter().map(Matrix::rank).collect();
    let betti: Vec<usize> = (0..=n)
        .map(|k| {
            let before = if k == 0 { 0 } else { ranks[k - 1] };
            binomial(n, k) - ranks[k] - before
        })
        .collect();
    let euler = betti
        .iter()
        .enumerate()
        .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
        .sum();
    Ok(ComplexReport {
        dim: n,
        matrices: d.matrices().to_vec(),
        ranks,
        betti,
        euler,
    })
}
