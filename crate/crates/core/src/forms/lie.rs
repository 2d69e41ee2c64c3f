//! Finite-dimensional Lie algebras given by structure constants.

use num_traits::{One, Zero};

use super::linalg::{Matrix, Q};
use crate::error::{Error, Result};

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraPresentation {
    basis: Vec<String>,
    // c[(i * n + j) * n + k]
    constants: Vec<Q>,
}

impl LieAlgebraPresentation {
    /// Raw constants, not validated.
    pub fn from_constants(basis: Vec<String>, constants: Vec<Q>) -> Result<Self> {
        let n = basis.len();
        if constants.len() != n * n * n {
            return Err(Error::input(format!(
                "{} structure constants for dimension {n}",
                constants.len()
            )));
        }
        Ok(LieAlgebraPresentation { basis, constants })
    }

    /// From `[e_i, e_j] = v` entries; `[e_j, e_i] = −v` is filled in unless
    /// given too. Unlisted brackets are zero.
    pub fn from_brackets(basis: Vec<String>, brackets: &[(usize, usize, Vec<Q>)]) -> Result<Self> {
        let n = basis.len();
        for (i, b) in basis.iter().enumerate() {
            if basis[..i].contains(b) {
                return Err(Error::input(format!("duplicate basis name `{b}`")));
            }
        }
        let mut constants = vec![Q::zero(); n * n * n];
        let mut given = vec![false; n * n];
        for (i, j, v) in brackets {
            let (i, j) = (*i, *j);
            if i >= n || j >= n {
                return Err(Error::input(format!("bracket [{i}, {j}] is out of range for dimension {n}")));
            }
            if v.len() != n {
                return Err(Error::input(format!(
                    "bracket [{i}, {j}] has {} coefficients, expected {n}",
                    v.len()
                )));
            }
            if given[i * n + j] {
                return Err(Error::input(format!("bracket [{i}, {j}] given twice")));
            }
            given[i * n + j] = true;
            for (k, c) in v.iter().enumerate() {
                constants[(i * n + j) * n + k] = c.clone();
            }
        }
        for (i, j, v) in brackets {
            if !given[j * n + i] {
                for (k, c) in v.iter().enumerate() {
                    constants[(j * n + i) * n + k] = -c;
                }
            }
        }
        LieAlgebraPresentation::from_constants(basis, constants)
    }

    pub fn abelian(n: usize) -> Self {
        let basis = (1..=n).map(|i| format!("e{i}")).collect();
        LieAlgebraPresentation {
            basis,
            constants: vec![Q::zero(); n * n * n],
        }
    }

    /// `[e1, e2] = e3`.
    pub fn heisenberg() -> Self {
        let basis = vec!["e1".into(), "e2".into(), "e3".into()];
        LieAlgebraPresentation::from_brackets(basis, &[(0, 1, vec![q(0), q(0), q(1)])]).unwrap()
    }

    /// `[h, e] = 2e`, `[h, f] = −2f`, `[e, f] = h`.
    pub fn sl2() -> Self {
        let basis = vec!["h".into(), "e".into(), "f".into()];
        LieAlgebraPresentation::from_brackets(
            basis,
            &[
                (0, 1, vec![q(0), q(2), q(0)]),
                (0, 2, vec![q(0), q(0), q(-2)]),
                (1, 2, vec![q(1), q(0), q(0)]),
            ],
        )
        .unwrap()
    }

    /// `[a, b] = b`, the non-abelian two-dimensional algebra.
    pub fn affine_line() -> Self {
        let basis = vec!["a".into(), "b".into()];
        LieAlgebraPresentation::from_brackets(basis, &[(0, 1, vec![q(0), q(1)])]).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Q {
        let n = self.dim();
        &self.constants[(i * n + j) * n + k]
    }

    pub fn constants(&self) -> &[Q] {
        &self.constants
    }

    /// `[e_i, e_j]` as a coefficient vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Q] {
        let n = self.dim();
        &self.constants[(i * n + j) * n..(i * n + j + 1) * n]
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let n = self.dim();
        assert!(x.len() == n && y.len() == n, "vectors must have length {n}");
        let mut out = vec![Q::zero(); n];
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let w = xi * yj;
                for (k, c) in self.bracket_basis(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &w * c;
                    }
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        v[i] = Q::one();
        v
    }

    /// New basis `f_a = Σ_i p[i][a] e_i`; `p` must be invertible.
    pub fn change_basis(&self, p: &Matrix) -> Result<Self> {
        let n = self.dim();
        if p.rows() != n || p.cols() != n {
            return Err(Error::input("change of basis must be a square matrix of the algebra's dimension"));
        }
        let inv = p.inverse().ok_or_else(|| Error::input("change of basis is singular"))?;
        let cols: Vec<Vec<Q>> = (0..n).map(|a| p.column(a)).collect();
        let mut constants = vec![Q::zero(); n * n * n];
        for a in 0..n {
            for b in 0..n {
                let br = inv.apply(&self.bracket(&cols[a], &cols[b]));
                for (c, v) in br.into_iter().enumerate() {
                    constants[(a * n + b) * n + c] = v;
                }
            }
        }
        let basis = (1..=n).map(|i| format!("f{i}")).collect();
        LieAlgebraPresentation::from_constants(basis, constants)
    }

    /// `g ⊕ h` with the two factors commuting.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (n, m) = (self.dim(), other.dim());
        let d = n + m;
        let mut constants = vec![Q::zero(); d * d * d];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    constants[(i * d + j) * d + k] = self.constant(i, j, k).clone();
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    constants[((n + i) * d + n + j) * d + n + k] = other.constant(i, j, k).clone();
                }
            }
        }
        let mut basis: Vec<String> = self.basis.iter().map(|b| format!("{b}.0")).collect();
        basis.extend(other.basis.iter().map(|b| format!("{b}.1")));
        LieAlgebraPresentation { basis, constants }
    }
}

/// Checks antisymmetry, then the Jacobi identity, reporting the first
/// failing index triple.
pub fn validate_lie(g: &LieAlgebraPresentation) -> Result<()> {
    let n = g.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if g.constant(i, j, k) != &-g.constant(j, i, k) {
                    return Err(Error::InvalidLie {
                        law: "antisymmetry",
                        i,
                        j,
                        k,
                    });
                }
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let e = |t| g.basis_vector(t);
                let a = g.bracket(&g.bracket(&e(i), &e(j)), &e(k));
                let b = g.bracket(&g.bracket(&e(j), &e(k)), &e(i));
                let c = g.bracket(&g.bracket(&e(k), &e(i)), &e(j));
                if a.iter().zip(&b).zip(&c).any(|((a, b), c)| !(a + b + c).is_zero()) {
                    return Err(Error::InvalidLie {
                        law: "the Jacobi identity",
                        i,
                        j,
                        k,
                    });
                }
            }
        }
    }
    Ok(())
}
