//! Constant-coefficient forms on a presented Lie algebra and their exterior
//! derivative.
//!
//! A `k`-form is stored by its values `ω(e_I)` on increasing index tuples `I`.
//! Wedge products follow the determinant convention
//! `(α₁ ∧ … ∧ α_k)(X₁, …, X_k) = det[α_i(X_j)]`, so `e*_I(e_I) = 1`.

mod basis;
mod complex;
mod lie;
mod linalg;
mod oracle;

pub use basis::{binomial, combinations, sort_with_sign, WedgeBasis};
pub use complex::{de_rham_complex, ComplexReport};
pub use lie::{validate_lie, LieAlgebraPresentation};
pub use linalg::{Matrix, Q};
pub use oracle::ce_oracle;

use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KForm {
    dim: usize,
    degree: usize,
    coeffs: Vec<Q>,
}

impl KForm {
    pub fn new(dim: usize, degree: usize, coeffs: Vec<Q>) -> Result<Self> {
        if degree > dim {
            return Err(Error::Degree(format!("degree {degree} exceeds dimension {dim}")));
        }
        if coeffs.len() != binomial(dim, degree) {
            return Err(Error::Degree(format!(
                "a {degree}-form in dimension {dim} has {} coefficients, got {}",
                binomial(dim, degree),
                coeffs.len()
            )));
        }
        Ok(KForm { dim, degree, coeffs })
    }

    pub fn zero(dim: usize, degree: usize) -> Self {
        let degree = degree.min(dim);
        KForm {
            dim,
            degree,
            coeffs: vec![Q::zero(); binomial(dim, degree)],
        }
    }

    /// The constant `c` as a 0-form.
    pub fn constant(dim: usize, c: Q) -> Self {
        KForm {
            dim,
            degree: 0,
            coeffs: vec![c],
        }
    }

    /// `e*_{i₁} ∧ … ∧ e*_{i_k}` for an increasing tuple.
    pub fn basis_form(dim: usize, tuple: &[usize]) -> Result<Self> {
        if tuple.windows(2).any(|w| w[0] >= w[1]) || tuple.iter().any(|&i| i >= dim) {
            return Err(Error::input(format!("{tuple:?} is not an increasing tuple below {dim}")));
        }
        let mut f = KForm::zero(dim, tuple.len());
        let i = WedgeBasis::new(dim).index(tuple);
        f.coeffs[i] = Q::one();
        Ok(f)
    }

    /// `e*_i`
    pub fn dual(dim: usize, i: usize) -> Result<Self> {
        KForm::basis_form(dim, &[i])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `ω(e_{i₁}, …, e_{i_k})` for any index tuple.
    pub fn eval_basis(&self, basis: &WedgeBasis, tuple: &[usize]) -> Q {
        assert_eq!(tuple.len(), self.degree, "wrong number of arguments");
        match basis.signed_index(tuple) {
            None => Q::zero(),
            Some((i, odd)) => {
                if odd {
                    -&self.coeffs[i]
                } else {
                    self.coeffs[i].clone()
                }
            }
        }
    }

    /// `ω(X₁, …, X_k)` by multilinear expansion.
    pub fn eval(&self, vectors: &[Vec<Q>]) -> Q {
        assert_eq!(vectors.len(), self.degree, "wrong number of arguments");
        let basis = WedgeBasis::new(self.dim);
        let mut total = Q::zero();
        let mut tuple = Vec::with_capacity(self.degree);
        self.expand(&basis, vectors, &mut tuple, Q::one(), &mut total);
        total
    }

    fn expand(&self, basis: &WedgeBasis, vectors: &[Vec<Q>], tuple: &mut Vec<usize>, weight: Q, total: &mut Q) {
        let Some(v) = vectors.get(tuple.len()) else {
            *total += weight * self.eval_basis(basis, tuple);
            return;
        };
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() || tuple.contains(&i) {
                continue;
            }
            tuple.push(i);
            self.expand(basis, vectors, tuple, &weight * c, total);
            tuple.pop();
        }
    }

    pub fn add(&self, other: &KForm) -> Result<KForm> {
        self.check_same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(KForm { coeffs, ..*self })
    }

    pub fn sub(&self, other: &KForm) -> Result<KForm> {
        self.check_same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(KForm { coeffs, ..*self })
    }

    pub fn scale(&self, c: &Q) -> KForm {
        KForm {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            ..*self
        }
    }

    fn check_same(&self, other: &KForm) -> Result<()> {
        if self.dim != other.dim || self.degree != other.degree {
            return Err(Error::Degree(format!(
                "cannot combine a {}-form on dimension {} with a {}-form on dimension {}",
                self.degree, self.dim, other.degree, other.dim
            )));
        }
        Ok(())
    }
}

fn check_algebra(g: &LieAlgebraPresentation, w: &KForm) -> Result<()> {
    if g.dim() != w.dim() {
        return Err(Error::Degree(format!(
            "form lives on dimension {}, algebra has dimension {}",
            w.dim(),
            g.dim()
        )));
    }
    Ok(())
}

/// `ω₁ ∧ ω₂`; when the degrees add past `n` the result is the zero `n`-form.
pub fn wedge(a: &KForm, b: &KForm) -> Result<KForm> {
    if a.dim != b.dim {
        return Err(Error::Degree("forms live on different dimensions".into()));
    }
    let n = a.dim;
    let (p, q) = (a.degree, b.degree);
    if p + q > n {
        return Ok(KForm::zero(n, n));
    }
    let basis = WedgeBasis::new(n);
    let mut coeffs = vec![Q::zero(); basis.size(p + q)];
    for (i, ti) in basis.tuples(p).iter().enumerate() {
        if a.coeffs[i].is_zero() {
            continue;
        }
        for (j, tj) in basis.tuples(q).iter().enumerate() {
            if b.coeffs[j].is_zero() {
                continue;
            }
            let joined: Vec<usize> = ti.iter().chain(tj).copied().collect();
            if let Some((k, odd)) = basis.signed_index(&joined) {
                let term = &a.coeffs[i] * &b.coeffs[j];
                if odd {
                    coeffs[k] -= term;
                } else {
                    coeffs[k] += term;
                }
            }
        }
    }
    KForm::new(n, p + q, coeffs)
}

/// `(i_X ω)(X₂, …) = ω(X, X₂, …)`.
pub fn interior_product(x: &[Q], w: &KForm) -> Result<KForm> {
    if w.degree == 0 {
        return Err(Error::Degree("interior product of a 0-form".into()));
    }
    if x.len() != w.dim {
        return Err(Error::Degree("vector and form live on different dimensions".into()));
    }
    let basis = WedgeBasis::new(w.dim);
    let coeffs = basis
        .tuples(w.degree - 1)
        .iter()
        .map(|rest| {
            let mut sum = Q::zero();
            for (m, c) in x.iter().enumerate() {
                if c.is_zero() || rest.contains(&m) {
                    continue;
                }
                let mut tuple = vec![m];
                tuple.extend_from_slice(rest);
                sum += c * w.eval_basis(&basis, &tuple);
            }
            sum
        })
        .collect();
    KForm::new(w.dim, w.degree - 1, coeffs)
}

/// `(L_X ω)(X₁, …, X_k) = X(ω(X₁, …, X_k)) − Σ_i ω(…, [X, X_i], …)`; the first
/// term vanishes for constant coefficients.
pub fn lie_derivative(g: &LieAlgebraPresentation, x: &[Q], w: &KForm) -> Result<KForm> {
    check_algebra(g, w)?;
    if x.len() != g.dim() {
        return Err(Error::Degree("vector field has the wrong dimension".into()));
    }
    let n = g.dim();
    let basis = WedgeBasis::new(n);
    let k = w.degree;
    let coeffs = basis
        .tuples(k)
        .iter()
        .map(|tuple| {
            let mut sum = Q::zero();
            for slot in 0..k {
                let moved = g.bracket(x, &g.basis_vector(tuple[slot]));
                for (m, c) in moved.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut t = tuple.clone();
                    t[slot] = m;
                    sum -= c * w.eval_basis(&basis, &t);
                }
            }
            sum
        })
        .collect();
    KForm::new(n, k, coeffs)
}

/// `dω(X₁, X₂) = X₁ω(X₂) − X₂ω(X₁) − ω([X₁, X₂])`, which for constant
/// coefficients is `−ω([X₁, X₂])`.
pub fn d_one_form(g: &LieAlgebraPresentation, w: &KForm) -> Result<KForm> {
    check_algebra(g, w)?;
    if w.degree != 1 {
        return Err(Error::Degree(format!("expected a 1-form, got degree {}", w.degree)));
    }
    let n = g.dim();
    let basis = WedgeBasis::new(n);
    if n < 2 {
        return Ok(KForm::zero(n, n));
    }
    let coeffs = basis
        .tuples(2)
        .iter()
        .map(|t| {
            -g.bracket_basis(t[0], t[1])
                .iter()
                .zip(&w.coeffs)
                .fold(Q::zero(), |s, (c, a)| s + c * a)
        })
        .collect();
    KForm::new(n, 2, coeffs)
}

/// Matrices of `d_k: Λᵏ → Λᵏ⁺¹` in the wedge basis, built degree by degree.
///
/// `d₀ = 0` on constants and `d₁` is the 1-form formula. For `k ≥ 2` the
/// Cartan formula fixes every contraction `i_{e_m}(dω) = L_{e_m}ω − d(i_{e_m}ω)`
/// with the right side known from degree `k − 1`. `(dω)(e_K)` is read off the
/// contraction by `e_{min K}`; the contractions by the other elements of `K`
/// must give the same value up to sign, which is checked.
#[derive(Clone, Debug)]
pub struct ExteriorDerivative {
    basis: WedgeBasis,
    matrices: Vec<Matrix>,
}

impl ExteriorDerivative {
    pub fn new(g: &LieAlgebraPresentation) -> Result<Self> {
        let n = g.dim();
        let basis = WedgeBasis::new(n);
        let mut matrices: Vec<Matrix> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let m = match k {
                0 => Matrix::zeros(basis.size(1), 1),
                1 => {
                    let mut m = Matrix::zeros(basis.size(2), n);
                    for j in 0..n {
                        let d = d_one_form(g, &KForm::dual(n, j)?)?;
                        if d.degree == 2 {
                            for (i, c) in d.coeffs.into_iter().enumerate() {
                                m.set(i, j, c);
                            }
                        }
                    }
                    m
                }
                _ => cartan_step(g, &basis, k, &matrices[k - 1])?,
            };
            matrices.push(m);
        }
        Ok(ExteriorDerivative { basis, matrices })
    }

    pub fn basis(&self) -> &WedgeBasis {
        &self.basis
    }

    /// `d_k` with `C(n, k+1)` rows and `C(n, k)` columns.
    pub fn matrix(&self, k: usize) -> &Matrix {
        &self.matrices[k]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn apply(&self, w: &KForm) -> Result<KForm> {
        let n = self.basis.dim();
        if w.dim != n {
            return Err(Error::Degree("form lives on a different dimension".into()));
        }
        if w.degree == n {
            return Ok(KForm::zero(n, n));
        }
        KForm::new(n, w.degree + 1, self.matrices[w.degree].apply(&w.coeffs))
    }
}

fn cartan_step(g: &LieAlgebraPresentation, basis: &WedgeBasis, k: usize, prev: &Matrix) -> Result<Matrix> {
    let n = g.dim();
    let mut m = Matrix::zeros(basis.size(k + 1), basis.size(k));
    for (col, tuple) in basis.tuples(k).iter().enumerate() {
        let w = KForm::basis_form(n, tuple)?;
        // i_{e_m}(dω) for every basis field
        let mut contractions = Vec::with_capacity(n);
        for mi in 0..n {
            let e = g.basis_vector(mi);
            let lie = lie_derivative(g, &e, &w)?;
            let inner = interior_product(&e, &w)?;
            let d_inner = KForm::new(n, k, prev.apply(&inner.coeffs))?;
            contractions.push(lie.sub(&d_inner)?);
        }
        for (row, target) in basis.tuples(k + 1).iter().enumerate() {
            let value = contractions[target[0]].eval_basis(basis, &target[1..]);
            for (pos, &mi) in target.iter().enumerate().skip(1) {
                let mut rest = target.clone();
                rest.remove(pos);
                let other = contractions[mi].eval_basis(basis, &rest);
                let expected = if pos % 2 == 0 { value.clone() } else { -&value };
                if other != expected {
                    return Err(Error::invariant(format!(
                        "contractions of d{tuple:?} by e{} and e{mi} disagree on {target:?}",
                        target[0]
                    )));
                }
            }
            m.set(row, col, value);
        }
    }
    Ok(m)
}

/// `dω`; a top-degree form maps to the zero top-degree form.
pub fn exterior_derivative(g: &LieAlgebraPresentation, w: &KForm) -> Result<KForm> {
    check_algebra(g, w)?;
    ExteriorDerivative::new(g)?.apply(w)
}
