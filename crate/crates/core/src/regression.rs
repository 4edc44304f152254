//! Least squares with a design operator `A: G -> H`, `G = R^p`.
//!
//! `A` is given by the images `A g_j` of the standard basis of `G`. The mean
//! is `zeta = A beta`, so `U = ran(A)` and every estimator, interval and test
//! reduces to the subspace versions through `betâ = A^{-1} ζ̂` and the pulled
//! back functional `b = A Gram^{-1} c`.

use nalgebra::{DMatrix, DVector};

use crate::error::{invalid, Error, Result};
use crate::inference::{Interval, KnownSigmaCi, SubspaceTest, TestResult, UnknownSigmaCi};
use crate::spectral::{check_dim, span, HVector, SpectralModel, Subspace};

/// Smallest admissible ratio of Gram eigenvalues.
pub const GRAM_RATIO_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct DesignOperator {
    columns: Vec<HVector>,
    gram: DMatrix<f64>,
    range: Subspace,
}

impl DesignOperator {
    pub fn new(model: &SpectralModel, columns: Vec<HVector>) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::EmptySubspace("design operator has no columns"));
        }
        for c in &columns {
            check_dim(model.dim(), c.dim())?;
        }
        let p = columns.len();
        let gram = DMatrix::from_fn(p, p, |i, j| columns[i].dot(&columns[j]));
        let eig = gram.clone().symmetric_eigen().eigenvalues;
        let max = eig.max();
        let min = eig.min();
        if max.is_nan() || max <= 0.0 || min <= GRAM_RATIO_TOL * max {
            return Err(Error::RankDeficient(if max > 0.0 { min / max } else { 0.0 }));
        }
        let range = span(model, &columns)?;
        Ok(Self { columns, gram, range })
    }

    pub fn p(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[HVector] {
        &self.columns
    }

    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }

    /// `U = ran(A)`.
    pub fn range_subspace(&self) -> &Subspace {
        &self.range
    }

    /// Whether variance estimates on `ran(A)` can include the analytic tail.
    pub fn default_use_tail(&self, model: &SpectralModel) -> bool {
        model.default_use_tail() && self.range.as_modes().is_some()
    }

    /// `A beta`.
    pub fn apply(&self, beta: &[f64]) -> Result<HVector> {
        check_dim(self.p(), beta.len())?;
        let mut out = HVector::zeros(self.columns[0].dim());
        for (c, &b) in self.columns.iter().zip(beta) {
            out.add_scaled(b, c);
        }
        Ok(out)
    }

    fn solve_gram(&self, rhs: DVector<f64>) -> DVector<f64> {
        self.gram
            .clone()
            .cholesky()
            .expect("Gram matrix is positive definite by construction")
            .solve(&rhs)
    }

    /// `betâ(y)`, the solution of `Gram beta = (<A g_j, y>)_j`.
    pub fn lse(&self, y: &HVector) -> Result<Vec<f64>> {
        check_dim(self.columns[0].dim(), y.dim())?;
        let rhs = DVector::from_iterator(self.p(), self.columns.iter().map(|c| c.dot(y)));
        Ok(self.solve_gram(rhs).iter().copied().collect())
    }

    /// `b = (A^{-1})^* c = A Gram^{-1} c`, so that `<b, A beta> = <c, beta>`.
    pub fn pullback_functional(&self, c: &[f64]) -> Result<HVector> {
        check_dim(self.p(), c.len())?;
        let w = self.solve_gram(DVector::from_column_slice(c));
        self.apply(w.as_slice())
    }

    /// `U0 = A(G0)` for the subspace of `G` spanned by `g0`.
    pub fn image_subspace(&self, model: &SpectralModel, g0: &[Vec<f64>]) -> Result<Subspace> {
        if g0.is_empty() {
            return Err(invalid("G0", "needs at least one vector"));
        }
        let images = g0.iter().map(|g| self.apply(g)).collect::<Result<Vec<_>>>()?;
        span(model, &images)
    }
}

pub fn lse(a: &DesignOperator, y: &HVector) -> Result<Vec<f64>> {
    a.lse(y)
}

pub fn pullback_functional(a: &DesignOperator, c: &[f64]) -> Result<HVector> {
    a.pullback_functional(c)
}

pub fn ci_beta_known(
    c: &[f64],
    a: &DesignOperator,
    y: &HVector,
    model: &SpectralModel,
    sigma: f64,
    alpha: f64,
) -> Result<Interval> {
    let b = a.pullback_functional(c)?;
    KnownSigmaCi::new(&b, model, a.range_subspace(), sigma, alpha)?.interval(y)
}

pub fn ci_beta_unknown(
    c: &[f64],
    a: &DesignOperator,
    y: &HVector,
    model: &SpectralModel,
    alpha: f64,
    use_tail: bool,
) -> Result<Interval> {
    let b = a.pullback_functional(c)?;
    UnknownSigmaCi::new(&b, model, a.range_subspace(), alpha, use_tail)?.interval(y)
}

/// Test of `beta ∈ G0` with `G0 = span(g0)`.
pub fn test_beta(
    y: &HVector,
    a: &DesignOperator,
    g0: &[Vec<f64>],
    model: &SpectralModel,
    alpha: f64,
) -> Result<TestResult> {
    let u0 = a.image_subspace(model, g0)?;
    SubspaceTest::new(model, a.range_subspace(), &u0, alpha)?.apply(y)
}
