//! Truncated spectral representation of a trace-class covariance operator.
//!
//! Every element of `H` is stored by its coordinates in the eigenbasis
//! `(e_k)` of `Q`, so `Q` acts diagonally. Modes are numbered from 1, in the
//! order of the eigen-expansion; coefficient slices are ordinary 0-based
//! slices (`coeffs[k - 1]` is the coordinate on `e_k`).

use std::ops::{Add, Index, Mul, Sub};

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Relative tolerance used to decide eigenvalue equality.
pub const DEFAULT_MULTIPLICITY_TOL: f64 = 1e-12;

/// Tolerance on the Gram matrix of a frame and on its invariance defect.
pub const FRAME_TOL: f64 = 1e-10;

/// Which analytic eigenfunctions, if any, belong to the model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisKind {
    /// `e_k(t) = sqrt(2) sin((k - 1/2) pi t)`, covariance `min(s, t)`.
    Wiener,
    /// `e_k(t) = sqrt(2) sin(k pi t)`, covariance `min(s, t) - s t`.
    Bridge,
    /// No pointwise representation.
    Abstract,
}

impl BasisKind {
    pub fn is_analytic(self) -> bool {
        !matches!(self, BasisKind::Abstract)
    }

    pub fn label(self) -> &'static str {
        match self {
            BasisKind::Wiener => "wiener",
            BasisKind::Bridge => "bridge",
            BasisKind::Abstract => "abstract",
        }
    }
}

/// Covariance operator `Q` truncated to its first `N` eigenpairs.
///
/// `tail_trace` carries the analytic value of the discarded eigenvalue sum
/// so that traces over complements can be exact.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ModelFile", into = "ModelFile")]
pub struct SpectralModel {
    eigenvalues: Vec<f64>,
    tail_trace: f64,
    basis: BasisKind,
}

/// On-disk layout of a [`SpectralModel`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelFile {
    pub dim: usize,
    pub eigenvalues: Vec<f64>,
    #[serde(default)]
    pub tail_trace: f64,
    #[serde(default = "abstract_basis")]
    pub basis_id: BasisKind,
}

fn abstract_basis() -> BasisKind {
    BasisKind::Abstract
}

impl TryFrom<ModelFile> for SpectralModel {
    type Error = Error;

    fn try_from(file: ModelFile) -> Result<Self> {
        if file.dim != file.eigenvalues.len() {
            return Err(Error::DimensionMismatch {
                expected: file.dim,
                found: file.eigenvalues.len(),
            });
        }
        SpectralModel::new(file.eigenvalues, file.tail_trace, file.basis_id)
    }
}

impl From<SpectralModel> for ModelFile {
    fn from(model: SpectralModel) -> Self {
        ModelFile {
            dim: model.dim(),
            eigenvalues: model.eigenvalues,
            tail_trace: model.tail_trace,
            basis_id: model.basis,
        }
    }
}

impl SpectralModel {
    pub fn new(eigenvalues: Vec<f64>, tail_trace: f64, basis: BasisKind) -> Result<Self> {
        if eigenvalues.is_empty() {
            return Err(invalid("eigenvalues", "at least one eigenvalue is required"));
        }
        if let Some((k, v)) = eigenvalues
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_finite() || **v < 0.0)
        {
            return Err(invalid(
                "eigenvalues",
                format!("eigenvalue {} is {v}; must be finite and nonnegative", k + 1),
            ));
        }
        if !tail_trace.is_finite() || tail_trace < 0.0 {
            return Err(invalid(
                "tail_trace",
                format!("{tail_trace}; must be finite and nonnegative"),
            ));
        }
        Ok(Self {
            eigenvalues,
            tail_trace,
            basis,
        })
    }

    /// Truncation level `N`.
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// `lambda_k` for a 1-based mode index.
    pub fn eigenvalue(&self, mode: usize) -> Result<f64> {
        check_mode(mode, self.dim())?;
        Ok(self.eigenvalues[mode - 1])
    }

    pub fn tail_trace(&self) -> f64 {
        self.tail_trace
    }

    pub fn basis(&self) -> BasisKind {
        self.basis
    }

    /// Whether traces over complements include the tail by default.
    ///
    /// On for the analytic processes, whose tails are known in closed form.
    pub fn default_use_tail(&self) -> bool {
        self.basis.is_analytic()
    }

    /// `sum_{k <= N} lambda_k`.
    pub fn truncated_trace(&self) -> f64 {
        neumaier_sum(self.eigenvalues.iter().copied())
    }

    /// `tr(Q)`: truncated sum plus tail.
    pub fn total_trace(&self) -> f64 {
        self.truncated_trace() + self.tail_trace
    }

    /// `||Q||_{L_2}^2 = sum lambda_k^2` over the truncated spectrum.
    pub fn hilbert_schmidt_sq(&self) -> f64 {
        neumaier_sum(self.eigenvalues.iter().map(|l| l * l))
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.iter().copied().fold(0.0, f64::max)
    }

    /// `Q v`.
    pub fn apply(&self, v: &HVector) -> Result<HVector> {
        check_dim(self.dim(), v.dim())?;
        Ok(HVector(
            v.0.iter()
                .zip(&self.eigenvalues)
                .map(|(x, l)| x * l)
                .collect(),
        ))
    }

    /// `<Q u, v>`.
    pub fn quad_form(&self, u: &HVector, v: &HVector) -> Result<f64> {
        check_dim(self.dim(), u.dim())?;
        check_dim(self.dim(), v.dim())?;
        Ok(neumaier_sum(
            u.0.iter()
                .zip(&v.0)
                .zip(&self.eigenvalues)
                .map(|((a, b), l)| a * b * l),
        ))
    }
}

/// Element of `H`, stored as coordinates `<y, e_k>` for `k = 1..=N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HVector(Vec<f64>);

impl HVector {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(invalid("coeffs", "all coefficients must be finite"));
        }
        Ok(Self(coeffs))
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![0.0; dim])
    }

    /// The eigenvector `e_k` (1-based mode).
    pub fn basis(dim: usize, mode: usize) -> Result<Self> {
        check_mode(mode, dim)?;
        let mut v = Self::zeros(dim);
        v.0[mode - 1] = 1.0;
        Ok(v)
    }

    /// Builds a vector from `(mode, value)` pairs; unlisted modes are zero.
    pub fn from_modes(dim: usize, entries: &[(usize, f64)]) -> Result<Self> {
        let mut v = Self::zeros(dim);
        for &(mode, value) in entries {
            check_mode(mode, dim)?;
            v.0[mode - 1] += value;
        }
        Self::new(v.0)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.0
    }

    pub fn norm_sq(&self) -> f64 {
        neumaier_sum(self.0.iter().map(|x| x * x))
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self(self.0.iter().map(|x| x * factor).collect())
    }

    /// `self + factor * other`, for equal dimensions.
    pub(crate) fn add_scaled(&mut self, factor: f64, other: &HVector) {
        debug_assert_eq!(self.dim(), other.dim());
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += factor * b;
        }
    }

    pub(crate) fn dot(&self, other: &HVector) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        neumaier_sum(self.0.iter().zip(&other.0).map(|(a, b)| a * b))
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }
}

impl From<Vec<f64>> for HVector {
    fn from(coeffs: Vec<f64>) -> Self {
        Self(coeffs)
    }
}

impl Index<usize> for HVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for &HVector {
    type Output = HVector;

    fn add(self, rhs: &HVector) -> HVector {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch in HVector addition");
        HVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &HVector {
    type Output = HVector;

    fn sub(self, rhs: &HVector) -> HVector {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch in HVector subtraction");
        HVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Mul<f64> for &HVector {
    type Output = HVector;

    fn mul(self, rhs: f64) -> HVector {
        self.scaled(rhs)
    }
}

/// `<u, v>`.
pub fn inner(u: &HVector, v: &HVector) -> Result<f64> {
    check_dim(u.dim(), v.dim())?;
    Ok(u.dot(v))
}

/// Closed subspace spanned by selected eigenvectors of `Q`.
///
/// With `tail` set the subspace also contains every mode beyond the
/// truncation level, which is how complements of finite mode sets are
/// represented.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSet {
    modes: Vec<usize>,
    dim: usize,
    tail: bool,
}

impl ModeSet {
    /// Sorted 1-based modes.
    pub fn modes(&self) -> &[usize] {
        &self.modes
    }

    pub fn includes_tail(&self) -> bool {
        self.tail
    }

    fn contains(&self, mode: usize) -> bool {
        self.modes.binary_search(&mode).is_ok()
    }
}

/// Finite-rank subspace given by an orthonormal frame, or the orthogonal
/// complement of one (within the truncated space).
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    vectors: Vec<HVector>,
    dim: usize,
    complement: bool,
}

impl Frame {
    pub fn vectors(&self) -> &[HVector] {
        &self.vectors
    }

    pub fn is_complement(&self) -> bool {
        self.complement
    }

    /// Indices (0-based) where some frame vector is nonzero.
    fn support(&self) -> Vec<usize> {
        (0..self.dim)
            .filter(|&i| self.vectors.iter().any(|v| v[i] != 0.0))
            .collect()
    }

    /// `sum_j <y, f_j> f_j`.
    fn project_onto(&self, y: &HVector) -> HVector {
        let mut out = HVector::zeros(self.dim);
        for f in &self.vectors {
            out.add_scaled(f.dot(y), f);
        }
        out
    }
}

/// A `Q`-invariant closed subspace of `H`.
#[derive(Debug, Clone, PartialEq)]
pub enum Subspace {
    Modes(ModeSet),
    Frame(Frame),
}

impl Subspace {
    /// Span of `e_k` for the given 1-based modes.
    pub fn modes(dim: usize, modes: &[usize]) -> Result<Self> {
        let mut sorted = modes.to_vec();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(invalid("modes", format!("mode {} listed twice", w[0])));
            }
        }
        for &m in &sorted {
            check_mode(m, dim)?;
        }
        Ok(Subspace::Modes(ModeSet {
            modes: sorted,
            dim,
            tail: false,
        }))
    }

    pub fn empty(dim: usize) -> Self {
        Subspace::Modes(ModeSet {
            modes: Vec::new(),
            dim,
            tail: false,
        })
    }

    /// All of `H`, tail included.
    pub fn full(dim: usize) -> Self {
        Subspace::Modes(ModeSet {
            modes: (1..=dim).collect(),
            dim,
            tail: true,
        })
    }

    /// Orthonormal frame, checked for orthonormality and `Q`-invariance.
    pub fn frame(model: &SpectralModel, vectors: Vec<HVector>) -> Result<Self> {
        let dim = model.dim();
        for v in &vectors {
            check_dim(dim, v.dim())?;
        }
        let r = vectors.len();
        let mut gram_defect: f64 = 0.0;
        for i in 0..r {
            for j in 0..r {
                let target = if i == j { 1.0 } else { 0.0 };
                gram_defect = gram_defect.max((vectors[i].dot(&vectors[j]) - target).abs());
            }
        }
        if gram_defect > FRAME_TOL {
            return Err(Error::NotOrthonormal {
                defect: gram_defect,
            });
        }
        let frame = Frame {
            vectors,
            dim,
            complement: false,
        };
        let defect = invariance_defect(model, &frame);
        if defect > FRAME_TOL * model.max_eigenvalue().max(f64::MIN_POSITIVE) {
            return Err(Error::NotInvariant { defect });
        }
        Ok(Subspace::Frame(frame))
    }

    /// Dimension of the ambient truncated space.
    pub fn ambient_dim(&self) -> usize {
        match self {
            Subspace::Modes(s) => s.dim,
            Subspace::Frame(f) => f.dim,
        }
    }

    /// Dimension within the truncated space.
    pub fn truncated_rank(&self) -> usize {
        match self {
            Subspace::Modes(s) => s.modes.len(),
            Subspace::Frame(f) if f.complement => f.dim - f.vectors.len(),
            Subspace::Frame(f) => f.vectors.len(),
        }
    }

    /// Whether the subspace reaches past the truncation level.
    pub fn includes_tail(&self) -> bool {
        match self {
            Subspace::Modes(s) => s.tail,
            // a frame complement contains the tail as well, but its trace
            // cannot be split, so it is reported through `trace_q_on`.
            Subspace::Frame(f) => f.complement,
        }
    }

    /// True when the subspace is finite-dimensional.
    pub fn is_finite(&self) -> bool {
        !self.includes_tail()
    }

    pub fn as_modes(&self) -> Option<&ModeSet> {
        match self {
            Subspace::Modes(s) => Some(s),
            Subspace::Frame(_) => None,
        }
    }

    /// Orthogonal complement in `H`.
    pub fn complement(&self) -> Self {
        match self {
            Subspace::Modes(s) => Subspace::Modes(ModeSet {
                modes: (1..=s.dim).filter(|m| !s.contains(*m)).collect(),
                dim: s.dim,
                tail: !s.tail,
            }),
            Subspace::Frame(f) => Subspace::Frame(Frame {
                vectors: f.vectors.clone(),
                dim: f.dim,
                complement: !f.complement,
            }),
        }
    }

    /// Orthonormal vectors spanning the truncated part of a finite subspace.
    pub fn orthonormal_vectors(&self) -> Result<Vec<HVector>> {
        match self {
            Subspace::Modes(s) if !s.tail => s
                .modes
                .iter()
                .map(|&m| HVector::basis(s.dim, m))
                .collect(),
            Subspace::Frame(f) if !f.complement => Ok(f.vectors.clone()),
            _ => Err(Error::Unsupported(
                "explicit basis of an infinite-dimensional subspace".into(),
            )),
        }
    }

    /// `self ∩ other^⊥`, e.g. `U ∩ U0^⊥` for nested `U0 ⊂ U`.
    ///
    /// Mode sets stay mode sets. Anything involving a frame is
    /// re-orthonormalized and re-checked for invariance.
    pub fn minus(&self, other: &Subspace, model: &SpectralModel) -> Result<Self> {
        check_dim(self.ambient_dim(), other.ambient_dim())?;
        if let (Subspace::Modes(a), Subspace::Modes(b)) = (self, other) {
            return Ok(Subspace::Modes(ModeSet {
                modes: a.modes.iter().copied().filter(|m| !b.contains(*m)).collect(),
                dim: a.dim,
                tail: a.tail && !b.tail,
            }));
        }
        let spanning: Vec<HVector> = self
            .orthonormal_vectors()?
            .iter()
            .map(|v| {
                let pv = other.project(v).expect("dimensions checked above");
                v - &pv
            })
            .collect();
        span(model, &spanning)
    }

    /// Orthogonal projection `Π_S y`.
    pub fn project(&self, y: &HVector) -> Result<HVector> {
        check_dim(self.ambient_dim(), y.dim())?;
        Ok(match self {
            Subspace::Modes(s) => {
                let mut out = HVector::zeros(s.dim);
                for &m in &s.modes {
                    out.0[m - 1] = y.0[m - 1];
                }
                out
            }
            Subspace::Frame(f) if f.complement => y - &f.project_onto(y),
            Subspace::Frame(f) => f.project_onto(y),
        })
    }
}

/// Orthonormal basis of the span of `vectors`, as a subspace.
///
/// Vectors that are multiples of distinct eigenvectors give a mode set;
/// otherwise the span is orthonormalized by Householder QR with a
/// rank threshold of `1e-12` times the largest column norm, and zero
/// directions are dropped.
pub fn span(model: &SpectralModel, vectors: &[HVector]) -> Result<Subspace> {
    let dim = model.dim();
    for v in vectors {
        check_dim(dim, v.dim())?;
    }
    let scale = vectors.iter().map(HVector::norm).fold(0.0, f64::max);
    if scale == 0.0 {
        return Ok(Subspace::empty(dim));
    }
    if let Some(modes) = coordinate_modes(vectors) {
        return Subspace::modes(dim, &modes);
    }
    let mat = DMatrix::from_fn(dim, vectors.len(), |i, j| vectors[j][i]);
    let qr = mat.qr();
    let q = qr.q();
    let r = qr.r();
    let mut frame = Vec::new();
    for j in 0..r.ncols().min(r.nrows()) {
        if r[(j, j)].abs() > 1e-12 * scale {
            frame.push(HVector(q.column(j).iter().copied().collect()));
        }
    }
    Subspace::frame(model, frame)
}

/// Modes of vectors that are each a nonzero multiple of a distinct `e_k`.
fn coordinate_modes(vectors: &[HVector]) -> Option<Vec<usize>> {
    let mut modes = Vec::with_capacity(vectors.len());
    for v in vectors {
        let mut nonzero = v.0.iter().enumerate().filter(|(_, x)| **x != 0.0);
        let (i, _) = nonzero.next()?;
        if nonzero.next().is_some() || modes.contains(&(i + 1)) {
            return None;
        }
        modes.push(i + 1);
    }
    Some(modes)
}

/// `||(I - P) Q P||_F` for the frame projector `P`.
fn invariance_defect(model: &SpectralModel, frame: &Frame) -> f64 {
    let mut total = 0.0;
    for f in &frame.vectors {
        let qf = model.apply(f).expect("frame dimension matches model");
        let residual = &qf - &frame.project_onto(&qf);
        total += residual.norm_sq();
    }
    total.sqrt()
}

/// Nonzero-structure spectrum of `Π_S Q Π_S` restricted to the truncated
/// part of `S`, one entry per dimension of that part.
pub fn spectrum_on(model: &SpectralModel, s: &Subspace) -> Result<Vec<f64>> {
    check_dim(model.dim(), s.ambient_dim())?;
    let lambda = model.eigenvalues();
    match s {
        Subspace::Modes(set) => Ok(set.modes.iter().map(|&m| lambda[m - 1]).collect()),
        Subspace::Frame(f) if !f.complement => {
            let r = f.vectors.len();
            let qf: Vec<HVector> = f
                .vectors
                .iter()
                .map(|v| model.apply(v))
                .collect::<Result<_>>()?;
            let m = DMatrix::from_fn(r, r, |i, j| f.vectors[i].dot(&qf[j]));
            Ok(symmetric_eigenvalues(m))
        }
        Subspace::Frame(f) => {
            let support = f.support();
            let mut spectrum: Vec<f64> = (0..f.dim)
                .filter(|i| support.binary_search(i).is_err())
                .map(|i| lambda[i])
                .collect();
            let s_len = support.len();
            let r = f.vectors.len();
            if s_len > r {
                // orthonormal basis of the complement inside the support block
                let proj = DMatrix::from_fn(s_len, s_len, |a, b| {
                    let id = if a == b { 1.0 } else { 0.0 };
                    id - f
                        .vectors
                        .iter()
                        .map(|v| v[support[a]] * v[support[b]])
                        .sum::<f64>()
                });
                let eig = SymmetricEigen::new(proj);
                let mut order: Vec<usize> = (0..s_len).collect();
                order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
                let basis: Vec<usize> = order.into_iter().take(s_len - r).collect();
                let k = basis.len();
                let block = DMatrix::from_fn(k, k, |a, b| {
                    (0..s_len)
                        .map(|i| {
                            eig.eigenvectors[(i, basis[a])]
                                * lambda[support[i]]
                                * eig.eigenvectors[(i, basis[b])]
                        })
                        .sum::<f64>()
                });
                spectrum.extend(symmetric_eigenvalues(block));
            }
            Ok(spectrum)
        }
    }
}

fn symmetric_eigenvalues(m: DMatrix<f64>) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let sym = (&m + m.transpose()) * 0.5;
    SymmetricEigen::new(sym)
        .eigenvalues
        .iter()
        .map(|v| v.max(0.0))
        .collect()
}

/// `tr(Q Π_S)`.
///
/// With `use_tail`, a subspace that reaches past the truncation level also
/// picks up the model's tail trace. Frame complements cannot split the tail
/// and reject that combination.
pub fn trace_q_on(model: &SpectralModel, s: &Subspace, use_tail: bool) -> Result<f64> {
    check_dim(model.dim(), s.ambient_dim())?;
    match s {
        Subspace::Modes(set) => {
            let lambda = model.eigenvalues();
            let base = neumaier_sum(set.modes.iter().map(|&m| lambda[m - 1]));
            Ok(if set.tail && use_tail {
                base + model.tail_trace()
            } else {
                base
            })
        }
        Subspace::Frame(f) => {
            let inside = neumaier_sum(
                f.vectors
                    .iter()
                    .map(|v| model.quad_form(v, v).expect("frame dimension checked")),
            );
            if !f.complement {
                Ok(inside)
            } else if use_tail {
                Err(Error::Unsupported(
                    "tail trace on the complement of a frame subspace".into(),
                ))
            } else {
                Ok((model.truncated_trace() - inside).max(0.0))
            }
        }
    }
}

/// `||Q Π_S||`, the largest eigenvalue of `Q` on `S`.
pub fn sup_eig_on(model: &SpectralModel, s: &Subspace) -> Result<f64> {
    let spectrum = spectrum_on(model, s)?;
    if spectrum.is_empty() {
        return Err(Error::EmptySubspace("sup_eig_on"));
    }
    Ok(spectrum.into_iter().fold(0.0, f64::max))
}

/// `dim ker(λ - Q Π_S)` with `λ = sup_eig_on(S)`: how many eigenvalues lie
/// within `rel_tol * λ` of the top one.
pub fn top_multiplicity(model: &SpectralModel, s: &Subspace, rel_tol: f64) -> Result<usize> {
    let spectrum = spectrum_on(model, s)?;
    if spectrum.is_empty() {
        return Err(Error::EmptySubspace("top_multiplicity"));
    }
    let top = spectrum.iter().copied().fold(0.0, f64::max);
    Ok(spectrum
        .iter()
        .filter(|v| (top - **v).abs() <= rel_tol * top)
        .count())
}

/// `dim ran(Q Π_S)` for a finite-dimensional `S`.
pub fn rank_on(model: &SpectralModel, s: &Subspace) -> Result<usize> {
    if !s.is_finite() {
        return Err(Error::Unsupported(
            "rank of Q on an infinite-dimensional subspace".into(),
        ));
    }
    let spectrum = spectrum_on(model, s)?;
    let threshold = match s {
        Subspace::Modes(_) => 0.0,
        Subspace::Frame(_) => 1e-12 * model.max_eigenvalue(),
    };
    Ok(spectrum.iter().filter(|v| **v > threshold).count())
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

pub(crate) fn check_mode(mode: usize, dim: usize) -> Result<()> {
    if mode == 0 || mode > dim {
        Err(Error::ModeOutOfRange { mode, dim })
    } else {
        Ok(())
    }
}

/// Compensated summation.
pub(crate) fn neumaier_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}
