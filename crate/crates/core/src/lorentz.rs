//! Minkowski linear algebra of R^{n+1,1}.
//!
//! The conformal n-sphere is modelled projectively: points of R^n become
//! null lines of R^{n+1,1} and hyperspheres become unit spacelike vectors.
//! Coordinates are kept in the basis (o, e_1, ..., e_n, q) where o and q
//! are isotropic with (o,q) = -1 and the e_i are an orthonormal basis of
//! the Euclidean block, so that
//!
//! ```text
//! (v, w) = <v_e, w_e> - v_o w_q - v_q w_o
//! ```
//!
//! and the Euclidean lift of a point x is ξ = o + x + ½(x,x) q.
//!
//! All predicates (isotropy, rank, incidence) use one relative tolerance
//! scaled by the magnitude of the data at hand; the constructions are
//! projective, so absolute thresholds would be meaningless.

use nalgebra::{DMatrix, DVector};
use rand::Rng;

use crate::error::{GeomError, Result};

/// Smallest and largest supported ambient dimension.
pub const MIN_AMBIENT_DIM: usize = 2;
pub const MAX_AMBIENT_DIM: usize = 6;

/// Relative tolerance used by all rank, isotropy and incidence predicates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tol {
    pub eps: f64,
}

impl Default for Tol {
    fn default() -> Self {
        Tol { eps: 1e-9 }
    }
}

impl Tol {
    pub fn new(eps: f64) -> Self {
        assert!(eps > 0.0, "tolerance must be positive");
        Tol { eps }
    }

    /// True if `value` counts as zero relative to `scale`.
    pub fn is_zero(&self, value: f64, scale: f64) -> bool {
        value.abs() <= self.eps * scale
    }
}

/// A vector of R^{n+1,1} in the basis (o; e_1..e_n; q).
#[derive(Debug, Clone, PartialEq)]
pub struct LorentzVec {
    o: f64,
    euclid: Vec<f64>,
    q: f64,
}

fn check_dim(n: usize) -> Result<()> {
    if !(MIN_AMBIENT_DIM..=MAX_AMBIENT_DIM).contains(&n) {
        return Err(GeomError::UnsupportedDimension(n));
    }
    Ok(())
}

fn check_finite(values: &[f64]) -> Result<()> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(GeomError::NonFinite)
    }
}

impl LorentzVec {
    /// Builds a vector from its (o, euclid, q) coefficients.
    pub fn new(o: f64, euclid: Vec<f64>, q: f64) -> Result<Self> {
        check_dim(euclid.len())?;
        check_finite(&[o, q])?;
        check_finite(&euclid)?;
        Ok(LorentzVec { o, euclid, q })
    }

    /// The isotropic basis vector o (the lift of the origin).
    pub fn basis_o(n: usize) -> Self {
        LorentzVec {
            o: 1.0,
            euclid: vec![0.0; n],
            q: 0.0,
        }
    }

    /// The isotropic basis vector q (the point at infinity).
    pub fn basis_q(n: usize) -> Self {
        LorentzVec {
            o: 0.0,
            euclid: vec![0.0; n],
            q: 1.0,
        }
    }

    /// The i-th Euclidean basis vector (0-indexed).
    pub fn basis_e(n: usize, i: usize) -> Self {
        assert!(i < n);
        let mut euclid = vec![0.0; n];
        euclid[i] = 1.0;
        LorentzVec {
            o: 0.0,
            euclid,
            q: 0.0,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.euclid.len()
    }

    pub fn o_coeff(&self) -> f64 {
        self.o
    }

    pub fn q_coeff(&self) -> f64 {
        self.q
    }

    pub fn euclid(&self) -> &[f64] {
        &self.euclid
    }

    /// Full coordinate vector (o, e_1..e_n, q), length n + 2.
    pub fn coords(&self) -> DVector<f64> {
        let n = self.euclid.len();
        let mut c = DVector::zeros(n + 2);
        c[0] = self.o;
        for (i, &x) in self.euclid.iter().enumerate() {
            c[1 + i] = x;
        }
        c[n + 1] = self.q;
        c
    }

    /// Inverse of [`LorentzVec::coords`].
    pub fn from_coords(c: &DVector<f64>) -> Result<Self> {
        let len = c.len();
        if len < MIN_AMBIENT_DIM + 2 {
            return Err(GeomError::UnsupportedDimension(len.saturating_sub(2)));
        }
        LorentzVec::new(c[0], c.as_slice()[1..len - 1].to_vec(), c[len - 1])
    }

    /// Euclidean norm of the coordinate vector; the scale used by
    /// relative predicates.
    pub fn coord_norm(&self) -> f64 {
        let mut s = self.o * self.o + self.q * self.q;
        for &x in &self.euclid {
            s += x * x;
        }
        s.sqrt()
    }

    /// Checked inner product; fails on an ambient dimension mismatch.
    pub fn try_inner(&self, other: &LorentzVec) -> Result<f64> {
        if self.euclid.len() != other.euclid.len() {
            return Err(GeomError::DimensionMismatch(
                self.euclid.len(),
                other.euclid.len(),
            ));
        }
        Ok(self.inner(other))
    }

    /// The Minkowski inner product (v, w) = <v_e, w_e> - v_o w_q - v_q w_o.
    ///
    /// Panics on a dimension mismatch; use [`LorentzVec::try_inner`] when
    /// the dimensions are not known to agree.
    pub fn inner(&self, other: &LorentzVec) -> f64 {
        assert_eq!(
            self.euclid.len(),
            other.euclid.len(),
            "ambient dimension mismatch"
        );
        let mut dot = 0.0;
        for (a, b) in self.euclid.iter().zip(&other.euclid) {
            dot += a * b;
        }
        dot - self.o * other.q - self.q * other.o
    }

    pub fn scale(&self, factor: f64) -> LorentzVec {
        LorentzVec {
            o: self.o * factor,
            euclid: self.euclid.iter().map(|x| x * factor).collect(),
            q: self.q * factor,
        }
    }

    pub fn add(&self, other: &LorentzVec) -> LorentzVec {
        assert_eq!(self.euclid.len(), other.euclid.len());
        LorentzVec {
            o: self.o + other.o,
            euclid: self
                .euclid
                .iter()
                .zip(&other.euclid)
                .map(|(a, b)| a + b)
                .collect(),
            q: self.q + other.q,
        }
    }

    pub fn sub(&self, other: &LorentzVec) -> LorentzVec {
        self.add(&other.scale(-1.0))
    }

    /// v + factor * w, the workhorse of the reduction formulas.
    pub fn add_scaled(&self, factor: f64, other: &LorentzVec) -> LorentzVec {
        self.add(&other.scale(factor))
    }

    /// True if (v,v) = 0 within tolerance, relative to |v|².
    pub fn is_isotropic(&self, tol: &Tol) -> bool {
        let n2 = self.coord_norm();
        tol.is_zero(self.inner(self), n2 * n2)
    }

    /// Gauge-normalized representative of the projective class:
    /// (v,q) = -1 when possible, otherwise the largest coefficient
    /// rescaled to +1. Reproducible output for files.
    pub fn normalized(&self, tol: &Tol) -> LorentzVec {
        let scale = self.coord_norm();
        if !tol.is_zero(self.o, scale) {
            return self.scale(1.0 / self.o);
        }
        let mut lead = self.o;
        for &x in &self.euclid {
            if x.abs() > lead.abs() {
                lead = x;
            }
        }
        if self.q.abs() > lead.abs() {
            lead = self.q;
        }
        if lead == 0.0 {
            self.clone()
        } else {
            self.scale(1.0 / lead)
        }
    }
}

/// The Euclidean lift ξ = o + x + ½(x,x) q, a null vector with (ξ,q) = -1.
pub fn lift(x: &[f64]) -> Result<LorentzVec> {
    check_dim(x.len())?;
    check_finite(x)?;
    let half_sq = 0.5 * x.iter().map(|v| v * v).sum::<f64>();
    LorentzVec::new(1.0, x.to_vec(), half_sq)
}

/// Inverse of [`lift`] on its image: rescale to (v,q) = -1 and read off
/// the Euclidean part. The point at infinity ⟨q⟩ has no representative.
///
/// The infinity test compares the o-coefficient against the Euclidean
/// block alone: the represented point is x̃/α, so the cut happens at
/// |x| ≈ 1/eps, far beyond the exact-roundtrip range.
pub fn unlift(v: &LorentzVec, tol: &Tol) -> Result<Vec<f64>> {
    if !v.is_isotropic(tol) {
        return Err(GeomError::InputNotIncident("vector is not isotropic"));
    }
    let euclid_norm = v.euclid.iter().map(|x| x * x).sum::<f64>().sqrt();
    if v.o.abs() <= tol.eps * euclid_norm || v.o == 0.0 {
        return Err(GeomError::PointAtInfinity);
    }
    Ok(v.euclid.iter().map(|x| x / v.o).collect())
}

/// Rank and inertia of a Gram matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub rank: usize,
    pub pos: usize,
    pub neg: usize,
}

/// Gram matrix of a family of vectors under the Minkowski product.
pub fn gram_matrix(vs: &[LorentzVec]) -> DMatrix<f64> {
    let k = vs.len();
    DMatrix::from_fn(k, k, |i, j| vs[i].inner(&vs[j]))
}

/// Rank and inertia of the Gram matrix of `vs`.
///
/// Eigenvalues with |λ| ≤ tol·max|λ| count as zero. Inertia is computed
/// by symmetric eigendecomposition; dimensions never exceed n + 2 ≤ 8,
/// so robustness wins over speed.
pub fn gram_signature(vs: &[LorentzVec], tol: &Tol) -> Inertia {
    if vs.is_empty() {
        return Inertia {
            rank: 0,
            pos: 0,
            neg: 0,
        };
    }
    inertia_of(&gram_matrix(vs), tol)
}

/// Inertia of a symmetric matrix with the shared zero-eigenvalue rule.
pub fn inertia_of(g: &DMatrix<f64>, tol: &Tol) -> Inertia {
    let eig = g.clone().symmetric_eigen();
    let max_abs = eig.eigenvalues.iter().fold(0.0f64, |m, &l| m.max(l.abs()));
    let mut pos = 0;
    let mut neg = 0;
    for &l in eig.eigenvalues.iter() {
        if !tol.is_zero(l, max_abs) {
            if l > 0.0 {
                pos += 1;
            } else {
                neg += 1;
            }
        }
    }
    Inertia {
        rank: pos + neg,
        pos,
        neg,
    }
}

/// Residual of the claim rank(Gram(vs)) ≤ target: the magnitude of the
/// (target+1)-th largest eigenvalue relative to the largest. Zero means
/// the rank condition holds exactly.
pub fn rank_residual(vs: &[LorentzVec], target: usize) -> f64 {
    if vs.len() <= target {
        return 0.0;
    }
    let eig = gram_matrix(vs).symmetric_eigen();
    let mut mags: Vec<f64> = eig.eigenvalues.iter().map(|l| l.abs()).collect();
    mags.sort_by(|a, b| b.partial_cmp(a).unwrap());
    if mags[0] == 0.0 {
        0.0
    } else {
        mags[target] / mags[0]
    }
}

/// The metric matrix J of the basis (o, e_1..e_n, q).
pub fn metric_matrix(n: usize) -> DMatrix<f64> {
    let mut j = DMatrix::zeros(n + 2, n + 2);
    for i in 1..=n {
        j[(i, i)] = 1.0;
    }
    j[(0, n + 1)] = -1.0;
    j[(n + 1, 0)] = -1.0;
    j
}

/// Matrix whose columns are the coordinates of `vs`.
fn coord_matrix(vs: &[LorentzVec]) -> DMatrix<f64> {
    let n = vs[0].ambient_dim();
    DMatrix::from_fn(n + 2, vs.len(), |i, j| vs[j].coords()[i])
}

/// Orthonormal basis (Euclidean sense) of the kernel of `a`, via the
/// eigendecomposition of aᵀa. Matrices here are at most 8×8.
fn euclidean_kernel(a: &DMatrix<f64>, tol: &Tol) -> Vec<DVector<f64>> {
    let ata = a.transpose() * a;
    let eig = ata.symmetric_eigen();
    let max = eig.eigenvalues.iter().fold(0.0f64, |m, &l| m.max(l.abs()));
    let mut out = Vec::new();
    for (i, &l) in eig.eigenvalues.iter().enumerate() {
        if tol.is_zero(l, max) || max == 0.0 {
            out.push(eig.eigenvectors.column(i).into_owned());
        }
    }
    out
}

/// Rank of a coordinate matrix in the Euclidean sense.
fn coord_rank(a: &DMatrix<f64>, tol: &Tol) -> usize {
    let ata = a.transpose() * a;
    let eig = ata.symmetric_eigen();
    let max = eig.eigenvalues.iter().fold(0.0f64, |m, &l| m.max(l.abs()));
    if max == 0.0 {
        return 0;
    }
    eig.eigenvalues
        .iter()
        .filter(|&&l| !tol.is_zero(l, max))
        .count()
}

/// Basis of the metric orthogonal complement of span(vs) in R^{n+1,1}.
///
/// The complement of the empty set is the full space. Fails on a
/// linearly dependent spanning set.
pub fn orthogonal_complement(vs: &[LorentzVec], n: usize, tol: &Tol) -> Result<Vec<LorentzVec>> {
    check_dim(n)?;
    if vs.is_empty() {
        let mut basis = vec![LorentzVec::basis_o(n)];
        for i in 0..n {
            basis.push(LorentzVec::basis_e(n, i));
        }
        basis.push(LorentzVec::basis_q(n));
        return Ok(basis);
    }
    for v in vs {
        if v.ambient_dim() != n {
            return Err(GeomError::DimensionMismatch(v.ambient_dim(), n));
        }
    }
    let m = coord_matrix(vs);
    if coord_rank(&m, tol) < vs.len() {
        return Err(GeomError::DependentBasis);
    }
    // w ⊥ span(vs)  ⟺  (J m)ᵀ w = 0
    let jm = metric_matrix(n) * &m;
    let kernel = euclidean_kernel(&jm.transpose(), tol);
    kernel.iter().map(LorentzVec::from_coords).collect()
}

/// A linear subspace of R^{n+1,1} with nondegenerate induced metric,
/// representing a (k-2)-sphere when its signature is (k-1, 1).
#[derive(Debug, Clone)]
pub struct SphereSubspace {
    basis: Vec<LorentzVec>,
    gram: DMatrix<f64>,
    inertia: Inertia,
}

impl SphereSubspace {
    /// Wraps a basis; fails if the Gram matrix is rank deficient (either
    /// a dependent set or a degenerate induced metric).
    pub fn new(basis: Vec<LorentzVec>, tol: &Tol) -> Result<Self> {
        if basis.is_empty() {
            return Err(GeomError::DependentBasis);
        }
        let n = basis[0].ambient_dim();
        for v in &basis {
            if v.ambient_dim() != n {
                return Err(GeomError::DimensionMismatch(v.ambient_dim(), n));
            }
        }
        let gram = gram_matrix(&basis);
        let inertia = inertia_of(&gram, tol);
        if inertia.rank < basis.len() {
            return Err(GeomError::DependentBasis);
        }
        Ok(SphereSubspace {
            basis,
            gram,
            inertia,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis[0].ambient_dim()
    }

    pub fn basis(&self) -> &[LorentzVec] {
        &self.basis
    }

    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }

    pub fn inertia(&self) -> Inertia {
        self.inertia
    }

    /// True when the signature is (dim-1, 1), i.e. the subspace carries a
    /// real (dim-2)-sphere.
    pub fn is_sphere(&self) -> bool {
        self.inertia.neg == 1 && self.inertia.pos == self.basis.len() - 1
    }

    /// Relative distance of `v` from the span (Euclidean least squares on
    /// coordinates). Zero means `v` lies in the subspace.
    pub fn incidence_residual(&self, v: &LorentzVec) -> f64 {
        let m = coord_matrix(&self.basis);
        let target = v.coords();
        let mtm = m.transpose() * &m;
        let rhs = m.transpose() * &target;
        let sol = mtm
            .lu()
            .solve(&rhs)
            .unwrap_or_else(|| DVector::zeros(rhs.len()));
        let rej = &target - m * sol;
        let scale = v.coord_norm();
        if scale == 0.0 {
            0.0
        } else {
            rej.norm() / scale
        }
    }

    pub fn contains(&self, v: &LorentzVec, tol: &Tol) -> bool {
        self.incidence_residual(v) <= tol.eps
    }

    /// The metric orthogonal complement, as a subspace.
    pub fn orthogonal_complement(&self, tol: &Tol) -> Result<SphereSubspace> {
        let basis = orthogonal_complement(&self.basis, self.ambient_dim(), tol)?;
        SphereSubspace::new(basis, tol)
    }

    /// True if both subspaces have the same span.
    pub fn same_subspace(&self, other: &SphereSubspace, tol: &Tol) -> bool {
        self.dim() == other.dim()
            && other.basis.iter().all(|v| self.contains(v, tol))
            && self.basis.iter().all(|v| other.contains(v, tol))
    }

    /// An orthonormal basis in the metric sense: vectors with (v,v) = ±1,
    /// mutually orthogonal, positive ones first.
    pub fn orthonormal_basis(&self) -> (Vec<LorentzVec>, Vec<LorentzVec>) {
        let eig = self.gram.clone().symmetric_eigen();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for i in 0..self.basis.len() {
            let lambda = eig.eigenvalues[i];
            let col = eig.eigenvectors.column(i);
            let mut v = self.basis[0].scale(0.0);
            for (j, b) in self.basis.iter().enumerate() {
                v = v.add_scaled(col[j], b);
            }
            if lambda > 0.0 {
                pos.push(v.scale(1.0 / lambda.sqrt()));
            } else {
                neg.push(v.scale(1.0 / (-lambda).sqrt()));
            }
        }
        (pos, neg)
    }
}

/// The two null lines of a 2-dimensional subspace of signature (1,1),
/// spanned by `a` and `b`. Each returned vector is isotropic.
pub fn null_directions_2d(
    a: &LorentzVec,
    b: &LorentzVec,
    tol: &Tol,
) -> Result<(LorentzVec, LorentzVec)> {
    let sub = SphereSubspace::new(vec![a.clone(), b.clone()], tol).map_err(|_| {
        let i = gram_signature(&[a.clone(), b.clone()], tol);
        GeomError::DegenerateSignature {
            pos: i.pos,
            neg: i.neg,
            rank: i.rank,
        }
    })?;
    let inertia = sub.inertia();
    if inertia.pos != 1 || inertia.neg != 1 {
        return Err(GeomError::DegenerateSignature {
            pos: inertia.pos,
            neg: inertia.neg,
            rank: inertia.rank,
        });
    }
    let (pos, neg) = sub.orthonormal_basis();
    let u = &pos[0];
    let w = &neg[0];
    Ok((u.add(w), u.sub(w)))
}

/// A linear isometry of R^{n+1,1} (a Möbius transformation in the model).
#[derive(Debug, Clone)]
pub struct LorentzMap {
    n: usize,
    matrix: DMatrix<f64>,
}

impl LorentzMap {
    pub fn identity(n: usize) -> Self {
        LorentzMap {
            n,
            matrix: DMatrix::identity(n + 2, n + 2),
        }
    }

    pub fn from_matrix(n: usize, matrix: DMatrix<f64>) -> Result<Self> {
        if matrix.nrows() != n + 2 || matrix.ncols() != n + 2 {
            return Err(GeomError::DimensionMismatch(matrix.nrows(), n + 2));
        }
        Ok(LorentzMap { n, matrix })
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// A random metric-preserving map: a rotation of the Euclidean block,
    /// a boost in the (o,q) plane, and a rotation mixing the blocks in the
    /// spacelike plane spanned by e_1 and (o - q)/√2. The boost magnitude
    /// is kept moderate so that random test points stay far from ∞.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let dim = n + 2;

        // Euclidean block rotation from composed Givens rotations.
        let mut rot = DMatrix::identity(dim, dim);
        for i in 1..=n {
            for j in (i + 1)..=n {
                let phi: f64 = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
                let mut g = DMatrix::identity(dim, dim);
                g[(i, i)] = phi.cos();
                g[(j, j)] = phi.cos();
                g[(i, j)] = -phi.sin();
                g[(j, i)] = phi.sin();
                rot = g * rot;
            }
        }

        // Boost o ↦ λo, q ↦ q/λ preserves (o,q) = -1.
        let s: f64 = rng.random_range(-0.8..0.8);
        let lambda = s.exp();
        let mut boost = DMatrix::identity(dim, dim);
        boost[(0, 0)] = lambda;
        boost[(dim - 1, dim - 1)] = 1.0 / lambda;

        // Rotation in the spacelike plane span{e_1, (o-q)/√2}: mixes the
        // isotropic block with the Euclidean one (an inversion-like move).
        let phi: f64 = rng.random_range(-1.0..1.0);
        let mut u = DVector::zeros(dim);
        u[1] = 1.0;
        let mut w = DVector::zeros(dim);
        w[0] = 1.0 / std::f64::consts::SQRT_2;
        w[dim - 1] = -1.0 / std::f64::consts::SQRT_2;
        let j = metric_matrix(n);
        let uj = (&j * &u).transpose();
        let wj = (&j * &w).transpose();
        let mix = DMatrix::identity(dim, dim)
            + (&u * &uj + &w * &wj) * (phi.cos() - 1.0)
            + (&w * &uj - &u * &wj) * phi.sin();

        LorentzMap {
            n,
            matrix: rot.clone() * mix * boost * rot,
        }
    }

    pub fn apply(&self, v: &LorentzVec) -> LorentzVec {
        let c = &self.matrix * v.coords();
        LorentzVec::from_coords(&c).expect("isometry preserves finiteness")
    }

    /// Möbius action on an ambient point: lift, map, unlift. Fails with
    /// PointAtInfinity when the image is ⟨q⟩.
    pub fn apply_point(&self, p: &[f64], tol: &Tol) -> Result<Vec<f64>> {
        unlift(&self.apply(&lift(p)?), tol)
    }

    /// ‖QᵀJQ - J‖ / ‖J‖, for verifying metric preservation.
    pub fn metric_residual(&self) -> f64 {
        let j = metric_matrix(self.n);
        let d = self.matrix.transpose() * &j * &self.matrix - &j;
        d.norm() / j.norm()
    }
}

/// Angle between the lines spanned by two coordinate vectors (Euclidean,
/// projective: invariant under rescaling of either argument).
pub fn projective_angle(a: &LorentzVec, b: &LorentzVec) -> f64 {
    let ca = a.coords();
    let cb = b.coords();
    let na = ca.norm();
    let nb = cb.norm();
    if na == 0.0 || nb == 0.0 {
        return 0.0;
    }
    let dot = ca.dot(&cb);
    let rej = (&cb - &ca * (dot / (na * na))).norm();
    rej.atan2(dot.abs() / na)
}
