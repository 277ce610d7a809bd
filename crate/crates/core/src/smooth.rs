//! Sampled smooth curves: parallel normal fields, enveloped sphere
//! congruences, algebraic dimension reduction and the permutability
//! algebra of iterated reductions.
//!
//! A unit normal field n along a curve x lifts to t = n + (n,x) q. A
//! parallel field (n' ∥ x') determines, for a fixed sphere e with
//! (e, ξ) ≠ 0, the enveloped congruence
//!
//! ```text
//! s = t + (1 - (e,t))/(e,ξ) · ξ,     ξ̂ = s - e,
//! ```
//!
//! whose contact points ξ̂ are a Ribaucour transform of x lying on e.
//! Iterating with several mutually orthogonal spheres commutes; the
//! closed form of the double transform and its null-space formulation
//! are both implemented and cross-validate each other.

use crate::discrete::DiscreteCurve;
use crate::error::{GeomError, Result};
use crate::incidence::SphereVec;
use crate::lorentz::{lift, unlift, LorentzVec, Tol};
use nalgebra::{DMatrix, DVector};

/// Default bound on frame residuals (orthogonality of normals to discrete
/// tangents, parallelism of supplied fields). Discrete tangents carry
/// O(h²) error, so this is looser than the geometric tolerance and can be
/// overridden per call.
pub const DEFAULT_FRAME_TOL: f64 = 1e-6;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn normalize(a: &[f64]) -> Option<Vec<f64>> {
    let n = norm(a);
    if n == 0.0 {
        None
    } else {
        Some(a.iter().map(|x| x / n).collect())
    }
}

/// Unit discrete tangents: centered differences at interior samples,
/// second-order one-sided differences at the ends (plain differences when
/// only two samples exist).
pub fn discrete_tangents(samples: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let n = samples.len();
    if n < 2 {
        return Err(GeomError::InvalidInput("need at least 2 samples".into()));
    }
    let dim = samples[0].len();
    let combine = |terms: &[(f64, usize)]| -> Vec<f64> {
        (0..dim)
            .map(|i| terms.iter().map(|&(c, k)| c * samples[k][i]).sum())
            .collect()
    };
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let d = if k == 0 {
            if n == 2 {
                combine(&[(-1.0, 0), (1.0, 1)])
            } else {
                combine(&[(-3.0, 0), (4.0, 1), (-1.0, 2)])
            }
        } else if k == n - 1 {
            if n == 2 {
                combine(&[(-1.0, 0), (1.0, 1)])
            } else {
                combine(&[(3.0, n - 1), (-4.0, n - 2), (1.0, n - 3)])
            }
        } else {
            combine(&[(-1.0, k - 1), (1.0, k + 1)])
        };
        out.push(normalize(&d).ok_or(GeomError::CoincidentPoints)?);
    }
    Ok(out)
}

/// A sampled curve with a unit normal field orthogonal to its discrete
/// tangents.
#[derive(Debug, Clone)]
pub struct FramedCurve {
    curve: DiscreteCurve,
    normals: Vec<Vec<f64>>,
    tangents: Vec<Vec<f64>>,
}

impl FramedCurve {
    /// Validates unit length of normals and orthogonality to the discrete
    /// tangents within `frame_tol`.
    pub fn new(
        samples: Vec<Vec<f64>>,
        normals: Vec<Vec<f64>>,
        frame_tol: f64,
        tol: &Tol,
    ) -> Result<Self> {
        let curve = DiscreteCurve::new(samples, tol)?;
        if normals.len() != curve.len() {
            return Err(GeomError::LengthMismatch(normals.len(), curve.len()));
        }
        let tangents = discrete_tangents(curve.points())?;
        for (k, n) in normals.iter().enumerate() {
            if n.len() != curve.ambient_dim() {
                return Err(GeomError::DimensionMismatch(n.len(), curve.ambient_dim()));
            }
            let len = norm(n);
            if (len - 1.0).abs() > 1e-9 {
                return Err(GeomError::NonUnitNormal(len));
            }
            let ortho = dot(n, &tangents[k]).abs();
            if ortho > frame_tol {
                return Err(GeomError::NonParallelFrame { residual: ortho });
            }
        }
        Ok(FramedCurve {
            curve,
            normals,
            tangents,
        })
    }

    /// For internally derived fields (induced normals) whose orthogonality
    /// defect against discrete tangents is understood discretization
    /// error: validates lengths, dimensions and unit norms only.
    pub(crate) fn new_trusted(
        samples: Vec<Vec<f64>>,
        normals: Vec<Vec<f64>>,
        tol: &Tol,
    ) -> Result<Self> {
        let curve = DiscreteCurve::new(samples, tol)?;
        if normals.len() != curve.len() {
            return Err(GeomError::LengthMismatch(normals.len(), curve.len()));
        }
        let tangents = discrete_tangents(curve.points())?;
        for n in &normals {
            if n.len() != curve.ambient_dim() {
                return Err(GeomError::DimensionMismatch(n.len(), curve.ambient_dim()));
            }
            let len = norm(n);
            if (len - 1.0).abs() > 1e-9 {
                return Err(GeomError::NonUnitNormal(len));
            }
        }
        Ok(FramedCurve {
            curve,
            normals,
            tangents,
        })
    }

    pub fn curve(&self) -> &DiscreteCurve {
        &self.curve
    }

    pub fn samples(&self) -> &[Vec<f64>] {
        self.curve.points()
    }

    pub fn normals(&self) -> &[Vec<f64>] {
        &self.normals
    }

    pub fn tangents(&self) -> &[Vec<f64>] {
        &self.tangents
    }

    pub fn len(&self) -> usize {
        self.curve.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curve.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.curve.ambient_dim()
    }

    /// Max deviation (Euclidean gap between unit vectors, ≈ angle) of the
    /// stored field from the discrete parallel transport of its first
    /// normal: zero for transported fields, O(h²) for sampled analytic
    /// parallel fields.
    pub fn parallel_residual(&self, tol: &Tol) -> Result<f64> {
        let transported = transport_normal(self.samples(), &self.normals[0], 1.0, tol)?;
        let mut worst = 0.0f64;
        for (a, b) in self.normals.iter().zip(transported.normals()) {
            let gap = a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt();
            worst = worst.max(gap);
        }
        Ok(worst)
    }
}

/// The rotation in span{a, b} taking unit a to unit b, applied to x;
/// identity on the orthogonal complement. Valid in any dimension.
fn minimal_rotation_apply(a: &[f64], b: &[f64], x: &[f64]) -> Option<Vec<f64>> {
    let c = dot(a, b);
    if 1.0 + c <= 1e-12 {
        return None; // antiparallel tangents: rotation undefined
    }
    let xa = dot(x, a);
    let xb = dot(x, b);
    let f = (xa + xb) / (1.0 + c);
    Some(
        x.iter()
            .enumerate()
            .map(|(i, &v)| v - f * (a[i] + b[i]) + 2.0 * xa * b[i])
            .collect(),
    )
}

/// Discrete parallel transport of an initial unit normal along sampled
/// points. Each step predicts by the minimal rotation taking the previous
/// tangent to the next (exact for circles and lines), then enforces the
/// frame invariants by projecting onto the tangent complement and
/// renormalizing. Globally second-order accurate against the smooth
/// parallel field; a plain per-step projection would pick up an O(h)
/// twist on curves with torsion.
pub fn transport_normal(
    samples: &[Vec<f64>],
    n0: &[f64],
    frame_tol: f64,
    tol: &Tol,
) -> Result<FramedCurve> {
    let curve = DiscreteCurve::new(samples.to_vec(), tol)?;
    let tangents = discrete_tangents(curve.points())?;
    if n0.len() != curve.ambient_dim() {
        return Err(GeomError::DimensionMismatch(n0.len(), curve.ambient_dim()));
    }
    let len = norm(n0);
    if (len - 1.0).abs() > 1e-9 {
        return Err(GeomError::NonUnitNormal(len));
    }
    let ortho = dot(n0, &tangents[0]).abs();
    if ortho > frame_tol {
        return Err(GeomError::NonParallelFrame { residual: ortho });
    }

    let mut normals = Vec::with_capacity(curve.len());
    normals.push(n0.to_vec());
    for k in 1..curve.len() {
        let rotated = minimal_rotation_apply(&tangents[k - 1], &tangents[k], &normals[k - 1])
            .ok_or_else(|| {
                GeomError::InvalidInput(format!(
                    "transport degenerates at sample {k}: tangents antiparallel"
                ))
            })?;
        let t = &tangents[k];
        let p = dot(&rotated, t);
        let projected: Vec<f64> = rotated.iter().zip(t.iter()).map(|(a, b)| a - p * b).collect();
        let next = normalize(&projected).filter(|_| norm(&projected) > 1e-3).ok_or_else(|| {
            GeomError::InvalidInput(format!(
                "transport degenerates at sample {k}: normal nearly parallel to tangent"
            ))
        })?;
        normals.push(next);
    }
    FramedCurve::new(curve.points().to_vec(), normals, frame_tol.max(1e-12), tol)
}

/// The plane lift t = n + (n, x) q of a unit normal at a point (a plane
/// through x with normal n, as a vector of S^{n,1}).
pub fn normal_lift(normal: &[f64], at: &[f64]) -> Result<LorentzVec> {
    let len = norm(normal);
    if (len - 1.0).abs() > 1e-9 {
        return Err(GeomError::NonUnitNormal(len));
    }
    LorentzVec::new(0.0, normal.to_vec(), dot(normal, at))
}

/// Unit normal and plane offset of a plane lift (inverse of
/// [`normal_lift`] up to the choice of support point).
pub fn decode_normal_lift(t: &LorentzVec) -> (Vec<f64>, f64) {
    (t.euclid().to_vec(), t.q_coeff())
}

/// The hypersphere through `xhat_pt` touching the point `x_pt` with unit
/// normal `nrm`: s = t + ξ/r with 1/r = -(ξ̂,t)/(ξ̂,ξ). Unit spacelike by
/// construction since (t, ξ) = 0.
pub fn enveloped_sphere(x_pt: &[f64], nrm: &[f64], xhat_pt: &[f64], tol: &Tol) -> Result<SphereVec> {
    let xi = lift(x_pt)?;
    let xi_hat = lift(xhat_pt)?;
    let t = normal_lift(nrm, x_pt)?;
    let denom = xi_hat.inner(&xi);
    let scale = xi_hat.coord_norm() * xi.coord_norm();
    if denom.abs() <= tol.eps * scale {
        return Err(GeomError::CoincidentPoints);
    }
    let inv_r = -xi_hat.inner(&t) / denom;
    let s = t.add_scaled(inv_r, &xi);
    SphereVec::new(s, tol)
}

/// The normal of the second envelope induced by a touching sphere:
/// t̂ = s - ξ̂/r is the unique plane lift congruent to s modulo ξ̂
/// (zero o-coefficient). For a plane (s, q) = 0 this is s itself.
pub fn induced_normal(s: &SphereVec, xhat_pt: &[f64], tol: &Tol) -> Result<LorentzVec> {
    let xi_hat = lift(xhat_pt)?;
    let sv = s.as_lorentz();
    let residual = sv.inner(&xi_hat).abs() / (sv.coord_norm() * xi_hat.coord_norm());
    if residual > tol.eps {
        return Err(GeomError::InputNotIncident("point not on sphere"));
    }
    Ok(sv.add_scaled(-sv.o_coeff(), &xi_hat))
}

/// A hypersphere per curve sample, each touching the curve there.
#[derive(Debug, Clone)]
pub struct SphereCongruence {
    spheres: Vec<SphereVec>,
}

impl SphereCongruence {
    pub fn new(spheres: Vec<SphereVec>) -> Self {
        SphereCongruence { spheres }
    }

    pub fn spheres(&self) -> &[SphereVec] {
        &self.spheres
    }

    pub fn len(&self) -> usize {
        self.spheres.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spheres.is_empty()
    }

    /// Max contact residual |(s_k, ξ_k)| over the samples.
    pub fn contact_residual(&self, samples: &[Vec<f64>]) -> Result<f64> {
        let mut worst = 0.0f64;
        for (s, p) in self.spheres.iter().zip(samples) {
            worst = worst.max(s.point_residual(p)?);
        }
        Ok(worst)
    }
}

/// Spherical Ribaucour transform of a framed curve: per sample,
/// s = t + (1-(e,t))/(e,ξ) ξ and ξ̂ = s - e. The normal field must be
/// parallel (checked against its own discrete transport within
/// `frame_tol`); the curve must not meet e.
pub fn reduce_smooth(
    fc: &FramedCurve,
    e: &SphereVec,
    frame_tol: f64,
    tol: &Tol,
) -> Result<(DiscreteCurve, SphereCongruence)> {
    if fc.ambient_dim() != e.ambient_dim() {
        return Err(GeomError::DimensionMismatch(fc.ambient_dim(), e.ambient_dim()));
    }
    let residual = fc.parallel_residual(tol)?;
    if residual > frame_tol {
        return Err(GeomError::NonParallelFrame { residual });
    }
    let ev = e.as_lorentz();
    let mut points = Vec::with_capacity(fc.len());
    let mut spheres = Vec::with_capacity(fc.len());
    for k in 0..fc.len() {
        let xi = lift(&fc.samples()[k])?;
        let denom = ev.inner(&xi);
        if denom.abs() <= tol.eps * ev.coord_norm() * xi.coord_norm() {
            return Err(GeomError::CurveMeetsSphere { index: k });
        }
        let t = normal_lift(&fc.normals()[k], &fc.samples()[k])?;
        let s = t.add_scaled((1.0 - ev.inner(&t)) / denom, &xi);
        let xi_hat = s.sub(ev);
        points.push(unlift(&xi_hat, tol).map_err(|err| err.at_step(k))?);
        spheres.push(SphereVec::new(s, tol).map_err(|err| err.at_step(k))?);
    }
    Ok((
        DiscreteCurve::new_relaxed(points)?,
        SphereCongruence::new(spheres),
    ))
}

fn inner_scale(a: &LorentzVec, b: &LorentzVec) -> f64 {
    a.coord_norm() * b.coord_norm()
}

/// Closed form of the double reduction ξ_ij from the lift ξ, two normal
/// lifts t_i, t_j and two orthogonal spheres e_i, e_j. Symmetric in i, j
/// up to scale; orthogonal to both spheres.
pub fn permij_closed_form(
    xi: &LorentzVec,
    t_i: &LorentzVec,
    t_j: &LorentzVec,
    e_i: &SphereVec,
    e_j: &SphereVec,
    tol: &Tol,
) -> Result<LorentzVec> {
    let ei = e_i.as_lorentz();
    let ej = e_j.as_lorentz();
    let ei_xi = ei.inner(xi);
    let ej_xi = ej.inner(xi);
    let ei_ti = ei.inner(t_i);
    let ej_tj = ej.inner(t_j);
    let ei_tj = ei.inner(t_j);
    let ej_ti = ej.inner(t_i);

    let denom = (1.0 - ei_ti) * ej_xi + ej_ti * ei_xi;
    let denom_swapped = (1.0 - ej_tj) * ei_xi + ei_tj * ej_xi;
    let scale = inner_scale(ei, xi).max(inner_scale(ej, xi));
    if denom.abs() <= tol.eps * scale || denom_swapped.abs() <= tol.eps * scale {
        return Err(GeomError::ZeroDenominator);
    }

    let coeff_i = ((1.0 - ej_tj) * ei_xi + ei_tj * ej_xi) / denom;
    let coeff_xi = ((1.0 - ei_ti) * (1.0 - ej_tj) - ei_tj * ej_ti) / denom;
    Ok(t_j
        .sub(ej)
        .add_scaled(coeff_i, &t_i.sub(ei))
        .add_scaled(coeff_xi, xi))
}

/// Coefficients (a_0, a_1, ..., a_k) of an iterated reduction
/// ξ̂ = a_0 ξ + Σ a_l (t_l - e_l) with (ξ̂, e_i) = 0 for all i, found as
/// the null space of the k×(k+1) linear system. The spheres must be
/// mutually orthogonal; dependent equations are an error, not a choice.
///
/// Normalization: a_0 = 1 whenever a_0 is non-negligible, otherwise unit
/// norm with the first non-negligible coefficient positive.
pub fn bquad_nullspace(
    xi: &LorentzVec,
    ts: &[LorentzVec],
    es: &[SphereVec],
    tol: &Tol,
) -> Result<Vec<f64>> {
    let k = ts.len();
    if k == 0 || es.len() != k {
        return Err(GeomError::LengthMismatch(ts.len(), es.len()));
    }
    for i in 0..k {
        for j in (i + 1)..k {
            let v = es[i].as_lorentz().inner(es[j].as_lorentz());
            if v.abs() > tol.eps * inner_scale(es[i].as_lorentz(), es[j].as_lorentz()) {
                return Err(GeomError::NotOrthogonalSpheres(v));
            }
        }
    }
    let mut m = DMatrix::zeros(k, k + 1);
    for i in 0..k {
        let ei = es[i].as_lorentz();
        m[(i, 0)] = ei.inner(xi);
        for l in 0..k {
            m[(i, l + 1)] = ei.inner(&ts[l]) - ei.inner(es[l].as_lorentz());
        }
    }
    let mtm = m.transpose() * &m;
    let eig = mtm.symmetric_eigen();
    let max = eig.eigenvalues.iter().fold(0.0f64, |acc, &l| acc.max(l));
    if max == 0.0 {
        return Err(GeomError::RankDeficient);
    }
    let mut kernel: Vec<DVector<f64>> = Vec::new();
    for i in 0..k + 1 {
        if eig.eigenvalues[i] <= tol.eps * max {
            kernel.push(eig.eigenvectors.column(i).into_owned());
        }
    }
    if kernel.len() != 1 {
        return Err(GeomError::RankDeficient);
    }
    let mut a = kernel.remove(0);
    let n = a.norm();
    if a[0].abs() > tol.eps * n {
        a /= a[0];
    } else {
        a /= n;
        if let Some(first) = a.iter().find(|v| v.abs() > tol.eps) {
            if *first < 0.0 {
                a = -a;
            }
        }
    }
    Ok(a.as_slice().to_vec())
}

/// Assembles ξ̂ = a_0 ξ + Σ a_l (t_l - e_l) from bquad coefficients.
pub fn assemble_reduction(
    xi: &LorentzVec,
    ts: &[LorentzVec],
    es: &[SphereVec],
    coeffs: &[f64],
) -> LorentzVec {
    let mut out = xi.scale(coeffs[0]);
    for (l, t) in ts.iter().enumerate() {
        out = out.add_scaled(coeffs[l + 1], &t.sub(es[l].as_lorentz()));
    }
    out
}

/// Parallel transport of an orthonormal pair of normal fields. Each step
/// projects both normals past the new tangent and symmetrically restores
/// exact orthonormality (iterated to rounding level, so neither field is
/// privileged). The double-reduction algebra needs (t_1, t_2) = 0 exactly
/// for its output to stay on the light cone.
pub fn transport_orthonormal_pair(
    samples: &[Vec<f64>],
    n1_0: &[f64],
    n2_0: &[f64],
) -> Result<Vec<(Vec<f64>, Vec<f64>)>> {
    let tangents = discrete_tangents(samples)?;
    let mut n1 = n1_0.to_vec();
    let mut n2 = n2_0.to_vec();
    let mut fields: Vec<(Vec<f64>, Vec<f64>)> = vec![(n1.clone(), n2.clone())];
    for (k, t) in tangents.iter().enumerate().skip(1) {
        let prev_t = &tangents[k - 1];
        let step = |n: &[f64]| -> Result<Vec<f64>> {
            let rotated = minimal_rotation_apply(prev_t, t, n).ok_or_else(|| {
                GeomError::InvalidInput("transport degenerates: tangents antiparallel".into())
            })?;
            let p = dot(&rotated, t);
            let proj: Vec<f64> = rotated.iter().zip(t.iter()).map(|(a, b)| a - p * b).collect();
            normalize(&proj).filter(|_| norm(&proj) > 1e-3).ok_or_else(|| {
                GeomError::InvalidInput("transport degenerates: normal parallel to tangent".into())
            })
        };
        let mut m1 = step(&n1)?;
        let mut m2 = step(&n2)?;
        for _ in 0..4 {
            let c = dot(&m1, &m2);
            if c.abs() < 1e-15 {
                break;
            }
            let c1: Vec<f64> = m1.iter().zip(&m2).map(|(a, b)| a - 0.5 * c * b).collect();
            let c2: Vec<f64> = m2.iter().zip(&m1).map(|(a, b)| a - 0.5 * c * b).collect();
            m1 = normalize(&c1).ok_or(GeomError::CoincidentPoints)?;
            m2 = normalize(&c2).ok_or(GeomError::CoincidentPoints)?;
        }
        n1 = m1;
        n2 = m2;
        fields.push((n1.clone(), n2.clone()));
    }
    Ok(fields)
}

/// Ribaucour coordinates for a sampled curve in R³: both initial normals
/// are transported in parallel (kept orthonormal by a symmetric
/// correction) and the double reduction is solved per sample by the
/// null-space formulation, landing the curve on the circle e1 ∩ e2.
pub fn coords_smooth(
    samples: &[Vec<f64>],
    n1_0: &[f64],
    n2_0: &[f64],
    e1: &SphereVec,
    e2: &SphereVec,
    frame_tol: f64,
    tol: &Tol,
) -> Result<DiscreteCurve> {
    let e12 = e1.as_lorentz().inner(e2.as_lorentz());
    if e12.abs() > tol.eps * inner_scale(e1.as_lorentz(), e2.as_lorentz()) {
        return Err(GeomError::NotOrthogonalSpheres(e12));
    }
    if dot(n1_0, n2_0).abs() > 1e-9 {
        return Err(GeomError::InvalidInput(
            "initial normals are not orthogonal".into(),
        ));
    }
    let curve = DiscreteCurve::new(samples.to_vec(), tol)?;
    let tangents = discrete_tangents(curve.points())?;
    for n in [n1_0, n2_0] {
        let len = norm(n);
        if (len - 1.0).abs() > 1e-9 {
            return Err(GeomError::NonUnitNormal(len));
        }
        let ortho = dot(n, &tangents[0]).abs();
        if ortho > frame_tol {
            return Err(GeomError::NonParallelFrame { residual: ortho });
        }
    }

    let fields = transport_orthonormal_pair(curve.points(), n1_0, n2_0)?;

    let es = [e1.clone(), e2.clone()];
    let mut out = Vec::with_capacity(curve.len());
    for (k, (p, (f1, f2))) in curve.points().iter().zip(&fields).enumerate() {
        let xi = lift(p)?;
        let ts = [normal_lift(f1, p)?, normal_lift(f2, p)?];
        let coeffs = bquad_nullspace(&xi, &ts, &es, tol).map_err(|err| err.at_step(k))?;
        let xi_hat = assemble_reduction(&xi, &ts, &es, &coeffs);
        out.push(unlift(&xi_hat, tol).map_err(|err| err.at_step(k))?);
    }
    DiscreteCurve::new_relaxed(out)
}
