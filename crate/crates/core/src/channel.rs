//! Channel-surface strips from Ribaucour pairs of sampled curves.
//!
//! A Ribaucour pair (x, x̂) with a parallel frame along x determines an
//! enveloped sphere family s(u); the envelope of that family is a channel
//! surface touching each sphere along its characteristic circle
//! ⟨s, s'⟩^⊥, which passes through x(u) and x̂(u). Sampling the arc
//! between the two contact points column by column yields a quad strip
//! bounded by the two curves. Strips of a semi-discrete net glue with
//! common tangent planes when each next frame is induced from the
//! previous sphere family through the normal-bundle isomorphism.

use crate::discrete::{pair_validate, DiscreteCurve};
use crate::error::{GeomError, Result};
use crate::incidence::{sample_circle_arc_with, SphereVec};
use crate::lorentz::{lift, orthogonal_complement, LorentzVec, SphereSubspace, Tol};
use crate::smooth::{decode_normal_lift, enveloped_sphere, induced_normal, FramedCurve};

/// A quad strip between two curves: `k_arc` rows of `k_u` vertices, the
/// first and last row copied bit-exactly from the boundary curves, each
/// column lying on its own sphere of the enveloped family.
#[derive(Debug, Clone)]
pub struct QuadStrip {
    rows: Vec<Vec<Vec<f64>>>,
    normals: Vec<Vec<Vec<f64>>>,
    column_spheres: Vec<SphereVec>,
    /// Worst incidence residual of a boundary lift against its
    /// finite-difference characteristic circle (a discretization
    /// diagnostic, not an error).
    pub max_circle_residual: f64,
}

impl QuadStrip {
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.column_spheres.len()
    }

    pub fn rows(&self) -> &[Vec<Vec<f64>>] {
        &self.rows
    }

    pub fn normals(&self) -> &[Vec<Vec<f64>>] {
        &self.normals
    }

    pub fn column_spheres(&self) -> &[SphereVec] {
        &self.column_spheres
    }

    pub fn vertex(&self, row: usize, col: usize) -> &[f64] {
        &self.rows[row][col]
    }

    pub fn first_row(&self) -> &[Vec<f64>] {
        &self.rows[0]
    }

    pub fn last_row(&self) -> &[Vec<f64>] {
        &self.rows[self.rows.len() - 1]
    }

    /// Max incidence residual of any vertex against its column sphere.
    pub fn sphere_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for row in &self.rows {
            for (u, p) in row.iter().enumerate() {
                if let Ok(r) = self.column_spheres[u].point_residual(p) {
                    worst = worst.max(r);
                }
            }
        }
        worst
    }
}

/// The characteristic circle ⟨s, s'⟩^⊥ of a sphere family at one sample:
/// the circle along which the sphere touches the envelope. The span of
/// {s, s'} must be spacelike; a vanishing derivative means the family is
/// locally constant and has no characteristic circle.
pub fn characteristic_circle(
    s: &SphereVec,
    s_prime: &LorentzVec,
    tol: &Tol,
) -> Result<SphereSubspace> {
    let sv = s.as_lorentz();
    if s_prime.coord_norm() <= tol.eps * sv.coord_norm() {
        return Err(GeomError::DegenerateDerivative);
    }
    let complement = orthogonal_complement(
        &[sv.clone(), s_prime.clone()],
        sv.ambient_dim(),
        tol,
    )
    .map_err(|_| GeomError::DegenerateDerivative)?;
    let circle = SphereSubspace::new(complement, tol)?;
    let inertia = circle.inertia();
    if !(inertia.pos == circle.dim() - 1 && inertia.neg == 1) {
        return Err(GeomError::DegenerateSignature {
            pos: inertia.pos,
            neg: inertia.neg,
            rank: inertia.rank,
        });
    }
    Ok(circle)
}

/// Derivatives of a sphere family by centered differences, second-order
/// one-sided at the ends. The parameter scale drops out: only the span
/// of {s, s'} matters downstream.
fn sphere_family_derivatives(spheres: &[SphereVec]) -> Vec<LorentzVec> {
    let n = spheres.len();
    let v = |k: usize| spheres[k].as_lorentz();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let d = if k == 0 {
            if n == 2 {
                v(1).sub(v(0))
            } else {
                v(1).scale(4.0).sub(&v(0).scale(3.0)).sub(v(2))
            }
        } else if k == n - 1 {
            if n == 2 {
                v(1).sub(v(0))
            } else {
                v(n - 1)
                    .scale(3.0)
                    .sub(&v(n - 2).scale(4.0))
                    .add(v(n - 3))
            }
        } else {
            v(k + 1).sub(v(k - 1))
        };
        out.push(d);
    }
    out
}

/// Outward normal of a sphere vector at an incident point: the gradient
/// of p ↦ (s, ξ_p), which is radial for spheres and constant for planes,
/// and flips with the orientation of s.
fn sphere_gradient_normal(s: &SphereVec, p: &[f64]) -> Vec<f64> {
    let v = s.as_lorentz();
    let g: Vec<f64> = v
        .euclid()
        .iter()
        .zip(p)
        .map(|(e, x)| e - v.o_coeff() * x)
        .collect();
    let n: f64 = g.iter().map(|x| x * x).sum::<f64>().sqrt();
    g.iter().map(|x| x / n).collect()
}

/// A channel-surface strip between a framed curve and its Ribaucour
/// transform. Column u lies on the enveloped sphere through x(u) and
/// x̂(u) with normal n(u); interior rows sample the arc of the
/// finite-difference characteristic circle between the two contact
/// points, while the boundary rows are the input curves verbatim.
pub fn channel_strip(
    x: &FramedCurve,
    xhat: &[Vec<f64>],
    k_arc: usize,
    flip: bool,
    pair_tol: f64,
    tol: &Tol,
) -> Result<QuadStrip> {
    if xhat.len() != x.len() {
        return Err(GeomError::LengthMismatch(xhat.len(), x.len()));
    }
    if k_arc < 2 {
        return Err(GeomError::InvalidInput(
            "a strip needs at least 2 rows".into(),
        ));
    }
    let xhat_curve = DiscreteCurve::new(xhat.to_vec(), tol)?;
    let report = pair_validate(x.curve(), &xhat_curve, tol)?;
    for (k, &residual) in report.edge_residuals.iter().enumerate() {
        if residual > pair_tol {
            return Err(GeomError::NonRibaucourInput { index: k, residual });
        }
    }

    let count = x.len();
    let spheres: Vec<SphereVec> = (0..count)
        .map(|u| enveloped_sphere(&x.samples()[u], &x.normals()[u], &xhat[u], tol))
        .collect::<Result<_>>()?;
    let derivs = sphere_family_derivatives(&spheres);

    let mut rows = vec![vec![Vec::new(); count]; k_arc];
    let mut max_circle_residual = 0.0f64;
    for u in 0..count {
        let from = &x.samples()[u];
        let to = &xhat[u];
        if k_arc == 2 {
            rows[0][u] = from.clone();
            rows[1][u] = to.clone();
            continue;
        }
        let circle = characteristic_circle(&spheres[u], &derivs[u], tol)
            .map_err(|err| err.at_step(u))?;
        let res = circle
            .incidence_residual(&lift(from)?)
            .max(circle.incidence_residual(&lift(to)?));
        max_circle_residual = max_circle_residual.max(res);
        // the boundary lifts sit on the finite-difference circle only up
        // to discretization error, so the arc sampler must not gate on
        // incidence here; the residual is reported on the strip instead,
        // and the vertex-on-sphere contract holds exactly regardless
        let arc = sample_circle_arc_with(&circle, from, to, k_arc, flip, tol, f64::INFINITY)
            .map_err(|err| err.at_step(u))?;
        for (r, p) in arc.into_iter().enumerate() {
            rows[r][u] = p;
        }
    }

    let normals: Vec<Vec<Vec<f64>>> = rows
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(u, p)| sphere_gradient_normal(&spheres[u], p))
                .collect()
        })
        .collect();

    Ok(QuadStrip {
        rows,
        normals,
        column_spheres: spheres,
        max_circle_residual,
    })
}

/// Smooths a semi-discrete curvature-line net (a sequence of curves whose
/// consecutive pairs are Ribaucour) by a sequence of channel strips. The
/// frame of each next curve is induced from the previous strip's sphere
/// family at the shared curve, which is what makes adjacent strips share
/// their tangent planes along the seams.
pub fn smooth_seminet(
    curves: &[DiscreteCurve],
    n0: &[f64],
    k_arc: usize,
    flip: bool,
    pair_tol: f64,
    frame_tol: f64,
    tol: &Tol,
) -> Result<Vec<QuadStrip>> {
    if curves.len() < 2 {
        return Err(GeomError::InvalidInput(
            "a semi-discrete net needs at least 2 curves".into(),
        ));
    }
    let mut frame = crate::smooth::transport_normal(curves[0].points(), n0, frame_tol, tol)?;
    let mut strips = Vec::with_capacity(curves.len() - 1);
    for k in 0..curves.len() - 1 {
        let next = curves[k + 1].points();
        let strip = channel_strip(&frame, next, k_arc, flip, pair_tol, tol)
            .map_err(|err| err.at_step(k))?;
        if k + 2 < curves.len() {
            // induced frame on the shared curve via the normal-bundle
            // isomorphism of the enveloped sphere family; used verbatim —
            // re-projecting against discrete tangents would rotate the
            // next sphere family away from the seam's tangent planes
            let induced: Vec<Vec<f64>> = strip
                .column_spheres()
                .iter()
                .zip(next)
                .map(|(s, p)| {
                    induced_normal(s, p, tol).map(|t_hat| decode_normal_lift(&t_hat).0)
                })
                .collect::<Result<_>>()
                .map_err(|err| err.at_step(k))?;
            frame = FramedCurve::new_trusted(next.to_vec(), induced, tol)
                .map_err(|err| err.at_step(k + 1))?;
        }
        strips.push(strip);
    }
    Ok(strips)
}

/// Maximum angle between the per-vertex normals of two strips along
/// their shared boundary row, which must match bit-exactly.
pub fn seam_continuity(a: &QuadStrip, b: &QuadStrip) -> Result<f64> {
    if a.n_cols() != b.n_cols() {
        return Err(GeomError::BoundaryMismatch);
    }
    let a_row = a.last_row();
    let b_row = b.first_row();
    if a_row != b_row {
        return Err(GeomError::BoundaryMismatch);
    }
    let a_normals = &a.normals()[a.n_rows() - 1];
    let b_normals = &b.normals()[0];
    let mut worst = 0.0f64;
    for (na, nb) in a_normals.iter().zip(b_normals) {
        let gap: f64 = na
            .iter()
            .zip(nb)
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt();
        worst = worst.max(2.0 * (0.5 * gap).asin());
    }
    Ok(worst)
}
