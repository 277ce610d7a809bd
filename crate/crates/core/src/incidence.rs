//! Hyperspheres, planes, circles and their intersections.
//!
//! An oriented hypersphere of R^n is a unit spacelike vector s of
//! R^{n+1,1}; a point p lies on it iff (s, ξ_p) = 0. A circle (or line:
//! lines are circles through ∞ and are never special-cased) is a
//! 3-dimensional subspace of signature (2,1) — the span of the lifts of
//! three of its points.

use crate::error::{GeomError, Result};
use crate::lorentz::{
    self, gram_signature, lift, null_directions_2d, rank_residual, unlift, Inertia, LorentzVec,
    SphereSubspace, Tol,
};
use nalgebra::{DMatrix, DVector};

/// A unit spacelike vector representing an oriented hypersphere or plane.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereVec {
    v: LorentzVec,
}

/// Decoded geometric data of a [`SphereVec`].
#[derive(Debug, Clone, PartialEq)]
pub enum DecodedSphere {
    Sphere {
        center: Vec<f64>,
        radius: f64,
        /// +1 or -1; the sign of the representative encodes orientation.
        orientation: i8,
    },
    Plane {
        normal: Vec<f64>,
        offset: f64,
    },
}

impl SphereVec {
    /// Wraps a vector after checking (v,v) = 1 within tolerance.
    pub fn new(v: LorentzVec, tol: &Tol) -> Result<Self> {
        let vv = v.inner(&v);
        let scale = v.coord_norm().powi(2);
        if (vv - 1.0).abs() > tol.eps * scale.max(1.0) {
            return Err(GeomError::NotUnitSpacelike(vv));
        }
        Ok(SphereVec { v })
    }

    /// Rescales a spacelike vector to unit norm.
    pub fn from_spacelike(v: LorentzVec, tol: &Tol) -> Result<Self> {
        let vv = v.inner(&v);
        if vv <= tol.eps * v.coord_norm().powi(2) {
            return Err(GeomError::NotUnitSpacelike(vv));
        }
        Ok(SphereVec {
            v: v.scale(1.0 / vv.sqrt()),
        })
    }

    pub fn as_lorentz(&self) -> &LorentzVec {
        &self.v
    }

    pub fn ambient_dim(&self) -> usize {
        self.v.ambient_dim()
    }

    /// The oppositely oriented sphere.
    pub fn flipped(&self) -> SphereVec {
        SphereVec {
            v: self.v.scale(-1.0),
        }
    }

    /// Incidence residual |(s, ξ_p)| / (|s||ξ_p|).
    pub fn point_residual(&self, p: &[f64]) -> Result<f64> {
        let xi = lift(p)?;
        let scale = self.v.coord_norm() * xi.coord_norm();
        Ok(self.v.try_inner(&xi)?.abs() / scale)
    }
}

/// The hypersphere with centre m and radius r > 0:
/// s = (1/r)(o + m + ((m,m) - r²)/2 q).
pub fn sphere_from_center_radius(center: &[f64], radius: f64) -> Result<SphereVec> {
    if !(radius > 0.0) {
        return Err(GeomError::NonPositiveRadius(radius));
    }
    let mm: f64 = center.iter().map(|x| x * x).sum();
    let v = LorentzVec::new(
        1.0 / radius,
        center.iter().map(|x| x / radius).collect(),
        (mm - radius * radius) / (2.0 * radius),
    )?;
    Ok(SphereVec { v })
}

/// The plane with unit normal n and support (n, x) = d: t = n + d q.
pub fn plane_from_normal_offset(normal: &[f64], offset: f64) -> Result<SphereVec> {
    let nn: f64 = normal.iter().map(|x| x * x).sum();
    if (nn.sqrt() - 1.0).abs() > 1e-9 {
        return Err(GeomError::NonUnitNormal(nn.sqrt()));
    }
    let v = LorentzVec::new(0.0, normal.to_vec(), offset)?;
    Ok(SphereVec { v })
}

/// Recovers centre/radius (spheres) or normal/offset (planes). Round-trips
/// with the two constructors; the sign of the representative is returned
/// as the orientation of a sphere.
pub fn decode_sphere(s: &SphereVec, tol: &Tol) -> DecodedSphere {
    let v = s.as_lorentz();
    if tol.is_zero(v.o_coeff(), v.coord_norm()) {
        DecodedSphere::Plane {
            normal: v.euclid().to_vec(),
            offset: v.q_coeff(),
        }
    } else {
        let o = v.o_coeff();
        DecodedSphere::Sphere {
            center: v.euclid().iter().map(|x| x / o).collect(),
            radius: 1.0 / o.abs(),
            orientation: if o > 0.0 { 1 } else { -1 },
        }
    }
}

/// True iff p lies on s within tolerance.
pub fn point_on_sphere(p: &[f64], s: &SphereVec, tol: &Tol) -> bool {
    match s.point_residual(p) {
        Ok(r) => r <= tol.eps,
        Err(_) => false,
    }
}

fn points_distinct(a: &[f64], b: &[f64], tol: &Tol) -> bool {
    let gap: f64 = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt();
    let scale: f64 = 1.0
        + a.iter().map(|x| x * x).sum::<f64>().sqrt()
        + b.iter().map(|x| x * x).sum::<f64>().sqrt();
    gap > tol.eps * scale
}

/// The circle through three pairwise distinct points, as the span of
/// their lifts. Collinear points give a line: the subspace then contains
/// q, the point at infinity.
pub fn circle_through(p1: &[f64], p2: &[f64], p3: &[f64], tol: &Tol) -> Result<SphereSubspace> {
    for (a, b) in [(p1, p2), (p1, p3), (p2, p3)] {
        if !points_distinct(a, b, tol) {
            return Err(GeomError::CoincidentPoints);
        }
    }
    let basis = vec![lift(p1)?, lift(p2)?, lift(p3)?];
    SphereSubspace::new(basis, tol)
}

/// Residual of the concircularity claim for four points: the relative
/// size of the fourth Gram eigenvalue of their lifts.
pub fn concircularity_residual(points: &[&[f64]]) -> Result<f64> {
    let lifts: Vec<LorentzVec> = points.iter().map(|p| lift(p)).collect::<Result<_>>()?;
    Ok(rank_residual(&lifts, 3))
}

/// True iff the four points lie on one circle (or line).
pub fn concircular(p1: &[f64], p2: &[f64], p3: &[f64], p4: &[f64], tol: &Tol) -> bool {
    let lifts = match [p1, p2, p3, p4]
        .iter()
        .map(|p| lift(p))
        .collect::<Result<Vec<_>>>()
    {
        Ok(l) => l,
        Err(_) => return false,
    };
    let sig = gram_signature(&lifts, tol);
    match sig.rank {
        0..=2 => true,
        3 => sig.pos == 2 && sig.neg == 1,
        _ => false,
    }
}

/// True iff the points lie on a common d-sphere: the Gram rank of their
/// lifts is at most d + 2, with signature (d+1, 1) at equality.
pub fn cospherical(points: &[&[f64]], d: usize, tol: &Tol) -> bool {
    let lifts = match points.iter().map(|p| lift(p)).collect::<Result<Vec<_>>>() {
        Ok(l) => l,
        Err(_) => return false,
    };
    let sig = gram_signature(&lifts, tol);
    if sig.rank < d + 2 {
        true
    } else if sig.rank == d + 2 {
        sig.pos == d + 1 && sig.neg == 1
    } else {
        false
    }
}

/// Relative residual of the claim that `points` lie on a d-sphere.
pub fn cosphericity_residual(points: &[&[f64]], d: usize) -> Result<f64> {
    let lifts: Vec<LorentzVec> = points.iter().map(|p| lift(p)).collect::<Result<_>>()?;
    Ok(rank_residual(&lifts, d + 2))
}

/// Result of a second-intersection query: the point, and whether the
/// configuration was tangent (the second point equals the known one).
#[derive(Debug, Clone, PartialEq)]
pub struct SecondPoint {
    pub point: Vec<f64>,
    pub tangent: bool,
}

/// Intersection of the subspaces spanned by `a` and `b`, as raw vectors.
/// The result may carry a degenerate induced metric, so it is not wrapped
/// in a SphereSubspace.
fn subspace_intersection(a: &[LorentzVec], b: &[LorentzVec], tol: &Tol) -> Vec<LorentzVec> {
    let dim = a[0].ambient_dim() + 2;
    let cols = a.len() + b.len();
    let mut m = DMatrix::zeros(dim, cols);
    for (j, v) in a.iter().enumerate() {
        m.set_column(j, &v.coords());
    }
    for (j, v) in b.iter().enumerate() {
        m.set_column(a.len() + j, &v.coords().scale(-1.0));
    }
    // kernel of m: coefficient pairs (α, β) with Aα = Bβ
    let mtm = m.transpose() * &m;
    let eig = mtm.symmetric_eigen();
    let max = eig.eigenvalues.iter().fold(0.0f64, |acc, &l| acc.max(l));
    let mut out = Vec::new();
    for i in 0..cols {
        if eig.eigenvalues[i] <= tol.eps * max {
            let alpha = eig.eigenvectors.column(i);
            let mut w = DVector::zeros(dim);
            for (j, v) in a.iter().enumerate() {
                w += v.coords() * alpha[j];
            }
            if let Ok(v) = LorentzVec::from_coords(&w) {
                out.push(v);
            }
        }
    }
    out
}

/// Within a pencil of candidate null directions, distinguishes the second
/// point from the known one: two null vectors span distinct points iff
/// their product is nonzero.
fn pick_second_null(
    dirs: (LorentzVec, LorentzVec),
    known_lift: &LorentzVec,
    known: &[f64],
    tol: &Tol,
) -> Result<SecondPoint> {
    let (a, b) = dirs;
    let score = |v: &LorentzVec| {
        v.inner(known_lift).abs() / (v.coord_norm() * known_lift.coord_norm())
    };
    let (sa, sb) = (score(&a), score(&b));
    let best = if sa >= sb { a } else { b };
    if sa.max(sb) <= tol.eps {
        // both null lines coincide with the known point: tangency
        return Ok(SecondPoint {
            point: known.to_vec(),
            tangent: true,
        });
    }
    Ok(SecondPoint {
        point: unlift(&best, tol)?,
        tangent: false,
    })
}

/// Second intersection point of a circle C with a hypersphere s, given a
/// common point `known`. A tangent configuration returns `known` with the
/// tangent flag set instead of failing, so iterations can continue.
pub fn second_intersection(
    circle: &SphereSubspace,
    s: &SphereVec,
    known: &[f64],
    tol: &Tol,
) -> Result<SecondPoint> {
    let known_lift = lift(known)?;
    if circle.incidence_residual(&known_lift) > tol.eps {
        return Err(GeomError::InputNotIncident("known point not on circle"));
    }
    if !point_on_sphere(known, s, tol) {
        return Err(GeomError::InputNotIncident("known point not on sphere"));
    }

    // W = C ∩ s^⊥: kernel of the coefficient row r_i = (b_i, s) in the
    // 3-dimensional coefficient space of the circle basis.
    let r: Vec<f64> = circle
        .basis()
        .iter()
        .map(|b| b.inner(s.as_lorentz()))
        .collect();
    let rn = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
    let scale: f64 = circle
        .basis()
        .iter()
        .map(|b| b.coord_norm())
        .fold(0.0, f64::max)
        * s.as_lorentz().coord_norm();
    if rn <= tol.eps * scale {
        // the sphere contains the whole circle; no second point singled out
        return Err(GeomError::AmbiguousIdenticalCircles);
    }
    // two spanning directions of r^⊥ via cross products with the axis
    // least aligned with r
    let axis = (0..3).min_by(|&i, &j| r[i].abs().partial_cmp(&r[j].abs()).unwrap()).unwrap();
    let mut a = [0.0; 3];
    a[axis] = 1.0;
    let cross = |u: &[f64; 3], v: &[f64; 3]| {
        [
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        ]
    };
    let rv = [r[0], r[1], r[2]];
    let k1 = cross(&rv, &a);
    let k2 = cross(&rv, &k1);
    let combine = |alpha: &[f64; 3]| {
        let mut v = circle.basis()[0].scale(alpha[0]);
        v = v.add_scaled(alpha[1], &circle.basis()[1]);
        v.add_scaled(alpha[2], &circle.basis()[2])
    };
    let w_basis = vec![combine(&k1), combine(&k2)];

    let sig = gram_signature(&w_basis, tol);
    match (sig.pos, sig.neg) {
        (1, 1) => {
            let dirs = null_directions_2d(&w_basis[0], &w_basis[1], tol)?;
            pick_second_null(dirs, &known_lift, known, tol)
        }
        (2, 0) => Err(GeomError::NoIntersection),
        _ => Ok(SecondPoint {
            point: known.to_vec(),
            tangent: true,
        }),
    }
}

/// Second common point of two circles through `common`. Both circles must
/// lie on one 2-sphere: dim(CA + CB) ≤ 4 with signature (3,1).
pub fn circle_circle_second(
    ca: &SphereSubspace,
    cb: &SphereSubspace,
    common: &[f64],
    tol: &Tol,
) -> Result<SecondPoint> {
    let common_lift = lift(common)?;
    if ca.incidence_residual(&common_lift) > tol.eps || cb.incidence_residual(&common_lift) > tol.eps
    {
        return Err(GeomError::InputNotIncident("common point not on both circles"));
    }
    if ca.same_subspace(cb, tol) {
        return Err(GeomError::AmbiguousIdenticalCircles);
    }

    // span of CA + CB
    let all: Vec<LorentzVec> = ca.basis().iter().chain(cb.basis()).cloned().collect();
    let dim = ca.ambient_dim() + 2;
    let mut m = DMatrix::zeros(dim, all.len());
    for (j, v) in all.iter().enumerate() {
        m.set_column(j, &v.coords());
    }
    let mtm = m.transpose() * &m;
    let eig = mtm.symmetric_eigen();
    let max = eig.eigenvalues.iter().fold(0.0f64, |acc, &l| acc.max(l));
    let joint_rank = eig
        .eigenvalues
        .iter()
        .filter(|&&l| l > tol.eps * max)
        .count();
    if joint_rank > 4 {
        return Err(GeomError::NotCospherical);
    }
    if joint_rank == 4 {
        // basis of the joint span, then check its inertia is (3,1)
        let span: Vec<LorentzVec> = {
            let svd = m.svd(true, false);
            let u = svd.u.as_ref().expect("svd with u");
            let mut idx: Vec<usize> = (0..svd.singular_values.len()).collect();
            idx.sort_by(|&a, &b| {
                svd.singular_values[b]
                    .partial_cmp(&svd.singular_values[a])
                    .unwrap()
            });
            idx.iter()
                .take(4)
                .map(|&i| LorentzVec::from_coords(&u.column(i).into_owned()))
                .collect::<Result<_>>()?
        };
        let sig = gram_signature(&span, tol);
        if !(sig.pos == 3 && sig.neg == 1) {
            return Err(GeomError::NotCospherical);
        }
    }

    let w = subspace_intersection(ca.basis(), cb.basis(), tol);
    if w.len() != 2 {
        return Err(GeomError::AmbiguousIdenticalCircles);
    }
    let sig = gram_signature(&w, tol);
    match (sig.pos, sig.neg) {
        (1, 1) => {
            let dirs = null_directions_2d(&w[0], &w[1], tol)?;
            pick_second_null(dirs, &common_lift, common, tol)
        }
        (2, 0) => Err(GeomError::NoIntersection),
        _ => Ok(SecondPoint {
            point: common.to_vec(),
            tangent: true,
        }),
    }
}

/// Orthonormal 2D coordinates in the affine plane through three points.
/// Returns (origin, u, v) with u, v orthonormal spanning directions.
fn plane_frame(p1: &[f64], p2: &[f64], p3: &[f64]) -> Option<(Vec<f64>, Vec<f64>, Vec<f64>)> {
    let n = p1.len();
    let sub = |a: &[f64], b: &[f64]| -> Vec<f64> { a.iter().zip(b).map(|(x, y)| x - y).collect() };
    let dot = |a: &[f64], b: &[f64]| -> f64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    let mut u = sub(p2, p1);
    let nu = dot(&u, &u).sqrt();
    if nu == 0.0 {
        return None;
    }
    for x in &mut u {
        *x /= nu;
    }
    let w = sub(p3, p1);
    let proj = dot(&w, &u);
    let mut v: Vec<f64> = (0..n).map(|i| w[i] - proj * u[i]).collect();
    let nw = dot(&w, &w).sqrt();
    let nv = dot(&v, &v).sqrt();
    if nv <= 1e-12 * nw {
        // collinear input: complete u with an arbitrary orthogonal axis,
        // so that all points get coordinates (t_i, ~0) on the line
        let axis = (0..n)
            .min_by(|&i, &j| u[i].abs().partial_cmp(&u[j].abs()).unwrap())
            .unwrap();
        let mut a = vec![0.0; n];
        a[axis] = 1.0;
        let pa = dot(&a, &u);
        v = (0..n).map(|i| a[i] - pa * u[i]).collect();
    }
    let nv = dot(&v, &v).sqrt();
    if nv == 0.0 {
        return None;
    }
    for x in &mut v {
        *x /= nv;
    }
    Some((p1.to_vec(), u, v))
}

fn plane_coords(frame: &(Vec<f64>, Vec<f64>, Vec<f64>), p: &[f64]) -> (f64, f64) {
    let (origin, u, v) = frame;
    let d: Vec<f64> = p.iter().zip(origin).map(|(x, o)| x - o).collect();
    let dot = |a: &[f64], b: &[f64]| -> f64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    (dot(&d, u), dot(&d, v))
}

/// Circumcenter of three points given in 2D coordinates; None if collinear.
fn circumcenter_2d(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> Option<(f64, f64)> {
    let d = 2.0 * (a.0 * (b.1 - c.1) + b.0 * (c.1 - a.1) + c.0 * (a.1 - b.1));
    let scale = (a.0.abs() + b.0.abs() + c.0.abs() + a.1.abs() + b.1.abs() + c.1.abs()).powi(2);
    if d.abs() <= 1e-12 * scale.max(1e-300) {
        return None;
    }
    let na = a.0 * a.0 + a.1 * a.1;
    let nb = b.0 * b.0 + b.1 * b.1;
    let nc = c.0 * c.0 + c.1 * c.1;
    let ux = (na * (b.1 - c.1) + nb * (c.1 - a.1) + nc * (a.1 - b.1)) / d;
    let uy = (na * (c.0 - b.0) + nb * (a.0 - c.0) + nc * (b.0 - a.0)) / d;
    Some((ux, uy))
}

/// True if the pairs (θ1, θ3) and (θ2, θ4) separate each other on the
/// circle: exactly one of θ2, θ4 lies on the ccw arc from θ1 to θ3.
fn pairs_separate(t1: f64, t2: f64, t3: f64, t4: f64) -> bool {
    let wrap = |x: f64| x.rem_euclid(std::f64::consts::TAU);
    let span = wrap(t3 - t1);
    let in_arc = |t: f64| wrap(t - t1) < span;
    in_arc(t2) != in_arc(t4)
}

/// The real cross ratio of four concircular points, in the edge convention
///
/// ```text
/// cr(p1,p2,p3,p4) = (p1-p2)(p3-p4) / ((p2-p3)(p4-p1))
/// ```
///
/// The magnitude comes from the lift identity (ξ_x, ξ_y) = -½|x-y|²; the
/// sign is negative iff the pairs (p1,p3) and (p2,p4) separate each other
/// on the circle.
pub fn edge_cross_ratio(
    p1: &[f64],
    p2: &[f64],
    p3: &[f64],
    p4: &[f64],
    tol: &Tol,
) -> Result<f64> {
    let pts = [p1, p2, p3, p4];
    for i in 0..4 {
        for j in (i + 1)..4 {
            if !points_distinct(pts[i], pts[j], tol) {
                return Err(GeomError::CoincidentPoints);
            }
        }
    }
    let residual = concircularity_residual(&pts)?;
    if !concircular(p1, p2, p3, p4, tol) {
        return Err(GeomError::NotConcircular { residual });
    }

    let lifts: Vec<LorentzVec> = pts.iter().map(|p| lift(p)).collect::<Result<_>>()?;
    let d = |i: usize, j: usize| lifts[i].inner(&lifts[j]).abs(); // ½|pi-pj|²
    let magnitude = ((d(0, 1) * d(2, 3)) / (d(1, 2) * d(3, 0))).sqrt();

    let frame = plane_frame(p1, p2, p3).ok_or(GeomError::CoincidentPoints)?;
    let c: Vec<(f64, f64)> = pts.iter().map(|p| plane_coords(&frame, p)).collect();
    let separated = match circumcenter_2d(c[0], c[1], c[2]) {
        Some(center) => {
            let angle = |p: (f64, f64)| (p.1 - center.1).atan2(p.0 - center.0);
            pairs_separate(angle(c[0]), angle(c[1]), angle(c[2]), angle(c[3]))
        }
        None => {
            // collinear: a line is a circle through ∞; use the signed
            // parameter along the line, where separation shows up as an
            // interleaving of parameters (with ∞ on the circle, pairs
            // separate iff exactly one of t2, t4 lies between t1 and t3).
            let t: Vec<f64> = c.iter().map(|&(x, _)| x).collect();
            let between = |a: f64, lo: f64, hi: f64| {
                let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
                lo < a && a < hi
            };
            between(t[1], t[0], t[2]) != between(t[3], t[0], t[2])
        }
    };
    Ok(if separated { -magnitude } else { magnitude })
}

/// Angle parameterization of a circle subspace: returns a closure mapping
/// θ to the point unlift(cos θ u1 + sin θ u2 + w), plus the angles of the
/// given points.
struct CircleParam {
    u1: LorentzVec,
    u2: LorentzVec,
    w: LorentzVec,
}

impl CircleParam {
    fn new(circle: &SphereSubspace) -> Result<Self> {
        let inertia = circle.inertia();
        if circle.dim() != 3 || inertia.pos != 2 || inertia.neg != 1 {
            return Err(GeomError::DegenerateSignature {
                pos: inertia.pos,
                neg: inertia.neg,
                rank: inertia.rank,
            });
        }
        let (pos, neg) = circle.orthonormal_basis();
        Ok(CircleParam {
            u1: pos[0].clone(),
            u2: pos[1].clone(),
            w: neg[0].clone(),
        })
    }

    /// Angle of a (near-)null vector of the subspace, by projection onto
    /// the orthonormal frame.
    fn angle_of(&self, v: &LorentzVec) -> f64 {
        let c1 = v.inner(&self.u1);
        let c2 = v.inner(&self.u2);
        c2.atan2(c1)
    }

    fn point_at(&self, theta: f64, tol: &Tol) -> Result<Vec<f64>> {
        let v = self
            .u1
            .scale(theta.cos())
            .add(&self.u2.scale(theta.sin()))
            .add(&self.w);
        unlift(&v, tol)
    }
}

/// k points along the arc of a circle from `from` to `to`, endpoints
/// included exactly (they are copied, not recomputed). The arc is the one
/// whose parameter span is at most half a turn — equivalently, the arc
/// not containing the point antipodal in parameter to `from`; `flip`
/// selects the complementary arc.
pub fn sample_circle_arc(
    circle: &SphereSubspace,
    from: &[f64],
    to: &[f64],
    k: usize,
    flip: bool,
    tol: &Tol,
) -> Result<Vec<Vec<f64>>> {
    sample_circle_arc_with(circle, from, to, k, flip, tol, tol.eps)
}

/// As [`sample_circle_arc`], with an explicit incidence tolerance for the
/// endpoints (callers with finite-difference circles need slack there).
pub fn sample_circle_arc_with(
    circle: &SphereSubspace,
    from: &[f64],
    to: &[f64],
    k: usize,
    flip: bool,
    tol: &Tol,
    incidence_tol: f64,
) -> Result<Vec<Vec<f64>>> {
    if k < 2 {
        return Err(GeomError::InvalidInput(
            "arc sampling needs at least 2 points".into(),
        ));
    }
    if !points_distinct(from, to, tol) {
        return Err(GeomError::CoincidentPoints);
    }
    let from_lift = lift(from)?;
    let to_lift = lift(to)?;
    if circle.incidence_residual(&from_lift) > incidence_tol
        || circle.incidence_residual(&to_lift) > incidence_tol
    {
        return Err(GeomError::InputNotIncident("arc endpoints not on circle"));
    }
    let param = CircleParam::new(circle)?;
    let theta_from = param.angle_of(&from_lift);
    let theta_to = param.angle_of(&to_lift);
    let mut span = (theta_to - theta_from).sin().atan2((theta_to - theta_from).cos());
    if flip {
        span -= std::f64::consts::TAU * span.signum();
    }

    let mut out = Vec::with_capacity(k);
    out.push(from.to_vec());
    for j in 1..k - 1 {
        let theta = theta_from + span * (j as f64) / ((k - 1) as f64);
        out.push(param.point_at(theta, tol)?);
    }
    out.push(to.to_vec());
    Ok(out)
}

/// Signature of a circle subspace as a plain tuple, for reports.
pub fn circle_inertia(circle: &SphereSubspace) -> Inertia {
    circle.inertia()
}

/// The circle subspace through three lifts already in hand.
pub fn circle_from_lifts(
    a: &LorentzVec,
    b: &LorentzVec,
    c: &LorentzVec,
    tol: &Tol,
) -> Result<SphereSubspace> {
    SphereSubspace::new(vec![a.clone(), b.clone(), c.clone()], tol)
}

/// Applies a Lorentz map to a sphere vector.
pub fn map_sphere(map: &lorentz::LorentzMap, s: &SphereVec, tol: &Tol) -> Result<SphereVec> {
    SphereVec::new(map.apply(s.as_lorentz()), tol)
}
