//! Discrete curves and circular nets under Ribaucour transformation.
//!
//! Two discrete curves form a Ribaucour pair when the endpoints of
//! corresponding edges are concircular. A transform onto a fixed sphere
//! evolves edge by edge: the next point is the second intersection of the
//! sphere with the circumcircle of the current edge and the previously
//! constructed point. Nets propagate the same rule in two directions;
//! Miguel's theorem makes the two routes to each interior vertex agree,
//! which is verified rather than assumed.

use crate::error::{GeomError, Result};
use crate::incidence::{
    circle_through, concircularity_residual, cosphericity_residual, edge_cross_ratio,
    point_on_sphere, second_intersection, circle_circle_second, SphereVec,
};
use crate::lorentz::{lift, Tol};

/// An ordered polygonal curve in R^n, consecutive points distinct.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteCurve {
    ambient_dim: usize,
    points: Vec<Vec<f64>>,
}

fn euclid_gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

fn point_scale(a: &[f64], b: &[f64]) -> f64 {
    1.0 + a.iter().map(|x| x * x).sum::<f64>().sqrt()
        + b.iter().map(|x| x * x).sum::<f64>().sqrt()
}

impl DiscreteCurve {
    /// Validates length, finiteness, consistent dimension and distinctness
    /// of consecutive points.
    pub fn new(points: Vec<Vec<f64>>, tol: &Tol) -> Result<Self> {
        let curve = Self::new_relaxed(points)?;
        for k in 0..curve.len() - 1 {
            let gap = euclid_gap(&curve.points[k], &curve.points[k + 1]);
            if gap <= tol.eps * point_scale(&curve.points[k], &curve.points[k + 1]) {
                return Err(GeomError::CoincidentPoints);
            }
        }
        Ok(curve)
    }

    /// As [`DiscreteCurve::new`] but permits coincident consecutive points;
    /// used for transform outputs that passed through a tangent step.
    pub(crate) fn new_relaxed(points: Vec<Vec<f64>>) -> Result<Self> {
        if points.len() < 2 {
            return Err(GeomError::InvalidInput(
                "a discrete curve needs at least 2 points".into(),
            ));
        }
        let ambient_dim = points[0].len();
        lift(&points[0])?; // dimension range check
        for p in &points {
            if p.len() != ambient_dim {
                return Err(GeomError::DimensionMismatch(p.len(), ambient_dim));
            }
            if !p.iter().all(|x| x.is_finite()) {
                return Err(GeomError::NonFinite);
            }
        }
        Ok(DiscreteCurve {
            ambient_dim,
            points,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn point(&self, k: usize) -> &[f64] {
        &self.points[k]
    }
}

/// A Z²-indexed grid of points whose elementary quads are concircular.
#[derive(Debug, Clone, PartialEq)]
pub struct CircularNet {
    ambient_dim: usize,
    shape: (usize, usize),
    points: Vec<Vec<f64>>, // row-major: index = i * shape.1 + j
}

impl CircularNet {
    pub fn new(
        ambient_dim: usize,
        shape: (usize, usize),
        points: Vec<Vec<f64>>,
        tol: &Tol,
    ) -> Result<Self> {
        let (n1, n2) = shape;
        if n1 < 2 || n2 < 2 {
            return Err(GeomError::InvalidInput(
                "a circular net needs at least 2x2 points".into(),
            ));
        }
        if points.len() != n1 * n2 {
            return Err(GeomError::LengthMismatch(points.len(), n1 * n2));
        }
        for p in &points {
            if p.len() != ambient_dim {
                return Err(GeomError::DimensionMismatch(p.len(), ambient_dim));
            }
            if !p.iter().all(|x| x.is_finite()) {
                return Err(GeomError::NonFinite);
            }
        }
        let net = CircularNet {
            ambient_dim,
            shape,
            points,
        };
        for i in 0..n1 - 1 {
            for j in 0..n2 - 1 {
                let quad = [
                    net.point(i, j),
                    net.point(i + 1, j),
                    net.point(i + 1, j + 1),
                    net.point(i, j + 1),
                ];
                let residual = concircularity_residual(&quad)?;
                if residual > tol.eps {
                    return Err(GeomError::NotConcircular { residual });
                }
            }
        }
        Ok(net)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn shape(&self) -> (usize, usize) {
        self.shape
    }

    pub fn point(&self, i: usize, j: usize) -> &[f64] {
        &self.points[i * self.shape.1 + j]
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    /// Row i as a curve along the second index.
    pub fn row_curve(&self, i: usize, tol: &Tol) -> Result<DiscreteCurve> {
        let pts = (0..self.shape.1)
            .map(|j| self.point(i, j).to_vec())
            .collect();
        DiscreteCurve::new(pts, tol)
    }

    /// Column j as a curve along the first index.
    pub fn column_curve(&self, j: usize, tol: &Tol) -> Result<DiscreteCurve> {
        let pts = (0..self.shape.0)
            .map(|i| self.point(i, j).to_vec())
            .collect();
        DiscreteCurve::new(pts, tol)
    }
}

/// Per-edge validation data for a pair of curves.
#[derive(Debug, Clone)]
pub struct PairReport {
    /// Relative concircularity residual of each edge quad.
    pub edge_residuals: Vec<f64>,
    /// Real cross ratio of each concircular edge quad (None if the quad
    /// failed the circularity test).
    pub cross_ratios: Vec<Option<f64>>,
    pub pass: bool,
}

/// Checks that two curves of equal length form a Ribaucour pair:
/// every edge quad (x_k, x_{k+1}, y_{k+1}, y_k) must be concircular.
/// Coincident corresponding points violate the regularity x(u) ≠ x̂(u).
pub fn pair_validate(x: &DiscreteCurve, y: &DiscreteCurve, tol: &Tol) -> Result<PairReport> {
    if x.len() != y.len() {
        return Err(GeomError::LengthMismatch(x.len(), y.len()));
    }
    if x.ambient_dim() != y.ambient_dim() {
        return Err(GeomError::DimensionMismatch(x.ambient_dim(), y.ambient_dim()));
    }
    for k in 0..x.len() {
        let gap = euclid_gap(x.point(k), y.point(k));
        if gap <= tol.eps * point_scale(x.point(k), y.point(k)) {
            return Err(GeomError::RegularityViolation { index: k });
        }
    }
    let mut edge_residuals = Vec::with_capacity(x.len() - 1);
    let mut cross_ratios = Vec::with_capacity(x.len() - 1);
    let mut pass = true;
    for k in 0..x.len() - 1 {
        let quad = [x.point(k), x.point(k + 1), y.point(k + 1), y.point(k)];
        let residual = concircularity_residual(&quad)?;
        if residual > tol.eps {
            pass = false;
        }
        edge_residuals.push(residual);
        cross_ratios.push(
            edge_cross_ratio(x.point(k), x.point(k + 1), y.point(k + 1), y.point(k), tol).ok(),
        );
    }
    Ok(PairReport {
        edge_residuals,
        cross_ratios,
        pass,
    })
}

/// A transform output: the curve plus the indices of tangent steps (where
/// the second intersection degenerated to the current point and the
/// iteration was continued).
#[derive(Debug, Clone)]
pub struct SphereTransform {
    pub curve: DiscreteCurve,
    pub tangent_steps: Vec<usize>,
}

fn check_initial_on_sphere(initial: &[f64], e: &SphereVec, tol: &Tol) -> Result<()> {
    if !point_on_sphere(initial, e, tol) {
        return Err(GeomError::InitialNotOnSphere);
    }
    Ok(())
}

/// Ribaucour transform of a discrete curve onto a sphere it does not meet.
///
/// x̂(0) is the given initial point on the sphere; then
/// x̂(k+1) = second intersection of e with the circumcircle of
/// x(k), x(k+1), x̂(k). Every output point lies on e and every edge quad
/// is concircular by construction.
pub fn curve_transform_to_sphere(
    x: &DiscreteCurve,
    e: &SphereVec,
    initial: &[f64],
    tol: &Tol,
) -> Result<SphereTransform> {
    if x.ambient_dim() != e.ambient_dim() {
        return Err(GeomError::DimensionMismatch(x.ambient_dim(), e.ambient_dim()));
    }
    for (k, p) in x.points().iter().enumerate() {
        if point_on_sphere(p, e, tol) {
            return Err(GeomError::CurveMeetsSphere { index: k });
        }
    }
    check_initial_on_sphere(initial, e, tol)?;
    let gap = euclid_gap(initial, x.point(0));
    if gap <= tol.eps * point_scale(initial, x.point(0)) {
        return Err(GeomError::CoincidentPoints);
    }

    let mut out: Vec<Vec<f64>> = Vec::with_capacity(x.len());
    let mut tangent_steps = Vec::new();
    out.push(initial.to_vec());
    for k in 0..x.len() - 1 {
        let prev = out[k].clone();
        let circle = circle_through(x.point(k), x.point(k + 1), &prev, tol)
            .map_err(|err| err.at_step(k))?;
        let second = second_intersection(&circle, e, &prev, tol)
            .map_err(|err| err.at_step(k))?;
        if second.tangent {
            tangent_steps.push(k);
        }
        out.push(second.point);
    }
    Ok(SphereTransform {
        curve: DiscreteCurve::new_relaxed(out)?,
        tangent_steps,
    })
}

/// Common Ribaucour transform of two curves on a sphere S, evolved by
/// intersecting the circumcircles of corresponding edges through the
/// previously constructed point.
pub fn common_transform(
    a: &DiscreteCurve,
    b: &DiscreteCurve,
    s: &SphereVec,
    initial: &[f64],
    tol: &Tol,
) -> Result<SphereTransform> {
    if a.len() != b.len() {
        return Err(GeomError::LengthMismatch(a.len(), b.len()));
    }
    for (k, p) in a.points().iter().chain(b.points().iter()).enumerate() {
        if !point_on_sphere(p, s, tol) {
            let _ = k;
            return Err(GeomError::NotCospherical);
        }
    }
    check_initial_on_sphere(initial, s, tol).map_err(|_| GeomError::NotCospherical)?;
    for k in 0..a.len() {
        let gap = euclid_gap(a.point(k), b.point(k));
        if gap <= tol.eps * point_scale(a.point(k), b.point(k)) {
            return Err(GeomError::RegularityViolation { index: k });
        }
    }

    let mut out: Vec<Vec<f64>> = Vec::with_capacity(a.len());
    let mut tangent_steps = Vec::new();
    out.push(initial.to_vec());
    for k in 0..a.len() - 1 {
        let prev = out[k].clone();
        let ca = circle_through(a.point(k), a.point(k + 1), &prev, tol)
            .map_err(|err| err.at_step(k))?;
        let cb = circle_through(b.point(k), b.point(k + 1), &prev, tol)
            .map_err(|err| err.at_step(k))?;
        let second = circle_circle_second(&ca, &cb, &prev, tol).map_err(|err| err.at_step(k))?;
        if second.tangent {
            tangent_steps.push(k);
        }
        out.push(second.point);
    }
    Ok(SphereTransform {
        curve: DiscreteCurve::new_relaxed(out)?,
        tangent_steps,
    })
}

/// The chain of three interpolating Ribaucour transforms between two
/// curves: both are first transformed onto the sphere S and a common
/// transform of the two spherical curves closes the chain, so that
/// x0 ~ x̂0 ~ ŷ ~ x̂1 ~ x1 are consecutive Ribaucour pairs.
pub fn interpolate_chain(
    x0: &DiscreteCurve,
    x1: &DiscreteCurve,
    s: &SphereVec,
    initials: &[Vec<f64>; 3],
    tol: &Tol,
) -> Result<(DiscreteCurve, DiscreteCurve, DiscreteCurve)> {
    if x0.len() != x1.len() {
        return Err(GeomError::LengthMismatch(x0.len(), x1.len()));
    }
    let x0_hat = curve_transform_to_sphere(x0, s, &initials[0], tol)
        .map_err(|e| e.at_stage("reduce x0"))?;
    let x1_hat = curve_transform_to_sphere(x1, s, &initials[1], tol)
        .map_err(|e| e.at_stage("reduce x1"))?;
    let y_hat = common_transform(&x0_hat.curve, &x1_hat.curve, s, &initials[2], tol)
        .map_err(|e| e.at_stage("common transform"))?;
    Ok((x0_hat.curve, y_hat.curve, x1_hat.curve))
}

/// Seven vertices of a combinatorial cube, labeled by {0,1}³ corners with
/// the corner 111 missing.
#[derive(Debug, Clone)]
pub struct CubeSeven {
    pub v000: Vec<f64>,
    pub v100: Vec<f64>,
    pub v010: Vec<f64>,
    pub v001: Vec<f64>,
    pub v110: Vec<f64>,
    pub v101: Vec<f64>,
    pub v011: Vec<f64>,
}

/// The unique eighth vertex of a cube with circular faces.
///
/// The three faces incident to 000 must already be circular; the result
/// is the second intersection of two of the remaining face circles, and
/// the third face is used as a consistency check.
pub fn miguel_eighth(cube: &CubeSeven, tol: &Tol) -> Result<Vec<f64>> {
    let faces_at_000: [[&[f64]; 4]; 3] = [
        [&cube.v000, &cube.v100, &cube.v110, &cube.v010],
        [&cube.v000, &cube.v100, &cube.v101, &cube.v001],
        [&cube.v000, &cube.v010, &cube.v011, &cube.v001],
    ];
    for face in &faces_at_000 {
        let residual = concircularity_residual(face)?;
        if residual > tol.eps {
            return Err(GeomError::NotConcircular { residual });
        }
    }
    // remaining faces share the sought vertex; two of them intersect in
    // the known vertex 110 and in the eighth vertex
    let c1 = circle_through(&cube.v100, &cube.v110, &cube.v101, tol)?;
    let c2 = circle_through(&cube.v010, &cube.v110, &cube.v011, tol)?;
    let second = circle_circle_second(&c1, &c2, &cube.v110, tol)?;
    if second.tangent {
        return Err(GeomError::InconsistentCube { residual: f64::NAN });
    }
    let v111 = second.point;
    let third_face = [
        cube.v001.as_slice(),
        cube.v101.as_slice(),
        v111.as_slice(),
        cube.v011.as_slice(),
    ];
    let residual = concircularity_residual(&third_face)?;
    if residual > tol.eps {
        return Err(GeomError::InconsistentCube { residual });
    }
    Ok(v111)
}

/// A net transform output with the per-vertex gap between the two
/// admissible propagation routes.
#[derive(Debug, Clone)]
pub struct NetTransform {
    pub net: CircularNet,
    /// Route disagreement per interior vertex, row-major over (i≥1, j≥1).
    pub route_gaps: Vec<f64>,
    pub max_route_gap: f64,
}

/// Ribaucour transform of a circular net onto a sphere it does not meet.
///
/// Row 0 and column 0 evolve with the curve rule from the shared initial
/// point; each interior vertex is computed along both admissible routes
/// (from its j-1 and its i-1 neighbour) and the two values must agree —
/// Miguel's theorem makes the construction consistent. The returned
/// vertex is the route-A (j-direction) value, never an average, so
/// consistency failures stay visible.
pub fn net_transform_to_sphere(
    x: &CircularNet,
    e: &SphereVec,
    initial: &[f64],
    tol: &Tol,
) -> Result<NetTransform> {
    let (n1, n2) = x.shape();
    for i in 0..n1 {
        for j in 0..n2 {
            if point_on_sphere(x.point(i, j), e, tol) {
                return Err(GeomError::NetMeetsSphere { i, j });
            }
        }
    }
    check_initial_on_sphere(initial, e, tol)?;

    let mut out: Vec<Option<Vec<f64>>> = vec![None; n1 * n2];
    let idx = |i: usize, j: usize| i * n2 + j;

    let row0 = x.row_curve(0, tol)?;
    let row0_hat = curve_transform_to_sphere(&row0, e, initial, tol)?;
    for (j, p) in row0_hat.curve.points().iter().enumerate() {
        out[idx(0, j)] = Some(p.clone());
    }
    let col0 = x.column_curve(0, tol)?;
    let col0_hat = curve_transform_to_sphere(&col0, e, initial, tol)?;
    for (i, p) in col0_hat.curve.points().iter().enumerate() {
        out[idx(i, 0)] = Some(p.clone());
    }

    let mut route_gaps = Vec::with_capacity((n1 - 1) * (n2 - 1));
    let mut max_route_gap = 0.0f64;
    for i in 1..n1 {
        for j in 1..n2 {
            let from_row = out[idx(i, j - 1)].clone().expect("filled lexicographically");
            let from_col = out[idx(i - 1, j)].clone().expect("filled lexicographically");
            // route A: step in the j-direction from x̂(i, j-1)
            let ca = circle_through(x.point(i, j - 1), x.point(i, j), &from_row, tol)
                .map_err(|err| err.at_step(idx(i, j)))?;
            let pa = second_intersection(&ca, e, &from_row, tol)
                .map_err(|err| err.at_step(idx(i, j)))?;
            // route B: step in the i-direction from x̂(i-1, j)
            let cb = circle_through(x.point(i - 1, j), x.point(i, j), &from_col, tol)
                .map_err(|err| err.at_step(idx(i, j)))?;
            let pb = second_intersection(&cb, e, &from_col, tol)
                .map_err(|err| err.at_step(idx(i, j)))?;

            let gap = euclid_gap(&pa.point, &pb.point);
            let scale = point_scale(&pa.point, &pb.point);
            // route agreement is a theorem; give it an order of magnitude
            // of slack over the base tolerance before declaring failure
            if gap > 1000.0 * tol.eps * scale {
                return Err(GeomError::MiguelMismatch { i, j, gap });
            }
            route_gaps.push(gap);
            max_route_gap = max_route_gap.max(gap);
            out[idx(i, j)] = Some(pa.point);
        }
    }

    let points: Vec<Vec<f64>> = out.into_iter().map(|p| p.expect("grid filled")).collect();
    let net = CircularNet::new(x.ambient_dim(), (n1, n2), points, tol)?;
    Ok(NetTransform {
        net,
        route_gaps,
        max_route_gap,
    })
}

/// Validation data for a pair of nets.
#[derive(Debug, Clone)]
pub struct NetReport {
    /// Concircularity residual of each edge quad between the nets,
    /// i-direction edges first, then j-direction edges.
    pub edge_residuals: Vec<f64>,
    /// Cosphericity residual (d = 2) of each pair of corresponding cells.
    pub cell_residuals: Vec<f64>,
    pub pass: bool,
}

/// Checks that two nets form a Ribaucour pair: corresponding edges have
/// concircular endpoints, and corresponding elementary cells (8 points)
/// lie on common 2-spheres.
pub fn net_pair_validate(x: &CircularNet, y: &CircularNet, tol: &Tol) -> Result<NetReport> {
    if x.shape() != y.shape() {
        return Err(GeomError::LengthMismatch(
            x.shape().0 * x.shape().1,
            y.shape().0 * y.shape().1,
        ));
    }
    let (n1, n2) = x.shape();
    let mut edge_residuals = Vec::new();
    let mut pass = true;
    for i in 0..n1 - 1 {
        for j in 0..n2 {
            let quad = [
                x.point(i, j),
                x.point(i + 1, j),
                y.point(i + 1, j),
                y.point(i, j),
            ];
            let r = concircularity_residual(&quad)?;
            pass &= r <= tol.eps;
            edge_residuals.push(r);
        }
    }
    for i in 0..n1 {
        for j in 0..n2 - 1 {
            let quad = [
                x.point(i, j),
                x.point(i, j + 1),
                y.point(i, j + 1),
                y.point(i, j),
            ];
            let r = concircularity_residual(&quad)?;
            pass &= r <= tol.eps;
            edge_residuals.push(r);
        }
    }
    let mut cell_residuals = Vec::new();
    for i in 0..n1 - 1 {
        for j in 0..n2 - 1 {
            let cell = [
                x.point(i, j),
                x.point(i + 1, j),
                x.point(i + 1, j + 1),
                x.point(i, j + 1),
                y.point(i, j),
                y.point(i + 1, j),
                y.point(i + 1, j + 1),
                y.point(i, j + 1),
            ];
            let r = cosphericity_residual(&cell, 2)?;
            pass &= r <= tol.eps;
            cell_residuals.push(r);
        }
    }
    Ok(NetReport {
        edge_residuals,
        cell_residuals,
        pass,
    })
}

/// The aligned initial data of a commuting double reduction: a circular
/// quad with y00 on the curve, y10 on e1, y01 on e2 and y11 on both.
#[derive(Debug, Clone)]
pub struct InitialSquare {
    pub y00: Vec<f64>,
    pub y10: Vec<f64>,
    pub y01: Vec<f64>,
    pub y11: Vec<f64>,
}

/// Default auxiliary point fixing the circle of an initial square: the
/// midpoint of x0 and y11, displaced along the ambient axis of smallest
/// extent by half their distance. Overridable by passing an explicit
/// auxiliary point to [`initial_square`].
pub fn default_square_aux(x0: &[f64], y11: &[f64]) -> Vec<f64> {
    let n = x0.len();
    let mid: Vec<f64> = x0.iter().zip(y11).map(|(a, b)| 0.5 * (a + b)).collect();
    let axis = (0..n)
        .min_by(|&i, &j| {
            let ei = (x0[i] - y11[i]).abs();
            let ej = (x0[j] - y11[j]).abs();
            ei.partial_cmp(&ej).unwrap()
        })
        .unwrap();
    let gap = euclid_gap(x0, y11);
    let mut aux = mid;
    aux[axis] += 0.5 * gap.max(1.0);
    aux
}

/// Builds the aligned initial square of a double reduction from the
/// first curve point x0, the point y11 on both spheres, and an auxiliary
/// point fixing the circle through x0 and y11.
pub fn initial_square(
    x0: &[f64],
    e1: &SphereVec,
    e2: &SphereVec,
    y11: &[f64],
    aux: &[f64],
    tol: &Tol,
) -> Result<InitialSquare> {
    let e12 = e1.as_lorentz().try_inner(e2.as_lorentz())?;
    let scale = e1.as_lorentz().coord_norm() * e2.as_lorentz().coord_norm();
    if e12.abs() > tol.eps * scale {
        return Err(GeomError::NotOrthogonalSpheres(e12));
    }
    if !point_on_sphere(y11, e1, tol) || !point_on_sphere(y11, e2, tol) {
        return Err(GeomError::InitialNotOnSphere);
    }
    let circle = circle_through(x0, y11, aux, tol)?;
    let y10 = second_intersection(&circle, e1, y11, tol)?;
    let y01 = second_intersection(&circle, e2, y11, tol)?;
    Ok(InitialSquare {
        y00: x0.to_vec(),
        y10: y10.point,
        y01: y01.point,
        y11: y11.to_vec(),
    })
}

/// Result of a commuting double reduction.
#[derive(Debug, Clone)]
pub struct DoubleReduction {
    /// The curve on the (n-2)-sphere e1 ∩ e2, from route A (e1 first).
    pub curve: DiscreteCurve,
    /// Max pointwise gap between route A (e1 then e2) and route B
    /// (e2 then e1).
    pub order_check: f64,
}

/// Two subsequent commuting Ribaucour transforms of a curve onto the
/// intersection of two orthogonal spheres, along both orders. With an
/// aligned initial square the orders agree; the disagreement is returned
/// and also bounded by `order_tol` (an OrderMismatch error otherwise, so
/// misalignment is reported rather than silently accepted).
pub fn double_reduction_curve(
    x: &DiscreteCurve,
    e1: &SphereVec,
    e2: &SphereVec,
    square: &InitialSquare,
    order_tol: f64,
    tol: &Tol,
) -> Result<DoubleReduction> {
    let gap = euclid_gap(&square.y00, x.point(0));
    if gap > tol.eps * point_scale(&square.y00, x.point(0)) {
        return Err(GeomError::InvalidInput(
            "initial square is not anchored at x(0)".into(),
        ));
    }
    // route A: onto e1 with initial y10, then onto e2 with initial y11
    let a1 = curve_transform_to_sphere(x, e1, &square.y10, tol)
        .map_err(|e| e.at_stage("route A, first reduction"))?;
    let a2 = curve_transform_to_sphere(&a1.curve, e2, &square.y11, tol)
        .map_err(|e| e.at_stage("route A, second reduction"))?;
    // route B: onto e2 with initial y01, then onto e1 with initial y11
    let b1 = curve_transform_to_sphere(x, e2, &square.y01, tol)
        .map_err(|e| e.at_stage("route B, first reduction"))?;
    let b2 = curve_transform_to_sphere(&b1.curve, e1, &square.y11, tol)
        .map_err(|e| e.at_stage("route B, second reduction"))?;

    let mut order_check = 0.0f64;
    for (p, q) in a2.curve.points().iter().zip(b2.curve.points()) {
        order_check = order_check.max(euclid_gap(p, q));
    }
    if order_check > order_tol {
        return Err(GeomError::OrderMismatch { gap: order_check });
    }
    Ok(DoubleReduction {
        curve: a2.curve,
        order_check,
    })
}
